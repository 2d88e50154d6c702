//! End-to-end checks, one per acceptance criterion, shared by `verify all`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cohomology::{eigenspace_split, omega, Subgroup};
use crate::field::F9;
use crate::graded::{Monomial, Window};
use crate::picard::{det_exponents, det_twist_invariance_check, solve_brown_comenetz, ExoticClass, PicardWord, V1_PERIOD};
use crate::resolution::{build_n_tower, resolution_rules, run_algebraic, v1_table, Algebraic};
use crate::specseq::{parse_rules, run_target, validate_rules, Hfpss, HomotopyTable, Target, G20_RULES, G24_RULES};

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(id: u8, name: &str, passed: bool, detail: impl Into<String>) -> CheckResult {
        CheckResult { id, name: name.into(), passed, detail: detail.into() }
    }

    fn error(id: u8, name: &str, err: impl std::fmt::Display) -> CheckResult {
        CheckResult::new(id, name, false, format!("error: {err}"))
    }
}

impl std::fmt::Display for CheckResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{status}] {:>2} {}: {}", self.id, self.name, self.detail)
    }
}

pub const NAMES: [&str; 11] = [
    "SD16 invariants",
    "H*(G24)",
    "H*(G2^0) and eigensplit",
    "G24 spectral sequence",
    "G2^0 decomposition",
    "self-duality",
    "periodicity",
    "centralizer resolution",
    "N-tower collapse",
    "Picard solver",
    "structural properties",
];

macro_rules! attempt {
    ($id:expr, $e:expr) => {
        match $e {
            Ok(v) => v,
            Err(err) => return CheckResult::error($id, NAMES[$id as usize - 1], err),
        }
    };
}

/// The eight G2^0 families (generator stem, β-truncation, v2-powers l with
/// stem 16l), tensored with Λ(ζ) and repeated every 72 stems.
pub const G20_FAMILIES: [(i32, i32, &[i32]); 8] = [
    (0, 5, &[0, 1, 5]),
    (3, 3, &[0, 1, 2, 5, 6, 7]),
    (18, 4, &[0, 4, 5]),
    (11, 2, &[0, 1, 2, 4, 5, 6]),
    (45, 4, &[0, 1, 5]),
    (38, 3, &[0, 1, 2, 5, 6, 7]),
    (53, 5, &[0, 4, 5]),
    (56, 2, &[0, 1, 2, 4, 5, 6]),
];

pub fn g20_family_dims(lo: i32, hi: i32) -> BTreeMap<i32, usize> {
    let mut out: BTreeMap<i32, usize> = (lo..=hi).map(|n| (n, 0)).collect();
    for (g, n, ls) in G20_FAMILIES {
        for &l in ls {
            for j in 0..n {
                for e in 0..2 {
                    let base = g + 16 * l + 10 * j - e;
                    let k0 = (lo - base).div_euclid(72) - 1;
                    for k in k0..k0 + (hi - lo) / 72 + 3 {
                        let stem = base + 72 * k;
                        if (lo..=hi).contains(&stem) {
                            *out.get_mut(&stem).expect("in range") += 1;
                        }
                    }
                }
            }
        }
    }
    out
}

pub fn criterion_1() -> CheckResult {
    let c = attempt!(1, Subgroup::SD16.compute(&Window::internal(-200, 200, 4)));
    CheckResult::new(
        1,
        NAMES[0],
        c.report.ok(),
        format!("{} buckets, total F3-dim {}, {} mismatches", c.report.buckets_checked, c.report.total_dim_f3, c.report.failures.len()),
    )
}

pub fn criterion_2() -> CheckResult {
    let c = attempt!(2, Subgroup::G24.compute(&Window::internal(-200, 200, 20)));
    CheckResult::new(
        2,
        NAMES[1],
        c.report.ok(),
        format!("{} buckets, total F3-dim {}, {} mismatches", c.report.buckets_checked, c.report.total_dim_f3, c.report.failures.len()),
    )
}

pub fn criterion_3() -> CheckResult {
    let w = Window::internal(-200, 200, 20);
    let c = attempt!(3, Subgroup::G20.compute(&w));
    let spec = Subgroup::G20.spec();
    let (plus, minus) = attempt!(3, eigenspace_split(&spec.coefficients, &c.invariants, &omega()));
    // minus = v2^{1/2} · plus: dimensions shift by t = 8
    let mut bad = Vec::new();
    for s in w.s_min..=w.s_max {
        for t in w.lo + 8..=w.hi {
            if minus.dim_f3(s, t) != plus.dim_f3(s, t - 8) {
                bad.push((s, t));
            }
        }
    }
    CheckResult::new(
        3,
        NAMES[2],
        c.report.ok() && bad.is_empty(),
        format!(
            "{} buckets identified ({} mismatches); eigensplit plus {} / minus {}, {} shift mismatches",
            c.report.buckets_checked,
            c.report.failures.len(),
            plus.total_dim_f3(),
            minus.total_dim_f3(),
            bad.len()
        ),
    )
}

pub const G24_STEMS: [i32; 27] =
    [0, 3, 8, 10, 11, 13, 16, 18, 19, 20, 21, 26, 27, 28, 29, 30, 35, 36, 37, 38, 40, 43, 45, 46, 48, 53, 56];

pub fn criterion_4() -> CheckResult {
    let run = attempt!(4, run_target(Target::G24, &Window::stems(0, 71, 40)));
    let dims = run.table.dims_by_stem();
    let support: Vec<i32> = dims.iter().filter(|(_, &d)| d > 0).map(|(&n, _)| n).collect();
    let ones = dims.values().all(|&d| d <= 1);
    let vanish = [4, 5, 41, 42].iter().all(|n| dims[n] == 0) && dims[&43] != 0;
    let passed = run.issues.is_empty() && support == G24_STEMS && ones && vanish;
    CheckResult::new(4, NAMES[3], passed, format!("{} classes per period, {} rule issues", support.len(), run.issues.len()))
}

/// π∗ L V(1) = Λ(ζ) ⊗ π∗E^{hG2^1} ∧ V(1) on `lo..=hi`.
pub fn v1(lo: i32, hi: i32) -> Result<HomotopyTable, crate::resolution::ResolutionError> {
    v1_table(&Window::stems(lo, hi, 40), true)
}

pub fn criterion_5() -> CheckResult {
    let (lo, hi) = (-30, 260);
    let run = attempt!(5, run_target(Target::G20, &Window::stems(lo - 72, hi, 40)));
    let dims = run.table.restrict(lo, hi).dims_by_stem();
    let expect = g20_family_dims(lo, hi);
    let family_bad = dims.iter().filter(|(n, d)| expect.get(n) != Some(d)).count();
    // even powers of v2^{1/2} give V(1); odd ones repeat them 72 stems later
    let v = attempt!(5, v1(lo - 72, hi));
    let parity = |c: &&crate::specseq::Class| c.monomial.is_some_and(|m| m.exp(crate::graded::Gen::V2h) == 0);
    let mut even: BTreeMap<i32, usize> = BTreeMap::new();
    let mut odd: BTreeMap<i32, usize> = BTreeMap::new();
    for c in &run.table.classes {
        let target = if parity(&c) { &mut even } else { &mut odd };
        *target.entry(c.stem).or_insert(0) += 1;
    }
    let mut split_bad = 0;
    for n in lo..=hi {
        let e = even.get(&n).copied().unwrap_or(0);
        if e != v.dim(n) {
            split_bad += 1;
        }
        if odd.get(&n).copied().unwrap_or(0) != even.get(&(n - 72)).copied().unwrap_or(0) {
            split_bad += 1;
        }
    }
    CheckResult::new(
        5,
        NAMES[4],
        run.issues.is_empty() && family_bad == 0 && split_bad == 0,
        format!("stems {lo}..{hi}: {family_bad} family mismatches, {split_bad} eigensplit mismatches"),
    )
}

pub fn criterion_6() -> CheckResult {
    let (lo, hi) = (-120, 92);
    let v = attempt!(6, v1(lo - 30, hi + 150));
    let mut bad = Vec::new();
    for n in lo..=hi {
        if v.dim(n) != v.dim(28 - n) {
            bad.push(n);
        }
    }
    // I2 ∧ V(1) = Σ^{-22} V(1): dim π_{n+22} = dim π_{6-n}
    let dual_bad = (lo..=hi).filter(|&n| v.dim(n + 22) != v.dim(6 - n)).count();
    let witness = Monomial::parse_signed("zeta*a35*w^-7*beta^5").ok().flatten().map(|(_, m)| m);
    let found = witness.and_then(|m| v.classes.iter().find(|c| c.monomial == Some(m)));
    let literal = (lo..=hi).filter(|&n| v.dim(n) != v.dim(-28 - n)).count();
    CheckResult::new(
        6,
        NAMES[5],
        bad.is_empty() && dual_bad == 0 && found.is_some_and(|c| c.stem == 28),
        format!(
            "dim π_n = dim π_(28-n) fails at {} stems, I2-dual form at {dual_bad}; witness {}; \
             (the reading dim π_n = dim π_(-28-n) fails at {literal} stems)",
            bad.len(),
            found.map_or("missing".to_string(), |c| format!("{} in stem {}", c.label, c.stem)),
        ),
    )
}

pub fn criterion_7() -> CheckResult {
    let g24 = attempt!(7, run_target(Target::G24, &Window::stems(0, 287, 40))).table;
    let v = attempt!(7, v1(0, 287));
    let a = g24.check_periodicity(72).is_ok();
    let b = v.check_periodicity(144).is_ok();
    let c = v.check_periodicity(72).err();
    CheckResult::new(
        7,
        NAMES[6],
        a && b && c.is_some(),
        format!(
            "G24 72-periodic: {a}; V(1) 144-periodic: {b}; V(1) 72-periodic fails first at stem {}",
            c.map_or("none".to_string(), |n| n.to_string())
        ),
    )
}

pub fn criterion_8() -> CheckResult {
    let r = attempt!(8, run_algebraic(&Window::stems(-20, 120, 12), false));
    CheckResult::new(
        8,
        NAMES[7],
        r.ok(),
        format!(
            "ranks {:?}; {} classes with p > 1 at E3; {} bucket mismatches against H*(G2^1)",
            r.ranks,
            r.nonzero_high.len(),
            r.mismatches.len()
        ),
    )
}

pub fn criterion_9() -> CheckResult {
    let r = attempt!(9, build_n_tower(&Window::stems(-10, 140, 3)));
    CheckResult::new(
        9,
        NAMES[8],
        r.ok(),
        format!("{} stem mismatches, {} surviving differentials", r.report.mismatches.len(), r.surviving_differentials.len()),
    )
}

pub fn criterion_10() -> CheckResult {
    let s = solve_brown_comenetz();
    let solved = (s.word.exotic == ExoticClass::P) && s.candidates.len() == 9 && s.word == PicardWord::new(2, 1, 1, 0);
    let shift = s.word.v1_shift().ok() == Some((-22i32).rem_euclid(V1_PERIOD)) && (2 + 72 + 48 - (-22)) % V1_PERIOD == 0;
    let det = det_twist_invariance_check(&F9::units(), &det_exponents(-36, 36));
    CheckResult::new(
        10,
        NAMES[9],
        solved && shift && det.ok(),
        format!(
            "I_2 = {}; {}; det twist: {} units x {} exponents, {} failures",
            s.word,
            s.equation(),
            det.units,
            det.exponents.len(),
            det.failures.len()
        ),
    )
}

pub fn criterion_11() -> CheckResult {
    let win = Window::stems(-60, 160, 30);
    let mut problems = Vec::new();
    for (name, target, text) in [("g24", Target::G24, G24_RULES), ("g20", Target::G20, G20_RULES)] {
        let e2 = attempt!(11, target.e2(&win));
        let rules = attempt!(11, parse_rules(text));
        let r = attempt!(11, validate_rules(&rules, &e2, &Hfpss, &win));
        problems.extend(r.violations.iter().map(|v| format!("{name}: {v}")));
    }
    for zeta in [false, true] {
        let rules = attempt!(11, resolution_rules(zeta));
        let e1 = attempt!(11, crate::resolution::build_algebraic_e1(&Window::stems(-40, 200, 12), zeta));
        let mut m = crate::graded::BigradedModule::new("E1", crate::field::BaseField::F3);
        for c in &e1 {
            for x in c.labels() {
                m.insert(*x);
            }
        }
        let r = attempt!(11, validate_rules(&rules, &m, &Algebraic, &Window::stems(-40, 200, 12)));
        problems.extend(r.violations.iter().filter(|v| !v.contains("is not in E2")).map(|v| format!("resolution: {v}")));
    }
    for (target, period) in [(Target::G24, (0, 72)), (Target::G20, (0, 72)), (Target::G21, (0, 144))] {
        let w = Window::stems(-100, 200, 20);
        let m = attempt!(11, target.e2(&w));
        if let Err(key) = m.check_translation(period.0, period.1, &w) {
            problems.push(format!("{}: E2 not periodic at {key:?}", target.name()));
        }
    }
    let mut pairs = 0;
    for x in ExoticClass::all() {
        for y in ExoticClass::all() {
            pairs += 1;
            if x.smash(y).g24_shift() != (x.g24_shift() + y.g24_shift()) % 72 || x.smash(y) != y.smash(x) {
                problems.push(format!("smash {x} {y}"));
            }
        }
    }
    CheckResult::new(
        11,
        NAMES[10],
        problems.is_empty() && pairs == 81,
        if problems.is_empty() {
            format!("g24, g20 and both resolution rule sets valid, 3 E2 terms periodic, {pairs} smash pairs additive")
        } else {
            format!("{} problems, first: {}", problems.len(), problems[0])
        },
    )
}

pub fn criterion(id: u8) -> Option<CheckResult> {
    Some(match id {
        1 => criterion_1(),
        2 => criterion_2(),
        3 => criterion_3(),
        4 => criterion_4(),
        5 => criterion_5(),
        6 => criterion_6(),
        7 => criterion_7(),
        8 => criterion_8(),
        9 => criterion_9(),
        10 => criterion_10(),
        11 => criterion_11(),
        _ => return None,
    })
}

pub fn run_all() -> Vec<CheckResult> {
    (1..=11).filter_map(criterion).collect()
}
