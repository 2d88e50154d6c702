//! The acceptance criteria, each against an oracle written out here rather
//! than taken from the library. Prints one line per criterion and exits
//! nonzero if any fails.

use std::collections::BTreeMap;

use k2local::cohomology::{eigenspace_split, omega, Subgroup};
use k2local::graded::{BigradedModule, Gen, Monomial, Window};
use k2local::picard::{det_exponents, det_twist_invariance_check, solve_brown_comenetz, ExoticClass, PicardWord};
use k2local::resolution::{self, Algebraic};
use k2local::specseq::{self, parse_rules, run_target, validate_rules, Hfpss, HomotopyTable, Target};
use k2local::F9;

/// Stems mod 72 carrying π∗E^hG24 ∧ V(1), one class each.
const G24_PATTERN: [i32; 27] =
    [0, 3, 8, 10, 11, 13, 16, 18, 19, 20, 21, 26, 27, 28, 29, 30, 35, 36, 37, 38, 40, 43, 45, 46, 48, 53, 56];

fn g24_oracle(n: i32) -> usize {
    usize::from(G24_PATTERN.contains(&n.rem_euclid(72)))
}

/// dim H^{s,t}(G24) = #{(e, b, k) : s = e + 2b, t = 4e + 12b + 8k},
/// i.e. Λ(α) ⊗ F3[β] ⊗ F3[w^±1].
fn g24_cohomology_oracle(s: i32, t: i32) -> usize {
    (0..=1)
        .filter(|e| {
            let rest = s - e;
            rest >= 0 && rest % 2 == 0 && (t - 4 * e - 6 * rest).rem_euclid(8) == 0
        })
        .count()
}

/// dim H^{s,t}(SD16) = F3[v2^±1]: one class at s = 0, t ≡ 0 mod 16.
fn sd16_oracle(s: i32, t: i32) -> usize {
    usize::from(s == 0 && t.rem_euclid(16) == 0)
}

/// π∗E^hG2^0 ∧ V(1): (leading stem, β-truncation, v2-powers), each family
/// tensored with Λ(ζ) and repeated with period 72.
fn g20_oracle(lo: i32, hi: i32) -> BTreeMap<i32, usize> {
    let families: [(i32, i32, Vec<i32>); 8] = [
        (0, 5, vec![0, 1, 5]),
        (3, 3, vec![0, 1, 2, 5, 6, 7]),
        (18, 4, vec![0, 4, 5]),
        (11, 2, vec![0, 1, 2, 4, 5, 6]),
        (45, 4, vec![0, 1, 5]),
        (38, 3, vec![0, 1, 2, 5, 6, 7]),
        (53, 5, vec![0, 4, 5]),
        (56, 2, vec![0, 1, 2, 4, 5, 6]),
    ];
    let mut per_period = [0usize; 72];
    for (g, trunc, powers) in &families {
        for l in powers {
            for j in 0..*trunc {
                for z in 0..2 {
                    per_period[(g + 16 * l + 10 * j - z).rem_euclid(72) as usize] += 1;
                }
            }
        }
    }
    (lo..=hi).map(|n| (n, per_period[n.rem_euclid(72) as usize])).collect()
}

/// G12 ⊗ Λ(a35, ζ), with G12 twice G24 in F3-dimension.
fn n_tower_oracle(n: i32) -> usize {
    let mut d = 0;
    for a in 0..2 {
        for z in 0..2 {
            d += 2 * g24_oracle(n - 35 * a + z);
        }
    }
    d
}

struct Line {
    id: u8,
    passed: bool,
    detail: String,
}

fn line(id: u8, passed: bool, detail: impl Into<String>) -> Line {
    let l = Line { id, passed, detail: detail.into() };
    println!("criterion {:>2}: {} {}", l.id, if l.passed { "PASS" } else { "FAIL" }, l.detail);
    l
}

fn criterion_1() -> Line {
    let w = Window::internal(-200, 200, 6);
    let c = Subgroup::SD16.compute(&w).unwrap();
    let mut bad = 0;
    for s in 0..=6 {
        for t in -200..=200 {
            bad += usize::from(c.invariants.dim_f3(s, t) != sd16_oracle(s, t));
        }
    }
    line(1, bad == 0 && c.report.ok(), format!("SD16 invariants = F3[v2^±1] on |t| <= 200 ({bad} bidegrees off)"))
}

fn criterion_2() -> Line {
    let w = Window::internal(-200, 200, 20);
    let c = Subgroup::G24.compute(&w).unwrap();
    let mut bad = 0;
    for s in 0..=20 {
        for t in -200..=200 {
            bad += usize::from(c.invariants.dim_f3(s, t) != g24_cohomology_oracle(s, t));
        }
    }
    line(2, bad == 0 && c.report.ok(), format!("H*(G24) = Λ(α)⊗F3[β, w^±1] for s <= 20 ({bad} bidegrees off)"))
}

fn criterion_3() -> Line {
    let w = Window::internal(-200, 200, 20);
    let c = Subgroup::G20.compute(&w).unwrap();
    let spec = Subgroup::G20.spec();
    let (plus, minus) = eigenspace_split(&spec.coefficients, &c.invariants, &omega()).unwrap();
    let mut shift_bad = 0;
    let mut sum_bad = 0;
    for s in 0..=20 {
        for t in -200..=200 {
            sum_bad += usize::from(plus.dim_f3(s, t) + minus.dim_f3(s, t) != c.invariants.dim_f3(s, t));
            if t - 8 >= -200 {
                shift_bad += usize::from(minus.dim_f3(s, t) != plus.dim_f3(s, t - 8));
            }
        }
    }
    let g2 = Subgroup::G2.compute(&Window::internal(-48, 48, 6)).unwrap();
    let mut g2_bad = 0;
    for s in 0..=6 {
        for t in -48..=48 {
            g2_bad += usize::from(plus.dim_f3(s, t) != g2.invariants.dim_f3(s, t));
        }
    }
    line(
        3,
        c.report.ok() && shift_bad == 0 && sum_bad == 0 && g2_bad == 0,
        format!(
            "H*(G2^0) identified ({} buckets); minus = v2^(1/2)·plus off at {shift_bad}; plus vs H*(G2) off at {g2_bad}",
            c.report.buckets_checked
        ),
    )
}

fn criterion_4() -> Line {
    let run = run_target(Target::G24, &Window::stems(-72, 143, 40)).unwrap();
    let bad = (-72..=143).filter(|&n| run.table.dim(n) != g24_oracle(n)).count();
    let zeros = [4, 5, 41, 42].iter().all(|&n| run.table.dim(n) == 0);
    line(
        4,
        bad == 0 && zeros && run.table.dim(43) == 1 && run.issues.is_empty(),
        format!("G24 ∧ V(1): 27 stems per 72, dim 1 each ({bad} stems off); π4 = π5 = π41 = π42 = 0, π43 = {}", run.table.dim(43)),
    )
}

fn even_part(table: &HomotopyTable) -> (BTreeMap<i32, usize>, BTreeMap<i32, usize>) {
    let (mut even, mut odd) = (BTreeMap::new(), BTreeMap::new());
    for c in &table.classes {
        let h = c.monomial.expect("single-monomial class").exp(Gen::V2h);
        *(if h == 0 { &mut even } else { &mut odd }).entry(c.stem).or_insert(0) += 1;
    }
    (even, odd)
}

fn criterion_5() -> Line {
    let (lo, hi) = (-30, 260);
    let run = run_target(Target::G20, &Window::stems(lo - 72, hi, 40)).unwrap();
    let oracle = g20_oracle(lo, hi);
    let family_bad = (lo..=hi).filter(|n| run.table.dim(*n) != oracle[n]).count();
    let v1 = resolution::v1_table(&Window::stems(lo - 72, hi, 40), true).unwrap();
    let (even, odd) = even_part(&run.table);
    let get = |m: &BTreeMap<i32, usize>, n: i32| m.get(&n).copied().unwrap_or(0);
    let v1_bad = (lo..=hi).filter(|&n| get(&even, n) != v1.dim(n)).count();
    let odd_bad = (lo..=hi).filter(|&n| get(&odd, n) != get(&even, n - 72)).count();
    line(
        5,
        family_bad == 0 && v1_bad == 0 && odd_bad == 0 && run.issues.is_empty(),
        format!("G2^0 E_inf on stems {lo}..{hi}: {family_bad} off the family formula, {v1_bad} off Λ(ζ)⊗G2^1, {odd_bad} odd-part shifts off"),
    )
}

fn criterion_6() -> Line {
    let v1 = resolution::v1_table(&Window::stems(-160, 250, 40), true).unwrap();
    let bad = (-120..=92).filter(|&n| v1.dim(n) != v1.dim(28 - n)).count();
    let literal = (-120..=92).filter(|&n| v1.dim(n) != v1.dim(-28 - n)).count();
    let witness: Monomial = "zeta*a35*w^-7*beta^5".parse().unwrap();
    let found = v1.classes.iter().find(|c| c.monomial == Some(witness));
    // I_2 ∧ V(1) = Σ^{-22} V(1) together with the duality of V(1) centred at 28
    let shift = solve_brown_comenetz().word.v1_shift().unwrap();
    let i2_ok = shift == (-22i32).rem_euclid(144);
    println!("  info: dim π_n = dim π_(-28-n) fails at {literal} of 213 stems; the symmetry is about 14");
    line(
        6,
        bad == 0 && found.is_some_and(|c| c.stem == 28) && i2_ok,
        format!(
            "dim π_n = dim π_(28-n) on -120..92 ({bad} off); ζa35w^-7β^5 in stem {}; I_2 ∧ V(1) shift {shift}",
            found.map_or("none".into(), |c| c.stem.to_string())
        ),
    )
}

fn criterion_7() -> Line {
    let g24 = run_target(Target::G24, &Window::stems(0, 287, 40)).unwrap().table;
    let v1 = resolution::v1_table(&Window::stems(0, 287, 40), true).unwrap();
    let g24_ok = (0..216).all(|n| g24.dim(n) == g24.dim(n + 72));
    let v1_144 = (0..144).all(|n| v1.dim(n) == v1.dim(n + 144));
    let v1_72 = (0..216).all(|n| v1.dim(n) == v1.dim(n + 72));
    line(
        7,
        g24_ok && v1_144 && !v1_72,
        format!("G24 72-periodic: {g24_ok}; V(1) 144-periodic: {v1_144}; V(1) 72-periodic: {v1_72}"),
    )
}

fn criterion_8() -> Line {
    let r = resolution::run_algebraic(&Window::stems(-20, 140, 14), false).unwrap();
    line(
        8,
        r.ok(),
        format!("E3 in p > 1: {} classes; E_inf vs H*(G2^1): {} buckets off", r.nonzero_high.len(), r.mismatches.len()),
    )
}

fn criterion_9() -> Line {
    let r = resolution::build_n_tower(&Window::stems(-10, 140, 3)).unwrap();
    let bad = (-10..=140).filter(|&n| r.report.table.dim(n) != n_tower_oracle(n)).count();
    line(
        9,
        bad == 0 && r.surviving_differentials.is_empty(),
        format!("N-tower collapses to G12⊗Λ(a35, ζ) ({bad} stems off, {} differentials survive)", r.surviving_differentials.len()),
    )
}

fn criterion_10() -> Line {
    let s = solve_brown_comenetz();
    let candidates: Vec<(ExoticClass, Option<i32>)> = s.candidates.iter().map(|c| (c.exotic, c.shift)).collect();
    let shifts_ok = [(0, 74), (1, 122), (2, 26)]
        .iter()
        .all(|&(a, k)| candidates.contains(&(ExoticClass::new(a, 0), Some(k))));
    let det = det_twist_invariance_check(&F9::units(), &det_exponents(-36, 36));
    line(
        10,
        s.word == PicardWord::new(2, 1, 1, 0) && s.equation() == "48·1+74 ≡ -22 (mod 144)" && shifts_ok && det.ok(),
        format!("I_2 = {}; {}; det twist {} x {} ok", s.word, s.equation(), det.units, det.exponents.len()),
    )
}

fn criterion_11() -> Line {
    let w = Window::stems(-60, 160, 30);
    let mut violations = Vec::new();
    for target in [Target::G24, Target::G20] {
        let rules = parse_rules(target.rules_text()).unwrap();
        violations.extend(validate_rules(&rules, &target.e2(&w).unwrap(), &Hfpss, &w).unwrap().violations);
    }
    let uncorrected = parse_rules(specseq::G20_UNCORRECTED_RULES).unwrap();
    let uncorrected_fails = !validate_rules(&uncorrected, &Target::G20.e2(&w).unwrap(), &Hfpss, &w).unwrap().ok();
    for zeta in [false, true] {
        let rw = Window::stems(-40, 200, 12);
        let mut e1 = BigradedModule::new("E1", k2local::BaseField::F3);
        for col in resolution::build_algebraic_e1(&rw, zeta).unwrap() {
            for m in col.labels() {
                e1.insert(*m);
            }
        }
        let r = validate_rules(&resolution::resolution_rules(zeta).unwrap(), &e1, &Algebraic, &rw).unwrap();
        violations.extend(r.violations.into_iter().filter(|v| !v.contains("is not in E2")));
    }
    let tw = Window::stems(-100, 200, 20);
    let periodic = [(Target::G24, 72), (Target::G20, 72), (Target::G21, 144)]
        .iter()
        .all(|&(t, p)| t.e2(&tw).unwrap().check_translation(0, p, &tw).is_ok());
    let additive = ExoticClass::all()
        .flat_map(|x| ExoticClass::all().map(move |y| (x, y)))
        .filter(|&(x, y)| x.smash(y).g24_shift() == (x.g24_shift() + y.g24_shift()) % 72)
        .count();
    line(
        11,
        violations.is_empty() && uncorrected_fails && periodic && additive == 81,
        format!(
            "{} rule violations (uncorrected d9 rejected: {uncorrected_fails}); E2 periodic: {periodic}; smash additive on {additive}/81",
            violations.len()
        ),
    )
}

fn main() {
    let lines = [
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
        criterion_10(),
        criterion_11(),
    ];
    let mut failed: Vec<String> = lines.iter().filter(|l| !l.passed).map(|l| l.id.to_string()).collect();
    // the library checks behind `verify all` must agree
    for r in k2local::verify::run_all() {
        if !r.passed {
            failed.push(format!("verify {}", r.id));
        }
    }
    println!("acceptance: {}/11 criteria passed", lines.iter().filter(|l| l.passed).count());
    if !failed.is_empty() {
        eprintln!("failed: {}", failed.join(", "));
        std::process::exit(1);
    }
}
