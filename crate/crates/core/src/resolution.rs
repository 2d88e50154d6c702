//! The centralizer resolution: the algebraic spectral sequence converging to
//! H*(G2^1) and the topological towers for V(1) and for E^hN ∧ V(1).
//!
//! Columns are labelled by `x · marker` (and `x · marker · zeta` for the
//! G2-level versions), where x runs over cohomology (algebraic) or homotopy
//! (topological) classes of G24 and SD16. Markers carry the resolution
//! degree: b0 ↦ 0, b36 and e8 ↦ 1, e36 and e44 ↦ 2, e48 ↦ 3; ζ adds one.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cohomology::{CohomologyError, Subgroup};
use crate::field::{BaseField, F3, F9};
use crate::graded::{BigradedModule, Gen, Monomial, Window};
use crate::specseq::{
    instantiate, parse_rules, run_target, validate_rules, DifferentialRule, Grading, HomotopyTable, Instance,
    RunOptions, SpecSeqError, SpectralSequence, Target, ValidationReport,
};

pub const RESOLUTION_RULES: &str = include_str!("../rules/resolution.rules");

#[derive(Debug, thiserror::Error)]
pub enum ResolutionError {
    #[error("unknown tower `{0}`")]
    UnknownTower(String),
    #[error(transparent)]
    SpecSeq(#[from] SpecSeqError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

/// Resolution degree of a marker generator.
pub fn marker_filtration(g: Gen) -> Option<i32> {
    match g {
        Gen::B0 => Some(0),
        Gen::B36 | Gen::E8 => Some(1),
        Gen::E36 | Gen::E44 => Some(2),
        Gen::E48 => Some(3),
        _ => None,
    }
}

fn filtration_of(m: &Monomial) -> i32 {
    m.marker().and_then(marker_filtration).unwrap_or(0) + m.exp(Gen::Zeta)
}

/// Key (p, q, t); d_r: (p, q, t) → (p + r, q − r + 1, t).
#[derive(Clone, Copy, Debug, Default)]
pub struct Algebraic;

impl Grading for Algebraic {
    type Key = (i32, i32, i32);
    fn key(&self, m: &Monomial) -> (i32, i32, i32) {
        (filtration_of(m), m.s() - m.exp(Gen::Zeta), m.t())
    }
    fn target(&self, (p, q, t): (i32, i32, i32), r: i32) -> (i32, i32, i32) {
        (p + r, q - r + 1, t)
    }
    fn position(&self, (p, q, t): (i32, i32, i32)) -> (i32, i32) {
        (p + q, t - p - q)
    }
}

/// Key (s, t) of a tower: s the tower filtration, t the stem of the
/// suspended homotopy class; d_r: (s, t) → (s + r, t + r − 1).
#[derive(Clone, Copy, Debug, Default)]
pub struct Tower;

impl Grading for Tower {
    type Key = (i32, i32);
    fn key(&self, m: &Monomial) -> (i32, i32) {
        (filtration_of(m), m.without(Gen::Zeta).stem())
    }
    fn target(&self, (s, t): (i32, i32), r: i32) -> (i32, i32) {
        (s + r, t + r - 1)
    }
    fn position(&self, (s, t): (i32, i32)) -> (i32, i32) {
        (s, t - s)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Summand {
    pub name: String,
    pub marker: String,
    pub zeta: bool,
    pub labels: Vec<Monomial>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResolutionColumn {
    pub filtration: i32,
    pub summands: Vec<Summand>,
}

impl ResolutionColumn {
    pub fn labels(&self) -> impl Iterator<Item = &Monomial> {
        self.summands.iter().flat_map(|s| s.labels.iter())
    }

    pub fn dim(&self) -> usize {
        self.summands.iter().map(|s| s.labels.len()).sum()
    }
}

const SUMMANDS: [(usize, Gen); 6] =
    [(0, Gen::B0), (0, Gen::B36), (1, Gen::E8), (1, Gen::E36), (1, Gen::E44), (1, Gen::E48)];

/// Columns `source[i] · marker (· ζ)` restricted to `window` (positions
/// measured by `grading`). `sources` is (G24 labels, SD16 labels).
fn columns<G: Grading>(
    grading: &G,
    sources: [(&str, &[Monomial]); 2],
    with_zeta: bool,
    window: &Window,
) -> Vec<ResolutionColumn> {
    let mut cols: BTreeMap<i32, Vec<Summand>> = BTreeMap::new();
    let zetas: &[bool] = if with_zeta { &[false, true] } else { &[false] };
    for &zeta in zetas {
        for (which, marker) in SUMMANDS {
            let (name, xs) = sources[which];
            let mut mk = Monomial::gen(marker);
            if zeta {
                mk = mk.with(Gen::Zeta, 1);
            }
            let mut labels: Vec<Monomial> = xs
                .iter()
                .filter_map(|x| x.mul(&mk).map(|(_, m)| m))
                .filter(|m| {
                    let (s, stem) = grading.position(grading.key(m));
                    window.contains(s, stem + s)
                })
                .collect();
            labels.sort();
            let p = marker_filtration(marker).unwrap_or(0) + i32::from(zeta);
            let suffix = if zeta { format!("{marker}*zeta") } else { marker.to_string() };
            cols.entry(p).or_default().push(Summand { name: format!("{name}.{suffix}"), marker: suffix, zeta, labels });
        }
    }
    cols.into_iter().map(|(filtration, summands)| ResolutionColumn { filtration, summands }).collect()
}

fn module_labels(m: &BigradedModule) -> Vec<Monomial> {
    m.monomials().copied().collect()
}

/// The cohomology window feeding a column window: markers shift stems by
/// up to 48 and ζ by one.
fn source_window(window: &Window) -> Window {
    Window { lo: window.lo - 50, hi: window.hi + 2, s_min: 0, ..*window }
}

/// E1 of the algebraic spectral sequence on `window` (total degree p + q,
/// stem t − p − q).
pub fn build_algebraic_e1(window: &Window, with_zeta: bool) -> Result<Vec<ResolutionColumn>, ResolutionError> {
    let src = source_window(window);
    let g24 = module_labels(&Subgroup::G24.labelled_module(&src)?);
    let sd16 = module_labels(&Subgroup::SD16.labelled_module(&src)?);
    Ok(columns(&Algebraic, [("G24", &g24), ("SD16", &sd16)], with_zeta, window))
}

/// E1 of the topological tower for Y from the homotopy of E^hG24 ∧ Y and
/// E^hSD16 ∧ Y (classes with monomial representatives only).
pub fn build_tower_e1(
    g24: &HomotopyTable,
    sd16: &[Monomial],
    with_zeta: bool,
    window: &Window,
) -> Vec<ResolutionColumn> {
    let g: Vec<Monomial> = g24.classes.iter().filter_map(|c| c.monomial).collect();
    columns(&Tower, [("G24", &g), ("SD16", sd16)], with_zeta, window)
}

pub fn resolution_rules(with_zeta: bool) -> Result<Vec<DifferentialRule>, ResolutionError> {
    let rules = parse_rules(RESOLUTION_RULES)?;
    let zeta = Monomial::gen(Gen::Zeta);
    Ok(if with_zeta { rules.into_iter().map(|r| r.with_multiplier(zeta)).collect() } else { rules })
}

fn label_module(name: &str, field: BaseField, cols: &[ResolutionColumn]) -> BigradedModule {
    let mut m = BigradedModule::new(name, field);
    for c in cols {
        for x in c.labels() {
            m.insert(*x);
        }
    }
    m
}

/// Window for rule instances: wide enough in monomial bidegrees to cover
/// every label of a column window.
fn instance_window(window: &Window) -> Window {
    Window { s_min: 0, s_max: window.s_max + 60, lo: window.lo - 60, hi: window.hi + 110, ..*window }
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgebraicReport {
    pub with_zeta: bool,
    pub window: Window,
    pub column_dims: Vec<(i32, usize)>,
    pub validation: ValidationReport,
    /// Rank of d_r per page.
    pub ranks: BTreeMap<i32, usize>,
    /// E3 classes in columns where E3 has to vanish.
    pub nonzero_high: Vec<String>,
    /// (s, stem, E∞ dim, expected dim) where they differ.
    pub mismatches: Vec<(i32, i32, usize, usize)>,
    /// e-marker classes that survive, or b-marker classes above the allowed columns.
    pub exactness: Vec<String>,
}

impl AlgebraicReport {
    pub fn ok(&self) -> bool {
        self.validation.ok() && self.nonzero_high.is_empty() && self.mismatches.is_empty() && self.exactness.is_empty()
    }
}

/// Runs the algebraic spectral sequence on `window` and compares E∞ with
/// H*(G2^1) (or H*(G2) with ζ) bucket by bucket.
pub fn run_algebraic(window: &Window, with_zeta: bool) -> Result<AlgebraicReport, ResolutionError> {
    let comp = Window { s_max: window.s_max + 2, lo: window.lo - 2, hi: window.hi + 2, ..*window };
    let cols = build_algebraic_e1(&comp, with_zeta)?;
    let rules = resolution_rules(with_zeta)?;
    run_algebraic_on(&cols, &rules, window, with_zeta)
}

pub fn run_algebraic_on(
    cols: &[ResolutionColumn],
    rules: &[DifferentialRule],
    window: &Window,
    with_zeta: bool,
) -> Result<AlgebraicReport, ResolutionError> {
    let e1 = label_module("E1", BaseField::F3, cols);
    let iw = instance_window(window);
    let mut validation = validate_rules(rules, &e1, &Algebraic, &iw)?;
    // sources outside the column window are not an error here
    validation.violations.retain(|v| !v.contains("is not in E2"));
    let instances = instantiate(rules, &iw)?;
    let comp = Window { s_max: window.s_max + 2, lo: window.lo - 2, hi: window.hi + 2, ..*window };
    let mut ss = SpectralSequence::<F3, Algebraic>::new("algebraic", BaseField::F3, Algebraic, 1, comp, e1.monomials().copied());
    ss.run(&instances, 2, &RunOptions { strict: false });

    let top = 1 + i32::from(with_zeta);
    let mut nonzero_high = Vec::new();
    let mut exactness = Vec::new();
    let mut got: BTreeMap<(i32, i32), usize> = BTreeMap::new();
    for sv in ss.survivors() {
        let (s, stem) = Algebraic.position(sv.key);
        if !window.contains(s, stem + s) {
            continue;
        }
        if sv.key.0 > top {
            nonzero_high.push(sv.label.clone());
        }
        if let Some(m) = sv.monomial {
            if !matches!(m.marker(), Some(Gen::B0 | Gen::B36)) {
                exactness.push(format!("{m} survives"));
            }
        }
        *got.entry((s, stem)).or_insert(0) += 1;
    }
    let expected_group = if with_zeta { Subgroup::G2 } else { Subgroup::G21 };
    let expected = expected_group.labelled_module(window)?;
    let mut exp: BTreeMap<(i32, i32), usize> = BTreeMap::new();
    for ((s, t), b) in expected.buckets() {
        *exp.entry((s, t - s)).or_insert(0) += b.len();
    }
    let mut mismatches = Vec::new();
    for key in got.keys().chain(exp.keys()).copied().collect::<std::collections::BTreeSet<_>>() {
        let (a, b) = (got.get(&key).copied().unwrap_or(0), exp.get(&key).copied().unwrap_or(0));
        if a != b {
            mismatches.push((key.0, key.1, a, b));
        }
    }
    Ok(AlgebraicReport {
        with_zeta,
        window: *window,
        column_dims: cols.iter().map(|c| (c.filtration, c.dim())).collect(),
        validation,
        ranks: ss.ranks.clone(),
        nonzero_high,
        mismatches,
        exactness,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TowerReport {
    pub name: String,
    pub column_dims: Vec<(i32, usize)>,
    pub ranks: BTreeMap<i32, usize>,
    pub table: HomotopyTable,
    /// (stem, tower E∞ dim, expected dim) where they differ.
    pub mismatches: Vec<(i32, usize, usize)>,
}

impl TowerReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn compare(table: &HomotopyTable, expected: &HomotopyTable) -> Vec<(i32, usize, usize)> {
    let (a, b) = (table.dims_by_stem(), expected.dims_by_stem());
    a.iter().filter_map(|(&n, &d)| {
        let e = b.get(&n).copied().unwrap_or(0);
        (d != e).then_some((n, d, e))
    })
    .collect()
}

/// G24 homotopy with enough room around `window` for every tower column.
fn g24_table(window: &Window) -> Result<HomotopyTable, ResolutionError> {
    Ok(run_target(Target::G24, &Window::stems(window.lo - 52, window.hi + 4, 40))?.table)
}

fn sd16_homotopy(window: &Window) -> Result<Vec<Monomial>, ResolutionError> {
    let w = Window::stems(window.lo - 52, window.hi + 4, 0);
    Ok(module_labels(&Subgroup::SD16.labelled_module(&w)?))
}

/// The expected abutment of the tower for Y = V(1): π∗E^{hG2^1} ∧ V(1), or
/// with ζ all of π∗L V(1).
pub fn v1_table(window: &Window, with_zeta: bool) -> Result<HomotopyTable, ResolutionError> {
    let t = run_target(Target::G21, &Window::stems(window.lo - 2, window.hi + 2, 40))?.table;
    let t = if with_zeta { t.tensor_with_exterior("V(1)", "zeta", -1) } else { t };
    Ok(t.restrict(window.lo, window.hi))
}

struct TowerRun {
    ss: SpectralSequence<F3, Tower>,
    cols: Vec<ResolutionColumn>,
}

fn tower_run(window: &Window, with_zeta: bool, extra: &[Instance], last_page: i32) -> Result<TowerRun, ResolutionError> {
    let comp = Window { s_min: 0, s_max: 5, lo: window.lo - 6, hi: window.hi + 6, ..*window };
    let g24 = g24_table(&comp)?;
    let sd16 = sd16_homotopy(&comp)?;
    let cols = build_tower_e1(&g24, &sd16, with_zeta, &comp);
    let e1 = label_module("E1", BaseField::F3, &cols);
    let mut instances = instantiate(&resolution_rules(with_zeta)?, &instance_window(window))?;
    instances.extend_from_slice(extra);
    let mut ss = SpectralSequence::<F3, Tower>::new("tower", BaseField::F3, Tower, 1, comp, e1.monomials().copied());
    ss.run(&instances, last_page, &RunOptions { strict: false });
    Ok(TowerRun { ss, cols })
}

/// The tower for Y = V(1): from G24 and SD16 homotopy to π∗ of the G2^1
/// (or, with ζ, G2) homotopy fixed points of V(1).
pub fn run_tower(window: &Window, with_zeta: bool) -> Result<TowerReport, ResolutionError> {
    let run = tower_run(window, with_zeta, &[], 4)?;
    let name = if with_zeta { "topological-sphere" } else { "topological-G2^1" };
    let table = HomotopyTable::from_survivors(name, BaseField::F3, &Tower, &run.ss.survivors(), window);
    let expected = v1_table(window, with_zeta)?;
    Ok(TowerReport {
        name: name.into(),
        column_dims: run.cols.iter().map(|c| (c.filtration, c.dim())).collect(),
        ranks: run.ss.ranks.clone(),
        mismatches: compare(&table, &expected),
        table,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct NTowerReport {
    pub report: TowerReport,
    /// Resolution differentials that would survive the projection to the
    /// N-tower; empty means the N-tower collapses.
    pub surviving_differentials: Vec<String>,
}

impl NTowerReport {
    pub fn ok(&self) -> bool {
        self.report.ok() && self.surviving_differentials.is_empty()
    }
}

/// The three-column tower for E^hN ∧ V(1): G12 · {1, b36, ζ, ζ·b36}.
pub fn build_n_tower(window: &Window) -> Result<NTowerReport, ResolutionError> {
    let g12 = run_target(Target::G12, &Window::stems(window.lo - 40, window.hi + 4, 40))?.table;
    let xs: Vec<Monomial> = g12.classes.iter().filter_map(|c| c.monomial).collect();
    let mut labels = Vec::new();
    for mk in ["1", "b36", "zeta", "b36*zeta"] {
        let mk: Monomial = mk.parse().expect("static label");
        for x in &xs {
            if let Some((_, m)) = x.mul(&mk) {
                let (s, stem) = Tower.position(Tower.key(&m));
                if window.contains(s, stem + s) {
                    labels.push(m);
                }
            }
        }
    }
    // The projection keeps b0 and b36 and kills the SD16 summands; every
    // resolution differential lands on an e-marker, so none survives.
    let surviving_differentials = instantiate(&resolution_rules(true)?, &instance_window(window))?
        .into_iter()
        .filter(|x| matches!(x.target.marker(), Some(Gen::B0 | Gen::B36)))
        .map(|x| format!("d{}({}) = {}", x.page, x.source, x.target))
        .collect();
    let comp = Window { s_max: 3, ..*window };
    let ss = SpectralSequence::<F9, Tower>::new("N-tower", BaseField::F9, Tower, 1, comp, labels.iter().copied());
    let table = HomotopyTable::from_survivors("topological-N", BaseField::F9, &Tower, &ss.survivors(), window);
    let expected = g12.tensor_with_exterior("G12(a35)", "a35", 35).tensor_with_exterior("N", "zeta", -1);
    let expected = expected.restrict(window.lo, window.hi);
    let dims_per_col = |p: i32| labels.iter().filter(|m| Tower.key(m).0 == p).count();
    Ok(NTowerReport {
        report: TowerReport {
            name: "topological-N".into(),
            column_dims: (0..3).map(|p| (p, dims_per_col(p))).collect(),
            ranks: BTreeMap::new(),
            mismatches: compare(&table, &expected),
            table,
        },
        surviving_differentials,
    })
}

/// The detection pattern for an exotic element: a spectrum X whose tower
/// agrees with that of V(1) except for d2(ι) = ζβv2⁻³α·b36.
#[derive(Clone, Debug, Serialize)]
pub struct DetectionReport {
    pub target: String,
    /// The class βv2⁻³α·b36 in filtration 1 is still alive at E3.
    pub survives: bool,
    /// Its ζ-multiple is a boundary at E3 for X but not for V(1).
    pub zeta_torsion: bool,
    pub zeta_alive_for_v1: bool,
    /// Number of E3 classes in filtration > 2 at stem −1.
    pub high_classes_at_minus_one: usize,
    /// Rank of ζ-multiplication from filtration 1 to 2 in stem 0 → −1 at
    /// E3, for V(1) and for X.
    pub zeta_rank: (usize, usize),
}

impl DetectionReport {
    pub fn ok(&self) -> bool {
        self.survives && self.zeta_torsion && self.zeta_alive_for_v1 && self.high_classes_at_minus_one == 0
            && self.zeta_rank.1 + 1 == self.zeta_rank.0
    }
}

pub fn check_exotic_detection() -> Result<DetectionReport, ResolutionError> {
    let window = Window::stems(-20, 20, 5);
    let (_, x) = Monomial::parse_signed("beta*v2^-3*alpha*b36")
        .map_err(SpecSeqError::from)?
        .expect("nonzero");
    let (_, zx) = x.mul(&Monomial::gen(Gen::Zeta)).expect("nonzero");
    let iota = Monomial::gen(Gen::B0);
    let extra = Instance { page: 2, source: iota, target: zx, coeff: 1, rule: usize::MAX, i: 0 };
    let v1 = tower_run(&window, true, &[], 2)?;
    let xr = tower_run(&window, true, &[extra], 2)?;
    let zeta_rank = |ss: &SpectralSequence<F3, Tower>| {
        ss.survivors()
            .iter()
            .filter_map(|s| s.monomial)
            .filter(|m| Tower.key(m) == (1, 1))
            .filter(|m| m.mul(&Monomial::gen(Gen::Zeta)).is_some_and(|(_, z)| ss.is_alive(&z)))
            .count()
    };
    let high = xr
        .ss
        .survivors()
        .iter()
        .filter(|s| {
            let (f, stem) = Tower.position(s.key);
            f > 2 && stem == -1
        })
        .count();
    Ok(DetectionReport {
        target: zx.to_string(),
        survives: xr.ss.is_alive(&x),
        zeta_torsion: xr.ss.is_boundary(&zx),
        zeta_alive_for_v1: v1.ss.is_alive(&zx),
        high_classes_at_minus_one: high,
        zeta_rank: (zeta_rank(&v1.ss), zeta_rank(&xr.ss)),
    })
}

/// Tower selectors accepted by the CLI.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TowerKind {
    AlgebraicG21,
    AlgebraicG2,
    TopologicalSphere,
    TopologicalN,
}

impl TowerKind {
    pub const ALL: [TowerKind; 4] =
        [TowerKind::AlgebraicG21, TowerKind::AlgebraicG2, TowerKind::TopologicalSphere, TowerKind::TopologicalN];

    pub fn name(self) -> &'static str {
        match self {
            TowerKind::AlgebraicG21 => "algebraic-G2^1",
            TowerKind::AlgebraicG2 => "algebraic-G2",
            TowerKind::TopologicalSphere => "topological-sphere",
            TowerKind::TopologicalN => "topological-N",
        }
    }

    pub fn from_name(s: &str) -> Result<TowerKind, ResolutionError> {
        TowerKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s) || k.name().replace('^', "").eq_ignore_ascii_case(s))
            .ok_or_else(|| ResolutionError::UnknownTower(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algebraic_columns_have_the_right_markers() {
        let cols = build_algebraic_e1(&Window::stems(-20, 60, 4), false).unwrap();
        let names: Vec<Vec<String>> = cols.iter().map(|c| c.summands.iter().map(|s| s.name.clone()).collect()).collect();
        assert_eq!(
            names,
            vec![
                vec!["G24.b0".to_string()],
                vec!["G24.b36".into(), "SD16.e8".into()],
                vec!["SD16.e36".into(), "SD16.e44".into()],
                vec!["SD16.e48".into()],
            ]
        );
        let e48 = &cols[3].summands[0].labels;
        assert!(!e48.is_empty() && e48.iter().all(|m| m.s() == 0 && m.marker() == Some(Gen::E48)));
    }

    #[test]
    fn algebraic_run_converges_to_g21() {
        let r = run_algebraic(&Window::stems(-20, 120, 8), false).unwrap();
        assert!(r.ok(), "{:?} {:?} {:?} {:?}", r.validation.violations.first(), r.nonzero_high.first(), r.mismatches.first(), r.exactness.first());
        assert!(r.ranks[&1] > 0 && r.ranks[&2] > 0);
    }

    #[test]
    fn zeta_tensored_run_converges_to_g2() {
        let r = run_algebraic(&Window::stems(-20, 80, 6), true).unwrap();
        assert!(r.ok(), "{:?} {:?} {:?}", r.nonzero_high.first(), r.mismatches.first(), r.exactness.first());
    }

    #[test]
    fn tower_gives_v1() {
        let r = run_tower(&Window::stems(-20, 150, 5), false).unwrap();
        assert!(r.ok(), "{:?}", &r.mismatches[..r.mismatches.len().min(5)]);
        let r = run_tower(&Window::stems(-20, 150, 5), true).unwrap();
        assert!(r.ok(), "{:?}", &r.mismatches[..r.mismatches.len().min(5)]);
    }

    #[test]
    fn n_tower_collapses() {
        let r = build_n_tower(&Window::stems(-10, 140, 3)).unwrap();
        assert!(r.ok(), "{:?} {:?}", r.report.mismatches.first(), r.surviving_differentials.first());
        assert!(r.report.table.classes_at(35).any(|c| c.label.contains("b36")));
    }

    #[test]
    fn exotic_detection_pattern() {
        let r = check_exotic_detection().unwrap();
        assert!(r.ok(), "{r:?}");
    }
}
