//! Rule-driven spectral sequences over monomial-labelled E2 terms.
//!
//! Differentials are given as rule files (see [`rules`]); the engine keeps,
//! for every grading key, the cycles Z_r and boundaries B_r as subspaces of
//! the E_start span, so E_r = Z_r / B_r. Everything is computed on a window
//! padded around the requested one and only the interior is reported.

pub mod engine;
pub mod rules;
pub mod table;

use std::fmt::Debug;

use serde::Serialize;

pub use engine::{Issue, IssueKind, RunOptions, SpectralSequence, Survivor};
pub use rules::{instantiate, parse_rules, Affine, Condition, DifferentialRule, Instance, Pattern};
pub use table::{Class, Edge, EdgeKind, HomotopyTable};

use crate::cohomology::{CohomologyError, Subgroup};
use crate::field::{BaseField, Field, F3, F9};
use crate::graded::{free_module_span, BigradedModule, GradedError, Monomial, Window};

pub const G24_RULES: &str = include_str!("../../rules/g24.rules");
pub const G20_RULES: &str = include_str!("../../rules/g20.rules");
/// The G2^0 rules with the second d9 target in its uncorrected form.
pub const G20_UNCORRECTED_RULES: &str = include_str!("../../rules/g20_uncorrected.rules");

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SpecSeqError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("rule on line {line}: {msg}")]
    Rule { line: usize, msg: String },
    #[error("rules on lines {first} and {second} disagree on d({label})")]
    Conflict { label: String, first: usize, second: usize },
    #[error("{0} rule violations, first: {1}")]
    Strict(usize, String),
    #[error("unknown spectral sequence `{0}`")]
    Unknown(String),
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

/// How labels are placed in a spectral sequence.
pub trait Grading {
    type Key: Ord + Copy + Debug + Serialize;
    fn key(&self, m: &Monomial) -> Self::Key;
    /// Where d_r lands from `key`.
    fn target(&self, key: Self::Key, r: i32) -> Self::Key;
    /// (filtration, stem) of a key, used for windows and charts.
    fn position(&self, key: Self::Key) -> (i32, i32);
}

/// Homotopy fixed point grading: key (s, t), d_r: (s, t) → (s + r, t + r − 1).
#[derive(Clone, Copy, Debug, Default)]
pub struct Hfpss;

impl Grading for Hfpss {
    type Key = (i32, i32);
    fn key(&self, m: &Monomial) -> (i32, i32) {
        m.bidegree()
    }
    fn target(&self, (s, t): (i32, i32), r: i32) -> (i32, i32) {
        (s + r, t + r - 1)
    }
    fn position(&self, (s, t): (i32, i32)) -> (i32, i32) {
        (s, t - s)
    }
}

/// The homotopy fixed point spectral sequences the crate knows rules for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Target {
    G24,
    G12,
    G20,
    G21,
}

impl Target {
    pub const ALL: [Target; 4] = [Target::G24, Target::G12, Target::G20, Target::G21];

    pub fn name(self) -> &'static str {
        match self {
            Target::G24 => "G24",
            Target::G12 => "G12",
            Target::G20 => "G2^0",
            Target::G21 => "G2^1",
        }
    }

    pub fn from_name(s: &str) -> Result<Target, SpecSeqError> {
        Target::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s) || t.name().replace('^', "").eq_ignore_ascii_case(s))
            .ok_or_else(|| SpecSeqError::Unknown(s.to_string()))
    }

    pub fn field(self) -> BaseField {
        match self {
            Target::G12 => BaseField::F9,
            _ => BaseField::F3,
        }
    }

    pub fn rules_text(self) -> &'static str {
        match self {
            Target::G24 | Target::G12 => G24_RULES,
            Target::G20 | Target::G21 => G20_RULES,
        }
    }

    /// G2^1 is the sub-E2 of G2^0 without ζ and with even powers of v2h;
    /// instances leaving it are dropped.
    pub fn strict(self) -> bool {
        self != Target::G21
    }

    /// Homotopy periodicity of the abutment.
    pub fn period(self) -> i32 {
        match self {
            Target::G24 | Target::G12 | Target::G20 => 72,
            Target::G21 => 144,
        }
    }

    pub fn max_page(self) -> i32 {
        9
    }

    /// The E2 term as a labelled module on `window`. G12 is written in the
    /// same w-basis as G24, over F9 (w and v2h differ by a unit there).
    pub fn e2(self, window: &Window) -> Result<BigradedModule, SpecSeqError> {
        let m = |s: &str| s.parse::<Monomial>().expect("static label");
        Ok(match self {
            Target::G24 => Subgroup::G24.labelled_module(window)?,
            Target::G12 => free_module_span(
                "G12",
                BaseField::F9,
                &[m("beta"), m("w"), m("alpha")],
                &[Monomial::one()],
                window,
            )?,
            Target::G20 => Subgroup::G20.labelled_module(window)?,
            Target::G21 => Subgroup::G21.labelled_module(window)?,
        })
    }
}

/// The window the engine needs so that everything in `report` is final.
pub fn computation_window(report: &Window, max_page: i32) -> Window {
    let pad = 2 * max_page;
    Window { s_min: report.s_min, s_max: report.s_max + pad, ..report.padded(pad) }
}

/// A finished run: E∞ on the report window plus any rule violations.
#[derive(Clone, Debug, Serialize)]
pub struct HfpssRun {
    pub target: Target,
    pub report: Window,
    pub issues: Vec<Issue>,
    pub table: HomotopyTable,
    #[serde(skip)]
    pub e_infinity: BigradedModule,
    #[serde(skip)]
    pub e2: BigradedModule,
}

/// E2, rules and E∞ of one of the homotopy fixed point spectral sequences.
pub fn run_target(target: Target, report: &Window) -> Result<HfpssRun, SpecSeqError> {
    let rules = parse_rules(target.rules_text())?;
    run_rules(target, &rules, report)
}

pub fn run_rules(target: Target, rules: &[DifferentialRule], report: &Window) -> Result<HfpssRun, SpecSeqError> {
    match target.field() {
        BaseField::F3 => run_generic::<F3>(target, rules, report),
        BaseField::F9 => run_generic::<F9>(target, rules, report),
    }
}

fn run_generic<F: Field>(
    target: Target,
    rules: &[DifferentialRule],
    report: &Window,
) -> Result<HfpssRun, SpecSeqError> {
    let max_page = rules.iter().map(|r| r.page).max().unwrap_or(2);
    let comp = computation_window(report, max_page);
    let e2 = target.e2(&comp)?;
    let instances = instantiate(rules, &comp)?;
    let mut ss = SpectralSequence::<F, Hfpss>::new(target.name(), e2.field, Hfpss, 2, comp, e2.monomials().copied());
    let opts = RunOptions { strict: target.strict() };
    let issues = ss.run(&instances, max_page, &opts);
    let survivors = ss.survivors();
    let mut e_inf = BigradedModule::new(format!("{} E_inf", target.name()), e2.field);
    for s in &survivors {
        if let Some(m) = s.monomial {
            if report.contains(m.s(), m.t()) {
                e_inf.insert(m);
            }
        }
    }
    let mut table = HomotopyTable::from_survivors(target.name(), e2.field, &Hfpss, &survivors, report);
    table.period = Some(target.period());
    if matches!(target, Target::G24 | Target::G12) {
        table.add_toda_edges(&instances);
    }
    Ok(HfpssRun { target, report: *report, issues, table, e_infinity: e_inf, e2 })
}

/// Checks a rule set against an E2 term: bidegree shifts, d∘d, sources and
/// targets present, and closure under the declared multipliers.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ValidationReport {
    pub instances: usize,
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate_rules<G: Grading>(
    rules: &[DifferentialRule],
    e2: &BigradedModule,
    grading: &G,
    window: &Window,
) -> Result<ValidationReport, SpecSeqError> {
    use std::collections::BTreeMap;
    let mut raw = Vec::new();
    for (k, rule) in rules.iter().enumerate() {
        raw.extend(rule.instances(k, window)?);
    }
    let mut report = ValidationReport { instances: raw.len(), violations: Vec::new() };
    let mut unique: BTreeMap<(i32, Monomial), Instance> = BTreeMap::new();
    for x in raw {
        let line = rules[x.rule].line;
        if grading.target(grading.key(&x.source), x.page) != grading.key(&x.target) {
            report.violations.push(format!(
                "line {line}: d{} {} -> {} has the wrong bidegree",
                x.page, x.source, x.target
            ));
            continue;
        }
        match unique.get(&(x.page, x.source)) {
            Some(prev) if prev.target != x.target || prev.coeff != x.coeff => report.violations.push(format!(
                "lines {} and {line} disagree on d{}({})",
                rules[prev.rule].line, x.page, x.source
            )),
            Some(_) => {}
            None => {
                unique.insert((x.page, x.source), x);
            }
        }
    }
    let instances: Vec<Instance> = unique.into_values().collect();
    let in_window = |m: &Monomial| {
        let (s, stem) = grading.position(grading.key(m));
        window.contains(s, stem + s)
    };
    let by_source: BTreeMap<Monomial, &Instance> = instances.iter().map(|x| (x.source, x)).collect();
    let mut hit: BTreeMap<Monomial, &Instance> = BTreeMap::new();
    for x in &instances {
        let line = rules[x.rule].line;
        if !e2.contains(&x.source) {
            report.violations.push(format!("line {line}: source {} is not in E2", x.source));
        }
        if in_window(&x.target) && !e2.contains(&x.target) {
            report.violations.push(format!("line {line}: target {} is not in E2", x.target));
        }
        if let Some(y) = by_source.get(&x.target) {
            if y.page <= x.page {
                report.violations.push(format!(
                    "line {line}: d{} {} -> {} is followed by d{} {} -> {}",
                    x.page, x.source, x.target, y.page, y.source, y.target
                ));
            } else {
                report.violations.push(format!("line {line}: {} is hit by d{} but supports d{}", x.target, x.page, y.page));
            }
        }
        if let Some(prev) = hit.insert(x.target, x) {
            if prev.page != x.page {
                report.violations.push(format!("{} is hit on pages {} and {}", x.target, prev.page, x.page));
            }
        }
        for m in &rules[x.rule].multipliers {
            let (Some((a, ms)), Some((b, mt))) = (x.source.mul(m), x.target.mul(m)) else { continue };
            if !window.contains(ms.s(), ms.t()) {
                continue;
            }
            match by_source.get(&ms) {
                Some(y) if y.target == mt && y.coefficient() == x.coefficient() * a * b => {}
                _ => report.violations.push(format!("line {line}: d({}) is not {m}-linear", x.source)),
            }
        }
    }
    Ok(report)
}
