use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::action::{omega, phi, ActionSpec};
use super::ring::{component_gens, u_power, Ring, RingBucket, RingElem};
use super::CohomologyError;
use crate::field::{BaseField, F3, F9};
use crate::graded::{free_module_span, BigradedModule, Gen, Monomial, Poly, Window};
use crate::linalg::{Matrix, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Subgroup {
    C3,
    C,
    N,
    N1,
    G12,
    G24,
    SD16,
    #[serde(rename = "G2^1")]
    G21,
    #[serde(rename = "G2^0")]
    G20,
    G2,
}

impl Subgroup {
    pub const ALL: [Subgroup; 10] = [
        Subgroup::C3,
        Subgroup::C,
        Subgroup::N,
        Subgroup::N1,
        Subgroup::G12,
        Subgroup::G24,
        Subgroup::SD16,
        Subgroup::G21,
        Subgroup::G20,
        Subgroup::G2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Subgroup::C3 => "C3",
            Subgroup::C => "C",
            Subgroup::N => "N",
            Subgroup::N1 => "N1",
            Subgroup::G12 => "G12",
            Subgroup::G24 => "G24",
            Subgroup::SD16 => "SD16",
            Subgroup::G21 => "G2^1",
            Subgroup::G20 => "G2^0",
            Subgroup::G2 => "G2",
        }
    }

    pub fn from_name(s: &str) -> Result<Subgroup, CohomologyError> {
        Subgroup::ALL
            .into_iter()
            .find(|g| g.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| CohomologyError::UnknownSubgroup(s.to_string()))
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The free F9[y1+y2, u±1] ⊗ Λ(ζ1+ζ2)-submodule of the product ring on
/// explicit generators (the image of the detection map).
#[derive(Clone, Debug)]
pub struct Submodule {
    pub gens: Vec<(String, RingElem)>,
    pub with_zeta: bool,
}

/// A coefficient ring with the operators available on it and, optionally,
/// the submodule the operators are restricted to.
#[derive(Clone, Debug)]
pub struct CohomologyRing {
    pub name: String,
    pub ring: Ring,
    pub actions: Vec<ActionSpec>,
    pub submodule: Option<Submodule>,
}

/// Per-bucket F3-subspaces of a [`CohomologyRing`].
#[derive(Clone, Debug)]
pub struct InvariantModule {
    pub name: String,
    pub buckets: BTreeMap<(i32, i32), (RingBucket, Subspace<F3>)>,
}

impl InvariantModule {
    pub fn dim_f3(&self, s: i32, t: i32) -> usize {
        self.buckets.get(&(s, t)).map_or(0, |(_, v)| v.dimension())
    }

    pub fn total_dim_f3(&self) -> usize {
        self.buckets.values().map(|(_, v)| v.dimension()).sum()
    }
}

/// Label → ring element, extended multiplicatively in label order.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub images: BTreeMap<Gen, RingElem>,
    pub ncomps: usize,
}

impl Evaluation {
    pub fn identity(ring: &Ring) -> Evaluation {
        let mut images = BTreeMap::new();
        for (i, gens) in ring.components.iter().enumerate() {
            for &g in gens {
                let e = if g == Gen::U {
                    ring.diagonal(u_power(F9::ONE, 1))
                } else {
                    ring.in_component(i, Poly::monomial(F9::ONE, Monomial::gen(g)))
                };
                images.insert(g, e);
            }
        }
        Evaluation { images, ncomps: ring.ncomps() }
    }

    pub fn eval(&self, m: &Monomial) -> Result<RingElem, CohomologyError> {
        let mut acc = RingElem::one(self.ncomps);
        for (g, e) in m.factors() {
            let img = self.images.get(&g).ok_or_else(|| CohomologyError::Evaluation(m.to_string()))?;
            let p = img.pow(e).ok_or_else(|| CohomologyError::Evaluation(m.to_string()))?;
            acc = acc.mul(&p);
        }
        Ok(acc)
    }
}

/// Everything needed to compute and identify one subgroup's cohomology.
#[derive(Clone, Debug)]
pub struct SubgroupSpec {
    pub subgroup: Subgroup,
    pub coefficients: CohomologyRing,
    /// Operators generating the group acting on `coefficients`.
    pub generators: Vec<ActionSpec>,
    pub field: BaseField,
    pub base: Vec<Monomial>,
    pub module_gens: Vec<Monomial>,
    pub evaluation: Evaluation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BucketCheck {
    pub s: i32,
    pub t: i32,
    pub computed_dim: usize,
    pub expected_dim: usize,
    pub labels_invariant: bool,
    pub labels_independent: bool,
}

impl BucketCheck {
    pub fn ok(&self) -> bool {
        self.computed_dim == self.expected_dim && self.labels_invariant && self.labels_independent
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentifyReport {
    pub name: String,
    pub buckets_checked: usize,
    pub total_dim_f3: usize,
    pub failures: Vec<BucketCheck>,
}

impl IdentifyReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct SubgroupCohomology {
    pub subgroup: Subgroup,
    pub module: BigradedModule,
    pub invariants: InvariantModule,
    pub report: IdentifyReport,
}

fn mono(s: &str) -> Monomial {
    s.parse().expect("built-in label")
}

fn single(ring: &Ring, comp: usize, c: F9, m: &str) -> RingElem {
    ring.in_component(comp, Poly::monomial(c, mono(m)))
}

fn couple(ring: &Ring, c1: F9, m1: &str, c2: F9, m2: &str) -> RingElem {
    single(ring, 0, c1, m1).add(&single(ring, 1, c2, m2))
}

fn w(k: i64) -> F9 {
    F9::omega_pow(k)
}

fn centralizer_ring(name: &str, with_a: bool, with_zeta: bool) -> Ring {
    Ring::new(name, vec![component_gens(0, with_a, with_zeta)])
}

fn product_ring(with_zeta: bool) -> Ring {
    Ring::new("C x C'", vec![component_gens(0, true, with_zeta), component_gens(1, true, with_zeta)])
}

/// The image of the detection map inside the product ring.
pub fn rho_image(with_zeta: bool) -> (Ring, Submodule) {
    let r = product_ring(with_zeta);
    let one = F9::ONE;
    let gens = vec![
        ("1".to_string(), RingElem::one(2)),
        ("x1".to_string(), single(&r, 0, one, "x1")),
        ("x2".to_string(), single(&r, 1, one, "x2")),
        ("y1".to_string(), single(&r, 0, one, "y1")),
        ("x1a1-x2a2".to_string(), couple(&r, one, "x1*a1", -one, "x2*a2")),
        ("y1a1".to_string(), single(&r, 0, one, "y1*a1")),
        ("y2a2".to_string(), single(&r, 1, one, "y2*a2")),
        ("y1x1a1".to_string(), single(&r, 0, one, "x1*y1*a1")),
    ];
    (r, Submodule { gens, with_zeta })
}

impl Submodule {
    /// F3-span of the submodule inside one bucket of `ring`.
    pub fn bucket_span(&self, ring: &Ring, bucket: &RingBucket) -> Subspace<F3> {
        let one = F9::ONE;
        let y = couple(ring, one, "y1", one, "y2");
        let z = if self.with_zeta { Some(couple(ring, one, "zeta1", one, "zeta2")) } else { None };
        let (s, t) = (bucket.s, bucket.t);
        let mut vectors = Vec::new();
        for (_, g) in &self.gens {
            let Some((gs, gt)) = g.comps.iter().find_map(|p| p.bidegree()) else { continue };
            for e in 0..=i32::from(z.is_some()) {
                let rem = s - gs - e;
                if rem < 0 || rem % 2 != 0 || (gt - t) % 2 != 0 {
                    continue;
                }
                let k = (gt - t) / 2;
                let mut x = y.pow(rem / 2).unwrap().mul(g);
                if e == 1 {
                    x = z.as_ref().unwrap().mul(&x);
                }
                x = ring.diagonal(u_power(one, k)).mul(&x);
                for c in [F9::ONE, F9::OMEGA] {
                    if let Some(v) = x.scale(c).coords(bucket) {
                        vectors.push(v);
                    }
                }
            }
        }
        Subspace::span(bucket.dim_f3(), &vectors)
    }
}

impl CohomologyRing {
    /// The ambient F3-space of a bucket: the submodule span if there is one.
    pub fn bucket_space(&self, s: i32, t: i32) -> (RingBucket, Subspace<F3>) {
        let b = self.ring.bucket(s, t);
        let space = match &self.submodule {
            Some(m) => m.bucket_span(&self.ring, &b),
            None => Subspace::full(b.dim_f3()),
        };
        (b, space)
    }

    /// Checks ω⁸ = 1, φ² = 1 and φωφ = ω³ on every bucket of `window`.
    pub fn check_sd16_relations(&self, window: &Window) -> Result<usize, String> {
        let (om, ph) = (omega(), phi());
        let mut checked = 0;
        for (s, t) in window_keys(window) {
            let b = self.ring.bucket(s, t);
            if b.dim_f9() == 0 {
                continue;
            }
            let id = Matrix::identity(b.dim_f3());
            let mw = om.matrix(&self.ring, &b).map_err(|e| e.to_string())?;
            let mp = ph.matrix(&self.ring, &b).map_err(|e| e.to_string())?;
            let mut w8 = id.clone();
            for _ in 0..8 {
                w8 = mw.mul(&w8);
            }
            let w3 = mw.mul(&mw).mul(&mw);
            if w8 != id || mp.mul(&mp) != id || mp.mul(&mw).mul(&mp) != w3 {
                return Err(format!("SD16 relations fail on bucket ({s},{t})"));
            }
            checked += 1;
        }
        Ok(checked)
    }
}

fn window_keys(window: &Window) -> impl Iterator<Item = (i32, i32)> + '_ {
    (window.s_min..=window.s_max).flat_map(move |s| {
        let (lo, hi) = match window.axis {
            crate::graded::Axis::T => (window.lo, window.hi),
            crate::graded::Axis::Stem => (window.lo + s, window.hi + s),
        };
        (lo..=hi).map(move |t| (s, t))
    })
}

/// The centralizer C's cohomology F9[y1,u±1] ⊗ Λ(x1, a1, ζ1) together with
/// its ω-conjugate copy, carrying the SD16 generators ω∗ and φ∗ (which
/// exchange the two copies). The returned module lists the first copy.
pub fn build_centralizer_cohomology(window: &Window) -> (CohomologyRing, BigradedModule) {
    let ring = product_ring(true);
    let cr = CohomologyRing {
        name: "C".to_string(),
        ring: ring.clone(),
        actions: vec![omega(), phi()],
        submodule: None,
    };
    let mut module = BigradedModule::new("C", BaseField::F9);
    for (s, t) in window_keys(window) {
        for (i, m) in ring.bucket(s, t).basis {
            if i == 0 {
                module.insert(m);
            }
        }
    }
    (cr, module)
}

/// Per-bucket fixed subspace of the group generated by `generators`.
pub fn invariants(
    ring: &CohomologyRing,
    generators: &[ActionSpec],
    window: &Window,
) -> Result<InvariantModule, CohomologyError> {
    let mut buckets = BTreeMap::new();
    for (s, t) in window_keys(window) {
        let (b, space) = ring.bucket_space(s, t);
        if b.dim_f9() == 0 {
            continue;
        }
        let n = b.dim_f3();
        let mut rows = Vec::new();
        for g in generators {
            let m = g.matrix(&ring.ring, &b)?;
            for i in 0..n {
                let mut r = m.row(i).to_vec();
                r[i] -= F3::ONE;
                rows.push(r);
            }
        }
        let fixed = if rows.is_empty() {
            Subspace::full(n)
        } else {
            Subspace::span(n, &Matrix::from_rows(n, &rows).kernel())
        };
        let inv = fixed.intersect(&space);
        if inv.dimension() > 0 {
            buckets.insert((s, t), (b, inv));
        }
    }
    Ok(InvariantModule { name: ring.name.clone(), buckets })
}

/// Splits an invariant module into the ±1 eigenspaces of an operator that
/// squares to the identity on it.
pub fn eigenspace_split(
    ring: &CohomologyRing,
    module: &InvariantModule,
    involution: &ActionSpec,
) -> Result<(InvariantModule, InvariantModule), CohomologyError> {
    let mut plus = InvariantModule { name: format!("{}+", module.name), buckets: BTreeMap::new() };
    let mut minus = InvariantModule { name: format!("{}-", module.name), buckets: BTreeMap::new() };
    for (&(s, t), (b, space)) in &module.buckets {
        let m = involution.matrix(&ring.ring, b)?;
        let n = b.dim_f3();
        for v in space.basis() {
            let once = m.apply(v);
            if !space.contains(&once) || m.apply(&once) != *v {
                return Err(CohomologyError::NotInvolution { op: involution.name.clone(), bucket: (s, t) });
            }
        }
        for (sign, target) in [(F3::ONE, &mut plus), (F3::MINUS_ONE, &mut minus)] {
            let rows: Vec<Vec<F3>> = (0..n)
                .map(|i| {
                    let mut r = m.row(i).to_vec();
                    r[i] -= sign;
                    r
                })
                .collect();
            let eig = Subspace::span(n, &Matrix::from_rows(n, &rows).kernel()).intersect(space);
            if eig.dimension() > 0 {
                target.buckets.insert((s, t), (b.clone(), eig));
            }
        }
    }
    Ok((plus, minus))
}

/// Compares computed invariants with a labelled module bucket by bucket:
/// dimensions must agree and the evaluated labels must be invariant and
/// independent.
pub fn identify(
    ring: &CohomologyRing,
    computed: &InvariantModule,
    expected: &BigradedModule,
    evaluation: &Evaluation,
    window: &Window,
) -> Result<IdentifyReport, CohomologyError> {
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut total = 0;
    for (s, t) in window_keys(window) {
        let labels = expected.bucket(s, t);
        let inv = computed.buckets.get(&(s, t));
        if labels.is_empty() && inv.is_none() {
            continue;
        }
        checked += 1;
        let computed_dim = inv.map_or(0, |(_, v)| v.dimension());
        total += computed_dim;
        let expected_dim = labels.len() * expected.field.degree();
        let bucket = match inv {
            Some((b, _)) => b.clone(),
            None => ring.ring.bucket(s, t),
        };
        let mut vectors = Vec::new();
        let mut outside = false;
        for l in labels {
            let x = evaluation.eval(l)?;
            let scalars: &[F9] = match expected.field {
                BaseField::F3 => &[F9::ONE],
                BaseField::F9 => &[F9::ONE, F9::OMEGA],
            };
            for &c in scalars {
                match x.scale(c).coords(&bucket) {
                    Some(v) => vectors.push(v),
                    None => outside = true,
                }
            }
        }
        let span = Subspace::span(bucket.dim_f3(), &vectors);
        let labels_independent = !outside && span.dimension() == vectors.len();
        let labels_invariant = !outside
            && match inv {
                Some((_, v)) => v.contains_subspace(&span),
                None => vectors.is_empty(),
            };
        let check = BucketCheck { s, t, computed_dim, expected_dim, labels_invariant, labels_independent };
        if !check.ok() {
            failures.push(check);
        }
    }
    Ok(IdentifyReport { name: computed.name.clone(), buckets_checked: checked, total_dim_f3: total, failures })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RhoReport {
    pub buckets_checked: usize,
    /// (bucket, operator, offending element) of the first failure.
    pub failure: Option<((i32, i32), String, String)>,
}

/// Checks that the image of the detection map is closed under ω∗ and φ∗.
pub fn verify_rho_image(window: &Window) -> RhoReport {
    let (ring, sub) = rho_image(true);
    let mut checked = 0;
    for (s, t) in window_keys(window) {
        let b = ring.bucket(s, t);
        if b.dim_f9() == 0 {
            continue;
        }
        let span = sub.bucket_span(&ring, &b);
        checked += 1;
        for op in [omega(), phi()] {
            let m = match op.matrix(&ring, &b) {
                Ok(m) => m,
                Err(e) => return RhoReport { buckets_checked: checked, failure: Some(((s, t), op.name, e.to_string())) },
            };
            for v in span.basis() {
                if !span.contains(&m.apply(v)) {
                    let elem = b.element(&ring, v);
                    return RhoReport {
                        buckets_checked: checked,
                        failure: Some(((s, t), op.name.clone(), format!("{:?}", elem.comps))),
                    };
                }
            }
        }
    }
    RhoReport { buckets_checked: checked, failure: None }
}

impl Subgroup {
    pub fn spec(self) -> SubgroupSpec {
        let om = omega();
        let ph = phi();
        let om2 = om.power(2);
        let omph = om.compose(&ph);
        let one = F9::ONE;
        let (coefficients, generators, field, base, module_gens, evaluation);
        match self {
            Subgroup::C3 | Subgroup::C => {
                let full = self == Subgroup::C;
                let ring = centralizer_ring(self.name(), full, full);
                evaluation = Evaluation::identity(&ring);
                base = ring.components[0].iter().map(|&g| Monomial::gen(g)).collect();
                coefficients = CohomologyRing { name: self.name().into(), ring, actions: vec![], submodule: None };
                generators = vec![];
                field = BaseField::F9;
                module_gens = vec![Monomial::one()];
            }
            Subgroup::G24 | Subgroup::G12 | Subgroup::N | Subgroup::N1 => {
                let (with_a, with_zeta) = match self {
                    Subgroup::N => (true, true),
                    Subgroup::N1 => (true, false),
                    _ => (false, false),
                };
                let ring = centralizer_ring(self.name(), with_a, with_zeta);
                let mut images = BTreeMap::new();
                images.insert(Gen::Alpha, single(&ring, 0, w(1), "x1*u^-2"));
                images.insert(Gen::Beta, single(&ring, 0, w(3), "y1*u^-6"));
                images.insert(Gen::W, single(&ring, 0, w(2), "u^-4"));
                images.insert(Gen::V2h, single(&ring, 0, one, "u^-4"));
                images.insert(Gen::V2, single(&ring, 0, one, "u^-8"));
                images.insert(Gen::A35, single(&ring, 0, one, "u^-18*a1"));
                images.insert(Gen::Zeta, single(&ring, 0, one, "zeta1"));
                evaluation = Evaluation { images, ncomps: 1 };
                if self == Subgroup::G24 {
                    generators = vec![om2.clone(), omph.clone()];
                    field = BaseField::F3;
                    base = vec![mono("beta"), mono("w"), mono("alpha")];
                } else {
                    generators = vec![om2.clone()];
                    field = BaseField::F9;
                    let mut b = vec![mono("beta"), mono("v2h"), mono("alpha")];
                    if with_a {
                        b.push(mono("a35"));
                    }
                    if with_zeta {
                        b.push(mono("zeta"));
                    }
                    base = b;
                }
                module_gens = vec![Monomial::one()];
                coefficients =
                    CohomologyRing { name: self.name().into(), ring, actions: generators.clone(), submodule: None };
            }
            Subgroup::SD16 => {
                let ring = Ring::new("SD16", vec![vec![Gen::U]]);
                let mut images = BTreeMap::new();
                images.insert(Gen::V2, single(&ring, 0, one, "u^-8"));
                evaluation = Evaluation { images, ncomps: 1 };
                generators = vec![om.clone(), ph.clone()];
                coefficients =
                    CohomologyRing { name: "SD16".into(), ring, actions: generators.clone(), submodule: None };
                field = BaseField::F3;
                base = vec![mono("v2")];
                module_gens = vec![Monomial::one()];
            }
            Subgroup::G20 | Subgroup::G2 | Subgroup::G21 => {
                let with_zeta = self != Subgroup::G21;
                let (ring, sub) = rho_image(with_zeta);
                let mut images = BTreeMap::new();
                images.insert(Gen::V2h, couple(&ring, one, "u^-4", one, "u^-4"));
                images.insert(Gen::V2, couple(&ring, one, "u^-8", one, "u^-8"));
                images.insert(Gen::W, couple(&ring, w(2), "u^-4", w(-2), "u^-4"));
                images.insert(Gen::Alpha, couple(&ring, w(1), "x1*u^-2", w(-1), "x2*u^-2"));
                images.insert(Gen::Beta, couple(&ring, w(3), "y1*u^-6", w(-3), "y2*u^-6"));
                images.insert(Gen::A35, couple(&ring, w(1), "a1*u^-18", w(-1), "a2*u^-18"));
                if with_zeta {
                    images.insert(Gen::Zeta, couple(&ring, one, "zeta1", one, "zeta2"));
                }
                evaluation = Evaluation { images, ncomps: 2 };
                generators = if self == Subgroup::G20 { vec![om2.clone(), ph.clone()] } else { vec![om.clone(), ph.clone()] };
                coefficients = CohomologyRing {
                    name: self.name().into(),
                    ring,
                    actions: vec![om.clone(), ph.clone()],
                    submodule: Some(sub),
                };
                field = BaseField::F3;
                let periodic = if self == Subgroup::G20 { "v2h" } else { "v2" };
                let mut b = vec![mono("beta"), mono(periodic)];
                if with_zeta {
                    b.push(mono("zeta"));
                }
                base = b;
                module_gens = eight_classes();
            }
        }
        SubgroupSpec { subgroup: self, coefficients, generators, field, base, module_gens, evaluation }
    }

    /// The labelled free module the cohomology is identified with.
    pub fn labelled_module(self, window: &Window) -> Result<BigradedModule, CohomologyError> {
        let spec = self.spec();
        Ok(free_module_span(self.name(), spec.field, &spec.base, &spec.module_gens, window)?)
    }

    /// Computes the invariants on `window` and identifies them with the
    /// expected labelled module.
    pub fn compute(self, window: &Window) -> Result<SubgroupCohomology, CohomologyError> {
        let spec = self.spec();
        let inv = invariants(&spec.coefficients, &spec.generators, window)?;
        let expected = free_module_span(self.name(), spec.field, &spec.base, &spec.module_gens, window)?;
        let report = identify(&spec.coefficients, &inv, &expected, &spec.evaluation, window)?;
        Ok(SubgroupCohomology { subgroup: self, module: expected, invariants: inv, report })
    }
}

/// The eight module generators of the G2-level cohomology.
pub fn eight_classes() -> Vec<Monomial> {
    ["1", "alpha", "alpha*w", "beta*w", "alpha*a35", "beta*a35", "beta*w*a35", "alpha*beta*w*a35"]
        .into_iter()
        .map(mono)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> Window {
        Window::internal(-40, 40, 6)
    }

    #[test]
    fn subgroup_names_round_trip() {
        for g in Subgroup::ALL {
            assert_eq!(Subgroup::from_name(g.name()).unwrap(), g);
        }
        assert!(Subgroup::from_name("G48").is_err());
    }

    #[test]
    fn each_subgroup_identifies_on_a_small_window() {
        for g in Subgroup::ALL {
            let c = g.compute(&small()).unwrap();
            assert!(c.report.ok(), "{g}: {:?}", &c.report.failures[..c.report.failures.len().min(3)]);
            assert!(c.report.total_dim_f3 > 0, "{g}");
        }
    }

    #[test]
    fn empty_generator_list_gives_whole_ring() {
        let spec = Subgroup::C3.spec();
        let inv = invariants(&spec.coefficients, &[], &small()).unwrap();
        assert_eq!(inv.dim_f3(0, 0), 2);
        assert_eq!(inv.dim_f3(3, -4), 2);
    }

    #[test]
    fn subgroup_invariants_nest() {
        // G24 ⊂ … : Q8-invariants sit inside C4-invariants bucket-wise
        let w = small();
        let g24 = Subgroup::G24.compute(&w).unwrap().invariants;
        let g12 = Subgroup::G12.compute(&w).unwrap().invariants;
        for (k, (_, v)) in &g24.buckets {
            let (_, big) = &g12.buckets[k];
            assert!(big.contains_subspace(v));
            assert_eq!(big.dimension(), 2 * v.dimension());
        }
    }

    #[test]
    fn rho_image_closed() {
        let r = verify_rho_image(&small());
        assert!(r.failure.is_none(), "{:?}", r.failure);
        assert!(r.buckets_checked > 0);
    }

    #[test]
    fn sd16_relations_hold() {
        let (c, module) = build_centralizer_cohomology(&small());
        assert!(c.check_sd16_relations(&small()).unwrap() > 0);
        assert_eq!(module.dim(0, 0), 1);
        assert_eq!(module.dim(1, 0), 3);
    }

    #[test]
    fn eigensplit_of_g20() {
        let w = Window::internal(-48, 48, 5);
        let c = Subgroup::G20.compute(&w).unwrap();
        let spec = Subgroup::G20.spec();
        let (plus, minus) = eigenspace_split(&spec.coefficients, &c.invariants, &omega()).unwrap();
        let g2 = Subgroup::G2.compute(&w).unwrap();
        for (s, t) in window_keys(&w) {
            assert_eq!(plus.dim_f3(s, t) + minus.dim_f3(s, t), c.invariants.dim_f3(s, t));
            assert_eq!(plus.dim_f3(s, t), g2.invariants.dim_f3(s, t));
        }
    }
}
