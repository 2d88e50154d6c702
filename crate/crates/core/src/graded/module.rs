use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::generators::{Gen, GenKind};
use super::monomial::Monomial;
use super::GradedError;
use crate::field::BaseField;

/// Which coordinate the `lo..=hi` range of a [`Window`] bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    T,
    Stem,
}

/// A finite region of the (s, t) plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub s_min: i32,
    pub s_max: i32,
    pub lo: i32,
    pub hi: i32,
    pub axis: Axis,
}

impl Window {
    pub fn stems(lo: i32, hi: i32, s_max: i32) -> Window {
        Window { s_min: 0, s_max, lo, hi, axis: Axis::Stem }
    }

    pub fn internal(lo: i32, hi: i32, s_max: i32) -> Window {
        Window { s_min: 0, s_max, lo, hi, axis: Axis::T }
    }

    pub fn contains(&self, s: i32, t: i32) -> bool {
        let x = match self.axis {
            Axis::T => t,
            Axis::Stem => t - s,
        };
        (self.s_min..=self.s_max).contains(&s) && (self.lo..=self.hi).contains(&x)
    }

    pub fn is_empty(&self) -> bool {
        self.s_min > self.s_max || self.lo > self.hi
    }

    pub fn span(&self) -> i32 {
        self.hi - self.lo + 1
    }

    /// Widens the bounded range by `pad` on both sides.
    pub fn padded(&self, pad: i32) -> Window {
        Window { lo: self.lo - pad, hi: self.hi + pad, ..*self }
    }
}

impl Default for Window {
    fn default() -> Self {
        Window::stems(-60, 230, 40)
    }
}

/// A bigraded vector space with a monomial basis in each bucket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradedModule {
    pub name: String,
    pub field: BaseField,
    buckets: BTreeMap<(i32, i32), Vec<Monomial>>,
}

impl BigradedModule {
    pub fn new(name: impl Into<String>, field: BaseField) -> Self {
        BigradedModule { name: name.into(), field, buckets: BTreeMap::new() }
    }

    /// Adds a normalized monomial to the bucket of its own bidegree.
    /// Returns `false` if it was already present.
    pub fn insert(&mut self, m: Monomial) -> bool {
        debug_assert!(m.is_normalized(), "{m} is not normalized");
        let bucket = self.buckets.entry(m.bidegree()).or_default();
        match bucket.binary_search(&m) {
            Ok(_) => false,
            Err(pos) => {
                bucket.insert(pos, m);
                true
            }
        }
    }

    /// Inserts into an explicit bucket, checking the key matches.
    pub fn insert_at(&mut self, key: (i32, i32), m: Monomial) -> Result<bool, GradedError> {
        if m.bidegree() != key {
            return Err(GradedError::BucketMismatch { label: m.to_string(), key, actual: m.bidegree() });
        }
        Ok(self.insert(m))
    }

    pub fn bucket(&self, s: i32, t: i32) -> &[Monomial] {
        self.buckets.get(&(s, t)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn buckets(&self) -> impl Iterator<Item = ((i32, i32), &[Monomial])> {
        self.buckets.iter().filter(|(_, v)| !v.is_empty()).map(|(&k, v)| (k, v.as_slice()))
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        let (s, t) = m.bidegree();
        self.bucket(s, t).binary_search(m).is_ok()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.buckets.values().flatten()
    }

    /// Dimension over the module's own field.
    pub fn dim(&self, s: i32, t: i32) -> usize {
        self.bucket(s, t).len()
    }

    pub fn dim_f3(&self, s: i32, t: i32) -> usize {
        self.dim(s, t) * self.field.degree()
    }

    pub fn total_dim(&self) -> usize {
        self.buckets.values().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// F3-dimension per stem, over buckets accepted by `window`.
    pub fn dims_by_stem(&self, window: &Window) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for (&(s, t), b) in &self.buckets {
            if window.contains(s, t) && !b.is_empty() {
                *out.entry(t - s).or_insert(0) += b.len() * self.field.degree();
            }
        }
        out
    }

    pub fn restrict(&self, window: &Window) -> BigradedModule {
        let mut out = BigradedModule::new(self.name.clone(), self.field);
        for (&(s, t), b) in &self.buckets {
            if window.contains(s, t) {
                out.buckets.insert((s, t), b.clone());
            }
        }
        out
    }

    /// Keeps the monomials satisfying `keep`.
    pub fn filter(&self, name: impl Into<String>, keep: impl Fn(&Monomial) -> bool) -> BigradedModule {
        let mut out = BigradedModule::new(name, self.field);
        for m in self.monomials().filter(|m| keep(m)) {
            out.insert(*m);
        }
        out
    }

    /// Checks that multiplying by a monomial of bidegree `(ds, dt)` gives a
    /// dimension-preserving bijection between buckets whose source and
    /// target both lie in `window`. Returns the first offending bucket.
    pub fn check_translation(&self, ds: i32, dt: i32, window: &Window) -> Result<(), (i32, i32)> {
        let keys: BTreeSet<(i32, i32)> = self.buckets.keys().copied().collect();
        let shifted = keys.iter().map(|&(s, t)| (s + ds, t + dt));
        for (s, t) in keys.iter().copied().chain(shifted.map(|(s, t)| (s - ds, t - dt))) {
            if !window.contains(s, t) || !window.contains(s + ds, t + dt) {
                continue;
            }
            if self.dim(s, t) != self.dim(s + ds, t + dt) {
                return Err((s, t));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> ModuleJson {
        ModuleJson {
            name: self.name.clone(),
            field: self.field,
            buckets: self
                .buckets()
                .map(|((s, t), b)| BucketJson { s, t, basis: b.iter().map(|m| m.to_string()).collect() })
                .collect(),
        }
    }

    pub fn from_json(json: &ModuleJson) -> Result<BigradedModule, GradedError> {
        let mut out = BigradedModule::new(json.name.clone(), json.field);
        for b in &json.buckets {
            for label in &b.basis {
                let m: Monomial = label.parse()?;
                out.insert_at((b.s, b.t), m)?;
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub name: String,
    pub field: BaseField,
    pub buckets: Vec<BucketJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BucketJson {
    pub s: i32,
    pub t: i32,
    pub basis: Vec<String>,
}

/// The span of `(products of base generators) · (module generators)` inside
/// `window`. Base generators are single generator powers such as `beta`,
/// `v2h` or `zeta`; their kind decides the allowed exponents. At most one
/// invertible generator may sit in cohomological degree 0, and it is the
/// periodicity generator the window has to accommodate.
pub fn free_module_span(
    name: &str,
    field: BaseField,
    base_ring_gens: &[Monomial],
    module_gens: &[Monomial],
    window: &Window,
) -> Result<BigradedModule, GradedError> {
    let mut finite = Vec::new();
    let mut periodic: Option<(Monomial, GenKind)> = None;
    for m in base_ring_gens {
        let mut factors = m.factors();
        let (g, _) = factors.next().ok_or_else(|| GradedError::BaseGenerator(m.to_string()))?;
        if factors.next().is_some() {
            return Err(GradedError::BaseGenerator(m.to_string()));
        }
        let (s, t) = m.bidegree();
        match g.kind() {
            GenKind::InvertiblePolynomial if s == 0 => {
                if t == 0 || periodic.is_some() {
                    return Err(GradedError::Periodicity(format!(
                        "at most one degree-0 invertible generator with t != 0 is allowed, got {m}"
                    )));
                }
                if window.span() < t.abs() {
                    return Err(GradedError::Periodicity(format!(
                        "window of width {} is not closed under {m} (t = {t})",
                        window.span()
                    )));
                }
                periodic = Some((*m, g.kind()));
            }
            GenKind::InvertiblePolynomial | GenKind::Polynomial if s <= 0 => {
                return Err(GradedError::Periodicity(format!("{m} would be unbounded in the window")));
            }
            kind => finite.push((*m, kind)),
        }
    }

    let mut out = BigradedModule::new(name, field);
    for g in module_gens {
        let mut stack = vec![(0usize, *g)];
        while let Some((i, acc)) = stack.pop() {
            if acc.s() > window.s_max {
                continue;
            }
            if i < finite.len() {
                let (b, kind) = finite[i];
                let max = match kind {
                    GenKind::Exterior => 1,
                    _ => (window.s_max - acc.s()) / b.s() + 1,
                };
                let mut cur = acc;
                for _ in 0..=max {
                    stack.push((i + 1, cur));
                    match cur.mul(&b) {
                        Some((_, next)) => cur = next,
                        None => break,
                    }
                }
                continue;
            }
            match periodic {
                None => {
                    if window.contains(acc.s(), acc.t()) {
                        out.insert(acc);
                    }
                }
                Some((p, _)) => {
                    let (s, t) = acc.bidegree();
                    let x = if window.axis == Axis::T { t } else { t - s };
                    let pt = p.t();
                    let (klo, khi) = k_range(window.lo - x, window.hi - x, pt);
                    for k in klo..=khi {
                        let pk = p_power(&p, k);
                        if let Some((_, m)) = acc.mul(&pk) {
                            if window.contains(m.s(), m.t()) {
                                out.insert(m);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// All k with lo <= k·step <= hi.
fn k_range(lo: i32, hi: i32, step: i32) -> (i32, i32) {
    let (a, b) = if step > 0 { (lo, hi) } else { (-hi, -lo) };
    let step = step.abs();
    (a.div_euclid(step) + i32::from(a.rem_euclid(step) != 0), b.div_euclid(step))
}

/// `p^k` for a single-generator power `p`, without normalizing; the product
/// with `acc` normalizes.
fn p_power(p: &Monomial, k: i32) -> Monomial {
    let (g, e) = p.factors().next().expect("non-trivial periodicity generator");
    Monomial::one().with(g, e * k)
}

/// Every normalized monomial in the free graded-commutative algebra on
/// `gens` with bidegree exactly `(s, t)`. At most one generator may be an
/// invertible one of cohomological degree 0; it absorbs the t-constraint.
pub fn monomials_in_bidegree(gens: &[Gen], s: i32, t: i32) -> Vec<Monomial> {
    let unit = gens.iter().copied().find(|g| g.kind() == GenKind::InvertiblePolynomial && g.bidegree().0 == 0);
    let rest: Vec<Gen> = gens.iter().copied().filter(|&g| Some(g) != unit).collect();
    let mut out = Vec::new();
    let mut stack = vec![(0usize, Monomial::one())];
    while let Some((i, acc)) = stack.pop() {
        let (as_, at) = acc.bidegree();
        if as_ > s {
            continue;
        }
        if i == rest.len() {
            if as_ != s {
                continue;
            }
            match unit {
                None if at == t => out.push(acc),
                None => {}
                Some(u) => {
                    let ut = u.bidegree().1;
                    if (t - at) % ut == 0 {
                        if let Some((_, m)) = acc.mul(&Monomial::one().with(u, (t - at) / ut)) {
                            out.push(m);
                        }
                    }
                }
            }
            continue;
        }
        let g = rest[i];
        let (gs, _) = g.bidegree();
        let max = match g.kind() {
            GenKind::Exterior => 1,
            _ if gs > 0 => (s - as_) / gs,
            _ => 0,
        };
        for e in 0..=max {
            stack.push((i + 1, acc.with(g, acc.exp(g) + e)));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Names a base generator power like `v2h^9`.
pub fn base(g: Gen, k: i32) -> Monomial {
    Monomial::one().with(g, k)
}
