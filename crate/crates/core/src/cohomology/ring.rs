use std::collections::BTreeMap;

use crate::field::{Field, F3, F9};
use crate::graded::{monomials_in_bidegree, Gen, Monomial, Poly};

/// A product of free graded-commutative F9-algebras, one per component.
/// The centralizer rings have one component; the target of the detection
/// map has two (subscript 1 and subscript 2), sharing `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    pub name: String,
    pub components: Vec<Vec<Gen>>,
}

/// An element of a [`Ring`], one polynomial per component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElem {
    pub comps: Vec<Poly<F9>>,
}

/// Basis of one (s, t) bucket of a ring: (component, monomial) pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingBucket {
    pub s: i32,
    pub t: i32,
    pub basis: Vec<(usize, Monomial)>,
    index: BTreeMap<(usize, Monomial), usize>,
}

impl Ring {
    pub fn new(name: &str, components: Vec<Vec<Gen>>) -> Ring {
        Ring { name: name.to_string(), components }
    }

    pub fn bucket(&self, s: i32, t: i32) -> RingBucket {
        let mut basis = Vec::new();
        for (i, gens) in self.components.iter().enumerate() {
            for m in monomials_in_bidegree(gens, s, t) {
                basis.push((i, m));
            }
        }
        let index = basis.iter().enumerate().map(|(k, &b)| (b, k)).collect();
        RingBucket { s, t, basis, index }
    }

    pub fn ncomps(&self) -> usize {
        self.components.len()
    }

    pub fn zero(&self) -> RingElem {
        RingElem { comps: vec![Poly::zero(); self.ncomps()] }
    }

    /// The same polynomial placed in every component (e.g. `u`, or `1`).
    pub fn diagonal(&self, p: Poly<F9>) -> RingElem {
        RingElem { comps: vec![p; self.ncomps()] }
    }

    /// An element supported on a single component.
    pub fn in_component(&self, i: usize, p: Poly<F9>) -> RingElem {
        let mut e = self.zero();
        e.comps[i] = p;
        e
    }
}

impl RingElem {
    pub fn add(&self, other: &RingElem) -> RingElem {
        RingElem { comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn mul(&self, other: &RingElem) -> RingElem {
        RingElem { comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.mul(b)).collect() }
    }

    pub fn scale(&self, c: F9) -> RingElem {
        RingElem { comps: self.comps.iter().map(|p| p.scale(c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Poly::is_zero)
    }

    pub fn one(ncomps: usize) -> RingElem {
        RingElem { comps: vec![Poly::monomial(F9::ONE, Monomial::one()); ncomps] }
    }

    /// Multiplicative inverse, defined when every component is a single term
    /// in invertible generators.
    pub fn inverse(&self) -> Option<RingElem> {
        let mut comps = Vec::new();
        for p in &self.comps {
            let mut terms = p.terms();
            let (m, c) = terms.next()?;
            if terms.next().is_some() {
                return None;
            }
            let mut inv = Monomial::one();
            for (g, e) in m.factors() {
                if g.kind() != crate::graded::GenKind::InvertiblePolynomial {
                    return None;
                }
                inv = inv.with(g, -e);
            }
            comps.push(Poly::monomial(c.inv()?, inv));
        }
        Some(RingElem { comps })
    }

    pub fn pow(&self, e: i32) -> Option<RingElem> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = RingElem::one(self.comps.len());
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Some(acc)
    }

    /// F3 coordinates in `bucket`: for each basis element the pair (c0, c1)
    /// of its F9 coefficient. `None` if a term lies outside the bucket.
    pub fn coords(&self, bucket: &RingBucket) -> Option<Vec<F3>> {
        let mut v = vec![F3::ZERO; 2 * bucket.basis.len()];
        for (i, p) in self.comps.iter().enumerate() {
            for (m, c) in p.terms() {
                let k = *bucket.index.get(&(i, *m))?;
                v[2 * k] = c.c0;
                v[2 * k + 1] = c.c1;
            }
        }
        Some(v)
    }
}

impl RingBucket {
    pub fn dim_f9(&self) -> usize {
        self.basis.len()
    }

    pub fn dim_f3(&self) -> usize {
        2 * self.basis.len()
    }

    pub fn position(&self, comp: usize, m: &Monomial) -> Option<usize> {
        self.index.get(&(comp, *m)).copied()
    }

    /// The element with F3 coordinates `v`.
    pub fn element(&self, ring: &Ring, v: &[F3]) -> RingElem {
        let mut e = ring.zero();
        for (k, &(i, m)) in self.basis.iter().enumerate() {
            let c = F9 { c0: v[2 * k], c1: v[2 * k + 1] };
            if !num_traits::Zero::is_zero(&c) {
                e.comps[i].add_term(c, m);
            }
        }
        e
    }
}

/// The subscript-1 generators together with the shared `u`.
pub fn component_gens(which: usize, with_a: bool, with_zeta: bool) -> Vec<Gen> {
    let (x, y, a, z) = if which == 0 {
        (Gen::X1, Gen::Y1, Gen::A1, Gen::Zeta1)
    } else {
        (Gen::X2, Gen::Y2, Gen::A2, Gen::Zeta2)
    };
    let mut gens = vec![Gen::U, x, y];
    if with_a {
        gens.push(a);
    }
    if with_zeta {
        gens.push(z);
    }
    gens
}

/// `c · u^k` as a polynomial.
pub fn u_power(c: F9, k: i32) -> Poly<F9> {
    Poly::gen_power(c, Gen::U, k)
}
