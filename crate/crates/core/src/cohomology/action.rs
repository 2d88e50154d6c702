use std::collections::BTreeMap;

use serde::Serialize;

use super::ring::{Ring, RingBucket, RingElem};
use super::CohomologyError;
use crate::field::{Field, F3, F9};
use crate::graded::{lift, Gen, GenKind, Monomial};
use crate::linalg::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Linearity {
    Linear,
    /// Frobenius-semilinear: g(c·x) = φ(c)·g(x).
    Semilinear,
}

/// A ring automorphism given on generators by `g ↦ c·g'`. Generators not
/// listed are fixed. `swaps` exchanges the two components of a product ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ActionSpec {
    pub name: String,
    pub linearity: Linearity,
    pub swaps: bool,
    #[serde(serialize_with = "ser_images")]
    pub images: BTreeMap<Gen, (F9, Gen)>,
}

fn ser_images<S: serde::Serializer>(images: &BTreeMap<Gen, (F9, Gen)>, ser: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = ser.serialize_map(Some(images.len()))?;
    for (g, (c, h)) in images {
        map.serialize_entry(g.name(), &format!("({c})*{h}"))?;
    }
    map.end()
}

impl ActionSpec {
    pub fn new(name: &str, linearity: Linearity, swaps: bool, images: &[(Gen, F9, Gen)]) -> ActionSpec {
        ActionSpec {
            name: name.to_string(),
            linearity,
            swaps,
            images: images.iter().map(|&(g, c, h)| (g, (c, h))).collect(),
        }
    }

    pub fn identity() -> ActionSpec {
        ActionSpec::new("1", Linearity::Linear, false, &[])
    }

    pub fn image(&self, g: Gen) -> (F9, Gen) {
        self.images.get(&g).copied().unwrap_or((F9::ONE, g))
    }

    fn twist(&self, c: F9) -> F9 {
        match self.linearity {
            Linearity::Linear => c,
            Linearity::Semilinear => c.frobenius(),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ActionSpec) -> ActionSpec {
        let mut gens: Vec<Gen> = self.images.keys().chain(other.images.keys()).copied().collect();
        gens.sort();
        gens.dedup();
        let images = gens
            .into_iter()
            .map(|g| {
                let (c, h) = other.image(g);
                let (c2, h2) = self.image(h);
                (g, (self.twist(c) * c2, h2))
            })
            .collect();
        let linearity = if self.linearity == other.linearity { Linearity::Linear } else { Linearity::Semilinear };
        ActionSpec {
            name: format!("{}{}", self.name, other.name),
            linearity,
            swaps: self.swaps != other.swaps,
            images,
        }
    }

    pub fn power(&self, k: u32) -> ActionSpec {
        let mut acc = ActionSpec::identity();
        for _ in 0..k {
            acc = self.compose(&acc);
        }
        acc.name = format!("{}^{k}", self.name);
        acc
    }

    /// Image of a monomial as a signed monomial; `None` if it vanishes.
    pub fn apply_monomial(&self, m: &Monomial) -> Option<(F9, Monomial)> {
        let mut coeff = F9::ONE;
        let mut acc = Monomial::one();
        for (g, e) in m.factors() {
            let (c, h) = self.image(g);
            if e < 0 && h.kind() != GenKind::InvertiblePolynomial {
                return None;
            }
            coeff *= c.pow(e as i64);
            let (sign, next) = acc.mul(&Monomial::one().with(h, e))?;
            coeff *= lift::<F9>(sign);
            acc = next;
        }
        Some((coeff, acc))
    }

    pub fn target_component(&self, i: usize, ncomps: usize) -> usize {
        if self.swaps && ncomps == 2 {
            1 - i
        } else {
            i
        }
    }

    pub fn apply(&self, ring: &Ring, x: &RingElem) -> RingElem {
        let mut out = ring.zero();
        for (i, p) in x.comps.iter().enumerate() {
            let j = self.target_component(i, ring.ncomps());
            for (m, &c) in p.terms() {
                if let Some((d, img)) = self.apply_monomial(m) {
                    out.comps[j].add_term(self.twist(c) * d, img);
                }
            }
        }
        out
    }

    /// The F3-linear map this operator induces on a bucket (columns are the
    /// images of the F3 basis `1·b, ω·b`).
    pub fn matrix(&self, ring: &Ring, bucket: &RingBucket) -> Result<Matrix<F3>, CohomologyError> {
        let n = bucket.dim_f3();
        let mut cols = Vec::with_capacity(n);
        for &(i, m) in &bucket.basis {
            for c in [F9::ONE, F9::OMEGA] {
                let x = ring.in_component(i, crate::graded::Poly::monomial(c, m));
                let y = self.apply(ring, &x);
                let v = y.coords(bucket).ok_or_else(|| CohomologyError::NotPreserved {
                    op: self.name.clone(),
                    label: m.to_string(),
                    bucket: (bucket.s, bucket.t),
                })?;
                cols.push(v);
            }
        }
        Ok(Matrix::from_columns(n, &cols))
    }
}

/// ω∗ from the canonical SD16 action.
pub fn omega() -> ActionSpec {
    let m = -F9::ONE;
    ActionSpec::new(
        "omega",
        Linearity::Linear,
        true,
        &[
            (Gen::X1, F9::ONE, Gen::X2),
            (Gen::X2, m, Gen::X1),
            (Gen::Y1, F9::ONE, Gen::Y2),
            (Gen::Y2, m, Gen::Y1),
            (Gen::A1, F9::ONE, Gen::A2),
            (Gen::A2, m, Gen::A1),
            (Gen::U, F9::OMEGA, Gen::U),
            (Gen::Zeta1, F9::ONE, Gen::Zeta2),
            (Gen::Zeta2, F9::ONE, Gen::Zeta1),
        ],
    )
}

/// φ∗ from the canonical SD16 action.
pub fn phi() -> ActionSpec {
    let m = -F9::ONE;
    ActionSpec::new(
        "phi",
        Linearity::Semilinear,
        true,
        &[
            (Gen::X1, m, Gen::X2),
            (Gen::X2, m, Gen::X1),
            (Gen::Y1, m, Gen::Y2),
            (Gen::Y2, m, Gen::Y1),
            (Gen::A1, m, Gen::A2),
            (Gen::A2, m, Gen::A1),
            (Gen::Zeta1, F9::ONE, Gen::Zeta2),
            (Gen::Zeta2, F9::ONE, Gen::Zeta1),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::ring::component_gens;
    use crate::graded::Poly;

    fn product_ring() -> Ring {
        Ring::new("R", vec![component_gens(0, true, true), component_gens(1, true, true)])
    }

    #[test]
    fn omega_on_generators() {
        let w = omega();
        let x1: Monomial = "x1".parse().unwrap();
        assert_eq!(w.apply_monomial(&x1), Some((F9::ONE, "x2".parse().unwrap())));
        let u3: Monomial = "u^3".parse().unwrap();
        assert_eq!(w.apply_monomial(&u3), Some((F9::OMEGA.pow(3), u3)));
        let w2 = w.power(2);
        assert_eq!(w2.image(Gen::X1), (-F9::ONE, Gen::X1));
        assert_eq!(w2.image(Gen::U), (F9::OMEGA.pow(2), Gen::U));
        assert!(!w2.swaps);
    }

    #[test]
    fn omega_phi_fixes_x1_and_y1() {
        let wp = omega().compose(&phi());
        assert_eq!(wp.image(Gen::X1), (F9::ONE, Gen::X1));
        assert_eq!(wp.image(Gen::Y1), (F9::ONE, Gen::Y1));
        assert_eq!(wp.linearity, Linearity::Semilinear);
        assert!(!wp.swaps);
    }

    #[test]
    fn relations_on_buckets() {
        let r = product_ring();
        let w = omega();
        let p = phi();
        for (s, t) in [(0, 0), (1, -2), (2, 4), (3, -6), (4, 16)] {
            let b = r.bucket(s, t);
            let n = b.dim_f3();
            let id = Matrix::identity(n);
            let mw = w.matrix(&r, &b).unwrap();
            let mp = p.matrix(&r, &b).unwrap();
            let mut w8 = id.clone();
            for _ in 0..8 {
                w8 = mw.mul(&w8);
            }
            assert_eq!(w8, id, "omega^8 at {s},{t}");
            assert_eq!(mp.mul(&mp), id, "phi^2 at {s},{t}");
            let w3 = mw.mul(&mw).mul(&mw);
            assert_eq!(mp.mul(&mw).mul(&mp), w3, "phi omega phi = omega^3 at {s},{t}");
        }
    }

    #[test]
    fn x1a1_minus_x2a2_is_negated() {
        let r = product_ring();
        let x1a1 = Poly::monomial(F9::ONE, "x1*a1".parse().unwrap());
        let x2a2 = Poly::monomial(F9::ONE, "x2*a2".parse().unwrap());
        let e = r.in_component(0, x1a1.clone()).add(&r.in_component(1, x2a2.scale(-F9::ONE)));
        let img = omega().apply(&r, &e);
        assert_eq!(img, e.scale(-F9::ONE));
    }

    #[test]
    fn not_preserved_is_reported() {
        let c3 = Ring::new("C3", vec![component_gens(0, false, false)]);
        let b = c3.bucket(1, 0);
        let err = omega().matrix(&c3, &b);
        assert!(matches!(err, Err(CohomologyError::NotPreserved { .. })));
    }
}
