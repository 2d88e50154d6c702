use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::generators::{Gen, GenKind, NGEN};
use super::GradedError;
use crate::field::{Field, F3};

/// A formal product of generators in the fixed order. The derived `Ord` is
/// lexicographic on the exponent vector, which is what makes bucket bases and
/// golden files deterministic.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    exps: [i32; NGEN],
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn gen(g: Gen) -> Monomial {
        Monomial::one().with(g, 1)
    }

    /// `g^k`, normalized. Returns `None` when the power vanishes.
    pub fn power(g: Gen, k: i32) -> Option<(F3, Monomial)> {
        Monomial::one().with(g, k).normalize()
    }

    pub fn exp(&self, g: Gen) -> i32 {
        self.exps[g.index()]
    }

    /// Sets an exponent without normalizing.
    pub fn with(mut self, g: Gen, k: i32) -> Monomial {
        self.exps[g.index()] = k;
        self
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn factors(&self) -> impl Iterator<Item = (Gen, i32)> + '_ {
        Gen::ALL.iter().map(|&g| (g, self.exp(g))).filter(|&(_, e)| e != 0)
    }

    pub fn bidegree(&self) -> (i32, i32) {
        self.factors().fold((0, 0), |(s, t), (g, e)| {
            let (gs, gt) = g.bidegree();
            (s + e * gs, t + e * gt)
        })
    }

    pub fn s(&self) -> i32 {
        self.bidegree().0
    }

    pub fn t(&self) -> i32 {
        self.bidegree().1
    }

    pub fn stem(&self) -> i32 {
        let (s, t) = self.bidegree();
        t - s
    }

    /// The resolution marker carried by this monomial, if any.
    pub fn marker(&self) -> Option<Gen> {
        Gen::MARKERS.into_iter().find(|&g| self.exp(g) != 0)
    }

    pub fn without(mut self, g: Gen) -> Monomial {
        self.exps[g.index()] = 0;
        self
    }

    /// Applies w² = −v2 and v2h² = v2, and kills exterior squares.
    /// Returns `None` for zero or for a negative power of a non-invertible
    /// generator (which lies outside every ring used here).
    pub fn normalize(mut self) -> Option<(F3, Monomial)> {
        let mut sign = F3::ONE;
        let w = self.exps[Gen::W.index()];
        if !(0..=1).contains(&w) {
            let q = w.div_euclid(2);
            self.exps[Gen::W.index()] = w.rem_euclid(2);
            self.exps[Gen::V2.index()] += q;
            if q % 2 != 0 {
                sign = -sign;
            }
        }
        let h = self.exps[Gen::V2h.index()];
        if !(0..=1).contains(&h) {
            self.exps[Gen::V2h.index()] = h.rem_euclid(2);
            self.exps[Gen::V2.index()] += h.div_euclid(2);
        }
        for g in Gen::ALL {
            let e = self.exp(g);
            match g.kind() {
                GenKind::Exterior if !(0..=1).contains(&e) => return None,
                GenKind::Polynomial if e < 0 => return None,
                _ => {}
            }
        }
        Some((sign, self))
    }

    pub fn is_normalized(&self) -> bool {
        matches!(self.normalize(), Some((s, m)) if s == F3::ONE && m == *self)
    }

    /// Product with the Koszul sign of moving `other` past the odd
    /// generators of `self` that come later in the fixed order.
    pub fn mul(&self, other: &Monomial) -> Option<(F3, Monomial)> {
        let mut swaps = 0i64;
        for g in Gen::ALL {
            if !g.is_odd() || self.exp(g) % 2 == 0 {
                continue;
            }
            for h in Gen::ALL {
                if h < g && h.is_odd() && other.exp(h) % 2 != 0 {
                    swaps += 1;
                }
            }
        }
        let mut out = *self;
        for i in 0..NGEN {
            out.exps[i] += other.exps[i];
        }
        let (sign, m) = out.normalize()?;
        Some((if swaps % 2 == 0 { sign } else { -sign }, m))
    }

    /// Parses a product like `a35*w^11*beta` in any factor order and returns
    /// the signed normal form. `1` is the empty product.
    pub fn parse_signed(text: &str) -> Result<Option<(F3, Monomial)>, GradedError> {
        let text = text.trim();
        if text == "1" {
            return Ok(Some((F3::ONE, Monomial::one())));
        }
        let mut acc = (F3::ONE, Monomial::one());
        for factor in text.split('*') {
            let factor = factor.trim();
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => (n.trim(), parse_exponent(e)?),
                None => (factor, 1),
            };
            let g = Gen::from_name(name).ok_or_else(|| GradedError::UnknownGenerator(name.to_string()))?;
            if g.kind() != GenKind::InvertiblePolynomial && exp < 0 {
                return Err(GradedError::BadExponent(factor.to_string()));
            }
            let single = Monomial::one().with(g, exp);
            match acc.1.mul(&single) {
                Some((s, m)) => acc = (acc.0 * s, m),
                None => return Ok(None),
            }
        }
        Ok(Some(acc))
    }
}

fn parse_exponent(e: &str) -> Result<i32, GradedError> {
    let e = e.trim();
    let inner = e
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .or_else(|| e.strip_prefix('{').and_then(|x| x.strip_suffix('}')))
        .unwrap_or(e);
    inner.trim().parse().map_err(|_| GradedError::BadExponent(e.to_string()))
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (g, e) in self.factors() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses a canonical label. Non-canonical input is accepted only when its
/// normal form carries sign +1; use [`Monomial::parse_signed`] otherwise.
impl FromStr for Monomial {
    type Err = GradedError;

    fn from_str(s: &str) -> Result<Monomial, GradedError> {
        match Monomial::parse_signed(s)? {
            Some((sign, m)) if sign == F3::ONE => Ok(m),
            Some(_) => Err(GradedError::NegativeLabel(s.to_string())),
            None => Err(GradedError::ZeroMonomial(s.to_string())),
        }
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Monomial, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Finite linear combination of normalized monomials.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly<F> {
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> Poly<F> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn monomial(c: F, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(c, m);
        p
    }

    /// `c · g^k` with the relation hooks applied.
    pub fn gen_power(c: F, g: Gen, k: i32) -> Self {
        match Monomial::power(g, k) {
            Some((s, m)) => Self::monomial(c * lift(s), m),
            None => Self::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms.get(m).copied().unwrap_or_else(F::zero)
    }

    /// Adds `c·m`, normalizing `m` first.
    pub fn add_term(&mut self, c: F, m: Monomial) {
        let Some((s, m)) = m.normalize() else { return };
        let c = c * lift(s);
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(F::zero);
        *e = *e + c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Poly<F>) -> Poly<F> {
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(c, *m);
        }
        out
    }

    pub fn scale(&self, c: F) -> Poly<F> {
        let mut out = Self::zero();
        for (m, &d) in &self.terms {
            out.add_term(c * d, *m);
        }
        out
    }

    pub fn mul(&self, other: &Poly<F>) -> Poly<F> {
        let mut out = Self::zero();
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                if let Some((s, m)) = a.mul(b) {
                    out.add_term(ca * cb * lift(s), m);
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly<F> {
        let mut out = Poly::monomial(F::one(), Monomial::one());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Bidegree shared by all terms, or `None` if the polynomial is zero or
    /// inhomogeneous.
    pub fn bidegree(&self) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(Monomial::bidegree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| if c.is_one() { m.to_string() } else { format!("({c})*{m}") })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Embeds an F3 sign into any field.
pub fn lift<F: Field>(s: F3) -> F {
    match s.value() {
        0 => F::zero(),
        1 => F::one(),
        _ => -F::one(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(s: &str) -> Monomial {
        s.parse().unwrap()
    }

    #[test]
    fn stems_of_named_products() {
        let (sign, x) = Monomial::parse_signed("a35*w^11*beta").unwrap().unwrap();
        assert_eq!(x.stem(), 133);
        assert_eq!(sign, F3::MINUS_ONE);
        assert_eq!(x.to_string(), "beta*w*v2^5*a35");
        assert_eq!(Monomial::one().stem(), 0);
        let (_, y) = Monomial::parse_signed("zeta*a35*w^-7*beta^5").unwrap().unwrap();
        assert_eq!(y.stem(), 28);
    }

    #[test]
    fn relation_hooks() {
        let (s, x) = Monomial::power(Gen::W, 2).unwrap();
        assert_eq!((s, x), (F3::MINUS_ONE, m("v2")));
        let (s, x) = Monomial::power(Gen::V2h, 2).unwrap();
        assert_eq!((s, x), (F3::ONE, m("v2")));
        let (s, x) = Monomial::power(Gen::W, -1).unwrap();
        assert_eq!((s, x), (F3::MINUS_ONE, m("w*v2^-1")));
        assert!(Monomial::power(Gen::Alpha, 2).is_none());
    }

    #[test]
    fn koszul_signs() {
        let a = m("alpha");
        let z = m("zeta");
        let (s1, az) = a.mul(&z).unwrap();
        let (s2, za) = z.mul(&a).unwrap();
        assert_eq!(az, za);
        assert_eq!(s1, -s2);
        // even generators commute silently
        let (s, _) = m("beta").mul(&a).unwrap();
        assert_eq!(s, F3::ONE);
    }

    #[test]
    fn display_round_trip() {
        for text in ["1", "alpha*beta^2*w", "v2h*v2^-3*zeta*a35", "u^-4*x1*y1^2"] {
            assert_eq!(m(text).to_string(), text);
        }
        assert!("foo".parse::<Monomial>().is_err());
        assert!("beta^-1".parse::<Monomial>().is_err());
        assert!("alpha^2".parse::<Monomial>().is_err());
    }

    fn arb_monomial() -> impl Strategy<Value = Monomial> {
        (
            -20i32..20,
            0i32..2,
            0i32..2,
            0i32..5,
            -20i32..20,
            -20i32..20,
            -10i32..10,
            0i32..2,
            0i32..2,
        )
            .prop_map(|(u, x1, al, be, w, h, v, z, a)| {
                Monomial::one()
                    .with(Gen::U, u)
                    .with(Gen::X1, x1)
                    .with(Gen::Alpha, al)
                    .with(Gen::Beta, be)
                    .with(Gen::W, w)
                    .with(Gen::V2h, h)
                    .with(Gen::V2, v)
                    .with(Gen::Zeta, z)
                    .with(Gen::A35, a)
            })
    }

    fn signed_mul(a: Option<(F3, Monomial)>, b: &Monomial) -> Option<(F3, Monomial)> {
        let (s, x) = a?;
        let (t, y) = x.mul(b)?;
        Some((s * t, y))
    }

    proptest! {
        #[test]
        fn normalization_idempotent(x in arb_monomial()) {
            if let Some((s, n)) = x.normalize() {
                prop_assert_eq!(n.normalize(), Some((F3::ONE, n)));
                prop_assert_eq!(n.bidegree(), x.bidegree());
                prop_assert!(s != F3::ZERO);
            }
        }

        #[test]
        fn multiplication_associative(a in arb_monomial(), b in arb_monomial(), c in arb_monomial()) {
            let left = signed_mul(a.mul(&b), &c);
            let right = b.mul(&c).and_then(|(s, bc)| a.mul(&bc).map(|(t, x)| (s * t, x)));
            prop_assert_eq!(left, right);
        }

        #[test]
        fn w_squared_in_any_order(k in -12i32..12, j in -12i32..12) {
            // w^k · w^j agrees with w^(k+j) whichever way it is grouped
            let lhs = signed_mul(Monomial::power(Gen::W, k), &Monomial::power(Gen::W, j).unwrap().1)
                .map(|(s, x)| (s * Monomial::power(Gen::W, j).unwrap().0, x));
            prop_assert_eq!(lhs, Monomial::power(Gen::W, k + j));
        }

        #[test]
        fn display_parse_round_trip(x in arb_monomial()) {
            if let Some((_, n)) = x.normalize() {
                prop_assert_eq!(n.to_string().parse::<Monomial>().unwrap(), n);
            }
        }
    }
}
