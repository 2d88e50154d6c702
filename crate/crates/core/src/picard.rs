//! Arithmetic in the exotic Picard group κ₂ ≅ (Z/3)² and the bookkeeping of
//! suspensions of V(1) modulo its 144-periodicity.
//!
//! κ₂ is written in the basis {P, Q}: P is the element with
//! P ∧ E^hG24 ≃ Σ⁴⁸ E^hG24 and P ∧ V(1) ≃ Σ⁴⁸ V(1); Q is a truly exotic
//! generator (invisible to G24). Neither is constructed; only these
//! numerical behaviours are encoded.

use std::fmt;

use serde::Serialize;

use crate::field::{Field, F9};

/// Period of V(1) in the K(2)-local category.
pub const V1_PERIOD: i32 = 144;
/// Period of E^hG24 ∧ V(1).
pub const G24_PERIOD: i32 = 72;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PicardError {
    #[error("a word with Q-exponent {0} is not a suspension of V(1): its smash with V(1) is not free over Λ(ζ)")]
    NotASuspension(u8),
    #[error("bad exotic class `{0}`; expected `a,b` with a, b in 0..3")]
    Parse(String),
}

/// P^a ∧ Q^b.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ExoticClass {
    pub a: u8,
    pub b: u8,
}

impl ExoticClass {
    pub const TRIVIAL: ExoticClass = ExoticClass { a: 0, b: 0 };
    pub const P: ExoticClass = ExoticClass { a: 1, b: 0 };
    pub const Q: ExoticClass = ExoticClass { a: 0, b: 1 };

    pub fn new(a: i64, b: i64) -> ExoticClass {
        ExoticClass { a: a.rem_euclid(3) as u8, b: b.rem_euclid(3) as u8 }
    }

    pub fn all() -> impl Iterator<Item = ExoticClass> {
        (0..3).flat_map(|a| (0..3).map(move |b| ExoticClass::new(a, b)))
    }

    pub fn is_trivial(self) -> bool {
        self == ExoticClass::TRIVIAL
    }

    /// Invisible to E^hG24.
    pub fn is_truly_exotic(self) -> bool {
        self.a == 0
    }

    pub fn smash(self, other: ExoticClass) -> ExoticClass {
        ExoticClass::new(i64::from(self.a + other.a), i64::from(self.b + other.b))
    }

    pub fn inverse(self) -> ExoticClass {
        ExoticClass::new(-i64::from(self.a), -i64::from(self.b))
    }

    /// X ∧ E^hG24 ≃ Σ^k E^hG24, with k mod 72.
    pub fn g24_shift(self) -> i32 {
        (48 * i32::from(self.a)).rem_euclid(G24_PERIOD)
    }
}

impl fmt::Display for ExoticClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |name: &str, e: u8| match e {
            0 => None,
            1 => Some(name.to_string()),
            e => Some(format!("{name}^{e}")),
        };
        let parts: Vec<String> = [part("P", self.a), part("Q", self.b)].into_iter().flatten().collect();
        if parts.is_empty() {
            f.write_str("S^0")
        } else {
            f.write_str(&parts.join(" ^ "))
        }
    }
}

impl std::str::FromStr for ExoticClass {
    type Err = PicardError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        match s.trim() {
            "P" => return Ok(ExoticClass::P),
            "Q" => return Ok(ExoticClass::Q),
            "1" | "S^0" => return Ok(ExoticClass::TRIVIAL),
            _ => {}
        }
        let (a, b) = t.split_once(',').ok_or_else(|| PicardError::Parse(s.into()))?;
        let parse = |x: &str| x.trim().parse::<i64>().map_err(|_| PicardError::Parse(s.into()));
        Ok(ExoticClass::new(parse(a)?, parse(b)?))
    }
}

/// S^m ∧ S⁰⟨det⟩^d ∧ P^a ∧ Q^b.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PicardWord {
    pub m: i32,
    pub d: i32,
    pub exotic: ExoticClass,
}

impl PicardWord {
    pub fn new(m: i32, d: i32, a: i64, b: i64) -> PicardWord {
        PicardWord { m, d, exotic: ExoticClass::new(a, b) }
    }

    pub fn smash(self, other: PicardWord) -> PicardWord {
        PicardWord { m: self.m + other.m, d: self.d + other.d, exotic: self.exotic.smash(other.exotic) }
    }

    /// word ∧ V(1) ≃ Σ^k V(1), with k mod 144.
    pub fn v1_shift(self) -> Result<i32, PicardError> {
        if self.exotic.b != 0 {
            return Err(PicardError::NotASuspension(self.exotic.b));
        }
        Ok((self.m + 72 * self.d + 48 * i32::from(self.exotic.a)).rem_euclid(V1_PERIOD))
    }
}

impl fmt::Display for PicardWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = vec![format!("S^{}", self.m)];
        match self.d {
            0 => {}
            1 => parts.push("S<det>".into()),
            d => parts.push(format!("S<det>^{d}")),
        }
        if !self.exotic.is_trivial() {
            parts.push(self.exotic.to_string());
        }
        f.write_str(&parts.join(" ^ "))
    }
}

/// Representative of `k` mod `n` in (−n/2, n/2].
pub fn balanced_mod(k: i32, n: i32) -> i32 {
    let r = k.rem_euclid(n);
    if r > n / 2 {
        r - n
    } else {
        r
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Candidate {
    pub exotic: ExoticClass,
    /// None when excluded because Q^b ∧ V(1) is not Λ(ζ)-free.
    pub shift: Option<i32>,
    pub accepted: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Solution {
    pub word: PicardWord,
    pub target_shift: i32,
    pub candidates: Vec<Candidate>,
}

impl Solution {
    pub fn equation(&self) -> String {
        let a = i32::from(self.word.exotic.a);
        format!(
            "48·{a}+{} ≡ {} (mod {V1_PERIOD})",
            self.word.m + 72 * self.word.d,
            self.target_shift
        )
    }
}

/// Finds I₂ = S² ∧ S⁰⟨det⟩ ∧ P^a ∧ Q^b from I₂ ∧ V(1) ≃ Σ⁻²² V(1): Q-parts are
/// excluded because the dual of V(1) is Λ(ζ)-free, and the remaining three
/// candidates are tested against the shift.
pub fn solve_brown_comenetz() -> Solution {
    let target_shift: i32 = -22;
    let candidates: Vec<Candidate> = ExoticClass::all()
        .map(|x| {
            let shift = PicardWord { m: 2, d: 1, exotic: x }.v1_shift().ok();
            let accepted = shift.is_some_and(|s| s == target_shift.rem_euclid(V1_PERIOD));
            Candidate { exotic: x, shift, accepted }
        })
        .collect();
    let accepted: Vec<&Candidate> = candidates.iter().filter(|c| c.accepted).collect();
    assert_eq!(accepted.len(), 1, "the shift equation must have a unique solution");
    Solution { word: PicardWord { m: 2, d: 1, exotic: accepted[0].exotic }, target_shift, candidates }
}

#[derive(Clone, Debug, Serialize)]
pub struct DetReport {
    pub units: usize,
    pub exponents: Vec<i32>,
    /// (unit, exponent) pairs where a^e · a^4 ≠ 1.
    pub failures: Vec<(String, i32)>,
}

impl DetReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// With the determinant twist, g(u^e) = a^e · a^4 · u^e for g acting on u by
/// a; the classes u^e with e ≡ 4 mod 8 are invariant.
pub fn det_twist_invariance_check(units: &[F9], exponents: &[i32]) -> DetReport {
    let mut failures = Vec::new();
    for &a in units {
        for &e in exponents {
            if a.pow(i64::from(e)) * a.pow(4) != F9::ONE {
                failures.push((a.to_string(), e));
            }
        }
    }
    DetReport { units: units.len(), exponents: exponents.to_vec(), failures }
}

/// All e ≡ 4 mod 8 in [lo, hi].
pub fn det_exponents(lo: i32, hi: i32) -> Vec<i32> {
    (lo..=hi).filter(|e| e.rem_euclid(8) == 4).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn class() -> impl Strategy<Value = ExoticClass> {
        (0i64..3, 0i64..3).prop_map(|(a, b)| ExoticClass::new(a, b))
    }

    #[test]
    fn smash_examples() {
        assert!(ExoticClass::new(1, 2).smash(ExoticClass::new(2, 1)).is_trivial());
        let p = ExoticClass::P;
        assert!(p.smash(p).smash(p).is_trivial());
        assert_eq!(ExoticClass::Q.smash(ExoticClass::TRIVIAL), ExoticClass::Q);
    }

    #[test]
    fn g24_shift_kernel_is_truly_exotic() {
        assert_eq!(ExoticClass::P.g24_shift(), 48);
        for x in ExoticClass::all() {
            assert_eq!(x.g24_shift() == 0, x.is_truly_exotic());
        }
    }

    #[test]
    fn v1_shifts() {
        assert_eq!(PicardWord::new(2, 1, 1, 0).v1_shift(), Ok(122));
        assert_eq!(balanced_mod(122, 144), -22);
        assert_eq!(PicardWord::new(0, 0, 0, 0).v1_shift(), Ok(0));
        assert_eq!(PicardWord::new(0, 1, 0, 0).v1_shift(), Ok(72));
        assert_eq!(PicardWord::new(144, 0, 0, 0).v1_shift(), Ok(0));
        assert!(matches!(PicardWord::new(0, 0, 0, 2).v1_shift(), Err(PicardError::NotASuspension(2))));
    }

    #[test]
    fn solver() {
        let s = solve_brown_comenetz();
        assert_eq!(s.word, PicardWord::new(2, 1, 1, 0));
        assert_eq!(s.candidates.len(), 9);
        assert_eq!(s.candidates.iter().filter(|c| c.shift.is_none()).count(), 6);
        let shifts: Vec<i32> = s.candidates.iter().filter_map(|c| c.shift).collect();
        assert_eq!(shifts, vec![74, 122, 26]);
        assert_eq!(s.word.to_string(), "S^2 ^ S<det> ^ P");
        assert_eq!(s.equation(), "48·1+74 ≡ -22 (mod 144)");
        // −22 = −28 + 6
        assert_eq!(balanced_mod(s.word.v1_shift().unwrap(), V1_PERIOD), -28 + 6);
    }

    #[test]
    fn det_twist() {
        let r = det_twist_invariance_check(&F9::units(), &det_exponents(-36, 36));
        assert!(r.ok());
        assert_eq!((r.units, r.exponents.len()), (8, 10));
        let bad = det_twist_invariance_check(&[F9::OMEGA], &[2]);
        assert!(!bad.ok());
    }

    #[test]
    fn parse_classes() {
        assert_eq!("P".parse::<ExoticClass>().unwrap(), ExoticClass::P);
        assert_eq!("(2, 4)".parse::<ExoticClass>().unwrap(), ExoticClass::new(2, 1));
        assert!("x".parse::<ExoticClass>().is_err());
    }

    proptest! {
        #[test]
        fn g24_shift_is_additive(x in class(), y in class()) {
            prop_assert_eq!(x.smash(y).g24_shift(), (x.g24_shift() + y.g24_shift()) % G24_PERIOD);
        }

        #[test]
        fn v1_shift_is_additive(m1 in -300i32..300, d1 in -3i32..3, a1 in 0i64..3, m2 in -300i32..300, d2 in -3i32..3, a2 in 0i64..3) {
            let (x, y) = (PicardWord::new(m1, d1, a1, 0), PicardWord::new(m2, d2, a2, 0));
            prop_assert_eq!(x.smash(y).v1_shift().unwrap(), (x.v1_shift().unwrap() + y.v1_shift().unwrap()) % V1_PERIOD);
        }
    }
}
