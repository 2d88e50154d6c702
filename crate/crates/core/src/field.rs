//! Exact arithmetic in F3 and F9 = F3[ω]/(ω² − ω − 1).
//!
//! With this minimal polynomial ω itself is a primitive 8th root of unity
//! (ω⁴ = −1), so no discrete-log table is needed. F3 values are kept in the
//! balanced range {−1, 0, 1}.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Scalars the linear algebra and the spectral-sequence engine are generic over.
pub trait Field:
    Copy
    + Eq
    + Ord
    + std::hash::Hash
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Number of elements.
    const ORDER: u32;
    /// F3-dimension of the field.
    const DEGREE: usize;

    fn inv(self) -> Option<Self>;

    /// Coordinates over F3, length `DEGREE`.
    fn to_f3(self) -> Vec<F3>;
    fn from_f3(coords: &[F3]) -> Self;

    fn elements() -> Vec<Self>;

    fn pow(self, mut e: i64) -> Self {
        let mut base = if e < 0 {
            e = -e;
            self.inv().expect("negative power of zero")
        } else {
            self
        };
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

/// Which of the two fields a module is defined over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BaseField {
    F3,
    F9,
}

impl BaseField {
    pub fn degree(self) -> usize {
        match self {
            BaseField::F3 => 1,
            BaseField::F9 => 2,
        }
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::F3 => write!(f, "F3"),
            BaseField::F9 => write!(f, "F9"),
        }
    }
}

// ---------------------------------------------------------------------------
// F3

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct F3(i8);

impl F3 {
    pub const ZERO: F3 = F3(0);
    pub const ONE: F3 = F3(1);
    pub const MINUS_ONE: F3 = F3(-1);

    pub fn new(v: i64) -> F3 {
        let r = v.rem_euclid(3) as i8;
        F3(if r == 2 { -1 } else { r })
    }

    /// Balanced representative in {−1, 0, 1}.
    pub fn value(self) -> i8 {
        self.0
    }

    /// Representative in {0, 1, 2}.
    pub fn residue(self) -> u8 {
        self.0.rem_euclid(3) as u8
    }
}

impl fmt::Debug for F3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for F3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for F3 {
    type Output = F3;
    fn add(self, o: F3) -> F3 {
        F3::new((self.0 + o.0) as i64)
    }
}

impl Sub for F3 {
    type Output = F3;
    fn sub(self, o: F3) -> F3 {
        F3::new((self.0 - o.0) as i64)
    }
}

impl Mul for F3 {
    type Output = F3;
    fn mul(self, o: F3) -> F3 {
        F3(self.0 * o.0)
    }
}

impl Neg for F3 {
    type Output = F3;
    fn neg(self) -> F3 {
        F3(-self.0)
    }
}

impl AddAssign for F3 {
    fn add_assign(&mut self, o: F3) {
        *self = *self + o;
    }
}

impl SubAssign for F3 {
    fn sub_assign(&mut self, o: F3) {
        *self = *self - o;
    }
}

impl MulAssign for F3 {
    fn mul_assign(&mut self, o: F3) {
        *self = *self * o;
    }
}

impl Zero for F3 {
    fn zero() -> F3 {
        F3(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl One for F3 {
    fn one() -> F3 {
        F3(1)
    }
}

impl Field for F3 {
    const ORDER: u32 = 3;
    const DEGREE: usize = 1;

    fn inv(self) -> Option<F3> {
        // ±1 are self-inverse
        (self.0 != 0).then_some(self)
    }

    fn to_f3(self) -> Vec<F3> {
        vec![self]
    }

    fn from_f3(coords: &[F3]) -> F3 {
        coords[0]
    }

    fn elements() -> Vec<F3> {
        vec![F3(0), F3(1), F3(-1)]
    }
}

// ---------------------------------------------------------------------------
// F9

/// `c0 + c1·ω` with ω² = ω + 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct F9 {
    pub c0: F3,
    pub c1: F3,
}

impl F9 {
    pub const ZERO: F9 = F9 { c0: F3::ZERO, c1: F3::ZERO };
    pub const ONE: F9 = F9 { c0: F3::ONE, c1: F3::ZERO };
    pub const OMEGA: F9 = F9 { c0: F3::ZERO, c1: F3::ONE };

    pub fn new(c0: i64, c1: i64) -> F9 {
        F9 { c0: F3::new(c0), c1: F3::new(c1) }
    }

    pub fn from_f3(c: F3) -> F9 {
        F9 { c0: c, c1: F3::ZERO }
    }

    /// ωᵏ for any integer k.
    pub fn omega_pow(k: i64) -> F9 {
        F9::OMEGA.pow(k.rem_euclid(8))
    }

    /// x ↦ x³, the generator of Gal(F9/F3).
    pub fn frobenius(self) -> F9 {
        // (c0 + c1ω)³ = c0 + c1ω³ and ω³ = 2ω + 1 = 1 − ω
        F9 { c0: self.c0 + self.c1, c1: -self.c1 }
    }

    /// x · φ(x), which always lies in F3.
    pub fn norm(self) -> F3 {
        let n = self * self.frobenius();
        debug_assert!(n.c1.is_zero());
        n.c0
    }

    pub fn is_in_f3(self) -> bool {
        self.c1.is_zero()
    }

    /// Smallest k ≥ 1 with xᵏ = 1.
    pub fn multiplicative_order(self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let mut acc = self;
        let mut k = 1;
        while acc != F9::ONE {
            acc *= self;
            k += 1;
        }
        Some(k)
    }

    pub fn units() -> Vec<F9> {
        (0..8).map(F9::omega_pow).collect()
    }
}

impl fmt::Debug for F9 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for F9 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.c0.value(), self.c1.value()) {
            (a, 0) => write!(f, "{a}"),
            (0, 1) => write!(f, "w"),
            (0, -1) => write!(f, "-w"),
            (a, 1) => write!(f, "{a}+w"),
            (a, _) => write!(f, "{a}-w"),
        }
    }
}

impl Add for F9 {
    type Output = F9;
    fn add(self, o: F9) -> F9 {
        F9 { c0: self.c0 + o.c0, c1: self.c1 + o.c1 }
    }
}

impl Sub for F9 {
    type Output = F9;
    fn sub(self, o: F9) -> F9 {
        F9 { c0: self.c0 - o.c0, c1: self.c1 - o.c1 }
    }
}

impl Mul for F9 {
    type Output = F9;
    fn mul(self, o: F9) -> F9 {
        // (a + bω)(c + dω) = ac + (ad + bc)ω + bd(ω + 1)
        let bd = self.c1 * o.c1;
        F9 {
            c0: self.c0 * o.c0 + bd,
            c1: self.c0 * o.c1 + self.c1 * o.c0 + bd,
        }
    }
}

impl Neg for F9 {
    type Output = F9;
    fn neg(self) -> F9 {
        F9 { c0: -self.c0, c1: -self.c1 }
    }
}

impl AddAssign for F9 {
    fn add_assign(&mut self, o: F9) {
        *self = *self + o;
    }
}

impl SubAssign for F9 {
    fn sub_assign(&mut self, o: F9) {
        *self = *self - o;
    }
}

impl MulAssign for F9 {
    fn mul_assign(&mut self, o: F9) {
        *self = *self * o;
    }
}

impl From<F3> for F9 {
    fn from(c: F3) -> F9 {
        F9::from_f3(c)
    }
}

impl Zero for F9 {
    fn zero() -> F9 {
        F9::ZERO
    }
    fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }
}

impl One for F9 {
    fn one() -> F9 {
        F9::ONE
    }
}

impl Field for F9 {
    const ORDER: u32 = 9;
    const DEGREE: usize = 2;

    fn inv(self) -> Option<F9> {
        if self.is_zero() {
            return None;
        }
        // x⁻¹ = φ(x) / N(x) and N(x) = ±1
        Some(self.frobenius() * F9::from_f3(self.norm()))
    }

    fn to_f3(self) -> Vec<F3> {
        vec![self.c0, self.c1]
    }

    fn from_f3(coords: &[F3]) -> F9 {
        F9 { c0: coords[0], c1: coords[1] }
    }

    fn elements() -> Vec<F9> {
        let mut out = Vec::with_capacity(9);
        for a in F3::elements() {
            for b in F3::elements() {
                out.push(F9 { c0: a, c1: b });
            }
        }
        out
    }
}
