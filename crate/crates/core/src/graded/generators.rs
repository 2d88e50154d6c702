use std::fmt;

use serde::{Deserialize, Serialize};

use crate::field::BaseField;

/// Every named generator the engine knows about, in the fixed monomial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Gen {
    U,
    X1,
    X2,
    Y1,
    Y2,
    A1,
    A2,
    Zeta1,
    Zeta2,
    Alpha,
    Beta,
    W,
    /// v2^{1/2}, kept atomic so exponents stay integral.
    V2h,
    V2,
    Zeta,
    A35,
    B0,
    B36,
    E8,
    E36,
    E44,
    E48,
}

pub const NGEN: usize = 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenKind {
    Polynomial,
    InvertiblePolynomial,
    Exterior,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorDecl {
    pub gen: Gen,
    pub name: &'static str,
    pub s: i32,
    pub t: i32,
    pub kind: GenKind,
    pub field: BaseField,
}

impl GeneratorDecl {
    pub fn stem(&self) -> i32 {
        self.t - self.s
    }
}

use BaseField::{F3, F9};
use GenKind::{Exterior, InvertiblePolynomial, Polynomial};

const fn decl(gen: Gen, name: &'static str, s: i32, t: i32, kind: GenKind, field: BaseField) -> GeneratorDecl {
    GeneratorDecl { gen, name, s, t, kind, field }
}

pub const GENERATORS: [GeneratorDecl; NGEN] = [
    decl(Gen::U, "u", 0, -2, InvertiblePolynomial, F9),
    decl(Gen::X1, "x1", 1, 0, Exterior, F9),
    decl(Gen::X2, "x2", 1, 0, Exterior, F9),
    decl(Gen::Y1, "y1", 2, 0, Polynomial, F9),
    decl(Gen::Y2, "y2", 2, 0, Polynomial, F9),
    decl(Gen::A1, "a1", 1, 0, Exterior, F9),
    decl(Gen::A2, "a2", 1, 0, Exterior, F9),
    decl(Gen::Zeta1, "zeta1", 1, 0, Exterior, F9),
    decl(Gen::Zeta2, "zeta2", 1, 0, Exterior, F9),
    decl(Gen::Alpha, "alpha", 1, 4, Exterior, F3),
    decl(Gen::Beta, "beta", 2, 12, Polynomial, F3),
    decl(Gen::W, "w", 0, 8, InvertiblePolynomial, F3),
    decl(Gen::V2h, "v2h", 0, 8, InvertiblePolynomial, F3),
    decl(Gen::V2, "v2", 0, 16, InvertiblePolynomial, F3),
    decl(Gen::Zeta, "zeta", 1, 0, Exterior, F3),
    decl(Gen::A35, "a35", 1, 36, Exterior, F3),
    decl(Gen::B0, "b0", 0, 0, Exterior, F3),
    decl(Gen::B36, "b36", 0, 36, Exterior, F3),
    decl(Gen::E8, "e8", 0, 8, Exterior, F3),
    decl(Gen::E36, "e36", 0, 36, Exterior, F3),
    decl(Gen::E44, "e44", 0, 44, Exterior, F3),
    decl(Gen::E48, "e48", 0, 48, Exterior, F3),
];

impl Gen {
    pub const ALL: [Gen; NGEN] = [
        Gen::U,
        Gen::X1,
        Gen::X2,
        Gen::Y1,
        Gen::Y2,
        Gen::A1,
        Gen::A2,
        Gen::Zeta1,
        Gen::Zeta2,
        Gen::Alpha,
        Gen::Beta,
        Gen::W,
        Gen::V2h,
        Gen::V2,
        Gen::Zeta,
        Gen::A35,
        Gen::B0,
        Gen::B36,
        Gen::E8,
        Gen::E36,
        Gen::E44,
        Gen::E48,
    ];

    pub const MARKERS: [Gen; 6] = [Gen::B0, Gen::B36, Gen::E8, Gen::E36, Gen::E44, Gen::E48];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn decl(self) -> &'static GeneratorDecl {
        &GENERATORS[self.index()]
    }

    pub fn name(self) -> &'static str {
        self.decl().name
    }

    pub fn bidegree(self) -> (i32, i32) {
        (self.decl().s, self.decl().t)
    }

    pub fn kind(self) -> GenKind {
        self.decl().kind
    }

    pub fn is_marker(self) -> bool {
        self >= Gen::B0
    }

    /// Odd cohomological degree, i.e. anticommutes with other odd generators.
    pub fn is_odd(self) -> bool {
        self.decl().s % 2 != 0
    }

    pub fn from_name(name: &str) -> Option<Gen> {
        let alias = match name {
            "α" => "alpha",
            "β" => "beta",
            "ζ" => "zeta",
            "ζ1" => "zeta1",
            "ζ2" => "zeta2",
            "v2^(1/2)" | "v2^{1/2}" => "v2h",
            other => other,
        };
        GENERATORS.iter().find(|d| d.name == alias).map(|d| d.gen)
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_is_in_enum_order() {
        for (i, d) in GENERATORS.iter().enumerate() {
            assert_eq!(d.gen.index(), i);
            assert_eq!(Gen::ALL[i], d.gen);
            assert_eq!(Gen::from_name(d.name), Some(d.gen));
        }
    }

    #[test]
    fn named_stems() {
        assert_eq!(Gen::Alpha.decl().stem(), 3);
        assert_eq!(Gen::Beta.decl().stem(), 10);
        assert_eq!(Gen::W.decl().stem(), 8);
        assert_eq!(Gen::V2.decl().stem(), 16);
        assert_eq!(Gen::Zeta.decl().stem(), -1);
        assert_eq!(Gen::A35.decl().stem(), 35);
    }
}
