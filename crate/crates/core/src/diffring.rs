//! The supported differential base rings.

use core::fmt;
use core::str::FromStr;

use crate::exactalg::Poly;

/// A differential ring whose constants form the field `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DiffRing {
    /// `Q[x]` with `d/dx`.
    PolyDx,
    /// `Q` with the zero derivation.
    ConstZero,
}

/// What is known about the constants `R^D` of a ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConstantsDescription {
    pub field_name: &'static str,
    pub is_field: bool,
    /// Every finitely generated projective `R^D`-module is free.
    pub projective_classes_trivial: bool,
}

impl DiffRing {
    pub fn derive(self, r: &Poly) -> Poly {
        match self {
            DiffRing::PolyDx => r.derivative(),
            DiffRing::ConstZero => Poly::zero(),
        }
    }

    /// Whether `r` is an element of this ring's underlying set.
    pub fn contains(self, r: &Poly) -> bool {
        match self {
            DiffRing::PolyDx => true,
            DiffRing::ConstZero => r.is_constant(),
        }
    }

    pub fn constants_description(self) -> ConstantsDescription {
        // Both rings have constants Q.
        ConstantsDescription { field_name: "Q", is_field: true, projective_classes_trivial: true }
    }

    pub fn tag(self) -> &'static str {
        match self {
            DiffRing::PolyDx => "poly_dx",
            DiffRing::ConstZero => "const_zero",
        }
    }
}

impl fmt::Display for DiffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownRing;

impl fmt::Display for UnknownRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("ring must be \"poly_dx\" or \"const_zero\"")
    }
}

impl FromStr for DiffRing {
    type Err = UnknownRing;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "poly_dx" => Ok(DiffRing::PolyDx),
            "const_zero" => Ok(DiffRing::ConstZero),
            _ => Err(UnknownRing),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivations() {
        assert_eq!(DiffRing::PolyDx.derive(&Poly::from_ints(&[1, 0, 1])), Poly::from_ints(&[0, 2]));
        assert_eq!(DiffRing::ConstZero.derive(&Poly::from_ints(&[5])), Poly::zero());
        assert_eq!(DiffRing::PolyDx.derive(&Poly::from_ints(&[7])), Poly::zero());
    }

    #[test]
    fn constants_are_always_a_field() {
        for ring in [DiffRing::PolyDx, DiffRing::ConstZero] {
            let d = ring.constants_description();
            assert!(d.is_field && d.projective_classes_trivial);
            assert_eq!(d.field_name, "Q");
            assert_eq!(ring.tag().parse::<DiffRing>(), Ok(ring));
        }
        assert!("q_x".parse::<DiffRing>().is_err());
    }
}
