//! Commutative semiring scalars: booleans, arbitrary-precision naturals,
//! and arbitrary-precision integers. Arithmetic is exact; equality is
//! structural.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision natural numbers.
pub type Nat = num_bigint::BigUint;

/// Arbitrary-precision integers.
pub type Int = num_bigint::BigInt;

/// A commutative semiring: both `add` and `mul` are commutative monoids,
/// `mul` distributes over `add`, and `zero` annihilates `mul`.
pub trait Semiring:
    Clone + Eq + Ord + std::hash::Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    /// Name used by text formats to select the instance.
    const NAME: &'static str;

    /// Additive unit.
    fn zero() -> Self;

    /// Multiplicative unit.
    fn one() -> Self;

    /// Addition.
    fn add(&self, rhs: &Self) -> Self;

    /// Multiplication.
    fn mul(&self, rhs: &Self) -> Self;

    /// True for the additive unit.
    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    /// Parse a scalar token from a text format.
    fn parse(token: &str) -> Result<Self>;
}

/// Sum of finitely many values; the empty sum is `zero`. Commutativity
/// makes the result independent of iteration order.
pub fn sum<S: Semiring>(values: impl IntoIterator<Item = S>) -> S {
    values
        .into_iter()
        .fold(S::zero(), |acc, v| acc.add(&v))
}

impl Semiring for bool {
    const NAME: &'static str = "bool";

    fn zero() -> Self {
        false
    }

    fn one() -> Self {
        true
    }

    fn add(&self, rhs: &Self) -> Self {
        *self || *rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        *self && *rhs
    }

    fn parse(token: &str) -> Result<Self> {
        match token {
            "0" | "false" => Ok(false),
            "1" | "true" => Ok(true),
            _ => Err(Error::Invalid(format!("invalid bool scalar `{token}`"))),
        }
    }
}

impl Semiring for Nat {
    const NAME: &'static str = "nat";

    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn parse(token: &str) -> Result<Self> {
        token
            .parse::<Nat>()
            .map_err(|_| Error::Invalid(format!("invalid nat scalar `{token}`")))
    }
}

impl Semiring for Int {
    const NAME: &'static str = "int";

    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn parse(token: &str) -> Result<Self> {
        token
            .parse::<Int>()
            .map_err(|_| Error::Invalid(format!("invalid int scalar `{token}`")))
    }
}

/// Runtime name of a semiring instance, for dispatching parsed artifacts
/// into the right monomorphized code.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum SemiringKind {
    /// Booleans with or/and.
    Bool,
    /// Unbounded naturals.
    Nat,
    /// Unbounded integers.
    Int,
}

impl SemiringKind {
    /// Look up an instance by its text-format name.
    pub fn from_name(name: &str) -> Result<SemiringKind> {
        match name {
            "bool" => Ok(SemiringKind::Bool),
            "nat" => Ok(SemiringKind::Nat),
            "int" => Ok(SemiringKind::Int),
            _ => Err(Error::Invalid(format!("unknown semiring `{name}`"))),
        }
    }

    /// The text-format name.
    pub fn name(self) -> &'static str {
        match self {
            SemiringKind::Bool => bool::NAME,
            SemiringKind::Nat => Nat::NAME,
            SemiringKind::Int => Int::NAME,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bool_is_idempotent() {
        assert_eq!(true.add(&true), true);
        assert_eq!(sum(vec![true, true, false]), true);
    }

    #[test]
    fn empty_sum_is_zero() {
        assert_eq!(sum(Vec::<Nat>::new()), <Nat as Semiring>::zero());
    }

    #[test]
    fn nat_sum_example() {
        let xs = [2u32, 3, 4].map(Nat::from);
        assert_eq!(sum(xs), Nat::from(9u32));
    }

    #[test]
    fn parse_and_display_roundtrip() {
        assert_eq!(bool::parse("true").unwrap(), true);
        assert_eq!(bool::parse("1").unwrap(), true);
        assert_eq!(bool::parse("0").unwrap(), false);
        assert!(bool::parse("2").is_err());
        assert_eq!(Nat::parse("12345678901234567890").unwrap().to_string(), "12345678901234567890");
        assert!(Nat::parse("-1").is_err());
        assert_eq!(Int::parse("-7").unwrap().to_string(), "-7");
        assert!(Int::parse("x").is_err());
    }

    #[test]
    fn kind_names_roundtrip() {
        for kind in [SemiringKind::Bool, SemiringKind::Nat, SemiringKind::Int] {
            assert_eq!(SemiringKind::from_name(kind.name()).unwrap(), kind);
        }
        assert!(SemiringKind::from_name("real").is_err());
    }

    fn laws_hold<S: Semiring>(samples: &[S]) {
        for a in samples {
            assert_eq!(a.add(&S::zero()), *a);
            assert_eq!(a.mul(&S::one()), *a);
            assert_eq!(a.mul(&S::zero()), S::zero());
            for b in samples {
                assert_eq!(a.add(b), b.add(a));
                assert_eq!(a.mul(b), b.mul(a));
                for c in samples {
                    assert_eq!(a.add(b).add(c), a.add(&b.add(c)));
                    assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
                    assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
                }
            }
        }
    }

    #[test]
    fn semiring_laws_on_small_carriers() {
        laws_hold(&[false, true]);
        laws_hold(&[0u32, 1, 2, 3, 7].map(Nat::from));
        laws_hold(&[-3i32, -1, 0, 1, 2, 5].map(Int::from));
    }
}
