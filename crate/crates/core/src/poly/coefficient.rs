use std::fmt::Debug;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::PolyError;
use crate::arith::{format_rational, parse_rational, ModN, Modulus, Rational};

/// Which field a polynomial's coefficients live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldTag {
    Rational,
    ModP(u64),
}

/// Exact field element usable as a polynomial coefficient.
///
/// `Field` carries whatever runtime context is needed to build constants
/// (nothing for the rationals, the modulus for a prime field).
pub trait Coefficient: Clone + PartialEq + Debug + Send + Sync + 'static {
    type Field: Copy + PartialEq + Debug + Send + Sync;

    fn field_of(&self) -> Self::Field;
    fn zero_in(field: Self::Field) -> Self;
    fn one_in(field: Self::Field) -> Self;
    fn from_int(field: Self::Field, n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn inverse(&self) -> Option<Self>;
    fn tag(field: Self::Field) -> FieldTag;
    fn to_canonical(&self) -> String;
    fn parse_canonical(field: Self::Field, s: &str) -> Result<Self, PolyError>;
}

impl Coefficient for Rational {
    type Field = ();

    fn field_of(&self) {}
    fn zero_in(_: ()) -> Self {
        Rational::zero()
    }
    fn one_in(_: ()) -> Self {
        Rational::one()
    }
    fn from_int(_: (), n: i64) -> Self {
        Rational::from_integer(n.into())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn tag(_: ()) -> FieldTag {
        FieldTag::Rational
    }
    fn to_canonical(&self) -> String {
        format_rational(self)
    }
    fn parse_canonical(_: (), s: &str) -> Result<Self, PolyError> {
        parse_rational(s).map_err(|e| PolyError::Malformed(e.to_string()))
    }
}

impl Coefficient for ModN {
    type Field = Modulus;

    fn field_of(&self) -> Modulus {
        self.modulus()
    }
    fn zero_in(m: Modulus) -> Self {
        ModN::zero(m)
    }
    fn one_in(m: Modulus) -> Self {
        ModN::one(m)
    }
    fn from_int(m: Modulus, n: i64) -> Self {
        ModN::from_i64(n, m)
    }
    fn is_zero(&self) -> bool {
        ModN::is_zero(*self)
    }
    fn plus(&self, other: &Self) -> Self {
        *self + *other
    }
    fn minus(&self, other: &Self) -> Self {
        *self - *other
    }
    fn times(&self, other: &Self) -> Self {
        *self * *other
    }
    fn negated(&self) -> Self {
        -*self
    }
    fn inverse(&self) -> Option<Self> {
        ModN::inverse(*self)
    }
    fn tag(m: Modulus) -> FieldTag {
        FieldTag::ModP(m.get())
    }
    fn to_canonical(&self) -> String {
        self.residue().to_string()
    }
    fn parse_canonical(m: Modulus, s: &str) -> Result<Self, PolyError> {
        let r: u64 = s
            .parse()
            .map_err(|_| PolyError::Malformed(format!("bad residue {s:?}")))?;
        if r >= m.get() {
            return Err(PolyError::Malformed(format!(
                "residue {r} not reduced mod {m}"
            )));
        }
        Ok(ModN::new(r, m))
    }
}
