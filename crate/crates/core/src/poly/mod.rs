//! Sparse polynomials in the commuting symbols `h, α, β, γ`.
//!
//! Half-degree grading: `h, α ↦ 1`, `β ↦ 2`, `γ ↦ 3`. Monomials are ordered
//! lexicographically on `(e_h, e_α, e_β, e_γ)`; that order is also the
//! canonical serialization order.

mod coefficient;
mod matrix;
mod univariate;

pub use coefficient::{Coefficient, FieldTag};
pub use matrix::{det_bareiss, det_minor_expansion, DetAlgorithm, DetRing, PolyMatrix};
pub use univariate::{interpolate, root_multiplicity, synthetic_division};

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{ModN, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("coefficient field mismatch: {0:?} vs {1:?}")]
    FieldMismatch(FieldTag, FieldTag),
    #[error("polynomial is not exactly divisible")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("expected a polynomial in {0} only")]
    NotUnivariate(Symbol),
    #[error("root multiplicity of the zero polynomial is undefined")]
    ZeroPolynomial,
    #[error("malformed canonical polynomial: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    H,
    Alpha,
    Beta,
    Gamma,
}

impl Symbol {
    pub const ALL: [Symbol; 4] = [Symbol::H, Symbol::Alpha, Symbol::Beta, Symbol::Gamma];

    fn index(self) -> usize {
        self as usize
    }

    pub fn weight(self) -> u32 {
        match self {
            Symbol::H | Symbol::Alpha => 1,
            Symbol::Beta => 2,
            Symbol::Gamma => 3,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Symbol::H => "h",
            Symbol::Alpha => "α",
            Symbol::Beta => "β",
            Symbol::Gamma => "γ",
        })
    }
}

/// Exponent vector `(e_h, e_α, e_β, e_γ)`.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
pub struct Monomial(pub [u32; 4]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 4]);

    pub fn new(h: u32, alpha: u32, beta: u32, gamma: u32) -> Self {
        Monomial([h, alpha, beta, gamma])
    }

    pub fn power(sym: Symbol, e: u32) -> Self {
        let mut m = Monomial::ONE;
        m.0[sym.index()] = e;
        m
    }

    pub fn exp(&self, sym: Symbol) -> u32 {
        self.0[sym.index()]
    }

    pub fn half_degree(&self) -> u32 {
        Symbol::ALL.iter().map(|&s| s.weight() * self.exp(s)).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = [0; 4];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[i] + other.0[i];
        }
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = [0; 4];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[i].checked_sub(other.0[i])?;
        }
        Some(Monomial(out))
    }

    pub fn without(&self, sym: Symbol) -> Monomial {
        let mut m = *self;
        m.0[sym.index()] = 0;
        m
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for s in Symbol::ALL {
            let e = self.exp(s);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Exact sparse polynomial. No zero coefficient is ever stored.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedPoly<C: Coefficient> {
    field: C::Field,
    terms: BTreeMap<Monomial, C>,
}

pub type QPoly = GradedPoly<Rational>;
pub type FpPoly = GradedPoly<ModN>;

impl<C: Coefficient> GradedPoly<C> {
    pub fn zero(field: C::Field) -> Self {
        GradedPoly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: C::Field) -> Self {
        Self::constant(C::one_in(field))
    }

    pub fn constant(c: C) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn term(mono: Monomial, c: C) -> Self {
        let mut p = Self::zero(c.field_of());
        if !c.is_zero() {
            p.terms.insert(mono, c);
        }
        p
    }

    pub fn var(sym: Symbol, field: C::Field) -> Self {
        Self::term(Monomial::power(sym, 1), C::one_in(field))
    }

    pub fn from_int(n: i64, field: C::Field) -> Self {
        Self::constant(C::from_int(field, n))
    }

    /// Builds `Σ coeffs[j] · sym^j`.
    pub fn from_univariate(sym: Symbol, coeffs: &[C], field: C::Field) -> Self {
        let mut p = Self::zero(field);
        for (j, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                p.terms.insert(Monomial::power(sym, j as u32), c.clone());
            }
        }
        p
    }

    /// Collects `(monomial, coefficient)` pairs, dropping zeros and merging repeats.
    pub fn from_terms(field: C::Field, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero(field);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn field(&self) -> C::Field {
        self.field
    }

    pub fn tag(&self) -> FieldTag {
        C::tag(self.field)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (lexicographic) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coefficient_of(&self, mono: &Monomial) -> C {
        self.terms
            .get(mono)
            .cloned()
            .unwrap_or_else(|| C::zero_in(self.field))
    }

    /// Largest exponent of `sym`, `None` for the zero polynomial.
    pub fn degree_in(&self, sym: Symbol) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(sym)).max()
    }

    /// True when every monomial has half-degree `d` (the zero polynomial is homogeneous of every degree).
    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.half_degree() == d)
    }

    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.keys().next()?.half_degree();
        self.is_homogeneous(d).then_some(d)
    }

    /// True when no monomial involves a symbol other than `sym`.
    pub fn is_univariate_in(&self, sym: Symbol) -> bool {
        self.terms.keys().all(|m| m.without(sym) == Monomial::ONE)
    }

    pub fn involves(&self, sym: Symbol) -> bool {
        self.terms.keys().any(|m| m.exp(sym) > 0)
    }

    /// Dense coefficient list in `sym`, lowest power first.
    pub fn univariate_coeffs(&self, sym: Symbol) -> Result<Vec<C>, PolyError> {
        if !self.is_univariate_in(sym) {
            return Err(PolyError::NotUnivariate(sym));
        }
        let deg = self.degree_in(sym).map_or(0, |d| d as usize + 1);
        let mut out = vec![C::zero_in(self.field); deg];
        for (m, c) in &self.terms {
            out[m.exp(sym) as usize] = c.clone();
        }
        Ok(out)
    }

    fn add_term(&mut self, mono: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().plus(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_field(&self, other: &Self) -> Result<(), PolyError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(PolyError::FieldMismatch(self.tag(), other.tag()))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_field(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_field(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.negated());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_field(other)?;
        let mut out = Self::zero(self.field);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.times(c2));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.field);
        }
        GradedPoly {
            field: self.field,
            terms: self.terms.iter().map(|(m, v)| (*m, v.times(c))).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Self {
        GradedPoly {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.mul(mono), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(self.field), |acc, _| &acc * self)
    }

    /// Replaces `sym` by the constant `value`.
    pub fn substitute(&self, sym: Symbol, value: &C) -> Result<Self, PolyError> {
        if value.field_of() != self.field {
            return Err(PolyError::FieldMismatch(
                self.tag(),
                C::tag(value.field_of()),
            ));
        }
        let mut powers: Vec<C> = vec![C::one_in(self.field)];
        let mut out = Self::zero(self.field);
        for (m, c) in &self.terms {
            let e = m.exp(sym) as usize;
            while powers.len() <= e {
                let next = powers.last().expect("nonempty").times(value);
                powers.push(next);
            }
            out.add_term(m.without(sym), c.times(&powers[e]));
        }
        Ok(out)
    }

    /// Substitutes every symbol, yielding a scalar.
    pub fn evaluate(&self, point: [&C; 4]) -> Result<C, PolyError> {
        let mut p = self.clone();
        for (s, v) in Symbol::ALL.iter().zip(point) {
            p = p.substitute(*s, v)?;
        }
        Ok(p.coefficient_of(&Monomial::ONE))
    }

    /// Keeps only the terms whose monomial satisfies `keep`.
    pub fn filter_terms(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Self {
        GradedPoly {
            field: self.field,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    fn leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    /// Exact division; fails unless `divisor` divides `self` in the polynomial ring.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, PolyError> {
        self.check_field(divisor)?;
        let (lead_m, lead_c) = divisor.leading().ok_or(PolyError::DivisionByZero)?;
        let lead_inv = lead_c.inverse().ok_or(PolyError::NotDivisible)?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.field);
        while let Some((m, c)) = rem.leading() {
            let qm = m.checked_div(lead_m).ok_or(PolyError::NotDivisible)?;
            let qc = c.times(&lead_inv);
            for (dm, dc) in &divisor.terms {
                rem.add_term(dm.mul(&qm), dc.times(&qc).negated());
            }
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// Canonical wire form: `[{"e":[e_h,e_α,e_β,e_γ],"c":"..."}, ...]` in monomial order.
    pub fn to_canonical(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .map(|(m, c)| TermJson {
                e: m.0,
                c: c.to_canonical(),
            })
            .collect()
    }

    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(&self.to_canonical()).expect("canonical poly serializes")
    }

    pub fn from_canonical(field: C::Field, terms: &[TermJson]) -> Result<Self, PolyError> {
        let mut p = Self::zero(field);
        let mut last: Option<Monomial> = None;
        for t in terms {
            let m = Monomial(t.e);
            if last.is_some_and(|l| l >= m) {
                return Err(PolyError::Malformed("terms out of canonical order".into()));
            }
            last = Some(m);
            let c = C::parse_canonical(field, &t.c)?;
            if c.is_zero() {
                return Err(PolyError::Malformed("stored zero coefficient".into()));
            }
            p.terms.insert(m, c);
        }
        Ok(p)
    }
}

/// One term of the canonical JSON encoding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub e: [u32; 4],
    pub c: String,
}

impl QPoly {
    /// Rational-coefficient zero polynomial.
    pub fn q_zero() -> Self {
        Self::zero(())
    }

    pub fn q_var(sym: Symbol) -> Self {
        Self::var(sym, ())
    }

    pub fn q_const(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl<C: Coefficient> fmt::Display for GradedPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if *m == Monomial::ONE {
                write!(f, "{}", c.to_canonical())?;
            } else {
                write!(f, "({})*{}", c.to_canonical(), m)?;
            }
        }
        Ok(())
    }
}

// Operator forms panic on a field mismatch; use the `try_*` methods when mixing is possible.
impl<C: Coefficient> Add for &GradedPoly<C> {
    type Output = GradedPoly<C>;
    fn add(self, rhs: Self) -> GradedPoly<C> {
        self.try_add(rhs).expect("polynomial addition")
    }
}

impl<C: Coefficient> Sub for &GradedPoly<C> {
    type Output = GradedPoly<C>;
    fn sub(self, rhs: Self) -> GradedPoly<C> {
        self.try_sub(rhs).expect("polynomial subtraction")
    }
}

impl<C: Coefficient> Mul for &GradedPoly<C> {
    type Output = GradedPoly<C>;
    fn mul(self, rhs: Self) -> GradedPoly<C> {
        self.try_mul(rhs).expect("polynomial multiplication")
    }
}

impl<C: Coefficient> Neg for &GradedPoly<C> {
    type Output = GradedPoly<C>;
    fn neg(self) -> GradedPoly<C> {
        GradedPoly {
            field: self.field,
            terms: self.terms.iter().map(|(m, c)| (*m, c.negated())).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_rational, Modulus};

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn h() -> QPoly {
        QPoly::q_var(Symbol::H)
    }
    fn beta() -> QPoly {
        QPoly::q_var(Symbol::Beta)
    }
    fn gamma() -> QPoly {
        QPoly::q_var(Symbol::Gamma)
    }

    #[test]
    fn substitution_and_coefficients() {
        let p = &(&beta() * &beta()) - &QPoly::q_const(q("4"));
        assert!(p.substitute(Symbol::Beta, &q("2")).unwrap().is_zero());

        // h^3/6 - βh/6 + γ/3
        let p2 = &(&h().pow(3).scale(&q("1/6")) - &(&beta() * &h()).scale(&q("1/6")))
            + &gamma().scale(&q("1/3"));
        assert_eq!(p2.coefficient_of(&Monomial::new(1, 0, 1, 0)), q("-1/6"));
        assert!(p2.is_homogeneous(3));

        let p3 = QPoly::from_univariate(Symbol::Beta, &[q("1/360"), q("-1/72"), q("1/90")], ());
        assert_eq!(p3.degree_in(Symbol::Beta), Some(2));
        assert_eq!(QPoly::q_zero().degree_in(Symbol::Beta), None);
    }

    #[test]
    fn field_mismatch_is_reported() {
        let m7 = Modulus::new(7).unwrap();
        let m11 = Modulus::new(11).unwrap();
        let a = FpPoly::var(Symbol::Beta, m7);
        let b = FpPoly::var(Symbol::Beta, m11);
        assert!(matches!(a.try_add(&b), Err(PolyError::FieldMismatch(..))));
        assert!(matches!(
            a.substitute(Symbol::Beta, &ModN::new(1, m11)),
            Err(PolyError::FieldMismatch(..))
        ));
    }

    #[test]
    fn exact_division() {
        let x = &beta() - &QPoly::q_const(q("1"));
        let y = &(&h() * &h()) + &(&gamma() * &beta());
        let prod = &x * &y;
        assert_eq!(prod.div_exact(&x).unwrap(), y);
        assert_eq!(prod.div_exact(&y).unwrap(), x);
        assert_eq!(
            (&prod + &QPoly::q_const(q("1"))).div_exact(&x),
            Err(PolyError::NotDivisible)
        );
        assert_eq!(
            x.div_exact(&QPoly::q_zero()),
            Err(PolyError::DivisionByZero)
        );
    }

    #[test]
    fn canonical_json_is_ordered_and_parses() {
        let p = &(&h().pow(3).scale(&q("1/6")) - &(&beta() * &h()).scale(&q("1/6")))
            + &gamma().scale(&q("1/3"));
        let json = p.to_canonical_json();
        assert_eq!(
            json,
            r#"[{"e":[0,0,0,1],"c":"1/3"},{"e":[1,0,1,0],"c":"-1/6"},{"e":[3,0,0,0],"c":"1/6"}]"#
        );
        let back: Vec<TermJson> = serde_json::from_str(&json).unwrap();
        assert_eq!(QPoly::from_canonical((), &back).unwrap(), p);
        let mut swapped = back.clone();
        swapped.swap(0, 1);
        assert!(QPoly::from_canonical((), &swapped).is_err());
    }

    #[test]
    fn homogeneity_of_products() {
        let a = &(&h() * &beta()) + &gamma();
        let b = &(&h() * &h()) + &beta();
        assert!(a.is_homogeneous(3) && b.is_homogeneous(2));
        assert!((&a * &b).is_homogeneous(5));
    }
}
