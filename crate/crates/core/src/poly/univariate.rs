use super::{GradedPoly, PolyError, Symbol};
use crate::arith::Rational;
use num_traits::Zero;

/// Divides the dense polynomial `coeffs` (lowest power first) by `(x - r)`.
/// Returns the quotient and the remainder `p(r)`.
pub fn synthetic_division(coeffs: &[Rational], r: &Rational) -> (Vec<Rational>, Rational) {
    if coeffs.is_empty() {
        return (Vec::new(), Rational::zero());
    }
    let n = coeffs.len();
    let mut quotient = vec![Rational::zero(); n - 1];
    let mut carry = coeffs[n - 1].clone();
    for i in (0..n - 1).rev() {
        quotient[i] = carry.clone();
        carry = &coeffs[i] + &carry * r;
    }
    (quotient, carry)
}

/// Coefficients (lowest power first) of the unique polynomial of degree
/// `< xs.len()` through the given points, via Newton divided differences.
pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> Vec<Rational> {
    assert_eq!(xs.len(), ys.len(), "one value per node");
    let n = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let denom = &xs[i] - &xs[i - level];
            assert!(!denom.is_zero(), "interpolation nodes must be distinct");
            dd[i] = (&dd[i] - &dd[i - 1]) / denom;
        }
    }
    // Horner in the Newton basis
    let mut coeffs: Vec<Rational> = Vec::with_capacity(n);
    for i in (0..n).rev() {
        // coeffs *= (x - xs[i]); coeffs += dd[i]
        let mut next = vec![Rational::zero(); coeffs.len() + 1];
        for (j, c) in coeffs.iter().enumerate() {
            next[j + 1] += c;
            next[j] -= c * &xs[i];
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    coeffs
}

/// Largest `m` with `(β - r)^m` dividing `p`. The zero polynomial is rejected.
pub fn root_multiplicity(p: &GradedPoly<Rational>, r: &Rational) -> Result<u32, PolyError> {
    let mut coeffs = p.univariate_coeffs(Symbol::Beta)?;
    if coeffs.is_empty() {
        return Err(PolyError::ZeroPolynomial);
    }
    let mut m = 0;
    loop {
        let (q, rem) = synthetic_division(&coeffs, r);
        if !rem.is_zero() {
            return Ok(m);
        }
        m += 1;
        coeffs = q;
    }
}
