//! Classes on the Hecke correspondence as `f·h + f'` over the `α, β, γ` subalgebra,
//! intersection numbers on the moduli space, and rational pairings of `P_k`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{bernoulli, binomial, factorial, reduce_rational, Modulus, Rational};
use crate::giambelli::pk_full;
use crate::poly::{Monomial, QPoly, Symbol};
use crate::{Error, Result};

/// `f·h + f'` with `f, f'` free of `h`.
#[derive(Debug, Clone, PartialEq)]
pub struct HeckeClass {
    pub f: QPoly,
    pub fprime: QPoly,
}

impl HeckeClass {
    pub fn zero() -> Self {
        HeckeClass {
            f: QPoly::q_zero(),
            fprime: QPoly::q_zero(),
        }
    }

    /// Product, reduced with `h² = αh - (α² - β)/4`.
    pub fn mul(&self, other: &HeckeClass) -> HeckeClass {
        let alpha = QPoly::q_var(Symbol::Alpha);
        let ff = &self.f * &other.f;
        let f = &(&(&ff * &alpha) + &(&self.f * &other.fprime)) + &(&self.fprime * &other.f);
        let fprime = &(&self.fprime * &other.fprime) - &(&ff * &h_square_constant());
        HeckeClass { f, fprime }
    }

    pub fn add(&self, other: &HeckeClass) -> HeckeClass {
        HeckeClass {
            f: &self.f + &other.f,
            fprime: &self.fprime + &other.fprime,
        }
    }

    pub fn scale_by(&self, c: &QPoly) -> HeckeClass {
        HeckeClass {
            f: &self.f * c,
            fprime: &self.fprime * c,
        }
    }

    /// Back to a polynomial in `h, α, β, γ`.
    pub fn to_poly(&self) -> QPoly {
        &(&self.f * &QPoly::q_var(Symbol::H)) + &self.fprime
    }
}

/// `(α² - β)/4`.
fn h_square_constant() -> QPoly {
    let quarter = Rational::new(BigInt::one(), BigInt::from(4));
    QPoly::from_terms(
        (),
        [
            (Monomial::new(0, 2, 0, 0), quarter.clone()),
            (Monomial::new(0, 0, 1, 0), -quarter),
        ],
    )
}

/// `h^r` in the basis `1, h`, from the closed binomial expansion.
pub fn h_power(r: u32) -> HeckeClass {
    assert!(r >= 1, "h_power needs r >= 1");
    let scale = Rational::new(BigInt::one(), BigInt::one() << r as usize);
    let mut f = Vec::new();
    let mut fprime = Vec::new();
    for i in 0..=r {
        let c = Rational::from_integer(binomial(r as i64, i as i64)) * &scale;
        if i % 2 == 0 {
            fprime.push((Monomial::new(0, r - i, i / 2, 0), c));
        } else {
            // (2h - α) α^{r-i} β^{(i-1)/2}
            f.push((
                Monomial::new(0, r - i, (i - 1) / 2, 0),
                c.clone() * BigInt::from(2),
            ));
            fprime.push((Monomial::new(0, r - i + 1, (i - 1) / 2, 0), -c));
        }
    }
    HeckeClass {
        f: sum_terms(f),
        fprime: sum_terms(fprime),
    }
}

fn sum_terms(terms: Vec<(Monomial, Rational)>) -> QPoly {
    terms
        .into_iter()
        .fold(QPoly::q_zero(), |acc, (m, c)| &acc + &QPoly::term(m, c))
}

/// Rewrites every `h^r` through [`h_power`].
pub fn to_basis(q: &QPoly) -> HeckeClass {
    let mut powers: Vec<HeckeClass> = Vec::new();
    let mut out = HeckeClass::zero();
    for (mono, c) in q.terms() {
        let d = mono.exp(Symbol::H);
        let rest = QPoly::term(mono.without(Symbol::H), c.clone());
        if d == 0 {
            out.fprime = &out.fprime + &rest;
            continue;
        }
        while powers.len() < d as usize {
            powers.push(h_power(powers.len() as u32 + 1));
        }
        out = out.add(&powers[d as usize - 1].scale_by(&rest));
    }
    out
}

/// `(α^m β^n γ^p)` on the moduli space of genus `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IntersectionQuery {
    pub g: u32,
    pub m: u32,
    pub n: u32,
    pub p: u32,
}

impl IntersectionQuery {
    pub fn new(g: u32, m: u32, n: u32, p: u32) -> Result<Self> {
        if g < 2 {
            return Err(Error::DegreeCondition(format!(
                "genus must be at least 2, got {g}"
            )));
        }
        if m + 2 * n + 3 * p != 3 * g - 3 {
            return Err(Error::DegreeCondition(format!(
                "m + 2n + 3p = {} but 3g - 3 = {}",
                m + 2 * n + 3 * p,
                3 * g - 3
            )));
        }
        Ok(IntersectionQuery { g, m, n, p })
    }

    /// Every query in genus `g`, ordered by `(p, n)`.
    pub fn all(g: u32) -> Vec<IntersectionQuery> {
        let top = 3 * g - 3;
        let mut out = Vec::new();
        for p in 0..=top / 3 {
            for n in 0..=(top - 3 * p) / 2 {
                let m = top - 3 * p - 2 * n;
                out.push(IntersectionQuery { g, m, n, p });
            }
        }
        out
    }
}

/// `(-1)^{g-p} g! m! / ((g-p)! q!) · 2^{2g-2-p} (2^q - 2) B_q` with `q = m + p + 1 - g`.
pub fn thaddeus_number(query: &IntersectionQuery) -> Rational {
    let IntersectionQuery { g, m, p, .. } = *query;
    let q = m as i64 + p as i64 + 1 - g as i64;
    if q < 0 {
        return Rational::zero();
    }
    let bq = bernoulli(q);
    if bq.is_zero() {
        return Rational::zero();
    }
    let num = factorial(g as u64) * factorial(m as u64);
    let den = factorial((g - p) as u64) * factorial(q as u64);
    let two_q = (BigInt::one() << q as usize) - BigInt::from(2);
    let value = Rational::new(num, den)
        * Rational::from_integer((BigInt::one() << (2 * g - 2 - p) as usize) * two_q)
        * bq;
    if (g - p) % 2 == 1 {
        -value
    } else {
        value
    }
}

/// `∫_H (f·h + f')`: the `h`-coefficient `f` integrated over the moduli space.
pub fn integrate_over_h(c: &HeckeClass, g: u32) -> Result<Rational> {
    if g < 2 {
        return Err(Error::DegreeCondition(format!(
            "genus must be at least 2, got {g}"
        )));
    }
    let top = 3 * g - 3;
    if !c.f.is_zero() && !c.f.is_homogeneous(top) {
        return Err(Error::DegreeCondition(format!(
            "h-coefficient must be homogeneous of half-degree {top}"
        )));
    }
    let mut total = Rational::zero();
    for (mono, coeff) in c.f.terms() {
        let q = IntersectionQuery::new(
            g,
            mono.exp(Symbol::Alpha),
            mono.exp(Symbol::Beta),
            mono.exp(Symbol::Gamma),
        )?;
        total += coeff * thaddeus_number(&q);
    }
    Ok(total)
}

/// `e = 3g - 3 - k(k+1)/2`.
pub fn expected_dimension(g: u32, k: u32) -> i64 {
    3 * g as i64 - 3 - (k as i64) * (k as i64 + 1) / 2
}

/// A monomial `α^a β^b γ^c h^d` pairing nontrivially with `P_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalPairing {
    pub g: u32,
    pub k: u32,
    pub monomial: Monomial,
    pub value: Rational,
    /// Pairings evaluated, this one included.
    pub evaluated: usize,
}

/// Result of a bounded search. Exhausting the budget says nothing about vanishing.
#[derive(Debug, Clone, PartialEq)]
pub enum PairingSearch {
    Found(RationalPairing),
    Exhausted { evaluated: usize },
}

pub const DEFAULT_PAIRING_BUDGET: usize = 10_000;

/// Monomials `α^a β^b γ^c h^d` with `a + 2b + 3c + d = e + 1`: first the family
/// `α β^ℓ h^{e-2ℓ}` for `ℓ = 0, ..., ⌊e/2⌋`, then the rest in lexicographic order of `(a, b, c, d)`.
pub fn pairing_order(e: u32) -> Vec<Monomial> {
    let weight = e + 1;
    let family: Vec<Monomial> = (0..=e / 2)
        .map(|l| Monomial::new(e - 2 * l, 1, l, 0))
        .collect();
    let seen: BTreeSet<Monomial> = family.iter().copied().collect();
    let mut out = family;
    for a in 0..=weight {
        for b in 0..=(weight - a) / 2 {
            for c in 0..=(weight - a - 2 * b) / 3 {
                let d = weight - a - 2 * b - 3 * c;
                let m = Monomial::new(d, a, b, c);
                if !seen.contains(&m) {
                    out.push(m);
                }
            }
        }
    }
    out
}

/// Searches for a monomial `μ` with `∫_H μ·P_k ≠ 0` in genus `g`.
pub fn rational_certificate(g: u32, k: u32, budget: usize) -> Result<PairingSearch> {
    if g < 2 || k < 1 {
        return Err(Error::InvalidArgument(format!(
            "need g >= 2 and k >= 1, got g = {g}, k = {k}"
        )));
    }
    let e = expected_dimension(g, k);
    if e < 0 {
        return Err(Error::NegativeExpectedDimension { g, k, e });
    }
    let class = to_basis(&pk_full(k).poly);
    let mut evaluated = 0;
    for mono in pairing_order(e as u32).into_iter().take(budget) {
        evaluated += 1;
        let partner = to_basis(&QPoly::term(mono, Rational::one()));
        let value = integrate_over_h(&partner.mul(&class), g)?;
        if !value.is_zero() {
            return Ok(PairingSearch::Found(RationalPairing {
                g,
                k,
                monomial: mono,
                value,
                evaluated,
            }));
        }
    }
    Ok(PairingSearch::Exhausted { evaluated })
}

/// Recomputes `∫_H μ·P_k` in genus `g`.
pub fn pairing_value(g: u32, k: u32, mono: Monomial) -> Result<Rational> {
    let class = to_basis(&pk_full(k).poly);
    let partner = to_basis(&QPoly::term(mono, Rational::one()));
    integrate_over_h(&partner.mul(&class), g)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceEntry {
    pub m: u32,
    pub n: u32,
    pub p: u32,
    pub value: String,
    pub residue: u64,
    pub expected: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceScan {
    pub g: u32,
    pub entries: Vec<CongruenceEntry>,
    pub mismatches: Vec<CongruenceEntry>,
}

impl CongruenceScan {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// For an odd prime `g`, checks `(α^m β^n γ^p) ≡ -1 mod g` exactly when `p = 0` and
/// `m ∈ {g-1, 2g-2, 3g-3}`, and `≡ 0` otherwise.
pub fn prime_genus_congruence_scan(g: u32) -> Result<CongruenceScan> {
    let modulus = Modulus::new(g as u64)?;
    let mut entries = Vec::new();
    let mut mismatches = Vec::new();
    for q in IntersectionQuery::all(g) {
        let value = thaddeus_number(&q);
        let residue = reduce_rational(&value, modulus)?.residue();
        let special = q.p == 0 && [g - 1, 2 * g - 2, 3 * g - 3].contains(&q.m);
        let expected = if special { g as u64 - 1 } else { 0 };
        let entry = CongruenceEntry {
            m: q.m,
            n: q.n,
            p: q.p,
            value: crate::arith::format_rational(&value),
            residue,
            expected,
        };
        if residue != expected {
            mismatches.push(entry.clone());
        }
        entries.push(entry);
    }
    Ok(CongruenceScan {
        g,
        entries,
        mismatches,
    })
}
