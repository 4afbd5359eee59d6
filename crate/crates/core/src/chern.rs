//! The Chern coefficient sequences `c_n` entering the Giambelli determinant.
//!
//! Three incarnations are produced by recurrences:
//! * `c_n(h, β, γ)` from the four-term recurrence with explicit seeds `c_1..c_4`;
//! * `c̃_n(β) = c_n(1, β, 0)` from the two-term recurrence;
//! * `ĉ_n = u · c̃_n` over `F_g[β]`, with the unit `u = (g-1)! 2^{g-1}`.
//!
//! [`chern_oracle_series`] rebuilds `c_n` independently from the exponential
//! generating function and is used to cross-check the recurrence.

use num_bigint::BigInt;
use thiserror::Error;

use crate::arith::{factorial, factorial_mod, rational_from_int, ModN, Modulus, Rational};
use crate::poly::{FpPoly, Monomial, QPoly, Symbol};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChernError {
    #[error("ĉ_{index} needs index < g = {modulus}")]
    IndexTooLarge { index: i64, modulus: u64 },
    #[error("closed form at β = 4 needs n >= 1, got {0}")]
    BadIndex(i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChernVariant {
    Full,
    Tilde,
}

/// Append-only memo of `c_0, c_1, ...` over the rationals.
#[derive(Debug, Clone)]
pub struct ChernSequence {
    variant: ChernVariant,
    terms: Vec<QPoly>,
}

fn q(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

fn mono(h: u32, beta: u32, gamma: u32) -> Monomial {
    Monomial::new(h, 0, beta, gamma)
}

impl ChernSequence {
    pub fn full() -> Self {
        let t = |terms: Vec<(Monomial, Rational)>| QPoly::from_terms((), terms);
        let terms = vec![
            QPoly::from_int(2, ()),
            t(vec![(mono(1, 0, 0), q(1, 1))]),
            t(vec![(mono(2, 0, 0), q(1, 2))]),
            // 3c_3 = h³/2 + βh/4 - γ/2
            t(vec![
                (mono(3, 0, 0), q(1, 6)),
                (mono(1, 1, 0), q(1, 12)),
                (mono(0, 0, 1), q(-1, 6)),
            ]),
            // 4c_4 = h⁴/6 + βh²/3 - 2γh/3
            t(vec![
                (mono(4, 0, 0), q(1, 24)),
                (mono(2, 1, 0), q(1, 12)),
                (mono(1, 0, 1), q(-1, 6)),
            ]),
        ];
        ChernSequence {
            variant: ChernVariant::Full,
            terms,
        }
    }

    pub fn tilde() -> Self {
        ChernSequence {
            variant: ChernVariant::Tilde,
            terms: vec![QPoly::from_int(2, ()), QPoly::from_int(1, ())],
        }
    }

    pub fn variant(&self) -> ChernVariant {
        self.variant
    }

    /// Number of memoized terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn extend_to(&mut self, n: usize) {
        while self.terms.len() <= n {
            let next = match self.variant {
                ChernVariant::Full => self.next_full(),
                ChernVariant::Tilde => self.next_tilde(),
            };
            self.terms.push(next);
        }
    }

    /// `c_n`; the zero polynomial for `n < 0`.
    pub fn term(&mut self, n: i64) -> QPoly {
        if n < 0 {
            return QPoly::q_zero();
        }
        self.extend_to(n as usize);
        self.terms[n as usize].clone()
    }

    /// Already-computed prefix.
    pub fn computed(&self) -> &[QPoly] {
        &self.terms
    }

    // (n+4)c_{n+4} = h c_{n+3} - (βh/4 + γ/2) c_{n+1} + (β/2)(n+2) c_{n+2} - (β/4)² n c_n
    fn next_full(&self) -> QPoly {
        let target = self.terms.len() as i64;
        let n = target - 4;
        debug_assert!(n >= 1);
        let c = |i: i64| &self.terms[i as usize];
        let h = QPoly::q_var(Symbol::H);
        let beta = QPoly::q_var(Symbol::Beta);
        let gamma = QPoly::q_var(Symbol::Gamma);
        let shift = &(&beta * &h).scale(&q(1, 4)) + &gamma.scale(&q(1, 2));

        let mut acc = &h * c(n + 3);
        acc = &acc - &(&shift * c(n + 1));
        acc = &acc + &(&beta * c(n + 2)).scale(&q(n + 2, 2));
        acc = &acc - &(&(&beta * &beta) * c(n)).scale(&q(n, 16));
        acc.scale(&q(1, target))
    }

    // (n+1)c̃_{n+1} = c̃_n + (β/4)(n-1)c̃_{n-1}
    fn next_tilde(&self) -> QPoly {
        let next = self.terms.len() as i64;
        let n = next - 1;
        let beta = QPoly::q_var(Symbol::Beta);
        let rhs =
            &self.terms[n as usize] + &(&beta * &self.terms[(n - 1) as usize]).scale(&q(n - 1, 4));
        rhs.scale(&q(1, next))
    }
}

/// `ĉ_n = u · c̃_n` computed natively in `F_g[β]`.
#[derive(Debug, Clone)]
pub struct HatSequence {
    modulus: Modulus,
    unit: ModN,
    raw: Vec<FpPoly>,
}

/// `u = (g-1)! · 2^{g-1} mod g`. By Wilson and Fermat this is always `-1`.
pub fn scaling_unit(modulus: Modulus) -> ModN {
    let g = modulus.get();
    let fact = factorial_mod(g - 1, g).expect("modulus is an odd prime");
    fact * ModN::new(2, modulus).pow(g - 1)
}

impl HatSequence {
    pub fn new(modulus: Modulus) -> Self {
        HatSequence {
            modulus,
            unit: scaling_unit(modulus),
            raw: vec![FpPoly::from_int(2, modulus), FpPoly::from_int(1, modulus)],
        }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn unit(&self) -> ModN {
        self.unit
    }

    /// `ĉ_n`; zero for `n < 0`, an error once `n >= g` (a denominator may vanish).
    pub fn term(&mut self, n: i64) -> Result<FpPoly, ChernError> {
        if n < 0 {
            return Ok(FpPoly::zero(self.modulus));
        }
        if n as u64 >= self.modulus.get() {
            return Err(ChernError::IndexTooLarge {
                index: n,
                modulus: self.modulus.get(),
            });
        }
        let m = self.modulus;
        while self.raw.len() <= n as usize {
            let next = self.raw.len() as i64;
            let k = next - 1;
            let beta = FpPoly::var(Symbol::Beta, m);
            let quarter = ModN::from_i64(4, m).inverse().expect("4 is a unit");
            let coeff = quarter * ModN::from_i64(k - 1, m);
            let rhs = &self.raw[k as usize] + &(&beta * &self.raw[(k - 1) as usize]).scale(&coeff);
            let inv = ModN::from_i64(next, m)
                .inverse()
                .expect("index below the modulus");
            self.raw.push(rhs.scale(&inv));
        }
        Ok(self.raw[n as usize].scale(&self.unit))
    }
}

pub fn chern_full(n: i64) -> QPoly {
    ChernSequence::full().term(n)
}

pub fn chern_tilde(n: i64) -> QPoly {
    ChernSequence::tilde().term(n)
}

pub fn chern_hat(n: i64, g: u64) -> Result<FpPoly, crate::Error> {
    let m = Modulus::new(g)?;
    Ok(HatSequence::new(m).term(n)?)
}

/// `c_0..=c_{n_max}` from `c(t) - 1 = exp(S(t))` with
/// `S(t) = Σ_{n>=0} (βh/4 - nγ/2)(β/4)^{n-1} t^{2n+1}/(2n+1)`.
///
/// Independent of the recurrences: the exponential is expanded through
/// `E' = S'E`, i.e. `m E_m = Σ_{j=1}^{m} j S_j E_{m-j}`.
pub fn chern_oracle_series(n_max: usize) -> Vec<QPoly> {
    let h = QPoly::q_var(Symbol::H);
    let beta = QPoly::q_var(Symbol::Beta);
    let gamma = QPoly::q_var(Symbol::Gamma);
    let quarter_beta = beta.scale(&q(1, 4));

    let mut s = vec![QPoly::q_zero(); n_max + 1];
    let mut power = QPoly::from_int(1, ()); // (β/4)^{n-1}, starting at n = 1
    for n in 0..=n_max {
        let idx = 2 * n + 1;
        if idx > n_max {
            break;
        }
        let coeff = if n == 0 {
            h.clone()
        } else {
            let lead = &(&quarter_beta * &power) * &h;
            let tail = (&gamma * &power).scale(&q(n as i64, 2));
            let c = &lead - &tail;
            power = &power * &quarter_beta;
            c
        };
        s[idx] = coeff.scale(&q(1, idx as i64));
    }

    let mut e = vec![QPoly::from_int(1, ())];
    for m in 1..=n_max {
        let mut acc = QPoly::q_zero();
        for j in 1..=m {
            if !s[j].is_zero() {
                acc = &acc + &(&s[j] * &e[m - j]).scale(&rational_from_int(j as i64));
            }
        }
        e.push(acc.scale(&q(1, m as i64)));
    }
    e[0] = QPoly::from_int(2, ());
    e
}

pub fn chern_oracle(n: usize) -> QPoly {
    chern_oracle_series(n).pop().expect("nonempty series")
}

/// `c̃_{2n} = c̃_{2n+1} = (2n)! / (2^{2n} (n!)²)` at `β = 4`, for `n >= 1`.
pub fn beta4_closed_form(n: i64) -> Result<Rational, ChernError> {
    if n < 1 {
        return Err(ChernError::BadIndex(n));
    }
    let nf = factorial(n as u64);
    let num = factorial(2 * n as u64);
    let den = (BigInt::from(1) << (2 * n as usize)) * &nf * &nf;
    Ok(Rational::new(num, den))
}

/// Numeric values `c_0..=c_{n_max}` at the point `(h, β, γ)`, by the same four-term
/// recurrence but over the rationals. Avoids building symbolic polynomials.
pub fn chern_values_at(
    h: &Rational,
    beta: &Rational,
    gamma: &Rational,
    n_max: usize,
) -> Vec<Rational> {
    let h2 = h * h;
    let h3 = &h2 * h;
    let h4 = &h3 * h;
    let mut c = vec![
        rational_from_int(2),
        h.clone(),
        &h2 * q(1, 2),
        (&h3 * q(1, 6)) + (beta * h * q(1, 12)) - (gamma * q(1, 6)),
        (&h4 * q(1, 24)) + (beta * &h2 * q(1, 12)) - (gamma * h * q(1, 6)),
    ];
    let shift = beta * h * q(1, 4) + gamma * q(1, 2);
    let beta_sq = beta * beta;
    while c.len() <= n_max {
        let target = c.len() as i64;
        let n = (target - 4) as usize;
        let v = h * &c[n + 3] - &shift * &c[n + 1] + beta * &c[n + 2] * q(n as i64 + 2, 2)
            - &beta_sq * &c[n] * q(n as i64, 16);
        c.push(v * q(1, target));
    }
    c.truncate(n_max + 1);
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_rational, reduce_rational};

    fn qs(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn beta_poly(coeffs: &[&str]) -> QPoly {
        let c: Vec<Rational> = coeffs.iter().map(|s| qs(s)).collect();
        QPoly::from_univariate(Symbol::Beta, &c, ())
    }

    #[test]
    fn full_sequence_examples() {
        assert_eq!(chern_full(0), QPoly::from_int(2, ()));
        assert_eq!(chern_full(1), QPoly::q_var(Symbol::H));
        let c3 = QPoly::from_terms(
            (),
            [
                (mono(3, 0, 0), qs("1/6")),
                (mono(1, 1, 0), qs("1/12")),
                (mono(0, 0, 1), qs("-1/6")),
            ],
        );
        assert_eq!(chern_full(3), c3);
        assert!(chern_full(-2).is_zero());
    }

    #[test]
    fn tilde_sequence_examples() {
        assert_eq!(chern_tilde(2), beta_poly(&["1/2"]));
        assert_eq!(chern_tilde(3), beta_poly(&["1/6", "1/12"]));
        assert_eq!(chern_tilde(5), beta_poly(&["1/120", "1/24", "1/80"]));
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(chern_oracle(1), QPoly::q_var(Symbol::H));
        assert_eq!(
            chern_oracle(2),
            QPoly::from_terms((), [(mono(2, 0, 0), qs("1/2"))])
        );
        let c4 = QPoly::from_terms(
            (),
            [
                (mono(4, 0, 0), qs("1/24")),
                (mono(2, 1, 0), qs("1/12")),
                (mono(1, 0, 1), qs("-1/6")),
            ],
        );
        assert_eq!(chern_oracle(4), c4);
    }

    #[test]
    fn hat_sequence_examples() {
        let m = Modulus::new(11).unwrap();
        assert_eq!(scaling_unit(m).residue(), 10);
        assert_eq!(chern_hat(0, 11).unwrap(), FpPoly::from_int(9, m));
        assert_eq!(chern_hat(1, 11).unwrap(), FpPoly::from_int(10, m));
        let expected =
            FpPoly::from_univariate(Symbol::Beta, &[ModN::new(9, m), ModN::new(10, m)], m);
        assert_eq!(chern_hat(3, 11).unwrap(), expected);
        assert!(matches!(
            chern_hat(11, 11),
            Err(crate::Error::Chern(ChernError::IndexTooLarge { .. }))
        ));
        assert!(chern_hat(1, 9).is_err());
    }

    #[test]
    fn hat_matches_reduced_tilde() {
        for g in [11u64, 13, 53, 101] {
            let m = Modulus::new(g).unwrap();
            let u = scaling_unit(m);
            let mut hat = HatSequence::new(m);
            let mut tilde = ChernSequence::tilde();
            for n in 0..g as i64 {
                let t = tilde.term(n);
                let reduced: Vec<ModN> = t
                    .univariate_coeffs(Symbol::Beta)
                    .unwrap()
                    .iter()
                    .map(|c| reduce_rational(c, m).unwrap() * u)
                    .collect();
                let expected = FpPoly::from_univariate(Symbol::Beta, &reduced, m);
                assert_eq!(hat.term(n).unwrap(), expected, "g = {g}, n = {n}");
            }
        }
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(beta4_closed_form(1).unwrap(), qs("1/2"));
        assert_eq!(beta4_closed_form(2).unwrap(), qs("3/8"));
        assert_eq!(beta4_closed_form(3).unwrap(), qs("5/16"));
        assert!(beta4_closed_form(0).is_err());
    }

    #[test]
    fn numeric_values_match_symbolic_terms() {
        let (h, b, g) = (qs("3/2"), qs("-2/7"), qs("5"));
        let values = chern_values_at(&h, &b, &g, 14);
        let mut seq = ChernSequence::full();
        for (n, v) in values.iter().enumerate() {
            let sym = seq.term(n as i64).evaluate([&h, &qs("0"), &b, &g]).unwrap();
            assert_eq!(&sym, v, "n = {n}");
        }
        assert_eq!(chern_values_at(&h, &b, &g, 2).len(), 3);
    }
}
