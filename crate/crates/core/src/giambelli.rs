//! The Giambelli determinant `P_k = Δ_{k,k-1,...,1}(c_i)` and its structural checks.
//!
//! Row `i`, column `j` (0-based) of the `k × k` matrix holds `c_{k - 2i + j}`, with
//! `c_0 = 2` and `c_n = 0` for `n < 0`, so the last row reads `(0, ..., 0, 2, 1)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{factorial, reduce_rational, ModN, Modulus, Rational};
use crate::chern::{chern_values_at, ChernSequence, HatSequence};
use crate::poly::{
    det_bareiss, interpolate, root_multiplicity, Coefficient, DetAlgorithm, GradedPoly, PolyMatrix,
    QPoly, Symbol,
};
use crate::{Error, Result, TOOL_VERSION};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PkVariant {
    /// Trivariate `P_k(h, β, γ)`.
    Full,
    /// `P_k(1, β, 0)`.
    Beta,
    /// `det` of the `ĉ` matrix over `F_g[β]`.
    Hat(u64),
}

impl fmt::Display for PkVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PkVariant::Full => f.write_str("full"),
            PkVariant::Beta => f.write_str("beta"),
            PkVariant::Hat(g) => write!(f, "hat-{g}"),
        }
    }
}

impl std::str::FromStr for PkVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(PkVariant::Full),
            "beta" => Ok(PkVariant::Beta),
            _ => s
                .strip_prefix("hat-")
                .and_then(|g| g.parse().ok())
                .map(PkVariant::Hat)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown P_k variant {s:?}"))),
        }
    }
}

impl Serialize for PkVariant {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PkVariant {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A computed `P_k` with its provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct PkRecord<C: Coefficient> {
    pub k: u32,
    pub variant: PkVariant,
    pub poly: GradedPoly<C>,
    pub algorithm: String,
    pub version: String,
}

/// Builds the `k × k` Giambelli matrix from a term accessor `c(n)`.
pub fn giambelli_matrix<C: Coefficient>(
    k: u32,
    mut c: impl FnMut(i64) -> GradedPoly<C>,
) -> PolyMatrix<C> {
    assert!(k >= 1, "k must be positive");
    let k = k as i64;
    let rows = (0..k)
        .map(|i| (0..k).map(|j| c(k - 2 * i + j)).collect())
        .collect();
    PolyMatrix::new(rows)
}

pub fn giambelli_matrix_full(k: u32) -> PolyMatrix<Rational> {
    let mut seq = ChernSequence::full();
    giambelli_matrix(k, |n| seq.term(n))
}

pub fn giambelli_matrix_tilde(k: u32) -> PolyMatrix<Rational> {
    let mut seq = ChernSequence::tilde();
    giambelli_matrix(k, |n| seq.term(n))
}

/// The `ĉ` matrix over `F_g[β]`; every entry (the `2` and `1` of the last row
/// included) carries the same unit factor.
pub fn giambelli_matrix_hat(k: u32, modulus: Modulus) -> Result<PolyMatrix<ModN>> {
    let mut seq = HatSequence::new(modulus);
    let mut err = None;
    let m = giambelli_matrix(k, |n| {
        seq.term(n).unwrap_or_else(|e| {
            err.get_or_insert(e);
            GradedPoly::zero(modulus)
        })
    });
    match err {
        Some(e) => Err(e.into()),
        None => Ok(m),
    }
}

/// Trivariate `P_k(h, β, γ)`, by memoized minor expansion over the banded matrix.
pub fn pk_full(k: u32) -> PkRecord<Rational> {
    let poly = giambelli_matrix_full(k).det_with(DetAlgorithm::MinorExpansion);
    PkRecord {
        k,
        variant: PkVariant::Full,
        poly,
        algorithm: DetAlgorithm::MinorExpansion.name().to_string(),
        version: TOOL_VERSION.to_string(),
    }
}

/// `P_k(1, β, 0)` from the `c̃` matrix.
///
/// With `c̃_n = d_n / (n! 4^n)` the integers `d_n` obey `d_0 = 2`, `d_1 = 4`,
/// `d_{n+1} = 4 d_n + 4β n(n-1) d_{n-1}`. The cleared integer determinant is
/// evaluated at `β = 0, ..., D` with `D = ⌊k(k+1)/4⌋` (the grading bound on the
/// `β`-degree) and interpolated exactly.
pub fn pk_beta(k: u32) -> PkRecord<Rational> {
    assert!(k >= 1, "k must be positive");
    let bound = (k * (k + 1) / 4) as i64;
    let xs: Vec<Rational> = (0..=bound)
        .map(|x| Rational::from_integer(x.into()))
        .collect();
    let ys: Vec<Rational> = (0..=bound)
        .map(|x| Rational::from_integer(cleared_tilde_det(k, &BigInt::from(x))))
        .collect();
    let scale = cleared_tilde_scale(k);
    let coeffs: Vec<Rational> = interpolate(&xs, &ys)
        .into_iter()
        .map(|c| c / &scale)
        .collect();
    PkRecord {
        k,
        variant: PkVariant::Beta,
        poly: QPoly::from_univariate(Symbol::Beta, &coeffs, ()),
        algorithm: PK_BETA_ALGORITHM.to_string(),
        version: TOOL_VERSION.to_string(),
    }
}

pub const PK_BETA_ALGORITHM: &str = "bareiss-evaluation-interpolation";

/// `P_k(1, β, 0)` by fraction-free elimination directly over `Q[β]`. Slow past `k ≈ 12`.
pub fn pk_beta_symbolic(k: u32) -> PkRecord<Rational> {
    let poly = giambelli_matrix_tilde(k).det_with(DetAlgorithm::Bareiss);
    PkRecord {
        k,
        variant: PkVariant::Beta,
        poly,
        algorithm: DetAlgorithm::Bareiss.name().to_string(),
        version: TOOL_VERSION.to_string(),
    }
}

fn cleared_tilde_terms(n_max: usize, beta: &BigInt) -> Vec<BigInt> {
    let mut d = vec![BigInt::from(2), BigInt::from(4)];
    for n in 1..n_max {
        let next = BigInt::from(4) * &d[n] + BigInt::from(4 * n * (n - 1)) * beta * &d[n - 1];
        d.push(next);
    }
    d
}

/// Row `i` of the `c̃` matrix times `4^{k-2i}` and `(2k-1-2i)!`, column `j` times `4^j`.
fn cleared_tilde_det(k: u32, beta: &BigInt) -> BigInt {
    let k = k as i64;
    let d = cleared_tilde_terms(2 * k as usize, beta);
    let rows: Vec<Vec<BigInt>> = (0..k)
        .map(|i| {
            let top = 2 * k - 1 - 2 * i;
            (0..k)
                .map(|j| {
                    let n = k - 2 * i + j;
                    if n < 0 {
                        BigInt::zero()
                    } else {
                        &d[n as usize] * falling(top as u64, n as u64)
                    }
                })
                .collect()
        })
        .collect();
    det_bareiss(rows)
}

/// `top! / n!`.
fn falling(top: u64, n: u64) -> BigInt {
    (n + 1..=top).fold(BigInt::one(), |acc, m| acc * m)
}

fn cleared_tilde_scale(k: u32) -> BigInt {
    let k = k as u64;
    let rows = (0..k).fold(BigInt::one(), |acc, i| acc * factorial(2 * k - 1 - 2 * i));
    rows * (BigInt::one() << (k * (k + 1)) as usize)
}

/// `det` of the `ĉ` matrix over `F_g[β]`, which is `u^k · P_k(1, β, 0) mod g`.
pub fn pk_hat(k: u32, g: u64) -> Result<PkRecord<ModN>> {
    let modulus = Modulus::new(g)?;
    let poly = giambelli_matrix_hat(k, modulus)?.det_with(DetAlgorithm::Bareiss);
    Ok(PkRecord {
        k,
        variant: PkVariant::Hat(g),
        poly,
        algorithm: DetAlgorithm::Bareiss.name().to_string(),
        version: TOOL_VERSION.to_string(),
    })
}

/// `P_k(h0, β0, γ0)` as a numeric determinant of evaluated `c_n`.
pub fn pk_eval(k: u32, h: &Rational, beta: &Rational, gamma: &Rational) -> Rational {
    assert!(k >= 1, "k must be positive");
    let values = chern_values_at(h, beta, gamma, 2 * k as usize);
    let k = k as i64;
    let c = |n: i64| {
        if n < 0 {
            Rational::zero()
        } else {
            values[n as usize].clone()
        }
    };
    let rows: Vec<Vec<Rational>> = (0..k)
        .map(|i| (0..k).map(|j| c(k - 2 * i + j)).collect())
        .collect();
    det_bareiss(rows)
}

/// Sign exponent of `P_k(1, 4, 0)`: 1 exactly when `k = 2m` with `m` odd.
pub fn delta(k: u32) -> u32 {
    let d = if k % 2 == 0 && (k / 2) % 2 == 1 { 1 } else { 0 };
    // independent transcription for small k
    const TABLE: [u32; 6] = [0, 1, 0, 0, 0, 1];
    if (1..=6).contains(&k) {
        assert_eq!(d, TABLE[k as usize - 1], "sign convention slip at k = {k}");
    }
    d
}

/// Predicted value `(-1)^δ(k) / 2^{k(k-1)/2}` of `P_k(1, 4, 0)`.
pub fn pk_closed_form_at_beta4(k: u32) -> Rational {
    let exp = (k as usize) * (k as usize - 1) / 2;
    let v = Rational::new(BigInt::one(), BigInt::one() << exp);
    if delta(k) == 1 {
        -v
    } else {
        v
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub k: u32,
    pub degree: u32,
    pub bound: u32,
    pub within_bound: bool,
    pub equals_bound: bool,
}

/// Compares `deg_β P_k(1, β, 0)` with `⌊k²/4⌋`.
pub fn degree_check(pk: &PkRecord<Rational>) -> DegreeReport {
    let degree = pk.poly.degree_in(Symbol::Beta).unwrap_or(0);
    let bound = pk.k * pk.k / 4;
    DegreeReport {
        k: pk.k,
        degree,
        bound,
        within_bound: degree <= bound,
        equals_bound: degree == bound,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootMultiplicity {
    pub i: u32,
    pub multiplicity: u32,
    /// Proven lower bound `⌊(k+1)/2⌋ - i`, present for `i < ⌊(k+1)/2⌋`.
    pub proven_bound: Option<u32>,
    /// Conjectured lower bound `⌊(k-i+1)/2⌋`.
    pub conjectured_bound: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiplicityReport {
    pub k: u32,
    pub roots: Vec<RootMultiplicity>,
    pub proven_bounds_hold: bool,
    pub conjectured_bounds_hold: bool,
}

/// Multiplicity of `β = 1/i²` in `P_k(1, β, 0)` for `1 <= i <= k-1`.
pub fn multiplicity_profile(pk: &PkRecord<Rational>) -> Result<MultiplicityReport> {
    let k = pk.k;
    if k < 2 {
        return Err(Error::InvalidArgument(
            "multiplicity profile needs k >= 2".into(),
        ));
    }
    let half = (k + 1) / 2;
    let mut roots = Vec::new();
    for i in 1..k {
        let r = Rational::new(BigInt::one(), BigInt::from(i * i));
        let multiplicity = root_multiplicity(&pk.poly, &r)?;
        roots.push(RootMultiplicity {
            i,
            multiplicity,
            proven_bound: (i < half).then(|| half - i),
            conjectured_bound: (k - i + 1) / 2,
        });
    }
    let proven_bounds_hold = roots
        .iter()
        .all(|r| r.proven_bound.is_none_or(|b| r.multiplicity >= b));
    let conjectured_bounds_hold = roots.iter().all(|r| r.multiplicity >= r.conjectured_bound);
    Ok(MultiplicityReport {
        k,
        roots,
        proven_bounds_hold,
        conjectured_bounds_hold,
    })
}

/// Weakly decreasing list of nonnegative parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!(
                "partition parts must be weakly decreasing: {parts:?}"
            )));
        }
        Ok(Partition(parts))
    }

    /// `m` repeated `times` times.
    pub fn rectangle(m: u32, times: usize) -> Self {
        Partition(vec![m; times])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.0.iter().filter(|&&p| p > 0).count()
    }

    fn column_length(&self, j: u32) -> u32 {
        self.0.iter().filter(|&&p| p > j).count() as u32
    }
}

/// `S_λ(1, ..., 1)` with `n` ones, by the hook-content formula.
pub fn schur_dim(lambda: &Partition, n: u32) -> Result<BigInt> {
    if lambda.length() > n as usize {
        return Err(Error::InvalidArgument(format!(
            "partition of length {} needs at least that many variables, got {n}",
            lambda.length()
        )));
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (i, &row) in lambda.parts().iter().enumerate() {
        let i = i as u32;
        for j in 0..row {
            num *= BigInt::from(n + j) - BigInt::from(i);
            let arm = row - j - 1;
            let leg = lambda.column_length(j) - i - 1;
            den *= BigInt::from(arm + leg + 1);
        }
    }
    debug_assert!((&num % &den).is_zero());
    Ok(num / den)
}

/// Residues tying together the three descriptions of `P_k(1, 4, 0) mod p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BetaFourResidues {
    pub k: u32,
    pub p: u64,
    /// `P_k(1, 4, 0)` reduced mod `p` from the exact determinant.
    pub determinant: u64,
    /// The closed form `±2^{-k(k-1)/2}` reduced mod `p`.
    pub closed_form: u64,
    /// `±S_λ(1^{(p-1)/2})` with `λ` the rectangle `(m+1)^m` (`k = 2m+1`) or `m^m` (`k = 2m`).
    pub schur: u64,
}

impl BetaFourResidues {
    pub fn consistent(&self) -> bool {
        self.determinant == self.closed_form && self.determinant == self.schur
    }

    pub fn nonzero(&self) -> bool {
        self.determinant != 0
    }
}

pub fn beta4_residues(k: u32, p: u64) -> Result<BetaFourResidues> {
    let modulus = Modulus::new(p)?;
    if p <= k as u64 {
        return Err(Error::InvalidArgument(format!(
            "need an odd prime p > k, got p = {p}, k = {k}"
        )));
    }
    let one = Rational::one();
    let value = pk_eval(
        k,
        &one,
        &Rational::from_integer(4.into()),
        &Rational::zero(),
    );
    let determinant = reduce_rational(&value, modulus)?.residue();
    let closed_form = reduce_rational(&pk_closed_form_at_beta4(k), modulus)?.residue();

    let m = k / 2;
    let (lambda, sign_exp) = if k % 2 == 1 {
        (Partition::rectangle(m + 1, m as usize), (m + 1) / 2)
    } else {
        (Partition::rectangle(m, m as usize), m / 2)
    };
    let n = ((p - 1) / 2) as u32;
    let s = schur_dim(&lambda, n)?;
    let mut s = ModN::new(
        u64::try_from(s % BigInt::from(p)).expect("reduced"),
        modulus,
    );
    if sign_exp % 2 == 1 {
        s = -s;
    }
    Ok(BetaFourResidues {
        k,
        p,
        determinant,
        closed_form,
        schur: s.residue(),
    })
}

/// True when `P_k(1, 4, 0) ≢ 0 mod p` and the closed form and Schur descriptions agree.
pub fn beta4_residue_check(k: u32, p: u64) -> Result<bool> {
    let r = beta4_residues(k, p)?;
    Ok(r.nonzero() && r.consistent())
}

/// `P_k(1, β, 0)` with its lowest nonvanishing `β`-power `i` and coefficient `N`.
pub fn lowest_beta_term(pk_beta: &QPoly) -> Option<(u32, Rational)> {
    pk_beta
        .terms()
        .filter(|(m, _)| m.exp(Symbol::H) == 0 && m.exp(Symbol::Gamma) == 0)
        .min_by_key(|(m, _)| m.exp(Symbol::Beta))
        .map(|(m, c)| (m.exp(Symbol::Beta), c.clone()))
}

/// Sign of a rational as -1, 0, 1.
pub fn signum(q: &Rational) -> i32 {
    if Zero::is_zero(q) {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}
