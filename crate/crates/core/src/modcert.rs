//! `M_j` residues over `F_g[β]` and the two non-vanishing criteria built from them.

use serde::Serialize;

use crate::arith::{next_odd_prime, ModN, Modulus};
use crate::certificate::{CriterionId, ModularCertificate, CERTIFICATE_SCHEMA_VERSION};
use crate::chern::scaling_unit;
use crate::giambelli::pk_hat;
use crate::hecke::expected_dimension;
use crate::poly::Symbol;
use crate::{Error, Result, TOOL_VERSION};

/// Smallest odd prime `g` with `g - 1 >= k(k-1)/4`.
pub fn find_gk(k: u32) -> u64 {
    let k = k as u64;
    // 4(g - 1) >= k(k - 1)
    next_odd_prime((k * (k.saturating_sub(1))).div_ceil(4) + 1)
}

/// Smallest odd prime `g` with `3g - 3 >= k(k+1)/2`.
pub fn find_gpk(k: u32) -> u64 {
    let k = k as u64;
    next_odd_prime((k * (k + 1) / 2).div_ceil(3) + 1)
}

/// Odd prime `g` with `g - 1 >= max(k(k-1)/4, 2k-1)`.
pub fn prime_genus_gate(g: u64, k: u32) -> bool {
    let k = k as u64;
    g >= 3
        && g % 2 == 1
        && crate::arith::is_prime(g)
        && 4 * (g - 1) >= k * k.saturating_sub(1)
        && g - 1 >= (2 * k).saturating_sub(1)
}

/// Coefficients `M_j` of `β^j` in `u^k · P_k(1, β, 0) mod g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModularRun {
    pub k: u32,
    pub g: u64,
    pub unit: u64,
    /// `M_0, M_1, ...` up to the last nonzero residue.
    pub m: Vec<u64>,
    /// `3g - 3 - k(k+1)/2`.
    pub e: i64,
}

impl ModularRun {
    /// `M_j`, zero outside the stored range (negative `j` included).
    pub fn m_at(&self, j: i64) -> u64 {
        if j < 0 {
            return 0;
        }
        self.m.get(j as usize).copied().unwrap_or(0)
    }

    pub fn modulus(&self) -> Modulus {
        Modulus::new(self.g).expect("run modulus is an odd prime")
    }
}

/// Runs the `ĉ` determinant over `F_g[β]`. Needs `g > 2k` so all `ĉ_n` with `n <= 2k-1` exist.
pub fn mj_mod(k: u32, g: u64) -> Result<ModularRun> {
    if k < 1 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let modulus = Modulus::new(g)?;
    if g <= 2 * k as u64 {
        return Err(Error::Inapplicable { k, g });
    }
    let hat = pk_hat(k, g)?;
    let coeffs: Vec<ModN> = hat.poly.univariate_coeffs(Symbol::Beta)?;
    let m: Vec<u64> = coeffs.iter().map(|c| c.residue()).collect();
    debug_assert!(
        m.len() <= (k * k / 4) as usize + 1,
        "β-degree above the bound"
    );
    Ok(ModularRun {
        k,
        g,
        unit: scaling_unit(modulus).residue(),
        m,
        e: expected_dimension(g as u32, k),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionOutcome {
    pub criterion: CriterionId,
    pub ell: Option<u32>,
    pub residue: u64,
    pub indices: Vec<u64>,
    pub values: Vec<u64>,
}

impl CriterionOutcome {
    pub fn nonzero(&self) -> bool {
        self.residue != 0
    }
}

fn sum_at(
    run: &ModularRun,
    criterion: CriterionId,
    ell: Option<u32>,
    idx: &[i64],
) -> CriterionOutcome {
    let modulus = run.modulus();
    let indices: Vec<u64> = idx.iter().filter(|&&j| j >= 0).map(|&j| j as u64).collect();
    let values: Vec<u64> = indices.iter().map(|&j| run.m_at(j as i64)).collect();
    let residue = values
        .iter()
        .fold(ModN::zero(modulus), |acc, &v| acc + ModN::new(v, modulus))
        .residue();
    CriterionOutcome {
        criterion,
        ell,
        residue,
        indices,
        values,
    }
}

/// `M_0 + M_{(g-1)/2} + M_{g-1} mod g`.
pub fn criterion_e61(run: &ModularRun) -> CriterionOutcome {
    let g = run.g as i64;
    sum_at(run, CriterionId::E61, None, &[0, (g - 1) / 2, g - 1])
}

/// `M_{(g-1)/2 - ℓ} + M_{g-1-ℓ} mod g` for `1 <= ℓ <= ⌊e/2⌋`.
pub fn criterion_e62(run: &ModularRun, ell: u32) -> Result<CriterionOutcome> {
    let max = if run.e < 0 { 0 } else { run.e / 2 };
    if ell < 1 || ell as i64 > max {
        return Err(Error::InvalidArgument(format!(
            "ell must lie in 1..={max} for k = {}, g = {}, got {ell}",
            run.k, run.g
        )));
    }
    let g = run.g as i64;
    let l = ell as i64;
    Ok(sum_at(
        run,
        CriterionId::E62,
        Some(ell),
        &[(g - 1) / 2 - l, g - 1 - l],
    ))
}

/// First successful criterion in the fixed order e6.1, then e6.2 for `ℓ = 1, 2, ...`.
pub fn first_success(run: &ModularRun) -> Option<CriterionOutcome> {
    let first = criterion_e61(run);
    if first.nonzero() {
        return Some(first);
    }
    let max = if run.e < 0 { 0 } else { run.e / 2 };
    (1..=max as u32)
        .map(|l| criterion_e62(run, l).expect("ell within range"))
        .find(CriterionOutcome::nonzero)
}

pub fn certificate_from(run: &ModularRun, outcome: &CriterionOutcome) -> ModularCertificate {
    ModularCertificate {
        version: CERTIFICATE_SCHEMA_VERSION.to_string(),
        k: run.k,
        g0: run.g,
        unit: run.unit,
        criterion: outcome.criterion,
        ell: outcome.ell,
        witness_residue: outcome.residue,
        m_indices_used: outcome.indices.clone(),
        m_values_used: outcome.values.clone(),
        generated_by: TOOL_VERSION.to_string(),
    }
}

/// Modular certificate for `b_H(k) ≠ 0` in genus `g` (default `g'_k`).
///
/// `Ok(None)` means every criterion vanished, which proves nothing.
pub fn certify_mod(k: u32, g: Option<u64>) -> Result<Option<ModularCertificate>> {
    let g = g.unwrap_or_else(|| find_gpk(k));
    let run = mj_mod(k, g)?;
    if run.e < 0 {
        return Err(Error::NegativeExpectedDimension {
            g: g as u32,
            k,
            e: run.e,
        });
    }
    Ok(first_success(&run).map(|o| certificate_from(&run, &o)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn special_primes() {
        assert_eq!(find_gk(8), 17);
        assert_eq!(find_gk(9), 19);
        assert_eq!(find_gk(2), 3);
        assert_eq!(find_gpk(11), 23);
        assert_eq!(find_gpk(24), 101);
        assert_eq!(find_gpk(8), 13);
        assert_eq!(find_gpk(10), 23);
        assert_eq!(find_gpk(17), 53);
    }

    #[test]
    fn gate_examples() {
        assert!(prime_genus_gate(17, 8));
        assert!(!prime_genus_gate(13, 8));
        assert!(!prime_genus_gate(23, 11));
        assert!(!prime_genus_gate(15, 2));
    }

    #[test]
    fn residues_k3_g11() {
        let run = mj_mod(3, 11).unwrap();
        assert_eq!(run.m, vec![4, 2, 5]);
        assert_eq!(run.unit, 10);
        let c = criterion_e61(&run);
        assert_eq!((c.residue, c.nonzero()), (4, true));
        let c = criterion_e62(&run, 1).unwrap();
        assert_eq!((c.residue, c.nonzero()), (0, false));
        assert!(criterion_e62(&run, 0).is_err());
    }

    #[test]
    fn residues_k1_g5() {
        let run = mj_mod(1, 5).unwrap();
        assert_eq!(run.m, vec![4]);
    }

    #[test]
    fn inapplicable_primes() {
        assert!(matches!(
            mj_mod(8, 13),
            Err(Error::Inapplicable { k: 8, g: 13 })
        ));
        assert!(matches!(
            certify_mod(8, None),
            Err(Error::Inapplicable { .. })
        ));
        assert!(matches!(
            certify_mod(9, None),
            Err(Error::Inapplicable { k: 9, g: 17 })
        ));
        assert!(mj_mod(3, 9).is_err());
    }
}
