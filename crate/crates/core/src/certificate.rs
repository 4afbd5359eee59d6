//! Machine-readable non-vanishing certificates and their re-verification.

use serde::{Deserialize, Serialize};
use serde_with::{serde_as, DisplayFromStr};

use crate::arith::{format_rational, is_prime, parse_rational, ModN, Modulus};
use crate::chern::scaling_unit;
use crate::hecke::{expected_dimension, pairing_value, RationalPairing};
use crate::modcert::mj_mod;
use crate::poly::Monomial;
use crate::{Error, Result, TOOL_VERSION};

pub const CERTIFICATE_SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CriterionId {
    #[serde(rename = "e6.1")]
    E61,
    #[serde(rename = "e6.2")]
    E62,
    #[serde(rename = "pairing")]
    Pairing,
}

impl CriterionId {
    pub fn as_str(self) -> &'static str {
        match self {
            CriterionId::E61 => "e6.1",
            CriterionId::E62 => "e6.2",
            CriterionId::Pairing => "pairing",
        }
    }
}

#[serde_as]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModularCertificate {
    pub version: String,
    #[serde_as(as = "DisplayFromStr")]
    pub k: u32,
    #[serde_as(as = "DisplayFromStr")]
    pub g0: u64,
    #[serde_as(as = "DisplayFromStr")]
    pub unit: u64,
    pub criterion: CriterionId,
    #[serde_as(as = "Option<DisplayFromStr>")]
    pub ell: Option<u32>,
    #[serde_as(as = "DisplayFromStr")]
    pub witness_residue: u64,
    #[serde(rename = "M_indices_used")]
    #[serde_as(as = "Vec<DisplayFromStr>")]
    pub m_indices_used: Vec<u64>,
    #[serde(rename = "M_values_used")]
    #[serde_as(as = "Vec<DisplayFromStr>")]
    pub m_values_used: Vec<u64>,
    pub generated_by: String,
}

#[serde_as]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialExponents {
    #[serde_as(as = "DisplayFromStr")]
    pub alpha: u32,
    #[serde_as(as = "DisplayFromStr")]
    pub beta: u32,
    #[serde_as(as = "DisplayFromStr")]
    pub gamma: u32,
    #[serde_as(as = "DisplayFromStr")]
    pub h: u32,
}

impl From<Monomial> for MonomialExponents {
    fn from(m: Monomial) -> Self {
        let [h, alpha, beta, gamma] = m.0;
        MonomialExponents {
            alpha,
            beta,
            gamma,
            h,
        }
    }
}

impl From<&MonomialExponents> for Monomial {
    fn from(m: &MonomialExponents) -> Self {
        Monomial::new(m.h, m.alpha, m.beta, m.gamma)
    }
}

#[serde_as]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalCertificate {
    pub version: String,
    #[serde_as(as = "DisplayFromStr")]
    pub k: u32,
    #[serde_as(as = "DisplayFromStr")]
    pub g0: u32,
    pub criterion: CriterionId,
    pub monomial: MonomialExponents,
    /// Exact pairing value as `num/den`.
    pub value: String,
    pub generated_by: String,
}

impl RationalCertificate {
    pub fn from_pairing(p: &RationalPairing) -> Self {
        RationalCertificate {
            version: CERTIFICATE_SCHEMA_VERSION.to_string(),
            k: p.k,
            g0: p.g,
            criterion: CriterionId::Pairing,
            monomial: p.monomial.into(),
            value: format_rational(&p.value),
            generated_by: TOOL_VERSION.to_string(),
        }
    }
}

/// A certificate that `b_H(k) ≠ 0` in genus `g0`, and hence in every genus `g >= g0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Modular(ModularCertificate),
    Rational(RationalCertificate),
}

fn fail(msg: String) -> Error {
    Error::Verification(msg)
}

impl ModularCertificate {
    /// Checks the record against itself: the witness is the stated sum and is nonzero,
    /// and the indices are the ones the criterion prescribes.
    pub fn self_check(&self) -> Result<()> {
        let g = self.g0;
        if g < 3 || g % 2 == 0 || !is_prime(g) {
            return Err(fail(format!("g0 = {g} is not an odd prime")));
        }
        let modulus = Modulus::new(g)?;
        if self.unit != scaling_unit(modulus).residue() {
            return Err(fail(format!(
                "unit {} is not (g-1)!2^(g-1) mod {g}",
                self.unit
            )));
        }
        if self.witness_residue == 0 {
            return Err(fail("witness residue is zero".into()));
        }
        if self.m_indices_used.len() != self.m_values_used.len() {
            return Err(fail("index and value lists differ in length".into()));
        }
        let gi = g as i64;
        let expected: Vec<i64> = match (self.criterion, self.ell) {
            (CriterionId::E61, None) => vec![0, (gi - 1) / 2, gi - 1],
            (CriterionId::E62, Some(l)) if l >= 1 => {
                let l = l as i64;
                vec![(gi - 1) / 2 - l, gi - 1 - l]
            }
            (c, ell) => {
                return Err(fail(format!(
                    "criterion {} with ell {ell:?} is not a modular criterion",
                    c.as_str()
                )))
            }
        };
        let expected: Vec<u64> = expected
            .into_iter()
            .filter(|&j| j >= 0)
            .map(|j| j as u64)
            .collect();
        if expected != self.m_indices_used {
            return Err(fail(format!(
                "indices {:?} do not match the criterion, expected {expected:?}",
                self.m_indices_used
            )));
        }
        if self.m_values_used.iter().any(|&v| v >= g) {
            return Err(fail("residue not reduced".into()));
        }
        let sum = self
            .m_values_used
            .iter()
            .fold(ModN::zero(modulus), |acc, &v| acc + ModN::new(v, modulus));
        if sum.residue() != self.witness_residue {
            return Err(fail(format!(
                "values sum to {} but the witness is {}",
                sum.residue(),
                self.witness_residue
            )));
        }
        Ok(())
    }

    /// Self-check plus recomputation of the residues from scratch.
    pub fn verify(&self) -> Result<()> {
        self.self_check()?;
        let run = mj_mod(self.k, self.g0)?;
        if run.e < 0 {
            return Err(fail(format!("expected dimension {} is negative", run.e)));
        }
        if let Some(l) = self.ell {
            if l as i64 > run.e / 2 {
                return Err(fail(format!("ell = {l} exceeds e/2 = {}", run.e / 2)));
            }
        }
        for (&j, &v) in self.m_indices_used.iter().zip(&self.m_values_used) {
            let actual = run.m_at(j as i64);
            if actual != v {
                return Err(fail(format!(
                    "M_{j} recomputes to {actual}, certificate says {v}"
                )));
            }
        }
        Ok(())
    }
}

impl RationalCertificate {
    pub fn self_check(&self) -> Result<()> {
        if self.criterion != CriterionId::Pairing {
            return Err(fail(
                "rational certificates use the pairing criterion".into(),
            ));
        }
        let value = parse_rational(&self.value)?;
        if num_traits::Zero::is_zero(&value) {
            return Err(fail("pairing value is zero".into()));
        }
        let e = expected_dimension(self.g0, self.k);
        if e < 0 {
            return Err(fail(format!("expected dimension {e} is negative")));
        }
        let mono = Monomial::from(&self.monomial);
        if mono.half_degree() as i64 != e + 1 {
            return Err(fail(format!(
                "monomial has half-degree {} but the pairing needs {}",
                mono.half_degree(),
                e + 1
            )));
        }
        Ok(())
    }

    pub fn verify(&self) -> Result<()> {
        self.self_check()?;
        let actual = pairing_value(self.g0, self.k, Monomial::from(&self.monomial))?;
        let claimed = parse_rational(&self.value)?;
        if actual != claimed {
            return Err(fail(format!(
                "pairing recomputes to {}, certificate says {}",
                format_rational(&actual),
                self.value
            )));
        }
        Ok(())
    }
}

impl Certificate {
    pub fn k(&self) -> u32 {
        match self {
            Certificate::Modular(c) => c.k,
            Certificate::Rational(c) => c.k,
        }
    }

    pub fn g0(&self) -> u64 {
        match self {
            Certificate::Modular(c) => c.g0,
            Certificate::Rational(c) => c.g0 as u64,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Modular(_) => "modular",
            Certificate::Rational(_) => "rational",
        }
    }

    pub fn self_check(&self) -> Result<()> {
        match self {
            Certificate::Modular(c) => c.self_check(),
            Certificate::Rational(c) => c.self_check(),
        }
    }

    pub fn verify(&self) -> Result<()> {
        match self {
            Certificate::Modular(c) => c.verify(),
            Certificate::Rational(c) => c.verify(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s)
            .map_err(|e| Error::InvalidArgument(format!("bad certificate JSON: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modcert::certify_mod;

    #[test]
    fn modular_round_trip_and_tamper() {
        let cert = certify_mod(3, Some(11)).unwrap().unwrap();
        assert_eq!(cert.criterion, CriterionId::E61);
        assert_eq!(cert.witness_residue, 4);
        let wrapped = Certificate::Modular(cert.clone());
        let json = wrapped.to_json();
        assert!(json.contains("\"kind\": \"modular\""));
        assert!(json.contains("\"g0\": \"11\""));
        assert!(json.contains("\"criterion\": \"e6.1\""));
        assert!(json.contains("\"M_values_used\""));
        let back = Certificate::from_json(&json).unwrap();
        assert_eq!(back, wrapped);
        back.verify().unwrap();

        let mut bad = cert.clone();
        bad.witness_residue = 5;
        assert!(bad.self_check().is_err());
        let mut bad = cert.clone();
        bad.m_values_used[0] = 3;
        bad.witness_residue = 3;
        assert!(bad.self_check().is_ok());
        assert!(bad.verify().is_err());
    }
}
