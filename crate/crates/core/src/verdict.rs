//! Brill-Noether numerology and the decision engine for `b_H(k) ≠ 0` and `B(2,K,k) ≠ ∅`.
//!
//! Class rules, in order: exception table, negative expected dimension, a certificate at
//! `g`, genus monotonicity from a certified (or tabulated) smaller genus, trusted gates.
//! Locus rules are chosen at the weakest curve hypothesis that settles the question.

use std::collections::HashMap;
use std::fmt;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use crate::arith::is_prime;
use crate::certificate::{Certificate, RationalCertificate};
use crate::hecke::{rational_certificate, PairingSearch};
use crate::modcert::{certify_mod, find_gk, find_gpk, prime_genus_gate};
use crate::store::{certificate_ref, Store};
use crate::{Error, Result};

/// `β(2,K,k) = 3g - 3 - k(k+1)/2`.
pub fn beta_rank2(g: u32, k: u32) -> i64 {
    3 * g as i64 - 3 - (k as i64) * (k as i64 + 1) / 2
}

/// `β(1,d,k) = g - k(k - d + g - 1)`.
pub fn beta_rank1(g: u32, d: i64, k: i64) -> i64 {
    g as i64 - k * (k - d + g as i64 - 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ClassStatus {
    Nonzero,
    Zero,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LocusStatus {
    Nonempty,
    Empty,
    Unknown,
}

/// Curve hypotheses, weakest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Assumption {
    AnyCurve,
    Petri,
    General,
}

impl Assumption {
    pub fn as_str(self) -> &'static str {
        match self {
            Assumption::AnyCurve => "any_curve",
            Assumption::Petri => "petri",
            Assumption::General => "general",
        }
    }
}

impl FromStr for Assumption {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "any" | "any_curve" => Ok(Assumption::AnyCurve),
            "petri" => Ok(Assumption::Petri),
            "general" => Ok(Assumption::General),
            _ => Err(Error::InvalidArgument(format!("unknown assumption {s:?}"))),
        }
    }
}

macro_rules! display_via_serde {
    ($($t:ty),*) => {$(
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let v = serde_json::to_value(self).expect("unit enum serializes");
                f.write_str(v.as_str().expect("unit enum is a string"))
            }
        }
    )*};
}
display_via_serde!(ClassStatus, LocusStatus, Assumption);

/// Rule identifiers used in witness chains.
pub mod rules {
    pub const EXCEPTION: &str = "exception-table";
    pub const NEGATIVE_DIMENSION: &str = "negative-expected-dimension";
    pub const MODULAR: &str = "modular-certificate";
    pub const RATIONAL: &str = "rational-certificate";
    pub const MONOTONICITY: &str = "genus-monotonicity";
    pub const LARGE_GENUS: &str = "large-genus-gate";
    pub const PRIME_GENUS: &str = "prime-genus-gate";
    pub const PRIME_GENUS_NINETEEN: &str = "prime-genus-nineteen-gate";
    pub const SMALLEST_PRIME: &str = "smallest-prime-gate";
    pub const COMPUTED_RANGE: &str = "computed-range-gate";
    pub const PETRI_TRANSFER: &str = "petri-transfer";
    pub const SMALL_K_GENERAL: &str = "small-k-general";
    pub const QUADRATIC_GENUS: &str = "quadratic-genus-bound";
    pub const NONE: &str = "none";
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub rule: String,
    pub certificate_ref: Option<String>,
}

/// Dimension bounds for `B(2,K(p),k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TwistedBounds {
    /// Every component has dimension at least `β + 1` once the class is nonzero.
    pub lower: i64,
    pub lower_applicable: bool,
    /// `dim <= β + k` on a general curve with `g >= 3`, `k >= 2`.
    pub upper: i64,
    pub upper_applicable: bool,
}

pub fn twisted_bounds(g: u32, k: u32, class: ClassStatus, mode: Assumption) -> TwistedBounds {
    let beta = beta_rank2(g, k);
    TwistedBounds {
        lower: beta + 1,
        lower_applicable: class == ClassStatus::Nonzero,
        upper: beta + k as i64,
        upper_applicable: mode == Assumption::General && g >= 3 && k >= 2,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub g: u32,
    pub k: u32,
    #[serde(rename = "beta2Kk")]
    pub beta2kk: i64,
    pub class_status: ClassStatus,
    pub locus_status: LocusStatus,
    pub assumption: Assumption,
    pub witness: Witness,
    pub twisted_bounds: TwistedBounds,
}

#[derive(Debug, Clone)]
pub struct DecideOptions {
    /// Strongest curve hypothesis the caller accepts.
    pub mode: Assumption,
    /// Rational pairings are attempted only up to this `k` (trivariate `P_k` cost).
    pub rational_max_k: u32,
    pub rational_budget: usize,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            mode: Assumption::Petri,
            rational_max_k: 4,
            rational_budget: 64,
        }
    }
}

impl DecideOptions {
    pub fn with_mode(mode: Assumption) -> Self {
        DecideOptions {
            mode,
            ..Default::default()
        }
    }
}

struct ExceptionEntry {
    class: ClassStatus,
    locus: LocusStatus,
    locus_level: Assumption,
}

fn exception(g: u32, k: u32) -> Option<ExceptionEntry> {
    use Assumption::*;
    let entry = |class, locus, locus_level| {
        Some(ExceptionEntry {
            class,
            locus,
            locus_level,
        })
    };
    match (g, k) {
        (2, 1) => entry(ClassStatus::Nonzero, LocusStatus::Nonempty, AnyCurve),
        (2, 2) => entry(ClassStatus::Nonzero, LocusStatus::Empty, AnyCurve),
        (2, _) => entry(ClassStatus::Zero, LocusStatus::Empty, AnyCurve),
        (3, 4) => entry(ClassStatus::Zero, LocusStatus::Empty, General),
        (4, 4) => entry(ClassStatus::Nonzero, LocusStatus::Empty, Petri),
        _ => None,
    }
}

/// Smallest genus where the exception table itself records a nonzero class.
fn exception_base(k: u32) -> Option<u32> {
    match k {
        1 | 2 => Some(2),
        4 => Some(4),
        _ => None,
    }
}

#[derive(Debug, Clone)]
struct Found {
    rule: &'static str,
    cert_ref: Option<String>,
}

/// Stateful evaluator: remembers, per `k`, how far up the genus axis certificates were sought.
pub struct Engine<'a> {
    options: DecideOptions,
    store: Option<&'a Store>,
    direct: HashMap<(u32, u32), Option<Found>>,
}

impl<'a> Engine<'a> {
    pub fn new(options: DecideOptions, store: Option<&'a Store>) -> Self {
        Engine {
            options,
            store,
            direct: HashMap::new(),
        }
    }

    pub fn options(&self) -> &DecideOptions {
        &self.options
    }

    fn record(&self, cert: Certificate) -> Result<String> {
        match self.store {
            Some(s) => s.put_certificate(&cert),
            None => Ok(certificate_ref(&cert)),
        }
    }

    /// A certificate of `b_H(k) ≠ 0` in genus exactly `g`, if one of the computable criteria finds it.
    fn certificate_at(&mut self, g: u32, k: u32) -> Result<Option<Found>> {
        if let Some(hit) = self.direct.get(&(g, k)) {
            return Ok(hit.clone());
        }
        let mut found = None;
        if beta_rank2(g, k) >= 0 {
            if g as u64 > 2 * k as u64 && g % 2 == 1 && is_prime(g as u64) {
                let cached = match self.store {
                    Some(s) => s.get_certificate(&format!("cert-mod-k{k}-g{g}"))?,
                    None => None,
                };
                let hit = match cached {
                    Some((hash, _)) => Some(hash),
                    None => match certify_mod(k, Some(g as u64))? {
                        Some(c) => Some(self.record(Certificate::Modular(c))?),
                        None => None,
                    },
                };
                found = hit.map(|r| Found {
                    rule: rules::MODULAR,
                    cert_ref: Some(r),
                });
            }
            if found.is_none() && k <= self.options.rational_max_k && g >= 2 {
                let cached = match self.store {
                    Some(s) => s.get_certificate(&format!("cert-rat-k{k}-g{g}"))?,
                    None => None,
                };
                let hit = match cached {
                    Some((hash, _)) => Some(hash),
                    None => match rational_certificate(g, k, self.options.rational_budget)? {
                        PairingSearch::Found(p) => Some(self.record(Certificate::Rational(
                            RationalCertificate::from_pairing(&p),
                        ))?),
                        PairingSearch::Exhausted { .. } => None,
                    },
                };
                found = hit.map(|r| Found {
                    rule: rules::RATIONAL,
                    cert_ref: Some(r),
                });
            }
        }
        self.direct.insert((g, k), found.clone());
        Ok(found)
    }

    /// Smallest certified or tabulated genus `g0 < g` with a nonzero class.
    fn base_below(&mut self, g: u32, k: u32) -> Result<Option<Found>> {
        let table = exception_base(k).filter(|&b| b < g);
        let start = 3u32;
        for c in start..g {
            if table.is_some_and(|b| b <= c) {
                break;
            }
            if let Some(f) = self.certificate_at(c, k)? {
                return Ok(Some(f));
            }
        }
        Ok(table.map(|_| Found {
            rule: rules::EXCEPTION,
            cert_ref: None,
        }))
    }

    fn gate(&self, g: u32, k: u32) -> Option<&'static str> {
        let (g64, k64) = (g as u64, k as u64);
        if 2 * g64 >= k64 * (k64 + 1) + 4 {
            return Some(rules::LARGE_GENUS);
        }
        if prime_genus_gate(g64, k) {
            return Some(rules::PRIME_GENUS);
        }
        if g >= 19 && is_prime(g64) && 4 * (g64 - 1) >= k64 * (k64.saturating_sub(1)) {
            return Some(rules::PRIME_GENUS_NINETEEN);
        }
        if k >= 8 && g64 >= find_gk(k) {
            return Some(rules::SMALLEST_PRIME);
        }
        if (10..=24).contains(&k) && g64 >= find_gpk(k) {
            return Some(rules::COMPUTED_RANGE);
        }
        None
    }

    /// A gate satisfied at some genus `g0 <= g`, combined with monotonicity when `g0 < g`.
    fn gate_at_or_below(&self, g: u32, k: u32) -> Option<(String, bool)> {
        if let Some(rule) = self.gate(g, k) {
            return Some((rule.to_string(), false));
        }
        (3..g)
            .find_map(|c| self.gate(c, k))
            .map(|rule| (rule.to_string(), true))
    }

    pub fn decide(&mut self, g: u32, k: u32) -> Result<Verdict> {
        if g < 2 || k < 1 {
            return Err(Error::InvalidArgument(format!(
                "need g >= 2 and k >= 1, got ({g}, {k})"
            )));
        }
        let mode = self.options.mode;
        let beta = beta_rank2(g, k);
        let finish = |class, locus, assumption, rule: String, cert_ref| Verdict {
            g,
            k,
            beta2kk: beta,
            class_status: class,
            locus_status: locus,
            assumption,
            witness: Witness {
                rule,
                certificate_ref: cert_ref,
            },
            twisted_bounds: twisted_bounds(g, k, class, mode),
        };

        if let Some(ex) = exception(g, k) {
            let (locus, assumption) = if ex.locus_level <= mode {
                (ex.locus, ex.locus_level)
            } else {
                (LocusStatus::Unknown, Assumption::AnyCurve)
            };
            return Ok(finish(
                ex.class,
                locus,
                assumption,
                rules::EXCEPTION.to_string(),
                None,
            ));
        }

        if beta < 0 {
            return Ok(if mode >= Assumption::General {
                finish(
                    ClassStatus::Unknown,
                    LocusStatus::Empty,
                    Assumption::General,
                    rules::NEGATIVE_DIMENSION.to_string(),
                    None,
                )
            } else {
                finish(
                    ClassStatus::Unknown,
                    LocusStatus::Unknown,
                    mode,
                    rules::NONE.to_string(),
                    None,
                )
            });
        }

        let mut class_rule: Option<String> = None;
        let mut cert_ref = None;
        if let Some(f) = self.certificate_at(g, k)? {
            class_rule = Some(f.rule.to_string());
            cert_ref = f.cert_ref;
        } else if let Some(f) = self.base_below(g, k)? {
            class_rule = Some(format!("{}+{}", f.rule, rules::MONOTONICITY));
            cert_ref = f.cert_ref;
        } else if let Some((rule, shifted)) = self.gate_at_or_below(g, k) {
            class_rule = Some(if shifted {
                format!("{rule}+{}", rules::MONOTONICITY)
            } else {
                rule
            });
        }
        let class = if class_rule.is_some() {
            ClassStatus::Nonzero
        } else {
            ClassStatus::Unknown
        };

        // locus candidates, weakest hypothesis first
        let mut locus: Option<(Assumption, &'static str)> = None;
        let large = 2 * g as u64 >= k as u64 * (k as u64 + 1) + 4;
        let petri_ok = class == ClassStatus::Nonzero && !matches!((g, k), (2, 2) | (4, 4));
        let general_small_k = k <= 7 && g >= 3;
        let general_quadratic = g >= 3 && 4 * g as u64 >= (k as u64) * (k as u64);
        if large {
            locus = Some((Assumption::AnyCurve, rules::LARGE_GENUS));
        } else if petri_ok && mode >= Assumption::Petri {
            locus = Some((Assumption::Petri, rules::PETRI_TRANSFER));
        } else if mode >= Assumption::General && general_small_k {
            locus = Some((Assumption::General, rules::SMALL_K_GENERAL));
        } else if mode >= Assumption::General && general_quadratic {
            locus = Some((Assumption::General, rules::QUADRATIC_GENUS));
        }

        let rule = match (&class_rule, locus) {
            (Some(c), Some((_, l)))
                if l != rules::LARGE_GENUS || !c.starts_with(rules::LARGE_GENUS) =>
            {
                format!("{c}+{l}")
            }
            (Some(c), _) => c.clone(),
            (None, Some((_, l))) => l.to_string(),
            (None, None) => rules::NONE.to_string(),
        };
        Ok(match locus {
            Some((level, _)) => finish(class, LocusStatus::Nonempty, level, rule, cert_ref),
            None if class == ClassStatus::Nonzero => finish(
                class,
                LocusStatus::Unknown,
                Assumption::AnyCurve,
                rule,
                cert_ref,
            ),
            None => finish(class, LocusStatus::Unknown, mode, rule, cert_ref),
        })
    }
}

/// One-shot decision with a fresh engine.
pub fn decide(g: u32, k: u32, options: &DecideOptions) -> Result<Verdict> {
    Engine::new(options.clone(), None).decide(g, k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

impl FromStr for TableFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            _ => Err(Error::InvalidArgument(format!("unknown format {s:?}"))),
        }
    }
}

pub const CSV_HEADER: &str =
    "g,k,beta,class_status,locus_status,assumption,witness_rule,certificate_ref";

/// Verdicts for the grid, ordered by `(k, g)`.
pub fn decide_grid(
    g_range: RangeInclusive<u32>,
    k_range: RangeInclusive<u32>,
    options: &DecideOptions,
    store: Option<&Store>,
) -> Result<Vec<Verdict>> {
    let mut engine = Engine::new(options.clone(), store);
    let mut out = Vec::new();
    for k in k_range {
        for g in g_range.clone() {
            out.push(engine.decide(g, k)?);
        }
    }
    Ok(out)
}

pub fn render_table(verdicts: &[Verdict], format: TableFormat) -> String {
    match format {
        TableFormat::Csv => {
            let mut s = String::from(CSV_HEADER);
            s.push('\n');
            for v in verdicts {
                s.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    v.g,
                    v.k,
                    v.beta2kk,
                    v.class_status,
                    v.locus_status,
                    v.assumption,
                    v.witness.rule,
                    v.witness.certificate_ref.as_deref().unwrap_or("")
                ));
            }
            s
        }
        TableFormat::Json => {
            let mut s = serde_json::to_string_pretty(verdicts).expect("verdicts serialize");
            s.push('\n');
            s
        }
    }
}

/// Decides the grid and writes the table to `out` (or returns it when `out` is `None`).
pub fn emit_table(
    g_range: RangeInclusive<u32>,
    k_range: RangeInclusive<u32>,
    format: TableFormat,
    options: &DecideOptions,
    store: Option<&Store>,
    out: Option<&Path>,
) -> Result<String> {
    if g_range.is_empty() || k_range.is_empty() || *g_range.start() < 2 || *k_range.start() < 1 {
        return Err(Error::InvalidArgument(format!(
            "need nonempty ranges with g >= 2 and k >= 1, got g {g_range:?}, k {k_range:?}"
        )));
    }
    let text = render_table(&decide_grid(g_range, k_range, options, store)?, format);
    if let Some(path) = out {
        let io = |source| Error::Io {
            path: path.to_path_buf(),
            source,
        };
        let mut f = std::fs::File::create(path).map_err(io)?;
        f.write_all(text.as_bytes()).map_err(io)?;
    }
    Ok(text)
}
