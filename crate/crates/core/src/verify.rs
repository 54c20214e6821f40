//! Numerical verification of the twist/period relation, one pair at a time
//! or as a resumable batch scan.
//!
//! For `d > 0` the check is `Omega(E^d) / Omega(E) = u~ / sqrt(d)`.
//! For `d < 0` it is `|Omega(E^d) / Omega^-(E)| = (u~ / sqrt|d|) c_inf(E^d)`.
//! The sign is quotiented out because the imaginary period is only defined
//! up to sign.

use std::collections::HashSet;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::minimal::{compute_utilde, minimal_model_of_twist, minimize, CaseLabel, UTildeResult};
use crate::periods::{c_infinity, decimal_digits, imaginary_period, raw_model_period, Real};
use crate::twist::check_twist_parameter;
use crate::weierstrass::Model;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Outcome of one theorem check. `lhs` and `rhs` are decimal strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub curve: Model,
    pub d: i64,
    pub utilde: Rational,
    pub case_labels: Vec<CaseLabel>,
    pub lhs: String,
    pub rhs: String,
    pub abs_rel_error: f64,
    pub passed: bool,
    pub precision_bits: u32,
}

fn check_tolerance(tolerance: f64) -> Result<()> {
    if tolerance.is_finite() && tolerance > 0.0 {
        Ok(())
    } else {
        Err(Error::Precision(format!(
            "tolerance must be positive, got {tolerance}"
        )))
    }
}

/// Checks the period relation for `m` twisted by `d`.
pub fn verify_theorem(
    m: &Model,
    d: i64,
    precision_bits: u32,
    tolerance: f64,
) -> Result<VerificationReport> {
    check_twist_parameter(d)?;
    check_tolerance(tolerance)?;
    let base = minimize(m)?.minimal;
    let (reduced, utilde) = minimal_model_of_twist(&base, d)?;
    let omega_twist = raw_model_period(&reduced.minimal, precision_bits)?;
    let wp = omega_twist.precision();
    let root_d = Real::from_i64(d.abs(), wp).sqrt();
    let u = Real::from_rational(&utilde.utilde, wp);

    let (lhs, rhs) = if d > 0 {
        let omega = raw_model_period(&base, precision_bits)?;
        (&omega_twist / &omega, &u / &root_d)
    } else {
        let minus = imaginary_period(&base, precision_bits).map_err(|e| match e {
            Error::AmbiguousLattice { .. } => {
                Error::Precision(format!("imaginary period of {base}: {e}"))
            }
            other => other,
        })?;
        let c = c_infinity(&reduced.minimal)?;
        (
            (&omega_twist / &minus.value).abs(),
            &u / &root_d * i64::from(c),
        )
    };
    let abs_rel_error = ((&lhs - &rhs) / &rhs).abs().to_f64();
    let digits = decimal_digits(precision_bits);
    Ok(VerificationReport {
        curve: m.clone(),
        d,
        utilde: utilde.utilde.clone(),
        case_labels: utilde.case_labels(),
        lhs: lhs.to_decimal_string(digits),
        rhs: rhs.to_decimal_string(digits),
        abs_rel_error,
        passed: abs_rel_error <= tolerance,
        precision_bits,
    })
}

/// Which `(curve, d)` pairs get a full period verification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanFilter {
    /// Some odd prime divides `2 u~`.
    OddPrime,
    All,
}

impl ScanFilter {
    pub fn matches(self, u: &UTildeResult) -> bool {
        match self {
            ScanFilter::OddPrime => u.has_odd_prime_factor(),
            ScanFilter::All => true,
        }
    }
}

impl FromStr for ScanFilter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "odd-prime" => Ok(ScanFilter::OddPrime),
            "all" => Ok(ScanFilter::All),
            _ => Err(Error::Parse(format!(
                "unknown filter {s:?}; expected odd-prime or all"
            ))),
        }
    }
}

/// One line of a curve file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveRecord {
    pub model: Model,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CurveLine {
    Bare(Model),
    Text(String),
    Labelled { model: Model, label: Option<String> },
}

impl FromStr for CurveRecord {
    type Err = Error;

    /// Accepts a bare coefficient array, a quoted model string, or an object
    /// `{"model": [...], "label": "..."}`.
    fn from_str(line: &str) -> Result<Self> {
        let parsed: CurveLine =
            serde_json::from_str(line).map_err(|e| Error::Parse(format!("{line}: {e}")))?;
        Ok(match parsed {
            CurveLine::Bare(model) => CurveRecord { model, label: None },
            CurveLine::Text(s) => CurveRecord {
                model: s.parse()?,
                label: None,
            },
            CurveLine::Labelled { model, label } => CurveRecord { model, label },
        })
    }
}

/// Reads a JSON-lines curve file; blank lines and lines starting with `#`
/// are skipped.
pub fn read_curves(path: &Path) -> Result<Vec<CurveRecord>> {
    let reader = BufReader::new(File::open(path)?);
    let mut out = Vec::new();
    for (n, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        out.push(
            line.parse()
                .map_err(|e| Error::Parse(format!("{}:{}: {e}", path.display(), n + 1)))?,
        );
    }
    Ok(out)
}

/// One `(curve, d)` pair as written to the results file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRecord {
    /// Resume key: the model and `d`.
    pub key: String,
    pub index: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub curve: Model,
    pub d: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub utilde: Option<Rational>,
    /// Whether the filter selected this pair.
    pub hit: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<VerificationReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

pub fn scan_key(m: &Model, d: i64) -> String {
    format!("{m}|{d}")
}

#[derive(Clone, Copy, Debug)]
pub struct ScanConfig {
    pub filter: ScanFilter,
    pub precision_bits: u32,
    pub tolerance: f64,
    /// Pairs evaluated in parallel between two flushes of the results file.
    pub chunk_size: usize,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            filter: ScanFilter::OddPrime,
            precision_bits: crate::periods::DEFAULT_PRECISION_BITS,
            tolerance: DEFAULT_TOLERANCE,
            chunk_size: 64,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct ScanOutcome {
    /// Newly computed records, in input order.
    pub records: Vec<ScanRecord>,
    /// Pairs skipped because the results file already had them.
    pub skipped: usize,
}

impl ScanOutcome {
    pub fn hits(&self) -> impl Iterator<Item = &ScanRecord> {
        self.records.iter().filter(|r| r.hit)
    }
}

fn scan_pair(index: usize, curve: &CurveRecord, d: i64, config: &ScanConfig) -> ScanRecord {
    let mut rec = ScanRecord {
        key: scan_key(&curve.model, d),
        index,
        label: curve.label.clone(),
        curve: curve.model.clone(),
        d,
        utilde: None,
        hit: false,
        report: None,
        error: None,
    };
    let utilde = match compute_utilde(&curve.model, d) {
        Ok(u) => u,
        Err(e) => {
            rec.error = Some(e.to_string());
            return rec;
        }
    };
    rec.hit = config.filter.matches(&utilde);
    rec.utilde = Some(utilde.utilde);
    if rec.hit {
        match verify_theorem(&curve.model, d, config.precision_bits, config.tolerance) {
            Ok(r) => rec.report = Some(r),
            Err(e) => rec.error = Some(e.to_string()),
        }
    }
    rec
}

fn existing_keys(path: &Path) -> Result<HashSet<String>> {
    #[derive(Deserialize)]
    struct Key {
        key: String,
    }
    let mut keys = HashSet::new();
    if !path.exists() {
        return Ok(keys);
    }
    for line in BufReader::new(File::open(path)?).lines() {
        let line = line?;
        // a torn final line from an interrupted run is simply recomputed
        if let Ok(k) = serde_json::from_str::<Key>(&line) {
            keys.insert(k.key);
        }
    }
    Ok(keys)
}

/// Runs every `(curve, d)` pair. Pairs are numbered curve-major and results
/// come back in that order regardless of scheduling. With `results`, each
/// finished chunk is appended as JSON lines, and pairs whose key is already
/// in the file are skipped.
pub fn scan(
    curves: &[CurveRecord],
    ds: &[i64],
    config: &ScanConfig,
    results: Option<&Path>,
) -> Result<ScanOutcome> {
    for &d in ds {
        check_twist_parameter(d)?;
    }
    check_tolerance(config.tolerance)?;
    let done = match results {
        Some(p) => existing_keys(p)?,
        None => HashSet::new(),
    };
    let mut writer = match results {
        Some(p) => Some(BufWriter::new(
            OpenOptions::new().create(true).append(true).open(p)?,
        )),
        None => None,
    };

    let mut outcome = ScanOutcome::default();
    let mut pending = Vec::new();
    for (ci, curve) in curves.iter().enumerate() {
        for (di, &d) in ds.iter().enumerate() {
            if done.contains(&scan_key(&curve.model, d)) {
                outcome.skipped += 1;
            } else {
                pending.push((ci * ds.len() + di, curve, d));
            }
        }
    }

    for chunk in pending.chunks(config.chunk_size.max(1)) {
        let records: Vec<ScanRecord> = chunk
            .par_iter()
            .map(|&(index, curve, d)| scan_pair(index, curve, d, config))
            .collect();
        if let Some(w) = writer.as_mut() {
            for r in &records {
                serde_json::to_writer(&mut *w, r).map_err(|e| Error::Io(e.to_string()))?;
                w.write_all(b"\n")?;
            }
            w.flush()?;
        }
        outcome.records.extend(records);
    }
    Ok(outcome)
}
