//! Verification suites: run configuration, check reports and spectrum
//! dumps.
//!
//! Every check is independent. Suites run their checks on the rayon pool
//! and sort the results by `check_id`, and every random sample comes from a
//! ChaCha stream seeded by `(seed, check_id)`, so a report depends only on
//! its configuration.

mod algebra;
mod bimodules;
mod duality;
mod groupoids;
mod ktheory;
mod oscillator;

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::scalars::check_irrational;

/// `(√5 − 1)/2`, the default rotation number.
pub const GOLDEN: f64 = 0.618_033_988_749_894_9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Truncation {
    /// Hermite functions per graded half of `d_λ`.
    #[serde(rename = "L")]
    pub l: usize,
    /// Lattice half-width `|m|, |n| ≤ K` for the torus representations and
    /// the Dolbeault operator.
    #[serde(rename = "K")]
    pub k: usize,
    /// Fourier modes `|m| ≤ Mₜ` of the random bimodule test data.
    pub modes: i64,
    /// Slot window `|k| ≤ Kz` of the random bimodule test data.
    pub z_window: i64,
    /// Nodes of the finite-difference oracle grid.
    pub grid_nodes: usize,
    /// Half-width `R` of the quadrature interval for bimodule inner
    /// products.
    #[serde(rename = "R")]
    pub radius: f64,
}

impl Default for Truncation {
    fn default() -> Self {
        Self { l: 64, k: 8, modes: 2, z_window: 2, grid_nodes: 1024, radius: 16.0 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub exact: f64,
    pub quadrature: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { exact: 1e-10, quadrature: 1e-6 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub theta: f64,
    pub b: i64,
    /// Coupling `λ` of the oscillator checks and spectra.
    pub lambda: f64,
    pub trunc: Truncation,
    pub tol: Tolerances,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { theta: GOLDEN, b: 2, lambda: 1.0, trunc: Truncation::default(), tol: Tolerances::default(), seed: 0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Algebra,
    Oscillator,
    Groupoids,
    Bimodules,
    Duality,
    Ktheory,
    All,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Algebra, Suite::Oscillator, Suite::Groupoids, Suite::Bimodules, Suite::Duality, Suite::Ktheory];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Oscillator => "oscillator",
            Suite::Groupoids => "groupoids",
            Suite::Bimodules => "bimodules",
            Suite::Duality => "duality",
            Suite::Ktheory => "ktheory",
            Suite::All => "all",
        }
    }

    fn needs_nonzero_b(self) -> bool {
        matches!(self, Suite::Bimodules | Suite::Duality | Suite::All)
    }

    fn jobs(self) -> Vec<Job> {
        match self {
            Suite::Algebra => algebra::jobs(),
            Suite::Oscillator => oscillator::jobs(),
            Suite::Groupoids => groupoids::jobs(),
            Suite::Bimodules => bimodules::jobs(),
            Suite::Duality => duality::jobs(),
            Suite::Ktheory => ktheory::jobs(),
            Suite::All => Suite::ALL.iter().flat_map(|s| s.jobs()).collect(),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::ConfigInvalid(format!("unknown suite {s:?}")))
    }
}

impl RunConfig {
    /// Rejects configurations no suite can run meaningfully.
    pub fn validate(&self, suite: Suite) -> Result<()> {
        check_irrational(self.theta)?;
        if suite.needs_nonzero_b() && self.b == 0 {
            return Err(Error::ConfigInvalid(format!("suite {suite} needs b != 0")));
        }
        let t = &self.trunc;
        if t.l < 2 || t.k == 0 || t.grid_nodes < 16 || t.modes < 0 || t.z_window < 0 {
            return Err(Error::ConfigInvalid(format!(
                "empty truncation: need L >= 2, K >= 1, grid >= 16 (got L={}, K={}, grid={})",
                t.l, t.k, t.grid_nodes
            )));
        }
        if !(t.radius.is_finite() && t.radius > 0.0) {
            return Err(Error::ConfigInvalid(format!("R must be positive, got {}", t.radius)));
        }
        if !(self.tol.exact > 0.0 && self.tol.quadrature > 0.0) {
            return Err(Error::ConfigInvalid("tolerances must be positive".into()));
        }
        if matches!(suite, Suite::Oscillator | Suite::All) && !(self.lambda.is_finite() && self.lambda != 0.0) {
            return Err(Error::ConfigInvalid("lambda must be finite and nonzero".into()));
        }
        Ok(())
    }

    /// Random stream for one check.
    fn rng(&self, check_id: &str) -> ChaCha8Rng {
        // FNV-1a, so the stream does not depend on the hasher's seed
        let salt = check_id.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, c| (h ^ c as u64).wrapping_mul(0x100_0000_01b3));
        ChaCha8Rng::seed_from_u64(self.seed ^ salt)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub check_id: String,
    pub paper_anchor: String,
    pub params: Value,
    pub max_error: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub config: RunConfig,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialise") + "\n"
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["check_id", "paper_anchor", "params", "max_error", "tolerance", "pass", "error"])
            .expect("in-memory write");
        for c in &self.checks {
            w.write_record([
                c.check_id.as_str(),
                c.paper_anchor.as_str(),
                &c.params.to_string(),
                &format!("{:e}", c.max_error),
                &format!("{:e}", c.tolerance),
                if c.pass { "true" } else { "false" },
                c.error.as_deref().unwrap_or(""),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
    }
}

/// What a check measured.
pub(crate) struct Outcome {
    max_error: f64,
    tolerance: f64,
    params: Value,
    holds: bool,
}

impl Outcome {
    /// Passes when `max_error ≤ tolerance`.
    fn within(max_error: f64, tolerance: f64, params: Value) -> Self {
        Self { max_error, tolerance, params, holds: max_error <= tolerance }
    }

    /// Passes when nothing failed; `max_error` is the failure count.
    fn exact(failures: usize, params: Value) -> Self {
        Self { max_error: failures as f64, tolerance: 0.0, params, holds: failures == 0 }
    }

    /// Adds a side condition that must also hold.
    fn and(mut self, ok: bool) -> Self {
        self.holds &= ok;
        self
    }
}

pub(crate) struct Job {
    id: &'static str,
    anchor: &'static str,
    run: fn(&RunConfig, &mut ChaCha8Rng) -> Result<Outcome>,
}

const fn job(id: &'static str, anchor: &'static str, run: fn(&RunConfig, &mut ChaCha8Rng) -> Result<Outcome>) -> Job {
    Job { id, anchor, run }
}

fn execute(job: &Job, cfg: &RunConfig) -> Check {
    let mut rng = cfg.rng(job.id);
    let (max_error, tolerance, params, pass, error) = match (job.run)(cfg, &mut rng) {
        Ok(o) => (o.max_error, o.tolerance, o.params, o.holds && o.max_error.is_finite(), None),
        Err(e) => (f64::INFINITY, 0.0, Value::Null, false, Some(e.to_string())),
    };
    Check { check_id: job.id.into(), paper_anchor: job.anchor.into(), params, max_error, tolerance, pass, error }
}

/// Runs a suite. `ConfigInvalid` is the only error; failing checks are
/// reported, not raised.
pub fn run_suite(suite: Suite, cfg: &RunConfig) -> Result<Report> {
    cfg.validate(suite)?;
    let mut checks: Vec<Check> = suite.jobs().par_iter().map(|j| execute(j, cfg)).collect();
    checks.sort_by(|a, b| a.check_id.cmp(&b.check_id));
    Ok(Report { suite: suite.name().into(), config: cfg.clone(), checks })
}

/// Check ids of a suite, sorted.
pub fn check_ids(suite: Suite) -> Vec<&'static str> {
    let mut ids: Vec<&'static str> = suite.jobs().iter().map(|j| j.id).collect();
    ids.sort_unstable();
    ids
}

/// Runs a single check by id.
pub fn run_check(check_id: &str, cfg: &RunConfig) -> Result<Check> {
    let jobs = Suite::All.jobs();
    let job = jobs
        .iter()
        .find(|j| j.id == check_id)
        .ok_or_else(|| Error::ConfigInvalid(format!("unknown check {check_id:?}")))?;
    Ok(execute(job, cfg))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumTarget {
    DLambda,
    DDolbeault,
    DSquared,
}

impl FromStr for SpectrumTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "d_lambda" => Ok(Self::DLambda),
            "d_dolbeault" => Ok(Self::DDolbeault),
            "d_squared" => Ok(Self::DSquared),
            _ => Err(Error::ConfigInvalid(format!("unknown spectrum target {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumRow {
    pub label: String,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Spectrum {
    pub target: SpectrumTarget,
    pub config: RunConfig,
    pub rows: Vec<SpectrumRow>,
}

impl Spectrum {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spectra serialise") + "\n"
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["label", "value"]).expect("in-memory write");
        for r in &self.rows {
            w.write_record([r.label.as_str(), &format!("{}", r.value)]).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
    }
}

/// Sorted eigenvalues of the target operator on the configured truncation,
/// each labelled by the basis vector it comes from.
///
/// `d_lambda` and `d_squared` use `λ` and `L`; `d_dolbeault` uses
/// `L × K` lattice half-widths.
pub fn emit_spectrum(target: SpectrumTarget, cfg: &RunConfig) -> Result<Spectrum> {
    let (lambda, l, k) = (cfg.lambda, cfg.trunc.l, cfg.trunc.k);
    if l == 0 || (target == SpectrumTarget::DDolbeault && k == 0) {
        return Err(Error::ConfigInvalid("empty truncation".into()));
    }
    if target != SpectrumTarget::DDolbeault && !(lambda.is_finite() && lambda != 0.0) {
        return Err(Error::ConfigInvalid("lambda must be finite and nonzero".into()));
    }
    let mut rows = match target {
        SpectrumTarget::DLambda => {
            if l < 2 {
                return Err(Error::ConfigInvalid("d_lambda needs L >= 2".into()));
            }
            let d = crate::oscillator::d_lambda_matrix(lambda, 0.0, l)?;
            d.eigenvalues()
                .into_iter()
                .map(|v| {
                    // ±√(2|λ|n) pairs ψ_n with ψ_{n−1}; zero is the kernel vector
                    let n = (v * v / (2.0 * lambda.abs())).round() as i64;
                    let sign = if n == 0 { "0" } else if v > 0.0 { "+" } else { "-" };
                    SpectrumRow { label: format!("n={n} {sign}"), value: v }
                })
                .collect::<Vec<_>>()
        }
        SpectrumTarget::DSquared => {
            let (top, bottom) = crate::oscillator::d_squared_spectrum(lambda, l);
            let label = |half: &str, i: usize| format!("{half} psi_{i}");
            top.iter()
                .enumerate()
                .map(|(i, &v)| SpectrumRow { label: label("even", i), value: v })
                .chain(bottom.iter().enumerate().map(|(i, &v)| SpectrumRow { label: label("odd", i), value: v }))
                .collect()
        }
        SpectrumTarget::DDolbeault => {
            // d_Δ is odd with diagonal blocks 2π(n ± im), so its spectrum is
            // ±2π√(m² + n²) on z^m ⊗ ε_n; read from the matrix, not the formula
            let d = crate::nc_torus::nct_dolbeault(l, k);
            let half = d.dim() / 2;
            let mut rows = Vec::with_capacity(d.dim());
            for i in 0..half {
                let (m, n) = crate::operator::lattice_coords(i, l, k);
                let s = d.entries[(half + i, i)].norm();
                rows.push(SpectrumRow { label: format!("m={m} n={n} +"), value: s });
                rows.push(SpectrumRow { label: format!("m={m} n={n} -"), value: -s });
            }
            let eig = d.eigenvalues();
            let mut from_rows: Vec<f64> = rows.iter().map(|r| r.value).collect();
            from_rows.sort_by(f64::total_cmp);
            debug_assert!(eig.iter().zip(&from_rows).all(|(a, b)| (a - b).abs() < 1e-9 * (1.0 + 2.0 * PI * k as f64)));
            rows
        }
    };
    rows.sort_by(|a, b| a.value.total_cmp(&b.value).then_with(|| a.label.cmp(&b.label)));
    Ok(Spectrum { target, config: cfg.clone(), rows })
}

pub(crate) fn params(pairs: &[(&str, Value)]) -> Value {
    Value::Object(pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect())
}

/// `BTreeMap` helper for exact-count checks grouped by label.
pub(crate) fn count_map(entries: impl IntoIterator<Item = (String, usize)>) -> (usize, Value) {
    let map: BTreeMap<String, usize> = entries.into_iter().collect();
    let total = map.values().sum();
    (total, serde_json::to_value(map).expect("counts serialise"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        let cfg = RunConfig::default();
        assert!(cfg.validate(Suite::All).is_ok());
        let zero_b = RunConfig { b: 0, ..cfg.clone() };
        assert!(matches!(zero_b.validate(Suite::Duality), Err(Error::ConfigInvalid(_))));
        assert!(zero_b.validate(Suite::Oscillator).is_ok());
        let rational = RunConfig { theta: 0.5, ..cfg.clone() };
        assert!(matches!(rational.validate(Suite::Ktheory), Err(Error::ConfigInvalid(_))));
        let empty = RunConfig { trunc: Truncation { l: 0, ..Truncation::default() }, ..cfg };
        assert!(matches!(empty.validate(Suite::Algebra), Err(Error::ConfigInvalid(_))));
    }

    #[test]
    fn suite_names_roundtrip() {
        for s in Suite::ALL.into_iter().chain([Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn check_ids_are_unique() {
        let ids = check_ids(Suite::All);
        let mut dedup = ids.clone();
        dedup.dedup();
        assert_eq!(ids, dedup);
        for s in Suite::ALL {
            assert!(check_ids(s).iter().all(|id| id.starts_with(s.name())));
        }
    }

    #[test]
    fn d_squared_rows() {
        let cfg = RunConfig { trunc: Truncation { l: 4, ..Truncation::default() }, ..RunConfig::default() };
        let s = emit_spectrum(SpectrumTarget::DSquared, &cfg).unwrap();
        let v: Vec<i64> = s.rows.iter().map(|r| r.value.round() as i64).collect();
        assert_eq!(v, vec![0, 2, 2, 4, 4, 6, 6, 8]);
        assert!(s.to_csv().starts_with("label,value\n"));
    }

    #[test]
    fn dolbeault_rows() {
        let cfg = RunConfig { trunc: Truncation { l: 2, k: 2, ..Truncation::default() }, ..RunConfig::default() };
        let s = emit_spectrum(SpectrumTarget::DDolbeault, &cfg).unwrap();
        let mut nonneg: Vec<f64> = s.rows.iter().filter(|r| r.label.ends_with('+')).map(|r| r.value / (2.0 * PI)).collect();
        nonneg.sort_by(f64::total_cmp);
        assert_eq!(nonneg[0], 0.0);
        assert!((nonneg[1] - 1.0).abs() < 1e-12 && (nonneg[4] - 1.0).abs() < 1e-12);
        assert!((nonneg[5] - 2f64.sqrt()).abs() < 1e-12);
        let empty = RunConfig { trunc: Truncation { k: 0, ..cfg.trunc }, ..cfg };
        assert!(emit_spectrum(SpectrumTarget::DDolbeault, &empty).is_err());
    }

    #[test]
    fn d_lambda_rows_are_symmetric() {
        let cfg = RunConfig { trunc: Truncation { l: 6, ..Truncation::default() }, ..RunConfig::default() };
        let s = emit_spectrum(SpectrumTarget::DLambda, &cfg).unwrap();
        assert_eq!(s.rows.len(), 11);
        assert_eq!(s.rows[5].label, "n=0 0");
        for i in 0..5 {
            assert!((s.rows[i].value + s.rows[10 - i].value).abs() < 1e-12);
        }
    }
}
