//! Comparative statics: equilibria along a one-parameter grid.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::equilibrium::find_nash;
use crate::error::{ModelError, Result};
use crate::market::{Scenario, PARAMETER_NAMES};
use crate::optimize::linspace;

/// Grid density of the preset sweeps.
pub const DEFAULT_STEPS: usize = 50;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub base: Scenario,
    /// Short name of the swept scalar (see [`PARAMETER_NAMES`]).
    pub parameter: String,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl SweepSpec {
    pub fn new(base: Scenario, parameter: &str, start: f64, stop: f64, steps: usize) -> Self {
        SweepSpec {
            base,
            parameter: parameter.to_string(),
            start,
            stop,
            steps,
        }
    }

    /// URLLC delay bound from 0.3 to 2.0 at the reference parameters.
    pub fn default_epsilon() -> Self {
        SweepSpec::new(Scenario::default(), "epsilon", 0.3, 2.0, DEFAULT_STEPS)
    }

    /// Capacity cost from 0.08 to 0.4 at the reference parameters.
    pub fn default_c() -> Self {
        SweepSpec::new(Scenario::default(), "c", 0.08, 0.4, DEFAULT_STEPS)
    }

    pub fn values(&self) -> Vec<f64> {
        linspace(self.start, self.stop, self.steps)
    }

    /// Checks the grid and builds every scenario before anything is solved.
    pub fn scenarios(&self) -> Result<Vec<Scenario>> {
        if !PARAMETER_NAMES.contains(&self.parameter.as_str()) {
            return Err(ModelError::UnknownParameter(self.parameter.clone()));
        }
        self.base.get(&self.parameter)?;
        if self.steps < 2 {
            return Err(ModelError::InvalidSweep(format!("steps must be >= 2, got {}", self.steps)));
        }
        if !(self.start.is_finite() && self.stop.is_finite() && self.start < self.stop) {
            return Err(ModelError::InvalidSweep(format!(
                "need finite start < stop, got {} .. {}",
                self.start, self.stop
            )));
        }
        self.values()
            .into_iter()
            .map(|v| self.base.with(&self.parameter, v))
            .collect()
    }
}

/// Equilibrium quantities at one grid point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub parameter_value: f64,
    pub mu1: f64,
    pub lambda1: f64,
    pub mu2: f64,
    pub lambda2: f64,
    pub rho1: f64,
    pub rho2: f64,
    #[serde(with = "crate::serde_ext")]
    pub delta_avg1: f64,
    #[serde(with = "crate::serde_ext")]
    pub delta_avg2: f64,
    #[serde(with = "crate::serde_ext")]
    pub delta_p1: f64,
    #[serde(with = "crate::serde_ext")]
    pub delta_p2: f64,
    pub m1: f64,
    pub m2: f64,
    pub cs1: f64,
    pub cs2: f64,
    pub cs_total: f64,
    pub pi1: f64,
    pub pi2: f64,
    pub pi_total: f64,
    pub social_welfare: f64,
    pub converged: bool,
    pub coverage: bool,
    pub multiplicity: bool,
}

/// CSV column order.
pub const CSV_HEADER: [&str; 24] = [
    "parameter",
    "parameter_value",
    "mu1",
    "lambda1",
    "mu2",
    "lambda2",
    "rho1",
    "rho2",
    "delta_avg1",
    "delta_avg2",
    "delta_p1",
    "delta_p2",
    "m1",
    "m2",
    "cs1",
    "cs2",
    "cs_total",
    "pi1",
    "pi2",
    "pi_total",
    "social_welfare",
    "converged",
    "coverage",
    "multiplicity",
];

/// Solves one scenario and flattens the result.
pub fn solve_point(scenario: &Scenario, parameter_value: f64) -> SweepRecord {
    let r = find_nash(scenario);
    let (s1, s2, o) = (r.strategy1, r.strategy2, r.outcome);
    let cs_total = o.cs1 + o.cs2;
    let pi_total = o.pi1 + o.pi2;
    SweepRecord {
        parameter_value,
        mu1: s1.mu,
        lambda1: s1.lambda,
        mu2: s2.mu,
        lambda2: s2.lambda,
        rho1: s1.utilization(),
        rho2: s2.utilization(),
        delta_avg1: s1.average_aoi(),
        delta_avg2: s2.average_aoi(),
        delta_p1: o.delta_p1,
        delta_p2: o.delta_p2,
        m1: o.m1,
        m2: o.m2,
        cs1: o.cs1,
        cs2: o.cs2,
        cs_total,
        pi1: o.pi1,
        pi2: o.pi2,
        pi_total,
        social_welfare: cs_total + pi_total,
        converged: r.converged,
        coverage: o.coverage.covered,
        multiplicity: r.multiple_equilibria,
    }
}

/// Solves every grid point, in parallel on up to `jobs` threads (all cores
/// when `None`). Records come back in grid order.
pub fn run_sweep(spec: &SweepSpec, jobs: Option<usize>) -> Result<Vec<SweepRecord>> {
    let scenarios = spec.scenarios()?;
    let values = spec.values();
    let work = || -> Vec<SweepRecord> {
        scenarios
            .par_iter()
            .zip(values.par_iter())
            .map(|(s, &v)| solve_point(s, v))
            .collect()
    };
    match jobs {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| ModelError::InvalidSweep(format!("thread pool: {e}")))?;
            Ok(pool.install(work))
        }
        None => Ok(work()),
    }
}

/// Sequential reference evaluation, in grid order.
pub fn run_sweep_sequential(spec: &SweepSpec) -> Result<Vec<SweepRecord>> {
    let scenarios = spec.scenarios()?;
    Ok(scenarios
        .iter()
        .zip(spec.values())
        .map(|(s, v)| solve_point(s, v))
        .collect())
}

/// Formats like C's `%.9g`: nine significant digits, trailing zeros dropped.
pub fn format_sig9(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: String| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    };
    if (-4..9).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        trim(format!("{x:.decimals$}"))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim(mantissa.to_string()), sign, exp.abs())
    }
}

/// Writes the records as UTF-8 CSV with LF line endings.
pub fn write_csv<W: Write>(out: W, parameter: &str, records: &[SweepRecord]) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_HEADER)?;
    let b = |v: bool| if v { "true" } else { "false" }.to_string();
    for r in records {
        let nums = [
            r.parameter_value,
            r.mu1,
            r.lambda1,
            r.mu2,
            r.lambda2,
            r.rho1,
            r.rho2,
            r.delta_avg1,
            r.delta_avg2,
            r.delta_p1,
            r.delta_p2,
            r.m1,
            r.m2,
            r.cs1,
            r.cs2,
            r.cs_total,
            r.pi1,
            r.pi2,
            r.pi_total,
            r.social_welfare,
        ];
        let mut row = vec![parameter.to_string()];
        row.extend(nums.iter().map(|&x| format_sig9(x)));
        row.extend([b(r.converged), b(r.coverage), b(r.multiplicity)]);
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// Writes the records as a pretty-printed JSON array.
pub fn write_json<W: Write>(mut out: W, records: &[SweepRecord]) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut out, records)?;
    writeln!(out)
}
