//! Correlation and spectral-support diagnostics, the trace-based
//! reciprocity check, and the closed-form-vs-oracle verification suite.

mod qrl;
mod verify;

use num_complex::Complex64;
use serde::Serialize;

use crate::exec::Execution;
use crate::signal::{ComplexSeq, ZakArray};

pub use qrl::{verify_qrl_via_traces, QrlReport};
pub use verify::{verify_theorem_suite, CheckResult, Suite, VerifyConfig, VerifyReport};

/// Off-peak autocorrelation tolerance, relative to the peak `||x||^2`.
pub const IDEAL_TOL: f64 = 1e-8;

/// Relative tolerance for grouping magnitudes into classes.
pub const MAGNITUDE_TOL: f64 = 1e-6;

/// `r(tau) = sum_n x(n) conj(x(n + tau mod N))`.
pub fn periodic_autocorrelation(x: &ComplexSeq) -> ComplexSeq {
    periodic_autocorrelation_with(x, Execution::default())
}

pub fn periodic_autocorrelation_with(x: &ComplexSeq, exec: Execution) -> ComplexSeq {
    let n = x.len();
    let xs = x.values();
    ComplexSeq::new(exec.map_range(n, |tau| {
        (0..n)
            .map(|i| xs[i] * xs[(i + tau) % n].conj())
            .sum::<Complex64>()
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorrelationReport {
    pub peak: f64,
    pub max_offpeak_abs: f64,
    pub is_ideal: bool,
}

/// Ideality test with threshold `IDEAL_TOL * ||x||^2`.
pub fn correlation_report(x: &ComplexSeq) -> CorrelationReport {
    let r = periodic_autocorrelation(x);
    let peak = x.norm_sqr();
    let max_offpeak_abs = r.iter().skip(1).map(|v| v.norm()).fold(0.0, f64::max);
    CorrelationReport {
        peak,
        max_offpeak_abs,
        is_ideal: max_offpeak_abs <= IDEAL_TOL * peak,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SupportKind {
    /// Every entry non-zero with a single magnitude.
    Unimodular,
    /// A single magnitude on the support, zero elsewhere.
    SemiUnimodular,
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MagnitudeClass {
    pub value: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SupportProfile {
    pub nonzero_mask: Vec<bool>,
    pub classes: Vec<MagnitudeClass>,
    pub kind: SupportKind,
}

impl SupportProfile {
    pub fn support_size(&self) -> usize {
        self.nonzero_mask.iter().filter(|&&b| b).count()
    }
}

/// Anything laid out as a flat slice of complex values.
pub trait ComplexValues {
    fn complex_values(&self) -> &[Complex64];
}

impl ComplexValues for ComplexSeq {
    fn complex_values(&self) -> &[Complex64] {
        self.values()
    }
}

impl ComplexValues for ZakArray {
    fn complex_values(&self) -> &[Complex64] {
        self.data()
    }
}

impl ComplexValues for [Complex64] {
    fn complex_values(&self) -> &[Complex64] {
        self
    }
}

/// Splits entries into zero / non-zero (zero means `|v| <= tol * max|v|`)
/// and clusters the non-zero magnitudes with relative tolerance `tol`.
pub fn classify_support<T: ComplexValues + ?Sized>(t: &T, tol: f64) -> SupportProfile {
    let values = t.complex_values();
    let mags: Vec<f64> = values.iter().map(|v| v.norm()).collect();
    let max = mags.iter().cloned().fold(0.0, f64::max);
    let nonzero_mask: Vec<bool> = mags.iter().map(|&m| max > 0.0 && m > tol * max).collect();

    let mut support: Vec<f64> = mags
        .iter()
        .zip(&nonzero_mask)
        .filter(|(_, &nz)| nz)
        .map(|(&m, _)| m)
        .collect();
    support.sort_by(f64::total_cmp);

    let mut classes: Vec<(f64, f64, usize)> = Vec::new(); // (first, sum, count)
    for m in support {
        match classes.last_mut() {
            Some((first, sum, count)) if (m - *first) <= tol * *first => {
                *sum += m;
                *count += 1;
            }
            _ => classes.push((m, m, 1)),
        }
    }
    let classes: Vec<MagnitudeClass> = classes
        .into_iter()
        .map(|(_, sum, count)| MagnitudeClass {
            value: sum / count as f64,
            count,
        })
        .collect();

    let all_nonzero = nonzero_mask.iter().all(|&b| b);
    let kind = match (classes.len(), all_nonzero) {
        (1, true) => SupportKind::Unimodular,
        (1, false) => SupportKind::SemiUnimodular,
        _ => SupportKind::Other,
    };
    SupportProfile {
        nonzero_mask,
        classes,
        kind,
    }
}
