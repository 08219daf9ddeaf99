use num_complex::Complex64;
use serde::Serialize;

use crate::arith::{self, crt_split, factorize, jacobi_symbol, qrl_sign};
use crate::error::{Error, Result};
use crate::transforms::trace_normalized_dft;

const TOL: f64 = 1e-9;

/// Outcome of deriving reciprocity for `(r1, r2)` from DFT traces.
///
/// All Gauss sums are normalized by `1/sqrt(modulus)`, so every compared
/// quantity has unit magnitude.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QrlReport {
    pub r1: u64,
    pub r2: u64,
    /// `G(chi_N) / (G(chi_r1) G(chi_r2))`, from traces.
    pub ratio: [f64; 2],
    /// Distance of `ratio` from `i^((N - r1 - r2 + 1)/2)`.
    pub ratio_error: f64,
    /// Distance of `G(chi_N)` from `G(chi_r1) G(chi_r2) (-1)^(((r1-1)/2)((r2-1)/2))`.
    pub sign_form_error: f64,
    /// `chi_r1(f1) chi_r2(f2)` from the CRT idempotents.
    pub crt_twist: i8,
    /// Distance of `G(chi_N)` from `G(chi_r1) G(chi_r2) chi_r1(f1) chi_r2(f2)`.
    pub twist_form_error: f64,
    /// `(r1/r2)(r2/r1)`.
    pub symbol_product: i8,
    /// Sign read off the trace ratio.
    pub trace_sign: i8,
    pub expected_sign: i8,
    pub passed: bool,
}

fn check_modulus(r: u64) -> Result<()> {
    arith::check_odd_modulus(r)?;
    if !factorize(r)?.is_squarefree() {
        return Err(Error::NotSquarefree(r));
    }
    Ok(())
}

fn i_pow(k: u64) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Recovers `(r1/r2)(r2/r1) = (-1)^(((r1-1)/2)((r2-1)/2))` from the traces of
/// the normalized DFT matrices of sizes `r1`, `r2` and `r1*r2`, and checks it
/// against the CRT product rule for the Jacobi Gauss sum.
pub fn verify_qrl_via_traces(r1: u64, r2: u64) -> Result<QrlReport> {
    check_modulus(r1)?;
    check_modulus(r2)?;
    let split = crt_split(r1 * r2, r1, r2)?;
    let n = split.n;

    let g_n = trace_normalized_dft(n)?;
    let g1 = trace_normalized_dft(r1)?;
    let g2 = trace_normalized_dft(r2)?;
    let product = g1 * g2;

    let ratio = g_n / product;
    let ratio_error = (ratio - i_pow((r1 - 1) * (r2 - 1) / 2)).norm();

    let expected_sign = qrl_sign(r1, r2)?;
    let sign_form_error = (g_n - product * expected_sign as f64).norm();

    let crt_twist = jacobi_symbol(split.f1 as i64, r1)? * jacobi_symbol(split.f2 as i64, r2)?;
    let twist_form_error = (g_n - product * crt_twist as f64).norm();

    let symbol_product = jacobi_symbol(r1 as i64, r2)? * jacobi_symbol(r2 as i64, r1)?;
    let trace_sign = if ratio.re >= 0.0 { 1 } else { -1 };

    let passed = ratio_error <= TOL
        && sign_form_error <= TOL
        && twist_form_error <= TOL
        && crt_twist == symbol_product
        && trace_sign == symbol_product
        && symbol_product == expected_sign;

    Ok(QrlReport {
        r1,
        r2,
        ratio: [ratio.re, ratio.im],
        ratio_error,
        sign_form_error,
        crt_twist,
        twist_form_error,
        symbol_product,
        trace_sign,
        expected_sign,
        passed,
    })
}

/// Coprime odd squarefree pairs `3 <= r1 < r2 <= max`.
pub(crate) fn qrl_pairs(max: u64) -> Vec<(u64, u64)> {
    let ok: Vec<u64> = (3..=max)
        .step_by(2)
        .filter(|&r| factorize(r).map(|f| f.is_squarefree()).unwrap_or(false))
        .collect();
    let mut pairs = Vec::new();
    for (i, &a) in ok.iter().enumerate() {
        for &b in &ok[i + 1..] {
            if arith::gcd(a, b) == 1 {
                pairs.push((a, b));
            }
        }
    }
    pairs
}
