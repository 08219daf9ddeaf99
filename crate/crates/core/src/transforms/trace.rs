use num_complex::Complex64;

use crate::characters::UnityExponent;
use crate::error::{Error, Result};

/// `sum_{x<n} exp(2*pi*i*x^2/n)`.
pub fn quadratic_gauss_sum(n: u64) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::ModulusTooSmall(0));
    }
    Ok((0..n)
        .map(|x| UnityExponent::root(((x as u128 * x as u128) % n as u128) as i64, n).to_complex())
        .sum())
}

/// Trace of `F(n)/sqrt(n)`, read off the diagonal of the DFT matrix
/// `F(n)[a][b] = exp(2*pi*i*a*b/n)`.
pub fn trace_normalized_dft(n: u64) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::ModulusTooSmall(0));
    }
    let entry = |a: u64, b: u64| {
        let theta = std::f64::consts::TAU * ((a as u128 * b as u128) % n as u128) as f64 / n as f64;
        Complex64::new(theta.cos(), theta.sin())
    };
    let diag: Complex64 = (0..n).map(|a| entry(a, a)).sum();
    Ok(diag / (n as f64).sqrt())
}

/// The normalized trace by residue class: `1+i, 1, 0, i` for `n = 0, 1, 2, 3 mod 4`.
pub fn normalized_trace_table(n: u64) -> Complex64 {
    match n % 4 {
        0 => Complex64::new(1.0, 1.0),
        1 => Complex64::new(1.0, 0.0),
        2 => Complex64::new(0.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    }
}
