use num_complex::Complex64;

use crate::arith::{gcd, inv_mod};
use crate::characters::{Character, UnityExponent};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::signal::{roots_of_unity, ComplexSeq, ZakArray};

use super::gauss::gauss_sum_factored;
use super::DFT_SIGN;

/// Finite Zak transform `X_L(j,k) = sum_{r<L} x(k + r*M) exp(2*pi*i*r*j/L)`
/// with `M = N / L`; the result has `L` rows and `M` columns.
pub fn fzt_direct(x: &ComplexSeq, l: usize) -> Result<ZakArray> {
    fzt_direct_with(x, l, Execution::default())
}

pub fn fzt_direct_with(x: &ComplexSeq, l: usize, exec: Execution) -> Result<ZakArray> {
    fzt_direct_signed(x, l, DFT_SIGN, exec)
}

pub fn fzt_direct_signed(x: &ComplexSeq, l: usize, sign: i8, exec: Execution) -> Result<ZakArray> {
    let n = x.len();
    if l == 0 || n % l != 0 {
        return Err(Error::NotDivisor { l, n });
    }
    let m = n / l;
    let roots = roots_of_unity(l);
    let xs = x.values();
    let rows = exec.map_range(l, |j| {
        let step = if sign >= 0 { j } else { (l - j) % l };
        (0..m)
            .map(|k| {
                let mut idx = 0usize;
                let mut acc = Complex64::new(0.0, 0.0);
                for r in 0..l {
                    acc += xs[k + r * m] * roots[idx];
                    idx += step;
                    if idx >= l {
                        idx -= l;
                    }
                }
                acc
            })
            .collect::<Vec<_>>()
    });
    ZakArray::from_row_major(l, m, rows.into_iter().flatten().collect())
}

/// Closed-form `R1 x R2` Zak transform of the character `chi1 x chi2` on
/// Z/(r1*r2), taken with `L = r2`:
///
/// `X(j,k) = G(chi2) chi2(r1) exp(-2*pi*i*r1^{-1}*j*k/r2) conj(chi2(j)) chi1(k)`.
///
/// `chi2` must be primitive; `chi1` is arbitrary.
pub fn fzt_character_closed_form(chi1: &Character, chi2: &Character) -> Result<ZakArray> {
    let (r1, r2) = (chi1.modulus(), chi2.modulus());
    if gcd(r1, r2) != 1 {
        return Err(Error::NotCoprime { a: r1, b: r2 });
    }
    if !chi2.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    let g = gauss_sum_factored(chi2).value;
    let r1_inv = inv_mod(r1 % r2, r2).expect("coprime");
    let lead = chi2.evaluate(r1 as i64);
    let mut grid = ZakArray::zeros(r2 as usize, r1 as usize);
    for j in 0..r2 {
        let row = lead * chi2.evaluate(j as i64).conj();
        for k in 0..r1 {
            let phase = UnityExponent::root(-((r1_inv * j % r2 * k % r2) as i64), r2);
            let v = row * phase * chi1.evaluate(k as i64);
            grid.set(j as usize, k as usize, g * v.to_complex());
        }
    }
    Ok(grid)
}
