use num_complex::Complex64;

use crate::exec::Execution;
use crate::signal::{roots_of_unity, ComplexSeq};

/// Sign of the exponent in the forward DFT.
pub const DFT_SIGN: i8 = 1;

/// O(N^2) DFT straight from the definition.
pub fn dft_naive(x: &ComplexSeq) -> ComplexSeq {
    dft_naive_with(x, Execution::default())
}

pub fn dft_naive_with(x: &ComplexSeq, exec: Execution) -> ComplexSeq {
    dft_naive_signed(x, DFT_SIGN, exec)
}

/// Naive DFT with an explicit exponent sign (`+1` or `-1`).
pub fn dft_naive_signed(x: &ComplexSeq, sign: i8, exec: Execution) -> ComplexSeq {
    let n = x.len();
    if n == 0 {
        return ComplexSeq::zeros(0);
    }
    let roots = roots_of_unity(n);
    let xs = x.values();
    let out = exec.map_range(n, |a| {
        let step = if sign >= 0 { a } else { (n - a) % n };
        let mut idx = 0usize;
        let mut acc = Complex64::new(0.0, 0.0);
        for v in xs {
            acc += v * roots[idx];
            idx += step;
            if idx >= n {
                idx -= n;
            }
        }
        acc
    });
    ComplexSeq::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &ComplexSeq, b: &ComplexSeq, tol: f64) -> bool {
        a.max_abs_diff(b).unwrap() <= tol
    }

    #[test]
    fn delta_and_ones() {
        let n = 15;
        assert!(close(&dft_naive(&ComplexSeq::delta(n)), &ComplexSeq::ones(n), 1e-12));
        let mut expected = ComplexSeq::zeros(n);
        expected[0] = Complex64::new(n as f64, 0.0);
        assert!(close(&dft_naive(&ComplexSeq::ones(n)), &expected, 1e-9 * n as f64));
    }

    #[test]
    fn comb_transform() {
        // comb_p on Z/pq: q at multiples of q, zero elsewhere
        let (p, q) = (3usize, 5usize);
        let comb = ComplexSeq::from_real((0..p * q).map(|i| if i % p == 0 { 1.0 } else { 0.0 }));
        let hat = dft_naive(&comb);
        for m in 0..p * q {
            let expected = if m % q == 0 { q as f64 } else { 0.0 };
            assert!((hat[m] - Complex64::new(expected, 0.0)).norm() < 1e-12, "m={m}");
        }
    }

    #[test]
    fn positive_sign_pinned() {
        // x = delta at 1 -> X(a) = exp(+2 pi i a / n)
        let n = 7;
        let mut x = ComplexSeq::zeros(n);
        x[1] = Complex64::new(1.0, 0.0);
        let hat = dft_naive(&x);
        assert!(hat[1].im > 0.0);
        let flipped = dft_naive_signed(&x, -1, Execution::Sequential);
        assert!(flipped[1].im < 0.0);
        assert!((flipped[1] - hat[1].conj()).norm() < 1e-15);
    }

    #[test]
    fn parseval_scaled_by_n() {
        let n = 21;
        let x = ComplexSeq::new(
            (0..n)
                .map(|i| Complex64::new((i as f64 * 0.7).sin(), (i as f64 * 1.3).cos()))
                .collect(),
        );
        let hat = dft_naive(&x);
        assert!((hat.norm_sqr() - n as f64 * x.norm_sqr()).abs() < 1e-9 * n as f64);
    }

    #[test]
    fn execution_modes_agree() {
        let x = ComplexSeq::from_real((0..45).map(|i| i as f64));
        assert_eq!(
            dft_naive_with(&x, Execution::Sequential),
            dft_naive_with(&x, Execution::Parallel)
        );
    }
}
