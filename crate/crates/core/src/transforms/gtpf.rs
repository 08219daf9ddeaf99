//! Good-Thomas prime-factor DFT.
//!
//! For `N = R1 * R2` with `gcd(R1, R2) = 1`, write `a = a2 + a1*R2` and
//! permute by `pi(a) = a1*e1 + a2*e2 mod N`. Then
//! `w^(pi(a) pi(b)) = u1^(f1 a1 b1) * u2^(f2 a2 b2)`, so the permuted DFT
//! matrix is the tensor product of the row-permuted factor matrices and
//! costs `O(N (R1 + R2))`.

use num_complex::Complex64;

use crate::arith::{CrtSplit, Factorization};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::signal::{roots_of_unity, ComplexSeq};

/// The CRT index permutation `pi(a) = a1*e1 + a2*e2 mod N`.
pub fn gtpf_permutation(split: &CrtSplit) -> Vec<usize> {
    let r2 = split.r2;
    (0..split.n)
        .map(|a| split.combine(a / r2, a % r2) as usize)
        .collect()
}

/// Coprime split minimizing `r1 + r2`, i.e. the cheapest GTPF plan.
pub fn balanced_split(f: &Factorization) -> Option<CrtSplit> {
    f.coprime_splits().into_iter().min_by_key(|s| (s.r1 + s.r2, s.r1))
}

/// Precomputed permutation and factor-transform tables for one split.
#[derive(Debug, Clone)]
pub struct GtpfPlan {
    split: CrtSplit,
    perm: Vec<usize>,
    // factor[a*b*f mod r] lookups use these root tables
    roots1: Vec<Complex64>,
    roots2: Vec<Complex64>,
}

impl GtpfPlan {
    pub fn new(split: CrtSplit) -> Self {
        Self {
            perm: gtpf_permutation(&split),
            roots1: roots_of_unity(split.r1 as usize),
            roots2: roots_of_unity(split.r2 as usize),
            split,
        }
    }

    pub fn split(&self) -> &CrtSplit {
        &self.split
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn apply(&self, x: &ComplexSeq, exec: Execution) -> Result<ComplexSeq> {
        let n = self.split.n as usize;
        if x.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: x.len(),
            });
        }
        let (r1, r2) = (self.split.r1 as usize, self.split.r2 as usize);
        let (f1, f2) = (self.split.f1 as usize, self.split.f2 as usize);
        let xs = x.values();

        // Q_pi: row-major r1 x r2 grid, a2 fastest
        let mut grid: Vec<Complex64> = self.perm.iter().map(|&p| xs[p]).collect();

        // F_R2 along each row
        exec.for_each_chunk_mut(&mut grid, r2, |_, row| {
            let transformed = factor_transform(row, &self.roots2, f2);
            row.copy_from_slice(&transformed);
        });

        // F_R1 along each column, done on the transpose
        let mut cols: Vec<Complex64> = (0..r2)
            .flat_map(|b2| (0..r1).map(move |a1| (a1, b2)))
            .map(|(a1, b2)| grid[a1 * r2 + b2])
            .collect();
        exec.for_each_chunk_mut(&mut cols, r1, |_, col| {
            let transformed = factor_transform(col, &self.roots1, f1);
            col.copy_from_slice(&transformed);
        });

        // Q_pi^{-1}: entry (b1, b2) of the tensor output lands at pi(b)
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for b2 in 0..r2 {
            for b1 in 0..r1 {
                out[self.perm[b1 * r2 + b2]] = cols[b2 * r1 + b1];
            }
        }
        Ok(ComplexSeq::new(out))
    }
}

/// `y(b) = sum_a u^(f*a*b) x(a)`: the r-point DFT with rows permuted by `f`.
fn factor_transform(x: &[Complex64], roots: &[Complex64], f: usize) -> Vec<Complex64> {
    let r = x.len();
    (0..r)
        .map(|b| {
            let step = f * b % r;
            let mut idx = 0usize;
            let mut acc = Complex64::new(0.0, 0.0);
            for v in x {
                acc += v * roots[idx];
                idx += step;
                if idx >= r {
                    idx -= r;
                }
            }
            acc
        })
        .collect()
}

pub fn gtpf_dft(x: &ComplexSeq, split: &CrtSplit) -> Result<ComplexSeq> {
    gtpf_dft_with(x, split, Execution::default())
}

pub fn gtpf_dft_with(x: &ComplexSeq, split: &CrtSplit, exec: Execution) -> Result<ComplexSeq> {
    GtpfPlan::new(*split).apply(x, exec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{crt_split, factorize};
    use crate::characters::enumerate_primitive;
    use crate::transforms::{dft_naive, gauss_sum_direct};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn permutation_examples() {
        let split = crt_split(15, 3, 5).unwrap();
        let perm = gtpf_permutation(&split);
        assert_eq!(perm[0], 0);
        assert_eq!(perm[1], 6);
        // a = 5 -> a1 = 1, a2 = 0 -> e1
        assert_eq!(perm[5], 10);
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..15).collect::<Vec<_>>());
    }

    #[test]
    fn permutation_is_bijection_and_crt_consistent() {
        for n in (3..400u64).step_by(2) {
            for split in factorize(n).unwrap().coprime_splits() {
                let perm = gtpf_permutation(&split);
                let mut seen = vec![false; n as usize];
                for (a, &p) in perm.iter().enumerate() {
                    let (a1, a2) = (a as u64 / split.r2, a as u64 % split.r2);
                    assert_eq!(p as u64 % split.r1, a1);
                    assert_eq!(p as u64 % split.r2, a2);
                    assert!(!seen[p]);
                    seen[p] = true;
                }
            }
        }
    }

    #[test]
    fn matches_naive_on_random_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [15u64, 21, 35, 45, 63, 99, 105] {
            for split in factorize(n).unwrap().coprime_splits() {
                for _ in 0..5 {
                    let x = ComplexSeq::new(
                        (0..n)
                            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                            .collect(),
                    );
                    let err = gtpf_dft(&x, &split).unwrap().max_abs_diff(&dft_naive(&x)).unwrap();
                    assert!(err < 1e-9 * n as f64, "n={n} split={split:?} err={err}");
                }
            }
        }
    }

    #[test]
    fn delta_gives_ones() {
        let split = crt_split(21, 7, 3).unwrap();
        let out = gtpf_dft(&ComplexSeq::delta(21), &split).unwrap();
        assert!(out.max_abs_diff(&ComplexSeq::ones(21)).unwrap() < 1e-12);
    }

    #[test]
    fn character_pipeline_gives_scaled_conjugate() {
        let split = crt_split(45, 9, 5).unwrap();
        for chi in enumerate_primitive(45).unwrap() {
            let out = gtpf_dft(&ComplexSeq::new(chi.to_complex()), &split).unwrap();
            let g = gauss_sum_direct(&chi).value;
            let expected: Vec<_> = chi.conj().to_complex().into_iter().map(|v| g * v).collect();
            assert!(out.max_abs_diff(&expected.into()).unwrap() < 1e-9 * 45.0);
        }
    }

    #[test]
    fn length_mismatch() {
        let split = crt_split(15, 3, 5).unwrap();
        assert!(gtpf_dft(&ComplexSeq::ones(14), &split).is_err());
    }

    #[test]
    fn balanced_split_choice() {
        let s = balanced_split(&factorize(3465).unwrap()).unwrap();
        assert_eq!(s.r1 * s.r2, 3465);
        assert_eq!(s.r1 + s.r2, 118);
        assert!(balanced_split(&factorize(27).unwrap()).is_none());
    }
}
