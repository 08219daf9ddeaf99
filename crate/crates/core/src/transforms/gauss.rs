use num_complex::Complex64;

use crate::arith::{crt_split, gcd, CrtSplit};
use crate::characters::{Character, UnityExponent};
use crate::error::{Error, Result};
use crate::signal::ComplexSeq;

/// `G(chi) = sum_{b in U(N)} chi(b) exp(2*pi*i*b/N)` for a character.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussSum {
    pub character: Character,
    pub value: Complex64,
}

/// Gauss sum by direct summation over U(N).
///
/// Each term `chi(b) * exp(2*pi*i*b/N)` is combined exactly before a single
/// trig evaluation.
pub fn gauss_sum_direct(chi: &Character) -> GaussSum {
    let n = chi.modulus();
    let value = (1..n)
        .filter(|&b| gcd(b, n) == 1)
        .map(|b| (chi.evaluate(b as i64) * UnityExponent::root(b as i64, n)).to_complex())
        .sum();
    GaussSum {
        character: chi.clone(),
        value,
    }
}

/// Gauss sum assembled from prime-power Gauss sums through the CRT product
/// rule `G(chi) = G(chi1) G(chi2) conj(chi1(f1)) conj(chi2(f2))`.
///
/// Only prime-power components are summed directly. Valid for primitive
/// characters; for non-primitive ones the product rule need not hold.
pub fn gauss_sum_factored(chi: &Character) -> GaussSum {
    let value = factored_value(chi);
    GaussSum {
        character: chi.clone(),
        value,
    }
}

fn factored_value(chi: &Character) -> Complex64 {
    let comps = chi.components();
    if comps.len() <= 1 {
        return gauss_sum_direct(chi).value;
    }
    let r1 = comps[0].modulus();
    let split = crt_split(chi.modulus(), r1, chi.modulus() / r1).expect("whole prime powers");
    let (chi1, chi2) = halves(chi, &split).expect("split matches components");
    crt_constant(&chi1, &chi2, &split, factored_value(&chi1), factored_value(&chi2))
}

fn halves(chi: &Character, split: &CrtSplit) -> Result<(Character, Character)> {
    if split.n != chi.modulus() {
        return Err(Error::SplitMismatch {
            r1: split.r1,
            r2: split.r2,
        });
    }
    let mismatch = |_| Error::SplitMismatch {
        r1: split.r1,
        r2: split.r2,
    };
    let chi1 = chi.restrict(split.r1).map_err(mismatch)?;
    let chi2 = chi.restrict(split.r2).map_err(mismatch)?;
    Ok((chi1, chi2))
}

fn crt_constant(
    chi1: &Character,
    chi2: &Character,
    split: &CrtSplit,
    g1: Complex64,
    g2: Complex64,
) -> Complex64 {
    let twist = chi1.evaluate(split.f1 as i64).conj() * chi2.evaluate(split.f2 as i64).conj();
    g1 * g2 * twist.to_complex()
}

/// Closed-form DFT `G(chi) * conj(chi(a))` of a primitive character, with
/// `G(chi)` built from the two halves of `split`. No length-N sum is taken.
pub fn dft_character_closed_form(chi: &Character, split: &CrtSplit) -> Result<ComplexSeq> {
    if !chi.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    let (chi1, chi2) = halves(chi, split)?;
    let g = crt_constant(
        &chi1,
        &chi2,
        split,
        gauss_sum_factored(&chi1).value,
        gauss_sum_factored(&chi2).value,
    );
    Ok(scaled_conjugate(chi, g))
}

/// Closed-form DFT of a primitive character on any odd modulus: prime
/// powers use their own Gauss sum, composite moduli split off the smallest
/// prime power.
pub fn dft_character_closed(chi: &Character) -> Result<ComplexSeq> {
    if !chi.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    match chi.components() {
        [_] => Ok(scaled_conjugate(chi, gauss_sum_direct(chi).value)),
        comps => {
            let r1 = comps[0].modulus();
            let split = crt_split(chi.modulus(), r1, chi.modulus() / r1)?;
            dft_character_closed_form(chi, &split)
        }
    }
}

fn scaled_conjugate(chi: &Character, g: Complex64) -> ComplexSeq {
    chi.conj().to_complex().into_iter().map(|v| g * v).collect::<Vec<_>>().into()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{factorize, is_prime};
    use crate::characters::{compose_crt, enumerate_characters, enumerate_primitive};
    use crate::transforms::dft_naive;

    fn naive_hat(chi: &Character) -> ComplexSeq {
        dft_naive(&ComplexSeq::new(chi.to_complex()))
    }

    #[test]
    fn trivial_character_spectrum() {
        for p in [3u64, 5, 7, 11] {
            let hat = naive_hat(&Character::trivial(p).unwrap());
            assert!((hat[0] - Complex64::new((p - 1) as f64, 0.0)).norm() < 1e-12);
            for a in 1..p as usize {
                assert!((hat[a] + 1.0).norm() < 1e-12);
            }
            assert!((gauss_sum_direct(&Character::trivial(p).unwrap()).value + 1.0).norm() < 1e-12);
        }
    }

    #[test]
    fn legendre_three_is_i_sqrt3() {
        let g = gauss_sum_direct(&Character::legendre(3).unwrap()).value;
        assert!((g - Complex64::new(0.0, 3f64.sqrt())).norm() < 1e-12);
    }

    #[test]
    fn primitive_prime_gauss_sum_magnitude() {
        for p in (3..60u64).filter(|&p| p % 2 == 1 && is_prime(p)) {
            for chi in enumerate_primitive(p).unwrap() {
                let g = gauss_sum_direct(&chi).value;
                assert!((g.norm_sqr() - p as f64).abs() < 1e-9 * p as f64);
            }
        }
    }

    #[test]
    fn gauss_sum_equals_dft_at_one() {
        for n in [15u64, 27, 45] {
            for chi in enumerate_characters(n).unwrap() {
                let g = gauss_sum_direct(&chi).value;
                assert!((g - naive_hat(&chi)[1]).norm() < 1e-9 * n as f64);
            }
        }
    }

    #[test]
    fn factored_gauss_sum_matches_direct() {
        for n in [15u64, 21, 35, 45, 105, 75] {
            for chi in enumerate_primitive(n).unwrap() {
                let direct = gauss_sum_direct(&chi).value;
                let factored = gauss_sum_factored(&chi).value;
                assert!((direct - factored).norm() < 1e-9 * n as f64, "{chi}");
            }
        }
    }

    #[test]
    fn crt_constant_for_every_split() {
        for n in [15u64, 21, 35, 45, 105] {
            let f = factorize(n).unwrap();
            for split in f.coprime_splits() {
                for c1 in enumerate_primitive(split.r1).unwrap() {
                    for c2 in enumerate_primitive(split.r2).unwrap() {
                        let chi = compose_crt(&c1, &c2).unwrap();
                        let lhs = gauss_sum_direct(&chi).value;
                        let rhs = crt_constant(
                            &c1,
                            &c2,
                            &split,
                            gauss_sum_direct(&c1).value,
                            gauss_sum_direct(&c2).value,
                        );
                        assert!((lhs - rhs).norm() < 1e-9 * n as f64);
                    }
                }
            }
        }
    }

    #[test]
    fn closed_form_dft_matches_naive() {
        let chi = Character::jacobi(15).unwrap();
        let split = crt_split(15, 3, 5).unwrap();
        let closed = dft_character_closed_form(&chi, &split).unwrap();
        let naive = naive_hat(&chi);
        assert!(closed.max_abs_diff(&naive).unwrap() < 1e-9);
        assert!((closed[1] - gauss_sum_direct(&chi).value).norm() < 1e-9);
        for a in [0usize, 3, 5, 6, 9, 10, 12] {
            assert!(closed[a].norm() < 1e-12);
        }
        for n in [9u64, 25, 27, 45, 105] {
            for chi in enumerate_primitive(n).unwrap() {
                let closed = dft_character_closed(&chi).unwrap();
                assert!(closed.max_abs_diff(&naive_hat(&chi)).unwrap() < 1e-9 * n as f64);
            }
        }
    }

    #[test]
    fn closed_form_rejects_non_primitive_and_bad_split() {
        let chi = Character::from_labels(15, &[0, 1]).unwrap();
        let split = crt_split(15, 3, 5).unwrap();
        assert_eq!(dft_character_closed_form(&chi, &split), Err(Error::NotPrimitive));
        let chi = Character::jacobi(15).unwrap();
        let other = crt_split(21, 3, 7).unwrap();
        assert!(matches!(
            dft_character_closed_form(&chi, &other),
            Err(Error::SplitMismatch { .. })
        ));
    }
}
