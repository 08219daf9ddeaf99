//! Jacobi, modified Legendre/Jacobi and Golomb sequences, with closed-form
//! DFTs and Zak transforms.
//!
//! All closed forms use the positive-exponent DFT convention of
//! [`crate::transforms`]. `c_N` denotes the Gauss sum of the Jacobi
//! character mod a squarefree `N`, which is also its DFT eigenvalue.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use thiserror::Error;

use crate::arith::{self, gcd, inv_mod, jacobi_symbol, legendre_symbol};
use crate::characters::UnityExponent;
use crate::error::{Error, Result};
use crate::signal::{ComplexSeq, ZakArray};

/// A sequence family plus its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeqSpec {
    Jacobi { n: u64 },
    ModifiedLegendre { p: u64 },
    ModifiedJacobi { p: u64, q: u64 },
    Golomb { p: u64, q: u64 },
    GolombPrime { p: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("cannot parse `{token}`: {reason}")]
    Parse { token: String, reason: String },
    #[error(transparent)]
    Invalid(#[from] Error),
}

fn parse_error(token: &str, reason: &str) -> SpecError {
    SpecError::Parse {
        token: token.to_string(),
        reason: reason.to_string(),
    }
}

pub(crate) fn parse_u64_list(body: &str, expected: usize) -> std::result::Result<Vec<u64>, SpecError> {
    let parts: Vec<&str> = body.split(',').map(str::trim).collect();
    if parts.len() != expected {
        return Err(parse_error(
            body,
            &format!("expected {expected} comma-separated integer(s)"),
        ));
    }
    parts
        .iter()
        .map(|t| {
            t.parse::<u64>()
                .map_err(|_| parse_error(t, "not a non-negative integer"))
        })
        .collect()
}

impl FromStr for SeqSpec {
    type Err = SpecError;

    /// Parses `kind:params`, e.g. `jacobi:15`, `modified-jacobi:3,5`,
    /// `golomb:3,5`, `golomb-prime:7`, `modified-legendre:7`.
    fn from_str(s: &str) -> std::result::Result<Self, SpecError> {
        let (kind, body) = s
            .split_once(':')
            .ok_or_else(|| parse_error(s, "expected `kind:parameters`"))?;
        let spec = match kind.trim() {
            "jacobi" => SeqSpec::Jacobi {
                n: parse_u64_list(body, 1)?[0],
            },
            "modified-legendre" => SeqSpec::ModifiedLegendre {
                p: parse_u64_list(body, 1)?[0],
            },
            "golomb-prime" => SeqSpec::GolombPrime {
                p: parse_u64_list(body, 1)?[0],
            },
            "modified-jacobi" => {
                let v = parse_u64_list(body, 2)?;
                SeqSpec::ModifiedJacobi { p: v[0], q: v[1] }
            }
            "golomb" => {
                let v = parse_u64_list(body, 2)?;
                SeqSpec::Golomb { p: v[0], q: v[1] }
            }
            other => return Err(parse_error(other, "unknown sequence kind")),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for SeqSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeqSpec::Jacobi { n } => write!(f, "jacobi:{n}"),
            SeqSpec::ModifiedLegendre { p } => write!(f, "modified-legendre:{p}"),
            SeqSpec::ModifiedJacobi { p, q } => write!(f, "modified-jacobi:{p},{q}"),
            SeqSpec::Golomb { p, q } => write!(f, "golomb:{p},{q}"),
            SeqSpec::GolombPrime { p } => write!(f, "golomb-prime:{p}"),
        }
    }
}

#[allow(clippy::len_without_is_empty)]
impl SeqSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            SeqSpec::Jacobi { .. } => "jacobi",
            SeqSpec::ModifiedLegendre { .. } => "modified-legendre",
            SeqSpec::ModifiedJacobi { .. } => "modified-jacobi",
            SeqSpec::Golomb { .. } => "golomb",
            SeqSpec::GolombPrime { .. } => "golomb-prime",
        }
    }

    pub fn len(&self) -> u64 {
        match *self {
            SeqSpec::Jacobi { n } => n,
            SeqSpec::ModifiedLegendre { p } | SeqSpec::GolombPrime { p } => p,
            SeqSpec::ModifiedJacobi { p, q } | SeqSpec::Golomb { p, q } => p * q,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            SeqSpec::Jacobi { n } => squarefree(n).map(|_| ()),
            SeqSpec::ModifiedLegendre { p } | SeqSpec::GolombPrime { p } => arith::check_odd_prime(p),
            SeqSpec::ModifiedJacobi { p, q } | SeqSpec::Golomb { p, q } => check_pair(p, q),
        }
    }

    pub fn generate(&self) -> Result<ComplexSeq> {
        match *self {
            SeqSpec::Jacobi { n } => jacobi_sequence(n),
            SeqSpec::ModifiedLegendre { p } => modified_legendre(p),
            SeqSpec::ModifiedJacobi { p, q } => modified_jacobi(p, q),
            SeqSpec::Golomb { p, q } => golomb(p, q),
            SeqSpec::GolombPrime { p } => golomb_prime(p),
        }
    }

    /// Closed-form DFT; every family has one.
    pub fn dft_closed(&self) -> Result<ComplexSeq> {
        match *self {
            SeqSpec::Jacobi { n } => dft_jacobi_closed(n),
            SeqSpec::ModifiedLegendre { p } => dft_modified_legendre_closed(p),
            SeqSpec::ModifiedJacobi { p, q } => dft_modified_jacobi_closed(p, q),
            SeqSpec::Golomb { p, q } => dft_golomb_closed(p, q),
            SeqSpec::GolombPrime { p } => dft_golomb_prime_closed(p),
        }
    }

    /// Closed-form Zak transform with `l` rows, if one exists for this
    /// family and `l`.
    pub fn fzt_closed(&self, l: u64) -> Option<Result<ZakArray>> {
        match *self {
            SeqSpec::Jacobi { n } => {
                let r2 = l;
                if r2 < 3 || n % r2 != 0 || n / r2 < 3 || gcd(r2, n / r2) != 1 {
                    return None;
                }
                Some(fzt_jacobi_closed(n / r2, r2))
            }
            SeqSpec::ModifiedJacobi { p, q } if l == q => Some(fzt_modified_jacobi_closed(p, q)),
            SeqSpec::Golomb { p, q } if l == q => Some(fzt_golomb_closed(p, q)),
            _ => None,
        }
    }
}

fn squarefree(n: u64) -> Result<arith::Factorization> {
    let f = arith::factorize(n)?;
    if f.is_squarefree() {
        Ok(f)
    } else {
        Err(Error::NotSquarefree(n))
    }
}

fn check_pair(p: u64, q: u64) -> Result<()> {
    arith::check_odd_prime(p)?;
    arith::check_odd_prime(q)?;
    if p >= q {
        return Err(Error::PrimeOrder { p, q });
    }
    Ok(())
}

fn real(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

/// The ternary sequence `(a/n)` for squarefree odd `n`.
pub fn jacobi_sequence(n: u64) -> Result<ComplexSeq> {
    let f = squarefree(n)?;
    Ok(ComplexSeq::from_real(
        (0..n as i64).map(|a| arith::jacobi_with(a, &f) as f64),
    ))
}

/// `c_p`: `sqrt(p)` for `p = 1 mod 4`, `i*sqrt(p)` for `p = 3 mod 4`.
pub fn c_prime(p: u64) -> Result<Complex64> {
    arith::check_odd_prime(p)?;
    let s = (p as f64).sqrt();
    Ok(if p % 4 == 1 {
        real(s)
    } else {
        Complex64::new(0.0, s)
    })
}

/// DFT eigenvalue of the Jacobi character mod squarefree `n`:
/// `c_{p1} ... c_{pr} * (-1)^(sum_l ((p1...pl - 1)/2) ((p_{l+1} - 1)/2))`.
pub fn c_n(n: u64) -> Result<Complex64> {
    let f = squarefree(n)?;
    let primes: Vec<u64> = f.factors().iter().map(|pp| pp.p).collect();
    let mut value = real(1.0);
    for &p in &primes {
        value *= c_prime(p)?;
    }
    let mut prefix = 1u128;
    let mut odd = false;
    for w in primes.windows(2) {
        prefix *= w[0] as u128;
        let e = ((prefix - 1) / 2) * ((w[1] as u128 - 1) / 2);
        odd ^= e % 2 == 1;
    }
    Ok(if odd { -value } else { value })
}

/// Closed-form DFT `c_n * (m/n)` of the Jacobi sequence.
pub fn dft_jacobi_closed(n: u64) -> Result<ComplexSeq> {
    let f = squarefree(n)?;
    let c = c_n(n)?;
    Ok((0..n as i64)
        .map(|m| c * arith::jacobi_with(m, &f) as f64)
        .collect::<Vec<_>>()
        .into())
}

/// 0/1 values of the modified Legendre sequence `((n/p) + 1 - delta_0) / 2`:
/// 0 at 0, 1 on the nonzero quadratic residues.
pub fn modified_legendre_values(p: u64) -> Result<Vec<u8>> {
    arith::check_odd_prime(p)?;
    Ok((0..p as i64)
        .map(|n| u8::from(legendre_symbol(n, p) == 1))
        .collect())
}

pub fn modified_legendre(p: u64) -> Result<ComplexSeq> {
    Ok(ComplexSeq::from_real(
        modified_legendre_values(p)?.into_iter().map(f64::from),
    ))
}

/// 0/1 values of the modified Jacobi (twin-prime) sequence of length `pq`,
/// `((n/pq) + 1 - comb_p + comb_q + delta_0) / 2`:
///
/// * 1 on multiples of `q`, including 0,
/// * 0 on nonzero multiples of `p`,
/// * 1 where `(n/pq) = 1` and 0 where `(n/pq) = -1` on the units.
pub fn modified_jacobi_values(p: u64, q: u64) -> Result<Vec<u8>> {
    check_pair(p, q)?;
    Ok((0..p * q)
        .map(|n| {
            if n % q == 0 {
                1
            } else if n % p == 0 {
                0
            } else {
                let s = legendre_symbol(n as i64, p) * legendre_symbol(n as i64, q);
                u8::from(s == 1)
            }
        })
        .collect())
}

pub fn modified_jacobi(p: u64, q: u64) -> Result<ComplexSeq> {
    Ok(ComplexSeq::from_real(
        modified_jacobi_values(p, q)?.into_iter().map(f64::from),
    ))
}

/// Integer vector `(n/pq) + 1 - comb_p + comb_q + delta_0`, which equals
/// twice the modified Jacobi sequence.
pub fn modified_jacobi_decomposition(p: u64, q: u64) -> Result<Vec<i64>> {
    check_pair(p, q)?;
    let n = p * q;
    Ok((0..n)
        .map(|k| {
            let jac = jacobi_symbol(k as i64, n).expect("odd modulus") as i64;
            let comb_p = i64::from(k % p == 0);
            let comb_q = i64::from(k % q == 0);
            let delta = i64::from(k == 0);
            jac + 1 - comb_p + comb_q + delta
        })
        .collect())
}

/// Closed-form DFT of the modified Legendre sequence:
/// `(p-1)/2` at 0, `(c_p (m/p) - 1)/2` elsewhere.
pub fn dft_modified_legendre_closed(p: u64) -> Result<ComplexSeq> {
    let c = c_prime(p)?;
    Ok((0..p as i64)
        .map(|m| {
            if m == 0 {
                real((p as f64 - 1.0) / 2.0)
            } else {
                (c * legendre_symbol(m, p) as f64 - 1.0) / 2.0
            }
        })
        .collect::<Vec<_>>()
        .into())
}

/// Closed-form DFT of the modified Jacobi sequence (piecewise by `m`).
pub fn dft_modified_jacobi_closed(p: u64, q: u64) -> Result<ComplexSeq> {
    check_pair(p, q)?;
    let n = p * q;
    let c = c_n(n)?;
    let (pf, qf) = (p as f64, q as f64);
    Ok((0..n)
        .map(|m| {
            let twice = if m == 0 {
                real(pf * qf - qf + pf + 1.0)
            } else if m % q == 0 {
                real(1.0 - qf)
            } else if m % p == 0 {
                real(pf + 1.0)
            } else {
                c * jacobi_symbol(m as i64, n).expect("odd") as f64 + 1.0
            };
            twice / 2.0
        })
        .collect::<Vec<_>>()
        .into())
}

/// Golomb phase `alpha = exp(i*phi)`, `phi = arccos(-(n-1)/(n+1))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GolombAlpha {
    pub n: u64,
    pub phi: f64,
    pub alpha: Complex64,
}

impl GolombAlpha {
    /// Phase for a sequence of length `n` (`n = pq`, or `n = p` in the prime case).
    pub fn for_length(n: u64) -> Self {
        let nf = n as f64;
        let phi = (-(nf - 1.0) / (nf + 1.0)).acos();
        Self {
            n,
            phi,
            alpha: Complex64::from_polar(1.0, phi),
        }
    }
}

fn two_valued(values: &[u8], alpha: Complex64) -> ComplexSeq {
    values
        .iter()
        .map(|&v| if v == 1 { real(1.0) } else { alpha })
        .collect::<Vec<_>>()
        .into()
}

/// Golomb sequence of length `pq`: 1 where the modified Jacobi sequence is 1,
/// `alpha` elsewhere.
pub fn golomb(p: u64, q: u64) -> Result<ComplexSeq> {
    let x = modified_jacobi_values(p, q)?;
    Ok(two_valued(&x, GolombAlpha::for_length(p * q).alpha))
}

/// Prime-length Golomb sequence built on the modified Legendre sequence.
pub fn golomb_prime(p: u64) -> Result<ComplexSeq> {
    let x = modified_legendre_values(p)?;
    Ok(two_valued(&x, GolombAlpha::for_length(p).alpha))
}

pub fn dft_golomb_closed(p: u64, q: u64) -> Result<ComplexSeq> {
    check_pair(p, q)?;
    let n = p * q;
    let alpha = GolombAlpha::for_length(n).alpha;
    let c = c_n(n)?;
    let (pf, qf) = (p as f64, q as f64);
    let one = real(1.0);
    Ok((0..n)
        .map(|m| {
            let twice = if m == 0 {
                (one + alpha) * pf * qf + (one - alpha) * (pf + 1.0 - qf)
            } else if m % q == 0 {
                (one - alpha) * (1.0 - qf)
            } else if m % p == 0 {
                (one - alpha) * (pf + 1.0)
            } else {
                (one - alpha) * (c * jacobi_symbol(m as i64, n).expect("odd") as f64 + 1.0)
            };
            twice / 2.0
        })
        .collect::<Vec<_>>()
        .into())
}

pub fn dft_golomb_prime_closed(p: u64) -> Result<ComplexSeq> {
    let c = c_prime(p)?;
    let alpha = GolombAlpha::for_length(p).alpha;
    let one = real(1.0);
    Ok((0..p as i64)
        .map(|m| {
            let twice = if m == 0 {
                (one + alpha) * p as f64 + alpha - 1.0
            } else {
                (one - alpha) * (c * legendre_symbol(m, p) as f64 - 1.0)
            };
            twice / 2.0
        })
        .collect::<Vec<_>>()
        .into())
}

/// Closed-form `r1 x r2` Zak transform (`L = r2`) of the Jacobi sequence
/// mod `r1*r2`:
/// `c_{r2} (r1/r2) exp(-2*pi*i*r1^{-1}*j*k/r2) (j/r2) (k/r1)`.
pub fn fzt_jacobi_closed(r1: u64, r2: u64) -> Result<ZakArray> {
    let f1 = squarefree(r1)?;
    let f2 = squarefree(r2)?;
    if gcd(r1, r2) != 1 {
        return Err(Error::NotCoprime { a: r1, b: r2 });
    }
    let c = c_n(r2)? * arith::jacobi_with(r1 as i64, &f2) as f64;
    let r1_inv = inv_mod(r1 % r2, r2).expect("coprime");
    let mut grid = ZakArray::zeros(r2 as usize, r1 as usize);
    for j in 0..r2 {
        let sj = arith::jacobi_with(j as i64, &f2);
        for k in 0..r1 {
            let sk = arith::jacobi_with(k as i64, &f1);
            if sj * sk == 0 {
                continue;
            }
            let phase = zak_phase(r1_inv, j, k, r2);
            grid.set(j as usize, k as usize, c * phase * (sj * sk) as f64);
        }
    }
    Ok(grid)
}

/// `exp(-2*pi*i*inv*j*k/r)`.
fn zak_phase(inv: u64, j: u64, k: u64, r: u64) -> Complex64 {
    UnityExponent::root(-((inv * j % r * k % r) as i64), r).to_complex()
}

/// Closed-form `q x p` Zak transform (`L = q`) of the modified Jacobi
/// sequence:
///
/// * `1` for `k = 0`,
/// * `(q+1)/2` for `j = 0, k != 0`,
/// * `(A/2) exp(-2*pi*i*p^{-1}*k*j/q)` otherwise, with
///   `A = 1 + c_q (p/q) (k/p) (j/q)`.
pub fn fzt_modified_jacobi_closed(p: u64, q: u64) -> Result<ZakArray> {
    check_pair(p, q)?;
    let c = c_prime(q)? * legendre_symbol(p as i64, q) as f64;
    let p_inv = inv_mod(p % q, q).expect("distinct primes");
    let mut grid = ZakArray::zeros(q as usize, p as usize);
    for j in 0..q {
        for k in 0..p {
            let v = if k == 0 {
                real(1.0)
            } else if j == 0 {
                real((q as f64 + 1.0) / 2.0)
            } else {
                interior_amplitude(c, p, q, j, k) / 2.0 * zak_phase(p_inv, j, k, q)
            };
            grid.set(j as usize, k as usize, v);
        }
    }
    Ok(grid)
}

/// `A(j,k) = 1 + c_q (p/q) (k/p) (j/q)`; `c` carries `c_q (p/q)`.
fn interior_amplitude(c: Complex64, p: u64, q: u64, j: u64, k: u64) -> Complex64 {
    let s = legendre_symbol(k as i64, p) * legendre_symbol(j as i64, q);
    1.0 + c * s as f64
}

/// Closed-form `q x p` Zak transform of the Golomb sequence, via
/// `(1 - alpha) X{x} + alpha X{1}`:
///
/// * `1 - alpha + alpha*q` at `j = k = 0`,
/// * `(1 - alpha)(q+1)/2 + alpha*q` for `j = 0, k != 0`,
/// * `1 - alpha` for `k = 0, j != 0`,
/// * `(1 - alpha)/2 * A * exp(-2*pi*i*p^{-1}*k*j/q)` otherwise.
pub fn fzt_golomb_closed(p: u64, q: u64) -> Result<ZakArray> {
    check_pair(p, q)?;
    let alpha = GolombAlpha::for_length(p * q).alpha;
    let one = real(1.0);
    let qf = q as f64;
    let c = c_prime(q)? * legendre_symbol(p as i64, q) as f64;
    let p_inv = inv_mod(p % q, q).expect("distinct primes");
    let mut grid = ZakArray::zeros(q as usize, p as usize);
    for j in 0..q {
        for k in 0..p {
            let v = match (j, k) {
                (0, 0) => one - alpha + alpha * qf,
                (0, _) => (one - alpha) * (qf + 1.0) / 2.0 + alpha * qf,
                (_, 0) => one - alpha,
                _ => (one - alpha) / 2.0 * interior_amplitude(c, p, q, j, k) * zak_phase(p_inv, j, k, q),
            };
            grid.set(j as usize, k as usize, v);
        }
    }
    Ok(grid)
}
