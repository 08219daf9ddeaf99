//! Exact modular arithmetic over odd moduli: factorization, unit groups,
//! CRT idempotents, primitive roots, discrete logarithms, and the
//! Legendre/Jacobi symbols. Everything here is integer-only.

use crate::error::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Reduces a signed integer into `[0, m)`.
#[inline]
pub fn reduce(a: i64, m: u64) -> u64 {
    (a as i128).rem_euclid(m as i128) as u64
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Rejects even moduli and moduli below 3.
pub fn check_odd_modulus(n: u64) -> Result<()> {
    if n < 3 {
        Err(Error::ModulusTooSmall(n))
    } else if n % 2 == 0 {
        Err(Error::EvenModulus(n))
    } else {
        Ok(())
    }
}

pub fn check_odd_prime(p: u64) -> Result<()> {
    check_odd_modulus(p)?;
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimePower {
    pub p: u64,
    pub exp: u32,
}

impl PrimePower {
    pub fn value(&self) -> u64 {
        self.p.pow(self.exp)
    }

    /// Order of U(p^exp).
    pub fn unit_order(&self) -> u64 {
        self.p.pow(self.exp - 1) * (self.p - 1)
    }
}

/// Distinct-prime-power decomposition of an odd modulus, primes increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    n: u64,
    factors: Vec<PrimePower>,
}

impl Factorization {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[PrimePower] {
        &self.factors
    }

    pub fn euler_phi(&self) -> u64 {
        self.factors.iter().map(PrimePower::unit_order).product()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|f| f.exp == 1)
    }

    pub fn is_prime_power(&self) -> bool {
        self.factors.len() == 1
    }

    /// Every ordered coprime split `n = r1 * r2` with `r1, r2 > 1`.
    ///
    /// Each split groups whole prime powers, so there are `2^r - 2` of them
    /// for `r` distinct primes.
    pub fn coprime_splits(&self) -> Vec<CrtSplit> {
        let r = self.factors.len();
        let mut out = Vec::new();
        for mask in 1..(1u32 << r) - 1 {
            let r1: u64 = self
                .factors
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, f)| f.value())
                .product();
            let r2 = self.n / r1;
            out.push(crt_split(self.n, r1, r2).expect("prime-power grouping is coprime"));
        }
        out
    }
}

/// Trial-division factorization of an odd `n >= 3`.
pub fn factorize(n: u64) -> Result<Factorization> {
    check_odd_modulus(n)?;
    let mut factors = Vec::new();
    let mut rest = n;
    let mut d = 3u64;
    while d * d <= rest {
        if rest % d == 0 {
            let mut exp = 0;
            while rest % d == 0 {
                rest /= d;
                exp += 1;
            }
            factors.push(PrimePower { p: d, exp });
        }
        d += 2;
    }
    if rest > 1 {
        factors.push(PrimePower { p: rest, exp: 1 });
    }
    Ok(Factorization { n, factors })
}

pub fn euler_phi(f: &Factorization) -> u64 {
    f.euler_phi()
}

/// Coprime factorization `n = r1 * r2` together with its CRT idempotents.
///
/// `e1 = 1 mod r1, 0 mod r2`; `e2 = 0 mod r1, 1 mod r2`; `f1 = e1 / r2`,
/// `f2 = e2 / r1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CrtSplit {
    pub n: u64,
    pub r1: u64,
    pub r2: u64,
    pub e1: u64,
    pub e2: u64,
    pub f1: u64,
    pub f2: u64,
}

impl CrtSplit {
    /// CRT reconstruction `a1*e1 + a2*e2 mod n`.
    pub fn combine(&self, a1: u64, a2: u64) -> u64 {
        (mul_mod(a1 % self.r1, self.e1, self.n) + mul_mod(a2 % self.r2, self.e2, self.n)) % self.n
    }
}

pub fn crt_split(n: u64, r1: u64, r2: u64) -> Result<CrtSplit> {
    if r1 <= 1 || r2 <= 1 || r1.checked_mul(r2) != Some(n) {
        return Err(Error::BadSplit { n, r1, r2 });
    }
    if gcd(r1, r2) != 1 {
        return Err(Error::NotCoprime { a: r1, b: r2 });
    }
    let f1 = inv_mod(r2 % r1, r1).expect("coprime");
    let f2 = inv_mod(r1 % r2, r2).expect("coprime");
    Ok(CrtSplit {
        n,
        r1,
        r2,
        e1: f1 * r2,
        e2: f2 * r1,
        f1,
        f2,
    })
}

fn distinct_prime_divisors(mut t: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= t {
        if t % d == 0 {
            out.push(d);
            while t % d == 0 {
                t /= d;
            }
        }
        d += 1;
    }
    if t > 1 {
        out.push(t);
    }
    out
}

/// Smallest generator of the cyclic group U(p^m), p an odd prime.
pub fn primitive_root(p: u64, m: u32) -> Result<u64> {
    check_odd_prime(p)?;
    if m == 0 {
        return Err(Error::ModulusTooSmall(1));
    }
    let modulus = p.pow(m);
    let order = p.pow(m - 1) * (p - 1);
    let qs = distinct_prime_divisors(order);
    let z = (2..modulus)
        .filter(|&z| z % p != 0)
        .find(|&z| qs.iter().all(|&q| pow_mod(z, order / q, modulus) != 1))
        .expect("U(p^m) is cyclic for odd p");
    Ok(z)
}

/// The cyclic unit group U(p^m) with its smallest generator and a full
/// discrete-log table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitGroupInfo {
    pub p: u64,
    pub m: u32,
    pub modulus: u64,
    pub order: u64,
    pub generator: u64,
    // log_table[a] = dlog of a, or NO_LOG for non-units
    log_table: Vec<u32>,
}

const NO_LOG: u32 = u32::MAX;

impl UnitGroupInfo {
    pub fn new(p: u64, m: u32) -> Result<Self> {
        let generator = primitive_root(p, m)?;
        let modulus = p.pow(m);
        let order = p.pow(m - 1) * (p - 1);
        let mut log_table = vec![NO_LOG; modulus as usize];
        let mut acc = 1u64;
        for k in 0..order {
            log_table[acc as usize] = k as u32;
            acc = mul_mod(acc, generator, modulus);
        }
        Ok(Self {
            p,
            m,
            modulus,
            order,
            generator,
            log_table,
        })
    }

    /// Discrete log base `generator`; `a` is reduced modulo `modulus` first.
    pub fn discrete_log(&self, a: u64) -> Result<u64> {
        self.log(a).ok_or(Error::NotUnit {
            a,
            modulus: self.modulus,
        })
    }

    #[inline]
    pub fn log(&self, a: u64) -> Option<u64> {
        match self.log_table[(a % self.modulus) as usize] {
            NO_LOG => None,
            k => Some(k as u64),
        }
    }
}

pub fn discrete_log(info: &UnitGroupInfo, a: u64) -> Result<u64> {
    info.discrete_log(a)
}

/// Legendre symbol `(a/p)` by Euler's criterion.
pub fn legendre_symbol(a: i64, p: u64) -> i8 {
    let a = reduce(a, p);
    if a == 0 {
        return 0;
    }
    match pow_mod(a, (p - 1) / 2, p) {
        1 => 1,
        r if r == p - 1 => -1,
        r => unreachable!("Euler criterion gave {r} mod {p}; is p prime?"),
    }
}

/// Jacobi symbol `(a/n)` as the product of Legendre symbols over the prime
/// factorization of `n` (with multiplicity).
pub fn jacobi_symbol(a: i64, n: u64) -> Result<i8> {
    let f = factorize(n)?;
    Ok(jacobi_with(a, &f))
}

pub fn jacobi_with(a: i64, f: &Factorization) -> i8 {
    f.factors()
        .iter()
        .map(|pp| {
            let l = legendre_symbol(a, pp.p);
            if pp.exp % 2 == 0 && l != 0 {
                1
            } else {
                l
            }
        })
        .product()
}

/// `(-1)^(((a-1)/2)((b-1)/2))` for coprime odd `a, b`.
pub fn qrl_sign(a: u64, b: u64) -> Result<i8> {
    for v in [a, b] {
        if v % 2 == 0 {
            return Err(Error::EvenModulus(v));
        }
    }
    if gcd(a, b) != 1 {
        return Err(Error::NotCoprime { a, b });
    }
    let e = ((a - 1) / 2) * ((b - 1) / 2);
    Ok(if e % 2 == 0 { 1 } else { -1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phi_by_count(n: u64) -> u64 {
        (0..n).filter(|&a| gcd(a, n) == 1).count() as u64
    }

    fn split_by_search(n: u64, r1: u64, r2: u64) -> (u64, u64) {
        let e1 = (0..n).find(|e| e % r1 == 1 % r1 && e % r2 == 0).unwrap();
        let e2 = (0..n).find(|e| e % r1 == 0 && e % r2 == 1 % r2).unwrap();
        (e1, e2)
    }

    fn smallest_generator_by_orders(modulus: u64, order: u64) -> u64 {
        (2..modulus)
            .find(|&z| {
                gcd(z, modulus) == 1 && {
                    let mut acc = 1;
                    let mut k = 0;
                    loop {
                        acc = acc * z % modulus;
                        k += 1;
                        if acc == 1 {
                            break k == order;
                        }
                    }
                }
            })
            .unwrap()
    }

    #[test]
    fn factorize_examples() {
        let f = factorize(45).unwrap();
        assert_eq!(f.factors(), &[PrimePower { p: 3, exp: 2 }, PrimePower { p: 5, exp: 1 }]);
        assert_eq!(factorize(7).unwrap().factors(), &[PrimePower { p: 7, exp: 1 }]);
        let f = factorize(105).unwrap();
        let ps: Vec<_> = f.factors().iter().map(|f| (f.p, f.exp)).collect();
        assert_eq!(ps, vec![(3, 1), (5, 1), (7, 1)]);
    }

    #[test]
    fn factorize_rejects_even_and_small() {
        assert_eq!(factorize(10), Err(Error::EvenModulus(10)));
        assert_eq!(factorize(1), Err(Error::ModulusTooSmall(1)));
        assert_eq!(factorize(2), Err(Error::ModulusTooSmall(2)));
    }

    #[test]
    fn factorization_invariants_sweep() {
        for n in (3..5000u64).step_by(2) {
            let f = factorize(n).unwrap();
            let prod: u64 = f.factors().iter().map(PrimePower::value).product();
            assert_eq!(prod, n);
            assert!(f.factors().windows(2).all(|w| w[0].p < w[1].p));
            assert!(f.factors().iter().all(|pp| pp.p % 2 == 1 && is_prime(pp.p)));
        }
    }

    #[test]
    fn euler_phi_matches_counting() {
        assert_eq!(factorize(45).unwrap().euler_phi(), 24);
        assert_eq!(factorize(15).unwrap().euler_phi(), 8);
        assert_eq!(factorize(13).unwrap().euler_phi(), 12);
        for n in (3..=10_000u64).step_by(2) {
            let phi = euler_phi(&factorize(n).unwrap());
            assert_eq!(phi, phi_by_count(n), "n={n}");
            assert_eq!(phi % 2, 0);
        }
    }

    #[test]
    fn crt_split_examples() {
        let s = crt_split(15, 3, 5).unwrap();
        assert_eq!((s.e1, s.e2, s.f1, s.f2), (10, 6, 2, 2));
        assert_eq!(split_by_search(15, 3, 5), (10, 6));
        let s = crt_split(21, 3, 7).unwrap();
        assert_eq!((s.e1, s.e2), (7, 15));
        assert_eq!(split_by_search(21, 3, 7), (7, 15));
    }

    #[test]
    fn crt_split_rejects_bad_input() {
        assert_eq!(crt_split(45, 3, 15), Err(Error::NotCoprime { a: 3, b: 15 }));
        assert!(matches!(crt_split(15, 3, 7), Err(Error::BadSplit { .. })));
        assert!(matches!(crt_split(15, 1, 15), Err(Error::BadSplit { .. })));
    }

    #[test]
    fn crt_invariants_sweep() {
        for n in (3..2000u64).step_by(2) {
            for s in factorize(n).unwrap().coprime_splits() {
                let (e1, e2) = (s.e1, s.e2);
                assert_eq!((e1, e2), split_by_search(n, s.r1, s.r2));
                assert_eq!((e1 % s.r1, e1 % s.r2), (1, 0));
                assert_eq!((e2 % s.r1, e2 % s.r2), (0, 1));
                assert_eq!(mul_mod(e1, e1, n), e1);
                assert_eq!(mul_mod(e2, e2, n), e2);
                assert_eq!(mul_mod(e1, e2, n), 0);
                assert_eq!((e1 + e2) % n, 1);
                assert_eq!(s.f1 * s.r2, e1);
                assert_eq!(s.f2 * s.r1, e2);
                assert_eq!(gcd(s.f1, s.r1), 1);
                assert_eq!(gcd(s.f2, s.r2), 1);
            }
        }
    }

    #[test]
    fn coprime_split_count() {
        assert_eq!(factorize(105).unwrap().coprime_splits().len(), 6);
        assert_eq!(factorize(45).unwrap().coprime_splits().len(), 2);
        assert!(factorize(27).unwrap().coprime_splits().is_empty());
    }

    #[test]
    fn primitive_root_examples() {
        assert_eq!(primitive_root(7, 1).unwrap(), 3);
        assert_eq!(primitive_root(5, 1).unwrap(), 2);
        assert_eq!(primitive_root(3, 2).unwrap(), 2);
        for (p, m) in [(3, 1), (3, 3), (5, 2), (7, 2), (11, 1), (13, 1), (29, 1), (41, 1), (3, 4)] {
            let modulus = u64::pow(p, m);
            let order = p.pow(m - 1) * (p - 1);
            assert_eq!(
                primitive_root(p, m).unwrap(),
                smallest_generator_by_orders(modulus, order),
                "p={p} m={m}"
            );
        }
    }

    #[test]
    fn unit_group_log_table_is_bijection() {
        for (p, m) in [(3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1), (11, 1)] {
            let info = UnitGroupInfo::new(p, m).unwrap();
            assert_eq!(pow_mod(info.generator, info.order, info.modulus), 1);
            let mut seen = vec![false; info.order as usize];
            for a in 0..info.modulus {
                match info.log(a) {
                    Some(k) => {
                        assert_eq!(gcd(a, info.modulus), 1);
                        assert_eq!(pow_mod(info.generator, k, info.modulus), a);
                        assert!(!seen[k as usize]);
                        seen[k as usize] = true;
                    }
                    None => assert!(gcd(a, info.modulus) > 1),
                }
            }
            assert!(seen.iter().all(|&s| s));
        }
    }

    #[test]
    fn discrete_log_examples() {
        let five = UnitGroupInfo::new(5, 1).unwrap();
        assert_eq!(five.generator, 2);
        assert_eq!(discrete_log(&five, 4).unwrap(), 2);
        assert_eq!(discrete_log(&five, 1).unwrap(), 0);
        let seven = UnitGroupInfo::new(7, 1).unwrap();
        assert_eq!(discrete_log(&seven, 6).unwrap(), 3);
        assert_eq!(
            discrete_log(&five, 10),
            Err(Error::NotUnit { a: 10, modulus: 5 })
        );
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre_symbol(0, 7), 0);
        assert_eq!(legendre_symbol(2, 7), 1);
        assert_eq!(legendre_symbol(3, 7), -1);
        assert_eq!(legendre_symbol(-1, 7), -1);
        assert_eq!(legendre_symbol(-1, 5), 1);
        for a in 1..40i64 {
            assert_eq!(legendre_symbol(a * a, 11), if a % 11 == 0 { 0 } else { 1 });
        }
    }

    #[test]
    fn legendre_matches_residue_enumeration() {
        for p in (3..=997u64).step_by(2).filter(|&p| is_prime(p)) {
            let mut is_square = vec![false; p as usize];
            for x in 1..p {
                is_square[(x * x % p) as usize] = true;
            }
            for a in 0..p {
                let expected = if a == 0 {
                    0
                } else if is_square[a as usize] {
                    1
                } else {
                    -1
                };
                assert_eq!(legendre_symbol(a as i64, p), expected, "a={a} p={p}");
            }
        }
    }

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi_symbol(2, 15).unwrap(), 1);
        assert_eq!(jacobi_symbol(3, 15).unwrap(), 0);
        assert_eq!(jacobi_symbol(7, 15).unwrap(), -1);
        assert_eq!(jacobi_symbol(2, 9).unwrap(), 1);
        assert_eq!(jacobi_symbol(2, 10), Err(Error::EvenModulus(10)));
        for n in (3..200u64).step_by(2) {
            for a in 0..n as i64 {
                let zero = jacobi_symbol(a, n).unwrap() == 0;
                assert_eq!(zero, gcd(a as u64, n) > 1);
            }
        }
    }

    #[test]
    fn qrl_sign_examples() {
        assert_eq!(qrl_sign(3, 5).unwrap(), 1);
        assert_eq!(qrl_sign(3, 7).unwrap(), -1);
        assert_eq!(qrl_sign(3, 9), Err(Error::NotCoprime { a: 3, b: 9 }));
        assert!(qrl_sign(4, 9).is_err());
    }

    #[test]
    fn quadratic_reciprocity_sweep() {
        for a in (3..=301u64).step_by(2) {
            for b in (a + 2..=301).step_by(2) {
                if gcd(a, b) != 1 {
                    continue;
                }
                let lhs = jacobi_symbol(a as i64, b).unwrap() * jacobi_symbol(b as i64, a).unwrap();
                assert_eq!(lhs, qrl_sign(a, b).unwrap(), "a={a} b={b}");
            }
        }
    }

    #[test]
    fn inverse_and_pow() {
        assert_eq!(inv_mod(3, 5), Some(2));
        assert_eq!(inv_mod(3, 9), None);
        assert_eq!(pow_mod(3, 0, 7), 1);
        assert_eq!(pow_mod(3, 3, 7), 6);
        assert_eq!(reduce(-1, 7), 6);
    }
}
