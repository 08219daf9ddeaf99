//! Multiplicative characters on Z/N, stored exactly.
//!
//! A character is a tuple of component indices `(l_1, ..., l_r)`, one per
//! prime-power factor `p_j^m_j` of `N`. Component `j` sends the smallest
//! primitive root `z_j` of U(p_j^m_j) to `exp(2*pi*i*l_j/t_j)`, and the
//! full character is the CRT product of its components. Values are
//! [`UnityExponent`]s, so multiplicativity and conjugation hold exactly.

use std::fmt;
use std::ops::Mul;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::arith::{self, gcd, lcm, reduce, Factorization, UnitGroupInfo};
use crate::error::{Error, Result};

/// A complex value that is either zero or a root of unity `exp(2*pi*i*num/den)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnityExponent {
    Zero,
    Root { num: u64, den: u64 },
}

impl UnityExponent {
    pub const ONE: UnityExponent = UnityExponent::Root { num: 0, den: 1 };

    /// `exp(2*pi*i*num/den)`, normalized to `0 <= num < den` in lowest terms.
    pub fn root(num: i64, den: u64) -> Self {
        assert!(den > 0, "denominator must be positive");
        let num = reduce(num, den);
        let g = gcd(num, den);
        UnityExponent::Root {
            num: num / g,
            den: den / g,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, UnityExponent::Zero)
    }

    pub fn conj(self) -> Self {
        match self {
            UnityExponent::Zero => UnityExponent::Zero,
            UnityExponent::Root { num, den } => UnityExponent::root(-(num as i64), den),
        }
    }

    pub fn pow(self, k: u64) -> Self {
        match self {
            UnityExponent::Zero if k == 0 => UnityExponent::ONE,
            UnityExponent::Zero => UnityExponent::Zero,
            UnityExponent::Root { num, den } => {
                UnityExponent::root(arith::mul_mod(num, k, den) as i64, den)
            }
        }
    }

    /// Numerator over a denominator that is a multiple of this value's own.
    pub fn numerator_over(&self, den: u64) -> Option<u64> {
        match *self {
            UnityExponent::Zero => None,
            UnityExponent::Root { num, den: d } => {
                debug_assert_eq!(den % d, 0);
                Some(num * (den / d))
            }
        }
    }

    pub fn to_complex(self) -> Complex64 {
        match self {
            UnityExponent::Zero => Complex64::new(0.0, 0.0),
            UnityExponent::Root { num, den } => {
                let theta = std::f64::consts::TAU * num as f64 / den as f64;
                Complex64::new(theta.cos(), theta.sin())
            }
        }
    }

    /// Real value for characters of order at most two.
    pub fn as_sign(&self) -> Option<i8> {
        match *self {
            UnityExponent::Zero => Some(0),
            UnityExponent::Root { num: 0, .. } => Some(1),
            UnityExponent::Root { num: 1, den: 2 } => Some(-1),
            _ => None,
        }
    }
}

impl Mul for UnityExponent {
    type Output = UnityExponent;

    fn mul(self, rhs: Self) -> Self {
        match (self, rhs) {
            (UnityExponent::Root { num: a, den: da }, UnityExponent::Root { num: b, den: db }) => {
                let den = lcm(da, db);
                UnityExponent::root((a * (den / da) + b * (den / db)) as i64, den)
            }
            _ => UnityExponent::Zero,
        }
    }
}

impl fmt::Display for UnityExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnityExponent::Zero => write!(f, "0"),
            UnityExponent::Root { num, den } => write!(f, "e(2pi i {num}/{den})"),
        }
    }
}

/// One prime-power factor of a character.
#[derive(Debug, Clone)]
pub struct Component {
    unit: Arc<UnitGroupInfo>,
    index: u64,
}

impl Component {
    pub fn new(unit: Arc<UnitGroupInfo>, index: u64) -> Result<Self> {
        if index >= unit.order {
            return Err(Error::IndexOutOfRange {
                index,
                order: unit.order,
            });
        }
        Ok(Self { unit, index })
    }

    pub fn p(&self) -> u64 {
        self.unit.p
    }

    pub fn m(&self) -> u32 {
        self.unit.m
    }

    pub fn modulus(&self) -> u64 {
        self.unit.modulus
    }

    pub fn order(&self) -> u64 {
        self.unit.order
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn unit_group(&self) -> &UnitGroupInfo {
        &self.unit
    }

    pub fn evaluate(&self, a: i64) -> UnityExponent {
        match self.unit.log(reduce(a, self.unit.modulus)) {
            None => UnityExponent::Zero,
            Some(k) => UnityExponent::root(
                arith::mul_mod(self.index, k, self.unit.order) as i64,
                self.unit.order,
            ),
        }
    }

    /// Primitive iff non-trivial for `m = 1`, and iff `gcd(l, p^m) = 1` for `m >= 2`.
    pub fn is_primitive(&self) -> bool {
        if self.unit.m == 1 {
            self.index != 0
        } else {
            self.index != 0 && gcd(self.index, self.unit.modulus) == 1
        }
    }
}

impl PartialEq for Component {
    fn eq(&self, other: &Self) -> bool {
        self.unit.modulus == other.unit.modulus && self.index == other.index
    }
}

impl Eq for Component {}

/// A multiplicative character on Z/n, zero off U(n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    n: u64,
    components: Vec<Component>,
}

/// Serialized form `{n, components: [{p, m, l}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterRecord {
    pub n: u64,
    pub components: Vec<ComponentRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentRecord {
    pub p: u64,
    pub m: u32,
    pub l: u64,
}

/// Shared unit-group tables for every prime power of a modulus.
pub fn unit_groups(f: &Factorization) -> Result<Vec<Arc<UnitGroupInfo>>> {
    f.factors()
        .iter()
        .map(|pp| UnitGroupInfo::new(pp.p, pp.exp).map(Arc::new))
        .collect()
}

impl Character {
    fn from_components(mut components: Vec<Component>) -> Self {
        components.sort_by_key(Component::p);
        let n = components.iter().map(Component::modulus).product();
        Self { n, components }
    }

    /// Character on Z/n labelled by its component indices, in increasing
    /// prime order.
    pub fn from_labels(n: u64, labels: &[u64]) -> Result<Self> {
        let f = arith::factorize(n)?;
        let units = unit_groups(&f)?;
        Self::from_units(&units, labels)
    }

    pub fn from_units(units: &[Arc<UnitGroupInfo>], labels: &[u64]) -> Result<Self> {
        if units.len() != labels.len() {
            return Err(Error::LabelCount {
                expected: units.len(),
                got: labels.len(),
            });
        }
        let components = units
            .iter()
            .zip(labels)
            .map(|(u, &l)| Component::new(Arc::clone(u), l))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_components(components))
    }

    pub fn on_prime_power(p: u64, m: u32, l: u64) -> Result<Self> {
        let unit = Arc::new(UnitGroupInfo::new(p, m)?);
        Ok(Self::from_components(vec![Component::new(unit, l)?]))
    }

    pub fn trivial(n: u64) -> Result<Self> {
        let f = arith::factorize(n)?;
        Self::from_labels(n, &vec![0; f.factors().len()])
    }

    /// The Legendre symbol mod `p`, i.e. the character of index `(p-1)/2`.
    pub fn legendre(p: u64) -> Result<Self> {
        arith::check_odd_prime(p)?;
        character_on_prime(p, (p - 1) / 2)
    }

    /// The Jacobi symbol mod a squarefree odd `n`.
    pub fn jacobi(n: u64) -> Result<Self> {
        let f = arith::factorize(n)?;
        if !f.is_squarefree() {
            return Err(Error::NotSquarefree(n));
        }
        let labels: Vec<u64> = f.factors().iter().map(|pp| (pp.p - 1) / 2).collect();
        Self::from_labels(n, &labels)
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    /// Order of U(n).
    pub fn group_order(&self) -> u64 {
        self.components.iter().map(Component::order).product()
    }

    /// Common denominator of every value: the lcm of the component orders.
    pub fn exponent(&self) -> u64 {
        self.components.iter().map(Component::order).fold(1, lcm)
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn labels(&self) -> Vec<u64> {
        self.components.iter().map(Component::index).collect()
    }

    pub fn record(&self) -> CharacterRecord {
        CharacterRecord {
            n: self.n,
            components: self
                .components
                .iter()
                .map(|c| ComponentRecord {
                    p: c.p(),
                    m: c.m(),
                    l: c.index(),
                })
                .collect(),
        }
    }

    pub fn evaluate(&self, a: i64) -> UnityExponent {
        self.components
            .iter()
            .map(|c| c.evaluate(a))
            .fold(UnityExponent::ONE, Mul::mul)
    }

    pub fn is_primitive(&self) -> bool {
        self.components.iter().all(Component::is_primitive)
    }

    pub fn is_trivial(&self) -> bool {
        self.components.iter().all(|c| c.index == 0)
    }

    pub fn conj(&self) -> Self {
        self.pow(self.exponent() - 1)
    }

    pub fn pow(&self, k: u64) -> Self {
        Self {
            n: self.n,
            components: self
                .components
                .iter()
                .map(|c| Component {
                    unit: Arc::clone(&c.unit),
                    index: arith::mul_mod(c.index, k, c.order()),
                })
                .collect(),
        }
    }

    /// The component characters living on the factor `r` of the modulus.
    ///
    /// `r` must be a product of whole prime-power factors of `n`.
    pub fn restrict(&self, r: u64) -> Result<Self> {
        let parts: Vec<Component> = self
            .components
            .iter()
            .filter(|c| r % c.modulus() == 0)
            .cloned()
            .collect();
        let got: u64 = parts.iter().map(Component::modulus).product();
        if got != r || self.n % r != 0 || r < 3 {
            return Err(Error::SplitMismatch { r1: r, r2: self.n / r.max(1) });
        }
        Ok(Self::from_components(parts))
    }

    /// Exact values on `0..n`.
    pub fn values(&self) -> Vec<UnityExponent> {
        (0..self.n as i64).map(|a| self.evaluate(a)).collect()
    }

    /// Complex values on `0..n`, with one trig evaluation per root of unity
    /// of order [`Character::exponent`].
    pub fn to_complex(&self) -> Vec<Complex64> {
        let den = self.exponent();
        let roots = crate::signal::roots_of_unity(den as usize);
        self.values()
            .into_iter()
            .map(|v| match v.numerator_over(den) {
                None => Complex64::new(0.0, 0.0),
                Some(k) => roots[k as usize],
            })
            .collect()
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.labels().iter().map(u64::to_string).collect();
        write!(f, "chi[{}; l={}]", self.n, labels.join(","))
    }
}

/// Character `chi_j` on Z/p: `chi_j(g^a) = exp(2*pi*i*j*a/(p-1))`.
pub fn character_on_prime(p: u64, j: u64) -> Result<Character> {
    arith::check_odd_prime(p)?;
    Character::on_prime_power(p, 1, j)
}

/// Character `chi_l` on Z/p^m (`m >= 2`): `chi_l(z^a) = exp(2*pi*i*l*a/t)`.
pub fn character_on_prime_power(p: u64, m: u32, l: u64) -> Result<Character> {
    arith::check_odd_prime(p)?;
    if m < 2 {
        return Err(Error::ModulusTooSmall(p.pow(m)));
    }
    Character::on_prime_power(p, m, l)
}

/// The character `chi(a) = chi1(a mod r1) * chi2(a mod r2)` on Z/(r1*r2).
pub fn compose_crt(chi1: &Character, chi2: &Character) -> Result<Character> {
    let (r1, r2) = (chi1.modulus(), chi2.modulus());
    if gcd(r1, r2) != 1 {
        return Err(Error::NotCoprime { a: r1, b: r2 });
    }
    let mut components = chi1.components.clone();
    components.extend(chi2.components.iter().cloned());
    Ok(Character::from_components(components))
}

pub fn evaluate(chi: &Character, a: i64) -> UnityExponent {
    chi.evaluate(a)
}

pub fn is_primitive(chi: &Character) -> bool {
    chi.is_primitive()
}

/// All `phi(n)` characters on Z/n, in lexicographic label order.
pub fn enumerate_characters(n: u64) -> Result<Vec<Character>> {
    let f = arith::factorize(n)?;
    let units = unit_groups(&f)?;
    let mut out = Vec::with_capacity(f.euler_phi() as usize);
    let mut labels = vec![0u64; units.len()];
    loop {
        out.push(Character::from_units(&units, &labels)?);
        // odometer increment, last component fastest
        let mut i = units.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            labels[i] += 1;
            if labels[i] < units[i].order {
                break;
            }
            labels[i] = 0;
        }
    }
}

pub fn enumerate_primitive(n: u64) -> Result<Vec<Character>> {
    Ok(enumerate_characters(n)?
        .into_iter()
        .filter(Character::is_primitive)
        .collect())
}
