//! Exact arithmetic in cyclotomic fields.
//!
//! A [`Cyclotomic`] is stored in the Zumbroich basis of `Q(ζ_m)` where `m` is
//! the conductor of the value, so equal field elements always have identical
//! representations and equality is structural.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational number, always kept in lowest terms with positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CyclotomicError {
    #[error("galois exponent {k} is not coprime to conductor {order}")]
    NotCoprime { k: i64, order: u32 },
    #[error("division by zero")]
    DivisionByZero,
}

/// An element of `Q(ζ_m)` in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Cyclotomic {
    order: u32,
    // sorted by exponent, no zero coefficients
    coeffs: Vec<(u32, Rational)>,
}

pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub(crate) fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let g = BigInt::from(a).extended_gcd(&BigInt::from(m));
    if !g.gcd.is_one() && !(-g.gcd.clone()).is_one() {
        return None;
    }
    let x = g.x.to_i64()? * g.gcd.signum().to_i64()?;
    Some(x.rem_euclid(m))
}

/// True when exponent `k` of `ζ_n` is not a Zumbroich basis element with
/// respect to the prime-power part `q = p^ν` of `n`.
fn outside_basis(k: u64, p: u64, q: u64, inv: u64) -> bool {
    let j = (k % q) * inv % q;
    if p == 2 {
        j >= q / 2
    } else {
        j < q / p
    }
}

/// Rewrites a dense coefficient vector over all `n`-th roots of unity into the
/// Zumbroich basis of `Q(ζ_n)`.
fn reduce_to_basis(n: u64, v: &mut [Rational]) {
    for (p, e) in factorize(n) {
        let q = p.pow(e);
        let m = n / q;
        let inv = if q == 1 {
            0
        } else {
            mod_inverse((m % q) as i64, q as i64).unwrap() as u64
        };
        let step = n / p;
        for k in 0..n {
            if v[k as usize].is_zero() || !outside_basis(k, p, q, inv) {
                continue;
            }
            let c = std::mem::replace(&mut v[k as usize], Rational::zero());
            for l in 1..p {
                let t = ((k + l * step) % n) as usize;
                v[t] -= &c;
            }
        }
    }
}

/// Shrinks `(n, coeffs)` (already in Zumbroich form) to the conductor.
fn reduce_conductor(mut n: u64, mut coeffs: Vec<(u64, Rational)>) -> (u64, Vec<(u64, Rational)>) {
    'outer: loop {
        if coeffs.is_empty() {
            return (1, coeffs);
        }
        for (p, e) in factorize(n) {
            if e >= 2 || p == 2 {
                if coeffs.iter().all(|(k, _)| k % p == 0) {
                    n /= p;
                    for (k, _) in coeffs.iter_mut() {
                        *k /= p;
                    }
                    continue 'outer;
                }
                continue;
            }
            // p odd, p || n: each subfield basis element spreads over p-1
            // exponents with equal coefficients.
            if let Some(next) = try_drop_simple_prime(n, p, &coeffs) {
                n /= p;
                coeffs = next;
                continue 'outer;
            }
        }
        return (n, coeffs);
    }
}

fn try_drop_simple_prime(n: u64, p: u64, coeffs: &[(u64, Rational)]) -> Option<Vec<(u64, Rational)>> {
    let step = n / p;
    let step_inv = mod_inverse((step % p) as i64, p as i64)? as u64;
    let mut groups: Vec<(u64, Vec<&Rational>)> = Vec::new();
    for (k, c) in coeffs {
        let l = (k % p) * step_inv % p;
        if l == 0 {
            return None;
        }
        let b = (k + n - (l * step) % n) % n;
        match groups.iter_mut().find(|(bb, _)| *bb == b) {
            Some((_, v)) => v.push(c),
            None => groups.push((b, vec![c])),
        }
    }
    let reducible = groups
        .iter()
        .all(|(_, cs)| cs.len() as u64 == p - 1 && cs.iter().all(|c| *c == cs[0]));
    if !reducible {
        return None;
    }
    let mut next: Vec<(u64, Rational)> = groups
        .into_iter()
        .map(|(b, cs)| (b / p, -cs[0].clone()))
        .collect();
    next.sort_by_key(|(k, _)| *k);
    Some(next)
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic { order: 1, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(Rational::from_integer(n))
    }

    pub fn from_rational(r: Rational) -> Self {
        if r.is_zero() {
            Self::zero()
        } else {
            Cyclotomic { order: 1, coeffs: vec![(0, r)] }
        }
    }

    /// `ζ_n^e` for any integer exponent.
    pub fn root_of_unity(n: u32, e: i64) -> Self {
        assert!(n > 0, "root of unity order must be positive");
        let k = e.rem_euclid(n as i64) as usize;
        let mut dense = vec![Rational::zero(); n as usize];
        dense[k] = Rational::one();
        Self::from_dense(n as u64, dense)
    }

    /// Builds `Σ dense[k]·ζ_n^k` and canonicalizes it.
    pub fn from_dense(n: u64, mut dense: Vec<Rational>) -> Self {
        debug_assert_eq!(dense.len() as u64, n);
        reduce_to_basis(n, &mut dense);
        let coeffs: Vec<(u64, Rational)> = dense
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as u64, c))
            .collect();
        let (m, coeffs) = reduce_conductor(n, coeffs);
        Cyclotomic {
            order: m as u32,
            coeffs: coeffs.into_iter().map(|(k, c)| (k as u32, c)).collect(),
        }
    }

    /// Builds `Σ c·ζ_n^e` over the given terms.
    pub fn from_terms<I>(n: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        let mut dense = vec![Rational::zero(); n as usize];
        for (e, c) in terms {
            dense[e.rem_euclid(n as i64) as usize] += c;
        }
        Self::from_dense(n as u64, dense)
    }

    /// Conductor of the value (1 for rationals).
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Zumbroich coefficients, sorted by exponent.
    pub fn coeffs(&self) -> &[(u32, Rational)] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.order == 1
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match (self.order, self.coeffs.as_slice()) {
            (1, []) => Some(Rational::zero()),
            (1, [(0, c)]) => Some(c.clone()),
            _ => None,
        }
    }

    /// Returns the value when it is a rational integer `≥ 0`.
    pub fn as_nonneg_integer(&self) -> Option<BigUint> {
        let r = self.as_rational()?;
        if r.is_integer() && !r.is_negative() {
            r.to_integer().to_biguint()
        } else {
            None
        }
    }

    /// `(true, n)` when the value is a nonnegative rational integer `n`.
    pub fn is_nonneg_integer(&self) -> (bool, BigUint) {
        match self.as_nonneg_integer() {
            Some(n) => (true, n),
            None => (false, BigUint::zero()),
        }
    }

    fn to_dense(&self, n: u64) -> Vec<Rational> {
        debug_assert_eq!(n % self.order as u64, 0);
        let s = n / self.order as u64;
        let mut dense = vec![Rational::zero(); n as usize];
        for (k, c) in &self.coeffs {
            dense[(*k as u64 * s) as usize] += c;
        }
        dense
    }

    fn common_order(&self, other: &Self) -> u64 {
        (self.order as u64).lcm(&(other.order as u64))
    }

    /// Applies the field automorphism `ζ → ζ^k`.
    pub fn galois(&self, k: i64) -> Result<Self, CyclotomicError> {
        let n = self.order as i64;
        if k.gcd(&n) != 1 {
            return Err(CyclotomicError::NotCoprime { k, order: self.order });
        }
        if self.order == 1 {
            return Ok(self.clone());
        }
        Ok(Self::from_terms(
            self.order,
            self.coeffs.iter().map(|(e, c)| (*e as i64 * k, c.clone())),
        ))
    }

    /// Complex conjugate, i.e. `galois(-1)`.
    pub fn conj(&self) -> Self {
        self.galois(-1).expect("-1 is coprime to every conductor")
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, c * r)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplicative inverse via the norm down to `Q`.
    pub fn inverse(&self) -> Result<Self, CyclotomicError> {
        if self.is_zero() {
            return Err(CyclotomicError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(r.recip()));
        }
        // product of all nontrivial conjugates divided by the norm
        let n = self.order as i64;
        let mut others = Self::one();
        for k in 2..n {
            if k.gcd(&n) == 1 {
                others = &others * &self.galois(k)?;
            }
        }
        let norm = (self * &others)
            .as_rational()
            .expect("field norm is rational");
        Ok(others.scale(&norm.recip()))
    }

    /// Numerical embedding with `ζ_m = exp(2πi/m)`.
    pub fn to_complex(&self) -> Complex64 {
        let m = self.order as f64;
        self.coeffs
            .iter()
            .map(|(k, c)| {
                let theta = 2.0 * std::f64::consts::PI * (*k as f64) / m;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), theta)
            })
            .sum()
    }

    /// Largest absolute coefficient, used for embedding error bounds.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|(_, c)| c.abs().to_f64().unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max)
    }

    /// Checks the internal representation is canonical.
    pub fn is_canonical(&self) -> bool {
        let dense = self.to_dense(self.order as u64);
        let again = Self::from_dense(self.order as u64, dense);
        again == *self
    }
}

impl Default for Cyclotomic {
    fn default() -> Self {
        Self::zero()
    }
}

impl PartialOrd for Cyclotomic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cyclotomic {
    /// Structural order: conductor first, then coefficient vectors.
    fn cmp(&self, other: &Self) -> Ordering {
        self.order.cmp(&other.order).then_with(|| {
            for (a, b) in self.coeffs.iter().zip(&other.coeffs) {
                let o = a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1));
                if o != Ordering::Equal {
                    return o;
                }
            }
            self.coeffs.len().cmp(&other.coeffs.len())
        })
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.order == 1 && rhs.order == 1 {
            return Cyclotomic::from_rational(&self.coeffs[0].1 + &rhs.coeffs[0].1);
        }
        let n = self.common_order(rhs);
        let mut dense = self.to_dense(n);
        let s = n / rhs.order as u64;
        for (k, c) in &rhs.coeffs {
            dense[(*k as u64 * s) as usize] += c;
        }
        Cyclotomic::from_dense(n, dense)
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.is_zero() || rhs.is_zero() {
            return Cyclotomic::zero();
        }
        if self.order == 1 {
            return rhs.scale(&self.coeffs[0].1);
        }
        if rhs.order == 1 {
            return self.scale(&rhs.coeffs[0].1);
        }
        let n = self.common_order(rhs);
        let sa = n / self.order as u64;
        let sb = n / rhs.order as u64;
        let mut dense = vec![Rational::zero(); n as usize];
        for (ka, ca) in &self.coeffs {
            for (kb, cb) in &rhs.coeffs {
                let k = (*ka as u64 * sa + *kb as u64 * sb) % n;
                dense[k as usize] += ca * cb;
            }
        }
        Cyclotomic::from_dense(n, dense)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &'a Cyclotomic) -> Cyclotomic {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::zero(), |a, b| &a + &b)
    }
}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Cyclotomic::from_integer(n)
    }
}

impl From<Rational> for Cyclotomic {
    fn from(r: Rational) -> Self {
        Cyclotomic::from_rational(r)
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Cyclotomic {
    /// Writes the value in `E(n)` notation, e.g. `E(5)+E(5)^4` or `-1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, (k, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            let atom = match *k {
                0 => None,
                1 => Some(format!("E({})", self.order)),
                e => Some(format!("E({})^{}", self.order, e)),
            };
            match atom {
                None => out.push_str(&fmt_rational(&a)),
                Some(atom) if a.is_one() => out.push_str(&atom),
                Some(atom) => {
                    out.push_str(&fmt_rational(&a));
                    out.push('*');
                    out.push_str(&atom);
                }
            }
        }
        f.write_str(&out)
    }
}

impl std::str::FromStr for Cyclotomic {
    type Err = crate::ctbl_io::ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        crate::ctbl_io::parse_cyclotomic(s)
    }
}
