//! Exact elements of cyclotomic fields `ℚ(ζ_N)`.
//!
//! An amplitude is stored in the power basis `1, ζ, …, ζ^{φ(N)−1}`, so two
//! amplitudes of the same order are equal iff their coefficient vectors are.
//! Amplitudes of different orders are compared in `ℚ(ζ_lcm)`.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::HashMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Clone)]
pub struct Amplitude {
    order: u64,
    /// Length `φ(order)`.
    coeffs: Vec<BigRational>,
}

/// Monic integer coefficients of `Φ_N`, lowest degree first.
fn cyclotomic(n: u64) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // Φ_N = (x^N − 1) / ∏_{d | N, d < N} Φ_d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        num = divide_exact(&num, &cyclotomic(d));
    }
    let p = Arc::new(num);
    cache.lock().unwrap().insert(n, p.clone());
    p
}

fn divide_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        for (j, &b) in den.iter().enumerate() {
            rem[i + j] -= c * b;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

fn reduce(mut poly: Vec<BigRational>, n: u64) -> Vec<BigRational> {
    let phi = cyclotomic(n);
    let deg = phi.len() - 1;
    for i in (deg..poly.len()).rev() {
        if poly[i].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut poly[i]);
        for (j, &f) in phi[..deg].iter().enumerate() {
            if f != 0 {
                poly[i - deg + j] -= &c * BigRational::from_integer(f.into());
            }
        }
    }
    poly.resize(deg, BigRational::zero());
    poly
}

fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

impl Amplitude {
    pub fn zero() -> Self {
        Amplitude { order: 1, coeffs: vec![BigRational::zero()] }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(r: BigRational) -> Self {
        Amplitude { order: 1, coeffs: vec![r] }
    }

    pub fn from_ratio(r: Ratio<i64>) -> Self {
        Self::from_rational(BigRational::new((*r.numer()).into(), (*r.denom()).into()))
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_rational(BigRational::from_integer(k.into()))
    }

    /// `ζ_N^k`.
    pub fn root_of_unity(k: i64, n: u64) -> Self {
        assert!(n > 0, "roots of unity of order 0");
        let mut poly = vec![BigRational::zero(); n as usize];
        poly[k.rem_euclid(n as i64) as usize] = BigRational::one();
        Amplitude { order: n, coeffs: reduce(poly, n) }
    }

    /// `e^{−2πi r}`.
    pub fn phase(r: Ratio<i64>) -> Self {
        Self::root_of_unity(-r.numer(), *r.denom() as u64)
    }

    /// Positive square root of a positive rational, built from quadratic
    /// Gauss sums: `√2 = ζ₈ + ζ₈⁷`, and `√p = g_p` or `−i·g_p` for odd `p`.
    pub fn sqrt(r: &BigRational) -> Result<Self> {
        if r.is_negative() {
            return Err(Error::Invalid(format!("square root of negative {r}")));
        }
        if r.is_zero() {
            return Ok(Self::zero());
        }
        let den = r.denom();
        let prod = (r.numer() * den)
            .to_u64()
            .ok_or_else(|| Error::Invalid(format!("square root of {r} is out of range")))?;
        let (square, free) = square_split(prod);
        let mut out = Self::from_rational(BigRational::new(BigInt::from(square), den.clone()));
        for p in prime_factors(free) {
            out = &out * &sqrt_prime(p);
        }
        Ok(out)
    }

    /// `base^e` for an exponent with denominator 1 or 2.
    pub fn power(base: u64, e: Ratio<i64>) -> Result<Self> {
        if base == 0 || !(e.denom() == &1 || e.denom() == &2) {
            return Err(Error::Invalid(format!("cannot take {base}^({e}) exactly")));
        }
        let m = (e * 2).to_integer();
        let whole = Integer::div_floor(&m, &2);
        let b = BigRational::from_integer(base.into());
        let mut out = Self::from_rational(if whole >= 0 { num_traits::pow(b.clone(), whole as usize) } else { num_traits::pow(b.recip(), (-whole) as usize) });
        if m.is_odd() {
            out = &out * &Self::sqrt(&b)?;
        }
        Ok(out)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The value if it is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| self.coeffs[0].clone())
    }

    /// The value if it is an integer fitting `i64`.
    pub fn as_integer(&self) -> Option<i64> {
        self.as_rational().filter(|r| r.is_integer()).and_then(|r| r.to_integer().to_i64())
    }

    /// Rewrites in `ℚ(ζ_M)` for a multiple `M` of the order.
    pub fn lift(&self, m: u64) -> Self {
        assert!(m.is_multiple_of(self.order), "lift to a non-multiple");
        if m == self.order {
            return self.clone();
        }
        let step = (m / self.order) as usize;
        let mut poly = vec![BigRational::zero(); m as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            poly[k * step] = c.clone();
        }
        Amplitude { order: m, coeffs: reduce(poly, m) }
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let m = lcm(self.order, other.order);
        (self.lift(m), other.lift(m))
    }

    /// Rewrites rational values with order 1.
    fn normalized(mut self) -> Self {
        if self.order > 1 {
            if let Some(r) = self.as_rational() {
                self.order = 1;
                self.coeffs = vec![r];
            }
        }
        self
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Amplitude { order: self.order, coeffs: self.coeffs.iter().map(|c| c * r).collect() }.normalized()
    }

    /// Floating view `(re, im)`; for display only.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.order as f64;
        self.coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (k, c)| {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let t = std::f64::consts::TAU * k as f64 / n;
            (re + c * t.cos(), im + c * t.sin())
        })
    }

    /// Coefficients in the power basis.
    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }
}

fn sqrt_prime(p: u64) -> Amplitude {
    if p == 2 {
        return &Amplitude::root_of_unity(1, 8) + &Amplitude::root_of_unity(7, 8);
    }
    let gauss = (1..p).fold(Amplitude::zero(), |acc, x| {
        let chi = if mod_pow(x, (p - 1) / 2, p) == 1 { 1 } else { -1 };
        &acc + &Amplitude::root_of_unity(x as i64, p).scale(&BigRational::from_integer(chi.into()))
    });
    if p % 4 == 1 {
        gauss
    } else {
        &Amplitude::root_of_unity(3, 4) * &gauss
    }
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    r
}

/// Distinct prime factors in increasing order.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `n = s² · f` with `f` squarefree.
fn square_split(mut n: u64) -> (u64, u64) {
    let (mut s, mut f) = (1, 1);
    let mut p = 2;
    while p * p <= n {
        while n.is_multiple_of(p * p) {
            n /= p * p;
            s *= p;
        }
        if n.is_multiple_of(p) {
            n /= p;
            f *= p;
        }
        p += 1;
    }
    (s, f * n)
}

impl PartialEq for Amplitude {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.aligned(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Amplitude {}

impl<'a> Add<&'a Amplitude> for &'a Amplitude {
    type Output = Amplitude;
    fn add(self, other: &Amplitude) -> Amplitude {
        let (mut a, b) = self.aligned(other);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs) {
            *x += y;
        }
        a.normalized()
    }
}

impl<'a> Sub<&'a Amplitude> for &'a Amplitude {
    type Output = Amplitude;
    fn sub(self, other: &Amplitude) -> Amplitude {
        self + &-other
    }
}

impl Neg for &Amplitude {
    type Output = Amplitude;
    fn neg(self) -> Amplitude {
        Amplitude { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl<'a> Mul<&'a Amplitude> for &'a Amplitude {
    type Output = Amplitude;
    fn mul(self, other: &Amplitude) -> Amplitude {
        if let Some(r) = self.as_rational() {
            return other.scale(&r);
        }
        if let Some(r) = other.as_rational() {
            return self.scale(&r);
        }
        let (a, b) = self.aligned(other);
        let mut poly = vec![BigRational::zero(); 2 * a.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.coeffs.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                poly[i + j] += x * y;
            }
        }
        Amplitude { order: a.order, coeffs: reduce(poly, a.order) }.normalized()
    }
}

impl Add for Amplitude {
    type Output = Amplitude;
    fn add(self, other: Amplitude) -> Amplitude {
        &self + &other
    }
}

impl Mul for Amplitude {
    type Output = Amplitude;
    fn mul(self, other: Amplitude) -> Amplitude {
        &self * &other
    }
}

impl Sum for Amplitude {
    fn sum<I: Iterator<Item = Amplitude>>(iter: I) -> Amplitude {
        iter.fold(Amplitude::zero(), |acc, x| &acc + &x)
    }
}

impl From<i64> for Amplitude {
    fn from(k: i64) -> Self {
        Amplitude::from_int(k)
    }
}

/// `N=8: 1/2 + -1*z^3`; a rational value is written with `N=1`.
impl fmt::Display for Amplitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N={}: ", self.order)?;
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => c.to_string(),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{k}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl fmt::Debug for Amplitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_complex();
        write!(f, "{self} (≈ {re:.6}{im:+.6}i)")
    }
}

impl FromStr for Amplitude {
    type Err = Error;

    /// Accepts any `ℚ`-combination of powers of `z = ζ_N`, not only reduced ones.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not an amplitude: {s:?}"));
        let (head, body) = s.split_once(':').ok_or_else(bad)?;
        let n: u64 = head.trim().strip_prefix("N=").ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(bad());
        }
        let mut acc = Amplitude::zero();
        for term in body.split(" + ") {
            let term = term.trim();
            let (coeff, power) = match term.split_once('*') {
                Some((c, z)) => (c.trim(), Some(z.trim())),
                None if term.starts_with('z') => ("1", Some(term)),
                None => (term, None),
            };
            let c: BigRational = coeff.parse().map_err(|_| bad())?;
            let k: i64 = match power {
                None => 0,
                Some("z") => 1,
                Some(z) => z.strip_prefix("z^").ok_or_else(bad)?.parse().map_err(|_| bad())?,
            };
            acc = &acc + &Amplitude::root_of_unity(k, n).scale(&c);
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic(1), vec![-1, 1]);
        assert_eq!(*cyclotomic(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic(12).len() - 1, 4);
    }

    #[test]
    fn roots_of_unity_relations() {
        for n in 1..=12u64 {
            assert_eq!(Amplitude::root_of_unity(n as i64, n), Amplitude::one());
            let total: Amplitude = (0..n as i64).map(|k| Amplitude::root_of_unity(k, n)).sum();
            assert_eq!(total.is_zero(), n > 1, "n={n}");
        }
        assert_eq!(Amplitude::root_of_unity(1, 2), Amplitude::from_int(-1));
        assert_eq!(Amplitude::root_of_unity(2, 8), Amplitude::root_of_unity(1, 4));
    }

    #[test]
    fn square_roots() {
        for r in [q(2, 1), q(3, 1), q(5, 1), q(7, 1), q(1, 2), q(6, 1), q(8, 9), q(12, 5)] {
            let s = Amplitude::sqrt(&r).unwrap();
            assert_eq!(&s * &s, Amplitude::from_rational(r.clone()), "{r}");
            let (re, im) = s.to_complex();
            assert!((re - r.to_f64().unwrap().sqrt()).abs() < 1e-9 && im.abs() < 1e-9);
        }
        assert_eq!(Amplitude::power(4, Ratio::new(-1, 2)).unwrap(), Amplitude::from_rational(q(1, 2)));
        assert!((Amplitude::power(2, Ratio::new(-3, 2)).unwrap().to_complex().0 - 2f64.powf(-1.5)).abs() < 1e-12);
    }

    #[test]
    fn string_round_trip() {
        let a = &Amplitude::root_of_unity(3, 8).scale(&q(-2, 3)) + &Amplitude::from_rational(q(1, 2));
        let s = a.to_string();
        assert_eq!(s.parse::<Amplitude>().unwrap(), a);
        assert_eq!("N=1: 0".parse::<Amplitude>().unwrap(), Amplitude::zero());
        assert_eq!("N=4: z^2".parse::<Amplitude>().unwrap(), Amplitude::from_int(-1));
        assert!("N=0: 1".parse::<Amplitude>().is_err());
    }
}
