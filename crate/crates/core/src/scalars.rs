//! Exact arithmetic in cyclotomic fields `Q(ζ_m)`.
//!
//! A [`Cyclotomic`] stores its conductor `m` together with rational
//! coefficients in the power basis `1, ζ_m, …, ζ_m^{φ(m)-1}`, reduced modulo
//! the cyclotomic polynomial `Φ_m`. After every operation the value is moved
//! to the smallest cyclotomic field containing it, so structural equality is
//! value equality. Conductors congruent to 2 mod 4 never occur since
//! `Q(ζ_{2h}) = Q(ζ_h)` for odd `h`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::ExtendedOrder;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    conductor: u64,
    coeffs: Vec<BigRational>,
}

pub fn euler_phi(m: u64) -> u64 {
    let mut result = m;
    for p in prime_factors(m) {
        result = result / p * (p - 1);
    }
    result
}

pub fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            out.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

fn canonical_conductor(m: u64) -> u64 {
    if m % 4 == 2 {
        m / 2
    } else {
        m
    }
}

static PHI_CACHE: Lazy<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// Coefficients of `Φ_m`, lowest degree first.
pub fn cyclotomic_polynomial(m: u64) -> Arc<Vec<i64>> {
    assert!(m >= 1);
    if let Some(p) = PHI_CACHE.lock().unwrap().get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m % d == 0 {
            let den = cyclotomic_polynomial(d);
            num = exact_int_division(&num, &den);
        }
    }
    let arc = Arc::new(num);
    PHI_CACHE.lock().unwrap().insert(m, arc.clone());
    arc
}

/// Quotient of integer polynomials, divisor monic, division exact.
fn exact_int_division(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut q = vec![0i64; num.len() - dn];
    for k in (0..q.len()).rev() {
        let c = rem[k + dn];
        q[k] = c;
        for (j, d) in den.iter().enumerate() {
            rem[k + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// Reduces a polynomial with rational coefficients modulo `Φ_m`.
fn reduce_mod_phi(mut p: Vec<BigRational>, m: u64) -> Vec<BigRational> {
    let phi = cyclotomic_polynomial(m);
    let deg = phi.len() - 1;
    for top in (deg..p.len()).rev() {
        if p[top].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut p[top], BigRational::zero());
        for (j, f) in phi.iter().enumerate().take(deg) {
            if *f != 0 {
                p[top - deg + j] -= &c * BigRational::from_integer(BigInt::from(*f));
            }
        }
    }
    p.resize(deg, BigRational::zero());
    p
}

/// Linear data for recognising elements of `Q(ζ_c)` inside `Q(ζ_m)`.
struct Embedding {
    /// images of `ζ_c^j` in the power basis of `Q(ζ_m)`
    images: Vec<Vec<BigRational>>,
    pivot_rows: Vec<usize>,
    /// inverse of the images restricted to `pivot_rows`
    inverse: Vec<Vec<BigRational>>,
}

static EMBED_CACHE: Lazy<Mutex<HashMap<(u64, u64), Arc<Embedding>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

fn embedding(m: u64, c: u64) -> Arc<Embedding> {
    if let Some(e) = EMBED_CACHE.lock().unwrap().get(&(m, c)) {
        return e.clone();
    }
    let step = (m / c) as usize;
    let phi_c = euler_phi(c) as usize;
    let images: Vec<Vec<BigRational>> = (0..phi_c)
        .map(|j| {
            let mut p = vec![BigRational::zero(); j * step + 1];
            p[j * step] = BigRational::one();
            reduce_mod_phi(p, m)
        })
        .collect();
    // pick independent rows of the φ(m) x φ(c) matrix by elimination
    let rows = images[0].len();
    let mut pivot_rows = Vec::new();
    let mut basis: Vec<Vec<BigRational>> = Vec::new();
    for r in 0..rows {
        let mut v: Vec<BigRational> = images.iter().map(|col| col[r].clone()).collect();
        for (b, &pc) in basis.iter().zip(pivot_cols(&basis).iter()) {
            if !v[pc].is_zero() {
                let f = &v[pc] / &b[pc];
                for k in 0..v.len() {
                    let t = &f * &b[k];
                    v[k] -= t;
                }
            }
        }
        if v.iter().any(|x| !x.is_zero()) {
            basis.push(v);
            pivot_rows.push(r);
            if pivot_rows.len() == phi_c {
                break;
            }
        }
    }
    let square: Vec<Vec<BigRational>> =
        pivot_rows.iter().map(|&r| images.iter().map(|col| col[r].clone()).collect()).collect();
    let inverse = invert_rational(&square).expect("embedding rows are independent");
    let e = Arc::new(Embedding { images, pivot_rows, inverse });
    EMBED_CACHE.lock().unwrap().insert((m, c), e.clone());
    e
}

fn pivot_cols(basis: &[Vec<BigRational>]) -> Vec<usize> {
    basis.iter().map(|b| b.iter().position(|x| !x.is_zero()).unwrap()).collect()
}

/// Gauss-Jordan inverse of a square rational matrix.
pub(crate) fn invert_rational(a: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, p);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for k in 0..2 * n {
                    let t = &f * &m[col][k];
                    m[r][k] -= t;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic { conductor: 1, coeffs: vec![BigRational::zero()] }
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Cyclotomic { conductor: 1, coeffs: vec![r] }
    }

    pub fn from_fraction(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(num.into(), den.into()))
    }

    /// Builds `Σ c_i ζ_m^i` from any number of coefficients.
    pub fn from_power_coeffs(m: u64, coeffs: Vec<BigRational>) -> Self {
        assert!(m >= 1, "conductor must be positive");
        if m % 4 == 2 {
            // ζ_m = -ζ_h^{(h+1)/2}, h = m/2 odd
            let h = m / 2;
            let e = (h + 1) / 2;
            let mut p = vec![BigRational::zero(); h as usize];
            for (i, c) in coeffs.into_iter().enumerate() {
                let c = if i % 2 == 1 { -c } else { c };
                let k = (i as u64 * e % h) as usize;
                p[k] += c;
            }
            return Self::from_power_coeffs(h, p);
        }
        let reduced = reduce_mod_phi(coeffs, m);
        Cyclotomic { conductor: m, coeffs: reduced }.demoted()
    }

    /// `ζ_m`, a primitive `m`-th root of unity.
    pub fn primitive_root(m: u64) -> Self {
        Self::root_of_unity(m, 1)
    }

    /// `ζ_m^k` for any integer `k`.
    pub fn root_of_unity(m: u64, k: i64) -> Self {
        assert!(m >= 1, "order must be positive");
        let k = k.rem_euclid(m as i64) as u64;
        let g = k.gcd(&m);
        let (m, k) = (m / g, k / g);
        if m == 1 {
            return Self::one();
        }
        let mut p = vec![BigRational::zero(); k as usize + 1];
        p[k as usize] = BigRational::one();
        Self::from_power_coeffs(m, p)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then(|| &self.coeffs[0])
    }

    /// Coefficients of this value in the power basis of `Q(ζ_target)`;
    /// `target` must be a multiple of the conductor.
    fn promoted(&self, target: u64) -> Vec<BigRational> {
        if target == self.conductor {
            return self.coeffs.clone();
        }
        debug_assert!(target % self.conductor == 0);
        let step = (target / self.conductor) as usize;
        let mut p = vec![BigRational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            p[i * step] = c.clone();
        }
        reduce_mod_phi(p, target)
    }

    /// Moves the value into the smallest cyclotomic field containing it.
    fn demoted(mut self) -> Self {
        loop {
            let m = self.conductor;
            if m == 1 {
                return self;
            }
            if self.coeffs.iter().skip(1).all(Zero::is_zero) {
                self.coeffs.truncate(1);
                self.conductor = 1;
                return self;
            }
            let mut moved = false;
            for p in prime_factors(m) {
                let c = canonical_conductor(m / p);
                if c == m {
                    continue;
                }
                if let Some(coeffs) = Self::restrict(&self.coeffs, m, c) {
                    self = Cyclotomic { conductor: c, coeffs };
                    moved = true;
                    break;
                }
            }
            if !moved {
                return self;
            }
        }
    }

    fn restrict(v: &[BigRational], m: u64, c: u64) -> Option<Vec<BigRational>> {
        let e = embedding(m, c);
        let sub: Vec<BigRational> = e
            .inverse
            .iter()
            .map(|row| row.iter().zip(&e.pivot_rows).map(|(a, &r)| a * &v[r]).sum())
            .collect();
        for (r, target) in v.iter().enumerate() {
            let got: BigRational = e.images.iter().zip(&sub).map(|(img, s)| &img[r] * s).sum();
            if &got != target {
                return None;
            }
        }
        Some(sub)
    }

    fn binary(&self, other: &Self, op: impl Fn(Vec<BigRational>, Vec<BigRational>, u64) -> Vec<BigRational>) -> Self {
        let l = self.conductor.lcm(&other.conductor);
        let a = self.promoted(l);
        let b = other.promoted(l);
        Cyclotomic { conductor: l, coeffs: op(a, b, l) }.demoted()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(r.recip()));
        }
        // solve (multiplication by self) · a = 1 in the power basis
        let m = self.conductor;
        let n = self.coeffs.len();
        let cols: Vec<Vec<BigRational>> = (0..n)
            .map(|j| {
                let mut p = vec![BigRational::zero(); j + n];
                for (i, c) in self.coeffs.iter().enumerate() {
                    p[i + j] = c.clone();
                }
                reduce_mod_phi(p, m)
            })
            .collect();
        let mat: Vec<Vec<BigRational>> = (0..n).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
        let inv = invert_rational(&mat).ok_or_else(|| Error::Internal("singular multiplication map".into()))?;
        let coeffs: Vec<BigRational> = inv.iter().map(|row| row[0].clone()).collect();
        Ok(Cyclotomic { conductor: m, coeffs }.demoted())
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Power with a big exponent; only nonzero values accept negative exponents.
    pub fn pow_big(&self, e: &BigInt) -> Result<Self> {
        let small = e.to_i64().ok_or_else(|| Error::Internal(format!("exponent {e} too large")))?;
        self.pow(small)
    }

    /// Least `n > 0` with `z^n = 1`, or [`ExtendedOrder::Infinite`] when `z` is not
    /// a root of unity. Only divisors of `lcm(2, m)` can occur.
    pub fn multiplicative_order(&self) -> Result<ExtendedOrder> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let bound = self.conductor.lcm(&2);
        if !self.pow(bound as i64)?.is_one() {
            return Ok(ExtendedOrder::Infinite);
        }
        let mut order = bound;
        for p in prime_factors(bound) {
            while order % p == 0 && self.pow((order / p) as i64)?.is_one() {
                order /= p;
            }
        }
        Ok(ExtendedOrder::Finite(order))
    }

    /// Exponent `k` in `[0, n)` with `base^k = self`, by enumeration.
    pub fn discrete_log(&self, base: &Self, n: u64) -> Option<u64> {
        let mut acc = Self::one();
        for k in 0..n {
            if &acc == self {
                return Some(k);
            }
            acc = &acc * base;
        }
        None
    }

    /// Some `λ` with `λ^n = self`. Available for roots of unity and rationals;
    /// anything else yields [`Error::RadicalUnavailable`].
    pub fn nth_root(&self, n: u64) -> Result<Self> {
        assert!(n >= 1);
        if n == 1 || self.is_zero() {
            return Ok(self.clone());
        }
        if let ExtendedOrder::Finite(o) = self.multiplicative_order()? {
            let k = self
                .discrete_log(&Self::primitive_root(o), o)
                .ok_or_else(|| Error::Internal("root of unity without discrete log".into()))?;
            return Ok(Self::root_of_unity(o * n, k as i64));
        }
        if let Some(r) = self.as_rational() {
            let num = r.numer().abs();
            let den = r.denom().clone();
            let rn = num.nth_root(n as u32);
            let rd = den.nth_root(n as u32);
            if rn.pow(n as u32) == num && rd.pow(n as u32) == den {
                let root = Self::from_rational(BigRational::new(rn, rd));
                if r.is_negative() {
                    // (-1)^{1/n} = ζ_{2n}
                    return Ok(&root * &Self::root_of_unity(2 * n, 1));
                }
                return Ok(root);
            }
        }
        let which = match n {
            2 => "square".to_string(),
            3 => "cube".to_string(),
            _ => format!("{n}-th"),
        };
        Err(Error::RadicalUnavailable(format!("no exact {which} root of {}", self.to_short_string())))
    }

    /// Compact textual form: rationals as `p/q`, roots of unity as
    /// `zeta(m)^k`, everything else in `cyc(m; …)` notation.
    pub fn to_short_string(&self) -> String {
        if let Some(r) = self.as_rational() {
            return r.to_string();
        }
        if let Ok(ExtendedOrder::Finite(o)) = self.multiplicative_order() {
            if let Some(k) = self.discrete_log(&Self::primitive_root(o), o) {
                return format!("zeta({o})^{k}");
            }
        }
        self.to_string()
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        write!(f, "cyc({}; {})", self.conductor, parts.join(", "))
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_short_string())
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (!d.is_zero()).then(|| BigRational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

fn parse_factor(s: &str) -> Option<Cyclotomic> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix("cyc(") {
        let body = rest.strip_suffix(')')?;
        let (m, cs) = body.split_once(';')?;
        let m: u64 = m.trim().parse().ok().filter(|&m| m >= 1)?;
        let coeffs = cs.split(',').map(parse_rational).collect::<Option<Vec<_>>>()?;
        return Some(Cyclotomic::from_power_coeffs(m, coeffs));
    }
    if let Some(rest) = s.strip_prefix("zeta(") {
        let (m, tail) = rest.split_once(')')?;
        let m: u64 = m.trim().parse().ok().filter(|&m| m >= 1)?;
        let tail = tail.trim();
        let k: i64 = if tail.is_empty() {
            1
        } else {
            tail.strip_prefix('^')?.trim().trim_start_matches('(').trim_end_matches(')').parse().ok()?
        };
        return Some(Cyclotomic::root_of_unity(m, k));
    }
    if let Some(rest) = s.strip_prefix('-') {
        if rest.trim_start().starts_with("zeta") || rest.trim_start().starts_with("cyc") {
            return parse_factor(rest).map(|v| -v);
        }
    }
    parse_rational(s).map(Cyclotomic::from_rational)
}

impl FromStr for Cyclotomic {
    type Err = Error;

    /// Accepts `p/q`, `zeta(m)^k`, `cyc(m; c_0, …)` and `*`-products of these.
    fn from_str(s: &str) -> Result<Self> {
        let mut acc = Cyclotomic::one();
        let mut depth = 0usize;
        let mut start = 0;
        let bytes: Vec<char> = s.chars().collect();
        let mut factors = Vec::new();
        for (i, ch) in bytes.iter().enumerate() {
            match ch {
                '(' => depth += 1,
                ')' => depth = depth.saturating_sub(1),
                '*' if depth == 0 => {
                    factors.push(bytes[start..i].iter().collect::<String>());
                    start = i + 1;
                }
                _ => {}
            }
        }
        factors.push(bytes[start..].iter().collect::<String>());
        for f in factors {
            let v = parse_factor(&f).ok_or_else(|| Error::ScalarParse(s.to_string()))?;
            acc = &acc * &v;
        }
        Ok(acc)
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, other: &Cyclotomic) -> Cyclotomic {
        if self.conductor == 1 && other.conductor == 1 {
            return Cyclotomic::from_rational(&self.coeffs[0] + &other.coeffs[0]);
        }
        self.binary(other, |a, b, _| a.into_iter().zip(b).map(|(x, y)| x + y).collect())
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, other: &Cyclotomic) -> Cyclotomic {
        if self.conductor == 1 && other.conductor == 1 {
            return Cyclotomic::from_rational(&self.coeffs[0] - &other.coeffs[0]);
        }
        self.binary(other, |a, b, _| a.into_iter().zip(b).map(|(x, y)| x - y).collect())
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, other: &Cyclotomic) -> Cyclotomic {
        if self.is_zero() || other.is_zero() {
            return Cyclotomic::zero();
        }
        if self.conductor == 1 && other.conductor == 1 {
            return Cyclotomic::from_rational(&self.coeffs[0] * &other.coeffs[0]);
        }
        if self.conductor == 1 || other.conductor == 1 {
            let (r, v) = if self.conductor == 1 { (self, other) } else { (other, self) };
            let s = &r.coeffs[0];
            return Cyclotomic { conductor: v.conductor, coeffs: v.coeffs.iter().map(|c| c * s).collect() };
        }
        self.binary(other, |a, b, l| {
            let mut p = vec![BigRational::zero(); a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in b.iter().enumerate() {
                    if !y.is_zero() {
                        p[i + j] += x * y;
                    }
                }
            }
            reduce_mod_phi(p, l)
        })
    }
}

impl<'a> Div<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Result<Cyclotomic>;
    fn div(self, other: &Cyclotomic) -> Result<Cyclotomic> {
        Ok(self * &other.inv()?)
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { conductor: self.conductor, coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -self.clone()
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, other: Cyclotomic) -> Cyclotomic {
        &self + &other
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, other: Cyclotomic) -> Cyclotomic {
        &self - &other
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, other: Cyclotomic) -> Cyclotomic {
        &self * &other
    }
}

impl Default for Cyclotomic {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}
