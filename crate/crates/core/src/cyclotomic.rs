//! Exact arithmetic in cyclotomic fields `Q(ζ_n)`.
//!
//! An element of order `n` is stored as its coordinates in the power basis
//! `1, ζ_n, …, ζ_n^{φ(n)-1}` after reduction modulo the cyclotomic polynomial
//! `Φ_n`. The reduced form is unique, so equality is coefficientwise once both
//! sides live in the same field. Mixed orders are lifted to their lcm.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest field order accepted when lifting mixed-order operands.
pub const MAX_ORDER: u32 = 360;

/// An exact element of `Q(ζ_n)`.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<BigRational>,
}

fn phi_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    if let Some(p) = phi_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    // Φ_n = (x^n - 1) / ∏_{d | n, d < n} Φ_d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let den = cyclotomic_polynomial(d);
            num = exact_div_monic(&num, &den);
        }
    }
    let p = Arc::new(num);
    phi_cache().lock().unwrap().insert(n, p.clone());
    p
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    let mut q = vec![0i64; nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd];
        q[k] = c;
        if c != 0 {
            for (i, &a) in den.iter().enumerate() {
                rem[k + i] -= c * a;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

fn reduce(order: u32, mut c: Vec<BigRational>) -> Vec<BigRational> {
    let phi = cyclotomic_polynomial(order);
    let deg = phi.len() - 1;
    if c.len() > deg {
        for k in (deg..c.len()).rev() {
            if c[k].is_zero() {
                continue;
            }
            let lead = c[k].clone();
            for (i, &a) in phi.iter().enumerate().take(deg) {
                if a != 0 {
                    c[k - deg + i] -= &lead * BigRational::from_integer(BigInt::from(a));
                }
            }
            c[k] = BigRational::zero();
        }
    }
    c.resize(deg, BigRational::zero());
    c
}

impl Cyclotomic {
    /// The element `Σ coeffs[i] ζ_n^i`; `coeffs` may be longer than `φ(n)`.
    pub fn from_coeffs(order: u32, coeffs: Vec<BigRational>) -> Self {
        assert!(order >= 1);
        let coeffs = reduce(order, coeffs);
        Cyclotomic { order, coeffs }
    }

    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(q: BigRational) -> Self {
        Cyclotomic { order: 1, coeffs: vec![q] }
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(k)))
    }

    pub fn from_frac(p: i64, q: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// `ζ_n^k` for any integer `k`.
    pub fn zeta_pow(n: u32, k: i64) -> Self {
        let e = k.rem_euclid(n as i64) as usize;
        let mut c = vec![BigRational::zero(); e + 1];
        c[e] = BigRational::one();
        Self::from_coeffs(n, c)
    }

    /// The primitive root `ζ_n = exp(2πi/n)`.
    pub fn zeta(n: u32) -> Self {
        Self::zeta_pow(n, 1)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self == &Self::one()
    }

    /// Whether the element lies in `Q`.
    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// Whether every coordinate is an integer (sufficient for being an
    /// algebraic integer since the power basis spans the ring of integers).
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Re-express the element in `Q(ζ_m)`; requires `order | m`.
    pub fn lift(&self, m: u32) -> Self {
        assert!(m % self.order == 0, "cannot lift order {} to {}", self.order, m);
        if m == self.order {
            return self.clone();
        }
        let step = (m / self.order) as usize;
        let mut c = vec![BigRational::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if !a.is_zero() {
                c[i * step] = a.clone();
            }
        }
        Self::from_coeffs(m, c)
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.order == b.order {
            return (a.clone(), b.clone());
        }
        let m = a.order.lcm(&b.order);
        assert!(m <= MAX_ORDER, "field order {m} exceeds the cap {MAX_ORDER}");
        (a.lift(m), b.lift(m))
    }

    /// Checked lcm of two orders against [`MAX_ORDER`].
    pub fn common_order(a: u32, b: u32) -> Result<u32> {
        let m = a.lcm(&b);
        if m > MAX_ORDER {
            Err(Error::OrderTooLarge(m))
        } else {
            Ok(m)
        }
    }

    /// Smallest order in which the element can be written (dividing the
    /// current order). Useful for display and literal round-trips.
    pub fn simplified(&self) -> Self {
        let mut divs: Vec<u32> = (1..=self.order).filter(|d| self.order % d == 0).collect();
        divs.sort_unstable();
        for d in divs {
            if d == self.order {
                break;
            }
            // Candidate: coefficients supported on multiples of order/d.
            let cand = self.try_descend(d);
            if let Some(c) = cand {
                return c;
            }
        }
        self.clone()
    }

    fn try_descend(&self, d: u32) -> Option<Self> {
        // Solve for an element of Q(ζ_d) whose lift equals self. The lift of
        // the power basis of Q(ζ_d) is linearly independent, so a greedy match
        // on the image basis followed by a verification is enough.
        let step = (self.order / d) as usize;
        let phi_d = euler_phi(d);
        let mut c = vec![BigRational::zero(); phi_d];
        for (i, slot) in c.iter_mut().enumerate() {
            if i * step < self.coeffs.len() {
                *slot = self.coeffs[i * step].clone();
            }
        }
        let cand = Self::from_coeffs(d, c);
        (cand.lift(self.order) == *self).then_some(cand)
    }

    /// Galois automorphism `ζ_n ↦ ζ_n^k` (`k` coprime to the order).
    pub fn galois(&self, k: i64) -> Self {
        let n = self.order as i64;
        assert!(k.gcd(&n) == 1 || n == 1, "exponent {k} not coprime to {n}");
        let mut c = vec![BigRational::zero(); self.order as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if !a.is_zero() {
                let e = ((i as i64) * k).rem_euclid(n.max(1)) as usize;
                c[e] += a;
            }
        }
        Self::from_coeffs(self.order, c)
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.is_rational() {
            return Some(Self::from_rational(self.coeffs[0].recip()));
        }
        let phi: Vec<BigRational> =
            cyclotomic_polynomial(self.order).iter().map(|&a| BigRational::from_integer(BigInt::from(a))).collect();
        let (g, s) = ext_gcd(trim(self.coeffs.clone()), phi);
        // g is a nonzero constant because Φ_n is irreducible.
        debug_assert_eq!(g.len(), 1);
        let scale = g[0].recip();
        let s: Vec<BigRational> = s.into_iter().map(|x| x * &scale).collect();
        Some(Self::from_coeffs(self.order, s))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Numerical value in `C`.
    pub fn embed_complex(&self) -> Complex64 {
        let n = self.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| {
                let ang = 2.0 * std::f64::consts::PI * (i as f64) / n;
                Complex64::from_polar(1.0, ang) * a.to_f64().unwrap_or(f64::NAN)
            })
            .sum()
    }

    /// Parse the literal syntax `3/2`, `z8^3 - 1/2*z8`, `(1+z3)^2`.
    pub fn parse(s: &str) -> Result<Self> {
        literal::parse(s)
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (vec![BigRational::zero()], r);
    }
    let lead = b.last().unwrap().clone();
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let c = &r[k + b.len() - 1] / &lead;
        if !c.is_zero() {
            for (i, bi) in b.iter().enumerate() {
                r[k + i] -= &c * bi;
            }
        }
        q[k] = c;
    }
    (q, trim(r))
}

/// Integer numerators over a common denominator.
fn clear_denominators(a: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let den = a.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let nums = a.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    (nums, den)
}

/// Product of two reduced coefficient vectors of the same order, computed on
/// integer numerators so that each output coefficient is normalised once.
fn mul_reduced(order: u32, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let (na, da) = clear_denominators(a);
    let (nb, db) = clear_denominators(b);
    let mut c = vec![BigInt::zero(); na.len() + nb.len() - 1];
    for (i, x) in na.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in nb.iter().enumerate() {
            if !y.is_zero() {
                c[i + j] += x * y;
            }
        }
    }
    let phi = cyclotomic_polynomial(order);
    let deg = phi.len() - 1;
    for k in (deg..c.len()).rev() {
        if c[k].is_zero() {
            continue;
        }
        let lead = std::mem::take(&mut c[k]);
        for (i, &p) in phi.iter().enumerate().take(deg) {
            if p != 0 {
                c[k - deg + i] -= &lead * p;
            }
        }
    }
    c.resize(deg, BigInt::zero());
    let den = da * db;
    c.into_iter().map(|x| BigRational::new(x, den.clone())).collect()
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect()
}

/// Returns `(g, s)` with `s·a ≡ g (mod b)`.
fn ext_gcd(a: Vec<BigRational>, b: Vec<BigRational>) -> (Vec<BigRational>, Vec<BigRational>) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (vec![BigRational::one()], vec![BigRational::zero()]);
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divrem(&r0, &r1);
        let s = trim(poly_sub(&s0, &poly_mul(&q, &s1)));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    (r0, s0)
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = Self::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl Default for Cyclotomic {
    fn default() -> Self {
        Self::zero()
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::common(self, rhs);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Cyclotomic { order: a.order, coeffs }
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::common(self, rhs);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect();
        Cyclotomic { order: a.order, coeffs }
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.order == 1 || rhs.order == 1 {
            let (s, v) = if self.order == 1 { (&self.coeffs[0], rhs) } else { (&rhs.coeffs[0], self) };
            if s.is_zero() {
                return Cyclotomic::zero();
            }
            return Cyclotomic { order: v.order, coeffs: v.coeffs.iter().map(|x| x * s).collect() };
        }
        let (a, b) = Cyclotomic::common(self, rhs);
        Cyclotomic { order: a.order, coeffs: mul_reduced(a.order, &a.coeffs, &b.coeffs) }
    }
}

impl<'a> Div<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn div(self, rhs: &Cyclotomic) -> Cyclotomic {
        self * &rhs.inv().expect("division by zero cyclotomic")
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { order: self.order, coeffs: self.coeffs.iter().map(|x| -x).collect() }
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
forward_owned!(Div, div);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        if self.order == rhs.order {
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *x += y;
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&Cyclotomic> for Cyclotomic {
    fn sub_assign(&mut self, rhs: &Cyclotomic) {
        if self.order == rhs.order {
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *x -= y;
            }
        } else {
            *self = &*self - rhs;
        }
    }
}

impl MulAssign<&Cyclotomic> for Cyclotomic {
    fn mul_assign(&mut self, rhs: &Cyclotomic) {
        *self = &*self * rhs;
    }
}

impl Zero for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic::zero()
    }
    fn is_zero(&self) -> bool {
        Cyclotomic::is_zero(self)
    }
}

impl One for Cyclotomic {
    fn one() -> Self {
        Cyclotomic::one()
    }
}

impl From<i64> for Cyclotomic {
    fn from(k: i64) -> Self {
        Cyclotomic::from_int(k)
    }
}

impl From<BigRational> for Cyclotomic {
    fn from(q: BigRational) -> Self {
        Cyclotomic::from_rational(q)
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.simplified();
        let n = s.order;
        let mut out = String::new();
        for (i, a) in s.coeffs.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let neg = a.is_negative();
            let mag = a.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let atom = match i {
                0 => String::new(),
                1 => format!("z{n}"),
                _ => format!("z{n}^{i}"),
            };
            if atom.is_empty() {
                out.push_str(&fmt_rational(&mag));
            } else if mag.is_one() {
                out.push_str(&atom);
            } else {
                out.push_str(&fmt_rational(&mag));
                out.push('*');
                out.push_str(&atom);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

mod literal {
    use super::*;

    struct Parser<'a> {
        src: &'a [u8],
        pos: usize,
    }

    pub(super) fn parse(s: &str) -> Result<Cyclotomic> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let v = p.expr()?;
        p.ws();
        if p.pos != p.src.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(v)
    }

    impl Parser<'_> {
        fn err(&self, msg: &str) -> Error {
            Error::Literal { pos: self.pos, msg: msg.to_string() }
        }

        fn ws(&mut self) {
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
        }

        fn peek(&mut self) -> Option<u8> {
            self.ws();
            self.src.get(self.pos).copied()
        }

        fn expr(&mut self) -> Result<Cyclotomic> {
            let mut acc = self.term()?;
            while let Some(c) = self.peek() {
                match c {
                    b'+' => {
                        self.pos += 1;
                        acc = &acc + &self.term()?;
                    }
                    b'-' => {
                        self.pos += 1;
                        acc = &acc - &self.term()?;
                    }
                    _ => break,
                }
            }
            Ok(acc)
        }

        fn term(&mut self) -> Result<Cyclotomic> {
            let mut acc = self.unary()?;
            while let Some(c) = self.peek() {
                match c {
                    b'*' => {
                        self.pos += 1;
                        acc = &acc * &self.unary()?;
                    }
                    b'/' => {
                        self.pos += 1;
                        let at = self.pos;
                        let d = self.unary()?;
                        acc = &acc * &d.inv().ok_or(Error::Literal { pos: at, msg: "division by zero".into() })?;
                    }
                    _ => break,
                }
            }
            Ok(acc)
        }

        fn unary(&mut self) -> Result<Cyclotomic> {
            if self.peek() == Some(b'-') {
                self.pos += 1;
                return Ok(-self.unary()?);
            }
            if self.peek() == Some(b'+') {
                self.pos += 1;
                return self.unary();
            }
            let base = self.atom()?;
            if self.peek() == Some(b'^') {
                self.pos += 1;
                let neg = if self.peek() == Some(b'-') {
                    self.pos += 1;
                    true
                } else {
                    false
                };
                let e = self.integer()?;
                let e: u32 = e.to_u32().ok_or_else(|| self.err("exponent too large"))?;
                let v = base.pow(e);
                return if neg { v.inv().ok_or_else(|| self.err("zero to a negative power")) } else { Ok(v) };
            }
            Ok(base)
        }

        fn integer(&mut self) -> Result<BigInt> {
            self.ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.err("expected an integer"));
            }
            let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            Ok(s.parse().unwrap())
        }

        fn atom(&mut self) -> Result<Cyclotomic> {
            match self.peek() {
                Some(b'(') => {
                    self.pos += 1;
                    let v = self.expr()?;
                    if self.peek() != Some(b')') {
                        return Err(self.err("expected ')'"));
                    }
                    self.pos += 1;
                    Ok(v)
                }
                Some(b'z') => {
                    self.pos += 1;
                    let at = self.pos;
                    let n = self.integer()?;
                    let n = n.to_u32().filter(|&n| (1..=MAX_ORDER).contains(&n)).ok_or(Error::Literal {
                        pos: at,
                        msg: format!("root-of-unity order must be in 1..={MAX_ORDER}"),
                    })?;
                    Ok(Cyclotomic::zeta(n))
                }
                Some(c) if c.is_ascii_digit() => {
                    let n = self.integer()?;
                    Ok(Cyclotomic::from_rational(BigRational::from_integer(n)))
                }
                _ => Err(self.err("expected a number, zN or '('")),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_small() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(105).iter().map(|c| c.abs()).max(), Some(2));
    }

    #[test]
    fn zeta_powers_close_up() {
        for n in 1..=12 {
            assert!(Cyclotomic::zeta(n).pow(n).is_one());
        }
        assert_eq!(Cyclotomic::zeta(4).pow(2), Cyclotomic::from_int(-1));
    }

    #[test]
    fn literal_round_trip() {
        let x = Cyclotomic::parse("z8^3 - 1/2*z8").unwrap();
        assert_eq!(x.to_string(), "z8^3 - 1/2*z8");
        assert_eq!(Cyclotomic::parse("3/2").unwrap(), Cyclotomic::from_frac(3, 2));
        assert_eq!(Cyclotomic::parse("z4^2").unwrap().to_string(), "-1");
        assert_eq!(Cyclotomic::parse("-(1 + z3)").unwrap(), Cyclotomic::zeta_pow(3, 2));
        assert!(Cyclotomic::parse("1 +").is_err());
        assert!(Cyclotomic::parse("1/0").is_err());
    }

    #[test]
    fn mixed_order_lifts() {
        let i = Cyclotomic::zeta(4);
        let w = Cyclotomic::zeta(3);
        let p = &i * &w;
        assert_eq!(p.order(), 12);
        assert_eq!(p, Cyclotomic::zeta_pow(12, 7));
    }
}
