//! Dense univariate polynomials and the symmetric-function helpers built on
//! them (elementary symmetric functions, resultants, discriminants).

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};

/// Scalars usable as polynomial coefficients: a field with exact or
/// floating zero tests.
pub trait Scalar:
    Clone + PartialEq + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn inverse(&self) -> Option<Self>;
}

impl Scalar for BigRational {
    fn inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
}

impl Scalar for Cyclotomic {
    fn inverse(&self) -> Option<Self> {
        self.inv()
    }
}

impl Scalar for Complex64 {
    fn inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.inv())
    }
}

/// A polynomial `Σ coeffs[i] t^i`. The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> UniPoly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c t^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        let mut v = vec![T::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `∏ (t − r)` over the given roots.
    pub fn from_roots(roots: &[T]) -> Self {
        roots.iter().fold(Self::constant(T::one()), |acc, r| &acc * &Self::new(vec![-r.clone(), T::one()]))
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `t^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len().saturating_sub(1));
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            let mut k = T::zero();
            for _ in 0..i {
                k = k + T::one();
            }
            out.push(c.clone() * k);
        }
        Self::new(out)
    }

    /// `f(t^k)`.
    pub fn compose_power(&self, k: usize) -> Self {
        let mut v = vec![T::zero(); (self.coeffs.len().max(1) - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * k] = c.clone();
        }
        Self::new(v)
    }

    /// `t^k f(t)`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![T::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(v)
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dl = d.leading().inverse().expect("division by the zero polynomial");
        let dd = d.degree().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![T::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].clone() * dl.clone();
            if !c.is_zero() {
                for (i, di) in d.coeffs.iter().enumerate() {
                    r[k + i] = r[k + i].clone() - c.clone() * di.clone();
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }
}

impl<T: Scalar> Add for &UniPoly<T> {
    type Output = UniPoly<T>;
    fn add(self, rhs: &UniPoly<T>) -> UniPoly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Sub for &UniPoly<T> {
    type Output = UniPoly<T>;
    fn sub(self, rhs: &UniPoly<T>) -> UniPoly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Mul for &UniPoly<T> {
    type Output = UniPoly<T>;
    fn mul(self, rhs: &UniPoly<T>) -> UniPoly<T> {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b.clone();
            }
        }
        UniPoly::new(v)
    }
}

/// The `i`-th elementary symmetric function of `values`.
pub fn elementary_symmetric<T: Scalar>(values: &[T], i: usize) -> Result<T> {
    if i > values.len() {
        return Err(Error::InvalidArgument(format!(
            "elementary symmetric index {i} exceeds the number of values {}",
            values.len()
        )));
    }
    // e[k] after processing a prefix holds σ_k of that prefix.
    let mut e = vec![T::zero(); i + 1];
    e[0] = T::one();
    for v in values {
        for k in (1..=i).rev() {
            e[k] = e[k].clone() + e[k - 1].clone() * v.clone();
        }
    }
    Ok(e[i].clone())
}

/// Resultant of two polynomials by the Euclidean recurrence.
pub fn resultant<T: Scalar>(f: &UniPoly<T>, g: &UniPoly<T>) -> T {
    let (Some(m), Some(n)) = (f.degree(), g.degree()) else {
        return T::zero();
    };
    if n == 0 {
        return pow(&g.leading(), m);
    }
    if m == 0 {
        return pow(&f.leading(), n);
    }
    let (_, r) = f.div_rem(g);
    let Some(dr) = r.degree() else {
        return T::zero();
    };
    // Res(f,g) = (−1)^{mn} lc(g)^{m − deg r} Res(g, r)
    let sign = if (m * n) % 2 == 1 { -T::one() } else { T::one() };
    sign * pow(&g.leading(), m - dr) * resultant(g, &r)
}

fn pow<T: Scalar>(x: &T, e: usize) -> T {
    (0..e).fold(T::one(), |acc, _| acc * x.clone())
}

/// Discriminant `∏_{i<j} (r_i − r_j)²` of a monic polynomial.
pub fn poly_discriminant<T: Scalar>(f: &UniPoly<T>) -> Result<T> {
    match f.degree() {
        None | Some(0) => return Err(Error::InvalidArgument("discriminant needs degree >= 1".into())),
        _ if !f.is_monic() => return Err(Error::InvalidArgument("discriminant needs a monic polynomial".into())),
        _ => {}
    }
    let n = f.degree().unwrap();
    let r = resultant(f, &f.derivative());
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -r } else { r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn sigma_small() {
        let v = [q(1), q(2), q(3)];
        assert_eq!(elementary_symmetric(&v, 0).unwrap(), q(1));
        assert_eq!(elementary_symmetric(&v, 2).unwrap(), q(11));
        assert_eq!(elementary_symmetric(&v, 3).unwrap(), q(6));
        assert!(elementary_symmetric(&v, 4).is_err());
    }

    #[test]
    fn discriminant_small() {
        let f = UniPoly::from_roots(&[q(1), q(2), q(3)]);
        assert_eq!(poly_discriminant(&f).unwrap(), q(4));
        // t² + bt + c
        let (b, c) = (q(5), q(-7));
        let f = UniPoly::new(vec![c.clone(), b.clone(), q(1)]);
        assert_eq!(poly_discriminant(&f).unwrap(), &b * &b - q(4) * c);
        assert!(poly_discriminant(&UniPoly::new(vec![q(1), q(2)])).is_err());
    }
}
