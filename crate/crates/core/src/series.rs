//! Truncated power series in one variable `t` or two variables `(t, u)`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::poly::{Scalar, UniPoly};

/// Coefficients of `t^0..=t^n` of `1 / p(t)`; `p(0)` must be invertible.
pub fn invert_series<T: Scalar>(p: &UniPoly<T>, n: usize) -> Vec<T> {
    let p0 = p.coeff(0).inverse().expect("series inverse needs an invertible constant term");
    let mut out: Vec<T> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut acc = if k == 0 { T::one() } else { T::zero() };
        for j in 1..=k.min(p.degree().unwrap_or(0)) {
            acc = acc - p.coeff(j) * out[k - j].clone();
        }
        out.push(acc * p0.clone());
    }
    out
}

/// Product of two truncated series.
pub fn mul_series<T: Scalar>(a: &[T], b: &[T], n: usize) -> Vec<T> {
    let mut out = vec![T::zero(); n + 1];
    for (i, x) in a.iter().enumerate().take(n + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n + 1 - i) {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    out
}

/// Converts exact cyclotomic coefficients that must be rational.
pub fn to_rationals(v: &[Cyclotomic]) -> Result<Vec<BigRational>> {
    v.iter()
        .map(|c| c.to_rational().ok_or_else(|| Error::Invariant(format!("series coefficient {c} is not rational"))))
        .collect()
}

/// Bivariate series `Σ c[i][j] t^i u^j` truncated to total degree `≤ trunc`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedSeries {
    trunc: usize,
    coeffs: Vec<Vec<BigRational>>,
}

impl GradedSeries {
    pub fn zero(trunc: usize) -> Self {
        let coeffs = (0..=trunc).map(|i| vec![BigRational::zero(); trunc + 1 - i]).collect();
        GradedSeries { trunc, coeffs }
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    /// Coefficient of `t^i u^j` (zero beyond the truncation).
    pub fn coeff(&self, i: usize, j: usize) -> BigRational {
        if i + j > self.trunc {
            return BigRational::zero();
        }
        self.coeffs[i][j].clone()
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        assert!(i + j <= self.trunc);
        self.coeffs[i][j] = v;
    }

    /// `a(t) · b(u)` for univariate coefficient lists.
    pub fn outer(a: &[BigRational], b: &[BigRational], trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        for (i, x) in a.iter().enumerate().take(trunc + 1) {
            for (j, y) in b.iter().enumerate().take(trunc + 1 - i) {
                s.coeffs[i][j] = x * y;
            }
        }
        s
    }

    pub fn add_assign(&mut self, o: &Self) {
        assert_eq!(self.trunc, o.trunc);
        for (r, s) in self.coeffs.iter_mut().zip(&o.coeffs) {
            for (x, y) in r.iter_mut().zip(s) {
                *x += y;
            }
        }
    }

    pub fn scale(&mut self, k: &BigRational) {
        for r in self.coeffs.iter_mut() {
            for x in r.iter_mut() {
                *x *= k;
            }
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.trunc, o.trunc);
        let n = self.trunc;
        let mut out = Self::zero(n);
        for i in 0..=n {
            for j in 0..=n - i {
                let x = &self.coeffs[i][j];
                if x.is_zero() {
                    continue;
                }
                for k in 0..=n - i - j {
                    for l in 0..=n - i - j - k {
                        let y = &o.coeffs[k][l];
                        if !y.is_zero() {
                            out.coeffs[i + k][j + l] += x * y;
                        }
                    }
                }
            }
        }
        out
    }

    /// Multiplies by a polynomial in `t` only (`in_u = false`) or `u` only.
    pub fn mul_univariate(&self, p: &[BigRational], in_u: bool) -> Self {
        let mut out = Self::zero(self.trunc);
        let n = self.trunc;
        for i in 0..=n {
            for j in 0..=n - i {
                let x = &self.coeffs[i][j];
                if x.is_zero() {
                    continue;
                }
                for (k, y) in p.iter().enumerate() {
                    let (a, b) = if in_u { (i, j + k) } else { (i + k, j) };
                    if a + b <= n && !y.is_zero() {
                        out.coeffs[a][b] += x * y;
                    }
                }
            }
        }
        out
    }

    /// First `(i, j)` where two series differ.
    pub fn first_difference(&self, o: &Self) -> Option<(usize, usize)> {
        let n = self.trunc.min(o.trunc);
        (0..=n).flat_map(|i| (0..=n - i).map(move |j| (i, j))).find(|&(i, j)| self.coeff(i, j) != o.coeff(i, j))
    }
}

impl fmt::Display for GradedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for d in 0..=self.trunc {
            for i in (0..=d).rev() {
                let c = &self.coeffs[i][d - i];
                if c.is_zero() {
                    continue;
                }
                let mono = match (i, d - i) {
                    (0, 0) => String::new(),
                    (a, b) => {
                        let p = |v: &str, e: usize| match e {
                            0 => String::new(),
                            1 => v.to_string(),
                            _ => format!("{v}^{e}"),
                        };
                        format!("{}{}", p("t", a), p("u", b))
                    }
                };
                let cs = if c.is_integer() { c.numer().to_string() } else { c.to_string() };
                terms.push(match (mono.is_empty(), c.is_one()) {
                    (true, _) => cs,
                    (false, true) => mono,
                    (false, false) => format!("{cs}{mono}"),
                });
            }
        }
        if terms.is_empty() {
            terms.push("0".into());
        }
        write!(f, "{} + O(deg {})", terms.join(" + "), self.trunc + 1)
    }
}

/// `1 / ∏ (1 − t^{d_i})` truncated at degree `n`.
pub fn inverse_degree_product(degrees: &[u32], n: usize) -> Vec<BigRational> {
    let mut p = UniPoly::constant(BigRational::one());
    for &d in degrees {
        p = &p * &UniPoly::new(one_minus_t_pow(d));
    }
    invert_series(&p, n)
}

/// Coefficients of `1 − t^d`.
pub fn one_minus_t_pow(d: u32) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); d as usize + 1];
    v[0] = BigRational::one();
    v[d as usize] = -BigRational::one();
    v
}
