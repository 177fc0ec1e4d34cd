//! Small dense matrices over cyclotomic fields.

use crate::cyclotomic::Cyclotomic;
use crate::poly::UniPoly;

/// Row-major square or rectangular matrix.
pub type Mat = Vec<Vec<Cyclotomic>>;

pub fn identity(n: usize) -> Mat {
    scalar(n, Cyclotomic::one())
}

pub fn scalar(n: usize, c: Cyclotomic) -> Mat {
    (0..n).map(|i| (0..n).map(|j| if i == j { c.clone() } else { Cyclotomic::zero() }).collect()).collect()
}

pub fn mul(a: &Mat, b: &Mat) -> Mat {
    let (n, k, m) = (a.len(), b.len(), b[0].len());
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc = Cyclotomic::zero();
                    for l in 0..k {
                        if !a[i][l].is_zero() && !b[l][j].is_zero() {
                            acc += &(&a[i][l] * &b[l][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn sub(a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect()
}

pub fn trace(a: &Mat) -> Cyclotomic {
    (0..a.len()).fold(Cyclotomic::zero(), |acc, i| &acc + &a[i][i])
}

/// `W y` for a column vector `y`.
pub fn mat_vec(a: &Mat, y: &[Cyclotomic]) -> Vec<Cyclotomic> {
    a.iter().map(|row| row.iter().zip(y).fold(Cyclotomic::zero(), |acc, (x, v)| &acc + &(x * v))).collect()
}

/// `x W` for a row vector `x`.
pub fn row_times(x: &[Cyclotomic], a: &Mat) -> Vec<Cyclotomic> {
    (0..a[0].len()).map(|j| (0..a.len()).fold(Cyclotomic::zero(), |acc, i| &acc + &(&x[i] * &a[i][j]))).collect()
}

/// Row echelon form by Gaussian elimination; returns the rank and the
/// determinant sign/pivot product (meaningful for square inputs).
fn eliminate(a: &Mat) -> (usize, Cyclotomic) {
    let mut m = a.clone();
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut rank = 0;
    let mut det = Cyclotomic::one();
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            det = Cyclotomic::zero();
            continue;
        };
        if p != rank {
            m.swap(p, rank);
            det = -det;
        }
        let piv = m[rank][col].clone();
        det = &det * &piv;
        let inv = piv.inv().unwrap();
        for r in rank + 1..rows {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] * &inv;
            for c in col..cols {
                let t = &f * &m[rank][c];
                m[r][c] -= &t;
            }
        }
        rank += 1;
    }
    if rank < rows {
        det = Cyclotomic::zero();
    }
    (rank, det)
}

pub fn rank(a: &Mat) -> usize {
    eliminate(a).0
}

pub fn det(a: &Mat) -> Cyclotomic {
    eliminate(a).1
}

/// Characteristic polynomial `det(λ − A)` by the Faddeev–LeVerrier recursion.
pub fn charpoly(a: &Mat) -> UniPoly<Cyclotomic> {
    let n = a.len();
    let mut coeffs = vec![Cyclotomic::zero(); n + 1];
    coeffs[n] = Cyclotomic::one();
    let mut m = identity(n);
    for k in 1..=n {
        let am = mul(a, &m);
        let c = -&(&trace(&am) / &Cyclotomic::from_int(k as i64));
        coeffs[n - k] = c.clone();
        m = am;
        for (i, row) in m.iter_mut().enumerate() {
            row[i] += &c;
        }
    }
    UniPoly::new(coeffs)
}

/// `det(1 − t A)` as a polynomial in `t`.
pub fn det_one_minus_t(a: &Mat) -> UniPoly<Cyclotomic> {
    let p = charpoly(a);
    let n = a.len();
    UniPoly::new((0..=n).map(|k| p.coeff(n - k)).collect())
}

/// Coordinates of `target` in the basis `cols` (column vectors), if it lies
/// in their span. The basis must be linearly independent.
pub fn solve_in_span(cols: &[Vec<Cyclotomic>], target: &[Cyclotomic]) -> Option<Vec<Cyclotomic>> {
    let k = cols.len();
    let rows = target.len();
    // Augmented system [B | target] in row form.
    let mut m: Mat =
        (0..rows).map(|r| cols.iter().map(|c| c[r].clone()).chain([target[r].clone()]).collect()).collect();
    let mut pivots = Vec::with_capacity(k);
    let mut rank = 0;
    for col in 0..k {
        let p = (rank..rows).find(|&r| !m[r][col].is_zero())?;
        m.swap(p, rank);
        let inv = m[rank][col].inv().unwrap();
        for c in col..=k {
            m[rank][c] = &m[rank][c] * &inv;
        }
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=k {
                    let t = &f * &m[rank][c];
                    m[r][c] -= &t;
                }
            }
        }
        pivots.push(rank);
        rank += 1;
    }
    if (rank..rows).any(|r| !m[r][k].is_zero()) {
        return None;
    }
    Some(pivots.iter().map(|&r| m[r][k].clone()).collect())
}

/// A maximal linearly independent subfamily of `vectors`, in input order.
pub fn independent_subset(vectors: &[Vec<Cyclotomic>]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut rows: Mat = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        let mut trial = rows.clone();
        trial.push(v.clone());
        if rank(&trial) == trial.len() {
            rows = trial;
            chosen.push(i);
        }
    }
    chosen
}
