//! Dense complex spectral kernels: eigenvalues, eigenvectors, clustering and
//! contour-integral projectors.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector, Schur};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMat = DMatrix<Complex64>;

/// Eigenvalues of a general complex matrix from its Schur form.
pub fn eigenvalues(a: &CMat) -> Result<Vec<Complex64>> {
    let n = a.nrows();
    let schur = Schur::try_new(a.clone(), 1e-15, 10_000)
        .ok_or_else(|| Error::NumericAmbiguity("Schur iteration did not converge".into()))?;
    let (_, t) = schur.unpack();
    let scale = t.iter().map(|z| z.norm()).fold(1e-300, f64::max);
    let mut out = Vec::with_capacity(n);
    let mut i = 0;
    while i < n {
        if i + 1 < n && t[(i + 1, i)].norm() > 1e-13 * scale {
            // A 2×2 block left by the real-shift iteration.
            let (p, q, r, s) = (t[(i, i)], t[(i, i + 1)], t[(i + 1, i)], t[(i + 1, i + 1)]);
            let half = (p + s) / 2.0;
            let disc = ((p - s) * (p - s) / 4.0 + q * r).sqrt();
            out.push(half + disc);
            out.push(half - disc);
            i += 2;
        } else {
            out.push(t[(i, i)]);
            i += 1;
        }
    }
    Ok(out)
}

/// A unit eigenvector for the (simple) eigenvalue `lambda` by inverse iteration.
pub fn eigenvector(a: &CMat, lambda: Complex64) -> DVector<Complex64> {
    let n = a.nrows();
    let scale = a.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let shift = lambda + Complex64::new(1e-12 * scale, 1e-12 * scale);
    let m = a - CMat::identity(n, n) * shift;
    let lu = m.lu();
    let mut x = DVector::from_fn(n, |i, _| Complex64::new(1.0 + 0.1 * i as f64, 0.05 * i as f64));
    for _ in 0..3 {
        if let Some(y) = lu.solve(&x) {
            let nrm = y.norm();
            if nrm > 0.0 && nrm.is_finite() {
                x = y / Complex64::from(nrm);
            }
        }
    }
    x
}

/// Rayleigh quotient `x^H M x / x^H x`.
pub fn rayleigh(m: &CMat, x: &DVector<Complex64>) -> Complex64 {
    let mx = m * x;
    x.dotc(&mx) / x.dotc(x)
}

/// Groups of numerically equal eigenvalues.
#[derive(Clone, Debug)]
pub struct Clustering {
    /// Indices into the input list, each group increasing.
    pub clusters: Vec<Vec<usize>>,
    pub centers: Vec<Complex64>,
    /// Merging threshold actually used.
    pub tau: f64,
    /// Smallest distance between two clusters (infinite for one cluster).
    pub min_gap: f64,
}

impl Clustering {
    /// `min_gap / tau`.
    pub fn margin(&self) -> f64 {
        self.min_gap / self.tau
    }

    pub fn cluster_of(&self, i: usize) -> usize {
        self.clusters.iter().position(|c| c.contains(&i)).expect("clustered index")
    }
}

/// Relative clustering tolerance: `τ = RELATIVE_TOL × diameter`.
pub const RELATIVE_TOL: f64 = 1e-6;
/// Required ratio of the smallest inter-cluster distance to `τ`.
pub const MIN_MARGIN: f64 = 10.0;

/// Single-linkage clustering with `τ = 1e-6 × diameter`; a spectrum whose
/// diameter is negligible against `scale` is one cluster.
pub fn cluster(vals: &[Complex64], scale: f64) -> Clustering {
    let n = vals.len();
    let mut diameter: f64 = 0.0;
    for i in 0..n {
        for j in 0..i {
            diameter = diameter.max((vals[i] - vals[j]).norm());
        }
    }
    let floor = 1e-9 * scale.max(1.0);
    let tau = (RELATIVE_TOL * diameter).max(floor * RELATIVE_TOL);
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    if diameter > floor {
        for i in 0..n {
            for j in 0..i {
                if (vals[i] - vals[j]).norm() <= tau {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a] = b;
                }
            }
        }
    } else {
        parent = vec![0; n];
    }
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    let mut roots: Vec<usize> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        match roots.iter().position(|&x| x == r) {
            Some(k) => clusters[k].push(i),
            None => {
                roots.push(r);
                clusters.push(vec![i]);
            }
        }
    }
    let centers: Vec<Complex64> =
        clusters.iter().map(|c| c.iter().map(|&i| vals[i]).sum::<Complex64>() / c.len() as f64).collect();
    let mut min_gap = f64::INFINITY;
    for a in 0..clusters.len() {
        for b in 0..a {
            for &i in &clusters[a] {
                for &j in &clusters[b] {
                    min_gap = min_gap.min((vals[i] - vals[j]).norm());
                }
            }
        }
    }
    Clustering { clusters, centers, tau, min_gap }
}

/// Fails when the clusters are not separated by at least `MIN_MARGIN · τ`.
pub fn require_margin(c: &Clustering, what: &str) -> Result<()> {
    if c.clusters.len() > 1 && c.margin() < MIN_MARGIN {
        return Err(Error::NumericAmbiguity(format!(
            "{what}: cluster margin {:.3e} below {MIN_MARGIN} (tau {:.3e}); rerun with another seed",
            c.margin(),
            c.tau
        )));
    }
    Ok(())
}

/// Number of quadrature nodes on each projector contour.
const CONTOUR_NODES: usize = 64;

/// Riesz projectors `P_k = (2πi)^{-1} ∮ (z − A)^{-1} dz` around every cluster,
/// each contour of radius half the distance to the nearest other centre.
pub fn projectors(a: &CMat, cl: &Clustering) -> Result<Vec<CMat>> {
    let n = a.nrows();
    if cl.clusters.len() == 1 {
        return Ok(vec![CMat::identity(n, n)]);
    }
    let mut out = Vec::with_capacity(cl.clusters.len());
    for (k, &z0) in cl.centers.iter().enumerate() {
        let nearest = cl
            .centers
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, z)| (z - z0).norm())
            .fold(f64::INFINITY, f64::min);
        let r = nearest / 2.0;
        let mut p = CMat::zeros(n, n);
        for q in 0..CONTOUR_NODES {
            let e = Complex64::from_polar(r, 2.0 * PI * (q as f64 + 0.5) / CONTOUR_NODES as f64);
            let m = CMat::identity(n, n) * (z0 + e) - a;
            let inv =
                m.try_inverse().ok_or_else(|| Error::NumericAmbiguity("resolvent is singular on a contour".into()))?;
            p += inv * (e / CONTOUR_NODES as f64);
        }
        out.push(p);
    }
    let mut sum = CMat::zeros(n, n);
    for p in &out {
        sum += p;
    }
    let resid = (sum - CMat::identity(n, n)).norm();
    if resid > 1e-8 {
        return Err(Error::NumericAmbiguity(format!("projectors do not sum to the identity (residual {resid:.3e})")));
    }
    Ok(out)
}

/// `tr(P M) / tr(P)`: the eigenvalue of `M` on the range of `P`, for `M`
/// commuting with the family that defines `P`.
pub fn restricted_value(p: &CMat, m: &CMat) -> Complex64 {
    (p * m).trace() / p.trace()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eigenvalues_of_rotation_and_jordan() {
        let rot = CMat::from_row_slice(
            3,
            3,
            &[c(0., 0.), c(-1., 0.), c(0., 0.), c(1., 0.), c(0., 0.), c(0., 0.), c(0., 0.), c(0., 0.), c(2., 0.)],
        );
        let mut ev = eigenvalues(&rot).unwrap();
        ev.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
        assert!((ev[0] - c(0., -1.)).norm() < 1e-12);
        assert!((ev[1] - c(0., 1.)).norm() < 1e-12);
        assert!((ev[2] - c(2., 0.)).norm() < 1e-12);
        let v = eigenvector(&rot, c(2., 0.));
        assert!((rayleigh(&rot, &v) - c(2., 0.)).norm() < 1e-10);
    }

    #[test]
    fn clusters_and_projectors() {
        let d = CMat::from_diagonal(&DVector::from_vec(vec![c(1., 0.), c(1. + 1e-12, 0.), c(3., 0.)]));
        let s = CMat::from_row_slice(
            3,
            3,
            &[c(1., 0.), c(2., 0.), c(0., 1.), c(0., 0.), c(1., 0.), c(1., 0.), c(1., 0.), c(0., 0.), c(1., 0.)],
        );
        let a = &s * d * s.clone().try_inverse().unwrap();
        let ev = eigenvalues(&a).unwrap();
        let cl = cluster(&ev, 3.0);
        assert_eq!(cl.clusters.len(), 2);
        require_margin(&cl, "test").unwrap();
        let ps = projectors(&a, &cl).unwrap();
        let ranks: Vec<f64> = ps.iter().map(|p| p.trace().re.round()).collect();
        let mut ranks = ranks;
        ranks.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(ranks, [1.0, 2.0]);
        for (p, z) in ps.iter().zip(&cl.centers) {
            assert!((restricted_value(p, &a) - z).norm() < 1e-9);
            assert!((p * p - p).norm() < 1e-9);
        }
    }

    #[test]
    fn tiny_spectrum_is_one_cluster() {
        let cl = cluster(&[c(1e-14, 0.), c(-1e-14, 0.)], 1.0);
        assert_eq!(cl.clusters.len(), 1);
    }
}
