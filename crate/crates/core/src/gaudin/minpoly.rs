//! The characteristic polynomial of the Euler operator on `kW` against its
//! closed forms in rank one and type `B2`.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::spectral;
use super::{GaudinData, GaudinPoint, Side};
use crate::error::{Error, Result};
use crate::families::b2_ab;
use crate::groups::{random_rational, rat_f64, GroupKind, ReflectionGroup};
use crate::params::{kappa, ParamC};

/// Maximal accepted scaled coefficient error.
pub const MINPOLY_TOL: f64 = 1e-8;

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MinpolyReport {
    pub group: String,
    pub samples: usize,
    /// Worst `|p_k − q_k| / s^{n−k}` over samples and coefficients, where
    /// `s = max(1, spectral radius)`.
    pub max_rel_error: f64,
    /// Degree of the worst coefficient.
    pub worst_coefficient: usize,
    pub passed: bool,
}

/// Coefficients of `∏ (T − λ)`, constant term first.
pub fn poly_from_roots(roots: &[Complex64]) -> Vec<Complex64> {
    let mut p = vec![Complex64::new(1.0, 0.0)];
    for &r in roots {
        let mut q = vec![Complex64::new(0.0, 0.0); p.len() + 1];
        for (k, a) in p.iter().enumerate() {
            q[k + 1] += a;
            q[k] -= a * r;
        }
        p = q;
    }
    p
}

/// Even polynomial `Σ e_k T^{2k}` written out with odd coefficients zero.
fn even(coeffs: [Complex64; 5]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); 9];
    for (k, c) in coeffs.into_iter().enumerate() {
        out[2 * k] = c;
    }
    out
}

/// The degree 8 polynomial of the Euler element of `B2` in terms of
/// `σ = x² + y²`, `π = x²y²` at `v*`, the same `Σ, Π` at `v`, and `A, B`.
pub fn b2_euler_poly(sg: f64, pi: f64, sg2: f64, pi2: f64, a: Complex64, b: Complex64) -> Vec<Complex64> {
    let (ss, a2, b2) = (sg * sg2, a * a, b * b);
    let mixed = sg * sg * pi2 + sg2 * sg2 * pi;
    let t6 = -2.0 * (ss + 4.0 * a2 + 4.0 * b2);
    let t4 = ss * ss + 2.0 * (mixed - 8.0 * pi * pi2) + 8.0 * (a2 + b2) * ss + 16.0 * (a2 - b2) * (a2 - b2);
    let t2 = -2.0 * ((ss + 4.0 * a2 - 4.0 * b2) * mixed - 8.0 * ss * pi * pi2 + 2.0 * b2 * ss * ss);
    let t0 = sg * sg * pi2 - sg2 * sg2 * pi;
    even([Complex64::from(t0 * t0), t2, t4, t6, Complex64::new(1.0, 0.0)])
}

/// The specialisation at `c = 0`, written independently.
pub fn b2_euler_poly_c0(sg: f64, pi: f64, sg2: f64, pi2: f64) -> Vec<Complex64> {
    let ss = sg * sg2;
    let m = sg * sg * pi2 + sg2 * sg2 * pi - 8.0 * pi * pi2;
    let t0 = sg * sg * pi2 - sg2 * sg2 * pi;
    let r = |x: f64| Complex64::new(x, 0.0);
    even([r(t0 * t0), r(-2.0 * ss * m), r(ss * ss + 2.0 * m), r(-2.0 * ss), r(1.0)])
}

/// `∏_i (T − d K_i) − (v v*)^d` in rank one.
pub fn rank_one_euler_poly(k: &[Complex64], v: f64, vstar: f64) -> Vec<Complex64> {
    let d = k.len();
    let roots: Vec<Complex64> = k.iter().map(|x| x * d as f64).collect();
    let mut p = poly_from_roots(&roots);
    p[0] -= Complex64::new((v * vstar).powi(d as i32), 0.0);
    p
}

/// Compares the spectrum of `Σ v_i D_{y_i}` at `samples` seeded points
/// `(c, v, v*)` with the closed-form polynomial.
pub fn euler_minpoly_check(g: &ReflectionGroup, c: &ParamC, samples: usize, seed: u64) -> Result<MinpolyReport> {
    if !matches!(g.kind, GroupKind::Cyclic(_) | GroupKind::B2) {
        return Err(Error::Unsupported(format!("no closed-form Euler polynomial for {}", g.kind.label())));
    }
    let data = GaudinData::new(g, Side::Left);
    let cc = c.to_complex();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = (0.0f64, 0usize);
    for _ in 0..samples {
        let v = g.regular_vector(rand::Rng::gen(&mut rng));
        let vf: Vec<f64> = v.iter().map(rat_f64).collect();
        let vs: Vec<f64> = loop {
            let x: Vec<f64> = (0..g.dim).map(|_| rat_f64(&random_rational(&mut rng))).collect();
            if x.iter().any(|&z| z != 0.0) {
                break x;
            }
        };
        let cplx = |x: &[f64]| x.iter().map(|&z| Complex64::new(z, 0.0)).collect::<Vec<_>>();
        let point = GaudinPoint { c: cc.clone(), v: cplx(&vf), vstar: cplx(&vs) };
        let ms = data.matrices(&point)?;
        let e = data.combination(&ms, &point.v);
        let lam = spectral::eigenvalues(&e)?;
        let got = poly_from_roots(&lam);
        let expect = match g.kind {
            GroupKind::B2 => {
                let sym = |p: &[f64]| (p[0] * p[0] + p[1] * p[1], p[0] * p[0] * p[1] * p[1]);
                let ((sg, pi), (sg2, pi2)) = (sym(&vs), sym(&vf));
                if c.is_zero() {
                    b2_euler_poly_c0(sg, pi, sg2, pi2)
                } else {
                    let (a, b) = b2_ab(g, c)?;
                    b2_euler_poly(sg, pi, sg2, pi2, a.embed_complex(), b.embed_complex())
                }
            }
            _ => {
                let k: Vec<Complex64> = kappa(g, c).values[0].iter().map(|x| x.embed_complex()).collect();
                rank_one_euler_poly(&k, vf[0], vs[0])
            }
        };
        let s = lam.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let n = got.len() - 1;
        for (k, (p, q)) in got.iter().zip(&expect).enumerate() {
            let err = (p - q).norm() / s.powi((n - k) as i32);
            if err > worst.0 {
                worst = (err, k);
            }
        }
    }
    Ok(MinpolyReport {
        group: g.kind.label(),
        samples,
        max_rel_error: worst.0,
        worst_coefficient: worst.1,
        passed: worst.0 <= MINPOLY_TOL,
    })
}
