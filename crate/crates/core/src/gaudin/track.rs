//! Continuation of the spectrum of `Σ μ_i D_{y_i}` along a piecewise linear
//! path in `(c, v*)`, with `v` fixed.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::spectral::{self, CMat, Clustering};
use super::{generic_mu, GaudinData, GaudinPoint};
use crate::error::{Error, Result};

/// A polyline `(c, v*)` through `nodes`, each leg taking an equal share of
/// `t ∈ [0, 1]`. The first node must have `c = 0` so that the starting
/// spectrum is read off the diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct PathSpec {
    pub v: Vec<Complex64>,
    pub nodes: Vec<(Vec<Complex64>, Vec<Complex64>)>,
}

fn lerp(a: &[Complex64], b: &[Complex64], s: f64) -> Vec<Complex64> {
    a.iter().zip(b).map(|(x, y)| x * (1.0 - s) + y * s).collect()
}

impl PathSpec {
    /// The straight path `t ↦ (t·c, (1 − t)·v*)`.
    pub fn straight(v: Vec<Complex64>, vstar: Vec<Complex64>, c: Vec<Complex64>) -> Self {
        let zero_c = vec![Complex64::new(0.0, 0.0); c.len()];
        let zero_v = vec![Complex64::new(0.0, 0.0); vstar.len()];
        PathSpec { v, nodes: vec![(zero_c, vstar), (c, zero_v)] }
    }

    pub fn point(&self, t: f64) -> GaudinPoint {
        let legs = self.nodes.len() - 1;
        let x = t.clamp(0.0, 1.0) * legs as f64;
        let k = (x.floor() as usize).min(legs - 1);
        let s = x - k as f64;
        let (a, b) = (&self.nodes[k], &self.nodes[k + 1]);
        GaudinPoint { c: lerp(&a.0, &b.0, s), v: self.v.clone(), vstar: lerp(&a.1, &b.1, s) }
    }

    /// Same endpoints, with every leg bent through a random complex midpoint.
    pub fn with_detour(&self, rng: &mut ChaCha8Rng) -> Self {
        let mut nodes = vec![self.nodes[0].clone()];
        for w in self.nodes.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            let len =
                a.0.iter().zip(&b.0).chain(a.1.iter().zip(&b.1)).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt();
            let mut bump = |x: &[Complex64], y: &[Complex64]| -> Vec<Complex64> {
                x.iter()
                    .zip(y)
                    .map(|(p, q)| {
                        let r = 0.25 * len * rng.gen_range(0.2..1.0);
                        (p + q) * 0.5 + Complex64::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU))
                    })
                    .collect()
            };
            let mid = (bump(&a.0, &b.0), bump(&a.1, &b.1));
            nodes.push(mid);
            nodes.push(b.clone());
        }
        PathSpec { v: self.v.clone(), nodes }
    }
}

/// How a path was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathStatus {
    Ok,
    /// Succeeded on the given retry with a detoured path.
    Retried(u32),
}

/// The eigenvalue path starting at the basis vector `e_w`.
#[derive(Clone, Debug)]
pub struct EigenPath {
    /// Element attached to the path (see [`GaudinData::label`]).
    pub label: usize,
    /// `(t, joint eigenvalues ⟨y_i, ρ(t)⟩)` at accepted steps.
    pub samples: Vec<(f64, Vec<Complex64>)>,
    /// `ρ(1)`, the joint eigenvalue of the terminal cluster.
    pub terminal: Vec<Complex64>,
    /// Index of the terminal cluster.
    pub cluster: usize,
    pub status: PathStatus,
}

/// Result of a tracking run.
#[derive(Clone, Debug)]
pub struct Tracked {
    pub paths: Vec<EigenPath>,
    pub clustering: Clustering,
    /// Spectral projectors at `t = 1`, one per cluster.
    pub projectors: Vec<CMat>,
    /// `D_{y_i}` at `t = 1`.
    pub terminal_matrices: Vec<CMat>,
    pub retries: u32,
    pub steps: usize,
    /// Distance from `t = 1` at which paths were assigned to clusters.
    pub eta: f64,
}

pub const MAX_RETRIES: u32 = 5;
const MIN_STEP: f64 = 1e-10;
const MAX_STEP: f64 = 0.05;
/// A step is accepted when every eigenvalue lands within this fraction of
/// its distance to the nearest other eigenvalue from its predicted position.
const GAP_FRACTION: f64 = 0.3;

enum Failure {
    Collision(f64),
    Other(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Other(e)
    }
}

/// Tracks all `|W|` eigenvalue paths of `Σ μ_i D_{y_i}` along `spec`.
///
/// On a near-collision before `t = 1` the path is replaced by a detoured one
/// (fresh randomness derived from `seed`), at most [`MAX_RETRIES`] times.
pub fn track_spectrum(data: &GaudinData<'_>, spec: &PathSpec, seed: u64) -> Result<Tracked> {
    if spec.nodes.len() < 2 {
        return Err(Error::InvalidArgument("a path needs at least two nodes".into()));
    }
    if spec.nodes[0].0.iter().any(|z| z.norm() != 0.0) {
        return Err(Error::InvalidArgument("paths must start at c = 0".into()));
    }
    let mu = generic_mu(data.dim());
    let end = spec.point(1.0);
    let terminal_matrices = data.matrices(&end)?;
    let a1 = data.combination(&terminal_matrices, &mu);
    let ev1 = spectral::eigenvalues(&a1)?;
    let start = data.combination(&data.matrices(&spec.point(0.0))?, &mu);
    let lam0: Vec<Complex64> = (0..data.order()).map(|w| start[(w, w)]).collect();
    let scale = ev1.iter().chain(&lam0).map(|z| z.norm()).fold(1e-300, f64::max);
    for i in 0..lam0.len() {
        for j in 0..i {
            if (lam0[i] - lam0[j]).norm() <= 1e-9 * scale {
                return Err(Error::InvalidArgument("v* is not regular: starting eigenvalues coincide".into()));
            }
        }
    }
    let clustering = spectral::cluster(&ev1, scale);
    spectral::require_margin(&clustering, "terminal spectrum")?;
    let projectors = spectral::projectors(&a1, &clustering)?;
    let terminal_values: Vec<Vec<Complex64>> = projectors
        .iter()
        .map(|p| terminal_matrices.iter().map(|m| spectral::restricted_value(p, m)).collect())
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut path = spec.clone();
    let mut last_collision = None;
    for attempt in 0..=MAX_RETRIES {
        if attempt > 0 {
            path = spec.with_detour(&mut rng);
        }
        match follow(data, &path, &mu, &lam0, &clustering) {
            Ok((assign, samples, steps, eta)) => {
                let status = if attempt == 0 { PathStatus::Ok } else { PathStatus::Retried(attempt) };
                let paths = (0..data.order())
                    .map(|w| EigenPath {
                        label: data.label(w),
                        samples: samples[w].clone(),
                        terminal: terminal_values[assign[w]].clone(),
                        cluster: assign[w],
                        status,
                    })
                    .collect();
                return Ok(Tracked { paths, clustering, projectors, terminal_matrices, retries: attempt, steps, eta });
            }
            Err(Failure::Collision(t)) => last_collision = Some(t),
            Err(Failure::Other(e)) => return Err(e),
        }
    }
    Err(Error::NumericAmbiguity(format!(
        "eigenvalue paths collide after {MAX_RETRIES} retries (last collision at t = {:.6})",
        last_collision.unwrap_or(f64::NAN)
    )))
}

type FollowOut = (Vec<usize>, Vec<Vec<(f64, Vec<Complex64>)>>, usize, f64);

fn follow(
    data: &GaudinData<'_>,
    path: &PathSpec,
    mu: &[Complex64],
    lam0: &[Complex64],
    terminal: &Clustering,
) -> std::result::Result<FollowOut, Failure> {
    let n = lam0.len();
    let mut lam = lam0.to_vec();
    // Velocity d λ / dt from the last accepted step, reset at every node
    // where the path may turn.
    let mut vel: Option<Vec<Complex64>> = None;
    let legs = (path.nodes.len() - 1) as f64;
    let mut samples: Vec<Vec<(f64, Vec<Complex64>)>> = vec![Vec::new(); n];
    let mut t: f64 = 0.0;
    let mut h: f64 = 1e-2;
    let mut steps = 0;
    let mut eta: f64 = 1e-2;
    loop {
        let target = 1.0 - eta;
        while t < target {
            h = h.min(target - t).max(MIN_STEP * 0.5);
            let node = ((t * legs + 1e-12).floor() + 1.0) / legs;
            let tn = (t + h).min(target).min(node);
            let ms = data.matrices(&path.point(tn))?;
            let a = data.combination(&ms, mu);
            let ev = spectral::eigenvalues(&a)?;
            let pred: Vec<Complex64> = match &vel {
                Some(v) => lam.iter().zip(v).map(|(l, d)| l + d * (tn - t)).collect(),
                None => lam.clone(),
            };
            match match_step(&lam, &pred, &ev) {
                Some(next) => {
                    vel = if tn == node {
                        None
                    } else {
                        Some(next.iter().zip(&lam).map(|(a, b)| (a - b) / (tn - t)).collect())
                    };
                    lam = next;
                    t = tn;
                    steps += 1;
                    for (w, s) in samples.iter_mut().enumerate() {
                        let x = spectral::eigenvector(&a, lam[w]);
                        s.push((t, ms.iter().map(|m| spectral::rayleigh(m, &x)).collect()));
                    }
                    h = (h * 1.6).min(MAX_STEP);
                }
                None => {
                    h /= 2.0;
                    if h < MIN_STEP {
                        return Err(Failure::Collision(t));
                    }
                }
            }
        }
        if let Some(assign) = assign_terminal(&lam, terminal) {
            return Ok((assign, samples, steps, eta));
        }
        eta /= 10.0;
        if eta < 1e-9 {
            return Err(Failure::Other(Error::NumericAmbiguity(
                "eigenvalue paths do not settle into the terminal clusters".into(),
            )));
        }
    }
}

/// Continues each eigenvalue to the computed eigenvalue nearest its
/// predicted position, provided the corrections are small against the local
/// gaps (both before the step and between predictions) and the matching is a
/// bijection. Prediction matters when two paths pass close to each other
/// within one step: nearest-neighbour matching from the old positions alone
/// can then swap them.
fn match_step(lam: &[Complex64], pred: &[Complex64], ev: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = lam.len();
    let mut used = vec![false; n];
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let gap = (0..n)
            .filter(|&k| k != i)
            .map(|k| (lam[i] - lam[k]).norm().min((pred[i] - pred[k]).norm()))
            .fold(f64::INFINITY, f64::min);
        let (j, d) =
            ev.iter().enumerate().map(|(j, z)| (j, (z - pred[i]).norm())).min_by(|a, b| a.1.total_cmp(&b.1))?;
        if used[j] || (gap.is_finite() && d > GAP_FRACTION * gap) {
            return None;
        }
        used[j] = true;
        out.push(ev[j]);
    }
    Some(out)
}

/// Assigns every path to the nearest terminal cluster when each lies well
/// inside its cluster's basin and the occupancies match the multiplicities.
fn assign_terminal(lam: &[Complex64], cl: &Clustering) -> Option<Vec<usize>> {
    let k = cl.centers.len();
    if k == 1 {
        return Some(vec![0; lam.len()]);
    }
    let sep: Vec<f64> = (0..k)
        .map(|a| {
            (0..k).filter(|&b| b != a).map(|b| (cl.centers[a] - cl.centers[b]).norm()).fold(f64::INFINITY, f64::min)
        })
        .collect();
    let mut counts = vec![0usize; k];
    let mut out = Vec::with_capacity(lam.len());
    for z in lam {
        let (j, d) =
            cl.centers.iter().enumerate().map(|(j, c)| (j, (c - z).norm())).min_by(|a, b| a.1.total_cmp(&b.1))?;
        if d > 0.25 * sep[j] {
            return None;
        }
        counts[j] += 1;
        out.push(j);
    }
    (0..k).all(|j| counts[j] == cl.clusters[j].len()).then_some(out)
}
