//! Gaudin operators on the fibre `kW` and everything computed from their
//! spectra: cellular characters, left, right and two-sided cells, and the
//! minimal polynomial of the Euler operator.
//!
//! The operator attached to `y ∈ V` at a point `(c, v, v*)` acts on the basis
//! `(e_w)` of `kW` by
//!
//! ```text
//! D_y e_w = ⟨y, w(v*)⟩ e_w + Σ_s ε(s) c_s ⟨y, α_s⟩ / ⟨v, α_s⟩ e_{sw}.
//! ```
//!
//! Right cells use the same construction for the contragredient group, with
//! roots and coroots exchanged and `v`, `v*` swapped.

pub mod cells;
pub mod minpoly;
pub mod spectral;
pub mod track;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::groups::ReflectionGroup;
use spectral::CMat;

pub use cells::{
    cellular_characters, left_cells, right_cells, two_sided_candidate, CellBlock, CellKind, CellPartition,
    CellularCharacter,
};
pub use minpoly::{euler_minpoly_check, MinpolyReport};
pub use track::{track_spectrum, EigenPath, PathSpec, Tracked};

/// Which side of the bimodule `kW` the operators realise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// The operators of the group itself; cells read off are left cells.
    Left,
    /// The operators of the contragredient group; cells are right cells.
    Dual,
}

/// A point `(c, v, v*)` with complex coordinates. `c` is keyed by reflection
/// class of the original group on both sides.
#[derive(Clone, Debug, PartialEq)]
pub struct GaudinPoint {
    pub c: Vec<Complex64>,
    pub v: Vec<Complex64>,
    pub vstar: Vec<Complex64>,
}

/// Group data in the shape needed to assemble Gaudin matrices.
#[derive(Clone, Debug)]
pub struct GaudinData<'a> {
    pub g: &'a ReflectionGroup,
    pub side: Side,
    /// `B_w` with `w(v*) = B_w v*` in coordinates.
    act: Vec<CMat>,
    /// Linear forms vanishing on the reflecting hyperplanes (roots, or
    /// coroots on the dual side), one per reflection.
    forms: Vec<Vec<Complex64>>,
    /// Factor multiplying `c_s` in the off-diagonal entries.
    weight: Vec<Complex64>,
}

impl<'a> GaudinData<'a> {
    pub fn new(g: &'a ReflectionGroup, side: Side) -> Self {
        let mats = g.complex_matrices();
        let act = mats
            .iter()
            .map(|m| match side {
                // x ↦ x ∘ w^{-1} on V*, as columns: (W^{-1})^T.
                Side::Left => m.clone().try_inverse().expect("group element is invertible").transpose(),
                // The contragredient element acts on V* through (W^{-1})^T, so
                // on its dual V through W itself.
                Side::Dual => m.clone(),
            })
            .collect();
        let forms = g
            .reflections
            .iter()
            .map(|r| match side {
                Side::Left => r.root.iter().map(|x| x.embed_complex()).collect(),
                Side::Dual => r.coroot.iter().map(|x| x.embed_complex()).collect(),
            })
            .collect();
        // On the dual side det(s^∨) = conj ε(s) and the matching parameter is
        // ε(s)·c_s, so the product is c_s.
        let weight = g
            .reflections
            .iter()
            .map(|r| match side {
                Side::Left => r.eps.embed_complex(),
                Side::Dual => Complex64::new(1.0, 0.0),
            })
            .collect();
        GaudinData { g, side, act, forms, weight }
    }

    pub fn order(&self) -> usize {
        self.g.order()
    }

    pub fn dim(&self) -> usize {
        self.g.dim
    }

    /// `⟨v, α⟩` for every reflecting form.
    fn pairings(&self, v: &[Complex64]) -> Vec<Complex64> {
        self.forms.iter().map(|f| f.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// The operators `D_{y_i}` for the coordinate basis of `V`.
    pub fn matrices(&self, p: &GaudinPoint) -> Result<Vec<CMat>> {
        let n = self.order();
        let dim = self.dim();
        let pv = self.pairings(&p.v);
        let vnorm = p.v.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let fnorm = self.forms.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
        if pv.iter().any(|z| z.norm() <= 1e-12 * vnorm.max(1e-300) * fnorm) {
            return Err(Error::InvalidArgument("v lies on a reflecting hyperplane".into()));
        }
        let mut ms = vec![DMatrix::<Complex64>::zeros(n, n); dim];
        let vs = nalgebra::DVector::from_column_slice(&p.vstar);
        for w in 0..n {
            let wv = &self.act[w] * &vs;
            for (i, m) in ms.iter_mut().enumerate() {
                m[(w, w)] = wv[i];
            }
        }
        for (ri, r) in self.g.reflections.iter().enumerate() {
            let k = self.weight[ri] * p.c[r.class] / pv[ri];
            if k == Complex64::new(0.0, 0.0) {
                continue;
            }
            for w in 0..n {
                let sw = self.g.mul(r.element, w);
                for (i, m) in ms.iter_mut().enumerate() {
                    m[(sw, w)] += k * self.forms[ri][i];
                }
            }
        }
        Ok(ms)
    }

    /// `Σ_i μ_i D_{y_i}`.
    pub fn combination(&self, ms: &[CMat], mu: &[Complex64]) -> CMat {
        let n = self.order();
        ms.iter().zip(mu).fold(CMat::zeros(n, n), |acc, (m, k)| acc + m * *k)
    }

    /// The label attached to the basis vector `e_w`: `w^{-1}` on the left
    /// side and `w` on the dual side.
    pub fn label(&self, w: usize) -> usize {
        match self.side {
            Side::Left => self.g.inv(w),
            Side::Dual => w,
        }
    }
}

/// Right multiplication `R_w: e_u ↦ e_{uw}` on `kW`.
pub fn right_regular(g: &ReflectionGroup, w: usize) -> CMat {
    let n = g.order();
    let mut m = CMat::zeros(n, n);
    for u in 0..n {
        m[(g.mul(u, w), u)] = Complex64::new(1.0, 0.0);
    }
    m
}

/// Left multiplication `e_u ↦ e_{wu}` on `kW`.
pub fn left_regular(g: &ReflectionGroup, w: usize) -> CMat {
    let n = g.order();
    let mut m = CMat::zeros(n, n);
    for u in 0..n {
        m[(g.mul(w, u), u)] = Complex64::new(1.0, 0.0);
    }
    m
}

/// Largest commutator `‖[A, B]‖ / (‖A‖‖B‖)` over the given matrices and
/// between them and every right multiplication.
pub fn commutation_defect(g: &ReflectionGroup, ms: &[CMat], with_right: bool) -> f64 {
    let rel = |a: &CMat, b: &CMat| {
        let d = (a * b - b * a).norm();
        let s = a.norm() * b.norm();
        if s == 0.0 {
            0.0
        } else {
            d / s
        }
    };
    let mut worst: f64 = 0.0;
    for i in 0..ms.len() {
        for j in i + 1..ms.len() {
            worst = worst.max(rel(&ms[i], &ms[j]));
        }
        if with_right {
            for w in 0..g.order() {
                worst = worst.max(rel(&ms[i], &right_regular(g, w)));
            }
        }
    }
    worst
}

/// Fixed generic coefficients `μ` for the combination `Σ μ_i D_{y_i}`. They
/// are not all real, so that real joint eigenvalues along a real path never
/// collide after projection.
pub fn generic_mu(dim: usize) -> Vec<Complex64> {
    const MU: [(f64, f64); 4] = [(1.0, 0.0), (0.3719, 0.2113), (0.1234, -0.4471), (0.0871, 0.3302)];
    (0..dim).map(|i| Complex64::new(MU[i % MU.len()].0, MU[i % MU.len()].1)).collect()
}
