//! Calogero-Moser cells as coincidence classes of terminal joint eigenvalues,
//! and cellular characters as characters of joint generalised eigenspaces.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::spectral::{self, CMat, Clustering};
use super::track::{track_spectrum, PathSpec, Tracked};
use super::{generic_mu, right_regular, GaudinData, GaudinPoint, Side};
use crate::characters::CharacterTable;
use crate::error::{Error, Result};
use crate::families::cm_families;
use crate::groups::{rat_f64, GroupKind, ReflectionGroup};
use crate::info::OrderedMap;
use crate::params::{kappa_inverse_complex, ParamC};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CellKind {
    Left,
    Right,
    TwoSided,
}

impl CellKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(CellKind::Left),
            "right" => Ok(CellKind::Right),
            "two-sided" | "two_sided" | "twosided" => Ok(CellKind::TwoSided),
            _ => Err(Error::InvalidArgument(format!("unknown cell kind {s:?} (left, right, two-sided)"))),
        }
    }
}

/// A cell with the data of its terminal eigenspace.
#[derive(Clone, Debug)]
pub struct CellBlock {
    /// Element indices, increasing.
    pub elements: Vec<usize>,
    /// Joint eigenvalue `(⟨y_i, ρ(1)⟩)_i` of the block (the first left cell's
    /// for two-sided blocks).
    pub terminal: Vec<Complex64>,
    /// Limit of the Euler operator `Σ v_i D_{y_i}` on the block.
    pub euler_limit: Complex64,
}

/// Multiplicities of the irreducible characters in a cellular character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellularCharacter {
    pub block: usize,
    pub mults: Vec<u64>,
}

impl CellularCharacter {
    /// `Σ_χ mult_χ χ(1)`.
    pub fn dimension(&self, table: &CharacterTable) -> usize {
        self.mults.iter().enumerate().map(|(i, &m)| m as usize * table.degree(i)).sum()
    }
}

#[derive(Clone, Debug)]
pub struct CellPartition {
    pub kind: CellKind,
    pub blocks: Vec<CellBlock>,
    /// One per block, in block order.
    pub cellular: Vec<CellularCharacter>,
    /// Smallest distance between terminal clusters.
    pub min_gap: f64,
    /// `min_gap / τ`.
    pub margin: f64,
    pub retries: u32,
    /// For two-sided candidates: whether the Euler limits separate the
    /// families one-to-one and the families are exact.
    pub exact: Option<bool>,
    pub convention: String,
}

impl CellPartition {
    /// Blocks as sorted lists of element names, sorted.
    pub fn named(&self, g: &ReflectionGroup) -> Vec<Vec<String>> {
        let mut v: Vec<Vec<String>> = self
            .blocks
            .iter()
            .map(|b| {
                let mut n: Vec<String> = b.elements.iter().map(|&w| g.names[w].clone()).collect();
                n.sort();
                n
            })
            .collect();
        v.sort();
        v
    }

    /// Block partition as sorted index sets, for comparisons.
    pub fn partition(&self) -> Vec<Vec<usize>> {
        let mut v: Vec<Vec<usize>> = self.blocks.iter().map(|b| b.elements.clone()).collect();
        v.sort();
        v
    }

    pub fn block_of(&self, w: usize) -> usize {
        self.blocks.iter().position(|b| b.elements.contains(&w)).expect("cells cover W")
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.blocks.iter().map(|b| b.elements.len()).collect();
        s.sort_unstable();
        s
    }

    pub fn report(&self, g: &ReflectionGroup, table: &CharacterTable) -> CellReport {
        let fmt = |z: &Complex64| ComplexReport::from(*z);
        CellReport {
            kind: self.kind,
            blocks: self
                .blocks
                .iter()
                .map(|b| CellBlockReport {
                    elements: b.elements.iter().map(|&w| g.names[w].clone()).collect(),
                    terminal_eigen: b.terminal.iter().map(fmt).collect(),
                    euler_limit: fmt(&b.euler_limit),
                })
                .collect(),
            cellular_characters: self
                .cellular
                .iter()
                .map(|cc| CellularReport { block: cc.block, mults: mults_report(table, &cc.mults) })
                .collect(),
            exact: self.exact,
            diagnostics: Diagnostics {
                min_gap: finite(self.min_gap),
                margin: finite(self.margin),
                retries: self.retries,
                convention: self.convention.clone(),
            },
        }
    }
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

/// Nonzero multiplicities keyed by character name, in table order.
pub fn mults_report(table: &CharacterTable, mults: &[u64]) -> OrderedMap<u64> {
    OrderedMap(mults.iter().enumerate().filter(|(_, &m)| m > 0).map(|(i, &m)| (table.irr[i].name.clone(), m)).collect())
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ComplexReport {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexReport {
    /// Rounded to 9 significant digits so that reports are stable.
    fn from(z: Complex64) -> Self {
        let r = |x: f64| {
            if x.abs() < 1e-9 {
                0.0
            } else {
                format!("{x:.9e}").parse().unwrap_or(x)
            }
        };
        ComplexReport { re: r(z.re), im: r(z.im) }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CellReport {
    pub kind: CellKind,
    pub blocks: Vec<CellBlockReport>,
    pub cellular_characters: Vec<CellularReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<bool>,
    pub diagnostics: Diagnostics,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CellBlockReport {
    pub elements: Vec<String>,
    pub terminal_eigen: Vec<ComplexReport>,
    pub euler_limit: ComplexReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct CellularReport {
    pub block: usize,
    pub mults: OrderedMap<u64>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Diagnostics {
    pub min_gap: Option<f64>,
    pub margin: Option<f64>,
    pub retries: u32,
    pub convention: String,
}

/// Argument of the reference point `κ` on the circle used for rank one.
const KAPPA_ARG: f64 = 0.3;

fn cx(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Human-readable description of the path and labelling conventions.
pub fn convention(g: &ReflectionGroup, side: Side) -> String {
    let label = match side {
        Side::Left => "e_w labelled w^-1",
        Side::Dual => "contragredient operators, v and v* swapped, e_w labelled w",
    };
    let path = match g.kind {
        GroupKind::Cyclic(_) => format!(
            "rank one: (0, v*) -> (c(K_ref), 0) -> (c, 0) with K_ref,j = zeta^j exp({KAPPA_ARG}i)/d and v v* = 2 exp({KAPPA_ARG}i)"
        ),
        _ => "real: (t c, v, (1-t) v*) with v in the fundamental chamber and -v* in the cochamber".to_string(),
    };
    format!("{label}; {path}")
}

/// The default path for `c` and the requested side.
pub fn default_path(g: &ReflectionGroup, c: &ParamC, seed: u64, side: Side) -> Result<PathSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let target = c.to_complex();
    let (v, vstar, nodes_mid) = match g.kind {
        GroupKind::Cyclic(d) => {
            let m = 1.0 + rng.gen_range(0..=8) as f64 / 8.0;
            let kappa = Complex64::from_polar(1.0, KAPPA_ARG);
            let kref: Vec<Complex64> = (0..d)
                .map(|j| Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / d as f64) * kappa / d as f64)
                .collect();
            let cref = kappa_inverse_complex(g, &[kref]);
            (vec![cx(m)], vec![kappa * 2.0 / m], Some(cref))
        }
        _ => {
            let v: Vec<Complex64> = g.chamber_vector(&mut rng)?.iter().map(|q| cx(rat_f64(q))).collect();
            let vs: Vec<Complex64> = g.cochamber_covector(&mut rng)?.iter().map(|q| cx(-rat_f64(q))).collect();
            (v, vs, None)
        }
    };
    let (v, vstar) = match side {
        Side::Left => (v, vstar),
        Side::Dual => (vstar, v),
    };
    let zero_c = vec![cx(0.0); target.len()];
    let zero_v = vec![cx(0.0); g.dim];
    let mut nodes = vec![(zero_c, vstar)];
    if let Some(cref) = nodes_mid {
        nodes.push((cref, zero_v.clone()));
    }
    nodes.push((target, zero_v));
    Ok(PathSpec { v, nodes })
}

fn euler_operator(ms: &[CMat], v: &[Complex64]) -> CMat {
    let n = ms[0].nrows();
    ms.iter().zip(v).fold(CMat::zeros(n, n), |acc, (m, x)| acc + m * *x)
}

/// Integer multiplicities of the characters `w ↦ tr(P R_w)`.
/// Multiplicities of the right-module characters `w ↦ tr(P R_w)`. On the
/// dual side the eigenspaces carry the left cellular module twisted by
/// `det`, which is undone before pairing.
fn characters_of(
    g: &ReflectionGroup,
    table: &CharacterTable,
    projectors: &[CMat],
    side: Side,
) -> Result<Vec<Vec<u64>>> {
    let rights: Vec<CMat> = (0..g.order()).map(|w| right_regular(g, w)).collect();
    let order = g.order() as f64;
    let untwist: Vec<Complex64> = (0..g.order())
        .map(|w| match side {
            Side::Left => cx(1.0),
            Side::Dual => g.det[w].embed_complex().conj(),
        })
        .collect();
    let mut out = Vec::with_capacity(projectors.len());
    for (k, p) in projectors.iter().enumerate() {
        let psi: Vec<Complex64> = rights.iter().zip(&untwist).map(|(r, u)| (p * r).trace() * u).collect();
        let mut mults = Vec::with_capacity(table.irr.len());
        for chi in &table.irr {
            let m: Complex64 =
                (0..g.order()).map(|w| psi[w] * table.value(chi, w).embed_complex().conj()).sum::<Complex64>() / order;
            let r = m.re.round();
            let resid = (m - cx(r)).norm();
            if resid >= 1e-6 || r < 0.0 {
                return Err(Error::NumericAmbiguity(format!(
                    "projector {k}: multiplicity of {} is {m:.3e}, residual {resid:.3e}",
                    chi.name
                )));
            }
            mults.push(r as u64);
        }
        out.push(mults);
    }
    Ok(out)
}

fn run(g: &ReflectionGroup, c: &ParamC, seed: u64, side: Side) -> Result<(Tracked, PathSpec)> {
    let data = GaudinData::new(g, side);
    let path = default_path(g, c, seed, side)?;
    let tracked = track_spectrum(&data, &path, seed)?;
    Ok((tracked, path))
}

fn blocks_from(tracked: &Tracked, v: &[Complex64]) -> Vec<(CellBlock, usize)> {
    let e = euler_operator(&tracked.terminal_matrices, v);
    let mut blocks: Vec<(CellBlock, usize)> = (0..tracked.clustering.clusters.len())
        .map(|k| {
            let mut elements: Vec<usize> = tracked.paths.iter().filter(|p| p.cluster == k).map(|p| p.label).collect();
            elements.sort_unstable();
            let terminal =
                tracked.paths.iter().find(|p| p.cluster == k).map(|p| p.terminal.clone()).unwrap_or_default();
            let euler_limit = spectral::restricted_value(&tracked.projectors[k], &e);
            (CellBlock { elements, terminal, euler_limit }, k)
        })
        .collect();
    blocks.sort_by(|a, b| a.0.elements.cmp(&b.0.elements));
    blocks
}

fn one_sided(g: &ReflectionGroup, table: &CharacterTable, c: &ParamC, seed: u64, side: Side) -> Result<CellPartition> {
    let (tracked, path) = run(g, c, seed, side)?;
    let blocks = blocks_from(&tracked, &path.v);
    let ordered: Vec<CMat> = blocks.iter().map(|(_, k)| tracked.projectors[*k].clone()).collect();
    let chars = characters_of(g, table, &ordered, side)?;
    let cellular: Vec<CellularCharacter> =
        chars.into_iter().enumerate().map(|(i, mults)| CellularCharacter { block: i, mults }).collect();
    for (cc, (b, _)) in cellular.iter().zip(&blocks) {
        if cc.dimension(table) != b.elements.len() {
            return Err(Error::Invariant(format!(
                "cellular character of dimension {} on a cell of size {}",
                cc.dimension(table),
                b.elements.len()
            )));
        }
    }
    Ok(CellPartition {
        kind: if side == Side::Left { CellKind::Left } else { CellKind::Right },
        blocks: blocks.into_iter().map(|(b, _)| b).collect(),
        cellular,
        min_gap: tracked.clustering.min_gap,
        margin: tracked.clustering.margin(),
        retries: tracked.retries,
        exact: None,
        convention: convention(g, side),
    })
}

/// Left cells: clusters of terminal joint eigenvalues along the default path,
/// with the cellular character of each cell.
pub fn left_cells(g: &ReflectionGroup, table: &CharacterTable, c: &ParamC, seed: u64) -> Result<CellPartition> {
    one_sided(g, table, c, seed, Side::Left)
}

/// Right cells from the contragredient construction.
pub fn right_cells(g: &ReflectionGroup, table: &CharacterTable, c: &ParamC, seed: u64) -> Result<CellPartition> {
    one_sided(g, table, c, seed, Side::Dual)
}

/// Unions of left cells with equal Euler limits, matched against families by
/// `|Γ| = Σ_{χ∈F} χ(1)²`.
pub fn two_sided_candidate(
    g: &ReflectionGroup,
    table: &CharacterTable,
    c: &ParamC,
    seed: u64,
) -> Result<CellPartition> {
    let left = left_cells(g, table, c, seed)?;
    let fam = cm_families(g, table, c)?;
    let fam_values: Vec<Complex64> = fam.blocks.iter().map(|b| b.euler_value.embed_complex()).collect();
    let scale =
        left.blocks.iter().map(|b| b.euler_limit.norm()).chain(fam_values.iter().map(|z| z.norm())).fold(1.0, f64::max);
    let tol = spectral::RELATIVE_TOL * scale;

    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, b) in left.blocks.iter().enumerate() {
        match groups.iter_mut().find(|grp| (left.blocks[grp[0]].euler_limit - b.euler_limit).norm() <= tol) {
            Some(grp) => grp.push(i),
            None => groups.push(vec![i]),
        }
    }
    let separated = (0..fam_values.len()).all(|i| (0..i).all(|j| (fam_values[i] - fam_values[j]).norm() > tol));
    let mut blocks = Vec::with_capacity(groups.len());
    let mut cellular = Vec::with_capacity(groups.len());
    for grp in &groups {
        let mut elements: Vec<usize> = grp.iter().flat_map(|&i| left.blocks[i].elements.iter().copied()).collect();
        elements.sort_unstable();
        let euler = left.blocks[grp[0]].euler_limit;
        let matched: usize = fam
            .blocks
            .iter()
            .zip(&fam_values)
            .filter(|(_, z)| (*z - euler).norm() <= tol)
            .map(|(b, _)| b.sum_dim_sq)
            .sum();
        if matched != elements.len() {
            return Err(Error::Invariant(format!(
                "two-sided block of size {} has Euler limit {euler:.6} but the families with that value have Σχ(1)² = {matched}",
                elements.len()
            )));
        }
        let mut mults = vec![0u64; table.irr.len()];
        for &i in grp {
            for (m, x) in mults.iter_mut().zip(&left.cellular[i].mults) {
                *m += x;
            }
        }
        blocks.push(CellBlock { elements, terminal: left.blocks[grp[0]].terminal.clone(), euler_limit: euler });
        cellular.push(mults);
    }
    let mut order: Vec<usize> = (0..blocks.len()).collect();
    order.sort_by(|&a, &b| blocks[a].elements.cmp(&blocks[b].elements));
    let blocks: Vec<CellBlock> = order.iter().map(|&i| blocks[i].clone()).collect();
    let cellular =
        order.iter().enumerate().map(|(k, &i)| CellularCharacter { block: k, mults: cellular[i].clone() }).collect();
    Ok(CellPartition {
        kind: CellKind::TwoSided,
        blocks,
        cellular,
        min_gap: left.min_gap,
        margin: left.margin,
        retries: left.retries,
        exact: Some(fam.exact && separated),
        convention: format!("{}; two-sided by Euler limits", left.convention),
    })
}

/// Cellular characters at `(c, v, 0)` with a seeded regular `v`, one per
/// joint generalised eigenspace.
pub fn cellular_characters(
    g: &ReflectionGroup,
    table: &CharacterTable,
    c: &ParamC,
    seed: u64,
) -> Result<Vec<CellularCharacter>> {
    let data = GaudinData::new(g, Side::Left);
    let v: Vec<Complex64> = g.regular_vector(seed).iter().map(|q| cx(rat_f64(q))).collect();
    let point = GaudinPoint { c: c.to_complex(), v, vstar: vec![cx(0.0); g.dim] };
    let ms = data.matrices(&point)?;
    let a = data.combination(&ms, &generic_mu(g.dim));
    let ev = spectral::eigenvalues(&a)?;
    let scale = ev.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let cl: Clustering = spectral::cluster(&ev, scale);
    spectral::require_margin(&cl, "cellular characters")?;
    let ps = spectral::projectors(&a, &cl)?;
    let mut chars = characters_of(g, table, &ps, Side::Left)?;
    chars.sort();
    Ok(chars.into_iter().enumerate().map(|(block, mults)| CellularCharacter { block, mults }).collect())
}
