//! Bundled verification suites. Each suite runs a list of named checks on
//! one group and reports every outcome; the report passes when no check
//! fails.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::characters::{
    center_hilbert_identity, fake_degrees, irr_characters, rank_one_center_series, CharacterTable,
};
use crate::cyclotomic::Cyclotomic;
use crate::dunkl::{check_bracket, dunkl_commute, euler_consistency, lowest_weight_killed};
use crate::error::{Error, Result};
use crate::families::{b2_ab, cm_families, FamilyPartition};
use crate::gaudin::{
    cellular_characters, euler_minpoly_check, left_cells, right_cells, two_sided_candidate, CellPartition,
};
use crate::groups::{GroupKind, ReflectionGroup};
use crate::params::{kappa, ParamC};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Dunkl,
    Families,
    Cells,
    Minpoly,
    Hilbert,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "dunkl" => Suite::Dunkl,
            "families" => Suite::Families,
            "cells" => Suite::Cells,
            "minpoly" => Suite::Minpoly,
            "hilbert" => Suite::Hilbert,
            "all" => Suite::All,
            _ => {
                return Err(Error::Config(format!(
                    "unknown suite {s:?} (dunkl, families, cells, minpoly, hilbert, all)"
                )))
            }
        })
    }

    fn parts(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![Suite::Dunkl, Suite::Families, Suite::Cells, Suite::Minpoly, Suite::Hilbert],
            s => vec![s],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Not applicable to this group.
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    /// The mathematical statement being tested.
    pub statement: String,
    pub status: Status,
    pub detail: String,
    /// Numeric margin where one applies (cluster margin, or tolerance over
    /// observed error).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margin: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyReport {
    pub suite: Suite,
    pub group: String,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
}

/// Knobs shared by the suites.
#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Random parameter points per check.
    pub samples: usize,
    /// Degree cap for the Dunkl relations.
    pub cap: u32,
    /// Total degree for the Hilbert series.
    pub trunc: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: 0, samples: 3, cap: 4, trunc: 12 }
    }
}

struct Ctx<'a> {
    g: &'a ReflectionGroup,
    table: CharacterTable,
    opts: VerifyOptions,
    checks: Vec<Check>,
}

impl Ctx<'_> {
    fn push(
        &mut self,
        suite: Suite,
        name: &str,
        statement: &str,
        outcome: Result<(bool, String, Option<f64>)>,
    ) -> Result<()> {
        let (status, detail, margin) = match outcome {
            Ok((ok, detail, margin)) => (if ok { Status::Pass } else { Status::Fail }, detail, margin),
            Err(Error::Unsupported(msg)) => (Status::Skipped, msg, None),
            // Ambiguity is not a verdict: stop and let the caller report it.
            Err(e @ Error::NumericAmbiguity(_)) => return Err(e),
            Err(e) => (Status::Fail, e.to_string(), None),
        };
        self.checks.push(Check { suite, name: name.into(), statement: statement.into(), status, detail, margin });
        Ok(())
    }

    /// Seeded parameter points, the first one generic and all nonzero.
    fn points(&self, salt: u64) -> Vec<ParamC> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.opts.seed.wrapping_mul(0x2545_f491_4f6c_dd1d) ^ salt);
        let mut out = Vec::with_capacity(self.opts.samples);
        while out.len() < self.opts.samples {
            let c = ParamC::random(self.g, &mut rng);
            if !c.is_zero() {
                out.push(c);
            }
        }
        out
    }
}

/// Runs `suite` on `g`.
pub fn run_suite(g: &ReflectionGroup, suite: Suite, opts: VerifyOptions) -> Result<VerifyReport> {
    let table = irr_characters(g)?;
    let mut ctx = Ctx { g, table, opts, checks: Vec::new() };
    for part in suite.parts() {
        match part {
            Suite::Dunkl => dunkl_suite(&mut ctx)?,
            Suite::Families => families_suite(&mut ctx)?,
            Suite::Cells => cells_suite(&mut ctx)?,
            Suite::Minpoly => minpoly_suite(&mut ctx)?,
            Suite::Hilbert => hilbert_suite(&mut ctx)?,
            Suite::All => unreachable!("expanded by parts"),
        }
    }
    let passed = ctx.checks.iter().all(|c| c.status != Status::Fail);
    Ok(VerifyReport { suite, group: g.kind.label(), seed: opts.seed, passed, checks: ctx.checks })
}

fn dunkl_suite(ctx: &mut Ctx<'_>) -> Result<()> {
    let cap = ctx.opts.cap;
    for (i, c) in ctx.points(1).into_iter().enumerate() {
        for t in [Cyclotomic::zero(), Cyclotomic::one()] {
            let out = check_bracket(ctx.g, &c, cap, &t)
                .map(|r| (r.passed(), format!("{} identities up to degree {}", r.checked, r.max_degree), None));
            ctx.push(
                Suite::Dunkl,
                &format!("bracket[{i}] t={t}"),
                "Dunkl operators satisfy the defining relations of the Cherednik algebra",
                out,
            )?;
        }
        let out = dunkl_commute(ctx.g, &c, cap, &Cyclotomic::zero()).map(|ok| (ok, String::new(), None));
        ctx.push(Suite::Dunkl, &format!("commute[{i}]"), "Dunkl operators pairwise commute", out)?;
    }
    let c = ctx.points(2).remove(0);
    let out = lowest_weight_killed(ctx.g, &c).map(|ok| (ok, String::new(), None));
    ctx.push(Suite::Dunkl, "lowest-weight", "y kills the lowest weight space of a Verma module", out)
}

fn family_sum_rules(
    g: &ReflectionGroup,
    table: &CharacterTable,
    f: &FamilyPartition,
) -> Result<(bool, String, Option<f64>)> {
    let total: usize = f.blocks.iter().map(|b| b.sum_dim_sq).sum();
    let fakes = fake_degrees(g, table)?;
    let unique_min_b = f.blocks.iter().all(|b| {
        let m = b.chars.iter().map(|&i| fakes.b_invariant(i)).min().expect("nonempty block");
        b.chars.iter().filter(|&&i| fakes.b_invariant(i) == m).count() == 1
    });
    Ok((total == g.order() && unique_min_b, format!("Σχ(1)² = {total}, unique min b: {unique_min_b}"), None))
}

/// Character `ε^j` of a cyclic group lies in the family of the fibre of
/// `K_{-j}`.
fn cyclic_family_oracle(g: &ReflectionGroup, c: &ParamC) -> Vec<Vec<usize>> {
    let k = &kappa(g, c).values[0];
    let d = k.len();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for j in 0..d {
        let kj = &k[(d - j) % d];
        match out.iter_mut().find(|b| k[(d - b[0]) % d] == *kj) {
            Some(b) => b.push(j),
            None => out.push(vec![j]),
        }
    }
    out.sort();
    out
}

/// Element `s^i` of a cyclic group lies in the cell of the fibre of `K_i`.
fn cyclic_cell_oracle(g: &ReflectionGroup, c: &ParamC) -> Vec<Vec<usize>> {
    let k = &kappa(g, c).values[0];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for i in 0..k.len() {
        match out.iter_mut().find(|b| k[b[0]] == k[i]) {
            Some(b) => b.push(i),
            None => out.push(vec![i]),
        }
    }
    out.sort();
    out
}

fn families_suite(ctx: &mut Ctx<'_>) -> Result<()> {
    let mut pts = ctx.points(3);
    pts.push(ParamC::zero(ctx.g));
    for (i, c) in pts.iter().enumerate() {
        let out = (|| {
            for chi in &ctx.table.irr {
                euler_consistency(ctx.g, &ctx.table, chi, c)?;
            }
            Ok((true, format!("{} characters", ctx.table.irr.len()), None))
        })();
        ctx.push(
            Suite::Families,
            &format!("euler[{i}]"),
            "the Euler element acts on each Verma module by the scalar given by the trace and k-formulas",
            out,
        )?;
        let fam = cm_families(ctx.g, &ctx.table, c);
        let out = fam.as_ref().map_err(clone_err).and_then(|f| family_sum_rules(ctx.g, &ctx.table, f));
        ctx.push(
            Suite::Families,
            &format!("sum-rules[{i}]"),
            "families partition Irr(W) with Σχ(1)² = |W| in total and a unique character of minimal b-invariant each",
            out,
        )?;
        if c.is_zero() {
            let out = fam
                .as_ref()
                .map_err(clone_err)
                .map(|f| (f.blocks.len() == 1, format!("{} blocks", f.blocks.len()), None));
            ctx.push(Suite::Families, "zero", "at c = 0 there is a single family", out)?;
        } else if let GroupKind::Cyclic(_) = ctx.g.kind {
            let want = cyclic_family_oracle(ctx.g, c);
            let out = fam.as_ref().map_err(clone_err).map(|f| {
                let mut got: Vec<Vec<usize>> = f.blocks.iter().map(|b| b.chars.clone()).collect();
                got.sort();
                (got == want, format!("{got:?} vs {want:?}"), None)
            });
            ctx.push(Suite::Families, &format!("k-fibres[{i}]"), "rank one: families are the fibres of k", out)?;
        }
    }
    if ctx.g.kind == GroupKind::B2 {
        // Representatives of every regime; cm_families cross-checks each
        // against the expected partition.
        let out = (|| {
            for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1), (1, -1), (1, 2)] {
                let c = b2_params(ctx.g, a, b)?;
                cm_families(ctx.g, &ctx.table, &c)?;
            }
            Ok((true, "6 regimes".to_string(), None))
        })();
        ctx.push(Suite::Families, "b2-regimes", "B2 families in every parameter regime", out)?;
    }
    Ok(())
}

fn clone_err(e: &Error) -> Error {
    match e {
        Error::NumericAmbiguity(m) => Error::NumericAmbiguity(m.clone()),
        Error::Unsupported(m) => Error::Unsupported(m.clone()),
        e => Error::Invariant(e.to_string()),
    }
}

/// `c` with `c_a = a`, `c_b = b` for `B2`.
pub fn b2_params(g: &ReflectionGroup, a: i64, b: i64) -> Result<ParamC> {
    let mut v = vec![Cyclotomic::zero(); 2];
    let ia = g.class_by_name("a").ok_or_else(|| Error::InvalidArgument("not B2".into()))?;
    v[ia] = Cyclotomic::from_int(a);
    v[1 - ia] = Cyclotomic::from_int(b);
    let c = ParamC::new(g, v)?;
    b2_ab(g, &c)?;
    Ok(c)
}

fn cell_sum_rules(
    g: &ReflectionGroup,
    table: &CharacterTable,
    p: &CellPartition,
) -> Result<(bool, String, Option<f64>)> {
    let fakes = fake_degrees(g, table)?;
    let size: usize = p.blocks.iter().map(|b| b.elements.len()).sum();
    let dims = p.blocks.iter().zip(&p.cellular).all(|(b, cc)| cc.dimension(table) == b.elements.len());
    let column = (0..table.irr.len())
        .all(|i| p.cellular.iter().map(|cc| cc.mults[i] as usize).sum::<usize>() == table.degree(i));
    let min_b = p.cellular.iter().all(|cc| {
        let present: Vec<usize> = (0..table.irr.len()).filter(|&i| cc.mults[i] > 0).collect();
        let m = present.iter().map(|&i| fakes.b_invariant(i)).min().unwrap_or(0);
        present.iter().filter(|&&i| fakes.b_invariant(i) == m).count() == 1
    });
    let ok = size == g.order() && dims && column && min_b;
    Ok((ok, format!("Σ|C| = {size}, dims {dims}, Σ_C mult = χ(1) {column}, unique min b {min_b}"), Some(p.margin)))
}

fn cells_suite(ctx: &mut Ctx<'_>) -> Result<()> {
    let seed = ctx.opts.seed;
    let mut pts = ctx.points(4);
    pts.push(ParamC::zero(ctx.g));
    for (i, c) in pts.iter().enumerate() {
        let left = left_cells(ctx.g, &ctx.table, c, seed)?;
        let right = right_cells(ctx.g, &ctx.table, c, seed)?;
        let two = two_sided_candidate(ctx.g, &ctx.table, c, seed);
        let two = match two {
            Err(e @ Error::NumericAmbiguity(_)) => return Err(e),
            other => other,
        };
        for (kind, p) in [("left", Ok(&left)), ("right", Ok(&right)), ("two-sided", two.as_ref().map_err(clone_err))] {
            let out = p.and_then(|p| cell_sum_rules(ctx.g, &ctx.table, p));
            ctx.push(
                Suite::Cells,
                &format!("{kind}[{i}]"),
                "cells partition W; cellular characters have the cell's dimension, sum to the regular character and have a unique constituent of minimal b-invariant",
                out,
            )?;
        }
        if c.is_zero() {
            let ok = left.blocks.len() == 1 && right.blocks.len() == 1;
            ctx.push(
                Suite::Cells,
                "zero",
                "at c = 0, W is a single cell",
                Ok((ok, format!("{} left blocks", left.blocks.len()), None)),
            )?;
        } else if let GroupKind::Cyclic(_) = ctx.g.kind {
            let want = cyclic_cell_oracle(ctx.g, c);
            let got = (left.partition(), right.partition(), two.as_ref().map(CellPartition::partition).ok());
            let ok = got.0 == want && got.1 == want && got.2.as_ref() == Some(&want);
            ctx.push(
                Suite::Cells,
                &format!("k-fibres[{i}]"),
                "rank one: left, right and two-sided cells are the fibres of k",
                Ok((ok, format!("{want:?}"), Some(left.margin))),
            )?;
        }
        let mut stable = true;
        for s in 1..3 {
            stable &= left_cells(ctx.g, &ctx.table, c, seed.wrapping_add(s))?.partition() == left.partition();
        }
        ctx.push(
            Suite::Cells,
            &format!("seeds[{i}]"),
            "cells do not depend on the path seed",
            Ok((stable, String::new(), None)),
        )?;
    }
    if ctx.g.kind == GroupKind::B2 {
        let c = b2_params(ctx.g, 1, 2)?;
        let left = left_cells(ctx.g, &ctx.table, &c, seed)?;
        let ok = left.sizes() == [1, 1, 1, 1, 2, 2];
        ctx.push(
            Suite::Cells,
            "b2-generic",
            "B2 at (a, b) = (1, 2): left cells of sizes 1,1,1,1,2,2",
            Ok((ok, format!("{:?}", left.named(ctx.g)), Some(left.margin))),
        )?;
        let cc = cellular_characters(ctx.g, &ctx.table, &c, seed)?;
        let ok = cc.iter().all(|x| x.mults.iter().sum::<u64>() == 1);
        ctx.push(
            Suite::Cells,
            "b2-cellular",
            "B2 at (a, b) = (1, 2): every cellular character is irreducible",
            Ok((ok, String::new(), None)),
        )?;
    }
    Ok(())
}

fn minpoly_suite(ctx: &mut Ctx<'_>) -> Result<()> {
    if let GroupKind::Dihedral(_) = ctx.g.kind {
        let out = euler_minpoly_check(ctx.g, &ParamC::zero(ctx.g), 0, 0).map(|_| (true, String::new(), None));
        return ctx.push(
            Suite::Minpoly,
            "euler",
            "the characteristic polynomial of the Euler operator matches its closed form",
            out,
        );
    }
    let mut pts = ctx.points(5);
    pts.push(ParamC::zero(ctx.g));
    for (i, c) in pts.iter().enumerate() {
        let out = euler_minpoly_check(ctx.g, c, 20, ctx.opts.seed).map(|r| {
            let margin = if r.max_rel_error > 0.0 {
                crate::gaudin::minpoly::MINPOLY_TOL / r.max_rel_error
            } else {
                f64::INFINITY
            };
            (
                r.passed,
                format!("max relative error {:.3e} at degree {}", r.max_rel_error, r.worst_coefficient),
                Some(margin),
            )
        });
        ctx.push(
            Suite::Minpoly,
            &format!("euler[{i}]"),
            "the characteristic polynomial of the Euler operator matches its closed form",
            out,
        )?;
    }
    Ok(())
}

fn hilbert_suite(ctx: &mut Ctx<'_>) -> Result<()> {
    let trunc = ctx.opts.trunc;
    let out = center_hilbert_identity(ctx.g, trunc).map(|(a, b)| match a.first_difference(&b) {
        None => (true, format!("equal to total degree {trunc}"), None),
        Some((i, j)) => (false, format!("first difference at (t^{i}, u^{j})"), None),
    });
    ctx.push(
        Suite::Hilbert,
        "molien-vs-fake",
        "the Molien and fake-degree forms of the bigraded Hilbert series of the invariants agree",
        out,
    )?;
    if let GroupKind::Cyclic(d) = ctx.g.kind {
        let out = center_hilbert_identity(ctx.g, trunc).map(|(a, _)| {
            let b = rank_one_center_series(d, trunc);
            (a.first_difference(&b).is_none(), String::new(), None)
        });
        ctx.push(Suite::Hilbert, "rank-one", "rank one: the series equals Σ_{k<d}(tu)^k / ((1 − t^d)(1 − u^d))", out)?;
    }
    Ok(())
}
