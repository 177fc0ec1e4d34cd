//! Calogero-Moser families: partitions of `Irr(W)` by central characters.
//!
//! The Euler element gives a coarsening for every group. For cyclic groups
//! the Euler values already separate the families, and for `B2` the second
//! generator `δ` of the centre is added, so both are reported as exact.

use serde::Serialize;

use crate::characters::{fake_degrees, CharacterTable};
use crate::cyclotomic::Cyclotomic;
use crate::dunkl::{c_from_trace, c_linear_form};
use crate::error::{Error, Result};
use crate::groups::{GroupKind, ReflectionGroup};
use crate::params::ParamC;

/// One block of a family partition with its diagnostics.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyBlock {
    /// Indices into the character table, increasing.
    pub chars: Vec<usize>,
    pub euler_value: Cyclotomic,
    pub sum_dim_sq: usize,
    /// The unique character of minimal b-invariant.
    pub min_b: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyPartition {
    pub blocks: Vec<FamilyBlock>,
    /// `false` when only the Euler coarsening is known.
    pub exact: bool,
}

impl FamilyPartition {
    /// Index of the block containing character `chi`.
    pub fn block_of(&self, chi: usize) -> usize {
        self.blocks.iter().position(|b| b.chars.contains(&chi)).expect("families cover Irr(W)")
    }

    /// Blocks as sorted lists of character names, sorted.
    pub fn named(&self, table: &CharacterTable) -> Vec<Vec<String>> {
        let mut v: Vec<Vec<String>> = self
            .blocks
            .iter()
            .map(|b| {
                let mut n: Vec<String> = b.chars.iter().map(|&i| table.irr[i].name.clone()).collect();
                n.sort();
                n
            })
            .collect();
        v.sort();
        v
    }

    /// Whether every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &FamilyPartition) -> bool {
        self.blocks.iter().all(|b| {
            let k = coarser.block_of(b.chars[0]);
            b.chars.iter().all(|&c| coarser.block_of(c) == k)
        })
    }

    pub fn report(&self, table: &CharacterTable) -> FamilyReport {
        FamilyReport {
            blocks: self
                .blocks
                .iter()
                .map(|b| FamilyBlockReport {
                    chars: b.chars.iter().map(|&i| table.irr[i].name.clone()).collect(),
                    euler_value: b.euler_value.to_string(),
                    sum_dim_sq: b.sum_dim_sq,
                    min_b: table.irr[b.min_b].name.clone(),
                })
                .collect(),
            exact: self.exact,
        }
    }
}

/// Serialisable view with character names and exact literals.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport {
    pub blocks: Vec<FamilyBlockReport>,
    pub exact: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FamilyBlockReport {
    pub chars: Vec<String>,
    pub euler_value: String,
    pub sum_dim_sq: usize,
    pub min_b: String,
}

/// Groups indices by equality of a key, keeping first-occurrence order.
fn fibers<K: PartialEq>(keys: &[K]) -> Vec<Vec<usize>> {
    let mut out: Vec<(usize, Vec<usize>)> = Vec::new();
    for (i, k) in keys.iter().enumerate() {
        match out.iter_mut().find(|(rep, _)| keys[*rep] == *k) {
            Some((_, v)) => v.push(i),
            None => out.push((i, vec![i])),
        }
    }
    out.into_iter().map(|(_, v)| v).collect()
}

fn build(
    g: &ReflectionGroup,
    table: &CharacterTable,
    c: &ParamC,
    blocks: Vec<Vec<usize>>,
    exact: bool,
) -> Result<FamilyPartition> {
    let fake = fake_degrees(g, table)?;
    let blocks = blocks
        .into_iter()
        .map(|chars| {
            let b: Vec<u32> = chars.iter().map(|&i| fake.b_invariant(i)).collect();
            let lo = *b.iter().min().expect("nonempty block");
            let at_min: Vec<usize> = chars.iter().zip(&b).filter(|(_, &x)| x == lo).map(|(&i, _)| i).collect();
            if at_min.len() != 1 {
                return Err(Error::Invariant(format!(
                    "family {:?} has {} characters of minimal b-invariant",
                    chars.iter().map(|&i| table.irr[i].name.as_str()).collect::<Vec<_>>(),
                    at_min.len()
                )));
            }
            Ok(FamilyBlock {
                euler_value: c_from_trace(g, table, &table.irr[chars[0]], c),
                sum_dim_sq: chars.iter().map(|&i| table.degree(i).pow(2)).sum(),
                min_b: at_min[0],
                chars,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FamilyPartition { blocks, exact })
}

/// Fibers of `E ↦ C_E(c)`, compared exactly.
pub fn euler_partition(g: &ReflectionGroup, table: &CharacterTable, c: &ParamC) -> Result<FamilyPartition> {
    let values: Vec<Cyclotomic> = table.irr.iter().map(|chi| c_from_trace(g, table, chi, c)).collect();
    build(g, table, c, fibers(&values), false)
}

/// The family partition, exact for cyclic groups and `B2` and the Euler
/// coarsening otherwise.
pub fn cm_families(g: &ReflectionGroup, table: &CharacterTable, c: &ParamC) -> Result<FamilyPartition> {
    match g.kind {
        GroupKind::Cyclic(_) => {
            let mut p = euler_partition(g, table, c)?;
            p.exact = true;
            Ok(p)
        }
        GroupKind::B2 => b2_families(g, table, c),
        GroupKind::Dihedral(_) => euler_partition(g, table, c),
    }
}

/// `(A, B)` for `B2`: the parameters of the classes of `s` and `t`.
pub fn b2_ab(g: &ReflectionGroup, c: &ParamC) -> Result<(Cyclotomic, Cyclotomic)> {
    let class = |name: &str| {
        g.element_by_name(name)
            .and_then(|w| g.reflection_of(w))
            .map(|r| r.class)
            .ok_or_else(|| Error::Invariant(format!("no reflection {name}")))
    };
    Ok((c.values[class("s")?].clone(), c.values[class("t")?].clone()))
}

/// `Ω_χ(δ)` on the `B2` character named `name`.
fn b2_delta(name: &str, a: &Cyclotomic, b: &Cyclotomic) -> Result<Cyclotomic> {
    let two_b = b * &Cyclotomic::from_int(2);
    Ok(match name {
        "1" | "eps" => &two_b * &(b + a),
        "eps_s" | "eps_t" => &two_b * &(b - a),
        "chi" => Cyclotomic::zero(),
        _ => return Err(Error::Invariant(format!("unexpected B2 character {name}"))),
    })
}

/// The families expected in each parameter regime of `B2`.
fn b2_regime(a: &Cyclotomic, b: &Cyclotomic) -> Vec<Vec<&'static str>> {
    let all = vec!["1", "eps_s", "eps_t", "eps", "chi"];
    if a.is_zero() && b.is_zero() {
        return vec![all];
    }
    if a.is_zero() {
        return vec![vec!["1", "eps_s"], vec!["eps_t", "eps"], vec!["chi"]];
    }
    if b.is_zero() {
        return vec![vec!["1", "eps_t"], vec!["eps_s", "eps"], vec!["chi"]];
    }
    if a == b {
        return vec![vec!["1"], vec!["eps"], vec!["eps_s", "eps_t", "chi"]];
    }
    if *a == -b {
        return vec![vec!["eps_s"], vec!["eps_t"], vec!["1", "eps", "chi"]];
    }
    all.into_iter().map(|x| vec![x]).collect()
}

fn b2_families(g: &ReflectionGroup, table: &CharacterTable, c: &ParamC) -> Result<FamilyPartition> {
    let (a, b) = b2_ab(g, c)?;
    let mut keys = Vec::with_capacity(table.irr.len());
    for chi in &table.irr {
        // eu′ and eu″ vanish on every character, so (eu, δ) carries the data.
        keys.push((c_from_trace(g, table, chi, c), b2_delta(&chi.name, &a, &b)?));
    }
    let p = build(g, table, c, fibers(&keys), true)?;
    let mut expect: Vec<Vec<String>> = b2_regime(&a, &b)
        .into_iter()
        .map(|blk| {
            let mut v: Vec<String> = blk.into_iter().map(String::from).collect();
            v.sort();
            v
        })
        .collect();
    expect.sort();
    if p.named(table) != expect {
        return Err(Error::Invariant(format!(
            "B2 central characters give {:?} but the regime of (a, b) = ({a}, {b}) requires {:?}",
            p.named(table),
            expect
        )));
    }
    Ok(p)
}

/// A pair of characters whose Euler values differ, with `C_E − C_F` as a
/// linear form in the class parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct EssentialHyperplane {
    pub first: usize,
    pub second: usize,
    pub form: Vec<Cyclotomic>,
}

impl EssentialHyperplane {
    pub fn eval(&self, c: &ParamC) -> Cyclotomic {
        self.form.iter().zip(&c.values).fold(Cyclotomic::zero(), |acc, (f, x)| &acc + &(f * x))
    }
}

/// All unordered pairs `{E, F}` with `C_E − C_F` not identically zero.
pub fn essential_hyperplanes(g: &ReflectionGroup, table: &CharacterTable) -> Vec<EssentialHyperplane> {
    let forms: Vec<Vec<Cyclotomic>> = table.irr.iter().map(|chi| c_linear_form(g, table, chi)).collect();
    let mut out = Vec::new();
    for i in 0..forms.len() {
        for j in i + 1..forms.len() {
            let form: Vec<Cyclotomic> = forms[i].iter().zip(&forms[j]).map(|(x, y)| x - y).collect();
            if form.iter().any(|x| !x.is_zero()) {
                out.push(EssentialHyperplane { first: i, second: j, form });
            }
        }
    }
    out
}
