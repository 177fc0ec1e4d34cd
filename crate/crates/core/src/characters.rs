//! Conjugacy classes, irreducible characters, fake degrees, `b`-invariants
//! and the bigraded Hilbert series of the diagonal invariants.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::groups::{GroupKind, ReflectionGroup};
use crate::linalg_exact;
use crate::poly::UniPoly;
use crate::series::{self, GradedSeries};

/// A conjugacy class: representative, members and size.
#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    pub rep: usize,
    pub elements: Vec<usize>,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.elements.len()
    }
}

/// Partition of the element list by conjugacy, ordered by first element.
pub fn conjugacy_classes(g: &ReflectionGroup) -> Vec<ConjugacyClass> {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for w in 0..n {
        if seen[w] {
            continue;
        }
        let mut members: Vec<usize> = (0..n).map(|x| g.mul(g.mul(x, w), g.inv(x))).collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            seen[m] = true;
        }
        out.push(ConjugacyClass { rep: w, elements: members });
    }
    out
}

/// A class function with exact values indexed by conjugacy class.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassFunction {
    pub name: String,
    pub values: Vec<Cyclotomic>,
}

/// Classes plus the complete list of irreducible characters.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub classes: Vec<ConjugacyClass>,
    pub class_of: Vec<usize>,
    pub irr: Vec<ClassFunction>,
    order: usize,
}

impl CharacterTable {
    pub fn value(&self, chi: &ClassFunction, w: usize) -> Cyclotomic {
        chi.values[self.class_of[w]].clone()
    }

    /// `χ(1)` as an integer.
    pub fn degree(&self, i: usize) -> usize {
        let v = self.irr[i].values[self.class_of[0]].to_rational().expect("rational degree");
        v.numer().try_into().expect("small degree")
    }

    /// `⟨a, b⟩ = |W|^{-1} Σ_w a(w) conj(b(w))`.
    pub fn inner(&self, a: &ClassFunction, b: &ClassFunction) -> Cyclotomic {
        let mut acc = Cyclotomic::zero();
        for (k, cl) in self.classes.iter().enumerate() {
            let t = &a.values[k] * &b.values[k].conj();
            acc += &(&t * &Cyclotomic::from_int(cl.size() as i64));
        }
        &acc / &Cyclotomic::from_int(self.order as i64)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.irr.iter().position(|c| c.name == name)
    }

    pub fn names(&self) -> Vec<String> {
        self.irr.iter().map(|c| c.name.clone()).collect()
    }

    /// Multiplicities of the irreducibles in a class function.
    pub fn decompose(&self, f: &ClassFunction) -> Vec<Cyclotomic> {
        self.irr.iter().map(|chi| self.inner(f, chi)).collect()
    }

    /// Build a class function from values on every element.
    pub fn class_function(&self, name: &str, per_element: &[Cyclotomic]) -> ClassFunction {
        ClassFunction {
            name: name.to_string(),
            values: self.classes.iter().map(|c| per_element[c.rep].clone()).collect(),
        }
    }

    /// The character of the regular representation, `Σ χ(1) χ`.
    pub fn regular(&self) -> ClassFunction {
        let values = self
            .classes
            .iter()
            .map(|c| if c.rep == 0 { Cyclotomic::from_int(self.order as i64) } else { Cyclotomic::zero() })
            .collect();
        ClassFunction { name: "reg".into(), values }
    }
}

/// Closed-form irreducible characters of the built-in groups.
pub fn irr_characters(g: &ReflectionGroup) -> Result<CharacterTable> {
    let classes = conjugacy_classes(g);
    let mut class_of = vec![0; g.order()];
    for (k, c) in classes.iter().enumerate() {
        for &w in &c.elements {
            class_of[w] = k;
        }
    }
    let per_class = |f: &dyn Fn(usize) -> Cyclotomic| -> Vec<Cyclotomic> { classes.iter().map(|c| f(c.rep)).collect() };
    let mut irr = Vec::new();
    match g.kind {
        GroupKind::Cyclic(d) => {
            // Element index p is s^p.
            for i in 0..d {
                let name = match i {
                    0 => "1".to_string(),
                    1 => "eps".to_string(),
                    _ => format!("eps^{i}"),
                };
                irr.push(ClassFunction {
                    name,
                    values: per_class(&|w| Cyclotomic::zeta_pow(d, (i as i64) * (w as i64))),
                });
            }
        }
        GroupKind::B2 | GroupKind::Dihedral(_) => {
            let m = match g.kind {
                GroupKind::Dihedral(m) => m,
                _ => 4,
            };
            let rho = g.element_by_name("st").ok_or_else(|| Error::Invariant("missing rotation st".into()))?;
            let mut rot_index = vec![None; g.order()];
            let mut cur = 0;
            for k in 0..m {
                rot_index[cur] = Some(k as i64);
                cur = g.mul(cur, rho);
            }
            let s_class = g.reflection_of(g.generators[0]).map(|r| r.class);
            let is_s_class = |w: usize| g.reflection_of(w).map(|r| Some(r.class) == s_class).unwrap_or(false);
            let sign = |b: bool| Cyclotomic::from_int(if b { -1 } else { 1 });
            irr.push(ClassFunction { name: "1".into(), values: per_class(&|_| Cyclotomic::one()) });
            let b2 = g.kind == GroupKind::B2;
            let lin: Vec<(&str, Box<dyn Fn(usize) -> Cyclotomic>)> = if m % 2 == 0 {
                vec![
                    (
                        "eps_s",
                        Box::new(|w| match rot_index[w] {
                            Some(k) => sign(k % 2 == 1),
                            None => sign(is_s_class(w)),
                        }),
                    ),
                    (
                        "eps_t",
                        Box::new(|w| match rot_index[w] {
                            Some(k) => sign(k % 2 == 1),
                            None => sign(!is_s_class(w)),
                        }),
                    ),
                    ("eps", Box::new(|w| g.det[w].clone())),
                ]
            } else {
                vec![("eps", Box::new(|w| g.det[w].clone()))]
            };
            for (name, f) in lin {
                irr.push(ClassFunction { name: name.into(), values: per_class(&*f) });
            }
            for j in 1..=((m - 1) / 2) {
                let name = if b2 { "chi".to_string() } else { format!("chi{j}") };
                let vals = per_class(&|w| match rot_index[w] {
                    Some(k) => (&Cyclotomic::zeta_pow(m, j as i64 * k) + &Cyclotomic::zeta_pow(m, -(j as i64) * k))
                        .simplified(),
                    None => Cyclotomic::zero(),
                });
                irr.push(ClassFunction { name, values: vals });
            }
        }
    }
    let table = CharacterTable { classes, class_of, irr, order: g.order() };
    if table.irr.len() != table.classes.len() {
        return Err(Error::Invariant("character count differs from class count".into()));
    }
    Ok(table)
}

/// Per-class Molien data `1 / det_V(1 − t w)` up to `t^trunc`.
struct Molien {
    per_class: Vec<Vec<Cyclotomic>>,
    sizes: Vec<i64>,
    order: i64,
}

impl Molien {
    fn new(g: &ReflectionGroup, classes: &[ConjugacyClass], trunc: usize) -> Self {
        let per_class = classes
            .iter()
            .map(|c| series::invert_series(&linalg_exact::det_one_minus_t(&g.elements[c.rep]), trunc))
            .collect();
        Molien { per_class, sizes: classes.iter().map(|c| c.size() as i64).collect(), order: g.order() as i64 }
    }

    /// `|W|^{-1} Σ_w weight(w) / det(1 − t w)` with `weight` given per class.
    fn average(&self, weight: &[Cyclotomic]) -> Result<Vec<BigRational>> {
        let n = self.per_class[0].len();
        let mut acc = vec![Cyclotomic::zero(); n];
        for (k, ser) in self.per_class.iter().enumerate() {
            if weight[k].is_zero() {
                continue;
            }
            let wk = &weight[k] * &Cyclotomic::from_int(self.sizes[k]);
            for (a, s) in acc.iter_mut().zip(ser) {
                *a += &(&wk * s);
            }
        }
        let inv = Cyclotomic::from_frac(1, self.order);
        let acc: Vec<Cyclotomic> = acc.iter().map(|a| a * &inv).collect();
        series::to_rationals(&acc)
    }
}

/// Degrees of the basic invariants from the Molien series.
pub fn degrees(g: &ReflectionGroup) -> Result<Vec<u32>> {
    let classes = conjugacy_classes(g);
    let trunc = g.order() + 1;
    let molien = Molien::new(g, &classes, trunc);
    let ones = vec![Cyclotomic::one(); classes.len()];
    let mut h = molien.average(&ones)?;
    // Peel off factors 1/(1 − t^d) at the lowest non-trivial coefficient.
    let mut degs = Vec::new();
    while let Some(d) = (1..h.len()).find(|&k| !h[k].is_zero()) {
        if degs.len() >= g.dim || h[d].is_negative() {
            break;
        }
        for k in (d..h.len()).rev() {
            let prev = h[k - d].clone();
            h[k] -= &prev;
        }
        degs.push(d as u32);
    }
    let prod: u64 = degs.iter().map(|&d| d as u64).product();
    let refl: u64 = degs.iter().map(|&d| d as u64 - 1).sum();
    let clean = h.iter().skip(1).all(Zero::is_zero);
    if degs.len() != g.dim || !clean || prod != g.order() as u64 || refl != g.reflections.len() as u64 {
        return Err(Error::Invariant("Molien series does not factor as a product of 1/(1 - t^d)".into()));
    }
    degs.sort_unstable();
    Ok(degs)
}

/// Fake degrees and `b`-invariants of every irreducible character.
#[derive(Clone, Debug)]
pub struct FakeDegrees {
    pub polys: Vec<UniPoly<BigRational>>,
}

impl FakeDegrees {
    /// `t`-valuation of `f_χ`.
    pub fn b_invariant(&self, i: usize) -> u32 {
        self.polys[i].valuation().expect("nonzero fake degree") as u32
    }
}

/// Graded multiplicity of `chi` in the coinvariant algebra of `k[V*]`,
/// i.e. `∏(1 − t^{d_i}) · |W|^{-1} Σ_w χ(w^{-1}) / det_V(1 − t w)`.
pub fn fake_degree(g: &ReflectionGroup, table: &CharacterTable, chi: &ClassFunction) -> Result<UniPoly<BigRational>> {
    let degs = degrees(g)?;
    let top: usize = degs.iter().map(|&d| d as usize - 1).sum();
    let molien = Molien::new(g, &table.classes, top + 1);
    fake_degree_with(&molien, &degs, chi)
}

fn fake_degree_with(molien: &Molien, degs: &[u32], chi: &ClassFunction) -> Result<UniPoly<BigRational>> {
    let weight: Vec<Cyclotomic> = chi.values.iter().map(Cyclotomic::conj).collect();
    let avg = molien.average(&weight)?;
    let mut p = UniPoly::new(avg);
    for &d in degs {
        p = &p * &UniPoly::new(series::one_minus_t_pow(d));
    }
    let n = molien.per_class[0].len();
    Ok(UniPoly::new((0..n - 1).map(|k| p.coeff(k)).collect()))
}

pub fn fake_degrees(g: &ReflectionGroup, table: &CharacterTable) -> Result<FakeDegrees> {
    let degs = degrees(g)?;
    let top: usize = degs.iter().map(|&d| d as usize - 1).sum();
    let molien = Molien::new(g, &table.classes, top + 1);
    let polys = table.irr.iter().map(|chi| fake_degree_with(&molien, &degs, chi)).collect::<Result<Vec<_>>>()?;
    for (p, chi) in polys.iter().zip(&table.irr) {
        let ok = p.coeffs().iter().all(|c| c.is_integer() && !c.is_negative());
        if !ok {
            return Err(Error::Invariant(format!("fake degree of {} is not in N[t]", chi.name)));
        }
    }
    Ok(FakeDegrees { polys })
}

/// `b`-invariant of an irreducible character given as a class function.
pub fn b_invariant(g: &ReflectionGroup, table: &CharacterTable, chi: &ClassFunction) -> Result<u32> {
    if !table.inner(chi, chi).is_one() {
        return Err(Error::InvalidArgument(format!("{} is not irreducible", chi.name)));
    }
    let f = fake_degree(g, table, chi)?;
    f.valuation().map(|v| v as u32).ok_or_else(|| Error::InvalidArgument(format!("{} is not a character", chi.name)))
}

/// The two expressions for the bigraded Hilbert series of `k[V × V*]^W`:
/// the Molien average and the fake-degree form.
pub fn center_hilbert_identity(g: &ReflectionGroup, trunc: usize) -> Result<(GradedSeries, GradedSeries)> {
    if trunc > 24 {
        return Err(Error::InvalidArgument("truncation must be at most 24".into()));
    }
    let table = irr_characters(g)?;
    let molien_t = Molien::new(g, &table.classes, trunc);
    // Molien form: |W|^{-1} Σ_w 1/(det(1 − w t) det(1 − w^{-1} u)), summed per class.
    let mut acc = vec![vec![Cyclotomic::zero(); trunc + 1]; trunc + 1];
    for (k, cl) in table.classes.iter().enumerate() {
        let a = &molien_t.per_class[k];
        let b = &molien_t.per_class[table.class_of[g.inv(cl.rep)]];
        let size = Cyclotomic::from_int(cl.size() as i64);
        for i in 0..=trunc {
            let ai = &a[i] * &size;
            for j in 0..=trunc - i {
                acc[i][j] += &(&ai * &b[j]);
            }
        }
    }
    let mut molien = GradedSeries::zero(trunc);
    let inv_order = Cyclotomic::from_frac(1, g.order() as i64);
    for i in 0..=trunc {
        for j in 0..=trunc - i {
            let v = (&acc[i][j] * &inv_order)
                .to_rational()
                .ok_or_else(|| Error::Invariant("Molien coefficient is not rational".into()))?;
            molien.set(i, j, v);
        }
    }

    let degs = degrees(g)?;
    let fakes = fake_degrees(g, &table)?;
    let mut numer = GradedSeries::zero(trunc);
    for p in &fakes.polys {
        let c: Vec<BigRational> = p.coeffs().to_vec();
        numer.add_assign(&GradedSeries::outer(&c, &c, trunc));
    }
    let inv = series::inverse_degree_product(&degs, trunc);
    let fake_form = numer.mul_univariate(&inv, false).mul_univariate(&inv, true);
    Ok((molien, fake_form))
}

/// Rank-one closed form `(Σ_{k<d} (tu)^k) / ((1 − t^d)(1 − u^d))`.
pub fn rank_one_center_series(d: u32, trunc: usize) -> GradedSeries {
    let mut num = GradedSeries::zero(trunc);
    for k in 0..(d as usize) {
        if 2 * k <= trunc {
            num.set(k, k, BigRational::one());
        }
    }
    let inv = series::inverse_degree_product(&[d], trunc);
    num.mul_univariate(&inv, false).mul_univariate(&inv, true)
}
