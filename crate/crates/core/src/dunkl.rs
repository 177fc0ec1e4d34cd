//! Dunkl-type operators on truncated Verma modules `k[V] ⊗ E`, exact checks of
//! the defining relations, and the Euler element on the lowest weight space.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::characters::{CharacterTable, ClassFunction};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::groups::{pair, ReflectionGroup};
use crate::mpoly::{monomials_up_to, Exponent, MPoly};
use crate::params::{kappa_inverse, ParamC, ParamK};
use crate::reps::{self, Representation};

/// A vector of a Verma slice: coefficients keyed by (monomial, basis index of `E`).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct VermaVector {
    pub terms: BTreeMap<(usize, usize), Cyclotomic>,
}

impl VermaVector {
    pub fn basis(mono: usize, i: usize) -> Self {
        let mut v = VermaVector::default();
        v.terms.insert((mono, i), Cyclotomic::one());
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&mut self, key: (usize, usize), c: Cyclotomic) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key).or_insert_with(Cyclotomic::zero);
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, o: &VermaVector, k: &Cyclotomic) {
        for (key, c) in &o.terms {
            self.add(*key, c * k);
        }
    }

    pub fn sub(&self, o: &VermaVector) -> VermaVector {
        let mut out = self.clone();
        out.add_scaled(o, &-Cyclotomic::one());
        out
    }
}

/// `k[V]_{≤N} ⊗ E` with the Dunkl action at parameter `(t, c)`.
pub struct VermaSlice<'a> {
    g: &'a ReflectionGroup,
    c: ParamC,
    t: Cyclotomic,
    module: Representation,
    cap: u32,
    monomials: Vec<Exponent>,
    index: HashMap<Exponent, usize>,
    /// `(s(m) − m)/α_s` for every reflection and every monomial.
    quotients: Vec<Vec<MPoly>>,
    /// `w(m)` for every element and monomial.
    images: Vec<Vec<MPoly>>,
}

impl<'a> VermaSlice<'a> {
    pub fn new(g: &'a ReflectionGroup, c: &ParamC, t: Cyclotomic, module: Representation, cap: u32) -> Result<Self> {
        if c.values.len() != g.n_classes_ref() {
            return Err(Error::InvalidArgument("c has the wrong number of classes".into()));
        }
        let monomials = monomials_up_to(g.dim, cap + 1);
        let index: HashMap<Exponent, usize> = monomials.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        // w(x_i) = row i of W^{-1}.
        let images: Vec<Vec<MPoly>> = (0..g.order())
            .map(|w| {
                let winv = &g.elements[g.inv(w)];
                let forms: Vec<MPoly> = winv.iter().map(|row| MPoly::linear(row)).collect();
                monomials.iter().map(|e| MPoly::monomial(e.clone(), Cyclotomic::one()).substitute(&forms)).collect()
            })
            .collect();
        let quotients = g
            .reflections
            .iter()
            .map(|r| {
                monomials
                    .iter()
                    .enumerate()
                    .map(|(i, e)| {
                        let mut diff = images[r.element][i].clone();
                        diff.add_term(e.clone(), -Cyclotomic::one());
                        diff.div_linear(&r.root)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(VermaSlice { g, c: c.clone(), t, module, cap, monomials, index, quotients, images })
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn module_dim(&self) -> usize {
        self.module.dim
    }

    pub fn degree_of(&self, mono: usize) -> u32 {
        self.monomials[mono].iter().sum()
    }

    /// Basis vectors `m ⊗ e_i` with `deg m ≤ d`.
    pub fn basis_up_to(&self, d: u32) -> Vec<VermaVector> {
        let mut out = Vec::new();
        for (mi, e) in self.monomials.iter().enumerate() {
            if e.iter().sum::<u32>() <= d {
                for i in 0..self.module.dim {
                    out.push(VermaVector::basis(mi, i));
                }
            }
        }
        out
    }

    fn push_poly(&self, out: &mut VermaVector, p: &MPoly, k: &Cyclotomic, vec_e: &[(usize, Cyclotomic)]) -> Result<()> {
        for (e, c) in &p.terms {
            let mi = *self.index.get(e).ok_or_else(|| Error::InvalidArgument("degree above the slice cap".into()))?;
            let ck = c * k;
            for (j, x) in vec_e {
                out.add((mi, *j), &ck * x);
            }
        }
        Ok(())
    }

    fn rho_column(&self, w: usize, i: usize) -> Vec<(usize, Cyclotomic)> {
        let m = &self.module.matrices[w];
        (0..self.module.dim).filter(|&j| !m[j][i].is_zero()).map(|j| (j, m[j][i].clone())).collect()
    }

    /// `y · v` for `y ∈ V`:
    /// `y(f ⊗ e) = t ∂_y f ⊗ e − Σ_s ε(s) c_s ⟨y, α_s⟩ (s(f) − f)/α_s ⊗ s(e)`.
    pub fn dunkl_act(&self, y: &[Cyclotomic], v: &VermaVector) -> Result<VermaVector> {
        let mut out = VermaVector::default();
        for (&(mi, i), coef) in &v.terms {
            let e = &self.monomials[mi];
            if !self.t.is_zero() {
                for (k, yk) in y.iter().enumerate() {
                    if e[k] == 0 || yk.is_zero() {
                        continue;
                    }
                    let mut d = e.clone();
                    d[k] -= 1;
                    let f = &(&(&self.t * yk) * &Cyclotomic::from_int(e[k] as i64)) * coef;
                    out.add((self.index[&d], i), f);
                }
            }
            for (ri, r) in self.g.reflections.iter().enumerate() {
                let w = &(&r.eps * self.c.of(self.g, ri)) * &pair(y, &r.root);
                if w.is_zero() {
                    continue;
                }
                let k = -&(&w * coef);
                self.push_poly(&mut out, &self.quotients[ri][mi], &k, &self.rho_column(r.element, i))?;
            }
        }
        Ok(out)
    }

    /// Multiplication by the linear function `x ∈ V*`.
    pub fn mul_x(&self, x: &[Cyclotomic], v: &VermaVector) -> Result<VermaVector> {
        let mut out = VermaVector::default();
        for (&(mi, i), coef) in &v.terms {
            for (k, xk) in x.iter().enumerate() {
                if xk.is_zero() {
                    continue;
                }
                let mut e = self.monomials[mi].clone();
                e[k] += 1;
                let idx =
                    *self.index.get(&e).ok_or_else(|| Error::InvalidArgument("degree above the slice cap".into()))?;
                out.add((idx, i), xk * coef);
            }
        }
        Ok(out)
    }

    /// `w · (f ⊗ e) = w(f) ⊗ w(e)`.
    pub fn act_group(&self, w: usize, v: &VermaVector) -> Result<VermaVector> {
        let mut out = VermaVector::default();
        for (&(mi, i), coef) in &v.terms {
            self.push_poly(&mut out, &self.images[w][mi], coef, &self.rho_column(w, i))?;
        }
        Ok(out)
    }
}

/// Outcome of [`check_bracket`].
#[derive(Clone, Debug, Serialize)]
pub struct BracketReport {
    pub group: String,
    pub c: Vec<String>,
    pub t: String,
    #[serde(rename = "N")]
    pub cap: u32,
    pub status: String,
    /// Number of identities evaluated on basis vectors.
    pub checked: usize,
    #[serde(rename = "maxDegree")]
    pub max_degree: u32,
    pub witnesses: Vec<String>,
}

impl BracketReport {
    pub fn passed(&self) -> bool {
        self.witnesses.is_empty()
    }
}

fn unit(n: usize, i: usize) -> Vec<Cyclotomic> {
    (0..n).map(|k| if k == i { Cyclotomic::one() } else { Cyclotomic::zero() }).collect()
}

enum Task {
    YX(usize, usize),
    YY(usize, usize),
    XX(usize, usize),
    Equivariance(usize, usize),
}

/// Verifies on `k[V]_{≤N} ⊗ kW`, exactly:
/// `[y, x] = t⟨y, x⟩ + Σ_s (ε(s) − 1) c_s ⟨y, α_s⟩⟨α_s^∨, x⟩/⟨α_s^∨, α_s⟩ s`,
/// `[x, x′] = [y, y′] = 0` and `w D_y w^{-1} = D_{w(y)}` for the generators.
pub fn check_bracket(g: &ReflectionGroup, c: &ParamC, cap: u32, t: &Cyclotomic) -> Result<BracketReport> {
    if cap < 2 {
        return Err(Error::InvalidArgument(format!("degree cap must be at least 2, got {cap}")));
    }
    let slice = VermaSlice::new(g, c, t.clone(), Representation::regular(g), cap)?;
    let n = g.dim;
    let mut tasks = Vec::new();
    for i in 0..n {
        for j in 0..n {
            tasks.push(Task::YX(i, j));
            if i < j {
                tasks.push(Task::YY(i, j));
                tasks.push(Task::XX(i, j));
            }
        }
        for &w in &g.generators {
            tasks.push(Task::Equivariance(w, i));
        }
    }
    let results: Vec<Result<(usize, Vec<String>)>> = tasks
        .par_iter()
        .map(|task| {
            let mut witnesses = Vec::new();
            let mut checked = 0;
            match *task {
                Task::YX(i, j) => {
                    let y = unit(n, i);
                    let x = unit(n, j);
                    for b in slice.basis_up_to(cap - 1) {
                        let lhs = slice
                            .dunkl_act(&y, &slice.mul_x(&x, &b)?)?
                            .sub(&slice.mul_x(&x, &slice.dunkl_act(&y, &b)?)?);
                        let mut rhs = VermaVector::default();
                        rhs.add_scaled(&b, &(t * &pair(&y, &x)));
                        for (ri, r) in g.reflections.iter().enumerate() {
                            let k = &(&(&r.eps - &Cyclotomic::one()) * c.of(g, ri))
                                * &(&(&pair(&y, &r.root) * &pair(&r.coroot, &x)) / &r.pairing());
                            if !k.is_zero() {
                                rhs.add_scaled(&slice.act_group(r.element, &b)?, &k);
                            }
                        }
                        checked += 1;
                        if lhs != rhs {
                            witnesses.push(format!("[y{i}, x{j}] fails on {}", describe(&slice, &b)));
                        }
                    }
                }
                Task::YY(i, j) => {
                    let (a, bb) = (unit(n, i), unit(n, j));
                    for b in slice.basis_up_to(cap) {
                        let lhs = slice.dunkl_act(&a, &slice.dunkl_act(&bb, &b)?)?;
                        let rhs = slice.dunkl_act(&bb, &slice.dunkl_act(&a, &b)?)?;
                        checked += 1;
                        if lhs != rhs {
                            witnesses.push(format!("[y{i}, y{j}] fails on {}", describe(&slice, &b)));
                        }
                    }
                }
                Task::XX(i, j) => {
                    let (a, bb) = (unit(n, i), unit(n, j));
                    for b in slice.basis_up_to(cap - 2) {
                        let lhs = slice.mul_x(&a, &slice.mul_x(&bb, &b)?)?;
                        let rhs = slice.mul_x(&bb, &slice.mul_x(&a, &b)?)?;
                        checked += 1;
                        if lhs != rhs {
                            witnesses.push(format!("[x{i}, x{j}] fails on {}", describe(&slice, &b)));
                        }
                    }
                }
                Task::Equivariance(w, i) => {
                    let y = unit(n, i);
                    let wy = g.act_vector(w, &y);
                    for b in slice.basis_up_to(cap) {
                        let lhs = slice.act_group(w, &slice.dunkl_act(&y, &slice.act_group(g.inv(w), &b)?)?)?;
                        let rhs = slice.dunkl_act(&wy, &b)?;
                        checked += 1;
                        if lhs != rhs {
                            witnesses.push(format!(
                                "{} D_y{i} {}^-1 fails on {}",
                                g.names[w],
                                g.names[w],
                                describe(&slice, &b)
                            ));
                        }
                    }
                }
            }
            Ok((checked, witnesses))
        })
        .collect();
    let mut checked = 0;
    let mut witnesses = Vec::new();
    for r in results {
        let (k, w) = r?;
        checked += k;
        witnesses.extend(w);
    }
    Ok(BracketReport {
        group: g.kind.label(),
        c: c.values.iter().map(|x| x.to_string()).collect(),
        t: t.to_string(),
        cap,
        status: if witnesses.is_empty() { "pass".into() } else { "fail".into() },
        checked,
        max_degree: cap,
        witnesses,
    })
}

fn describe(slice: &VermaSlice<'_>, b: &VermaVector) -> String {
    let parts: Vec<String> = b
        .terms
        .keys()
        .map(|&(mi, i)| {
            let e = &slice.monomials[mi];
            let mono: Vec<String> =
                e.iter().enumerate().filter(|(_, &k)| k > 0).map(|(v, &k)| format!("x{v}^{k}")).collect();
            let mono = if mono.is_empty() { "1".to_string() } else { mono.join("*") };
            format!("{mono} ⊗ e{i}")
        })
        .collect();
    parts.join(" + ")
}

/// The scalar by which `Σ_i x_i y_i + Σ_s ε(s) c_s s` acts on `1 ⊗ E`.
pub fn euler_on_verma(
    g: &ReflectionGroup,
    table: &CharacterTable,
    chi: &ClassFunction,
    c: &ParamC,
) -> Result<Cyclotomic> {
    let module = reps::irreducible(g, table, chi)?;
    let dim = module.dim;
    let slice = VermaSlice::new(g, c, Cyclotomic::zero(), module, 1)?;
    let mut scalar: Option<Cyclotomic> = None;
    for i in 0..dim {
        let b = VermaVector::basis(slice.index[&vec![0; g.dim]], i);
        let mut out = VermaVector::default();
        for k in 0..g.dim {
            let y = unit(g.dim, k);
            out.add_scaled(&slice.mul_x(&y, &slice.dunkl_act(&y, &b)?)?, &Cyclotomic::one());
        }
        for (ri, r) in g.reflections.iter().enumerate() {
            out.add_scaled(&slice.act_group(r.element, &b)?, &(&r.eps * c.of(g, ri)));
        }
        let lambda = out.terms.get(&(slice.index[&vec![0; g.dim]], i)).cloned().unwrap_or_else(Cyclotomic::zero);
        let mut expect = VermaVector::default();
        expect.add_scaled(&b, &lambda);
        if out != expect || scalar.as_ref().is_some_and(|s| *s != lambda) {
            return Err(Error::Invariant(format!("Euler element is not scalar on {}", chi.name)));
        }
        scalar = Some(lambda);
    }
    Ok(scalar.unwrap_or_else(Cyclotomic::zero))
}

/// `C_E = (1/dim E) Σ_s ε(s) χ_E(s) c_s`.
pub fn c_from_trace(g: &ReflectionGroup, table: &CharacterTable, chi: &ClassFunction, c: &ParamC) -> Cyclotomic {
    let mut acc = Cyclotomic::zero();
    for (ri, r) in g.reflections.iter().enumerate() {
        acc += &(&(&r.eps * &table.value(chi, r.element)) * c.of(g, ri));
    }
    &acc / &table.value(chi, g.identity())
}

/// Coefficients of `C_E` as a linear form in the class parameters `c`.
pub fn c_linear_form(g: &ReflectionGroup, table: &CharacterTable, chi: &ClassFunction) -> Vec<Cyclotomic> {
    let mut form = vec![Cyclotomic::zero(); g.n_classes_ref()];
    let d = table.value(chi, g.identity());
    for r in &g.reflections {
        form[r.class] += &(&(&r.eps * &table.value(chi, r.element)) / &d);
    }
    form
}

/// `m^E_{ℵ,j}`: multiplicity of `det^{-j}` in the restriction of `E` to the
/// pointwise stabiliser of a hyperplane of orbit `ℵ`.
pub fn restriction_multiplicity(
    g: &ReflectionGroup,
    table: &CharacterTable,
    chi: &ClassFunction,
    orbit: usize,
    j: u32,
) -> Cyclotomic {
    let o = &g.orbits[orbit];
    let h = o.hyperplanes[0];
    let e = o.e;
    let mut acc = table.value(chi, g.identity());
    for r in g.reflections.iter().filter(|r| r.hyperplane == h) {
        let z = Cyclotomic::zeta_pow(e, (r.exponent as i64) * (j as i64));
        acc += &(&table.value(chi, r.element) * &z);
    }
    &acc / &Cyclotomic::from_int(e as i64)
}

/// `C_E = Σ_{ℵ,j} m^E_{ℵ,j} |ℵ| e_ℵ / dim E · K_{ℵ,j}`.
pub fn c_from_k_formula(g: &ReflectionGroup, table: &CharacterTable, chi: &ClassFunction, k: &ParamK) -> Cyclotomic {
    let d = table.value(chi, g.identity());
    let mut acc = Cyclotomic::zero();
    for (a, o) in g.orbits.iter().enumerate() {
        let size = Cyclotomic::from_int((o.hyperplanes.len() * o.e as usize) as i64);
        for j in 0..o.e {
            let m = restriction_multiplicity(g, table, chi, a, j);
            acc += &(&(&m * &size) * &k.values[a][j as usize]);
        }
    }
    &acc / &d
}

/// All three evaluations of `C_E` at once; errors when they disagree.
pub fn euler_consistency(
    g: &ReflectionGroup,
    table: &CharacterTable,
    chi: &ClassFunction,
    c: &ParamC,
) -> Result<Cyclotomic> {
    let verma = euler_on_verma(g, table, chi, c)?;
    let trace = c_from_trace(g, table, chi, c);
    let kform = c_from_k_formula(g, table, chi, &crate::params::kappa(g, c));
    if verma != trace || trace != kform {
        return Err(Error::Invariant(format!(
            "Euler values disagree on {}: verma {verma}, trace {trace}, k-formula {kform}",
            chi.name
        )));
    }
    let back = kappa_inverse(g, &crate::params::kappa(g, c));
    if back != *c {
        return Err(Error::Invariant("kappa is not invertible at this point".into()));
    }
    Ok(trace)
}

/// Commutation `[D_y, D_{y′}] = 0` on the slice over `kW` at parameter `t`.
pub fn dunkl_commute(g: &ReflectionGroup, c: &ParamC, cap: u32, t: &Cyclotomic) -> Result<bool> {
    let slice = VermaSlice::new(g, c, t.clone(), Representation::regular(g), cap)?;
    let n = g.dim;
    for i in 0..n {
        for j in i + 1..n {
            for b in slice.basis_up_to(cap) {
                let l = slice.dunkl_act(&unit(n, i), &slice.dunkl_act(&unit(n, j), &b)?)?;
                let r = slice.dunkl_act(&unit(n, j), &slice.dunkl_act(&unit(n, i), &b)?)?;
                if l != r {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Convenience: lowest weight check `y · (1 ⊗ e) = 0`.
pub fn lowest_weight_killed(g: &ReflectionGroup, c: &ParamC) -> Result<bool> {
    let slice = VermaSlice::new(g, c, Cyclotomic::zero(), Representation::regular(g), 1)?;
    let zero = slice.index[&vec![0; g.dim]];
    for i in 0..g.order() {
        for k in 0..g.dim {
            if !slice.dunkl_act(&unit(g.dim, k), &VermaVector::basis(zero, i))?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
