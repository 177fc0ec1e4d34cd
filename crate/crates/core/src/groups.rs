//! Finite complex reflection groups given by explicit matrices over a
//! cyclotomic field, with their reflections, hyperplane orbits and the
//! determinant character.

use std::collections::{HashMap, VecDeque};

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cyclotomic::{Cyclotomic, MAX_ORDER};
use crate::error::{Error, Result};
use crate::linalg_exact::{self, Mat};

/// Which built-in family a group belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupKind {
    Cyclic(u32),
    B2,
    Dihedral(u32),
}

impl GroupKind {
    pub fn label(&self) -> String {
        match self {
            GroupKind::Cyclic(d) => format!("cyclic(d={d})"),
            GroupKind::B2 => "B2".to_string(),
            GroupKind::Dihedral(m) => format!("dihedral(m={m})"),
        }
    }

    /// Real reflection groups (Coxeter type) get the chamber path convention.
    pub fn is_real(&self) -> bool {
        matches!(self, GroupKind::B2 | GroupKind::Dihedral(_))
    }
}

/// A reflection `s` with its root `α_s ∈ V*` and coroot `α_s^∨ ∈ V`,
/// normalised so that `⟨α_s^∨, α_s⟩ = 1`.
#[derive(Clone, Debug)]
pub struct Reflection {
    /// Index into [`ReflectionGroup::elements`].
    pub element: usize,
    pub root: Vec<Cyclotomic>,
    pub coroot: Vec<Cyclotomic>,
    /// `det(s) = ε(s)`.
    pub eps: Cyclotomic,
    pub hyperplane: usize,
    pub orbit: usize,
    /// `s = s_H^j` where `s_H` is the generator of `W_H` with determinant `ζ_{e_H}`.
    pub exponent: u32,
    /// Conjugacy class of reflections (the key of a `c` parameter).
    pub class: usize,
}

/// A `W`-orbit of reflecting hyperplanes.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub e: u32,
    pub hyperplanes: Vec<usize>,
}

/// A finite reflection group with an explicit, product-closed element list.
#[derive(Clone, Debug)]
pub struct ReflectionGroup {
    pub kind: GroupKind,
    pub dim: usize,
    /// All matrix entries live in `Q(ζ_N)` with this `N`.
    pub field_order: u32,
    pub elements: Vec<Mat>,
    /// Shortlex words in the generators, `"1"` for the identity.
    pub names: Vec<String>,
    pub generator_names: Vec<String>,
    /// Indices of the generators in `elements`.
    pub generators: Vec<usize>,
    mult: Vec<Vec<u32>>,
    inverse: Vec<usize>,
    pub det: Vec<Cyclotomic>,
    pub reflections: Vec<Reflection>,
    pub orbits: Vec<Orbit>,
    /// Names of the reflection classes (`c` parameter keys).
    pub class_names: Vec<String>,
    /// Number of distinct reflecting hyperplanes.
    pub n_hyperplanes: usize,
}

/// Largest group order accepted by the builders.
pub const MAX_GROUP_ORDER: usize = 4000;

impl ReflectionGroup {
    /// Cyclic group of order `d` acting on `C` through `ζ_d`.
    pub fn cyclic(d: u32) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidArgument(format!("cyclic group needs d >= 2, got {d}")));
        }
        if d > MAX_ORDER {
            return Err(Error::OrderTooLarge(d));
        }
        let s = vec![vec![Cyclotomic::zeta(d)]];
        Self::generate(GroupKind::Cyclic(d), d, vec![s], vec!["s".into()])
    }

    /// The Weyl group of type `B2`, generated by `s = [[0,1],[1,0]]` and
    /// `t = diag(−1, 1)`.
    pub fn weyl_b2() -> Result<Self> {
        let z = Cyclotomic::zero;
        let one = Cyclotomic::one;
        let s = vec![vec![z(), one()], vec![one(), z()]];
        let t = vec![vec![Cyclotomic::from_int(-1), z()], vec![z(), one()]];
        Self::generate(GroupKind::B2, 1, vec![s, t], vec!["s".into(), "t".into()])
    }

    /// The dihedral group of order `2m` in the basis of simple roots, with
    /// generators `s = [[−1,1],[0,1]]` and `t = [[1,0],[q,−1]]` where
    /// `q = 4cos²(π/m)`. The entries are rational for `m ∈ {3,4,6}`.
    pub fn dihedral(m: u32) -> Result<Self> {
        if m < 3 {
            return Err(Error::InvalidArgument(format!("dihedral group needs m >= 3, got {m}")));
        }
        if m > MAX_ORDER {
            return Err(Error::OrderTooLarge(m));
        }
        let q = (&(&Cyclotomic::from_int(2) + &Cyclotomic::zeta(m)) + &Cyclotomic::zeta_pow(m, -1)).simplified();
        let z = Cyclotomic::zero;
        let one = Cyclotomic::one;
        let s = vec![vec![Cyclotomic::from_int(-1), one()], vec![z(), one()]];
        let t = vec![vec![one(), z()], vec![q.clone(), Cyclotomic::from_int(-1)]];
        Self::generate(GroupKind::Dihedral(m), q.order(), vec![s, t], vec!["s".into(), "t".into()])
    }

    fn generate(kind: GroupKind, field_order: u32, gens: Vec<Mat>, gen_names: Vec<String>) -> Result<Self> {
        let dim = gens[0].len();
        let lift = |m: &Mat| -> Mat { m.iter().map(|r| r.iter().map(|x| x.lift(field_order)).collect()).collect() };
        let key = |m: &Mat| -> Vec<BigRational> {
            m.iter().flatten().flat_map(|x| x.lift(field_order).coeffs().to_vec()).collect()
        };
        let gens: Vec<Mat> = gens.iter().map(lift).collect();
        let id = lift(&linalg_exact::identity(dim));

        let mut elements = vec![id.clone()];
        let mut names = vec!["1".to_string()];
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        let mut index: HashMap<Vec<BigRational>, usize> = HashMap::new();
        index.insert(key(&id), 0);
        let mut rgen: Vec<Vec<usize>> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let mut row = Vec::with_capacity(gens.len());
            for (g, gm) in gens.iter().enumerate() {
                let p = linalg_exact::mul(&elements[i], gm);
                let k = key(&p);
                let j = match index.get(&k) {
                    Some(&j) => j,
                    None => {
                        let j = elements.len();
                        if j >= MAX_GROUP_ORDER {
                            return Err(Error::Unsupported(format!("group order exceeds {MAX_GROUP_ORDER}")));
                        }
                        index.insert(k, j);
                        elements.push(lift(&p));
                        let mut w = words[i].clone();
                        w.push(g);
                        names.push(w.iter().map(|&g| gen_names[g].as_str()).collect());
                        words.push(w);
                        queue.push_back(j);
                        j
                    }
                };
                row.push(j);
            }
            rgen.push(row);
        }
        let n = elements.len();
        // mult[i][j] = i·j, filled along the words of j.
        let mut mult = vec![vec![0u32; n]; n];
        for (i, row) in mult.iter_mut().enumerate() {
            for j in 0..n {
                let mut cur = i;
                for &g in &words[j] {
                    cur = rgen[cur][g];
                }
                row[j] = cur as u32;
            }
        }
        let inverse: Vec<usize> = (0..n).map(|i| (0..n).find(|&j| mult[i][j] == 0).expect("inverse")).collect();
        let det: Vec<Cyclotomic> = elements.iter().map(linalg_exact::det).collect();
        let generators: Vec<usize> = (0..gens.len()).map(|g| rgen[0][g]).collect();

        let mut grp = ReflectionGroup {
            kind,
            dim,
            field_order,
            elements,
            names,
            generator_names: gen_names,
            generators,
            mult,
            inverse,
            det,
            reflections: Vec::new(),
            orbits: Vec::new(),
            class_names: Vec::new(),
            n_hyperplanes: 0,
        };
        grp.find_reflections()?;
        Ok(grp)
    }

    fn find_reflections(&mut self) -> Result<()> {
        let dim = self.dim;
        let id = linalg_exact::identity(dim);
        let mut refl = Vec::new();
        let mut hyper_roots: Vec<Vec<Cyclotomic>> = Vec::new();
        for (w, m) in self.elements.iter().enumerate() {
            let d = linalg_exact::sub(m, &id);
            if linalg_exact::rank(&d) != 1 {
                continue;
            }
            let i0 = (0..dim).find(|&i| d[i].iter().any(|x| !x.is_zero())).unwrap();
            let k0 = (0..dim).find(|&k| !d[i0][k].is_zero()).unwrap();
            let lead = d[i0][k0].clone();
            let root: Vec<Cyclotomic> = d[i0].iter().map(|x| x / &lead).collect();
            let u: Vec<Cyclotomic> = (0..dim).map(|i| &d[i][k0] / &root[k0]).collect();
            let eps = self.det[w].clone();
            let scale = (&eps - &Cyclotomic::one()).inv().expect("reflection with trivial determinant");
            let coroot: Vec<Cyclotomic> = u.iter().map(|x| x * &scale).collect();
            let h = match hyper_roots.iter().position(|r| r == &root) {
                Some(h) => h,
                None => {
                    hyper_roots.push(root.clone());
                    hyper_roots.len() - 1
                }
            };
            refl.push(Reflection { element: w, root, coroot, eps, hyperplane: h, orbit: 0, exponent: 0, class: 0 });
        }
        let nh = hyper_roots.len();
        // e_H = |W_H| = number of reflections on H plus one.
        let mut e_h = vec![1u32; nh];
        for r in &refl {
            e_h[r.hyperplane] += 1;
        }
        for r in refl.iter_mut() {
            let e = e_h[r.hyperplane];
            r.exponent = (1..e)
                .find(|&j| r.eps == Cyclotomic::zeta_pow(e, j as i64))
                .ok_or_else(|| Error::Invariant("reflection determinant is not a power of ζ_e".into()))?;
        }
        // Hyperplane orbits: w(H) has root α∘w^{-1}.
        let mut orbit_of = vec![usize::MAX; nh];
        let mut orbits: Vec<Orbit> = Vec::new();
        for h in 0..nh {
            if orbit_of[h] != usize::MAX {
                continue;
            }
            let o = orbits.len();
            let mut members = Vec::new();
            for w in 0..self.elements.len() {
                let winv = &self.elements[self.inverse[w]];
                let img = normalise(&linalg_exact::row_times(&hyper_roots[h], winv));
                let h2 = hyper_roots.iter().position(|r| r == &img).expect("hyperplane image");
                if orbit_of[h2] == usize::MAX {
                    orbit_of[h2] = o;
                    members.push(h2);
                }
            }
            members.sort_unstable();
            orbits.push(Orbit { e: e_h[h], hyperplanes: members });
        }
        for r in refl.iter_mut() {
            r.orbit = orbit_of[r.hyperplane];
        }
        // Conjugacy classes of reflections, ordered by first element index.
        let mut class_of = vec![usize::MAX; self.elements.len()];
        let mut nclass = 0;
        for r in &refl {
            if class_of[r.element] != usize::MAX {
                continue;
            }
            for w in 0..self.elements.len() {
                let c = self.mul(self.mul(w, r.element), self.inverse[w]);
                class_of[c] = nclass;
            }
            nclass += 1;
        }
        for r in refl.iter_mut() {
            r.class = class_of[r.element];
        }
        self.class_names = match self.kind {
            GroupKind::Cyclic(d) => (1..d).map(|i| format!("c{i}")).collect(),
            _ if nclass == 2 => vec!["a".into(), "b".into()],
            _ if nclass == 1 => vec!["a".into()],
            _ => (0..nclass).map(|i| format!("class{i}")).collect(),
        };
        self.n_hyperplanes = nh;
        self.reflections = refl;
        self.orbits = orbits;
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Index of the product `i·j`.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.mult[i][j] as usize
    }

    pub fn inv(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn n_classes_ref(&self) -> usize {
        self.class_names.len()
    }

    /// Element index for a generator word such as `"sts"` or `"1"`.
    pub fn element_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Reflection record of an element, if it is a reflection.
    pub fn reflection_of(&self, w: usize) -> Option<&Reflection> {
        self.reflections.iter().find(|r| r.element == w)
    }

    /// Index of a reflection class given by name (`a`, `c2`, `class0`, …).
    pub fn class_by_name(&self, name: &str) -> Option<usize> {
        self.class_names
            .iter()
            .position(|n| n == name)
            .or_else(|| name.strip_prefix("class").and_then(|k| k.parse().ok()).filter(|&k| k < self.n_classes_ref()))
    }

    /// The matrices as complex floats.
    pub fn complex_matrices(&self) -> Vec<DMatrix<Complex64>> {
        self.elements.iter().map(|m| DMatrix::from_fn(self.dim, self.dim, |i, j| m[i][j].embed_complex())).collect()
    }

    /// Action of `w` on `V`: `y ↦ W y`.
    pub fn act_vector(&self, w: usize, y: &[Cyclotomic]) -> Vec<Cyclotomic> {
        linalg_exact::mat_vec(&self.elements[w], y)
    }

    /// Action of `w` on `V*`: `x ↦ x ∘ w^{-1}`.
    pub fn act_covector(&self, w: usize, x: &[Cyclotomic]) -> Vec<Cyclotomic> {
        linalg_exact::row_times(x, &self.elements[self.inverse[w]])
    }

    /// Sorted degrees of the basic invariants, read off the Molien series.
    pub fn degrees(&self) -> Result<Vec<u32>> {
        crate::characters::degrees(self)
    }

    /// A rational point of `V` off every reflecting hyperplane.
    pub fn regular_vector(&self, seed: u64) -> Vec<BigRational> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let v: Vec<BigRational> = (0..self.dim).map(|_| random_rational(&mut rng)).collect();
            if self.is_regular(&v) {
                return v;
            }
        }
    }

    /// Whether `⟨v, α_s⟩ ≠ 0` for every reflection.
    pub fn is_regular(&self, v: &[BigRational]) -> bool {
        let vc: Vec<Cyclotomic> = v.iter().cloned().map(Cyclotomic::from_rational).collect();
        self.reflections.iter().all(|r| !pair(&vc, &r.root).is_zero())
    }

    /// Simple-root sign data for real groups: the two generator reflections
    /// and the signs making `{σ_g ⟨v, α_g⟩ > 0}` a chamber.
    pub fn chamber_signs(&self) -> Option<[(usize, f64); 2]> {
        self.cone_signs(|r| &r.root)
    }

    /// The same for the coroots, giving a chamber of `V*`.
    pub fn cochamber_signs(&self) -> Option<[(usize, f64); 2]> {
        self.cone_signs(|r| &r.coroot)
    }

    /// With `σ_t = 1`, picks `σ_s` so that no other reflecting hyperplane
    /// meets the open cone cut out by the two generator walls.
    fn cone_signs(&self, form: impl Fn(&Reflection) -> &Vec<Cyclotomic>) -> Option<[(usize, f64); 2]> {
        if !self.kind.is_real() || self.dim != 2 {
            return None;
        }
        let i_s = self.reflections.iter().position(|r| r.element == self.generators[0])?;
        let i_t = self.reflections.iter().position(|r| r.element == self.generators[1])?;
        let re = |r: &Reflection| -> [f64; 2] {
            let f = form(r);
            [f[0].embed_complex().re, f[1].embed_complex().re]
        };
        let (a, b) = (re(&self.reflections[i_s]), re(&self.reflections[i_t]));
        let eval = |f: [f64; 2], p: [f64; 2]| f[0] * p[0] + f[1] * p[1];
        // Ray on which the form `f` vanishes and `g` has sign `sg`.
        let ray = |f: [f64; 2], g: [f64; 2], sg: f64| {
            let p = [-f[1], f[0]];
            if sg * eval(g, p) > 0.0 {
                p
            } else {
                [-p[0], -p[1]]
            }
        };
        for sigma in [1.0, -1.0] {
            let r1 = ray(a, b, 1.0);
            let r2 = ray(b, a, sigma);
            let crosses = self.reflections.iter().enumerate().filter(|&(i, _)| i != i_s && i != i_t).any(|(_, r)| {
                let f = re(r);
                eval(f, r1) * eval(f, r2) < 0.0
            });
            if !crosses {
                return Some([(i_s, sigma), (i_t, 1.0)]);
            }
        }
        None
    }

    /// A rational point in the open chamber of [`Self::chamber_signs`]
    /// (real groups only).
    pub fn chamber_vector(&self, rng: &mut ChaCha8Rng) -> Result<Vec<BigRational>> {
        let signs = self
            .chamber_signs()
            .ok_or_else(|| Error::Unsupported(format!("{} has no real chamber", self.kind.label())))?;
        Ok(self.cone_point(rng, signs, |r| &r.root))
    }

    /// A rational covector in the open chamber of [`Self::cochamber_signs`].
    pub fn cochamber_covector(&self, rng: &mut ChaCha8Rng) -> Result<Vec<BigRational>> {
        let signs = self
            .cochamber_signs()
            .ok_or_else(|| Error::Unsupported(format!("{} has no real chamber", self.kind.label())))?;
        Ok(self.cone_point(rng, signs, |r| &r.coroot))
    }

    fn cone_point(
        &self,
        rng: &mut ChaCha8Rng,
        signs: [(usize, f64); 2],
        form: impl Fn(&Reflection) -> &Vec<Cyclotomic>,
    ) -> Vec<BigRational> {
        loop {
            let v: Vec<BigRational> = (0..self.dim).map(|_| random_rational(rng)).collect();
            let vf: Vec<f64> = v.iter().map(rat_f64).collect();
            let inside = signs.iter().all(|&(ri, sg)| {
                let val: f64 = form(&self.reflections[ri]).iter().zip(&vf).map(|(a, x)| a.embed_complex().re * x).sum();
                sg * val > 1e-3
            });
            let vc: Vec<Cyclotomic> = v.iter().cloned().map(Cyclotomic::from_rational).collect();
            if inside && self.reflections.iter().all(|r| !pair(&vc, form(r)).is_zero()) {
                return v;
            }
        }
    }
}

fn normalise(r: &[Cyclotomic]) -> Vec<Cyclotomic> {
    let lead = r.iter().find(|x| !x.is_zero()).expect("zero root").clone();
    r.iter().map(|x| x / &lead).collect()
}

/// `⟨y, x⟩ = Σ y_i x_i` between a vector and a covector.
pub fn pair(y: &[Cyclotomic], x: &[Cyclotomic]) -> Cyclotomic {
    y.iter().zip(x).fold(Cyclotomic::zero(), |acc, (a, b)| &acc + &(a * b))
}

/// Nearest `f64` to a rational.
pub fn rat_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

/// Small random rational `p/q` with `|p| ≤ 9`, `1 ≤ q ≤ 4`.
pub fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let p: i64 = rng.gen_range(-9..=9);
    let q: i64 = rng.gen_range(1..=4);
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

impl Reflection {
    /// `⟨α_s^∨, α_s⟩`, equal to one after normalisation.
    pub fn pairing(&self) -> Cyclotomic {
        pair(&self.coroot, &self.root)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b2_basics() {
        let g = ReflectionGroup::weyl_b2().unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.reflections.len(), 4);
        assert_eq!(g.orbits.len(), 2);
        let w0 = g.element_by_name("stst").unwrap();
        assert_eq!(g.elements[w0], linalg_exact::scalar(2, Cyclotomic::from_int(-1)));
        assert_eq!(g.names, ["1", "s", "t", "st", "ts", "sts", "tst", "stst"]);
        for r in &g.reflections {
            assert!(r.pairing().is_one());
            assert_eq!(r.eps, Cyclotomic::from_int(-1));
        }
    }

    #[test]
    fn cyclic_and_dihedral() {
        assert!(ReflectionGroup::cyclic(1).is_err());
        assert!(ReflectionGroup::dihedral(2).is_err());
        let c = ReflectionGroup::cyclic(3).unwrap();
        assert_eq!((c.order(), c.reflections.len(), c.orbits.len(), c.orbits[0].e), (3, 2, 1, 3));
        let d3 = ReflectionGroup::dihedral(3).unwrap();
        assert_eq!((d3.reflections.len(), d3.orbits.len()), (3, 1));
        let d4 = ReflectionGroup::dihedral(4).unwrap();
        let b2 = ReflectionGroup::weyl_b2().unwrap();
        assert_eq!(d4.names, b2.names);
        assert_eq!((d4.order(), d4.orbits.len(), d4.field_order), (8, 2, 1));
        for w in 0..8 {
            assert_eq!(d4.det[w], b2.det[w]);
            for u in 0..8 {
                assert_eq!(d4.names[d4.mul(w, u)], b2.names[b2.mul(w, u)]);
            }
        }
        for m in [3, 6] {
            assert_eq!(ReflectionGroup::dihedral(m).unwrap().field_order, 1);
        }
        assert_eq!(ReflectionGroup::dihedral(5).unwrap().field_order, 5);
    }

    #[test]
    fn regular_vector_rejects_walls() {
        let g = ReflectionGroup::weyl_b2().unwrap();
        let q = |n: i64| BigRational::from_integer(BigInt::from(n));
        assert!(g.is_regular(&[q(1), q(2)]));
        assert!(!g.is_regular(&[q(1), q(1)]));
        let v = g.regular_vector(11);
        assert!(g.is_regular(&v));
        assert_eq!(v, g.regular_vector(11));
    }
}
