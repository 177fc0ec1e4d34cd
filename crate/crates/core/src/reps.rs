//! Explicit matrix models of irreducible representations, cut out of the
//! left regular representation by central idempotents.

use crate::characters::{CharacterTable, ClassFunction};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::groups::ReflectionGroup;
use crate::linalg_exact::{self, Mat};

/// `ρ(w)` for every element, acting on column vectors.
#[derive(Clone, Debug)]
pub struct Representation {
    pub dim: usize,
    pub matrices: Vec<Mat>,
}

impl Representation {
    pub fn character(&self) -> Vec<Cyclotomic> {
        self.matrices.iter().map(linalg_exact::trace).collect()
    }

    /// The left regular representation on `kW` with basis `(e_u)`.
    pub fn regular(g: &ReflectionGroup) -> Self {
        let n = g.order();
        let matrices = (0..n)
            .map(|w| {
                let mut m = vec![vec![Cyclotomic::zero(); n]; n];
                for u in 0..n {
                    m[g.mul(w, u)][u] = Cyclotomic::one();
                }
                m
            })
            .collect();
        Representation { dim: n, matrices }
    }
}

/// `L_w x` in `kW`.
fn left_mult(g: &ReflectionGroup, w: usize, x: &[Cyclotomic]) -> Vec<Cyclotomic> {
    let mut out = vec![Cyclotomic::zero(); x.len()];
    for (u, c) in x.iter().enumerate() {
        if !c.is_zero() {
            out[g.mul(w, u)] = c.clone();
        }
    }
    out
}

/// A matrix model of the irreducible character `chi`.
pub fn irreducible(g: &ReflectionGroup, table: &CharacterTable, chi: &ClassFunction) -> Result<Representation> {
    let n = g.order();
    let degree =
        table.value(chi, g.identity()).to_rational().and_then(|q| num_traits::ToPrimitive::to_usize(&q.to_integer()));
    let degree = degree.ok_or_else(|| Error::InvalidArgument(format!("{} is not a character", chi.name)))?;
    let coef = Cyclotomic::from_frac(degree as i64, n as i64);
    let weights: Vec<Cyclotomic> = (0..n).map(|w| &table.value(chi, w).conj() * &coef).collect();
    let project = |x: &[Cyclotomic]| -> Vec<Cyclotomic> {
        let mut out = vec![Cyclotomic::zero(); n];
        for (w, k) in weights.iter().enumerate() {
            if k.is_zero() {
                continue;
            }
            for (u, v) in left_mult(g, w, x).into_iter().enumerate() {
                if !v.is_zero() {
                    out[u] += &(k * &v);
                }
            }
        }
        out
    };
    let mut seeds: Vec<Vec<Cyclotomic>> = g
        .reflections
        .iter()
        .map(|r| {
            let mut x = vec![Cyclotomic::zero(); n];
            x[g.identity()] = Cyclotomic::one();
            x[r.element] = Cyclotomic::one();
            x
        })
        .collect();
    let mut e1 = vec![Cyclotomic::zero(); n];
    e1[g.identity()] = Cyclotomic::one();
    seeds.push(e1);
    for x in seeds {
        let v = project(&x);
        if v.iter().all(Cyclotomic::is_zero) {
            continue;
        }
        let orbit: Vec<Vec<Cyclotomic>> = (0..n).map(|w| left_mult(g, w, &v)).collect();
        let idx = linalg_exact::independent_subset(&orbit);
        if idx.len() != degree {
            continue;
        }
        let basis: Vec<Vec<Cyclotomic>> = idx.iter().map(|&i| orbit[i].clone()).collect();
        let mut matrices = Vec::with_capacity(n);
        for w in 0..n {
            let mut m = vec![vec![Cyclotomic::zero(); degree]; degree];
            for (j, b) in basis.iter().enumerate() {
                let coords = linalg_exact::solve_in_span(&basis, &left_mult(g, w, b))
                    .ok_or_else(|| Error::Invariant("submodule not stable under W".into()))?;
                for (i, c) in coords.into_iter().enumerate() {
                    m[i][j] = c;
                }
            }
            matrices.push(m);
        }
        let rep = Representation { dim: degree, matrices };
        if (0..n).any(|w| linalg_exact::trace(&rep.matrices[w]) != table.value(chi, w)) {
            return Err(Error::Invariant(format!("model of {} has the wrong character", chi.name)));
        }
        return Ok(rep);
    }
    Err(Error::Unsupported(format!("no cyclic generator found for a model of {}", chi.name)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::irr_characters;

    #[test]
    fn models_are_homomorphisms() {
        for g in [
            ReflectionGroup::weyl_b2().unwrap(),
            ReflectionGroup::dihedral(5).unwrap(),
            ReflectionGroup::cyclic(4).unwrap(),
        ] {
            let t = irr_characters(&g).unwrap();
            for chi in &t.irr {
                let r = irreducible(&g, &t, chi).unwrap();
                for a in 0..g.order() {
                    for b in 0..g.order() {
                        let ab = linalg_exact::mul(&r.matrices[a], &r.matrices[b]);
                        assert_eq!(ab, r.matrices[g.mul(a, b)]);
                    }
                }
            }
        }
    }
}
