//! The two coordinate systems on the parameter space: `c` (one value per
//! conjugacy class of reflections) and `k` (one value per hyperplane orbit and
//! exponent, summing to zero on each orbit).

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::groups::{random_rational, ReflectionGroup};

/// `c_s`, keyed by reflection class.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamC {
    pub values: Vec<Cyclotomic>,
}

/// `k_{ℵ,j}`, keyed by orbit then `j ∈ 0..e_ℵ`.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamK {
    pub values: Vec<Vec<Cyclotomic>>,
}

impl ParamC {
    pub fn zero(g: &ReflectionGroup) -> Self {
        ParamC { values: vec![Cyclotomic::zero(); g.n_classes_ref()] }
    }

    pub fn new(g: &ReflectionGroup, values: Vec<Cyclotomic>) -> Result<Self> {
        if values.len() != g.n_classes_ref() {
            return Err(Error::InvalidArgument(format!(
                "{} has {} reflection classes, got {} values",
                g.kind.label(),
                g.n_classes_ref(),
                values.len()
            )));
        }
        Ok(ParamC { values })
    }

    /// `c_s` for the reflection with index `r` in `g.reflections`.
    pub fn of(&self, g: &ReflectionGroup, r: usize) -> &Cyclotomic {
        &self.values[g.reflections[r].class]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Cyclotomic::is_zero)
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.values.iter().map(Cyclotomic::embed_complex).collect()
    }

    /// Random rational parameters drawn from a small range so that
    /// coincidences between values occur with positive frequency.
    pub fn random(g: &ReflectionGroup, rng: &mut ChaCha8Rng) -> Self {
        ParamC { values: (0..g.n_classes_ref()).map(|_| Cyclotomic::from_rational(random_rational(rng))).collect() }
    }
}

impl ParamK {
    pub fn new(g: &ReflectionGroup, values: Vec<Vec<Cyclotomic>>) -> Result<Self> {
        if values.len() != g.orbits.len() || values.iter().zip(&g.orbits).any(|(v, o)| v.len() != o.e as usize) {
            return Err(Error::InvalidArgument("k has the wrong shape for this group".into()));
        }
        for (a, v) in values.iter().enumerate() {
            let s = v.iter().fold(Cyclotomic::zero(), |acc, x| &acc + x);
            if !s.is_zero() {
                return Err(Error::InvalidArgument(format!("k values on orbit {a} must sum to 0, got {s}")));
            }
        }
        Ok(ParamK { values })
    }

    /// Random rational `k` with small integer numerators, centred to sum zero.
    pub fn random(g: &ReflectionGroup, rng: &mut ChaCha8Rng) -> Self {
        let values = g
            .orbits
            .iter()
            .map(|o| {
                let q = Cyclotomic::from_int(rng.gen_range(1..=3));
                let raw: Vec<Cyclotomic> =
                    (0..o.e).map(|_| &Cyclotomic::from_int(rng.gen_range(-2..=2)) / &q).collect();
                let mean = &raw.iter().fold(Cyclotomic::zero(), |a, x| &a + x) / &Cyclotomic::from_int(o.e as i64);
                raw.iter().map(|x| x - &mean).collect()
            })
            .collect();
        ParamK { values }
    }
}

/// Class index of `s_H^i` for every orbit and exponent `i ≥ 1`.
fn class_table(g: &ReflectionGroup) -> Vec<Vec<Option<usize>>> {
    let mut t: Vec<Vec<Option<usize>>> = g.orbits.iter().map(|o| vec![None; o.e as usize]).collect();
    for r in &g.reflections {
        t[r.orbit][r.exponent as usize] = Some(r.class);
    }
    t
}

/// `c ↦ k`: inverts `C_{s_H^i} = Σ_j ζ_e^{i(j−1)} K_{H,j}` under `Σ_j K_j = 0`,
/// giving `K_j = e^{-1} Σ_{i≥1} ζ_e^{i(1−j)} C_i`.
pub fn kappa(g: &ReflectionGroup, c: &ParamC) -> ParamK {
    let table = class_table(g);
    let values = g
        .orbits
        .iter()
        .enumerate()
        .map(|(a, o)| {
            let e = o.e;
            let inv_e = Cyclotomic::from_frac(1, e as i64);
            (0..e)
                .map(|j| {
                    let mut acc = Cyclotomic::zero();
                    for i in 1..e {
                        let cls = table[a][i as usize].expect("class of s_H^i");
                        let z = Cyclotomic::zeta_pow(e, (i as i64) * (1 - j as i64));
                        acc += &(&z * &c.values[cls]);
                    }
                    &acc * &inv_e
                })
                .collect()
        })
        .collect();
    ParamK { values }
}

/// `k ↦ c`: `C_{s_H^i} = Σ_j ζ_e^{i(j−1)} K_{H,j}`.
pub fn kappa_inverse(g: &ReflectionGroup, k: &ParamK) -> ParamC {
    let table = class_table(g);
    let mut values = vec![Cyclotomic::zero(); g.n_classes_ref()];
    for (a, o) in g.orbits.iter().enumerate() {
        let e = o.e;
        for i in 1..e {
            let cls = table[a][i as usize].expect("class of s_H^i");
            let mut acc = Cyclotomic::zero();
            for j in 0..e {
                let z = Cyclotomic::zeta_pow(e, (i as i64) * (j as i64 - 1));
                acc += &(&z * &k.values[a][j as usize]);
            }
            values[cls] = acc;
        }
    }
    ParamC { values }
}

/// Complex-float version of [`kappa_inverse`] for points off the rational
/// lattice (used to build paths).
pub fn kappa_inverse_complex(g: &ReflectionGroup, k: &[Vec<Complex64>]) -> Vec<Complex64> {
    let table = class_table(g);
    let mut values = vec![Complex64::new(0.0, 0.0); g.n_classes_ref()];
    for (a, o) in g.orbits.iter().enumerate() {
        let e = o.e;
        for i in 1..e {
            let cls = table[a][i as usize].expect("class of s_H^i");
            values[cls] = (0..e)
                .map(|j| Cyclotomic::zeta_pow(e, (i as i64) * (j as i64 - 1)).embed_complex() * k[a][j as usize])
                .sum();
        }
    }
    values
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_values() {
        let g = ReflectionGroup::cyclic(2).unwrap();
        let k = ParamK::new(&g, vec![vec![Cyclotomic::from_int(-3), Cyclotomic::from_int(3)]]).unwrap();
        assert_eq!(kappa_inverse(&g, &k).values, vec![Cyclotomic::from_int(6)]);

        let g = ReflectionGroup::cyclic(3).unwrap();
        let kv = vec![Cyclotomic::from_int(1), Cyclotomic::from_int(1), Cyclotomic::from_int(-2)];
        let c = kappa_inverse(&g, &ParamK::new(&g, vec![kv.clone()]).unwrap());
        let z = Cyclotomic::zeta(3);
        let expect = &(&Cyclotomic::zeta_pow(3, -1) * &kv[0]) + &(&kv[1] + &(&z * &kv[2]));
        assert_eq!(c.values[0], expect);
        assert_eq!(kappa(&g, &c).values[0], kv);
    }

    #[test]
    fn k_must_sum_to_zero() {
        let g = ReflectionGroup::cyclic(3).unwrap();
        assert!(ParamK::new(&g, vec![vec![Cyclotomic::one(), Cyclotomic::zero(), Cyclotomic::zero()]]).is_err());
    }
}
