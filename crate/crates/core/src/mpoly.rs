//! Sparse polynomials in several commuting variables over a cyclotomic field.

use std::collections::BTreeMap;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};

/// Exponent vector of a monomial.
pub type Exponent = Vec<u32>;

/// `Σ c_a x^a`, zero coefficients never stored.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct MPoly {
    pub terms: BTreeMap<Exponent, Cyclotomic>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn monomial(e: Exponent, c: Cyclotomic) -> Self {
        let mut p = MPoly::zero();
        p.add_term(e, c);
        p
    }

    /// The linear form `Σ l_i x_i`.
    pub fn linear(l: &[Cyclotomic]) -> Self {
        let mut p = MPoly::zero();
        for (i, c) in l.iter().enumerate() {
            let mut e = vec![0; l.len()];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: Exponent, c: Cyclotomic) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, o: &MPoly, k: &Cyclotomic) {
        for (e, c) in &o.terms {
            self.add_term(e.clone(), c * k);
        }
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                out.add_term(a.iter().zip(b).map(|(i, j)| i + j).collect(), x * y);
            }
        }
        out
    }

    /// Total degree (`None` for zero).
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Substitutes `x_i ↦ forms[i]` (each a polynomial).
    pub fn substitute(&self, forms: &[MPoly]) -> MPoly {
        let nvars = forms.len();
        let mut powers: Vec<Vec<MPoly>> =
            forms.iter().map(|f| vec![MPoly::monomial(vec![0; nvars], Cyclotomic::one()), f.clone()]).collect();
        let mut out = MPoly::zero();
        for (e, c) in &self.terms {
            let mut term = MPoly::monomial(vec![0; nvars], c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().mul(&forms[i]);
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][k as usize]);
            }
            out.add_scaled(&term, &Cyclotomic::one());
        }
        out
    }

    /// Exact quotient by a nonzero linear form; fails when the division
    /// leaves a remainder.
    pub fn div_linear(&self, form: &[Cyclotomic]) -> Result<MPoly> {
        let k = form
            .iter()
            .position(|c| !c.is_zero())
            .ok_or_else(|| Error::InvalidArgument("division by zero form".into()))?;
        let lead_inv = form[k].inv().unwrap();
        let divisor = MPoly::linear(form);
        let mut rem = self.clone();
        let mut q = MPoly::zero();
        // Leading term: largest x_k exponent, ties broken by the map order.
        while let Some((e, c)) = rem
            .terms
            .iter()
            .max_by(|a, b| a.0[k].cmp(&b.0[k]).then_with(|| a.0.cmp(b.0)))
            .map(|(e, c)| (e.clone(), c.clone()))
        {
            if e[k] == 0 {
                return Err(Error::Invariant(format!("polynomial is not divisible by the form, remainder term {e:?}")));
            }
            let mut qe = e.clone();
            qe[k] -= 1;
            let qc = &c * &lead_inv;
            let step = MPoly::monomial(qe.clone(), qc.clone()).mul(&divisor);
            rem.add_scaled(&step, &-Cyclotomic::one());
            q.add_term(qe, qc);
        }
        Ok(q)
    }
}

/// All exponent vectors in `nvars` variables of total degree `≤ n`, ordered by
/// degree then lexicographically.
pub fn monomials_up_to(nvars: usize, n: u32) -> Vec<Exponent> {
    let mut out = Vec::new();
    for d in 0..=n {
        let mut cur = vec![0u32; nvars];
        fill(&mut out, &mut cur, 0, d);
    }
    out
}

fn fill(out: &mut Vec<Exponent>, cur: &mut Exponent, i: usize, left: u32) {
    if i + 1 == cur.len() {
        cur[i] = left;
        out.push(cur.clone());
        return;
    }
    for k in (0..=left).rev() {
        cur[i] = k;
        fill(out, cur, i + 1, left - k);
    }
    cur[i] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Cyclotomic {
        Cyclotomic::from_int(n)
    }

    #[test]
    fn divides_difference_of_squares() {
        // (x^2 - y^2) / (x - y) = x + y
        let mut p = MPoly::monomial(vec![2, 0], q(1));
        p.add_term(vec![0, 2], q(-1));
        let r = p.div_linear(&[q(1), q(-1)]).unwrap();
        assert_eq!(r, MPoly::linear(&[q(1), q(1)]));
        assert!(MPoly::monomial(vec![1, 1], q(1)).div_linear(&[q(1), q(1)]).is_err());
    }

    #[test]
    fn monomial_count() {
        assert_eq!(monomials_up_to(2, 6).len(), 28);
        assert_eq!(monomials_up_to(1, 6).len(), 7);
    }
}
