use rayon::prelude::*;

use crate::cherednik::Parameter;
use crate::error::Result;
use crate::exactnum::CycNumber;
use crate::group::ReflectionGroup;
use crate::{CycMatrix, MultiPoly};

struct HyperplaneTerm {
    index: usize,
    normal: Vec<CycNumber>,
    /// (substitution realizing w, kappa_w) for w in W_H, where
    /// kappa_w = sum_j c_{H,j} det(w)^{-j}.
    parts: Vec<(CycMatrix, CycNumber)>,
}

/// The Dunkl operators D_1..D_n at a fixed parameter:
/// D_i f = d_i f - sum_H alpha_H(e_i) (sum_{w in W_H} kappa_w w.f) / alpha_H.
pub struct DunklOperators {
    nvars: usize,
    one: CycNumber,
    terms: Vec<HyperplaneTerm>,
}

impl DunklOperators {
    pub fn new(g: &ReflectionGroup, c: &Parameter) -> Result<Self> {
        c.polynomial_action()?;
        if c.values().len() != g.orbits().len() {
            return Err(crate::Error::ParameterShape);
        }
        let cond = g.conductor();
        let terms = g
            .hyperplanes()
            .iter()
            .enumerate()
            .map(|(index, h)| {
                let cs = &c.values()[h.orbit];
                let parts = h
                    .stabilizer
                    .iter()
                    .map(|&w| {
                        let dinv = g.det(g.inverse(w)).clone();
                        let mut kappa = g.zero();
                        let mut p = g.one();
                        for cj in cs {
                            kappa += &(p.clone() * &CycNumber::rational_in(cond, cj.clone()));
                            p = p * &dinv;
                        }
                        (g.substitution(w).clone(), kappa)
                    })
                    .filter(|(_, k)| !num_traits::Zero::is_zero(k))
                    .collect();
                HyperplaneTerm {
                    index,
                    normal: h.normal.clone(),
                    parts,
                }
            })
            .collect();
        Ok(DunklOperators {
            nvars: g.rank(),
            one: g.one(),
            terms,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    fn hyperplane_quotients(&self, f: &MultiPoly) -> Result<Vec<MultiPoly>> {
        self.terms
            .iter()
            .map(|t| {
                let mut acc = MultiPoly::zero(self.nvars);
                for (m, kappa) in &t.parts {
                    acc.add_scaled(&f.substitute(m, &self.one), kappa);
                }
                acc.divide_linear(&t.normal, t.index)
            })
            .collect()
    }

    /// D_i f.
    pub fn apply(&self, i: usize, f: &MultiPoly) -> Result<MultiPoly> {
        Ok(self.apply_all(f)?.swap_remove(i))
    }

    /// (D_1 f, ..., D_n f), sharing the hyperplane quotients.
    pub fn apply_all(&self, f: &MultiPoly) -> Result<Vec<MultiPoly>> {
        let qs = self.hyperplane_quotients(f)?;
        Ok((0..self.nvars)
            .map(|i| {
                let mut r = f.partial(i);
                for (t, q) in self.terms.iter().zip(&qs) {
                    r.add_scaled(q, &(-t.normal[i].clone()));
                }
                r
            })
            .collect())
    }

    /// D^mu f = prod_i D_i^{mu_i} f, applied in coordinate order.
    pub fn apply_monomial(&self, mu: &[u32], f: &MultiPoly) -> Result<MultiPoly> {
        let mut r = f.clone();
        for (i, &k) in mu.iter().enumerate() {
            for _ in 0..k {
                r = self.apply(i, &r)?;
            }
        }
        Ok(r)
    }

    /// D_i applied to each polynomial, in parallel.
    pub fn apply_all_par(&self, fs: &[MultiPoly]) -> Result<Vec<Vec<MultiPoly>>> {
        fs.par_iter().map(|f| self.apply_all(f)).collect()
    }
}

/// D_i f at parameter c.
pub fn dunkl_apply(g: &ReflectionGroup, c: &Parameter, i: usize, f: &MultiPoly) -> Result<MultiPoly> {
    DunklOperators::new(g, c)?.apply(i, f)
}
