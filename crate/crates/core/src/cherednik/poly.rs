use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactnum::{Field, Matrix};

/// Exponent vector of a monomial.
pub type Monomial = Vec<u32>;

/// Sparse multivariate polynomial; no stored zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<F> {
    nvars: usize,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> Poly<F> {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn monomial(nvars: usize, exps: Monomial, c: F) -> Self {
        debug_assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn variable(nvars: usize, i: usize, one: F) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, one)
    }

    /// The linear form sum_k coeffs[k] x_k.
    pub fn linear(coeffs: &[F]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (k, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[k] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &[u32]) -> Option<&F> {
        self.terms.get(m)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximal total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    /// Value at the origin.
    pub fn constant_term(&self) -> F {
        self.terms
            .get(&vec![0; self.nvars])
            .cloned()
            .unwrap_or_else(F::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, s: &F) {
        if s.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone() * s);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r.add_scaled(other, &F::one());
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r.add_scaled(other, &(-F::one()));
        r
    }

    pub fn scale(&self, s: &F) -> Self {
        let mut r = Self::zero(self.nvars);
        r.add_scaled(self, s);
        r
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut r = Self::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let m: Monomial = a.iter().zip(b).map(|(x, y)| x + y).collect();
                r.add_term(m, ca.clone() * cb);
            }
        }
        r
    }

    pub fn pow(&self, k: u32, one: &F) -> Self {
        let mut r = Self::constant(self.nvars, one.clone());
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut r = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            if m[i] == 0 {
                continue;
            }
            let mut e = m.clone();
            e[i] -= 1;
            r.add_term(e, c.scale_i64(m[i] as i64));
        }
        r
    }

    /// f(M x): each x_i is replaced by sum_k M[i][k] x_k.
    pub fn substitute(&self, m: &Matrix<F>, one: &F) -> Self {
        let n = self.nvars;
        let forms: Vec<Self> = (0..n).map(|i| Self::linear(m.row(i))).collect();
        let mut powers: Vec<Vec<Self>> = forms
            .iter()
            .map(|_| vec![Self::constant(n, one.clone())])
            .collect();
        let mut r = Self::zero(n);
        for (mono, c) in &self.terms {
            let mut acc = Self::constant(n, c.clone());
            for (i, &e) in mono.iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&forms[i]);
                    powers[i].push(next);
                }
                if e > 0 {
                    acc = acc.mul(&powers[i][e as usize]);
                }
            }
            r.add_scaled(&acc, one);
        }
        r
    }

    /// Exact quotient by the linear form sum_k alpha[k] x_k; errors (tagged
    /// with `tag`) when a remainder is left.
    pub fn divide_linear(&self, alpha: &[F], tag: usize) -> Result<Self> {
        let p = alpha
            .iter()
            .position(|a| !a.is_zero())
            .ok_or(Error::InexactDivision(tag))?;
        let inv = alpha[p].inv().unwrap();
        let form = Self::linear(alpha);
        let mut rest = self.clone();
        let mut q = Self::zero(self.nvars);
        loop {
            let lead = rest
                .terms
                .iter()
                .max_by(|(a, _), (b, _)| a[p].cmp(&b[p]).then_with(|| b.cmp(a)))
                .map(|(m, c)| (m.clone(), c.clone()));
            let Some((m, c)) = lead else { break };
            if m[p] == 0 {
                return Err(Error::InexactDivision(tag));
            }
            let mut e = m;
            e[p] -= 1;
            let t = Self::monomial(self.nvars, e, c * &inv);
            rest = rest.sub(&t.mul(&form));
            q = q.add(&t);
        }
        Ok(q)
    }
}

/// Matrix of f -> f(S x) on the span of `basis` (columns: images of the
/// basis monomials). The span must be closed under the substitution.
pub fn substitution_matrix<F: Field>(sub: &Matrix<F>, basis: &[Monomial], one: &F) -> Matrix<F> {
    let n = sub.rows();
    let index: std::collections::HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut out = Matrix::zeros(basis.len(), basis.len());
    for (j, m) in basis.iter().enumerate() {
        let img = Poly::monomial(n, m.clone(), one.clone()).substitute(sub, one);
        for (mono, c) in img.terms() {
            out.set(index[mono], j, c.clone());
        }
    }
    out
}

/// Monomials of total degree d in n variables, in descending lexicographic
/// order of exponent vectors.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(i: usize, n: usize, left: u32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if i + 1 == n {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, n, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    rec(0, n, d, &mut vec![0; n], &mut out);
    out
}
