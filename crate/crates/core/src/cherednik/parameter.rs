use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{rat, Matrix, Rational};
use crate::group::{local_data, LocalData, RepKind, ReflectionGroup, Representation};

/// A W-invariant parameter c = (c_{H,j}), stored once per hyperplane orbit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Parameter {
    values: Vec<Vec<Rational>>,
}

impl Parameter {
    /// Checks the shape against the group's orbits (row o has n_H entries).
    pub fn new(g: &ReflectionGroup, values: Vec<Vec<Rational>>) -> Result<Self> {
        let shape_ok = values.len() == g.orbits().len()
            && values.iter().zip(g.orbits()).all(|(v, o)| v.len() == o.n_h);
        if !shape_ok {
            return Err(Error::ParameterShape);
        }
        Ok(Parameter { values })
    }

    pub fn zero(g: &ReflectionGroup) -> Self {
        Parameter {
            values: g.orbits().iter().map(|o| vec![Rational::zero(); o.n_h]).collect(),
        }
    }

    /// rho_{H,j} = j / n_H.
    pub fn rho(g: &ReflectionGroup) -> Self {
        Parameter {
            values: g
                .orbits()
                .iter()
                .map(|o| (0..o.n_h).map(|j| rat(j as i64, o.n_h as i64)).collect())
                .collect(),
        }
    }

    pub fn values(&self) -> &[Vec<Rational>] {
        &self.values
    }

    pub fn get(&self, orbit: usize, j: usize) -> &Rational {
        &self.values[orbit][j]
    }

    /// Dunkl operators preserve polynomials exactly when every c_{o,0} = 0.
    pub fn polynomial_action(&self) -> Result<()> {
        match self.values.iter().position(|v| !v[0].is_zero()) {
            Some(o) => Err(Error::NotPolynomialAction(o)),
            None => Ok(()),
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Result<Self> {
        if self.values.len() != other.values.len()
            || self.values.iter().zip(&other.values).any(|(a, b)| a.len() != b.len())
        {
            return Err(Error::ParameterShape);
        }
        Ok(Parameter {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| f(x, y)).collect())
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Parameter {
            values: self
                .values
                .iter()
                .map(|v| v.iter().map(|x| x * s).collect())
                .collect(),
        }
    }

    /// Adds the integer t_o to every c_{o,j} with j != 0.
    pub fn translate(&self, shifts: &[i64]) -> Result<Self> {
        if shifts.len() != self.values.len() {
            return Err(Error::ParameterShape);
        }
        Ok(Parameter {
            values: self
                .values
                .iter()
                .zip(shifts)
                .map(|(v, &t)| {
                    v.iter()
                        .enumerate()
                        .map(|(j, x)| if j == 0 { x.clone() } else { x + rat(t, 1) })
                        .collect()
                })
                .collect(),
        })
    }
}

/// Permutes the index j within each orbit: (s x)_j = x_{s^{-1}(j)}.
fn permute(c: &Parameter, perms: &[Vec<usize>]) -> Result<Parameter> {
    let mut values = Vec::with_capacity(c.values.len());
    for (o, (v, s)) in c.values.iter().zip(perms).enumerate() {
        let nh = v.len();
        let mut seen = vec![false; nh];
        if s.len() != nh || s.iter().any(|&i| i >= nh || std::mem::replace(&mut seen[i], true)) {
            return Err(Error::MalformedPermutation(o));
        }
        let mut out = vec![Rational::zero(); nh];
        for (j, &sj) in s.iter().enumerate() {
            out[sj] = v[j].clone();
        }
        values.push(out);
    }
    Ok(Parameter { values })
}

/// s . c = s(c + rho) - rho, with one permutation of 0..n_H per orbit.
pub fn dot_action(g: &ReflectionGroup, perms: &[Vec<usize>], c: &Parameter) -> Result<Parameter> {
    if perms.len() != c.values.len() {
        return Err(Error::ParameterShape);
    }
    let rho = Parameter::rho(g);
    permute(&c.add(&rho)?, perms)?.sub(&rho)
}

/// sigma(c)_{H,0} = c_{H,0}; sigma(c)_{H,j} = c_{H,n_H-j} + 2(n_H - j)/n_H.
pub fn sigma(c: &Parameter) -> Parameter {
    Parameter {
        values: c
            .values
            .iter()
            .map(|v| {
                let nh = v.len();
                (0..nh)
                    .map(|j| {
                        if j == 0 {
                            v[0].clone()
                        } else {
                            &v[nh - j] + rat(2 * (nh - j) as i64, nh as i64)
                        }
                    })
                    .collect()
            })
            .collect(),
    }
}

/// c_E = (1/dim E) sum_{H,j} n_H c_{H,j} E_{H,j}, over all hyperplanes.
pub fn c_function(g: &ReflectionGroup, ld: &LocalData, dim: usize, c: &Parameter) -> Rational {
    let mut acc = Rational::zero();
    for ((row, orbit), cv) in ld.by_orbit.iter().zip(g.orbits()).zip(&c.values) {
        let weight = rat((orbit.size() * orbit.n_h) as i64, 1);
        for (j, &e) in row.iter().enumerate() {
            if e != 0 {
                acc += &weight * &cv[j] * rat(e as i64, 1);
            }
        }
    }
    acc / rat(dim as i64, 1)
}

pub fn c_function_of(g: &ReflectionGroup, e: &Representation, c: &Parameter) -> Result<Rational> {
    Ok(c_function(g, &local_data(g, e)?, e.dim(), c))
}

/// The locus c_{H,j} = 2j c_0 cut by c_{V*} = 1, with V* the degree-one
/// component of the polynomial ring.
#[derive(Clone, Debug, PartialEq)]
pub struct BaseParameter {
    pub c0: Rational,
    pub parameter: Parameter,
    /// Direction inside {c_{H,0} = 0, c_{V*} = 1} used for perturbations;
    /// `None` when that slice is a single point.
    pub direction: Option<Parameter>,
}

impl BaseParameter {
    /// base + eps * direction (the base itself without a direction).
    pub fn perturbed(&self, eps: &Rational) -> Parameter {
        match &self.direction {
            Some(d) if !eps.is_zero() => self.parameter.add(&d.scale(eps)).unwrap(),
            _ => self.parameter.clone(),
        }
    }
}

pub fn base_parameter(g: &ReflectionGroup) -> Result<BaseParameter> {
    let vd = Representation::new(g, RepKind::Dual)?;
    let ld = local_data(g, &vd)?;
    let unit = Parameter {
        values: g
            .orbits()
            .iter()
            .map(|o| (0..o.n_h).map(|j| rat(2 * j as i64, 1)).collect())
            .collect(),
    };
    let coef = c_function(g, &ld, vd.dim(), &unit);
    if coef.is_zero() {
        return Err(Error::DegenerateBase);
    }
    let c0 = coef.recip();
    let parameter = unit.scale(&c0);

    // Kernel of the linear functional c -> c_{V*} on the coordinates j >= 1.
    let coords: Vec<(usize, usize)> = g
        .orbits()
        .iter()
        .enumerate()
        .flat_map(|(o, orb)| (1..orb.n_h).map(move |j| (o, j)))
        .collect();
    let weights: Vec<Rational> = coords
        .iter()
        .map(|&(o, j)| {
            let mut e = Parameter::zero(g);
            e.values[o][j] = Rational::one();
            c_function(g, &ld, vd.dim(), &e)
        })
        .collect();
    let kernel = Matrix::from_rows(vec![weights])?.nullspace();
    let direction = if kernel.is_empty() {
        None
    } else {
        let mut d = Parameter::zero(g);
        for v in &kernel {
            for (&(o, j), x) in coords.iter().zip(v) {
                d.values[o][j] += x;
            }
        }
        Some(d)
    };
    Ok(BaseParameter {
        c0,
        parameter,
        direction,
    })
}
