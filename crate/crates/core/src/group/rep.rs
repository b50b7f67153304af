use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactnum::{field::rational_to_i64, CycNumber, Field, Matrix};
use crate::group::ReflectionGroup;
use crate::CycMatrix;

/// Built-in representations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RepKind {
    Trivial,
    /// V: w acts by its defining matrix.
    Defining,
    /// V*: w acts by the inverse transpose.
    Dual,
    Det,
    DetInverse,
    /// Exterior power of V.
    Exterior(usize),
}

impl RepKind {
    pub fn name(self) -> String {
        match self {
            RepKind::Trivial => "triv".into(),
            RepKind::Defining => "V".into(),
            RepKind::Dual => "V*".into(),
            RepKind::Det => "det".into(),
            RepKind::DetInverse => "det^-1".into(),
            RepKind::Exterior(k) => format!("wedge^{k} V"),
        }
    }
}

/// A representation with explicit matrices for every group element.
#[derive(Clone, Debug)]
pub struct Representation {
    kind: RepKind,
    dim: usize,
    matrices: Vec<CycMatrix>,
    characters: Vec<CycNumber>,
}

impl Representation {
    pub fn new(g: &ReflectionGroup, kind: RepKind) -> Result<Self> {
        let n = g.rank();
        if let RepKind::Exterior(k) = kind {
            if k > n {
                return Err(Error::DimensionMismatch(format!("wedge^{k} of a rank-{n} space")));
            }
        }
        let matrices: Vec<CycMatrix> = (0..g.order())
            .into_par_iter()
            .map(|w| -> Result<CycMatrix> {
                let one_by_one = |x: CycNumber| Matrix::from_fn(1, 1, |_, _| x.clone());
                Ok(match kind {
                    RepKind::Trivial => one_by_one(g.one()),
                    RepKind::Defining => g.element(w).clone(),
                    RepKind::Dual => g.element(g.inverse(w)).transpose(),
                    RepKind::Det => one_by_one(g.det(w).clone()),
                    RepKind::DetInverse => one_by_one(g.det(g.inverse(w)).clone()),
                    RepKind::Exterior(k) => g.element(w).compound(k)?,
                })
            })
            .collect::<Result<_>>()?;
        let dim = matrices[0].rows();
        let characters = matrices.iter().map(Matrix::trace).collect();
        Ok(Representation {
            kind,
            dim,
            matrices,
            characters,
        })
    }

    pub fn kind(&self) -> RepKind {
        self.kind
    }

    pub fn name(&self) -> String {
        self.kind.name()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, w: usize) -> &CycMatrix {
        &self.matrices[w]
    }

    pub fn character(&self, w: usize) -> &CycNumber {
        &self.characters[w]
    }

    pub fn characters(&self) -> &[CycNumber] {
        &self.characters
    }

    /// Checks rho(a) rho(b) = rho(ab) on the given pairs.
    pub fn is_multiplicative_on(&self, g: &ReflectionGroup, pairs: &[(usize, usize)]) -> bool {
        pairs
            .iter()
            .all(|&(a, b)| &self.matrices[a] * &self.matrices[b] == self.matrices[g.product(a, b)])
    }
}

/// Local data E_{H,j}, one row per hyperplane orbit, indexed by j < n_H.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalData {
    pub rep: String,
    pub by_orbit: Vec<Vec<usize>>,
}

/// Projector trace (1/n_H) sum_{w in W_H} det(w)^{-j} chi_E(w) for every
/// hyperplane; entries must be nonnegative integers, constant on orbits.
pub fn local_data(g: &ReflectionGroup, e: &Representation) -> Result<LocalData> {
    let mut by_orbit: Vec<Option<Vec<usize>>> = vec![None; g.orbits().len()];
    for (hi, h) in g.hyperplanes().iter().enumerate() {
        let nh = h.stabilizer_order();
        let mut row = Vec::with_capacity(nh);
        for j in 0..nh {
            let mut acc = g.zero();
            for &w in &h.stabilizer {
                acc += &(g.det(w).pow(-(j as i64)) * e.character(w));
            }
            let value = acc.to_rational().map(|r| r / crate::exactnum::rat(nh as i64, 1));
            let as_int = value
                .as_ref()
                .and_then(rational_to_i64)
                .filter(|&v| v >= 0);
            match as_int {
                Some(v) => row.push(v as usize),
                None => {
                    return Err(Error::NonIntegralLocalData {
                        rep: e.name(),
                        hyperplane: hi,
                        j,
                        value: value
                            .map(|r| crate::exactnum::format_rational(&r))
                            .unwrap_or_else(|| format!("{acc}")),
                    })
                }
            }
        }
        match &by_orbit[h.orbit] {
            None => by_orbit[h.orbit] = Some(row),
            Some(prev) if *prev == row => {}
            Some(_) => {
                return Err(Error::NonIntegralLocalData {
                    rep: e.name(),
                    hyperplane: hi,
                    j: 0,
                    value: "local data not constant on the orbit".into(),
                })
            }
        }
    }
    Ok(LocalData {
        rep: e.name(),
        by_orbit: by_orbit.into_iter().map(Option::unwrap).collect(),
    })
}

/// C(H, E) = sum_j j E_{H,j} per orbit, with the amenability verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Amenability {
    pub amenable: bool,
    /// (C(H,E), n_H - 1) per orbit.
    pub table: Vec<(usize, usize)>,
}

pub fn is_amenable(g: &ReflectionGroup, e: &Representation) -> Result<Amenability> {
    let ld = local_data(g, e)?;
    let table: Vec<(usize, usize)> = ld
        .by_orbit
        .iter()
        .zip(g.orbits())
        .map(|(row, o)| (row.iter().enumerate().map(|(j, v)| j * v).sum(), o.n_h - 1))
        .collect();
    Ok(Amenability {
        amenable: table.iter().all(|(c, b)| c <= b),
        table,
    })
}
