use std::collections::HashMap;

use rayon::prelude::*;

use crate::cherednik::poly::{monomials_of_degree, substitution_matrix, Monomial};
use crate::cherednik::{DunklOperators, Parameter};
use crate::error::{Error, Result};
use crate::exactnum::{CycNumber, Field, Matrix};
use crate::group::{stats, RepKind, ReflectionGroup, Representation};
use crate::{CycMatrix, MultiPoly};

/// One degree of the contravariant form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramLayer {
    pub degree: usize,
    /// Number of monomials of this degree.
    pub size: usize,
    pub rank: usize,
    /// Rank on the det-isotypic part of the polynomial layer.
    pub det_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramReport {
    /// Layers 0..=termination, the last one of rank 0.
    pub layers: Vec<GramLayer>,
    pub total: usize,
    pub det_multiplicity: usize,
    pub termination_degree: usize,
}

impl GramReport {
    pub fn ranks(&self) -> Vec<usize> {
        self.layers.iter().map(|l| l.rank).collect()
    }
}

fn coordinates(p: &MultiPoly, index: &HashMap<Monomial, usize>, zero: &CycNumber) -> Vec<CycNumber> {
    let mut v = vec![zero.clone(); index.len()];
    for (m, c) in p.terms() {
        v[index[m]] = c.clone();
    }
    v
}

fn index_of(basis: &[Monomial]) -> HashMap<Monomial, usize> {
    basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect()
}

/// Matrix of w on degree-d polynomials (columns: images of the basis
/// monomials), for the action f -> f(w^{-1} x).
pub fn degree_action_matrix(g: &ReflectionGroup, w: usize, basis: &[Monomial]) -> CycMatrix {
    substitution_matrix(g.substitution(w), basis, &g.one())
}

/// (1/|W|) sum_w weight(w) rho_d(w).
fn isotype_projector(g: &ReflectionGroup, basis: &[Monomial], weight: impl Fn(usize) -> CycNumber + Sync) -> CycMatrix {
    let s = basis.len();
    let parts: Vec<CycMatrix> = (0..g.order())
        .into_par_iter()
        .map(|w| degree_action_matrix(g, w, basis).scale(&weight(w)))
        .collect();
    let mut acc = Matrix::from_fn(s, s, |_, _| g.zero());
    for p in &parts {
        acc = Matrix::from_fn(s, s, |i, j| acc.get(i, j).clone() + p.get(i, j));
    }
    acc.scale(&g.inv_order())
}

/// Projector onto the det-isotypic part of the degree-d layer.
pub fn det_projector(g: &ReflectionGroup, basis: &[Monomial]) -> CycMatrix {
    isotype_projector(g, basis, |w| g.det(g.inverse(w)).clone())
}

/// Row projector paired with [`det_projector`]: det^{+1} weights on the
/// action y -> M_w^T y of the dual variables.
pub fn det_row_projector(g: &ReflectionGroup, basis: &[Monomial]) -> CycMatrix {
    let s = basis.len();
    let parts: Vec<CycMatrix> = (0..g.order())
        .into_par_iter()
        .map(|w| substitution_matrix(&g.element(w).transpose(), basis, &g.one()).scale(g.det(w)))
        .collect();
    let mut acc = Matrix::from_fn(s, s, |_, _| g.zero());
    for p in &parts {
        acc = Matrix::from_fn(s, s, |i, j| acc.get(i, j).clone() + p.get(i, j));
    }
    acc.scale(&g.inv_order())
}

/// Matrices of D_1..D_n from degree d to degree d - 1 (columns indexed by
/// the degree-d monomials).
pub(crate) fn layer_maps(
    ops: &DunklOperators,
    basis: &[Monomial],
    lower: &[Monomial],
    one: &CycNumber,
    zero: &CycNumber,
) -> Result<Vec<CycMatrix>> {
    let n = ops.nvars();
    let lower_index = index_of(lower);
    let polys: Vec<MultiPoly> = basis
        .iter()
        .map(|m| MultiPoly::monomial(n, m.clone(), one.clone()))
        .collect();
    let images = ops.apply_all_par(&polys)?;
    (0..n)
        .map(|i| {
            let cols: Vec<Vec<CycNumber>> = images
                .iter()
                .map(|imgs| coordinates(&imgs[i], &lower_index, zero))
                .collect();
            Ok(Matrix::from_rows(cols)?.transpose())
        })
        .collect()
}

/// Builds the form layer by layer. `stop_at_zero` ends at the first rank-0
/// layer; otherwise layers 0..=max_degree are all computed.
fn build_layers(
    g: &ReflectionGroup,
    c: &Parameter,
    max_degree: usize,
    stop_at_zero: bool,
    with_det: bool,
) -> Result<(Vec<GramLayer>, Vec<CycMatrix>)> {
    let n = g.rank();
    let ops = DunklOperators::new(g, c)?;
    let one = g.one();
    let zero = g.zero();
    let mut layers = vec![GramLayer {
        degree: 0,
        size: 1,
        rank: 1,
        det_rank: usize::from(g.order() == 1),
    }];
    let mut forms = vec![Matrix::from_fn(1, 1, |_, _| one.clone())];
    let mut lower = monomials_of_degree(n, 0);
    for d in 1..=max_degree {
        let basis = monomials_of_degree(n, d as u32);
        let maps = layer_maps(&ops, &basis, &lower, &one, &zero)?;
        let lower_index = index_of(&lower);
        let prev = forms.last().unwrap();
        // Row mu: form_{d-1}[mu - e_i] * L_i with i the first nonzero index of mu.
        let rows: Vec<Vec<CycNumber>> = basis
            .par_iter()
            .map(|mu| {
                let i = mu.iter().position(|&e| e > 0).unwrap();
                let mut m = mu.clone();
                m[i] -= 1;
                let r = prev.row(lower_index[&m]);
                maps[i].left_apply(r)
            })
            .collect();
        let form = Matrix::from_rows(rows)?;
        let rank = form.rank();
        let det_rank = if with_det && rank > 0 {
            (&form * &det_projector(g, &basis)).rank()
        } else {
            0
        };
        layers.push(GramLayer {
            degree: d,
            size: basis.len(),
            rank,
            det_rank,
        });
        forms.push(form);
        lower = basis;
        if stop_at_zero && rank == 0 {
            return Ok((layers, forms));
        }
    }
    if stop_at_zero {
        return Err(Error::GramCap(max_degree));
    }
    Ok((layers, forms))
}

/// Default cap n(g + 2) on the degree.
pub fn default_gram_cap(g: &ReflectionGroup) -> usize {
    let gg = stats(g).g;
    let gi = (gg.ceil().to_integer()).try_into().unwrap_or(0usize);
    g.rank() * (gi + 2)
}

/// Ranks of the form per degree; their sum is dim L_c(triv).
pub fn gram_and_dimension(g: &ReflectionGroup, c: &Parameter) -> Result<GramReport> {
    gram_with_cap(g, c, default_gram_cap(g))
}

pub fn gram_with_cap(g: &ReflectionGroup, c: &Parameter, cap: usize) -> Result<GramReport> {
    let (layers, _) = build_layers(g, c, cap, true, true)?;
    let total = layers.iter().map(|l| l.rank).sum();
    let det_multiplicity = layers.iter().map(|l| l.det_rank).sum();
    let termination_degree = layers.last().unwrap().degree;
    Ok(GramReport {
        layers,
        total,
        det_multiplicity,
        termination_degree,
    })
}

/// All layers 0..=max_degree without stopping, with the form matrices.
pub fn gram_layers(g: &ReflectionGroup, c: &Parameter, max_degree: usize) -> Result<(Vec<GramLayer>, Vec<CycMatrix>)> {
    build_layers(g, c, max_degree, false, false)
}

/// Total multiplicity of det in L_c(triv).
pub fn det_multiplicity_l(g: &ReflectionGroup, c: &Parameter) -> Result<usize> {
    Ok(gram_and_dimension(g, c)?.det_multiplicity)
}

/// Joint kernel of the Dunkl operators on one degree.
#[derive(Clone, Debug, PartialEq)]
pub struct SingularSubspace {
    pub degree: usize,
    pub dim: usize,
    /// Character of W on the kernel, per element.
    pub characters: Vec<CycNumber>,
    /// Multiplicity of V in the kernel.
    pub mult_v: usize,
    /// Multiplicity of V* in the kernel.
    pub mult_v_dual: usize,
}

impl SingularSubspace {
    /// Contains a copy of V or V*.
    pub fn has_reflection_submodule(&self) -> bool {
        self.mult_v > 0 || self.mult_v_dual > 0
    }
}

fn multiplicity(g: &ReflectionGroup, chi: &[CycNumber], e: &Representation) -> Result<usize> {
    let mut acc = g.zero();
    for (w, x) in chi.iter().enumerate() {
        acc += &(x.clone() * &e.character(w).conj());
    }
    let v = (acc * &g.inv_order()).to_rational();
    v.as_ref()
        .and_then(crate::exactnum::field::rational_to_i64)
        .filter(|&m| m >= 0)
        .map(|m| m as usize)
        .ok_or_else(|| Error::DimensionMismatch(format!("non-integral multiplicity of {} in kernel", e.name())))
}

pub fn singular_subspace(g: &ReflectionGroup, c: &Parameter, degree: usize) -> Result<SingularSubspace> {
    let n = g.rank();
    let ops = DunklOperators::new(g, c)?;
    let one = g.one();
    let zero = g.zero();
    let basis = monomials_of_degree(n, degree as u32);
    let (kernel, free): (Vec<Vec<CycNumber>>, Vec<usize>) = if degree == 0 {
        (vec![vec![one.clone()]], vec![0])
    } else {
        let lower = monomials_of_degree(n, degree as u32 - 1);
        let maps = layer_maps(&ops, &basis, &lower, &one, &zero)?;
        let mut stacked = maps[0].clone();
        for m in &maps[1..] {
            stacked = stacked.vstack(m)?;
        }
        (stacked.nullspace(), stacked.free_columns())
    };
    let dim = kernel.len();
    let characters: Vec<CycNumber> = if dim == 0 {
        vec![zero.clone(); g.order()]
    } else {
        (0..g.order())
            .into_par_iter()
            .map(|w| {
                let rho = degree_action_matrix(g, w, &basis);
                let mut tr = g.zero();
                for (j, k) in kernel.iter().enumerate() {
                    let img = rho.apply(k);
                    tr += &img[free[j]];
                }
                tr
            })
            .collect()
    };
    let v = Representation::new(g, RepKind::Defining)?;
    let vd = Representation::new(g, RepKind::Dual)?;
    Ok(SingularSubspace {
        degree,
        dim,
        mult_v: if dim == 0 { 0 } else { multiplicity(g, &characters, &v)? },
        mult_v_dual: if dim == 0 { 0 } else { multiplicity(g, &characters, &vd)? },
        characters,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cherednik::{base_parameter, sigma};
    use crate::exactnum::rat;
    use crate::group::{build_group, GroupSpec};

    fn fam(l: u32, m: u32, n: usize) -> ReflectionGroup {
        build_group(&GroupSpec::family(l, m, n).unwrap()).unwrap()
    }

    #[test]
    fn rank_one_sigma_base() {
        let g = fam(2, 1, 1);
        let c = sigma(&base_parameter(&g).unwrap().parameter);
        let r = gram_and_dimension(&g, &c).unwrap();
        assert_eq!(r.ranks(), vec![1, 1, 1, 0]);
        assert_eq!(r.total, 3);
        assert_eq!(r.det_multiplicity, 1);
    }

    #[test]
    fn zero_parameter_has_no_singular_vectors() {
        let g = fam(3, 3, 2);
        let c = Parameter::zero(&g);
        for d in 1..4 {
            assert_eq!(singular_subspace(&g, &c, d).unwrap().dim, 0);
        }
    }

    #[test]
    fn g212_singular_reflection_module() {
        let g = fam(2, 1, 2);
        let c = sigma(&base_parameter(&g).unwrap().parameter);
        let s = singular_subspace(&g, &c, 5).unwrap();
        assert!(s.dim >= 2);
        assert!(s.has_reflection_submodule());
    }

    #[test]
    fn cap_error() {
        let g = fam(2, 1, 1);
        let c = Parameter::new(&g, vec![vec![rat(0, 1), rat(1, 3)]]).unwrap();
        assert!(matches!(gram_with_cap(&g, &c, 6), Err(Error::GramCap(6))));
    }

    #[test]
    fn row_and_column_det_projectors_agree() {
        let g = fam(3, 3, 2);
        let c = sigma(&base_parameter(&g).unwrap().parameter);
        let (_, forms) = gram_layers(&g, &c, 4).unwrap();
        for (d, form) in forms.iter().enumerate().skip(1) {
            let basis = monomials_of_degree(2, d as u32);
            let col = &(*form) * &det_projector(&g, &basis);
            let row = &det_row_projector(&g, &basis).transpose() * form;
            let both = &row * &det_projector(&g, &basis);
            assert_eq!(col.rank(), both.rank(), "degree {d}");
        }
    }

    #[test]
    fn degree_action_is_a_homomorphism() {
        let g = fam(3, 1, 2);
        let basis = monomials_of_degree(2, 3);
        for (a, b) in [(1, 2), (5, 7), (3, 17)] {
            let ab = g.product(a, b);
            let lhs = degree_action_matrix(&g, ab, &basis);
            let rhs = &degree_action_matrix(&g, a, &basis) * &degree_action_matrix(&g, b, &basis);
            assert_eq!(lhs, rhs);
        }
    }
}
