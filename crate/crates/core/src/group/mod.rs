//! Reflection groups as explicit matrix groups, with their reflections,
//! reflecting hyperplanes, hyperplane orbits and basic invariants.

mod rep;
mod spec;

pub use rep::{is_amenable, local_data, Amenability, LocalData, RepKind, Representation};
pub use spec::GroupSpec;

use std::collections::{HashMap, VecDeque};

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactnum::{rat, CycNumber, Field, Matrix, Rational};
use crate::CycMatrix;

pub const DEFAULT_ORDER_CAP: usize = 10_000;

/// A reflecting hyperplane with its pointwise stabilizer.
#[derive(Clone, Debug)]
pub struct HyperplaneRecord {
    /// Covector alpha_H vanishing on H, first nonzero coordinate equal to 1.
    pub normal: Vec<CycNumber>,
    /// Indices of the elements fixing H pointwise (identity included).
    pub stabilizer: Vec<usize>,
    pub orbit: usize,
}

impl HyperplaneRecord {
    pub fn stabilizer_order(&self) -> usize {
        self.stabilizer.len()
    }
}

#[derive(Clone, Debug)]
pub struct OrbitRecord {
    pub hyperplanes: Vec<usize>,
    /// Common order n_H of the stabilizers in this orbit.
    pub n_h: usize,
}

impl OrbitRecord {
    pub fn size(&self) -> usize {
        self.hyperplanes.len()
    }
}

/// A finite complex reflection group with all of its elements enumerated.
/// Element 0 is the identity.
#[derive(Clone, Debug)]
pub struct ReflectionGroup {
    spec: GroupSpec,
    conductor: u32,
    rank: usize,
    elements: Vec<CycMatrix>,
    inverses: Vec<usize>,
    dets: Vec<CycNumber>,
    lookup: HashMap<CycMatrix, usize>,
    generators: Vec<usize>,
    reflections: Vec<usize>,
    hyperplanes: Vec<HyperplaneRecord>,
    orbits: Vec<OrbitRecord>,
    irreducible: bool,
    warnings: Vec<String>,
}

/// Order, reflection and hyperplane counts, and the two Coxeter-type numbers
/// h = (N + N*)/n and g = 2N/n.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupStats {
    pub order: usize,
    pub rank: usize,
    pub reflections: usize,
    pub hyperplanes: usize,
    pub h: Rational,
    pub g: Rational,
    pub warnings: Vec<String>,
}

impl GroupStats {
    pub fn g_integer(&self) -> Option<i64> {
        crate::exactnum::field::rational_to_i64(&self.g)
    }

    pub fn h_integer(&self) -> Option<i64> {
        crate::exactnum::field::rational_to_i64(&self.h)
    }
}

/// Classes of groups for which the degree duality `d_i + d_{n-i+1} = g + 2`
/// is asserted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualityClass {
    /// Complexified real reflection group (V is self-dual).
    Real,
    /// G(l, 1, n).
    FullMonomial,
    /// Generator-file group with a reflection of order > 2; taken to be primitive.
    PrimitiveHigherOrder,
    /// Everything else: identities are reported but not asserted.
    Other,
}

impl DualityClass {
    pub fn asserted(self) -> bool {
        self != DualityClass::Other
    }

    pub fn label(self) -> &'static str {
        match self {
            DualityClass::Real => "real",
            DualityClass::FullMonomial => "G(l,1,n)",
            DualityClass::PrimitiveHigherOrder => "primitive with reflections of order > 2",
            DualityClass::Other => "other",
        }
    }
}

pub fn build_group(spec: &GroupSpec) -> Result<ReflectionGroup> {
    build_group_with_cap(spec, DEFAULT_ORDER_CAP)
}

pub fn build_group_with_cap(spec: &GroupSpec, cap: usize) -> Result<ReflectionGroup> {
    let conductor = spec.conductor();
    let gens: Vec<CycMatrix> = spec
        .generators()
        .into_iter()
        .map(|g| g.map(|x| x.promote(conductor).expect("generator entries live in the declared field")))
        .collect();
    let n = spec.rank();
    for (i, g) in gens.iter().enumerate() {
        if g.det()?.is_zero() {
            return Err(Error::SingularGenerator(i));
        }
    }
    let identity: CycMatrix = Matrix::identity(n).map(|x: &CycNumber| x.promote(conductor).unwrap());

    // Product closure by breadth-first right multiplication.
    let mut elements = vec![identity.clone()];
    let mut lookup = HashMap::new();
    lookup.insert(identity, 0usize);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in &gens {
            let prod = &elements[i] * g;
            if !lookup.contains_key(&prod) {
                if elements.len() >= cap {
                    return Err(Error::CapExceeded(cap));
                }
                lookup.insert(prod.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(prod);
            }
        }
    }

    let generators: Vec<usize> = gens.iter().map(|g| lookup[g]).collect();
    let inverses: Vec<usize> = elements
        .par_iter()
        .map(|m| {
            let inv = m.inverse().expect("group elements are invertible");
            lookup[&inv]
        })
        .collect();
    let dets: Vec<CycNumber> = elements.par_iter().map(|m| m.det().unwrap()).collect();

    // Reflections: rank(w - I) = 1.
    let ident = &elements[0];
    let reflection_normals: Vec<Option<Vec<CycNumber>>> = elements
        .par_iter()
        .map(|m| {
            let d = m - ident;
            if d.rank() != 1 {
                return None;
            }
            let row = (0..n).map(|i| d.row(i)).find(|r| r.iter().any(|x| !x.is_zero()))?;
            Some(normalize_covector(row))
        })
        .collect();

    let mut hyperplanes: Vec<HyperplaneRecord> = Vec::new();
    let mut normal_index: HashMap<Vec<CycNumber>, usize> = HashMap::new();
    let mut reflections = Vec::new();
    for (i, normal) in reflection_normals.into_iter().enumerate() {
        let Some(normal) = normal else { continue };
        reflections.push(i);
        let h = *normal_index.entry(normal.clone()).or_insert_with(|| {
            hyperplanes.push(HyperplaneRecord {
                normal,
                stabilizer: vec![0],
                orbit: usize::MAX,
            });
            hyperplanes.len() - 1
        });
        hyperplanes[h].stabilizer.push(i);
    }
    if reflections.is_empty() {
        return Err(Error::NoReflections);
    }

    let mut warnings = Vec::new();

    // Cyclicity of each W_H: some element's determinant has order n_H.
    for (hi, h) in hyperplanes.iter().enumerate() {
        let nh = h.stabilizer.len() as u32;
        let cyclic = h
            .stabilizer
            .iter()
            .any(|&w| dets[w].multiplicative_order(nh) == Some(nh));
        if !cyclic {
            warnings.push(format!("stabilizer of hyperplane {hi} is not cyclic"));
        }
    }

    // Orbits of hyperplanes under the generators: alpha -> alpha . M^{-1}.
    let gen_inverses: Vec<&CycMatrix> = generators.iter().map(|&g| &elements[inverses[g]]).collect();
    let mut orbits: Vec<OrbitRecord> = Vec::new();
    for start in 0..hyperplanes.len() {
        if hyperplanes[start].orbit != usize::MAX {
            continue;
        }
        let id = orbits.len();
        hyperplanes[start].orbit = id;
        let mut members = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(h) = queue.pop_front() {
            for ginv in &gen_inverses {
                let image = normalize_covector(&ginv.left_apply(&hyperplanes[h].normal));
                let k = normal_index[&image];
                if hyperplanes[k].orbit == usize::MAX {
                    hyperplanes[k].orbit = id;
                    members.push(k);
                    queue.push_back(k);
                }
            }
        }
        members.sort_unstable();
        let n_h = hyperplanes[start].stabilizer.len();
        if members.iter().any(|&k| hyperplanes[k].stabilizer.len() != n_h) {
            warnings.push(format!("stabilizer orders vary within orbit {id}"));
        }
        orbits.push(OrbitRecord {
            hyperplanes: members,
            n_h,
        });
    }

    let irreducible = commutant_dimension(&gens)? == 1;
    if !irreducible {
        warnings.push("group acts reducibly (non-scalar matrices commute with all generators)".into());
    }

    Ok(ReflectionGroup {
        spec: spec.clone(),
        conductor,
        rank: n,
        elements,
        inverses,
        dets,
        lookup,
        generators,
        reflections,
        hyperplanes,
        orbits,
        irreducible,
        warnings,
    })
}

fn normalize_covector(row: &[CycNumber]) -> Vec<CycNumber> {
    let lead = row
        .iter()
        .find(|x| !x.is_zero())
        .expect("nonzero covector")
        .inv()
        .unwrap();
    row.iter().map(|x| x.clone() * &lead).collect()
}

/// Dimension of the space of matrices commuting with every generator.
fn commutant_dimension(gens: &[CycMatrix]) -> Result<usize> {
    let n = gens[0].rows();
    let mut rows = Vec::new();
    for g in gens {
        for i in 0..n {
            for j in 0..n {
                // (X g - g X)_{ij} as a linear form in X_{ab}
                let mut row = vec![CycNumber::zero(); n * n];
                for k in 0..n {
                    row[i * n + k] += g.get(k, j);
                    row[k * n + j] -= g.get(i, k);
                }
                rows.push(row);
            }
        }
    }
    let m = Matrix::from_rows(rows)?;
    Ok(n * n - m.rank())
}

impl ReflectionGroup {
    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[CycMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &CycMatrix {
        &self.elements[i]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverses[i]
    }

    pub fn det(&self, i: usize) -> &CycNumber {
        &self.dets[i]
    }

    pub fn index_of(&self, m: &CycMatrix) -> Option<usize> {
        self.lookup.get(m).copied()
    }

    pub fn product(&self, a: usize, b: usize) -> usize {
        self.lookup[&(&self.elements[a] * &self.elements[b])]
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generators
    }

    pub fn reflections(&self) -> &[usize] {
        &self.reflections
    }

    pub fn hyperplanes(&self) -> &[HyperplaneRecord] {
        &self.hyperplanes
    }

    pub fn orbits(&self) -> &[OrbitRecord] {
        &self.orbits
    }

    pub fn is_irreducible(&self) -> bool {
        self.irreducible
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Matrix of w on degree-one polynomials in the coordinate basis, where
    /// `(w.f)(v) = f(w^{-1} v)`: the inverse transpose of w.
    pub fn action_matrix(&self, w: usize) -> CycMatrix {
        self.elements[self.inverses[w]].transpose()
    }

    /// Substitution x -> M_w^{-1} x realizing `(w.f)(x) = f(w^{-1} x)`.
    pub fn substitution(&self, w: usize) -> &CycMatrix {
        &self.elements[self.inverses[w]]
    }

    /// Zero in the group's field.
    pub fn zero(&self) -> CycNumber {
        CycNumber::zero_in(self.conductor)
    }

    pub fn one(&self) -> CycNumber {
        CycNumber::one_in(self.conductor)
    }

    /// 1/|W| as a field element.
    pub fn inv_order(&self) -> CycNumber {
        CycNumber::rational_in(self.conductor, rat(1, self.order() as i64))
    }

    /// Largest order of an element's determinant among reflections.
    pub fn max_reflection_order(&self) -> usize {
        self.orbits.iter().map(|o| o.n_h).max().unwrap_or(1)
    }

    /// V is self-dual exactly when every character value is real.
    pub fn is_real(&self) -> bool {
        self.elements.iter().all(|m| {
            let t = m.trace();
            t.conj() == t
        })
    }

    pub fn duality_class(&self) -> DualityClass {
        if self.is_real() {
            return DualityClass::Real;
        }
        match self.spec.family_params() {
            Some((_, 1, _)) => DualityClass::FullMonomial,
            Some(_) => DualityClass::Other,
            None if self.max_reflection_order() > 2 => DualityClass::PrimitiveHigherOrder,
            None => DualityClass::Other,
        }
    }

    /// Copy of the group whose hyperplane normals are multiplied by the given
    /// nonzero scalars (one per hyperplane). Downstream results must not change.
    pub fn with_rescaled_normals(&self, scales: &[CycNumber]) -> Self {
        let mut g = self.clone();
        for (h, s) in g.hyperplanes.iter_mut().zip(scales) {
            h.normal = h.normal.iter().map(|x| x.clone() * s).collect();
        }
        g
    }
}

/// Order, counts and the numbers h and g, with closed-form cross-checks for
/// family groups recorded as warnings.
pub fn stats(g: &ReflectionGroup) -> GroupStats {
    let n = g.rank() as i64;
    let big_n = g.reflections().len() as i64;
    let big_n_star = g.hyperplanes().len() as i64;
    let h = rat(big_n + big_n_star, n);
    let gg = rat(2 * big_n, n);
    let mut warnings = g.warnings().to_vec();
    if !gg.is_integer() {
        warnings.push(format!("g = {} is not an integer", crate::exactnum::format_rational(&gg)));
    }
    if !h.is_integer() {
        warnings.push(format!("h = {} is not an integer", crate::exactnum::format_rational(&h)));
    }
    if let Some((l, m, n)) = g.spec().family_params() {
        let cf = FamilyClosedForms::new(l, m, n);
        if cf.order != g.order() as u128 {
            warnings.push(format!("order {} differs from l^n n!/m = {}", g.order(), cf.order));
        }
        if cf.reflections != big_n as u64 {
            warnings.push(format!("N = {big_n} differs from closed form {}", cf.reflections));
        }
        if cf.hyperplanes != big_n_star as u64 {
            warnings.push(format!("N* = {big_n_star} differs from closed form {}", cf.hyperplanes));
        }
        if Rational::from_integer(cf.g.into()) != gg {
            warnings.push(format!("g differs from l(n-1) + 2(l/m - 1) = {}", cf.g));
        }
    }
    GroupStats {
        order: g.order(),
        rank: g.rank(),
        reflections: big_n as usize,
        hyperplanes: big_n_star as usize,
        h,
        g: gg,
        warnings,
    }
}

/// Closed forms for G(l, m, n).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilyClosedForms {
    pub order: u128,
    pub reflections: u64,
    pub hyperplanes: u64,
    pub g: i64,
    /// Largest degree, max(l(n-1), nl/m).
    pub degrees_max: u64,
}

impl FamilyClosedForms {
    pub fn new(l: u32, m: u32, n: usize) -> Self {
        let (l64, m64, n64) = (l as u64, m as u64, n as u64);
        let fact: u128 = (1..=n as u128).product();
        let order = (l as u128).pow(n as u32) * fact / m as u128;
        let q = l64 / m64;
        let reflections = l64 * n64 * (n64 - 1) / 2 + n64 * (q - 1);
        let hyperplanes = l64 * n64 * (n64 - 1) / 2 + if q > 1 { n64 } else { 0 };
        let g = (l64 * (n64 - 1) + 2 * (q - 1)) as i64;
        FamilyClosedForms {
            order,
            reflections,
            hyperplanes,
            g,
            degrees_max: (l64 * (n64 - 1)).max(n64 * q),
        }
    }

    pub fn degrees(l: u32, m: u32, n: usize) -> Vec<u64> {
        let mut d: Vec<u64> = (1..n as u64).map(|i| i * l as u64).collect();
        d.push(n as u64 * (l / m) as u64);
        d.sort_unstable();
        d
    }
}
