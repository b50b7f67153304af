//! Bigraded Hilbert series of the diagonal coinvariant ring
//! C[x_1..x_n, y_1..y_n] / (positive-degree diagonal invariants), by exact
//! linear algebra in each bidegree.
//!
//! The x variables carry the polynomial action x -> M_w^{-1} x and the y
//! variables the contragredient y -> M_w^T y, so sum_i x_i y_i is invariant.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::cherednik::{monomials_of_degree, substitution_matrix, Monomial};
use crate::error::{Error, Result};
use crate::exactnum::{CycNumber, EchelonBasis, Matrix};
use crate::group::ReflectionGroup;
use crate::{CycMatrix, MultiPoly};

pub const DEFAULT_ORDER_CAP: usize = 50;
pub const DEFAULT_COMPONENT_CAP: usize = 4000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub order_cap: usize,
    pub component_cap: usize,
    /// Largest total degree a + b swept; `None` means 4N.
    pub antidiagonal_cap: Option<usize>,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            order_cap: DEFAULT_ORDER_CAP,
            component_cap: DEFAULT_COMPONENT_CAP,
            antidiagonal_cap: None,
        }
    }
}

/// Dimensions of the bigraded pieces of R_W.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradedTable {
    /// (x-degree, y-degree) -> dim R_W^{(a,b)}; zero entries inside the swept
    /// region are kept.
    pub entries: BTreeMap<(usize, usize), usize>,
    /// (x-degree, y-degree) -> multiplicity of det in R_W^{(a,b)}.
    pub det_entries: BTreeMap<(usize, usize), usize>,
    pub completed: bool,
    pub total: usize,
    /// Largest a + b with a nonzero entry.
    pub top_degree: usize,
    /// The antidiagonal after the first zero one was also computed and is zero.
    pub zero_propagation_checked: bool,
}

impl BigradedTable {
    pub fn get(&self, a: usize, b: usize) -> usize {
        self.entries.get(&(a, b)).copied().unwrap_or(0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.entries.iter().all(|(&(a, b), &v)| self.get(b, a) == v)
    }

    /// Sum of the pure-x entries (b = 0).
    pub fn x_margin(&self) -> usize {
        self.entries.iter().filter(|((_, b), _)| *b == 0).map(|(_, v)| v).sum()
    }

    /// Sum of the pure-y entries (a = 0).
    pub fn y_margin(&self) -> usize {
        self.entries.iter().filter(|((a, _), _)| *a == 0).map(|(_, v)| v).sum()
    }

    pub fn det_multiplicity(&self) -> usize {
        self.det_entries.values().sum()
    }

    /// Every zero entry has zero right and upper neighbours (where computed).
    pub fn zero_propagates(&self) -> bool {
        self.entries.iter().all(|(&(a, b), &v)| {
            v != 0
                || self.entries.get(&(a + 1, b)).map_or(true, |&x| x == 0)
                    && self.entries.get(&(a, b + 1)).map_or(true, |&x| x == 0)
        })
    }

    /// `a,b,dim,det` lines sorted by (a, b).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("a,b,dim,det\n");
        for (&(a, b), &v) in &self.entries {
            let d = self.det_entries.get(&(a, b)).copied().unwrap_or(0);
            out.push_str(&format!("{a},{b},{v},{d}\n"));
        }
        out
    }
}

/// Per-degree action matrices of every element on x- and y-monomials.
struct ActionCache<'a> {
    g: &'a ReflectionGroup,
    x: HashMap<usize, (Vec<Monomial>, Vec<CycMatrix>)>,
    y: HashMap<usize, (Vec<Monomial>, Vec<CycMatrix>)>,
    y_subs: Vec<CycMatrix>,
}

impl<'a> ActionCache<'a> {
    fn new(g: &'a ReflectionGroup) -> Self {
        ActionCache {
            g,
            x: HashMap::new(),
            y: HashMap::new(),
            y_subs: g.elements().iter().map(Matrix::transpose).collect(),
        }
    }

    fn ensure(&mut self, d: usize) {
        let g = self.g;
        let n = g.rank();
        let one = g.one();
        if !self.x.contains_key(&d) {
            let basis = monomials_of_degree(n, d as u32);
            let mats = (0..g.order())
                .into_par_iter()
                .map(|w| substitution_matrix(g.substitution(w), &basis, &one))
                .collect();
            self.x.insert(d, (basis, mats));
        }
        if !self.y.contains_key(&d) {
            let basis = monomials_of_degree(n, d as u32);
            let subs = &self.y_subs;
            let mats = (0..g.order())
                .into_par_iter()
                .map(|w| substitution_matrix(&subs[w], &basis, &one))
                .collect();
            self.y.insert(d, (basis, mats));
        }
    }

    /// (1/|W|) sum_w weight(w) rho_x(w) (x) rho_y(w) on bidegree (a, b).
    /// Row/column index: ix * |y-basis| + iy.
    fn projector(&self, a: usize, b: usize, weight: impl Fn(usize) -> CycNumber + Sync) -> CycMatrix {
        let g = self.g;
        let (xb, xm) = &self.x[&a];
        let (yb, ym) = &self.y[&b];
        let (sx, sy) = (xb.len(), yb.len());
        let s = sx * sy;
        let columns: Vec<Vec<CycNumber>> = (0..s)
            .into_par_iter()
            .map(|col| {
                let (jx, jy) = (col / sy, col % sy);
                let mut v = vec![g.zero(); s];
                for w in 0..g.order() {
                    let wt = weight(w);
                    if num_traits::Zero::is_zero(&wt) {
                        continue;
                    }
                    for ix in 0..sx {
                        let ax = xm[w].get(ix, jx);
                        if num_traits::Zero::is_zero(ax) {
                            continue;
                        }
                        let f = wt.clone() * ax;
                        for iy in 0..sy {
                            let ay = ym[w].get(iy, jy);
                            if !num_traits::Zero::is_zero(ay) {
                                v[ix * sy + iy] += &(f.clone() * ay);
                            }
                        }
                    }
                }
                let inv = g.inv_order();
                v.into_iter().map(|c| c * &inv).collect()
            })
            .collect();
        Matrix::from_rows(columns).unwrap().transpose()
    }

    fn size(&self, a: usize, b: usize) -> usize {
        self.x[&a].0.len() * self.y[&b].0.len()
    }
}

fn columns_of(m: &CycMatrix) -> Vec<Vec<CycNumber>> {
    m.transpose().entries().chunks(m.rows().max(1)).map(<[CycNumber]>::to_vec).collect()
}

fn poly_from_vector(g: &ReflectionGroup, xb: &[Monomial], yb: &[Monomial], v: &[CycNumber]) -> MultiPoly {
    let n = g.rank();
    let mut p = MultiPoly::zero(2 * n);
    for (k, c) in v.iter().enumerate() {
        let (ix, iy) = (k / yb.len(), k % yb.len());
        let mut m = xb[ix].clone();
        m.extend_from_slice(&yb[iy]);
        p.add_term(m, c.clone());
    }
    p
}

/// Basis of the W-invariants of bidegree (a, b), as polynomials in
/// (x_1..x_n, y_1..y_n).
pub fn invariant_component(g: &ReflectionGroup, a: usize, b: usize, component_cap: usize) -> Result<Vec<MultiPoly>> {
    let mut cache = ActionCache::new(g);
    cache.ensure(a);
    cache.ensure(b);
    let size = cache.size(a, b);
    if size > component_cap {
        return Err(Error::ComponentCap { size, cap: component_cap });
    }
    let reynolds = cache.projector(a, b, |_| g.one());
    let mut basis = EchelonBasis::new(size);
    for col in columns_of(&reynolds) {
        basis.insert(col);
    }
    let (xb, yb) = (&cache.x[&a].0, &cache.y[&b].0);
    Ok(basis.rows().map(|v| poly_from_vector(g, xb, yb, v)).collect())
}

/// Index maps for multiplication by x_i (or y_i) from degree d to d + 1.
fn shift_maps(n: usize, from: &[Monomial], to: &[Monomial]) -> Vec<Vec<usize>> {
    let index: HashMap<&Monomial, usize> = to.iter().enumerate().map(|(i, m)| (m, i)).collect();
    (0..n)
        .map(|i| {
            from.iter()
                .map(|m| {
                    let mut e = m.clone();
                    e[i] += 1;
                    index[&e]
                })
                .collect()
        })
        .collect()
}

struct Component {
    ideal: EchelonBasis<CycNumber>,
}

pub fn hilbert_table(g: &ReflectionGroup) -> Result<BigradedTable> {
    hilbert_table_with(g, OracleConfig::default())
}

pub fn hilbert_table_with(g: &ReflectionGroup, cfg: OracleConfig) -> Result<BigradedTable> {
    if g.order() > cfg.order_cap {
        return Err(Error::OracleOrderCap {
            order: g.order(),
            cap: cfg.order_cap,
        });
    }
    let n = g.rank();
    let cap = cfg.antidiagonal_cap.unwrap_or(4 * g.reflections().len());
    let mut cache = ActionCache::new(g);
    let mut prev: HashMap<(usize, usize), Component> = HashMap::new();
    let mut entries = BTreeMap::new();
    let mut det_entries = BTreeMap::new();
    let mut first_zero: Option<usize> = None;
    let mut zero_propagation_checked = false;
    for t in 0..=cap + 1 {
        cache.ensure(t);
        for a in 0..=t {
            let size = cache.size(a, t - a);
            if size > cfg.component_cap {
                return Err(Error::ComponentCap {
                    size,
                    cap: cfg.component_cap,
                });
            }
        }
        let cache_ref = &cache;
        let prev_ref = &prev;
        let results: Vec<((usize, usize), Component, usize, usize)> = (0..=t)
            .into_par_iter()
            .map(|a| {
                let b = t - a;
                let size = cache_ref.size(a, b);
                let mut ideal = EchelonBasis::new(size);
                if t > 0 {
                    let (xb, yb) = (&cache_ref.x[&a].0, &cache_ref.y[&b].0);
                    let sy = yb.len();
                    if a > 0 {
                        let lower = &cache_ref.x[&(a - 1)].0;
                        let maps = shift_maps(n, lower, xb);
                        let lower_sy = sy;
                        for v in prev_ref[&(a - 1, b)].ideal.rows() {
                            for map in &maps {
                                let mut out = vec![g.zero(); size];
                                for (k, c) in v.iter().enumerate() {
                                    if !num_traits::Zero::is_zero(c) {
                                        let (ix, iy) = (k / lower_sy, k % lower_sy);
                                        out[map[ix] * sy + iy] = c.clone();
                                    }
                                }
                                ideal.insert(out);
                            }
                        }
                    }
                    if b > 0 {
                        let lower = &cache_ref.y[&(b - 1)].0;
                        let maps = shift_maps(n, lower, yb);
                        let lower_sy = lower.len();
                        for v in prev_ref[&(a, b - 1)].ideal.rows() {
                            for map in &maps {
                                let mut out = vec![g.zero(); size];
                                for (k, c) in v.iter().enumerate() {
                                    if !num_traits::Zero::is_zero(c) {
                                        let (ix, iy) = (k / lower_sy, k % lower_sy);
                                        out[ix * sy + map[iy]] = c.clone();
                                    }
                                }
                                ideal.insert(out);
                            }
                        }
                    }
                    if !ideal.is_full() {
                        for col in columns_of(&cache_ref.projector(a, b, |_| g.one())) {
                            ideal.insert(col);
                        }
                    }
                }
                let dim = size - ideal.len();
                let det = if dim == 0 {
                    0
                } else {
                    let mut with_det = ideal.clone();
                    for col in columns_of(&cache_ref.projector(a, b, |w| g.det(g.inverse(w)).clone())) {
                        with_det.insert(col);
                    }
                    with_det.len() - ideal.len()
                };
                ((a, b), Component { ideal }, dim, det)
            })
            .collect();
        let mut next = HashMap::new();
        let mut all_zero = true;
        for (key, comp, dim, det) in results {
            all_zero &= dim == 0;
            entries.insert(key, dim);
            det_entries.insert(key, det);
            next.insert(key, comp);
        }
        prev = next;
        match first_zero {
            None if all_zero => first_zero = Some(t),
            Some(_) => {
                zero_propagation_checked = all_zero;
                break;
            }
            None => {}
        }
        if first_zero.is_none() && t == cap {
            return Err(Error::AntidiagonalCap(cap));
        }
    }
    let top_degree = entries
        .iter()
        .filter(|(_, &v)| v > 0)
        .map(|(&(a, b), _)| a + b)
        .max()
        .unwrap_or(0);
    let total = entries.values().sum();
    Ok(BigradedTable {
        entries,
        det_entries,
        completed: first_zero.is_some(),
        total,
        top_degree,
        zero_propagation_checked,
    })
}

/// Total multiplicity of det in R_W.
pub fn det_multiplicity_rw(g: &ReflectionGroup) -> Result<usize> {
    Ok(hilbert_table(g)?.det_multiplicity())
}
