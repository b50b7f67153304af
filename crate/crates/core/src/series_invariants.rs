//! Molien series, degrees, fake degrees, coexponents, the numerology
//! identities, and Koszul-type graded characters.

use std::collections::HashMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactnum::{char_det_series, field::rational_to_i64, rat, CycNumber, Field, Rational, Series};
use crate::group::{stats, DualityClass, RepKind, ReflectionGroup, Representation};
use crate::{CycSeries, RationalSeries};

/// Default truncation 2(N + n + 2); fake-degree polynomials have degree <= N.
pub fn default_truncation(g: &ReflectionGroup) -> usize {
    2 * (g.reflections().len() + g.rank() + 2)
}

/// Expansions of 1/det(1 - t A_w) for the degree-one action, shared between
/// elements with the same characteristic polynomial.
struct ReciprocalTable {
    by_element: Vec<usize>,
    series: Vec<CycSeries>,
}

fn reciprocal_table(g: &ReflectionGroup, trunc: usize) -> Result<ReciprocalTable> {
    let polys: Vec<Vec<CycNumber>> = (0..g.order())
        .into_par_iter()
        .map(|w| g.action_matrix(w).eigen_elementary())
        .collect::<Result<_>>()?;
    let mut index: HashMap<&[CycNumber], usize> = HashMap::new();
    let mut distinct: Vec<&[CycNumber]> = Vec::new();
    let by_element = polys
        .iter()
        .map(|p| {
            *index.entry(p.as_slice()).or_insert_with(|| {
                distinct.push(p.as_slice());
                distinct.len() - 1
            })
        })
        .collect();
    let series = distinct
        .par_iter()
        .map(|e| {
            let unit: Vec<CycNumber> = e
                .iter()
                .enumerate()
                .map(|(k, ek)| if k % 2 == 0 { ek.clone() } else { -ek.clone() })
                .collect();
            Series::from_poly(&unit, trunc).reciprocal()
        })
        .collect::<Result<_>>()?;
    Ok(ReciprocalTable { by_element, series })
}

/// (1/|W|) sum_w weight(w) / det(1 - t A_w), to order `trunc`.
fn weighted_molien(
    g: &ReflectionGroup,
    table: &ReciprocalTable,
    weight: impl Fn(usize) -> CycNumber + Sync + Send,
) -> CycSeries {
    // Collapse weights per distinct denominator first.
    let mut collapsed = vec![g.zero(); table.series.len()];
    let weights: Vec<CycNumber> = (0..g.order()).into_par_iter().map(weight).collect();
    for (w, c) in weights.iter().enumerate() {
        collapsed[table.by_element[w]] += c;
    }
    let trunc = table.series[0].truncation();
    let parts: Vec<CycSeries> = collapsed
        .par_iter()
        .zip(table.series.par_iter())
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, s)| s.scale(c))
        .collect();
    let mut total = Series::zero(trunc);
    for p in &parts {
        total = total.add(p);
    }
    total.scale(&g.inv_order())
}

fn to_rational_series(s: &CycSeries, what: &str) -> Result<RationalSeries> {
    let coeffs: Option<Vec<Rational>> = s.coeffs().iter().map(Field::to_rational).collect();
    coeffs
        .map(|c| Series::from_poly(&c, s.truncation()))
        .ok_or_else(|| Error::Factorization(format!("{what} has irrational coefficients")))
}

/// Hilbert series of the invariant ring, (1/|W|) sum_w 1/det(1 - t A_w).
pub fn molien_series(g: &ReflectionGroup, trunc: usize) -> Result<RationalSeries> {
    let table = reciprocal_table(g, trunc)?;
    to_rational_series(&weighted_molien(g, &table, |_| g.one()), "Molien series")
}

/// Factors the Molien series as prod 1/(1 - t^{d_i}) with exactly n factors,
/// certified by re-expansion to order `trunc` and prod d_i = |W|.
pub fn molien_degrees(g: &ReflectionGroup, trunc: usize) -> Result<Vec<usize>> {
    factor_degrees(&molien_series(g, trunc)?, g.rank(), g.order())
}

pub fn factor_degrees(series: &RationalSeries, n: usize, order: usize) -> Result<Vec<usize>> {
    let trunc = series.truncation();
    let mut rest = series.clone();
    let mut degrees = Vec::with_capacity(n);
    for _ in 0..n {
        let d = (1..=trunc)
            .find(|&k| !rest.coeff(k).is_zero())
            .ok_or_else(|| Error::Factorization(format!("found only {degrees:?} within order {trunc}")))?;
        if rest.coeff(d) <= &Rational::zero() || !rest.coeff(d).is_integer() {
            return Err(Error::Factorization(format!(
                "coefficient of t^{d} is {} after removing {degrees:?}",
                crate::exactnum::format_rational(rest.coeff(d))
            )));
        }
        let mut factor = vec![Rational::zero(); d + 1];
        factor[0] = Rational::one();
        factor[d] = -Rational::one();
        rest = rest.mul_poly(&factor);
        degrees.push(d);
    }
    if !rest.vanishes_above(0) || !rest.coeff(0).is_one() {
        return Err(Error::Factorization(format!(
            "prod 1/(1 - t^d) over {degrees:?} does not reproduce the series to order {trunc}"
        )));
    }
    let product: usize = degrees.iter().product();
    if product != order {
        return Err(Error::Factorization(format!("product of degrees {degrees:?} is {product}, not |W| = {order}")));
    }
    Ok(degrees)
}

/// Graded multiplicities of E in the coinvariant ring:
/// prod(1 - t^{d_i}) (1/|W|) sum_w conj(chi_E(w)) / det(1 - t A_w).
pub fn fake_degree(g: &ReflectionGroup, e: &Representation, degrees: &[usize], trunc: usize) -> Result<Vec<usize>> {
    let table = reciprocal_table(g, trunc)?;
    fake_degree_with(g, &table, e, degrees)
}

fn fake_degree_with(
    g: &ReflectionGroup,
    table: &ReciprocalTable,
    e: &Representation,
    degrees: &[usize],
) -> Result<Vec<usize>> {
    let bad = |detail: String| Error::BadFakeDegree { rep: e.name(), detail };
    let graded = weighted_molien(g, table, |w| e.character(w).conj());
    let mut s = to_rational_series(&graded, "fake degree").map_err(|_| bad("irrational coefficient".into()))?;
    for &d in degrees {
        let mut factor = vec![Rational::zero(); d + 1];
        factor[0] = Rational::one();
        factor[d] = -Rational::one();
        s = s.mul_poly(&factor);
    }
    let top = g.reflections().len();
    if top < s.truncation() && !s.vanishes_above(top) {
        return Err(bad(format!("nonzero coefficients above degree N = {top}")));
    }
    let coeffs: Vec<usize> = s
        .coeffs()
        .iter()
        .take(top + 1)
        .enumerate()
        .map(|(k, c)| {
            rational_to_i64(c)
                .filter(|&v| v >= 0)
                .map(|v| v as usize)
                .ok_or_else(|| bad(format!("coefficient of t^{k} is {}", crate::exactnum::format_rational(c))))
        })
        .collect::<Result<_>>()?;
    let total: usize = coeffs.iter().sum();
    if total != e.dim() {
        return Err(bad(format!("coefficients sum to {total}, not dim E = {}", e.dim())));
    }
    Ok(coeffs)
}

/// The exponent multiset of E: each k repeated by the coefficient of t^k.
pub fn exponents_of(g: &ReflectionGroup, e: &Representation, degrees: &[usize], trunc: usize) -> Result<Vec<usize>> {
    Ok(multiset_from_poly(&fake_degree(g, e, degrees, trunc)?))
}

fn multiset_from_poly(p: &[usize]) -> Vec<usize> {
    p.iter()
        .enumerate()
        .flat_map(|(k, &m)| std::iter::repeat(k).take(m))
        .collect()
}

/// Degrees, the exponents of V and V*, and the coexponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeData {
    pub degrees: Vec<usize>,
    /// Exponents of the defining representation V.
    pub exponents_v: Vec<usize>,
    /// Exponents of V*, the degree-one component of the polynomial ring.
    pub exponents_v_dual: Vec<usize>,
    /// Whichever of the two multisets is not {d_i - 1}.
    pub coexponents: Vec<usize>,
    /// Which representation carries the exponents {d_i - 1}.
    pub degree_minus_one_rep: RepKind,
}

impl DegreeData {
    pub fn degrees_minus_one(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d - 1).collect()
    }
}

pub fn degree_data(g: &ReflectionGroup, trunc: usize) -> Result<DegreeData> {
    let table = reciprocal_table(g, trunc)?;
    let molien = to_rational_series(&weighted_molien(g, &table, |_| g.one()), "Molien series")?;
    let degrees = factor_degrees(&molien, g.rank(), g.order())?;
    let v = Representation::new(g, RepKind::Defining)?;
    let vd = Representation::new(g, RepKind::Dual)?;
    let exponents_v = multiset_from_poly(&fake_degree_with(g, &table, &v, &degrees)?);
    let exponents_v_dual = multiset_from_poly(&fake_degree_with(g, &table, &vd, &degrees)?);
    let dm1: Vec<usize> = degrees.iter().map(|d| d - 1).collect();
    let (coexponents, degree_minus_one_rep) = if exponents_v_dual == dm1 {
        (exponents_v.clone(), RepKind::Dual)
    } else if exponents_v == dm1 {
        (exponents_v_dual.clone(), RepKind::Defining)
    } else {
        return Err(Error::Factorization(format!(
            "neither V ({exponents_v:?}) nor V* ({exponents_v_dual:?}) has exponents {dm1:?}"
        )));
    };
    Ok(DegreeData {
        degrees,
        exponents_v,
        exponents_v_dual,
        coexponents,
        degree_minus_one_rep,
    })
}

pub fn coexponents(g: &ReflectionGroup, trunc: usize) -> Result<Vec<usize>> {
    Ok(degree_data(g, trunc)?.coexponents)
}

/// One identity of the numerology report.
#[derive(Clone, Debug, PartialEq)]
pub struct NumerologyCheck {
    pub name: &'static str,
    pub statement: String,
    pub passed: bool,
    /// Whether the identity is claimed for this group's class; otherwise the
    /// result is informational.
    pub asserted: bool,
    pub values: Vec<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NumerologyReport {
    pub class: DualityClass,
    pub n: usize,
    pub h: Rational,
    pub g: Rational,
    pub degrees: Vec<usize>,
    pub coexponents: Vec<usize>,
    pub catalan: Option<Rational>,
    pub catalan_coexp: Rational,
    pub checks: Vec<NumerologyCheck>,
}

impl NumerologyReport {
    /// All asserted checks pass.
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.passed || !c.asserted)
    }
}

pub fn numerology_report(g: &ReflectionGroup, data: &DegreeData) -> NumerologyReport {
    let st = stats(g);
    let class = g.duality_class();
    let asserted = class.asserted();
    let n = g.rank();
    let q = |k: usize| rat(k as i64, 1);
    let fmt = crate::exactnum::format_rational;
    let d = &data.degrees;
    let ce = &data.coexponents;
    let mut checks = Vec::new();

    checks.push(NumerologyCheck {
        name: "g_integer",
        statement: "g = 2N/n is an integer".into(),
        passed: st.g.is_integer(),
        asserted: true,
        values: vec![format!("g = {}", fmt(&st.g))],
    });

    let two = rat(2, 1);
    let mut values = Vec::new();
    let mut passed = true;
    for i in 0..n {
        let lhs = q(d[i] + d[n - 1 - i]);
        let rhs = st.g.clone() + &two;
        passed &= lhs == rhs;
        values.push(format!("d_{} + d_{} = {} vs g + 2 = {}", i + 1, n - i, fmt(&lhs), fmt(&rhs)));
    }
    checks.push(NumerologyCheck {
        name: "degree_duality",
        statement: "d_i + d_{n-i+1} = g + 2".into(),
        passed,
        asserted,
        values,
    });

    let mut values = Vec::new();
    let mut passed = true;
    for i in 0..n {
        let lhs = st.g.clone() + q(ce[i] + 1);
        let rhs = st.h.clone() + q(d[i]);
        passed &= lhs == rhs;
        values.push(format!(
            "g + coexp_{} + 1 = {} vs h + d_{} = {}",
            i + 1,
            fmt(&lhs),
            i + 1,
            fmt(&rhs)
        ));
    }
    checks.push(NumerologyCheck {
        name: "coexponent_identity",
        statement: "g + coexp_i + 1 = h + d_i".into(),
        passed,
        asserted,
        values,
    });

    let cat_h = d
        .iter()
        .fold(Rational::one(), |acc, &di| acc * (st.h.clone() + q(di)) / q(di));
    let cat_g = d
        .iter()
        .zip(ce)
        .fold(Rational::one(), |acc, (&di, &ci)| acc * (st.g.clone() + q(ci + 1)) / q(di));
    let passed = cat_h == cat_g && cat_h.is_integer();
    checks.push(NumerologyCheck {
        name: "catalan",
        statement: "prod (h + d_i)/d_i = prod (g + coexp_i + 1)/d_i is an integer".into(),
        passed,
        asserted,
        values: vec![
            format!("prod (h + d_i)/d_i = {}", fmt(&cat_h)),
            format!("prod (g + coexp_i + 1)/d_i = {}", fmt(&cat_g)),
        ],
    });

    let e = data.degrees_minus_one();
    let mut values = Vec::new();
    let mut passed = true;
    for i in 0..n {
        let lhs = q(e[i] + e[n - 1 - i]);
        passed &= lhs == st.g;
        values.push(format!("e_{} + e_{} = {}", i + 1, n - i, fmt(&lhs)));
    }
    checks.push(NumerologyCheck {
        name: "exponent_duality",
        statement: "e_i + e_{n-i+1} = g for the exponents d_i - 1".into(),
        passed,
        asserted,
        values,
    });

    NumerologyReport {
        class,
        n,
        h: st.h.clone(),
        g: st.g.clone(),
        degrees: d.clone(),
        coexponents: ce.clone(),
        catalan: if cat_h.is_integer() { Some(cat_h) } else { None },
        catalan_coexp: cat_g,
        checks,
    }
}

/// Determinant multiplicity series of the Koszul quotient.
#[derive(Clone, Debug, PartialEq)]
pub struct KoszulDet {
    pub rep: String,
    pub shift: usize,
    /// Coefficients up to the truncation order.
    pub coeffs: Vec<Rational>,
    pub integral: bool,
    /// The single (degree, coefficient) if the series is a monomial.
    pub monomial: Option<(usize, Rational)>,
}

impl KoszulDet {
    pub fn is_unit_monomial(&self) -> bool {
        matches!(&self.monomial, Some((_, c)) if c.is_one())
    }

    pub fn total(&self) -> Rational {
        self.coeffs.iter().fold(Rational::zero(), |a, c| a + c)
    }
}

/// (1/|W|) sum_w det(w)^{-1} det(1 - t^D B_w) / det(1 - t A_w), with B the
/// matrices of E and A the degree-one action. Truncated at
/// max(trunc, nD + N + n).
pub fn koszul_det_multiplicity(
    g: &ReflectionGroup,
    e: &Representation,
    shift: usize,
    trunc: usize,
) -> Result<KoszulDet> {
    let n = g.rank();
    if e.dim() != n {
        return Err(Error::DimensionMismatch(format!("dim E = {} but rank is {n}", e.dim())));
    }
    if shift == 0 {
        return Err(Error::DimensionMismatch("shift must be positive".into()));
    }
    let trunc = trunc.max(n * shift + g.reflections().len() + n);
    let table = reciprocal_table(g, trunc)?;
    let terms: Vec<CycSeries> = (0..g.order())
        .into_par_iter()
        .map(|w| -> Result<CycSeries> {
            let num = char_det_series(e.matrix(w), shift, 0)?.det_poly;
            let weight = g.det(g.inverse(w)).clone();
            let num: Vec<CycNumber> = num.into_iter().map(|c| c * &weight).collect();
            Ok(table.series[table.by_element[w]].mul_poly(&num))
        })
        .collect::<Result<_>>()?;
    let mut total = Series::zero(trunc);
    for t in &terms {
        total = total.add(t);
    }
    let total = to_rational_series(&total.scale(&g.inv_order()), "Koszul series")?;
    let coeffs = total.coeffs().to_vec();
    let integral = coeffs.iter().all(|c| c.is_integer());
    let nonzero: Vec<usize> = (0..coeffs.len()).filter(|&k| !coeffs[k].is_zero()).collect();
    let monomial = match nonzero.as_slice() {
        [k] => Some((*k, coeffs[*k].clone())),
        _ => None,
    };
    Ok(KoszulDet {
        rep: e.name(),
        shift,
        coeffs,
        integral,
        monomial,
    })
}

/// (1 - t^D)^n / (1 - t)^n as a polynomial, with its value at t = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedDim {
    pub coeffs: Vec<u128>,
    pub value: u128,
}

pub fn koszul_graded_dim(n: usize, shift: usize) -> GradedDim {
    let mut coeffs = vec![1u128];
    for _ in 0..n {
        let mut next = vec![0u128; coeffs.len() + shift - 1];
        for (i, c) in coeffs.iter().enumerate() {
            for k in 0..shift {
                next[i + k] += c;
            }
        }
        coeffs = next;
    }
    let value = coeffs.iter().sum();
    GradedDim { coeffs, value }
}

/// The graded dimension computed from the identity term of the Koszul
/// character, det(1 - t^D) ^ n / det(1 - t)^n expanded as a series.
pub fn koszul_identity_term(n: usize, shift: usize, trunc: usize) -> Result<RationalSeries> {
    let id = crate::exactnum::Matrix::<Rational>::identity(n);
    let num = char_det_series(&id, shift, trunc)?;
    Ok(num.reciprocal.mul_poly(&num.det_poly))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, GroupSpec};

    fn fam(l: u32, m: u32, n: usize) -> ReflectionGroup {
        build_group(&GroupSpec::family(l, m, n).unwrap()).unwrap()
    }

    #[test]
    fn degrees_small() {
        for (l, m, n, d) in [(2, 1, 2, vec![2, 4]), (3, 1, 2, vec![3, 6]), (3, 3, 2, vec![2, 3])] {
            let g = fam(l, m, n);
            assert_eq!(molien_degrees(&g, default_truncation(&g)).unwrap(), d);
        }
    }

    #[test]
    fn truncation_too_small_fails() {
        let g = fam(3, 1, 2);
        assert!(molien_degrees(&g, 4).is_err());
    }

    #[test]
    fn exponents_g312() {
        let g = fam(3, 1, 2);
        let dd = degree_data(&g, default_truncation(&g)).unwrap();
        assert_eq!(dd.exponents_v, vec![2, 5]);
        assert_eq!(dd.exponents_v_dual, vec![1, 4]);
        assert_eq!(dd.coexponents, vec![1, 4]);
        assert_eq!(dd.degree_minus_one_rep, RepKind::Defining);
    }

    #[test]
    fn trivial_and_det_exponents() {
        for g in [fam(3, 1, 2), fam(4, 2, 2), fam(2, 1, 3)] {
            let t = default_truncation(&g);
            let d = molien_degrees(&g, t).unwrap();
            let triv = Representation::new(&g, RepKind::Trivial).unwrap();
            assert_eq!(exponents_of(&g, &triv, &d, t).unwrap(), vec![0]);
            let det = Representation::new(&g, RepKind::Det).unwrap();
            let e = exponents_of(&g, &det, &d, t).unwrap();
            let detinv = Representation::new(&g, RepKind::DetInverse).unwrap();
            let ei = exponents_of(&g, &detinv, &d, t).unwrap();
            // One of det, det^{-1} sits in degree N (the product of the linear forms).
            assert!(e == vec![g.reflections().len()] || ei == vec![g.reflections().len()]);
        }
    }

    #[test]
    fn real_group_coexponents() {
        let g = fam(2, 1, 2);
        assert_eq!(coexponents(&g, default_truncation(&g)).unwrap(), vec![1, 3]);
    }

    #[test]
    fn numerology_g312() {
        let g = fam(3, 1, 2);
        let dd = degree_data(&g, default_truncation(&g)).unwrap();
        let r = numerology_report(&g, &dd);
        assert!(r.ok());
        assert!(r.checks.iter().all(|c| c.asserted && c.passed));
        assert_eq!(r.catalan, Some(rat(6, 1)));
    }

    #[test]
    fn numerology_g422_informational() {
        let g = fam(4, 2, 2);
        let dd = degree_data(&g, default_truncation(&g)).unwrap();
        let r = numerology_report(&g, &dd);
        assert_eq!(r.class, DualityClass::Other);
        assert!(r.checks.iter().skip(1).all(|c| !c.asserted));
    }

    #[test]
    fn koszul_g212() {
        let g = fam(2, 1, 2);
        let v = Representation::new(&g, RepKind::Defining).unwrap();
        let k = koszul_det_multiplicity(&g, &v, 5, 0).unwrap();
        assert!(k.integral);
        assert_eq!(k.monomial, Some((4, rat(1, 1))));
        let k1 = koszul_det_multiplicity(&g, &v, 1, 0).unwrap();
        assert!(k1.coeffs.iter().all(Zero::is_zero));
    }

    #[test]
    fn koszul_defining_is_unit_monomial_at_g_plus_one() {
        for (g, top) in [(fam(3, 1, 2), 7), (fam(4, 1, 2), 10)] {
            let gg = stats(&g).g_integer().unwrap() as usize;
            let v = Representation::new(&g, RepKind::Defining).unwrap();
            let k = koszul_det_multiplicity(&g, &v, gg + 1, 0).unwrap();
            assert_eq!(k.monomial, Some((top, rat(1, 1))));
            let vd = Representation::new(&g, RepKind::Dual).unwrap();
            assert!(koszul_det_multiplicity(&g, &vd, gg + 1, 0).unwrap().monomial.is_none());
        }
    }

    #[test]
    fn graded_dim_values() {
        assert_eq!(koszul_graded_dim(2, 5).value, 25);
        assert_eq!(koszul_graded_dim(2, 8).value, 64);
        assert_eq!(koszul_graded_dim(3, 15).value, 3375);
        assert_eq!(koszul_graded_dim(2, 1).coeffs, vec![1]);
        let s = koszul_identity_term(2, 5, 12).unwrap();
        let gd = koszul_graded_dim(2, 5);
        for k in 0..=12 {
            let expected = gd.coeffs.get(k).copied().unwrap_or(0);
            assert_eq!(s.coeff(k), &rat(expected as i64, 1));
        }
    }
}
