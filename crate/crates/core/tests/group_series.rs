use num_traits::Zero;
use proptest::prelude::*;
use reflab::cherednik::{monomials_of_degree, substitution_matrix};
use reflab::exactnum::{rat, Field, Matrix, Rational};
use reflab::group::{
    build_group, is_amenable, local_data, stats, FamilyClosedForms, GroupSpec, RepKind, ReflectionGroup,
    Representation,
};
use reflab::series_invariants::{
    default_truncation, degree_data, exponents_of, molien_degrees, molien_series, numerology_report,
};
use reflab::CycNumber;

fn fam(l: u32, m: u32, n: usize) -> ReflectionGroup {
    build_group(&GroupSpec::family(l, m, n).unwrap()).unwrap()
}

fn g4() -> ReflectionGroup {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/g4.json")).unwrap();
    build_group(&GroupSpec::from_generator_json(&text).unwrap()).unwrap()
}

const FAMILIES: [(u32, u32, usize); 8] = [
    (2, 1, 2),
    (3, 1, 2),
    (4, 1, 2),
    (4, 2, 2),
    (3, 3, 2),
    (4, 4, 2),
    (2, 1, 3),
    (3, 1, 3),
];

/// Dimension of the degree-k invariants, by the rank of the Reynolds operator
/// on explicit substitution matrices.
fn invariant_dimension(g: &ReflectionGroup, k: u32) -> usize {
    let basis = monomials_of_degree(g.rank(), k);
    let s = basis.len();
    let mut acc = Matrix::from_fn(s, s, |_, _| g.zero());
    for w in 0..g.order() {
        let m = substitution_matrix(g.substitution(w), &basis, &g.one());
        acc = Matrix::from_fn(s, s, |i, j| acc.get(i, j).clone() + m.get(i, j));
    }
    acc.rank()
}

/// Coefficient of t^k in prod 1/(1 - t^{d_i}): number of ways to write k.
fn partitions_into(degrees: &[usize], k: usize) -> usize {
    let mut ways = vec![0usize; k + 1];
    ways[0] = 1;
    for &d in degrees {
        for j in d..=k {
            ways[j] += ways[j - d];
        }
    }
    ways[k]
}

#[test]
fn enumeration_matches_closed_forms() {
    for (l, m, n) in FAMILIES {
        let g = fam(l, m, n);
        let cf = FamilyClosedForms::new(l, m, n);
        let st = stats(&g);
        assert_eq!(st.order as u128, cf.order);
        assert_eq!(st.reflections as u64, cf.reflections);
        assert_eq!(st.hyperplanes as u64, cf.hyperplanes);
        assert_eq!(st.g, rat(cf.g, 1));
        assert!(st.warnings.is_empty(), "{:?}", st.warnings);
    }
}

#[test]
fn g4_stats() {
    let g = g4();
    let st = stats(&g);
    assert_eq!((st.order, st.reflections, st.hyperplanes), (24, 8, 4));
    assert_eq!((st.h.clone(), st.g.clone()), (rat(6, 1), rat(8, 1)));
    assert!(g.is_irreducible());
}

#[test]
fn molien_against_reynolds_rank() {
    for g in [fam(3, 1, 2), fam(4, 2, 2), fam(2, 1, 3), g4()] {
        let t = default_truncation(&g);
        let series = molien_series(&g, t).unwrap();
        let d = molien_degrees(&g, t).unwrap();
        for k in 0..=8usize {
            let direct = invariant_dimension(&g, k as u32);
            assert_eq!(series.coeff(k), &rat(direct as i64, 1), "degree {k}");
            assert_eq!(partitions_into(&d, k), direct);
        }
    }
}

#[test]
fn degrees_match_family_formula() {
    for (l, m, n) in FAMILIES {
        let g = fam(l, m, n);
        let d = molien_degrees(&g, default_truncation(&g)).unwrap();
        let expected: Vec<usize> = FamilyClosedForms::degrees(l, m, n).into_iter().map(|x| x as usize).collect();
        assert_eq!(d, expected, "G({l},{m},{n})");
    }
}

/// Graded multiplicity of E in C[h] up to degree `top`, from traces of the
/// explicit degree-k action matrices.
fn direct_isotype_series(g: &ReflectionGroup, e: &Representation, top: usize) -> Vec<Rational> {
    (0..=top)
        .map(|k| {
            let basis = monomials_of_degree(g.rank(), k as u32);
            let mut acc = g.zero();
            for w in 0..g.order() {
                let tr = substitution_matrix(g.substitution(w), &basis, &g.one()).trace();
                acc += &(tr * &e.character(w).conj());
            }
            (acc * &g.inv_order()).to_rational().unwrap()
        })
        .collect()
}

#[test]
fn fake_degrees_against_direct_traces() {
    for g in [fam(3, 1, 2), g4(), fam(4, 2, 2)] {
        let t = default_truncation(&g);
        let d = molien_degrees(&g, t).unwrap();
        let top = g.reflections().len();
        for kind in [RepKind::Defining, RepKind::Dual, RepKind::Det, RepKind::DetInverse] {
            let e = Representation::new(&g, kind).unwrap();
            let mut s = direct_isotype_series(&g, &e, top);
            for &di in &d {
                for k in (di..=top).rev() {
                    let v = s[k].clone() - &s[k - di];
                    s[k] = v;
                }
            }
            let mut expected = Vec::new();
            for (k, c) in s.iter().enumerate() {
                for _ in 0..c.to_integer().try_into().unwrap_or(0usize) {
                    expected.push(k);
                }
            }
            assert_eq!(exponents_of(&g, &e, &d, t).unwrap(), expected, "{:?}", kind);
        }
    }
}

#[test]
fn exponent_multisets() {
    let cases: [(ReflectionGroup, Vec<usize>, Vec<usize>); 3] = [
        (fam(3, 1, 2), vec![2, 5], vec![1, 4]),
        (g4(), vec![3, 5], vec![1, 3]),
        (fam(2, 1, 2), vec![1, 3], vec![1, 3]),
    ];
    for (g, dm1, coexp) in cases {
        let dd = degree_data(&g, default_truncation(&g)).unwrap();
        assert_eq!(dd.degrees_minus_one(), dm1);
        assert_eq!(dd.exponents_v, dm1);
        assert_eq!(dd.coexponents, coexp);
    }
}

#[test]
fn det_exponent_is_n() {
    // The Jacobian of the basic invariants has degree N and transforms by det.
    for (l, m, n) in FAMILIES {
        let g = fam(l, m, n);
        let t = default_truncation(&g);
        let d = molien_degrees(&g, t).unwrap();
        let e = Representation::new(&g, RepKind::Det).unwrap();
        assert_eq!(exponents_of(&g, &e, &d, t).unwrap(), vec![g.reflections().len()]);
    }
}

#[test]
fn numerology_values() {
    let g = fam(3, 1, 2);
    let r = numerology_report(&g, &degree_data(&g, default_truncation(&g)).unwrap());
    assert!(r.ok());
    assert_eq!(r.catalan, Some(rat(6, 1)));
    let g = g4();
    let r = numerology_report(&g, &degree_data(&g, default_truncation(&g)).unwrap());
    assert!(r.ok());
    assert_eq!(r.catalan, Some(rat(5, 1)));
    assert_eq!(r.catalan_coexp, rat(5, 1));
    let g = fam(2, 1, 2);
    let dd = degree_data(&g, default_truncation(&g)).unwrap();
    let st = stats(&g);
    for (d, c) in dd.degrees.iter().zip(&dd.coexponents) {
        assert_eq!(rat((*d - *c - 1) as i64, 1), st.g.clone() - &st.h);
    }
}

#[test]
fn local_data_g212_coordinate_orbit() {
    let g = fam(2, 1, 2);
    let v = Representation::new(&g, RepKind::Defining).unwrap();
    let ld = local_data(&g, &v).unwrap();
    let coord = g
        .orbits()
        .iter()
        .position(|o| o.hyperplanes.iter().any(|&h| g.hyperplanes()[h].normal.iter().filter(|x| !x.is_zero()).count() == 1))
        .unwrap();
    assert_eq!(ld.by_orbit[coord], vec![1, 1]);
}

fn rep_kinds(n: usize) -> Vec<RepKind> {
    let mut v = vec![RepKind::Trivial, RepKind::Defining, RepKind::Dual, RepKind::Det, RepKind::DetInverse];
    v.extend((0..=n).map(RepKind::Exterior));
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn local_data_rows_sum_to_dimension(gi in 0usize..FAMILIES.len(), ki in 0usize..9) {
        let (l, m, n) = FAMILIES[gi];
        let g = fam(l, m, n);
        let kinds = rep_kinds(n);
        let e = Representation::new(&g, kinds[ki % kinds.len()]).unwrap();
        let ld = local_data(&g, &e).unwrap();
        for row in &ld.by_orbit {
            prop_assert_eq!(row.iter().sum::<usize>(), e.dim());
        }
        let a = is_amenable(&g, &e).unwrap();
        prop_assert_eq!(a.amenable, a.table.iter().all(|(c, b)| c <= b));
    }

    #[test]
    fn closure_and_inverse(gi in 0usize..FAMILIES.len(), a in 0usize..1000, b in 0usize..1000) {
        let (l, m, n) = FAMILIES[gi];
        let g = fam(l, m, n);
        let (a, b) = (a % g.order(), b % g.order());
        let ab = g.product(a, b);
        prop_assert_eq!(g.element(ab), &(g.element(a) * g.element(b)));
        prop_assert_eq!(g.product(a, g.inverse(a)), 0);
    }

    #[test]
    fn reflections_have_codimension_one_fixed_space(gi in 0usize..FAMILIES.len()) {
        let (l, m, n) = FAMILIES[gi];
        let g = fam(l, m, n);
        let id = g.element(0).clone();
        let total: usize = g.hyperplanes().iter().map(|h| h.stabilizer_order() - 1).sum();
        prop_assert_eq!(total, g.reflections().len());
        for &r in g.reflections() {
            prop_assert_eq!((g.element(r) - &id).rank(), 1);
        }
        for h in g.hyperplanes() {
            let nh = h.stabilizer_order() as u32;
            prop_assert!(h.stabilizer.iter().all(|&w| g.det(w).multiplicative_order(nh).is_some()));
            prop_assert!(h.stabilizer.iter().any(|&w| g.det(w).multiplicative_order(nh) == Some(nh)));
        }
    }

    #[test]
    fn representations_are_multiplicative(gi in 0usize..FAMILIES.len(), seed in 0usize..10_000) {
        let (l, m, n) = FAMILIES[gi];
        let g = fam(l, m, n);
        let pairs: Vec<(usize, usize)> = (0..6).map(|i| ((seed * 31 + i * 7) % g.order(), (seed * 17 + i * 13) % g.order())).collect();
        for kind in rep_kinds(n) {
            let e = Representation::new(&g, kind).unwrap();
            prop_assert!(e.is_multiplicative_on(&g, &pairs));
        }
    }
}

#[test]
fn scalar_field_is_the_declared_one() {
    let g = fam(4, 1, 2);
    assert_eq!(g.conductor(), 4);
    assert!(g.elements().iter().all(|m| m.entries().iter().all(|x: &CycNumber| x.conductor() == 4 || x.is_rational())));
}
