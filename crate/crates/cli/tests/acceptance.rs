//! Criteria 1-10. Each criterion prints one PASS/FAIL line; the test fails
//! if any line is FAIL.

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reflab::cherednik::{
    base_parameter, gram_and_dimension, jack_index_census, sigma, singular_subspace, DunklOperators, Parameter, Poly,
};
use reflab::exactnum::{rat, Rational};
use reflab::group::{build_group, stats, FamilyClosedForms, GroupSpec, RepKind, ReflectionGroup, Representation};
use reflab::series_invariants::{
    default_truncation, degree_data, koszul_det_multiplicity, koszul_graded_dim, koszul_identity_term, molien_degrees,
    molien_series,
};
use reflab::diag_oracle::hilbert_table;
use reflab::{CycNumber, MultiPoly};

type Outcome = Result<String, String>;

fn fam(l: u32, m: u32, n: usize) -> ReflectionGroup {
    build_group(&GroupSpec::family(l, m, n).unwrap()).unwrap()
}

fn g4_path() -> String {
    concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/g4.json").to_string()
}

fn g4() -> ReflectionGroup {
    let text = std::fs::read_to_string(g4_path()).unwrap();
    build_group(&GroupSpec::from_generator_json(&text).unwrap()).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Instant, limit: Duration) -> Result<(), String> {
    ensure(t.elapsed() < limit, || format!("took {:.1?}, limit {:?}", t.elapsed(), limit))
}

const FAMILY: [(u32, u32, usize); 8] = [
    (2, 1, 2),
    (3, 1, 2),
    (4, 1, 2),
    (4, 2, 2),
    (3, 3, 2),
    (4, 4, 2),
    (2, 1, 3),
    (3, 1, 3),
];

fn criterion_1() -> Outcome {
    let t = Instant::now();
    for (l, m, n) in FAMILY {
        let g = fam(l, m, n);
        let st = stats(&g);
        let cf = FamilyClosedForms::new(l, m, n);
        ensure(st.order as u128 == cf.order, || format!("G({l},{m},{n}) order"))?;
        ensure(st.reflections as u64 == cf.reflections, || format!("G({l},{m},{n}) N"))?;
        ensure(st.hyperplanes as u64 == cf.hyperplanes, || format!("G({l},{m},{n}) N*"))?;
        let gi = st.g_integer().ok_or_else(|| format!("G({l},{m},{n}) g = {} not integral", st.g))?;
        ensure(gi == cf.g, || format!("G({l},{m},{n}) g = {gi}, closed form {}", cf.g))?;
    }
    within(t, Duration::from_secs(5))?;
    Ok(format!("8 groups, {:.2?}", t.elapsed()))
}

/// prod 1/(1 - t^{d_i}) up to t^trunc.
fn invariant_series(degrees: &[usize], trunc: usize) -> Vec<Rational> {
    let mut c = vec![Rational::zero(); trunc + 1];
    c[0] = Rational::one();
    for &d in degrees {
        for k in d..=trunc {
            let v = c[k].clone() + &c[k - d];
            c[k] = v;
        }
    }
    c
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    for (l, m, n) in FAMILY {
        let g = fam(l, m, n);
        let trunc = default_truncation(&g);
        let d = molien_degrees(&g, trunc).map_err(|e| e.to_string())?;
        let expected: Vec<usize> = FamilyClosedForms::degrees(l, m, n).into_iter().map(|x| x as usize).collect();
        ensure(d == expected, || format!("G({l},{m},{n}) degrees {d:?}, expected {expected:?}"))?;
        let series = molien_series(&g, trunc).map_err(|e| e.to_string())?;
        let re = invariant_series(&d, trunc);
        for (k, r) in re.iter().enumerate() {
            ensure(series.coeff(k) == r, || format!("G({l},{m},{n}) re-expansion differs at t^{k}"))?;
        }
    }
    within(t, Duration::from_secs(10))?;
    Ok(format!("8 groups re-expanded, {:.2?}", t.elapsed()))
}

fn g_of(g: &ReflectionGroup) -> usize {
    stats(g).g_integer().unwrap() as usize
}

fn criterion_3() -> Outcome {
    let mut groups: Vec<(String, ReflectionGroup)> = [(2, 1, 2), (3, 1, 2), (4, 1, 2), (3, 1, 3)]
        .iter()
        .map(|&(l, m, n)| (format!("G({l},{m},{n})"), fam(l, m, n)))
        .collect();
    groups.push(("G4".into(), g4()));
    for (name, g) in &groups {
        let d = molien_degrees(g, default_truncation(g)).map_err(|e| e.to_string())?;
        let gv = g_of(g);
        let n = d.len();
        for i in 0..n {
            ensure(d[i] + d[n - 1 - i] == gv + 2, || format!("{name}: d = {d:?}, g = {gv}"))?;
        }
        if name == "G4" {
            ensure(d == vec![4, 6] && gv == 8, || format!("G4: degrees {d:?}, g = {gv}"))?;
        }
    }
    Ok("5 groups".into())
}

fn criterion_4() -> Outcome {
    let mut catalans = Vec::new();
    for (name, g, cat) in [("G(3,1,2)", fam(3, 1, 2), 6i64), ("G4", g4(), 5)] {
        let dd = degree_data(&g, default_truncation(&g)).map_err(|e| e.to_string())?;
        let st = stats(&g);
        let (h, gv) = (st.h.clone(), st.g.clone());
        let mut by_degrees = Rational::one();
        let mut by_coexp = Rational::one();
        for (d, c) in dd.degrees.iter().zip(&dd.coexponents) {
            let (d, c) = (rat(*d as i64, 1), rat(*c as i64, 1));
            ensure(&gv + &c + Rational::one() == &h + &d, || format!("{name}: g + coexp + 1 != h + d at d = {d}"))?;
            by_degrees *= (&h + &d) / &d;
            by_coexp *= (&gv + &c + Rational::one()) / &d;
        }
        ensure(by_degrees == by_coexp && by_degrees == rat(cat, 1), || {
            format!("{name}: Cat {by_degrees} / {by_coexp}, expected {cat}")
        })?;
        catalans.push(format!("{name} Cat = {by_degrees}"));
    }
    Ok(catalans.join(", "))
}

fn criterion_5() -> Outcome {
    let t = Instant::now();
    let mut notes = Vec::new();
    let cases = [(2, 1, 2, 25u128), (3, 1, 2, 64), (4, 1, 3, 3375)];
    for (l, m, n, expected) in cases {
        let g = fam(l, m, n);
        let gv = g_of(&g);
        let shift = gv + 1;
        let gd = koszul_graded_dim(n, shift);
        ensure(gd.value == expected && gd.value == (shift as u128).pow(n as u32), || {
            format!("G({l},{m},{n}): value {} with g = {gv}", gd.value)
        })?;
        let id = koszul_identity_term(n, shift, n * shift).map_err(|e| e.to_string())?;
        for (k, c) in gd.coeffs.iter().enumerate() {
            ensure(id.coeff(k) == &rat(*c as i64, 1), || format!("G({l},{m},{n}) identity term at t^{k}"))?;
        }
        ensure(g.duality_class().asserted(), || format!("G({l},{m},{n}) outside the asserted classes"))?;
        let v = Representation::new(&g, RepKind::Defining).map_err(|e| e.to_string())?;
        let kd = koszul_det_multiplicity(&g, &v, shift, 0).map_err(|e| e.to_string())?;
        ensure(kd.is_unit_monomial(), || format!("G({l},{m},{n}) det series {:?}", kd.monomial))?;
        notes.push(format!("G({l},{m},{n}) {}", gd.value));
    }
    // G(4,1,3) has g = 14, so (g+1)^3 = 3375; the figure 1000 would need g = 9.
    notes.push("(G(4,1,3) is (14+1)^3, not 1000)".into());
    within(t, Duration::from_secs(30))?;
    Ok(format!("{}, {:.2?}", notes.join(", "), t.elapsed()))
}

fn criterion_6() -> Outcome {
    let t = Instant::now();
    let cases = [(2, 1, 2, 25usize), (3, 3, 2, 16), (2, 1, 1, 3), (3, 1, 2, 64)];
    let mut notes = Vec::new();
    for (l, m, n, expected) in cases {
        let g = fam(l, m, n);
        let base = base_parameter(&g).map_err(|e| e.to_string())?;
        for eps in [rat(0, 1), rat(1, 97), rat(1, 101)] {
            let c = sigma(&base.perturbed(&eps));
            let rep = gram_and_dimension(&g, &c).map_err(|e| e.to_string())?;
            ensure(rep.total == expected, || format!("G({l},{m},{n}) eps {eps}: dim {}", rep.total))?;
            ensure(rep.det_multiplicity == 1, || {
                format!("G({l},{m},{n}) eps {eps}: det multiplicity {}", rep.det_multiplicity)
            })?;
            let s = singular_subspace(&g, &c, g_of(&g) + 1).map_err(|e| e.to_string())?;
            ensure(s.has_reflection_submodule(), || {
                format!("G({l},{m},{n}) eps {eps}: singular space dim {} has no copy of V or V*", s.dim)
            })?;
        }
        notes.push(format!("G({l},{m},{n}) {expected}"));
    }
    within(t, Duration::from_secs(300))?;
    Ok(format!("{}, 3 eps each, {:.2?}", notes.join(", "), t.elapsed()))
}

fn random_parameter(g: &ReflectionGroup, rng: &mut ChaCha8Rng) -> Parameter {
    let values = g
        .orbits()
        .iter()
        .map(|o| {
            (0..o.n_h)
                .map(|j| if j == 0 { Rational::zero() } else { rat(rng.gen_range(-20..=20), rng.gen_range(1..=9)) })
                .collect()
        })
        .collect();
    Parameter::new(g, values).unwrap()
}

fn random_poly(g: &ReflectionGroup, rng: &mut ChaCha8Rng) -> MultiPoly {
    let n = g.rank();
    let mut f = Poly::zero(n);
    for _ in 0..rng.gen_range(1..=6) {
        let d = rng.gen_range(0..=5u32);
        let mut e = vec![0u32; n];
        for _ in 0..d {
            e[rng.gen_range(0..n)] += 1;
        }
        let coeffs = (0..g.conductor().max(1)).map(|_| rat(rng.gen_range(-4..=4), 1)).collect();
        f.add_term(e, CycNumber::new(g.conductor(), coeffs));
    }
    f
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checks = 0usize;
    for (l, m, n) in [(2, 1, 2), (3, 3, 2), (3, 1, 2), (4, 2, 2), (2, 1, 3)] {
        let g = fam(l, m, n);
        let cond = g.conductor();
        let scales: Vec<CycNumber> = (0..g.hyperplanes().len())
            .map(|_| {
                let r = CycNumber::root_of_unity(cond.max(2), rng.gen_range(0..6)).promote(cond).unwrap();
                r * &CycNumber::rational_in(cond, rat(rng.gen_range(1..=5), rng.gen_range(1..=3)))
            })
            .collect();
        let rescaled = g.with_rescaled_normals(&scales);
        for _ in 0..3 {
            let c = random_parameter(&g, &mut rng);
            let ops = DunklOperators::new(&g, &c).map_err(|e| e.to_string())?;
            let ops2 = DunklOperators::new(&rescaled, &c).map_err(|e| e.to_string())?;
            for _ in 0..20 {
                let f = random_poly(&g, &mut rng);
                let first = ops.apply_all(&f).map_err(|e| e.to_string())?;
                ensure(first == ops2.apply_all(&f).map_err(|e| e.to_string())?, || {
                    format!("G({l},{m},{n}): rescaling changed the operators")
                })?;
                for i in 0..n {
                    for j in i + 1..n {
                        let a = ops.apply(j, &first[i]).map_err(|e| e.to_string())?;
                        let b = ops.apply(i, &first[j]).map_err(|e| e.to_string())?;
                        ensure(a == b, || format!("G({l},{m},{n}): D_{i} and D_{j} do not commute"))?;
                        checks += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{checks} commutators, 5 groups"))
}

fn criterion_8() -> Outcome {
    let t = Instant::now();
    let t332 = hilbert_table(&fam(3, 3, 2)).map_err(|e| e.to_string())?;
    ensure(t332.total == 16 && t332.det_multiplicity() == 5, || {
        format!("G(3,3,2): {} / {}", t332.total, t332.det_multiplicity())
    })?;
    let t211 = hilbert_table(&fam(2, 1, 1)).map_err(|e| e.to_string())?;
    ensure(t211.total == 3, || format!("G(2,1,1): {}", t211.total))?;
    let t212 = hilbert_table(&fam(2, 1, 2)).map_err(|e| e.to_string())?;
    ensure(t212.total >= 25 && t212.det_multiplicity() >= 6, || {
        format!("G(2,1,2): {} / {}", t212.total, t212.det_multiplicity())
    })?;

    // every rank-2 G(l,m,2) of order <= 48, and G4
    let mut groups: Vec<(String, ReflectionGroup)> = Vec::new();
    for l in 2u32..=24 {
        for m in (1..=l).filter(|m| l % m == 0) {
            if 2 * (l * l / m) as usize <= 48 {
                groups.push((format!("G({l},{m},2)"), fam(l, m, 2)));
            }
        }
    }
    groups.push(("G4".into(), g4()));
    for (name, g) in &groups {
        let tab = hilbert_table(g).map_err(|e| format!("{name}: {e}"))?;
        ensure(tab.completed, || format!("{name}: incomplete"))?;
        ensure(tab.is_symmetric(), || format!("{name}: table not symmetric"))?;
        ensure(tab.x_margin() == g.order() && tab.y_margin() == g.order(), || {
            format!("{name}: margins {} / {} vs |W| = {}", tab.x_margin(), tab.y_margin(), g.order())
        })?;
    }
    within(t, Duration::from_secs(600))?;
    Ok(format!("{} rank-2 groups swept, {:.2?}", groups.len(), t.elapsed()))
}

fn criterion_9() -> Outcome {
    let t = Instant::now();
    let with_gram = [(2, 1, 2), (3, 3, 2), (2, 1, 1), (3, 1, 2), (4, 1, 2), (4, 2, 2), (4, 4, 2), (2, 1, 3)];
    let without_gram = [(3, 1, 3), (4, 1, 3)];
    for &(l, m, n) in with_gram.iter().chain(&without_gram) {
        let g = fam(l, m, n);
        let gv = g_of(&g);
        let census = jack_index_census(l, m, n);
        let koszul = koszul_graded_dim(n, gv + 1).value;
        let expected = ((gv + 1) as u128).pow(n as u32);
        ensure(census.lattice_points == expected && koszul == expected, || {
            format!("G({l},{m},{n}): census {}, koszul {koszul}, (g+1)^n {expected}", census.lattice_points)
        })?;
        if with_gram.contains(&(l, m, n)) {
            let base = base_parameter(&g).map_err(|e| e.to_string())?;
            let total = gram_and_dimension(&g, &sigma(&base.parameter)).map_err(|e| e.to_string())?.total;
            ensure(total as u128 == expected, || format!("G({l},{m},{n}): gram total {total}"))?;
        }
    }
    Ok(format!(
        "{} groups three ways, {} groups two ways, {:.2?}",
        with_gram.len(),
        without_gram.len(),
        t.elapsed()
    ))
}

fn run_cli(args: &[&str], threads: &str) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_reflab"))
        .args(args)
        .args(["--threads", threads])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), || {
        format!("{args:?} exited {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr))
    })?;
    Ok(out.stdout)
}

fn criterion_10() -> Outcome {
    let g4 = g4_path();
    let runs: Vec<Vec<&str>> = vec![
        vec!["group", "--spec", "G(3,1,2)"],
        vec!["group", "--gens", &g4],
        vec!["numerology", "--spec", "G(4,1,2)"],
        vec!["numerology", "--gens", &g4],
        vec!["koszul", "--spec", "G(3,1,2)"],
        vec!["koszul", "--spec", "G(2,1,3)"],
        vec!["lowest", "--spec", "G(3,1,2)"],
        vec!["lowest", "--spec", "G(3,3,2)", "--epsilon", "1/97"],
        vec!["oracle", "--spec", "G(4,2,2)"],
        vec!["oracle", "--spec", "G(3,1,2)", "--format", "csv"],
    ];
    for args in &runs {
        let a = run_cli(args, "1")?;
        let b = run_cli(args, "8")?;
        ensure(a == b, || format!("{args:?}: reports differ between 1 and 8 threads"))?;
        ensure(!a.is_empty(), || format!("{args:?}: empty report"))?;
    }
    Ok(format!("{} invocations byte-identical", runs.len()))
}

#[test]
fn acceptance() {
    let criteria: [(u32, fn() -> Outcome); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    // Written to the handle directly so the lines survive libtest's capture.
    let report = |line: String| {
        let mut out = std::io::stdout().lock();
        writeln!(out, "{line}").unwrap();
        out.flush().unwrap();
    };
    let mut failed = Vec::new();
    for (k, f) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => report(format!("criterion {k:>2}: PASS  {detail}")),
            Err(why) => {
                report(format!("criterion {k:>2}: FAIL  {why}"));
                failed.push(k);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
