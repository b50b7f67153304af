use reflab::cherednik::{base_parameter, gram_and_dimension, sigma, singular_subspace, GramReport, Parameter};
use reflab::diag_oracle::hilbert_table;
use reflab::exactnum::{rat, Rational};
use reflab::group::{is_amenable, stats, RepKind, Representation};
use reflab::series_invariants::{
    default_truncation, degree_data, koszul_det_multiplicity, koszul_graded_dim, koszul_identity_term,
    numerology_report, DegreeData,
};
use reflab::{build_group, ReflectionGroup};
use serde::Serialize;
use serde_json::Value;

use crate::json::{rational, rationals, render, sparse_series};
use crate::{Format, Outcome, RunConfig};

type CmdResult = Result<Outcome, String>;

#[derive(Serialize)]
struct Header {
    version: &'static str,
    command: &'static str,
    spec: String,
    parameters: Parameters,
}

#[derive(Serialize)]
struct Parameters {
    trunc: usize,
    epsilon: Option<Value>,
    shift: Option<usize>,
}

fn header(command: &'static str, config: &RunConfig, trunc: usize, shift: Option<usize>) -> Header {
    Header {
        version: env!("CARGO_PKG_VERSION"),
        command,
        spec: config.spec.label(),
        parameters: Parameters {
            trunc,
            epsilon: config.epsilon.as_ref().map(rational),
            shift,
        },
    }
}

fn build(config: &RunConfig) -> Result<ReflectionGroup, String> {
    build_group(&config.spec).map_err(|e| e.to_string())
}

fn truncation(config: &RunConfig, g: &ReflectionGroup) -> usize {
    config.trunc.unwrap_or_else(|| default_truncation(g))
}

fn g_value(g: &ReflectionGroup) -> Result<usize, String> {
    stats(g)
        .g_integer()
        .and_then(|v| usize::try_from(v).ok())
        .ok_or_else(|| "g = 2N/n is not a nonnegative integer".to_string())
}

fn degrees(g: &ReflectionGroup, trunc: usize) -> Result<DegreeData, String> {
    degree_data(g, trunc).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct OrbitRow {
    size: usize,
    n_h: usize,
}

#[derive(Serialize)]
struct AmenabilityRow {
    amenable: bool,
    /// [C(H,E), n_H - 1] per orbit.
    table: Vec<[usize; 2]>,
}

#[derive(Serialize)]
struct GroupReport {
    #[serde(flatten)]
    header: Header,
    order: usize,
    rank: usize,
    conductor: u32,
    #[serde(rename = "N")]
    n_reflections: usize,
    #[serde(rename = "Nstar")]
    n_hyperplanes: usize,
    h: Value,
    g: Value,
    orbits: Vec<OrbitRow>,
    degrees: Vec<usize>,
    exponents_v: Vec<usize>,
    exponents_v_dual: Vec<usize>,
    coexponents: Vec<usize>,
    amenable_v: AmenabilityRow,
    amenable_v_dual: AmenabilityRow,
    irreducible: bool,
    warnings: Vec<String>,
}

fn amenability(g: &ReflectionGroup, kind: RepKind) -> Result<AmenabilityRow, String> {
    let e = Representation::new(g, kind).map_err(|e| e.to_string())?;
    let a = is_amenable(g, &e).map_err(|e| e.to_string())?;
    Ok(AmenabilityRow {
        amenable: a.amenable,
        table: a.table.iter().map(|&(c, b)| [c, b]).collect(),
    })
}

pub fn cmd_group(config: &RunConfig) -> CmdResult {
    let g = build(config)?;
    let trunc = truncation(config, &g);
    let st = stats(&g);
    let dd = degrees(&g, trunc)?;
    let report = GroupReport {
        header: header("group", config, trunc, None),
        order: st.order,
        rank: st.rank,
        conductor: g.conductor(),
        n_reflections: st.reflections,
        n_hyperplanes: st.hyperplanes,
        h: rational(&st.h),
        g: rational(&st.g),
        orbits: g.orbits().iter().map(|o| OrbitRow { size: o.size(), n_h: o.n_h }).collect(),
        degrees: dd.degrees.clone(),
        exponents_v: dd.exponents_v.clone(),
        exponents_v_dual: dd.exponents_v_dual.clone(),
        coexponents: dd.coexponents.clone(),
        amenable_v: amenability(&g, RepKind::Defining)?,
        amenable_v_dual: amenability(&g, RepKind::Dual)?,
        irreducible: g.is_irreducible(),
        warnings: st.warnings,
    };
    Ok(Outcome {
        text: render(&report),
        ok: true,
    })
}

#[derive(Serialize)]
struct CheckRow {
    name: &'static str,
    statement: String,
    /// "pass", "fail", or "informational" when the identity is not claimed
    /// for this group class.
    status: &'static str,
    passed: bool,
    values: Vec<String>,
}

#[derive(Serialize)]
struct NumerologyJson {
    #[serde(flatten)]
    header: Header,
    class: &'static str,
    asserted: bool,
    h: Value,
    g: Value,
    degrees: Vec<usize>,
    coexponents: Vec<usize>,
    catalan: Option<Value>,
    checks: Vec<CheckRow>,
    ok: bool,
}

pub fn cmd_numerology(config: &RunConfig) -> CmdResult {
    let g = build(config)?;
    let trunc = truncation(config, &g);
    let dd = degrees(&g, trunc)?;
    let r = numerology_report(&g, &dd);
    let ok = r.ok();
    let report = NumerologyJson {
        header: header("numerology", config, trunc, None),
        class: r.class.label(),
        asserted: r.class.asserted(),
        h: rational(&r.h),
        g: rational(&r.g),
        degrees: r.degrees.clone(),
        coexponents: r.coexponents.clone(),
        catalan: r.catalan.as_ref().map(rational),
        checks: r
            .checks
            .iter()
            .map(|c| CheckRow {
                name: c.name,
                statement: c.statement.clone(),
                status: match (c.asserted, c.passed) {
                    (false, _) => "informational",
                    (true, true) => "pass",
                    (true, false) => "fail",
                },
                passed: c.passed,
                values: c.values.clone(),
            })
            .collect(),
        ok,
    };
    Ok(Outcome { text: render(&report), ok })
}

#[derive(Serialize)]
struct GradedDimJson {
    coeffs: Vec<u128>,
    value: u128,
    expected: u128,
    identity_term_matches: bool,
}

#[derive(Serialize)]
struct DetSeriesJson {
    rep: String,
    terms: Value,
    integral: bool,
    monomial: Option<[Value; 2]>,
    unit_monomial: bool,
    exponent_sum: usize,
}

#[derive(Serialize)]
struct KoszulJson {
    #[serde(flatten)]
    header: Header,
    g: usize,
    graded_dim: GradedDimJson,
    det_series: Vec<DetSeriesJson>,
    asserted: bool,
    ok: bool,
}

pub fn cmd_koszul(config: &RunConfig) -> CmdResult {
    let g = build(config)?;
    let trunc = truncation(config, &g);
    let gg = g_value(&g)?;
    let shift = config.shift.unwrap_or(gg + 1);
    if shift == 0 {
        return Err("--shift must be positive".into());
    }
    let n = g.rank();
    let gd = koszul_graded_dim(n, shift);
    let expected = (shift as u128).pow(n as u32);
    let top = gd.coeffs.len() + 1;
    let id = koszul_identity_term(n, shift, top).map_err(|e| e.to_string())?;
    let identity_term_matches = (0..=top).all(|k| {
        let c = gd.coeffs.get(k).copied().unwrap_or(0);
        *id.coeff(k) == Rational::from_integer((c as i64).into())
    });
    let dd = degrees(&g, trunc)?;
    let mut det_series = Vec::new();
    for (kind, exps) in [(RepKind::Defining, &dd.exponents_v), (RepKind::Dual, &dd.exponents_v_dual)] {
        let e = Representation::new(&g, kind).map_err(|e| e.to_string())?;
        let k = koszul_det_multiplicity(&g, &e, shift, trunc).map_err(|e| e.to_string())?;
        det_series.push(DetSeriesJson {
            rep: k.rep.clone(),
            terms: sparse_series(&k.coeffs),
            integral: k.integral,
            monomial: k.monomial.as_ref().map(|(d, c)| [Value::from(*d), rational(c)]),
            unit_monomial: k.is_unit_monomial(),
            exponent_sum: exps.iter().sum(),
        });
    }
    let asserted = g.duality_class().asserted() && shift == gg + 1;
    let ok = gd.value == expected
        && identity_term_matches
        && det_series.iter().all(|d| d.integral)
        && (!asserted || det_series.iter().any(|d| d.unit_monomial));
    let report = KoszulJson {
        header: header("koszul", config, trunc, Some(shift)),
        g: gg,
        graded_dim: GradedDimJson {
            coeffs: gd.coeffs,
            value: gd.value,
            expected,
            identity_term_matches,
        },
        det_series,
        asserted,
        ok,
    };
    Ok(Outcome { text: render(&report), ok })
}

fn parameter_json(c: &Parameter) -> Value {
    Value::Array(c.values().iter().map(|v| rationals(v)).collect())
}

#[derive(Serialize)]
struct AttemptJson {
    epsilon: Value,
    dim: Option<usize>,
    det_mult: Option<usize>,
    error: Option<String>,
}

#[derive(Serialize)]
struct LayerJson {
    degree: usize,
    size: usize,
    rank: usize,
    det_rank: usize,
}

#[derive(Serialize)]
struct SingularJson {
    degree: usize,
    dim: usize,
    mult_v: usize,
    mult_v_dual: usize,
    reflection_submodule: bool,
    asserted: bool,
}

#[derive(Serialize)]
struct LowestJson {
    #[serde(flatten)]
    header: Header,
    c0: Value,
    base: Value,
    direction: Option<Value>,
    attempts: Vec<AttemptJson>,
    epsilon: Value,
    sigma: Value,
    dim: usize,
    expected_dim: u128,
    det_mult: usize,
    ranks: Vec<usize>,
    layers: Vec<LayerJson>,
    singular: SingularJson,
    ok: bool,
}

pub fn cmd_lowest(config: &RunConfig) -> CmdResult {
    let g = build(config)?;
    let trunc = truncation(config, &g);
    let gg = g_value(&g)?;
    let expected = ((gg + 1) as u128).pow(g.rank() as u32);
    let base = base_parameter(&g).map_err(|e| e.to_string())?;
    let first = config.epsilon.clone().unwrap_or_else(|| rat(0, 1));
    let mut epsilons = vec![first];
    for e in [rat(1, 97), rat(1, 101)] {
        if !epsilons.contains(&e) {
            epsilons.push(e);
        }
    }
    let mut attempts = Vec::new();
    let mut chosen: Option<(Rational, Parameter, GramReport)> = None;
    let mut last: Option<(Rational, Parameter, GramReport)> = None;
    for eps in epsilons {
        let c = sigma(&base.perturbed(&eps));
        match gram_and_dimension(&g, &c) {
            Ok(r) => {
                attempts.push(AttemptJson {
                    epsilon: rational(&eps),
                    dim: Some(r.total),
                    det_mult: Some(r.det_multiplicity),
                    error: None,
                });
                let good = r.total as u128 == expected && r.det_multiplicity == 1;
                if good {
                    chosen = Some((eps, c, r));
                    break;
                }
                last = Some((eps, c, r));
            }
            Err(e) => attempts.push(AttemptJson {
                epsilon: rational(&eps),
                dim: None,
                det_mult: None,
                error: Some(e.to_string()),
            }),
        }
    }
    let found = chosen.is_some();
    let (eps, c, r) = chosen
        .or(last)
        .ok_or_else(|| "no perturbation produced a terminating Gram sequence".to_string())?;
    let s = singular_subspace(&g, &c, gg + 1).map_err(|e| e.to_string())?;
    let singular_asserted = g.duality_class().asserted();
    let reflection_submodule = s.has_reflection_submodule();
    let ok = found && (reflection_submodule || !singular_asserted);
    let report = LowestJson {
        header: header("lowest", config, trunc, None),
        c0: rational(&base.c0),
        base: parameter_json(&base.parameter),
        direction: base.direction.as_ref().map(parameter_json),
        attempts,
        epsilon: rational(&eps),
        sigma: parameter_json(&c),
        dim: r.total,
        expected_dim: expected,
        det_mult: r.det_multiplicity,
        ranks: r.ranks(),
        layers: r
            .layers
            .iter()
            .map(|l| LayerJson {
                degree: l.degree,
                size: l.size,
                rank: l.rank,
                det_rank: l.det_rank,
            })
            .collect(),
        singular: SingularJson {
            degree: s.degree,
            dim: s.dim,
            mult_v: s.mult_v,
            mult_v_dual: s.mult_v_dual,
            reflection_submodule,
            asserted: singular_asserted,
        },
        ok,
    };
    Ok(Outcome { text: render(&report), ok })
}

#[derive(Serialize)]
struct EntryJson {
    a: usize,
    b: usize,
    dim: usize,
    det: usize,
}

#[derive(Serialize)]
struct OracleJson {
    #[serde(flatten)]
    header: Header,
    order: usize,
    dim: usize,
    det_mult: usize,
    dim_lower_bound: u128,
    det_lower_bound: Value,
    completed: bool,
    symmetric: bool,
    zero_propagation: bool,
    x_margin: usize,
    y_margin: usize,
    top_degree: usize,
    table: Vec<EntryJson>,
    ok: bool,
}

pub fn cmd_oracle(config: &RunConfig) -> CmdResult {
    let g = build(config)?;
    let trunc = truncation(config, &g);
    let gg = g_value(&g)?;
    let t = hilbert_table(&g).map_err(|e| e.to_string())?;
    let dd = degrees(&g, trunc)?;
    let cat_lower = numerology_report(&g, &dd).catalan_coexp;
    let bound = ((gg + 1) as u128).pow(g.rank() as u32);
    let det_mult = t.det_multiplicity();
    let ok = t.completed
        && t.is_symmetric()
        && t.zero_propagates()
        && t.zero_propagation_checked
        && t.x_margin() == g.order()
        && t.y_margin() == g.order()
        && t.total as u128 >= bound
        && Rational::from_integer((det_mult as i64).into()) >= cat_lower;
    if config.format == Format::Csv {
        return Ok(Outcome { text: t.to_csv(), ok });
    }
    let report = OracleJson {
        header: header("oracle", config, trunc, None),
        order: g.order(),
        dim: t.total,
        det_mult,
        dim_lower_bound: bound,
        det_lower_bound: rational(&cat_lower),
        completed: t.completed,
        symmetric: t.is_symmetric(),
        zero_propagation: t.zero_propagates() && t.zero_propagation_checked,
        x_margin: t.x_margin(),
        y_margin: t.y_margin(),
        top_degree: t.top_degree,
        table: t
            .entries
            .iter()
            .map(|(&(a, b), &dim)| EntryJson {
                a,
                b,
                dim,
                det: t.det_entries.get(&(a, b)).copied().unwrap_or(0),
            })
            .collect(),
        ok,
    };
    Ok(Outcome { text: render(&report), ok })
}
