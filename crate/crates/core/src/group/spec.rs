use num_traits::Zero;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exactnum::{parse_rational, CycNumber, Matrix, Rational};
use crate::CycMatrix;

/// Where a group comes from: the monomial family G(l, m, n) or an explicit
/// list of generating matrices.
#[derive(Clone, Debug)]
pub enum GroupSpec {
    Family { l: u32, m: u32, n: usize },
    Generators {
        name: Option<String>,
        conductor: u32,
        generators: Vec<CycMatrix>,
    },
}

impl GroupSpec {
    pub fn family(l: u32, m: u32, n: usize) -> Result<Self> {
        if l == 0 || m == 0 || n == 0 {
            return Err(Error::InvalidSpec("l, m and n must be positive".into()));
        }
        if l % m != 0 {
            return Err(Error::InvalidSpec(format!("m must divide l (got l = {l}, m = {m})")));
        }
        if l == 1 {
            return Err(Error::InvalidSpec(
                "G(1,1,n) acts reducibly; use G(3,3,2)-style rank-2 substitutes".into(),
            ));
        }
        if n == 1 && m == l {
            return Err(Error::InvalidSpec(format!("G({l},{l},1) is trivial")));
        }
        Ok(GroupSpec::Family { l, m, n })
    }

    /// Parses `"G(l,m,n)"`, spaces allowed.
    pub fn parse(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = t
            .strip_prefix("G(")
            .or_else(|| t.strip_prefix("g("))
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::InvalidSpec(format!("expected G(l,m,n), got {s:?}")))?;
        let parts: Vec<&str> = inner.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::InvalidSpec(format!("expected three parameters in {s:?}")));
        }
        let num = |p: &str| -> Result<u64> {
            p.parse::<u64>()
                .map_err(|_| Error::InvalidSpec(format!("bad integer {p:?} in {s:?}")))
        };
        let (l, m, n) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
        if l > u32::MAX as u64 || m > u32::MAX as u64 || n > 64 {
            return Err(Error::InvalidSpec(format!("parameters out of range in {s:?}")));
        }
        Self::family(l as u32, m as u32, n as usize)
    }

    /// Reads the generator-file JSON format:
    /// `{"name": "G4", "conductor": 3, "generators": [[[[c0, c1], ...], ...], ...]}`.
    /// Each matrix entry is the coefficient list of a cyclotomic number in the
    /// power basis of zeta_conductor; coefficients are integers or `"p/q"` strings.
    pub fn from_generator_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::GeneratorFile(e.to_string()))?;
        let conductor = v
            .get("conductor")
            .and_then(Value::as_u64)
            .filter(|&c| c >= 1 && c <= 1000)
            .ok_or_else(|| Error::GeneratorFile("missing or invalid \"conductor\"".into()))?
            as u32;
        let name = v.get("name").and_then(Value::as_str).map(str::to_owned);
        let gens = v
            .get("generators")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::GeneratorFile("missing \"generators\" array".into()))?;
        if gens.is_empty() {
            return Err(Error::GeneratorFile("no generators".into()));
        }
        let mut generators = Vec::new();
        for (gi, g) in gens.iter().enumerate() {
            let rows = g
                .as_array()
                .ok_or_else(|| Error::GeneratorFile(format!("generator {gi} is not an array")))?;
            let mut parsed_rows = Vec::new();
            for row in rows {
                let entries = row
                    .as_array()
                    .ok_or_else(|| Error::GeneratorFile(format!("generator {gi}: row is not an array")))?;
                let mut parsed = Vec::new();
                for e in entries {
                    parsed.push(parse_entry(e, conductor).map_err(|m| {
                        Error::GeneratorFile(format!("generator {gi}: {m}"))
                    })?);
                }
                parsed_rows.push(parsed);
            }
            let m = Matrix::from_rows(parsed_rows)
                .map_err(|e| Error::GeneratorFile(format!("generator {gi}: {e}")))?;
            if !m.is_square() || m.rows() == 0 {
                return Err(Error::GeneratorFile(format!("generator {gi} is not square")));
            }
            generators.push(m);
        }
        let n = generators[0].rows();
        if generators.iter().any(|g| g.rows() != n) {
            return Err(Error::GeneratorFile("generators have different sizes".into()));
        }
        Ok(GroupSpec::Generators {
            name,
            conductor,
            generators,
        })
    }

    pub fn label(&self) -> String {
        match self {
            GroupSpec::Family { l, m, n } => format!("G({l},{m},{n})"),
            GroupSpec::Generators { name, .. } => name.clone().unwrap_or_else(|| "generators".into()),
        }
    }

    /// Working conductor: l for families (1 when l <= 2).
    pub fn conductor(&self) -> u32 {
        match self {
            GroupSpec::Family { l, .. } => {
                if *l <= 2 {
                    1
                } else {
                    *l
                }
            }
            GroupSpec::Generators { conductor, .. } => {
                if *conductor <= 2 {
                    1
                } else {
                    *conductor
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            GroupSpec::Family { n, .. } => *n,
            GroupSpec::Generators { generators, .. } => generators[0].rows(),
        }
    }

    /// Generating matrices. For G(l,m,n): adjacent transpositions,
    /// diag(zeta^m, 1, ..., 1) when m < l, and the twisted transposition
    /// diag(zeta,1,..) s_1 diag(zeta,1,..)^{-1} when m > 1.
    pub fn generators(&self) -> Vec<CycMatrix> {
        match self {
            GroupSpec::Generators { generators, .. } => generators.clone(),
            GroupSpec::Family { l, m, n } => {
                let cond = self.conductor();
                let (l, m, n) = (*l, *m, *n);
                let zero = CycNumber::zero_in(cond);
                let one = CycNumber::one_in(cond);
                let ident = || Matrix::from_fn(n, n, |i, j| if i == j { one.clone() } else { zero.clone() });
                let mut gens = Vec::new();
                for i in 0..n.saturating_sub(1) {
                    let mut s = ident();
                    s.set(i, i, zero.clone());
                    s.set(i + 1, i + 1, zero.clone());
                    s.set(i, i + 1, one.clone());
                    s.set(i + 1, i, one.clone());
                    gens.push(s);
                }
                if m < l {
                    let mut t = ident();
                    t.set(0, 0, CycNumber::root_of_unity(l, m as i64).promote(cond).unwrap());
                    gens.push(t);
                }
                if m > 1 && n >= 2 {
                    let mut s = ident();
                    s.set(0, 0, zero.clone());
                    s.set(1, 1, zero.clone());
                    s.set(0, 1, CycNumber::root_of_unity(l, 1).promote(cond).unwrap());
                    s.set(1, 0, CycNumber::root_of_unity(l, -1).promote(cond).unwrap());
                    gens.push(s);
                }
                gens
            }
        }
    }

    pub fn family_params(&self) -> Option<(u32, u32, usize)> {
        match self {
            GroupSpec::Family { l, m, n } => Some((*l, *m, *n)),
            _ => None,
        }
    }
}

fn parse_entry(e: &Value, conductor: u32) -> std::result::Result<CycNumber, String> {
    let coeffs = e.as_array().ok_or("matrix entry must be a coefficient array")?;
    let mut out = Vec::new();
    for c in coeffs {
        let r = match c {
            Value::Number(num) => num
                .as_i64()
                .map(|i| Rational::from_integer(i.into()))
                .ok_or_else(|| format!("non-integer number {num}; write rationals as \"p/q\""))?,
            Value::String(s) => parse_rational(s).ok_or_else(|| format!("bad rational {s:?}"))?,
            other => return Err(format!("bad coefficient {other}")),
        };
        out.push(r);
    }
    if out.is_empty() {
        out.push(Rational::zero());
    }
    Ok(CycNumber::new(conductor, out))
}
