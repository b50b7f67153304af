use num_traits::ToPrimitive;
use reflab::exactnum::{format_rational, Rational};
use serde_json::Value;

/// Integral rationals as JSON numbers, everything else as "p/q".
pub fn rational(r: &Rational) -> Value {
    if r.is_integer() {
        if let Some(i) = r.numer().to_i64() {
            return Value::from(i);
        }
    }
    Value::from(format_rational(r))
}

pub fn rationals(rs: &[Rational]) -> Value {
    Value::Array(rs.iter().map(rational).collect())
}

/// Nonzero coefficients as [[k, c], ...].
pub fn sparse_series(coeffs: &[Rational]) -> Value {
    Value::Array(
        coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
            .map(|(k, c)| Value::Array(vec![Value::from(k), rational(c)]))
            .collect(),
    )
}

pub fn render<T: serde::Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}
