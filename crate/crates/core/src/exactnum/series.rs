use super::field::Field;
use super::matrix::Matrix;
use crate::error::{Error, Result};

/// Truncated power series `sum_{k <= T} a_k t^k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Series<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Series<F> {
    pub fn zero(trunc: usize) -> Self {
        Series {
            coeffs: vec![F::zero(); trunc + 1],
        }
    }

    pub fn one(trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        s.coeffs[0] = F::one();
        s
    }

    /// Truncates (or zero-pads) a polynomial to order `trunc`.
    pub fn from_poly(poly: &[F], trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        for (k, c) in poly.iter().enumerate().take(trunc + 1) {
            s.coeffs[k] = c.clone();
        }
        s
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &F {
        &self.coeffs[k]
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.clone() + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.clone() - b)
    }

    fn zip(&self, other: &Self, f: impl Fn(&F, &F) -> F) -> Self {
        let t = self.truncation().min(other.truncation());
        Series {
            coeffs: (0..=t).map(|k| f(&self.coeffs[k], &other.coeffs[k])).collect(),
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|c| c.clone() * s).collect(),
        }
    }

    pub fn add_scaled(&mut self, other: &Self, s: &F) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a += &(b.clone() * s);
            }
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let t = self.truncation().min(other.truncation());
        let mut out = Self::zero(t);
        for (i, a) in self.coeffs.iter().enumerate().take(t + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(t + 1 - i) {
                if !b.is_zero() {
                    out.coeffs[i + j] += &(a.clone() * b);
                }
            }
        }
        out
    }

    /// Multiplies by a polynomial, keeping the truncation.
    pub fn mul_poly(&self, poly: &[F]) -> Self {
        self.mul(&Self::from_poly(poly, self.truncation()))
    }

    /// Multiplicative inverse; requires an invertible constant term.
    pub fn reciprocal(&self) -> Result<Self> {
        let t = self.truncation();
        let inv0 = self.coeffs[0].inv().ok_or(Error::DivisionByZero)?;
        let mut out = Self::zero(t);
        out.coeffs[0] = inv0.clone();
        for k in 1..=t {
            let mut acc = F::zero();
            for j in 1..=k {
                let a = &self.coeffs[j];
                if !a.is_zero() {
                    acc += &(a.clone() * &out.coeffs[k - j]);
                }
            }
            out.coeffs[k] = -(acc * &inv0);
        }
        Ok(out)
    }

    /// True if every coefficient above degree `deg` vanishes.
    pub fn vanishes_above(&self, deg: usize) -> bool {
        self.coeffs.iter().skip(deg + 1).all(F::is_zero)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Series<G> {
        Series {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

/// `det(1 - t^d M)` as a polynomial together with the expansion of
/// `1 / det(1 - t M)` to order `trunc`.
#[derive(Clone, Debug)]
pub struct CharDetSeries<F> {
    pub det_poly: Vec<F>,
    pub reciprocal: Series<F>,
}

pub fn char_det_series<F: Field>(m: &Matrix<F>, scale_power: usize, trunc: usize) -> Result<CharDetSeries<F>> {
    let e = m.eigen_elementary()?;
    let n = m.rows();
    let mut det_poly = vec![F::zero(); n * scale_power + 1];
    for (k, ek) in e.iter().enumerate() {
        det_poly[k * scale_power] = if k % 2 == 0 { ek.clone() } else { -ek.clone() };
    }
    let unit: Vec<F> = e
        .iter()
        .enumerate()
        .map(|(k, ek)| if k % 2 == 0 { ek.clone() } else { -ek.clone() })
        .collect();
    let reciprocal = Series::from_poly(&unit, trunc).reciprocal()?;
    Ok(CharDetSeries { det_poly, reciprocal })
}

/// `det(1 - t M)` as a polynomial.
pub fn det_one_minus_t<F: Field>(m: &Matrix<F>) -> Result<Vec<F>> {
    Ok(char_det_series(m, 1, 0)?.det_poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::field::{rat, Rational};

    fn q(p: i64) -> Rational {
        rat(p, 1)
    }

    #[test]
    fn identity_scaled_by_five() {
        let r = char_det_series(&Matrix::<Rational>::identity(2), 5, 6).unwrap();
        let mut expected = vec![q(0); 11];
        expected[0] = q(1);
        expected[5] = q(-2);
        expected[10] = q(1);
        assert_eq!(r.det_poly, expected);
        let coeffs: Vec<Rational> = (0..=6).map(|k| q(k + 1)).collect();
        assert_eq!(r.reciprocal.coeffs(), coeffs.as_slice());
    }

    #[test]
    fn minus_identity() {
        let m = Matrix::<Rational>::identity(2).scale(&q(-1));
        let r = char_det_series(&m, 1, 4).unwrap();
        assert_eq!(r.det_poly, vec![q(1), q(2), q(1)]);
        let alt: Vec<Rational> = (0..=4).map(|k| q(if k % 2 == 0 { k + 1 } else { -(k + 1) })).collect();
        assert_eq!(r.reciprocal.coeffs(), alt.as_slice());
    }

    #[test]
    fn reciprocal_of_zero_constant_fails() {
        let s = Series::from_poly(&[q(0), q(1)], 3);
        assert!(s.reciprocal().is_err());
    }
}
