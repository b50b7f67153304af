use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::field::{format_rational, Field, Rational};
use crate::error::{Error, Result};

pub fn euler_phi(n: u32) -> usize {
    let mut m = n;
    let mut phi = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if m > 1 {
        phi -= phi / m;
    }
    phi as usize
}

fn compute_cyclotomic(n: u32) -> Vec<i64> {
    // x^n - 1 divided by every Phi_d with d | n, d < n.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let den = cyclotomic_polynomial(d);
            let mut quot = vec![0i64; num.len() - den.len() + 1];
            let mut rem = num.clone();
            for k in (0..quot.len()).rev() {
                let c = rem[k + den.len() - 1];
                quot[k] = c;
                if c != 0 {
                    for (i, &dc) in den.iter().enumerate() {
                        rem[k + i] -= c * dc;
                    }
                }
            }
            num = quot;
        }
    }
    num
}

/// Coefficients (constant term first) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u32) -> &'static [i64] {
    static CACHE: OnceLock<RwLock<HashMap<u32, &'static [i64]>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(p) = cache.read().unwrap().get(&n) {
        return p;
    }
    let poly: &'static [i64] = Box::leak(compute_cyclotomic(n).into_boxed_slice());
    cache.write().unwrap().entry(n).or_insert(poly)
}

fn normalize_conductor(n: u32) -> u32 {
    if n <= 2 {
        1
    } else {
        n
    }
}

/// Reduces a power-basis coefficient vector modulo the `n`-th cyclotomic polynomial.
fn reduce(mut v: Vec<Rational>, n: u32) -> Vec<Rational> {
    let phi_poly = cyclotomic_polynomial(n);
    let deg = phi_poly.len() - 1;
    if v.len() > deg {
        for k in (deg..v.len()).rev() {
            if v[k].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut v[k], Rational::zero());
            for (i, &pc) in phi_poly[..deg].iter().enumerate() {
                if pc != 0 {
                    v[k - deg + i] -= c.clone() * Rational::from_integer(BigInt::from(pc));
                }
            }
        }
    }
    v.resize(deg, Rational::zero());
    v
}

/// An element of the cyclotomic field Q(zeta_N), stored as its residue modulo
/// the N-th cyclotomic polynomial in the power basis of zeta_N.
///
/// Conductors 1 and 2 both mean the rationals and are stored as 1. Elements
/// of conductor 1 combine with elements of any conductor through the
/// embedding Q -> Q(zeta_N); two distinct conductors above 1 never mix.
#[derive(Clone)]
pub struct CycNumber {
    conductor: u32,
    coeffs: Vec<Rational>,
}

impl CycNumber {
    /// Reduces an arbitrary-length coefficient vector `sum c_k zeta^k`.
    pub fn new(conductor: u32, coeffs: Vec<Rational>) -> Self {
        let conductor = normalize_conductor(conductor.max(1));
        if conductor == 1 {
            // zeta_2 = -1
            let mut value = Rational::zero();
            for (k, c) in coeffs.into_iter().enumerate() {
                if k % 2 == 0 {
                    value += c;
                } else {
                    value -= c;
                }
            }
            return CycNumber {
                conductor: 1,
                coeffs: vec![value],
            };
        }
        CycNumber {
            conductor,
            coeffs: reduce(coeffs, conductor),
        }
    }

    pub fn zero_in(conductor: u32) -> Self {
        let conductor = normalize_conductor(conductor.max(1));
        CycNumber {
            conductor,
            coeffs: vec![Rational::zero(); euler_phi(conductor)],
        }
    }

    pub fn rational_in(conductor: u32, r: Rational) -> Self {
        let mut z = Self::zero_in(conductor);
        z.coeffs[0] = r;
        z
    }

    pub fn one_in(conductor: u32) -> Self {
        Self::rational_in(conductor, Rational::one())
    }

    /// zeta_n^k, expressed in conductor `n`.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        let n = n.max(1);
        let e = k.rem_euclid(n as i64) as usize;
        let mut v = vec![Rational::zero(); n as usize];
        v[e] = Rational::one();
        if n == 1 {
            return Self::one_in(1);
        }
        CycNumber::new(n, v)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Embeds into conductor `n`; only rationals move between fields.
    pub fn promote(&self, n: u32) -> Result<Self> {
        let n = normalize_conductor(n.max(1));
        if n == self.conductor {
            return Ok(self.clone());
        }
        if self.conductor == 1 {
            return Ok(Self::rational_in(n, self.coeffs[0].clone()));
        }
        if self.is_rational() && n == 1 {
            return Ok(Self::rational_in(1, self.coeffs[0].clone()));
        }
        Err(Error::ConductorMismatch(self.conductor, n))
    }

    fn common_conductor(&self, other: &Self) -> Result<u32> {
        match (self.conductor, other.conductor) {
            (a, b) if a == b => Ok(a),
            (1, b) => Ok(b),
            (a, 1) => Ok(a),
            (a, b) => Err(Error::ConductorMismatch(a, b)),
        }
    }

    fn aligned(&self, other: &Self) -> Result<(u32, Self, Self)> {
        let n = self.common_conductor(other)?;
        Ok((n, self.promote(n)?, other.promote(n)?))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let (n, mut a, b) = self.aligned(other)?;
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        a.conductor = n;
        Ok(a)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let (n, mut a, b) = self.aligned(other)?;
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x -= y;
        }
        a.conductor = n;
        Ok(a)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let n = self.common_conductor(other)?;
        // Scalar fast paths.
        if self.conductor == 1 || self.is_rational() {
            let s = &self.coeffs[0];
            let mut out = other.promote(n)?;
            out.coeffs.iter_mut().for_each(|c| *c *= s);
            return Ok(out);
        }
        if other.conductor == 1 || other.is_rational() {
            let s = &other.coeffs[0];
            let mut out = self.promote(n)?;
            out.coeffs.iter_mut().for_each(|c| *c *= s);
            return Ok(out);
        }
        let d = self.coeffs.len();
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(CycNumber {
            conductor: n,
            coeffs: reduce(prod, n),
        })
    }

    /// Inverse via the extended Euclidean algorithm against Phi_N.
    pub fn checked_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_rational() {
            return Ok(Self::rational_in(self.conductor, self.coeffs[0].recip()));
        }
        let modulus: Vec<Rational> = cyclotomic_polynomial(self.conductor)
            .iter()
            .map(|&c| Rational::from_integer(BigInt::from(c)))
            .collect();
        let (g, s) = upoly::ext_gcd(self.coeffs.clone(), modulus);
        // g is a nonzero constant because Phi_N is irreducible.
        debug_assert_eq!(g.len(), 1);
        let g0 = g[0].recip();
        let s: Vec<Rational> = s.into_iter().map(|c| c * &g0).collect();
        Ok(CycNumber {
            conductor: self.conductor,
            coeffs: reduce(s, self.conductor),
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.common_conductor(other)?;
        self.checked_mul(&other.checked_inv()?)
    }

    /// Image under complex conjugation zeta -> zeta^{-1}.
    pub fn conj(&self) -> Self {
        if self.conductor == 1 {
            return self.clone();
        }
        let n = self.conductor as usize;
        let mut v = vec![Rational::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[(n - k) % n] += c;
        }
        CycNumber {
            conductor: self.conductor,
            coeffs: reduce(v, self.conductor),
        }
    }

    pub fn pow(&self, e: i64) -> Self {
        let mut base = if e < 0 {
            self.checked_inv().expect("negative power of zero")
        } else {
            self.clone()
        };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one_in(self.conductor);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &base;
            }
            base = base.clone() * &base;
            e >>= 1;
        }
        acc
    }

    /// Smallest k in 1..=bound with self^k = 1.
    pub fn multiplicative_order(&self, bound: u32) -> Option<u32> {
        let one = Self::one_in(self.conductor);
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc == one {
                return Some(k);
            }
            acc = acc * self;
        }
        None
    }
}

impl Zero for CycNumber {
    fn zero() -> Self {
        Self::zero_in(1)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl One for CycNumber {
    fn one() -> Self {
        Self::one_in(1)
    }
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        if self.conductor == 1 || other.conductor == 1 {
            return self.is_rational() && other.is_rational() && self.coeffs[0] == other.coeffs[0];
        }
        false
    }
}

impl Eq for CycNumber {}

impl Hash for CycNumber {
    fn hash<H: Hasher>(&self, state: &mut H) {
        if self.is_rational() {
            1u32.hash(state);
            self.coeffs[0].hash(state);
        } else {
            self.conductor.hash(state);
            self.coeffs.hash(state);
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a> $tr<&'a CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $method(self, rhs: &'a CycNumber) -> CycNumber {
                self.$checked(rhs).expect("cyclotomic arithmetic")
            }
        }
        impl $tr<CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $method(self, rhs: CycNumber) -> CycNumber {
                self.$checked(&rhs).expect("cyclotomic arithmetic")
            }
        }
        impl<'a, 'b> $tr<&'b CycNumber> for &'a CycNumber {
            type Output = CycNumber;
            fn $method(self, rhs: &'b CycNumber) -> CycNumber {
                self.$checked(rhs).expect("cyclotomic arithmetic")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl<'a> AddAssign<&'a CycNumber> for CycNumber {
    fn add_assign(&mut self, rhs: &'a CycNumber) {
        if self.conductor == rhs.conductor {
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *x += y;
            }
        } else {
            *self = self.checked_add(rhs).expect("cyclotomic arithmetic");
        }
    }
}

impl<'a> SubAssign<&'a CycNumber> for CycNumber {
    fn sub_assign(&mut self, rhs: &'a CycNumber) {
        if self.conductor == rhs.conductor {
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *x -= y;
            }
        } else {
            *self = self.checked_sub(rhs).expect("cyclotomic arithmetic");
        }
    }
}

impl Neg for CycNumber {
    type Output = CycNumber;
    fn neg(mut self) -> CycNumber {
        self.coeffs.iter_mut().for_each(|c| *c = -c.clone());
        self
    }
}

impl Field for CycNumber {
    fn inv(&self) -> Option<Self> {
        self.checked_inv().ok()
    }

    fn from_rational(r: &Rational) -> Self {
        Self::rational_in(1, r.clone())
    }

    fn to_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }
}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = format_rational(&c.abs());
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !c.abs().is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "z{}", self.conductor)?;
                    } else {
                        write!(f, "z{}^{k}", self.conductor)?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNumber({})", self)
    }
}

/// Dense univariate polynomials over Q, constant term first.
mod upoly {
    use super::Rational;
    use num_traits::Zero;

    fn trim(p: &mut Vec<Rational>) {
        while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
        if p.is_empty() {
            p.push(Rational::zero());
        }
    }

    fn is_zero(p: &[Rational]) -> bool {
        p.iter().all(Zero::is_zero)
    }

    fn divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let lead = b[db].clone();
        if r.len() <= db {
            return (vec![Rational::zero()], r);
        }
        let mut q = vec![Rational::zero(); r.len() - db];
        for k in (0..q.len()).rev() {
            let c = r[k + db].clone() / &lead;
            if c.is_zero() {
                continue;
            }
            for (i, bc) in b.iter().enumerate() {
                r[k + i] -= &c * bc;
            }
            q[k] = c;
        }
        trim(&mut r);
        trim(&mut q);
        (q, r)
    }

    fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(&mut out);
        out
    }

    fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); a.len().max(b.len())];
        for (i, x) in a.iter().enumerate() {
            out[i] += x;
        }
        for (i, y) in b.iter().enumerate() {
            out[i] -= y;
        }
        trim(&mut out);
        out
    }

    /// Returns (g, s) with s*a = g modulo m.
    pub fn ext_gcd(a: Vec<Rational>, m: Vec<Rational>) -> (Vec<Rational>, Vec<Rational>) {
        let (mut r0, mut r1) = (m, a);
        trim(&mut r0);
        trim(&mut r1);
        let (mut s0, mut s1) = (vec![Rational::zero()], vec![Rational::from_integer(1.into())]);
        while !is_zero(&r1) {
            let (q, r) = divrem(&r0, &r1);
            let s2 = sub(&s0, &mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        (r0, s0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::field::rat;

    fn z(n: u32, k: i64) -> CycNumber {
        CycNumber::root_of_unity(n, k)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), &[-1, 1]);
        assert_eq!(cyclotomic_polynomial(3), &[1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), &[1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), &[1, 0, -1, 0, 1]);
        for n in 1..40 {
            assert_eq!(cyclotomic_polynomial(n).len() - 1, euler_phi(n));
        }
    }

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(z(4, 1) * z(4, 1), CycNumber::rational_in(4, rat(-1, 1)));
    }

    #[test]
    fn cube_roots_sum_to_zero() {
        let s = CycNumber::one_in(3) + z(3, 1) + z(3, 2);
        assert!(s.is_zero());
    }

    #[test]
    fn divide_one_by_one_minus_zeta3() {
        let one = CycNumber::one_in(3);
        let q = one.checked_div(&(one.clone() - z(3, 1))).unwrap();
        // (1 - zeta^2)/3
        let expected = (one.clone() - z(3, 2)) * CycNumber::rational_in(3, rat(1, 3));
        assert_eq!(q, expected);
        assert_eq!(q * (one.clone() - z(3, 1)), one);
    }

    #[test]
    fn division_by_zero_and_mismatch() {
        assert!(matches!(
            CycNumber::one_in(5).checked_div(&CycNumber::zero_in(5)),
            Err(Error::DivisionByZero)
        ));
        assert!(matches!(
            z(3, 1).checked_add(&z(4, 1)),
            Err(Error::ConductorMismatch(3, 4))
        ));
        // rationals embed everywhere
        assert_eq!(z(4, 1) + CycNumber::from_i64(2), z(4, 1) + CycNumber::rational_in(4, rat(2, 1)));
    }

    #[test]
    fn conjugation() {
        assert_eq!(z(4, 1).conj(), -z(4, 1));
        let r = CycNumber::rational_in(7, rat(5, 7));
        assert_eq!(r.conj(), r);
        assert_eq!(z(5, 2).conj(), z(5, 3));
    }

    #[test]
    fn conductor_two_is_rational() {
        assert_eq!(CycNumber::root_of_unity(2, 1), CycNumber::from_i64(-1));
        assert_eq!(CycNumber::zero_in(2).conductor(), 1);
    }

    #[test]
    fn orders() {
        assert_eq!(z(12, 3).multiplicative_order(24), Some(4));
        assert_eq!(z(3, 1).pow(-1), z(3, 2));
        assert_eq!(CycNumber::from_i64(-1).multiplicative_order(4), Some(2));
    }

    #[test]
    fn display() {
        let a = CycNumber::rational_in(3, rat(1, 2)) - z(3, 1);
        assert_eq!(a.to_string(), "1/2 - z3");
        assert_eq!(CycNumber::zero_in(4).to_string(), "0");
    }
}
