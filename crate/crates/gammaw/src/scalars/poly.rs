//! Dense univariate polynomials over the big rationals.
//!
//! Just enough arithmetic for cyclotomic-polynomial reduction and the
//! j-invariant identities of the case catalog.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::complex::BigComplex;
use super::float::BigReal;

/// Coefficients in ascending degree order; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoly(Vec<BigRational>);

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly(coeffs)
    }

    pub fn zero() -> Self {
        RatPoly(Vec::new())
    }

    pub fn one() -> Self {
        RatPoly(vec![BigRational::one()])
    }

    /// c * x^k
    pub fn monomial(c: BigRational, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigRational::zero(); k + 1];
        v[k] = c;
        RatPoly(v)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from(BigInt::from(c))).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.0.len() - 1)
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let mut v = vec![BigRational::zero(); n];
        for (i, c) in self.0.iter().enumerate() {
            v[i] += c;
        }
        for (i, c) in o.0.iter().enumerate() {
            v[i] += c;
        }
        Self::new(v)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.0.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::new(v)
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// Euclidean division; the divisor must be nonzero.
    pub fn divmod(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree().unwrap();
        let lead = d.0[dd].clone();
        let mut rem = self.0.clone();
        let mut quo = vec![BigRational::zero(); self.0.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1;
            let c = &rem[k] / &lead;
            if !c.is_zero() {
                quo[k - dd] = c.clone();
                for j in 0..=dd {
                    let t = &d.0[j] * &c;
                    rem[k - dd + j] -= t;
                }
            }
            rem.pop();
        }
        (Self::new(quo), Self::new(rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divmod(d).1
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_real(&self, x: &BigReal) -> BigReal {
        let digits = x.digits();
        let mut acc = BigReal::zero(digits);
        for c in self.0.iter().rev() {
            acc = acc.mul(x).add(&BigReal::from_rational(c, digits));
        }
        acc
    }

    pub fn eval_complex(&self, x: &BigComplex) -> BigComplex {
        let digits = x.digits();
        let mut acc = BigComplex::zero(digits);
        for c in self.0.iter().rev() {
            acc = acc.mul(x).add(&BigComplex::from_rational(c, digits));
        }
        acc
    }
}

/// Extended Euclid over Q[x]: returns (g, s, t) with s*a + t*b = g (g monic).
pub fn extended_gcd(a: &RatPoly, b: &RatPoly) -> (RatPoly, RatPoly, RatPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (RatPoly::one(), RatPoly::zero());
    let (mut t0, mut t1) = (RatPoly::zero(), RatPoly::one());
    while !r1.is_zero() {
        let (q, r) = r0.divmod(&r1);
        let s = s0.sub(&q.mul(&s1));
        let t = t0.sub(&q.mul(&t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    if let Some(d) = r0.degree() {
        let lead = r0.coeffs()[d].clone();
        let inv = BigRational::one() / lead;
        return (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv));
    }
    (r0, s0, t0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divmod_roundtrip() {
        let a = RatPoly::from_i64(&[2, 0, -3, 1, 5]);
        let b = RatPoly::from_i64(&[1, 2, 1]);
        let (q, r) = a.divmod(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < b.degree().unwrap());
    }

    #[test]
    fn bezout_identity() {
        let a = RatPoly::from_i64(&[-1, 0, 0, 0, 1]); // x^4 - 1
        let b = RatPoly::from_i64(&[1, 1]); // x + 1
        let (g, s, t) = extended_gcd(&a, &b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
        assert_eq!(g, RatPoly::from_i64(&[1, 1])); // monic gcd = x + 1
    }
}
