//! Complex numbers over [`BigReal`], principal-branch elementary functions.

use std::fmt;

use num_rational::BigRational;

use super::float::BigReal;
use super::ScalarError;

#[derive(Clone, PartialEq)]
pub struct BigComplex {
    pub re: BigReal,
    pub im: BigReal,
}

impl BigComplex {
    pub fn new(re: BigReal, im: BigReal) -> Self {
        BigComplex { re, im }
    }

    pub fn zero(digits: u32) -> Self {
        BigComplex { re: BigReal::zero(digits), im: BigReal::zero(digits) }
    }

    pub fn one(digits: u32) -> Self {
        BigComplex { re: BigReal::from_i64(1, digits), im: BigReal::zero(digits) }
    }

    pub fn from_real(re: BigReal) -> Self {
        let im = BigReal::zero(re.digits());
        BigComplex { re, im }
    }

    pub fn from_i64(v: i64, digits: u32) -> Self {
        Self::from_real(BigReal::from_i64(v, digits))
    }

    pub fn from_rational(q: &BigRational, digits: u32) -> Self {
        Self::from_real(BigReal::from_rational(q, digits))
    }

    pub fn i(digits: u32) -> Self {
        BigComplex { re: BigReal::zero(digits), im: BigReal::from_i64(1, digits) }
    }

    /// 2 pi i at the given precision.
    pub fn two_pi_i(digits: u32) -> Self {
        BigComplex { re: BigReal::zero(digits), im: BigReal::pi(digits).mul_i64(2) }
    }

    pub fn digits(&self) -> u32 {
        self.re.digits().min(self.im.digits())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        BigComplex { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        BigComplex { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn neg(&self) -> Self {
        BigComplex { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        BigComplex {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn mul_real(&self, r: &BigReal) -> Self {
        BigComplex { re: self.re.mul(r), im: self.im.mul(r) }
    }

    pub fn div(&self, o: &Self) -> Result<Self, ScalarError> {
        if o.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let den = o.re.mul(&o.re).add(&o.im.mul(&o.im));
        let num = self.mul(&o.conj());
        Ok(BigComplex { re: num.re.div(&den), im: num.im.div(&den) })
    }

    pub fn conj(&self) -> Self {
        BigComplex { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn abs(&self) -> BigReal {
        self.re.mul(&self.re).add(&self.im.mul(&self.im)).sqrt()
    }

    pub fn arg(&self) -> BigReal {
        BigReal::atan2(&self.im, &self.re)
    }

    /// Principal logarithm: Im(ln z) in (-pi, pi].
    pub fn ln(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::LogDomain);
        }
        Ok(BigComplex { re: self.abs().ln()?, im: self.arg() })
    }

    pub fn exp(&self) -> Self {
        let m = self.re.exp();
        BigComplex { re: m.mul(&self.im.cos()), im: m.mul(&self.im.sin()) }
    }

    /// Principal power z^t for real t.
    pub fn pow_real(&self, t: &BigReal) -> Result<Self, ScalarError> {
        Ok(self.ln()?.mul_real(t).exp())
    }

    /// e^{2 pi i q} for a rational q.
    pub fn unit_root(q: &BigRational, digits: u32) -> Self {
        let theta = BigReal::pi(digits).mul_i64(2).mul(&BigReal::from_rational(q, digits));
        BigComplex { re: theta.cos(), im: theta.sin() }
    }

    pub fn dist(&self, o: &Self) -> BigReal {
        self.sub(o).abs()
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Debug for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + {:?}i)", self.re, self.im)
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i)", self.re, self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_field_ops() {
        let d = 50;
        let z = BigComplex::new(BigReal::from_i64(3, d), BigReal::from_i64(4, d));
        let w = z.div(&z).unwrap();
        assert!(w.sub(&BigComplex::one(d)).abs().abs_below_pow10(47));
        assert!(z.abs().sub(&BigReal::from_i64(5, d)).abs_below_pow10(47));
    }

    #[test]
    fn principal_log_of_negative_real() {
        let d = 50;
        let z = BigComplex::from_i64(-1728, d);
        let l = z.ln().unwrap();
        // ln(-1728) = ln 1728 + i pi
        assert!(l.im.sub(&BigReal::pi(d)).abs_below_pow10(45));
        assert!(l.re.sub(&BigReal::from_i64(1728, d).ln().unwrap()).abs_below_pow10(45));
    }

    #[test]
    fn unit_root_sixth() {
        let d = 60;
        let q = BigRational::new(1.into(), 6.into());
        let z = BigComplex::unit_root(&q, d);
        // e^{i pi/3} = 1/2 + (sqrt3/2) i
        let half = BigReal::from_i64(1, d).div_i64(2);
        assert!(z.re.sub(&half).abs_below_pow10(57));
        let s3h = BigReal::from_i64(3, d).sqrt().div_i64(2);
        assert!(z.im.sub(&s3h).abs_below_pow10(57));
    }

    #[test]
    fn exp_ln_roundtrip() {
        let d = 50;
        let z = BigComplex::new(
            BigReal::parse("0.7", d).unwrap(),
            BigReal::parse("-2.3", d).unwrap(),
        );
        let w = z.ln().unwrap().exp();
        assert!(z.dist(&w).abs_below_pow10(46));
    }
}
