//! Arbitrary-precision real numbers with a decimal-digit precision policy.
//!
//! `BigReal` wraps `astro_float::BigFloat`. Every value carries the number of
//! decimal digits it was constructed with; binary operations coerce to the
//! lower precision of the two operands, so precision never silently inflates.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ScalarError;

const RM: RoundingMode = RoundingMode::ToEven;
/// Guard bits on top of the requested decimal precision.
const GUARD_BITS: usize = 32;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

fn bits_for(digits: u32) -> usize {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + GUARD_BITS
}

/// Real number at a fixed decimal precision.
#[derive(Clone)]
pub struct BigReal {
    x: BigFloat,
    digits: u32,
}

impl BigReal {
    pub fn digits(&self) -> u32 {
        self.digits
    }

    fn bits(&self) -> usize {
        bits_for(self.digits)
    }

    pub fn zero(digits: u32) -> Self {
        BigReal { x: BigFloat::from_i64(0, bits_for(digits)), digits }
    }

    pub fn from_i64(v: i64, digits: u32) -> Self {
        BigReal { x: BigFloat::from_i64(v, bits_for(digits)), digits }
    }

    pub fn from_bigint(v: &BigInt, digits: u32) -> Self {
        BigReal { x: bigint_to_bigfloat(v, bits_for(digits)), digits }
    }

    pub fn from_rational(q: &BigRational, digits: u32) -> Self {
        let p = bits_for(digits);
        // Exact numerator and denominator, one correctly rounded division.
        let work = p + 64;
        let num = bigint_to_bigfloat(q.numer(), work);
        let den = bigint_to_bigfloat(q.denom(), work);
        BigReal { x: num.div(&den, p, RM), digits }
    }

    /// Parses a plain or scientific decimal literal. Decimal-to-binary
    /// conversion goes through exact integer arithmetic (astro-float's own
    /// string parser mis-rounds some long literals).
    pub fn parse(s: &str, digits: u32) -> Result<Self, ScalarError> {
        let t = s.trim();
        let (mant_str, exp) = match t.split_once(['e', 'E']) {
            Some((m, e)) => (m, e.parse::<i64>().map_err(|_| ScalarError::Parse(s.into()))?),
            None => (t, 0i64),
        };
        let (neg, mant_str) = match mant_str.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, mant_str.strip_prefix('+').unwrap_or(mant_str)),
        };
        let (int_part, frac_part) = match mant_str.split_once('.') {
            Some((i, f)) => (i, f),
            None => (mant_str, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(ScalarError::Parse(s.into()));
        }
        let all: String = format!("{}{}", int_part, frac_part);
        if !all.chars().all(|c| c.is_ascii_digit()) {
            return Err(ScalarError::Parse(s.into()));
        }
        let mut mant: BigInt = if all.is_empty() {
            BigInt::zero()
        } else {
            all.parse().map_err(|_| ScalarError::Parse(s.into()))?
        };
        if neg {
            mant = -mant;
        }
        let shift = exp - frac_part.len() as i64;
        let q = if shift >= 0 {
            BigRational::from(mant * BigInt::from(10u32).pow(shift as u32))
        } else {
            BigRational::new(mant, BigInt::from(10u32).pow((-shift) as u32))
        };
        Ok(Self::from_rational(&q, digits))
    }

    pub fn pi(digits: u32) -> Self {
        let p = bits_for(digits);
        BigReal { x: with_consts(|cc| cc.pi(p, RM)), digits }
    }

    /// 10^k at the given precision (k may be negative).
    pub fn pow10(k: i64, digits: u32) -> Self {
        let ten = Self::from_i64(10, digits);
        ten.pow_i(k)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.x.sign() == Some(Sign::Neg) && !self.x.is_zero()
    }

    fn join(&self, rhs: &Self) -> (usize, u32) {
        let digits = self.digits.min(rhs.digits);
        (bits_for(digits), digits)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let (p, digits) = self.join(rhs);
        BigReal { x: self.x.add(&rhs.x, p, RM), digits }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let (p, digits) = self.join(rhs);
        BigReal { x: self.x.sub(&rhs.x, p, RM), digits }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let (p, digits) = self.join(rhs);
        BigReal { x: self.x.mul(&rhs.x, p, RM), digits }
    }

    pub fn div(&self, rhs: &Self) -> Self {
        let (p, digits) = self.join(rhs);
        BigReal { x: self.x.div(&rhs.x, p, RM), digits }
    }

    pub fn neg(&self) -> Self {
        BigReal { x: self.x.neg(), digits: self.digits }
    }

    pub fn abs(&self) -> Self {
        BigReal { x: self.x.abs(), digits: self.digits }
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        self.mul(&Self::from_i64(k, self.digits))
    }

    pub fn div_i64(&self, k: i64) -> Self {
        self.div(&Self::from_i64(k, self.digits))
    }

    pub fn sqrt(&self) -> Self {
        BigReal { x: self.x.sqrt(self.bits(), RM), digits: self.digits }
    }

    pub fn ln(&self) -> Result<Self, ScalarError> {
        if self.is_zero() || self.is_negative() {
            return Err(ScalarError::LogDomain);
        }
        let x = with_consts(|cc| self.x.ln(self.bits(), RM, cc));
        Ok(BigReal { x, digits: self.digits })
    }

    pub fn exp(&self) -> Self {
        let x = with_consts(|cc| self.x.exp(self.bits(), RM, cc));
        BigReal { x, digits: self.digits }
    }

    pub fn sin(&self) -> Self {
        let x = with_consts(|cc| self.x.sin(self.bits(), RM, cc));
        BigReal { x, digits: self.digits }
    }

    pub fn cos(&self) -> Self {
        let x = with_consts(|cc| self.x.cos(self.bits(), RM, cc));
        BigReal { x, digits: self.digits }
    }

    pub fn atan(&self) -> Self {
        let x = with_consts(|cc| self.x.atan(self.bits(), RM, cc));
        BigReal { x, digits: self.digits }
    }

    /// Two-argument arctangent of `y`/`x` on the principal branch.
    pub fn atan2(y: &Self, x: &Self) -> Self {
        let digits = y.digits.min(x.digits);
        let pi = Self::pi(digits);
        if x.is_zero() {
            if y.is_zero() {
                return Self::zero(digits);
            }
            let half = pi.div_i64(2);
            return if y.is_negative() { half.neg() } else { half };
        }
        let base = y.div(x).atan();
        if !x.is_negative() {
            base
        } else if y.is_negative() {
            base.sub(&pi)
        } else {
            base.add(&pi)
        }
    }

    pub fn pow_i(&self, k: i64) -> Self {
        let p = self.bits();
        if k >= 0 {
            BigReal { x: self.x.powi(k as usize, p, RM), digits: self.digits }
        } else {
            let inv = BigFloat::from_i64(1, p).div(&self.x, p, RM);
            BigReal { x: inv.powi((-k) as usize, p, RM), digits: self.digits }
        }
    }

    /// Real l-th root: positive branch for positive input, and the real
    /// negative branch for negative input with odd l.
    pub fn nth_root(&self, l: u32) -> Result<Self, ScalarError> {
        if l == 0 {
            return Err(ScalarError::LogDomain);
        }
        if self.is_negative() {
            if l % 2 == 0 {
                return Err(ScalarError::LogDomain);
            }
            return Ok(self.neg().nth_root(l)?.neg());
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        Ok(self.ln()?.div_i64(l as i64).exp())
    }

    pub fn cmp_abs(&self, rhs: &Self) -> Ordering {
        self.abs().partial_cmp(&rhs.abs()).unwrap_or(Ordering::Equal)
    }

    /// True when |self| < 10^-k.
    pub fn abs_below_pow10(&self, k: i64) -> bool {
        self.abs().partial_cmp(&Self::pow10(-k, self.digits)) == Some(Ordering::Less)
    }

    /// Signed integer mantissa and binary exponent with self = M * 2^k.
    /// None for zero (and non-values, which the wrapper never produces).
    fn to_mantissa_exp2(&self) -> Option<(BigInt, i64)> {
        if self.x.is_zero() {
            return None;
        }
        let (words, _n, sign, e, _inexact) = self.x.as_raw_parts()?;
        let mut m = BigInt::zero();
        for &w in words.iter().rev() {
            m = (m << 64) + BigInt::from(w);
        }
        if sign == Sign::Neg {
            m = -m;
        }
        Some((m, e as i64 - 64 * words.len() as i64))
    }

    /// Nearest integer, ties away from zero.
    pub fn round_to_bigint(&self) -> BigInt {
        let Some((m, k)) = self.to_mantissa_exp2() else {
            return BigInt::zero();
        };
        if k >= 0 {
            return m << k;
        }
        let shift = (-k) as u64;
        let a = m.abs();
        let q = (a + (BigInt::one() << (shift - 1))) >> shift;
        if self.is_negative() {
            -q
        } else {
            q
        }
    }

    pub fn floor_to_bigint(&self) -> BigInt {
        let Some((m, k)) = self.to_mantissa_exp2() else {
            return BigInt::zero();
        };
        if k >= 0 {
            return m << k;
        }
        let shift = (-k) as u64;
        if self.is_negative() {
            let a = m.abs();
            -((a + (BigInt::one() << shift) - BigInt::one()) >> shift)
        } else {
            m >> shift
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_decimal_string(17).parse::<f64>().unwrap_or(f64::NAN)
    }

    /// Scientific decimal string with `digits` significant digits, produced
    /// by exact integer scaling (astro-float's own decimal conversion drops
    /// digits for some inputs).
    pub fn to_decimal_string(&self, digits: u32) -> String {
        let digits = digits.max(1).min(self.digits.max(1)) as i64;
        let Some((m, k)) = self.to_mantissa_exp2() else {
            return "0.0".into();
        };
        let a = m.abs();
        let bitlen = a.bits() as i64 + k; // |v| in [2^(bitlen-1), 2^bitlen)
        let mut e10 = ((bitlen as f64 - 0.5) * std::f64::consts::LOG10_2).floor() as i64;
        loop {
            // N = round(|v| * 10^(digits - 1 - e10)), exact.
            let pow10 = digits - 1 - e10;
            let mut num = a.clone();
            let mut den = BigInt::one();
            if k >= 0 {
                num <<= k as u64;
            } else {
                den <<= (-k) as u64;
            }
            if pow10 >= 0 {
                num *= BigInt::from(10u32).pow(pow10 as u32);
            } else {
                den *= BigInt::from(10u32).pow((-pow10) as u32);
            }
            let n: BigInt = (BigInt::from(2) * num + &den) / (BigInt::from(2) * den);
            let s = n.to_string();
            let got = s.len() as i64;
            if got == digits {
                let neg = if self.is_negative() { "-" } else { "" };
                let (head, tail) = s.split_at(1);
                let body = if tail.is_empty() {
                    format!("{}.0", head)
                } else {
                    format!("{}.{}", head, tail)
                };
                return format!("{}{}e{}", neg, body, e10);
            }
            e10 += got - digits;
        }
    }
}

/// Exact BigInt -> BigFloat conversion via base-2^32 limbs, rounded once at
/// the end.
fn bigint_to_bigfloat(v: &BigInt, p: usize) -> BigFloat {
    if let Some(small) = v.to_i64() {
        return BigFloat::from_i64(small, p);
    }
    let (sign, limbs) = v.to_u32_digits();
    let work = p.max(32 * limbs.len() + 64);
    let base = BigFloat::from_i64(1i64 << 32, work);
    let mut acc = BigFloat::from_i64(0, work);
    for &limb in limbs.iter().rev() {
        acc = acc
            .mul(&base, work, RM)
            .add(&BigFloat::from_u64(limb as u64, work), work, RM);
    }
    let rounded = acc.add(&BigFloat::from_i64(0, p), p, RM);
    if sign == num_bigint::Sign::Minus {
        rounded.neg()
    } else {
        rounded
    }
}

impl PartialEq for BigReal {
    fn eq(&self, other: &Self) -> bool {
        self.x == other.x
    }
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.x.partial_cmp(&other.x)
    }
}

impl fmt::Debug for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}~{}d", self.to_decimal_string(12.min(self.digits)), self.digits)
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_string(self.digits))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(x: &BigReal, expect: &str, tol_exp: i64) {
        let e = BigReal::parse(expect, x.digits()).unwrap();
        assert!(
            x.sub(&e).abs_below_pow10(tol_exp),
            "{} != {} (tol 1e-{})",
            x,
            e,
            tol_exp
        );
    }

    #[test]
    fn pi_value() {
        let pi = BigReal::pi(60);
        assert_close(&pi, "3.14159265358979323846264338327950288419716939937510582097494", 58);
    }

    #[test]
    fn ln_exp_roundtrip() {
        let x = BigReal::from_i64(7, 60).div_i64(3);
        let y = x.ln().unwrap().exp();
        assert!(x.sub(&y).abs_below_pow10(57));
    }

    #[test]
    fn sqrt2() {
        let s = BigReal::from_i64(2, 60).sqrt();
        assert_close(&s, "1.414213562373095048801688724209698078569671875376948073176679737990732", 58);
    }

    #[test]
    fn precision_coercion_takes_min() {
        let a = BigReal::from_i64(1, 80);
        let b = BigReal::from_i64(3, 40);
        assert_eq!(a.div(&b).digits(), 40);
    }

    #[test]
    fn rounding_and_floor() {
        let x = BigReal::parse("3.75", 40).unwrap();
        assert_eq!(x.round_to_bigint(), BigInt::from(4));
        assert_eq!(x.floor_to_bigint(), BigInt::from(3));
        let y = BigReal::parse("-3.75", 40).unwrap();
        assert_eq!(y.round_to_bigint(), BigInt::from(-4));
        assert_eq!(y.floor_to_bigint(), BigInt::from(-4));
        let z = BigReal::parse("-2", 40).unwrap();
        assert_eq!(z.floor_to_bigint(), BigInt::from(-2));
        assert_eq!(z.round_to_bigint(), BigInt::from(-2));
    }

    #[test]
    fn big_integer_conversion() {
        let n: BigInt = "123456789012345678901234567890".parse().unwrap();
        let x = BigReal::from_bigint(&n, 60);
        assert_eq!(x.round_to_bigint(), n);
    }

    #[test]
    fn atan2_quadrants() {
        let d = 50;
        let one = BigReal::from_i64(1, d);
        let none = one.neg();
        let pi = BigReal::pi(d);
        // second quadrant: atan2(1, -1) = 3pi/4
        let a = BigReal::atan2(&one, &none);
        assert!(a.sub(&pi.mul_i64(3).div_i64(4)).abs_below_pow10(45));
        // third quadrant: atan2(-1, -1) = -3pi/4
        let b = BigReal::atan2(&none, &none);
        assert!(b.add(&pi.mul_i64(3).div_i64(4)).abs_below_pow10(45));
    }

    #[test]
    fn nth_root_negative_odd() {
        let x = BigReal::from_i64(-27, 50);
        let r = x.nth_root(3).unwrap();
        assert!(r.add(&BigReal::from_i64(3, 50)).abs_below_pow10(47));
    }
}
