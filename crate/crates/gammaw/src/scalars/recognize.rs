//! Recognition of numeric values as exact elements of Q(zeta_12).
//!
//! Q(zeta_12) = Q(i, sqrt(3)), so a complex value belongs to it iff both the
//! real and the imaginary part have the form a + b*sqrt(3) with a, b
//! rational. Recognition searches b's denominator up to the policy bound and
//! detects the rational remainder by continued fractions; no lattice
//! reduction is involved, so the search is deterministic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::complex::BigComplex;
use super::cyclotomic::CycElem;
use super::float::BigReal;
use super::ScalarError;

/// Parameters governing exact recognition.
#[derive(Clone, Debug)]
pub struct RecognitionPolicy {
    /// Target field Q(zeta_N); must divide 12.
    pub field_order: u32,
    /// Largest allowed coordinate denominator.
    pub denominator_bound: u64,
    /// Residual threshold 10^-residual_log10.
    pub residual_log10: u32,
    /// Precision multiplier for the confirmation pass.
    pub confirm_precision_factor: u32,
}

impl Default for RecognitionPolicy {
    fn default() -> Self {
        RecognitionPolicy {
            field_order: 12,
            denominator_bound: 64,
            residual_log10: 30,
            confirm_precision_factor: 2,
        }
    }
}

impl RecognitionPolicy {
    /// The invariant residual_tolerance <= 10^{-digits/2}.
    pub fn validate_for(&self, digits: u32) -> Result<(), ScalarError> {
        if 12 % self.field_order != 0 {
            return Err(ScalarError::Recognition(format!(
                "field order {} not a divisor of 12",
                self.field_order
            )));
        }
        if (self.residual_log10 as u64) < (digits as u64) / 2 {
            return Err(ScalarError::Recognition(format!(
                "residual tolerance 1e-{} too loose for {} digits",
                self.residual_log10, digits
            )));
        }
        if self.confirm_precision_factor < 2 {
            return Err(ScalarError::Recognition(
                "confirmation factor must be at least 2".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RecognitionFailure {
    /// No candidate within the denominator bound met the tolerance.
    NoCandidate,
    /// The candidate failed re-checking at higher precision.
    ConfirmFailed,
    /// Input precision below the minimum (40 digits).
    PrecisionTooLow,
}

impl std::fmt::Display for RecognitionFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RecognitionFailure::NoCandidate => write!(f, "no candidate within the denominator bound"),
            RecognitionFailure::ConfirmFailed => write!(f, "confirmation at higher precision failed"),
            RecognitionFailure::PrecisionTooLow => write!(f, "working precision below 40 digits"),
        }
    }
}

/// Detects a rational p/q with q <= max_den within tol of r, by continued
/// fractions. Deterministic: the first convergent inside the tolerance wins.
pub fn detect_rational(r: &BigReal, max_den: u64, tol_log10: u32) -> Option<BigRational> {
    let bound = BigInt::from(max_den);
    // Convergent recurrence p_k = a_k p_{k-1} + p_{k-2}, same for q.
    let mut p_prev = BigInt::one();
    let mut p_prev2 = BigInt::zero();
    let mut q_prev = BigInt::zero();
    let mut q_prev2 = BigInt::one();
    let mut x = r.clone();
    for _ in 0..64 {
        let a = x.floor_to_bigint();
        let p = &a * &p_prev + &p_prev2;
        let q = &a * &q_prev + &q_prev2;
        if q > bound {
            return None;
        }
        let cand = BigRational::new(p.clone(), q.clone().max(BigInt::one()));
        let cand_val = BigReal::from_rational(&cand, r.digits());
        if r.sub(&cand_val).abs_below_pow10(tol_log10 as i64) {
            return Some(cand);
        }
        let frac = x.sub(&BigReal::from_bigint(&a, x.digits()));
        if frac.abs_below_pow10(tol_log10 as i64 + 2) {
            return None; // exhausted the expansion without a hit
        }
        x = BigReal::from_i64(1, x.digits()).div(&frac);
        p_prev2 = p_prev;
        p_prev = p;
        q_prev2 = q_prev;
        q_prev = q;
    }
    None
}

/// Decomposes r as a + b*sqrt(3), both rational with denominators <= bound.
fn detect_quadratic(r: &BigReal, bound: u64, tol_log10: u32) -> Option<(BigRational, BigRational)> {
    // Rational-only fast path (b = 0).
    if let Some(a) = detect_rational(r, bound, tol_log10) {
        return Some((a, BigRational::zero()));
    }
    let digits = r.digits();
    let sqrt3 = BigReal::from_i64(3, digits).sqrt();
    // |b| <= (2|r| + 4)/sqrt(3) + 1 covers every entry the pipeline produces.
    let r_f64 = r.to_f64().abs();
    let numer_scale = ((2.0 * r_f64 + 4.0) / 3.0_f64.sqrt() + 1.0).ceil() as i64;
    for q in 1..=bound as i64 {
        let limit = numer_scale * q;
        for p_abs in 1..=limit {
            for sign in [1i64, -1] {
                let p = sign * p_abs;
                if num_integer::gcd(p, q) != 1 {
                    continue;
                }
                let b = BigRational::new(BigInt::from(p), BigInt::from(q));
                let rem = r.sub(&BigReal::from_rational(&b, digits).mul(&sqrt3));
                if let Some(a) = detect_rational(&rem, bound, tol_log10) {
                    return Some((a, b));
                }
            }
        }
    }
    None
}

/// Builds the zeta_12-coordinate element from the two quadratic
/// decompositions re = a1 + b1*sqrt3, im = a2 + b2*sqrt3.
///
/// With z = zeta_12 = (sqrt3 + i)/2: z^2 = (1 + i sqrt3)/2, z^3 = i, so
/// c0 = a1 - b2, c1 = 2 b1, c2 = 2 b2, c3 = a2 - b1.
fn assemble_zeta12(
    a1: &BigRational,
    b1: &BigRational,
    a2: &BigRational,
    b2: &BigRational,
) -> CycElem {
    let c0 = a1 - b2;
    let c1 = b1 * BigRational::from(BigInt::from(2));
    let c2 = b2 * BigRational::from(BigInt::from(2));
    let c3 = a2 - b1;
    CycElem::normalize(12, vec![c0, c1, c2, c3])
}

/// Single-shot recognition of z as an element of Q(zeta_12) under the policy.
/// The caller is responsible for the confirmation pass when a recompute
/// path is available; see [`recognize_confirmed`].
pub fn recognize(z: &BigComplex, policy: &RecognitionPolicy) -> Result<CycElem, RecognitionFailure> {
    let digits = z.digits();
    if digits < 40 {
        return Err(RecognitionFailure::PrecisionTooLow);
    }
    let tol = policy.residual_log10;
    let (a1, b1) =
        detect_quadratic(&z.re, policy.denominator_bound, tol).ok_or(RecognitionFailure::NoCandidate)?;
    let (a2, b2) =
        detect_quadratic(&z.im, policy.denominator_bound, tol).ok_or(RecognitionFailure::NoCandidate)?;
    let e = assemble_zeta12(&a1, &b1, &a2, &b2);
    let bound = BigInt::from(policy.denominator_bound);
    if e.max_denominator() > bound {
        return Err(RecognitionFailure::NoCandidate);
    }
    if 12 % e.order() != 0 || policy.field_order % e.order() != 0 {
        // The canonical form lies outside the requested target field.
        return Err(RecognitionFailure::NoCandidate);
    }
    // Residual re-check against the embedding.
    let err = e.embed(digits).dist(z);
    if !err.abs_below_pow10(tol as i64) {
        return Err(RecognitionFailure::NoCandidate);
    }
    Ok(e)
}

/// Recognition with the confirmation pass: `compute` must produce the same
/// quantity at any requested precision. The candidate found at the base
/// precision is re-checked against a recomputation at
/// `confirm_precision_factor` times the digits.
pub fn recognize_confirmed(
    compute: impl Fn(u32) -> BigComplex,
    base_digits: u32,
    policy: &RecognitionPolicy,
) -> Result<CycElem, RecognitionFailure> {
    let z = compute(base_digits);
    let e = recognize(&z, policy)?;
    let high = base_digits * policy.confirm_precision_factor;
    let z2 = compute(high);
    let err = e.embed(high).dist(&z2);
    if !err.abs_below_pow10(policy.residual_log10 as i64) {
        return Err(RecognitionFailure::ConfirmFailed);
    }
    Ok(e)
}

/// Integer recognition helper for the modular-matrix pipeline: accepts only
/// values within tol of an integer with negligible imaginary part.
pub fn recognize_integer(z: &BigComplex, tol_log10: u32) -> Option<BigInt> {
    if !z.im.abs_below_pow10(tol_log10 as i64) {
        return None;
    }
    let n = z.re.round_to_bigint();
    let back = BigReal::from_bigint(&n, z.re.digits());
    if z.re.sub(&back).abs_below_pow10(tol_log10 as i64) {
        Some(n)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn policy() -> RecognitionPolicy {
        RecognitionPolicy::default()
    }

    #[test]
    fn recognizes_one_half() {
        let d = 60;
        let z = BigComplex::from_rational(&BigRational::new(1.into(), 2.into()), d);
        let e = recognize(&z, &policy()).unwrap();
        assert_eq!(e.as_rational().unwrap(), BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn recognizes_minus_i_over_sqrt3() {
        // -i/sqrt(3) = -(i sqrt3)/3: entry of an E8 twisted matrix.
        let d = 60;
        let s3 = BigReal::from_i64(3, d).sqrt();
        let z = BigComplex::new(BigReal::zero(d), BigReal::from_i64(-1, d).div(&s3));
        let e = recognize(&z, &policy()).unwrap();
        // (e * i sqrt3)^2 should be ... simpler: square it: (-i/sqrt3)^2 = -1/3
        let sq = e.mul(&e);
        assert_eq!(sq.as_rational().unwrap(), BigRational::new((-1).into(), 3.into()));
        // round trip through the embedding
        assert!(e.embed(d).dist(&z).abs_below_pow10(55));
    }

    #[test]
    fn rejects_transcendental_k1() {
        // K1 for alpha=beta=1/4 is pi + 6 ln 2.
        let d = 60;
        let v = BigReal::pi(d).add(&BigReal::from_i64(2, d).ln().unwrap().mul_i64(6));
        let z = BigComplex::from_real(v);
        assert_eq!(recognize(&z, &policy()), Err(RecognitionFailure::NoCandidate));
    }

    #[test]
    fn rejects_low_precision() {
        let z = BigComplex::from_i64(1, 15);
        assert_eq!(recognize(&z, &policy()), Err(RecognitionFailure::PrecisionTooLow));
    }

    #[test]
    fn confirmed_recognition_roundtrip() {
        let q = BigRational::new(5.into(), 6.into());
        let e = recognize_confirmed(
            |d| CycElem::from_unit_exponent(&q).embed(d),
            60,
            &policy(),
        )
        .unwrap();
        assert_eq!(e, CycElem::from_unit_exponent(&q));
    }

    #[test]
    fn integer_recognition() {
        let d = 60;
        let z = BigComplex::from_i64(-3, d);
        assert_eq!(recognize_integer(&z, 30), Some(BigInt::from(-3)));
        let off = BigComplex::new(
            BigReal::from_i64(1, d).add(&BigReal::pow10(-5, d)),
            BigReal::zero(d),
        );
        assert_eq!(recognize_integer(&off, 30), None);
    }
}
