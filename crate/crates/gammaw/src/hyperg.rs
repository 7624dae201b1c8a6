//! Monodromy of the Gauss hypergeometric equation
//!
//!   x(1-x) y'' + (gamma - (1+alpha+beta) x) y' - alpha beta y = 0
//!
//! for positive rational parameters, in the two regimes the Picard-Fuchs
//! layer needs: the resonant case gamma = alpha + beta = 1 - 1/l, where the
//! solution basis at x = 1 carries a logarithm, and the non-resonant case
//! where none of the exponents 1-gamma, gamma-alpha-beta, beta-alpha is an
//! integer. Includes arbitrary-precision Gamma, digamma and 2F1.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::matgroup::{Mat2, MatError};
use crate::scalars::{BigComplex, BigReal, CycElem, Rational, ScalarError};

pub const DEFAULT_DIGITS: u32 = 60;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HgError {
    #[error("parameters must be strictly positive rationals")]
    NonPositiveParameter,
    #[error("gamma function pole at {0}")]
    GammaPole(String),
    #[error("lower 2F1 parameter is a non-positive integer")]
    LowerParameterPole,
    #[error("outside the series/lens domain: {0}")]
    Domain(String),
    #[error("series did not converge within the term budget")]
    NoConvergence,
    #[error("unsupported parameter regime (neither resonant nor non-resonant)")]
    Unsupported,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Mat(#[from] MatError),
}

/// Hypergeometric parameters (alpha, beta, gamma), all strictly positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HGParams {
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
}

impl HGParams {
    pub fn new(alpha: Rational, beta: Rational, gamma: Rational) -> Result<Self, HgError> {
        if alpha <= Rational::zero() || beta <= Rational::zero() || gamma <= Rational::zero() {
            return Err(HgError::NonPositiveParameter);
        }
        Ok(HGParams { alpha, beta, gamma })
    }

    pub fn of(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> Self {
        HGParams::new(
            Rational::new(a.0.into(), a.1.into()),
            Rational::new(b.0.into(), b.1.into()),
            Rational::new(c.0.into(), c.1.into()),
        )
        .expect("positive parameters")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ResonanceKind {
    /// gamma = alpha + beta = 1 - 1/l.
    Resonant { l: u32 },
    /// None of the exponents is an integer.
    NonResonant,
    Unsupported,
}

/// Classification of the parameter triple together with the local exponents
/// lambda0 = 1 - gamma, lambda1 = gamma - alpha - beta, lambda_inf = beta - alpha.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResonanceClass {
    pub kind: ResonanceKind,
    pub lambda0: Rational,
    pub lambda1: Rational,
    pub lambda_inf: Rational,
}

pub fn classify(p: &HGParams) -> ResonanceClass {
    let lambda0 = Rational::one() - &p.gamma;
    let lambda1 = &p.gamma - &p.alpha - &p.beta;
    let lambda_inf = &p.beta - &p.alpha;
    let kind = if p.gamma == &p.alpha + &p.beta && lambda0 > Rational::zero() && lambda0.numer().is_one()
    {
        ResonanceKind::Resonant { l: lambda0.denom().to_u32().expect("covering degree fits u32") }
    } else if !lambda0.is_integer() && !lambda1.is_integer() && !lambda_inf.is_integer() {
        ResonanceKind::NonResonant
    } else {
        ResonanceKind::Unsupported
    };
    ResonanceClass { kind, lambda0, lambda1, lambda_inf }
}

// ---------------------------------------------------------------------------
// Special functions
// ---------------------------------------------------------------------------

/// Exact Bernoulli numbers B_0, B_1, B_2, ... (memoized prefix).
fn bernoulli(upto: usize) -> Vec<BigRational> {
    static CACHE: OnceLock<Mutex<Vec<BigRational>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(vec![BigRational::one()]));
    let mut list = cache.lock().unwrap();
    while list.len() <= upto {
        let m = list.len();
        // B_m = -1/(m+1) * sum_{k<m} C(m+1, k) B_k
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one(); // C(m+1, 0)
        for (k, b) in list.iter().enumerate() {
            acc += BigRational::from(binom.clone()) * b;
            binom = &binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        let bm = -acc / BigRational::from(BigInt::from(m as i64 + 1));
        list.push(bm);
    }
    list[..=upto].to_vec()
}

fn is_nonpositive_integer(q: &Rational) -> bool {
    q.is_integer() && *q <= Rational::zero()
}

/// ln Gamma(w) by the Stirling asymptotic series; requires w >= working digits.
fn ln_gamma_asymptotic(w: &BigReal, wd: u32) -> BigReal {
    let ln_w = w.ln().expect("positive argument");
    let half = BigReal::from_i64(1, wd).div_i64(2);
    let two_pi = BigReal::pi(wd).mul_i64(2);
    let mut acc = w.sub(&half).mul(&ln_w).sub(w).add(&two_pi.ln().unwrap().div_i64(2));
    let w2 = w.mul(w);
    let mut w_pow = w.clone(); // w^{2n-1}
    let mut n = 1usize;
    loop {
        let b2n = &bernoulli(2 * n)[2 * n];
        let coeff = b2n / BigRational::from(BigInt::from((2 * n * (2 * n - 1)) as i64));
        let term = BigReal::from_rational(&coeff, wd).div(&w_pow);
        acc = acc.add(&term);
        if term.abs_below_pow10(wd as i64 + 2) {
            break;
        }
        assert!(n < 4 * wd as usize, "Stirling series failed to converge");
        w_pow = w_pow.mul(&w2);
        n += 1;
    }
    acc
}

/// Gamma(q) for rational q (poles at non-positive integers), correct to
/// within 10^{-digits+5}.
pub fn gamma_hp(q: &Rational, digits: u32) -> Result<BigReal, HgError> {
    if is_nonpositive_integer(q) {
        return Err(HgError::GammaPole(crate::scalars::rational_str(q)));
    }
    let wd = digits + 10;
    let half = Rational::new(1.into(), 2.into());
    if *q < half {
        // Reflection: Gamma(q) = pi / (sin(pi q) Gamma(1 - q)).
        let pi = BigReal::pi(wd);
        let sin_piq = pi.mul(&BigReal::from_rational(q, wd)).sin();
        let gamma_rest = gamma_hp(&(Rational::one() - q), wd)?;
        return Ok(pi.div(&sin_piq.mul(&gamma_rest)));
    }
    // Shift to w = q + m >= wd, then Stirling.
    let shift = (BigRational::from(BigInt::from(wd as i64)) - q)
        .ceil()
        .to_integer()
        .to_i64()
        .unwrap()
        .max(0) as u64;
    let w = q + BigRational::from(BigInt::from(shift));
    let ln_gamma_w = ln_gamma_asymptotic(&BigReal::from_rational(&w, wd), wd);
    // Gamma(q) = Gamma(w) / prod_{k=0}^{m-1} (q + k), product kept exact.
    let mut prod = BigRational::one();
    for k in 0..shift {
        prod *= q + BigRational::from(BigInt::from(k));
    }
    Ok(ln_gamma_w.exp().div(&BigReal::from_rational(&prod, wd)))
}

/// digamma(q) = Gamma'(q)/Gamma(q) for rational q, correct to within
/// 10^{-digits+5}.
pub fn digamma_hp(q: &Rational, digits: u32) -> Result<BigReal, HgError> {
    if is_nonpositive_integer(q) {
        return Err(HgError::GammaPole(crate::scalars::rational_str(q)));
    }
    let wd = digits + 10;
    let half = Rational::new(1.into(), 2.into());
    if *q < half {
        // psi(q) = psi(1-q) - pi cot(pi q)
        let pi = BigReal::pi(wd);
        let piq = pi.mul(&BigReal::from_rational(q, wd));
        let cot = piq.cos().div(&piq.sin());
        return Ok(digamma_hp(&(Rational::one() - q), wd)?.sub(&pi.mul(&cot)));
    }
    let shift = (BigRational::from(BigInt::from(wd as i64)) - q)
        .ceil()
        .to_integer()
        .to_i64()
        .unwrap()
        .max(0) as u64;
    let w = BigReal::from_rational(&(q + BigRational::from(BigInt::from(shift))), wd);
    // psi(w) = ln w - 1/(2w) - sum B_{2n} / (2n w^{2n})
    let mut acc = w.ln()?.sub(&BigReal::from_i64(1, wd).div(&w.mul_i64(2)));
    let w2 = w.mul(&w);
    let mut w_pow = w2.clone();
    let mut n = 1usize;
    loop {
        let b2n = &bernoulli(2 * n)[2 * n];
        let coeff = b2n / BigRational::from(BigInt::from((2 * n) as i64));
        let term = BigReal::from_rational(&coeff, wd).div(&w_pow);
        acc = acc.sub(&term);
        if term.abs_below_pow10(wd as i64 + 2) {
            break;
        }
        assert!(n < 4 * wd as usize, "digamma asymptotic series failed to converge");
        w_pow = w_pow.mul(&w2);
        n += 1;
    }
    // psi(q) = psi(q + m) - sum_{k=0}^{m-1} 1/(q+k)
    for k in 0..shift {
        let t = BigReal::from_rational(&(q + BigRational::from(BigInt::from(k))), wd);
        acc = acc.sub(&BigReal::from_i64(1, wd).div(&t));
    }
    Ok(acc)
}

/// Gauss series 2F1(alpha, beta; c; x) with rational parameters, |x| < 1.
/// The lower parameter defaults to gamma and may be overridden (e.g. with
/// alpha + beta - gamma + 1 for the basis at x = 1).
pub fn f21(
    p: &HGParams,
    c_override: Option<&Rational>,
    x: &BigComplex,
    digits: u32,
) -> Result<BigComplex, HgError> {
    let c = c_override.unwrap_or(&p.gamma);
    f21_raw(&p.alpha, &p.beta, c, x, digits)
}

pub(crate) fn f21_raw(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    x: &BigComplex,
    digits: u32,
) -> Result<BigComplex, HgError> {
    if is_nonpositive_integer(c) {
        return Err(HgError::LowerParameterPole);
    }
    let wd = digits + 10;
    let one = BigReal::from_i64(1, wd);
    if x.abs().partial_cmp(&one) != Some(std::cmp::Ordering::Less) {
        return Err(HgError::Domain("2F1 series requires |x| < 1".into()));
    }
    let mut term = BigComplex::one(wd);
    let mut sum = term.clone();
    let mut an = BigReal::from_rational(a, wd);
    let mut bn = BigReal::from_rational(b, wd);
    let mut cn = BigReal::from_rational(c, wd);
    let mut nn = BigReal::from_i64(1, wd);
    let mut decreasing = 0u32;
    let mut prev_mag: Option<BigReal> = None;
    let budget = 20 * digits as usize + 600;
    for _ in 0..budget {
        // term *= (a+n)(b+n) / ((c+n)(n+1)) * x
        let ratio = an.mul(&bn).div(&cn.mul(&nn));
        term = term.mul(x).mul_real(&ratio);
        sum = sum.add(&term);
        let mag = term.abs();
        let tiny = mag.abs_below_pow10(digits as i64 + 10);
        // A vanished term counts toward the monotone-decrease streak, so the
        // cutoff also fires for polynomial cases and x = 0.
        match &prev_mag {
            Some(prev) if mag.partial_cmp(prev) == Some(std::cmp::Ordering::Less) => {
                decreasing += 1;
            }
            _ if tiny => decreasing += 1,
            _ => decreasing = 0,
        }
        if tiny && decreasing >= 5 {
            return Ok(sum);
        }
        prev_mag = Some(mag);
        an = an.add(&one);
        bn = bn.add(&one);
        cn = cn.add(&one);
        nn = nn.add(&one);
    }
    Err(HgError::NoConvergence)
}

/// d/dx 2F1(a,b;c;x) = (ab/c) 2F1(a+1, b+1; c+1; x).
pub(crate) fn f21_deriv(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    x: &BigComplex,
    digits: u32,
) -> Result<BigComplex, HgError> {
    let shifted = f21_raw(
        &(a + Rational::one()),
        &(b + Rational::one()),
        &(c + Rational::one()),
        x,
        digits,
    )?;
    let factor = (a * b) / c;
    Ok(shifted.mul_real(&BigReal::from_rational(&factor, x.digits().min(digits + 10))))
}

/// The exact coefficients b_n of the logarithmic solution at x = 1:
/// b_n = (alpha)_n (beta)_n / (n!)^2 * (H_n(alpha) + H_n(beta) - 2 H_n)
/// where H_n(a) = sum_{k=0}^{n-1} 1/(a+k).
pub(crate) fn log_basis_bn(alpha: &Rational, beta: &Rational, count: usize) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(count);
    let mut t = BigRational::one();
    let mut c = BigRational::zero();
    for n in 1..=count {
        let n_rat = BigRational::from(BigInt::from(n as i64));
        let a_shift = alpha + BigRational::from(BigInt::from(n as i64 - 1));
        let b_shift = beta + BigRational::from(BigInt::from(n as i64 - 1));
        t = t * &a_shift * &b_shift / (&n_rat * &n_rat);
        c = c + a_shift.recip() + b_shift.recip()
            - BigRational::from(BigInt::from(2)) / &n_rat;
        out.push(&t * &c);
    }
    out
}

/// Sum of the logarithmic tail: (S(u), dS/dx) with S = sum_{n>=1} b_n u^n and
/// u = 1 - x (so d/dx u^n = -n u^{n-1}).
fn log_tail(
    alpha: &Rational,
    beta: &Rational,
    u: &BigComplex,
    digits: u32,
) -> Result<(BigComplex, BigComplex), HgError> {
    let wd = digits + 10;
    let mut s = BigComplex::zero(wd);
    let mut ds = BigComplex::zero(wd);
    let mut t = BigRational::one();
    let mut c = BigRational::zero();
    let mut u_pow = BigComplex::one(wd); // u^{n-1}
    let budget = 20 * digits as usize + 600;
    let mut small = 0;
    for n in 1..=budget {
        let n_rat = BigRational::from(BigInt::from(n as i64));
        let a_shift = alpha + BigRational::from(BigInt::from(n as i64 - 1));
        let b_shift = beta + BigRational::from(BigInt::from(n as i64 - 1));
        t = t * &a_shift * &b_shift / (&n_rat * &n_rat);
        c = c + a_shift.recip() + b_shift.recip()
            - BigRational::from(BigInt::from(2)) / &n_rat;
        let bn = BigReal::from_rational(&(&t * &c), wd);
        let dterm = u_pow.mul_real(&bn).mul_real(&BigReal::from_i64(n as i64, wd));
        u_pow = u_pow.mul(u);
        let term = u_pow.mul_real(&bn);
        s = s.add(&term);
        ds = ds.sub(&dterm);
        if term.abs().abs_below_pow10(digits as i64 + 10) {
            small += 1;
            if small >= 3 && n > 4 {
                return Ok((s, ds));
            }
        } else {
            small = 0;
        }
    }
    Err(HgError::NoConvergence)
}

// ---------------------------------------------------------------------------
// Connection matrices and base monodromies
// ---------------------------------------------------------------------------

/// The digamma constants of the resonant connection matrix.
pub fn digamma_constants(p: &HGParams, digits: u32) -> Result<(BigReal, BigReal), HgError> {
    let psi1 = digamma_hp(&Rational::one(), digits)?;
    let k1 = psi1
        .mul_i64(2)
        .sub(&digamma_hp(&p.alpha, digits)?)
        .sub(&digamma_hp(&p.beta, digits)?);
    let k2 = psi1
        .mul_i64(2)
        .sub(&digamma_hp(&(Rational::one() - &p.alpha), digits)?)
        .sub(&digamma_hp(&(Rational::one() - &p.beta), digits)?);
    Ok((k1, k2))
}

/// Resonant connection matrix C01 = [[K1, -1], [K2, -1]].
pub fn connection_resonant(p: &HGParams, digits: u32) -> Result<Mat2<BigComplex>, HgError> {
    let class = classify(p);
    if !matches!(class.kind, ResonanceKind::Resonant { .. }) {
        return Err(HgError::Unsupported);
    }
    let (k1, k2) = digamma_constants(p, digits)?;
    let m1 = BigComplex::from_i64(-1, digits + 10);
    Ok(Mat2::new(
        BigComplex::from_real(k1),
        m1.clone(),
        BigComplex::from_real(k2),
        m1,
    ))
}

/// Non-resonant connection matrix D01 of Gamma-function quotients.
pub fn connection_nonresonant(p: &HGParams, digits: u32) -> Result<Mat2<BigComplex>, HgError> {
    let class = classify(p);
    if class.kind != ResonanceKind::NonResonant {
        return Err(HgError::Unsupported);
    }
    let (a, b, g) = (&p.alpha, &p.beta, &p.gamma);
    let one = Rational::one();
    let two = &one + &one;
    let quot = |n1: Rational, n2: Rational, d1: Rational, d2: Rational| -> Result<BigComplex, HgError> {
        let v = gamma_hp(&n1, digits)?
            .mul(&gamma_hp(&n2, digits)?)
            .div(&gamma_hp(&d1, digits)?.mul(&gamma_hp(&d2, digits)?));
        Ok(BigComplex::from_real(v))
    };
    Ok(Mat2::new(
        quot(g.clone(), g - a - b, g - a, g - b)?,
        quot(g.clone(), a + b - g, a.clone(), b.clone())?,
        quot(&two - g, g - a - b, &one - a, &one - b)?,
        quot(&two - g, a + b - g, &one + a - g, &one + b - g)?,
    ))
}

/// Local monodromies, connection matrix, and base-point monodromies
/// in the x = 1 solution basis.
#[derive(Clone, Debug)]
pub struct HGMonodromy {
    pub class: ResonanceClass,
    /// Local monodromy at 0 (diagonal, exact root of unity).
    pub m0_local: Mat2<CycElem>,
    /// Local monodromy at 1; exact in the non-resonant case only.
    pub m1_local_exact: Option<Mat2<CycElem>>,
    /// Local monodromy at 1 as numbers (resonant: off-diagonal 2 pi i).
    pub m1_local: Mat2<BigComplex>,
    /// C01 (resonant) or D01 (non-resonant).
    pub connection: Mat2<BigComplex>,
    /// Monodromy around x = 0 in the x = 1 basis.
    pub m0_base: Mat2<BigComplex>,
    /// Monodromy around x = 1 in the x = 1 basis.
    pub m1_base: Mat2<BigComplex>,
}

/// Assembles M1^HG = (local at 1)^T and M0^HG = C^{-1} (local at 0)^T C.
pub fn base_monodromies(p: &HGParams, digits: u32) -> Result<HGMonodromy, HgError> {
    let class = classify(p);
    let wd = digits + 10;
    match class.kind {
        ResonanceKind::Resonant { .. } => {
            // M0 = diag(1, e^{2 pi i (1 - alpha - beta)}), M1 = [[1, 2 pi i], [0, 1]]
            let exponent = Rational::one() - &p.alpha - &p.beta;
            let m0_exact = Mat2::diag(CycElem::one(), CycElem::from_unit_exponent(&exponent));
            let m1_local = Mat2::new(
                BigComplex::one(wd),
                BigComplex::two_pi_i(wd),
                BigComplex::zero(wd),
                BigComplex::one(wd),
            );
            let connection = connection_resonant(p, digits)?;
            let m0t = m0_exact.embed(wd).transpose();
            let m0_base = connection.inv()?.mul(&m0t).mul(&connection);
            let m1_base = m1_local.transpose();
            Ok(HGMonodromy {
                class,
                m0_local: m0_exact,
                m1_local_exact: None,
                m1_local,
                connection,
                m0_base,
                m1_base,
            })
        }
        ResonanceKind::NonResonant => {
            // D0 = diag(1, e^{2 pi i (1-gamma)}), D1 = diag(1, e^{2 pi i (gamma-alpha-beta)})
            let d0_exact = Mat2::diag(CycElem::one(), CycElem::from_unit_exponent(&class.lambda0));
            let d1_exact = Mat2::diag(CycElem::one(), CycElem::from_unit_exponent(&class.lambda1));
            let connection = connection_nonresonant(p, digits)?;
            let d0t = d0_exact.embed(wd).transpose();
            let m0_base = connection.inv()?.mul(&d0t).mul(&connection);
            let m1_local = d1_exact.embed(wd);
            let m1_base = m1_local.transpose();
            Ok(HGMonodromy {
                class,
                m0_local: d0_exact,
                m1_local_exact: Some(d1_exact),
                m1_local,
                connection,
                m0_base,
                m1_base,
            })
        }
        ResonanceKind::Unsupported => Err(HgError::Unsupported),
    }
}

/// Fundamental frame [[F1, F2], [F1', F2']] of the x = 1 solution basis at a
/// point x0 in the unit lens, for seeding the ODE transport.
pub fn basis_frame(p: &HGParams, x0: &BigComplex, digits: u32) -> Result<Mat2<BigComplex>, HgError> {
    let class = classify(p);
    let wd = digits + 10;
    let u = BigComplex::one(wd).sub(x0);
    match class.kind {
        ResonanceKind::Resonant { .. } => {
            let one = Rational::one();
            let f1 = f21_raw(&p.alpha, &p.beta, &one, &u, digits)?;
            let f1p = f21_deriv(&p.alpha, &p.beta, &one, &u, digits)?.neg();
            let ln_u = u.ln()?;
            let (s, ds) = log_tail(&p.alpha, &p.beta, &u, digits)?;
            let f2 = f1.mul(&ln_u).add(&s);
            let f2p = f1p.mul(&ln_u).sub(&f1.div(&u)?).add(&ds);
            Ok(Mat2::new(f1, f2, f1p, f2p))
        }
        ResonanceKind::NonResonant => {
            let c1 = &p.alpha + &p.beta - &p.gamma + Rational::one();
            let f1 = f21_raw(&p.alpha, &p.beta, &c1, &u, digits)?;
            let f1p = f21_deriv(&p.alpha, &p.beta, &c1, &u, digits)?.neg();
            let ga = &p.gamma - &p.alpha;
            let gb = &p.gamma - &p.beta;
            let c2 = &class.lambda1 + Rational::one();
            let lam = BigReal::from_rational(&class.lambda1, wd);
            let g = f21_raw(&ga, &gb, &c2, &u, digits)?;
            let gp = f21_deriv(&ga, &gb, &c2, &u, digits)?;
            let u_lam = u.pow_real(&lam)?;
            let u_lam_m1 = u.pow_real(&lam.sub(&BigReal::from_i64(1, wd)))?;
            let f2 = g.mul(&u_lam);
            // d/dx [g(u) u^lam] = -(g'(u) u^lam + lam g(u) u^{lam-1})
            let f2p = gp.mul(&u_lam).add(&g.mul(&u_lam_m1).mul_real(&lam)).neg();
            Ok(Mat2::new(f1, f2, f1p, f2p))
        }
        ResonanceKind::Unsupported => Err(HgError::Unsupported),
    }
}

/// Evaluates F^(0)(x0) directly and via connection * F^(1)(x0), returning the
/// largest componentwise deviation. x0 must lie in the open lens
/// {|x| < 1, |1-x| < 1}.
pub fn verify_connection(p: &HGParams, x0: &BigComplex, digits: u32) -> Result<BigReal, HgError> {
    let class = classify(p);
    let wd = digits + 10;
    let one_r = BigReal::from_i64(1, wd);
    let u = BigComplex::one(wd).sub(x0);
    if x0.abs().partial_cmp(&one_r) != Some(std::cmp::Ordering::Less)
        || u.abs().partial_cmp(&one_r) != Some(std::cmp::Ordering::Less)
    {
        return Err(HgError::Domain("x0 outside the open lens |x|<1, |1-x|<1".into()));
    }
    let frame = basis_frame(p, x0, digits)?;
    let f1_vec = (frame.a.clone(), frame.b.clone());
    let (rhs, f0) = match class.kind {
        ResonanceKind::Resonant { .. } => {
            let c01 = connection_resonant(p, digits)?;
            let rhs = (
                c01.a.mul(&f1_vec.0).add(&c01.b.mul(&f1_vec.1)),
                c01.c.mul(&f1_vec.0).add(&c01.d.mul(&f1_vec.1)),
            );
            // F1^(0) = Gamma(a)Gamma(b)/Gamma(a+b) 2F1(a,b;gamma;x)
            let pref1 = gamma_hp(&p.alpha, digits)?
                .mul(&gamma_hp(&p.beta, digits)?)
                .div(&gamma_hp(&p.gamma, digits)?);
            let f01 = f21_raw(&p.alpha, &p.beta, &p.gamma, x0, digits)?.mul_real(&pref1);
            // F2^(0) = Gamma(1-a)Gamma(1-b)/Gamma(2-a-b) 2F1(1-a,1-b;2-gamma;x) x^{1-a-b}
            let one = Rational::one();
            let two = &one + &one;
            let pref2 = gamma_hp(&(&one - &p.alpha), digits)?
                .mul(&gamma_hp(&(&one - &p.beta), digits)?)
                .div(&gamma_hp(&(&two - &p.alpha - &p.beta), digits)?);
            let expo = BigReal::from_rational(&(&one - &p.alpha - &p.beta), wd);
            let f02 = f21_raw(
                &(&one - &p.alpha),
                &(&one - &p.beta),
                &(&two - &p.gamma),
                x0,
                digits,
            )?
            .mul_real(&pref2)
            .mul(&x0.pow_real(&expo)?);
            (rhs, (f01, f02))
        }
        ResonanceKind::NonResonant => {
            let d01 = connection_nonresonant(p, digits)?;
            let rhs = (
                d01.a.mul(&f1_vec.0).add(&d01.b.mul(&f1_vec.1)),
                d01.c.mul(&f1_vec.0).add(&d01.d.mul(&f1_vec.1)),
            );
            let one = Rational::one();
            let two = &one + &one;
            let f01 = f21_raw(&p.alpha, &p.beta, &p.gamma, x0, digits)?;
            let expo = BigReal::from_rational(&(&one - &p.gamma), wd);
            let f02 = f21_raw(
                &(&p.alpha - &p.gamma + &one),
                &(&p.beta - &p.gamma + &one),
                &(&two - &p.gamma),
                x0,
                digits,
            )?
            .mul(&x0.pow_real(&expo)?);
            (rhs, (f01, f02))
        }
        ResonanceKind::Unsupported => return Err(HgError::Unsupported),
    };
    let r1 = f0.0.dist(&rhs.0);
    let r2 = f0.1.dist(&rhs.1);
    Ok(if r1.partial_cmp(&r2) == Some(std::cmp::Ordering::Greater) { r1 } else { r2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    fn close(x: &BigReal, expect: &str, tol_exp: i64) {
        let e = BigReal::parse(expect, x.digits()).unwrap();
        assert!(x.sub(&e).abs_below_pow10(tol_exp), "{} vs {}", x, e);
    }

    #[test]
    fn gamma_half_is_sqrt_pi() {
        let g = gamma_hp(&rat(1, 2), 60).unwrap();
        let sqrt_pi = BigReal::pi(60).sqrt();
        assert!(g.sub(&sqrt_pi).abs_below_pow10(55));
    }

    #[test]
    fn gamma_frozen_values() {
        let g = gamma_hp(&rat(1, 4), 60).unwrap();
        close(&g, "3.625609908221908311930685155867672002995167682880065467433378", 55);
        let g2 = gamma_hp(&rat(-1, 2), 60).unwrap();
        close(&g2, "-3.5449077018110320545963349666822903655950989122447742564276156", 55);
        let g3 = gamma_hp(&rat(7, 12), 60).unwrap();
        close(&g3, "1.5287091970871110050473026638281056935977379766241219244435653", 55);
    }

    #[test]
    fn gamma_recurrence_and_reflection() {
        // Gamma(q+1) = q Gamma(q) at q = 5/12
        let d = 60;
        let q = rat(5, 12);
        let lhs = gamma_hp(&(q.clone() + Rational::one()), d).unwrap();
        let rhs = gamma_hp(&q, d).unwrap().mul(&BigReal::from_rational(&q, d + 10));
        assert!(lhs.sub(&rhs).abs_below_pow10(54));
        // Gamma(q) Gamma(1-q) = pi / sin(pi q) at q = 1/3
        let q = rat(1, 3);
        let prod = gamma_hp(&q, d).unwrap().mul(&gamma_hp(&rat(2, 3), d).unwrap());
        let pi = BigReal::pi(d);
        let expect = pi.div(&pi.mul(&BigReal::from_rational(&q, d)).sin());
        assert!(prod.sub(&expect).abs_below_pow10(54));
    }

    #[test]
    fn gamma_pole_rejected() {
        assert!(gamma_hp(&rat(0, 1), 50).is_err());
        assert!(gamma_hp(&rat(-3, 1), 50).is_err());
        assert!(digamma_hp(&rat(-1, 1), 50).is_err());
    }

    #[test]
    fn digamma_one_is_minus_euler_gamma() {
        let psi = digamma_hp(&rat(1, 1), 60).unwrap();
        close(&psi, "-0.57721566490153286060651209008240243104215933593992359880576723", 55);
    }

    #[test]
    fn digamma_quarter_gauss_formula() {
        // psi(1/4) = -euler_gamma - pi/2 - 3 ln 2, with pi and ln 2 computed
        // independently of the digamma code path.
        let d = 60;
        let psi = digamma_hp(&rat(1, 4), d).unwrap();
        let euler = BigReal::parse(
            "0.57721566490153286060651209008240243104215933593992359880576723",
            d,
        )
        .unwrap();
        let expect = euler
            .neg()
            .sub(&BigReal::pi(d).div_i64(2))
            .sub(&BigReal::from_i64(2, d).ln().unwrap().mul_i64(3));
        assert!(psi.sub(&expect).abs_below_pow10(55));
    }

    #[test]
    fn digamma_reflection_identity() {
        // psi(3/4) - psi(1/4) = pi cot(pi/4) = pi
        let d = 60;
        let diff = digamma_hp(&rat(3, 4), d).unwrap().sub(&digamma_hp(&rat(1, 4), d).unwrap());
        assert!(diff.sub(&BigReal::pi(d)).abs_below_pow10(55));
    }

    #[test]
    fn k1_for_e7_invariant_is_pi_plus_6ln2() {
        let p = HGParams::of((1, 4), (1, 4), (1, 2));
        let (k1, k2) = digamma_constants(&p, 60).unwrap();
        let d = 60;
        let expect = BigReal::pi(d).add(&BigReal::from_i64(2, d).ln().unwrap().mul_i64(6));
        assert!(k1.sub(&expect).abs_below_pow10(54));
        // K2 = 6 ln 2 - pi
        let expect2 = BigReal::from_i64(2, d).ln().unwrap().mul_i64(6).sub(&BigReal::pi(d));
        assert!(k2.sub(&expect2).abs_below_pow10(54));
    }

    #[test]
    fn classify_paper_triples() {
        let r = classify(&HGParams::of((1, 3), (1, 3), (2, 3)));
        assert_eq!(r.kind, ResonanceKind::Resonant { l: 3 });
        let n = classify(&HGParams::of((3, 4), (1, 4), (1, 2)));
        assert_eq!(n.kind, ResonanceKind::NonResonant);
        assert_eq!(n.lambda0, rat(1, 2));
        assert_eq!(n.lambda1, rat(-1, 2));
        assert_eq!(n.lambda_inf, rat(-1, 2));
        let u = classify(&HGParams::of((1, 2), (1, 2), (1, 1)));
        assert_eq!(u.kind, ResonanceKind::Unsupported);
    }

    #[test]
    fn f21_at_zero_is_one() {
        let p = HGParams::of((1, 3), (1, 3), (2, 3));
        let v = f21(&p, None, &BigComplex::zero(50), 50).unwrap();
        assert!(v.sub(&BigComplex::one(50)).abs().abs_below_pow10(45));
    }

    #[test]
    fn f21_log_closed_form() {
        // 2F1(1,1;2;x) = -ln(1-x)/x at x = 1/2 gives 2 ln 2.
        let p = HGParams::of((1, 1), (1, 1), (2, 1));
        let x = BigComplex::from_rational(&rat(1, 2), 60);
        let v = f21(&p, None, &x, 60).unwrap();
        let expect = BigReal::from_i64(2, 60).ln().unwrap().mul_i64(2);
        assert!(v.re.sub(&expect).abs_below_pow10(55), "{}", v);
        assert!(v.im.abs_below_pow10(55));
    }

    #[test]
    fn f21_frozen_values() {
        let p = HGParams::of((1, 3), (1, 3), (2, 3));
        let x = BigComplex::from_rational(&rat(1, 2), 60);
        let v = f21(&p, None, &x, 60).unwrap();
        close(
            &v.re,
            "1.1179882818948560063043453625058566223318582183049115615001323",
            55,
        );
        // complex argument
        let p2 = HGParams::of((1, 4), (3, 4), (2, 3));
        let z = BigComplex::new(
            BigReal::parse("0.3", 60).unwrap(),
            BigReal::parse("0.1", 60).unwrap(),
        );
        let w = f21(&p2, None, &z, 60).unwrap();
        close(&w.re, "1.10197214903852706634262667039075751273835813339499880584", 50);
        close(&w.im, "0.04448384069541574479742925166176245733140882078600551284809", 50);
    }

    #[test]
    fn f21_domain_and_pole_errors() {
        let p = HGParams::of((1, 3), (1, 3), (2, 3));
        let far = BigComplex::from_i64(2, 40);
        assert!(matches!(f21(&p, None, &far, 40), Err(HgError::Domain(_))));
        let bad_c = rat(-1, 1);
        let x = BigComplex::from_rational(&rat(1, 2), 40);
        assert!(matches!(
            f21(&p, Some(&bad_c), &x, 40),
            Err(HgError::LowerParameterPole)
        ));
    }

    #[test]
    fn log_basis_coefficients_frozen() {
        let bn = log_basis_bn(&rat(1, 3), &rat(1, 3), 4);
        assert_eq!(bn[0], rat(4, 9));
        assert_eq!(bn[1], rat(2, 9));
        assert_eq!(bn[2], rat(2758, 19683));
        assert_eq!(bn[3], rat(17605, 177147));
    }

    #[test]
    fn resonant_connection_is_invertible() {
        for (a, b) in [((1, 3), (1, 3)), ((1, 4), (1, 4)), ((1, 12), (7, 12))] {
            let ga = (
                a.0 * b.1 + b.0 * a.1,
                a.1 * b.1,
            );
            let p = HGParams::of(a, b, ga);
            let c = connection_resonant(&p, 60).unwrap();
            // det = K2 - K1 must be far from zero
            let det = c.det();
            assert!(!det.abs().abs_below_pow10(10), "det C01 too small");
        }
    }

    #[test]
    fn nonresonant_connection_hand_values() {
        // (3/4, 1/4, 1/2): D01 = (1/sqrt2) [[1/2, 1], [-1, 2]]
        let p = HGParams::of((3, 4), (1, 4), (1, 2));
        let d = connection_nonresonant(&p, 60).unwrap();
        let s2 = BigReal::from_i64(2, 60).sqrt();
        let quarter = BigReal::from_i64(1, 60).div(&s2.mul_i64(2));
        assert!(d.a.re.sub(&quarter).abs_below_pow10(54));
        assert!(d.b.re.sub(&BigReal::from_i64(1, 60).div(&s2)).abs_below_pow10(54));
        assert!(d.c.re.add(&BigReal::from_i64(1, 60).div(&s2)).abs_below_pow10(54));
        assert!(d.d.re.sub(&s2).abs_below_pow10(54));
        // det = 1
        let det = d.det();
        assert!(det.re.sub(&BigReal::from_i64(1, 60)).abs_below_pow10(54));
        assert!(det.im.abs_below_pow10(54));
    }

    #[test]
    fn base_monodromies_shapes() {
        // resonant: m1_base unipotent with trace 2
        let p = HGParams::of((1, 3), (1, 3), (2, 3));
        let hg = base_monodromies(&p, 50).unwrap();
        let tr = hg.m1_base.trace();
        assert!(tr.re.sub(&BigReal::from_i64(2, 50)).abs_below_pow10(45));
        // (m1_base - I)^2 = 0
        let diff = hg.m1_base.sub(&Mat2::identity());
        let sq = diff.mul(&diff);
        assert!(sq.max_abs().abs_below_pow10(40));
        // non-resonant E7 twisted: m1_base = diag(1, -1), trace 0
        let p2 = HGParams::of((3, 4), (1, 4), (1, 2));
        let hg2 = base_monodromies(&p2, 50).unwrap();
        assert!(hg2.m1_base.trace().abs().abs_below_pow10(45));
        // E8 invariant: resonant l = 3, m0 local eigenvalues {1, zeta3}
        let p3 = HGParams::of((1, 12), (7, 12), (2, 3));
        let hg3 = base_monodromies(&p3, 50).unwrap();
        assert_eq!(hg3.m0_local.d, CycElem::root_of_unity(3, 1));
        // conjugation preserves the characteristic polynomial
        let tr_local = hg3.m0_local.embed(50).trace();
        let tr_base = hg3.m0_base.trace();
        assert!(tr_local.dist(&tr_base).abs_below_pow10(40));
    }

    #[test]
    fn verify_connection_smoke() {
        let x0 = BigComplex::from_rational(&rat(1, 2), 40);
        let p = HGParams::of((1, 3), (1, 3), (2, 3));
        let r = verify_connection(&p, &x0, 40).unwrap();
        assert!(r.abs_below_pow10(30), "residual {}", r);
        let p2 = HGParams::of((3, 4), (1, 4), (1, 2));
        let r2 = verify_connection(&p2, &x0, 40).unwrap();
        assert!(r2.abs_below_pow10(30), "residual {}", r2);
        // x0 = 0 is rejected (|1 - x0| = 1 is not inside the open lens)
        let zero = BigComplex::zero(40);
        assert!(matches!(verify_connection(&p, &zero, 40), Err(HgError::Domain(_))));
    }
}
