//! Independent numerical verification: transport of fundamental matrices of
//! the hypergeometric and Picard-Fuchs equations along explicit loops with
//! an embedded Runge-Kutta-Fehlberg 7(8) pair, compared against the
//! closed-form monodromies through conjugacy invariants.

use num_traits::One;

use crate::hyperg::{basis_frame, HGParams, HgError};
use crate::matgroup::{Mat2, MatError};
use crate::pf::{singular_points, CaseSpec, PfError};
use crate::scalars::{BigComplex, BigReal, Rational, ScalarError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NumError {
    #[error("path comes within {clearance} of the singular point at ({x}, {y})")]
    ClearanceViolated { clearance: f64, x: f64, y: f64 },
    #[error("step size underflow near a singularity (h = {h:e})")]
    StepUnderflow { h: f64 },
    #[error("loop must encircle exactly one singular point for this transport")]
    BadLoop,
    #[error(transparent)]
    Hg(#[from] HgError),
    #[error(transparent)]
    Pf(#[from] PfError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Mat(#[from] MatError),
}

/// A path segment: a straight line or a circular arc.
#[derive(Clone, Debug)]
pub enum PathSeg {
    Line { from: BigComplex, to: BigComplex },
    Arc { center: BigComplex, radius: BigReal, theta0: BigReal, theta1: BigReal },
}

/// A based loop assembled from segments; counterclockwise arcs by default.
#[derive(Clone, Debug)]
pub struct LoopSpec {
    pub base: BigComplex,
    pub segments: Vec<PathSeg>,
    pub encircled: Vec<String>,
    pub counterclockwise: bool,
}

impl LoopSpec {
    /// Straight segment from the base toward `center`, counterclockwise
    /// circle of the given radius, and the segment back.
    pub fn around(base: &BigComplex, center: &BigComplex, radius: &BigReal, label: &str) -> Self {
        let digits = base.digits();
        let dir = center.sub(base);
        let dist = dir.abs();
        let unit = BigComplex::new(dir.re.div(&dist), dir.im.div(&dist));
        let entry = center.sub(&unit.mul_real(radius));
        let theta0 = entry.sub(center).arg();
        let theta1 = theta0.add(&BigReal::pi(digits).mul_i64(2));
        LoopSpec {
            base: base.clone(),
            segments: vec![
                PathSeg::Line { from: base.clone(), to: entry.clone() },
                PathSeg::Arc { center: center.clone(), radius: radius.clone(), theta0, theta1 },
                PathSeg::Line { from: entry, to: base.clone() },
            ],
            encircled: vec![label.to_string()],
            counterclockwise: true,
        }
    }

    /// A loop along a full circle centered at the base-side anchor, entered
    /// by a vertical connector; encircles everything inside the circle.
    pub fn big_circle(base: &BigComplex, radius: &BigReal, labels: &[&str]) -> Self {
        let digits = base.digits();
        let top = base.add(&BigComplex::new(BigReal::zero(digits), radius.clone()));
        let half_pi = BigReal::pi(digits).div_i64(2);
        let theta1 = half_pi.add(&BigReal::pi(digits).mul_i64(2));
        LoopSpec {
            base: base.clone(),
            segments: vec![
                PathSeg::Line { from: base.clone(), to: top.clone() },
                PathSeg::Arc {
                    center: base.clone(),
                    radius: radius.clone(),
                    theta0: half_pi,
                    theta1,
                },
                PathSeg::Line { from: top, to: base.clone() },
            ],
            encircled: labels.iter().map(|s| s.to_string()).collect(),
            counterclockwise: true,
        }
    }

    /// Trivial loop: out and back, encircling nothing.
    pub fn trivial(base: &BigComplex, radius: &BigReal) -> Self {
        let out = base.add(&BigComplex::from_real(radius.clone()));
        LoopSpec {
            base: base.clone(),
            segments: vec![
                PathSeg::Line { from: base.clone(), to: out.clone() },
                PathSeg::Line { from: out, to: base.clone() },
            ],
            encircled: Vec::new(),
            counterclockwise: true,
        }
    }

    /// Checks the clearance (in fast f64 geometry) of every segment against
    /// a list of singular points.
    pub fn validate_clearance(
        &self,
        singular: &[(f64, f64)],
        clearance: f64,
    ) -> Result<(), NumError> {
        let seg_point_dist = |ax: f64, ay: f64, bx: f64, by: f64, px: f64, py: f64| -> f64 {
            let (dx, dy) = (bx - ax, by - ay);
            let len2 = dx * dx + dy * dy;
            let t = if len2 == 0.0 {
                0.0
            } else {
                (((px - ax) * dx + (py - ay) * dy) / len2).clamp(0.0, 1.0)
            };
            let (cx, cy) = (ax + t * dx, ay + t * dy);
            ((px - cx).powi(2) + (py - cy).powi(2)).sqrt()
        };
        for seg in &self.segments {
            for &(sx, sy) in singular {
                let d = match seg {
                    PathSeg::Line { from, to } => {
                        let (ax, ay) = from.to_f64();
                        let (bx, by) = to.to_f64();
                        seg_point_dist(ax, ay, bx, by, sx, sy)
                    }
                    PathSeg::Arc { center, radius, .. } => {
                        let (cx, cy) = center.to_f64();
                        let r = radius.to_f64();
                        let dist_center = ((sx - cx).powi(2) + (sy - cy).powi(2)).sqrt();
                        (dist_center - r).abs()
                    }
                };
                if d < clearance {
                    return Err(NumError::ClearanceViolated { clearance, x: sx, y: sy });
                }
            }
        }
        Ok(())
    }
}

/// Transport outcome: the numeric monodromy in the chosen frame plus the
/// integrator's step count and accumulated local-error estimate.
#[derive(Clone, Debug)]
pub struct TransportResult {
    pub monodromy: Mat2<BigComplex>,
    pub step_count: usize,
    pub max_local_error_estimate: f64,
}

// Runge-Kutta-Fehlberg 7(8): 13 stages with exact rational coefficients.
const STAGES: usize = 13;

fn rkf78_tableau() -> (Vec<Vec<Rational>>, Vec<Rational>, Vec<Rational>, Vec<Rational>) {
    let r = crate::scalars::rat;
    let a: Vec<Vec<Rational>> = vec![
        vec![],
        vec![r(2, 27)],
        vec![r(1, 36), r(1, 12)],
        vec![r(1, 24), r(0, 1), r(1, 8)],
        vec![r(5, 12), r(0, 1), r(-25, 16), r(25, 16)],
        vec![r(1, 20), r(0, 1), r(0, 1), r(1, 4), r(1, 5)],
        vec![r(-25, 108), r(0, 1), r(0, 1), r(125, 108), r(-65, 27), r(125, 54)],
        vec![r(31, 300), r(0, 1), r(0, 1), r(0, 1), r(61, 225), r(-2, 9), r(13, 900)],
        vec![r(2, 1), r(0, 1), r(0, 1), r(-53, 6), r(704, 45), r(-107, 9), r(67, 90), r(3, 1)],
        vec![
            r(-91, 108),
            r(0, 1),
            r(0, 1),
            r(23, 108),
            r(-976, 135),
            r(311, 54),
            r(-19, 60),
            r(17, 6),
            r(-1, 12),
        ],
        vec![
            r(2383, 4100),
            r(0, 1),
            r(0, 1),
            r(-341, 164),
            r(4496, 1025),
            r(-301, 82),
            r(2133, 4100),
            r(45, 82),
            r(45, 164),
            r(18, 41),
        ],
        vec![
            r(3, 205),
            r(0, 1),
            r(0, 1),
            r(0, 1),
            r(0, 1),
            r(-6, 41),
            r(-3, 205),
            r(-3, 41),
            r(3, 41),
            r(6, 41),
            r(0, 1),
        ],
        vec![
            r(-1777, 4100),
            r(0, 1),
            r(0, 1),
            r(-341, 164),
            r(4496, 1025),
            r(-289, 82),
            r(2193, 4100),
            r(51, 82),
            r(33, 164),
            r(12, 41),
            r(0, 1),
            r(1, 1),
        ],
    ];
    let c: Vec<Rational> = vec![
        r(0, 1),
        r(2, 27),
        r(1, 9),
        r(1, 6),
        r(5, 12),
        r(1, 2),
        r(5, 6),
        r(1, 6),
        r(2, 3),
        r(1, 3),
        r(1, 1),
        r(0, 1),
        r(1, 1),
    ];
    // 7th-order weights (uses k1..k11) and 8th-order weights (k6..k10, k12, k13).
    let b7: Vec<Rational> = vec![
        r(41, 840),
        r(0, 1),
        r(0, 1),
        r(0, 1),
        r(0, 1),
        r(34, 105),
        r(9, 35),
        r(9, 35),
        r(9, 280),
        r(9, 280),
        r(41, 840),
        r(0, 1),
        r(0, 1),
    ];
    let b8: Vec<Rational> = vec![
        r(0, 1),
        r(0, 1),
        r(0, 1),
        r(0, 1),
        r(0, 1),
        r(34, 105),
        r(9, 35),
        r(9, 35),
        r(9, 280),
        r(9, 280),
        r(0, 1),
        r(41, 840),
        r(41, 840),
    ];
    (a, c, b7, b8)
}

/// Verifies the tableau's consistency (row sums) and the order-k quadrature
/// conditions sum b_i c_i^{q-1} = 1/q for q = 1..=8; exposed for tests.
pub fn tableau_consistency() -> bool {
    let (a, c, b7, b8) = rkf78_tableau();
    for (i, row) in a.iter().enumerate() {
        let sum: Rational = row.iter().cloned().sum();
        if sum != c[i] {
            return false;
        }
    }
    for q in 1..=8u32 {
        let mut s = Rational::new(0.into(), 1.into());
        for (bi, ci) in b8.iter().zip(&c) {
            let mut p = Rational::one();
            for _ in 1..q {
                p *= ci;
            }
            s += bi * p;
        }
        if s != Rational::new(1.into(), (q as i64).into()) {
            return false;
        }
    }
    // the 7th-order weights satisfy the conditions through order 7
    for q in 1..=7u32 {
        let mut s = Rational::new(0.into(), 1.into());
        for (bi, ci) in b7.iter().zip(&c) {
            let mut p = Rational::one();
            for _ in 1..q {
                p *= ci;
            }
            s += bi * p;
        }
        if s != Rational::new(1.into(), (q as i64).into()) {
            return false;
        }
    }
    true
}

struct Tableau {
    a: Vec<Vec<BigReal>>,
    b8: Vec<BigReal>,
    err_w: BigReal, // 41/840: error = err_w * (k1 + k11 - k12 - k13) * h
    c: Vec<BigReal>,
}

fn embedded_tableau(digits: u32) -> Tableau {
    let (a, c, _b7, b8) = rkf78_tableau();
    Tableau {
        a: a.iter()
            .map(|row| row.iter().map(|q| BigReal::from_rational(q, digits)).collect())
            .collect(),
        b8: b8.iter().map(|q| BigReal::from_rational(q, digits)).collect(),
        err_w: BigReal::from_rational(&crate::scalars::rat(41, 840), digits),
        c: c.iter().map(|q| BigReal::from_rational(q, digits)).collect(),
    }
}

/// Right-hand side of the first-order system Y' = A(x) Y dx/dt.
type RhsFn<'a> = dyn Fn(&BigComplex) -> Result<Mat2<BigComplex>, NumError> + 'a;

fn mat_scale(m: &Mat2<BigComplex>, s: &BigComplex) -> Mat2<BigComplex> {
    m.map(|e| e.mul(s))
}

/// Integrates Y' = A(x(t)) x'(t) Y over one segment (t in [0, 1]) with the
/// adaptive embedded pair.
#[allow(clippy::too_many_arguments)]
fn integrate_segment(
    rhs: &RhsFn,
    seg: &PathSeg,
    y: &mut Mat2<BigComplex>,
    tab: &Tableau,
    tol: &BigReal,
    digits: u32,
    steps: &mut usize,
    max_err: &mut f64,
) -> Result<(), NumError> {
    let one = BigReal::from_i64(1, digits);
    let i_unit = BigComplex::i(digits);
    // position and velocity as functions of t in [0, 1]
    let x_of = |t: &BigReal| -> (BigComplex, BigComplex) {
        match seg {
            PathSeg::Line { from, to } => {
                let v = to.sub(from);
                (from.add(&v.mul_real(t)), v)
            }
            PathSeg::Arc { center, radius, theta0, theta1 } => {
                let span = theta1.sub(theta0);
                let theta = theta0.add(&span.mul(t));
                let e = BigComplex::new(theta.cos(), theta.sin()).mul_real(radius);
                let x = center.add(&e);
                let v = i_unit.mul(&e).mul_real(&span);
                (x, v)
            }
        }
    };
    let f = |t: &BigReal, yy: &Mat2<BigComplex>| -> Result<Mat2<BigComplex>, NumError> {
        let (x, v) = x_of(t);
        Ok(mat_scale(&rhs(&x)?.mul(yy), &v))
    };

    let mut t = BigReal::zero(digits);
    let mut h = BigReal::from_rational(&crate::scalars::rat(1, 64), digits);
    let two = BigReal::from_i64(2, digits);
    let min_h = 1e-9f64;
    while t.partial_cmp(&one) == Some(std::cmp::Ordering::Less) {
        // clamp the last step
        let remaining = one.sub(&t);
        if h.partial_cmp(&remaining) == Some(std::cmp::Ordering::Greater) {
            h = remaining.clone();
        }
        let mut k: Vec<Mat2<BigComplex>> = Vec::with_capacity(STAGES);
        for s in 0..STAGES {
            let mut ys = y.clone();
            for (j, kj) in k.iter().enumerate() {
                if j < tab.a[s].len() && !tab.a[s][j].is_zero() {
                    let w = tab.a[s][j].mul(&h);
                    ys = ys.add(&kj.map(|e| e.mul_real(&w)));
                }
            }
            let ts = t.add(&tab.c[s].mul(&h));
            k.push(f(&ts, &ys)?);
        }
        // 8th-order update and embedded error estimate
        let mut y_next = y.clone();
        for (s, ks) in k.iter().enumerate() {
            if !tab.b8[s].is_zero() {
                let w = tab.b8[s].mul(&h);
                y_next = y_next.add(&ks.map(|e| e.mul_real(&w)));
            }
        }
        let err_mat = k[0].add(&k[10]).sub(&k[11]).sub(&k[12]);
        let err = err_mat.max_abs().mul(&tab.err_w).mul(&h.abs());
        let err_f64 = err.to_f64();
        let tol_f64 = tol.to_f64();
        if err.partial_cmp(tol) != Some(std::cmp::Ordering::Greater) {
            t = t.add(&h);
            *y = y_next;
            *steps += 1;
            if err_f64.is_finite() && err_f64 > *max_err {
                *max_err = err_f64;
            }
            // conservative growth
            if err_f64 < tol_f64 / 256.0 {
                h = h.mul(&two);
            }
        } else {
            h = h.div(&two);
            if h.to_f64() < min_h {
                return Err(NumError::StepUnderflow { h: h.to_f64() });
            }
        }
    }
    Ok(())
}

fn transport(
    rhs: &RhsFn,
    circuit: &LoopSpec,
    frame: &Mat2<BigComplex>,
    digits: u32,
) -> Result<TransportResult, NumError> {
    let tab = embedded_tableau(digits);
    let tol = BigReal::pow10(-((digits / 2) as i64), digits);
    let mut y = frame.clone();
    let mut steps = 0usize;
    let mut max_err = 0f64;
    for seg in &circuit.segments {
        integrate_segment(rhs, seg, &mut y, &tab, &tol, digits, &mut steps, &mut max_err)?;
    }
    // monodromy = (Y0^{-1} Y_end)^T in the initial frame
    let m = frame.inv()?.mul(&y).transpose();
    Ok(TransportResult { monodromy: m, step_count: steps, max_local_error_estimate: max_err })
}

/// Companion matrix of the hypergeometric equation:
/// y'' = [ab y - (gamma - (1 + a + b) x) y'] / (x (1 - x)).
fn hg_companion(p: &HGParams, digits: u32) -> impl Fn(&BigComplex) -> Result<Mat2<BigComplex>, NumError> + '_ {
    let ab = BigReal::from_rational(&(&p.alpha * &p.beta), digits);
    let g = BigReal::from_rational(&p.gamma, digits);
    let s = BigReal::from_rational(&(Rational::one() + &p.alpha + &p.beta), digits);
    move |x: &BigComplex| {
        let digits_x = x.digits();
        let one = BigComplex::one(digits_x);
        let den = x.mul(&one.sub(x));
        if den.is_zero() {
            return Err(NumError::StepUnderflow { h: 0.0 });
        }
        let q = BigComplex::from_real(ab.clone()).div(&den)?;
        let lin = BigComplex::from_real(g.clone()).sub(&x.mul_real(&s));
        let pcoef = lin.div(&den)?.neg();
        Ok(Mat2::new(BigComplex::zero(digits_x), one, q, pcoef))
    }
}

/// Companion matrix of the Picard-Fuchs equation
/// D(D-1) pi = C s^l (D + l a)(D + l b) pi with D = s d/ds:
/// pi'' = C s^{l-2} [(1 + l(a+b)) s pi' + l^2 ab pi] / (1 - C s^l).
fn pf_companion(case: &CaseSpec, digits: u32) -> impl Fn(&BigComplex) -> Result<Mat2<BigComplex>, NumError> + '_ {
    let p = &case.invariant_params;
    let l = case.covering.l as i64;
    let c_val = BigReal::from_rational(&case.covering.c, digits);
    let lab = BigReal::from_rational(&(&p.alpha * &p.beta), digits).mul_i64(l * l);
    let lsum = BigReal::from_rational(&(&p.alpha + &p.beta), digits)
        .mul_i64(l)
        .add(&BigReal::from_i64(1, digits));
    move |s: &BigComplex| {
        let dx = s.digits();
        let one = BigComplex::one(dx);
        let s_l = s.pow_int(l)?;
        let s_lm2 = s.pow_int(l - 2)?;
        let den = one.sub(&s_l.mul_real(&c_val));
        if den.is_zero() {
            return Err(NumError::StepUnderflow { h: 0.0 });
        }
        let front = s_lm2.mul_real(&c_val).div(&den)?;
        let q = front.mul(&one).mul_real(&lab);
        let pcoef = front.mul(s).mul_real(&lsum);
        Ok(Mat2::new(BigComplex::zero(dx), one, q, pcoef))
    }
}

/// Transports the fundamental frame of the x = 1 series basis along the loop
/// and returns the numeric monodromy in that basis (comparable entrywise
/// with the closed-form base monodromies).
pub fn transport_hg(p: &HGParams, circuit: &LoopSpec, digits: u32) -> Result<TransportResult, NumError> {
    circuit.validate_clearance(&[(0.0, 0.0), (1.0, 0.0)], 0.05)?;
    let frame = basis_frame(p, &circuit.base, digits)?;
    let rhs = hg_companion(p, digits);
    transport(&rhs, circuit, &frame, digits)
}

/// Transports an identity frame of the Picard-Fuchs equation along a loop in
/// the sigma plane. Only conjugacy invariants of the result are meaningful.
pub fn transport_pf(case: &CaseSpec, circuit: &LoopSpec, digits: u32) -> Result<TransportResult, NumError> {
    let pts = singular_points(&case.covering, digits)?;
    let sing: Vec<(f64, f64)> = pts.iter().map(|p| p.approx.to_f64()).collect();
    circuit.validate_clearance(&sing, 0.05)?;
    let frame = Mat2::new(
        BigComplex::one(digits),
        BigComplex::zero(digits),
        BigComplex::zero(digits),
        BigComplex::one(digits),
    );
    let rhs = pf_companion(case, digits);
    transport(&rhs, circuit, &frame, digits)
}

/// Conjugacy-invariant comparison: |tr n - tr e| + |det n - det e|.
pub fn compare_invariants(numeric: &TransportResult, exact: &Mat2<BigComplex>) -> BigReal {
    let m = &numeric.monodromy;
    let dt = m.trace().dist(&exact.trace());
    let dd = m.det().dist(&exact.det());
    dt.add(&dd)
}

/// Base point in the sigma plane corresponding to x = 1/2 under x = C s^l:
/// the real branch of (1/(2C))^{1/l}.
pub fn sigma_base(case: &CaseSpec, digits: u32) -> Result<BigReal, NumError> {
    let target = (Rational::one() / &case.covering.c) / crate::scalars::rat(2, 1);
    let value = BigReal::from_rational(&target, digits);
    if value.is_negative() && case.covering.l % 2 == 0 {
        return Err(NumError::BadLoop);
    }
    Ok(value.nth_root(case.covering.l)?)
}

trait PowInt {
    fn pow_int(&self, k: i64) -> Result<BigComplex, NumError>;
}

impl PowInt for BigComplex {
    fn pow_int(&self, k: i64) -> Result<BigComplex, NumError> {
        if k < 0 {
            let pos = self.pow_int(-k)?;
            return Ok(BigComplex::one(self.digits()).div(&pos)?);
        }
        let mut acc = BigComplex::one(self.digits());
        let mut base = self.clone();
        let mut n = k as u64;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperg::base_monodromies;
    use crate::pf::{catalog, CaseName};
    use crate::scalars::rat;

    #[test]
    fn tableau_satisfies_order_conditions() {
        assert!(tableau_consistency());
    }

    #[test]
    fn trivial_loop_is_identity() {
        let d = 25;
        let p = HGParams::of((1, 3), (1, 3), (2, 3));
        let base = BigComplex::from_rational(&rat(1, 2), d);
        let quarter = BigReal::from_rational(&rat(1, 5), d);
        let lp = LoopSpec::trivial(&base, &quarter);
        let tr = transport_hg(&p, &lp, d).unwrap();
        let id = Mat2::new(
            BigComplex::one(d),
            BigComplex::zero(d),
            BigComplex::zero(d),
            BigComplex::one(d),
        );
        assert!(tr.monodromy.dist(&id).abs_below_pow10(11));
    }

    #[test]
    fn resonant_loop_around_one_is_unipotent() {
        let d = 25;
        let p = HGParams::of((1, 3), (1, 3), (2, 3));
        let base = BigComplex::from_rational(&rat(1, 2), d);
        let lp = LoopSpec::around(&base, &BigComplex::one(d), &BigReal::from_rational(&rat(1, 4), d), "x=1");
        let tr = transport_hg(&p, &lp, d).unwrap();
        let two = BigComplex::from_i64(2, d);
        assert!(tr.monodromy.trace().dist(&two).abs_below_pow10(12));
        // full-matrix agreement with the closed form in the series frame
        let hg = base_monodromies(&p, d).unwrap();
        assert!(tr.monodromy.dist(&hg.m1_base).abs_below_pow10(11));
    }

    #[test]
    fn nonresonant_loop_matches_closed_form() {
        let d = 25;
        let p = HGParams::of((3, 4), (1, 4), (1, 2));
        let base = BigComplex::from_rational(&rat(1, 2), d);
        let lp = LoopSpec::around(&base, &BigComplex::one(d), &BigReal::from_rational(&rat(1, 4), d), "x=1");
        let tr = transport_hg(&p, &lp, d).unwrap();
        assert!(tr.monodromy.trace().abs().abs_below_pow10(12));
        let lp0 = LoopSpec::around(&base, &BigComplex::zero(d), &BigReal::from_rational(&rat(1, 4), d), "x=0");
        let tr0 = transport_hg(&p, &lp0, d).unwrap();
        let hg = base_monodromies(&p, d).unwrap();
        let resid = compare_invariants(&tr0, &hg.m0_base);
        assert!(resid.abs_below_pow10(11), "residual {}", resid);
    }

    #[test]
    fn pf_transport_e7_around_p1() {
        let d = 25;
        let case = catalog(CaseName::E7);
        let base = BigComplex::from_real(sigma_base(&case, d).unwrap());
        let p1 = BigComplex::from_i64(2, d);
        let radius = BigReal::from_rational(&rat(1, 2), d);
        let lp = LoopSpec::around(&base, &p1, &radius, "p1");
        let tr = transport_pf(&case, &lp, d).unwrap();
        let two = BigComplex::from_i64(2, d);
        let one = BigComplex::one(d);
        assert!(tr.monodromy.trace().dist(&two).abs_below_pow10(10));
        assert!(tr.monodromy.det().dist(&one).abs_below_pow10(10));
    }

    #[test]
    fn clearance_violation_detected() {
        let d = 25;
        let p = HGParams::of((1, 3), (1, 3), (2, 3));
        let base = BigComplex::from_rational(&rat(1, 2), d);
        // path straight through x = 1
        let bad = LoopSpec {
            base: base.clone(),
            segments: vec![PathSeg::Line { from: base.clone(), to: BigComplex::from_i64(2, d) }],
            encircled: vec![],
            counterclockwise: true,
        };
        assert!(matches!(
            transport_hg(&p, &bad, d),
            Err(NumError::ClearanceViolated { .. })
        ));
    }
}
