//! Exact arithmetic in cyclotomic fields Q(zeta_N).
//!
//! Elements are stored in the power basis {zeta_N^k : 0 <= k < phi(N)} after
//! reduction modulo the N-th cyclotomic polynomial, and every element is kept
//! in its *minimal* field: constructors and arithmetic re-express the result
//! at the smallest divisor d | N containing it. That makes structural
//! equality canonical, so `Eq`/`Ord` can be derived and used for
//! deduplication in matrix-group closures.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::complex::BigComplex;
use super::float::BigReal;
use super::poly::{extended_gcd, RatPoly};
use super::ScalarError;

pub fn euler_phi(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result = result / p * (p - 1);
        }
        p += 1;
    }
    if m > 1 {
        result = result / m * (m - 1);
    }
    result
}

fn divisors(n: u32) -> Vec<u32> {
    let mut d: Vec<u32> = (1..=n).filter(|k| n % k == 0).collect();
    d.sort_unstable();
    d
}

/// The N-th cyclotomic polynomial, computed by dividing x^N - 1 by all
/// proper-divisor cyclotomic polynomials. Memoized.
pub fn cyclotomic_poly(n: u32) -> RatPoly {
    static CACHE: OnceLock<Mutex<HashMap<u32, RatPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let poly = {
        let mut xn1 = vec![BigRational::zero(); n as usize + 1];
        xn1[0] = -BigRational::one();
        xn1[n as usize] = BigRational::one();
        let mut num = RatPoly::new(xn1);
        for d in divisors(n) {
            if d < n {
                let (q, r) = num.divmod(&cyclotomic_poly(d));
                debug_assert!(r.is_zero());
                num = q;
            }
        }
        num
    };
    cache.lock().unwrap().insert(n, poly.clone());
    poly
}

/// An element of Q(zeta_N) in canonical (minimal-order) form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycElem {
    order: u32,
    coords: Vec<BigRational>,
}

impl CycElem {
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coordinates in the power basis of zeta_order, length phi(order).
    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn zero() -> Self {
        CycElem { order: 1, coords: vec![BigRational::zero()] }
    }

    pub fn one() -> Self {
        CycElem { order: 1, coords: vec![BigRational::one()] }
    }

    pub fn from_rational(q: BigRational) -> Self {
        CycElem { order: 1, coords: vec![q] }
    }

    pub fn from_i64(v: i64) -> Self {
        Self::from_rational(BigRational::from(BigInt::from(v)))
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.order == 1
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.order == 1 {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    /// Reduction of raw power-basis coordinates (indexed by zeta^0..zeta^{N-1},
    /// shorter vectors allowed) modulo the N-th cyclotomic polynomial.
    pub fn normalize(order: u32, raw_coords: Vec<BigRational>) -> Self {
        assert!(order >= 1, "order must be positive");
        let phi = cyclotomic_poly(order);
        let reduced = RatPoly::new(raw_coords).rem(&phi);
        let mut coords = reduced.coeffs().to_vec();
        coords.resize(euler_phi(order) as usize, BigRational::zero());
        (CycElem { order, coords }).minimalize()
    }

    /// zeta_N^k.
    pub fn root_of_unity(order: u32, k: i64) -> Self {
        assert!(order >= 1);
        let k = k.rem_euclid(order as i64) as usize;
        let mut raw = vec![BigRational::zero(); k + 1];
        raw[k] = BigRational::one();
        Self::normalize(order, raw)
    }

    /// e^{2 pi i q} for rational q.
    pub fn from_unit_exponent(q: &BigRational) -> Self {
        use num_traits::ToPrimitive;
        let den = q.denom().to_u32().expect("root-of-unity order fits in u32");
        let num_mod = (q.numer() % q.denom() + q.denom()) % q.denom();
        let k = num_mod.to_i64().expect("residue fits in i64");
        Self::root_of_unity(den, k)
    }

    /// Finds the smallest divisor of the current order containing the element.
    fn minimalize(self) -> Self {
        if self.order == 1 {
            return self;
        }
        for d in divisors(self.order) {
            if d == self.order {
                break;
            }
            if let Some(e) = self.express_in_order(d) {
                return e;
            }
        }
        self
    }

    /// Re-expresses the element in Q(zeta_target) when possible.
    /// `target` must divide the current order.
    pub fn express_in_order(&self, target: u32) -> Option<CycElem> {
        assert!(self.order % target == 0, "target order must divide current order");
        if target == self.order {
            return Some(self.clone());
        }
        let phi_n = euler_phi(self.order) as usize;
        let phi_t = euler_phi(target) as usize;
        let step = (self.order / target) as usize;
        // Column j: coordinates of zeta_target^j = zeta_N^{j*step} at order N.
        let mut cols: Vec<Vec<BigRational>> = Vec::with_capacity(phi_t);
        let phi_poly = cyclotomic_poly(self.order);
        for j in 0..phi_t {
            let mut raw = vec![BigRational::zero(); j * step + 1];
            raw[j * step] = BigRational::one();
            let red = RatPoly::new(raw).rem(&phi_poly);
            let mut v = red.coeffs().to_vec();
            v.resize(phi_n, BigRational::zero());
            cols.push(v);
        }
        solve_exact(&cols, &self.coords, phi_n, phi_t)
            .map(|coords| CycElem { order: target, coords })
    }

    /// Raises to a larger field: coordinates re-expressed at order m (self.order | m).
    fn raise_to(&self, m: u32) -> (u32, Vec<BigRational>) {
        assert!(m % self.order == 0);
        if m == self.order {
            return (m, self.coords.clone());
        }
        let step = (m / self.order) as usize;
        let mut raw = vec![BigRational::zero(); (euler_phi(self.order) as usize - 1) * step + 1];
        for (k, c) in self.coords.iter().enumerate() {
            raw[k * step] = c.clone();
        }
        let phi_poly = cyclotomic_poly(m);
        let red = RatPoly::new(raw).rem(&phi_poly);
        let mut v = red.coeffs().to_vec();
        v.resize(euler_phi(m) as usize, BigRational::zero());
        (m, v)
    }

    fn binop(&self, o: &Self, f: impl FnOnce(&RatPoly, &RatPoly, u32) -> RatPoly) -> Self {
        let m = (self.order as u64).lcm(&(o.order as u64)) as u32;
        let (_, a) = self.raise_to(m);
        let (_, b) = o.raise_to(m);
        let pa = RatPoly::new(a);
        let pb = RatPoly::new(b);
        let res = f(&pa, &pb, m);
        let mut coords = res.rem(&cyclotomic_poly(m)).coeffs().to_vec();
        coords.resize(euler_phi(m) as usize, BigRational::zero());
        (CycElem { order: m, coords }).minimalize()
    }

    pub fn add(&self, o: &Self) -> Self {
        self.binop(o, |a, b, _| a.add(b))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.binop(o, |a, b, _| a.sub(b))
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.binop(o, |a, b, _| a.mul(b))
    }

    pub fn neg(&self) -> Self {
        CycElem {
            order: self.order,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let phi = cyclotomic_poly(self.order);
        let a = RatPoly::new(self.coords.clone());
        let (g, s, _) = extended_gcd(&a, &phi);
        debug_assert_eq!(g.degree(), Some(0), "element coprime to Phi_N");
        let ginv = BigRational::one() / g.coeffs()[0].clone();
        let inv = s.scale(&ginv).rem(&phi);
        let mut coords = inv.coeffs().to_vec();
        coords.resize(euler_phi(self.order) as usize, BigRational::zero());
        Ok((CycElem { order: self.order, coords }).minimalize())
    }

    pub fn div(&self, o: &Self) -> Result<Self, ScalarError> {
        Ok(self.mul(&o.inv()?))
    }

    /// Galois automorphism zeta -> zeta^k, gcd(k, order) = 1.
    pub fn galois(&self, k: u32) -> Self {
        assert_eq!((k as u64).gcd(&(self.order as u64)), 1, "k must be coprime to the order");
        let n = self.order as usize;
        let mut raw = vec![BigRational::zero(); n.max(1)];
        for (j, c) in self.coords.iter().enumerate() {
            raw[(j * k as usize) % n.max(1)] += c;
        }
        Self::normalize(self.order, raw)
    }

    /// Complex conjugation zeta -> zeta^{-1}.
    pub fn conj(&self) -> Self {
        if self.order <= 2 {
            return self.clone();
        }
        self.galois(self.order - 1)
    }

    pub fn pow(&self, k: i64) -> Result<Self, ScalarError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut n = k.unsigned_abs();
        let mut acc = Self::one();
        let mut b = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            n >>= 1;
        }
        Ok(acc)
    }

    /// Numeric embedding zeta_N -> e^{2 pi i / N}.
    pub fn embed(&self, digits: u32) -> BigComplex {
        let mut acc = BigComplex::zero(digits);
        if self.order == 1 {
            return BigComplex::from_rational(&self.coords[0], digits);
        }
        let two_pi = BigReal::pi(digits).mul_i64(2);
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let theta = two_pi.mul_i64(k as i64).div_i64(self.order as i64);
            let term = BigComplex::new(theta.cos(), theta.sin())
                .mul_real(&BigReal::from_rational(c, digits));
            acc = acc.add(&term);
        }
        acc
    }

    /// The largest coordinate denominator.
    pub fn max_denominator(&self) -> BigInt {
        self.coords
            .iter()
            .map(|c| c.denom().abs())
            .max()
            .unwrap_or_else(BigInt::one)
    }
}

/// Solves cols * x = rhs exactly (cols given column-wise), if consistent.
fn solve_exact(
    cols: &[Vec<BigRational>],
    rhs: &[BigRational],
    rows: usize,
    ncols: usize,
) -> Option<Vec<BigRational>> {
    let mut m: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..ncols).map(|j| cols[j][i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    let mut pivot_of_col = vec![usize::MAX; ncols];
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = BigRational::one() / m[rank][col].clone();
        for v in m[rank].iter_mut() {
            *v *= &inv;
        }
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in 0..=ncols {
                    let t = &m[rank][j] * &f;
                    m[r][j] -= t;
                }
            }
        }
        pivot_of_col[col] = rank;
        rank += 1;
    }
    // Inconsistent if any zero row has nonzero rhs.
    for r in rank..rows {
        if !m[r][ncols].is_zero() {
            return None;
        }
    }
    let mut x = vec![BigRational::zero(); ncols];
    for col in 0..ncols {
        if pivot_of_col[col] != usize::MAX {
            x[col] = m[pivot_of_col[col]][ncols].clone();
        }
    }
    Some(x)
}

impl fmt::Debug for CycElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CycElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = if k == 0 {
                format!("{}", c)
            } else if c.is_one() {
                format!("z{}^{}", self.order, k)
            } else {
                format!("{}*z{}^{}", c, self.order, k)
            };
            parts.push(term);
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn phi12_is_x4_minus_x2_plus_1() {
        assert_eq!(cyclotomic_poly(12), RatPoly::from_i64(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_poly(1), RatPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic_poly(8), RatPoly::from_i64(&[1, 0, 0, 0, 1]));
    }

    #[test]
    fn zeta4_squared_is_minus_one() {
        let raw = vec![BigRational::zero(), BigRational::zero(), BigRational::one()];
        let e = CycElem::normalize(4, raw);
        assert_eq!(e, CycElem::from_i64(-1));
    }

    #[test]
    fn vanishing_cyclotomic_sum() {
        let raw = vec![BigRational::one(); 3];
        let e = CycElem::normalize(3, raw);
        assert!(e.is_zero());
    }

    #[test]
    fn i_sqrt3_squares_to_minus_three() {
        // zeta12^2 - zeta12^10 = zeta12^2 - zeta12^{-2} = i*sqrt(3)
        let mut raw = vec![BigRational::zero(); 11];
        raw[2] = BigRational::one();
        raw[10] = -BigRational::one();
        let e = CycElem::normalize(12, raw.clone());
        let sq = e.mul(&e);
        assert_eq!(sq, CycElem::from_i64(-3));
        // numeric confirmation
        let z = e.embed(60);
        assert!(z.re.abs_below_pow10(55));
        let s3 = BigReal::from_i64(3, 60).sqrt();
        assert!(z.im.sub(&s3).abs_below_pow10(55));
    }

    #[test]
    fn field_inverse() {
        // (1 + zeta4) / (1 + zeta4) = 1
        let e = CycElem::one().add(&CycElem::root_of_unity(4, 1));
        assert_eq!(e.div(&e).unwrap(), CycElem::one());
        // zeta3 * zeta3^2 = 1
        let z = CycElem::root_of_unity(3, 1);
        assert_eq!(z.mul(&z.pow(2).unwrap()), CycElem::one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(CycElem::one().div(&CycElem::zero()).is_err());
    }

    #[test]
    fn minimal_order_canonicalization() {
        // zeta6 expressed at order 12 must compare equal to zeta6 at order 6.
        let a = CycElem::root_of_unity(12, 2);
        let b = CycElem::root_of_unity(6, 1);
        assert_eq!(a, b);
        // -1 reduces to the rationals
        let m = CycElem::root_of_unity(2, 1);
        assert!(m.is_rational());
        assert_eq!(m.as_rational().unwrap(), rat(-1, 1));
    }

    #[test]
    fn conjugation_fixes_reals_and_flips_imaginary() {
        let i = CycElem::root_of_unity(4, 1);
        assert_eq!(i.conj(), i.neg());
        let z = CycElem::root_of_unity(12, 1);
        let s = z.add(&z.conj()); // 2 cos(pi/6) = sqrt(3)
        assert_eq!(s.mul(&s), CycElem::from_i64(3));
    }

    #[test]
    fn embed_matches_cos_sin() {
        let z = CycElem::root_of_unity(6, 1).embed(30);
        let half = BigReal::from_i64(1, 30).div_i64(2);
        assert!(z.re.sub(&half).abs_below_pow10(27));
        let s3h = BigReal::from_i64(3, 30).sqrt().div_i64(2);
        assert!(z.im.sub(&s3h).abs_below_pow10(27));
        assert!(CycElem::zero().embed(15).is_zero());
    }

    #[test]
    fn unit_exponent_wraps() {
        let q = rat(7, 6); // e^{2 pi i 7/6} = zeta6^7 = zeta6
        assert_eq!(CycElem::from_unit_exponent(&q), CycElem::root_of_unity(6, 1));
        let h = rat(1, 2);
        assert_eq!(CycElem::from_unit_exponent(&h), CycElem::from_i64(-1));
        assert_eq!(CycElem::from_unit_exponent(&rat(0, 1)), CycElem::one());
    }
}
