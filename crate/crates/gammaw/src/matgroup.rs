//! 2x2 matrices over pluggable scalars, finite-group closure, fingerprints.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::scalars::{BigComplex, CycElem, Rational};

/// Scalar interface required by [`Mat2`].
pub trait Scalar: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn is_zero(&self) -> bool;
}

impl Scalar for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn add(&self, o: &Self) -> Self {
        self.checked_add(*o).expect("integer overflow")
    }
    fn sub(&self, o: &Self) -> Self {
        self.checked_sub(*o).expect("integer overflow")
    }
    fn mul(&self, o: &Self) -> Self {
        self.checked_mul(*o).expect("integer overflow")
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn inv(&self) -> Option<Self> {
        match *self {
            1 => Some(1),
            -1 => Some(-1),
            _ => None,
        }
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn one() -> Self {
        <Rational as One>::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(<Rational as One>::one() / self)
        }
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl Scalar for CycElem {
    fn zero() -> Self {
        CycElem::zero()
    }
    fn one() -> Self {
        CycElem::one()
    }
    fn add(&self, o: &Self) -> Self {
        CycElem::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        CycElem::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        CycElem::mul(self, o)
    }
    fn neg(&self) -> Self {
        CycElem::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        CycElem::inv(self).ok()
    }
    fn is_zero(&self) -> bool {
        CycElem::is_zero(self)
    }
}

/// Precision tag for exact constants (0 and 1) entering complex matrices;
/// generous so that min-precision coercion never clips a real operand.
const EXACT_CONST_DIGITS: u32 = 1280;

impl Scalar for BigComplex {
    fn zero() -> Self {
        BigComplex::zero(EXACT_CONST_DIGITS)
    }
    fn one() -> Self {
        BigComplex::one(EXACT_CONST_DIGITS)
    }
    fn add(&self, o: &Self) -> Self {
        BigComplex::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        BigComplex::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        BigComplex::mul(self, o)
    }
    fn neg(&self) -> Self {
        BigComplex::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        BigComplex::one(self.digits()).div(self).ok()
    }
    fn is_zero(&self) -> bool {
        BigComplex::is_zero(self)
    }
}

/// Row-major 2x2 matrix.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mat2<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatError {
    #[error("matrix is singular")]
    Singular,
    #[error("closure bound exceeded")]
    ExceededBound,
}

impl<T: Scalar> Mat2<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        Mat2::new(T::one(), T::zero(), T::zero(), T::one())
    }

    pub fn diag(a: T, d: T) -> Self {
        Mat2::new(a, T::zero(), T::zero(), d)
    }

    pub fn mul(&self, o: &Self) -> Self {
        Mat2::new(
            self.a.mul(&o.a).add(&self.b.mul(&o.c)),
            self.a.mul(&o.b).add(&self.b.mul(&o.d)),
            self.c.mul(&o.a).add(&self.d.mul(&o.c)),
            self.c.mul(&o.b).add(&self.d.mul(&o.d)),
        )
    }

    pub fn add(&self, o: &Self) -> Self {
        Mat2::new(self.a.add(&o.a), self.b.add(&o.b), self.c.add(&o.c), self.d.add(&o.d))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Mat2::new(self.a.sub(&o.a), self.b.sub(&o.b), self.c.sub(&o.c), self.d.sub(&o.d))
    }

    pub fn det(&self) -> T {
        self.a.mul(&self.d).sub(&self.b.mul(&self.c))
    }

    pub fn trace(&self) -> T {
        self.a.add(&self.d)
    }

    pub fn transpose(&self) -> Self {
        Mat2::new(self.a.clone(), self.c.clone(), self.b.clone(), self.d.clone())
    }

    pub fn scale(&self, s: &T) -> Self {
        Mat2::new(self.a.mul(s), self.b.mul(s), self.c.mul(s), self.d.mul(s))
    }

    pub fn inv(&self) -> Result<Self, MatError> {
        let det = self.det();
        let det_inv = det.inv().ok_or(MatError::Singular)?;
        Ok(Mat2::new(
            self.d.mul(&det_inv),
            self.b.neg().mul(&det_inv),
            self.c.neg().mul(&det_inv),
            self.a.mul(&det_inv),
        ))
    }

    pub fn pow(&self, k: i64) -> Result<Self, MatError> {
        let mut base = if k < 0 { self.inv()? } else { self.clone() };
        let mut n = k.unsigned_abs();
        let mut acc = Self::identity();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        Ok(acc)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// Conjugation g * self * g^-1.
    pub fn conjugate_by(&self, g: &Self) -> Result<Self, MatError> {
        Ok(g.mul(self).mul(&g.inv()?))
    }

    /// True when self = scalar * identity for some scalar.
    pub fn as_scalar_multiple_of_identity(&self) -> Option<T> {
        if self.b.is_zero() && self.c.is_zero() && self.a == self.d {
            Some(self.a.clone())
        } else {
            None
        }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Mat2<U> {
        Mat2::new(f(&self.a), f(&self.b), f(&self.c), f(&self.d))
    }

    pub fn entries(&self) -> [&T; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }
}

impl Mat2<i64> {
    pub fn from_rows(rows: [[i64; 2]; 2]) -> Self {
        Mat2::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1])
    }

    pub fn to_rows(&self) -> [[i64; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }

    pub fn to_cyc(&self) -> Mat2<CycElem> {
        self.map(|&v| CycElem::from_i64(v))
    }

    pub fn max_abs_entry(&self) -> i64 {
        self.a.abs().max(self.b.abs()).max(self.c.abs()).max(self.d.abs())
    }
}

impl Mat2<CycElem> {
    pub fn embed(&self, digits: u32) -> Mat2<BigComplex> {
        self.map(|e| e.embed(digits))
    }
}

impl Mat2<BigComplex> {
    pub fn dist(&self, o: &Self) -> crate::scalars::BigReal {
        let mut m = self.a.dist(&o.a);
        for (x, y) in [(&self.b, &o.b), (&self.c, &o.c), (&self.d, &o.d)] {
            let d = x.dist(y);
            if d.partial_cmp(&m) == Some(std::cmp::Ordering::Greater) {
                m = d;
            }
        }
        m
    }

    pub fn max_abs(&self) -> crate::scalars::BigReal {
        self.dist(&Mat2::new(
            BigComplex::zero(self.a.digits()),
            BigComplex::zero(self.a.digits()),
            BigComplex::zero(self.a.digits()),
            BigComplex::zero(self.a.digits()),
        ))
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Mat2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

impl<T: Scalar> fmt::Debug for ClosureResult<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ClosureResult")
            .field("status", &self.status)
            .field("order", &self.order)
            .finish()
    }
}

impl<T: Scalar> fmt::Debug for Mat2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{:?}, {:?}], [{:?}, {:?}]]", self.a, self.b, self.c, self.d)
    }
}

/// Outcome of a breadth-first closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosureStatus {
    Finite,
    ExceededBound,
}

#[derive(Clone)]
pub struct ClosureResult<T> {
    pub status: ClosureStatus,
    /// Present (and closed under product and inverse) only when finite.
    pub elements: Vec<Mat2<T>>,
    pub order: usize,
}

/// Breadth-first closure of the group generated by `generators` under
/// products with the generators and their inverses, deduplicated by the
/// scalars' canonical forms. Exact scalars only.
pub fn closure<T>(generators: &[Mat2<T>], bound: usize) -> Result<ClosureResult<T>, MatError>
where
    T: Scalar + Ord,
{
    let mut gens = Vec::new();
    for g in generators {
        gens.push(g.clone());
        gens.push(g.inv()?);
    }
    let mut seen: BTreeSet<Mat2<T>> = BTreeSet::new();
    seen.insert(Mat2::identity());
    let mut frontier = vec![Mat2::<T>::identity()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for m in &frontier {
            for g in &gens {
                let p = m.mul(g);
                if seen.insert(p.clone()) {
                    if seen.len() > bound {
                        return Ok(ClosureResult {
                            status: ClosureStatus::ExceededBound,
                            elements: Vec::new(),
                            order: 0,
                        });
                    }
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    let elements: Vec<Mat2<T>> = seen.into_iter().collect();
    let order = elements.len();
    Ok(ClosureResult { status: ClosureStatus::Finite, elements, order })
}

/// Structural summary of a finite matrix group.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct GroupFingerprint {
    pub order: usize,
    pub abelian: bool,
    /// element order -> multiplicity
    pub element_orders: std::collections::BTreeMap<u32, u32>,
    /// Human-readable identification when the fingerprint is recognized.
    pub name: Option<String>,
}

pub fn fingerprint<T>(c: &ClosureResult<T>) -> Result<GroupFingerprint, MatError>
where
    T: Scalar + Ord,
{
    if c.status != ClosureStatus::Finite {
        return Err(MatError::ExceededBound);
    }
    let mut orders = std::collections::BTreeMap::new();
    for m in &c.elements {
        let mut p = m.clone();
        let mut k = 1u32;
        while !p.is_identity() {
            p = p.mul(m);
            k += 1;
            assert!(
                k as usize <= 2 * c.order + 1,
                "element order exceeds group order; closure not a group"
            );
        }
        *orders.entry(k).or_insert(0) += 1;
    }
    let abelian = c
        .elements
        .iter()
        .enumerate()
        .all(|(i, x)| c.elements[i + 1..].iter().all(|y| x.mul(y) == y.mul(x)));
    let name = identify(c.order, abelian, &orders);
    Ok(GroupFingerprint { order: c.order, abelian, element_orders: orders, name })
}

fn identify(
    order: usize,
    abelian: bool,
    orders: &std::collections::BTreeMap<u32, u32>,
) -> Option<String> {
    let multiset: Vec<(u32, u32)> = orders.iter().map(|(&k, &v)| (k, v)).collect();
    match (order, abelian) {
        (1, true) => Some("trivial".into()),
        (4, true) if multiset == [(1, 1), (2, 3)] => Some("Z/2 x Z/2".into()),
        (6, false) => Some("dihedral group of order 6".into()),
        (24, false) if multiset == [(1, 1), (2, 1), (3, 8), (4, 6), (6, 8)] => {
            // The Schwarz-list entry for these exponent triples; the
            // projectivized group is A4.
            Some("binary tetrahedral group SL(2,3)".into())
        }
        _ => None,
    }
}

/// Fingerprint of the abstract group A4 x Z/2, for comparison in reports.
pub fn a4_x_z2_multiset() -> std::collections::BTreeMap<u32, u32> {
    [(1u32, 1u32), (2, 7), (3, 8), (6, 8)].into_iter().collect()
}

/// Converts an integer matrix to a rational one.
pub fn int_to_rational(m: &Mat2<i64>) -> Mat2<Rational> {
    m.map(|&v| Rational::from(BigInt::from(v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    #[test]
    fn inverse_of_unipotent() {
        let m = Mat2::<Rational>::new(rat(1, 1), rat(3, 1), rat(0, 1), rat(1, 1));
        let inv = m.inv().unwrap();
        assert_eq!(inv, Mat2::new(rat(1, 1), rat(-3, 1), rat(0, 1), rat(1, 1)));
        assert!(m.mul(&inv).is_identity());
    }

    #[test]
    fn e7_generator_product() {
        // [[1,2],[0,1]] * [[1,0],[-2,1]] = [[-3,2],[-2,1]]
        let a = Mat2::<i64>::from_rows([[1, 2], [0, 1]]);
        let b = Mat2::<i64>::from_rows([[1, 0], [-2, 1]]);
        assert_eq!(a.mul(&b), Mat2::from_rows([[-3, 2], [-2, 1]]));
    }

    #[test]
    fn diagonal_det() {
        let s = Mat2::<Rational>::diag(rat(-4, 3), rat(1, 1));
        assert_eq!(s.det(), rat(-4, 3));
    }

    #[test]
    fn klein_four_closure() {
        let g1 = Mat2::<Rational>::diag(rat(1, 1), rat(-1, 1));
        let g2 = Mat2::<Rational>::diag(rat(-1, 1), rat(1, 1));
        let c = closure(&[g1, g2], 100).unwrap();
        assert_eq!(c.status, ClosureStatus::Finite);
        assert_eq!(c.order, 4);
        let fp = fingerprint(&c).unwrap();
        assert!(fp.abelian);
        assert_eq!(fp.element_orders, [(1, 1), (2, 3)].into_iter().collect());
        assert_eq!(fp.name.as_deref(), Some("Z/2 x Z/2"));
    }

    #[test]
    fn infinite_cyclic_exceeds_bound() {
        let g = Mat2::<Rational>::new(rat(1, 1), rat(1, 1), rat(0, 1), rat(1, 1));
        let c = closure(&[g], 1000).unwrap();
        assert_eq!(c.status, ClosureStatus::ExceededBound);
    }

    #[test]
    fn closure_ignores_generator_order_and_redundancy() {
        let g1 = Mat2::<Rational>::diag(rat(1, 1), rat(-1, 1));
        let g2 = Mat2::<Rational>::diag(rat(-1, 1), rat(1, 1));
        let c1 = closure(&[g1.clone(), g2.clone()], 100).unwrap();
        let c2 = closure(&[g2.clone(), g1.clone(), g2.mul(&g2)], 100).unwrap();
        assert_eq!(c1.elements, c2.elements);
    }

    #[test]
    fn identity_only_group() {
        let c = closure::<Rational>(&[Mat2::identity()], 10).unwrap();
        assert_eq!(c.order, 1);
        let fp = fingerprint(&c).unwrap();
        assert_eq!(fp.element_orders, [(1, 1)].into_iter().collect());
    }

    #[test]
    fn singular_matrix_rejected() {
        let m = Mat2::<Rational>::new(rat(1, 1), rat(1, 1), rat(1, 1), rat(1, 1));
        assert!(m.inv().is_err());
    }
}
