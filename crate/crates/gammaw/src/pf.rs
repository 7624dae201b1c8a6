//! The Picard-Fuchs layer: the E6/E7/E8 case catalog, the covering
//! substitution x = C s^l, singular points, the normalization matrix K that
//! rescales the x = 1 basis to elliptic-curve periods, and the assembly plus
//! exact recognition of the invariant monodromy generators M_{i,0} (integer
//! matrices) and the twisted-sector generators M_{i,d} (cyclotomic matrices).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, ToPrimitive, Zero};

use crate::hyperg::{base_monodromies, classify, HGParams, HgError, ResonanceKind};
use crate::matgroup::{Mat2, MatError};
use crate::scalars::poly::RatPoly;
use crate::scalars::{
    rat, recognize, recognize_integer, BigComplex, BigReal, CycElem, Rational, RecognitionFailure,
    RecognitionPolicy, ScalarError,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PfError {
    #[error("unknown case name: {0}")]
    UnknownCase(String),
    #[error("P(p1) vanishes; normalization undefined")]
    NormalizationPole,
    #[error("no real branch for the covering radical")]
    NoRealBranch,
    #[error("{context}: entry ({row},{col}) of generator {gen}: {failure}")]
    Recognition {
        context: String,
        gen: usize,
        row: usize,
        col: usize,
        failure: RecognitionFailure,
    },
    #[error("recognized generator {gen} is not unimodular")]
    NotUnimodular { gen: usize },
    #[error("sector is not second order")]
    NotSecondOrder,
    #[error(transparent)]
    Hg(#[from] HgError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Mat(#[from] MatError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum CaseName {
    E6,
    E7,
    E8,
}

impl fmt::Display for CaseName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseName::E6 => write!(f, "E6"),
            CaseName::E7 => write!(f, "E7"),
            CaseName::E8 => write!(f, "E8"),
        }
    }
}

impl FromStr for CaseName {
    type Err = PfError;
    fn from_str(s: &str) -> Result<Self, PfError> {
        match s.trim().to_ascii_uppercase().as_str() {
            "E6" => Ok(CaseName::E6),
            "E7" => Ok(CaseName::E7),
            "E8" => Ok(CaseName::E8),
            other => Err(PfError::UnknownCase(other.to_string())),
        }
    }
}

/// Data of the degree-l covering x = C s^l together with the j-invariant
/// presentation j(s) = P(s) / (1 - C s^l)^N.
#[derive(Clone, Debug)]
pub struct CoveringData {
    pub c: Rational,
    pub l: u32,
    pub n_exp: u32,
    /// Numerator polynomial P of the j-invariant.
    pub p_poly: RatPoly,
    /// Primitive l-th root of unity.
    pub eta: CycElem,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum SystemKind {
    FirstOrder,
    SecondOrder,
}

/// One J-eigenvalue sector of the twisted monodromy.
#[derive(Clone, Debug)]
pub struct SectorSpec {
    /// Eigenvalue exponent: J acts on this sector by e^{2 pi i d}.
    pub d: Rational,
    pub kind: SystemKind,
    /// Present exactly for second-order systems.
    pub hg_params: Option<HGParams>,
    /// deg(phi_r) for the first-order periods in this sector.
    pub monomial_degrees: Vec<Rational>,
    /// The assembled composite is transposed (the paper's convention).
    pub transpose: bool,
}

/// Full catalog record for one singularity.
#[derive(Clone, Debug)]
pub struct CaseSpec {
    pub name: CaseName,
    pub polynomial_note: String,
    pub covering: CoveringData,
    pub invariant_params: HGParams,
    pub sectors: Vec<SectorSpec>,
    pub default_m: i64,
    /// j-invariant as the paper displays it, for the identity test
    /// j_num / j_den = P / (1 - C s^l)^N.
    pub j_num: RatPoly,
    pub j_den: RatPoly,
}

fn second_order(d: Rational, p: HGParams) -> SectorSpec {
    SectorSpec {
        d,
        kind: SystemKind::SecondOrder,
        hg_params: Some(p),
        monomial_degrees: Vec::new(),
        transpose: true,
    }
}

fn first_order(d: Rational, degrees: Vec<Rational>) -> SectorSpec {
    SectorSpec {
        d,
        kind: SystemKind::FirstOrder,
        hg_params: None,
        monomial_degrees: degrees,
        transpose: true,
    }
}

/// The embedded case catalog.
pub fn catalog(name: CaseName) -> CaseSpec {
    match name {
        CaseName::E6 => {
            // j(s) = -s^3 (s^3 - 216)^3 / (s^3 + 27)^3, C = -1/27, l = 3, N = 3.
            let s3 = RatPoly::monomial(Rational::one(), 3);
            let shifted = s3.add(&RatPoly::from_i64(&[-216]));
            let j_num = s3.mul(&shifted.pow(3)).scale(&rat(-1, 1));
            let j_den = s3.add(&RatPoly::from_i64(&[27])).pow(3);
            let p_poly = j_num.scale(&rat(1, 19683)); // / 27^3
            CaseSpec {
                name,
                polynomial_note: "x1^3 + x2^3 + x3^3 + s*x1*x2*x3".into(),
                covering: CoveringData {
                    c: rat(-1, 27),
                    l: 3,
                    n_exp: 3,
                    p_poly,
                    eta: CycElem::root_of_unity(3, 1),
                },
                invariant_params: HGParams::of((1, 3), (1, 3), (2, 3)),
                sectors: vec![
                    first_order(rat(1, 3), vec![rat(1, 3); 3]),
                    first_order(rat(2, 3), vec![rat(2, 3); 3]),
                ],
                default_m: 0,
                j_num,
                j_den,
            }
        }
        CaseName::E7 => {
            // j(s) = 16 (s^2 + 12)^3 / (4 - s^2)^2, C = 1/4, l = 2, N = 2.
            let base = RatPoly::monomial(Rational::one(), 2).add(&RatPoly::from_i64(&[12]));
            let p_poly = base.pow(3);
            let j_num = p_poly.scale(&rat(16, 1));
            let j_den = RatPoly::from_i64(&[4, 0, -1]).pow(2);
            CaseSpec {
                name,
                polynomial_note: "x1^4 + x2^4 + x3^2 + s*x1^2*x2^2".into(),
                covering: CoveringData {
                    c: rat(1, 4),
                    l: 2,
                    n_exp: 2,
                    p_poly,
                    eta: CycElem::root_of_unity(2, 1),
                },
                invariant_params: HGParams::of((1, 4), (1, 4), (1, 2)),
                sectors: vec![
                    second_order(rat(1, 4), HGParams::of((3, 4), (1, 4), (1, 2))),
                    first_order(rat(1, 4), vec![rat(1, 4); 2]),
                    first_order(rat(1, 2), vec![rat(1, 2)]),
                    first_order(rat(3, 4), vec![rat(3, 4); 2]),
                ],
                default_m: 0,
                j_num,
                j_den,
            }
        }
        CaseName::E8 => {
            // j(s) = 1728 * 4 s^3 / (4 s^3 + 27), C = -4/27, l = 3, N = 1.
            let p_poly = RatPoly::monomial(rat(256, 1), 3);
            let j_num = RatPoly::monomial(rat(6912, 1), 3);
            let j_den = RatPoly::new(vec![rat(27, 1), rat(0, 1), rat(0, 1), rat(4, 1)]);
            CaseSpec {
                name,
                polynomial_note: "x1^6 + x2^3 + x3^2 + s*x1^4*x2".into(),
                covering: CoveringData {
                    c: rat(-4, 27),
                    l: 3,
                    n_exp: 1,
                    p_poly,
                    eta: CycElem::root_of_unity(3, 1),
                },
                invariant_params: HGParams::of((1, 12), (7, 12), (2, 3)),
                sectors: vec![
                    second_order(rat(1, 3), HGParams::of((1, 4), (3, 4), (2, 3))),
                    second_order(rat(1, 2), HGParams::of((1, 3), (5, 6), (2, 3))),
                    second_order(rat(2, 3), HGParams::of((5, 12), (11, 12), (2, 3))),
                    first_order(rat(1, 6), vec![rat(1, 6)]),
                    first_order(rat(5, 6), vec![rat(5, 6)]),
                ],
                default_m: 0,
                j_num,
                j_den,
            }
        }
    }
}

/// The rational-function identity j(s) (1 - C s^l)^N = P(s), checked by
/// exact polynomial arithmetic against the displayed j-invariant.
pub fn jinv_identity_holds(case: &CaseSpec) -> bool {
    let mut coeffs = vec![Rational::zero(); case.covering.l as usize + 1];
    coeffs[0] = Rational::one();
    coeffs[case.covering.l as usize] = -case.covering.c.clone();
    let denom_pow = RatPoly::new(coeffs).pow(case.covering.n_exp);
    case.j_num.mul(&denom_pow) == case.covering.p_poly.mul(&case.j_den)
}

/// A singular point p_i = C^{-1/l} eta^{i-1}: a real radical times an exact
/// root of unity, plus its numeric embedding.
#[derive(Clone, Debug)]
pub struct SingularPoint {
    pub phase: CycElem,
    pub approx: BigComplex,
}

/// The real branch of C^{-1/l}: positive for C > 0, the real negative root
/// for C < 0 with odd l.
pub fn covering_radical(cov: &CoveringData, digits: u32) -> Result<BigReal, PfError> {
    let c_inv = cov.c.clone().recip();
    if c_inv < Rational::zero() && cov.l % 2 == 0 {
        return Err(PfError::NoRealBranch);
    }
    BigReal::from_rational(&c_inv, digits)
        .nth_root(cov.l)
        .map_err(PfError::Scalar)
}

/// Singular points in the paper's display order (p_1 = C^{-1/l} real).
pub fn singular_points(cov: &CoveringData, digits: u32) -> Result<Vec<SingularPoint>, PfError> {
    let radical = covering_radical(cov, digits)?;
    (0..cov.l)
        .map(|i| {
            let phase = cov.eta.pow(i as i64).expect("root of unity power");
            let approx = phase.embed(digits).mul_real(&radical);
            Ok(SingularPoint { phase, approx })
        })
        .collect()
}

/// M_i^PF = (M0^HG)^{i-1} M1^HG (M0^HG)^{1-i} for i = 1..l.
pub fn pf_monodromies(
    p: &HGParams,
    l: u32,
    digits: u32,
) -> Result<Vec<Mat2<BigComplex>>, PfError> {
    let hg = base_monodromies(p, digits)?;
    let mut out = Vec::with_capacity(l as usize);
    for i in 1..=l as i64 {
        let left = hg.m0_base.pow(i - 1)?;
        let right = hg.m0_base.pow(1 - i)?;
        out.push(left.mul(&hg.m1_base).mul(&right));
    }
    Ok(out)
}

/// ln P(p1) + 2 pi i m, in the principal branch.
fn log_p_at_p1(cov: &CoveringData, m: i64, digits: u32) -> Result<BigComplex, PfError> {
    let p1 = covering_radical(cov, digits)?;
    let value = cov.p_poly.eval_real(&p1);
    if value.is_zero() {
        return Err(PfError::NormalizationPole);
    }
    let principal = BigComplex::from_real(value).ln()?;
    let shift = BigComplex::two_pi_i(digits).mul_real(&BigReal::from_i64(m, digits));
    Ok(principal.add(&shift))
}

/// The normalization K = [[1, 0], [-a/b, 1/b]] with a = (ln P(p1) + 2 pi i m)/N
/// and b = 2 pi i / N.
pub fn normalization_k(cov: &CoveringData, m: i64, digits: u32) -> Result<Mat2<BigComplex>, PfError> {
    let n = BigReal::from_i64(cov.n_exp as i64, digits);
    let inv_n = BigReal::from_i64(1, digits).div(&n);
    let a = log_p_at_p1(cov, m, digits)?.mul_real(&inv_n);
    let b = BigComplex::two_pi_i(digits).mul_real(&inv_n);
    let one = BigComplex::one(digits);
    let zero = BigComplex::zero(digits);
    let inv_b = one.div(&b)?;
    Ok(Mat2::new(one, zero, a.div(&b)?.neg(), inv_b))
}

/// Numeric assembly of the invariant monodromy: M_{i,0}^T = K M_i^PF K^{-1},
/// returned already transposed (so entries approximate integers).
pub fn assemble_invariant(
    case: &CaseSpec,
    m: i64,
    digits: u32,
) -> Result<Vec<Mat2<BigComplex>>, PfError> {
    let k = normalization_k(&case.covering, m, digits)?;
    let k_inv = k.inv()?;
    let pf = pf_monodromies(&case.invariant_params, case.covering.l, digits)?;
    Ok(pf
        .into_iter()
        .map(|mi| k.mul(&mi).mul(&k_inv).transpose())
        .collect())
}

/// Integer recognition of the invariant generators with a confirmation pass
/// at `policy.confirm_precision_factor` times the precision; also checks
/// det = 1 exactly on the recognized integers.
pub fn invariant_monodromy(
    case: &CaseSpec,
    m: i64,
    digits: u32,
    policy: &RecognitionPolicy,
) -> Result<Vec<Mat2<i64>>, PfError> {
    let context = format!("{} invariant recognition", case.name);
    policy.validate_for(digits)?;
    if digits < 40 {
        return Err(PfError::Recognition {
            context,
            gen: 1,
            row: 1,
            col: 1,
            failure: RecognitionFailure::PrecisionTooLow,
        });
    }
    let base = assemble_invariant(case, m, digits)?;
    let high = assemble_invariant(case, m, digits * policy.confirm_precision_factor)?;
    let tol = policy.residual_log10;
    let mut out = Vec::with_capacity(base.len());
    for (gi, (mb, mh)) in base.iter().zip(high.iter()).enumerate() {
        let mut ints = [[0i64; 2]; 2];
        for (idx, (zb, zh)) in mb.entries().into_iter().zip(mh.entries()).enumerate() {
            let (row, col) = (idx / 2 + 1, idx % 2 + 1);
            let err = |failure| PfError::Recognition {
                context: context.clone(),
                gen: gi + 1,
                row,
                col,
                failure,
            };
            let n = recognize_integer(zb, tol).ok_or_else(|| err(RecognitionFailure::NoCandidate))?;
            let confirm =
                recognize_integer(zh, tol).ok_or_else(|| err(RecognitionFailure::ConfirmFailed))?;
            if n != confirm {
                return Err(err(RecognitionFailure::ConfirmFailed));
            }
            ints[idx / 2][idx % 2] =
                n.to_i64().ok_or_else(|| err(RecognitionFailure::NoCandidate))?;
        }
        let mat = Mat2::from_rows(ints);
        if mat.det() != 1 {
            return Err(PfError::NotUnimodular { gen: gi + 1 });
        }
        out.push(mat);
    }
    Ok(out)
}

/// Numeric assembly of a second-order twisted sector (transposed composite).
pub fn assemble_twisted(
    sector: &SectorSpec,
    l: u32,
    digits: u32,
) -> Result<Vec<Mat2<BigComplex>>, PfError> {
    let params = sector.hg_params.as_ref().ok_or(PfError::NotSecondOrder)?;
    let hg = base_monodromies(params, digits)?;
    let mut out = Vec::with_capacity(l as usize);
    for i in 1..=l as i64 {
        let left = hg.m0_base.pow(i - 1)?;
        let right = hg.m0_base.pow(1 - i)?;
        let composite = left.mul(&hg.m1_base).mul(&right);
        out.push(if sector.transpose { composite.transpose() } else { composite });
    }
    Ok(out)
}

/// Exact recognition of a twisted sector in Q(zeta_12), with confirmation at
/// scaled-up precision and sector-coherence checks (shared det and trace).
pub fn twisted_monodromy(
    case: &CaseSpec,
    sector: &SectorSpec,
    digits: u32,
    policy: &RecognitionPolicy,
) -> Result<Vec<Mat2<CycElem>>, PfError> {
    policy.validate_for(digits)?;
    let base = assemble_twisted(sector, case.covering.l, digits)?;
    let high_digits = digits * policy.confirm_precision_factor;
    let high = assemble_twisted(sector, case.covering.l, high_digits)?;
    let context = format!("{} twisted sector d={} recognition", case.name, sector.d);
    let mut out = Vec::with_capacity(base.len());
    for (gi, (mb, mh)) in base.iter().zip(high.iter()).enumerate() {
        let mut entries = Vec::with_capacity(4);
        for (idx, (zb, zh)) in mb.entries().into_iter().zip(mh.entries()).enumerate() {
            let (row, col) = (idx / 2 + 1, idx % 2 + 1);
            let err = |failure| PfError::Recognition {
                context: context.clone(),
                gen: gi + 1,
                row,
                col,
                failure,
            };
            let e = recognize(zb, policy).map_err(err)?;
            let residual = e.embed(high_digits).dist(zh);
            if !residual.abs_below_pow10(policy.residual_log10 as i64) {
                return Err(err(RecognitionFailure::ConfirmFailed));
            }
            entries.push(e);
        }
        let mut it = entries.into_iter();
        out.push(Mat2::new(
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
        ));
    }
    // Conjugate generators share the characteristic polynomial.
    let det0 = out[0].det();
    let tr0 = out[0].trace();
    for m in &out[1..] {
        if m.det() != det0 || m.trace() != tr0 {
            return Err(PfError::Recognition {
                context,
                gen: 0,
                row: 0,
                col: 0,
                failure: RecognitionFailure::ConfirmFailed,
            });
        }
    }
    Ok(out)
}

/// Monodromy scalar e^{2 pi i deg(phi_r)} of a first-order period.
pub fn scalar_monodromy(degree: &Rational) -> CycElem {
    CycElem::from_unit_exponent(degree)
}

/// The complete assembled-and-recognized monodromy data for one case.
#[derive(Clone, Debug)]
pub struct MonodromyRep {
    pub case_name: CaseName,
    pub branch_m: i64,
    pub invariant_gens: Vec<Mat2<i64>>,
    pub twisted_gens: BTreeMap<Rational, Vec<Mat2<CycElem>>>,
    pub first_order_scalars: BTreeMap<Rational, CycElem>,
}

pub fn build_rep(
    case: &CaseSpec,
    m: i64,
    digits: u32,
    policy: &RecognitionPolicy,
) -> Result<MonodromyRep, PfError> {
    let invariant_gens = invariant_monodromy(case, m, digits, policy)?;
    let mut twisted_gens = BTreeMap::new();
    let mut first_order_scalars = BTreeMap::new();
    for sector in &case.sectors {
        match sector.kind {
            SystemKind::SecondOrder => {
                let gens = twisted_monodromy(case, sector, digits, policy)?;
                twisted_gens.insert(sector.d.clone(), gens);
            }
            SystemKind::FirstOrder => {
                for deg in &sector.monomial_degrees {
                    first_order_scalars.insert(deg.clone(), scalar_monodromy(deg));
                }
            }
        }
    }
    Ok(MonodromyRep {
        case_name: case.name,
        branch_m: m,
        invariant_gens,
        twisted_gens,
        first_order_scalars,
    })
}

/// The paper's displayed m-families of invariant generators.
pub fn family_instance(name: CaseName, m: i64) -> Vec<Mat2<i64>> {
    match name {
        CaseName::E6 => vec![
            Mat2::from_rows([[1, 3], [0, 1]]),
            Mat2::from_rows([[1 - 3 * m, 3 * m * m], [-3, 1 + 3 * m]]),
            Mat2::from_rows([[4 - 3 * m, 3 * (m - 1) * (m - 1)], [-3, 3 * m - 2]]),
        ],
        CaseName::E7 => vec![
            Mat2::from_rows([[1, 2], [0, 1]]),
            Mat2::from_rows([[1 - 2 * m, 2 * m * m], [-2, 1 + 2 * m]]),
        ],
        CaseName::E8 => vec![
            Mat2::from_rows([[1, 1], [0, 1]]),
            Mat2::from_rows([[-m, (1 + m) * (1 + m)], [-1, 2 + m]]),
            Mat2::from_rows([[1 - m, m * m], [-1, 1 + m]]),
        ],
    }
}

/// Finds the family index matching the computed generators, if any.
pub fn family_match(name: CaseName, gens: &[Mat2<i64>]) -> Option<i64> {
    if gens.len() < 2 {
        return None;
    }
    let a11 = gens[1].a;
    let m = match name {
        CaseName::E6 => {
            if (1 - a11) % 3 != 0 {
                return None;
            }
            (1 - a11) / 3
        }
        CaseName::E7 => {
            if (1 - a11) % 2 != 0 {
                return None;
            }
            (1 - a11) / 2
        }
        CaseName::E8 => -a11,
    };
    if family_instance(name, m) == gens {
        Some(m)
    } else {
        None
    }
}

/// The intertwiner between the E8 sectors d = 1/3 and d = 2/3:
/// M_{i,2/3}^{-1} = S^{-1} M_{pi(i),1/3} S with S = diag(-4/3, 1) and
/// pi = (1)(2 3). The published display conjugates on the other side, which
/// fails on the published matrices themselves; this orientation is the one
/// exact arithmetic confirms.
pub fn check_intertwiner(rep: &MonodromyRep) -> bool {
    let (Some(t13), Some(t23)) =
        (rep.twisted_gens.get(&rat(1, 3)), rep.twisted_gens.get(&rat(2, 3)))
    else {
        return false;
    };
    if t13.len() != 3 || t23.len() != 3 {
        return false;
    }
    let s = Mat2::<CycElem>::diag(CycElem::from_rational(rat(-4, 3)), CycElem::one());
    let Ok(s_inv) = s.inv() else { return false };
    let perm = [0usize, 2, 1];
    (0..3).all(|i| match t23[i].inv() {
        Ok(lhs) => lhs == s_inv.mul(&t13[perm[i]]).mul(&s),
        Err(_) => false,
    })
}

/// Serializes the catalog as a JSON document (the report's conventions:
/// rationals as "p/q" strings, polynomials as coefficient arrays).
pub fn catalog_document() -> serde_json::Value {
    use crate::scalars::rational_str;
    let poly_json = |p: &RatPoly| {
        serde_json::Value::Array(p.coeffs().iter().map(|c| rational_str(c).into()).collect())
    };
    let params_json = |p: &HGParams| {
        serde_json::json!({
            "alpha": rational_str(&p.alpha),
            "beta": rational_str(&p.beta),
            "gamma": rational_str(&p.gamma),
        })
    };
    let cases: Vec<serde_json::Value> = [CaseName::E6, CaseName::E7, CaseName::E8]
        .into_iter()
        .map(|name| {
            let c = catalog(name);
            let sectors: Vec<serde_json::Value> = c
                .sectors
                .iter()
                .map(|s| {
                    serde_json::json!({
                        "d": rational_str(&s.d),
                        "kind": match s.kind {
                            SystemKind::FirstOrder => "first_order",
                            SystemKind::SecondOrder => "second_order",
                        },
                        "hg_params": s.hg_params.as_ref().map(params_json),
                        "monomial_degrees":
                            s.monomial_degrees.iter().map(rational_str).collect::<Vec<_>>(),
                        "transpose": s.transpose,
                    })
                })
                .collect();
            serde_json::json!({
                "name": c.name.to_string(),
                "polynomial": c.polynomial_note,
                "covering": {
                    "C": rational_str(&c.covering.c),
                    "l": c.covering.l,
                    "N": c.covering.n_exp,
                    "P": poly_json(&c.covering.p_poly),
                },
                "invariant_params": params_json(&c.invariant_params),
                "sectors": sectors,
                "default_m": c.default_m,
                "j_num": poly_json(&c.j_num),
                "j_den": poly_json(&c.j_den),
            })
        })
        .collect();
    serde_json::json!({ "schema_version": "1", "cases": cases })
}

/// The resonance class of the invariant parameters matches the covering
/// degree; downstream counting arguments rely on this.
pub fn invariant_resonance_consistent(case: &CaseSpec) -> bool {
    matches!(
        classify(&case.invariant_params).kind,
        ResonanceKind::Resonant { l } if l == case.covering.l
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn policy() -> RecognitionPolicy {
        RecognitionPolicy::default()
    }

    #[test]
    fn catalog_basics() {
        let e7 = catalog(CaseName::E7);
        assert_eq!(e7.invariant_params, HGParams::of((1, 4), (1, 4), (1, 2)));
        assert_eq!(e7.covering.c, rat(1, 4));
        assert_eq!(e7.covering.l, 2);
        let e8 = catalog(CaseName::E8);
        let d12 = e8
            .sectors
            .iter()
            .find(|s| s.d == rat(1, 2) && s.kind == SystemKind::SecondOrder)
            .unwrap();
        assert_eq!(d12.hg_params.as_ref().unwrap(), &HGParams::of((1, 3), (5, 6), (2, 3)));
        let e6 = catalog(CaseName::E6);
        assert!(e6.sectors.iter().all(|s| s.kind == SystemKind::FirstOrder));
        assert!("bogus".parse::<CaseName>().is_err());
    }

    #[test]
    fn j_invariant_identity_all_cases() {
        for name in [CaseName::E6, CaseName::E7, CaseName::E8] {
            let c = catalog(name);
            assert!(jinv_identity_holds(&c), "{name}");
            assert!(invariant_resonance_consistent(&c), "{name}");
        }
    }

    #[test]
    fn singular_points_match_paper() {
        let d = 50;
        // E7: {2, -2}
        let e7 = catalog(CaseName::E7);
        let pts = singular_points(&e7.covering, d).unwrap();
        assert!(pts[0].approx.sub(&BigComplex::from_i64(2, d)).abs().abs_below_pow10(45));
        assert!(pts[1].approx.add(&BigComplex::from_i64(2, d)).abs().abs_below_pow10(45));
        // E6: p1 = -3
        let e6 = catalog(CaseName::E6);
        let pts6 = singular_points(&e6.covering, d).unwrap();
        assert!(pts6[0].approx.add(&BigComplex::from_i64(3, d)).abs().abs_below_pow10(45));
        // E8: p1 = -3 * 4^{-1/3}
        let e8 = catalog(CaseName::E8);
        let pts8 = singular_points(&e8.covering, d).unwrap();
        let expected = BigReal::from_i64(4, d).nth_root(3).unwrap().pow_i(-1).mul_i64(-3);
        assert!(pts8[0].approx.re.sub(&expected).abs_below_pow10(44));
        assert!(pts8[0].approx.im.abs_below_pow10(44));
        for p in &pts8 {
            assert!(p.approx.abs().sub(&expected.abs()).abs_below_pow10(40));
        }
    }

    #[test]
    fn normalization_k_values() {
        // E7, m=0: a = 6 ln 2, b = pi i
        let d = 60;
        let e7 = catalog(CaseName::E7);
        let k = normalization_k(&e7.covering, 0, d).unwrap();
        let a = BigReal::from_i64(2, d).ln().unwrap().mul_i64(6);
        let b = BigComplex::new(BigReal::zero(d), BigReal::pi(d));
        let expect = BigComplex::from_real(a).div(&b).unwrap().neg();
        assert!(k.c.dist(&expect).abs_below_pow10(50));
        let det = k.det();
        let inv_b = BigComplex::one(d).div(&b).unwrap();
        assert!(det.dist(&inv_b).abs_below_pow10(50));
        // E8: b = 2 pi i (N = 1), for any branch integer
        let e8 = catalog(CaseName::E8);
        let k8 = normalization_k(&e8.covering, 3, d).unwrap();
        let b8 = BigComplex::two_pi_i(d);
        assert!(k8.d.dist(&BigComplex::one(d).div(&b8).unwrap()).abs_below_pow10(50));
    }

    #[test]
    fn pf_monodromy_conjugacy() {
        let d = 50;
        let p = HGParams::of((1, 4), (1, 4), (1, 2));
        let ms = pf_monodromies(&p, 2, d).unwrap();
        let hg = base_monodromies(&p, d).unwrap();
        assert!(ms[0].dist(&hg.m1_base).abs_below_pow10(40));
        let two = BigComplex::from_i64(2, d);
        for m in &ms {
            assert!(m.trace().dist(&two).abs_below_pow10(38));
        }
    }

    #[test]
    fn e7_invariant_generators_exact() {
        let case = catalog(CaseName::E7);
        let gens = invariant_monodromy(&case, 0, 60, &policy()).unwrap();
        assert_eq!(gens[0], Mat2::from_rows([[1, 2], [0, 1]]));
        assert_eq!(gens[1], Mat2::from_rows([[1, 0], [-2, 1]]));
        assert_eq!(family_match(CaseName::E7, &gens), Some(0));
    }

    #[test]
    fn e6_invariant_generators_exact() {
        let case = catalog(CaseName::E6);
        let gens = invariant_monodromy(&case, 0, 60, &policy()).unwrap();
        assert_eq!(gens[0], Mat2::from_rows([[1, 3], [0, 1]]));
        // the principal branch at m = 0 lands on the displayed family at index 1
        assert_eq!(gens[1], Mat2::from_rows([[-2, 3], [-3, 4]]));
        assert_eq!(gens[2], Mat2::from_rows([[1, 0], [-3, 1]]));
        assert_eq!(family_match(CaseName::E6, &gens), Some(1));
    }

    #[test]
    fn e8_invariant_generators_exact() {
        let case = catalog(CaseName::E8);
        let gens = invariant_monodromy(&case, 0, 60, &policy()).unwrap();
        assert_eq!(gens[0], Mat2::from_rows([[1, 1], [0, 1]]));
        assert_eq!(gens[1], Mat2::from_rows([[0, 1], [-1, 2]]));
        assert_eq!(gens[2], Mat2::from_rows([[1, 0], [-1, 1]]));
        assert_eq!(family_match(CaseName::E8, &gens), Some(0));
    }

    #[test]
    fn branch_shift_moves_family_index() {
        let case = catalog(CaseName::E8);
        let gens = invariant_monodromy(&case, 1, 60, &policy()).unwrap();
        assert_eq!(family_match(CaseName::E8, &gens), Some(1));
    }

    #[test]
    fn starved_precision_fails_loudly() {
        let case = catalog(CaseName::E7);
        let err = invariant_monodromy(&case, 0, 15, &policy()).unwrap_err();
        match err {
            PfError::Recognition { failure, .. } => {
                assert_eq!(failure, RecognitionFailure::PrecisionTooLow)
            }
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn e7_twisted_sector_exact() {
        let case = catalog(CaseName::E7);
        let sector = case.sectors.iter().find(|s| s.kind == SystemKind::SecondOrder).unwrap();
        let gens = twisted_monodromy(&case, sector, 60, &policy()).unwrap();
        let one = CycElem::one();
        let neg = CycElem::from_i64(-1);
        assert_eq!(gens[0], Mat2::diag(one.clone(), neg.clone()));
        assert_eq!(gens[1], Mat2::diag(neg, one));
    }

    #[test]
    fn scalar_monodromy_roots() {
        assert_eq!(scalar_monodromy(&rat(0, 1)), CycElem::one());
        assert_eq!(scalar_monodromy(&rat(1, 2)), CycElem::from_i64(-1));
        assert_eq!(scalar_monodromy(&rat(1, 6)), CycElem::root_of_unity(6, 1));
    }

    #[test]
    fn catalog_document_is_valid_json() {
        let doc = catalog_document();
        let text = serde_json::to_string_pretty(&doc).unwrap();
        let back: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(back["cases"].as_array().unwrap().len(), 3);
        assert_eq!(back["cases"][1]["covering"]["C"], "1/4");
    }
}
