//! End-to-end pipeline driver and machine-readable reporting.
//!
//! `run_case` executes catalog -> monodromy assembly -> exact recognition ->
//! closures -> certificates -> verdict and collects everything into a
//! [`Report`]; `run_hypergeom` emits the partial report for a single
//! parameter triple. JSON is the canonical machine format: stable key order,
//! exact rationals as "p/q" strings, cyclotomic elements as coordinate
//! arrays, numeric embeddings as decimal strings labeled with their digit
//! count. Two runs with identical inputs produce byte-identical JSON.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::hyperg::{
    base_monodromies, classify, verify_connection, HGParams, HgError, ResonanceKind,
};
use crate::matgroup::{GroupFingerprint, Mat2};
use crate::numcheck::{compare_invariants, sigma_base, transport_hg, transport_pf, LoopSpec};
use crate::pf::{
    self, catalog, family_match, jinv_identity_holds, singular_points, CaseName, CaseSpec,
};
use crate::scalars::{
    parse_rational, rat, rational_str, BigComplex, BigReal, CycElem, Rational, RecognitionPolicy,
};
use crate::sl2z::{self, NamedCheck, SearchParams, WordCertificate};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RunError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Hg(#[from] HgError),
}

/// Tunable knobs mirroring the CLI flags.
#[derive(Clone, Debug)]
pub struct RunOptions {
    pub denominator_bound: u64,
    pub closure_bound: usize,
    pub word_max_len: usize,
    pub ode_check: bool,
    /// Precision for the ODE cross-check (the slow path).
    pub ode_digits: u32,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            denominator_bound: 64,
            closure_bound: 10_000,
            word_max_len: 24,
            ode_check: false,
            ode_digits: 30,
        }
    }
}

/// Exact cyclotomic element with a labeled numeric embedding.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CycJson {
    pub order: u32,
    pub coords: Vec<String>,
    pub approx: ComplexJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub re: String,
    pub im: String,
    pub digits: u32,
}

pub type IntMat = [[i64; 2]; 2];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CycMatJson {
    pub rows: Vec<Vec<CycJson>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelEntryJson {
    pub target: IntMat,
    pub word: WordCertificate,
    pub word_display: String,
    pub image: CycMatJson,
    pub scalar_power: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelReportJson {
    pub d: String,
    pub level: u32,
    pub entries: Vec<KernelEntryJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SingularPointJson {
    pub phase: CycJson,
    pub approx: ComplexJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HgSection {
    pub alpha: String,
    pub beta: String,
    pub gamma: String,
    pub classification: String,
    pub lambda0: String,
    pub lambda1: String,
    pub lambda_inf: String,
    pub m0_local: CycMatJson,
    pub connection: Vec<Vec<ComplexJson>>,
    pub m0_base: Vec<Vec<ComplexJson>>,
    pub m1_base: Vec<Vec<ComplexJson>>,
    pub connection_residual_at_half: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Verdict,
    Refuted,
    ResourceLimited,
}

/// The full machine-readable record of one run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: String,
    pub kind: String,
    pub case: Option<String>,
    pub branch_m: Option<i64>,
    pub family_m: Option<i64>,
    pub precision: u32,
    pub singular_points: Vec<SingularPointJson>,
    pub invariant_generators: Vec<IntMat>,
    pub twisted_generators: BTreeMap<String, Vec<CycMatJson>>,
    pub first_order_scalars: BTreeMap<String, CycJson>,
    pub closures: BTreeMap<String, GroupFingerprint>,
    pub indices: BTreeMap<String, u64>,
    pub certificates: Vec<KernelReportJson>,
    pub generation_certificates: Vec<WordCertificate>,
    pub checks: Vec<NamedCheck>,
    pub hypergeom: Option<HgSection>,
    pub outcome: Outcome,
    pub verdict: Option<String>,
    pub first_failure: Option<String>,
}

impl Report {
    fn empty(kind: &str, precision: u32) -> Self {
        Report {
            schema_version: "1".into(),
            kind: kind.into(),
            case: None,
            branch_m: None,
            family_m: None,
            precision,
            singular_points: Vec::new(),
            invariant_generators: Vec::new(),
            twisted_generators: BTreeMap::new(),
            first_order_scalars: BTreeMap::new(),
            closures: BTreeMap::new(),
            indices: BTreeMap::new(),
            certificates: Vec::new(),
            generation_certificates: Vec::new(),
            checks: Vec::new(),
            hypergeom: None,
            outcome: Outcome::Refuted,
            verdict: None,
            first_failure: None,
        }
    }
}

const EMBED_DIGITS: u32 = 40;

fn complex_json(z: &BigComplex, digits: u32) -> ComplexJson {
    ComplexJson {
        re: z.re.to_decimal_string(digits),
        im: z.im.to_decimal_string(digits),
        digits,
    }
}

fn cyc_json(e: &CycElem) -> CycJson {
    CycJson {
        order: e.order(),
        coords: e.coords().iter().map(rational_str).collect(),
        approx: complex_json(&e.embed(EMBED_DIGITS), EMBED_DIGITS),
    }
}

fn cyc_mat_json(m: &Mat2<CycElem>) -> CycMatJson {
    CycMatJson {
        rows: vec![
            vec![cyc_json(&m.a), cyc_json(&m.b)],
            vec![cyc_json(&m.c), cyc_json(&m.d)],
        ],
    }
}

fn complex_mat_json(m: &Mat2<BigComplex>, digits: u32) -> Vec<Vec<ComplexJson>> {
    vec![
        vec![complex_json(&m.a, digits), complex_json(&m.b, digits)],
        vec![complex_json(&m.c, digits), complex_json(&m.d, digits)],
    ]
}

fn policy_for(digits: u32, denominator_bound: u64) -> RecognitionPolicy {
    RecognitionPolicy {
        field_order: 12,
        denominator_bound,
        residual_log10: 30.max(digits / 2),
        confirm_precision_factor: 2,
    }
}

fn push_check(checks: &mut Vec<NamedCheck>, name: &str, pass: bool, detail: String) {
    checks.push(NamedCheck { name: name.into(), pass, detail });
}

/// Connection-formula residual checks for the case's parameter triples.
fn connection_checks(case: &CaseSpec, digits: u32, checks: &mut Vec<NamedCheck>) {
    let half = BigComplex::from_rational(&rat(1, 2), digits + 10);
    let threshold = digits as i64 - 20;
    let mut triples: Vec<(String, HGParams)> =
        vec![("invariant".into(), case.invariant_params.clone())];
    for s in &case.sectors {
        if let Some(p) = &s.hg_params {
            triples.push((format!("d={}", rational_str(&s.d)), p.clone()));
        }
    }
    for (label, p) in triples {
        match verify_connection(&p, &half, digits) {
            Ok(resid) => {
                let pass = resid.abs_below_pow10(threshold);
                push_check(
                    checks,
                    &format!("connection_residual_{label}"),
                    pass,
                    format!(
                        "residual {} at x = 1/2 (threshold 1e-{threshold})",
                        resid.to_decimal_string(3)
                    ),
                );
            }
            Err(e) => push_check(
                checks,
                &format!("connection_residual_{label}"),
                false,
                format!("{e}"),
            ),
        }
    }
}

/// Numeric ODE cross-checks (the slow path, behind --ode-check).
fn ode_checks(case: &CaseSpec, digits: u32, checks: &mut Vec<NamedCheck>) {
    let d = digits;
    let p = &case.invariant_params;
    let base = BigComplex::from_rational(&rat(1, 2), d);
    let quarter = BigReal::from_rational(&rat(1, 4), d);
    let threshold = 10i64;
    match base_monodromies(p, d) {
        Ok(hg) => {
            for (label, center, exact) in [
                ("x1", BigComplex::one(d), &hg.m1_base),
                ("x0", BigComplex::zero(d), &hg.m0_base),
            ] {
                let lp = LoopSpec::around(&base, &center, &quarter, label);
                match transport_hg(p, &lp, d) {
                    Ok(tr) => {
                        let resid = compare_invariants(&tr, exact);
                        push_check(
                            checks,
                            &format!("ode_hg_{label}"),
                            resid.abs_below_pow10(threshold),
                            format!(
                                "invariant residual {} in {} steps",
                                resid.to_decimal_string(3),
                                tr.step_count
                            ),
                        );
                    }
                    Err(e) => {
                        push_check(checks, &format!("ode_hg_{label}"), false, format!("{e}"))
                    }
                }
            }
        }
        Err(e) => push_check(checks, "ode_hg", false, format!("{e}")),
    }
    // One Picard-Fuchs loop around p1 in the sigma plane.
    let pf_check = (|| -> Result<(BigReal, usize), crate::numcheck::NumError> {
        let sb = BigComplex::from_real(sigma_base(case, d)?);
        let pts = singular_points(&case.covering, d)?;
        let p1 = pts[0].approx.clone();
        let radius = p1.abs().div_i64(4);
        let lp = LoopSpec::around(&sb, &p1, &radius, "p1");
        let tr = transport_pf(case, &lp, d)?;
        // conjugate to the unipotent local monodromy: trace 2, det 1
        let expect = Mat2::new(
            BigComplex::from_i64(1, d),
            BigComplex::one(d),
            BigComplex::zero(d),
            BigComplex::one(d),
        );
        Ok((compare_invariants(&tr, &expect), tr.step_count))
    })();
    match pf_check {
        Ok((resid, steps)) => push_check(
            checks,
            "ode_pf_p1",
            resid.abs_below_pow10(threshold),
            format!("invariant residual {} in {steps} steps", resid.to_decimal_string(3)),
        ),
        Err(e) => push_check(checks, "ode_pf_p1", false, format!("{e}")),
    }
}

/// Executes the full certification pipeline for one case.
pub fn run_case(name: CaseName, m: i64, digits: u32, opts: &RunOptions) -> Report {
    let mut report = Report::empty("case", digits);
    report.case = Some(name.to_string());
    report.branch_m = Some(m);
    let case = catalog(name);
    let mut checks: Vec<NamedCheck> = Vec::new();

    push_check(
        &mut checks,
        "jinv_identity",
        jinv_identity_holds(&case),
        "j(s) (1 - C s^l)^N = P(s) as polynomials".into(),
    );
    push_check(
        &mut checks,
        "resonance_consistent",
        pf::invariant_resonance_consistent(&case),
        "invariant parameters resonant with l = covering degree".into(),
    );
    if let Ok(pts) = singular_points(&case.covering, EMBED_DIGITS) {
        report.singular_points = pts
            .iter()
            .map(|p| SingularPointJson {
                phase: cyc_json(&p.phase),
                approx: complex_json(&p.approx, EMBED_DIGITS),
            })
            .collect();
    }

    let policy = policy_for(digits, opts.denominator_bound);
    let rep = match pf::build_rep(&case, m, digits, &policy) {
        Ok(rep) => rep,
        Err(e) => {
            push_check(&mut checks, "recognition", false, format!("{e}"));
            report.checks = checks;
            report.outcome = match &e {
                pf::PfError::Recognition { .. } => Outcome::ResourceLimited,
                _ => Outcome::Refuted,
            };
            report.first_failure = Some("recognition".into());
            return report;
        }
    };
    push_check(&mut checks, "recognition", true, "all generators recognized exactly".into());

    report.invariant_generators = rep.invariant_gens.iter().map(|g| g.to_rows()).collect();
    report.twisted_generators = rep
        .twisted_gens
        .iter()
        .map(|(d, gens)| (rational_str(d), gens.iter().map(cyc_mat_json).collect()))
        .collect();
    report.first_order_scalars = rep
        .first_order_scalars
        .iter()
        .map(|(deg, s)| (rational_str(deg), cyc_json(s)))
        .collect();

    let fam = family_match(name, &rep.invariant_gens);
    report.family_m = fam;
    push_check(
        &mut checks,
        "family_match",
        fam.is_some(),
        format!("matches the displayed m-family at m = {:?}", fam),
    );

    connection_checks(&case, digits, &mut checks);

    if name == CaseName::E8 {
        push_check(
            &mut checks,
            "intertwiner",
            pf::check_intertwiner(&rep),
            "M_{i,2/3}^-1 = S^-1 M_{pi(i),1/3} S with S = diag(-4/3, 1)".into(),
        );
    }

    let params = SearchParams {
        max_len: opts.word_max_len,
        entry_bound: 1_000_000,
        frontier_cap: 4_000_000,
    };
    let verdict = sl2z::final_verdict(&rep, opts.closure_bound, &params);
    checks.extend(verdict.checks.clone());

    report.closures = verdict
        .closures
        .iter()
        .map(|(d, fp)| (rational_str(d), fp.clone()))
        .collect();
    report.certificates = verdict
        .kernel_reports
        .iter()
        .map(|kr| KernelReportJson {
            d: rational_str(&kr.d),
            level: kr.level,
            entries: kr
                .entries
                .iter()
                .map(|e| KernelEntryJson {
                    target: e.target.to_rows(),
                    word: e.word.clone(),
                    word_display: e.word.display(),
                    image: cyc_mat_json(&e.image),
                    scalar_power: e.scalar_power,
                })
                .collect(),
        })
        .collect();
    report.generation_certificates = verdict.generation_certificates.clone();
    report.indices = [2u32, 3, 4, 6]
        .into_iter()
        .map(|n| (format!("Gamma({n})"), sl2z::gamma_index(n)))
        .collect();

    if opts.ode_check {
        ode_checks(&case, opts.ode_digits, &mut checks);
    }

    let first_failure = checks.iter().find(|c| !c.pass).map(|c| c.name.clone());
    let resource = checks.iter().any(|c| {
        !c.pass
            && (c.detail.contains("no word within")
                || c.detail.contains("frontier exceeded")
                || c.detail.contains("closure bound"))
    });
    report.first_failure = first_failure.clone();
    if first_failure.is_none() {
        report.outcome = Outcome::Verdict;
        report.verdict = verdict.gamma_level.map(|n| format!("Gamma({n})"));
    } else if resource {
        report.outcome = Outcome::ResourceLimited;
    } else {
        report.outcome = Outcome::Refuted;
    }
    report.checks = checks;
    report
}

/// Partial report for one hypergeometric parameter triple: classification,
/// local and base monodromies, connection residual at x = 1/2, and the ODE
/// cross-check when requested.
pub fn run_hypergeom(
    alpha: &Rational,
    beta: &Rational,
    gamma: &Rational,
    digits: u32,
    ode_check: bool,
) -> Result<Report, RunError> {
    let p = HGParams::new(alpha.clone(), beta.clone(), gamma.clone())
        .map_err(|e| RunError::InvalidParams(e.to_string()))?;
    let class = classify(&p);
    if class.kind == ResonanceKind::Unsupported {
        return Err(RunError::InvalidParams(
            "parameters are neither resonant nor non-resonant".into(),
        ));
    }
    let mut report = Report::empty("hypergeom", digits);
    let mut checks = Vec::new();
    let hg = base_monodromies(&p, digits)?;
    let half = BigComplex::from_rational(&rat(1, 2), digits + 10);
    let resid = verify_connection(&p, &half, digits)?;
    let threshold = digits as i64 - 20;
    push_check(
        &mut checks,
        "connection_residual",
        resid.abs_below_pow10(threshold),
        format!("residual {} at x = 1/2", resid.to_decimal_string(3)),
    );
    if ode_check {
        let base = BigComplex::from_rational(&rat(1, 2), 30);
        let quarter = BigReal::from_rational(&rat(1, 4), 30);
        let hg30 = base_monodromies(&p, 30)?;
        for (label, center, exact) in [
            ("x1", BigComplex::one(30), &hg30.m1_base),
            ("x0", BigComplex::zero(30), &hg30.m0_base),
        ] {
            let lp = LoopSpec::around(&base, &center, &quarter, label);
            match transport_hg(&p, &lp, 30) {
                Ok(tr) => {
                    let r = compare_invariants(&tr, exact);
                    push_check(
                        &mut checks,
                        &format!("ode_hg_{label}"),
                        r.abs_below_pow10(10),
                        format!("invariant residual {}", r.to_decimal_string(3)),
                    );
                }
                Err(e) => {
                    push_check(&mut checks, &format!("ode_hg_{label}"), false, format!("{e}"))
                }
            }
        }
    }
    let kind_str = match class.kind {
        ResonanceKind::Resonant { l } => format!("resonant l={l}"),
        ResonanceKind::NonResonant => "nonresonant".into(),
        ResonanceKind::Unsupported => unreachable!(),
    };
    report.hypergeom = Some(HgSection {
        alpha: rational_str(&p.alpha),
        beta: rational_str(&p.beta),
        gamma: rational_str(&p.gamma),
        classification: kind_str,
        lambda0: rational_str(&class.lambda0),
        lambda1: rational_str(&class.lambda1),
        lambda_inf: rational_str(&class.lambda_inf),
        m0_local: cyc_mat_json(&hg.m0_local),
        connection: complex_mat_json(&hg.connection, EMBED_DIGITS),
        m0_base: complex_mat_json(&hg.m0_base, EMBED_DIGITS),
        m1_base: complex_mat_json(&hg.m1_base, EMBED_DIGITS),
        connection_residual_at_half: resid.to_decimal_string(6),
    });
    let first_failure = checks.iter().find(|c| !c.pass).map(|c| c.name.clone());
    report.first_failure = first_failure.clone();
    report.outcome = if first_failure.is_none() { Outcome::Verdict } else { Outcome::Refuted };
    report.checks = checks;
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            other => Err(format!("unknown format: {other}")),
        }
    }
}

/// Renders the report; JSON is canonical and round-trips.
pub fn emit(report: &Report, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("report serializes"),
        Format::Text => render_text(report),
    }
}

fn render_mat(m: &IntMat) -> String {
    format!("[[{}, {}], [{}, {}]]", m[0][0], m[0][1], m[1][0], m[1][1])
}

fn render_text(r: &Report) -> String {
    let mut out = String::new();
    use std::fmt::Write;
    let _ = writeln!(out, "gammaw report (schema {})", r.schema_version);
    if let Some(case) = &r.case {
        let _ = writeln!(
            out,
            "case {case}  branch m = {}  family m = {}  precision {} digits",
            r.branch_m.unwrap_or(0),
            r.family_m.map_or("-".to_string(), |v| v.to_string()),
            r.precision
        );
        let _ = writeln!(out, "invariant generators:");
        for (i, g) in r.invariant_generators.iter().enumerate() {
            let _ = writeln!(out, "  M_{},0 = {}", i + 1, render_mat(g));
        }
        for (d, gens) in &r.twisted_generators {
            let _ = writeln!(out, "twisted sector d = {d}:");
            for (i, g) in gens.iter().enumerate() {
                let entries: Vec<String> = g
                    .rows
                    .iter()
                    .flatten()
                    .map(|e| {
                        if e.order == 1 {
                            e.coords[0].clone()
                        } else {
                            format!("Q(zeta{}): [{}]", e.order, e.coords.join(", "))
                        }
                    })
                    .collect();
                let _ = writeln!(
                    out,
                    "  M_{},{} = [[{}, {}], [{}, {}]]",
                    i + 1,
                    d,
                    entries[0],
                    entries[1],
                    entries[2],
                    entries[3]
                );
            }
        }
        for (d, fp) in &r.closures {
            let _ = writeln!(
                out,
                "closure d = {d}: order {}{}{}",
                fp.order,
                if fp.abelian { ", abelian" } else { "" },
                fp.name.as_ref().map_or(String::new(), |n| format!(" ({n})")),
            );
        }
        for kr in &r.certificates {
            let _ = writeln!(out, "kernel certificates d = {} (Gamma({})):", kr.d, kr.level);
            for e in &kr.entries {
                let _ = writeln!(
                    out,
                    "  {} = {}  -> scalar power {}",
                    render_mat(&e.target),
                    e.word_display,
                    e.scalar_power
                );
            }
        }
    }
    if let Some(h) = &r.hypergeom {
        let _ = writeln!(
            out,
            "hypergeometric ({}, {}, {}): {}",
            h.alpha, h.beta, h.gamma, h.classification
        );
        let _ = writeln!(
            out,
            "exponents: lambda0 = {}, lambda1 = {}, lambda_inf = {}",
            h.lambda0, h.lambda1, h.lambda_inf
        );
        let _ = writeln!(out, "connection residual at 1/2: {}", h.connection_residual_at_half);
    }
    let _ = writeln!(out, "checks:");
    for c in &r.checks {
        let _ = writeln!(
            out,
            "  [{}] {}: {}",
            if c.pass { "pass" } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    match (&r.verdict, &r.first_failure) {
        (Some(v), _) => {
            let _ = writeln!(out, "verdict: {v}");
        }
        (None, Some(f)) => {
            let _ = writeln!(out, "verdict: none (first failing check: {f})");
        }
        (None, None) => {
            let _ = writeln!(out, "verdict: none");
        }
    }
    out
}

/// Parses "a b c" (rationals) as hypergeometric parameters.
pub fn parse_triple(s: &str) -> Result<(Rational, Rational, Rational), RunError> {
    let parts: Vec<&str> = s.split_whitespace().collect();
    if parts.len() != 3 {
        return Err(RunError::InvalidParams(format!(
            "expected three rationals \"a b c\", got {s:?}"
        )));
    }
    let mut vals = parts
        .iter()
        .map(|p| parse_rational(p).map_err(|e| RunError::InvalidParams(e.to_string())));
    Ok((
        vals.next().unwrap()?,
        vals.next().unwrap()?,
        vals.next().unwrap()?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hypergeom_partial_report() {
        let r = run_hypergeom(&rat(1, 3), &rat(1, 3), &rat(2, 3), 60, false).unwrap();
        let h = r.hypergeom.as_ref().unwrap();
        assert_eq!(h.classification, "resonant l=3");
        assert!(r.checks.iter().all(|c| c.pass));
        assert_eq!(r.verdict, None);
        // json round-trips to an equal report
        let js = emit(&r, Format::Json);
        let back: Report = serde_json::from_str(&js).unwrap();
        assert_eq!(back, r);
        // and the exponents of the E8 first twisted system are exact rationals
        let r2 = run_hypergeom(&rat(1, 4), &rat(3, 4), &rat(2, 3), 60, false).unwrap();
        let h2 = r2.hypergeom.unwrap();
        assert_eq!(h2.classification, "nonresonant");
        assert_eq!(h2.lambda0, "1/3");
        assert_eq!(h2.lambda1, "-1/3");
        assert_eq!(h2.lambda_inf, "1/2");
    }

    #[test]
    fn hypergeom_rejects_invalid() {
        assert!(run_hypergeom(&rat(1, 2), &rat(1, 2), &rat(1, 1), 60, false).is_err());
        assert!(parse_triple("1/3 1/3").is_err());
        assert!(parse_triple("a b c").is_err());
    }

    #[test]
    fn json_is_deterministic() {
        let r1 = run_hypergeom(&rat(3, 4), &rat(1, 4), &rat(1, 2), 50, false).unwrap();
        let r2 = run_hypergeom(&rat(3, 4), &rat(1, 4), &rat(1, 2), 50, false).unwrap();
        assert_eq!(emit(&r1, Format::Json), emit(&r2, Format::Json));
    }
}
