//! The analysis pipeline and its report.
//!
//! Every polynomial and linear form is rendered to text in the report, so the
//! machine format is plain JSON that round-trips through [`parse_machine`].

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cli::spec::{GroupSpecFile, SpecError};
use crate::group::{self, Group, GroupElement, GroupError};
use crate::invariants::{self, GeneratorSet, InvariantError};
use crate::ramification::{self, DifferentCertificate, RamificationError, DEFAULT_ENUMERATION_CAP};

pub const SCHEMA: &str = "transvect.report.v1";

#[derive(Debug, Error)]
pub enum AnalyzeError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

impl AnalyzeError {
    pub fn is_cap(&self) -> bool {
        matches!(self, AnalyzeError::Group(GroupError::OrderCap { .. }))
    }
}

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    pub degree_cap: Option<u32>,
    pub order_cap: Option<usize>,
    /// Words for an explicit G', overriding the spec file.
    pub gprime: Option<Vec<String>>,
    pub full_field: bool,
    pub enumeration_cap: u64,
    /// Run the linear orbit-witness search on the focus stage.
    pub orbit_witness: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            degree_cap: None,
            order_cap: None,
            gprime: None,
            full_field: false,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            orbit_witness: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: String,
    pub field: FieldInfo,
    pub variables: Vec<String>,
    pub group: GroupInfo,
    pub series: Option<SeriesInfo>,
    pub series_error: Option<String>,
    pub stages: Vec<StageReport>,
    /// Some computation stopped at a cap; affected entries say so.
    pub uncertified: bool,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldInfo {
    pub p: u32,
    pub k: usize,
    pub modulus: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupInfo {
    pub order: usize,
    pub generators: Vec<GeneratorInfo>,
    pub beta: Option<usize>,
    pub transvection_generated: bool,
    pub pseudo_reflections: Vec<PseudoReflectionInfo>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorInfo {
    pub name: String,
    pub action: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PseudoReflectionInfo {
    pub element: String,
    pub beta: usize,
    pub line: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesInfo {
    pub orders: Vec<usize>,
    pub betas: Vec<usize>,
    pub witnesses: Vec<String>,
    pub validated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorReport {
    pub degrees: Vec<u32>,
    pub generators: Vec<String>,
    pub certified: bool,
    pub quotient_dimension: Option<u64>,
    pub exhausted: bool,
    pub not_polynomial: bool,
}

impl From<&GeneratorSet> for GeneratorReport {
    fn from(g: &GeneratorSet) -> Self {
        GeneratorReport {
            degrees: g.degrees.clone(),
            generators: g.gens.iter().map(ToString::to_string).collect(),
            certified: g.certified_complete,
            quotient_dimension: g.quotient_dimension,
            exhausted: g.exhausted,
            not_polynomial: g.not_polynomial,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub display: String,
    pub factors: Vec<(String, u32)>,
    pub degree: u64,
    pub expanded: String,
}

impl CertificateReport {
    fn new(c: &DifferentCertificate, ring: &std::sync::Arc<crate::poly::Ring>) -> Self {
        CertificateReport {
            display: c.to_string(),
            factors: c.factors.iter().map(|(l, e)| (l.to_string(), *e)).collect(),
            degree: c.degree(),
            expanded: c.expand(ring).to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferentsReport {
    pub s_over_r: CertificateReport,
    pub s_over_a: CertificateReport,
    pub a_over_r: CertificateReport,
    pub g_invariant: bool,
    pub support_matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ramif1Info {
    pub s_over_r: Vec<String>,
    pub s_over_a_over_r: Vec<String>,
    pub a_over_r_generators: Vec<String>,
    pub a_over_r_invariant: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitInfo {
    pub is_split: bool,
    pub d_min: u32,
    pub witness: String,
    pub deg_different: u64,
    pub witness_trace: String,
    pub scalar: Option<String>,
    /// `less`, `equal` or `greater`: deg Δ against (p-1) d_min.
    pub relation: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialInfo {
    pub product_form: String,
    pub ppoly_form: String,
    pub sigma_used: String,
    pub variable: String,
    pub h_order: usize,
    pub agrees_with_division: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitWitnessInfo {
    pub none_exists: bool,
    pub witness: Option<String>,
    pub coefficient_field_degree: usize,
    pub rejected_by_orbit_size: u64,
    pub trace_tests: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageReport {
    pub label: String,
    pub order: usize,
    pub gprime_order: usize,
    pub sigma: String,
    pub beta_sigma: Option<usize>,
    pub beta_gprime: Option<usize>,
    pub r_generators: GeneratorReport,
    pub a_generators: GeneratorReport,
    pub differents: Option<DifferentsReport>,
    pub ramif1: Option<Ramif1Info>,
    pub split: Option<SplitInfo>,
    pub special: Option<SpecialInfo>,
    pub orbit_witness: Option<OrbitWitnessInfo>,
    /// Steps that could not run, with the reason.
    pub notes: Vec<String>,
    pub uncertified: bool,
}

fn ordering_name(o: std::cmp::Ordering) -> &'static str {
    match o {
        std::cmp::Ordering::Less => "less",
        std::cmp::Ordering::Equal => "equal",
        std::cmp::Ordering::Greater => "greater",
    }
}

fn is_cap_error(e: &RamificationError) -> bool {
    matches!(
        e,
        RamificationError::EnumerationCap { .. }
            | RamificationError::Invariant(InvariantError::DegreeCap { .. })
            | RamificationError::Invariant(InvariantError::Uncertified { .. })
    )
}

/// Coset generator: the pseudo-reflection outside G' with the largest β, else any generator outside G'.
pub fn choose_sigma(g: &Group, gprime: &Group) -> Option<GroupElement> {
    let mut best: Option<&group::TransvectionInfo> = None;
    for t in g.pseudo_reflections() {
        if !gprime.contains(&t.element) && best.is_none_or(|b| t.beta > b.beta) {
            best = Some(t);
        }
    }
    best.map(|t| t.element.clone())
        .or_else(|| g.generators().iter().find(|e| !gprime.contains(e)).cloned())
        .or_else(|| g.elements().iter().find(|e| !gprime.contains(e)).cloned())
}

/// Everything computable for `S^G ⊂ S^{G'}`.
pub fn analyze_stage(
    label: &str,
    g: &Group,
    gprime: &Group,
    sigma: Option<&GroupElement>,
    opts: &AnalyzeOptions,
    orbit_witness: bool,
) -> StageReport {
    let ring = g.ring();
    let mut notes = Vec::new();
    let mut uncertified = false;
    let budget = |grp: &Group| opts.degree_cap.unwrap_or(grp.order() as u32);
    let r = invariants::minimal_generators(g, Some(budget(g)));
    let a = invariants::minimal_generators(gprime, Some(budget(gprime)));
    uncertified |= r.exhausted || a.exhausted;
    fn note(notes: &mut Vec<String>, what: &str, e: RamificationError, unc: &mut bool) {
        *unc |= is_cap_error(&e);
        notes.push(format!("{what}: {e}"));
    }
    let sigma = sigma.cloned().or_else(|| choose_sigma(g, gprime));
    let differents = match ramification::different_a_over_r(g, gprime) {
        Ok(q) => Some(q),
        Err(e) => {
            note(&mut notes, "differents", e, &mut uncertified);
            None
        }
    };
    let ramif1 = gprime.is_normal_in(g).then(|| ramification::ramif1(g, gprime));
    let mut split = None;
    let mut special = None;
    let mut orbit = None;
    if let Some(sigma) = &sigma {
        match ramification::split_test(g, gprime, sigma, opts.degree_cap) {
            Ok(v) => split = Some(v),
            Err(e) => note(&mut notes, "split test", e, &mut uncertified),
        }
        if sigma.beta().unwrap_or(0) > gprime.beta_or_zero() {
            match ramification::different_special_formulas(g, gprime, sigma) {
                Ok(s) => special = Some(s),
                Err(e) => note(&mut notes, "special formulas", e, &mut uncertified),
            }
        } else {
            notes.push("special formulas: beta_sigma does not exceed beta_G'".into());
        }
        if orbit_witness && g.order() == gprime.order() * ring.field().characteristic() as usize {
            match ramification::no_linear_orbit_witness(g, gprime, sigma, opts.full_field, opts.enumeration_cap) {
                Ok(o) => orbit = Some(o),
                Err(e) => note(&mut notes, "orbit witness", e, &mut uncertified),
            }
        }
    } else {
        notes.push("G' equals G: no coset generator".into());
    }
    let a_over_r = differents.as_ref().map(|q| q.a_over_r.expand(ring));
    StageReport {
        label: label.to_string(),
        order: g.order(),
        gprime_order: gprime.order(),
        sigma: sigma.as_ref().map_or_else(|| "-".into(), ToString::to_string),
        beta_sigma: sigma.as_ref().and_then(GroupElement::beta),
        beta_gprime: gprime.beta().ok(),
        r_generators: (&r).into(),
        a_generators: (&a).into(),
        differents: differents.as_ref().map(|q| DifferentsReport {
            s_over_r: CertificateReport::new(&q.s_over_r, ring),
            s_over_a: CertificateReport::new(&q.s_over_a, ring),
            a_over_r: CertificateReport::new(&q.a_over_r, ring),
            g_invariant: q.g_invariant,
            support_matches: q.support_matches,
        }),
        ramif1: ramif1.map(|r| Ramif1Info {
            s_over_r: r.s_over_r.iter().map(ToString::to_string).collect(),
            s_over_a_over_r: r.s_over_a_over_r.iter().map(ToString::to_string).collect(),
            a_over_r_generators: r.a_over_r_generators.iter().map(ToString::to_string).collect(),
            a_over_r_invariant: r.a_over_r_invariant,
        }),
        split: split.map(|v| SplitInfo {
            is_split: v.is_split,
            d_min: v.d_min,
            witness: v.witness.to_string(),
            deg_different: v.deg_different,
            witness_trace: v.witness_trace.to_string(),
            scalar: v.scalar.map(|c| ring.field().format(c)),
            relation: ordering_name(v.relation).into(),
        }),
        special: special.map(|s| SpecialInfo {
            agrees_with_division: a_over_r.as_ref().is_some_and(|d| s.ppoly_form.proportional(d)),
            product_form: s.product_form.to_string(),
            ppoly_form: s.ppoly_form.to_string(),
            sigma_used: s.sigma_used.to_string(),
            variable: ring.name(s.var).to_string(),
            h_order: s.h_order,
        }),
        orbit_witness: orbit.map(|o| OrbitWitnessInfo {
            none_exists: o.none_exists,
            witness: o.witness.map(|w| w.to_string()),
            coefficient_field_degree: o.coefficient_degree,
            rejected_by_orbit_size: o.rejected_by_orbit_size,
            trace_tests: o.trace_tests,
        }),
        notes,
        uncertified,
    }
}

/// Full pipeline: enumerate, composition series, one stage per series step,
/// plus a stage for an explicit G' when one is given.
pub fn analyze(spec: &GroupSpecFile, opts: &AnalyzeOptions) -> Result<AnalysisReport, AnalyzeError> {
    let ring = &spec.ring;
    let mut spec = spec.clone();
    if let Some(cap) = opts.order_cap {
        spec.options.order_cap = Some(cap);
    }
    let mut opts = opts.clone();
    if opts.degree_cap.is_none() {
        opts.degree_cap = spec.options.degree_cap;
    }
    opts.full_field |= spec.options.full_field;
    let g = spec.group()?;
    let gprime_words = opts.gprime.clone().or_else(|| spec.options.gprime.clone());
    let explicit = match &gprime_words {
        Some(words) => {
            let gens = spec.words(words)?;
            Some(g.subgroup(gens)?)
        }
        None => None,
    };
    let sigma_word = match &spec.options.sigma {
        Some(w) => Some(spec.word(w)?),
        None => None,
    };
    let mut warnings = Vec::new();
    let (series, series_error) = match group::composition_series(&g) {
        Ok(s) => (Some(s), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let mut stages = Vec::new();
    if let Some(s) = &series {
        let k = s.len();
        for i in 1..=k {
            let focus = explicit.is_none() && i == k;
            let stage = analyze_stage(
                &format!("G_{} < G_{}", i - 1, i),
                &s.chain[i],
                &s.chain[i - 1],
                Some(&s.witnesses[i - 1].element),
                &opts,
                focus && opts.orbit_witness,
            );
            stages.push(stage);
        }
    }
    if let Some(gp) = &explicit {
        if !gp.is_normal_in(&g) {
            warnings.push("explicit G' is not normal in G".into());
        }
        let sigma = sigma_word.filter(|s| g.contains(s) && !gp.contains(s));
        stages.push(analyze_stage("explicit G' < G", &g, gp, sigma.as_ref(), &opts, opts.orbit_witness));
    }
    let uncertified = stages.iter().any(|s| s.uncertified);
    if uncertified {
        warnings.push("some results are UNCERTIFIED: a degree or enumeration cap was reached".into());
    }
    let field = ring.field();
    Ok(AnalysisReport {
        schema: SCHEMA.into(),
        field: FieldInfo { p: field.characteristic(), k: field.degree(), modulus: field.spec().modulus.clone() },
        variables: ring.names().to_vec(),
        group: GroupInfo {
            order: g.order(),
            generators: spec
                .generators
                .iter()
                .map(|n| GeneratorInfo { name: n.name.clone(), action: n.element.to_string() })
                .collect(),
            beta: g.beta().ok(),
            transvection_generated: g.is_transvection_generated(),
            pseudo_reflections: g
                .pseudo_reflections()
                .iter()
                .map(|t| PseudoReflectionInfo {
                    element: t.element.to_string(),
                    beta: t.beta,
                    line: t.line.to_string(),
                })
                .collect(),
        },
        series: series.as_ref().map(|s| SeriesInfo {
            orders: s.chain.iter().map(Group::order).collect(),
            betas: s.betas(),
            witnesses: s.witnesses.iter().map(|w| w.element.to_string()).collect(),
            validated: group::validate_series(&g, s).is_ok(),
        }),
        series_error,
        stages,
        uncertified,
        warnings,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Human,
    Machine,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "human" => Ok(Format::Human),
            "machine" => Ok(Format::Machine),
            _ => Err(format!("unknown format `{s}` (expected human or machine)")),
        }
    }
}

pub fn emit(report: &AnalysisReport, format: Format) -> String {
    match format {
        Format::Machine => serde_json::to_string_pretty(report).expect("report serializes") + "\n",
        Format::Human => emit_human(report),
    }
}

pub fn parse_machine(text: &str) -> Result<AnalysisReport, serde_json::Error> {
    serde_json::from_str(text)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn generators_block(out: &mut String, title: &str, g: &GeneratorReport) {
    let status = if g.certified {
        format!("certified, quotient dimension {}", g.quotient_dimension.unwrap_or(0))
    } else if g.exhausted {
        "UNCERTIFIED: degree budget exhausted".to_string()
    } else {
        "not a polynomial ring; generators shown up to the stopping degree".to_string()
    };
    let degs: Vec<String> = g.degrees.iter().map(ToString::to_string).collect();
    let _ = writeln!(out, "{title} generators  degrees {{{}}}  ({status})", degs.join(", "));
    for (d, f) in g.degrees.iter().zip(&g.generators) {
        let _ = writeln!(out, "  {d:>3}  {f}");
    }
}

pub fn emit_stage(out: &mut String, s: &StageReport) {
    let _ = writeln!(out, "== stage {}: |G| = {}, |G'| = {}", s.label, s.order, s.gprime_order);
    let opt = |b: Option<usize>| b.map_or("-".to_string(), |x| x.to_string());
    let _ = writeln!(out, "sigma = {}  (beta_sigma {}, beta_G' {})", s.sigma, opt(s.beta_sigma), opt(s.beta_gprime));
    if s.uncertified {
        let _ = writeln!(out, "!! UNCERTIFIED stage: a cap was reached");
    }
    generators_block(out, "R", &s.r_generators);
    generators_block(out, "A", &s.a_generators);
    if let Some(d) = &s.differents {
        let _ = writeln!(out, "Delta(S/R) = {}", d.s_over_r.display);
        let _ = writeln!(out, "Delta(S/A) = {}", d.s_over_a.display);
        let _ = writeln!(out, "Delta(A/R) = {}", d.a_over_r.display);
        let _ = writeln!(out, "  expanded      {}", d.a_over_r.expanded);
        let _ = writeln!(out, "  G-invariant   {}", yes(d.g_invariant));
        let _ = writeln!(out, "  support ok    {}", yes(d.support_matches));
    }
    if let Some(r) = &s.ramif1 {
        let _ = writeln!(out, "Ramif1(S/R)    {{{}}}", r.s_over_r.join(", "));
        let _ = writeln!(out, "Ramif1(S/A/R)  {{{}}}", r.s_over_a_over_r.join(", "));
        for (q, inv) in r.a_over_r_generators.iter().zip(&r.a_over_r_invariant) {
            let _ = writeln!(out, "  A/R prime     {q}  (G-invariant: {})", yes(*inv));
        }
    }
    if let Some(v) = &s.split {
        let _ = writeln!(
            out,
            "split          {}  (deg Delta {} {} (p-1) d_min, d_min {})",
            yes(v.is_split),
            v.deg_different,
            match v.relation.as_str() {
                "less" => "<",
                "equal" => "=",
                _ => ">",
            },
            v.d_min
        );
        let _ = writeln!(out, "  witness a     {}", v.witness);
        let _ = writeln!(out, "  Trace(a^(p-1)) = {}", v.witness_trace);
        if let Some(c) = &v.scalar {
            let _ = writeln!(out, "  lambda        {c}");
        }
    }
    if let Some(sp) = &s.special {
        let _ = writeln!(
            out,
            "closed forms   {}  |  ((sigma-1) Pi_H {})^(p-1) = {}",
            sp.product_form, sp.variable, sp.ppoly_form
        );
        let _ = writeln!(out, "  |H| = {}, agrees with division route: {}", sp.h_order, yes(sp.agrees_with_division));
    }
    if let Some(o) = &s.orbit_witness {
        match &o.witness {
            Some(w) => {
                let _ = writeln!(out, "orbit witness  s = {w}");
            }
            None => {
                let _ = writeln!(
                    out,
                    "orbit witness  none over GF(p^{}) ({} orbit classes rejected by size, {} trace tests)",
                    o.coefficient_field_degree, o.rejected_by_orbit_size, o.trace_tests
                );
            }
        }
    }
    for n in &s.notes {
        let _ = writeln!(out, "note: {n}");
    }
}

fn emit_human(r: &AnalysisReport) -> String {
    let mut out = String::new();
    if r.uncertified {
        let _ = writeln!(out, "WARNING: UNCERTIFIED results present (cap reached); see stage markers");
    }
    let _ = writeln!(out, "report {}", r.schema);
    let modulus: Vec<String> = r.field.modulus.iter().map(ToString::to_string).collect();
    let _ = writeln!(out, "field          GF({}^{})  modulus [{}]", r.field.p, r.field.k, modulus.join(", "));
    let _ = writeln!(out, "variables      {}", r.variables.join(", "));
    let beta = r.group.beta.map_or("-".into(), |b| b.to_string());
    let _ = writeln!(
        out,
        "group          order {}, beta {}, transvection-generated {}",
        r.group.order,
        beta,
        yes(r.group.transvection_generated)
    );
    for g in &r.group.generators {
        let _ = writeln!(out, "  {:<8} {}", g.name, g.action);
    }
    let _ = writeln!(out, "pseudo-reflections ({})", r.group.pseudo_reflections.len());
    let _ = writeln!(out, "  {:>4}  {:<24}  element", "beta", "line");
    for t in &r.group.pseudo_reflections {
        let _ = writeln!(out, "  {:>4}  {:<24}  {}", t.beta, t.line, t.element);
    }
    match (&r.series, &r.series_error) {
        (Some(s), _) => {
            let orders: Vec<String> = s.orders.iter().map(ToString::to_string).collect();
            let betas: Vec<String> = s.betas.iter().map(ToString::to_string).collect();
            let _ = writeln!(
                out,
                "series         orders {}  betas ({})  validated {}",
                orders.join(" < "),
                betas.join(", "),
                yes(s.validated)
            );
            for (i, w) in s.witnesses.iter().enumerate() {
                let _ = writeln!(out, "  G_{} = <G_{}, {}>", i + 1, i, w);
            }
        }
        (None, Some(e)) => {
            let _ = writeln!(out, "series         unavailable: {e}");
        }
        _ => {}
    }
    for w in &r.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    for s in &r.stages {
        out.push('\n');
        emit_stage(&mut out, s);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::spec::parse_spec;

    const SW: &str = include_str!("../../fixtures/shank_wehlau.spec");

    #[test]
    fn shank_wehlau_report() {
        let spec = parse_spec(SW).unwrap();
        let r = analyze(&spec, &AnalyzeOptions::default()).unwrap();
        let text = emit(&r, Format::Human);
        assert!(text.lines().any(|l| l == "Delta(A/R) = (x3)^1"), "{text}");
        let explicit = r.stages.last().unwrap();
        let v = explicit.split.as_ref().unwrap();
        assert!(v.is_split);
        assert_eq!(v.witness_trace, "x3");
        assert_eq!(explicit.orbit_witness.as_ref().unwrap().witness.as_deref(), Some("x4"));
        assert!(!r.uncertified);
    }

    #[test]
    fn machine_round_trip_and_determinism() {
        let spec = parse_spec(SW).unwrap();
        let a = emit(&analyze(&spec, &AnalyzeOptions::default()).unwrap(), Format::Machine);
        let b = emit(&analyze(&spec, &AnalyzeOptions::default()).unwrap(), Format::Machine);
        assert_eq!(a, b);
        let back = parse_machine(&a).unwrap();
        assert_eq!(emit(&back, Format::Machine), a);
    }

    #[test]
    fn trivial_group_report() {
        let spec = parse_spec(include_str!("../../fixtures/trivial.spec")).unwrap();
        let r = analyze(&spec, &AnalyzeOptions::default()).unwrap();
        assert_eq!(r.group.order, 1);
        assert!(r.stages.is_empty());
        assert_eq!(r.series.as_ref().unwrap().orders, vec![1]);
    }

    #[test]
    fn degree_cap_marks_uncertified() {
        let spec = parse_spec(SW).unwrap();
        let opts = AnalyzeOptions { degree_cap: Some(1), ..Default::default() };
        let r = analyze(&spec, &opts).unwrap();
        assert!(r.uncertified);
        assert!(emit(&r, Format::Human).starts_with("WARNING: UNCERTIFIED"));
    }
}
