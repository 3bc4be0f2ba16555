//! Inertia and decomposition groups of linear primes, Dedekind differents as
//! factored certificates, ramification loci and the direct-summand test for an
//! index-p step `R = S^G ⊂ A = S^{G'}`.
//!
//! Certificates are defined up to a nonzero scalar: every factor is a
//! pivot-monic linear form and no overall scalar is kept.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::field::Fe;
use crate::group::{Group, GroupElement, GroupError};
use crate::invariants::{self, InvariantError};
use crate::poly::{LinearForm, Poly, PolyError};

pub const DEFAULT_ENUMERATION_CAP: u64 = 2_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RamificationError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("G' is not a normal subgroup of G")]
    NotNormal,
    #[error("negative exponent for {line} in the quotient different")]
    NegativeExponent { line: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal mismatch: {0}")]
    Mismatch(String),
    #[error("orbit-witness search needs {needed} candidates, above the cap {cap}")]
    EnumerationCap { needed: u64, cap: u64 },
}

/// `Π l^e` over pairwise non-proportional pivot-monic forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferentCertificate {
    pub tag: String,
    pub factors: Vec<(LinearForm, u32)>,
}

impl DifferentCertificate {
    pub fn new(tag: &str, factors: impl IntoIterator<Item = (LinearForm, u32)>) -> DifferentCertificate {
        let mut merged: BTreeMap<LinearForm, u32> = BTreeMap::new();
        for (l, e) in factors {
            if e > 0 {
                *merged.entry(l.normalize()).or_default() += e;
            }
        }
        DifferentCertificate { tag: tag.to_string(), factors: merged.into_iter().collect() }
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.factors.iter().map(|(_, e)| *e as u64).sum()
    }

    pub fn exponent_of(&self, l: &LinearForm) -> u32 {
        let l = l.normalize();
        self.factors.iter().find(|(m, _)| *m == l).map_or(0, |(_, e)| *e)
    }

    pub fn support(&self) -> Vec<LinearForm> {
        self.factors.iter().map(|(l, _)| l.clone()).collect()
    }

    pub fn expand(&self, ring: &std::sync::Arc<crate::poly::Ring>) -> Poly {
        self.factors.iter().fold(Poly::one(ring), |acc, (l, e)| &acc * &l.to_poly().pow(*e as u64))
    }
}

/// Factored form, e.g. `(x3)^1 * (x3 + t*x1)^1`; the unit prints as `1`.
impl fmt::Display for DifferentCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.factors.iter().map(|(l, e)| format!("({l})^{e}")).collect();
        write!(f, "{}", parts.join(" * "))
    }
}

fn lines_of<'a>(it: impl Iterator<Item = &'a crate::group::TransvectionInfo>) -> Vec<LinearForm> {
    let set: std::collections::BTreeSet<LinearForm> = it.map(|t| t.line.clone()).collect();
    set.into_iter().collect()
}

/// `⟨τ ∈ 𝒫 | l_τ ∝ l⟩`.
pub fn inertia_group(l: &LinearForm, g: &Group) -> Group {
    let l = l.normalize();
    let gens = g.pseudo_reflections().iter().filter(|t| t.line == l).map(|t| t.element.clone()).collect();
    Group::enumerate(g.ring(), gens, g.cap()).expect("subgroup of an enumerated group")
}

/// `{g | (g - 1) S ⊆ l S}`: every `(g - 1) x_i` is a multiple of `l`.
pub fn inertia_group_by_definition(l: &LinearForm, g: &Group) -> Group {
    g.subgroup_where(|e| {
        e.difference_rows().into_iter().filter_map(|r| LinearForm::nonzero(g.ring(), r)).all(|d| d.proportional(l))
    })
}

/// `{g | g l ∝ l}`.
pub fn decomposition_group(l: &LinearForm, g: &Group) -> Group {
    g.subgroup_where(|e| e.act_linear(l).proportional(l))
}

/// Exponent of `l` in `Δ_{S/S^G}`: `Σ (d_i - 1)` over the generator degrees of the inertia ring.
pub fn hyperplane_exponent(l: &LinearForm, g: &Group) -> Result<u32, RamificationError> {
    let inertia = inertia_group(l, g);
    if inertia.is_trivial() {
        return Ok(0);
    }
    let degrees = invariants::exponent_degrees_of_inertia_ring(&inertia)?;
    Ok(degrees.iter().map(|d| d - 1).sum())
}

/// `Δ_{S/S^G}` supported on the pseudo-reflection lines.
pub fn different_over_invariants(g: &Group, tag: &str) -> Result<DifferentCertificate, RamificationError> {
    let mut factors = Vec::new();
    for l in lines_of(g.pseudo_reflections().iter()) {
        factors.push((l.clone(), hyperplane_exponent(&l, g)?));
    }
    Ok(DifferentCertificate::new(tag, factors))
}

/// `Δ_{A/R}` by exponent subtraction, with the checks recorded rather than assumed.
#[derive(Clone, Debug)]
pub struct QuotientDifferent {
    pub s_over_r: DifferentCertificate,
    pub s_over_a: DifferentCertificate,
    pub a_over_r: DifferentCertificate,
    /// Expanded `Δ_{A/R}` is fixed by G.
    pub g_invariant: bool,
    /// Support equals the lines of `𝒫 \ G'`.
    pub support_matches: bool,
}

pub fn different_a_over_r(g: &Group, gprime: &Group) -> Result<QuotientDifferent, RamificationError> {
    if !gprime.is_normal_in(g) {
        return Err(RamificationError::NotNormal);
    }
    let s_over_r = different_over_invariants(g, "S/R")?;
    let s_over_a = different_over_invariants(gprime, "S/A")?;
    for (l, e) in &s_over_a.factors {
        if s_over_r.exponent_of(l) < *e {
            return Err(RamificationError::NegativeExponent { line: l.to_string() });
        }
    }
    let a_over_r = DifferentCertificate::new(
        "A/R",
        s_over_r.factors.iter().map(|(l, e)| (l.clone(), e - s_over_a.exponent_of(l))),
    );
    let g_invariant = g.fixes(&a_over_r.expand(g.ring()));
    let outside = lines_of(g.pseudo_reflections().iter().filter(|t| !gprime.contains(&t.element)));
    let support_matches = a_over_r.support() == outside;
    Ok(QuotientDifferent { s_over_r, s_over_a, a_over_r, g_invariant, support_matches })
}

/// The two closed forms for `Δ_{A/R}` when `β_σ > β_{G'}`.
#[derive(Clone, Debug)]
pub struct SpecialFormulas {
    /// `Π l_τ^{p-1}` over the lines of `𝒫 \ G'`.
    pub product_form: DifferentCertificate,
    /// `((σ* - 1) Π_H x_v)^{p-1}` through the p-polynomial decomposition.
    pub ppoly_form: Poly,
    /// The same quantity computed as `σ* f - f` directly.
    pub direct_form: Poly,
    /// Coset transvection the closed forms were evaluated with.
    pub sigma_used: GroupElement,
    /// 0-based index of the moved variable.
    pub var: usize,
    pub h_order: usize,
}

pub fn different_special_formulas(
    g: &Group,
    gprime: &Group,
    sigma: &GroupElement,
) -> Result<SpecialFormulas, RamificationError> {
    let beta_sigma = sigma.beta().unwrap_or(0);
    if beta_sigma <= gprime.beta_or_zero() {
        return Err(RamificationError::Precondition(format!(
            "beta_sigma = {beta_sigma} does not exceed beta_G' = {}",
            gprime.beta_or_zero()
        )));
    }
    let ring = g.ring();
    let n = ring.nvars();
    let p = ring.field().characteristic() as u64;
    let outside: Vec<&GroupElement> =
        g.pseudo_reflections().iter().map(|t| &t.element).filter(|e| !gprime.contains(e)).collect();
    let product_form = DifferentCertificate::new(
        "A/R",
        lines_of(g.pseudo_reflections().iter().filter(|t| !gprime.contains(&t.element)))
            .into_iter()
            .map(|l| (l, p as u32 - 1)),
    );
    // The closed forms hold for any coset transvection, with x_n any variable
    // it moves and H the part of G' fixing its hyperplane.
    let sigma_used = std::iter::once(sigma)
        .chain(outside.iter().copied())
        .find(|e| e.is_pseudo_reflection() && !gprime.contains(e))
        .cloned()
        .ok_or_else(|| RamificationError::Precondition("no transvection outside G'".into()))?;
    let var = (0..n)
        .rev()
        .find(|&v| sigma_used.difference_of(&LinearForm::variable(ring, v)).is_some())
        .expect("a transvection moves some variable");
    let h = gprime.subgroup_h_for(&sigma_used);
    let f = invariants::orbit_product(&h, &Poly::var(ring, var));
    let l = sigma_used.difference_of(&LinearForm::variable(ring, var)).unwrap();
    let dec = f.p_poly_decompose(var)?;
    let ppoly_form = dec.apply_sigma_minus_one(&l)?.pow(p - 1);
    let direct_form = (&sigma_used.act(&f) - &f).pow(p - 1);
    if ppoly_form != direct_form {
        return Err(RamificationError::Mismatch("p-polynomial route disagrees with direct computation".into()));
    }
    if !ppoly_form.proportional(&product_form.expand(ring)) {
        return Err(RamificationError::Mismatch("closed forms disagree".into()));
    }
    Ok(SpecialFormulas { product_form, ppoly_form, direct_form, sigma_used, var, h_order: h.order() })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Ramif1Report {
    pub s_over_r: Vec<LinearForm>,
    pub s_over_a_over_r: Vec<LinearForm>,
    /// `Π_{G'} l` for one line per G'-orbit of `s_over_a_over_r`.
    pub a_over_r_generators: Vec<Poly>,
    pub a_over_r_invariant: Vec<bool>,
}

pub fn ramif1(g: &Group, gprime: &Group) -> Ramif1Report {
    let s_over_r = lines_of(g.pseudo_reflections().iter());
    let s_over_a_over_r = lines_of(g.pseudo_reflections().iter().filter(|t| !gprime.contains(&t.element)));
    let mut seen = HashSet::new();
    let mut a_over_r_generators = Vec::new();
    for l in &s_over_a_over_r {
        let q = invariants::orbit_product(gprime, &l.to_poly());
        if seen.insert(q.clone()) {
            a_over_r_generators.push(q);
        }
    }
    let a_over_r_invariant = a_over_r_generators.iter().map(|q| g.fixes(q)).collect();
    Ramif1Report { s_over_r, s_over_a_over_r, a_over_r_generators, a_over_r_invariant }
}

#[derive(Clone, Debug)]
pub struct SplitVerdict {
    pub is_split: bool,
    pub d_min: u32,
    pub witness: Poly,
    pub different: DifferentCertificate,
    pub deg_different: u64,
    /// `Trace(a^{p-1})`.
    pub witness_trace: Poly,
    /// `λ` with `witness_trace = λ Δ`, when split.
    pub scalar: Option<Fe>,
    /// `deg Δ` compared with `(p - 1) d_min`.
    pub relation: Ordering,
}

/// Direct-summand test for an index-p normal step with coset generator `σ`.
pub fn split_test(
    g: &Group,
    gprime: &Group,
    sigma: &GroupElement,
    degree_cap: Option<u32>,
) -> Result<SplitVerdict, RamificationError> {
    let p = g.ring().field().characteristic();
    if g.order() != gprime.order() * p as usize || !g.contains(sigma) || gprime.contains(sigma) {
        return Err(RamificationError::Precondition("expected [G : G'] = p and sigma in G \\ G'".into()));
    }
    let q = different_a_over_r(g, gprime)?;
    let (d_min, witness) = invariants::min_degree_noninvariant(gprime, g, degree_cap)?;
    let witness_trace = invariants::trace_over_quotient(&witness.pow(p as u64 - 1), sigma, gprime)?;
    let deg_different = q.a_over_r.degree();
    let target = (p as u64 - 1) * d_min as u64;
    let relation = deg_different.cmp(&target);
    let is_split = relation == Ordering::Equal;
    let scalar = if is_split {
        let delta = q.a_over_r.expand(g.ring());
        let c = witness_trace
            .scalar_ratio(&delta)
            .ok_or_else(|| RamificationError::Mismatch("trace is not a multiple of the different".into()))?;
        Some(c)
    } else {
        None
    };
    Ok(SplitVerdict { is_split, d_min, witness, different: q.a_over_r, deg_different, witness_trace, scalar, relation })
}

#[derive(Clone, Debug, Default)]
pub struct OrbitWitnessSearch {
    /// True when no `s ∈ S_1` has `Trace((Π_{G'} s)^{p-1}) / Δ_{A/R}` a nonzero scalar.
    pub none_exists: bool,
    pub witness: Option<LinearForm>,
    /// Degree of the subfield the coefficients were drawn from.
    pub coefficient_degree: usize,
    /// Moved-part classes rejected by orbit size alone.
    pub rejected_by_orbit_size: u64,
    /// Smallest G'-orbit among enumerated classes holding a form not fixed by sigma.
    pub smallest_orbit_off_fixed: Option<usize>,
    pub trace_tests: u64,
}

/// Exhaustive search for a linear `s` whose orbit product generates `A` over `R`
/// in the trace sense. Forms are pivot-monic, enumerated by ascending pivot.
///
/// The orbit of `s` depends only on its coefficients on variables moved by G',
/// so those are enumerated first; free coefficients are expanded only when
/// `(p - 1)|G' s| = deg Δ`.
pub fn no_linear_orbit_witness(
    g: &Group,
    gprime: &Group,
    sigma: &GroupElement,
    full_field: bool,
    cap: u64,
) -> Result<OrbitWitnessSearch, RamificationError> {
    let ring = g.ring();
    let field = ring.field();
    let n = ring.nvars();
    let p = field.characteristic() as u64;
    let q = different_a_over_r(g, gprime)?;
    let delta = q.a_over_r.expand(ring);
    let deg_delta = q.a_over_r.degree();
    let coefficient_degree = if full_field {
        field.degree()
    } else {
        let degs = g.generators().iter().flat_map(|e| e.rows().concat()).map(|c| field.degree_of(c));
        degs.fold(1, lcm)
    };
    let coeffs = field.subfield_elements(coefficient_degree);
    let k = coeffs.len() as u64;
    let moved: Vec<bool> = (0..n)
        .map(|i| gprime.elements().iter().any(|e| e.difference_of(&LinearForm::variable(ring, i)).is_some()))
        .collect();
    let mut out = OrbitWitnessSearch { coefficient_degree, ..Default::default() };
    let mut orbit_cache: HashMap<Vec<Fe>, usize> = HashMap::new();
    let ds = sigma.difference_rows();
    for pivot in 0..n {
        let moved_below: Vec<usize> = (0..pivot).filter(|&i| moved[i]).collect();
        let free_below: Vec<usize> = (0..pivot).filter(|&i| !moved[i]).collect();
        let needed = k.saturating_pow(moved_below.len() as u32);
        if needed > cap {
            return Err(RamificationError::EnumerationCap { needed, cap });
        }
        for m in tuples(&coeffs, moved_below.len()) {
            let mut part = vec![Fe::ZERO; n];
            for (&i, &c) in moved_below.iter().zip(&m) {
                part[i] = c;
            }
            if moved[pivot] {
                part[pivot] = Fe::ONE;
            }
            let size =
                *orbit_cache.entry(part.clone()).or_insert_with(|| match LinearForm::nonzero(ring, part.clone()) {
                    Some(l) => gprime.orbit_linear(&l).len(),
                    None => 1,
                });
            // Some form in the class is moved by sigma unless the fixed coordinates
            // give (sigma - 1) s = 0 and no free coordinate can change that.
            let mut fixed = part.clone();
            fixed[pivot] = Fe::ONE;
            let unfixed = free_below.iter().any(|&i| ds[i].iter().any(|c| !c.is_zero()))
                || (0..n)
                    .any(|k| (0..n).fold(Fe::ZERO, |acc, i| field.add(acc, field.mul(fixed[i], ds[i][k]))) != Fe::ZERO);
            if unfixed {
                out.smallest_orbit_off_fixed = Some(out.smallest_orbit_off_fixed.map_or(size, |x| x.min(size)));
            }
            if (p - 1) * size as u64 != deg_delta {
                out.rejected_by_orbit_size += 1;
                continue;
            }
            let needed = k.saturating_pow(free_below.len() as u32);
            if needed > cap {
                return Err(RamificationError::EnumerationCap { needed, cap });
            }
            for f in tuples(&coeffs, free_below.len()) {
                let mut v = part.clone();
                for (&i, &c) in free_below.iter().zip(&f) {
                    v[i] = c;
                }
                v[pivot] = Fe::ONE;
                let s = LinearForm::new(ring, v).unwrap();
                if sigma.act_linear(&s) == s {
                    continue;
                }
                out.trace_tests += 1;
                let prod = invariants::orbit_product(gprime, &s.to_poly());
                let tr = invariants::trace_over_quotient(&prod.pow(p - 1), sigma, gprime)?;
                if !tr.is_zero() && tr.proportional(&delta) {
                    out.witness = Some(s);
                    return Ok(out);
                }
            }
        }
    }
    out.none_exists = true;
    Ok(out)
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// All `len`-tuples over `vals`, last coordinate varying slowest.
fn tuples(vals: &[Fe], len: usize) -> impl Iterator<Item = Vec<Fe>> + '_ {
    let total = vals.len().pow(len as u32);
    (0..total).map(move |mut idx| {
        (0..len)
            .map(|_| {
                let c = vals[idx % vals.len()];
                idx /= vals.len();
                c
            })
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::*;

    fn lf(ring: &std::sync::Arc<crate::poly::Ring>, c: &[Fe]) -> LinearForm {
        LinearForm::new(ring, c.to_vec()).unwrap()
    }

    #[test]
    fn inertia_and_decomposition() {
        let sw = shank_wehlau();
        let g = sw.group();
        let x1 = LinearForm::variable(&sw.ring, 0);
        assert_eq!(inertia_group(&x1, &g), sw.gprime());
        assert_eq!(inertia_group_by_definition(&x1, &g), sw.gprime());
        assert_eq!(decomposition_group(&x1, &g), g);
        let generic = lf(&sw.ring, &[Fe::ONE, Fe::ONE, Fe::ZERO, Fe::ONE]);
        assert!(inertia_group(&generic, &g).is_trivial());
        for p in [2, 3] {
            let ex = main_example(p);
            let g = ex.group();
            let x3 = LinearForm::variable(&ex.ring, 2);
            let inertia = inertia_group(&x3, &g);
            assert_eq!(inertia.order(), p as usize);
            assert!(inertia.contains(&ex.sigma));
            assert_eq!(inertia, inertia_group_by_definition(&x3, &g));
            assert!(inertia.is_normal_in(&decomposition_group(&x3, &g)));
        }
    }

    #[test]
    fn hyperplane_exponents() {
        let sw = shank_wehlau();
        assert_eq!(hyperplane_exponent(&LinearForm::variable(&sw.ring, 0), &sw.group()), Ok(1));
        assert_eq!(hyperplane_exponent(&LinearForm::variable(&sw.ring, 1), &sw.group()), Ok(0));
        for p in [2u32, 3] {
            let ex = main_example(p);
            assert_eq!(hyperplane_exponent(&LinearForm::variable(&ex.ring, 2), &ex.group()), Ok(p - 1));
        }
    }

    #[test]
    fn differents_for_shank_wehlau() {
        let sw = shank_wehlau();
        let d = different_over_invariants(&sw.group(), "S/R").unwrap();
        assert_eq!(d.to_string(), "(x1)^1 * (x3)^1");
        assert_eq!(different_over_invariants(&Group::trivial(&sw.ring), "S/R").unwrap().to_string(), "1");
        let q = different_a_over_r(&sw.group(), &sw.gprime()).unwrap();
        assert_eq!(q.a_over_r.to_string(), "(x3)^1");
        assert!(q.g_invariant && q.support_matches);
        let sr = q.s_over_r.expand(&sw.ring);
        assert_eq!(sr.divide_exact(&q.s_over_a.expand(&sw.ring)).unwrap(), Poly::var(&sw.ring, 2));
        assert!(different_a_over_r(&sw.group(), &sw.group()).unwrap().a_over_r.is_unit());
        // B = S^{⟨στ⟩}: Δ_{B/R} = x1 x3
        let h = Group::enumerate(&sw.ring, vec![sw.sigma.compose(&sw.tau)], 10).unwrap();
        let q = different_a_over_r(&sw.group(), &h).unwrap();
        assert_eq!(q.a_over_r.to_string(), "(x1)^1 * (x3)^1");
    }

    #[test]
    fn main_example_differents() {
        for p in [2u32, 3] {
            let ex = main_example(p);
            let f = ex.ring.field();
            let q = different_a_over_r(&ex.group(), &ex.gprime()).unwrap();
            let want = DifferentCertificate::new(
                "A/R",
                (0..p).map(|c| {
                    (lf(&ex.ring, &[f.mul(f.from_int(c as i64), ex.beta), Fe::ZERO, Fe::ONE, Fe::ZERO]), p - 1)
                }),
            );
            assert_eq!(q.a_over_r, want);
            assert_eq!(q.a_over_r.degree(), (p * (p - 1)) as u64);
            assert!(q.g_invariant && q.support_matches);
            let s = different_special_formulas(&ex.group(), &ex.gprime(), &ex.sigma).unwrap();
            assert_eq!(s.product_form, want);
            assert_eq!(s.h_order, p as usize);
            // x3^p - β^{p-1} x1^{p-1} x3, raised to p-1
            let x1 = Poly::var(&ex.ring, 0);
            let x3 = Poly::var(&ex.ring, 2);
            let inner = &x3.pow(p as u64) - &(&x1.pow(p as u64 - 1) * &x3).scale(f.pow(ex.beta, p as u64 - 1));
            assert!(s.ppoly_form.proportional(&inner.pow(p as u64 - 1)));
        }
    }

    #[test]
    fn special_formula_edge_cases() {
        let ex = main_example(3);
        let c = Group::enumerate(&ex.ring, vec![ex.tau1.clone(), ex.tau2.clone()], 100).unwrap();
        let b = Group::enumerate(&ex.ring, vec![ex.tau1.clone(), ex.tau2.clone(), ex.sigma.clone()], 100).unwrap();
        let s = different_special_formulas(&b, &c, &ex.sigma).unwrap();
        assert_eq!(s.h_order, 1);
        assert_eq!(s.ppoly_form, Poly::var(&ex.ring, 2).pow(2));
        let single = Group::enumerate(&ex.ring, vec![ex.sigma.clone()], 10).unwrap();
        let s = different_special_formulas(&single, &Group::trivial(&ex.ring), &ex.sigma).unwrap();
        assert_eq!(s.product_form.to_string(), "(x3)^2");
        assert!(matches!(
            different_special_formulas(&ex.gprime(), &c, &ex.tau3),
            Err(RamificationError::Precondition(_))
        ));
    }

    #[test]
    fn ramification_loci() {
        let sw = shank_wehlau();
        let r = ramif1(&sw.group(), &sw.gprime());
        let x = |i| LinearForm::variable(&sw.ring, i);
        assert_eq!(r.s_over_r, vec![x(0), x(2)]);
        assert_eq!(r.s_over_a_over_r, vec![x(2)]);
        assert_eq!(r.a_over_r_generators, vec![Poly::var(&sw.ring, 2)]);
        assert!(ramif1(&sw.group(), &sw.group()).s_over_a_over_r.is_empty());
        let ex = main_example(2);
        let r = ramif1(&ex.group(), &ex.gprime());
        let x3b = lf(&ex.ring, &[ex.beta, Fe::ZERO, Fe::ONE, Fe::ZERO]);
        assert_eq!(r.s_over_a_over_r, vec![LinearForm::variable(&ex.ring, 2), x3b]);
        assert_eq!(r.a_over_r_generators.len(), 2);
        assert!(r.a_over_r_invariant.iter().all(|&b| b));
    }

    #[test]
    fn split_verdicts() {
        let sw = shank_wehlau();
        let v = split_test(&sw.group(), &sw.gprime(), &sw.sigma, None).unwrap();
        assert!(v.is_split);
        assert_eq!((v.d_min, v.scalar), (1, Some(Fe::ONE)));
        assert_eq!(v.witness_trace, Poly::var(&sw.ring, 2));
        let h = Group::enumerate(&sw.ring, vec![sw.sigma.compose(&sw.tau)], 10).unwrap();
        let v = split_test(&sw.group(), &h, &sw.sigma, None).unwrap();
        assert!(v.is_split);
        assert_eq!(v.d_min, 2);
        assert!(v.witness_trace.proportional(&(&Poly::var(&sw.ring, 0) * &Poly::var(&sw.ring, 2))));
        for p in [2u32, 3] {
            let ex = main_example(p);
            let v = split_test(&ex.group(), &ex.gprime(), &ex.sigma, None).unwrap();
            assert!(v.is_split);
            assert_eq!(v.d_min, p);
            assert_eq!(v.deg_different, (p * (p - 1)) as u64);
            // B ⊂ C with C = S^{⟨τ1,τ2⟩}, B = S^{⟨τ1,τ2,σ⟩}
            let c = Group::enumerate(&ex.ring, vec![ex.tau1.clone(), ex.tau2.clone()], 100).unwrap();
            let b = Group::enumerate(&ex.ring, vec![ex.tau1.clone(), ex.tau2.clone(), ex.sigma.clone()], 100).unwrap();
            let v = split_test(&b, &c, &ex.sigma, None).unwrap();
            assert!(!v.is_split);
            assert_eq!(v.different.to_string(), format!("(x3)^{}", p - 1));
            assert!(v.d_min > 1);
            assert_eq!(v.relation, Ordering::Less);
        }
    }

    #[test]
    fn orbit_witness_search() {
        let sw = shank_wehlau();
        let r = no_linear_orbit_witness(&sw.group(), &sw.gprime(), &sw.sigma, false, DEFAULT_ENUMERATION_CAP).unwrap();
        assert!(!r.none_exists);
        assert_eq!(r.witness, Some(LinearForm::variable(&sw.ring, 3)));
        for p in [2u32, 3] {
            let st = stong(p);
            let gp = Group::enumerate(&st.ring, vec![st.rho.clone(), st.tau.clone()], 100).unwrap();
            let r = no_linear_orbit_witness(&st.group(), &gp, &st.sigma, false, DEFAULT_ENUMERATION_CAP).unwrap();
            assert_eq!(r.witness, Some(LinearForm::variable(&st.ring, 1)));
        }
        let ex = main_example(2);
        let r = no_linear_orbit_witness(&ex.group(), &ex.gprime(), &ex.sigma, false, DEFAULT_ENUMERATION_CAP).unwrap();
        assert!(r.none_exists);
        assert_eq!(r.coefficient_degree, 6);
    }
}
