//! Graded pieces of invariant rings, computed by dense linear algebra on the
//! monomial bases of `S_d`.
//!
//! Bases are returned in reduced echelon form with monomial columns in
//! descending order, so every basis element has coefficient 1 at its leading
//! monomial and no two share a leading monomial.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::field::Fe;
use crate::graded::{bases_up_to, multiples_in_degree, substitution_images, MonomialBasis};
use crate::group::{Group, GroupElement};
use crate::linalg::{self, Echelon};
use crate::poly::{Poly, Ring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("no degree up to the cap {cap} separates the invariant rings")]
    DegreeCap { cap: u32 },
    #[error("polynomial is not invariant under the subgroup")]
    NotInvariant,
    #[error("trace is not invariant under the coset generator")]
    TraceNotInvariant,
    #[error("G' must be a proper subgroup of G")]
    NotProperSubgroup,
    #[error("generator sweep could not certify the invariant ring within degree {budget}")]
    Uncertified { budget: u32 },
}

/// Elements whose fixed points define the invariants: the generators, or all elements when none are recorded.
fn acting_elements(g: &Group) -> Vec<GroupElement> {
    let src: Vec<GroupElement> =
        if g.generators().is_empty() { g.elements().to_vec() } else { g.generators().to_vec() };
    src.into_iter().filter(|e| !e.is_identity()).collect()
}

/// `(S^G)_d` in canonical echelon form over the monomial basis of `S_d`.
pub fn invariant_echelon(g: &Group, d: u32) -> (MonomialBasis, Echelon) {
    let ring = g.ring();
    let n = ring.nvars();
    let field = ring.field();
    let bases = bases_up_to(n, d);
    let basis = bases[d as usize].clone();
    let len = basis.len();
    let mut rows = Vec::new();
    for e in acting_elements(g) {
        let images = substitution_images(field, &e.rows(), &bases);
        for out in 0..len {
            let mut row: Vec<Fe> = images.iter().map(|img| img[out]).collect();
            row[out] = field.sub(row[out], Fe::ONE);
            if row.iter().any(|c| !c.is_zero()) {
                rows.push(row);
            }
        }
    }
    let ech = linalg::kernel(field, rows, len);
    (basis, ech)
}

/// Basis of `(S^G)_d`.
pub fn invariant_space(g: &Group, d: u32) -> Vec<Poly> {
    let (basis, ech) = invariant_echelon(g, d);
    ech.rows.iter().map(|r| basis.to_poly(g.ring(), r)).collect()
}

/// Bases of `(S^G)_d` for a range of degrees.
#[derive(Clone, Debug, Default)]
pub struct GradedBasis {
    pub by_degree: BTreeMap<u32, Vec<Poly>>,
}

impl GradedBasis {
    pub fn compute(g: &Group, degrees: impl IntoIterator<Item = u32>) -> GradedBasis {
        GradedBasis { by_degree: degrees.into_iter().map(|d| (d, invariant_space(g, d))).collect() }
    }

    pub fn dimension(&self, d: u32) -> Option<usize> {
        self.by_degree.get(&d).map(Vec::len)
    }
}

/// Smallest `d` with `A_d != R_d` for `A = S^{G'}`, `R = S^G`, and the canonical witness there.
pub fn min_degree_noninvariant(gprime: &Group, g: &Group, cap: Option<u32>) -> Result<(u32, Poly), InvariantError> {
    if !gprime.is_subgroup_of(g) || gprime.order() >= g.order() {
        return Err(InvariantError::NotProperSubgroup);
    }
    let p = g.ring().field().characteristic();
    let cap = cap.unwrap_or(g.order() as u32 * p);
    let field = g.ring().field();
    for d in 1..=cap {
        let (basis, a) = invariant_echelon(gprime, d);
        let (_, r) = invariant_echelon(g, d);
        if a.rank() == r.rank() {
            continue;
        }
        let rest: Vec<Vec<Fe>> =
            a.rows.iter().map(|v| r.reduce(field, v)).filter(|v| v.iter().any(|c| !c.is_zero())).collect();
        let ech = linalg::rref(field, rest, basis.len());
        return Ok((d, basis.to_poly(g.ring(), &ech.rows[0])));
    }
    Err(InvariantError::DegreeCap { cap })
}

/// Product over the distinct elements of the orbit `G' s`.
pub fn orbit_product(gprime: &Group, s: &Poly) -> Poly {
    gprime.orbit(s).iter().fold(Poly::one(s.ring()), |acc, f| &acc * f)
}

/// `sum_{i<p} σ^i a` for a G'-invariant `a`.
pub fn trace_over_quotient(a: &Poly, sigma: &GroupElement, gprime: &Group) -> Result<Poly, InvariantError> {
    if !gprime.fixes(a) {
        return Err(InvariantError::NotInvariant);
    }
    let p = a.field().characteristic();
    let mut term = a.clone();
    let mut sum = a.clone();
    for _ in 1..p {
        term = sigma.act(&term);
        sum = &sum + &term;
    }
    if sigma.act(&sum) != sum {
        return Err(InvariantError::TraceNotInvariant);
    }
    Ok(sum)
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSet {
    pub gens: Vec<Poly>,
    pub degrees: Vec<u32>,
    pub certified_complete: bool,
    /// `dim S/(gens)` when computed and finite.
    pub quotient_dimension: Option<u64>,
    /// The degree budget ran out before `n` generators appeared.
    pub exhausted: bool,
    /// The sweep stopped because the degrees forced `Π d_i > |G|`, so the ring
    /// is not polynomial.
    pub not_polynomial: bool,
}

/// Degree-ascending generator sweep, stopping once `n` generators are found.
/// Certified when there are exactly `n` of them and `dim S/(gens) = |G|`.
///
/// A polynomial invariant ring of a p-group has generators of p-power degree
/// with `Π d_i = |G|`, and any `n` invariants of those degrees cutting out a
/// finite quotient generate it. So only p-power degrees are searched, the sweep
/// stops once the degrees found rule out `Π d_i = |G|`, and when a single
/// generator is missing its forced degree is tried first with orbit products of
/// variables. Without certification `gens` is only what the sweep saw.
pub fn minimal_generators(g: &Group, budget: Option<u32>) -> GeneratorSet {
    let ring = g.ring();
    let n = ring.nvars();
    let field = ring.field();
    let p = field.characteristic() as u64;
    let budget = budget.unwrap_or(g.order() as u32);
    let order = g.order() as u64;
    let mut gens: Vec<Poly> = Vec::new();
    // products[d]: echelon of the span of generator monomials of degree d
    let mut products: Vec<Echelon> = vec![Echelon { ncols: 1, rows: vec![vec![Fe::ONE]], pivots: vec![0] }];
    let mut product_bases: Vec<MonomialBasis> = vec![MonomialBasis::new(n, 0)];
    let mut not_polynomial = false;
    let mut shortcut = None;
    for d in 1..=budget {
        let found: u64 = gens.iter().map(|f| f.degree().unwrap()).product();
        let missing = (n - gens.len()) as u32;
        if found.saturating_mul((d as u64).saturating_pow(missing)) > order {
            not_polynomial = true;
            break;
        }
        if missing == 1 && order.is_multiple_of(found) {
            let forced = order / found;
            if forced >= d as u64 && forced <= budget as u64 {
                shortcut = (0..n).rev().map(|j| orbit_product(g, &Poly::var(ring, j))).find(|f| {
                    f.degree() == Some(forced) && {
                        let mut all = gens.clone();
                        all.push(f.clone());
                        quotient_dimension(ring, &all) == Some(order)
                    }
                });
                if shortcut.is_some() {
                    break;
                }
            }
        }
        let basis = MonomialBasis::new(n, d);
        let mut span = Echelon::empty(basis.len());
        for f in &gens {
            let e = f.degree().unwrap() as usize;
            let lower = &products[d as usize - e];
            for row in &lower.rows {
                let q = &product_bases[d as usize - e].to_poly(ring, row) * f;
                span.insert(field, &basis.coords(&q));
            }
        }
        if is_power_of(d as u64, p) {
            let (_, inv) = invariant_echelon(g, d);
            let rest: Vec<Vec<Fe>> =
                inv.rows.iter().map(|v| span.reduce(field, v)).filter(|v| v.iter().any(|c| !c.is_zero())).collect();
            let new = linalg::rref(field, rest, basis.len());
            for row in &new.rows {
                span.insert(field, row);
                gens.push(basis.to_poly(ring, row));
            }
        }
        products.push(span);
        product_bases.push(basis);
        if gens.len() >= n {
            break;
        }
    }
    gens.extend(shortcut);
    let degrees: Vec<u32> = gens.iter().map(|f| f.degree().unwrap() as u32).collect();
    let degree_product: u64 = degrees.iter().map(|&d| d as u64).product();
    not_polynomial |= gens.len() > n || (gens.len() == n && degree_product != order);
    let quotient_dimension = if gens.len() == n && !not_polynomial { quotient_dimension(ring, &gens) } else { None };
    let certified_complete = quotient_dimension == Some(order);
    not_polynomial |= gens.len() == n && !certified_complete;
    let exhausted = gens.len() < n && !not_polynomial;
    GeneratorSet { gens, degrees, certified_complete, quotient_dimension, exhausted, not_polynomial }
}

fn is_power_of(mut d: u64, p: u64) -> bool {
    while d.is_multiple_of(p) {
        d /= p;
    }
    d == 1
}

/// `dim_k S/(f_1, ..., f_n)` for `n` homogeneous polynomials, or `None` when infinite.
///
/// Linear generators are eliminated first; the rest is a degree-by-degree rank
/// count in the remaining variables up to `sum (d_i - 1) + 1`, where a finite
/// quotient must vanish.
pub fn quotient_dimension(ring: &Arc<Ring>, gens: &[Poly]) -> Option<u64> {
    let n = ring.nvars();
    let field = ring.field();
    let s1 = MonomialBasis::new(n, 1);
    let linear: Vec<Vec<Fe>> = gens.iter().filter(|f| f.degree() == Some(1)).map(|f| s1.coords(f)).collect();
    let lin = linalg::rref(field, linear, n);
    let var_of = |col: usize| s1.monomials[col].0.iter().position(|&e| e == 1).unwrap();
    let mut images: Vec<Poly> = (0..n).map(|i| Poly::var(ring, i)).collect();
    for (row, &pc) in lin.rows.iter().zip(&lin.pivots) {
        let rest = Poly::from_terms(
            ring,
            row.iter().enumerate().filter(|&(c, _)| c != pc).map(|(c, &a)| (s1.monomials[c].clone(), field.neg(a))),
        );
        images[var_of(pc)] = rest;
    }
    let eliminated: Vec<usize> = lin.pivots.iter().map(|&c| var_of(c)).collect();
    let vars: Vec<usize> = (0..n).filter(|v| !eliminated.contains(v)).collect();
    let rest: Vec<Poly> = gens.iter().filter(|f| f.degree() != Some(1)).map(|f| f.substitute(&images)).collect();
    if rest.iter().any(|f| f.is_zero()) {
        return None;
    }
    let top: u32 = rest.iter().map(|f| f.degree().unwrap() as u32 - 1).sum::<u32>() + 1;
    let mut total = 0u64;
    for e in 0..=top {
        let basis = MonomialBasis::in_vars(n, e, &vars);
        let rows: Vec<Vec<Fe>> = rest.iter().flat_map(|f| multiples_in_degree(f, &basis, &vars)).collect();
        let q = basis.len() - linalg::rank(field, rows, basis.len());
        if e == top {
            return (q == 0).then_some(total);
        }
        total += q as u64;
    }
    unreachable!()
}

/// Generator degrees of `S^{G_in}`, from a certified sweep.
pub fn exponent_degrees_of_inertia_ring(g_in: &Group) -> Result<Vec<u32>, InvariantError> {
    let set = minimal_generators(g_in, None);
    if set.certified_complete {
        Ok(set.degrees)
    } else {
        Err(InvariantError::Uncertified { budget: g_in.order() as u32 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::*;

    fn poly(ring: &Arc<Ring>, terms: &[(Fe, &[u32])]) -> Poly {
        Poly::from_terms(ring, terms.iter().map(|(c, e)| (crate::poly::Monomial(e.to_vec()), *c)))
    }

    #[test]
    fn invariant_space_examples() {
        let sw = shank_wehlau();
        let r1 = invariant_space(&sw.group(), 1);
        assert_eq!(r1, vec![Poly::var(&sw.ring, 2), Poly::var(&sw.ring, 0)]);
        let trivial = Group::trivial(&sw.ring);
        assert_eq!(invariant_space(&trivial, 3).len(), 20);
        let ex = main_example(3);
        let c = Group::enumerate(&ex.ring, vec![ex.tau1.clone(), ex.tau2.clone()], 100).unwrap();
        assert_eq!(invariant_space(&c, 1).len(), 2);
        for f in invariant_space(&ex.gprime(), 3) {
            assert!(ex.gprime().elements().iter().all(|g| g.act(&f) == f));
        }
    }

    #[test]
    fn min_degree_witnesses() {
        let sw = shank_wehlau();
        let (d, a) = min_degree_noninvariant(&sw.gprime(), &sw.group(), None).unwrap();
        assert_eq!((d, a), (1, Poly::var(&sw.ring, 3)));
        let h = Group::enumerate(&sw.ring, vec![sw.sigma.compose(&sw.tau)], 10).unwrap();
        let (d, a) = min_degree_noninvariant(&h, &sw.group(), None).unwrap();
        assert_eq!(d, 2);
        assert_eq!(a.to_string(), "x1*x4 + x2*x3");
        assert_eq!(min_degree_noninvariant(&sw.group(), &sw.group(), None), Err(InvariantError::NotProperSubgroup));
    }

    #[test]
    fn main_example_witness() {
        for p in [2u32, 3] {
            let ex = main_example(p);
            let f = ex.ring.field();
            let (d, a) = min_degree_noninvariant(&ex.gprime(), &ex.group(), None).unwrap();
            assert_eq!(d, p);
            // a = y^p - β^{p-1} x1^{p-1} y - λ x2^p + μ x1^{p-1} x2
            let bp = f.pow(ex.beta, p as u64 - 1);
            let alpha_sum = (1..p).fold(Fe::ZERO, |s, i| f.add(s, f.pow(ex.alpha, i as u64)));
            let lambda = f.div(f.sub(bp, Fe::ONE), alpha_sum).unwrap();
            let mu = f.mul(f.add(Fe::ONE, alpha_sum), lambda);
            let pm = p - 1;
            let want = poly(
                &ex.ring,
                &[
                    (Fe::ONE, &[0, 0, 0, p]),
                    (f.neg(bp), &[pm, 0, 0, 1]),
                    (f.neg(lambda), &[0, p, 0, 0]),
                    (mu, &[pm, 1, 0, 0]),
                ],
            );
            assert_eq!(a, want, "p = {p}");
        }
    }

    #[test]
    fn orbit_products() {
        let sw = shank_wehlau();
        let x2 = Poly::var(&sw.ring, 1);
        assert_eq!(orbit_product(&sw.gprime(), &x2).to_string(), "x2^2 + x1*x2");
        let x1 = Poly::var(&sw.ring, 0);
        assert_eq!(orbit_product(&sw.group(), &x1), x1);
        for p in [2u32, 3] {
            let ex = main_example(p);
            let y = Poly::var(&ex.ring, 3);
            let prod = orbit_product(&ex.gprime(), &y);
            assert_eq!(prod.degree(), Some((p * p) as u64));
            assert!(ex.gprime().fixes(&prod));
            assert!(!ex.group().fixes(&prod));
        }
    }

    #[test]
    fn traces() {
        let sw = shank_wehlau();
        let x4 = Poly::var(&sw.ring, 3);
        assert_eq!(trace_over_quotient(&x4, &sw.sigma, &sw.gprime()).unwrap(), Poly::var(&sw.ring, 2));
        let one = Poly::one(&sw.ring);
        assert!(trace_over_quotient(&one, &sw.sigma, &sw.gprime()).unwrap().is_zero());
        let x2 = Poly::var(&sw.ring, 1);
        assert_eq!(trace_over_quotient(&x2, &sw.sigma, &sw.gprime()), Err(InvariantError::NotInvariant));
    }

    // σa − a ∈ R; Trace(a^k) = 0 for k < p−1; Trace(a^{p−1}) = −(σa − a)^{p−1}.
    #[test]
    fn trace_identities_for_minimal_witness() {
        let mut cases: Vec<(Group, Group, GroupElement)> = Vec::new();
        let sw = shank_wehlau();
        cases.push((sw.gprime(), sw.group(), sw.sigma.clone()));
        for p in [2u32, 3] {
            let ex = main_example(p);
            cases.push((ex.gprime(), ex.group(), ex.sigma.clone()));
            let st = stong(p);
            let gp = Group::enumerate(&st.ring, vec![st.rho.clone(), st.tau.clone()], 100).unwrap();
            cases.push((gp, st.group(), st.sigma.clone()));
        }
        let five = {
            let field = Arc::new(crate::field::Field::gf(5, 1).unwrap());
            let ring = Ring::new(field, 4);
            let tau = element(&ring, &[(1, &[(0, Fe::ONE)])]);
            let sigma = element(&ring, &[(3, &[(2, Fe::ONE)])]);
            let gp = Group::enumerate(&ring, vec![tau.clone()], 100).unwrap();
            let g = Group::enumerate(&ring, vec![tau, sigma.clone()], 1000).unwrap();
            (gp, g, sigma)
        };
        cases.push(five);
        for (gp, g, sigma) in cases {
            let p = g.ring().field().characteristic() as u64;
            let (d, a) = min_degree_noninvariant(&gp, &g, None).unwrap();
            let diff = &sigma.act(&a) - &a;
            assert!(g.fixes(&diff));
            let (basis, r) = invariant_echelon(&g, d);
            assert!(r.contains(g.ring().field(), &basis.coords(&diff)));
            for k in 0..p - 1 {
                assert!(trace_over_quotient(&a.pow(k), &sigma, &gp).unwrap().is_zero());
            }
            let tr = trace_over_quotient(&a.pow(p - 1), &sigma, &gp).unwrap();
            assert_eq!(tr, diff.pow(p - 1).neg());
        }
    }

    #[test]
    fn generator_sweeps() {
        let sw = shank_wehlau();
        let gp = minimal_generators(&sw.gprime(), None);
        assert_eq!(gp.degrees, vec![1, 1, 1, 2]);
        assert!(gp.certified_complete);
        assert_eq!(gp.quotient_dimension, Some(2));
        let g = minimal_generators(&sw.group(), None);
        assert_eq!(g.degrees, vec![1, 1, 2, 2]);
        assert_eq!(g.quotient_dimension, Some(4));
        assert!(g.certified_complete);
        let t = minimal_generators(&Group::trivial(&sw.ring), None);
        assert_eq!(t.gens, (0..4).rev().map(|i| Poly::var(&sw.ring, i)).collect::<Vec<_>>());
        assert_eq!(t.quotient_dimension, Some(1));
        // ⟨στ⟩ has a non-polynomial invariant ring
        let h = Group::enumerate(&sw.ring, vec![sw.sigma.compose(&sw.tau)], 10).unwrap();
        assert!(!minimal_generators(&h, None).certified_complete);
    }

    #[test]
    fn main_example_rings() {
        for p in [2u32, 3] {
            let ex = main_example(p);
            let a = minimal_generators(&ex.gprime(), None);
            assert!(a.certified_complete);
            let mut da = a.degrees.clone();
            da.sort();
            assert_eq!(da, vec![1, 1, p, p * p]);
            let r = minimal_generators(&ex.group(), None);
            assert!(r.certified_complete);
            let mut dr = r.degrees.clone();
            dr.sort();
            assert_eq!(dr, vec![1, 1, p * p, p * p]);
        }
    }

    #[test]
    fn inertia_degrees() {
        let sw = shank_wehlau();
        assert_eq!(exponent_degrees_of_inertia_ring(&sw.gprime()).unwrap(), vec![1, 1, 1, 2]);
        assert_eq!(exponent_degrees_of_inertia_ring(&Group::trivial(&sw.ring)).unwrap(), vec![1; 4]);
        let ex = main_example(3);
        let c = Group::enumerate(&ex.ring, vec![ex.sigma.clone()], 10).unwrap();
        assert_eq!(exponent_degrees_of_inertia_ring(&c).unwrap(), vec![1, 1, 1, 3]);
    }

    #[test]
    fn quotient_dimension_detects_infinite() {
        let sw = shank_wehlau();
        let x = |i| Poly::var(&sw.ring, i);
        assert_eq!(quotient_dimension(&sw.ring, &[x(0), x(1), x(2), x(3)]), Some(1));
        assert_eq!(quotient_dimension(&sw.ring, &[x(0), x(0).pow(2), x(2), x(3)]), None);
        assert_eq!(quotient_dimension(&sw.ring, &[x(0), x(1).pow(3), x(2).pow(2), x(3)]), Some(6));
    }

    #[test]
    fn no_pseudo_reflections_means_not_polynomial() {
        let sw = shank_wehlau();
        let h = Group::enumerate(&sw.ring, vec![sw.sigma.compose(&sw.tau)], 16).unwrap();
        let set = minimal_generators(&h, None);
        assert!(set.not_polynomial && !set.certified_complete && !set.exhausted);
    }

    #[test]
    fn forced_last_degree_uses_an_orbit_product() {
        let f = Arc::new(crate::field::Field::gf(3, 1).unwrap());
        let ring = Ring::new(f.clone(), 4);
        let m = |rows: [[i64; 4]; 4]| {
            let rows: Vec<Vec<Fe>> = rows.iter().map(|r| r.iter().map(|&c| f.from_int(c)).collect()).collect();
            GroupElement::from_rows(&ring, &rows).unwrap()
        };
        let gens = vec![
            m([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [1, 1, 1, 1]]),
            m([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [1, 1, 2, 1]]),
            m([[1, 0, 0, 0], [0, 1, 0, 0], [2, 1, 1, 0], [0, 0, 0, 1]]),
        ];
        let g = Group::enumerate(&ring, gens, 81).unwrap();
        let set = minimal_generators(&g, None);
        assert_eq!(set.degrees, vec![1, 1, 3, 27]);
        assert!(set.certified_complete);
        assert_eq!(*set.gens.last().unwrap(), orbit_product(&g, &Poly::var(&ring, 3)));
        assert!(set.gens.iter().all(|q| g.fixes(q)));
    }

    #[test]
    fn stong_r_generators_are_invariant() {
        for p in [2u64, 3] {
            let st = stong(p as u32);
            let g = Group::enumerate(&st.ring, vec![st.rho.clone(), st.tau.clone(), st.sigma.clone()], 4096).unwrap();
            let f = st.ring.field();
            let (x, y, z) = (Poly::var(&st.ring, 0), Poly::var(&st.ring, 1), Poly::var(&st.ring, 2));
            let n2 = &y.pow(p) - &(&y * &x.pow(p - 1));
            let n3 = &z.pow(p) - &(&z * &x.pow(p - 1));
            let dw = f.sub(f.pow(st.omega, p), st.omega);
            let dm = f.sub(f.pow(st.mu, p), st.mu);
            assert!(g.fixes(&(&n2.scale(dm) - &n3.scale(dw))));
            assert!(!g.fixes(&(&n2.scale(dw) - &n3.scale(dm))));
            let r2 = &n2.pow(p) - &(&n2 * &x.pow(p * (p - 1))).scale(f.pow(dw, p - 1));
            assert!(g.fixes(&r2));
            let set = minimal_generators(&g, None);
            assert!(set.certified_complete);
            assert_eq!(set.degrees, vec![1, p as u32, (p * p) as u32]);
        }
    }
}
