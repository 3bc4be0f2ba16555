use std::sync::Arc;

use proptest::prelude::*;
use proptest::strategy::ValueTree;

use transvect::field::{Fe, Field};
use transvect::group::{Group, GroupElement};
use transvect::invariants;
use transvect::poly::{LinearForm, Monomial, Poly, Ring};
use transvect::ramification;

fn field_strategy() -> impl Strategy<Value = Arc<Field>> {
    prop_oneof![Just((2, 1)), Just((2, 3)), Just((3, 1)), Just((3, 2)), Just((5, 1)), Just((5, 2))]
        .prop_map(|(p, k)| Arc::new(Field::gf(p, k).unwrap()))
}

fn element(f: &Field, i: u32) -> Fe {
    f.elements().nth((i % f.size()) as usize).unwrap()
}

fn poly(ring: &Arc<Ring>, terms: &[(Vec<u32>, u32)]) -> Poly {
    let f = ring.field();
    Poly::from_terms(ring, terms.iter().map(|(e, c)| (Monomial(e.clone()), element(f, *c))).collect::<Vec<_>>())
}

fn terms(n: usize) -> impl Strategy<Value = Vec<(Vec<u32>, u32)>> {
    prop::collection::vec((prop::collection::vec(0u32..3, n), any::<u32>()), 0..5)
}

/// Unitriangular matrix from raw below-diagonal entries.
fn unitriangular(ring: &Arc<Ring>, raw: &[u32]) -> GroupElement {
    let f = ring.field();
    let n = ring.nvars();
    let mut it = raw.iter().cycle();
    let rows: Vec<Vec<Fe>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Fe::ONE
                    } else if j < i {
                        element(f, *it.next().unwrap())
                    } else {
                        Fe::ZERO
                    }
                })
                .collect()
        })
        .collect();
    GroupElement::from_rows(ring, &rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(f in field_strategy(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let (a, b, c) = (element(&f, a), element(&f, b), element(&f, c));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        prop_assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
        prop_assert_eq!(f.pow(a, f.size() as u64), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Fe::ONE);
        }
    }

    #[test]
    fn polynomial_ring_laws(f in field_strategy(), a in terms(3), b in terms(3), c in terms(3)) {
        let ring = Ring::new(f, 3);
        let (a, b, c) = (poly(&ring, &a), poly(&ring, &b), poly(&ring, &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).divide_exact(&b).unwrap(), a);
        }
    }

    #[test]
    fn substitution_is_an_action(f in field_strategy(), g in prop::collection::vec(any::<u32>(), 6), h in prop::collection::vec(any::<u32>(), 6), a in terms(3)) {
        let ring = Ring::new(f, 3);
        let (g, h) = (unitriangular(&ring, &g), unitriangular(&ring, &h));
        let a = poly(&ring, &a);
        prop_assert_eq!(g.compose(&h).act(&a), g.act(&h.act(&a)));
        prop_assert_eq!(g.inverse().act(&g.act(&a)), a.clone());
        prop_assert_eq!(g.act(&(&a * &a)), &g.act(&a) * &g.act(&a));
    }

    #[test]
    fn normalized_forms(f in field_strategy(), c in prop::collection::vec(any::<u32>(), 4), s in 1u32..) {
        let ring = Ring::new(f.clone(), 4);
        let coeffs: Vec<Fe> = c.iter().map(|&x| element(&f, x)).collect();
        if let Some(l) = LinearForm::nonzero(&ring, coeffs) {
            let n = l.normalize();
            prop_assert!(n.is_normalized());
            prop_assert_eq!(n.normalize(), n.clone());
            let scalar = element(&f, s);
            if !scalar.is_zero() {
                prop_assert_eq!(l.scale(scalar).unwrap().normalize(), n);
            }
        }
    }

    #[test]
    fn enumerated_groups_are_closed(f in prop_oneof![Just((2, 1)), Just((3, 1))].prop_map(|(p, k)| Arc::new(Field::gf(p, k).unwrap())),
                                    raw in prop::collection::vec(prop::collection::vec(any::<u32>(), 6), 1..3)) {
        let ring = Ring::new(f, 3);
        let gens: Vec<GroupElement> = raw.iter().map(|r| unitriangular(&ring, r)).collect();
        let g = Group::enumerate(&ring, gens, 729).unwrap();
        for a in g.elements() {
            prop_assert!(g.contains(&a.inverse()));
            for b in g.elements() {
                prop_assert!(g.contains(&a.compose(b)));
            }
        }
        let p = ring.field().characteristic() as usize;
        let mut order = g.order();
        while order.is_multiple_of(p) {
            order /= p;
        }
        prop_assert_eq!(order, 1);
    }
}

/// Traces of G'-invariants land in the ideal of Δ_{A/R}, with an invariant cofactor.
fn trace_in_different_ideal(g: &Group, gp: &Group, sigma: &GroupElement, cases: u32) {
    let ring = g.ring().clone();
    let field = ring.field();
    let q = ramification::different_a_over_r(g, gp).unwrap();
    let delta = q.a_over_r.expand(&ring);
    let (d_min, _) = invariants::min_degree_noninvariant(gp, g, None).unwrap();
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    for d in 1..=d_min + 2 {
        let basis = invariants::invariant_space(gp, d);
        let strategy = prop::collection::vec(any::<u32>(), basis.len());
        for _ in 0..cases {
            let coeffs = strategy.new_tree(&mut runner).unwrap().current();
            let a =
                basis.iter().zip(&coeffs).fold(Poly::zero(&ring), |acc, (b, &c)| &acc + &b.scale(element(field, c)));
            let t = invariants::trace_over_quotient(&a, sigma, gp).unwrap();
            let cof = t.divide_exact(&delta).unwrap_or_else(|_| panic!("Delta does not divide Trace({a})"));
            assert!(g.fixes(&cof), "cofactor of Trace({a}) not invariant");
        }
    }
}

fn spec_group(name: &str, gprime: &[&str], sigma: &str) -> (Group, Group, GroupElement) {
    let spec = transvect::cli::verify::load_fixture(name).unwrap();
    let words: Vec<String> = gprime.iter().map(|s| s.to_string()).collect();
    let gp = Group::enumerate(&spec.ring, spec.words(&words).unwrap(), 4096).unwrap();
    (spec.group().unwrap(), gp, spec.word(sigma).unwrap())
}

#[test]
fn trace_lies_in_different_ideal() {
    let (g, gp, s) = spec_group("shank_wehlau.spec", &["tau"], "sigma");
    trace_in_different_ideal(&g, &gp, &s, 8);
    let (g, gp, s) = spec_group("shank_wehlau_h.spec", &["sigma*tau"], "sigma");
    trace_in_different_ideal(&g, &gp, &s, 8);
    for name in ["stong_p2.spec", "stong_p3.spec"] {
        let (g, gp, s) = spec_group(name, &["rho", "tau"], "sigma");
        trace_in_different_ideal(&g, &gp, &s, 4);
    }
    let (g, gp, s) = spec_group("main_p2.spec", &["tau1", "tau2", "tau3"], "sigma");
    trace_in_different_ideal(&g, &gp, &s, 4);
    // B ⊂ C, the non-split step
    let (b, c, s) = spec_group("main_p2.spec", &["tau1", "tau2"], "sigma");
    let b = Group::enumerate(b.ring(), vec![c.generators()[0].clone(), c.generators()[1].clone(), s.clone()], 4096)
        .unwrap();
    trace_in_different_ideal(&b, &c, &s, 4);
}
