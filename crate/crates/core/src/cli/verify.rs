//! Built-in checks of the worked examples against the bundled fixtures.
//!
//! Fixtures are compiled in; `TRANSVECT_FIXTURES` points at a directory to read
//! them from instead.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::cli::spec::{parse_spec, GroupSpecFile};
use crate::field::Fe;
use crate::graded::MonomialBasis;
use crate::group::Group;
use crate::invariants;
use crate::poly::{LinearForm, Monomial, Poly};
use crate::ramification::{self, DifferentCertificate, DEFAULT_ENUMERATION_CAP};

pub const FIXTURE_ENV: &str = "TRANSVECT_FIXTURES";

const BUNDLED: &[(&str, &str)] = &[
    ("shank_wehlau.spec", include_str!("../../fixtures/shank_wehlau.spec")),
    ("shank_wehlau_h.spec", include_str!("../../fixtures/shank_wehlau_h.spec")),
    ("stong_p2.spec", include_str!("../../fixtures/stong_p2.spec")),
    ("stong_p3.spec", include_str!("../../fixtures/stong_p3.spec")),
    ("main_p2.spec", include_str!("../../fixtures/main_p2.spec")),
    ("main_p3.spec", include_str!("../../fixtures/main_p3.spec")),
    ("trivial.spec", include_str!("../../fixtures/trivial.spec")),
];

pub fn fixture_text(name: &str) -> Result<String, String> {
    if let Ok(dir) = std::env::var(FIXTURE_ENV) {
        let path = std::path::Path::new(&dir).join(name);
        return std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()));
    }
    BUNDLED
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| t.to_string())
        .ok_or_else(|| format!("no bundled fixture `{name}`"))
}

pub fn load_fixture(name: &str) -> Result<GroupSpecFile, String> {
    parse_spec(&fixture_text(name)?).map_err(|e| format!("{name}: {e}"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub fixture: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn check(&mut self, fixture: &str, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), fixture: fixture.into(), passed, detail: detail.into() });
    }

    fn fail(&mut self, fixture: &str, name: &str, e: impl std::fmt::Display) {
        self.check(fixture, name, false, format!("error: {e}"));
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{tag}  {:<20} {}", c.fixture, c.name));
            if !c.passed || !c.detail.is_empty() {
                out.push_str(&format!("  [{}]", c.detail));
            }
            out.push('\n');
        }
        let failed = self.failures().count();
        out.push_str(&format!(
            "{} checks, {} passed, {} failed\n",
            self.checks.len(),
            self.checks.len() - failed,
            failed
        ));
        out
    }
}

fn sorted(mut v: Vec<u32>) -> Vec<u32> {
    v.sort_unstable();
    v
}

fn group_of(spec: &GroupSpecFile, words: &[&str]) -> Result<Group, String> {
    let words: Vec<String> = words.iter().map(|w| w.to_string()).collect();
    let gens = spec.words(&words).map_err(|e| e.to_string())?;
    Group::enumerate(&spec.ring, gens, spec.order_cap()).map_err(|e| e.to_string())
}

fn scalar(spec: &GroupSpecFile, name: &str) -> Fe {
    spec.scalars.iter().find(|(n, _)| n == name).map(|(_, v)| *v).expect("fixture defines the scalar")
}

/// Runs every check for the requested characteristics (both when `None`).
pub fn verify_examples(p_filter: Option<u32>) -> VerifyReport {
    let mut rep = VerifyReport::default();
    let want = |p: u32| p_filter.is_none_or(|f| f == p);
    if want(2) {
        shank_wehlau(&mut rep);
    }
    for p in [2, 3] {
        if want(p) {
            stong(&mut rep, p);
            main_example(&mut rep, p);
            closing_diagram(&mut rep, p);
        }
    }
    rep
}

fn shank_wehlau(rep: &mut VerifyReport) {
    const FX: &str = "shank_wehlau.spec";
    let spec = match load_fixture(FX) {
        Ok(s) => s,
        Err(e) => return rep.fail(FX, "load", e),
    };
    let ring = spec.ring.clone();
    let x = |i: usize| Poly::var(&ring, i);
    let (g, gp) = match (spec.group(), group_of(&spec, &["tau"])) {
        (Ok(g), Ok(gp)) => (g, gp),
        _ => return rep.fail(FX, "enumerate", "group construction failed"),
    };
    rep.check(FX, "|G| = 4", g.order() == 4, format!("{}", g.order()));
    let r = invariants::minimal_generators(&g, None);
    rep.check(
        FX,
        "R degrees {1,1,2,2}, quotient dimension 4",
        sorted(r.degrees.clone()) == vec![1, 1, 2, 2] && r.quotient_dimension == Some(4) && r.certified_complete,
        format!("{:?}, {:?}", r.degrees, r.quotient_dimension),
    );
    let a = invariants::minimal_generators(&gp, None);
    rep.check(
        FX,
        "A degrees {1,1,1,2}",
        sorted(a.degrees.clone()) == vec![1, 1, 1, 2] && a.certified_complete,
        format!("{:?}", a.degrees),
    );
    match ramification::split_test(&g, &gp, spec.generator("sigma").unwrap(), None) {
        Ok(v) => {
            rep.check(FX, "Delta(A/R) = x3", v.different.expand(&ring) == x(2), v.different.to_string());
            rep.check(FX, "R in A split, trace x3", v.is_split && v.witness_trace == x(2), v.witness_trace.to_string());
            rep.check(FX, "a = x4", v.d_min == 1 && v.witness == x(3), v.witness.to_string());
        }
        Err(e) => rep.fail(FX, "split test", e),
    }
    match ramification::no_linear_orbit_witness(
        &g,
        &gp,
        spec.generator("sigma").unwrap(),
        false,
        DEFAULT_ENUMERATION_CAP,
    ) {
        Ok(o) => rep.check(
            FX,
            "orbit witness s = x4",
            o.witness == Some(LinearForm::variable(&ring, 3)),
            format!("{:?}", o.witness),
        ),
        Err(e) => rep.fail(FX, "orbit witness", e),
    }

    const FH: &str = "shank_wehlau_h.spec";
    let spec_h = match load_fixture(FH) {
        Ok(s) => s,
        Err(e) => return rep.fail(FH, "load", e),
    };
    let h = match group_of(&spec_h, &["sigma*tau"]) {
        Ok(h) => h,
        Err(e) => return rep.fail(FH, "enumerate", e),
    };
    let x1x3 = &x(0) * &x(2);
    match ramification::split_test(&g, &h, spec_h.generator("sigma").unwrap(), None) {
        Ok(v) => {
            rep.check(FH, "Delta(B/R) = x1*x3", v.different.expand(&ring) == x1x3, v.different.to_string());
            rep.check(FH, "R in B split, d_min = 2", v.is_split && v.d_min == 2, format!("d_min {}", v.d_min));
            let want = &(&x(0) * &x(3)) + &(&x(1) * &x(2));
            rep.check(FH, "b = x1*x4 + x2*x3", v.witness == want, v.witness.to_string());
            rep.check(FH, "trace matches x1*x3", v.witness_trace.proportional(&x1x3), v.witness_trace.to_string());
        }
        Err(e) => rep.fail(FH, "split test", e),
    }
    let b = invariants::orbit_product(&h, &(&x(3) + &x(1)));
    let tr = invariants::trace_over_quotient(&b, spec_h.generator("sigma").unwrap(), &h);
    rep.check(FH, "(1 + sigma) Pi_H(x4 + x2) = x1*x3", tr.as_ref().is_ok_and(|t| *t == x1x3), format!("{tr:?}"));
}

fn stong(rep: &mut VerifyReport, p: u32) {
    let fx = format!("stong_p{p}.spec");
    let fx = fx.as_str();
    let spec = match load_fixture(fx) {
        Ok(s) => s,
        Err(e) => return rep.fail(fx, "load", e),
    };
    let ring = spec.ring.clone();
    let f = ring.field();
    let pu = p as u64;
    let (x, y, z) = (Poly::var(&ring, 0), Poly::var(&ring, 1), Poly::var(&ring, 2));
    let n2 = &y.pow(pu) - &(&y * &x.pow(pu - 1));
    let n3 = &z.pow(pu) - &(&z * &x.pow(pu - 1));
    let (g, gp) = match (spec.group(), group_of(&spec, &["rho", "tau"])) {
        (Ok(g), Ok(gp)) => (g, gp),
        _ => return rep.fail(fx, "enumerate", "group construction failed"),
    };
    let a = invariants::minimal_generators(&gp, None);
    let mut got = a.gens.clone();
    got.sort_by_key(|q| q.to_string());
    let mut expect = vec![x.clone(), n2.clone(), n3.clone()];
    expect.sort_by_key(|q| q.to_string());
    rep.check(fx, "A = k[x, N2, N3]", a.certified_complete && got == expect, format!("{:?}", a.gens));
    let (omega, mu) = (scalar(&spec, "omega"), scalar(&spec, "mu"));
    let wp = f.sub(f.pow(omega, pu), omega);
    let mp = f.sub(f.pow(mu, pu), mu);
    // sigma shifts N2 by (w^p - w) x^p and N3 by (m^p - m) x^p, so the degree p
    // generator pairs each norm with the other's shift.
    let r1 = &n2.scale(mp) - &n3.scale(wp);
    let r2 = &n2.pow(pu) - &(&n2 * &x.pow(pu * (pu - 1))).scale(f.pow(wp, pu - 1));
    rep.check(fx, "(m^p - m) N2 - (w^p - w) N3 is G-invariant", g.fixes(&r1), "");
    rep.check(fx, "N2^p - (w^p - w)^(p-1) N2 x^(p(p-1)) is G-invariant", g.fixes(&r2), "");
    let swapped = &n2.scale(wp) - &n3.scale(mp);
    rep.check(fx, "(w^p - w) N2 - (m^p - m) N3 is not G-invariant", !g.fixes(&swapped), "");
    let r = invariants::minimal_generators(&g, None);
    let span_ok =
        r.certified_complete && sorted(r.degrees.clone()) == vec![1, p, p * p] && [&r1, &r2].iter().all(|q| g.fixes(q));
    rep.check(fx, "R degrees {1, p, p^2}", span_ok, format!("{:?}", r.degrees));
    let sigma = spec.generator("sigma").unwrap();
    match ramification::split_test(&g, &gp, sigma, None) {
        Ok(v) => {
            rep.check(fx, "split, d_min = p", v.is_split && v.d_min == p, format!("d_min {}", v.d_min));
        }
        Err(e) => rep.fail(fx, "split test", e),
    }
    match ramification::no_linear_orbit_witness(&g, &gp, sigma, false, DEFAULT_ENUMERATION_CAP) {
        Ok(o) => rep.check(
            fx,
            "orbit witness s = y",
            o.witness == Some(LinearForm::variable(&ring, 1)),
            format!("{:?}", o.witness),
        ),
        Err(e) => rep.fail(fx, "orbit witness", e),
    }
    for (pair, coset) in [(["rho", "sigma"], "tau"), (["tau", "sigma"], "rho")] {
        let name = format!("G' = <{}, {}>", pair[0], pair[1]);
        let gp2 = match group_of(&spec, &pair) {
            Ok(h) => h,
            Err(e) => return rep.fail(fx, &name, e),
        };
        let s = spec.generator(coset).unwrap();
        let v = ramification::split_test(&g, &gp2, s, None);
        let o = ramification::no_linear_orbit_witness(&g, &gp2, s, false, DEFAULT_ENUMERATION_CAP);
        match (v, o) {
            (Ok(v), Ok(o)) => rep.check(
                fx,
                &format!("{name}: split with a linear orbit witness"),
                v.is_split && v.d_min == p && o.witness.is_some(),
                format!("witness {:?}", o.witness),
            ),
            (Err(e), _) | (_, Err(e)) => rep.fail(fx, &name, e),
        }
    }
}

fn main_example(rep: &mut VerifyReport, p: u32) {
    let fx = format!("main_p{p}.spec");
    let fx = fx.as_str();
    let spec = match load_fixture(fx) {
        Ok(s) => s,
        Err(e) => return rep.fail(fx, "load", e),
    };
    let ring = spec.ring.clone();
    let f = ring.field();
    let pu = p as u64;
    let (alpha, beta) = (scalar(&spec, "alpha"), scalar(&spec, "beta"));
    rep.check(fx, "deg alpha = 2, deg beta = 3", f.degree_of(alpha) == 2 && f.degree_of(beta) == 3, "");
    let (g, gp) = match (spec.group(), group_of(&spec, &["tau1", "tau2", "tau3"])) {
        (Ok(g), Ok(gp)) => (g, gp),
        _ => return rep.fail(fx, "enumerate", "group construction failed"),
    };
    rep.check(fx, "|G'| = p^3, |G| = p^4", gp.order() == (p as usize).pow(3) && g.order() == (p as usize).pow(4), "");
    rep.check(fx, "beta_G' = 1, beta_G = 3", gp.beta() == Ok(1) && g.beta() == Ok(3), "");
    let sigma = spec.generator("sigma").unwrap();
    let line =
        |c: u32| LinearForm::new(&ring, vec![f.mul(f.from_int(c as i64), beta), Fe::ZERO, Fe::ONE, Fe::ZERO]).unwrap();
    let expected = DifferentCertificate::new("A/R", (0..p).map(|c| (line(c), p - 1)));
    match ramification::different_a_over_r(&g, &gp) {
        Ok(q) => rep.check(
            fx,
            "Delta(A/R) = (x3 (x3 + b x1) ... (x3 + (p-1) b x1))^(p-1)",
            q.a_over_r == expected && q.g_invariant,
            q.a_over_r.to_string(),
        ),
        Err(e) => rep.fail(fx, "Delta(A/R)", e),
    }
    match ramification::different_special_formulas(&g, &gp, sigma) {
        Ok(s) => rep.check(
            fx,
            "closed forms agree",
            s.product_form == expected && s.ppoly_form.proportional(&expected.expand(&ring)),
            s.ppoly_form.to_string(),
        ),
        Err(e) => rep.fail(fx, "closed forms", e),
    }
    // a = y^p - β^{p-1} x1^{p-1} y - λ x2^p + μ x1^{p-1} x2
    let bp = f.pow(beta, pu - 1);
    let asum = (1..p).fold(Fe::ZERO, |s, i| f.add(s, f.pow(alpha, i as u64)));
    let lambda = f.div(f.sub(bp, Fe::ONE), asum).unwrap();
    let mu = f.mul(f.add(Fe::ONE, asum), lambda);
    let pm = p - 1;
    let a = Poly::from_terms(
        &ring,
        [
            (Monomial(vec![0, 0, 0, p]), Fe::ONE),
            (Monomial(vec![pm, 0, 0, 1]), f.neg(bp)),
            (Monomial(vec![0, p, 0, 0]), f.neg(lambda)),
            (Monomial(vec![pm, 1, 0, 0]), mu),
        ],
    );
    let x1 = Poly::var(&ring, 0);
    let x3 = Poly::var(&ring, 2);
    let sa = &sigma.act(&a) - &a;
    let want_sa = &x3.pow(pu) - &(&x1.pow(pu - 1) * &x3).scale(bp);
    rep.check(fx, "a is G'-invariant", gp.fixes(&a), a.to_string());
    rep.check(fx, "sigma(a) - a = x3^p - b^(p-1) x1^(p-1) x3", sa == want_sa, sa.to_string());
    let ap = invariants::invariant_space(&gp, p);
    let rp = invariants::invariant_space(&g, p);
    let k13 = MonomialBasis::in_vars(4, p, &[0, 2]).len();
    let reduces = ap.iter().all(|s| {
        let c = s.coeff(&Monomial(vec![0, 0, 0, p]));
        let rest = s - &a.scale(c);
        !rest.involves(1) && !rest.involves(3)
    });
    rep.check(
        fx,
        "A_p = k a + k[x1,x3]_p",
        rp.len() == k13 && ap.len() == k13 + 1 && reduces,
        format!("dim A_p {}, dim R_p {}", ap.len(), rp.len()),
    );
    match ramification::split_test(&g, &gp, sigma, None) {
        Ok(v) => rep.check(
            fx,
            "split, d_min = p, deg Delta = p(p-1)",
            v.is_split && v.d_min == p && v.deg_different == pu * (pu - 1),
            format!("d_min {}, deg {}", v.d_min, v.deg_different),
        ),
        Err(e) => rep.fail(fx, "split test", e),
    }
    let ra = invariants::minimal_generators(&gp, None);
    let rr = invariants::minimal_generators(&g, None);
    rep.check(
        fx,
        "A degrees {1,1,p,p^2}, R degrees {1,1,p^2,p^2}",
        ra.certified_complete
            && rr.certified_complete
            && sorted(ra.degrees.clone()) == vec![1, 1, p, p * p]
            && sorted(rr.degrees.clone()) == vec![1, 1, p * p, p * p],
        format!("{:?} / {:?}", ra.degrees, rr.degrees),
    );
    let y = Poly::var(&ring, 3);
    let oy = invariants::orbit_product(&gp, &y);
    rep.check(fx, "deg Pi_G'(y) = p^2", oy.degree() == Some(pu * pu), "");
    match ramification::no_linear_orbit_witness(&g, &gp, sigma, false, DEFAULT_ENUMERATION_CAP) {
        Ok(o) => rep.check(
            fx,
            "no linear orbit witness",
            o.none_exists,
            format!("{} classes rejected by orbit size", o.rejected_by_orbit_size),
        ),
        Err(e) => rep.fail(fx, "orbit witness", e),
    }
}

fn closing_diagram(rep: &mut VerifyReport, p: u32) {
    let fx = format!("main_p{p}.spec");
    let fx = fx.as_str();
    let spec = match load_fixture(fx) {
        Ok(s) => s,
        Err(e) => return rep.fail(fx, "load", e),
    };
    let ring = spec.ring.clone();
    let mut groups: HashMap<&str, Group> = HashMap::new();
    for (name, words) in [
        ("G", &["tau1", "tau2", "tau3", "sigma"][..]),
        ("A", &["tau1", "tau2", "tau3"][..]),
        ("B", &["tau1", "tau2", "sigma"][..]),
        ("C", &["tau1", "tau2"][..]),
        ("C1", &["tau1"][..]),
    ] {
        match group_of(&spec, words) {
            Ok(g) => {
                groups.insert(name, g);
            }
            Err(e) => return rep.fail(fx, "closing diagram groups", e),
        }
    }
    let trivial = Group::trivial(&ring);
    let gen = |n: &str| spec.generator(n).unwrap().clone();
    let c1 = invariants::invariant_space(&groups["C"], 1);
    let b1 = invariants::invariant_space(&groups["B"], 1);
    rep.check(fx, "dim C_1 = 2 and B_1 = C_1", c1.len() == 2 && b1 == c1, format!("dim C_1 {}", c1.len()));
    let steps: [(&str, &Group, &Group, String, bool); 6] = [
        ("R in A", &groups["G"], &groups["A"], "sigma".into(), true),
        ("A in C", &groups["A"], &groups["C"], "tau3".into(), true),
        ("R in B", &groups["G"], &groups["B"], "tau3".into(), true),
        ("B in C", &groups["B"], &groups["C"], "sigma".into(), false),
        ("C in S^<tau1>", &groups["C"], &groups["C1"], "tau2".into(), true),
        ("S^<tau1> in S", &groups["C1"], &trivial, "tau1".into(), true),
    ];
    let mut chain_split = true;
    for (name, g, gp, coset, expect_split) in steps {
        match ramification::split_test(g, gp, &gen(&coset), None) {
            Ok(v) => {
                if name.contains("S^<tau1>") {
                    chain_split &= v.is_split;
                    continue;
                }
                let mut detail = format!("d_min {}, deg Delta {}", v.d_min, v.deg_different);
                if name == "B in C" {
                    let x3 = Poly::var(&ring, 2);
                    let ok = v.different.expand(&ring) == x3.pow(p as u64 - 1) && v.relation == Ordering::Less;
                    rep.check(fx, "Delta(C/B) = x3^(p-1)", ok, v.different.to_string());
                    detail.push_str(&format!(", B_1 = C_1 forces d_min > 1: {}", v.d_min > 1));
                }
                let verdict = if expect_split { "split" } else { "non-split" };
                rep.check(fx, &format!("{name} {verdict}"), v.is_split == expect_split, detail);
            }
            Err(e) => rep.fail(fx, name, e),
        }
    }
    let c_ring = invariants::minimal_generators(&groups["C"], None);
    rep.check(
        fx,
        "C in S split",
        chain_split && c_ring.certified_complete,
        format!("composition steps split: {chain_split}, C polynomial: {}", c_ring.certified_complete),
    );
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_fixtures_parse() {
        for (name, _) in BUNDLED {
            load_fixture(name).unwrap();
        }
    }

    #[test]
    fn p2_examples_pass() {
        let rep = verify_examples(Some(2));
        assert!(rep.all_passed(), "{}", rep.render());
    }

    #[test]
    fn p3_examples_pass() {
        let rep = verify_examples(Some(3));
        assert!(rep.all_passed(), "{}", rep.render());
    }
}
