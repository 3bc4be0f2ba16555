//! Finite unitriangular groups acting linearly on `S = k[x_1, ..., x_n]`.
//!
//! Every element is stored by the images of the variables: row `i` of the matrix
//! holds the coefficients of `g(x_i)`. Inputs must already be in the normal form
//! `g x_1 = x_1` and `g x_i - x_i` supported on `x_1, ..., x_{i-1}`, which makes
//! every group a p-group and every pseudo-reflection a transvection.
//!
//! Variable indices are 0-based in the API, while β values are reported 1-based
//! (β = 3 means `x_3`), matching the usual notation.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use thiserror::Error;

use crate::field::{Fe, Field};
use crate::linalg;
use crate::poly::{LinearForm, Poly, Ring};

pub const DEFAULT_ORDER_CAP: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("row {row}: {reason}")]
    NotUnitriangular { row: usize, reason: String },
    #[error("expected an {n}x{n} matrix")]
    Shape { n: usize },
    #[error("group order exceeds the cap of {cap} elements")]
    OrderCap { cap: usize },
    #[error("the identity is not a pseudo-reflection")]
    IdentityTransvection,
    #[error("element is not a pseudo-reflection")]
    NotPseudoReflection,
    #[error("group has no pseudo-reflections")]
    NoPseudoReflections,
    #[error("element does not belong to the group")]
    NotInGroup,
    #[error("group is not generated by its transvections")]
    NotTransvectionGenerated,
    #[error("group is trivial")]
    Trivial,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no factorization tau = sigma^k g found")]
    NoFactorization,
    #[error("composition series search failed")]
    SeriesSearchFailed,
}

#[derive(Clone)]
pub struct GroupElement {
    ring: Arc<Ring>,
    /// Row-major n x n, row i = coefficients of g(x_i).
    m: Vec<Fe>,
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m
    }
}

impl Eq for GroupElement {}

impl Hash for GroupElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.m.hash(state);
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.m.cmp(&other.m)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Lists the moved variables, e.g. `{x2 -> x2 + x1, x4 -> x4 + x3}`.
impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.ring.nvars();
        let moved: Vec<String> = (0..n)
            .filter(|&i| (0..n).any(|j| self.entry(i, j) != if i == j { Fe::ONE } else { Fe::ZERO }))
            .map(|i| format!("{} -> {}", self.ring.name(i), self.image(i)))
            .collect();
        if moved.is_empty() {
            write!(f, "id")
        } else {
            write!(f, "{{{}}}", moved.join(", "))
        }
    }
}

impl GroupElement {
    pub fn identity(ring: &Arc<Ring>) -> GroupElement {
        let n = ring.nvars();
        let mut m = vec![Fe::ZERO; n * n];
        for i in 0..n {
            m[i * n + i] = Fe::ONE;
        }
        GroupElement { ring: ring.clone(), m }
    }

    /// Builds an element from the coefficient rows of `g(x_1), ..., g(x_n)` and
    /// checks the unitriangular normal form.
    pub fn from_rows(ring: &Arc<Ring>, rows: &[Vec<Fe>]) -> Result<GroupElement, GroupError> {
        let n = ring.nvars();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(GroupError::Shape { n });
        }
        for (i, row) in rows.iter().enumerate() {
            if i == 0 && row.iter().enumerate().any(|(j, &c)| c != if j == 0 { Fe::ONE } else { Fe::ZERO }) {
                return Err(GroupError::NotUnitriangular {
                    row: 1,
                    reason: format!("{0} must be fixed (g {0} = {0})", ring.name(0)),
                });
            }
            if row[i] != Fe::ONE || row[i + 1..].iter().any(|c| !c.is_zero()) {
                return Err(GroupError::NotUnitriangular {
                    row: i + 1,
                    reason: format!("g {0} - {0} must be a combination of variables before {0}", ring.name(i)),
                });
            }
        }
        Ok(GroupElement { ring: ring.clone(), m: rows.concat() })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    fn n(&self) -> usize {
        self.ring.nvars()
    }

    fn field(&self) -> &Field {
        self.ring.field()
    }

    pub fn entry(&self, i: usize, j: usize) -> Fe {
        self.m[i * self.n() + j]
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        let n = self.n();
        &self.m[i * n..(i + 1) * n]
    }

    pub fn rows(&self) -> Vec<Vec<Fe>> {
        (0..self.n()).map(|i| self.row(i).to_vec()).collect()
    }

    /// g(x_i).
    pub fn image(&self, i: usize) -> LinearForm {
        LinearForm::new(&self.ring, self.row(i).to_vec()).expect("rows of an invertible matrix are nonzero")
    }

    pub fn is_identity(&self) -> bool {
        *self == GroupElement::identity(&self.ring)
    }

    /// `self ∘ h`: first h, then self, so `(self∘h)(x_i) = self(h(x_i))`.
    pub fn compose(&self, h: &GroupElement) -> GroupElement {
        let n = self.n();
        let field = self.field();
        let mut m = vec![Fe::ZERO; n * n];
        for i in 0..n {
            for j in 0..n {
                let c = h.m[i * n + j];
                if c.is_zero() {
                    continue;
                }
                for k in 0..n {
                    let a = self.m[j * n + k];
                    if !a.is_zero() {
                        m[i * n + k] = field.add(m[i * n + k], field.mul(c, a));
                    }
                }
            }
        }
        GroupElement { ring: self.ring.clone(), m }
    }

    /// Inverse by forward substitution on the lower-unitriangular matrix.
    pub fn inverse(&self) -> GroupElement {
        let n = self.n();
        let field = self.field();
        let mut inv = vec![Fe::ZERO; n * n];
        for i in 0..n {
            inv[i * n + i] = Fe::ONE;
            // row i of M^{-1}: solve sum_j inv[i][j] M[j] = e_i, entries j < i
            for j in (0..i).rev() {
                let mut s = Fe::ZERO;
                for k in j + 1..=i {
                    s = field.add(s, field.mul(inv[i * n + k], self.m[k * n + j]));
                }
                inv[i * n + j] = field.neg(s);
            }
        }
        GroupElement { ring: self.ring.clone(), m: inv }
    }

    pub fn pow(&self, k: u64) -> GroupElement {
        let mut r = GroupElement::identity(&self.ring);
        for _ in 0..k {
            r = r.compose(self);
        }
        r
    }

    /// Substitution `x_i -> g(x_i)`.
    pub fn act(&self, f: &Poly) -> Poly {
        let images: Vec<Poly> = (0..self.n()).map(|i| self.image(i).to_poly()).collect();
        f.substitute(&images)
    }

    pub fn act_linear(&self, l: &LinearForm) -> LinearForm {
        let n = self.n();
        let field = self.field();
        let mut out = vec![Fe::ZERO; n];
        for i in 0..n {
            let c = l.coeff(i);
            if !c.is_zero() {
                for (j, slot) in out.iter_mut().enumerate() {
                    *slot = field.add(*slot, field.mul(c, self.m[i * n + j]));
                }
            }
        }
        LinearForm::new(&self.ring, out).expect("invertible action keeps forms nonzero")
    }

    /// Coefficient vectors of `g x_i - x_i`.
    pub fn difference_rows(&self) -> Vec<Vec<Fe>> {
        let field = self.field();
        (0..self.n())
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r[i] = field.sub(r[i], Fe::ONE);
                r
            })
            .collect()
    }

    /// `(g - 1) l`, or `None` when g fixes l.
    pub fn difference_of(&self, l: &LinearForm) -> Option<LinearForm> {
        let field = self.field();
        let img = self.act_linear(l);
        LinearForm::nonzero(&self.ring, img.coeffs().iter().zip(l.coeffs()).map(|(&a, &b)| field.sub(a, b)).collect())
    }

    /// β_g, 1-based; `None` for the identity.
    pub fn beta(&self) -> Option<usize> {
        self.difference_rows().iter().filter_map(|r| r.iter().rposition(|c| !c.is_zero())).max().map(|j| j + 1)
    }

    /// Rank of `g - 1` on S_1.
    pub fn rank_minus_identity(&self) -> usize {
        let n = self.n();
        linalg::rank(self.field(), self.difference_rows(), n)
    }

    pub fn is_pseudo_reflection(&self) -> bool {
        self.rank_minus_identity() == 1
    }

    pub fn transvection_info(&self) -> Result<TransvectionInfo, GroupError> {
        if self.is_identity() {
            return Err(GroupError::IdentityTransvection);
        }
        if !self.is_pseudo_reflection() {
            return Err(GroupError::NotPseudoReflection);
        }
        let row = self.difference_rows().into_iter().find(|r| r.iter().any(|c| !c.is_zero())).unwrap();
        let line = LinearForm::new(&self.ring, row).unwrap().normalize();
        Ok(TransvectionInfo { element: self.clone(), beta: line.pivot() + 1, line })
    }

    /// True when `g` is the identity on the hyperplane of linear forms fixed by
    /// the transvection `sigma`, i.e. `g - 1 = φ_σ ⊗ w` for some form `w`.
    pub fn fixes_hyperplane_of(&self, sigma: &GroupElement) -> bool {
        let field = self.field();
        let ds = sigma.difference_rows();
        let dg = self.difference_rows();
        let Some(j) = ds.iter().position(|r| r.iter().any(|c| !c.is_zero())) else {
            return self.is_identity();
        };
        let pivot = ds[j].iter().rposition(|c| !c.is_zero()).unwrap();
        // φ_i is proportional to the pivot coefficient of (σ - 1) x_i.
        let phi_j = ds[j][pivot];
        (0..self.n()).all(|i| {
            let phi_i = ds[i][pivot];
            (0..self.n()).all(|k| field.mul(dg[i][k], phi_j) == field.mul(phi_i, dg[j][k]))
        })
    }

    /// True when `g x_i = x_i` for every `i != var`.
    pub fn fixes_all_but(&self, var: usize) -> bool {
        let n = self.n();
        (0..n)
            .filter(|&i| i != var)
            .all(|i| (0..n).all(|j| self.entry(i, j) == if i == j { Fe::ONE } else { Fe::ZERO }))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransvectionInfo {
    pub element: GroupElement,
    /// 1-based index of the largest variable in the image of `g - 1`.
    pub beta: usize,
    /// Normalized generator of the image of `g - 1` (pivot coefficient 1).
    pub line: LinearForm,
}

/// A fully enumerated finite group.
#[derive(Clone)]
pub struct Group {
    ring: Arc<Ring>,
    generators: Vec<GroupElement>,
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
    pseudo_reflections: Vec<TransvectionInfo>,
    cap: usize,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group(order {}, {} generators)", self.order(), self.generators.len())
    }
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Group {
    pub fn trivial(ring: &Arc<Ring>) -> Group {
        Group::from_closed(ring, Vec::new(), vec![GroupElement::identity(ring)], DEFAULT_ORDER_CAP)
    }

    /// Breadth-first closure of the generators under composition.
    pub fn enumerate(ring: &Arc<Ring>, generators: Vec<GroupElement>, cap: usize) -> Result<Group, GroupError> {
        for g in &generators {
            GroupElement::from_rows(ring, &g.rows())?;
        }
        let id = GroupElement::identity(ring);
        let mut seen: HashSet<GroupElement> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(e) = queue.pop_front() {
            for g in &generators {
                let next = e.compose(g);
                if !seen.contains(&next) {
                    if seen.len() >= cap {
                        return Err(GroupError::OrderCap { cap });
                    }
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
        let group = Group::from_closed(ring, generators, seen.into_iter().collect(), cap);
        debug_assert!(is_power_of(group.order() as u64, ring.field().characteristic() as u64));
        Ok(group)
    }

    fn from_closed(
        ring: &Arc<Ring>,
        generators: Vec<GroupElement>,
        mut elements: Vec<GroupElement>,
        cap: usize,
    ) -> Group {
        elements.sort();
        let index = elements.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        let pseudo_reflections = elements.iter().filter_map(|g| g.transvection_info().ok()).collect();
        Group { ring: ring.clone(), generators, elements, index, pseudo_reflections, cap }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    /// Elements in canonical (matrix-lexicographic) order; the identity is not necessarily first.
    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.index.contains_key(g)
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// The set 𝒫 of pseudo-reflections, in element order.
    pub fn pseudo_reflections(&self) -> &[TransvectionInfo] {
        &self.pseudo_reflections
    }

    /// β_G: the largest β over pseudo-reflections.
    pub fn beta(&self) -> Result<usize, GroupError> {
        self.pseudo_reflections.iter().map(|t| t.beta).max().ok_or(GroupError::NoPseudoReflections)
    }

    /// β_G, with 0 standing in for a group without pseudo-reflections.
    pub fn beta_or_zero(&self) -> usize {
        self.beta().unwrap_or(0)
    }

    pub fn subgroup(&self, gens: Vec<GroupElement>) -> Result<Group, GroupError> {
        if gens.iter().any(|g| !self.contains(g)) {
            return Err(GroupError::NotInGroup);
        }
        Group::enumerate(&self.ring, gens, self.cap)
    }

    pub fn is_subgroup_of(&self, other: &Group) -> bool {
        self.elements.iter().all(|g| other.contains(g))
    }

    /// Normality in `g`, checked on generators: `x h x^{-1} ∈ self` for generators x of g and h of self.
    pub fn is_normal_in(&self, g: &Group) -> bool {
        if !self.is_subgroup_of(g) {
            return false;
        }
        let conj_gens: Vec<&GroupElement> =
            if g.generators.is_empty() { g.elements.iter().collect() } else { g.generators.iter().collect() };
        let own_gens: Vec<&GroupElement> =
            if self.generators.is_empty() { self.elements.iter().collect() } else { self.generators.iter().collect() };
        conj_gens.iter().all(|x| {
            let xi = x.inverse();
            own_gens.iter().all(|h| self.contains(&x.compose(h).compose(&xi)))
        })
    }

    /// The subgroup generated by all pseudo-reflections.
    pub fn transvection_subgroup(&self) -> Group {
        let gens = self.pseudo_reflections.iter().map(|t| t.element.clone()).collect();
        Group::enumerate(&self.ring, gens, self.cap).expect("subgroup of an enumerated group")
    }

    pub fn is_transvection_generated(&self) -> bool {
        self.transvection_subgroup().order() == self.order()
    }

    /// The subgroup generated by transvections fixing every variable except `var`.
    pub fn subgroup_h(&self, var: usize) -> Group {
        let gens = self
            .pseudo_reflections
            .iter()
            .filter(|t| t.element.fixes_all_but(var))
            .map(|t| t.element.clone())
            .collect();
        Group::enumerate(&self.ring, gens, self.cap).expect("subgroup of an enumerated group")
    }

    /// Elements fixing the hyperplane of `sigma` pointwise. In coordinates where
    /// `sigma` moves only `x_v` this is `subgroup_h(v)`.
    pub fn subgroup_h_for(&self, sigma: &GroupElement) -> Group {
        self.subgroup_where(|g| g.fixes_hyperplane_of(sigma))
    }

    /// `{g | g l = l}`.
    pub fn stabilizer_of_form(&self, l: &LinearForm) -> Group {
        self.subgroup_where(|g| g.act_linear(l) == *l)
    }

    /// The elements satisfying `pred`, which must cut out a subgroup.
    pub fn subgroup_where(&self, pred: impl Fn(&GroupElement) -> bool) -> Group {
        let elements: Vec<GroupElement> = self.elements.iter().filter(|g| pred(g)).cloned().collect();
        let gens = elements.iter().filter(|g| !g.is_identity()).cloned().collect();
        let sub = Group::from_closed(&self.ring, gens, elements, self.cap);
        debug_assert!(sub.elements.iter().all(|a| sub.elements.iter().all(|b| sub.contains(&a.compose(b)))));
        sub
    }

    /// The orbit `{g s}` as a set, in first-seen element order.
    pub fn orbit(&self, s: &Poly) -> Vec<Poly> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for g in &self.elements {
            let img = g.act(s);
            if seen.insert(img.clone()) {
                out.push(img);
            }
        }
        out
    }

    pub fn orbit_linear(&self, l: &LinearForm) -> Vec<LinearForm> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for g in &self.elements {
            let img = g.act_linear(l);
            if seen.insert(img.clone()) {
                out.push(img);
            }
        }
        out
    }

    /// Whether `f` is fixed by every generator (or every element when there are no generators).
    pub fn fixes(&self, f: &Poly) -> bool {
        let gens: Vec<&GroupElement> =
            if self.generators.is_empty() { self.elements.iter().collect() } else { self.generators.iter().collect() };
        gens.iter().all(|g| g.act(f) == *f)
    }
}

fn is_power_of(mut m: u64, p: u64) -> bool {
    while m > 1 && m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}

/// `N` normal in `G`.
pub fn is_normal(n: &Group, g: &Group) -> bool {
    n.is_normal_in(g)
}

/// A chain `1 = G_0 ⊂ G_1 ⊂ ... ⊂ G_k = G` of transvection groups with cyclic
/// quotients of order p, each generated by the class of a transvection, and
/// non-decreasing β.
#[derive(Clone, Debug)]
pub struct CompositionSeries {
    pub chain: Vec<Group>,
    /// `witnesses[i]` generates `G_{i+1} / G_i`.
    pub witnesses: Vec<TransvectionInfo>,
}

impl CompositionSeries {
    pub fn len(&self) -> usize {
        self.witnesses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.witnesses.is_empty()
    }

    pub fn betas(&self) -> Vec<usize> {
        self.witnesses.iter().map(|w| w.beta).collect()
    }
}

/// Depth-first search over transvections in ascending β, backtracking when a
/// partial chain cannot be extended. Failed subgroups are memoized.
pub fn composition_series(g: &Group) -> Result<CompositionSeries, GroupError> {
    if !g.is_transvection_generated() {
        return Err(GroupError::NotTransvectionGenerated);
    }
    let p = g.ring.field().characteristic() as usize;
    let id_idx = g.index_of(&GroupElement::identity(&g.ring)).unwrap();
    let beta_of: Vec<Option<usize>> =
        g.elements.iter().map(|e| if e.is_pseudo_reflection() { e.beta() } else { None }).collect();
    let mut candidates: Vec<usize> = (0..g.order()).filter(|&i| beta_of[i].is_some()).collect();
    candidates.sort_by_key(|&i| (beta_of[i], i));
    let inverses: Vec<usize> = g.elements.iter().map(|e| g.index_of(&e.inverse()).unwrap()).collect();
    let mul = |a: usize, b: usize| g.index_of(&g.elements[a].compose(&g.elements[b])).unwrap();

    struct Search<'a> {
        p: usize,
        target: usize,
        candidates: &'a [usize],
        beta_of: &'a [Option<usize>],
        inverses: &'a [usize],
        failed: HashSet<Vec<usize>>,
    }

    fn dfs(
        s: &mut Search<'_>,
        mul: &dyn Fn(usize, usize) -> usize,
        current: Vec<usize>,
        gens: &mut Vec<usize>,
        chain: &mut Vec<Vec<usize>>,
    ) -> bool {
        if current.len() == s.target {
            return true;
        }
        if s.failed.contains(&current) {
            return false;
        }
        let members: HashSet<usize> = current.iter().copied().collect();
        let cur_beta = current.iter().filter_map(|&i| s.beta_of[i]).max().unwrap_or(0);
        let mut tried: HashSet<Vec<usize>> = HashSet::new();
        for ci in 0..s.candidates.len() {
            let tau = s.candidates[ci];
            if members.contains(&tau) {
                continue;
            }
            let tau_inv = s.inverses[tau];
            let normalizes = gens.iter().all(|&h| members.contains(&mul(mul(tau, h), tau_inv)));
            if !normalizes {
                continue;
            }
            let mut next: Vec<usize> = Vec::with_capacity(current.len() * s.p);
            let mut power = tau;
            next.extend(current.iter().copied());
            for _ in 1..s.p {
                next.extend(current.iter().map(|&h| mul(power, h)));
                power = mul(power, tau);
            }
            next.sort_unstable();
            next.dedup();
            if next.len() != current.len() * s.p || !tried.insert(next.clone()) {
                continue;
            }
            let next_beta = next.iter().filter_map(|&i| s.beta_of[i]).max().unwrap_or(0);
            if next_beta < cur_beta {
                continue;
            }
            gens.push(tau);
            chain.push(next.clone());
            if dfs(s, mul, next, gens, chain) {
                return true;
            }
            gens.pop();
            chain.pop();
        }
        s.failed.insert(current);
        false
    }

    let mut search = Search {
        p,
        target: g.order(),
        candidates: &candidates,
        beta_of: &beta_of,
        inverses: &inverses,
        failed: HashSet::new(),
    };
    let mut gens = Vec::new();
    let mut chain_idx = Vec::new();
    if !dfs(&mut search, &mul, vec![id_idx], &mut gens, &mut chain_idx) {
        return Err(GroupError::SeriesSearchFailed);
    }
    let mut chain = vec![Group::trivial(&g.ring)];
    let mut witnesses = Vec::new();
    for (i, members) in chain_idx.iter().enumerate() {
        let generators = gens[..=i].iter().map(|&j| g.elements[j].clone()).collect();
        let elements = members.iter().map(|&j| g.elements[j].clone()).collect();
        chain.push(Group::from_closed(&g.ring, generators, elements, g.cap));
        witnesses.push(g.elements[gens[i]].transvection_info().unwrap());
    }
    Ok(CompositionSeries { chain, witnesses })
}

/// Re-checks every series invariant from scratch, elementwise.
pub fn validate_series(g: &Group, series: &CompositionSeries) -> Result<(), String> {
    let p = g.ring.field().characteristic() as usize;
    let chain = &series.chain;
    if chain.len() != series.witnesses.len() + 1 {
        return Err("chain and witness lengths disagree".into());
    }
    if !chain[0].is_trivial() {
        return Err("G_0 is not trivial".into());
    }
    if chain.last().unwrap().elements != g.elements {
        return Err("G_k differs from G".into());
    }
    for i in 1..chain.len() {
        let (lo, hi) = (&chain[i - 1], &chain[i]);
        if hi.order() != p * lo.order() {
            return Err(format!("|G_{i}| != p |G_{}|", i - 1));
        }
        if !lo.is_subgroup_of(hi) {
            return Err(format!("G_{} not contained in G_{i}", i - 1));
        }
        for x in hi.elements() {
            let xi = x.inverse();
            if lo.elements().iter().any(|h| !lo.contains(&x.compose(h).compose(&xi))) {
                return Err(format!("G_{} not normal in G_{i}", i - 1));
            }
        }
        let tv = hi.elements().iter().filter(|e| e.is_pseudo_reflection()).cloned().collect();
        if Group::enumerate(&g.ring, tv, g.cap).map(|s| s.order()) != Ok(hi.order()) {
            return Err(format!("G_{i} not generated by transvections"));
        }
        let w = &series.witnesses[i - 1].element;
        if !w.is_pseudo_reflection() || !hi.contains(w) || lo.contains(w) {
            return Err(format!("witness {i} is not a transvection in G_{i} \\ G_{}", i - 1));
        }
        let b = |grp: &Group| {
            grp.elements().iter().filter(|e| e.is_pseudo_reflection()).filter_map(|e| e.beta()).max().unwrap_or(0)
        };
        if b(hi) < b(lo) {
            return Err(format!("beta decreases at step {i}"));
        }
    }
    Ok(())
}

/// `(G', σ)` from the last step of a series.
pub fn last_step_data(series: &CompositionSeries) -> Result<(Group, TransvectionInfo), GroupError> {
    let k = series.len();
    if k == 0 {
        return Err(GroupError::Trivial);
    }
    Ok((series.chain[k - 1].clone(), series.witnesses[k - 1].clone()))
}

/// Writes a transvection `tau ∉ G'` as `sigma^k ∘ g` with `1 <= k < p` and `g`
/// in H (fixing the hyperplane of `sigma`).
pub fn factor_outside_transvection(
    tau: &GroupElement,
    sigma: &GroupElement,
    gprime: &Group,
) -> Result<(u32, GroupElement), GroupError> {
    if !tau.is_pseudo_reflection() {
        return Err(GroupError::Precondition("tau is not a transvection".into()));
    }
    if gprime.contains(tau) {
        return Err(GroupError::Precondition("tau lies in G'".into()));
    }
    let beta_sigma = sigma.beta().ok_or_else(|| GroupError::Precondition("sigma is the identity".into()))?;
    if beta_sigma <= gprime.beta_or_zero() {
        return Err(GroupError::Precondition("beta_sigma must exceed beta_G'".into()));
    }
    let ring = tau.ring();
    let p = ring.field().characteristic();
    let sigma_inv = sigma.inverse();
    let mut sk_inv = GroupElement::identity(ring);
    for k in 1..p {
        sk_inv = sk_inv.compose(&sigma_inv);
        let g = sk_inv.compose(tau);
        if gprime.contains(&g) && g.fixes_hyperplane_of(sigma) {
            debug_assert_eq!(sigma.pow(k as u64).compose(&g), *tau);
            return Ok((k, g));
        }
    }
    Err(GroupError::NoFactorization)
}
