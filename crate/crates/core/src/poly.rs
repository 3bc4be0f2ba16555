//! Sparse multivariate polynomials over a finite field.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose order is graded
//! lexicographic with `x_n > x_{n-1} > ... > x_1`. The leading term is the last
//! entry of the map.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use thiserror::Error;

use crate::field::{Fe, Field};

/// Hard cap on total degrees produced by multiplication and powering.
pub const MAX_DEGREE: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("not divisible")]
    NotDivisible,
    #[error("x{var} occurs with exponent {exponent}, which is not a power of p")]
    NotPPoly { var: usize, exponent: u32 },
    #[error("linear form involves the decomposition variable x{0}")]
    FormInvolvesVariable(usize),
    #[error("the zero linear form has no pivot")]
    ZeroForm,
    #[error("expected {expected} coefficients, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("polynomial is not a linear form")]
    NotLinear,
}

/// The ambient ring `k[x_1, ..., x_n]`: field, variable count and display names.
pub struct Ring {
    field: Arc<Field>,
    n: usize,
    names: Vec<String>,
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[{}]", self.field, self.names.join(", "))
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && *self.field == *other.field
    }
}

impl Ring {
    pub fn new(field: Arc<Field>, n: usize) -> Arc<Ring> {
        let names = (1..=n).map(|i| format!("x{i}")).collect();
        Arc::new(Ring { field, n, names })
    }

    pub fn with_names(field: Arc<Field>, names: Vec<String>) -> Arc<Ring> {
        Arc::new(Ring { field, n: names.len(), names })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn field_arc(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }
}

fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Exponent vector of length `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Monomial {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Monomial {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone)]
pub struct Poly {
    ring: Arc<Ring>,
    terms: BTreeMap<Monomial, Fe>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        for (m, c) in &self.terms {
            m.hash(state);
            c.hash(state);
        }
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Poly {
    pub fn zero(ring: &Arc<Ring>) -> Poly {
        Poly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Arc<Ring>, c: Fe) -> Poly {
        Poly::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<Ring>) -> Poly {
        Poly::constant(ring, Fe::ONE)
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Poly {
        Poly::monomial(ring, Monomial::var(ring.nvars(), i), Fe::ONE)
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: Fe) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { ring: ring.clone(), terms }
    }

    /// Sums duplicate monomials and drops zeros.
    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = (Monomial, Fe)>) -> Poly {
        let field = ring.field();
        let mut map: BTreeMap<Monomial, Fe> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.0.len(), ring.nvars(), "monomial arity");
            let e = map.entry(m).or_insert(Fe::ZERO);
            *e = field.add(*e, c);
        }
        map.retain(|_, c| !c.is_zero());
        Poly { ring: ring.clone(), terms: map }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn field(&self) -> &Field {
        self.ring.field()
    }

    pub fn check_same_ring(&self, other: &Poly) -> Result<(), PolyError> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Fe)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> Fe {
        self.terms.get(m).copied().unwrap_or(Fe::ZERO)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, Fe)> {
        self.terms.iter().next_back().map(|(m, c)| (m, *c))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// Largest exponent of `x_var` occurring in the polynomial.
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.degree_in(var) > 0
    }

    pub fn homogeneous_component(&self, d: u64) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), *c)).collect(),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert!(same_ring(&self.ring, &other.ring), "ring mismatch");
        let field = self.field();
        let mut terms = self.terms.clone();
        for (m, &c) in &other.terms {
            match terms.get_mut(m) {
                Some(e) => {
                    *e = field.add(*e, c);
                    if e.is_zero() {
                        terms.remove(m);
                    }
                }
                None => {
                    terms.insert(m.clone(), c);
                }
            }
        }
        Poly { ring: self.ring.clone(), terms }
    }

    pub fn neg(&self) -> Poly {
        let field = self.field();
        Poly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, &c)| (m.clone(), field.neg(c))).collect() }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Fe) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        let field = self.field();
        Poly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, &a)| (m.clone(), field.mul(a, c))).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert!(same_ring(&self.ring, &other.ring), "ring mismatch");
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.ring);
        }
        let deg = self.degree().unwrap_or(0) + other.degree().unwrap_or(0);
        assert!(deg <= MAX_DEGREE, "degree {deg} exceeds the cap {MAX_DEGREE}");
        let field = self.field();
        let mut acc: HashMap<Monomial, Fe> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &other.terms {
                let e = acc.entry(ma.mul(mb)).or_insert(Fe::ZERO);
                *e = field.add(*e, field.mul(ca, cb));
            }
        }
        Poly { ring: self.ring.clone(), terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: Fe) -> Poly {
        let field = self.field();
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter_map(|(mm, &a)| {
                    let v = field.mul(a, c);
                    (!v.is_zero()).then(|| (mm.mul(m), v))
                })
                .collect(),
        }
    }

    pub fn pow(&self, e: u64) -> Poly {
        if e == 0 {
            return Poly::one(&self.ring);
        }
        if let Some(d) = self.degree() {
            assert!(d.saturating_mul(e) <= MAX_DEGREE, "degree exceeds the cap {MAX_DEGREE}");
        }
        let mut result = Poly::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Ring homomorphism sending `x_i` to `images[i]`.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.ring.nvars());
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|g| vec![Poly::one(&self.ring), g.clone()]).collect();
        let mut out = Poly::zero(&self.ring);
        for (m, &c) in &self.terms {
            let mut term = Poly::constant(&self.ring, c);
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][e as usize]);
            }
            out = out.add(&term);
        }
        out
    }

    /// Exact quotient `self / g`, by leading-term reduction.
    pub fn divide_exact(&self, g: &Poly) -> Result<Poly, PolyError> {
        self.check_same_ring(g)?;
        let (lm, lc) = match g.leading_term() {
            Some((m, c)) => (m.clone(), c),
            None => return Err(PolyError::ZeroDivisor),
        };
        let field = self.field();
        let lc_inv = field.inv(lc).expect("nonzero leading coefficient");
        let mut rem = self.clone();
        let mut quotient = Poly::zero(&self.ring);
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(m) {
                return Err(PolyError::NotDivisible);
            }
            let qm = lm.quotient_of(m);
            let qc = field.mul(c, lc_inv);
            rem = rem.sub(&g.mul_monomial(&qm, qc));
            quotient.terms.insert(qm, qc);
        }
        Ok(quotient)
    }

    /// Returns the nonzero scalar `c` with `self = c * other`, if one exists.
    pub fn scalar_ratio(&self, other: &Poly) -> Option<Fe> {
        if self.is_zero() || other.is_zero() || self.terms.len() != other.terms.len() {
            return None;
        }
        let field = self.field();
        let (m, c) = self.leading_term()?;
        let d = other.coeff(m);
        if d.is_zero() {
            return None;
        }
        let ratio = field.div(c, d).ok()?;
        (other.scale(ratio) == *self).then_some(ratio)
    }

    /// Equality up to a nonzero scalar factor.
    pub fn proportional(&self, other: &Poly) -> bool {
        (self.is_zero() && other.is_zero()) || self.scalar_ratio(other).is_some()
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(self.field().inv(c).unwrap()),
        }
    }

    pub fn to_linear_form(&self) -> Result<LinearForm, PolyError> {
        let n = self.ring.nvars();
        let mut coeffs = vec![Fe::ZERO; n];
        for (m, &c) in &self.terms {
            if m.degree() != 1 {
                return Err(PolyError::NotLinear);
            }
            let i = m.0.iter().position(|&e| e == 1).unwrap();
            coeffs[i] = c;
        }
        LinearForm::new(&self.ring, coeffs)
    }

    pub fn p_poly_decompose(&self, var: usize) -> Result<PPolyDecomposition, PolyError> {
        let p = self.field().characteristic();
        let mut by_ppower: BTreeMap<u32, BTreeMap<Monomial, Fe>> = BTreeMap::new();
        let mut free = BTreeMap::new();
        for (m, &c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                free.insert(m.clone(), c);
                continue;
            }
            let level = p_power_level(e, p).ok_or(PolyError::NotPPoly { var: var + 1, exponent: e })?;
            let mut rest = m.clone();
            rest.0[var] = 0;
            by_ppower.entry(level).or_default().insert(rest, c);
        }
        Ok(PPolyDecomposition {
            var,
            coefficients: by_ppower
                .into_iter()
                .map(|(e, terms)| (e, Poly { ring: self.ring.clone(), terms }))
                .collect(),
            free_part: Poly { ring: self.ring.clone(), terms: free },
        })
    }

    fn format_coeff(&self, c: Fe, with_monomial: bool) -> String {
        let field = self.field();
        let s = field.format(c);
        if with_monomial {
            if c == Fe::ONE {
                String::new()
            } else if field.needs_parens(c) {
                format!("({s})*")
            } else {
                format!("{s}*")
            }
        } else if field.needs_parens(c) && self.terms.len() > 1 {
            format!("({s})")
        } else {
            s
        }
    }

    fn format_monomial(&self, m: &Monomial) -> String {
        m.0.iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { self.ring.name(i).to_string() } else { format!("{}^{}", self.ring.name(i), e) })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// `Some(j)` when `e == p^j`.
fn p_power_level(mut e: u32, p: u32) -> Option<u32> {
    let mut level = 0;
    while e > 1 {
        if !e.is_multiple_of(p) {
            return None;
        }
        e /= p;
        level += 1;
    }
    (e == 1).then_some(level)
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(m, &c)| {
                if m.degree() == 0 {
                    self.format_coeff(c, false)
                } else {
                    format!("{}{}", self.format_coeff(c, true), self.format_monomial(m))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl std::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        Poly::add(self, rhs)
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        Poly::sub(self, rhs)
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        Poly::mul(self, rhs)
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}

/// A nonzero element of S_1, stored as its coefficient vector.
#[derive(Clone)]
pub struct LinearForm {
    ring: Arc<Ring>,
    coeffs: Vec<Fe>,
}

impl PartialEq for LinearForm {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for LinearForm {}

impl Hash for LinearForm {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl PartialOrd for LinearForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Compares by pivot first, then by coefficients from the top variable down.
impl Ord for LinearForm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.pivot().cmp(&other.pivot()).then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl fmt::Debug for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

impl LinearForm {
    pub fn new(ring: &Arc<Ring>, coeffs: Vec<Fe>) -> Result<LinearForm, PolyError> {
        if coeffs.len() != ring.nvars() {
            return Err(PolyError::Arity { expected: ring.nvars(), got: coeffs.len() });
        }
        if coeffs.iter().all(|c| c.is_zero()) {
            return Err(PolyError::ZeroForm);
        }
        Ok(LinearForm { ring: ring.clone(), coeffs })
    }

    /// Like [`LinearForm::new`] but maps the zero vector to `None`.
    pub fn nonzero(ring: &Arc<Ring>, coeffs: Vec<Fe>) -> Option<LinearForm> {
        LinearForm::new(ring, coeffs).ok()
    }

    pub fn variable(ring: &Arc<Ring>, i: usize) -> LinearForm {
        let mut coeffs = vec![Fe::ZERO; ring.nvars()];
        coeffs[i] = Fe::ONE;
        LinearForm { ring: ring.clone(), coeffs }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs[i]
    }

    /// Largest (0-based) index with a nonzero coefficient.
    pub fn pivot(&self) -> usize {
        self.coeffs.iter().rposition(|c| !c.is_zero()).expect("nonzero form")
    }

    pub fn involves(&self, i: usize) -> bool {
        !self.coeffs[i].is_zero()
    }

    /// The scalar multiple whose pivot coefficient is 1.
    pub fn normalize(&self) -> LinearForm {
        let field = self.ring.field();
        let inv = field.inv(self.coeffs[self.pivot()]).unwrap();
        LinearForm { ring: self.ring.clone(), coeffs: self.coeffs.iter().map(|&c| field.mul(c, inv)).collect() }
    }

    pub fn is_normalized(&self) -> bool {
        self.coeffs[self.pivot()] == Fe::ONE
    }

    pub fn proportional(&self, other: &LinearForm) -> bool {
        self.normalize() == other.normalize()
    }

    pub fn scale(&self, c: Fe) -> Option<LinearForm> {
        let field = self.ring.field();
        LinearForm::nonzero(&self.ring, self.coeffs.iter().map(|&a| field.mul(a, c)).collect())
    }

    pub fn to_poly(&self) -> Poly {
        let n = self.ring.nvars();
        Poly::from_terms(&self.ring, self.coeffs.iter().enumerate().map(|(i, &c)| (Monomial::var(n, i), c)))
    }

    /// `l^(p^e)`, computed coefficientwise through Frobenius.
    pub fn frobenius_power(&self, e: u32) -> Poly {
        let field = self.ring.field();
        let p = field.characteristic() as u64;
        let q = p.pow(e);
        let n = self.ring.nvars();
        Poly::from_terms(
            &self.ring,
            self.coeffs.iter().enumerate().map(|(i, &c)| {
                let mut m = Monomial::one(n);
                m.0[i] = q as u32;
                (m, field.pow(c, q))
            }),
        )
    }
}

/// Decomposition `f = free + sum_e f_{p^e} * x_var^{p^e}` where no `f_{p^e}`
/// and no term of `free` involves `x_var`.
#[derive(Clone, Debug, PartialEq)]
pub struct PPolyDecomposition {
    pub var: usize,
    /// e -> f_{p^e}
    pub coefficients: BTreeMap<u32, Poly>,
    /// Terms free of `x_var`; zero for a genuine p-polynomial.
    pub free_part: Poly,
}

impl PPolyDecomposition {
    pub fn coefficient(&self, e: u32) -> Option<&Poly> {
        self.coefficients.get(&e)
    }

    pub fn reassemble(&self) -> Poly {
        let ring = self.free_part.ring().clone();
        let p = ring.field().characteristic() as u64;
        let n = ring.nvars();
        let mut out = self.free_part.clone();
        for (&e, f) in &self.coefficients {
            let mut m = Monomial::one(n);
            m.0[self.var] = p.pow(e) as u32;
            out = out.add(&f.mul_monomial(&m, Fe::ONE));
        }
        out
    }

    /// `sum_e l^{p^e} f_{p^e}`: the value of `(sigma - 1) f` for the substitution
    /// `x_var -> x_var + l` fixing every other variable.
    pub fn apply_sigma_minus_one(&self, l: &LinearForm) -> Result<Poly, PolyError> {
        if l.involves(self.var) {
            return Err(PolyError::FormInvolvesVariable(self.var + 1));
        }
        let ring = self.free_part.ring();
        let mut out = Poly::zero(ring);
        for (&e, f) in &self.coefficients {
            out = out.add(&l.frobenius_power(e).mul(f));
        }
        Ok(out)
    }
}
