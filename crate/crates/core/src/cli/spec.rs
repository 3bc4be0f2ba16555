//! Group-spec files.
//!
//! ```text
//! [field]
//! p = 2
//! k = 6
//! modulus = [1, 1, 0, 1, 1, 0, 1]   # optional, low to high, monic
//!
//! [ring]
//! n = 4
//! names = x1, x2, x3, y             # optional
//!
//! [scalars]
//! alpha = t^21
//!
//! [generator tau2]
//! x1 = [1, 0, 0, 0]
//! x2 = [alpha, 1, 0, 0]
//! x3 = [0, 0, 1, 0]
//! y  = [1, 0, 0, 1]
//!
//! [options]
//! gprime = tau1, tau2, sigma*tau3   # words compose right to left
//! ```
//!
//! Row `x_i = [c_1, ..., c_n]` lists the coefficients of `g(x_i)`. Entries are
//! integers, coefficient lists `[c_0, c_1, ...]` in `t`, scalar names, or
//! expressions combining them with `+ - * / ^` and parentheses.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::field::{Fe, Field, FieldSpec};
use crate::group::{Group, GroupElement, DEFAULT_ORDER_CAP};
use crate::poly::Ring;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct SpecError {
    /// 1-based; 0 when the problem is not tied to a line.
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, SpecError> {
    Err(SpecError { line, message: message.into() })
}

#[derive(Clone, Debug)]
pub struct NamedGenerator {
    pub name: String,
    pub element: GroupElement,
    pub line: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpecOptions {
    /// Words generating G' (otherwise the penultimate series term).
    pub gprime: Option<Vec<String>>,
    /// Words generating G (otherwise all generators).
    pub group: Option<Vec<String>>,
    /// Coset generator for the G' step.
    pub sigma: Option<String>,
    pub degree_cap: Option<u32>,
    pub order_cap: Option<usize>,
    pub full_field: bool,
}

#[derive(Clone, Debug)]
pub struct GroupSpecFile {
    pub ring: Arc<Ring>,
    pub scalars: Vec<(String, Fe)>,
    pub generators: Vec<NamedGenerator>,
    pub options: SpecOptions,
}

impl GroupSpecFile {
    pub fn field(&self) -> &Field {
        self.ring.field()
    }

    pub fn generator(&self, name: &str) -> Option<&GroupElement> {
        self.generators.iter().find(|g| g.name == name).map(|g| &g.element)
    }

    /// Evaluates a word such as `sigma^2*tau3`, meaning `σ² ∘ τ₃`.
    pub fn word(&self, word: &str) -> Result<GroupElement, SpecError> {
        let mut out = GroupElement::identity(&self.ring);
        for part in word.split('*').map(str::trim) {
            let (name, exp) = match part.split_once('^') {
                Some((nm, e)) => (
                    nm.trim(),
                    e.trim()
                        .parse::<u64>()
                        .map_err(|_| SpecError { line: 0, message: format!("bad exponent in `{part}`") })?,
                ),
                None => (part, 1),
            };
            let g = self
                .generator(name)
                .ok_or_else(|| SpecError { line: 0, message: format!("unknown generator `{name}`") })?;
            out = out.compose(&g.pow(exp));
        }
        Ok(out)
    }

    pub fn words(&self, words: &[String]) -> Result<Vec<GroupElement>, SpecError> {
        words.iter().map(|w| self.word(w)).collect()
    }

    pub fn order_cap(&self) -> usize {
        self.options.order_cap.unwrap_or(DEFAULT_ORDER_CAP)
    }

    /// G from the `group` option, or all generators.
    pub fn group(&self) -> Result<Group, crate::group::GroupError> {
        let gens = match &self.options.group {
            Some(words) => self.words(words).map_err(|e| crate::group::GroupError::Precondition(e.message))?,
            None => self.generators.iter().map(|g| g.element.clone()).collect(),
        };
        Group::enumerate(&self.ring, gens, self.order_cap())
    }
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

/// Splits on commas outside brackets and parentheses.
fn split_top(s: &str) -> Vec<&str> {
    let mut depth = 0i32;
    let mut start = 0;
    let mut out = Vec::new();
    for (i, ch) in s.char_indices() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

fn names_list(s: &str) -> Vec<String> {
    s.split(',').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect()
}

#[derive(Default)]
struct Raw {
    field: HashMap<String, (usize, String)>,
    ring: HashMap<String, (usize, String)>,
    scalars: Vec<(usize, String, String)>,
    generators: Vec<(usize, String, Vec<(usize, String, String)>)>,
    options: HashMap<String, (usize, String)>,
}

pub fn parse_spec(text: &str) -> Result<GroupSpecFile, SpecError> {
    let mut raw = Raw::default();
    let mut section: Option<String> = None;
    for (idx, full) in text.lines().enumerate() {
        let ln = idx + 1;
        let line = strip_comment(full);
        if line.is_empty() {
            continue;
        }
        if let Some(head) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            let head = head.trim();
            if let Some(name) = head.strip_prefix("generator") {
                let name = name.trim();
                if name.is_empty() || name.contains(|c: char| !(c.is_alphanumeric() || c == '_')) {
                    return err(ln, format!("bad generator name `{name}`"));
                }
                if raw.generators.iter().any(|(_, n, _)| n == name) {
                    return err(ln, format!("duplicate generator `{name}`"));
                }
                raw.generators.push((ln, name.to_string(), Vec::new()));
                section = Some("generator".into());
            } else if ["field", "ring", "scalars", "options"].contains(&head) {
                section = Some(head.to_string());
            } else {
                return err(ln, format!("unknown section [{head}]"));
            }
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return err(ln, "expected `key = value`");
        };
        let (key, value) = (key.trim().to_string(), value.trim().to_string());
        match section.as_deref() {
            None => return err(ln, "entry outside of any section"),
            Some("field") => {
                raw.field.insert(key, (ln, value));
            }
            Some("ring") => {
                raw.ring.insert(key, (ln, value));
            }
            Some("scalars") => raw.scalars.push((ln, key, value)),
            Some("options") => {
                raw.options.insert(key, (ln, value));
            }
            Some(_) => raw.generators.last_mut().unwrap().2.push((ln, key, value)),
        }
    }

    let int = |map: &HashMap<String, (usize, String)>, key: &str, sec: &str| -> Result<(usize, u64), SpecError> {
        let Some((ln, v)) = map.get(key) else {
            return err(0, format!("[{sec}] is missing `{key}`"));
        };
        v.parse::<u64>()
            .map(|x| (*ln, x))
            .map_err(|_| SpecError { line: *ln, message: format!("`{key}` must be a non-negative integer") })
    };
    let (pl, p) = int(&raw.field, "p", "field")?;
    let (kl, k) = int(&raw.field, "k", "field")?;
    let modulus = match raw.field.get("modulus") {
        None => None,
        Some((ln, v)) => {
            let body = v
                .strip_prefix('[')
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(|| SpecError { line: *ln, message: "modulus must be a list [c0, c1, ..., ck]".into() })?;
            let coeffs: Result<Vec<u32>, _> = split_top(body).iter().map(|c| c.parse::<u32>()).collect();
            Some(coeffs.map_err(|_| SpecError { line: *ln, message: "modulus coefficients must be integers".into() })?)
        }
    };
    let fspec = FieldSpec::new(p as u32, k as usize, modulus).map_err(|e| {
        let line = match e {
            crate::field::FieldError::NotPrime(_) => pl,
            crate::field::FieldError::ZeroDegree | crate::field::FieldError::TooLarge { .. } => kl,
            _ => raw.field.get("modulus").map_or(kl, |m| m.0),
        };
        SpecError { line, message: e.to_string() }
    })?;
    let field = Arc::new(Field::new(fspec));

    let (nl, n) = int(&raw.ring, "n", "ring")?;
    if n == 0 {
        return err(nl, "n must be positive");
    }
    let names = match raw.ring.get("names") {
        Some((ln, v)) => {
            let names = names_list(v);
            if names.len() != n as usize {
                return err(*ln, format!("expected {n} variable names, got {}", names.len()));
            }
            names
        }
        None => (1..=n).map(|i| format!("x{i}")).collect(),
    };
    for (i, a) in names.iter().enumerate() {
        if names[..i].contains(a) {
            return err(nl, format!("duplicate variable name `{a}`"));
        }
    }
    let ring = Ring::with_names(field.clone(), names.clone());

    let mut env: HashMap<String, Fe> = HashMap::new();
    let mut scalars = Vec::new();
    for (ln, name, value) in &raw.scalars {
        if name == "t"
            || names.contains(name)
            || !name.chars().all(|c| c.is_alphanumeric() || c == '_')
            || name.is_empty()
        {
            return err(*ln, format!("bad scalar name `{name}`"));
        }
        let v = eval(&field, &env, value).map_err(|m| SpecError { line: *ln, message: m })?;
        env.insert(name.clone(), v);
        scalars.push((name.clone(), v));
    }

    let mut generators = Vec::new();
    for (gl, name, rows) in &raw.generators {
        let mut mat: Vec<Option<Vec<Fe>>> = vec![None; n as usize];
        for (ln, var, value) in rows {
            let Some(i) = names.iter().position(|x| x == var) else {
                return err(*ln, format!("generator {name}: unknown variable `{var}`"));
            };
            if mat[i].is_some() {
                return err(*ln, format!("generator {name}: row for `{var}` given twice"));
            }
            let body = value.strip_prefix('[').and_then(|s| s.strip_suffix(']')).ok_or_else(|| SpecError {
                line: *ln,
                message: format!("generator {name}: row must be a list [c_1, ..., c_n]"),
            })?;
            let entries = split_top(body);
            if entries.len() != n as usize {
                return err(
                    *ln,
                    format!("generator {name}: row for `{var}` has {} entries, expected {n}", entries.len()),
                );
            }
            let row: Result<Vec<Fe>, String> = entries.iter().map(|e| eval(&field, &env, e)).collect();
            mat[i] = Some(row.map_err(|m| SpecError { line: *ln, message: format!("generator {name}: {m}") })?);
        }
        let mut full = Vec::new();
        for (i, r) in mat.into_iter().enumerate() {
            match r {
                Some(r) => full.push(r),
                None => return err(*gl, format!("generator {name}: missing row for `{}`", names[i])),
            }
        }
        let element = GroupElement::from_rows(&ring, &full).map_err(|e| {
            let line = match &e {
                crate::group::GroupError::NotUnitriangular { row, .. } => {
                    rows.iter().find(|(_, v, _)| *v == names[row - 1]).map_or(*gl, |r| r.0)
                }
                _ => *gl,
            };
            SpecError { line, message: format!("generator {name}: {e}") }
        })?;
        generators.push(NamedGenerator { name: name.clone(), element, line: *gl });
    }

    let mut options = SpecOptions::default();
    for (key, (ln, value)) in &raw.options {
        match key.as_str() {
            "gprime" => options.gprime = Some(names_list(value)),
            "group" => options.group = Some(names_list(value)),
            "sigma" => options.sigma = Some(value.clone()),
            "degree_cap" => {
                options.degree_cap = Some(
                    value
                        .parse()
                        .map_err(|_| SpecError { line: *ln, message: "degree_cap must be an integer".into() })?,
                )
            }
            "order_cap" => {
                options.order_cap = Some(
                    value
                        .parse()
                        .map_err(|_| SpecError { line: *ln, message: "order_cap must be an integer".into() })?,
                )
            }
            "full_field" => {
                options.full_field = value
                    .parse()
                    .map_err(|_| SpecError { line: *ln, message: "full_field must be true or false".into() })?
            }
            _ => return err(*ln, format!("unknown option `{key}`")),
        }
    }
    let spec = GroupSpecFile { ring, scalars, generators, options };
    for (key, words) in [("gprime", &spec.options.gprime), ("group", &spec.options.group)] {
        if let Some(words) = words {
            spec.words(words).map_err(|e| SpecError { line: raw.options[key].0, message: e.message })?;
        }
    }
    if let Some(w) = &spec.options.sigma {
        spec.word(w).map_err(|e| SpecError { line: raw.options["sigma"].0, message: e.message })?;
    }
    Ok(spec)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let txt: String = cs[st..i].iter().collect();
            out.push(Tok::Int(txt.parse().map_err(|_| format!("integer `{txt}` too large"))?));
        } else if c.is_alphabetic() || c == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*/^()[],".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(format!("unexpected character `{c}`"));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    field: &'a Field,
    env: &'a HashMap<String, Fe>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Fe, String> {
        let mut v = self.term()?;
        loop {
            if self.eat('+') {
                v = self.field.add(v, self.term()?);
            } else if self.eat('-') {
                v = self.field.sub(v, self.term()?);
            } else {
                return Ok(v);
            }
        }
    }

    fn term(&mut self) -> Result<Fe, String> {
        let mut v = self.unary()?;
        loop {
            if self.eat('*') {
                v = self.field.mul(v, self.unary()?);
            } else if self.eat('/') {
                v = self.field.div(v, self.unary()?).map_err(|e| e.to_string())?;
            } else {
                return Ok(v);
            }
        }
    }

    fn unary(&mut self) -> Result<Fe, String> {
        if self.eat('-') {
            return Ok(self.field.neg(self.unary()?));
        }
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            let Some(Tok::Int(e)) = self.peek().cloned() else {
                return Err("exponent must be an integer".into());
            };
            self.pos += 1;
            let v = self.field.pow(base, e as u64);
            return if neg { self.field.inv(v).map_err(|e| e.to_string()) } else { Ok(v) };
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Fe, String> {
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(self.field.from_int(v))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if name == "t" {
                    if self.field.degree() == 1 {
                        return Err("`t` is undefined over a prime field".into());
                    }
                    return Ok(self.field.t());
                }
                self.env.get(&name).copied().ok_or_else(|| format!("unknown scalar `{name}`"))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err("missing `)`".into());
                }
                Ok(v)
            }
            Some(Tok::Sym('[')) => {
                self.pos += 1;
                let mut coeffs = Vec::new();
                loop {
                    let Some(Tok::Int(c)) = self.peek().cloned() else {
                        return Err("coefficient lists hold non-negative integers only".into());
                    };
                    self.pos += 1;
                    coeffs.push(u32::try_from(c).map_err(|_| format!("coefficient {c} too large"))?);
                    if self.eat(']') {
                        break;
                    }
                    if !self.eat(',') {
                        return Err("expected `,` or `]` in coefficient list".into());
                    }
                }
                self.field.from_coeffs(&coeffs).map_err(|e| e.to_string())
            }
            Some(t) => Err(format!("unexpected token {t:?}")),
            None => Err("unexpected end of expression".into()),
        }
    }
}

/// Evaluates a scalar expression in the field.
pub fn eval(field: &Field, env: &HashMap<String, Fe>, s: &str) -> Result<Fe, String> {
    let mut p = Parser { toks: tokenize(s)?, pos: 0, field, env };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(format!("trailing input in `{s}`"));
    }
    Ok(v)
}
