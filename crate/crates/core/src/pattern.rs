//! Indexed templates for rings and ideals, their text syntax, and their
//! expansion at concrete parameter values.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::monomial::Monomial;
use crate::ring::{Coeff, RewriteRule, Ring};

pub type Env = BTreeMap<String, i64>;

fn pattern_err(msg: impl Into<String>) -> Error {
    Error::Pattern(msg.into())
}

// ---------------------------------------------------------------- AST

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntExpr {
    Lit(i64),
    Name(String),
    Neg(Box<IntExpr>),
    Add(Box<IntExpr>, Box<IntExpr>),
    Sub(Box<IntExpr>, Box<IntExpr>),
    Mul(Box<IntExpr>, Box<IntExpr>),
}

impl IntExpr {
    pub fn name(s: &str) -> Self {
        IntExpr::Name(s.to_string())
    }

    pub fn eval(&self, env: &Env) -> Result<i64> {
        let ov = || pattern_err("integer overflow in index expression");
        Ok(match self {
            IntExpr::Lit(v) => *v,
            IntExpr::Name(n) => *env
                .get(n)
                .ok_or_else(|| pattern_err(format!("undefined index `{n}`")))?,
            IntExpr::Neg(a) => a.eval(env)?.checked_neg().ok_or_else(ov)?,
            IntExpr::Add(a, b) => a.eval(env)?.checked_add(b.eval(env)?).ok_or_else(ov)?,
            IntExpr::Sub(a, b) => a.eval(env)?.checked_sub(b.eval(env)?).ok_or_else(ov)?,
            IntExpr::Mul(a, b) => a.eval(env)?.checked_mul(b.eval(env)?).ok_or_else(ov)?,
        })
    }

    fn prec(&self) -> u8 {
        match self {
            IntExpr::Add(..) | IntExpr::Sub(..) => 1,
            IntExpr::Mul(..) => 2,
            IntExpr::Neg(_) => 3,
            IntExpr::Lit(_) | IntExpr::Name(_) => 4,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.prec() < min {
            write!(f, "(")?;
            self.fmt_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            IntExpr::Lit(v) => write!(f, "{v}"),
            IntExpr::Name(n) => write!(f, "{n}"),
            IntExpr::Neg(a) => {
                write!(f, "-")?;
                a.fmt_at(f, 3)
            }
            IntExpr::Add(a, b) | IntExpr::Sub(a, b) => {
                a.fmt_at(f, 1)?;
                write!(f, "{}", if matches!(self, IntExpr::Add(..)) { " + " } else { " - " })?;
                b.fmt_at(f, 2)
            }
            IntExpr::Mul(a, b) => {
                a.fmt_at(f, 2)?;
                write!(f, "*")?;
                b.fmt_at(f, 3)
            }
        }
    }

    fn fmt_exponent(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntExpr::Lit(v) if *v >= 0 => write!(f, "{v}"),
            IntExpr::Name(n) => write!(f, "{n}"),
            e => {
                write!(f, "(")?;
                e.fmt_at(f, 0)?;
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for IntExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CmpOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl CmpOp {
    fn as_str(self) -> &'static str {
        match self {
            CmpOp::Eq => "==",
            CmpOp::Ne => "!=",
            CmpOp::Lt => "<",
            CmpOp::Le => "<=",
            CmpOp::Gt => ">",
            CmpOp::Ge => ">=",
        }
    }

    fn from_sym(s: &str) -> Option<CmpOp> {
        Some(match s {
            "==" => CmpOp::Eq,
            "!=" => CmpOp::Ne,
            "<" => CmpOp::Lt,
            "<=" => CmpOp::Le,
            ">" => CmpOp::Gt,
            ">=" => CmpOp::Ge,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub lhs: IntExpr,
    pub op: CmpOp,
    pub rhs: IntExpr,
}

impl Comparison {
    pub fn eval(&self, env: &Env) -> Result<bool> {
        let (a, b) = (self.lhs.eval(env)?, self.rhs.eval(env)?);
        Ok(match self.op {
            CmpOp::Eq => a == b,
            CmpOp::Ne => a != b,
            CmpOp::Lt => a < b,
            CmpOp::Le => a <= b,
            CmpOp::Gt => a > b,
            CmpOp::Ge => a >= b,
        })
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.lhs, self.op.as_str(), self.rhs)
    }
}

/// `i, j in lo..hi`: every listed name ranges over the inclusive range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Binder {
    pub names: Vec<String>,
    pub lo: IntExpr,
    pub hi: IntExpr,
}

/// `for <binders> [if <guard>]`. The guard is a conjunction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comprehension {
    pub binders: Vec<Binder>,
    pub guard: Vec<Comparison>,
}

impl Comprehension {
    /// All environments extending `env` that satisfy the guard, in
    /// lexicographic order of the bound names.
    pub fn expand(&self, env: &Env) -> Result<Vec<Env>> {
        let mut envs = vec![env.clone()];
        for b in &self.binders {
            for name in &b.names {
                let mut next = Vec::new();
                for e in &envs {
                    let (lo, hi) = (b.lo.eval(e)?, b.hi.eval(e)?);
                    for v in lo..=hi {
                        let mut e2 = e.clone();
                        e2.insert(name.clone(), v);
                        next.push(e2);
                    }
                }
                envs = next;
            }
        }
        let mut out = Vec::with_capacity(envs.len());
        for e in envs {
            let mut ok = true;
            for c in &self.guard {
                if !c.eval(&e)? {
                    ok = false;
                    break;
                }
            }
            if ok {
                out.push(e);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Comprehension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "for ")?;
        for (i, b) in self.binders.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{} in {}..{}", b.names.join(", "), b.lo, b.hi)?;
        }
        if !self.guard.is_empty() {
            let g: Vec<String> = self.guard.iter().map(|c| c.to_string()).collect();
            write!(f, " if {}", g.join(" and "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    /// `X[index]^exp`.
    Var {
        name: String,
        index: IntExpr,
        exp: Option<IntExpr>,
    },
    /// `a^exp`: stands for every generator of a power of a named ideal.
    IdealPower { name: String, exp: Option<IntExpr> },
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let exp = match self {
            Factor::Var { name, index, exp } => {
                write!(f, "{name}[{index}]")?;
                exp
            }
            Factor::IdealPower { name, exp } => {
                write!(f, "{name}")?;
                exp
            }
        };
        if let Some(e) = exp {
            write!(f, "^")?;
            e.fmt_exponent(f)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermTemplate {
    pub coeff: Coeff,
    pub factors: Vec<Factor>,
}

impl TermTemplate {
    fn fmt_abs(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coeff.abs();
        if self.factors.is_empty() {
            return write!(f, "{c}");
        }
        if !c.is_one() {
            write!(f, "{c}*")?;
        }
        for (i, x) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }

    fn has_ideal_power(&self) -> bool {
        self.factors.iter().any(|x| matches!(x, Factor::IdealPower { .. }))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyTemplate(pub Vec<TermTemplate>);

impl fmt::Display for PolyTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.0.iter().enumerate() {
            let neg = t.coeff.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            t.fmt_abs(f)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleTemplate {
    pub lhs: Vec<Factor>,
    pub rhs: PolyTemplate,
    pub comp: Option<Comprehension>,
}

impl fmt::Display for RuleTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lhs: Vec<String> = self.lhs.iter().map(|x| x.to_string()).collect();
        write!(f, "{} -> {}", lhs.join("*"), self.rhs)?;
        if let Some(c) = &self.comp {
            write!(f, " {c}")?;
        }
        Ok(())
    }
}

/// `ring [R =] vars X[0..upper] [rules { ... }]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingTemplate {
    pub name: Option<String>,
    pub var: String,
    pub upper: IntExpr,
    pub rules: Vec<RuleTemplate>,
}

impl fmt::Display for RingTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ring ")?;
        if let Some(n) = &self.name {
            write!(f, "{n} = ")?;
        }
        write!(f, "vars {}[0..{}]", self.var, self.upper)?;
        if !self.rules.is_empty() {
            let r: Vec<String> = self.rules.iter().map(|r| r.to_string()).collect();
            write!(f, " rules {{ {} }}", r.join("; "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenTemplate {
    pub poly: PolyTemplate,
    pub comp: Option<Comprehension>,
}

impl fmt::Display for GenTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)?;
        if let Some(c) = &self.comp {
            write!(f, " {c}")?;
        }
        Ok(())
    }
}

/// `< g1, g2 for i in 0..N, ... >`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealTemplate(pub Vec<GenTemplate>);

impl fmt::Display for IdealTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "< >");
        }
        let g: Vec<String> = self.0.iter().map(|g| g.to_string()).collect();
        write!(f, "< {} >", g.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealDef {
    pub name: String,
    pub body: IdealTemplate,
}

impl fmt::Display for IdealDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ideal {} = {}", self.name, self.body)
    }
}

/// A family of rings and ideals indexed by the level `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub name: String,
    pub ring: RingTemplate,
    pub ideals: Vec<IdealDef>,
}

pub const LEVEL_PARAMETER: &str = "N";

impl FamilySpec {
    /// Parses a family body: one ring template followed by ideal
    /// definitions, separated by newlines or semicolons.
    pub fn parse(name: &str, body: &str) -> Result<FamilySpec> {
        let mut p = Parser::new(body)?;
        let spec = p.family_items(name)?;
        p.skip_separators();
        p.expect_eof()?;
        Ok(spec)
    }

    /// The ring template and ideal definitions, one per line.
    pub fn body_lines(&self) -> Vec<String> {
        let mut out = vec![self.ring.to_string()];
        out.extend(self.ideals.iter().map(|d| d.to_string()));
        out
    }
}

// ------------------------------------------------------- instantiation

/// Powers of named ideals, computed incrementally.
#[derive(Default, Debug)]
pub struct PowerCache {
    powers: BTreeMap<(String, u32), Ideal>,
}

impl PowerCache {
    pub fn power(&mut self, name: &str, base: &Ideal, n: u32) -> Result<Ideal> {
        if let Some(p) = self.powers.get(&(name.to_string(), n)) {
            return Ok(p.clone());
        }
        let below = (0..n)
            .rev()
            .find(|k| self.powers.contains_key(&(name.to_string(), *k)));
        let (mut k, mut cur) = match below {
            Some(k) => (k, self.powers[&(name.to_string(), k)].clone()),
            None => (0, Ideal::unit(base.ring())),
        };
        while k < n {
            cur = cur.product(base)?;
            k += 1;
            self.powers.insert((name.to_string(), k), cur.clone());
        }
        self.powers.insert((name.to_string(), n), cur.clone());
        Ok(cur)
    }
}

/// What templates can refer to while expanding.
pub struct Scope<'a> {
    pub ring: &'a Ring,
    pub var: &'a str,
    pub ideals: &'a BTreeMap<String, Ideal>,
    pub powers: &'a mut PowerCache,
}

fn eval_exp(e: &Option<IntExpr>, env: &Env) -> Result<u32> {
    match e {
        None => Ok(1),
        Some(e) => {
            let v = e.eval(env)?;
            u32::try_from(v).map_err(|_| pattern_err(format!("exponent {v} is negative")))
        }
    }
}

fn eval_var(scope_var: &str, n: u32, name: &str, index: &IntExpr, exp: &Option<IntExpr>, env: &Env) -> Result<Monomial> {
    if name != scope_var {
        return Err(pattern_err(format!("unknown variable family `{name}`")));
    }
    let i = index.eval(env)?;
    if i < 0 || i >= i64::from(n) {
        return Err(pattern_err(format!(
            "index {i} of {name} is out of the declared range 0..{}",
            i64::from(n) - 1
        )));
    }
    Ok(Monomial::var_pow(i as u32, eval_exp(exp, env)?))
}

fn monomial_of(var: &str, n: u32, factors: &[Factor], env: &Env) -> Result<Monomial> {
    let mut m = Monomial::one();
    for x in factors {
        match x {
            Factor::Var { name, index, exp } => m = m.mul(&eval_var(var, n, name, index, exp, env)?),
            Factor::IdealPower { name, .. } => {
                return Err(pattern_err(format!("ideal `{name}` cannot appear here")))
            }
        }
    }
    Ok(m)
}

impl Scope<'_> {
    /// Expands a polynomial template. A single term with ideal powers
    /// expands to one element per generator of the product of those powers.
    pub fn expand_poly(&mut self, poly: &PolyTemplate, env: &Env) -> Result<Vec<Element>> {
        let n = self.ring.num_vars();
        if poly.0.iter().any(TermTemplate::has_ideal_power) {
            if poly.0.len() != 1 {
                return Err(pattern_err("ideal powers are only allowed in single-term generators"));
            }
            let t = &poly.0[0];
            let mut acc = vec![Element::constant(self.ring, t.coeff.clone())];
            for x in &t.factors {
                let choices = match x {
                    Factor::Var { name, index, exp } => {
                        vec![self.ring.normal_form(&eval_var(self.var, n, name, index, exp, env)?)?]
                    }
                    Factor::IdealPower { name, exp } => {
                        let base = self
                            .ideals
                            .get(name)
                            .ok_or_else(|| pattern_err(format!("undefined ideal `{name}`")))?;
                        base.ring().ensure_same(self.ring)?;
                        let e = eval_exp(exp, env)?;
                        self.powers.power(name, base, e)?.generators().to_vec()
                    }
                };
                let mut next = Vec::with_capacity(acc.len() * choices.len());
                for a in &acc {
                    for c in &choices {
                        next.push(a.mul(c)?);
                    }
                }
                acc = next;
            }
            return Ok(acc);
        }
        let terms = poly
            .0
            .iter()
            .map(|t| Ok((t.coeff.clone(), monomial_of(self.var, n, &t.factors, env)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(vec![Element::from_terms(self.ring, terms)?])
    }

    pub fn instantiate_ideal(&mut self, body: &IdealTemplate, env: &Env) -> Result<Ideal> {
        let mut gens = Vec::new();
        for g in &body.0 {
            let envs = match &g.comp {
                Some(c) => c.expand(env)?,
                None => vec![env.clone()],
            };
            for e in envs {
                gens.extend(self.expand_poly(&g.poly, &e)?);
            }
        }
        Ideal::new(self.ring, gens)
    }
}

impl RingTemplate {
    pub fn num_vars(&self, env: &Env) -> Result<u32> {
        let hi = self.upper.eval(env)?;
        if hi < 0 {
            return Err(pattern_err(format!("variable range 0..{hi} is empty")));
        }
        u32::try_from(hi + 1).map_err(|_| pattern_err("too many variables"))
    }

    pub fn rewrite_rules(&self, env: &Env) -> Result<Vec<RewriteRule>> {
        let n = self.num_vars(env)?;
        let mut rules = Vec::new();
        for r in &self.rules {
            let envs = match &r.comp {
                Some(c) => c.expand(env)?,
                None => vec![env.clone()],
            };
            for e in envs {
                let lhs = monomial_of(&self.var, n, &r.lhs, &e)?;
                let rule = match r.rhs.0.as_slice() {
                    [] => RewriteRule::to_zero(lhs),
                    [t] if t.coeff.is_zero() => RewriteRule::to_zero(lhs),
                    [t] => RewriteRule::to_term(lhs, t.coeff.clone(), monomial_of(&self.var, n, &t.factors, &e)?),
                    _ => return Err(pattern_err(format!("rule `{r}` has more than one term on the right"))),
                };
                rules.push(rule);
            }
        }
        Ok(rules)
    }

    pub fn instantiate(&self, env: &Env) -> Result<Ring> {
        Ring::with_rules(self.num_vars(env)?, self.rewrite_rules(env)?)
    }
}

// --------------------------------------------------------------- lexer

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(i64),
    Sym(&'static str),
    Newline,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(v) => write!(f, "`{v}`"),
            Tok::Sym(s) => write!(f, "`{s}`"),
            Tok::Newline => write!(f, "end of line"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub line: u32,
    pub col: u32,
}

const SYMBOLS: [&str; 24] = [
    "->", "..", "==", "!=", "<=", ">=", "<", ">", "=", "[", "]", "(", ")", "{", "}", ",", ";", "+", "-", "*", "/",
    "^", ":", "!",
];

pub fn lex(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1u32, 1u32);
    while i < chars.len() {
        let c = chars[i];
        let start = (line, col);
        if c == '\n' {
            out.push(Token {
                tok: Tok::Newline,
                line,
                col,
            });
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let s: String = chars[i..].iter().take_while(|c| c.is_ascii_digit()).collect();
            i += s.len();
            col += s.len() as u32;
            Tok::Int(s.parse().map_err(|_| Error::Syntax {
                line: start.0,
                col: start.1,
                expected: "an integer that fits in 64 bits".into(),
                found: s.clone(),
            })?)
        } else if c.is_ascii_alphabetic() || c == '_' {
            let s: String = chars[i..]
                .iter()
                .take_while(|c| c.is_ascii_alphanumeric() || **c == '_')
                .collect();
            i += s.len();
            col += s.len() as u32;
            Tok::Ident(s)
        } else {
            let rest: String = chars[i..chars.len().min(i + 2)].iter().collect();
            match SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
                Some(s) => {
                    i += s.len();
                    col += s.len() as u32;
                    Tok::Sym(s)
                }
                None => {
                    return Err(Error::Syntax {
                        line,
                        col,
                        expected: "a token".into(),
                        found: format!("`{c}`"),
                    })
                }
            }
        };
        out.push(Token {
            tok,
            line: start.0,
            col: start.1,
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

// -------------------------------------------------------------- parser

/// Recursive-descent parser over the token stream. Newlines separate
/// statements; inside brackets they are skipped.
pub struct Parser {
    toks: Vec<Token>,
    pos: usize,
    skip_newlines: Vec<bool>,
    expected: BTreeSet<String>,
}

fn is_var_literal(s: &str) -> Option<(String, i64)> {
    let mut chars = s.chars();
    let first = chars.next()?;
    let rest: String = chars.collect();
    if first.is_ascii_uppercase() && !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit()) {
        Some((first.to_string(), rest.parse().ok()?))
    } else {
        None
    }
}

impl Parser {
    pub fn new(src: &str) -> Result<Self> {
        Ok(Parser {
            toks: lex(src)?,
            pos: 0,
            skip_newlines: vec![false],
            expected: BTreeSet::new(),
        })
    }

    fn skipping(&self) -> bool {
        *self.skip_newlines.last().unwrap()
    }

    fn index_at(&self, mut offset: usize) -> usize {
        let mut i = self.pos;
        loop {
            while self.skipping() && self.toks[i].tok == Tok::Newline {
                i += 1;
            }
            if offset == 0 || self.toks[i].tok == Tok::Eof {
                return i;
            }
            offset -= 1;
            i += 1;
        }
    }

    pub fn peek(&self) -> &Token {
        &self.toks[self.index_at(0)]
    }

    pub fn peek_nth(&self, n: usize) -> &Token {
        &self.toks[self.index_at(n)]
    }

    pub fn bump(&mut self) -> Token {
        let i = self.index_at(0);
        let t = self.toks[i].clone();
        if t.tok != Tok::Eof {
            self.pos = i + 1;
        }
        self.expected.clear();
        t
    }

    pub fn error(&self) -> Error {
        let t = self.peek();
        let expected: Vec<&str> = self.expected.iter().map(String::as_str).collect();
        Error::Syntax {
            line: t.line,
            col: t.col,
            expected: if expected.is_empty() {
                "a different token".into()
            } else {
                expected.join(" or ")
            },
            found: t.tok.to_string(),
        }
    }

    pub fn is_sym(&mut self, s: &'static str) -> bool {
        if self.peek().tok == Tok::Sym(s) {
            true
        } else {
            self.expected.insert(format!("`{s}`"));
            false
        }
    }

    pub fn eat_sym(&mut self, s: &'static str) -> bool {
        let ok = self.is_sym(s);
        if ok {
            self.bump();
        }
        ok
    }

    pub fn expect_sym(&mut self, s: &'static str) -> Result<()> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            Err(self.error())
        }
    }

    pub fn is_keyword(&mut self, kw: &str) -> bool {
        if matches!(&self.peek().tok, Tok::Ident(s) if s == kw) {
            true
        } else {
            self.expected.insert(format!("`{kw}`"));
            false
        }
    }

    pub fn eat_keyword(&mut self, kw: &str) -> bool {
        let ok = self.is_keyword(kw);
        if ok {
            self.bump();
        }
        ok
    }

    pub fn expect_keyword(&mut self, kw: &str) -> Result<()> {
        if self.eat_keyword(kw) {
            Ok(())
        } else {
            Err(self.error())
        }
    }

    pub fn expect_ident(&mut self) -> Result<String> {
        if let Tok::Ident(s) = &self.peek().tok {
            let s = s.clone();
            self.bump();
            Ok(s)
        } else {
            self.expected.insert("a name".into());
            Err(self.error())
        }
    }

    pub fn expect_int(&mut self) -> Result<i64> {
        if let Tok::Int(v) = self.peek().tok {
            self.bump();
            Ok(v)
        } else {
            self.expected.insert("an integer".into());
            Err(self.error())
        }
    }

    pub fn at_eof(&self) -> bool {
        self.peek().tok == Tok::Eof
    }

    pub fn expect_eof(&mut self) -> Result<()> {
        if self.at_eof() {
            Ok(())
        } else {
            self.expected.insert("end of input".into());
            Err(self.error())
        }
    }

    /// Skips newlines and semicolons; returns whether any were skipped.
    pub fn skip_separators(&mut self) -> bool {
        let mut any = false;
        while matches!(self.toks[self.pos].tok, Tok::Newline | Tok::Sym(";")) {
            self.pos += 1;
            any = true;
        }
        any
    }

    /// Requires a statement separator or the end of input.
    pub fn expect_separator(&mut self) -> Result<()> {
        if self.skip_separators() || self.at_eof() || self.peek().tok == Tok::Sym("}") {
            self.expected.clear();
            return Ok(());
        }
        self.expected.insert("`;`".into());
        self.expected.insert("end of line".into());
        Err(self.error())
    }

    fn nested<T>(&mut self, skip: bool, f: impl FnOnce(&mut Self) -> Result<T>) -> Result<T> {
        self.skip_newlines.push(skip);
        let r = f(self);
        self.skip_newlines.pop();
        r
    }

    // integer expressions

    pub fn int_expr(&mut self) -> Result<IntExpr> {
        let mut lhs = self.int_term()?;
        loop {
            if self.eat_sym("+") {
                lhs = IntExpr::Add(Box::new(lhs), Box::new(self.int_term()?));
            } else if self.eat_sym("-") {
                lhs = IntExpr::Sub(Box::new(lhs), Box::new(self.int_term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn int_term(&mut self) -> Result<IntExpr> {
        let mut lhs = self.int_unary()?;
        while self.eat_sym("*") {
            lhs = IntExpr::Mul(Box::new(lhs), Box::new(self.int_unary()?));
        }
        Ok(lhs)
    }

    fn int_unary(&mut self) -> Result<IntExpr> {
        if self.eat_sym("-") {
            return Ok(IntExpr::Neg(Box::new(self.int_unary()?)));
        }
        self.int_atom()
    }

    fn int_atom(&mut self) -> Result<IntExpr> {
        match self.peek().tok.clone() {
            Tok::Int(v) => {
                self.bump();
                Ok(IntExpr::Lit(v))
            }
            Tok::Ident(s) => {
                self.bump();
                Ok(IntExpr::Name(s))
            }
            Tok::Sym("(") => {
                self.bump();
                let e = self.nested(true, |p| p.int_expr())?;
                self.expect_sym(")")?;
                Ok(e)
            }
            _ => {
                self.expected.insert("an integer expression".into());
                Err(self.error())
            }
        }
    }

    fn exponent(&mut self) -> Result<Option<IntExpr>> {
        if !self.eat_sym("^") {
            return Ok(None);
        }
        match self.peek().tok.clone() {
            Tok::Sym("(") => self.int_atom().map(Some),
            Tok::Int(_) | Tok::Ident(_) => self.int_atom().map(Some),
            _ => {
                self.expected.insert("an exponent".into());
                Err(self.error())
            }
        }
    }

    pub fn range(&mut self) -> Result<(IntExpr, IntExpr)> {
        let lo = self.int_expr()?;
        self.expect_sym("..")?;
        let hi = self.int_expr()?;
        Ok((lo, hi))
    }

    fn comparison(&mut self) -> Result<Comparison> {
        let lhs = self.int_expr()?;
        let op = match &self.peek().tok {
            Tok::Sym(s) => CmpOp::from_sym(s),
            _ => None,
        };
        let Some(op) = op else {
            for s in ["==", "!=", "<", "<=", ">", ">="] {
                self.expected.insert(format!("`{s}`"));
            }
            return Err(self.error());
        };
        self.bump();
        let rhs = self.int_expr()?;
        Ok(Comparison { lhs, op, rhs })
    }

    /// True when the tokens at `offset` read `, name (, name)* in`.
    fn binder_follows(&self, mut offset: usize) -> bool {
        if self.peek_nth(offset).tok != Tok::Sym(",") {
            return false;
        }
        offset += 1;
        loop {
            match &self.peek_nth(offset).tok {
                Tok::Ident(s) if s != "in" => offset += 1,
                _ => return false,
            }
            match &self.peek_nth(offset).tok {
                Tok::Sym(",") => offset += 1,
                Tok::Ident(s) if s == "in" => return true,
                _ => return false,
            }
        }
    }

    fn binder(&mut self) -> Result<Binder> {
        let mut names = vec![self.expect_ident()?];
        while self.eat_sym(",") {
            names.push(self.expect_ident()?);
        }
        self.expect_keyword("in")?;
        let (lo, hi) = self.range()?;
        Ok(Binder { names, lo, hi })
    }

    fn comprehension(&mut self) -> Result<Option<Comprehension>> {
        if !self.eat_keyword("for") {
            return Ok(None);
        }
        let mut binders = vec![self.binder()?];
        while self.binder_follows(0) {
            self.bump();
            binders.push(self.binder()?);
        }
        let mut guard = Vec::new();
        if self.eat_keyword("if") {
            guard.push(self.comparison()?);
            while self.eat_keyword("and") {
                guard.push(self.comparison()?);
            }
        }
        Ok(Some(Comprehension { binders, guard }))
    }

    // polynomials

    fn factor(&mut self) -> Result<Factor> {
        let name = self.expect_ident()?;
        let f = if let Some((var, idx)) = is_var_literal(&name) {
            Factor::Var {
                name: var,
                index: IntExpr::Lit(idx),
                exp: self.exponent()?,
            }
        } else if self.eat_sym("[") {
            let index = self.nested(true, |p| p.int_expr())?;
            self.expect_sym("]")?;
            Factor::Var {
                name,
                index,
                exp: self.exponent()?,
            }
        } else {
            Factor::IdealPower {
                name,
                exp: self.exponent()?,
            }
        };
        Ok(f)
    }

    fn coefficient(&mut self) -> Result<Coeff> {
        let num = self.expect_int()?;
        let den = if self.eat_sym("/") { self.expect_int()? } else { 1 };
        if den == 0 {
            self.expected.insert("a nonzero denominator".into());
            return Err(self.error());
        }
        Ok(Coeff::new(num.into(), den.into()))
    }

    fn term(&mut self, negative: bool) -> Result<TermTemplate> {
        let mut coeff = Coeff::one();
        let mut factors = Vec::new();
        if matches!(self.peek().tok, Tok::Int(_)) {
            coeff = self.coefficient()?;
            if self.eat_sym("*") {
                factors.push(self.factor()?);
            }
        } else {
            factors.push(self.factor()?);
        }
        if !factors.is_empty() {
            while self.eat_sym("*") {
                factors.push(self.factor()?);
            }
        }
        if negative {
            coeff = -coeff;
        }
        Ok(TermTemplate { coeff, factors })
    }

    pub fn poly(&mut self) -> Result<PolyTemplate> {
        let neg = self.eat_sym("-");
        let mut terms = vec![self.term(neg)?];
        loop {
            if self.eat_sym("+") {
                terms.push(self.term(false)?);
            } else if self.eat_sym("-") {
                terms.push(self.term(true)?);
            } else {
                return Ok(PolyTemplate(terms));
            }
        }
    }

    fn rule(&mut self) -> Result<RuleTemplate> {
        let mut lhs = vec![self.factor()?];
        while self.eat_sym("*") {
            lhs.push(self.factor()?);
        }
        self.expect_sym("->")?;
        let rhs = self.poly()?;
        let comp = self.comprehension()?;
        Ok(RuleTemplate { lhs, rhs, comp })
    }

    /// After the `ring` keyword.
    pub fn ring_template(&mut self) -> Result<RingTemplate> {
        let name = if matches!(self.peek_nth(1).tok, Tok::Sym("=")) && !self.is_keyword("vars") {
            let n = self.expect_ident()?;
            self.expect_sym("=")?;
            Some(n)
        } else {
            None
        };
        self.expect_keyword("vars")?;
        let var = self.expect_ident()?;
        let upper = self.nested(true, |p| {
            p.expect_sym("[")?;
            if p.expect_int()? != 0 {
                p.pos -= 1;
                p.expected.insert("`0`".into());
                return Err(p.error());
            }
            p.expect_sym("..")?;
            let hi = p.int_expr()?;
            p.expect_sym("]")?;
            Ok(hi)
        })?;
        let mut rules = Vec::new();
        if self.eat_keyword("rules") {
            self.nested(true, |p| {
                p.expect_sym("{")?;
                while !p.eat_sym("}") {
                    rules.push(p.rule()?);
                    if !p.eat_sym(";") {
                        p.expect_sym("}")?;
                        break;
                    }
                }
                Ok(())
            })?;
        }
        Ok(RingTemplate {
            name,
            var,
            upper,
            rules,
        })
    }

    /// `< ... >`.
    pub fn ideal_template(&mut self) -> Result<IdealTemplate> {
        self.nested(true, |p| {
            p.expect_sym("<")?;
            let mut gens = Vec::new();
            if p.eat_sym(">") {
                return Ok(IdealTemplate(gens));
            }
            loop {
                let poly = p.poly()?;
                let comp = p.comprehension()?;
                gens.push(GenTemplate { poly, comp });
                if p.eat_sym(",") {
                    continue;
                }
                p.expect_sym(">")?;
                return Ok(IdealTemplate(gens));
            }
        })
    }

    /// After the `ideal` keyword.
    pub fn ideal_def(&mut self) -> Result<IdealDef> {
        let name = self.expect_ident()?;
        if is_var_literal(&name).is_some() {
            return Err(pattern_err(format!("`{name}` names a variable, not an ideal")));
        }
        self.expect_sym("=")?;
        Ok(IdealDef {
            name,
            body: self.ideal_template()?,
        })
    }

    /// A ring template followed by ideal definitions, up to `}` or the end
    /// of input.
    pub fn family_items(&mut self, name: &str) -> Result<FamilySpec> {
        self.nested(false, |p| {
            p.skip_separators();
            p.expect_keyword("ring")?;
            let ring = p.ring_template()?;
            let mut ideals = Vec::new();
            p.expect_separator()?;
            while p.eat_keyword("ideal") {
                ideals.push(p.ideal_def()?);
                p.expect_separator()?;
            }
            Ok(FamilySpec {
                name: name.to_string(),
                ring,
                ideals,
            })
        })
    }

    /// `{ family items }`.
    pub fn family_block(&mut self, name: &str) -> Result<FamilySpec> {
        self.expect_sym("{")?;
        let spec = self.family_items(name)?;
        self.skip_separators();
        self.expect_sym("}")?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env(n: i64) -> Env {
        [(LEVEL_PARAMETER.to_string(), n)].into_iter().collect()
    }

    #[test]
    fn int_expr_round_trip() {
        for s in ["i + 1", "2*i - j", "i - (j + 1)", "(i + 1)*2", "-i", "-(i*j)", "N - 1 - i"] {
            let mut p = Parser::new(s).unwrap();
            let e = p.int_expr().unwrap();
            assert_eq!(e.to_string(), s);
            let mut q = Parser::new(&e.to_string()).unwrap();
            assert_eq!(q.int_expr().unwrap(), e);
        }
    }

    #[test]
    fn comprehension_order_and_guard() {
        let mut p = Parser::new("for i, j in 0..2 if i != j and 2*i < j").unwrap();
        let c = p.comprehension().unwrap().unwrap();
        let envs = c.expand(&Env::new()).unwrap();
        let pairs: Vec<(i64, i64)> = envs.iter().map(|e| (e["i"], e["j"])).collect();
        assert_eq!(pairs, vec![(0, 1), (0, 2)]);
    }

    #[test]
    fn ring_expansion() {
        let spec = FamilySpec::parse(
            "t",
            "ring vars X[0..N] rules { X[i]^2 -> X[i] for i in 1..N; X[i]*X[j] -> 0 for i in 0..N, j in 0..N if i < j }",
        )
        .unwrap();
        let rules = spec.ring.rewrite_rules(&env(2)).unwrap();
        assert_eq!(rules.len(), 5);
        assert_eq!(spec.ring.to_string().matches("->").count(), 2);
    }

    #[test]
    fn ideal_with_powers() {
        let spec = FamilySpec::parse(
            "t",
            "ring vars X[0..N] rules { X[i]^2 -> 0 for i in 0..N }\nideal a = < X[i] for i in 0..N >\nideal b = < X[i]*a^i for i in 0..N >",
        )
        .unwrap();
        let e = env(2);
        let ring = spec.ring.instantiate(&e).unwrap();
        let mut ideals = BTreeMap::new();
        let mut cache = PowerCache::default();
        for d in &spec.ideals {
            let mut s = Scope {
                ring: &ring,
                var: "X",
                ideals: &ideals,
                powers: &mut cache,
            };
            let i = s.instantiate_ideal(&d.body, &e).unwrap();
            ideals.insert(d.name.clone(), i);
        }
        assert_eq!(ideals["b"].to_string(), "ideal(X0, X1*X2)");
    }

    #[test]
    fn poly_round_trip() {
        for s in ["X[0] - X[0]^2", "-3/2*X[1]*X[2]^(i + 1) + 1", "0", "X[i]*a^i"] {
            let mut p = Parser::new(s).unwrap();
            let e = p.poly().unwrap();
            assert_eq!(e.to_string(), s);
        }
        let mut p = Parser::new("X3^2*X0").unwrap();
        assert_eq!(p.poly().unwrap().to_string(), "X[3]^2*X[0]");
    }

    #[test]
    fn closing_bracket_after_guard() {
        let mut p = Parser::new("< X[i]*X[j] for i, j in 0..N if i > j >").unwrap();
        let t = p.ideal_template().unwrap();
        assert_eq!(t.to_string(), "< X[i]*X[j] for i, j in 0..N if i > j >");
        p.expect_eof().unwrap();
    }

    #[test]
    fn syntax_error_location() {
        let mut p = Parser::new("ideal a = <").unwrap();
        p.expect_keyword("ideal").unwrap();
        match p.ideal_def() {
            Err(Error::Syntax { line, col, found, .. }) => {
                assert_eq!((line, col), (1, 12));
                assert_eq!(found, "end of input");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn out_of_range_index() {
        let spec = FamilySpec::parse("t", "ring vars X[0..N] rules { X[i+1]^2 -> 0 for i in 0..N }").unwrap();
        assert!(matches!(spec.ring.instantiate(&env(2)), Err(Error::Pattern(_))));
        let spec = FamilySpec::parse("t", "ring vars X[0..N] rules { X[k]^2 -> 0 }").unwrap();
        assert!(matches!(spec.ring.instantiate(&env(2)), Err(Error::Pattern(_))));
    }
}
