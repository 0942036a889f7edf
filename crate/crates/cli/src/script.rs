//! Script syntax: statements, their parser and their printer. Printing a
//! parsed script and parsing it again yields the same statements.

use std::fmt;

use torsionlab_core::pattern::{
    Factor, FamilySpec, IdealDef, IdealTemplate, IntExpr, Parser, PolyTemplate, RingTemplate,
};
use torsionlab_core::{Error, Result};

/// An argument of a query: an inline ideal or a polynomial expression.
/// A bare name such as `a` or a power `a^2` denotes an ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Arg {
    Ideal(IdealTemplate),
    Poly(PolyTemplate),
}

impl Arg {
    /// The name when the argument is a bare ideal name.
    pub fn as_name(&self) -> Option<&str> {
        match self {
            Arg::Poly(p) => match p.0.as_slice() {
                [t] if t.coeff == num_one() => match t.factors.as_slice() {
                    [Factor::IdealPower { name, exp: None }] => Some(name),
                    _ => None,
                },
                _ => None,
            },
            Arg::Ideal(_) => None,
        }
    }
}

fn num_one() -> torsionlab_core::Coeff {
    torsionlab_core::Coeff::from_integer(1.into())
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arg::Ideal(i) => write!(f, "{i}"),
            Arg::Poly(p) => write!(f, "{p}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QueryOp {
    Gamma,
    GammaBar,
    Colon,
    Saturation,
    Membership,
    Radical,
    MinPrimes,
    Ass,
    Assf,
    Fairness,
    Includes,
    Equal,
}

impl QueryOp {
    pub const ALL: [QueryOp; 12] = [
        QueryOp::Gamma,
        QueryOp::GammaBar,
        QueryOp::Colon,
        QueryOp::Saturation,
        QueryOp::Membership,
        QueryOp::Radical,
        QueryOp::MinPrimes,
        QueryOp::Ass,
        QueryOp::Assf,
        QueryOp::Fairness,
        QueryOp::Includes,
        QueryOp::Equal,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            QueryOp::Gamma => "gamma",
            QueryOp::GammaBar => "gammabar",
            QueryOp::Colon => "colon",
            QueryOp::Saturation => "saturation",
            QueryOp::Membership => "membership",
            QueryOp::Radical => "radical",
            QueryOp::MinPrimes => "minprimes",
            QueryOp::Ass => "ass",
            QueryOp::Assf => "assf",
            QueryOp::Fairness => "fairness",
            QueryOp::Includes => "includes",
            QueryOp::Equal => "equal",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            QueryOp::Radical | QueryOp::MinPrimes | QueryOp::Ass | QueryOp::Assf => 1,
            _ => 2,
        }
    }

    /// Whether `check` may be applied: the query has a yes/no answer.
    pub fn checkable(self) -> bool {
        matches!(
            self,
            QueryOp::Membership | QueryOp::Fairness | QueryOp::Includes | QueryOp::Equal
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Query {
    pub check: bool,
    pub op: QueryOp,
    pub args: Vec<Arg>,
    /// Overrides the degree bound of this statement.
    pub degree: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyDecl {
    pub name: String,
    pub levels: Option<(i64, i64)>,
    pub window: Option<i64>,
    pub body: Option<FamilySpec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stmt {
    Let { name: String, value: IntExpr },
    Ring(RingTemplate),
    Ideal(IdealDef),
    Family(FamilyDecl),
    Query(Query),
    Harness { instances: Option<i64>, seed: Option<i64> },
    Example { tag: String },
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stmt::Let { name, value } => write!(f, "let {name} = {value}"),
            Stmt::Ring(r) => write!(f, "{r}"),
            Stmt::Ideal(d) => write!(f, "{d}"),
            Stmt::Family(d) => {
                write!(f, "family {}", d.name)?;
                if let Some((lo, hi)) = d.levels {
                    write!(f, " levels {lo}..{hi}")?;
                }
                if let Some(w) = d.window {
                    write!(f, " window {w}")?;
                }
                if let Some(body) = &d.body {
                    writeln!(f, " {{")?;
                    for line in body.body_lines() {
                        writeln!(f, "  {line}")?;
                    }
                    write!(f, "}}")?;
                }
                Ok(())
            }
            Stmt::Query(q) => {
                let args: Vec<String> = q.args.iter().map(|a| a.to_string()).collect();
                let kw = if q.check { "check" } else { "query" };
                write!(f, "{kw} {}({})", q.op.as_str(), args.join("; "))?;
                if let Some(d) = q.degree {
                    write!(f, " degree {d}")?;
                }
                Ok(())
            }
            Stmt::Harness { instances, seed } => {
                write!(f, "run harness")?;
                if let Some(n) = instances {
                    write!(f, " instances {n}")?;
                }
                if let Some(s) = seed {
                    write!(f, " seed {s}")?;
                }
                Ok(())
            }
            Stmt::Example { tag } => write!(f, "run example {tag}"),
        }
    }
}

impl Stmt {
    /// The statement on a single line; family bodies use `;` separators.
    pub fn to_line(&self) -> String {
        match self {
            Stmt::Family(FamilyDecl { body: Some(body), .. }) => {
                let head = self.to_string();
                let head = head.split(" {").next().expect("family head");
                format!("{head} {{ {} }}", body.body_lines().join("; "))
            }
            _ => self.to_string(),
        }
    }
}

/// Statements with the line each one starts on. Equality ignores lines.
#[derive(Clone, Debug, Default)]
pub struct Script {
    pub statements: Vec<Stmt>,
    pub lines: Vec<u32>,
}

impl PartialEq for Script {
    fn eq(&self, other: &Self) -> bool {
        self.statements == other.statements
    }
}

impl Eq for Script {}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

pub fn parse(src: &str) -> Result<Script> {
    let mut p = Parser::new(src)?;
    let mut script = Script::default();
    loop {
        p.skip_separators();
        if p.at_eof() {
            return Ok(script);
        }
        let line = p.peek().line;
        let stmt = statement(&mut p)?;
        p.expect_separator()?;
        script.statements.push(stmt);
        script.lines.push(line);
    }
}

fn statement(p: &mut Parser) -> Result<Stmt> {
    if p.eat_keyword("let") {
        let name = p.expect_ident()?;
        p.expect_sym("=")?;
        return Ok(Stmt::Let {
            name,
            value: p.int_expr()?,
        });
    }
    if p.eat_keyword("ring") {
        return Ok(Stmt::Ring(p.ring_template()?));
    }
    if p.eat_keyword("ideal") {
        return Ok(Stmt::Ideal(p.ideal_def()?));
    }
    if p.eat_keyword("family") {
        return family(p).map(Stmt::Family);
    }
    if p.is_keyword("query") || p.is_keyword("check") {
        let check = p.bump().tok == torsionlab_core::pattern::Tok::Ident("check".into());
        return query(p, check).map(Stmt::Query);
    }
    if p.eat_keyword("run") {
        if p.eat_keyword("harness") {
            let instances = if p.eat_keyword("instances") { Some(p.expect_int()?) } else { None };
            let seed = if p.eat_keyword("seed") { Some(p.expect_int()?) } else { None };
            return Ok(Stmt::Harness { instances, seed });
        }
        p.expect_keyword("example")?;
        return Ok(Stmt::Example {
            tag: p.expect_ident()?,
        });
    }
    for kw in ["ideal", "family", "query", "check", "run"] {
        p.is_keyword(kw);
    }
    Err(p.error())
}

fn family(p: &mut Parser) -> Result<FamilyDecl> {
    let name = p.expect_ident()?;
    let levels = if p.eat_keyword("levels") {
        let lo = p.expect_int()?;
        p.expect_sym("..")?;
        Some((lo, p.expect_int()?))
    } else {
        None
    };
    let window = if p.eat_keyword("window") { Some(p.expect_int()?) } else { None };
    let body = if p.is_sym("{") { Some(p.family_block(&name)?) } else { None };
    Ok(FamilyDecl {
        name,
        levels,
        window,
        body,
    })
}

fn query(p: &mut Parser, check: bool) -> Result<Query> {
    let op = QueryOp::ALL.into_iter().find(|op| p.is_keyword(op.as_str()));
    let Some(op) = op else {
        return Err(p.error());
    };
    p.bump();
    if check && !op.checkable() {
        return Err(Error::Pattern(format!(
            "`check` needs a yes/no query; `{}` has none",
            op.as_str()
        )));
    }
    p.expect_sym("(")?;
    let mut args = vec![arg(p)?];
    while p.eat_sym(";") {
        args.push(arg(p)?);
    }
    p.expect_sym(")")?;
    if args.len() != op.arity() {
        return Err(Error::Pattern(format!(
            "`{}` takes {} argument(s), got {}",
            op.as_str(),
            op.arity(),
            args.len()
        )));
    }
    let degree = if p.eat_keyword("degree") { Some(p.expect_int()?) } else { None };
    Ok(Query {
        check,
        op,
        args,
        degree,
    })
}

fn arg(p: &mut Parser) -> Result<Arg> {
    if p.is_sym("<") {
        Ok(Arg::Ideal(p.ideal_template()?))
    } else {
        Ok(Arg::Poly(p.poly()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_input() {
        assert_eq!(parse("").unwrap().statements.len(), 0);
        assert_eq!(parse("\n# only a comment\n;;\n").unwrap().statements.len(), 0);
    }

    #[test]
    fn unterminated_ideal() {
        let e = parse("ideal a = <").unwrap_err();
        match e {
            Error::Syntax { line, col, found, .. } => {
                assert_eq!((line, col), (1, 12));
                assert_eq!(found, "end of input");
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn statements_round_trip() {
        let src = "let N = 3\n\
                   ring R = vars X[0..N] rules { X[i]^2 -> 0 for i in 0..N; X[i]*X[j] -> 0 for i in 0..N, j in 0..N if i != j }\n\
                   ideal a = < X[i] for i in 0..N >; ideal b = < X[i]*X[j] for i, j in 0..N if i != j >\n\
                   query gamma(a; b) ; query assf(b) degree 6 ; check fairness(a; b)\n\
                   query colon(b; X0*X1); check membership(X0 - 1/2*X1; <X0, X1>) degree 2\n\
                   query gammabar(a^2; b)\n\
                   family nil40A levels 4..10 window 3 ; run example nil40A\n\
                   run harness instances 20 seed 7\n\
                   family t { ring vars Y[0..N]\n ideal c = < Y[0] >\n }";
        let s = parse(src).unwrap();
        assert_eq!(s.statements.len(), 14);
        assert_eq!(s.lines[3], 3);
        let printed = s.to_string();
        let again = parse(&printed).unwrap();
        assert_eq!(s, again);
        assert_eq!(printed, again.to_string());
        let lines: Vec<String> = s.statements.iter().map(Stmt::to_line).collect();
        assert!(lines.iter().all(|l| !l.contains('\n')));
        assert_eq!(parse(&lines.join("\n")).unwrap(), s);
    }

    #[test]
    fn bare_names() {
        let s = parse("query radical(b)\nquery radical(b^2)").unwrap();
        let Stmt::Query(q) = &s.statements[0] else { panic!() };
        assert_eq!(q.args[0].as_name(), Some("b"));
        let Stmt::Query(q) = &s.statements[1] else { panic!() };
        assert_eq!(q.args[0].as_name(), None);
    }

    #[test]
    fn rejected_forms() {
        assert!(matches!(parse("check radical(a)"), Err(Error::Pattern(_))));
        assert!(matches!(parse("query gamma(a)"), Err(Error::Pattern(_))));
        assert!(matches!(parse("query frobnicate(a)"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("ideal a = < X0 > ideal"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("launch"), Err(Error::Syntax { .. })));
    }
}
