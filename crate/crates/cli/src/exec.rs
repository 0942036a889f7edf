//! Evaluation of scripts against the library, producing report trees.

use std::collections::BTreeMap;

use torsionlab_core::family::{certify_all_pairs, Schedule, DEFAULT_LEVELS, DEFAULT_WINDOW};
use torsionlab_core::harness::{proposition_harness, DEFAULT_INSTANCES, DEFAULT_SEED};
use torsionlab_core::pattern::{Env, FamilySpec, GenTemplate, IdealTemplate, PowerCache, Scope};
use torsionlab_core::registry::{example, registry, replicate_family};
use torsionlab_core::report::ReportNode;
use torsionlab_core::spectrum::{assassins, show_primes};
use torsionlab_core::torsion::{fairness_report, gamma_large_cyclic, gamma_small_cyclic};
use torsionlab_core::{Bounds, Element, Error, Ideal, Result, Ring, Verdict};

use crate::script::{Arg, FamilyDecl, Query, QueryOp, Script, Stmt};

/// Settings shared by every statement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub bounds: Bounds,
    pub levels: (u32, u32),
    pub window: usize,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            bounds: Bounds::default(),
            levels: DEFAULT_LEVELS,
            window: DEFAULT_WINDOW,
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok,
    Failed,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Failed => 1,
            Status::Error => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Failed => "failed",
            Status::Error => "error",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: ReportNode,
    pub status: Status,
}

impl Outcome {
    fn new(report: ReportNode, pass: bool) -> Self {
        Outcome {
            report,
            status: if pass { Status::Ok } else { Status::Failed },
        }
    }
}

pub fn harness_outcome(instances: usize, seed: u64, bounds: &Bounds) -> Outcome {
    let r = proposition_harness(instances, seed, bounds);
    Outcome::new(r.to_report(), r.is_clean())
}

pub fn example_outcome(tag: &str, spec: Option<&FamilySpec>, schedule: &Schedule) -> Result<Outcome> {
    let ex = example(tag)?;
    let own = ex.family();
    let r = replicate_family(&ex, spec.unwrap_or(&own), schedule)?;
    Ok(Outcome::new(r.to_report(), r.pass()))
}

pub fn example_list() -> ReportNode {
    let items = registry()
        .into_iter()
        .map(|e| {
            ReportNode::map()
                .with("tag", e.tag)
                .with("summary", e.summary)
                .with("claims", ReportNode::list(e.claims.iter().map(|c| c.id)))
        })
        .collect::<Vec<_>>();
    ReportNode::map().with("examples", items)
}

fn semantic(msg: impl Into<String>) -> Error {
    Error::Pattern(msg.into())
}

fn to_u32(v: i64, what: &str) -> Result<u32> {
    u32::try_from(v).map_err(|_| semantic(format!("{what} {v} is out of range")))
}

fn verdict_report(v: Verdict) -> ReportNode {
    ReportNode::from(v.as_str())
}

struct State<'o> {
    opts: &'o Options,
    env: Env,
    ring: Option<(Ring, String)>,
    ideals: BTreeMap<String, Ideal>,
    families: BTreeMap<String, FamilyDecl>,
}

impl State<'_> {
    fn active_ring(&self) -> Result<(&Ring, &str)> {
        self.ring
            .as_ref()
            .map(|(r, v)| (r, v.as_str()))
            .ok_or_else(|| semantic("no ring has been defined"))
    }

    fn expand(&self, body: &IdealTemplate) -> Result<Ideal> {
        let (ring, var) = self.active_ring()?;
        let mut powers = PowerCache::default();
        let mut scope = Scope {
            ring,
            var,
            ideals: &self.ideals,
            powers: &mut powers,
        };
        scope.instantiate_ideal(body, &self.env)
    }

    fn ideal(&self, a: &Arg) -> Result<Ideal> {
        if let Some(name) = a.as_name() {
            return self
                .ideals
                .get(name)
                .cloned()
                .ok_or_else(|| semantic(format!("undefined ideal `{name}`")));
        }
        match a {
            Arg::Ideal(t) => self.expand(t),
            Arg::Poly(p) => self.expand(&IdealTemplate(vec![GenTemplate {
                poly: p.clone(),
                comp: None,
            }])),
        }
    }

    fn element(&self, a: &Arg) -> Result<Element> {
        let Arg::Poly(p) = a else {
            return Err(semantic(format!("expected a polynomial, found `{a}`")));
        };
        let (ring, var) = self.active_ring()?;
        let mut powers = PowerCache::default();
        let mut scope = Scope {
            ring,
            var,
            ideals: &self.ideals,
            powers: &mut powers,
        };
        let mut v = scope.expand_poly(p, &self.env)?;
        if v.len() != 1 {
            return Err(semantic(format!("`{p}` is not a single polynomial")));
        }
        Ok(v.pop().expect("one element"))
    }

    fn bounds(&self, q: &Query) -> Result<Bounds> {
        let mut b = self.opts.bounds;
        if let Some(d) = q.degree {
            let d = to_u32(d, "degree")?;
            match q.op {
                QueryOp::Ass | QueryOp::Assf | QueryOp::Fairness => b.witness_degree = Some(d),
                _ => b.multiplier_degree = d,
            }
        }
        Ok(b)
    }

    /// Result node and, for checks and runs, whether it passed.
    fn run(&mut self, stmt: &Stmt) -> Result<(ReportNode, Option<bool>)> {
        match stmt {
            Stmt::Let { name, value } => {
                let v = value.eval(&self.env)?;
                self.env.insert(name.clone(), v);
                Ok((ReportNode::map().with("value", v), None))
            }
            Stmt::Ring(t) => {
                let ring = certify_all_pairs(&t.instantiate(&self.env)?)?;
                let node = ReportNode::map()
                    .with("variables", ring.num_vars())
                    .with("rules", ring.presentation().rules().len());
                self.ring = Some((ring, t.var.clone()));
                Ok((node, None))
            }
            Stmt::Ideal(d) => {
                let i = self.expand(&d.body)?;
                let node = ReportNode::map()
                    .with("ideal", i.to_string())
                    .with("mode", format!("{:?}", i.mode()).to_lowercase());
                self.ideals.insert(d.name.clone(), i);
                Ok((node, None))
            }
            Stmt::Family(d) => {
                if d.body.is_none() {
                    example(&d.name)?;
                }
                self.schedule(d)?;
                self.families.insert(d.name.clone(), d.clone());
                Ok((ReportNode::map().with("family", d.name.as_str()), None))
            }
            Stmt::Query(q) => self.query(q),
            Stmt::Harness { instances, seed } => {
                let n = match instances {
                    Some(n) => usize::try_from(*n).map_err(|_| semantic("negative instance count"))?,
                    None => DEFAULT_INSTANCES,
                };
                let seed = match seed {
                    Some(s) => u64::try_from(*s).map_err(|_| semantic("negative seed"))?,
                    None => self.opts.seed,
                };
                let o = harness_outcome(n, seed, &self.opts.bounds);
                Ok((o.report, Some(o.status == Status::Ok)))
            }
            Stmt::Example { tag } => {
                let decl = self.families.get(tag).cloned();
                let schedule = match &decl {
                    Some(d) => self.schedule(d)?,
                    None => self.default_schedule()?,
                };
                let spec = decl.and_then(|d| d.body);
                let o = example_outcome(tag, spec.as_ref(), &schedule)?;
                Ok((o.report, Some(o.status == Status::Ok)))
            }
        }
    }

    fn default_schedule(&self) -> Result<Schedule> {
        Schedule::range(self.opts.levels.0, self.opts.levels.1, self.opts.window)
    }

    fn schedule(&self, d: &FamilyDecl) -> Result<Schedule> {
        let (lo, hi) = match d.levels {
            Some((lo, hi)) => (to_u32(lo, "level")?, to_u32(hi, "level")?),
            None => self.opts.levels,
        };
        let window = match d.window {
            Some(w) => to_u32(w, "window")? as usize,
            None => self.opts.window,
        };
        Schedule::range(lo, hi, window)
    }

    fn query(&self, q: &Query) -> Result<(ReportNode, Option<bool>)> {
        let bounds = self.bounds(q)?;
        let mut node = ReportNode::map();
        let mut pass = None;
        match q.op {
            QueryOp::Gamma => {
                let (a, b) = (self.ideal(&q.args[0])?, self.ideal(&q.args[1])?);
                let s = gamma_small_cyclic(&b, &a, &bounds)?;
                node.insert("ideal", s.ideal.to_string());
                node.insert("stabilized", s.stabilized);
                node.insert("steps", s.steps);
                node.insert("exact", s.ideal.is_exact());
            }
            QueryOp::GammaBar => {
                let (a, b) = (self.ideal(&q.args[0])?, self.ideal(&q.args[1])?);
                let (g, stabilized) = gamma_large_cyclic(&b, &a, &bounds)?;
                node.insert("ideal", g.to_string());
                node.insert("stabilized", stabilized);
                node.insert("exact", g.is_exact());
            }
            QueryOp::Colon => {
                let (b, j) = (self.ideal(&q.args[0])?, self.ideal(&q.args[1])?);
                let c = b.colon_ideal(&j, &bounds)?;
                node.insert("ideal", c.to_string());
                node.insert("exact", c.is_exact());
            }
            QueryOp::Saturation => {
                let (b, j) = (self.ideal(&q.args[0])?, self.ideal(&q.args[1])?);
                let s = b.saturation(&j, &bounds)?;
                node.insert("ideal", s.ideal.to_string());
                node.insert("stabilized", s.stabilized);
                node.insert("steps", s.steps);
                node.insert("exact", s.ideal.is_exact());
            }
            QueryOp::Membership => {
                let (f, b) = (self.element(&q.args[0])?, self.ideal(&q.args[1])?);
                b.ring().ensure_same(f.ring())?;
                let m = b.membership(&f, bounds.multiplier_degree)?;
                node.insert("element", f.to_string());
                node.insert("verdict", verdict_report(m.verdict));
                node.insert("search_bound", m.search_bound);
                pass = Some(m.verdict.is_yes());
            }
            QueryOp::Radical => {
                node.insert("ideal", self.ideal(&q.args[0])?.radical()?.to_string());
            }
            QueryOp::MinPrimes => {
                let b = self.ideal(&q.args[0])?;
                let primes = match b.minimal_primes() {
                    Ok(p) => p.into_iter().collect(),
                    Err(Error::UnitIdeal) => Default::default(),
                    Err(e) => return Err(e),
                };
                node.insert("primes", show_primes(&primes));
            }
            QueryOp::Ass | QueryOp::Assf => {
                let b = self.ideal(&q.args[0])?;
                let a = assassins(&b, None, bounds.witness_degree)?;
                let set = if q.op == QueryOp::Ass { &a.ass } else { &a.assf };
                node.insert("primes", show_primes(set));
                node.insert("complete", a.complete);
                node.insert("witness_degree", a.witness_degree);
                node.insert("witnesses", a.witnesses);
            }
            QueryOp::Fairness => {
                let (a, b) = (self.ideal(&q.args[0])?, self.ideal(&q.args[1])?);
                let r = fairness_report(&a, &b, &bounds)?;
                pass = Some(r.all_verdicts() && r.centred_witness_ok && r.half_centred_witness_ok);
                node = r.to_report();
            }
            QueryOp::Includes | QueryOp::Equal => {
                let (i, j) = (self.ideal(&q.args[0])?, self.ideal(&q.args[1])?);
                let v = if q.op == QueryOp::Includes {
                    i.includes(&j, bounds.multiplier_degree)?
                } else {
                    i.equals(&j, bounds.multiplier_degree)?
                };
                node.insert("verdict", verdict_report(v));
                pass = Some(v.is_yes());
            }
        }
        if !q.check {
            pass = None;
        }
        Ok((node, pass))
    }
}

/// Runs the statements in order, stopping at the first error.
pub fn execute(script: &Script, opts: &Options) -> Outcome {
    let mut state = State {
        opts,
        env: Env::new(),
        ring: None,
        ideals: BTreeMap::new(),
        families: BTreeMap::new(),
    };
    let mut entries = Vec::new();
    let mut status = Status::Ok;
    let (mut checks, mut failed) = (0usize, 0usize);
    for (k, stmt) in script.statements.iter().enumerate() {
        let mut entry = ReportNode::map()
            .with("index", k)
            .with("line", script.lines.get(k).copied().unwrap_or(0))
            .with("statement", stmt.to_line());
        match state.run(stmt) {
            Ok((result, pass)) => {
                if let Some(p) = pass {
                    checks += 1;
                    entry.insert("status", if p { "PASS" } else { "FAIL" });
                    if !p {
                        failed += 1;
                        status = status.max(Status::Failed);
                    }
                }
                entry.insert("result", result);
                entries.push(entry);
            }
            Err(e) => {
                entry.insert("error", e.to_string());
                entries.push(entry);
                status = Status::Error;
                break;
            }
        }
    }
    let report = ReportNode::map()
        .with("statements", entries)
        .with(
            "summary",
            ReportNode::map()
                .with("statements", script.statements.len())
                .with("checks", checks)
                .with("failed", failed),
        )
        .with("status", status.as_str());
    Outcome { report, status }
}
