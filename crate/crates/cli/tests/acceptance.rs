//! One line per acceptance criterion; exits nonzero if any fails.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use torsionlab_cli::script::parse;
use torsionlab_core::crosscheck::oracle_equivalence;
use torsionlab_core::family::instantiate;
use torsionlab_core::harness::{generate_instance, proposition_harness, RingKind};
use torsionlab_core::registry::{example, tags};
use torsionlab_core::torsion::{fairness_report, radical_probe};
use torsionlab_core::Bounds;

const INSTANCES: usize = 500;
const SEED: u64 = 42;
const REPLICATED: [&str; 6] = ["idem50A", "idem50C", "nil40A", "nil40B", "nil40C", "nil40D"];

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn criterion_1() -> Verdict {
    let t = Instant::now();
    let r = proposition_harness(INSTANCES, SEED, &Bounds::default());
    let secs = t.elapsed().as_secs_f64();
    let detail = format!(
        "{} instances, {} checks, {} violations, {} errors, {secs:.1}s",
        r.instances,
        r.checks.values().sum::<usize>(),
        r.violations.len(),
        r.errors.len()
    );
    if r.is_clean() && r.instances >= 500 && secs <= 60.0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_2() -> Verdict {
    let bounds = Bounds::default();
    let (mut pairs, mut artinian, mut bad) = (0, 0, Vec::new());
    for i in 0..INSTANCES {
        let inst = generate_instance(SEED, i).map_err(|e| e.to_string())?;
        if inst.kind == RingKind::Artinian {
            artinian += 1;
        }
        for a in [&inst.a, &inst.a2] {
            for b in &inst.modules {
                let r = fairness_report(a, b, &bounds).map_err(|e| e.to_string())?;
                pairs += 1;
                let ok = r.all_verdicts()
                    && r.centred_witness_ok
                    && r.half_centred_witness_ok
                    && r.torsion.functors_agree
                    && r.complete;
                if !ok {
                    bad.push(format!("instance {i}: a = {a}, b = {b}"));
                }
            }
        }
    }
    let detail = format!("{pairs} pairs over {INSTANCES} instances ({artinian} artinian), {} exceptions", bad.len());
    if bad.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}; first: {}", bad[0]))
    }
}

fn criterion_3() -> Verdict {
    let r = oracle_equivalence(SEED, 120, 6).map_err(|e| e.to_string())?;
    let detail = format!(
        "{} instances, {} comparisons, {} disagreements",
        r.instances,
        r.total(),
        r.disagreements.len()
    );
    if r.instances >= 100 && r.disagreements.is_empty() {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_4() -> Verdict {
    let t = Instant::now();
    let mut claims = 0;
    for tag in REPLICATED {
        let out = Command::new(env!("CARGO_BIN_EXE_torsionlab"))
            .args(["--format", "json", "examples", "--run", tag, "--levels", "4..10", "--window", "3"])
            .output()
            .map_err(|e| e.to_string())?;
        let text = String::from_utf8_lossy(&out.stdout);
        if out.status.code() != Some(0) || text.contains("\"FAIL\"") || text.contains("\"stable\": false") {
            return Err(format!("{tag} did not replicate"));
        }
        claims += text.matches("\"status\": \"PASS\"").count() - 1;
    }
    let secs = t.elapsed().as_secs_f64();
    let detail = format!("{} examples, {claims} claims PASS and stable, {secs:.1}s", REPLICATED.len());
    if secs <= 120.0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_5() -> Verdict {
    let (mut levels, mut pairs) = (0, 0);
    for tag in tags() {
        let spec = example(tag).map_err(|e| e.to_string())?.family();
        for n in 0..=10 {
            let l = instantiate(&spec, n).map_err(|e| format!("{tag} at level {n}: {e}"))?;
            if !l.confluence.all_joinable() {
                return Err(format!("{tag} at level {n}: {} non-joinable pairs", l.confluence.non_joinable()));
            }
            levels += 1;
            pairs += l.confluence.pairs.len();
        }
    }
    Ok(format!("{levels} instantiations, {pairs} critical pairs joinable to degree 8"))
}

fn criterion_6() -> Verdict {
    let bounds = Bounds::default();
    let (mut modules, mut artinian, mut bad) = (0, 0, 0);
    for i in 0..INSTANCES {
        let inst = generate_instance(SEED, i).map_err(|e| e.to_string())?;
        let check_small = inst.kind == RingKind::Artinian;
        for a in [&inst.a, &inst.a2] {
            for e in radical_probe(a, &inst.modules, &bounds).map_err(|e| e.to_string())? {
                modules += 1;
                artinian += usize::from(check_small);
                if !e.large_radical || (check_small && !e.small_radical) {
                    bad += 1;
                }
            }
        }
    }
    let detail = format!("{modules} modules with large radical checked, {artinian} artinian with small radical checked, {bad} exceptions");
    if bad == 0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn scripts() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples");
    let mut v: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "tl"))
        .collect();
    v.sort();
    v
}

fn criterion_7() -> Verdict {
    let runs = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_torsionlab"))
            .env_remove("TORSIONLAB_SEED")
            .args(args)
            .output()
            .map(|o| o.stdout)
            .map_err(|e| e.to_string())
    };
    let mut compared = 0;
    for args in [
        vec!["--format", "json", "harness", "--instances", "100", "--seed", "42"],
        vec!["harness", "--instances", "100", "--seed", "42"],
        vec!["--format", "json", "examples", "--run", "nil40D"],
    ] {
        if runs(&args)? != runs(&args)? {
            return Err(format!("`{}` differs between runs", args.join(" ")));
        }
        compared += 1;
    }
    let paths = scripts();
    for p in &paths {
        let src = std::fs::read_to_string(p).map_err(|e| e.to_string())?;
        let s = parse(&src).map_err(|e| format!("{}: {e}", p.display()))?;
        let again = parse(&s.to_string()).map_err(|e| format!("{}: reprint: {e}", p.display()))?;
        if s != again || s.to_string() != again.to_string() {
            return Err(format!("{} is not a print fixpoint", p.display()));
        }
        for format in ["text", "json"] {
            let args = ["--format", format, "run", p.to_str().unwrap()];
            if runs(&args)? != runs(&args)? {
                return Err(format!("{} differs between runs", p.display()));
            }
            compared += 1;
        }
    }
    Ok(format!("{compared} report pairs byte-identical, {} scripts round-trip", paths.len()))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("proposition harness", criterion_1),
        ("noetherian predicates", criterion_2),
        ("oracle equivalence", criterion_3),
        ("example replication", criterion_4),
        ("confluence", criterion_5),
        ("radicality probe", criterion_6),
        ("determinism and round-trip", criterion_7),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(d) => println!("criterion {} {name}: PASS ({d})", k + 1),
            Err(d) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({d})", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
