use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use spectra_core::canon::is_shifted;
use spectra_core::checkers::{run_checker, CheckSuite, CheckerId, Severity};
use spectra_core::generators::{
    complete_family, cycle_family, random_shifted, random_tree, shifted_from_generators,
    simplex_family, star_family, threshold_graph, GaleGenerators, Seed, ThresholdSeq,
};
use spectra_core::io::parse_facet_file;
use spectra_core::ops::{complement_nonempty, cone, disjoint_union, simplicial_join, UnionMode};
use spectra_core::search::{scan, EnumSpec};
use spectra_core::structure::{is_simplicial_tree, matching_number, ridge_components};
use spectra_core::{spectrum, Execution, KFamily};

use crate::args::{CheckerArg, Command, GenCommand, ModeArg, OpsCommand, SearchArgs};
use crate::format::{round12, sig12};
use crate::Status;

pub fn run(command: Command) -> Result<Status> {
    match command {
        Command::Gen { family, out } => {
            let s = generate(family)?;
            emit(out.as_deref(), &s.to_string())?;
        }
        Command::Spectrum { file, json } => {
            let sp = spectrum(&read_family(&file)?)?;
            let text = if json {
                let values: Vec<f64> = sp.values.iter().map(|&x| round12(x)).collect();
                format!("{}\n", json!({ "spectrum": values }))
            } else {
                sp.values.iter().map(|&x| sig12(x) + "\n").collect()
            };
            emit(None, &text)?;
        }
        Command::Analyze { file, out } => {
            let value = analyze(&read_family(&file)?);
            emit(out.as_deref(), &format!("{value:#}\n"))?;
        }
        Command::Check {
            checker,
            file,
            t,
            json,
        } => return check(checker_id(checker), &read_family(&file)?, t, json),
        Command::Ops { op, out } => {
            let s = apply_op(op)?;
            emit(out.as_deref(), &s.to_string())?;
        }
        Command::Search(args) => return search(args),
    }
    Ok(Status::Pass)
}

fn read_family(path: &str) -> Result<KFamily> {
    let text = if path == "-" {
        let mut buf = String::new();
        io::stdin()
            .read_to_string(&mut buf)
            .context("reading stdin")?;
        buf
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {path}"))?
    };
    parse_facet_file(&text).with_context(|| format!("parsing {path}"))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn generate(family: GenCommand) -> Result<KFamily> {
    Ok(match family {
        GenCommand::Complete { n, k } => complete_family(n, k)?,
        GenCommand::Star { n, k } => star_family(n, k)?,
        GenCommand::Simplex { k } => simplex_family(k)?,
        GenCommand::Threshold {
            steps,
            random,
            seed,
        } => {
            let seq = match (steps, random) {
                (Some(steps), _) => steps.parse::<ThresholdSeq>()?,
                (None, Some(len)) => ThresholdSeq::random(len, Seed(seed)),
                (None, None) => bail!("give --steps or --random"),
            };
            threshold_graph(&seq)?
        }
        GenCommand::Shifted {
            n,
            gens,
            random,
            seed,
        } => match (gens, random) {
            (Some(gens), _) => shifted_from_generators(n, &gens.parse::<GaleGenerators>()?)?,
            (None, Some(k)) => random_shifted(n, k, Seed(seed))?,
            (None, None) => bail!("give --gens or --random"),
        },
        GenCommand::Tree { facets, k, seed } => random_tree(facets, k, Seed(seed))?,
        GenCommand::Cycle { len, k } => cycle_family(len, k)?,
    })
}

fn apply_op(op: OpsCommand) -> Result<KFamily> {
    Ok(match op {
        OpsCommand::Complement { file } => complement_nonempty(&read_family(&file)?)?,
        OpsCommand::Union { a, b, mode } => {
            let (a, b) = read_pair(&a, &b)?;
            let mode = match mode {
                ModeArg::Vertex => UnionMode::VertexDisjoint,
                ModeArg::Facet => UnionMode::FacetDisjoint,
            };
            disjoint_union(&a, &b, mode)?
        }
        OpsCommand::Join { a, b } => {
            let (a, b) = read_pair(&a, &b)?;
            simplicial_join(&a, &b)
        }
        OpsCommand::Cone { file } => cone(&read_family(&file)?),
    })
}

fn read_pair(a: &str, b: &str) -> Result<(KFamily, KFamily)> {
    if a == "-" && b == "-" {
        bail!("only one operand can be read from stdin");
    }
    Ok((read_family(a)?, read_family(b)?))
}

/// Values that exceed a computation guard become `null`.
fn analyze(s: &KFamily) -> Value {
    let spectrum = spectrum(s)
        .ok()
        .map(|sp| sp.values.iter().map(|&x| round12(x)).collect::<Vec<_>>());
    let components: Vec<Vec<Vec<u32>>> = ridge_components(s)
        .iter()
        .map(|c| c.facets().iter().map(|f| f.vertices().to_vec()).collect())
        .collect();
    json!({
        "f_vector": s.f_vector().0,
        "degrees": s.degree_sequence().0,
        "conjugate_partition": s.conjugate_partition().0,
        "spectrum": spectrum,
        "ridge_components": components,
        "matching_number": matching_number(s).ok(),
        "is_tree": is_simplicial_tree(s).ok(),
        "is_shifted": is_shifted(s, None).ok(),
    })
}

pub fn checker_id(arg: CheckerArg) -> CheckerId {
    match arg {
        CheckerArg::Brouwer => CheckerId::Brouwer,
        CheckerArg::Majorization => CheckerId::Majorization,
        CheckerArg::Dr => CheckerId::Dr,
        CheckerArg::TreeBound => CheckerId::TreeBound,
        CheckerArg::ThresholdCone => CheckerId::ThresholdCone,
        CheckerArg::Forbidden => CheckerId::Forbidden,
        CheckerArg::SpectralRadius => CheckerId::SpectralRadius,
        CheckerArg::HigherSums => CheckerId::HigherSums,
        CheckerArg::JoinLemma => CheckerId::JoinLemma,
        CheckerArg::TreeRemark => CheckerId::TreeRemark,
        CheckerArg::Structure => CheckerId::Structure,
    }
}

fn takes_t(id: CheckerId) -> bool {
    matches!(
        id,
        CheckerId::Brouwer
            | CheckerId::Majorization
            | CheckerId::Dr
            | CheckerId::TreeBound
            | CheckerId::Forbidden
            | CheckerId::HigherSums
    )
}

fn check(id: CheckerId, s: &KFamily, t: Option<usize>, json: bool) -> Result<Status> {
    if let Some(t) = t {
        if !takes_t(id) {
            bail!("checker {id} takes no --t");
        }
        let min = if id == CheckerId::Forbidden { 2 } else { 1 };
        if t < min {
            bail!("--t must be at least {min} for {id}");
        }
    }
    let mut suite = run_checker(id, s, t)?;
    if let Some(t) = t {
        suite.reports.retain(|r| r.t == t);
        suite.verdict = suite.reports.iter().all(|r| r.holds);
    }
    let status = status_of(&suite);
    let text = if json {
        let mut value = serde_json::to_value(&suite)?;
        value["checker"] = json!(id);
        format!("{value}\n")
    } else {
        render_suite(id, &suite)
    };
    emit(None, &text)?;
    Ok(status)
}

fn status_of(suite: &CheckSuite) -> Status {
    if suite.failures().any(|r| r.severity == Severity::Conjecture) {
        Status::Finding
    } else {
        Status::Pass
    }
}

fn render_suite(id: CheckerId, suite: &CheckSuite) -> String {
    let mut out = String::new();
    for r in &suite.reports {
        let mut line = format!(
            "{} t={} lhs={} rhs={} slack={} {}",
            r.name,
            r.t,
            sig12(r.lhs),
            sig12(r.rhs),
            sig12(r.slack),
            if r.holds { "holds" } else { "FAILS" }
        );
        if r.tight {
            line.push_str(" tight");
        }
        if r.saturated {
            line.push_str(" saturated");
        }
        out.push_str(&line);
        out.push('\n');
    }
    let verdict = match (suite.verdict, status_of(suite)) {
        (true, _) => "PASS",
        (false, Status::Finding) => "FINDING",
        (false, Status::Pass) => "PREDICATE-FALSE",
    };
    out.push_str(&format!("{id} {} verdict={verdict}\n", suite.digest));
    out
}

fn search(args: SearchArgs) -> Result<Status> {
    let spec = EnumSpec {
        n: args.n,
        k: args.k,
        connected_only: args.connected,
        spanning_only: args.spanning,
        max_facets: args.max_facets,
    };
    let id = checker_id(args.check);
    let report = scan(&spec, id, args.t_max, Execution::from_jobs(args.jobs))?;
    if let Some(path) = &args.json {
        let text = serde_json::to_string_pretty(&report)? + "\n";
        fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    let mut out = format!(
        "search n={} k={} check={id} families={} checked={} skipped={} counterexamples={}\n",
        spec.n,
        spec.k,
        report.families_scanned,
        report.families_checked,
        report.skipped.len(),
        report.counterexamples.len()
    );
    for c in &report.counterexamples {
        // structure audits have no partial sums to show
        let values = if c.lhs.is_nan() {
            String::new()
        } else {
            format!(" t={} lhs={} rhs={}", c.t, sig12(c.lhs), sig12(c.rhs))
        };
        let note = c
            .message
            .as_ref()
            .map(|m| format!(" note={:?}", m.lines().next().unwrap_or("")))
            .unwrap_or_default();
        out.push_str(&format!(
            "counterexample severity={:?}{values}{note}\n{}",
            c.severity, c.family
        ));
    }
    for l in &report.tightness_leaders {
        out.push_str(&format!(
            "leader t={} slack={} {}\n",
            l.t,
            sig12(l.slack),
            l.family.trim_end().replace('\n', " | ")
        ));
    }
    out.push_str(&format!(
        "verdict={}\n",
        if report.verdict { "PASS" } else { "FAIL" }
    ));
    emit(None, &out)?;
    if let Some(c) = report
        .counterexamples
        .iter()
        .find(|c| c.severity == Severity::Theorem)
    {
        let err = match &c.message {
            Some(msg) if c.lhs.is_nan() => spectra_core::Error::Structure(msg.clone()),
            _ => spectra_core::Error::TheoremViolation {
                check: id.to_string(),
                t: c.t,
                lhs: c.lhs,
                rhs: c.rhs,
            },
        };
        return Err(err.into());
    }
    Ok(if report.verdict {
        Status::Pass
    } else {
        Status::Finding
    })
}
