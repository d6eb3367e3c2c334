//! `hopfpi`: normal forms, coproducts, universal maps and identity checks from the command line.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use hopfpi::commpoly::{CommPoly, Param};
use hopfpi::comodule::{galois_object, ComoduleAlgebra, GaloisObjectSpec, ParamValue};
use hopfpi::hopf::{self, HopfFamily, HopfPresentation};
use hopfpi::identities::{self, AClass, FreeComodule, IdentityName, Verdict, CATALOG_COPIES};
use hopfpi::ncalg::{AlgElement, PresentedAlgebra, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "hopfpi", version, about = "Exact polynomial H-identities for Taft algebras and E(n)")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Refuse to expand free-algebra expressions beyond this degree.
    #[arg(long, global = true)]
    max_degree: Option<usize>,
    /// Number of copies of H among the free variables X[i,h].
    #[arg(long, default_value_t = CATALOG_COPIES, global = true)]
    copies: u32,
    /// Report wall-clock time.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form of an expression. ALGEBRA is a Hopf algebra (`taft:3`), a Galois
    /// object (`taft:3;a=1;c=sym`, or `A:taft:3` for all-symbolic parameters) or a
    /// free comodule algebra (`free:taft:3`).
    NormalForm { algebra: String, expression: String },
    /// Coproduct of an element of a Hopf algebra.
    Coproduct { hopf: String, expression: String },
    /// Image of a free-algebra polynomial under the universal map of a Galois object.
    Mu { hopf: String, object: String, expression: String },
    /// Checks a catalog identity (`taft_pc`, `en_ci:1`, `en_dij:1,2`, `coinv_P:x`,
    /// `coinv_Q:x,y`), a polynomial expression, or `standard:<m>` on matrices.
    Verify {
        /// Galois object the identity is tested on.
        #[arg(long)]
        object: Option<String>,
        /// Matrix size for `standard:<m>`.
        #[arg(long, default_value_t = 2)]
        matrix_size: usize,
        identity: String,
    },
    /// Decides whether two Galois objects are told apart by their identities.
    Distinguish { first: String, second: String },
    /// Lists the catalog identities of a Hopf algebra, with symbolic parameters.
    Catalog { hopf: String },
    /// Runs the Hopf axiom suite, the comodule axiom suite and seeded random checks.
    Selfcheck {
        hopf: String,
        /// Random products checked per structure map.
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
}

#[derive(Debug)]
struct UsageError(String);

impl From<hopfpi::Error> for UsageError {
    fn from(e: hopfpi::Error) -> Self {
        UsageError(e.to_string())
    }
}

type CliResult<T> = Result<T, UsageError>;

struct Report {
    command: &'static str,
    input: Value,
    result: Value,
    witness: Option<Value>,
    lines: Vec<String>,
    success: bool,
}

impl Report {
    fn new(command: &'static str, input: Value) -> Self {
        Report {
            command,
            input,
            result: Value::Null,
            witness: None,
            lines: Vec::new(),
            success: true,
        }
    }
}

#[derive(Serialize)]
struct JsonReport<'a> {
    command: &'a str,
    input: &'a Value,
    result: &'a Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<&'a Value>,
    timings: Value,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let elapsed = start.elapsed().as_secs_f64();
    match cli.format {
        Format::Text => {
            for line in &report.lines {
                println!("{line}");
            }
            if cli.timings {
                println!("time: {elapsed:.3}s");
            }
        }
        Format::Json => {
            let out = JsonReport {
                command: report.command,
                input: &report.input,
                result: &report.result,
                witness: report.witness.as_ref(),
                timings: if cli.timings { json!({ "total_seconds": elapsed }) } else { Value::Null },
            };
            println!("{}", serde_json::to_string_pretty(&out).expect("serializable report"));
        }
    }
    if report.success {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: &Cli) -> CliResult<Report> {
    match &cli.command {
        Command::NormalForm { algebra, expression } => normal_form(cli, algebra, expression),
        Command::Coproduct { hopf, expression } => coproduct(hopf, expression),
        Command::Mu { hopf, object, expression } => mu(cli, hopf, object, expression),
        Command::Verify {
            object,
            matrix_size,
            identity,
        } => verify(cli, object.as_deref(), *matrix_size, identity),
        Command::Distinguish { first, second } => distinguish(first, second),
        Command::Catalog { hopf } => catalog(cli, hopf),
        Command::Selfcheck { hopf, samples } => selfcheck(cli, hopf, *samples),
    }
}

fn hopf_algebra(spec: &str) -> CliResult<Arc<HopfPresentation>> {
    let family: HopfFamily = spec.trim().parse()?;
    Ok(hopf::hopf(family)?)
}

fn object(spec: &str) -> CliResult<Arc<ComoduleAlgebra>> {
    Ok(galois_object(&spec.trim().parse()?)?)
}

fn free(cli: &Cli, h: &Arc<HopfPresentation>) -> CliResult<FreeComodule> {
    Ok(FreeComodule::new(h, cli.copies)?.with_max_degree(cli.max_degree))
}

fn symbolic_parameters(spec: &GaloisObjectSpec) -> Vec<String> {
    spec.parameter_names()
        .into_iter()
        .filter(|&p| spec.value(p) == ParamValue::Symbolic)
        .map(|p| Param::new(p).primed(spec.primes()).to_string())
        .collect()
}

fn normal_form(cli: &Cli, algebra: &str, expression: &str) -> CliResult<Report> {
    let spec = algebra.trim();
    let element = if let Some(h) = spec.strip_prefix("free:") {
        free(cli, &hopf_algebra(h)?)?.parse(expression)?
    } else if let Some(fam) = spec.strip_prefix("A:") {
        object(fam)?.parse(expression)?
    } else if spec.contains(';') {
        object(spec)?.parse(expression)?
    } else {
        hopf_algebra(spec)?.parse(expression)?
    };
    let rendered = element.render();
    let mut report = Report::new("normal-form", json!({ "algebra": algebra, "expression": expression }));
    report.result = json!({ "normal_form": rendered, "terms": element.len() });
    report.lines.push(rendered);
    Ok(report)
}

fn coproduct(hopf: &str, expression: &str) -> CliResult<Report> {
    let h = hopf_algebra(hopf)?;
    let delta = h.coproduct(&h.parse(expression)?)?.render();
    let mut report = Report::new("coproduct", json!({ "hopf": hopf, "expression": expression }));
    report.result = json!({ "coproduct": delta, "hopf": h.family().to_string() });
    report.lines.push(delta);
    Ok(report)
}

fn mu(cli: &Cli, hopf: &str, object_spec: &str, expression: &str) -> CliResult<Report> {
    let h = hopf_algebra(hopf)?;
    let a = object(object_spec)?;
    if a.spec().family() != h.family() {
        return Err(UsageError(format!(
            "object {} is not a Galois object over {}",
            a.spec(),
            h.family()
        )));
    }
    let t = free(cli, &h)?;
    let image = t.mu(&t.parse(expression)?, &a)?;
    let rendered = image.render();
    let mut report = Report::new(
        "mu",
        json!({ "hopf": hopf, "object": object_spec, "expression": expression }),
    );
    report.result = json!({ "image": rendered, "terms": image.len(), "zero": image.is_zero() });
    report.lines.push(rendered);
    Ok(report)
}

fn verify(cli: &Cli, object_spec: Option<&str>, matrix_size: usize, identity: &str) -> CliResult<Report> {
    let name = identity.trim().parse::<IdentityName>().ok();
    let mut report = Report::new(
        "verify",
        json!({ "object": object_spec, "identity": identity, "matrix_size": matrix_size }),
    );
    if let Some(IdentityName::Standard(m)) = name {
        let r = identities::verify_matrix_identity(m, matrix_size)?;
        report.success = r.holds;
        report.result = json!({
            "verified": r.holds,
            "substitutions": r.substitutions,
            "matrix_size": matrix_size,
        });
        if r.holds {
            report.lines.push(format!(
                "S_{m} is an identity of {matrix_size}x{matrix_size} matrices ({} substitutions)",
                r.substitutions
            ));
        }
        if let Some((units, value)) = r.witness {
            let units: Vec<String> = units.iter().map(|(i, j)| format!("E[{i},{j}]")).collect();
            report.lines.push(format!("S_{m} is not an identity of {matrix_size}x{matrix_size} matrices"));
            report.lines.push(format!("witness: S_{m}({}) = {value}", units.join(", ")));
            report.witness = Some(json!({ "substitution": units, "value": value }));
        }
        return Ok(report);
    }
    let object_spec = object_spec.ok_or_else(|| UsageError("verify needs --object <spec>".into()))?;
    let a = object(object_spec)?;
    let t = free(cli, a.hopf())?;
    let members = match &name {
        Some(n) => t.identity(n, a.spec())?,
        None => vec![(identity.to_string(), t.parse(identity)?)],
    };
    let mut checked = Vec::new();
    for (member, p) in &members {
        let image = t.mu(p, &a)?;
        checked.push(json!({ "name": member, "vanishes": image.is_zero() }));
        if !image.is_zero() {
            report.success = false;
            report.lines.push(format!("identity falsified: {member}"));
            report.lines.push(format!("witness: {}", image.render()));
            report.witness = Some(json!({ "identity": member, "image": image.render() }));
            break;
        }
    }
    let symbolic = symbolic_parameters(a.spec());
    if report.success {
        let params = if symbolic.is_empty() {
            "numeric parameters".to_string()
        } else {
            format!("symbolic {}", symbolic.join(", "))
        };
        let count = if members.len() > 1 {
            format!(", {} members", members.len())
        } else {
            String::new()
        };
        report.lines.push(format!("identity verified ({params}{count})"));
    }
    report.result = json!({
        "verified": report.success,
        "object": a.spec().to_string(),
        "symbolic": symbolic,
        "members": checked,
    });
    Ok(report)
}

fn distinguish(first: &str, second: &str) -> CliResult<Report> {
    let a1 = object(first)?;
    let a2 = galois_object(&second.trim().parse::<GaloisObjectSpec>()?.primed(1))?;
    let mut report = Report::new("distinguish", json!({ "first": first, "second": second }));
    match identities::distinguish(&a1, &a2)? {
        Verdict::DistinguishedBy { identity, owner, witness } => {
            let rendered = witness.render();
            report.success = false;
            report.result = json!({ "isomorphic": false });
            report.witness = Some(json!({ "identity": identity, "owner": owner + 1, "image": rendered }));
            report.lines.push(format!(
                "not isomorphic: identity {identity} of object {} does not hold on object {}",
                owner + 1,
                2 - owner
            ));
            report.lines.push(format!("witness: {rendered}"));
        }
        Verdict::Isomorphic { a_class } => {
            let (class, line) = match &a_class {
                AClass::Equivalent(v) => (
                    json!({ "kind": "equivalent", "v": v.to_string() }),
                    format!("a-classes agree: a' = v^k a with v = {v}"),
                ),
                AClass::Undetermined => (
                    json!({ "kind": "undetermined" }),
                    "a-classes agree over the algebraic closure; no root in the coefficient field".to_string(),
                ),
                AClass::Symbolic => (json!({ "kind": "symbolic" }), "a is symbolic; a-classes not compared".to_string()),
            };
            report.result = json!({ "isomorphic": true, "a_class": class });
            report.lines.push("isomorphic: no catalog identity separates the objects".into());
            report.lines.push(line);
        }
    }
    Ok(report)
}

fn catalog(cli: &Cli, hopf: &str) -> CliResult<Report> {
    let h = hopf_algebra(hopf)?;
    let spec = GaloisObjectSpec::new(h.family());
    let t = free(cli, &h)?;
    let entries = t.catalog(&spec)?;
    let mut report = Report::new("catalog", json!({ "hopf": hopf }));
    report.result = json!({
        "hopf": h.family().to_string(),
        "identities": entries
            .iter()
            .map(|(name, p)| json!({ "name": name.to_string(), "polynomial": p.render() }))
            .collect::<Vec<_>>(),
    });
    if entries.is_empty() {
        report.lines.push(format!("no catalog identities for {}", h.family()));
    }
    for (name, p) in &entries {
        report.lines.push(format!("{name}: {}", p.render()));
    }
    Ok(report)
}

fn random_element(rng: &mut ChaCha8Rng, alg: &Arc<PresentedAlgebra>) -> CliResult<AlgElement> {
    let gens = alg.generators().len();
    let mut e = AlgElement::zero(alg);
    for _ in 0..rng.gen_range(1..=3) {
        let len = if gens == 0 { 0 } else { rng.gen_range(0..=3) };
        let word = Word::new((0..len).map(|_| rng.gen_range(0..gens) as u16).collect());
        let c = CommPoly::from_int(alg.order(), rng.gen_range(-3..=3));
        e = e.try_add(&AlgElement::from_word(alg, word, c)?)?;
    }
    Ok(e)
}

fn selfcheck(cli: &Cli, hopf: &str, samples: usize) -> CliResult<Report> {
    let h = hopf_algebra(hopf)?;
    let mut suites = Vec::new();
    let mut record = |name: &str, passed: bool, detail: String| {
        suites.push(json!({ "suite": name, "passed": passed, "detail": detail }));
        (name.to_string(), passed, detail)
    };
    let mut lines = Vec::new();

    let confluence = h.algebra().check_confluence();
    lines.push(record(
        "confluence",
        confluence.is_empty(),
        format!("{} unresolved overlaps", confluence.len()),
    ));

    let axioms = h.check_hopf_axioms();
    let detail = match axioms.failures.first() {
        None => format!(
            "{} basis elements, {} relations",
            axioms.checked_elements, axioms.checked_relations
        ),
        Some(f) => format!("{} failures, first: {:?} at {}", axioms.failures.len(), f.axiom, f.element),
    };
    lines.push(record("hopf axioms", axioms.passed(), detail));

    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let mut delta_ok = true;
    for _ in 0..samples {
        let (x, y) = (random_element(&mut rng, h.algebra())?, random_element(&mut rng, h.algebra())?);
        let lhs = h.coproduct(&x.try_mul(&y)?)?;
        delta_ok &= lhs == h.coproduct(&x)?.try_mul(&h.coproduct(&y)?)?;
    }
    lines.push(record("coproduct multiplicativity", delta_ok, format!("{samples} random products")));

    if h.family() != HopfFamily::Trivial {
        let a = galois_object(&GaloisObjectSpec::new(h.family()))?;
        let comodule = a.check_comodule_axioms();
        let detail = match comodule.failures.first() {
            None => format!("object {}", a.spec()),
            Some((axiom, at)) => format!("{} failures, first: {axiom} at {at}", comodule.failures.len()),
        };
        lines.push(record("comodule axioms", comodule.passed(), detail));

        let mut delta_ok = true;
        for _ in 0..samples {
            let (x, y) = (random_element(&mut rng, a.algebra())?, random_element(&mut rng, a.algebra())?);
            let lhs = a.coaction(&x.try_mul(&y)?)?;
            delta_ok &= lhs == a.coaction(&x)?.try_mul(&a.coaction(&y)?)?;
        }
        lines.push(record("coaction multiplicativity", delta_ok, format!("{samples} random products")));
    }

    let mut report = Report::new("selfcheck", json!({ "hopf": hopf, "samples": samples, "seed": cli.seed }));
    report.success = lines.iter().all(|(_, passed, _)| *passed);
    report.result = json!({ "passed": report.success, "suites": suites });
    report.lines = lines
        .into_iter()
        .map(|(name, passed, detail)| format!("{} {name}: {detail}", if passed { "PASS" } else { "FAIL" }))
        .collect();
    report.lines.push(if report.success {
        format!("selfcheck passed for {}", h.family())
    } else {
        format!("selfcheck failed for {}", h.family())
    });
    Ok(report)
}
