//! `opident`: run the exact verifiers from the command line.
//!
//! Exit status is 0 when every check holds, 1 when a mathematical mismatch
//! (or a pole, horizon or degeneracy problem) turned up, and 2 for usage and
//! input errors.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use opident::chebyshev::SuiteRow;
use opident::identity::{uvarov_system, UvarovReport};
use opident::sweep::{self, Bounds, Sweep};
use opident::{
    random, ConfluentInstance, Error, IdentityInstance, MomentFunctional, OrthoSystem, Rational, Scalar,
    VerificationReport,
};

#[derive(Parser, Debug)]
#[command(name = "opident", version, about = "Exact checks of Hankel determinant identities for orthogonal polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Debug, Clone)]
struct Opts {
    /// Seed for every random choice.
    #[arg(long, global = true, env = "OPIDENT_SEED", default_value_t = 1)]
    seed: u64,
    /// Compare series in the inverse variables below this total degree.
    #[arg(long, global = true, default_value_t = 25, value_parser = clap::value_parser!(u32).range(1..))]
    truncation: u32,
    /// Largest polynomial index n.
    #[arg(long, global = true)]
    max_n: Option<usize>,
    /// Largest number of poles y.
    #[arg(long, global = true)]
    max_k: Option<usize>,
    /// Largest number of zeros x.
    #[arg(long, global = true)]
    max_m: Option<usize>,
    /// Number of random functionals (or sequences).
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Moment functional as JSON: `{"type":"atoms","atoms":[["u","w"],..]}`,
    /// `{"type":"sequence","moments":[..]}` or `{"type":"chebyshev"}`.
    #[arg(long, global = true)]
    functional: Option<PathBuf>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a verification sweep.
    #[command(subcommand)]
    Verify(Verify),
    /// Hankel determinant of the (modified) moments.
    Hankel {
        /// Matrix size.
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Zeros `x_l` of the modification, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        x: Vec<String>,
        /// Poles `y_l` of the modification, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        y: Vec<String>,
    },
    /// Orthogonal polynomials for a rationally modified functional.
    Uvarov {
        /// Fixed zeros `x_2, ..., x_m`, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        x: Vec<String>,
        /// Poles, comma separated; drawn at random when omitted.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        y: Vec<String>,
    },
    /// Chebyshev-U evaluations, closed forms and conjectures.
    Chebyshev {
        /// Largest `n` for the closed-form and conjecture rows.
        #[arg(long, default_value_t = 12)]
        closed_max_n: usize,
    },
    /// Small versions of every consistency sweep.
    Selftest,
}

#[derive(Subcommand, Debug)]
enum Verify {
    /// The main identity over random functionals.
    Theorem1 {
        /// Formal `y`s over random moment sequences instead of rational
        /// `y`s over random finite-atom functionals.
        #[arg(long)]
        series: bool,
    },
    /// Repeated parameters.
    Prop13,
    /// Shifted-Hankel relations, Jacobi's identity and the condensation step.
    Lemmas,
}

enum Failure {
    Usage(String),
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::Invalid(_) | Error::Mode(_) | Error::Dimension(_) | Error::Coincident(_) => {
                Failure::Usage(e.to_string())
            }
            Error::Horizon { .. } | Error::Pole(_) | Error::Degenerate(_) => Failure::Math(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

/// `println!` that ignores a closed stdout (e.g. piped into `head`).
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

fn parse_list(items: &[String]) -> Result<Vec<Rational>, Failure> {
    items
        .iter()
        .map(|s| Rational::parse_scalar(s).ok_or_else(|| Failure::Usage(format!("not a rational number: {s:?}"))))
        .collect()
}

fn load_functional(opts: &Opts) -> Result<Option<Arc<MomentFunctional<Rational>>>, Failure> {
    let Some(path) = &opts.functional else { return Ok(None) };
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let f = MomentFunctional::from_json(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(Some(Arc::new(f)))
}

fn print_json(v: &impl Serialize) {
    out!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn report_json(r: &VerificationReport) -> Value {
    let params: serde_json::Map<String, Value> = r.params.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
    let mut out = json!({ "identity": r.identity, "params": params, "lhs": r.lhs, "rhs": r.rhs, "equal": r.equal });
    for (key, val) in [
        ("compared_order", r.compared_order.map(Value::from)),
        ("first_difference", r.first_difference.clone().map(Value::from)),
        ("error", r.error.clone().map(Value::from)),
    ] {
        if let Some(v) = val {
            out[key] = v;
        }
    }
    out
}

fn emit_sweeps(command: &str, opts: &Opts, sweeps: &[Sweep]) -> Outcome {
    let passed = sweeps.iter().all(Sweep::passed);
    let first = sweeps.iter().find_map(Sweep::first_failure);
    if opts.json {
        let summary: Vec<Value> = sweeps
            .iter()
            .flat_map(|s| s.tally())
            .map(|(id, total, ok)| json!({ "identity": id, "instances": total, "passed": ok }))
            .collect();
        print_json(&json!({
            "command": command,
            "seed": opts.seed,
            "passed": passed,
            "summary": summary,
            "counterexample": first.map(report_json),
        }));
    } else {
        for s in sweeps {
            for (id, total, ok) in s.tally() {
                out!("{id}: {ok}/{total} equal");
            }
        }
        match first {
            None => out!("all checks passed"),
            Some(r) => out!("counterexample: {r}"),
        }
    }
    Ok(passed)
}

/// Like the random sweeps, but over one functional supplied by the user.
fn identity_on(f: Arc<MomentFunctional<Rational>>, opts: &Opts, b: Bounds, trials: usize) -> Result<Sweep, Failure> {
    let exact = f.atoms().is_some();
    let depth = (b.max_n + b.max_m).saturating_sub(1);
    let sys = OrthoSystem::build(f.clone(), depth)?;
    let nodes: Vec<Rational> = f.atoms().map(|a| a.iter().map(|(u, _)| u.clone()).collect()).unwrap_or_default();
    let mut rng = random::rng(opts.seed);
    let mut out = Sweep { name: "identity".into(), reports: vec![] };
    for trial in 0..trials {
        for n in 0..=b.max_n {
            for k in 0..=b.max_k {
                if !exact && k == 0 {
                    continue;
                }
                for m in 0..=b.max_m {
                    let mut ps = random::params(&mut rng, m + if exact { k } else { 0 }, &nodes);
                    let inst = if exact {
                        let ys = ps.split_off(m);
                        IdentityInstance::exact(n, ps, ys)
                    } else {
                        IdentityInstance::formal(n, ps, k, opts.truncation)
                    };
                    out.reports.push(opident::identity::verify_identity(&sys, &inst).param("trial", trial));
                }
            }
        }
    }
    Ok(out)
}

fn cmd_theorem1(opts: &Opts, series: bool) -> Outcome {
    let functional = load_functional(opts)?;
    let formal = series || functional.as_ref().is_some_and(|f| f.atoms().is_none());
    let b = if formal {
        Bounds { max_n: opts.max_n.unwrap_or(4), max_k: opts.max_k.unwrap_or(2), max_m: opts.max_m.unwrap_or(2) }
    } else {
        Bounds { max_n: opts.max_n.unwrap_or(6), max_k: opts.max_k.unwrap_or(3), max_m: opts.max_m.unwrap_or(3) }
    };
    if formal && b.max_k > opident::ring::MAX_VARS {
        return Err(Failure::Usage(format!("--max-k is at most {} with formal parameters", opident::ring::MAX_VARS)));
    }
    let s = match functional {
        Some(f) => identity_on(f, opts, b, opts.trials.unwrap_or(1))?,
        None if formal => sweep::series_sweep::<Rational>(opts.seed, opts.trials.unwrap_or(20), b, opts.truncation),
        None => {
            let atoms = 8.max(b.max_n + b.max_m);
            if atoms > 19 {
                return Err(Failure::Usage("--max-n + --max-m must be at most 19".into()));
            }
            sweep::identity_sweep::<Rational>(opts.seed, opts.trials.unwrap_or(100), atoms, b)
        }
    };
    emit_sweeps("verify theorem1", opts, &[s])
}

fn cmd_prop13(opts: &Opts) -> Outcome {
    let max_n = opts.max_n.unwrap_or(5);
    let s = match load_functional(opts)? {
        Some(f) => {
            let sys = OrthoSystem::build(f.clone(), max_n + 2)?;
            let nodes: Vec<Rational> = f
                .atoms()
                .ok_or_else(|| Failure::Usage("repeated parameters need a finite-atom functional".into()))?
                .iter()
                .map(|(u, _)| u.clone())
                .collect();
            let mut rng = random::rng(opts.seed);
            let mut reports = Vec::new();
            for n in 0..=max_n {
                let ps = random::params(&mut rng, 2, &nodes);
                for (xm, ym) in [(2, 0), (0, 2), (2, 2)] {
                    let inst = ConfluentInstance {
                        n,
                        xis: if xm > 0 { vec![(ps[0].clone(), xm)] } else { vec![] },
                        omegas: if ym > 0 { vec![(ps[1].clone(), ym)] } else { vec![] },
                    };
                    reports.push(opident::identity::verify_confluent(&sys, &inst));
                }
            }
            Sweep { name: "confluent".into(), reports }
        }
        None => {
            let atoms = 8.max(max_n + 4);
            if atoms > 19 {
                return Err(Failure::Usage("--max-n must be at most 15".into()));
            }
            sweep::confluent_sweep::<Rational>(opts.seed, opts.trials.unwrap_or(4), atoms, max_n)
        }
    };
    emit_sweeps("verify prop13", opts, &[s])
}

fn cmd_lemmas(opts: &Opts) -> Outcome {
    let max_n = opts.max_n.unwrap_or(6);
    let trials = opts.trials.unwrap_or(50);
    let sweeps = [
        sweep::lemma_sweep::<Rational>(opts.seed, trials, max_n),
        sweep::jacobi_sweep::<Rational>(opts.seed, &[5, 6]),
        sweep::condensation_sweep::<Rational>(opts.seed, trials.min(10), 8),
    ];
    emit_sweeps("verify lemmas", opts, &sweeps)
}

fn cmd_hankel(opts: &Opts, n: usize, x: &[String], y: &[String]) -> Outcome {
    let f = load_functional(opts)?.ok_or_else(|| Failure::Usage("hankel needs --functional".into()))?;
    let (xs, ys) = (parse_list(x)?, parse_list(y)?);
    let value = if xs.is_empty() && ys.is_empty() {
        f.hankel_det(n)?
    } else if ys.is_empty() {
        // polynomial modification: finite moments of any backend
        let e = opident::moments::product_poly(&xs);
        let rho: Vec<Rational> = (0..(2 * n).max(1) - 1)
            .map(|s| f.apply(&(opident::UniPoly::monomial(Rational::from_integer(1.into()), s, "u") * &e)))
            .collect::<Result<_, _>>()?;
        opident::ring::det_field(&opident::RingMatrix::from_fn(n, n, |i, j| rho[i + j].clone()))?
    } else {
        f.modified_hankel_det(n, &xs, &ys)?
    };
    if opts.json {
        let show = |v: &[Rational]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
        print_json(&json!({ "n": n, "xs": show(&xs), "ys": show(&ys), "value": value.to_string() }));
    } else {
        out!("{value}");
    }
    Ok(true)
}

fn uvarov_json(r: &UvarovReport<Rational>, xs: &[Rational], ys: &[Rational]) -> Value {
    let show = |v: &[Rational]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
    let polys: Vec<Value> = r
        .polys
        .iter()
        .map(|p| {
            json!({
                "n": p.n,
                "coefficients": show(p.poly.coeffs()),
                "degree_ok": p.degree_ok,
                "hankel_agrees": p.hankel_agrees,
            })
        })
        .collect();
    let gram: Vec<Vec<String>> = r.gram.iter().map(|row| show(row)).collect();
    let mut out = json!({
        "xs_fixed": show(xs),
        "ys": show(ys),
        "polynomials": polys,
        "gram": gram,
        "orthogonal": r.orthogonal(),
    });
    let short: Vec<usize> = r.polys.iter().filter(|p| !p.degree_ok).map(|p| p.n).collect();
    if !short.is_empty() {
        out["warning"] = json!(format!("degree below n for n = {short:?}"));
    }
    out
}

fn cmd_uvarov(opts: &Opts, x: &[String], y: &[String]) -> Outcome {
    let max_n = opts.max_n.unwrap_or(5);
    let mut rng = random::rng(opts.seed);
    let f = match load_functional(opts)? {
        Some(f) => f,
        None => random::atom_functional(&mut rng, (max_n + 3).clamp(8, 19)),
    };
    let nodes: Vec<Rational> = f.atoms().map(|a| a.iter().map(|(u, _)| u.clone()).collect()).unwrap_or_default();
    let xs = parse_list(x)?;
    let mut ys = parse_list(y)?;
    if ys.is_empty() {
        ys = random::params(&mut rng, opts.max_k.unwrap_or(1), &nodes);
    }
    let depth = max_n + xs.len();
    let sys = OrthoSystem::build(f, depth)?;
    let rep = uvarov_system(&sys, max_n, &xs, &ys)?;
    if opts.json {
        print_json(&uvarov_json(&rep, &xs, &ys));
    } else {
        let show = |v: &[Rational]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        out!("fixed zeros [{}], poles [{}]", show(&xs), show(&ys));
        for p in &rep.polys {
            let flag = if p.degree_ok { "" } else { "  (degree below n)" };
            out!("P_{} = {}{flag}", p.n, p.poly);
        }
        out!("Gram matrix L'(P_i P_j):");
        for row in &rep.gram {
            out!("  [{}]", show(row));
        }
        out!("{}", if rep.passed() { "orthogonal" } else { "NOT orthogonal" });
    }
    Ok(rep.passed())
}

fn print_rows(rows: &[SuiteRow]) {
    for r in rows {
        let mut label = format!("{} n={}", r.id, r.n);
        if let Some(a) = &r.a {
            label.push_str(&format!(" a={a}"));
        }
        if let Some(b) = &r.b {
            label.push_str(&format!(" b={b}"));
        }
        let status = match (r.equal, r.is_conjecture()) {
            (true, true) => "holds",
            (false, true) => "fails",
            (true, false) => "equal",
            (false, false) => "MISMATCH",
        };
        out!("{label}: {status}");
        if !r.equal || r.is_conjecture() {
            out!("  lhs = {}\n  rhs = {}", r.lhs, r.rhs);
        }
    }
}

fn cmd_chebyshev(opts: &Opts, closed_max_n: usize) -> Outcome {
    let rows = sweep::chebyshev_table::<Rational>(opts.max_n.unwrap_or(10), closed_max_n);
    if opts.json {
        print_json(&rows);
    } else {
        print_rows(&rows);
    }
    Ok(opident::chebyshev::table_passed(&rows))
}

fn cmd_selftest(opts: &Opts) -> Outcome {
    let seed = opts.seed;
    let sweeps = vec![
        sweep::identity_sweep::<Rational>(seed, 5, 8, Bounds { max_n: 4, max_k: 3, max_m: 3 }),
        sweep::series_sweep::<Rational>(seed, 2, Bounds { max_n: 3, max_k: 2, max_m: 1 }, 12),
        sweep::confluent_sweep::<Rational>(seed, 1, 8, 4),
        sweep::lemma_sweep::<Rational>(seed, 5, 4),
        sweep::jacobi_sweep::<Rational>(seed, &[4]),
        sweep::condensation_sweep::<Rational>(seed, 2, 7),
        sweep::internals_sweep::<Rational>(seed, 3, 6),
        sweep::determinant_sweep::<Rational>(seed, 200, 6),
    ];
    let mut extra = Sweep { name: "selftest".into(), reports: vec![] };
    for run in sweep::uvarov_sweep::<Rational>(seed, 2, 8, 4) {
        let rep = VerificationReport::new("uvarov").param("trial", run.trial);
        extra.reports.push(match &run.result {
            Ok(r) => rep.sides("orthogonal", if r.passed() { "orthogonal" } else { "not orthogonal" }, r.passed()),
            Err(e) => rep.failed(e),
        });
    }
    for row in sweep::chebyshev_table::<Rational>(5, 0) {
        let rep = VerificationReport::new(format!("chebyshev-{}", row.id)).param("n", row.n);
        extra.reports.push(rep.sides(&row.lhs, &row.rhs, row.equal));
    }
    let mut sweeps = sweeps;
    sweeps.push(extra);
    emit_sweeps("selftest", opts, &sweeps)
}

fn run(cli: &Cli) -> Outcome {
    let opts = &cli.opts;
    match &cli.command {
        Command::Verify(Verify::Theorem1 { series }) => cmd_theorem1(opts, *series),
        Command::Verify(Verify::Prop13) => cmd_prop13(opts),
        Command::Verify(Verify::Lemmas) => cmd_lemmas(opts),
        Command::Hankel { n, x, y } => cmd_hankel(opts, *n, x, y),
        Command::Uvarov { x, y } => cmd_uvarov(opts, x, y),
        Command::Chebyshev { closed_max_n } => cmd_chebyshev(opts, *closed_max_n),
        Command::Selftest => cmd_selftest(opts),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Math(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
