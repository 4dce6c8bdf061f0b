use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use schubcalc::enumcount::{
    append_ledger, check_functional_equation, timed_census, CensusOptions, LedgerRecord,
};
use schubcalc::geom::{smoothness_reports, SmoothMode};
use schubcalc::perm::{bruhat_leq, dominant_lift};
use schubcalc::schubert::{lr_coeff, phi_word_general, try_schubert_poly};
use schubcalc::tableau::{is_richardson, richardson_pair, StandardTableau};
use schubcalc::verify::{run_suite, Kernels, MUTABLE_KERNELS};
use schubcalc::wa::{dominant_form, is_aligned, is_very_well_aligned, is_well_aligned, wa_coeff, wa_expansion};
use schubcalc::Permutation;

#[derive(Parser)]
#[command(name = "schubcalc", version, about = "Schubert calculus for well-aligned pairs")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Pad every permutation argument to this window.
    #[arg(long, global = true)]
    window: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Schubert polynomial of a permutation.
    Schubert {
        /// One-line notation, e.g. `4 5 1 2 3`, `45123`, `4,5,1,2,3` or `@file`.
        perm: Vec<String>,
    },
    /// Structure constant c^w_{u,v}.
    Coeff {
        u: String,
        v: String,
        w: String,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
    },
    /// Alignment predicates for a pair.
    WaCheck { v: String, w: String },
    /// The dominant form of a well-aligned pair.
    DominantForm { v: String, w: String },
    /// Richardson data for a tableau file (plain rows or JSON).
    Richardson { file: PathBuf },
    /// Deodhar counts at the fixed points of a Bruhat interval.
    Smooth {
        v: String,
        w: String,
        #[arg(long, value_enum, default_value_t = Mode::TwoPoint)]
        mode: Mode,
    },
    /// Count well-aligned pairs for n = 1..=max-n.
    Census {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long)]
        jobs: Option<usize>,
        /// Append one JSON line per window to this file.
        #[arg(long)]
        ledger: Option<PathBuf>,
        /// Allow n = 8, which takes a long time.
        #[arg(long)]
        long: bool,
    },
    /// Run the exhaustive property suite on windows up to n.
    Verify {
        #[arg(default_value_t = 4)]
        n: usize,
        #[arg(long)]
        jobs: Option<usize>,
        /// Allow n above 5.
        #[arg(long)]
        force: bool,
        #[arg(long, hide = true)]
        mutate: Option<String>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Oracle,
    Pieri,
    Phi,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    TwoPoint,
    AllPoints,
}

enum Failure {
    Domain(String),
    Parse(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Domain(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Internal(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Domain(m) | Failure::Parse(m) | Failure::Internal(m) => m,
        }
    }
}

/// Text and JSON renderings of a command's result, plus whether the command
/// itself signals failure (verify).
struct Output {
    text: String,
    json: Value,
    failed: Option<Failure>,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Self { text, json, failed: None }
    }
}

fn read_arg(arg: &str) -> Result<String, Failure> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

struct Ctx {
    window: Option<usize>,
}

impl Ctx {
    fn perms(&self, args: &[&str]) -> Result<(Vec<Permutation>, usize), Failure> {
        let mut out = Vec::new();
        for a in args {
            let text = read_arg(a)?;
            let p: Permutation = text
                .trim()
                .parse()
                .map_err(|e| Failure::Parse(format!("cannot parse permutation {:?}: {e}", text.trim())))?;
            out.push(p);
        }
        let inferred = out.iter().map(Permutation::window).max().unwrap_or(0);
        let n = match self.window {
            Some(n) => {
                if let Some(p) = out.iter().find(|p| p.support() > n) {
                    return Err(Failure::Domain(format!("{p} does not fit in window {n}")));
                }
                n
            }
            None => inferred,
        };
        Ok((out.into_iter().map(|p| p.padded(n)).collect(), n))
    }
}

fn compact(p: &Permutation, n: usize) -> String {
    p.padded(n.max(p.support())).to_compact()
}

fn cmd_schubert(ctx: &Ctx, perm: &[String]) -> Result<Output, Failure> {
    let joined = perm.join(" ");
    let (ps, n) = ctx.perms(&[joined.as_str()])?;
    let u = &ps[0];
    let f = try_schubert_poly(u).map_err(|e| Failure::Domain(e.to_string()))?;
    let poly = f.to_string();
    Ok(Output::ok(format!("{poly}\n"), json!({"u": compact(u, n), "polynomial": poly})))
}

#[derive(Serialize)]
struct CoeffRecord {
    u: String,
    v: String,
    w: String,
    method: &'static str,
    value: String,
}

fn cmd_coeff(ctx: &Ctx, u: &str, v: &str, w: &str, method: Method) -> Result<Output, Failure> {
    let (ps, n) = ctx.perms(&[u, v, w])?;
    let (u, v, w) = (&ps[0], &ps[1], &ps[2]);
    let needs_wa = matches!(method, Method::Pieri | Method::Phi | Method::All);
    if needs_wa && !is_well_aligned(v, w) {
        return Err(Failure::Domain(format!(
            "({}, {}) is not well-aligned; use --method oracle",
            compact(v, n),
            compact(w, n)
        )));
    }
    let mut values: Vec<(&'static str, BigInt)> = Vec::new();
    if matches!(method, Method::Oracle | Method::All) {
        values.push(("oracle", lr_coeff(u, v, w)));
    }
    if matches!(method, Method::Pieri | Method::All) {
        values.push(("pieri", wa_coeff(u, v, w).map_err(|e| Failure::Domain(e.to_string()))?));
    }
    if matches!(method, Method::Phi | Method::All) {
        let word = phi_word_general(v, w).map_err(|e| Failure::Domain(e.to_string()))?;
        let su = try_schubert_poly(u).map_err(|e| Failure::Domain(e.to_string()))?;
        values.push(("phi", word.evaluate(&su)));
    }
    let records: Vec<CoeffRecord> = values
        .iter()
        .map(|(m, c)| CoeffRecord {
            u: compact(u, n),
            v: compact(v, n),
            w: compact(w, n),
            method: m,
            value: c.to_string(),
        })
        .collect();
    let mut text = String::new();
    for r in &records {
        let _ = writeln!(text, "u={} v={} w={} method={} value={}", r.u, r.v, r.w, r.method, r.value);
    }
    if method == Method::All {
        let agree = values.windows(2).all(|p| p[0].1 == p[1].1);
        let verdict = if agree { "AGREE" } else { "DISAGREE" };
        let _ = writeln!(text, "{verdict}");
        let out = Output {
            text,
            json: json!({"records": records, "verdict": verdict}),
            failed: (!agree).then(|| Failure::Internal("methods disagree".to_string())),
        };
        return Ok(out);
    }
    let json = serde_json::to_value(&records[0]).map_err(|e| Failure::Internal(e.to_string()))?;
    Ok(Output::ok(text, json))
}

fn cmd_wa_check(ctx: &Ctx, v: &str, w: &str) -> Result<Output, Failure> {
    let (ps, n) = ctx.perms(&[v, w])?;
    let (v, w) = (&ps[0], &ps[1]);
    let fields = [
        ("aligned", is_aligned(v, w)),
        ("well_aligned", is_well_aligned(v, w)),
        ("very_well_aligned", is_very_well_aligned(v, w)),
        ("bruhat_leq", bruhat_leq(v, w)),
        ("dominant_bottom", v.is_dominant()),
    ];
    let mut text = format!("v={} w={}\n", compact(v, n), compact(w, n));
    let mut obj = serde_json::Map::new();
    obj.insert("v".into(), json!(compact(v, n)));
    obj.insert("w".into(), json!(compact(w, n)));
    for (k, b) in fields {
        let _ = writeln!(text, "{k}={b}");
        obj.insert(k.into(), json!(b));
    }
    Ok(Output::ok(text, Value::Object(obj)))
}

fn cmd_dominant_form(ctx: &Ctx, v: &str, w: &str) -> Result<Output, Failure> {
    let (ps, n) = ctx.perms(&[v, w])?;
    let (v, w) = (&ps[0], &ps[1]);
    let (dv, dw) = dominant_form(v, w).map_err(|e| Failure::Domain(e.to_string()))?;
    let (_, steps) = dominant_lift(v);
    let steps_text: Vec<String> = steps.iter().map(usize::to_string).collect();
    let text = format!(
        "v={}\nw={}\nsteps={}\nv_up={}\nw_up={}\n",
        compact(v, n),
        compact(w, n),
        steps_text.join(","),
        compact(&dv, n),
        compact(&dw, n)
    );
    let json = json!({
        "v": compact(v, n),
        "w": compact(w, n),
        "steps": steps,
        "v_up": compact(&dv, n),
        "w_up": compact(&dw, n),
    });
    Ok(Output::ok(text, json))
}

fn cmd_richardson(ctx: &Ctx, file: &PathBuf) -> Result<Output, Failure> {
    let text = std::fs::read_to_string(file).map_err(|e| Failure::Parse(format!("{}: {e}", file.display())))?;
    let t = StandardTableau::parse(&text).map_err(|e| Failure::Parse(e.to_string()))?;
    let n = ctx.window.unwrap_or(0).max(t.size());
    let rich = is_richardson(&t);
    let (v, w) = richardson_pair(&t);
    let mut out = format!("richardson={rich}\nv={}\nw={}\n", compact(&v, n), compact(&w, n));
    let mut obj = serde_json::Map::new();
    obj.insert("richardson".into(), json!(rich));
    obj.insert("v".into(), json!(compact(&v, n)));
    obj.insert("w".into(), json!(compact(&w, n)));
    if !rich {
        let notice = "not a Richardson tableau; skipping alignment, smoothness and expansion";
        let _ = writeln!(out, "notice: {notice}");
        obj.insert("notice".into(), json!(notice));
        return Ok(Output::ok(out, Value::Object(obj)));
    }
    let very = is_very_well_aligned(&v, &w);
    let smooth = smoothness_reports(&v, &w, SmoothMode::TwoPoint)
        .map_err(|e| Failure::Internal(e.to_string()))?
        .iter()
        .all(|r| r.smooth_at_point);
    let exp = wa_expansion(&v, &w, n).map_err(|e| Failure::Internal(e.to_string()))?;
    let _ = writeln!(out, "very_well_aligned={very}\nsmooth={smooth}\nexpansion:");
    out.push_str(&exp.render(n));
    obj.insert("very_well_aligned".into(), json!(very));
    obj.insert("smooth".into(), json!(smooth));
    obj.insert("expansion".into(), json!(exp.to_records(n)));
    Ok(Output::ok(out, Value::Object(obj)))
}

fn cmd_smooth(ctx: &Ctx, v: &str, w: &str, mode: Mode) -> Result<Output, Failure> {
    let (ps, _) = ctx.perms(&[v, w])?;
    let (v, w) = (&ps[0], &ps[1]);
    let mode = match mode {
        Mode::TwoPoint => SmoothMode::TwoPoint,
        Mode::AllPoints => SmoothMode::AllPoints,
    };
    let reports = smoothness_reports(v, w, mode).map_err(|e| Failure::Domain(e.to_string()))?;
    let smooth = reports.iter().all(|r| r.smooth_at_point);
    let mut text = String::new();
    for r in &reports {
        let _ = writeln!(text, "{r}");
    }
    let _ = writeln!(text, "smooth={smooth}");
    let points: Vec<_> = reports.iter().map(|r| r.to_record()).collect();
    Ok(Output::ok(text, json!({"points": points, "smooth": smooth})))
}

fn cmd_census(max_n: usize, jobs: Option<usize>, ledger: Option<&PathBuf>, long: bool) -> Result<Output, Failure> {
    if max_n == 0 {
        return Err(Failure::Domain("--max-n must be at least 1".into()));
    }
    if max_n >= 8 && !long {
        return Err(Failure::Domain(format!("--max-n {max_n} needs --long (n = 8 scans 1.6e9 pairs)")));
    }
    let opts = CensusOptions { jobs, ..CensusOptions::default() };
    let mut records: Vec<LedgerRecord> = Vec::new();
    for n in 1..=max_n {
        records.push(timed_census(n, &opts).map_err(|e| Failure::Domain(e.to_string()))?);
    }
    let mut counts = vec![BigInt::from(1)];
    counts.extend(records.iter().map(|r| BigInt::from(r.result.wa_count)));
    let functional = check_functional_equation(&counts).map_err(|e| Failure::Internal(e.to_string()))?;
    if let Some(path) = ledger {
        append_ledger(path, &records).map_err(|e| Failure::Internal(e.to_string()))?;
    }
    let mut text = format!("{:>2} {:>10} {:>11} {:>13} {:>7}\n", "n", "wa", "wa132", "very_wa", "classes");
    for r in &records {
        let c = &r.result;
        let _ = writeln!(
            text,
            "{:>2} {:>10} {:>11} {:>13} {:>7}",
            c.n, c.wa_count, c.wa132_count, c.very_wa_count, c.equivalence_class_count
        );
    }
    let _ = writeln!(text, "functional_equation={functional}");
    let results: Vec<_> = records.iter().map(|r| &r.result).collect();
    Ok(Output::ok(text, json!({"results": results, "functional_equation": functional})))
}

fn cmd_verify(n: usize, jobs: Option<usize>, force: bool, mutate: Option<&str>) -> Result<Output, Failure> {
    if n == 0 {
        return Err(Failure::Domain("n must be at least 1".into()));
    }
    if n > 5 && !force {
        return Err(Failure::Domain(format!("n = {n} is above the default guard of 5; pass --force")));
    }
    let kernels = match mutate {
        None => Kernels::standard(),
        Some(name) => Kernels::mutated(name).ok_or_else(|| {
            Failure::Parse(format!("unknown kernel {name:?}; expected one of {}", MUTABLE_KERNELS.join(", ")))
        })?,
    };
    let outcomes = match jobs {
        None => run_suite(n, &kernels),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Failure::Internal(e.to_string()))?
            .install(|| run_suite(n, &kernels)),
    };
    let width = outcomes.iter().map(|o| o.name.len()).max().unwrap_or(0);
    let mut text = String::new();
    let mut rows = Vec::new();
    for o in &outcomes {
        let status = if o.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(text, "{:width$}  {status}  {}", o.name, o.checked);
        if let Some(ce) = &o.counterexample {
            for line in ce.lines() {
                let _ = writeln!(text, "    {line}");
            }
        }
        rows.push(json!({"property": o.name, "status": status, "checked": o.checked, "counterexample": o.counterexample}));
    }
    let failed = outcomes.iter().filter(|o| !o.passed()).count();
    let _ = writeln!(text, "{} properties, {failed} failed", outcomes.len());
    let failure = (failed > 0).then(|| Failure::Domain(format!("{failed} properties failed")));
    Ok(Output { text, json: json!({"n": n, "properties": rows, "failed": failed}), failed: failure })
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let ctx = Ctx { window: cli.window };
    match &cli.command {
        Command::Schubert { perm } => cmd_schubert(&ctx, perm),
        Command::Coeff { u, v, w, method } => cmd_coeff(&ctx, u, v, w, *method),
        Command::WaCheck { v, w } => cmd_wa_check(&ctx, v, w),
        Command::DominantForm { v, w } => cmd_dominant_form(&ctx, v, w),
        Command::Richardson { file } => cmd_richardson(&ctx, file),
        Command::Smooth { v, w, mode } => cmd_smooth(&ctx, v, w, *mode),
        Command::Census { max_n, jobs, ledger, long } => cmd_census(*max_n, *jobs, ledger.as_ref(), *long),
        Command::Verify { n, jobs, force, mutate } => cmd_verify(*n, *jobs, *force, mutate.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    std::panic::set_hook(Box::new(|_| {}));
    let result = std::panic::catch_unwind(|| run(&cli)).unwrap_or_else(|payload| {
        let msg = payload
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "unknown panic".to_string());
        Err(Failure::Internal(format!("internal error: {msg}")))
    });
    match result {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("JSON values serialize"));
            } else {
                print!("{}", out.text);
            }
            match out.failed {
                None => ExitCode::SUCCESS,
                Some(f) => {
                    eprintln!("error: {}", f.message());
                    ExitCode::from(f.code())
                }
            }
        }
        Err(f) => {
            if cli.json {
                println!("{}", json!({"error": f.message(), "exit_code": f.code()}));
            }
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
