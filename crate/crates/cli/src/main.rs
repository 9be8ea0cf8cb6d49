mod display;
mod export;
mod instance;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use reeskit_core::reescomb::{build_b, build_c, minors2, VarMatrix};
use reeskit_core::truncation::{h_polynomials, truncation_generators, HBasis};
use reeskit_core::verifier::{sweep, CheckKind, CheckParams, Report, Target, Verdict};
use reeskit_core::{Error as CoreError, FieldSpec};
use serde_json::json;

use display::{display_poly, target_line};
use export::Dialect;
use instance::{FileError, InstanceFile, Mode};

const EXIT_USAGE: u8 = 1;
const EXIT_ABORTED: u8 = 2;
const EXIT_FAILED: u8 = 3;

#[derive(Parser)]
#[command(name = "reeskit", version, about = "Rees algebras of sums of powers of the maximal ideal and of truncations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the matrices, minors and h-polynomials of an instance.
    Construct(Common),
    /// Run checks and exit 0 only if every verdict is `pass`.
    Verify(VerifyArgs),
    /// Print a script that rebuilds the presentations.
    Export(ExportArgs),
}

#[derive(Args)]
struct Common {
    /// Instance file (`key = value` lines).
    file: PathBuf,
    /// Coefficient field, overriding the file: `Q` or `Fp:<p>`.
    #[arg(long)]
    field: Option<FieldSpec>,
    /// Seed, overriding the file.
    #[arg(long)]
    seed: Option<u64>,
    /// Cap on S-pairs per Groebner basis computation.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pair_cap: Option<u64>,
    /// Cap on the degree of S-polynomials.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    deg_cap: Option<u32>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    /// Comma-separated check names; all checks of the instance's mode by default.
    #[arg(long, value_delimiter = ',')]
    checks: Vec<String>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,
    /// Values of delta for `symbolic-power`, comma-separated.
    #[arg(long, value_delimiter = ',')]
    delta: Vec<u32>,
    /// Degree bound of the `symbolic-power` witness search.
    #[arg(long)]
    witness_bound: Option<u32>,
    /// Random column submatrices per matrix in `gb-minors`.
    #[arg(long, default_value_t = 5)]
    submatrices: usize,
    /// Write the JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    common: Common,
    /// plain, m2 or singular.
    #[arg(long, default_value = "plain")]
    dialect: Dialect,
}

/// An error with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        let code = if matches!(e, CoreError::Aborted { .. }) { EXIT_ABORTED } else { EXIT_USAGE };
        Failure { code, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let res = match &cli.command {
        Command::Construct(c) => construct(c),
        Command::Verify(v) => verify(v),
        Command::Export(x) => run_export(x),
    };
    match res {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

/// Reads the file and applies the command-line overrides.
fn load(c: &Common) -> Result<(InstanceFile, Target), Failure> {
    let text = std::fs::read_to_string(&c.file)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", c.file.display())))?;
    let located = |e: FileError| Failure::usage(format!("{}: {e}", c.file.display()));
    let mut file = InstanceFile::parse(&text).map_err(located)?;
    if let Some(field) = c.field {
        file.field = field;
    }
    if let Some(seed) = c.seed {
        file.seed = seed;
    }
    if let Some(cap) = c.pair_cap {
        file.guards.max_pairs = cap as usize;
    }
    if let Some(cap) = c.deg_cap {
        file.guards.max_degree = cap;
    }
    let target = file.target().map_err(|e| match e {
        FileError::Instance(core) => Failure::from(core),
        other => located(other),
    })?;
    Ok((file, target))
}

fn print_matrix(out: &mut String, name: &str, m: &VarMatrix) {
    out.push_str(&format!("matrix {name} ({}x{}):\n", m.rows(), m.cols()));
    for line in m.grid().lines() {
        out.push_str(&format!("  {line}\n"));
    }
    let minors = minors2(m);
    out.push_str(&format!("2x2 minors of {name} ({}):\n", minors.len()));
    for mi in minors {
        out.push_str(&format!(
            "  rows {},{} cols {},{}: {}\n",
            mi.rows.0 + 1,
            mi.rows.1 + 1,
            mi.cols.0 + 1,
            mi.cols.1 + 1,
            display_poly(&mi.poly)
        ));
    }
}

fn construct_text(file: &InstanceFile, target: &Target) -> Result<String, CoreError> {
    let mut out = format!("instance: {}\nfield: {}\n", target_line(target), file.field);
    match target {
        Target::Powers(inst) => {
            print_matrix(&mut out, "B", &build_b(inst)?);
            print_matrix(&mut out, "C", &build_c(inst)?);
        }
        Target::Truncation(ti) => {
            let a: Vec<String> = ti.a().iter().map(u32::to_string).collect();
            out.push_str(&format!("a = ({})\n", a.join(",")));
            let gens = truncation_generators(ti)?;
            out.push_str(&format!("generators of the truncation ({}):\n", gens.len()));
            for g in &gens {
                out.push_str(&format!("  {}\n", display_poly(g)));
            }
            print_matrix(&mut out, "B", &build_b(ti.blocks())?);
            print_matrix(&mut out, "C", &build_c(ti.blocks())?);
            if ti.r() >= 2 {
                let h = h_polynomials(ti, HBasis::Monomial)?;
                out.push_str(&format!("h-polynomials ({}):\n", h.polys.len()));
                for (p, tag) in h.polys.iter().zip(&h.tags) {
                    let w = tag.w.as_ref().map(|w| format!(", w = {}", display_poly(w))).unwrap_or_default();
                    out.push_str(&format!("  h = {}    # forms {},{}{w}\n", display_poly(p), tag.i, tag.j));
                }
            }
        }
    }
    Ok(out)
}

fn construct(c: &Common) -> Result<u8, Failure> {
    let (file, target) = load(c)?;
    print!("{}", construct_text(&file, &target)?);
    Ok(0)
}

fn default_checks(target: &Target) -> Vec<CheckKind> {
    CheckKind::ALL
        .into_iter()
        .filter(|k| match target {
            Target::Powers(_) => k.is_powers(),
            Target::Truncation(ti) => !k.is_powers() && (*k != CheckKind::DivisorialIdentity || ti.r() == 2),
        })
        .collect()
}

fn exit_code(reports: &[Report]) -> u8 {
    if reports.iter().any(|r| matches!(r.verdict, Verdict::Fail | Verdict::BoundExhausted | Verdict::Error)) {
        EXIT_FAILED
    } else if reports.iter().any(|r| r.verdict == Verdict::Aborted) {
        EXIT_ABORTED
    } else {
        0
    }
}

fn write_report(path: &Path, file: &InstanceFile, target: &Target, reports: &[Report]) -> Result<(), Failure> {
    let doc = json!({
        "tool": "reeskit",
        "version": env!("CARGO_PKG_VERSION"),
        "instance": target.echo(),
        "seed": file.seed,
        "guards": { "pairCap": file.guards.max_pairs, "degCap": file.guards.max_degree },
        "reports": reports,
    });
    let text = serde_json::to_string_pretty(&doc).map_err(|e| Failure::usage(e.to_string()))?;
    std::fs::write(path, text + "\n")
        .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
}

fn verify(v: &VerifyArgs) -> Result<u8, Failure> {
    let mut checks = Vec::new();
    for name in v.checks.iter().map(|s| s.trim()).filter(|s| !s.is_empty()) {
        let kind: CheckKind = name.parse().map_err(|e: CoreError| {
            let known: Vec<&str> = CheckKind::ALL.iter().map(|k| k.as_str()).collect();
            Failure::usage(format!("{e}; known checks: {}", known.join(", ")))
        })?;
        if !checks.contains(&kind) {
            checks.push(kind);
        }
    }
    let (file, target) = load(&v.common)?;
    let mode = match target {
        Target::Powers(_) => Mode::Powers,
        Target::Truncation(_) => Mode::Truncation,
    };
    if checks.is_empty() {
        checks = default_checks(&target);
    }
    for k in &checks {
        if k.is_powers() != (mode == Mode::Powers) {
            return Err(Failure::usage(format!("check `{k}` does not apply to {mode} instances")));
        }
    }
    let params = CheckParams {
        guards: file.guards,
        seed: file.seed,
        submatrices: v.submatrices,
        delta: (!v.delta.is_empty()).then(|| v.delta.clone()),
        witness_bound: v.witness_bound,
    };
    let jobs = v
        .jobs
        .map(|j| j as usize)
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1));
    let plan: Vec<(CheckKind, Target)> = checks.iter().map(|&k| (k, target.clone())).collect();
    let reports = sweep(&plan, &params, jobs)?;
    for r in &reports {
        println!("{}", display::rename_summary(&r.summary(&target)));
        if let Some(ce) = &r.counterexample {
            println!("  counterexample: {}", display::rename_summary(&ce.to_string()));
        }
        if let Some(e) = r.evidence.get("error").or_else(|| r.evidence.get("abortReason")) {
            println!("  reason: {}", e.as_str().unwrap_or_default());
        }
    }
    let passed = reports.iter().filter(|r| r.passed()).count();
    println!("{passed}/{} checks pass", reports.len());
    if let Some(path) = &v.report {
        write_report(path, &file, &target, &reports)?;
    }
    Ok(exit_code(&reports))
}

fn run_export(x: &ExportArgs) -> Result<u8, Failure> {
    let (file, target) = load(&x.common)?;
    print!("{}", export::export(&file, &target, x.dialect, &file.guards)?);
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(verdict: Verdict) -> Report {
        Report {
            check: CheckKind::Dimension,
            instance: json!({}),
            verdict,
            evidence: Default::default(),
            counterexample: None,
            elapsed_ms: 0,
        }
    }

    #[test]
    fn exit_code_precedence() {
        assert_eq!(exit_code(&[report(Verdict::Pass)]), 0);
        assert_eq!(exit_code(&[report(Verdict::Pass), report(Verdict::Aborted)]), EXIT_ABORTED);
        assert_eq!(exit_code(&[report(Verdict::Aborted), report(Verdict::Fail)]), EXIT_FAILED);
        assert_eq!(exit_code(&[report(Verdict::BoundExhausted)]), EXIT_FAILED);
    }

    #[test]
    fn truncation_defaults_skip_divisorial_for_one_form() {
        let f = InstanceFile::parse("mode = truncation\nn = 2\nf = x1\nd = 2\n").unwrap();
        let checks = default_checks(&f.target().unwrap());
        assert!(!checks.contains(&CheckKind::DivisorialIdentity));
        assert!(checks.contains(&CheckKind::ReesPresentation));
        let f = InstanceFile::parse("mode = truncation\nn = 2\nf = x1, x2\nd = 2\n").unwrap();
        assert!(default_checks(&f.target().unwrap()).contains(&CheckKind::DivisorialIdentity));
    }
}
