//! Command-line front end: reads pencil and invariant files, runs the
//! subpencil decision and completion, and writes exact JSON results.
//!
//! Exit codes: `0` yes / success, `1` no / rejected, `2` parse or scope
//! errors (one-line diagnostic on stderr), `3` a completion that failed its
//! own re-verification.

pub mod files;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;
use subpencil_core::oracle::{
    epi_p0_kernel_exists_bruteforce, linking_system_feasible, mono_exists_bruteforce, subfactor_bruteforce_matrix,
};
use subpencil_core::{
    complete, complete_rm, epi_with_p0_kernel, is_subpencil_cm, is_subpencil_rm, minimal_column_indices, mono_exists,
    pencil_of_module, pencil_of_preprojective, subfactor_check, verify_completion, CompletionResult, Error, Field,
    FieldSpec, Invariants, ModuleKind, Pencil, PreinjInvariants, PrimeField, Rationals, SubfactorWitness,
};

use crate::files::{
    completion_from_file, completion_to_file, pencil_to_file, read_json, write_json, AnyPencil, CompletionFile,
    CompletionMode, InvariantsFile, ModuleFamily, PencilFile,
};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "subpencil", version, about = "Exact subpencil decisions and completions for matrix pencils")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the minimal column indices of a pencil.
    Invariants {
        pencil: PathBuf,
        /// Machine-readable output.
        #[arg(long)]
        json: bool,
    },
    /// Decide whether one preinjective module embeds in another.
    CheckMono {
        sub: PathBuf,
        sup: PathBuf,
        /// Print the weighted prefix-sum inequalities.
        #[arg(long)]
        explain: bool,
    },
    /// Decide whether the first pencil is a subpencil of the second.
    CheckSubpencil {
        sub: PathBuf,
        sup: PathBuf,
        /// Treat both pencils as having only minimal row indices.
        #[arg(long)]
        row_minimal: bool,
        /// Machine-readable output.
        #[arg(long)]
        json: bool,
    },
    /// Build and verify completion blocks, then write them to a file.
    Complete {
        sub: PathBuf,
        sup: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Treat both pencils as having only minimal row indices.
        #[arg(long)]
        row_minimal: bool,
    },
    /// Check a completion file against its two pencils.
    Verify { sub: PathBuf, sup: PathBuf, completion: PathBuf },
    /// Write the canonical pencil of an invariants file.
    Canonical {
        invariants: PathBuf,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// `Q` or `GF(p)`.
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Brute-force audits comparing the criteria with exhaustive searches.
    #[command(hide = true)]
    Oracle(OracleArgs),
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[command(subcommand)]
    check: OracleCheck,
}

#[derive(Subcommand, Debug)]
enum OracleCheck {
    /// Embedding of the first module into the second, over GF(p).
    Mono {
        sub: PathBuf,
        sup: PathBuf,
        #[arg(long, default_value_t = 2)]
        p: u64,
    },
    /// Surjection from the first module onto the second with kernel a multiple of P0, over GF(p).
    Epi {
        module: PathBuf,
        quotient: PathBuf,
        #[arg(long, default_value_t = 2)]
        p: u64,
    },
    /// Subfactor relation by matrix enumeration over GF(p).
    Subfactor {
        sub: PathBuf,
        sup: PathBuf,
        #[arg(long, default_value_t = 2)]
        p: u64,
    },
    /// Subfactor relation by integer search over the linking system.
    Linking { sub: PathBuf, sup: PathBuf },
}

/// Runs the command line with the process streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (stdout, stderr) = (std::io::stdout(), std::io::stderr());
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the command line, writing results to `out` and diagnostics to `err`.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_YES };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", one_line(&e));
            EXIT_ERROR
        }
    }
}

fn one_line(e: &anyhow::Error) -> String {
    e.chain().map(|c| c.to_string()).collect::<Vec<_>>().join(": ")
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Invariants { pencil, json } => cmd_invariants(&pencil, json, out),
        Command::CheckMono { sub, sup, explain } => cmd_check_mono(&sub, &sup, explain, out),
        Command::CheckSubpencil { sub, sup, row_minimal, json } => cmd_check_subpencil(&sub, &sup, row_minimal, json, out),
        Command::Complete { sub, sup, seed, out: path, row_minimal } => {
            cmd_complete(&sub, &sup, seed, &path, row_minimal, out)
        }
        Command::Verify { sub, sup, completion } => cmd_verify(&sub, &sup, &completion, out),
        Command::Canonical { invariants, out: path, field } => cmd_canonical(&invariants, path.as_deref(), &field, out),
        Command::Oracle(args) => cmd_oracle(args.check, out),
    }
}

fn load_pencil(path: &Path) -> Result<AnyPencil> {
    read_json::<PencilFile>(path)?.to_pencil().with_context(|| format!("invalid pencil in {}", path.display()))
}

fn load_invariants(path: &Path) -> Result<InvariantsFile> {
    read_json(path)
}

/// Applies `$body` to two pencils over the same field, binding them as `$a`, `$b`.
macro_rules! with_same_field {
    ($x:expr, $y:expr, |$a:ident, $b:ident| $body:expr) => {
        match ($x, $y) {
            (AnyPencil::Q($a), AnyPencil::Q($b)) => $body,
            (AnyPencil::Gf($a), AnyPencil::Gf($b)) if $a.field() == $b.field() => $body,
            (x, y) => bail!("pencils are over different fields ({} and {})", x.spec(), y.spec()),
        }
    };
}

fn format_seq(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn cmd_invariants(path: &Path, json: bool, out: &mut dyn Write) -> Result<i32> {
    let pencil = load_pencil(path)?;
    let inv = match &pencil {
        AnyPencil::Q(p) => minimal_column_indices(p),
        AnyPencil::Gf(p) => minimal_column_indices(p),
    }?;
    if json {
        let v = json!({
            "field": pencil.spec().to_string(),
            "kind": "preinjective",
            "mult": inv.mult(),
            "eps": inv.epsilons(),
            "dim": [inv.dim().d1, inv.dim().d2],
        });
        writeln!(out, "{}", serde_json::to_string(&v)?)?;
    } else {
        let eps: Vec<String> = inv.epsilons().iter().map(|e| e.to_string()).collect();
        writeln!(out, "minimal column indices: {{{}}}", eps.join(", "))?;
        writeln!(out, "module: {inv}")?;
        writeln!(out, "dimension: {}", inv.dim())?;
    }
    Ok(EXIT_YES)
}

fn cmd_check_mono(sub: &Path, sup: &Path, explain: bool, out: &mut dyn Write) -> Result<i32> {
    let a = load_invariants(sub)?.preinjective()?;
    let b = load_invariants(sup)?.preinjective()?;
    let yes = mono_exists(&a, &b);
    writeln!(out, "{}", if yes { "yes" } else { "no" })?;
    if explain {
        writeln!(out, "{a} -> {b}")?;
        writeln!(out, "{:>3}  {:>8}  {:>8}  holds", "k", "sub", "sup")?;
        writeln!(out, "{:>3}  {:>8}  {:>8}  {}", 0, a.get(0), b.get(0), a.get(0) <= b.get(0))?;
        let len = a.mult().len().max(b.mult().len());
        let (mut sa, mut sb) = (0usize, 0usize);
        for k in 1..len {
            sa += k * a.get(k);
            sb += k * b.get(k);
            writeln!(out, "{k:>3}  {sa:>8}  {sb:>8}  {}", sa <= sb)?;
        }
    }
    Ok(if yes { EXIT_YES } else { EXIT_NO })
}

fn witness_report<K: ModuleKind>(w: &SubfactorWitness<K>, json: bool, out: &mut dyn Write) -> Result<()> {
    if json {
        let v = json!({
            "subpencil": true,
            "b_seq": w.b_seq,
            "linking": w.linking.mult(),
            "linking_text": w.linking.format_with("+"),
            "alpha": w.alpha,
            "beta": w.beta,
        });
        writeln!(out, "{}", serde_json::to_string(&v)?)?;
    } else {
        writeln!(out, "yes")?;
        writeln!(out, "b = {}", format_seq(&w.b_seq))?;
        writeln!(out, "L = {}", w.linking)?;
        writeln!(out, "alpha = {}", w.alpha)?;
        writeln!(out, "beta = {}", w.beta)?;
    }
    Ok(())
}

fn subpencil_decision<F: Field>(sub: &Pencil<F>, sup: &Pencil<F>, row_minimal: bool, json: bool, out: &mut dyn Write) -> Result<i32> {
    let found = if row_minimal {
        is_subpencil_rm(sub, sup)?.map(|w| witness_report(&w, json, out)).transpose()?
    } else {
        is_subpencil_cm(sub, sup)?.map(|w| witness_report(&w, json, out)).transpose()?
    };
    if found.is_some() {
        return Ok(EXIT_YES);
    }
    if json {
        writeln!(out, "{}", json!({ "subpencil": false }))?;
    } else {
        writeln!(out, "no")?;
    }
    Ok(EXIT_NO)
}

fn cmd_check_subpencil(sub: &Path, sup: &Path, row_minimal: bool, json: bool, out: &mut dyn Write) -> Result<i32> {
    let (s, t) = (load_pencil(sub)?, load_pencil(sup)?);
    with_same_field!(s, t, |a, b| subpencil_decision(&a, &b, row_minimal, json, out))
}

fn verify_any<F: Field>(sub: &Pencil<F>, sup: &Pencil<F>, r: &CompletionResult<F>, mode: CompletionMode) -> Result<bool> {
    Ok(match mode {
        CompletionMode::ColumnMinimal => verify_completion(sub, sup, r)?,
        CompletionMode::RowMinimal => {
            let t = CompletionResult {
                a12: r.a21.transpose(),
                b12: r.b21.transpose(),
                a21: r.a12.transpose(),
                b21: r.b12.transpose(),
                a22: r.a22.transpose(),
                b22: r.b22.transpose(),
                left: r.right.transpose(),
                right: r.left.transpose(),
                witness: r.witness.clone(),
            };
            verify_completion(&sub.transpose(), &sup.transpose(), &t)?
        }
    })
}

fn completion_run<F: Field>(
    sub: &Pencil<F>,
    sup: &Pencil<F>,
    seed: u64,
    path: &Path,
    row_minimal: bool,
    out: &mut dyn Write,
) -> Result<i32> {
    let mode = if row_minimal { CompletionMode::RowMinimal } else { CompletionMode::ColumnMinimal };
    let built = if row_minimal { complete_rm(sub, sup, seed) } else { complete(sub, sup, seed) };
    let r = match built {
        Ok(r) => r,
        Err(Error::NotSubpencil) => {
            writeln!(out, "no: not a subpencil")?;
            return Ok(EXIT_NO);
        }
        Err(Error::ConstructionFailed(msg)) => {
            writeln!(out, "completion failed verification: {msg}")?;
            return Ok(EXIT_VERIFY_FAILED);
        }
        Err(e) => return Err(e.into()),
    };
    if !verify_any(sub, sup, &r, mode)? {
        writeln!(out, "completion failed verification; nothing written")?;
        return Ok(EXIT_VERIFY_FAILED);
    }
    write_json(path, &completion_to_file(&r, mode))?;
    writeln!(out, "verified completion written to {}", path.display())?;
    writeln!(
        out,
        "blocks: 12 is {}x{}, 21 is {}x{}, 22 is {}x{}",
        r.a12.rows(),
        r.a12.cols(),
        r.a21.rows(),
        r.a21.cols(),
        r.a22.rows(),
        r.a22.cols()
    )?;
    Ok(EXIT_YES)
}

fn cmd_complete(sub: &Path, sup: &Path, seed: u64, path: &Path, row_minimal: bool, out: &mut dyn Write) -> Result<i32> {
    let (s, t) = (load_pencil(sub)?, load_pencil(sup)?);
    with_same_field!(s, t, |a, b| completion_run(&a, &b, seed, path, row_minimal, out))
}

fn verification_run<F: Field>(sub: &Pencil<F>, sup: &Pencil<F>, file: &CompletionFile, out: &mut dyn Write) -> Result<i32> {
    let r = completion_from_file(sup.field(), file)?;
    if verify_any(sub, sup, &r, file.mode)? {
        writeln!(out, "verified")?;
        Ok(EXIT_YES)
    } else {
        writeln!(out, "rejected")?;
        Ok(EXIT_NO)
    }
}

fn cmd_verify(sub: &Path, sup: &Path, completion: &Path, out: &mut dyn Write) -> Result<i32> {
    let (s, t) = (load_pencil(sub)?, load_pencil(sup)?);
    let file: CompletionFile = read_json(completion)?;
    with_same_field!(s, t, |a, b| verification_run(&a, &b, &file, out))
}

fn canonical_file<F: Field>(field: &F, inv: &InvariantsFile) -> PencilFile {
    match inv.kind() {
        ModuleFamily::Preinjective => pencil_to_file(&pencil_of_module(field, &PreinjInvariants::new(inv.mult()))),
        ModuleFamily::Preprojective => pencil_to_file(&pencil_of_preprojective(field, &inv.preprojective())),
    }
}

fn cmd_canonical(path: &Path, dest: Option<&Path>, field: &str, out: &mut dyn Write) -> Result<i32> {
    let inv = load_invariants(path)?;
    let file = match files::field_of(field)? {
        FieldSpec::Rationals => canonical_file(&Rationals, &inv),
        FieldSpec::PrimeField(p) => canonical_file(&PrimeField::new(p)?, &inv),
    };
    match dest {
        Some(dest) => {
            write_json(dest, &file)?;
            writeln!(out, "wrote {}x{} pencil to {}", file.rows, file.cols, dest.display())?;
        }
        None => write!(out, "{}", files::to_json_text(&file)?)?,
    }
    Ok(EXIT_YES)
}

fn agreement(name: &str, oracle: bool, criterion: bool, out: &mut dyn Write) -> Result<i32> {
    let verdict = if oracle == criterion { "agree" } else { "DISAGREE" };
    writeln!(out, "{name}: oracle {oracle}, criterion {criterion}, {verdict}")?;
    Ok(if oracle == criterion { EXIT_YES } else { EXIT_NO })
}

fn preinj(path: &Path) -> Result<Invariants<subpencil_core::Preinjective>> {
    load_invariants(path)?.preinjective()
}

fn cmd_oracle(check: OracleCheck, out: &mut dyn Write) -> Result<i32> {
    match check {
        OracleCheck::Mono { sub, sup, p } => {
            let (a, b) = (preinj(&sub)?, preinj(&sup)?);
            agreement("mono", mono_exists_bruteforce(&a, &b, p)?, mono_exists(&a, &b), out)
        }
        OracleCheck::Epi { module, quotient, p } => {
            let (c, l) = (preinj(&module)?, preinj(&quotient)?);
            let criterion = matches!(epi_with_p0_kernel(&c, &l), Ok(Some(_)));
            agreement("epi", epi_p0_kernel_exists_bruteforce(&c, &l, p)?, criterion, out)
        }
        OracleCheck::Subfactor { sub, sup, p } => {
            let (a, c) = (preinj(&sub)?, preinj(&sup)?);
            agreement("subfactor", subfactor_bruteforce_matrix(&a, &c, p)?, subfactor_check(&a, &c).is_some(), out)
        }
        OracleCheck::Linking { sub, sup } => {
            let (a, c) = (preinj(&sub)?, preinj(&sup)?);
            agreement("linking", linking_system_feasible(a.mult(), c.mult())?, subfactor_check(&a, &c).is_some(), out)
        }
    }
}
