//! Command-line front end.
//!
//! Exit status: 0 on success, 2 for unusable input (parse errors, failed
//! validation), 1 when an internal numerical check fails.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::basis::HermitianBasis;
use crate::classify::{classify_bell_diagonal, classify_state, BellDiagonalSpec, Classification, Verdict};
use crate::linalg::{frobenius_distance, validate_density, Tolerance};
use crate::measurement::VonNeumannMeasurement;
use crate::report::{
    read_json, rows_of, BasisJson, InputDescriptor, InvarianceJson, OracleJson, Report, StateFile,
    UnitaryFile,
};
use crate::sampler::{invariance_search, Seed, Side};
use crate::selftest::run_selftest;
use crate::Error;

#[derive(Debug, Parser)]
#[command(name = "nullity", version, about = "von Neumann measurement lifts and nullity screens for quantum correlation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Screen a bipartite state for classical-quantum, quantum-classical and
    /// classical-classical membership.
    Classify {
        state: PathBuf,
        /// Run the brute-force invariance search with this many trials per side.
        #[arg(long, value_name = "TRIALS")]
        oracle: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_name = "X")]
        tol_rank: Option<f64>,
        #[arg(long, value_name = "X")]
        tol_eq: Option<f64>,
        #[arg(long)]
        json: bool,
        /// Accept states that are not valid density matrices.
        #[arg(long)]
        no_validate: bool,
    },
    /// Print the lifted matrix of a measurement given by a unitary.
    Lift {
        unitary: PathBuf,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Dump the generalized Gell-Mann basis as JSON.
    Basis { m: usize },
    /// Classify the Bell-diagonal state ¼(I + Σ t_i σ_i⊗σ_i).
    #[command(allow_negative_numbers = true)]
    Bell { t1: f64, t2: f64, t3: f64 },
    /// Run the built-in property corpus.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Numerical(_) => Failure::Internal(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Internal(format!("write failed: {e}"))
    }
}

type CmdResult = std::result::Result<(), Failure>;

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Classify {
            state,
            oracle,
            seed,
            tol_rank,
            tol_eq,
            json,
            no_validate,
        } => tolerance(tol_rank, tol_eq)
            .and_then(|tol| classify(&state, oracle, Seed(seed), tol, json, no_validate, out)),
        Command::Lift { unitary, dim, json } => lift(&unitary, dim, json, out),
        Command::Basis { m } => basis(m, out),
        Command::Bell { t1, t2, t3 } => bell(t1, t2, t3, out),
        Command::Selftest { seed } => selftest(Seed(seed), out),
    };
    match result {
        Ok(()) => 0,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Internal(msg)) => {
            let _ = writeln!(err, "internal error: {msg}");
            1
        }
    }
}

fn tolerance(rank: Option<f64>, eq: Option<f64>) -> std::result::Result<Tolerance, Failure> {
    let d = Tolerance::default();
    Ok(Tolerance::new(rank.unwrap_or(d.rank_rel), eq.unwrap_or(d.eq_abs))?)
}

fn verdict_line(tag: &str, v: &Verdict) -> String {
    let cmp = if v.ruled_out { ">" } else { "<=" };
    format!(
        "{tag}: {} (rank {} {cmp} {})",
        v.outcome(),
        v.computed_rank,
        v.threshold
    )
}

fn write_verdicts(c: &Classification, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "{}", verdict_line("CQ", &c.classical_quantum))?;
    writeln!(out, "{}", verdict_line("QC", &c.quantum_classical))?;
    writeln!(out, "{}", verdict_line("CC", &c.classical_classical))?;
    writeln!(out, "{}", verdict_line("Dakic", &c.dakic))
}

fn classify(
    path: &Path,
    oracle: Option<usize>,
    seed: Seed,
    tol: Tolerance,
    json: bool,
    no_validate: bool,
    out: &mut dyn Write,
) -> CmdResult {
    let file: StateFile = read_json(path).map_err(Failure::Input)?;
    let rho = file.matrix()?;
    let (m, n) = (file.m, file.n);
    let density = validate_density(&rho, tol)?;
    if !no_validate {
        if let Some(what) = density.failure() {
            return Err(Failure::Input(format!(
                "state is not a valid density matrix: {what} check failed (min eigenvalue {:.3e})",
                density.min_eigenvalue
            )));
        }
    }
    let c = classify_state(&rho, m, n, tol)?;
    let scale = rho.norm().max(1.0);
    let drift = frobenius_distance(&c.bloch.reconstruct(), &rho);
    if drift > tol.eq_abs * scale {
        return Err(Failure::Internal(format!(
            "Bloch round trip drifted by {drift:.3e}"
        )));
    }

    let oracle = match oracle {
        Some(trials) => {
            let left = invariance_search(&rho, m, n, Side::Left, trials, seed)?;
            let right = invariance_search(&rho, m, n, Side::Right, trials, seed)?;
            Some(OracleJson {
                seed: seed.0,
                left: (&left).into(),
                right: (&right).into(),
            })
        }
        None => None,
    };

    let file_name = path
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    if json {
        let report = Report::new(
            InputDescriptor { file: file_name, m, n },
            tol,
            density,
            &c,
            oracle,
        );
        writeln!(out, "{}", report.to_json())?;
        return Ok(());
    }

    writeln!(out, "state: {file_name} ({m}x{n})")?;
    writeln!(
        out,
        "tolerances: rank_rel = {:e}, eq_abs = {:e}",
        tol.rank_rel, tol.eq_abs
    )?;
    write_verdicts(&c, out)?;
    if let Some(o) = &oracle {
        for r in [&o.left, &o.right] {
            write_oracle(r, out)?;
        }
    }
    Ok(())
}

fn write_oracle(r: &InvarianceJson, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(
        out,
        "oracle {:?}: best residual {:.3e} over {} trials{}",
        r.side,
        r.best_residual,
        r.trials,
        if r.degenerate_reduced_spectrum {
            " (degenerate reduced spectrum)"
        } else {
            ""
        }
    )
}

fn lift(path: &Path, dim: Option<usize>, json: bool, out: &mut dyn Write) -> CmdResult {
    let tol = Tolerance::default();
    let file: UnitaryFile = read_json(path).map_err(Failure::Input)?;
    let a = file.matrix(dim)?;
    let meas = VonNeumannMeasurement::from_unitary(a, tol)?;
    let m = meas.dim();
    if m < 2 {
        return Err(Failure::Input("lift needs a measurement of dimension at least 2".into()));
    }
    let lifted = meas.lift(&HermitianBasis::gell_mann(m)?, tol)?;
    let rank = lifted.rank(tol);
    let defect = lifted.idempotency_defect();

    if json {
        #[derive(serde::Serialize)]
        struct LiftJson {
            m: usize,
            rank: usize,
            idempotency_defect: f64,
            matrix: Vec<Vec<f64>>,
        }
        let body = LiftJson {
            m,
            rank,
            idempotency_defect: defect,
            matrix: rows_of(&lifted.matrix),
        };
        writeln!(out, "{}", serde_json::to_string_pretty(&body).expect("serializes"))?;
    } else {
        writeln!(out, "M ({0}x{0}, generalized Gell-Mann basis):", m * m - 1)?;
        for r in lifted.matrix.row_iter() {
            let cells: Vec<String> = r.iter().map(|x| format!("{:>9.5}", clean(*x))).collect();
            writeln!(out, "  {}", cells.join(" "))?;
        }
        writeln!(out, "rank: {rank}")?;
        writeln!(out, "||M^2 - M||_F: {defect:.3e}")?;
    }

    if defect > tol.eq_abs {
        return Err(Failure::Internal(format!(
            "lifted matrix is not idempotent (defect {defect:.3e})"
        )));
    }
    if rank != m - 1 {
        return Err(Failure::Internal(format!(
            "lifted matrix has rank {rank}, expected {}",
            m - 1
        )));
    }
    Ok(())
}

fn clean(x: f64) -> f64 {
    if x.abs() < 5e-16 {
        0.0
    } else {
        x
    }
}

fn basis(m: usize, out: &mut dyn Write) -> CmdResult {
    let b = HermitianBasis::gell_mann(m)?;
    let json = serde_json::to_string_pretty(&BasisJson::from(&b)).expect("serializes");
    writeln!(out, "{json}")?;
    Ok(())
}

fn bell(t1: f64, t2: f64, t3: f64, out: &mut dyn Write) -> CmdResult {
    let tol = Tolerance::default();
    let spec = BellDiagonalSpec::new(t1, t2, t3, tol)?;
    let verdict = classify_bell_diagonal(&spec, tol);
    let c = Classification::from_bloch(spec.bloch_form(), tol);
    writeln!(out, "t = ({t1}, {t2}, {t3})")?;
    writeln!(out, "nonzero t_i: {}", verdict.nonzero)?;
    writeln!(out, "quantum-quantum: {}", verdict.quantum_quantum)?;
    writeln!(out, "separable: {}", verdict.separable)?;
    write_verdicts(&c, out)?;
    let summary = if verdict.quantum_quantum {
        "quantum-quantum (classical on neither side)"
    } else {
        "classical-classical consistent (all checks inconclusive)"
    };
    writeln!(out, "summary: {summary}")?;
    Ok(())
}

fn selftest(seed: Seed, out: &mut dyn Write) -> CmdResult {
    let rows = run_selftest(seed, Tolerance::default())?;
    let width = rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
    for r in &rows {
        let mark = if r.passed { "PASS" } else { "FAIL" };
        writeln!(out, "{mark}  {:<width$}  {}", r.name, r.detail)?;
    }
    if rows.iter().all(|r| r.passed) {
        Ok(())
    } else {
        Err(Failure::Internal("selftest reported failures".into()))
    }
}
