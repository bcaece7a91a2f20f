//! The `perfect-secrecy` command line.
//!
//! Exit status: 0 success (feasible, verified, found); 1 a negative answer
//! with a report (infeasible, verification failed, nothing found); 2 bad
//! input; 3 a capability refusal such as an exceeded size cap.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::codec::{self, RandomSource, SimConfig, DEFAULT_MIN_COUNT};
use crate::construction::{build_scheme, find_deterministic_scheme, Outcome, SearchLimit, DEFAULT_MAX_M, DEFAULT_MAX_NODES};
use crate::error::Error;
use crate::feasibility::{check_feasible, shannon_reduce};
use crate::format::{parse_instance, parse_scheme, write_instance, write_scheme};
use crate::model::{default_labels, Instance};
use crate::rational::Rational;
use crate::verification::{decode_table, feasibility_oracle, necessity_audit, verify_joint, Joint};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExitStatus(pub i32);

impl ExitStatus {
    pub const SUCCESS: ExitStatus = ExitStatus(0);
    pub const NEGATIVE: ExitStatus = ExitStatus(1);
    pub const INPUT_ERROR: ExitStatus = ExitStatus(2);
    pub const REFUSED: ExitStatus = ExitStatus(3);

    pub fn code(self) -> i32 {
        self.0
    }
}

#[derive(Debug, Parser)]
#[command(name = "perfect-secrecy", version, about = "Perfectly secret public signals with side information")]
struct Cli {
    /// Print a machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether a perfectly secret, informative signal exists.
    Check { instance: PathBuf },
    /// Construct a scheme for a feasible instance.
    Build {
        instance: PathBuf,
        /// Write the scheme here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check consistency, informativeness and secrecy of a scheme.
    Verify {
        scheme: PathBuf,
        #[arg(long)]
        against: PathBuf,
    },
    /// Draw a public signal for a state and side information.
    Encode {
        scheme: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        seed: u64,
    },
    /// Recover the state from side information and a public signal.
    Decode {
        scheme: PathBuf,
        #[arg(long)]
        y: String,
        #[arg(long)]
        z: String,
    },
    /// Monte Carlo run of the scheme.
    Simulate {
        scheme: PathBuf,
        /// Prior to draw from; defaults to the scheme's own (X, Y) marginal.
        #[arg(long)]
        against: Option<PathBuf>,
        #[arg(short = 'n', long)]
        samples: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, default_value_t = DEFAULT_MIN_COUNT)]
        min_count: u64,
        /// Simulate even if the scheme does not verify.
        #[arg(long)]
        allow_unverified: bool,
    },
    /// Decide feasibility by searching all permutation mixtures (m ≤ 6).
    Oracle { instance: PathBuf },
    /// Emit the one-time-pad instance with a uniform independent key.
    Shannon {
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 'm')]
        m: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Search for a scheme whose signal is a function of (x, y).
    Deterministic {
        instance: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Search nodes before giving up.
        #[arg(long, default_value_t = DEFAULT_MAX_NODES)]
        limit: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_M)]
        max_m: usize,
    },
}

/// Runs the command line with `args` (including the program name) and
/// returns the exit status. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { ExitStatus::INPUT_ERROR } else { ExitStatus::SUCCESS };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return status;
        }
    };
    let mut ctx = Context { json: cli.json, out, err };
    match ctx.dispatch(cli.command) {
        Ok(status) => status,
        Err(e) => {
            let _ = writeln!(ctx.err, "error: {e}");
            match e {
                Error::CapExceeded(_) => ExitStatus::REFUSED,
                Error::Infeasible { .. }
                | Error::Unverified(_)
                | Error::OffSupport { .. }
                | Error::OffSupportPair { .. } => ExitStatus::NEGATIVE,
                _ => ExitStatus::INPUT_ERROR,
            }
        }
    }
}

struct Context<'a> {
    json: bool,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

type CmdResult = Result<ExitStatus, Error>;

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Format { line: 0, message: format!("{}: {e}", path.display()) })
}

fn load_instance(path: &Path) -> Result<Instance, Error> {
    parse_instance(&read(path)?).map_err(|e| in_file(path, e))
}

fn load_scheme(path: &Path) -> Result<crate::construction::Scheme, Error> {
    parse_scheme(&read(path)?).map_err(|e| in_file(path, e))
}

fn in_file(path: &Path, e: Error) -> Error {
    match e {
        Error::Format { line, message } => Error::Format { line, message: format!("{}: {message}", path.display()) },
        other => other,
    }
}

fn status(ok: bool) -> ExitStatus {
    if ok {
        ExitStatus::SUCCESS
    } else {
        ExitStatus::NEGATIVE
    }
}

fn join(values: &[Rational]) -> String {
    values.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

impl Context<'_> {
    fn json<T: Serialize>(&mut self, value: &T) -> Result<(), Error> {
        let text = serde_json::to_string_pretty(value).map_err(|e| Error::Internal(e.to_string()))?;
        self.line(&text)
    }

    fn line(&mut self, text: &str) -> Result<(), Error> {
        writeln!(self.out, "{text}").map_err(|e| Error::Internal(e.to_string()))
    }

    fn emit_document(&mut self, text: &str, output: Option<&Path>) -> Result<(), Error> {
        match output {
            Some(path) => fs::write(path, text)
                .map_err(|e| Error::Format { line: 0, message: format!("{}: {e}", path.display()) }),
            None => write!(self.out, "{text}").map_err(|e| Error::Internal(e.to_string())),
        }
    }

    fn dispatch(&mut self, command: Command) -> CmdResult {
        match command {
            Command::Check { instance } => self.check(&instance),
            Command::Build { instance, output } => self.build(&instance, output.as_deref()),
            Command::Verify { scheme, against } => self.verify(&scheme, &against),
            Command::Encode { scheme, x, y, seed } => self.encode(&scheme, &x, &y, seed),
            Command::Decode { scheme, y, z } => self.decode(&scheme, &y, &z),
            Command::Simulate { scheme, against, samples, seed, workers, min_count, allow_unverified } => {
                let config = SimConfig { min_count, workers, allow_unverified };
                self.simulate(&scheme, against.as_deref(), samples, seed, &config)
            }
            Command::Oracle { instance } => self.oracle(&instance),
            Command::Shannon { n, m, output } => self.shannon(n, m, output.as_deref()),
            Command::Deterministic { instance, output, limit, max_m } => {
                self.deterministic(&instance, output.as_deref(), SearchLimit { max_m, max_nodes: limit })
            }
        }
    }

    fn check(&mut self, path: &Path) -> CmdResult {
        let inst = load_instance(path)?;
        let report = check_feasible(&inst);
        let shannon = shannon_reduce(&inst);
        if self.json {
            #[derive(Serialize)]
            struct Out<'a> {
                y_labels: &'a [String],
                #[serde(flatten)]
                report: &'a crate::feasibility::FeasibilityReport,
                shannon: crate::feasibility::ShannonReduction,
            }
            self.json(&Out { y_labels: inst.y_labels(), report: &report, shannon })?;
        } else {
            self.line(&format!("column sums: {}", join(&report.column_sums)))?;
            for &j in &report.violations {
                self.line(&format!(
                    "violation at {}: column sum {} > 1",
                    inst.y_labels()[j],
                    report.column_sums[j]
                ))?;
            }
            if shannon.applies {
                self.line(&format!(
                    "uniform independent key: #supp X = {}, #supp Y = {}",
                    shannon.n, shannon.m
                ))?;
            }
            self.line(if report.feasible { "feasible" } else { "infeasible" })?;
        }
        Ok(status(report.feasible))
    }

    fn build(&mut self, path: &Path, output: Option<&Path>) -> CmdResult {
        let inst = load_instance(path)?;
        let report = check_feasible(&inst);
        if !report.feasible {
            let j = report.violations[0];
            return Err(Error::Infeasible { column: j, sum: report.column_sums[j].to_string() });
        }
        let scheme = build_scheme(&inst)?;
        if self.json {
            self.json(&scheme)?;
            if let Some(path) = output {
                self.emit_document(&write_scheme(&scheme), Some(path))?;
            }
        } else {
            self.emit_document(&write_scheme(&scheme), output)?;
        }
        Ok(ExitStatus::SUCCESS)
    }

    fn verify(&mut self, scheme_path: &Path, inst_path: &Path) -> CmdResult {
        let scheme = load_scheme(scheme_path)?;
        let inst = load_instance(inst_path)?;
        let joint = Joint::from_scheme(&scheme);
        let report = verify_joint(&joint, &inst)?;
        let audit = necessity_audit(&joint);
        let ok = report.passed() && audit.pass;
        if self.json {
            #[derive(Serialize)]
            struct Out<'a> {
                passed: bool,
                #[serde(flatten)]
                report: &'a crate::verification::VerificationReport,
                necessity: &'a crate::verification::NecessityAudit,
            }
            self.json(&Out { passed: ok, report: &report, necessity: &audit })?;
        } else {
            let verdict = |pass: bool| if pass { "pass" } else { "FAIL" };
            let mut line = format!("consistency: {}", verdict(report.consistency.pass));
            if let Some(w) = &report.consistency.witness {
                line += &format!(" at ({}, {}): expected {}, got {}", w.x, w.y, w.expected, w.actual);
            }
            self.line(&line)?;
            let mut line = format!("informativeness: {}", verdict(report.informativeness.pass));
            if let Some(w) = &report.informativeness.witness {
                line += &format!(" at ({}, {}): states {}", w.y, w.z, w.xs.join(", "));
            }
            self.line(&line)?;
            let mut line = format!("secrecy: {}", verdict(report.secrecy.pass));
            if let Some(w) = &report.secrecy.witness {
                line += &format!(" at ({}, {}): Q_XZ = {}, Q_Z·P_X = {}", w.x, w.z, w.q_xz, w.expected);
            }
            self.line(&line)?;
            self.line(&format!("necessity audit: {}", verdict(audit.pass)))?;
            self.line(&format!("Q_Z: {}", join(&report.marginals.q_z)))?;
        }
        Ok(status(ok))
    }

    fn encode(&mut self, path: &Path, x: &str, y: &str, seed: u64) -> CmdResult {
        let scheme = load_scheme(path)?;
        let i = scheme.x_index(x).ok_or_else(|| Error::UnknownLabel(x.into()))?;
        let j = scheme.y_index(y).ok_or_else(|| Error::UnknownLabel(y.into()))?;
        let k = codec::encode(&scheme, i, j, &mut RandomSource::new(seed))?;
        let z = &scheme.z_labels()[k];
        if self.json {
            self.json(&serde_json::json!({ "x": x, "y": y, "seed": seed, "z": z }))?;
        } else {
            self.line(z)?;
        }
        Ok(ExitStatus::SUCCESS)
    }

    fn decode(&mut self, path: &Path, y: &str, z: &str) -> CmdResult {
        let scheme = load_scheme(path)?;
        let j = scheme.y_index(y).ok_or_else(|| Error::UnknownLabel(y.into()))?;
        let k = scheme.z_index(z).ok_or_else(|| Error::UnknownLabel(z.into()))?;
        let i = codec::decode(&scheme, j, k)?;
        let x = &scheme.x_labels()[i];
        if self.json {
            self.json(&serde_json::json!({ "y": y, "z": z, "x": x }))?;
        } else {
            self.line(x)?;
        }
        Ok(ExitStatus::SUCCESS)
    }

    fn simulate(&mut self, path: &Path, against: Option<&Path>, samples: u64, seed: u64, config: &SimConfig) -> CmdResult {
        let scheme = load_scheme(path)?;
        let inst = match against {
            Some(p) => load_instance(p)?,
            None => scheme.implied_instance(),
        };
        let report = codec::simulate(&scheme, &inst, samples, seed, config)?;
        if self.json {
            self.json(&report)?;
        } else {
            self.line(&format!("samples: {}  seed: {}", report.samples, report.seed))?;
            self.line(&format!(
                "decode success: {} ({}/{})",
                report.decode_success, report.decode_successes, report.samples
            ))?;
            for (k, z) in report.z_labels.iter().enumerate() {
                let tv = report.tv_secrecy[k].map_or_else(|| "-".to_string(), |t| format!("{t:.6}"));
                self.line(&format!(
                    "{z}: count {}  freq {:.6}  exact {}  tv {tv}",
                    report.signal_counts[k],
                    report.empirical_qz[k],
                    scheme.weights()[k]
                ))?;
            }
            self.line(&format!("max tv: {:.6}", report.max_tv))?;
        }
        Ok(status(report.decode_successes == report.samples))
    }

    fn oracle(&mut self, path: &Path) -> CmdResult {
        let inst = load_instance(path)?;
        let verdict = feasibility_oracle(&inst)?;
        if self.json {
            self.json(&verdict)?;
        } else {
            self.line(if verdict.feasible { "feasible" } else { "infeasible" })?;
            for term in &verdict.weights {
                let cols: Vec<String> = term.sigma.iter().map(|j| (j + 1).to_string()).collect();
                self.line(&format!("{} {}", term.weight, cols.join(" ")))?;
            }
        }
        Ok(status(verdict.feasible))
    }

    fn shannon(&mut self, n: usize, m: usize, output: Option<&Path>) -> CmdResult {
        let inst = shannon_instance(n, m)?;
        self.emit_document(&write_instance(&inst), output)?;
        Ok(ExitStatus::SUCCESS)
    }

    fn deterministic(&mut self, path: &Path, output: Option<&Path>, limit: SearchLimit) -> CmdResult {
        let inst = load_instance(path)?;
        let search = find_deterministic_scheme(&inst, limit)?;
        if self.json {
            self.json(&search)?;
        }
        let code = match &search.outcome {
            Outcome::Found { scheme } => {
                if !self.json || output.is_some() {
                    self.emit_document(&write_scheme(scheme), output)?;
                }
                ExitStatus::SUCCESS
            }
            Outcome::NoneFound => {
                if !self.json {
                    self.line(&format!("none found after {} search nodes", search.nodes))?;
                }
                ExitStatus::NEGATIVE
            }
            Outcome::BudgetExhausted => {
                if !self.json {
                    self.line(&format!("search budget of {} nodes exhausted", limit.max_nodes))?;
                }
                ExitStatus::REFUSED
            }
        };
        if !self.json {
            let _ = writeln!(self.err, "latin condition: {}", if search.latin_condition { "holds" } else { "fails" });
        }
        Ok(code)
    }
}

/// `P_XY(x_i, y_j) = 1 / (n m)`: a uniform key independent of the state.
pub fn shannon_instance(n: usize, m: usize) -> Result<Instance, Error> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidInstance("n and m must be at least 1".into()));
    }
    let cell = Rational::new(1, (n * m) as i64);
    Instance::new(default_labels("x", n), default_labels("y", m), vec![vec![cell; m]; n])
}

/// Used by the decode table example and tests: the `(y, z) → x` table of a
/// scheme, rendered with labels (`-` for off-support).
pub fn render_decode_table(scheme: &crate::construction::Scheme) -> Result<String, Error> {
    let table = decode_table(&Joint::from_scheme(scheme))?;
    let mut out = format!("y\\z {}\n", table.z_labels.join(" "));
    for (j, y) in table.y_labels.iter().enumerate() {
        let cells: Vec<&str> = (0..table.z_labels.len())
            .map(|k| table.get(j, k).map_or("-", |i| table.x_labels[i].as_str()))
            .collect();
        out += &format!("{y} {}\n", cells.join(" "));
    }
    Ok(out)
}
