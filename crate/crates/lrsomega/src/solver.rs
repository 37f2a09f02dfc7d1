//! External SMT solver subprocess client.
//!
//! One process per query: the script is written to a temporary file and the
//! solver invoked on it, with a wall-clock timeout after which the process
//! is killed and the query reported unknown. The solver binary comes from
//! the `--solver` flag or the `LRSOMEGA_SOLVER` environment variable.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use lrsomega_core::formulas::{SmtBackend, SolverVerdict};

pub const SOLVER_ENV: &str = "LRSOMEGA_SOLVER";

#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub binary: PathBuf,
    pub timeout: Duration,
}

impl SolverConfig {
    /// Resolves the solver binary from the CLI flag or the environment.
    pub fn resolve(flag: Option<&str>, timeout_secs: u64) -> Option<SolverConfig> {
        let binary = flag
            .map(PathBuf::from)
            .or_else(|| std::env::var_os(SOLVER_ENV).map(PathBuf::from))?;
        Some(SolverConfig { binary, timeout: Duration::from_secs(timeout_secs) })
    }
}

pub struct SubprocessSolver {
    config: SolverConfig,
    queries: u64,
}

impl SubprocessSolver {
    pub fn new(config: SolverConfig) -> SubprocessSolver {
        SubprocessSolver { config, queries: 0 }
    }

    pub fn queries(&self) -> u64 {
        self.queries
    }

    fn run(&mut self, script: &str) -> Result<String, String> {
        self.queries += 1;
        let dir = std::env::temp_dir();
        let file = dir.join(format!(
            "lrsomega-query-{}-{}.smt2",
            std::process::id(),
            self.queries
        ));
        std::fs::File::create(&file)
            .and_then(|mut f| f.write_all(script.as_bytes()))
            .map_err(|e| format!("writing solver input: {e}"))?;
        let mut child = Command::new(&self.config.binary)
            .arg(&file)
            .stdout(Stdio::piped())
            .stderr(Stdio::null())
            .spawn()
            .map_err(|e| format!("launching solver {}: {e}", self.config.binary.display()))?;
        let start = Instant::now();
        let status = loop {
            match child.try_wait() {
                Ok(Some(status)) => break status,
                Ok(None) => {
                    if start.elapsed() > self.config.timeout {
                        let _ = child.kill();
                        let _ = child.wait();
                        let _ = std::fs::remove_file(&file);
                        return Err(format!(
                            "solver timed out after {:?}",
                            self.config.timeout
                        ));
                    }
                    std::thread::sleep(Duration::from_millis(10));
                }
                Err(e) => {
                    let _ = std::fs::remove_file(&file);
                    return Err(format!("waiting for solver: {e}"));
                }
            }
        };
        let mut out = String::new();
        if let Some(mut stdout) = child.stdout.take() {
            use std::io::Read;
            let _ = stdout.read_to_string(&mut out);
        }
        let _ = std::fs::remove_file(&file);
        if !status.success() && out.trim().is_empty() {
            return Err(format!("solver exited with {status}"));
        }
        Ok(out)
    }
}

impl SmtBackend for SubprocessSolver {
    fn check_script(&mut self, script: &str) -> SolverVerdict {
        match self.run(script) {
            Err(reason) => SolverVerdict::Unknown(reason),
            Ok(out) => {
                // The verdict is the first sat/unsat/unknown token printed.
                for line in out.lines() {
                    match line.trim() {
                        "sat" => return SolverVerdict::Sat,
                        "unsat" => return SolverVerdict::Unsat,
                        "unknown" => {
                            return SolverVerdict::Unknown(String::from("solver answered unknown"))
                        }
                        _ => continue,
                    }
                }
                SolverVerdict::Unknown(format!(
                    "unrecognized solver output: {}",
                    out.lines().next().unwrap_or("<empty>")
                ))
            }
        }
    }
}
