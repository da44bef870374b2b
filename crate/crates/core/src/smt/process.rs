use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::{Command, Stdio};
use std::sync::atomic::{AtomicBool, Ordering};
use std::thread;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::smt::sexp::{parse_all, Sexp};

/// Environment variable naming the default solver executable.
pub const SOLVER_ENV: &str = "TRANSYNTH_SOLVER";

/// How to run the external solver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverConfig {
    pub path: PathBuf,
    pub args: Vec<String>,
    pub timeout: Duration,
    pub logic: String,
    /// When set, each script and response is written to this directory.
    pub transcript_dir: Option<PathBuf>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        let path = std::env::var_os(SOLVER_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("z3"));
        SolverConfig {
            path,
            args: vec!["-in".into(), "-smt2".into()],
            timeout: Duration::from_secs(300),
            logic: "QF_LIA".into(),
            transcript_dir: None,
        }
    }
}

impl SolverConfig {
    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.timeout = timeout;
        self
    }

    /// Whether the executable can be launched at all.
    pub fn is_available(&self) -> bool {
        Command::new(&self.path)
            .arg("-version")
            .stdin(Stdio::null())
            .stdout(Stdio::null())
            .stderr(Stdio::null())
            .status()
            .is_ok()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Value {
    Int(i64),
    Bool(bool),
}

impl Value {
    pub fn as_i64(self) -> i64 {
        match self {
            Value::Int(v) => v,
            Value::Bool(b) => i64::from(b),
        }
    }
}

/// Values of the variables named in `get-value`.
pub type Model = BTreeMap<String, Value>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Sat(Model),
    Unsat,
    Unknown,
    Timeout,
}

#[derive(Debug, Clone)]
pub struct SolverOutcome {
    pub verdict: Verdict,
    pub elapsed: Duration,
    /// The solver's standard output.
    pub transcript: String,
}

/// Runs the solver on `doc`. Hitting the timeout yields
/// [`Verdict::Timeout`], not an error.
pub fn solve(doc: &str, cfg: &SolverConfig) -> Result<SolverOutcome> {
    solve_cancellable(doc, cfg, &AtomicBool::new(false))
}

/// [`solve`] that also gives up (reporting a timeout) once `cancel` is set.
pub fn solve_cancellable(doc: &str, cfg: &SolverConfig, cancel: &AtomicBool) -> Result<SolverOutcome> {
    if cfg.timeout.is_zero() {
        return Err(Error::InvalidInput("solver timeout must be positive".into()));
    }
    let start = Instant::now();
    let mut child = Command::new(&cfg.path)
        .args(&cfg.args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .map_err(|e| Error::SolverLaunch(format!("{}: {e}", cfg.path.display())))?;

    let mut stdin = child.stdin.take().expect("piped stdin");
    let input = doc.to_owned();
    let writer = thread::spawn(move || {
        // a solver that exits early closes the pipe; that is not our error
        let _ = stdin.write_all(input.as_bytes());
    });
    let mut stdout = child.stdout.take().expect("piped stdout");
    let reader = thread::spawn(move || {
        let mut s = String::new();
        let _ = stdout.read_to_string(&mut s);
        s
    });
    let mut stderr = child.stderr.take().expect("piped stderr");
    let err_reader = thread::spawn(move || {
        let mut s = String::new();
        let _ = stderr.read_to_string(&mut s);
        s
    });

    let mut killed = false;
    loop {
        if child.try_wait().map_err(|e| Error::SolverLaunch(e.to_string()))?.is_some() {
            break;
        }
        if start.elapsed() >= cfg.timeout || cancel.load(Ordering::Relaxed) {
            let _ = child.kill();
            let _ = child.wait();
            killed = true;
            break;
        }
        thread::sleep(Duration::from_millis(2));
    }
    let _ = writer.join();
    let transcript = reader.join().unwrap_or_default();
    let errors = err_reader.join().unwrap_or_default();
    let elapsed = start.elapsed();

    if let Some(dir) = &cfg.transcript_dir {
        let stamp = format!("{}-{}", std::process::id(), start.elapsed().as_nanos());
        let _ = std::fs::create_dir_all(dir);
        let _ = std::fs::write(dir.join(format!("query-{stamp}.smt2")), doc);
        let _ = std::fs::write(dir.join(format!("response-{stamp}.txt")), &transcript);
    }

    if killed {
        return Ok(SolverOutcome { verdict: Verdict::Timeout, elapsed, transcript });
    }
    let verdict = parse_response(&transcript).map_err(|e| match e {
        Error::SolverOutput(m) if !errors.trim().is_empty() => {
            Error::SolverOutput(format!("{m}; stderr: {}", errors.trim()))
        }
        e => e,
    })?;
    Ok(SolverOutcome { verdict, elapsed, transcript })
}

/// Interprets the solver's answer to `check-sat` and `get-value`.
pub fn parse_response(text: &str) -> Result<Verdict> {
    let items = parse_all(text)?;
    let is_error = |s: &Sexp| s.as_list().and_then(|l| l.first()).and_then(Sexp::as_atom) == Some("error");
    // errors after an unsat verdict come from get-value and are expected
    let head_at = items.iter().position(|s| s.as_atom().is_some());
    if let Some(err) = items[..head_at.unwrap_or(items.len())].iter().find(|s| is_error(s)) {
        return Err(Error::SolverOutput(format!("{err:?}")));
    }
    let head_at = head_at.ok_or_else(|| Error::SolverOutput(format!("no verdict in {text:?}")))?;
    let head = items[head_at].as_atom().expect("atom");
    let items = &items[head_at..];
    match head {
        "unsat" => Ok(Verdict::Unsat),
        "unknown" => Ok(Verdict::Unknown),
        "timeout" => Ok(Verdict::Timeout),
        "sat" => {
            let mut model = Model::new();
            if let Some(err) = items.iter().find(|s| is_error(s)) {
                return Err(Error::SolverOutput(format!("{err:?}")));
            }
            if let Some(pairs) = items.get(1) {
                let pairs = pairs.as_list().ok_or_else(|| Error::SolverOutput("malformed get-value".into()))?;
                for pair in pairs {
                    match pair.as_list() {
                        Some([name, value]) => {
                            let name =
                                name.as_atom().ok_or_else(|| Error::SolverOutput("malformed variable".into()))?;
                            model.insert(name.to_string(), parse_value(value)?);
                        }
                        _ => return Err(Error::SolverOutput(format!("malformed binding {pair:?}"))),
                    }
                }
            }
            Ok(Verdict::Sat(model))
        }
        other => Err(Error::SolverOutput(format!("unexpected verdict {other:?}"))),
    }
}

fn parse_value(v: &Sexp) -> Result<Value> {
    let bad = || Error::SolverOutput(format!("unsupported value {v:?}"));
    match v {
        Sexp::Atom(a) if a == "true" => Ok(Value::Bool(true)),
        Sexp::Atom(a) if a == "false" => Ok(Value::Bool(false)),
        Sexp::Atom(a) => a.parse().map(Value::Int).map_err(|_| bad()),
        Sexp::List(l) => match l.as_slice() {
            [Sexp::Atom(minus), inner] if minus == "-" => match parse_value(inner)? {
                Value::Int(x) => Ok(Value::Int(-x)),
                Value::Bool(_) => Err(bad()),
            },
            _ => Err(bad()),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_verdicts() {
        assert_eq!(parse_response("unsat\n").unwrap(), Verdict::Unsat);
        assert_eq!(parse_response("sat\n").unwrap(), Verdict::Sat(Model::new()));
        let Verdict::Sat(m) = parse_response("sat\n((a 1) (b (- 4)) (c false))").unwrap() else {
            panic!("expected sat")
        };
        assert_eq!(m["a"], Value::Int(1));
        assert_eq!(m["b"], Value::Int(-4));
        assert_eq!(m["c"], Value::Bool(false));
        assert!(parse_response("(error \"line 1\")").is_err());
        assert_eq!(parse_response("unsat\n(error \"model is not available\")").unwrap(), Verdict::Unsat);
        assert!(parse_response("").is_err());
    }
}
