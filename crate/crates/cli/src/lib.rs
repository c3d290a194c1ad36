//! Command dispatch and JSON reports for the `skewdet` binary.

use std::path::PathBuf;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use skewdet::selftest::{self, Caps, Fault, SelftestConfig};
use skewdet::wire::{from_json, EchelonJson, MatrixJson, SystemJson, TModuleJson};
use skewdet::{
    assemble_system, commutative_oracle, deg_det, invert, kernel_rank, mat_mul, quotient_dim_oracle,
    row_echelon, solution_dimension, t_module_rank, Error, OracleCaps, OracleValue, OreMatrix,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USER: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_ORACLE: i32 = 4;
pub const EXIT_PROPERTY: i32 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Degdet,
    Echelon,
    Invert,
    KernelRank,
    TmoduleRank,
    OdeDim,
    Selftest,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Degdet => "degdet",
            Command::Echelon => "echelon",
            Command::Invert => "invert",
            Command::KernelRank => "kernel-rank",
            Command::TmoduleRank => "tmodule-rank",
            Command::OdeDim => "ode-dim",
            Command::Selftest => "selftest",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    Path(PathBuf),
    Inline(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandRequest {
    pub command: Command,
    pub input: Option<Input>,
    pub oracle: bool,
    pub seed: u64,
    pub max_n: Option<usize>,
    pub max_deg: Option<usize>,
    pub fault: Option<Fault>,
    pub timing: bool,
}

impl CommandRequest {
    pub fn new(command: Command) -> Self {
        CommandRequest {
            command,
            input: None,
            oracle: false,
            seed: 0,
            max_n: None,
            max_deg: None,
            fault: None,
            timing: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ErrorReport {
    pub kind: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub position: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleEntry {
    pub value: String,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleSection {
    pub degdet: String,
    pub quotient_dim: OracleEntry,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub commutative: Option<OracleEntry>,
}

impl OracleSection {
    fn agrees(&self) -> bool {
        self.quotient_dim.agrees && self.commutative.as_ref().is_none_or(|c| c.agrees)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Timing {
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CommandReport {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
    pub exit_code: i32,
}

impl CommandReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

/// A failure on the way to a result.
enum Failure {
    Library(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

struct Outcome {
    result: Value,
    /// The matrix whose deg det the oracles re-derive.
    subject: Option<OreMatrix>,
}

fn read_input(req: &CommandRequest) -> Result<String, Failure> {
    match &req.input {
        Some(Input::Inline(s)) => Ok(s.clone()),
        Some(Input::Path(p)) => {
            std::fs::read_to_string(p).map_err(|e| Failure::Io(format!("cannot read {}: {}", p.display(), e)))
        }
        None => Err(Failure::Library(Error::InvalidInput(format!(
            "{} needs --input or --json",
            req.command.name()
        )))),
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn matrix_value(m: &OreMatrix) -> Value {
    match MatrixJson::from_matrix(m) {
        Some(j) => to_value(&j),
        None => to_value(&m.to_strings()),
    }
}

fn read_matrix(req: &CommandRequest) -> Result<OreMatrix, Failure> {
    Ok(from_json::<MatrixJson>(&read_input(req)?)?.to_matrix()?)
}

/// kernel-rank accepts a bare matrix or {"phi": matrix}.
fn read_phi(req: &CommandRequest) -> Result<OreMatrix, Failure> {
    let text = read_input(req)?;
    if let Ok(m) = from_json::<MatrixJson>(&text) {
        return Ok(m.to_matrix()?);
    }
    Ok(from_json::<TModuleJson>(&text)?.phi.to_matrix()?)
}

fn dispatch(req: &CommandRequest) -> Result<Outcome, Failure> {
    match req.command {
        Command::Degdet => {
            let a = read_matrix(req)?;
            let v = deg_det(&a);
            Ok(Outcome {
                result: to_value(&v),
                subject: Some(a),
            })
        }
        Command::Echelon => {
            let a = read_matrix(req)?;
            let r = row_echelon(&a);
            Ok(Outcome {
                result: to_value(&EchelonJson::from_result(&r)),
                subject: Some(a),
            })
        }
        Command::Invert => {
            let a = read_matrix(req)?;
            let inv = invert(&a)?;
            let verified = mat_mul(&a, &inv)?.is_identity() && mat_mul(&inv, &a)?.is_identity();
            Ok(Outcome {
                result: json!({ "inverse": matrix_value(&inv), "verified": verified }),
                subject: Some(a),
            })
        }
        Command::KernelRank => {
            let phi = read_phi(req)?;
            Ok(Outcome {
                result: to_value(&kernel_rank(&phi)?),
                subject: Some(phi),
            })
        }
        Command::TmoduleRank => {
            let (phi, samples) = from_json::<TModuleJson>(&read_input(req)?)?.to_input()?;
            Ok(Outcome {
                result: to_value(&t_module_rank(&phi, &samples)?),
                subject: Some(phi),
            })
        }
        Command::OdeDim => {
            let (ring, coefficients) = from_json::<SystemJson>(&read_input(req)?)?.to_system()?;
            let a = assemble_system(&ring, &coefficients)?;
            Ok(Outcome {
                result: to_value(&solution_dimension(&a)?),
                subject: Some(a),
            })
        }
        Command::Selftest => {
            let defaults = Caps::default();
            let caps = Caps {
                max_n: req.max_n.unwrap_or(defaults.max_n),
                max_deg: req.max_deg.unwrap_or(defaults.max_deg),
            };
            if caps.max_n == 0 {
                return Err(Error::InvalidInput("--max-n must be at least 1".into()).into());
            }
            let report = selftest::run(&SelftestConfig {
                seed: req.seed,
                caps,
                fault: req.fault,
            });
            Ok(Outcome {
                result: to_value(&report),
                subject: None,
            })
        }
    }
}

fn oracle_section(a: &OreMatrix) -> OracleSection {
    let d = deg_det(a).value;
    let q = quotient_dim_oracle(a, OracleCaps::default());
    let commutative = if a.ring().is_commutative() {
        Some(match commutative_oracle(a) {
            Ok(c) => OracleEntry {
                value: c.to_string(),
                agrees: c == d,
            },
            Err(e) => OracleEntry {
                value: e.kind().to_string(),
                agrees: false,
            },
        })
    } else {
        None
    };
    OracleSection {
        degdet: d.to_string(),
        quotient_dim: OracleEntry {
            value: q.to_string(),
            agrees: q != OracleValue::Unstable && q.agrees_with(d),
        },
        commutative,
    }
}

fn error_report(e: &Error) -> ErrorReport {
    let position = match e {
        Error::Parse { position, .. } => Some(*position),
        _ => None,
    };
    ErrorReport {
        kind: e.kind().to_string(),
        message: e.to_string(),
        position,
    }
}

pub fn run_command(req: &CommandRequest) -> CommandReport {
    let start = Instant::now();
    let mut report = CommandReport {
        command: req.command.name().to_string(),
        result: None,
        oracle: None,
        error: None,
        timing: None,
        exit_code: EXIT_OK,
    };
    match dispatch(req) {
        Ok(outcome) => {
            if req.command == Command::Selftest && outcome.result["passed"] == Value::Bool(false) {
                report.error = Some(ErrorReport {
                    kind: "PropertyFailure".into(),
                    message: failure_message(&outcome.result),
                    position: None,
                });
                report.exit_code = EXIT_PROPERTY;
            }
            report.result = Some(outcome.result);
            if req.oracle {
                if let Some(a) = &outcome.subject {
                    let section = oracle_section(a);
                    if !section.agrees() {
                        report.error = Some(ErrorReport {
                            kind: "OracleMismatch".into(),
                            message: format!(
                                "deg det {} disagrees with an oracle: {:?}",
                                section.degdet, section
                            ),
                            position: None,
                        });
                        report.exit_code = EXIT_ORACLE;
                    }
                    report.oracle = Some(section);
                }
            }
        }
        Err(Failure::Library(e)) => {
            report.exit_code = if e.is_user_input() { EXIT_USER } else { EXIT_DOMAIN };
            report.error = Some(error_report(&e));
        }
        Err(Failure::Io(message)) => {
            report.exit_code = EXIT_USER;
            report.error = Some(ErrorReport {
                kind: "InputError".into(),
                message,
                position: None,
            });
        }
    }
    if req.timing {
        report.timing = Some(Timing {
            elapsed_ms: start.elapsed().as_millis() as u64,
        });
    }
    report
}

fn failure_message(result: &Value) -> String {
    let cx = &result["counterexample"];
    format!(
        "suite {} failed on {} (case {})",
        cx["suite"].as_str().unwrap_or("?"),
        cx["instance"].as_str().unwrap_or("?"),
        cx["case"]
    )
}
