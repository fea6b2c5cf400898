//! Executes parsed session scripts and renders their output as text or JSON.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::chainmap::{homotopy_between, homotopy_residuals, lift_morphism, ChainMap, Homotopy};
use crate::complexes::{
    buchsbaum_eisenbud_exact, cohen_macaulay_check, fitting_support, free_resolution, koszul_complex,
    CmReport, Complex, ExactnessReport, ExactnessWitness,
};
use crate::error::AlgebraError;
use crate::freemod::PolyMatrix;
use crate::groebner::{codimension, dimension, Codim, Ideal};
use crate::parser::{format_polynomial, Command, Position, SessionCommand, TupleArg};
use crate::polyring::{Polynomial, Ring};
use crate::residue::{hickel_test, transformation_report, HickelVerdict, ResidueReport};

#[derive(Clone, Debug)]
pub enum Value {
    Ideal(Ideal),
    Matrix(PolyMatrix),
    Complex(Complex),
    ChainMap(ChainMap),
    Homotopy(Homotopy),
    Exactness(ExactnessReport),
    CohenMacaulay(CmReport),
    Dimension { dim: i64, codim: Codim },
    Residue(Box<ResidueReport>),
    Hickel(HickelVerdict),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Ideal(_) => "an ideal",
            Value::Matrix(_) => "a matrix",
            Value::Complex(_) => "a complex",
            Value::ChainMap(_) => "a chain map",
            Value::Homotopy(_) => "a homotopy",
            Value::Exactness(_) => "an exactness report",
            Value::CohenMacaulay(_) => "a Cohen-Macaulay report",
            Value::Dimension { .. } => "a dimension report",
            Value::Residue(_) => "a residue report",
            Value::Hickel(_) => "a Jacobian verdict",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SessionState {
    pub ring: Option<Arc<Ring>>,
    pub bindings: BTreeMap<String, Value>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SessionOptions {
    /// Run the exactness criterion on the target before every lift.
    pub check: bool,
}

type Strings = Vec<String>;
type MatrixStrings = Vec<Vec<String>>;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OutputBody {
    Ideal {
        generators: Strings,
    },
    Matrix {
        value: MatrixStrings,
    },
    Complex {
        ranks: Vec<usize>,
        maps: Vec<MatrixStrings>,
    },
    ChainMap {
        maps: Vec<MatrixStrings>,
        valid: bool,
    },
    Homotopy {
        maps: Vec<MatrixStrings>,
        verified: bool,
    },
    Exactness {
        expected_ranks: Vec<i64>,
        fitting_codims: Vec<Option<Codim>>,
        exact: bool,
        witnesses: Vec<ExactnessWitness>,
    },
    CohenMacaulay {
        is_cm: bool,
        length: usize,
        codim: Codim,
    },
    Dimension {
        dim: i64,
        codim: Codim,
    },
    ResidueReport {
        ci_tuple: Strings,
        coefficient_vector: MatrixStrings,
        target_ranks: Vec<usize>,
        congruence_ideal: Strings,
        rendering: String,
    },
    Hickel {
        jacobian: String,
        codim: usize,
        member: bool,
        certificate: Option<Strings>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OutputRecord {
    /// Index of the producing command.
    pub command: usize,
    pub label: String,
    #[serde(flatten)]
    pub body: OutputBody,
    #[serde(skip)]
    text: String,
}

impl OutputRecord {
    pub fn text(&self) -> &str {
        &self.text
    }
}

#[derive(Clone, Debug, Default)]
pub struct SessionRun {
    pub state: SessionState,
    pub commands: Vec<String>,
    pub outputs: Vec<OutputRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SessionError {
    pub command: usize,
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for SessionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "command {} at {}:{}: {}",
            self.command + 1,
            self.line,
            self.col,
            self.message
        )
    }
}

impl std::error::Error for SessionError {}

/// A failed run keeps everything produced before the failing command.
#[derive(Clone, Debug)]
pub struct SessionFailure {
    pub error: SessionError,
    pub partial: SessionRun,
}

fn strings(ps: &[Polynomial]) -> Strings {
    ps.iter().map(format_polynomial).collect()
}

fn ideal_strings(i: &Ideal) -> Strings {
    strings(i.generators())
}

fn body_of(value: &Value) -> OutputBody {
    match value {
        Value::Ideal(i) => OutputBody::Ideal {
            generators: ideal_strings(i),
        },
        Value::Matrix(m) => OutputBody::Matrix {
            value: m.to_strings(),
        },
        Value::Complex(c) => OutputBody::Complex {
            ranks: c.ranks().to_vec(),
            maps: c.maps().iter().map(PolyMatrix::to_strings).collect(),
        },
        Value::ChainMap(a) => OutputBody::ChainMap {
            maps: a.maps().iter().map(PolyMatrix::to_strings).collect(),
            valid: a.is_valid(),
        },
        Value::Homotopy(h) => OutputBody::Homotopy {
            maps: h.maps.iter().map(PolyMatrix::to_strings).collect(),
            verified: true,
        },
        Value::Exactness(r) => OutputBody::Exactness {
            expected_ranks: r.expected_ranks.clone(),
            fitting_codims: r.fitting_codims.clone(),
            exact: r.exact,
            witnesses: r.witnesses.clone(),
        },
        Value::CohenMacaulay(r) => OutputBody::CohenMacaulay {
            is_cm: r.is_cm,
            length: r.length,
            codim: r.codim,
        },
        Value::Dimension { dim, codim } => OutputBody::Dimension {
            dim: *dim,
            codim: *codim,
        },
        Value::Residue(r) => OutputBody::ResidueReport {
            ci_tuple: strings(&r.ci_tuple),
            coefficient_vector: r.coefficient_vector.to_strings(),
            target_ranks: r.target_ranks.clone(),
            congruence_ideal: ideal_strings(&r.congruence_ideal),
            rendering: r.render(),
        },
        Value::Hickel(v) => OutputBody::Hickel {
            jacobian: format_polynomial(&v.jacobian),
            codim: v.codim,
            member: v.member,
            certificate: v.certificate.as_deref().map(strings),
        },
    }
}

fn text_of(value: &Value) -> String {
    match value {
        Value::Ideal(i) => i.to_string(),
        Value::Matrix(m) => m.to_string(),
        Value::Complex(c) => c.to_string(),
        Value::ChainMap(a) => {
            let status = if a.is_valid() { "valid" } else { "NOT a chain map" };
            format!("chain map ({status})\n{a}")
        }
        Value::Homotopy(h) => format!("homotopy (identity verified)\n{h}"),
        Value::Exactness(r) => r.to_string(),
        Value::CohenMacaulay(r) => r.to_string(),
        Value::Dimension { dim, codim } => format!("dim {dim}, codim {codim}"),
        Value::Residue(r) => r.render(),
        Value::Hickel(v) => v.to_string(),
    }
}

struct Runner<'a> {
    state: SessionState,
    options: SessionOptions,
    cmd: &'a SessionCommand,
}

type Step<T> = std::result::Result<T, String>;

fn engine(e: AlgebraError) -> String {
    e.to_string()
}

impl Runner<'_> {
    fn get(&self, name: &str) -> Step<&Value> {
        self.state
            .bindings
            .get(name)
            .ok_or_else(|| format!("undefined name `{name}`"))
    }

    fn ideal(&self, name: &str) -> Step<&Ideal> {
        match self.get(name)? {
            Value::Ideal(i) => Ok(i),
            v => Err(format!("`{name}` is {}, expected an ideal", v.kind())),
        }
    }

    fn matrix(&self, name: &str) -> Step<&PolyMatrix> {
        match self.get(name)? {
            Value::Matrix(m) => Ok(m),
            v => Err(format!("`{name}` is {}, expected a matrix", v.kind())),
        }
    }

    fn complex(&self, name: &str) -> Step<&Complex> {
        match self.get(name)? {
            Value::Complex(c) => Ok(c),
            v => Err(format!("`{name}` is {}, expected a complex", v.kind())),
        }
    }

    fn chain_map(&self, name: &str) -> Step<&ChainMap> {
        match self.get(name)? {
            Value::ChainMap(a) => Ok(a),
            v => Err(format!("`{name}` is {}, expected a chain map", v.kind())),
        }
    }

    fn ring(&self) -> Step<&Arc<Ring>> {
        self.state.ring.as_ref().ok_or_else(|| "no ring declared".to_string())
    }

    /// Returns the computed value and whether it is always reported.
    fn execute(&mut self) -> Step<Option<(Value, bool)>> {
        let out = match &self.cmd.command {
            Command::Ring { .. } => return Ok(None),
            Command::Ideal { generators, .. } => {
                let ring = self.ring()?.clone();
                (Value::Ideal(Ideal::new(&ring, generators.clone()).map_err(engine)?), false)
            }
            Command::Matrix { matrix, .. } => (Value::Matrix(matrix.clone()), false),
            Command::Complex { maps, .. } => {
                let ms = maps
                    .iter()
                    .map(|m| self.matrix(m).cloned())
                    .collect::<Step<Vec<_>>>()?;
                (Value::Complex(Complex::new(ms).map_err(engine)?), false)
            }
            Command::Chain {
                source,
                target,
                maps,
                ..
            } => {
                let ms = maps
                    .iter()
                    .map(|m| self.matrix(m).cloned())
                    .collect::<Step<Vec<_>>>()?;
                let a = ChainMap::new(self.complex(source)?.clone(), self.complex(target)?.clone(), ms)
                    .map_err(engine)?;
                (Value::ChainMap(a), false)
            }
            Command::Res { ideal, .. } => {
                let c = free_resolution(self.ideal(ideal)?, None).map_err(engine)?;
                (Value::Complex(c), false)
            }
            Command::Koszul { ideal, .. } => {
                let c = koszul_complex(self.ideal(ideal)?.generators()).map_err(engine)?;
                (Value::Complex(c), false)
            }
            Command::Lift {
                source,
                target,
                base,
                ..
            } => {
                let f = self.complex(source)?;
                let e = self.complex(target)?;
                if self.options.check {
                    let rep = buchsbaum_eisenbud_exact(e).map_err(engine)?;
                    if !rep.exact {
                        return Err(format!("target complex `{target}` is not exact"));
                    }
                }
                let a0 = match base {
                    Some(m) => self.matrix(m)?.clone(),
                    None => {
                        if (e.rank(0), f.rank(0)) != (1, 1) {
                            return Err("`lift` without `via` needs rank-one degree-0 modules".into());
                        }
                        PolyMatrix::identity(e.ring(), 1)
                    }
                };
                let a = lift_morphism(f, e, &a0).map_err(engine)?;
                if !a.is_valid() {
                    return Err("lifted map failed validation".into());
                }
                (Value::ChainMap(a), false)
            }
            Command::Homotopy { first, second, .. } => {
                let a = self.chain_map(first)?;
                let b = self.chain_map(second)?;
                let h = homotopy_between(a, b).map_err(engine)?;
                let res = homotopy_residuals(a, b, &h).map_err(engine)?;
                if !res.iter().all(PolyMatrix::is_zero) {
                    return Err("homotopy failed verification".into());
                }
                (Value::Homotopy(h), false)
            }
            Command::CheckExact { complex, .. } => {
                let r = buchsbaum_eisenbud_exact(self.complex(complex)?).map_err(engine)?;
                (Value::Exactness(r), true)
            }
            Command::CheckCm { ideal, .. } => {
                let r = cohen_macaulay_check(self.ideal(ideal)?).map_err(engine)?;
                (Value::CohenMacaulay(r), true)
            }
            Command::Fitting { complex, k, .. } => {
                let i = fitting_support(self.complex(complex)?, *k).map_err(engine)?;
                (Value::Ideal(i), false)
            }
            Command::Dim { ideal, .. } => {
                let i = self.ideal(ideal)?;
                (
                    Value::Dimension {
                        dim: dimension(i),
                        codim: codimension(i),
                    },
                    true,
                )
            }
            Command::ResidueReport { tuple, target, .. } => {
                let f = self.ideal(tuple)?.generators().to_vec();
                let r = transformation_report(&f, self.ideal(target)?).map_err(engine)?;
                (Value::Residue(Box::new(r)), true)
            }
            Command::JacobianTest { tuple, .. } => {
                let f = match tuple {
                    TupleArg::Inline(ps) => ps.clone(),
                    TupleArg::Ideal(name) => self.ideal(name)?.generators().to_vec(),
                };
                (Value::Hickel(hickel_test(&f).map_err(engine)?), true)
            }
            Command::Print { name } => (self.get(name)?.clone(), true),
        };
        Ok(Some(out))
    }
}

fn position_error(index: usize, pos: Position, message: String) -> SessionError {
    SessionError {
        command: index,
        line: pos.line,
        col: pos.col,
        message,
    }
}

/// Runs commands in order. Every report verb and `print` emits a record, as
/// does any computation whose result is not bound to a name.
pub fn run_session(
    commands: &[SessionCommand],
    options: SessionOptions,
) -> Result<SessionRun, Box<SessionFailure>> {
    let mut run = SessionRun {
        commands: commands.iter().map(|c| c.text.clone()).collect(),
        ..SessionRun::default()
    };
    for (index, cmd) in commands.iter().enumerate() {
        if let Command::Ring { ring } = &cmd.command {
            if run.state.ring.is_some() {
                return Err(Box::new(SessionFailure {
                    error: position_error(index, cmd.pos, "only one ring per session".into()),
                    partial: run,
                }));
            }
            run.state.ring = Some(ring.clone());
            continue;
        }
        let mut runner = Runner {
            state: std::mem::take(&mut run.state),
            options,
            cmd,
        };
        let result = runner.execute();
        run.state = runner.state;
        match result {
            Ok(None) => {}
            Ok(Some((value, always))) => {
                let binding = cmd.binding().map(str::to_string);
                let report = always || binding.is_none() || matches!(cmd.command, Command::Print { .. });
                let declared = matches!(
                    cmd.command,
                    Command::Ideal { .. } | Command::Matrix { .. }
                );
                if report && !declared {
                    let label = match &cmd.command {
                        Command::Print { name } => name.clone(),
                        _ => cmd.text.clone(),
                    };
                    let body = body_of(&value);
                    let text = text_of(&value);
                    run.outputs.push(OutputRecord {
                        command: index,
                        label,
                        body,
                        text,
                    });
                }
                if let Some(name) = binding {
                    run.state.bindings.insert(name, value);
                }
            }
            Err(message) => {
                return Err(Box::new(SessionFailure {
                    error: position_error(index, cmd.pos, message),
                    partial: run,
                }))
            }
        }
    }
    Ok(run)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Serialize)]
struct RingDoc {
    variables: Vec<String>,
    order: String,
}

#[derive(Serialize)]
struct Document<'a> {
    ring: Option<RingDoc>,
    commands: &'a [String],
    outputs: &'a [OutputRecord],
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<&'a SessionError>,
}

/// Text: one block per record, `label: body`. JSON: a single document
/// `{ring, commands, outputs}` plus `error` when the run failed.
pub fn emit_report(run: &SessionRun, error: Option<&SessionError>, format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => {
            let mut out = String::new();
            for r in &run.outputs {
                if r.text.contains('\n') {
                    out.push_str(&format!("{}:\n{}\n", r.label, indent(&r.text)));
                } else {
                    out.push_str(&format!("{}: {}\n", r.label, r.text));
                }
            }
            if let Some(e) = error {
                out.push_str(&format!("error: {e}\n"));
            }
            out
        }
        OutputFormat::Json => {
            let doc = Document {
                ring: run.state.ring.as_ref().map(|r| RingDoc {
                    variables: r.vars().to_vec(),
                    order: r.order().to_string(),
                }),
                commands: &run.commands,
                outputs: &run.outputs,
                error,
            };
            let mut s = serde_json::to_string_pretty(&doc).expect("plain data serializes");
            s.push('\n');
            s
        }
    }
}

fn indent(s: &str) -> String {
    s.lines()
        .map(|l| {
            if l.starts_with("  ") {
                l.to_string()
            } else {
                format!("  {l}")
            }
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_session;

    const CURVE: &str = "\
ring x, y, z;
ideal J = y^2-x*z, x^3-y*z, x^2*y-z^2;
ideal I = z^2-x^2*y, x^4+y^3-2*x*y*z;
E = res J;
F = koszul I;
a = lift F -> E;
print a;
check-cm J;
";

    fn run(src: &str) -> SessionRun {
        run_session(&parse_session(src).unwrap(), SessionOptions::default()).unwrap()
    }

    #[test]
    fn curve_session() {
        let r = run(CURVE);
        assert_eq!(r.outputs.len(), 2);
        let OutputBody::ChainMap { maps, valid } = &r.outputs[0].body else {
            panic!("chain map expected");
        };
        assert!(valid);
        assert_eq!(maps.len(), 3);
        assert_eq!(r.outputs[1].text(), "CM: true (length 2 = codim 2)");
    }

    #[test]
    fn jacobian_verb() {
        let r = run("ring x, y; jacobian-test x^2, x*y;");
        let OutputBody::Hickel { member, jacobian, .. } = &r.outputs[0].body else {
            panic!();
        };
        assert!(member);
        assert_eq!(jacobian, "2*x^2");
    }

    #[test]
    fn empty_session() {
        let r = run("");
        assert!(r.outputs.is_empty());
        let json = emit_report(&r, None, OutputFormat::Json);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["outputs"], serde_json::json!([]));
        assert_eq!(emit_report(&r, None, OutputFormat::Text), "");
    }

    #[test]
    fn structured_exactness() {
        let r = run("ring x, y; ideal I = x, y; K = koszul I; check-exact K;");
        let json = emit_report(&r, None, OutputFormat::Json);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        let out = &v["outputs"][0];
        assert_eq!(out["kind"], "exactness");
        assert_eq!(out["expected_ranks"], serde_json::json!([1, 1, 0]));
        assert_eq!(out["fitting_codims"], serde_json::json!([2, 2]));
        assert_eq!(out["exact"], true);
    }

    #[test]
    fn engine_errors_carry_command_index() {
        let cmds = parse_session("ring x, y;\nideal I = x, y;\nideal U = 1;\nE = res U;").unwrap();
        let f = run_session(&cmds, SessionOptions::default()).unwrap_err();
        assert_eq!(f.error.command, 3);
        assert_eq!(f.error.line, 4);
        assert!(f.error.message.contains("not proper"));
        let cmds = parse_session("ring x; ideal I = x; K = koszul I; check-cm K;").unwrap();
        let f = run_session(&cmds, SessionOptions::default()).unwrap_err();
        assert!(f.error.message.contains("expected an ideal"));
    }

    #[test]
    fn check_flag_rejects_non_exact_targets() {
        let src = "ring x, y; ideal I = x, x*y; ideal J = x; K = koszul I; L = koszul J; a = lift L -> K;";
        let cmds = parse_session(src).unwrap();
        let f = run_session(&cmds, SessionOptions { check: true }).unwrap_err();
        assert!(f.error.message.contains("not exact"));
    }

    #[test]
    fn output_is_deterministic() {
        let a = emit_report(&run(CURVE), None, OutputFormat::Json);
        let b = emit_report(&run(CURVE), None, OutputFormat::Json);
        assert_eq!(a, b);
    }
}
