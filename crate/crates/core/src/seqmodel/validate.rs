//! Structural and geometric checks used for the invalid ratio.
//!
//! Each loop is a chain drawn from the sketch origin: the first curve starts at
//! `(0, 0)`, every curve starts where the previous one ended, and the chain
//! must end back at `(0, 0)`. A `Circle` is closed by itself and must be the
//! only curve in its loop.

use std::fmt;

use nalgebra::Vector2;
use serde::Serialize;

use super::{units, BooleanOp, CadSequence, Command, ExtentKind};

/// Loop-closure tolerance for sequences in continuous form.
pub const CLOSURE_TOLERANCE: f64 = 1e-6;
/// Loop-closure tolerance for sequences recovered from tokens.
pub const DEQUANTIZED_CLOSURE_TOLERANCE: f64 = 1.0 / 255.0;
/// Lengths, radii and sweeps at or below this are degenerate.
const DEGENERATE_EPS: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FailureCode {
    GrammarOrder,
    OpenLoop,
    DegenerateCurve,
    ZeroExtrusion,
    NoExtrusion,
    FirstOpNotNewBody,
}

impl fmt::Display for FailureCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FailureCode::GrammarOrder => "grammar-order",
            FailureCode::OpenLoop => "open-loop",
            FailureCode::DegenerateCurve => "degenerate-curve",
            FailureCode::ZeroExtrusion => "zero-extrusion",
            FailureCode::NoExtrusion => "no-extrusion",
            FailureCode::FirstOpNotNewBody => "first-op-not-new-body",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationFailure {
    pub index: usize,
    pub code: FailureCode,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub failures: Vec<ValidationFailure>,
}

impl ValidationReport {
    fn from_failures(failures: Vec<ValidationFailure>) -> Self {
        Self {
            valid: failures.is_empty(),
            failures,
        }
    }

    pub fn has(&self, code: FailureCode) -> bool {
        self.failures.iter().any(|f| f.code == code)
    }
}

#[derive(Clone, Copy, PartialEq)]
enum State {
    /// Before any command, or right after an extrusion.
    Idle,
    /// `SOL` seen, no curve yet.
    LoopOpened,
    /// Inside a loop of line/arc curves.
    Chain,
    /// Inside a loop holding a single circle.
    CircleLoop,
    Done,
}

/// Every grammar violation as `(command index, message)`. The scan recovers
/// after each violation so later ones are reported too.
pub(crate) fn grammar_violations(seq: &CadSequence) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    let mut state = State::Idle;
    for (i, cmd) in seq.commands().iter().enumerate() {
        let mut fail = |m: &str| out.push((i, m.to_string()));
        state = match (state, cmd) {
            (State::Done, _) => {
                fail("command after EOS");
                State::Done
            }
            (_, Command::Sol) => {
                if state == State::LoopOpened {
                    fail("empty loop: SOL followed by SOL");
                }
                State::LoopOpened
            }
            (State::Idle, Command::Line { .. } | Command::Arc { .. } | Command::Circle { .. }) => {
                fail("loop must begin with SOL");
                State::Chain
            }
            (State::LoopOpened, Command::Circle { .. }) => State::CircleLoop,
            (State::LoopOpened | State::Chain, Command::Line { .. } | Command::Arc { .. }) => {
                State::Chain
            }
            (State::Chain, Command::Circle { .. }) | (State::CircleLoop, Command::Line { .. } | Command::Arc { .. } | Command::Circle { .. }) => {
                fail("a circle must be the only curve in its loop");
                State::Chain
            }
            (State::Idle, Command::Extrude(_)) => {
                fail("extrusion without a sketch");
                State::Idle
            }
            (State::LoopOpened, Command::Extrude(_)) => {
                fail("empty loop before extrusion");
                State::Idle
            }
            (State::Chain | State::CircleLoop, Command::Extrude(_)) => State::Idle,
            (State::Idle, Command::Eos) => State::Done,
            (State::LoopOpened, Command::Eos) => {
                fail("empty loop before EOS");
                State::Done
            }
            (State::Chain | State::CircleLoop, Command::Eos) => {
                fail("sketch is never extruded");
                State::Done
            }
        };
    }
    if state != State::Done {
        out.push((seq.len(), "sequence does not end with EOS".into()));
    }
    out
}

/// Validates with the continuous-form closure tolerance.
pub fn validate(seq: &CadSequence) -> ValidationReport {
    validate_with_tolerance(seq, CLOSURE_TOLERANCE)
}

/// Validates a sequence, listing every violated rule.
pub fn validate_with_tolerance(seq: &CadSequence, closure_tol: f64) -> ValidationReport {
    let mut failures: Vec<ValidationFailure> = grammar_violations(seq)
        .into_iter()
        .map(|(index, message)| ValidationFailure {
            index,
            code: FailureCode::GrammarOrder,
            message,
        })
        .collect();
    let mut push = |index: usize, code: FailureCode, message: String| {
        failures.push(ValidationFailure {
            index,
            code,
            message,
        })
    };

    // Loop geometry. Loops are delimited by SOL and closed by SOL/Extrude/EOS.
    let commands = seq.commands();
    let mut i = 0;
    while i < commands.len() {
        if commands[i] != Command::Sol {
            i += 1;
            continue;
        }
        let sol = i;
        let mut pen = Vector2::zeros();
        let mut chained = false;
        i += 1;
        while i < commands.len() {
            match commands[i] {
                Command::Line { x, y } => {
                    let end = Vector2::new(x, y);
                    if (end - pen).norm() <= DEGENERATE_EPS {
                        push(i, FailureCode::DegenerateCurve, "zero-length line".into());
                    }
                    pen = end;
                    chained = true;
                }
                Command::Arc { x, y, sweep, .. } => {
                    let end = Vector2::new(x, y);
                    let alpha = units::sweep(sweep);
                    if (end - pen).norm() <= DEGENERATE_EPS {
                        push(i, FailureCode::DegenerateCurve, "arc with coincident end points".into());
                    } else if alpha <= DEGENERATE_EPS || alpha >= std::f64::consts::TAU - DEGENERATE_EPS {
                        push(i, FailureCode::DegenerateCurve, format!("arc sweep {alpha} outside (0, 2π)"));
                    }
                    pen = end;
                    chained = true;
                }
                Command::Circle { r, .. } => {
                    if r <= DEGENERATE_EPS {
                        push(i, FailureCode::DegenerateCurve, "zero-radius circle".into());
                    }
                }
                _ => break,
            }
            i += 1;
        }
        if chained && pen.norm() > closure_tol {
            push(
                sol,
                FailureCode::OpenLoop,
                format!("loop ends at ({}, {}) instead of its start (0, 0)", pen.x, pen.y),
            );
        }
    }

    let mut extrusions = 0;
    for (i, cmd) in commands.iter().enumerate() {
        if *cmd == Command::Eos {
            break;
        }
        let Command::Extrude(e) = cmd else { continue };
        let active = match e.kind {
            ExtentKind::OneSided | ExtentKind::Symmetric => e.e1,
            ExtentKind::TwoSided => e.e1 + e.e2,
        };
        if active <= 0.0 {
            push(i, FailureCode::ZeroExtrusion, format!("{:?} extrusion with zero extent", e.kind));
        }
        if e.scale <= 0.0 {
            push(i, FailureCode::ZeroExtrusion, "zero sketch scale".into());
        }
        if extrusions == 0 && e.op != BooleanOp::NewBody {
            push(i, FailureCode::FirstOpNotNewBody, format!("first boolean is {:?}", e.op));
        }
        extrusions += 1;
    }
    if extrusions == 0 {
        push(0, FailureCode::NoExtrusion, "sequence has no extrusion".into());
    }

    failures.sort_by_key(|f| f.index);
    ValidationReport::from_failures(failures)
}
