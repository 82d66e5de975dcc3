//! Sketch-and-extrude command sequences.
//!
//! A model is a flat list of commands: each sketch is one or more loops, every
//! loop opens with `SOL` and is followed by curve commands, and each sketch is
//! closed off by an `Extrude`. The list ends with `EOS`.
//!
//! Every command owns up to 16 parameter slots. Continuous slots are stored in
//! the normalized domain `[0, 1]`; [`units`] maps them to geometric quantities.
//! Discrete slots (`f`, `b`, `u`) are typed enums here and become small integer
//! codes in the token form.

mod json;
mod logits;
mod quantize;
pub mod units;
mod validate;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use json::{parse_json, parse_json_unchecked, serialize_json};
pub use logits::{decode_logits, Logits};
pub use quantize::{dequantize, quantize, TokenMatrix, TokenRow, UNUSED};
pub use validate::{
    validate, validate_with_tolerance, FailureCode, ValidationFailure, ValidationReport,
    CLOSURE_TOLERANCE, DEQUANTIZED_CLOSURE_TOLERANCE,
};

use crate::error::{Error, Result};

/// Maximum number of commands in a sequence, including the terminating `EOS`.
pub const N_MAX: usize = 60;
/// Number of parameter slots per command.
pub const N_SLOTS: usize = 16;
/// Number of quantization levels for continuous slots.
pub const N_LEVELS: usize = 256;
/// Number of command types.
pub const N_TYPES: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CommandType {
    Sol = 0,
    Line = 1,
    Arc = 2,
    Circle = 3,
    Extrude = 4,
    Eos = 5,
}

impl CommandType {
    pub const ALL: [CommandType; N_TYPES] = [
        CommandType::Sol,
        CommandType::Line,
        CommandType::Arc,
        CommandType::Circle,
        CommandType::Extrude,
        CommandType::Eos,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(index: usize) -> Option<Self> {
        Self::ALL.get(index).copied()
    }

    pub fn name(self) -> &'static str {
        match self {
            CommandType::Sol => "SOL",
            CommandType::Line => "Line",
            CommandType::Arc => "Arc",
            CommandType::Circle => "Circle",
            CommandType::Extrude => "Extrude",
            CommandType::Eos => "EOS",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.name() == name)
    }

    /// Slots carried by this command type, in slot order.
    pub fn slots(self) -> &'static [ParamSlot] {
        use ParamSlot::*;
        match self {
            CommandType::Sol | CommandType::Eos => &[],
            CommandType::Line => &[X, Y],
            CommandType::Arc => &[X, Y, Alpha, F],
            CommandType::Circle => &[X, Y, R],
            CommandType::Extrude => &[Theta, Phi, Gamma, Px, Py, Pz, S, E1, E2, B, U],
        }
    }

    pub fn uses(self, slot: ParamSlot) -> bool {
        self.slots().contains(&slot)
    }

    pub fn is_curve(self) -> bool {
        matches!(self, CommandType::Line | CommandType::Arc | CommandType::Circle)
    }
}

impl fmt::Display for CommandType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The 16 parameter slots in their fixed order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ParamSlot {
    X = 0,
    Y,
    Alpha,
    F,
    R,
    Theta,
    Phi,
    Gamma,
    Px,
    Py,
    Pz,
    S,
    E1,
    E2,
    B,
    U,
}

impl ParamSlot {
    pub const ALL: [ParamSlot; N_SLOTS] = [
        ParamSlot::X,
        ParamSlot::Y,
        ParamSlot::Alpha,
        ParamSlot::F,
        ParamSlot::R,
        ParamSlot::Theta,
        ParamSlot::Phi,
        ParamSlot::Gamma,
        ParamSlot::Px,
        ParamSlot::Py,
        ParamSlot::Pz,
        ParamSlot::S,
        ParamSlot::E1,
        ParamSlot::E2,
        ParamSlot::B,
        ParamSlot::U,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        use ParamSlot::*;
        match self {
            X => "x",
            Y => "y",
            Alpha => "alpha",
            F => "f",
            R => "r",
            Theta => "theta",
            Phi => "phi",
            Gamma => "gamma",
            Px => "px",
            Py => "py",
            Pz => "pz",
            S => "s",
            E1 => "e1",
            E2 => "e2",
            B => "b",
            U => "u",
        }
    }

    /// Number of codes for discrete slots, `None` for continuous ones.
    pub fn cardinality(self) -> Option<u8> {
        match self {
            ParamSlot::F => Some(2),
            ParamSlot::B => Some(4),
            ParamSlot::U => Some(3),
            _ => None,
        }
    }

    pub fn is_discrete(self) -> bool {
        self.cardinality().is_some()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BooleanOp {
    NewBody = 0,
    Join = 1,
    Cut = 2,
    Intersect = 3,
}

impl BooleanOp {
    pub fn from_code(code: u8) -> Option<Self> {
        match code {
            0 => Some(BooleanOp::NewBody),
            1 => Some(BooleanOp::Join),
            2 => Some(BooleanOp::Cut),
            3 => Some(BooleanOp::Intersect),
            _ => None,
        }
    }

    pub fn code(self) -> u8 {
        self as u8
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExtentKind {
    OneSided = 0,
    Symmetric = 1,
    TwoSided = 2,
}

impl ExtentKind {
    pub fn from_code(code: u8) -> Option<Self> {
        match code {
            0 => Some(ExtentKind::OneSided),
            1 => Some(ExtentKind::Symmetric),
            2 => Some(ExtentKind::TwoSided),
            _ => None,
        }
    }

    pub fn code(self) -> u8 {
        self as u8
    }
}

/// Parameters of an `Extrude` command, all continuous values normalized to `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Extrusion {
    pub theta: f64,
    pub phi: f64,
    pub gamma: f64,
    pub px: f64,
    pub py: f64,
    pub pz: f64,
    pub scale: f64,
    pub e1: f64,
    pub e2: f64,
    pub op: BooleanOp,
    pub kind: ExtentKind,
}

/// One command. Curve end points and circle centers are sketch-local coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Command {
    Sol,
    Line { x: f64, y: f64 },
    Arc { x: f64, y: f64, sweep: f64, ccw: bool },
    Circle { x: f64, y: f64, r: f64 },
    Extrude(Extrusion),
    Eos,
}

impl Command {
    pub fn kind(&self) -> CommandType {
        match self {
            Command::Sol => CommandType::Sol,
            Command::Line { .. } => CommandType::Line,
            Command::Arc { .. } => CommandType::Arc,
            Command::Circle { .. } => CommandType::Circle,
            Command::Extrude(_) => CommandType::Extrude,
            Command::Eos => CommandType::Eos,
        }
    }

    /// Slot view of the parameters. Discrete slots hold their integer code.
    pub fn slots(&self) -> [Option<f64>; N_SLOTS] {
        let mut out = [None; N_SLOTS];
        let mut put = |slot: ParamSlot, v: f64| out[slot.index()] = Some(v);
        match *self {
            Command::Sol | Command::Eos => {}
            Command::Line { x, y } => {
                put(ParamSlot::X, x);
                put(ParamSlot::Y, y);
            }
            Command::Arc { x, y, sweep, ccw } => {
                put(ParamSlot::X, x);
                put(ParamSlot::Y, y);
                put(ParamSlot::Alpha, sweep);
                put(ParamSlot::F, if ccw { 1.0 } else { 0.0 });
            }
            Command::Circle { x, y, r } => {
                put(ParamSlot::X, x);
                put(ParamSlot::Y, y);
                put(ParamSlot::R, r);
            }
            Command::Extrude(e) => {
                put(ParamSlot::Theta, e.theta);
                put(ParamSlot::Phi, e.phi);
                put(ParamSlot::Gamma, e.gamma);
                put(ParamSlot::Px, e.px);
                put(ParamSlot::Py, e.py);
                put(ParamSlot::Pz, e.pz);
                put(ParamSlot::S, e.scale);
                put(ParamSlot::E1, e.e1);
                put(ParamSlot::E2, e.e2);
                put(ParamSlot::B, f64::from(e.op.code()));
                put(ParamSlot::U, f64::from(e.kind.code()));
            }
        }
        out
    }

    /// Rebuilds a command from its slot view, checking presence and domains.
    pub fn from_slots(kind: CommandType, slots: &[Option<f64>; N_SLOTS]) -> Result<Command> {
        for slot in ParamSlot::ALL {
            let used = kind.uses(slot);
            match (used, slots[slot.index()]) {
                (true, None) => {
                    return Err(Error::Schema(format!(
                        "{kind} is missing parameter '{}'",
                        slot.name()
                    )))
                }
                (false, Some(_)) => {
                    return Err(Error::Schema(format!(
                        "{kind} does not take parameter '{}'",
                        slot.name()
                    )))
                }
                (true, Some(v)) => check_domain(slot, v)?,
                (false, None) => {}
            }
        }
        let get = |slot: ParamSlot| slots[slot.index()].unwrap_or_default();
        let code = |slot: ParamSlot| get(slot) as u8;
        Ok(match kind {
            CommandType::Sol => Command::Sol,
            CommandType::Eos => Command::Eos,
            CommandType::Line => Command::Line {
                x: get(ParamSlot::X),
                y: get(ParamSlot::Y),
            },
            CommandType::Arc => Command::Arc {
                x: get(ParamSlot::X),
                y: get(ParamSlot::Y),
                sweep: get(ParamSlot::Alpha),
                ccw: code(ParamSlot::F) == 1,
            },
            CommandType::Circle => Command::Circle {
                x: get(ParamSlot::X),
                y: get(ParamSlot::Y),
                r: get(ParamSlot::R),
            },
            CommandType::Extrude => Command::Extrude(Extrusion {
                theta: get(ParamSlot::Theta),
                phi: get(ParamSlot::Phi),
                gamma: get(ParamSlot::Gamma),
                px: get(ParamSlot::Px),
                py: get(ParamSlot::Py),
                pz: get(ParamSlot::Pz),
                scale: get(ParamSlot::S),
                e1: get(ParamSlot::E1),
                e2: get(ParamSlot::E2),
                op: BooleanOp::from_code(code(ParamSlot::B)).expect("domain checked"),
                kind: ExtentKind::from_code(code(ParamSlot::U)).expect("domain checked"),
            }),
        })
    }
}

fn check_domain(slot: ParamSlot, v: f64) -> Result<()> {
    match slot.cardinality() {
        None if (0.0..=1.0).contains(&v) => Ok(()),
        None => Err(Error::Range(format!(
            "'{}' = {v} is outside [0, 1]",
            slot.name()
        ))),
        Some(n) if v.fract() == 0.0 && v >= 0.0 && v < f64::from(n) => Ok(()),
        Some(n) => Err(Error::Range(format!(
            "'{}' = {v} is not an integer code in 0..{n}",
            slot.name()
        ))),
    }
}

/// An ordered command list.
///
/// Construction does not enforce the grammar: decoded model output is allowed
/// to be malformed, and [`validate`] reports what is wrong with it. Sequences
/// produced by [`parse_json`] are grammatical.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct CadSequence {
    commands: Vec<Command>,
}

impl CadSequence {
    pub fn new(commands: Vec<Command>) -> Self {
        Self { commands }
    }

    /// The empty model, `[EOS]`.
    pub fn empty_model() -> Self {
        Self::new(vec![Command::Eos])
    }

    pub fn commands(&self) -> &[Command] {
        &self.commands
    }

    pub fn into_commands(self) -> Vec<Command> {
        self.commands
    }

    pub fn len(&self) -> usize {
        self.commands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.commands.is_empty()
    }

    /// First grammar violation, if any.
    pub fn check_grammar(&self) -> Result<()> {
        match validate::grammar_violations(self).into_iter().next() {
            None => Ok(()),
            Some((index, message)) => Err(Error::Grammar { index, message }),
        }
    }

    /// Splits the sequence into sketch groups: each group is the loops followed
    /// by the extrusion that consumes them. Trailing loops without an extrusion
    /// and malformed stretches are skipped.
    pub fn sketches(&self) -> Vec<Sketch<'_>> {
        let mut out = Vec::new();
        let mut loops: Vec<&[Command]> = Vec::new();
        let mut loop_start: Option<usize> = None;
        for (i, cmd) in self.commands.iter().enumerate() {
            match cmd {
                Command::Sol => {
                    if let Some(s) = loop_start.take() {
                        loops.push(&self.commands[s..i]);
                    }
                    loop_start = Some(i + 1);
                }
                Command::Extrude(e) => {
                    if let Some(s) = loop_start.take() {
                        loops.push(&self.commands[s..i]);
                    }
                    out.push(Sketch {
                        loops: std::mem::take(&mut loops),
                        extrusion: *e,
                        index: i,
                    });
                }
                Command::Eos => break,
                _ => {}
            }
        }
        out
    }
}

/// Loops of one sketch and the extrusion applied to them.
#[derive(Clone, Debug)]
pub struct Sketch<'a> {
    /// Curve commands of each loop, `SOL` markers excluded.
    pub loops: Vec<&'a [Command]>,
    pub extrusion: Extrusion,
    /// Index of the `Extrude` command in the sequence.
    pub index: usize,
}
