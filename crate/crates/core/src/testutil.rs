use crate::seqmodel::{BooleanOp, CadSequence, Command, ExtentKind, Extrusion};

/// Identity sketch frame at the world origin, unit scale, one-sided extent `e1`.
pub fn identity_extrusion(e1: f64) -> Extrusion {
    Extrusion {
        theta: 0.0,
        phi: 0.0,
        gamma: 0.0,
        px: 0.5,
        py: 0.5,
        pz: 0.5,
        scale: 1.0,
        e1,
        e2: 0.0,
        op: BooleanOp::NewBody,
        kind: ExtentKind::OneSided,
    }
}

/// `SOL` plus four lines around the unit square, starting at the origin.
pub fn unit_square_loop() -> Vec<Command> {
    vec![
        Command::Sol,
        Command::Line { x: 1.0, y: 0.0 },
        Command::Line { x: 1.0, y: 1.0 },
        Command::Line { x: 0.0, y: 1.0 },
        Command::Line { x: 0.0, y: 0.0 },
    ]
}

/// Square with a circular hole, then a cut cylinder.
pub fn two_body_sequence() -> CadSequence {
    let mut cmds = unit_square_loop();
    cmds.push(Command::Sol);
    cmds.push(Command::Circle {
        x: 0.5,
        y: 0.5,
        r: 0.2,
    });
    cmds.push(Command::Extrude(identity_extrusion(0.5)));
    cmds.push(Command::Sol);
    cmds.push(Command::Circle {
        x: 0.25,
        y: 0.25,
        r: 0.1,
    });
    let mut cut = identity_extrusion(1.0);
    cut.op = BooleanOp::Cut;
    cut.kind = ExtentKind::Symmetric;
    cmds.push(Command::Extrude(cut));
    cmds.push(Command::Eos);
    CadSequence::new(cmds)
}
