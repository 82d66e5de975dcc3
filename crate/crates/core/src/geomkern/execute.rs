use super::{sketch_plane_frame, Curve, ExtrusionBody, Profile, SolidModel, Vec2, Vec3};
use crate::error::{Error, Result};
use crate::seqmodel::{units, CadSequence, Command};

/// Builds sketch curves from loop commands. Each chain starts at the sketch
/// origin and every curve starts where the previous one ended.
pub fn profile_of_loops(loops: &[&[Command]]) -> Result<Profile> {
    let mut out = Vec::with_capacity(loops.len());
    for cmds in loops {
        let mut pen = Vec2::zeros();
        let mut curves = Vec::with_capacity(cmds.len());
        for cmd in *cmds {
            match *cmd {
                Command::Line { x, y } => {
                    let end = Vec2::new(x, y);
                    curves.push(Curve::Line { start: pen, end });
                    pen = end;
                }
                Command::Arc { x, y, sweep, ccw } => {
                    let end = Vec2::new(x, y);
                    curves.push(Curve::Arc {
                        start: pen,
                        end,
                        sweep: units::sweep(sweep),
                        ccw,
                    });
                    pen = end;
                }
                Command::Circle { x, y, r } => curves.push(Curve::Circle {
                    center: Vec2::new(x, y),
                    radius: r,
                }),
                other => {
                    return Err(Error::Argument(format!(
                        "{} inside a loop",
                        other.kind()
                    )))
                }
            }
        }
        out.push(curves);
    }
    Ok(Profile { loops: out })
}

/// Executes a sequence into a solid model.
pub fn execute(seq: &CadSequence, sagitta_tol: f64) -> Result<SolidModel> {
    let mut bodies = Vec::new();
    for sketch in seq.sketches() {
        if sketch.loops.is_empty() {
            return Err(Error::Argument(format!(
                "extrusion at command {} has no sketch",
                sketch.index
            )));
        }
        let e = sketch.extrusion;
        let origin = Vec3::new(units::origin(e.px), units::origin(e.py), units::origin(e.pz));
        let frame = sketch_plane_frame(
            units::theta(e.theta),
            units::phi(e.phi),
            units::gamma(e.gamma),
            origin,
            units::length(e.scale),
        )?;
        bodies.push(ExtrusionBody::new(
            profile_of_loops(&sketch.loops)?,
            frame,
            units::length(e.e1),
            units::length(e.e2),
            e.kind,
            e.op,
            sagitta_tol,
        )?);
    }
    if bodies.is_empty() {
        return Err(Error::Argument("sequence has no extrusion".into()));
    }
    SolidModel::new(bodies)
}
