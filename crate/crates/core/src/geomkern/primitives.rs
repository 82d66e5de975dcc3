//! Axis-aligned building blocks, mostly for tests and benchmarks.

use super::{Curve, ExtrusionBody, Frame, Profile, Vec2, Vec3, DEFAULT_SAGITTA};
use crate::error::Result;
use crate::seqmodel::{BooleanOp, ExtentKind};

/// Box spanning `min..max`, extruded one-sided along `+z` from `min.z`.
pub fn cuboid(min: Vec3, max: Vec3, op: BooleanOp) -> Result<ExtrusionBody> {
    let frame = Frame {
        origin: Vec3::new(0.0, 0.0, min.z),
        ..Frame::identity()
    };
    let pts = [
        Vec2::new(min.x, min.y),
        Vec2::new(max.x, min.y),
        Vec2::new(max.x, max.y),
        Vec2::new(min.x, max.y),
    ];
    let curves = (0..4)
        .map(|i| Curve::Line {
            start: pts[i],
            end: pts[(i + 1) % 4],
        })
        .collect();
    ExtrusionBody::new(
        Profile { loops: vec![curves] },
        frame,
        max.z - min.z,
        0.0,
        ExtentKind::OneSided,
        op,
        DEFAULT_SAGITTA,
    )
}

/// Cylinder along `+z` whose bottom cap is centered at `base`.
pub fn cylinder(base: Vec3, radius: f64, height: f64, op: BooleanOp) -> Result<ExtrusionBody> {
    let frame = Frame {
        origin: Vec3::new(0.0, 0.0, base.z),
        ..Frame::identity()
    };
    let circle = Curve::Circle {
        center: Vec2::new(base.x, base.y),
        radius,
    };
    ExtrusionBody::new(
        Profile {
            loops: vec![vec![circle]],
        },
        frame,
        height,
        0.0,
        ExtentKind::OneSided,
        op,
        DEFAULT_SAGITTA,
    )
}
