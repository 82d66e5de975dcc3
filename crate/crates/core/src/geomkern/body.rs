//! Extrusion bodies and their boolean composition on implicit occupancy.

use super::frame::Frame;
use super::profile::{Outline, Profile};
use super::{Aabb, Vec2, Vec3};
use crate::error::{Error, Result};
use crate::seqmodel::{BooleanOp, ExtentKind};

/// A profile swept along its sketch plane normal.
#[derive(Clone, Debug)]
pub struct ExtrusionBody {
    pub profile: Profile,
    pub frame: Frame,
    pub e1: f64,
    pub e2: f64,
    pub kind: ExtentKind,
    pub op: BooleanOp,
    outline: Outline,
    sagitta_tol: f64,
}

impl ExtrusionBody {
    pub fn new(
        profile: Profile,
        frame: Frame,
        e1: f64,
        e2: f64,
        kind: ExtentKind,
        op: BooleanOp,
        sagitta_tol: f64,
    ) -> Result<Self> {
        if !(frame.scale > 0.0) {
            return Err(Error::Scale(frame.scale));
        }
        if !(e1 >= 0.0 && e2 >= 0.0) {
            return Err(Error::Argument(format!("negative extent ({e1}, {e2})")));
        }
        let outline = Outline::new(&profile, sagitta_tol)?;
        let body = Self {
            profile,
            frame,
            e1,
            e2,
            kind,
            op,
            outline,
            sagitta_tol,
        };
        let (lo, hi) = body.extent();
        if !(hi - lo > 0.0) {
            return Err(Error::Argument(format!("{kind:?} extrusion has zero extent")));
        }
        Ok(body)
    }

    /// Height interval `[lo, hi]` along the normal: `[0, e1]` one-sided,
    /// `[-e1/2, e1/2]` symmetric, `[-e2, e1]` two-sided.
    pub fn extent(&self) -> (f64, f64) {
        match self.kind {
            ExtentKind::OneSided => (0.0, self.e1),
            ExtentKind::Symmetric => (-self.e1 / 2.0, self.e1 / 2.0),
            ExtentKind::TwoSided => (-self.e2, self.e1),
        }
    }

    pub fn outline(&self) -> &Outline {
        &self.outline
    }

    pub fn sagitta_tol(&self) -> f64 {
        self.sagitta_tol
    }

    pub fn contains(&self, p: &Vec3) -> bool {
        let (u, v, w) = self.frame.to_local(p);
        let (lo, hi) = self.extent();
        w >= lo && w <= hi && self.outline.contains(Vec2::new(u, v))
    }

    pub fn bounding_box(&self) -> Aabb {
        let (lo, hi) = self.extent();
        let (min, max) = (self.outline.min, self.outline.max);
        let mut bb = Aabb::empty();
        for u in [min.x, max.x] {
            for v in [min.y, max.y] {
                for w in [lo, hi] {
                    bb.grow(&self.frame.to_world(u, v, w));
                }
            }
        }
        bb
    }

    /// The same body under `p ↦ (p − center)·factor`.
    pub fn rescaled(&self, center: &Vec3, factor: f64) -> Self {
        Self {
            frame: self.frame.rescaled(center, factor),
            e1: self.e1 * factor,
            e2: self.e2 * factor,
            ..self.clone()
        }
    }

    /// The same body with its frame moved by a rigid transform.
    pub fn transformed(&self, iso: &nalgebra::Isometry3<f64>) -> Self {
        Self {
            frame: self.frame.transformed(iso),
            ..self.clone()
        }
    }
}

/// Occupancy of a single body.
pub fn body_occupancy(body: &ExtrusionBody, p: &Vec3) -> bool {
    body.contains(p)
}

/// Ordered bodies combined by their boolean operators. The first body always
/// acts as a new body.
#[derive(Clone, Debug)]
pub struct SolidModel {
    bodies: Vec<ExtrusionBody>,
    bounds: Vec<Aabb>,
}

impl SolidModel {
    pub fn new(mut bodies: Vec<ExtrusionBody>) -> Result<Self> {
        if bodies.is_empty() {
            return Err(Error::Argument("model has no bodies".into()));
        }
        bodies[0].op = BooleanOp::NewBody;
        let bounds = bodies.iter().map(ExtrusionBody::bounding_box).collect();
        Ok(Self { bodies, bounds })
    }

    pub fn bodies(&self) -> &[ExtrusionBody] {
        &self.bodies
    }

    /// Union of the body boxes, ignoring booleans.
    pub fn bounding_box(&self) -> Aabb {
        let mut bb = Aabb::empty();
        for b in &self.bounds {
            bb.merge(b);
        }
        bb
    }

    pub fn contains(&self, p: &Vec3) -> bool {
        let mut inside = false;
        for (body, bb) in self.bodies.iter().zip(&self.bounds) {
            let hit = || bb.contains(p) && body.contains(p);
            inside = match body.op {
                BooleanOp::NewBody | BooleanOp::Join => inside || hit(),
                BooleanOp::Cut => inside && !hit(),
                BooleanOp::Intersect => inside && hit(),
            };
        }
        inside
    }

    /// Translates the bounding-box center to the origin and scales its
    /// diagonal to 1.
    pub fn normalized(&self) -> Self {
        let bb = self.bounding_box();
        let diag = bb.diagonal();
        let factor = if diag > 0.0 { 1.0 / diag } else { 1.0 };
        let center = bb.center();
        Self::new(self.bodies.iter().map(|b| b.rescaled(&center, factor)).collect())
            .expect("non-empty")
    }

    pub fn transformed(&self, iso: &nalgebra::Isometry3<f64>) -> Self {
        Self::new(self.bodies.iter().map(|b| b.transformed(iso)).collect()).expect("non-empty")
    }
}

/// Occupancy of the composed model: bodies fold left, new-body and join as
/// union, cut as difference, intersect as intersection.
pub fn model_occupancy(model: &SolidModel, p: &Vec3) -> bool {
    model.contains(p)
}
