//! Endpoint-line binding, line-of-interest sampling and a synthetic
//! proposal generator.

mod oracle;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geomkern::Vec2;

pub use oracle::{oracle_proposals, OracleProposals, SHARP_CORNER_DEG};

/// Binding threshold in squared pixels.
pub const DEFAULT_EPSILON: f64 = 4.0;
pub const DEFAULT_T_SAMPLES: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LineProposal {
    pub x1: Vec2,
    pub x2: Vec2,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EndpointProposal {
    pub position: Vec2,
    pub score: f64,
}

/// A line proposal snapped to its nearest endpoint proposals.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundLine {
    pub x1: Vec2,
    pub x2: Vec2,
    pub y1: Vec2,
    pub y2: Vec2,
    pub delta1: f64,
    pub delta2: f64,
    pub delta: f64,
    /// Index of the source line proposal.
    pub source: usize,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Wireframe {
    pub lines: Vec<BoundLine>,
    pub endpoints: Vec<EndpointProposal>,
}

/// Index and squared distance of the nearest endpoint; lowest index on ties.
fn nearest(endpoints: &[EndpointProposal], p: Vec2) -> Option<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for (i, e) in endpoints.iter().enumerate() {
        let d = (e.position - p).norm_squared();
        if best.map_or(true, |(_, bd)| d < bd) {
            best = Some((i, d));
        }
    }
    best
}

/// Snaps both ends of every line to the nearest endpoint proposal and keeps
/// lines whose cost `δ = max(δ1, δ2)` is strictly below `epsilon`.
pub fn bind(lines: &[LineProposal], endpoints: &[EndpointProposal], epsilon: f64) -> Wireframe {
    let mut kept = Vec::new();
    for (source, l) in lines.iter().enumerate() {
        let (Some((i1, d1)), Some((i2, d2))) = (nearest(endpoints, l.x1), nearest(endpoints, l.x2)) else {
            continue;
        };
        let delta = d1.max(d2);
        if delta < epsilon {
            kept.push(BoundLine {
                x1: l.x1,
                x2: l.x2,
                y1: endpoints[i1].position,
                y2: endpoints[i2].position,
                delta1: d1,
                delta2: d2,
                delta,
                source,
            });
        }
    }
    Wireframe {
        lines: kept,
        endpoints: endpoints.to_vec(),
    }
}

/// The three sampling sets of a bound line.
#[derive(Clone, Debug, PartialEq)]
pub struct LoiPoints {
    /// The snapped endpoints `{y1, y2}`.
    pub endpoints: [Vec2; 2],
    /// Samples along `x1 → x2`.
    pub line: Vec<Vec2>,
    /// Samples along `y1 → y2`.
    pub snapped: Vec<Vec2>,
}

fn lerp(a: Vec2, b: Vec2, t: f64) -> Vec2 {
    a * (1.0 - t) + b * t
}

pub fn loi_points(line: &BoundLine, t_samples: &[f64]) -> Result<LoiPoints> {
    if t_samples.is_empty() {
        return Err(Error::Argument("no sampling parameters".into()));
    }
    if let Some(t) = t_samples.iter().find(|t| !(0.0..=1.0).contains(*t)) {
        return Err(Error::Range(format!("sampling parameter {t} outside [0, 1]")));
    }
    Ok(LoiPoints {
        endpoints: [line.y1, line.y2],
        line: t_samples.iter().map(|&t| lerp(line.x1, line.x2, t)).collect(),
        snapped: t_samples.iter().map(|&t| lerp(line.y1, line.y2, t)).collect(),
    })
}

/// `n` uniformly spaced parameters covering `[0, 1]`.
pub fn uniform_samples(n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![0.5],
        _ => (0..n).map(|i| i as f64 / (n - 1) as f64).collect(),
    }
}

fn point(v: &Value, len: usize) -> Result<Vec<f64>> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == len)
        .ok_or_else(|| Error::Schema(format!("expected an array of {len} numbers")))?;
    arr.iter()
        .map(|x| x.as_f64().ok_or_else(|| Error::Schema("expected a number".into())))
        .collect()
}

/// Proposal document: `{"lines": [[x1,y1,x2,y2], ...], "endpoints": [[x,y,score], ...]}`.
pub fn proposals_to_json(lines: &[LineProposal], endpoints: &[EndpointProposal]) -> Value {
    json!({
        "lines": lines.iter().map(|l| [l.x1.x, l.x1.y, l.x2.x, l.x2.y]).collect::<Vec<_>>(),
        "endpoints": endpoints_json(endpoints),
    })
}

fn endpoints_json(endpoints: &[EndpointProposal]) -> Vec<[f64; 3]> {
    endpoints.iter().map(|e| [e.position.x, e.position.y, e.score]).collect()
}

pub fn proposals_from_json(v: &Value) -> Result<(Vec<LineProposal>, Vec<EndpointProposal>)> {
    let field = |k: &str| {
        v.get(k)
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Schema(format!("missing array \"{k}\"")))
    };
    let lines = field("lines")?
        .iter()
        .map(|l| {
            // Bound-line rows carry the snapped endpoints after the first four values.
            let arr = l.as_array().ok_or_else(|| Error::Schema("line is not an array".into()))?;
            let p = point(&Value::Array(arr.iter().take(4).cloned().collect()), 4)?;
            Ok(LineProposal {
                x1: Vec2::new(p[0], p[1]),
                x2: Vec2::new(p[2], p[3]),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let endpoints = field("endpoints")?
        .iter()
        .map(|e| {
            let p = point(e, 3)?;
            Ok(EndpointProposal {
                position: Vec2::new(p[0], p[1]),
                score: p[2],
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((lines, endpoints))
}

impl Wireframe {
    /// `{"lines": [[x1,y1,x2,y2,y1x,y1y,y2x,y2y], ...], "endpoints": [[x,y,score], ...]}`.
    pub fn to_json(&self) -> Value {
        json!({
            "lines": self
                .lines
                .iter()
                .map(|l| [l.x1.x, l.x1.y, l.x2.x, l.x2.y, l.y1.x, l.y1.y, l.y2.x, l.y2.y])
                .collect::<Vec<_>>(),
            "endpoints": endpoints_json(&self.endpoints),
        })
    }
}
