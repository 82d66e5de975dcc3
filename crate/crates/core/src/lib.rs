//! Toolkit for sketch-and-extrude CAD command sequences.
//!
//! - [`seqmodel`]: command grammar, JSON and token forms, logit decoding, validation.
//! - [`geomkern`]: executes sequences into occupancy-based solids; sampling and meshing.
//! - [`wireframe`]: line/junction binding and line-of-interest sampling.
//! - [`imaging`]: cameras, software rendering, edge extraction.
//! - [`metrics`]: command/parameter accuracy, invalid ratio, Chamfer distance, loss.
//! - [`pipeline`]: sequence generation, dedup, dataset building and batch evaluation.

pub mod error;
pub mod geomkern;
pub mod imaging;
pub mod metrics;
pub mod pipeline;
pub mod seqmodel;
pub mod wireframe;

pub use error::{Error, Result};
pub use geomkern::{Frame, PointCloud, SolidModel, TriangleMesh};
pub use imaging::{Camera, EdgeMap, GrayImage};
pub use metrics::MetricReport;
pub use pipeline::{Config, DatasetManifest};
pub use seqmodel::{
    CadSequence, Command, CommandType, Logits, ParamSlot, TokenMatrix, ValidationReport, N_MAX,
};
pub use wireframe::{BoundLine, EndpointProposal, LineProposal, Wireframe};

#[cfg(test)]
pub(crate) mod testutil;
