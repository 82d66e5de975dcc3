use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("grammar error at command {index}: {message}")]
    Grammar { index: usize, message: String },
    #[error("range error: {0}")]
    Range(String),
    #[error("code error: {0}")]
    Code(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("non-finite value in {0}")]
    NaN(&'static str),
    #[error("sequence of {len} commands exceeds the {max}-row token matrix")]
    Length { len: usize, max: usize },
    #[error("sketch scale must be positive, got {0}")]
    Scale(f64),
    #[error("degenerate arc: {0}")]
    DegenerateArc(String),
    #[error("surface sampling kept no points after {0} candidates")]
    EmptySurface(usize),
    #[error("tessellation failed: {0}")]
    Tessellation(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("batch is empty")]
    EmptyBatch,
    #[error("point cloud is empty")]
    EmptyCloud,
    #[error("unpaired files: {0:?}")]
    Pairing(Vec<String>),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("image codec: {0}")]
    Image(#[from] image::ImageError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
