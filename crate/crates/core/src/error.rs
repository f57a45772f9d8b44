use thiserror::Error;

use crate::geom::Vertex;
use crate::regions::Region;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("degenerate triangle: |signed area| {area:e} is within the degeneracy threshold {threshold:e}")]
    DegenerateTriangle { area: f64, threshold: f64 },

    #[error("non-finite coordinate in input")]
    NonFinite,

    #[error("point coincides with vertex {0}")]
    VertexCoincidence(Vertex),

    #[error("point lies on the line through the two vertices; the bisector foot is undefined")]
    CollinearInput,

    #[error("point is not strictly inside the triangle (region {0})")]
    OutsideInterior(Region),

    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, GeomError>;
