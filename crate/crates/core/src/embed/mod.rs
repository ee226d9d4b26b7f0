//! Subalgebra embeddings: specification, resolution and the orthogonal partner.

mod orthogonal;
mod resolve;
mod spec;

pub use orthogonal::OrthogonalPair;
pub use resolve::ResolvedEmbedding;
pub use spec::{EmbeddingKind, EmbeddingSpec};
