//! Exact branching coefficients of integrable highest-weight modules.
//!
//! The library restricts a highest-weight module of a classical (finite or
//! untwisted affine) Lie algebra `g` to a reductive subalgebra `a` and computes
//! the multiplicities of the `a`-modules that appear. The main path works
//! entirely in the weight lattice of `a`: the character is reduced by the
//! orthogonal partner of `a`, and a recurrence driven by a finite set of
//! vectors (the injection fan) peels off the anomalous multiplicities.
//!
//! ```
//! use fanbranch::{branch, EmbeddingSpec, Weight};
//!
//! let spec = EmbeddingSpec::regular("B2", "A1", &[1, 2]).unwrap();
//! let engine = fanbranch::Brancher::new(&spec, None).unwrap();
//! let mu = engine.g().from_labels(&[1, 0], 0, 0);
//! let table = engine.branch(&mu).unwrap();
//! assert_eq!(table.coefficient(&[1], 0), 2.into());
//! assert_eq!(table.coefficient(&[0], 0), 1.into());
//! # let _ = (branch, Weight::zero(1));
//! ```

pub mod branch;
pub mod cft;
pub mod embed;
mod error;
pub mod fan;
pub mod formal;
pub mod lattice;
pub mod linalg;
pub mod oracle;
pub mod rootdata;
pub mod singular;

pub use branch::{branch, solve_recurrence, AnomalousTable, Brancher, BranchingFunction, BranchingTable};
pub use embed::{EmbeddingKind, EmbeddingSpec, OrthogonalPair, ResolvedEmbedding};
pub use error::{Error, Result};
pub use fan::{expand_fan_product, extract_fan, Fan};
pub use formal::FormalElement;
pub use lattice::{LabelPoint, WeightOrder};
pub use rootdata::{AlgebraSpec, RootSystem, Series, Weight};
pub use singular::{select_u, CosetPoint, SingularElement};

pub type Rational = num_rational::BigRational;
