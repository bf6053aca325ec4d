//! Exact combinatorics and integration for easy quantum groups `G_n` between
//! `S_n` and `O_n⁺`, and for their homogeneous spaces `G_n/G_k`.
//!
//! * [`partitions`]: set partitions, the ten partition categories, joins,
//!   `δ_π`, and block-removal stability.
//! * [`weingarten`]: Gram and Weingarten matrices, Haar moments, character
//!   moments, all in exact rational arithmetic.
//! * [`homspace`]: invariant states on row algebras, transposed-isometry
//!   classes, quotient counts, and the two-projection witness.
//! * [`group_dual`]: finite group duals and the normal-closure criterion.
//! * [`oracle`]: exact finite-group averages and seeded Monte Carlo.
//! * [`cli`]: the `eqg` command line.
//!
//! ```
//! use eqg::partitions::PartitionCategory;
//! use eqg::weingarten::{haar_moment, MomentWord};
//!
//! let word = MomentWord::parse("1,1 2,2", 4).unwrap();
//! let h = haar_moment(PartitionCategory::S, 4, &word).unwrap();
//! assert_eq!(h.to_string(), "1/12");
//! ```

pub mod cli;
pub mod error;
pub mod group_dual;
pub mod homspace;
pub mod linalg;
pub mod oracle;
pub mod partitions;
pub mod weingarten;

pub use error::{Error, Result};
pub use linalg::RationalMatrix;
pub use partitions::{PartitionCategory, SetPartition};
pub use weingarten::MomentWord;
