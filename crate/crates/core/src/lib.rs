//! Exact computation of width parameters for represented matroids and graphs
//! at small scale: path-width of connectivity functions, linear rank-width,
//! linked layouts, trajectory-based full sets, linking certificates, and
//! excluded-minor / excluded-pivot-minor search with revalidating
//! certificates.
//!
//! Everything is computed over small finite fields with exact arithmetic;
//! searches are exhaustive within explicit budgets and produce deterministic,
//! certificate-bearing answers.
//!
//! ```
//! use widthlab::{connfn, matroid::Configuration};
//!
//! // The four-point line has path-width 2, witnessed by a linked layout.
//! let m = Configuration::u24();
//! let lambda = m.lambda_fn()?;
//! let (width, _) = connfn::path_width(&lambda)?;
//! assert_eq!(width, 2);
//! let layout = connfn::find_linked_optimal(&lambda)?;
//! assert!(connfn::is_linked(&lambda, &layout)?);
//! # Ok::<(), widthlab::Error>(())
//! ```

pub mod connfn;
pub mod error;
pub mod ffla;
pub mod fullset;
pub mod graph;
pub mod linking;
pub mod matroid;
pub mod obstruct;
pub mod trajectory;

pub use error::{Error, Result};
