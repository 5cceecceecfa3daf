//! Service-rate analysis of binary linear codes used for distributed storage.
//!
//! Each of the `k` message symbols (objects) is stored across `n` servers
//! through a generator matrix. The crate computes recovery sets, the exact
//! maximum demand per object with LP certificates, orthogonal-check bounds,
//! design-based allocations, and one-step majority-logic decoding.
//!
//! Indices are 0-based in the API and 1-based in rendered output.
//!
//! ```
//! use srrlab::codes::hamming;
//! use srrlab::limits::Limits;
//! use srrlab::srr::max_demand;
//!
//! let code = hamming(3)?;
//! let sol = max_demand(&code, 0, &Limits::default())?;
//! assert_eq!(sol.value.to_string(), "3");
//! # Ok::<(), srrlab::error::Error>(())
//! ```

pub mod checks;
pub mod codes;
pub mod designs;
pub mod error;
pub mod gf2;
pub mod limits;
pub mod lp;
pub mod mld;
pub mod rational;
pub mod recovery;
pub mod report;
pub mod srr;
