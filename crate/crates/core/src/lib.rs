//! Solvers for the product knapsack problem: choose items of total weight at
//! most `C` maximizing the product of their (possibly negative) integer
//! profits.
//!
//! * [`exact`]: dynamic programming over weights and brute-force enumeration.
//! * [`fptas`]: `(1−ε)`-approximation via scaled logarithmic profits.
//! * [`greedy`]: the Product Greedy heuristic and its worst-case bounds.
//! * [`reduction`]: the Product Partition reduction used for hardness.
//!
//! All objective values are exact ([`BigProduct`]) and every logarithm is
//! resolved with integer arithmetic ([`numerics`]).
//!
//! ```
//! use pkp_core::{enforce_assumptions, exact, Instance};
//!
//! let raw = Instance::from_pairs(&[(2, 1), (3, 1), (-4, 1), (-5, 1)], 3).unwrap();
//! let pre = enforce_assumptions(&raw).unwrap();
//! let best = exact::solve_exact_dp(&pre.instance).unwrap();
//! assert_eq!(best.value.to_string(), "60");
//! ```

pub mod bench;
pub mod error;
pub mod exact;
pub mod fptas;
pub mod generate;
pub mod greedy;
pub mod instance;
pub mod io;
pub mod numerics;
pub mod product;
pub mod reduction;
pub mod report;

pub use error::{PkpError, Result};
pub use instance::{enforce_assumptions, Instance, Item, Preprocessed, Solution};
pub use numerics::Rational;
pub use product::BigProduct;
