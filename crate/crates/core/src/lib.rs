//! Exact isospectral reductions of weighted networks.
//!
//! Networks are square, labeled matrices over the field of rational functions
//! in `x` ([`netmat::RfMatrix`]). [`isored::reduce`] collapses a network onto
//! a subset of its nodes while keeping its spectrum, and
//! [`hierarchy::sequential_reduce`] repeats that under a node-selection rule
//! to peel a network into a core and ordered peripheral levels.
//!
//! ```
//! use isoreduce::{dgg, hierarchy, netmat};
//!
//! let data = dgg::incidence();
//! let m = netmat::bipartite_adjacency(&data);
//! let h = hierarchy::sequential_reduce(&m, &hierarchy::MinDegreeRule).unwrap();
//! assert_eq!(h.step_count, 7);
//! assert_eq!(h.core.len(), 9);
//! ```

pub mod cli;
pub mod dgg;
pub mod dynamics;
pub mod error;
pub mod exactnum;
pub mod hierarchy;
pub mod isored;
pub mod netmat;
pub mod reproduce;
pub mod spectra;

pub use error::{Error, Result};
pub use exactnum::{Polynomial, RatFun, Rational};
pub use netmat::{NodeSet, RfMatrix};
