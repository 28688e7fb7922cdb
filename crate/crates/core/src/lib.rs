//! Lower bounds on the rate at which a sink can compute a function of source
//! symbols over an acyclic network without error, and a simulator for
//! concrete k-shot codes.
//!
//! A [`netmodel::NetworkModel`] describes a DAG with sources, a sink, a target
//! function and a source distribution. Cut sets and strong partitions yield
//! characteristic graphs ([`chargraph`]) whose clique entropy ([`entropy`])
//! bounds the rate of any uniquely-decodable code ([`bounds`]). Codes are
//! executed and rated in [`codesim`].

pub mod bounds;
pub mod chargraph;
pub mod codesim;
pub mod entropy;
pub mod equiv;
pub mod error;
pub mod fixtures;
pub mod netmodel;
pub mod pgraph;
pub mod random;
pub mod space;

pub use error::{Error, Result};
pub use netmodel::NetworkModel;
pub use pgraph::ProbGraph;
