//! Directed strongly regular graphs: parameter arithmetic, exact
//! verification, group-based constructions and spectral criteria.

pub mod cayley;
pub mod constructions;
pub mod digraph;
pub mod error;
pub mod groupring;
pub mod groups;
pub mod matrix;
pub mod params;
pub mod quotients;
pub mod spectral;

pub use cayley::{cayley_coset_graph, cayley_graph, CayleyGraph, CosetGraph};
pub use digraph::{verify_dsrg, Digraph, NotDsrg};
pub use error::{Error, Result};
pub use groups::{FiniteGroup, GroupSubset, SemidirectSpec};
pub use matrix::IntMatrix;
pub use params::ParamTuple;
