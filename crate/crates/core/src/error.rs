use thiserror::Error;

use crate::digraph::NotDsrg;
use crate::params::ParamTuple;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter tuple: {0}")]
    InvalidTuple(String),
    #[error("infeasible parameters {0}: {1}")]
    Infeasible(ParamTuple, String),
    #[error("complement of {0} has a negative field")]
    OutOfRange(ParamTuple),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("{s} is not coprime to {n}")]
    NotCoprime { s: u64, n: u64 },
    #[error("map is not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("subset is not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("group ring elements belong to different groups")]
    GroupMismatch,
    #[error("connection set contains the identity")]
    IdentityInS,
    #[error("HSH contains the identity, coset graph would have loops")]
    LoopProduced,
    #[error("coset graph is not well defined: {0}")]
    NotWellDefined(String),
    #[error("bad construction parameters: {0}")]
    BadParams(String),
    #[error("no base construction available for n = {0}")]
    MissingBase(u64),
    #[error("construction produced {found:?}, expected {expected}")]
    ConstructionMismatch {
        expected: ParamTuple,
        found: std::result::Result<ParamTuple, NotDsrg>,
    },
    #[error("q-orbit condition fails for q = {0}")]
    QOrbitViolated(u64),
    #[error("S_{0} is not an integer")]
    NonIntegerSpectrum(usize),
    #[error("bound violated: {0}")]
    BoundViolated(String),
    #[error("stabilizer fact violated: {0}")]
    FactViolated(String),
    #[error("not divisible: {0}")]
    NonDivisible(String),
    #[error("quotient arcs are not uniform between cosets {0} and {1}")]
    NonUniformArcs(usize, usize),
    #[error("digraph on {0} vertices exceeds the brute-force cap")]
    TooLarge(usize),
    #[error("not a DSRG: {0}")]
    NotDsrg(NotDsrg),
}

pub type Result<T> = std::result::Result<T, Error>;
