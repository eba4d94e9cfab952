//! Loopless 0/1 digraphs, the DSRG matrix-equation verifier, and the
//! Kronecker-product compositions that build new DSRGs from old ones.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::params::{self, ParamTuple};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    adj: IntMatrix,
    labels: Option<Vec<String>>,
}

impl Digraph {
    pub fn from_matrix(adj: IntMatrix) -> Result<Self> {
        let n = adj.order();
        for i in 0..n {
            for j in 0..n {
                let v = adj.get(i, j);
                if v != 0 && v != 1 {
                    return Err(Error::InvalidMatrix(format!("entry ({i},{j}) = {v} is not 0/1")));
                }
                if i == j && v != 0 {
                    return Err(Error::InvalidMatrix(format!("loop at vertex {i}")));
                }
            }
        }
        Ok(Digraph { adj, labels: None })
    }

    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = IntMatrix::zeros(n);
        for (u, v) in arcs {
            if u >= n || v >= n {
                return Err(Error::InvalidMatrix(format!("arc ({u},{v}) out of range for {n} vertices")));
            }
            adj.set(u, v, 1);
        }
        Self::from_matrix(adj)
    }

    pub fn empty(n: usize) -> Self {
        Digraph { adj: IntMatrix::zeros(n), labels: None }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        debug_assert_eq!(labels.len(), self.order());
        self.labels = Some(labels);
        self
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn order(&self) -> usize {
        self.adj.order()
    }

    pub fn adjacency(&self) -> &IntMatrix {
        &self.adj
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.adj.get(u, v) == 1
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.order();
        (0..n).flat_map(move |u| (0..n).filter(move |&v| self.has_arc(u, v)).map(move |v| (u, v)))
    }

    pub fn arc_count(&self) -> usize {
        self.adj.entries().iter().filter(|&&x| x == 1).count()
    }

    pub fn out_neighbors(&self, u: usize) -> Vec<usize> {
        (0..self.order()).filter(|&v| self.has_arc(u, v)).collect()
    }

    pub fn in_neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.order()).filter(|&u| self.has_arc(u, v)).collect()
    }

    /// Paths `x → z → y`, by enumerating `z`.
    pub fn count_paths2(&self, x: usize, y: usize) -> usize {
        (0..self.order()).filter(|&z| self.has_arc(x, z) && self.has_arc(z, y)).count()
    }
}

/// Which defining condition of a DSRG failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DsrgCondition {
    /// row or column sums are not all equal
    Regularity,
    /// the diagonal of `A²` is not constant
    Diagonal,
    /// `A²` is not constant on arcs
    Lambda,
    /// `A²` is not constant on off-diagonal non-arcs
    Mu,
    /// a loop (identity in `HSH`) was produced
    Loop,
    /// a coefficient of `HSH²` is not a multiple of `|H|`
    NonDivisible,
}

impl fmt::Display for DsrgCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DsrgCondition::Regularity => "regularity",
            DsrgCondition::Diagonal => "t-class non-constant",
            DsrgCondition::Lambda => "lambda-class non-constant",
            DsrgCondition::Mu => "mu-class non-constant",
            DsrgCondition::Loop => "loop",
            DsrgCondition::NonDivisible => "coefficient not divisible by |H|",
        })
    }
}

/// Where a failed condition was observed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Position(usize, usize),
    Element { index: usize, name: String },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Position(i, j) => write!(f, "({i},{j})"),
            Witness::Element { name, .. } => write!(f, "{name}"),
        }
    }
}

/// Diagnosis for a graph (or group-ring element) that is not a DSRG: the
/// first violated condition, where, and the two values that disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotDsrg {
    pub condition: DsrgCondition,
    pub witness: Witness,
    pub expected: i64,
    pub found: i64,
}

impl fmt::Display for NotDsrg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at {} (expected {}, found {})",
            self.condition, self.witness, self.expected, self.found
        )
    }
}

impl std::error::Error for NotDsrg {}

/// Reads `t`, `λ`, `μ` off the three coefficient classes, requiring each
/// to be constant. Shared by the matrix and group-ring verifiers so both
/// apply the same conventions for empty classes.
pub(crate) struct ClassReader {
    t: Option<i64>,
    lambda: Option<i64>,
    mu: Option<i64>,
}

impl ClassReader {
    pub(crate) fn new() -> Self {
        ClassReader { t: None, lambda: None, mu: None }
    }

    fn observe(slot: &mut Option<i64>, v: i64, cond: DsrgCondition, w: impl FnOnce() -> Witness) -> std::result::Result<(), NotDsrg> {
        match *slot {
            None => {
                *slot = Some(v);
                Ok(())
            }
            Some(e) if e == v => Ok(()),
            Some(e) => Err(NotDsrg { condition: cond, witness: w(), expected: e, found: v }),
        }
    }

    pub(crate) fn diagonal(&mut self, v: i64, w: impl FnOnce() -> Witness) -> std::result::Result<(), NotDsrg> {
        Self::observe(&mut self.t, v, DsrgCondition::Diagonal, w)
    }

    pub(crate) fn arc(&mut self, v: i64, w: impl FnOnce() -> Witness) -> std::result::Result<(), NotDsrg> {
        Self::observe(&mut self.lambda, v, DsrgCondition::Lambda, w)
    }

    pub(crate) fn non_arc(&mut self, v: i64, w: impl FnOnce() -> Witness) -> std::result::Result<(), NotDsrg> {
        Self::observe(&mut self.mu, v, DsrgCondition::Mu, w)
    }

    /// An empty λ-class reads as 0; an empty μ-class (complete digraph)
    /// is unconstrained by `A²` and reads as `t`.
    pub(crate) fn finish(self, n: i64, k: i64) -> ParamTuple {
        let t = self.t.unwrap_or(0);
        ParamTuple::raw(n, k, self.mu.unwrap_or(t), self.lambda.unwrap_or(0), t)
    }
}

/// Checks `AJ = JA = kJ` and `A² = tI + λA + μ(J − I − A)` exactly.
///
/// Conditions are checked in a fixed order (regularity, diagonal, λ, μ) and
/// the first failure is reported with the offending position.
pub fn verify_dsrg(d: &Digraph) -> std::result::Result<ParamTuple, NotDsrg> {
    let n = d.order();
    let a = d.adjacency();
    let row_sum = |i: usize| a.row(i).iter().sum::<i64>();
    let col_sum = |j: usize| (0..n).map(|i| a.get(i, j)).sum::<i64>();
    let k = if n == 0 { 0 } else { row_sum(0) };
    for i in 0..n {
        for (s, w) in [(row_sum(i), Witness::Position(i, 0)), (col_sum(i), Witness::Position(0, i))] {
            if s != k {
                return Err(NotDsrg { condition: DsrgCondition::Regularity, witness: w, expected: k, found: s });
            }
        }
    }
    // entries are 0/1 and n is desk-scale, so the square cannot overflow
    let sq = a.square().expect("0/1 matrix square");
    let mut reader = ClassReader::new();
    for i in 0..n {
        reader.diagonal(sq.get(i, i), || Witness::Position(i, i))?;
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && a.get(i, j) == 1 {
                reader.arc(sq.get(i, j), || Witness::Position(i, j))?;
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && a.get(i, j) == 0 {
                reader.non_arc(sq.get(i, j), || Witness::Position(i, j))?;
            }
        }
    }
    Ok(reader.finish(n as i64, k))
}

/// The digraph of `J − I − A`.
pub fn complement_graph(d: &Digraph) -> Digraph {
    let n = d.order();
    let adj = IntMatrix::from_fn(n, |i, j| (i != j && !d.has_arc(i, j)) as i64);
    Digraph { adj, labels: d.labels.clone() }
}

fn require_dsrg(d: &Digraph) -> Result<ParamTuple> {
    verify_dsrg(d).map_err(|e| Error::PreconditionViolated(format!("input is not a DSRG: {e}")))
}

fn kron_labels(d: &Digraph, m: usize) -> Option<Vec<String>> {
    d.labels().map(|l| {
        l.iter()
            .flat_map(|name| (0..m).map(move |c| format!("{name}#{c}")))
            .collect()
    })
}

fn positive(m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::PreconditionViolated("multiplier m must be positive".into()));
    }
    Ok(())
}

/// `A ⊗ J_m`: every vertex blown up into `m` twins. Needs `t = μ`.
pub fn expand_t_mu(d: &Digraph, m: usize) -> Result<Digraph> {
    positive(m)?;
    let p = require_dsrg(d)?;
    if p.t != p.mu {
        return Err(Error::PreconditionViolated(format!("{p} needs t = mu")));
    }
    let adj = d.adjacency().kronecker(&IntMatrix::ones(m))?;
    let mut out = Digraph::from_matrix(adj)?;
    out.labels = if m == 1 { d.labels.clone() } else { kron_labels(d, m) };
    Ok(out)
}

/// `A ⊗ J_m + I_n ⊗ (J_m − I_m)`: every vertex blown up into a complete
/// digraph on `m` vertices. Needs `t = λ + 1`.
pub fn expand_t_lambda1(d: &Digraph, m: usize) -> Result<Digraph> {
    positive(m)?;
    let p = require_dsrg(d)?;
    if p.t != p.lambda + 1 {
        return Err(Error::PreconditionViolated(format!("{p} needs t = lambda + 1")));
    }
    let n = d.order();
    let blow = d.adjacency().kronecker(&IntMatrix::ones(m))?;
    let clique = IntMatrix::identity(n).kronecker(&IntMatrix::ones(m).sub(&IntMatrix::identity(m))?)?;
    let mut out = Digraph::from_matrix(blow.add(&clique)?)?;
    out.labels = if m == 1 { d.labels.clone() } else { kron_labels(d, m) };
    Ok(out)
}

/// `(J − A) ⊗ A + A ⊗ (J − A)` for a DSRG with `t = μ` and
/// `4k = n + 2λ + 2μ`; the result has [`params::product_params`] parameters.
pub fn balanced_product(d: &Digraph) -> Result<Digraph> {
    let p = require_dsrg(d)?;
    if !params::is_balanced(&p) {
        return Err(Error::PreconditionViolated(format!(
            "{p} needs t = mu and 4k = n + 2 lambda + 2 mu"
        )));
    }
    let a = d.adjacency();
    let co = IntMatrix::ones(a.order()).sub(a)?;
    let b = co.kronecker(a)?.add(&a.kronecker(&co)?)?;
    Digraph::from_matrix(b)
}
