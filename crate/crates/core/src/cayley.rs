//! Cayley graphs `C(G, S)` and Cayley coset graphs on `G/H`.

use rayon::prelude::*;

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::groupring::double_coset_set;
use crate::groups::{left_cosets, Coset, FiniteGroup, GroupSubset};
use crate::matrix::IntMatrix;

/// `x → y` iff `x⁻¹y ∈ S`; vertex `i` is group element `i`.
#[derive(Debug, Clone)]
pub struct CayleyGraph {
    group: FiniteGroup,
    connection: GroupSubset,
    digraph: Digraph,
}

impl CayleyGraph {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn connection(&self) -> &GroupSubset {
        &self.connection
    }

    pub fn digraph(&self) -> &Digraph {
        &self.digraph
    }

    pub fn into_digraph(self) -> Digraph {
        self.digraph
    }
}

pub fn cayley_graph(g: &FiniteGroup, s: &GroupSubset) -> Result<CayleyGraph> {
    if s.group_order() != g.order() {
        return Err(Error::GroupMismatch);
    }
    if s.contains(g.identity()) {
        return Err(Error::IdentityInS);
    }
    let n = g.order();
    let rows: Vec<Vec<i64>> = (0..n)
        .into_par_iter()
        .map(|x| {
            let mut row = vec![0i64; n];
            for y in s.iter() {
                row[g.mul(x, y)] = 1;
            }
            row
        })
        .collect();
    let digraph = Digraph::from_matrix(IntMatrix::from_rows(rows)?)?.with_labels(g.names().to_vec());
    Ok(CayleyGraph { group: g.clone(), connection: s.clone(), digraph })
}

/// Digraph on the left cosets of `H` with `xH → yH` iff `x⁻¹y ∈ HSH`.
/// The adjacency may carry loops when `e ∈ HSH`.
#[derive(Debug, Clone)]
pub struct CosetGraph {
    group: FiniteGroup,
    subgroup: GroupSubset,
    connection: GroupSubset,
    double_coset: GroupSubset,
    cosets: Vec<Coset>,
    adjacency: IntMatrix,
}

impl CosetGraph {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn subgroup(&self) -> &GroupSubset {
        &self.subgroup
    }

    pub fn connection(&self) -> &GroupSubset {
        &self.connection
    }

    /// `HSH`
    pub fn double_coset(&self) -> &GroupSubset {
        &self.double_coset
    }

    pub fn cosets(&self) -> &[Coset] {
        &self.cosets
    }

    /// Adjacency including any loops.
    pub fn adjacency(&self) -> &IntMatrix {
        &self.adjacency
    }

    pub fn has_loops(&self) -> bool {
        (0..self.cosets.len()).any(|i| self.adjacency.get(i, i) != 0)
    }

    pub fn labels(&self) -> Vec<String> {
        self.cosets.iter().map(|c| format!("{}H", self.group.name(c.rep))).collect()
    }

    /// The loopless digraph, labelled by coset representatives.
    pub fn digraph(&self) -> Result<Digraph> {
        if self.has_loops() {
            return Err(Error::LoopProduced);
        }
        Ok(Digraph::from_matrix(self.adjacency.clone())?.with_labels(self.labels()))
    }
}

/// Builds the coset graph, checking that arcs do not depend on the choice
/// of coset representatives. Loops (from `e ∈ HSH`) are rejected unless
/// `allow_loops` is set.
pub fn cayley_coset_graph(g: &FiniteGroup, h: &GroupSubset, s: &GroupSubset, allow_loops: bool) -> Result<CosetGraph> {
    let cosets = left_cosets(g, h)?;
    let hsh = double_coset_set(g, h, s);
    if hsh.contains(g.identity()) && !allow_loops {
        return Err(Error::LoopProduced);
    }
    let c = cosets.len();
    let rows: Vec<Vec<i64>> = cosets
        .par_iter()
        .map(|from| {
            cosets
                .iter()
                .map(|to| {
                    let arc = hsh.contains(g.mul(g.inv(from.rep), to.rep));
                    let consistent = from
                        .members
                        .iter()
                        .all(|&x| to.members.iter().all(|&y| hsh.contains(g.mul(g.inv(x), y)) == arc));
                    if consistent {
                        Ok(arc as i64)
                    } else {
                        Err(Error::NotWellDefined(format!(
                            "arc between {} and {} depends on representatives",
                            g.name(from.rep),
                            g.name(to.rep)
                        )))
                    }
                })
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<_>>()?;
    debug_assert_eq!(rows.len(), c);
    Ok(CosetGraph {
        group: g.clone(),
        subgroup: h.clone(),
        connection: s.clone(),
        double_coset: hsh,
        cosets,
        adjacency: IntMatrix::from_rows(rows)?,
    })
}
