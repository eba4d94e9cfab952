//! Neighbour partitions, set stabilizers of Cayley connection sets, quotient
//! digraphs on stabilizer cosets, and automorphism-count bounds.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::cayley::CayleyGraph;
use crate::digraph::{verify_dsrg, Digraph};
use crate::error::{Error, Result};
use crate::groups::{left_cosets, set_stabilizer, Coset, GroupSubset};
use crate::params::ParamTuple;

/// Vertices of at most this many vertices are accepted by [`brute_force_aut`].
pub const BRUTE_FORCE_CAP: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Out,
    In,
}

/// Classes of vertices with identical out- (or in-) neighbour sets,
/// ordered by least vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborPartition {
    pub direction: Direction,
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
}

impl NeighborPartition {
    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

fn partition(d: &Digraph, direction: Direction) -> NeighborPartition {
    let n = d.order();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of = vec![0; n];
    for (v, slot) in class_of.iter_mut().enumerate() {
        let key = match direction {
            Direction::Out => d.out_neighbors(v),
            Direction::In => d.in_neighbors(v),
        };
        let c = *index.entry(key).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[c].push(v);
        *slot = c;
    }
    NeighborPartition { direction, classes, class_of }
}

pub fn pout_partition(d: &Digraph) -> NeighborPartition {
    partition(d, Direction::Out)
}

pub fn pin_partition(d: &Digraph) -> NeighborPartition {
    partition(d, Direction::In)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub tuple: ParamTuple,
    /// `min{k − λ, n − 2k + t}`
    pub class_bound: i64,
    pub largest_class: usize,
    /// `max{k, n − 2k + 2β}` with `β = min{k − λ, μ, n − 2k + t}`; only
    /// when `λ > 0` and there are at least two classes.
    pub pair_bound: Option<i64>,
    pub largest_pair: Option<usize>,
}

impl BoundReport {
    pub fn class_margin(&self) -> i64 {
        self.class_bound - self.largest_class as i64
    }

    pub fn pair_margin(&self) -> Option<i64> {
        Some(self.pair_bound? - self.largest_pair? as i64)
    }
}

fn require_dsrg(d: &Digraph) -> Result<ParamTuple> {
    verify_dsrg(d).map_err(|e| Error::PreconditionViolated(format!("not a DSRG: {e}")))
}

/// Checks the class-size bound on every class and, when `λ > 0`, the
/// pairwise bound on every pair of distinct classes.
pub fn bounds_check(d: &Digraph, p: &NeighborPartition) -> Result<BoundReport> {
    let tuple = require_dsrg(d)?;
    let ParamTuple { n, k, mu, lambda, t } = tuple;
    if k == 0 {
        return Err(Error::PreconditionViolated("bounds need k > 0".into()));
    }
    let class_bound = (k - lambda).min(n - 2 * k + t);
    let mut sizes = p.sizes();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    let largest_class = sizes.first().copied().unwrap_or(0);
    if largest_class as i64 > class_bound {
        return Err(Error::BoundViolated(format!(
            "{tuple}: class of size {largest_class} exceeds min{{k-lambda, n-2k+t}} = {class_bound}"
        )));
    }
    let (pair_bound, largest_pair) = if lambda > 0 && sizes.len() >= 2 {
        let beta = (k - lambda).min(mu).min(n - 2 * k + t);
        let bound = k.max(n - 2 * k + 2 * beta);
        let pair = sizes[0] + sizes[1];
        if pair as i64 > bound {
            return Err(Error::BoundViolated(format!(
                "{tuple}: two classes of total size {pair} exceed max{{k, n-2k+2beta}} = {bound}"
            )));
        }
        (Some(bound), Some(pair))
    } else {
        (None, None)
    };
    Ok(BoundReport { tuple, class_bound, largest_class, pair_bound, largest_pair })
}

/// `G_S` for [`Direction::Out`], `G_{S⁻¹}` for [`Direction::In`].
pub fn stabilizer(c: &CayleyGraph, direction: Direction) -> GroupSubset {
    let g = c.group();
    match direction {
        Direction::Out => set_stabilizer(g, c.connection()),
        Direction::In => set_stabilizer(g, &c.connection().inverse(g)),
    }
}

#[derive(Debug, Clone)]
pub struct Quotient {
    pub direction: Direction,
    pub stabilizer: GroupSubset,
    pub cosets: Vec<Coset>,
    pub digraph: Digraph,
    pub tuple: ParamTuple,
}

/// Digraph on the left cosets of the stabilizer, with an arc between two
/// cosets when the Cayley graph has an arc between them. Arcs between
/// cosets must be all-or-nothing; the result must verify as the original
/// tuple divided by the stabilizer order.
pub fn quotient_graph(c: &CayleyGraph, direction: Direction) -> Result<Quotient> {
    let tuple = require_dsrg(c.digraph())?;
    let g = c.group();
    let stab = stabilizer(c, direction);
    let size = stab.len() as i64;
    let divided = tuple
        .divide(size)
        .ok_or_else(|| Error::NonDivisible(format!("{tuple} is not divisible by |stabilizer| = {size}")))?;
    let cosets = left_cosets(g, &stab)?;
    let d = c.digraph();
    if let Some((i, j)) = nonuniform_cosets(d, &cosets) {
        return Err(Error::NonUniformArcs(i, j));
    }
    let m = cosets.len();
    let arcs = (0..m)
        .flat_map(|i| (0..m).map(move |j| (i, j)))
        .filter(|&(i, j)| d.has_arc(cosets[i].members[0], cosets[j].members[0]));
    let labels = cosets.iter().map(|cs| format!("{}G_S", g.name(cs.rep))).collect();
    let digraph = Digraph::from_arcs(m, arcs)?.with_labels(labels);
    let found = verify_dsrg(&digraph)
        .map_err(|e| Error::FactViolated(format!("quotient of {tuple} is not a DSRG: {e}")))?;
    if found != divided {
        return Err(Error::FactViolated(format!("quotient of {tuple} verifies as {found}, expected {divided}")));
    }
    Ok(Quotient { direction, stabilizer: stab, cosets, digraph, tuple: found })
}

/// First pair of cosets whose connecting arcs are neither all present nor
/// all absent.
pub fn nonuniform_cosets(d: &Digraph, cosets: &[Coset]) -> Option<(usize, usize)> {
    for (i, x) in cosets.iter().enumerate() {
        for (j, y) in cosets.iter().enumerate() {
            let count: usize = x.members.iter().map(|&u| y.members.iter().filter(|&&v| d.has_arc(u, v)).count()).sum();
            if count != 0 && count != x.members.len() * y.members.len() {
                return Some((i, j));
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerSide {
    pub direction: Direction,
    pub stabilizer: GroupSubset,
    /// Arcs between any two stabilizer cosets are all-or-nothing, i.e. the
    /// graph is a blow-up `A_q ⊗ J_{|G_S|}` of its quotient.
    pub uniform: bool,
    pub divides_gcd: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerReport {
    pub tuple: ParamTuple,
    pub gcd: i64,
    pub out_side: StabilizerSide,
    pub in_side: StabilizerSide,
}

fn same_classes(classes: &[Vec<usize>], cosets: &[Coset]) -> bool {
    let a: BTreeSet<Vec<usize>> = classes.iter().cloned().collect();
    let b: BTreeSet<Vec<usize>> = cosets.iter().map(|c| c.members.clone()).collect();
    a == b
}

/// Checks, for both `G_S` and `G_{S⁻¹}`:
/// - the neighbour classes are exactly its left cosets;
/// - its order is at most `min{k − λ, n − 2k + t}`;
/// - it is trivial when `t ≠ μ`;
/// - when arcs between its cosets are uniform, its order divides
///   `gcd(n, k, μ, λ, t)` (so it is trivial when the gcd is 1).
///
/// Without uniformity the divisibility can fail (e.g. `C(S_3, {a, ax})`
/// has a stabilizer of order 2 and parameters `(6,2,1,0,1)`); it is then
/// only reported.
pub fn stabilizer_facts(c: &CayleyGraph) -> Result<StabilizerReport> {
    let tuple = require_dsrg(c.digraph())?;
    let ParamTuple { n, k, mu, lambda, t } = tuple;
    let g = c.group();
    let all_gcd = tuple.gcd();
    let fail = |msg: String| Err(Error::FactViolated(format!("{tuple}: {msg}")));
    let mut sides = Vec::new();
    for direction in [Direction::Out, Direction::In] {
        let stab = stabilizer(c, direction);
        let size = stab.len() as i64;
        let cosets = left_cosets(g, &stab)?;
        let part = partition(c.digraph(), direction);
        if !same_classes(&part.classes, &cosets) {
            return fail(format!("{direction:?}-neighbour classes differ from stabilizer cosets"));
        }
        let bound = (k - lambda).min(n - 2 * k + t);
        if size > bound {
            return fail(format!("|stabilizer| = {size} exceeds {bound}"));
        }
        if t != mu && size != 1 {
            return fail(format!("t != mu but the stabilizer has order {size}"));
        }
        let uniform = nonuniform_cosets(c.digraph(), &cosets).is_none();
        let divides_gcd = all_gcd % size == 0;
        if uniform && !divides_gcd {
            return fail(format!("uniform stabilizer of order {size} does not divide gcd {all_gcd}"));
        }
        sides.push(StabilizerSide { direction, stabilizer: stab, uniform, divides_gcd });
    }
    let in_side = sides.pop().expect("two directions");
    let out_side = sides.pop().expect("two directions");
    Ok(StabilizerReport { tuple, gcd: all_gcd, out_side, in_side })
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, i| acc * BigUint::from(i))
}

/// `min{(n/|G_S|)!·|G_S|!, (n/|G_{S⁻¹}|)!·|G_{S⁻¹}|!}`.
pub fn aut_bound(c: &CayleyGraph) -> Result<BigUint> {
    require_dsrg(c.digraph())?;
    let n = c.group().order();
    let term = |direction| {
        let s = stabilizer(c, direction).len();
        factorial(n / s) * factorial(s)
    };
    Ok(term(Direction::Out).min(term(Direction::In)))
}

/// `min{(n/s)!·(s!)^{n/s}}` over `s = |G_S|, |G_{S⁻¹}|`: every automorphism
/// permutes the neighbour classes, which are the stabilizer cosets, so
/// `Aut` embeds in the wreath product `S_s ≀ S_{n/s}`. Unlike
/// [`aut_bound`] this always holds; the two agree when both stabilizers
/// are trivial.
pub fn aut_block_bound(c: &CayleyGraph) -> Result<BigUint> {
    require_dsrg(c.digraph())?;
    let n = c.group().order();
    let term = |direction| {
        let s = stabilizer(c, direction).len();
        factorial(n / s) * factorial(s).pow((n / s) as u32)
    };
    Ok(term(Direction::Out).min(term(Direction::In)))
}

/// `|Aut(D)|` by backtracking over vertex images, pruning on degrees and
/// on adjacency to already-placed vertices.
pub fn brute_force_aut(d: &Digraph) -> Result<u64> {
    let n = d.order();
    if n > BRUTE_FORCE_CAP {
        return Err(Error::TooLarge(n));
    }
    if n == 0 {
        return Ok(1);
    }
    let degrees: Vec<(usize, usize)> = (0..n).map(|v| (d.out_neighbors(v).len(), d.in_neighbors(v).len())).collect();
    let count = (0..n)
        .into_par_iter()
        .filter(|&img| degrees[img] == degrees[0])
        .map(|img| {
            let mut map = vec![usize::MAX; n];
            let mut used = vec![false; n];
            map[0] = img;
            used[img] = true;
            extend(d, &degrees, &mut map, &mut used, 1)
        })
        .sum();
    Ok(count)
}

fn extend(d: &Digraph, degrees: &[(usize, usize)], map: &mut [usize], used: &mut [bool], v: usize) -> u64 {
    let n = map.len();
    if v == n {
        return 1;
    }
    let mut total = 0;
    for img in 0..n {
        if used[img] || degrees[img] != degrees[v] {
            continue;
        }
        let consistent = (0..v).all(|u| {
            d.has_arc(u, v) == d.has_arc(map[u], img) && d.has_arc(v, u) == d.has_arc(img, map[u])
        });
        if !consistent {
            continue;
        }
        map[v] = img;
        used[img] = true;
        total += extend(d, degrees, map, used, v + 1);
        used[img] = false;
    }
    map[v] = usize::MAX;
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::cayley_graph;
    use crate::constructions::{cyclic_semidirect_family, cyclic_semidirect_with_identity, dihedral_family};
    use crate::digraph::expand_t_mu;
    use crate::groups::{cyclic, direct_product};

    fn base() -> CayleyGraph {
        cyclic_semidirect_family(3, 2, &[1]).unwrap().cayley.unwrap()
    }

    /// (12,5,2,2,3) with trivial stabilizers
    fn trivial_base() -> CayleyGraph {
        dihedral_family(6).unwrap().cayley.unwrap()
    }

    #[test]
    fn partitions() {
        let c = base();
        // S = a<x> is a coset, so out-neighbour sets come in twins
        assert_eq!(pout_partition(c.digraph()).sizes(), vec![2; 3]);
        assert_eq!(pout_partition(trivial_base().digraph()).classes.len(), 12);
        let e = expand_t_mu(c.digraph(), 2).unwrap();
        let p = pout_partition(&e);
        assert_eq!(p.sizes(), vec![4; 3]);
        assert_eq!(pin_partition(&Digraph::empty(4)).classes, vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn bounds() {
        let e = expand_t_mu(base().digraph(), 2).unwrap();
        let r = bounds_check(&e, &pout_partition(&e)).unwrap();
        assert_eq!((r.class_bound, r.largest_class, r.pair_bound), (4, 4, None));
        let d = dihedral_family(4).unwrap().graph;
        let r = bounds_check(&d, &pout_partition(&d)).unwrap();
        assert_eq!((r.pair_bound, r.largest_pair), (Some(4), Some(2)));
    }

    #[test]
    fn stabilizers_and_quotients() {
        let c = base();
        let facts = stabilizer_facts(&c).unwrap();
        assert_eq!(facts.out_side.stabilizer.len(), 2);
        assert!(!facts.out_side.uniform && !facts.out_side.divides_gcd);
        assert!(matches!(quotient_graph(&c, Direction::Out), Err(Error::NonDivisible(_))));
        assert_eq!(aut_bound(&c).unwrap(), BigUint::from(12u32));

        let c = trivial_base();
        let facts = stabilizer_facts(&c).unwrap();
        assert_eq!(facts.out_side.stabilizer.len(), 1);
        let q = quotient_graph(&c, Direction::Out).unwrap();
        assert_eq!(q.tuple, ParamTuple::raw(12, 5, 2, 2, 3));

        // G × C_2 with S × C_2 doubles every parameter of a t = mu base
        let f = cyclic_semidirect_with_identity(3, 2, &[1]).unwrap().cayley.unwrap();
        let g = direct_product(f.group(), &cyclic(2));
        let s = GroupSubset::from_elems(g.order(), f.connection().iter().flat_map(|x| [x, x + 6]));
        let big = cayley_graph(&g, &s).unwrap();
        let facts = stabilizer_facts(&big).unwrap();
        assert_eq!(facts.out_side.stabilizer.len(), 2);
        assert!(facts.out_side.uniform && facts.out_side.divides_gcd);
        assert_eq!(pout_partition(big.digraph()).sizes(), vec![2; 6]);
        for dir in [Direction::Out, Direction::In] {
            assert_eq!(quotient_graph(&big, dir).unwrap().tuple, ParamTuple::raw(6, 3, 2, 1, 2));
        }
        assert_eq!(aut_bound(&big).unwrap(), BigUint::from(1440u32));
    }

    #[test]
    fn automorphism_counts() {
        let c3 = Digraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(brute_force_aut(&c3).unwrap(), 3);
        assert_eq!(brute_force_aut(&Digraph::empty(4)).unwrap(), 24);
        let count = brute_force_aut(base().digraph()).unwrap();
        assert!((6..=720).contains(&count));
        assert!(matches!(brute_force_aut(&Digraph::empty(11)), Err(Error::TooLarge(11))));
    }

    #[test]
    fn octahedron_exceeds_cited_aut_bound() {
        // K_{2,2,2} as C(S_3, S_3 \ <x>): stabilizer <x> of order 2
        let c = cyclic_semidirect_family(3, 2, &[1, 2]).unwrap().cayley.unwrap();
        assert_eq!(brute_force_aut(c.digraph()).unwrap(), 48);
        assert_eq!(aut_bound(&c).unwrap(), BigUint::from(12u32));
        assert_eq!(aut_block_bound(&c).unwrap(), BigUint::from(48u32));
        assert_eq!(aut_block_bound(&trivial_base()).unwrap(), aut_bound(&trivial_base()).unwrap());
    }
}
