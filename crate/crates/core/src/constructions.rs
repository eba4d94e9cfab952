//! Named DSRG families. Every builder computes the expected parameters from
//! the family's closed form first, builds the graph, then verifies it; a
//! disagreement is reported as [`Error::ConstructionMismatch`].

use std::fmt;

use crate::cayley::{cayley_graph, CayleyGraph};
use crate::digraph::{self, balanced_product, complement_graph, verify_dsrg, Digraph};
use crate::error::{Error, Result};
use crate::groups::{
    cyclic, is_prime, multiplicative_order, nested_semidirect, orbit_representatives, power_map, primitive_root,
    q_orbit_check, semidirect_by_automorphism, semidirect_cyclic, Elem, FiniteGroup, GroupSubset, SemidirectSpec,
};
use crate::params::{self, ParamTuple};
use crate::spectral::semidirect_cayley;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `C(C_p ⋊ C_n, A′ × C_n)`
    CyclicSemidirect,
    /// `C(C_p ⋊ C_n, (A′ + e) × C_n \ {e})`
    CyclicSemidirectWithIdentity,
    /// `C(A ⋊ C_q, A′ × C_q)` for an automorphism with the q-orbit condition
    QOrbitBase,
    /// `C(A ⋊ C_q, (A′ + e) × C_q \ {e})`
    QOrbit,
    /// `C((C_p ⋊ C_n) ⋊ C_p, A′ × C_p)`
    NestedSemidirect,
    Dihedral,
    BalancedProduct,
    ExpandTMu,
    ExpandTLambda1,
}

impl Family {
    /// Short identifier used on the command line and in catalogs.
    pub fn id(self) -> &'static str {
        match self {
            Family::CyclicSemidirect => "f39",
            Family::CyclicSemidirectWithIdentity => "f310",
            Family::QOrbitBase => "f311-base",
            Family::QOrbit => "f311",
            Family::NestedSemidirect => "f314",
            Family::Dihedral => "dihedral",
            Family::BalancedProduct => "product",
            Family::ExpandTMu => "expand-tmu",
            Family::ExpandTLambda1 => "expand-tl1",
        }
    }

    pub fn from_id(id: &str) -> Option<Family> {
        ALL_FAMILIES.iter().copied().find(|f| f.id() == id)
    }
}

pub const ALL_FAMILIES: [Family; 9] = [
    Family::CyclicSemidirect,
    Family::CyclicSemidirectWithIdentity,
    Family::QOrbitBase,
    Family::QOrbit,
    Family::NestedSemidirect,
    Family::Dihedral,
    Family::BalancedProduct,
    Family::ExpandTMu,
    Family::ExpandTLambda1,
];

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// A built and verified family member.
#[derive(Debug, Clone)]
pub struct Construction {
    pub family: Family,
    /// Human-readable parameter summary, e.g. `p=3 n=2 H={1}`.
    pub recipe: String,
    pub expected: ParamTuple,
    pub graph: Digraph,
    /// Present for Cayley-graph families.
    pub cayley: Option<CayleyGraph>,
}

impl Construction {
    fn from_cayley(family: Family, recipe: String, expected: ParamTuple, c: CayleyGraph) -> Result<Self> {
        check(expected, c.digraph())?;
        Ok(Construction { family, recipe, expected, graph: c.digraph().clone(), cayley: Some(c) })
    }

    fn from_graph(family: Family, recipe: String, expected: ParamTuple, graph: Digraph) -> Result<Self> {
        check(expected, &graph)?;
        Ok(Construction { family, recipe, expected, graph, cayley: None })
    }
}

fn check(expected: ParamTuple, d: &Digraph) -> Result<()> {
    match verify_dsrg(d) {
        Ok(found) if found == expected => Ok(()),
        found => Err(Error::ConstructionMismatch { expected, found }),
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::BadParams(msg.into())
}

fn set_string(h: &[u64]) -> String {
    let parts: Vec<String> = h.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn checked_exponents(p: u64, h: &[u64]) -> Result<Vec<u64>> {
    let mut sorted = h.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != h.len() {
        return Err(bad("H has repeated exponents"));
    }
    if sorted.is_empty() || sorted.iter().any(|&l| l == 0 || l >= p) {
        return Err(bad(format!("H must be a nonempty subset of 1..{}", p - 1)));
    }
    Ok(sorted)
}

/// `C_p ⋊ C_n` acting through a primitive root, with the shared checks of
/// the two cyclic semidirect families.
fn cyclic_semidirect_group(p: u64, n: u64) -> Result<(FiniteGroup, u64)> {
    if p < 3 || !is_prime(p) {
        return Err(bad(format!("p = {p} must be an odd prime")));
    }
    if n == 0 || !n.is_multiple_of(p - 1) {
        return Err(bad(format!("p - 1 = {} must divide n = {n}", p - 1)));
    }
    let root = primitive_root(p).ok_or_else(|| bad(format!("no primitive root mod {p}")))?;
    Ok((semidirect_cyclic(SemidirectSpec::new(p, n, root)?)?, root))
}

/// `(pn, vn, nv²/(p−1), nv(v−1)/(p−1), nv²/(p−1))`; `H = {1..p−1}` gives an SRG.
pub fn cyclic_semidirect_family(p: u64, n: u64, h: &[u64]) -> Result<Construction> {
    let (g, root) = cyclic_semidirect_group(p, n)?;
    let h = checked_exponents(p, h)?;
    let (pi, ni, v) = (p as i64, n as i64, h.len() as i64);
    let expected = ParamTuple::raw(
        pi * ni,
        v * ni,
        ni * v * v / (pi - 1),
        ni * v * (v - 1) / (pi - 1),
        ni * v * v / (pi - 1),
    );
    let s = GroupSubset::from_elems(
        g.order(),
        h.iter().flat_map(|&l| (0..n).map(move |j| (l, j))).map(|(l, j)| g.encode(&[l, j])),
    );
    let recipe = format!("p={p} n={n} H={} root={root}", set_string(&h));
    Construction::from_cayley(Family::CyclicSemidirect, recipe, expected, cayley_graph(&g, &s)?)
}

/// `(pn, n(v+1)−1, nv(v+1)/(p−1), n−2+nv²/(p−1), n−1+nv²/(p−1))` for a
/// proper `H` (`1 ≤ v ≤ p−2`).
pub fn cyclic_semidirect_with_identity(p: u64, n: u64, h: &[u64]) -> Result<Construction> {
    let (g, root) = cyclic_semidirect_group(p, n)?;
    let h = checked_exponents(p, h)?;
    if h.len() as u64 > p - 2 {
        return Err(bad("H must be a proper subset of 1..p-1"));
    }
    let (pi, ni, v) = (p as i64, n as i64, h.len() as i64);
    let base = ni * v * v / (pi - 1);
    let expected = ParamTuple::raw(pi * ni, ni * (v + 1) - 1, ni * v * (v + 1) / (pi - 1), ni - 2 + base, ni - 1 + base);
    let gr = &g;
    let mut s = GroupSubset::from_elems(
        g.order(),
        std::iter::once(0).chain(h.iter().copied()).flat_map(|l| (0..n).map(move |j| gr.encode(&[l, j]))),
    );
    s.remove(g.identity());
    let recipe = format!("p={p} n={n} H={} root={root}", set_string(&h));
    Construction::from_cayley(Family::CyclicSemidirectWithIdentity, recipe, expected, cayley_graph(&g, &s)?)
}

/// `A ⋊ C_q` with `A′` a set of orbit representatives of `beta`.
/// Base: `(mq, m−1, (m−1)/q, (m−1)/q − 1, (m−1)/q)`; with identity:
/// `(mq, m+q−2, (m−1)/q + 1, (m−1)/q + q − 2, (m−1)/q + q − 1)`.
pub fn q_orbit_family(a: &FiniteGroup, beta: &[Elem], q: u64, with_identity: bool) -> Result<Construction> {
    let orbits = q_orbit_check(a, beta, q as usize)?;
    if !orbits.holds || q < 2 {
        return Err(Error::QOrbitViolated(q));
    }
    let g = semidirect_by_automorphism(a, beta, q as usize)?;
    let reps = orbit_representatives(&orbits);
    let mut s = GroupSubset::empty(g.order());
    let am = a.order();
    let firsts: Vec<Elem> = if with_identity {
        std::iter::once(a.identity()).chain(reps.iter()).collect()
    } else {
        reps.to_vec()
    };
    for x in firsts {
        for u in 0..q as usize {
            s.insert(x + am * u);
        }
    }
    s.remove(g.identity());
    let (m, qi) = (am as i64, q as i64);
    let r = (m - 1) / qi;
    let (family, expected) = if with_identity {
        (Family::QOrbit, ParamTuple::raw(m * qi, m + qi - 2, r + 1, r + qi - 2, r + qi - 1))
    } else {
        (Family::QOrbitBase, ParamTuple::raw(m * qi, m - 1, r, r - 1, r))
    };
    let recipe = format!("|A|={m} q={q} reps={:?}", reps.names(a));
    Construction::from_cayley(family, recipe, expected, cayley_graph(&g, &s)?)
}

/// [`q_orbit_family`] on `A = C_m` with `beta: a ↦ a^s`.
pub fn cyclic_q_orbit_family(m: u64, s: u64, q: u64, with_identity: bool) -> Result<Construction> {
    if m < 2 {
        return Err(bad("m must be at least 2"));
    }
    let a = cyclic(m as usize);
    let beta = power_map(&a, s);
    let mut c = q_orbit_family(&a, &beta, q, with_identity).map_err(|e| match e {
        Error::NotAutomorphism(_) => bad(format!("a -> a^{s} is not an automorphism of C_{m}")),
        other => other,
    })?;
    c.recipe = format!("A=C_{m} beta=a^{s} q={q}");
    Ok(c)
}

/// `(p²n, p(p−1)n, n((p−1)²+1), n((p−1)³−1)/(p−1), n((p−1)²+1))`.
pub fn nested_semidirect_family(p: u64, n: u64, s: u64) -> Result<Construction> {
    if !is_prime(p) {
        return Err(bad(format!("p = {p} must be prime")));
    }
    if p < 3 {
        return Err(bad("p must be at least 3 so that a primitive root differs from 1"));
    }
    if n == 0 || !n.is_multiple_of(p - 1) {
        return Err(bad(format!("p - 1 = {} must divide n = {n}", p - 1)));
    }
    match multiplicative_order(s % p, p) {
        Ok(d) if d == p - 1 => {}
        _ => return Err(bad(format!("{s} is not a primitive root mod {p}"))),
    }
    let g = nested_semidirect(p, n, s % p)?;
    let conn = GroupSubset::from_elems(
        g.order(),
        (1..p).flat_map(|l| (0..n).flat_map(move |i| (0..p).map(move |u| (l, i, u)))).map(|(l, i, u)| g.encode(&[l, i, u])),
    );
    let (pi, ni) = (p as i64, n as i64);
    let sq = (pi - 1) * (pi - 1) + 1;
    let expected = ParamTuple::raw(
        pi * pi * ni,
        pi * (pi - 1) * ni,
        ni * sq,
        ni * ((pi - 1).pow(3) - 1) / (pi - 1),
        ni * sq,
    );
    let recipe = format!("p={p} n={n} s={s}");
    Construction::from_cayley(Family::NestedSemidirect, recipe, expected, cayley_graph(&g, &conn)?)
}

/// `D_n = C_n ⋊ C_2` with connection set `{b^i a^j : 0 ≤ i < n/2} \ {e}`;
/// parameters `(2n, n−1, n/2−1, n/2−1, n/2)`.
pub fn dihedral_family(n: u64) -> Result<Construction> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(bad(format!("n = {n} must be even and at least 4")));
    }
    let h: Vec<u64> = (1..n / 2).collect();
    let c = semidirect_cayley(SemidirectSpec::new(n, 2, n - 1)?, &h, true)?;
    let ni = n as i64;
    let expected = ParamTuple::raw(2 * ni, ni - 1, ni / 2 - 1, ni / 2 - 1, ni / 2);
    Construction::from_cayley(Family::Dihedral, format!("n={n}"), expected, c)
}

/// `(nm, km, μm, λm, tm)` via `A ⊗ J_m`.
pub fn expand_t_mu(base: &Construction, m: usize) -> Result<Construction> {
    let p = base.expected;
    let mi = m as i64;
    let expected = ParamTuple::raw(p.n * mi, p.k * mi, p.mu * mi, p.lambda * mi, p.t * mi);
    let graph = digraph::expand_t_mu(&base.graph, m)?;
    Construction::from_graph(Family::ExpandTMu, format!("{} [{}] m={m}", base.family, base.recipe), expected, graph)
}

/// `(nm, m(k+1)−1, mμ, m(t+1)−2, m(t+1)−1)` via `A ⊗ J_m + I ⊗ (J_m − I_m)`.
pub fn expand_t_lambda1(base: &Construction, m: usize) -> Result<Construction> {
    let p = base.expected;
    let mi = m as i64;
    let expected = ParamTuple::raw(p.n * mi, mi * (p.k + 1) - 1, mi * p.mu, mi * (p.t + 1) - 2, mi * (p.t + 1) - 1);
    let graph = digraph::expand_t_lambda1(&base.graph, m)?;
    Construction::from_graph(Family::ExpandTLambda1, format!("{} [{}] m={m}", base.family, base.recipe), expected, graph)
}

/// `(J − A) ⊗ A + A ⊗ (J − A)` of a balanced DSRG.
pub fn balanced_product_of(base: &Construction) -> Result<Construction> {
    let expected = params::product_params(&base.expected)?;
    let graph = balanced_product(&base.graph)?;
    Construction::from_graph(Family::BalancedProduct, format!("{} [{}]", base.family, base.recipe), expected, graph)
}

/// Which balanced base feeds the product pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PipelineBase {
    /// `(2n, n−1, (n−1)/2, (n−3)/2, (n−1)/2)` for odd prime `n`;
    /// product `(4n², 2n²−2, n²−1, n²−3, n²−1)`.
    Odd,
    /// complement of the odd base, `(2n, n, (n+1)/2, (n−1)/2, (n+1)/2)`;
    /// product `(4n², 2n², n²+1, n²−1, n²+1)`.
    OddComplement,
    /// complement of the dihedral family for `4 | n`,
    /// `(2n, n, n/2+1, n/2−1, n/2+1)`; product `(4n², 2n², n²+4, n²−4, n²+4)`.
    DihedralComplement,
}

/// The odd base: `C_n ⋊ C_2` with the inversion action and exponents
/// `{1, …, (n−1)/2}`. Only prime `n` is supported.
pub fn odd_base(n: u64) -> Result<Construction> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(bad(format!("n = {n} must be odd and at least 3")));
    }
    if !is_prime(n) {
        return Err(Error::MissingBase(n));
    }
    let ni = n as i64;
    let expected = ParamTuple::raw(2 * ni, ni - 1, (ni - 1) / 2, (ni - 3) / 2, (ni - 1) / 2);
    let h: Vec<u64> = (1..=(n - 1) / 2).collect();
    let c = semidirect_cayley(SemidirectSpec::new(n, 2, n - 1)?, &h, false)?;
    Construction::from_cayley(Family::CyclicSemidirect, format!("p={n} n=2 H={} root={}", set_string(&h), n - 1), expected, c)
}

fn complement_of(base: Construction) -> Result<Construction> {
    let expected = params::complement_params(&base.expected)?;
    let graph = complement_graph(&base.graph);
    let recipe = format!("complement of {} [{}]", base.family, base.recipe);
    Construction::from_graph(base.family, recipe, expected, graph)
}

/// Base DSRG for the product pipeline, before the product is taken.
pub fn pipeline_base(kind: PipelineBase, n: u64) -> Result<Construction> {
    match kind {
        PipelineBase::Odd => odd_base(n),
        PipelineBase::OddComplement => complement_of(odd_base(n)?),
        PipelineBase::DihedralComplement => {
            if !n.is_multiple_of(4) {
                return Err(bad(format!("n = {n} must be a multiple of 4")));
            }
            complement_of(dihedral_family(n)?)
        }
    }
}

/// Builds the base, takes the balanced product, and checks the product
/// against the closed form for `(4n², …)`.
pub fn product_pipeline(kind: PipelineBase, n: u64) -> Result<Construction> {
    let base = pipeline_base(kind, n)?;
    let ni = n as i64;
    let sq = ni * ni;
    let expected = match kind {
        PipelineBase::Odd => ParamTuple::raw(4 * sq, 2 * sq - 2, sq - 1, sq - 3, sq - 1),
        PipelineBase::OddComplement => ParamTuple::raw(4 * sq, 2 * sq, sq + 1, sq - 1, sq + 1),
        PipelineBase::DihedralComplement => ParamTuple::raw(4 * sq, 2 * sq, sq + 4, sq - 4, sq + 4),
    };
    let product = balanced_product_of(&base)?;
    if product.expected != expected {
        return Err(Error::ConstructionMismatch { expected, found: Ok(product.expected) });
    }
    Ok(product)
}
