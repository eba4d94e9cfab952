//! The integer group ring `ℤ[G]` and the group-ring DSRG criteria for
//! Cayley graphs and Cayley coset graphs.

use rayon::prelude::*;

use crate::digraph::{ClassReader, DsrgCondition, NotDsrg, Witness};
use crate::error::{Error, Result};
use crate::groups::{is_subgroup, Elem, FiniteGroup, GroupSubset};
use crate::params::ParamTuple;

/// `Σ r_g g` with integer coefficients indexed by element.
#[derive(Debug, Clone)]
pub struct GroupRingElement<'g> {
    group: &'g FiniteGroup,
    coeffs: Vec<i64>,
}

impl PartialEq for GroupRingElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.group, other.group) && self.coeffs == other.coeffs
    }
}

impl Eq for GroupRingElement<'_> {}

impl<'g> GroupRingElement<'g> {
    pub fn zero(group: &'g FiniteGroup) -> Self {
        GroupRingElement { group, coeffs: vec![0; group.order()] }
    }

    pub fn one(group: &'g FiniteGroup) -> Self {
        Self::basis(group, group.identity())
    }

    pub fn basis(group: &'g FiniteGroup, g: Elem) -> Self {
        let mut z = Self::zero(group);
        z.coeffs[g] = 1;
        z
    }

    pub fn from_coeffs(group: &'g FiniteGroup, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != group.order() {
            return Err(Error::InvalidTuple(format!(
                "{} coefficients for a group of order {}",
                coeffs.len(),
                group.order()
            )));
        }
        Ok(GroupRingElement { group, coeffs })
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, g: Elem) -> i64 {
        self.coeffs[g]
    }

    /// Sum of all coefficients (the augmentation).
    pub fn augmentation(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    fn same_group(&self, other: &Self) -> Result<()> {
        if std::ptr::eq(self.group, other.group) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow("group ring addition")))
            .collect::<Result<_>>()?;
        Ok(GroupRingElement { group: self.group, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1)?)
    }

    pub fn scale(&self, c: i64) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| a.checked_mul(c).ok_or(Error::Overflow("group ring scaling")))
            .collect::<Result<_>>()?;
        Ok(GroupRingElement { group: self.group, coeffs })
    }

    /// Convolution: `t_g = Σ_{g'g'' = g} r_{g'} s_{g''}`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let g = self.group;
        let support: Vec<(Elem, i64)> = self.coeffs.iter().copied().enumerate().filter(|&(_, c)| c != 0).collect();
        let coeffs = (0..g.order())
            .into_par_iter()
            .map(|target| {
                support.iter().try_fold(0i64, |acc, &(a, ra)| {
                    let sb = other.coeffs[g.mul(g.inv(a), target)];
                    ra.checked_mul(sb)
                        .and_then(|p| acc.checked_add(p))
                        .ok_or(Error::Overflow("group ring product"))
                })
            })
            .collect::<Result<Vec<i64>>>()?;
        Ok(GroupRingElement { group: g, coeffs })
    }

    /// Divides every coefficient by `d`, or `None` if some coefficient is
    /// not a multiple of `d`.
    pub fn div_exact(&self, d: i64) -> Option<Self> {
        if d == 0 || self.coeffs.iter().any(|c| c % d != 0) {
            return None;
        }
        Some(GroupRingElement { group: self.group, coeffs: self.coeffs.iter().map(|c| c / d).collect() })
    }
}

/// `X̄ = Σ_{x∈X} x`.
pub fn subset_sum<'g>(group: &'g FiniteGroup, s: &GroupSubset) -> GroupRingElement<'g> {
    let mut z = GroupRingElement::zero(group);
    for x in s.iter() {
        z.coeffs[x] = 1;
    }
    z
}

fn element_witness(g: &FiniteGroup, x: Elem) -> Witness {
    Witness::Element { index: x, name: g.name(x).to_string() }
}

/// Reads `(t, λ, μ)` off `sq` with the t-class on `diag`, the λ-class on
/// `arcs`, and the μ-class on everything else. Each class is scanned in
/// element order.
fn read_classes(
    g: &FiniteGroup,
    sq: &GroupRingElement<'_>,
    diag: &GroupSubset,
    arcs: &GroupSubset,
    n: i64,
    k: i64,
) -> std::result::Result<ParamTuple, NotDsrg> {
    let mut reader = ClassReader::new();
    for x in diag.iter() {
        reader.diagonal(sq.coeff(x), || element_witness(g, x))?;
    }
    for x in arcs.iter() {
        reader.arc(sq.coeff(x), || element_witness(g, x))?;
    }
    for x in g.elements().filter(|&x| !diag.contains(x) && !arcs.contains(x)) {
        reader.non_arc(sq.coeff(x), || element_witness(g, x))?;
    }
    Ok(reader.finish(n, k))
}

/// Solves `S̄² = te + λS̄ + μ(Ḡ − e − S̄)` for `(t, λ, μ)`; the Cayley graph
/// `C(G, S)` is a DSRG exactly when every coefficient class is constant.
pub fn cayley_criterion(g: &FiniteGroup, s: &GroupSubset) -> Result<ParamTuple> {
    if s.contains(g.identity()) {
        return Err(Error::IdentityInS);
    }
    let sbar = subset_sum(g, s);
    let sq = sbar.mul(&sbar)?;
    let identity = GroupSubset::from_elems(g.order(), [g.identity()]);
    read_classes(g, &sq, &identity, s, g.order() as i64, s.len() as i64).map_err(Error::NotDsrg)
}

/// `HSH = {h₁ s h₂}`.
pub fn double_coset_set(g: &FiniteGroup, h: &GroupSubset, s: &GroupSubset) -> GroupSubset {
    h.product(g, s).product(g, h)
}

/// `(1/|H|)·(HSH-bar)²`, whose coefficient at `x⁻¹y` counts 2-paths from
/// `xH` to `yH` in the coset graph.
pub fn coset_path_counts<'g>(g: &'g FiniteGroup, h: &GroupSubset, s: &GroupSubset) -> Result<GroupRingElement<'g>> {
    if !is_subgroup(g, h) {
        return Err(Error::NotSubgroup(format!("{:?}", h.names(g))));
    }
    let hsh = subset_sum(g, &double_coset_set(g, h, s));
    let sq = hsh.mul(&hsh)?;
    let order = h.len() as i64;
    sq.div_exact(order).ok_or_else(|| {
        let x = sq.coeffs().iter().position(|c| c % order != 0).unwrap_or(0);
        Error::NonDivisible(format!("coefficient {} at {} is not a multiple of {order}", sq.coeff(x), g.name(x)))
    })
}

/// Group-ring DSRG test for the Cayley coset graph on `G/H`: the t-class is
/// `H` (a vertex's own coset), the λ-class is `HSH`, the μ-class the rest.
/// Returns `(|G:H|, |HSH|/|H|, μ, λ, t)`.
pub fn coset_criterion(g: &FiniteGroup, h: &GroupSubset, s: &GroupSubset) -> Result<ParamTuple> {
    if !is_subgroup(g, h) {
        return Err(Error::NotSubgroup(format!("{:?}", h.names(g))));
    }
    let hsh = double_coset_set(g, h, s);
    if hsh.contains(g.identity()) {
        return Err(Error::NotDsrg(NotDsrg {
            condition: DsrgCondition::Loop,
            witness: element_witness(g, g.identity()),
            expected: 0,
            found: 1,
        }));
    }
    let hsq = {
        let bar = subset_sum(g, &hsh);
        bar.mul(&bar)?
    };
    let order = h.len() as i64;
    if let Some(x) = hsq.coeffs().iter().position(|c| c % order != 0) {
        return Err(Error::NotDsrg(NotDsrg {
            condition: DsrgCondition::NonDivisible,
            witness: element_witness(g, x),
            expected: order,
            found: hsq.coeff(x),
        }));
    }
    let sq = hsq.div_exact(order).expect("divisibility checked");
    let n = (g.order() / h.len()) as i64;
    let k = (hsh.len() / h.len()) as i64;
    read_classes(g, &sq, h, &hsh, n, k).map_err(Error::NotDsrg)
}
