//! Finite groups given by full multiplication tables.
//!
//! Elements are canonical indices `0..order`. Groups built from cyclic
//! factors use a mixed-radix encoding (first coordinate least significant),
//! so `encode(&[i, j])` for `C_n ⋊ C_m` is `i + n·j`.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::params::gcd;

pub type Elem = usize;

/// Orders up to this size get an exhaustive associativity check.
const FULL_CHECK_LIMIT: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<Elem>,
    identity: Elem,
    names: Vec<String>,
    radices: Vec<usize>,
}

impl FiniteGroup {
    /// Tabulates `op` and checks the group axioms.
    pub fn from_op(radices: Vec<usize>, names: Vec<String>, op: impl Fn(Elem, Elem) -> Elem) -> Result<Self> {
        let order: usize = radices.iter().product();
        if order == 0 || names.len() != order {
            return Err(Error::InvalidAction("group must have at least one element and one name per element".into()));
        }
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                let c = op(a, b);
                if c >= order {
                    return Err(Error::InvalidAction(format!("product {a}*{b} = {c} out of range")));
                }
                table.push(c as u32);
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e * order + x] as usize == x && table[x * order + e] as usize == x))
            .ok_or_else(|| Error::InvalidAction("no identity element".into()))?;
        let mut inverse = vec![usize::MAX; order];
        for a in 0..order {
            let inv = (0..order)
                .find(|&b| table[a * order + b] as usize == identity)
                .ok_or_else(|| Error::InvalidAction(format!("element {a} has no right inverse")))?;
            if table[inv * order + a] as usize != identity {
                return Err(Error::InvalidAction(format!("element {a} has no two-sided inverse")));
            }
            inverse[a] = inv;
        }
        let g = FiniteGroup { order, table, inverse, identity, names, radices };
        g.check_associative()?;
        Ok(g)
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.order;
        let triple_ok = |a: Elem, b: Elem, c: Elem| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c));
        if n <= FULL_CHECK_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mul(a, b);
                    for c in 0..n {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return Err(Error::InvalidAction(format!("associativity fails at ({a},{b},{c})")));
                        }
                    }
                }
            }
        } else {
            // deterministic sample of triples
            let mut state: u64 = 0x9e3779b97f4a7c15;
            let mut next = || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                (state % n as u64) as usize
            };
            for _ in 0..200_000 {
                let (a, b, c) = (next(), next(), next());
                if !triple_ok(a, b, c) {
                    return Err(Error::InvalidAction(format!("associativity fails at ({a},{b},{c})")));
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a]
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        let (mut acc, mut base, mut e) = (self.identity, a, e);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    pub fn name(&self, a: Elem) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn radices(&self) -> &[usize] {
        &self.radices
    }

    /// Mixed-radix index of a coordinate tuple (coordinates reduced mod radix).
    pub fn encode(&self, coords: &[u64]) -> Elem {
        assert_eq!(coords.len(), self.radices.len(), "coordinate arity");
        let mut idx = 0usize;
        let mut scale = 1usize;
        for (&c, &r) in coords.iter().zip(&self.radices) {
            idx += (c as usize % r) * scale;
            scale *= r;
        }
        idx
    }

    pub fn decode(&self, mut idx: Elem) -> Vec<u64> {
        self.radices
            .iter()
            .map(|&r| {
                let c = idx % r;
                idx /= r;
                c as u64
            })
            .collect()
    }
}

fn monomial_name(symbols: &[&str], coords: &[u64]) -> String {
    let parts: Vec<String> = symbols
        .iter()
        .zip(coords)
        .filter(|(_, &c)| c != 0)
        .map(|(s, &c)| if c == 1 { s.to_string() } else { format!("{s}^{c}") })
        .collect();
    if parts.is_empty() {
        "e".to_string()
    } else {
        parts.join(" ")
    }
}

fn mixed_names(symbols: &[&str], radices: &[usize]) -> Vec<String> {
    let order: usize = radices.iter().product();
    (0..order)
        .map(|mut idx| {
            let coords: Vec<u64> = radices
                .iter()
                .map(|&r| {
                    let c = idx % r;
                    idx /= r;
                    c as u64
                })
                .collect();
            monomial_name(symbols, &coords)
        })
        .collect()
}

/// `C_n = ⟨x⟩`; element `i` is `x^i`.
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1, "cyclic group order must be positive");
    FiniteGroup::from_op(vec![n], mixed_names(&["x"], &[n]), |a, b| (a + b) % n).expect("cyclic group axioms")
}

/// `C_n ⋊ C_m` where the generator of `C_m` acts by multiplication by `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SemidirectSpec {
    pub n: u64,
    pub m: u64,
    pub k: u64,
}

impl SemidirectSpec {
    pub fn new(n: u64, m: u64, k: u64) -> Result<Self> {
        let s = SemidirectSpec { n, m, k };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        let SemidirectSpec { n, m, k } = *self;
        if n == 0 || m == 0 {
            return Err(Error::InvalidAction("factor orders must be positive".into()));
        }
        if gcd(k as i64, n as i64) != 1 {
            return Err(Error::InvalidAction(format!("gcd({k},{n}) != 1")));
        }
        if pow_mod(k, m, n) != 1 % n {
            return Err(Error::InvalidAction(format!("{k}^{m} is not 1 mod {n}")));
        }
        Ok(())
    }

    /// Every multiplier `k` in `1..n` (or `0` when `n = 1`) making a valid action.
    pub fn valid_multipliers(n: u64, m: u64) -> Vec<u64> {
        (0..n.max(1))
            .filter(|&k| SemidirectSpec { n, m, k }.validate().is_ok())
            .collect()
    }
}

/// Group on pairs `(i mod n, j mod m)` with `(i,j)(i',j') = (i + k^j i', j + j')`.
/// Element names use `a` for the normal factor and `x` for the acting one.
pub fn semidirect_cyclic(spec: SemidirectSpec) -> Result<FiniteGroup> {
    spec.validate()?;
    let (n, m) = (spec.n as usize, spec.m as usize);
    let powers: Vec<u64> = (0..m as u64).map(|j| pow_mod(spec.k, j, spec.n)).collect();
    FiniteGroup::from_op(vec![n, m], mixed_names(&["a", "x"], &[n, m]), |a, b| {
        let (i, j) = (a % n, a / n);
        let (i2, j2) = (b % n, b / n);
        let ni = (i as u64 + powers[j] * i2 as u64) % spec.n;
        ni as usize + n * ((j + j2) % m)
    })
}

/// `(C_p ⋊ C_n) ⋊ C_p`, where the outer generator `y` acts on the inner
/// group by conjugation with `a`: `y^u · d · y^{-u} = a^{-u} d a^u`.
/// Element `(l, i, u)` is `a^l x^i y^u` and `x^i a^l = a^{l s^i} x^i`.
pub fn nested_semidirect(p: u64, n: u64, s: u64) -> Result<FiniteGroup> {
    if !is_prime(p) {
        return Err(Error::InvalidAction(format!("{p} is not prime")));
    }
    if s % p == 1 % p {
        return Err(Error::InvalidAction(format!("{s} is 1 mod {p}")));
    }
    SemidirectSpec::new(p, n, s)?;
    let (pu, nu) = (p as usize, n as usize);
    let powers: Vec<u64> = (0..n).map(|i| pow_mod(s, i, p)).collect();
    FiniteGroup::from_op(vec![pu, nu, pu], mixed_names(&["a", "x", "y"], &[pu, nu, pu]), |a, b| {
        let (l, i, u) = (a % pu, (a / pu) % nu, a / (pu * nu));
        let (l2, i2, u2) = (b % pu, (b / pu) % nu, b / (pu * nu));
        // conjugate (l2, i2) by a^u: l2 + u (s^{i2} - 1)
        let conj = (l2 as u64 + u as u64 * (powers[i2] + p - 1)) % p;
        let nl = (l as u64 + powers[i] * conj) % p;
        nl as usize + pu * ((i + i2) % nu) + pu * nu * ((u + u2) % pu)
    })
}

/// `A ⋊ C_q` with the generator `b` of `C_q` acting as the automorphism
/// `beta` (given as an element map). Element `(a, u)` has index `a + |A|·u`.
pub fn semidirect_by_automorphism(base: &FiniteGroup, beta: &[Elem], q: usize) -> Result<FiniteGroup> {
    check_automorphism(base, beta)?;
    if q == 0 {
        return Err(Error::InvalidAction("q must be positive".into()));
    }
    let order = base.order();
    // powers[u][a] = beta^u(a)
    let mut powers: Vec<Vec<Elem>> = vec![(0..order).collect()];
    for u in 1..=q {
        let prev = &powers[u - 1];
        powers.push(prev.iter().map(|&a| beta[a]).collect());
    }
    if powers[q].iter().enumerate().any(|(a, &b)| a != b) {
        return Err(Error::InvalidAction(format!("beta^{q} is not the identity")));
    }
    let names = (0..q)
        .flat_map(|u| {
            base.names().iter().map(move |nm| match (nm.as_str(), u) {
                (_, 0) => nm.clone(),
                ("e", 1) => "b".to_string(),
                ("e", _) => format!("b^{u}"),
                (_, 1) => format!("{nm} b"),
                _ => format!("{nm} b^{u}"),
            })
        })
        .collect();
    let mut radices = base.radices().to_vec();
    radices.push(q);
    FiniteGroup::from_op(radices, names, |x, y| {
        let (a, u) = (x % order, x / order);
        let (a2, u2) = (y % order, y / order);
        base.mul(a, powers[u][a2]) + order * ((u + u2) % q)
    })
}

/// `G × H`, element `(g, h)` at index `g + |G|·h`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let go = g.order();
    let names = h
        .elements()
        .flat_map(|b| {
            g.elements().map(move |a| match (g.name(a), h.name(b)) {
                ("e", "e") => "e".to_string(),
                (x, "e") => x.to_string(),
                ("e", y) => format!("({y})"),
                (x, y) => format!("{x} ({y})"),
            })
        })
        .collect();
    let mut radices = g.radices().to_vec();
    radices.extend_from_slice(h.radices());
    FiniteGroup::from_op(radices, names, |x, y| {
        g.mul(x % go, y % go) + go * h.mul(x / go, y / go)
    })
    .expect("direct product of groups is a group")
}

/// The map `g ↦ g^s`; an automorphism when `G` is abelian and `gcd(s, |G|) = 1`.
pub fn power_map(g: &FiniteGroup, s: u64) -> Vec<Elem> {
    g.elements().map(|a| g.pow(a, s)).collect()
}

pub fn check_automorphism(g: &FiniteGroup, beta: &[Elem]) -> Result<()> {
    let n = g.order();
    if beta.len() != n {
        return Err(Error::NotAutomorphism(format!("map has {} entries, group has {n}", beta.len())));
    }
    let mut seen = vec![false; n];
    for &b in beta {
        if b >= n || std::mem::replace(&mut seen[b], true) {
            return Err(Error::NotAutomorphism("map is not a bijection".into()));
        }
    }
    for a in 0..n {
        for b in 0..n {
            if beta[g.mul(a, b)] != g.mul(beta[a], beta[b]) {
                return Err(Error::NotAutomorphism(format!(
                    "beta({} {}) != beta({}) beta({})",
                    g.name(a),
                    g.name(b),
                    g.name(a),
                    g.name(b)
                )));
            }
        }
    }
    Ok(())
}

/// A subset of a group's elements, stored as a membership mask.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupSubset {
    mask: Vec<bool>,
}

impl GroupSubset {
    pub fn empty(order: usize) -> Self {
        GroupSubset { mask: vec![false; order] }
    }

    pub fn full(order: usize) -> Self {
        GroupSubset { mask: vec![true; order] }
    }

    pub fn from_elems(order: usize, elems: impl IntoIterator<Item = Elem>) -> Self {
        let mut s = Self::empty(order);
        for e in elems {
            s.insert(e);
        }
        s
    }

    pub fn insert(&mut self, e: Elem) {
        self.mask[e] = true;
    }

    pub fn remove(&mut self, e: Elem) {
        self.mask[e] = false;
    }

    #[inline]
    pub fn contains(&self, e: Elem) -> bool {
        self.mask.get(e).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.mask.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.mask.iter().any(|&b| b)
    }

    pub fn group_order(&self) -> usize {
        self.mask.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    pub fn to_vec(&self) -> Vec<Elem> {
        self.iter().collect()
    }

    pub fn is_subset_of(&self, other: &GroupSubset) -> bool {
        self.iter().all(|e| other.contains(e))
    }

    /// `{s⁻¹ : s ∈ S}`
    pub fn inverse(&self, g: &FiniteGroup) -> GroupSubset {
        GroupSubset::from_elems(self.group_order(), self.iter().map(|s| g.inv(s)))
    }

    /// `xS`
    pub fn left_translate(&self, g: &FiniteGroup, x: Elem) -> GroupSubset {
        GroupSubset::from_elems(self.group_order(), self.iter().map(|s| g.mul(x, s)))
    }

    /// `{a b : a ∈ self, b ∈ other}`
    pub fn product(&self, g: &FiniteGroup, other: &GroupSubset) -> GroupSubset {
        let mut out = GroupSubset::empty(self.group_order());
        for a in self.iter() {
            for b in other.iter() {
                out.insert(g.mul(a, b));
            }
        }
        out
    }

    pub fn names(&self, g: &FiniteGroup) -> Vec<String> {
        self.iter().map(|e| g.name(e).to_string()).collect()
    }
}

pub fn is_subgroup(g: &FiniteGroup, h: &GroupSubset) -> bool {
    h.contains(g.identity()) && h.iter().all(|a| h.iter().all(|b| h.contains(g.mul(a, b))))
}

/// Smallest subgroup containing `gens`.
pub fn generated_subgroup(g: &FiniteGroup, gens: &[Elem]) -> GroupSubset {
    let mut sub = GroupSubset::from_elems(g.order(), [g.identity()]);
    let mut queue: VecDeque<Elem> = VecDeque::from([g.identity()]);
    while let Some(x) = queue.pop_front() {
        for &s in gens {
            let y = g.mul(x, s);
            if !sub.contains(y) {
                sub.insert(y);
                queue.push_back(y);
            }
        }
    }
    sub
}

/// Every subgroup, ordered by size and then by member list.
pub fn subgroups(g: &FiniteGroup) -> Vec<GroupSubset> {
    let trivial = generated_subgroup(g, &[]);
    let mut seen: HashSet<GroupSubset> = HashSet::from([trivial.clone()]);
    let mut queue = VecDeque::from([(trivial, Vec::<Elem>::new())]);
    while let Some((sub, gens)) = queue.pop_front() {
        for x in g.elements().filter(|&x| !sub.contains(x)) {
            let mut next_gens = gens.clone();
            next_gens.push(x);
            let next = generated_subgroup(g, &next_gens);
            if seen.insert(next.clone()) {
                queue.push_back((next, next_gens));
            }
        }
    }
    let mut all: Vec<GroupSubset> = seen.into_iter().collect();
    all.sort_by_key(|s| (s.len(), s.to_vec()));
    all
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coset {
    /// Least member.
    pub rep: Elem,
    pub members: Vec<Elem>,
}

/// Left cosets `xH`, ordered by least member.
pub fn left_cosets(g: &FiniteGroup, h: &GroupSubset) -> Result<Vec<Coset>> {
    if !is_subgroup(g, h) {
        return Err(Error::NotSubgroup(format!("{:?}", h.names(g))));
    }
    let mut assigned = vec![false; g.order()];
    let mut cosets = Vec::new();
    for x in g.elements() {
        if assigned[x] {
            continue;
        }
        let mut members: Vec<Elem> = h.iter().map(|y| g.mul(x, y)).collect();
        members.sort_unstable();
        for &m in &members {
            assigned[m] = true;
        }
        cosets.push(Coset { rep: members[0], members });
    }
    Ok(cosets)
}

/// `G_S = {g : gS = S}`.
pub fn set_stabilizer(g: &FiniteGroup, s: &GroupSubset) -> GroupSubset {
    GroupSubset::from_elems(
        g.order(),
        g.elements().filter(|&x| s.iter().all(|y| s.contains(g.mul(x, y)))),
    )
}

/// Outcome of testing the q-orbit condition for an automorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QOrbit {
    pub holds: bool,
    /// Orbits on `G \ {e}`, each listed as `a, β(a), β²(a), …` from its
    /// least element, ordered by least element.
    pub orbits: Vec<Vec<Elem>>,
    pub group_order: usize,
}

pub fn q_orbit_check(g: &FiniteGroup, beta: &[Elem], q: usize) -> Result<QOrbit> {
    check_automorphism(g, beta)?;
    let mut seen = vec![false; g.order()];
    seen[g.identity()] = true;
    let mut orbits = Vec::new();
    for a in g.elements() {
        if seen[a] {
            continue;
        }
        let mut orbit = vec![a];
        seen[a] = true;
        let mut x = beta[a];
        while x != a {
            seen[x] = true;
            orbit.push(x);
            x = beta[x];
        }
        orbits.push(orbit);
    }
    let beta_q_identity = g.elements().all(|a| {
        let mut x = a;
        for _ in 0..q {
            x = beta[x];
        }
        x == a
    });
    let holds = q > 0 && beta_q_identity && orbits.iter().all(|o| o.len() == q);
    Ok(QOrbit { holds, orbits, group_order: g.order() })
}

/// One representative (the least element) from each nontrivial orbit.
pub fn orbit_representatives(orbits: &QOrbit) -> GroupSubset {
    GroupSubset::from_elems(
        orbits.group_order,
        orbits.orbits.iter().filter_map(|o| o.iter().min().copied()),
    )
}

/// Smallest `s` for which `a ↦ a^s` on `C_m` has the q-orbit condition.
pub fn find_q_orbit_power(m: u64, q: u64) -> Option<u64> {
    let g = cyclic(m as usize);
    (1..m.max(2)).find(|&s| {
        gcd(s as i64, m as i64) == 1
            && q_orbit_check(&g, &power_map(&g, s), q as usize).is_ok_and(|r| r.holds)
    })
}

pub fn pow_mod(b: u64, e: u64, m: u64) -> u64 {
    crate::matrix::pow_mod(b, e, m)
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

pub fn totient(n: u64) -> u64 {
    (1..=n).filter(|&k| gcd(k as i64, n as i64) == 1).count() as u64
}

/// Least `d ≥ 1` with `s^d ≡ 1 (mod n)`.
pub fn multiplicative_order(s: u64, n: u64) -> Result<u64> {
    if n == 0 || gcd(s as i64, n as i64) != 1 {
        return Err(Error::NotCoprime { s, n });
    }
    let one = 1 % n;
    let mut x = s % n;
    let mut d = 1;
    while x != one {
        x = x * (s % n) % n;
        d += 1;
    }
    Ok(d)
}

/// Whether some primitive root mod `n` exists: `n` is 2, 4, `p^k` or `2p^k`
/// for an odd prime `p`.
pub fn has_primitive_root(n: u64) -> bool {
    if n == 2 || n == 4 {
        return true;
    }
    let odd = if n.is_multiple_of(2) { n / 2 } else { n };
    if odd % 2 == 0 || odd < 3 {
        return false;
    }
    let p = (3..=odd).find(|d| odd % d == 0).expect("odd >= 3 has a divisor");
    let mut rest = odd;
    while rest % p == 0 {
        rest /= p;
    }
    rest == 1
}

/// Smallest primitive root mod `n`, if one exists.
pub fn primitive_root(n: u64) -> Option<u64> {
    if n < 2 || !has_primitive_root(n) {
        return None;
    }
    let phi = totient(n);
    (1..n).find(|&s| multiplicative_order(s, n).is_ok_and(|d| d == phi))
}

/// Units mod `n` in `1..n`.
pub fn units(n: u64) -> BTreeSet<u64> {
    (1..n).filter(|&k| gcd(k as i64, n as i64) == 1).collect()
}
