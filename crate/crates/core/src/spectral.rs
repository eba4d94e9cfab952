//! Root-of-unity sums for Cayley graphs of `C_n ⋊ C_m` and the spectral
//! DSRG criteria built on them.
//!
//! For `G = C_n ⋊_k C_m` with elements `x^a y^h` and an exponent set `H`,
//! the connection set is `{x^a y^h : a ∈ H}` (unstarred) or
//! `{x^a y^h : a ∈ H ∪ {0}} \ {e}` (starred). The nontrivial eigenvalues
//! are the sums `S_u = Σ_h E_u(h)` with `E_u(h) = Σ_{a} e^{2πi·u·a·k^h/n}`.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::cayley::{cayley_graph, CayleyGraph};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::groups::{pow_mod, semidirect_cyclic, GroupSubset, SemidirectSpec};
use crate::matrix::IntMatrix;
use crate::params::ParamTuple;

/// Integer/zero classification threshold for floating sums.
pub const TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralSum {
    pub value: Complex64,
    /// Nearest integer to the real part.
    pub rounded: i64,
    /// Distance from `rounded`, including the imaginary part.
    pub residual: f64,
}

impl SpectralSum {
    fn new(value: Complex64) -> Self {
        let rounded = value.re.round();
        let residual = (value.re - rounded).abs().max(value.im.abs());
        SpectralSum { value, rounded: rounded as i64, residual }
    }

    pub fn is_integer(&self) -> bool {
        self.residual <= TOLERANCE
    }

    pub fn integer(&self) -> Option<i64> {
        self.is_integer().then_some(self.rounded)
    }

    pub fn is_zero(&self) -> bool {
        self.value.norm() <= TOLERANCE
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralProfile {
    pub spec: SemidirectSpec,
    /// Exponent set as supplied (0 is added implicitly when starred).
    pub h: Vec<u64>,
    pub starred: bool,
    /// `S_0 … S_{n−1}`
    pub s_values: Vec<SpectralSum>,
    /// `E_u(h)` for `u < n`, `h < m`.
    pub e_table: Vec<Vec<SpectralSum>>,
}

impl SpectralProfile {
    pub fn order(&self) -> i64 {
        (self.spec.n * self.spec.m) as i64
    }

    /// `|S|`: `vm` unstarred, `(v+1)m − 1` starred.
    pub fn degree(&self) -> i64 {
        let (v, m) = (self.h.len() as i64, self.spec.m as i64);
        if self.starred {
            (v + 1) * m - 1
        } else {
            v * m
        }
    }

    pub fn e_row_zero(&self, u: usize) -> bool {
        self.e_table[u].iter().all(SpectralSum::is_zero)
    }

    /// Integer values of `S_1 … S_{n−1}` (index `u − 1`), or the first
    /// non-integral `u`.
    fn nontrivial_integers(&self) -> std::result::Result<Vec<i64>, usize> {
        (1..self.s_values.len())
            .map(|u| self.s_values[u].integer().ok_or(u))
            .collect()
    }
}

fn validate_exponents(spec: &SemidirectSpec, h: &[u64]) -> Result<()> {
    spec.validate()?;
    let mut seen = vec![false; spec.n as usize];
    for &a in h {
        if a == 0 || a >= spec.n {
            return Err(Error::BadParams(format!("exponent {a} outside 1..{}", spec.n)));
        }
        if std::mem::replace(&mut seen[a as usize], true) {
            return Err(Error::BadParams(format!("exponent {a} repeated")));
        }
    }
    Ok(())
}

fn exponents(h: &[u64], starred: bool) -> Vec<u64> {
    let mut ex: Vec<u64> = h.to_vec();
    if starred {
        ex.insert(0, 0);
    }
    ex
}

pub fn profile(spec: SemidirectSpec, h: &[u64], starred: bool) -> Result<SpectralProfile> {
    validate_exponents(&spec, h)?;
    let (n, m) = (spec.n, spec.m);
    let ex = exponents(h, starred);
    let e_table: Vec<Vec<SpectralSum>> = (0..n)
        .map(|u| {
            (0..m)
                .map(|hh| {
                    let kh = pow_mod(spec.k, hh, n);
                    let z: Complex64 = ex
                        .iter()
                        .map(|&a| {
                            let r = (u % n) * (a % n) % n * kh % n;
                            Complex64::from_polar(1.0, TAU * r as f64 / n as f64)
                        })
                        .sum();
                    SpectralSum::new(z)
                })
                .collect()
        })
        .collect();
    let s_values = e_table
        .iter()
        .map(|row| SpectralSum::new(row.iter().map(|e| e.value).sum()))
        .collect();
    Ok(SpectralProfile { spec, h: h.to_vec(), starred, s_values, e_table })
}

/// The Cayley graph whose spectrum the profile describes.
pub fn semidirect_cayley(spec: SemidirectSpec, h: &[u64], starred: bool) -> Result<CayleyGraph> {
    validate_exponents(&spec, h)?;
    let g = semidirect_cyclic(spec)?;
    let mut s = GroupSubset::empty(g.order());
    for &a in &exponents(h, starred) {
        for hh in 0..spec.m {
            s.insert(g.encode(&[a, hh]));
        }
    }
    s.remove(g.identity());
    cayley_graph(&g, &s)
}

/// Eigenvalue multiset of the adjacency matrix assembled from the sums:
/// unstarred `{vm, 0^{n(m−1)}, S_1, …, S_{n−1}}`, starred
/// `{(v+1)m − 1, (−1)^{n(m−1)}, S*_1 − 1, …, S*_{n−1} − 1}`.
pub fn charpoly_factors(p: &SpectralProfile) -> Result<BTreeMap<i64, usize>> {
    let values = p.nontrivial_integers().map_err(Error::NonIntegerSpectrum)?;
    let (n, m) = (p.spec.n as usize, p.spec.m as usize);
    let shift = if p.starred { -1 } else { 0 };
    let mut out = BTreeMap::new();
    *out.entry(p.degree()).or_insert(0) += 1;
    if n * (m - 1) > 0 {
        *out.entry(shift).or_insert(0) += n * (m - 1);
    }
    for s in values {
        *out.entry(s + shift).or_insert(0) += 1;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Yes {
        rho: i64,
        sigma: i64,
        /// `s` for the σ criteria, `r` for the ρ criterion.
        multiplicity: usize,
        implied: ParamTuple,
    },
    No {
        u: Option<usize>,
        reason: String,
    },
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes { .. })
    }

    pub fn implied(&self) -> Option<ParamTuple> {
        match self {
            Verdict::Yes { implied, .. } => Some(*implied),
            Verdict::No { .. } => None,
        }
    }

    fn no(u: impl Into<Option<usize>>, reason: impl Into<String>) -> Self {
        Verdict::No { u: u.into(), reason: reason.into() }
    }
}

/// `(n, k, μ, λ, t)` from `(A − ρI)(A − σI) = μJ`.
fn implied_tuple(n: i64, k: i64, rho: i64, sigma: i64) -> Option<ParamTuple> {
    let num = (k - rho) * (k - sigma);
    if n <= 0 || num % n != 0 {
        return None;
    }
    let mu = num / n;
    Some(ParamTuple::raw(n, k, mu, mu + rho + sigma, mu - rho * sigma))
}

fn yes(p: &SpectralProfile, rho: i64, sigma: i64, multiplicity: usize) -> Verdict {
    match implied_tuple(p.order(), p.degree(), rho, sigma) {
        Some(implied) => Verdict::Yes { rho, sigma, multiplicity, implied },
        None => Verdict::no(None, "implied mu is not an integer"),
    }
}

fn require_starred(p: &SpectralProfile, starred: bool) -> Result<()> {
    if p.starred != starred {
        let want = if starred { "starred" } else { "unstarred" };
        return Err(Error::PreconditionViolated(format!("criterion needs a {want} profile")));
    }
    Ok(())
}

/// Yes iff `S_1 = … = S_{n−1}` is one negative integer `σ`; then the
/// graph has `ρ = 0`, `s = n − 1` and `t = μ`.
pub fn uniform_negative_criterion(p: &SpectralProfile) -> Result<Verdict> {
    require_starred(p, false)?;
    let values = match p.nontrivial_integers() {
        Ok(v) => v,
        Err(u) => return Ok(Verdict::no(u, "S_u is not an integer")),
    };
    let Some(&sigma) = values.first() else {
        return Ok(Verdict::no(None, "no nontrivial sums"));
    };
    if sigma >= 0 {
        return Ok(Verdict::no(1, "S_1 is not negative"));
    }
    if let Some(i) = values.iter().position(|&s| s != sigma) {
        return Ok(Verdict::no(i + 1, "S_u differs from S_1"));
    }
    Ok(yes(p, 0, sigma, values.len()))
}

/// Yes iff exactly `s` of `S_1 … S_{n−1}` equal `σ`, the rest are 0, and
/// each zero `S_u` has an all-zero row `E_u(·)`.
pub fn sigma_or_zero_criterion(p: &SpectralProfile, s: usize, sigma: i64) -> Result<Verdict> {
    require_starred(p, false)?;
    if sigma >= 0 || s == 0 {
        return Err(Error::PreconditionViolated("needs s >= 1 and sigma < 0".into()));
    }
    Ok(two_value_check(p, s, sigma, 0).unwrap_or_else(|v| v))
}

/// Yes iff exactly `r` of `S*_1 … S*_{n−1}` equal `1 + ρ`, the rest are 0,
/// and each zero `S*_u` has an all-zero row `E*_u(·)`; then `σ = −1` and
/// `t = λ + 1`.
pub fn shifted_rho_criterion(p: &SpectralProfile, r: usize, rho: i64) -> Result<Verdict> {
    require_starred(p, true)?;
    if r == 0 || rho + 1 == 0 {
        return Err(Error::PreconditionViolated("needs r >= 1 and rho != -1".into()));
    }
    Ok(two_value_check(p, r, rho + 1, 1).unwrap_or_else(|v| v))
}

/// Shared shape of the two-valued criteria. `offset` converts the common
/// nonzero sum into the eigenvalue it stands for.
fn two_value_check(p: &SpectralProfile, count: usize, value: i64, offset: i64) -> std::result::Result<Verdict, Verdict> {
    let values = p.nontrivial_integers().map_err(|u| Verdict::no(u, "S_u is not an integer"))?;
    let mut hits = 0;
    for (i, &sv) in values.iter().enumerate() {
        let u = i + 1;
        if sv == value {
            hits += 1;
        } else if sv != 0 {
            return Err(Verdict::no(u, format!("S_u = {sv} is neither {value} nor 0")));
        } else if !p.e_row_zero(u) {
            return Err(Verdict::no(u, "S_u = 0 but some E_u(h) is nonzero"));
        }
    }
    if hits != count {
        return Err(Verdict::no(None, format!("{hits} sums equal {value}, expected {count}")));
    }
    if offset != 0 && value - offset <= -1 {
        return Err(Verdict::no(None, format!("rho = {} is not above sigma = -1", value - offset)));
    }
    Ok(if offset == 0 { yes(p, 0, value, count) } else { yes(p, value - offset, -1, count) })
}

/// Common nonzero value of the nontrivial sums and how often it occurs,
/// provided all nontrivial sums are integers taking at most one nonzero value.
pub fn dominant_value(p: &SpectralProfile) -> Option<(usize, i64)> {
    let values = p.nontrivial_integers().ok()?;
    let mut nonzero = values.iter().filter(|&&v| v != 0);
    let first = *nonzero.next()?;
    nonzero.all(|&v| v == first).then(|| (values.iter().filter(|&&v| v == first).count(), first))
}

/// Runs whichever criterion fits the profile, with its parameters read off
/// the sums.
pub fn evaluate(p: &SpectralProfile) -> Verdict {
    let run = || -> Result<Verdict> {
        match (p.starred, dominant_value(p)) {
            (_, None) => Ok(Verdict::no(None, "sums do not take a single nonzero integer value")),
            (false, Some((s, sigma))) if sigma < 0 => sigma_or_zero_criterion(p, s, sigma),
            (false, Some(_)) => Ok(Verdict::no(None, "nonzero sums are positive")),
            (true, Some((r, value))) => shifted_rho_criterion(p, r, value - 1),
        }
    };
    run().unwrap_or_else(|e| Verdict::no(None, e.to_string()))
}

/// `A² − (ρ+σ)A + ρσI` if it is a constant matrix `μJ`.
pub fn annihilator_constant(d: &Digraph, rho: i64, sigma: i64) -> Option<i64> {
    let a = d.adjacency();
    let n = a.order();
    let m = a
        .square()
        .ok()?
        .sub(&a.scale(rho.checked_add(sigma)?).ok()?)
        .ok()?
        .add(&IntMatrix::identity(n).scale(rho.checked_mul(sigma)?).ok()?)
        .ok()?;
    m.constant_value()
}

/// Exact check that `(A − ρI)(A − σI)` is a multiple of `J`.
pub fn minpoly_check(d: &Digraph, rho: i64, sigma: i64) -> bool {
    annihilator_constant(d, rho, sigma).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::verify_dsrg;

    fn spec(n: u64, m: u64, k: u64) -> SemidirectSpec {
        SemidirectSpec::new(n, m, k).unwrap()
    }

    fn ints(p: &SpectralProfile) -> Vec<i64> {
        p.s_values.iter().map(|s| s.integer().unwrap()).collect()
    }

    #[test]
    fn profiles() {
        let p = profile(spec(3, 2, 2), &[1], false).unwrap();
        assert_eq!(ints(&p), vec![2, -1, -1]);
        let p = profile(spec(4, 2, 3), &[1, 3], false).unwrap();
        assert_eq!(ints(&p), vec![4, 0, -4, 0]);
        assert!(p.e_row_zero(1) && p.e_row_zero(3));
        let p = profile(spec(4, 2, 3), &[1], true).unwrap();
        assert_eq!(ints(&p), vec![4, 2, 0, 2]);
        assert!(p.e_row_zero(2));
        assert!(profile(spec(4, 2, 3), &[0], false).is_err());
        assert!(profile(spec(4, 2, 3), &[1, 1], false).is_err());
    }

    #[test]
    fn charpoly_assembly() {
        let f = |n, m, k, h: &[u64], st| charpoly_factors(&profile(spec(n, m, k), h, st).unwrap()).unwrap();
        assert_eq!(f(3, 2, 2, &[1], false), BTreeMap::from([(-1, 2), (0, 3), (2, 1)]));
        assert_eq!(f(4, 2, 3, &[1, 3], false), BTreeMap::from([(-4, 1), (0, 6), (4, 1)]));
        assert_eq!(f(4, 2, 3, &[1], true), BTreeMap::from([(-1, 5), (1, 2), (3, 1)]));
        let odd = profile(spec(7, 1, 1), &[1, 2, 4], false).unwrap();
        assert!(matches!(charpoly_factors(&odd), Err(Error::NonIntegerSpectrum(1))));
    }

    #[test]
    fn criteria_examples() {
        let p = profile(spec(3, 2, 2), &[1], false).unwrap();
        let v = uniform_negative_criterion(&p).unwrap();
        assert_eq!(v.implied(), Some(ParamTuple::raw(6, 2, 1, 0, 1)));
        let p = profile(spec(5, 4, 2), &[1, 2], false).unwrap();
        let v = uniform_negative_criterion(&p).unwrap();
        assert!(matches!(v, Verdict::Yes { sigma: -2, .. }));
        assert_eq!(v.implied(), Some(ParamTuple::raw(20, 8, 4, 2, 4)));
        let p = profile(spec(4, 2, 3), &[1], false).unwrap();
        assert!(!uniform_negative_criterion(&p).unwrap().is_yes());
        assert!(!evaluate(&p).is_yes());

        let p = profile(spec(4, 2, 3), &[1, 3], false).unwrap();
        let v = sigma_or_zero_criterion(&p, 1, -4).unwrap();
        assert_eq!(v.implied(), Some(ParamTuple::raw(8, 4, 4, 0, 4)));
        assert!(uniform_negative_criterion(&p).unwrap().implied().is_none());

        let p = profile(spec(4, 2, 3), &[1], true).unwrap();
        let v = shifted_rho_criterion(&p, 2, 1).unwrap();
        assert_eq!(v.implied(), Some(ParamTuple::raw(8, 3, 1, 1, 2)));
        assert!(shifted_rho_criterion(&profile(spec(4, 2, 3), &[1], false).unwrap(), 2, 1).is_err());

        let p = profile(spec(3, 2, 2), &[1], true).unwrap();
        assert_eq!(evaluate(&p).implied(), Some(ParamTuple::raw(6, 3, 2, 1, 2)));
    }

    #[test]
    fn minpoly_examples() {
        let c = semidirect_cayley(spec(3, 2, 2), &[1], false).unwrap();
        assert!(minpoly_check(c.digraph(), 0, -1));
        assert_eq!(annihilator_constant(c.digraph(), 0, -1), Some(1));
        let d = semidirect_cayley(spec(4, 2, 3), &[1], true).unwrap();
        assert_eq!(verify_dsrg(d.digraph()).unwrap(), ParamTuple::raw(8, 3, 1, 1, 2));
        assert!(minpoly_check(d.digraph(), 1, -1));
        let c4 = Digraph::from_arcs(4, (0..4).map(|i| (i, (i + 1) % 4))).unwrap();
        for rho in -4..=4 {
            for sigma in -4..=4 {
                assert!(!minpoly_check(&c4, rho, sigma));
            }
        }
    }
}
