//! Integer arithmetic on DSRG parameter tuples `(n, k, μ, λ, t)`.
//!
//! Everything here is exact: perfect squares are detected with an integer
//! square root and every division is checked for exactness.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// The five parameters `(n, k, μ, λ, t)` of a directed strongly regular graph.
///
/// Field order follows the conventional `(n, k, mu, lambda, t)` notation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParamTuple {
    pub n: i64,
    pub k: i64,
    pub mu: i64,
    pub lambda: i64,
    pub t: i64,
}

/// Exactly one of these holds for every valid tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    /// `0 < t < k`
    Proper,
    /// `t = k`: an undirected strongly regular graph.
    Srg,
    /// `t = 0 < k`: a doubly regular tournament.
    Tournament,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Proper => "DSRG",
            Kind::Srg => "SRG",
            Kind::Tournament => "tournament",
        })
    }
}

impl ParamTuple {
    pub fn new(n: i64, k: i64, mu: i64, lambda: i64, t: i64) -> Result<Self> {
        let p = ParamTuple { n, k, mu, lambda, t };
        if n < 1 || lambda < 0 || mu < 0 || t < 0 || t > k || k >= n {
            return Err(Error::InvalidTuple(format!(
                "{p} violates 0 <= lambda, 0 <= mu, 0 <= t <= k < n"
            )));
        }
        Ok(p)
    }

    /// Builds a tuple without validating the invariants. Used for
    /// intermediate values that are validated later.
    pub const fn raw(n: i64, k: i64, mu: i64, lambda: i64, t: i64) -> Self {
        ParamTuple { n, k, mu, lambda, t }
    }

    pub fn is_valid(&self) -> bool {
        ParamTuple::new(self.n, self.k, self.mu, self.lambda, self.t).is_ok()
    }

    /// `t = k` wins over `t = 0` so the empty digraph counts as an SRG.
    pub fn kind(&self) -> Kind {
        if self.t == self.k {
            Kind::Srg
        } else if self.t == 0 {
            Kind::Tournament
        } else {
            Kind::Proper
        }
    }

    pub fn gcd(&self) -> i64 {
        [self.k, self.mu, self.lambda, self.t]
            .into_iter()
            .fold(self.n, gcd)
    }

    /// Divides every field by `d`, if all are multiples of it.
    pub fn divide(&self, d: i64) -> Option<ParamTuple> {
        let f = [self.n, self.k, self.mu, self.lambda, self.t];
        if d <= 0 || f.iter().any(|x| x % d != 0) {
            return None;
        }
        Some(ParamTuple::raw(f[0] / d, f[1] / d, f[2] / d, f[3] / d, f[4] / d))
    }

    pub fn as_array(&self) -> [i64; 5] {
        [self.n, self.k, self.mu, self.lambda, self.t]
    }
}

impl fmt::Display for ParamTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{},{})",
            self.n, self.k, self.mu, self.lambda, self.t
        )
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Integer square root if `x` is a perfect square.
pub fn exact_sqrt(x: i64) -> Option<i64> {
    if x < 0 {
        return None;
    }
    let mut r = (x as f64).sqrt() as i64;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    (r * r == x).then_some(r)
}

/// One of the necessary conditions for a proper DSRG parameter set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Condition {
    /// `k(k + μ − λ) = t + (n − 1)μ`
    CountingIdentity,
    /// `(μ − λ)² + 4(t − μ)` is a positive perfect square `d²`.
    DiscriminantSquare,
    /// `d | 2k − (λ − μ)(n − 1)`
    DDivides,
    /// the quotient has the parity of `n − 1`
    QuotientParity,
    /// the quotient has absolute value at most `n − 1`
    QuotientBound,
    /// `0 ≤ λ < t`
    LambdaRange,
    /// `0 < μ ≤ t`
    MuRange,
    /// `−2(k − t − 1) ≤ μ − λ ≤ 2(k − t)`
    DifferenceRange,
    /// the eigenvalue multiplicities are nonnegative integers
    Multiplicities,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Pass,
    Fail(Vec<Condition>),
    /// `t = 0` or `t = k`; the conditions assume `0 < t < k`.
    NotApplicable,
}

impl Feasibility {
    pub fn passed(&self) -> bool {
        matches!(self, Feasibility::Pass)
    }
}

pub fn check_feasible(p: &ParamTuple) -> Feasibility {
    let ParamTuple { n, k, mu, lambda, t } = *p;
    if p.kind() != Kind::Proper {
        return Feasibility::NotApplicable;
    }
    let mut failed = Vec::new();
    if k * (k + mu - lambda) != t + (n - 1) * mu {
        failed.push(Condition::CountingIdentity);
    }
    if !(0 <= lambda && lambda < t) {
        failed.push(Condition::LambdaRange);
    }
    if !(0 < mu && mu <= t) {
        failed.push(Condition::MuRange);
    }
    let diff = mu - lambda;
    if !(-2 * (k - t - 1) <= diff && diff <= 2 * (k - t)) {
        failed.push(Condition::DifferenceRange);
    }
    match exact_sqrt(diff * diff + 4 * (t - mu)).filter(|&d| d > 0) {
        None => failed.push(Condition::DiscriminantSquare),
        Some(d) => {
            // equals (s - r)·d by the trace identity
            let num = 2 * k + (lambda - mu) * (n - 1);
            if num % d != 0 {
                failed.push(Condition::DDivides);
            } else {
                let q = num / d;
                if (q - (n - 1)).rem_euclid(2) != 0 {
                    failed.push(Condition::QuotientParity);
                }
                if q.abs() > n - 1 {
                    failed.push(Condition::QuotientBound);
                }
            }
            if multiplicities(n, k, diff, d).is_none() {
                failed.push(Condition::Multiplicities);
            }
        }
    }
    if failed.is_empty() {
        Feasibility::Pass
    } else {
        Feasibility::Fail(failed)
    }
}

/// `(ρ, σ, r, s)` for the given `μ − λ` and `d`, or `None` if anything is
/// non-integral or negative.
fn multiplicities(n: i64, k: i64, diff: i64, d: i64) -> Option<(i64, i64, i64, i64)> {
    if d <= 0 || (d - diff).rem_euclid(2) != 0 {
        return None;
    }
    let rho = (-diff + d) / 2;
    let sigma = (-diff - d) / 2;
    let r_num = -(k + sigma * (n - 1));
    let s_num = k + rho * (n - 1);
    if r_num % d != 0 || s_num % d != 0 {
        return None;
    }
    let (r, s) = (r_num / d, s_num / d);
    (r >= 0 && s >= 0).then_some((rho, sigma, r, s))
}

/// Eigenvalues `k > ρ > σ` of a DSRG with multiplicities `1, r, s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpectrumTriple {
    pub k: i64,
    pub rho: i64,
    pub sigma: i64,
    pub r: i64,
    pub s: i64,
    pub d: i64,
}

impl SpectrumTriple {
    /// Eigenvalue multiset as `(value, multiplicity)` pairs, ascending,
    /// with coinciding values merged and zero multiplicities dropped.
    pub fn multiset(&self) -> Vec<(i64, i64)> {
        let mut out: Vec<(i64, i64)> = Vec::new();
        let mut items = vec![(self.sigma, self.s), (self.rho, self.r), (self.k, 1)];
        items.sort();
        for (v, m) in items {
            if m == 0 {
                continue;
            }
            match out.last_mut() {
                Some((lv, lm)) if *lv == v => *lm += m,
                _ => out.push((v, m)),
            }
        }
        out
    }
}

/// Spectrum from the tuple alone.
///
/// Works for any tuple whose discriminant is a positive square with integral
/// multiplicities, which includes SRGs and disjoint unions of complete graphs.
pub fn spectrum(p: &ParamTuple) -> Result<SpectrumTriple> {
    let ParamTuple { n, k, mu, lambda, t } = *p;
    let diff = mu - lambda;
    let d = exact_sqrt(diff * diff + 4 * (t - mu))
        .filter(|&d| d > 0)
        .ok_or_else(|| Error::Infeasible(*p, "discriminant is not a positive square".into()))?;
    let (rho, sigma, r, s) = multiplicities(n, k, diff, d)
        .ok_or_else(|| Error::Infeasible(*p, "multiplicities are not nonnegative integers".into()))?;
    Ok(SpectrumTriple { k, rho, sigma, r, s, d })
}

/// Parameters of the complementary digraph `J − I − A`.
pub fn complement_params(p: &ParamTuple) -> Result<ParamTuple> {
    let ParamTuple { n, k, mu, lambda, t } = *p;
    let base = n - 2 * k;
    let c = ParamTuple::raw(n, base + k - 1, base + lambda, base + mu - 2, base + t - 1);
    if c.as_array().iter().any(|&x| x < 0) {
        return Err(Error::OutOfRange(*p));
    }
    Ok(c)
}

/// The four rewritten classes of balanced tuples (`t = μ`, `4k = n + 2λ + 2μ`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BalancedClass {
    /// `(2Nm, Nm, (N/2+1)m, (N/2−1)m, (N/2+1)m)`, `4 | N`
    R1,
    /// `(2Nm, Nm, (N+1)/2·m, (N−1)/2·m, (N+1)/2·m)`, `N` odd
    R2,
    /// `(2Nm, (N−1)m, (N−1)/2·m, (N−3)/2·m, (N−1)/2·m)`, `N` odd
    R3,
    /// `(2Nm, (N−2)m, (N/2−1)m, (N/2−3)m, (N/2−1)m)`, `4 | N`
    R4,
}

impl BalancedClass {
    pub const ALL: [BalancedClass; 4] = [Self::R1, Self::R2, Self::R3, Self::R4];

    /// The tuple this class produces for free parameter `n_r` and multiplier `m`.
    pub fn tuple(self, n_r: i64, m: i64) -> Option<ParamTuple> {
        let odd = n_r % 2 == 1;
        let four = n_r % 4 == 0;
        let p = match self {
            Self::R1 if four => ParamTuple::raw(2 * n_r * m, n_r * m, (n_r / 2 + 1) * m, (n_r / 2 - 1) * m, (n_r / 2 + 1) * m),
            Self::R2 if odd => ParamTuple::raw(2 * n_r * m, n_r * m, (n_r + 1) / 2 * m, (n_r - 1) / 2 * m, (n_r + 1) / 2 * m),
            Self::R3 if odd => ParamTuple::raw(2 * n_r * m, (n_r - 1) * m, (n_r - 1) / 2 * m, (n_r - 3) / 2 * m, (n_r - 1) / 2 * m),
            Self::R4 if four => ParamTuple::raw(2 * n_r * m, (n_r - 2) * m, (n_r / 2 - 1) * m, (n_r / 2 - 3) * m, (n_r / 2 - 1) * m),
            _ => return None,
        };
        p.is_valid().then_some(p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Balanced {
    Class { class: BalancedClass, n_r: i64, m: i64 },
    NotBalanced,
}

pub fn is_balanced(p: &ParamTuple) -> bool {
    p.t == p.mu && 4 * p.k == p.n + 2 * p.lambda + 2 * p.mu
}

/// Finds the class and witness `(n_r, m)` with the smallest `m`.
pub fn classify_balanced(p: &ParamTuple) -> Balanced {
    if !is_balanced(p) || p.n % 2 != 0 {
        return Balanced::NotBalanced;
    }
    let half = p.n / 2;
    for m in (1..=half).filter(|m| half % m == 0) {
        let n_r = half / m;
        for class in BalancedClass::ALL {
            if class.tuple(n_r, m) == Some(*p) {
                return Balanced::Class { class, n_r, m };
            }
        }
    }
    Balanced::NotBalanced
}

/// Every tuple with `0 < t < k < n ≤ n_max` that passes [`check_feasible`],
/// in lexicographic `(n, k, μ, λ, t)` order.
pub fn enumerate_feasible(n_max: i64) -> Vec<ParamTuple> {
    let mut out: Vec<ParamTuple> = (1..=n_max.max(0))
        .into_par_iter()
        .flat_map_iter(|n| {
            let mut found = Vec::new();
            for k in 1..n {
                for t in 1..k {
                    for mu in 1..=t {
                        for lambda in 0..t {
                            let p = ParamTuple::raw(n, k, mu, lambda, t);
                            if check_feasible(&p).passed() {
                                found.push(p);
                            }
                        }
                    }
                }
            }
            found
        })
        .collect();
    out.sort();
    out
}

/// Parameters of `(J − A) ⊗ A + A ⊗ (J − A)` for a balanced DSRG.
pub fn product_params(p: &ParamTuple) -> Result<ParamTuple> {
    if !is_balanced(p) {
        return Err(Error::PreconditionViolated(format!(
            "{p} needs t = mu and 4k = n + 2 lambda + 2 mu"
        )));
    }
    let ParamTuple { n, k, mu, lambda, .. } = *p;
    let mu1 = 2 * (k * k - 2 * mu * lambda);
    Ok(ParamTuple::raw(
        n * n,
        2 * k * (n - k),
        mu1,
        2 * (k * k - lambda * lambda - mu * mu),
        mu1,
    ))
}
