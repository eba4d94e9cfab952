#![allow(dead_code)]

use dsrg::constructions::{
    cyclic_q_orbit_family, cyclic_semidirect_family, cyclic_semidirect_with_identity, dihedral_family, expand_t_lambda1,
    expand_t_mu, nested_semidirect_family, odd_base, product_pipeline, Construction, PipelineBase,
};
use dsrg::groups::{
    cyclic, direct_product, find_q_orbit_power, is_prime, nested_semidirect, primitive_root, semidirect_cyclic,
};
use dsrg::{FiniteGroup, GroupSubset, SemidirectSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seed for randomized tests; override with `DSRG_TEST_SEED`.
pub fn seed() -> u64 {
    std::env::var("DSRG_TEST_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(20_241_015)
}

pub fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed())
}

fn nonempty_subsets(universe: &[u64]) -> impl Iterator<Item = Vec<u64>> + '_ {
    (1u32..1 << universe.len()).map(move |mask| {
        universe.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x).collect()
    })
}

/// Every output of the Cayley-graph builders with at most `n_max`
/// vertices, over all exponent sets.
pub fn cayley_outputs(n_max: u64) -> Vec<Construction> {
    let mut out = Vec::new();
    for p in (3..=n_max).filter(|&p| is_prime(p)) {
        for n in (1..).map(|j| j * (p - 1)).take_while(|&n| p * n <= n_max) {
            let exps: Vec<u64> = (1..p).collect();
            for h in nonempty_subsets(&exps) {
                out.push(cyclic_semidirect_family(p, n, &h).unwrap());
                if h.len() as u64 <= p - 2 {
                    out.push(cyclic_semidirect_with_identity(p, n, &h).unwrap());
                }
            }
            if p * p * n <= n_max {
                out.push(nested_semidirect_family(p, n, primitive_root(p).unwrap()).unwrap());
            }
        }
    }
    for m in 3..=n_max {
        for q in (2..m).filter(|q| (m - 1) % q == 0 && m * q <= n_max) {
            if let Some(s) = find_q_orbit_power(m, q) {
                out.push(cyclic_q_orbit_family(m, s, q, false).unwrap());
                out.push(cyclic_q_orbit_family(m, s, q, true).unwrap());
            }
        }
    }
    for n in (4..).step_by(2).take_while(|&n| 2 * n <= n_max) {
        out.push(dihedral_family(n).unwrap());
    }
    for n in (3..).step_by(2).take_while(|&n| 2 * n <= n_max).filter(|&n| is_prime(n)) {
        out.push(odd_base(n).unwrap());
    }
    out
}

/// Builder outputs with at most `n_max` vertices: the Cayley families, their
/// expansions, and the product pipelines.
pub fn all_outputs(n_max: u64) -> Vec<Construction> {
    let bases = cayley_outputs(n_max);
    let mut out = bases.clone();
    for b in &bases {
        let p = b.expected;
        for m in (2..).take_while(|&m| p.n as u64 * m <= n_max) {
            if p.t == p.mu {
                out.push(expand_t_mu(b, m as usize).unwrap());
            }
            if p.t == p.lambda + 1 {
                out.push(expand_t_lambda1(b, m as usize).unwrap());
            }
        }
    }
    for (kind, n) in [(PipelineBase::Odd, 3), (PipelineBase::OddComplement, 3), (PipelineBase::DihedralComplement, 4)] {
        if 4 * n * n <= n_max {
            out.push(product_pipeline(kind, n).unwrap());
        }
    }
    out
}

/// Small groups of order at most 24 for random sampling.
pub fn small_groups() -> Vec<FiniteGroup> {
    let mut out: Vec<FiniteGroup> = (2..=24).map(cyclic).collect();
    for n in 3..=12u64 {
        for m in (2..=24 / n).filter(|m| n * m <= 24) {
            for k in SemidirectSpec::valid_multipliers(n, m) {
                out.push(semidirect_cyclic(SemidirectSpec::new(n, m, k).unwrap()).unwrap());
            }
        }
    }
    out.push(direct_product(&cyclic(2), &cyclic(2)));
    out.push(direct_product(&cyclic(2), &direct_product(&cyclic(2), &cyclic(2))));
    out.push(direct_product(&cyclic(3), &cyclic(3)));
    out.push(nested_semidirect(3, 2, 2).unwrap());
    out
}

/// `count` seeded `(G, S)` pairs with `S ⊆ G \ {e}` nonempty.
pub fn random_pairs(count: usize) -> Vec<(FiniteGroup, GroupSubset)> {
    let groups = small_groups();
    let mut rng = rng();
    (0..count)
        .map(|_| {
            let g = groups[rng.gen_range(0..groups.len())].clone();
            let density: f64 = rng.gen_range(0.1..0.9);
            let mut s = GroupSubset::empty(g.order());
            for x in g.elements().filter(|&x| x != g.identity()) {
                if rng.gen_bool(density) {
                    s.insert(x);
                }
            }
            if s.is_empty() {
                s.insert(g.order() - 1);
            }
            (g, s)
        })
        .collect()
}
