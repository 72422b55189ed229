//! Shared fixtures: seeded random axiom sets and small kernel helpers.
#![allow(dead_code)]

pub mod rules;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wkernel::check::{check_declarations, Context};
use wkernel::cover::{FiniteAxiomSet, Subset};
use wkernel::parse::parse_file;
use wkernel::syntax::Flags;

/// Seed of every randomized suite; printed by the tests that use it.
pub const SEED: u64 = 0x5eed_c0de;

pub fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ salt)
}

/// A random subset; each atom is a member with probability `p`.
pub fn random_subset(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Subset {
    Subset::from_bits((0..n).map(|_| rng.gen_bool(p)).collect())
}

/// A random axiom set on `n` atoms with up to three axioms per atom, whose
/// premise sets are small enough that covers are frequently non-trivial.
pub fn random_axiom_set(rng: &mut ChaCha8Rng, n: usize) -> FiniteAxiomSet {
    let mut ax = FiniteAxiomSet::with_size(n);
    for a in 0..n {
        for _ in 0..rng.gen_range(0..=3) {
            let premises = random_subset(rng, n, 0.35);
            ax.add_axiom(a, premises);
        }
    }
    ax
}

/// `count` random instances with carrier sizes drawn from `sizes`.
pub fn random_instances(
    salt: u64,
    count: usize,
    sizes: std::ops::RangeInclusive<usize>,
) -> Vec<(FiniteAxiomSet, Subset)> {
    let mut rng = rng(salt);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(sizes.clone());
            let ax = random_axiom_set(&mut rng, n);
            let v = random_subset(&mut rng, n, 0.3);
            (ax, v)
        })
        .collect()
}

/// Every axiom set on two atoms, up to the order and multiplicity of
/// axioms: each atom gets any set of the four possible premise sets.
pub fn all_two_atom_axiom_sets() -> Vec<FiniteAxiomSet> {
    let mut out = Vec::new();
    for choice_a in 0u32..16 {
        for choice_b in 0u32..16 {
            let mut ax = FiniteAxiomSet::with_size(2);
            for (atom, choice) in [(0, choice_a), (1, choice_b)] {
                for premises in 0u64..4 {
                    if choice >> premises & 1 == 1 {
                        ax.add_axiom(atom, Subset::from_mask(2, premises));
                    }
                }
            }
            out.push(ax);
        }
    }
    out
}

/// Check a source text from scratch, returning the resulting context.
pub fn check_source(src: &str, flags: Flags) -> Result<Context, String> {
    let decls = parse_file(src).map_err(|e| e.to_string())?;
    check_declarations(&Context::new(), &decls, flags).map_err(|e| e.to_string())
}
