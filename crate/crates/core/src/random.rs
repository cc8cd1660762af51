//! Seeded random functionals and parameters for verification sweeps.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::moments::MomentFunctional;
use crate::ring::{RingMatrix, Scalar};

pub type SweepRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SweepRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn nonzero(rng: &mut SweepRng, bound: i64) -> i64 {
    loop {
        let v = rng.gen_range(-bound..=bound);
        if v != 0 {
            return v;
        }
    }
}

fn hankels_nonzero<K: Scalar>(f: &MomentFunctional<K>, upto: usize) -> bool {
    (1..=upto).all(|j| f.hankel_det(j).is_ok_and(|h| !h.is_zero()))
}

/// `atoms` distinct integer nodes in `[-9, 9]` with nonzero integer weights
/// in `[-9, 9]`, redrawn until `H(1), ..., H(atoms)` are all nonzero.
pub fn atom_functional<K: Scalar>(rng: &mut SweepRng, atoms: usize) -> Arc<MomentFunctional<K>> {
    assert!(atoms <= 19, "only 19 integer nodes in [-9, 9]");
    let pool: Vec<i64> = (-9..=9).collect();
    loop {
        let nodes: Vec<i64> = pool.choose_multiple(rng, atoms).copied().collect();
        let atoms = nodes
            .iter()
            .map(|&u| (K::from_i64(u).expect("small"), K::from_i64(nonzero(rng, 9)).expect("small")))
            .collect();
        let f = MomentFunctional::finite_atom(atoms).expect("distinct nodes, nonzero weights");
        if hankels_nonzero(&f, f.atoms().map_or(0, <[_]>::len)) {
            return Arc::new(f);
        }
    }
}

/// `len` integer moments in `[-9, 9]`, redrawn until `H(1), ..., H(hankel)`
/// are all nonzero.
pub fn sequence_functional<K: Scalar>(rng: &mut SweepRng, len: usize, hankel: usize) -> Arc<MomentFunctional<K>> {
    loop {
        let moments = (0..len).map(|_| K::from_i64(rng.gen_range(-9..=9)).expect("small")).collect();
        let f = MomentFunctional::sequence(moments);
        if hankels_nonzero(&f, hankel) {
            return Arc::new(f);
        }
    }
}

/// `count` pairwise distinct rationals `p/q` with `|p| <= 20`, `1 <= q <= 3`,
/// none equal to an entry of `avoid`.
pub fn params<K: Scalar>(rng: &mut SweepRng, count: usize, avoid: &[K]) -> Vec<K> {
    let mut out: Vec<K> = Vec::with_capacity(count);
    while out.len() < count {
        let v = K::from_ratio(rng.gen_range(-20..=20), rng.gen_range(1..=3));
        if !avoid.contains(&v) && !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

pub fn integers<K: Scalar>(rng: &mut SweepRng, len: usize, bound: i64) -> Vec<K> {
    (0..len).map(|_| K::from_i64(rng.gen_range(-bound..=bound)).expect("small")).collect()
}

/// Square matrix with entries `p/q`, `|p| <= 9`, `1 <= q <= 4`.
pub fn matrix<K: Scalar>(rng: &mut SweepRng, n: usize) -> RingMatrix<K> {
    RingMatrix::from_fn(n, n, |_, _| K::from_ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4)))
}
