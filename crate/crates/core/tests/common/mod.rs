#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tcbound_core::SimplicialComplex;

/// Random complex on at most 8 vertices with facets of dimension at most 3.
pub fn random_complex(rng: &mut ChaCha8Rng) -> SimplicialComplex {
    let n = rng.gen_range(1..=8usize);
    let facets = rng.gen_range(1..=6usize);
    let mut out: Vec<Vec<String>> = Vec::new();
    for _ in 0..facets {
        let size = rng.gen_range(1..=4usize.min(n));
        let mut f: Vec<usize> = Vec::new();
        while f.len() < size {
            let v = rng.gen_range(0..n);
            if !f.contains(&v) {
                f.push(v);
            }
        }
        out.push(f.into_iter().map(|v| format!("v{v}")).collect());
    }
    SimplicialComplex::from_facets(out).expect("random facets are valid")
}

pub fn random_complexes(seed: u64, count: usize) -> Vec<SimplicialComplex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_complex(&mut rng)).collect()
}
