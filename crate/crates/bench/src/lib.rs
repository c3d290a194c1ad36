//! Benchmark fixtures.

use skewdet::sample::{self, Genes, Instance};
use skewdet::OreMatrix;

/// Seeded random n×n matrices with entries of degree at most `max_deg`.
pub fn matrices(inst: &Instance, count: usize, n: usize, max_deg: usize) -> Vec<OreMatrix> {
    let mut rng = sample::rng(0, &format!("bench/{}", inst.name));
    (0..count)
        .map(|_| {
            let g = sample::random_genome(&mut rng, 400);
            sample::ore_matrix_of_size(&inst.ring, n, max_deg, &mut Genes::new(&g))
        })
        .collect()
}

pub fn instances() -> Vec<Instance> {
    let mut v = sample::twisted_instances();
    v.extend(sample::commutative_instances());
    v
}
