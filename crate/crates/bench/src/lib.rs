//! Inputs shared by the benchmarks.

use heis_core::classify::{finite_labels, representative};
use heis_core::exterior::act_subspace;
use heis_core::{Field, Matrix, Subspace};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(1)
}

pub fn random_gl4<F: Field>(f: &F, rng: &mut ChaCha8Rng) -> Matrix<F> {
    loop {
        let a = Matrix::from_fn(4, 4, |_, _| f.random(rng));
        if a.is_invertible(f) {
            return a;
        }
    }
}

/// One random image of every orbit representative of a finite field.
pub fn moved_kernels<F: Field>(f: &F, rng: &mut ChaCha8Rng) -> Vec<Subspace<F>> {
    finite_labels(f)
        .expect("finite field")
        .iter()
        .map(|l| act_subspace(f, &random_gl4(f, rng), &representative(f, l)).expect("invertible"))
        .collect()
}
