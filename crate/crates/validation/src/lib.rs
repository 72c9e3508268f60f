//! Seeded random-state generators shared by the acceptance suite.

use entmoments::{states, CMatrix, Complex64, DensityMatrix, PureState};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform(g: &mut ChaCha8Rng) -> f64 {
    (g.next_u64() >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
}

pub fn below(g: &mut ChaCha8Rng, n: usize) -> usize {
    (g.next_u64() % n as u64) as usize
}

pub fn random_vector(g: &mut ChaCha8Rng, d: usize) -> Vec<Complex64> {
    (0..d).map(|_| Complex64::new(uniform(g), uniform(g))).collect()
}

pub fn random_mixed(g: &mut ChaCha8Rng, dims: &[usize], rank: usize) -> DensityMatrix {
    let p: usize = dims.iter().product();
    let m = CMatrix::from_fn(p, rank, |_, _| Complex64::new(uniform(g), uniform(g)));
    let rho = m.matmul(&m.adjoint()).unwrap();
    let tr = rho.trace().re;
    states::validate(rho.scale(1.0 / tr), dims, 1e-8).unwrap()
}

pub fn random_separable(g: &mut ChaCha8Rng, m: usize, n: usize, terms: usize) -> DensityMatrix {
    let mut w: Vec<f64> = (0..terms).map(|_| uniform(g).abs() + 1e-3).collect();
    let tot: f64 = w.iter().sum();
    w.iter_mut().for_each(|x| *x /= tot);
    let parts: Vec<DensityMatrix> = (0..terms)
        .map(|_| {
            PureState::product(&[random_vector(g, m), random_vector(g, n)])
                .unwrap()
                .to_density()
        })
        .collect();
    DensityMatrix::mixture(&w, &parts).unwrap()
}

pub fn random_hermitian(g: &mut ChaCha8Rng, n: usize) -> CMatrix {
    let a = CMatrix::from_fn(n, n, |_, _| Complex64::new(uniform(g), uniform(g)));
    a.add(&a.adjoint()).unwrap().scale(0.5 / (n as f64).sqrt())
}
