//! Seeded generators for randomized suites: Bernstein functions with
//! atomic-plus-tail Lévy measures, normal matrices with spectrum in a
//! prescribed sector, and the fixed non-normal fixtures with closed-form
//! oracles.

use alloc::sync::Arc;
use alloc::vec::Vec;
use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::bernstein::{BernsteinFn, LevyTriple};
use crate::linalg::CMatrix;
use crate::measure::{RadonMeasure, Tail};

/// Deterministic ChaCha8-backed sampler. Identical seeds give identical
/// streams on every platform.
pub struct SampleRng {
    rng: ChaCha8Rng,
}

impl SampleRng {
    pub fn new(seed: u64) -> Self {
        SampleRng {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Uniform in [0, 1) with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    pub fn log_range(&mut self, lo: f64, hi: f64) -> f64 {
        libm::exp(self.range(libm::log(lo), libm::log(hi)))
    }

    pub fn index(&mut self, n: usize) -> usize {
        (self.uniform() * n as f64) as usize % n
    }

    /// Standard complex Gaussian via Box-Muller.
    pub fn gaussian_c(&mut self) -> Complex64 {
        let u = 1.0 - self.uniform();
        let v = self.uniform();
        let r = libm::sqrt(-2.0 * libm::log(u));
        Complex64::from_polar(r, 2.0 * core::f64::consts::PI * v)
    }
}

/// Random Bernstein function in explicit Lévy form: drift and constant in
/// [0, 1], one to four atoms at log-uniform locations, and an exponential
/// tail half the time.
pub fn random_bernstein(rng: &mut SampleRng) -> BernsteinFn {
    let a = rng.uniform();
    let b = rng.uniform();
    let n_atoms = 1 + rng.index(4);
    let mut atoms = Vec::with_capacity(n_atoms);
    for _ in 0..n_atoms {
        let s = rng.log_range(1e-2, 1e2);
        let w = rng.range(1e-2, 1.0);
        atoms.push((s, w));
    }
    atoms.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    let mut tails = Vec::new();
    if rng.uniform() < 0.5 {
        tails.push(Tail {
            coeff: rng.range(0.1, 1.0),
            power: rng.range(-1.5, 0.0),
            rate: rng.range(0.5, 2.0),
            cut: 1.0,
        });
    }
    BernsteinFn::Levy(LevyTriple {
        a,
        b,
        measure: Arc::new(RadonMeasure {
            atoms,
            segments: Vec::new(),
            tails,
        }),
    })
}

/// Random normal matrix `U diag(λ) U*` with eigenvalues of log-uniform
/// modulus in [r_lo, r_hi] and arguments uniform in the open sector of the
/// given half-angle.
pub fn random_normal_sectorial(
    rng: &mut SampleRng,
    dim: usize,
    half_angle: f64,
    r_lo: f64,
    r_hi: f64,
) -> CMatrix {
    let margin = 1e-3;
    let mut eigs = Vec::with_capacity(dim);
    for _ in 0..dim {
        let r = rng.log_range(r_lo, r_hi);
        let th = rng.range(-(half_angle - margin), half_angle - margin);
        eigs.push(Complex64::from_polar(r, th));
    }
    let u = random_unitary(rng, dim);
    let mut d = CMatrix::zeros(dim);
    for (i, l) in eigs.iter().enumerate() {
        d[(i, i)] = *l;
    }
    u.matmul(&d).matmul(&u.adjoint())
}

/// Haar-ish random unitary by Gram-Schmidt on Gaussian columns.
pub fn random_unitary(rng: &mut SampleRng, dim: usize) -> CMatrix {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    for _ in 0..dim {
        loop {
            let mut v: Vec<Complex64> = (0..dim).map(|_| rng.gaussian_c()).collect();
            for c in &cols {
                let mut dot = Complex64::new(0.0, 0.0);
                for i in 0..dim {
                    dot += c[i].conj() * v[i];
                }
                for i in 0..dim {
                    v[i] -= dot * c[i];
                }
            }
            let nrm = libm::sqrt(v.iter().map(|x| x.norm_sqr()).sum());
            if nrm > 1e-6 {
                for x in v.iter_mut() {
                    *x /= nrm;
                }
                cols.push(v);
                break;
            }
        }
    }
    let mut u = CMatrix::zeros(dim);
    for (j, c) in cols.iter().enumerate() {
        for i in 0..dim {
            u[(i, j)] = c[i];
        }
    }
    u
}

/// The 2x2 non-normal fixtures used alongside the randomized normal pool;
/// both upper triangular, so their functions have closed forms.
pub fn nonnormal_fixtures() -> Vec<CMatrix> {
    let mut a = CMatrix::zeros(2);
    a[(0, 0)] = Complex64::new(1.0, 0.0);
    a[(0, 1)] = Complex64::new(1.0, 0.0);
    a[(1, 1)] = Complex64::new(2.0, 0.0);
    let mut b = CMatrix::zeros(2);
    b[(0, 0)] = Complex64::new(1.0, 0.0);
    b[(0, 1)] = Complex64::new(10.0, 0.0);
    b[(1, 1)] = Complex64::new(1.0, 0.0);
    alloc::vec![a, b]
}

/// `f(A)` for upper-triangular 2x2 `A` with distinct diagonal, by the
/// divided-difference formula; the oracle for the non-normal fixtures.
pub fn triangular_2x2_apply(
    f: &mut dyn FnMut(Complex64) -> Complex64,
    a: &CMatrix,
) -> CMatrix {
    let l0 = a[(0, 0)];
    let l1 = a[(1, 1)];
    let f0 = f(l0);
    let f1 = f(l1);
    let off = if (l1 - l0).norm() > 1e-9 {
        a[(0, 1)] * (f1 - f0) / (l1 - l0)
    } else {
        // confluent case: derivative by central difference
        let h = 1e-5 * (1.0 + l0.norm());
        a[(0, 1)] * (f(l0 + h) - f(l0 - h)) / (2.0 * h)
    };
    let mut out = CMatrix::zeros(2);
    out[(0, 0)] = f0;
    out[(0, 1)] = off;
    out[(1, 1)] = f1;
    out
}
