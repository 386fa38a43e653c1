//! Dense complex linear algebra: LU with partial pivoting, Hessenberg
//! reduction, the shifted-QR Schur decomposition, a Padé scaling-and-squaring
//! matrix exponential, and spectral norms.
//!
//! Dimensions stay small (the calculi cap out at 64), so everything is
//! written for clarity over blocking.

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::quad::QuadVec;

type C = Complex64;

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<C>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LinalgError {
    Singular,
    NoConvergence { what: &'static str },
    DimensionMismatch,
    NotNormal { commutator: f64 },
}

impl core::fmt::Display for LinalgError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            LinalgError::Singular => write!(f, "matrix is singular to working precision"),
            LinalgError::NoConvergence { what } => write!(f, "iteration failed to converge: {what}"),
            LinalgError::DimensionMismatch => write!(f, "dimension mismatch"),
            LinalgError::NotNormal { commutator } => {
                write!(f, "matrix is not normal (commutator norm {commutator:.3e})")
            }
        }
    }
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        CMatrix {
            n,
            data: alloc::vec![c(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = c(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<C>]) -> Result<Self, LinalgError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(LinalgError::DimensionMismatch);
        }
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            data.extend_from_slice(r);
        }
        Ok(CMatrix { n, data })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn data(&self) -> &[C] {
        &self.data
    }

    pub fn scale(&self, s: C) -> CMatrix {
        let mut out = self.clone();
        for v in &mut out.data {
            *v *= s;
        }
        out
    }

    pub fn add(&self, other: &CMatrix) -> CMatrix {
        debug_assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, other: &CMatrix) -> CMatrix {
        debug_assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a -= b;
        }
        out
    }

    /// `self + s I`
    pub fn add_scalar_diag(&self, s: C) -> CMatrix {
        let mut out = self.clone();
        for i in 0..self.n {
            out[(i, i)] += s;
        }
        out
    }

    pub fn matmul(&self, other: &CMatrix) -> CMatrix {
        debug_assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == c(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> CMatrix {
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        out
    }

    pub fn fro_norm(&self) -> f64 {
        let mut s = 0.0;
        for v in &self.data {
            s += v.norm_sqr();
        }
        libm::sqrt(s)
    }

    pub fn one_norm(&self) -> f64 {
        let n = self.n;
        let mut best = 0.0_f64;
        for j in 0..n {
            let mut s = 0.0;
            for i in 0..n {
                s += self.data[i * n + j].norm();
            }
            best = libm::fmax(best, s);
        }
        best
    }

    /// Operator 2-norm by power iteration on `AᴴA`.
    pub fn spectral_norm(&self) -> f64 {
        let n = self.n;
        if n == 0 {
            return 0.0;
        }
        let aha = self.adjoint().matmul(self);
        // deterministic start vector with incommensurate phases
        let mut v: Vec<C> = (0..n)
            .map(|i| C::from_polar(1.0 + i as f64 * 0.125, 0.7 * i as f64))
            .collect();
        normalize(&mut v);
        let mut lam = 0.0_f64;
        for _ in 0..500 {
            let w = matvec(&aha, &v);
            let new_lam = libm::sqrt(w.iter().map(|x| x.norm_sqr()).sum::<f64>());
            if new_lam == 0.0 {
                return 0.0;
            }
            v = w;
            normalize(&mut v);
            if libm::fabs(new_lam - lam) <= 1e-14 * new_lam {
                lam = new_lam;
                break;
            }
            lam = new_lam;
        }
        libm::sqrt(lam)
    }

    /// `‖AᴴA - AAᴴ‖_F`, zero iff normal.
    pub fn normality_defect(&self) -> f64 {
        let a = self.adjoint().matmul(self);
        let b = self.matmul(&self.adjoint());
        a.sub(&b).fro_norm()
    }

    pub fn lu(&self) -> Result<Lu, LinalgError> {
        Lu::factor(self)
    }

    pub fn inverse(&self) -> Result<CMatrix, LinalgError> {
        self.lu()?.solve_mat(&CMatrix::identity(self.n))
    }
}

impl core::ops::Index<(usize, usize)> for CMatrix {
    type Output = C;
    fn index(&self, (i, j): (usize, usize)) -> &C {
        &self.data[i * self.n + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C {
        &mut self.data[i * self.n + j]
    }
}

impl QuadVec for CMatrix {
    fn zero_like(&self) -> Self {
        CMatrix::zeros(self.n)
    }
    fn axpy(&mut self, w: f64, v: &Self) {
        for (a, b) in self.data.iter_mut().zip(v.data.iter()) {
            *a += w * b;
        }
    }
    fn sub_inplace(&mut self, v: &Self) {
        for (a, b) in self.data.iter_mut().zip(v.data.iter()) {
            *a -= b;
        }
    }
    fn norm(&self) -> f64 {
        self.fro_norm()
    }
}

fn matvec(m: &CMatrix, v: &[C]) -> Vec<C> {
    let n = m.n;
    let mut out = alloc::vec![c(0.0, 0.0); n];
    for i in 0..n {
        let mut s = c(0.0, 0.0);
        for j in 0..n {
            s += m.data[i * n + j] * v[j];
        }
        out[i] = s;
    }
    out
}

fn normalize(v: &mut [C]) {
    let n = libm::sqrt(v.iter().map(|x| x.norm_sqr()).sum::<f64>());
    if n > 0.0 {
        for x in v {
            *x /= n;
        }
    }
}

/// LU factorization with partial pivoting.
pub struct Lu {
    n: usize,
    lu: Vec<C>,
    piv: Vec<usize>,
    pub smallest_pivot: f64,
}

impl Lu {
    pub fn factor(a: &CMatrix) -> Result<Self, LinalgError> {
        let n = a.n;
        let mut lu = a.data.clone();
        let mut piv: Vec<usize> = (0..n).collect();
        let mut smallest = f64::INFINITY;
        for k in 0..n {
            let mut p = k;
            let mut best = lu[k * n + k].norm();
            for i in (k + 1)..n {
                let v = lu[i * n + k].norm();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if best == 0.0 {
                return Err(LinalgError::Singular);
            }
            smallest = libm::fmin(smallest, best);
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                piv.swap(k, p);
            }
            let pivot = lu[k * n + k];
            for i in (k + 1)..n {
                let m = lu[i * n + k] / pivot;
                lu[i * n + k] = m;
                for j in (k + 1)..n {
                    let t = m * lu[k * n + j];
                    lu[i * n + j] -= t;
                }
            }
        }
        Ok(Lu {
            n,
            lu,
            piv,
            smallest_pivot: smallest,
        })
    }

    pub fn solve_vec(&self, b: &[C]) -> Vec<C> {
        let n = self.n;
        let mut x: Vec<C> = (0..n).map(|i| b[self.piv[i]]).collect();
        for i in 1..n {
            for j in 0..i {
                let t = self.lu[i * n + j] * x[j];
                x[i] -= t;
            }
        }
        for i in (0..n).rev() {
            for j in (i + 1)..n {
                let t = self.lu[i * n + j] * x[j];
                x[i] -= t;
            }
            x[i] /= self.lu[i * n + i];
        }
        x
    }

    pub fn solve_mat(&self, b: &CMatrix) -> Result<CMatrix, LinalgError> {
        if b.n != self.n {
            return Err(LinalgError::DimensionMismatch);
        }
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        let mut col = alloc::vec![c(0.0, 0.0); n];
        for j in 0..n {
            for i in 0..n {
                col[i] = b.data[i * n + j];
            }
            let x = self.solve_vec(&col);
            for i in 0..n {
                out.data[i * n + j] = x[i];
            }
        }
        Ok(out)
    }
}

/// Schur decomposition `A = Q T Qᴴ` with Q unitary and T upper triangular.
pub struct Schur {
    pub q: CMatrix,
    pub t: CMatrix,
}

impl Schur {
    pub fn eigenvalues(&self) -> Vec<C> {
        (0..self.t.n).map(|i| self.t[(i, i)]).collect()
    }

    /// Largest off-diagonal magnitude of T relative to ‖T‖_F.
    pub fn triangular_defect(&self) -> f64 {
        let n = self.t.n;
        let mut worst = 0.0_f64;
        for i in 1..n {
            for j in 0..i {
                worst = libm::fmax(worst, self.t[(i, j)].norm());
            }
        }
        worst / libm::fmax(self.t.fro_norm(), 1e-300)
    }
}

/// Hessenberg reduction by Householder reflectors: `A = Q H Qᴴ`.
fn hessenberg(a: &CMatrix) -> (CMatrix, CMatrix) {
    let n = a.n;
    let mut h = a.clone();
    let mut q = CMatrix::identity(n);
    for k in 0..n.saturating_sub(2) {
        // reflector zeroing h[k+2.., k]
        let mut x: Vec<C> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let xn = libm::sqrt(x.iter().map(|v| v.norm_sqr()).sum::<f64>());
        if xn == 0.0 {
            continue;
        }
        let phase = if x[0].norm() > 0.0 {
            x[0] / x[0].norm()
        } else {
            c(1.0, 0.0)
        };
        let alpha = -phase * xn;
        x[0] -= alpha;
        let vn2 = x.iter().map(|v| v.norm_sqr()).sum::<f64>();
        if vn2 == 0.0 {
            continue;
        }
        // H := (I - 2 v vᴴ / ‖v‖²) applied from both sides
        // rows k+1.. of columns k..
        for j in k..n {
            let mut s = c(0.0, 0.0);
            for i in 0..x.len() {
                s += x[i].conj() * h[(k + 1 + i, j)];
            }
            s *= 2.0 / vn2;
            for i in 0..x.len() {
                let t = s * x[i];
                h[(k + 1 + i, j)] -= t;
            }
        }
        // columns k+1.. of all rows
        for i in 0..n {
            let mut s = c(0.0, 0.0);
            for j in 0..x.len() {
                s += h[(i, k + 1 + j)] * x[j];
            }
            s *= 2.0 / vn2;
            for j in 0..x.len() {
                let t = s * x[j].conj();
                h[(i, k + 1 + j)] -= t;
            }
        }
        for i in 0..n {
            let mut s = c(0.0, 0.0);
            for j in 0..x.len() {
                s += q.data[i * n + (k + 1 + j)] * x[j];
            }
            s *= 2.0 / vn2;
            for j in 0..x.len() {
                let t = s * x[j].conj();
                q[(i, k + 1 + j)] -= t;
            }
        }
        // clean the column below the subdiagonal
        h[(k + 1, k)] = alpha;
        for i in (k + 2)..n {
            h[(i, k)] = c(0.0, 0.0);
        }
    }
    (q, h)
}

struct Givens {
    cc: f64,
    s: C,
}

fn make_givens(a: C, b: C) -> (Givens, C) {
    if b.norm() == 0.0 {
        return (Givens { cc: 1.0, s: c(0.0, 0.0) }, a);
    }
    if a.norm() == 0.0 {
        let s = b.conj() / b.norm();
        return (Givens { cc: 0.0, s }, c(b.norm(), 0.0));
    }
    let t = libm::sqrt(a.norm_sqr() + b.norm_sqr());
    let cc = a.norm() / t;
    let s = (a / a.norm()) * b.conj() / t;
    let r = (a / a.norm()) * t;
    (Givens { cc, s }, r)
}

/// Complex Schur form by explicit single-shift QR with deflation.
pub fn schur(a: &CMatrix) -> Result<Schur, LinalgError> {
    let n = a.n;
    if n == 0 {
        return Ok(Schur {
            q: CMatrix::zeros(0),
            t: CMatrix::zeros(0),
        });
    }
    let (mut q, mut h) = hessenberg(a);
    let scale = libm::fmax(h.fro_norm(), 1e-300);
    let tol = 1e-15 * scale;
    let mut hi = n; // active block is 0..hi
    let mut iters_this_block = 0usize;
    let mut total_iters = 0usize;
    let max_total = 60 * n * n + 200;
    while hi > 1 {
        // deflate converged subdiagonal entries
        let mut deflated = false;
        for i in (1..hi).rev() {
            let v = h[(i, i - 1)].norm();
            if v <= tol || v <= 1e-15 * (h[(i - 1, i - 1)].norm() + h[(i, i)].norm()) {
                h[(i, i - 1)] = c(0.0, 0.0);
                if i == hi - 1 {
                    hi -= 1;
                    iters_this_block = 0;
                    deflated = true;
                    break;
                }
            }
        }
        if deflated {
            continue;
        }
        // find the start of the trailing unreduced block
        let mut lo = hi - 1;
        while lo > 0 && h[(lo, lo - 1)].norm() > 0.0 {
            lo -= 1;
        }
        total_iters += 1;
        iters_this_block += 1;
        if total_iters > max_total {
            return Err(LinalgError::NoConvergence { what: "QR iteration" });
        }
        // Wilkinson shift from the trailing 2x2, with an occasional
        // exceptional shift to break symmetric stalls
        let m = hi - 1;
        let mut mu = h[(m, m)];
        if hi - lo >= 2 {
            let a11 = h[(m - 1, m - 1)];
            let a12 = h[(m - 1, m)];
            let a21 = h[(m, m - 1)];
            let a22 = h[(m, m)];
            let tr = a11 + a22;
            let det = a11 * a22 - a12 * a21;
            let disc = (tr * tr - 4.0 * det).sqrt();
            let r1 = 0.5 * (tr + disc);
            let r2 = 0.5 * (tr - disc);
            mu = if (r1 - a22).norm() < (r2 - a22).norm() {
                r1
            } else {
                r2
            };
        }
        if iters_this_block % 12 == 0 {
            mu = h[(m, m)] + c(1.5 * h[(m, m - 1)].norm(), 0.5 * h[(m, m - 1)].norm());
        }
        // explicit QR step on the active block [lo, hi)
        let mut rots: Vec<Givens> = Vec::with_capacity(hi - lo);
        for i in lo..hi {
            h[(i, i)] -= mu;
        }
        for k in lo..(hi - 1) {
            let (g, r) = make_givens(h[(k, k)], h[(k + 1, k)]);
            h[(k, k)] = r;
            h[(k + 1, k)] = c(0.0, 0.0);
            for j in (k + 1)..n {
                let x = h[(k, j)];
                let y = h[(k + 1, j)];
                h[(k, j)] = g.cc * x + g.s * y;
                h[(k + 1, j)] = -g.s.conj() * x + g.cc * y;
            }
            rots.push(g);
        }
        // multiply by the adjoint rotations on the right, accumulate Q
        for (idx, g) in rots.iter().enumerate() {
            let k = lo + idx;
            for i in 0..(k + 2).min(n) {
                let x = h[(i, k)];
                let y = h[(i, k + 1)];
                h[(i, k)] = g.cc * x + g.s.conj() * y;
                h[(i, k + 1)] = -g.s * x + g.cc * y;
            }
            for i in 0..n {
                let x = q[(i, k)];
                let y = q[(i, k + 1)];
                q[(i, k)] = g.cc * x + g.s.conj() * y;
                q[(i, k + 1)] = -g.s * x + g.cc * y;
            }
        }
        for i in lo..hi {
            h[(i, i)] += mu;
        }
    }
    // zero the strictly lower part (numerical dust)
    for i in 1..n {
        for j in 0..i {
            h[(i, j)] = c(0.0, 0.0);
        }
    }
    Ok(Schur { q, t: h })
}

/// Eigenvalues (no vectors) of a general matrix.
pub fn eigenvalues(a: &CMatrix) -> Result<Vec<C>, LinalgError> {
    Ok(schur(a)?.eigenvalues())
}

/// Matrix exponential by Padé-13 scaling and squaring.
pub fn expm(a: &CMatrix) -> CMatrix {
    const THETA13: f64 = 5.371_920_351_148_152;
    const B: [f64; 14] = [
        64764752532480000.0,
        32382376266240000.0,
        7771770303897600.0,
        1187353796428800.0,
        129060195264000.0,
        10559470521600.0,
        670442572800.0,
        33522128640.0,
        1323241920.0,
        40840800.0,
        960960.0,
        16380.0,
        182.0,
        1.0,
    ];
    let n = a.n;
    let norm = a.one_norm();
    let s = if norm > THETA13 {
        libm::ceil(libm::log2(norm / THETA13)) as i32
    } else {
        0
    };
    let a1 = a.scale(c(libm::pow(2.0, -s as f64), 0.0));
    let a2 = a1.matmul(&a1);
    let a4 = a2.matmul(&a2);
    let a6 = a2.matmul(&a4);
    let ident = CMatrix::identity(n);
    // U = A (A6 (b13 A6 + b11 A4 + b9 A2) + b7 A6 + b5 A4 + b3 A2 + b1 I)
    let w1 = a6
        .scale(c(B[13], 0.0))
        .add(&a4.scale(c(B[11], 0.0)))
        .add(&a2.scale(c(B[9], 0.0)));
    let w2 = a6
        .scale(c(B[7], 0.0))
        .add(&a4.scale(c(B[5], 0.0)))
        .add(&a2.scale(c(B[3], 0.0)))
        .add(&ident.scale(c(B[1], 0.0)));
    let u = a1.matmul(&a6.matmul(&w1).add(&w2));
    // V = A6 (b12 A6 + b10 A4 + b8 A2) + b6 A6 + b4 A4 + b2 A2 + b0 I
    let z1 = a6
        .scale(c(B[12], 0.0))
        .add(&a4.scale(c(B[10], 0.0)))
        .add(&a2.scale(c(B[8], 0.0)));
    let z2 = a6
        .scale(c(B[6], 0.0))
        .add(&a4.scale(c(B[4], 0.0)))
        .add(&a2.scale(c(B[2], 0.0)))
        .add(&ident.scale(c(B[0], 0.0)));
    let v = a6.matmul(&z1).add(&z2);
    // r = (V - U)^{-1} (V + U)
    let vm_u = v.sub(&u);
    let vp_u = v.add(&u);
    let mut r = vm_u
        .lu()
        .and_then(|lu| lu.solve_mat(&vp_u))
        .unwrap_or_else(|_| CMatrix::identity(n));
    for _ in 0..s {
        r = r.matmul(&r);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture(n: usize, seed: u64) -> CMatrix {
        // deterministic pseudo-random entries from a splitmix stream
        let mut state = seed;
        let mut next = move || {
            state = state.wrapping_add(0x9E3779B97F4A7C15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
            ((z ^ (z >> 31)) >> 11) as f64 * (1.0 / (1u64 << 53) as f64) - 0.5
        };
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = c(next(), next());
            }
        }
        m
    }

    #[test]
    fn lu_solves_linear_systems() {
        let a = fixture(6, 7);
        let lu = a.lu().unwrap();
        let b: Vec<C> = (0..6).map(|i| c(i as f64, -(i as f64) * 0.5)).collect();
        let x = lu.solve_vec(&b);
        let ax = matvec(&a, &x);
        for i in 0..6 {
            assert!((ax[i] - b[i]).norm() < 1e-12);
        }
        let inv = a.inverse().unwrap();
        let prod = a.matmul(&inv);
        assert!(prod.sub(&CMatrix::identity(6)).fro_norm() < 1e-12);
    }

    #[test]
    fn schur_reconstructs_and_triangularizes() {
        for seed in [1u64, 2, 3, 11] {
            let a = fixture(8, seed);
            let s = schur(&a).unwrap();
            // unitarity
            let qhq = s.q.adjoint().matmul(&s.q);
            assert!(qhq.sub(&CMatrix::identity(8)).fro_norm() < 1e-12, "seed {seed}");
            // reconstruction
            let rec = s.q.matmul(&s.t).matmul(&s.q.adjoint());
            let err = rec.sub(&a).fro_norm() / a.fro_norm();
            assert!(err < 1e-12, "seed {seed}: reconstruction error {err}");
            // eigenvalue sum equals trace
            let tr: C = (0..8).map(|i| a[(i, i)]).fold(c(0.0, 0.0), |x, y| x + y);
            let es: C = s.eigenvalues().iter().fold(c(0.0, 0.0), |x, y| x + *y);
            assert!((tr - es).norm() < 1e-10, "seed {seed}");
        }
    }

    #[test]
    fn schur_of_known_triangular_matrix() {
        let a = CMatrix::from_rows(&[
            alloc::vec![c(1.0, 0.0), c(1.0, 0.0)],
            alloc::vec![c(0.0, 0.0), c(2.0, 0.0)],
        ])
        .unwrap();
        let mut eig = eigenvalues(&a).unwrap();
        eig.sort_by(|x, y| x.re.partial_cmp(&y.re).unwrap());
        assert!((eig[0] - 1.0).norm() < 1e-13);
        assert!((eig[1] - 2.0).norm() < 1e-13);
    }

    #[test]
    fn expm_matches_diagonal_and_nilpotent_cases() {
        // diagonal
        let a = CMatrix::from_rows(&[
            alloc::vec![c(1.0, 0.5), c(0.0, 0.0)],
            alloc::vec![c(0.0, 0.0), c(-2.0, 0.0)],
        ])
        .unwrap();
        let e = expm(&a);
        assert!((e[(0, 0)] - c(1.0, 0.5).exp()).norm() < 1e-13);
        assert!((e[(1, 1)] - c(-2.0, 0.0).exp()).norm() < 1e-14);
        assert!(e[(0, 1)].norm() < 1e-14 && e[(1, 0)].norm() < 1e-14);
        // nilpotent: exp([[0,1],[0,0]]) = [[1,1],[0,1]]
        let nl = CMatrix::from_rows(&[
            alloc::vec![c(0.0, 0.0), c(1.0, 0.0)],
            alloc::vec![c(0.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        let e = expm(&nl);
        assert!((e[(0, 1)] - 1.0).norm() < 1e-14);
        // large norm exercises the squaring phase: exp(diag) again
        let a = CMatrix::from_rows(&[
            alloc::vec![c(-30.0, 7.0), c(0.0, 0.0)],
            alloc::vec![c(0.0, 0.0), c(-1.0, 0.0)],
        ])
        .unwrap();
        let e = expm(&a);
        assert!((e[(0, 0)] - c(-30.0, 7.0).exp()).norm() < 1e-13);
    }

    #[test]
    fn expm_semigroup_property() {
        let a = fixture(5, 21);
        let e1 = expm(&a);
        let half = expm(&a.scale(c(0.5, 0.0)));
        let err = half.matmul(&half).sub(&e1).fro_norm() / e1.fro_norm();
        assert!(err < 1e-12, "err {err}");
    }

    #[test]
    fn spectral_norm_matches_known_values() {
        // diag(3, -4i) has norm 4
        let a = CMatrix::from_rows(&[
            alloc::vec![c(3.0, 0.0), c(0.0, 0.0)],
            alloc::vec![c(0.0, 0.0), c(0.0, -4.0)],
        ])
        .unwrap();
        assert!((a.spectral_norm() - 4.0).abs() < 1e-10);
        // rank-1: [[0, 5], [0, 0]] has norm 5
        let b = CMatrix::from_rows(&[
            alloc::vec![c(0.0, 0.0), c(5.0, 0.0)],
            alloc::vec![c(0.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        assert!((b.spectral_norm() - 5.0).abs() < 1e-10);
    }

    #[test]
    fn normality_defect_flags_non_normal() {
        let a = CMatrix::from_rows(&[
            alloc::vec![c(1.0, 0.0), c(10.0, 0.0)],
            alloc::vec![c(0.0, 0.0), c(1.0, 0.0)],
        ])
        .unwrap();
        assert!(a.normality_defect() > 1.0);
        let h = CMatrix::from_rows(&[
            alloc::vec![c(2.0, 0.0), c(1.0, 1.0)],
            alloc::vec![c(1.0, -1.0), c(3.0, 0.0)],
        ])
        .unwrap();
        assert!(h.normality_defect() < 1e-14);
    }
}
