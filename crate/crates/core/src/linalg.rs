//! Dense complex linear algebra for one- and two-qubit Hilbert spaces.
//!
//! Matrices are stored row-major. Two-qubit basis states are indexed as
//! `b = 2·k_A + k_B`, so qubit A is the most significant bit everywhere in
//! this crate.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Maximum number of cyclic Jacobi sweeps before giving up.
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Off-diagonal Frobenius threshold (relative to `max(1, ‖H‖_F)`) at which
/// the Jacobi iteration is considered converged.
pub const JACOBI_TOLERANCE: f64 = 1e-14;
/// Tolerance on `|H − H†|` entries accepted as Hermitian.
pub const HERMITIAN_TOLERANCE: f64 = 1e-12;
/// Tolerance on norms and traces of states.
pub const STATE_TOLERANCE: f64 = 1e-10;

#[derive(Clone, PartialEq)]
pub struct ComplexVector {
    entries: Vec<C64>,
}

impl ComplexVector {
    pub fn new(entries: Vec<C64>) -> Self {
        assert!(!entries.is_empty(), "vector must have positive dimension");
        Self { entries }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::new(vec![ZERO; dim])
    }

    /// Computational basis vector `|index⟩`.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(index < dim, "basis index {index} out of range for dimension {dim}");
        let mut v = Self::zeros(dim);
        v.entries[index] = ONE;
        v
    }

    pub fn from_real(values: &[f64]) -> Self {
        Self::new(values.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn norm_sqr(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `⟨self|other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &ComplexVector) -> C64 {
        assert_eq!(self.dim(), other.dim());
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Projector `|self⟩⟨self|`.
    pub fn outer(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut m = ComplexMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                m[(r, c)] = self.entries[r] * self.entries[c].conj();
            }
        }
        m
    }

    pub fn check_normalized(&self) -> Result<()> {
        let norm_sqr = self.norm_sqr();
        if (norm_sqr - 1.0).abs() > STATE_TOLERANCE {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(())
    }
}

impl Index<usize> for ComplexVector {
    type Output = C64;
    fn index(&self, i: usize) -> &C64 {
        &self.entries[i]
    }
}

impl fmt::Debug for ComplexVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.entries).finish()
    }
}

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix must have positive shape");
        Self {
            rows,
            cols,
            entries: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    /// Builds a matrix from row-major entries.
    pub fn from_vec(rows: usize, cols: usize, entries: Vec<C64>) -> Self {
        assert_eq!(rows * cols, entries.len(), "entry count must equal rows·cols");
        assert!(rows > 0 && cols > 0, "matrix must have positive shape");
        Self { rows, cols, entries }
    }

    pub fn from_rows<const N: usize>(rows: [[C64; N]; N]) -> Self {
        Self::from_vec(N, N, rows.into_iter().flatten().collect())
    }

    pub fn from_real_rows<const N: usize>(rows: [[f64; N]; N]) -> Self {
        Self::from_vec(
            N,
            N,
            rows.into_iter().flatten().map(|x| C64::new(x, 0.0)).collect(),
        )
    }

    pub fn diagonal(values: &[C64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn column(&self, c: usize) -> ComplexVector {
        ComplexVector::new((0..self.rows).map(|r| self[(r, c)]).collect())
    }

    pub fn dagger(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m[(c, r)] = self[(r, c)].conj();
            }
        }
        m
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn trace(&self) -> C64 {
        assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn apply(&self, v: &ComplexVector) -> ComplexVector {
        assert_eq!(self.cols, v.dim(), "matrix-vector shape mismatch");
        ComplexVector::new(
            (0..self.rows)
                .map(|r| {
                    self.entries[r * self.cols..(r + 1) * self.cols]
                        .iter()
                        .zip(v.entries())
                        .map(|(a, b)| a * b)
                        .sum()
                })
                .collect(),
        )
    }

    /// Largest entrywise deviation `|M_rc − conj(M_cr)|`.
    pub fn hermitian_deviation(&self) -> f64 {
        assert!(self.is_square());
        let mut worst: f64 = 0.0;
        for r in 0..self.rows {
            for c in r..self.cols {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }

    pub fn check_hermitian(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let deviation = self.hermitian_deviation();
        if deviation > HERMITIAN_TOLERANCE * self.max_abs().max(1.0) {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(())
    }

    /// `‖M†M − I‖_F`.
    pub fn unitarity_residual(&self) -> f64 {
        (&(&self.dagger() * self) - &Self::identity(self.cols)).frobenius_norm()
    }

    pub fn check_unitary(&self, tolerance: f64) -> Result<()> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let residual = self.unitarity_residual();
        if residual >= tolerance {
            return Err(Error::NotUnitary { residual });
        }
        Ok(())
    }

    /// Frobenius distance after removing the best global phase between the
    /// two operators.
    pub fn phase_aligned_distance(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let overlap: C64 = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.conj() * b)
            .sum();
        let phase = if overlap.norm() > 0.0 {
            overlap / overlap.norm()
        } else {
            ONE
        };
        (&self.scale(phase) - other).frobenius_norm()
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        debug_assert!(r < self.rows && c < self.cols);
        &self.entries[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.entries[r * self.cols + c]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == ZERO {
                    continue;
                }
                for c in 0..rhs.cols {
                    out.entries[r * rhs.cols + c] += a * rhs[(k, c)];
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|c| {
                    let z = self[(r, c)];
                    format!("{:+.6}{:+.6}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  {}", row.join("  "))?;
        }
        write!(f, "]")
    }
}

/// Eigenvalues (ascending) and the unitary whose columns are the matching
/// eigenvectors.
#[derive(Debug, Clone)]
pub struct Eigendecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl Eigendecomposition {
    /// `V diag(λ) V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let d: Vec<C64> = self.eigenvalues.iter().map(|&x| C64::new(x, 0.0)).collect();
        &(&self.eigenvectors * &ComplexMatrix::diagonal(&d)) * &self.eigenvectors.dagger()
    }

    /// `V diag(f(λ)) V†`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> C64) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        let fl: Vec<C64> = self.eigenvalues.iter().map(|&x| f(x)).collect();
        let mut out = ComplexMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                out[(r, c)] = (0..n).map(|k| v[(r, k)] * fl[k] * v[(c, k)].conj()).sum();
            }
        }
        out
    }
}

/// Diagonalizes a Hermitian matrix with cyclic complex Jacobi rotations.
pub fn hermitian_eigendecomposition(h: &ComplexMatrix) -> Result<Eigendecomposition> {
    h.check_hermitian()?;
    let n = h.rows();
    let mut a = h.clone();
    // Symmetrize so roundoff in the input cannot bias the rotations.
    for r in 0..n {
        a[(r, r)] = C64::new(a[(r, r)].re, 0.0);
        for c in r + 1..n {
            let avg = (a[(r, c)] + a[(c, r)].conj()) * 0.5;
            a[(r, c)] = avg;
            a[(c, r)] = avg.conj();
        }
    }
    let mut v = ComplexMatrix::identity(n);
    let threshold = JACOBI_TOLERANCE * h.frobenius_norm().max(1.0);

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) < threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&a) >= threshold {
        return Err(Error::NoConvergence {
            sweeps: JACOBI_MAX_SWEEPS,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        for r in 0..n {
            eigenvectors[(r, dst)] = v[(r, src)];
        }
    }
    Ok(Eigendecomposition {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                sum += a[(r, c)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// One Jacobi step zeroing `a[p][q]`. The rotation is `W = P·G` where
/// `P = diag(1, e^{-iφ})` makes the pivot real and `G` is the real Givens
/// rotation diagonalizing the resulting 2×2 block.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let b = apq.norm();
    if b == 0.0 {
        return;
    }
    let phase = (apq / b).conj();
    let theta = 0.5 * (2.0 * b).atan2(a[(p, p)].re - a[(q, q)].re);
    let (s, c) = theta.sin_cos();
    let n = a.rows();

    // A ← A·W, V ← V·W (columns p and q).
    for m in [&mut *a, &mut *v] {
        for k in 0..n {
            let xp = m[(k, p)];
            let xq = m[(k, q)] * phase;
            m[(k, p)] = xp * c + xq * s;
            m[(k, q)] = xq * c - xp * s;
        }
    }
    // A ← W†·A (rows p and q).
    let phase_conj = phase.conj();
    for k in 0..n {
        let yp = a[(p, k)];
        let yq = a[(q, k)] * phase_conj;
        a[(p, k)] = yp * c + yq * s;
        a[(q, k)] = yq * c - yp * s;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
}

/// `exp(−iH)` for Hermitian `H`, through its eigendecomposition.
pub fn exp_neg_i(h: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eigendecomposition(h)?;
    Ok(eig.map_spectrum(|lambda| C64::from_polar(1.0, -lambda)))
}

/// Kronecker product; `a` indexes the most significant block.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let rows = a.rows() * b.rows();
    let cols = a.cols() * b.cols();
    let mut out = ComplexMatrix::zeros(rows, cols);
    for ar in 0..a.rows() {
        for ac in 0..a.cols() {
            let x = a[(ar, ac)];
            for br in 0..b.rows() {
                for bc in 0..b.cols() {
                    out[(ar * b.rows() + br, ac * b.cols() + bc)] = x * b[(br, bc)];
                }
            }
        }
    }
    out
}

pub fn tensor_product_vec(a: &ComplexVector, b: &ComplexVector) -> ComplexVector {
    ComplexVector::new(
        a.entries()
            .iter()
            .flat_map(|x| b.entries().iter().map(move |y| x * y))
            .collect(),
    )
}

fn check_density(rho: &ComplexMatrix, dim: usize) -> Result<()> {
    if rho.rows() != dim || rho.cols() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: rho.rows().max(rho.cols()),
        });
    }
    rho.check_hermitian()
        .map_err(|_| Error::InvalidDensity("not Hermitian"))?;
    let tr = rho.trace();
    if (tr.re - 1.0).abs() > STATE_TOLERANCE || tr.im.abs() > STATE_TOLERANCE {
        return Err(Error::InvalidDensity("trace differs from 1"));
    }
    let eig = hermitian_eigendecomposition(rho)?;
    if eig.eigenvalues[0] < -STATE_TOLERANCE {
        return Err(Error::InvalidDensity("negative eigenvalue"));
    }
    Ok(())
}

/// Reduced state of qubit A: `ρ_A[a, a'] = Σ_b ρ[2a+b, 2a'+b]`.
pub fn partial_trace_over_b(rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_density(rho, 4)?;
    let mut out = ComplexMatrix::zeros(2, 2);
    for a in 0..2 {
        for a2 in 0..2 {
            out[(a, a2)] = (0..2).map(|b| rho[(2 * a + b, 2 * a2 + b)]).sum();
        }
    }
    Ok(out)
}

/// `⟨t|ρ|t⟩` for a pure one-qubit target, clamped to `[0, 1]`.
pub fn fidelity_pure_target(target: &ComplexVector, rho: &ComplexMatrix) -> Result<f64> {
    if target.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: target.dim(),
        });
    }
    target.check_normalized()?;
    check_density(rho, 2)?;
    let value = target.inner(&rho.apply(target)).re;
    Ok(value.clamp(0.0, 1.0))
}

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_real_rows([[0.0, 1.0], [1.0, 0.0]])
}

pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::from_rows([[ZERO, -I], [I, ZERO]])
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_real_rows([[1.0, 0.0], [0.0, -1.0]])
}

pub fn hadamard() -> ComplexMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    ComplexMatrix::from_real_rows([[h, h], [h, -h]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

    fn close(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> bool {
        (a - b).frobenius_norm() < tol
    }

    #[test]
    fn eigen_of_diagonal_is_trivial() {
        let h = ComplexMatrix::from_real_rows([[1.0, 0.0], [0.0, 2.0]]);
        let eig = hermitian_eigendecomposition(&h).unwrap();
        assert_eq!(eig.eigenvalues, vec![1.0, 2.0]);
        assert!(close(&eig.eigenvectors, &ComplexMatrix::identity(2), 1e-15));
    }

    #[test]
    fn eigen_of_pauli_x() {
        let eig = hermitian_eigendecomposition(&pauli_x()).unwrap();
        assert!((eig.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((eig.eigenvalues[1] - 1.0).abs() < 1e-14);
        let minus = ComplexVector::from_real(&[FRAC_1_SQRT_2, -FRAC_1_SQRT_2]);
        let plus = ComplexVector::from_real(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]);
        assert!((minus.inner(&eig.eigenvectors.column(0)).norm() - 1.0).abs() < 1e-12);
        assert!((plus.inner(&eig.eigenvectors.column(1)).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eigen_rejects_non_hermitian() {
        let m = ComplexMatrix::from_real_rows([[0.0, 1.0], [0.0, 0.0]]);
        assert!(matches!(
            hermitian_eigendecomposition(&m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let u = exp_neg_i(&ComplexMatrix::zeros(4, 4)).unwrap();
        assert!(close(&u, &ComplexMatrix::identity(4), 1e-15));
    }

    #[test]
    fn exp_of_half_pi_pauli_x() {
        let u = exp_neg_i(&pauli_x().scale(C64::new(FRAC_PI_2, 0.0))).unwrap();
        let expected = ComplexMatrix::from_rows([[ZERO, -I], [-I, ZERO]]);
        assert!(close(&u, &expected, 1e-14), "{u:?}");
    }

    #[test]
    fn tensor_examples() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(tensor_product(&i2, &i2), ComplexMatrix::identity(4));

        let xi = tensor_product(&pauli_x(), &i2);
        let mut swap02_13 = ComplexMatrix::zeros(4, 4);
        for (r, c) in [(0, 2), (2, 0), (1, 3), (3, 1)] {
            swap02_13[(r, c)] = ONE;
        }
        assert_eq!(xi, swap02_13);

        let proj0 = ComplexVector::basis(2, 0).outer();
        let b = ComplexMatrix::from_rows([[ONE, I], [-I, C64::new(2.0, 0.0)]]);
        let m = tensor_product(&proj0, &b);
        for r in 0..4 {
            for c in 0..4 {
                let expected = if r < 2 && c < 2 { b[(r, c)] } else { ZERO };
                assert_eq!(m[(r, c)], expected);
            }
        }
    }

    #[test]
    fn partial_trace_examples() {
        let ket01 = ComplexVector::basis(4, 1);
        let rho_a = partial_trace_over_b(&ket01.outer()).unwrap();
        assert!(close(&rho_a, &ComplexVector::basis(2, 0).outer(), 1e-15));

        let bell = ComplexVector::from_real(&[FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2]);
        let rho_a = partial_trace_over_b(&bell.outer()).unwrap();
        assert!(close(&rho_a, &ComplexMatrix::identity(2).scale(C64::new(0.5, 0.0)), 1e-15));
    }

    #[test]
    fn partial_trace_rejects_bad_trace() {
        let rho = ComplexMatrix::identity(4);
        assert!(matches!(
            partial_trace_over_b(&rho),
            Err(Error::InvalidDensity(_))
        ));
    }

    #[test]
    fn fidelity_examples() {
        let zero = ComplexVector::basis(2, 0);
        let one = ComplexVector::basis(2, 1);
        assert_eq!(fidelity_pure_target(&zero, &zero.outer()).unwrap(), 1.0);
        let mixed = ComplexMatrix::identity(2).scale(C64::new(0.5, 0.0));
        assert!((fidelity_pure_target(&zero, &mixed).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(fidelity_pure_target(&zero, &one.outer()).unwrap(), 0.0);
    }

    #[test]
    fn fidelity_rejects_unnormalized_target() {
        let t = ComplexVector::from_real(&[1.0, 1.0]);
        assert!(matches!(
            fidelity_pure_target(&t, &ComplexMatrix::identity(2).scale(C64::new(0.5, 0.0))),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn phase_alignment_ignores_global_phase() {
        let h = hadamard();
        let shifted = h.scale(C64::from_polar(1.0, 0.7));
        assert!(h.phase_aligned_distance(&shifted) < 1e-14);
    }
}
