//! SU(2) and SU(4) generators and the Bloch-vector map `p ↦ exp(−i p·G)`.

use std::sync::OnceLock;

use rand::Rng;

use crate::linalg::{self, ComplexMatrix, C64, I, ONE, ZERO};
use crate::{Error, Result};

/// Traceless Hermitian basis of su(d), normalized to `Tr(G_a G_b) = 2δ_ab`.
///
/// Ordering: the `d(d−1)/2` symmetric matrices `E_jk + E_kj`, then the
/// antisymmetric `−i(E_jk − E_kj)` (pairs `j < k` lexicographic), then the
/// `d − 1` diagonal ones. For `d = 2` this is `(σ_x, σ_y, σ_z)`.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    dim: usize,
    matrices: Vec<ComplexMatrix>,
}

impl GeneratorSet {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrices(&self) -> &[ComplexMatrix] {
        &self.matrices
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    /// `Σ_a p_a G_a`.
    pub fn combine(&self, coefficients: &[f64]) -> ComplexMatrix {
        assert_eq!(coefficients.len(), self.len());
        let mut out = ComplexMatrix::zeros(self.dim, self.dim);
        for (g, &p) in self.matrices.iter().zip(coefficients) {
            if p == 0.0 {
                continue;
            }
            for r in 0..self.dim {
                for c in 0..self.dim {
                    out[(r, c)] += g[(r, c)] * p;
                }
            }
        }
        out
    }

    /// Coordinates `Tr(H G_a)/2` of the traceless part of a Hermitian `H`.
    pub fn project(&self, h: &ComplexMatrix) -> Vec<f64> {
        self.matrices
            .iter()
            .map(|g| 0.5 * (h * g).trace().re)
            .collect()
    }
}

fn build_generators(d: usize) -> GeneratorSet {
    let pairs: Vec<(usize, usize)> = (0..d)
        .flat_map(|j| (j + 1..d).map(move |k| (j, k)))
        .collect();
    let mut matrices = Vec::with_capacity(d * d - 1);
    for &(j, k) in &pairs {
        let mut m = ComplexMatrix::zeros(d, d);
        m[(j, k)] = ONE;
        m[(k, j)] = ONE;
        matrices.push(m);
    }
    for &(j, k) in &pairs {
        let mut m = ComplexMatrix::zeros(d, d);
        m[(j, k)] = -I;
        m[(k, j)] = I;
        matrices.push(m);
    }
    for l in 1..d {
        let norm = (2.0 / (l * (l + 1)) as f64).sqrt();
        let diag: Vec<C64> = (0..d)
            .map(|i| match i.cmp(&l) {
                std::cmp::Ordering::Less => C64::new(norm, 0.0),
                std::cmp::Ordering::Equal => C64::new(-(l as f64) * norm, 0.0),
                std::cmp::Ordering::Greater => ZERO,
            })
            .collect();
        matrices.push(ComplexMatrix::diagonal(&diag));
    }
    GeneratorSet { dim: d, matrices }
}

/// Generator set for `d ∈ {2, 4}`. The sets are built once and shared.
pub fn generator_set(d: usize) -> Result<&'static GeneratorSet> {
    static SU2: OnceLock<GeneratorSet> = OnceLock::new();
    static SU4: OnceLock<GeneratorSet> = OnceLock::new();
    match d {
        2 => Ok(SU2.get_or_init(|| build_generators(2))),
        4 => Ok(SU4.get_or_init(|| build_generators(4))),
        other => Err(Error::UnsupportedDimension(other)),
    }
}

/// Generalized Bloch vector of length `d² − 1` parameterizing `exp(−i p·G)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlochVector {
    dim: usize,
    components: Vec<f64>,
}

impl BlochVector {
    pub fn new(dim: usize, components: Vec<f64>) -> Result<Self> {
        if dim != 2 && dim != 4 {
            return Err(Error::UnsupportedDimension(dim));
        }
        if components.len() != dim * dim - 1 {
            return Err(Error::DimensionMismatch {
                expected: dim * dim - 1,
                found: components.len(),
            });
        }
        if let Some(bad) = components.iter().find(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "Bloch vector component {bad} is not finite"
            )));
        }
        Ok(Self { dim, components })
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        Self::new(dim, vec![0.0; dim.saturating_mul(dim).saturating_sub(1)])
    }

    /// Bloch vector of the traceless part of a Hermitian matrix, so that
    /// `unitary_from_parameters` returns `exp(−iH)` up to a global phase.
    pub fn from_hamiltonian(h: &ComplexMatrix) -> Result<Self> {
        h.check_hermitian()?;
        let gens = generator_set(h.rows())?;
        Self::new(h.rows(), gens.project(h))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[f64] {
        &self.components
    }

    pub fn norm(&self) -> f64 {
        self.components.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn negated(&self) -> Self {
        Self {
            dim: self.dim,
            components: self.components.iter().map(|x| -x).collect(),
        }
    }

    /// In-place `p += factor·step`; `step` must have matching length.
    pub(crate) fn add_scaled(&mut self, step: &[f64], factor: f64) {
        debug_assert_eq!(step.len(), self.components.len());
        for (p, r) in self.components.iter_mut().zip(step) {
            *p += factor * r;
        }
    }
}

/// `exp(−i Σ p_a G_a)`.
pub fn unitary_from_parameters(p: &BlochVector) -> Result<ComplexMatrix> {
    let gens = generator_set(p.dim())?;
    linalg::exp_neg_i(&gens.combine(p.components()))
}

/// `cos‖p‖ I − i sin‖p‖ (p̂·σ)`, the closed form of the SU(2) exponential.
pub fn su2_closed_form(p: &BlochVector) -> Result<ComplexMatrix> {
    if p.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: p.dim(),
        });
    }
    let theta = p.norm();
    if theta == 0.0 {
        return Ok(ComplexMatrix::identity(2));
    }
    let (s, c) = theta.sin_cos();
    let [nx, ny, nz] = [0, 1, 2].map(|i| p.components()[i] / theta);
    // −i s (nx σx + ny σy + nz σz) + c I
    Ok(ComplexMatrix::from_rows([
        [C64::new(c, -s * nz), C64::new(-s * ny, -s * nx)],
        [C64::new(s * ny, -s * nx), C64::new(c, s * nz)],
    ]))
}

/// Each component i.i.d. uniform on `[−half_range, +half_range]`.
pub fn sample_parameters<R: Rng + ?Sized>(
    d: usize,
    half_range: f64,
    rng: &mut R,
) -> Result<BlochVector> {
    if !(half_range > 0.0 && half_range.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "half_range must be positive and finite, got {half_range}"
        )));
    }
    if d != 2 && d != 4 {
        return Err(Error::UnsupportedDimension(d));
    }
    let components = (0..d * d - 1)
        .map(|_| rng.gen_range(-half_range..=half_range))
        .collect();
    BlochVector::new(d, components)
}
