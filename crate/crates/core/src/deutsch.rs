//! The preparation–unitary–measurement pipeline for Deutsch's task.
//!
//! The machine prepares `|0⟩_A|1⟩_B`, applies a learned two-qubit `U₁`, the
//! oracle `U₂` for the input function and a learned one-qubit `U₃` on qubit
//! A, then measures qubit A once in the standard basis.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use rand::Rng;

use crate::linalg::{self, hadamard, tensor_product, ComplexMatrix, ComplexVector, C64, ONE};
use crate::su::{self, BlochVector};
use crate::{Error, Result};

/// One of the four functions `x_i : {0,1} → {0,1}`, with `x_i(0)` the high
/// bit of `i` and `x_i(1)` the low bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryFunction(u8);

impl BinaryFunction {
    pub const ALL: [BinaryFunction; 4] = [
        BinaryFunction(0),
        BinaryFunction(1),
        BinaryFunction(2),
        BinaryFunction(3),
    ];

    pub fn new(index: u8) -> Result<Self> {
        if index > 3 {
            return Err(Error::InvalidParameter(format!(
                "binary function index {index} out of range 0..=3"
            )));
        }
        Ok(Self(index))
    }

    pub fn index(self) -> u8 {
        self.0
    }

    pub fn eval(self, k: u8) -> u8 {
        debug_assert!(k < 2);
        match k {
            0 => self.0 >> 1,
            _ => self.0 & 1,
        }
    }

    pub fn values(self) -> (u8, u8) {
        (self.eval(0), self.eval(1))
    }

    pub fn label(self) -> Label {
        if self.eval(0) == self.eval(1) {
            Label::Constant
        } else {
            Label::Balanced
        }
    }
}

impl fmt::Display for BinaryFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    Constant,
    Balanced,
}

/// The four (function, label) training pairs.
pub fn task_set() -> [(BinaryFunction, Label); 4] {
    BinaryFunction::ALL.map(|f| (f, f.label()))
}

/// Measurement outcome expected for each label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TargetMap {
    pub constant: u8,
    pub balanced: u8,
}

impl Default for TargetMap {
    fn default() -> Self {
        Self {
            constant: 0,
            balanced: 1,
        }
    }
}

impl TargetMap {
    pub fn outcome(&self, label: Label) -> u8 {
        match label {
            Label::Constant => self.constant,
            Label::Balanced => self.balanced,
        }
    }
}

/// Parameter update rule used by the feedback system on failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LearningMode {
    /// Random step scaled by the failure fraction of the memory window.
    #[default]
    Memory,
    /// Fresh uniform draw of every parameter, ignoring the memory.
    Memoryless,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MachineConfig {
    /// Capacity `N` of the success/failure memory.
    pub memory_size: usize,
    /// Half-width of the uniform random step.
    pub step_scale: f64,
    /// Half-width of the uniform initial parameter distribution.
    pub init_half_range: f64,
    pub max_iterations: u64,
    pub target_map: TargetMap,
    /// Basis index of the prepared two-qubit product state.
    pub initial_basis: usize,
    pub mode: LearningMode,
}

impl Default for MachineConfig {
    fn default() -> Self {
        Self {
            memory_size: 20,
            step_scale: std::f64::consts::FRAC_PI_4,
            init_half_range: std::f64::consts::PI,
            max_iterations: 1_000_000,
            target_map: TargetMap::default(),
            initial_basis: 1,
            mode: LearningMode::Memory,
        }
    }
}

impl MachineConfig {
    pub fn with_memory_size(mut self, n: usize) -> Self {
        self.memory_size = n;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.memory_size == 0 {
            return Err(Error::InvalidConfig("memory_size must be at least 1".into()));
        }
        if self.max_iterations < self.memory_size as u64 {
            return Err(Error::InvalidConfig(format!(
                "max_iterations ({}) must be at least memory_size ({})",
                self.max_iterations, self.memory_size
            )));
        }
        for (name, v) in [
            ("step_scale", self.step_scale),
            ("init_half_range", self.init_half_range),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidConfig(format!("{name} must be positive, got {v}")));
            }
        }
        if self.initial_basis > 3 {
            return Err(Error::InvalidConfig(format!(
                "initial_basis must be in 0..=3, got {}",
                self.initial_basis
            )));
        }
        if self.target_map.constant > 1
            || self.target_map.balanced > 1
            || self.target_map.constant == self.target_map.balanced
        {
            return Err(Error::InvalidConfig(
                "target map must send constant and balanced to distinct bits".into(),
            ));
        }
        Ok(())
    }
}

/// Permutation `|k₁, k₂⟩ → |k₁, k₂ ⊕ x_i(k₁)⟩`.
pub fn oracle_unitary(f: BinaryFunction) -> ComplexMatrix {
    let mut u = ComplexMatrix::zeros(4, 4);
    for k1 in 0..2u8 {
        for k2 in 0..2u8 {
            let from = (2 * k1 + k2) as usize;
            let to = (2 * k1 + (k2 ^ f.eval(k1))) as usize;
            u[(to, from)] = ONE;
        }
    }
    u
}

pub fn target_outcome(f: BinaryFunction, cfg: &MachineConfig) -> u8 {
    cfg.target_map.outcome(f.label())
}

/// `|0⟩_A|1⟩_B`.
pub fn initial_state() -> ComplexVector {
    ComplexVector::basis(4, 1)
}

/// The learned devices `U₁` and `U₃ ⊗ I`, evaluated once per parameter set.
#[derive(Debug, Clone)]
pub struct MachineUnitaries {
    pub u1: ComplexMatrix,
    pub u3: ComplexMatrix,
    u3_on_a: ComplexMatrix,
}

impl MachineUnitaries {
    pub fn from_parameters(p1: &BlochVector, p3: &BlochVector) -> Result<Self> {
        if p1.dim() != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                found: p1.dim(),
            });
        }
        if p3.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: p3.dim(),
            });
        }
        let u1 = su::unitary_from_parameters(p1)?;
        let u3 = su::unitary_from_parameters(p3)?;
        Ok(Self::from_unitaries(u1, u3))
    }

    pub fn from_unitaries(u1: ComplexMatrix, u3: ComplexMatrix) -> Self {
        let u3_on_a = tensor_product(&u3, &ComplexMatrix::identity(2));
        Self { u1, u3, u3_on_a }
    }

    /// `(U₃ ⊗ I)·U₂(f)·U₁ |initial⟩`.
    pub fn output_state(&self, f: BinaryFunction, initial: &ComplexVector) -> ComplexVector {
        let after_u1 = self.u1.apply(initial);
        let after_oracle = oracle_unitary(f).apply(&after_u1);
        self.u3_on_a.apply(&after_oracle)
    }
}

pub fn machine_output_state(
    p1: &BlochVector,
    f: BinaryFunction,
    p3: &BlochVector,
) -> Result<ComplexVector> {
    Ok(MachineUnitaries::from_parameters(p1, p3)?.output_state(f, &initial_state()))
}

/// Born probability that qubit A reads 0.
pub fn probability_a_zero(psi: &ComplexVector) -> f64 {
    psi[0].norm_sqr() + psi[1].norm_sqr()
}

/// Samples the outcome of measuring qubit A, consuming one uniform draw.
pub fn single_shot_measure_a<R: Rng + ?Sized>(psi: &ComplexVector, rng: &mut R) -> Result<u8> {
    if psi.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: psi.dim(),
        });
    }
    psi.check_normalized()?;
    Ok(sample_bit(probability_a_zero(psi), rng))
}

pub(crate) fn sample_bit<R: Rng + ?Sized>(prob_zero: f64, rng: &mut R) -> u8 {
    let u: f64 = rng.gen();
    u8::from(u >= prob_zero)
}

/// Reduced state of qubit A for a two-qubit pure state.
pub fn reduced_state_a(psi: &ComplexVector) -> Result<ComplexMatrix> {
    linalg::partial_trace_over_b(&psi.outer())
}

/// `⟨t|ρ_A|t⟩` with `|t⟩` the computational basis state of the target bit.
pub fn target_fidelity(psi: &ComplexVector, target: u8) -> Result<f64> {
    let rho_a = reduced_state_a(psi)?;
    linalg::fidelity_pure_target(&ComplexVector::basis(2, target as usize), &rho_a)
}

/// Textbook Deutsch circuit `(H⊗I)·U_f·(H⊗H)|0⟩|1⟩`.
pub fn reference_deutsch_outcome(f: BinaryFunction) -> (u8, ComplexVector) {
    let h = hadamard();
    let hh = tensor_product(&h, &h);
    let hi = tensor_product(&h, &ComplexMatrix::identity(2));
    let state = hi.apply(&oracle_unitary(f).apply(&hh.apply(&initial_state())));
    let outcome = u8::from(probability_a_zero(&state) < 0.5);
    (outcome, state)
}

/// Bloch vectors realizing `U₁ = H⊗H` and `U₃ = H` up to global phase.
///
/// `H = (σ_x + σ_z)/√2` squares to `I`, so `exp(−i(π/2)H) = −iH`; for two
/// commuting copies the exponent is `(π/2)(H⊗I + I⊗H)`.
pub fn deutsch_equivalent_parameters() -> (BlochVector, BlochVector) {
    let h = hadamard();
    let id = ComplexMatrix::identity(2);
    let half_pi = C64::new(FRAC_PI_2, 0.0);
    let h1 = (&tensor_product(&h, &id) + &tensor_product(&id, &h)).scale(half_pi);
    let p1 = BlochVector::from_hamiltonian(&h1).expect("H⊗I + I⊗H is Hermitian");
    let p3 = BlochVector::from_hamiltonian(&h.scale(half_pi)).expect("H is Hermitian");
    (p1, p3)
}
