//! The feedback system: a sliding success/failure memory, the random
//! parameter update and the per-trial learning loop.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::deutsch::{
    self, sample_bit, target_outcome, BinaryFunction, LearningMode, MachineConfig,
    MachineUnitaries,
};
use crate::linalg::ComplexVector;
use crate::su::{sample_parameters, BlochVector};
use crate::{Error, Result};

/// Parameters of `U₁` (15) and `U₃` (3) updated together.
pub const PARAMETER_COUNT: usize = 18;

pub type TrialRng = ChaCha8Rng;

/// Fixed-capacity window of the most recent success (`true`) / failure
/// (`false`) records. Index 0 is the oldest retained record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemoryStorage {
    capacity: usize,
    bits: VecDeque<bool>,
    failures: usize,
    total_recorded: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MemoryCounts {
    /// `N₀`: failures in the window.
    pub failures: usize,
    /// `N₁`: successes in the window.
    pub successes: usize,
    /// `N_T = min(N, N₀ + N₁)`.
    pub window: usize,
}

impl MemoryStorage {
    pub fn new(capacity: usize) -> Self {
        assert!(capacity >= 1, "memory capacity must be positive");
        Self {
            capacity,
            bits: VecDeque::with_capacity(capacity),
            failures: 0,
            total_recorded: 0,
        }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn total_recorded(&self) -> u64 {
        self.total_recorded
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        self.bits.iter().copied()
    }

    /// Appends a record, evicting the oldest one when full.
    pub fn record(&mut self, success: bool) {
        if self.bits.len() == self.capacity {
            if let Some(false) = self.bits.pop_front() {
                self.failures -= 1;
            }
        }
        self.bits.push_back(success);
        if !success {
            self.failures += 1;
        }
        self.total_recorded += 1;
    }

    pub fn counts(&self) -> MemoryCounts {
        let failures = self.failures;
        let successes = self.bits.len() - failures;
        MemoryCounts {
            failures,
            successes,
            window: self.capacity.min(failures + successes),
        }
    }

    /// Full window of successes.
    pub fn halt_condition(&self) -> bool {
        self.bits.len() == self.capacity && self.failures == 0
    }
}

/// Draws the random step `r`, each component uniform on
/// `[−step_scale, +step_scale]`.
pub fn draw_step<R: Rng + ?Sized>(step_scale: f64, rng: &mut R) -> [f64; PARAMETER_COUNT] {
    std::array::from_fn(|_| rng.gen_range(-step_scale..=step_scale))
}

/// `p ← p + (N₀/N_T)·r` over the concatenation `(p₁, p₃)`.
pub fn apply_step(
    p1: &BlochVector,
    p3: &BlochVector,
    counts: MemoryCounts,
    step: &[f64; PARAMETER_COUNT],
) -> Result<(BlochVector, BlochVector)> {
    if counts.window == 0 {
        return Err(Error::InvalidParameter(
            "parameter update requires at least one memory record".into(),
        ));
    }
    let factor = counts.failures as f64 / counts.window as f64;
    let mut p1 = p1.clone();
    let mut p3 = p3.clone();
    let (r1, r3) = step.split_at(p1.components().len());
    p1.add_scaled(r1, factor);
    p3.add_scaled(r3, factor);
    Ok((p1, p3))
}

pub fn adjust_parameters<R: Rng + ?Sized>(
    p1: &BlochVector,
    p3: &BlochVector,
    counts: MemoryCounts,
    step_scale: f64,
    rng: &mut R,
) -> Result<(BlochVector, BlochVector)> {
    if counts.window == 0 {
        return Err(Error::InvalidParameter(
            "parameter update requires at least one memory record".into(),
        ));
    }
    let step = draw_step(step_scale, rng);
    apply_step(p1, p3, counts, &step)
}

/// What the measurement device sees for one shot.
#[derive(Debug, Clone, Copy)]
pub struct Shot {
    pub input: BinaryFunction,
    /// Born probability of reading 0 on qubit A.
    pub prob_zero: f64,
    pub target: u8,
}

/// Single-shot readout of qubit A.
pub trait MeasurementDevice {
    fn measure<R: Rng + ?Sized>(&mut self, shot: &Shot, rng: &mut R) -> u8;
}

/// Samples the Born rule with one uniform draw.
#[derive(Debug, Clone, Copy, Default)]
pub struct BornMeasurement;

impl MeasurementDevice for BornMeasurement {
    fn measure<R: Rng + ?Sized>(&mut self, shot: &Shot, rng: &mut R) -> u8 {
        sample_bit(shot.prob_zero, rng)
    }
}

/// Test stub that always reports the target outcome.
#[derive(Debug, Clone, Copy, Default)]
pub struct AlwaysSucceeds;

impl MeasurementDevice for AlwaysSucceeds {
    fn measure<R: Rng + ?Sized>(&mut self, shot: &Shot, _rng: &mut R) -> u8 {
        shot.target
    }
}

/// One row of a learning trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationRecord {
    pub iteration: u64,
    pub input: BinaryFunction,
    pub outcome: u8,
    pub success: bool,
    /// Counts after recording this iteration's outcome.
    pub counts: MemoryCounts,
    pub halted: bool,
    pub parameters_changed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialResult {
    pub seed: u64,
    pub halted: bool,
    pub halt_iteration: Option<u64>,
    pub iterations_used: u64,
    pub final_p1: BlochVector,
    pub final_p3: BlochVector,
    /// `⟨t_x|ρ_x|t_x⟩` for each input, from the final parameters.
    pub fidelities: [f64; 4],
    pub mean_fidelity: f64,
}

/// The learning loop for a single trial, advanced one iteration at a time.
pub struct Learner<D = BornMeasurement> {
    cfg: MachineConfig,
    seed: u64,
    rng: TrialRng,
    device: D,
    initial: ComplexVector,
    targets: [u8; 4],
    p1: BlochVector,
    p3: BlochVector,
    prob_zero: [f64; 4],
    memory: MemoryStorage,
    iteration: u64,
}

impl Learner<BornMeasurement> {
    pub fn new(cfg: &MachineConfig, seed: u64) -> Result<Self> {
        Self::with_device(cfg, seed, BornMeasurement)
    }
}

impl<D: MeasurementDevice> Learner<D> {
    /// Starts from parameters drawn uniformly from `±init_half_range`.
    pub fn with_device(cfg: &MachineConfig, seed: u64, device: D) -> Result<Self> {
        cfg.validate()?;
        let mut rng = TrialRng::seed_from_u64(seed);
        let p1 = sample_parameters(4, cfg.init_half_range, &mut rng)?;
        let p3 = sample_parameters(2, cfg.init_half_range, &mut rng)?;
        Self::assemble(cfg, seed, rng, device, p1, p3)
    }

    /// Starts from the given parameters instead of a random draw.
    pub fn from_parameters(
        cfg: &MachineConfig,
        seed: u64,
        device: D,
        p1: BlochVector,
        p3: BlochVector,
    ) -> Result<Self> {
        cfg.validate()?;
        let rng = TrialRng::seed_from_u64(seed);
        Self::assemble(cfg, seed, rng, device, p1, p3)
    }

    fn assemble(
        cfg: &MachineConfig,
        seed: u64,
        rng: TrialRng,
        device: D,
        p1: BlochVector,
        p3: BlochVector,
    ) -> Result<Self> {
        let targets = BinaryFunction::ALL.map(|f| target_outcome(f, cfg));
        let mut learner = Self {
            cfg: cfg.clone(),
            seed,
            rng,
            device,
            initial: ComplexVector::basis(4, cfg.initial_basis),
            targets,
            p1,
            p3,
            prob_zero: [0.0; 4],
            memory: MemoryStorage::new(cfg.memory_size),
            iteration: 0,
        };
        learner.refresh()?;
        Ok(learner)
    }

    fn refresh(&mut self) -> Result<()> {
        let machine = MachineUnitaries::from_parameters(&self.p1, &self.p3)?;
        for f in BinaryFunction::ALL {
            let psi = machine.output_state(f, &self.initial);
            self.prob_zero[f.index() as usize] = deutsch::probability_a_zero(&psi);
        }
        Ok(())
    }

    pub fn iteration(&self) -> u64 {
        self.iteration
    }

    pub fn memory(&self) -> &MemoryStorage {
        &self.memory
    }

    pub fn parameters(&self) -> (&BlochVector, &BlochVector) {
        (&self.p1, &self.p3)
    }

    pub fn is_halted(&self) -> bool {
        self.memory.halt_condition()
    }

    pub fn is_finished(&self) -> bool {
        self.is_halted() || self.iteration >= self.cfg.max_iterations
    }

    /// One pass of prepare, evolve, measure, record and (on failure) adjust.
    pub fn step(&mut self) -> Result<IterationRecord> {
        self.iteration += 1;
        let input = BinaryFunction::ALL[self.rng.gen_range(0..4)];
        let slot = input.index() as usize;
        let shot = Shot {
            input,
            prob_zero: self.prob_zero[slot],
            target: self.targets[slot],
        };
        let outcome = self.device.measure(&shot, &mut self.rng);
        let success = outcome == shot.target;
        self.memory.record(success);
        let counts = self.memory.counts();

        let parameters_changed = !success;
        if !success {
            let (p1, p3) = match self.cfg.mode {
                LearningMode::Memory => adjust_parameters(
                    &self.p1,
                    &self.p3,
                    counts,
                    self.cfg.step_scale,
                    &mut self.rng,
                )?,
                LearningMode::Memoryless => (
                    sample_parameters(4, self.cfg.init_half_range, &mut self.rng)?,
                    sample_parameters(2, self.cfg.init_half_range, &mut self.rng)?,
                ),
            };
            self.p1 = p1;
            self.p3 = p3;
            self.refresh()?;
        }
        Ok(IterationRecord {
            iteration: self.iteration,
            input,
            outcome,
            success,
            counts,
            halted: self.memory.halt_condition(),
            parameters_changed,
        })
    }

    /// Runs to halt or the iteration cap, handing every record to `observe`.
    pub fn run_observed(mut self, mut observe: impl FnMut(&IterationRecord)) -> Result<TrialResult> {
        while !self.is_finished() {
            let record = self.step()?;
            observe(&record);
        }
        self.finish()
    }

    pub fn run(self) -> Result<TrialResult> {
        self.run_observed(|_| {})
    }

    fn finish(self) -> Result<TrialResult> {
        let halted = self.is_halted();
        let machine = MachineUnitaries::from_parameters(&self.p1, &self.p3)?;
        let mut fidelities = [0.0; 4];
        for f in BinaryFunction::ALL {
            let slot = f.index() as usize;
            let psi = machine.output_state(f, &self.initial);
            fidelities[slot] = deutsch::target_fidelity(&psi, self.targets[slot])?;
        }
        let mean_fidelity = fidelities.iter().sum::<f64>() / 4.0;
        Ok(TrialResult {
            seed: self.seed,
            halted,
            halt_iteration: halted.then_some(self.iteration),
            iterations_used: self.iteration,
            final_p1: self.p1,
            final_p3: self.p3,
            fidelities,
            mean_fidelity,
        })
    }
}

/// One learning trial with Born-rule measurement, deterministic in `seed`.
pub fn run_trial(cfg: &MachineConfig, seed: u64) -> Result<TrialResult> {
    Learner::new(cfg, seed)?.run()
}
