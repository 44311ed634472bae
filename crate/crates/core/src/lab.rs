//! Monte-Carlo experiments over learning trials: ensembles, survival curves,
//! fidelity statistics, memory-size sweeps, curve fits and the operator
//! Schmidt analysis of learned two-qubit unitaries.

use rayon::prelude::*;

use crate::deutsch::MachineConfig;
use crate::learning::{BornMeasurement, Learner, MeasurementDevice, TrialResult};
use crate::linalg::{hermitian_eigendecomposition, ComplexMatrix};
use crate::su::unitary_from_parameters;
use crate::{Error, Result};

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
const SWEEP_SALT: u64 = 0x5357_4545_505F_4E21;

/// Lower/upper survival bounds of the points entering the exponential fit.
pub const DEFAULT_FIT_BAND: (f64, f64) = (0.02, 0.98);
/// Minimum halted fraction for a sweep row's `n_c` to be trusted.
pub const RELIABLE_HALT_FRACTION: f64 = 0.8;

/// SplitMix64 finalizer.
pub fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of trial `index`: the `(index + 1)`-th output of a SplitMix64
/// generator whose state starts at `master_seed`.
pub fn trial_seed(master_seed: u64, index: u64) -> u64 {
    splitmix64(master_seed.wrapping_add(GOLDEN_GAMMA.wrapping_mul(index.wrapping_add(1))))
}

/// Master seed of the ensemble run at memory size `n` inside a sweep.
pub fn sweep_master_seed(master_seed: u64, memory_size: usize) -> u64 {
    trial_seed(master_seed ^ SWEEP_SALT, memory_size as u64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleResult {
    pub config: MachineConfig,
    pub master_seed: u64,
    pub trials: Vec<TrialResult>,
}

impl EnsembleResult {
    pub fn trial_count(&self) -> usize {
        self.trials.len()
    }

    pub fn halted(&self) -> impl Iterator<Item = &TrialResult> {
        self.trials.iter().filter(|t| t.halted)
    }

    pub fn halt_fraction(&self) -> f64 {
        if self.trials.is_empty() {
            return 0.0;
        }
        self.halted().count() as f64 / self.trials.len() as f64
    }
}

fn with_pool<T: Send>(parallelism: usize, job: impl FnOnce() -> T + Send) -> Result<T> {
    if parallelism == 0 {
        return Ok(job());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism)
        .build()
        .map_err(|e| Error::InvalidConfig(format!("cannot build thread pool: {e}")))?;
    Ok(pool.install(job))
}

/// Runs `trial_count` independent trials. `parallelism` is the number of
/// worker threads (0 uses the global rayon pool); results never depend on it.
pub fn run_ensemble(
    cfg: &MachineConfig,
    trial_count: usize,
    master_seed: u64,
    parallelism: usize,
) -> Result<EnsembleResult> {
    run_ensemble_with(cfg, trial_count, master_seed, parallelism, BornMeasurement)
}

pub fn run_ensemble_with<D>(
    cfg: &MachineConfig,
    trial_count: usize,
    master_seed: u64,
    parallelism: usize,
    device: D,
) -> Result<EnsembleResult>
where
    D: MeasurementDevice + Clone + Send + Sync,
{
    if trial_count == 0 {
        return Err(Error::InvalidConfig("trial count must be at least 1".into()));
    }
    cfg.validate()?;
    let trials = with_pool(parallelism, || {
        (0..trial_count as u64)
            .into_par_iter()
            .map(|i| {
                Learner::with_device(cfg, trial_seed(master_seed, i), device.clone())?.run()
            })
            .collect::<Result<Vec<_>>>()
    })??;
    Ok(EnsembleResult {
        config: cfg.clone(),
        master_seed,
        trials,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurvivalPoint {
    pub n: u64,
    /// Learning probability: fraction of trials halted at or before `n`.
    pub learning: f64,
    /// Survival probability `1 − learning`.
    pub survival: f64,
}

/// `P(n)` and `Q(n)` for `n = 1..=max halt iteration`. Censored trials never
/// count as halted. Empty when no trial halted.
pub fn survival_curve(ens: &EnsembleResult) -> Vec<SurvivalPoint> {
    let total = ens.trial_count();
    let mut halts: Vec<u64> = ens.trials.iter().filter_map(|t| t.halt_iteration).collect();
    halts.sort_unstable();
    let Some(&last) = halts.last() else {
        return Vec::new();
    };
    let mut curve = Vec::with_capacity(last as usize);
    let mut done = 0usize;
    for n in 1..=last {
        while done < halts.len() && halts[done] <= n {
            done += 1;
        }
        let learning = done as f64 / total as f64;
        curve.push(SurvivalPoint {
            n,
            learning,
            survival: 1.0 - learning,
        });
    }
    curve
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FitKind {
    /// `Q(n) = exp(−(n − 1)/n_c)`; `param1 = n_c`, `param2 = ln Q` intercept.
    Exponential,
    /// `n_c = A·N^D`; `param1 = A`, `param2 = D`.
    PowerLaw,
}

impl FitKind {
    pub fn name(self) -> &'static str {
        match self {
            FitKind::Exponential => "exponential",
            FitKind::PowerLaw => "power_law",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "exponential" => Some(FitKind::Exponential),
            "power_law" => Some(FitKind::PowerLaw),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveFit {
    pub kind: FitKind,
    pub param1: f64,
    pub param2: f64,
    pub r_squared: f64,
    pub points_used: usize,
}

impl CurveFit {
    /// Characteristic constant of an exponential fit.
    pub fn n_c(&self) -> Option<f64> {
        (self.kind == FitKind::Exponential).then_some(self.param1)
    }

    /// `(A, D)` of a power-law fit.
    pub fn power_law(&self) -> Option<(f64, f64)> {
        (self.kind == FitKind::PowerLaw).then_some((self.param1, self.param2))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

/// Ordinary least squares `y = slope·x + intercept`.
pub fn linear_regression(xs: &[f64], ys: &[f64]) -> LinearFit {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxx, mut sxy) = (0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let (mut ss_res, mut ss_tot) = (0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let r = y - (slope * x + intercept);
        ss_res += r * r;
        ss_tot += (y - my) * (y - my);
    }
    let r_squared = if ss_tot > 0.0 {
        (1.0 - ss_res / ss_tot).clamp(0.0, 1.0)
    } else {
        1.0
    };
    LinearFit {
        slope,
        intercept,
        r_squared,
    }
}

pub fn fit_exponential_survival(curve: &[SurvivalPoint]) -> Result<CurveFit> {
    fit_exponential_survival_in(curve, DEFAULT_FIT_BAND)
}

/// Regresses `ln Q(n)` on `n − 1` over the points with `Q` inside `band`;
/// `n_c = −1/slope`.
pub fn fit_exponential_survival_in(curve: &[SurvivalPoint], band: (f64, f64)) -> Result<CurveFit> {
    const MIN_POINTS: usize = 5;
    if !curve.is_empty() && curve.iter().all(|p| p.survival >= 1.0) {
        return Err(Error::DegenerateFit("survival never decays"));
    }
    let (xs, ys): (Vec<f64>, Vec<f64>) = curve
        .iter()
        .filter(|p| p.survival >= band.0 && p.survival <= band.1)
        .map(|p| ((p.n - 1) as f64, p.survival.ln()))
        .unzip();
    if xs.len() < MIN_POINTS {
        return Err(Error::TooFewPoints {
            needed: MIN_POINTS,
            found: xs.len(),
        });
    }
    let fit = linear_regression(&xs, &ys);
    if !(fit.slope < 0.0) {
        return Err(Error::DegenerateFit("non-negative slope in ln Q(n)"));
    }
    Ok(CurveFit {
        kind: FitKind::Exponential,
        param1: -1.0 / fit.slope,
        param2: fit.intercept,
        r_squared: fit.r_squared,
        points_used: xs.len(),
    })
}

/// Regresses `log₁₀ n_c` on `log₁₀ N`; `D` is the slope, `A = 10^intercept`.
pub fn fit_power_law(points: &[(f64, f64)]) -> Result<CurveFit> {
    const MIN_POINTS: usize = 3;
    let usable: Vec<(f64, f64)> = points
        .iter()
        .copied()
        .filter(|&(n, nc)| n > 0.0 && nc > 0.0 && n.is_finite() && nc.is_finite())
        .collect();
    if usable.len() < MIN_POINTS {
        return Err(Error::TooFewPoints {
            needed: MIN_POINTS,
            found: usable.len(),
        });
    }
    let xs: Vec<f64> = usable.iter().map(|p| p.0.log10()).collect();
    let ys: Vec<f64> = usable.iter().map(|p| p.1.log10()).collect();
    let fit = linear_regression(&xs, &ys);
    if !fit.slope.is_finite() {
        return Err(Error::DegenerateFit("memory sizes do not vary"));
    }
    Ok(CurveFit {
        kind: FitKind::PowerLaw,
        param1: 10f64.powf(fit.intercept),
        param2: fit.slope,
        r_squared: fit.r_squared,
        points_used: usable.len(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelityStats {
    pub mean: f64,
    /// Population standard deviation.
    pub std_dev: f64,
    pub count: usize,
}

impl FidelityStats {
    pub fn standard_error(&self) -> f64 {
        self.std_dev / (self.count as f64).sqrt()
    }
}

/// Mean and spread of the trial fidelity over halted trials only.
pub fn ensemble_fidelity(ens: &EnsembleResult) -> Result<FidelityStats> {
    let values: Vec<f64> = ens.halted().map(|t| t.mean_fidelity).collect();
    if values.is_empty() {
        return Err(Error::NoHaltedTrials);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    Ok(FidelityStats {
        mean,
        std_dev: var.sqrt(),
        count: values.len(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorSchmidt {
    /// Singular values of the A|B reshuffled operator, descending.
    pub coefficients: [f64; 4],
    /// `σ₁²/4`; equals 1 exactly for a product `A ⊗ B`.
    pub product_score: f64,
}

/// Reshuffles `U[(a₁b₁),(a₂b₂)]` into `R[(a₁a₂),(b₁b₂)]`, which is rank one
/// iff `U = A ⊗ B`.
pub fn reshuffle(u: &ComplexMatrix) -> ComplexMatrix {
    assert_eq!((u.rows(), u.cols()), (4, 4));
    let mut r = ComplexMatrix::zeros(4, 4);
    for a1 in 0..2 {
        for b1 in 0..2 {
            for a2 in 0..2 {
                for b2 in 0..2 {
                    r[(2 * a1 + a2, 2 * b1 + b2)] = u[(2 * a1 + b1, 2 * a2 + b2)];
                }
            }
        }
    }
    r
}

pub fn operator_schmidt(u: &ComplexMatrix) -> Result<OperatorSchmidt> {
    if (u.rows(), u.cols()) != (4, 4) {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: u.rows().max(u.cols()),
        });
    }
    u.check_unitary(1e-9)?;
    let r = reshuffle(u);
    let gram = &r.dagger() * &r;
    let eig = hermitian_eigendecomposition(&gram)?;
    let mut coefficients = [0.0; 4];
    for (slot, lambda) in coefficients.iter_mut().zip(eig.eigenvalues.iter().rev()) {
        *slot = lambda.max(0.0).sqrt();
    }
    let product_score = (eig.eigenvalues[3] / 4.0).clamp(0.0, 1.0);
    Ok(OperatorSchmidt {
        coefficients,
        product_score,
    })
}

/// Product score of a trial's learned `U₁`.
pub fn trial_product_score(trial: &TrialResult) -> Result<f64> {
    Ok(operator_schmidt(&unitary_from_parameters(&trial.final_p1)?)?.product_score)
}

pub fn median(values: &mut [f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    let mid = values.len() / 2;
    Some(if values.len() % 2 == 0 {
        0.5 * (values[mid - 1] + values[mid])
    } else {
        values[mid]
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub memory_size: usize,
    pub trials: usize,
    pub halt_fraction: f64,
    pub fidelity: Option<FidelityStats>,
    /// Exponential survival fit; absent when unreliable or degenerate.
    pub survival_fit: Option<CurveFit>,
    pub product_score_median: Option<f64>,
}

impl SweepRow {
    pub fn is_reliable(&self) -> bool {
        self.halt_fraction >= RELIABLE_HALT_FRACTION && self.survival_fit.is_some()
    }

    pub fn n_c(&self) -> Option<f64> {
        self.survival_fit.and_then(|f| f.n_c())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    /// `(N, n_c)` of the reliable rows.
    pub fn scaling_points(&self) -> Vec<(f64, f64)> {
        self.rows
            .iter()
            .filter(|r| r.is_reliable())
            .filter_map(|r| r.n_c().map(|nc| (r.memory_size as f64, nc)))
            .collect()
    }

    pub fn fit_power_law(&self) -> Result<CurveFit> {
        fit_power_law(&self.scaling_points())
    }
}

/// Summarizes one ensemble as a sweep row.
pub fn summarize(ens: &EnsembleResult) -> Result<SweepRow> {
    let halt_fraction = ens.halt_fraction();
    let fidelity = match ensemble_fidelity(ens) {
        Ok(stats) => Some(stats),
        Err(Error::NoHaltedTrials) => None,
        Err(e) => return Err(e),
    };
    let survival_fit = if halt_fraction >= RELIABLE_HALT_FRACTION {
        fit_exponential_survival(&survival_curve(ens)).ok()
    } else {
        None
    };
    let mut scores = ens
        .halted()
        .map(trial_product_score)
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepRow {
        memory_size: ens.config.memory_size,
        trials: ens.trial_count(),
        halt_fraction,
        fidelity,
        survival_fit,
        product_score_median: median(&mut scores),
    })
}

/// One ensemble per memory size, each with its own derived master seed.
pub fn memory_sweep(
    cfg: &MachineConfig,
    memory_sizes: &[usize],
    trial_count: usize,
    master_seed: u64,
    parallelism: usize,
) -> Result<SweepResult> {
    memory_sweep_with(cfg, memory_sizes, trial_count, master_seed, parallelism, BornMeasurement)
}

pub fn memory_sweep_with<D>(
    cfg: &MachineConfig,
    memory_sizes: &[usize],
    trial_count: usize,
    master_seed: u64,
    parallelism: usize,
    device: D,
) -> Result<SweepResult>
where
    D: MeasurementDevice + Clone + Send + Sync,
{
    if memory_sizes.is_empty() {
        return Err(Error::InvalidConfig("memory size list is empty".into()));
    }
    if memory_sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidConfig(
            "memory sizes must be strictly ascending".into(),
        ));
    }
    let rows = memory_sizes
        .iter()
        .map(|&n| {
            let cfg = cfg.clone().with_memory_size(n);
            let ens = run_ensemble_with(
                &cfg,
                trial_count,
                sweep_master_seed(master_seed, n),
                parallelism,
                device.clone(),
            )?;
            summarize(&ens)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deutsch::deutsch_equivalent_parameters;
    use crate::learning::AlwaysSucceeds;
    use crate::linalg::{hadamard, tensor_product, C64, ONE};
    use crate::su::BlochVector;

    fn synthetic_curve(n_c: f64, last: u64) -> Vec<SurvivalPoint> {
        (1..=last)
            .map(|n| {
                let q = (-((n - 1) as f64) / n_c).exp();
                SurvivalPoint {
                    n,
                    learning: 1.0 - q,
                    survival: q,
                }
            })
            .collect()
    }

    fn fake_trial(halt: Option<u64>, fidelity: f64) -> TrialResult {
        TrialResult {
            seed: 0,
            halted: halt.is_some(),
            halt_iteration: halt,
            iterations_used: halt.unwrap_or(1000),
            final_p1: BlochVector::zeros(4).unwrap(),
            final_p3: BlochVector::zeros(2).unwrap(),
            fidelities: [fidelity; 4],
            mean_fidelity: fidelity,
        }
    }

    fn fake_ensemble(trials: Vec<TrialResult>) -> EnsembleResult {
        EnsembleResult {
            config: MachineConfig::default().with_memory_size(5),
            master_seed: 0,
            trials,
        }
    }

    #[test]
    fn seeds_are_distinct_and_stable() {
        let seeds: Vec<u64> = (0..1000).map(|i| trial_seed(42, i)).collect();
        let mut sorted = seeds.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), 1000);
        assert_eq!(trial_seed(42, 0), trial_seed(42, 0));
        assert_ne!(sweep_master_seed(42, 10), sweep_master_seed(42, 20));
    }

    #[test]
    fn survival_of_step_halting() {
        let ens = fake_ensemble(vec![fake_trial(Some(5), 1.0); 4]);
        let curve = survival_curve(&ens);
        assert_eq!(curve.len(), 5);
        for p in &curve[..4] {
            assert_eq!((p.learning, p.survival), (0.0, 1.0));
        }
        assert_eq!((curve[4].learning, curve[4].survival), (1.0, 0.0));
    }

    #[test]
    fn survival_counts_censored_as_surviving() {
        let ens = fake_ensemble(vec![
            fake_trial(Some(6), 1.0),
            fake_trial(Some(8), 1.0),
            fake_trial(None, 0.5),
            fake_trial(Some(8), 1.0),
        ]);
        let curve = survival_curve(&ens);
        assert_eq!(curve.len(), 8);
        assert_eq!(curve[5].learning, 0.25);
        assert_eq!(curve[7].learning, 0.75);
        assert!(curve.windows(2).all(|w| w[0].survival >= w[1].survival));
        assert!(curve.iter().all(|p| p.learning + p.survival == 1.0));
        assert!(survival_curve(&fake_ensemble(vec![fake_trial(None, 0.0)])).is_empty());
    }

    #[test]
    fn exponential_fit_recovers_known_constant() {
        for n_c in [50.0, 1000.0] {
            let fit = fit_exponential_survival(&synthetic_curve(n_c, (n_c as u64) * 4)).unwrap();
            assert!(((fit.param1 - n_c) / n_c).abs() < 1e-6, "{fit:?}");
            assert!(fit.r_squared > 1.0 - 1e-12);
        }
    }

    #[test]
    fn exponential_fit_errors() {
        let flat: Vec<SurvivalPoint> = (1..50)
            .map(|n| SurvivalPoint {
                n,
                learning: 0.0,
                survival: 1.0,
            })
            .collect();
        assert!(matches!(
            fit_exponential_survival(&flat),
            Err(Error::DegenerateFit(_))
        ));
        assert!(matches!(
            fit_exponential_survival(&synthetic_curve(1.0, 4)),
            Err(Error::TooFewPoints { .. })
        ));
    }

    #[test]
    fn power_law_fit_recovers_known_law() {
        let pts: Vec<(f64, f64)> = [10.0, 20.0, 40.0, 80.0]
            .iter()
            .map(|&n: &f64| (n, 0.1 * n.powf(3.5)))
            .collect();
        let fit = fit_power_law(&pts).unwrap();
        let (a, d) = fit.power_law().unwrap();
        assert!((a - 0.1).abs() < 1e-9 && (d - 3.5).abs() < 1e-9);
        assert!(matches!(
            fit_power_law(&pts[..2]),
            Err(Error::TooFewPoints { needed: 3, found: 2 })
        ));
    }

    #[test]
    fn fidelity_statistics() {
        let ens = fake_ensemble(vec![fake_trial(Some(9), 0.9)]);
        let stats = ensemble_fidelity(&ens).unwrap();
        assert_eq!((stats.mean, stats.std_dev), (0.9, 0.0));

        let ens = fake_ensemble(vec![
            fake_trial(Some(9), 0.8),
            fake_trial(Some(9), 1.0),
            fake_trial(None, 0.0),
        ]);
        let stats = ensemble_fidelity(&ens).unwrap();
        assert!((stats.mean - 0.9).abs() < 1e-15);
        assert!((stats.std_dev - 0.1).abs() < 1e-15);
        assert_eq!(stats.count, 2);

        assert_eq!(
            ensemble_fidelity(&fake_ensemble(vec![fake_trial(None, 0.3)])),
            Err(Error::NoHaltedTrials)
        );
    }

    #[test]
    fn deutsch_point_ensemble_fidelity() {
        let (p1, p3) = deutsch_equivalent_parameters();
        let cfg = MachineConfig::default().with_memory_size(10);
        let trials = (0..5)
            .map(|i| {
                Learner::from_parameters(&cfg, i, BornMeasurement, p1.clone(), p3.clone())
                    .unwrap()
                    .run()
                    .unwrap()
            })
            .collect();
        let stats = ensemble_fidelity(&fake_ensemble(trials)).unwrap();
        assert!(stats.mean > 1.0 - 1e-9 && stats.std_dev < 1e-9);
    }

    #[test]
    fn schmidt_of_product_and_cnot() {
        let h = hadamard();
        let s = operator_schmidt(&tensor_product(&h, &h)).unwrap();
        assert!((s.coefficients[0] - 2.0).abs() < 1e-12);
        assert!(s.coefficients[1..].iter().all(|c| c.abs() < 1e-6));
        assert!((s.product_score - 1.0).abs() < 1e-12);

        // CNOT = |0⟩⟨0|⊗I + |1⟩⟨1|⊗X: two orthogonal product terms of
        // Frobenius norm √2 each.
        let mut cnot = ComplexMatrix::identity(4);
        cnot[(2, 2)] = C64::new(0.0, 0.0);
        cnot[(3, 3)] = C64::new(0.0, 0.0);
        cnot[(2, 3)] = ONE;
        cnot[(3, 2)] = ONE;
        let s = operator_schmidt(&cnot).unwrap();
        let r2 = std::f64::consts::SQRT_2;
        assert!((s.coefficients[0] - r2).abs() < 1e-12);
        assert!((s.coefficients[1] - r2).abs() < 1e-12);
        assert!((s.product_score - 0.5).abs() < 1e-12);

        assert!(operator_schmidt(&ComplexMatrix::identity(4).scale(C64::new(2.0, 0.0))).is_err());
    }

    #[test]
    fn ensemble_independent_of_parallelism() {
        let cfg = MachineConfig {
            memory_size: 4,
            max_iterations: 50_000,
            ..MachineConfig::default()
        };
        let a = run_ensemble(&cfg, 10, 7, 1).unwrap();
        let b = run_ensemble(&cfg, 10, 7, 8).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.trial_count(), 10);
        assert!(run_ensemble(&cfg, 0, 7, 1).is_err());
    }

    #[test]
    fn stub_success_ensemble_and_sweep() {
        let cfg = MachineConfig::default();
        let ens = run_ensemble_with(&cfg.clone().with_memory_size(7), 6, 1, 2, AlwaysSucceeds).unwrap();
        assert!(ens.trials.iter().all(|t| t.halt_iteration == Some(7)));

        let sweep = memory_sweep_with(&cfg, &[3, 6], 5, 1, 2, AlwaysSucceeds).unwrap();
        assert_eq!(sweep.rows.len(), 2);
        assert_eq!(sweep.rows[0].memory_size, 3);
        assert_eq!(sweep.rows[1].memory_size, 6);
        for row in &sweep.rows {
            assert_eq!(row.halt_fraction, 1.0);
            assert!(row.survival_fit.is_none());
        }
        assert!(memory_sweep(&cfg, &[], 5, 1, 1).is_err());
        assert!(memory_sweep(&cfg, &[6, 3], 5, 1, 1).is_err());
    }

    #[test]
    fn median_of_even_and_odd() {
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), Some(2.0));
        assert_eq!(median(&mut [4.0, 1.0, 2.0, 3.0]), Some(2.5));
        assert_eq!(median(&mut []), None);
    }
}
