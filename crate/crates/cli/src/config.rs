//! Run configuration merged from defaults, an optional `key = value` file and
//! command-line flags, in increasing order of precedence.

use std::path::{Path, PathBuf};

use qlem_core::deutsch::{LearningMode, MachineConfig};

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfiguration {
    pub memory_size: usize,
    pub step_scale: f64,
    pub init_half_range: f64,
    pub max_iterations: u64,
    pub trials: usize,
    pub master_seed: u64,
    pub n_list: Vec<usize>,
    pub out_path: Option<PathBuf>,
    pub baseline_mode: bool,
    /// Worker threads; 0 means all available cores.
    pub threads: usize,
}

impl Default for RunConfiguration {
    fn default() -> Self {
        let machine = MachineConfig::default();
        Self {
            memory_size: machine.memory_size,
            step_scale: machine.step_scale,
            init_half_range: machine.init_half_range,
            max_iterations: machine.max_iterations,
            trials: 1000,
            master_seed: 0,
            n_list: vec![10, 20, 40, 80],
            out_path: None,
            baseline_mode: false,
            threads: 0,
        }
    }
}

/// Values supplied on the command line; `None` leaves the lower layer alone.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub memory_size: Option<usize>,
    pub step_scale: Option<f64>,
    pub init_half_range: Option<f64>,
    pub max_iterations: Option<u64>,
    pub trials: Option<usize>,
    pub master_seed: Option<u64>,
    pub n_list: Option<Vec<usize>>,
    pub out_path: Option<PathBuf>,
    pub baseline_mode: bool,
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct ConfigError(pub String);

fn parse_value<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, ConfigError> {
    value
        .parse()
        .map_err(|_| ConfigError(format!("invalid value {value:?} for {key}")))
}

pub fn parse_n_list(value: &str) -> Result<Vec<usize>, ConfigError> {
    value
        .split(',')
        .map(|s| parse_value("n_list", s.trim()))
        .collect()
}

fn parse_bool(key: &str, value: &str) -> Result<bool, ConfigError> {
    match value {
        "true" | "1" | "yes" | "on" => Ok(true),
        "false" | "0" | "no" | "off" => Ok(false),
        _ => Err(ConfigError(format!("invalid boolean {value:?} for {key}"))),
    }
}

impl RunConfiguration {
    /// Applies a config file body: one `key = value` per line, `#` starts a
    /// comment.
    pub fn apply_file_text(&mut self, text: &str) -> Result<(), ConfigError> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                ConfigError(format!("line {}: expected `key = value`", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "memory_size" => self.memory_size = parse_value(key, value)?,
                "step_scale" => self.step_scale = parse_value(key, value)?,
                "init_half_range" => self.init_half_range = parse_value(key, value)?,
                "max_iterations" => self.max_iterations = parse_value(key, value)?,
                "trials" => self.trials = parse_value(key, value)?,
                "master_seed" => self.master_seed = parse_value(key, value)?,
                "n_list" => self.n_list = parse_n_list(value)?,
                "out_path" => self.out_path = Some(PathBuf::from(value)),
                "baseline_mode" => self.baseline_mode = parse_bool(key, value)?,
                "threads" => self.threads = parse_value(key, value)?,
                other => {
                    return Err(ConfigError(format!(
                        "line {}: unknown key {other:?}",
                        lineno + 1
                    )))
                }
            }
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<(), ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))?;
        self.apply_file_text(&text)
    }

    pub fn apply_overrides(&mut self, o: &Overrides) {
        if let Some(v) = o.memory_size {
            self.memory_size = v;
        }
        if let Some(v) = o.step_scale {
            self.step_scale = v;
        }
        if let Some(v) = o.init_half_range {
            self.init_half_range = v;
        }
        if let Some(v) = o.max_iterations {
            self.max_iterations = v;
        }
        if let Some(v) = o.trials {
            self.trials = v;
        }
        if let Some(v) = o.master_seed {
            self.master_seed = v;
        }
        if let Some(v) = &o.n_list {
            self.n_list = v.clone();
        }
        if let Some(v) = &o.out_path {
            self.out_path = Some(v.clone());
        }
        if o.baseline_mode {
            self.baseline_mode = true;
        }
        if let Some(v) = o.threads {
            self.threads = v;
        }
    }

    /// Defaults ← file ← flags.
    pub fn resolve(file: Option<&Path>, overrides: &Overrides) -> Result<Self, ConfigError> {
        let mut cfg = Self::default();
        if let Some(path) = file {
            cfg.apply_file(path)?;
        }
        cfg.apply_overrides(overrides);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.memory_size == 0 {
            return Err(ConfigError("memory_size must be at least 1".into()));
        }
        if self.trials == 0 {
            return Err(ConfigError("trials must be at least 1".into()));
        }
        if !(self.step_scale > 0.0 && self.step_scale.is_finite()) {
            return Err(ConfigError("step_scale must be positive".into()));
        }
        if !(self.init_half_range > 0.0 && self.init_half_range.is_finite()) {
            return Err(ConfigError("init_half_range must be positive".into()));
        }
        if self.n_list.is_empty() {
            return Err(ConfigError("n_list must not be empty".into()));
        }
        if self.n_list.contains(&0) {
            return Err(ConfigError("n_list entries must be at least 1".into()));
        }
        if self.n_list.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ConfigError("n_list must be strictly ascending".into()));
        }
        Ok(())
    }

    pub fn machine(&self) -> MachineConfig {
        MachineConfig {
            memory_size: self.memory_size,
            step_scale: self.step_scale,
            init_half_range: self.init_half_range,
            max_iterations: self.max_iterations,
            mode: if self.baseline_mode {
                LearningMode::Memoryless
            } else {
                LearningMode::Memory
            },
            ..MachineConfig::default()
        }
    }
}
