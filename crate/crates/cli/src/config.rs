//! `key = value` configuration files merged with command-line flags.
//!
//! Precedence is flag, then file, then the built-in default.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, ValueEnum};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeometryKind {
    Cube,
    Film,
    Box,
}

impl FromStr for GeometryKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        <Self as ValueEnum>::from_str(s, true)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FieldMode {
    /// 1 − τ′²
    TwoFluid,
    /// From the standard gap solver integrated over the coupling.
    Coupling,
}

impl FromStr for FieldMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        <Self as ValueEnum>::from_str(s, true)
    }
}

/// Flags shared by every subcommand. Each one mirrors a config-file key.
#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// Read parameters from a `key = value` file
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Standard coupling gN(0)
    #[arg(long = "gN0")]
    pub g_n0: Option<f64>,
    /// Film-phase critical temperature, K
    #[arg(long = "Tc")]
    pub tc: Option<f64>,
    /// Standard-phase critical temperature, K
    #[arg(long = "Tc-prime")]
    pub tc_prime: Option<f64>,
    /// Debye temperature, K
    #[arg(long = "TD")]
    pub debye_temperature: Option<f64>,
    /// Effective film coupling G
    #[arg(long = "G")]
    pub effective_coupling: Option<f64>,
    /// Fermi temperature, K
    #[arg(long = "TF")]
    pub fermi_temperature: Option<f64>,
    /// Temperature for point queries, K
    #[arg(long = "T")]
    pub temperature: Option<f64>,
    #[arg(long)]
    pub tau_min: Option<f64>,
    #[arg(long)]
    pub tau_max: Option<f64>,
    #[arg(long)]
    pub n_points: Option<usize>,
    /// Number of pair modes in the Fock oracle
    #[arg(long)]
    pub pairs: Option<usize>,
    /// Base Bogoliubov angle; pair p uses alpha·(p+1)/pairs
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Shell radius in units of 1/length
    #[arg(long)]
    pub k: Option<f64>,
    /// Shell half-width; defaults to the natural spacing of the geometry
    #[arg(long)]
    pub q: Option<f64>,
    /// Lateral edge (cube, film) or first edge (box)
    #[arg(long = "L")]
    pub l: Option<f64>,
    /// Film thickness, or the third box edge
    #[arg(long)]
    pub d: Option<f64>,
    #[arg(long, value_enum)]
    pub geometry: Option<GeometryKind>,
    #[arg(long, value_enum)]
    pub field_mode: Option<FieldMode>,
    #[arg(long)]
    pub lattice_budget: Option<u64>,
    /// Report critical fields in gauss instead of reduced ratios
    #[arg(long)]
    pub absolute_fields: bool,
    /// CSV destination; standard output when absent
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also render the curve as SVG
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub g_n0: f64,
    pub tc: f64,
    pub tc_prime: f64,
    pub debye_temperature: f64,
    pub effective_coupling: f64,
    pub fermi_temperature: f64,
    pub temperature: f64,
    pub tau_min: f64,
    pub tau_max: f64,
    pub n_points: usize,
    pub pairs: usize,
    pub alpha: f64,
    pub k: Option<f64>,
    pub q: Option<f64>,
    pub l: Option<f64>,
    pub d: Option<f64>,
    pub geometry: GeometryKind,
    pub field_mode: FieldMode,
    pub lattice_budget: u64,
    pub absolute_fields: bool,
    pub out: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            g_n0: 0.1,
            tc: 100.0,
            tc_prime: 20.0,
            debye_temperature: 300.0,
            effective_coupling: 0.01,
            fermi_temperature: 1e4,
            temperature: 0.0,
            tau_min: 0.001,
            tau_max: 1.0,
            n_points: 201,
            pairs: 3,
            alpha: 0.7,
            k: None,
            q: None,
            l: None,
            d: None,
            geometry: GeometryKind::Cube,
            field_mode: FieldMode::TwoFluid,
            lattice_budget: bcsreps_core::gap::DEFAULT_LATTICE_BUDGET,
            absolute_fields: false,
            out: None,
            svg: None,
        }
    }
}

const KEYS: &[&str] = &[
    "gN0",
    "Tc",
    "Tc_prime",
    "TD",
    "G",
    "TF",
    "T",
    "tau_min",
    "tau_max",
    "n_points",
    "pairs",
    "alpha",
    "k",
    "q",
    "L",
    "d",
    "geometry",
    "field_mode",
    "lattice_budget",
    "absolute_fields",
    "out",
    "svg",
];

/// Raw file entries: key → (value, line number).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FileEntries(BTreeMap<String, (String, usize)>);

impl FileEntries {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut map = BTreeMap::new();
        let mut unknown = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Usage(format!(
                    "line {}: expected `key = value`",
                    i + 1
                )));
            };
            let key = key.trim().replace('-', "_");
            let value = value.trim();
            if !KEYS.contains(&key.as_str()) {
                unknown.push(format!("{key} (line {})", i + 1));
                continue;
            }
            if value.is_empty() {
                return Err(CliError::Usage(format!(
                    "line {}: key `{key}` has no value",
                    i + 1
                )));
            }
            map.insert(key, (value.to_string(), i + 1));
        }
        if !unknown.is_empty() {
            return Err(CliError::Usage(format!(
                "unknown config keys: {}",
                unknown.join(", ")
            )));
        }
        Ok(Self(map))
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        match self.0.get(key) {
            None => Ok(None),
            Some((v, line)) => v.parse().map(Some).map_err(|_| {
                CliError::Usage(format!(
                    "line {line}: cannot parse value `{v}` for key `{key}`"
                ))
            }),
        }
    }
}

fn pick<T: FromStr>(
    flag: Option<T>,
    file: &FileEntries,
    key: &str,
    default: T,
) -> Result<T, CliError> {
    Ok(match flag {
        Some(v) => v,
        None => file.get(key)?.unwrap_or(default),
    })
}

fn pick_opt<T: FromStr>(
    flag: Option<T>,
    file: &FileEntries,
    key: &str,
) -> Result<Option<T>, CliError> {
    match flag {
        Some(v) => Ok(Some(v)),
        None => file.get(key),
    }
}

/// Merges flags over the file named by `--config` (if any) over defaults.
pub fn parse_config(flags: &Flags) -> Result<RunConfig, CliError> {
    let file = match &flags.config {
        Some(path) => read_file(path)?,
        None => FileEntries::default(),
    };
    merge(flags, &file)
}

fn read_file(path: &Path) -> Result<FileEntries, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    FileEntries::parse(&text)
}

pub fn merge(flags: &Flags, file: &FileEntries) -> Result<RunConfig, CliError> {
    let d = RunConfig::default();
    let absolute_fields = flags.absolute_fields || file.get("absolute_fields")?.unwrap_or(false);
    let cfg = RunConfig {
        g_n0: pick(flags.g_n0, file, "gN0", d.g_n0)?,
        tc: pick(flags.tc, file, "Tc", d.tc)?,
        tc_prime: pick(flags.tc_prime, file, "Tc_prime", d.tc_prime)?,
        debye_temperature: pick(flags.debye_temperature, file, "TD", d.debye_temperature)?,
        effective_coupling: pick(flags.effective_coupling, file, "G", d.effective_coupling)?,
        fermi_temperature: pick(flags.fermi_temperature, file, "TF", d.fermi_temperature)?,
        temperature: pick(flags.temperature, file, "T", d.temperature)?,
        tau_min: pick(flags.tau_min, file, "tau_min", d.tau_min)?,
        tau_max: pick(flags.tau_max, file, "tau_max", d.tau_max)?,
        n_points: pick(flags.n_points, file, "n_points", d.n_points)?,
        pairs: pick(flags.pairs, file, "pairs", d.pairs)?,
        alpha: pick(flags.alpha, file, "alpha", d.alpha)?,
        k: pick_opt(flags.k, file, "k")?,
        q: pick_opt(flags.q, file, "q")?,
        l: pick_opt(flags.l, file, "L")?,
        d: pick_opt(flags.d, file, "d")?,
        geometry: pick(flags.geometry, file, "geometry", d.geometry)?,
        field_mode: pick(flags.field_mode, file, "field_mode", d.field_mode)?,
        lattice_budget: pick(
            flags.lattice_budget,
            file,
            "lattice_budget",
            d.lattice_budget,
        )?,
        absolute_fields,
        out: pick_opt(flags.out.clone(), file, "out")?,
        svg: pick_opt(flags.svg.clone(), file, "svg")?,
    };
    cfg.validate()?;
    Ok(cfg)
}

impl RunConfig {
    fn validate(&self) -> Result<(), CliError> {
        if self.n_points < 2 {
            return Err(CliError::Usage(format!(
                "n_points must be at least 2, got {}",
                self.n_points
            )));
        }
        if !(self.tau_min > 0.0 && self.tau_min < self.tau_max && self.tau_max <= 1.0) {
            return Err(CliError::Usage(format!(
                "grid needs 0 < tau_min < tau_max <= 1, got [{}, {}]",
                self.tau_min, self.tau_max
            )));
        }
        Ok(())
    }

    /// Evenly spaced, strictly increasing, ending exactly at `tau_max`.
    pub fn tau_grid(&self) -> Vec<f64> {
        let n = self.n_points;
        let span = self.tau_max - self.tau_min;
        (0..n)
            .map(|i| {
                if i + 1 == n {
                    self.tau_max
                } else {
                    self.tau_min + span * i as f64 / (n - 1) as f64
                }
            })
            .collect()
    }
}
