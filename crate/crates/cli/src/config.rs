//! Run configuration. Defaults are filled in first, then command-line flags,
//! then the JSON config file, so a value in the file always wins.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use u2point::{BoxConfig, Interaction, RobinCondition, Side};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Dirichlet,
    Neumann,
}

/// `dirichlet`, `neumann` or a finite Robin length `L` in `φ + Lφ′ = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EdgeSpec {
    Kind(EdgeKind),
    Length(f64),
}

impl EdgeSpec {
    pub fn robin(&self) -> RobinCondition<f64> {
        match self {
            EdgeSpec::Kind(EdgeKind::Dirichlet) => RobinCondition::dirichlet(),
            EdgeSpec::Kind(EdgeKind::Neumann) => RobinCondition::neumann(),
            EdgeSpec::Length(l) => RobinCondition::from_length(*l),
        }
    }
}

impl FromStr for EdgeSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "dirichlet" => Ok(EdgeSpec::Kind(EdgeKind::Dirichlet)),
            "neumann" => Ok(EdgeSpec::Kind(EdgeKind::Neumann)),
            other => match other.parse::<f64>() {
                Ok(l) if l.is_finite() => Ok(EdgeSpec::Length(l)),
                _ => Err(format!("edge must be 'dirichlet', 'neumann' or a finite length, got '{s}'")),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InteractionSection {
    pub theta_plus: f64,
    pub theta_minus: f64,
    pub mu: f64,
    pub nu: f64,
    pub l0: f64,
}

impl Default for InteractionSection {
    /// The free particle.
    fn default() -> Self {
        Self { theta_plus: std::f64::consts::PI, theta_minus: 0.0, mu: std::f64::consts::FRAC_PI_2, nu: 0.0, l0: 1.0 }
    }
}

impl InteractionSection {
    pub fn interaction(&self) -> Interaction {
        Interaction::new(self.theta_plus, self.theta_minus, self.mu, self.nu).with_l0(self.l0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoxSection {
    pub l: f64,
    pub edge: EdgeSpec,
    pub e_min: f64,
    pub e_max: f64,
    pub tol: f64,
}

impl Default for BoxSection {
    fn default() -> Self {
        let d = BoxConfig::<f64>::default();
        Self { l: d.l, edge: EdgeSpec::Kind(EdgeKind::Dirichlet), e_min: d.e_min, e_max: d.e_max, tol: d.tol }
    }
}

impl BoxSection {
    pub fn box_config(&self) -> BoxConfig<f64> {
        BoxConfig { l: self.l, edge: self.edge.robin(), e_min: self.e_min, e_max: self.e_max, tol: self.tol }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SideArg {
    Plus,
    Minus,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Plus => Side::Plus,
            SideArg::Minus => Side::Minus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScatterSection {
    pub k_min: f64,
    pub k_max: f64,
    pub steps: usize,
    pub side: SideArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumSection {
    /// Lowest `levels` levels regardless of the window.
    pub levels: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub resolution: usize,
    pub levels: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Theorem1,
    Duality,
    Gauge,
    Degeneracy,
    Oracle,
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::Theorem1 => "theorem1",
            Suite::Duality => "duality",
            Suite::Gauge => "gauge",
            Suite::Degeneracy => "degeneracy",
            Suite::Oracle => "oracle",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifySection {
    pub suite: Suite,
    /// Suite-specific sample count; `None` uses the suite default.
    pub samples: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CycleArg {
    /// `θ₊: 0 → 2π` at the configured `(θ₋, μ, ν)`.
    ThetaPlus,
    /// `ν: 0 → 2π` at the configured `(θ₊, θ₋, μ)`.
    NuCircle,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnholonomySection {
    pub cycle: CycleArg,
    pub steps: usize,
    pub levels: usize,
    pub band: usize,
    /// Grid points per half for eigenfunctions.
    pub grid: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub dir: PathBuf,
    pub stem: String,
}

/// Everything a run depends on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: String,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interaction: Option<InteractionSection>,
    #[serde(rename = "box", skip_serializing_if = "Option::is_none")]
    pub box_: Option<BoxSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scatter: Option<ScatterSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<SpectrumSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verify: Option<VerifySection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub anholonomy: Option<AnholonomySection>,
    pub output: OutputSection,
}

/// Overlay `over` onto `base`, recursing into objects.
pub fn merge(base: &mut Value, over: Value) {
    match (base, over) {
        (Value::Object(b), Value::Object(o)) => {
            for (k, v) in o {
                match b.get_mut(&k) {
                    Some(slot) => merge(slot, v),
                    None => {
                        b.insert(k, v);
                    }
                }
            }
        }
        (slot, v) => *slot = v,
    }
}

/// Apply a JSON config file on top of the flag-derived config.
pub fn apply_file(cfg: &RunConfig, file: &Value) -> Result<RunConfig, String> {
    if let Some(cmd) = file.get("command") {
        if cmd.as_str() != Some(cfg.command.as_str()) {
            return Err(format!("config file is for command {cmd}, not '{}'", cfg.command));
        }
    }
    let mut v = serde_json::to_value(cfg).map_err(|e| e.to_string())?;
    merge(&mut v, file.clone());
    serde_json::from_value(v).map_err(|e| format!("invalid config file: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn base() -> RunConfig {
        RunConfig {
            command: "spectrum".into(),
            seed: 0,
            interaction: Some(InteractionSection::default()),
            box_: Some(BoxSection::default()),
            scatter: None,
            spectrum: Some(SpectrumSection { levels: None }),
            sweep: None,
            verify: None,
            anholonomy: None,
            output: OutputSection { dir: ".".into(), stem: "spectrum".into() },
        }
    }

    #[test]
    fn file_values_win() {
        let c = apply_file(&base(), &json!({"box": {"l": 2.0, "edge": "neumann"}, "seed": 9})).unwrap();
        let b = c.box_.unwrap();
        assert_eq!(b.l, 2.0);
        assert_eq!(b.edge, EdgeSpec::Kind(EdgeKind::Neumann));
        assert_eq!(b.e_max, BoxSection::default().e_max);
        assert_eq!(c.seed, 9);
    }

    #[test]
    fn unknown_keys_and_wrong_command_are_rejected() {
        assert!(apply_file(&base(), &json!({"box": {"width": 2.0}})).is_err());
        assert!(apply_file(&base(), &json!({"command": "bound"})).is_err());
    }

    #[test]
    fn edge_parsing() {
        assert_eq!("Dirichlet".parse::<EdgeSpec>().unwrap(), EdgeSpec::Kind(EdgeKind::Dirichlet));
        assert_eq!("0.5".parse::<EdgeSpec>().unwrap(), EdgeSpec::Length(0.5));
        assert!("inf".parse::<EdgeSpec>().is_err());
        let j = serde_json::to_string(&EdgeSpec::Length(0.5)).unwrap();
        assert_eq!(j, "0.5");
    }
}
