//! Run configuration: command-line flags layered over environment variables,
//! a `key=value` file and defaults, then validated into a [`RunConfig`].

use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use powergraph_core::spectra::RdQuotientEntries;
use powergraph_core::{AdjacencyRule, Alpha, GroupParams};
use serde::Serialize;

use crate::error::{CliError, ParseError};

/// Prefix of environment overrides, e.g. `POWERGRAPH_ALPHA=0,0.5`.
pub const ENV_PREFIX: &str = "POWERGRAPH_";

pub const DEFAULT_ALPHAS: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];
pub const DEFAULT_TOL: f64 = 1e-8;
pub const DEFAULT_DETOUR_BUDGET_S: f64 = 60.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Graph and matrices.
    Build,
    /// A_α and RD_α spectra, numeric and closed form.
    Spectra,
    /// Metric and strong metric dimension.
    Metric,
    /// Detour matrix and detour eccentricities.
    Detour,
    /// Distance and detour distance degree sequences.
    Dds,
    /// Every verification, with a PASS/FAIL line per claim.
    Report,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Build => "build",
            Command::Spectra => "spectra",
            Command::Metric => "metric",
            Command::Detour => "detour",
            Command::Dds => "dds",
            Command::Report => "report",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum GraphFormat {
    EdgeList,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// Join `x`, `y` when they lie in a common cyclic subgroup.
    #[default]
    Cyclic,
    /// Join `x`, `y` when one is a power of the other.
    Power,
}

impl From<Rule> for AdjacencyRule {
    fn from(r: Rule) -> Self {
        match r {
            Rule::Cyclic => AdjacencyRule::Cyclic,
            Rule::Power => AdjacencyRule::Power,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum RdX {
    /// The `RD_α` quotient with its `H3` diagonal exactly as stated.
    #[default]
    Printed,
    /// The `RD_α` quotient with the `H3` diagonal recomputed from the classes.
    Corrected,
}

impl From<RdX> for RdQuotientEntries {
    fn from(r: RdX) -> Self {
        match r {
            RdX::Printed => RdQuotientEntries::Printed,
            RdX::Corrected => RdQuotientEntries::Corrected,
        }
    }
}

#[derive(Debug, Clone, Parser)]
#[command(name = "powergraph", version, about = "Power graphs of the groups 𝒢(k, p): spectra, metric dimensions, detour distances")]
pub struct Cli {
    /// Exponent k ≥ 2 in N = 2^k p.
    #[arg(long)]
    pub k: Option<u32>,
    /// Odd prime p in N = 2^k p.
    #[arg(long)]
    pub p: Option<u64>,
    /// α in [0, 1]; repeat for a sweep.
    #[arg(long = "alpha", value_name = "ALPHA", allow_negative_numbers = true)]
    pub alphas: Vec<f64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write one file per document into DIR instead of printing.
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Wall-clock budget for the exact detour search.
    #[arg(long = "detour-budget", value_name = "SECONDS")]
    pub detour_budget: Option<f64>,
    /// Absolute tolerance for spectrum comparisons.
    #[arg(long, allow_negative_numbers = true)]
    pub tol: Option<f64>,
    /// Seed for randomised checks.
    #[arg(long)]
    pub seed: Option<u64>,
    /// `key=value` file with the same keys as the flags.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub rule: Option<Rule>,
    #[arg(long = "rd-x", value_enum)]
    pub rd_x: Option<RdX>,
    /// Analyse a graph read from FILE instead of a group.
    #[arg(long, value_name = "FILE")]
    pub graph: Option<PathBuf>,
    /// Input format of --graph; inferred from the extension when omitted.
    #[arg(long = "graph-format", value_enum)]
    pub graph_format: Option<GraphFormat>,
    #[arg(value_enum, required = true, value_name = "COMMAND")]
    pub commands: Vec<Command>,
}

/// One layer of optional settings.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    pub k: Option<u32>,
    pub p: Option<u64>,
    pub alphas: Option<Vec<f64>>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub detour_budget: Option<f64>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub config: Option<PathBuf>,
    pub rule: Option<Rule>,
    pub rd_x: Option<RdX>,
    pub graph: Option<PathBuf>,
    pub graph_format: Option<GraphFormat>,
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, String> {
    value.trim().parse().map_err(|_| format!("invalid value for {key}: {value:?}"))
}

fn parse_enum<T: ValueEnum>(key: &str, value: &str) -> Result<T, String> {
    T::from_str(value.trim(), true).map_err(|_| {
        let names: Vec<String> =
            T::value_variants().iter().filter_map(|v| v.to_possible_value()).map(|v| v.get_name().to_owned()).collect();
        format!("invalid value for {key}: {value:?} (expected one of {})", names.join(", "))
    })
}

impl Settings {
    /// Applies one `key = value` pair. Keys may use `-` or `_`; `alpha` takes
    /// a comma-separated list and accumulates.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        let key = key.trim().to_ascii_lowercase().replace('-', "_");
        match key.as_str() {
            "k" => self.k = Some(parse_num("k", value)?),
            "p" => self.p = Some(parse_num("p", value)?),
            "alpha" | "alphas" => {
                let list = self.alphas.get_or_insert_with(Vec::new);
                for part in value.split(',').filter(|s| !s.trim().is_empty()) {
                    list.push(parse_num("alpha", part)?);
                }
            }
            "format" => self.format = Some(parse_enum("format", value)?),
            "out" => self.out = Some(PathBuf::from(value.trim())),
            "detour_budget" | "detour_time_budget_s" => self.detour_budget = Some(parse_num("detour budget", value)?),
            "tol" => self.tol = Some(parse_num("tol", value)?),
            "seed" => self.seed = Some(parse_num("seed", value)?),
            "config" => self.config = Some(PathBuf::from(value.trim())),
            "rule" => self.rule = Some(parse_enum("rule", value)?),
            "rd_x" => self.rd_x = Some(parse_enum("rd-x", value)?),
            "graph" => self.graph = Some(PathBuf::from(value.trim())),
            "graph_format" => self.graph_format = Some(parse_enum("graph-format", value)?),
            _ => return Err(format!("unknown setting {key:?}")),
        }
        Ok(())
    }

    /// `key = value` lines; blank lines and `#` comments are skipped.
    pub fn from_config_text(text: &str) -> Result<Settings, ParseError> {
        let mut s = Settings::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) =
                line.split_once('=').ok_or_else(|| ParseError::new(idx + 1, format!("expected key=value, got {line:?}")))?;
            s.set(key, value).map_err(|m| ParseError::new(idx + 1, m))?;
        }
        Ok(s)
    }

    /// Variables named `POWERGRAPH_<KEY>`; others are ignored.
    pub fn from_env<I: IntoIterator<Item = (String, String)>>(vars: I) -> Result<Settings, CliError> {
        let mut s = Settings::default();
        let mut vars: Vec<(String, String)> = vars.into_iter().filter(|(k, _)| k.starts_with(ENV_PREFIX)).collect();
        vars.sort();
        for (name, value) in vars {
            s.set(&name[ENV_PREFIX.len()..], &value).map_err(|m| CliError::usage(format!("{name}: {m}")))?;
        }
        Ok(s)
    }

    pub fn from_cli(cli: &Cli) -> Settings {
        Settings {
            k: cli.k,
            p: cli.p,
            alphas: (!cli.alphas.is_empty()).then(|| cli.alphas.clone()),
            format: cli.format,
            out: cli.out.clone(),
            detour_budget: cli.detour_budget,
            tol: cli.tol,
            seed: cli.seed,
            config: cli.config.clone(),
            rule: cli.rule,
            rd_x: cli.rd_x,
            graph: cli.graph.clone(),
            graph_format: cli.graph_format,
        }
    }

    /// Fields set in `over` replace those in `self`.
    pub fn overlay(self, over: Settings) -> Settings {
        Settings {
            k: over.k.or(self.k),
            p: over.p.or(self.p),
            alphas: over.alphas.or(self.alphas),
            format: over.format.or(self.format),
            out: over.out.or(self.out),
            detour_budget: over.detour_budget.or(self.detour_budget),
            tol: over.tol.or(self.tol),
            seed: over.seed.or(self.seed),
            config: over.config.or(self.config),
            rule: over.rule.or(self.rule),
            rd_x: over.rd_x.or(self.rd_x),
            graph: over.graph.or(self.graph),
            graph_format: over.graph_format.or(self.graph_format),
        }
    }
}

/// Validated configuration. Serialised into every report; the output
/// directory is left out so reports do not depend on where they are written.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub k: Option<u32>,
    pub p: Option<u64>,
    pub alphas: Vec<f64>,
    pub commands: Vec<Command>,
    pub format: Format,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    pub detour_time_budget_s: f64,
    pub tol: f64,
    pub seed: u64,
    pub rule: Rule,
    pub rd_x: RdX,
    pub graph: Option<PathBuf>,
    pub graph_format: Option<GraphFormat>,
}

impl RunConfig {
    pub fn validate(s: Settings, commands: Vec<Command>) -> Result<RunConfig, CliError> {
        let alphas = s.alphas.unwrap_or_else(|| DEFAULT_ALPHAS.to_vec());
        if alphas.is_empty() {
            return Err(CliError::usage("at least one alpha is required"));
        }
        for &a in &alphas {
            Alpha::new(a).map_err(|e| CliError::usage(e.to_string()))?;
        }
        let tol = s.tol.unwrap_or(DEFAULT_TOL);
        if !(tol.is_finite() && tol > 0.0) {
            return Err(CliError::usage(format!("tol must be a positive number, got {tol}")));
        }
        let budget = s.detour_budget.unwrap_or(DEFAULT_DETOUR_BUDGET_S);
        if !(budget.is_finite() && budget > 0.0) {
            return Err(CliError::usage(format!("detour budget must be a positive number of seconds, got {budget}")));
        }
        match (&s.graph, s.k, s.p) {
            (Some(_), Some(_), _) | (Some(_), _, Some(_)) => {
                return Err(CliError::usage("--graph cannot be combined with --k/--p"));
            }
            (Some(_), None, None) if commands.contains(&Command::Report) => {
                return Err(CliError::usage("report needs a group: pass --k and --p instead of --graph"));
            }
            (None, Some(k), Some(p)) => {
                GroupParams::new(k, p).map_err(|e| CliError::usage(e.to_string()))?;
            }
            (None, None, _) => return Err(CliError::usage("missing --k (or pass --graph)")),
            (None, _, None) => return Err(CliError::usage("missing --p (or pass --graph)")),
            _ => {}
        }
        let mut commands = commands;
        commands.sort();
        commands.dedup();
        Ok(RunConfig {
            k: s.k,
            p: s.p,
            alphas,
            commands,
            format: s.format.unwrap_or_default(),
            out: s.out,
            detour_time_budget_s: budget,
            tol,
            seed: s.seed.unwrap_or(0),
            rule: s.rule.unwrap_or_default(),
            rd_x: s.rd_x.unwrap_or_default(),
            graph: s.graph,
            graph_format: s.graph_format,
        })
    }

    /// The group, unless the run reads an external graph.
    pub fn params(&self) -> Option<GroupParams> {
        match (self.k, self.p) {
            (Some(k), Some(p)) => GroupParams::new(k, p).ok(),
            _ => None,
        }
    }

    pub fn alpha_values(&self) -> Vec<Alpha> {
        self.alphas.iter().map(|&a| Alpha::new(a).expect("validated")).collect()
    }
}

/// Merges defaults, the config file, `env` and flags, in increasing priority.
/// The config file is named by the flag, else by `POWERGRAPH_CONFIG`.
pub fn resolve<I>(cli: &Cli, env: I) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = (String, String)>,
{
    let env = Settings::from_env(env)?;
    let flags = Settings::from_cli(cli);
    let file = match flags.config.as_ref().or(env.config.as_ref()) {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
            Settings::from_config_text(&text)
                .map_err(|source| CliError::Parse { path: path.display().to_string(), source })?
        }
        None => Settings::default(),
    };
    RunConfig::validate(file.overlay(env).overlay(flags), cli.commands.clone())
}
