use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{
    chip_capacity, cycle_report, efficiency_k, memory_report, resource_usage, CapacityReport, ChipProfile,
    MemoryReport, Resource, ResourceModel,
};
use crate::error::{Error, Result};
use crate::routing::{AdaptiveMode, Algorithm, RouterConfig};
use crate::topology::{compare_topologies, SelectionRule};

/// Dataset families, one per published figure group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Figure {
    TopologyMetrics,
    Cycles,
    Efficiency,
    Memory,
    Resources,
    Capacity,
}

impl Figure {
    pub const ALL: [Figure; 6] = [
        Figure::TopologyMetrics,
        Figure::Cycles,
        Figure::Efficiency,
        Figure::Memory,
        Figure::Resources,
        Figure::Capacity,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Figure::TopologyMetrics => "topology_metrics",
            Figure::Cycles => "cycles",
            Figure::Efficiency => "efficiency",
            Figure::Memory => "memory",
            Figure::Resources => "resources",
            Figure::Capacity => "capacity",
        }
    }

    /// CSV header.
    pub fn columns(&self) -> &'static [&'static str] {
        match self {
            Figure::TopologyMetrics => &[
                "n", "selection", "s1", "s2", "circ_D", "circ_Lav", "mesh_D", "mesh_Lav", "torus_D", "torus_Lav",
                "redD_vs_mesh", "redD_vs_torus", "redLav_vs_mesh", "redLav_vs_torus",
            ],
            Figure::Cycles => &["n", "s2", "max_cycles"],
            Figure::Efficiency => &["n", "s2", "algorithm", "K"],
            Figure::Memory => &["n", "payload_bits", "table_bits", "clockwise_bits", "adaptive_bits"],
            Figure::Resources => &["x", "algorithm", "alm", "registers"],
            Figure::Capacity => &[
                "algorithm", "alm_total", "reg_total", "budget_fraction", "max_routers", "binding_resource",
                "alm_used", "reg_used",
            ],
        }
    }

    /// Default sweep: grid sides for the topology comparison, square router
    /// counts 9..=529 elsewhere, and every n in 5..=300 for wrap counts.
    pub fn default_values(&self) -> Vec<usize> {
        match self {
            Figure::TopologyMetrics => (3..=23).collect(),
            Figure::Cycles => (5..=300).collect(),
            Figure::Capacity => Vec::new(),
            _ => (3..=23).map(|m| m * m).collect(),
        }
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Figure::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::invalid(format!("unknown figure {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(Error::invalid(format!("unknown output format {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub figure: Figure,
    /// Grid sides for `topology_metrics`, router counts otherwise. Ignored
    /// by `capacity`.
    pub values: Vec<usize>,
    pub selection: SelectionRule,
    pub mode: AdaptiveMode,
    pub profile: ChipProfile,
    pub output: Option<PathBuf>,
    pub format: OutputFormat,
}

impl ExperimentConfig {
    pub fn new(figure: Figure) -> Self {
        Self {
            figure,
            values: figure.default_values(),
            selection: SelectionRule::BestRing,
            mode: AdaptiveMode::default(),
            profile: ChipProfile::default(),
            output: None,
            format: if figure == Figure::Capacity { OutputFormat::Json } else { OutputFormat::Csv },
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.figure != Figure::Capacity && self.values.is_empty() {
            return Err(Error::invalid(format!("{} needs a non-empty range", self.figure)));
        }
        let routed = matches!(self.figure, Figure::Cycles | Figure::Efficiency);
        if routed && self.selection != SelectionRule::BestRing {
            return Err(Error::invalid(format!(
                "{} routes on ring circulants; only best_ring selection applies",
                self.figure
            )));
        }
        self.profile.validate()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopologyRecord {
    pub n: usize,
    pub selection: SelectionRule,
    pub s1: usize,
    pub s2: usize,
    #[serde(rename = "circ_D")]
    pub circ_d: usize,
    #[serde(rename = "circ_Lav")]
    pub circ_lav: f64,
    #[serde(rename = "mesh_D")]
    pub mesh_d: usize,
    #[serde(rename = "mesh_Lav")]
    pub mesh_lav: f64,
    #[serde(rename = "torus_D")]
    pub torus_d: usize,
    #[serde(rename = "torus_Lav")]
    pub torus_lav: f64,
    #[serde(rename = "redD_vs_mesh")]
    pub red_d_vs_mesh: f64,
    #[serde(rename = "redD_vs_torus")]
    pub red_d_vs_torus: f64,
    #[serde(rename = "redLav_vs_mesh")]
    pub red_lav_vs_mesh: f64,
    #[serde(rename = "redLav_vs_torus")]
    pub red_lav_vs_torus: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleRecord {
    pub n: usize,
    pub s2: usize,
    pub max_cycles: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EfficiencyRecord {
    pub n: usize,
    pub s2: usize,
    pub algorithm: Algorithm,
    #[serde(rename = "K")]
    pub k: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResourceRecord {
    pub x: usize,
    pub algorithm: Algorithm,
    pub alm: f64,
    pub registers: f64,
}

/// Rows of one experiment, in sweep order.
#[derive(Debug, Clone, PartialEq)]
pub enum Dataset {
    TopologyMetrics(Vec<TopologyRecord>),
    Cycles(Vec<CycleRecord>),
    Efficiency(Vec<EfficiencyRecord>),
    Memory(Vec<MemoryReport>),
    Resources(Vec<ResourceRecord>),
    Capacity(Vec<CapacityReport>),
}

impl Dataset {
    pub fn figure(&self) -> Figure {
        match self {
            Dataset::TopologyMetrics(_) => Figure::TopologyMetrics,
            Dataset::Cycles(_) => Figure::Cycles,
            Dataset::Efficiency(_) => Figure::Efficiency,
            Dataset::Memory(_) => Figure::Memory,
            Dataset::Resources(_) => Figure::Resources,
            Dataset::Capacity(_) => Figure::Capacity,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Dataset::TopologyMetrics(r) => r.len(),
            Dataset::Cycles(r) => r.len(),
            Dataset::Efficiency(r) => r.len(),
            Dataset::Memory(r) => r.len(),
            Dataset::Resources(r) => r.len(),
            Dataset::Capacity(r) => r.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn write<W: Write>(&self, format: OutputFormat, writer: W) -> Result<()> {
        match format {
            OutputFormat::Csv => self.write_csv(writer),
            OutputFormat::Json => self.write_json(writer),
        }
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        fn rows<W: Write, T: Serialize>(w: &mut csv::Writer<W>, rows: &[T]) -> Result<()> {
            for r in rows {
                w.serialize(r)?;
            }
            Ok(())
        }
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(writer);
        w.write_record(self.figure().columns())?;
        match self {
            Dataset::TopologyMetrics(r) => rows(&mut w, r)?,
            Dataset::Cycles(r) => rows(&mut w, r)?,
            Dataset::Efficiency(r) => rows(&mut w, r)?,
            Dataset::Memory(r) => rows(&mut w, r)?,
            Dataset::Resources(r) => rows(&mut w, r)?,
            Dataset::Capacity(r) => {
                for c in r {
                    w.write_record([
                        c.algorithm.to_string(),
                        c.alm_total.to_string(),
                        c.reg_total.to_string(),
                        c.budget_fraction.to_string(),
                        c.max_routers.to_string(),
                        c.binding_resource.to_string(),
                        c.alm_used.to_string(),
                        c.reg_used.to_string(),
                    ])?;
                }
            }
        }
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }

    pub fn write_json<W: Write>(&self, mut writer: W) -> Result<()> {
        match self {
            Dataset::TopologyMetrics(r) => serde_json::to_writer_pretty(&mut writer, r)?,
            Dataset::Cycles(r) => serde_json::to_writer_pretty(&mut writer, r)?,
            Dataset::Efficiency(r) => serde_json::to_writer_pretty(&mut writer, r)?,
            Dataset::Memory(r) => serde_json::to_writer_pretty(&mut writer, r)?,
            Dataset::Resources(r) => serde_json::to_writer_pretty(&mut writer, r)?,
            Dataset::Capacity(r) => serde_json::to_writer_pretty(&mut writer, r)?,
        }
        writeln!(writer).map_err(serde_json::Error::io)?;
        Ok(())
    }

    /// Writes to `path`, creating or truncating it.
    pub fn save(&self, format: OutputFormat, path: &Path) -> Result<()> {
        let io_err = |source| Error::Io { path: path.to_path_buf(), source };
        let file = File::create(path).map_err(io_err)?;
        let mut w = BufWriter::new(file);
        self.write(format, &mut w)?;
        w.flush().map_err(io_err)
    }
}

/// Dataset plus free-form observations worth surfacing to the user.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentOutput {
    pub dataset: Dataset,
    pub notes: Vec<String>,
}

/// Published n from which some circulants need more than two wraps.
pub const PUBLISHED_CYCLE_THRESHOLD: usize = 174;

/// First row whose wrap count exceeds two.
pub fn cycle_threshold(rows: &[CycleRecord]) -> Option<CycleRecord> {
    rows.iter().find(|r| r.max_cycles > 2).copied()
}

fn ring_config(n: usize, rule: SelectionRule) -> Result<RouterConfig> {
    RouterConfig::try_from(&rule.select(n)?)
}

fn run_dataset(cfg: &ExperimentConfig) -> Result<Dataset> {
    let values = &cfg.values;
    Ok(match cfg.figure {
        Figure::TopologyMetrics => Dataset::TopologyMetrics(
            compare_topologies(values, cfg.selection)?
                .into_iter()
                .map(|row| TopologyRecord {
                    n: row.n,
                    selection: row.selection,
                    s1: row.circulant.generatrices()[0],
                    s2: row.circulant.generatrices().get(1).copied().unwrap_or(0),
                    circ_d: row.circulant_metrics.diameter,
                    circ_lav: row.circulant_metrics.avg_distance,
                    mesh_d: row.mesh.diameter,
                    mesh_lav: row.mesh.avg_distance,
                    torus_d: row.torus.diameter,
                    torus_lav: row.torus.avg_distance,
                    red_d_vs_mesh: row.red_d_vs_mesh,
                    red_d_vs_torus: row.red_d_vs_torus,
                    red_lav_vs_mesh: row.red_lav_vs_mesh,
                    red_lav_vs_torus: row.red_lav_vs_torus,
                })
                .collect(),
        ),
        Figure::Cycles => Dataset::Cycles(
            values
                .par_iter()
                .map(|&n| {
                    let rc = ring_config(n, cfg.selection)?;
                    Ok(CycleRecord { n, s2: rc.s2(), max_cycles: cycle_report(&rc).max_cycles })
                })
                .collect::<Result<_>>()?,
        ),
        Figure::Efficiency => {
            let per_n: Vec<Vec<EfficiencyRecord>> = values
                .par_iter()
                .map(|&n| {
                    let rc = ring_config(n, cfg.selection)?;
                    Algorithm::ALL
                        .into_iter()
                        .map(|alg| {
                            let rep = efficiency_k(&rc, alg, &cfg.mode, 0)?;
                            Ok(EfficiencyRecord { n, s2: rc.s2(), algorithm: alg, k: rep.k })
                        })
                        .collect()
                })
                .collect::<Result<_>>()?;
            Dataset::Efficiency(per_n.into_iter().flatten().collect())
        }
        Figure::Memory => Dataset::Memory(values.iter().map(|&n| memory_report(n)).collect::<Result<_>>()?),
        Figure::Resources => {
            let model = ResourceModel::CYCLONE_V;
            let mut rows = Vec::with_capacity(values.len() * 3);
            for &x in values {
                for alg in Algorithm::ALL {
                    rows.push(ResourceRecord {
                        x,
                        algorithm: alg,
                        alm: resource_usage(&model, alg, Resource::Alm, x)?,
                        registers: resource_usage(&model, alg, Resource::Register, x)?,
                    });
                }
            }
            Dataset::Resources(rows)
        }
        Figure::Capacity => Dataset::Capacity(
            Algorithm::ALL
                .into_iter()
                .map(|alg| chip_capacity(&ResourceModel::CYCLONE_V, alg, &cfg.profile))
                .collect::<Result<_>>()?,
        ),
    })
}

fn notes_for(dataset: &Dataset) -> Vec<String> {
    let mut notes = Vec::new();
    if let Dataset::Cycles(rows) = dataset {
        match cycle_threshold(rows) {
            Some(r) if r.n == PUBLISHED_CYCLE_THRESHOLD => {
                notes.push(format!("first n with more than two wraps: {} (s2 = {})", r.n, r.s2));
            }
            Some(r) => notes.push(format!(
                "first n with more than two wraps: {} (s2 = {}, {} wraps); published threshold is {}. \
                 The published s2 selection rule is unknown, so the sweep's smallest-s2 best ring \
                 circulants need not match it",
                r.n, r.s2, r.max_cycles, PUBLISHED_CYCLE_THRESHOLD
            )),
            None => notes.push("no circulant in the sweep needs more than two wraps".to_string()),
        }
    }
    if let Dataset::Efficiency(rows) = dataset {
        let worst = rows
            .iter()
            .filter(|r| r.algorithm == Algorithm::Clockwise)
            .max_by(|a, b| a.k.total_cmp(&b.k));
        if let Some(r) = worst {
            notes.push(format!("worst clockwise K = {:.4} at C({}; 1, {})", r.k, r.n, r.s2));
        }
    }
    notes
}

/// Builds the dataset for `config` and, when an output path is set, writes it.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutput> {
    config.validate()?;
    let dataset = run_dataset(config)?;
    if let Some(path) = &config.output {
        dataset.save(config.format, path)?;
    }
    let notes = notes_for(&dataset);
    Ok(ExperimentOutput { dataset, notes })
}
