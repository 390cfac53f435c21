use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::graph::{build_circulant, build_mesh, build_torus, gcd, CirculantSpec};
use super::metrics::{circulant_profile, metrics, TopologyMetrics};
use crate::error::{Error, Result};

/// How a circulant is picked for a given node count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SelectionRule {
    /// Best C(n; 1, s2) by exhaustive search.
    BestRing,
    /// C(n; D - 1, D) with D = round(sqrt(n / 2)).
    FormulaEq1,
    /// Best C(n; s1, s2) by exhaustive search.
    BestGeneral,
}

impl SelectionRule {
    pub const ALL: [SelectionRule; 3] = [Self::BestRing, Self::FormulaEq1, Self::BestGeneral];

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::BestRing => "best_ring",
            Self::FormulaEq1 => "formula_eq1",
            Self::BestGeneral => "best_general",
        }
    }

    pub fn select(&self, n: usize) -> Result<CirculantSpec> {
        match self {
            Self::BestRing => search_best_ring_circulant(n),
            Self::FormulaEq1 => formula_optimal_circulant(n),
            Self::BestGeneral => search_best_circulant2(n),
        }
    }
}

impl fmt::Display for SelectionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SelectionRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| Error::invalid(format!("unknown selection rule {s:?}")))
    }
}

/// C(n; D - 1, D) with D = round(sqrt(n / 2)).
///
/// When D - 1 would be zero the ring C(n; 1, 2) is returned instead, and for
/// n = 3 (where 2 > n/2) the plain ring C(3; 1).
pub fn formula_optimal_circulant(n: usize) -> Result<CirculantSpec> {
    if n <= 2 {
        return Err(Error::invalid(format!("formula circulant needs n > 2, got {n}")));
    }
    let d = (n as f64 / 2.0).sqrt().round() as usize;
    if d >= 2 {
        return CirculantSpec::new(n, vec![d - 1, d]);
    }
    if n >= 4 {
        CirculantSpec::new(n, vec![1, 2])
    } else {
        CirculantSpec::new(n, vec![1])
    }
}

/// Largest s2 usable by the two-generatrix routers: s2 < n/2.
pub(crate) fn max_proper_s2(n: usize) -> usize {
    n.div_ceil(2) - 1
}

fn check_search_n(n: usize) -> Result<()> {
    if n < 5 {
        return Err(Error::invalid(format!("circulant search needs n >= 5, got {n}")));
    }
    Ok(())
}

/// C(n; 1, s2) minimizing (diameter, average distance); smallest s2 wins ties.
pub fn search_best_ring_circulant(n: usize) -> Result<CirculantSpec> {
    check_search_n(n)?;
    let best = (2..=max_proper_s2(n))
        .into_par_iter()
        .map(|s2| (circulant_profile(n, &[1, s2]), s2))
        .min()
        .unwrap();
    CirculantSpec::new(n, vec![1, best.1])
}

/// C(n; s1, s2) minimizing (diameter, average distance) over all connected
/// pairs with s1 < s2 < n/2; smallest (s1, s2) wins ties.
pub fn search_best_circulant2(n: usize) -> Result<CirculantSpec> {
    check_search_n(n)?;
    let top = max_proper_s2(n);
    let best = (1..top)
        .into_par_iter()
        .flat_map_iter(|s1| (s1 + 1..=top).map(move |s2| (s1, s2)))
        .filter(|&(s1, s2)| gcd(gcd(n, s1), s2) == 1)
        .map(|(s1, s2)| (circulant_profile(n, &[s1, s2]), s1, s2))
        .min()
        .unwrap();
    CirculantSpec::new(n, vec![best.1, best.2])
}

/// One row of the circulant vs mesh vs torus comparison for n = side².
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub side: usize,
    pub n: usize,
    pub selection: SelectionRule,
    pub circulant: CirculantSpec,
    pub circulant_metrics: TopologyMetrics,
    pub mesh: TopologyMetrics,
    pub torus: TopologyMetrics,
    pub red_d_vs_mesh: f64,
    pub red_d_vs_torus: f64,
    pub red_lav_vs_mesh: f64,
    pub red_lav_vs_torus: f64,
}

/// Percentage by which `value` improves on `other`.
pub fn reduction_percent(other: f64, value: f64) -> f64 {
    100.0 * (other - value) / other
}

fn compare_side(side: usize, rule: SelectionRule) -> Result<ComparisonRow> {
    let n = side * side;
    let circulant = rule.select(n)?;
    let circ = metrics(&build_circulant(&circulant))?;
    let mesh = metrics(&build_mesh(side, side)?)?;
    let torus = metrics(&build_torus(side, side)?)?;
    Ok(ComparisonRow {
        side,
        n,
        selection: rule,
        red_d_vs_mesh: reduction_percent(mesh.diameter as f64, circ.diameter as f64),
        red_d_vs_torus: reduction_percent(torus.diameter as f64, circ.diameter as f64),
        red_lav_vs_mesh: reduction_percent(mesh.avg_distance, circ.avg_distance),
        red_lav_vs_torus: reduction_percent(torus.avg_distance, circ.avg_distance),
        circulant,
        circulant_metrics: circ,
        mesh,
        torus,
    })
}

/// Square mesh, square torus and a selected circulant for each n = side².
/// Rows come back in input order.
pub fn compare_topologies(sides: &[usize], rule: SelectionRule) -> Result<Vec<ComparisonRow>> {
    if let Some(&bad) = sides.iter().find(|&&m| m < 3) {
        return Err(Error::invalid(format!("comparison sides must be >= 3, got {bad}")));
    }
    sides.par_iter().map(|&m| compare_side(m, rule)).collect()
}
