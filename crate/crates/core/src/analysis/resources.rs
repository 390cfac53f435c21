use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::routing::Algorithm;

/// FPGA resource kinds covered by the cost curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Resource {
    Alm,
    Register,
}

impl Resource {
    pub fn as_str(&self) -> &'static str {
        match self {
            Resource::Alm => "alm",
            Resource::Register => "register",
        }
    }
}

impl fmt::Display for Resource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Resource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "alm" | "alms" => Ok(Resource::Alm),
            "register" | "registers" | "reg" => Ok(Resource::Register),
            _ => Err(Error::invalid(format!("unknown resource {s:?}"))),
        }
    }
}

/// `a0 + a1·x + a2·x²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quadratic {
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
}

impl Quadratic {
    pub const fn new(a0: f64, a1: f64, a2: f64) -> Self {
        Self { a0, a1, a2 }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.a0 + self.a1 * x + self.a2 * x * x
    }
}

/// ALM and register cost curves per routing algorithm, as functions of the
/// number of routers in the network.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResourceModel {
    pub table_alm: Quadratic,
    pub table_reg: Quadratic,
    pub clockwise_alm: Quadratic,
    pub clockwise_reg: Quadratic,
    pub adaptive_alm: Quadratic,
    pub adaptive_reg: Quadratic,
}

impl ResourceModel {
    /// Regression fits from Cyclone V synthesis runs. The adaptive register
    /// curve is published identical to the table one and is kept that way.
    pub const CYCLONE_V: ResourceModel = ResourceModel {
        table_alm: Quadratic::new(-74.354, 15.537, 0.464),
        table_reg: Quadratic::new(1163.150, -9.069, 2.940),
        clockwise_alm: Quadratic::new(-93.577, 22.553, 0.434),
        clockwise_reg: Quadratic::new(-43.664, 21.039, 0.270),
        adaptive_alm: Quadratic::new(-6237.760, 684.297, 3.329),
        adaptive_reg: Quadratic::new(1163.150, -9.069, 2.940),
    };

    pub fn curve(&self, algorithm: Algorithm, resource: Resource) -> &Quadratic {
        match (algorithm, resource) {
            (Algorithm::Table, Resource::Alm) => &self.table_alm,
            (Algorithm::Table, Resource::Register) => &self.table_reg,
            (Algorithm::Clockwise, Resource::Alm) => &self.clockwise_alm,
            (Algorithm::Clockwise, Resource::Register) => &self.clockwise_reg,
            (Algorithm::Adaptive, Resource::Alm) => &self.adaptive_alm,
            (Algorithm::Adaptive, Resource::Register) => &self.adaptive_reg,
        }
    }
}

impl Default for ResourceModel {
    fn default() -> Self {
        Self::CYCLONE_V
    }
}

/// Estimated usage for a network of `routers` routers. Small networks can
/// come out negative; the fit is reported as is.
pub fn resource_usage(model: &ResourceModel, algorithm: Algorithm, resource: Resource, routers: usize) -> Result<f64> {
    if routers == 0 {
        return Err(Error::invalid("resource model needs at least one router"));
    }
    Ok(model.curve(algorithm, resource).eval(routers as f64))
}

/// Target device and the share of it granted to the interconnect.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChipProfile {
    pub alm_total: u64,
    pub reg_total: u64,
    pub budget_fraction: f64,
}

impl ChipProfile {
    /// Cyclone V 5CGXFC9A6U19I7.
    pub const CYCLONE_V_5CGXFC9: ChipProfile = ChipProfile {
        alm_total: 113_560,
        reg_total: 12_492_800,
        budget_fraction: 0.35,
    };

    pub fn new(alm_total: u64, reg_total: u64, budget_fraction: f64) -> Result<Self> {
        let p = Self { alm_total, reg_total, budget_fraction };
        p.validate()?;
        Ok(p)
    }

    pub fn with_budget(self, budget_fraction: f64) -> Result<Self> {
        Self::new(self.alm_total, self.reg_total, budget_fraction)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.budget_fraction > 0.0 && self.budget_fraction <= 1.0) {
            return Err(Error::invalid(format!(
                "budget fraction must be in (0, 1], got {}",
                self.budget_fraction
            )));
        }
        if self.alm_total == 0 || self.reg_total == 0 {
            return Err(Error::invalid("chip totals must be positive"));
        }
        Ok(())
    }

    pub fn alm_budget(&self) -> f64 {
        self.budget_fraction * self.alm_total as f64
    }

    pub fn reg_budget(&self) -> f64 {
        self.budget_fraction * self.reg_total as f64
    }
}

impl Default for ChipProfile {
    fn default() -> Self {
        Self::CYCLONE_V_5CGXFC9
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CapacityReport {
    pub algorithm: Algorithm,
    pub alm_total: u64,
    pub reg_total: u64,
    pub budget_fraction: f64,
    pub max_routers: usize,
    /// Resource that runs out first when one more router is added.
    pub binding_resource: Resource,
    pub alm_used: f64,
    pub reg_used: f64,
    /// Set when not even one router fits.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub diagnostic: Option<String>,
}

impl CapacityReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Scan cap. Positive leading coefficients make every published curve
/// exceed any realistic budget long before this.
const MAX_ROUTERS: usize = 10_000_000;

/// Largest router count whose ALM and register estimates both fit the
/// profile's budget, found by scanning upward from one router.
pub fn chip_capacity(model: &ResourceModel, algorithm: Algorithm, profile: &ChipProfile) -> Result<CapacityReport> {
    profile.validate()?;
    let alm = model.curve(algorithm, Resource::Alm);
    let reg = model.curve(algorithm, Resource::Register);
    let (alm_budget, reg_budget) = (profile.alm_budget(), profile.reg_budget());
    let fits = |x: usize| alm.eval(x as f64) <= alm_budget && reg.eval(x as f64) <= reg_budget;

    let mut x = 0;
    while x < MAX_ROUTERS && fits(x + 1) {
        x += 1;
    }
    if x == MAX_ROUTERS {
        return Err(Error::invalid(format!(
            "{algorithm} cost curves never exceed the budget within {MAX_ROUTERS} routers"
        )));
    }
    let over = (x + 1) as f64;
    let binding_resource = if alm.eval(over) > alm_budget { Resource::Alm } else { Resource::Register };
    let diagnostic = (x == 0).then(|| {
        format!(
            "a single {algorithm} router needs {:.1} ALMs and {:.1} registers; budget is {alm_budget:.1} / {reg_budget:.1}",
            alm.eval(1.0),
            reg.eval(1.0)
        )
    });
    Ok(CapacityReport {
        algorithm,
        alm_total: profile.alm_total,
        reg_total: profile.reg_total,
        budget_fraction: profile.budget_fraction,
        max_routers: x,
        binding_resource,
        alm_used: if x == 0 { 0.0 } else { alm.eval(x as f64) },
        reg_used: if x == 0 { 0.0 } else { reg.eval(x as f64) },
        diagnostic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn usage(a: Algorithm, r: Resource, x: usize) -> f64 {
        resource_usage(&ResourceModel::CYCLONE_V, a, r, x).unwrap()
    }

    #[test]
    fn published_curves() {
        // -74.354 + 15.537·275 + 0.464·275²
        assert!((usage(Algorithm::Table, Resource::Alm, 275) - 39288.321).abs() < 1e-6);
        // -6237.760 + 684.297·53 + 3.329·53²
        assert!((usage(Algorithm::Adaptive, Resource::Alm, 53) - 39381.142).abs() < 1e-6);
        for x in [1, 10, 100, 500] {
            assert_eq!(
                usage(Algorithm::Table, Resource::Register, x),
                usage(Algorithm::Adaptive, Resource::Register, x)
            );
        }
        assert!(usage(Algorithm::Adaptive, Resource::Alm, 1) < 0.0);
        assert!(resource_usage(&ResourceModel::CYCLONE_V, Algorithm::Table, Resource::Alm, 0).is_err());
    }

    #[test]
    fn capacity_bracket() {
        let profile = ChipProfile::default();
        for alg in Algorithm::ALL {
            let r = chip_capacity(&ResourceModel::CYCLONE_V, alg, &profile).unwrap();
            let x = r.max_routers;
            assert!(usage(alg, Resource::Alm, x) <= profile.alm_budget());
            assert!(usage(alg, Resource::Alm, x + 1) > profile.alm_budget());
            assert_eq!(r.binding_resource, Resource::Alm);
        }
    }

    #[test]
    fn register_can_bind() {
        let model = ResourceModel { table_reg: Quadratic::new(0.0, 0.0, 100.0), ..ResourceModel::CYCLONE_V };
        let profile = ChipProfile::new(1_000_000, 10_000, 1.0).unwrap();
        let r = chip_capacity(&model, Algorithm::Table, &profile).unwrap();
        assert_eq!(r.max_routers, 10);
        assert_eq!(r.binding_resource, Resource::Register);
    }

    #[test]
    fn nothing_fits() {
        let profile = ChipProfile::new(10, 10, 0.1).unwrap();
        let r = chip_capacity(&ResourceModel::CYCLONE_V, Algorithm::Table, &profile).unwrap();
        assert_eq!(r.max_routers, 0);
        assert!(r.diagnostic.is_some());
    }

    #[test]
    fn profile_validation() {
        assert!(ChipProfile::new(1, 1, 0.0).is_err());
        assert!(ChipProfile::new(1, 1, 1.5).is_err());
        assert!(ChipProfile::new(1, 1, 1.0).is_ok());
        assert!(ChipProfile::default().with_budget(f64::NAN).is_err());
    }

    #[test]
    fn parse_resource() {
        assert_eq!("ALM".parse::<Resource>().unwrap(), Resource::Alm);
        assert_eq!("registers".parse::<Resource>().unwrap(), Resource::Register);
        assert!("dsp".parse::<Resource>().is_err());
    }
}
