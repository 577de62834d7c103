//! The single bundle of game-defining values.
//!
//! A game holds exactly one `GameParameters` (behind an `Arc`); planners and
//! tuning experiments may clone it and run copies of the game under
//! independently modified values. Nothing here is global.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Every tunable value of the game. Serializes as a flat JSON object keyed by
/// the camelCase field names.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields, default)]
pub struct GameParameters {
    /// Planets on the map, home planets included.
    pub num_planets: usize,
    /// Map width in pixels.
    pub map_width: f64,
    /// Map height in pixels.
    pub map_height: f64,
    /// Scales planet mass (radius squared) into force.
    pub gravitational_constant: f64,
    /// Lower end of the growth range, ships/tick.
    pub growth_rate_min: f64,
    /// Upper end of the growth range, ships/tick.
    pub growth_rate_max: f64,
    /// Minimum center distance between two planets, in multiples of the
    /// larger radius.
    pub radial_separation: f64,
    pub min_radius: f64,
    pub max_radius: f64,
    /// Launch speed in pixels/tick for both actuators.
    pub ship_launch_speed: f64,
    /// Ships removed from every in-transit payload each tick.
    pub transport_tax: f64,
    /// Fraction of a planet's ships loaded by a source-target launch.
    pub transfer_ratio: f64,
    /// Turret angular velocity, radians/tick.
    pub turret_rotation_rate: f64,
    /// Ships moved onto a latched slingshot transporter per tick.
    pub slingshot_load_rate: f64,
    /// Neutral garrisons are drawn uniformly from `[0, neutralGarrisonMax]`.
    pub neutral_garrison_max: f64,
    /// Tick limit per game.
    pub max_ticks: u32,
    /// Side length in pixels of one gravity-grid cell.
    pub gravity_grid_cell: f64,
}

impl Default for GameParameters {
    fn default() -> Self {
        Self {
            num_planets: 20,
            map_width: 640.0,
            map_height: 480.0,
            gravitational_constant: 0.05,
            growth_rate_min: 0.02,
            growth_rate_max: 0.1,
            radial_separation: 2.5,
            min_radius: 10.0,
            max_radius: 25.0,
            ship_launch_speed: 2.5,
            transport_tax: 0.01,
            transfer_ratio: 0.5,
            turret_rotation_rate: 0.05,
            slingshot_load_rate: 1.0,
            neutral_garrison_max: 30.0,
            max_ticks: 2000,
            gravity_grid_cell: 1.0,
        }
    }
}

/// One violated invariant, reported by field name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub field: &'static str,
    pub rule: &'static str,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.rule)
    }
}

impl GameParameters {
    /// Checks every invariant and returns all violations, not just the first.
    pub fn validate(&self) -> Result<(), Vec<Violation>> {
        let mut errs = Vec::new();
        let mut check = |ok: bool, field: &'static str, rule: &'static str| {
            if !ok {
                errs.push(Violation { field, rule });
            }
        };

        check(self.num_planets >= 2, "numPlanets", "numPlanets >= 2");
        check(
            self.min_radius > 0.0 && self.min_radius.is_finite(),
            "minRadius",
            "minRadius > 0",
        );
        check(
            self.min_radius <= self.max_radius && self.max_radius.is_finite(),
            "maxRadius",
            "minRadius <= maxRadius",
        );
        check(
            self.growth_rate_min >= 0.0,
            "growthRateMin",
            "growthRateMin >= 0",
        );
        check(
            self.growth_rate_min <= self.growth_rate_max && self.growth_rate_max.is_finite(),
            "growthRateMax",
            "growthRateMin <= growthRateMax",
        );
        check(
            self.transfer_ratio > 0.0 && self.transfer_ratio <= 1.0,
            "transferRatio",
            "transferRatio in (0, 1]",
        );
        check(
            self.map_width > 4.0 * self.max_radius && self.map_width.is_finite(),
            "mapWidth",
            "mapWidth > 4 * maxRadius",
        );
        check(
            self.map_height > 4.0 * self.max_radius && self.map_height.is_finite(),
            "mapHeight",
            "mapHeight > 4 * maxRadius",
        );
        check(
            self.gravitational_constant >= 0.0 && self.gravitational_constant.is_finite(),
            "gravitationalConstant",
            "gravitationalConstant >= 0",
        );
        check(
            self.radial_separation >= 0.0 && self.radial_separation.is_finite(),
            "radialSeparation",
            "radialSeparation >= 0",
        );
        check(
            self.ship_launch_speed >= 0.0 && self.ship_launch_speed.is_finite(),
            "shipLaunchSpeed",
            "shipLaunchSpeed >= 0",
        );
        check(
            self.transport_tax >= 0.0 && self.transport_tax.is_finite(),
            "transportTax",
            "transportTax >= 0",
        );
        check(
            self.turret_rotation_rate >= 0.0 && self.turret_rotation_rate.is_finite(),
            "turretRotationRate",
            "turretRotationRate >= 0",
        );
        check(
            self.slingshot_load_rate >= 0.0 && self.slingshot_load_rate.is_finite(),
            "slingshotLoadRate",
            "slingshotLoadRate >= 0",
        );
        check(
            self.neutral_garrison_max >= 0.0 && self.neutral_garrison_max.is_finite(),
            "neutralGarrisonMax",
            "neutralGarrisonMax >= 0",
        );
        check(
            self.gravity_grid_cell > 0.0 && self.gravity_grid_cell.is_finite(),
            "gravityGridCell",
            "gravityGridCell > 0",
        );

        if errs.is_empty() {
            Ok(())
        } else {
            Err(errs)
        }
    }

    /// Growth rate for a planet of the given radius: the radius range is
    /// mapped linearly onto the growth range.
    pub fn growth_for_radius(&self, radius: f64) -> f64 {
        let span = self.max_radius - self.min_radius;
        if span <= 0.0 {
            return self.growth_rate_min;
        }
        let t = ((radius - self.min_radius) / span).clamp(0.0, 1.0);
        self.growth_rate_min + t * (self.growth_rate_max - self.growth_rate_min)
    }
}
