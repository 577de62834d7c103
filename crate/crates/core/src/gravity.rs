//! Precomputed gravity field.
//!
//! Each cell stores the summed attraction of every planet evaluated at the
//! cell center. Planet mass is the squared radius and the distance is clamped
//! below at the planet radius, so forces stay bounded inside planets. The
//! field depends only on planet positions and radii, so it is computed once
//! per map and shared by every copy of the game.

use std::cell::Cell;

use crate::geometry::Vec2;
use crate::map::Planet;
use crate::params::GameParameters;

thread_local! {
    static COMPUTATIONS: Cell<u64> = const { Cell::new(0) };
}

/// Number of full gravity-field computations performed on this thread.
pub fn computations_on_this_thread() -> u64 {
    COMPUTATIONS.with(|c| c.get())
}

#[derive(Debug, Clone, PartialEq)]
pub struct GravityField {
    cell_size: f64,
    cols: usize,
    rows: usize,
    grid: Vec<Vec2>,
}

/// Attraction of a single planet at `point`.
#[inline]
pub fn planet_force(planet_pos: Vec2, radius: f64, g: f64, point: Vec2) -> Vec2 {
    let delta = planet_pos - point;
    let dist = delta.length();
    if dist == 0.0 {
        return Vec2::ZERO;
    }
    let d = dist.max(radius);
    let magnitude = g * radius * radius / (d * d);
    delta * (magnitude / dist)
}

impl GravityField {
    pub fn compute(planets: &[Planet], p: &GameParameters) -> Self {
        COMPUTATIONS.with(|c| c.set(c.get() + 1));

        let cell = p.gravity_grid_cell;
        let cols = (p.map_width / cell).ceil() as usize;
        let rows = (p.map_height / cell).ceil() as usize;
        let g = p.gravitational_constant;
        let mut grid = vec![Vec2::ZERO; cols * rows];
        if g != 0.0 {
            let sources: Vec<(Vec2, f64)> = planets.iter().map(|pl| (pl.position, pl.radius)).collect();
            for row in 0..rows {
                let y = (row as f64 + 0.5) * cell;
                let line = &mut grid[row * cols..(row + 1) * cols];
                for (col, slot) in line.iter_mut().enumerate() {
                    let point = Vec2::new((col as f64 + 0.5) * cell, y);
                    let mut f = Vec2::ZERO;
                    for &(pos, r) in &sources {
                        f += planet_force(pos, r, g, point);
                    }
                    *slot = f;
                }
            }
        }
        Self { cell_size: cell, cols, rows, grid }
    }

    #[inline]
    pub fn cell_size(&self) -> f64 {
        self.cell_size
    }

    #[inline]
    pub fn dimensions(&self) -> (usize, usize) {
        (self.cols, self.rows)
    }

    /// Center of the cell that `pos` falls in, if inside the grid.
    pub fn cell_center(&self, pos: Vec2) -> Option<Vec2> {
        self.cell_of(pos).map(|(c, r)| {
            Vec2::new((c as f64 + 0.5) * self.cell_size, (r as f64 + 0.5) * self.cell_size)
        })
    }

    #[inline]
    fn cell_of(&self, pos: Vec2) -> Option<(usize, usize)> {
        if !(pos.x >= 0.0 && pos.y >= 0.0) {
            return None;
        }
        let c = (pos.x / self.cell_size) as usize;
        let r = (pos.y / self.cell_size) as usize;
        (c < self.cols && r < self.rows).then_some((c, r))
    }

    /// Nearest-cell lookup; positions outside the grid feel no force.
    #[inline]
    pub fn at(&self, pos: Vec2) -> Vec2 {
        match self.cell_of(pos) {
            Some((c, r)) => self.grid[r * self.cols + c],
            None => Vec2::ZERO,
        }
    }

    /// Raw cell value by column and row.
    pub fn cell(&self, col: usize, row: usize) -> Vec2 {
        self.grid[row * self.cols + col]
    }

    /// Averages the field over `factor`×`factor` blocks, for clients that
    /// only want to draw it.
    pub fn downsample(&self, factor: usize) -> Vec<Vec<Vec2>> {
        let factor = factor.max(1);
        let out_cols = self.cols.div_ceil(factor);
        let out_rows = self.rows.div_ceil(factor);
        (0..out_rows)
            .map(|orow| {
                (0..out_cols)
                    .map(|ocol| {
                        let mut sum = Vec2::ZERO;
                        let mut count = 0.0;
                        for r in orow * factor..((orow + 1) * factor).min(self.rows) {
                            for c in ocol * factor..((ocol + 1) * factor).min(self.cols) {
                                sum += self.cell(c, r);
                                count += 1.0;
                            }
                        }
                        sum * (1.0 / count)
                    })
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::Owner;
    use crate::engine::Transporter;

    fn planet(id: usize, x: f64, y: f64, r: f64) -> Planet {
        Planet {
            id,
            position: Vec2::new(x, y),
            radius: r,
            growth_rate: 0.0,
            owner: Owner::Neutral,
            ships: 0.0,
            turret_angle: 0.0,
            transporter: Transporter::docked(id, Vec2::new(x, y)),
        }
    }

    fn params(g: f64) -> GameParameters {
        GameParameters {
            gravitational_constant: g,
            map_width: 400.0,
            map_height: 300.0,
            ..Default::default()
        }
    }

    #[test]
    fn single_planet_force_matches_formula() {
        // 0.001 * 20^2 / 100^2 = 4e-5, pointing back toward the planet.
        let f = planet_force(Vec2::new(100.0, 100.0), 20.0, 0.001, Vec2::new(200.0, 100.0));
        assert!((f.x + 4e-5).abs() < 1e-18);
        assert_eq!(f.y, 0.0);

        // Same value through the grid with the planet placed on a cell center.
        let field = GravityField::compute(&[planet(0, 100.5, 100.5, 20.0)], &params(0.001));
        let v = field.at(Vec2::new(200.5, 100.5));
        assert!((v.x + 4e-5).abs() < 1e-18, "{v:?}");
        assert_eq!(v.y, 0.0);
    }

    #[test]
    fn zero_g_gives_zero_field() {
        let field = GravityField::compute(&[planet(0, 50.0, 50.0, 20.0)], &params(0.0));
        let (cols, rows) = field.dimensions();
        assert_eq!((cols, rows), (400, 300));
        for r in 0..rows {
            for c in 0..cols {
                assert_eq!(field.cell(c, r), Vec2::ZERO);
            }
        }
    }

    #[test]
    fn symmetric_pair_cancels_at_midpoint() {
        let planets = [planet(0, 100.5, 150.5, 15.0), planet(1, 300.5, 150.5, 15.0)];
        let field = GravityField::compute(&planets, &params(0.05));
        assert_eq!(field.at(Vec2::new(200.5, 150.5)), Vec2::ZERO);
    }

    #[test]
    fn force_is_softened_inside_planet() {
        let g = 0.05;
        let inside = planet_force(Vec2::new(0.0, 0.0), 10.0, g, Vec2::new(2.0, 0.0));
        // d clamps to the radius: magnitude g * r^2 / r^2 = g.
        assert!((inside.length() - g).abs() < 1e-15);
        assert_eq!(planet_force(Vec2::ZERO, 10.0, g, Vec2::ZERO), Vec2::ZERO);
    }

    #[test]
    fn out_of_bounds_is_zero() {
        let field = GravityField::compute(&[planet(0, 50.0, 50.0, 20.0)], &params(0.05));
        assert_eq!(field.at(Vec2::new(-50.0, -50.0)), Vec2::ZERO);
        assert_eq!(field.at(Vec2::new(400.0, 10.0)), Vec2::ZERO);
        assert_eq!(field.at(Vec2::new(f64::NAN, 10.0)), Vec2::ZERO);
    }

    #[test]
    fn points_toward_heavy_planet() {
        let planets = [planet(0, 100.0, 100.0, 25.0), planet(1, 350.0, 250.0, 5.0)];
        let field = GravityField::compute(&planets, &params(0.05));
        let pos = Vec2::new(130.0, 100.0);
        let f = field.at(pos);
        assert!(f.x < 0.0);
        assert!(f.dot(planets[0].position - pos) > 0.0);
    }

    #[test]
    fn counter_increments_per_compute() {
        let before = computations_on_this_thread();
        GravityField::compute(&[planet(0, 50.0, 50.0, 20.0)], &params(0.05));
        assert_eq!(computations_on_this_thread(), before + 1);
    }

    #[test]
    fn downsample_dimensions() {
        let field = GravityField::compute(&[planet(0, 50.0, 50.0, 20.0)], &params(0.05));
        let small = field.downsample(16);
        assert_eq!(small.len(), 19);
        assert_eq!(small[0].len(), 25);
    }
}
