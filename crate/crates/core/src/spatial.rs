//! Bucket grid answering "which planet contains this point" in O(1).

use crate::geometry::Vec2;
use crate::map::Planet;
use crate::params::GameParameters;

#[derive(Debug, Clone, PartialEq)]
pub struct PlanetLookup {
    cell: f64,
    cols: usize,
    rows: usize,
    /// `starts[b]..starts[b + 1]` indexes `ids` for bucket `b`.
    starts: Vec<u32>,
    ids: Vec<u32>,
}

impl PlanetLookup {
    pub fn build(planets: &[Planet], p: &GameParameters) -> Self {
        let cell = (2.0 * p.max_radius).max(1.0);
        let cols = ((p.map_width / cell).ceil() as usize).max(1);
        let rows = ((p.map_height / cell).ceil() as usize).max(1);
        let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); cols * rows];
        for pl in planets {
            let clamp_c = |x: f64| ((x / cell).floor().max(0.0) as usize).min(cols - 1);
            let clamp_r = |y: f64| ((y / cell).floor().max(0.0) as usize).min(rows - 1);
            let (c0, c1) = (clamp_c(pl.position.x - pl.radius), clamp_c(pl.position.x + pl.radius));
            let (r0, r1) = (clamp_r(pl.position.y - pl.radius), clamp_r(pl.position.y + pl.radius));
            for r in r0..=r1 {
                for c in c0..=c1 {
                    buckets[r * cols + c].push(pl.id as u32);
                }
            }
        }
        let mut starts = Vec::with_capacity(buckets.len() + 1);
        let mut ids = Vec::new();
        for b in &mut buckets {
            starts.push(ids.len() as u32);
            b.sort_unstable();
            ids.extend_from_slice(b);
        }
        starts.push(ids.len() as u32);
        Self { cell, cols, rows, starts, ids }
    }

    /// Lowest-id planet whose disc contains `pos`.
    #[inline]
    pub fn planet_at(&self, planets: &[Planet], pos: Vec2) -> Option<usize> {
        if !(pos.x >= 0.0 && pos.y >= 0.0) {
            return None;
        }
        let c = (pos.x / self.cell) as usize;
        let r = (pos.y / self.cell) as usize;
        if c >= self.cols || r >= self.rows {
            return None;
        }
        let b = r * self.cols + c;
        let range = self.starts[b] as usize..self.starts[b + 1] as usize;
        self.ids[range]
            .iter()
            .map(|&id| id as usize)
            .find(|&id| planets[id].contains(pos))
    }
}
