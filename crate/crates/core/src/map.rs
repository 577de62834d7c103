//! Planets, ownership and seeded map generation.
//!
//! Maps are point-symmetric about the map center: planets 0 and 1 are the
//! two home planets, the remaining planets come in mirrored pairs, and an odd
//! planet count puts one neutral planet exactly at the center. Symmetry keeps
//! every generated map fair to both sides.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::engine::Transporter;
use crate::error::{Error, Result};
use crate::geometry::Vec2;
use crate::params::GameParameters;

/// Ships each home planet starts with.
pub const HOME_GARRISON: f64 = 100.0;

/// Rejection-sampling attempts per placement before giving up.
pub const PLACEMENT_ATTEMPTS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Player {
    #[serde(rename = "player1")]
    One,
    #[serde(rename = "player2")]
    Two,
}

impl Player {
    pub const BOTH: [Player; 2] = [Player::One, Player::Two];

    #[inline]
    pub fn opponent(self) -> Player {
        match self {
            Player::One => Player::Two,
            Player::Two => Player::One,
        }
    }

    #[inline]
    pub fn index(self) -> usize {
        match self {
            Player::One => 0,
            Player::Two => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Owner {
    Neutral,
    Player1,
    Player2,
}

impl Owner {
    #[inline]
    pub fn player(self) -> Option<Player> {
        match self {
            Owner::Neutral => None,
            Owner::Player1 => Some(Player::One),
            Owner::Player2 => Some(Player::Two),
        }
    }

    #[inline]
    pub fn is(self, player: Player) -> bool {
        self == Owner::from(player)
    }
}

impl From<Player> for Owner {
    #[inline]
    fn from(p: Player) -> Owner {
        match p {
            Player::One => Owner::Player1,
            Player::Two => Owner::Player2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Planet {
    pub id: usize,
    pub position: Vec2,
    pub radius: f64,
    pub growth_rate: f64,
    pub owner: Owner,
    pub ships: f64,
    pub turret_angle: f64,
    pub transporter: Transporter,
}

impl Planet {
    fn new(id: usize, position: Vec2, radius: f64, growth_rate: f64, owner: Owner, ships: f64) -> Self {
        Self {
            id,
            position,
            radius,
            growth_rate,
            owner,
            ships,
            turret_angle: 0.0,
            transporter: Transporter::docked(id, position),
        }
    }

    #[inline]
    pub fn contains(&self, point: Vec2) -> bool {
        self.position.distance_squared(point) <= self.radius * self.radius
    }
}

/// Generates `p.num_planets` planets deterministically from `seed`.
pub fn generate_map(p: &GameParameters, seed: u64) -> Result<Vec<Planet>> {
    p.validate().map_err(Error::InvalidParameters)?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let center = Vec2::new(p.map_width * 0.5, p.map_height * 0.5);
    let mirror = |v: Vec2| Vec2::new(p.map_width - v.x, p.map_height - v.y);
    let n = p.num_planets;
    let mut placed: Vec<(Vec2, f64)> = Vec::with_capacity(n);

    let fits = |placed: &[(Vec2, f64)], pos: Vec2, r: f64| {
        placed
            .iter()
            .all(|&(q, rq)| pos.distance(q) >= p.radial_separation * r.max(rq))
    };
    let sample_radius = |rng: &mut ChaCha8Rng| {
        if p.max_radius > p.min_radius {
            rng.gen_range(p.min_radius..=p.max_radius)
        } else {
            p.min_radius
        }
    };
    let sample_pos = |rng: &mut ChaCha8Rng, r: f64| {
        Vec2::new(
            rng.gen_range(r..=p.map_width - r),
            rng.gen_range(r..=p.map_height - r),
        )
    };
    let infeasible = |placed: &[(Vec2, f64)]| Error::MapInfeasible {
        placed: placed.len(),
        requested: n,
    };

    // Mirrored pairs: the pair itself must also respect the separation.
    let place_pair = |rng: &mut ChaCha8Rng, placed: &mut Vec<(Vec2, f64)>| -> Result<()> {
        for _ in 0..PLACEMENT_ATTEMPTS {
            let r = sample_radius(rng);
            let a = sample_pos(rng, r);
            let b = mirror(a);
            if a.distance(b) >= p.radial_separation * r && fits(placed, a, r) && fits(placed, b, r) {
                placed.push((a, r));
                placed.push((b, r));
                return Ok(());
            }
        }
        Err(infeasible(placed))
    };

    place_pair(&mut rng, &mut placed)?;

    if n % 2 == 1 {
        let mut ok = false;
        for _ in 0..PLACEMENT_ATTEMPTS {
            let r = sample_radius(&mut rng);
            if fits(&placed, center, r) {
                placed.push((center, r));
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(infeasible(&placed));
        }
    }

    while placed.len() < n {
        place_pair(&mut rng, &mut placed)?;
    }

    let mut planets = Vec::with_capacity(n);
    let mut i = 0;
    while i < n {
        let (pos, r) = placed[i];
        let growth = p.growth_for_radius(r);
        let turret = |pos: Vec2| {
            let d = center - pos;
            if d == Vec2::ZERO {
                0.0
            } else {
                d.y.atan2(d.x).rem_euclid(std::f64::consts::TAU)
            }
        };
        if i < 2 {
            let owner = if i == 0 { Owner::Player1 } else { Owner::Player2 };
            let mut planet = Planet::new(i, pos, r, growth, owner, HOME_GARRISON);
            planet.turret_angle = turret(pos);
            planets.push(planet);
            i += 1;
        } else if n % 2 == 1 && i == 2 {
            let ships = rng.gen_range(0.0..=p.neutral_garrison_max);
            planets.push(Planet::new(i, pos, r, growth, Owner::Neutral, ships));
            i += 1;
        } else {
            let ships = rng.gen_range(0.0..=p.neutral_garrison_max);
            for k in 0..2 {
                let (pos, _) = placed[i + k];
                let mut planet = Planet::new(i + k, pos, r, growth, Owner::Neutral, ships);
                planet.turret_angle = turret(pos);
                planets.push(planet);
            }
            i += 2;
        }
    }
    Ok(planets)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_in_seed() {
        let p = GameParameters::default();
        assert_eq!(generate_map(&p, 1).unwrap(), generate_map(&p, 1).unwrap());
        assert_ne!(generate_map(&p, 1).unwrap(), generate_map(&p, 2).unwrap());
    }

    #[test]
    fn homes_are_owned_and_matched() {
        let p = GameParameters::default();
        for seed in 0..20 {
            let m = generate_map(&p, seed).unwrap();
            assert_eq!(m[0].owner, Owner::Player1);
            assert_eq!(m[1].owner, Owner::Player2);
            assert_eq!(m[0].radius, m[1].radius);
            assert_eq!(m[0].growth_rate, m[1].growth_rate);
            assert_eq!(m[0].ships, HOME_GARRISON);
            assert!(m[2..].iter().all(|pl| pl.owner == Owner::Neutral));
        }
    }

    #[test]
    fn pairwise_separation_and_bounds() {
        let p = GameParameters::default();
        for seed in 0..50 {
            let m = generate_map(&p, seed).unwrap();
            assert_eq!(m.len(), p.num_planets);
            for a in &m {
                assert!(a.position.x >= a.radius && a.position.x <= p.map_width - a.radius);
                assert!(a.position.y >= a.radius && a.position.y <= p.map_height - a.radius);
                assert!(a.ships >= 0.0);
                for b in &m {
                    if a.id < b.id {
                        let need = p.radial_separation * a.radius.max(b.radius);
                        assert!(a.position.distance(b.position) >= need, "seed {seed}: {} {}", a.id, b.id);
                    }
                }
            }
        }
    }

    #[test]
    fn odd_count_places_center_planet() {
        let p = GameParameters { num_planets: 11, ..Default::default() };
        let m = generate_map(&p, 4).unwrap();
        assert_eq!(m.len(), 11);
        assert_eq!(m[2].position, Vec2::new(320.0, 240.0));
        assert_eq!(m[2].owner, Owner::Neutral);
    }

    #[test]
    fn too_dense_map_fails_cleanly() {
        let p = GameParameters {
            num_planets: 100,
            radial_separation: 10.0,
            ..Default::default()
        };
        match generate_map(&p, 0) {
            Err(Error::MapInfeasible { requested, placed }) => {
                assert_eq!(requested, 100);
                assert!(placed < 100);
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn invalid_parameters_rejected() {
        let p = GameParameters { num_planets: 1, ..Default::default() };
        assert!(matches!(generate_map(&p, 0), Err(Error::InvalidParameters(_))));
    }
}
