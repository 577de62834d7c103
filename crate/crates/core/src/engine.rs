//! The forward model.
//!
//! A [`GameState`] owns its planets (each with its single transporter) and
//! per-player actuator bookkeeping, and shares the immutable parameters,
//! gravity field and planet lookup through `Arc`s. Cloning is therefore a
//! single `Vec` copy plus reference-count bumps.
//!
//! One tick runs these phases in order: actions (P1 then P2), growth, turret
//! rotation, transit integration, arrivals and out-of-bounds losses, tick
//! increment. Each phase is O(planets).

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use smallvec::SmallVec;

use crate::actuators::{self, ActuatorKind};
use crate::error::Result;
use crate::geometry::Vec2;
use crate::gravity::GravityField;
use crate::map::{generate_map, Owner, Planet, Player};
use crate::params::GameParameters;
use crate::spatial::PlanetLookup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum TransporterStatus {
    Docked,
    InTransit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Transporter {
    pub home_planet: usize,
    pub status: TransporterStatus,
    pub position: Vec2,
    pub velocity: Vec2,
    pub payload: f64,
    pub payload_owner: Player,
}

impl Transporter {
    pub fn docked(home_planet: usize, position: Vec2) -> Self {
        Self {
            home_planet,
            status: TransporterStatus::Docked,
            position,
            velocity: Vec2::ZERO,
            payload: 0.0,
            payload_owner: Player::One,
        }
    }

    #[inline]
    pub fn is_docked(&self) -> bool {
        self.status == TransporterStatus::Docked
    }

    #[inline]
    pub fn in_transit(&self) -> bool {
        self.status == TransporterStatus::InTransit
    }

    /// Back home, empty.
    #[inline]
    pub fn dock(&mut self, home: Vec2) {
        self.status = TransporterStatus::Docked;
        self.position = home;
        self.velocity = Vec2::ZERO;
        self.payload = 0.0;
    }

    /// Removes `tax` ships. A payload driven below zero changes hands.
    #[inline]
    pub fn pay_tax(&mut self, tax: f64) {
        let rest = self.payload - tax;
        if rest < 0.0 {
            self.payload = -rest;
            self.payload_owner = self.payload_owner.opponent();
        } else {
            self.payload = rest;
        }
    }
}

/// A player's input token for one tick. Its meaning depends on the player's
/// actuator; tokens that do not belong to that actuator, or that are illegal
/// in the current state, behave exactly like `NoOp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(tag = "kind")]
pub enum Action {
    #[default]
    #[serde(rename = "noop")]
    NoOp,
    #[serde(rename = "select")]
    SelectPlanet { planet: usize },
    #[serde(rename = "press")]
    Press { planet: usize },
    #[serde(rename = "release")]
    Release,
    /// One-shot source/target pair for [`ActuatorKind::PairedSourceTarget`].
    #[serde(rename = "launch")]
    Launch { source: usize, target: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    P1Win,
    P2Win,
    Draw,
}

impl Outcome {
    pub fn winner(self) -> Option<Player> {
        match self {
            Outcome::P1Win => Some(Player::One),
            Outcome::P2Win => Some(Player::Two),
            Outcome::Draw => None,
        }
    }

    pub fn win_for(player: Player) -> Outcome {
        match player {
            Player::One => Outcome::P1Win,
            Player::Two => Outcome::P2Win,
        }
    }
}

/// What happened during one tick, beyond what the successor state shows.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct StepEvents {
    pub launches: u32,
    pub arrivals: u32,
    pub transporters_lost: u32,
    pub ships_lost_off_map: f64,
}

/// Weight of one planet of ownership advantage in [`GameState::score`].
pub const PLANET_WEIGHT: f64 = 10.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GameState {
    pub tick: u32,
    pub planets: Vec<Planet>,
    pub parameters: Arc<GameParameters>,
    pub actuators: [ActuatorKind; 2],
    pub pending_source: [Option<usize>; 2],
    pub press_latch: [Option<usize>; 2],
    #[serde(with = "omitted", default)]
    gravity: Option<Arc<GravityField>>,
    #[serde(skip)]
    lookup: Option<Arc<PlanetLookup>>,
}

mod omitted {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(_: &Option<Arc<GravityField>>, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_none()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Arc<GravityField>>, D::Error> {
        serde::de::IgnoredAny::deserialize(d)?;
        Ok(None)
    }
}

impl GameState {
    /// Fresh game with source-target actuators for both players.
    pub fn new_game(params: GameParameters, seed: u64) -> Result<Self> {
        Self::new_game_with(params, seed, [ActuatorKind::SourceTarget; 2])
    }

    pub fn new_game_with(params: GameParameters, seed: u64, actuators: [ActuatorKind; 2]) -> Result<Self> {
        let planets = generate_map(&params, seed)?;
        Ok(Self::from_planets(Arc::new(params), planets, actuators))
    }

    /// Builds a state around an explicit planet list; computes the field.
    pub fn from_planets(parameters: Arc<GameParameters>, planets: Vec<Planet>, actuators: [ActuatorKind; 2]) -> Self {
        let mut s = Self {
            tick: 0,
            planets,
            parameters,
            actuators,
            pending_source: [None; 2],
            press_latch: [None; 2],
            gravity: None,
            lookup: None,
        };
        s.recompute_gravity();
        s
    }

    pub fn params(&self) -> &GameParameters {
        &self.parameters
    }

    pub fn gravity(&self) -> Option<&Arc<GravityField>> {
        self.gravity.as_ref()
    }

    pub fn has_gravity(&self) -> bool {
        self.gravity.is_some()
    }

    /// Drops the field, as after deserialization.
    pub fn clear_gravity(&mut self) {
        self.gravity = None;
        self.lookup = None;
    }

    /// Rebuilds the gravity field and planet lookup from the current map.
    pub fn recompute_gravity(&mut self) {
        self.gravity = Some(Arc::new(GravityField::compute(&self.planets, &self.parameters)));
        self.lookup = Some(Arc::new(PlanetLookup::build(&self.planets, &self.parameters)));
    }

    /// Recomputes the field only if it is missing.
    pub fn ensure_gravity(&mut self) {
        if self.gravity.is_none() || self.lookup.is_none() {
            self.recompute_gravity();
        }
    }

    pub fn num_planets(&self) -> usize {
        self.planets.len()
    }

    /// Successor state; `self` is untouched.
    pub fn next_state(&self, a1: Action, a2: Action) -> GameState {
        let mut next = self.clone();
        next.step(a1, a2);
        next
    }

    /// Advances this state by one tick in place.
    pub fn step(&mut self, a1: Action, a2: Action) -> StepEvents {
        self.ensure_gravity();
        let mut events = StepEvents::default();
        events.launches += self.apply_actions(a1, a2);
        self.grow();
        self.rotate_turrets();
        self.integrate_transit();
        self.resolve_transit(&mut events);
        self.tick += 1;
        events
    }

    /// Phase 1: decodes both players' actions; returns the number of launches.
    pub fn apply_actions(&mut self, a1: Action, a2: Action) -> u32 {
        let mut launches = 0;
        if actuators::apply(self, Player::One, a1) {
            launches += 1;
        }
        if actuators::apply(self, Player::Two, a2) {
            launches += 1;
        }
        launches
    }

    /// Phase 2: every owned planet gains its growth rate.
    pub fn grow(&mut self) {
        for p in &mut self.planets {
            if p.owner != Owner::Neutral {
                p.ships += p.growth_rate;
            }
        }
    }

    /// Phase 3: every turret turns by the configured rate, kept in [0, 2π).
    pub fn rotate_turrets(&mut self) {
        let rate = self.parameters.turret_rotation_rate;
        for p in &mut self.planets {
            let mut a = p.turret_angle + rate;
            if a >= std::f64::consts::TAU {
                a -= std::f64::consts::TAU;
            }
            p.turret_angle = a;
        }
    }

    /// Phase 4: semi-implicit Euler step and tax for every transporter in
    /// flight.
    pub fn integrate_transit(&mut self) {
        self.ensure_gravity();
        let field = self.gravity.clone().expect("gravity present");
        let tax = self.parameters.transport_tax;
        for p in &mut self.planets {
            let t = &mut p.transporter;
            if t.in_transit() {
                t.velocity += field.at(t.position);
                t.position += t.velocity;
                t.pay_tax(tax);
            }
        }
    }

    /// Phase 5: docks transporters that entered a planet and destroys those
    /// that left the map. Payloads arriving at the same planet in the same
    /// tick are netted per owner before landing, so resolution does not
    /// depend on planet order.
    pub fn resolve_transit(&mut self, events: &mut StepEvents) {
        self.ensure_gravity();
        let lookup = self.lookup.clone().expect("lookup present");
        let margin = 2.0 * self.parameters.max_radius;
        let (w, h) = (self.parameters.map_width, self.parameters.map_height);

        let mut landings: SmallVec<[(usize, Player, f64); 8]> = SmallVec::new();
        for i in 0..self.planets.len() {
            let (pos, owner, payload) = {
                let t = &self.planets[i].transporter;
                if !t.in_transit() {
                    continue;
                }
                (t.position, t.payload_owner, t.payload)
            };
            if pos.x < -margin || pos.y < -margin || pos.x > w + margin || pos.y > h + margin {
                events.transporters_lost += 1;
                events.ships_lost_off_map += payload;
                let home = self.planets[i].position;
                self.planets[i].transporter.dock(home);
                continue;
            }
            if let Some(target) = lookup.planet_at(&self.planets, pos) {
                events.arrivals += 1;
                landings.push((target, owner, payload));
                let home = self.planets[i].position;
                self.planets[i].transporter.dock(home);
            }
        }

        match landings.len() {
            0 => {}
            1 => {
                let (target, owner, payload) = landings[0];
                land_payload(&mut self.planets[target], owner, payload);
            }
            _ => {
                landings.sort_by_key(|l| l.0);
                let mut k = 0;
                while k < landings.len() {
                    let target = landings[k].0;
                    let mut totals = [0.0f64; 2];
                    while k < landings.len() && landings[k].0 == target {
                        totals[landings[k].1.index()] += landings[k].2;
                        k += 1;
                    }
                    let net = totals[0] - totals[1];
                    if net > 0.0 {
                        land_payload(&mut self.planets[target], Player::One, net);
                    } else if net < 0.0 {
                        land_payload(&mut self.planets[target], Player::Two, -net);
                    }
                }
            }
        }
    }

    /// Ships owned by `player`: planets plus every payload it owns, in
    /// flight or being loaded.
    pub fn total_ships(&self, player: Player) -> f64 {
        let owner = Owner::from(player);
        let mut total = 0.0;
        for p in &self.planets {
            if p.owner == owner {
                total += p.ships;
            }
            if p.transporter.payload_owner == player {
                total += p.transporter.payload;
            }
        }
        total
    }

    /// Every ship on the map regardless of owner.
    pub fn all_ships(&self) -> f64 {
        self.planets
            .iter()
            .map(|p| p.ships + p.transporter.payload)
            .sum()
    }

    pub fn owned_planets(&self, player: Player) -> usize {
        let owner = Owner::from(player);
        self.planets.iter().filter(|p| p.owner == owner).count()
    }

    fn is_alive(&self, player: Player) -> bool {
        let owner = Owner::from(player);
        self.planets.iter().any(|p| {
            p.owner == owner || (p.transporter.payload_owner == player && p.transporter.payload > 0.0)
        })
    }

    /// Outcome if the game is over: elimination first, then the tick limit.
    pub fn is_terminal(&self) -> Option<Outcome> {
        let alive = [self.is_alive(Player::One), self.is_alive(Player::Two)];
        match alive {
            [true, false] => return Some(Outcome::P1Win),
            [false, true] => return Some(Outcome::P2Win),
            [false, false] => return Some(Outcome::Draw),
            _ => {}
        }
        if self.tick >= self.parameters.max_ticks {
            let a = self.total_ships(Player::One);
            let b = self.total_ships(Player::Two);
            return Some(if a > b {
                Outcome::P1Win
            } else if b > a {
                Outcome::P2Win
            } else {
                Outcome::Draw
            });
        }
        None
    }

    /// Ship differential plus a bonus per planet of ownership advantage.
    /// `score(s, P1) == -score(s, P2)` exactly.
    pub fn score(&self, player: Player) -> f64 {
        let opp = player.opponent();
        let ships = self.total_ships(player) - self.total_ships(opp);
        let planets = self.owned_planets(player) as f64 - self.owned_planets(opp) as f64;
        ships + PLANET_WEIGHT * planets
    }

    /// Stable digest of everything that defines the state (the derived
    /// gravity field excluded).
    pub fn state_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.tick.to_le_bytes());
        let opt = |h: &mut Sha256, v: Option<usize>| match v {
            Some(x) => h.update((x as u64 + 1).to_le_bytes()),
            None => h.update(0u64.to_le_bytes()),
        };
        for i in 0..2 {
            opt(&mut h, self.pending_source[i]);
            opt(&mut h, self.press_latch[i]);
            h.update([self.actuators[i] as u8]);
        }
        for p in &self.planets {
            let t = &p.transporter;
            for v in [
                p.position.x,
                p.position.y,
                p.radius,
                p.growth_rate,
                p.ships,
                p.turret_angle,
                t.position.x,
                t.position.y,
                t.velocity.x,
                t.velocity.y,
                t.payload,
            ] {
                h.update(v.to_bits().to_le_bytes());
            }
            h.update([p.owner as u8, t.status as u8, t.payload_owner as u8]);
            h.update((t.home_planet as u64).to_le_bytes());
        }
        let digest = h.finalize();
        digest[..16].iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string(self)
    }

    /// Parses a state; the gravity field is absent until
    /// [`GameState::ensure_gravity`] or the next [`GameState::step`].
    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

/// Lands `payload` ships owned by `owner` on `planet`: reinforcement for the
/// owner, otherwise a fight where the larger side keeps the difference. An
/// exact tie leaves the defender in place with no ships.
#[inline]
pub fn land_payload(planet: &mut Planet, owner: Player, payload: f64) {
    if planet.owner.is(owner) {
        planet.ships += payload;
        return;
    }
    let rest = planet.ships - payload;
    if rest < 0.0 {
        planet.owner = owner.into();
        planet.ships = -rest;
    } else {
        planet.ships = rest;
    }
}

/// Resolves an arriving transporter at `planet` and docks it at `home`.
pub fn resolve_arrival(planet: &mut Planet, transporter: &mut Transporter, home: Vec2) {
    land_payload(planet, transporter.payload_owner, transporter.payload);
    transporter.dock(home);
}
