//! Actuators: what an action token means.
//!
//! The engine stores one [`ActuatorKind`] per player and routes each tick's
//! token through it. Decode state (`pending_source`, `press_latch`) lives in
//! the game state so copies stay self-contained.
//!
//! Source-target is a two-tick protocol: the first `SelectPlanet` names an
//! owned planet with a docked transporter, the next one names the target.
//! Slingshot latches a planet on `Press`, loads ships every tick while
//! latched, and launches along the turret on `Release`.

use serde::{Deserialize, Serialize};

use crate::engine::{Action, GameState, TransporterStatus};
use crate::geometry::Vec2;
use crate::map::Player;
use crate::params::GameParameters;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum ActuatorKind {
    SourceTarget,
    Slingshot,
    /// Source and target in a single token; action space N² + 1.
    PairedSourceTarget,
}

impl ActuatorKind {
    /// Number of distinct tokens, `NoOp` included.
    pub fn action_space(self, num_planets: usize) -> usize {
        match self {
            ActuatorKind::SourceTarget => num_planets + 1,
            ActuatorKind::Slingshot => num_planets + 2,
            ActuatorKind::PairedSourceTarget => num_planets * num_planets + 1,
        }
    }

    /// Token for an index in `0..action_space(n)`; out-of-range maps to `NoOp`.
    #[inline]
    pub fn action_at(self, index: usize, n: usize) -> Action {
        match self {
            ActuatorKind::SourceTarget if index < n => Action::SelectPlanet { planet: index },
            ActuatorKind::Slingshot if index < n => Action::Press { planet: index },
            ActuatorKind::Slingshot if index == n => Action::Release,
            ActuatorKind::PairedSourceTarget if index < n * n => Action::Launch {
                source: index / n,
                target: index % n,
            },
            _ => Action::NoOp,
        }
    }

    /// Inverse of [`ActuatorKind::action_at`] for tokens this actuator owns.
    pub fn index_of(self, action: Action, n: usize) -> Option<usize> {
        match (self, action) {
            (ActuatorKind::SourceTarget, Action::NoOp) => Some(n),
            (ActuatorKind::SourceTarget, Action::SelectPlanet { planet }) if planet < n => Some(planet),
            (ActuatorKind::Slingshot, Action::Press { planet }) if planet < n => Some(planet),
            (ActuatorKind::Slingshot, Action::Release) => Some(n),
            (ActuatorKind::Slingshot, Action::NoOp) => Some(n + 1),
            (ActuatorKind::PairedSourceTarget, Action::Launch { source, target }) if source < n && target < n => {
                Some(source * n + target)
            }
            (ActuatorKind::PairedSourceTarget, Action::NoOp) => Some(n * n),
            _ => None,
        }
    }
}

/// `actionSpace` for a parameter set.
pub fn action_space(kind: ActuatorKind, p: &GameParameters) -> usize {
    kind.action_space(p.num_planets)
}

/// Routes one player's token through that player's actuator. Returns true if
/// a transporter launched.
pub fn apply(state: &mut GameState, player: Player, action: Action) -> bool {
    match state.actuators[player.index()] {
        ActuatorKind::SourceTarget => decode_source_target(state, player, action),
        ActuatorKind::Slingshot => decode_slingshot(state, player, action),
        ActuatorKind::PairedSourceTarget => decode_paired(state, player, action),
    }
}

#[inline]
fn can_launch_from(state: &GameState, player: Player, planet: usize) -> bool {
    state
        .planets
        .get(planet)
        .is_some_and(|p| p.owner.is(player) && p.transporter.is_docked())
}

/// Sends `ships` (already removed from the planet) along `direction`. The
/// transporter starts just outside the planet's surface.
fn launch(state: &mut GameState, player: Player, planet: usize, direction: Vec2, ships: f64) {
    let speed = state.parameters.ship_launch_speed;
    let p = &mut state.planets[planet];
    let t = &mut p.transporter;
    t.status = TransporterStatus::InTransit;
    t.position = p.position + direction * (p.radius + 1.0);
    t.velocity = direction * speed;
    t.payload = ships;
    t.payload_owner = player;
}

fn launch_toward(state: &mut GameState, player: Player, source: usize, target: usize) {
    let ratio = state.parameters.transfer_ratio;
    let dir = (state.planets[target].position - state.planets[source].position).normalized();
    let src = &mut state.planets[source];
    let ships = ratio * src.ships;
    src.ships -= ships;
    launch(state, player, source, dir, ships);
}

fn launch_along_turret(state: &mut GameState, player: Player, planet: usize) {
    let dir = Vec2::from_angle(state.planets[planet].turret_angle);
    let loaded = state.planets[planet].transporter.payload;
    launch(state, player, planet, dir, loaded);
}

/// Two-phase source/target pairing.
pub fn decode_source_target(state: &mut GameState, player: Player, action: Action) -> bool {
    let slot = player.index();
    match (state.pending_source[slot], action) {
        (None, Action::SelectPlanet { planet }) => {
            if can_launch_from(state, player, planet) {
                state.pending_source[slot] = Some(planet);
            }
            false
        }
        (Some(source), Action::SelectPlanet { planet: target })
            if target != source && target < state.planets.len() =>
        {
            state.pending_source[slot] = None;
            if can_launch_from(state, player, source) {
                launch_toward(state, player, source, target);
                true
            } else {
                false
            }
        }
        (Some(_), _) => {
            state.pending_source[slot] = None;
            false
        }
        (None, _) => false,
    }
}

/// Press to latch and load, release to fire along the turret.
pub fn decode_slingshot(state: &mut GameState, player: Player, action: Action) -> bool {
    let slot = player.index();
    let mut launched = false;

    // A latched planet lost to the enemy fires whatever it has loaded.
    if let Some(i) = state.press_latch[slot] {
        if !state.planets[i].owner.is(player) {
            launch_along_turret(state, player, i);
            state.press_latch[slot] = None;
            launched = true;
        }
    }

    let latch = state.press_latch[slot];
    match action {
        Action::Press { planet } if latch != Some(planet) && can_launch_from(state, player, planet) => {
            if let Some(i) = latch {
                launch_along_turret(state, player, i);
                launched = true;
            }
            state.press_latch[slot] = Some(planet);
            state.planets[planet].transporter.payload_owner = player;
            load(state, planet);
        }
        Action::Release if latch.is_some() => {
            launch_along_turret(state, player, latch.unwrap());
            state.press_latch[slot] = None;
            launched = true;
        }
        _ => {
            if let Some(i) = latch {
                load(state, i);
            }
        }
    }
    launched
}

fn load(state: &mut GameState, planet: usize) {
    let rate = state.parameters.slingshot_load_rate;
    let p = &mut state.planets[planet];
    let amount = rate.min(p.ships);
    p.ships -= amount;
    p.transporter.payload += amount;
}

/// Single-token source/target launch.
pub fn decode_paired(state: &mut GameState, player: Player, action: Action) -> bool {
    match action {
        Action::Launch { source, target }
            if source != target && target < state.planets.len() && can_launch_from(state, player, source) =>
        {
            launch_toward(state, player, source, target);
            true
        }
        _ => false,
    }
}

/// Tokens that are not a guaranteed no-op this tick; `NoOp` always first.
pub fn legal_actions(state: &GameState, player: Player) -> Vec<Action> {
    let mut out = Vec::new();
    legal_actions_into(state, player, &mut out);
    out
}

/// [`legal_actions`] into a reusable buffer.
pub fn legal_actions_into(state: &GameState, player: Player, out: &mut Vec<Action>) {
    out.clear();
    for_each_legal(state, player, |a| {
        out.push(a);
        true
    });
}

pub fn legal_action_count(state: &GameState, player: Player) -> usize {
    let mut n = 0;
    for_each_legal(state, player, |_| {
        n += 1;
        true
    });
    n
}

/// The `k`-th legal token in [`legal_actions`] order, without allocating.
pub fn nth_legal_action(state: &GameState, player: Player, k: usize) -> Action {
    let mut seen = 0;
    let mut found = Action::NoOp;
    for_each_legal(state, player, |a| {
        if seen == k {
            found = a;
            return false;
        }
        seen += 1;
        true
    });
    found
}

/// Visits legal tokens in a fixed order until `f` returns false.
pub fn for_each_legal(state: &GameState, player: Player, mut f: impl FnMut(Action) -> bool) {
    if !f(Action::NoOp) {
        return;
    }
    let slot = player.index();
    let n = state.planets.len();
    match state.actuators[slot] {
        ActuatorKind::SourceTarget => match state.pending_source[slot] {
            None => {
                for planet in 0..n {
                    if can_launch_from(state, player, planet) && !f(Action::SelectPlanet { planet }) {
                        return;
                    }
                }
            }
            Some(s) if can_launch_from(state, player, s) => {
                for planet in (0..n).filter(|&j| j != s) {
                    if !f(Action::SelectPlanet { planet }) {
                        return;
                    }
                }
            }
            Some(_) => {}
        },
        ActuatorKind::Slingshot => {
            let latch = state.press_latch[slot];
            if latch.is_some() && !f(Action::Release) {
                return;
            }
            for planet in 0..n {
                if Some(planet) != latch && can_launch_from(state, player, planet) && !f(Action::Press { planet }) {
                    return;
                }
            }
        }
        ActuatorKind::PairedSourceTarget => {
            for source in 0..n {
                if !can_launch_from(state, player, source) {
                    continue;
                }
                for target in (0..n).filter(|&t| t != source) {
                    if !f(Action::Launch { source, target }) {
                        return;
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::Owner;

    fn start(kind: ActuatorKind) -> GameState {
        GameState::new_game_with(GameParameters::default(), 7, [kind; 2]).unwrap()
    }

    #[test]
    fn action_space_sizes() {
        let p = |n| GameParameters { num_planets: n, ..Default::default() };
        assert_eq!(action_space(ActuatorKind::SourceTarget, &p(20)), 21);
        assert_eq!(action_space(ActuatorKind::Slingshot, &p(10)), 12);
        assert_eq!(action_space(ActuatorKind::SourceTarget, &p(100)), 101);
        assert_eq!(action_space(ActuatorKind::PairedSourceTarget, &p(10)), 101);
    }

    #[test]
    fn index_round_trip() {
        for kind in [ActuatorKind::SourceTarget, ActuatorKind::Slingshot, ActuatorKind::PairedSourceTarget] {
            for n in [2, 7, 20] {
                for i in 0..kind.action_space(n) {
                    let a = kind.action_at(i, n);
                    assert_eq!(kind.index_of(a, n), Some(i), "{kind:?} n={n} i={i}");
                }
            }
        }
    }

    #[test]
    fn source_then_target_launches_half() {
        let mut s = start(ActuatorKind::SourceTarget);
        s.planets[3].owner = Owner::Player1;
        s.planets[3].ships = 40.0;
        assert!(!decode_source_target(&mut s, Player::One, Action::SelectPlanet { planet: 3 }));
        assert_eq!(s.pending_source[0], Some(3));
        assert!(decode_source_target(&mut s, Player::One, Action::SelectPlanet { planet: 7 }));
        assert_eq!(s.pending_source[0], None);
        let t = &s.planets[3].transporter;
        assert!(t.in_transit());
        assert_eq!(t.payload, 20.0);
        assert_eq!(s.planets[3].ships, 20.0);
        let want = (s.planets[7].position - s.planets[3].position).normalized() * 2.5;
        assert!((t.velocity - want).length() < 1e-12);
    }

    #[test]
    fn enemy_source_ignored() {
        let mut s = start(ActuatorKind::SourceTarget);
        let before = s.clone();
        decode_source_target(&mut s, Player::One, Action::SelectPlanet { planet: 1 });
        assert_eq!(s, before);
    }

    #[test]
    fn busy_transporter_ignored() {
        let mut s = start(ActuatorKind::SourceTarget);
        s.planets[0].transporter.status = TransporterStatus::InTransit;
        decode_source_target(&mut s, Player::One, Action::SelectPlanet { planet: 0 });
        assert_eq!(s.pending_source[0], None);
    }

    #[test]
    fn reselect_or_noop_clears_pending() {
        let mut s = start(ActuatorKind::SourceTarget);
        decode_source_target(&mut s, Player::One, Action::SelectPlanet { planet: 0 });
        decode_source_target(&mut s, Player::One, Action::SelectPlanet { planet: 0 });
        assert_eq!(s.pending_source[0], None);
        decode_source_target(&mut s, Player::One, Action::SelectPlanet { planet: 0 });
        decode_source_target(&mut s, Player::One, Action::NoOp);
        assert_eq!(s.pending_source[0], None);
        assert!(s.planets[0].transporter.is_docked());
    }

    #[test]
    fn slingshot_ten_tick_load() {
        let mut s = start(ActuatorKind::Slingshot);
        s.planets[0].ships = 50.0;
        assert!(!decode_slingshot(&mut s, Player::One, Action::Press { planet: 0 }));
        for _ in 0..9 {
            decode_slingshot(&mut s, Player::One, Action::NoOp);
        }
        let angle = s.planets[0].turret_angle;
        assert!(decode_slingshot(&mut s, Player::One, Action::Release));
        let t = &s.planets[0].transporter;
        assert_eq!(t.payload, 10.0);
        assert_eq!(s.planets[0].ships, 40.0);
        assert_eq!(s.press_latch[0], None);
        let dir = t.velocity.normalized();
        assert!((dir - Vec2::from_angle(angle)).length() < 1e-9);
    }

    #[test]
    fn slingshot_ignores_neutral_and_stray_release() {
        let mut s = start(ActuatorKind::Slingshot);
        let before = s.clone();
        decode_slingshot(&mut s, Player::One, Action::Press { planet: 5 });
        decode_slingshot(&mut s, Player::One, Action::Release);
        assert_eq!(s, before);
    }

    #[test]
    fn second_press_fires_first() {
        let mut s = start(ActuatorKind::Slingshot);
        s.planets[4].owner = Owner::Player1;
        s.planets[4].ships = 5.0;
        decode_slingshot(&mut s, Player::One, Action::Press { planet: 0 });
        decode_slingshot(&mut s, Player::One, Action::NoOp);
        assert!(decode_slingshot(&mut s, Player::One, Action::Press { planet: 4 }));
        assert!(s.planets[0].transporter.in_transit());
        assert_eq!(s.planets[0].transporter.payload, 2.0);
        assert_eq!(s.press_latch[0], Some(4));
        assert_eq!(s.planets[4].transporter.payload, 1.0);
    }

    #[test]
    fn load_never_exceeds_ships() {
        let mut s = start(ActuatorKind::Slingshot);
        s.planets[0].ships = 2.5;
        decode_slingshot(&mut s, Player::One, Action::Press { planet: 0 });
        for _ in 0..5 {
            decode_slingshot(&mut s, Player::One, Action::NoOp);
        }
        assert_eq!(s.planets[0].ships, 0.0);
        assert_eq!(s.planets[0].transporter.payload, 2.5);
    }

    #[test]
    fn legal_sets() {
        let mut s = start(ActuatorKind::SourceTarget);
        assert_eq!(
            legal_actions(&s, Player::One),
            vec![Action::NoOp, Action::SelectPlanet { planet: 0 }]
        );
        decode_source_target(&mut s, Player::One, Action::SelectPlanet { planet: 0 });
        assert_eq!(legal_actions(&s, Player::One).len(), 20);

        let mut s = start(ActuatorKind::SourceTarget);
        s.planets[1].owner = Owner::Player1;
        assert_eq!(legal_actions(&s, Player::Two), vec![Action::NoOp]);
    }

    #[test]
    fn paired_launch() {
        let mut s = start(ActuatorKind::PairedSourceTarget);
        assert_eq!(legal_actions(&s, Player::One).len(), 20);
        assert!(!decode_paired(&mut s, Player::One, Action::Launch { source: 0, target: 0 }));
        assert!(decode_paired(&mut s, Player::One, Action::Launch { source: 0, target: 3 }));
        assert_eq!(s.planets[0].transporter.payload, 50.0);
    }
}
