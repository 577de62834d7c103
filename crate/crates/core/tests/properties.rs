use planet_wars::actuators::{legal_action_count, legal_actions};
use planet_wars::agents::random_action;
use planet_wars::{Action, ActuatorKind, GameParameters, GameState, Player};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const KINDS: [ActuatorKind; 3] = [ActuatorKind::SourceTarget, ActuatorKind::Slingshot, ActuatorKind::PairedSourceTarget];

/// A state reached by `ticks` of random play on the map from `seed`.
fn played(seed: u64, ticks: u32, kinds: [ActuatorKind; 2]) -> GameState {
    let mut s = GameState::new_game_with(GameParameters::default(), seed, kinds).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xA5A5);
    for _ in 0..ticks {
        if s.is_terminal().is_some() {
            break;
        }
        let a1 = random_action(&s, Player::One, &mut rng);
        let a2 = random_action(&s, Player::Two, &mut rng);
        s.step(a1, a2);
    }
    s
}

fn any_token() -> impl Strategy<Value = Action> {
    prop_oneof![
        Just(Action::NoOp),
        (0usize..24).prop_map(|planet| Action::SelectPlanet { planet }),
        (0usize..24).prop_map(|planet| Action::Press { planet }),
        Just(Action::Release),
        (0usize..24, 0usize..24).prop_map(|(source, target)| Action::Launch { source, target }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn score_is_antisymmetric(seed in 0u64..500, ticks in 0u32..600, k1 in 0usize..3, k2 in 0usize..3) {
        let s = played(seed, ticks, [KINDS[k1], KINDS[k2]]);
        prop_assert_eq!(s.score(Player::One), -s.score(Player::Two));
    }

    #[test]
    fn illegal_tokens_act_as_noop(
        seed in 0u64..500,
        ticks in 0u32..400,
        k in 0usize..3,
        token in any_token(),
        p2 in any::<bool>(),
    ) {
        let s = played(seed, ticks, [KINDS[k], KINDS[(k + 1) % 3]]);
        let player = if p2 { Player::Two } else { Player::One };
        prop_assume!(!legal_actions(&s, player).contains(&token));
        let (a, b) = match player {
            Player::One => (s.next_state(token, Action::NoOp), s.next_state(Action::NoOp, Action::NoOp)),
            Player::Two => (s.next_state(Action::NoOp, token), s.next_state(Action::NoOp, Action::NoOp)),
        };
        prop_assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
    }

    #[test]
    fn serialization_round_trips(seed in 0u64..500, ticks in 0u32..600, k in 0usize..3) {
        let s = played(seed, ticks, [KINDS[k], KINDS[2 - k]]);
        let json = s.to_json().unwrap();
        let mut back = GameState::from_json(&json).unwrap();
        back.ensure_gravity();
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(back.state_hash(), s.state_hash());
    }

    #[test]
    fn legal_sets_fit_the_action_space(seed in 0u64..500, ticks in 0u32..600, k in 0usize..3) {
        let s = played(seed, ticks, [KINDS[k]; 2]);
        let n = s.num_planets();
        for player in [Player::One, Player::Two] {
            let legal = legal_actions(&s, player);
            prop_assert_eq!(legal.len(), legal_action_count(&s, player));
            prop_assert_eq!(legal[0], Action::NoOp);
            for a in legal {
                prop_assert!(KINDS[k].index_of(a, n).is_some());
            }
        }
    }
}

#[test]
fn action_space_sizes_for_every_planet_count() {
    for n in 2..=100usize {
        let k = (n as f64 / 20.0).sqrt().max(1.0);
        let p = GameParameters {
            num_planets: n,
            map_width: (640.0 * k).round(),
            map_height: (480.0 * k).round(),
            gravity_grid_cell: 16.0,
            ..Default::default()
        };
        assert_eq!(planet_wars::action_space(ActuatorKind::SourceTarget, &p), n + 1);
        assert_eq!(planet_wars::action_space(ActuatorKind::Slingshot, &p), n + 2);
        assert_eq!(planet_wars::action_space(ActuatorKind::PairedSourceTarget, &p), n * n + 1);
        for kind in KINDS {
            for i in 0..kind.action_space(n) {
                assert_eq!(kind.index_of(kind.action_at(i, n), n), Some(i), "{kind:?} n={n} i={i}");
            }
        }
        if n % 9 == 0 {
            let s = GameState::new_game(p, n as u64).unwrap();
            assert_eq!(s.num_planets(), n);
        }
    }
}
