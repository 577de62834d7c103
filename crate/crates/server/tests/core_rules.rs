use planet_wars::{Action, GameParameters, Player};
use planet_wars_server::{ControlError, CreateError, InputError, SessionConfig, SessionCore, SessionStatus};

fn human_core() -> SessionCore {
    let mut cfg = SessionConfig::new("heuristic");
    cfg.seed = 7;
    let mut core = SessionCore::new("t", cfg).unwrap();
    core.start().unwrap();
    core
}

#[test]
fn creation_validates_inputs() {
    let core = SessionCore::new("a", SessionConfig { seed: 7, ..SessionConfig::new("heuristic") }).unwrap();
    assert_eq!(core.status(), SessionStatus::Lobby);
    assert_eq!(core.state().tick, 0);
    assert_eq!(core.state().num_planets(), 20);

    let bad = SessionConfig { parameters: GameParameters { num_planets: 1, ..Default::default() }, ..SessionConfig::new("heuristic") };
    match SessionCore::new("b", bad) {
        Err(CreateError::InvalidParameters(v)) => assert!(v.iter().any(|x| x.field == "numPlanets")),
        other => panic!("expected parameter error, got {:?}", other.err()),
    }
    assert!(matches!(SessionCore::new("c", SessionConfig::new("nosuch")), Err(CreateError::UnknownAgent(_))));
    let zero_rate = SessionConfig { tick_rate: 0.0, ..SessionConfig::new("random") };
    assert!(matches!(SessionCore::new("d", zero_rate), Err(CreateError::TickRate(_))));
}

#[test]
fn press_then_tick_latches_owned_planet() {
    let mut core = human_core();
    core.submit_input(Player::One, Action::Press { planet: 0 }).unwrap();
    core.tick([None, Some(Action::NoOp)]);
    assert_eq!(core.state().press_latch[0], Some(0));
}

#[test]
fn last_input_in_a_tick_wins() {
    let mut core = human_core();
    core.submit_input(Player::One, Action::Press { planet: 0 }).unwrap();
    core.submit_input(Player::One, Action::NoOp).unwrap();
    core.tick([None, Some(Action::NoOp)]);
    assert_eq!(core.state().press_latch[0], None);

    core.submit_input(Player::One, Action::Release).unwrap();
    core.submit_input(Player::One, Action::Press { planet: 0 }).unwrap();
    core.tick([None, Some(Action::NoOp)]);
    assert_eq!(core.state().press_latch[0], Some(0));

    // consumed: the next tick plays NoOp and keeps loading
    let before = core.state().planets[0].transporter.payload;
    core.tick([None, Some(Action::NoOp)]);
    assert!(core.state().planets[0].transporter.payload > before);
    assert_eq!(core.replay().records.last().unwrap().a1, Action::NoOp);
}

#[test]
fn inputs_are_checked_against_seat_and_status() {
    let mut lobby = SessionCore::new("l", SessionConfig::new("random")).unwrap();
    assert_eq!(lobby.submit_input(Player::One, Action::Release), Err(InputError::NotRunning));

    let mut core = human_core();
    assert_eq!(core.submit_input(Player::Two, Action::Release), Err(InputError::WrongSeat(Player::Two)));
    core.pause().unwrap();
    assert_eq!(core.submit_input(Player::One, Action::Release), Err(InputError::NotRunning));
    assert!(!core.tick([None, None]), "paused sessions do not tick");
}

#[test]
fn finished_sessions_reject_input_and_control() {
    let mut cfg = SessionConfig::new("heuristic");
    cfg.parameters.max_ticks = 5;
    let mut core = SessionCore::new("f", cfg).unwrap();
    core.start().unwrap();
    for _ in 0..5 {
        core.tick([None, Some(Action::NoOp)]);
    }
    assert_eq!(core.status(), SessionStatus::Finished);
    assert_eq!(core.submit_input(Player::One, Action::Release), Err(InputError::Finished));
    assert_eq!(core.start(), Err(ControlError::Finished));
    assert!(!core.tick([None, None]));
}

#[test]
fn late_ai_moves_play_noop_and_are_counted() {
    let mut core = human_core();
    core.tick([None, None]);
    core.tick([None, Some(Action::SelectPlanet { planet: 1 })]);
    assert_eq!(core.info().late_ai_moves, 1);
    let r = core.replay();
    assert_eq!(r.records[0].a2, Action::NoOp);
    assert_eq!(r.records[1].a2, Action::SelectPlanet { planet: 1 });
}

#[test]
fn action_log_replays_every_hash() {
    let mut core = human_core();
    for t in 0..200u32 {
        let human = match t % 40 {
            0 => Action::Press { planet: 0 },
            25 => Action::Release,
            _ => Action::NoOp,
        };
        if t % 3 == 0 {
            core.submit_input(Player::One, human).unwrap();
        }
        let ai = planet_wars::agents::heuristic_action(core.state(), Player::Two);
        core.tick([None, Some(ai)]);
    }
    let replay = core.replay();
    assert_eq!(replay.records.len(), 200);
    let end = replay.simulate().expect("every recorded hash reproduces");
    assert_eq!(end, *core.state());
}
