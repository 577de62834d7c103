//! Record a game, store it, and re-simulate it from the seed and the action
//! log alone. A doctored log is caught by the stored hashes.

use planet_wars::arena::{run_match, Replay};
use planet_wars::{Action, Error, GameParameters};

fn main() -> planet_wars::Result<()> {
    let m = run_match("rhea:5:50", "heuristic", &GameParameters::default(), 21, 800)?;
    let mut replay = m.replay;
    replay.record_hashes()?;

    let path = std::env::temp_dir().join("planet-wars-replay.json");
    replay.save(&path)?;
    println!("saved {} ticks to {} ({} bytes)", replay.records.len(), path.display(), std::fs::metadata(&path)?.len());

    let loaded = Replay::load(&path)?;
    let end = loaded.simulate()?;
    println!("re-simulated: {:?} at tick {}, hash {} matches", end.is_terminal(), end.tick, end.state_hash());

    let mut doctored = loaded.clone();
    let i = doctored.records.len() / 2;
    doctored.records[i].a1 = Action::SelectPlanet { planet: 0 };
    doctored.records[i + 1].a1 = Action::SelectPlanet { planet: 1 };
    match doctored.simulate() {
        Err(Error::ReplayDiverged { tick, .. }) => println!("doctored log diverges at tick {tick}"),
        Ok(_) => println!("doctored moves were no-ops; the log still reproduces"),
        Err(e) => return Err(e),
    }
    std::fs::remove_file(path)?;
    Ok(())
}
