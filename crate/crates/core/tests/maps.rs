use planet_wars::{generate_map, Error, GameParameters, Owner};

#[test]
fn default_density_is_feasible_for_nearly_every_seed() {
    let p = GameParameters::default();
    let ok = (0..100).filter(|&s| generate_map(&p, s).is_ok()).count();
    assert!(ok >= 99, "{ok}/100 seeds produced a map");
}

#[test]
fn maps_are_point_symmetric() {
    let p = GameParameters { num_planets: 21, ..Default::default() };
    let planets = generate_map(&p, 5).unwrap();
    let (cx, cy) = (p.map_width / 2.0, p.map_height / 2.0);
    for a in &planets {
        let mirror = planets
            .iter()
            .find(|b| ((b.position.x + a.position.x) / 2.0 - cx).abs() < 1e-9 && ((b.position.y + a.position.y) / 2.0 - cy).abs() < 1e-9)
            .unwrap_or_else(|| panic!("planet {} has no mirror", a.id));
        assert_eq!(mirror.radius, a.radius);
        assert_eq!(mirror.growth_rate, a.growth_rate);
        assert_eq!(mirror.ships, a.ships);
        let owners = (a.owner, mirror.owner);
        assert!(matches!(
            owners,
            (Owner::Neutral, Owner::Neutral) | (Owner::Player1, Owner::Player2) | (Owner::Player2, Owner::Player1)
        ));
    }
}

#[test]
fn planet_counts_across_the_supported_range() {
    for n in [10usize, 33, 64, 100] {
        let k = (n as f64 / 20.0).sqrt().max(1.0);
        let p = GameParameters {
            num_planets: n,
            map_width: (640.0 * k).round(),
            map_height: (480.0 * k).round(),
            ..Default::default()
        };
        let planets = generate_map(&p, 1).unwrap();
        assert_eq!(planets.len(), n);
        assert!(planets.iter().enumerate().all(|(i, pl)| pl.id == i));
    }
}

#[test]
fn overfull_map_reports_progress() {
    let p = GameParameters { num_planets: 100, map_width: 200.0, map_height: 150.0, ..Default::default() };
    match generate_map(&p, 0) {
        Err(Error::MapInfeasible { placed, requested }) => {
            assert_eq!(requested, 100);
            assert!(placed < 100);
        }
        other => panic!("expected infeasible map, got {:?}", other.map(|v| v.len())),
    }
}
