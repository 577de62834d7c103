use std::time::Instant;

use planet_wars::{generate_map, GameParameters, GravityField};

#[test]
fn field_cost_grows_with_area() {
    let base = GameParameters::default();
    let planets = generate_map(&base, 3).unwrap();
    let scales = [1.0, 2.0, 3.0];
    let mut areas = Vec::new();
    let mut times = Vec::new();
    for k in scales {
        let p = GameParameters { map_width: base.map_width * k, map_height: base.map_height * k, ..base.clone() };
        let mut best = f64::INFINITY;
        for _ in 0..3 {
            let t = Instant::now();
            std::hint::black_box(GravityField::compute(&planets, &p));
            best = best.min(t.elapsed().as_secs_f64());
        }
        areas.push(p.map_width * p.map_height);
        times.push(best);
    }
    // per-area cost stays within a factor of two across a 9x area range
    let per_area: Vec<f64> = times.iter().zip(&areas).map(|(t, a)| t / a).collect();
    let lo = per_area.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = per_area.iter().cloned().fold(0.0, f64::max);
    assert!(hi / lo < 2.0, "seconds per pixel {per_area:?}");
    assert!(times[2] > times[0] * 4.0, "times {times:?}");
}
