//! Forward-model throughput: nextState, copy and full gravity recompute.

use planet_wars::arena::{bench_copy, bench_gravity, bench_next_state};
use planet_wars::GameParameters;

fn main() -> planet_wars::Result<()> {
    let seconds = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2.0);
    let p = GameParameters::default();
    let cores = std::thread::available_parallelism().map_or(1, |n| n.get());
    println!("{cores} core(s), {seconds}s per row\n");
    println!("{:<10} {:>7} {:>12} {:>10}", "op", "threads", "kop/s", "ns/op");
    let rows = [
        bench_next_state(&p, seconds, 1)?,
        bench_next_state(&p, seconds, 4)?,
        bench_copy(&p, seconds, 1)?,
        bench_copy(&p, seconds, 4)?,
        bench_gravity(&p, seconds)?,
    ];
    for r in rows {
        println!("{:<10} {:>7} {:>12.1} {:>10.0}", format!("{:?}", r.op), r.threads, r.kops, r.nanos_per_op());
    }
    Ok(())
}
