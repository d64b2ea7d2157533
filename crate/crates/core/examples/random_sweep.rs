//! Seeded random sweep over quartic surfaces in P^3(F_2).
//!
//! ```text
//! cargo run --release --example random_sweep -- [seed] [samples]
//! ```

use linefree::search::{random_sweep, RunOptions, ScanTask, Space};

fn main() {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().expect("integer"));
    let seed = args.next().unwrap_or(1);
    let samples = args.next().unwrap_or(100_000);
    let space = Space { n: 3, d: 4, p: 2, e: 1 };
    let task = ScanTask::random(space, seed, samples).unwrap();
    let out = random_sweep(&task, &RunOptions::default()).unwrap();
    let s = &out.summary;
    println!(
        "seed {seed}: {} samples, {} line-free, bound {}",
        s.counts.total, s.counts.line_free, s.bound
    );
    println!("max N among line-free: {:?}", s.max_n_line_free);
    for (n, &c) in s.histogram.iter().enumerate().filter(|(_, &c)| c > 0) {
        println!("  N={n:2}  {c}");
    }
    println!("records at or above the bound: {}", out.records.len());
}
