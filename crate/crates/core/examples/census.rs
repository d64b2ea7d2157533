//! Plane-quartic census over F_4 on an index range.
//!
//! ```text
//! cargo run --release --example census -- [start] [end]
//! ```
//!
//! With no arguments the first 2^24 normalized candidates are scanned; pass
//! `0 357913941` for the full census.

use std::time::Instant;

use linefree::search::{exhaustive_quartic_census, RunOptions, ScanTask};

fn main() {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("indices are integers"))
        .collect();
    let full = ScanTask::census();
    let (start, end) = match args[..] {
        [] => (0, 1 << 24),
        [s] => (s, full.end),
        [s, e, ..] => (s, e),
    };
    let t0 = Instant::now();
    let out = exhaustive_quartic_census(start, end, &RunOptions::default()).expect("valid range");
    let secs = t0.elapsed().as_secs_f64();
    let s = &out.summary;
    println!("range      [{start}, {end})");
    println!("line-free  {} of {}", s.counts.line_free, s.counts.total);
    println!("max N      {:?}", s.max_n_line_free);
    for (n, &c) in s.histogram.iter().enumerate().filter(|(_, &c)| c > 0) {
        println!("  N={n:2}  {c}");
    }
    println!("K-equivalent N=14: {}", s.counts.k_equivalent);
    println!("unflagged EXCEEDS: {}", s.counts.exceeds_unflagged);
    println!("records: {}", out.records.len());
    println!("{:.1} s, {:.3e} candidates/s", secs, s.counts.total as f64 / secs);
}
