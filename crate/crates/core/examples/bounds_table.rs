//! Table of the line-free bound against the trivial bound |P^n(F_q)|.
//!
//! ```text
//! cargo run --example bounds_table
//! ```

use linefree::bounds;

fn main() {
    println!("{:>2} {:>2} {:>2} {:>10} {:>10}", "n", "d", "q", "bound", "|P^n|");
    for n in 2..=5 {
        for q in [2, 3, 4, 5] {
            for d in 2..=q + 1 {
                let b = bounds::main_bound(n, d, q).unwrap();
                let all = bounds::theta(q, n).unwrap().to_string();
                println!("{n:>2} {d:>2} {q:>2} {b:>10} {all:>10}");
            }
        }
    }
    println!("theta_3(-2) = {}", bounds::theta(3, -2).unwrap());
}
