//! Checks the subset-section bound on every point subset of small spaces and
//! prints the largest hyperplane section of a few explicit sets.
//!
//! ```text
//! cargo run --release --example subset_oracle
//! ```

use linefree::analysis;
use linefree::gf::FieldSpec;
use linefree::projgeom::enumerate_points;

fn main() {
    for (n, q) in [(2, 2), (3, 2), (2, 3)] {
        let k = FieldSpec::for_order(q).unwrap();
        let r = analysis::oracle_subset_bound(n, &k).unwrap();
        println!("P^{n}(F_{q}): {} subsets, {} violations", r.subsets, r.violations.len());
    }
    let f3 = FieldSpec::for_order(3).unwrap();
    let pts = enumerate_points(2, &f3);
    for size in [3, 6, 13] {
        let set = &pts[..size];
        println!(
            "first {size} points of P^2(F_3): max section {}",
            analysis::max_section(set, 2, &f3)
        );
    }
}
