//! The PGL(3, 4)-orbit of the exceptional quartic.
//!
//! ```text
//! LINEFREE_CACHE_DIR=/tmp cargo run --release --example k_orbit
//! ```

use linefree::analysis::{self, KOrbit};
use linefree::form::HomogeneousForm;
use linefree::gf::FieldSpec;

fn main() {
    let orbit = KOrbit::shared();
    println!("orbit size {}", orbit.len());
    let f4 = FieldSpec::for_order(4).unwrap();
    // A coordinate change x0 -> x0 + w*x1 applied by hand.
    let moved = HomogeneousForm::parse(
        "(x0+w*x1)^4+x1^4+x2^4+(x0+w*x1)^2*x1^2+(x0+w*x1)^2*x2^2+x1^2*x2^2\
         +(x0+w*x1)^2*x1*x2+(x0+w*x1)*x1^2*x2+(x0+w*x1)*x1*x2^2",
        &f4,
    )
    .unwrap();
    let fermat = HomogeneousForm::parse("x0^4+x1^4+x2^4", &f4).unwrap();
    for (name, g) in [
        ("K", analysis::k_form(&f4).unwrap()),
        ("moved K", moved),
        ("Fermat", fermat),
    ] {
        println!(
            "{name}: N = {}, equivalent to K: {}",
            analysis::count_points(&g),
            analysis::is_equivalent_to_k(&g).unwrap()
        );
    }
}
