//! Point count and bound verdict for a few hypersurfaces.
//!
//! ```text
//! cargo run --example verdict
//! ```

use linefree::analysis::{self, AnalysisError};
use linefree::form::HomogeneousForm;
use linefree::gf::FieldSpec;

fn main() {
    let f4 = FieldSpec::for_order(4).unwrap();
    let f5 = FieldSpec::for_order(5).unwrap();
    let cases = [
        (analysis::k_form(&f4).unwrap(), "the exceptional quartic"),
        (analysis::elliptic_quadric(&f4), "an elliptic quadric"),
        (analysis::elliptic_quadric(&f5), "an elliptic quadric"),
        (
            HomogeneousForm::parse_in("x0^3+x1^3+x2^3+x3^3", &f4, 4).unwrap(),
            "the Fermat cubic",
        ),
    ];
    for (g, what) in &cases {
        let q = g.field().q();
        match analysis::check_bound(g) {
            Ok(v) => println!(
                "F_{q}, {what}: N = {}, bound = {}, {}{}",
                v.n_points,
                v.bound,
                v.status.as_str(),
                if v.exception_flag { " (exception)" } else { "" }
            ),
            Err(AnalysisError::NotLineFree(k)) => println!("F_{q}, {what}: contains {k} lines"),
            Err(e) => println!("F_{q}, {what}: {e}"),
        }
    }
}
