//! Hyperplane-section report for a quartic surface over F_4, printed as JSON.
//!
//! ```text
//! cargo run --release --example profile -- "x0^4 + x1^3*x2 + x2^3*x3 + x3^3*x0"
//! ```

use linefree::analysis::SectionReport;
use linefree::form::HomogeneousForm;
use linefree::gf::FieldSpec;

fn main() {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "x0^4 + x1^3*x2 + x2^3*x3 + x3^3*x0".into());
    let f4 = FieldSpec::for_order(4).unwrap();
    let g = HomogeneousForm::parse_in(&text, &f4, 4).expect("a form in x0..x3");
    let report = SectionReport::build(&g).expect("a quartic surface");
    println!("{}", report.to_json());
}
