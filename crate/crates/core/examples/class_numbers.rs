//! Reduced forms and class numbers for a few imaginary quadratic fields,
//! cross-checked against the Dirichlet character sum.

use superspecial::arithmetic::fundamental_discriminant;
use superspecial::specialvalues::{class_number_analytic, reduced_forms};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for m in [5i64, 14, 23, 26, 39, 71] {
        let d = fundamental_discriminant(-m)?;
        let forms = reduced_forms(d)?;
        let shown: Vec<String> = forms.iter().map(|f| f.to_string()).collect();
        let h = class_number_analytic(d)?;
        assert_eq!(h as usize, forms.len());
        println!("Q(sqrt(-{m})): D = {d}, h = {h}: {}", shown.join(" "));
    }
    Ok(())
}
