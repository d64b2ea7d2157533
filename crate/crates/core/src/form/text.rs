use std::fmt::Write as _;
use std::sync::Arc;

use super::{poly_add_term, poly_mul, FormError, HomogeneousForm, Monomial, Poly};
use crate::expr::{self, Expr};
use crate::gf::FieldSpec;

fn to_poly(field: &FieldSpec, e: &Expr, n_vars: usize) -> Result<Poly, FormError> {
    let constant = |c: u32| {
        let mut p = Poly::new();
        poly_add_term(field, &mut p, Monomial(vec![0; n_vars]), c);
        p
    };
    Ok(match e {
        Expr::Int(v) => constant((v % u64::from(field.p())) as u32),
        Expr::Gen => constant(field.generator()?.idx()),
        Expr::Var(i) => {
            if *i >= n_vars {
                return Err(FormError::VariableOutOfRange { index: *i, n_vars });
            }
            let mut m = vec![0u16; n_vars];
            m[*i] = 1;
            let mut p = Poly::new();
            p.insert(Monomial(m), 1);
            p
        }
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let mut pa = to_poly(field, a, n_vars)?;
            let pb = to_poly(field, b, n_vars)?;
            let negate = matches!(e, Expr::Sub(..));
            for (m, c) in pb {
                poly_add_term(field, &mut pa, m, if negate { field.neg_idx(c) } else { c });
            }
            pa
        }
        Expr::Neg(a) => to_poly(field, a, n_vars)?
            .into_iter()
            .map(|(m, c)| (m, field.neg_idx(c)))
            .collect(),
        Expr::Mul(a, b) => poly_mul(field, &to_poly(field, a, n_vars)?, &to_poly(field, b, n_vars)?),
        Expr::Pow(a, k) => {
            let base = to_poly(field, a, n_vars)?;
            let mut acc = constant(1);
            let mut sq = base;
            let mut k = *k;
            while k > 0 {
                if k & 1 == 1 {
                    acc = poly_mul(field, &acc, &sq);
                }
                k >>= 1;
                if k > 0 {
                    sq = poly_mul(field, &sq, &sq);
                }
            }
            acc
        }
    })
}

fn max_var(e: &Expr) -> Option<usize> {
    match e {
        Expr::Int(_) | Expr::Gen => None,
        Expr::Var(i) => Some(*i),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => max_var(a).max(max_var(b)),
        Expr::Neg(a) | Expr::Pow(a, _) => max_var(a),
    }
}

pub(super) fn parse_form(
    text: &str,
    field: &Arc<FieldSpec>,
    n_vars: Option<usize>,
) -> Result<HomogeneousForm, FormError> {
    let e = expr::parse(text)?;
    let n_vars = match n_vars {
        Some(n) => n,
        None => max_var(&e).map_or(1, |m| m + 1),
    };
    let poly = to_poly(field, &e, n_vars)?;
    HomogeneousForm::from_poly(field, n_vars, poly)
}

pub(super) fn format_form(f: &HomogeneousForm) -> String {
    let mut out = String::new();
    for (i, (exps, c)) in f.terms().enumerate() {
        if i > 0 {
            out.push_str(" + ");
        }
        let coeff = c.to_string();
        let mut factors: Vec<String> = Vec::new();
        if !c.is_one() {
            if coeff.contains('+') {
                factors.push(format!("({coeff})"));
            } else {
                factors.push(coeff);
            }
        }
        for (v, &a) in exps.iter().enumerate() {
            match a {
                0 => {}
                1 => factors.push(format!("x{v}")),
                a => factors.push(format!("x{v}^{a}")),
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}

/// Contents of a form file.
///
/// ```text
/// # comment
/// field 2 2
/// vars 3
/// degree 4
/// (x0+x1+x2)^4 + (x0*x1+x1*x2+x2*x0)^2 + x0*x1*x2*(x0+x1+x2)
/// ```
///
/// `field p e` is required; `vars` and `degree` are optional and, when
/// present, checked against every form. One form per remaining line.
#[derive(Debug, Clone)]
pub struct FormFile {
    pub field: Arc<FieldSpec>,
    pub n_vars: Option<usize>,
    pub degree: Option<u32>,
    pub forms: Vec<HomogeneousForm>,
}

pub fn parse_form_file(text: &str) -> Result<FormFile, FormError> {
    let mut field = None;
    let mut n_vars = None;
    let mut degree = None;
    let mut forms = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |msg: &str| FormError::File(format!("line {}: {msg}", lineno + 1));
        let mut words = line.split_whitespace();
        let head = words.next().unwrap_or("");
        let nums = |words: std::str::SplitWhitespace| -> Result<Vec<u32>, FormError> {
            words
                .map(|w| w.parse::<u32>().map_err(|_| bad("expected integers")))
                .collect()
        };
        match head {
            "field" => {
                let v = nums(words)?;
                let [p, e] = v[..] else {
                    return Err(bad("expected 'field p e'"));
                };
                field = Some(FieldSpec::new(p, e)?);
            }
            "vars" => {
                let v = nums(words)?;
                let [n] = v[..] else {
                    return Err(bad("expected 'vars n'"));
                };
                n_vars = Some(n as usize);
            }
            "degree" => {
                let v = nums(words)?;
                let [d] = v[..] else {
                    return Err(bad("expected 'degree d'"));
                };
                degree = Some(d);
            }
            _ => {
                let f = field.as_ref().ok_or_else(|| bad("form before 'field' header"))?;
                let form =
                    parse_form(line, f, n_vars).map_err(|e| FormError::File(format!("line {}: {e}", lineno + 1)))?;
                if let Some(d) = degree {
                    if form.degree() != d {
                        return Err(bad(&format!("degree {} does not match header {d}", form.degree())));
                    }
                }
                forms.push(form);
            }
        }
    }
    let field = field.ok_or_else(|| FormError::File("missing 'field p e' header".into()))?;
    Ok(FormFile {
        field,
        n_vars,
        degree,
        forms,
    })
}

pub fn write_form_file(forms: &[HomogeneousForm]) -> Result<String, FormError> {
    let first = forms
        .first()
        .ok_or_else(|| FormError::File("no forms to write".into()))?;
    let mut out = String::new();
    let f = first.field();
    writeln!(out, "field {} {}", f.p(), f.e()).expect("write to string");
    writeln!(out, "vars {}", first.n_vars()).expect("write to string");
    if forms.iter().all(|g| g.degree() == first.degree()) {
        writeln!(out, "degree {}", first.degree()).expect("write to string");
    }
    for g in forms {
        if g.field().id() != f.id() || g.n_vars() != first.n_vars() {
            return Err(FormError::File("forms must share field and variable count".into()));
        }
        writeln!(out, "{}", g.format()).expect("write to string");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::tests::K_TEXT;
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_output() {
        let f4 = FieldSpec::new(2, 2).unwrap();
        let g = HomogeneousForm::parse("x2^2 + w*x0*x1 + (w+1)*x0^2", &f4).unwrap();
        assert_eq!(g.format(), "(w+1)*x0^2 + w*x0*x1 + x2^2");
        let f3 = FieldSpec::new(3, 1).unwrap();
        let c = HomogeneousForm::parse("x0*x1 - x2^2", &f3).unwrap();
        assert_eq!(c.format(), "x0*x1 + 2*x2^2");
    }

    #[test]
    fn form_file_round_trip() {
        let text =
            format!("# the exceptional quartic\nfield 2 2\nvars 3\ndegree 4\n{K_TEXT}\nx0^4 + x1^4 + x2^4 # Fermat\n");
        let file = parse_form_file(&text).unwrap();
        assert_eq!(file.forms.len(), 2);
        assert_eq!(file.field.q(), 4);
        let out = write_form_file(&file.forms).unwrap();
        let again = parse_form_file(&out).unwrap();
        assert_eq!(again.forms, file.forms);
    }

    #[test]
    fn form_file_errors() {
        assert!(parse_form_file("x0^2\n").is_err());
        assert!(parse_form_file("field 2 2\ndegree 3\nx0^2\n").is_err());
        assert!(parse_form_file("field 4 1\n").is_err());
        assert!(parse_form_file("").is_err());
    }

    proptest! {
        #[test]
        fn parse_format_round_trip(
            q in prop::sample::select(vec![2u32, 3, 4, 5, 8, 9]),
            n_vars in 1usize..5,
            d in 1u32..5,
            seed in any::<u64>(),
        ) {
            use rand::{Rng, SeedableRng};
            let f = FieldSpec::for_order(q).unwrap();
            let len = super::super::monomials(n_vars, d).len();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let v: Vec<u32> = (0..len).map(|_| rng.gen_range(0..q)).collect();
            if let Ok(g) = HomogeneousForm::from_coefficient_vector(&f, n_vars, d, &v) {
                let text = g.format();
                prop_assert_eq!(HomogeneousForm::parse_in(&text, &f, n_vars).unwrap(), g);
            }
        }
    }
}
