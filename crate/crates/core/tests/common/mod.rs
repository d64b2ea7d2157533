//! Brute-force oracles sharing no code paths with the library's counting and
//! line tests: forms are evaluated term by term through the public field API
//! over every affine vector.

#![allow(dead_code)]

use std::sync::Arc;

use linefree::form::HomogeneousForm;
use linefree::gf::{FieldElement, FieldSpec};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn field(q: u32) -> Arc<FieldSpec> {
    FieldSpec::for_order(q).unwrap()
}

pub fn eval(f: &HomogeneousForm, x: &[FieldElement]) -> FieldElement {
    let k = f.field();
    f.terms().fold(k.zero(), |acc, (exps, c)| {
        let term = exps
            .iter()
            .zip(x)
            .fold(c, |t, (&a, &xi)| k.mul(t, k.pow(xi, u64::from(a))));
        k.add(acc, term)
    })
}

/// All vectors of F_q^m, zero included, in base-q counting order.
pub fn affine_vectors(k: &FieldSpec, m: usize) -> Vec<Vec<FieldElement>> {
    let q = k.q() as usize;
    (0..q.pow(m as u32))
        .map(|mut code| {
            let mut v = vec![k.zero(); m];
            for x in v.iter_mut() {
                *x = k.wrap((code % q) as u32);
                code /= q;
            }
            v
        })
        .collect()
}

/// N_q by counting affine zeros: (#zeros - 1) / (q - 1).
pub fn naive_count(f: &HomogeneousForm) -> usize {
    let k = f.field();
    let zeros = affine_vectors(k, f.n_vars())
        .iter()
        .filter(|x| eval(f, x).is_zero())
        .count();
    (zeros - 1) / (k.q() as usize - 1)
}

/// Uniform nonzero coefficient vector.
pub fn random_form(k: &Arc<FieldSpec>, n_vars: usize, d: u32, rng: &mut ChaCha8Rng) -> HomogeneousForm {
    let len = linefree::form::monomials(n_vars, d).len();
    loop {
        let v: Vec<u32> = (0..len).map(|_| rng.gen_range(0..k.q())).collect();
        if let Ok(g) = HomogeneousForm::from_coefficient_vector(k, n_vars, d, &v) {
            return g;
        }
    }
}
