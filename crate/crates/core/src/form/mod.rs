//! Homogeneous forms over F_q.
//!
//! A form stores its nonzero terms keyed by exponent vector. Terms are kept
//! in the frozen monomial order: lexicographic on exponent vectors, largest
//! first, so `x0^d` leads and `xn^d` trails. For a fixed number of variables
//! and degree, [`monomials`] lists every monomial in that order and
//! coefficient vectors ([`HomogeneousForm::coefficient_vector`]) follow it.

mod text;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use thiserror::Error;

use crate::expr::ParseError;
use crate::gf::{FieldElement, FieldSpec, GfError};
use crate::projgeom::{Hyperplane, ProjLine, ProjPoint, ProjectiveMap};

pub use text::{parse_form_file, write_form_file, FormFile};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("the zero form does not define a hypersurface")]
    ZeroForm,
    #[error("form is not homogeneous (degrees {0} and {1})")]
    Inhomogeneous(u32, u32),
    #[error("constant forms are not hypersurfaces")]
    ConstantForm,
    #[error("variable x{index} out of range for {n_vars} variables")]
    VariableOutOfRange { index: usize, n_vars: usize },
    #[error("expected {expected} variables, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("operand belongs to a different field")]
    FieldMismatch,
    #[error("square roots need even degree, got {0}")]
    OddDegree(u32),
    #[error("coefficient vector has length {found}, expected {expected}")]
    VectorLength { expected: usize, found: usize },
    #[error("form file: {0}")]
    File(String),
}

/// Exponent vector with the frozen monomial order: lexicographically larger
/// exponent vectors sort first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u16>);

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&a| u32::from(a)).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// All monomials of degree `d` in `n_vars` variables, in the frozen order.
/// 15 for plane quartics, 35 for quartic surfaces.
pub fn monomials(n_vars: usize, d: u32) -> Vec<Vec<u16>> {
    fn rec(n_vars: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if cur.len() + 1 == n_vars {
            cur.push(left as u16);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for a in (0..=left).rev() {
            cur.push(a as u16);
            rec(n_vars, left - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n_vars == 0 {
        return out;
    }
    rec(n_vars, d, &mut Vec::with_capacity(n_vars), &mut out);
    out
}

/// Sparse polynomial (not necessarily homogeneous) with index coefficients.
pub(crate) type Poly = BTreeMap<Monomial, u32>;

pub(crate) fn poly_add_term(field: &FieldSpec, p: &mut Poly, m: Monomial, c: u32) {
    if c == 0 {
        return;
    }
    match p.entry(m) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = field.add_idx(*o.get(), c);
            if s == 0 {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

pub(crate) fn poly_mul(field: &FieldSpec, a: &Poly, b: &Poly) -> Poly {
    let mut acc: HashMap<Monomial, u32> = HashMap::with_capacity(a.len() * b.len());
    for (ma, &ca) in a {
        for (mb, &cb) in b {
            let e = acc.entry(ma.mul(mb)).or_insert(0);
            *e = field.add_idx(*e, field.mul_idx(ca, cb));
        }
    }
    acc.into_iter().filter(|&(_, c)| c != 0).collect()
}

/// `p(L_0, ..., L_{k-1})` where each `L_i` is a linear form in `m` variables
/// given by its coefficient row.
pub(crate) fn substitute_linear(field: &FieldSpec, p: &Poly, images: &[Vec<u32>], m: usize) -> Poly {
    let max_deg = p.keys().map(Monomial::degree).max().unwrap_or(0) as usize;
    // powers[i][k] = L_i^k
    let powers: Vec<Vec<Poly>> = images
        .iter()
        .map(|row| {
            let mut lin = Poly::new();
            for (j, &c) in row.iter().enumerate() {
                let mut e = vec![0u16; m];
                e[j] = 1;
                poly_add_term(field, &mut lin, Monomial(e), c);
            }
            let mut pw = Vec::with_capacity(max_deg + 1);
            let mut one = Poly::new();
            one.insert(Monomial(vec![0; m]), 1);
            pw.push(one);
            for k in 1..=max_deg {
                let next = poly_mul(field, &pw[k - 1], &lin);
                pw.push(next);
            }
            pw
        })
        .collect();
    let mut out = Poly::new();
    for (mono, &c) in p {
        let mut term = Poly::new();
        term.insert(Monomial(vec![0; m]), c);
        for (i, &a) in mono.0.iter().enumerate() {
            if a > 0 {
                term = poly_mul(field, &term, &powers[i][a as usize]);
                if term.is_empty() {
                    break;
                }
            }
        }
        for (m2, c2) in term {
            poly_add_term(field, &mut out, m2, c2);
        }
    }
    out
}

/// A nonzero homogeneous form of degree `d >= 1` in `n_vars` variables.
#[derive(Debug, Clone)]
pub struct HomogeneousForm {
    field: Arc<FieldSpec>,
    n_vars: usize,
    degree: u32,
    terms: Poly,
}

impl PartialEq for HomogeneousForm {
    fn eq(&self, other: &Self) -> bool {
        self.field.id() == other.field.id()
            && self.n_vars == other.n_vars
            && self.degree == other.degree
            && self.terms == other.terms
    }
}

impl Eq for HomogeneousForm {}

/// Restriction of a form to a line: a binary form of degree d.
///
/// `coeffs[k]` is the coefficient of `s^(d-k) t^k` in `f(s*u + t*v)`, where
/// `(u, v)` is the echelon basis of the line. All coefficients zero means the
/// line lies on the hypersurface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryForm {
    degree: u32,
    coeffs: Vec<FieldElement>,
}

impl BinaryForm {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn evaluate(&self, field: &FieldSpec, s: u32, t: u32) -> u32 {
        let d = self.degree as u64;
        self.coeffs.iter().enumerate().fold(0, |acc, (k, c)| {
            let m = field.mul_idx(field.pow_idx(s, d - k as u64), field.pow_idx(t, k as u64));
            field.add_idx(acc, field.mul_idx(c.idx(), m))
        })
    }

    /// Number of zeros among the `q + 1` points of P^1(F_q).
    pub fn count_roots(&self, field: &FieldSpec) -> usize {
        crate::projgeom::line_parameters(field.q())
            .into_iter()
            .filter(|&(s, t)| self.evaluate(field, s, t) == 0)
            .count()
    }
}

/// Result of restricting a form to a hyperplane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Restriction {
    Form(HomogeneousForm),
    /// The form vanishes identically on the hyperplane.
    Component,
}

/// A formal partial derivative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Partial {
    Zero,
    Constant(FieldElement),
    Form(HomogeneousForm),
}

impl HomogeneousForm {
    /// Builds a form from `(exponents, coefficient)` terms. Repeated
    /// exponents are summed; zero coefficients dropped.
    pub fn new(
        field: &Arc<FieldSpec>,
        n_vars: usize,
        terms: impl IntoIterator<Item = (Vec<u16>, FieldElement)>,
    ) -> Result<Self, FormError> {
        let mut poly = Poly::new();
        for (e, c) in terms {
            if c.field_id() != field.id() {
                return Err(FormError::FieldMismatch);
            }
            if e.len() != n_vars {
                return Err(FormError::ArityMismatch {
                    expected: n_vars,
                    found: e.len(),
                });
            }
            poly_add_term(field, &mut poly, Monomial(e), c.idx());
        }
        Self::from_poly(field, n_vars, poly)
    }

    pub(crate) fn from_poly(field: &Arc<FieldSpec>, n_vars: usize, poly: Poly) -> Result<Self, FormError> {
        let mut degree = None;
        for m in poly.keys() {
            let d = m.degree();
            match degree {
                None => degree = Some(d),
                Some(d0) if d0 != d => return Err(FormError::Inhomogeneous(d0, d)),
                _ => {}
            }
        }
        let degree = degree.ok_or(FormError::ZeroForm)?;
        if degree == 0 {
            return Err(FormError::ConstantForm);
        }
        Ok(Self {
            field: Arc::clone(field),
            n_vars,
            degree,
            terms: poly,
        })
    }

    /// Builds a form from its coefficient vector (element indices in the
    /// frozen monomial order).
    pub fn from_coefficient_vector(
        field: &Arc<FieldSpec>,
        n_vars: usize,
        degree: u32,
        coeffs: &[u32],
    ) -> Result<Self, FormError> {
        let monos = monomials(n_vars, degree);
        if coeffs.len() != monos.len() {
            return Err(FormError::VectorLength {
                expected: monos.len(),
                found: coeffs.len(),
            });
        }
        let mut poly = Poly::new();
        for (e, &c) in monos.into_iter().zip(coeffs) {
            if c >= field.q() {
                return Err(GfError::IndexOutOfRange { idx: c, q: field.q() }.into());
            }
            if c != 0 {
                poly.insert(Monomial(e), c);
            }
        }
        Self::from_poly(field, n_vars, poly)
    }

    pub fn coefficient_vector(&self) -> Vec<u32> {
        monomials(self.n_vars, self.degree)
            .into_iter()
            .map(|e| self.terms.get(&Monomial(e)).copied().unwrap_or(0))
            .collect()
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    /// Projective dimension n of the ambient space (`n_vars - 1`).
    pub fn dim(&self) -> usize {
        self.n_vars - 1
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Terms in the frozen monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u16], FieldElement)> + '_ {
        self.terms.iter().map(|(m, &c)| (m.0.as_slice(), self.field.wrap(c)))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exps: &[u16]) -> FieldElement {
        self.field
            .wrap(self.terms.get(&Monomial(exps.to_vec())).copied().unwrap_or(0))
    }

    fn check_point(&self, p: &ProjPoint) -> Result<(), FormError> {
        if p.coords().len() != self.n_vars {
            return Err(FormError::ArityMismatch {
                expected: self.n_vars,
                found: p.coords().len(),
            });
        }
        if p.coords()[0].field_id() != self.field.id() {
            return Err(FormError::FieldMismatch);
        }
        Ok(())
    }

    /// Value at a raw coordinate vector.
    pub(crate) fn eval_raw(&self, x: &[u32]) -> u32 {
        let f = &*self.field;
        let d = self.degree as usize;
        let mut pw = vec![1u32; x.len() * (d + 1)];
        for (i, &xi) in x.iter().enumerate() {
            for k in 1..=d {
                pw[i * (d + 1) + k] = f.mul_idx(pw[i * (d + 1) + k - 1], xi);
            }
        }
        let mut acc = 0;
        for (m, &c) in &self.terms {
            let mut t = c;
            for (i, &a) in m.0.iter().enumerate() {
                if a > 0 {
                    t = f.mul_idx(t, pw[i * (d + 1) + a as usize]);
                }
            }
            acc = f.add_idx(acc, t);
        }
        acc
    }

    /// Value at the normalized representative of `p`.
    pub fn evaluate(&self, p: &ProjPoint) -> Result<FieldElement, FormError> {
        self.check_point(p)?;
        Ok(self.field.wrap(self.eval_raw(&p.indices())))
    }

    /// Values of all formal partials at a raw coordinate vector.
    pub(crate) fn gradient_raw(&self, x: &[u32]) -> Vec<u32> {
        let f = &*self.field;
        let p = f.p();
        let mut grad = vec![0u32; self.n_vars];
        for (m, &c) in &self.terms {
            for (i, g) in grad.iter_mut().enumerate() {
                let a = u32::from(m.0[i]);
                if a.is_multiple_of(p) {
                    continue;
                }
                let mut t = f.mul_idx(c, a % p);
                for (j, &b) in m.0.iter().enumerate() {
                    let e = if j == i { b - 1 } else { b };
                    if e > 0 {
                        t = f.mul_idx(t, f.pow_idx(x[j], u64::from(e)));
                    }
                }
                *g = f.add_idx(*g, t);
            }
        }
        grad
    }

    pub fn gradient(&self, p: &ProjPoint) -> Result<Vec<FieldElement>, FormError> {
        self.check_point(p)?;
        Ok(self
            .gradient_raw(&p.indices())
            .into_iter()
            .map(|g| self.field.wrap(g))
            .collect())
    }

    /// `f(s*u + t*v)` for the echelon basis `(u, v)` of `line`.
    pub fn restrict_to_line(&self, line: &ProjLine) -> Result<BinaryForm, FormError> {
        if line.dim() + 1 != self.n_vars {
            return Err(FormError::ArityMismatch {
                expected: self.n_vars,
                found: line.dim() + 1,
            });
        }
        let (u, v) = line.raw_rows();
        let images: Vec<Vec<u32>> = u.iter().zip(&v).map(|(&a, &b)| vec![a, b]).collect();
        let sub = substitute_linear(&self.field, &self.terms, &images, 2);
        let d = self.degree as usize;
        let mut coeffs = vec![self.field.zero(); d + 1];
        for (m, c) in sub {
            coeffs[m.0[1] as usize] = self.field.wrap(c);
        }
        Ok(BinaryForm {
            degree: self.degree,
            coeffs,
        })
    }

    /// Restriction to `h` through the parametrization returned by
    /// [`hyperplane_basis`]: the i-th new variable is the i-th coordinate
    /// other than the leading position of `h`.
    pub fn restrict_to_hyperplane(&self, h: &Hyperplane) -> Result<Restriction, FormError> {
        if h.dual_coords().len() != self.n_vars {
            return Err(FormError::ArityMismatch {
                expected: self.n_vars,
                found: h.dual_coords().len(),
            });
        }
        let basis = hyperplane_basis(&self.field, h);
        let m = basis.len();
        // x_j = sum_i basis[i][j] * y_i
        let images: Vec<Vec<u32>> = (0..self.n_vars).map(|j| basis.iter().map(|b| b[j]).collect()).collect();
        let sub = substitute_linear(&self.field, &self.terms, &images, m);
        if sub.is_empty() {
            return Ok(Restriction::Component);
        }
        Ok(Restriction::Form(Self::from_poly(&self.field, m, sub)?))
    }

    /// Formal partial derivative with respect to `x_i`.
    pub fn partial_derivative(&self, i: usize) -> Result<Partial, FormError> {
        if i >= self.n_vars {
            return Err(FormError::VariableOutOfRange {
                index: i,
                n_vars: self.n_vars,
            });
        }
        let f = &*self.field;
        let mut out = Poly::new();
        for (m, &c) in &self.terms {
            let a = u32::from(m.0[i]) % f.p();
            if a == 0 {
                continue;
            }
            let mut e = m.0.clone();
            e[i] -= 1;
            poly_add_term(f, &mut out, Monomial(e), f.mul_idx(c, a));
        }
        if out.is_empty() {
            return Ok(Partial::Zero);
        }
        if self.degree == 1 {
            let c = *out.values().next().expect("nonempty");
            return Ok(Partial::Constant(f.wrap(c)));
        }
        Ok(Partial::Form(Self::from_poly(&self.field, self.n_vars, out)?))
    }

    /// Coefficient-wise image under `a -> a^base`, `base` a power of p.
    pub fn frobenius_image(&self, base: u32) -> Result<HomogeneousForm, FormError> {
        let mut poly = Poly::new();
        for (m, &c) in &self.terms {
            poly.insert(m.clone(), self.field.frobenius_idx(c, base)?);
        }
        Ok(Self {
            field: Arc::clone(&self.field),
            n_vars: self.n_vars,
            degree: self.degree,
            terms: poly,
        })
    }

    /// `f ∘ M^{-1}`, so that the image vanishes at `M·P` exactly when `f`
    /// vanishes at `P`.
    pub fn apply_map(&self, map: &ProjectiveMap) -> Result<HomogeneousForm, FormError> {
        if map.size() != self.n_vars {
            return Err(FormError::ArityMismatch {
                expected: self.n_vars,
                found: map.size(),
            });
        }
        let inv = map.inverse(&self.field);
        Ok(self.substitute_matrix(&inv.raw()))
    }

    /// `f(A x)` for a row-major square matrix `A` given by element indices.
    pub(crate) fn substitute_matrix(&self, a: &[u32]) -> HomogeneousForm {
        let m = self.n_vars;
        let images: Vec<Vec<u32>> = (0..m).map(|i| a[i * m..(i + 1) * m].to_vec()).collect();
        let sub = substitute_linear(&self.field, &self.terms, &images, m);
        Self {
            field: Arc::clone(&self.field),
            n_vars: m,
            degree: self.degree,
            terms: sub,
        }
    }

    pub fn mul(&self, other: &HomogeneousForm) -> Result<HomogeneousForm, FormError> {
        self.check_compatible(other)?;
        let poly = poly_mul(&self.field, &self.terms, &other.terms);
        Self::from_poly(&self.field, self.n_vars, poly)
    }

    /// Sum of two forms of equal degree; the zero sum is an error.
    pub fn add(&self, other: &HomogeneousForm) -> Result<HomogeneousForm, FormError> {
        self.check_compatible(other)?;
        let mut poly = self.terms.clone();
        for (m, &c) in &other.terms {
            poly_add_term(&self.field, &mut poly, m.clone(), c);
        }
        Self::from_poly(&self.field, self.n_vars, poly)
    }

    pub fn scale(&self, c: FieldElement) -> Result<HomogeneousForm, FormError> {
        let c = self.field.checked_mul(c, self.field.one())?;
        let poly: Poly = self
            .terms
            .iter()
            .map(|(m, &a)| (m.clone(), self.field.mul_idx(a, c.idx())))
            .filter(|&(_, a)| a != 0)
            .collect();
        Self::from_poly(&self.field, self.n_vars, poly)
    }

    /// The scalar multiple whose leading coefficient (frozen order) is 1.
    pub fn monic(&self) -> HomogeneousForm {
        let lead = *self.terms.values().next().expect("nonzero form");
        let inv = self.field.inv_idx(lead).expect("nonzero");
        let poly = self
            .terms
            .iter()
            .map(|(m, &a)| (m.clone(), self.field.mul_idx(a, inv)))
            .collect();
        Self {
            field: Arc::clone(&self.field),
            n_vars: self.n_vars,
            degree: self.degree,
            terms: poly,
        }
    }

    fn check_compatible(&self, other: &HomogeneousForm) -> Result<(), FormError> {
        if self.field.id() != other.field.id() {
            return Err(FormError::FieldMismatch);
        }
        if self.n_vars != other.n_vars {
            return Err(FormError::ArityMismatch {
                expected: self.n_vars,
                found: other.n_vars,
            });
        }
        Ok(())
    }

    /// A form `g` with `g^2 = f`, if one exists over F_q.
    ///
    /// In characteristic 2 squaring is additive, so `f` is a square exactly
    /// when every exponent is even; each coefficient has a unique root. In
    /// odd characteristic the root is peeled off term by term from the
    /// leading monomial and the candidate is verified by squaring.
    pub fn is_perfect_square(&self) -> Result<Option<HomogeneousForm>, FormError> {
        if self.degree % 2 == 1 {
            return Err(FormError::OddDegree(self.degree));
        }
        let f = &*self.field;
        let half = |m: &Monomial| -> Option<Monomial> {
            m.0.iter()
                .map(|&a| (a % 2 == 0).then_some(a / 2))
                .collect::<Option<Vec<_>>>()
                .map(Monomial)
        };
        if f.p() == 2 {
            let mut root = Poly::new();
            for (m, &c) in &self.terms {
                let Some(h) = half(m) else {
                    return Ok(None);
                };
                root.insert(h, f.sqrt_idx(c).expect("every element is a square in characteristic 2"));
            }
            return Ok(Some(Self::from_poly(&self.field, self.n_vars, root)?));
        }
        let (lead_m, &lead_c) = self.terms.iter().next().expect("nonzero form");
        let Some(root_m) = half(lead_m) else {
            return Ok(None);
        };
        let Some(root_c) = f.sqrt_idx(lead_c) else {
            return Ok(None);
        };
        let two_lead_inv = f
            .inv_idx(f.add_idx(root_c, root_c))
            .expect("2 is invertible in odd characteristic");
        let mut g = Poly::new();
        g.insert(root_m.clone(), root_c);
        let budget = monomials(self.n_vars, self.degree / 2).len();
        for _ in 0..budget {
            let sq = poly_mul(f, &g, &g);
            let mut r = self.terms.clone();
            for (m, c) in sq {
                poly_add_term(f, &mut r, m, f.neg_idx(c));
            }
            let Some((rm, &rc)) = r.iter().next() else {
                return Ok(Some(Self::from_poly(&self.field, self.n_vars, g)?));
            };
            let quotient: Option<Vec<u16>> = rm.0.iter().zip(&root_m.0).map(|(&a, &b)| a.checked_sub(b)).collect();
            let Some(qm) = quotient.map(Monomial) else {
                return Ok(None);
            };
            // The next root term must come after the leading one.
            if qm <= root_m || g.contains_key(&qm) {
                return Ok(None);
            }
            g.insert(qm, f.mul_idx(rc, two_lead_inv));
        }
        Ok(None)
    }

    /// Canonical text form, e.g. `x0*x1 + 2*x2^2`.
    pub fn format(&self) -> String {
        text::format_form(self)
    }

    /// Parses a form; the variable count is one more than the largest
    /// variable index that appears.
    pub fn parse(text: &str, field: &Arc<FieldSpec>) -> Result<HomogeneousForm, FormError> {
        text::parse_form(text, field, None)
    }

    /// Parses a form in exactly `n_vars` variables.
    pub fn parse_in(text: &str, field: &Arc<FieldSpec>, n_vars: usize) -> Result<HomogeneousForm, FormError> {
        text::parse_form(text, field, Some(n_vars))
    }
}

impl std::fmt::Display for HomogeneousForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.format())
    }
}

/// Basis vectors `b_0..b_{n-1}` of the hyperplane `h`, one per coordinate
/// `j` other than the leading position `k` of `h`: `b = e_j - h_j e_k`.
pub fn hyperplane_basis(field: &FieldSpec, h: &Hyperplane) -> Vec<Vec<u32>> {
    let dual = h.indices();
    let len = dual.len();
    let k = dual.iter().position(|&x| x != 0).expect("normalized dual");
    (0..len)
        .filter(|&j| j != k)
        .map(|j| {
            let mut b = vec![0u32; len];
            b[j] = 1;
            b[k] = field.neg_idx(dual[j]);
            b
        })
        .collect()
}
