//! Exact arithmetic in small finite fields GF(p^e).
//!
//! An element of GF(p^e) is a polynomial of degree `< e` over F_p reduced
//! modulo a fixed monic irreducible `modulus`. Its canonical index is
//! `idx(a) = sum rep[i] * p^i`, so `0` and `1` keep their usual indices and
//! the generator `w` (the class of the polynomial variable) has index `p`.
//!
//! The modulus for a given `(p, e)` is the first monic irreducible polynomial
//! of degree `e` when the candidates are ordered by the index of their
//! low-order coefficient vector. For F_4 this is `w^2 + w + 1`, for F_8
//! `w^3 + w + 1` and for F_9 `w^2 + 1`.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::expr::{self, Expr, ParseError};

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u32 = 1 << 16;
/// Fields up to this order multiply through log/antilog tables.
pub const LOG_TABLE_LIMIT: u32 = 1 << 12;
const ADD_TABLE_LIMIT: u32 = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{e} exceeds the supported maximum {MAX_FIELD_ORDER}")]
    TooLarge { p: u32, e: u32 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("operands from different fields: {left} and {right}")]
    FieldMismatch { left: FieldId, right: FieldId },
    #[error("zero has no inverse")]
    DivisionByZero,
    #[error("element index {idx} out of range for a field of order {q}")]
    IndexOutOfRange { idx: u32, q: u32 },
    #[error("{base} is not a power of the characteristic {p}")]
    NotPowerOfCharacteristic { base: u32, p: u32 },
    #[error("Frobenius base {base} exceeds the field order {q}")]
    FrobeniusBaseTooLarge { base: u32, q: u32 },
    #[error("unknown symbol '{0}' in element expression")]
    UnknownSymbol(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Identity of a field. Two fields with the same `(p, e)` share the same
/// modulus, so this pair identifies the field completely.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldId {
    pub p: u32,
    pub e: u32,
}

impl FieldId {
    pub fn order(self) -> u32 {
        self.p.pow(self.e)
    }
}

impl fmt::Display for FieldId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.e)
    }
}

/// An element of a specific field, tagged with the field it belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    field: FieldId,
    idx: u32,
}

impl FieldElement {
    /// Canonical index in `[0, q)`.
    pub fn idx(self) -> u32 {
        self.idx
    }

    pub fn field_id(self) -> FieldId {
        self.field
    }

    pub fn is_zero(self) -> bool {
        self.idx == 0
    }

    pub fn is_one(self) -> bool {
        self.idx == 1
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_index(self.field.p, self.field.e, self.idx))
    }
}

/// Renders an element index in the element text syntax: decimal digits for
/// prime fields, a polynomial in `w` for extension fields.
fn format_index(p: u32, e: u32, idx: u32) -> String {
    if e == 1 {
        return idx.to_string();
    }
    if idx == 0 {
        return "0".to_string();
    }
    let mut digits = Vec::with_capacity(e as usize);
    let mut v = idx;
    for _ in 0..e {
        digits.push(v % p);
        v /= p;
    }
    let mut parts = Vec::new();
    for (k, &c) in digits.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let term = match (k, c) {
            (0, c) => c.to_string(),
            (1, 1) => "w".to_string(),
            (1, c) => format!("{c}*w"),
            (k, 1) => format!("w^{k}"),
            (k, c) => format!("{c}*w^{k}"),
        };
        parts.push(term);
    }
    parts.join("+")
}

#[derive(Debug)]
enum MulKernel {
    Tables { log: Vec<u32>, exp: Vec<u32> },
    Schoolbook,
}

/// A finite field GF(p^e) with its fixed modulus and arithmetic tables.
///
/// Immutable after construction; share it behind an [`Arc`].
#[derive(Debug)]
pub struct FieldSpec {
    p: u32,
    e: u32,
    q: u32,
    /// Monic modulus, low-order coefficient first, length `e + 1`.
    modulus: Vec<u32>,
    /// `p^i` for `i` in `0..e`.
    radix: Vec<u32>,
    neg: Vec<u32>,
    add_table: Option<Vec<u16>>,
    mul: MulKernel,
    primitive: u32,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Dense polynomials over F_p, low-order coefficient first.
mod fp_poly {
    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        // Fermat; p is prime and small.
        let mut r = 1u64;
        let mut b = u64::from(a);
        let mut k = p - 2;
        while k > 0 {
            if k & 1 == 1 {
                r = r * b % u64::from(p);
            }
            b = b * b % u64::from(p);
            k >>= 1;
        }
        r as u32
    }

    /// Remainder of `a` modulo nonzero `b`.
    pub fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let mut b = b.to_vec();
        trim(&mut b);
        let db = b.len() - 1;
        let lead_inv = inv_mod(b[db], p);
        while r.len() > db {
            let dr = r.len() - 1;
            let c = (u64::from(r[dr]) * u64::from(lead_inv) % u64::from(p)) as u32;
            let shift = dr - db;
            for (i, &bi) in b.iter().enumerate() {
                let sub = (u64::from(c) * u64::from(bi) % u64::from(p)) as u32;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
            trim(&mut r);
        }
        r
    }

    /// Monic polynomial of degree `deg` whose low coefficients are the base-p
    /// digits of `code`.
    pub fn monic_from_code(code: u32, deg: u32, p: u32) -> Vec<u32> {
        let mut v = Vec::with_capacity(deg as usize + 1);
        let mut c = code;
        for _ in 0..deg {
            v.push(c % p);
            c /= p;
        }
        v.push(1);
        v
    }

    /// Irreducibility by trial division with every monic polynomial of
    /// degree at most half of `f`'s degree.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let deg = (f.len() - 1) as u32;
        for d in 1..=deg / 2 {
            for code in 0..p.pow(d) {
                let g = monic_from_code(code, d, p);
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

impl FieldSpec {
    /// Builds GF(p^e) with its deterministic modulus.
    pub fn new(p: u32, e: u32) -> Result<Arc<FieldSpec>, GfError> {
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        if e == 0 {
            return Err(GfError::ZeroDegree);
        }
        let q = p
            .checked_pow(e)
            .filter(|&q| q <= MAX_FIELD_ORDER)
            .ok_or(GfError::TooLarge { p, e })?;
        let modulus = (0..p.pow(e))
            .map(|code| fp_poly::monic_from_code(code, e, p))
            .find(|f| fp_poly::is_irreducible(f, p))
            .expect("an irreducible polynomial of every degree exists");
        let radix = (0..e).map(|i| p.pow(i)).collect();
        let mut spec = FieldSpec {
            p,
            e,
            q,
            modulus,
            radix,
            neg: Vec::new(),
            add_table: None,
            mul: MulKernel::Schoolbook,
            primitive: 1,
        };
        spec.neg = (0..q).map(|a| spec.neg_digitwise(a)).collect();
        if p != 2 && q <= ADD_TABLE_LIMIT {
            let mut t = Vec::with_capacity((q * q) as usize);
            for a in 0..q {
                for b in 0..q {
                    t.push(spec.add_digitwise(a, b) as u16);
                }
            }
            spec.add_table = Some(t);
        }
        spec.primitive = spec.find_primitive();
        if q <= LOG_TABLE_LIMIT {
            let order = (q - 1) as usize;
            let mut exp = vec![0u32; 2 * order];
            let mut log = vec![0u32; q as usize];
            let mut x = 1u32;
            for (i, e) in exp[..order].iter_mut().enumerate() {
                *e = x;
                log[x as usize] = i as u32;
                x = spec.schoolbook_mul(x, spec.primitive);
            }
            for i in order..2 * order {
                exp[i] = exp[i - order];
            }
            spec.mul = MulKernel::Tables { log, exp };
        }
        Ok(Arc::new(spec))
    }

    /// Builds the field of order `q`, which must be a prime power.
    pub fn for_order(q: u32) -> Result<Arc<FieldSpec>, GfError> {
        let factors = prime_factors(q);
        if factors.len() != 1 {
            return Err(GfError::NotPrimePower(q));
        }
        let p = factors[0];
        let mut e = 0;
        let mut v = q;
        while v > 1 {
            v /= p;
            e += 1;
        }
        Self::new(p, e)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn id(&self) -> FieldId {
        FieldId { p: self.p, e: self.e }
    }

    /// The modulus, low-order coefficient first (monic, length `e + 1`).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Index of the smallest generator of the multiplicative group.
    pub fn primitive_index(&self) -> u32 {
        self.primitive
    }

    pub fn uses_log_tables(&self) -> bool {
        matches!(self.mul, MulKernel::Tables { .. })
    }

    // ---- element construction -------------------------------------------

    pub fn element(&self, idx: u32) -> Result<FieldElement, GfError> {
        if idx >= self.q {
            return Err(GfError::IndexOutOfRange { idx, q: self.q });
        }
        Ok(self.wrap(idx))
    }

    /// Wraps an index already known to be in range.
    #[inline]
    pub fn wrap(&self, idx: u32) -> FieldElement {
        debug_assert!(idx < self.q);
        FieldElement { field: self.id(), idx }
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(0)
    }

    pub fn one(&self) -> FieldElement {
        self.wrap(1)
    }

    /// The class of the polynomial variable, `w`. For prime fields this is
    /// not a field element distinct from the integers and is rejected.
    pub fn generator(&self) -> Result<FieldElement, GfError> {
        if self.e == 1 {
            return Err(GfError::UnknownSymbol("w".into()));
        }
        Ok(self.wrap(self.p))
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> FieldElement {
        self.wrap(v.rem_euclid(i64::from(self.p)) as u32)
    }

    pub fn from_digits(&self, digits: &[u32]) -> Result<FieldElement, GfError> {
        let mut idx = 0u32;
        for (i, &d) in digits.iter().enumerate().take(self.e as usize) {
            idx += (d % self.p) * self.radix[i];
        }
        Ok(self.wrap(idx))
    }

    pub fn digits(&self, a: FieldElement) -> Vec<u32> {
        self.digits_of(a.idx)
    }

    fn digits_of(&self, mut idx: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.e as usize);
        for _ in 0..self.e {
            out.push(idx % self.p);
            idx /= self.p;
        }
        out
    }

    /// All `q` elements in canonical index order.
    pub fn elements(&self) -> Vec<FieldElement> {
        (0..self.q).map(|i| self.wrap(i)).collect()
    }

    // ---- raw index kernels ------------------------------------------------

    fn add_digitwise(&self, mut a: u32, mut b: u32) -> u32 {
        let mut out = 0;
        for &r in &self.radix {
            let s = (a % self.p + b % self.p) % self.p;
            out += s * r;
            a /= self.p;
            b /= self.p;
        }
        out
    }

    fn neg_digitwise(&self, mut a: u32) -> u32 {
        let mut out = 0;
        for &r in &self.radix {
            let d = a % self.p;
            out += ((self.p - d) % self.p) * r;
            a /= self.p;
        }
        out
    }

    #[inline]
    pub fn add_idx(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            a ^ b
        } else if let Some(t) = &self.add_table {
            u32::from(t[(a * self.q + b) as usize])
        } else {
            self.add_digitwise(a, b)
        }
    }

    #[inline]
    pub fn neg_idx(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub_idx(&self, a: u32, b: u32) -> u32 {
        self.add_idx(a, self.neg[b as usize])
    }

    /// Polynomial product reduced modulo the modulus. Used directly above
    /// [`LOG_TABLE_LIMIT`] and as the reference path for the tables.
    pub fn schoolbook_mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let p = u64::from(self.p);
        let e = self.e as usize;
        let da = self.digits_of(a);
        let db = self.digits_of(b);
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u64::from(x) * u64::from(y)) % p;
            }
        }
        for k in (e..2 * e - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..e {
                let m = u64::from(self.modulus[i]);
                prod[k - e + i] = (prod[k - e + i] + (p - c) * m) % p;
            }
        }
        prod.iter().take(e).zip(&self.radix).map(|(&d, &r)| d as u32 * r).sum()
    }

    #[inline]
    pub fn mul_idx(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        match &self.mul {
            MulKernel::Tables { log, exp } => exp[(log[a as usize] + log[b as usize]) as usize],
            MulKernel::Schoolbook => self.schoolbook_mul(a, b),
        }
    }

    pub fn inv_idx(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        match &self.mul {
            MulKernel::Tables { log, exp } => {
                let l = log[a as usize];
                Some(exp[((self.q - 1 - l) % (self.q - 1)) as usize])
            }
            MulKernel::Schoolbook => Some(self.pow_idx(a, u64::from(self.q - 2))),
        }
    }

    pub fn pow_idx(&self, a: u32, k: u64) -> u32 {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        match &self.mul {
            MulKernel::Tables { log, exp } => {
                let l = u64::from(log[a as usize]) * (k % u64::from(self.q - 1));
                exp[(l % u64::from(self.q - 1)) as usize]
            }
            MulKernel::Schoolbook => {
                let mut r = 1;
                let mut b = a;
                let mut k = k;
                while k > 0 {
                    if k & 1 == 1 {
                        r = self.schoolbook_mul(r, b);
                    }
                    b = self.schoolbook_mul(b, b);
                    k >>= 1;
                }
                r
            }
        }
    }

    fn schoolbook_pow(&self, a: u32, mut k: u64) -> u32 {
        let mut r = 1;
        let mut b = a;
        while k > 0 {
            if k & 1 == 1 {
                r = self.schoolbook_mul(r, b);
            }
            b = self.schoolbook_mul(b, b);
            k >>= 1;
        }
        r
    }

    fn find_primitive(&self) -> u32 {
        if self.q == 2 {
            return 1;
        }
        let order = self.q - 1;
        let factors = prime_factors(order);
        (2..self.q)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&r| self.schoolbook_pow(g, u64::from(order / r)) != 1)
            })
            .expect("the multiplicative group is cyclic")
    }

    // ---- checked element API --------------------------------------------

    fn check(&self, a: FieldElement) -> Result<u32, GfError> {
        if a.field != self.id() {
            return Err(GfError::FieldMismatch {
                left: self.id(),
                right: a.field,
            });
        }
        Ok(a.idx)
    }

    fn check2(&self, a: FieldElement, b: FieldElement) -> Result<(u32, u32), GfError> {
        if a.field != b.field {
            return Err(GfError::FieldMismatch {
                left: a.field,
                right: b.field,
            });
        }
        Ok((self.check(a)?, b.idx))
    }

    pub fn checked_add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, GfError> {
        let (a, b) = self.check2(a, b)?;
        Ok(self.wrap(self.add_idx(a, b)))
    }

    pub fn checked_sub(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, GfError> {
        let (a, b) = self.check2(a, b)?;
        Ok(self.wrap(self.sub_idx(a, b)))
    }

    pub fn checked_mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, GfError> {
        let (a, b) = self.check2(a, b)?;
        Ok(self.wrap(self.mul_idx(a, b)))
    }

    pub fn checked_inv(&self, a: FieldElement) -> Result<FieldElement, GfError> {
        let a = self.check(a)?;
        self.inv_idx(a).map(|i| self.wrap(i)).ok_or(GfError::DivisionByZero)
    }

    pub fn checked_pow(&self, a: FieldElement, k: u64) -> Result<FieldElement, GfError> {
        let a = self.check(a)?;
        Ok(self.wrap(self.pow_idx(a, k)))
    }

    /// Field addition. Panics if an operand belongs to another field; use
    /// [`checked_add`](Self::checked_add) to get the error instead.
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.checked_add(a, b).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.checked_sub(a, b).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let a = self.check(a).unwrap_or_else(|e| panic!("{e}"));
        self.wrap(self.neg_idx(a))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.checked_mul(a, b).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, GfError> {
        self.checked_inv(a)
    }

    pub fn pow(&self, a: FieldElement, k: u64) -> FieldElement {
        self.checked_pow(a, k).unwrap_or_else(|e| panic!("{e}"))
    }

    /// `a^base` where `base = p^m` with `1 <= m <= e`.
    pub fn frobenius(&self, a: FieldElement, base: u32) -> Result<FieldElement, GfError> {
        let a = self.check(a)?;
        self.frobenius_idx(a, base).map(|i| self.wrap(i))
    }

    pub(crate) fn frobenius_idx(&self, a: u32, base: u32) -> Result<u32, GfError> {
        let mut v = base;
        let mut m = 0;
        while v > 1 && v.is_multiple_of(self.p) {
            v /= self.p;
            m += 1;
        }
        if v != 1 || m == 0 {
            return Err(GfError::NotPowerOfCharacteristic { base, p: self.p });
        }
        if m > self.e {
            return Err(GfError::FrobeniusBaseTooLarge { base, q: self.q });
        }
        Ok(self.pow_idx(a, u64::from(base)))
    }

    /// A square root of `a`, if one exists. In characteristic 2 every
    /// element has the unique root `a^(q/2)`; otherwise the root with the
    /// smaller index is returned.
    pub fn sqrt_idx(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return Some(0);
        }
        if self.p == 2 {
            return Some(self.pow_idx(a, u64::from(self.q / 2)));
        }
        (1..self.q).find(|&r| self.mul_idx(r, r) == a)
    }

    pub fn sqrt(&self, a: FieldElement) -> Result<Option<FieldElement>, GfError> {
        let a = self.check(a)?;
        Ok(self.sqrt_idx(a).map(|r| self.wrap(r)))
    }

    // ---- text syntax ------------------------------------------------------

    pub fn format_element(&self, a: FieldElement) -> String {
        format_index(self.p, self.e, a.idx)
    }

    /// Parses the element text syntax: integers, `w`, `+ - * ^` and
    /// parentheses, e.g. `"w+1"`, `"2*w^2"`, `"(w+1)^3"`.
    pub fn parse_element(&self, text: &str) -> Result<FieldElement, GfError> {
        let e = expr::parse(text)?;
        self.eval_expr(&e).map(|i| self.wrap(i))
    }

    fn eval_expr(&self, e: &Expr) -> Result<u32, GfError> {
        Ok(match e {
            Expr::Int(v) => (v % u64::from(self.p)) as u32,
            Expr::Gen => self.generator()?.idx,
            Expr::Var(i) => return Err(GfError::UnknownSymbol(format!("x{i}"))),
            Expr::Add(a, b) => self.add_idx(self.eval_expr(a)?, self.eval_expr(b)?),
            Expr::Sub(a, b) => self.sub_idx(self.eval_expr(a)?, self.eval_expr(b)?),
            Expr::Neg(a) => self.neg_idx(self.eval_expr(a)?),
            Expr::Mul(a, b) => self.mul_idx(self.eval_expr(a)?, self.eval_expr(b)?),
            Expr::Pow(a, k) => self.pow_idx(self.eval_expr(a)?, u64::from(*k)),
        })
    }
}

/// All elements of `spec` in canonical index order, starting `0, 1`.
pub fn enumerate_elements(spec: &FieldSpec) -> Vec<FieldElement> {
    spec.elements()
}
