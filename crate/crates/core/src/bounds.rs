//! Exact arithmetic for θ_q(s) and the point-count bounds built from it.
//!
//! θ_q(s) = (q^(s+1) - 1)/(q - 1) is defined for every integer s and is not
//! always an integer (θ_q(-2) = -1/q), so all bound quantities are computed
//! as exact rationals and only converted to integers through
//! [`BoundValue::to_integer`], which refuses non-integers.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("field order must be at least 2, got {0}")]
    FieldOrder(i64),
    #[error("{what} must be at least {min}, got {got}")]
    OutOfRange { what: &'static str, min: i64, got: i64 },
    #[error("expected an integer, got {0}")]
    NotInteger(BoundValue),
    #[error("arithmetic overflow")]
    Overflow,
}

/// An exact rational bound quantity, always reduced with a positive
/// denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoundValue(Ratio<i128>);

impl BoundValue {
    pub fn new(numer: i128, denom: i128) -> Self {
        Self(Ratio::new(numer, denom))
    }

    pub fn integer(v: i128) -> Self {
        Self(Ratio::from_integer(v))
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn to_integer(&self) -> Result<i128, BoundError> {
        if self.is_integer() {
            Ok(self.numer())
        } else {
            Err(BoundError::NotInteger(*self))
        }
    }

    /// Largest integer not above the value.
    pub fn floor(&self) -> i128 {
        Integer::div_floor(&self.numer(), &self.denom())
    }
}

impl std::ops::Add for BoundValue {
    type Output = BoundValue;
    fn add(self, rhs: Self) -> Self {
        Self(self.0 + rhs.0)
    }
}

impl std::ops::Sub for BoundValue {
    type Output = BoundValue;
    fn sub(self, rhs: Self) -> Self {
        Self(self.0 - rhs.0)
    }
}

impl std::ops::Mul for BoundValue {
    type Output = BoundValue;
    fn mul(self, rhs: Self) -> Self {
        Self(self.0 * rhs.0)
    }
}

impl std::ops::Div for BoundValue {
    type Output = BoundValue;
    fn div(self, rhs: Self) -> Self {
        Self(self.0 / rhs.0)
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

fn check_q(q: i64) -> Result<i128, BoundError> {
    if q < 2 {
        return Err(BoundError::FieldOrder(q));
    }
    Ok(i128::from(q))
}

/// q^k for any integer k, exactly.
fn qpow(q: i128, k: i64) -> Result<BoundValue, BoundError> {
    let mag = q
        .checked_pow(k.unsigned_abs().try_into().map_err(|_| BoundError::Overflow)?)
        .ok_or(BoundError::Overflow)?;
    Ok(if k >= 0 {
        BoundValue::integer(mag)
    } else {
        BoundValue::new(1, mag)
    })
}

/// θ_q(s) = (q^(s+1) - 1)/(q - 1), for every integer s.
pub fn theta(q: i64, s: i64) -> Result<BoundValue, BoundError> {
    let q = check_q(q)?;
    let top = qpow(q, s + 1)? - BoundValue::integer(1);
    Ok(top / BoundValue::integer(q - 1))
}

/// Bound for plane curves without F_q-line components: (d-1)q + 1.
pub fn sziklai_bound(d: i64, q: i64) -> Result<i128, BoundError> {
    let q = check_q(q)?;
    if d < 1 {
        return Err(BoundError::OutOfRange {
            what: "degree",
            min: 1,
            got: d,
        });
    }
    Ok((i128::from(d) - 1) * q + 1)
}

/// Bound for line-free hypersurfaces of degree d in P^n:
/// (d-1)(q^(n-1) + 1) + (d-2)(θ_q(n-3) - 1).
pub fn main_bound_value(n: i64, d: i64, q: i64) -> Result<BoundValue, BoundError> {
    let qq = check_q(q)?;
    if n < 2 {
        return Err(BoundError::OutOfRange {
            what: "dimension",
            min: 2,
            got: n,
        });
    }
    if d < 1 {
        return Err(BoundError::OutOfRange {
            what: "degree",
            min: 1,
            got: d,
        });
    }
    let d = BoundValue::integer(i128::from(d));
    let one = BoundValue::integer(1);
    let two = BoundValue::integer(2);
    Ok((d - one) * (qpow(qq, n - 1)? + one) + (d - two) * (theta(q, n - 3)? - one))
}

/// [`main_bound_value`] as an integer; a non-integer value is reported as an
/// error, never rounded.
pub fn main_bound(n: i64, d: i64, q: i64) -> Result<i128, BoundError> {
    main_bound_value(n, d, q)?.to_integer()
}

/// Bound on a point set of P^n(F_q) meeting every hyperplane in at most
/// `delta` points: (δ-1)q + 1 + ⌊(δ-1)/θ_q(n-2)⌋, floor toward -∞.
pub fn subset_section_bound(delta: i64, n: i64, q: i64) -> Result<i128, BoundError> {
    let qq = check_q(q)?;
    if n < 2 {
        return Err(BoundError::OutOfRange {
            what: "dimension",
            min: 2,
            got: n,
        });
    }
    let dm1 = i128::from(delta) - 1;
    let frac = BoundValue::integer(dm1) / theta(q, n - 2)?;
    Ok(dm1 * qq + 1 + frac.floor())
}

/// Whether feeding the (n-1)-dimensional bound as δ into
/// [`subset_section_bound`] gives back exactly the n-dimensional bound,
/// i.e. ⌊(δ-1)/θ_q(n-2)⌋ = d - 2 and the chain of equalities closes.
pub fn induction_step_check(n: i64, d: i64, q: i64) -> Result<bool, BoundError> {
    if n < 3 {
        return Err(BoundError::OutOfRange {
            what: "dimension",
            min: 3,
            got: n,
        });
    }
    if d < 2 {
        return Err(BoundError::OutOfRange {
            what: "degree",
            min: 2,
            got: d,
        });
    }
    let delta = main_bound(n - 1, d, q)?;
    let delta = i64::try_from(delta).map_err(|_| BoundError::Overflow)?;
    let floor_term = (BoundValue::integer(i128::from(delta) - 1) / theta(q, n - 2)?).floor();
    Ok(floor_term == i128::from(d) - 2 && subset_section_bound(delta, n, q)? == main_bound(n, d, q)?)
}
