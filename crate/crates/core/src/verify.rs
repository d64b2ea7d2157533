//! The deterministic check bundle behind `linefree verify-paper`.

use std::sync::Arc;

use crate::analysis::{self, BoundStatus};
use crate::bounds::{self, BoundValue};
use crate::gf::FieldSpec;
use crate::projgeom::{enumerate_points, ProjectiveSpace};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, result: Result<String, String>) -> Self {
        match result {
            Ok(detail) => Self {
                name,
                passed: true,
                detail,
            },
            Err(detail) => Self {
                name,
                passed: false,
                detail,
            },
        }
    }

    /// `PASS name: detail` or `FAIL name: detail`.
    pub fn line(&self) -> String {
        format!(
            "{} {}: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail
        )
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn field(q: u32) -> Arc<FieldSpec> {
    FieldSpec::for_order(q).expect("prime power")
}

pub fn theta_identities() -> Result<String, String> {
    let e = |x: bounds::BoundError| x.to_string();
    let mut cases = 0;
    for q in 2..=16i64 {
        for s in -3..=10i64 {
            let lhs = bounds::theta(q, s).map_err(e)?;
            let power = if s >= 0 {
                BoundValue::integer(i128::from(q).pow(s as u32))
            } else {
                BoundValue::new(1, i128::from(q).pow((-s) as u32))
            };
            let rhs = power + bounds::theta(q, s - 1).map_err(e)?;
            ensure(lhs == rhs, || format!("theta({q},{s}) = {lhs}, recursion gives {rhs}"))?;
            cases += 1;
        }
        ensure(bounds::theta(q, -1).map_err(e)? == BoundValue::integer(0), || {
            format!("theta({q},-1) != 0")
        })?;
        ensure(
            bounds::theta(q, -2).map_err(e)? == BoundValue::new(-1, i128::from(q)),
            || format!("theta({q},-2) != -1/{q}"),
        )?;
    }
    Ok(format!(
        "{cases} recursion cases, theta(q,-1) = 0 and theta(q,-2) = -1/q for q = 2..16"
    ))
}

pub fn plane_bound_agreement() -> Result<String, String> {
    for q in 2..=16 {
        for d in 2..=16 {
            let a = bounds::main_bound(2, d, q).map_err(|x| x.to_string())?;
            let b = bounds::sziklai_bound(d, q).map_err(|x| x.to_string())?;
            ensure(a == b, || format!("d={d} q={q}: {a} != {b}"))?;
        }
    }
    Ok("main bound at n = 2 equals (d-1)q + 1 for 2 <= d, q <= 16".into())
}

pub fn induction_arithmetic() -> Result<String, String> {
    let mut cases = 0;
    for q in [2, 3, 4, 5, 7, 8, 9] {
        for n in 3..=6 {
            for d in 2..=q + 1 {
                let ok = bounds::induction_step_check(n, d, q).map_err(|x| x.to_string())?;
                ensure(ok, || format!("n={n} d={d} q={q}"))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} (n, d, q) cases"))
}

pub fn subset_oracle() -> Result<String, String> {
    let mut total = 0;
    for (n, q) in [(2, 2), (3, 2), (2, 3)] {
        let out = analysis::oracle_subset_bound(n, &field(q)).map_err(|x| x.to_string())?;
        ensure(out.passed(), || {
            format!("P^{n}(F_{q}): {} violating subsets", out.violations.len())
        })?;
        total += out.subsets;
    }
    Ok(format!("{total} subsets of P^2(F_2), P^3(F_2), P^2(F_3)"))
}

pub fn k_facts() -> Result<String, String> {
    let f4 = field(4);
    let k = analysis::k_form(&f4).map_err(|x| x.to_string())?;
    let pts = analysis::rational_points(&k);
    ensure(pts.len() == 14, || format!("N_4(K) = {}", pts.len()))?;
    let subplane: Vec<_> = enumerate_points(2, &f4)
        .into_iter()
        .filter(|p| p.indices().iter().all(|&c| c < 2))
        .collect();
    ensure(subplane.len() == 7, || "P^2(F_2) does not have 7 points".into())?;
    let complement: Vec<_> = enumerate_points(2, &f4)
        .into_iter()
        .filter(|p| !subplane.contains(p))
        .collect();
    ensure(pts == complement, || {
        "K(F_4) differs from P^2(F_4) minus P^2(F_2)".into()
    })?;
    let zero = analysis::zero_flags(&k);
    let space = ProjectiveSpace::shared(2, &f4);
    let all_meet = space.line_points().iter().all(|l| l.iter().any(|&p| zero[p as usize]));
    ensure(all_meet, || "some F_4-line misses K".into())?;
    let lines = analysis::lines_on(&k).map_err(|x| x.to_string())?;
    ensure(lines.is_empty(), || format!("K contains {} lines", lines.len()))?;
    let v = analysis::check_bound(&k).map_err(|x| x.to_string())?;
    ensure(v.status == BoundStatus::Exceeds && v.exception_flag, || {
        format!("verdict {v:?}")
    })?;
    Ok("N = 14, K(F_4) = P^2(F_4) minus P^2(F_2), meets all 21 lines, contains none".into())
}

pub fn elliptic_quadrics() -> Result<String, String> {
    for q in [2u32, 3, 4, 5, 7, 8, 9] {
        let e = analysis::elliptic_quadric(&field(q));
        let v = analysis::check_bound(&e).map_err(|x| format!("q={q}: {x}"))?;
        let bound = bounds::main_bound(3, 2, i64::from(q)).map_err(|x| x.to_string())?;
        ensure(v.n_points as i128 == i128::from(q * q + 1) && v.bound == bound, || {
            format!("q={q}: N={} bound={bound}", v.n_points)
        })?;
        ensure(v.status == BoundStatus::Attains, || format!("q={q}: {:?}", v.status))?;
    }
    Ok("line-free with N = q^2 + 1 = bound for q in 2,3,4,5,7,8,9".into())
}

pub fn quartic_surface_constants() -> Result<String, String> {
    let e = |x: bounds::BoundError| x.to_string();
    let t3 = bounds::theta(4, 3).map_err(e)?.to_integer().map_err(e)?;
    let t2 = bounds::theta(4, 2).map_err(e)?.to_integer().map_err(e)?;
    let total = 14 * t3 + 1;
    ensure(total == 1191, || format!("14 * theta_4(3) + 1 = {total}"))?;
    let (quot, rem) = (total / (t2 + 2), total % (t2 + 2));
    ensure((quot, rem) == (51, 18), || format!("1191 = {quot} * 23 + {rem}"))?;
    let bound = bounds::main_bound(3, 4, 4).map_err(e)?;
    ensure(bound == quot, || format!("main bound {bound} != {quot}"))?;
    Ok("14 * 85 + 1 = 1191 = 51 * 23 + 18, floor = 51 = main bound (3, 4, 4)".into())
}

/// Runs every check in order.
pub fn verify_all() -> Vec<Check> {
    vec![
        Check::new("theta identities", theta_identities()),
        Check::new("plane bound agreement", plane_bound_agreement()),
        Check::new("induction arithmetic", induction_arithmetic()),
        Check::new("subset bound oracle", subset_oracle()),
        Check::new("exceptional quartic K", k_facts()),
        Check::new("elliptic quadric attainment", elliptic_quadrics()),
        Check::new("quartic surface constants", quartic_surface_constants()),
    ]
}
