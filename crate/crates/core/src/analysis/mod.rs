//! Point counts, F_q-lines, F_q-singular points, tangent hyperplanes and
//! hyperplane-section statistics of hypersurfaces, plus verdicts against the
//! line-free bound and the brute-force oracles used to cross-check it.

mod korbit;
mod oracle;
mod report;

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{self, BoundError};
use crate::form::{hyperplane_basis, FormError, HomogeneousForm, Restriction};
use crate::gf::{FieldId, FieldSpec};
use crate::projgeom::{normalize_raw, point_count, Hyperplane, ProjLine, ProjPoint, ProjectiveSpace};

pub use korbit::{is_equivalent_to_k, k_form, KOrbit, K_TEXT};
pub use oracle::{max_section, oracle_subset_bound, OracleOutcome, ORACLE_MAX_POINTS};
pub use report::{HyperplaneEntry, SectionReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Bound(#[from] BoundError),
    #[error("hypersurface contains {0} F_q-line(s); the line-free bound does not apply")]
    NotLineFree(usize),
    #[error("hyperplanes contain lines; degree 1 is outside the line-free bound")]
    DegreeOne,
    #[error("point is not on the hypersurface")]
    NotOnHypersurface,
    #[error("point is singular; it has no tangent hyperplane")]
    SingularPoint,
    #[error("no F_q-singular point")]
    NoSingularPoint,
    #[error("expected {0}")]
    WrongShape(&'static str),
    #[error("subset oracle needs at most {max} points, P^{n}(F_{q}) has {points}")]
    OracleTooLarge {
        n: usize,
        q: u32,
        points: usize,
        max: usize,
    },
}

fn space_of(f: &HomogeneousForm) -> Arc<ProjectiveSpace> {
    ProjectiveSpace::shared(f.dim(), f.field())
}

/// Zero flags of `f` over the interned points of its ambient space.
pub fn zero_flags(f: &HomogeneousForm) -> Vec<bool> {
    let space = space_of(f);
    (0..space.points().len())
        .map(|i| f.eval_raw(space.point_raw(i)) == 0)
        .collect()
}

/// N_q(X): the number of F_q-points on `f = 0`.
pub fn count_points(f: &HomogeneousForm) -> usize {
    zero_flags(f).into_iter().filter(|&z| z).count()
}

/// The F_q-points of `f = 0` in enumeration order.
pub fn rational_points(f: &HomogeneousForm) -> Vec<ProjPoint> {
    let space = space_of(f);
    zero_flags(f)
        .into_iter()
        .enumerate()
        .filter(|&(_, z)| z)
        .map(|(i, _)| space.points()[i].clone())
        .collect()
}

fn lines_on_with(f: &HomogeneousForm, zero: &[bool]) -> Vec<usize> {
    let space = space_of(f);
    space
        .line_points()
        .iter()
        .enumerate()
        .filter(|(_, pts)| pts.iter().all(|&p| zero[p as usize]))
        .filter(|&(i, _)| {
            f.restrict_to_line(&space.lines()[i])
                .expect("same ambient space")
                .is_zero()
        })
        .map(|(i, _)| i)
        .collect()
}

/// Every F_q-line on `f = 0`. Containment is decided by the restriction
/// vanishing identically; lines with a point off the hypersurface are
/// skipped without computing the restriction.
pub fn lines_on(f: &HomogeneousForm) -> Result<Vec<ProjLine>, AnalysisError> {
    if f.dim() < 2 {
        return Err(AnalysisError::WrongShape("a hypersurface in P^n with n >= 2"));
    }
    let space = space_of(f);
    let zero = zero_flags(f);
    Ok(lines_on_with(f, &zero)
        .into_iter()
        .map(|i| space.lines()[i].clone())
        .collect())
}

fn singular_flags(f: &HomogeneousForm, zero: &[bool]) -> Vec<bool> {
    let space = space_of(f);
    zero.iter()
        .enumerate()
        .map(|(i, &z)| z && f.gradient_raw(space.point_raw(i)).iter().all(|&g| g == 0))
        .collect()
}

/// F_q-points where `f` and all formal partials vanish. The value of `f`
/// is tested separately since Euler's identity fails when p divides d.
pub fn singular_points_fq(f: &HomogeneousForm) -> Vec<ProjPoint> {
    let space = space_of(f);
    let zero = zero_flags(f);
    singular_flags(f, &zero)
        .into_iter()
        .enumerate()
        .filter(|&(_, s)| s)
        .map(|(i, _)| space.points()[i].clone())
        .collect()
}

/// The embedded tangent hyperplane at a smooth point: dual coordinates are
/// the gradient.
pub fn tangent_hyperplane(f: &HomogeneousForm, p: &ProjPoint) -> Result<Hyperplane, AnalysisError> {
    if !f.evaluate(p)?.is_zero() {
        return Err(AnalysisError::NotOnHypersurface);
    }
    let grad = f.gradient(p)?;
    Hyperplane::new(f.field(), &grad).map_err(|_| AnalysisError::SingularPoint)
}

fn tangent_index(f: &HomogeneousForm, space: &ProjectiveSpace, i: usize) -> Option<usize> {
    let mut g = f.gradient_raw(space.point_raw(i));
    if !normalize_raw(f.field(), &mut g) {
        return None;
    }
    Some(crate::projgeom::point_rank(f.field().q(), &g))
}

/// Coordinates of a point of `h` in the variables of
/// [`HomogeneousForm::restrict_to_hyperplane`]: drop the leading position
/// of `h`.
pub fn hyperplane_coordinates(field: &FieldSpec, h: &Hyperplane, p: &ProjPoint) -> Option<ProjPoint> {
    if !h.contains(field, p) {
        return None;
    }
    let dual = h.indices();
    let k = dual.iter().position(|&x| x != 0)?;
    let y: Vec<u32> = p
        .indices()
        .into_iter()
        .enumerate()
        .filter(|&(j, _)| j != k)
        .map(|(_, x)| x)
        .collect();
    ProjPoint::from_indices(field, &y).ok()
}

/// Inverse of [`hyperplane_coordinates`].
pub fn hyperplane_point(field: &FieldSpec, h: &Hyperplane, y: &ProjPoint) -> ProjPoint {
    let basis = hyperplane_basis(field, h);
    let len = h.indices().len();
    let mut x = vec![0u32; len];
    for (b, &c) in basis.iter().zip(&y.indices()) {
        for (xi, &bi) in x.iter_mut().zip(b) {
            *xi = field.add_idx(*xi, field.mul_idx(c, bi));
        }
    }
    ProjPoint::from_indices(field, &x).expect("basis is independent")
}

/// How [`section_counts`] computes |X ∩ H(F_q)|.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SectionMethod {
    /// Count zeros on each hyperplane through the interned incidence lists.
    Incidence,
    /// Restrict the form to each hyperplane and count the restriction's
    /// zeros in P^(n-1).
    Restriction,
}

/// Above this many points, [`profile`] counts sections by restriction.
pub const INCIDENCE_LIMIT: usize = 50_000;

/// |X ∩ H(F_q)| for every hyperplane, in hyperplane enumeration order.
pub fn section_counts(f: &HomogeneousForm, method: SectionMethod) -> Vec<usize> {
    let space = space_of(f);
    match method {
        SectionMethod::Incidence => {
            let zero = zero_flags(f);
            space
                .hyperplane_points()
                .par_iter()
                .map(|pts| pts.iter().filter(|&&p| zero[p as usize]).count())
                .collect()
        }
        SectionMethod::Restriction => space
            .hyperplanes()
            .par_iter()
            .map(|h| match f.restrict_to_hyperplane(h).expect("same ambient space") {
                Restriction::Component => point_count(f.dim() - 1, f.field().q()),
                Restriction::Form(g) => count_points(&g),
            })
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperplaneStat {
    pub section_count: usize,
    /// Number of smooth F_q-points whose tangent hyperplane is this one.
    pub t: usize,
}

/// Everything [`profile`] learns about a hypersurface.
#[derive(Debug, Clone)]
pub struct SurfaceProfile {
    pub n_points: usize,
    pub lines_on: Vec<ProjLine>,
    pub singular_points: Vec<ProjPoint>,
    /// Indexed like [`ProjectiveSpace::hyperplanes`].
    pub per_hyperplane: Vec<HyperplaneStat>,
    /// `n_histogram[j]` = number of hyperplanes with t = j; at least six
    /// entries.
    pub n_histogram: Vec<usize>,
}

impl SurfaceProfile {
    pub fn max_t(&self) -> usize {
        self.per_hyperplane.iter().map(|h| h.t).max().unwrap_or(0)
    }

    pub fn section_total(&self) -> usize {
        self.per_hyperplane.iter().map(|h| h.section_count).sum()
    }

    /// Σ_j j·n_j.
    pub fn weighted_t_total(&self) -> usize {
        self.n_histogram.iter().enumerate().map(|(j, &c)| j * c).sum()
    }
}

/// Point count, lines, singular points and per-hyperplane (section, t)
/// statistics. Panics if the internal double counts disagree.
pub fn profile(f: &HomogeneousForm) -> Result<SurfaceProfile, AnalysisError> {
    if f.dim() < 2 {
        return Err(AnalysisError::WrongShape("a hypersurface in P^n with n >= 2"));
    }
    let space = space_of(f);
    let q = f.field().q();
    let n = f.dim();
    let zero = zero_flags(f);
    let n_points = zero.iter().filter(|&&z| z).count();
    let singular = singular_flags(f, &zero);
    let lines: Vec<ProjLine> = lines_on_with(f, &zero)
        .into_iter()
        .map(|i| space.lines()[i].clone())
        .collect();
    let method = if space.points().len() <= INCIDENCE_LIMIT {
        SectionMethod::Incidence
    } else {
        SectionMethod::Restriction
    };
    let sections = section_counts(f, method);
    let mut t = vec![0usize; space.hyperplanes().len()];
    for i in 0..zero.len() {
        if zero[i] && !singular[i] {
            let h = tangent_index(f, &space, i).expect("smooth point");
            t[h] += 1;
        }
    }
    let max_t = t.iter().copied().max().unwrap_or(0);
    let mut hist = vec![0usize; (max_t + 1).max(6)];
    for &x in &t {
        hist[x] += 1;
    }
    let per_hyperplane: Vec<HyperplaneStat> = sections
        .into_iter()
        .zip(t)
        .map(|(section_count, t)| HyperplaneStat { section_count, t })
        .collect();
    let singular_points: Vec<ProjPoint> = singular
        .iter()
        .enumerate()
        .filter(|&(_, &s)| s)
        .map(|(i, _)| space.points()[i].clone())
        .collect();
    let prof = SurfaceProfile {
        n_points,
        lines_on: lines,
        singular_points,
        per_hyperplane,
        n_histogram: hist,
    };
    assert_eq!(prof.section_total(), n_points * point_count(n - 1, q));
    assert_eq!(prof.n_histogram.iter().sum::<usize>(), point_count(n, q));
    if prof.singular_points.is_empty() {
        assert_eq!(prof.weighted_t_total(), n_points);
    }
    Ok(prof)
}

/// Whether the plane conic `g = 0` is absolutely irreducible. A degenerate
/// conic (line pair or double line) has a singular point fixed by
/// Frobenius, hence an F_q-rational one, so searching F_q-points suffices.
pub fn conic_is_absolutely_irreducible(g: &HomogeneousForm) -> Result<bool, AnalysisError> {
    if g.degree() != 2 || g.n_vars() != 3 {
        return Err(AnalysisError::WrongShape("a conic: degree 2 in 3 variables"));
    }
    Ok(singular_points_fq(g).is_empty())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BoundStatus {
    Within,
    Attains,
    Exceeds,
}

impl BoundStatus {
    pub fn classify(n_points: i128, bound: i128) -> Self {
        match n_points.cmp(&bound) {
            std::cmp::Ordering::Less => Self::Within,
            std::cmp::Ordering::Equal => Self::Attains,
            std::cmp::Ordering::Greater => Self::Exceeds,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Within => "WITHIN",
            Self::Attains => "ATTAINS",
            Self::Exceeds => "EXCEEDS",
        }
    }
}

/// Comparison of N_q(X) with the line-free bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundVerdict {
    pub bound: i128,
    #[serde(rename = "N")]
    pub n_points: usize,
    pub status: BoundStatus,
    /// Set only for plane quartics over F_4 equivalent to K.
    pub exception_flag: bool,
}

impl BoundVerdict {
    /// EXCEEDS without the K exception: a counterexample to the bound.
    pub fn is_falsification(&self) -> bool {
        self.status == BoundStatus::Exceeds && !self.exception_flag
    }
}

fn is_k_space(id: FieldId, n: usize, d: u32) -> bool {
    n == 2 && d == 4 && id == (FieldId { p: 2, e: 2 })
}

/// Builds a verdict from a point count already known to belong to a
/// line-free form.
pub fn verdict_for(f: &HomogeneousForm, n_points: usize) -> Result<BoundVerdict, AnalysisError> {
    let bound = bounds::main_bound(f.dim() as i64, i64::from(f.degree()), i64::from(f.field().q()))?;
    let status = BoundStatus::classify(n_points as i128, bound);
    let exception_flag = is_k_space(f.field().id(), f.dim(), f.degree()) && n_points == 14 && is_equivalent_to_k(f)?;
    Ok(BoundVerdict {
        bound,
        n_points,
        status,
        exception_flag,
    })
}

/// Verdict of `f` against the line-free bound. Requires `f = 0` to contain
/// no F_q-line.
pub fn check_bound(f: &HomogeneousForm) -> Result<BoundVerdict, AnalysisError> {
    if f.dim() < 2 {
        return Err(AnalysisError::WrongShape("a hypersurface in P^n with n >= 2"));
    }
    if f.degree() == 1 {
        return Err(AnalysisError::DegreeOne);
    }
    let zero = zero_flags(f);
    let lines = lines_on_with(f, &zero);
    if !lines.is_empty() {
        return Err(AnalysisError::NotLineFree(lines.len()));
    }
    verdict_for(f, zero.iter().filter(|&&z| z).count())
}

/// For a line-free quartic surface over F_4 with an F_4-singular point,
/// whether N_4 <= 2θ_4(2) + 1 = 43.
pub fn singular_case_bound_check(f: &HomogeneousForm) -> Result<bool, AnalysisError> {
    if f.dim() != 3 || f.degree() != 4 || f.field().q() != 4 {
        return Err(AnalysisError::WrongShape("a quartic surface over F_4"));
    }
    let zero = zero_flags(f);
    if !singular_flags(f, &zero).contains(&true) {
        return Err(AnalysisError::NoSingularPoint);
    }
    let lines = lines_on_with(f, &zero);
    if !lines.is_empty() {
        return Err(AnalysisError::NotLineFree(lines.len()));
    }
    Ok(zero.iter().filter(|&&z| z).count() <= 43)
}

/// The elliptic quadric `x0*x1 + x2^2 + x2*x3 + c*x3^2`, with `c` the
/// first element (by index) making `t^2 + t + c` irreducible over F_q.
pub fn elliptic_quadric(field: &Arc<FieldSpec>) -> HomogeneousForm {
    let q = field.q();
    let c = (1..q)
        .find(|&c| (0..q).all(|t| field.add_idx(field.add_idx(field.mul_idx(t, t), t), c) != 0))
        .expect("an irreducible quadratic exists over every finite field");
    let c = field.wrap(c);
    let one = field.one();
    HomogeneousForm::new(
        field,
        4,
        [
            (vec![1, 1, 0, 0], one),
            (vec![0, 0, 2, 0], one),
            (vec![0, 0, 1, 1], one),
            (vec![0, 0, 0, 2], c),
        ],
    )
    .expect("nonzero quadric")
}

/// Upper bounds on |S ∩ H(F_4)| by t(H) for a quartic surface over F_4
/// whose F_4-points are all smooth: `(max, exact)` for t = 0..=5.
pub const TANGENT_TABLE: [(usize, bool); 6] =
    [(14, false), (11, false), (10, false), (8, false), (6, false), (5, true)];

/// Outcome of checking a profiled quartic surface over F_4 against the
/// tangent-plane table.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableCheck {
    /// Descriptions of every violated entry; empty when the table holds.
    pub violations: Vec<String>,
    /// Number of planes with t(H) = 5.
    pub t5_planes: usize,
    /// Number of planes whose section is the square of an absolutely
    /// irreducible conic.
    pub double_conic_planes: usize,
}

/// Whether the standing hypotheses of the tangent-plane table hold: a
/// line-free quartic surface over F_4 with no F_4-singular point.
pub fn table_hypothesis_holds(f: &HomogeneousForm, prof: &SurfaceProfile) -> bool {
    f.dim() == 3 && f.degree() == 4 && f.field().q() == 4 && prof.lines_on.is_empty() && prof.singular_points.is_empty()
}

fn is_double_irreducible_conic(section: &Restriction) -> Result<bool, AnalysisError> {
    let Restriction::Form(g) = section else {
        return Ok(false);
    };
    Ok(match g.is_perfect_square()? {
        Some(root) => conic_is_absolutely_irreducible(&root)?,
        None => false,
    })
}

/// Checks t(H) <= 5, the section-size table and the double-conic criterion
/// for t(H) = 5, on every plane. Returns `None` when the hypotheses fail.
pub fn tangent_table_check(f: &HomogeneousForm, prof: &SurfaceProfile) -> Result<Option<TableCheck>, AnalysisError> {
    if !table_hypothesis_holds(f, prof) {
        return Ok(None);
    }
    let space = space_of(f);
    let mut out = TableCheck::default();
    for (h, stat) in space.hyperplanes().iter().zip(&prof.per_hyperplane) {
        let label = || format!("plane {:?}", h.indices());
        if stat.t > 5 {
            out.violations.push(format!("{}: t = {} > 5", label(), stat.t));
            continue;
        }
        let (max, exact) = TANGENT_TABLE[stat.t];
        if stat.section_count > max || (exact && stat.section_count != max) {
            out.violations.push(format!(
                "{}: t = {} with {} section points",
                label(),
                stat.t,
                stat.section_count
            ));
        }
        // The double-conic test only matters where it can change the
        // verdict: t = 5 planes, and planes with exactly 5 section points.
        if stat.t == 5 || stat.section_count == 5 {
            let double = is_double_irreducible_conic(&f.restrict_to_hyperplane(h)?)?;
            if double {
                out.double_conic_planes += 1;
            }
            if (stat.t == 5) != double {
                out.violations.push(format!(
                    "{}: t = {} but double irreducible conic = {double}",
                    label(),
                    stat.t
                ));
            }
        }
        if stat.t == 5 {
            out.t5_planes += 1;
        }
    }
    Ok(Some(out))
}

#[cfg(test)]
mod tests;
