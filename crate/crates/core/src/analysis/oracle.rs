//! Brute-force check of the subset-section bound over every point subset.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::AnalysisError;
use crate::bounds::subset_section_bound;
use crate::gf::FieldSpec;
use crate::projgeom::{ProjPoint, ProjectiveSpace};

/// Largest θ_q(n) the subset oracle accepts (2^16 subsets).
pub const ORACLE_MAX_POINTS: usize = 16;

/// max_H |S ∩ H(F_q)| over all hyperplanes of P^n(F_q).
pub fn max_section(points: &[ProjPoint], n: usize, field: &Arc<FieldSpec>) -> usize {
    let space = ProjectiveSpace::shared(n, field);
    let mut member = vec![false; space.points().len()];
    for p in points {
        member[space.point_index(p)] = true;
    }
    space
        .hyperplane_points()
        .iter()
        .map(|h| h.iter().filter(|&&i| member[i as usize]).count())
        .max()
        .unwrap_or(0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleOutcome {
    pub subsets: u64,
    /// Bitmasks (bit i = point i in enumeration order) of subsets larger
    /// than the bound for their maximal section.
    pub violations: Vec<u32>,
}

impl OracleOutcome {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks |S| <= subset bound(max section of S) for every S ⊆ P^n(F_q).
/// The empty set is tested with δ = 1, the least value the bound admits.
pub fn oracle_subset_bound(n: usize, field: &Arc<FieldSpec>) -> Result<OracleOutcome, AnalysisError> {
    if n < 2 {
        return Err(AnalysisError::WrongShape("n >= 2"));
    }
    let q = field.q();
    let theta = crate::projgeom::point_count(n, q);
    if theta > ORACLE_MAX_POINTS {
        return Err(AnalysisError::OracleTooLarge {
            n,
            q,
            points: theta,
            max: ORACLE_MAX_POINTS,
        });
    }
    let space = ProjectiveSpace::shared(n, field);
    let masks: Vec<u32> = space
        .hyperplane_points()
        .iter()
        .map(|h| h.iter().fold(0u32, |m, &i| m | 1 << i))
        .collect();
    let limits: Vec<i128> = (0..=theta as i64)
        .map(|delta| subset_section_bound(delta.max(1), n as i64, i64::from(q)))
        .collect::<Result<_, _>>()?;
    let total = 1u64 << theta;
    let violations: Vec<u32> = (0..total as u32)
        .into_par_iter()
        .filter(|&s| {
            let delta = masks.iter().map(|&h| (s & h).count_ones()).max().unwrap_or(0);
            i128::from(s.count_ones()) > limits[delta as usize]
        })
        .collect();
    Ok(OracleOutcome {
        subsets: total,
        violations,
    })
}
