//! Exhaustive and randomized scans over coefficient vectors of a fixed
//! `(n, d, q)`, with checkpointing and deterministic parallel merging.
//!
//! A scan walks an index range. In exhaustive mode index `i` is the i-th
//! coefficient vector in lexicographic order (normalized: first nonzero
//! coefficient 1, the order of [`crate::projgeom::point_unrank`]; raw: the
//! base-q digits of `i + 1`). In random mode index `i` is the i-th sample of
//! the seeded stream. Either way the range is cut into fixed work units,
//! processed in parallel and merged in unit order, so the summary depends only
//! on the task.

mod checkpoint;
pub mod kernel;
mod scan;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::{AnalysisError, BoundStatus};
use crate::bounds::{self, BoundError};
use crate::form::{monomials, FormError};
use crate::gf::{FieldSpec, GfError};
use crate::projgeom::point_count;

pub use checkpoint::{checkpoint, resume, CheckpointError, CHECKPOINT_VERSION};
pub use scan::{advance, exhaustive_quartic_census, random_sweep, run, RunOptions, ScanOutput, ScanState};

/// Largest exhaustive candidate space accepted.
pub const EXHAUSTIVE_LIMIT: u128 = 1 << 40;
/// Candidates per work unit in exhaustive mode.
pub const EXHAUSTIVE_UNIT: u64 = 1 << 20;
/// Samples per work unit in random mode.
pub const RANDOM_UNIT: u64 = 4096;
/// Every candidate whose index is a multiple of this is re-derived through
/// [`crate::analysis`].
pub const SELF_CHECK_EVERY: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Bound(#[from] BoundError),
    #[error(transparent)]
    Checkpoint(#[from] CheckpointError),
    #[error("invalid space: {0}")]
    InvalidSpace(String),
    #[error("exhaustive space has {size} candidates, above the limit {limit}")]
    Guard { size: u128, limit: u128 },
    #[error("range [{start}, {end}) is not within [0, {size})")]
    Range { start: u64, end: u64, size: u128 },
    #[error("random scans need a seed")]
    MissingSeed,
    #[error("self-check failed at index {index}: kernel and analysis disagree")]
    SelfCheck { index: u64 },
    #[error("thread pool: {0}")]
    Threads(String),
}

/// The `(n, d, q = p^e)` being scanned: forms of degree `d` in `n + 1`
/// variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Space {
    pub n: usize,
    pub d: u32,
    pub p: u32,
    pub e: u32,
}

impl Space {
    pub const PLANE_QUARTICS_F4: Space = Space { n: 2, d: 4, p: 2, e: 2 };

    pub fn q(&self) -> u32 {
        self.p.pow(self.e)
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        if self.n < 2 {
            return Err(SearchError::InvalidSpace(format!("n = {} < 2", self.n)));
        }
        if self.d < 1 {
            return Err(SearchError::InvalidSpace("degree 0".into()));
        }
        let f = FieldSpec::new(self.p, self.e)?;
        if f.q() > 256 {
            return Err(SearchError::InvalidSpace(format!("q = {} > 256", f.q())));
        }
        if point_count(self.n, f.q()) > 1 << 20 {
            return Err(SearchError::InvalidSpace("too many points".into()));
        }
        Ok(())
    }

    pub fn num_monomials(&self) -> usize {
        monomials(self.n + 1, self.d).len()
    }

    /// Number of nonzero coefficient vectors, or of normalized ones.
    pub fn candidate_count(&self, normalized: bool) -> u128 {
        let q = u128::from(self.q());
        let m = self.num_monomials() as u32;
        match q.checked_pow(m) {
            Some(all) if normalized => (all - 1) / (q - 1),
            Some(all) => all - 1,
            None => u128::MAX,
        }
    }

    pub fn bound(&self) -> Result<i128, SearchError> {
        Ok(bounds::main_bound(
            self.n as i64,
            i64::from(self.d),
            i64::from(self.q()),
        )?)
    }

    /// The space where the K exception lives.
    pub fn is_k_space(&self) -> bool {
        *self == Self::PLANE_QUARTICS_F4
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ScanMode {
    Exhaustive,
    Random,
}

/// What to scan. `start..end` indexes candidates (exhaustive) or samples
/// (random).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanTask {
    pub space: Space,
    pub mode: ScanMode,
    pub normalized: bool,
    pub seed: Option<u64>,
    pub start: u64,
    pub end: u64,
    /// Line-free candidates with at least this many points are streamed as
    /// records; line-free EXCEEDS candidates always are.
    pub record_min_points: usize,
}

impl ScanTask {
    /// A normalized exhaustive scan of `start..end`.
    pub fn exhaustive(space: Space, start: u64, end: u64) -> Result<Self, SearchError> {
        let record_min_points = if space.is_k_space() {
            12
        } else {
            usize::try_from(space.bound()?.max(0)).unwrap_or(usize::MAX)
        };
        let task = Self {
            space,
            mode: ScanMode::Exhaustive,
            normalized: true,
            seed: None,
            start,
            end,
            record_min_points,
        };
        task.validate()?;
        Ok(task)
    }

    /// The full normalized plane-quartic census over F_4.
    pub fn census() -> Self {
        let size = Space::PLANE_QUARTICS_F4.candidate_count(true) as u64;
        Self::exhaustive(Space::PLANE_QUARTICS_F4, 0, size).expect("valid census")
    }

    /// `samples` uniform nonzero coefficient vectors from the stream of
    /// `seed`.
    pub fn random(space: Space, seed: u64, samples: u64) -> Result<Self, SearchError> {
        let task = Self {
            space,
            mode: ScanMode::Random,
            normalized: false,
            seed: Some(seed),
            start: 0,
            end: samples,
            record_min_points: usize::try_from(space.bound()?.max(0)).unwrap_or(usize::MAX),
        };
        task.validate()?;
        Ok(task)
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        self.space.validate()?;
        if self.start > self.end {
            return Err(SearchError::Range {
                start: self.start,
                end: self.end,
                size: self.space.candidate_count(self.normalized),
            });
        }
        match self.mode {
            ScanMode::Exhaustive => {
                let size = self.space.candidate_count(self.normalized);
                if size > EXHAUSTIVE_LIMIT {
                    return Err(SearchError::Guard {
                        size,
                        limit: EXHAUSTIVE_LIMIT,
                    });
                }
                if u128::from(self.end) > size {
                    return Err(SearchError::Range {
                        start: self.start,
                        end: self.end,
                        size,
                    });
                }
            }
            ScanMode::Random => {
                if self.seed.is_none() {
                    return Err(SearchError::MissingSeed);
                }
            }
        }
        Ok(())
    }

    pub fn unit_size(&self) -> u64 {
        match self.mode {
            ScanMode::Exhaustive => EXHAUSTIVE_UNIT,
            ScanMode::Random => RANDOM_UNIT,
        }
    }

    pub fn len(&self) -> u64 {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }
}

/// A streamed candidate. Every field can be re-derived from `coefficients`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub index: u64,
    pub coefficients: Vec<u32>,
    #[serde(rename = "N")]
    pub n_points: usize,
    pub line_free: bool,
    pub status: Option<BoundStatus>,
    pub k_equivalent: bool,
    pub singular: bool,
}

impl ScanRecord {
    /// Builds the record for a coefficient vector through [`crate::analysis`].
    pub fn derive(space: Space, index: u64, coefficients: Vec<u32>) -> Result<Self, SearchError> {
        use crate::analysis;
        let field = FieldSpec::new(space.p, space.e)?;
        let f = crate::form::HomogeneousForm::from_coefficient_vector(&field, space.n + 1, space.d, &coefficients)?;
        let n_points = analysis::count_points(&f);
        let line_free = analysis::lines_on(&f)?.is_empty();
        let (status, k_equivalent) = if line_free {
            let v = analysis::verdict_for(&f, n_points)?;
            (Some(v.status), v.exception_flag)
        } else {
            (None, false)
        };
        Ok(Self {
            index,
            coefficients,
            n_points,
            line_free,
            status,
            k_equivalent,
            singular: !analysis::singular_points_fq(&f).is_empty(),
        })
    }

    /// Whether re-deriving the record reproduces it.
    pub fn verify(&self, space: Space) -> Result<bool, SearchError> {
        Ok(Self::derive(space, self.index, self.coefficients.clone())? == *self)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanCounts {
    pub total: u64,
    pub line_free: u64,
    /// Line-free candidates above the bound and not equivalent to K. Any
    /// nonzero value falsifies the bound.
    pub exceeds_unflagged: u64,
    pub exceeds_flagged: u64,
    pub attains: u64,
    pub k_equivalent: u64,
    pub self_checks: u64,
}

/// Deterministic result of a scan: identical for identical tasks however the
/// work is split, threaded or interrupted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub task: ScanTask,
    pub bound: i128,
    /// Next index to process; equals `task.end` once complete.
    pub processed_to: u64,
    /// `histogram[k]`: line-free candidates with k points.
    pub histogram: Vec<u64>,
    pub counts: ScanCounts,
    pub max_n_line_free: Option<usize>,
    pub attains: bool,
    /// Coefficient vectors of unflagged EXCEEDS candidates.
    pub discrepancies: Vec<Vec<u32>>,
}

impl ScanSummary {
    pub fn empty(task: &ScanTask) -> Result<Self, SearchError> {
        Ok(Self {
            task: task.clone(),
            bound: task.space.bound()?,
            processed_to: task.start,
            histogram: vec![0; point_count(task.space.n, task.space.q()) + 1],
            counts: ScanCounts::default(),
            max_n_line_free: None,
            attains: false,
            discrepancies: Vec::new(),
        })
    }

    pub fn is_complete(&self) -> bool {
        self.processed_to == self.task.end
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }

    fn absorb(&mut self, part: &UnitResult) {
        for (h, p) in self.histogram.iter_mut().zip(&part.histogram) {
            *h += p;
        }
        let c = &mut self.counts;
        let p = &part.counts;
        c.total += p.total;
        c.line_free += p.line_free;
        c.exceeds_unflagged += p.exceeds_unflagged;
        c.exceeds_flagged += p.exceeds_flagged;
        c.attains += p.attains;
        c.k_equivalent += p.k_equivalent;
        c.self_checks += p.self_checks;
        self.max_n_line_free = self.max_n_line_free.max(part.max_n_line_free);
        self.attains = self.counts.attains > 0;
        self.discrepancies.extend(part.discrepancies.iter().cloned());
        self.processed_to = part.end;
    }
}

/// Partial result of one work unit.
#[derive(Debug, Clone)]
struct UnitResult {
    end: u64,
    histogram: Vec<u64>,
    counts: ScanCounts,
    max_n_line_free: Option<usize>,
    discrepancies: Vec<Vec<u32>>,
    records: Vec<ScanRecord>,
}
