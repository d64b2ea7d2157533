use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::kernel::{Classification, PackedQuarticKernel, SpaceTables};
use super::{ScanMode, ScanRecord, ScanSummary, ScanTask, SearchError, UnitResult, SELF_CHECK_EVERY};
use crate::analysis::{self, BoundStatus, KOrbit};
use crate::form::HomogeneousForm;
use crate::gf::FieldSpec;
use crate::projgeom::point_unrank;

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
    /// Units processed between callbacks (and checkpoints). Zero picks four
    /// per thread.
    pub batch_units: usize,
    /// Stop once this index has been passed, as if interrupted.
    pub stop_at: Option<u64>,
}

/// A scan in progress: the partial summary plus the number of records
/// handed to callbacks so far.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanState {
    pub summary: ScanSummary,
    pub records_emitted: u64,
}

impl ScanState {
    pub fn new(task: &ScanTask) -> Result<Self, SearchError> {
        task.validate()?;
        Ok(Self {
            summary: ScanSummary::empty(task)?,
            records_emitted: 0,
        })
    }

    pub fn task(&self) -> &ScanTask {
        &self.summary.task
    }

    pub fn watermark(&self) -> u64 {
        self.summary.processed_to
    }

    pub fn is_complete(&self) -> bool {
        self.summary.is_complete()
    }
}

#[derive(Debug, Clone)]
pub struct ScanOutput {
    pub summary: ScanSummary,
    pub records: Vec<ScanRecord>,
}

/// Candidate enumeration in index order with per-coordinate change
/// notifications, so evaluations can be updated incrementally.
struct Odometer {
    v: Vec<u32>,
    q: u32,
    normalized: bool,
    lead: usize,
}

impl Odometer {
    fn at(len: usize, q: u32, normalized: bool, index: u64) -> Self {
        let v = if normalized {
            point_unrank(len, q, index as usize)
        } else {
            let mut v = vec![0u32; len];
            let mut x = index + 1;
            for d in v.iter_mut().rev() {
                *d = (x % u64::from(q)) as u32;
                x /= u64::from(q);
            }
            v
        };
        let lead = v.iter().position(|&x| x != 0).unwrap_or(0);
        Self { v, q, normalized, lead }
    }

    /// Moves to the next candidate; false past the last one.
    fn step(&mut self, mut change: impl FnMut(usize, u32, u32)) -> bool {
        let floor = if self.normalized { self.lead + 1 } else { 0 };
        for i in (floor..self.v.len()).rev() {
            let old = self.v[i];
            if old + 1 < self.q {
                self.v[i] = old + 1;
                change(i, old, old + 1);
                return true;
            }
            self.v[i] = 0;
            change(i, old, 0);
        }
        if !self.normalized || self.lead == 0 {
            return false;
        }
        // Next block: the leading 1 moves one place left.
        self.v[self.lead] = 0;
        change(self.lead, 1, 0);
        self.lead -= 1;
        self.v[self.lead] = 1;
        change(self.lead, 0, 1);
        true
    }
}

struct Context {
    task: ScanTask,
    field: Arc<FieldSpec>,
    tables: SpaceTables,
    packed: Option<PackedQuarticKernel>,
    orbit: Option<&'static KOrbit>,
    bound: i128,
}

impl Context {
    fn new(task: &ScanTask) -> Result<Self, SearchError> {
        let space = task.space;
        let k_space = space.is_k_space();
        Ok(Self {
            task: task.clone(),
            field: FieldSpec::new(space.p, space.e)?,
            tables: SpaceTables::new(space)?,
            packed: (k_space && task.normalized && task.mode == ScanMode::Exhaustive).then(PackedQuarticKernel::new),
            orbit: k_space.then(KOrbit::shared),
            bound: space.bound()?,
        })
    }

    fn empty_unit(&self, end: u64) -> UnitResult {
        UnitResult {
            end,
            histogram: vec![0; self.tables.num_points() + 1],
            counts: Default::default(),
            max_n_line_free: None,
            discrepancies: Vec::new(),
            records: Vec::new(),
        }
    }

    fn self_check(&self, index: u64, coeffs: &[u32], cls: Classification) -> Result<(), SearchError> {
        let space = self.task.space;
        let f = HomogeneousForm::from_coefficient_vector(&self.field, space.n + 1, space.d, coeffs)?;
        if analysis::count_points(&f) != cls.n_points || analysis::lines_on(&f)?.is_empty() != cls.line_free {
            return Err(SearchError::SelfCheck { index });
        }
        Ok(())
    }

    fn tally(&self, out: &mut UnitResult, index: u64, coeffs: &[u32], cls: Classification) -> Result<(), SearchError> {
        out.counts.total += 1;
        if index.is_multiple_of(SELF_CHECK_EVERY) {
            self.self_check(index, coeffs, cls)?;
            out.counts.self_checks += 1;
        }
        if !cls.line_free {
            return Ok(());
        }
        let n = cls.n_points;
        out.counts.line_free += 1;
        out.histogram[n] += 1;
        out.max_n_line_free = out.max_n_line_free.max(Some(n));
        let status = BoundStatus::classify(n as i128, self.bound);
        let k_equivalent = n == 14 && self.orbit.is_some_and(|o| o.contains_vector(coeffs));
        if k_equivalent {
            out.counts.k_equivalent += 1;
        }
        match status {
            BoundStatus::Attains => out.counts.attains += 1,
            BoundStatus::Exceeds if k_equivalent => out.counts.exceeds_flagged += 1,
            BoundStatus::Exceeds => {
                out.counts.exceeds_unflagged += 1;
                out.discrepancies.push(coeffs.to_vec());
            }
            BoundStatus::Within => {}
        }
        if n >= self.task.record_min_points || status == BoundStatus::Exceeds {
            let rec = ScanRecord::derive(self.task.space, index, coeffs.to_vec())?;
            if rec.n_points != n || !rec.line_free || rec.k_equivalent != k_equivalent {
                return Err(SearchError::SelfCheck { index });
            }
            out.records.push(rec);
        }
        Ok(())
    }

    fn process(&self, a: u64, b: u64) -> Result<UnitResult, SearchError> {
        let mut out = self.empty_unit(b);
        if a == b {
            return Ok(out);
        }
        match (self.task.mode, &self.packed) {
            (ScanMode::Exhaustive, Some(k)) => {
                let mut od = Odometer::at(15, 4, true, a);
                let mut packed = k.values(&od.v);
                for index in a..b {
                    if index > a {
                        od.step(|m, o, n| packed = k.update(packed, m, o, n));
                    }
                    let zero = PackedQuarticKernel::zero_mask(packed);
                    let cls = Classification {
                        n_points: zero.count_ones() as usize,
                        line_free: k.line_free(zero),
                    };
                    self.tally(&mut out, index, &od.v, cls)?;
                }
            }
            (ScanMode::Exhaustive, None) => {
                let len = self.tables.num_monomials();
                let mut od = Odometer::at(len, self.field.q(), self.task.normalized, a);
                let mut values = vec![0u32; self.tables.num_points()];
                self.tables.evaluate(&od.v, &mut values);
                for index in a..b {
                    if index > a {
                        od.step(|m, o, n| self.tables.update(&mut values, m, o, n));
                    }
                    let cls = self.tables.classify(&od.v, &values);
                    self.tally(&mut out, index, &od.v, cls)?;
                }
            }
            (ScanMode::Random, _) => {
                let unit = a / self.task.unit_size();
                let first = unit * self.task.unit_size();
                let mut rng = ChaCha8Rng::seed_from_u64(self.task.seed.ok_or(SearchError::MissingSeed)?);
                rng.set_stream(unit);
                let q = self.field.q();
                let mut coeffs = vec![0u32; self.tables.num_monomials()];
                let mut values = vec![0u32; self.tables.num_points()];
                for index in first..b {
                    loop {
                        coeffs.iter_mut().for_each(|c| *c = rng.gen_range(0..q));
                        if coeffs.iter().any(|&c| c != 0) {
                            break;
                        }
                    }
                    if index < a {
                        continue;
                    }
                    self.tables.evaluate(&coeffs, &mut values);
                    let cls = self.tables.classify(&coeffs, &values);
                    self.tally(&mut out, index, &coeffs, cls)?;
                }
            }
        }
        Ok(out)
    }
}

/// Processes the remaining range batch by batch, calling `on_batch` with the
/// updated state and that batch's records after each one.
pub fn advance<F>(state: &mut ScanState, opts: &RunOptions, mut on_batch: F) -> Result<(), SearchError>
where
    F: FnMut(&ScanState, &[ScanRecord]) -> Result<(), SearchError>,
{
    let ctx = Context::new(state.task())?;
    let pool = opts
        .threads
        .map(|t| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| SearchError::Threads(e.to_string()))
        })
        .transpose()?;
    let unit = ctx.task.unit_size();
    let end = ctx.task.end;
    let batch = match opts.batch_units {
        0 => {
            4 * pool
                .as_ref()
                .map_or_else(rayon::current_num_threads, |p| p.current_num_threads())
        }
        b => b,
    };
    while state.watermark() < end {
        let mut ranges = Vec::with_capacity(batch);
        let mut s = state.watermark();
        while ranges.len() < batch && s < end {
            let e = ((s / unit + 1) * unit).min(end);
            ranges.push((s, e));
            s = e;
        }
        let work =
            || -> Vec<Result<UnitResult, SearchError>> { ranges.par_iter().map(|&(a, b)| ctx.process(a, b)).collect() };
        let parts = match &pool {
            Some(p) => p.install(work),
            None => work(),
        };
        let mut records = Vec::new();
        for part in parts {
            let mut part = part?;
            state.summary.absorb(&part);
            records.append(&mut part.records);
        }
        state.records_emitted += records.len() as u64;
        on_batch(state, &records)?;
        if opts.stop_at.is_some_and(|stop| state.watermark() >= stop) {
            break;
        }
    }
    Ok(())
}

/// Runs a task to completion (or to `opts.stop_at`) in memory.
pub fn run(task: &ScanTask, opts: &RunOptions) -> Result<ScanOutput, SearchError> {
    let mut state = ScanState::new(task)?;
    let mut records = Vec::new();
    advance(&mut state, opts, |_, batch| {
        records.extend_from_slice(batch);
        Ok(())
    })?;
    Ok(ScanOutput {
        summary: state.summary,
        records,
    })
}

/// The normalized plane-quartic census over F_4, restricted to `start..end`.
pub fn exhaustive_quartic_census(start: u64, end: u64, opts: &RunOptions) -> Result<ScanOutput, SearchError> {
    let task = ScanTask::exhaustive(super::Space::PLANE_QUARTICS_F4, start, end)?;
    run(&task, opts)
}

/// A seeded random sweep.
pub fn random_sweep(task: &ScanTask, opts: &RunOptions) -> Result<ScanOutput, SearchError> {
    if task.mode != ScanMode::Random {
        return Err(SearchError::InvalidSpace("random_sweep needs a RANDOM task".into()));
    }
    run(task, opts)
}
