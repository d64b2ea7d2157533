//! Evaluation kernels for scanning coefficient vectors of a fixed
//! `(n, d, q)`.
//!
//! [`SpaceTables`] is the scalar reference path: a θ × M table of monomial
//! values drives both full evaluation and incremental updates when a single
//! coefficient changes. [`PackedQuarticKernel`] specializes plane quartics
//! over F_4: each monomial-coefficient pair contributes a 64-bit word holding
//! its values at all 21 points as two bit planes, so evaluating a candidate is
//! an XOR of 15 words and the zero set is a popcount.

use std::sync::Arc;

use super::{SearchError, Space};
use crate::form::{monomials, HomogeneousForm};
use crate::gf::FieldSpec;
use crate::projgeom::ProjectiveSpace;

/// Monomial values and per-line restriction matrices for one space.
#[derive(Debug)]
pub struct SpaceTables {
    space: Space,
    field: Arc<FieldSpec>,
    geometry: Arc<ProjectiveSpace>,
    monomials: Vec<Vec<u16>>,
    /// `values[m * θ + i]`: monomial m at point i.
    values: Vec<u32>,
    /// `restrictions[(line * (d+1) + k) * M + m]`: coefficient of
    /// s^(d-k) t^k in the restriction of monomial m to the line.
    restrictions: Vec<u32>,
}

/// Point count and line-freeness of one candidate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub n_points: usize,
    pub line_free: bool,
}

impl SpaceTables {
    pub fn new(space: Space) -> Result<Self, SearchError> {
        space.validate()?;
        let field = FieldSpec::new(space.p, space.e)?;
        let geometry = ProjectiveSpace::shared(space.n, &field);
        let monos = monomials(space.n + 1, space.d);
        let theta = geometry.points().len();
        let mut values = vec![0u32; monos.len() * theta];
        for (m, exps) in monos.iter().enumerate() {
            for i in 0..theta {
                let x = geometry.point_raw(i);
                values[m * theta + i] = exps
                    .iter()
                    .zip(x)
                    .fold(1, |acc, (&a, &xi)| field.mul_idx(acc, field.pow_idx(xi, u64::from(a))));
            }
        }
        let mono_forms: Vec<HomogeneousForm> = monos
            .iter()
            .map(|e| HomogeneousForm::new(&field, space.n + 1, [(e.clone(), field.one())]).expect("monomial"))
            .collect();
        let width = space.d as usize + 1;
        let mut restrictions = vec![0u32; geometry.lines().len() * width * monos.len()];
        for (l, line) in geometry.lines().iter().enumerate() {
            for (m, g) in mono_forms.iter().enumerate() {
                let r = g.restrict_to_line(line).expect("same space");
                for (k, c) in r.coeffs().iter().enumerate() {
                    restrictions[(l * width + k) * monos.len() + m] = c.idx();
                }
            }
        }
        Ok(Self {
            space,
            field,
            geometry,
            monomials: monos,
            values,
            restrictions,
        })
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn geometry(&self) -> &Arc<ProjectiveSpace> {
        &self.geometry
    }

    pub fn num_monomials(&self) -> usize {
        self.monomials.len()
    }

    pub fn num_points(&self) -> usize {
        self.geometry.points().len()
    }

    /// Values of the candidate at every point.
    pub fn evaluate(&self, coeffs: &[u32], out: &mut [u32]) {
        let theta = self.num_points();
        out.fill(0);
        for (m, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let col = &self.values[m * theta..(m + 1) * theta];
            for (o, &v) in out.iter_mut().zip(col) {
                *o = self.field.add_idx(*o, self.field.mul_idx(c, v));
            }
        }
    }

    /// Adjusts `values` after coefficient `m` changes from `old` to `new`.
    pub fn update(&self, values: &mut [u32], m: usize, old: u32, new: u32) {
        let delta = self.field.sub_idx(new, old);
        if delta == 0 {
            return;
        }
        let theta = self.num_points();
        let col = &self.values[m * theta..(m + 1) * theta];
        for (o, &v) in values.iter_mut().zip(col) {
            *o = self.field.add_idx(*o, self.field.mul_idx(delta, v));
        }
    }

    fn line_contained(&self, line: usize, coeffs: &[u32]) -> bool {
        let width = self.space.d as usize + 1;
        let mm = self.monomials.len();
        (0..width).all(|k| {
            let row = &self.restrictions[(line * width + k) * mm..(line * width + k + 1) * mm];
            row.iter()
                .zip(coeffs)
                .fold(0, |acc, (&r, &c)| self.field.add_idx(acc, self.field.mul_idx(r, c)))
                == 0
        })
    }

    /// Classifies a candidate from its point values. Lines are confirmed by
    /// coefficient vanishing, and only tried when every point is a zero.
    pub fn classify(&self, coeffs: &[u32], values: &[u32]) -> Classification {
        let n_points = values.iter().filter(|&&v| v == 0).count();
        let q = self.field.q() as usize;
        let line_free = n_points < q + 1
            || !self
                .geometry
                .line_points()
                .iter()
                .enumerate()
                .any(|(l, pts)| pts.iter().all(|&p| values[p as usize] == 0) && self.line_contained(l, coeffs));
        Classification { n_points, line_free }
    }

    pub fn classify_vector(&self, coeffs: &[u32]) -> Classification {
        let mut values = vec![0u32; self.num_points()];
        self.evaluate(coeffs, &mut values);
        self.classify(coeffs, &values)
    }
}

const MASK21: u64 = (1 << 21) - 1;

/// Bit-sliced evaluation of plane quartics over F_4.
#[derive(Debug, Clone)]
pub struct PackedQuarticKernel {
    /// `table[m][c]`: value bits of `c * monomial_m` at all 21 points, low
    /// bits in 0..21 and high bits in 32..53.
    table: [[u64; 4]; 15],
    line_masks: [u32; 21],
}

impl PackedQuarticKernel {
    pub fn new() -> Self {
        let tables = SpaceTables::new(Space::PLANE_QUARTICS_F4).expect("valid space");
        let f = tables.field();
        let mut table = [[0u64; 4]; 15];
        for (m, row) in table.iter_mut().enumerate() {
            for (c, word) in row.iter_mut().enumerate() {
                for i in 0..21 {
                    let v = f.mul_idx(c as u32, tables.values[m * 21 + i]);
                    *word |= u64::from(v & 1) << i | u64::from(v >> 1) << (32 + i);
                }
            }
        }
        let mut line_masks = [0u32; 21];
        for (mask, pts) in line_masks.iter_mut().zip(tables.geometry().line_points()) {
            *mask = pts.iter().fold(0, |acc, &p| acc | 1 << p);
        }
        Self { table, line_masks }
    }

    /// Packed values of the candidate.
    #[inline]
    pub fn values(&self, coeffs: &[u32]) -> u64 {
        coeffs
            .iter()
            .zip(&self.table)
            .fold(0, |acc, (&c, row)| acc ^ row[c as usize])
    }

    /// Adjusts packed values after coefficient `m` changes from `old` to
    /// `new`.
    #[inline]
    pub fn update(&self, packed: u64, m: usize, old: u32, new: u32) -> u64 {
        packed ^ self.table[m][old as usize] ^ self.table[m][new as usize]
    }

    /// Bit i set when point i is a zero.
    #[inline]
    pub fn zero_mask(packed: u64) -> u32 {
        (!(packed | packed >> 32) & MASK21) as u32
    }

    /// A line has q + 1 = 5 points and the restriction has degree 4, so it
    /// lies on the curve exactly when all five points are zeros.
    #[inline]
    pub fn line_free(&self, zero: u32) -> bool {
        zero.count_ones() < 5 || !self.line_masks.iter().any(|&l| l & !zero == 0)
    }

    pub fn classify(&self, coeffs: &[u32]) -> Classification {
        let zero = Self::zero_mask(self.values(coeffs));
        Classification {
            n_points: zero.count_ones() as usize,
            line_free: self.line_free(zero),
        }
    }
}

impl Default for PackedQuarticKernel {
    fn default() -> Self {
        Self::new()
    }
}
