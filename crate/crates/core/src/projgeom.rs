//! Points, hyperplanes and lines of P^n(F_q), and PGL(n+1, q).
//!
//! Coordinate vectors are normalized so that their first nonzero coordinate
//! is 1. Enumerations list normalized vectors in lexicographic order of their
//! element indices, which groups points by the position of their leading 1,
//! from the last coordinate to the first: `(0:..:0:1)` comes first and
//! `(1:q-1:..:q-1)` last. See `docs/enumeration.md`.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use rand::Rng;
use thiserror::Error;

use crate::gf::{FieldElement, FieldId, FieldSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("coordinate from {found} in a space over {expected}")]
    FieldMismatch { expected: FieldId, found: FieldId },
    #[error("expected {expected} coordinates, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("a line needs two distinct points")]
    SamePoint,
    #[error("matrix is singular")]
    Singular,
    #[error("PGL({m}, {q}) has {order} elements, above the enumeration limit {limit}")]
    GroupTooLarge { m: usize, q: u32, order: u128, limit: u128 },
    #[error("element index {0} out of range")]
    BadIndex(u32),
}

/// Limit on the number of group elements [`enumerate_pgl`] will produce.
pub const PGL_ENUMERATION_LIMIT: u128 = 1_000_000;

// ---- raw coordinate helpers ---------------------------------------------

/// Scales `v` so that its first nonzero entry is 1. Returns `false` for the
/// zero vector.
pub(crate) fn normalize_raw(field: &FieldSpec, v: &mut [u32]) -> bool {
    let Some(lead) = v.iter().copied().find(|&x| x != 0) else {
        return false;
    };
    if lead != 1 {
        let inv = field.inv_idx(lead).expect("nonzero");
        for x in v.iter_mut() {
            *x = field.mul_idx(*x, inv);
        }
    }
    true
}

pub(crate) fn dot_raw(field: &FieldSpec, a: &[u32], b: &[u32]) -> u32 {
    a.iter()
        .zip(b)
        .fold(0, |acc, (&x, &y)| field.add_idx(acc, field.mul_idx(x, y)))
}

/// Reduced row echelon form in place; returns the rank and drops zero rows.
pub(crate) fn rref_raw(field: &FieldSpec, rows: &mut Vec<Vec<u32>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = field.inv_idx(rows[rank][c]).expect("nonzero pivot");
        for x in rows[rank].iter_mut() {
            *x = field.mul_idx(*x, inv);
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[c] == 0 {
                continue;
            }
            let factor = row[c];
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = field.sub_idx(*x, field.mul_idx(factor, y));
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    rank
}

/// Number of normalized vectors of length `n + 1` over F_q, i.e. θ_q(n).
pub fn point_count(n: usize, q: u32) -> usize {
    (0..=n).map(|i| (q as usize).pow(i as u32)).sum()
}

/// Position of a normalized vector in the enumeration order.
pub fn point_rank(q: u32, v: &[u32]) -> usize {
    let q = q as usize;
    let len = v.len();
    let lead = v.iter().position(|&x| x != 0).expect("nonzero vector");
    // Blocks with the leading 1 further right come first; the block with
    // leading position j holds q^(len-1-j) vectors.
    let mut rank: usize = (lead + 1..len).map(|j| q.pow((len - 1 - j) as u32)).sum();
    let mut tail = 0usize;
    for &x in &v[lead + 1..] {
        tail = tail * q + x as usize;
    }
    rank += tail;
    rank
}

/// Inverse of [`point_rank`] for vectors of length `len`.
pub fn point_unrank(len: usize, q: u32, mut rank: usize) -> Vec<u32> {
    let qs = q as usize;
    let mut v = vec![0u32; len];
    for lead in (0..len).rev() {
        let block = qs.pow((len - 1 - lead) as u32);
        if rank < block {
            v[lead] = 1;
            for j in (lead + 1..len).rev() {
                v[j] = (rank % qs) as u32;
                rank /= qs;
            }
            return v;
        }
        rank -= block;
    }
    panic!("rank out of range");
}

fn normalized_vectors(len: usize, q: u32) -> impl Iterator<Item = Vec<u32>> {
    (0..point_count(len - 1, q)).map(move |r| point_unrank(len, q, r))
}

/// Normalized projective points of the span of `basis` (linearly
/// independent rows), sorted in enumeration order.
pub(crate) fn subspace_points(field: &FieldSpec, basis: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let len = basis[0].len();
    let mut out: Vec<Vec<u32>> = normalized_vectors(basis.len(), field.q())
        .map(|coef| {
            let mut v = vec![0u32; len];
            for (c, row) in coef.iter().zip(basis) {
                if *c == 0 {
                    continue;
                }
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = field.add_idx(*x, field.mul_idx(*c, y));
                }
            }
            normalize_raw(field, &mut v);
            v
        })
        .collect();
    out.sort();
    out
}

fn wrap_all(field: &FieldSpec, v: &[u32]) -> Vec<FieldElement> {
    v.iter().map(|&x| field.wrap(x)).collect()
}

fn check_coords(field: &FieldSpec, coords: &[FieldElement]) -> Result<Vec<u32>, GeomError> {
    coords
        .iter()
        .map(|c| {
            if c.field_id() == field.id() {
                Ok(c.idx())
            } else {
                Err(GeomError::FieldMismatch {
                    expected: field.id(),
                    found: c.field_id(),
                })
            }
        })
        .collect()
}

// ---- points, hyperplanes, lines -----------------------------------------

/// A point of P^n(F_q) with normalized coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Vec<FieldElement>,
}

impl ProjPoint {
    pub fn new(field: &FieldSpec, coords: &[FieldElement]) -> Result<Self, GeomError> {
        let mut raw = check_coords(field, coords)?;
        if !normalize_raw(field, &mut raw) {
            return Err(GeomError::ZeroVector);
        }
        Ok(Self {
            coords: wrap_all(field, &raw),
        })
    }

    /// Builds a point from raw element indices.
    pub fn from_indices(field: &FieldSpec, idx: &[u32]) -> Result<Self, GeomError> {
        let els: Vec<_> = idx
            .iter()
            .map(|&i| field.element(i).map_err(|_| GeomError::BadIndex(i)))
            .collect::<Result<_, _>>()?;
        Self::new(field, &els)
    }

    pub(crate) fn from_normalized(field: &FieldSpec, raw: &[u32]) -> Self {
        Self {
            coords: wrap_all(field, raw),
        }
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    pub fn indices(&self) -> Vec<u32> {
        self.coords.iter().map(|c| c.idx()).collect()
    }

    /// Projective dimension n of the ambient space.
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }
}

/// A hyperplane of P^n(F_q), stored by its normalized dual coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    dual: Vec<FieldElement>,
}

impl Hyperplane {
    pub fn new(field: &FieldSpec, dual: &[FieldElement]) -> Result<Self, GeomError> {
        let p = ProjPoint::new(field, dual)?;
        Ok(Self { dual: p.coords })
    }

    pub(crate) fn from_normalized(field: &FieldSpec, raw: &[u32]) -> Self {
        Self {
            dual: wrap_all(field, raw),
        }
    }

    pub fn dual_coords(&self) -> &[FieldElement] {
        &self.dual
    }

    pub fn indices(&self) -> Vec<u32> {
        self.dual.iter().map(|c| c.idx()).collect()
    }

    pub fn contains(&self, field: &FieldSpec, p: &ProjPoint) -> bool {
        dot_raw(field, &self.indices(), &p.indices()) == 0
    }
}

/// A line of P^n(F_q), stored as the reduced row echelon form of a 2-row
/// basis; the representation is unique per line.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjLine {
    rows: [Vec<FieldElement>; 2],
}

impl ProjLine {
    /// The line spanned by two independent vectors.
    pub fn from_vectors(field: &FieldSpec, a: &[FieldElement], b: &[FieldElement]) -> Result<Self, GeomError> {
        if a.len() != b.len() {
            return Err(GeomError::DimensionMismatch {
                expected: a.len(),
                found: b.len(),
            });
        }
        let mut rows = vec![check_coords(field, a)?, check_coords(field, b)?];
        if rref_raw(field, &mut rows) != 2 {
            return Err(GeomError::SamePoint);
        }
        Ok(Self::from_rref(field, &rows[0], &rows[1]))
    }

    fn from_rref(field: &FieldSpec, u: &[u32], v: &[u32]) -> Self {
        Self {
            rows: [wrap_all(field, u), wrap_all(field, v)],
        }
    }

    pub fn basis(&self) -> &[Vec<FieldElement>; 2] {
        &self.rows
    }

    pub(crate) fn raw_rows(&self) -> (Vec<u32>, Vec<u32>) {
        (
            self.rows[0].iter().map(|c| c.idx()).collect(),
            self.rows[1].iter().map(|c| c.idx()).collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.rows[0].len() - 1
    }
}

/// The parameters `(s, t)` of the points of a line in the order used by
/// [`points_on_line`]: `(1, t)` for `t` in index order, then `(0, 1)`.
pub fn line_parameters(q: u32) -> Vec<(u32, u32)> {
    (0..q).map(|t| (1, t)).chain(std::iter::once((0, 1))).collect()
}

/// The `q + 1` points `s*u + t*v` of a line with echelon basis `(u, v)`.
pub fn points_on_line(field: &FieldSpec, line: &ProjLine) -> Vec<ProjPoint> {
    let (u, v) = line.raw_rows();
    line_parameters(field.q())
        .into_iter()
        .map(|(s, t)| {
            let mut x: Vec<u32> = u
                .iter()
                .zip(&v)
                .map(|(&a, &b)| field.add_idx(field.mul_idx(s, a), field.mul_idx(t, b)))
                .collect();
            normalize_raw(field, &mut x);
            ProjPoint::from_normalized(field, &x)
        })
        .collect()
}

/// The hyperplanes containing `line`, in enumeration order.
pub fn hyperplanes_through_line(field: &FieldSpec, line: &ProjLine) -> Vec<Hyperplane> {
    let (u, v) = line.raw_rows();
    let len = u.len();
    if len == 2 {
        // P^1: the line is the whole space and no hyperplane contains it.
        return Vec::new();
    }
    let pu = u.iter().position(|&x| x != 0).expect("rref row");
    let pv = v.iter().position(|&x| x != 0).expect("rref row");
    let basis: Vec<Vec<u32>> = (0..len)
        .filter(|&k| k != pu && k != pv)
        .map(|k| {
            let mut h = vec![0u32; len];
            h[k] = 1;
            h[pu] = field.neg_idx(u[k]);
            h[pv] = field.neg_idx(v[k]);
            h
        })
        .collect();
    subspace_points(field, &basis)
        .iter()
        .map(|h| Hyperplane::from_normalized(field, h))
        .collect()
}

pub fn line_through(field: &FieldSpec, a: &ProjPoint, b: &ProjPoint) -> Result<ProjLine, GeomError> {
    ProjLine::from_vectors(field, a.coords(), b.coords())
}

/// The θ_q(n-1) lines through `p`, sorted.
pub fn lines_through_point(field: &FieldSpec, p: &ProjPoint) -> Vec<ProjLine> {
    let len = p.coords().len();
    let mut set = BTreeSet::new();
    for r in normalized_vectors(len, field.q()) {
        let other = ProjPoint::from_normalized(field, &r);
        if &other == p {
            continue;
        }
        set.insert(line_through(field, p, &other).expect("distinct points"));
    }
    set.into_iter().collect()
}

/// All θ_q(n) points of P^n(F_q) in enumeration order.
pub fn enumerate_points(n: usize, field: &FieldSpec) -> Vec<ProjPoint> {
    normalized_vectors(n + 1, field.q())
        .map(|v| ProjPoint::from_normalized(field, &v))
        .collect()
}

/// All θ_q(n) hyperplanes, ordered like points by their dual coordinates.
pub fn enumerate_hyperplanes(n: usize, field: &FieldSpec) -> Vec<Hyperplane> {
    normalized_vectors(n + 1, field.q())
        .map(|v| Hyperplane::from_normalized(field, &v))
        .collect()
}

/// All lines of P^n(F_q), sorted by their echelon basis.
pub fn enumerate_lines(n: usize, field: &FieldSpec) -> Vec<ProjLine> {
    let len = n + 1;
    let q = field.q();
    let mut out = Vec::new();
    for i in 0..len {
        for j in i + 1..len {
            let free_u: Vec<usize> = (i + 1..len).filter(|&k| k != j).collect();
            let free_v: Vec<usize> = (j + 1..len).collect();
            let nfree = free_u.len() + free_v.len();
            let total = (q as usize).pow(nfree as u32);
            for code in 0..total {
                let mut u = vec![0u32; len];
                let mut v = vec![0u32; len];
                u[i] = 1;
                v[j] = 1;
                // Low digits fill the free entries of v, high digits those of u.
                let mut c = code;
                for &k in free_v.iter().rev() {
                    v[k] = (c % q as usize) as u32;
                    c /= q as usize;
                }
                for &k in free_u.iter().rev() {
                    u[k] = (c % q as usize) as u32;
                    c /= q as usize;
                }
                out.push(ProjLine::from_rref(field, &u, &v));
            }
        }
    }
    out.sort();
    out
}

/// Gaussian binomial [m choose k]_q.
pub fn gaussian_binomial(m: u32, k: u32, q: u32) -> u128 {
    if k > m {
        return 0;
    }
    let q = u128::from(q);
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= q.pow(m - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

// ---- PGL ------------------------------------------------------------------

/// An element of PGL(m, q), stored as an invertible m×m matrix (row-major)
/// scaled so that its first nonzero entry is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectiveMap {
    m: usize,
    entries: Vec<FieldElement>,
}

impl ProjectiveMap {
    pub fn new(field: &FieldSpec, m: usize, entries: &[FieldElement]) -> Result<Self, GeomError> {
        if entries.len() != m * m {
            return Err(GeomError::DimensionMismatch {
                expected: m * m,
                found: entries.len(),
            });
        }
        let raw = check_coords(field, entries)?;
        Self::from_raw(field, m, raw)
    }

    pub(crate) fn from_raw(field: &FieldSpec, m: usize, mut raw: Vec<u32>) -> Result<Self, GeomError> {
        let mut rows: Vec<Vec<u32>> = raw.chunks(m).map(<[u32]>::to_vec).collect();
        if rref_raw(field, &mut rows) != m {
            return Err(GeomError::Singular);
        }
        normalize_raw(field, &mut raw);
        Ok(Self {
            m,
            entries: wrap_all(field, &raw),
        })
    }

    pub fn identity(field: &FieldSpec, m: usize) -> Self {
        let mut raw = vec![0u32; m * m];
        for i in 0..m {
            raw[i * m + i] = 1;
        }
        Self {
            m,
            entries: wrap_all(field, &raw),
        }
    }

    /// A uniformly random element, by rejection sampling of matrices.
    pub fn random<R: Rng + ?Sized>(field: &FieldSpec, m: usize, rng: &mut R) -> Self {
        loop {
            let raw: Vec<u32> = (0..m * m).map(|_| rng.gen_range(0..field.q())).collect();
            if let Ok(map) = Self::from_raw(field, m, raw) {
                return map;
            }
        }
    }

    /// Matrix size m = n + 1.
    pub fn size(&self) -> usize {
        self.m
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub(crate) fn raw(&self) -> Vec<u32> {
        self.entries.iter().map(|c| c.idx()).collect()
    }

    pub(crate) fn apply_raw(&self, field: &FieldSpec, x: &[u32]) -> Vec<u32> {
        let a = self.raw();
        (0..self.m)
            .map(|i| dot_raw(field, &a[i * self.m..(i + 1) * self.m], x))
            .collect()
    }

    /// The image `M·P`.
    pub fn apply(&self, field: &FieldSpec, p: &ProjPoint) -> ProjPoint {
        let mut y = self.apply_raw(field, &p.indices());
        normalize_raw(field, &mut y);
        ProjPoint::from_normalized(field, &y)
    }

    /// `self ∘ other`, i.e. the matrix product `self · other`.
    pub fn compose(&self, field: &FieldSpec, other: &ProjectiveMap) -> ProjectiveMap {
        let m = self.m;
        let a = self.raw();
        let b = other.raw();
        let mut c = vec![0u32; m * m];
        for i in 0..m {
            for j in 0..m {
                let mut s = 0;
                for k in 0..m {
                    s = field.add_idx(s, field.mul_idx(a[i * m + k], b[k * m + j]));
                }
                c[i * m + j] = s;
            }
        }
        Self::from_raw(field, m, c).expect("product of invertible matrices")
    }

    pub fn inverse(&self, field: &FieldSpec) -> ProjectiveMap {
        let m = self.m;
        let a = self.raw();
        let mut rows: Vec<Vec<u32>> = (0..m)
            .map(|i| {
                let mut r = a[i * m..(i + 1) * m].to_vec();
                r.extend((0..m).map(|j| u32::from(i == j)));
                r
            })
            .collect();
        rref_raw(field, &mut rows);
        let inv: Vec<u32> = rows.iter().flat_map(|r| r[m..].to_vec()).collect();
        Self::from_raw(field, m, inv).expect("inverse is invertible")
    }
}

/// |PGL(m, q)|.
pub fn pgl_order(m: usize, q: u32) -> u128 {
    let q = u128::from(q);
    let qm = q.pow(m as u32);
    let gl: u128 = (0..m as u32).map(|k| qm - q.pow(k)).product();
    gl / (q - 1)
}

/// Every element of PGL(n+1, q) exactly once, in lexicographic order of the
/// normalized matrix entries.
pub fn enumerate_pgl(n: usize, field: &FieldSpec) -> Result<Vec<ProjectiveMap>, GeomError> {
    let m = n + 1;
    let q = field.q();
    let order = pgl_order(m, q);
    if order > PGL_ENUMERATION_LIMIT {
        return Err(GeomError::GroupTooLarge {
            m,
            q,
            order,
            limit: PGL_ENUMERATION_LIMIT,
        });
    }
    let all: Vec<Vec<u32>> = (0..(q as usize).pow(m as u32))
        .map(|code| {
            let mut v = vec![0u32; m];
            let mut c = code;
            for x in v.iter_mut().rev() {
                *x = (c % q as usize) as u32;
                c /= q as usize;
            }
            v
        })
        .collect();
    let mut out = Vec::with_capacity(order as usize);
    // Rows chosen so far and the reduced echelon form of their span.
    fn rec(
        field: &FieldSpec,
        m: usize,
        all: &[Vec<u32>],
        chosen: &mut Vec<Vec<u32>>,
        span: &[Vec<u32>],
        out: &mut Vec<ProjectiveMap>,
    ) {
        if chosen.len() == m {
            let flat: Vec<u32> = chosen.iter().flatten().copied().collect();
            out.push(ProjectiveMap {
                m,
                entries: wrap_all(field, &flat),
            });
            return;
        }
        let first = chosen.is_empty();
        for v in all {
            if first && v.iter().find(|&&x| x != 0) != Some(&1) {
                continue;
            }
            let mut rows = span.to_vec();
            rows.push(v.clone());
            if rref_raw(field, &mut rows) != chosen.len() + 1 {
                continue;
            }
            chosen.push(v.clone());
            rec(field, m, all, chosen, &rows, out);
            chosen.pop();
        }
    }
    rec(field, m, &all, &mut Vec::with_capacity(m), &[], &mut out);
    debug_assert_eq!(out.len() as u128, order);
    Ok(out)
}

// ---- interned geometry ----------------------------------------------------

/// P^n(F_q) with points and hyperplanes interned as dense indices, plus
/// lazily built incidence tables. Built once per `(n, field)` and shared.
#[derive(Debug)]
pub struct ProjectiveSpace {
    n: usize,
    field: Arc<FieldSpec>,
    points: Vec<ProjPoint>,
    raw_points: Vec<u32>,
    hyperplanes: Vec<Hyperplane>,
    hyperplane_points: OnceLock<Vec<Vec<u32>>>,
    lines: OnceLock<Vec<ProjLine>>,
    line_points: OnceLock<Vec<Vec<u32>>>,
}

type SpaceKey = (usize, FieldId);

fn space_cache() -> &'static Mutex<HashMap<SpaceKey, Arc<ProjectiveSpace>>> {
    static CACHE: OnceLock<Mutex<HashMap<SpaceKey, Arc<ProjectiveSpace>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl ProjectiveSpace {
    /// The shared instance for `(n, field)`.
    pub fn shared(n: usize, field: &Arc<FieldSpec>) -> Arc<ProjectiveSpace> {
        let key = (n, field.id());
        if let Some(s) = space_cache().lock().expect("cache lock").get(&key) {
            return Arc::clone(s);
        }
        let built = Arc::new(Self::build(n, field));
        let mut cache = space_cache().lock().expect("cache lock");
        Arc::clone(cache.entry(key).or_insert(built))
    }

    fn build(n: usize, field: &Arc<FieldSpec>) -> Self {
        let points = enumerate_points(n, field);
        let raw_points = points.iter().flat_map(ProjPoint::indices).collect();
        let hyperplanes = enumerate_hyperplanes(n, field);
        Self {
            n,
            field: Arc::clone(field),
            points,
            raw_points,
            hyperplanes,
            hyperplane_points: OnceLock::new(),
            lines: OnceLock::new(),
            line_points: OnceLock::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    /// Coordinates of point `i` as element indices.
    pub fn point_raw(&self, i: usize) -> &[u32] {
        let len = self.n + 1;
        &self.raw_points[i * len..(i + 1) * len]
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn point_index(&self, p: &ProjPoint) -> usize {
        point_rank(self.field.q(), &p.indices())
    }

    pub fn hyperplane_index(&self, h: &Hyperplane) -> usize {
        point_rank(self.field.q(), &h.indices())
    }

    /// For each hyperplane, the indices of the points on it.
    pub fn hyperplane_points(&self) -> &[Vec<u32>] {
        self.hyperplane_points.get_or_init(|| {
            self.hyperplanes
                .iter()
                .map(|h| {
                    let hr = h.indices();
                    (0..self.points.len())
                        .filter(|&i| dot_raw(&self.field, &hr, self.point_raw(i)) == 0)
                        .map(|i| i as u32)
                        .collect()
                })
                .collect()
        })
    }

    pub fn lines(&self) -> &[ProjLine] {
        self.lines.get_or_init(|| enumerate_lines(self.n, &self.field))
    }

    /// For each line, the indices of its points in [`line_parameters`] order.
    pub fn line_points(&self) -> &[Vec<u32>] {
        self.line_points.get_or_init(|| {
            self.lines()
                .iter()
                .map(|l| {
                    points_on_line(&self.field, l)
                        .iter()
                        .map(|p| self.point_index(p) as u32)
                        .collect()
                })
                .collect()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn field(q: u32) -> Arc<FieldSpec> {
        FieldSpec::for_order(q).unwrap()
    }

    #[test]
    fn point_and_hyperplane_counts() {
        assert_eq!(enumerate_points(2, &field(4)).len(), 21);
        assert_eq!(enumerate_points(3, &field(4)).len(), 85);
        assert_eq!(enumerate_points(1, &field(2)).len(), 3);
        assert_eq!(enumerate_hyperplanes(3, &field(4)).len(), 85);
        assert_eq!(enumerate_hyperplanes(2, &field(2)).len(), 7);
    }

    #[test]
    fn enumeration_order_is_lexicographic_and_ranked() {
        for (n, q) in [(1, 3), (2, 4), (3, 2), (3, 3)] {
            let f = field(q);
            let pts = enumerate_points(n, &f);
            let raw: Vec<Vec<u32>> = pts.iter().map(ProjPoint::indices).collect();
            let mut sorted = raw.clone();
            sorted.sort();
            assert_eq!(raw, sorted);
            for (i, v) in raw.iter().enumerate() {
                assert_eq!(point_rank(q, v), i);
                assert_eq!(&point_unrank(n + 1, q, i), v);
            }
        }
        let f = field(2);
        let pts = enumerate_points(2, &f);
        assert_eq!(pts[0].indices(), vec![0, 0, 1]);
        assert_eq!(pts[6].indices(), vec![1, 1, 1]);
    }

    #[test]
    fn normalization() {
        let f = field(3);
        let two = f.from_int(2);
        let p = ProjPoint::new(&f, &[f.zero(), two, f.one()]).unwrap();
        assert_eq!(p.indices(), vec![0, 1, 2]);
        let again = ProjPoint::new(&f, p.coords()).unwrap();
        assert_eq!(p, again);
        assert_eq!(ProjPoint::new(&f, &[f.zero(), f.zero()]), Err(GeomError::ZeroVector));
    }

    #[test]
    fn each_point_lies_on_theta_n_minus_one_hyperplanes() {
        for (n, q) in [(2, 2), (2, 3), (3, 2), (3, 4), (2, 4)] {
            let f = field(q);
            let space = ProjectiveSpace::shared(n, &f);
            let mut per_point = vec![0usize; space.points().len()];
            let mut total = 0;
            for hp in space.hyperplane_points() {
                assert_eq!(hp.len(), point_count(n - 1, q));
                total += hp.len();
                for &i in hp {
                    per_point[i as usize] += 1;
                }
            }
            assert!(per_point.iter().all(|&c| c == point_count(n - 1, q)));
            assert_eq!(total, point_count(n, q) * point_count(n - 1, q));
        }
    }

    #[test]
    fn line_counts_match_gaussian_binomials() {
        assert_eq!(enumerate_lines(2, &field(4)).len(), 21);
        assert_eq!(enumerate_lines(3, &field(4)).len(), 357);
        assert_eq!(enumerate_lines(3, &field(2)).len(), 35);
        assert_eq!(enumerate_lines(1, &field(3)).len(), 1);
        for (n, q) in [(2, 3), (3, 3), (4, 2), (2, 5)] {
            let lines = enumerate_lines(n, &field(q));
            assert_eq!(lines.len() as u128, gaussian_binomial(n as u32 + 1, 2, q));
            let set: BTreeSet<_> = lines.iter().collect();
            assert_eq!(set.len(), lines.len());
        }
    }

    #[test]
    fn lines_are_canonical() {
        let f = field(3);
        for l in enumerate_lines(3, &f) {
            let pts = points_on_line(&f, &l);
            assert_eq!(pts.len(), 4);
            for a in &pts {
                for b in &pts {
                    if a != b {
                        assert_eq!(line_through(&f, a, b).unwrap(), l);
                    }
                }
            }
        }
    }

    #[test]
    fn two_points_one_line() {
        let f = field(2);
        let space = ProjectiveSpace::shared(3, &f);
        let mut count: HashMap<(u32, u32), usize> = HashMap::new();
        for lp in space.line_points() {
            for &a in lp {
                for &b in lp {
                    if a < b {
                        *count.entry((a, b)).or_default() += 1;
                    }
                }
            }
        }
        let np = space.points().len();
        assert_eq!(count.len(), np * (np - 1) / 2);
        assert!(count.values().all(|&c| c == 1));
    }

    #[test]
    fn planes_through_a_line_in_p3() {
        let f = field(4);
        for l in enumerate_lines(3, &f).iter().step_by(17) {
            let planes = hyperplanes_through_line(&f, l);
            assert_eq!(planes.len(), 5);
            for h in &planes {
                for p in points_on_line(&f, l) {
                    assert!(h.contains(&f, &p));
                }
            }
        }
        let f2 = field(2);
        let l = &enumerate_lines(2, &f2)[0];
        assert_eq!(points_on_line(&f2, l).len(), 3);
    }

    #[test]
    fn two_planes_of_p3_meet_in_one_line() {
        let f = field(3);
        let space = ProjectiveSpace::shared(3, &f);
        let hp = space.hyperplane_points();
        let line_sets: BTreeSet<Vec<u32>> = space
            .line_points()
            .iter()
            .map(|v| {
                let mut v = v.clone();
                v.sort();
                v
            })
            .collect();
        for a in 0..hp.len() {
            for b in a + 1..hp.len() {
                let common: Vec<u32> = hp[a].iter().filter(|x| hp[b].contains(x)).copied().collect();
                assert!(line_sets.contains(&common));
            }
        }
    }

    #[test]
    fn lines_through_a_point() {
        let f = field(4);
        let p = enumerate_points(3, &f)[40].clone();
        let lines = lines_through_point(&f, &p);
        assert_eq!(lines.len(), 21);
        let mut covered = BTreeSet::new();
        for l in &lines {
            for x in points_on_line(&f, l) {
                covered.insert(x);
            }
        }
        assert_eq!(covered.len(), 85);
        let p2 = enumerate_points(2, &f)[3].clone();
        assert_eq!(lines_through_point(&f, &p2).len(), 5);
        assert_eq!(line_through(&f, &p, &p), Err(GeomError::SamePoint));
    }

    #[test]
    fn pgl_small_groups() {
        let f2 = field(2);
        let g = enumerate_pgl(1, &f2).unwrap();
        assert_eq!(g.len(), 6);
        let f4 = field(4);
        let g = enumerate_pgl(2, &f4).unwrap();
        assert_eq!(g.len(), 60480);
        let set: std::collections::HashSet<_> = g.iter().collect();
        assert_eq!(set.len(), g.len());
        assert!(set.contains(&ProjectiveMap::identity(&f4, 3)));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let a = &g[rng.gen_range(0..g.len())];
            let b = &g[rng.gen_range(0..g.len())];
            assert!(set.contains(&a.compose(&f4, b)));
        }
    }

    #[test]
    fn pgl_guard() {
        let err = enumerate_pgl(3, &field(4)).unwrap_err();
        assert!(matches!(err, GeomError::GroupTooLarge { .. }));
    }

    #[test]
    fn maps_permute_points() {
        let f = field(3);
        let pts = enumerate_points(2, &f);
        let set: BTreeSet<_> = pts.iter().cloned().collect();
        for m in enumerate_pgl(1, &f).unwrap() {
            let line_pts = enumerate_points(1, &f);
            let img: BTreeSet<_> = line_pts.iter().map(|p| m.apply(&f, p)).collect();
            assert_eq!(img.len(), line_pts.len());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let m = ProjectiveMap::random(&f, 3, &mut rng);
            let img: BTreeSet<_> = pts.iter().map(|p| m.apply(&f, p)).collect();
            assert_eq!(img, set);
            let inv = m.inverse(&f);
            assert_eq!(m.compose(&f, &inv), ProjectiveMap::identity(&f, 3));
            for p in &pts {
                assert_eq!(inv.apply(&f, &m.apply(&f, p)), *p);
            }
        }
    }

    #[test]
    fn singular_matrix_rejected() {
        let f = field(2);
        let z = f.zero();
        let o = f.one();
        assert_eq!(ProjectiveMap::new(&f, 2, &[o, o, o, o]), Err(GeomError::Singular));
        assert!(ProjectiveMap::new(&f, 2, &[o, z, z, o]).is_ok());
    }
}
