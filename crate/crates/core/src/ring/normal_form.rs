//! Smith, Hermite/Howell and reduced echelon forms with transformation
//! matrices, plus the derived solvers.
//!
//! Over `Z/m` and `F_p[e]/(e^n)` the row span of a matrix is classified by
//! its Howell form, which may need more rows than the input. The input is
//! padded with zero rows on demand, so for Howell results `left` is square of
//! size `nf.rows()` and acts on the zero-padded input.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{Matrix, RingElem, RingSpec};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormalFormKind {
    Smith,
    ReducedEchelon,
    Howell,
}

#[derive(Clone, Debug)]
pub struct NormalFormResult {
    pub nf: Matrix,
    pub left: Matrix,
    pub right: Matrix,
    pub kind: NormalFormKind,
}

impl NormalFormResult {
    /// Checks `left * input * right == nf` (input zero-padded to `nf.rows()`)
    /// and that both transforms are invertible.
    pub fn verify(&self, input: &Matrix) -> bool {
        if input.rows() > self.nf.rows() || input.cols() != self.nf.cols() {
            return false;
        }
        let padded = input.pad_rows(self.nf.rows() - input.rows());
        self.left.mul(&padded).mul(&self.right) == self.nf
            && is_invertible(&self.left)
            && is_invertible(&self.right)
    }
}

#[derive(Clone, Copy, Default)]
struct Track {
    left: bool,
    left_inv: bool,
    right: bool,
}

/// Working state for an elimination: the matrix plus whichever transforms
/// are being accumulated.
struct Elim {
    ring: RingSpec,
    m: Matrix,
    left: Option<Matrix>,
    left_inv: Option<Matrix>,
    right: Option<Matrix>,
}

impl Elim {
    fn new(a: &Matrix, track: Track) -> Self {
        let ring = a.ring();
        Elim {
            ring,
            m: a.clone(),
            left: track.left.then(|| Matrix::identity(ring, a.rows())),
            left_inv: track.left_inv.then(|| Matrix::identity(ring, a.rows())),
            right: track.right.then(|| Matrix::identity(ring, a.cols())),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.m.swap_rows(i, j);
        if let Some(l) = &mut self.left {
            l.swap_rows(i, j);
        }
        if let Some(li) = &mut self.left_inv {
            li.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.m.swap_cols(i, j);
        if let Some(r) = &mut self.right {
            r.swap_cols(i, j);
        }
    }

    /// `row_i += c row_j`
    fn add_row(&mut self, i: usize, j: usize, c: &RingElem) {
        self.m.add_row_multiple(i, j, c);
        if let Some(l) = &mut self.left {
            l.add_row_multiple(i, j, c);
        }
        if let Some(li) = &mut self.left_inv {
            li.add_col_multiple(j, i, &self.ring.neg(c));
        }
    }

    /// `col_i += c col_j`
    fn add_col(&mut self, i: usize, j: usize, c: &RingElem) {
        self.m.add_col_multiple(i, j, c);
        if let Some(r) = &mut self.right {
            r.add_col_multiple(i, j, c);
        }
    }

    fn scale_row(&mut self, i: usize, unit: &RingElem) {
        self.m.scale_row(i, unit);
        if let Some(l) = &mut self.left {
            l.scale_row(i, unit);
        }
        if let Some(li) = &mut self.left_inv {
            li.scale_col(i, &self.ring.inv(unit).expect("unit"));
        }
    }

    fn combine_rows(&mut self, i: usize, j: usize, g: &super::Gcdex) {
        self.m.combine_rows(i, j, &g.s, &g.t, &g.u, &g.v);
        if let Some(l) = &mut self.left {
            l.combine_rows(i, j, &g.s, &g.t, &g.u, &g.v);
        }
        if let Some(li) = &mut self.left_inv {
            let r = self.ring;
            li.combine_cols(i, j, &g.v, &r.neg(&g.u), &r.neg(&g.t), &g.s);
        }
    }

    fn combine_cols(&mut self, i: usize, j: usize, g: &super::Gcdex) {
        self.m.combine_cols(i, j, &g.s, &g.t, &g.u, &g.v);
        if let Some(r) = &mut self.right {
            r.combine_cols(i, j, &g.s, &g.t, &g.u, &g.v);
        }
    }

    fn push_zero_row(&mut self) {
        self.m.push_zero_row();
        if let Some(l) = &mut self.left {
            l.extend_identity();
        }
        if let Some(li) = &mut self.left_inv {
            li.extend_identity();
        }
    }
}

pub(crate) struct SmithData {
    pub diag: Matrix,
    pub left: Option<Matrix>,
    pub left_inv: Option<Matrix>,
    pub right: Option<Matrix>,
}

impl SmithData {
    /// Canonical diagonal entries, `min(rows, cols)` of them.
    pub fn diagonal(&self) -> Vec<RingElem> {
        (0..self.diag.rows().min(self.diag.cols()))
            .map(|i| self.diag.get(i, i).clone())
            .collect()
    }
}

fn smith_impl(a: &Matrix, track: Track) -> SmithData {
    let ring = a.ring();
    let (r, c) = a.shape();
    let mut e = Elim::new(a, track);
    let mut t = 0;
    while t < r.min(c) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                let x = e.m.get(i, j);
                if ring.is_zero(x) {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => ring.pivot_cmp(x, e.m.get(bi, bj)).is_lt(),
                };
                if better {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        e.swap_rows(t, pi);
        e.swap_cols(t, pj);
        if ring == RingSpec::Integers {
            euclid_pivot(&mut e, t);
        } else {
            gcdex_pivot(&mut e, t);
        }
        let (_, unit) = ring.canonical_associate(e.m.get(t, t));
        if !ring.is_one(&unit) {
            e.scale_row(t, &ring.inv(&unit).expect("unit"));
        }
        t += 1;
    }
    SmithData {
        diag: e.m,
        left: e.left,
        left_inv: e.left_inv,
        right: e.right,
    }
}

/// Clears row and column `t` around the pivot at `(t, t)` with Bezout
/// combinations, until the pivot divides the remaining block.
fn gcdex_pivot(e: &mut Elim, t: usize) {
    let ring = e.ring;
    let (r, c) = e.m.shape();
    loop {
        for i in t + 1..r {
            let b = e.m.get(i, t).clone();
            if ring.is_zero(&b) {
                continue;
            }
            let p = e.m.get(t, t).clone();
            match ring.div_exact(&b, &p) {
                Some(q) => e.add_row(i, t, &ring.neg(&q)),
                None => {
                    let g = ring.gcdex(&p, &b);
                    e.combine_rows(t, i, &g);
                }
            }
        }
        let mut refilled = false;
        for j in t + 1..c {
            let b = e.m.get(t, j).clone();
            if ring.is_zero(&b) {
                continue;
            }
            let p = e.m.get(t, t).clone();
            match ring.div_exact(&b, &p) {
                Some(q) => e.add_col(j, t, &ring.neg(&q)),
                None => {
                    let g = ring.gcdex(&p, &b);
                    e.combine_cols(t, j, &g);
                    refilled = true;
                }
            }
        }
        if refilled {
            continue;
        }
        let p = e.m.get(t, t).clone();
        let offender = (t + 1..r).find(|&i| (t + 1..c).any(|j| !ring.divides(&p, e.m.get(i, j))));
        match offender {
            Some(i) => e.add_row(t, i, &ring.one()),
            None => break,
        }
    }
}

/// Integer quotient rounded to nearest, so remainders satisfy
/// `|r| <= |p| / 2`.
fn nearest_quotient(b: &BigInt, p: &BigInt) -> BigInt {
    let (q, r) = b.div_mod_floor(p);
    if (&r + &r).abs() > p.abs() {
        q + 1
    } else {
        q
    }
}

fn int(x: &RingElem) -> &BigInt {
    match x {
        RingElem::Int(v) => v,
        _ => unreachable!("integer matrix"),
    }
}

/// Over `Z`: Euclidean reduction of row and column `t` with nearest-integer
/// quotients, moving the smallest remainder to the pivot each round. Keeps
/// entries far smaller than Bezout combinations on dense inputs.
fn euclid_pivot(e: &mut Elim, t: usize) {
    let (r, c) = e.m.shape();
    let ring = e.ring;
    loop {
        loop {
            let p = int(e.m.get(t, t)).clone();
            let mut smallest: Option<(usize, BigInt)> = None;
            for i in t + 1..r {
                let b = int(e.m.get(i, t));
                if b.is_zero() {
                    continue;
                }
                let q = nearest_quotient(b, &p);
                if !q.is_zero() {
                    e.add_row(i, t, &RingElem::Int(-q));
                }
                let rem = int(e.m.get(i, t)).abs();
                if !rem.is_zero() && smallest.as_ref().is_none_or(|(_, s)| rem < *s) {
                    smallest = Some((i, rem));
                }
            }
            match smallest {
                Some((i, _)) => e.swap_rows(t, i),
                None => break,
            }
        }
        let mut dirty = false;
        loop {
            let p = int(e.m.get(t, t)).clone();
            let mut smallest: Option<(usize, BigInt)> = None;
            for j in t + 1..c {
                let b = int(e.m.get(t, j));
                if b.is_zero() {
                    continue;
                }
                let q = nearest_quotient(b, &p);
                if !q.is_zero() {
                    e.add_col(j, t, &RingElem::Int(-q));
                }
                let rem = int(e.m.get(t, j)).abs();
                if !rem.is_zero() && smallest.as_ref().is_none_or(|(_, s)| rem < *s) {
                    smallest = Some((j, rem));
                }
            }
            match smallest {
                Some((j, _)) => {
                    e.swap_cols(t, j);
                    dirty = true;
                }
                None => break,
            }
        }
        if dirty {
            continue;
        }
        let p = e.m.get(t, t).clone();
        let offender = (t + 1..r).find(|&i| (t + 1..c).any(|j| !ring.divides(&p, e.m.get(i, j))));
        match offender {
            Some(i) => e.add_row(t, i, &ring.one()),
            None => break,
        }
    }
}

pub(crate) fn smith_with(a: &Matrix, left: bool, left_inv: bool, right: bool) -> SmithData {
    smith_impl(
        a,
        Track {
            left,
            left_inv,
            right,
        },
    )
}

/// Smith normal form over any supported ring. Diagonal entries are canonical
/// ideal generators with `d_1 | d_2 | ...`, zeros last.
pub fn smith_form(a: &Matrix) -> NormalFormResult {
    let s = smith_with(a, true, false, true);
    NormalFormResult {
        nf: s.diag,
        left: s.left.unwrap(),
        right: s.right.unwrap(),
        kind: NormalFormKind::Smith,
    }
}

fn howell_impl(a: &Matrix, track_left: bool) -> Elim {
    let ring = a.ring();
    let c = a.cols();
    let mut e = Elim::new(
        a,
        Track {
            left: track_left,
            ..Track::default()
        },
    );
    let mut row = 0;
    for col in 0..c {
        if row >= e.m.rows() {
            break;
        }
        for i in row + 1..e.m.rows() {
            let b = e.m.get(i, col).clone();
            if ring.is_zero(&b) {
                continue;
            }
            let p = e.m.get(row, col).clone();
            if ring.is_zero(&p) {
                e.swap_rows(row, i);
                continue;
            }
            if let Some(q) = ring.div_exact(&b, &p) {
                e.add_row(i, row, &ring.neg(&q));
            } else if let Some(q) = ring.div_exact(&p, &b) {
                e.swap_rows(row, i);
                e.add_row(i, row, &ring.neg(&q));
            } else {
                let g = ring.gcdex(&p, &b);
                e.combine_rows(row, i, &g);
            }
        }
        if ring.is_zero(e.m.get(row, col)) {
            continue;
        }
        let (pivot, unit) = ring.canonical_associate(e.m.get(row, col));
        if !ring.is_one(&unit) {
            e.scale_row(row, &ring.inv(&unit).expect("unit"));
        }
        let ann = ring.ann(&pivot);
        if !ring.is_zero(&ann) {
            let spills = (col + 1..c).any(|j| !ring.is_zero(&ring.mul(&ann, e.m.get(row, j))));
            if spills {
                let slot = (row + 1..e.m.rows()).find(|&j| e.m.row_is_zero(j));
                let slot = match slot {
                    Some(j) => j,
                    None => {
                        e.push_zero_row();
                        e.m.rows() - 1
                    }
                };
                e.add_row(slot, row, &ann);
            }
        }
        for i in 0..row {
            let (q, _) = ring.quo_rem(e.m.get(i, col), &pivot);
            if !ring.is_zero(&q) {
                e.add_row(i, row, &ring.neg(&q));
            }
        }
        row += 1;
    }
    e
}

/// Howell form (Hermite form over `Z`, reduced row echelon form over a
/// field). `right` is the identity.
pub fn howell_form(a: &Matrix) -> NormalFormResult {
    let e = howell_impl(a, true);
    let kind = match a.ring() {
        RingSpec::Rationals | RingSpec::PrimeField(_) => NormalFormKind::ReducedEchelon,
        _ => NormalFormKind::Howell,
    };
    NormalFormResult {
        right: Matrix::identity(a.ring(), a.cols()),
        left: e.left.unwrap(),
        nf: e.m,
        kind,
    }
}

/// Canonical form appropriate to the ring: Smith over `Z`, reduced echelon
/// over fields, Howell over `Z/m` and truncated polynomial rings.
pub fn normal_form(a: &Matrix) -> NormalFormResult {
    match a.ring() {
        RingSpec::Integers => smith_form(a),
        _ => howell_form(a),
    }
}

/// Nonzero rows of the Howell form, without transforms.
pub(crate) fn howell_rows(a: &Matrix) -> Matrix {
    let e = howell_impl(a, false);
    let keep: Vec<usize> = (0..e.m.rows()).filter(|&i| !e.m.row_is_zero(i)).collect();
    e.m.select_rows(&keep)
}

/// Canonical Smith diagonal, `min(rows, cols)` entries.
pub fn invariant_factors(a: &Matrix) -> Vec<RingElem> {
    smith_with(a, false, false, false).diagonal()
}

/// Rank over a field, or the number of nonzero Smith entries in general.
pub fn rank(a: &Matrix) -> usize {
    let ring = a.ring();
    invariant_factors(a)
        .iter()
        .filter(|d| !ring.is_zero(d))
        .count()
}

/// Square with unit determinant.
pub fn is_invertible(a: &Matrix) -> bool {
    a.is_square() && invariant_factors(a).iter().all(|d| a.ring().is_unit(d))
}

/// Solves `a * x = b` exactly, returning `None` when no solution exists.
pub fn solve(a: &Matrix, b: &Matrix) -> Result<Option<Matrix>> {
    if a.ring() != b.ring() {
        return Err(Error::IncompatibleRing(format!(
            "{} vs {}",
            a.ring(),
            b.ring()
        )));
    }
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "system with {} rows, right-hand side with {}",
            a.rows(),
            b.rows()
        )));
    }
    let ring = a.ring();
    let (r, c) = a.shape();
    let s = smith_with(a, true, false, true);
    let ub = s.left.as_ref().unwrap().mul(b);
    let mut y = Matrix::zeros(ring, c, b.cols());
    for j in 0..b.cols() {
        for i in 0..r {
            let val = ub.get(i, j);
            if i < c {
                match ring.div_exact(val, s.diag.get(i, i)) {
                    Some(q) => y.set(i, j, q),
                    None => return Ok(None),
                }
            } else if !ring.is_zero(val) {
                return Ok(None);
            }
        }
    }
    Ok(Some(s.right.as_ref().unwrap().mul(&y)))
}

/// Generators of `{x : a x = 0}` as columns, in canonical (Howell/Hermite/
/// reduced echelon) form. Over domains they form a basis.
pub fn kernel_basis(a: &Matrix) -> Matrix {
    let ring = a.ring();
    let (r, c) = a.shape();
    let s = smith_with(a, false, false, true);
    let v = s.right.as_ref().unwrap();
    let mut gens: Vec<Vec<RingElem>> = Vec::new();
    for i in 0..c {
        let d = if i < r {
            s.diag.get(i, i).clone()
        } else {
            ring.zero()
        };
        let factor = if ring.is_zero(&d) {
            ring.one()
        } else {
            ring.ann(&d)
        };
        if ring.is_zero(&factor) {
            continue;
        }
        gens.push(v.col(i).iter().map(|x| ring.mul(x, &factor)).collect());
    }
    let mut rows = Matrix::zeros(ring, gens.len(), c);
    for (i, g) in gens.into_iter().enumerate() {
        for (j, x) in g.into_iter().enumerate() {
            rows.set(i, j, x);
        }
    }
    howell_rows(&rows).transpose()
}
