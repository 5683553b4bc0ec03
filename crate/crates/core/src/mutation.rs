//! Exceptional sequences, mutations and the braid group action.
//!
//! For an exceptional pair `(X, Y)` (so `Hom(Y, X) = Ext^1(Y, X) = 0`) the
//! left mutation `L_X Y` is either the universal extension of `X (x) Ext^1(X, Y)`
//! by `Y`, or the kernel or cokernel of the universal map `X (x) Hom(X, Y) -> Y`.
//! Right mutation `R_Y X` is dual.

use std::collections::{BTreeMap, HashSet, VecDeque};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::homology::{hom_ext, is_exceptional, HomExt};
use crate::quiver::{cokernel_rep, kernel_rep, DimVector, Quiver, Rep, RepMorphism};
use crate::ring::{invariant_factors, rank, Matrix, RingSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MutationCase {
    UniversalExtension,
    KernelOfUniversalMap,
    CokernelOfUniversalMap,
    Unchanged,
}

impl MutationCase {
    pub fn name(&self) -> &'static str {
        match self {
            MutationCase::UniversalExtension => "UniversalExtension",
            MutationCase::KernelOfUniversalMap => "KernelOfUniversalMap",
            MutationCase::CokernelOfUniversalMap => "CokernelOfUniversalMap",
            MutationCase::Unchanged => "Unchanged",
        }
    }
}

#[derive(Clone, Debug)]
pub struct MutationResult {
    pub result: Rep,
    pub case: MutationCase,
    /// The two maps of the short exact sequence realising the mutation, in
    /// order; empty for `Unchanged`.
    pub witness: Vec<RepMorphism>,
}

/// Both items exceptional, with `Hom(Y, X) = Ext^1(Y, X) = 0`.
pub fn is_exceptional_pair(x: &Rep, y: &Rep) -> bool {
    if x.ring() != y.ring() || x.quiver() != y.quiver() {
        return false;
    }
    orthogonal(y, x) && is_exceptional(x) && is_exceptional(y)
}

/// `Hom(X, Y) = Ext^1(X, Y) = 0`.
fn orthogonal(x: &Rep, y: &Rep) -> bool {
    let d = crate::homology::differential(x, y).expect("same base");
    let ring = d.ring();
    d.is_square() && invariant_factors(&d).iter().all(|f| ring.is_unit(f))
}

fn check_mutation_ring(ring: RingSpec) -> Result<()> {
    if ring.is_field() || ring == RingSpec::Integers {
        Ok(())
    } else {
        Err(Error::NotComputable(format!(
            "mutation over {ring}; construct over Z and base-change instead"
        )))
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

/// Splits `Hom(X, Y)` and `Ext^1(X, Y)` into the three mutation regimes and
/// checks the freeness the construction relies on.
fn free_rank(he: &HomExt) -> Result<(usize, usize)> {
    if !he.hom.is_free() || !he.ext.is_free() {
        return Err(Error::TheoremViolation(format!(
            "Hom {:?} or Ext {:?} of an exceptional pair is not free",
            he.hom.invariant_strings(),
            he.ext.invariant_strings()
        )));
    }
    let (h, e) = (he.hom.free_rank(), he.ext.free_rank());
    if h > 0 && e > 0 {
        return Err(Error::TheoremViolation(format!(
            "exceptional pair with Hom rank {h} and Ext rank {e}"
        )));
    }
    Ok((h, e))
}

fn mutate(x: &Rep, y: &Rep, side: Side, check: bool) -> Result<MutationResult> {
    check_mutation_ring(x.ring())?;
    if check && !is_exceptional_pair(x, y) {
        return Err(Error::PreconditionViolated(
            "not an exceptional pair".into(),
        ));
    }
    let he = hom_ext(x, y)?;
    let (h, e) = free_rank(&he)?;
    let out = if h == 0 && e == 0 {
        MutationResult {
            result: if side == Side::Left {
                y.clone()
            } else {
                x.clone()
            },
            case: MutationCase::Unchanged,
            witness: Vec::new(),
        }
    } else if h == 0 {
        universal_extension(x, y, &he.ext_cocycles, side)?
    } else {
        universal_map(x, y, &he.hom_generators, side)?
    };
    if check {
        let pair_ok = match side {
            Side::Left => is_exceptional_pair(&out.result, x),
            Side::Right => is_exceptional_pair(y, &out.result),
        };
        if !pair_ok {
            return Err(Error::TheoremViolation(format!(
                "{} mutation produced a non-exceptional pair",
                if side == Side::Left { "left" } else { "right" }
            )));
        }
    }
    Ok(out)
}

/// `L_X Y`, with `(L_X Y, X)` checked to be an exceptional pair.
pub fn left_mutate(x: &Rep, y: &Rep) -> Result<MutationResult> {
    mutate(x, y, Side::Left, true)
}

/// `R_Y X`, with `(Y, R_Y X)` checked to be an exceptional pair.
pub fn right_mutate(x: &Rep, y: &Rep) -> Result<MutationResult> {
    mutate(x, y, Side::Right, true)
}

/// Left: `0 -> Y -> L -> X^e -> 0` with arrow blocks `[[Y_a, C_a], [0, X_a^e]]`,
/// `C_a` the cocycles side by side.
/// Right: `0 -> Y^e -> R -> X -> 0` with arrow blocks `[[Y_a^e, C_a], [0, X_a]]`,
/// `C_a` the cocycles stacked.
fn universal_extension(
    x: &Rep,
    y: &Rep,
    cocycles: &[Vec<Matrix>],
    side: Side,
) -> Result<MutationResult> {
    let ring = x.ring();
    let q = x.quiver();
    let e = cocycles.len();
    let (top, bottom) = match side {
        Side::Left => (y.clone(), x.tensor_free(e)),
        Side::Right => (y.tensor_free(e), x.clone()),
    };
    let mats = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, &(t, h))| {
            let blocks: Vec<&Matrix> = cocycles.iter().map(|c| &c[a]).collect();
            let c = match side {
                Side::Left => Matrix::hstack(&blocks, ring, y.dims()[h]),
                Side::Right => Matrix::vstack(&blocks, ring, x.dims()[t]),
            };
            let mut m = Matrix::block_diag(&[top.mat(a), bottom.mat(a)], ring);
            m.put(0, top.dims()[t], &c);
            m
        })
        .collect();
    let dims = top.dims().add(bottom.dims());
    let mid = Rep::new(ring, q.clone(), dims, mats)?;
    let (_, [incl, _, _, proj]) = top.direct_sum_with_maps(&bottom)?;
    // The split maps of the direct sum remain morphisms for the extension.
    let incl = RepMorphism::new(top.clone(), mid.clone(), incl.maps().to_vec())?;
    let proj = RepMorphism::new(mid.clone(), bottom.clone(), proj.maps().to_vec())?;
    Ok(MutationResult {
        result: mid,
        case: MutationCase::UniversalExtension,
        witness: vec![incl, proj],
    })
}

/// Left: `f = (f_1 .. f_h) : X^h -> Y`. Right: `g = (f_1; ..; f_h) : X -> Y^h`.
fn universal_map(x: &Rep, y: &Rep, gens: &[RepMorphism], side: Side) -> Result<MutationResult> {
    let ring = x.ring();
    let h = gens.len();
    let n = x.quiver().vertex_count();
    let (src, tgt) = match side {
        Side::Left => (x.tensor_free(h), y.clone()),
        Side::Right => (x.clone(), y.tensor_free(h)),
    };
    let maps: Vec<Matrix> = (0..n)
        .map(|v| {
            let blocks: Vec<&Matrix> = gens.iter().map(|g| g.map(v)).collect();
            match side {
                Side::Left => Matrix::hstack(&blocks, ring, y.dims()[v]),
                Side::Right => Matrix::vstack(&blocks, ring, x.dims()[v]),
            }
        })
        .collect();
    let f = RepMorphism::new(src, tgt, maps)?;
    let epi = f.maps().iter().all(is_surjective);
    let mono = f.maps().iter().all(|m| rank(m) == m.cols());
    if epi {
        let (k, incl) = kernel_rep(&f)?;
        Ok(MutationResult {
            result: k,
            case: MutationCase::KernelOfUniversalMap,
            witness: vec![incl, f],
        })
    } else if mono {
        let (c, proj) = cokernel_rep(&f)?;
        Ok(MutationResult {
            result: c,
            case: MutationCase::CokernelOfUniversalMap,
            witness: vec![f, proj],
        })
    } else {
        Err(Error::NeitherMonoNorEpi)
    }
}

fn is_surjective(m: &Matrix) -> bool {
    let ring = m.ring();
    m.rows() <= m.cols()
        && invariant_factors(m)
            .iter()
            .take(m.rows())
            .all(|d| ring.is_unit(d))
}

/// An ordered list of exceptional reps with `Hom` and `Ext^1` vanishing from
/// later items to earlier ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExcSequence {
    items: Vec<Rep>,
}

impl ExcSequence {
    pub fn new(items: Vec<Rep>) -> Result<Self> {
        let seq = ExcSequence { items };
        seq.validate()?;
        Ok(seq)
    }

    fn validate(&self) -> Result<()> {
        let items = &self.items;
        if let Some(first) = items.first() {
            if items
                .iter()
                .any(|x| x.ring() != first.ring() || x.quiver() != first.quiver())
            {
                return Err(Error::IncompatibleBase(
                    "sequence items over different bases".into(),
                ));
            }
        }
        for (i, x) in items.iter().enumerate() {
            if !is_exceptional(x) {
                return Err(Error::PreconditionViolated(format!(
                    "item {} is not exceptional",
                    i + 1
                )));
            }
            for (j, y) in items[..i].iter().enumerate() {
                if !orthogonal(x, y) {
                    return Err(Error::PreconditionViolated(format!(
                        "Hom or Ext from item {} to item {} is nonzero",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn items(&self) -> &[Rep] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn dims(&self) -> Vec<DimVector> {
        self.items.iter().map(|x| x.dims().clone()).collect()
    }
}

/// The simples in the lexicographically smallest topological order.
pub fn standard_sequence(q: &Quiver, ring: RingSpec) -> Result<ExcSequence> {
    let order = q.topological_order().ok_or(Error::CyclicQuiver)?;
    ExcSequence::new(order.into_iter().map(|v| Rep::simple(ring, q, v)).collect())
}

/// `sigma_i` (or its inverse) on a sequence, `i` 1-indexed:
/// `sigma_i` sends `(X_i, X_{i+1})` to `(L_{X_i} X_{i+1}, X_i)` and
/// `sigma_i^{-1}` sends it to `(X_{i+1}, R_{X_{i+1}} X_i)`.
pub fn braid_act(seq: &ExcSequence, i: usize, inverse: bool) -> Result<ExcSequence> {
    let out = braid_step(seq, i, inverse, true)?;
    out.validate()?;
    Ok(out)
}

fn braid_step(seq: &ExcSequence, i: usize, inverse: bool, check: bool) -> Result<ExcSequence> {
    if i == 0 || i >= seq.len() {
        return Err(Error::PreconditionViolated(format!(
            "braid generator {i} on a sequence of length {}",
            seq.len()
        )));
    }
    let (x, y) = (&seq.items[i - 1], &seq.items[i]);
    let mut items = seq.items.clone();
    if inverse {
        let r = mutate(x, y, Side::Right, check)?.result;
        items[i - 1] = y.clone();
        items[i] = r;
    } else {
        let l = mutate(x, y, Side::Left, check)?.result;
        items[i - 1] = l;
        items[i] = x.clone();
    }
    Ok(ExcSequence { items })
}

/// A braid word letter: `(i, inverse)` with `i` 1-indexed.
pub type BraidLetter = (usize, bool);

pub fn format_letter(&(i, inv): &BraidLetter) -> String {
    if inv {
        format!("s{i}-1")
    } else {
        format!("s{i}")
    }
}

/// Parses `s1`, `s2-1`, ...
pub fn parse_letter(s: &str) -> Result<BraidLetter> {
    let body = s
        .trim()
        .strip_prefix('s')
        .ok_or_else(|| Error::Parse(format!("bad braid letter {s:?}")))?;
    let (num, inv) = match body.strip_suffix("-1") {
        Some(n) => (n, true),
        None => (body, false),
    };
    let i = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad braid letter {s:?}")))?;
    Ok((i, inv))
}

/// Applies a word left to right, recording the dims after every letter.
pub fn braid_trace(seq: &ExcSequence, word: &[BraidLetter]) -> Result<(ExcSequence, Value)> {
    let mut cur = seq.clone();
    let mut trace = Vec::new();
    for l in word {
        cur = braid_act(&cur, l.0, l.1)?;
        trace.push(json!({
            "generator": format_letter(l),
            "dims": cur.dims().iter().map(|d| d.to_vec()).collect::<Vec<_>>(),
        }));
    }
    Ok((cur, Value::Array(trace)))
}

/// Breadth-first exploration order of the generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitStrategy {
    /// Start at the standard sequence; try `s1, s1^-1, s2, ...`.
    Standard,
    /// Start at the standard sequence moved by `s1 s2 ... s_{n-1}`; try the
    /// generators in reverse order. Reaches items along different paths.
    Alternate,
}

/// Exceptional items met in a bounded braid orbit.
#[derive(Clone, Debug, Default)]
pub struct OrbitCatalog {
    /// First representative found for each dimension vector.
    pub reps: BTreeMap<DimVector, Rep>,
    /// The whole orbit was explored: no sequence was cut off by the bound
    /// and the search did not stop early.
    pub complete: bool,
}

/// Explores the braid orbit of the standard sequence breadth-first.
/// Sequences containing an item of total dimension above `bound` are not
/// explored. Stops early once every dimension vector in `targets` is seen.
pub fn orbit_catalog(
    q: &Quiver,
    ring: RingSpec,
    bound: usize,
    targets: Option<&[DimVector]>,
    strategy: OrbitStrategy,
) -> Result<OrbitCatalog> {
    check_mutation_ring(ring)?;
    let mut start = standard_sequence(q, ring)?;
    let n = start.len();
    if strategy == OrbitStrategy::Alternate {
        for i in 1..n {
            start = braid_step(&start, i, false, false)?;
        }
    }
    let mut gens: Vec<BraidLetter> = (1..n).flat_map(|i| [(i, false), (i, true)]).collect();
    if strategy == OrbitStrategy::Alternate {
        gens.reverse();
    }
    let mut cat = OrbitCatalog {
        reps: BTreeMap::new(),
        complete: true,
    };
    let fits = |s: &ExcSequence| s.items.iter().all(|x| x.dims().total() <= bound);
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    if fits(&start) {
        seen.insert(start.dims());
        queue.push_back(start);
    } else {
        cat.complete = false;
    }
    while let Some(s) = queue.pop_front() {
        for x in &s.items {
            cat.reps
                .entry(x.dims().clone())
                .or_insert_with(|| x.clone());
        }
        if targets.is_some_and(|t| t.iter().all(|d| cat.reps.contains_key(d))) {
            cat.complete = false;
            break;
        }
        for &(i, inv) in &gens {
            let next = braid_step(&s, i, inv, false)?;
            if !fits(&next) {
                cat.complete = false;
            } else if seen.insert(next.dims()) {
                queue.push_back(next);
            }
        }
    }
    Ok(cat)
}

/// An exceptional rep of dimension vector `target` from the bounded braid
/// orbit of the standard sequence, if one appears.
pub fn orbit_search(
    q: &Quiver,
    target: &DimVector,
    bound: usize,
    ring: RingSpec,
) -> Result<Option<Rep>> {
    orbit_search_with(q, target, bound, ring, OrbitStrategy::Standard)
}

pub fn orbit_search_with(
    q: &Quiver,
    target: &DimVector,
    bound: usize,
    ring: RingSpec,
    strategy: OrbitStrategy,
) -> Result<Option<Rep>> {
    if target.len() != q.vertex_count() {
        return Err(Error::DimensionMismatch(format!(
            "{} dimensions for {} vertices",
            target.len(),
            q.vertex_count()
        )));
    }
    let mut cat = orbit_catalog(q, ring, bound, Some(std::slice::from_ref(target)), strategy)?;
    Ok(cat.reps.remove(target))
}
