//! Real Schur roots, exceptional lattices over arbitrary supported rings,
//! decomposition of rigid lattices and lifting along nilpotent thickenings.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::homology::{ext_vanishes, hom_ext, is_exceptional, is_rigid, vector_from_vertex_maps};
use crate::mutation::{orbit_catalog, OrbitCatalog, OrbitStrategy};
use crate::quiver::{cokernel_rep, euler_form, DimVector, Quiver, Rep, RepMorphism};
use crate::ring::{invariant_factors, rank, solve, Matrix, RingHom, RingSpec};

/// Outcome of a real Schur root test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SchurTest {
    /// An exceptional representation of this dimension vector was found.
    Root,
    /// Rejected by the Tits form: `<a, a> != 1`.
    PrefilterFalse,
    /// The bounded orbit search ended without finding one.
    BoundedFalse,
    /// The entire braid orbit was explored without finding one.
    OrbitExhausted,
}

impl SchurTest {
    pub fn is_root(&self) -> bool {
        *self == SchurTest::Root
    }

    pub fn name(&self) -> &'static str {
        match self {
            SchurTest::Root => "Root",
            SchurTest::PrefilterFalse => "PrefilterFalse",
            SchurTest::BoundedFalse => "BoundedFalse",
            SchurTest::OrbitExhausted => "OrbitExhausted",
        }
    }
}

fn check_dims(q: &Quiver, a: &DimVector) -> Result<()> {
    if a.len() != q.vertex_count() {
        return Err(Error::DimensionMismatch(format!(
            "{} dimensions for {} vertices",
            a.len(),
            q.vertex_count()
        )));
    }
    if !q.is_acyclic() {
        return Err(Error::CyclicQuiver);
    }
    Ok(())
}

fn passes_prefilter(q: &Quiver, a: &DimVector) -> Result<bool> {
    Ok(!a.is_zero() && euler_form(q, a, a)? == 1)
}

fn search(
    q: &Quiver,
    a: &DimVector,
    ring: RingSpec,
    bound: usize,
    strategy: OrbitStrategy,
) -> Result<(Option<Rep>, OrbitCatalog)> {
    let mut cat = orbit_catalog(q, ring, bound, Some(std::slice::from_ref(a)), strategy)?;
    Ok((cat.reps.remove(a), cat))
}

pub fn is_real_schur_root(q: &Quiver, a: &DimVector, bound: usize) -> Result<SchurTest> {
    check_dims(q, a)?;
    if !passes_prefilter(q, a)? {
        return Ok(SchurTest::PrefilterFalse);
    }
    let (found, cat) = search(q, a, RingSpec::Rationals, bound, OrbitStrategy::Standard)?;
    Ok(match found {
        Some(_) => SchurTest::Root,
        None if cat.complete => SchurTest::OrbitExhausted,
        None => SchurTest::BoundedFalse,
    })
}

/// The exceptional lattice of rank vector `a` over `ring`: built over `Z` by
/// integral mutations, then base-changed.
pub fn exceptional_lattice(q: &Quiver, a: &DimVector, ring: RingSpec, bound: usize) -> Result<Rep> {
    exceptional_lattice_with(q, a, ring, bound, OrbitStrategy::Standard)
}

pub fn exceptional_lattice_with(
    q: &Quiver,
    a: &DimVector,
    ring: RingSpec,
    bound: usize,
    strategy: OrbitStrategy,
) -> Result<Rep> {
    check_dims(q, a)?;
    if !passes_prefilter(q, a)? {
        return Err(Error::NotSchurRoot);
    }
    let (found, cat) = search(q, a, RingSpec::Integers, bound, strategy)?;
    let x0 = match found {
        Some(x) => x,
        None if cat.complete => return Err(Error::NotSchurRoot),
        None => return Err(Error::BoundExceeded),
    };
    let x = x0.over(ring)?;
    if !is_exceptional(&x) {
        return Err(Error::TheoremViolation(format!(
            "base change of the exceptional Z-lattice {a} to {ring} is not exceptional"
        )));
    }
    Ok(x)
}

/// `hom` and `ext` ranks between the exceptional representations of two
/// real Schur roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenericDims {
    pub hom_rank: usize,
    pub ext_rank: usize,
}

pub fn generic_dims(q: &Quiver, a: &DimVector, b: &DimVector, bound: usize) -> Result<GenericDims> {
    let rep = |d: &DimVector| -> Result<Rep> {
        check_dims(q, d)?;
        if !passes_prefilter(q, d)? {
            return Err(Error::NotSchurRoot);
        }
        search(q, d, RingSpec::Rationals, bound, OrbitStrategy::Standard)?
            .0
            .ok_or(Error::NotSchurRoot)
    };
    let (x, y) = (rep(a)?, rep(b)?);
    let he = hom_ext(&x, &y)?;
    Ok(GenericDims {
        hom_rank: he.hom.free_rank(),
        ext_rank: he.ext.free_rank(),
    })
}

/// A rigid lattice split as `(+)_i X_i (x) R^{m_i}`.
#[derive(Clone, Debug)]
pub struct RigidDecomposition {
    /// Exceptional summands with multiplicities, in exceptional order:
    /// `Hom(X_i, X_j) = 0` for `i > j`.
    pub summands: Vec<(Rep, usize)>,
    /// Evaluation maps `X_i (x) R^{m_i} -> (current quotient)` used while
    /// peeling, last summand first.
    pub evaluation_maps: Vec<RepMorphism>,
    /// Isomorphism from `(+)_i tensor_free(X_i, m_i)` onto the input.
    pub certificate: RepMorphism,
}

impl RigidDecomposition {
    /// `(+)_i tensor_free(X_i, m_i)` in summand order.
    pub fn reassemble(&self, ring: RingSpec, q: &Quiver) -> Result<Rep> {
        self.summands
            .iter()
            .try_fold(Rep::zero(ring, q), |acc, (x, m)| {
                acc.direct_sum(&x.tensor_free(*m))
            })
    }

    /// Summands as `(dims, multiplicity)`, sorted by dims.
    pub fn multiset(&self) -> Vec<(DimVector, usize)> {
        let mut v: Vec<_> = self
            .summands
            .iter()
            .map(|(x, m)| (x.dims().clone(), *m))
            .collect();
        v.sort();
        v
    }

    pub fn report(&self) -> Value {
        json!({
            "summands": self.multiset().iter().map(|(d, m)| json!({"dims": d.to_vec(), "multiplicity": m})).collect::<Vec<_>>(),
            "ordering": self.summands.iter().map(|(x, _)| x.dims().to_vec()).collect::<Vec<_>>(),
            "verified": self.certificate.is_isomorphism(),
        })
    }
}

pub const DEFAULT_AUX_PRIME: u64 = 2;

/// Default cap on the total dimension of items explored by orbit searches.
pub const DEFAULT_BOUND: usize = 60;

pub fn decompose_rigid(x: &Rep) -> Result<RigidDecomposition> {
    decompose_rigid_with(x, DEFAULT_AUX_PRIME, DEFAULT_BOUND)
}

/// Decomposition with an explicit auxiliary prime for the field-level
/// multiset and an explicit orbit bound.
pub fn decompose_rigid_with(x: &Rep, prime: u64, bound: usize) -> Result<RigidDecomposition> {
    let ring = x.ring();
    let q = x.quiver();
    if !(ring.is_field() || ring == RingSpec::Integers) {
        return Err(Error::NotComputable(format!("decomposition over {ring}")));
    }
    if !q.is_acyclic() {
        return Err(Error::CyclicQuiver);
    }
    if !is_rigid(x) {
        return Err(Error::NotRigid);
    }
    let field = match ring {
        RingSpec::PrimeField(p) => RingSpec::PrimeField(p),
        RingSpec::IntegersMod(p) => RingSpec::PrimeField(p),
        _ => RingSpec::prime_field(prime)?,
    };
    let multiset = field_multiset(q, x.dims(), field, bound)?;
    let order = exceptional_order(&multiset)?;
    let dims: Vec<DimVector> = order.iter().map(|(r, _)| r.dims().clone()).collect();
    let lattices = orbit_catalog(
        q,
        RingSpec::Integers,
        bound,
        Some(&dims),
        OrbitStrategy::Standard,
    )?;
    let mut summands = Vec::new();
    for ((_, m), d) in order.iter().zip(&dims) {
        let x0 = lattices.reps.get(d).ok_or(Error::BoundExceeded)?;
        let xi = x0.over(ring)?;
        if !is_exceptional(&xi) {
            return Err(Error::TheoremViolation(format!(
                "summand {d} is not exceptional over {ring}"
            )));
        }
        summands.push((xi, *m));
    }
    for (i, (a, _)) in summands.iter().enumerate() {
        for (b, _) in &summands[..i] {
            if !ext_vanishes(a, b)? || !ext_vanishes(b, a)? {
                return Err(Error::TheoremViolation(format!(
                    "summands {} and {} have nonzero Ext",
                    a.dims(),
                    b.dims()
                )));
            }
        }
    }
    let mut evaluation_maps = Vec::new();
    let certificate = peel(x, &summands, &mut evaluation_maps)?;
    if !certificate.is_isomorphism() {
        return Err(Error::PeelFailure(
            "assembled certificate is not an isomorphism".into(),
        ));
    }
    Ok(RigidDecomposition {
        summands,
        evaluation_maps,
        certificate,
    })
}

/// Field-level summands `(exceptional rep, multiplicity)` of the rigid
/// representation of dimension vector `total`.
fn field_multiset(
    q: &Quiver,
    total: &DimVector,
    field: RingSpec,
    bound: usize,
) -> Result<Vec<(Rep, usize)>> {
    let candidates = tits_candidates(q, total)?;
    let cat = orbit_catalog(q, field, bound, Some(&candidates), OrbitStrategy::Standard)?;
    let roots: Vec<Rep> = candidates
        .iter()
        .filter_map(|d| cat.reps.get(d).cloned())
        .collect();
    let k = roots.len();
    let mut compatible = vec![vec![true; k]; k];
    for i in 0..k {
        for j in 0..k {
            if i != j {
                compatible[i][j] = ext_vanishes(&roots[i], &roots[j])?;
            }
        }
    }
    let mut solutions = Vec::new();
    let mut chosen = Vec::new();
    solve_multiset(
        &roots,
        &compatible,
        0,
        total.clone(),
        &mut chosen,
        &mut solutions,
    );
    match solutions.len() {
        0 if total.is_zero() => Ok(Vec::new()),
        0 if cat.complete => Err(Error::TheoremViolation(format!(
            "no decomposition of the rigid dimension vector {total}"
        ))),
        0 => Err(Error::BoundExceeded),
        1 => Ok(solutions
            .pop()
            .unwrap()
            .into_iter()
            .map(|(i, m)| (roots[i].clone(), m))
            .collect()),
        _ => Err(Error::AmbiguousDecomposition(format!(
            "{} ways to write {total} with pairwise Ext-orthogonal roots",
            solutions.len()
        ))),
    }
}

/// Backtracking over roots in index order; stops after two solutions.
fn solve_multiset(
    roots: &[Rep],
    compatible: &[Vec<bool>],
    start: usize,
    rest: DimVector,
    chosen: &mut Vec<(usize, usize)>,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    if out.len() > 1 {
        return;
    }
    if rest.is_zero() {
        if !chosen.is_empty() {
            out.push(chosen.clone());
        }
        return;
    }
    for i in start..roots.len() {
        if !chosen
            .iter()
            .all(|&(j, _)| compatible[i][j] && compatible[j][i])
        {
            continue;
        }
        let mut r = rest.clone();
        let mut m = 0;
        while let Some(next) = r.checked_sub(roots[i].dims()) {
            m += 1;
            r = next;
            chosen.push((i, m));
            solve_multiset(roots, compatible, i + 1, r.clone(), chosen, out);
            chosen.pop();
        }
    }
}

/// Topological order on "nonzero Hom goes forward", ties broken by the
/// smallest dimension vector.
fn exceptional_order(items: &[(Rep, usize)]) -> Result<Vec<(Rep, usize)>> {
    let k = items.len();
    let mut before = vec![vec![false; k]; k];
    for i in 0..k {
        for j in 0..k {
            if i != j {
                before[i][j] = !hom_ext(&items[i].0, &items[j].0)?.hom.is_zero();
            }
        }
    }
    let mut placed = vec![false; k];
    let mut out = Vec::with_capacity(k);
    while out.len() < k {
        let next = (0..k)
            .filter(|&j| !placed[j] && (0..k).all(|i| placed[i] || i == j || !before[i][j]))
            .min_by(|&a, &b| items[a].0.dims().cmp(items[b].0.dims()))
            .ok_or_else(|| Error::TheoremViolation("summands admit no exceptional order".into()))?;
        placed[next] = true;
        out.push(items[next].clone());
    }
    Ok(out)
}

/// Peels the last summand off `x` and recurses on the cokernel. Returns an
/// isomorphism `(+)_i tensor_free(X_i, m_i) -> x`.
fn peel(x: &Rep, summands: &[(Rep, usize)], maps: &mut Vec<RepMorphism>) -> Result<RepMorphism> {
    let ring = x.ring();
    let Some(((xr, m), rest)) = summands.split_last() else {
        if !x.is_zero() {
            return Err(Error::PeelFailure(format!(
                "nonzero remainder of dims {}",
                x.dims()
            )));
        }
        return Ok(RepMorphism::identity(x));
    };
    let he = hom_ext(xr, x)?;
    if !he.hom.is_free() || he.hom.free_rank() != *m || he.hom_generators.len() != *m {
        return Err(Error::PeelFailure(format!(
            "Hom from summand {} has invariants {:?}, expected free of rank {m}",
            xr.dims(),
            he.hom.invariant_strings()
        )));
    }
    let src = xr.tensor_free(*m);
    let theta_maps = (0..x.dims().len())
        .map(|v| {
            let blocks: Vec<&Matrix> = he.hom_generators.iter().map(|g| g.map(v)).collect();
            Matrix::hstack(&blocks, ring, x.dims()[v])
        })
        .collect();
    let theta = RepMorphism::new(src, x.clone(), theta_maps)?;
    if !theta.maps().iter().all(is_split_injective) {
        return Err(Error::PeelFailure(format!(
            "evaluation map of {} is not split mono",
            xr.dims()
        )));
    }
    maps.push(theta.clone());
    let (c, pi) = cokernel_rep(&theta)?;
    let phi_c = peel(&c, rest, maps)?;
    let s = section(&c, x, &pi)?;
    let lower = phi_c.then(&s)?;
    let n = x.dims().len();
    let cert_maps = (0..n)
        .map(|v| Matrix::hstack(&[lower.map(v), theta.map(v)], ring, x.dims()[v]))
        .collect();
    let domain = lower.source().direct_sum(theta.source())?;
    RepMorphism::new(domain, x.clone(), cert_maps)
}

fn is_split_injective(m: &Matrix) -> bool {
    let ring = m.ring();
    rank(m) == m.cols() && invariant_factors(m).iter().all(|d| ring.is_unit(d))
}

/// A morphism `s: C -> X` with `pi . s = id_C`.
fn section(c: &Rep, x: &Rep, pi: &RepMorphism) -> Result<RepMorphism> {
    let ring = x.ring();
    let he = hom_ext(c, x)?;
    let cols = he
        .hom_generators
        .iter()
        .map(|g| Ok(vector_from_vertex_maps(ring, g.then(pi)?.maps())))
        .collect::<Result<Vec<_>>>()?;
    let target = vector_from_vertex_maps(ring, RepMorphism::identity(c).maps());
    let a = Matrix::hstack(&cols.iter().collect::<Vec<_>>(), ring, target.rows());
    let coeffs = solve(&a, &target)?.ok_or_else(|| {
        Error::PeelFailure(format!("no section of the projection onto {}", c.dims()))
    })?;
    RepMorphism::linear_combination(c, x, &he.hom_generators, &coeffs.col(0))
}

/// Lifts a rigid representation along a ring map with nilpotent kernel
/// using the canonical-representative section.
pub fn lift_rigid(x: &Rep, h: &RingHom) -> Result<Rep> {
    if h.target() != x.ring() {
        return Err(Error::IncompatibleRing(format!(
            "rep over {} does not live over the target {} of the map",
            x.ring(),
            h.target()
        )));
    }
    if h.is_identity() {
        return Ok(x.clone());
    }
    if !(h.has_nilpotent_kernel() || h.is_isomorphism()) {
        return Err(Error::NotNilpotentKernel);
    }
    if !is_rigid(x) {
        return Err(Error::NotRigid);
    }
    let mats = x
        .mats()
        .iter()
        .map(|m| h.lift_matrix(m))
        .collect::<Result<Vec<_>>>()?;
    let lifted = Rep::new(h.source(), x.quiver().clone(), x.dims().clone(), mats)?;
    if !is_rigid(&lifted) {
        return Err(Error::TheoremViolation(format!(
            "lift of a rigid rep to {} is not rigid",
            h.source()
        )));
    }
    if lifted.base_change(h)? != *x {
        return Err(Error::TheoremViolation(
            "lift does not reduce to the input".into(),
        ));
    }
    Ok(lifted)
}

/// All nonzero `d <= total` componentwise with `<d, d> = 1`, sorted.
pub fn tits_candidates(q: &Quiver, total: &DimVector) -> Result<Vec<DimVector>> {
    let mut out = BTreeSet::new();
    let mut cur = vec![0usize; total.len()];
    loop {
        let d = DimVector::new(cur.clone());
        if passes_prefilter(q, &d)? {
            out.insert(d);
        }
        let mut i = 0;
        while i < cur.len() && cur[i] == total[i] {
            cur[i] = 0;
            i += 1;
        }
        if i == cur.len() {
            break;
        }
        cur[i] += 1;
    }
    Ok(out.into_iter().collect())
}
