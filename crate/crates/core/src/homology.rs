//! `Hom` and `Ext^1` between representations from the two-term complex
//!
//! ```text
//! d : (+)_i Hom_R(X_i, Y_i) -> (+)_a Hom_R(X_t(a), Y_h(a)),   f |-> (Y_a f_t(a) - f_h(a) X_a)_a
//! ```
//!
//! with `Hom = ker d` and `Ext^1 = coker d`. Coordinates on both sides are
//! ordered by vertex (resp. arrow) blocks, each block flattened column-major.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::quiver::{Rep, RepMorphism};
use crate::ring::{
    cokernel, constant_rank, invariant_factors, kernel_basis, solve, Matrix, ModulePresentation,
    RingElem, RingHom, RingSpec,
};

#[derive(Clone, Debug)]
pub struct HomExt {
    pub hom: ModulePresentation,
    /// Generators of `Hom(X, Y)`, matching the generators of `hom`.
    pub hom_generators: Vec<RepMorphism>,
    pub ext: ModulePresentation,
    /// One cocycle per cyclic summand of `ext`, as one matrix per arrow.
    pub ext_cocycles: Vec<Vec<Matrix>>,
    pub differential: Matrix,
}

/// Column offsets of the vertex blocks and the arrow blocks.
fn offsets(x: &Rep, y: &Rep) -> (Vec<usize>, Vec<usize>) {
    let mut v = vec![0];
    for i in 0..x.dims().len() {
        v.push(v[i] + y.dims()[i] * x.dims()[i]);
    }
    let mut a = vec![0];
    for (k, &(t, h)) in x.quiver().arrows().iter().enumerate() {
        a.push(a[k] + y.dims()[h] * x.dims()[t]);
    }
    (v, a)
}

/// The matrix of `d` for the pair `(X, Y)`.
pub fn differential(x: &Rep, y: &Rep) -> Result<Matrix> {
    if x.ring() != y.ring() || x.quiver() != y.quiver() {
        return Err(Error::IncompatibleBase(format!(
            "Hom between reps over {} and {} on possibly different quivers",
            x.ring(),
            y.ring()
        )));
    }
    let ring = x.ring();
    let (vo, ao) = offsets(x, y);
    let mut d = Matrix::zeros(ring, *ao.last().unwrap(), *vo.last().unwrap());
    for (a, &(t, h)) in x.quiver().arrows().iter().enumerate() {
        let (xa, ya) = (x.mat(a), y.mat(a));
        let rows = y.dims()[h];
        // Output entry (r, c) of block a sits at ao[a] + c * rows + r.
        for c in 0..x.dims()[t] {
            for r in 0..rows {
                let out = ao[a] + c * rows + r;
                // + sum_k Y_a[r, k] f_t[k, c]
                for k in 0..y.dims()[t] {
                    let col = vo[t] + c * y.dims()[t] + k;
                    let e = ring.add(d.get(out, col), ya.get(r, k));
                    d.set(out, col, e);
                }
                // - sum_k f_h[r, k] X_a[k, c]
                for k in 0..x.dims()[h] {
                    let col = vo[h] + k * rows + r;
                    let e = ring.sub(d.get(out, col), xa.get(k, c));
                    d.set(out, col, e);
                }
            }
        }
    }
    Ok(d)
}

/// Unflattens a coordinate vector of `(+)_i Hom_R(X_i, Y_i)` into vertex maps.
pub(crate) fn vertex_maps_from_vector(x: &Rep, y: &Rep, v: &[RingElem]) -> Vec<Matrix> {
    let ring = x.ring();
    let (vo, _) = offsets(x, y);
    (0..x.dims().len())
        .map(|i| {
            let (r, c) = (y.dims()[i], x.dims()[i]);
            let mut m = Matrix::zeros(ring, r, c);
            for j in 0..c {
                for k in 0..r {
                    m.set(k, j, v[vo[i] + j * r + k].clone());
                }
            }
            m
        })
        .collect()
}

/// Flattens vertex maps into a column of `(+)_i Hom_R(X_i, Y_i)`.
pub(crate) fn vector_from_vertex_maps(ring: RingSpec, maps: &[Matrix]) -> Matrix {
    let mut out = Vec::new();
    for m in maps {
        for j in 0..m.cols() {
            out.extend(m.col(j));
        }
    }
    Matrix::column(ring, out)
}

fn arrow_maps_from_vector(x: &Rep, y: &Rep, v: &[RingElem]) -> Vec<Matrix> {
    let ring = x.ring();
    let (_, ao) = offsets(x, y);
    x.quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, &(t, h))| {
            let (r, c) = (y.dims()[h], x.dims()[t]);
            let mut m = Matrix::zeros(ring, r, c);
            for j in 0..c {
                for k in 0..r {
                    m.set(k, j, v[ao[a] + j * r + k].clone());
                }
            }
            m
        })
        .collect()
}

pub fn hom_ext(x: &Rep, y: &Rep) -> Result<HomExt> {
    let d = differential(x, y)?;
    let k = kernel_basis(&d);
    let hom = cokernel(&kernel_basis(&k)).module;
    let hom_generators = (0..k.cols())
        .map(|j| {
            RepMorphism::new(
                x.clone(),
                y.clone(),
                vertex_maps_from_vector(x, y, &k.col(j)),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let c = cokernel(&d);
    let ext_cocycles = (0..c.generators.cols())
        .map(|j| arrow_maps_from_vector(x, y, &c.generators.col(j)))
        .collect();
    Ok(HomExt {
        hom,
        hom_generators,
        ext: c.module,
        ext_cocycles,
        differential: d,
    })
}

/// `Ext^1(X, Y) = 0`, decided from the invariant factors of `d` alone.
pub fn ext_vanishes(x: &Rep, y: &Rep) -> Result<bool> {
    let d = differential(x, y)?;
    let ring = d.ring();
    Ok(d.rows() <= d.cols() && invariant_factors(&d).iter().all(|f| ring.is_unit(f)))
}

pub fn is_rigid(x: &Rep) -> bool {
    ext_vanishes(x, x).expect("a rep shares its base with itself")
}

/// Rigid, with `End(X)` free of rank one on the identity.
pub fn is_exceptional(x: &Rep) -> bool {
    if !is_rigid(x) {
        return false;
    }
    let he = hom_ext(x, x).expect("a rep shares its base with itself");
    if !(he.hom.is_free() && he.hom.free_rank() == 1) {
        return false;
    }
    let id = vector_from_vertex_maps(x.ring(), RepMorphism::identity(x).maps());
    let gens = kernel_basis(&he.differential);
    matches!(solve(&id, &gens), Ok(Some(_)))
}

/// Compares `Ext^1(X, Y) (x) S` with `Ext^1(X^S, Y^S)` by invariant factors.
pub fn check_base_change(x: &Rep, y: &Rep, h: &RingHom) -> Result<bool> {
    let (xs, ys) = (x.base_change(h)?, y.base_change(h)?);
    let before = cokernel(&differential(x, y)?).module.base_change(h)?;
    let after = cokernel(&differential(&xs, &ys)?).module;
    Ok(before.is_isomorphic(&after))
}

/// Constant ranks of `Hom(X, Y)` and `Ext^1(X, Y)` for rigid lattices.
/// Failure of projectivity or of constant rank is a `TheoremViolation`.
pub fn rigid_hom_ext_ranks(x: &Rep, y: &Rep) -> Result<(usize, usize)> {
    if !is_rigid(x) || !is_rigid(y) {
        return Err(Error::NotRigid);
    }
    let he = hom_ext(x, y)?;
    let rank = |m: &ModulePresentation, what: &str| match constant_rank(m) {
        Ok(Some(r)) => Ok(r),
        Ok(None) => Err(Error::TheoremViolation(format!(
            "{what} is projective of non-constant rank"
        ))),
        Err(_) => Err(Error::TheoremViolation(format!(
            "{what} is not projective: invariants {:?}",
            m.invariant_strings()
        ))),
    };
    Ok((rank(&he.hom, "Hom")?, rank(&he.ext, "Ext")?))
}

impl HomExt {
    /// CLI report record. `rigid` and `exceptional` describe the pair as
    /// supplied by the caller.
    pub fn report(&self, rigid: bool, exceptional: bool) -> Value {
        let mut r = json!({
            "homInvariants": self.hom.invariant_strings(),
            "extInvariants": self.ext.invariant_strings(),
            "rigid": rigid,
            "exceptional": exceptional,
        });
        if let Ok(Some(n)) = constant_rank(&self.hom) {
            r["homRank"] = json!(n);
        }
        if let Ok(Some(n)) = constant_rank(&self.ext) {
            r["extRank"] = json!(n);
        }
        r
    }
}
