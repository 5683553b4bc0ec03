//! Quivers, dimension vectors, pointwise free representations and their
//! morphisms.
//!
//! Arrow matrices act on column vectors: the matrix of an arrow `a` has
//! `dims[h(a)]` rows and `dims[t(a)]` columns. Vertices and arrows are
//! 0-indexed in the API and 1-indexed in JSON.

use std::fmt;
use std::ops::Deref;

use num_bigint::BigInt;
use rand::Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::homology::hom_ext;
use crate::ring::{
    cokernel, is_invertible, kernel_basis, solve, Matrix, RingElem, RingHom, RingSpec,
};
use crate::structure::decompose_rigid;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<(usize, usize)>,
}

impl Quiver {
    /// Arrows are `(tail, head)` pairs of 0-indexed vertices.
    pub fn new(vertex_count: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&(t, h)) = arrows
            .iter()
            .find(|&&(t, h)| t >= vertex_count || h >= vertex_count)
        {
            return Err(Error::InvalidRep(format!(
                "arrow ({t}, {h}) outside {vertex_count} vertices"
            )));
        }
        Ok(Quiver {
            vertex_count,
            arrows,
        })
    }

    /// Linear orientation `1 -> 2 -> ... -> n`.
    pub fn linear(n: usize) -> Self {
        Quiver {
            vertex_count: n,
            arrows: (1..n).map(|i| (i - 1, i)).collect(),
        }
    }

    /// Two parallel arrows `1 -> 2`.
    pub fn kronecker() -> Self {
        Self::multiple_arrows(2)
    }

    /// `k` parallel arrows `1 -> 2`.
    pub fn multiple_arrows(k: usize) -> Self {
        Quiver {
            vertex_count: 2,
            arrows: vec![(0, 1); k],
        }
    }

    /// One vertex with one loop.
    pub fn one_loop() -> Self {
        Quiver {
            vertex_count: 1,
            arrows: vec![(0, 0)],
        }
    }

    pub fn discrete(n: usize) -> Self {
        Quiver {
            vertex_count: n,
            arrows: Vec::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    /// Lexicographically smallest topological order (tails before heads), or
    /// `None` if the quiver has an oriented cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.vertex_count;
        let mut indeg = vec![0usize; n];
        for &(_, h) in &self.arrows {
            indeg[h] += 1;
        }
        let mut order = Vec::with_capacity(n);
        let mut done = vec![false; n];
        while order.len() < n {
            let v = (0..n).find(|&v| !done[v] && indeg[v] == 0)?;
            done[v] = true;
            order.push(v);
            for &(t, h) in &self.arrows {
                if t == v {
                    indeg[h] -= 1;
                }
            }
        }
        Some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "vertices": self.vertex_count,
            "arrows": self.arrows.iter().map(|&(t, h)| json!([t + 1, h + 1])).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let n = v["vertices"]
            .as_u64()
            .ok_or_else(|| Error::Parse("quiver needs integer \"vertices\"".into()))?
            as usize;
        let arrows = match v.get("arrows") {
            None => Vec::new(),
            Some(a) => a
                .as_array()
                .ok_or_else(|| Error::Parse("\"arrows\" must be an array".into()))?
                .iter()
                .map(|p| {
                    let pair = p.as_array().filter(|p| p.len() == 2);
                    let idx = |i: usize| pair.and_then(|p| p[i].as_u64()).filter(|&x| x >= 1);
                    match (idx(0), idx(1)) {
                        (Some(t), Some(h)) => Ok((t as usize - 1, h as usize - 1)),
                        _ => Err(Error::Parse(format!("bad arrow {p}"))),
                    }
                })
                .collect::<Result<Vec<_>>>()?,
        };
        Quiver::new(n, arrows).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Nonnegative integer vector indexed by the vertices of a quiver.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DimVector(Vec<usize>);

impl DimVector {
    pub fn new(v: Vec<usize>) -> Self {
        DimVector(v)
    }

    pub fn zero(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        DimVector(v)
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: usize) -> DimVector {
        DimVector(self.0.iter().map(|a| a * k).collect())
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &DimVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn checked_sub(&self, other: &DimVector) -> Option<DimVector> {
        if !other.le(self) {
            return None;
        }
        Some(DimVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    /// Parses `"1,2,3"`.
    pub fn parse_csv(s: &str) -> Result<Self> {
        s.split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad dimension {p:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(DimVector)
    }
}

impl Deref for DimVector {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl From<Vec<usize>> for DimVector {
    fn from(v: Vec<usize>) -> Self {
        DimVector(v)
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `sum_i a_i b_i - sum_a a_{t(a)} b_{h(a)}`.
pub fn euler_form(q: &Quiver, a: &[usize], b: &[usize]) -> Result<i64> {
    let n = q.vertex_count();
    if a.len() != n || b.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "dimension vectors of length {} and {} on {n} vertices",
            a.len(),
            b.len()
        )));
    }
    let diag: i64 = (0..n).map(|i| (a[i] * b[i]) as i64).sum();
    let off: i64 = q.arrows().iter().map(|&(t, h)| (a[t] * b[h]) as i64).sum();
    Ok(diag - off)
}

/// A representation by free modules: `R^{dims[i]}` at vertex `i` and one
/// matrix per arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rep {
    ring: RingSpec,
    quiver: Quiver,
    dims: DimVector,
    mats: Vec<Matrix>,
}

impl Rep {
    pub fn new(ring: RingSpec, quiver: Quiver, dims: DimVector, mats: Vec<Matrix>) -> Result<Self> {
        if dims.len() != quiver.vertex_count() {
            return Err(Error::InvalidRep(format!(
                "{} dimensions for {} vertices",
                dims.len(),
                quiver.vertex_count()
            )));
        }
        if mats.len() != quiver.arrow_count() {
            return Err(Error::InvalidRep(format!(
                "{} matrices for {} arrows",
                mats.len(),
                quiver.arrow_count()
            )));
        }
        for (k, (m, &(t, h))) in mats.iter().zip(quiver.arrows()).enumerate() {
            if m.ring() != ring {
                return Err(Error::InvalidRep(format!(
                    "arrow {} matrix over {}, rep over {ring}",
                    k + 1,
                    m.ring()
                )));
            }
            if m.shape() != (dims[h], dims[t]) {
                return Err(Error::InvalidRep(format!(
                    "arrow {} matrix is {}x{}, expected {}x{}",
                    k + 1,
                    m.rows(),
                    m.cols(),
                    dims[h],
                    dims[t]
                )));
            }
        }
        Ok(Rep {
            ring,
            quiver,
            dims,
            mats,
        })
    }

    /// Integer entries, one row-major slice per arrow.
    pub fn from_i64(
        ring: RingSpec,
        quiver: Quiver,
        dims: &[usize],
        mats: &[&[i64]],
    ) -> Result<Self> {
        if mats.len() != quiver.arrow_count() {
            return Err(Error::InvalidRep(format!(
                "{} matrices for {} arrows",
                mats.len(),
                quiver.arrow_count()
            )));
        }
        let ms = quiver
            .arrows()
            .iter()
            .zip(mats)
            .map(|(&(t, h), e)| {
                if e.len() != dims[h] * dims[t] {
                    return Err(Error::InvalidRep(format!(
                        "{} entries for a {}x{} matrix",
                        e.len(),
                        dims[h],
                        dims[t]
                    )));
                }
                Ok(Matrix::from_i64(ring, dims[h], dims[t], e))
            })
            .collect::<Result<Vec<_>>>()?;
        Rep::new(ring, quiver, DimVector::new(dims.to_vec()), ms)
    }

    pub fn zero(ring: RingSpec, quiver: &Quiver) -> Self {
        Self::with_zero_maps(ring, quiver, DimVector::zero(quiver.vertex_count()))
    }

    /// All arrow matrices zero.
    pub fn with_zero_maps(ring: RingSpec, quiver: &Quiver, dims: DimVector) -> Self {
        let mats = quiver
            .arrows()
            .iter()
            .map(|&(t, h)| Matrix::zeros(ring, dims[h], dims[t]))
            .collect();
        Rep {
            ring,
            quiver: quiver.clone(),
            dims,
            mats,
        }
    }

    pub fn simple(ring: RingSpec, quiver: &Quiver, i: usize) -> Self {
        Self::with_zero_maps(ring, quiver, DimVector::unit(quiver.vertex_count(), i))
    }

    /// The projective `RQe_i`: basis of paths starting at `i`.
    pub fn projective(ring: RingSpec, quiver: &Quiver, i: usize) -> Result<Self> {
        if !quiver.is_acyclic() {
            return Err(Error::CyclicQuiver);
        }
        // paths[v] lists the paths i -> v, each as its sequence of arrows.
        let n = quiver.vertex_count();
        let mut paths: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n];
        let mut stack = vec![(i, Vec::new())];
        while let Some((v, p)) = stack.pop() {
            for (a, &(t, h)) in quiver.arrows().iter().enumerate() {
                if t == v {
                    let mut q = p.clone();
                    q.push(a);
                    stack.push((h, q));
                }
            }
            paths[v].push(p);
        }
        for ps in &mut paths {
            ps.sort();
        }
        let dims = DimVector::new(paths.iter().map(Vec::len).collect());
        let mats = quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(t, h))| {
                let mut m = Matrix::zeros(ring, dims[h], dims[t]);
                for (c, p) in paths[t].iter().enumerate() {
                    let mut q = p.clone();
                    q.push(a);
                    let r = paths[h]
                        .iter()
                        .position(|x| *x == q)
                        .expect("extended path is listed");
                    m.set(r, c, ring.one());
                }
                m
            })
            .collect();
        Rep::new(ring, quiver.clone(), dims, mats)
    }

    /// Entries drawn uniformly from `[-bound, bound]` and mapped into the ring.
    pub fn random<G: Rng + ?Sized>(
        ring: RingSpec,
        quiver: &Quiver,
        dims: &[usize],
        bound: i64,
        rng: &mut G,
    ) -> Self {
        let mats = quiver
            .arrows()
            .iter()
            .map(|&(t, h)| {
                let e: Vec<i64> = (0..dims[h] * dims[t])
                    .map(|_| rng.gen_range(-bound..=bound))
                    .collect();
                Matrix::from_i64(ring, dims[h], dims[t], &e)
            })
            .collect();
        Rep {
            ring,
            quiver: quiver.clone(),
            dims: DimVector::new(dims.to_vec()),
            mats,
        }
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn dims(&self) -> &DimVector {
        &self.dims
    }

    pub fn mats(&self) -> &[Matrix] {
        &self.mats
    }

    pub fn mat(&self, a: usize) -> &Matrix {
        &self.mats[a]
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_zero()
    }

    fn check_same_base(&self, other: &Rep) -> Result<()> {
        if self.ring != other.ring || self.quiver != other.quiver {
            return Err(Error::IncompatibleBase(format!(
                "reps over {} and {} do not share ring and quiver",
                self.ring, other.ring
            )));
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &Rep) -> Result<Rep> {
        self.check_same_base(other)?;
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| Matrix::block_diag(&[a, b], self.ring))
            .collect();
        Ok(Rep {
            ring: self.ring,
            quiver: self.quiver.clone(),
            dims: self.dims.add(&other.dims),
            mats,
        })
    }

    /// `X (+) Y` with the canonical injections and projections
    /// `(i_X, i_Y, p_X, p_Y)`.
    pub fn direct_sum_with_maps(&self, other: &Rep) -> Result<(Rep, [RepMorphism; 4])> {
        let s = self.direct_sum(other)?;
        let ring = self.ring;
        let n = self.quiver.vertex_count();
        let (mut ix, mut iy, mut px, mut py) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        for v in 0..n {
            let (x, y) = (self.dims[v], other.dims[v]);
            let idx = Matrix::identity(ring, x);
            let idy = Matrix::identity(ring, y);
            ix.push(Matrix::vstack(&[&idx, &Matrix::zeros(ring, y, x)], ring, x));
            iy.push(Matrix::vstack(&[&Matrix::zeros(ring, x, y), &idy], ring, y));
            px.push(Matrix::hstack(&[&idx, &Matrix::zeros(ring, x, y)], ring, x));
            py.push(Matrix::hstack(&[&Matrix::zeros(ring, y, x), &idy], ring, y));
        }
        let maps = [
            RepMorphism::new(self.clone(), s.clone(), ix)?,
            RepMorphism::new(other.clone(), s.clone(), iy)?,
            RepMorphism::new(s.clone(), self.clone(), px)?,
            RepMorphism::new(s.clone(), other.clone(), py)?,
        ];
        Ok((s, maps))
    }

    /// `X (x)_R R^k`.
    pub fn tensor_free(&self, k: usize) -> Rep {
        Rep {
            ring: self.ring,
            quiver: self.quiver.clone(),
            dims: self.dims.scale(k),
            mats: self.mats.iter().map(|m| m.repeat_diag(k)).collect(),
        }
    }

    pub fn base_change(&self, h: &RingHom) -> Result<Rep> {
        if h.source() != self.ring {
            return Err(Error::IncompatibleRing(format!(
                "rep over {} cannot be base-changed along a map from {}",
                self.ring,
                h.source()
            )));
        }
        let mats = self
            .mats
            .iter()
            .map(|m| h.apply_matrix(m))
            .collect::<Result<Vec<_>>>()?;
        Ok(Rep {
            ring: h.target(),
            quiver: self.quiver.clone(),
            dims: self.dims.clone(),
            mats,
        })
    }

    /// Base change along the canonical map to `target`.
    pub fn over(&self, target: RingSpec) -> Result<Rep> {
        self.base_change(&RingHom::new(self.ring, target)?)
    }

    /// The isomorphic rep obtained by the vertexwise basis changes `g`:
    /// arrow matrices become `g_h X_a g_t^{-1}`. Returns it with the
    /// isomorphism `X -> g X`.
    pub fn transport(&self, g: &[Matrix]) -> Result<(Rep, RepMorphism)> {
        let n = self.quiver.vertex_count();
        if g.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} basis changes for {n} vertices",
                g.len()
            )));
        }
        let mut inv = Vec::with_capacity(n);
        for (v, gv) in g.iter().enumerate() {
            let d = self.dims[v];
            if gv.shape() != (d, d) || gv.ring() != self.ring {
                return Err(Error::DimensionMismatch(format!(
                    "basis change at vertex {} has wrong shape",
                    v + 1
                )));
            }
            let i = solve(gv, &Matrix::identity(self.ring, d))?
                .filter(|_| is_invertible(gv))
                .ok_or_else(|| {
                    Error::PreconditionViolated(format!(
                        "basis change at vertex {} is not invertible",
                        v + 1
                    ))
                })?;
            inv.push(i);
        }
        let mats = self
            .quiver
            .arrows()
            .iter()
            .zip(&self.mats)
            .map(|(&(t, h), m)| g[h].mul(m).mul(&inv[t]))
            .collect();
        let y = Rep {
            ring: self.ring,
            quiver: self.quiver.clone(),
            dims: self.dims.clone(),
            mats,
        };
        let iso = RepMorphism::new(self.clone(), y.clone(), g.to_vec())?;
        Ok((y, iso))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ring": self.ring.to_string(),
            "quiver": self.quiver.to_json(),
            "dims": self.dims.to_vec(),
            "mats": self.mats.iter().map(Matrix::to_json).collect::<Vec<_>>(),
        })
    }

    /// Parses the rep format; `ring_override` replaces the `"ring"` field.
    pub fn from_json(v: &Value, ring_override: Option<RingSpec>) -> Result<Self> {
        let ring = match ring_override {
            Some(r) => r,
            None => v["ring"]
                .as_str()
                .ok_or_else(|| Error::Parse("rep needs a \"ring\" string".into()))?
                .parse()?,
        };
        let quiver = Quiver::from_json(&v["quiver"])?;
        let dims: Vec<usize> = v["dims"]
            .as_array()
            .ok_or_else(|| Error::Parse("rep needs a \"dims\" array".into()))?
            .iter()
            .map(|d| {
                d.as_u64()
                    .map(|d| d as usize)
                    .ok_or_else(|| Error::Parse(format!("bad dimension {d}")))
            })
            .collect::<Result<_>>()?;
        if dims.len() != quiver.vertex_count() {
            return Err(Error::Parse(format!(
                "{} dims for {} vertices",
                dims.len(),
                quiver.vertex_count()
            )));
        }
        let empty = Vec::new();
        let raw = match v.get("mats") {
            None => &empty,
            Some(m) => m
                .as_array()
                .ok_or_else(|| Error::Parse("\"mats\" must be an array".into()))?,
        };
        if raw.len() != quiver.arrow_count() {
            return Err(Error::Parse(format!(
                "{} matrices for {} arrows",
                raw.len(),
                quiver.arrow_count()
            )));
        }
        let mats = quiver
            .arrows()
            .iter()
            .zip(raw)
            .map(|(&(t, h), m)| Matrix::from_json(ring, dims[h], dims[t], m))
            .collect::<Result<Vec<_>>>()?;
        Rep::new(ring, quiver, DimVector::new(dims), mats).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl fmt::Display for Rep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rep over {} with dims {}", self.ring, self.dims)?;
        for (k, (m, &(t, h))) in self.mats.iter().zip(self.quiver.arrows()).enumerate() {
            write!(f, "\n  arrow {} ({} -> {}): {m}", k + 1, t + 1, h + 1)?;
        }
        Ok(())
    }
}

/// A morphism of representations, one matrix per vertex, validated on
/// construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMorphism {
    source: Rep,
    target: Rep,
    maps: Vec<Matrix>,
}

impl RepMorphism {
    pub fn new(source: Rep, target: Rep, maps: Vec<Matrix>) -> Result<Self> {
        source.check_same_base(&target)?;
        let n = source.quiver.vertex_count();
        if maps.len() != n {
            return Err(Error::NotMorphism(format!(
                "{} vertex maps for {n} vertices",
                maps.len()
            )));
        }
        for (v, m) in maps.iter().enumerate() {
            if m.ring() != source.ring || m.shape() != (target.dims[v], source.dims[v]) {
                return Err(Error::NotMorphism(format!(
                    "vertex {} map has the wrong shape or ring",
                    v + 1
                )));
            }
        }
        for (a, &(t, h)) in source.quiver.arrows().iter().enumerate() {
            if maps[h].mul(&source.mats[a]) != target.mats[a].mul(&maps[t]) {
                return Err(Error::NotMorphism(format!(
                    "square at arrow {} does not commute",
                    a + 1
                )));
            }
        }
        Ok(RepMorphism {
            source,
            target,
            maps,
        })
    }

    pub fn identity(x: &Rep) -> Self {
        let maps = x
            .dims
            .iter()
            .map(|&d| Matrix::identity(x.ring, d))
            .collect();
        RepMorphism {
            source: x.clone(),
            target: x.clone(),
            maps,
        }
    }

    pub fn zero(x: &Rep, y: &Rep) -> Result<Self> {
        x.check_same_base(y)?;
        let maps = x
            .dims
            .iter()
            .zip(y.dims.iter())
            .map(|(&s, &t)| Matrix::zeros(x.ring, t, s))
            .collect();
        Ok(RepMorphism {
            source: x.clone(),
            target: y.clone(),
            maps,
        })
    }

    /// `sum_k c_k f_k` for morphisms sharing source and target.
    pub fn linear_combination(
        source: &Rep,
        target: &Rep,
        gens: &[RepMorphism],
        coeffs: &[RingElem],
    ) -> Result<Self> {
        let mut out = RepMorphism::zero(source, target)?;
        for (g, c) in gens.iter().zip(coeffs) {
            if g.source != *source || g.target != *target {
                return Err(Error::IncompatibleBase(
                    "combining morphisms between different reps".into(),
                ));
            }
            for (o, m) in out.maps.iter_mut().zip(&g.maps) {
                *o = o.add(&m.scale(c));
            }
        }
        Ok(out)
    }

    pub fn source(&self) -> &Rep {
        &self.source
    }

    pub fn target(&self) -> &Rep {
        &self.target
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn map(&self, v: usize) -> &Matrix {
        &self.maps[v]
    }

    /// `next . self`.
    pub fn then(&self, next: &RepMorphism) -> Result<RepMorphism> {
        if self.target != next.source {
            return Err(Error::NotMorphism(
                "composing morphisms that do not meet".into(),
            ));
        }
        Ok(RepMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            maps: self
                .maps
                .iter()
                .zip(&next.maps)
                .map(|(f, g)| g.mul(f))
                .collect(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Matrix::is_zero)
    }

    /// Every vertex map is an invertible square matrix.
    pub fn is_isomorphism(&self) -> bool {
        self.maps.iter().all(is_invertible)
    }

    /// The inverse of an isomorphism.
    pub fn inverse(&self) -> Result<RepMorphism> {
        let ring = self.source.ring;
        let maps = self
            .maps
            .iter()
            .map(|m| {
                solve(m, &Matrix::identity(ring, m.rows()))?
                    .filter(|_| is_invertible(m))
                    .ok_or_else(|| Error::PreconditionViolated("morphism is not invertible".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        RepMorphism::new(self.target.clone(), self.source.clone(), maps)
    }

    pub fn base_change(&self, h: &RingHom) -> Result<RepMorphism> {
        let maps = self
            .maps
            .iter()
            .map(|m| h.apply_matrix(m))
            .collect::<Result<Vec<_>>>()?;
        RepMorphism::new(
            self.source.base_change(h)?,
            self.target.base_change(h)?,
            maps,
        )
    }
}

fn kernels_are_free(ring: RingSpec) -> bool {
    ring.is_field() || ring == RingSpec::Integers
}

/// The kernel of `f` with its inclusion into the source.
pub fn kernel_rep(f: &RepMorphism) -> Result<(Rep, RepMorphism)> {
    let x = &f.source;
    let ring = x.ring;
    if !kernels_are_free(ring) {
        return Err(Error::NotComputable(format!(
            "kernels of lattice maps over {ring} need not be free"
        )));
    }
    let incl: Vec<Matrix> = f.maps.iter().map(kernel_basis).collect();
    let dims = DimVector::new(incl.iter().map(Matrix::cols).collect());
    let mats = x
        .quiver
        .arrows()
        .iter()
        .zip(&x.mats)
        .map(|(&(t, h), m)| {
            solve(&incl[h], &m.mul(&incl[t]))?
                .ok_or_else(|| Error::NotComputable("kernel is not closed under an arrow".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let k = Rep::new(ring, x.quiver.clone(), dims, mats)?;
    let i = RepMorphism::new(k.clone(), x.clone(), incl)?;
    Ok((k, i))
}

/// The cokernel of `f` with its projection from the target. Fails with
/// `NonFreeCokernel` when some vertex cokernel has torsion.
pub fn cokernel_rep(f: &RepMorphism) -> Result<(Rep, RepMorphism)> {
    let y = &f.target;
    let ring = y.ring;
    let mut proj = Vec::new();
    let mut sect = Vec::new();
    for (v, m) in f.maps.iter().enumerate() {
        let c = cokernel(m);
        if !c.module.is_free() {
            return Err(Error::NonFreeCokernel(format!(
                "vertex {} cokernel has invariants {:?}",
                v + 1,
                c.module.invariant_strings()
            )));
        }
        proj.push(c.coordinates);
        sect.push(c.generators);
    }
    let dims = DimVector::new(proj.iter().map(Matrix::rows).collect());
    let mats = y
        .quiver
        .arrows()
        .iter()
        .zip(&y.mats)
        .map(|(&(t, h), m)| proj[h].mul(m).mul(&sect[t]))
        .collect();
    let c = Rep::new(ring, y.quiver.clone(), dims, mats)?;
    let p = RepMorphism::new(y.clone(), c.clone(), proj)?;
    Ok((c, p))
}

/// Largest Hom rank for which finite-field searches enumerate every
/// combination of generators.
const SEARCH_LIMIT: u128 = 1_000_000;
/// Largest Hom rank for the `{-1, 0, 1}` search over `Z` and `Q`.
const SIGN_SEARCH_RANK: usize = 8;

/// Decides whether two rigid lattices are isomorphic by looking for an
/// invertible element of `Hom(X, Y)`: first among the generators, then by a
/// bounded search over coefficient vectors. Over `Z` and `Q` a failed search
/// falls back to comparing decompositions into exceptional summands.
pub fn is_isomorphic_rigid(x: &Rep, y: &Rep) -> Result<bool> {
    x.check_same_base(y)?;
    if x.dims != y.dims {
        return Ok(false);
    }
    if x.is_zero() {
        return Ok(true);
    }
    match find_isomorphism(x, y)? {
        Some(_) => Ok(true),
        None if finite_ring_order(x.ring).is_some() => Ok(false),
        None => {
            if let Some(answer) = compare_decompositions(x, y)? {
                return Ok(answer);
            }
            if x.ring == RingSpec::Integers && not_isomorphic_mod_small_primes(x, y)? {
                return Ok(false);
            }
            Err(Error::Inconclusive(format!(
                "no isomorphism among small combinations of Hom generators over {}",
                x.ring
            )))
        }
    }
}

/// An explicit isomorphism `X -> Y`, if the bounded search finds one. Over
/// finite rings within the search limit `None` is definitive.
pub fn find_isomorphism(x: &Rep, y: &Rep) -> Result<Option<RepMorphism>> {
    x.check_same_base(y)?;
    if x.dims != y.dims {
        return Ok(None);
    }
    let he = hom_ext(x, y)?;
    let gens = &he.hom_generators;
    if let Some(g) = gens.iter().find(|g| g.is_isomorphism()) {
        return Ok(Some(g.clone()));
    }
    let ring = x.ring;
    let k = gens.len();
    let alphabet: Vec<RingElem> = match finite_ring_order(ring) {
        Some(order)
            if (order as u128)
                .checked_pow(k as u32)
                .is_some_and(|n| n <= SEARCH_LIMIT) =>
        {
            all_elements(ring, order)
        }
        Some(_) => {
            return Err(Error::Inconclusive(format!(
                "Hom of rank {k} over {ring} is too large to search"
            )))
        }
        None if k <= SIGN_SEARCH_RANK => vec![ring.zero(), ring.one(), ring.from_i64(-1)],
        None => return Ok(None),
    };
    let mut idx = vec![0usize; k];
    loop {
        let mut i = 0;
        while i < k && idx[i] + 1 == alphabet.len() {
            idx[i] = 0;
            i += 1;
        }
        if i == k {
            return Ok(None);
        }
        idx[i] += 1;
        let coeffs: Vec<RingElem> = idx.iter().map(|&j| alphabet[j].clone()).collect();
        let f = RepMorphism::linear_combination(x, y, gens, &coeffs)?;
        if f.is_isomorphism() {
            return Ok(Some(f));
        }
    }
}

/// Decides isomorphism of rigid lattices by decomposing both: equal
/// summand multisets give the isomorphism `cert_y . cert_x^{-1}`. `None`
/// when either decomposition is unavailable.
fn compare_decompositions(x: &Rep, y: &Rep) -> Result<Option<bool>> {
    let (dx, dy) = match (decompose_rigid(x), decompose_rigid(y)) {
        (Ok(a), Ok(b)) => (a, b),
        _ => return Ok(None),
    };
    if dx.multiset() != dy.multiset() {
        return Ok(Some(false));
    }
    if dx.certificate.source() != dy.certificate.source() {
        return Ok(None);
    }
    let iso = dx.certificate.inverse()?.then(&dy.certificate)?;
    Ok(Some(iso.is_isomorphism()))
}

/// Sound negative test over `Z`: lattices that stay non-isomorphic after
/// reduction modulo a prime are not isomorphic.
fn not_isomorphic_mod_small_primes(x: &Rep, y: &Rep) -> Result<bool> {
    for p in [2, 3, 5] {
        let f = RingSpec::PrimeField(p);
        match find_isomorphism(&x.over(f)?, &y.over(f)?) {
            Ok(None) => return Ok(true),
            Ok(Some(_)) | Err(Error::Inconclusive(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(false)
}

fn finite_ring_order(ring: RingSpec) -> Option<u64> {
    match ring {
        RingSpec::PrimeField(p) => Some(p),
        RingSpec::IntegersMod(m) => Some(m),
        RingSpec::TruncatedPoly { p, n } => p.checked_pow(n as u32),
        RingSpec::Integers | RingSpec::Rationals => None,
    }
}

fn all_elements(ring: RingSpec, order: u64) -> Vec<RingElem> {
    match ring {
        RingSpec::TruncatedPoly { p, n } => (0..order)
            .map(|mut k| {
                let mut c = vec![0u64; n];
                for x in c.iter_mut() {
                    *x = k % p;
                    k /= p;
                }
                RingElem::Poly(c)
            })
            .collect(),
        _ => (0..order)
            .map(|k| ring.from_bigint(&BigInt::from(k)))
            .collect(),
    }
}
