use num_rational::BigRational;

use super::{Matrix, RingElem, RingSpec};
use crate::error::{Error, Result};

/// Primitive canonical ring maps. Composite maps are chains of these.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HomKind {
    Identity,
    IntToRationals,
    IntToPrimeField,
    IntToIntegersMod,
    /// `Z/m -> Z/m'` for `m' | m`.
    IntegersModToIntegersMod,
    /// `Z/m -> F_p` for `p | m`.
    IntegersModToPrimeField,
    /// `e -> 0`.
    TruncatedPolyToPrimeField,
    /// `F_p[e]/(e^n) -> F_p[e]/(e^n')` for `n' <= n`.
    TruncatedPolyTruncate,
    PrimeFieldToTruncatedPoly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Step {
    source: RingSpec,
    target: RingSpec,
    kind: HomKind,
}

impl Step {
    fn primitive(source: RingSpec, target: RingSpec) -> Option<Step> {
        use RingSpec::*;
        let kind = match (source, target) {
            (s, t) if s == t => HomKind::Identity,
            (Integers, Rationals) => HomKind::IntToRationals,
            (Integers, PrimeField(_)) => HomKind::IntToPrimeField,
            (Integers, IntegersMod(_)) => HomKind::IntToIntegersMod,
            (IntegersMod(m), IntegersMod(k)) if m % k == 0 => HomKind::IntegersModToIntegersMod,
            (IntegersMod(m), PrimeField(p)) if m % p == 0 => HomKind::IntegersModToPrimeField,
            (TruncatedPoly { p, .. }, PrimeField(q)) if p == q => {
                HomKind::TruncatedPolyToPrimeField
            }
            (TruncatedPoly { p, n }, TruncatedPoly { p: q, n: k }) if p == q && k <= n => {
                HomKind::TruncatedPolyTruncate
            }
            (PrimeField(p), TruncatedPoly { p: q, .. }) if p == q => {
                HomKind::PrimeFieldToTruncatedPoly
            }
            _ => return None,
        };
        Some(Step {
            source,
            target,
            kind,
        })
    }

    fn apply(&self, x: &RingElem) -> RingElem {
        let t = self.target;
        match (self.kind, x) {
            (HomKind::Identity, _) => x.clone(),
            (HomKind::IntToRationals, RingElem::Int(a)) => {
                RingElem::Rat(BigRational::from_integer(a.clone()))
            }
            (HomKind::IntToPrimeField | HomKind::IntToIntegersMod, RingElem::Int(a)) => {
                t.from_bigint(a)
            }
            (
                HomKind::IntegersModToIntegersMod | HomKind::IntegersModToPrimeField,
                RingElem::Residue(r),
            ) => t.from_i64(*r as i64),
            (HomKind::TruncatedPolyToPrimeField, RingElem::Poly(c)) => RingElem::Residue(c[0]),
            (HomKind::TruncatedPolyTruncate, RingElem::Poly(c)) => {
                let RingSpec::TruncatedPoly { n, .. } = t else {
                    unreachable!()
                };
                RingElem::Poly(c[..n].to_vec())
            }
            (HomKind::PrimeFieldToTruncatedPoly, RingElem::Residue(r)) => t.from_i64(*r as i64),
            _ => panic!("element {x:?} does not belong to {}", self.source),
        }
    }

    /// Canonical-representative section of a surjective step.
    fn lift(&self, y: &RingElem) -> Option<RingElem> {
        let s = self.source;
        Some(match (self.kind, y) {
            (HomKind::Identity, _) => y.clone(),
            (
                HomKind::IntegersModToIntegersMod | HomKind::IntegersModToPrimeField,
                RingElem::Residue(r),
            ) => s.from_i64(*r as i64),
            (HomKind::TruncatedPolyToPrimeField, RingElem::Residue(r)) => s.from_i64(*r as i64),
            (HomKind::TruncatedPolyTruncate, RingElem::Poly(c)) => {
                let RingSpec::TruncatedPoly { n, .. } = s else {
                    unreachable!()
                };
                let mut out = c.clone();
                out.resize(n, 0);
                RingElem::Poly(out)
            }
            _ => return None,
        })
    }

    fn is_surjective(&self) -> bool {
        match self.kind {
            HomKind::IntToRationals => false,
            HomKind::PrimeFieldToTruncatedPoly => {
                matches!(self.target, RingSpec::TruncatedPoly { n: 1, .. })
            }
            _ => true,
        }
    }

    /// Kernel is a nonzero nil ideal (the step is a proper nilpotent thickening).
    fn has_nilpotent_kernel(&self) -> bool {
        use RingSpec::*;
        match (self.kind, self.source, self.target) {
            (HomKind::IntegersModToIntegersMod, IntegersMod(m), IntegersMod(k))
            | (HomKind::IntegersModToPrimeField, IntegersMod(m), PrimeField(k)) => {
                m != k && same_radical(m, k)
            }
            (HomKind::TruncatedPolyToPrimeField, TruncatedPoly { n, .. }, _) => n > 1,
            (
                HomKind::TruncatedPolyTruncate,
                TruncatedPoly { n, .. },
                TruncatedPoly { n: k, .. },
            ) => k < n,
            _ => false,
        }
    }

    fn is_isomorphism(&self) -> bool {
        use RingSpec::*;
        match (self.kind, self.source, self.target) {
            (HomKind::Identity, _, _) => true,
            (HomKind::IntegersModToPrimeField, IntegersMod(m), PrimeField(p)) => m == p,
            (HomKind::TruncatedPolyToPrimeField, TruncatedPoly { n, .. }, _) => n == 1,
            (HomKind::PrimeFieldToTruncatedPoly, _, TruncatedPoly { n, .. }) => n == 1,
            _ => false,
        }
    }
}

/// `m` and `k` have the same prime divisors, so `Z/m -> Z/k` has nilpotent kernel.
fn same_radical(m: u64, k: u64) -> bool {
    let primes = |x: u64| -> Vec<u64> { super::factorize(x).into_iter().map(|(p, _)| p).collect() };
    primes(m) == primes(k)
}

/// A ring homomorphism between supported rings, stored as a chain of
/// canonical maps.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingHom {
    source: RingSpec,
    target: RingSpec,
    steps: Vec<Step>,
}

impl RingHom {
    pub fn identity(ring: RingSpec) -> Self {
        RingHom {
            source: ring,
            target: ring,
            steps: Vec::new(),
        }
    }

    /// The canonical map `source -> target`, if the supported maps provide one.
    pub fn new(source: RingSpec, target: RingSpec) -> Result<Self> {
        if source == target {
            return Ok(Self::identity(source));
        }
        if let Some(step) = Step::primitive(source, target) {
            return Ok(RingHom {
                source,
                target,
                steps: vec![step],
            });
        }
        // Two-step routes through a prime field.
        let via = match (source, target) {
            (RingSpec::Integers, RingSpec::TruncatedPoly { p, .. }) => {
                Some(RingSpec::PrimeField(p))
            }
            (RingSpec::IntegersMod(m), RingSpec::TruncatedPoly { p, .. }) if m % p == 0 => {
                Some(RingSpec::PrimeField(p))
            }
            (RingSpec::TruncatedPoly { p, .. }, RingSpec::IntegersMod(q)) if p == q => {
                Some(RingSpec::PrimeField(p))
            }
            _ => None,
        };
        if let Some(mid) = via {
            let a = Step::primitive(source, mid);
            let b = Step::primitive(mid, target);
            if let (Some(a), Some(b)) = (a, b) {
                return Ok(RingHom {
                    source,
                    target,
                    steps: vec![a, b],
                });
            }
        }
        Err(Error::IncompatibleRing(format!(
            "no supported ring map {source} -> {target}"
        )))
    }

    pub fn source(&self) -> RingSpec {
        self.source
    }

    pub fn target(&self) -> RingSpec {
        self.target
    }

    /// Primitive kinds along the chain; `[Identity]` for the identity.
    pub fn kinds(&self) -> Vec<HomKind> {
        if self.steps.is_empty() {
            vec![HomKind::Identity]
        } else {
            self.steps.iter().map(|s| s.kind).collect()
        }
    }

    /// `next` after `self`.
    pub fn then(&self, next: &RingHom) -> Result<RingHom> {
        if self.target != next.source {
            return Err(Error::IncompatibleRing(format!(
                "cannot compose {} -> {} with {} -> {}",
                self.source, self.target, next.source, next.target
            )));
        }
        let steps = self
            .steps
            .iter()
            .chain(&next.steps)
            .filter(|s| s.kind != HomKind::Identity)
            .copied()
            .collect();
        Ok(RingHom {
            source: self.source,
            target: next.target,
            steps,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.steps.iter().all(|s| s.kind == HomKind::Identity)
    }

    pub fn apply(&self, x: &RingElem) -> RingElem {
        self.steps.iter().fold(x.clone(), |acc, s| s.apply(&acc))
    }

    /// Entrywise image of a matrix over the source ring.
    pub fn apply_matrix(&self, m: &Matrix) -> Result<Matrix> {
        if m.ring() != self.source {
            return Err(Error::IncompatibleRing(format!(
                "matrix over {} but map starts at {}",
                m.ring(),
                self.source
            )));
        }
        Ok(m.map_entries(self.target, |x| self.apply(x)))
    }

    pub fn is_surjective(&self) -> bool {
        self.steps.iter().all(Step::is_surjective)
    }

    /// True for surjections whose kernel is a nonzero nilpotent ideal.
    pub fn has_nilpotent_kernel(&self) -> bool {
        self.steps
            .iter()
            .all(|s| s.is_isomorphism() || s.has_nilpotent_kernel())
            && self.steps.iter().any(Step::has_nilpotent_kernel)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.steps.iter().all(Step::is_isomorphism)
    }

    /// Canonical-representative preimage, defined for surjective maps.
    pub fn lift(&self, y: &RingElem) -> Option<RingElem> {
        self.steps
            .iter()
            .rev()
            .try_fold(y.clone(), |acc, s| s.lift(&acc))
    }

    pub fn lift_matrix(&self, m: &Matrix) -> Result<Matrix> {
        if m.ring() != self.target {
            return Err(Error::IncompatibleRing(format!(
                "matrix over {} but map ends at {}",
                m.ring(),
                self.target
            )));
        }
        let mut data = Vec::with_capacity(m.entries().len());
        for x in m.entries() {
            data.push(self.lift(x).ok_or_else(|| {
                Error::IncompatibleRing(format!(
                    "{} -> {} has no section",
                    self.source, self.target
                ))
            })?);
        }
        Matrix::from_elems(self.source, m.rows(), m.cols(), data)
    }
}
