use super::normal_form::smith_with;
use super::{factorize, Matrix, RingElem, RingHom, RingSpec};
use crate::error::{Error, Result};

/// A finitely generated module `R^g / (column span of relations)`, together
/// with its invariant factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulePresentation {
    pub ring: RingSpec,
    pub generators: usize,
    pub relations: Matrix,
    /// Canonical non-unit invariant factors `d_1 | d_2 | ...`; zeros (free
    /// summands) come last.
    pub invariant_factors: Vec<RingElem>,
}

impl ModulePresentation {
    pub fn free(ring: RingSpec, rank: usize) -> Self {
        cokernel(&Matrix::zeros(ring, rank, 0)).module
    }

    pub fn is_zero(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.invariant_factors.iter().all(|d| self.ring.is_zero(d))
    }

    pub fn free_rank(&self) -> usize {
        self.invariant_factors
            .iter()
            .filter(|d| self.ring.is_zero(d))
            .count()
    }

    /// Number of cyclic summands in the invariant-factor decomposition.
    pub fn num_summands(&self) -> usize {
        self.invariant_factors.len()
    }

    /// `S (x)_R M`, recomputed canonically over the target ring.
    pub fn base_change(&self, h: &RingHom) -> Result<ModulePresentation> {
        let rel = h.apply_matrix(&self.relations)?;
        Ok(cokernel(&rel).module)
    }

    /// Same module up to isomorphism (invariant factors agree).
    pub fn is_isomorphic(&self, other: &ModulePresentation) -> bool {
        self.ring == other.ring && self.invariant_factors == other.invariant_factors
    }

    pub fn invariant_strings(&self) -> Vec<String> {
        self.invariant_factors
            .iter()
            .map(|d| self.ring.format_elem(d))
            .collect()
    }
}

/// A cokernel together with the generator images used to present it.
#[derive(Clone, Debug)]
pub struct Cokernel {
    pub module: ModulePresentation,
    /// One column per invariant factor: a vector of the ambient free module
    /// mapping to the corresponding cyclic generator.
    pub generators: Matrix,
    /// Coordinates of ambient vectors with respect to `generators`: row `i`
    /// is read modulo the `i`-th invariant factor.
    pub coordinates: Matrix,
}

/// `R^rows / (column span of a)`.
pub fn cokernel(a: &Matrix) -> Cokernel {
    let ring = a.ring();
    let (r, c) = a.shape();
    let s = smith_with(a, true, true, false);
    let mut kept = Vec::new();
    let mut factors = Vec::new();
    for i in 0..r {
        let d = if i < c {
            s.diag.get(i, i).clone()
        } else {
            ring.zero()
        };
        if ring.is_unit(&d) {
            continue;
        }
        kept.push(i);
        factors.push(d);
    }
    let left = s.left.unwrap();
    let left_inv = s.left_inv.unwrap();
    Cokernel {
        module: ModulePresentation {
            ring,
            generators: r,
            relations: a.clone(),
            invariant_factors: factors,
        },
        generators: left_inv.select_cols(&kept),
        coordinates: left.select_rows(&kept),
    }
}

/// The constant rank of a projective module: `Ok(Some(n))` for constant rank
/// `n`, `Ok(None)` for a projective module whose local ranks differ (only
/// possible over `Z/m` with `m` not a prime power).
pub fn constant_rank(p: &ModulePresentation) -> Result<Option<usize>> {
    let ring = p.ring;
    match ring {
        RingSpec::Integers
        | RingSpec::Rationals
        | RingSpec::PrimeField(_)
        | RingSpec::TruncatedPoly { .. } => {
            if p.is_free() {
                Ok(Some(p.free_rank()))
            } else {
                Err(Error::NotProjective)
            }
        }
        RingSpec::IntegersMod(m) => {
            let mut ranks = Vec::new();
            for (q, k) in factorize(m) {
                let mut local = 0;
                for d in &p.invariant_factors {
                    let d = match d {
                        RingElem::Residue(0) => m,
                        RingElem::Residue(x) => *x,
                        _ => unreachable!(),
                    };
                    let mut v = 0;
                    let mut x = d;
                    while x % q == 0 && v < k {
                        x /= q;
                        v += 1;
                    }
                    if v == k {
                        local += 1;
                    } else if v > 0 {
                        return Err(Error::NotProjective);
                    }
                }
                ranks.push(local);
            }
            if ranks.windows(2).all(|w| w[0] == w[1]) {
                Ok(Some(ranks[0]))
            } else {
                Ok(None)
            }
        }
    }
}
