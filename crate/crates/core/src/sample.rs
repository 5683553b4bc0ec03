//! Random instances shared by the verification suites and tests.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::Result;
use crate::homology::ext_vanishes;
use crate::quiver::{DimVector, Quiver, Rep};
use crate::ring::{Matrix, RingSpec};

/// A random integer matrix of determinant `+-1` with entries bounded by
/// `max_entry` in absolute value, mapped into `ring`.
pub fn random_unimodular<G: Rng + ?Sized>(
    ring: RingSpec,
    n: usize,
    max_entry: i64,
    rng: &mut G,
) -> Matrix {
    let mut m = vec![vec![0i64; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    if n > 1 {
        for _ in 0..3 * n {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            let c = *[-2i64, -1, 1, 2].choose(rng).unwrap();
            let new: Vec<i64> = (0..n).map(|k| m[i][k] + c * m[j][k]).collect();
            if new.iter().all(|x| x.abs() <= max_entry) {
                m[i] = new;
            }
        }
    }
    for row in m.iter_mut() {
        if rng.gen_bool(0.5) {
            row.iter_mut().for_each(|x| *x = -*x);
        }
    }
    m.shuffle(rng);
    let flat: Vec<i64> = m.into_iter().flatten().collect();
    Matrix::from_i64(ring, n, n, &flat)
}

/// Conjugates `x` by independent random unimodular basis changes at every
/// vertex.
pub fn scramble<G: Rng + ?Sized>(x: &Rep, max_entry: i64, rng: &mut G) -> Result<Rep> {
    let g: Vec<Matrix> = x
        .dims()
        .iter()
        .map(|&d| random_unimodular(x.ring(), d, max_entry, rng))
        .collect();
    Ok(x.transport(&g)?.0)
}

/// A rigid lattice assembled from pairwise Ext-orthogonal exceptional
/// lattices taken from `pool` (all over one ring), with random
/// multiplicities, then scrambled. Returns the lattice and the planted
/// `(dims, multiplicity)` list sorted by dims.
pub fn planted_rigid<G: Rng + ?Sized>(
    pool: &[Rep],
    max_summands: usize,
    max_total: usize,
    max_entry: i64,
    rng: &mut G,
) -> Result<(Rep, Vec<(DimVector, usize)>)> {
    let first = &pool[0];
    let (ring, q): (RingSpec, &Quiver) = (first.ring(), first.quiver());
    let mut order: Vec<usize> = (0..pool.len()).collect();
    order.shuffle(rng);
    let want = rng.gen_range(1..=max_summands);
    let mut chosen: Vec<(usize, usize)> = Vec::new();
    let mut total = 0;
    for i in order {
        if chosen.len() == want {
            break;
        }
        let x = &pool[i];
        let d = x.dims().total();
        if total + d > max_total {
            continue;
        }
        let mut ok = true;
        for &(j, _) in &chosen {
            if !ext_vanishes(x, &pool[j])? || !ext_vanishes(&pool[j], x)? {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        let mut m = 1;
        while m < 3 && total + (m + 1) * d <= max_total && rng.gen_bool(0.4) {
            m += 1;
        }
        total += m * d;
        chosen.push((i, m));
    }
    let mut sum = Rep::zero(ring, q);
    for &(i, m) in &chosen {
        sum = sum.direct_sum(&pool[i].tensor_free(m))?;
    }
    let mut planted: Vec<(DimVector, usize)> = chosen
        .iter()
        .map(|&(i, m)| (pool[i].dims().clone(), m))
        .collect();
    planted.sort();
    Ok((scramble(&sum, max_entry, rng)?, planted))
}
