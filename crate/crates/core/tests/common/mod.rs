//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the normal-form code under test.

#![allow(dead_code)]

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use quivlat::ring::{Matrix, RingElem, RingSpec};
use rand::Rng;

/// Every element of a finite ring.
pub fn elements(ring: RingSpec) -> Vec<RingElem> {
    match ring {
        RingSpec::PrimeField(m) | RingSpec::IntegersMod(m) => {
            (0..m).map(RingElem::Residue).collect()
        }
        RingSpec::TruncatedPoly { p, n } => {
            let mut out = vec![vec![]];
            for _ in 0..n {
                out = out
                    .into_iter()
                    .flat_map(|v: Vec<u64>| {
                        (0..p).map(move |c| {
                            let mut w = v.clone();
                            w.push(c);
                            w
                        })
                    })
                    .collect();
            }
            out.into_iter().map(RingElem::Poly).collect()
        }
        _ => panic!("{ring} is infinite"),
    }
}

pub fn random_matrix<G: Rng>(
    ring: RingSpec,
    rows: usize,
    cols: usize,
    bound: i64,
    rng: &mut G,
) -> Matrix {
    let entries: Vec<i64> = (0..rows * cols)
        .map(|_| rng.gen_range(-bound..=bound))
        .collect();
    match ring {
        RingSpec::TruncatedPoly { p, n } => {
            let data = (0..rows * cols)
                .map(|_| RingElem::Poly((0..n).map(|_| rng.gen_range(0..p)).collect()))
                .collect();
            Matrix::from_elems(ring, rows, cols, data).unwrap()
        }
        _ => Matrix::from_i64(ring, rows, cols, &entries),
    }
}

/// Determinant by dynamic programming over column subsets, using only ring
/// addition and multiplication.
pub fn det(m: &Matrix) -> RingElem {
    let ring = m.ring();
    let n = m.rows();
    assert_eq!(n, m.cols());
    let mut dp = vec![ring.zero(); 1 << n];
    dp[0] = ring.one();
    for mask in 0usize..(1 << n) {
        let row = mask.count_ones() as usize;
        if row >= n || ring.is_zero(&dp[mask]) {
            continue;
        }
        for j in 0..n {
            if mask & (1 << j) != 0 {
                continue;
            }
            let above = (mask >> (j + 1)).count_ones();
            let mut term = ring.mul(&dp[mask], m.get(row, j));
            if above % 2 == 1 {
                term = ring.neg(&term);
            }
            let next = mask | (1 << j);
            dp[next] = ring.add(&dp[next], &term);
        }
    }
    dp[(1 << n) - 1].clone()
}

fn to_int(x: &RingElem) -> BigInt {
    match x {
        RingElem::Int(v) => v.clone(),
        _ => panic!("not an integer"),
    }
}

/// `d_k` = gcd of all `k x k` minors of an integer matrix, for `k = 1..`.
pub fn determinantal_divisors(m: &Matrix) -> Vec<BigInt> {
    let (r, c) = m.shape();
    let subsets = |n: usize, k: usize| -> Vec<Vec<usize>> {
        (0usize..(1 << n))
            .filter(|s| s.count_ones() as usize == k)
            .map(|s| (0..n).filter(|i| s & (1 << i) != 0).collect())
            .collect()
    };
    let mut out = Vec::new();
    for k in 1..=r.min(c) {
        let mut g = BigInt::zero();
        for rows in subsets(r, k) {
            for cols in &subsets(c, k) {
                let minor = m.select_rows(&rows).select_cols(cols);
                g = g.gcd(&to_int(&det(&minor)));
            }
        }
        out.push(g);
    }
    out
}

/// Integer invariant factors from determinantal divisors: `d_k / d_{k-1}`,
/// stopping at the rank.
pub fn invariant_factors_oracle(m: &Matrix) -> Vec<BigInt> {
    let dd = determinantal_divisors(m);
    let mut out = Vec::new();
    let mut prev = BigInt::from(1);
    for d in dd {
        if d.is_zero() {
            break;
        }
        out.push((&d / &prev).abs());
        prev = d;
    }
    out
}

/// All vectors of `R^len` over a finite ring.
pub fn all_vectors(ring: RingSpec, len: usize) -> Vec<Vec<RingElem>> {
    let elems = elements(ring);
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v: Vec<RingElem>| {
                elems.iter().map(move |e| {
                    let mut w = v.clone();
                    w.push(e.clone());
                    w
                })
            })
            .collect();
    }
    out
}

/// The R-span of `gens` (each of length `len`) over a finite ring, by
/// closure.
pub fn span(ring: RingSpec, len: usize, gens: &[Vec<RingElem>]) -> HashSet<Vec<RingElem>> {
    let elems = elements(ring);
    let mut set: HashSet<Vec<RingElem>> = HashSet::new();
    set.insert(vec![ring.zero(); len]);
    for g in gens {
        let current: Vec<Vec<RingElem>> = set.iter().cloned().collect();
        for v in current {
            for c in &elems {
                let w: Vec<RingElem> = v
                    .iter()
                    .zip(g)
                    .map(|(a, b)| ring.add(a, &ring.mul(c, b)))
                    .collect();
                set.insert(w);
            }
        }
    }
    set
}

pub fn rows_of(m: &Matrix) -> Vec<Vec<RingElem>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

pub fn cols_of(m: &Matrix) -> Vec<Vec<RingElem>> {
    (0..m.cols()).map(|j| m.col(j)).collect()
}

/// For each ring element `a`, the number of elements of `R^rows / colspan(m)`
/// killed by `a`. Determines the cokernel up to isomorphism over `Z/m` and
/// `F_p[e]/(e^n)`.
pub fn annihilator_profile(m: &Matrix) -> Vec<usize> {
    let ring = m.ring();
    let image = span(ring, m.rows(), &cols_of(m));
    let vectors = all_vectors(ring, m.rows());
    elements(ring)
        .iter()
        .map(|a| {
            let killed = vectors
                .iter()
                .filter(|v| image.contains(&v.iter().map(|x| ring.mul(a, x)).collect::<Vec<_>>()))
                .count();
            killed / image.len()
        })
        .collect()
}

/// The same profile for `(+)_i R/(d_i)`.
pub fn cyclic_profile(ring: RingSpec, factors: &[RingElem]) -> Vec<usize> {
    elements(ring)
        .iter()
        .map(|a| {
            factors
                .iter()
                .map(|d| {
                    let ideal = span(ring, 1, &[vec![d.clone()]]);
                    let killed = elements(ring)
                        .iter()
                        .filter(|x| ideal.contains(&vec![ring.mul(a, x)]))
                        .count();
                    killed / ideal.len()
                })
                .product()
        })
        .collect()
}

/// Random invertible row operations applied to `m`: the row span is kept.
pub fn shuffle_rows<G: Rng>(m: &Matrix, rng: &mut G) -> Matrix {
    let ring = m.ring();
    let units: Vec<RingElem> = elements(ring)
        .into_iter()
        .filter(|x| ring.is_unit(x))
        .collect();
    let all = elements(ring);
    let mut rows = rows_of(m);
    let n = rows.len();
    for _ in 0..4 * n {
        if n < 2 {
            break;
        }
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let c = &all[rng.gen_range(0..all.len())];
        let add: Vec<RingElem> = rows[i]
            .iter()
            .zip(&rows[j])
            .map(|(a, b)| ring.add(a, &ring.mul(c, b)))
            .collect();
        rows[i] = add;
        rows.swap(i, j);
    }
    for row in rows.iter_mut() {
        let u = &units[rng.gen_range(0..units.len())];
        row.iter_mut().for_each(|x| *x = ring.mul(u, x));
    }
    let data = rows.into_iter().flatten().collect();
    Matrix::from_elems(ring, m.rows(), m.cols(), data).unwrap()
}
