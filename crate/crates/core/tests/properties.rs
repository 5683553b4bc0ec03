mod common;

use proptest::prelude::*;
use quivlat::homology::{check_base_change, hom_ext, is_exceptional, is_rigid};
use quivlat::mutation::{orbit_catalog, OrbitStrategy};
use quivlat::quiver::{euler_form, DimVector, Quiver, Rep};
use quivlat::ring::{
    howell_form, kernel_basis, smith_form, solve, Matrix, RingElem, RingHom, RingSpec,
};
use quivlat::sample::scramble;
use quivlat::structure::{exceptional_lattice, is_real_schur_root, lift_rigid};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn quiver(k: usize) -> Quiver {
    match k % 4 {
        0 => Quiver::linear(2),
        1 => Quiver::linear(3),
        2 => Quiver::kronecker(),
        _ => Quiver::new(3, vec![(0, 2), (1, 2)]).unwrap(),
    }
}

fn finite_ring(k: usize) -> RingSpec {
    [
        RingSpec::IntegersMod(4),
        RingSpec::IntegersMod(6),
        RingSpec::TruncatedPoly { p: 2, n: 2 },
        RingSpec::PrimeField(3),
    ][k % 4]
}

fn dims(q: &Quiver, max: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    use rand::Rng;
    (0..q.vertex_count())
        .map(|_| rng.gen_range(0..=max))
        .collect()
}

fn nonzero_rows(m: &Matrix) -> Vec<Vec<RingElem>> {
    let ring = m.ring();
    common::rows_of(m)
        .into_iter()
        .filter(|r| r.iter().any(|x| !ring.is_zero(x)))
        .collect()
}

fn ranks(x: &Rep, y: &Rep) -> (usize, usize) {
    let he = hom_ext(x, y).unwrap();
    (he.hom.free_rank(), he.ext.free_rank())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn howell_form_depends_only_on_row_span(seed: u64, k in 0usize..4, r in 0usize..5, c in 0usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = finite_ring(k);
        let a = common::random_matrix(ring, r, c, 20, &mut rng);
        let b = common::shuffle_rows(&a, &mut rng);
        let (ha, hb) = (howell_form(&a), howell_form(&b));
        prop_assert_eq!(nonzero_rows(&ha.nf), nonzero_rows(&hb.nf));
        prop_assert!(ha.verify(&a));
    }

    #[test]
    fn smith_matches_determinantal_divisors(seed: u64, r in 0usize..5, c in 0usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = common::random_matrix(RingSpec::Integers, r, c, 20, &mut rng);
        let s = smith_form(&a);
        prop_assert!(s.verify(&a));
        let got: Vec<String> = (0..r.min(c))
            .map(|i| RingSpec::Integers.format_elem(s.nf.get(i, i)))
            .filter(|d| d != "0")
            .collect();
        let want: Vec<String> = common::invariant_factors_oracle(&a).iter().map(|d| d.to_string()).collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn kernel_and_solve_are_exact(seed: u64, k in 0usize..5, r in 0usize..5, c in 0usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = if k == 4 { RingSpec::Integers } else { finite_ring(k) };
        let a = common::random_matrix(ring, r, c, 9, &mut rng);
        let kb = kernel_basis(&a);
        prop_assert!(a.mul(&kb).is_zero());
        let x = common::random_matrix(ring, c, 1, 9, &mut rng);
        let b = a.mul(&x);
        let y = solve(&a, &b).unwrap();
        prop_assert!(y.is_some());
        prop_assert_eq!(a.mul(&y.unwrap()), b);
    }

    #[test]
    fn euler_identity_over_prime_fields(seed: u64, k in 0usize..4, p in prop::sample::select(vec![2u64, 3, 5])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = quiver(k);
        let f = RingSpec::PrimeField(p);
        let (a, b) = (dims(&q, 3, &mut rng), dims(&q, 3, &mut rng));
        let x = Rep::random(f, &q, &a, 4, &mut rng);
        let y = Rep::random(f, &q, &b, 4, &mut rng);
        let (h, e) = ranks(&x, &y);
        prop_assert_eq!(h as i64 - e as i64, euler_form(&q, &a, &b).unwrap());
    }

    #[test]
    fn hom_and_ext_are_additive(seed: u64, k in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = quiver(k);
        let f = RingSpec::PrimeField(3);
        let x1 = Rep::random(f, &q, &dims(&q, 2, &mut rng), 2, &mut rng);
        let x2 = Rep::random(f, &q, &dims(&q, 2, &mut rng), 2, &mut rng);
        let y = Rep::random(f, &q, &dims(&q, 2, &mut rng), 2, &mut rng);
        let (h1, e1) = ranks(&x1, &y);
        let (h2, e2) = ranks(&x2, &y);
        prop_assert_eq!(ranks(&x1.direct_sum(&x2).unwrap(), &y), (h1 + h2, e1 + e2));
        let (g1, f1) = ranks(&y, &x1);
        let (g2, f2) = ranks(&y, &x2);
        prop_assert_eq!(ranks(&y, &x1.direct_sum(&x2).unwrap()), (g1 + g2, f1 + f2));
    }

    #[test]
    fn tensoring_with_a_free_module_scales_ranks(seed: u64, k in 0usize..4, m in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = quiver(k);
        let f = RingSpec::PrimeField(2);
        let x = Rep::random(f, &q, &dims(&q, 2, &mut rng), 1, &mut rng);
        let y = Rep::random(f, &q, &dims(&q, 2, &mut rng), 1, &mut rng);
        let (h, e) = ranks(&x, &y);
        prop_assert_eq!(ranks(&x.tensor_free(m), &y), (m * h, m * e));
        prop_assert_eq!(ranks(&x, &y.tensor_free(m)), (m * h, m * e));
    }

    #[test]
    fn ext_commutes_with_base_change(seed: u64, k in 0usize..4, t in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = quiver(k);
        let z = RingSpec::Integers;
        let x = Rep::random(z, &q, &dims(&q, 3, &mut rng), 6, &mut rng);
        let y = Rep::random(z, &q, &dims(&q, 3, &mut rng), 6, &mut rng);
        let s = [RingSpec::PrimeField(2), RingSpec::IntegersMod(6), RingSpec::Rationals, RingSpec::TruncatedPoly { p: 3, n: 2 }][t];
        let h = RingHom::new(z, s).unwrap();
        prop_assert!(check_base_change(&x, &y, &h).unwrap());
    }
}

/// Exceptional lattices over Z on the test quivers, up to total dimension 8.
fn z_catalog(k: usize) -> Vec<Rep> {
    orbit_catalog(
        &quiver(k),
        RingSpec::Integers,
        8,
        None,
        OrbitStrategy::Standard,
    )
    .unwrap()
    .reps
    .into_values()
    .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn rigidity_descends_along_base_change(seed: u64, k in 0usize..4, i: prop::sample::Index, t in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pool = z_catalog(k);
        let x = scramble(&pool[i.index(pool.len())], 5, &mut rng).unwrap();
        prop_assert!(is_exceptional(&x));
        let s = [RingSpec::PrimeField(2), RingSpec::IntegersMod(4), RingSpec::IntegersMod(6), RingSpec::TruncatedPoly { p: 2, n: 3 }][t];
        let xs = x.base_change(&RingHom::new(RingSpec::Integers, s).unwrap()).unwrap();
        prop_assert!(is_rigid(&xs));
        prop_assert!(is_exceptional(&xs));
    }

    #[test]
    fn lifting_round_trips(seed: u64, k in 0usize..4, i: prop::sample::Index, j: prop::sample::Index) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pool = z_catalog(k);
        let a = &pool[i.index(pool.len())];
        let b = &pool[j.index(pool.len())];
        let f2 = RingSpec::PrimeField(2);
        let x = a.direct_sum(b).unwrap();
        let x = scramble(&x.over(f2).unwrap(), 1, &mut rng).unwrap();
        for source in [RingSpec::TruncatedPoly { p: 2, n: 3 }, RingSpec::IntegersMod(8), RingSpec::Integers] {
            let h = RingHom::new(source, f2).unwrap();
            match lift_rigid(&x, &h) {
                Ok(l) => {
                    prop_assert!(is_rigid(&x));
                    prop_assert!(is_rigid(&l));
                    prop_assert_eq!(l.base_change(&h).unwrap(), x.clone());
                }
                Err(e) => {
                    // Z -> F_2 has a non-nilpotent kernel; otherwise only
                    // non-rigid inputs may be refused.
                    let expected = if source == RingSpec::Integers {
                        quivlat::Error::NotNilpotentKernel
                    } else {
                        quivlat::Error::NotRigid
                    };
                    prop_assert_eq!(e.clone(), expected);
                    if e == quivlat::Error::NotRigid {
                        prop_assert!(!is_rigid(&x));
                    }
                }
            }
        }
    }

    #[test]
    fn schur_roots_pass_the_tits_form_and_construct(k in 0usize..4, a in prop::collection::vec(0usize..5, 3)) {
        let q = quiver(k);
        let d = DimVector::new(a[..q.vertex_count()].to_vec());
        prop_assume!(!d.is_zero());
        let t = is_real_schur_root(&q, &d, 30).unwrap();
        if t.is_root() {
            prop_assert_eq!(euler_form(&q, &d, &d).unwrap(), 1);
            let x = exceptional_lattice(&q, &d, RingSpec::Integers, 30).unwrap();
            prop_assert!(is_exceptional(&x));
            prop_assert_eq!(x.dims(), &d);
        } else if euler_form(&q, &d, &d).unwrap() != 1 {
            prop_assert!(exceptional_lattice(&q, &d, RingSpec::Integers, 30).is_err());
        }
    }
}
