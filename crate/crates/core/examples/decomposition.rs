//! Splitting a scrambled rigid lattice into exceptional summands, with an
//! isomorphism certificate.

use quivlat::mutation::{orbit_catalog, OrbitStrategy};
use quivlat::sample::planted_rigid;
use quivlat::{decompose_rigid, Quiver, Rep, RingSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> quivlat::Result<()> {
    let q = Quiver::kronecker();
    let pool: Vec<Rep> = orbit_catalog(&q, RingSpec::Integers, 9, None, OrbitStrategy::Standard)?
        .reps
        .into_values()
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (x, planted) = planted_rigid(&pool, 2, 10, 3, &mut rng)?;
    println!("planted: {planted:?}");
    println!("scrambled lattice:\n{x}");

    let dec = decompose_rigid(&x)?;
    println!("found: {:?}", dec.multiset());
    println!(
        "certificate is an isomorphism: {}",
        dec.certificate.is_isomorphism()
    );
    println!("{}", dec.report());
    Ok(())
}
