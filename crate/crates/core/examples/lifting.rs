//! Lifting rigid representations along surjections with nilpotent kernel.

use quivlat::homology::is_rigid;
use quivlat::{lift_rigid, Quiver, Rep, RingHom, RingSpec};

fn main() -> quivlat::Result<()> {
    let q = Quiver::linear(3);
    let f2 = RingSpec::prime_field(2)?;
    // P1 (+) S2 over F2 with the maps mixed by a base change.
    let x = Rep::from_i64(f2, q, &[1, 2, 1], &[&[1, 1], &[1, 0]])?;
    println!("X over F2 is rigid: {}", is_rigid(&x));

    for source in [RingSpec::truncated_poly(2, 3)?, RingSpec::integers_mod(8)?] {
        let h = RingHom::new(source, f2)?;
        let l = lift_rigid(&x, &h)?;
        assert_eq!(l.base_change(&h)?, x);
        println!("lift to {source}: rigid {}\n{l}", is_rigid(&l));
    }

    let h = RingHom::new(RingSpec::Integers, f2)?;
    match lift_rigid(&x, &h) {
        Ok(_) => println!("lifted to Z"),
        Err(e) => println!("Z -> F2 refused: {e}"),
    }
    Ok(())
}
