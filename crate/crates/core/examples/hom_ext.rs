//! Hom and Ext between representations of the Kronecker quiver over Z,
//! and how they behave under reduction mod p.

use quivlat::homology::{check_base_change, hom_ext, is_exceptional};
use quivlat::{Quiver, Rep, RingHom, RingSpec};

fn main() -> quivlat::Result<()> {
    let q = Quiver::kronecker();
    let z = RingSpec::Integers;
    let p1 = Rep::projective(z, &q, 0)?;
    let s1 = Rep::simple(z, &q, 0);
    let s2 = Rep::simple(z, &q, 1);

    for (name, x, y) in [
        ("S2, P1", &s2, &p1),
        ("P1, S1", &p1, &s1),
        ("S1, S2", &s1, &s2),
    ] {
        let he = hom_ext(x, y)?;
        println!(
            "({name}): Hom = {:?}, Ext = {:?}",
            he.hom.invariant_strings(),
            he.ext.invariant_strings()
        );
    }

    // A non-rigid lattice: the two arrows act as 1 and 2 on Z.
    let x = Rep::from_i64(z, q.clone(), &[1, 1], &[&[1], &[2]])?;
    let he = hom_ext(&x, &x)?;
    println!(
        "\nEnd(X) = {:?}, Ext(X, X) = {:?}, exceptional: {}",
        he.hom.invariant_strings(),
        he.ext.invariant_strings(),
        is_exceptional(&x)
    );
    for p in [2, 3] {
        let h = RingHom::new(z, RingSpec::prime_field(p)?)?;
        let xp = x.base_change(&h)?;
        let hp = hom_ext(&xp, &xp)?;
        println!(
            "over F{p}: End rank {}, Ext rank {}, base change formula holds: {}",
            hp.hom.free_rank(),
            hp.ext.free_rank(),
            check_base_change(&x, &x, &h)?
        );
    }
    Ok(())
}
