//! Real Schur roots of the Kronecker quiver and their exceptional lattices
//! over several base rings.

use quivlat::homology::hom_ext;
use quivlat::structure::SchurTest;
use quivlat::{exceptional_lattice, generic_dims, is_exceptional, is_real_schur_root};
use quivlat::{DimVector, Quiver, RingSpec};

fn main() -> quivlat::Result<()> {
    let q = Quiver::kronecker();
    for d in [[1, 1], [1, 2], [2, 1], [2, 3], [3, 4], [2, 2]] {
        let d = DimVector::new(d.to_vec());
        match is_real_schur_root(&q, &d, 40)? {
            SchurTest::Root => {
                let x = exceptional_lattice(&q, &d, RingSpec::Integers, 40)?;
                let end = hom_ext(&x, &x)?.hom;
                println!("{d}: real Schur root, End = {:?}", end.invariant_strings());
                println!("{x}");
            }
            other => println!("{d}: {}", other.name()),
        }
    }

    let d = DimVector::new(vec![3, 4]);
    for ring in [
        RingSpec::prime_field(5)?,
        RingSpec::integers_mod(6)?,
        RingSpec::truncated_poly(2, 3)?,
    ] {
        let x = exceptional_lattice(&q, &d, ring, 40)?;
        println!("{d} over {ring}: exceptional {}", is_exceptional(&x));
    }

    let g = generic_dims(
        &q,
        &DimVector::new(vec![1, 2]),
        &DimVector::new(vec![2, 3]),
        40,
    )?;
    println!(
        "\nhom/ext between (1,2) and (2,3): {} / {}",
        g.hom_rank, g.ext_rank
    );
    Ok(())
}
