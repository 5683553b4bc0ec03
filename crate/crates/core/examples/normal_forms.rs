//! Smith and Howell forms, kernels and cokernels over several rings.

use quivlat::ring::{cokernel, howell_form, kernel_basis, smith_form, Matrix, RingSpec};

fn main() -> quivlat::Result<()> {
    let a = Matrix::from_i64(RingSpec::Integers, 3, 3, &[2, 4, 4, -6, 6, 12, 10, -4, -16]);
    let s = smith_form(&a);
    assert!(s.verify(&a));
    println!("A over Z:\n{a}\nSmith form:\n{}", s.nf);

    let c = cokernel(&a);
    println!("Z^3 / col(A) = {:?}", c.module.invariant_strings());

    let m = RingSpec::integers_mod(12)?;
    let b = Matrix::from_i64(m, 2, 3, &[4, 6, 0, 2, 3, 9]);
    let h = howell_form(&b);
    assert!(h.verify(&b));
    println!("\nB over Z/12:\n{b}\nHowell form:\n{}", h.nf);
    let k = kernel_basis(&b);
    assert!(b.mul(&k).is_zero());
    println!("kernel generators (columns):\n{k}");

    let t = RingSpec::truncated_poly(3, 2)?;
    let c = Matrix::from_i64(t, 2, 2, &[1, 2, 2, 1]);
    println!("\nC over {t}: Smith form\n{}", smith_form(&c).nf);
    Ok(())
}
