//! Mutations of exceptional pairs and the braid group acting on complete
//! exceptional sequences.

use quivlat::mutation::{braid_trace, parse_letter};
use quivlat::{left_mutate, right_mutate, standard_sequence, Quiver, Rep, RingSpec};

fn main() -> quivlat::Result<()> {
    let z = RingSpec::Integers;
    let q = Quiver::kronecker();
    let x = Rep::simple(z, &q, 0);
    let y = Rep::simple(z, &q, 1);

    let l = left_mutate(&x, &y)?;
    println!("L_X Y = {} via {}", l.result.dims(), l.case.name());
    let back = right_mutate(&l.result, &x)?;
    println!(
        "R_X (L_X Y) = {} via {}",
        back.result.dims(),
        back.case.name()
    );

    let seq = standard_sequence(&Quiver::linear(3), z)?;
    println!("\nstandard sequence on A3: {:?}", seq.dims());
    let word = ["s1", "s2", "s1", "s2-1", "s1-1", "s2-1"]
        .iter()
        .map(|s| parse_letter(s))
        .collect::<quivlat::Result<Vec<_>>>()?;
    let (end, trace) = braid_trace(&seq, &word)?;
    println!("trace: {trace}");
    println!("after s1 s2 s1 (s2 s1 s2)^-1: {:?}", end.dims());

    let kron = standard_sequence(&q, z)?;
    let (far, _) = braid_trace(&kron, &[(1, false); 4])?;
    println!("\nKronecker after s1^4: {:?}", far.dims());
    Ok(())
}
