//! Splitting points of E(Q_7) into a torsion part and a formal part.

use goodpoint::certify::Decomposer;
use goodpoint::finite::{affine_points, p_primary_generator};
use goodpoint::local::make_unramified;
use goodpoint::OddPrime;
use num_bigint::BigInt;

fn main() -> goodpoint::Result<()> {
    let (a, b) = (BigInt::from(0), BigInt::from(-2));
    let structure = p_primary_generator(&a, &b, 7, 7)?;
    let residue_points = affine_points(&structure.curve, structure.curve.a().field());
    let field = make_unramified(OddPrime::new(7)?, 1, 20)?;
    let d = Decomposer::new(&a, &b, &field, structure)?;
    println!("P0 = {:?}", d.torsion_generator());
    for target in residue_points {
        let pt = d.lift_residue_point(&target)?;
        let out = d.decompose(&pt)?;
        println!(
            "lift of {target:?}: c = {}, formal level {:?}, class {:?}",
            out.c, out.level, out.class
        );
    }
    Ok(())
}
