//! Formal group parameters and filtration levels over Q_7 and Q_7(zeta_7).

use goodpoint::curve::formal::{add_parameters, point_from_parameter};
use goodpoint::curve::torsion::formal_torsion_cyclotomic;
use goodpoint::curve::{formal_parameter, Curve};
use goodpoint::local::{make_cyclotomic, FieldHandle};
use goodpoint::padic::Padic;
use goodpoint::OddPrime;
use num_bigint::BigInt;

fn main() -> goodpoint::Result<()> {
    let p = OddPrime::new(7)?;
    let curve = Curve::new(Padic::zero(p, 20), Padic::from_i64(-2, p, 20));
    for t in [7, 49, 14 * 49] {
        let pt = point_from_parameter(&curve, &Padic::from_i64(t, p, 20))?;
        let fp = formal_parameter(&pt)?;
        println!(
            "t = {t}: level {}, 7-fold level {}",
            fp.level,
            formal_parameter(&curve.mul_i64(7, &pt)?)?.level
        );
    }
    let s = add_parameters(
        &curve,
        &Padic::from_i64(7, p, 20),
        &Padic::from_i64(49, p, 20),
    );
    println!("F(7, 49) = {s}");

    let field = make_cyclotomic(p, 10)?;
    let (curve, av) = formal_torsion_cyclotomic(&BigInt::from(-2), &field)?;
    println!("A_v over Q_7(zeta_7): level {} in units of v(pi)", av.level);
    println!("7 A_v = O: {}", curve.mul_i64(7, &av.point)?.is_infinity());
    println!("pi = {}", field.uniformizer());
    Ok(())
}
