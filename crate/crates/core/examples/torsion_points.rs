//! The seven 7-torsion points of y^2 = x^3 - 2 + 7n over Q_7 and their reductions.

use goodpoint::curve::torsion::{family_curve_qp, reduce_padic_point, theta_pair, torsion7_qp};
use goodpoint::finite::FiniteField;
use num_bigint::BigInt;

fn main() -> goodpoint::Result<()> {
    let f7 = FiniteField::new(7)?;
    for n in [0, 1, -3] {
        let a = BigInt::from(-2 + 7 * n);
        let (theta, theta2) = theta_pair(&a, 8)?;
        println!("n = {n}: theta = {theta}, theta_2 = {theta2}");
        let curve = family_curve_qp(&a, 8);
        for t in torsion7_qp(&a, 8)? {
            let on = curve.contains(&t);
            let killed = curve.mul_i64(7, &t)?.is_infinity();
            match t.coords() {
                None => println!("  O"),
                Some((x, y)) => println!(
                    "  ({x}, {y}) on curve {on}, 7T = O {killed}, reduces to {:?}",
                    reduce_padic_point(&t, &f7)
                ),
            }
        }
    }
    Ok(())
}
