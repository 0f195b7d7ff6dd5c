//! Point counts over F_p and F_q, with Frobenius traces and the seeded p-primary generator.

use goodpoint::finite::{count_points, p_primary_generator, trace_of_frobenius};
use num_bigint::BigInt;

fn main() -> goodpoint::Result<()> {
    for (a, b, q) in [(0, 5, 7), (0, -2, 7), (3, 0, 25), (0, 1, 13), (-1, 0, 49)] {
        let (n, t) = (
            count_points(&a.into(), &b.into(), q)?,
            trace_of_frobenius(&a.into(), &b.into(), q)?,
        );
        println!("y^2 = x^3 + ({a})x + ({b}) over F_{q}: #E = {n}, trace {t}");
    }
    let s = p_primary_generator(&BigInt::from(0), &BigInt::from(5), 7, 7)?;
    println!(
        "E(F_7) for y^2 = x^3 + 5: order {}, 7-part 7^{}, cofactor {}, generator {:?}",
        s.group_order, s.n0, s.cofactor, s.generator
    );
    Ok(())
}
