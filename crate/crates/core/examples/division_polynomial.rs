//! Division polynomials over Z[x, a] for y^2 = x^3 + a and their specializations.

use goodpoint::curve::{division_polynomial, division_polynomial_numeric, ZaxPoly};
use num_bigint::BigInt;

fn main() {
    for m in [2, 3, 5] {
        let psi = division_polynomial(m, &ZaxPoly::zero(), &ZaxPoly::a());
        println!(
            "psi_{m} = {}{}",
            if psi.has_y_factor { "y * " } else { "" },
            psi.g
        );
    }
    let psi7 = division_polynomial(7, &ZaxPoly::zero(), &ZaxPoly::a());
    let sextic = ZaxPoly::from_terms(&[(6, 0, 7), (3, 1, -4), (0, 2, 16)]);
    let octodecic = ZaxPoly::from_terms(&[
        (18, 0, 1),
        (15, 1, 564),
        (12, 2, -5808),
        (9, 3, -123136),
        (6, 4, -189696),
        (3, 5, -49152),
        (0, 6, 4096),
    ]);
    println!(
        "psi_7 = ({sextic}) * ({octodecic}): {}",
        psi7.g == sextic.mul(&octodecic)
    );
    let (_, at_minus_two) = division_polynomial_numeric(7, &BigInt::from(0), &BigInt::from(-2));
    println!("psi_7 at a = -2, coefficients from x^0: {at_minus_two:?}");
}
