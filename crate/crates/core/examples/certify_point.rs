//! Good-point certificates for rational points on y^2 = x^3 - 2 + 7n.

use goodpoint::arith::rational_int;
use goodpoint::certify::{certify_good, pairing_nonvanishing, restrict_level_to_l, Verdict};
use goodpoint::survey::naive_point_search;

fn main() -> goodpoint::Result<()> {
    let cert = certify_good(0, &rational_int(3), &rational_int(5), 24)?;
    println!("{}", cert.to_json());
    for n in -4..=4 {
        let Some(r) = naive_point_search(n, 200) else {
            println!("n = {n}: no point below height 200");
            continue;
        };
        let c = certify_good(n, &r.x, &r.y, 24)?;
        let restricted = if c.verdict == Verdict::Good {
            format!(", level {} over Q_7(zeta_7)", restrict_level_to_l(&c)?)
        } else {
            String::new()
        };
        println!(
            "n = {n}: P = ({}, {}), lambda {}, v(x) {}, {:?}{restricted}",
            c.point[0], c.point[1], c.lambda, c.x_valuation, c.verdict
        );
    }
    let v = pairing_nonvanishing(1, 6, 7, 1)?;
    println!("pairing of levels 1 and 6 nonvanishing: {}", v.nonvanishing);
    Ok(())
}
