//! Hensel lifting in Q_7: square roots, cube roots of unity, Teichmüller lifts.

use goodpoint::padic::{nth_root, sqrt, teichmuller, Padic};
use goodpoint::OddPrime;

fn main() -> goodpoint::Result<()> {
    let p = OddPrime::new(7)?;
    let s = sqrt(&Padic::from_i64(-3, p, 4), 2)?;
    println!("sqrt(-3) = {s}");
    println!("digits   = {:?}", s.digits());

    let s = sqrt(&Padic::from_i64(-3, p, 12), 2)?;
    println!("sqrt(-3) to 12 digits = {s}");
    println!(
        "check: s^2 + 3 = {}",
        &(&s * &s) + &Padic::from_i64(3, p, 12)
    );

    let one = Padic::one(p, 10);
    let zeta3 = nth_root(&one, 3, 4)?;
    println!("primitive cube root of 1 = {zeta3}");
    for r in 1..7 {
        println!("teichmuller({r}) = {}", teichmuller(r, p, 6)?);
    }
    Ok(())
}
