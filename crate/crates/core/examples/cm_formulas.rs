//! Frobenius elements and closed-form point counts for CM curves with class number one.

use goodpoint::cm::{
    cm_model, count_formula_class_one, count_formula_eisenstein, primary_normalize,
    sixth_power_residue, split_frobenius, CLASS_ONE_MODELS,
};
use goodpoint::finite::{count_points, trace_of_frobenius};
use num_bigint::BigInt;

fn main() -> goodpoint::Result<()> {
    let p = 31;
    let pi = primary_normalize(&split_frobenius(-3, p, 4)?)?;
    println!(
        "primary prime above {p} in Z[omega]: {pi} (norm {})",
        pi.norm()
    );
    for c in 1..=6 {
        let chi = sixth_power_residue(c, &pi)?;
        let formula = count_formula_eisenstein(c, p)?;
        let direct = count_points(&BigInt::from(0), &BigInt::from(c), p)?;
        println!("  c = {c}: (c/pi)_6 = {chi}, formula {formula}, enumeration {direct}");
    }

    for &(d, _, _) in &CLASS_ONE_MODELS {
        let p = 47;
        let (a, b) = cm_model(d, 1)?;
        let Ok(t) = trace_of_frobenius(&a, &b, p) else {
            continue;
        };
        if t == 0 {
            println!("D = {d}: {p} is inert, #E = {}", p + 1);
            continue;
        }
        let pi = split_frobenius(d, p, t)?;
        let (u, v) = pi.half_sqrt_form();
        println!(
            "D = {d}: pi = ({u} {:+} sqrt({d}))/2, formula {}, enumeration {}",
            v,
            count_formula_class_one(1, p, d)?,
            count_points(&a, &b, p)?
        );
    }
    Ok(())
}
