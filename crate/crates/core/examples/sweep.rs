//! Certifying a range of the family and comparing serial and parallel runs.

use goodpoint::survey::{sweep, SweepConfig};

fn main() -> goodpoint::Result<()> {
    let mut cfg = SweepConfig::new(-15, 15);
    cfg.height = 150;
    cfg.jobs = Some(1);
    let serial = sweep(&cfg)?;
    cfg.jobs = Some(4);
    let parallel = sweep(&cfg)?;
    print!("{}", parallel.render_table());
    println!(
        "serial and parallel reports identical: {}",
        serial.to_json_deterministic() == parallel.to_json_deterministic()
    );
    Ok(())
}
