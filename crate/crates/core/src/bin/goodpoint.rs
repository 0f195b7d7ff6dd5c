use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use std::path::PathBuf;
use std::process::ExitCode;

use goodpoint::arith::parse_rational;
use goodpoint::certify::{certify_good, restrict_level_to_l, Verdict};
use goodpoint::cm::{cm_model, split_frobenius};
use goodpoint::curve::torsion::{formal_torsion_cyclotomic, torsion7_qp};
use goodpoint::finite::{count_points, trace_of_frobenius};
use goodpoint::local::make_cyclotomic;
use goodpoint::padic::DEFAULT_PRECISION;
use goodpoint::survey::{naive_point_search, sweep, SweepConfig, DEFAULT_HEIGHT};
use goodpoint::{Error, OddPrime, Result};

#[derive(Parser)]
#[command(
    name = "goodpoint",
    version,
    about = "Good-point certification on CM elliptic curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// #E(F_q) for y^2 = x^3 + A x + B
    CountPoints {
        #[arg(long, allow_hyphen_values = true)]
        a: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        b: BigInt,
        #[arg(long)]
        q: u64,
    },
    /// Frobenius element of a prime split in Q(sqrt(D))
    SplitPrime {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long)]
        p: u64,
        /// a_p; taken from point counting on a CM model when omitted
        #[arg(long, allow_hyphen_values = true)]
        trace: Option<i64>,
    },
    /// The seven 7-torsion points of y^2 = x^3 - 2 + 7n over Q_7
    Torsion {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: i64,
    },
    /// Certificate JSON for a rational point of y^2 = x^3 - 2 + 7n
    Certify {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: i64,
    },
    /// Certify every n in a range
    Sweep {
        #[arg(long, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, allow_hyphen_values = true)]
        to: i64,
        #[arg(long)]
        dataset: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_HEIGHT)]
        height: u64,
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: i64,
        #[arg(long)]
        jobs: Option<usize>,
        /// Write the JSON report here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Filtration levels over Q_7(zeta_7)
    Filtration {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true, requires = "y")]
        x: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "x")]
        y: Option<String>,
        #[arg(long, default_value_t = DEFAULT_HEIGHT)]
        height: u64,
        #[arg(long, default_value_t = 12)]
        precision: i64,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::PrecisionExhausted(_) => 3,
        Error::ConsistencyFailure(_) | Error::NotSimpleRoot | Error::SplitAssumptionViolated => 1,
        _ => 2,
    }
}

fn family(n: i64) -> BigInt {
    BigInt::from(-2) + BigInt::from(7) * BigInt::from(n)
}

fn count(a: &BigInt, b: &BigInt, q: u64) -> Result<()> {
    println!("{}", count_points(a, b, q)?);
    Ok(())
}

fn split(d: i64, p: u64, trace: Option<i64>) -> Result<()> {
    let a_p = match trace {
        Some(t) => t,
        None => {
            let t = (1..p as i64)
                .filter_map(|c| cm_model(d, c).ok())
                .filter_map(|(a, b)| trace_of_frobenius(&a, &b, p).ok())
                .find(|t| t.rem_euclid(p as i64) != 0)
                .ok_or(Error::NotSplit { d, p })?;
            println!("a_p = {t} (from a CM model)");
            t
        }
    };
    let pi = split_frobenius(d, p, a_p)?;
    let (u, v) = pi.half_sqrt_form();
    println!("pi     = {pi}  = ({u} + {v}*sqrt({d}))/2");
    println!("pi_bar = {}", pi.conj());
    println!("norm {}  trace {}", pi.norm(), pi.trace());
    Ok(())
}

fn torsion(n: i64, precision: i64) -> Result<()> {
    let a = family(n);
    let sign = if a < BigInt::from(0) { "-" } else { "+" };
    println!(
        "y^2 = x^3 {sign} {} over Q_7, precision {precision}",
        a.magnitude()
    );
    for (i, pt) in torsion7_qp(&a, precision)?.iter().enumerate() {
        match pt.coords() {
            None => println!("T{i} = O"),
            Some((x, y)) => println!("T{i} = ({x}, {y})"),
        }
    }
    Ok(())
}

fn certify(n: i64, x: &str, y: &str, precision: i64) -> Result<()> {
    let cert = certify_good(n, &parse_rational(x)?, &parse_rational(y)?, precision)?;
    println!("{}", cert.to_json());
    Ok(())
}

fn run_sweep(config: SweepConfig, out: Option<PathBuf>) -> Result<()> {
    let report = sweep(&config)?;
    print!("{}", report.render_table());
    if let Some(path) = out {
        std::fs::write(&path, report.to_json())?;
        println!("report written to {}", path.display());
    }
    Ok(())
}

fn filtration(n: i64, point: Option<(String, String)>, height: u64, precision: i64) -> Result<()> {
    let a = family(n);
    let field = make_cyclotomic(OddPrime::new(7)?, precision)?;
    let (_, av) = formal_torsion_cyclotomic(&a, &field)?;
    println!("level(A_v) over Q_7(zeta_7) = {}", av.level);
    let point = match point {
        Some((x, y)) => Some((parse_rational(&x)?, parse_rational(&y)?)),
        None => naive_point_search(n, height).map(|r| (r.x, r.y)),
    };
    let Some((x, y)) = point else {
        println!("no rational point below height {height}");
        return Ok(());
    };
    let cert = certify_good(n, &x, &y, DEFAULT_PRECISION)?;
    println!(
        "point ({}, {}): verdict {:?}, x-valuation {}",
        cert.point[0], cert.point[1], cert.verdict, cert.x_valuation
    );
    if cert.verdict == Verdict::Good {
        println!(
            "restricted level over Q_7(zeta_7) = {}",
            restrict_level_to_l(&cert)?
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::CountPoints { a, b, q } => count(&a, &b, q),
        Command::SplitPrime { d, p, trace } => split(d, p, trace),
        Command::Torsion { n, precision } => torsion(n, precision),
        Command::Certify { n, x, y, precision } => certify(n, &x, &y, precision),
        Command::Sweep {
            from,
            to,
            dataset,
            height,
            precision,
            jobs,
            out,
        } => run_sweep(
            SweepConfig {
                from,
                to,
                dataset,
                height,
                precision,
                jobs,
            },
            out,
        ),
        Command::Filtration {
            n,
            x,
            y,
            height,
            precision,
        } => filtration(n, x.zip(y), height, precision),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
