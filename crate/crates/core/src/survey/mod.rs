//! Generator ingestion, naive point search, and the good-point sweep over E_n.

mod dataset;

pub use dataset::{
    ingest_generators, ingest_generators_str, naive_point_search, GeneratorRecord, Ingested,
    Rejection, Source,
};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use crate::arith::reduce_mod_u64;
use crate::certify::{certify_good, family_coefficient, GoodPointCertificate, Verdict};
use crate::error::{Error, Result};
use crate::padic::DEFAULT_PRECISION;

/// Share of Good verdicts among certified curves reported for n ∈ [−5000, 5000].
pub const REFERENCE_GOOD_FRACTION: f64 = 0.8668;
/// Curves in that range for which no generator was available.
pub const REFERENCE_SKIPPED: usize = 176;
pub const DEFAULT_HEIGHT: u64 = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Good,
    NotGood,
    NoGenerator,
    SkippedBadReduction,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub n: i64,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<Source>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<GoodPointCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub good: usize,
    pub not_good: usize,
    pub no_generator: usize,
    pub skipped_bad_reduction: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub n: i64,
    pub expected: Verdict,
    pub observed: Outcome,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceComparison {
    pub reference_good_fraction: f64,
    pub reference_skipped: usize,
    pub observed_good_fraction: Option<f64>,
    pub difference: Option<f64>,
    pub discrepancies: Vec<Discrepancy>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub from: i64,
    pub to: i64,
    pub precision: i64,
    pub height: u64,
    pub dataset: Option<String>,
    pub entries: Vec<SweepEntry>,
    pub counts: Counts,
    /// Good / (Good + NotGood); `None` when nothing was certified.
    pub good_fraction: Option<f64>,
    pub skipped_count: usize,
    /// Verdicts refer to the generator used for each n, not to E_n(Q) as a whole.
    pub per_generator_verdicts: bool,
    pub rejected_dataset_lines: Vec<Rejection>,
    pub reference: Option<ReferenceComparison>,
    pub wall_clock_seconds: f64,
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub from: i64,
    pub to: i64,
    pub dataset: Option<PathBuf>,
    pub height: u64,
    pub precision: i64,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl SweepConfig {
    pub fn new(from: i64, to: i64) -> Self {
        SweepConfig {
            from,
            to,
            dataset: None,
            height: DEFAULT_HEIGHT,
            precision: DEFAULT_PRECISION,
            jobs: None,
        }
    }
}

fn sweep_one(
    n: i64,
    dataset: &BTreeMap<i64, GeneratorRecord>,
    height: u64,
    precision: i64,
) -> SweepEntry {
    let a = family_coefficient(n);
    assert_eq!(reduce_mod_u64(&a, 7), 5, "a = −2 + 7n is 5 mod 7");
    let record = dataset
        .get(&n)
        .cloned()
        .or_else(|| naive_point_search(n, height));
    let Some(record) = record else {
        return SweepEntry {
            n,
            outcome: Outcome::NoGenerator,
            source: None,
            certificate: None,
            error: None,
        };
    };
    match certify_good(n, &record.x, &record.y, precision) {
        Ok(cert) => SweepEntry {
            n,
            outcome: if cert.verdict == Verdict::Good {
                Outcome::Good
            } else {
                Outcome::NotGood
            },
            source: Some(record.source),
            certificate: Some(cert),
            error: None,
        },
        Err(e) => SweepEntry {
            n,
            outcome: Outcome::SkippedBadReduction,
            source: Some(record.source),
            certificate: None,
            error: Some(e.to_string()),
        },
    }
}

pub fn sweep(config: &SweepConfig) -> Result<SweepReport> {
    if config.from > config.to {
        return Err(Error::InvalidInput(format!(
            "empty range [{}, {}]",
            config.from, config.to
        )));
    }
    if config.height == 0 {
        return Err(Error::InvalidInput(
            "height bound must be at least 1".into(),
        ));
    }
    let start = Instant::now();
    let ingested = match &config.dataset {
        Some(path) => Some(ingest_generators(path)?),
        None => None,
    };
    let mut by_n = BTreeMap::new();
    if let Some(ing) = &ingested {
        for r in &ing.records {
            by_n.entry(r.n).or_insert_with(|| r.clone());
        }
    }
    let (height, precision) = (config.height, config.precision);
    let run = || -> Vec<SweepEntry> {
        (config.from..=config.to)
            .into_par_iter()
            .map(|n| sweep_one(n, &by_n, height, precision))
            .collect()
    };
    let entries = match config.jobs {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    };

    let mut counts = Counts::default();
    for e in &entries {
        match e.outcome {
            Outcome::Good => counts.good += 1,
            Outcome::NotGood => counts.not_good += 1,
            Outcome::NoGenerator => counts.no_generator += 1,
            Outcome::SkippedBadReduction => counts.skipped_bad_reduction += 1,
        }
    }
    let certified = counts.good + counts.not_good;
    let counts_skipped = counts.no_generator + counts.skipped_bad_reduction;
    let good_fraction = (certified > 0).then(|| counts.good as f64 / certified as f64);
    let reference = ingested.as_ref().map(|ing| {
        let outcome_of: BTreeMap<i64, Outcome> = entries.iter().map(|e| (e.n, e.outcome)).collect();
        let discrepancies = ing
            .expected
            .iter()
            .filter_map(|&(n, expected)| {
                let observed = *outcome_of.get(&n)?;
                let agrees = matches!(
                    (expected, observed),
                    (Verdict::Good, Outcome::Good) | (Verdict::NotGood, Outcome::NotGood)
                );
                (!agrees).then_some(Discrepancy {
                    n,
                    expected,
                    observed,
                })
            })
            .collect();
        ReferenceComparison {
            reference_good_fraction: REFERENCE_GOOD_FRACTION,
            reference_skipped: REFERENCE_SKIPPED,
            observed_good_fraction: good_fraction,
            difference: good_fraction.map(|g| g - REFERENCE_GOOD_FRACTION),
            discrepancies,
        }
    });
    Ok(SweepReport {
        from: config.from,
        to: config.to,
        precision,
        height,
        dataset: config.dataset.as_ref().map(|p| p.display().to_string()),
        entries,
        counts,
        good_fraction,
        skipped_count: counts_skipped,
        per_generator_verdicts: true,
        rejected_dataset_lines: ingested.map(|i| i.rejected).unwrap_or_default(),
        reference,
        wall_clock_seconds: start.elapsed().as_secs_f64(),
    })
}

impl SweepReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON with the wall-clock field zeroed, for byte comparison between runs.
    pub fn to_json_deterministic(&self) -> String {
        let mut r = self.clone();
        r.wall_clock_seconds = 0.0;
        r.to_json()
    }

    pub fn render_table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{:>7}  {:<22}  {:<12}  {:>6}  {:>5}  point",
            "n", "outcome", "source", "lambda", "v(x)"
        );
        for e in &self.entries {
            let outcome = serde_json::to_value(e.outcome)
                .unwrap()
                .as_str()
                .unwrap_or_default()
                .to_string();
            let source = e
                .source
                .map(|s| {
                    serde_json::to_value(s)
                        .unwrap()
                        .as_str()
                        .unwrap_or_default()
                        .to_string()
                })
                .unwrap_or_else(|| "-".into());
            let (lambda, v, point) = match &e.certificate {
                Some(c) => (
                    c.lambda.to_string(),
                    c.x_valuation.to_string(),
                    format!("({}, {})", c.point[0], c.point[1]),
                ),
                None => ("-".into(), "-".into(), e.error.clone().unwrap_or_default()),
            };
            let _ = writeln!(
                s,
                "{:>7}  {:<22}  {:<12}  {:>6}  {:>5}  {}",
                e.n, outcome, source, lambda, v, point
            );
        }
        let c = &self.counts;
        let _ = writeln!(
            s,
            "good {}  not-good {}  no-generator {}  skipped-bad-reduction {}",
            c.good, c.not_good, c.no_generator, c.skipped_bad_reduction
        );
        match self.good_fraction {
            Some(g) => {
                let _ = writeln!(
                    s,
                    "good fraction {:.4} over {} certified curves",
                    g,
                    c.good + c.not_good
                );
            }
            None => {
                let _ = writeln!(s, "good fraction undefined (no certified curves)");
            }
        }
        if let Some(r) = &self.reference {
            let _ = writeln!(
                s,
                "reference {:.4} ({} skipped); {} per-n discrepancies",
                r.reference_good_fraction,
                r.reference_skipped,
                r.discrepancies.len()
            );
            for d in &r.discrepancies {
                let _ = writeln!(
                    s,
                    "  n = {}: expected {:?}, observed {:?}",
                    d.n, d.expected, d.observed
                );
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn single_curve_from_dataset() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "{{\"n\":0,\"x\":\"3\",\"y\":\"5\"}}").unwrap();
        let mut cfg = SweepConfig::new(0, 0);
        cfg.dataset = Some(f.path().to_path_buf());
        let r = sweep(&cfg).unwrap();
        assert_eq!(r.entries.len(), 1);
        assert_eq!(r.entries[0].source, Some(Source::Dataset));
        assert_eq!(r.counts.good + r.counts.not_good, 1);
        assert!(r.reference.is_some());
    }

    #[test]
    fn parallel_equals_serial() {
        let mut cfg = SweepConfig::new(-6, 6);
        cfg.height = 30;
        cfg.jobs = Some(1);
        let serial = sweep(&cfg).unwrap();
        cfg.jobs = Some(4);
        let parallel = sweep(&cfg).unwrap();
        assert_eq!(
            serial.to_json_deterministic(),
            parallel.to_json_deterministic()
        );
        assert_eq!(
            serial.skipped_count,
            serial.counts.no_generator + serial.counts.skipped_bad_reduction
        );
        assert!(serial.render_table().contains("good fraction"));
    }

    #[test]
    fn empty_range_is_rejected() {
        assert!(matches!(
            sweep(&SweepConfig::new(2, 1)),
            Err(Error::InvalidInput(_))
        ));
    }
}
