use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::path::Path;

use crate::arith::{parse_rational, render_rational};
use crate::certify::{family_coefficient, screen_rational_point, Verdict};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    Dataset,
    NaiveSearch,
}

/// A validated non-torsion point on E_n: y² = x³ − 2 + 7n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorRecord {
    pub n: i64,
    pub x: BigRational,
    pub y: BigRational,
    pub source: Source,
}

impl GeneratorRecord {
    /// Validates on-curve and non-torsion.
    pub fn new(n: i64, x: BigRational, y: BigRational, source: Source) -> Result<Self> {
        screen_rational_point(&family_coefficient(n), &x, &y)?;
        Ok(GeneratorRecord { n, x, y, source })
    }

    pub fn rendered(&self) -> [String; 2] {
        [render_rational(&self.x), render_rational(&self.y)]
    }
}

#[derive(Debug, Deserialize)]
struct Line {
    n: i64,
    x: String,
    y: String,
    /// Optional reference verdict ("good" / "not-good") for per-n comparison.
    #[serde(default)]
    expected: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rejection {
    pub line: usize,
    pub n: i64,
    pub reason: String,
}

/// Accepted records, per-record rejections, and reference verdicts when present.
#[derive(Debug, Clone, Default)]
pub struct Ingested {
    pub records: Vec<GeneratorRecord>,
    pub rejected: Vec<Rejection>,
    pub expected: Vec<(i64, Verdict)>,
}

fn parse_expected(s: &str) -> Option<Verdict> {
    match s.to_ascii_lowercase().replace(['_', ' '], "-").as_str() {
        "good" => Some(Verdict::Good),
        "not-good" | "notgood" | "bad" => Some(Verdict::NotGood),
        _ => None,
    }
}

/// Parses JSON lines {"n": int, "x": "num/den", "y": "num/den"}; blank lines are skipped.
pub fn ingest_generators_str(text: &str) -> Result<Ingested> {
    let mut out = Ingested::default();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let line: Line = serde_json::from_str(raw)
            .map_err(|e| Error::BadDataset(format!("line {line_no}: {e}")))?;
        if let Some(v) = line.expected.as_deref().and_then(parse_expected) {
            out.expected.push((line.n, v));
        }
        let parsed = parse_rational(&line.x).and_then(|x| Ok((x, parse_rational(&line.y)?)));
        let record = parsed.and_then(|(x, y)| GeneratorRecord::new(line.n, x, y, Source::Dataset));
        match record {
            Ok(r) => out.records.push(r),
            Err(e) => out.rejected.push(Rejection {
                line: line_no,
                n: line.n,
                reason: e.to_string(),
            }),
        }
    }
    Ok(out)
}

pub fn ingest_generators(path: &Path) -> Result<Ingested> {
    let text = std::fs::read_to_string(path)?;
    ingest_generators_str(&text)
}

fn is_square(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    // quadratic residues mod 64 reject most candidates cheaply
    if (0x0202_0212_0203_0213u64 >> (n & 63)) & 1 == 0 {
        return None;
    }
    let r = n.isqrt();
    (r * r == n).then_some(r)
}

/// First non-torsion point with x = u/d², |u| ≤ H d², d ≤ √H, scanning d then u ascending.
pub fn naive_point_search(n: i64, height: u64) -> Option<GeneratorRecord> {
    let a = -2 + 7 * n as i128;
    let h = height as i128;
    for d in 1..=h.isqrt().max(1) {
        let (d2, d3) = (d * d, d * d * d);
        let d6 = d3 * d3;
        for u in -h * d2..=h * d2 {
            let Some(s) = is_square(u * u * u + a * d6) else {
                continue;
            };
            let x = BigRational::new(BigInt::from(u), BigInt::from(d2));
            let y = BigRational::new(BigInt::from(s), BigInt::from(d3));
            if let Ok(r) = GeneratorRecord::new(n, x, y, Source::NaiveSearch) {
                return Some(r);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational_int;

    #[test]
    fn square_filter_is_exact() {
        for k in 0..2000i128 {
            assert_eq!(is_square(k).is_some(), k.isqrt().pow(2) == k);
        }
    }

    #[test]
    fn ingest_examples() {
        let text = "{\"n\":0,\"x\":\"3\",\"y\":\"5\"}\n{\"n\":1,\"x\":\"-1\",\"y\":\"2\"}\n\n{\"n\":0,\"x\":\"0\",\"y\":\"0\"}\n";
        let got = ingest_generators_str(text).unwrap();
        assert_eq!(got.records.len(), 2);
        assert_eq!(got.rejected.len(), 1);
        assert_eq!(got.rejected[0].line, 4);
        assert!(got.rejected[0].reason.contains("not on the curve"));
        assert!(matches!(
            ingest_generators_str("{\"n\":0,"),
            Err(Error::BadDataset(_))
        ));
    }

    #[test]
    fn expected_verdicts_are_read() {
        let got = ingest_generators_str("{\"n\":0,\"x\":\"3\",\"y\":\"5\",\"expected\":\"good\"}")
            .unwrap();
        assert_eq!(got.expected, vec![(0, Verdict::Good)]);
    }

    #[test]
    fn naive_search_examples() {
        let r = naive_point_search(0, 3).unwrap();
        assert_eq!((r.x, r.y), (rational_int(3), rational_int(5)));
        let r = naive_point_search(1, 1).unwrap();
        assert_eq!((r.x, r.y), (rational_int(-1), rational_int(2)));
        assert_eq!(naive_point_search(0, 2), None);
    }
}
