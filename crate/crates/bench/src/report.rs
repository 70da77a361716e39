use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::str::FromStr;

use serde::Serialize;
use simplex_proj::Algorithm;

use crate::error::{BenchError, Result};
use crate::harness::BenchRecord;

/// Which serial time the headline speedup is measured against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Baseline {
    /// Fastest serial method on the same inputs (absolute speedup).
    FastestSerial,
    /// The serial counterpart of the same method (relative speedup).
    SameAlgorithmSerial,
}

impl FromStr for Baseline {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fastest-serial" => Ok(Baseline::FastestSerial),
            "same-algorithm-serial" => Ok(Baseline::SameAlgorithmSerial),
            other => Err(BenchError::Config(format!("unknown baseline '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub algorithm: String,
    pub n: usize,
    pub dist: String,
    pub k: usize,
    pub median_ns: f64,
    /// Fastest serial median over this median.
    pub absolute: Option<f64>,
    /// Serial-counterpart median over this median.
    pub relative: Option<f64>,
    /// `absolute` or `relative`, per the chosen baseline.
    pub speedup: f64,
}

fn median(mut v: Vec<u64>) -> f64 {
    v.sort_unstable();
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m] as f64
    } else {
        (v[m - 1] as f64 + v[m] as f64) / 2.0
    }
}

/// Median-of-trials time per (instance family, algorithm, k) with absolute
/// and relative speedups. Serial baselines are the `k = 1` records of
/// serial methods. Fails if the chosen baseline is missing for any row.
pub fn speedup_report(records: &[BenchRecord], baseline: Baseline) -> Result<Vec<ReportRow>> {
    let mut groups: BTreeMap<(usize, String, u64, String, usize), Vec<u64>> = BTreeMap::new();
    for r in records {
        groups.entry((r.n, r.dist.clone(), r.b.to_bits(), r.algorithm.clone(), r.k)).or_default().push(r.time_ns);
    }
    let medians: BTreeMap<_, f64> = groups.into_iter().map(|(key, times)| (key, median(times))).collect();

    let mut rows = Vec::new();
    for ((n, dist, b, alg, k), &t) in &medians {
        let parsed = Algorithm::from_id(alg)?;
        let serial_of = |id: &str| medians.get(&(*n, dist.clone(), *b, id.to_string(), 1)).copied();
        let fastest = medians
            .iter()
            .filter(|((n2, d2, b2, a2, k2), _)| {
                n2 == n && d2 == dist && b2 == b && *k2 == 1 && Algorithm::from_id(a2).is_ok_and(|a| !a.is_parallel())
            })
            .map(|(_, &t)| t)
            .reduce(f64::min);
        let counterpart = serial_of(parsed.serial_equivalent().id());
        let absolute = fastest.map(|f| f / t);
        let relative = counterpart.map(|s| s / t);
        let speedup = match baseline {
            Baseline::FastestSerial => absolute,
            Baseline::SameAlgorithmSerial => relative,
        }
        .ok_or_else(|| BenchError::MissingBaseline(format!("{alg} (n={n}, dist={dist}, k={k})")))?;
        rows.push(ReportRow { algorithm: alg.clone(), n: *n, dist: dist.clone(), k: *k, median_ns: t, absolute, relative, speedup });
    }
    Ok(rows)
}

/// Parallel methods that beat their serial counterpart on a single worker.
pub fn fairness_violations(rows: &[ReportRow]) -> Vec<&ReportRow> {
    rows.iter()
        .filter(|r| r.k == 1 && Algorithm::from_id(&r.algorithm).is_ok_and(|a| a.is_parallel()))
        .filter(|r| r.relative.is_some_and(|s| s > 1.0))
        .collect()
}

pub fn write_report_csv(rows: &[ReportRow], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map_or_else(|| "-".into(), |v| format!("{v:.3}"))
}

/// Aligned plain-text table.
pub fn render_table(rows: &[ReportRow]) -> String {
    let header = ["algorithm", "n", "dist", "k", "median_ms", "absolute", "relative"];
    let body: Vec<[String; 7]> = rows
        .iter()
        .map(|r| {
            [
                r.algorithm.clone(),
                r.n.to_string(),
                r.dist.clone(),
                r.k.to_string(),
                format!("{:.3}", r.median_ns / 1e6),
                fmt_opt(r.absolute),
                fmt_opt(r.relative),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &body {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let line = |out: &mut String, cells: &[&str]| {
        let parts: Vec<String> = cells
            .iter()
            .zip(widths)
            .enumerate()
            .map(|(i, (c, w))| if i == 0 || i == 2 { format!("{c:<w$}") } else { format!("{c:>w$}") })
            .collect();
        let _ = writeln!(out, "{}", parts.join("  ").trim_end());
    };
    line(&mut out, &header);
    for row in &body {
        line(&mut out, &row.iter().map(String::as_str).collect::<Vec<_>>());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(alg: &str, k: usize, trial: usize, time_ns: u64) -> BenchRecord {
        BenchRecord {
            algorithm: alg.into(),
            n: 100,
            dist: "uniform(0,1)".into(),
            b: 1.0,
            k,
            trial,
            time_ns,
            reduced_size: 0,
            tau: 0.0,
        }
    }

    fn row<'a>(rows: &'a [ReportRow], alg: &str, k: usize) -> &'a ReportRow {
        rows.iter().find(|r| r.algorithm == alg && r.k == k).unwrap()
    }

    #[test]
    fn ratio_arithmetic() {
        let recs = vec![rec("condat", 1, 0, 2_000_000_000), rec("pcondat", 8, 0, 500_000_000)];
        let rows = speedup_report(&recs, Baseline::FastestSerial).unwrap();
        let p = row(&rows, "pcondat", 8);
        assert_eq!((p.absolute, p.relative, p.speedup), (Some(4.0), Some(4.0), 4.0));
    }

    #[test]
    fn single_core_fairness() {
        let recs = vec![
            rec("sortscan", 1, 0, 10_370_000_000),
            rec("condat", 1, 0, 242_900_000),
            rec("psortscan", 1, 0, 15_710_000_000),
        ];
        let rows = speedup_report(&recs, Baseline::SameAlgorithmSerial).unwrap();
        let p = row(&rows, "psortscan", 1);
        assert!(p.relative.unwrap() < 1.0);
        assert!(p.absolute.unwrap() < p.relative.unwrap());
        assert!(fairness_violations(&rows).is_empty());

        let faster = vec![rec("sortscan", 1, 0, 10), rec("psortscan", 1, 0, 5)];
        let rows = speedup_report(&faster, Baseline::FastestSerial).unwrap();
        assert_eq!(fairness_violations(&rows).len(), 1);
    }

    #[test]
    fn identical_times() {
        let recs = vec![rec("condat", 1, 0, 7), rec("pcondat", 4, 0, 7)];
        let rows = speedup_report(&recs, Baseline::SameAlgorithmSerial).unwrap();
        assert_eq!(row(&rows, "pcondat", 4).speedup, 1.0);
    }

    #[test]
    fn median_of_trials() {
        let recs = vec![rec("condat", 1, 0, 10), rec("condat", 1, 1, 30), rec("condat", 1, 2, 1000), rec("condat", 1, 3, 20)];
        let rows = speedup_report(&recs, Baseline::FastestSerial).unwrap();
        assert_eq!(rows[0].median_ns, 25.0);
    }

    #[test]
    fn missing_baseline_is_an_error() {
        let recs = vec![rec("pcondat", 2, 0, 5)];
        assert!(matches!(speedup_report(&recs, Baseline::FastestSerial), Err(BenchError::MissingBaseline(_))));
        let recs = vec![rec("sortscan", 1, 0, 5), rec("pcondat", 2, 0, 5)];
        assert!(speedup_report(&recs, Baseline::FastestSerial).is_ok());
        assert!(matches!(speedup_report(&recs, Baseline::SameAlgorithmSerial), Err(BenchError::MissingBaseline(_))));
    }

    #[test]
    fn table_is_aligned() {
        let recs = vec![rec("condat", 1, 0, 2_000_000), rec("pcondat", 8, 0, 500_000)];
        let text = render_table(&speedup_report(&recs, Baseline::FastestSerial).unwrap());
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].starts_with("algorithm"));
        let col = lines[0].find("median_ms").unwrap() + "median_ms".len();
        assert!(lines.iter().skip(1).all(|l| l[..col].ends_with(|c: char| c.is_ascii_digit())));
    }
}
