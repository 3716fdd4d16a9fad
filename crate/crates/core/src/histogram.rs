//! Size histograms and their tab-separated text form.
//!
//! ```text
//! # trendlab: 0.1.0
//! # lambda: 0.3333333
//! # size    count    fraction
//! 1    17934    0.7173
//! 2    3411    0.13644
//! ```
//!
//! Lines starting with `#` are headers; `key: value` headers are returned by
//! [`SizeHistogram::parse_table`] so tools can recover run parameters.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeHistogram {
    counts: BTreeMap<u64, u64>,
    n: u64,
}

impl SizeHistogram {
    pub fn from_sizes(sizes: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut counts = BTreeMap::new();
        for s in sizes {
            *counts.entry(s).or_insert(0) += 1;
        }
        Self::from_counts(counts)
    }

    /// Zero counts are dropped; a size of 0 is rejected.
    pub fn from_counts(counts: BTreeMap<u64, u64>) -> Result<Self> {
        if counts.contains_key(&0) {
            return Err(Error::Domain("sizes must be at least 1".into()));
        }
        let counts: BTreeMap<u64, u64> = counts.into_iter().filter(|&(_, c)| c > 0).collect();
        let n = counts.values().sum();
        Ok(SizeHistogram { counts, n })
    }

    pub fn counts(&self) -> &BTreeMap<u64, u64> {
        &self.counts
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn count(&self, size: u64) -> u64 {
        self.counts.get(&size).copied().unwrap_or(0)
    }

    pub fn fraction(&self, size: u64) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            self.count(size) as f64 / self.n as f64
        }
    }

    pub fn fractions(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        self.counts.iter().map(move |(&s, &c)| (s, c as f64 / self.n as f64))
    }

    pub fn max_size(&self) -> Option<u64> {
        self.counts.keys().next_back().copied()
    }

    /// Sum of size × count.
    pub fn total_size(&self) -> u64 {
        self.counts.iter().map(|(&s, &c)| s * c).sum()
    }

    pub fn mean_size(&self) -> f64 {
        self.total_size() as f64 / self.n as f64
    }

    /// Every observation, in ascending order.
    pub fn observations(&self) -> impl Iterator<Item = u64> + '_ {
        self.counts
            .iter()
            .flat_map(|(&s, &c)| std::iter::repeat_n(s, c as usize))
    }

    /// Copy with one observation of the largest size removed.
    pub fn without_largest(&self) -> Self {
        let mut counts = self.counts.clone();
        if let Some(mut last) = counts.last_entry() {
            *last.get_mut() -= 1;
            if *last.get() == 0 {
                last.remove();
            }
        }
        let n = counts.values().sum();
        SizeHistogram { counts, n }
    }

    pub fn merge(&mut self, other: &SizeHistogram) {
        for (&s, &c) in &other.counts {
            *self.counts.entry(s).or_insert(0) += c;
        }
        self.n += other.n;
    }

    /// Renders the table with `key: value` header lines.
    pub fn to_table(&self, headers: &[(&str, String)]) -> String {
        let mut out = String::new();
        for (k, v) in headers {
            let _ = writeln!(out, "# {k}: {v}");
        }
        out.push_str("# size\tcount\tfraction\n");
        for (s, f) in self.fractions() {
            let _ = writeln!(out, "{s}\t{}\t{f}", self.counts[&s]);
        }
        out
    }

    /// Parses a table produced by [`to_table`](Self::to_table).
    ///
    /// The fraction column must agree with `count / n`; malformed lines are
    /// reported with their 1-based line number.
    pub fn parse_table(text: &str) -> Result<(Vec<(String, String)>, SizeHistogram)> {
        let mut headers = Vec::new();
        let mut rows = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim_end_matches('\r');
            if let Some(rest) = line.strip_prefix('#') {
                if let Some((k, v)) = rest.split_once(": ") {
                    headers.push((k.trim().to_string(), v.trim().to_string()));
                }
                continue;
            }
            if line.trim().is_empty() {
                continue;
            }
            let bad = |reason: String| Error::Parse { line: line_no, reason };
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 3 {
                return Err(bad(format!("expected 3 tab-separated fields, found {}", fields.len())));
            }
            let size: u64 = fields[0].parse().map_err(|e| bad(format!("size `{}`: {e}", fields[0])))?;
            let count: u64 = fields[1].parse().map_err(|e| bad(format!("count `{}`: {e}", fields[1])))?;
            let fraction: f64 = fields[2].parse().map_err(|e| bad(format!("fraction `{}`: {e}", fields[2])))?;
            if size == 0 {
                return Err(bad("size must be at least 1".into()));
            }
            rows.push((line_no, size, count, fraction));
        }
        let mut counts = BTreeMap::new();
        for &(line, size, count, _) in &rows {
            if counts.insert(size, count).is_some() {
                return Err(Error::Parse {
                    line,
                    reason: format!("duplicate size {size}"),
                });
            }
        }
        let hist = SizeHistogram::from_counts(counts)?;
        for &(line, _, count, fraction) in &rows {
            let expected = count as f64 / hist.n as f64;
            if (expected - fraction).abs() > 1e-9 {
                return Err(Error::Parse {
                    line,
                    reason: format!("fraction {fraction} disagrees with count {count}/{}", hist.n),
                });
            }
        }
        Ok((headers, hist))
    }
}
