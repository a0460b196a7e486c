//! Finite-range checks standing in for `O(·)` statements.
//!
//! An `O(·)` claim cannot be decided on a finite prefix; what can be checked
//! is that a normalized ratio column does not run away. Two criteria are
//! used, both with the fixed factor [`BOUND_FACTOR`] and both evaluated on
//! exact rationals:
//!
//! * [`Criterion::Stable`]: on the upper half of the range every ratio is
//!   nonzero with a common sign and `max |r| / min |r| < 20`. Used where
//!   the ratio tends to a nonzero constant.
//! * [`Criterion::Bounded`]: `max |r|` over the upper half is below
//!   `20 * max |r|` over the lower half. Used where the ratio may tend to
//!   zero or oscillate (e.g. over primes versus composites).

use serde::Serialize;

use num_traits::{Signed, Zero};

use crate::rat::{self, Rat};

pub const BOUND_FACTOR: i64 = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Criterion {
    Stable,
    Bounded,
}

/// One row of a diagnostic table; `ratio` is `None` when the normalizing
/// denominator vanished.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub n: usize,
    pub ratio: Option<Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub label: String,
    pub rows: Vec<Row>,
}

impl Table {
    pub fn new(label: impl Into<String>) -> Self {
        Self {
            label: label.into(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, n: usize, ratio: Option<Rat>) {
        self.rows.push(Row { n, ratio });
    }

    pub fn ratios(&self) -> Vec<Rat> {
        self.rows.iter().filter_map(|r| r.ratio.clone()).collect()
    }

    pub fn get(&self, n: usize) -> Option<&Rat> {
        self.rows.iter().find(|r| r.n == n).and_then(|r| r.ratio.as_ref())
    }

    pub fn check(&self, criterion: Criterion) -> bool {
        check(&self.ratios(), criterion)
    }

    /// Rows restricted to `n >= from`.
    pub fn from_n(&self, from: usize) -> Self {
        Self {
            label: self.label.clone(),
            rows: self.rows.iter().filter(|r| r.n >= from).cloned().collect(),
        }
    }

    /// `n,ratio` CSV with a header line; skipped entries are empty.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,ratio\n");
        for row in &self.rows {
            let ratio = row.ratio.as_ref().map(rat::to_string).unwrap_or_default();
            out.push_str(&format!("{},{}\n", row.n, ratio));
        }
        out
    }

    /// `[{"n": 1, "ratio": "p/q"}, ...]`, with `null` for skipped entries.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    serde_json::json!({
                        "n": row.n,
                        "ratio": row.ratio.as_ref().map(rat::to_string),
                    })
                })
                .collect(),
        )
    }
}

pub fn check(ratios: &[Rat], criterion: Criterion) -> bool {
    match criterion {
        Criterion::Stable => is_stable(ratios),
        Criterion::Bounded => is_bounded(ratios),
    }
}

fn halves(ratios: &[Rat]) -> (&[Rat], &[Rat]) {
    ratios.split_at(ratios.len() / 2)
}

pub fn is_stable(ratios: &[Rat]) -> bool {
    let (_, upper) = halves(ratios);
    if upper.is_empty() || upper.iter().any(Zero::is_zero) {
        return false;
    }
    let positive = upper[0].is_positive();
    if upper.iter().any(|r| r.is_positive() != positive) {
        return false;
    }
    let max = upper.iter().map(Signed::abs).max().unwrap();
    let min = upper.iter().map(Signed::abs).min().unwrap();
    max < min * rat::int(BOUND_FACTOR)
}

pub fn is_bounded(ratios: &[Rat]) -> bool {
    let (lower, upper) = halves(ratios);
    if upper.is_empty() {
        return false;
    }
    let upper_max = upper.iter().map(Signed::abs).max().unwrap();
    let lower_max = lower.iter().map(Signed::abs).max().unwrap_or_else(Rat::zero);
    if lower_max.is_zero() {
        return upper_max.is_zero();
    }
    upper_max < lower_max * rat::int(BOUND_FACTOR)
}

/// True when the sequence is strictly decreasing in absolute value.
pub fn strictly_decreasing_abs(values: &[Rat]) -> bool {
    values.windows(2).all(|w| w[1].abs() < w[0].abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, int};

    #[test]
    fn stable_criterion() {
        let converging: Vec<Rat> = (1..=10).map(|n| int(3) + frac(1, n)).collect();
        assert!(is_stable(&converging));
        let growing: Vec<Rat> = (1..=20).map(|n| rat::pow(&int(2), n)).collect();
        assert!(!is_stable(&growing));
        let sign_flip = vec![int(1), int(1), int(1), int(-1)];
        assert!(!is_stable(&sign_flip));
        assert!(!is_stable(&[]));
    }

    #[test]
    fn bounded_criterion() {
        let vanishing: Vec<Rat> = (1..=20).map(|n| frac(1, 1 << n)).collect();
        assert!(is_bounded(&vanishing));
        assert!(!is_stable(&vanishing));
        let growing: Vec<Rat> = (1..=10).map(|n| rat::pow(&int(3), n)).collect();
        assert!(!is_bounded(&growing));
        assert!(is_bounded(&[int(0), int(0)]));
    }

    #[test]
    fn csv_and_json() {
        let mut t = Table::new("demo");
        t.push(1, Some(frac(1, 2)));
        t.push(2, None);
        assert_eq!(t.to_csv(), "n,ratio\n1,1/2\n2,\n");
        assert_eq!(
            t.to_json().to_string(),
            r#"[{"n":1,"ratio":"1/2"},{"n":2,"ratio":null}]"#
        );
    }
}
