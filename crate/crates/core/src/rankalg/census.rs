//! Exhaustive census over sixth-power-free integer pairs.

use rayon::prelude::*;
use serde::Serialize;

use crate::exactnum::{is_sixth_power_free, Rational, SixthPowerClass};

use super::classify::{ClassTables, Classification};
use super::rank_terms;

pub const TSV_HEADER: &str = "A\tB\tA_class\tB_class\tr1\tr2\tr3\tr4\trank\tclassify_case";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    #[serde(rename = "A")]
    pub a: i64,
    #[serde(rename = "B")]
    pub b: i64,
    #[serde(rename = "A_class")]
    pub a_class: String,
    #[serde(rename = "B_class")]
    pub b_class: String,
    pub r: [u8; 4],
    pub rank: u32,
    pub classify_case: Classification,
}

impl CensusRow {
    pub fn agrees(&self) -> bool {
        self.rank == self.classify_case.rank()
    }

    pub fn to_tsv(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.a,
            self.b,
            self.a_class,
            self.b_class,
            self.r[0],
            self.r[1],
            self.r[2],
            self.r[3],
            self.rank,
            self.classify_case.tag()
        )
    }
}

/// Sixth-power-free integers in `[-bound, bound]`, ascending.
pub fn sixth_power_free_range(bound: i64) -> Vec<i64> {
    (-bound..=bound).filter(|&n| is_sixth_power_free(n)).collect()
}

/// Census inputs: the value list with its classes, computed once.
pub struct CensusGrid {
    values: Vec<(i64, SixthPowerClass)>,
    tables: ClassTables,
}

impl CensusGrid {
    pub fn new(bound: i64) -> Self {
        let values = sixth_power_free_range(bound)
            .into_iter()
            .map(|n| (n, SixthPowerClass::of(&Rational::from(n)).expect("small integer")))
            .collect();
        CensusGrid { values, tables: ClassTables::default() }
    }

    pub fn values(&self) -> impl Iterator<Item = i64> + '_ {
        self.values.iter().map(|(n, _)| *n)
    }

    pub fn pair_count(&self) -> usize {
        self.values.len() * self.values.len()
    }

    fn row(&self, (a, ca): &(i64, SixthPowerClass), (b, cb): &(i64, SixthPowerClass)) -> CensusRow {
        let terms = rank_terms(&Rational::from(*a), &Rational::from(*b)).expect("nonzero");
        let r = [terms[0].value, terms[1].value, terms[2].value, terms[3].value];
        CensusRow {
            a: *a,
            b: *b,
            a_class: ca.to_string(),
            b_class: cb.to_string(),
            r,
            rank: r.iter().map(|&x| u32::from(x)).sum(),
            classify_case: self.tables.classify_classes(ca, cb),
        }
    }

    /// All rows with first entry among `a_index` values, in row order.
    /// Parallel over the current rayon pool; the order does not depend on it.
    pub fn rows_for(&self, a_index: std::ops::Range<usize>) -> Vec<CensusRow> {
        self.values[a_index]
            .par_iter()
            .flat_map_iter(|a| self.values.iter().map(move |b| self.row(a, b)))
            .collect()
    }

    /// Streams every row to `sink` in deterministic order, `chunk` values of
    /// `A` at a time.
    pub fn for_each_row(&self, chunk: usize, mut sink: impl FnMut(&CensusRow)) {
        let n = self.values.len();
        let mut start = 0;
        while start < n {
            let end = (start + chunk.max(1)).min(n);
            for row in self.rows_for(start..end) {
                sink(&row);
            }
            start = end;
        }
    }
}

/// Aggregate over census rows; merging is associative and commutative.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ConsistencyReport {
    pub pairs: u64,
    /// Pair counts for ranks 0..=3.
    pub histogram: [u64; 4],
    pub agreements: u64,
    /// `(A, B, formula rank, classified rank)`.
    pub disagreements: Vec<(i64, i64, u32, u32)>,
}

impl ConsistencyReport {
    pub fn record(&mut self, row: &CensusRow) {
        self.pairs += 1;
        self.histogram[row.rank as usize] += 1;
        if row.agrees() {
            self.agreements += 1;
        } else {
            self.disagreements.push((row.a, row.b, row.rank, row.classify_case.rank()));
        }
    }

    pub fn merge(mut self, other: ConsistencyReport) -> Self {
        self.pairs += other.pairs;
        for (h, o) in self.histogram.iter_mut().zip(other.histogram) {
            *h += o;
        }
        self.agreements += other.agreements;
        self.disagreements.extend(other.disagreements);
        self.disagreements.sort();
        self
    }

    pub fn is_consistent(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Compares the rank formula with the classification on every
/// sixth-power-free pair with `|A|, |B| <= bound`.
pub fn classification_consistency(bound: i64) -> ConsistencyReport {
    let grid = CensusGrid::new(bound);
    grid.values
        .par_iter()
        .map(|a| {
            let mut rep = ConsistencyReport::default();
            for b in &grid.values {
                rep.record(&grid.row(a, b));
            }
            rep
        })
        .reduce(ConsistencyReport::default, ConsistencyReport::merge)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_one() {
        let grid = CensusGrid::new(1);
        let mut rows = Vec::new();
        grid.for_each_row(1, |r| rows.push((r.a, r.b, r.rank)));
        assert_eq!(rows, vec![(-1, -1, 0), (-1, 1, 1), (1, -1, 1), (1, 1, 2)]);
        let rep = classification_consistency(1);
        assert_eq!(rep.histogram, [1, 2, 1, 0]);
        assert!(rep.is_consistent());
    }

    #[test]
    fn bound_sixteen_contains_rank_three() {
        let grid = CensusGrid::new(16);
        let mut found = None;
        grid.for_each_row(4, |r| {
            if (r.a, r.b) == (1, 16) {
                found = Some(r.clone());
            }
        });
        let row = found.expect("(1, 16) is sixth-power-free");
        assert_eq!(row.rank, 3);
        assert_eq!(row.to_tsv(), "1\t16\t1\t16\t1\t1\t0\t1\t3\trank3");
    }

    #[test]
    fn range_skips_sixth_powers() {
        let v = sixth_power_free_range(70);
        assert!(!v.contains(&64) && !v.contains(&-64) && !v.contains(&0));
        assert_eq!(v.len(), 2 * 69);
    }
}
