//! Young tableaux: arbitrary bijective fillings and standard tableaux.

use std::fmt;

use crate::error::{Error, Result};
use crate::partition::Partition;

/// A bijective filling of the Young frame of `shape` with `1..=N`.
///
/// Rows need not increase; Young symmetrizers are defined for any filling.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tableau {
    shape: Partition,
    rows: Vec<Vec<u8>>,
}

impl Tableau {
    pub fn new(rows: Vec<Vec<u8>>) -> Result<Self> {
        let parts: Vec<u8> = rows.iter().map(|r| r.len() as u8).collect();
        let shape = Partition::new(parts)
            .map_err(|_| Error::InvalidTableau("row lengths do not form a partition".into()))?;
        let n = shape.n();
        let mut seen = vec![false; n + 1];
        for row in &rows {
            for &v in row {
                if v == 0 || v as usize > n || seen[v as usize] {
                    return Err(Error::InvalidTableau(format!(
                        "entries are not a bijection onto 1..={n}"
                    )));
                }
                seen[v as usize] = true;
            }
        }
        Ok(Tableau { shape, rows })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn n(&self) -> usize {
        self.shape.n()
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    /// Entries of column `c` (0-based), top to bottom.
    pub fn column(&self, c: usize) -> Vec<u8> {
        self.rows
            .iter()
            .filter_map(|row| row.get(c).copied())
            .collect()
    }

    pub fn num_columns(&self) -> usize {
        self.rows[0].len()
    }

    /// Row-reading word: rows concatenated top to bottom.
    pub fn reading_word(&self) -> Vec<u8> {
        self.rows.iter().flatten().copied().collect()
    }

    pub fn is_standard(&self) -> bool {
        for row in &self.rows {
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
        }
        for c in 0..self.num_columns() {
            let col = self.column(c);
            if col.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
        }
        true
    }
}

impl fmt::Debug for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "[{}]", rows.join(" / "))
    }
}

/// A tableau whose rows and columns strictly increase.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StandardTableau(Tableau);

impl StandardTableau {
    pub fn new(rows: Vec<Vec<u8>>) -> Result<Self> {
        let t = Tableau::new(rows)?;
        if !t.is_standard() {
            return Err(Error::InvalidTableau(format!("{t:?} is not standard")));
        }
        Ok(StandardTableau(t))
    }

    pub fn tableau(&self) -> &Tableau {
        &self.0
    }

    pub fn shape(&self) -> &Partition {
        self.0.shape()
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        self.0.rows()
    }
}

impl fmt::Debug for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.0, f)
    }
}

/// All standard tableaux of shape `shape`, sorted by row-reading word.
///
/// This order is the canonical basis order used throughout the crate.
pub fn standard_tableaux(shape: &Partition) -> Vec<StandardTableau> {
    let n = shape.n();
    let parts = shape.parts();
    let mut rows: Vec<Vec<u8>> = parts.iter().map(|&len| Vec::with_capacity(len as usize)).collect();
    let mut out = Vec::new();

    fn rec(
        value: u8,
        n: usize,
        parts: &[u8],
        rows: &mut Vec<Vec<u8>>,
        out: &mut Vec<StandardTableau>,
    ) {
        if value as usize > n {
            out.push(StandardTableau(Tableau::new(rows.clone()).unwrap()));
            return;
        }
        for r in 0..parts.len() {
            let c = rows[r].len();
            if c >= parts[r] as usize {
                continue;
            }
            // Row increase is automatic (values placed in increasing order);
            // the column constraint needs the cell above to be filled.
            if r > 0 && rows[r - 1].len() <= c {
                continue;
            }
            rows[r].push(value);
            rec(value + 1, n, parts, rows, out);
            rows[r].pop();
        }
    }

    rec(1, n, parts, &mut rows, &mut out);
    out.sort_by_key(|t| t.tableau().reading_word());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_hook_formula() {
        for n in 1..=7 {
            for shape in Partition::all(n) {
                let tabs = standard_tableaux(&shape);
                assert_eq!(tabs.len() as u64, shape.dimension(), "shape {shape}");
            }
        }
    }

    #[test]
    fn single_row_is_unique() {
        let shape = Partition::new(vec![5]).unwrap();
        let tabs = standard_tableaux(&shape);
        assert_eq!(tabs.len(), 1);
        assert_eq!(tabs[0].rows(), &[vec![1, 2, 3, 4, 5]]);
    }

    #[test]
    fn two_one_has_two() {
        let shape = Partition::new(vec![2, 1]).unwrap();
        let tabs = standard_tableaux(&shape);
        assert_eq!(tabs.len(), 2);
        assert_eq!(tabs[0].rows(), &[vec![1, 2], vec![3]]);
        assert_eq!(tabs[1].rows(), &[vec![1, 3], vec![2]]);
    }

    #[test]
    fn four_one_order() {
        let shape = Partition::new(vec![4, 1]).unwrap();
        let tabs = standard_tableaux(&shape);
        let second_rows: Vec<u8> = tabs.iter().map(|t| t.rows()[1][0]).collect();
        assert_eq!(second_rows, vec![5, 4, 3, 2]);
    }

    #[test]
    fn nonstandard_filling_is_a_valid_tableau() {
        let t = Tableau::new(vec![vec![5, 4, 2, 1], vec![3]]).unwrap();
        assert!(!t.is_standard());
        assert_eq!(t.column(0), vec![5, 3]);
        assert!(StandardTableau::new(vec![vec![5, 4, 2, 1], vec![3]]).is_err());
    }
}
