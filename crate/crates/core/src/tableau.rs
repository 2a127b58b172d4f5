//! Young tableaux filled with positive integers.

use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::partitions::Partition;

/// A filling of a Young diagram; rows are listed top to bottom.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FilledTableau {
    rows: Vec<Vec<usize>>,
}

impl FilledTableau {
    /// Rows must have weakly decreasing lengths and entries `≥ 1`.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let rows: Vec<Vec<usize>> = rows.into_iter().filter(|r| !r.is_empty()).collect();
        if rows.windows(2).any(|w| w[0].len() < w[1].len()) {
            return Err(invalid("row lengths must be weakly decreasing"));
        }
        if rows.iter().flatten().any(|&x| x == 0) {
            return Err(invalid("tableau entries must be positive"));
        }
        Ok(FilledTableau { rows })
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition::from_unsorted(self.rows.iter().map(Vec::len).collect())
    }

    /// Entry in row `a`, column `b` (both 0-indexed).
    pub fn entry(&self, a: usize, b: usize) -> usize {
        self.rows[a][b]
    }

    pub fn max_entry(&self) -> usize {
        self.rows.iter().flatten().copied().max().unwrap_or(0)
    }

    /// `content[v-1]` = number of entries equal to `v`, for `v = 1..=len`.
    pub fn content(&self, len: usize) -> Vec<usize> {
        let mut c = vec![0; len.max(self.max_entry())];
        for &x in self.rows.iter().flatten() {
            c[x - 1] += 1;
        }
        c
    }

    /// Rows weakly increase, columns strictly increase.
    pub fn is_semistandard(&self) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] <= w[1]));
        let cols_ok = self.rows.windows(2).all(|w| w[1].iter().zip(&w[0]).all(|(below, above)| below > above));
        rows_ok && cols_ok
    }

    /// Entries read right to left within a row, rows taken bottom to top.
    pub fn reading_word(&self) -> Vec<usize> {
        self.rows.iter().rev().flat_map(|r| r.iter().rev().copied()).collect()
    }
}

impl fmt::Display for FilledTableau {
    /// Rows separated by `/`; entries concatenated when all are single
    /// digits, comma-separated otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let compact = self.max_entry() < 10;
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                cells.join(if compact { "" } else { "," })
            })
            .collect();
        write!(f, "{}", rows.join("/"))
    }
}

impl FromStr for FilledTableau {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return FilledTableau::new(Vec::new());
        }
        let rows = s
            .split('/')
            .map(|row| {
                let row = row.trim();
                if row.contains(',') {
                    row.split(',')
                        .map(|t| t.trim().parse::<usize>().map_err(|e| invalid(format!("bad entry {t:?}: {e}"))))
                        .collect::<Result<Vec<_>>>()
                } else {
                    row.chars()
                        .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| invalid(format!("bad entry {c:?}"))))
                        .collect()
                }
            })
            .collect::<Result<Vec<_>>>()?;
        FilledTableau::new(rows)
    }
}

/// A semistandard Young tableau.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ssyt(FilledTableau);

impl Ssyt {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        Self::try_from(FilledTableau::new(rows)?)
    }

    pub fn tableau(&self) -> &FilledTableau {
        &self.0
    }

    pub fn into_tableau(self) -> FilledTableau {
        self.0
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        self.0.rows()
    }

    pub fn shape(&self) -> Partition {
        self.0.shape()
    }

    pub fn content(&self, len: usize) -> Vec<usize> {
        self.0.content(len)
    }
}

impl TryFrom<FilledTableau> for Ssyt {
    type Error = Error;

    fn try_from(t: FilledTableau) -> Result<Self> {
        if !t.is_semistandard() {
            return Err(invalid(format!("tableau {t} is not semistandard")));
        }
        Ok(Ssyt(t))
    }
}

impl FromStr for Ssyt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ssyt::try_from(s.parse::<FilledTableau>()?)
    }
}

impl fmt::Display for Ssyt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition;

    #[test]
    fn reading_word_examples() {
        let t: FilledTableau = "1123/23".parse().unwrap();
        assert_eq!(t.reading_word(), vec![3, 2, 3, 2, 1, 1]);
        assert_eq!("11".parse::<FilledTableau>().unwrap().reading_word(), vec![1, 1]);
        assert_eq!("1/2".parse::<FilledTableau>().unwrap().reading_word(), vec![2, 1]);
    }

    #[test]
    fn shape_content_and_validity() {
        let t: FilledTableau = "1123/23".parse().unwrap();
        assert_eq!(t.shape(), partition![4, 2]);
        assert_eq!(t.content(3), vec![2, 2, 2]);
        assert!(t.is_semistandard());
        assert!(!"12/12".parse::<FilledTableau>().unwrap().is_semistandard());
        assert!(!"21".parse::<FilledTableau>().unwrap().is_semistandard());
        assert!("12/12".parse::<Ssyt>().is_err());
        assert!(FilledTableau::new(vec![vec![1], vec![2, 3]]).is_err());
    }

    #[test]
    fn display_round_trip() {
        for s in ["1123/23", "1/2", "", "1,1,10/2,11"] {
            let t: FilledTableau = s.parse().unwrap();
            assert_eq!(t.to_string(), s);
        }
    }
}
