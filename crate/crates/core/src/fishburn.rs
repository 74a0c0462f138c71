//! Primitive Fishburn matrices and the subgraphs of `CRY_n` they encode.
//!
//! A primitive Fishburn matrix of size `n` is an upper-triangular 0/1
//! matrix with no zero row and no zero column. Cell `(i, j)`, `i <= j`,
//! stands for the edge `(v_i, v_{j+1})` of `K_{n+1}`, so the path
//! `v_1 -> ... -> v_{n+1}` is the diagonal:
//!
//! ```text
//!          v2 v3 v4
//!   v1  [  1  0  1 ]      edges v1v2, v1v4, v2v3, v3v4
//!   v2  [  .  1  0 ]
//!   v3  [  .  .  1 ]
//! ```
//!
//! A nonzero row `i` means `v_i` has an outgoing edge; a nonzero column `j`
//! means `v_{j+1}` has an incoming one. Together these put every vertex on
//! a `v_1 -> v_{n+1}` path, which is exactly primitive validity for
//! `a = (1, 0, ..., 0)`.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::compositions::NetflowVector;
use crate::oracle::{self, OracleConfig, OracleError, Subgraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FishburnError {
    #[error("row {0} is zero")]
    ZeroRow(usize),
    #[error("column {0} is zero")]
    ZeroColumn(usize),
    #[error("row {row} has {have} entries, expected {expected}")]
    RowLength {
        row: usize,
        have: usize,
        expected: usize,
    },
    #[error("entry {0} is not 0 or 1")]
    NonBinary(u8),
    #[error("subgraph is not a primitive face graph of CRY_{0}")]
    NotPrimitive(usize),
    #[error("size {0} is outside 1..={1}")]
    BadSize(usize, usize),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Upper-triangular 0/1 matrix without zero rows or columns.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FishburnMatrix {
    /// `rows[i][k]` is cell `(i, i + k)`, 0-based.
    rows: Vec<Vec<bool>>,
}

impl FishburnMatrix {
    /// Builds a matrix from the upper triangles of its rows: row `i`
    /// (0-based) lists cells `(i, i), ..., (i, n-1)`.
    pub fn from_upper_rows(rows: Vec<Vec<u8>>) -> Result<Self, FishburnError> {
        let n = rows.len();
        if n == 0 || n > oracle::MAX_SUBGRAPH_ORDER {
            return Err(FishburnError::BadSize(n, oracle::MAX_SUBGRAPH_ORDER));
        }
        let mut cells = Vec::with_capacity(n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n - i {
                return Err(FishburnError::RowLength {
                    row: i + 1,
                    have: row.len(),
                    expected: n - i,
                });
            }
            if let Some(&bad) = row.iter().find(|&&b| b > 1) {
                return Err(FishburnError::NonBinary(bad));
            }
            cells.push(row.into_iter().map(|b| b == 1).collect());
        }
        let m = Self { rows: cells };
        m.check()?;
        Ok(m)
    }

    fn check(&self) -> Result<(), FishburnError> {
        let n = self.size();
        for i in 1..=n {
            if !(i..=n).any(|j| self.get(i, j)) {
                return Err(FishburnError::ZeroRow(i));
            }
        }
        for j in 1..=n {
            if !(1..=j).any(|i| self.get(i, j)) {
                return Err(FishburnError::ZeroColumn(j));
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// Cell `(i, j)`, 1-based; false below the diagonal.
    pub fn get(&self, i: usize, j: usize) -> bool {
        i <= j && self.rows[i - 1][j - i]
    }

    pub fn ones(&self) -> usize {
        self.rows.iter().flatten().filter(|&&b| b).count()
    }

    /// Betti number of the corresponding graph: ones minus size.
    pub fn grade(&self) -> usize {
        self.ones() - self.size()
    }

    /// Upper triangles of the rows as 0/1 values.
    pub fn upper_rows(&self) -> Vec<Vec<u8>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|&b| u8::from(b)).collect())
            .collect()
    }

    /// Row-major upper triangle, e.g. `[[1,0,1],[1,0],[1]]`.
    pub fn to_json(&self) -> String {
        let rows: Vec<String> = self
            .upper_rows()
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(u8::to_string).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        format!("[{}]", rows.join(","))
    }
}

impl fmt::Display for FishburnMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.size();
        for i in 1..=n {
            let cells: Vec<&str> = (1..=n)
                .map(|j| match (i <= j, self.get(i, j)) {
                    (false, _) => ".",
                    (true, true) => "1",
                    (true, false) => "0",
                })
                .collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Matrix of a primitive face graph of `CRY_n`.
pub fn graph_to_matrix(h: &Subgraph) -> Result<FishburnMatrix, FishburnError> {
    let n = h.order();
    if n == 0 || !h.is_primitive() || !oracle::is_valid(h, &NetflowVector::cry(n))? {
        return Err(FishburnError::NotPrimitive(n));
    }
    let rows = (1..=n)
        .map(|i| (i..=n).map(|j| h.contains(i, j + 1)).collect())
        .collect();
    let m = FishburnMatrix { rows };
    m.check()?;
    Ok(m)
}

/// Graph with edge `(v_i, v_{j+1})` for every nonzero cell `(i, j)`.
pub fn matrix_to_graph(m: &FishburnMatrix) -> Subgraph {
    let n = m.size();
    let edges: Vec<_> = (1..=n)
        .flat_map(|i| (i..=n).map(move |j| (i, j)))
        .filter(|&(i, j)| m.get(i, j))
        .map(|(i, j)| (i, j + 1))
        .collect();
    Subgraph::from_edges(n, &edges).expect("cells map to edges of K_{n+1}")
}

/// All primitive Fishburn matrices of size `n`, by direct enumeration of
/// upper-triangular 0/1 patterns, in increasing order.
pub fn primitive_matrices(
    n: usize,
    config: &OracleConfig,
) -> Result<Vec<FishburnMatrix>, FishburnError> {
    let cap = config.max_n.min(oracle::MAX_SUBGRAPH_ORDER);
    if n == 0 || n > cap {
        return Err(FishburnError::BadSize(n, cap));
    }
    let cells = n * (n + 1) / 2;
    let mut out: Vec<FishburnMatrix> = (0..1u64 << cells)
        .into_par_iter()
        .filter_map(|bits| {
            let mut k = 0;
            let rows = (0..n)
                .map(|i| {
                    (i..n)
                        .map(|_| {
                            let b = bits >> k & 1 == 1;
                            k += 1;
                            b
                        })
                        .collect()
                })
                .collect();
            let m = FishburnMatrix { rows };
            m.check().is_ok().then_some(m)
        })
        .collect();
    out.sort();
    Ok(out)
}
