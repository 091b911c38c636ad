//! Irreducibility of highest-weight modules of shifted Yangians through the
//! standard-tableau criterion on the roots of the Drinfeld polynomials.

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

/// Direction in which entries must strictly increase along each column.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ColumnOrder {
    /// `a[i+1][c] < a[i][c]`: values grow from the bottom row upwards.
    #[default]
    BottomToTop,
    /// `a[i][c] < a[i+1][c]`.
    TopToBottom,
}

impl ColumnOrder {
    pub fn name(self) -> &'static str {
        match self {
            ColumnOrder::BottomToTop => "bottom-to-top",
            ColumnOrder::TopToBottom => "top-to-bottom",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "bottom-to-top" => Ok(ColumnOrder::BottomToTop),
            "top-to-bottom" => Ok(ColumnOrder::TopToBottom),
            _ => Err(Error::InvalidArgument(format!("unknown column order `{text}`"))),
        }
    }
}

/// Roots `a[i][1] <= ... <= a[i][lambda_i]` of `P_i(u) = prod_j (u + a[i][j])`
/// arranged in rows of a Young diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HighestWeightTableau {
    rows: Vec<Vec<Scalar>>,
}

impl HighestWeightTableau {
    /// Rows are sorted; their lengths must form a partition.
    pub fn new(mut rows: Vec<Vec<Scalar>>) -> Result<Self> {
        if rows.is_empty() || rows.iter().any(Vec::is_empty) {
            return Err(Error::MalformedTableau("rows must be nonempty".into()));
        }
        if rows.windows(2).any(|w| w[0].len() < w[1].len()) {
            return Err(Error::MalformedTableau("row lengths must weakly decrease".into()));
        }
        for row in &mut rows {
            row.sort();
        }
        Ok(HighestWeightTableau { rows })
    }

    /// Checks the rows against a declared shape.
    pub fn with_shape(shape: &[usize], rows: Vec<Vec<Scalar>>) -> Result<Self> {
        if shape.len() != rows.len() || shape.iter().zip(&rows).any(|(l, r)| *l != r.len()) {
            return Err(Error::MalformedTableau(format!(
                "rows do not fit the shape {shape:?}"
            )));
        }
        Self::new(rows)
    }

    /// Parses a shape `2,1` and rows `1,2;0`.
    pub fn parse(shape: &str, rows: &str) -> Result<Self> {
        let shape: Vec<usize> = shape
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::MalformedTableau(format!("bad shape entry `{s}`")))
            })
            .collect::<Result<_>>()?;
        let rows: Vec<Vec<Scalar>> = rows
            .split(';')
            .map(|r| r.split(',').map(|s| scalar::parse(s.trim())).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        Self::with_shape(&shape, rows)
    }

    pub fn shape(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    /// Cells `(row, column)` (0-based, upper cell) where the column condition
    /// fails between rows `row` and `row + 1`.
    pub fn column_violations(&self, order: ColumnOrder) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.rows.len().saturating_sub(1) {
            for c in 0..self.rows[i + 1].len() {
                let (upper, lower) = (&self.rows[i][c], &self.rows[i + 1][c]);
                let ok = match order {
                    ColumnOrder::BottomToTop => lower < upper,
                    ColumnOrder::TopToBottom => upper < lower,
                };
                if !ok {
                    out.push((i, c));
                }
            }
        }
        out
    }

    pub fn is_irreducible(&self, order: ColumnOrder) -> bool {
        self.column_violations(order).is_empty()
    }

    /// `P_i(u)` as text, one per row.
    pub fn polynomials(&self) -> Vec<String> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|a| {
                        if a.is_negative() {
                            format!("(u - {})", scalar::to_string(&-a.clone()))
                        } else if a.is_zero() {
                            "u".to_string()
                        } else {
                            format!("(u + {})", scalar::to_string(a))
                        }
                    })
                    .collect::<Vec<_>>()
                    .join("")
            })
            .collect()
    }

    pub fn to_json(&self, order: ColumnOrder) -> Value {
        json!({
            "shape": self.shape(),
            "rows": self.rows.iter().map(|r| r.iter().map(scalar::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "convention": order.name(),
            "irreducible": self.is_irreducible(order),
            "violations": self.column_violations(order).iter().map(|(r, c)| json!([r + 1, c + 1])).collect::<Vec<_>>(),
            "polynomials": self.polynomials(),
        })
    }
}
