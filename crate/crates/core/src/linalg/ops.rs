use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

/// A unimodular elementary row or column operation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ElementaryOp {
    /// `row[dst] += factor * row[src]`
    AddRow {
        src: usize,
        dst: usize,
        #[serde(with = "crate::bigjson::scalar")]
        factor: BigInt,
    },
    /// `col[dst] += factor * col[src]`
    AddCol {
        src: usize,
        dst: usize,
        #[serde(with = "crate::bigjson::scalar")]
        factor: BigInt,
    },
    SwapRows(usize, usize),
    SwapCols(usize, usize),
    NegateRow(usize),
    NegateCol(usize),
}

impl ElementaryOp {
    pub fn is_row_op(&self) -> bool {
        matches!(
            self,
            ElementaryOp::AddRow { .. } | ElementaryOp::SwapRows(..) | ElementaryOp::NegateRow(_)
        )
    }

    /// Applies a row operation to a column vector; column operations leave it
    /// untouched.
    pub fn apply_to_vector(&self, v: &mut [BigInt]) {
        match self {
            ElementaryOp::AddRow { src, dst, factor } => {
                let add = &v[*src] * factor;
                v[*dst] += add;
            }
            ElementaryOp::SwapRows(a, b) => v.swap(*a, *b),
            ElementaryOp::NegateRow(i) => v[*i] = -std::mem::take(&mut v[*i]),
            _ => {}
        }
    }
}

impl fmt::Display for ElementaryOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn term(f: &mut fmt::Formatter<'_>, factor: &BigInt, tag: char, src: usize) -> fmt::Result {
            if factor.is_one() {
                write!(f, "{tag}{src}")
            } else if (-factor).is_one() {
                write!(f, "-{tag}{src}")
            } else {
                write!(f, "{factor}*{tag}{src}")
            }
        }
        match self {
            ElementaryOp::AddRow { src, dst, factor } => {
                write!(f, "R{dst} += ")?;
                term(f, factor, 'R', *src)
            }
            ElementaryOp::AddCol { src, dst, factor } => {
                write!(f, "C{dst} += ")?;
                term(f, factor, 'C', *src)
            }
            ElementaryOp::SwapRows(a, b) => write!(f, "R{a} <-> R{b}"),
            ElementaryOp::SwapCols(a, b) => write!(f, "C{a} <-> C{b}"),
            ElementaryOp::NegateRow(i) => write!(f, "R{i} *= -1"),
            ElementaryOp::NegateCol(j) => write!(f, "C{j} *= -1"),
        }
    }
}

/// Renders an operation log as one operation per line.
pub fn format_log(ops: &[ElementaryOp]) -> String {
    let mut out = String::new();
    for op in ops {
        out.push_str(&op.to_string());
        out.push('\n');
    }
    out
}

pub(crate) fn add_row(src: usize, dst: usize, factor: BigInt) -> Option<ElementaryOp> {
    (!factor.is_zero()).then_some(ElementaryOp::AddRow { src, dst, factor })
}

pub(crate) fn add_col(src: usize, dst: usize, factor: BigInt) -> Option<ElementaryOp> {
    (!factor.is_zero()).then_some(ElementaryOp::AddCol { src, dst, factor })
}
