//! Insert/delete operation sequences and the stack path-complexity counts.
//!
//! A sequence is valid when no prefix holds more deletes than inserts. For a
//! stack every valid sequence has exactly one execution path, so counting
//! valid sequences is the stack's path complexity.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Op {
    Delete,
    Insert,
}

impl Op {
    pub fn symbol(self) -> char {
        match self {
            Op::Insert => 'i',
            Op::Delete => 'd',
        }
    }
}

/// A string over `{i, d}`. Not necessarily valid.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OpSequence(Vec<Op>);

impl OpSequence {
    pub fn new(ops: Vec<Op>) -> Self {
        OpSequence(ops)
    }

    pub fn ops(&self) -> &[Op] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn delete_count(&self) -> usize {
        self.0.iter().filter(|&&op| op == Op::Delete).count()
    }

    /// Length of the shortest prefix with more deletes than inserts.
    pub fn first_invalid_prefix(&self) -> Option<usize> {
        let mut height: i64 = 0;
        for (i, op) in self.0.iter().enumerate() {
            height += if *op == Op::Insert { 1 } else { -1 };
            if height < 0 {
                return Some(i + 1);
            }
        }
        None
    }

    pub fn is_valid(&self) -> bool {
        self.first_invalid_prefix().is_none()
    }

    /// Errors with the offending prefix if the sequence is not valid.
    pub fn validate(&self) -> Result<()> {
        match self.first_invalid_prefix() {
            None => Ok(()),
            Some(len) => Err(Error::InvalidSequence {
                prefix: OpSequence(self.0[..len].to_vec()).to_string(),
            }),
        }
    }

    /// Highest stage (inserts minus deletes) any prefix reaches.
    pub fn peak_height(&self) -> usize {
        let mut height: i64 = 0;
        let mut peak = 0;
        for op in &self.0 {
            height += if *op == Op::Insert { 1 } else { -1 };
            peak = peak.max(height);
        }
        peak as usize
    }
}

impl fmt::Display for OpSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0
            .iter()
            .try_for_each(|op| write!(f, "{}", op.symbol()))
    }
}

impl FromStr for OpSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .enumerate()
            .map(|(position, symbol)| match symbol {
                'i' => Ok(Op::Insert),
                'd' => Ok(Op::Delete),
                _ => Err(Error::UnknownOperation { symbol, position }),
            })
            .collect::<Result<Vec<_>>>()
            .map(OpSequence)
    }
}

impl Serialize for OpSequence {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for OpSequence {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

pub fn is_valid(seq: &OpSequence) -> bool {
    seq.is_valid()
}

fn check_nk(n: usize, k: usize) -> Result<()> {
    if k > n / 2 {
        Err(Error::OutOfRange { n, k })
    } else {
        Ok(())
    }
}

/// Valid sequences of length `n` with exactly `k` deletes, lexicographic
/// (`d` before `i`).
pub fn enumerate_valid(n: usize, k: usize) -> Result<Vec<OpSequence>> {
    check_nk(n, k)?;
    let mut out = Vec::new();
    let mut buf = Vec::with_capacity(n);
    extend_valid(n, k, 0, &mut buf, &mut |ops| {
        out.push(OpSequence(ops.to_vec()))
    });
    Ok(out)
}

/// Streams the same sequences as [`enumerate_valid`] without collecting them.
pub fn for_each_valid(n: usize, k: usize, mut visit: impl FnMut(&[Op])) -> Result<()> {
    check_nk(n, k)?;
    let mut buf = Vec::with_capacity(n);
    extend_valid(n, k, 0, &mut buf, &mut visit);
    Ok(())
}

fn extend_valid(
    n: usize,
    deletes_left: usize,
    height: usize,
    buf: &mut Vec<Op>,
    visit: &mut dyn FnMut(&[Op]),
) {
    let remaining = n - buf.len();
    if remaining == 0 {
        visit(buf);
        return;
    }
    if deletes_left > 0 && height > 0 {
        buf.push(Op::Delete);
        extend_valid(n, deletes_left - 1, height - 1, buf, visit);
        buf.pop();
    }
    if remaining > deletes_left {
        buf.push(Op::Insert);
        extend_valid(n, deletes_left, height + 1, buf, visit);
        buf.pop();
    }
}

/// Table of stack counts `P(n, k)` for `0 <= n <= max_n`.
///
/// `P(n, 0) = 1`, `P(n, k) = P(n-1, k-1) + P(n-1, k)`, and 0 outside
/// `0 <= k <= n/2`.
pub fn stack_table(max_n: usize) -> Vec<Vec<BigUint>> {
    let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
    for n in 1..=max_n {
        let prev = &rows[n - 1];
        let at = |k: usize| prev.get(k).cloned().unwrap_or_else(BigUint::zero);
        let row = (0..=n / 2)
            .map(|k| {
                if k == 0 {
                    BigUint::one()
                } else {
                    at(k - 1) + at(k)
                }
            })
            .collect();
        rows.push(row);
    }
    rows
}

/// `P(n, k)` for the stack; 0 when `k > n/2`.
pub fn stack_pnk(n: usize, k: usize) -> BigUint {
    if k > n / 2 {
        return BigUint::zero();
    }
    stack_table(n).swap_remove(n).swap_remove(k)
}

/// Number of valid sequences of length `n`.
pub fn stack_path_complexity(n: usize) -> BigUint {
    stack_table(n).swap_remove(n).into_iter().sum()
}
