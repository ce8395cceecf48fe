//! Row recurrences that estimate `p(n, k)` from below and above.
//!
//! Lower: `P(n,k) = P(n-1,k-1)·(1 + ⌊(n-2k+1)/2⌋)/2 + P(n-1,k)·(n-2k)`.
//! Upper: `P(n,k) = (P(n-1,k-1) + P(n-1,k))·(n-2k)`.
//! Both start from `P(n,0) = n!` and read 0 outside `0 <= k <= n/2`.
//!
//! The upper recurrence multiplies by `n-2k`, which is 0 when the last delete
//! lands on stage 0, so `P_UB(2) = 2` falls below the true count of 3.
//! [`BoundMode::UpperClamped`] uses `max(1, n-2k)` instead.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundMode {
    Lower,
    Upper,
    UpperClamped,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundTable {
    pub mode: BoundMode,
    rows: Vec<Vec<BigRational>>,
}

impl BoundTable {
    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn get(&self, n: usize, k: usize) -> BigRational {
        self.rows
            .get(n)
            .and_then(|row| row.get(k))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn total(&self, n: usize) -> BigRational {
        self.rows[n].iter().sum()
    }

    /// Row total rounded down.
    pub fn floor_total(&self, n: usize) -> BigUint {
        self.total(n)
            .floor()
            .to_integer()
            .to_biguint()
            .expect("bound entries are nonnegative")
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

pub fn bound_table(max_n: usize, mode: BoundMode) -> BoundTable {
    let mut rows: Vec<Vec<BigRational>> = vec![vec![BigRational::one()]];
    for n in 1..=max_n {
        let prev = &rows[n - 1];
        let at = |k: usize| prev.get(k).cloned().unwrap_or_else(BigRational::zero);
        let row = (0..=n / 2)
            .map(|k| {
                if k == 0 {
                    return BigRational::from_integer(factorial(n));
                }
                let stage = (n - 2 * k) as i64;
                let int = |v: i64| BigRational::from_integer(BigInt::from(v));
                match mode {
                    BoundMode::Lower => {
                        let avg_leaves =
                            BigRational::new(BigInt::from(1 + (stage + 1) / 2), BigInt::from(2));
                        at(k - 1) * avg_leaves + at(k) * int(stage)
                    }
                    BoundMode::Upper => (at(k - 1) + at(k)) * int(stage),
                    BoundMode::UpperClamped => (at(k - 1) + at(k)) * int(stage.max(1)),
                }
            })
            .collect();
        rows.push(row);
    }
    BoundTable { mode, rows }
}

pub fn lower_bound_table(max_n: usize) -> BoundTable {
    bound_table(max_n, BoundMode::Lower)
}

pub fn upper_bound_table(max_n: usize, clamped: bool) -> BoundTable {
    bound_table(
        max_n,
        if clamped {
            BoundMode::UpperClamped
        } else {
            BoundMode::Upper
        },
    )
}
