//! Execution-path counting over the state diagram.
//!
//! `E(s)` for a sequence `s` is the number of walks from the empty state whose
//! edge labels spell `s`. `p(n, k)` sums `E(s)` over valid sequences of length
//! `n` with `k` deletes; the path complexity of the class is the row sum.

mod bounds;
mod fit;

pub use bounds::{bound_table, lower_bound_table, upper_bound_table, BoundMode, BoundTable};
pub use fit::{
    eval_approx, fit_factorial_exponential, ln_factorial, FitConstants, FitResult,
    MODIFIED_REFERENCE_FIT, STANDARD_REFERENCE_FIT,
};

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram::{EdgeLists, StateDiagram};
use crate::error::{Error, Result};
use crate::sequences::{enumerate_valid, Op, OpSequence};
use crate::shape::ShapeId;
use crate::transitions::DeleteVariant;

/// How `p(n, k)` tables are computed. Both give identical tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// One weight propagation per valid sequence, sequences in parallel.
    #[default]
    PerSequence,
    /// A single propagation over all stages at once. Sequences sharing a
    /// prefix share the work for it.
    SharedPrefix,
}

/// Walk weights over one stage.
struct Walker<'a> {
    inserts: &'a [EdgeLists],
    deletes: &'a [EdgeLists],
    sizes: Vec<usize>,
}

impl<'a> Walker<'a> {
    fn new(diagram: &'a StateDiagram, variant: DeleteVariant) -> Result<Self> {
        Ok(Walker {
            inserts: diagram.insert_lists(),
            deletes: diagram.delete_lists(variant)?,
            sizes: (0..=diagram.max_stage())
                .map(|n| diagram.state_count(n))
                .collect(),
        })
    }

    /// Pushes `weights` (over `stage`) along one operation's edges.
    fn step(&self, op: Op, stage: usize, weights: &[u128], next: &mut Vec<u128>) -> Result<()> {
        let (lists, target_stage) = match op {
            Op::Insert => (&self.inserts[stage], stage + 1),
            Op::Delete => (&self.deletes[stage], stage - 1),
        };
        next.clear();
        next.resize(self.sizes[target_stage], 0);
        for (src, &w) in weights.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for &dst in &lists[src] {
                let slot = &mut next[dst as usize];
                *slot = slot.checked_add(w).ok_or(Error::Overflow)?;
            }
        }
        Ok(())
    }

    fn run(&self, ops: &[Op], mut visit: impl FnMut(usize, &[u128])) -> Result<u128> {
        let mut stage = 0;
        let mut weights = vec![1u128];
        let mut next = Vec::new();
        for &op in ops {
            self.step(op, stage, &weights, &mut next)?;
            std::mem::swap(&mut weights, &mut next);
            stage = match op {
                Op::Insert => stage + 1,
                Op::Delete => stage - 1,
            };
            visit(stage, &weights);
        }
        weights
            .iter()
            .try_fold(0u128, |acc, &w| acc.checked_add(w).ok_or(Error::Overflow))
    }
}

fn check_sequence(diagram: &StateDiagram, seq: &OpSequence) -> Result<()> {
    seq.validate()?;
    let needed = seq.peak_height();
    if needed > diagram.max_stage() {
        return Err(Error::DiagramTooSmall {
            needed,
            max_stage: diagram.max_stage(),
        });
    }
    Ok(())
}

/// `E(s)`: number of distinct state sequences realizing `seq`.
pub fn count_paths(
    diagram: &StateDiagram,
    seq: &OpSequence,
    variant: DeleteVariant,
) -> Result<BigUint> {
    let walker = Walker::new(diagram, variant)?;
    check_sequence(diagram, seq)?;
    walker.run(seq.ops(), |_, _| {}).map(BigUint::from)
}

/// Nonzero walk weights after one operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub op: char,
    pub stage: usize,
    /// `(shape encoding, number of walks ending there)`, in stage order.
    pub weights: Vec<(String, BigUint)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathTrace {
    pub sequence: OpSequence,
    pub variant: DeleteVariant,
    pub paths: BigUint,
    pub steps: Vec<TraceStep>,
}

/// [`count_paths`] plus the weight vector after every step.
pub fn count_paths_traced(
    diagram: &StateDiagram,
    seq: &OpSequence,
    variant: DeleteVariant,
) -> Result<PathTrace> {
    let walker = Walker::new(diagram, variant)?;
    check_sequence(diagram, seq)?;
    let mut steps = Vec::with_capacity(seq.len());
    let mut ops = seq.ops().iter();
    let total = walker.run(seq.ops(), |stage, weights| {
        let op = ops.next().expect("one visit per op").symbol();
        let weights = weights
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > 0)
            .map(|(index, &w)| {
                (
                    diagram.shape(ShapeId { stage, index }).encode(),
                    BigUint::from(w),
                )
            })
            .collect();
        steps.push(TraceStep { op, stage, weights });
    })?;
    Ok(PathTrace {
        sequence: seq.clone(),
        variant,
        paths: BigUint::from(total),
        steps,
    })
}

/// `p(n, k)`: sum of `E(s)` over valid sequences of length `n` with `k`
/// deletes. Sequences are counted in parallel on the current rayon pool.
pub fn p_nk(diagram: &StateDiagram, n: usize, k: usize, variant: DeleteVariant) -> Result<BigUint> {
    let walker = Walker::new(diagram, variant)?;
    let seqs = enumerate_valid(n, k)?;
    // the tallest sequence inserts first and climbs to n - k
    if n - k > diagram.max_stage() {
        return Err(Error::DiagramTooSmall {
            needed: n - k,
            max_stage: diagram.max_stage(),
        });
    }
    let partials = seqs
        .par_iter()
        .map(|s| walker.run(s.ops(), |_, _| {}))
        .collect::<Result<Vec<u128>>>()?;
    Ok(partials.into_iter().map(BigUint::from).sum())
}

/// Exact `p(n, k)` for `0 <= n <= max_n`, one delete variant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    pub variant: DeleteVariant,
    rows: Vec<Vec<BigUint>>,
}

impl CountTable {
    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `p(n, k)`, 0 outside `0 <= k <= n/2` or beyond the table.
    pub fn get(&self, n: usize, k: usize) -> BigUint {
        self.rows
            .get(n)
            .and_then(|row| row.get(k))
            .cloned()
            .unwrap_or_else(BigUint::zero)
    }

    pub fn row(&self, n: usize) -> &[BigUint] {
        &self.rows[n]
    }

    /// `P(BST, n)`.
    pub fn total(&self, n: usize) -> BigUint {
        self.rows[n].iter().sum()
    }

    pub fn totals(&self) -> Vec<BigUint> {
        (1..=self.max_n()).map(|n| self.total(n)).collect()
    }
}

/// `p(n, k)` for all `n <= max_n`.
pub fn path_table(
    diagram: &StateDiagram,
    max_n: usize,
    variant: DeleteVariant,
    strategy: Strategy,
) -> Result<CountTable> {
    if max_n > diagram.max_stage() {
        return Err(Error::DiagramTooSmall {
            needed: max_n,
            max_stage: diagram.max_stage(),
        });
    }
    let rows = match strategy {
        Strategy::PerSequence => {
            let mut rows = vec![vec![BigUint::one()]];
            for n in 1..=max_n {
                rows.push(
                    (0..=n / 2)
                        .map(|k| p_nk(diagram, n, k, variant))
                        .collect::<Result<_>>()?,
                );
            }
            rows
        }
        Strategy::SharedPrefix => shared_prefix_rows(diagram, max_n, variant)?,
    };
    Ok(CountTable { variant, rows })
}

/// After `n` steps of the all-sequences walk, every walk on stage `n - 2k`
/// belongs to a sequence with exactly `k` deletes.
fn shared_prefix_rows(
    diagram: &StateDiagram,
    max_n: usize,
    variant: DeleteVariant,
) -> Result<Vec<Vec<BigUint>>> {
    let walker = Walker::new(diagram, variant)?;
    let mut weights: Vec<Vec<u128>> = (0..=max_n)
        .map(|s| vec![0; diagram.state_count(s)])
        .collect();
    weights[0][0] = 1;
    let mut rows = vec![vec![BigUint::one()]];
    let mut scratch = Vec::new();
    for n in 1..=max_n {
        let mut next: Vec<Vec<u128>> = (0..=max_n)
            .map(|s| vec![0; diagram.state_count(s)])
            .collect();
        // stages with the wrong parity hold nothing
        for stage in ((n - 1) % 2..n).step_by(2) {
            let ops: &[Op] = if stage == 0 {
                &[Op::Insert]
            } else {
                &[Op::Insert, Op::Delete]
            };
            for &op in ops {
                walker.step(op, stage, &weights[stage], &mut scratch)?;
                let target = if op == Op::Insert {
                    stage + 1
                } else {
                    stage - 1
                };
                for (slot, w) in next[target].iter_mut().zip(&scratch) {
                    *slot = slot.checked_add(*w).ok_or(Error::Overflow)?;
                }
            }
        }
        weights = next;
        let row = (0..=n / 2)
            .map(|k| weights[n - 2 * k].iter().map(|&w| BigUint::from(w)).sum())
            .collect();
        rows.push(row);
    }
    Ok(rows)
}

/// `P(BST, n)` for one variant, building the diagram it needs.
pub fn total_path_complexity(n: usize, variant: DeleteVariant) -> Result<BigUint> {
    let diagram = crate::diagram::build_diagram(n, &[variant])?;
    Ok(path_table(&diagram, n, variant, Strategy::SharedPrefix)?.total(n))
}

/// Pairing of the unknown delete multiplier with the previous row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MultiplierConvention {
    /// `p(n,k) = p(n-1,k-1)·f + p(n-1,k)·(n-2k)`: the last operation is a
    /// delete from a length-(n-1) prefix with k-1 deletes.
    DeleteRow,
    /// Roles swapped: `p(n,k) = p(n-1,k)·f + p(n-1,k-1)·(n-2k)`.
    InsertRow,
}

/// The multiplier `f(n, k)` that would make the row recurrence exact, given
/// the computed table.
pub fn effective_delete_multiplier(
    table: &CountTable,
    n: usize,
    k: usize,
    convention: MultiplierConvention,
) -> Result<BigRational> {
    if k == 0 || k > n / 2 || n > table.max_n() {
        return Err(Error::OutOfRange { n, k });
    }
    let insert_factor = BigUint::from(n - 2 * k);
    let (scaled, divisor) = match convention {
        MultiplierConvention::DeleteRow => (table.get(n - 1, k), table.get(n - 1, k - 1)),
        MultiplierConvention::InsertRow => (table.get(n - 1, k - 1), table.get(n - 1, k)),
    };
    if divisor.is_zero() {
        return Err(Error::ZeroDenominator { n, k });
    }
    let numer = to_signed(table.get(n, k)) - to_signed(scaled * insert_factor);
    Ok(BigRational::new(numer, to_signed(divisor)))
}

fn to_signed(v: BigUint) -> num_bigint::BigInt {
    num_bigint::BigInt::from(v)
}

/// `P1 / P2` rounded half-up to two decimals, e.g. `"1.33"`.
pub fn ratio_2dp(numer: &BigUint, denom: &BigUint) -> String {
    // round(100·a/b) = floor((200·a + b) / 2b)
    let hundredths = (numer * 200u32 + denom).div_floor(&(denom * 2u32));
    let (whole, frac) = hundredths.div_rem(&BigUint::from(100u32));
    format!("{whole}.{frac:0>2}")
}

/// `(n, P1(n)/P2(n))` for `1 <= n <= max_n` of both tables.
pub fn ratio_table(standard: &CountTable, modified: &CountTable) -> Vec<(usize, String)> {
    let max_n = standard.max_n().min(modified.max_n());
    (1..=max_n)
        .map(|n| (n, ratio_2dp(&standard.total(n), &modified.total(n))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::build_diagram;

    fn seq(s: &str) -> OpSequence {
        s.parse().unwrap()
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn small_sequences() {
        let d = build_diagram(4, &DeleteVariant::ALL).unwrap();
        let e = |s, v| count_paths(&d, &seq(s), v).unwrap();
        assert_eq!(e("iii", DeleteVariant::Standard), big(6));
        assert_eq!(e("idi", DeleteVariant::Standard), big(1));
        assert_eq!(e("iid", DeleteVariant::Standard), big(2));
        assert_eq!(e("iiid", DeleteVariant::Standard), big(10));
        assert_eq!(e("iiid", DeleteVariant::Modified), big(8));
        assert_eq!(e("", DeleteVariant::Standard), big(1));
    }

    #[test]
    fn count_paths_errors() {
        let d = build_diagram(2, &[DeleteVariant::Standard]).unwrap();
        assert_eq!(
            count_paths(&d, &seq("idd"), DeleteVariant::Standard),
            Err(Error::InvalidSequence {
                prefix: "idd".into()
            })
        );
        assert_eq!(
            count_paths(&d, &seq("iii"), DeleteVariant::Standard),
            Err(Error::DiagramTooSmall {
                needed: 3,
                max_stage: 2
            })
        );
        assert_eq!(
            count_paths(&d, &seq("ii"), DeleteVariant::Modified),
            Err(Error::MissingVariant(DeleteVariant::Modified))
        );
        // a long sequence that never climbs past stage 2 fits
        assert_eq!(
            count_paths(&d, &seq("ididididid"), DeleteVariant::Standard).unwrap(),
            big(1)
        );
    }

    #[test]
    fn p_nk_examples() {
        let d = build_diagram(4, &DeleteVariant::ALL).unwrap();
        assert_eq!(p_nk(&d, 3, 0, DeleteVariant::Standard).unwrap(), big(6));
        assert_eq!(p_nk(&d, 3, 1, DeleteVariant::Standard).unwrap(), big(3));
        assert_eq!(p_nk(&d, 4, 1, DeleteVariant::Standard).unwrap(), big(16));
        assert_eq!(p_nk(&d, 4, 1, DeleteVariant::Modified).unwrap(), big(14));
        assert_eq!(
            p_nk(&d, 4, 3, DeleteVariant::Modified),
            Err(Error::OutOfRange { n: 4, k: 3 })
        );
    }

    #[test]
    fn strategies_agree() {
        let d = build_diagram(8, &DeleteVariant::ALL).unwrap();
        for v in DeleteVariant::ALL {
            let a = path_table(&d, 8, v, Strategy::PerSequence).unwrap();
            let b = path_table(&d, 8, v, Strategy::SharedPrefix).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn appendix_totals() {
        assert_eq!(
            total_path_complexity(3, DeleteVariant::Standard).unwrap(),
            big(9)
        );
        assert_eq!(
            total_path_complexity(4, DeleteVariant::Standard).unwrap(),
            big(43)
        );
        assert_eq!(
            total_path_complexity(4, DeleteVariant::Modified).unwrap(),
            big(41)
        );
    }

    #[test]
    fn multipliers() {
        let d = build_diagram(4, &[DeleteVariant::Standard]).unwrap();
        let t = path_table(&d, 4, DeleteVariant::Standard, Strategy::SharedPrefix).unwrap();
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        let f = |n, k, c| effective_delete_multiplier(&t, n, k, c).unwrap();
        assert_eq!(f(2, 1, MultiplierConvention::DeleteRow), r(1, 1));
        assert_eq!(f(3, 1, MultiplierConvention::DeleteRow), r(1, 1));
        assert_eq!(f(4, 1, MultiplierConvention::DeleteRow), r(5, 3));
        // (16 - 6·2) / 3
        assert_eq!(f(4, 1, MultiplierConvention::InsertRow), r(4, 3));
        // p(3,1) = 3 = p(2,1)·f + p(2,0)·1 = f + 2
        assert_eq!(f(3, 1, MultiplierConvention::InsertRow), r(1, 1));
        assert_eq!(
            effective_delete_multiplier(&t, 2, 1, MultiplierConvention::InsertRow),
            Err(Error::ZeroDenominator { n: 2, k: 1 })
        );
        assert_eq!(
            effective_delete_multiplier(&t, 4, 0, MultiplierConvention::DeleteRow),
            Err(Error::OutOfRange { n: 4, k: 0 })
        );
    }

    #[test]
    fn ratios_round_half_up() {
        assert_eq!(ratio_2dp(&big(9), &big(9)), "1.00");
        assert_eq!(ratio_2dp(&big(43), &big(41)), "1.05");
        assert_eq!(ratio_2dp(&big(2005), &big(1000)), "2.01");
        assert_eq!(ratio_2dp(&big(2004), &big(1000)), "2.00");
        assert_eq!(ratio_2dp(&big(1), &big(3)), "0.33");
    }

    #[test]
    fn trace_reports_weights() {
        let d = build_diagram(3, &[DeleteVariant::Standard]).unwrap();
        let trace = count_paths_traced(&d, &seq("iid"), DeleteVariant::Standard).unwrap();
        assert_eq!(trace.paths, big(2));
        assert_eq!(trace.steps.len(), 3);
        assert_eq!(trace.steps[2].weights, vec![("100".to_string(), big(2))]);
        assert_eq!(trace.steps[1].weights.len(), 2);
    }
}
