//! Brute-force references used by the verification suites.
//!
//! Nothing here goes through the state diagram, the shape-level transition
//! functions, or the weight-propagation counter. Successor shapes come from
//! running the keyed BST algorithms; counts come from plain enumeration.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::keyed::{keyed_realize, shape_of, KeyedTree};
use crate::sequences::{Op, OpSequence};
use crate::shape::Shape;
use crate::transitions::DeleteVariant;

/// Catalan numbers `C_0..=C_n` by the convolution `C_{m+1} = Σ C_i C_{m-i}`.
pub fn catalan_convolution(n: usize) -> Vec<u128> {
    let mut c = vec![1u128];
    for m in 0..n {
        c.push((0..=m).map(|i| c[i] * c[m - i]).sum());
    }
    c
}

/// `C(n, k)` from Pascal's triangle, additions only.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut row = vec![BigUint::one()];
    for _ in 0..n {
        let mut next = vec![BigUint::one(); row.len() + 1];
        for j in 1..row.len() {
            next[j] = &row[j - 1] + &row[j];
        }
        row = next;
    }
    row.swap_remove(k)
}

/// Ballot number `C(n, k) - C(n, k-1)`: valid sequences of length `n` with
/// `k` deletes.
pub fn ballot(n: usize, k: usize) -> BigUint {
    if k == 0 {
        return BigUint::one();
    }
    binomial(n, k) - binomial(n, k - 1)
}

/// Every string of length `n` over `{i, d}` that passes the prefix rule,
/// found by filtering all `2^n` candidates.
pub fn valid_sequences_by_filter(n: usize) -> Vec<OpSequence> {
    (0u64..1 << n)
        .map(|bits| {
            let ops = (0..n)
                .map(|i| {
                    if bits >> (n - 1 - i) & 1 == 1 {
                        Op::Insert
                    } else {
                        Op::Delete
                    }
                })
                .collect();
            OpSequence::new(ops)
        })
        .filter(|s| {
            let mut inserts = 0;
            let mut deletes = 0;
            s.ops().iter().all(|op| {
                match op {
                    Op::Insert => inserts += 1,
                    Op::Delete => deletes += 1,
                }
                deletes <= inserts
            })
        })
        .collect()
}

/// Shapes reached by inserting a key into each gap of a keyed realization.
pub fn keyed_insert_children(shape: &Shape) -> Vec<Shape> {
    let n = shape.order() as i64;
    let mut out: Vec<Shape> = (0..=n)
        .map(|gap| {
            let mut tree = realize_by_insertion(shape, 2);
            // even keys sit on nodes, so an odd key lands in exactly one gap
            tree.insert(2 * gap + 1);
            shape_of(&tree)
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Builds `shape` by plain BST inserts of keys `scale * rank` in preorder.
fn realize_by_insertion(shape: &Shape, scale: i64) -> KeyedTree {
    fn preorder(shape: &Shape, first_rank: i64, out: &mut Vec<i64>) {
        if let Some((l, r)) = shape.children() {
            let rank = first_rank + l.order() as i64;
            out.push(rank);
            preorder(l, first_rank, out);
            preorder(r, rank + 1, out);
        }
    }
    let mut ranks = Vec::with_capacity(shape.order());
    preorder(shape, 1, &mut ranks);
    KeyedTree::from_keys(ranks.into_iter().map(|r| scale * r))
}

/// Shapes reached by deleting each key of the keyed realization.
pub fn keyed_delete_children(shape: &Shape, variant: DeleteVariant) -> Vec<Shape> {
    let n = shape.order() as i64;
    let mut out: Vec<Shape> = (1..=n)
        .map(|key| {
            let mut tree = keyed_realize(shape);
            let removed = match variant {
                DeleteVariant::Standard => tree.delete_standard(key),
                DeleteVariant::Modified => tree.delete_modified(key),
            };
            assert!(removed, "realized tree holds every key in 1..=n");
            shape_of(&tree)
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// `E(s)` by depth-first enumeration of explicit state sequences, with
/// successors produced by the keyed algorithms. Exponential; small `s` only.
pub fn dfs_paths(seq: &OpSequence, variant: DeleteVariant) -> u128 {
    fn go(state: &Shape, rest: &[Op], variant: DeleteVariant) -> u128 {
        let Some((&op, tail)) = rest.split_first() else {
            return 1;
        };
        let next = match op {
            Op::Insert => keyed_insert_children(state),
            Op::Delete if state.is_empty() => return 0,
            Op::Delete => keyed_delete_children(state, variant),
        };
        next.iter().map(|s| go(s, tail, variant)).sum()
    }
    go(&Shape::empty(), seq.ops(), variant)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_prefix() {
        assert_eq!(
            catalan_convolution(10),
            [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796]
        );
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(10, 5), BigUint::from(252u32));
        assert_eq!(binomial(4, 2), BigUint::from(6u32));
        assert_eq!(binomial(3, 4), BigUint::zero());
        assert_eq!(ballot(10, 5), BigUint::from(42u32));
    }

    #[test]
    fn filtered_sequences() {
        let names: Vec<String> = valid_sequences_by_filter(4)
            .into_iter()
            .filter(|s| s.delete_count() == 2)
            .map(|s| s.to_string())
            .collect();
        assert_eq!(names, ["idid", "iidd"]);
        assert_eq!(valid_sequences_by_filter(4).len(), 6);
    }

    #[test]
    fn insertion_realizes_shape() {
        for shape in crate::shape::enumerate_shapes(5).unwrap() {
            assert_eq!(shape_of(&realize_by_insertion(&shape, 2)), shape);
        }
    }

    #[test]
    fn keyed_children_small() {
        assert_eq!(keyed_insert_children(&Shape::empty()), vec![Shape::leaf()]);
        assert_eq!(keyed_insert_children(&Shape::left_chain(2)).len(), 3);
        let perfect = Shape::node(Shape::leaf(), Shape::leaf());
        assert_eq!(
            keyed_delete_children(&perfect, DeleteVariant::Standard).len(),
            2
        );
    }

    #[test]
    fn dfs_appendix_values() {
        let e = |s: &str, v| dfs_paths(&s.parse().unwrap(), v);
        assert_eq!(e("iii", DeleteVariant::Standard), 6);
        assert_eq!(e("idi", DeleteVariant::Standard), 1);
        assert_eq!(e("iid", DeleteVariant::Standard), 2);
        assert_eq!(e("iiid", DeleteVariant::Standard), 10);
        assert_eq!(e("iiid", DeleteVariant::Modified), 8);
    }
}
