//! Invariant suites across every module, run at a configurable scale.
//!
//! Each check returns a named pass/fail outcome with a short detail line.
//! The first counterexample found is reported; checks do not stop each other.

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::complexity::{count_paths, path_table, CountTable, Strategy};
use crate::diagram::StateDiagram;
use crate::error::Result;
use crate::keyed::{keyed_realize, shape_of};
use crate::oracle;
use crate::sequences::{enumerate_valid, stack_path_complexity, stack_table, Op, OpSequence};
use crate::shape::{catalan, enumerate_all, Shape, DEFAULT_STAGE_CAP};
use crate::transitions::{
    delete_modified, delete_modified_children, delete_standard, delete_standard_children,
    insert_children, leaf_removals, DeleteVariant,
};

/// Published standard-delete totals for n = 1..=10.
pub const REFERENCE_STANDARD_TOTALS: [u64; 10] =
    [1, 3, 9, 43, 239, 1659, 13231, 121187, 1243135, 14163825];
/// Published modified-delete totals for n = 1..=10.
pub const REFERENCE_MODIFIED_TOTALS: [u64; 10] =
    [1, 3, 9, 41, 219, 1447, 11081, 97533, 965631, 10634115];
/// Published ratio column for n = 1..=10.
pub const REFERENCE_RATIOS: [&str; 10] = [
    "1.00", "1.00", "1.00", "1.05", "1.09", "1.15", "1.19", "1.24", "1.29", "1.33",
];

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyConfig {
    /// Largest order for shape-encoding checks.
    pub shape_order: usize,
    /// Largest order for the transition property checks.
    pub transition_order: usize,
    /// Largest order for keyed-oracle equivalence.
    pub keyed_order: usize,
    /// Largest diagram built for structural checks.
    pub diagram_stage: usize,
    /// Longest sequence enumerated for stack checks.
    pub stack_length: usize,
    /// Largest `n` for path-count identities and table checks.
    pub path_length: usize,
    /// Longest sequence for per-sequence dominance.
    pub dominance_length: usize,
    /// Longest sequence checked against the brute-force path DFS.
    pub dfs_length: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            shape_order: 10,
            transition_order: 8,
            keyed_order: 7,
            diagram_stage: 8,
            stack_length: 14,
            path_length: 10,
            dominance_length: 10,
            dfs_length: 6,
        }
    }
}

impl VerifyConfig {
    /// Smaller scale for quick runs.
    pub fn quick() -> Self {
        VerifyConfig {
            shape_order: 7,
            transition_order: 6,
            keyed_order: 5,
            diagram_stage: 6,
            stack_length: 10,
            path_length: 7,
            dominance_length: 7,
            dfs_length: 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyReport {
    pub config: VerifyConfig,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

struct Suite {
    checks: Vec<Check>,
}

impl Suite {
    /// `outcome` is `Ok(detail)` on success or `Err(counterexample)`.
    fn record(&mut self, name: &str, outcome: std::result::Result<String, String>) {
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail,
        });
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Runs every suite. Errors only on cap or build failures.
pub fn run_all(config: &VerifyConfig) -> Result<VerifyReport> {
    let mut suite = Suite { checks: Vec::new() };
    let top = config
        .shape_order
        .max(config.transition_order)
        .max(config.keyed_order);
    let stages = enumerate_all(top, DEFAULT_STAGE_CAP)?;

    shape_checks(&mut suite, config, &stages);
    transition_checks(&mut suite, config, &stages);
    diagram_checks(&mut suite, config)?;
    stack_checks(&mut suite, config);
    path_checks(&mut suite, config)?;

    Ok(VerifyReport {
        config: config.clone(),
        checks: suite.checks,
    })
}

fn shape_checks(suite: &mut Suite, config: &VerifyConfig, stages: &[Vec<Shape>]) {
    let catalans = oracle::catalan_convolution(config.shape_order);
    suite.record(
        "shape.stage_sizes_are_catalan",
        (0..=config.shape_order)
            .try_for_each(|n| {
                ensure(stages[n].len() as u128 == catalans[n], || {
                    format!(
                        "stage {n}: {} shapes, expected {}",
                        stages[n].len(),
                        catalans[n]
                    )
                })
            })
            .map(|_| format!("orders 0..={}", config.shape_order)),
    );

    suite.record(
        "shape.encoding_round_trip",
        (0..=config.shape_order)
            .try_for_each(|n| {
                stages[n].iter().try_for_each(|s| {
                    let text = s.encode();
                    ensure(text.len() == 2 * n + 1, || {
                        format!("{text}: length {}", text.len())
                    })?;
                    ensure(Shape::decode(&text).as_ref() == Ok(s), || {
                        format!("{text} does not round-trip")
                    })
                })
            })
            .map(|_| "decode(encode(T)) = T, length 2n+1".into()),
    );

    suite.record(
        "shape.stage_sorted_and_distinct",
        (0..=config.shape_order)
            .try_for_each(|n| {
                let encodings: Vec<String> = stages[n].iter().map(Shape::encode).collect();
                ensure(encodings.windows(2).all(|w| w[0] < w[1]), || {
                    format!("stage {n} encodings not strictly increasing")
                })
            })
            .map(|_| "strictly increasing encodings per stage".into()),
    );

    suite.record(
        "shape.leaf_count_bounds",
        (1..=config.shape_order)
            .try_for_each(|n| {
                stages[n].iter().try_for_each(|s| {
                    let t = s.leaf_count();
                    ensure(1 <= t && t <= n.div_ceil(2), || format!("{s}: {t} leaves"))
                })
            })
            .map(|_| "1 <= leaves <= (n+1)/2".into()),
    );
}

/// In-order ranks of (node, child) where the node has one child and that
/// child is a leaf.
fn lone_leaf_pairs(shape: &Shape) -> Vec<(usize, usize)> {
    fn go(shape: &Shape, offset: usize, out: &mut Vec<(usize, usize)>) {
        let Some((l, r)) = shape.children() else {
            return;
        };
        let rank = offset + l.order() + 1;
        if l.is_leaf() && r.is_empty() {
            out.push((rank, rank - 1));
        }
        if r.is_leaf() && l.is_empty() {
            out.push((rank, rank + 1));
        }
        go(l, offset, out);
        go(r, rank, out);
    }
    let mut out = Vec::new();
    go(shape, 0, &mut out);
    out
}

fn transition_checks(suite: &mut Suite, config: &VerifyConfig, stages: &[Vec<Shape>]) {
    let max = config.transition_order;
    let each_shape =
        |lo: usize, f: &mut dyn FnMut(usize, &Shape) -> std::result::Result<(), String>| {
            (lo..=max).try_for_each(|n| stages[n].iter().try_for_each(|s| f(n, s)))
        };

    suite.record(
        "transitions.insert_fan_out",
        each_shape(0, &mut |n, s| {
            let kids = insert_children(s);
            ensure(kids.len() == n + 1, || {
                format!("{s}: {} insert children", kids.len())
            })?;
            ensure(kids.windows(2).all(|w| w[0] < w[1]), || {
                format!("{s}: duplicate insert children")
            })?;
            ensure(kids.iter().all(|k| k.order() == n + 1), || {
                format!("{s}: wrong child order")
            })
        })
        .map(|_| format!("exactly n+1 distinct children, orders 0..={max}")),
    );

    suite.record(
        "transitions.standard_delete_fan_out",
        each_shape(1, &mut |n, s| {
            let kids = delete_standard_children(s).map_err(|e| e.to_string())?;
            let (lo, hi) = (s.leaf_count(), (n.max(2)) - 1);
            ensure(lo <= kids.len() && kids.len() <= hi, || {
                format!("{s}: {} children outside [{lo}, {hi}]", kids.len())
            })
        })
        .map(|_| format!("leaf_count <= children <= max(1, n-1), orders 1..={max}")),
    );

    suite.record(
        "transitions.modified_delete_is_leaf_removal",
        each_shape(1, &mut |_, s| {
            let kids = delete_modified_children(s).map_err(|e| e.to_string())?;
            ensure(kids.len() == s.leaf_count(), || {
                format!("{s}: {} children", kids.len())
            })?;
            ensure(kids == leaf_removals(s), || {
                format!("{s}: children differ from leaf removals")
            })
        })
        .map(|_| format!("children = leaf removals, orders 1..={max}")),
    );

    suite.record(
        "transitions.modified_subset_of_standard",
        each_shape(1, &mut |_, s| {
            let standard = delete_standard_children(s).map_err(|e| e.to_string())?;
            let modified = delete_modified_children(s).map_err(|e| e.to_string())?;
            ensure(
                modified.iter().all(|m| standard.binary_search(m).is_ok()),
                || format!("{s}: modified child missing from standard children"),
            )
        })
        .map(|_| "modified children within standard children".into()),
    );

    suite.record(
        "transitions.lone_leaf_merging",
        each_shape(2, &mut |_, s| {
            lone_leaf_pairs(s)
                .into_iter()
                .try_for_each(|(parent, child)| {
                    let a = delete_standard(s, parent).map_err(|e| e.to_string())?;
                    let b = delete_standard(s, child).map_err(|e| e.to_string())?;
                    ensure(a == b, || {
                        format!("{s}: deleting {parent} and {child} differ")
                    })
                })
        })
        .map(|_| "deleting a lone leaf equals deleting its parent".into()),
    );

    let keyed_max = config.keyed_order;
    suite.record(
        "transitions.keyed_oracle_equivalence",
        (0..=keyed_max)
            .try_for_each(|n| {
                stages[n].iter().try_for_each(|s| {
                    ensure(shape_of(&keyed_realize(s)) == *s, || {
                        format!("{s}: realize round-trip")
                    })?;
                    for pos in 1..=n {
                        for variant in DeleteVariant::ALL {
                            let mut tree = keyed_realize(s);
                            let shape_level = match variant {
                                DeleteVariant::Standard => {
                                    tree.delete_standard(pos as i64);
                                    delete_standard(s, pos)
                                }
                                DeleteVariant::Modified => {
                                    tree.delete_modified(pos as i64);
                                    delete_modified(s, pos)
                                }
                            }
                            .map_err(|e| e.to_string())?;
                            ensure(shape_of(&tree) == shape_level, || {
                                format!(
                                    "{s} pos {pos} {variant}: keyed {} vs shape {shape_level}",
                                    shape_of(&tree)
                                )
                            })?;
                        }
                    }
                    Ok(())
                })
            })
            .map(|_| format!("all positions, orders 0..={keyed_max}")),
    );
}

fn diagram_checks(suite: &mut Suite, config: &VerifyConfig) -> Result<()> {
    let top = config.diagram_stage;
    let d = StateDiagram::build(top, &DeleteVariant::ALL, DEFAULT_STAGE_CAP)?;
    let again = StateDiagram::build(top, &DeleteVariant::ALL, DEFAULT_STAGE_CAP)?;
    suite.record(
        "diagram.deterministic",
        ensure(d == again, || "two builds differ".into()).map(|_| format!("stages 0..={top}")),
    );

    let outcome = (0..=top).try_for_each(|n| {
        ensure(Some(d.state_count(n) as u128) == catalan(n), || {
            format!("stage {n} size")
        })?;
        let mut has_in_edge = vec![n == 0; d.state_count(n)];
        if n > 0 {
            for src in 0..d.state_count(n - 1) {
                for &t in d.insert_targets(n - 1, src) {
                    has_in_edge[t as usize] = true;
                }
            }
        }
        ensure(has_in_edge.iter().all(|&b| b), || {
            format!("stage {n} has a state with no insert in-edge")
        })?;
        let mut insert_total = 0u128;
        for (i, shape) in d.stage(n).iter().enumerate() {
            let ins = d.insert_targets(n, i);
            insert_total += ins.len() as u128;
            ensure(n == top || ins.len() == n + 1, || {
                format!("{shape}: insert degree {}", ins.len())
            })?;
            ensure(ins.windows(2).all(|w| w[0] < w[1]), || {
                format!("{shape}: duplicate insert edges")
            })?;
            if n == 0 {
                continue;
            }
            let std = d
                .delete_targets(DeleteVariant::Standard, n, i)
                .expect("built");
            let md = d
                .delete_targets(DeleteVariant::Modified, n, i)
                .expect("built");
            let leaves = shape.leaf_count();
            ensure(md.len() == leaves, || {
                format!("{shape}: modified degree {}", md.len())
            })?;
            ensure(leaves <= std.len() && std.len() <= (n - 1).max(1), || {
                format!("{shape}: standard degree {}", std.len())
            })?;
            ensure(
                std.windows(2).all(|w| w[0] < w[1]) && md.windows(2).all(|w| w[0] < w[1]),
                || format!("{shape}: duplicate delete edges"),
            )?;
        }
        let expected = if n == top {
            0
        } else {
            catalan(n).unwrap() * (n as u128 + 1)
        };
        ensure(insert_total == expected, || {
            format!("stage {n}: insert total {insert_total}")
        })
    });
    suite.record(
        "diagram.structure",
        outcome.map(|_| format!("stages 0..={top}")),
    );
    Ok(())
}

fn stack_checks(suite: &mut Suite, config: &VerifyConfig) {
    let max = config.stack_length;
    let table = stack_table(max);
    let outcome = (1..=max).try_for_each(|n| {
        let filtered = oracle::valid_sequences_by_filter(n);
        for (k, entry) in table[n].iter().enumerate() {
            let listed = enumerate_valid(n, k).map_err(|e| e.to_string())?;
            let by_filter: Vec<&OpSequence> =
                filtered.iter().filter(|s| s.delete_count() == k).collect();
            ensure(listed.iter().eq(by_filter.iter().copied()), || {
                format!("({n},{k}): enumeration differs from filter")
            })?;
            ensure(listed.iter().all(OpSequence::is_valid), || {
                format!("({n},{k}): invalid sequence listed")
            })?;
            let count = BigUint::from(listed.len());
            ensure(*entry == count && count == oracle::ballot(n, k), || {
                format!(
                    "({n},{k}): recurrence {} enumeration {count} ballot {}",
                    table[n][k],
                    oracle::ballot(n, k)
                )
            })?;
        }
        let total = stack_path_complexity(n);
        ensure(total == oracle::binomial(n, n / 2), || {
            format!("n={n}: total {total}")
        })?;
        ensure(total <= BigUint::one() << n, || {
            format!("n={n}: total above 2^n")
        })
    });
    suite.record(
        "sequences.stack_counts",
        outcome
            .map(|_| format!("P(n,k) = enumeration = ballot, P(n) = C(n, n/2) <= 2^n, n <= {max}")),
    );
}

fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

fn path_checks(suite: &mut Suite, config: &VerifyConfig) -> Result<()> {
    let max = config
        .path_length
        .max(config.dominance_length)
        .max(config.dfs_length);
    let d = StateDiagram::build(max, &DeleteVariant::ALL, DEFAULT_STAGE_CAP)?;
    let top = config.path_length;
    let tables: Vec<CountTable> = DeleteVariant::ALL
        .iter()
        .map(|&v| path_table(&d, top, v, Strategy::SharedPrefix))
        .collect::<Result<_>>()?;
    let (p1, p2) = (&tables[0], &tables[1]);

    suite.record(
        "complexity.all_inserts_is_factorial",
        (1..=top)
            .try_for_each(|n| {
                ensure(
                    p1.get(n, 0) == factorial(n) && p2.get(n, 0) == factorial(n),
                    || format!("p({n},0)"),
                )
            })
            .map(|_| format!("p(n,0) = n!, n <= {top}")),
    );

    let per_seq = DeleteVariant::ALL
        .iter()
        .map(|&v| path_table(&d, top.min(8), v, Strategy::PerSequence))
        .collect::<Result<Vec<_>>>()?;
    suite.record(
        "complexity.strategies_agree",
        ensure(
            (1..=top.min(8))
                .all(|n| per_seq[0].row(n) == p1.row(n) && per_seq[1].row(n) == p2.row(n)),
            || "per-sequence and shared-prefix tables differ".into(),
        )
        .map(|_| format!("n <= {}", top.min(8))),
    );

    let outcome = (1..=top).try_for_each(|n| {
        for (table, v) in [(p1, DeleteVariant::Standard), (p2, DeleteVariant::Modified)] {
            for k in 0..=n / 2 {
                let mut ending_insert = BigUint::default();
                for s in enumerate_valid(n, k).map_err(|e| e.to_string())? {
                    if s.ops().last() == Some(&Op::Insert) {
                        ending_insert += count_paths(&d, &s, v).map_err(|e| e.to_string())?;
                    }
                }
                let expected = table.get(n - 1, k) * BigUint::from(n - 2 * k);
                ensure(ending_insert == expected, || {
                    format!("{v} ({n},{k}): {ending_insert} vs {expected}")
                })?;
            }
        }
        Ok(())
    });
    suite.record(
        "complexity.insert_step_identity",
        outcome.map(|_| format!("n <= {top}")),
    );

    let outcome = (0..top).try_for_each(|n| {
        oracle::valid_sequences_by_filter(n)
            .into_iter()
            .try_for_each(|s| {
                let height = n - 2 * s.delete_count();
                let mut extended = s.ops().to_vec();
                extended.push(Op::Insert);
                let extended = OpSequence::new(extended);
                for v in DeleteVariant::ALL {
                    let before = count_paths(&d, &s, v).map_err(|e| e.to_string())?;
                    let after = count_paths(&d, &extended, v).map_err(|e| e.to_string())?;
                    ensure(after == before * BigUint::from(height + 1), || {
                        format!("{v} {s}")
                    })?;
                }
                Ok(())
            })
    });
    suite.record(
        "complexity.insert_extension",
        outcome.map(|_| format!("E(s·i) = E(s)·(m+1), |s| < {top}")),
    );

    let dom = config.dominance_length;
    let outcome = (1..=dom).try_for_each(|n| {
        oracle::valid_sequences_by_filter(n)
            .into_iter()
            .try_for_each(|s| {
                let e1 = count_paths(&d, &s, DeleteVariant::Standard).map_err(|e| e.to_string())?;
                let e2 = count_paths(&d, &s, DeleteVariant::Modified).map_err(|e| e.to_string())?;
                ensure(e2 <= e1, || format!("{s}: modified {e2} > standard {e1}"))
            })
    });
    let totals_ok = (1..=top).all(|n| p2.total(n) <= p1.total(n));
    suite.record(
        "complexity.modified_dominated",
        outcome
            .and_then(|_| ensure(totals_ok, || "P2 > P1 somewhere".into()))
            .map(|_| format!("E2(s) <= E1(s) for |s| <= {dom}; P2 <= P1 for n <= {top}")),
    );

    let dfs = config.dfs_length;
    let outcome = (0..=dfs).try_for_each(|n| {
        oracle::valid_sequences_by_filter(n)
            .into_iter()
            .try_for_each(|s| {
                for v in DeleteVariant::ALL {
                    let fast = count_paths(&d, &s, v).map_err(|e| e.to_string())?;
                    let slow = BigUint::from(oracle::dfs_paths(&s, v));
                    ensure(fast == slow, || {
                        format!("{v} {s}: counter {fast} vs DFS {slow}")
                    })?;
                }
                Ok(())
            })
    });
    suite.record(
        "complexity.dfs_oracle",
        outcome.map(|_| format!("|s| <= {dfs}")),
    );

    let reproduce = |table: &CountTable, reference: &[u64]| {
        (1..=top.min(reference.len())).try_for_each(|n| {
            let want = BigUint::from(reference[n - 1]);
            ensure(table.total(n) == want, || {
                format!("n={n}: {} vs {want}", table.total(n))
            })
        })
    };
    suite.record(
        "reproduction.standard_totals",
        reproduce(p1, &REFERENCE_STANDARD_TOTALS).map(|_| format!("n <= {}", top.min(10))),
    );
    suite.record(
        "reproduction.modified_totals",
        reproduce(p2, &REFERENCE_MODIFIED_TOTALS).map(|_| format!("n <= {}", top.min(10))),
    );
    Ok(())
}
