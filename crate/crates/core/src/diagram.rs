//! Layered finite state diagram over BST shapes.
//!
//! Stage `n` holds every shape of order `n`. Insert edges go from stage `n`
//! to `n + 1`, delete edges from `n` to `n - 1`. Edges are stored as sorted
//! index lists per adjacent stage pair.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::shape::{enumerate_all, Shape, ShapeId, DEFAULT_STAGE_CAP};
use crate::transitions::{delete_children, insert_children, DeleteVariant};

/// Targets of each source state, indexed by source position in its stage.
pub type EdgeLists = Vec<Vec<u32>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateDiagram {
    max_stage: usize,
    stages: Vec<Vec<Shape>>,
    /// `insert_edges[n]` for `n < max_stage`.
    insert_edges: Vec<EdgeLists>,
    /// `delete_edges[v][n]` for `1 <= n <= max_stage`; slot 0 is empty.
    delete_edges: BTreeMap<DeleteVariant, Vec<EdgeLists>>,
}

/// Builds stages `0..=max_stage` with insert edges and the requested delete
/// variants, under the default stage-size cap.
pub fn build_diagram(max_stage: usize, variants: &[DeleteVariant]) -> Result<StateDiagram> {
    StateDiagram::build(max_stage, variants, DEFAULT_STAGE_CAP)
}

impl StateDiagram {
    /// Source states are processed in parallel on the current rayon pool;
    /// output order does not depend on scheduling.
    pub fn build(max_stage: usize, variants: &[DeleteVariant], cap: u128) -> Result<Self> {
        let stages = enumerate_all(max_stage, cap)?;

        let insert_edges = (0..max_stage)
            .map(|n| {
                stages[n]
                    .par_iter()
                    .map(|shape| index_all(&stages[n + 1], &insert_children(shape)))
                    .collect()
            })
            .collect();

        let mut delete_edges = BTreeMap::new();
        for &variant in variants {
            let mut per_stage: Vec<EdgeLists> = vec![Vec::new()];
            for n in 1..=max_stage {
                let lists = stages[n]
                    .par_iter()
                    .map(|shape| {
                        let kids = delete_children(shape, variant)?;
                        Ok(index_all(&stages[n - 1], &kids))
                    })
                    .collect::<Result<EdgeLists>>()?;
                per_stage.push(lists);
            }
            delete_edges.insert(variant, per_stage);
        }

        Ok(StateDiagram {
            max_stage,
            stages,
            insert_edges,
            delete_edges,
        })
    }

    pub fn max_stage(&self) -> usize {
        self.max_stage
    }

    /// Delete variants the diagram carries edges for.
    pub fn variants(&self) -> impl Iterator<Item = DeleteVariant> + '_ {
        self.delete_edges.keys().copied()
    }

    pub fn has_variant(&self, variant: DeleteVariant) -> bool {
        self.delete_edges.contains_key(&variant)
    }

    /// Shapes of stage `n` in encoding order.
    pub fn stage(&self, n: usize) -> &[Shape] {
        &self.stages[n]
    }

    pub fn state_count(&self, n: usize) -> usize {
        self.stages[n].len()
    }

    pub fn shape(&self, id: ShapeId) -> &Shape {
        &self.stages[id.stage][id.index]
    }

    pub fn id_of(&self, shape: &Shape) -> Option<ShapeId> {
        let stage = shape.order();
        let index = self.stages.get(stage)?.binary_search(shape).ok()?;
        Some(ShapeId { stage, index })
    }

    pub fn id_of_encoding(&self, encoding: &str) -> Result<Option<ShapeId>> {
        Ok(self.id_of(&Shape::decode(encoding)?))
    }

    /// Insert targets (indices into stage `n + 1`) of state `index` at stage `n`.
    /// Empty at the top stage.
    pub fn insert_targets(&self, n: usize, index: usize) -> &[u32] {
        self.insert_edges.get(n).map_or(&[], |lists| &lists[index])
    }

    /// Delete targets (indices into stage `n - 1`). Empty at stage 0.
    pub fn delete_targets(&self, variant: DeleteVariant, n: usize, index: usize) -> Result<&[u32]> {
        let per_stage = self
            .delete_edges
            .get(&variant)
            .ok_or(Error::MissingVariant(variant))?;
        Ok(if n == 0 { &[] } else { &per_stage[n][index] })
    }

    pub(crate) fn delete_lists(&self, variant: DeleteVariant) -> Result<&[EdgeLists]> {
        self.delete_edges
            .get(&variant)
            .map(Vec::as_slice)
            .ok_or(Error::MissingVariant(variant))
    }

    pub(crate) fn insert_lists(&self) -> &[EdgeLists] {
        &self.insert_edges
    }

    /// Graphviz rendering: insert edges solid, delete edges dashed, one rank
    /// per stage. Node ids are canonical encodings.
    pub fn export_dot(&self, variant: DeleteVariant) -> Result<String> {
        let deletes = self.delete_lists(variant)?;
        let mut out = String::new();
        writeln!(out, "digraph bst_states {{").unwrap();
        writeln!(out, "    label=\"BST state diagram, {variant} delete\";").unwrap();
        writeln!(out, "    rankdir=TB;").unwrap();
        writeln!(out, "    node [shape=box, fontname=\"monospace\"];").unwrap();
        for (n, shapes) in self.stages.iter().enumerate() {
            writeln!(out, "    subgraph stage_{n} {{").unwrap();
            writeln!(out, "        rank=same;").unwrap();
            for shape in shapes {
                writeln!(out, "        \"{shape}\";").unwrap();
            }
            writeln!(out, "    }}").unwrap();
        }
        for (n, lists) in self.insert_edges.iter().enumerate() {
            for (src, targets) in lists.iter().enumerate() {
                for &dst in targets {
                    writeln!(
                        out,
                        "    \"{}\" -> \"{}\";",
                        self.stages[n][src],
                        self.stages[n + 1][dst as usize]
                    )
                    .unwrap();
                }
            }
        }
        for (n, lists) in deletes.iter().enumerate().skip(1) {
            for (src, targets) in lists.iter().enumerate() {
                for &dst in targets {
                    writeln!(
                        out,
                        "    \"{}\" -> \"{}\" [style=dashed];",
                        self.stages[n][src],
                        self.stages[n - 1][dst as usize]
                    )
                    .unwrap();
                }
            }
        }
        writeln!(out, "}}").unwrap();
        Ok(out)
    }

    /// Per-stage state counts and out-degree statistics per edge label.
    pub fn stage_profile(&self) -> Vec<StageProfile> {
        (0..=self.max_stage)
            .map(|n| {
                let insert = DegreeStats::of(self.insert_edges.get(n).map(Vec::as_slice));
                let delete = |variant| {
                    self.delete_edges.get(&variant).map(|per_stage| {
                        DegreeStats::of(if n == 0 {
                            None
                        } else {
                            Some(&per_stage[n][..])
                        })
                    })
                };
                StageProfile {
                    stage: n,
                    states: self.stages[n].len() as u64,
                    insert,
                    delete_standard: delete(DeleteVariant::Standard),
                    delete_modified: delete(DeleteVariant::Modified),
                }
            })
            .collect()
    }
}

fn index_all(stage: &[Shape], shapes: &[Shape]) -> Vec<u32> {
    let mut out: Vec<u32> = shapes
        .iter()
        .map(|s| {
            stage
                .binary_search(s)
                .expect("target lies in the adjacent stage") as u32
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

pub fn export_dot(diagram: &StateDiagram, variant: DeleteVariant) -> Result<String> {
    diagram.export_dot(variant)
}

pub fn stage_profile(diagram: &StateDiagram) -> Vec<StageProfile> {
    diagram.stage_profile()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DegreeStats {
    pub min: u64,
    pub max: u64,
    pub total: u64,
}

impl DegreeStats {
    fn of(lists: Option<&[Vec<u32>]>) -> Self {
        let Some(lists) = lists else {
            return DegreeStats::default();
        };
        let degrees = lists.iter().map(|l| l.len() as u64);
        DegreeStats {
            min: degrees.clone().min().unwrap_or(0),
            max: degrees.clone().max().unwrap_or(0),
            total: degrees.sum(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageProfile {
    pub stage: usize,
    pub states: u64,
    pub insert: DegreeStats,
    /// `None` when the diagram was built without that variant.
    pub delete_standard: Option<DegreeStats>,
    pub delete_modified: Option<DegreeStats>,
}
