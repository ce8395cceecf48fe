//! Insert and delete as operations on shapes.
//!
//! Nodes are addressed by in-order rank (1-based), which is exactly the key a
//! node would carry in the in-order labelled realization of the shape.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::shape::Shape;

/// Which delete algorithm drives the delete edges of the diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DeleteVariant {
    /// Textbook delete: remove a leaf, splice a single child, or replace a
    /// two-child node by its in-order successor.
    Standard,
    /// Walk successor (or predecessor when the right subtree is empty) links
    /// until a leaf is reached, then remove that leaf.
    Modified,
}

impl DeleteVariant {
    pub const ALL: [DeleteVariant; 2] = [DeleteVariant::Standard, DeleteVariant::Modified];

    pub fn as_str(self) -> &'static str {
        match self {
            DeleteVariant::Standard => "standard",
            DeleteVariant::Modified => "modified",
        }
    }
}

impl fmt::Display for DeleteVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DeleteVariant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "standard" => Ok(DeleteVariant::Standard),
            "modified" => Ok(DeleteVariant::Modified),
            other => Err(format!("unknown delete variant {other:?}")),
        }
    }
}

/// Shapes reachable by one insert: a new leaf in each of the `n + 1` empty
/// slots. Sorted by encoding; members are pairwise distinct.
pub fn insert_children(shape: &Shape) -> Vec<Shape> {
    let mut out = Vec::with_capacity(shape.order() + 1);
    insert_each_slot(shape, &mut |s| out.push(s));
    out.sort_unstable();
    out
}

fn insert_each_slot(shape: &Shape, emit: &mut dyn FnMut(Shape)) {
    match shape.children() {
        None => emit(Shape::leaf()),
        Some((l, r)) => {
            insert_each_slot(l, &mut |nl| emit(Shape::node(nl, r.clone())));
            insert_each_slot(r, &mut |nr| emit(Shape::node(l.clone(), nr)));
        }
    }
}

fn check_position(shape: &Shape, pos: usize) -> Result<()> {
    if shape.is_empty() {
        return Err(Error::EmptyShape);
    }
    if pos == 0 || pos > shape.order() {
        return Err(Error::PositionOutOfRange {
            pos,
            order: shape.order(),
        });
    }
    Ok(())
}

/// Recurses to the node of in-order rank `pos` and rebuilds the path above it
/// with `at_node` applied to that node's subtree.
fn rebuild_at(shape: &Shape, pos: usize, at_node: &dyn Fn(&Shape, &Shape) -> Shape) -> Shape {
    let (l, r) = shape.children().expect("position checked against order");
    let rank = l.order() + 1;
    if pos < rank {
        Shape::node(rebuild_at(l, pos, at_node), r.clone())
    } else if pos > rank {
        Shape::node(l.clone(), rebuild_at(r, pos - rank, at_node))
    } else {
        at_node(l, r)
    }
}

fn remove_min(shape: &Shape) -> Shape {
    let (l, r) = shape.children().expect("nonempty subtree");
    if l.is_empty() {
        r.clone()
    } else {
        Shape::node(remove_min(l), r.clone())
    }
}

fn remove_max(shape: &Shape) -> Shape {
    let (l, r) = shape.children().expect("nonempty subtree");
    if r.is_empty() {
        l.clone()
    } else {
        Shape::node(l.clone(), remove_max(r))
    }
}

/// Textbook delete of the node at in-order rank `pos`.
pub fn delete_standard(shape: &Shape, pos: usize) -> Result<Shape> {
    check_position(shape, pos)?;
    Ok(rebuild_at(shape, pos, &|l, r| {
        if l.is_empty() {
            r.clone()
        } else if r.is_empty() {
            l.clone()
        } else {
            // successor's slot vanishes; its right child moves up
            Shape::node(l.clone(), remove_min(r))
        }
    }))
}

/// Mirror of [`delete_standard`] that replaces a two-child node with its
/// in-order predecessor. Not used for the reported tables.
pub fn delete_predecessor(shape: &Shape, pos: usize) -> Result<Shape> {
    check_position(shape, pos)?;
    Ok(rebuild_at(shape, pos, &|l, r| {
        if l.is_empty() {
            r.clone()
        } else if r.is_empty() {
            l.clone()
        } else {
            Shape::node(remove_max(l), r.clone())
        }
    }))
}

/// Delete that always removes a leaf: from the target, step to the successor
/// while the right subtree is nonempty, else to the predecessor, until a leaf
/// is reached.
pub fn delete_modified(shape: &Shape, pos: usize) -> Result<Shape> {
    check_position(shape, pos)?;
    Ok(rebuild_at(shape, pos, &modified_at))
}

fn modified_at(l: &Shape, r: &Shape) -> Shape {
    if !r.is_empty() {
        // the successor is rank 1 of the right subtree; the walk continues there
        Shape::node(l.clone(), rebuild_at(r, 1, &modified_at))
    } else if !l.is_empty() {
        Shape::node(rebuild_at(l, l.order(), &modified_at), r.clone())
    } else {
        Shape::empty()
    }
}

fn collect_deletes(
    shape: &Shape,
    delete: fn(&Shape, usize) -> Result<Shape>,
) -> Result<Vec<Shape>> {
    if shape.is_empty() {
        return Err(Error::EmptyShape);
    }
    let mut out = (1..=shape.order())
        .map(|pos| delete(shape, pos))
        .collect::<Result<Vec<_>>>()?;
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Distinct shapes reachable by one delete, sorted by encoding.
pub fn delete_children(shape: &Shape, variant: DeleteVariant) -> Result<Vec<Shape>> {
    match variant {
        DeleteVariant::Standard => delete_standard_children(shape),
        DeleteVariant::Modified => delete_modified_children(shape),
    }
}

pub fn delete_standard_children(shape: &Shape) -> Result<Vec<Shape>> {
    collect_deletes(shape, delete_standard)
}

pub fn delete_modified_children(shape: &Shape) -> Result<Vec<Shape>> {
    collect_deletes(shape, delete_modified)
}

pub fn delete_predecessor_children(shape: &Shape) -> Result<Vec<Shape>> {
    collect_deletes(shape, delete_predecessor)
}

/// `shape` minus each of its leaves, deduplicated and sorted.
pub fn leaf_removals(shape: &Shape) -> Vec<Shape> {
    fn go(shape: &Shape, emit: &mut dyn FnMut(Shape)) {
        let Some((l, r)) = shape.children() else {
            return;
        };
        if l.is_empty() && r.is_empty() {
            emit(Shape::empty());
            return;
        }
        go(l, &mut |nl| emit(Shape::node(nl, r.clone())));
        go(r, &mut |nr| emit(Shape::node(l.clone(), nr)));
    }
    let mut out = Vec::new();
    go(shape, &mut |s| out.push(s));
    out.sort_unstable();
    out.dedup();
    out
}
