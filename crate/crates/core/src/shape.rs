//! Binary search tree shapes with the keys abstracted away.
//!
//! A shape of order `n` is the structure left behind by any BST holding `n`
//! distinct keys. Shapes are the states of the insert/delete diagram.
//!
//! The wire format is the preorder bit-string: `1` for an internal node,
//! `0` for an empty slot. A shape of order `n` encodes to `2n + 1` symbols.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest stage (by shape count) enumerated unless the caller raises it:
/// Catalan(14).
pub const DEFAULT_STAGE_CAP: u128 = 2_674_440;

/// Structure of a binary tree, no payload.
///
/// Equality is structural. Ordering is lexicographic on the canonical
/// encoding, so a sorted stage is sorted by encoding.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Shape {
    root: Option<Box<Node>>,
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Node {
    order: usize,
    left: Shape,
    right: Shape,
}

impl Shape {
    pub fn empty() -> Self {
        Shape { root: None }
    }

    /// Single node with two empty slots.
    pub fn leaf() -> Self {
        Shape::node(Shape::empty(), Shape::empty())
    }

    pub fn node(left: Shape, right: Shape) -> Self {
        let order = 1 + left.order() + right.order();
        Shape {
            root: Some(Box::new(Node { order, left, right })),
        }
    }

    /// Every node has only a left child.
    pub fn left_chain(n: usize) -> Self {
        (0..n).fold(Shape::empty(), |acc, _| Shape::node(acc, Shape::empty()))
    }

    /// Every node has only a right child.
    pub fn right_chain(n: usize) -> Self {
        (0..n).fold(Shape::empty(), |acc, _| Shape::node(Shape::empty(), acc))
    }

    pub fn is_empty(&self) -> bool {
        self.root.is_none()
    }

    /// Node count.
    pub fn order(&self) -> usize {
        self.root.as_ref().map_or(0, |node| node.order)
    }

    /// `(left, right)` subtrees, or `None` for the empty shape.
    pub fn children(&self) -> Option<(&Shape, &Shape)> {
        self.root.as_ref().map(|node| (&node.left, &node.right))
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self.children(), Some((l, r)) if l.is_empty() && r.is_empty())
    }

    /// Number of nodes without children; 0 for the empty shape.
    pub fn leaf_count(&self) -> usize {
        match self.children() {
            None => 0,
            Some((l, r)) if l.is_empty() && r.is_empty() => 1,
            Some((l, r)) => l.leaf_count() + r.leaf_count(),
        }
    }

    /// Preorder internal/external bit-string of length `2 * order + 1`.
    pub fn encode(&self) -> String {
        let mut out = String::with_capacity(2 * self.order() + 1);
        self.encode_into(&mut out);
        out
    }

    fn encode_into(&self, out: &mut String) {
        match self.children() {
            None => out.push('0'),
            Some((l, r)) => {
                out.push('1');
                l.encode_into(out);
                r.encode_into(out);
            }
        }
    }

    /// Parses a canonical encoding. The whole input must describe exactly one
    /// tree.
    pub fn decode(text: &str) -> Result<Shape> {
        let bytes = text.as_bytes();
        let mut pos = 0;
        let shape = decode_at(bytes, &mut pos)?;
        if pos != bytes.len() {
            return Err(Error::MalformedEncoding {
                position: pos,
                reason: "trailing symbols after a complete tree",
            });
        }
        Ok(shape)
    }
}

fn decode_at(bytes: &[u8], pos: &mut usize) -> Result<Shape> {
    let at = *pos;
    match bytes.get(at) {
        None => Err(Error::MalformedEncoding {
            position: at,
            reason: "encoding ends before the tree is complete",
        }),
        Some(b'0') => {
            *pos += 1;
            Ok(Shape::empty())
        }
        Some(b'1') => {
            *pos += 1;
            let left = decode_at(bytes, pos)?;
            let right = decode_at(bytes, pos)?;
            Ok(Shape::node(left, right))
        }
        Some(_) => Err(Error::MalformedEncoding {
            position: at,
            reason: "expected '0' or '1'",
        }),
    }
}

impl Ord for Shape {
    fn cmp(&self, other: &Self) -> Ordering {
        // The encoding is prefix-free, so comparing left subtrees first and
        // then right subtrees agrees with comparing the encoded strings.
        match (&self.root, &other.root) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(a), Some(b)) => a.left.cmp(&b.left).then_with(|| a.right.cmp(&b.right)),
        }
    }
}

impl PartialOrd for Shape {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

impl fmt::Debug for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Shape({})", self.encode())
    }
}

impl FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Shape::decode(s)
    }
}

impl Serialize for Shape {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.encode())
    }
}

impl<'de> Deserialize<'de> for Shape {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        Shape::decode(&text).map_err(serde::de::Error::custom)
    }
}

/// Stable address of a shape inside a state diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ShapeId {
    pub stage: usize,
    pub index: usize,
}

/// Number of shapes of order `n`, or `None` if it does not fit in a `u128`.
pub fn catalan(n: usize) -> Option<u128> {
    // C(k+1) = C(k) * 2(2k+1) / (k+2); the product divides exactly.
    let mut c: u128 = 1;
    for k in 0..n as u128 {
        c = c.checked_mul(2 * (2 * k + 1))? / (k + 2);
    }
    Some(c)
}

/// Checks that stage `n` fits under `cap` shapes.
pub fn check_stage_cap(n: usize, cap: u128) -> Result<u128> {
    match catalan(n) {
        Some(states) if states <= cap => Ok(states),
        Some(states) => Err(Error::CapExceeded {
            stage: n,
            states,
            cap,
        }),
        None => Err(Error::CapExceeded {
            stage: n,
            states: u128::MAX,
            cap,
        }),
    }
}

/// All shapes of order `n`, sorted by canonical encoding, under the default cap.
pub fn enumerate_shapes(n: usize) -> Result<Vec<Shape>> {
    enumerate_shapes_capped(n, DEFAULT_STAGE_CAP)
}

pub fn enumerate_shapes_capped(n: usize, cap: u128) -> Result<Vec<Shape>> {
    check_stage_cap(n, cap)?;
    Ok(enumerate_all(n, cap)?
        .pop()
        .expect("stage n is always produced"))
}

/// Stages `0..=n`, each sorted by encoding.
pub(crate) fn enumerate_all(n: usize, cap: u128) -> Result<Vec<Vec<Shape>>> {
    for stage in 0..=n {
        check_stage_cap(stage, cap)?;
    }
    let mut stages: Vec<Vec<Shape>> = Vec::with_capacity(n + 1);
    stages.push(vec![Shape::empty()]);
    for order in 1..=n {
        let mut shapes = Vec::new();
        for left_order in 0..order {
            let right_order = order - 1 - left_order;
            for left in &stages[left_order] {
                for right in &stages[right_order] {
                    shapes.push(Shape::node(left.clone(), right.clone()));
                }
            }
        }
        shapes.sort_unstable();
        stages.push(shapes);
    }
    Ok(stages)
}
