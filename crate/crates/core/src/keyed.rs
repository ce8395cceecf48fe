//! Concrete BST over distinct integer keys.
//!
//! The shape-level operations in [`crate::transitions`] are checked against
//! this tree: realize a shape with keys `1..=n` in in-order position, run the
//! keyed algorithm, and erase the keys again.

use crate::shape::Shape;

type Link = Option<usize>;

#[derive(Debug, Clone)]
struct KeyedNode {
    key: i64,
    left: Link,
    right: Link,
    parent: Link,
}

/// Arena-backed binary search tree. Freed slots are left as `None`.
#[derive(Debug, Clone, Default)]
pub struct KeyedTree {
    nodes: Vec<Option<KeyedNode>>,
    root: Link,
    len: usize,
}

impl KeyedTree {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts keys in the given order.
    pub fn from_keys(keys: impl IntoIterator<Item = i64>) -> Self {
        let mut tree = Self::new();
        for key in keys {
            tree.insert(key);
        }
        tree
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.root.is_none()
    }

    fn node(&self, id: usize) -> &KeyedNode {
        self.nodes[id].as_ref().expect("live node")
    }

    fn node_mut(&mut self, id: usize) -> &mut KeyedNode {
        self.nodes[id].as_mut().expect("live node")
    }

    fn alloc(&mut self, key: i64, parent: Link) -> usize {
        self.nodes.push(Some(KeyedNode {
            key,
            left: None,
            right: None,
            parent,
        }));
        self.len += 1;
        self.nodes.len() - 1
    }

    pub fn root_key(&self) -> Option<i64> {
        self.root.map(|id| self.node(id).key)
    }

    /// Returns false if the key is already present.
    pub fn insert(&mut self, key: i64) -> bool {
        let Some(mut cur) = self.root else {
            self.root = Some(self.alloc(key, None));
            return true;
        };
        loop {
            let node = self.node(cur);
            let next = if key < node.key {
                node.left
            } else if key > node.key {
                node.right
            } else {
                return false;
            };
            match next {
                Some(child) => cur = child,
                None => {
                    let id = self.alloc(key, Some(cur));
                    let node = self.node_mut(cur);
                    if key < node.key {
                        node.left = Some(id);
                    } else {
                        node.right = Some(id);
                    }
                    return true;
                }
            }
        }
    }

    fn find(&self, key: i64) -> Link {
        let mut cur = self.root;
        while let Some(id) = cur {
            let node = self.node(id);
            if key == node.key {
                return Some(id);
            }
            cur = if key < node.key {
                node.left
            } else {
                node.right
            };
        }
        None
    }

    pub fn contains(&self, key: i64) -> bool {
        self.find(key).is_some()
    }

    pub fn keys_in_order(&self) -> Vec<i64> {
        fn walk(tree: &KeyedTree, link: Link, out: &mut Vec<i64>) {
            if let Some(id) = link {
                let node = tree.node(id);
                walk(tree, node.left, out);
                out.push(node.key);
                walk(tree, node.right, out);
            }
        }
        let mut out = Vec::with_capacity(self.len);
        walk(self, self.root, &mut out);
        out
    }

    fn is_leaf(&self, id: usize) -> bool {
        let node = self.node(id);
        node.left.is_none() && node.right.is_none()
    }

    /// Leftmost node of the right subtree.
    fn successor(&self, id: usize) -> Link {
        let mut cur = self.node(id).right?;
        while let Some(next) = self.node(cur).left {
            cur = next;
        }
        Some(cur)
    }

    /// Rightmost node of the left subtree.
    fn predecessor(&self, id: usize) -> Link {
        let mut cur = self.node(id).left?;
        while let Some(next) = self.node(cur).right {
            cur = next;
        }
        Some(cur)
    }

    /// Key of the leftmost node in the right subtree of `key`'s node.
    pub fn successor_key(&self, key: i64) -> Option<i64> {
        self.find(key)
            .and_then(|id| self.successor(id))
            .map(|id| self.node(id).key)
    }

    /// Key of the rightmost node in the left subtree of `key`'s node.
    pub fn predecessor_key(&self, key: i64) -> Option<i64> {
        self.find(key)
            .and_then(|id| self.predecessor(id))
            .map(|id| self.node(id).key)
    }

    /// Puts `replacement` where `id` hangs and frees `id`.
    fn splice(&mut self, id: usize, replacement: Link) {
        let parent = self.node(id).parent;
        if let Some(r) = replacement {
            self.node_mut(r).parent = parent;
        }
        match parent {
            None => self.root = replacement,
            Some(p) => {
                let pn = self.node_mut(p);
                if pn.left == Some(id) {
                    pn.left = replacement;
                } else {
                    pn.right = replacement;
                }
            }
        }
        self.nodes[id] = None;
        self.len -= 1;
    }

    /// Textbook delete. A node with two children takes its successor's key,
    /// and the successor is spliced out in favour of its right child.
    pub fn delete_standard(&mut self, key: i64) -> bool {
        let Some(id) = self.find(key) else {
            return false;
        };
        let (left, right) = (self.node(id).left, self.node(id).right);
        match (left, right) {
            (None, child) | (child, None) => self.splice(id, child),
            (Some(_), Some(_)) => {
                let succ = self.successor(id).expect("right subtree is nonempty");
                let succ_key = self.node(succ).key;
                let succ_right = self.node(succ).right;
                self.node_mut(id).key = succ_key;
                self.splice(succ, succ_right);
            }
        }
        true
    }

    /// Mirror image of [`Self::delete_standard`] using the predecessor.
    pub fn delete_predecessor(&mut self, key: i64) -> bool {
        let Some(id) = self.find(key) else {
            return false;
        };
        let (left, right) = (self.node(id).left, self.node(id).right);
        match (left, right) {
            (None, child) | (child, None) => self.splice(id, child),
            (Some(_), Some(_)) => {
                let pred = self.predecessor(id).expect("left subtree is nonempty");
                let pred_key = self.node(pred).key;
                let pred_left = self.node(pred).left;
                self.node_mut(id).key = pred_key;
                self.splice(pred, pred_left);
            }
        }
        true
    }

    /// Leaf-chasing delete. Returns false when the key is absent.
    ///
    /// Descends to the key; if it sits on a non-leaf, repeatedly copies the
    /// successor key up (or the predecessor key when the right child is
    /// empty) and moves there, then removes the leaf it ends on.
    pub fn delete_modified(&mut self, key: i64) -> bool {
        let Some(mut v) = self.root else { return false };
        while !self.is_leaf(v) && key != self.node(v).key {
            let node = self.node(v);
            let next = if key > node.key {
                node.right
            } else {
                node.left
            };
            match next {
                Some(child) => v = child,
                None => return false,
            }
        }
        if key != self.node(v).key {
            return false;
        }
        while !self.is_leaf(v) {
            let next = if self.node(v).right.is_some() {
                self.successor(v)
            } else {
                self.predecessor(v)
            }
            .expect("non-leaf has a successor or predecessor");
            let moved = self.node(next).key;
            self.node_mut(v).key = moved;
            v = next;
        }
        self.splice(v, None);
        true
    }

    /// Structure with keys erased.
    pub fn shape(&self) -> Shape {
        fn build(tree: &KeyedTree, link: Link) -> Shape {
            match link {
                None => Shape::empty(),
                Some(id) => {
                    let node = tree.node(id);
                    Shape::node(build(tree, node.left), build(tree, node.right))
                }
            }
        }
        build(self, self.root)
    }

    /// Keys `1..=n` placed by in-order rank on the given shape.
    pub fn realize(shape: &Shape) -> KeyedTree {
        fn place(tree: &mut KeyedTree, shape: &Shape, parent: Link, next_key: &mut i64) -> Link {
            let (l, r) = shape.children()?;
            let id = tree.alloc(0, parent);
            let left = place(tree, l, Some(id), next_key);
            let key = *next_key;
            *next_key += 1;
            let right = place(tree, r, Some(id), next_key);
            let node = tree.node_mut(id);
            node.key = key;
            node.left = left;
            node.right = right;
            Some(id)
        }
        let mut tree = KeyedTree::new();
        let mut next_key = 1;
        tree.root = place(&mut tree, shape, None, &mut next_key);
        tree
    }

    /// Checks left < node < right throughout.
    pub fn is_search_tree(&self) -> bool {
        self.keys_in_order().windows(2).all(|w| w[0] < w[1])
    }
}

/// Keyed realization of a shape; keys are in-order ranks.
pub fn keyed_realize(shape: &Shape) -> KeyedTree {
    KeyedTree::realize(shape)
}

pub fn shape_of(tree: &KeyedTree) -> Shape {
    tree.shape()
}
