//! Reduced tree pair diagrams for Thompson's group F.
//!
//! A binary tree is stored as its preorder sequence of nodes, `true` for a
//! caret (internal node) and `false` for a leaf. The leaves of a tree read
//! left to right are the standard dyadic subdivision of `[0, 1]` it encodes.
//! A pair `(domain, range)` with the same number of leaves names the
//! piecewise-linear map sending the i-th domain interval affinely onto the
//! i-th range interval.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryTree {
    nodes: Vec<bool>,
}

impl BinaryTree {
    /// The single-leaf tree (the trivial subdivision).
    pub fn leaf() -> Self {
        BinaryTree { nodes: vec![false] }
    }

    pub fn caret(left: BinaryTree, right: BinaryTree) -> Self {
        let mut nodes = Vec::with_capacity(1 + left.nodes.len() + right.nodes.len());
        nodes.push(true);
        nodes.extend_from_slice(&left.nodes);
        nodes.extend_from_slice(&right.nodes);
        BinaryTree { nodes }
    }

    /// Builds a tree from a preorder caret/leaf sequence, checking that it
    /// describes exactly one full binary tree.
    pub fn from_preorder(nodes: Vec<bool>) -> Result<Self> {
        let mut open = 1usize;
        for (i, &caret) in nodes.iter().enumerate() {
            if open == 0 {
                return Err(Error::Structural(format!(
                    "preorder sequence has trailing nodes after position {i}"
                )));
            }
            if caret {
                open += 1;
            } else {
                open -= 1;
            }
        }
        if open != 0 {
            return Err(Error::Structural("preorder sequence is incomplete".into()));
        }
        Ok(BinaryTree { nodes })
    }

    /// Parses the bracket notation used in `Display`: `.` is a leaf and
    /// `(l r)` a caret.
    pub fn parse(s: &str) -> Result<Self> {
        let mut nodes = Vec::new();
        for ch in s.chars() {
            match ch {
                '(' => nodes.push(true),
                '.' | 'x' => nodes.push(false),
                ')' | ' ' => {}
                other => {
                    return Err(Error::Structural(format!(
                        "unexpected character {other:?} in tree"
                    )))
                }
            }
        }
        Self::from_preorder(nodes)
    }

    pub fn preorder(&self) -> &[bool] {
        &self.nodes
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes.iter().filter(|&&c| !c).count()
    }

    pub fn caret_count(&self) -> usize {
        self.nodes.len() - self.leaf_count()
    }

    /// Smallest common refinement of two subdivisions.
    pub fn union(&self, other: &BinaryTree) -> BinaryTree {
        let mut out = Vec::with_capacity(self.nodes.len().max(other.nodes.len()));
        let (mut i, mut j) = (0, 0);
        union_into(&self.nodes, &mut i, &other.nodes, &mut j, &mut out);
        BinaryTree { nodes: out }
    }

    /// For a refinement `finer` of `self`, the preorder slices of `finer`
    /// hanging below each leaf of `self`, in leaf order.
    fn leaf_expansions<'a>(&self, finer: &'a BinaryTree) -> Vec<&'a [bool]> {
        let mut out = Vec::with_capacity(self.leaf_count());
        let mut j = 0;
        for &caret in &self.nodes {
            if caret {
                debug_assert!(finer.nodes[j], "tree is not a refinement");
                j += 1;
            } else {
                let end = subtree_end(&finer.nodes, j);
                out.push(&finer.nodes[j..end]);
                j = end;
            }
        }
        out
    }

    /// Replaces the i-th leaf with the i-th subtree.
    fn graft(&self, subtrees: &[&[bool]]) -> BinaryTree {
        let extra: usize = subtrees.iter().map(|s| s.len() - 1).sum();
        let mut out = Vec::with_capacity(self.nodes.len() + extra);
        let mut leaf = 0;
        for &caret in &self.nodes {
            if caret {
                out.push(true);
            } else {
                out.extend_from_slice(subtrees[leaf]);
                leaf += 1;
            }
        }
        BinaryTree { nodes: out }
    }

    /// Left-leaf indices `i` such that leaves `i, i + 1` hang from a common
    /// caret. Sorted ascending.
    fn exposed_carets(&self) -> Vec<usize> {
        let n = &self.nodes;
        let mut out = Vec::new();
        let mut leaves = 0;
        for p in 0..n.len() {
            if n[p] {
                if p + 2 < n.len() && !n[p + 1] && !n[p + 2] {
                    out.push(leaves);
                }
            } else {
                leaves += 1;
            }
        }
        out
    }

    /// Collapses the exposed carets whose left leaf index is in `which`.
    fn collapse(&self, which: &[usize]) -> BinaryTree {
        let n = &self.nodes;
        let mut out = Vec::with_capacity(n.len());
        let mut leaves = 0;
        let mut k = 0;
        let mut p = 0;
        while p < n.len() {
            if n[p]
                && p + 2 < n.len()
                && !n[p + 1]
                && !n[p + 2]
                && k < which.len()
                && which[k] == leaves
            {
                out.push(false);
                leaves += 2;
                k += 1;
                p += 3;
                continue;
            }
            if !n[p] {
                leaves += 1;
            }
            out.push(n[p]);
            p += 1;
        }
        BinaryTree { nodes: out }
    }

    /// Depth of each leaf, left to right. A leaf at depth `d` is an
    /// interval of length `2^-d`.
    pub fn leaf_depths(&self) -> Vec<u32> {
        let mut depths = Vec::with_capacity(self.leaf_count());
        let mut stack: Vec<u32> = vec![0];
        for &caret in &self.nodes {
            let d = stack.pop().expect("well-formed tree");
            if caret {
                stack.push(d + 1);
                stack.push(d + 1);
            } else {
                depths.push(d);
            }
        }
        depths
    }
}

fn subtree_end(nodes: &[bool], start: usize) -> usize {
    let mut open = 1usize;
    let mut p = start;
    while open > 0 {
        if nodes[p] {
            open += 1;
        } else {
            open -= 1;
        }
        p += 1;
    }
    p
}

fn union_into(a: &[bool], i: &mut usize, b: &[bool], j: &mut usize, out: &mut Vec<bool>) {
    match (a[*i], b[*j]) {
        (false, false) => {
            out.push(false);
            *i += 1;
            *j += 1;
        }
        (false, true) => {
            *i += 1;
            let end = subtree_end(b, *j);
            out.extend_from_slice(&b[*j..end]);
            *j = end;
        }
        (true, false) => {
            *j += 1;
            let end = subtree_end(a, *i);
            out.extend_from_slice(&a[*i..end]);
            *i = end;
        }
        (true, true) => {
            out.push(true);
            *i += 1;
            *j += 1;
            union_into(a, i, b, j, out);
            union_into(a, i, b, j, out);
        }
    }
}

impl fmt::Display for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // closing brackets are implied by arity; track them for readability
        let mut pending: Vec<u8> = Vec::new();
        for &caret in &self.nodes {
            if caret {
                f.write_str("(")?;
                pending.push(2);
            } else {
                f.write_str(".")?;
                while let Some(top) = pending.last_mut() {
                    *top -= 1;
                    if *top == 0 {
                        pending.pop();
                        f.write_str(")")?;
                    } else {
                        break;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An element of F as a reduced pair of subdivisions.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TreePair {
    domain: BinaryTree,
    range: BinaryTree,
}

impl TreePair {
    pub fn identity() -> Self {
        TreePair {
            domain: BinaryTree::leaf(),
            range: BinaryTree::leaf(),
        }
    }

    /// Pairs two trees without reducing. Fails if leaf counts differ.
    pub fn new(domain: BinaryTree, range: BinaryTree) -> Result<Self> {
        let (dl, rl) = (domain.leaf_count(), range.leaf_count());
        if dl != rl {
            return Err(Error::Structural(format!(
                "domain tree has {dl} leaves but range tree has {rl}"
            )));
        }
        Ok(TreePair { domain, range })
    }

    /// The standard generator `x0`: `t/2` on `[0,1/2]`, `t - 1/4` on
    /// `[1/2,3/4]`, `2t - 1` on `[3/4,1]`.
    pub fn generator_a() -> Self {
        let l = BinaryTree::leaf;
        TreePair {
            domain: BinaryTree::caret(l(), BinaryTree::caret(l(), l())),
            range: BinaryTree::caret(BinaryTree::caret(l(), l()), l()),
        }
    }

    /// The standard generator `x1`: identity on `[0,1/2]`, a rescaled copy
    /// of `x0` on `[1/2,1]`.
    pub fn generator_b() -> Self {
        let l = BinaryTree::leaf;
        TreePair {
            domain: BinaryTree::caret(l(), BinaryTree::caret(l(), BinaryTree::caret(l(), l()))),
            range: BinaryTree::caret(l(), BinaryTree::caret(BinaryTree::caret(l(), l()), l())),
        }
    }

    pub fn domain(&self) -> &BinaryTree {
        &self.domain
    }

    pub fn range(&self) -> &BinaryTree {
        &self.range
    }

    pub fn leaf_count(&self) -> usize {
        self.domain.leaf_count()
    }

    pub fn is_identity(&self) -> bool {
        self.domain.nodes.len() == 1
    }

    pub fn is_reduced(&self) -> bool {
        let d = self.domain.exposed_carets();
        let r = self.range.exposed_carets();
        intersect_sorted(&d, &r).is_empty()
    }

    /// Removes common exposed carets until none remain.
    pub fn reduce(mut self) -> Self {
        loop {
            let d = self.domain.exposed_carets();
            let r = self.range.exposed_carets();
            let common = intersect_sorted(&d, &r);
            if common.is_empty() {
                return self;
            }
            self.domain = self.domain.collapse(&common);
            self.range = self.range.collapse(&common);
        }
    }

    pub fn inverse(&self) -> Self {
        TreePair {
            domain: self.range.clone(),
            range: self.domain.clone(),
        }
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &TreePair) -> TreePair {
        let common = other.range.union(&self.domain);
        let domain = other.domain.graft(&other.range.leaf_expansions(&common));
        let range = self.range.graft(&self.domain.leaf_expansions(&common));
        TreePair { domain, range }.reduce()
    }
}

fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

impl fmt::Display for TreePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} -> {}]", self.domain, self.range)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> BinaryTree {
        BinaryTree::parse(s).unwrap()
    }

    #[test]
    fn parse_and_display_agree() {
        for s in [".", "(..)", "(.(..))", "((..)(.(..)))"] {
            assert_eq!(t(s).to_string(), s);
        }
        assert!(BinaryTree::parse("(.").is_err());
        assert!(BinaryTree::parse("..").is_err());
    }

    #[test]
    fn union_is_common_refinement() {
        let u = t("(.(..))").union(&t("((..).)"));
        assert_eq!(u.to_string(), "((..)(..))");
        assert_eq!(t("(..)").union(&t(".")), t("(..)"));
    }

    #[test]
    fn mismatched_leaf_counts_rejected() {
        assert!(matches!(
            TreePair::new(t("(..)"), t("(.(..))")),
            Err(Error::Structural(_))
        ));
    }

    #[test]
    fn single_common_caret_is_removed() {
        // caret on leaves (0,1) in both trees
        let pair = TreePair::new(t("((..)(..))"), t("((..)(..))")).unwrap();
        assert!(pair.clone().reduce().is_identity());

        let pair = TreePair::new(t("((..)(.(..)))"), t("((..)((..).))")).unwrap();
        let reduced = pair.reduce();
        assert_eq!(reduced.leaf_count(), 4);
        assert_eq!(reduced.domain().to_string(), "(.(.(..)))");
        assert_eq!(reduced.range().to_string(), "(.((..).))");
    }

    #[test]
    fn reduction_is_idempotent() {
        let a = TreePair::generator_a();
        assert!(a.is_reduced());
        assert_eq!(a.clone().reduce(), a);
    }

    #[test]
    fn inverse_swaps_trees() {
        let a = TreePair::generator_a();
        let inv = a.inverse();
        assert_eq!(inv.domain(), a.range());
        assert!(a.compose(&inv).is_identity());
        assert!(inv.compose(&a).is_identity());
    }
}
