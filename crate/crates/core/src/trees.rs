//! Leaf-decorated unordered binary rooted trees.
//!
//! A tree on a leaf set J has a root of valence one, |J| leaves and |J| − 1
//! interior vertices of valence three. Trees are enumerated with the
//! insertion recursion: every tree on j₁ < … < j_k arises exactly once by
//! inserting leaf j_k in the middle of one of the 2k − 3 edges of a tree
//! on j₁ < … < j_{k−1}.

use std::fmt;

/// Subset of {0, …, r−1}, bit i standing for e_{i}.
pub type Mask = u64;

pub fn mask_of(indices: &[usize]) -> Mask {
    indices.iter().fold(0, |m, &i| m | (1 << i))
}

pub fn full_mask(r: usize) -> Mask {
    assert!(r < 64, "at most 63 leaves");
    (1u64 << r) - 1
}

pub fn mask_indices(m: Mask) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| m & (1 << i) != 0)
}

/// Nonempty proper subsets of `m`.
pub fn proper_subsets(m: Mask) -> impl Iterator<Item = Mask> {
    let mut s = m;
    std::iter::from_fn(move || loop {
        if s == 0 {
            return None;
        }
        s = (s - 1) & m;
        if s != 0 {
            return Some(s);
        }
    })
}

/// Index of a non-root vertex.
pub type VertexId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Leaf(usize),
    Interior { left: VertexId, right: VertexId },
}

/// Canonical form: vertices in preorder starting from the child of the root,
/// and at each interior vertex the child holding the smallest leaf comes first.
/// Two trees are isomorphic iff their canonical forms are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DecoratedTree {
    nodes: Vec<Node>,
    charges: Vec<Mask>,
}

impl DecoratedTree {
    pub fn leaf(i: usize) -> Self {
        DecoratedTree { nodes: vec![Node::Leaf(i)], charges: vec![1 << i] }
    }

    /// Joins two trees below a fresh root.
    pub fn join(a: &DecoratedTree, b: &DecoratedTree) -> Self {
        let (a, b) = if a.charges[0].trailing_zeros() < b.charges[0].trailing_zeros() { (a, b) } else { (b, a) };
        let mut nodes = vec![Node::Interior { left: 1, right: 1 + a.nodes.len() }];
        let mut charges = vec![a.charges[0] | b.charges[0]];
        for (off, t) in [(1, a), (1 + a.nodes.len(), b)] {
            nodes.extend(t.nodes.iter().map(|n| match *n {
                Node::Leaf(i) => Node::Leaf(i),
                Node::Interior { left, right } => Node::Interior { left: left + off, right: right + off },
            }));
            charges.extend_from_slice(&t.charges);
        }
        DecoratedTree { nodes, charges }
    }

    /// The child of the root.
    pub fn top(&self) -> VertexId {
        0
    }

    pub fn node(&self, v: VertexId) -> Node {
        self.nodes[v]
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    /// Charge e_v as the set J_{T,v} of leaves below v.
    pub fn charge(&self, v: VertexId) -> Mask {
        self.charges[v]
    }

    pub fn leaf_set(&self) -> Mask {
        self.charges[0]
    }

    /// Number of vertices including the root.
    pub fn vertex_count(&self) -> usize {
        self.nodes.len() + 1
    }

    pub fn edge_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn children(&self, v: VertexId) -> Option<(VertexId, VertexId)> {
        match self.nodes[v] {
            Node::Leaf(_) => None,
            Node::Interior { left, right } => Some((left, right)),
        }
    }

    pub fn interior(&self) -> impl Iterator<Item = (VertexId, VertexId, VertexId)> + '_ {
        (0..self.nodes.len()).filter_map(|v| self.children(v).map(|(a, b)| (v, a, b)))
    }

    /// Parent of each non-root vertex; `None` marks the child of the root.
    pub fn parents(&self) -> Vec<Option<VertexId>> {
        let mut p = vec![None; self.nodes.len()];
        for (v, a, b) in self.interior() {
            p[a] = Some(v);
            p[b] = Some(v);
        }
        p
    }

    fn render(&self, v: VertexId, out: &mut String) {
        match self.nodes[v] {
            Node::Leaf(i) => out.push_str(&(i + 1).to_string()),
            Node::Interior { left, right } => {
                out.push('{');
                self.render(left, out);
                out.push(',');
                self.render(right, out);
                out.push('}');
            }
        }
    }

    fn from_arena(arena: &[ArenaNode], top: usize) -> Self {
        fn visit(arena: &[ArenaNode], u: usize, nodes: &mut Vec<Node>, charges: &mut Vec<Mask>) -> usize {
            let idx = nodes.len();
            match arena[u] {
                ArenaNode::Leaf(i) => {
                    nodes.push(Node::Leaf(i));
                    charges.push(1 << i);
                }
                ArenaNode::Interior(a, b) => {
                    nodes.push(Node::Leaf(usize::MAX));
                    charges.push(0);
                    let (a, b) = if arena_min(arena, a) < arena_min(arena, b) { (a, b) } else { (b, a) };
                    let left = visit(arena, a, nodes, charges);
                    let right = visit(arena, b, nodes, charges);
                    nodes[idx] = Node::Interior { left, right };
                    charges[idx] = charges[left] | charges[right];
                }
            }
            idx
        }
        let mut nodes = Vec::with_capacity(arena.len());
        let mut charges = Vec::with_capacity(arena.len());
        visit(arena, top, &mut nodes, &mut charges);
        DecoratedTree { nodes, charges }
    }
}

impl fmt::Display for DecoratedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::from("{");
        self.render(0, &mut s);
        s.push('}');
        f.write_str(&s)
    }
}

#[derive(Clone, Copy)]
enum ArenaNode {
    Leaf(usize),
    Interior(usize, usize),
}

fn arena_min(arena: &[ArenaNode], u: usize) -> usize {
    match arena[u] {
        ArenaNode::Leaf(i) => i,
        ArenaNode::Interior(a, b) => arena_min(arena, a).min(arena_min(arena, b)),
    }
}

/// Lazy enumeration of all trees on a leaf set, one per isomorphism class.
pub struct TreeIter {
    leaves: Vec<usize>,
    choices: Vec<usize>,
    done: bool,
}

impl TreeIter {
    fn build(&self) -> DecoratedTree {
        let mut arena = vec![ArenaNode::Leaf(self.leaves[0])];
        let mut parent: Vec<Option<usize>> = vec![None];
        let mut top = 0;
        for (i, &u) in self.choices.iter().enumerate() {
            let w = arena.len();
            let l = w + 1;
            arena.push(ArenaNode::Interior(u, l));
            arena.push(ArenaNode::Leaf(self.leaves[i + 1]));
            parent.push(parent[u]);
            parent.push(Some(w));
            match parent[u] {
                None => top = w,
                Some(p) => {
                    if let ArenaNode::Interior(a, b) = arena[p] {
                        arena[p] = if a == u { ArenaNode::Interior(w, b) } else { ArenaNode::Interior(a, w) };
                    }
                }
            }
            parent[u] = Some(w);
        }
        DecoratedTree::from_arena(&arena, top)
    }
}

impl Iterator for TreeIter {
    type Item = DecoratedTree;

    fn next(&mut self) -> Option<DecoratedTree> {
        if self.done {
            return None;
        }
        let t = self.build();
        // odometer over edge choices; position i ranges over the 2i+1 edges
        let mut i = self.choices.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.choices[i] += 1;
            if self.choices[i] < 2 * i + 1 {
                break;
            }
            self.choices[i] = 0;
        }
        Some(t)
    }
}

/// All J-decorated trees; the count is (2|J| − 3)!!.
pub fn enumerate_trees(j: Mask) -> TreeIter {
    assert!(j != 0, "leaf set must be nonempty");
    let leaves: Vec<usize> = mask_indices(j).collect();
    let k = leaves.len();
    TreeIter { leaves, choices: vec![0; k - 1], done: false }
}

/// (2k − 3)!! for k ≥ 1.
pub fn tree_count(k: usize) -> u64 {
    (1..k).map(|i| 2 * i as u64 - 1).product()
}

/// Trees whose top split pairs nontrivially under `pair`; the one-leaf tree is always kept.
pub fn filter_eta<I, F>(trees: I, pair: F) -> impl Iterator<Item = DecoratedTree>
where
    I: Iterator<Item = DecoratedTree>,
    F: Fn(Mask, Mask) -> i64,
{
    trees.filter(move |t| in_eta_class(t, &pair))
}

pub fn in_eta_class<F: Fn(Mask, Mask) -> i64>(t: &DecoratedTree, pair: F) -> bool {
    match t.children(t.top()) {
        None => true,
        Some((a, b)) => pair(t.charge(a), t.charge(b)) != 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn counts_match_double_factorial() {
        let expect = [1u64, 1, 3, 15, 105, 945, 10395];
        for (k, &e) in expect.iter().enumerate() {
            let n = enumerate_trees(full_mask(k + 1)).count() as u64;
            assert_eq!(n, e);
            assert_eq!(tree_count(k + 1), e);
        }
    }

    #[test]
    fn three_leaf_trees() {
        let got: Vec<String> = enumerate_trees(0b111).map(|t| t.to_string()).collect();
        let mut sorted = got.clone();
        sorted.sort();
        assert_eq!(sorted, vec!["{{1,{2,3}}}", "{{{1,2},3}}", "{{{1,3},2}}"]);
        assert_eq!(enumerate_trees(0b1).next().unwrap().to_string(), "{1}");
    }

    #[test]
    fn subsets_of_indices() {
        let t: Vec<String> = enumerate_trees(0b1010).map(|t| t.to_string()).collect();
        assert_eq!(t, vec!["{{2,4}}"]);
    }

    #[test]
    fn no_duplicates_and_lemma_counts() {
        let all: Vec<DecoratedTree> = enumerate_trees(full_mask(5)).collect();
        let set: HashSet<&DecoratedTree> = all.iter().collect();
        assert_eq!(set.len(), all.len());
        for t in &all {
            assert_eq!(t.vertex_count(), 10);
            assert_eq!(t.edge_count(), 9);
            assert_eq!(t.charge(t.top()), full_mask(5));
            for (v, a, b) in t.interior() {
                assert_eq!(t.charge(v), t.charge(a) | t.charge(b));
                assert_eq!(t.charge(a) & t.charge(b), 0);
            }
        }
    }

    #[test]
    fn charges_of_named_tree() {
        let t = DecoratedTree::join(&DecoratedTree::leaf(0), &DecoratedTree::join(&DecoratedTree::leaf(1), &DecoratedTree::leaf(2)));
        assert_eq!(t.to_string(), "{{1,{2,3}}}");
        let (a, b) = t.children(0).unwrap();
        assert_eq!(t.charge(a), 0b001);
        assert_eq!(t.charge(b), 0b110);
        assert!(enumerate_trees(0b111).any(|u| u == t));
    }

    #[test]
    fn eta_filter() {
        let zero = |_: Mask, _: Mask| 0;
        assert_eq!(filter_eta(enumerate_trees(0b11), zero).count(), 0);
        assert_eq!(filter_eta(enumerate_trees(0b1), zero).count(), 1);
        // Kronecker-2 with gammas (1,0),(1,0),(0,1)
        let eta = [[0i64, 0, 2], [0, 0, 2], [-2, -2, 0]];
        let pair = |a: Mask, b: Mask| {
            let mut s = 0;
            for i in mask_indices(a) {
                for j in mask_indices(b) {
                    s += eta[i][j];
                }
            }
            s
        };
        assert_eq!(filter_eta(enumerate_trees(0b111), pair).count(), 3);
    }

    #[test]
    fn proper_subset_iteration() {
        let v: Vec<Mask> = proper_subsets(0b101).collect();
        assert_eq!(v, vec![0b100, 0b001]);
        assert_eq!(proper_subsets(0b1111).count(), 14);
    }
}
