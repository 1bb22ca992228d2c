//! Labeled trees on dense vertex indices `0..n`.
//!
//! A [`Tree`] is validated on construction and immutable afterwards. Every
//! other module in the crate takes trees by reference.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("a tree needs at least one vertex")]
    Empty,
    #[error("vertex {vertex} out of range for a tree on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("graph contains a cycle ({edges} edges on {n} vertices)")]
    Cycle { n: usize, edges: usize },
    #[error("graph is disconnected ({edges} edges on {n} vertices)")]
    Disconnected { n: usize, edges: usize },
}

/// A simple, connected, acyclic graph with sorted adjacency lists.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    adj: Vec<Vec<usize>>,
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tree")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Tree {
    /// Builds a tree from an edge list, rejecting anything that is not a tree.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Tree, TreeError> {
        if n == 0 {
            return Err(TreeError::Empty);
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(TreeError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(TreeError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let v = w[0];
                return Err(TreeError::DuplicateEdge(u.min(v), u.max(v)));
            }
        }
        let tree = Tree { adj };
        let m = edges.len();
        // connected with n-1 edges is a tree; n-1 edges but disconnected forces a cycle
        match (tree.is_connected(), m.cmp(&(n - 1))) {
            (true, std::cmp::Ordering::Equal) => Ok(tree),
            (_, std::cmp::Ordering::Greater) | (false, std::cmp::Ordering::Equal) => {
                Err(TreeError::Cycle { n, edges: m })
            }
            (false, std::cmp::Ordering::Less) => Err(TreeError::Disconnected { n, edges: m }),
            (true, std::cmp::Ordering::Less) => {
                unreachable!("connected graph has at least n-1 edges")
            }
        }
    }

    /// Builds a tree from a parent array; `parent[root]` must be `None`.
    pub fn from_parents(parent: &[Option<usize>]) -> Result<Tree, TreeError> {
        let edges: Vec<(usize, usize)> = parent
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.map(|p| (p, v)))
            .collect();
        Tree::from_edges(parent.len(), &edges)
    }

    pub(crate) fn from_adjacency_unchecked(mut adj: Vec<Vec<usize>>) -> Tree {
        for list in &mut adj {
            list.sort_unstable();
        }
        let tree = Tree { adj };
        debug_assert!(tree.is_connected() && tree.edge_count() + 1 == tree.n());
        tree
    }

    /// The path on `n` vertices, labeled `0-1-...-(n-1)`.
    pub fn path(n: usize) -> Tree {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Tree::from_edges(n, &edges).expect("path is a tree")
    }

    /// The star `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Tree {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Tree::from_edges(leaves + 1, &edges).expect("star is a tree")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// Degree sequence in non-increasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d = self.degrees();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.adj[v].len() == 1
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n()];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.n()
    }

    fn check_vertex(&self, v: usize) -> Result<(), TreeError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(TreeError::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        }
    }

    /// BFS distances from `source` to every vertex.
    pub fn distances_from(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        let mut queue = VecDeque::from([source]);
        dist[source] = 0;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Number of edges on the unique `u`-`v` path.
    pub fn distance(&self, u: usize, v: usize) -> Result<usize, TreeError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.distances_from(u)[v])
    }

    /// Vertices at exactly distance two from `v`.
    pub fn second_neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.adj[v]
            .iter()
            .flat_map(|&m| self.adj[m].iter().copied().filter(move |&w| w != v))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn diameter(&self) -> usize {
        let d0 = self.distances_from(0);
        let far = argmax(&d0);
        let d1 = self.distances_from(far);
        d1.into_iter().max().unwrap_or(0)
    }

    /// The one or two central vertices (minimum eccentricity), ascending.
    pub fn centers(&self) -> Vec<usize> {
        let a = argmax(&self.distances_from(0));
        let (parent, order) = self.rooted(a);
        let b = *order.last().expect("nonempty");
        let mut path = vec![b];
        while let Some(p) = parent[*path.last().unwrap()] {
            path.push(p);
        }
        let d = path.len() - 1;
        let mut out = if d % 2 == 0 {
            vec![path[d / 2]]
        } else {
            vec![path[d / 2], path[d / 2 + 1]]
        };
        out.sort_unstable();
        out
    }

    /// Unique 2-coloring with class sizes `(p, q)`, `p <= q`.
    pub fn bipartition(&self) -> Bipartition {
        let dist = self.distances_from(0);
        let even = dist.iter().filter(|d| *d % 2 == 0).count();
        let odd = self.n() - even;
        // class label 0 is the smaller class; at p == q it is vertex 0's class
        let zero_is_even = even <= odd;
        let class_of = dist
            .iter()
            .map(|d| if (d % 2 == 0) == zero_is_even { 0 } else { 1 })
            .collect();
        Bipartition {
            p: even.min(odd),
            q: even.max(odd),
            class_of,
        }
    }

    /// Returns the tree with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Tree {
        assert_eq!(perm.len(), self.n(), "permutation length mismatch");
        let mut adj = vec![Vec::new(); self.n()];
        for (u, list) in self.adj.iter().enumerate() {
            adj[perm[u]] = list.iter().map(|&v| perm[v]).collect();
        }
        Tree::from_adjacency_unchecked(adj)
    }

    /// Children lists of the tree rooted at `root`, plus a BFS order.
    fn rooted(&self, root: usize) -> (Vec<Option<usize>>, Vec<usize>) {
        let mut parent = vec![None; self.n()];
        let mut order = Vec::with_capacity(self.n());
        let mut seen = vec![false; self.n()];
        seen[root] = true;
        order.push(root);
        let mut i = 0;
        while i < order.len() {
            let u = order[i];
            i += 1;
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = Some(u);
                    order.push(v);
                }
            }
        }
        (parent, order)
    }

    /// AHU encoding of the tree rooted at `root`: each vertex is
    /// `(` + sorted child encodings + `)`.
    pub fn rooted_code(&self, root: usize) -> CanonicalCode {
        let (parent, order) = self.rooted(root);
        let mut codes: Vec<Vec<Vec<u8>>> = vec![Vec::new(); self.n()];
        let mut finished: Vec<Vec<u8>> = vec![Vec::new(); self.n()];
        for &v in order.iter().rev() {
            let mut children = std::mem::take(&mut codes[v]);
            children.sort_unstable();
            let len = children.iter().map(Vec::len).sum::<usize>() + 2;
            let mut code = Vec::with_capacity(len);
            code.push(OPEN);
            for c in children {
                code.extend_from_slice(&c);
            }
            code.push(CLOSE);
            match parent[v] {
                Some(p) => codes[p].push(code),
                None => finished[v] = code,
            }
        }
        CanonicalCode(std::mem::take(&mut finished[root]))
    }

    /// Center-rooted encoding; for bicentral trees the smaller of the two.
    pub fn canonical_code(&self) -> CanonicalCode {
        self.centers()
            .into_iter()
            .map(|c| self.rooted_code(c))
            .min()
            .expect("a tree has at least one center")
    }

    /// The canonically labeled copy of this tree (a function of its code).
    pub fn canonical_form(&self) -> Tree {
        self.canonical_code().to_tree()
    }

    pub fn is_isomorphic(&self, other: &Tree) -> bool {
        self.n() == other.n() && self.canonical_code() == other.canonical_code()
    }
}

/// Free-function form of [`Tree::is_isomorphic`].
pub fn isomorphic(a: &Tree, b: &Tree) -> bool {
    a.is_isomorphic(b)
}

fn argmax(xs: &[usize]) -> usize {
    xs.iter()
        .enumerate()
        .max_by_key(|&(i, &d)| (d, std::cmp::Reverse(i)))
        .map(|(i, _)| i)
        .unwrap_or(0)
}

/// Two-coloring of a tree. Class `0` is the smaller one (size `p`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    pub p: usize,
    pub q: usize,
    pub class_of: Vec<u8>,
}

impl Bipartition {
    pub fn sizes(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn same_class(&self, u: usize, v: usize) -> bool {
        self.class_of[u] == self.class_of[v]
    }
}

const OPEN: u8 = b'(';
const CLOSE: u8 = b')';

/// Isomorphism-complete encoding of a tree, ordered lexicographically.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.0).expect("code is ASCII")
    }

    /// Number of vertices encoded.
    pub fn order(&self) -> usize {
        self.0.len() / 2
    }

    /// Parses a parenthesis string produced by [`CanonicalCode::as_str`].
    pub fn parse(s: &str) -> Option<CanonicalCode> {
        let mut depth = 0usize;
        for (i, b) in s.bytes().enumerate() {
            match b {
                OPEN => depth += 1,
                CLOSE if depth > 0 => {
                    depth -= 1;
                    if depth == 0 && i + 1 != s.len() {
                        return None;
                    }
                }
                _ => return None,
            }
        }
        (depth == 0 && !s.is_empty()).then(|| CanonicalCode(s.as_bytes().to_vec()))
    }

    /// Decodes into a tree labeled in preorder: the root is 0 and children
    /// are visited in code order.
    pub fn to_tree(&self) -> Tree {
        let n = self.order();
        let mut adj = vec![Vec::new(); n];
        let mut stack: Vec<usize> = Vec::new();
        let mut next = 0;
        for &b in &self.0 {
            if b == OPEN {
                if let Some(&p) = stack.last() {
                    adj[p].push(next);
                    adj[next].push(p);
                }
                stack.push(next);
                next += 1;
            } else {
                stack.pop();
            }
        }
        Tree::from_adjacency_unchecked(adj)
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", self.as_str())
    }
}
