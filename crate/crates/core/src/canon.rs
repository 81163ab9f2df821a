//! Canonical codes and a small canonical-form routine for colored multigraphs.

use std::collections::BTreeMap;
use std::fmt;

/// Canonical byte string of a coset datum. Equal codes mean isomorphic data.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonCode(Vec<u8>);

impl CanonCode {
    pub fn from_words(words: &[u64]) -> Self {
        let mut bytes = Vec::with_capacity(words.len() * 4);
        for &w in words {
            // variable-length, prefix-free
            let mut v = w;
            loop {
                let b = (v & 0x7f) as u8;
                v >>= 7;
                if v == 0 {
                    bytes.push(b);
                    break;
                }
                bytes.push(b | 0x80);
            }
        }
        CanonCode(bytes)
    }

    pub fn with_tag(tag: &[u8], words: &[u64]) -> Self {
        let mut c = tag.to_vec();
        c.extend(CanonCode::from_words(words).0);
        CanonCode(c)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Display for CanonCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

/// A directed multigraph with colored vertices and labeled edges.
#[derive(Debug, Clone, Default)]
pub struct ColoredGraph {
    pub vertex_colors: Vec<u64>,
    /// `(from, to, label)`
    pub edges: Vec<(usize, usize, u64)>,
}

impl ColoredGraph {
    pub fn new(vertex_colors: Vec<u64>) -> Self {
        ColoredGraph { vertex_colors, edges: Vec::new() }
    }

    pub fn add_edge(&mut self, from: usize, to: usize, label: u64) {
        self.edges.push((from, to, label));
    }

    pub fn len(&self) -> usize {
        self.vertex_colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertex_colors.is_empty()
    }

    /// Vertex sets of the weakly connected components, in order of smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.len());
        for &(a, b, _) in &self.edges {
            uf.union(a, b);
        }
        uf.groups()
    }

    pub fn induced(&self, vertices: &[usize]) -> ColoredGraph {
        let mut pos = vec![usize::MAX; self.len()];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let mut g = ColoredGraph::new(vertices.iter().map(|&v| self.vertex_colors[v]).collect());
        for &(a, b, l) in &self.edges {
            if pos[a] != usize::MAX && pos[b] != usize::MAX {
                g.add_edge(pos[a], pos[b], l);
            }
        }
        g
    }

    /// Lexicographically minimal code over all labelings reachable by
    /// individualization and refinement. Isomorphic graphs get equal codes.
    pub fn canonical_code(&self) -> Vec<u64> {
        let n = self.len();
        if n == 0 {
            return vec![0];
        }
        let mut adj: Vec<Vec<(bool, u64, usize)>> = vec![Vec::new(); n];
        for &(a, b, l) in &self.edges {
            adj[a].push((true, l, b));
            adj[b].push((false, l, a));
        }
        let init = relabel(&self.vertex_colors);
        let cells = refine(&adj, init);
        let mut best: Option<Vec<u64>> = None;
        self.search(&adj, cells, &mut best);
        best.expect("search visits at least one leaf")
    }

    fn search(&self, adj: &[Vec<(bool, u64, usize)>], cells: Vec<usize>, best: &mut Option<Vec<u64>>) {
        let n = cells.len();
        let mut sizes = vec![0usize; n];
        for &c in &cells {
            sizes[c] += 1;
        }
        let target = (0..n).find(|&c| sizes[c] > 1);
        match target {
            None => {
                let code = self.code_for(&cells);
                if best.as_ref().is_none_or(|b| code < *b) {
                    *best = Some(code);
                }
            }
            Some(t) => {
                for v in (0..n).filter(|&v| cells[v] == t) {
                    let keys: Vec<u64> = (0..n)
                        .map(|u| 2 * cells[u] as u64 + u64::from(!(u == v) && cells[u] == t))
                        .collect();
                    let next = refine(adj, relabel(&keys));
                    self.search(adj, next, best);
                }
            }
        }
    }

    fn code_for(&self, order: &[usize]) -> Vec<u64> {
        let n = order.len();
        let mut colors = vec![0u64; n];
        for v in 0..n {
            colors[order[v]] = self.vertex_colors[v];
        }
        let mut edges: Vec<(u64, u64, u64)> =
            self.edges.iter().map(|&(a, b, l)| (order[a] as u64, order[b] as u64, l)).collect();
        edges.sort_unstable();
        let mut code = vec![n as u64];
        code.extend(colors);
        code.push(edges.len() as u64);
        for (a, b, l) in edges {
            code.extend([a, b, l]);
        }
        code
    }
}

fn relabel(keys: &[u64]) -> Vec<usize> {
    let mut sorted: Vec<u64> = keys.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    keys.iter().map(|k| sorted.binary_search(k).expect("present")).collect()
}

/// Colour refinement until the partition is stable. Cell ids stay ordered by
/// invariant signatures, so the result is isomorphism-invariant.
fn refine(adj: &[Vec<(bool, u64, usize)>], mut cells: Vec<usize>) -> Vec<usize> {
    let n = cells.len();
    let mut count = cells.iter().copied().max().map_or(0, |m| m + 1);
    loop {
        let sigs: Vec<(usize, Vec<(bool, u64, usize)>)> = (0..n)
            .map(|v| {
                let mut s: Vec<(bool, u64, usize)> = adj[v].iter().map(|&(d, l, u)| (d, l, cells[u])).collect();
                s.sort_unstable();
                (cells[v], s)
            })
            .collect();
        let mut table: BTreeMap<&(usize, Vec<(bool, u64, usize)>), usize> = BTreeMap::new();
        for s in &sigs {
            table.insert(s, 0);
        }
        for (i, v) in table.values_mut().enumerate() {
            *v = i;
        }
        let next: Vec<usize> = sigs.iter().map(|s| table[s]).collect();
        let next_count = table.len();
        cells = next;
        if next_count == count {
            return cells;
        }
        count = next_count;
    }
}

/// Disjoint-set forest with path halving.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    pub fn count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }

    /// Groups in order of their smallest element, each sorted.
    pub fn groups(&mut self) -> Vec<Vec<usize>> {
        let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for x in 0..self.parent.len() {
            let r = self.find(x);
            by_root.entry(r).or_default().push(x);
        }
        by_root.into_values().collect()
    }
}
