//! Bipartite `l`-valent diagrams for `S∞(ℕ × {1..l})` modulo the wreath product.
//!
//! Column `k` of the ambient set is a plus vertex with `l` semi-edges; the
//! semi-edge of color `ν` at plus vertex `k` is joined to the semi-edge of
//! color `μ` at minus vertex `m` when `g(k, ν) = (m, μ)`. Only labeled
//! vertices remember their semi-edge colors.

use std::collections::HashMap;

use serde_json::{json, Value};

use crate::canon::{CanonCode, ColoredGraph, UnionFind};
use crate::error::{Error, Result};
use crate::perm::{ColoredPerm, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub plus: usize,
    pub plus_color: Option<usize>,
    pub minus: usize,
    pub minus_color: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteDiagram {
    l: usize,
    vertices: usize,
    edges: Vec<Edge>,
    /// label `k` (1-based) sits on plus vertex `plus_labels[k - 1]`
    plus_labels: Vec<usize>,
    minus_labels: Vec<usize>,
}

impl BipartiteDiagram {
    pub fn identity(l: usize, a: usize) -> Self {
        graph_from_perm(&ColoredPerm::identity(l), a, a, None).expect("identity is valid")
    }

    pub fn valence(&self) -> usize {
        self.l
    }

    /// Number of plus vertices (equal to the number of minus vertices).
    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn alpha(&self) -> usize {
        self.minus_labels.len()
    }

    pub fn beta(&self) -> usize {
        self.plus_labels.len()
    }

    fn plus_label_of(&self) -> Vec<Option<usize>> {
        let mut v = vec![None; self.vertices];
        for (k, &x) in self.plus_labels.iter().enumerate() {
            v[x] = Some(k + 1);
        }
        v
    }

    fn minus_label_of(&self) -> Vec<Option<usize>> {
        let mut v = vec![None; self.vertices];
        for (k, &x) in self.minus_labels.iter().enumerate() {
            v[x] = Some(k + 1);
        }
        v
    }

    /// Valence, color presence and distinctness at every vertex.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidParams(m.to_string()));
        let n = self.vertices;
        let pl = self.plus_label_of();
        let ml = self.minus_label_of();
        let mut plus_colors: Vec<Vec<Option<usize>>> = vec![Vec::new(); n];
        let mut minus_colors: Vec<Vec<Option<usize>>> = vec![Vec::new(); n];
        for e in &self.edges {
            if e.plus >= n || e.minus >= n {
                return bad("edge endpoint out of range");
            }
            plus_colors[e.plus].push(e.plus_color);
            minus_colors[e.minus].push(e.minus_color);
        }
        for (colors, labels) in [(plus_colors, pl), (minus_colors, ml)] {
            for (cs, lab) in colors.into_iter().zip(labels) {
                if cs.len() != self.l {
                    return bad("vertex valence differs from l");
                }
                match lab {
                    Some(_) => {
                        let mut present: Vec<usize> = cs.iter().flatten().copied().collect();
                        present.sort_unstable();
                        if present != (1..=self.l).collect::<Vec<_>>() {
                            return bad("labeled vertex needs every color exactly once");
                        }
                    }
                    None => {
                        if cs.iter().any(Option::is_some) {
                            return bad("unlabeled vertex carries colors");
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn without_trivial(mut self) -> Self {
        let n = self.vertices;
        let mut uf = UnionFind::new(2 * n);
        for e in &self.edges {
            uf.union(e.plus, n + e.minus);
        }
        let pl = self.plus_label_of();
        let ml = self.minus_label_of();
        let mut keep_plus = vec![true; n];
        let mut keep_minus = vec![true; n];
        for grp in uf.groups() {
            if grp.len() == 2 && grp[0] < n && grp[1] >= n && pl[grp[0]].is_none() && ml[grp[1] - n].is_none() {
                keep_plus[grp[0]] = false;
                keep_minus[grp[1] - n] = false;
            }
        }
        let renum = |keep: &[bool]| {
            let mut next = 0;
            keep.iter()
                .map(|&k| {
                    let id = next;
                    next += usize::from(k);
                    id
                })
                .collect::<Vec<usize>>()
        };
        let (np, nm) = (renum(&keep_plus), renum(&keep_minus));
        self.edges = self
            .edges
            .into_iter()
            .filter(|e| keep_plus[e.plus])
            .map(|e| Edge { plus: np[e.plus], minus: nm[e.minus], ..e })
            .collect();
        self.edges.sort_unstable();
        self.plus_labels = self.plus_labels.iter().map(|&x| np[x]).collect();
        self.minus_labels = self.minus_labels.iter().map(|&x| nm[x]).collect();
        self.vertices = keep_plus.iter().filter(|&&k| k).count();
        self
    }

    pub fn involution(&self) -> Self {
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|e| Edge { plus: e.minus, plus_color: e.minus_color, minus: e.plus, minus_color: e.plus_color })
            .collect();
        edges.sort_unstable();
        BipartiteDiagram {
            l: self.l,
            vertices: self.vertices,
            edges,
            plus_labels: self.minus_labels.clone(),
            minus_labels: self.plus_labels.clone(),
        }
    }

    fn colored_graph(&self) -> ColoredGraph {
        let n = self.vertices;
        let pl = self.plus_label_of();
        let ml = self.minus_label_of();
        let mut colors = Vec::with_capacity(2 * n);
        colors.extend(pl.iter().map(|l| (l.unwrap_or(0) as u64) << 1));
        colors.extend(ml.iter().map(|l| ((l.unwrap_or(0) as u64) << 1) | 1));
        let mut g = ColoredGraph::new(colors);
        let w = self.l as u64 + 1;
        for e in &self.edges {
            let label = e.plus_color.unwrap_or(0) as u64 * w + e.minus_color.unwrap_or(0) as u64;
            g.add_edge(e.plus, n + e.minus, label);
        }
        g
    }

    pub fn to_json(&self) -> Value {
        json!({
            "l": self.l,
            "vertices": self.vertices,
            "edges": self.edges.iter().map(|e| json!([e.plus + 1, e.plus_color, e.minus + 1, e.minus_color])).collect::<Vec<_>>(),
            "plus_labels": self.plus_labels.iter().map(|x| x + 1).collect::<Vec<_>>(),
            "minus_labels": self.minus_labels.iter().map(|x| x + 1).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::Parse("malformed diagram JSON".into());
        let idx = |x: &Value| x.as_u64().filter(|&u| u >= 1).map(|u| u as usize - 1).ok_or_else(bad);
        let col = |x: &Value| -> Result<Option<usize>> {
            if x.is_null() {
                Ok(None)
            } else {
                x.as_u64().map(|u| Some(u as usize)).ok_or_else(bad)
            }
        };
        let l = v["l"].as_u64().ok_or_else(bad)? as usize;
        let vertices = v["vertices"].as_u64().ok_or_else(bad)? as usize;
        let mut edges = Vec::new();
        for e in v["edges"].as_array().ok_or_else(bad)? {
            let a = e.as_array().filter(|a| a.len() == 4).ok_or_else(bad)?;
            edges.push(Edge { plus: idx(&a[0])?, plus_color: col(&a[1])?, minus: idx(&a[2])?, minus_color: col(&a[3])? });
        }
        edges.sort_unstable();
        let labels = |x: &Value| -> Result<Vec<usize>> { x.as_array().ok_or_else(bad)?.iter().map(idx).collect() };
        let d = BipartiteDiagram {
            l,
            vertices,
            edges,
            plus_labels: labels(&v["plus_labels"])?,
            minus_labels: labels(&v["minus_labels"])?,
        };
        for ls in [&d.plus_labels, &d.minus_labels] {
            let mut s = ls.clone();
            s.sort_unstable();
            s.dedup();
            if s.len() != ls.len() || s.iter().any(|&x| x >= vertices) {
                return Err(bad());
            }
        }
        d.validate()?;
        Ok(d)
    }

    /// DOT with semi-edge colors as tail and head labels.
    pub fn to_dot(&self) -> String {
        let pl = self.plus_label_of();
        let ml = self.minus_label_of();
        let mut s = String::from("graph diagram {\n");
        for (v, l) in pl.iter().enumerate() {
            s.push_str(&format!("  p{v} [label=\"+{}\"];\n", l.map_or(String::new(), |k| k.to_string())));
        }
        for (v, l) in ml.iter().enumerate() {
            s.push_str(&format!("  m{v} [label=\"-{}\"];\n", l.map_or(String::new(), |k| k.to_string())));
        }
        let c = |x: Option<usize>| x.map_or(String::new(), |c| c.to_string());
        for e in &self.edges {
            s.push_str(&format!(
                "  p{} -- m{} [taillabel=\"{}\", headlabel=\"{}\"];\n",
                e.plus,
                e.minus,
                c(e.plus_color),
                c(e.minus_color)
            ));
        }
        s.push_str("}\n");
        s
    }
}

pub fn graph_from_perm(g: &ColoredPerm, alpha: usize, beta: usize, n: Option<usize>) -> Result<BipartiteDiagram> {
    let l = g.color_count();
    let support = g.max_index();
    let n = match n {
        Some(n) if support > n => return Err(Error::SupportExceeds { index: support, bound: n }),
        Some(n) => n.max(alpha).max(beta),
        None => support.max(alpha).max(beta),
    };
    let mut edges = Vec::with_capacity(n * l);
    for k in 1..=n {
        for nu in 1..=l {
            let y = g.apply(Point::new(nu, k));
            edges.push(Edge { plus: k - 1, plus_color: Some(nu), minus: y.index - 1, minus_color: Some(y.color) });
        }
    }
    let full = BipartiteDiagram { l, vertices: n, edges, plus_labels: (0..n).collect(), minus_labels: (0..n).collect() };
    Ok(graph_forget(&full, alpha, beta))
}

/// Keeps plus labels `1..β` and minus labels `1..α`; forgotten vertices lose their colors.
pub fn graph_forget(d: &BipartiteDiagram, alpha: usize, beta: usize) -> BipartiteDiagram {
    let mut out = d.clone();
    out.plus_labels.truncate(beta);
    out.minus_labels.truncate(alpha);
    let pl = out.plus_label_of();
    let ml = out.minus_label_of();
    for e in &mut out.edges {
        if pl[e.plus].is_none() {
            e.plus_color = None;
        }
        if ml[e.minus].is_none() {
            e.minus_color = None;
        }
    }
    out.without_trivial()
}

/// `d1 ∘ d2`: entries of `d1` and exits of `d2` are cut out and the loose
/// semi-edges are spliced by color.
pub fn graph_mul(d1: &BipartiteDiagram, d2: &BipartiteDiagram) -> Result<BipartiteDiagram> {
    if d1.l != d2.l {
        return Err(Error::ColorMismatch(d1.l, d2.l));
    }
    if d1.beta() != d2.alpha() {
        return Err(Error::LevelMismatch(format!("({}, {}) ∘ ({}, {})", d1.alpha(), d1.beta(), d2.alpha(), d2.beta())));
    }
    let (n1, n2) = (d1.vertices, d2.vertices);
    let entry_of = d1.plus_label_of();
    let exit_of = d2.minus_label_of();
    // d1 edges leaving an entry, keyed by (entry label, color)
    let mut through: HashMap<(usize, usize), (usize, Option<usize>)> = HashMap::new();
    for e in &d1.edges {
        if let Some(k) = entry_of[e.plus] {
            through.insert((k, e.plus_color.expect("labeled vertex has colors")), (e.minus, e.minus_color));
        }
    }
    let mut minus_new = vec![usize::MAX; n2];
    let mut next = n1;
    for (m, lab) in exit_of.iter().enumerate() {
        if lab.is_none() {
            minus_new[m] = next;
            next += 1;
        }
    }
    let mut plus_new = vec![usize::MAX; n1];
    let mut next_plus = n2;
    for (f, lab) in entry_of.iter().enumerate() {
        if lab.is_none() {
            plus_new[f] = next_plus;
            next_plus += 1;
        }
    }
    let mut edges = Vec::with_capacity(d1.edges.len() + d2.edges.len());
    for e in &d2.edges {
        match exit_of[e.minus] {
            Some(k) => {
                let (m, mc) = through[&(k, e.minus_color.expect("labeled vertex has colors"))];
                edges.push(Edge { plus: e.plus, plus_color: e.plus_color, minus: m, minus_color: mc });
            }
            None => edges.push(Edge { minus: minus_new[e.minus], ..*e }),
        }
    }
    for e in &d1.edges {
        if entry_of[e.plus].is_none() {
            edges.push(Edge { plus: plus_new[e.plus], ..*e });
        }
    }
    edges.sort_unstable();
    let out = BipartiteDiagram {
        l: d1.l,
        vertices: next_plus,
        edges,
        plus_labels: d2.plus_labels.clone(),
        minus_labels: d1.minus_labels.clone(),
    };
    Ok(out.without_trivial())
}

/// Sorted per-component minimal codes; equal iff the diagrams are isomorphic.
pub fn graph_canon(d: &BipartiteDiagram) -> CanonCode {
    let g = d.colored_graph();
    let mut comps: Vec<Vec<u64>> = g.components().iter().map(|c| g.induced(c).canonical_code()).collect();
    comps.sort();
    let mut words = vec![d.l as u64, d.alpha() as u64, d.beta() as u64];
    for c in comps {
        words.push(c.len() as u64);
        words.extend(c);
    }
    CanonCode::with_tag(b"bigr", &words)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{coset_product_rep, GroupElement, PairSpec};
    use crate::perm::CosetLevel;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn wreath_elem(rng: &mut ChaCha8Rng, l: usize, level: usize, n: usize) -> ColoredPerm {
        let mut cols: Vec<usize> = (level + 1..=n).collect();
        cols.shuffle(rng);
        let mut pairs = Vec::new();
        for (i, &target) in (level + 1..=n).zip(&cols) {
            let mut colors: Vec<usize> = (1..=l).collect();
            colors.shuffle(rng);
            for (nu, &mu) in (1..=l).zip(&colors) {
                pairs.push((Point::new(nu, i), Point::new(mu, target)));
            }
        }
        ColoredPerm::from_pairs(l, pairs).unwrap()
    }

    #[test]
    fn identity_column() {
        let d = graph_from_perm(&ColoredPerm::identity(3), 1, 1, Some(1)).unwrap();
        assert_eq!(d.vertex_count(), 1);
        assert!(d.edges().iter().all(|e| e.plus_color == e.minus_color));
        assert!(d.validate().is_ok());
        assert_eq!(d, BipartiteDiagram::identity(3, 1));
    }

    #[test]
    fn crossed_colors() {
        let g = ColoredPerm::parse("(1@1 1@2)", 3).unwrap();
        let d = graph_from_perm(&g, 1, 1, None).unwrap();
        assert_eq!(d.vertex_count(), 1);
        let crossed = d.edges().iter().filter(|e| e.plus_color != e.minus_color).count();
        assert_eq!(crossed, 2);
    }

    #[test]
    fn forgetting_everything_leaves_one_class_for_n1() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let base = graph_canon(&graph_from_perm(&ColoredPerm::random(&mut rng, 3, 1), 0, 0, Some(1)).unwrap());
        for _ in 0..20 {
            let g = ColoredPerm::random(&mut rng, 3, 1);
            assert_eq!(graph_canon(&graph_from_perm(&g, 0, 0, Some(1)).unwrap()), base);
        }
    }

    #[test]
    fn forget_is_idempotent_and_trivial_on_large_levels() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let g = ColoredPerm::random(&mut rng, 3, 4);
            let full = graph_from_perm(&g, 4, 4, Some(4)).unwrap();
            assert_eq!(graph_forget(&full, 9, 9), full);
            let (a, b) = (rng.random_range(0..4), rng.random_range(0..4));
            let once = graph_forget(&full, a, b);
            assert_eq!(graph_forget(&once, a, b), once);
            assert!(once.validate().is_ok());
        }
    }

    #[test]
    fn dot_and_json() {
        let g = ColoredPerm::parse("(1@1 2@2)(1@3 2@3)", 3).unwrap();
        let d = graph_from_perm(&g, 1, 2, None).unwrap();
        let back = BipartiteDiagram::from_json(&d.to_json()).unwrap();
        assert_eq!(back, d);
        assert_eq!(d.to_dot().matches(" -- ").count(), 6);
    }

    #[test]
    fn gluing_matches_group_product() {
        let spec = PairSpec::wreath(3);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let (a, b, c) = (rng.random_range(0..3), rng.random_range(0..3), rng.random_range(0..3));
            let pp = GroupElement::random(&spec, &mut rng, 4);
            let qq = GroupElement::random(&spec, &mut rng, 4);
            let lv = |x| CosetLevel::single(x);
            let (r, _) = coset_product_rep(&spec, &pp, &qq, &lv(a), &lv(b), &lv(c)).unwrap();
            let d1 = graph_from_perm(&pp.parts[0], a, b, None).unwrap();
            let d2 = graph_from_perm(&qq.parts[0], b, c, None).unwrap();
            let glued = graph_mul(&d1, &d2).unwrap();
            assert!(glued.validate().is_ok());
            let direct = graph_from_perm(&r.parts[0], a, c, None).unwrap();
            assert_eq!(graph_canon(&glued), graph_canon(&direct));
        }
    }

    proptest! {
        #[test]
        fn canon_invariant_under_wreath(seed in any::<u64>(), a in 0usize..3, b in 0usize..3) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = ColoredPerm::random(&mut rng, 3, 4);
            let k1 = wreath_elem(&mut rng, 3, a, 6);
            let k2 = wreath_elem(&mut rng, 3, b, 6);
            let c1 = graph_canon(&graph_from_perm(&g, a, b, None).unwrap());
            let c2 = graph_canon(&graph_from_perm(&k1.mul(&g).mul(&k2), a, b, None).unwrap());
            prop_assert_eq!(c1, c2);
        }

        #[test]
        fn category_laws(seed in any::<u64>(), a in 0usize..3, b in 0usize..3, c in 0usize..3, d in 0usize..3) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = graph_from_perm(&ColoredPerm::random(&mut rng, 3, 3), a, b, None).unwrap();
            let y = graph_from_perm(&ColoredPerm::random(&mut rng, 3, 3), b, c, None).unwrap();
            let z = graph_from_perm(&ColoredPerm::random(&mut rng, 3, 3), c, d, None).unwrap();
            let l = graph_mul(&graph_mul(&x, &y).unwrap(), &z).unwrap();
            let r = graph_mul(&x, &graph_mul(&y, &z).unwrap()).unwrap();
            prop_assert_eq!(graph_canon(&l), graph_canon(&r));
            let xy = graph_mul(&x, &y).unwrap();
            prop_assert_eq!(graph_canon(&xy.involution()), graph_canon(&graph_mul(&y.involution(), &x.involution()).unwrap()));
            prop_assert_eq!(graph_canon(&graph_mul(&x, &BipartiteDiagram::identity(3, b)).unwrap()), graph_canon(&x));
        }

        #[test]
        fn zero_level_product_is_disjoint_union(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = graph_from_perm(&ColoredPerm::random(&mut rng, 3, 3), 0, 0, None).unwrap();
            let y = graph_from_perm(&ColoredPerm::random(&mut rng, 3, 3), 0, 0, None).unwrap();
            let xy = graph_mul(&x, &y).unwrap();
            prop_assert_eq!(xy.vertex_count(), x.vertex_count() + y.vertex_count());
        }
    }
}
