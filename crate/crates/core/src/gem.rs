//! Colored pseudomanifold bordisms stored as chamber matchings.
//!
//! An `n`-dimensional complex has chambers (`n`-simplices) whose facets and
//! opposite vertices carry colors `0..=n`. Facet color `c` glues plus chamber
//! `k` to minus chamber `g_c(k)`. A face with vertex colors `W` is a connected
//! component of the chamber graph restricted to the colors outside `W`, which
//! already gives the normalized complex.

use crate::bordism::Bordism;
use crate::canon::{CanonCode, UnionFind};
use crate::error::{Error, Result};
use crate::perm::ColoredPerm;
use crate::surfaces::EquippedSurface;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GemComplex {
    inner: Bordism,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceRecord {
    pub colors: Vec<usize>,
    pub plus_chambers: Vec<usize>,
    pub minus_chambers: Vec<usize>,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FVector {
    /// `f[d]` = number of `d`-dimensional faces.
    pub f: Vec<usize>,
    pub component_euler: Vec<i64>,
}

impl GemComplex {
    pub fn identity(dim: usize, a: usize) -> Self {
        GemComplex { inner: Bordism::identity(dim + 1, a) }
    }

    pub fn dim(&self) -> usize {
        self.inner.colors() - 1
    }

    pub fn alpha(&self) -> usize {
        self.inner.alpha()
    }

    pub fn beta(&self) -> usize {
        self.inner.beta()
    }

    pub fn chambers(&self) -> usize {
        2 * self.inner.cells()
    }

    pub fn bordism(&self) -> &Bordism {
        &self.inner
    }

    pub fn involution(&self) -> Self {
        GemComplex { inner: self.inner.involution() }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = self.inner.to_json();
        v["kind"] = "gem".into();
        v
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let b = Bordism::from_json(v)?;
        if b.colors() < 3 {
            return Err(Error::Parse("a gem needs at least three colors".into()));
        }
        Ok(GemComplex { inner: b })
    }

    /// Every facet lies in exactly two chambers, one of each sign.
    pub fn facets_are_two_sided(&self) -> bool {
        let n = self.inner.cells();
        (0..self.inner.colors()).all(|c| {
            let mut hit = vec![false; n];
            (0..n).all(|f| !std::mem::replace(&mut hit[self.inner.partner_of_plus(c, f)], true))
        })
    }
}

pub fn gem_from_tuple(perms: &[ColoredPerm], alpha: usize, beta: usize, n: Option<usize>) -> Result<GemComplex> {
    if perms.len() < 3 {
        return Err(Error::InvalidParams("a gem of dimension n needs n + 1 ≥ 3 permutations".into()));
    }
    Ok(GemComplex { inner: Bordism::from_perms(perms, alpha, beta, n)? })
}

fn check_colors(g: &GemComplex, w: &[usize]) -> Result<Vec<bool>> {
    let k = g.inner.colors();
    if w.is_empty() {
        return Err(Error::InvalidParams("empty color set".into()));
    }
    let mut inside = vec![false; k];
    for &c in w {
        if c >= k || std::mem::replace(&mut inside[c], true) {
            return Err(Error::InvalidParams(format!("invalid color set {w:?}")));
        }
    }
    Ok(inside)
}

/// Faces spanned by vertex colors `w`.
pub fn faces(g: &GemComplex, w: &[usize]) -> Result<Vec<FaceRecord>> {
    let inside = check_colors(g, w)?;
    let b = &g.inner;
    let n = b.cells();
    let mut uf = UnionFind::new(2 * n);
    for (c, _) in inside.iter().enumerate().filter(|(_, &i)| !i) {
        for f in 0..n {
            uf.union(f, n + b.partner_of_plus(c, f));
        }
    }
    let mut colors = w.to_vec();
    colors.sort_unstable();
    Ok(uf
        .groups()
        .into_iter()
        .map(|grp| FaceRecord {
            colors: colors.clone(),
            plus_chambers: grp.iter().copied().filter(|&x| x < n).collect(),
            minus_chambers: grp.iter().copied().filter(|&x| x >= n).map(|x| x - n).collect(),
            dim: w.len() - 1,
        })
        .collect())
}

fn subsets(k: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u32..(1 << k)).map(move |mask| (0..k).filter(|&c| mask & (1 << c) != 0).collect())
}

pub fn f_vector(g: &GemComplex) -> FVector {
    let k = g.inner.colors();
    let mut f = vec![0; k];
    let comps = g.inner.components();
    let mut comp_of_plus = vec![0; g.inner.cells()];
    let mut comp_of_minus = vec![0; g.inner.cells()];
    for (i, (plus, minus)) in comps.iter().enumerate() {
        for &x in plus {
            comp_of_plus[x] = i;
        }
        for &x in minus {
            comp_of_minus[x] = i;
        }
    }
    let mut euler = vec![0i64; comps.len()];
    for w in subsets(k) {
        let d = w.len() - 1;
        for face in faces(g, &w).expect("valid subset") {
            f[d] += 1;
            let comp = match (face.plus_chambers.first(), face.minus_chambers.first()) {
                (Some(&x), _) => comp_of_plus[x],
                (None, Some(&x)) => comp_of_minus[x],
                (None, None) => unreachable!("faces are nonempty"),
            };
            euler[comp] += if d % 2 == 0 { 1 } else { -1 };
        }
    }
    FVector { f, component_euler: euler }
}

pub fn gem_mul(g1: &GemComplex, g2: &GemComplex) -> Result<GemComplex> {
    Ok(GemComplex { inner: g1.inner.mul(&g2.inner)? })
}

pub fn gem_canon(g: &GemComplex) -> CanonCode {
    g.inner.canon(b"gem")
}

/// Each chamber becomes an `(n+1)`-gon with sides colored `0..=n` in cyclic order.
pub fn surface_of_gem(g: &GemComplex) -> EquippedSurface {
    EquippedSurface::from_bordism(g.inner.clone())
}

/// Vertex count of `g1 ∘ g2` when vertices are identified through the removed
/// chambers instead of being cut apart, with nothing dropped.
pub fn naive_vertex_count(g1: &GemComplex, g2: &GemComplex) -> Result<usize> {
    let (b1, b2) = (&g1.inner, &g2.inner);
    if b1.colors() != b2.colors() || b1.beta() != b2.alpha() {
        return Err(Error::LevelMismatch("incompatible gems".into()));
    }
    let k = b1.colors();
    let (n1, n2) = (b1.cells(), b2.cells());
    // chamber ids: plus1, minus1, plus2, minus2; node = chamber * k + vertex color
    let total = 2 * (n1 + n2);
    let node = |ch: usize, v: usize| ch * k + v;
    let mut uf = UnionFind::new(total * k);
    for (b, off) in [(b1, 0), (b2, 2 * n1)] {
        let n = b.cells();
        for c in 0..k {
            for f in 0..n {
                let m = n + b.partner_of_plus(c, f);
                for v in (0..k).filter(|&v| v != c) {
                    uf.union(node(off + f, v), node(off + m, v));
                }
            }
        }
    }
    let mut removed = vec![false; total];
    for (&f, &m) in b1.entries().iter().zip(b2.exits()) {
        let (x, y) = (f, 2 * n1 + n2 + m);
        removed[x] = true;
        removed[y] = true;
        for v in 0..k {
            uf.union(node(x, v), node(y, v));
        }
    }
    let mut roots: Vec<usize> = (0..total)
        .filter(|&ch| !removed[ch])
        .flat_map(|ch| (0..k).map(move |v| (ch, v)))
        .map(|(ch, v)| uf.find(node(ch, v)))
        .collect();
    roots.sort_unstable();
    roots.dedup();
    Ok(roots.len())
}

/// Vertex count of the normalized product, before trivial components are dropped.
pub fn normalized_vertex_count(g1: &GemComplex, g2: &GemComplex) -> Result<usize> {
    let raw = g1.inner.mul_raw(&g2.inner)?;
    let g = GemComplex { inner: raw };
    Ok((0..g.inner.colors()).map(|v| faces(&g, &[v]).expect("valid color").len()).sum())
}
