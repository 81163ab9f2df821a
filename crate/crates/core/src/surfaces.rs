//! Equipped surfaces: signed polygons with colored sides glued plus to minus.
//!
//! Colors `0..n` run clockwise around each plus face. A vertex sits at a
//! corner between sides `i` and `i + 1 (mod n)`.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::bordism::Bordism;
use crate::canon::{CanonCode, UnionFind};
use crate::error::{Error, Result};
use crate::perm::ColoredPerm;
use crate::tensor::CoeffTensor;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EquippedSurface {
    inner: Bordism,
}

/// Topological data of one connected component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceComponent {
    pub plus_faces: Vec<usize>,
    pub minus_faces: Vec<usize>,
    /// Vertex count per corner type `i` (between colors `i` and `i + 1`).
    pub vertices: Vec<usize>,
    pub edges: usize,
    pub faces: usize,
    pub euler: i64,
    pub genus: i64,
}

impl EquippedSurface {
    pub fn from_bordism(inner: Bordism) -> Self {
        EquippedSurface { inner }
    }

    pub fn bordism(&self) -> &Bordism {
        &self.inner
    }

    pub fn identity(colors: usize, a: usize) -> Self {
        EquippedSurface { inner: Bordism::identity(colors, a) }
    }

    pub fn colors(&self) -> usize {
        self.inner.colors()
    }

    pub fn alpha(&self) -> usize {
        self.inner.alpha()
    }

    pub fn beta(&self) -> usize {
        self.inner.beta()
    }

    pub fn plus_faces(&self) -> usize {
        self.inner.cells()
    }

    pub fn involution(&self) -> Self {
        EquippedSurface { inner: self.inner.involution() }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = self.inner.to_json();
        v["kind"] = "surface".into();
        v
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let b = Bordism::from_json(v)?;
        if b.colors() < 2 {
            return Err(Error::Parse("a surface needs at least two colors".into()));
        }
        Ok(EquippedSurface { inner: b })
    }

    /// Face-adjacency multigraph: one node per face, one edge per glued side.
    pub fn to_dot(&self) -> String {
        const PALETTE: [&str; 6] = ["red", "gold", "blue", "green", "purple", "orange"];
        let b = &self.inner;
        let mut s = String::from("graph surface {\n");
        for f in 0..b.cells() {
            let label = b.entry_label(f).map_or(String::new(), |k| format!(" {k}"));
            s.push_str(&format!("  p{f} [label=\"+{label}\"];\n"));
        }
        for m in 0..b.cells() {
            let label = b.exit_label(m).map_or(String::new(), |k| format!(" {k}"));
            s.push_str(&format!("  m{m} [label=\"-{label}\"];\n"));
        }
        for c in 0..b.colors() {
            for f in 0..b.cells() {
                let color = PALETTE.get(c).copied().unwrap_or("black");
                s.push_str(&format!("  p{f} -- m{} [color={color}];\n", b.partner_of_plus(c, f)));
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Surface of a tuple: color-`c` side of plus face `k` glued to minus face `g_c(k)`.
pub fn surface_from_tuple(perms: &[ColoredPerm], alpha: usize, beta: usize, n: Option<usize>) -> Result<EquippedSurface> {
    if perms.len() < 2 {
        return Err(Error::InvalidParams("a surface needs at least two colors".into()));
    }
    Ok(EquippedSurface { inner: Bordism::from_perms(perms, alpha, beta, n)? })
}

pub fn tuple_from_surface(s: &EquippedSurface) -> Result<Vec<ColoredPerm>> {
    s.inner.to_perms()
}

pub fn surface_mul(s1: &EquippedSurface, s2: &EquippedSurface) -> Result<EquippedSurface> {
    Ok(EquippedSurface { inner: s1.inner.mul(&s2.inner)? })
}

pub fn surface_canon(s: &EquippedSurface) -> CanonCode {
    s.inner.canon(b"surf")
}

/// Vertex count per corner type `i`: cycles of `f ↦ σ_{i+1}⁻¹ σ_i (f)` on plus faces.
pub fn vertices(s: &EquippedSurface) -> Vec<usize> {
    corner_classes(s).into_iter().map(|mut uf| uf.count()).collect()
}

/// For three colors, vertex counts indexed by the color of the opposite side.
pub fn vertex_counts_by_color(s: &EquippedSurface) -> Result<[usize; 3]> {
    if s.colors() != 3 {
        return Err(Error::InvalidParams("vertex colors need triangles".into()));
    }
    let v = vertices(s);
    Ok([v[1], v[2], v[0]])
}

fn corner_classes(s: &EquippedSurface) -> Vec<UnionFind> {
    let b = &s.inner;
    let n = b.colors();
    let inv = b.inverse_matching();
    (0..n)
        .map(|i| {
            let j = (i + 1) % n;
            let mut uf = UnionFind::new(b.cells());
            for f in 0..b.cells() {
                uf.union(f, inv[j][b.partner_of_plus(i, f)]);
            }
            uf
        })
        .collect()
}

pub fn components(s: &EquippedSurface) -> Vec<SurfaceComponent> {
    let b = &s.inner;
    let mut corners = corner_classes(s);
    b.components()
        .into_iter()
        .map(|(plus, minus)| {
            let vertices: Vec<usize> = corners
                .iter_mut()
                .map(|uf| {
                    let mut roots: Vec<usize> = plus.iter().map(|&f| uf.find(f)).collect();
                    roots.sort_unstable();
                    roots.dedup();
                    roots.len()
                })
                .collect();
            let v: usize = vertices.iter().sum();
            let edges = plus.len() * b.colors();
            let faces = plus.len() + minus.len();
            let euler = v as i64 - edges as i64 + faces as i64;
            SurfaceComponent { plus_faces: plus, minus_faces: minus, vertices, edges, faces, euler, genus: (2 - euler) / 2 }
        })
        .collect()
}

/// `Σ_assignments ∏_plus α ∏_minus conj(α)`, contracted one edge index at a time.
pub fn spherical_assignment_sum(s: &EquippedSurface, coeffs: &CoeffTensor) -> Result<Complex64> {
    let (net, _) = assignment_network(s, coeffs)?;
    let mut total = Complex64::new(1.0, 0.0);
    for (plus, _) in s.inner.components() {
        let comp: Vec<Factor> = net.iter().filter(|f| f.owner.is_some_and(|o| plus.contains(&o))).cloned().collect();
        total *= contract(comp);
    }
    Ok(total)
}

/// Same sum by enumerating every assignment. Exponential; for small surfaces.
pub fn spherical_assignment_sum_brute(s: &EquippedSurface, coeffs: &CoeffTensor) -> Result<Complex64> {
    let (net, dims) = assignment_network(s, coeffs)?;
    let total: usize = dims.iter().product();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut idx = vec![0usize; dims.len()];
    for _ in 0..total {
        let mut term = Complex64::new(1.0, 0.0);
        for f in &net {
            term *= f.at(&idx);
        }
        sum += term;
        for v in (0..idx.len()).rev() {
            idx[v] += 1;
            if idx[v] < dims[v] {
                break;
            }
            idx[v] = 0;
        }
    }
    Ok(sum)
}

fn assignment_network(s: &EquippedSurface, coeffs: &CoeffTensor) -> Result<(Vec<Factor>, Vec<usize>)> {
    let b = &s.inner;
    if s.alpha() != 0 || s.beta() != 0 {
        return Err(Error::LevelMismatch("the assignment sum needs a (0,0) surface".into()));
    }
    if coeffs.dims().len() != b.colors() {
        return Err(Error::SizeMismatch(coeffs.dims().len(), b.colors()));
    }
    let n = b.cells();
    let colors = b.colors();
    // edge variable (f, c) -> f * colors + c
    let dims: Vec<usize> = (0..n * colors).map(|v| coeffs.dims()[v % colors]).collect();
    let inv = b.inverse_matching();
    let mut net = Vec::with_capacity(2 * n);
    let data: Vec<Complex64> = coeffs.data().to_vec();
    let conj: Vec<Complex64> = data.iter().map(Complex64::conj).collect();
    for f in 0..n {
        let vars: Vec<usize> = (0..colors).map(|c| f * colors + c).collect();
        net.push(Factor::new(vars, &dims, data.clone(), Some(f)));
    }
    for m in 0..n {
        let vars: Vec<usize> = (0..colors).map(|c| inv[c][m] * colors + c).collect();
        net.push(Factor::new(vars, &dims, conj.clone(), Some(inv[0][m])));
    }
    Ok((net, dims))
}

/// Dense tensor over a list of variables, row-major in `vars` order.
#[derive(Debug, Clone)]
struct Factor {
    vars: Vec<usize>,
    shape: Vec<usize>,
    data: Vec<Complex64>,
    owner: Option<usize>,
}

impl Factor {
    fn new(vars: Vec<usize>, dims: &[usize], data: Vec<Complex64>, owner: Option<usize>) -> Factor {
        let shape = vars.iter().map(|&v| dims[v]).collect();
        Factor { vars, shape, data, owner }
    }

    fn at(&self, assignment: &[usize]) -> Complex64 {
        let mut off = 0;
        for (v, d) in self.vars.iter().zip(&self.shape) {
            off = off * d + assignment[*v];
        }
        self.data[off]
    }
}

/// Contracts a closed network by eliminating one variable at a time, cheapest first.
fn contract(mut factors: Vec<Factor>) -> Complex64 {
    let mut dim_of: BTreeMap<usize, usize> = BTreeMap::new();
    for f in &factors {
        for (v, d) in f.vars.iter().zip(&f.shape) {
            dim_of.insert(*v, *d);
        }
    }
    while !dim_of.is_empty() {
        let cost = |v: usize, factors: &[Factor]| -> usize {
            let mut vars: Vec<usize> =
                factors.iter().filter(|f| f.vars.contains(&v)).flat_map(|f| f.vars.iter().copied()).collect();
            vars.sort_unstable();
            vars.dedup();
            vars.iter().filter(|&&u| u != v).map(|u| dim_of[u]).product()
        };
        let v = *dim_of.keys().min_by_key(|&&v| (cost(v, &factors), v)).expect("nonempty");
        let (touch, rest): (Vec<Factor>, Vec<Factor>) = factors.into_iter().partition(|f| f.vars.contains(&v));
        let mut out_vars: Vec<usize> = touch.iter().flat_map(|f| f.vars.iter().copied()).filter(|&u| u != v).collect();
        out_vars.sort_unstable();
        out_vars.dedup();
        let out_shape: Vec<usize> = out_vars.iter().map(|u| dim_of[u]).collect();
        let out_len: usize = out_shape.iter().product();
        let mut data = vec![Complex64::new(0.0, 0.0); out_len];
        let all_vars: Vec<usize> = out_vars.iter().copied().chain(std::iter::once(v)).collect();
        let mut assignment: BTreeMap<usize, usize> = all_vars.iter().map(|&u| (u, 0)).collect();
        let mut scratch = vec![0usize; dim_of.keys().max().map_or(0, |m| m + 1)];
        let dv = dim_of[&v];
        for (o, slot) in data.iter_mut().enumerate() {
            let mut rem = o;
            for (u, d) in out_vars.iter().zip(&out_shape).rev() {
                assignment.insert(*u, rem % d);
                rem /= d;
            }
            for (u, val) in &assignment {
                scratch[*u] = *val;
            }
            let mut acc = Complex64::new(0.0, 0.0);
            for x in 0..dv {
                scratch[v] = x;
                let mut term = Complex64::new(1.0, 0.0);
                for f in &touch {
                    term *= f.at(&scratch);
                }
                acc += term;
            }
            *slot = acc;
        }
        dim_of.remove(&v);
        factors = rest;
        factors.push(Factor { vars: out_vars, shape: out_shape, data, owner: None });
    }
    factors.iter().map(|f| f.data[0]).product()
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

    fn p(s: &str) -> ColoredPerm {
        s.parse().unwrap()
    }

    fn e() -> ColoredPerm {
        ColoredPerm::identity(1)
    }

    fn random_tuple(rng: &mut ChaCha8Rng, colors: usize, n: usize) -> Vec<ColoredPerm> {
        (0..colors).map(|_| ColoredPerm::random(rng, 1, n)).collect()
    }

    #[test]
    fn double_triangle() {
        let s = surface_from_tuple(&[e(), e(), e()], 1, 1, Some(1)).unwrap();
        let comps = components(&s);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].euler, 2);
        assert_eq!(vertices(&s), vec![1, 1, 1]);
        assert_eq!(s, EquippedSurface::identity(3, 1));
    }

    #[test]
    fn blue_transposition_example() {
        let s = surface_from_tuple(&[e(), e(), p("(1 2)")], 0, 0, None).unwrap();
        let comps = components(&s);
        assert_eq!(comps.len(), 1);
        let c = &comps[0];
        assert_eq!((c.faces, c.edges, c.vertices.iter().sum::<usize>(), c.euler), (4, 6, 4, 2));
        assert_eq!(vertex_counts_by_color(&s).unwrap(), [1, 1, 2]);
        let dot = s.to_dot();
        assert_eq!(dot.matches(" -- ").count(), 6);
        assert_eq!(dot.matches("label=").count(), 4);
    }

    #[test]
    fn fully_labeled_finite_surface_has_2n_faces() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..6 {
            let t = random_tuple(&mut rng, 3, n);
            let s = surface_from_tuple(&t, n, n, Some(n)).unwrap();
            let f: usize = components(&s).iter().map(|c| c.faces).sum();
            assert_eq!(f, 2 * n);
        }
    }

    #[test]
    fn round_trip_and_plus_relabeling() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..1000 {
            let n = rng.random_range(1..7);
            let t = random_tuple(&mut rng, 3, n);
            let s = surface_from_tuple(&t, n, n, Some(n)).unwrap();
            assert_eq!(tuple_from_surface(&s).unwrap(), t);
        }
        let t = random_tuple(&mut rng, 3, 5);
        let s = surface_from_tuple(&t, 5, 5, Some(5)).unwrap();
        let mut images: Vec<usize> = (1..=5).collect();
        images.shuffle(&mut rng);
        let h = ColoredPerm::from_images(&images).unwrap();
        // permuting plus labels by h⁻¹ right-translates the tuple by h
        let mut b = s.bordism().clone();
        b.entries = (0..5).map(|k| s.bordism().entries[h.apply1(k + 1) - 1]).collect();
        let back = tuple_from_surface(&EquippedSurface::from_bordism(b)).unwrap();
        let expected: Vec<ColoredPerm> = t.iter().map(|g| g.mul(&h)).collect();
        assert_eq!(back, expected);
        let unlabeled = surface_from_tuple(&t, 0, 0, Some(5)).unwrap();
        assert!(tuple_from_surface(&unlabeled).is_err());
    }

    #[test]
    fn identity_tuple_components() {
        for n in 1..5 {
            let s = surface_from_tuple(&[e(), e(), e()], n, n, Some(n)).unwrap();
            assert_eq!(components(&s).len(), n);
        }
    }

    #[test]
    fn full_cycle_is_connected() {
        for n in 2..7 {
            let cyc: Vec<usize> = (1..=n).map(|k| k % n + 1).collect();
            let g = ColoredPerm::from_images(&cyc).unwrap();
            let s = surface_from_tuple(&[e(), e(), g], 0, 0, Some(n)).unwrap();
            assert_eq!(components(&s).len(), 1);
        }
    }

    #[test]
    fn canon_ignores_internal_numbering() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let t = random_tuple(&mut rng, 3, 5);
            let s = surface_from_tuple(&t, 2, 1, None).unwrap();
            let n = s.plus_faces();
            let mut pp: Vec<usize> = (0..n).collect();
            let mut mp: Vec<usize> = (0..n).collect();
            pp.shuffle(&mut rng);
            mp.shuffle(&mut rng);
            let r = EquippedSurface::from_bordism(s.bordism().renumbered(&pp, &mp));
            assert_eq!(surface_canon(&r), surface_canon(&s));
        }
    }

    #[test]
    fn assignment_sum_trivial_cases() {
        let one = CoeffTensor::new(vec![1, 1, 1], vec![Complex64::new(1.0, 0.0)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let t = random_tuple(&mut rng, 3, 4);
        let s = surface_from_tuple(&t, 0, 0, None).unwrap();
        assert!((spherical_assignment_sum(&s, &one).unwrap() - 1.0).norm() < 1e-14);
        let xi = CoeffTensor::random(&mut rng, &[2, 3, 2]);
        let dt = surface_from_tuple(&[p("(1 2)"), e(), e()], 0, 0, Some(2)).unwrap();
        let v = spherical_assignment_sum(&dt, &xi).unwrap();
        assert!(v.norm() <= 1.0 + 1e-12);
        let empty = surface_from_tuple(&[e(), e(), e()], 0, 0, Some(3)).unwrap();
        assert!((spherical_assignment_sum(&empty, &xi).unwrap() - 1.0).norm() < 1e-12);
        assert!(spherical_assignment_sum(&EquippedSurface::identity(3, 1), &xi).is_err());
    }

    #[test]
    fn contraction_matches_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let t = random_tuple(&mut rng, 3, 3);
            let s = surface_from_tuple(&t, 0, 0, None).unwrap();
            let xi = CoeffTensor::random(&mut rng, &[2, 2, 2]);
            let a = spherical_assignment_sum(&s, &xi).unwrap();
            let b = spherical_assignment_sum_brute(&s, &xi).unwrap();
            assert!((a - b).norm() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn gluing_matches_group_product() {
        let spec = PairSpec::diagonal(3);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..500 {
            let (a, b, c) = (rng.random_range(0..4), rng.random_range(0..4), rng.random_range(0..4));
            let pp = GroupElement::random(&spec, &mut rng, 6);
            let qq = GroupElement::random(&spec, &mut rng, 6);
            let lv = |x| CosetLevel::single(x);
            let (r, _) = coset_product_rep(&spec, &pp, &qq, &lv(a), &lv(b), &lv(c)).unwrap();
            let s1 = surface_from_tuple(&pp.parts, a, b, None).unwrap();
            let s2 = surface_from_tuple(&qq.parts, b, c, None).unwrap();
            let glued = surface_mul(&s1, &s2).unwrap();
            let direct = surface_from_tuple(&r.parts, a, c, None).unwrap();
            assert_eq!(surface_canon(&glued), surface_canon(&direct));
        }
    }

    #[test]
    fn json_round_trip() {
        let s = surface_from_tuple(&[p("(1 3)"), e(), p("(2 3)")], 1, 2, None).unwrap();
        let back = EquippedSurface::from_json(&s.to_json()).unwrap();
        assert_eq!(surface_canon(&back), surface_canon(&s));
        assert!(EquippedSurface::from_json(&serde_json::json!({"cells": 1})).is_err());
    }

    proptest! {
        #[test]
        fn euler_even_and_bounded(seed in any::<u64>(), n in 1usize..8) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let colors = rng.random_range(2..6);
            let t = random_tuple(&mut rng, colors, n);
            let s = surface_from_tuple(&t, 0, 0, Some(n)).unwrap();
            for c in components(&s) {
                prop_assert!(c.euler % 2 == 0 && c.euler <= 2);
                prop_assert_eq!(c.faces, 2 * c.plus_faces.len());
            }
        }

        #[test]
        fn vertex_counts_are_quotient_cycles(seed in any::<u64>(), n in 1usize..8) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let t = random_tuple(&mut rng, 3, n);
            let s = surface_from_tuple(&t, n, n, Some(n)).unwrap();
            let v = vertices(&s);
            for i in 0..3 {
                let q = t[(i + 1) % 3].inverse().mul(&t[i]);
                let nontrivial: usize = q.cycle_type().values().sum();
                let moved: usize = q.support().len();
                prop_assert_eq!(v[i], nontrivial + n - moved);
            }
        }

        #[test]
        fn category_laws(seed in any::<u64>(), a in 0usize..3, b in 0usize..3, c in 0usize..3, d in 0usize..3) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = surface_from_tuple(&random_tuple(&mut rng, 3, 5), a, b, None).unwrap();
            let y = surface_from_tuple(&random_tuple(&mut rng, 3, 5), b, c, None).unwrap();
            let z = surface_from_tuple(&random_tuple(&mut rng, 3, 5), c, d, None).unwrap();
            let l = surface_mul(&surface_mul(&x, &y).unwrap(), &z).unwrap();
            let r = surface_mul(&x, &surface_mul(&y, &z).unwrap()).unwrap();
            prop_assert_eq!(surface_canon(&l), surface_canon(&r));
            let xy = surface_mul(&x, &y).unwrap();
            prop_assert_eq!(
                surface_canon(&xy.involution()),
                surface_canon(&surface_mul(&y.involution(), &x.involution()).unwrap())
            );
            prop_assert_eq!(surface_canon(&surface_mul(&x, &EquippedSurface::identity(3, b)).unwrap()), surface_canon(&x));
        }

        #[test]
        fn zero_level_product_is_multiplicative(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = surface_from_tuple(&random_tuple(&mut rng, 3, 3), 0, 0, None).unwrap();
            let y = surface_from_tuple(&random_tuple(&mut rng, 3, 3), 0, 0, None).unwrap();
            let xi = CoeffTensor::random(&mut rng, &[2, 2, 2]);
            let xy = surface_mul(&x, &y).unwrap();
            prop_assert_eq!(components(&xy).len(), components(&x).len() + components(&y).len());
            let lhs = spherical_assignment_sum(&xy, &xi).unwrap();
            let rhs = spherical_assignment_sum(&x, &xi).unwrap() * spherical_assignment_sum(&y, &xi).unwrap();
            prop_assert!((lhs - rhs).norm() < 1e-12);
            prop_assert!(lhs.norm() <= 1.0 + 1e-12);
        }
    }
}
