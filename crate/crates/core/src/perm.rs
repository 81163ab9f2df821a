//! Finitely supported permutations of `ℕ × {1..m}` and the 0-1 matrix corners.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point `(color, index)`, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Point {
    pub color: usize,
    pub index: usize,
}

impl Point {
    pub const fn new(color: usize, index: usize) -> Self {
        Point { color, index }
    }

    /// Point of color 1.
    pub const fn mono(index: usize) -> Self {
        Point { color: 1, index }
    }
}

/// A permutation of `ℕ × {1..m}` moving finitely many points.
///
/// Only moved points are stored, sorted by source, so equal permutations
/// have equal representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredPerm {
    m: usize,
    map: Vec<(Point, Point)>,
}

impl ColoredPerm {
    pub fn identity(m: usize) -> Self {
        ColoredPerm { m: m.max(1), map: Vec::new() }
    }

    /// Builds a permutation from explicit `x -> g(x)` pairs. Pairs with `x == g(x)` are ignored.
    pub fn from_pairs<I>(m: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Point, Point)>,
    {
        let mut fwd = BTreeMap::new();
        for (x, y) in pairs {
            for p in [x, y] {
                if p.color == 0 || p.color > m || p.index == 0 {
                    return Err(Error::Parse(format!("point {}@{} outside ambient set with {m} colors", p.index, p.color)));
                }
            }
            if let Some(prev) = fwd.insert(x, y) {
                if prev != y {
                    return Err(Error::Parse(format!("point {}@{} mapped twice", x.index, x.color)));
                }
            }
        }
        fwd.retain(|x, y| x != y);
        let mut images: Vec<Point> = fwd.values().copied().collect();
        images.sort_unstable();
        let domain: Vec<Point> = fwd.keys().copied().collect();
        if images != domain {
            return Err(Error::Parse("mapping is not a bijection on its support".into()));
        }
        Ok(ColoredPerm { m, map: fwd.into_iter().collect() })
    }

    /// Single-color permutation from the images of `1..=n` (1-based).
    pub fn from_images(images: &[usize]) -> Result<Self> {
        Self::from_pairs(
            1,
            images.iter().enumerate().map(|(i, &y)| (Point::mono(i + 1), Point::mono(y))),
        )
        .and_then(|p| {
            if p.max_index() > images.len() {
                Err(Error::Parse("images are not a permutation of 1..n".into()))
            } else {
                Ok(p)
            }
        })
    }

    /// Product of cycles, the rightmost acting first.
    pub fn from_cycles(m: usize, cycles: &[Vec<Point>]) -> Result<Self> {
        let mut acc = ColoredPerm::identity(m);
        for cyc in cycles.iter().rev() {
            for (a, p) in cyc.iter().enumerate() {
                if cyc[..a].contains(p) {
                    return Err(Error::Parse("repeated point inside a cycle".into()));
                }
            }
            let pairs = (0..cyc.len()).map(|t| (cyc[t], cyc[(t + 1) % cyc.len()]));
            let c = ColoredPerm::from_pairs(m, pairs)?;
            acc = c.mul(&acc);
        }
        Ok(acc)
    }

    pub fn transposition(m: usize, a: Point, b: Point) -> Self {
        ColoredPerm::from_pairs(m, [(a, b), (b, a)]).expect("valid transposition")
    }

    /// Uniform random permutation of `{1..n} × {1..m}`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, m: usize, n: usize) -> Self {
        let mut pts: Vec<Point> = (1..=m).flat_map(|c| (1..=n).map(move |i| Point::new(c, i))).collect();
        let src = pts.clone();
        pts.shuffle(rng);
        ColoredPerm::from_pairs(m, src.into_iter().zip(pts)).expect("shuffle is a bijection")
    }

    /// Uniform random permutation of `{1..n} × {1..m}` preserving every color.
    pub fn random_color_preserving<R: Rng + ?Sized>(rng: &mut R, m: usize, n: usize) -> Self {
        let mut pairs = Vec::new();
        for c in 1..=m {
            let mut img: Vec<usize> = (1..=n).collect();
            img.shuffle(rng);
            pairs.extend(img.into_iter().enumerate().map(|(i, y)| (Point::new(c, i + 1), Point::new(c, y))));
        }
        ColoredPerm::from_pairs(m, pairs).expect("shuffle is a bijection")
    }

    pub fn color_count(&self) -> usize {
        self.m
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_empty()
    }

    pub fn apply(&self, x: Point) -> Point {
        match self.map.binary_search_by(|(k, _)| k.cmp(&x)) {
            Ok(pos) => self.map[pos].1,
            Err(_) => x,
        }
    }

    /// Image of index `i` in color 1.
    pub fn apply1(&self, i: usize) -> usize {
        self.apply(Point::mono(i)).index
    }

    /// Moved pairs `(x, g(x))`, sorted by `x`.
    pub fn pairs(&self) -> &[(Point, Point)] {
        &self.map
    }

    pub fn support(&self) -> Vec<Point> {
        self.map.iter().map(|(x, _)| *x).collect()
    }

    /// `s(g)`: the largest index of a moved point, 0 for the identity.
    pub fn max_index(&self) -> usize {
        self.map.iter().map(|(x, _)| x.index).max().unwrap_or(0)
    }

    /// `(p∘q)(x) = p(q(x))`.
    pub fn compose(&self, q: &ColoredPerm) -> Result<ColoredPerm> {
        if self.m != q.m {
            return Err(Error::ColorMismatch(self.m, q.m));
        }
        Ok(self.mul(q))
    }

    /// Same as [`ColoredPerm::compose`].
    ///
    /// # Panics
    /// If the color counts differ.
    pub fn mul(&self, q: &ColoredPerm) -> ColoredPerm {
        assert_eq!(self.m, q.m, "color count mismatch");
        let mut keys: Vec<Point> = self.map.iter().chain(q.map.iter()).map(|(x, _)| *x).collect();
        keys.sort_unstable();
        keys.dedup();
        let map = keys
            .into_iter()
            .filter_map(|x| {
                let y = self.apply(q.apply(x));
                (y != x).then_some((x, y))
            })
            .collect();
        ColoredPerm { m: self.m, map }
    }

    pub fn inverse(&self) -> ColoredPerm {
        let mut map: Vec<(Point, Point)> = self.map.iter().map(|&(x, y)| (y, x)).collect();
        map.sort_unstable();
        ColoredPerm { m: self.m, map }
    }

    /// Conjugate `h g h⁻¹`.
    pub fn conjugate_by(&self, h: &ColoredPerm) -> ColoredPerm {
        h.mul(self).mul(&h.inverse())
    }

    /// Nontrivial cycles, each starting at its smallest point, sorted.
    pub fn cycles(&self) -> Vec<Vec<Point>> {
        let mut seen = std::collections::BTreeSet::new();
        let mut out = Vec::new();
        for &(x, _) in &self.map {
            if seen.contains(&x) {
                continue;
            }
            let mut cyc = vec![x];
            seen.insert(x);
            let mut y = self.apply(x);
            while y != x {
                seen.insert(y);
                cyc.push(y);
                y = self.apply(y);
            }
            out.push(cyc);
        }
        out
    }

    /// `k -> r_k` for `k ≥ 2`; fixed points are not reported.
    pub fn cycle_type(&self) -> BTreeMap<usize, usize> {
        let mut ct = BTreeMap::new();
        for c in self.cycles() {
            *ct.entry(c.len()).or_insert(0) += 1;
        }
        ct
    }

    /// Dense images of `1..=n` in color 1.
    pub fn images(&self, n: usize) -> Vec<usize> {
        (1..=n).map(|i| self.apply1(i)).collect()
    }

    /// The permutation restricted to one color, as a single-color permutation.
    ///
    /// Returns `None` if the color class is not invariant.
    pub fn color_component(&self, color: usize) -> Option<ColoredPerm> {
        let mut pairs = Vec::new();
        for &(x, y) in &self.map {
            if x.color == color {
                if y.color != color {
                    return None;
                }
                pairs.push((Point::mono(x.index), Point::mono(y.index)));
            }
        }
        Some(ColoredPerm::from_pairs(1, pairs).expect("restriction of a bijection"))
    }

    /// Reinterprets a single-color permutation as acting on `color` inside an `m`-colored set.
    pub fn embed_color(&self, m: usize, color: usize) -> ColoredPerm {
        let map = self
            .map
            .iter()
            .map(|&(x, y)| (Point::new(color, x.index), Point::new(color, y.index)))
            .collect();
        ColoredPerm { m, map }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(PermJson {
            m: self.m,
            map: self.map.iter().map(|(x, y)| [[x.color, x.index], [y.color, y.index]]).collect(),
        })
        .expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let pj: PermJson = serde_json::from_value(v.clone())?;
        ColoredPerm::from_pairs(
            pj.m,
            pj.map.into_iter().map(|[[c, i], [d, j]]| (Point::new(c, i), Point::new(d, j))),
        )
    }

    /// Parses cycle notation with a known color count.
    ///
    /// Segments look like `c2:(1 2)(3 4)`; a point of another color inside a
    /// segment is written `i@c`. `()` and `e` denote the identity.
    pub fn parse(s: &str, m: usize) -> Result<Self> {
        let cycles = parse_cycle_text(s)?;
        let needed = cycles.iter().flatten().map(|p| p.color).max().unwrap_or(1);
        if needed > m {
            return Err(Error::Parse(format!("color {needed} exceeds color count {m}")));
        }
        ColoredPerm::from_cycles(m, &cycles)
    }
}

#[derive(Serialize, Deserialize)]
struct PermJson {
    m: usize,
    map: Vec<[[usize; 2]; 2]>,
}

fn parse_cycle_text(s: &str) -> Result<Vec<Vec<Point>>> {
    let chars: Vec<char> = s.chars().collect();
    let mut pos = 0;
    let mut color = 1;
    let mut cycles = Vec::new();
    let bad = |msg: &str| Error::Parse(format!("{msg} in {s:?}"));
    while pos < chars.len() {
        let ch = chars[pos];
        if ch.is_whitespace() || ch == ',' || ch == 'e' {
            pos += 1;
        } else if ch == 'c' {
            pos += 1;
            let start = pos;
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                pos += 1;
            }
            if start == pos || pos >= chars.len() || chars[pos] != ':' {
                return Err(bad("malformed color prefix"));
            }
            color = chars[start..pos].iter().collect::<String>().parse().map_err(|_| bad("bad color"))?;
            if color == 0 {
                return Err(bad("color 0"));
            }
            pos += 1;
        } else if ch == '(' {
            pos += 1;
            let mut cyc = Vec::new();
            loop {
                while pos < chars.len() && (chars[pos].is_whitespace() || chars[pos] == ',') {
                    pos += 1;
                }
                if pos >= chars.len() {
                    return Err(bad("unclosed cycle"));
                }
                if chars[pos] == ')' {
                    pos += 1;
                    break;
                }
                let start = pos;
                while pos < chars.len() && (chars[pos].is_ascii_digit() || chars[pos] == '@') {
                    pos += 1;
                }
                if start == pos {
                    return Err(bad("unexpected character"));
                }
                let tok: String = chars[start..pos].iter().collect();
                let pt = match tok.split_once('@') {
                    Some((i, c)) => Point::new(
                        c.parse().map_err(|_| bad("bad color"))?,
                        i.parse().map_err(|_| bad("bad index"))?,
                    ),
                    None => Point::new(color, tok.parse().map_err(|_| bad("bad index"))?),
                };
                if pt.index == 0 || pt.color == 0 {
                    return Err(bad("indices and colors are 1-based"));
                }
                cyc.push(pt);
            }
            if cyc.len() > 1 {
                cycles.push(cyc);
            }
        } else {
            return Err(bad("unexpected character"));
        }
    }
    Ok(cycles)
}

impl FromStr for ColoredPerm {
    type Err = Error;

    /// Infers the color count from the largest color mentioned.
    fn from_str(s: &str) -> Result<Self> {
        let cycles = parse_cycle_text(s)?;
        let m = cycles.iter().flatten().map(|p| p.color).max().unwrap_or(1);
        ColoredPerm::from_cycles(m, &cycles)
    }
}

impl fmt::Display for ColoredPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        if self.m == 1 {
            for c in &cycles {
                let body: Vec<String> = c.iter().map(|p| p.index.to_string()).collect();
                write!(f, "({})", body.join(" "))?;
            }
            return Ok(());
        }
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            Ok(())
        };
        for color in 1..=self.m {
            let mono: Vec<&Vec<Point>> =
                cycles.iter().filter(|c| c.iter().all(|p| p.color == color)).collect();
            if mono.is_empty() {
                continue;
            }
            sep(f)?;
            write!(f, "c{color}:")?;
            for c in mono {
                let body: Vec<String> = c.iter().map(|p| p.index.to_string()).collect();
                write!(f, "({})", body.join(" "))?;
            }
        }
        let mixed: Vec<&Vec<Point>> =
            cycles.iter().filter(|c| c.iter().any(|p| p.color != c[0].color)).collect();
        if !mixed.is_empty() {
            sep(f)?;
            for c in mixed {
                let body: Vec<String> = c.iter().map(|p| format!("{}@{}", p.index, p.color)).collect();
                write!(f, "({})", body.join(" "))?;
            }
        }
        Ok(())
    }
}

/// An `n × n` matrix of zeros and ones with at most one unit per row and column.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix01 {
    /// `cols[j] = Some(i)` iff entry `(i, j)` is 1 (0-based).
    cols: Vec<Option<usize>>,
}

impl Matrix01 {
    pub fn zeros(n: usize) -> Self {
        Matrix01 { cols: vec![None; n] }
    }

    pub fn identity(n: usize) -> Self {
        Matrix01 { cols: (0..n).map(Some).collect() }
    }

    /// `θ[β]`: units on the first `β` diagonal positions.
    pub fn projector(n: usize, beta: usize) -> Self {
        Matrix01 { cols: (0..n).map(|j| (j < beta).then_some(j)).collect() }
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let n = rows.len();
        let mut cols = vec![None; n];
        let mut row_used = vec![false; n];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::SizeMismatch(n, row.len()));
            }
            for (j, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 => {
                        if cols[j].is_some() || row_used[i] {
                            return Err(Error::InvalidParams("more than one unit in a row or column".into()));
                        }
                        cols[j] = Some(i);
                        row_used[i] = true;
                    }
                    _ => return Err(Error::InvalidParams("entries must be 0 or 1".into())),
                }
            }
        }
        Ok(Matrix01 { cols })
    }

    pub fn size(&self) -> usize {
        self.cols.len()
    }

    /// Entry `(i, j)`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> u8 {
        u8::from(self.cols[j - 1] == Some(i - 1))
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        let n = self.size();
        (1..=n).map(|i| (1..=n).map(|j| self.get(i, j)).collect()).collect()
    }

    pub fn rank(&self) -> usize {
        self.cols.iter().flatten().count()
    }

    pub fn transpose(&self) -> Self {
        let mut cols = vec![None; self.size()];
        for (j, i) in self.cols.iter().enumerate() {
            if let Some(i) = i {
                cols[*i] = Some(j);
            }
        }
        Matrix01 { cols }
    }

    pub fn mul(&self, b: &Matrix01) -> Result<Matrix01> {
        if self.size() != b.size() {
            return Err(Error::SizeMismatch(self.size(), b.size()));
        }
        Ok(Matrix01 { cols: b.cols.iter().map(|k| k.and_then(|k| self.cols[k])).collect() })
    }

    fn check(&self) -> bool {
        let mut seen = vec![false; self.size()];
        self.cols.iter().flatten().all(|&i| i < seen.len() && !std::mem::replace(&mut seen[i], true))
    }
}

impl fmt::Display for Matrix01 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let s: Vec<String> = row.iter().map(u8::to_string).collect();
            writeln!(f, "{}", s.join(" "))?;
        }
        Ok(())
    }
}

/// `n × n` corner of a single-color permutation: `(i, j) = 1` iff `p(j) = i`.
pub fn corner(p: &ColoredPerm, n: usize) -> Result<Matrix01> {
    if p.color_count() != 1 {
        return Err(Error::ColorMismatch(p.color_count(), 1));
    }
    let cols = (1..=n)
        .map(|j| {
            let i = p.apply1(j);
            (i <= n).then(|| i - 1)
        })
        .collect();
    let m = Matrix01 { cols };
    debug_assert!(m.check());
    Ok(m)
}

pub fn matrix01_mul(a: &Matrix01, b: &Matrix01) -> Result<Matrix01> {
    a.mul(b)
}

/// Per-color levels `(α_1, …, α_m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CosetLevel(pub Vec<usize>);

impl CosetLevel {
    pub fn single(a: usize) -> Self {
        CosetLevel(vec![a])
    }

    pub fn uniform(m: usize, a: usize) -> Self {
        CosetLevel(vec![a; m])
    }

    /// Level of color `c` (1-based); a single entry applies to every color.
    pub fn get(&self, c: usize) -> usize {
        if self.0.len() == 1 {
            self.0[0]
        } else {
            self.0[c - 1]
        }
    }

    pub fn min(&self) -> usize {
        self.0.iter().copied().min().unwrap_or(0)
    }

    pub fn max(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }
}

impl FromStr for CosetLevel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad level {t:?}"))))
            .collect::<Result<Vec<_>>>()
            .map(CosetLevel)
    }
}

/// `θ_j[β]`: swaps the blocks `β+1..β+j` and `β+j+1..β+2j` in every color.
pub fn theta_j(beta: usize, j: usize, m: usize) -> ColoredPerm {
    theta_j_levels(&CosetLevel::uniform(m.max(1), beta), j, m)
}

/// `θ_j` with a separate `β_c` for each color.
pub fn theta_j_levels(beta: &CosetLevel, j: usize, m: usize) -> ColoredPerm {
    let mut map = Vec::with_capacity(2 * j * m);
    for c in 1..=m {
        let b = beta.get(c);
        for t in 1..=j {
            map.push((Point::new(c, b + t), Point::new(c, b + j + t)));
            map.push((Point::new(c, b + j + t), Point::new(c, b + t)));
        }
    }
    map.sort_unstable();
    ColoredPerm { m, map }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> ColoredPerm {
        s.parse().unwrap()
    }

    #[test]
    fn compose_small() {
        assert_eq!(p("(1 2)").mul(&p("(2 3)")), p("(1 2 3)"));
        let g = p("(1 4 2)(3 5)");
        assert_eq!(ColoredPerm::identity(1).mul(&g), g);
        assert!(g.mul(&g.inverse()).is_identity());
        assert!(ColoredPerm::identity(2).compose(&g).is_err());
    }

    #[test]
    fn inverse_reverses_cycles() {
        assert_eq!(p("(1 2 3)").inverse(), p("(1 3 2)"));
        assert!(ColoredPerm::identity(1).inverse().is_identity());
    }

    #[test]
    fn cycle_type_examples() {
        assert!(ColoredPerm::identity(1).cycle_type().is_empty());
        let ct = p("(1 2)(3 4 5)").cycle_type();
        assert_eq!(ct, BTreeMap::from([(2, 1), (3, 1)]));
    }

    #[test]
    fn notation_round_trip() {
        let g = ColoredPerm::parse("c1:(1 2) c2:(3 4 5) (5@1 7@3)", 3).unwrap();
        assert_eq!(g.apply(Point::new(3, 7)), Point::new(1, 5));
        assert_eq!(p("(1 2)(2 3)"), p("(1 2 3)"));
        let printed = g.to_string();
        assert_eq!(ColoredPerm::parse(&printed, 3).unwrap(), g);
        assert_eq!(p("()"), ColoredPerm::identity(1));
        assert_eq!(p("e"), ColoredPerm::identity(1));
        assert!("(1 x)".parse::<ColoredPerm>().is_err());
        assert!("(1 2".parse::<ColoredPerm>().is_err());
        assert!("(0 2)".parse::<ColoredPerm>().is_err());
        assert!(ColoredPerm::parse("c3:(1 2)", 2).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = ColoredPerm::parse("c1:(1 2) (2@2 3@1)", 2).unwrap();
        let v = g.to_json();
        assert_eq!(v["m"], 2);
        assert_eq!(ColoredPerm::from_json(&v).unwrap(), g);
        let bad = serde_json::json!({"m": 1, "map": [[[1, 1], [1, 2]]]});
        assert!(ColoredPerm::from_json(&bad).is_err());
    }

    #[test]
    fn theta_examples() {
        assert!(theta_j(5, 0, 1).is_identity());
        assert_eq!(theta_j(2, 1, 1), p("(3 4)"));
        assert_eq!(theta_j(1, 2, 1), p("(2 4)(3 5)"));
        let t = theta_j(1, 2, 2);
        assert_eq!(t, ColoredPerm::parse("c1:(2 4)(3 5) c2:(2 4)(3 5)", 2).unwrap());
        let tl = theta_j_levels(&CosetLevel(vec![0, 2]), 1, 2);
        assert_eq!(tl, ColoredPerm::parse("c1:(1 2) c2:(3 4)", 2).unwrap());
    }

    #[test]
    fn corner_examples() {
        assert_eq!(corner(&ColoredPerm::identity(1), 2).unwrap(), Matrix01::identity(2));
        assert_eq!(corner(&p("(1 2)"), 1).unwrap(), Matrix01::zeros(1));
        let c = corner(&p("(1 2 3)"), 2).unwrap();
        assert_eq!(c.rows(), vec![vec![0, 0], vec![1, 0]]);
    }

    #[test]
    fn projector_is_idempotent_and_self_adjoint() {
        for n in 0..5 {
            for b in 0..=n {
                let t = Matrix01::projector(n, b);
                assert_eq!(t.mul(&t).unwrap(), t);
                assert_eq!(t.transpose(), t);
                let th = theta_j(b, n, 1);
                assert_eq!(corner(&th, n).unwrap(), t);
            }
        }
    }

    #[test]
    fn from_rows_validates() {
        assert!(Matrix01::from_rows(&[vec![1, 1], vec![0, 0]]).is_err());
        assert!(Matrix01::from_rows(&[vec![2, 0], vec![0, 0]]).is_err());
        let m = Matrix01::from_rows(&[vec![0, 1], vec![0, 0]]).unwrap();
        assert_eq!(m.get(1, 2), 1);
        assert_eq!(m.rank(), 1);
        assert!(m.mul(&Matrix01::zeros(3)).is_err());
    }

    fn all_perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for q in all_perms(n - 1) {
            for pos in 0..n {
                let mut v = q.clone();
                v.insert(pos, n);
                out.push(v);
            }
        }
        out
    }

    #[test]
    fn corner_homomorphism_on_s4() {
        let perms: Vec<ColoredPerm> = all_perms(4).iter().map(|v| ColoredPerm::from_images(v).unwrap()).collect();
        for n in 0..=4 {
            for a in &perms {
                for b in &perms {
                    let preserved = (1..=n).all(|i| a.apply1(i) <= n) && (1..=n).all(|i| b.apply1(i) <= n);
                    if !preserved {
                        continue;
                    }
                    let lhs = corner(&a.mul(b), n).unwrap();
                    let rhs = corner(a, n).unwrap().mul(&corner(b, n).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    /// Corner equality characterizes `S∞[n] \ S∞ / S∞[n]` cosets, checked on S_6 inside S_9.
    #[test]
    fn corner_separates_double_cosets() {
        let n_total = 6;
        let perms: Vec<ColoredPerm> =
            all_perms(n_total).iter().map(|v| ColoredPerm::from_images(v).unwrap()).collect();
        for k in 0..=3 {
            let mut classes: BTreeMap<Vec<Vec<u8>>, usize> = BTreeMap::new();
            for g in &perms {
                *classes.entry(corner(g, k).unwrap().rows()).or_insert(0) += 1;
            }
            let orbits = naive_double_cosets(&perms, n_total, k);
            assert_eq!(classes.len(), orbits, "k = {k}");
        }
    }

    fn naive_double_cosets(perms: &[ColoredPerm], n: usize, k: usize) -> usize {
        let gens: Vec<ColoredPerm> =
            (k + 1..n).map(|i| ColoredPerm::transposition(1, Point::mono(i), Point::mono(i + 1))).collect();
        let mut seen = std::collections::HashSet::new();
        let mut count = 0;
        for g in perms {
            if seen.contains(g) {
                continue;
            }
            count += 1;
            let mut stack = vec![g.clone()];
            seen.insert(g.clone());
            while let Some(x) = stack.pop() {
                for s in &gens {
                    for y in [s.mul(&x), x.mul(s)] {
                        if seen.insert(y.clone()) {
                            stack.push(y);
                        }
                    }
                }
            }
        }
        count
    }

    fn perm_strategy(n: usize) -> impl Strategy<Value = ColoredPerm> {
        Just((1..=n).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|v| ColoredPerm::from_images(&v).unwrap())
    }

    fn colored_strategy(m: usize, n: usize) -> impl Strategy<Value = ColoredPerm> {
        any::<u64>().prop_map(move |s| {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(s);
            ColoredPerm::random(&mut rng, m, n)
        })
    }

    proptest! {
        #[test]
        fn support_of_inverse(g in perm_strategy(9)) {
            prop_assert_eq!(g.support(), g.inverse().support());
        }

        #[test]
        fn support_of_product(g in colored_strategy(3, 5), h in colored_strategy(3, 5)) {
            let gh = g.mul(&h);
            for x in gh.support() {
                prop_assert!(g.support().contains(&x) || h.support().contains(&x));
            }
            prop_assert_eq!(gh.inverse(), h.inverse().mul(&g.inverse()));
        }

        #[test]
        fn cycle_type_sums_to_support(g in perm_strategy(10)) {
            let total: usize = g.cycle_type().iter().map(|(k, r)| k * r).sum();
            prop_assert_eq!(total, g.support().len());
        }

        #[test]
        fn bijective_storage(g in colored_strategy(2, 6)) {
            let dom = g.support();
            let mut rng: Vec<Point> = g.pairs().iter().map(|(_, y)| *y).collect();
            rng.sort();
            prop_assert_eq!(dom, rng);
        }

        #[test]
        fn theta_is_involution(b in 0usize..6, j in 0usize..6, m in 1usize..4) {
            let t = theta_j(b, j, m);
            prop_assert!(t.mul(&t).is_identity());
            prop_assert_eq!(t.support().len(), 2 * j * m);
        }

        #[test]
        fn corner_products_stay_01(a in perm_strategy(7), b in perm_strategy(7), n in 0usize..7) {
            let c = corner(&a, n).unwrap().mul(&corner(&b, n).unwrap()).unwrap();
            prop_assert!(c.check());
        }

        #[test]
        fn display_parse_round_trip(g in colored_strategy(3, 4)) {
            prop_assert_eq!(ColoredPerm::parse(&g.to_string(), 3).unwrap(), g);
        }
    }
}
