//! Group-level ground truth: products of double cosets through `θ_j`, and
//! brute-force double-coset enumeration inside finite truncations.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::canon::CanonCode;
use crate::coset::Coset;
use crate::error::{Error, Result};
use crate::perm::{theta_j_levels, ColoredPerm, CosetLevel, Point};

pub const DEFAULT_BOUND: u128 = 10_000_000;

/// Enumeration and tensor bound, overridable through `TRAINCAT_BOUND`.
pub fn configured_bound() -> u128 {
    std::env::var("TRAINCAT_BOUND").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_BOUND)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairKind {
    /// `S∞ × S∞` with the diagonal subgroup.
    Bisymmetric,
    /// `S∞^copies` with the diagonal subgroup.
    Diagonal { copies: usize },
    /// `S∞(ℕ × {1..l})` with the column-preserving subgroup `S∞ ≀ S_l`.
    Wreath { valence: usize },
    /// `S∞(ℕ × {1..m})` with the color-preserving subgroup `S∞^m`.
    Young { colors: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PairSpec {
    pub kind: PairKind,
}

impl PairSpec {
    pub fn bisymmetric() -> Self {
        PairSpec { kind: PairKind::Bisymmetric }
    }

    pub fn trisymmetric() -> Self {
        Self::diagonal(3)
    }

    pub fn diagonal(copies: usize) -> Self {
        assert!(copies >= 1, "at least one copy");
        PairSpec { kind: PairKind::Diagonal { copies } }
    }

    pub fn wreath(valence: usize) -> Self {
        assert!(valence >= 1, "valence is positive");
        PairSpec { kind: PairKind::Wreath { valence } }
    }

    pub fn young(colors: usize) -> Self {
        assert!(colors >= 1, "at least one color");
        PairSpec { kind: PairKind::Young { colors } }
    }

    /// Number of factors of `G`.
    pub fn parts(&self) -> usize {
        match self.kind {
            PairKind::Bisymmetric => 2,
            PairKind::Diagonal { copies } => copies,
            PairKind::Wreath { .. } | PairKind::Young { .. } => 1,
        }
    }

    /// Color count of each factor.
    pub fn colors(&self) -> usize {
        match self.kind {
            PairKind::Bisymmetric | PairKind::Diagonal { .. } => 1,
            PairKind::Wreath { valence } => valence,
            PairKind::Young { colors } => colors,
        }
    }

    /// Encoder producing a complete coset invariant for this pair.
    pub fn default_encoder(&self) -> Encoder {
        match self.kind {
            PairKind::Bisymmetric => Encoder::Chips,
            PairKind::Diagonal { copies } if copies >= 4 => Encoder::Gem,
            PairKind::Diagonal { .. } => Encoder::Surfaces,
            PairKind::Wreath { .. } => Encoder::Bigraph,
            PairKind::Young { .. } => Encoder::Young,
        }
    }

    fn is_product(&self) -> bool {
        matches!(self.kind, PairKind::Bisymmetric | PairKind::Diagonal { .. })
    }

    fn check_level(&self, lv: &CosetLevel) -> Result<()> {
        let ok = match self.kind {
            PairKind::Young { colors } => lv.0.len() == 1 || lv.0.len() == colors,
            _ => lv.0.len() == 1 || lv.0.windows(2).all(|w| w[0] == w[1]),
        };
        if ok && !lv.0.is_empty() {
            Ok(())
        } else {
            Err(Error::LevelMismatch(format!("level {:?} does not fit {self}", lv.0)))
        }
    }
}

impl fmt::Display for PairSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            PairKind::Bisymmetric => write!(f, "bi"),
            PairKind::Diagonal { copies: 3 } => write!(f, "tri"),
            PairKind::Diagonal { copies } => write!(f, "diag:{copies}"),
            PairKind::Wreath { valence } => write!(f, "wreath:{valence}"),
            PairKind::Young { colors } => write!(f, "young:{colors}"),
        }
    }
}

impl FromStr for PairSpec {
    type Err = Error;

    /// `bi`, `tri`, `diag:<n>`, `wreath:<l>`, `young:<m>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, arg) = match s.split_once(':') {
            Some((a, b)) => (a, Some(b)),
            None => (s, None),
        };
        let num = |a: Option<&str>| -> Result<usize> {
            let v: usize = a
                .ok_or_else(|| Error::Parse(format!("pair {name:?} needs a parameter")))?
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad pair parameter in {s:?}")))?;
            if v == 0 {
                return Err(Error::Parse("pair parameter must be positive".into()));
            }
            Ok(v)
        };
        match name {
            "bi" | "bisymmetric" => Ok(PairSpec::bisymmetric()),
            "tri" | "trisymmetric" => Ok(PairSpec::trisymmetric()),
            "diag" | "diagonal" | "ngon" => Ok(PairSpec::diagonal(num(arg)?)),
            "wreath" | "bigraph" => Ok(PairSpec::wreath(num(arg)?)),
            "young" => Ok(PairSpec::young(num(arg)?)),
            _ => Err(Error::Parse(format!("unknown pair {s:?}"))),
        }
    }
}

/// An element of `G`: one permutation per factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub parts: Vec<ColoredPerm>,
}

impl GroupElement {
    pub fn new(spec: &PairSpec, parts: Vec<ColoredPerm>) -> Result<Self> {
        let g = GroupElement { parts };
        g.check(spec)?;
        Ok(g)
    }

    pub fn identity(spec: &PairSpec) -> Self {
        GroupElement { parts: vec![ColoredPerm::identity(spec.colors()); spec.parts()] }
    }

    pub fn check(&self, spec: &PairSpec) -> Result<()> {
        if self.parts.len() != spec.parts() {
            return Err(Error::SpecMismatch(format!("{} parts for {spec}", self.parts.len())));
        }
        if let Some(p) = self.parts.iter().find(|p| p.color_count() != spec.colors()) {
            return Err(Error::ColorMismatch(p.color_count(), spec.colors()));
        }
        Ok(())
    }

    /// Uniform element of the truncation to `{1..n}`.
    pub fn random<R: Rng + ?Sized>(spec: &PairSpec, rng: &mut R, n: usize) -> Self {
        GroupElement { parts: (0..spec.parts()).map(|_| ColoredPerm::random(rng, spec.colors(), n)).collect() }
    }

    pub fn mul(&self, other: &GroupElement) -> Result<GroupElement> {
        if self.parts.len() != other.parts.len() {
            return Err(Error::SizeMismatch(self.parts.len(), other.parts.len()));
        }
        let parts = self.parts.iter().zip(&other.parts).map(|(a, b)| a.compose(b)).collect::<Result<_>>()?;
        Ok(GroupElement { parts })
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement { parts: self.parts.iter().map(ColoredPerm::inverse).collect() }
    }

    /// Largest moved index over all parts.
    pub fn max_index(&self) -> usize {
        self.parts.iter().map(ColoredPerm::max_index).max().unwrap_or(0)
    }

    /// Semicolon-separated parts, optionally prefixed by `r:`, `y:`, `b:` or a
    /// 1-based part number; missing parts are the identity.
    pub fn parse(spec: &PairSpec, s: &str) -> Result<Self> {
        let m = spec.colors();
        if !spec.is_product() {
            let body = s.trim();
            let body = body.strip_prefix("g:").unwrap_or(body);
            return GroupElement::new(spec, vec![ColoredPerm::parse(body, m)?]);
        }
        let k = spec.parts();
        let mut parts = vec![None; k];
        for (pos, seg) in s.split(';').enumerate() {
            let seg = seg.trim();
            if seg.is_empty() && s.split(';').count() > 1 {
                continue;
            }
            let (slot, body) = match seg.split_once(':') {
                Some((label, body)) => (part_slot(label.trim(), k)?, body),
                None => (pos, seg),
            };
            if slot >= k {
                return Err(Error::Parse(format!("too many parts for {spec}")));
            }
            if parts[slot].is_some() {
                return Err(Error::Parse(format!("part {} given twice", slot + 1)));
            }
            parts[slot] = Some(ColoredPerm::parse(body, m)?);
        }
        GroupElement::new(spec, parts.into_iter().map(|p| p.unwrap_or_else(|| ColoredPerm::identity(m))).collect())
    }
}

fn part_slot(label: &str, k: usize) -> Result<usize> {
    let named = match label {
        "r" | "red" => Some(0),
        "y" | "yellow" => Some(1),
        "b" | "blue" => Some(2),
        _ => None,
    };
    if let Some(i) = named {
        return if i < k { Ok(i) } else { Err(Error::Parse(format!("label {label:?} needs {} parts", i + 1))) };
    }
    match label.parse::<usize>() {
        Ok(i) if (1..=k).contains(&i) => Ok(i - 1),
        _ => Err(Error::Parse(format!("unknown part label {label:?}"))),
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// `θ_j[β]` as an element of `G`.
pub fn theta(spec: &PairSpec, beta: &CosetLevel, j: usize) -> Result<GroupElement> {
    spec.check_level(beta)?;
    let m = spec.colors();
    let t = match spec.kind {
        PairKind::Young { .. } => theta_j_levels(beta, j, m),
        _ => theta_j_levels(&CosetLevel::uniform(m, beta.get(1)), j, m),
    };
    Ok(GroupElement { parts: vec![t; spec.parts()] })
}

/// Smallest admissible `j` for the product `K[α] p K[β] ∘ K[β] q K[γ]`.
pub fn choose_j(p: &GroupElement, q: &GroupElement, alpha: &CosetLevel, beta: &CosetLevel, gamma: &CosetLevel) -> usize {
    let s = p.max_index().max(q.max_index()).max(alpha.max()).max(gamma.max());
    (s + 1).saturating_sub(beta.min()).max(1)
}

/// `p · θ_j[β] · q`.
pub fn product_with_j(spec: &PairSpec, p: &GroupElement, q: &GroupElement, beta: &CosetLevel, j: usize) -> Result<GroupElement> {
    p.check(spec)?;
    q.check(spec)?;
    p.mul(&theta(spec, beta, j)?)?.mul(q)
}

/// Representative of `K[α] p K[β] ∘ K[β] q K[γ]` and the `j` used.
pub fn coset_product_rep(
    spec: &PairSpec,
    p: &GroupElement,
    q: &GroupElement,
    alpha: &CosetLevel,
    beta: &CosetLevel,
    gamma: &CosetLevel,
) -> Result<(GroupElement, usize)> {
    spec.check_level(alpha)?;
    spec.check_level(gamma)?;
    let j = choose_j(p, q, alpha, beta, gamma);
    Ok((product_with_j(spec, p, q, beta, j)?, j))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Encoder {
    Chips,
    Surfaces,
    Gem,
    Bigraph,
    Young,
}

impl Encoder {
    pub const ALL: [Encoder; 5] = [Encoder::Chips, Encoder::Surfaces, Encoder::Gem, Encoder::Bigraph, Encoder::Young];

    pub fn supports(&self, spec: &PairSpec) -> bool {
        match (self, spec.kind) {
            (Encoder::Chips, PairKind::Bisymmetric) => true,
            (Encoder::Surfaces, PairKind::Bisymmetric) => true,
            (Encoder::Surfaces, PairKind::Diagonal { copies }) => copies >= 2,
            (Encoder::Gem, PairKind::Diagonal { copies }) => copies >= 3,
            (Encoder::Bigraph, PairKind::Wreath { .. }) => true,
            (Encoder::Young, PairKind::Young { .. }) => true,
            _ => false,
        }
    }

    /// Canonical code of `K[α] g K[β]`.
    pub fn encode(&self, spec: &PairSpec, g: &GroupElement, alpha: &CosetLevel, beta: &CosetLevel) -> Result<CanonCode> {
        if !self.supports(spec) {
            return Err(Error::SpecMismatch(format!("encoder {self} does not apply to {spec}")));
        }
        g.check(spec)?;
        spec.check_level(alpha)?;
        spec.check_level(beta)?;
        if *self == Encoder::Young && (!alpha.is_zero() || !beta.is_zero()) {
            return Err(Error::LevelMismatch("the s-matrix encoder works at level zero".into()));
        }
        Ok(Coset::build(*self, spec, g, alpha.get(1), beta.get(1), None)?.canon())
    }
}

impl fmt::Display for Encoder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Encoder::Chips => "chips",
            Encoder::Surfaces => "surfaces",
            Encoder::Gem => "gem",
            Encoder::Bigraph => "bigraph",
            Encoder::Young => "young",
        };
        f.write_str(s)
    }
}

impl FromStr for Encoder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "chips" | "chip" => Ok(Encoder::Chips),
            "surfaces" | "surface" => Ok(Encoder::Surfaces),
            "gem" => Ok(Encoder::Gem),
            "bigraph" | "graph" => Ok(Encoder::Bigraph),
            "young" => Ok(Encoder::Young),
            _ => Err(Error::Parse(format!("unknown encoder {s:?}"))),
        }
    }
}

/// Whether the codes of `p θ_i[β] q` agree for `i = j, …, j + extra`.
#[allow(clippy::too_many_arguments)]
pub fn stabilization_check(
    spec: &PairSpec,
    p: &GroupElement,
    q: &GroupElement,
    alpha: &CosetLevel,
    beta: &CosetLevel,
    gamma: &CosetLevel,
    encoder: Encoder,
    extra: usize,
) -> Result<bool> {
    let j = choose_j(p, q, alpha, beta, gamma);
    stabilization_from(spec, p, q, alpha, beta, gamma, encoder, j, extra)
}

/// As [`stabilization_check`] but starting from a caller-chosen `j`.
#[allow(clippy::too_many_arguments)]
pub fn stabilization_from(
    spec: &PairSpec,
    p: &GroupElement,
    q: &GroupElement,
    alpha: &CosetLevel,
    beta: &CosetLevel,
    gamma: &CosetLevel,
    encoder: Encoder,
    j: usize,
    extra: usize,
) -> Result<bool> {
    let first = encoder.encode(spec, &product_with_j(spec, p, q, beta, j)?, alpha, gamma)?;
    for i in j + 1..=j + extra {
        if encoder.encode(spec, &product_with_j(spec, p, q, beta, i)?, alpha, gamma)? != first {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The truncated group `G_n` as a product of symmetric groups on flat points.
#[derive(Debug, Clone)]
struct FiniteGroup {
    spec: PairSpec,
    n: usize,
    block: usize,
    blocks: usize,
    order: u64,
}

impl FiniteGroup {
    fn new(spec: &PairSpec, n: usize) -> Result<Self> {
        let (block, blocks) = if spec.is_product() { (n, spec.parts()) } else { (n * spec.colors(), 1) };
        let order = group_order(spec, n);
        let bound = configured_bound();
        if order > bound {
            return Err(Error::BoundExceeded { needed: order, bound });
        }
        Ok(FiniteGroup { spec: *spec, n, block, blocks, order: u64::try_from(order).expect("bounded order") })
    }

    fn points(&self) -> usize {
        self.block * self.blocks
    }

    fn rank(&self, flat: &[usize]) -> u64 {
        let fact = factorial(self.block) as u64;
        let mut r = 0u64;
        for b in 0..self.blocks {
            let off = b * self.block;
            let local: Vec<usize> = flat[off..off + self.block].iter().map(|&v| v - off).collect();
            r = r * fact + lehmer_rank(&local);
        }
        r
    }

    fn unrank(&self, mut r: u64) -> Vec<usize> {
        let fact = factorial(self.block) as u64;
        let mut flat = vec![0; self.points()];
        for b in (0..self.blocks).rev() {
            let off = b * self.block;
            let local = lehmer_unrank(r % fact, self.block);
            r /= fact;
            for (i, v) in local.into_iter().enumerate() {
                flat[off + i] = off + v;
            }
        }
        flat
    }

    fn flat_index(&self, part: usize, p: Point) -> usize {
        if self.spec.is_product() {
            part * self.n + p.index - 1
        } else {
            (p.color - 1) * self.n + p.index - 1
        }
    }

    fn to_flat(&self, g: &GroupElement) -> Result<Vec<usize>> {
        g.check(&self.spec)?;
        if g.max_index() > self.n {
            return Err(Error::SupportExceeds { index: g.max_index(), bound: self.n });
        }
        let m = self.spec.colors();
        let mut flat = vec![0; self.points()];
        for (part, perm) in g.parts.iter().enumerate() {
            for c in 1..=m {
                for i in 1..=self.n {
                    let x = Point::new(c, i);
                    flat[self.flat_index(part, x)] = self.flat_index(part, perm.apply(x));
                }
            }
        }
        Ok(flat)
    }

    fn element_of(&self, flat: &[usize]) -> GroupElement {
        let m = self.spec.colors();
        let point = |v: usize| -> Point {
            if self.spec.is_product() {
                Point::mono(v % self.n + 1)
            } else {
                Point::new(v / self.n + 1, v % self.n + 1)
            }
        };
        let parts = (0..self.spec.parts())
            .map(|part| {
                let pairs = (0..self.points())
                    .filter(|&x| !self.spec.is_product() || x / self.n == part)
                    .map(|x| (point(x), point(flat[x])));
                ColoredPerm::from_pairs(m, pairs).expect("flat image is a permutation")
            })
            .collect();
        GroupElement { parts }
    }

    /// Generators of `K_n[level]` as flat transpositions.
    fn subgroup_generators(&self, level: &CosetLevel) -> Vec<Vec<(usize, usize)>> {
        let n = self.n;
        let mut gens = Vec::new();
        match self.spec.kind {
            PairKind::Bisymmetric | PairKind::Diagonal { .. } => {
                for i in level.get(1)..n.saturating_sub(1) {
                    gens.push((0..self.blocks).map(|b| (b * n + i, b * n + i + 1)).collect());
                }
            }
            PairKind::Wreath { valence } => {
                let col = |c: usize, i: usize| (c - 1) * n + i;
                for i in level.get(1)..n {
                    if i + 1 < n {
                        gens.push((1..=valence).map(|c| (col(c, i), col(c, i + 1))).collect());
                    }
                    for c in 1..valence {
                        gens.push(vec![(col(c, i), col(c + 1, i))]);
                    }
                }
            }
            PairKind::Young { colors } => {
                for c in 1..=colors {
                    for i in level.get(c)..n.saturating_sub(1) {
                        gens.push(vec![((c - 1) * n + i, (c - 1) * n + i + 1)]);
                    }
                }
            }
        }
        gens
    }
}

fn apply_swaps(swaps: &[(usize, usize)], x: usize) -> usize {
    swaps.iter().fold(x, |x, &(a, b)| if x == a { b } else if x == b { a } else { x })
}

fn factorial(k: usize) -> u128 {
    (1..=k as u128).product()
}

fn lehmer_rank(perm: &[usize]) -> u64 {
    let n = perm.len();
    let mut r = 0u64;
    for i in 0..n {
        let smaller = perm[i + 1..].iter().filter(|&&v| v < perm[i]).count() as u64;
        r = r * (n - i) as u64 + smaller;
    }
    r
}

fn lehmer_unrank(mut r: u64, n: usize) -> Vec<usize> {
    let mut digits = vec![0usize; n];
    for i in (0..n).rev() {
        let base = (n - i) as u64;
        digits[i] = (r % base) as usize;
        r /= base;
    }
    let mut pool: Vec<usize> = (0..n).collect();
    digits.into_iter().map(|d| pool.remove(d)).collect()
}

/// `|G_n|`.
pub fn group_order(spec: &PairSpec, n: usize) -> u128 {
    if spec.is_product() {
        let f = factorial(n);
        (0..spec.parts()).fold(1u128, |acc, _| acc.saturating_mul(f))
    } else {
        let k = n * spec.colors();
        if k > 34 {
            u128::MAX
        } else {
            factorial(k)
        }
    }
}

/// Double cosets `K_n[α] \ G_n / K_n[β]` with an orbit index for every element.
#[derive(Debug, Clone)]
pub struct FiniteDoubleCosets {
    group: FiniteGroup,
    orbit_of: Vec<u32>,
    reps: Vec<u64>,
    sizes: Vec<u64>,
}

impl FiniteDoubleCosets {
    pub fn count(&self) -> usize {
        self.reps.len()
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    pub fn group_order(&self) -> u64 {
        self.group.order
    }

    pub fn representatives(&self) -> Vec<GroupElement> {
        self.reps.iter().map(|&r| self.group.element_of(&self.group.unrank(r))).collect()
    }

    pub fn orbit_index(&self, g: &GroupElement) -> Result<usize> {
        let r = self.group.rank(&self.group.to_flat(g)?);
        Ok(self.orbit_of[r as usize] as usize)
    }

    pub fn same_coset(&self, g: &GroupElement, h: &GroupElement) -> Result<bool> {
        Ok(self.orbit_index(g)? == self.orbit_index(h)?)
    }

    /// Every orbit as an explicit set of elements.
    pub fn orbits(&self) -> Vec<Vec<GroupElement>> {
        let mut out = vec![Vec::new(); self.count()];
        for (r, &o) in self.orbit_of.iter().enumerate() {
            out[o as usize].push(self.group.element_of(&self.group.unrank(r as u64)));
        }
        out
    }

    /// All elements of `G_n` with their orbit index, in rank order.
    pub fn elements(&self) -> impl Iterator<Item = (GroupElement, usize)> + '_ {
        self.orbit_of.iter().enumerate().map(|(r, &o)| (self.group.element_of(&self.group.unrank(r as u64)), o as usize))
    }
}

/// Breadth-first closure under left and right subgroup generators.
pub fn enumerate_double_cosets_finite(
    spec: &PairSpec,
    n: usize,
    alpha: &CosetLevel,
    beta: &CosetLevel,
) -> Result<FiniteDoubleCosets> {
    spec.check_level(alpha)?;
    spec.check_level(beta)?;
    let group = FiniteGroup::new(spec, n)?;
    let left = group.subgroup_generators(alpha);
    let right = group.subgroup_generators(beta);
    let order = group.order as usize;
    let mut orbit_of = vec![u32::MAX; order];
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..order {
        if orbit_of[start] != u32::MAX {
            continue;
        }
        let id = u32::try_from(reps.len()).expect("orbit count fits in u32");
        reps.push(start as u64);
        orbit_of[start] = id;
        let mut size = 0u64;
        queue.push_back(start as u64);
        while let Some(r) = queue.pop_front() {
            size += 1;
            let g = group.unrank(r);
            let mut visit = |h: Vec<usize>| {
                let rh = group.rank(&h) as usize;
                if orbit_of[rh] == u32::MAX {
                    orbit_of[rh] = id;
                    queue.push_back(rh as u64);
                }
            };
            for k in &left {
                visit(g.iter().map(|&v| apply_swaps(k, v)).collect());
            }
            for k in &right {
                visit((0..g.len()).map(|x| g[apply_swaps(k, x)]).collect());
            }
        }
        sizes.push(size);
    }
    Ok(FiniteDoubleCosets { group, orbit_of, reps, sizes })
}

pub fn count_double_cosets_finite(spec: &PairSpec, n: usize, alpha: &CosetLevel, beta: &CosetLevel) -> Result<usize> {
    Ok(enumerate_double_cosets_finite(spec, n, alpha, beta)?.count())
}

pub fn same_coset_finite(
    spec: &PairSpec,
    n: usize,
    alpha: &CosetLevel,
    beta: &CosetLevel,
    g: &GroupElement,
    h: &GroupElement,
) -> Result<bool> {
    enumerate_double_cosets_finite(spec, n, alpha, beta)?.same_coset(g, h)
}

/// Number of distinct encoder codes over all of `G_n`.
pub fn distinct_codes_finite(
    spec: &PairSpec,
    n: usize,
    alpha: &CosetLevel,
    beta: &CosetLevel,
    encoder: Encoder,
) -> Result<usize> {
    let group = FiniteGroup::new(spec, n)?;
    let mut seen = HashSet::new();
    for r in 0..group.order {
        let g = group.element_of(&group.unrank(r));
        seen.insert(encoder.encode(spec, &g, alpha, beta)?);
    }
    Ok(seen.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::s_matrix;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn lv(a: usize) -> CosetLevel {
        CosetLevel::single(a)
    }

    #[test]
    fn lehmer_round_trip() {
        for n in 0..6 {
            for r in 0..factorial(n) as u64 {
                assert_eq!(lehmer_rank(&lehmer_unrank(r, n)), r);
            }
        }
    }

    #[test]
    fn identity_product_is_theta() {
        for spec in [PairSpec::bisymmetric(), PairSpec::trisymmetric(), PairSpec::wreath(2), PairSpec::young(2)] {
            let e = GroupElement::identity(&spec);
            let (r, j) = coset_product_rep(&spec, &e, &e, &lv(1), &lv(2), &lv(1)).unwrap();
            assert_eq!(j, 1);
            assert_eq!(r, theta(&spec, &lv(2), 1).unwrap());
        }
    }

    #[test]
    fn worked_figure_levels() {
        let spec = PairSpec::bisymmetric();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let p = GroupElement::random(&spec, &mut rng, 7);
            let q = GroupElement::random(&spec, &mut rng, 7);
            assert!(choose_j(&p, &q, &lv(3), &lv(2), &lv(3)) <= 6);
            let a = Encoder::Chips.encode(&spec, &product_with_j(&spec, &p, &q, &lv(2), 6).unwrap(), &lv(3), &lv(3));
            let b = Encoder::Chips.encode(&spec, &product_with_j(&spec, &p, &q, &lv(2), 9).unwrap(), &lv(3), &lv(3));
            assert_eq!(a.unwrap(), b.unwrap());
        }
    }

    #[test]
    fn undersized_j_can_fail() {
        let spec = PairSpec::bisymmetric();
        let p = GroupElement::parse(&spec, "(1 2); ()").unwrap();
        let q = p.clone();
        let z = lv(0);
        assert!(stabilization_check(&spec, &p, &q, &z, &z, &z, Encoder::Chips, 3).unwrap());
        let too_small = choose_j(&p, &q, &z, &z, &z) - 2;
        assert!(!stabilization_from(&spec, &p, &q, &z, &z, &z, Encoder::Chips, too_small, 3).unwrap());
    }

    #[test]
    fn parse_labels() {
        let spec = PairSpec::trisymmetric();
        let g = GroupElement::parse(&spec, "r:(1 2); y:(); b:()").unwrap();
        assert_eq!(g.parts[0], "(1 2)".parse().unwrap());
        let h = GroupElement::parse(&spec, "b:(1 2)").unwrap();
        assert_eq!(h.parts[2], "(1 2)".parse().unwrap());
        assert!(h.parts[0].is_identity());
        assert!(GroupElement::parse(&spec, "q:(1 2)").is_err());
        assert!(GroupElement::parse(&PairSpec::bisymmetric(), "b:(1 2)").is_err());
        let w = GroupElement::parse(&PairSpec::wreath(3), "(1@1 1@2)").unwrap();
        assert_eq!(w.parts.len(), 1);
        assert_eq!(GroupElement::parse(&spec, &g.to_string()).unwrap(), g);
        for s in ["bi", "tri", "diag:4", "wreath:3", "young:2"] {
            assert_eq!(s.parse::<PairSpec>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn finite_counts() {
        let bi = PairSpec::bisymmetric();
        let counts: Vec<usize> = (1..=5).map(|n| count_double_cosets_finite(&bi, n, &lv(0), &lv(0)).unwrap()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7]);
        assert_eq!(count_double_cosets_finite(&bi, 3, &lv(0), &lv(0)).unwrap(), 3);
        let tri = PairSpec::trisymmetric();
        assert_eq!(count_double_cosets_finite(&tri, 3, &lv(0), &lv(0)).unwrap(), 11);
        assert_eq!(count_double_cosets_finite(&tri, 4, &lv(0), &lv(0)).unwrap(), 43);
        assert_eq!(count_double_cosets_finite(&PairSpec::wreath(3), 2, &lv(0), &lv(0)).unwrap(), 2);
        // contingency tables with margins (2,2)
        assert_eq!(count_double_cosets_finite(&PairSpec::young(2), 2, &lv(0), &lv(0)).unwrap(), 3);
        // full levels: every element is its own coset
        assert_eq!(count_double_cosets_finite(&bi, 3, &lv(3), &lv(3)).unwrap(), 36);
    }

    #[test]
    fn orbit_sizes_sum_to_order() {
        let spec = PairSpec::trisymmetric();
        let d = enumerate_double_cosets_finite(&spec, 3, &lv(1), &lv(2)).unwrap();
        assert_eq!(d.sizes().iter().sum::<u64>(), d.group_order());
        assert_eq!(d.orbits().iter().map(Vec::len).sum::<usize>(), 216);
        for rep in d.representatives() {
            assert_eq!(rep.parts.len(), 3);
        }
    }

    #[test]
    fn bound_is_enforced() {
        let spec = PairSpec::diagonal(3);
        match enumerate_double_cosets_finite(&spec, 7, &lv(0), &lv(0)) {
            Err(Error::BoundExceeded { needed, .. }) => assert_eq!(needed, 5040u128.pow(3)),
            other => panic!("expected a bound error, got {other:?}"),
        }
    }

    #[test]
    fn encoders_separate_finite_cosets() {
        let cases: Vec<(PairSpec, Encoder, usize)> = vec![
            (PairSpec::bisymmetric(), Encoder::Chips, 3),
            (PairSpec::bisymmetric(), Encoder::Surfaces, 3),
            (PairSpec::trisymmetric(), Encoder::Surfaces, 3),
            (PairSpec::trisymmetric(), Encoder::Gem, 3),
            (PairSpec::wreath(2), Encoder::Bigraph, 2),
            (PairSpec::young(3), Encoder::Young, 1),
        ];
        for (spec, enc, n) in cases {
            for a in 0..=n.min(2) {
                for b in 0..=n.min(2) {
                    if enc == Encoder::Young && (a, b) != (0, 0) {
                        continue;
                    }
                    let count = count_double_cosets_finite(&spec, n, &lv(a), &lv(b)).unwrap();
                    let codes = distinct_codes_finite(&spec, n, &lv(a), &lv(b), enc).unwrap();
                    assert_eq!(count, codes, "{spec} {enc} n={n} ({a},{b})");
                }
            }
        }
    }

    #[test]
    fn same_coset_matches_codes_exhaustively() {
        let spec = PairSpec::trisymmetric();
        let d = enumerate_double_cosets_finite(&spec, 3, &lv(0), &lv(0)).unwrap();
        let all: Vec<(CanonCode, usize)> =
            d.elements().map(|(g, o)| (Encoder::Surfaces.encode(&spec, &g, &lv(0), &lv(0)).unwrap(), o)).collect();
        for (ca, oa) in &all {
            for (cb, ob) in &all {
                assert_eq!(ca == cb, oa == ob);
            }
        }
    }

    #[test]
    fn young_flows_add_under_products() {
        let spec = PairSpec::young(3);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let zero = CosetLevel(vec![0, 0, 0]);
        for _ in 0..100 {
            let p = GroupElement::random(&spec, &mut rng, 4);
            let q = GroupElement::random(&spec, &mut rng, 4);
            let (r, _) = coset_product_rep(&spec, &p, &q, &zero, &zero, &zero).unwrap();
            let sum = s_matrix(&p.parts[0]).add(&s_matrix(&q.parts[0])).unwrap();
            assert_eq!(s_matrix(&r.parts[0]), sum);
        }
    }

    proptest! {
        #[test]
        fn subgroup_moves_stay_in_coset(seed in any::<u64>(), a in 0usize..3, b in 0usize..3) {
            let spec = PairSpec::trisymmetric();
            let n = 3;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = GroupElement::random(&spec, &mut rng, n);
            let k = |rng: &mut ChaCha8Rng, level: usize| {
                let mut tail: Vec<usize> = (level + 1..=n).collect();
                rand::seq::SliceRandom::shuffle(&mut tail[..], rng);
                let mut img: Vec<usize> = (1..=level).collect();
                img.extend(tail);
                let h = ColoredPerm::from_images(&img).unwrap();
                GroupElement { parts: vec![h; 3] }
            };
            let h = k(&mut rng, a).mul(&g).unwrap().mul(&k(&mut rng, b)).unwrap();
            prop_assert!(same_coset_finite(&spec, n, &lv(a), &lv(b), &g, &h).unwrap());
        }

        #[test]
        fn stabilization_holds(seed in any::<u64>(), a in 0usize..3, b in 0usize..3, c in 0usize..3) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for spec in [PairSpec::bisymmetric(), PairSpec::trisymmetric(), PairSpec::wreath(2)] {
                let p = GroupElement::random(&spec, &mut rng, 4);
                let q = GroupElement::random(&spec, &mut rng, 4);
                let enc = spec.default_encoder();
                prop_assert!(stabilization_check(&spec, &p, &q, &lv(a), &lv(b), &lv(c), enc, 3).unwrap());
            }
        }
    }
}
