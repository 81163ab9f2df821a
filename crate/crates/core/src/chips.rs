//! Chips: arc diagrams with roods encoding bisymmetric double cosets.
//!
//! The top row carries the `β` input labels, the bottom row the `α` output
//! labels. Each row has a left and a right half; a rood is a crossing of the
//! vertical axis between them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde_json::{json, Value};

use crate::canon::CanonCode;
use crate::characters::ThomaParams;
use crate::error::{Error, Result};
use crate::perm::ColoredPerm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Row {
    Top,
    Bottom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChipEndpoint {
    pub row: Row,
    pub side: Side,
    pub index: usize,
}

impl ChipEndpoint {
    pub const fn new(row: Row, side: Side, index: usize) -> Self {
        ChipEndpoint { row, side, index }
    }

    fn words(&self) -> [u64; 3] {
        [self.row as u64, self.side as u64, self.index as u64]
    }

    fn flipped(self) -> Self {
        let row = match self.row {
            Row::Top => Row::Bottom,
            Row::Bottom => Row::Top,
        };
        ChipEndpoint { row, ..self }
    }
}

impl fmt::Display for ChipEndpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = if self.row == Row::Top { 'T' } else { 'B' };
        let s = if self.side == Side::Left { 'L' } else { 'R' };
        write!(f, "{r}{s}{}", self.index)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OpenArc {
    pub a: ChipEndpoint,
    pub b: ChipEndpoint,
    pub roods: usize,
}

impl OpenArc {
    fn new(x: ChipEndpoint, y: ChipEndpoint, roods: usize) -> Self {
        let (a, b) = if x <= y { (x, y) } else { (y, x) };
        OpenArc { a, b, roods }
    }
}

/// A chip of levels `(α, β)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chip {
    alpha: usize,
    beta: usize,
    arcs: Vec<OpenArc>,
    cycles: Vec<usize>,
}

impl Chip {
    /// The unit chip of level `a`: straight arcs `T·k – B·k` on both sides.
    pub fn identity(a: usize) -> Chip {
        let mut arcs = Vec::with_capacity(2 * a);
        for side in [Side::Left, Side::Right] {
            for k in 1..=a {
                arcs.push(OpenArc::new(
                    ChipEndpoint::new(Row::Top, side, k),
                    ChipEndpoint::new(Row::Bottom, side, k),
                    0,
                ));
            }
        }
        Chip::assemble(a, a, arcs, Vec::new())
    }

    fn assemble(alpha: usize, beta: usize, mut arcs: Vec<OpenArc>, mut cycles: Vec<usize>) -> Chip {
        assert!(cycles.iter().all(|&r| r > 0), "closed chain without roods");
        cycles.retain(|&r| r != 2);
        cycles.sort_unstable();
        arcs.sort_unstable();
        let c = Chip { alpha, beta, arcs, cycles };
        debug_assert!(c.validate().is_ok(), "{:?}", c.validate());
        c
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn beta(&self) -> usize {
        self.beta
    }

    pub fn arcs(&self) -> &[OpenArc] {
        &self.arcs
    }

    /// Rood counts of the closed cycles, sorted.
    pub fn cycles(&self) -> &[usize] {
        &self.cycles
    }

    /// Checks the endpoint, parity and cycle invariants.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParams(m));
        let mut used = BTreeSet::new();
        for arc in &self.arcs {
            for e in [arc.a, arc.b] {
                let bound = if e.row == Row::Top { self.beta } else { self.alpha };
                if e.index == 0 || e.index > bound {
                    return bad(format!("endpoint {e} outside level"));
                }
                if !used.insert(e) {
                    return bad(format!("endpoint {e} used twice"));
                }
            }
            if arc.a.row != arc.b.row {
                if arc.a.side != arc.b.side || arc.roods % 2 != 0 {
                    return bad(format!("vertical arc {}–{} breaks parity", arc.a, arc.b));
                }
            } else if arc.a.side == arc.b.side || arc.roods % 2 != 1 {
                return bad(format!("horizontal arc {}–{} breaks parity", arc.a, arc.b));
            }
        }
        if used.len() != 2 * (self.alpha + self.beta) {
            return bad("unused endpoint".into());
        }
        if self.cycles.iter().any(|&r| r % 2 != 0 || r < 4) {
            return bad("cycle rood counts must be even and at least 4".into());
        }
        Ok(())
    }

    fn partner_map(&self) -> BTreeMap<ChipEndpoint, (ChipEndpoint, usize)> {
        let mut m = BTreeMap::new();
        for arc in &self.arcs {
            m.insert(arc.a, (arc.b, arc.roods));
            m.insert(arc.b, (arc.a, arc.roods));
        }
        m
    }

    pub fn to_json(&self) -> Value {
        let ep = |e: &ChipEndpoint| {
            json!([
                if e.row == Row::Top { "top" } else { "bottom" },
                if e.side == Side::Left { "left" } else { "right" },
                e.index
            ])
        };
        json!({
            "alpha": self.alpha,
            "beta": self.beta,
            "arcs": self.arcs.iter().map(|a| json!({"a": ep(&a.a), "b": ep(&a.b), "roods": a.roods})).collect::<Vec<_>>(),
            "cycles": self.cycles,
        })
    }

    pub fn from_json(v: &Value) -> Result<Chip> {
        let bad = || Error::Parse("malformed chip JSON".into());
        let num = |x: &Value| x.as_u64().map(|u| u as usize).ok_or_else(bad);
        let ep = |x: &Value| -> Result<ChipEndpoint> {
            let a = x.as_array().filter(|a| a.len() == 3).ok_or_else(bad)?;
            let row = match a[0].as_str() {
                Some("top") => Row::Top,
                Some("bottom") => Row::Bottom,
                _ => return Err(bad()),
            };
            let side = match a[1].as_str() {
                Some("left") => Side::Left,
                Some("right") => Side::Right,
                _ => return Err(bad()),
            };
            Ok(ChipEndpoint::new(row, side, num(&a[2])?))
        };
        let alpha = num(&v["alpha"])?;
        let beta = num(&v["beta"])?;
        let mut arcs = Vec::new();
        for a in v["arcs"].as_array().ok_or_else(bad)? {
            arcs.push(OpenArc::new(ep(&a["a"])?, ep(&a["b"])?, num(&a["roods"])?));
        }
        let mut cycles = Vec::new();
        for c in v["cycles"].as_array().ok_or_else(bad)? {
            cycles.push(num(c)?);
        }
        arcs.sort_unstable();
        cycles.sort_unstable();
        let c = Chip { alpha, beta, arcs, cycles };
        c.validate()?;
        Ok(c)
    }
}

impl Chip {
    /// Endpoints as nodes, arcs as edges labeled by rood counts; closed chains as isolated nodes.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph chip {\n");
        let mut nodes = BTreeSet::new();
        for a in &self.arcs {
            nodes.insert(a.a);
            nodes.insert(a.b);
        }
        for e in &nodes {
            s.push_str(&format!("  {e} [label=\"{e}\"];\n"));
        }
        for a in &self.arcs {
            s.push_str(&format!("  {} -- {} [label=\"{}\"];\n", a.a, a.b, a.roods));
        }
        for (i, r) in self.cycles.iter().enumerate() {
            s.push_str(&format!("  cycle{i} [shape=circle,label=\"{r}\"];\n"));
        }
        s.push_str("}\n");
        s
    }
}

impl fmt::Display for Chip {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chip({}, {})", self.alpha, self.beta)?;
        for a in &self.arcs {
            write!(f, " {}-{}[{}]", a.a, a.b, a.roods)?;
        }
        if !self.cycles.is_empty() {
            write!(f, " cycles{:?}", self.cycles)?;
        }
        Ok(())
    }
}

/// Chip of the pair `(g1, g2)` at levels `(α, β)`.
pub fn chip_from_pair(g1: &ColoredPerm, g2: &ColoredPerm, alpha: usize, beta: usize) -> Result<Chip> {
    for g in [g1, g2] {
        if g.color_count() != 1 {
            return Err(Error::ColorMismatch(g.color_count(), 1));
        }
    }
    let n = g1.max_index().max(g2.max_index()).max(alpha).max(beta);
    // node id: row * 2n + side * n + (k - 1)
    let id = |row: Row, side: Side, k: usize| (row as usize) * 2 * n + (side as usize) * n + (k - 1);
    let decode = |x: usize| {
        let row = if x < 2 * n { Row::Top } else { Row::Bottom };
        let side = if x % (2 * n) < n { Side::Left } else { Side::Right };
        ChipEndpoint::new(row, side, x % n + 1)
    };
    let mut vertical = vec![0usize; 4 * n];
    for k in 1..=n {
        for (side, g) in [(Side::Left, g1), (Side::Right, g2)] {
            let (t, b) = (id(Row::Top, side, k), id(Row::Bottom, side, g.apply1(k)));
            vertical[t] = b;
            vertical[b] = t;
        }
    }
    let labeled = |x: usize| {
        let e = decode(x);
        e.index <= if e.row == Row::Top { beta } else { alpha }
    };
    let horizontal = |x: usize| {
        let e = decode(x);
        let other = if e.side == Side::Left { Side::Right } else { Side::Left };
        id(e.row, other, e.index)
    };
    let mut seen = vec![false; 4 * n];
    let mut arcs = Vec::new();
    for x in 0..4 * n {
        if !labeled(x) || seen[x] {
            continue;
        }
        seen[x] = true;
        let mut roods = 0;
        let mut y = vertical[x];
        while !labeled(y) {
            seen[y] = true;
            let z = horizontal(y);
            seen[z] = true;
            roods += 1;
            y = vertical[z];
        }
        seen[y] = true;
        arcs.push(OpenArc::new(decode(x), decode(y), roods));
    }
    let mut cycles = Vec::new();
    for x in 0..4 * n {
        if seen[x] {
            continue;
        }
        let mut roods = 0;
        let mut y = x;
        loop {
            seen[y] = true;
            let z = vertical[y];
            seen[z] = true;
            roods += 1;
            y = horizontal(z);
            if y == x {
                break;
            }
        }
        cycles.push(roods);
    }
    Ok(Chip::assemble(alpha, beta, arcs, cycles))
}

/// Gluing product `c1 ∘ c2`: the top row of `c1` is identified with the bottom row of `c2`.
pub fn chip_mul(c1: &Chip, c2: &Chip) -> Result<Chip> {
    if c1.beta != c2.alpha {
        return Err(Error::LevelMismatch(format!("chip({}, {}) ∘ chip({}, {})", c1.alpha, c1.beta, c2.alpha, c2.beta)));
    }
    let p1 = c1.partner_map();
    let p2 = c2.partner_map();
    let mut glued_seen: BTreeSet<(Side, usize)> = BTreeSet::new();
    let mut arcs = Vec::new();
    let mut done: BTreeSet<(u8, ChipEndpoint)> = BTreeSet::new();

    // Walk from an endpoint of chip `which` (1 or 2) until an outer endpoint is reached.
    let walk = |which: u8, start: ChipEndpoint, seen: &mut BTreeSet<(Side, usize)>| -> (u8, ChipEndpoint, usize) {
        let (mut cur_chip, mut cur) = (which, start);
        let mut roods = 0;
        loop {
            let (other, r) = if cur_chip == 1 { p1[&cur] } else { p2[&cur] };
            roods += r;
            let inner = (cur_chip == 1 && other.row == Row::Top) || (cur_chip == 2 && other.row == Row::Bottom);
            if !inner {
                return (cur_chip, other, roods);
            }
            seen.insert((other.side, other.index));
            cur = other.flipped();
            cur_chip = 3 - cur_chip;
        }
    };

    let outer: Vec<(u8, ChipEndpoint)> = c1
        .arcs
        .iter()
        .flat_map(|a| [a.a, a.b])
        .filter(|e| e.row == Row::Bottom)
        .map(|e| (1u8, e))
        .chain(c2.arcs.iter().flat_map(|a| [a.a, a.b]).filter(|e| e.row == Row::Top).map(|e| (2u8, e)))
        .collect();
    for (which, e) in outer {
        if done.contains(&(which, e)) {
            continue;
        }
        let (end_chip, end, roods) = walk(which, e, &mut glued_seen);
        done.insert((which, e));
        done.insert((end_chip, end));
        arcs.push(OpenArc::new(e, end, roods));
    }

    let mut cycles: Vec<usize> = c1.cycles.iter().chain(c2.cycles.iter()).copied().collect();
    for side in [Side::Left, Side::Right] {
        for k in 1..=c1.beta {
            if glued_seen.contains(&(side, k)) {
                continue;
            }
            // closed chain through the seam
            let start = (side, k);
            let mut cur = ChipEndpoint::new(Row::Top, side, k);
            let mut roods = 0;
            loop {
                glued_seen.insert((cur.side, cur.index));
                let (o1, r1) = p1[&cur];
                roods += r1;
                let (o2, r2) = p2[&o1.flipped()];
                roods += r2;
                glued_seen.insert((o1.side, o1.index));
                let next = o2.flipped();
                if (next.side, next.index) == start {
                    break;
                }
                cur = next;
            }
            cycles.push(roods);
        }
    }
    Ok(Chip::assemble(c1.alpha, c2.beta, arcs, cycles))
}

/// Reflection across the horizontal: rows swap, levels become `(β, α)`.
pub fn chip_involution(c: &Chip) -> Chip {
    let arcs = c.arcs.iter().map(|a| OpenArc::new(a.a.flipped(), a.b.flipped(), a.roods)).collect();
    Chip::assemble(c.beta, c.alpha, arcs, c.cycles.clone())
}

pub fn chip_canon(c: &Chip) -> CanonCode {
    let mut w = vec![c.alpha as u64, c.beta as u64, c.arcs.len() as u64];
    for a in &c.arcs {
        w.extend(a.a.words());
        w.extend(a.b.words());
        w.push(a.roods as u64);
    }
    w.push(c.cycles.len() as u64);
    w.extend(c.cycles.iter().map(|&r| r as u64));
    CanonCode::with_tag(b"chip", &w)
}

/// Thoma spherical function on a `(0,0)`-chip: one factor per cycle of `2k` roods.
pub fn chip_thoma_eval(c: &Chip, params: &ThomaParams) -> Result<f64> {
    if c.alpha != 0 || c.beta != 0 {
        return Err(Error::LevelMismatch("Thoma evaluation needs a (0,0)-chip".into()));
    }
    Ok(c.cycles.iter().map(|&r| params.power_sum(r / 2)).product())
}
