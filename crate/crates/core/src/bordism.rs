//! Cells glued along colored facets: the common core of equipped surfaces and gems.
//!
//! There are as many plus cells as minus cells. For every color `c` the
//! facets of that color pair plus cell `f` with minus cell `matching[c][f]`.
//! Entries are plus cells labeled `1..β`, exits are minus cells labeled `1..α`.

use crate::canon::{CanonCode, UnionFind};
use crate::error::{Error, Result};
use crate::perm::ColoredPerm;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bordism {
    pub(crate) matching: Vec<Vec<usize>>,
    pub(crate) entries: Vec<usize>,
    pub(crate) exits: Vec<usize>,
}

/// Face sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Bordism {
    /// Cells `1..N` with plus `k` matched to minus `g_c(k)` in color `c`.
    /// `N` defaults to the largest of the supports and levels.
    pub fn from_perms(perms: &[ColoredPerm], alpha: usize, beta: usize, n: Option<usize>) -> Result<Bordism> {
        if perms.is_empty() {
            return Err(Error::InvalidParams("need at least one permutation".into()));
        }
        for g in perms {
            if g.color_count() != 1 {
                return Err(Error::ColorMismatch(g.color_count(), 1));
            }
        }
        let support = perms.iter().map(ColoredPerm::max_index).max().unwrap_or(0);
        let n = match n {
            Some(n) if support > n => return Err(Error::SupportExceeds { index: support, bound: n }),
            Some(n) => n.max(alpha).max(beta),
            None => support.max(alpha).max(beta),
        };
        let matching = perms.iter().map(|g| (1..=n).map(|k| g.apply1(k) - 1).collect()).collect();
        let b = Bordism { matching, entries: (0..beta).collect(), exits: (0..alpha).collect() };
        Ok(b.normalized())
    }

    pub fn colors(&self) -> usize {
        self.matching.len()
    }

    /// Number of plus cells (equal to the number of minus cells).
    pub fn cells(&self) -> usize {
        self.matching.first().map_or(0, Vec::len)
    }

    pub fn alpha(&self) -> usize {
        self.exits.len()
    }

    pub fn beta(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn exits(&self) -> &[usize] {
        &self.exits
    }

    /// Minus cell glued to plus cell `f` along color `c`.
    pub fn partner_of_plus(&self, c: usize, f: usize) -> usize {
        self.matching[c][f]
    }

    pub fn inverse_matching(&self) -> Vec<Vec<usize>> {
        self.matching
            .iter()
            .map(|m| {
                let mut inv = vec![0; m.len()];
                for (f, &g) in m.iter().enumerate() {
                    inv[g] = f;
                }
                inv
            })
            .collect()
    }

    /// Label of a plus cell, 1-based.
    pub fn entry_label(&self, f: usize) -> Option<usize> {
        self.entries.iter().position(|&x| x == f).map(|k| k + 1)
    }

    /// Label of a minus cell, 1-based.
    pub fn exit_label(&self, m: usize) -> Option<usize> {
        self.exits.iter().position(|&x| x == m).map(|k| k + 1)
    }

    /// Connected components as `(plus cells, minus cells)`, ordered by first plus cell.
    pub fn components(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let n = self.cells();
        let mut uf = UnionFind::new(2 * n);
        for m in &self.matching {
            for (f, &g) in m.iter().enumerate() {
                uf.union(f, n + g);
            }
        }
        uf.groups()
            .into_iter()
            .map(|grp| {
                let plus = grp.iter().copied().filter(|&x| x < n).collect();
                let minus = grp.iter().copied().filter(|&x| x >= n).map(|x| x - n).collect();
                (plus, minus)
            })
            .collect()
    }

    /// Drops unlabeled components made of one plus and one minus cell.
    pub fn normalized(&self) -> Bordism {
        let n = self.cells();
        let mut keep_plus = vec![true; n];
        let mut keep_minus = vec![true; n];
        let mut is_entry = vec![false; n];
        let mut is_exit = vec![false; n];
        for &f in &self.entries {
            is_entry[f] = true;
        }
        for &m in &self.exits {
            is_exit[m] = true;
        }
        for (plus, minus) in self.components() {
            if plus.len() == 1 && minus.len() == 1 && !is_entry[plus[0]] && !is_exit[minus[0]] {
                keep_plus[plus[0]] = false;
                keep_minus[minus[0]] = false;
            }
        }
        self.restrict(&keep_plus, &keep_minus)
    }

    fn restrict(&self, keep_plus: &[bool], keep_minus: &[bool]) -> Bordism {
        let renum = |keep: &[bool]| {
            let mut next = 0;
            keep.iter()
                .map(|&k| {
                    if k {
                        next += 1;
                        next - 1
                    } else {
                        usize::MAX
                    }
                })
                .collect::<Vec<usize>>()
        };
        let np = renum(keep_plus);
        let nm = renum(keep_minus);
        let matching = self
            .matching
            .iter()
            .map(|m| m.iter().enumerate().filter(|(f, _)| keep_plus[*f]).map(|(_, &g)| nm[g]).collect())
            .collect();
        Bordism {
            matching,
            entries: self.entries.iter().map(|&f| np[f]).collect(),
            exits: self.exits.iter().map(|&m| nm[m]).collect(),
        }
    }

    /// Gluing `self ∘ other` for `self` of levels `(α, β)` and `other` of levels `(β, γ)`.
    ///
    /// The entries of `self` and the exits of `other` are removed and the
    /// dangling facets are rejoined through them.
    pub fn mul(&self, other: &Bordism) -> Result<Bordism> {
        Ok(self.mul_raw(other)?.normalized())
    }

    /// Gluing without dropping the trivial components.
    pub fn mul_raw(&self, other: &Bordism) -> Result<Bordism> {
        if self.colors() != other.colors() {
            return Err(Error::ColorMismatch(self.colors(), other.colors()));
        }
        if self.beta() != other.alpha() {
            return Err(Error::LevelMismatch(format!(
                "({}, {}) ∘ ({}, {})",
                self.alpha(),
                self.beta(),
                other.alpha(),
                other.beta()
            )));
        }
        let (np, nq) = (self.cells(), other.cells());
        let mut p_is_entry = vec![false; np];
        for &f in &self.entries {
            p_is_entry[f] = true;
        }
        let mut q_exit_label = vec![usize::MAX; nq];
        for (k, &m) in other.exits.iter().enumerate() {
            q_exit_label[m] = k;
        }
        // new plus cells: other's plus cells, then self's non-entry plus cells
        // new minus cells: self's minus cells, then other's non-exit minus cells
        let mut q_minus_new = vec![usize::MAX; nq];
        let mut next = np;
        for m in 0..nq {
            if q_exit_label[m] == usize::MAX {
                q_minus_new[m] = next;
                next += 1;
            }
        }
        let p_rest: Vec<usize> = (0..np).filter(|&f| !p_is_entry[f]).collect();
        let matching = (0..self.colors())
            .map(|c| {
                let mut row = Vec::with_capacity(nq + p_rest.len());
                for f in 0..nq {
                    let m = other.matching[c][f];
                    let k = q_exit_label[m];
                    row.push(if k == usize::MAX { q_minus_new[m] } else { self.matching[c][self.entries[k]] });
                }
                row.extend(p_rest.iter().map(|&f| self.matching[c][f]));
                row
            })
            .collect();
        Ok(Bordism { matching, entries: other.entries.clone(), exits: self.exits.clone() })
    }

    /// Swaps plus and minus cells, entries and exits.
    pub fn involution(&self) -> Bordism {
        Bordism { matching: self.inverse_matching(), entries: self.exits.clone(), exits: self.entries.clone() }
    }

    /// Unit of level `a`: `a` labeled double cells.
    pub fn identity(colors: usize, a: usize) -> Bordism {
        Bordism { matching: vec![(0..a).collect(); colors], entries: (0..a).collect(), exits: (0..a).collect() }
    }

    /// Recovers the tuple when every cell is labeled.
    pub fn to_perms(&self) -> Result<Vec<ColoredPerm>> {
        let n = self.cells();
        if self.entries.len() != n || self.exits.len() != n {
            return Err(Error::Unlabeled);
        }
        let mut exit_label = vec![0; n];
        for (k, &m) in self.exits.iter().enumerate() {
            exit_label[m] = k + 1;
        }
        self.matching
            .iter()
            .map(|m| {
                let images: Vec<usize> = (0..n).map(|k| exit_label[m[self.entries[k]]]).collect();
                ColoredPerm::from_images(&images)
            })
            .collect()
    }

    /// Face-walk code of one component from a fixed start.
    fn walk_code(&self, inv: &[Vec<usize>], start: (Sign, usize)) -> Vec<u64> {
        let n = self.cells();
        let mut id_plus = vec![u64::MAX; n];
        let mut id_minus = vec![u64::MAX; n];
        let mut queue = std::collections::VecDeque::new();
        let mut next_id = 0u64;
        let mut assign = |s: Sign, x: usize, queue: &mut std::collections::VecDeque<(Sign, usize)>| {
            let slot = if s == Sign::Plus { &mut id_plus[x] } else { &mut id_minus[x] };
            if *slot == u64::MAX {
                *slot = next_id;
                next_id += 1;
                queue.push_back((s, x));
            }
            *slot
        };
        assign(start.0, start.1, &mut queue);
        let mut code = Vec::new();
        while let Some((s, x)) = queue.pop_front() {
            let label = match s {
                Sign::Plus => self.entry_label(x),
                Sign::Minus => self.exit_label(x),
            };
            code.push(s as u64);
            code.push(label.map_or(0, |k| k as u64));
            for c in 0..self.colors() {
                let id = match s {
                    Sign::Plus => assign(Sign::Minus, self.matching[c][x], &mut queue),
                    Sign::Minus => assign(Sign::Plus, inv[c][x], &mut queue),
                };
                code.push(id);
            }
        }
        code
    }

    /// Canonical words: header, then sorted per-component codes.
    pub fn canon_words(&self) -> Vec<u64> {
        let inv = self.inverse_matching();
        let mut comps: Vec<Vec<u64>> = self
            .components()
            .into_iter()
            .map(|(plus, minus)| {
                let entry = plus.iter().filter_map(|&f| self.entry_label(f).map(|k| (k, f))).min();
                let exit = minus.iter().filter_map(|&m| self.exit_label(m).map(|k| (k, m))).min();
                match (entry, exit) {
                    (Some((_, f)), _) => self.walk_code(&inv, (Sign::Plus, f)),
                    (None, Some((_, m))) => self.walk_code(&inv, (Sign::Minus, m)),
                    (None, None) => plus
                        .iter()
                        .map(|&f| self.walk_code(&inv, (Sign::Plus, f)))
                        .min()
                        .expect("components are nonempty"),
                }
            })
            .collect();
        comps.sort();
        let mut words = vec![self.colors() as u64, self.alpha() as u64, self.beta() as u64];
        for c in comps {
            words.push(c.len() as u64);
            words.extend(c);
        }
        words
    }

    pub fn canon(&self, tag: &[u8]) -> CanonCode {
        CanonCode::with_tag(tag, &self.canon_words())
    }

    /// Applies a permutation to the internal cell indices.
    pub fn renumbered(&self, plus_perm: &[usize], minus_perm: &[usize]) -> Bordism {
        let n = self.cells();
        let matching = self
            .matching
            .iter()
            .map(|m| {
                let mut row = vec![0; n];
                for f in 0..n {
                    row[plus_perm[f]] = minus_perm[m[f]];
                }
                row
            })
            .collect();
        Bordism {
            matching,
            entries: self.entries.iter().map(|&f| plus_perm[f]).collect(),
            exits: self.exits.iter().map(|&m| minus_perm[m]).collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "colors": self.colors(),
            "cells": self.cells(),
            "matching": self.matching.iter().map(|m| m.iter().map(|x| x + 1).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "entries": self.entries.iter().map(|x| x + 1).collect::<Vec<_>>(),
            "exits": self.exits.iter().map(|x| x + 1).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Bordism> {
        let bad = || Error::Parse("malformed cell-complex JSON".into());
        let list = |x: &serde_json::Value| -> Result<Vec<usize>> {
            x.as_array()
                .ok_or_else(bad)?
                .iter()
                .map(|y| y.as_u64().filter(|&u| u >= 1).map(|u| u as usize - 1).ok_or_else(bad))
                .collect()
        };
        let n = v["cells"].as_u64().ok_or_else(bad)? as usize;
        let matching: Vec<Vec<usize>> =
            v["matching"].as_array().ok_or_else(bad)?.iter().map(list).collect::<Result<_>>()?;
        if matching.is_empty() {
            return Err(bad());
        }
        for m in &matching {
            let mut s = m.clone();
            s.sort_unstable();
            if s != (0..n).collect::<Vec<_>>() {
                return Err(Error::Parse("matching is not a bijection".into()));
            }
        }
        let entries = list(&v["entries"])?;
        let exits = list(&v["exits"])?;
        for l in [&entries, &exits] {
            let mut s = l.clone();
            s.sort_unstable();
            s.dedup();
            if s.len() != l.len() || s.iter().any(|&x| x >= n) {
                return Err(Error::Parse("labels must be distinct cells".into()));
            }
        }
        Ok(Bordism { matching, entries, exits })
    }
}
