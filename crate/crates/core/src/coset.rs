//! One type over all encodings, so callers can build, glue and export
//! double cosets without caring which pair they belong to.

use serde_json::{json, Value};

use crate::bigraph::{graph_canon, graph_from_perm, graph_mul, BipartiteDiagram};
use crate::canon::CanonCode;
use crate::characters::{s_matrix, SMatrix};
use crate::chips::{chip_canon, chip_from_pair, chip_involution, chip_mul, Chip};
use crate::error::{Error, Result};
use crate::gem::{gem_canon, gem_from_tuple, gem_mul, GemComplex};
use crate::oracle::{Encoder, GroupElement, PairSpec};
use crate::surfaces::{surface_canon, surface_from_tuple, surface_mul, EquippedSurface};

#[derive(Debug, Clone, PartialEq)]
pub enum Coset {
    Chip(Chip),
    Surface(EquippedSurface),
    Gem(GemComplex),
    Graph(BipartiteDiagram),
    /// Level-zero Young coset, its s-matrix.
    Young(SMatrix),
}

impl Coset {
    /// Encodes `K[α] g K[β]`; `n` pads the truncation with fixed points.
    pub fn build(encoder: Encoder, spec: &PairSpec, g: &GroupElement, alpha: usize, beta: usize, n: Option<usize>) -> Result<Coset> {
        if !encoder.supports(spec) {
            return Err(Error::SpecMismatch(format!("encoder {encoder} does not apply to {spec}")));
        }
        g.check(spec)?;
        Ok(match encoder {
            Encoder::Chips => {
                if let Some(n) = n {
                    if g.max_index() > n {
                        return Err(Error::SupportExceeds { index: g.max_index(), bound: n });
                    }
                }
                Coset::Chip(chip_from_pair(&g.parts[0], &g.parts[1], alpha, beta)?)
            }
            Encoder::Surfaces => Coset::Surface(surface_from_tuple(&g.parts, alpha, beta, n)?),
            Encoder::Gem => Coset::Gem(gem_from_tuple(&g.parts, alpha, beta, n)?),
            Encoder::Bigraph => Coset::Graph(graph_from_perm(&g.parts[0], alpha, beta, n)?),
            Encoder::Young => {
                if alpha != 0 || beta != 0 {
                    return Err(Error::LevelMismatch("the s-matrix encoder works at level zero".into()));
                }
                Coset::Young(s_matrix(&g.parts[0]))
            }
        })
    }

    pub fn encoder(&self) -> Encoder {
        match self {
            Coset::Chip(_) => Encoder::Chips,
            Coset::Surface(_) => Encoder::Surfaces,
            Coset::Gem(_) => Encoder::Gem,
            Coset::Graph(_) => Encoder::Bigraph,
            Coset::Young(_) => Encoder::Young,
        }
    }

    /// `(α, β)`.
    pub fn levels(&self) -> (usize, usize) {
        match self {
            Coset::Chip(c) => (c.alpha(), c.beta()),
            Coset::Surface(s) => (s.alpha(), s.beta()),
            Coset::Gem(g) => (g.alpha(), g.beta()),
            Coset::Graph(d) => (d.alpha(), d.beta()),
            Coset::Young(_) => (0, 0),
        }
    }

    /// `self ∘ other`, glued along the shared level.
    pub fn mul(&self, other: &Coset) -> Result<Coset> {
        Ok(match (self, other) {
            (Coset::Chip(a), Coset::Chip(b)) => Coset::Chip(chip_mul(a, b)?),
            (Coset::Surface(a), Coset::Surface(b)) => Coset::Surface(surface_mul(a, b)?),
            (Coset::Gem(a), Coset::Gem(b)) => Coset::Gem(gem_mul(a, b)?),
            (Coset::Graph(a), Coset::Graph(b)) => Coset::Graph(graph_mul(a, b)?),
            (Coset::Young(a), Coset::Young(b)) => Coset::Young(a.add(b)?),
            _ => return Err(Error::SpecMismatch("cannot glue cosets of different encodings".into())),
        })
    }

    pub fn involution(&self) -> Coset {
        match self {
            Coset::Chip(c) => Coset::Chip(chip_involution(c)),
            Coset::Surface(s) => Coset::Surface(s.involution()),
            Coset::Gem(g) => Coset::Gem(g.involution()),
            Coset::Graph(d) => Coset::Graph(d.involution()),
            Coset::Young(s) => Coset::Young(s.transpose()),
        }
    }

    pub fn canon(&self) -> CanonCode {
        match self {
            Coset::Chip(c) => chip_canon(c),
            Coset::Surface(s) => surface_canon(s),
            Coset::Gem(g) => gem_canon(g),
            Coset::Graph(d) => graph_canon(d),
            Coset::Young(s) => {
                let words: Vec<u64> = s.rows().iter().flatten().copied().collect();
                CanonCode::with_tag(b"youn", &words)
            }
        }
    }

    pub fn to_json(&self) -> Value {
        let data = match self {
            Coset::Chip(c) => c.to_json(),
            Coset::Surface(s) => s.to_json(),
            Coset::Gem(g) => g.to_json(),
            Coset::Graph(d) => d.to_json(),
            Coset::Young(s) => s.to_json(),
        };
        json!({ "encoder": self.encoder().to_string(), "data": data })
    }

    pub fn from_json(v: &Value) -> Result<Coset> {
        let enc: Encoder = v["encoder"].as_str().ok_or_else(|| Error::Parse("missing \"encoder\" field".into()))?.parse()?;
        let data = &v["data"];
        Ok(match enc {
            Encoder::Chips => Coset::Chip(Chip::from_json(data)?),
            Encoder::Surfaces => Coset::Surface(EquippedSurface::from_json(data)?),
            Encoder::Gem => Coset::Gem(GemComplex::from_json(data)?),
            Encoder::Bigraph => Coset::Graph(BipartiteDiagram::from_json(data)?),
            Encoder::Young => Coset::Young(SMatrix::from_json(data)?),
        })
    }

    pub fn to_dot(&self) -> String {
        match self {
            Coset::Chip(c) => c.to_dot(),
            Coset::Surface(s) => s.to_dot(),
            Coset::Gem(g) => surface_of_gem_dot(g),
            Coset::Graph(d) => d.to_dot(),
            Coset::Young(s) => {
                let mut out = String::from("digraph flow {\n");
                for nu in 1..=s.colors() {
                    out.push_str(&format!("  c{nu};\n"));
                }
                for nu in 1..=s.colors() {
                    for mu in 1..=s.colors() {
                        if s.get(nu, mu) > 0 {
                            out.push_str(&format!("  c{nu} -> c{mu} [label=\"{}\"];\n", s.get(nu, mu)));
                        }
                    }
                }
                out.push_str("}\n");
                out
            }
        }
    }
}

fn surface_of_gem_dot(g: &GemComplex) -> String {
    crate::gem::surface_of_gem(g).to_dot().replacen("graph surface", "graph gem", 1)
}
