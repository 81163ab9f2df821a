//! Seeded property suites comparing every encoding and formula with the
//! group-level and tensor oracles.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::canon::UnionFind;
use crate::characters::{cycle_decompose, nessonov_char, thoma_char, thoma_psd_check, young_spherical, GramSpec, SMatrix, ThomaParams};
use crate::coset::Coset;
use crate::error::{Error, Result};
use crate::gem::{f_vector, gem_from_tuple, surface_of_gem};
use crate::oracle::{coset_product_rep, stabilization_check, Encoder, GroupElement, PairKind, PairSpec};
use crate::perm::{ColoredPerm, CosetLevel};
use crate::surfaces::{components, spherical_assignment_sum, surface_canon, surface_from_tuple, vertices};
use crate::tensor::{rep_matrix_element, super_rep_matrix_element, young_tensor_value, CoeffTensor};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Stabilization,
    Gluing,
    Characters,
    Topology,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "stabilization" => Ok(Suite::Stabilization),
            "gluing" => Ok(Suite::Gluing),
            "characters" => Ok(Suite::Characters),
            "topology" => Ok(Suite::Topology),
            "all" => Ok(Suite::All),
            _ => Err(Error::Parse(format!("unknown suite {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub seed: u64,
    pub cases: usize,
    pub max_support: usize,
    pub max_level: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: 1, cases: 200, max_support: 8, max_level: 3 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckLine {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    pub max_deviation: Option<f64>,
}

impl CheckLine {
    fn new(name: impl Into<String>) -> Self {
        CheckLine { name: name.into(), cases: 0, failures: 0, max_deviation: None }
    }

    fn record(&mut self, ok: bool) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
        }
    }

    fn deviation(&mut self, dev: f64, tol: f64) {
        self.max_deviation = Some(self.max_deviation.map_or(dev, |m| m.max(dev)));
        self.record(dev <= tol);
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "ok  " } else { "FAIL" };
        write!(f, "{status} {:<44} {:>6} cases", self.name, self.cases)?;
        if self.failures > 0 {
            write!(f, ", {} failures", self.failures)?;
        }
        if let Some(d) = self.max_deviation {
            write!(f, ", max deviation {d:.3e}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub lines: Vec<CheckLine>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(CheckLine::passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        let failed = self.lines.iter().filter(|l| !l.passed()).count();
        write!(f, "{} checks, {failed} failed", self.lines.len())
    }
}

/// Pairs and encoders exercised by the combinatorial suites.
pub fn encoder_matrix() -> Vec<(PairSpec, Encoder)> {
    vec![
        (PairSpec::bisymmetric(), Encoder::Chips),
        (PairSpec::bisymmetric(), Encoder::Surfaces),
        (PairSpec::trisymmetric(), Encoder::Surfaces),
        (PairSpec::trisymmetric(), Encoder::Gem),
        (PairSpec::diagonal(4), Encoder::Gem),
        (PairSpec::wreath(3), Encoder::Bigraph),
        (PairSpec::young(3), Encoder::Young),
    ]
}

fn level(rng: &mut ChaCha8Rng, enc: Encoder, max: usize) -> usize {
    if enc == Encoder::Young {
        0
    } else {
        rng.random_range(0..=max)
    }
}

fn support(spec: &PairSpec, opts: &VerifyOptions) -> usize {
    match spec.kind {
        PairKind::Wreath { .. } | PairKind::Young { .. } => opts.max_support.min(5),
        _ => opts.max_support,
    }
}

pub fn run(suite: Suite, opts: &VerifyOptions) -> Result<Report> {
    let mut report = Report::default();
    let all = suite == Suite::All;
    if all || suite == Suite::Stabilization {
        report.lines.extend(stabilization(opts)?);
    }
    if all || suite == Suite::Gluing {
        report.lines.extend(gluing(opts)?);
    }
    if all || suite == Suite::Characters {
        report.lines.extend(characters(opts)?);
    }
    if all || suite == Suite::Topology {
        report.lines.extend(topology(opts)?);
    }
    Ok(report)
}

pub fn stabilization(opts: &VerifyOptions) -> Result<Vec<CheckLine>> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut out = Vec::new();
    for (spec, enc) in encoder_matrix() {
        let mut line = CheckLine::new(format!("stabilization {spec}/{enc}"));
        let n = support(&spec, opts);
        for _ in 0..opts.cases {
            let (a, b, c) = (level(&mut rng, enc, opts.max_level), level(&mut rng, enc, opts.max_level), level(&mut rng, enc, opts.max_level));
            let (np, nq) = (rng.random_range(1..=n), rng.random_range(1..=n));
            let p = GroupElement::random(&spec, &mut rng, np);
            let q = GroupElement::random(&spec, &mut rng, nq);
            let l = CosetLevel::single;
            line.record(stabilization_check(&spec, &p, &q, &l(a), &l(b), &l(c), enc, 3)?);
        }
        out.push(line);
    }
    Ok(out)
}

/// Gluing against the group product, associativity and the involution law.
pub fn gluing(opts: &VerifyOptions) -> Result<Vec<CheckLine>> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(1));
    let mut out = Vec::new();
    for (spec, enc) in encoder_matrix() {
        let n = support(&spec, opts);
        let mut glue = CheckLine::new(format!("gluing = product {spec}/{enc}"));
        let mut assoc = CheckLine::new(format!("associativity {spec}/{enc}"));
        let mut invol = CheckLine::new(format!("involution {spec}/{enc}"));
        for _ in 0..opts.cases {
            let lv: Vec<usize> = (0..4).map(|_| level(&mut rng, enc, opts.max_level)).collect();
            let g: Vec<GroupElement> = (0..3)
                .map(|_| {
                    let k = rng.random_range(1..=n);
                    GroupElement::random(&spec, &mut rng, k)
                })
                .collect();
            let build = |x: &GroupElement, a: usize, b: usize| Coset::build(enc, &spec, x, a, b, None);
            let c: Vec<Coset> = (0..3).map(|i| build(&g[i], lv[i], lv[i + 1])).collect::<Result<_>>()?;
            let l = CosetLevel::single;
            let (r, _) = coset_product_rep(&spec, &g[0], &g[1], &l(lv[0]), &l(lv[1]), &l(lv[2]))?;
            let glued = c[0].mul(&c[1])?;
            glue.record(glued.canon() == build(&r, lv[0], lv[2])?.canon());
            let left = glued.mul(&c[2])?;
            let right = c[0].mul(&c[1].mul(&c[2])?)?;
            assoc.record(left.canon() == right.canon());
            let star = glued.involution();
            invol.record(
                star.canon() == c[1].involution().mul(&c[0].involution())?.canon()
                    && star.canon() == build(&r.inverse(), lv[2], lv[0])?.canon(),
            );
        }
        out.extend([glue, assoc, invol]);
    }
    Ok(out)
}

/// Parameter sets used for the Thoma comparison.
pub fn thoma_parameter_sets() -> Vec<ThomaParams> {
    [
        (vec![1.0], vec![]),
        (vec![], vec![1.0]),
        (vec![0.5, 0.5], vec![]),
        (vec![0.5, 0.25, 0.25], vec![]),
        (vec![0.5], vec![0.5]),
    ]
    .into_iter()
    .map(|(a, b)| ThomaParams::new(a, b).expect("valid parameters"))
    .collect()
}

fn random_unit(rng: &mut ChaCha8Rng, d: usize) -> Vec<Complex64> {
    CoeffTensor::random(rng, &[d]).data().to_vec()
}

/// Random balanced flow: a sum of up to three simple color cycles.
pub fn random_balanced(rng: &mut ChaCha8Rng, m: usize) -> SMatrix {
    let mut s = SMatrix::zeros(m);
    for _ in 0..rng.random_range(0..=3) {
        let len = rng.random_range(2..=m);
        let mut colors: Vec<usize> = (1..=m).collect();
        rand::seq::SliceRandom::shuffle(&mut colors[..], rng);
        s = s.add(&SMatrix::cycle(m, &colors[..len])).expect("same size");
    }
    s
}

pub fn characters(opts: &VerifyOptions) -> Result<Vec<CheckLine>> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(2));
    let cases = opts.cases.min(50);
    let mut thoma = CheckLine::new("thoma vs super tensor (N=4)");
    for params in thoma_parameter_sets() {
        let xi = CoeffTensor::bisymmetric(&params)?;
        for _ in 0..cases {
            let g = ColoredPerm::random(&mut rng, 1, 4);
            let v = super_rep_matrix_element(&xi, 4, &[g.clone(), ColoredPerm::identity(1)])?;
            thoma.deviation((v - thoma_char(&params, &g)?).norm(), 1e-10);
        }
    }
    let mut assign = CheckLine::new("assignment sum vs tensor (tri, N<=4)");
    for _ in 0..cases {
        let dims: Vec<usize> = (0..3).map(|_| rng.random_range(1..=2)).collect();
        let xi = CoeffTensor::random(&mut rng, &dims);
        let n = rng.random_range(1..=4);
        let g: Vec<ColoredPerm> = (0..3).map(|_| ColoredPerm::random(&mut rng, 1, n)).collect();
        let s = surface_from_tuple(&g, 0, 0, Some(n))?;
        assign.deviation((spherical_assignment_sum(&s, &xi)? - rep_matrix_element(&xi, n, &g)?).norm(), 1e-10);
    }
    let mut young = CheckLine::new("young spherical vs tensor (m<=3)");
    for _ in 0..cases {
        let m = rng.random_range(1..=3);
        let d = rng.random_range(1..=3);
        let xis: Vec<Vec<Complex64>> = (0..m).map(|_| random_unit(&mut rng, d)).collect();
        let g = ColoredPerm::random(&mut rng, m, 2);
        young.deviation((young_spherical(&xis, &g)? - young_tensor_value(&xis, 2, &g)?).norm(), 1e-10);
    }
    let mut psd = CheckLine::new("thoma gram matrices PSD (S_5)");
    for _ in 0..cases.min(20) {
        let params = &thoma_parameter_sets()[rng.random_range(0..5)];
        let perms: Vec<ColoredPerm> = (0..6).map(|_| ColoredPerm::random(&mut rng, 1, 5)).collect();
        let (_, min) = thoma_psd_check(params, &perms)?;
        psd.deviation((-min).max(0.0), 1e-9);
    }
    let mut nessonov = CheckLine::new("nessonov bound and multiplicativity");
    for _ in 0..opts.cases.max(100) {
        let m = rng.random_range(2..=4);
        let xis: Vec<Vec<Complex64>> = (0..m).map(|_| random_unit(&mut rng, 2)).collect();
        let a = GramSpec::from_vectors(&xis)?;
        let s1 = random_balanced(&mut rng, m);
        let s2 = random_balanced(&mut rng, m);
        let c1 = nessonov_char(&a, &s1)?;
        let c2 = nessonov_char(&a, &s2)?;
        let prod = nessonov_char(&a, &s1.add(&s2)?)?;
        let bound = (c1.norm() - 1.0).max(0.0);
        nessonov.deviation((prod - c1 * c2).norm().max(bound), 1e-12);
        let decomposed: Complex64 = cycle_decompose(&s1)?
            .iter()
            .map(|cyc| nessonov_char(&a, &SMatrix::cycle(m, cyc)))
            .product::<Result<Complex64>>()?;
        nessonov.deviation((decomposed - c1).norm(), 1e-12);
    }
    Ok(vec![thoma, assign, young, psd, nessonov])
}

/// Orbits of the group generated by `g_{i+1}⁻¹ g_i` on `{1..n}`.
pub fn quotient_orbits(t: &[ColoredPerm], n: usize) -> usize {
    let mut uf = UnionFind::new(n);
    for i in 0..t.len() {
        let q = t[(i + 1) % t.len()].inverse().mul(&t[i]);
        for k in 1..=n {
            uf.union(k - 1, q.apply1(k) - 1);
        }
    }
    uf.count()
}

/// Exhaustive `S_3³` followed by random elements.
fn topology_tuples(rng: &mut ChaCha8Rng, random: usize) -> Vec<(Vec<ColoredPerm>, usize)> {
    let s3: Vec<ColoredPerm> = all_perms(3);
    let mut out = Vec::new();
    for a in &s3 {
        for b in &s3 {
            for c in &s3 {
                out.push((vec![a.clone(), b.clone(), c.clone()], 3));
            }
        }
    }
    for _ in 0..random {
        let n = rng.random_range(1..=8);
        out.push(((0..3).map(|_| ColoredPerm::random(rng, 1, n)).collect(), n));
    }
    out
}

/// Every permutation of `{1..n}`.
pub fn all_perms(n: usize) -> Vec<ColoredPerm> {
    fn rec(cur: &mut Vec<usize>, left: &mut Vec<usize>, out: &mut Vec<ColoredPerm>) {
        if left.is_empty() {
            out.push(ColoredPerm::from_images(cur).expect("permutation"));
            return;
        }
        for i in 0..left.len() {
            let x = left.remove(i);
            cur.push(x);
            rec(cur, left, out);
            cur.pop();
            left.insert(i, x);
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut (1..=n).collect(), &mut out);
    out
}

pub fn topology(opts: &VerifyOptions) -> Result<Vec<CheckLine>> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(3));
    let mut euler = CheckLine::new("component euler even and <= 2");
    let mut verts = CheckLine::new("vertex counts = quotient cycles");
    let mut comps = CheckLine::new("components = quotient orbits");
    for (t, n) in topology_tuples(&mut rng, opts.cases.max(500)) {
        let s = surface_from_tuple(&t, n, n, Some(n))?;
        let cs = components(&s);
        euler.record(cs.iter().all(|c| c.euler % 2 == 0 && c.euler <= 2));
        let v = vertices(&s);
        let expected: Vec<usize> = (0..3)
            .map(|i| {
                let q = t[(i + 1) % 3].inverse().mul(&t[i]);
                q.cycle_type().values().sum::<usize>() + n - q.support().len()
            })
            .collect();
        verts.record(v == expected);
        comps.record(cs.len() == quotient_orbits(&t, n));
    }
    let mut corr = CheckLine::new("gem/surface correspondence (dim 2, 3)");
    for _ in 0..opts.cases.max(200) {
        let dim = rng.random_range(2..=3);
        let n = rng.random_range(2..=3);
        let t: Vec<ColoredPerm> = (0..=dim).map(|_| ColoredPerm::random(&mut rng, 1, n)).collect();
        let (a, b) = (rng.random_range(0..=n), rng.random_range(0..=n));
        let g = gem_from_tuple(&t, a, b, Some(n))?;
        let s = surface_from_tuple(&t, a, b, Some(n))?;
        let mut ok = surface_canon(&surface_of_gem(&g)) == surface_canon(&s);
        if dim == 2 {
            let fv = f_vector(&g);
            let mut x: Vec<i64> = components(&s).iter().map(|c| c.euler).collect();
            let mut y = fv.component_euler.clone();
            x.sort_unstable();
            y.sort_unstable();
            ok &= x == y && fv.f[0] == vertices(&s).iter().sum::<usize>();
        }
        corr.record(ok);
    }
    Ok(vec![euler, verts, comps, corr])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes() {
        let opts = VerifyOptions { seed: 3, cases: 10, max_support: 5, max_level: 2 };
        let r = run(Suite::All, &opts).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.to_string().contains("checks, 0 failed"));
    }

    #[test]
    fn orbit_helper() {
        let e = ColoredPerm::identity(1);
        assert_eq!(quotient_orbits(&[e.clone(), e.clone(), e.clone()], 4), 4);
        let t = "(1 2)".parse::<ColoredPerm>().unwrap();
        assert_eq!(quotient_orbits(&[t, e.clone(), e], 4), 3);
        assert_eq!(all_perms(4).len(), 24);
    }
}
