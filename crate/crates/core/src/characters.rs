//! Closed-form characters: Thoma characters of `S∞`, color-flow matrices for
//! the Young pair, and the Nessonov characters of the flow semigroup.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::perm::{ColoredPerm, CosetLevel};

const SUM_TOL: f64 = 1e-12;

/// Thoma parameters with finitely many nonzero `α`, `β`; `γ` is what remains.
#[derive(Debug, Clone, PartialEq)]
pub struct ThomaParams {
    alphas: Vec<f64>,
    betas: Vec<f64>,
}

impl ThomaParams {
    /// Sorts both lists in non-increasing order and checks `Σα + Σβ ≤ 1`.
    pub fn new(mut alphas: Vec<f64>, mut betas: Vec<f64>) -> Result<Self> {
        for x in alphas.iter().chain(&betas) {
            if !x.is_finite() || *x < 0.0 {
                return Err(Error::InvalidParams(format!("parameter {x} is not a non-negative number")));
            }
        }
        alphas.sort_by(|a, b| b.total_cmp(a));
        betas.sort_by(|a, b| b.total_cmp(a));
        alphas.retain(|&x| x > 0.0);
        betas.retain(|&x| x > 0.0);
        let total: f64 = alphas.iter().chain(&betas).sum();
        if total > 1.0 + SUM_TOL {
            return Err(Error::InvalidParams(format!("Σα + Σβ = {total} exceeds 1")));
        }
        Ok(ThomaParams { alphas, betas })
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    pub fn betas(&self) -> &[f64] {
        &self.betas
    }

    pub fn gamma(&self) -> f64 {
        (1.0 - self.alphas.iter().chain(&self.betas).sum::<f64>()).max(0.0)
    }

    /// `Σ α_j^k + (−1)^{k−1} Σ β_j^k`.
    pub fn power_sum(&self, k: usize) -> f64 {
        let k = i32::try_from(k).expect("cycle length fits in i32");
        let a: f64 = self.alphas.iter().map(|x| x.powi(k)).sum();
        let b: f64 = self.betas.iter().map(|x| x.powi(k)).sum();
        if k % 2 == 1 {
            a + b
        } else {
            a - b
        }
    }
}

impl FromStr for ThomaParams {
    type Err = Error;

    /// `alpha=0.5,0.25 beta=0.2`; either part may be omitted.
    fn from_str(s: &str) -> Result<Self> {
        let mut alphas = Vec::new();
        let mut betas = Vec::new();
        for tok in s.split_whitespace() {
            let (key, vals) =
                tok.split_once('=').ok_or_else(|| Error::Parse(format!("expected key=values, got {tok:?}")))?;
            let list = parse_reals(vals)?;
            match key {
                "alpha" => alphas = list,
                "beta" => betas = list,
                "gamma" => {}
                _ => return Err(Error::Parse(format!("unknown key {key:?}"))),
            }
        }
        ThomaParams::new(alphas, betas)
    }
}

impl fmt::Display for ThomaParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let j = |v: &[f64]| v.iter().map(f64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "alpha={} beta={} gamma={}", j(&self.alphas), j(&self.betas), self.gamma())
    }
}

/// Comma-separated reals; an empty string is an empty list.
pub fn parse_reals(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<f64>().map_err(|_| Error::Parse(format!("bad number {t:?}"))))
        .collect()
}

pub fn thoma_char(params: &ThomaParams, g: &ColoredPerm) -> Result<f64> {
    if g.color_count() != 1 {
        return Err(Error::ColorMismatch(g.color_count(), 1));
    }
    Ok(g.cycle_type()
        .into_iter()
        .map(|(k, r)| params.power_sum(k).powi(i32::try_from(r).expect("cycle count fits in i32")))
        .product())
}

/// Gram matrix `χ(g_i g_j⁻¹)` and its smallest eigenvalue.
pub fn thoma_psd_check(params: &ThomaParams, perms: &[ColoredPerm]) -> Result<(DMatrix<f64>, f64)> {
    let n = perms.len();
    let mut gram = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            gram[(i, j)] = thoma_char(params, &perms[i].mul(&perms[j].inverse()))?;
        }
    }
    let min = if n == 0 {
        0.0
    } else {
        SymmetricEigen::new(gram.clone()).eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
    };
    Ok((gram, min))
}

/// Off-diagonal color flows `s_{νμ}`, colors 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SMatrix {
    m: usize,
    s: Vec<Vec<u64>>,
}

impl SMatrix {
    pub fn zeros(m: usize) -> Self {
        SMatrix { m, s: vec![vec![0; m]; m] }
    }

    /// From rows; diagonal entries are ignored.
    pub fn from_rows(rows: Vec<Vec<u64>>) -> Result<Self> {
        let m = rows.len();
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::Parse("s-matrix must be square".into()));
        }
        let mut s = rows;
        for (i, row) in s.iter_mut().enumerate() {
            row[i] = 0;
        }
        Ok(SMatrix { m, s })
    }

    /// JSON rows; `"."` or `null` on the diagonal.
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = || Error::Parse("s-matrix must be an array of integer rows".into());
        let rows = v.as_array().ok_or_else(bad)?;
        let mut out = Vec::new();
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_array().ok_or_else(bad)?;
            let mut row = Vec::new();
            for (j, x) in r.iter().enumerate() {
                row.push(if i == j && (x.is_null() || x.as_str() == Some(".")) { 0 } else { x.as_u64().ok_or_else(bad)? });
            }
            out.push(row);
        }
        SMatrix::from_rows(out)
    }

    /// Parses the JSON form, also accepting a bare `.` on the diagonal.
    pub fn parse(text: &str) -> Result<Self> {
        let v: serde_json::Value = serde_json::from_str(&fix_dots(text))?;
        SMatrix::from_json(&v)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self.s)
    }

    pub fn colors(&self) -> usize {
        self.m
    }

    /// Entry `s_{νμ}`, 1-based.
    pub fn get(&self, nu: usize, mu: usize) -> u64 {
        self.s[nu - 1][mu - 1]
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.s
    }

    /// Matrix unit `E_{νμ}`, 1-based.
    pub fn unit(m: usize, nu: usize, mu: usize) -> Self {
        let mut z = SMatrix::zeros(m);
        if nu != mu {
            z.s[nu - 1][mu - 1] = 1;
        }
        z
    }

    pub fn add(&self, other: &SMatrix) -> Result<SMatrix> {
        if self.m != other.m {
            return Err(Error::SizeMismatch(self.m, other.m));
        }
        let s = self.s.iter().zip(&other.s).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect()).collect();
        Ok(SMatrix { m: self.m, s })
    }

    pub fn transpose(&self) -> SMatrix {
        let s = (0..self.m).map(|i| (0..self.m).map(|j| self.s[j][i]).collect()).collect();
        SMatrix { m: self.m, s }
    }

    /// Outflow equals inflow at every color.
    pub fn is_balanced(&self) -> bool {
        (0..self.m).all(|mu| {
            let out: u64 = self.s[mu].iter().sum();
            let inflow: u64 = (0..self.m).map(|nu| self.s[nu][mu]).sum();
            out == inflow
        })
    }

    pub fn is_zero(&self) -> bool {
        self.s.iter().flatten().all(|&x| x == 0)
    }

    /// The matrix of the cycle `l₁ → l₂ → … → l_p → l₁` (1-based colors).
    pub fn cycle(m: usize, colors: &[usize]) -> SMatrix {
        let mut z = SMatrix::zeros(m);
        for i in 0..colors.len() {
            let (a, b) = (colors[i], colors[(i + 1) % colors.len()]);
            if a != b {
                z.s[a - 1][b - 1] += 1;
            }
        }
        z
    }
}

fn fix_dots(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let chars: Vec<char> = text.chars().collect();
    for (i, &c) in chars.iter().enumerate() {
        let prev = if i > 0 { chars[i - 1] } else { ' ' };
        let next = chars.get(i + 1).copied().unwrap_or(' ');
        if c == '.' && !prev.is_ascii_digit() && !next.is_ascii_digit() {
            out.push_str("null");
        } else {
            out.push(c);
        }
    }
    out
}

/// `s_{νμ}(g)`: points of color `ν` sent to color `μ ≠ ν`.
pub fn s_matrix(g: &ColoredPerm) -> SMatrix {
    let m = g.color_count();
    let mut z = SMatrix::zeros(m);
    for &(x, y) in g.pairs() {
        if x.color != y.color {
            z.s[x.color - 1][y.color - 1] += 1;
        }
    }
    z
}

/// Complete invariant of `K \ G / K` for the Young pair at level zero.
pub fn coset_invariant_young(g: &ColoredPerm, levels: &CosetLevel) -> Result<SMatrix> {
    if !levels.is_zero() {
        return Err(Error::LevelMismatch("the s-matrix classifies level-zero cosets only".into()));
    }
    Ok(s_matrix(g))
}

/// Greedy decomposition of a balanced flow into simple color cycles.
pub fn cycle_decompose(s: &SMatrix) -> Result<Vec<Vec<usize>>> {
    if !s.is_balanced() {
        return Err(Error::InvalidParams("s-matrix is not balanced".into()));
    }
    let mut rest = s.clone();
    let mut cycles = Vec::new();
    while let Some(start) = (0..rest.m).find(|&i| rest.s[i].iter().any(|&x| x > 0)) {
        let mut path = vec![start];
        let mut pos: BTreeMap<usize, usize> = BTreeMap::from([(start, 0)]);
        loop {
            let cur = *path.last().expect("nonempty path");
            let next = (0..rest.m).find(|&j| rest.s[cur][j] > 0).expect("balanced flow has an exit");
            if let Some(&i) = pos.get(&next) {
                let cyc: Vec<usize> = path[i..].to_vec();
                for t in 0..cyc.len() {
                    rest.s[cyc[t]][cyc[(t + 1) % cyc.len()]] -= 1;
                }
                cycles.push(cyc.iter().map(|c| c + 1).collect());
                break;
            }
            pos.insert(next, path.len());
            path.push(next);
        }
    }
    Ok(cycles)
}

/// Hermitian matrix with unit diagonal, positive semi-definite.
#[derive(Debug, Clone, PartialEq)]
pub struct GramSpec {
    a: DMatrix<Complex64>,
}

impl GramSpec {
    pub fn new(a: DMatrix<Complex64>, tol: f64) -> Result<Self> {
        if a.nrows() != a.ncols() {
            return Err(Error::InvalidParams("Gram matrix must be square".into()));
        }
        let m = a.nrows();
        for i in 0..m {
            if (a[(i, i)] - 1.0).norm() > tol {
                return Err(Error::InvalidParams("Gram matrix needs a unit diagonal".into()));
            }
            for j in 0..m {
                if (a[(i, j)] - a[(j, i)].conj()).norm() > tol {
                    return Err(Error::InvalidParams("Gram matrix must be Hermitian".into()));
                }
            }
        }
        let min = hermitian_min_eigenvalue(&a);
        if min < -tol {
            return Err(Error::InvalidParams(format!("Gram matrix is not PSD (eigenvalue {min})")));
        }
        Ok(GramSpec { a })
    }

    pub fn ones(m: usize) -> Self {
        GramSpec { a: DMatrix::from_element(m, m, Complex64::new(1.0, 0.0)) }
    }

    /// `a_{νμ} = ⟨ξ_ν, ξ_μ⟩`, linear in the first argument.
    pub fn from_vectors(xis: &[Vec<Complex64>]) -> Result<Self> {
        check_unit_vectors(xis)?;
        let m = xis.len();
        let a = DMatrix::from_fn(m, m, |i, j| inner(&xis[i], &xis[j]));
        GramSpec::new(a, 1e-9)
    }

    pub fn entry(&self, nu: usize, mu: usize) -> Complex64 {
        self.a[(nu - 1, mu - 1)]
    }

    pub fn size(&self) -> usize {
        self.a.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.a
    }
}

fn hermitian_min_eigenvalue(a: &DMatrix<Complex64>) -> f64 {
    // realification: [[Re, −Im], [Im, Re]] has each eigenvalue twice
    let m = a.nrows();
    if m == 0 {
        return 0.0;
    }
    let r = DMatrix::from_fn(2 * m, 2 * m, |i, j| {
        let z = a[(i % m, j % m)];
        match (i < m, j < m) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    });
    let r = (&r + r.transpose()) * 0.5;
    SymmetricEigen::new(r).eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
}

pub(crate) fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a * b.conj()).sum()
}

fn check_unit_vectors(xis: &[Vec<Complex64>]) -> Result<()> {
    let d = xis.first().map_or(0, Vec::len);
    for x in xis {
        if x.len() != d {
            return Err(Error::SizeMismatch(d, x.len()));
        }
        let n = inner(x, x).re;
        if (n - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidParams(format!("vector norm² {n} is not 1")));
        }
    }
    Ok(())
}

/// `∏_{ν≠μ} a_{νμ}^{s_{νμ}}` with `0⁰ = 1`.
pub fn nessonov_char(a: &GramSpec, s: &SMatrix) -> Result<Complex64> {
    if a.size() != s.colors() {
        return Err(Error::SizeMismatch(a.size(), s.colors()));
    }
    let mut v = Complex64::new(1.0, 0.0);
    for nu in 1..=s.colors() {
        for mu in 1..=s.colors() {
            let e = s.get(nu, mu);
            if nu != mu && e > 0 {
                v *= a.entry(nu, mu).powu(u32::try_from(e).expect("flow fits in u32"));
            }
        }
    }
    Ok(v)
}

/// Spherical function of the Young pair for unit vectors `ξ_1..ξ_m`.
pub fn young_spherical(xis: &[Vec<Complex64>], g: &ColoredPerm) -> Result<Complex64> {
    if xis.len() != g.color_count() {
        return Err(Error::SizeMismatch(xis.len(), g.color_count()));
    }
    let a = GramSpec::from_vectors(xis)?;
    nessonov_char(&a, &s_matrix(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Point;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> ColoredPerm {
        s.parse().unwrap()
    }

    fn random_unit(rng: &mut ChaCha8Rng, d: usize) -> Vec<Complex64> {
        let v: Vec<Complex64> =
            (0..d).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
        let n = inner(&v, &v).re.sqrt();
        v.into_iter().map(|x| x / n).collect()
    }

    fn random_balanced(rng: &mut ChaCha8Rng, m: usize) -> SMatrix {
        let mut s = SMatrix::zeros(m);
        for _ in 0..rng.random_range(0..4) {
            let len = rng.random_range(2..=m);
            let mut colors: Vec<usize> = (1..=m).collect();
            rand::seq::SliceRandom::shuffle(&mut colors[..], rng);
            s = s.add(&SMatrix::cycle(m, &colors[..len])).unwrap();
        }
        s
    }

    #[test]
    fn params_validation_and_parsing() {
        assert!(ThomaParams::new(vec![0.7, 0.7], vec![]).is_err());
        assert!(ThomaParams::new(vec![-0.1], vec![]).is_err());
        let t: ThomaParams = "alpha=0.25,0.5 beta=0.2".parse().unwrap();
        assert_eq!(t.alphas(), &[0.5, 0.25]);
        assert!((t.gamma() - 0.05).abs() < 1e-15);
        assert!("alpha=x".parse::<ThomaParams>().is_err());
        assert!("delta=1".parse::<ThomaParams>().is_err());
    }

    #[test]
    fn thoma_examples() {
        let triv = ThomaParams::new(vec![1.0], vec![]).unwrap();
        let sign = ThomaParams::new(vec![], vec![1.0]).unwrap();
        let half = ThomaParams::new(vec![0.5, 0.5], vec![]).unwrap();
        for g in ["()", "(1 2)", "(1 2 3)", "(1 2)(3 4 5 6)"] {
            assert_eq!(thoma_char(&triv, &p(g)).unwrap(), 1.0);
        }
        assert_eq!(thoma_char(&sign, &p("(1 2)")).unwrap(), -1.0);
        assert_eq!(thoma_char(&sign, &p("(1 2 3)")).unwrap(), 1.0);
        assert_eq!(thoma_char(&sign, &p("(1 2)(3 4)")).unwrap(), 1.0);
        assert_eq!(thoma_char(&half, &p("(1 2)")).unwrap(), 0.5);
        assert_eq!(thoma_char(&half, &p("(1 2 3)")).unwrap(), 0.25);
        let mixed = ThomaParams::new(vec![0.5], vec![0.5]).unwrap();
        assert_eq!(thoma_char(&mixed, &p("(1 2)")).unwrap(), 0.0);
        assert_eq!(thoma_char(&mixed, &p("(1 2 3)")).unwrap(), 0.25);
    }

    #[test]
    fn psd_examples() {
        let t = ThomaParams::new(vec![0.5, 0.25, 0.25], vec![]).unwrap();
        let (g, min) = thoma_psd_check(&t, &[p("(1 2)")]).unwrap();
        assert_eq!(g[(0, 0)], 1.0);
        assert!((min - 1.0).abs() < 1e-12);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let perms: Vec<ColoredPerm> = (0..6).map(|_| ColoredPerm::random(&mut rng, 1, 5)).collect();
        let (_, min) = thoma_psd_check(&t, &perms).unwrap();
        assert!(min >= -1e-9);
    }

    #[test]
    fn s_matrix_examples() {
        assert!(s_matrix(&ColoredPerm::identity(3)).is_zero());
        let g = ColoredPerm::parse("(1@1 1@2)", 2).unwrap();
        let s = s_matrix(&g);
        assert_eq!((s.get(1, 2), s.get(2, 1)), (1, 1));
        assert!(coset_invariant_young(&g, &CosetLevel(vec![1, 0])).is_err());
        assert_eq!(s_matrix(&g.inverse()), s.transpose());
    }

    #[test]
    fn decompose_examples() {
        assert!(cycle_decompose(&SMatrix::zeros(3)).unwrap().is_empty());
        let s = SMatrix::cycle(3, &[1, 2, 3]);
        assert_eq!(cycle_decompose(&s).unwrap(), vec![vec![1, 2, 3]]);
        assert!(cycle_decompose(&SMatrix::unit(3, 1, 2)).is_err());
    }

    #[test]
    fn nessonov_examples() {
        let s = SMatrix::parse("[[.,1,0],[0,.,1],[1,0,.]]").unwrap();
        assert_eq!(nessonov_char(&GramSpec::ones(3), &s).unwrap(), Complex64::new(1.0, 0.0));
        let c = Complex64::new(0.3, 0.4);
        let a = GramSpec::new(
            DMatrix::from_row_slice(2, 2, &[Complex64::new(1.0, 0.0), c, c.conj(), Complex64::new(1.0, 0.0)]),
            1e-9,
        )
        .unwrap();
        let s = SMatrix::unit(2, 1, 2).add(&SMatrix::unit(2, 2, 1)).unwrap();
        assert!((nessonov_char(&a, &s).unwrap() - c.norm_sqr()).norm() < 1e-15);
        let bad = DMatrix::from_row_slice(2, 2, &[Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0), Complex64::new(2.0, 0.0), Complex64::new(1.0, 0.0)]);
        assert!(GramSpec::new(bad, 1e-9).is_err());
    }

    #[test]
    fn young_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let xis: Vec<Vec<Complex64>> = (0..3).map(|_| random_unit(&mut rng, 3)).collect();
        assert_eq!(young_spherical(&xis, &ColoredPerm::identity(3)).unwrap(), Complex64::new(1.0, 0.0));
        let e = |i: usize| {
            let mut v = vec![Complex64::new(0.0, 0.0); 3];
            v[i] = Complex64::new(1.0, 0.0);
            v
        };
        let orth = vec![e(0), e(1), e(2)];
        let g = ColoredPerm::transposition(3, Point::new(1, 1), Point::new(2, 4));
        assert_eq!(young_spherical(&orth, &g).unwrap(), Complex64::new(0.0, 0.0));
        assert!(young_spherical(&[vec![Complex64::new(2.0, 0.0)]], &ColoredPerm::identity(1)).is_err());
    }

    proptest! {
        #[test]
        fn thoma_is_bounded_and_central(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a1: f64 = rng.random_range(0.0..0.5);
            let a2: f64 = rng.random_range(0.0..(1.0 - a1) / 2.0);
            let b1: f64 = rng.random_range(0.0..(1.0 - a1 - a2));
            let t = ThomaParams::new(vec![a1, a2], vec![b1]).unwrap();
            let g = ColoredPerm::random(&mut rng, 1, 7);
            let h = ColoredPerm::random(&mut rng, 1, 7);
            let v = thoma_char(&t, &g).unwrap();
            prop_assert!(v.abs() <= 1.0 + 1e-12);
            prop_assert!((thoma_char(&t, &g.conjugate_by(&h)).unwrap() - v).abs() < 1e-14);
            prop_assert_eq!(thoma_char(&t, &ColoredPerm::identity(1)).unwrap(), 1.0);
        }

        #[test]
        fn s_matrix_balance(seed in any::<u64>(), m in 1usize..5) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = ColoredPerm::random(&mut rng, m, 4);
            let h = ColoredPerm::random(&mut rng, m, 4);
            prop_assert!(s_matrix(&g).is_balanced());
            prop_assert_eq!(s_matrix(&g.inverse()), s_matrix(&g).transpose());
            let _ = h;
        }

        #[test]
        fn decomposition_reconstructs(seed in any::<u64>(), m in 2usize..6) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let s = random_balanced(&mut rng, m);
            let cycles = cycle_decompose(&s).unwrap();
            let mut total = SMatrix::zeros(m);
            for c in &cycles {
                let mut sorted = c.clone();
                sorted.sort_unstable();
                sorted.dedup();
                prop_assert_eq!(sorted.len(), c.len());
                prop_assert!(c.len() >= 2);
                total = total.add(&SMatrix::cycle(m, c)).unwrap();
            }
            prop_assert_eq!(total, s);
        }

        #[test]
        fn nessonov_laws(seed in any::<u64>(), m in 2usize..5) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let xis: Vec<Vec<Complex64>> = (0..m).map(|_| random_unit(&mut rng, 2)).collect();
            let a = GramSpec::from_vectors(&xis).unwrap();
            let s1 = random_balanced(&mut rng, m);
            let s2 = random_balanced(&mut rng, m);
            let c1 = nessonov_char(&a, &s1).unwrap();
            let c2 = nessonov_char(&a, &s2).unwrap();
            prop_assert!(c1.norm() <= 1.0 + 1e-12);
            prop_assert!((nessonov_char(&a, &s1.add(&s2).unwrap()).unwrap() - c1 * c2).norm() < 1e-12);
            prop_assert!((nessonov_char(&a, &s1.transpose()).unwrap() - c1.conj()).norm() < 1e-14);
            let sym = nessonov_char(&a, &s1.add(&s1.transpose()).unwrap()).unwrap();
            prop_assert!((sym - c1.norm_sqr()).norm() < 1e-12);
        }

        #[test]
        fn zero_entries_kill_cycles(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut xis: Vec<Vec<Complex64>> = (0..3).map(|_| random_unit(&mut rng, 3)).collect();
            // make ξ_1 ⟂ ξ_2
            let c = inner(&xis[1], &xis[0]);
            let fixed: Vec<Complex64> = xis[1].iter().zip(&xis[0]).map(|(y, x)| y - c * x).collect();
            let n = inner(&fixed, &fixed).re.sqrt();
            xis[1] = fixed.into_iter().map(|x| x / n).collect();
            let a = GramSpec::from_vectors(&xis).unwrap();
            let s = random_balanced(&mut rng, 3).add(&SMatrix::cycle(3, &[1, 2, 3])).unwrap();
            prop_assert!(nessonov_char(&a, &s).unwrap().norm() < 1e-12);
        }
    }
}
