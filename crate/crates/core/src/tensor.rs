//! Dense finite-dimensional oracle: truncated tensor powers `ξ^{⊗N}`, the
//! permutation action on them, Koszul signs and subgroup averages.

use std::collections::HashMap;

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::characters::ThomaParams;
use crate::error::{Error, Result};
use crate::oracle::{choose_j, configured_bound, theta, GroupElement, PairSpec};
use crate::perm::{ColoredPerm, CosetLevel, Point};

const NORM_TOL: f64 = 1e-12;

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// Unit vector `ξ ∈ V_1 ⊗ … ⊗ V_n`, row-major with the first factor most significant.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffTensor {
    dims: Vec<usize>,
    data: Vec<Complex64>,
    parities: Option<Vec<Vec<bool>>>,
}

impl CoeffTensor {
    pub fn new(dims: Vec<usize>, data: Vec<Complex64>) -> Result<Self> {
        let len: usize = dims.iter().product();
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::InvalidParams("tensor factors need positive dimensions".into()));
        }
        if data.len() != len {
            return Err(Error::SizeMismatch(data.len(), len));
        }
        let norm: f64 = data.iter().map(Complex64::norm_sqr).sum();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidParams(format!("coefficients have norm² {norm}, expected 1")));
        }
        Ok(CoeffTensor { dims, data, parities: None })
    }

    /// Marks basis vectors of each factor as odd (`true`) or even.
    pub fn with_parities(mut self, parities: Vec<Vec<bool>>) -> Result<Self> {
        if parities.len() != self.dims.len() || parities.iter().zip(&self.dims).any(|(p, d)| p.len() != *d) {
            return Err(Error::InvalidParams("parity table does not match the factor dimensions".into()));
        }
        for (i, c) in self.data.iter().enumerate() {
            if c.norm() > 0.0 && self.index_digits(i).iter().zip(&parities).filter(|(d, p)| p[**d]).count() % 2 == 1 {
                return Err(Error::InvalidParams("odd coefficient in an even tensor".into()));
            }
        }
        self.parities = Some(parities);
        Ok(self)
    }

    /// Normalized tensor with independent uniform real and imaginary parts.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, dims: &[usize]) -> Self {
        let len: usize = dims.iter().product();
        let raw: Vec<Complex64> =
            (0..len).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
        let norm = raw.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
        CoeffTensor { dims: dims.to_vec(), data: raw.into_iter().map(|x| x / norm).collect(), parities: None }
    }

    /// `Σ √α_j e_j⊗e_j + Σ √β_m f_m⊗f_m` with the `f` odd. Needs `γ = 0`.
    pub fn bisymmetric(params: &ThomaParams) -> Result<Self> {
        if params.gamma() > 1e-12 {
            return Err(Error::InvalidParams("a finite tensor realizes only γ = 0".into()));
        }
        let a = params.alphas().len();
        let d = a + params.betas().len();
        let mut data = vec![zero(); d * d];
        for (j, x) in params.alphas().iter().chain(params.betas()).enumerate() {
            data[j * d + j] = Complex64::new(x.sqrt(), 0.0);
        }
        let norm: f64 = data.iter().map(Complex64::norm_sqr).sum();
        let data = data.into_iter().map(|x| x / norm.sqrt()).collect();
        let par: Vec<bool> = (0..d).map(|j| j >= a).collect();
        CoeffTensor::new(vec![d, d], data)?.with_parities(vec![par.clone(), par])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn parities(&self) -> Option<&[Vec<bool>]> {
        self.parities.as_deref()
    }

    /// Dimension of `V_1 ⊗ … ⊗ V_n`.
    pub fn total_dim(&self) -> usize {
        self.data.len()
    }

    fn index_digits(&self, mut i: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        for (slot, d) in out.iter_mut().zip(&self.dims).rev() {
            *slot = i % d;
            i /= d;
        }
        out
    }
}

fn check_bound(needed: u128) -> Result<()> {
    let bound = configured_bound();
    if needed > bound {
        Err(Error::BoundExceeded { needed, bound })
    } else {
        Ok(())
    }
}

fn pow_u128(base: usize, exp: usize) -> u128 {
    (0..exp).fold(1u128, |acc, _| acc.saturating_mul(base as u128))
}

/// `(-1)^{inversions of g among odd positions}`; `g` acts on positions `1..M`.
pub fn koszul_sign(g: &ColoredPerm, parities: &[bool]) -> i32 {
    let odd: Vec<usize> = (1..=parities.len()).filter(|&x| parities[x - 1]).collect();
    let mut inv = 0usize;
    for (i, &x) in odd.iter().enumerate() {
        for &y in &odd[i + 1..] {
            if g.apply1(x) > g.apply1(y) {
                inv += 1;
            }
        }
    }
    if inv.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Dense action of a permutation of tensor positions.
#[derive(Debug, Clone)]
struct PositionAction {
    dims: Vec<usize>,
    target: Vec<usize>,
    strides: Vec<usize>,
}

impl PositionAction {
    /// Content of position `x` moves to `target[x]`.
    fn new(dims: Vec<usize>, target: Vec<usize>) -> Self {
        debug_assert!(target.iter().enumerate().all(|(x, &y)| dims[x] == dims[y]));
        let mut strides = vec![1; dims.len()];
        for x in (0..dims.len().saturating_sub(1)).rev() {
            strides[x] = strides[x + 1] * dims[x + 1];
        }
        PositionAction { dims, target, strides }
    }

    fn len(&self) -> usize {
        self.dims.iter().product()
    }

    fn digits(&self, mut i: usize, out: &mut [usize]) {
        for x in (0..self.dims.len()).rev() {
            out[x] = i % self.dims[x];
            i /= self.dims[x];
        }
    }

    fn image(&self, digits: &[usize]) -> usize {
        digits.iter().enumerate().map(|(x, &d)| d * self.strides[self.target[x]]).sum()
    }

    /// Parity-aware sign of moving the basis tensor with these digits.
    fn sign(&self, digits: &[usize], odd: &dyn Fn(usize, usize) -> bool) -> f64 {
        let odd_pos: Vec<usize> = (0..digits.len()).filter(|&x| odd(x, digits[x])).collect();
        let mut inv = 0usize;
        for (i, &x) in odd_pos.iter().enumerate() {
            for &y in &odd_pos[i + 1..] {
                if self.target[x] > self.target[y] {
                    inv += 1;
                }
            }
        }
        if inv.is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }

    fn apply(&self, v: &[Complex64], odd: Option<&dyn Fn(usize, usize) -> bool>) -> Vec<Complex64> {
        let mut out = vec![zero(); v.len()];
        let mut digits = vec![0; self.dims.len()];
        for (i, &c) in v.iter().enumerate() {
            if c == zero() {
                continue;
            }
            self.digits(i, &mut digits);
            let s = odd.map_or(1.0, |f| self.sign(&digits, f));
            out[self.image(&digits)] = c * s;
        }
        out
    }
}

fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a * b.conj()).sum()
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt()
}

/// `ξ^{⊗N}` as a dense vector; slot `k` occupies positions `k·n .. k·n + n`.
pub fn xi_power(coeffs: &CoeffTensor, n_slots: usize) -> Result<Vec<Complex64>> {
    check_bound(pow_u128(coeffs.total_dim(), n_slots))?;
    let mut v = vec![Complex64::new(1.0, 0.0)];
    for _ in 0..n_slots {
        let mut next = Vec::with_capacity(v.len() * coeffs.total_dim());
        for a in &v {
            next.extend(coeffs.data.iter().map(|b| a * b));
        }
        v = next;
    }
    Ok(v)
}

fn tuple_action(coeffs: &CoeffTensor, n_slots: usize, g: &[ColoredPerm]) -> Result<PositionAction> {
    let n = coeffs.dims.len();
    if g.len() != n {
        return Err(Error::SizeMismatch(g.len(), n));
    }
    for p in g {
        if p.color_count() != 1 {
            return Err(Error::ColorMismatch(p.color_count(), 1));
        }
        if p.max_index() > n_slots {
            return Err(Error::SupportExceeds { index: p.max_index(), bound: n_slots });
        }
    }
    let dims: Vec<usize> = (0..n_slots * n).map(|x| coeffs.dims[x % n]).collect();
    let target = (0..n_slots * n).map(|x| (g[x % n].apply1(x / n + 1) - 1) * n + x % n).collect();
    Ok(PositionAction::new(dims, target))
}

fn parity_fn(coeffs: &CoeffTensor) -> Option<impl Fn(usize, usize) -> bool + '_> {
    let n = coeffs.dims.len();
    coeffs.parities.as_ref().map(move |par| move |x: usize, d: usize| par[x % n][d])
}

/// `ρ(g)v` for a tuple `g`, one permutation per factor, without signs.
pub fn rep_apply(coeffs: &CoeffTensor, n_slots: usize, g: &[ColoredPerm], v: &[Complex64]) -> Result<Vec<Complex64>> {
    let act = tuple_action(coeffs, n_slots, g)?;
    if v.len() != act.len() {
        return Err(Error::SizeMismatch(v.len(), act.len()));
    }
    Ok(act.apply(v, None))
}

/// `ρ(g)v` with Koszul signs from the parity table (plain action if there is none).
pub fn super_rep_apply(coeffs: &CoeffTensor, n_slots: usize, g: &[ColoredPerm], v: &[Complex64]) -> Result<Vec<Complex64>> {
    let act = tuple_action(coeffs, n_slots, g)?;
    if v.len() != act.len() {
        return Err(Error::SizeMismatch(v.len(), act.len()));
    }
    let odd = parity_fn(coeffs);
    Ok(match &odd {
        Some(f) => act.apply(v, Some(f)),
        None => act.apply(v, None),
    })
}

/// `⟨ρ(g) Ξ_N, Ξ_N⟩`.
pub fn rep_matrix_element(coeffs: &CoeffTensor, n_slots: usize, g: &[ColoredPerm]) -> Result<Complex64> {
    let xi = xi_power(coeffs, n_slots)?;
    Ok(inner(&rep_apply(coeffs, n_slots, g, &xi)?, &xi))
}

/// `⟨ρ(g) Ξ_N, Ξ_N⟩` in the super tensor product.
pub fn super_rep_matrix_element(coeffs: &CoeffTensor, n_slots: usize, g: &[ColoredPerm]) -> Result<Complex64> {
    let xi = xi_power(coeffs, n_slots)?;
    Ok(inner(&super_rep_apply(coeffs, n_slots, g, &xi)?, &xi))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProjectorMode {
    Exact,
    MonteCarlo { samples: u64, seed: u64 },
}

#[derive(Debug, Clone)]
pub struct ProjectorAverage {
    pub vector: Vec<Complex64>,
    pub samples: u64,
    pub exact: bool,
    /// Distance between the running averages at half and at all samples.
    pub last_change: f64,
}

/// Average of `ρ(h, …, h) v` over permutations `h` of `{β+1..N}`.
pub fn projector_average(
    coeffs: &CoeffTensor,
    n_slots: usize,
    beta: usize,
    v: &[Complex64],
    mode: ProjectorMode,
) -> Result<ProjectorAverage> {
    let free = n_slots.saturating_sub(beta);
    let order: u128 = (1..=free as u128).product();
    let diag = |img: &[usize]| -> ColoredPerm {
        let mut full: Vec<usize> = (1..=beta.min(n_slots)).collect();
        full.extend(img.iter().map(|&x| x + beta + 1));
        ColoredPerm::from_images(&full).expect("images form a permutation")
    };
    let apply = |h: &ColoredPerm| super_rep_apply(coeffs, n_slots, &vec![h.clone(); coeffs.dims.len()], v);
    let mut acc = vec![zero(); v.len()];
    match mode {
        ProjectorMode::Exact => {
            check_bound(order)?;
            let mut img: Vec<usize> = (0..free).collect();
            let mut count = 0u64;
            loop {
                for (a, b) in acc.iter_mut().zip(apply(&diag(&img))?) {
                    *a += b;
                }
                count += 1;
                if !next_permutation(&mut img) {
                    break;
                }
            }
            let scale = 1.0 / count as f64;
            Ok(ProjectorAverage { vector: acc.into_iter().map(|x| x * scale).collect(), samples: count, exact: true, last_change: 0.0 })
        }
        ProjectorMode::MonteCarlo { samples, seed } => {
            if samples == 0 {
                return Err(Error::InvalidParams("Monte Carlo needs at least one sample".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut half = Vec::new();
            for s in 0..samples {
                let mut img: Vec<usize> = (0..free).collect();
                img.shuffle(&mut rng);
                for (a, b) in acc.iter_mut().zip(apply(&diag(&img))?) {
                    *a += b;
                }
                if s + 1 == samples.div_ceil(2) {
                    let k = (s + 1) as f64;
                    half = acc.iter().map(|x| x / k).collect();
                }
            }
            let vector: Vec<Complex64> = acc.into_iter().map(|x| x / samples as f64).collect();
            let diff: Vec<Complex64> = vector.iter().zip(&half).map(|(a, b)| a - b).collect();
            Ok(ProjectorAverage { last_change: norm(&diff), vector, samples, exact: false })
        }
    }
}

fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// `⟨ρ(g) Ξ, Ξ⟩` for `Ξ = ⊗_{(c,k)} ξ_c` over `N` points of each color.
pub fn young_tensor_value(xis: &[Vec<Complex64>], n_slots: usize, g: &ColoredPerm) -> Result<Complex64> {
    let m = xis.len();
    if g.color_count() != m {
        return Err(Error::ColorMismatch(g.color_count(), m));
    }
    if g.max_index() > n_slots {
        return Err(Error::SupportExceeds { index: g.max_index(), bound: n_slots });
    }
    let d = xis.first().map_or(0, Vec::len);
    if d == 0 || xis.iter().any(|x| x.len() != d) {
        return Err(Error::InvalidParams("color vectors must share a positive dimension".into()));
    }
    check_bound(pow_u128(d, m * n_slots))?;
    let pos = |p: Point| (p.color - 1) * n_slots + p.index - 1;
    let mut v = vec![Complex64::new(1.0, 0.0)];
    for c in 0..m {
        for _ in 0..n_slots {
            let mut next = Vec::with_capacity(v.len() * d);
            for a in &v {
                next.extend(xis[c].iter().map(|b| a * b));
            }
            v = next;
        }
    }
    let mut target = vec![0; m * n_slots];
    for c in 1..=m {
        for k in 1..=n_slots {
            let x = Point::new(c, k);
            target[pos(x)] = pos(g.apply(x));
        }
    }
    let act = PositionAction::new(vec![d; m * n_slots], target);
    Ok(inner(&act.apply(&v, None), &v))
}

/// A bisymmetric multiplicativity experiment: `K[α] p K[β]` and `K[β] q K[γ]`
/// evaluated on `ξ^{⊗N}` for an entangled `ξ ∈ V ⊗ V'`.
#[derive(Debug, Clone)]
pub struct DriftCase {
    pub p: GroupElement,
    pub q: GroupElement,
    pub alpha: usize,
    pub beta: usize,
    pub gamma: usize,
    pub xi: CoeffTensor,
}

impl DriftCase {
    /// Supports at most 3, `β ≤ 1`, `ξ` random of shape `(2, 2)`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let spec = PairSpec::bisymmetric();
        let beta = rng.random_range(0..=1);
        let support = if beta == 1 { 3 } else { 2 };
        DriftCase {
            p: GroupElement::random(&spec, rng, support),
            q: GroupElement::random(&spec, rng, support),
            alpha: rng.random_range(0..=1),
            beta,
            gamma: rng.random_range(0..=1),
            xi: CoeffTensor::random(rng, &[2, 2]),
        }
    }

    fn j(&self) -> usize {
        choose_j(&self.p, &self.q, &CosetLevel::single(self.alpha), &CosetLevel::single(self.beta), &CosetLevel::single(self.gamma))
    }

    fn pq_theta(&self) -> Result<GroupElement> {
        let spec = PairSpec::bisymmetric();
        let t = theta(&spec, &CosetLevel::single(self.beta), self.j())?;
        self.p.mul(&t)?.mul(&self.q)
    }

    /// Slots that the product representative touches.
    pub fn head(&self) -> usize {
        let s = self.p.max_index().max(self.q.max_index());
        s.max(self.alpha).max(self.beta).max(self.gamma).max(self.beta + 2 * self.j())
    }

    fn check(&self) -> Result<()> {
        if self.xi.dims().len() != 2 || self.p.parts.len() != 2 || self.q.parts.len() != 2 {
            return Err(Error::InvalidParams("drift experiments use the bisymmetric pair".into()));
        }
        Ok(())
    }
}

/// `‖P[α]ρ(p)P[β]ρ(q)P[γ]Ξ − P[α]ρ(pθ_j q)P[γ]Ξ‖` by dense averaging over `S_{N−β}`.
pub fn drift_deviation_dense(case: &DriftCase, n_slots: usize) -> Result<f64> {
    case.check()?;
    if case.head() > n_slots {
        return Err(Error::SupportExceeds { index: case.head(), bound: n_slots });
    }
    let xi = &case.xi;
    let proj = |lv: usize, v: &[Complex64]| -> Result<Vec<Complex64>> {
        Ok(projector_average(xi, n_slots, lv, v, ProjectorMode::Exact)?.vector)
    };
    let start = proj(case.gamma, &xi_power(xi, n_slots)?)?;
    let left = rep_apply(xi, n_slots, &case.q.parts, &start)?;
    let left = proj(case.beta, &left)?;
    let left = proj(case.alpha, &rep_apply(xi, n_slots, &case.p.parts, &left)?)?;
    let right = proj(case.alpha, &rep_apply(xi, n_slots, &case.pq_theta()?.parts, &start)?)?;
    Ok(norm(&left.iter().zip(&right).map(|(a, b)| a - b).collect::<Vec<_>>()))
}

/// Vectors of `W^{⊗h} ⊗ Sym^T(W)` in the normalized occupation basis.
#[derive(Debug, Clone)]
struct TailVector {
    w: usize,
    head: usize,
    tail: usize,
    occ: Vec<Vec<u32>>,
    data: Vec<Complex64>,
}

fn occupations(w: usize, total: usize) -> Vec<Vec<u32>> {
    fn rec(w: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == w {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for x in (0..=left).rev() {
            cur.push(x);
            rec(w, left - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(w, total as u32, &mut Vec::new(), &mut out);
    out
}

fn occ_index(occ: &[Vec<u32>]) -> HashMap<Vec<u32>, usize> {
    occ.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect()
}

/// `ln(T! / ∏ m_a!)`.
fn ln_multinomial(m: &[u32]) -> f64 {
    let lf = |k: u32| (1..=k).map(|x| (x as f64).ln()).sum::<f64>();
    lf(m.iter().sum()) - m.iter().map(|&x| lf(x)).sum::<f64>()
}

impl TailVector {
    fn power(xi: &[Complex64], head: usize, tail: usize) -> Result<TailVector> {
        let w = xi.len();
        let occ = occupations(w, tail);
        check_bound(pow_u128(w, head).saturating_mul(occ.len() as u128))?;
        let head_vec = {
            let mut v = vec![Complex64::new(1.0, 0.0)];
            for _ in 0..head {
                v = v.iter().flat_map(|a| xi.iter().map(move |b| a * b)).collect();
            }
            v
        };
        let tail_vec: Vec<Complex64> = occ
            .iter()
            .map(|m| {
                let mono: Complex64 = m.iter().zip(xi).map(|(&e, x)| x.powu(e)).product();
                mono * (0.5 * ln_multinomial(m)).exp()
            })
            .collect();
        let data = head_vec.iter().flat_map(|a| tail_vec.iter().map(move |b| a * b)).collect();
        Ok(TailVector { w, head, tail, occ, data })
    }

    fn blocks(&self) -> usize {
        self.occ.len()
    }

    /// Moves the last head slot into the symmetric tail (orthogonal projection).
    fn push(&self) -> TailVector {
        let w = self.w;
        let occ = occupations(w, self.tail + 1);
        let idx = occ_index(&occ);
        let heads = self.data.len() / self.blocks() / w;
        let mut data = vec![zero(); heads * occ.len()];
        let t1 = (self.tail + 1) as f64;
        for rest in 0..heads {
            for a in 0..w {
                for (o, m) in self.occ.iter().enumerate() {
                    let c = self.data[(rest * w + a) * self.blocks() + o];
                    if c == zero() {
                        continue;
                    }
                    let mut m2 = m.clone();
                    m2[a] += 1;
                    let coef = (f64::from(m2[a]) / t1).sqrt();
                    data[rest * occ.len() + idx[&m2]] += c * coef;
                }
            }
        }
        TailVector { w, head: self.head - 1, tail: self.tail + 1, occ, data }
    }

    /// Splits one slot off the tail into the head (isometric).
    fn pop(&self) -> TailVector {
        let w = self.w;
        let occ = occupations(w, self.tail - 1);
        let idx = occ_index(&occ);
        let heads = self.data.len() / self.blocks();
        let mut data = vec![zero(); heads * w * occ.len()];
        let t = self.tail as f64;
        for h in 0..heads {
            for (o, m) in self.occ.iter().enumerate() {
                let c = self.data[h * self.blocks() + o];
                if c == zero() {
                    continue;
                }
                for a in 0..w {
                    if m[a] == 0 {
                        continue;
                    }
                    let mut m2 = m.clone();
                    m2[a] -= 1;
                    let coef = (f64::from(m[a]) / t).sqrt();
                    data[(h * w + a) * occ.len() + idx[&m2]] = c * coef;
                }
            }
        }
        TailVector { w, head: self.head + 1, tail: self.tail - 1, occ, data }
    }

    fn push_to(mut self, head: usize) -> TailVector {
        while self.head > head {
            self = self.push();
        }
        self
    }

    fn pop_to(mut self, head: usize) -> TailVector {
        while self.head < head {
            self = self.pop();
        }
        self
    }

    /// Applies a tuple acting on head slots; `dims` are the factor dimensions.
    fn act(&self, dims: &[usize], g: &[ColoredPerm]) -> Result<TailVector> {
        let n = dims.len();
        if g.iter().any(|p| p.max_index() > self.head) {
            return Err(Error::SupportExceeds { index: g.iter().map(ColoredPerm::max_index).max().unwrap_or(0), bound: self.head });
        }
        let pdims: Vec<usize> = (0..self.head * n).map(|x| dims[x % n]).collect();
        let target = (0..self.head * n).map(|x| (g[x % n].apply1(x / n + 1) - 1) * n + x % n).collect();
        let act = PositionAction::new(pdims, target);
        let b = self.blocks();
        let mut data = vec![zero(); self.data.len()];
        let mut digits = vec![0; self.head * n];
        for h in 0..act.len() {
            act.digits(h, &mut digits);
            let h2 = act.image(&digits);
            data[h2 * b..(h2 + 1) * b].copy_from_slice(&self.data[h * b..(h + 1) * b]);
        }
        Ok(TailVector { data, occ: self.occ.clone(), ..*self })
    }
}

impl TailVector {
    fn distance(&self, other: &TailVector) -> f64 {
        debug_assert_eq!((self.head, self.tail), (other.head, other.tail));
        norm(&self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect::<Vec<_>>())
    }
}

/// Same quantity as [`drift_deviation_dense`], computed in `W^{⊗h} ⊗ Sym^{N−h}(W)`.
pub fn drift_deviation(case: &DriftCase, n_slots: usize) -> Result<f64> {
    case.check()?;
    let head = case.head();
    if head > n_slots {
        return Err(Error::SupportExceeds { index: head, bound: n_slots });
    }
    let dims = case.xi.dims().to_vec();
    let start = TailVector::power(case.xi.data(), head, n_slots - head)?;
    // Ξ is already fixed by P[γ]
    let left = start.act(&dims, &case.q.parts)?;
    let left = left.push_to(case.beta).pop_to(head);
    let left = left.act(&dims, &case.p.parts)?.push_to(case.alpha);
    let right = start.act(&dims, &case.pq_theta()?.parts)?.push_to(case.alpha);
    Ok(left.distance(&right))
}
