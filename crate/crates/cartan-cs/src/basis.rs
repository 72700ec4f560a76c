//! Analytic model: orthonormal polynomials on D₄, the Bergman kernel,
//! coherent-state overlaps, the finite group action, Monte Carlo inner
//! products and the scalar disk analogue.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{
    c_lambda, defect_det, in_cartan_domain, CartanPoint, ComplexMatrix2, GroupElement,
};
use num_bigint::BigUint;
use num_traits::One;

use crate::combinatorics::{binomial_f64, ratio};
use crate::polynomial::Polynomial;
use crate::wigner::{wigner_d, wigner_entry_poly, wigner_integer_terms, SpinLabel, WignerMatrix};
use crate::{json as cj, Error, Result, C64};

/// Label (j, m, q_a, q_b) of a basis polynomial at scale dimension λ.
/// Spins are stored doubled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BasisIndex {
    pub lambda: i64,
    pub two_j: u32,
    pub m: u32,
    pub two_qa: i32,
    pub two_qb: i32,
}

impl BasisIndex {
    pub fn new(lambda: i64, two_j: u32, m: u32, two_qa: i32, two_qb: i32) -> Result<Self> {
        let idx = Self { lambda, two_j, m, two_qa, two_qb };
        if !idx.labels_valid() {
            return Err(Error::InvalidIndex(format!("{idx:?}")));
        }
        Ok(idx)
    }

    /// |q| ≤ j with matching parity.
    pub fn labels_valid(&self) -> bool {
        let tj = self.two_j as i32;
        self.two_qa.abs() <= tj
            && self.two_qb.abs() <= tj
            && (tj - self.two_qa) % 2 == 0
            && (tj - self.two_qb) % 2 == 0
    }

    pub fn j(&self) -> f64 {
        self.two_j as f64 / 2.0
    }

    pub fn qa(&self) -> f64 {
        self.two_qa as f64 / 2.0
    }

    pub fn qb(&self) -> f64 {
        self.two_qb as f64 / 2.0
    }

    /// Homogeneity degree 2j + 2m.
    pub fn degree(&self) -> u32 {
        self.two_j + 2 * self.m
    }

    pub fn spin(&self) -> SpinLabel {
        SpinLabel::new(self.two_j)
    }

    pub fn with_lambda(self, lambda: i64) -> Self {
        Self { lambda, ..self }
    }
}

impl std::fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "(j={}/2, m={}, qa={}/2, qb={}/2; lambda={})",
            self.two_j, self.m, self.two_qa, self.two_qb, self.lambda
        )
    }
}

/// All indices of homogeneity degree exactly `deg`.
pub fn indices_of_degree(lambda: i64, deg: u32) -> Vec<BasisIndex> {
    let mut out = Vec::new();
    for two_j in (0..=deg).rev().filter(|tj| (deg - tj).is_multiple_of(2)) {
        let m = (deg - two_j) / 2;
        let tj = two_j as i32;
        for two_qa in (-tj..=tj).step_by(2) {
            for two_qb in (-tj..=tj).step_by(2) {
                out.push(BasisIndex { lambda, two_j, m, two_qa, two_qb });
            }
        }
    }
    out
}

/// All indices with 2j + 2m ≤ `max_degree`, ordered by degree.
pub fn indices_up_to(lambda: i64, max_degree: u32) -> Vec<BasisIndex> {
    (0..=max_degree).flat_map(|d| indices_of_degree(lambda, d)).collect()
}

fn require_poly_lambda(lambda: i64) -> Result<()> {
    if lambda < 2 {
        return Err(Error::InvalidScaleDimension { lambda, reason: "needs lambda >= 2" });
    }
    Ok(())
}

/// √[(2j+1)/(λ−1) · C(m+λ−2, λ−2) · C(m+2j+λ−1, λ−2)].
pub fn basis_prefactor(idx: &BasisIndex) -> Result<f64> {
    require_poly_lambda(idx.lambda)?;
    let (l, m, tj) = (idx.lambda, idx.m as i64, idx.two_j as i64);
    let v = (tj as f64 + 1.0) / (l as f64 - 1.0)
        * binomial_f64(m + l - 2, l - 2)
        * binomial_f64(m + tj + l - 1, l - 2);
    Ok(v.sqrt())
}

/// φ in the matrix entries (z₁₁, z₁₂, z₂₁, z₂₂).
pub fn basis_poly_entries(idx: &BasisIndex) -> Result<Polynomial> {
    if !idx.labels_valid() {
        return Err(Error::InvalidIndex(format!("{idx}")));
    }
    let pref = basis_prefactor(idx)?;
    let det = Polynomial::from_terms([
        ([1, 0, 0, 1], C64::new(1.0, 0.0)),
        ([0, 1, 1, 0], C64::new(-1.0, 0.0)),
    ]);
    let d = wigner_entry_poly(idx.two_j, idx.two_qa, idx.two_qb);
    Ok((&det.pow(idx.m) * &d).scale(C64::new(pref, 0.0)))
}

/// φ split as `scale · poly`, where `poly` (in z_μ) has Gaussian-integer
/// coefficients over powers of two, so it is exact in floating point for
/// moderate degrees.
pub fn basis_poly_parts(idx: &BasisIndex) -> Result<(f64, Polynomial)> {
    if !idx.labels_valid() {
        return Err(Error::InvalidIndex(format!("{idx}")));
    }
    let (wpref, terms) = wigner_integer_terms(idx.two_j, idx.two_qa, idx.two_qb);
    let det = Polynomial::from_terms([
        ([1, 0, 0, 1], C64::new(1.0, 0.0)),
        ([0, 1, 1, 0], C64::new(-1.0, 0.0)),
    ]);
    let d = Polynomial::from_terms(terms.into_iter().map(|(b, e)| (e, C64::new(ratio(&b, &BigUint::one()), 0.0))));
    Ok((basis_prefactor(idx)? * wpref, (&det.pow(idx.m) * &d).entries_to_z()))
}

/// φ^{j,m}_{q_a q_b} expanded in z_μ.
pub fn basis_poly(idx: &BasisIndex) -> Result<Polynomial> {
    Ok(basis_poly_entries(idx)?.entries_to_z())
}

/// Evaluates many basis functions at one point, sharing Wigner matrices.
pub struct BasisEvaluator {
    det: C64,
    wigner: Vec<WignerMatrix>,
}

impl BasisEvaluator {
    pub fn new(z: &ComplexMatrix2, max_two_j: u32) -> Self {
        Self {
            det: z.determinant(),
            wigner: (0..=max_two_j).map(|tj| wigner_d(SpinLabel::new(tj), z)).collect(),
        }
    }

    pub fn value(&self, idx: &BasisIndex) -> Result<C64> {
        let w = self
            .wigner
            .get(idx.two_j as usize)
            .ok_or_else(|| Error::InvalidIndex(format!("spin {} beyond evaluator range", idx.two_j)))?;
        Ok(w.get(idx.two_qa, idx.two_qb) * self.det.powu(idx.m) * basis_prefactor(idx)?)
    }
}

/// φ(Z) evaluated directly.
pub fn basis_eval(idx: &BasisIndex, z: &ComplexMatrix2) -> Result<C64> {
    BasisEvaluator::new(z, idx.two_j).value(idx)
}

/// det(σ⁰ − Z†Z')^{−λ}.
pub fn bergman_kernel(z: &CartanPoint, zp: &CartanPoint, lambda: i64) -> Result<C64> {
    let d = (ComplexMatrix2::identity() - z.matrix().adjoint() * zp.matrix()).determinant();
    if d.norm() < 1e-300 {
        return Err(Error::SingularMatrix("sigma0 - Z^dag Z'".into()));
    }
    Ok(d.powi(-(lambda as i32)))
}

/// Σ_{2j+2m ≤ N} conj(φ(Z)) φ(Z').
pub fn kernel_partial_sum(z: &CartanPoint, zp: &CartanPoint, lambda: i64, n: u32) -> Result<C64> {
    require_poly_lambda(lambda)?;
    let (dz, dzp) = (z.matrix().determinant().conj(), zp.matrix().determinant());
    let mut total = C64::new(0.0, 0.0);
    for two_j in 0..=n {
        let spin = SpinLabel::new(two_j);
        let (a, b) = (wigner_d(spin, z.matrix()), wigner_d(spin, zp.matrix()));
        let s: C64 = a.entries.iter().zip(&b.entries).map(|(x, y)| x.conj() * y).sum();
        let mut dm = C64::new(1.0, 0.0);
        for m in 0..=(n - two_j) / 2 {
            let idx = BasisIndex { lambda, two_j, m, two_qa: 0, two_qb: 0 };
            let p = basis_prefactor(&idx)?;
            total += s * dm * p * p;
            dm *= dz * dzp;
        }
    }
    Ok(total)
}

/// ⟨Z'|Z⟩ = det(σ⁰−Z'†Z')^{λ/2} det(σ⁰−Z†Z)^{λ/2} / det(σ⁰−Z'†Z)^λ.
pub fn cs_overlap(z: &CartanPoint, zp: &CartanPoint, lambda: i64) -> Result<C64> {
    let num = (zp.defect_det() * z.defect_det()).powf(lambda as f64 / 2.0);
    let den = (ComplexMatrix2::identity() - zp.matrix().adjoint() * z.matrix()).determinant();
    if den.norm() < 1e-300 {
        return Err(Error::SingularMatrix("sigma0 - Z'^dag Z".into()));
    }
    Ok(den.powi(-(lambda as i32)) * num)
}

/// Returns (det(D'† − B'†Z), Z') for the action of g'.
fn transformed_argument(g: &GroupElement, z: &ComplexMatrix2) -> Result<(C64, ComplexMatrix2)> {
    let den = g.d.adjoint() - g.b.adjoint() * z;
    let det = den.determinant();
    if det.norm() < 1e-14 {
        return Err(Error::SingularMatrix("D'^dag - B'^dag Z".into()));
    }
    let inv = den.try_inverse().ok_or_else(|| Error::SingularMatrix("D'^dag - B'^dag Z".into()))?;
    Ok((det, (g.a.adjoint() * z - g.c.adjoint()) * inv))
}

/// [U(g')φ](Z) for an arbitrary evaluator φ.
pub fn rep_action_eval_with(
    g: &GroupElement,
    phi: impl Fn(&ComplexMatrix2) -> C64,
    lambda: i64,
    z: &ComplexMatrix2,
) -> Result<C64> {
    let (det, zt) = transformed_argument(g, z)?;
    Ok(det.powi(-(lambda as i32)) * phi(&zt))
}

/// det(D'† − B'†Z)^{−λ} φ((A'†Z − C'†)(D'† − B'†Z)⁻¹).
pub fn rep_action_eval(g: &GroupElement, phi: &Polynomial, lambda: i64, z: &CartanPoint) -> Result<C64> {
    rep_action_eval_with(
        g,
        |w| {
            let e = crate::algebra::z_from_matrix(w);
            phi.eval(e)
        },
        lambda,
        z.matrix(),
    )
}

/// Expansion coefficients of U(g')·1 up to degree N.
pub fn rep_action_coeffs(g: &GroupElement, lambda: i64, n: u32) -> Result<BTreeMap<BasisIndex, C64>> {
    require_poly_lambda(lambda)?;
    let dinv = g.d.try_inverse().ok_or_else(|| Error::SingularMatrix("D' block".into()))?;
    let w = g.b * dinv;
    if !in_cartan_domain(&w) {
        return Err(Error::DomainViolation("B'D'^-1 outside D4".into()));
    }
    let pre = g.d.adjoint().determinant().powi(-(lambda as i32));
    let ev = BasisEvaluator::new(&w, n);
    indices_up_to(lambda, n)
        .into_iter()
        .map(|idx| Ok((idx, pre * ev.value(&idx)?.conj())))
        .collect()
}

/// Monte Carlo estimate of an integral over D₄.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McResult {
    pub estimate: C64,
    pub stderr: f64,
    pub n: u64,
    pub seed: u64,
}

impl McResult {
    /// |estimate − target| in units of stderr.
    pub fn z_score(&self, target: C64) -> f64 {
        let d = (self.estimate - target).norm();
        if d == 0.0 {
            0.0
        } else {
            d / self.stderr
        }
    }

    pub fn within(&self, target: C64, sigmas: f64) -> bool {
        (self.estimate - target).norm() <= sigmas * self.stderr
    }

    pub fn to_json(&self) -> Value {
        json!({
            "estimate": cj::complex(self.estimate),
            "stderr": self.stderr,
            "n": self.n,
            "seed": self.seed,
        })
    }
}

/// Number of independent random streams; fixed so results do not depend on
/// the thread count.
pub const MC_STREAMS: u64 = 64;

/// Reads `CCS_THREADS`; `None` means the rayon default.
pub fn thread_cap() -> Option<usize> {
    std::env::var("CCS_THREADS").ok()?.parse().ok().filter(|&n| n > 0)
}

fn run_parallel<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    let pool = thread_cap().and_then(|n| rayon::ThreadPoolBuilder::new().num_threads(n).build().ok());
    match pool {
        Some(pool) => pool.install(f),
        None => f(),
    }
}

fn sample_polydisk(rng: &mut ChaCha8Rng) -> ComplexMatrix2 {
    let mut entry = || {
        let r = rng.random::<f64>().sqrt();
        let t = std::f64::consts::TAU * rng.random::<f64>();
        C64::from_polar(r, t)
    };
    ComplexMatrix2::new(entry(), entry(), entry(), entry())
}

/// Outcome of a batch of integrals sharing one set of samples.
#[derive(Debug, Clone)]
pub struct McBatch {
    pub results: Vec<McResult>,
    /// Fraction of polydisk proposals that landed in D₄.
    pub acceptance: f64,
}

/// Estimates ∫ f_k dμ_λ for k = 0..k_out with one sample set.
///
/// Proposals are uniform on the polydisk |Z_rc| < 1 (volume π⁴), which
/// contains D₄; rejected proposals contribute zero.
pub fn mc_integrate<F>(lambda: i64, n_samples: u64, seed: u64, k_out: usize, f: F) -> Result<McBatch>
where
    F: Fn(&ComplexMatrix2, &mut [C64]) + Sync,
{
    if lambda < 4 {
        return Err(Error::InvalidScaleDimension { lambda, reason: "normalized measure needs lambda >= 4" });
    }
    if n_samples < 2 {
        return Err(Error::InvalidIndex("need at least two samples".into()));
    }
    let scale = std::f64::consts::PI.powi(4) * c_lambda(lambda);
    let per = n_samples / MC_STREAMS;
    let extra = n_samples % MC_STREAMS;
    let partials: Vec<(Vec<C64>, Vec<f64>, u64)> = run_parallel(|| {
        (0..MC_STREAMS)
            .into_par_iter()
            .map(|s| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(s);
                let count = per + u64::from(s < extra);
                let mut sum = vec![C64::new(0.0, 0.0); k_out];
                let mut sq = vec![0.0; k_out];
                let mut buf = vec![C64::new(0.0, 0.0); k_out];
                let mut accepted = 0;
                for _ in 0..count {
                    let z = sample_polydisk(&mut rng);
                    if !in_cartan_domain(&z) {
                        continue;
                    }
                    accepted += 1;
                    let w = scale * defect_det(&z).powi((lambda - 4) as i32);
                    f(&z, &mut buf);
                    for k in 0..k_out {
                        let v = buf[k] * w;
                        sum[k] += v;
                        sq[k] += v.norm_sqr();
                    }
                }
                (sum, sq, accepted)
            })
            .collect()
    });
    let mut sum = vec![C64::new(0.0, 0.0); k_out];
    let mut sq = vec![0.0; k_out];
    let mut accepted = 0;
    for (s, q, a) in partials {
        for k in 0..k_out {
            sum[k] += s[k];
            sq[k] += q[k];
        }
        accepted += a;
    }
    let n = n_samples as f64;
    let results = (0..k_out)
        .map(|k| {
            let mean = sum[k] / n;
            let var = (sq[k] / n - mean.norm_sqr()).max(0.0) * n / (n - 1.0);
            McResult { estimate: mean, stderr: (var / n).sqrt(), n: n_samples, seed }
        })
        .collect();
    Ok(McBatch { results, acceptance: accepted as f64 / n })
}

/// ⟨f, h⟩ = ∫ conj(f) h dμ_λ.
pub fn mc_inner_product<F, H>(f: F, h: H, lambda: i64, n_samples: u64, seed: u64) -> Result<McResult>
where
    F: Fn(&ComplexMatrix2) -> C64 + Sync,
    H: Fn(&ComplexMatrix2) -> C64 + Sync,
{
    let batch = mc_integrate(lambda, n_samples, seed, 1, |z, out| out[0] = f(z).conj() * h(z))?;
    Ok(batch.results[0])
}

/// Gram matrix of basis polynomials under dμ_λ from one sample set.
#[derive(Debug, Clone)]
pub struct McGram {
    pub indices: Vec<BasisIndex>,
    /// Row-major, entry (a, b) = ⟨φ_a, φ_b⟩.
    pub entries: Vec<McResult>,
    /// ∫ dμ_λ from the same samples.
    pub total_mass: McResult,
    pub acceptance: f64,
}

impl McGram {
    /// Largest |G − I| in units of stderr.
    pub fn max_z_score(&self) -> f64 {
        let n = self.indices.len();
        (0..n * n)
            .map(|k| {
                let target = if k / n == k % n { 1.0 } else { 0.0 };
                self.entries[k].z_score(C64::new(target, 0.0))
            })
            .fold(0.0, f64::max)
    }

    pub fn max_deviation(&self) -> f64 {
        let n = self.indices.len();
        (0..n * n)
            .map(|k| {
                let target = if k / n == k % n { 1.0 } else { 0.0 };
                (self.entries[k].estimate - target).norm()
            })
            .fold(0.0, f64::max)
    }
}

pub fn mc_gram(indices: &[BasisIndex], lambda: i64, n_samples: u64, seed: u64) -> Result<McGram> {
    let max_two_j = indices.iter().map(|i| i.two_j).max().unwrap_or(0);
    for idx in indices {
        basis_prefactor(idx)?;
    }
    let n = indices.len();
    let batch = mc_integrate(lambda, n_samples, seed, n * n + 1, |z, out| {
        let ev = BasisEvaluator::new(z, max_two_j);
        let vals: Vec<C64> = indices.iter().map(|i| ev.value(i).unwrap_or_default()).collect();
        for a in 0..n {
            for b in 0..n {
                out[a * n + b] = vals[a].conj() * vals[b];
            }
        }
        out[n * n] = C64::new(1.0, 0.0);
    })?;
    let mut entries = batch.results;
    let total_mass = entries.pop().expect("mass entry present");
    Ok(McGram { indices: indices.to_vec(), entries, total_mass, acceptance: batch.acceptance })
}

/// Label |κ, n⟩ of the disk basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskIndex {
    pub kappa: f64,
    pub n: u32,
}

fn require_kappa(kappa: f64) -> Result<()> {
    if !(kappa > 0.5) {
        return Err(Error::InvalidIndex(format!("kappa = {kappa} must exceed 1/2")));
    }
    Ok(())
}

fn require_unit_disk(z: C64) -> Result<()> {
    if z.norm() >= 1.0 {
        return Err(Error::DomainViolation(format!("|z| = {} not below 1", z.norm())));
    }
    Ok(())
}

/// √C(2κ+n−1, n) for real κ.
pub fn disk_basis(idx: DiskIndex) -> Result<f64> {
    require_kappa(idx.kappa)?;
    let c: f64 = (1..=idx.n).map(|k| (2.0 * idx.kappa + k as f64 - 1.0) / k as f64).product();
    Ok(c.sqrt())
}

pub fn disk_basis_eval(idx: DiskIndex, z: C64) -> Result<C64> {
    Ok(z.powu(idx.n) * disk_basis(idx)?)
}

/// (1−|z|²)^κ (1−|z'|²)^κ / (1 − z̄'z)^{2κ}.
pub fn disk_overlap(z: C64, zp: C64, kappa: f64) -> Result<C64> {
    require_kappa(kappa)?;
    require_unit_disk(z)?;
    require_unit_disk(zp)?;
    let num = ((1.0 - z.norm_sqr()) * (1.0 - zp.norm_sqr())).powf(kappa);
    Ok((C64::new(1.0, 0.0) - zp.conj() * z).powf(-2.0 * kappa) * num)
}

/// Σ_{n ≤ N} conj(φ_n(z)) φ_n(z').
pub fn disk_partial_kernel(z: C64, zp: C64, kappa: f64, n: u32) -> Result<C64> {
    require_kappa(kappa)?;
    require_unit_disk(z)?;
    require_unit_disk(zp)?;
    let w = z.conj() * zp;
    let mut term = C64::new(1.0, 0.0);
    let mut total = term;
    for k in 1..=n {
        term *= w * ((2.0 * kappa + k as f64 - 1.0) / k as f64);
        total += term;
    }
    Ok(total)
}

/// Gauss–Legendre nodes and weights on [0, 1].
pub fn gauss_legendre_unit(order: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; order];
    let mut w = vec![0.0; order];
    let n = order as f64;
    for i in 0..order.div_ceil(2) {
        let mut t = (std::f64::consts::PI * (i as f64 + 0.75) / (n + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, t);
            for k in 2..=order {
                let k = k as f64;
                let p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            let p = if order == 1 { t } else { p1 };
            let pm = if order == 1 { 1.0 } else { p0 };
            dp = n * (t * p - pm) / (t * t - 1.0);
            let dt = p / dp;
            t -= dt;
            if dt.abs() < 1e-16 {
                break;
            }
        }
        let wt = 2.0 / ((1.0 - t * t) * dp * dp);
        x[i] = 0.5 * (1.0 - t);
        x[order - 1 - i] = 0.5 * (1.0 + t);
        w[i] = 0.5 * wt;
        w[order - 1 - i] = 0.5 * wt;
    }
    (x, w)
}

/// (2κ−1)/π ∫_D |φ_n|² (1−|z|²)^{2κ−2} d²z by radial Gauss–Legendre in
/// u = r² and the angular trapezoid rule.
pub fn disk_resolution_quadrature(idx: DiskIndex, radial: usize, angular: usize) -> Result<f64> {
    require_kappa(idx.kappa)?;
    let (u, wu) = gauss_legendre_unit(radial);
    let h = std::f64::consts::TAU / angular as f64;
    let mut total = 0.0;
    for (ui, wi) in u.iter().zip(&wu) {
        let r = ui.sqrt();
        let radial_weight = (1.0 - ui).powf(2.0 * idx.kappa - 2.0);
        let mut ang = 0.0;
        for k in 0..angular {
            let z = C64::from_polar(r, h * k as f64);
            ang += disk_basis_eval(idx, z)?.norm_sqr();
        }
        // d²z = r dr dθ = ½ du dθ
        total += 0.5 * wi * radial_weight * ang * h;
    }
    Ok((2.0 * idx.kappa - 1.0) / std::f64::consts::PI * total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::Matrix2;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn idx(l: i64, tj: u32, m: u32, a: i32, b: i32) -> BasisIndex {
        BasisIndex::new(l, tj, m, a, b).unwrap()
    }

    #[test]
    fn parts_recombine() {
        for i in indices_up_to(5, 4) {
            let (sigma, q) = basis_poly_parts(&i).unwrap();
            let phi = basis_poly(&i).unwrap();
            assert!(q.scale(C64::new(sigma, 0.0)).max_abs_diff(&phi) < 1e-12, "{i}");
        }
    }

    #[test]
    fn constant_basis_function() {
        for l in 2..7 {
            let p = basis_poly(&idx(l, 0, 0, 0, 0)).unwrap();
            assert_eq!(p, Polynomial::one());
        }
    }

    #[test]
    fn spin_half_is_scaled_matrix_entries() {
        // λ = 4: 2·z11, 2·z12, 2·z21, 2·z22
        let expect = [
            (1, 1, [([1, 0, 0, 0], 2.0), ([0, 0, 0, 1], 2.0)]),
            (-1, -1, [([1, 0, 0, 0], 2.0), ([0, 0, 0, 1], -2.0)]),
        ];
        for (a, b, terms) in expect {
            let p = basis_poly(&idx(4, 1, 0, a, b)).unwrap();
            let q = Polynomial::from_terms(terms.iter().map(|(e, v)| (*e, c(*v, 0.0))));
            assert!(p.max_abs_diff(&q) < 1e-14);
        }
        let p = basis_poly(&idx(4, 1, 0, 1, -1)).unwrap();
        let q = Polynomial::from_terms([([0, 1, 0, 0], c(2.0, 0.0)), ([0, 0, 1, 0], c(0.0, -2.0))]);
        assert!(p.max_abs_diff(&q) < 1e-14);
    }

    #[test]
    fn det_basis_function() {
        let p = basis_poly(&idx(5, 0, 1, 0, 0)).unwrap();
        let s = 10f64.sqrt();
        let q = Polynomial::from_terms([
            ([2, 0, 0, 0], c(s, 0.0)),
            ([0, 2, 0, 0], c(-s, 0.0)),
            ([0, 0, 2, 0], c(-s, 0.0)),
            ([0, 0, 0, 2], c(-s, 0.0)),
        ]);
        assert!(p.max_abs_diff(&q) < 1e-13);
    }

    #[test]
    fn lambda_below_two_rejected() {
        assert!(matches!(
            basis_poly(&BasisIndex { lambda: 1, two_j: 0, m: 0, two_qa: 0, two_qb: 0 }),
            Err(Error::InvalidScaleDimension { .. })
        ));
        assert!(BasisIndex::new(4, 1, 0, 2, 1).is_err());
    }

    #[test]
    fn evaluator_matches_polynomial() {
        let z = Matrix2::new(c(0.2, 0.1), c(-0.1, 0.3), c(0.05, 0.0), c(0.1, -0.2));
        let zz = crate::algebra::z_from_matrix(&z);
        for i in indices_up_to(5, 4) {
            let a = basis_eval(&i, &z).unwrap();
            let b = basis_poly(&i).unwrap().eval(zz);
            assert!((a - b).norm() < 1e-13, "{i}");
        }
    }

    #[test]
    fn kernel_examples() {
        let z = CartanPoint::new(Matrix2::new(c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0))).unwrap();
        let k = bergman_kernel(&z, &z, 4).unwrap();
        assert!((k - c(0.75f64.powi(-4), 0.0)).norm() < 1e-12);
        let o = CartanPoint::origin();
        assert_eq!(bergman_kernel(&z, &o, 4).unwrap(), c(1.0, 0.0));
        assert!((kernel_partial_sum(&z, &o, 4, 7).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn kernel_series_on_scalar_matrix() {
        let z = CartanPoint::new(ComplexMatrix2::identity() * c(0.3, 0.0)).unwrap();
        let s = kernel_partial_sum(&z, &z, 4, 40).unwrap();
        let k = bergman_kernel(&z, &z, 4).unwrap();
        assert!((s - k).norm() < 1e-8);
    }

    #[test]
    fn overlap_normalized() {
        let z = CartanPoint::new(Matrix2::new(c(0.1, 0.2), c(0.3, 0.0), c(0.0, -0.1), c(0.2, 0.2))).unwrap();
        assert!((cs_overlap(&z, &z, 5).unwrap() - c(1.0, 0.0)).norm() < 1e-14);
        let o = cs_overlap(&z, &CartanPoint::origin(), 4).unwrap();
        assert!((o - c(z.defect_det().powi(2), 0.0)).norm() < 1e-14);
    }

    #[test]
    fn disk_examples() {
        let k = disk_partial_kernel(c(0.5, 0.0), c(0.5, 0.0), 1.0, 200).unwrap();
        assert!((k - c(16.0 / 9.0, 0.0)).norm() < 1e-10);
        let z = c(0.3, -0.4);
        assert!((disk_overlap(z, z, 1.5).unwrap() - c(1.0, 0.0)).norm() < 1e-14);
        assert!((disk_basis(DiskIndex { kappa: 1.0, n: 4 }).unwrap() - 5f64.sqrt()).abs() < 1e-15);
        assert!(disk_basis(DiskIndex { kappa: 0.5, n: 1 }).is_err());
        assert!(disk_overlap(c(1.0, 0.0), z, 1.0).is_err());
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre_unit(8);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(15)).sum();
        assert!((s - 1.0 / 16.0).abs() < 1e-15);
        let (x, w) = gauss_legendre_unit(1);
        assert!((x[0] - 0.5).abs() < 1e-15 && (w[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn mc_is_deterministic() {
        let a = mc_inner_product(|_| c(1.0, 0.0), |_| c(1.0, 0.0), 4, 2000, 3).unwrap();
        let b = mc_inner_product(|_| c(1.0, 0.0), |_| c(1.0, 0.0), 4, 2000, 3).unwrap();
        assert_eq!(a, b);
        assert!(mc_inner_product(|_| c(1.0, 0.0), |_| c(1.0, 0.0), 3, 2000, 3).is_err());
    }
}
