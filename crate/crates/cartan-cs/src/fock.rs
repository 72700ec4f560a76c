//! Boson realizations: two-mode su(1,1), the four-mode ladder
//! representation and the eight-mode compound realization of u(2,2).
//!
//! Generators are Jordan–Schwinger bilinears 𝒳 = Σ_c Σ_{rs} (XΓ)_{rs}
//! (𝒵_{rc})†𝒵_{sc} with Γ = diag(−1,−1,1,1), where 𝒵 is a column (or 4×2
//! block) of creation and annihilation operators.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{conformal_generators, generator_basis, sigma, ComplexMatrix4, ETA};
use crate::basis::{basis_poly, basis_poly_entries, BasisIndex};
use crate::combinatorics::{binomial_f64, factorial, ratio, sqrt_factorial_ratio};
use crate::generators::{generator_matrix_elements, quadratic_action, GeneratorName, QuadraticName};
use crate::polynomial::Polynomial;
use crate::{json as cj, CartanPoint, Error, Result, C64};

/// Amplitudes below this are dropped.
pub const AMP_PRUNE: f64 = 1e-14;

pub const MAX_MODES: usize = 8;

/// Occupation numbers, padded with zeros past `n_modes`.
pub type Occupation = [u32; MAX_MODES];

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    n_modes: usize,
    amps: BTreeMap<Occupation, C64>,
}

impl FockVector {
    pub fn zero(n_modes: usize) -> Self {
        assert!(n_modes <= MAX_MODES, "at most {MAX_MODES} modes");
        Self { n_modes, amps: BTreeMap::new() }
    }

    pub fn vacuum(n_modes: usize) -> Self {
        Self::basis_state(n_modes, &[])
    }

    /// Normalized number state; missing trailing occupations are zero.
    pub fn basis_state(n_modes: usize, occ: &[u32]) -> Self {
        let mut v = Self::zero(n_modes);
        let mut o = [0; MAX_MODES];
        o[..occ.len()].copy_from_slice(occ);
        v.amps.insert(o, re(1.0));
        v
    }

    pub fn from_terms(n_modes: usize, terms: impl IntoIterator<Item = (Occupation, C64)>) -> Self {
        let mut v = Self::zero(n_modes);
        for (o, a) in terms {
            *v.amps.entry(o).or_default() += a;
        }
        v.prune();
        v
    }

    fn prune(&mut self) {
        self.amps.retain(|_, a| a.norm() >= AMP_PRUNE);
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Occupation, &C64)> {
        self.amps.iter()
    }

    pub fn amplitude(&self, occ: &Occupation) -> C64 {
        self.amps.get(occ).copied().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_zero(&self) -> bool {
        self.amps.is_empty()
    }

    /// ⟨self|other⟩, antilinear in `self`.
    pub fn inner(&self, other: &FockVector) -> C64 {
        self.amps
            .iter()
            .filter_map(|(o, a)| other.amps.get(o).map(|b| a.conj() * b))
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.amps.values().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn add(&self, other: &FockVector) -> FockVector {
        let mut out = self.clone();
        for (o, a) in &other.amps {
            *out.amps.entry(*o).or_default() += a;
        }
        out.prune();
        out
    }

    pub fn scale(&self, c: C64) -> FockVector {
        let mut out = Self {
            n_modes: self.n_modes,
            amps: self.amps.iter().map(|(o, a)| (*o, a * c)).collect(),
        };
        out.prune();
        out
    }

    /// Largest amplitude difference, without pruning.
    pub fn max_abs_diff(&self, other: &FockVector) -> f64 {
        let mut diff = self.amps.clone();
        for (o, a) in &other.amps {
            *diff.entry(*o).or_default() -= a;
        }
        diff.values().fold(0.0, |m, a| m.max(a.norm()))
    }

    /// Applies a single creation (`dagger`) or annihilation operator.
    pub fn ladder(&self, mode: usize, dagger: bool) -> FockVector {
        let mut out = Self::zero(self.n_modes);
        for (o, a) in &self.amps {
            let n = o[mode];
            let mut e = *o;
            if dagger {
                e[mode] += 1;
                *out.amps.entry(e).or_default() += a * ((n + 1) as f64).sqrt();
            } else if n > 0 {
                e[mode] -= 1;
                *out.amps.entry(e).or_default() += a * (n as f64).sqrt();
            }
        }
        out.prune();
        out
    }

    /// Relabels modes: the new occupation of mode i is the old one of `perm[i]`.
    pub fn permute_modes(&self, perm: &[usize]) -> FockVector {
        assert_eq!(perm.len(), self.n_modes);
        let amps = self
            .amps
            .iter()
            .map(|(o, a)| {
                let mut e = [0; MAX_MODES];
                for (i, &p) in perm.iter().enumerate() {
                    e[i] = o[p];
                }
                (e, *a)
            })
            .collect();
        FockVector { n_modes: self.n_modes, amps }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "modes": self.n_modes,
            "terms": self.amps.iter().map(|(o, a)| json!({
                "occ": &o[..self.n_modes],
                "amp": cj::complex(*a),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let n_modes = v["modes"]
            .as_u64()
            .map(|n| n as usize)
            .filter(|&n| n <= MAX_MODES)
            .ok_or_else(|| Error::InvalidIndex("FockVector needs modes <= 8".into()))?;
        let terms = v["terms"]
            .as_array()
            .ok_or_else(|| Error::InvalidIndex("FockVector terms must be an array".into()))?;
        let mut out = Self::zero(n_modes);
        for t in terms {
            let occ: Vec<u32> = serde_json::from_value(t["occ"].clone())?;
            if occ.len() != n_modes {
                return Err(Error::ModeMismatch { expected: n_modes, found: occ.len() });
            }
            let mut o = [0; MAX_MODES];
            o[..n_modes].copy_from_slice(&occ);
            *out.amps.entry(o).or_default() += cj::parse_complex(&t["amp"])?;
        }
        out.prune();
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// operators

/// One normal-ordered term: creators · annihilators · coeff.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadTerm {
    pub creators: Vec<usize>,
    pub annihilators: Vec<usize>,
    pub coeff: C64,
}

/// A normal-ordered boson bilinear plus a constant.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticOperator {
    pub n_modes: usize,
    pub terms: Vec<QuadTerm>,
    pub constant: C64,
}

impl QuadraticOperator {
    pub fn zero(n_modes: usize) -> Self {
        Self { n_modes, terms: Vec::new(), constant: C64::default() }
    }

    pub fn term(mut self, creators: &[usize], annihilators: &[usize], coeff: C64) -> Self {
        self.terms.push(QuadTerm { creators: creators.to_vec(), annihilators: annihilators.to_vec(), coeff });
        self
    }

    pub fn with_constant(mut self, c: C64) -> Self {
        self.constant += c;
        self
    }

    pub fn scale(&self, c: C64) -> Self {
        Self {
            n_modes: self.n_modes,
            terms: self.terms.iter().map(|t| QuadTerm { coeff: t.coeff * c, ..t.clone() }).collect(),
            constant: self.constant * c,
        }
    }

    pub fn add(&self, other: &QuadraticOperator) -> Self {
        let mut out = self.clone();
        out.terms.extend(other.terms.iter().cloned());
        out.constant += other.constant;
        out
    }

    pub fn apply(&self, v: &FockVector) -> Result<FockVector> {
        if v.n_modes != self.n_modes {
            return Err(Error::ModeMismatch { expected: self.n_modes, found: v.n_modes });
        }
        let mut out = v.scale(self.constant);
        for t in &self.terms {
            let mut w = v.clone();
            for &m in t.annihilators.iter().rev() {
                w = w.ladder(m, false);
            }
            for &m in t.creators.iter().rev() {
                w = w.ladder(m, true);
            }
            out = out.add(&w.scale(t.coeff));
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "modes": self.n_modes,
            "terms": self.terms.iter().map(|t| json!({
                "creators": t.creators,
                "annihilators": t.annihilators,
                "coeff": cj::complex(t.coeff),
            })).collect::<Vec<_>>(),
            "constant": cj::complex(self.constant),
        })
    }
}

/// A single ladder operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ladder {
    pub mode: usize,
    pub dagger: bool,
}

/// Sum of operator words, each applied right to left. Used for products
/// and commutators of bilinears.
#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator {
    pub n_modes: usize,
    pub words: Vec<(C64, Vec<Ladder>)>,
}

impl FockOperator {
    pub fn zero(n_modes: usize) -> Self {
        Self { n_modes, words: Vec::new() }
    }

    pub fn scale(&self, c: C64) -> Self {
        Self { n_modes: self.n_modes, words: self.words.iter().map(|(a, w)| (a * c, w.clone())).collect() }
    }

    pub fn add(&self, other: &FockOperator) -> Self {
        let mut out = self.clone();
        out.words.extend(other.words.iter().cloned());
        out
    }

    /// Operator product `self · other`.
    pub fn mul(&self, other: &FockOperator) -> Self {
        let mut words = Vec::with_capacity(self.words.len() * other.words.len());
        for (a, wa) in &self.words {
            for (b, wb) in &other.words {
                let mut w = wa.clone();
                w.extend(wb.iter().copied());
                words.push((a * b, w));
            }
        }
        Self { n_modes: self.n_modes, words }
    }

    pub fn commutator(&self, other: &FockOperator) -> Self {
        self.mul(other).add(&other.mul(self).scale(re(-1.0)))
    }

    pub fn apply(&self, v: &FockVector) -> Result<FockVector> {
        if v.n_modes != self.n_modes {
            return Err(Error::ModeMismatch { expected: self.n_modes, found: v.n_modes });
        }
        let mut out = FockVector::zero(self.n_modes);
        for (c, word) in &self.words {
            let mut w = v.clone();
            for l in word.iter().rev() {
                w = w.ladder(l.mode, l.dagger);
                if w.is_zero() {
                    break;
                }
            }
            out = out.add(&w.scale(*c));
        }
        Ok(out)
    }
}

impl From<&QuadraticOperator> for FockOperator {
    fn from(q: &QuadraticOperator) -> Self {
        let mut words = Vec::with_capacity(q.terms.len() + 1);
        if q.constant.norm() > 0.0 {
            words.push((q.constant, Vec::new()));
        }
        for t in &q.terms {
            let mut w: Vec<Ladder> = t.creators.iter().map(|&mode| Ladder { mode, dagger: true }).collect();
            w.extend(t.annihilators.iter().map(|&mode| Ladder { mode, dagger: false }));
            words.push((t.coeff, w));
        }
        Self { n_modes: q.n_modes, words }
    }
}

/// Rows of the operator matrix 𝒵: entry `[r][c]` is a ladder operator.
#[derive(Debug, Clone)]
pub struct ZLayout {
    pub n_modes: usize,
    pub entries: Vec<Vec<Ladder>>,
}

const fn cr(mode: usize) -> Ladder {
    Ladder { mode, dagger: true }
}

const fn an(mode: usize) -> Ladder {
    Ladder { mode, dagger: false }
}

/// 𝒵 = (a₁†, a₂†, b₁, b₂)ᵀ on modes 0..3.
pub fn layout_4mode() -> ZLayout {
    ZLayout { n_modes: 4, entries: vec![vec![cr(0)], vec![cr(1)], vec![an(2)], vec![an(3)]] }
}

/// 𝒵 = [[a₀†, a₂†], [a₁†, a₃†], [b₀, b₁], [b₂, b₃]], modes (a₀..a₃, b₀..b₃).
pub fn layout_8mode() -> ZLayout {
    ZLayout {
        n_modes: 8,
        entries: vec![
            vec![cr(0), cr(2)],
            vec![cr(1), cr(3)],
            vec![an(4), an(5)],
            vec![an(6), an(7)],
        ],
    }
}

const GAMMA: [f64; 4] = [-1.0, -1.0, 1.0, 1.0];

/// 𝒵†XΓ𝒵 summed over the selected columns of the layout.
pub fn jordan_schwinger(x: &ComplexMatrix4, layout: &ZLayout, columns: &[usize]) -> QuadraticOperator {
    let mut op = QuadraticOperator::zero(layout.n_modes);
    for &c in columns {
        for r in 0..4 {
            for s in 0..4 {
                let coeff = x[(r, s)] * GAMMA[s];
                if coeff.norm() < 1e-15 {
                    continue;
                }
                let left = layout.entries[r][c];
                let left = Ladder { mode: left.mode, dagger: !left.dagger };
                let right = layout.entries[s][c];
                op = match (left.dagger, right.dagger) {
                    (true, true) => op.term(&[left.mode, right.mode], &[], coeff),
                    (false, false) => op.term(&[], &[left.mode, right.mode], coeff),
                    (true, false) => op.term(&[left.mode], &[right.mode], coeff),
                    // a_r a_s† = a_s† a_r + δ_rs
                    (false, true) => {
                        let op = op.term(&[right.mode], &[left.mode], coeff);
                        if left.mode == right.mode { op.with_constant(coeff) } else { op }
                    }
                };
            }
        }
    }
    op
}

/// Entry (c, c') of the 2×2 operator matrix 𝒵†Γ𝒵 in the 8-mode layout.
pub fn constraint_op(c: usize, cp: usize) -> QuadraticOperator {
    let l = layout_8mode();
    let mut op = QuadraticOperator::zero(8);
    for r in 0..4 {
        let left = l.entries[r][c];
        let right = l.entries[r][cp];
        let g = re(GAMMA[r]);
        op = if left.dagger {
            // a_r a_r'† = a_r'† a_r + δ
            let op = op.term(&[right.mode], &[left.mode], g);
            if left.mode == right.mode { op.with_constant(g) } else { op }
        } else {
            op.term(&[left.mode], &[right.mode], g)
        };
    }
    op
}

/// The conformal generators in one realization.
#[derive(Debug, Clone)]
pub struct RealizationOps {
    pub identity: QuadraticOperator,
    pub d: QuadraticOperator,
    pub p: [QuadraticOperator; 4],
    pub k: [QuadraticOperator; 4],
    /// `m[μ][ν]` for all ordered pairs.
    pub m: [[QuadraticOperator; 4]; 4],
}

impl RealizationOps {
    pub fn build(layout: &ZLayout, columns: &[usize]) -> Self {
        let g = conformal_generators();
        let js = |x: &ComplexMatrix4| jordan_schwinger(x, layout, columns);
        Self {
            identity: js(&g.identity),
            d: js(&g.d),
            p: std::array::from_fn(|mu| js(&g.p[mu])),
            k: std::array::from_fn(|mu| js(&g.k[mu])),
            m: std::array::from_fn(|mu| std::array::from_fn(|nu| js(&g.m[mu][nu]))),
        }
    }

    /// 𝒲^α = η^{αα}(i/2) ε_{αμνβ} 𝓜^{μν}𝒫^β, ε_{0123} = +1.
    pub fn pauli_lubanski(&self) -> [FockOperator; 4] {
        std::array::from_fn(|alpha| {
            let mut w = FockOperator::zero(self.p[0].n_modes);
            for mu in 0..4 {
                for nu in 0..4 {
                    for beta in 0..4 {
                        let e = levi_civita([alpha, mu, nu, beta]);
                        if e == 0 {
                            continue;
                        }
                        let t = FockOperator::from(&self.m[mu][nu]).mul(&FockOperator::from(&self.p[beta]));
                        w = w.add(&t.scale(C64::new(0.0, 0.5 * e as f64 * ETA[alpha])));
                    }
                }
            }
            w
        })
    }

    /// 𝒫^μ𝒫_μ.
    pub fn p_squared(&self) -> FockOperator {
        let mut out = FockOperator::zero(self.p[0].n_modes);
        for mu in 0..4 {
            let p = FockOperator::from(&self.p[mu]);
            out = out.add(&p.mul(&p).scale(re(ETA[mu])));
        }
        out
    }

    /// The sixteen generators with the names of [`generator_basis`].
    pub fn named(layout: &ZLayout, columns: &[usize]) -> Vec<(String, QuadraticOperator)> {
        generator_basis()
            .into_iter()
            .map(|(name, x)| (name, jordan_schwinger(&x, layout, columns)))
            .collect()
    }
}

fn levi_civita(idx: [usize; 4]) -> i32 {
    let mut s = 1;
    for i in 0..4 {
        for k in i + 1..4 {
            if idx[i] == idx[k] {
                return 0;
            }
            if idx[i] > idx[k] {
                s = -s;
            }
        }
    }
    s
}

// ---------------------------------------------------------------------------
// su(1,1)

/// (𝒬₃, 𝒬₊, 𝒬₋, 𝒬₀) on modes (a, b).
pub fn su11_generators() -> [QuadraticOperator; 4] {
    let q = || QuadraticOperator::zero(2);
    [
        q().term(&[0], &[0], re(0.5)).term(&[1], &[1], re(0.5)).with_constant(re(0.5)),
        q().term(&[0, 1], &[], re(1.0)),
        q().term(&[], &[0, 1], re(1.0)),
        // ½(b†b − aa†)
        q().term(&[1], &[1], re(0.5)).term(&[0], &[0], re(-0.5)).with_constant(re(-0.5)),
    ]
}

fn check_two_kappa(two_kappa: u32) -> Result<()> {
    if two_kappa == 0 {
        return Err(Error::InvalidIndex("2κ − 1 must be non-negative".into()));
    }
    Ok(())
}

/// |κ,n⟩ = |n⟩_a ⊗ |n + 2κ − 1⟩_b.
pub fn su11_basis(two_kappa: u32, n: u32) -> Result<FockVector> {
    check_two_kappa(two_kappa)?;
    Ok(FockVector::basis_state(2, &[n, n + two_kappa - 1]))
}

/// (1−|z|²)^κ Σ_{n ≤ cutoff} √C(n+2κ−1, n) zⁿ |κ,n⟩.
pub fn su11_cs(two_kappa: u32, z: C64, cutoff: u32) -> Result<FockVector> {
    check_two_kappa(two_kappa)?;
    if z.norm() >= 1.0 {
        return Err(Error::DomainViolation(format!("|z| = {} is not inside the unit disk", z.norm())));
    }
    let kappa = two_kappa as f64 / 2.0;
    let pref = (1.0 - z.norm_sqr()).powf(kappa);
    let terms = (0..=cutoff).map(|n| {
        let c = binomial_f64(n as i64 + two_kappa as i64 - 1, n as i64).sqrt();
        let mut o = [0; MAX_MODES];
        o[0] = n;
        o[1] = n + two_kappa - 1;
        (o, z.powu(n) * (pref * c))
    });
    Ok(FockVector::from_terms(2, terms))
}

// ---------------------------------------------------------------------------
// four-mode ladder representation

/// Which of the two massless orbits: positive helicity builds on b₂†,
/// negative on a₂† (a and b modes swapped).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Helicity {
    #[default]
    Positive,
    Negative,
}

const HELICITY_SWAP: [usize; 4] = [2, 3, 0, 1];

fn orient(v: FockVector, h: Helicity) -> FockVector {
    match h {
        Helicity::Positive => v,
        Helicity::Negative => v.permute_modes(&HELICITY_SWAP),
    }
}

/// 𝒳_{μν} for the 4-mode layout 𝒵 = (a₁†, a₂†, b₁, b₂)ᵀ.
pub fn conformal_ops_4mode() -> Vec<(String, QuadraticOperator)> {
    RealizationOps::named(&layout_4mode(), &[0])
}

/// |κ, n⃗⟩ with occupations (n₁, n₂, n₃, 2κ−1+n₁+n₂−n₃), which keeps the
/// linear Casimir at 2κ − 3.
pub fn ladder_basis(two_kappa: u32, n: [u32; 3], helicity: Helicity) -> Result<FockVector> {
    check_two_kappa(two_kappa)?;
    let nb2 = two_kappa as i64 - 1 + n[0] as i64 + n[1] as i64 - n[2] as i64;
    if nb2 < 0 {
        return Err(Error::InvalidIndex(format!("n = {n:?} leaves the 2κ = {two_kappa} sector")));
    }
    Ok(orient(FockVector::basis_state(4, &[n[0], n[1], n[2], nb2 as u32]), helicity))
}

/// Monomial state (n₁, n₂, n₃, 2κ−1+n₁+n₂+n₃) reached by the pair creators.
pub fn ladder_monomial(two_kappa: u32, n: [u32; 3], helicity: Helicity) -> Result<FockVector> {
    check_two_kappa(two_kappa)?;
    let nb2 = two_kappa - 1 + n[0] + n[1] + n[2];
    Ok(orient(FockVector::basis_state(4, &[n[0], n[1], n[2], nb2]), helicity))
}

/// The pair creators Q₊₁ = a₁†b₂†, Q₊₂ = a₂†b₂†, Q₊₃ = b₁†b₂†.
pub fn ladder_pair_creators() -> [QuadraticOperator; 3] {
    let q = || QuadraticOperator::zero(4);
    [
        q().term(&[0, 3], &[], re(1.0)),
        q().term(&[1, 3], &[], re(1.0)),
        q().term(&[2, 3], &[], re(1.0)),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderCsConstruction {
    /// Closed-form coefficients on monomial states.
    Series,
    /// Truncated exponential of i z⃗·Q⃗₊ on the ground state.
    Exponential,
}

/// 1 + |z₁|² − |z₂|² − |z₃|², after checking Σ|z_k|² < 1.
fn ladder_prefactor_base(z: [C64; 3]) -> Result<f64> {
    let s: f64 = z.iter().map(|v| v.norm_sqr()).sum();
    let base = 1.0 + z[0].norm_sqr() - z[1].norm_sqr() - z[2].norm_sqr();
    if base <= 0.0 || s >= 1.0 {
        return Err(Error::DomainViolation(format!("z = {z:?} outside the ladder coherent-state domain")));
    }
    Ok(base)
}

/// (1+|z₁|²−|z₂|²−|z₃|²)^κ Σ_{n ≤ cutoff} iⁿ √(C(2κ−1+n, n)·n!/(n₁!n₂!n₃!)) z⃗^n⃗ |n⃗⟩.
pub fn ladder_cs(
    two_kappa: u32,
    z: [C64; 3],
    cutoff: u32,
    construction: LadderCsConstruction,
    helicity: Helicity,
) -> Result<FockVector> {
    check_two_kappa(two_kappa)?;
    let pref = ladder_prefactor_base(z)?.powf(two_kappa as f64 / 2.0);
    let v = match construction {
        LadderCsConstruction::Series => {
            let mut terms = Vec::new();
            for total in 0..=cutoff {
                for n1 in 0..=total {
                    for n2 in 0..=total - n1 {
                        let n3 = total - n1 - n2;
                        let c = (binomial_f64((two_kappa - 1 + total) as i64, total as i64)
                            * ratio(&factorial(total as u64), &(factorial(n1 as u64) * factorial(n2 as u64) * factorial(n3 as u64))))
                        .sqrt();
                        let amp = C64::new(0.0, 1.0).powu(total) * z[0].powu(n1) * z[1].powu(n2) * z[2].powu(n3) * c;
                        let mut o = [0; MAX_MODES];
                        o[..4].copy_from_slice(&[n1, n2, n3, two_kappa - 1 + total]);
                        terms.push((o, amp));
                    }
                }
            }
            FockVector::from_terms(4, terms)
        }
        LadderCsConstruction::Exponential => {
            let q = ladder_pair_creators();
            let x = (0..3).fold(QuadraticOperator::zero(4), |acc, k| acc.add(&q[k].scale(C64::new(0.0, 1.0) * z[k])));
            let mut term = ladder_monomial(two_kappa, [0; 3], Helicity::Positive)?;
            let mut total = term.clone();
            for n in 1..=cutoff {
                term = x.apply(&term)?.scale(re(1.0 / n as f64));
                total = total.add(&term);
            }
            total
        }
    };
    Ok(orient(v.scale(re(pref)), helicity))
}

// ---------------------------------------------------------------------------
// eight-mode compound realization

/// Generators of the compound and of each constituent.
#[derive(Debug, Clone)]
pub struct CompoundOps {
    pub total: RealizationOps,
    pub constituents: [RealizationOps; 2],
}

/// 𝒳 for the 8-mode layout; constituent 1 is the first column of 𝒵,
/// (a₀†, a₁†, b₀, b₂), constituent 2 the second, (a₂†, a₃†, b₁, b₃).
pub fn compound_ops_8mode() -> CompoundOps {
    let l = layout_8mode();
    CompoundOps {
        total: RealizationOps::build(&l, &[0, 1]),
        constituents: [RealizationOps::build(&l, &[0]), RealizationOps::build(&l, &[1])],
    }
}

pub fn conformal_ops_8mode() -> Vec<(String, QuadraticOperator)> {
    RealizationOps::named(&layout_8mode(), &[0, 1])
}

/// Entry monomial x₁₁^e₀ x₁₂^e₁ x₂₁^e₂ x₂₂^e₃ ↦ modes, for a† and b†.
const A_MAP: [usize; 4] = [0, 2, 1, 3];
const B_MAP: [usize; 4] = [4, 6, 5, 7];

/// Applies an entry polynomial of creation operators to the vacuum.
fn creation_poly_on_vacuum(p: &Polynomial, map: [usize; 4]) -> BTreeMap<Occupation, C64> {
    let mut out: BTreeMap<Occupation, C64> = BTreeMap::new();
    for (e, c) in p.terms() {
        let mut o = [0; MAX_MODES];
        let mut f = 1.0;
        for k in 0..4 {
            o[map[k]] = e[k];
            f *= (1..=e[k]).map(f64::from).product::<f64>().sqrt();
        }
        *out.entry(o).or_default() += c * f;
    }
    out
}

fn require_compound_lambda(lambda: i64) -> Result<()> {
    if lambda < 2 {
        return Err(Error::InvalidScaleDimension { lambda, reason: "compound states need lambda >= 2" });
    }
    Ok(())
}

/// det(b†)^{λ−2}/((λ−2)!√(λ−1))|0⟩.
pub fn lowest_weight(lambda: i64) -> Result<FockVector> {
    require_compound_lambda(lambda)?;
    let n = (lambda - 2) as u32;
    let amp = 1.0 / ((lambda - 1) as f64).sqrt();
    Ok(FockVector::from_terms(
        8,
        (0..=n).map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            ([0, 0, 0, 0, n - k, k, k, n - k], re(sign * amp))
        }),
    ))
}

/// (1/√(2j+1)) Σ_q φ^{j,m}_{q_a,q}(a†) φ^{j,λ+m−2}_{q,q_b}(b†)|0⟩, normalized.
pub fn compound_basis(idx: &BasisIndex) -> Result<FockVector> {
    require_compound_lambda(idx.lambda)?;
    if !idx.labels_valid() {
        return Err(Error::InvalidIndex(format!("{idx}")));
    }
    let l = idx.lambda as u64;
    let (tj, m) = (idx.two_j as u64, idx.m as u64);
    let n1 = sqrt_factorial_ratio(&[l - 2, l - 1], &[l + tj + m - 1, l + m - 2]);
    let n2 = sqrt_factorial_ratio(&[l - 2, l - 1], &[2 * l + tj + m - 3, 2 * l + m - 4]);
    let norm = n1 * n2 / ((tj + 1) as f64).sqrt();
    let mut out: BTreeMap<Occupation, C64> = BTreeMap::new();
    let tjs = idx.two_j as i32;
    for two_q in (-tjs..=tjs).step_by(2) {
        let a_idx = BasisIndex { two_qb: two_q, ..*idx };
        let b_idx = BasisIndex { m: idx.m + idx.lambda as u32 - 2, two_qa: two_q, ..*idx };
        let a = creation_poly_on_vacuum(&basis_poly_entries(&a_idx)?, A_MAP);
        let b = creation_poly_on_vacuum(&basis_poly_entries(&b_idx)?, B_MAP);
        for (oa, ca) in &a {
            for (ob, cb) in &b {
                let o = std::array::from_fn(|k| oa[k] + ob[k]);
                *out.entry(o).or_default() += ca * cb;
            }
        }
    }
    Ok(FockVector::from_terms(8, out.into_iter().map(|(o, c)| (o, c * norm))))
}

/// A generator of the analytic model in the 8-mode realization.
pub fn fock_generator(ops: &RealizationOps, name: GeneratorName) -> QuadraticOperator {
    use GeneratorName::*;
    let i = C64::new(0.0, 1.0);
    // 𝒮_{aj} = ½(𝓜^{0j} ∓ i𝓜^{kl}) for `left`, ± for b, (j,k,l) cyclic
    let s = |j: usize, left: bool| {
        let (k, l) = [(2, 3), (3, 1), (1, 2)][j - 1];
        let sign = if left { -1.0 } else { 1.0 };
        ops.m[0][j].add(&ops.m[k][l].scale(i * sign)).scale(re(0.5))
    };
    match name {
        D => ops.d.clone(),
        P(mu) => ops.p[mu].clone(),
        K(mu) => ops.k[mu].clone(),
        M(mu, nu) => ops.m[mu][nu].clone(),
        Sa3 => s(3, true),
        Sb3 => s(3, false),
        SaPlus => s(1, true).add(&s(2, true).scale(-i)),
        SaMinus => s(1, true).add(&s(2, true).scale(i)),
        SbPlus => s(1, false).add(&s(2, false).scale(i)),
        SbMinus => s(1, false).add(&s(2, false).scale(-i)),
    }
}

/// Compound states and operators shared across many checks.
pub struct CompoundCache {
    pub ops: CompoundOps,
    states: std::cell::RefCell<BTreeMap<BasisIndex, FockVector>>,
}

impl Default for CompoundCache {
    fn default() -> Self {
        Self::new()
    }
}

impl CompoundCache {
    pub fn new() -> Self {
        Self { ops: compound_ops_8mode(), states: Default::default() }
    }

    pub fn state(&self, idx: &BasisIndex) -> Result<FockVector> {
        if let Some(v) = self.states.borrow().get(idx) {
            return Ok(v.clone());
        }
        let v = compound_basis(idx)?;
        self.states.borrow_mut().insert(*idx, v.clone());
        Ok(v)
    }

    /// ‖𝒳·state(idx) − Σ c·state(target)‖_∞ against the analytic row.
    pub fn generator_residual(&self, name: GeneratorName, idx: &BasisIndex) -> Result<f64> {
        let lhs = fock_generator(&self.ops.total, name).apply(&self.state(idx)?)?;
        let mut rhs = FockVector::zero(8);
        for (t, c) in generator_matrix_elements(name, idx).targets {
            rhs = rhs.add(&self.state(&t)?.scale(c));
        }
        Ok(lhs.max_abs_diff(&rhs))
    }
}

/// Per-tuple result of [`occupancy_constraints`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TupleCheck {
    pub occ: Vec<u32>,
    /// (n_b⁰+n_b²)−(n_a⁰+n_a¹) and (n_b¹+n_b³)−(n_a²+n_a³).
    pub excess: [i64; 2],
    /// (n_a⁰−n_a¹+n_a²−n_a³, n_b⁰+n_b¹−n_b²−n_b³) = (2q_a, 2q_b).
    pub imbalance: [i64; 2],
    pub excess_ok: bool,
    pub imbalance_ok: Option<bool>,
    pub degree_ok: Option<bool>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstraintReport {
    pub lambda: i64,
    pub index: Option<BasisIndex>,
    pub tuples: Vec<TupleCheck>,
    pub pass: bool,
}

impl ConstraintReport {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// Checks the occupation constraints on every supported tuple. With a known
/// basis label the q imbalances and the degree relation are checked too.
pub fn occupancy_constraints(v: &FockVector, lambda: i64, index: Option<&BasisIndex>) -> Result<ConstraintReport> {
    if v.n_modes != 8 {
        return Err(Error::ModeMismatch { expected: 8, found: v.n_modes });
    }
    let tuples: Vec<TupleCheck> = v
        .amps
        .keys()
        .map(|o| {
            let n: [i64; 8] = std::array::from_fn(|k| o[k] as i64);
            let excess = [(n[4] + n[6]) - (n[0] + n[1]), (n[5] + n[7]) - (n[2] + n[3])];
            let imbalance = [n[0] - n[1] + n[2] - n[3], n[4] + n[5] - n[6] - n[7]];
            let excess_ok = excess == [lambda - 2, lambda - 2];
            let imbalance_ok = index.map(|i| imbalance == [i.two_qa as i64, i.two_qb as i64]);
            let total: i64 = n.iter().sum();
            // 2 + ½Σn = 2j + 2m + λ
            let degree_ok = index.map(|i| 4 + total == 2 * (i.degree() as i64 + lambda));
            TupleCheck {
                occ: o.to_vec(),
                excess,
                imbalance,
                excess_ok,
                imbalance_ok,
                degree_ok,
                pass: excess_ok && imbalance_ok.unwrap_or(true) && degree_ok.unwrap_or(true),
            }
        })
        .collect();
    let pass = tuples.iter().all(|t| t.pass);
    Ok(ConstraintReport { lambda, index: index.copied(), tuples, pass })
}

/// Swaps the constituents: a-rows (a₀,a₁,a₂,a₃) → (a₂,a₃,a₀,a₁) and b-columns
/// (b₀,b₁,b₂,b₃) → (b₁,b₀,b₃,b₂).
pub fn exchange(v: &FockVector) -> Result<FockVector> {
    if v.n_modes != 8 {
        return Err(Error::ModeMismatch { expected: 8, found: v.n_modes });
    }
    Ok(v.permute_modes(&[2, 3, 0, 1, 5, 4, 7, 6]))
}

/// 𝒜 = ½ Σ_{rc} Z_{rc} 𝒦_{rc} with 𝒦 = 𝒦^μσ_μ.
pub fn exciton_amplitude_op(z: &CartanPoint) -> QuadraticOperator {
    let ops = RealizationOps::build(&layout_8mode(), &[0, 1]);
    let zm = z.matrix();
    let mut a = QuadraticOperator::zero(8);
    for mu in 0..4 {
        let s = sigma(mu);
        let w: C64 = (0..2).flat_map(|r| (0..2).map(move |c| (r, c))).map(|(r, c)| zm[(r, c)] * s[(r, c)]).sum();
        a = a.add(&ops.k[mu].scale(w * (0.5 * ETA[mu])));
    }
    a
}

/// (−𝒜)ⁿ/n! |φ₀⟩ for n = 0..=cutoff.
pub fn exciton_orders(z: &CartanPoint, lambda: i64, cutoff: u32) -> Result<Vec<FockVector>> {
    let a = exciton_amplitude_op(z);
    let mut term = lowest_weight(lambda)?;
    let mut out = vec![term.clone()];
    for n in 1..=cutoff {
        term = a.apply(&term)?.scale(re(-1.0 / n as f64));
        out.push(term.clone());
    }
    Ok(out)
}

/// det(σ⁰−Z†Z)^{λ/2} Σ_{n ≤ cutoff} (−𝒜)ⁿ/n! |φ₀⟩.
pub fn exciton_cs(z: &CartanPoint, lambda: i64, cutoff: u32) -> Result<FockVector> {
    let orders = exciton_orders(z, lambda, cutoff)?;
    let sum = orders.iter().fold(FockVector::zero(8), |acc, t| acc.add(t));
    Ok(sum.scale(re(z.defect_det().powf(lambda as f64 / 2.0))))
}

/// Σ over basis labels of total degree `n` of φ(Z)·compound_basis.
pub fn exciton_order_expansion(z: &CartanPoint, lambda: i64, n: u32) -> Result<FockVector> {
    let zl = z.z();
    let mut out = FockVector::zero(8);
    for idx in crate::basis::indices_of_degree(lambda, n) {
        let c = basis_poly(&idx)?.eval(zl);
        out = out.add(&compound_basis(&idx)?.scale(c));
    }
    Ok(out)
}

/// ⟨[ℰ_μ†, ℰ_μ]⟩ on compound_basis(idx) with ℰ_μ† = 𝒦_μ/√(2(λ−2)) and
/// ℰ_μ = 𝒫_μ/√(2(λ−2)). Returns (Fock value, closed form).
pub fn exciton_commutator_expectation(idx: &BasisIndex, mu: usize) -> Result<(f64, f64)> {
    if idx.lambda <= 2 {
        return Err(Error::InvalidScaleDimension { lambda: idx.lambda, reason: "needs lambda > 2" });
    }
    let ops = RealizationOps::build(&layout_8mode(), &[0, 1]);
    let v = compound_basis(idx)?;
    let k = FockOperator::from(&ops.k[mu]);
    let p = FockOperator::from(&ops.p[mu]);
    // η² = 1 drops out of the commutator
    let comm = k.commutator(&p).scale(re(1.0 / (2.0 * (idx.lambda - 2) as f64)));
    let fock = v.inner(&comm.apply(&v)?).re;
    let closed = 2.0 * ETA[mu] * (idx.lambda as f64 + idx.degree() as f64) / (2.0 * (idx.lambda - 2) as f64);
    Ok((fock, closed))
}

/// 𝒫^μ𝒫_μ on a compound state.
#[derive(Debug, Clone, PartialEq)]
pub struct MassAction {
    pub target: Option<BasisIndex>,
    pub coefficient: f64,
    /// ‖𝒫²v − c·target‖_∞ in Fock arithmetic.
    pub fock_residual: f64,
    /// |c − coefficient of the analytic quadratic row|.
    pub analytic_residual: f64,
}

pub fn mass_spectrum_action(idx: &BasisIndex) -> Result<MassAction> {
    let ops = RealizationOps::build(&layout_8mode(), &[0, 1]);
    let v = compound_basis(idx)?;
    let pv = ops.p_squared().apply(&v)?;
    let (j, m, l) = (idx.j(), idx.m as f64, idx.lambda as f64);
    let c = 4.0 * (m * (2.0 * j + m + 1.0) * (l + m - 2.0) * (l + 2.0 * j + m - 1.0)).max(0.0).sqrt();
    let target = (idx.m > 0).then(|| BasisIndex { m: idx.m - 1, ..*idx });
    let expect = match &target {
        Some(t) => compound_basis(t)?.scale(re(c)),
        None => FockVector::zero(8),
    };
    let row = quadratic_action(QuadraticName::PP, idx);
    let analytic = row.targets.first().map(|(_, a)| a.re).unwrap_or(0.0);
    Ok(MassAction {
        target,
        coefficient: c,
        fock_residual: pv.max_abs_diff(&expect),
        analytic_residual: (analytic - c).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::indices_up_to;

    #[test]
    fn ladder_arithmetic() {
        let n = QuadraticOperator::zero(1).term(&[0], &[0], re(1.0));
        let three = FockVector::basis_state(1, &[3]);
        assert!(n.apply(&three).unwrap().max_abs_diff(&three.scale(re(3.0))) < 1e-15);
        let ab = QuadraticOperator::zero(2).term(&[0, 1], &[], re(1.0));
        let v = ab.apply(&FockVector::vacuum(2)).unwrap();
        assert_eq!(v, FockVector::basis_state(2, &[1, 1]));
        let v2 = ab.apply(&v).unwrap();
        assert!(v2.max_abs_diff(&FockVector::basis_state(2, &[2, 2]).scale(re(2.0))) < 1e-15);
        assert!(matches!(ab.apply(&FockVector::vacuum(3)), Err(Error::ModeMismatch { .. })));
    }

    #[test]
    fn su11_examples() {
        let [q3, _, qm, q0] = su11_generators();
        for tk in 1..5 {
            let v = su11_basis(tk, 0).unwrap();
            assert!(q3.apply(&v).unwrap().max_abs_diff(&v.scale(re(tk as f64 / 2.0))) < 1e-15);
            assert!(qm.apply(&v).unwrap().is_zero());
            let w = su11_basis(tk, 3).unwrap();
            assert!(q0.apply(&w).unwrap().max_abs_diff(&w.scale(re(tk as f64 / 2.0 - 1.0))) < 1e-15);
        }
        let cs = su11_cs(2, re(0.5), 60).unwrap();
        assert!((cs.norm() - 1.0).abs() < 1e-10);
        assert!(su11_cs(2, re(1.0), 3).is_err());
    }

    #[test]
    fn lowest_weight_examples() {
        assert_eq!(lowest_weight(2).unwrap(), FockVector::vacuum(8));
        let v = lowest_weight(3).unwrap();
        let h = 0.5f64.sqrt();
        assert!((v.amplitude(&[0, 0, 0, 0, 1, 0, 0, 1]) - re(h)).norm() < 1e-15);
        assert!((v.amplitude(&[0, 0, 0, 0, 0, 1, 1, 0]) - re(-h)).norm() < 1e-15);
        for l in 2..7 {
            let v = lowest_weight(l).unwrap();
            let c = compound_basis(&BasisIndex::new(l, 0, 0, 0, 0).unwrap()).unwrap();
            assert!(v.max_abs_diff(&c) < 1e-13, "lambda {l}");
        }
        assert!(lowest_weight(1).is_err());
    }

    #[test]
    fn compound_states_are_orthonormal() {
        for l in [3, 4] {
            let idx = indices_up_to(l, 3);
            let states: Vec<_> = idx.iter().map(|i| compound_basis(i).unwrap()).collect();
            for (a, va) in states.iter().enumerate() {
                for (b, vb) in states.iter().enumerate() {
                    let e = if a == b { 1.0 } else { 0.0 };
                    assert!((va.inner(vb) - re(e)).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn constraint_report() {
        let i = BasisIndex::new(4, 1, 0, 1, 1).unwrap();
        let r = occupancy_constraints(&compound_basis(&i).unwrap(), 4, Some(&i)).unwrap();
        assert!(r.pass);
        assert!(r.tuples.iter().all(|t| t.imbalance == [1, 1]));
        let bad = occupancy_constraints(&FockVector::vacuum(8), 4, None).unwrap();
        assert!(!bad.pass);
    }

    #[test]
    fn exchange_is_involution() {
        let v = compound_basis(&BasisIndex::new(3, 1, 1, -1, 1).unwrap()).unwrap();
        assert_eq!(exchange(&exchange(&v).unwrap()).unwrap(), v);
        assert!(exchange(&FockVector::vacuum(4)).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let v = su11_cs(3, C64::new(0.2, 0.1), 4).unwrap();
        assert_eq!(FockVector::from_json(&v.to_json()).unwrap(), v);
    }

    #[test]
    fn ladder_ground_state_and_constructions() {
        let z = [C64::new(0.2, 0.0), C64::new(0.1, 0.0), C64::new(0.1, 0.0)];
        let zero = ladder_cs(2, [C64::default(); 3], 4, LadderCsConstruction::Series, Helicity::Positive).unwrap();
        assert_eq!(zero, FockVector::basis_state(4, &[0, 0, 0, 1]));
        let s = ladder_cs(2, z, 4, LadderCsConstruction::Series, Helicity::Positive).unwrap();
        let e = ladder_cs(2, z, 4, LadderCsConstruction::Exponential, Helicity::Positive).unwrap();
        assert!(s.max_abs_diff(&e) < 1e-12);
        assert!(ladder_basis(1, [0, 0, 1], Helicity::Positive).is_err());
    }
}
