//! The sixteen u(2,2) generators in the analytic model.
//!
//! Differential form on polynomials in z_μ (derivatives ∂^μ act as ∂/∂z_μ):
//!
//! - 𝔇 = z_μ∂^μ + λ
//! - 𝔓^μ = ∂^μ
//! - 𝔎^μ = z²𝔓^μ − 2z^μ𝔇
//! - 𝔐^{μν} = z^μ∂^ν − z^ν∂^μ
//!
//! together with closed-form matrix elements on the basis, quadratic
//! invariants, the Casimir and coherent-state symbols.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::algebra::{z_upper, CartanPoint, ComplexMatrix2, ETA};
use crate::basis::{indices_up_to, BasisEvaluator, BasisIndex};
use crate::polynomial::Polynomial;
use crate::{json as cj, Error, Result, C64};

const I: C64 = C64::new(0.0, 1.0);

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// A linear generator of the analytic representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratorName {
    D,
    P(usize),
    K(usize),
    /// 𝔐^{μν} with μ < ν.
    M(usize, usize),
    Sa3,
    Sb3,
    SaPlus,
    SaMinus,
    SbPlus,
    SbMinus,
}

impl GeneratorName {
    pub fn all() -> Vec<GeneratorName> {
        use GeneratorName::*;
        let mut v = vec![D];
        v.extend((0..4).map(P));
        v.extend((0..4).map(K));
        for mu in 0..4 {
            for nu in mu + 1..4 {
                v.push(M(mu, nu));
            }
        }
        v.extend([Sa3, Sb3, SaPlus, SaMinus, SbPlus, SbMinus]);
        v
    }
}

impl fmt::Display for GeneratorName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GeneratorName::*;
        match self {
            D => write!(f, "D"),
            P(mu) => write!(f, "P{mu}"),
            K(mu) => write!(f, "K{mu}"),
            M(mu, nu) => write!(f, "M{mu}{nu}"),
            Sa3 => write!(f, "Sa3"),
            Sb3 => write!(f, "Sb3"),
            SaPlus => write!(f, "Sa+"),
            SaMinus => write!(f, "Sa-"),
            SbPlus => write!(f, "Sb+"),
            SbMinus => write!(f, "Sb-"),
        }
    }
}

impl FromStr for GeneratorName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        use GeneratorName::*;
        let bad = || Error::InvalidIndex(format!("unknown generator {s:?}"));
        let digit = |c: char| c.to_digit(10).map(|d| d as usize).filter(|&d| d < 4);
        let chars: Vec<char> = s.chars().collect();
        Ok(match s {
            "D" => D,
            "Sa3" => Sa3,
            "Sb3" => Sb3,
            "Sa+" => SaPlus,
            "Sa-" => SaMinus,
            "Sb+" => SbPlus,
            "Sb-" => SbMinus,
            _ if chars.len() == 2 && chars[0] == 'P' => P(digit(chars[1]).ok_or_else(bad)?),
            _ if chars.len() == 2 && chars[0] == 'K' => K(digit(chars[1]).ok_or_else(bad)?),
            _ if chars.len() == 3 && chars[0] == 'M' => {
                let (mu, nu) = (digit(chars[1]).ok_or_else(bad)?, digit(chars[2]).ok_or_else(bad)?);
                if mu >= nu {
                    return Err(bad());
                }
                M(mu, nu)
            }
            _ => return Err(bad()),
        })
    }
}

/// U(2)²-invariant quadratic operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuadraticName {
    /// 𝔐_{μν}𝔐^{μν}
    MM,
    /// 𝔓^μ𝔓_μ
    PP,
    /// 𝔎^μ𝔎_μ
    KK,
    /// 𝔎^μ𝔓_μ
    KP,
    /// 𝔓^μ𝔎_μ
    PK,
}

impl QuadraticName {
    pub fn all() -> [QuadraticName; 5] {
        use QuadraticName::*;
        [MM, PP, KK, KP, PK]
    }
}

impl fmt::Display for QuadraticName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            QuadraticName::MM => "MM",
            QuadraticName::PP => "PP",
            QuadraticName::KK => "KK",
            QuadraticName::KP => "KP",
            QuadraticName::PK => "PK",
        };
        f.write_str(s)
    }
}

// ---------------------------------------------------------------------------
// differential action

fn z_squared() -> Polynomial {
    Polynomial::from_terms((0..4).map(|mu| {
        let mut e = [0; 4];
        e[mu] = 2;
        (e, re(ETA[mu]))
    }))
}

fn diff_d(phi: &Polynomial, lambda: i64) -> Polynomial {
    let euler = (0..4).fold(Polynomial::zero(), |acc, mu| &acc + &phi.derivative(mu).times_var(mu));
    &euler + &phi.scale(re(lambda as f64))
}

fn diff_m(phi: &Polynomial, mu: usize, nu: usize) -> Polynomial {
    let a = phi.derivative(nu).times_var(mu).scale(re(ETA[mu]));
    let b = phi.derivative(mu).times_var(nu).scale(re(ETA[nu]));
    &a - &b
}

fn diff_k(phi: &Polynomial, mu: usize, lambda: i64) -> Polynomial {
    let a = &z_squared() * &phi.derivative(mu);
    let b = diff_d(phi, lambda).times_var(mu).scale(re(2.0 * ETA[mu]));
    &a - &b
}

/// 𝔖_{aj} (`left`) or 𝔖_{bj}: ½(𝔐^{0j} ∓ i𝔐^{kl}), (j,k,l) cyclic.
fn diff_s(phi: &Polynomial, j: usize, left: bool) -> Polynomial {
    let (k, l) = match j {
        1 => (2, 3),
        2 => (3, 1),
        _ => (1, 2),
    };
    let sign = if left { -1.0 } else { 1.0 };
    let m0 = diff_m(phi, 0, j);
    let mkl = diff_m(phi, k, l);
    (&m0 + &mkl.scale(I * sign)).scale(re(0.5))
}

pub fn apply_generator_diff(name: GeneratorName, phi: &Polynomial, lambda: i64) -> Polynomial {
    use GeneratorName::*;
    match name {
        D => diff_d(phi, lambda),
        P(mu) => phi.derivative(mu),
        K(mu) => diff_k(phi, mu, lambda),
        M(mu, nu) => diff_m(phi, mu, nu),
        Sa3 => diff_s(phi, 3, true),
        Sb3 => diff_s(phi, 3, false),
        // 𝔖_{a±} = 𝔖_{a1} ∓ i𝔖_{a2}, 𝔖_{b±} = 𝔖_{b1} ± i𝔖_{b2}
        SaPlus => &diff_s(phi, 1, true) - &diff_s(phi, 2, true).scale(I),
        SaMinus => &diff_s(phi, 1, true) + &diff_s(phi, 2, true).scale(I),
        SbPlus => &diff_s(phi, 1, false) + &diff_s(phi, 2, false).scale(I),
        SbMinus => &diff_s(phi, 1, false) - &diff_s(phi, 2, false).scale(I),
    }
}

/// 𝔐^{μν} for any ordered pair (antisymmetric, zero on the diagonal).
pub fn apply_m_diff(phi: &Polynomial, mu: usize, nu: usize) -> Polynomial {
    diff_m(phi, mu, nu)
}

/// Quadratic invariant applied as a differential operator.
pub fn apply_quadratic_diff(name: QuadraticName, phi: &Polynomial, lambda: i64) -> Polynomial {
    use GeneratorName::{K, P};
    let mut out = Polynomial::zero();
    match name {
        QuadraticName::MM => {
            for mu in 0..4 {
                for nu in 0..4 {
                    if mu != nu {
                        let t = diff_m(&diff_m(phi, mu, nu), mu, nu);
                        out = &out + &t.scale(re(ETA[mu] * ETA[nu]));
                    }
                }
            }
        }
        _ => {
            for mu in 0..4 {
                let (outer, inner) = match name {
                    QuadraticName::PP => (P(mu), P(mu)),
                    QuadraticName::KK => (K(mu), K(mu)),
                    QuadraticName::KP => (K(mu), P(mu)),
                    _ => (P(mu), K(mu)),
                };
                let t = apply_generator_diff(outer, &apply_generator_diff(inner, phi, lambda), lambda);
                out = &out + &t.scale(re(ETA[mu]));
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// closed-form matrix elements

/// C^{j,m}_{q_a,q_b} = √((j+q_a)(j+q_b)m(λ+m−2)) / √(2j(2j+1)), doubled labels.
pub fn coeff_c(two_j: u32, m: i64, two_qa: i32, two_qb: i32, lambda: i64) -> Result<f64> {
    if two_j == 0 {
        return Err(Error::InvalidSpin("C coefficient is singular at j = 0".into()));
    }
    Ok(coeff_c_raw(two_j as i64, m, two_qa as i64, two_qb as i64, lambda))
}

/// Guarded version used inside the rows: vanishes whenever the printed
/// numerator does or when j ≤ 0.
fn coeff_c_raw(two_j: i64, m: i64, two_qa: i64, two_qb: i64, lambda: i64) -> f64 {
    if two_j <= 0 {
        return 0.0;
    }
    let jpa = (two_j + two_qa) as f64 / 2.0;
    let jpb = (two_j + two_qb) as f64 / 2.0;
    let num = jpa * jpb * m as f64 * (lambda + m - 2) as f64;
    if num <= 0.0 {
        return 0.0;
    }
    num.sqrt() / ((two_j * (two_j + 1)) as f64).sqrt()
}

/// One row of a generator's matrix: φ_source ↦ Σ c φ_target.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixElementRow {
    pub source: BasisIndex,
    pub targets: Vec<(BasisIndex, C64)>,
}

impl MatrixElementRow {
    pub fn to_json(&self) -> Value {
        json!({
            "source": self.source,
            "targets": self.targets.iter().map(|(i, c)| json!({ "index": i, "coeff": cj::complex(*c) })).collect::<Vec<_>>(),
        })
    }
}

/// A raw term (coefficient, 2j', m', 2q_a', 2q_b') that may fall off the lattice.
type RawTerm = (C64, i64, i64, i64, i64);

fn target(src: &BasisIndex, two_j: i64, m: i64, two_qa: i64, two_qb: i64) -> Option<BasisIndex> {
    if two_j < 0 || m < 0 || two_qa.abs() > two_j || two_qb.abs() > two_j {
        return None;
    }
    Some(BasisIndex {
        lambda: src.lambda,
        two_j: two_j as u32,
        m: m as u32,
        two_qa: two_qa as i32,
        two_qb: two_qb as i32,
    })
}

fn p_terms(mu: usize, idx: &BasisIndex) -> Vec<RawTerm> {
    let (tj, m, a, b, l) = (idx.two_j as i64, idx.m as i64, idx.two_qa as i64, idx.two_qb as i64, idx.lambda);
    let c = |tj2, m2, a2, b2| re(coeff_c_raw(tj2, m2, a2, b2, l));
    let mp = m + tj + 1;
    match mu {
        0 | 3 => {
            let s = if mu == 0 { 1.0 } else { -1.0 };
            vec![
                (c(tj, mp, a, b), tj - 1, m, a - 1, b - 1),
                (c(tj + 1, m, -a + 1, -b + 1), tj + 1, m - 1, a - 1, b - 1),
                (c(tj, mp, -a, -b) * s, tj - 1, m, a + 1, b + 1),
                (c(tj + 1, m, a + 1, b + 1) * s, tj + 1, m - 1, a + 1, b + 1),
            ]
        }
        1 | 2 => {
            let f = if mu == 1 { [re(1.0), re(-1.0), re(1.0), re(-1.0)] } else { [I, -I, -I, I] };
            vec![
                (c(tj, mp, -a, b) * f[0], tj - 1, m, a + 1, b - 1),
                (c(tj + 1, m, a + 1, -b + 1) * f[1], tj + 1, m - 1, a + 1, b - 1),
                (c(tj, mp, a, -b) * f[2], tj - 1, m, a - 1, b + 1),
                (c(tj + 1, m, -a + 1, b + 1) * f[3], tj + 1, m - 1, a - 1, b + 1),
            ]
        }
        _ => panic!("P index {mu} out of range"),
    }
}

fn k_terms(mu: usize, idx: &BasisIndex) -> Vec<RawTerm> {
    let (tj, m, a, b, l) = (idx.two_j as i64, idx.m as i64, idx.two_qa as i64, idx.two_qb as i64, idx.lambda);
    let c = |tj2, m2, a2, b2| re(coeff_c_raw(tj2, m2, a2, b2, l));
    let mp = m + tj + 2;
    match mu {
        0 => vec![
            (-c(tj, m + 1, a, b), tj - 1, m + 1, a - 1, b - 1),
            (-c(tj, m + 1, -a, -b), tj - 1, m + 1, a + 1, b + 1),
            (-c(tj + 1, mp, -a + 1, -b + 1), tj + 1, m, a - 1, b - 1),
            (-c(tj + 1, mp, a + 1, b + 1), tj + 1, m, a + 1, b + 1),
        ],
        1 | 2 => {
            let f = if mu == 1 { [re(1.0), re(1.0), re(-1.0), re(-1.0)] } else { [-I, I, I, -I] };
            vec![
                (c(tj + 1, mp, -a + 1, b + 1) * f[0], tj + 1, m, a - 1, b + 1),
                (c(tj + 1, mp, a + 1, -b + 1) * f[1], tj + 1, m, a + 1, b - 1),
                (c(tj, m + 1, a, -b) * f[2], tj - 1, m + 1, a - 1, b + 1),
                (c(tj, m + 1, -a, b) * f[3], tj - 1, m + 1, a + 1, b - 1),
            ]
        }
        3 => vec![
            (c(tj + 1, mp, a + 1, b + 1), tj + 1, m, a + 1, b + 1),
            (-c(tj + 1, mp, -a + 1, -b + 1), tj + 1, m, a - 1, b - 1),
            (c(tj, m + 1, -a, -b), tj - 1, m + 1, a + 1, b + 1),
            (-c(tj, m + 1, a, b), tj - 1, m + 1, a - 1, b - 1),
        ],
        _ => panic!("K index {mu} out of range"),
    }
}

/// √((j ∓ q)(j ± q + 1)) for the ladder step `up` (doubled labels).
fn ladder_coeff(two_j: i64, two_q: i64, up: bool) -> f64 {
    let (jm, jp) = if up { (two_j - two_q, two_j + two_q + 2) } else { (two_j + two_q, two_j - two_q + 2) };
    ((jm * jp) as f64 / 4.0).max(0.0).sqrt()
}

fn s_terms(name: GeneratorName, idx: &BasisIndex) -> Vec<RawTerm> {
    use GeneratorName::*;
    let (tj, m, a, b) = (idx.two_j as i64, idx.m as i64, idx.two_qa as i64, idx.two_qb as i64);
    match name {
        Sa3 => vec![(re(a as f64 / 2.0), tj, m, a, b)],
        Sb3 => vec![(re(b as f64 / 2.0), tj, m, a, b)],
        SaPlus => vec![(re(ladder_coeff(tj, a, true)), tj, m, a + 2, b)],
        SaMinus => vec![(re(ladder_coeff(tj, a, false)), tj, m, a - 2, b)],
        SbPlus => vec![(re(ladder_coeff(tj, b, true)), tj, m, a, b + 2)],
        SbMinus => vec![(re(ladder_coeff(tj, b, false)), tj, m, a, b - 2)],
        _ => unreachable!(),
    }
}

fn scaled(terms: Vec<RawTerm>, f: C64) -> Vec<RawTerm> {
    terms.into_iter().map(|(c, j, m, a, b)| (c * f, j, m, a, b)).collect()
}

/// 𝔖_{aj} / 𝔖_{bj} for j = 1, 2, 3 from the ladder rows.
fn s_component_terms(j: usize, left: bool, idx: &BasisIndex) -> Vec<RawTerm> {
    use GeneratorName::*;
    let (plus, minus, three) = if left { (SaPlus, SaMinus, Sa3) } else { (SbPlus, SbMinus, Sb3) };
    let mut out = Vec::new();
    match j {
        1 => {
            out.extend(scaled(s_terms(plus, idx), re(0.5)));
            out.extend(scaled(s_terms(minus, idx), re(0.5)));
        }
        2 => {
            // 𝔖_{a2} = i(𝔖_{a+} − 𝔖_{a−})/2, 𝔖_{b2} = −i(𝔖_{b+} − 𝔖_{b−})/2
            let f = if left { I * 0.5 } else { -I * 0.5 };
            out.extend(scaled(s_terms(plus, idx), f));
            out.extend(scaled(s_terms(minus, idx), -f));
        }
        _ => out.extend(s_terms(three, idx)),
    }
    out
}

/// 𝔐^{0j} = 𝔖_{aj} + 𝔖_{bj}, 𝔐^{kl} = i(𝔖_{aj} − 𝔖_{bj}).
fn m_terms(mu: usize, nu: usize, idx: &BasisIndex) -> Vec<RawTerm> {
    let (j, sign, spatial) = match (mu, nu) {
        (0, j) => (j, 1.0, false),
        (2, 3) => (1, 1.0, true),
        (1, 3) => (2, -1.0, true),
        (1, 2) => (3, 1.0, true),
        _ => panic!("M index ({mu},{nu}) must satisfy mu < nu < 4"),
    };
    let sa = s_component_terms(j, true, idx);
    let sb = s_component_terms(j, false, idx);
    if spatial {
        let mut out = scaled(sa, I * sign);
        out.extend(scaled(sb, -I * sign));
        out
    } else {
        let mut out = sa;
        out.extend(sb);
        out
    }
}

fn raw_terms(name: GeneratorName, idx: &BasisIndex) -> Vec<RawTerm> {
    use GeneratorName::*;
    match name {
        D => {
            let (tj, m) = (idx.two_j as i64, idx.m as i64);
            vec![(re((tj + 2 * m + idx.lambda) as f64), tj, m, idx.two_qa as i64, idx.two_qb as i64)]
        }
        P(mu) => p_terms(mu, idx),
        K(mu) => k_terms(mu, idx),
        M(mu, nu) => m_terms(mu, nu, idx),
        _ => s_terms(name, idx),
    }
}

fn collect_row(idx: &BasisIndex, terms: Vec<RawTerm>) -> MatrixElementRow {
    let mut acc: BTreeMap<BasisIndex, C64> = BTreeMap::new();
    for (c, j, m, a, b) in terms {
        if let Some(t) = target(idx, j, m, a, b) {
            *acc.entry(t).or_default() += c;
        }
    }
    MatrixElementRow {
        source: *idx,
        targets: acc.into_iter().filter(|(_, c)| c.norm() > 0.0).collect(),
    }
}

pub fn generator_matrix_elements(name: GeneratorName, idx: &BasisIndex) -> MatrixElementRow {
    collect_row(idx, raw_terms(name, idx))
}

/// Largest printed coefficient among terms whose target leaves the index
/// lattice; dropping them is exact iff this is zero.
pub fn dropped_coefficient_max(name: GeneratorName, idx: &BasisIndex) -> f64 {
    raw_terms(name, idx)
        .into_iter()
        .filter(|&(_, j, m, a, b)| target(idx, j, m, a, b).is_none())
        .map(|(c, ..)| c.norm())
        .fold(0.0, f64::max)
}

/// Sparse vector in the basis.
pub type SparseState = BTreeMap<BasisIndex, C64>;

pub fn apply_generator(name: GeneratorName, v: &SparseState) -> SparseState {
    let mut out = SparseState::new();
    for (idx, a) in v {
        for (t, c) in generator_matrix_elements(name, idx).targets {
            *out.entry(t).or_default() += a * c;
        }
    }
    out
}

fn apply_m_any(mu: usize, nu: usize, v: &SparseState) -> SparseState {
    if mu == nu {
        return SparseState::new();
    }
    if mu < nu {
        apply_generator(GeneratorName::M(mu, nu), v)
    } else {
        scale_state(&apply_generator(GeneratorName::M(nu, mu), v), re(-1.0))
    }
}

pub fn scale_state(v: &SparseState, c: C64) -> SparseState {
    v.iter().map(|(k, a)| (*k, a * c)).collect()
}

pub fn add_states(a: &SparseState, b: &SparseState) -> SparseState {
    let mut out = a.clone();
    for (k, v) in b {
        *out.entry(*k).or_default() += v;
    }
    out
}

/// Quadratic invariant assembled from the linear rows.
pub fn apply_quadratic_composed(name: QuadraticName, v: &SparseState) -> SparseState {
    use GeneratorName::{K, P};
    let mut out = SparseState::new();
    if name == QuadraticName::MM {
        for mu in 0..4 {
            for nu in 0..4 {
                if mu != nu {
                    let t = apply_m_any(mu, nu, &apply_m_any(mu, nu, v));
                    out = add_states(&out, &scale_state(&t, re(ETA[mu] * ETA[nu])));
                }
            }
        }
        return out;
    }
    for mu in 0..4 {
        let (outer, inner) = match name {
            QuadraticName::PP => (P(mu), P(mu)),
            QuadraticName::KK => (K(mu), K(mu)),
            QuadraticName::KP => (K(mu), P(mu)),
            _ => (P(mu), K(mu)),
        };
        let t = apply_generator(outer, &apply_generator(inner, v));
        out = add_states(&out, &scale_state(&t, re(ETA[mu])));
    }
    out
}

/// Closed-form quadratic rows.
pub fn quadratic_action(name: QuadraticName, idx: &BasisIndex) -> MatrixElementRow {
    let j = idx.j();
    let m = idx.m as f64;
    let l = idx.lambda as f64;
    let (tj, mi, a, b) = (idx.two_j as i64, idx.m as i64, idx.two_qa as i64, idx.two_qb as i64);
    let terms: Vec<RawTerm> = match name {
        QuadraticName::MM => vec![(re(-8.0 * j * (j + 1.0)), tj, mi, a, b)],
        QuadraticName::PP => {
            let v = m * (2.0 * j + m + 1.0) * (l + m - 2.0) * (l + 2.0 * j + m - 1.0);
            vec![(re(4.0 * v.max(0.0).sqrt()), tj, mi - 1, a, b)]
        }
        QuadraticName::KK => {
            let v = (m + 1.0) * (2.0 * j + m + 2.0) * (l + m - 1.0) * (l + 2.0 * j + m);
            vec![(re(4.0 * v.max(0.0).sqrt()), tj, mi + 1, a, b)]
        }
        QuadraticName::KP => {
            let v = 2.0 * j * j + m * (m + l - 2.0) + j * (2.0 * m + l - 1.0);
            vec![(re(-4.0 * v), tj, mi, a, b)]
        }
        QuadraticName::PK => {
            let v = 2.0 * j * j + (m + 2.0) * (m + l) + j * (2.0 * m + l + 3.0);
            vec![(re(-4.0 * v), tj, mi, a, b)]
        }
    };
    collect_row(idx, terms)
}

/// Quadratic invariant from the closed-form rows.
pub fn apply_quadratic(name: QuadraticName, v: &SparseState) -> SparseState {
    let mut out = SparseState::new();
    for (idx, a) in v {
        for (t, c) in quadratic_action(name, idx).targets {
            *out.entry(t).or_default() += a * c;
        }
    }
    out
}

/// Result of assembling 𝔇² − ½𝔐𝔐 + ½(𝔓𝔎 + 𝔎𝔓) on one basis vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CasimirReport {
    /// Diagonal coefficient from composing the linear rows.
    pub eigenvalue: f64,
    /// Largest off-diagonal magnitude (and imaginary part of the diagonal).
    pub off_diagonal: f64,
    /// Diagonal coefficient from the closed-form quadratic rows.
    pub closed_form: f64,
}

pub fn casimir2(idx: &BasisIndex) -> CasimirReport {
    let v: SparseState = [(*idx, re(1.0))].into();
    let d2 = apply_generator(GeneratorName::D, &apply_generator(GeneratorName::D, &v));
    let mm = apply_quadratic_composed(QuadraticName::MM, &v);
    let pk = apply_quadratic_composed(QuadraticName::PK, &v);
    let kp = apply_quadratic_composed(QuadraticName::KP, &v);
    let total = add_states(
        &add_states(&d2, &scale_state(&mm, re(-0.5))),
        &scale_state(&add_states(&pk, &kp), re(0.5)),
    );
    let diag = total.get(idx).copied().unwrap_or_default();
    let off = total
        .iter()
        .filter(|(k, _)| *k != idx)
        .map(|(_, c)| c.norm())
        .fold(diag.im.abs(), f64::max);
    let single = |name| {
        quadratic_action(name, idx)
            .targets
            .iter()
            .find(|(t, _)| t == idx)
            .map(|(_, c)| c.re)
            .unwrap_or(0.0)
    };
    let dd = (idx.degree() as f64 + idx.lambda as f64).powi(2);
    let closed = dd - 0.5 * single(QuadraticName::MM)
        + 0.5 * (single(QuadraticName::PK) + single(QuadraticName::KP));
    CasimirReport { eigenvalue: diag.re, off_diagonal: off, closed_form: closed }
}

// ---------------------------------------------------------------------------
// symbols

/// Operators whose coherent-state symbol has a closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymbolName {
    D,
    P(usize),
    K(usize),
    M(usize, usize),
    D2,
    PP,
    KK,
    PK,
    KP,
    MM,
}

impl SymbolName {
    pub fn all() -> Vec<SymbolName> {
        use SymbolName::*;
        let mut v = vec![D];
        v.extend((0..4).map(P));
        v.extend((0..4).map(K));
        for mu in 0..4 {
            for nu in mu + 1..4 {
                v.push(M(mu, nu));
            }
        }
        v.extend([D2, PP, KK, PK, KP, MM]);
        v
    }
}

impl fmt::Display for SymbolName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use SymbolName::*;
        match self {
            D => write!(f, "D"),
            P(mu) => write!(f, "P{mu}"),
            K(mu) => write!(f, "K{mu}"),
            M(mu, nu) => write!(f, "M{mu}{nu}"),
            D2 => write!(f, "DD"),
            PP => write!(f, "PP"),
            KK => write!(f, "KK"),
            PK => write!(f, "PK"),
            KP => write!(f, "KP"),
            MM => write!(f, "MM"),
        }
    }
}

/// ⟨Z|G|Z⟩ from the closed forms.
pub fn symbol(name: SymbolName, z: &CartanPoint, lambda: i64) -> C64 {
    use SymbolName::*;
    let zm = z.matrix();
    let l = lambda as f64;
    let dd = z.defect_det();
    let det = zm.determinant();
    let dzz = det.norm_sqr();
    let tr = (zm.adjoint() * zm).trace().re;
    let zl = z.z();
    let zu = z_upper(zl);
    let sym_d = re(l * (1.0 - dzz) / dd);
    let sym_p = |mu: usize| (zl[mu].conj() - det.conj() * zu[mu]) * (2.0 * l / dd);
    let sym_d2 = sym_d * sym_d * ((l + 1.0) / l) - l * (1.0 + dzz) / dd;
    let sym_pk = (re(l * (l - 3.0 + tr + (1.0 + l) * dzz) / dd) - sym_d * sym_d * ((l + 1.0) / l)) * 2.0;
    match name {
        D => sym_d,
        P(mu) => sym_p(mu),
        K(mu) => det * sym_p(mu) - zu[mu] * sym_d * 2.0,
        M(mu, nu) => zu[mu] * sym_p(nu) - zu[nu] * sym_p(mu),
        D2 => sym_d2,
        PP => det.conj() * (4.0 * l * (l - 1.0) / dd),
        KK => det * (4.0 * l * (l - 1.0) / dd),
        PK => sym_pk,
        KP => sym_pk + sym_d * 8.0,
        MM => sym_d2 * 2.0 + sym_pk * 2.0 + sym_d * 8.0 - 2.0 * l * (l - 4.0),
    }
}

/// ⟨Z|G|Z⟩ from the truncated coherent-state expansion, for any operator
/// given as a map on sparse basis vectors.
pub fn symbol_series(
    z: &CartanPoint,
    lambda: i64,
    max_degree: u32,
    op: impl Fn(&SparseState) -> SparseState,
) -> Result<C64> {
    let zm: &ComplexMatrix2 = z.matrix();
    let ev = BasisEvaluator::new(zm, max_degree + 2);
    let mut v = SparseState::new();
    for idx in indices_up_to(lambda, max_degree) {
        v.insert(idx, ev.value(&idx)?.conj());
    }
    let w = op(&v);
    let mut total = C64::new(0.0, 0.0);
    for (idx, c) in &w {
        total += c * ev.value(idx)?;
    }
    Ok(total * z.defect_det().powi(lambda as i32))
}

/// Applies a symbol name as an operator on sparse basis vectors.
pub fn symbol_operator(name: SymbolName) -> impl Fn(&SparseState) -> SparseState {
    move |v: &SparseState| {
        use SymbolName::*;
        match name {
            D => apply_generator(GeneratorName::D, v),
            P(mu) => apply_generator(GeneratorName::P(mu), v),
            K(mu) => apply_generator(GeneratorName::K(mu), v),
            M(mu, nu) => apply_m_any(mu, nu, v),
            D2 => apply_generator(GeneratorName::D, &apply_generator(GeneratorName::D, v)),
            PP => apply_quadratic(QuadraticName::PP, v),
            KK => apply_quadratic(QuadraticName::KK, v),
            PK => apply_quadratic(QuadraticName::PK, v),
            KP => apply_quadratic(QuadraticName::KP, v),
            MM => apply_quadratic(QuadraticName::MM, v),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::basis_poly;

    fn idx(l: i64, tj: u32, m: u32, a: i32, b: i32) -> BasisIndex {
        BasisIndex::new(l, tj, m, a, b).unwrap()
    }

    #[test]
    fn differential_examples() {
        let one = Polynomial::one();
        assert_eq!(apply_generator_diff(GeneratorName::D, &one, 5), Polynomial::constant(re(5.0)));
        assert_eq!(apply_generator_diff(GeneratorName::P(0), &Polynomial::var(0), 4), one);
        assert_eq!(apply_generator_diff(GeneratorName::P(1), &Polynomial::var(1), 4), one);
        for mu in 0..4 {
            let k = apply_generator_diff(GeneratorName::K(mu), &one, 4);
            let expect = Polynomial::var(mu).scale(re(-8.0 * ETA[mu]));
            assert_eq!(k, expect);
        }
    }

    #[test]
    fn coeff_c_examples() {
        assert!((coeff_c(1, 1, 1, 1, 4).unwrap() - 1.5f64.sqrt()).abs() < 1e-15);
        assert_eq!(coeff_c(3, 2, -3, 1, 4).unwrap(), 0.0);
        assert_eq!(coeff_c(3, 0, 1, 1, 4).unwrap(), 0.0);
        assert!(matches!(coeff_c(0, 1, 0, 0, 4), Err(Error::InvalidSpin(_))));
    }

    #[test]
    fn simple_rows() {
        let i = idx(5, 3, 2, 1, -3);
        let r = generator_matrix_elements(GeneratorName::D, &i);
        assert_eq!(r.targets, vec![(i, re(3.0 + 4.0 + 5.0))]);
        let r = generator_matrix_elements(GeneratorName::Sa3, &i);
        assert_eq!(r.targets, vec![(i, re(0.5))]);
        let r = generator_matrix_elements(GeneratorName::SaPlus, &idx(4, 1, 0, -1, 1));
        assert_eq!(r.targets, vec![(idx(4, 1, 0, 1, 1), re(1.0))]);
        assert!(generator_matrix_elements(GeneratorName::SaPlus, &idx(4, 1, 0, 1, 1)).targets.is_empty());
    }

    #[test]
    fn quadratic_examples() {
        let r = quadratic_action(QuadraticName::PP, &idx(4, 0, 1, 0, 0));
        assert_eq!(r.targets.len(), 1);
        assert!((r.targets[0].1.re - 4.0 * 24f64.sqrt()).abs() < 1e-12);
        assert!(quadratic_action(QuadraticName::PP, &idx(4, 2, 0, 0, 0)).targets.is_empty());
        let r = quadratic_action(QuadraticName::MM, &idx(4, 2, 3, 0, 2));
        assert_eq!(r.targets[0].1, re(-16.0));
    }

    #[test]
    fn casimir_spot_values() {
        for (l, v) in [(2, -4.0), (4, 0.0), (5, 5.0), (6, 12.0)] {
            for i in indices_up_to(l, 3) {
                let c = casimir2(&i);
                assert!((c.eigenvalue - v).abs() < 1e-10, "{i}: {c:?}");
                assert!(c.off_diagonal < 1e-10);
                assert!((c.closed_form - v).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn rows_match_differential_action_low_degree() {
        for i in indices_up_to(4, 2) {
            let phi = basis_poly(&i).unwrap();
            for g in GeneratorName::all() {
                let lhs = apply_generator_diff(g, &phi, 4);
                let mut rhs = Polynomial::zero();
                for (t, c) in generator_matrix_elements(g, &i).targets {
                    rhs = &rhs + &basis_poly(&t).unwrap().scale(c);
                }
                assert!(lhs.max_abs_diff(&rhs) < 1e-10, "{g} on {i}");
            }
        }
    }

    #[test]
    fn symbols_at_origin() {
        let o = CartanPoint::origin();
        assert_eq!(symbol(SymbolName::D, &o, 4), re(4.0));
        for mu in 0..4 {
            assert_eq!(symbol(SymbolName::P(mu), &o, 4).norm(), 0.0);
            assert_eq!(symbol(SymbolName::K(mu), &o, 4).norm(), 0.0);
        }
    }

    #[test]
    fn parse_names() {
        for g in GeneratorName::all() {
            assert_eq!(g.to_string().parse::<GeneratorName>().unwrap(), g);
        }
        assert!("M10".parse::<GeneratorName>().is_err());
        assert!("P4".parse::<GeneratorName>().is_err());
    }
}
