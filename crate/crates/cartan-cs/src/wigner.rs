//! Wigner D-matrices of arbitrary complex 2×2 matrices.
//!
//! Spins and magnetic labels are stored doubled (`two_j = 2j`,
//! `two_q = 2q`) so half-integers stay exact.

use crate::algebra::ComplexMatrix2;
use num_bigint::BigUint;
use num_traits::One;

use crate::combinatorics::{binomial, ratio, sqrt_factorial_ratio};
use crate::polynomial::{Exponents, Polynomial};
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpinLabel {
    pub two_j: u32,
}

impl SpinLabel {
    pub fn new(two_j: u32) -> Self {
        Self { two_j }
    }

    pub fn j(&self) -> f64 {
        self.two_j as f64 / 2.0
    }

    pub fn dim(&self) -> usize {
        self.two_j as usize + 1
    }

    /// 2q for row/column `k`, in the order j, j−1, …, −j.
    pub fn two_q(&self, k: usize) -> i32 {
        self.two_j as i32 - 2 * k as i32
    }

    /// Row/column position of 2q.
    pub fn position(&self, two_q: i32) -> Option<usize> {
        let tj = self.two_j as i32;
        if two_q.abs() > tj || (tj - two_q) % 2 != 0 {
            return None;
        }
        Some(((tj - two_q) / 2) as usize)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WignerMatrix {
    pub j: SpinLabel,
    /// Row-major, rows and columns ordered q = j … −j.
    pub entries: Vec<C64>,
}

impl WignerMatrix {
    pub fn get(&self, two_qa: i32, two_qb: i32) -> C64 {
        let (r, c) = (self.j.position(two_qa), self.j.position(two_qb));
        match (r, c) {
            (Some(r), Some(c)) => self.entries[r * self.j.dim() + c],
            _ => C64::new(0.0, 0.0),
        }
    }

    pub fn at(&self, row: usize, col: usize) -> C64 {
        self.entries[row * self.j.dim() + col]
    }

    pub fn trace(&self) -> C64 {
        (0..self.j.dim()).map(|k| self.at(k, k)).sum()
    }
}

/// Expansion of D^j_{q_a q_b}(X) as a sum of monomials
/// `coeff · x₁₁^e₀ x₁₂^e₁ x₂₁^e₂ x₂₂^e₃`.
pub fn wigner_terms(two_j: u32, two_qa: i32, two_qb: i32) -> Vec<(f64, Exponents)> {
    let (pref, terms) = wigner_integer_terms(two_j, two_qa, two_qb);
    terms.into_iter().map(|(b, e)| (pref * ratio(&b, &BigUint::one()), e)).collect()
}

/// D^j_{q_a q_b} split as `pref · Σ b·monomial` with integer `b`.
pub fn wigner_integer_terms(two_j: u32, two_qa: i32, two_qb: i32) -> (f64, Vec<(BigUint, Exponents)>) {
    let tj = two_j as i32;
    if two_qa.abs() > tj || two_qb.abs() > tj || (tj - two_qa) % 2 != 0 || (tj - two_qb) % 2 != 0 {
        return (0.0, Vec::new());
    }
    let jpa = ((tj + two_qa) / 2) as i64;
    let jma = ((tj - two_qa) / 2) as i64;
    let jpb = ((tj + two_qb) / 2) as i64;
    let jmb = ((tj - two_qb) / 2) as i64;
    let s = ((two_qa + two_qb) / 2) as i64;
    let pref = sqrt_factorial_ratio(&[jpa as u64, jma as u64], &[jpb as u64, jmb as u64]);
    let terms = (s.max(0)..=jpa.min(jpb))
        .map(|k| {
            let e = [k as u32, (jpa - k) as u32, (jpb - k) as u32, (k - s) as u32];
            (binomial(jpb, k) * binomial(jmb, k - s), e)
        })
        .collect();
    (pref, terms)
}

/// D^j_{q_a q_b} as a polynomial in the entries of X.
pub fn wigner_entry_poly(two_j: u32, two_qa: i32, two_qb: i32) -> Polynomial {
    Polynomial::from_terms(
        wigner_terms(two_j, two_qa, two_qb)
            .into_iter()
            .map(|(c, e)| (e, C64::new(c, 0.0))),
    )
}

fn powers(x: C64, n: usize) -> Vec<C64> {
    let mut p = vec![C64::new(1.0, 0.0); n + 1];
    for k in 1..=n {
        p[k] = p[k - 1] * x;
    }
    p
}

pub fn wigner_d(j: SpinLabel, x: &ComplexMatrix2) -> WignerMatrix {
    let n = j.dim();
    let tj = j.two_j as usize;
    let pw = [
        powers(x[(0, 0)], tj),
        powers(x[(0, 1)], tj),
        powers(x[(1, 0)], tj),
        powers(x[(1, 1)], tj),
    ];
    let mut entries = Vec::with_capacity(n * n);
    for r in 0..n {
        for c in 0..n {
            let v = wigner_terms(j.two_j, j.two_q(r), j.two_q(c))
                .iter()
                .map(|(coef, e)| {
                    pw[0][e[0] as usize] * pw[1][e[1] as usize] * pw[2][e[2] as usize] * pw[3][e[3] as usize] * *coef
                })
                .sum();
            entries.push(v);
        }
    }
    WignerMatrix { j, entries }
}

pub fn wigner_character(j: SpinLabel, x: &ComplexMatrix2) -> C64 {
    wigner_d(j, x).trace()
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::Matrix2;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn sample() -> ComplexMatrix2 {
        Matrix2::new(c(0.3, 0.1), c(-0.7, 0.2), c(0.5, -0.4), c(1.1, 0.6))
    }

    #[test]
    fn spin_zero_is_one() {
        let d = wigner_d(SpinLabel::new(0), &sample());
        assert_eq!(d.entries, vec![c(1.0, 0.0)]);
    }

    #[test]
    fn spin_half_reproduces_matrix() {
        let x = sample();
        let d = wigner_d(SpinLabel::new(1), &x);
        assert_eq!(d.at(0, 0), x[(0, 0)]);
        assert_eq!(d.at(0, 1), x[(0, 1)]);
        assert_eq!(d.at(1, 0), x[(1, 0)]);
        assert_eq!(d.at(1, 1), x[(1, 1)]);
        assert_eq!(d.get(1, -1), x[(0, 1)]);
    }

    #[test]
    fn identity_maps_to_identity() {
        for tj in 0..8 {
            let d = wigner_d(SpinLabel::new(tj), &ComplexMatrix2::identity());
            let n = tj as usize + 1;
            for r in 0..n {
                for col in 0..n {
                    let e = if r == col { 1.0 } else { 0.0 };
                    assert!((d.at(r, col) - c(e, 0.0)).norm() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn character_examples() {
        let x = Matrix2::new(c(2.0, 1.0), c(0.0, 0.0), c(0.0, 0.0), c(-0.5, 0.0));
        assert!((wigner_character(SpinLabel::new(1), &x) - c(1.5, 1.0)).norm() < 1e-15);
        assert!((wigner_character(SpinLabel::new(5), &ComplexMatrix2::identity()) - c(6.0, 0.0)).norm() < 1e-15);
        assert_eq!(wigner_character(SpinLabel::new(3), &ComplexMatrix2::zeros()), c(0.0, 0.0));
    }

    #[test]
    fn out_of_range_labels_are_empty() {
        assert!(wigner_terms(2, 4, 0).is_empty());
        assert!(wigner_terms(2, 1, 0).is_empty());
        assert_eq!(SpinLabel::new(3).position(-3), Some(3));
        assert_eq!(SpinLabel::new(3).position(2), None);
    }

    #[test]
    fn large_spin_stays_finite() {
        let x = Matrix2::new(c(0.6, 0.0), c(0.1, 0.2), c(-0.2, 0.1), c(0.5, -0.1));
        let d = wigner_d(SpinLabel::new(60), &x);
        assert!(d.entries.iter().all(|v| v.re.is_finite() && v.im.is_finite()));
    }
}
