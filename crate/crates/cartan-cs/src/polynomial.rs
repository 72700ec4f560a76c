//! Sparse polynomials in four complex variables.
//!
//! By default the variables are the z_μ of Z = z_μσ^μ. The same type also
//! carries polynomials in the matrix entries (z₁₁, z₁₂, z₂₁, z₂₂); the
//! conversions between the two are linear substitutions.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::{json, Value};

use crate::{json as cj, Error, Result, C64};

/// Coefficients below this are dropped.
pub const PRUNE: f64 = 1e-14;

pub type Exponents = [u32; 4];

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Polynomial {
    terms: BTreeMap<Exponents, C64>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: C64) -> Self {
        Self::monomial([0; 4], c)
    }

    pub fn one() -> Self {
        Self::constant(C64::new(1.0, 0.0))
    }

    pub fn monomial(e: Exponents, c: C64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p.prune();
        p
    }

    /// The variable with index `mu`.
    pub fn var(mu: usize) -> Self {
        let mut e = [0; 4];
        e[mu] = 1;
        Self::monomial(e, C64::new(1.0, 0.0))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Exponents, C64)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p.prune();
        p
    }

    fn add_term(&mut self, e: Exponents, c: C64) {
        *self.terms.entry(e).or_default() += c;
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| c.norm() >= PRUNE);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &C64)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exponents) -> C64 {
        self.terms.get(e).copied().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self, deg: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == deg)
    }

    pub fn scale(&self, c: C64) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, v)| (*e, v * c)))
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// ∂/∂x_mu.
    pub fn derivative(&self, mu: usize) -> Self {
        Self::from_terms(self.terms.iter().filter(|(e, _)| e[mu] > 0).map(|(e, v)| {
            let mut f = *e;
            f[mu] -= 1;
            (f, v * e[mu] as f64)
        }))
    }

    /// Multiplication by the variable x_mu.
    pub fn times_var(&self, mu: usize) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, v)| {
            let mut f = *e;
            f[mu] += 1;
            (f, *v)
        }))
    }

    pub fn eval(&self, x: [C64; 4]) -> C64 {
        let maxdeg = self.terms.keys().flat_map(|e| e.iter()).copied().max().unwrap_or(0);
        let powers: Vec<Vec<C64>> = x
            .iter()
            .map(|&v| {
                let mut p = vec![C64::new(1.0, 0.0); maxdeg as usize + 1];
                for k in 1..p.len() {
                    p[k] = p[k - 1] * v;
                }
                p
            })
            .collect();
        self.terms
            .iter()
            .map(|(e, c)| {
                c * powers[0][e[0] as usize]
                    * powers[1][e[1] as usize]
                    * powers[2][e[2] as usize]
                    * powers[3][e[3] as usize]
            })
            .sum()
    }

    /// Substitutes x_mu ↦ Σ_ν forms[mu][ν] y_ν.
    pub fn substitute_linear(&self, forms: &[[C64; 4]; 4]) -> Self {
        let lin: Vec<Polynomial> = forms
            .iter()
            .map(|f| Self::from_terms((0..4).map(|nu| (unit(nu), f[nu]))))
            .collect();
        let mut cache: Vec<Vec<Polynomial>> = lin.iter().map(|l| vec![Self::one(), l.clone()]).collect();
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut t = Self::constant(*c);
            for mu in 0..4 {
                while cache[mu].len() <= e[mu] as usize {
                    let next = cache[mu].last().unwrap() * &lin[mu];
                    cache[mu].push(next);
                }
                t = &t * &cache[mu][e[mu] as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Rewrites a polynomial in z_μ in the entries (z₁₁, z₁₂, z₂₁, z₂₂).
    pub fn z_to_entries(&self) -> Self {
        let h = C64::new(0.5, 0.0);
        let ih = C64::new(0.0, 0.5);
        let o = C64::new(0.0, 0.0);
        // z0 = (z11+z22)/2, z1 = (z12+z21)/2, z2 = i(z12−z21)/2, z3 = (z11−z22)/2
        self.substitute_linear(&[[h, o, o, h], [o, h, h, o], [o, ih, -ih, o], [h, o, o, -h]])
    }

    /// Rewrites a polynomial in the entries (z₁₁, z₁₂, z₂₁, z₂₂) in z_μ.
    pub fn entries_to_z(&self) -> Self {
        let one = C64::new(1.0, 0.0);
        let i = C64::new(0.0, 1.0);
        let o = C64::new(0.0, 0.0);
        // z11 = z0+z3, z12 = z1−iz2, z21 = z1+iz2, z22 = z0−z3
        self.substitute_linear(&[[one, o, o, one], [o, one, -i, o], [o, one, i, o], [one, o, o, -one]])
    }

    pub fn max_abs_diff(&self, other: &Polynomial) -> f64 {
        (self - other).terms.values().fold(0.0, |a, c| a.max(c.norm()))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(e, c)| json!({ "exponents": e, "coeff": cj::complex(*c) }))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::InvalidIndex("polynomial must be a JSON array".into()))?;
        let mut terms = Vec::with_capacity(arr.len());
        for t in arr {
            let e: Exponents = serde_json::from_value(t["exponents"].clone())?;
            terms.push((e, cj::parse_complex(&t["coeff"])?));
        }
        Ok(Self::from_terms(terms))
    }
}

fn unit(mu: usize) -> Exponents {
    let mut e = [0; 4];
    e[mu] = 1;
    e
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, *c);
        }
        out.prune();
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out.prune();
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(C64::new(-1.0, 0.0))
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e = std::array::from_fn(|k| e1[k] + e2[k]);
                out.add_term(e, c1 * c2);
            }
        }
        out.prune();
        out
    }
}

impl Mul<C64> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: C64) -> Polynomial {
        self.scale(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn arithmetic_and_eval() {
        let x = Polynomial::var(0);
        let y = Polynomial::var(1);
        let p = &(&x + &y) * &(&x - &y);
        assert_eq!(p.len(), 2);
        assert!(p.is_homogeneous(2));
        let v = p.eval([c(2.0, 0.0), c(1.0, 1.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert!((v - (c(4.0, 0.0) - c(1.0, 1.0) * c(1.0, 1.0))).norm() < 1e-15);
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn derivative_of_power() {
        let p = Polynomial::var(2).pow(3);
        let d = p.derivative(2);
        assert_eq!(d.coeff(&[0, 0, 2, 0]), c(3.0, 0.0));
        assert!(p.derivative(0).is_zero());
    }

    #[test]
    fn coordinate_change_roundtrip() {
        let p = Polynomial::from_terms([([1, 2, 0, 1], c(1.0, -0.5)), ([0, 0, 3, 1], c(0.25, 2.0))]);
        let back = p.z_to_entries().entries_to_z();
        assert!(back.max_abs_diff(&p) < 1e-13);
    }

    #[test]
    fn det_in_entries_is_minkowski_square() {
        // z11 z22 − z12 z21 = z0² − z1² − z2² − z3²
        let det = Polynomial::from_terms([([1, 0, 0, 1], c(1.0, 0.0)), ([0, 1, 1, 0], c(-1.0, 0.0))]);
        let z = det.entries_to_z();
        let expect = Polynomial::from_terms([
            ([2, 0, 0, 0], c(1.0, 0.0)),
            ([0, 2, 0, 0], c(-1.0, 0.0)),
            ([0, 0, 2, 0], c(-1.0, 0.0)),
            ([0, 0, 0, 2], c(-1.0, 0.0)),
        ]);
        assert!(z.max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn json_roundtrip() {
        let p = Polynomial::from_terms([([1, 0, 0, 0], c(1.0, 2.0))]);
        let v = p.to_json();
        assert_eq!(v.to_string(), r#"[{"coeff":[1.0,2.0],"exponents":[1,0,0,0]}]"#);
        assert_eq!(Polynomial::from_json(&v).unwrap(), p);
    }
}
