//! Matrix conventions, group elements and the geometry of D₄.
//!
//! Weyl basis: `γ^μ = [[0, σ^μ], [σ̌^μ, 0]]` with `σ̌^μ = η_{μμ}σ^μ`, and
//! `γ⁵ = diag(−σ⁰, σ⁰)` plays the role of the U(2,2) metric `Γ`.

use std::sync::OnceLock;

use nalgebra::{Matrix2, Matrix4, SMatrix, SVector};
use serde_json::{json, Value};

use crate::{json as cj, Error, Result, C64};

pub type ComplexMatrix2 = Matrix2<C64>;
pub type ComplexMatrix4 = Matrix4<C64>;

/// Minkowski metric diag(1, −1, −1, −1).
pub const ETA: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// Eigenvalue floor for principal square roots of positive matrices.
pub const EIGEN_FLOOR: f64 = 1e-13;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Pauli matrix σ^μ (σ⁰ = identity).
pub fn sigma(mu: usize) -> ComplexMatrix2 {
    match mu {
        0 => Matrix2::new(ONE, ZERO, ZERO, ONE),
        1 => Matrix2::new(ZERO, ONE, ONE, ZERO),
        2 => Matrix2::new(ZERO, -I, I, ZERO),
        3 => Matrix2::new(ONE, ZERO, ZERO, -ONE),
        _ => panic!("sigma index {mu} out of range"),
    }
}

/// σ_μ = η_{μμ} σ^μ.
pub fn sigma_lower(mu: usize) -> ComplexMatrix2 {
    sigma(mu) * c(ETA[mu])
}

/// Z = z_μ σ^μ.
pub fn matrix_from_z(z: [C64; 4]) -> ComplexMatrix2 {
    (0..4).fold(ComplexMatrix2::zeros(), |acc, mu| acc + sigma(mu) * z[mu])
}

/// z_μ = tr(Z σ^μ) / 2.
pub fn z_from_matrix(m: &ComplexMatrix2) -> [C64; 4] {
    std::array::from_fn(|mu| (m * sigma(mu)).trace() * 0.5)
}

/// z^μ = η^{μμ} z_μ.
pub fn z_upper(z: [C64; 4]) -> [C64; 4] {
    std::array::from_fn(|mu| z[mu] * ETA[mu])
}

pub fn block(
    a: &ComplexMatrix2,
    b: &ComplexMatrix2,
    cm: &ComplexMatrix2,
    d: &ComplexMatrix2,
) -> ComplexMatrix4 {
    let mut g = ComplexMatrix4::zeros();
    g.fixed_view_mut::<2, 2>(0, 0).copy_from(a);
    g.fixed_view_mut::<2, 2>(0, 2).copy_from(b);
    g.fixed_view_mut::<2, 2>(2, 0).copy_from(cm);
    g.fixed_view_mut::<2, 2>(2, 2).copy_from(d);
    g
}

pub fn block_diag(v1: &ComplexMatrix2, v2: &ComplexMatrix2) -> ComplexMatrix4 {
    let z = ComplexMatrix2::zeros();
    block(v1, &z, &z, v2)
}

/// γ⁵ = diag(−1, −1, 1, 1).
pub fn gamma5() -> ComplexMatrix4 {
    ComplexMatrix4::from_diagonal(&SVector::from([-ONE, -ONE, ONE, ONE]))
}

#[derive(Debug, Clone)]
pub struct Gammas {
    pub gamma: [ComplexMatrix4; 4],
    pub gamma5: ComplexMatrix4,
}

pub fn gamma_matrices() -> Gammas {
    let z = ComplexMatrix2::zeros();
    Gammas {
        gamma: std::array::from_fn(|mu| block(&z, &sigma(mu), &(sigma(mu) * c(ETA[mu])), &z)),
        gamma5: gamma5(),
    }
}

/// The conformal generators of u(2,2) as 4×4 matrices.
#[derive(Debug, Clone)]
pub struct ConformalGenerators {
    pub d: ComplexMatrix4,
    pub p: [ComplexMatrix4; 4],
    pub k: [ComplexMatrix4; 4],
    /// `m[μ][ν] = [γ^μ, γ^ν] / 4`.
    pub m: [[ComplexMatrix4; 4]; 4],
    pub identity: ComplexMatrix4,
}

pub fn conformal_generators() -> ConformalGenerators {
    let g = gamma_matrices();
    let z = ComplexMatrix2::zeros();
    ConformalGenerators {
        d: g.gamma5 * c(0.5),
        p: std::array::from_fn(|mu| block(&z, &sigma(mu), &z, &z)),
        k: std::array::from_fn(|mu| block(&z, &z, &(sigma(mu) * c(ETA[mu])), &z)),
        m: std::array::from_fn(|mu| {
            std::array::from_fn(|nu| {
                (g.gamma[mu] * g.gamma[nu] - g.gamma[nu] * g.gamma[mu]) * c(0.25)
            })
        }),
        identity: ComplexMatrix4::identity(),
    }
}

/// The sixteen generators in a fixed order, with display names.
pub fn generator_basis() -> Vec<(String, ComplexMatrix4)> {
    let g = conformal_generators();
    let mut out = vec![("I".to_string(), g.identity), ("D".to_string(), g.d)];
    for mu in 0..4 {
        out.push((format!("P{mu}"), g.p[mu]));
    }
    for mu in 0..4 {
        out.push((format!("K{mu}"), g.k[mu]));
    }
    for mu in 0..4 {
        for nu in mu + 1..4 {
            out.push((format!("M{mu}{nu}"), g.m[mu][nu]));
        }
    }
    out
}

/// `[X_a, X_b] = Σ_c f[a][b][c] X_c` over [`generator_basis`].
#[derive(Debug, Clone)]
pub struct StructureConstants {
    pub names: Vec<String>,
    pub f: Vec<Vec<[f64; 16]>>,
    /// Largest matrix residual of the expansion.
    pub residual: f64,
    /// Largest imaginary part discarded from the coefficients.
    pub max_imag: f64,
}

pub fn structure_constants() -> &'static StructureConstants {
    static CACHE: OnceLock<StructureConstants> = OnceLock::new();
    CACHE.get_or_init(|| {
        let basis = generator_basis();
        let mut b = SMatrix::<C64, 16, 16>::zeros();
        for (col, (_, x)) in basis.iter().enumerate() {
            for (row, v) in x.iter().enumerate() {
                b[(row, col)] = *v;
            }
        }
        let lu = b.lu();
        let mut f = vec![vec![[0.0; 16]; 16]; 16];
        let (mut residual, mut max_imag) = (0.0f64, 0.0f64);
        for (ia, (_, xa)) in basis.iter().enumerate() {
            for (ib, (_, xb)) in basis.iter().enumerate() {
                let comm = xa * xb - xb * xa;
                let rhs = SVector::<C64, 16>::from_iterator(comm.iter().copied());
                let sol = lu.solve(&rhs).expect("generator basis is linearly independent");
                let mut recon = ComplexMatrix4::zeros();
                for (ic, (_, xc)) in basis.iter().enumerate() {
                    max_imag = max_imag.max(sol[ic].im.abs());
                    f[ia][ib][ic] = sol[ic].re;
                    recon += xc * c(sol[ic].re);
                }
                residual = residual.max(max_abs4(&(recon - comm)));
            }
        }
        StructureConstants {
            names: basis.into_iter().map(|(n, _)| n).collect(),
            f,
            residual,
            max_imag,
        }
    })
}

pub fn max_abs2(m: &ComplexMatrix2) -> f64 {
    m.iter().fold(0.0, |a, v| a.max(v.norm()))
}

pub fn max_abs4(m: &ComplexMatrix4) -> f64 {
    m.iter().fold(0.0, |a, v| a.max(v.norm()))
}

/// Eigenvalues of a hermitian 2×2 matrix, ascending.
pub fn hermitian_eigenvalues(m: &ComplexMatrix2) -> [f64; 2] {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let b = m[(0, 1)];
    let mean = 0.5 * (a + d);
    let r = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    [mean - r, mean + r]
}

/// M^p for hermitian positive-definite M, via eigendecomposition.
pub fn hermitian_power(m: &ComplexMatrix2, p: f64) -> Result<ComplexMatrix2> {
    let eig = m.symmetric_eigen();
    if eig.eigenvalues.iter().any(|&l| l < EIGEN_FLOOR) {
        return Err(Error::DomainViolation(format!(
            "matrix not positive definite (eigenvalues {:?})",
            eig.eigenvalues.as_slice()
        )));
    }
    let d = ComplexMatrix2::from_diagonal(&eig.eigenvalues.map(|l| c(l.powf(p))));
    Ok(eig.eigenvectors * d * eig.eigenvectors.adjoint())
}

fn inverse2(m: &ComplexMatrix2, what: &str) -> Result<ComplexMatrix2> {
    let det = m.determinant();
    let scale = max_abs2(m).max(1.0);
    if det.norm() <= 1e-14 * scale * scale {
        return Err(Error::SingularMatrix(what.to_string()));
    }
    Ok(Matrix2::new(m[(1, 1)], -m[(0, 1)], -m[(1, 0)], m[(0, 0)]) / det)
}

/// det(σ⁰ − Z†Z), real for any Z.
pub fn defect_det(z: &ComplexMatrix2) -> f64 {
    (ComplexMatrix2::identity() - z.adjoint() * z).determinant().re
}

/// True iff both eigenvalues of σ⁰ − Z†Z exceed `margin`.
pub fn in_cartan_domain_margin(z: &ComplexMatrix2, margin: f64) -> bool {
    let ev = hermitian_eigenvalues(&(ComplexMatrix2::identity() - z.adjoint() * z));
    ev[0] > margin
}

pub fn in_cartan_domain(z: &ComplexMatrix2) -> bool {
    in_cartan_domain_margin(z, 0.0)
}

/// A point of D₄.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CartanPoint(ComplexMatrix2);

impl CartanPoint {
    pub fn new(z: ComplexMatrix2) -> Result<Self> {
        if !in_cartan_domain(&z) {
            return Err(Error::DomainViolation(format!(
                "sigma0 - Z^dag Z is not positive definite for Z = {z}"
            )));
        }
        Ok(Self(z))
    }

    pub fn from_z(z: [C64; 4]) -> Result<Self> {
        Self::new(matrix_from_z(z))
    }

    pub fn origin() -> Self {
        Self(ComplexMatrix2::zeros())
    }

    pub fn matrix(&self) -> &ComplexMatrix2 {
        &self.0
    }

    pub fn z(&self) -> [C64; 4] {
        z_from_matrix(&self.0)
    }

    pub fn defect_det(&self) -> f64 {
        defect_det(&self.0)
    }

    pub fn to_json(&self) -> Value {
        json!({ "Z": cj::matrix(self.0.transpose().iter()) })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let e = cj::parse_matrix(&v["Z"], 4)?;
        Self::new(Matrix2::new(e[0], e[1], e[2], e[3]))
    }
}

/// Element of U(2,2) in block form `[[A, B], [C, D]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupElement {
    pub a: ComplexMatrix2,
    pub b: ComplexMatrix2,
    pub c: ComplexMatrix2,
    pub d: ComplexMatrix2,
}

/// Default tolerance for the pseudo-unitarity checks.
pub const GROUP_TOL: f64 = 1e-10;

impl GroupElement {
    pub fn identity() -> Self {
        Self::from_matrix_unchecked(&ComplexMatrix4::identity())
    }

    pub fn from_matrix_unchecked(g: &ComplexMatrix4) -> Self {
        Self {
            a: g.fixed_view::<2, 2>(0, 0).into_owned(),
            b: g.fixed_view::<2, 2>(0, 2).into_owned(),
            c: g.fixed_view::<2, 2>(2, 0).into_owned(),
            d: g.fixed_view::<2, 2>(2, 2).into_owned(),
        }
    }

    /// Validates g†Γg = Γ to `tol`.
    pub fn from_matrix(g: &ComplexMatrix4, tol: f64) -> Result<Self> {
        let out = Self::from_matrix_unchecked(g);
        out.validate(tol)?;
        Ok(out)
    }

    pub fn block_diag(v1: &ComplexMatrix2, v2: &ComplexMatrix2) -> Self {
        Self::from_matrix_unchecked(&block_diag(v1, v2))
    }

    pub fn matrix(&self) -> ComplexMatrix4 {
        block(&self.a, &self.b, &self.c, &self.d)
    }

    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        Self::from_matrix_unchecked(&(self.matrix() * other.matrix()))
    }

    pub fn inverse(&self) -> GroupElement {
        // g⁻¹ = Γ g† Γ
        let g5 = gamma5();
        Self::from_matrix_unchecked(&(g5 * self.matrix().adjoint() * g5))
    }

    /// max |g†Γg − Γ|.
    pub fn pseudo_unitarity_residual(&self) -> f64 {
        let g = self.matrix();
        let g5 = gamma5();
        max_abs4(&(g.adjoint() * g5 * g - g5))
    }

    /// Residuals of D†D − B†B = σ⁰, A†A − C†C = σ⁰, A†B − C†D = 0.
    pub fn block_residuals(&self) -> [f64; 3] {
        let id = ComplexMatrix2::identity();
        let (a, b, cm, d) = (&self.a, &self.b, &self.c, &self.d);
        [
            max_abs2(&(d.adjoint() * d - b.adjoint() * b - id)),
            max_abs2(&(a.adjoint() * a - cm.adjoint() * cm - id)),
            max_abs2(&(a.adjoint() * b - cm.adjoint() * d)),
        ]
    }

    pub fn validate(&self, tol: f64) -> Result<()> {
        let r = self.pseudo_unitarity_residual();
        if r > tol {
            return Err(Error::DomainViolation(format!(
                "g^dag Gamma g != Gamma (residual {r:e})"
            )));
        }
        Ok(())
    }

    /// Optional SU(2,2) check.
    pub fn has_unit_determinant(&self, tol: f64) -> bool {
        (self.matrix().determinant().norm() - 1.0).abs() <= tol
    }

    pub fn to_json(&self) -> Value {
        json!({ "g": cj::matrix(self.matrix().transpose().iter()) })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let e = cj::parse_matrix(&v["g"], 16)?;
        let g = ComplexMatrix4::from_row_slice(&e);
        Self::from_matrix(&g, GROUP_TOL)
    }
}

/// Coset representative of Z: A = Δ₁, B = ZΔ₂, C = Z†Δ₁, D = Δ₂.
pub fn make_group_element(z: &CartanPoint) -> Result<GroupElement> {
    let z = z.matrix();
    let id = ComplexMatrix2::identity();
    let d1 = hermitian_power(&(id - z * z.adjoint()), -0.5)?;
    let d2 = hermitian_power(&(id - z.adjoint() * z), -0.5)?;
    Ok(GroupElement {
        a: d1,
        b: z * d2,
        c: z.adjoint() * d1,
        d: d2,
    })
}

/// A point of the tube T₄: W = X + iY with Y > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TubePoint(ComplexMatrix2);

impl TubePoint {
    pub fn new(w: ComplexMatrix2) -> Result<Self> {
        let y = Self::imag_part_of(&w);
        if hermitian_eigenvalues(&y)[0] <= 0.0 {
            return Err(Error::DomainViolation("Im W is not positive definite".into()));
        }
        Ok(Self(w))
    }

    fn imag_part_of(w: &ComplexMatrix2) -> ComplexMatrix2 {
        (w - w.adjoint()) / C64::new(0.0, 2.0)
    }

    pub fn matrix(&self) -> &ComplexMatrix2 {
        &self.0
    }

    /// X = (W + W†)/2.
    pub fn real_part(&self) -> ComplexMatrix2 {
        (self.0 + self.0.adjoint()) * c(0.5)
    }

    /// Y = (W − W†)/(2i).
    pub fn imag_part(&self) -> ComplexMatrix2 {
        Self::imag_part_of(&self.0)
    }
}

/// W(Z) = i(σ⁰ − Z)(σ⁰ + Z)⁻¹.
pub fn cayley(z: &CartanPoint) -> Result<TubePoint> {
    let id = ComplexMatrix2::identity();
    let inv = inverse2(&(id + z.matrix()), "sigma0 + Z")?;
    TubePoint::new((id - z.matrix()) * inv * I)
}

/// Z(W) = (σ⁰ − iW)⁻¹(σ⁰ + iW).
pub fn cayley_inverse(w: &TubePoint) -> Result<CartanPoint> {
    let id = ComplexMatrix2::identity();
    let inv = inverse2(&(id - w.matrix() * I), "sigma0 - iW")?;
    CartanPoint::new(inv * (id + w.matrix() * I))
}

#[derive(Debug, Clone, Copy)]
pub struct Iwasawa {
    pub z: CartanPoint,
    pub u1: ComplexMatrix2,
    pub u2: ComplexMatrix2,
}

impl Iwasawa {
    /// make_group_element(Z) · blockdiag(U₁, U₂).
    pub fn reassemble(&self) -> Result<GroupElement> {
        let coset = make_group_element(&self.z)?;
        Ok(coset.compose(&GroupElement::block_diag(&self.u1, &self.u2)))
    }
}

/// g = coset(Z) · blockdiag(U₁, U₂).
pub fn iwasawa(g: &GroupElement) -> Result<Iwasawa> {
    let dinv = inverse2(&g.d, "D block")?;
    let z = CartanPoint::new(g.b * dinv)?;
    let id = ComplexMatrix2::identity();
    let zm = z.matrix();
    let delta1_inv = hermitian_power(&(id - zm * zm.adjoint()), 0.5)?;
    let delta2_inv = hermitian_power(&(id - zm.adjoint() * zm), 0.5)?;
    Ok(Iwasawa {
        z,
        u1: delta1_inv * g.a,
        u2: delta2_inv * g.d,
    })
}

/// Υ = (1/√2)[[σ⁰, −σ⁰], [σ⁰, σ⁰]].
pub fn upsilon() -> ComplexMatrix4 {
    let s = c(std::f64::consts::FRAC_1_SQRT_2);
    let id = ComplexMatrix2::identity() * s;
    block(&id, &(-id), &id, &id)
}

/// f = ΥgΥ⁻¹, the realization preserving γ⁰ instead of γ⁵.
pub fn to_tube_realization(g: &GroupElement) -> ComplexMatrix4 {
    let u = upsilon();
    u * g.matrix() * u.adjoint()
}

/// c_λ = (λ−1)(λ−2)²(λ−3)/π⁴.
pub fn c_lambda(lambda: i64) -> f64 {
    let l = lambda as f64;
    (l - 1.0) * (l - 2.0) * (l - 2.0) * (l - 3.0) / std::f64::consts::PI.powi(4)
}

/// det(σ⁰ − Z†Z)^{−4}.
pub fn measure_density_invariant(z: &ComplexMatrix2) -> Result<f64> {
    if !in_cartan_domain(z) {
        return Err(Error::DomainViolation("Z outside D4".into()));
    }
    Ok(defect_det(z).powi(-4))
}

/// c_λ det(σ⁰ − Z†Z)^{λ−4}.
pub fn measure_density_lambda(z: &ComplexMatrix2, lambda: i64) -> Result<f64> {
    if lambda <= 3 {
        return Err(Error::InvalidScaleDimension {
            lambda,
            reason: "normalized measure needs lambda >= 4",
        });
    }
    if !in_cartan_domain(z) {
        return Err(Error::DomainViolation("Z outside D4".into()));
    }
    Ok(c_lambda(lambda) * defect_det(z).powi((lambda - 4) as i32))
}

/// Random interior point with operator norm uniform in [0, max_norm).
pub fn random_point(rng: &mut impl rand::Rng, max_norm: f64) -> CartanPoint {
    let mut m = ComplexMatrix2::from_fn(|_, _| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
    let norm = hermitian_eigenvalues(&(m.adjoint() * m))[1].sqrt().max(1e-300);
    m *= c(max_norm * rng.random::<f64>() / norm);
    CartanPoint(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(a: f64, b: f64) -> ComplexMatrix2 {
        Matrix2::new(c(a), ZERO, ZERO, c(b))
    }

    #[test]
    fn gamma5_from_product() {
        let g = gamma_matrices();
        let prod = g.gamma[0] * g.gamma[1] * g.gamma[2] * g.gamma[3] * I;
        assert!(max_abs4(&(prod - g.gamma5)) < 1e-15);
    }

    #[test]
    fn dilation_squares_to_quarter() {
        let g = conformal_generators();
        assert!(max_abs4(&(g.d * g.d - ComplexMatrix4::identity() * c(0.25))) == 0.0);
        for mu in 0..4 {
            assert_eq!(g.p[mu].trace(), ZERO);
        }
    }

    #[test]
    fn k_p_commutator() {
        let g = conformal_generators();
        for mu in 0..4 {
            for nu in 0..4 {
                let lhs = g.k[mu] * g.p[nu] - g.p[nu] * g.k[mu];
                // lower indices: K_μ = η K^μ, M_{μν} = η η M^{μν}
                let lhs = lhs * c(ETA[mu] * ETA[nu]);
                let eta = if mu == nu { ETA[mu] } else { 0.0 };
                let rhs = (g.d * c(eta) + g.m[mu][nu] * c(ETA[mu] * ETA[nu])) * c(2.0);
                assert!(max_abs4(&(lhs - rhs)) < 1e-15, "mu={mu} nu={nu}");
            }
        }
    }

    #[test]
    fn structure_constants_close() {
        let sc = structure_constants();
        assert!(sc.residual < 1e-12);
        assert!(sc.max_imag < 1e-12);
        assert_eq!(sc.names.len(), 16);
    }

    #[test]
    fn domain_membership() {
        assert!(in_cartan_domain(&ComplexMatrix2::zeros()));
        assert!(!in_cartan_domain(&ComplexMatrix2::identity()));
        assert!(!in_cartan_domain(&(ComplexMatrix2::identity() * c(1.1))));
        assert!(in_cartan_domain_margin(&diag(0.5, 0.0), 0.7));
        assert!(!in_cartan_domain_margin(&diag(0.5, 0.0), 0.8));
    }

    #[test]
    fn group_element_at_origin_and_diag() {
        let g = make_group_element(&CartanPoint::origin()).unwrap();
        assert_eq!(g.matrix(), ComplexMatrix4::identity());
        let g = make_group_element(&CartanPoint::new(diag(0.5, 0.0)).unwrap()).unwrap();
        let d = 2.0 / 3f64.sqrt();
        assert!(max_abs2(&(g.a - diag(d, 1.0))) < 1e-15);
        assert!(max_abs2(&(g.d - diag(d, 1.0))) < 1e-15);
        assert!(max_abs2(&(g.b - diag(0.5 * d, 0.0))) < 1e-15);
    }

    #[test]
    fn rejects_boundary() {
        assert!(CartanPoint::new(ComplexMatrix2::identity()).is_err());
        assert!(matches!(
            measure_density_lambda(&ComplexMatrix2::zeros(), 3),
            Err(Error::InvalidScaleDimension { .. })
        ));
    }

    #[test]
    fn cayley_of_origin() {
        let w = cayley(&CartanPoint::origin()).unwrap();
        assert!(max_abs2(&(w.matrix() - ComplexMatrix2::identity() * I)) < 1e-15);
        assert!(max_abs2(&w.real_part()) < 1e-15);
    }

    #[test]
    fn measure_constants() {
        assert!((c_lambda(4) - 12.0 / std::f64::consts::PI.powi(4)).abs() < 1e-15);
        assert!((c_lambda(4) - 0.12319179).abs() < 1e-8);
        let z = diag(0.5, 0.0);
        let v = measure_density_lambda(&z, 5).unwrap();
        assert!((v - c_lambda(5) * 0.75).abs() < 1e-15);
        assert!((measure_density_lambda(&z, 4).unwrap() - c_lambda(4)).abs() < 1e-15);
        assert!((measure_density_invariant(&z).unwrap() - 0.75f64.powi(-4)).abs() < 1e-12);
    }

    #[test]
    fn upsilon_maps_metric_to_gamma0() {
        let g = make_group_element(&CartanPoint::new(diag(0.3, -0.2)).unwrap()).unwrap();
        let f = to_tube_realization(&g);
        let g0 = gamma_matrices().gamma[0];
        assert!(max_abs4(&(f.adjoint() * g0 * f - g0)) < 1e-12);
    }

    #[test]
    fn json_roundtrip() {
        let z = CartanPoint::new(Matrix2::new(c(0.1), I * 0.2, c(-0.1), c(0.3))).unwrap();
        let back = CartanPoint::from_json(&z.to_json()).unwrap();
        assert_eq!(z, back);
        let g = make_group_element(&z).unwrap();
        let back = GroupElement::from_json(&g.to_json()).unwrap();
        assert!(max_abs4(&(g.matrix() - back.matrix())) < 1e-15);
        let bad = json!({ "Z": [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [1.0, 0.0]] });
        assert!(CartanPoint::from_json(&bad).is_err());
    }
}
