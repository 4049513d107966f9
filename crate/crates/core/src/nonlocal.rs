//! Floating-point two-qubit invariants: the non-local parameters (a, b, c)
//! of U ~ e^{i(aXX + bYY + cZZ)} and the entangling power.
//!
//! The float layer uses the standard Pauli Y (Hermitian), not the real
//! Y = ZX of the exact layer. The magic basis is the Q gate.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt;

use nalgebra::{Matrix2, Matrix4, SymmetricEigen, Vector2, Vector4};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gates::make_gate;
use crate::linalg::DenseMatrix;

pub type Mat4 = Matrix4<Complex64>;

pub const DEFAULT_TOL: f64 = 1e-9;

/// Non-local parameters in the Weyl chamber π/4 ≥ a ≥ b ≥ |c|, with c ≥ 0
/// whenever a = π/4.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NonlocalParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

fn fold(x: f64, tol: f64) -> f64 {
    let mut y = x.rem_euclid(FRAC_PI_2);
    if y > FRAC_PI_4 + tol {
        y -= FRAC_PI_2;
    }
    if (y + FRAC_PI_4).abs() <= tol {
        y = FRAC_PI_4;
    }
    y
}

fn snap(x: f64, tol: f64) -> f64 {
    if x.abs() <= tol {
        0.0
    } else if (x - FRAC_PI_4).abs() <= tol {
        FRAC_PI_4
    } else {
        x
    }
}

impl NonlocalParams {
    /// Maps any (a, b, c) to its Weyl chamber representative.
    pub fn canonical(a: f64, b: f64, c: f64, tol: f64) -> NonlocalParams {
        let mut v = [fold(a, tol), fold(b, tol), fold(c, tol)];
        let sign = v.iter().map(|x| if x.abs() <= tol { 1.0 } else { x.signum() }).product::<f64>();
        v.iter_mut().for_each(|x| *x = x.abs());
        v.sort_by(|x, y| y.total_cmp(x));
        let [a, b, c] = v.map(|x| snap(x, tol));
        let c = if a == FRAC_PI_4 || c == 0.0 { c } else { sign * c };
        NonlocalParams { a, b, c }
    }

    pub fn approx_eq(&self, other: &NonlocalParams, tol: f64) -> bool {
        (self.a - other.a).abs() <= tol && (self.b - other.b).abs() <= tol && (self.c - other.c).abs() <= tol
    }

    /// 1 − Π cos²2x − Π sin²2x over x ∈ {a, b, c}.
    pub fn entangling_power(&self) -> f64 {
        let v = [self.a, self.b, self.c].map(|x| 2.0 * x);
        1.0 - v.iter().map(|x| x.cos().powi(2)).product::<f64>() - v.iter().map(|x| x.sin().powi(2)).product::<f64>()
    }
}

impl fmt::Display for NonlocalParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = |x: f64| {
            let q = x / FRAC_PI_4;
            if (q - q.round()).abs() < 1e-9 {
                match q.round() as i64 {
                    0 => "0".to_string(),
                    1 => "π/4".to_string(),
                    -1 => "-π/4".to_string(),
                    k => format!("{k}π/4"),
                }
            } else {
                format!("{x:.6}")
            }
        };
        write!(f, "({}, {}, {})", r(self.a), r(self.b), r(self.c))
    }
}

pub fn complex_matrix(m: &DenseMatrix) -> Result<Mat4> {
    if m.rows() != 4 || m.cols() != 4 {
        return Err(Error::DimensionMismatch("expected a 4x4 matrix".into()));
    }
    Ok(Mat4::from_row_iterator(m.data().iter().map(|x| x.to_complex())))
}

fn magic_basis() -> Mat4 {
    complex_matrix(&make_gate("Q").expect("catalog gate")).expect("4x4")
}

fn is_unitary(u: &Mat4, tol: f64) -> bool {
    (u.adjoint() * u - Mat4::identity()).iter().all(|z| z.norm() <= tol)
}

/// Real orthogonal O with Oᵀ m O diagonal, for a complex symmetric unitary m.
fn diagonalize_symmetric_unitary(m: &Mat4, tol: f64) -> Result<Vector4<Complex64>> {
    let re = m.map(|z| z.re);
    let im = m.map(|z| z.im);
    // Re m and Im m commute; a generic combination separates their joint eigenspaces.
    for r in [0.618_033_988_749_895, 1.324_717_957_244_746, 0.381_966_011_250_105, -0.445_041_867_912_629] {
        let eig = SymmetricEigen::new(re + im * r);
        let o = eig.eigenvectors.map(|x| Complex64::new(x, 0.0));
        let d = o.transpose() * m * o;
        let off: f64 = (0..4).flat_map(|i| (0..4).map(move |j| (i, j))).filter(|(i, j)| i != j).map(|(i, j)| d[(i, j)].norm()).sum();
        if off <= tol.max(1e-12) * 100.0 {
            return Ok(d.diagonal());
        }
    }
    Err(Error::Numerical("could not diagonalize the magic-basis invariant".into()))
}

pub fn nonlocal_params(u: &Mat4, tol: f64) -> Result<NonlocalParams> {
    if !is_unitary(u, tol.max(1e-12) * 10.0) {
        return Err(Error::NonUnitary);
    }
    let det = u.determinant();
    let su = u / Complex64::from_polar(1.0, det.arg() / 4.0);
    let q = magic_basis();
    let ub = q.adjoint() * su * q;
    let m = ub.transpose() * ub;
    let d = diagonalize_symmetric_unitary(&m, tol)?;
    let mut theta: Vec<f64> = d.iter().map(|z| z.arg() / 2.0).collect();
    theta.sort_by(f64::total_cmp);
    // Bring the phases onto the branch with zero sum.
    let excess = (theta.iter().sum::<f64>() / PI).round() as i64;
    if excess > 0 {
        for t in theta.iter_mut().rev().take(excess as usize) {
            *t -= PI;
        }
    } else {
        for t in theta.iter_mut().take((-excess) as usize) {
            *t += PI;
        }
    }
    // θ = (a−b+c, −a+b+c, a+b−c, −a−b−c) up to a Weyl group permutation.
    let a = (theta[0] + theta[2]) / 2.0;
    let b = (theta[1] + theta[2]) / 2.0;
    let c = (theta[0] + theta[1]) / 2.0;
    Ok(NonlocalParams::canonical(a, b, c, tol.max(1e-7)))
}

pub fn nonlocal_params_exact(u: &DenseMatrix) -> Result<NonlocalParams> {
    nonlocal_params(&complex_matrix(u)?, DEFAULT_TOL)
}

pub fn entangling_power(u: &Mat4) -> Result<f64> {
    Ok(nonlocal_params(u, DEFAULT_TOL)?.entangling_power())
}

/// e^{i(aXX + bYY + cZZ)} with the Hermitian Y.
pub fn canonical_gate(a: f64, b: f64, c: f64) -> Mat4 {
    let i = Complex64::i();
    let one = Complex64::new(1.0, 0.0);
    let x = Matrix2::new(0.0.into(), one, one, 0.0.into());
    let y = Matrix2::new(0.0.into(), -i, i, 0.0.into());
    let z = Matrix2::new(one, 0.0.into(), 0.0.into(), -one);
    let kron = |p: &Matrix2<Complex64>| p.kronecker(p);
    // XX, YY, ZZ commute and square to I.
    [(a, kron(&x)), (b, kron(&y)), (c, kron(&z))]
        .iter()
        .fold(Mat4::identity(), |acc, (t, p)| acc * (Mat4::identity() * Complex64::new(t.cos(), 0.0) + p * (i * t.sin())))
}

/// A Haar-random single-qubit state.
pub fn haar_qubit<R: Rng + ?Sized>(rng: &mut R) -> Vector2<Complex64> {
    let z: f64 = rng.random_range(-1.0..=1.0);
    let phi: f64 = rng.random_range(0.0..2.0 * PI);
    Vector2::new(Complex64::new(((1.0 + z) / 2.0).sqrt(), 0.0), Complex64::from_polar(((1.0 - z) / 2.0).sqrt(), phi))
}

/// Linear entropy 1 − tr ρ_A² of a two-qubit pure state.
pub fn linear_entropy(psi: &Vector4<Complex64>) -> f64 {
    let m = Matrix2::new(psi[0], psi[1], psi[2], psi[3]);
    let rho = m * m.adjoint();
    1.0 - (rho * rho).trace().re
}

/// Mean linear entropy produced from Haar-random product inputs, scaled by
/// 9/2 so that CNOT scores 1.
pub fn entangling_power_oracle_with<R: Rng + ?Sized>(u: &Mat4, samples: usize, rng: &mut R) -> Result<f64> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    let mut sum = 0.0;
    for _ in 0..samples {
        let (p, q) = (haar_qubit(rng), haar_qubit(rng));
        sum += linear_entropy(&(u * p.kronecker(&q)));
    }
    Ok(4.5 * sum / samples as f64)
}

pub fn entangling_power_oracle(u: &Mat4, samples: usize, seed: u64) -> Result<f64> {
    entangling_power_oracle_with(u, samples, &mut ChaCha8Rng::seed_from_u64(seed))
}
