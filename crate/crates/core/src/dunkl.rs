//! The Dunkl operators and the operators built from them.
//!
//! `T_i f = d f / d x_i + sum_{alpha in R+} kappa(alpha) alpha_i
//! (f - f(sigma_alpha x)) / <alpha, x>` acts exactly on polynomials because
//! the difference quotient divides without remainder. The Dunkl-Dirac
//! operator `D_h = sum_i e_i T_i` factorizes the Dunkl Laplacian
//! (`Delta_h = -D_h^2 = sum_i T_i^2`), and the raising operator
//! `D_+ = D_h - 2x` generates the Hermite families. The degree-preserving
//! spherical part `Gamma_kappa` of `D_h` is implemented directly on
//! polynomials; for homogeneous `f` of degree `m` it satisfies the exact
//! identity `x D_h f + m f + Gamma_kappa f = 0`.

use num_traits::Zero;

use crate::clifford::Multivector;
use crate::error::{Error, Result};
use crate::multipoly::CPoly;
use crate::rat::rint;
use crate::reflection::ReflectionData;

/// A polynomial standing for `poly(x) * exp(-|x|^2)`.
///
/// The class is closed under `D_h`: the Gaussian commutes with every
/// reflection term because `|sigma_alpha x| = |x|`, and differentiating it
/// produces the `-2x` correction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussianDressed {
    pub poly: CPoly,
}

impl GaussianDressed {
    pub fn new(poly: CPoly) -> Self {
        GaussianDressed { poly }
    }
}

fn check_dims(rd: &ReflectionData, f: &CPoly) -> Result<()> {
    if rd.dim() != f.dim() {
        return Err(Error::DimensionMismatch(rd.dim(), f.dim()));
    }
    Ok(())
}

/// The Dunkl operator along axis `i` (1-based).
pub fn dunkl_t(rd: &ReflectionData, i: usize, f: &CPoly) -> Result<CPoly> {
    check_dims(rd, f)?;
    assert!(i >= 1 && i <= rd.dim(), "axis index out of range");
    let mut out = f.partial_derivative(i);
    for (alpha, kappa) in rd.positive_roots().iter().zip(rd.kappa_values()) {
        if kappa.is_zero() || alpha[i - 1].is_zero() {
            continue;
        }
        let dd = f.divided_difference(alpha)?;
        out = &out + &dd.scale(&(kappa * &alpha[i - 1]));
    }
    Ok(out)
}

/// `D_h f = sum_i e_i T_i f`.
///
/// The divided difference of each root is shared across the axes: the root
/// contribution to `D_h` is `kappa(alpha) * alpha * dd_alpha(f)` with
/// `alpha` embedded as a vector of the algebra.
pub fn dunkl_dirac(rd: &ReflectionData, f: &CPoly) -> Result<CPoly> {
    check_dims(rd, f)?;
    let d = rd.dim();
    let mut out = CPoly::zero(d);
    for i in 1..=d {
        out = &out + &f.partial_derivative(i).mul_mv_left(&Multivector::basis_vector(d, i));
    }
    for (alpha, kappa) in rd.positive_roots().iter().zip(rd.kappa_values()) {
        if kappa.is_zero() {
            continue;
        }
        let dd = f.divided_difference(alpha)?;
        let alpha_mv = Multivector::from_vector(alpha).scale(kappa);
        out = &out + &dd.mul_mv_left(&alpha_mv);
    }
    Ok(out)
}

/// `Delta_h f = sum_i T_i^2 f`, asserted against `-D_h(D_h f)`.
pub fn dunkl_laplacian(rd: &ReflectionData, f: &CPoly) -> Result<CPoly> {
    check_dims(rd, f)?;
    let mut out = CPoly::zero(rd.dim());
    for i in 1..=rd.dim() {
        out = &out + &dunkl_t(rd, i, &dunkl_t(rd, i, f)?)?;
    }
    let via_dirac = -(dunkl_dirac(rd, &dunkl_dirac(rd, f)?)?);
    if out != via_dirac {
        return Err(Error::internal(
            "dunkl_laplacian",
            "sum of squares disagrees with the Dirac factorization",
        ));
    }
    Ok(out)
}

/// The raising operator `D_+ f = D_h f - 2 x f`.
pub fn d_plus(rd: &ReflectionData, f: &CPoly) -> Result<CPoly> {
    check_dims(rd, f)?;
    let xf = CPoly::x_poly(rd.dim()).poly_mul(f)?;
    Ok(&dunkl_dirac(rd, f)? - &xf.scale(&rint(2)))
}

/// The spherical part `Gamma_kappa f = gamma_kappa f + Phi f + Psi f`.
///
/// `Phi f = -sum_{i<j} e_i e_j (x_i d_j - x_j d_i) f` is the angular
/// momentum part; `Psi` collects the reflection terms. Both preserve the
/// degree of homogeneous arguments.
pub fn gamma_sph(rd: &ReflectionData, f: &CPoly) -> Result<CPoly> {
    check_dims(rd, f)?;
    let d = rd.dim();
    let mut out = f.scale(rd.gamma_kappa());

    // Phi
    for i in 1..=d {
        for j in (i + 1)..=d {
            let xi = CPoly::var(d, i);
            let xj = CPoly::var(d, j);
            let rot = &xi.poly_mul(&f.partial_derivative(j))? - &xj.poly_mul(&f.partial_derivative(i))?;
            let eij = Multivector::blade(d, &[i, j]);
            out = &out - &rot.mul_mv_left(&eij);
        }
    }

    // Psi
    for (alpha, kappa) in rd.positive_roots().iter().zip(rd.kappa_values()) {
        if kappa.is_zero() {
            continue;
        }
        let reflected = f.poly_reflect(alpha)?;
        let dd = f.divided_difference(alpha)?;
        for i in 1..=d {
            for j in (i + 1)..=d {
                // x_i alpha_j - x_j alpha_i
                let form = &CPoly::var(d, i).scale(&alpha[j - 1]) - &CPoly::var(d, j).scale(&alpha[i - 1]);
                let eij = Multivector::blade(d, &[i, j]);
                out = &out - &form.poly_mul(&dd)?.mul_mv_left(&eij).scale(kappa);
            }
        }
        out = &out - &reflected.scale(kappa);
    }
    Ok(out)
}

/// Applies `D_h` to `poly(x) exp(-|x|^2)`.
///
/// Component-wise, `T_i (p e^{-|x|^2}) = (T_i p - 2 x_i p) e^{-|x|^2}`; the
/// result is therefore again Gaussian-dressed, with polynomial part
/// `D_+ p`, which is asserted.
pub fn gaussian_dirac(rd: &ReflectionData, g: &GaussianDressed) -> Result<GaussianDressed> {
    check_dims(rd, &g.poly)?;
    let d = rd.dim();
    let mut out = CPoly::zero(d);
    for i in 1..=d {
        let ti = dunkl_t(rd, i, &g.poly)?;
        let xi_p = CPoly::var(d, i).poly_mul(&g.poly)?;
        let comp = &ti - &xi_p.scale(&rint(2));
        out = &out + &comp.mul_mv_left(&Multivector::basis_vector(d, i));
    }
    if out != d_plus(rd, &g.poly)? {
        return Err(Error::internal(
            "gaussian_dirac",
            "product rule disagrees with the raising operator",
        ));
    }
    Ok(GaussianDressed::new(out))
}

/// Left side of the spherical decomposition test: for homogeneous `f` of
/// degree `m`, `x D_h f + m f + Gamma_kappa f` must vanish.
pub fn spherical_identity_residual(rd: &ReflectionData, f: &CPoly) -> Result<CPoly> {
    let m = f.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    let x_dh = CPoly::x_poly(rd.dim()).poly_mul(&dunkl_dirac(rd, f)?)?;
    Ok(&(&x_dh + &f.scale(&rint(m as i64))) + &gamma_sph(rd, f)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use crate::reflection::{build_group, Family};

    fn z2_2() -> ReflectionData {
        build_group(Family::Z2, 2, &[rat(1, 2), rat(1, 3)]).unwrap()
    }

    #[test]
    fn dunkl_t_on_coordinates() {
        let rd = z2_2();
        let x1 = CPoly::var(2, 1);
        // d/dx1 x1 + kappa_1 * 2 = 1 + 2 * 1/2 = 2
        assert_eq!(dunkl_t(&rd, 1, &x1).unwrap(), CPoly::scalar(2, rint(2)));
        // x2 is invariant under sigma_{e1} and has no x1 dependence
        assert!(dunkl_t(&rd, 1, &CPoly::var(2, 2)).unwrap().is_zero());
    }

    #[test]
    fn dunkl_t_reduces_to_derivative_without_multiplicity() {
        // kappa = 0 on one orbit leaves only the derivative for that mirror
        let rd = build_group(Family::Z2, 2, &[rint(0), rat(1, 3)]).unwrap();
        let p = {
            let x1 = CPoly::var(2, 1);
            &(&x1 * &x1) * &x1
        };
        assert_eq!(
            dunkl_t(&rd, 1, &p).unwrap(),
            p.partial_derivative(1)
        );
    }

    #[test]
    fn dirac_of_vector_variable_is_minus_mu() {
        let rd = z2_2();
        let x = CPoly::x_poly(2);
        let expect = CPoly::scalar(2, -rd.mu().clone());
        assert_eq!(dunkl_dirac(&rd, &x).unwrap(), expect);
        // same for a different family
        let rd3 = build_group(Family::A, 3, &[rint(1)]).unwrap();
        let x3 = CPoly::x_poly(3);
        assert_eq!(
            dunkl_dirac(&rd3, &x3).unwrap(),
            CPoly::scalar(3, -rd3.mu().clone())
        );
    }

    #[test]
    fn dirac_of_x_squared() {
        let rd = z2_2();
        let x2 = CPoly::vector_power(2, 2);
        let expect = CPoly::x_poly(2).scale(&rint(-2));
        assert_eq!(dunkl_dirac(&rd, &x2).unwrap(), expect);
        assert!(dunkl_dirac(&rd, &CPoly::one(2)).unwrap().is_zero());
    }

    #[test]
    fn laplacian_of_radius_squared() {
        let rd = z2_2();
        let r2 = -(CPoly::vector_power(2, 2));
        let expect = CPoly::scalar(2, rint(2) * rd.mu());
        assert_eq!(dunkl_laplacian(&rd, &r2).unwrap(), expect);
        assert!(dunkl_laplacian(&rd, &CPoly::var(2, 1)).unwrap().is_zero());
    }

    #[test]
    fn raising_operator_first_steps() {
        let rd = z2_2();
        let p0 = CPoly::one(2);
        let h1 = d_plus(&rd, &p0).unwrap();
        assert_eq!(h1, CPoly::x_poly(2).scale(&rint(-2)));
        let h2 = d_plus(&rd, &h1).unwrap();
        // 4x^2 + 2 mu (n = 0)
        let expect = &CPoly::vector_power(2, 2).scale(&rint(4))
            + &CPoly::scalar(2, rint(2) * rd.mu());
        assert_eq!(h2, expect);
        assert!(d_plus(&rd, &CPoly::zero(2)).unwrap().is_zero());
    }

    #[test]
    fn gamma_sph_kills_radial_polynomials() {
        let rd = z2_2();
        let r2 = {
            let x1 = CPoly::var(2, 1);
            let x2 = CPoly::var(2, 2);
            &(&x1 * &x1) + &(&x2 * &x2)
        };
        assert!(gamma_sph(&rd, &r2).unwrap().is_zero());
        let r4 = &r2 * &r2;
        assert!(gamma_sph(&rd, &r4).unwrap().is_zero());
    }

    #[test]
    fn gamma_sph_on_vector_variable() {
        // degree-1 case of the eigenrelation on x P with P = 1: (mu - 1) x
        let rd = z2_2();
        let x = CPoly::x_poly(2);
        let expect = x.scale(&(rd.mu() - rint(1)));
        assert_eq!(gamma_sph(&rd, &x).unwrap(), expect);
    }

    #[test]
    fn spherical_identity_low_degrees() {
        let rd = z2_2();
        for f in [
            CPoly::var(2, 1),
            CPoly::vector_power(2, 3),
            {
                let x1 = CPoly::var(2, 1);
                let x2 = CPoly::var(2, 2);
                (&(&x1 * &x1) * &x2).mul_mv_left(&Multivector::blade(2, &[1, 2]))
            },
        ] {
            assert!(
                spherical_identity_residual(&rd, &f).unwrap().is_zero(),
                "residual nonzero for {f}"
            );
        }
    }

    #[test]
    fn gaussian_dirac_steps() {
        let rd = z2_2();
        let g = GaussianDressed::new(CPoly::one(2));
        let g1 = gaussian_dirac(&rd, &g).unwrap();
        assert_eq!(g1.poly, CPoly::x_poly(2).scale(&rint(-2)));
        let g0 = gaussian_dirac(&rd, &GaussianDressed::new(CPoly::zero(2))).unwrap();
        assert!(g0.poly.is_zero());
    }

    #[test]
    fn dunkl_operators_commute_spot_check() {
        let rd3 = build_group(Family::A, 3, &[rat(1, 2)]).unwrap();
        let f = {
            let x1 = CPoly::var(3, 1);
            let x2 = CPoly::var(3, 2);
            let x3 = CPoly::var(3, 3);
            &(&(&x1 * &x1) * &x2) + &(&x3 * &x3)
        };
        for i in 1..=3 {
            for j in 1..=3 {
                let a = dunkl_t(&rd3, i, &dunkl_t(&rd3, j, &f).unwrap()).unwrap();
                let b = dunkl_t(&rd3, j, &dunkl_t(&rd3, i, &f).unwrap()).unwrap();
                assert_eq!(a, b);
            }
        }
    }
}
