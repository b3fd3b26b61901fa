use crate::error::{Error, Result};
use crate::hermcore::{HermMatrix, Mat};
use crate::operators::{dense, DissipatorSpec, Model};
use crate::scalar::Real;

/// Largest dimension the dense reference accepts; it costs `O(N³)` per call.
pub const REFERENCE_MAX_DIM: usize = 256;

/// `L ρ R - ½(R L ρ + ρ R L)` by full matrix products.
fn pair<T: Real>(
    l: &HermMatrix<T>,
    r: &HermMatrix<T>,
    rho: &HermMatrix<T>,
) -> Result<HermMatrix<T>> {
    let sandwich = l.matmul(rho)?.matmul(r)?;
    let rl = r.matmul(l)?;
    let anti = rl.matmul(rho)?.add_scaled(&rho.matmul(&rl)?, T::one())?;
    sandwich.add_scaled(&anti, T::lit(-0.5))
}

/// The dissipator evaluated literally from dense operators.
pub fn dense_dissipator_reference<T: Real>(
    rho: &HermMatrix<T>,
    spec: &DissipatorSpec<T>,
) -> Result<HermMatrix<T>> {
    let n = rho.dim();
    if n > REFERENCE_MAX_DIM {
        return Err(Error::DimGuard {
            got: n,
            max: REFERENCE_MAX_DIM,
        });
    }
    let cplx = |m: Mat<T>| HermMatrix::from_real(&m);
    let (up, down) = match spec.model() {
        Model::NonGaussianNonLocal => {
            let (u, d) = dense::dressed_ladders(spec.kernel(), n)?;
            (cplx(u), cplx(d))
        }
        _ => (cplx(dense::ladder_up(n)?), cplx(dense::ladder_down(n)?)),
    };
    let s2 = spec.sigma2();
    let mut out = pair(&up, &down, rho)?
        .add_scaled(&pair(&down, &up, rho)?, T::one())?
        .scaled(s2);
    if spec.model() == Model::NonGaussianCoherent {
        out = out.add_scaled(&pair(&up, &up, rho)?, spec.nu_u2())?;
        out = out.add_scaled(&pair(&down, &down, rho)?, spec.nu_d2())?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::LadderKernel;
    use crate::oracle::random_density;
    use num_complex::Complex;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn degenerate_specs_match_gaussian() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let rho = random_density::<f64, _>(7, &mut rng);
        let g = dense_dissipator_reference(&rho, &DissipatorSpec::gaussian(2.0).unwrap()).unwrap();
        let c = dense_dissipator_reference(&rho, &DissipatorSpec::coherent(2.0, 0.0, 0.0).unwrap())
            .unwrap();
        let h = dense_dissipator_reference(
            &rho,
            &DissipatorSpec::non_local(2.0, LadderKernel::identity()).unwrap(),
        )
        .unwrap();
        assert!(g.max_abs_diff(&c) < 1e-15);
        assert!(g.max_abs_diff(&h) < 1e-15);
    }

    #[test]
    fn corner_state_by_hand() {
        let mut rho = HermMatrix::<f64>::zeros(3);
        rho.set(0, 0, Complex::new(1.0, 0.0));
        let d = dense_dissipator_reference(&rho, &DissipatorSpec::gaussian(1.0).unwrap()).unwrap();
        let want = HermMatrix::from_diag(&[
            Complex::new(-1.0, 0.0),
            Complex::new(1.0, 0.0),
            Complex::new(0.0, 0.0),
        ]);
        assert_eq!(d, want);
    }

    #[test]
    fn dimension_guard() {
        let rho = HermMatrix::<f64>::identity(REFERENCE_MAX_DIM + 1);
        assert!(matches!(
            dense_dissipator_reference(&rho, &DissipatorSpec::gaussian(1.0).unwrap()),
            Err(Error::DimGuard { .. })
        ));
    }
}
