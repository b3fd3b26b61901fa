use super::eigen::spectrum;
use super::matrix::HermMatrix;
use crate::scalar::Real;
use crate::Tolerances;

/// Outcome of checking the density-matrix conditions. Never mutates the input.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport<T> {
    pub hermitian: bool,
    pub hermitian_residual: T,
    pub trace_error: T,
    /// Smallest eigenvalue of the Hermitian part; `None` if the eigensolver failed.
    pub min_eig: Option<T>,
    pub trace_ok: bool,
    pub psd: bool,
}

impl<T: Real> ValidationReport<T> {
    pub fn is_valid(&self) -> bool {
        self.hermitian && self.trace_ok && self.psd
    }

    /// Human-readable list of the violated conditions.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.hermitian {
            out.push(format!(
                "not Hermitian (residual {})",
                self.hermitian_residual
            ));
        }
        if !self.trace_ok {
            out.push(format!("trace error {}", self.trace_error));
        }
        if !self.psd {
            match self.min_eig {
                Some(m) => out.push(format!("negative eigenvalue {m}")),
                None => out.push("eigensolver failed".to_string()),
            }
        }
        out
    }
}

pub fn validate_density<T: Real>(m: &HermMatrix<T>, tol: &Tolerances) -> ValidationReport<T> {
    let hermitian_residual = m.hermitian_residual();
    let hermitian = hermitian_residual <= T::lit(tol.hermitian);
    let trace_error = (m.trace() - num_complex::Complex::new(T::one(), T::zero())).norm();
    let trace_ok = trace_error <= T::lit(tol.trace);

    let min_eig = if hermitian {
        spectrum(m).ok().and_then(|s| s.min())
    } else {
        let sym = m
            .add_scaled(&m.adjoint(), T::one())
            .map(|s| s.scaled(T::lit(0.5)));
        sym.ok()
            .and_then(|s| spectrum(&s).ok())
            .and_then(|s| s.min())
    };
    let psd = match min_eig {
        Some(v) => v >= -T::lit(tol.psd),
        None => false,
    };
    ValidationReport {
        hermitian,
        hermitian_residual,
        trace_error,
        min_eig,
        trace_ok,
        psd,
    }
}
