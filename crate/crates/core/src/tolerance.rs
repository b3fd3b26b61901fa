/// Every numerical threshold used by validation and run monitoring.
///
/// Stored as `f64` and converted to the working precision at the point of use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Max `|m_ij - conj(m_ji)|` for a matrix to count as Hermitian.
    pub hermitian: f64,
    /// Max `|Tr ρ - 1|` for a density matrix.
    pub trace: f64,
    /// Eigenvalues down to `-psd` are accepted as positive semidefinite.
    pub psd: f64,
    /// Max `|Σ p_i - 1|` for a probability vector.
    pub prob_sum: f64,
    /// Max `|Σ h_k² - 1|` for a normalized ladder kernel.
    pub kernel_norm: f64,
    /// Max imaginary part of an environment band sum.
    pub band_sum_imag: f64,
    /// Max magnitude of the first-band sums for the drift term to vanish.
    pub drift: f64,
    /// Eigenvalues at or below this are treated as exact zeros in `λ log λ`.
    pub eig_clamp: f64,
    /// Max imaginary residue of an expectation value.
    pub expectation_imag: f64,
    /// Trace drift that aborts a time integration.
    pub run_trace: f64,
    /// Most negative eigenvalue tolerated at a checkpoint.
    pub run_min_eig: f64,
}

impl Tolerances {
    pub const F64: Tolerances = Tolerances {
        hermitian: 1e-12,
        trace: 1e-9,
        psd: 1e-9,
        prob_sum: 1e-12,
        kernel_norm: 1e-12,
        band_sum_imag: 1e-12,
        drift: 1e-12,
        eig_clamp: 1e-14,
        expectation_imag: 1e-10,
        run_trace: 1e-6,
        run_min_eig: 1e-6,
    };

    pub const F32: Tolerances = Tolerances {
        hermitian: 1e-5,
        trace: 1e-4,
        psd: 1e-4,
        prob_sum: 1e-5,
        kernel_norm: 1e-5,
        band_sum_imag: 1e-5,
        drift: 1e-5,
        eig_clamp: 1e-7,
        expectation_imag: 1e-4,
        run_trace: 1e-3,
        run_min_eig: 1e-3,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances::F64
    }
}
