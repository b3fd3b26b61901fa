use crate::error::{Error, Result};
use crate::observables::{moments_of, shannon_entropy, ProbVector};
use crate::scalar::Real;

/// A classical random walk on a finite lattice, evolved by exact
/// convolution. `step[k]` is the probability of a move by
/// `min_offset + k` sites.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkSpec<T> {
    pub initial: ProbVector<T>,
    pub step: ProbVector<T>,
    pub min_offset: isize,
    pub n_steps: usize,
}

/// Distributions `P_0..=P_n` with their entropies and variances in
/// lattice units.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkPath<T> {
    pub distributions: Vec<ProbVector<T>>,
    pub entropy: Vec<T>,
    pub variance: Vec<T>,
}

fn variance_of<T: Real>(p: &ProbVector<T>) -> Result<T> {
    let x: Vec<T> = (0..p.len()).map(T::from_usize_lossy).collect();
    Ok(moments_of(p.as_slice(), &x)?.variance)
}

fn convolve<T: Real>(p: &[T], step: &[T], min_offset: isize, k: usize) -> Result<Vec<T>> {
    let n = p.len() as isize;
    let mut out = vec![T::zero(); p.len()];
    for (i, &pi) in p.iter().enumerate() {
        if pi.is_zero() {
            continue;
        }
        for (s, &w) in step.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            let j = i as isize + min_offset + s as isize;
            if j < 0 || j >= n {
                return Err(Error::LatticeOverflow(format!(
                    "step {k} moves mass from site {i} to {j}, outside 0..{n}"
                )));
            }
            out[j as usize] += pi * w;
        }
    }
    Ok(out)
}

/// Evolves the walk. A step law with more than one atom must raise both
/// entropy and variance strictly at every step; a violation is an error.
pub fn classical_walk<T: Real>(spec: &WalkSpec<T>) -> Result<WalkPath<T>> {
    let degenerate = spec.step.as_slice().iter().filter(|w| !w.is_zero()).count() < 2;
    let mut p = spec.initial.clone();
    let mut path = WalkPath {
        entropy: vec![shannon_entropy(&p)],
        variance: vec![variance_of(&p)?],
        distributions: vec![p.clone()],
    };
    for k in 1..=spec.n_steps {
        let next = convolve(p.as_slice(), spec.step.as_slice(), spec.min_offset, k)?;
        p = ProbVector::normalized(next)?;
        let h = shannon_entropy(&p);
        let v = variance_of(&p)?;
        if !degenerate {
            if !(h > path.entropy[k - 1]) {
                return Err(Error::MonotonicityViolation {
                    quantity: "entropy",
                    step: k,
                });
            }
            if !(v > path.variance[k - 1]) {
                return Err(Error::MonotonicityViolation {
                    quantity: "variance",
                    step: k,
                });
            }
        }
        path.entropy.push(h);
        path.variance.push(v);
        path.distributions.push(p.clone());
    }
    Ok(path)
}
