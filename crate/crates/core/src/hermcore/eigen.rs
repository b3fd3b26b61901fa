//! Hermitian eigensolver: Householder reduction to a real symmetric
//! tridiagonal matrix followed by implicit QL iterations with Wilkinson
//! shifts.
//!
//! The reduction is written once against [`Elem`], so real symmetric input
//! (the common case for the price-grid states) runs entirely in real
//! arithmetic.

use num_complex::Complex;
use num_traits::{Float, One, Zero};

use super::matrix::{HermMatrix, Mat};
use crate::error::{Error, Result};
use crate::scalar::{Elem, Real};

/// Eigenvalues sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T>(Vec<T>);

impl<T: Real> Spectrum<T> {
    /// Sorts the values ascending.
    pub fn new(mut values: Vec<T>) -> Self {
        values.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
        Spectrum(values)
    }

    pub fn values(&self) -> &[T] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min(&self) -> Option<T> {
        self.0.first().copied()
    }

    pub fn max(&self) -> Option<T> {
        self.0.last().copied()
    }

    pub fn sum(&self) -> T {
        self.0.iter().copied().sum()
    }
}

/// Eigenvalues with the matching orthonormal eigenvectors stored as columns.
#[derive(Debug, Clone)]
pub struct EigenDecomposition<E: Elem> {
    pub values: Spectrum<E::Real>,
    pub vectors: Mat<E>,
}

impl<E: Elem> EigenDecomposition<E> {
    /// `V Λ V†`
    pub fn reconstruct(&self) -> Mat<E> {
        let n = self.vectors.dim();
        let vals = self.values.values();
        Mat::from_fn(n, |i, j| {
            let mut acc = E::zero_elem();
            for (k, &lam) in vals.iter().enumerate() {
                acc += (self.vectors.get(i, k) * self.vectors.get(j, k).conj()).scale(lam);
            }
            acc
        })
    }
}

/// Full decomposition of a Hermitian (or real symmetric) matrix.
pub fn eig_hermitian<E: Elem>(m: &Mat<E>) -> Result<EigenDecomposition<E>> {
    let n = m.dim();
    let mut work = m.clone();
    let mut reflectors = Vec::with_capacity(n.saturating_sub(1));
    let (mut d, mut e) = tridiagonalize(&mut work, Some(&mut reflectors));
    let mut z = accumulate_reflectors(n, &reflectors);
    tridiagonal_ql(&mut d, &mut e, Some(&mut z))?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].partial_cmp(&d[b]).unwrap_or(std::cmp::Ordering::Equal));
    let vectors = Mat::from_fn(n, |i, k| z.get(i, order[k]));
    let values = order.iter().map(|&k| d[k]).collect();
    Ok(EigenDecomposition {
        values: Spectrum(values),
        vectors,
    })
}

/// Eigenvalues only; `O(n^3)` reduction plus `O(n^2)` QL.
pub fn eigvals_hermitian<E: Elem>(m: &Mat<E>) -> Result<Spectrum<E::Real>> {
    let mut work = m.clone();
    let (mut d, mut e) = tridiagonalize(&mut work, None);
    tridiagonal_ql::<E>(&mut d, &mut e, None)?;
    Ok(Spectrum::new(d))
}

/// Spectrum of a complex Hermitian matrix, taking the cheapest exact route:
/// the diagonal itself for diagonal input, real arithmetic for real input.
pub fn spectrum<T: Real>(m: &HermMatrix<T>) -> Result<Spectrum<T>> {
    if m.is_diagonal() {
        return Ok(Spectrum::new(m.diag().iter().map(|z| z.re).collect()));
    }
    if m.is_real() {
        return eigvals_hermitian(&m.re_part());
    }
    eigvals_hermitian(m)
}

/// Reduces `a` in place with Householder reflections `H_k = I - τ v v†`,
/// returning the real diagonal and sub-diagonal of `Q† A Q`.
fn tridiagonalize<E: Elem>(
    a: &mut Mat<E>,
    mut reflectors: Option<&mut Vec<(E, Vec<E>)>>,
) -> (Vec<E::Real>, Vec<E::Real>) {
    let n = a.dim();
    let zero = E::Real::zero();
    let half = E::Real::lit(0.5);
    let mut d = vec![zero; n];
    let mut e = vec![zero; n];
    let mut v = vec![E::zero_elem(); n];
    let mut w = vec![E::zero_elem(); n];

    for k in 0..n.saturating_sub(1) {
        let s = k + 1;
        let alpha = a.get(s, k);
        // Norms are taken on the column scaled by its largest modulus so
        // that tiny entries neither underflow nor overflow when squared.
        let mut scale = alpha.modulus();
        for i in s + 1..n {
            scale = scale.max(a.get(i, k).modulus());
        }
        let mut xnorm2 = zero;
        // A column below the smallest normal number is already reduced for
        // every practical purpose, and scaling it would overflow.
        if scale < E::Real::min_positive_value() {
            e[k] = alpha.re();
            if let Some(r) = reflectors.as_deref_mut() {
                r.push((E::zero_elem(), Vec::new()));
            }
            continue;
        }
        {
            let inv_scale = E::Real::one() / scale;
            for i in s + 1..n {
                xnorm2 += a.get(i, k).scale(inv_scale).abs2();
            }
        }

        if xnorm2 == zero && alpha.im() == zero {
            e[k] = alpha.re();
            if let Some(r) = reflectors.as_deref_mut() {
                r.push((E::zero_elem(), Vec::new()));
            }
            continue;
        }

        let alpha_r = alpha.re();
        let inv_scale = E::Real::one() / scale;
        let norm = scale * (alpha.scale(inv_scale).abs2() + xnorm2).sqrt();
        let beta = if alpha_r >= zero { -norm } else { norm };
        let tau = E::from_complex(Complex::new((beta - alpha_r) / beta, -alpha.im() / beta));
        // 1 / (alpha - beta), formed from the scaled difference.
        let denom = (alpha - E::from_real(beta)).scale(inv_scale);
        let inv = denom.conj().scale(inv_scale / denom.abs2());

        let m = n - s;
        let v = &mut v[..m];
        v[0] = E::one_elem();
        for i in 1..m {
            v[i] = a.get(s + i, k) * inv;
        }
        e[k] = beta;

        // w = τ A v, then w -= ½ τ (w† v) v
        let w = &mut w[..m];
        for i in 0..m {
            let row = &a.row(s + i)[s..];
            let mut acc = E::zero_elem();
            for (&aij, &vj) in row.iter().zip(v.iter()) {
                acc += aij * vj;
            }
            w[i] = tau * acc;
        }
        let mut wv = E::zero_elem();
        for i in 0..m {
            wv += w[i].conj() * v[i];
        }
        let corr = (tau * wv).scale(-half);
        for i in 0..m {
            w[i] += corr * v[i];
        }

        // A -= v w† + w v†
        for i in 0..m {
            let vi = v[i];
            let wi = w[i];
            let row = &mut a.row_mut(s + i)[s..];
            for ((aij, &vj), &wj) in row.iter_mut().zip(v.iter()).zip(w.iter()) {
                *aij -= vi * wj.conj() + wi * vj.conj();
            }
        }
        // Sub-diagonal block of column k is now (beta, 0, ..., 0).
        a.set(s, k, E::from_real(beta));
        a.set(k, s, E::from_real(beta));
        for i in s + 1..n {
            a.set(i, k, E::zero_elem());
            a.set(k, i, E::zero_elem());
        }

        if let Some(r) = reflectors.as_deref_mut() {
            r.push((tau, v.to_vec()));
        }
    }
    for (i, di) in d.iter_mut().enumerate() {
        *di = a.get(i, i).re();
    }
    (d, e)
}

/// `Q = H_0 H_1 ... H_{n-2}` formed explicitly.
fn accumulate_reflectors<E: Elem>(n: usize, reflectors: &[(E, Vec<E>)]) -> Mat<E> {
    let mut q = Mat::<E>::identity(n);
    let mut tmp = vec![E::zero_elem(); n];
    for (k, (tau, v)) in reflectors.iter().enumerate().rev() {
        if v.is_empty() {
            continue;
        }
        let s = k + 1;
        // q[s.., s..] -= τ v (v† q[s.., s..])
        let tmp = &mut tmp[s..];
        tmp.iter_mut().for_each(|t| *t = E::zero_elem());
        for (i, &vi) in v.iter().enumerate() {
            let vic = vi.conj();
            for (t, &qij) in tmp.iter_mut().zip(&q.row(s + i)[s..]) {
                *t += vic * qij;
            }
        }
        for (i, &vi) in v.iter().enumerate() {
            let f = *tau * vi;
            for (qij, &t) in q.row_mut(s + i)[s..].iter_mut().zip(tmp.iter()) {
                *qij -= f * t;
            }
        }
    }
    q
}

/// Implicit QL with Wilkinson shifts on a symmetric tridiagonal matrix
/// (`d` diagonal, `e[i]` couples `i` and `i + 1`). Rotations are applied to
/// the columns of `z` when given. Total sweeps are capped at `50 n`.
fn tridiagonal_ql<E: Elem>(
    d: &mut [E::Real],
    e: &mut [E::Real],
    mut z: Option<&mut Mat<E>>,
) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    let zero = E::Real::zero();
    let one = E::Real::one();
    let two = E::Real::lit(2.0);
    let eps = E::Real::epsilon();
    let cap = 50 * n;
    let mut iterations = 0usize;
    e[n - 1] = zero;
    // Couplings below ε‖T‖ are dropped even between (near-)zero diagonal
    // entries, where the relative test alone never fires.
    let norm = (0..n).fold(zero, |acc, i| {
        let left = if i > 0 { e[i - 1].abs() } else { zero };
        acc.max(d[i].abs() + e[i].abs() + left)
    });
    let floor = eps * norm;

    for l in 0..n {
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= eps * dd || e[m].abs() <= floor {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > cap {
                return Err(Error::NoConvergence { iterations: cap });
            }

            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = g.hypot(one);
            g = d[m] - d[l] + e[l] / (g + if g >= zero { r.abs() } else { -r.abs() });
            let (mut s, mut c, mut p) = (one, one, zero);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == zero {
                    d[i + 1] -= p;
                    e[m] = zero;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_deref_mut() {
                    let nn = z.dim();
                    for k in 0..nn {
                        let row = z.row_mut(k);
                        let f = row[i + 1];
                        row[i + 1] = row[i].scale(s) + f.scale(c);
                        row[i] = row[i].scale(c) - f.scale(s);
                    }
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = zero;
        }
    }
    Ok(())
}
