//! Separable shift stencil evaluating `Σ_t r_t(i) c_t(j) ρ[i + di_t][j + dj_t]`.
//!
//! Every dissipator term `L ρ R` or `K ρ` with banded `L`, `R`, `K` expands
//! into such taps. Away from the grid edges all row and column weights are
//! constant, so the interior collapses to a handful of shifted row axpys;
//! only the few boundary rows and columns are evaluated tap by tap.

use std::ops::Range;

use crate::hermcore::Mat;
use crate::operators::BandOp;
use crate::scalar::{Elem, Real};

#[derive(Debug, Clone)]
struct Tap<T> {
    di: isize,
    dj: isize,
    row: Vec<T>,
    col: Vec<T>,
}

#[derive(Debug, Clone)]
pub(crate) struct Stencil<T> {
    n: usize,
    taps: Vec<Tap<T>>,
    rows: Range<usize>,
    cols: Range<usize>,
    /// Merged interior shifts `(di, dj, weight)`, sorted by shift.
    interior: Vec<(isize, isize, T)>,
}

/// Largest range around `n / 2` on which `w` is constant and `k + shift`
/// stays on the grid.
fn flat_range<T: Real>(w: &[T], shift: isize) -> Range<usize> {
    let n = w.len();
    let lo_ok = (-shift).max(0) as usize;
    let hi_ok = (n as isize - shift.max(0)).max(0) as usize;
    let mid = n / 2;
    if mid < lo_ok || mid >= hi_ok {
        return 0..0;
    }
    let v = w[mid];
    let mut lo = mid;
    while lo > lo_ok && w[lo - 1] == v {
        lo -= 1;
    }
    let mut hi = mid + 1;
    while hi < hi_ok && w[hi] == v {
        hi += 1;
    }
    lo..hi
}

fn intersect(a: Range<usize>, b: Range<usize>) -> Range<usize> {
    let lo = a.start.max(b.start);
    let hi = a.end.min(b.end);
    if lo < hi {
        lo..hi
    } else {
        0..0
    }
}

impl<T: Real> Stencil<T> {
    pub(crate) fn new(n: usize) -> Self {
        Stencil {
            n,
            taps: Vec::new(),
            rows: 0..0,
            cols: 0..0,
            interior: Vec::new(),
        }
    }

    fn push(&mut self, di: isize, dj: isize, row: Vec<T>, col: Vec<T>) {
        if row.iter().all(|v| v.is_zero()) || col.iter().all(|v| v.is_zero()) {
            return;
        }
        self.taps.push(Tap { di, dj, row, col });
    }

    /// Adds `c · L ρ R`.
    pub(crate) fn add_sandwich(&mut self, c: T, left: &BandOp<T>, right: &BandOp<T>) {
        let n = self.n as isize;
        for a in left.offsets() {
            let lv = left.diag(a).unwrap();
            let row: Vec<T> = lv.iter().map(|&v| c * v).collect();
            for b in right.offsets() {
                let rv = right.diag(b).unwrap();
                let col: Vec<T> = (0..n)
                    .map(|j| {
                        let q = j + b;
                        if q >= 0 && q < n {
                            rv[q as usize]
                        } else {
                            T::zero()
                        }
                    })
                    .collect();
                self.push(-a, b, row.clone(), col);
            }
        }
    }

    /// Adds `-½ (K ρ + ρ K)`.
    pub(crate) fn add_anticommutator(&mut self, k: &BandOp<T>) {
        let n = self.n as isize;
        let half = T::lit(0.5);
        let ones = vec![T::one(); self.n];
        for a in k.offsets() {
            let kv = k.diag(a).unwrap();
            let row: Vec<T> = kv.iter().map(|&v| -half * v).collect();
            self.push(-a, 0, row, ones.clone());
        }
        for b in k.offsets() {
            let kv = k.diag(b).unwrap();
            let col: Vec<T> = (0..n)
                .map(|j| {
                    let q = j + b;
                    if q >= 0 && q < n {
                        -half * kv[q as usize]
                    } else {
                        T::zero()
                    }
                })
                .collect();
            self.push(0, b, ones.clone(), col);
        }
    }

    /// Locates the constant-weight interior and merges its shifts.
    pub(crate) fn finish(&mut self) {
        let n = self.n;
        let mut rows = 0..n;
        let mut cols = 0..n;
        for t in &self.taps {
            rows = intersect(rows, flat_range(&t.row, t.di));
            cols = intersect(cols, flat_range(&t.col, t.dj));
        }
        let mut interior: Vec<(isize, isize, T)> = Vec::new();
        if !rows.is_empty() && !cols.is_empty() {
            for t in &self.taps {
                let w = t.row[rows.start] * t.col[cols.start];
                match interior.iter_mut().find(|s| s.0 == t.di && s.1 == t.dj) {
                    Some(s) => s.2 += w,
                    None => interior.push((t.di, t.dj, w)),
                }
            }
            interior.retain(|s| !s.2.is_zero());
            interior.sort_by_key(|s| (s.0, s.1));
        }
        self.rows = rows;
        self.cols = cols;
        self.interior = interior;
    }

    /// Gershgorin-type bound on the induced max-norm of the map.
    pub(crate) fn norm_bound(&self) -> T {
        let maxabs = |w: &[T]| w.iter().fold(T::zero(), |m, v| m.max(v.abs()));
        self.taps
            .iter()
            .map(|t| maxabs(&t.row) * maxabs(&t.col))
            .sum()
    }

    #[cfg(test)]
    pub(crate) fn interior_shift_count(&self) -> usize {
        self.interior.len()
    }

    #[inline]
    fn point<E: Elem<Real = T>>(&self, rho: &[E], i: usize, j: usize) -> E {
        let n = self.n as isize;
        let mut acc = E::zero_elem();
        for t in &self.taps {
            let p = i as isize + t.di;
            let q = j as isize + t.dj;
            if p < 0 || p >= n || q < 0 || q >= n {
                continue;
            }
            let w = t.row[i] * t.col[j];
            if w.is_zero() {
                continue;
            }
            acc += rho[(p * n + q) as usize].scale(w);
        }
        acc
    }

    /// Output row `i` for columns `0..jend`.
    fn row_into<E: Elem<Real = T>>(&self, rho: &[E], i: usize, jend: usize, out: &mut [E]) {
        let n = self.n;
        if !self.rows.contains(&i) {
            for (j, o) in out[..jend].iter_mut().enumerate() {
                *o = self.point(rho, i, j);
            }
            return;
        }
        let c0 = self.cols.start.min(jend);
        let c1 = self.cols.end.min(jend).max(c0);
        for (j, o) in out[..c0].iter_mut().enumerate() {
            *o = self.point(rho, i, j);
        }
        let mid = &mut out[c0..c1];
        mid.iter_mut().for_each(|o| *o = E::zero_elem());
        for &(di, dj, w) in &self.interior {
            let start = (i as isize + di) as usize * n + (c0 as isize + dj) as usize;
            let src = &rho[start..start + mid.len()];
            for (o, &s) in mid.iter_mut().zip(src) {
                *o += s.scale(w);
            }
        }
        for j in c1..jend {
            out[j] = self.point(rho, i, j);
        }
    }

    /// Applies the stencil to every entry.
    pub(crate) fn apply_general<E: Elem<Real = T>>(&self, rho: &Mat<E>, out: &mut Mat<E>) {
        let n = self.n;
        let src = rho.as_slice();
        for i in 0..n {
            self.row_into(src, i, n, out.row_mut(i));
        }
    }

    /// Applies the stencil to a Hermitian input: the lower triangle is
    /// computed and mirrored, so the output is exactly Hermitian. With
    /// `affine = Some((base, c))` the result is `base + c · S(ρ)` instead,
    /// formed row by row while the row is in cache and with subnormal
    /// entries flushed to zero.
    pub(crate) fn apply_hermitian<E: Elem<Real = T>>(
        &self,
        rho: &Mat<E>,
        affine: Option<(&Mat<E>, T)>,
        out: &mut Mat<E>,
    ) {
        let n = self.n;
        let src = rho.as_slice();
        for i in 0..n {
            let row = out.row_mut(i);
            self.row_into(src, i, i + 1, row);
            if let Some((base, c)) = affine {
                for (o, &b) in row[..=i].iter_mut().zip(&base.row(i)[..=i]) {
                    *o = (b + o.scale(c)).flush_subnormal();
                }
            }
            row[i] = E::from_real(row[i].re());
        }
        mirror_lower(out.as_mut_slice(), n);
    }
}

/// Copies the conjugate of the strict lower triangle onto the upper one,
/// tile by tile to keep the transposed accesses in cache.
fn mirror_lower<E: Elem>(data: &mut [E], n: usize) {
    const TILE: usize = 32;
    for bi in (0..n).step_by(TILE) {
        for bj in (0..=bi).step_by(TILE) {
            for i in bi..(bi + TILE).min(n) {
                for j in bj..(bj + TILE).min(i) {
                    data[j * n + i] = data[i * n + j].conj();
                }
            }
        }
    }
}
