//! Algebraic reduction of a chain complex by unit pivots.
//!
//! Eliminating a unit entry `lambda = D_q[a, b]` splits off the acyclic
//! pair `b -> db` and leaves a smaller complex: column `b` and row `a` of
//! `D_q` disappear after the rank-one update `D_q -= col_b * lambda^-1 *
//! row_a`, row `b` of `D_(q+1)` and column `a` of `D_(q-1)` are dropped.
//! The steps are recorded so that chains can be pushed to the reduced
//! complex (projection) and cycles lifted back (inclusion); the projection
//! after the inclusion is the identity.
//!
//! Pivots are chosen greedily by Markowitz cost, with a lazily refreshed
//! heap.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::scalar::{EuclideanRing, Overflow};

use super::snf::Dense;
use super::SparseMatrix;

struct Step<T> {
    // matrix index: D_q maps level q to level q - 1
    q: usize,
    a: usize,
    b: usize,
    lambda_inv: T,
    col_b: Vec<(usize, T)>,
    row_a: Vec<(usize, T)>,
}

struct Mat<T> {
    cols: Vec<Vec<(usize, T)>>,
    // possibly stale: columns that have at some point held an entry in the row
    rows: Vec<Vec<usize>>,
    row_len: Vec<usize>,
}

impl<T: EuclideanRing> Mat<T> {
    fn from_sparse(m: &SparseMatrix<T>) -> Self {
        let mut rows = vec![Vec::new(); m.rows()];
        let mut row_len = vec![0; m.rows()];
        for (j, c) in m.columns().iter().enumerate() {
            for (i, _) in c {
                rows[*i].push(j);
                row_len[*i] += 1;
            }
        }
        Mat { cols: m.columns().to_vec(), rows, row_len }
    }

    fn entry(&self, i: usize, j: usize) -> Option<&T> {
        let c = &self.cols[j];
        c.binary_search_by_key(&i, |e| e.0).ok().map(|p| &c[p].1)
    }

    /// Live entries of row `i`, deduplicating the stale index.
    fn row_entries(&mut self, i: usize) -> Vec<(usize, T)> {
        let mut js = std::mem::take(&mut self.rows[i]);
        js.sort_unstable();
        js.dedup();
        let mut out = Vec::with_capacity(js.len());
        let mut keep = Vec::with_capacity(js.len());
        for j in js {
            if let Some(v) = self.entry(i, j) {
                out.push((j, v.clone()));
                keep.push(j);
            }
        }
        self.rows[i] = keep;
        out
    }

    /// `col_j -= mu * col`, keeping the row index current.
    fn axpy(&mut self, j: usize, mu: &T, col: &[(usize, T)]) -> Result<(), Overflow> {
        let old = std::mem::take(&mut self.cols[j]);
        let mut out = Vec::with_capacity(old.len() + col.len());
        let (mut x, mut y) = (old.into_iter().peekable(), col.iter().peekable());
        loop {
            match (x.peek(), y.peek()) {
                (Some((i, _)), Some((k, _))) if i == k => {
                    let (i, v) = x.next().expect("peeked");
                    let (_, w) = y.next().expect("peeked");
                    let nv = v.sub_checked(&mu.mul_checked(w)?)?;
                    if nv.is_zero() {
                        self.row_len[i] -= 1;
                    } else {
                        out.push((i, nv));
                    }
                }
                (Some((i, _)), Some((k, _))) if i < k => out.push(x.next().expect("peeked")),
                (Some(_), None) => out.push(x.next().expect("peeked")),
                (_, Some(_)) => {
                    let (k, w) = y.next().expect("peeked");
                    let nv = -mu.mul_checked(w)?;
                    if !nv.is_zero() {
                        self.rows[*k].push(j);
                        self.row_len[*k] += 1;
                        out.push((*k, nv));
                    }
                }
                (None, None) => break,
            }
        }
        self.cols[j] = out;
        Ok(())
    }

    fn clear_column(&mut self, j: usize) -> Vec<(usize, T)> {
        let c = std::mem::take(&mut self.cols[j]);
        for (i, _) in &c {
            self.row_len[*i] -= 1;
        }
        c
    }

    /// Removes row `i`; returns the columns that changed.
    fn clear_row(&mut self, i: usize) -> Vec<usize> {
        let entries = self.row_entries(i);
        for (j, _) in &entries {
            let c = &mut self.cols[*j];
            if let Ok(p) = c.binary_search_by_key(&i, |e| e.0) {
                c.remove(p);
            }
        }
        self.rows[i].clear();
        self.row_len[i] = 0;
        entries.into_iter().map(|e| e.0).collect()
    }

    /// Cheapest unit pivot in column `j`: `(cost, row)`.
    fn pivot_in(&self, j: usize) -> Option<(usize, usize)> {
        let c = &self.cols[j];
        let clen = c.len().saturating_sub(1);
        c.iter().filter(|(_, v)| v.is_unit()).map(|(i, _)| (clen * self.row_len[*i].saturating_sub(1), *i)).min()
    }
}

/// The reduced complex on levels `0..sizes.len()` together with the
/// recorded elimination.
pub(crate) struct Reduction<T> {
    sizes: Vec<usize>,
    steps: Vec<Step<T>>,
    // surviving original indices per level, ascending
    survivors: Vec<Vec<usize>>,
    // residual D_q for q >= 1 (index q - 1), on survivors
    residual: Vec<Dense<T>>,
}

impl<T: EuclideanRing> Reduction<T> {
    /// `matrices[q - 1]` is `D_q`, mapping level `q` to level `q - 1`.
    pub(crate) fn run(sizes: Vec<usize>, matrices: &[SparseMatrix<T>]) -> Result<Self, Overflow> {
        let levels = sizes.len();
        let mut mats: Vec<Mat<T>> = matrices.iter().map(Mat::from_sparse).collect();
        let mut alive: Vec<Vec<bool>> = sizes.iter().map(|&n| vec![true; n]).collect();
        let mut heap = BinaryHeap::new();
        for (m, mat) in mats.iter().enumerate() {
            for j in 0..mat.cols.len() {
                if let Some((cost, _)) = mat.pivot_in(j) {
                    heap.push(Reverse((cost, m + 1, j)));
                }
            }
        }
        let mut steps = Vec::new();
        while let Some(Reverse((cost, q, b))) = heap.pop() {
            if !alive[q][b] {
                continue;
            }
            let Some((now, a)) = mats[q - 1].pivot_in(b) else { continue };
            if now > cost {
                heap.push(Reverse((now, q, b)));
                continue;
            }
            let mat = &mut mats[q - 1];
            let col_b = mat.cols[b].clone();
            let lambda_inv = mat.entry(a, b).expect("pivot present").unit_inverse();
            let mut row_a = mat.row_entries(a);
            row_a.retain(|(j, _)| *j != b);
            for (j, delta) in &row_a {
                let mu = delta.mul_checked(&lambda_inv)?;
                mat.axpy(*j, &mu, &col_b)?;
            }
            mat.clear_column(b);
            mat.rows[a].clear();
            debug_assert_eq!(mat.row_len[a], 0);
            for (j, _) in &row_a {
                if let Some((c, _)) = mat.pivot_in(*j) {
                    heap.push(Reverse((c, q, *j)));
                }
            }
            alive[q][b] = false;
            alive[q - 1][a] = false;
            if q >= 2 {
                mats[q - 2].clear_column(a);
            }
            if q < levels - 1 {
                for j in mats[q].clear_row(b) {
                    if let Some((c, _)) = mats[q].pivot_in(j) {
                        heap.push(Reverse((c, q + 1, j)));
                    }
                }
            }
            steps.push(Step { q, a, b, lambda_inv, col_b, row_a });
        }

        let survivors: Vec<Vec<usize>> = alive.iter().map(|l| (0..l.len()).filter(|&i| l[i]).collect()).collect();
        let mut position: Vec<Vec<Option<usize>>> = sizes.iter().map(|&n| vec![None; n]).collect();
        for (l, s) in survivors.iter().enumerate() {
            for (p, &i) in s.iter().enumerate() {
                position[l][i] = Some(p);
            }
        }
        let residual = (1..levels)
            .map(|q| {
                let mut d = Dense::zeros(survivors[q - 1].len(), survivors[q].len());
                for (p, &j) in survivors[q].iter().enumerate() {
                    for (i, v) in &mats[q - 1].cols[j] {
                        let row = position[q - 1][*i].expect("entries only in live rows");
                        d.set(row, p, v.clone());
                    }
                }
                d
            })
            .collect();
        Ok(Reduction { sizes, steps, survivors, residual })
    }

    pub(crate) fn levels(&self) -> usize {
        self.sizes.len()
    }

    pub(crate) fn residual_size(&self, level: usize) -> usize {
        self.survivors[level].len()
    }

    /// The reduced `D_q`, or `None` for `q = 0` and past the top.
    pub(crate) fn residual(&self, q: usize) -> Option<&Dense<T>> {
        q.checked_sub(1).and_then(|i| self.residual.get(i))
    }

    /// Pushes a chain of the original complex at `level` to the reduced
    /// complex.
    pub(crate) fn project(&self, level: usize, x: &[(usize, T)]) -> Result<Vec<T>, Overflow> {
        let mut v = vec![T::zero(); self.sizes[level]];
        for (i, c) in x {
            v[*i] = c.clone();
        }
        for s in &self.steps {
            if s.q == level {
                v[s.b] = T::zero();
            } else if s.q == level + 1 {
                let xa = v[s.a].clone();
                if !xa.is_zero() {
                    let mu = xa.mul_checked(&s.lambda_inv)?;
                    for (i, w) in &s.col_b {
                        v[*i] = v[*i].sub_checked(&mu.mul_checked(w)?)?;
                    }
                }
            }
        }
        Ok(self.survivors[level].iter().map(|&i| v[i].clone()).collect())
    }

    /// Lifts a chain of the reduced complex at `level` to the original one.
    pub(crate) fn include(&self, level: usize, y: &[T]) -> Result<Vec<(usize, T)>, Overflow> {
        let mut v = vec![T::zero(); self.sizes[level]];
        for (p, c) in y.iter().enumerate() {
            v[self.survivors[level][p]] = c.clone();
        }
        for s in self.steps.iter().rev() {
            if s.q == level {
                let mut acc = T::zero();
                for (j, r) in &s.row_a {
                    if !v[*j].is_zero() {
                        acc = acc.add_checked(&r.mul_checked(&v[*j])?)?;
                    }
                }
                v[s.b] = -acc.mul_checked(&s.lambda_inv)?;
            }
        }
        Ok(v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect())
    }

    #[cfg(test)]
    pub(crate) fn survives(&self, level: usize, i: usize) -> bool {
        self.survivors[level].binary_search(&i).is_ok()
    }
}
