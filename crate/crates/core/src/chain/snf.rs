//! Dense Smith normal form with optional unimodular transforms.

use crate::scalar::{EuclideanRing, Overflow};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Dense<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: EuclideanRing> Dense<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Dense { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Dense { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Rows `from..` as a new matrix.
    pub fn rows_from(&self, from: usize) -> Self {
        Dense { rows: self.rows - from, cols: self.cols, data: self.data[from * self.cols..].to_vec() }
    }

    /// Columns `from..` as a new matrix.
    pub fn cols_from(&self, from: usize) -> Self {
        let data = (0..self.rows).flat_map(|i| self.row(i)[from..].to_vec()).collect();
        Dense { rows: self.rows, cols: self.cols - from, data }
    }

    pub fn mul(&self, o: &Dense<T>) -> Result<Dense<T>, Overflow> {
        assert_eq!(self.cols, o.rows, "shape mismatch");
        let mut out: Dense<T> = Dense::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).add_checked(&a.mul_checked(b)?)?;
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[T]) -> Result<Vec<T>, Overflow> {
        assert_eq!(self.cols, x.len(), "shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for (a, b) in self.row(i).iter().zip(x) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add_checked(&a.mul_checked(b)?)?;
                    }
                }
                Ok(acc)
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += c * row[src]
    fn add_row(&mut self, dst: usize, src: usize, c: &T) -> Result<(), Overflow> {
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if !s.is_zero() {
                let v = self.data[dst * self.cols + j].add_checked(&c.mul_checked(s)?)?;
                self.data[dst * self.cols + j] = v;
            }
        }
        Ok(())
    }

    /// col[dst] += c * col[src]
    fn add_col(&mut self, dst: usize, src: usize, c: &T) -> Result<(), Overflow> {
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src];
            if !s.is_zero() {
                let v = self.data[i * self.cols + dst].add_checked(&c.mul_checked(s)?)?;
                self.data[i * self.cols + dst] = v;
            }
        }
        Ok(())
    }

    fn scale_row(&mut self, i: usize, u: &T) -> Result<(), Overflow> {
        for j in 0..self.cols {
            let v = self.data[i * self.cols + j].mul_checked(u)?;
            self.data[i * self.cols + j] = v;
        }
        Ok(())
    }

    fn scale_col(&mut self, j: usize, u: &T) -> Result<(), Overflow> {
        for i in 0..self.rows {
            let v = self.data[i * self.cols + j].mul_checked(u)?;
            self.data[i * self.cols + j] = v;
        }
        Ok(())
    }
}

/// `U * M * V = D` with `D` diagonal, `d_1 | d_2 | ...`, each `d_i` in
/// normal form (positive for integers).
#[derive(Clone, Debug)]
pub struct Smith<T> {
    pub factors: Vec<T>,
    pub u: Option<Dense<T>>,
    pub u_inv: Option<Dense<T>>,
    pub v: Option<Dense<T>>,
    pub v_inv: Option<Dense<T>>,
}

impl<T> Smith<T> {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }
}

struct Work<T> {
    m: Dense<T>,
    u: Option<(Dense<T>, Dense<T>)>,
    v: Option<(Dense<T>, Dense<T>)>,
}

impl<T: EuclideanRing> Work<T> {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.m.swap_rows(a, b);
        if let Some((u, ui)) = &mut self.u {
            u.swap_rows(a, b);
            ui.swap_cols(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.m.swap_cols(a, b);
        if let Some((v, vi)) = &mut self.v {
            v.swap_cols(a, b);
            vi.swap_rows(a, b);
        }
    }

    fn add_row(&mut self, dst: usize, src: usize, c: &T) -> Result<(), Overflow> {
        self.m.add_row(dst, src, c)?;
        if let Some((u, ui)) = &mut self.u {
            u.add_row(dst, src, c)?;
            ui.add_col(src, dst, &-c.clone())?;
        }
        Ok(())
    }

    fn add_col(&mut self, dst: usize, src: usize, c: &T) -> Result<(), Overflow> {
        self.m.add_col(dst, src, c)?;
        if let Some((v, vi)) = &mut self.v {
            v.add_col(dst, src, c)?;
            vi.add_row(src, dst, &-c.clone())?;
        }
        Ok(())
    }

    fn scale_row(&mut self, i: usize, unit: &T) -> Result<(), Overflow> {
        self.m.scale_row(i, unit)?;
        if let Some((u, ui)) = &mut self.u {
            u.scale_row(i, unit)?;
            ui.scale_col(i, &unit.unit_inverse())?;
        }
        Ok(())
    }

    /// Smallest nonzero entry of the trailing block.
    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(u128, usize, usize)> = None;
        for i in t..self.m.rows {
            for j in t..self.m.cols {
                let x = self.m.get(i, j);
                if !x.is_zero() {
                    let s = x.size();
                    if best.is_none_or(|b| s < b.0) {
                        best = Some((s, i, j));
                        if s == 1 {
                            return Some((i, j));
                        }
                    }
                }
            }
        }
        best.map(|b| (b.1, b.2))
    }
}

/// Smith normal form by smallest-magnitude pivoting.
pub fn smith<T: EuclideanRing>(m: &Dense<T>, want_u: bool, want_v: bool) -> Result<Smith<T>, Overflow> {
    let (r, c) = (m.rows, m.cols);
    let mut w = Work {
        m: m.clone(),
        u: want_u.then(|| (Dense::identity(r), Dense::identity(r))),
        v: want_v.then(|| (Dense::identity(c), Dense::identity(c))),
    };
    let mut factors = Vec::new();
    let mut t = 0;
    while t < r.min(c) {
        let Some((pi, pj)) = w.min_entry(t) else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..r {
                let x = w.m.get(i, t).clone();
                if x.is_zero() {
                    continue;
                }
                let (q, rem) = x.div_rem_euclid(w.m.get(t, t))?;
                w.add_row(i, t, &-q)?;
                if !rem.is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..c {
                let x = w.m.get(t, j).clone();
                if x.is_zero() {
                    continue;
                }
                let (q, rem) = x.div_rem_euclid(w.m.get(t, t))?;
                w.add_col(j, t, &-q)?;
                if !rem.is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // a remainder is now smaller than the pivot; bring the
                // smallest entry of row and column t into the corner
                let mut best = (w.m.get(t, t).size(), t, t);
                for i in t + 1..r {
                    let x = w.m.get(i, t);
                    if !x.is_zero() && x.size() < best.0 {
                        best = (x.size(), i, t);
                    }
                }
                for j in t + 1..c {
                    let x = w.m.get(t, j);
                    if !x.is_zero() && x.size() < best.0 {
                        best = (x.size(), t, j);
                    }
                }
                w.swap_rows(t, best.1);
                w.swap_cols(t, best.2);
                continue;
            }
            // row and column t are clear; enforce divisibility
            let p = w.m.get(t, t).clone();
            let mut bad = None;
            'scan: for i in t + 1..r {
                for j in t + 1..c {
                    let x = w.m.get(i, j);
                    if !x.is_zero() && !x.div_rem_euclid(&p)?.1.is_zero() {
                        bad = Some(i);
                        break 'scan;
                    }
                }
            }
            match bad {
                Some(i) => w.add_row(t, i, &T::one())?,
                None => break,
            }
        }
        let unit = w.m.get(t, t).normalizing_unit();
        w.scale_row(t, &unit)?;
        factors.push(w.m.get(t, t).clone());
        t += 1;
    }
    let (u, u_inv) = match w.u {
        Some((a, b)) => (Some(a), Some(b)),
        None => (None, None),
    };
    let (v, v_inv) = match w.v {
        Some((a, b)) => (Some(a), Some(b)),
        None => (None, None),
    };
    Ok(Smith { factors, u, u_inv, v, v_inv })
}
