//! Cellular chain complexes over a Euclidean ring, exact homology, and
//! induced maps.

mod connectivity;
mod homology;
mod reduce;
pub mod snf;

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::hom::{facets_of, CellularMap, HomComplex, MapSpecies, MultiHom, VertexSet};
use crate::scalar::{EuclideanRing, Overflow};
use crate::simplicial::SimplicialComplex;

pub use connectivity::{connectivity_estimate, edge_path_group_trivial, CertificateLevel, Connectivity, DEFAULT_TIETZE_PASSES};
pub use homology::{
    betti_mod_p, homology, induced_on_homology, DimHomology, HomologyBasis, HomologyCoordinates, HomologyGroups, InducedMap,
    IntegralHomology,
};

/// A sparse vector: strictly increasing indices, nonzero values.
pub type SparseVec<T> = Vec<(usize, T)>;

/// Column-major sparse matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<T> {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec<T>>,
}

impl<T: EuclideanRing> SparseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    /// Columns need not be sorted; duplicate entries are summed.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, T)>>) -> Result<Self, Overflow> {
        let cols = columns.len();
        let columns = columns.into_iter().map(normalize).collect::<Result<Vec<_>, _>>()?;
        debug_assert!(columns.iter().flatten().all(|(i, _)| *i < rows));
        Ok(SparseMatrix { rows, cols, columns })
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix { rows: n, cols: n, columns: (0..n).map(|i| vec![(i, T::one())]).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &[(usize, T)] {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec<T>] {
        &self.columns
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        match self.columns[j].binary_search_by_key(&i, |e| e.0) {
            Ok(p) => self.columns[j][p].1.clone(),
            Err(_) => T::zero(),
        }
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn mul_vec(&self, x: &[(usize, T)]) -> Result<SparseVec<T>, Overflow> {
        let mut acc = Vec::new();
        for (j, c) in x {
            for (i, v) in &self.columns[*j] {
                acc.push((*i, v.mul_checked(c)?));
            }
        }
        normalize(acc)
    }

    /// `self * other`.
    pub fn mul(&self, other: &SparseMatrix<T>) -> Result<SparseMatrix<T>, Overflow> {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let columns = other.columns.iter().map(|c| self.mul_vec(c)).collect::<Result<Vec<_>, _>>()?;
        Ok(SparseMatrix { rows: self.rows, cols: other.cols, columns })
    }

    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let mut d = vec![vec![T::zero(); self.cols]; self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            for (i, v) in c {
                d[*i][j] = v.clone();
            }
        }
        d
    }

    pub fn map<U: EuclideanRing>(&self, f: impl Fn(&T) -> U) -> SparseMatrix<U> {
        let columns = self.columns.iter().map(|c| c.iter().map(|(i, v)| (*i, f(v))).filter(|(_, v)| !v.is_zero()).collect()).collect();
        SparseMatrix { rows: self.rows, cols: self.cols, columns }
    }
}

/// Sorts, merges duplicates, drops zeros.
pub(crate) fn normalize<T: EuclideanRing>(mut v: Vec<(usize, T)>) -> Result<SparseVec<T>, Overflow> {
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec<T> = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y = y.add_checked(&x)?,
            _ => out.push((i, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    Ok(out)
}

/// Free chain groups of ranks `ranks[d]` with boundaries `d -> d - 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainComplex<T> {
    ranks: Vec<usize>,
    // boundaries[d - 1] is the boundary out of dimension d
    boundaries: Vec<SparseMatrix<T>>,
}

impl<T: EuclideanRing> ChainComplex<T> {
    /// Checks shapes and that consecutive boundaries compose to zero.
    pub fn new(ranks: Vec<usize>, boundaries: Vec<SparseMatrix<T>>) -> Result<Self> {
        if boundaries.len() != ranks.len().saturating_sub(1) {
            return Err(Error::Internal(format!("{} boundaries for {} chain groups", boundaries.len(), ranks.len())));
        }
        for (d, b) in boundaries.iter().enumerate() {
            if b.rows() != ranks[d] || b.cols() != ranks[d + 1] {
                return Err(Error::Internal(format!("boundary out of dimension {} has the wrong shape", d + 1)));
            }
        }
        let c = ChainComplex { ranks, boundaries };
        for d in 2..c.ranks.len() {
            let dd = c.boundaries[d - 2].mul(&c.boundaries[d - 1]).map_err(|_| Error::Internal("overflow in boundary check".into()))?;
            if !dd.is_zero() {
                return Err(Error::Internal(format!("boundary squared is nonzero out of dimension {d}")));
            }
        }
        Ok(c)
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, d: usize) -> usize {
        self.ranks.get(d).copied().unwrap_or(0)
    }

    /// Top dimension with a nonzero group, `None` if all groups are zero.
    pub fn dim(&self) -> Option<usize> {
        self.ranks.iter().rposition(|&r| r > 0)
    }

    /// The boundary out of dimension `d >= 1`.
    pub fn boundary(&self, d: usize) -> Option<&SparseMatrix<T>> {
        d.checked_sub(1).and_then(|i| self.boundaries.get(i))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks.iter().enumerate().map(|(d, &r)| if d % 2 == 0 { r as i64 } else { -(r as i64) }).sum()
    }

    pub fn map_coefficients<U: EuclideanRing>(&self, f: impl Fn(&T) -> U + Copy) -> ChainComplex<U> {
        ChainComplex { ranks: self.ranks.clone(), boundaries: self.boundaries.iter().map(|b| b.map(f)).collect() }
    }
}

/// A degree-0 map of chain complexes, one matrix per dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap<T> {
    matrices: Vec<SparseMatrix<T>>,
}

impl<T: EuclideanRing> ChainMap<T> {
    pub fn new(matrices: Vec<SparseMatrix<T>>) -> Self {
        ChainMap { matrices }
    }

    pub fn identity(c: &ChainComplex<T>) -> Self {
        ChainMap { matrices: c.ranks.iter().map(|&r| SparseMatrix::identity(r)).collect() }
    }

    pub fn matrix(&self, d: usize) -> Option<&SparseMatrix<T>> {
        self.matrices.get(d)
    }

    pub fn matrices(&self) -> &[SparseMatrix<T>] {
        &self.matrices
    }

    /// Image of a `d`-chain.
    pub fn apply(&self, d: usize, x: &[(usize, T)]) -> Result<SparseVec<T>, Overflow> {
        match self.matrices.get(d) {
            Some(m) => m.mul_vec(x),
            None => Ok(Vec::new()),
        }
    }

    /// `next o self`.
    pub fn then(&self, next: &ChainMap<T>) -> Result<ChainMap<T>, Overflow> {
        let n = self.matrices.len().min(next.matrices.len());
        let matrices = (0..n).map(|d| next.matrices[d].mul(&self.matrices[d])).collect::<Result<Vec<_>, _>>()?;
        Ok(ChainMap { matrices })
    }

    /// `target.boundary(d) * f_d == f_(d-1) * source.boundary(d)` for all
    /// `d`, with shapes matching the ranks.
    pub fn commutes(&self, source: &ChainComplex<T>, target: &ChainComplex<T>) -> bool {
        let top = source.ranks.len().max(target.ranks.len());
        for d in 0..top {
            let (sr, tr) = (source.rank(d), target.rank(d));
            match self.matrices.get(d) {
                Some(m) if m.rows() == tr && m.cols() == sr => {}
                None if sr == 0 || tr == 0 => {}
                _ => return false,
            }
        }
        for d in 1..source.ranks.len() {
            let Some(sb) = source.boundary(d) else { continue };
            for (j, col) in sb.columns().iter().enumerate() {
                let e = vec![(j, T::one())];
                let lhs = self.apply(d, &e).and_then(|y| match target.boundary(d) {
                    Some(tb) => tb.mul_vec(&y),
                    None => Ok(Vec::new()),
                });
                let rhs = self.apply(d - 1, col);
                match (lhs, rhs) {
                    (Ok(l), Ok(r)) if l == r => {}
                    _ => return false,
                }
            }
        }
        true
    }

    pub fn map_coefficients<U: EuclideanRing>(&self, f: impl Fn(&T) -> U + Copy) -> ChainMap<U> {
        ChainMap { matrices: self.matrices.iter().map(|m| m.map(f)).collect() }
    }
}

/// The cellular chain complex of a Hom-complex, oriented by
/// [`HomComplex::cell_facets`].
pub fn chains_of(h: &HomComplex) -> Result<ChainComplex<i64>> {
    let ranks = h.counts();
    let mut boundaries = Vec::new();
    for d in 1..ranks.len() {
        let columns = h
            .cells_of_dim(d)
            .iter()
            .map(|eta| {
                facets_of(eta)
                    .into_iter()
                    .map(|(face, s)| {
                        let (fd, i) = h.position(&face).ok_or_else(|| Error::Internal(format!("face {face:?} missing")))?;
                        debug_assert_eq!(fd, d - 1);
                        Ok((i, s))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        boundaries.push(SparseMatrix::from_columns(ranks[d - 1], columns).map_err(|_| Error::Internal("overflow".into()))?);
    }
    ChainComplex::new(ranks, boundaries)
}

/// The simplicial chain complex of `K`, simplices in lexicographic order.
pub fn simplicial_chains(k: &SimplicialComplex) -> ChainComplex<i64> {
    let layers = k.all_simplices();
    let ranks: Vec<usize> = layers.iter().map(Vec::len).collect();
    let mut boundaries = Vec::new();
    for d in 1..layers.len() {
        let index: HashMap<&[usize], usize> = layers[d - 1].iter().enumerate().map(|(i, s)| (s.vertices(), i)).collect();
        let columns = layers[d]
            .iter()
            .map(|s| {
                (0..s.len())
                    .map(|j| {
                        let mut face = s.vertices().to_vec();
                        face.remove(j);
                        (index[face.as_slice()], if j % 2 == 0 { 1 } else { -1 })
                    })
                    .collect()
            })
            .collect();
        boundaries.push(SparseMatrix::from_columns(ranks[d - 1], columns).expect("unit entries"));
    }
    ChainComplex::new(ranks, boundaries).expect("simplicial boundary squares to zero")
}

/// Chain-level realization of a cellular map between Hom-complexes,
/// checked to commute with the boundaries.
///
/// Precomposition with a non-injective `f` sends a product cell through a
/// diagonal; on chains this uses the iterated Alexander-Whitney map on each
/// repeated factor and the augmentation on factors that are dropped. Both
/// precomposition and transport then reorder the factors by vertex of the
/// new source with the Koszul sign. Postcomposition keeps the factor order
/// and relabels each simplex, contributing the sign of the sorting
/// permutation.
pub fn chain_map_of(m: &CellularMap<'_>) -> Result<ChainMap<i64>> {
    let (src, tgt) = (m.source(), m.target());
    let top = src.cells().len();
    let mut matrices = Vec::with_capacity(top);
    for d in 0..top {
        let mut columns = Vec::with_capacity(src.cells_of_dim(d).len());
        for eta in src.cells_of_dim(d) {
            let terms = match m.species() {
                MapSpecies::Precompose(f) | MapSpecies::Transport(f) => precompose_chain(eta, f.image(), f.source().n_vertices()),
                MapSpecies::Postcompose(g) => postcompose_chain(eta, g.image()),
            };
            let mut col = Vec::with_capacity(terms.len());
            for (cell, s) in terms {
                let (cd, i) = tgt.position(&cell).ok_or_else(|| Error::Internal(format!("chain image {cell:?} is not a cell")))?;
                if cd != d {
                    return Err(Error::Internal("chain image has the wrong dimension".into()));
                }
                col.push((i, s));
            }
            columns.push(col);
        }
        let rows = tgt.cells_of_dim(d).len();
        matrices.push(SparseMatrix::from_columns(rows, columns).map_err(|_| Error::Internal("overflow".into()))?);
    }
    let map = ChainMap::new(matrices);
    if !map.commutes(&chains_of(src)?, &chains_of(tgt)?) {
        return Err(Error::Internal("induced chain map does not commute with the boundary".into()));
    }
    Ok(map)
}

fn precompose_chain(eta: &MultiHom, image: &[usize], n: usize) -> Vec<(MultiHom, i64)> {
    let mut preimages: Vec<Vec<usize>> = vec![Vec::new(); eta.assignment().len()];
    for (v, &w) in image.iter().enumerate() {
        preimages[w].push(v);
    }
    // Each partial term: pieces in source-factor order, as (target vertex, set).
    let mut partial: Vec<Vec<(usize, VertexSet)>> = vec![Vec::new()];
    for (w, set) in eta.assignment().iter().enumerate() {
        let elems = set.to_vec();
        let pre = &preimages[w];
        if pre.is_empty() {
            if elems.len() > 1 {
                return Vec::new();
            }
            continue;
        }
        let splits = aw_splits(&elems, pre.len());
        let mut next = Vec::with_capacity(partial.len() * splits.len());
        for p in &partial {
            for pieces in &splits {
                let mut q = p.clone();
                q.extend(pre.iter().copied().zip(pieces.iter().copied()));
                next.push(q);
            }
        }
        partial = next;
    }
    partial
        .into_iter()
        .map(|pieces| {
            let mut odd = false;
            for i in 0..pieces.len() {
                for j in i + 1..pieces.len() {
                    if pieces[i].0 > pieces[j].0 {
                        let di = pieces[i].1.len() - 1;
                        let dj = pieces[j].1.len() - 1;
                        odd ^= di * dj % 2 == 1;
                    }
                }
            }
            let mut sets = vec![VertexSet::default(); n];
            for (v, s) in pieces {
                sets[v] = s;
            }
            (MultiHom::new(sets), if odd { -1 } else { 1 })
        })
        .collect()
}

/// Iterated Alexander-Whitney splittings of the simplex on `elems` into `r`
/// consecutive pieces `[a_0..a_i1], [a_i1..a_i2], ..., [a_i(r-1)..a_s]`.
fn aw_splits(elems: &[usize], r: usize) -> Vec<Vec<VertexSet>> {
    fn rec(elems: &[usize], r: usize, start: usize, cur: &mut Vec<VertexSet>, out: &mut Vec<Vec<VertexSet>>) {
        let s = elems.len() - 1;
        if cur.len() == r - 1 {
            cur.push(VertexSet::from_slice(&elems[start..=s]));
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for cut in start..=s {
            cur.push(VertexSet::from_slice(&elems[start..=cut]));
            rec(elems, r, cut, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(elems, r, 0, &mut Vec::with_capacity(r), &mut out);
    out
}

fn postcompose_chain(eta: &MultiHom, image: &[usize]) -> Vec<(MultiHom, i64)> {
    let mut odd = false;
    let sets = eta
        .assignment()
        .iter()
        .map(|s| {
            let im: Vec<usize> = s.iter().map(|x| image[x]).collect();
            for i in 0..im.len() {
                for j in i + 1..im.len() {
                    odd ^= im[i] > im[j];
                }
            }
            VertexSet::from_slice(&im)
        })
        .collect();
    vec![(MultiHom::new(sets), if odd { -1 } else { 1 })]
}
