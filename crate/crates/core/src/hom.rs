//! The prodsimplicial cell complex `Hom(K, L)` and the cellular maps induced
//! by non-degenerate simplicial maps in either variable.
//!
//! A cell is a [`MultiHom`] `eta`, assigning to every vertex of `K` a
//! nonempty vertex set of `L`, such that
//!
//! 1. `eta(u)` and `eta(v)` are disjoint whenever `{u, v}` is an edge of `K`;
//! 2. for every simplex `sigma` of `K` the join of the discrete sets
//!    `eta(v)`, `v` in `sigma`, lies in `L`: every choice of one vertex from
//!    each `eta(v)` spans a simplex of `L`.
//!
//! The cell is the product of the simplices on the sets `eta(v)`, oriented
//! as a product in ascending vertex order of `K`.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simplicial::{SimplicialComplex, VertexMap};

pub const DEFAULT_CELL_CAP: usize = 2_000_000;

/// A set of target vertices, at most 64 of them.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    pub fn from_slice(vs: &[usize]) -> Self {
        VertexSet(vs.iter().fold(0, |m, &v| m | (1u64 << v)))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 & (1 << v) != 0
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1 << v))
    }

    pub fn is_disjoint(self, o: VertexSet) -> bool {
        self.0 & o.0 == 0
    }

    pub fn is_subset(self, o: VertexSet) -> bool {
        self.0 & !o.0 == 0
    }

    /// Ascending elements.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl Ord for VertexSet {
    /// Lexicographic order of the sorted element lists.
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A cell of `Hom(K, L)`, indexed by the vertices of `K`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiHom(Vec<VertexSet>);

impl MultiHom {
    pub fn new(assignment: Vec<VertexSet>) -> Self {
        MultiHom(assignment)
    }

    pub fn from_lists(lists: &[Vec<usize>]) -> Self {
        MultiHom(lists.iter().map(|l| VertexSet::from_slice(l)).collect())
    }

    pub fn assignment(&self) -> &[VertexSet] {
        &self.0
    }

    pub fn get(&self, v: usize) -> VertexSet {
        self.0[v]
    }

    pub fn dim(&self) -> usize {
        self.0.iter().map(|s| s.len().saturating_sub(1)).sum()
    }

    pub fn to_lists(&self) -> Vec<Vec<usize>> {
        self.0.iter().map(|s| s.to_vec()).collect()
    }

    /// `v -> eta(f(v))`.
    pub fn precompose(&self, image: &[usize]) -> MultiHom {
        MultiHom(image.iter().map(|&w| self.0[w]).collect())
    }
}

impl fmt::Debug for MultiHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_lists())
    }
}

/// Membership oracle for the simplices of a target complex.
pub(crate) struct FaceOracle {
    faces: HashSet<u64>,
    pub(crate) n: usize,
}

impl FaceOracle {
    pub(crate) fn new(l: &SimplicialComplex) -> Result<Self> {
        if l.n_vertices() > 64 {
            return Err(Error::TargetTooLarge(l.n_vertices()));
        }
        let mut faces = HashSet::new();
        for f in l.facets() {
            let mask = VertexSet::from_slice(f.vertices()).bits();
            // every nonempty submask
            let mut sub = mask;
            while sub != 0 {
                if !faces.insert(sub) {
                    // already seen from an overlapping facet; keep going,
                    // other submasks may still be new
                }
                sub = (sub - 1) & mask;
            }
        }
        Ok(FaceOracle { faces, n: l.n_vertices() })
    }

    pub(crate) fn is_face(&self, mask: u64) -> bool {
        mask == 0 || self.faces.contains(&mask)
    }
}

/// Every choice of one vertex per set, together with `acc`, spans a face.
fn transversals_are_faces(oracle: &FaceOracle, sets: &[VertexSet], acc: u64) -> bool {
    match sets.split_first() {
        None => true,
        Some((first, rest)) => first.iter().all(|y| {
            let next = acc | (1 << y);
            oracle.is_face(next) && transversals_are_faces(oracle, rest, next)
        }),
    }
}

/// The cell complex `Hom(K, L)`.
#[derive(Clone, Debug)]
pub struct HomComplex {
    source: SimplicialComplex,
    target: SimplicialComplex,
    cells: Vec<Vec<MultiHom>>,
    index: HashMap<MultiHom, (usize, usize)>,
}

struct Builder<'a> {
    oracle: FaceOracle,
    // earlier vertices adjacent to v
    back_neighbours: Vec<Vec<usize>>,
    // for each facet through v, its vertices smaller than v
    back_facets: Vec<Vec<Vec<usize>>>,
    cap: usize,
    out: &'a mut Vec<MultiHom>,
}

impl Builder<'_> {
    fn allowed(&self, v: usize, current: &[VertexSet]) -> u64 {
        let full = if self.oracle.n == 64 { u64::MAX } else { (1u64 << self.oracle.n) - 1 };
        let mut allowed = full;
        for &u in &self.back_neighbours[v] {
            allowed &= !current[u].bits();
        }
        let mut result = 0;
        let mut sets = Vec::new();
        for x in VertexSet(allowed).iter() {
            let ok = self.back_facets[v].iter().all(|w| {
                sets.clear();
                sets.extend(w.iter().map(|&u| current[u]));
                transversals_are_faces(&self.oracle, &sets, 1 << x)
            });
            if ok {
                result |= 1 << x;
            }
        }
        result
    }

    fn run(&mut self, v: usize, current: &mut Vec<VertexSet>) -> Result<()> {
        if v == current.len() {
            if self.out.len() >= self.cap {
                return Err(Error::CapExceeded { reached: self.out.len() + 1, cap: self.cap });
            }
            self.out.push(MultiHom(current.clone()));
            return Ok(());
        }
        let allowed = self.allowed(v, current);
        let mut sub = allowed;
        while sub != 0 {
            current[v] = VertexSet(sub);
            self.run(v + 1, current)?;
            sub = (sub - 1) & allowed;
        }
        current[v] = VertexSet(0);
        Ok(())
    }
}

impl HomComplex {
    /// Enumerates every cell by depth-first assignment over the vertices of
    /// `K` in ascending order, pruning with conditions (1) and (2) against
    /// the already-assigned vertices.
    pub fn build(k: &SimplicialComplex, l: &SimplicialComplex, cap: Option<usize>) -> Result<Self> {
        let n = k.n_vertices();
        if n == 0 {
            return Err(Error::ParameterOutOfRange("source complex has no vertices".into()));
        }
        let oracle = FaceOracle::new(l)?;
        let adjacency = k.adjacency();
        let back_neighbours = adjacency.iter().enumerate().map(|(v, a)| a.iter().copied().filter(|&u| u < v).collect()).collect();
        let back_facets = (0..n)
            .map(|v| {
                k.star_facets(v)
                    .map(|f| f.vertices().iter().copied().filter(|&u| u < v).collect::<Vec<_>>())
                    .filter(|w| !w.is_empty())
                    .collect()
            })
            .collect();
        let mut found = Vec::new();
        let cap = cap.unwrap_or(DEFAULT_CELL_CAP);
        if l.n_vertices() > 0 {
            let mut b = Builder { oracle, back_neighbours, back_facets, cap, out: &mut found };
            b.run(0, &mut vec![VertexSet(0); n])?;
        }
        Ok(Self::from_cells(k.clone(), l.clone(), found))
    }

    fn from_cells(source: SimplicialComplex, target: SimplicialComplex, found: Vec<MultiHom>) -> Self {
        let top = found.iter().map(MultiHom::dim).max();
        let mut cells: Vec<Vec<MultiHom>> = match top {
            Some(t) => vec![Vec::new(); t + 1],
            None => Vec::new(),
        };
        for c in found {
            cells[c.dim()].push(c);
        }
        let mut index = HashMap::new();
        for (d, layer) in cells.iter_mut().enumerate() {
            layer.sort();
            for (i, c) in layer.iter().enumerate() {
                index.insert(c.clone(), (d, i));
            }
        }
        HomComplex { source, target, cells, index }
    }

    /// `Hom(Delta^[k], L)`, the k-fold deleted product of `L`.
    pub fn deleted_product(l: &SimplicialComplex, k: usize, cap: Option<usize>) -> Result<Self> {
        if k < 1 {
            return Err(Error::ParameterOutOfRange("deleted product needs k >= 1".into()));
        }
        Self::build(&SimplicialComplex::simplex_on(k), l, cap)
    }

    pub fn source(&self) -> &SimplicialComplex {
        &self.source
    }

    pub fn target(&self) -> &SimplicialComplex {
        &self.target
    }

    /// Cells grouped by dimension, each layer in lexicographic order.
    pub fn cells(&self) -> &[Vec<MultiHom>] {
        &self.cells
    }

    pub fn cells_of_dim(&self, d: usize) -> &[MultiHom] {
        self.cells.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn len(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Top cell dimension, or `None` when the complex is empty.
    pub fn dim(&self) -> Option<usize> {
        self.cells.len().checked_sub(1)
    }

    /// `(dimension, ordinal)` of a cell.
    pub fn position(&self, eta: &MultiHom) -> Option<(usize, usize)> {
        self.index.get(eta).copied()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells.iter().enumerate().map(|(d, l)| if d % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) }).sum()
    }

    /// Codimension-one faces with their incidence signs: delete `x` from
    /// `eta(v)`; the sign is `(-1)^(offset + j)` with `offset` the summed
    /// dimensions of the factors before `v` and `j` the position of `x` in
    /// `eta(v)`.
    pub fn cell_facets(&self, eta: &MultiHom) -> Result<Vec<(MultiHom, i64)>> {
        if !self.index.contains_key(eta) {
            return Err(Error::NotACell(format!("{eta:?}")));
        }
        if eta.dim() == 0 {
            return Err(Error::ZeroCell);
        }
        Ok(facets_of(eta))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.doc()).expect("hom complex serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.doc()).expect("hom complex serializes")
    }

    fn doc(&self) -> HomDoc {
        HomDoc {
            source: self.source.clone(),
            target: self.target.clone(),
            cells: self.cells.iter().flatten().map(|c| (c.dim(), c.to_lists())).collect(),
        }
    }

    /// Parses a serialized complex. The cells are recomputed from source and
    /// target and must agree with the listed ones.
    pub fn from_json(s: &str, cap: Option<usize>) -> Result<Self> {
        let doc: HomDoc = serde_json::from_str(s)?;
        let h = Self::build(&doc.source, &doc.target, cap)?;
        let mut listed: Vec<(usize, MultiHom)> = doc.cells.iter().map(|(d, l)| (*d, MultiHom::from_lists(l))).collect();
        listed.sort();
        let mut ours: Vec<(usize, MultiHom)> = h.cells.iter().flatten().map(|c| (c.dim(), c.clone())).collect();
        ours.sort();
        if listed != ours {
            return Err(Error::Hypothesis("listed cells do not match Hom(source, target)".into()));
        }
        Ok(h)
    }
}

pub(crate) fn facets_of(eta: &MultiHom) -> Vec<(MultiHom, i64)> {
    let mut out = Vec::new();
    let mut offset = 0;
    for (v, set) in eta.0.iter().enumerate() {
        let len = set.len();
        if len >= 2 {
            for (j, x) in set.iter().enumerate() {
                let mut face = eta.clone();
                face.0[v] = set.without(x);
                let sign = if (offset + j) % 2 == 0 { 1 } else { -1 };
                out.push((face, sign));
            }
        }
        offset += len.saturating_sub(1);
    }
    out
}

#[derive(Serialize, Deserialize)]
struct HomDoc {
    source: SimplicialComplex,
    target: SimplicialComplex,
    cells: Vec<(usize, Vec<Vec<usize>>)>,
}

/// How a cellular map between Hom-complexes arises.
#[derive(Clone, Debug)]
pub enum MapSpecies {
    /// `eta -> eta o f` for `f: K -> K'`, a map `Hom(K', L) -> Hom(K, L)`.
    Precompose(VertexMap),
    /// `eta -> g o eta` for `g: L -> L'`.
    Postcompose(VertexMap),
    /// Precomposition with a projectivity between two simplices, as a map
    /// of fibres `Hom(target, L) -> Hom(source, L)`.
    Transport(VertexMap),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellImage {
    pub cell: MultiHom,
    pub dim: usize,
    pub ordinal: usize,
    pub dimension_preserved: bool,
}

/// A cellular map between two Hom-complexes, recorded cell by cell.
#[derive(Clone, Debug)]
pub struct CellularMap<'a> {
    source: &'a HomComplex,
    target: &'a HomComplex,
    species: MapSpecies,
    images: Vec<Vec<CellImage>>,
}

impl<'a> CellularMap<'a> {
    pub fn source(&self) -> &'a HomComplex {
        self.source
    }

    pub fn target(&self) -> &'a HomComplex {
        self.target
    }

    pub fn species(&self) -> &MapSpecies {
        &self.species
    }

    pub fn image(&self, dim: usize, ordinal: usize) -> &CellImage {
        &self.images[dim][ordinal]
    }

    pub fn images(&self) -> &[Vec<CellImage>] {
        &self.images
    }

    pub fn apply(&self, eta: &MultiHom) -> Option<&CellImage> {
        let (d, i) = self.source.position(eta)?;
        Some(&self.images[d][i])
    }

    /// A dimension-preserving bijection on cells.
    pub fn is_cell_bijection(&self) -> bool {
        if self.source.counts() != self.target.counts() {
            return false;
        }
        let mut seen = HashSet::new();
        self.images.iter().flatten().all(|im| im.dimension_preserved && seen.insert((im.dim, im.ordinal)))
    }

    /// Every face of a cell maps into the closed image cell.
    pub fn respects_faces(&self) -> bool {
        self.source.cells.iter().flatten().all(|eta| {
            let img = &self.apply(eta).expect("own cell").cell;
            facets_of(eta).into_iter().all(|(face, _)| {
                let fi = &self.apply(&face).expect("faces are cells").cell;
                fi.0.iter().zip(&img.0).all(|(a, b)| a.is_subset(*b))
            })
        })
    }

    fn from_images(
        source: &'a HomComplex,
        target: &'a HomComplex,
        species: MapSpecies,
        map: impl Fn(&MultiHom) -> Result<MultiHom>,
    ) -> Result<Self> {
        let mut images = Vec::with_capacity(source.cells.len());
        for layer in &source.cells {
            let mut row = Vec::with_capacity(layer.len());
            for eta in layer {
                let cell = map(eta)?;
                let (dim, ordinal) = target
                    .position(&cell)
                    .ok_or_else(|| Error::NotACell(format!("image {cell:?} of {eta:?} is not a cell of the target")))?;
                row.push(CellImage { dimension_preserved: dim == eta.dim(), cell, dim, ordinal });
            }
            images.push(row);
        }
        Ok(CellularMap { source, target, species, images })
    }
}

/// `eta -> eta o f`, a map `Hom(K', L) -> Hom(K, L)` for `f: K -> K'`.
pub fn induced_precompose<'a>(h: &'a HomComplex, f: &VertexMap, target: &'a HomComplex) -> Result<CellularMap<'a>> {
    f.require_nondegenerate()?;
    if f.target() != &h.source || f.source() != &target.source || h.target != target.target {
        return Err(Error::MapMismatch);
    }
    let image = f.image().to_vec();
    CellularMap::from_images(h, target, MapSpecies::Precompose(f.clone()), |eta| Ok(eta.precompose(&image)))
}

/// `eta -> g o eta`, a map `Hom(K, L) -> Hom(K, L')` for `g: L -> L'`.
pub fn induced_postcompose<'a>(h: &'a HomComplex, g: &VertexMap, target: &'a HomComplex) -> Result<CellularMap<'a>> {
    g.require_nondegenerate()?;
    if g.source() != &h.target || g.target() != &target.target || h.source != target.source {
        return Err(Error::MapMismatch);
    }
    let image = g.image().to_vec();
    CellularMap::from_images(h, target, MapSpecies::Postcompose(g.clone()), |eta| {
        let sets = eta
            .0
            .iter()
            .map(|s| {
                let img = VertexSet::from_slice(&s.iter().map(|x| image[x]).collect::<Vec<_>>());
                if img.len() != s.len() {
                    Err(Error::Degenerate(s.to_vec()))
                } else {
                    Ok(img)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MultiHom(sets))
    })
}

/// Precomposition with a bijection of simplices, used by parallel transport.
pub(crate) fn induced_transport<'a>(h: &'a HomComplex, f: &VertexMap, target: &'a HomComplex) -> Result<CellularMap<'a>> {
    let mut m = induced_precompose(h, f, target)?;
    m.species = MapSpecies::Transport(f.clone());
    Ok(m)
}
