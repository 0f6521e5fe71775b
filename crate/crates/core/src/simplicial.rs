//! Finite abstract simplicial complexes stored by their facets.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A simplex as a strictly increasing list of vertex ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    /// Sorts the vertices; repeated vertices are rejected.
    pub fn new(mut vertices: Vec<usize>) -> Result<Self> {
        vertices.sort_unstable();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::RepeatedVertex(w[0]));
        }
        Ok(Simplex(vertices))
    }

    pub(crate) fn from_sorted(vertices: Vec<usize>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn position(&self, v: usize) -> Option<usize> {
        self.0.binary_search(&v).ok()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        is_sorted_subset(&self.0, &other.0)
    }

    pub fn intersection(&self, other: &Simplex) -> Simplex {
        Simplex(self.0.iter().copied().filter(|v| other.contains(*v)).collect())
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

pub(crate) fn is_sorted_subset(a: &[usize], b: &[usize]) -> bool {
    let mut it = b.iter();
    'outer: for x in a {
        for y in it.by_ref() {
            if y == x {
                continue 'outer;
            }
            if y > x {
                return false;
            }
        }
        return false;
    }
    true
}

/// Standard complexes. `Simplex(m)` and `BoundarySimplex(m)` use `m`
/// vertices; `Complete(n)` is the complete graph as a 1-dimensional complex;
/// `Path(m)` is the path graph with `m` vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Standard {
    Simplex(usize),
    Cycle(usize),
    Complete(usize),
    Path(usize),
    BoundarySimplex(usize),
}

/// A finite abstract simplicial complex on the vertex set `0..n`.
///
/// Facets are inclusion-maximal, strictly sorted and kept in lexicographic
/// order. Every vertex id belongs to the complex: an id covered by no facet
/// becomes a singleton facet.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    n: usize,
    labels: Option<Vec<String>>,
    facets: Vec<Simplex>,
}

#[derive(Serialize, Deserialize)]
struct ComplexDoc {
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    facets: Vec<Vec<usize>>,
}

impl Serialize for SimplicialComplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ComplexDoc { n: self.n, labels: self.labels.clone(), facets: self.facets.iter().map(|f| f.0.clone()).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SimplicialComplex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = ComplexDoc::deserialize(d)?;
        let mut k = SimplicialComplex::from_facets(doc.n, doc.facets).map_err(serde::de::Error::custom)?;
        if let Some(labels) = doc.labels {
            k = k.with_labels(labels).map_err(serde::de::Error::custom)?;
        }
        Ok(k)
    }
}

impl SimplicialComplex {
    pub fn from_facets<I, F>(n: usize, facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = usize>,
    {
        let mut simplices = Vec::new();
        for f in facets {
            let s = Simplex::new(f.into_iter().collect())?;
            if s.is_empty() {
                return Err(Error::EmptyFacet);
            }
            if let Some(&v) = s.0.iter().find(|&&v| v >= n) {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            simplices.push(s);
        }
        let mut covered = vec![false; n];
        for s in &simplices {
            for &v in &s.0 {
                covered[v] = true;
            }
        }
        for (v, c) in covered.iter().enumerate() {
            if !c {
                simplices.push(Simplex(vec![v]));
            }
        }
        Ok(SimplicialComplex { n, labels: None, facets: maximal(simplices) })
    }

    pub fn empty() -> Self {
        SimplicialComplex { n: 0, labels: None, facets: Vec::new() }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::LabelCount(labels.len(), self.n));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn standard(kind: Standard) -> Result<Self> {
        let bad = |what: &str| Error::ParameterOutOfRange(what.to_string());
        match kind {
            Standard::Simplex(m) => {
                if m < 1 {
                    return Err(bad("simplex needs at least one vertex"));
                }
                Self::from_facets(m, [(0..m).collect::<Vec<_>>()])
            }
            Standard::Cycle(n) => {
                if n < 3 {
                    return Err(bad("cycle needs at least 3 vertices"));
                }
                Self::from_facets(n, (0..n).map(|i| vec![i, (i + 1) % n]))
            }
            Standard::Complete(n) => {
                if n < 1 {
                    return Err(bad("complete graph needs at least one vertex"));
                }
                let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| vec![i, j]));
                Self::from_facets(n, edges)
            }
            Standard::Path(m) => {
                if m < 1 {
                    return Err(bad("path needs at least one vertex"));
                }
                Self::from_facets(m, (1..m).map(|i| vec![i - 1, i]))
            }
            Standard::BoundarySimplex(m) => {
                if m < 2 {
                    return Err(bad("boundary of a simplex needs at least 2 vertices"));
                }
                Self::from_facets(m, (0..m).map(|skip| (0..m).filter(move |&v| v != skip)))
            }
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("complex serializes")
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    pub fn dim(&self) -> isize {
        self.facets.iter().map(Simplex::dim).max().unwrap_or(-1)
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.facets.iter().all(|f| f.dim() == d)
    }

    pub fn is_graph(&self) -> bool {
        self.dim() <= 1
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.facets.iter().any(|f| s.is_face_of(f))
    }

    pub fn contains_vertices(&self, vs: &[usize]) -> bool {
        match Simplex::new(vs.to_vec()) {
            Ok(s) => s.is_empty() || self.contains(&s),
            Err(_) => false,
        }
    }

    /// All `d`-simplices in lexicographic order.
    pub fn simplices_of_dim(&self, d: usize) -> Vec<Simplex> {
        let mut out = BTreeSet::new();
        for f in &self.facets {
            if f.len() > d {
                for_each_subset(&f.0, d + 1, |s| {
                    out.insert(Simplex(s.to_vec()));
                });
            }
        }
        out.into_iter().collect()
    }

    /// Every nonempty simplex, grouped by dimension.
    pub fn all_simplices(&self) -> Vec<Vec<Simplex>> {
        let top = self.dim();
        (0..=top.max(-1)).map(|d| self.simplices_of_dim(d as usize)).collect()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.simplices_of_dim(1).into_iter().map(|s| (s.0[0], s.0[1])).collect()
    }

    /// Neighbour lists of the 1-skeleton.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for (a, b) in self.edges() {
            adj[a].push(b);
            adj[b].push(a);
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        adj
    }

    /// The 1-skeleton as a graph.
    pub fn vertex_edge_graph(&self) -> SimplicialComplex {
        let edges = self.edges().into_iter().map(|(a, b)| vec![a, b]);
        let mut g = SimplicialComplex::from_facets(self.n, edges).expect("edges are valid");
        g.labels = self.labels.clone();
        g
    }

    /// The flag complex of a graph: its simplices are the cliques.
    pub fn clique_complex(&self) -> Result<SimplicialComplex> {
        if !self.is_graph() {
            return Err(Error::NotAGraph(self.dim()));
        }
        let adj = self.adjacency();
        let mut cliques = Vec::new();
        let mut current = Vec::new();
        let candidates: Vec<usize> = (0..self.n).collect();
        bron_kerbosch(&adj, &mut current, candidates, Vec::new(), &mut cliques);
        let mut k = SimplicialComplex::from_facets(self.n, cliques)?;
        k.labels = self.labels.clone();
        Ok(k)
    }

    /// Facets containing `v`.
    pub fn star_facets(&self, v: usize) -> impl Iterator<Item = &Simplex> {
        self.facets.iter().filter(move |f| f.contains(v))
    }

    /// The complex with one facet removed; vertices left uncovered become
    /// isolated vertices.
    pub fn without_facet(&self, facet: &Simplex) -> Result<SimplicialComplex> {
        if !self.facets.contains(facet) {
            return Err(Error::NotASimplex(facet.0.clone()));
        }
        let rest = self.facets.iter().filter(|f| *f != facet).map(|f| f.0.clone());
        SimplicialComplex::from_facets(self.n, rest)
    }

    /// Deletes vertex `v` and every simplex containing it; the remaining
    /// vertices are renumbered in order. Returns the new complex and, for
    /// each new vertex, its old id.
    pub fn delete_vertex(&self, v: usize) -> Result<(SimplicialComplex, Vec<usize>)> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        let old_ids: Vec<usize> = (0..self.n).filter(|&w| w != v).collect();
        let renum = |w: usize| if w > v { w - 1 } else { w };
        let facets = self.facets.iter().filter(|f| !f.contains(v)).map(|f| f.0.iter().map(|&w| renum(w)).collect::<Vec<_>>());
        let mut k = SimplicialComplex::from_facets(self.n - 1, facets)?;
        if let Some(l) = &self.labels {
            k.labels = Some(old_ids.iter().map(|&w| l[w].clone()).collect());
        }
        Ok((k, old_ids))
    }

    /// The full simplex on `k` vertices, used as the source of fibres
    /// `Hom(sigma, L)`.
    pub fn simplex_on(k: usize) -> SimplicialComplex {
        SimplicialComplex::from_facets(k, [(0..k).collect::<Vec<_>>()]).expect("valid")
    }

    /// Union of two complexes on the same vertex set.
    pub fn union(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        let n = self.n.max(other.n);
        let facets = self.facets.iter().chain(other.facets.iter()).map(|f| f.0.clone());
        SimplicialComplex::from_facets(n, facets)
    }

    pub fn vertex_name(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }
}

fn maximal(mut simplices: Vec<Simplex>) -> Vec<Simplex> {
    simplices.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    simplices.dedup();
    let mut kept: Vec<Simplex> = Vec::new();
    for s in simplices {
        if !kept.iter().any(|k| s.is_face_of(k)) {
            kept.push(s);
        }
    }
    kept.sort();
    kept
}

/// Calls `f` on every `k`-subset of the sorted slice, in lexicographic order.
pub(crate) fn for_each_subset(items: &[usize], k: usize, mut f: impl FnMut(&[usize])) {
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        let need = k - cur.len();
        for i in start..=items.len().saturating_sub(need) {
            if items.len() < need {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, f);
            cur.pop();
        }
    }
    if k > items.len() {
        return;
    }
    let mut cur = Vec::with_capacity(k);
    rec(items, k, 0, &mut cur, &mut f);
}

fn bron_kerbosch(adj: &[Vec<usize>], current: &mut Vec<usize>, candidates: Vec<usize>, excluded: Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if candidates.is_empty() && excluded.is_empty() {
        out.push(current.clone());
        return;
    }
    let mut candidates = candidates;
    let mut excluded = excluded;
    while let Some(v) = candidates.pop() {
        let nv = &adj[v];
        let keep = |xs: &[usize]| xs.iter().copied().filter(|x| nv.binary_search(x).is_ok()).collect::<Vec<_>>();
        current.push(v);
        bron_kerbosch(adj, current, keep(&candidates), keep(&excluded), out);
        current.pop();
        excluded.push(v);
    }
}

/// A vertex map between two complexes, validated to be simplicial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMap {
    source: SimplicialComplex,
    target: SimplicialComplex,
    image: Vec<usize>,
}

impl VertexMap {
    pub fn new(source: &SimplicialComplex, target: &SimplicialComplex, image: Vec<usize>) -> Result<Self> {
        if image.len() != source.n_vertices() {
            return Err(Error::MapLength(image.len(), source.n_vertices()));
        }
        if let Some(&w) = image.iter().find(|&&w| w >= target.n_vertices()) {
            return Err(Error::VertexOutOfRange { vertex: w, n: target.n_vertices() });
        }
        for f in source.facets() {
            let mut img: Vec<usize> = f.vertices().iter().map(|&v| image[v]).collect();
            img.sort_unstable();
            img.dedup();
            if !target.contains(&Simplex(img.clone())) {
                return Err(Error::NotSimplicial(f.0.clone(), img));
            }
        }
        Ok(VertexMap { source: source.clone(), target: target.clone(), image })
    }

    pub fn identity(k: &SimplicialComplex) -> Self {
        VertexMap { source: k.clone(), target: k.clone(), image: (0..k.n_vertices()).collect() }
    }

    pub fn source(&self) -> &SimplicialComplex {
        &self.source
    }

    pub fn target(&self) -> &SimplicialComplex {
        &self.target
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, v: usize) -> usize {
        self.image[v]
    }

    /// Injective on every facet, hence on every simplex.
    pub fn is_nondegenerate(&self) -> bool {
        self.first_degenerate_facet().is_none()
    }

    pub(crate) fn first_degenerate_facet(&self) -> Option<&Simplex> {
        self.source.facets().iter().find(|f| {
            let mut img: Vec<usize> = f.vertices().iter().map(|&v| self.image[v]).collect();
            img.sort_unstable();
            img.windows(2).any(|w| w[0] == w[1])
        })
    }

    pub fn require_nondegenerate(&self) -> Result<()> {
        match self.first_degenerate_facet() {
            Some(f) => Err(Error::Degenerate(f.0.clone())),
            None => Ok(()),
        }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &VertexMap) -> Result<VertexMap> {
        if self.target != next.source {
            return Err(Error::MapMismatch);
        }
        let image = self.image.iter().map(|&v| next.image[v]).collect();
        Ok(VertexMap { source: self.source.clone(), target: next.target.clone(), image })
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.image.iter().enumerate().all(|(i, &v)| i == v)
    }
}
