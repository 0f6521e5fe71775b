//! Perspectivities and projectivities between k-simplices, holonomy groups,
//! and parallel transport on the fibres `Hom(sigma, L)`.
//!
//! Composition is written left to right: `p.then(&q)` first applies `p`,
//! so `x (p * q) = q(p(x))`.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::Serialize;

use crate::chain::{chain_map_of, chains_of, induced_on_homology, InducedMap, IntegralHomology};
use crate::error::{Error, Result};
use crate::hom::{induced_precompose, induced_transport, CellularMap, HomComplex};
use crate::simplicial::{Simplex, SimplicialComplex, VertexMap};

/// Adjacency of the k-simplices of a complex: two are adjacent when they
/// share a (k-1)-face.
#[derive(Clone, Debug)]
pub struct DualGraph {
    k: usize,
    nodes: Vec<Simplex>,
    index: HashMap<Simplex, usize>,
    // (i, j, shared face) with i < j
    edges: Vec<(usize, usize, Simplex)>,
    adjacency: Vec<Vec<usize>>,
}

impl DualGraph {
    pub fn new(complex: &SimplicialComplex, k: usize) -> Self {
        let nodes = complex.simplices_of_dim(k);
        let index: HashMap<Simplex, usize> = nodes.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        // bucket by (k-1)-faces
        let mut by_face: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        if k > 0 {
            for (i, s) in nodes.iter().enumerate() {
                for drop in 0..s.len() {
                    let mut f = s.vertices().to_vec();
                    f.remove(drop);
                    by_face.entry(f).or_default().push(i);
                }
            }
        } else {
            // 0-simplices share the empty face
            by_face.insert(Vec::new(), (0..nodes.len()).collect());
        }
        let mut edges = Vec::new();
        let mut adjacency = vec![Vec::new(); nodes.len()];
        for (face, members) in by_face {
            let face = Simplex::from_sorted(face);
            for (a, &i) in members.iter().enumerate() {
                for &j in &members[a + 1..] {
                    adjacency[i].push(j);
                    adjacency[j].push(i);
                    edges.push((i, j, face.clone()));
                }
            }
        }
        for a in &mut adjacency {
            a.sort_unstable();
        }
        edges.sort_by_key(|x| (x.0, x.1));
        DualGraph { k, nodes, index, edges, adjacency }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn nodes(&self) -> &[Simplex] {
        &self.nodes
    }

    pub fn edges(&self) -> &[(usize, usize, Simplex)] {
        &self.edges
    }

    pub fn neighbours(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// Nodes reachable from `i`, ascending.
    pub fn component(&self, i: usize) -> Vec<usize> {
        let mut seen = vec![false; self.nodes.len()];
        seen[i] = true;
        let mut stack = vec![i];
        while let Some(v) = stack.pop() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        (0..self.nodes.len()).filter(|&v| seen[v]).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.nodes.is_empty() || self.component(0).len() == self.nodes.len()
    }
}

/// A vertex bijection between two simplices of equal dimension, obtained
/// as a composite of perspectivities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Projectivity {
    source: Simplex,
    target: Simplex,
    // image of source.vertices()[i]
    images: Vec<usize>,
    path: Vec<Simplex>,
}

impl Projectivity {
    pub fn identity(s: &Simplex) -> Self {
        Projectivity { source: s.clone(), target: s.clone(), images: s.vertices().to_vec(), path: vec![s.clone()] }
    }

    /// The bijection fixing the common face pointwise.
    pub fn perspectivity(s0: &Simplex, s1: &Simplex) -> Result<Self> {
        if s0 == s1 {
            return Ok(Self::identity(s0));
        }
        let common = s0.intersection(s1);
        if s0.len() != s1.len() || common.len() + 1 != s0.len() {
            return Err(Error::NotAdjacent(s0.vertices().to_vec(), s1.vertices().to_vec()));
        }
        let new = *s1.vertices().iter().find(|v| !common.contains(**v)).expect("one vertex outside the common face");
        let images = s0.vertices().iter().map(|&x| if common.contains(x) { x } else { new }).collect();
        Ok(Projectivity { source: s0.clone(), target: s1.clone(), images, path: vec![s0.clone(), s1.clone()] })
    }

    /// Composite of the perspectivities along a walk of adjacent simplices.
    pub fn along(walk: &[Simplex]) -> Result<Self> {
        let (first, rest) = walk.split_first().ok_or_else(|| Error::ParameterOutOfRange("empty walk".into()))?;
        let mut p = Self::identity(first);
        let mut prev = first;
        for s in rest {
            p = p.then(&Self::perspectivity(prev, s)?)?;
            prev = s;
        }
        Ok(p)
    }

    /// Like [`Projectivity::along`], also checking that every simplex of
    /// the walk lies in `complex`.
    pub fn along_in(complex: &SimplicialComplex, walk: &[Simplex]) -> Result<Self> {
        if let Some(s) = walk.iter().find(|s| !complex.contains(s)) {
            return Err(Error::NotASimplex(s.vertices().to_vec()));
        }
        Self::along(walk)
    }

    pub fn source(&self) -> &Simplex {
        &self.source
    }

    pub fn target(&self) -> &Simplex {
        &self.target
    }

    /// The walk of simplices realizing this projectivity.
    pub fn path(&self) -> &[Simplex] {
        &self.path
    }

    pub fn apply(&self, x: usize) -> Option<usize> {
        self.source.position(x).map(|i| self.images[i])
    }

    /// `(x, image)` pairs in source order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.source.vertices().iter().copied().zip(self.images.iter().copied()).collect()
    }

    /// `self * q`: first `self`, then `q`.
    pub fn then(&self, q: &Projectivity) -> Result<Self> {
        if self.target != q.source {
            return Err(Error::EndpointMismatch(self.target.vertices().to_vec(), q.source.vertices().to_vec()));
        }
        let images = self.images.iter().map(|&y| q.apply(y).expect("image lies in the target")).collect();
        let mut path = self.path.clone();
        path.extend_from_slice(&q.path[1..]);
        Ok(Projectivity { source: self.source.clone(), target: q.target.clone(), images, path })
    }

    pub fn inverse(&self) -> Self {
        let images = self
            .target
            .vertices()
            .iter()
            .map(|&y| self.source.vertices()[self.images.iter().position(|&x| x == y).expect("bijection")])
            .collect();
        let mut path = self.path.clone();
        path.reverse();
        Projectivity { source: self.target.clone(), target: self.source.clone(), images, path }
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.images == self.source.vertices()
    }

    /// Same endpoints and the same bijection, regardless of path.
    pub fn same_map(&self, other: &Projectivity) -> bool {
        self.source == other.source && self.target == other.target && self.images == other.images
    }

    /// For a loop, the permutation of positions: entry `i` is the position
    /// of the image of the `i`-th vertex.
    pub fn local_permutation(&self) -> Option<Vec<usize>> {
        (self.source == self.target).then(|| self.images.iter().map(|&y| self.source.position(y).expect("loop")).collect())
    }

    /// The map of positions `source index -> target index`, as a vertex
    /// map between the standard simplices carrying the fibres.
    pub fn local_map(&self) -> VertexMap {
        let n = self.source.len();
        let std = SimplicialComplex::simplex_on(n);
        let image = self.images.iter().map(|&y| self.target.position(y).expect("image in target")).collect();
        VertexMap::new(&std, &std, image).expect("bijections of a simplex are simplicial")
    }
}

/// The group of projectivities from a simplex to itself, as a permutation
/// group on positions in the simplex.
#[derive(Clone, Debug, Serialize)]
pub struct HolonomyGroup {
    base: Simplex,
    generators: Vec<Projectivity>,
    elements: Vec<Vec<usize>>,
    // generator indices whose product is elements[i]
    words: Vec<Vec<usize>>,
    label: String,
    whole_dual_graph: bool,
}

impl HolonomyGroup {
    pub fn base(&self) -> &Simplex {
        &self.base
    }

    pub fn generators(&self) -> &[Projectivity] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// False when the dual graph is disconnected and only the base's
    /// component was used.
    pub fn covers_whole_dual_graph(&self) -> bool {
        self.whole_dual_graph
    }

    /// Elements as permutations of positions in the base.
    pub fn elements(&self) -> &[Vec<usize>] {
        &self.elements
    }

    /// Whether the vertex bijection `perm` (given as `(x, image)` pairs over
    /// the base) is in the group.
    pub fn contains_pairs(&self, pairs: &[(usize, usize)]) -> bool {
        self.find(pairs).is_some()
    }

    fn find(&self, pairs: &[(usize, usize)]) -> Option<usize> {
        let perm = self.positions(pairs)?;
        self.elements.iter().position(|e| *e == perm)
    }

    fn positions(&self, pairs: &[(usize, usize)]) -> Option<Vec<usize>> {
        let mut perm = vec![usize::MAX; self.base.len()];
        for &(x, y) in pairs {
            perm[self.base.position(x)?] = self.base.position(y)?;
        }
        (!perm.contains(&usize::MAX)).then_some(perm)
    }

    /// A closed projectivity realizing the given element, with its walk.
    pub fn realize(&self, pairs: &[(usize, usize)]) -> Option<Projectivity> {
        let i = self.find(pairs)?;
        let mut p = Projectivity::identity(&self.base);
        for &g in &self.words[i] {
            p = p.then(&self.generators[g]).expect("loops at the base compose");
        }
        Some(p)
    }
}

/// Composition of position permutations, left to right.
fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    p.iter().map(|&i| q[i]).collect()
}

fn label(elements: &[Vec<usize>], degree: usize) -> String {
    let n = elements.len();
    let identity: Vec<usize> = (0..degree).collect();
    let order_of = |e: &Vec<usize>| {
        let mut x = e.clone();
        let mut k = 1;
        while x != identity {
            x = compose(&x, e);
            k += 1;
        }
        k
    };
    let orders: Vec<usize> = elements.iter().map(order_of).collect();
    let max = orders.iter().copied().max().unwrap_or(1);
    let involutions = orders.iter().filter(|&&o| o == 2).count();
    let abelian = elements.iter().all(|a| elements.iter().all(|b| compose(a, b) == compose(b, a)));
    let named = match (n, abelian) {
        (1, _) => "trivial".to_string(),
        (_, true) if max == n => format!("Z{n}"),
        (4, true) => "Z2xZ2".into(),
        (8, true) if max == 4 => "Z4xZ2".into(),
        (8, true) => "Z2xZ2xZ2".into(),
        (9, true) => "Z3xZ3".into(),
        (12, true) => "Z6xZ2".into(),
        (6, false) => "S3".into(),
        (8, false) if involutions == 5 => "D4".into(),
        (8, false) => "Q8".into(),
        (10, false) => "D5".into(),
        (12, false) if max == 3 => "A4".into(),
        (12, false) if involutions == 7 => "D6".into(),
        (12, false) => "Dic3".into(),
        (24, false) if degree == 4 => "S4".into(),
        _ => format!("order {n}"),
    };
    named
}

/// The holonomy group of `sigma` in the dual graph of its dimension. When
/// that graph is disconnected only the component of `sigma` contributes.
pub fn holonomy_group(complex: &SimplicialComplex, sigma: &Simplex) -> Result<HolonomyGroup> {
    if sigma.is_empty() || !complex.contains(sigma) {
        return Err(Error::NotASimplex(sigma.vertices().to_vec()));
    }
    let g = DualGraph::new(complex, sigma.len() - 1);
    let root = g.index_of(sigma).expect("sigma is a node");
    // breadth-first tree with projectivities from the root
    let mut to_node: Vec<Option<Projectivity>> = vec![None; g.nodes().len()];
    let mut tree_parent: Vec<Option<usize>> = vec![None; g.nodes().len()];
    to_node[root] = Some(Projectivity::identity(sigma));
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbours(v) {
            if to_node[w].is_none() {
                let p = to_node[v].as_ref().expect("visited").then(&Projectivity::perspectivity(&g.nodes()[v], &g.nodes()[w])?)?;
                to_node[w] = Some(p);
                tree_parent[w] = Some(v);
                queue.push_back(w);
            }
        }
    }
    let mut generators = Vec::new();
    for (i, j, _) in g.edges() {
        let (i, j) = (*i, *j);
        let (Some(pi), Some(pj)) = (&to_node[i], &to_node[j]) else { continue };
        if tree_parent[j] == Some(i) || tree_parent[i] == Some(j) {
            continue;
        }
        let loop_ = pi.then(&Projectivity::perspectivity(&g.nodes()[i], &g.nodes()[j])?)?.then(&pj.inverse())?;
        generators.push(loop_);
    }
    let degree = sigma.len();
    let identity: Vec<usize> = (0..degree).collect();
    let gen_perms: Vec<Vec<usize>> = generators.iter().map(|p| p.local_permutation().expect("loop")).collect();
    let mut elements = vec![identity.clone()];
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
    let mut i = 0;
    while i < elements.len() {
        for (gi, gp) in gen_perms.iter().enumerate() {
            let e = compose(&elements[i], gp);
            if !seen.contains_key(&e) {
                seen.insert(e.clone(), elements.len());
                let mut w = words[i].clone();
                w.push(gi);
                elements.push(e);
                words.push(w);
            }
        }
        i += 1;
    }
    let label = label(&elements, degree);
    let whole_dual_graph = to_node.iter().all(Option::is_some);
    Ok(HolonomyGroup { base: sigma.clone(), generators, elements, words, label, whole_dual_graph })
}

/// The fibre `Hom(sigma, L)` over a simplex with `n` vertices; position `i`
/// of the standard simplex stands for the `i`-th vertex of `sigma`.
pub fn fibre(l: &SimplicialComplex, n: usize, cap: Option<usize>) -> Result<HomComplex> {
    HomComplex::build(&SimplicialComplex::simplex_on(n), l, cap)
}

/// Parallel transport along `p`: precomposition with `p`, a cellular map
/// from the fibre over `p.target()` to the fibre over `p.source()`. Both
/// fibres are the same complex [`fibre`]`(L, k + 1)`.
pub fn transport_map<'a>(fib: &'a HomComplex, p: &Projectivity) -> Result<CellularMap<'a>> {
    if fib.source().n_vertices() != p.source().len() {
        return Err(Error::MapMismatch);
    }
    induced_transport(fib, &p.local_map(), fib)
}

/// Restriction `Hom(K, L) -> Hom(sigma, L)` to a simplex of `K`.
pub fn restriction<'a>(h: &'a HomComplex, sigma: &Simplex, fib: &'a HomComplex) -> Result<CellularMap<'a>> {
    let std = SimplicialComplex::simplex_on(sigma.len());
    let incl = VertexMap::new(&std, h.source(), sigma.vertices().to_vec())?;
    induced_precompose(h, &incl, fib)
}

/// Both sides of the transport square for adjacent simplices on homology:
/// restriction to `s1` against restriction to `s2` followed by transport
/// along the perspectivity from `s1` to `s2`.
#[derive(Clone, Debug, Serialize)]
pub struct TransportSquare {
    pub dim: usize,
    pub direct: InducedMap,
    pub transported: InducedMap,
}

impl TransportSquare {
    pub fn commutes(&self) -> bool {
        self.direct == self.transported
    }
}

pub fn transport_squares(h: &HomComplex, fib: &HomComplex, s1: &Simplex, s2: &Simplex) -> Result<Vec<TransportSquare>> {
    let p = Projectivity::perspectivity(s1, s2)?;
    let a1 = chain_map_of(&restriction(h, s1, fib)?)?;
    let a2 = chain_map_of(&restriction(h, s2, fib)?)?;
    let t = chain_map_of(&transport_map(fib, &p)?)?;
    let composite = a2.then(&t).map_err(|_| Error::Internal("overflow composing chain maps".into()))?;
    let hh = IntegralHomology::compute(&chains_of(h)?, true);
    let hf = IntegralHomology::compute(&chains_of(fib)?, true);
    let top = h.cells().len().max(fib.cells().len());
    (0..top)
        .map(|d| {
            Ok(TransportSquare {
                dim: d,
                direct: induced_on_homology(&a1, &hh, &hf, d)?,
                transported: induced_on_homology(&composite, &hh, &hf, d)?,
            })
        })
        .collect()
}
