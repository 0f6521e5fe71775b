//! Shellings, tree-like complexes, vertex folds and the check that an
//! elementary vertex collapse leaves the Hom-complex homology unchanged.

use std::collections::HashSet;

use serde::Serialize;

use crate::chain::{chain_map_of, chains_of, induced_on_homology, ChainMap, DimHomology, IntegralHomology};
use crate::error::{Error, Result};
use crate::hom::{induced_precompose, HomComplex};
use crate::simplicial::{Simplex, SimplicialComplex, VertexMap};

pub const DEFAULT_BUDGET: usize = 100_000;

/// Result of a bounded search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", content = "witness", rename_all = "snake_case")]
pub enum SearchOutcome<T> {
    Found(T),
    /// The whole search space was explored without success.
    Exhausted,
    BudgetExceeded,
}

impl<T> SearchOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShellingOrder {
    pub order: Vec<Simplex>,
    /// Minimal new face of each facet; empty for the first.
    pub restrictions: Vec<Simplex>,
    /// `dim` of each restriction, `-1` for the empty face.
    pub types: Vec<isize>,
}

impl ShellingOrder {
    /// Replays the order against `k`.
    pub fn verify(&self, k: &SimplicialComplex) -> bool {
        let mut facets = self.order.clone();
        facets.sort();
        if facets != k.facets() || self.restrictions.len() != self.order.len() || self.types.len() != self.order.len() {
            return false;
        }
        (0..self.order.len()).all(|j| {
            let prior: Vec<&Simplex> = self.order[..j].iter().collect();
            restriction(&self.order[j], &prior).is_some_and(|r| r == self.restrictions[j] && r.dim() == self.types[j])
        })
    }
}

/// The minimal new face of `f` when added after `prior`, or `None` when the
/// intersection with `prior` is not pure of codimension one in `f`.
fn restriction(f: &Simplex, prior: &[&Simplex]) -> Option<Simplex> {
    let r: Vec<usize> =
        f.vertices().iter().copied().filter(|&v| prior.iter().any(|g| f.vertices().iter().all(|&w| w == v || g.contains(w)))).collect();
    if prior.is_empty() {
        return Some(Simplex::from_sorted(r));
    }
    // every intersection must miss some vertex of r
    let ok = !r.is_empty() && prior.iter().all(|g| r.iter().any(|&v| !g.contains(v)));
    ok.then(|| Simplex::from_sorted(r))
}

struct Search<'a> {
    facets: &'a [Simplex],
    budget: usize,
    nodes: usize,
    failed: HashSet<Vec<bool>>,
}

impl Search<'_> {
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.nodes <= self.budget
    }
}

fn require_pure(k: &SimplicialComplex) -> Result<usize> {
    if !k.is_pure() || k.facets().is_empty() {
        return Err(Error::NotPure);
    }
    Ok(k.dim() as usize)
}

/// Backtracking search for a shelling; facets are tried in lexicographic
/// order and failed sets of placed facets are remembered.
pub fn find_shelling(k: &SimplicialComplex, budget: usize) -> Result<SearchOutcome<ShellingOrder>> {
    require_pure(k)?;
    let mut s = Search { facets: k.facets(), budget, nodes: 0, failed: HashSet::new() };
    let mut used = vec![false; s.facets.len()];
    let mut order = Vec::new();
    let mut restrictions = Vec::new();
    Ok(match shell(&mut s, &mut used, &mut order, &mut restrictions) {
        Some(true) => {
            let order: Vec<Simplex> = order.iter().map(|&i| s.facets[i].clone()).collect();
            let types = restrictions.iter().map(Simplex::dim).collect();
            SearchOutcome::Found(ShellingOrder { order, restrictions, types })
        }
        Some(false) => SearchOutcome::Exhausted,
        None => SearchOutcome::BudgetExceeded,
    })
}

// Some(found) or None when the budget ran out.
fn shell(s: &mut Search, used: &mut Vec<bool>, order: &mut Vec<usize>, rs: &mut Vec<Simplex>) -> Option<bool> {
    if order.len() == s.facets.len() {
        return Some(true);
    }
    if s.failed.contains(used) {
        return Some(false);
    }
    if !s.tick() {
        return None;
    }
    for i in 0..s.facets.len() {
        if used[i] {
            continue;
        }
        let prior: Vec<&Simplex> = order.iter().map(|&j| &s.facets[j]).collect();
        let Some(r) = restriction(&s.facets[i], &prior) else { continue };
        used[i] = true;
        order.push(i);
        rs.push(r);
        if shell(s, used, order, rs)? {
            return Some(true);
        }
        used[i] = false;
        order.pop();
        rs.pop();
    }
    s.failed.insert(used.clone());
    Some(false)
}

/// One elementary vertex collapse: `removed` meets the rest of the complex
/// exactly in its facet `retained = removed - {v}`, and `witness =
/// retained + {u}` is a facet of the rest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CollapseStep {
    pub removed: Simplex,
    pub retained: Simplex,
    pub witness: Simplex,
    pub v: usize,
    pub u: usize,
}

impl CollapseStep {
    /// Checks the step against `k` and returns the collapsed complex, still
    /// on the vertex ids of `k` (with `v` left isolated).
    pub fn apply(&self, k: &SimplicialComplex) -> Result<SimplicialComplex> {
        let bad = |m: &str| Err(Error::InvalidCollapse(m.into()));
        if !k.facets().contains(&self.removed) {
            return bad("removed simplex is not a facet");
        }
        if !self.removed.contains(self.v)
            || self.retained.len() + 1 != self.removed.len()
            || self.retained.contains(self.v)
            || !self.retained.is_face_of(&self.removed)
        {
            return bad("retained face is not the facet opposite v");
        }
        if self.retained.contains(self.u)
            || self.witness.len() != self.removed.len()
            || !self.retained.is_face_of(&self.witness)
            || !self.witness.contains(self.u)
        {
            return bad("witness is not retained + u");
        }
        let rest: Vec<&Simplex> = k.facets().iter().filter(|f| **f != self.removed).collect();
        if !rest.contains(&&self.witness) {
            return bad("witness is not in the rest of the complex");
        }
        if rest.iter().any(|g| g.contains(self.v)) {
            return bad("v lies in another facet");
        }
        k.without_facet(&self.removed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CollapseSequence {
    pub steps: Vec<CollapseStep>,
    /// The simplex left at the end.
    pub core: Simplex,
}

impl CollapseSequence {
    /// The collapse read backwards: a shelling with every type zero.
    pub fn to_shelling(&self) -> ShellingOrder {
        let mut order = vec![self.core.clone()];
        let mut restrictions = vec![Simplex::from_sorted(Vec::new())];
        for s in self.steps.iter().rev() {
            order.push(s.removed.clone());
            restrictions.push(Simplex::from_sorted(vec![s.v]));
        }
        let types = restrictions.iter().map(Simplex::dim).collect();
        ShellingOrder { order, restrictions, types }
    }

    /// The complex before each step with the step itself, both renumbered
    /// so that vertices removed by earlier steps are gone, followed by the
    /// final complex (the core simplex on its own).
    pub fn stages(&self, k: &SimplicialComplex) -> Result<(Vec<(SimplicialComplex, CollapseStep)>, SimplicialComplex)> {
        let mut cur = k.clone();
        // ids[i] = original id of current vertex i
        let mut ids: Vec<usize> = (0..k.n_vertices()).collect();
        let mut out = Vec::new();
        for s in &self.steps {
            let local =
                |x: usize| ids.iter().position(|&o| o == x).ok_or_else(|| Error::InvalidCollapse(format!("vertex {x} already removed")));
            let relabel =
                |sx: &Simplex| -> Result<Simplex> { Simplex::new(sx.vertices().iter().map(|&x| local(x)).collect::<Result<_>>()?) };
            let step = CollapseStep {
                removed: relabel(&s.removed)?,
                retained: relabel(&s.retained)?,
                witness: relabel(&s.witness)?,
                v: local(s.v)?,
                u: local(s.u)?,
            };
            let (next, old) = step.apply(&cur)?.delete_vertex(step.v)?;
            out.push((cur, step));
            ids = old.iter().map(|&i| ids[i]).collect();
            cur = next;
        }
        Ok((out, cur))
    }

    /// Replays every step on `k`.
    pub fn verify(&self, k: &SimplicialComplex) -> bool {
        let mut cur = k.clone();
        for s in &self.steps {
            match s.apply(&cur) {
                Ok(next) => cur = next,
                Err(_) => return false,
            }
        }
        cur.facets().iter().filter(|f| f.len() > 1 || k.dim() == 0).eq([&self.core])
    }
}

/// Peels facets glued to the rest along a single codimension-one face until
/// one simplex is left.
pub fn is_tree_like(k: &SimplicialComplex, budget: usize) -> Result<SearchOutcome<CollapseSequence>> {
    require_pure(k)?;
    let mut s = Search { facets: k.facets(), budget, nodes: 0, failed: HashSet::new() };
    let mut alive = vec![true; s.facets.len()];
    let mut steps = Vec::new();
    Ok(match peel(&mut s, &mut alive, &mut steps) {
        Some(true) => {
            let core = s.facets[alive.iter().position(|&a| a).expect("one facet left")].clone();
            SearchOutcome::Found(CollapseSequence { steps, core })
        }
        Some(false) => SearchOutcome::Exhausted,
        None => SearchOutcome::BudgetExceeded,
    })
}

fn peelable(f: &Simplex, rest: &[&Simplex]) -> Option<(usize, Simplex)> {
    let r = restriction(f, rest)?;
    let [v] = r.vertices() else { return None };
    let retained: Vec<usize> = f.vertices().iter().copied().filter(|w| w != v).collect();
    let retained = Simplex::from_sorted(retained);
    let witness = rest.iter().find(|g| retained.is_face_of(g))?;
    Some((*v, (*witness).clone()))
}

fn peel(s: &mut Search, alive: &mut Vec<bool>, steps: &mut Vec<CollapseStep>) -> Option<bool> {
    if alive.iter().filter(|&&a| a).count() == 1 {
        return Some(true);
    }
    if s.failed.contains(alive) {
        return Some(false);
    }
    if !s.tick() {
        return None;
    }
    for i in 0..s.facets.len() {
        if !alive[i] {
            continue;
        }
        let rest: Vec<&Simplex> = (0..s.facets.len()).filter(|&j| alive[j] && j != i).map(|j| &s.facets[j]).collect();
        let Some((v, witness)) = peelable(&s.facets[i], &rest) else { continue };
        let f = &s.facets[i];
        let retained = Simplex::from_sorted(f.vertices().iter().copied().filter(|&w| w != v).collect());
        let u = *witness.vertices().iter().find(|w| !retained.contains(**w)).expect("witness has one more vertex");
        alive[i] = false;
        steps.push(CollapseStep { removed: f.clone(), retained, witness, v, u });
        if peel(s, alive, steps)? {
            return Some(true);
        }
        alive[i] = true;
        steps.pop();
    }
    s.failed.insert(alive.clone());
    Some(false)
}

/// The retraction `K -> K - v` sending `v` to `u` and fixing every other
/// vertex; vertices of `K - v` are renumbered as in
/// [`SimplicialComplex::delete_vertex`].
pub fn fold_map(k: &SimplicialComplex, v: usize, u: usize) -> Result<VertexMap> {
    let fail = |reason: String| Err(Error::InvalidFold { v, u, reason });
    if v >= k.n_vertices() || u >= k.n_vertices() {
        return fail("vertex out of range".into());
    }
    if u == v {
        return fail("u equals v".into());
    }
    for f in k.star_facets(v) {
        if f.contains(u) {
            return fail(format!("facet {f} contains both"));
        }
        let mut image: Vec<usize> = f.vertices().iter().map(|&w| if w == v { u } else { w }).collect();
        image.sort_unstable();
        if !k.contains_vertices(&image) {
            return fail(format!("image of facet {f} is not a simplex"));
        }
    }
    let (retract, _) = k.delete_vertex(v)?;
    let renum = |w: usize| if w > v { w - 1 } else { w };
    let image = (0..k.n_vertices()).map(|w| renum(if w == v { u } else { w })).collect();
    let rho = VertexMap::new(k, &retract, image)?;
    rho.require_nondegenerate()?;
    Ok(rho)
}

/// The inclusion `K - v -> K`.
pub fn deletion_inclusion(k: &SimplicialComplex, v: usize) -> Result<VertexMap> {
    let (retract, old_ids) = k.delete_vertex(v)?;
    VertexMap::new(&retract, k, old_ids)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CollapseRow {
    pub dim: usize,
    pub before: DimHomology,
    pub after: DimHomology,
}

/// Outcome of [`verify_collapse_equivalence`]; only produced when every
/// check passed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CollapseReport {
    pub cells_before: Vec<usize>,
    pub cells_after: Vec<usize>,
    pub rows: Vec<CollapseRow>,
}

/// Builds `Hom(K, L)` and `Hom(K', L)` for the collapse `K -> K'` (the
/// identity when `step` is `None`), checks that precomposing with the fold
/// and then the inclusion is the identity on chains, and that the two maps
/// are inverse isomorphisms on homology in every dimension.
pub fn verify_collapse_equivalence(
    k: &SimplicialComplex,
    step: Option<&CollapseStep>,
    l: &SimplicialComplex,
    cap: Option<usize>,
) -> Result<CollapseReport> {
    let (kp, gamma, rho) = match step {
        Some(s) => {
            s.apply(k)?;
            let rho = fold_map(k, s.v, s.u)?;
            (rho.target().clone(), deletion_inclusion(k, s.v)?, rho)
        }
        None => (k.clone(), VertexMap::identity(k), VertexMap::identity(k)),
    };
    let hk = HomComplex::build(k, l, cap)?;
    let hkp = HomComplex::build(&kp, l, cap)?;
    // gamma-hat: Hom(K, L) -> Hom(K', L), rho-hat the other way
    let gamma_hat = chain_map_of(&induced_precompose(&hk, &gamma, &hkp)?)?;
    let rho_hat = chain_map_of(&induced_precompose(&hkp, &rho, &hk)?)?;
    let ck = chains_of(&hk)?;
    let ckp = chains_of(&hkp)?;
    let overflow = |_| Error::Internal("overflow composing chain maps".into());
    let on_kp = rho_hat.then(&gamma_hat).map_err(overflow)?;
    if on_kp != ChainMap::identity(&ckp) {
        let dim = (0..ckp.ranks().len()).find(|&d| on_kp.matrix(d) != ChainMap::identity(&ckp).matrix(d)).unwrap_or(0);
        return Err(Error::CollapseCheck { dim, reason: "gamma-hat after rho-hat is not the identity on chains".into() });
    }
    let on_k = gamma_hat.then(&rho_hat).map_err(overflow)?;
    let hom_k = IntegralHomology::compute(&ck, false);
    let hom_kp = IntegralHomology::compute(&ckp, false);
    let top = hom_k.groups().dims.len().max(hom_kp.groups().dims.len());
    let id_k = ChainMap::identity(&ck);
    let mut rows = Vec::new();
    for d in 0..top {
        let before = hom_k.groups().get(d).cloned().unwrap_or_else(|| DimHomology::zero(d));
        let after = hom_kp.groups().get(d).cloned().unwrap_or_else(|| DimHomology::zero(d));
        if before != after {
            return Err(Error::CollapseCheck { dim: d, reason: format!("homology differs: {before} vs {after}") });
        }
        if hom_k.groups().get(d).is_some()
            && induced_on_homology(&on_k, &hom_k, &hom_k, d)? != induced_on_homology(&id_k, &hom_k, &hom_k, d)?
        {
            return Err(Error::CollapseCheck { dim: d, reason: "rho-hat after gamma-hat is not the identity on homology".into() });
        }
        rows.push(CollapseRow { dim: d, before, after });
    }
    Ok(CollapseReport { cells_before: hk.counts(), cells_after: hkp.counts(), rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::Standard;

    fn cx(n: usize, facets: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::from_facets(n, facets.iter().map(|f| f.to_vec())).unwrap()
    }

    fn std(s: Standard) -> SimplicialComplex {
        SimplicialComplex::standard(s).unwrap()
    }

    #[test]
    fn shellings() {
        let one = find_shelling(&std(Standard::Simplex(5)), 100).unwrap().found().unwrap();
        assert_eq!(one.order.len(), 1);
        let b = std(Standard::BoundarySimplex(4));
        let sh = find_shelling(&b, 100).unwrap().found().unwrap();
        assert!(sh.verify(&b));
        assert_eq!(sh.types, vec![-1, 0, 1, 2]);
        let bowtie = cx(5, &[&[0, 1, 2], &[0, 3, 4]]);
        assert_eq!(find_shelling(&bowtie, 100).unwrap(), SearchOutcome::Exhausted);
        assert!(matches!(find_shelling(&cx(3, &[&[0, 1], &[2]]), 10), Err(Error::NotPure)));
    }

    #[test]
    fn tree_like_examples() {
        let l3 = std(Standard::Path(3));
        let seq = is_tree_like(&l3, 100).unwrap().found().unwrap();
        assert_eq!(seq.steps.len(), 1);
        assert!(seq.verify(&l3));
        let sh = seq.to_shelling();
        assert!(sh.verify(&l3));
        let (stages, core) = seq.stages(&l3).unwrap();
        assert_eq!(stages.len(), 1);
        assert_eq!(core.facets(), &[Simplex::new(vec![0, 1]).unwrap()]);
        let sigma = cx(4, &[&[0, 1, 2], &[0, 1, 3]]);
        let seq = is_tree_like(&sigma, 100).unwrap().found().unwrap();
        assert_eq!(
            seq.steps[0],
            CollapseStep {
                removed: Simplex::new(vec![0, 1, 2]).unwrap(),
                retained: Simplex::new(vec![0, 1]).unwrap(),
                witness: Simplex::new(vec![0, 1, 3]).unwrap(),
                v: 2,
                u: 3
            }
        );
        assert_eq!(is_tree_like(&std(Standard::BoundarySimplex(4)), 100).unwrap(), SearchOutcome::Exhausted);
        assert_eq!(is_tree_like(&std(Standard::Cycle(5)), 0).unwrap(), SearchOutcome::BudgetExceeded);
    }

    #[test]
    fn folds() {
        let sigma = cx(4, &[&[0, 1, 2], &[0, 1, 3]]);
        let rho = fold_map(&sigma, 3, 2).unwrap();
        assert_eq!(rho.image(), &[0, 1, 2, 2]);
        let gamma = deletion_inclusion(&sigma, 3).unwrap();
        assert!(gamma.then(&rho).unwrap().is_identity());
        let c5 = std(Standard::Cycle(5));
        for v in 0..5 {
            for u in 0..5 {
                assert!(fold_map(&c5, v, u).is_err());
            }
        }
        let l3 = std(Standard::Path(3));
        assert_eq!(fold_map(&l3, 2, 0).unwrap().image(), &[0, 1, 0]);
    }

    #[test]
    fn collapse_equivalences() {
        let l3 = std(Standard::Path(3));
        let k4 = std(Standard::Complete(4));
        let step = is_tree_like(&l3, 100).unwrap().found().unwrap().steps.remove(0);
        let r = verify_collapse_equivalence(&l3, Some(&step), &k4, None).unwrap();
        let groups: Vec<String> = r.rows.iter().map(|r| r.after.to_string()).collect();
        assert_eq!(groups[..3], ["Z", "0", "Z"]);
        assert!(r.rows[3..].iter().all(|r| r.before.is_zero()));
        let sigma = cx(4, &[&[0, 1, 2], &[0, 1, 3]]);
        let step = is_tree_like(&sigma, 100).unwrap().found().unwrap().steps.remove(0);
        verify_collapse_equivalence(&sigma, Some(&step), &std(Standard::Complete(5)), None).unwrap();
        verify_collapse_equivalence(&sigma, Some(&step), &std(Standard::BoundarySimplex(4)), None).unwrap();
        verify_collapse_equivalence(&sigma, None, &std(Standard::BoundarySimplex(4)), None).unwrap();
        let bogus = CollapseStep { v: 3, ..step };
        assert!(matches!(verify_collapse_equivalence(&sigma, Some(&bogus), &k4, None), Err(Error::InvalidCollapse(_))));
    }
}
