//! Chromatic numbers of simplicial complexes, the generalized chromatic
//! number over a weighted family of targets, Phi_d-complexes and the
//! lower bounds they give.

use serde::Serialize;
use thiserror::Error;

use crate::chain::{
    chain_map_of, chains_of, connectivity_estimate, edge_path_group_trivial, induced_on_homology, CertificateLevel, IntegralHomology,
    DEFAULT_TIETZE_PASSES,
};
use crate::error::{Error, Result};
use crate::hom::{induced_precompose, HomComplex};
use crate::projectivity::holonomy_group;
use crate::simplicial::{Simplex, SimplicialComplex, Standard, VertexMap};

/// Why a candidate fails to be a Phi_d-complex.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PhiFailure {
    #[error("complex is not pure")]
    NotPure,
    #[error("{0:?} is not a facet of the complex")]
    NotAFacet(Vec<usize>),
    #[error("map is not an involution")]
    NotInvolution,
    #[error("simplex {0:?} is not invariant")]
    NotInvariant(Vec<usize>),
    #[error("restriction to the invariant simplex is the identity")]
    TrivialRestriction,
    #[error("restriction {0:?} is not a projectivity of the simplex")]
    NotInHolonomy(Vec<usize>),
}

impl PhiFailure {
    /// Stable short name for reports.
    pub fn code(&self) -> &'static str {
        match self {
            PhiFailure::NotPure => "not_pure",
            PhiFailure::NotAFacet(_) => "not_a_facet",
            PhiFailure::NotInvolution => "not_involution",
            PhiFailure::NotInvariant(_) => "not_invariant",
            PhiFailure::TrivialRestriction => "trivial_restriction",
            PhiFailure::NotInHolonomy(_) => "not_in_holonomy",
        }
    }
}

/// A proper colouring of the vertex-edge graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coloring {
    pub colors: Vec<usize>,
}

impl Coloring {
    pub fn is_proper(&self, k: &SimplicialComplex) -> bool {
        self.colors.len() == k.n_vertices() && k.edges().iter().all(|&(a, b)| self.colors[a] != self.colors[b])
    }

    pub fn count(&self) -> usize {
        self.colors.iter().map(|c| c + 1).max().unwrap_or(0)
    }
}

struct Dsatur<'a> {
    adj: &'a [Vec<usize>],
    colors: Vec<Option<usize>>,
    best: Vec<usize>,
    best_count: usize,
    lower: usize,
}

impl Dsatur<'_> {
    fn saturation(&self, v: usize) -> usize {
        let mut seen: Vec<usize> = self.adj[v].iter().filter_map(|&w| self.colors[w]).collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    fn pick(&self) -> Option<usize> {
        (0..self.adj.len())
            .filter(|&v| self.colors[v].is_none())
            .max_by_key(|&v| (self.saturation(v), self.adj[v].len(), std::cmp::Reverse(v)))
    }

    fn search(&mut self, used: usize) {
        if self.best_count == self.lower {
            return;
        }
        let Some(v) = self.pick() else {
            if used < self.best_count {
                self.best_count = used;
                self.best = self.colors.iter().map(|c| c.expect("all coloured")).collect();
            }
            return;
        };
        for c in 0..=used {
            if c + 1 >= self.best_count {
                break;
            }
            if self.adj[v].iter().any(|&w| self.colors[w] == Some(c)) {
                continue;
            }
            self.colors[v] = Some(c);
            self.search(used.max(c + 1));
            self.colors[v] = None;
            if self.best_count == self.lower {
                return;
            }
        }
    }
}

fn greedy_clique(adj: &[Vec<usize>]) -> usize {
    let mut best = usize::from(!adj.is_empty());
    for start in 0..adj.len() {
        let mut clique = vec![start];
        let mut cands: Vec<usize> = adj[start].clone();
        cands.sort_by_key(|&w| std::cmp::Reverse(adj[w].len()));
        for w in cands {
            if clique.iter().all(|&c| adj[w].binary_search(&c).is_ok()) {
                clique.push(w);
            }
        }
        best = best.max(clique.len());
    }
    best
}

/// Exact chromatic number of the vertex-edge graph, by DSATUR branch and
/// bound between a greedy clique and the first DSATUR colouring.
pub fn chromatic_number(k: &SimplicialComplex) -> Result<(usize, Coloring)> {
    if k.n_vertices() == 0 {
        return Err(Error::ParameterOutOfRange("chromatic number of the empty complex".into()));
    }
    let adj = k.adjacency();
    let n = adj.len();
    let mut s = Dsatur { adj: &adj, colors: vec![None; n], best: Vec::new(), best_count: n + 1, lower: greedy_clique(&adj) };
    s.search(0);
    let coloring = Coloring { colors: s.best };
    debug_assert!(coloring.is_proper(k));
    Ok((s.best_count, coloring))
}

/// Backtracking search for a non-degenerate simplicial map `K -> T`.
pub fn exists_nondegenerate_map(k: &SimplicialComplex, t: &SimplicialComplex) -> Option<VertexMap> {
    let n = k.n_vertices();
    if n == 0 {
        return VertexMap::new(k, t, Vec::new()).ok();
    }
    let adj = k.adjacency();
    // breadth-first, highest degree first, so constraints bite early
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let root = (0..n).filter(|&v| !placed[v]).max_by_key(|&v| (adj[v].len(), std::cmp::Reverse(v))).expect("unplaced vertex");
        placed[root] = true;
        let mut i = order.len();
        order.push(root);
        while i < order.len() {
            let v = order[i];
            let mut next: Vec<usize> = adj[v].iter().copied().filter(|&w| !placed[w]).collect();
            next.sort_by_key(|&w| (std::cmp::Reverse(adj[w].len()), w));
            for w in next {
                placed[w] = true;
                order.push(w);
            }
            i += 1;
        }
    }
    let star: Vec<Vec<&Simplex>> = (0..n).map(|v| k.star_facets(v).collect()).collect();
    let mut image: Vec<Option<usize>> = vec![None; n];
    if !assign(t, &order, 0, &star, &mut image) {
        return None;
    }
    let image = image.into_iter().map(|x| x.expect("assigned")).collect();
    let f = VertexMap::new(k, t, image).expect("search only builds simplicial maps");
    debug_assert!(f.is_nondegenerate());
    Some(f)
}

fn assign(t: &SimplicialComplex, order: &[usize], i: usize, star: &[Vec<&Simplex>], image: &mut [Option<usize>]) -> bool {
    let Some(&v) = order.get(i) else { return true };
    for x in 0..t.n_vertices() {
        image[v] = Some(x);
        let ok = star[v].iter().all(|f| {
            let mut img: Vec<usize> = f.vertices().iter().filter_map(|&w| image[w]).collect();
            img.sort_unstable();
            img.windows(2).all(|w| w[0] < w[1]) && t.contains_vertices(&img)
        });
        if ok && assign(t, order, i + 1, star, image) {
            return true;
        }
    }
    image[v] = None;
    false
}

#[derive(Clone, Debug)]
pub struct GeneralizedChromatic {
    /// Smallest weight of a target that admits a non-degenerate map;
    /// infinite when none does.
    pub value: f64,
    pub index: Option<usize>,
    pub witness: Option<VertexMap>,
}

/// The infimum of the weights of those targets `T_i` with a non-degenerate
/// map `K -> T_i`.
pub fn generalized_chromatic(k: &SimplicialComplex, family: &[(SimplicialComplex, f64)]) -> GeneralizedChromatic {
    let mut best = GeneralizedChromatic { value: f64::INFINITY, index: None, witness: None };
    for (i, (t, w)) in family.iter().enumerate() {
        if *w < best.value {
            if let Some(f) = exists_nondegenerate_map(k, t) {
                best = GeneralizedChromatic { value: *w, index: Some(i), witness: Some(f) };
            }
        }
    }
    best
}

/// The family of full simplices `Delta^[m]` with weight `m`, for
/// `m = 1..=max`; over it the generalized chromatic number is the
/// chromatic number.
pub fn simplex_family(max: usize) -> Vec<(SimplicialComplex, f64)> {
    (1..=max).map(|m| (SimplicialComplex::standard(Standard::Simplex(m)).expect("m >= 1"), m as f64)).collect()
}

/// Witness that `(gamma, omega)` is a Phi_d-complex with invariant simplex
/// `sigma`.
#[derive(Clone, Debug)]
pub struct PhiCertificate {
    pub gamma: SimplicialComplex,
    pub omega: VertexMap,
    pub sigma: Simplex,
    /// `omega` restricted to `sigma`, as `(x, omega(x))` pairs.
    pub restriction: Vec<(usize, usize)>,
    /// A closed walk of adjacent facets whose projectivity is the
    /// restriction.
    pub membership_path: Vec<Simplex>,
    pub holonomy_order: usize,
    pub holonomy_label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiSummary {
    pub d: usize,
    pub sigma: Simplex,
    pub restriction: Vec<(usize, usize)>,
    pub membership_path: Vec<Simplex>,
    pub holonomy_order: usize,
    pub holonomy_label: String,
}

impl PhiCertificate {
    pub fn d(&self) -> usize {
        self.sigma.len() - 1
    }

    pub fn summary(&self) -> PhiSummary {
        PhiSummary {
            d: self.d(),
            sigma: self.sigma.clone(),
            restriction: self.restriction.clone(),
            membership_path: self.membership_path.clone(),
            holonomy_order: self.holonomy_order,
            holonomy_label: self.holonomy_label.clone(),
        }
    }
}

/// Checks the Phi_d conditions in order, failing with the first one that
/// does not hold.
pub fn phi_d_certify(gamma: &SimplicialComplex, omega: &VertexMap, sigma: &Simplex) -> Result<PhiCertificate> {
    let phi = |f: PhiFailure| Err(Error::Phi(f));
    if !gamma.is_pure() || gamma.facets().is_empty() {
        return phi(PhiFailure::NotPure);
    }
    if !gamma.facets().contains(sigma) {
        return phi(PhiFailure::NotAFacet(sigma.vertices().to_vec()));
    }
    if omega.source() != gamma || omega.target() != gamma {
        return Err(Error::MapMismatch);
    }
    if !omega.is_nondegenerate() || !omega.then(omega)?.is_identity() {
        return phi(PhiFailure::NotInvolution);
    }
    let mut image: Vec<usize> = sigma.vertices().iter().map(|&x| omega.apply(x)).collect();
    image.sort_unstable();
    if image != sigma.vertices() {
        return phi(PhiFailure::NotInvariant(sigma.vertices().to_vec()));
    }
    let restriction: Vec<(usize, usize)> = sigma.vertices().iter().map(|&x| (x, omega.apply(x))).collect();
    if restriction.iter().all(|(x, y)| x == y) {
        return phi(PhiFailure::TrivialRestriction);
    }
    let g = holonomy_group(gamma, sigma)?;
    let Some(p) = g.realize(&restriction) else {
        return phi(PhiFailure::NotInHolonomy(restriction.iter().map(|&(_, y)| y).collect()));
    };
    Ok(PhiCertificate {
        gamma: gamma.clone(),
        omega: omega.clone(),
        sigma: sigma.clone(),
        restriction,
        membership_path: p.path().to_vec(),
        holonomy_order: g.order(),
        holonomy_label: g.label().to_string(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvolutionReport {
    pub cells: usize,
    pub is_involution: bool,
    /// No cell is mapped to itself.
    pub free: bool,
    pub fixed_cells: usize,
}

/// The involution of `Hom(gamma, K)` given by precomposition with `omega`.
pub fn induced_involution(cert: &PhiCertificate, h: &HomComplex) -> Result<InvolutionReport> {
    let m = induced_precompose(h, &cert.omega, h)?;
    let mut is_involution = true;
    let mut fixed_cells = 0;
    for (d, layer) in h.cells().iter().enumerate() {
        for (i, eta) in layer.iter().enumerate() {
            let once = m.image(d, i);
            if &once.cell == eta {
                fixed_cells += 1;
            }
            if m.image(once.dim, once.ordinal).cell != *eta {
                is_involution = false;
            }
        }
    }
    Ok(InvolutionReport { cells: h.len(), is_involution, free: fixed_cells == 0, fixed_cells })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremApplied {
    /// `Coind >= m`, `m` even, gives `chi >= m + d + 2`.
    ThmMain,
    /// `k`-connected, `k` odd, gives `chi >= k + d + 3`.
    CorLbk,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub d: usize,
    pub hom_cells: Vec<usize>,
    pub homology: String,
    /// `-2` for an empty Hom-complex.
    pub connectivity_k: i64,
    pub certificate_level: CertificateLevel,
    pub pi1_trivial: Option<bool>,
    /// The odd connectivity the bound is applied at.
    pub k_applied: Option<i64>,
    pub parity_note: String,
    pub level_note: String,
    pub claimed_bound: Option<i64>,
    pub theorem_applied: Option<TheoremApplied>,
    pub chromatic_number: usize,
    pub consistent: bool,
}

/// Lower bound for `chi(K)` from the connectivity of `Hom(gamma, K)`.
/// A claim above the independently computed chromatic number is returned as
/// an internal error.
pub fn lovasz_bound_report(cert: &PhiCertificate, k: &SimplicialComplex, cap: Option<usize>, pi1: bool) -> Result<BoundReport> {
    let h = HomComplex::build(&cert.gamma, k, cap)?;
    let hg = IntegralHomology::compute(&chains_of(&h)?, true).groups().clone();
    let mut conn = connectivity_estimate(&hg, None);
    if pi1 && conn.k >= 1 {
        let trivial = edge_path_group_trivial(&h, DEFAULT_TIETZE_PASSES);
        conn.pi1_trivial = Some(trivial);
        if trivial {
            conn.level = CertificateLevel::HomologyPi1;
        }
    }
    let d = cert.d();
    let (chi, _) = chromatic_number(k)?;
    // acyclic: homology certifies nothing past the top cell
    let k_eff = if conn.k == i64::MAX { h.dim().map_or(-1, |x| x as i64) } else { conn.k };
    let k_applied = (conn.k >= -1).then(|| if k_eff.rem_euclid(2) == 1 { k_eff } else { k_eff - 1 });
    let parity_note = match k_applied {
        None => "Hom-complex is empty: no bound derivable".to_string(),
        Some(ka) if ka == k_eff => format!("k = {k_eff} is odd; the bound holds for k odd"),
        Some(ka) => format!("k = {k_eff} is even; the bound holds for k odd, applied at k = {ka}"),
    };
    let level_note = match (conn.level, k_applied) {
        (_, None) => String::new(),
        (_, Some(ka)) if ka <= 0 => "exact: k <= 0 is decided by reduced homology".into(),
        (CertificateLevel::HomologyPi1, _) => "k-connected by Hurewicz: homology vanishes and the fundamental group is trivial".into(),
        (CertificateLevel::Homology, _) => "conditional on k-connectedness: vanishing homology is necessary, not sufficient".into(),
    };
    let claimed_bound = k_applied.map(|ka| ka + d as i64 + 3);
    let consistent = claimed_bound.is_none_or(|b| b <= chi as i64);
    let report = BoundReport {
        d,
        hom_cells: h.counts(),
        homology: hg.to_string(),
        connectivity_k: conn.k,
        certificate_level: conn.level,
        pi1_trivial: conn.pi1_trivial,
        k_applied,
        parity_note,
        level_note,
        claimed_bound,
        theorem_applied: claimed_bound.map(|_| TheoremApplied::CorLbk),
        chromatic_number: chi,
        consistent,
    };
    if !consistent {
        return Err(Error::Internal(format!("claimed bound {:?} exceeds chromatic number {chi}", report.claimed_bound)));
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoIotaReport {
    pub r: usize,
    pub n: usize,
    pub source_cells: Vec<usize>,
    pub target_cells: Vec<usize>,
    pub source_homology: String,
    pub target_homology: String,
    /// Empty `Hom(C_{2r+1}, K_n)`; everything holds vacuously.
    pub vacuous: bool,
    /// Dimensions where the flip after the inclusion agrees with the
    /// inclusion on homology.
    pub commutes: Vec<(usize, bool)>,
    /// Degree of the flip on `H_{n-2}` of `Hom(K_2, K_n)`.
    pub flip_degree: Option<i64>,
    /// `None` when `n` is odd and nothing is claimed.
    pub iota_zero_on_free: Option<bool>,
    pub parity_note: String,
    pub pass: bool,
}

/// Homology-level check of the inclusion `K_2 -> C_{2r+1}` and the flip of
/// `K_2` acting on `Hom(-, K_n)`.
pub fn two_iota_star_check(r: usize, n: usize, cap: Option<usize>) -> Result<TwoIotaReport> {
    if r < 1 || n < 2 {
        return Err(Error::ParameterOutOfRange("need r >= 1 and n >= 2".into()));
    }
    let c = SimplicialComplex::standard(Standard::Cycle(2 * r + 1))?;
    let k2 = SimplicialComplex::standard(Standard::Complete(2))?;
    let kn = SimplicialComplex::standard(Standard::Complete(n))?;
    let src = HomComplex::build(&c, &kn, cap)?;
    let tgt = HomComplex::build(&k2, &kn, cap)?;
    let iota = VertexMap::new(&k2, &c, vec![0, 1])?;
    let flip = VertexMap::new(&k2, &k2, vec![1, 0])?;
    let iota_hat = chain_map_of(&induced_precompose(&src, &iota, &tgt)?)?;
    let flip_hat = chain_map_of(&induced_precompose(&tgt, &flip, &tgt)?)?;
    let both = iota_hat.then(&flip_hat).map_err(|_| Error::Internal("overflow composing chain maps".into()))?;
    let hs = IntegralHomology::compute(&chains_of(&src)?, true);
    let ht = IntegralHomology::compute(&chains_of(&tgt)?, true);
    let top = hs.groups().dims.len().max(ht.groups().dims.len());
    let mut commutes = Vec::new();
    for d in 0..top {
        let a = induced_on_homology(&iota_hat, &hs, &ht, d)?;
        let b = induced_on_homology(&both, &hs, &ht, d)?;
        commutes.push((d, a == b));
    }
    let flip_degree = induced_on_homology(&flip_hat, &ht, &ht, n - 2).ok().and_then(|m| m.degree());
    let iota_zero_on_free = if n.is_multiple_of(2) {
        Some(src.is_empty() || induced_on_homology(&iota_hat, &hs, &ht, n - 2)?.is_zero_on_free_part())
    } else {
        None
    };
    let parity_note = if n.is_multiple_of(2) {
        format!("n = {n} even: iota_* must vanish on the free part of H{}", n - 2)
    } else {
        format!("n = {n} odd: no vanishing is claimed")
    };
    let pass = commutes.iter().all(|&(_, ok)| ok) && iota_zero_on_free != Some(false);
    Ok(TwoIotaReport {
        r,
        n,
        source_cells: src.counts(),
        target_cells: tgt.counts(),
        source_homology: hs.groups().to_string(),
        target_homology: ht.groups().to_string(),
        vacuous: src.is_empty(),
        commutes,
        flip_degree,
        iota_zero_on_free,
        parity_note,
        pass,
    })
}

/// The 5-cycle with the reflection swapping 0 and 1, invariant edge [0, 1].
pub fn c5_reflection() -> (SimplicialComplex, VertexMap, Simplex) {
    let c5 = SimplicialComplex::standard(Standard::Cycle(5)).expect("valid");
    let omega = VertexMap::new(&c5, &c5, vec![1, 0, 4, 3, 2]).expect("reflection is simplicial");
    (c5, omega, Simplex::new(vec![0, 1]).expect("valid"))
}

/// Triangulated annulus: the boundary cycles `top` and `bottom` joined by
/// a band of triangles, `moves` saying which side advances at each step.
fn annulus(top: &[usize], bottom: &[usize], moves: &str) -> Vec<Vec<usize>> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    for c in moves.chars() {
        let (t, b) = (top[i % top.len()], bottom[j % bottom.len()]);
        if c == 'T' {
            out.push(vec![t, top[(i + 1) % top.len()], b]);
            i += 1;
        } else {
            out.push(vec![t, b, bottom[(j + 1) % bottom.len()]]);
            j += 1;
        }
    }
    out
}

/// Two copies of `band` sharing the triangle `shared`, the second copy's
/// first two shared vertices exchanged. The involution swaps the copies.
fn twisted_pair(band: Vec<Vec<usize>>, n: usize, shared: [usize; 3]) -> (SimplicialComplex, VertexMap, Simplex) {
    // second copy: shared vertices (a, b, c) -> (b, a, c), others shifted
    let mut other: Vec<usize> = vec![0; n];
    let mut next = n;
    for (v, slot) in other.iter_mut().enumerate() {
        *slot = if v == shared[0] {
            shared[1]
        } else if v == shared[1] {
            shared[0]
        } else if v == shared[2] {
            v
        } else {
            next += 1;
            next - 1
        };
    }
    let total = next;
    let mut facets = band.clone();
    facets.extend(band.iter().map(|f| f.iter().map(|&v| other[v]).collect::<Vec<_>>()));
    let gamma = SimplicialComplex::from_facets(total, facets).expect("valid");
    let mut omega: Vec<usize> = (0..total).collect();
    for v in 0..n {
        omega[v] = other[v];
        omega[other[v]] = v;
    }
    let omega = VertexMap::new(&gamma, &gamma, omega).expect("swapping the copies is simplicial");
    (gamma, omega, Simplex::new(shared.to_vec()).expect("valid"))
}

/// Two annuli, each a band of 7 triangles between a 3-cycle and a 4-cycle,
/// sharing one triangle with a twist; the reflection swaps them.
pub fn annulus_pair() -> (SimplicialComplex, VertexMap, Simplex) {
    twisted_pair(annulus(&[0, 1, 2], &[3, 4, 5, 6], "TBTBTBB"), 7, [0, 1, 3])
}

/// Two Moebius bands of six triangles sharing a triangle with a twist.
pub fn moebius_pair() -> (SimplicialComplex, VertexMap, Simplex) {
    // a band between 0-1-2 and 3-4-5 closed up with 3 glued after 2
    let band = vec![vec![0, 1, 3], vec![1, 3, 4], vec![1, 2, 4], vec![2, 4, 5], vec![2, 3, 5], vec![0, 3, 5]];
    twisted_pair(band, 6, [0, 3, 1])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn std(s: Standard) -> SimplicialComplex {
        SimplicialComplex::standard(s).unwrap()
    }

    #[test]
    fn chromatic_examples() {
        assert_eq!(chromatic_number(&std(Standard::Cycle(5))).unwrap().0, 3);
        assert_eq!(chromatic_number(&std(Standard::Simplex(4))).unwrap().0, 4);
        assert_eq!(chromatic_number(&std(Standard::BoundarySimplex(4))).unwrap().0, 4);
        assert_eq!(chromatic_number(&std(Standard::Cycle(6))).unwrap().0, 2);
        let (m, c) = chromatic_number(&std(Standard::Complete(5))).unwrap();
        assert_eq!((m, c.count()), (5, 5));
    }

    #[test]
    fn nondegenerate_maps() {
        assert!(exists_nondegenerate_map(&std(Standard::Cycle(5)), &std(Standard::Complete(3))).is_some());
        assert!(exists_nondegenerate_map(&std(Standard::Complete(4)), &std(Standard::Cycle(5))).is_none());
        assert!(exists_nondegenerate_map(&std(Standard::Simplex(3)), &std(Standard::BoundarySimplex(4))).is_some());
        assert!(exists_nondegenerate_map(&std(Standard::Simplex(3)), &std(Standard::Complete(4))).is_none());
    }

    #[test]
    fn generalized() {
        let c5 = std(Standard::Cycle(5));
        assert_eq!(generalized_chromatic(&c5, &simplex_family(6)).value, 3.0);
        let fam = vec![(c5.clone(), 2.5), (std(Standard::Complete(3)), 3.0)];
        let g = generalized_chromatic(&c5, &fam);
        assert_eq!((g.value, g.index), (2.5, Some(0)));
        assert_eq!(generalized_chromatic(&c5, &[]).value, f64::INFINITY);
    }

    #[test]
    fn phi_examples() {
        let (c5, omega, sigma) = c5_reflection();
        let cert = phi_d_certify(&c5, &omega, &sigma).unwrap();
        assert_eq!(cert.holonomy_label, "Z2");
        assert_eq!(cert.membership_path.len(), 6);
        let c6 = std(Standard::Cycle(6));
        let antipode = VertexMap::new(&c6, &c6, vec![3, 4, 5, 0, 1, 2]).unwrap();
        for e in c6.facets() {
            assert!(matches!(phi_d_certify(&c6, &antipode, e), Err(Error::Phi(PhiFailure::NotInvariant(_)))));
        }
        let s = std(Standard::Simplex(3));
        let r = phi_d_certify(&s, &VertexMap::identity(&s), &s.facets()[0].clone());
        assert!(matches!(r, Err(Error::Phi(PhiFailure::TrivialRestriction))));
        let shift = VertexMap::new(&c5, &c5, vec![1, 2, 3, 4, 0]).unwrap();
        assert!(matches!(phi_d_certify(&c5, &shift, &sigma), Err(Error::Phi(PhiFailure::NotInvolution))));
    }

    #[test]
    fn two_dimensional_examples() {
        for (gamma, omega, sigma) in [annulus_pair(), moebius_pair()] {
            let cert = phi_d_certify(&gamma, &omega, &sigma).unwrap();
            assert_eq!(cert.d(), 2);
            let replay = crate::projectivity::Projectivity::along(&cert.membership_path).unwrap();
            assert_eq!(replay.pairs(), cert.restriction);
        }
    }

    #[test]
    fn involution_on_hom() {
        let (c5, omega, sigma) = c5_reflection();
        let cert = phi_d_certify(&c5, &omega, &sigma).unwrap();
        let h = HomComplex::build(&c5, &std(Standard::Complete(4)), None).unwrap();
        let r = induced_involution(&cert, &h).unwrap();
        assert!(r.is_involution && r.free);
        let h = HomComplex::build(&c5, &std(Standard::Complete(2)), None).unwrap();
        assert!(induced_involution(&cert, &h).unwrap().free);
    }

    #[test]
    fn bounds() {
        let (c5, omega, sigma) = c5_reflection();
        let cert = phi_d_certify(&c5, &omega, &sigma).unwrap();
        let r = lovasz_bound_report(&cert, &std(Standard::Complete(4)), None, false).unwrap();
        assert_eq!((r.connectivity_k, r.claimed_bound, r.chromatic_number), (0, Some(3), 4));
        let r = lovasz_bound_report(&cert, &std(Standard::Complete(2)), None, false).unwrap();
        assert_eq!((r.connectivity_k, r.claimed_bound), (-2, None));
    }

    #[test]
    fn two_iota_gates() {
        let r = two_iota_star_check(1, 2, None).unwrap();
        assert!(r.vacuous && r.pass);
        let r = two_iota_star_check(1, 3, None).unwrap();
        assert_eq!(r.iota_zero_on_free, None);
        assert!(r.pass);
    }
}
