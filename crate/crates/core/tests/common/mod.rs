#![allow(dead_code)]

use std::collections::BTreeSet;

use homcx::{chains_of, HomComplex, IntChainComplex, Simplex, SimplicialComplex, Standard};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn std(kind: Standard) -> SimplicialComplex {
    SimplicialComplex::standard(kind).unwrap()
}

pub fn cx(n: usize, facets: &[&[usize]]) -> SimplicialComplex {
    SimplicialComplex::from_facets(n, facets.iter().map(|f| f.to_vec())).unwrap()
}

pub fn s(v: &[usize]) -> Simplex {
    Simplex::new(v.to_vec()).unwrap()
}

/// Boundary composites computed directly from the matrices.
pub fn boundary_squares_vanish(c: &IntChainComplex) -> bool {
    (2..c.ranks().len()).all(|d| match (c.boundary(d - 1), c.boundary(d)) {
        (Some(a), Some(b)) => a.mul(b).map(|m| m.is_zero()).unwrap_or(false),
        _ => true,
    })
}

pub fn chains(h: &HomComplex) -> IntChainComplex {
    chains_of(h).unwrap()
}

fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    p.iter().map(|&i| q[i]).collect()
}

/// The group generated by `gens` inside the symmetric group on `n` points.
pub fn closure(n: usize, gens: &BTreeSet<Vec<usize>>) -> BTreeSet<Vec<usize>> {
    let mut group: BTreeSet<Vec<usize>> = BTreeSet::new();
    group.insert((0..n).collect());
    let mut frontier: Vec<Vec<usize>> = group.iter().cloned().collect();
    while let Some(g) = frontier.pop() {
        for h in gens {
            let gh = compose(&g, h);
            if group.insert(gh.clone()) {
                frontier.push(gh);
            }
        }
    }
    group
}

/// Holonomy by exhaustive enumeration of closed walks of length at most
/// `max_len` starting at `sigma`: a frame (the ordered images of the
/// vertices of `sigma`) is carried along, swapping the one vertex that
/// changes at each step.
pub fn brute_force_holonomy(k: &SimplicialComplex, sigma: &Simplex, max_len: usize) -> BTreeSet<Vec<usize>> {
    let d = sigma.len() - 1;
    let nodes = k.simplices_of_dim(d);
    let adjacent = |a: &Simplex, b: &Simplex| a != b && a.intersection(b).len() == d;
    let mut loops = BTreeSet::new();
    let mut stack = vec![(sigma.clone(), sigma.vertices().to_vec(), 0usize)];
    while let Some((cur, frame, len)) = stack.pop() {
        if len > 0 && cur == *sigma {
            loops.insert(frame.iter().map(|x| sigma.position(*x).unwrap()).collect::<Vec<_>>());
        }
        if len == max_len {
            continue;
        }
        for next in nodes.iter().filter(|t| adjacent(&cur, t)) {
            let out = *cur.vertices().iter().find(|x| !next.contains(**x)).unwrap();
            let inn = *next.vertices().iter().find(|x| !cur.contains(**x)).unwrap();
            let moved = frame.iter().map(|&x| if x == out { inn } else { x }).collect();
            stack.push((next.clone(), moved, len + 1));
        }
    }
    closure(sigma.len(), &loops)
}

/// A random complex on `n` vertices with `m` random faces of size 1 to
/// `max_size`.
pub fn random_complex<R: Rng>(rng: &mut R, n: usize, m: usize, max_size: usize) -> SimplicialComplex {
    let verts: Vec<usize> = (0..n).collect();
    let facets: Vec<Vec<usize>> = (0..m)
        .map(|_| {
            let size = rng.gen_range(1..=max_size.min(n));
            verts.choose_multiple(rng, size).copied().collect()
        })
        .collect();
    SimplicialComplex::from_facets(n, facets).unwrap()
}

/// A random pure 2-complex built by gluing triangles along edges, so the
/// dual graph is connected.
pub fn random_strip<R: Rng>(rng: &mut R, triangles: usize, n: usize) -> SimplicialComplex {
    let mut facets: Vec<Vec<usize>> = vec![vec![0, 1, 2]];
    let mut tries = 0;
    while facets.len() < triangles && tries < 1000 {
        tries += 1;
        let f = facets.choose(rng).unwrap().clone();
        let drop = rng.gen_range(0..3);
        let mut edge: Vec<usize> = f.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &x)| x).collect();
        let w = rng.gen_range(0..n);
        if edge.contains(&w) {
            continue;
        }
        edge.push(w);
        edge.sort_unstable();
        if !facets.contains(&edge) {
            facets.push(edge);
        }
    }
    // relabel so that every vertex is used and the complex stays pure
    let mut used: Vec<usize> = facets.iter().flatten().copied().collect();
    used.sort_unstable();
    used.dedup();
    let relabel = |v: usize| used.binary_search(&v).unwrap();
    let facets: Vec<Vec<usize>> = facets.iter().map(|f| f.iter().map(|&v| relabel(v)).collect()).collect();
    SimplicialComplex::from_facets(used.len(), facets).unwrap()
}

/// Chromatic number by trying every assignment of `c` colours, smallest
/// `c` first. Only for small vertex counts.
pub fn brute_force_chromatic(k: &SimplicialComplex) -> usize {
    let n = k.n_vertices();
    let edges = k.edges();
    for c in 1..=n.max(1) {
        let mut colors = vec![0usize; n];
        loop {
            if edges.iter().all(|&(a, b)| colors[a] != colors[b]) {
                return c;
            }
            let mut i = 0;
            while i < n {
                colors[i] += 1;
                if colors[i] < c {
                    break;
                }
                colors[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
    }
    n
}

/// Small tree-like 2-complexes: fan, strip, three-page book, branching
/// strip.
pub fn tree_like_examples() -> Vec<(&'static str, SimplicialComplex)> {
    vec![
        ("fan", cx(5, &[&[0, 1, 2], &[0, 2, 3], &[0, 3, 4]])),
        ("strip", cx(6, &[&[0, 1, 2], &[1, 2, 3], &[2, 3, 4], &[3, 4, 5]])),
        ("book", cx(5, &[&[0, 1, 2], &[0, 1, 3], &[0, 1, 4]])),
        ("branch", cx(7, &[&[0, 1, 2], &[1, 2, 3], &[2, 3, 4], &[2, 4, 5], &[4, 5, 6]])),
    ]
}
