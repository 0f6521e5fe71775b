//! Connectivity estimates from reduced homology, optionally strengthened by
//! simplifying a presentation of the fundamental group.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::hom::{HomComplex, MultiHom, VertexSet};

use super::HomologyGroups;

pub const DEFAULT_TIETZE_PASSES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateLevel {
    /// Only reduced homology vanishes through `k`. For `k <= 0` this is
    /// already exact; above that it is necessary but not sufficient.
    Homology,
    /// Homology vanishes and the fundamental group was shown trivial, so the
    /// space is `k`-connected by Hurewicz.
    HomologyPi1,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Connectivity {
    /// Largest `k` with reduced homology zero in every degree `<= k`; `-2`
    /// for the empty space and `i64::MAX` when all reduced homology
    /// vanishes.
    pub k: i64,
    pub level: CertificateLevel,
    /// Outcome of the fundamental group attempt, when one was made.
    pub pi1_trivial: Option<bool>,
}

/// `hg` must be reduced homology. With `pi1` set, the edge-path group of
/// that complex is simplified and the certificate upgraded when it
/// collapses.
pub fn connectivity_estimate(hg: &HomologyGroups, pi1: Option<&HomComplex>) -> Connectivity {
    assert!(hg.reduced, "connectivity needs reduced homology");
    let k = if hg.minus_one > 0 {
        -2
    } else {
        let mut k = -1;
        for h in &hg.dims {
            if h.is_zero() {
                k = h.dim as i64;
            } else {
                break;
            }
        }
        // past the top cell everything vanishes
        if k == hg.dims.len() as i64 - 1 {
            k = i64::MAX
        }
        k
    };
    let pi1_trivial = match pi1 {
        Some(h) if k >= 0 => Some(edge_path_group_trivial(h, DEFAULT_TIETZE_PASSES)),
        _ => None,
    };
    let level = if pi1_trivial == Some(true) { CertificateLevel::HomologyPi1 } else { CertificateLevel::Homology };
    Connectivity { k, level, pi1_trivial }
}

type Word = Vec<i32>;

fn free_reduce(w: &mut Word) {
    let mut out: Word = Vec::with_capacity(w.len());
    for &x in w.iter() {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    // cyclic reduction
    let mut s = 0;
    let mut e = out.len();
    while e - s >= 2 && out[s] == -out[e - 1] {
        s += 1;
        e -= 1;
    }
    *w = out[s..e].to_vec();
}

/// Tries to show that the edge-path group of the 2-skeleton is trivial.
/// `false` means the simplification did not succeed within the pass bound,
/// not that the group is nontrivial.
pub fn edge_path_group_trivial(h: &HomComplex, passes: usize) -> bool {
    let verts = h.cells_of_dim(0);
    if verts.is_empty() {
        return false;
    }
    let edges = h.cells_of_dim(1);
    let endpoints = |e: &MultiHom| -> (usize, usize) {
        let v = e.assignment().iter().position(|s| s.len() == 2).expect("1-cell");
        let xs = e.get(v).to_vec();
        let a = with(e, v, VertexSet::singleton(xs[0]));
        let b = with(e, v, VertexSet::singleton(xs[1]));
        (h.position(&a).expect("face").1, h.position(&b).expect("face").1)
    };
    let ends: Vec<(usize, usize)> = edges.iter().map(endpoints).collect();

    // spanning forest by breadth-first search
    let mut adj = vec![Vec::new(); verts.len()];
    for (i, &(a, b)) in ends.iter().enumerate() {
        adj[a].push((b, i));
        adj[b].push((a, i));
    }
    let mut in_tree = vec![false; edges.len()];
    let mut seen = vec![false; verts.len()];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        for &(w, e) in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                in_tree[e] = true;
                queue.push_back(w);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return false;
    }
    let mut gen_of = vec![0i32; edges.len()];
    let mut next = 1;
    for (i, t) in in_tree.iter().enumerate() {
        if !t {
            gen_of[i] = next;
            next += 1;
        }
    }
    let edge_letter = |e: &MultiHom, forward: bool| -> Option<i32> {
        let i = h.position(e).expect("face").1;
        let g = gen_of[i];
        (g != 0).then_some(if forward { g } else { -g })
    };

    let mut relators: Vec<Word> = Vec::new();
    for cell in h.cells_of_dim(2) {
        let a = cell.assignment();
        let big: Vec<usize> = (0..a.len()).filter(|&v| a[v].len() > 1).collect();
        let mut word = Vec::new();
        if big.len() == 1 {
            let v = big[0];
            let xs = a[v].to_vec();
            let e = |i: usize, j: usize| with(cell, v, VertexSet::from_slice(&[xs[i], xs[j]]));
            word.extend(edge_letter(&e(0, 1), true));
            word.extend(edge_letter(&e(1, 2), true));
            word.extend(edge_letter(&e(0, 2), false));
        } else {
            let (v, w) = (big[0], big[1]);
            let (x, y) = (a[v].to_vec(), a[w].to_vec());
            let ev = |wy: usize| with(&with(cell, w, VertexSet::singleton(y[wy])), v, a[v]);
            let ew = |vx: usize| with(&with(cell, v, VertexSet::singleton(x[vx])), w, a[w]);
            word.extend(edge_letter(&ev(0), true));
            word.extend(edge_letter(&ew(1), true));
            word.extend(edge_letter(&ev(1), false));
            word.extend(edge_letter(&ew(0), false));
        }
        free_reduce(&mut word);
        if !word.is_empty() {
            relators.push(word);
        }
    }
    tietze(next as usize - 1, relators, passes)
}

fn with(cell: &MultiHom, v: usize, s: VertexSet) -> MultiHom {
    let mut a = cell.assignment().to_vec();
    a[v] = s;
    MultiHom::new(a)
}

const MAX_WORD: usize = 4096;

/// Eliminates generators that occur exactly once in some relator.
fn tietze(generators: usize, mut relators: Vec<Word>, passes: usize) -> bool {
    let mut alive = generators;
    for _ in 0..passes {
        if alive == 0 {
            return true;
        }
        relators.retain(|r| !r.is_empty());
        relators.sort_by_key(Vec::len);
        let mut progress = false;
        let mut i = 0;
        while i < relators.len() {
            let r = relators[i].clone();
            let mut counts: HashMap<i32, usize> = HashMap::new();
            for &x in &r {
                *counts.entry(x.abs()).or_default() += 1;
            }
            let Some(pos) = r.iter().position(|x| counts[&x.abs()] == 1) else {
                i += 1;
                continue;
            };
            // r = u g^e v  =>  g^e = u^-1 v^-1
            let g = r[pos];
            let inv = |w: &[i32]| -> Word { w.iter().rev().map(|x| -x).collect() };
            let mut replacement = inv(&r[..pos]);
            replacement.extend(inv(&r[pos + 1..]));
            let (img_pos, img_neg) =
                if g > 0 { (replacement.clone(), inv(&replacement)) } else { (inv(&replacement), replacement.clone()) };
            let gen = g.abs();
            relators.remove(i);
            for w in relators.iter_mut() {
                if !w.iter().any(|x| x.abs() == gen) {
                    continue;
                }
                let mut out = Vec::with_capacity(w.len());
                for &x in w.iter() {
                    if x == gen {
                        out.extend_from_slice(&img_pos);
                    } else if x == -gen {
                        out.extend_from_slice(&img_neg);
                    } else {
                        out.push(x);
                    }
                }
                free_reduce(&mut out);
                if out.len() > MAX_WORD {
                    return false;
                }
                *w = out;
            }
            alive -= 1;
            progress = true;
            if alive == 0 {
                return true;
            }
        }
        if !progress {
            return false;
        }
    }
    alive == 0
}
