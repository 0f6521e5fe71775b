use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{EuclideanRing, Fp, Overflow};

use super::reduce::Reduction;
use super::snf::{smith, Dense};
use super::{ChainComplex, ChainMap, SparseMatrix, SparseVec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimHomology {
    pub dim: usize,
    pub betti: usize,
    /// Invariant factors greater than one, each dividing the next.
    pub torsion: Vec<u64>,
}

impl DimHomology {
    pub fn zero(dim: usize) -> Self {
        DimHomology { dim, betti: 0, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for DimHomology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroups {
    pub reduced: bool,
    /// Rank of reduced homology in degree -1: one exactly for the empty
    /// complex when reduced.
    pub minus_one: usize,
    pub dims: Vec<DimHomology>,
}

impl HomologyGroups {
    pub fn get(&self, d: usize) -> Option<&DimHomology> {
        self.dims.get(d)
    }

    pub fn betti(&self, d: usize) -> usize {
        self.dims.get(d).map_or(0, |h| h.betti)
    }

    pub fn torsion(&self, d: usize) -> &[u64] {
        self.dims.get(d).map_or(&[], |h| h.torsion.as_slice())
    }

    pub fn is_torsion_free(&self) -> bool {
        self.dims.iter().all(|h| h.torsion.is_empty())
    }

    /// Equal groups in every degree; degrees past the end of either list
    /// count as zero.
    pub fn same_groups(&self, other: &HomologyGroups) -> bool {
        let n = self.dims.len().max(other.dims.len());
        self.reduced == other.reduced
            && self.minus_one == other.minus_one
            && (0..n).all(|d| {
                let zero = DimHomology::zero(d);
                self.get(d).unwrap_or(&zero) == other.get(d).unwrap_or(&zero)
            })
    }

    /// Degrees with nonzero homology.
    pub fn support(&self) -> Vec<usize> {
        self.dims.iter().filter(|h| !h.is_zero()).map(|h| h.dim).collect()
    }

    /// Homology is `Z^b` in degree `d` and zero elsewhere.
    pub fn is_free_and_concentrated_in(&self, d: usize) -> bool {
        self.minus_one == 0 && self.dims.iter().all(|h| if h.dim == d { h.torsion.is_empty() } else { h.is_zero() })
    }

    /// Reduced homology of the `n`-sphere (or unreduced homology of it).
    pub fn is_sphere(&self, n: usize) -> bool {
        let want = |d: usize| -> usize {
            if d == n {
                1 + usize::from(!self.reduced && n == 0)
            } else {
                usize::from(!self.reduced && d == 0)
            }
        };
        self.minus_one == 0 && self.dims.len() == n + 1 && self.dims.iter().all(|h| h.torsion.is_empty() && h.betti == want(h.dim))
    }
}

impl fmt::Display for HomologyGroups {
    /// `dim0: Z; dim1: Z`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.minus_one > 0 {
            parts.push("dim-1: Z".to_string());
        }
        parts.extend(self.dims.iter().map(|h| format!("dim{}: {}", h.dim, h)));
        f.write_str(&parts.join("; "))
    }
}

fn augmented<T: EuclideanRing>(c: &ChainComplex<T>, reduced: bool) -> (Vec<usize>, Vec<SparseMatrix<T>>) {
    let aug = usize::from(reduced);
    let mut sizes = vec![aug];
    sizes.extend_from_slice(c.ranks());
    let mut mats = Vec::with_capacity(sizes.len() - 1);
    if !c.ranks().is_empty() {
        let eps = if reduced { vec![vec![(0, T::one())]; c.rank(0)] } else { vec![Vec::new(); c.rank(0)] };
        mats.push(SparseMatrix::from_columns(aug, eps).expect("unit entries"));
        for d in 1..c.ranks().len() {
            mats.push(c.boundary(d).expect("present").clone());
        }
    }
    (sizes, mats)
}

fn to_u64<T: EuclideanRing>(x: &T) -> u64 {
    x.to_bigint().to_u64().expect("torsion coefficient fits in 64 bits")
}

fn groups_from<T: EuclideanRing>(red: &Reduction<T>, reduced: bool) -> Result<HomologyGroups, Overflow> {
    let levels = red.levels();
    let mut ranks = vec![0; levels + 1];
    let mut torsion = vec![Vec::new(); levels + 1];
    for q in 1..levels {
        let s = smith(red.residual(q).expect("present"), false, false)?;
        ranks[q] = s.rank();
        torsion[q - 1] = s.factors.iter().filter(|e| !e.is_unit()).map(to_u64).collect();
    }
    let level = |l: usize| (red.residual_size(l) - ranks[l] - ranks[l + 1], torsion[l].clone());
    let (minus_one, _) = level(0);
    let dims = (1..levels)
        .map(|l| {
            let (betti, torsion) = level(l);
            DimHomology { dim: l - 1, betti, torsion }
        })
        .collect();
    Ok(HomologyGroups { reduced, minus_one, dims })
}

/// Integral homology. Machine-word arithmetic is tried first; on overflow
/// the computation is repeated with arbitrary precision.
pub fn homology(c: &ChainComplex<i64>, reduced: bool) -> HomologyGroups {
    fn run<T: EuclideanRing>(c: &ChainComplex<T>, reduced: bool) -> Result<HomologyGroups, Overflow> {
        let (sizes, mats) = augmented(c, reduced);
        groups_from(&Reduction::run(sizes, &mats)?, reduced)
    }
    match run(c, reduced) {
        Ok(g) => g,
        Err(Overflow) => run(&c.map_coefficients(|x| BigInt::from(*x)), reduced).expect("arbitrary precision does not overflow"),
    }
}

/// Betti numbers over `Z/P`, for universal-coefficient cross-checks.
pub fn betti_mod_p<const P: u64>(c: &ChainComplex<i64>, reduced: bool) -> Vec<usize> {
    let cp = c.map_coefficients(|x| Fp::<P>::new(*x));
    let (sizes, mats) = augmented(&cp, reduced);
    let red = Reduction::run(sizes, &mats).expect("field arithmetic does not overflow");
    groups_from(&red, reduced).expect("field arithmetic does not overflow").dims.iter().map(|h| h.betti).collect()
}

struct LevelBasis<T> {
    v_inv_tail: Dense<T>,
    u2: Dense<T>,
    // indices into the coordinates `u2 * k` that carry a nontrivial class,
    // with their orders (None for free)
    classes: Vec<(usize, Option<T>)>,
    // residual generator vectors, one per class
    gens: Vec<Vec<T>>,
}

/// Homology with explicit cycle representatives and a coordinate map from
/// cycles to the generators.
///
/// Generators in each degree list the torsion classes first (orders
/// ascending) and then a basis of the free part.
pub struct HomologyBasis<T> {
    groups: HomologyGroups,
    red: Reduction<T>,
    levels: Vec<LevelBasis<T>>,
}

impl<T: EuclideanRing> HomologyBasis<T> {
    pub fn compute(c: &ChainComplex<T>, reduced: bool) -> Result<Self, Overflow> {
        let (sizes, mats) = augmented(c, reduced);
        let red = Reduction::run(sizes, &mats)?;
        let groups = groups_from(&red, reduced)?;
        let mut levels = Vec::new();
        for l in 0..red.levels() {
            let n = red.residual_size(l);
            let a = red.residual(l).cloned().unwrap_or_else(|| Dense::zeros(0, n));
            let sa = smith(&a, false, true)?;
            let r = sa.rank();
            let v = sa.v.expect("requested");
            let v_inv_tail = sa.v_inv.expect("requested").rows_from(r);
            let b = red.residual(l + 1).cloned().unwrap_or_else(|| Dense::zeros(n, 0));
            let m = v_inv_tail.mul(&b)?;
            let sm = smith(&m, true, false)?;
            let u2 = sm.u.expect("requested");
            let u2_inv = sm.u_inv.expect("requested");
            let gens_all = v.cols_from(r).mul(&u2_inv)?;
            let mut classes = Vec::new();
            for (i, e) in sm.factors.iter().enumerate() {
                if !e.is_unit() {
                    classes.push((i, Some(e.clone())));
                }
            }
            classes.extend((sm.factors.len()..n - r).map(|i| (i, None)));
            let gens = classes.iter().map(|(i, _)| gens_all.column(*i)).collect();
            levels.push(LevelBasis { v_inv_tail, u2, classes, gens });
        }
        Ok(HomologyBasis { groups, red, levels })
    }

    pub fn groups(&self) -> &HomologyGroups {
        &self.groups
    }

    fn level(&self, d: usize) -> Option<(usize, &LevelBasis<T>)> {
        self.levels.get(d + 1).map(|l| (d + 1, l))
    }

    /// Cycle representatives of the nontrivial classes in degree `d`.
    pub fn generators(&self, d: usize) -> Result<Vec<SparseVec<T>>, Overflow> {
        match self.level(d) {
            Some((l, lb)) => lb.gens.iter().map(|g| self.red.include(l, g)).collect(),
            None => Ok(Vec::new()),
        }
    }

    /// Coordinates of the class of a `d`-cycle; `None` if `z` is not a
    /// cycle.
    pub fn coordinates(&self, d: usize, z: &[(usize, T)]) -> Result<Option<Vec<T>>, Overflow> {
        let Some((l, lb)) = self.level(d) else { return Ok(Some(Vec::new())) };
        let y = self.red.project(l, z)?;
        if let Some(a) = self.red.residual(l) {
            if a.mul_vec(&y)?.iter().any(|x| !x.is_zero()) {
                return Ok(None);
            }
        }
        let h = lb.u2.mul_vec(&lb.v_inv_tail.mul_vec(&y)?)?;
        let coords = lb
            .classes
            .iter()
            .map(|(i, e)| match e {
                Some(e) => Ok(h[*i].div_rem_euclid(e)?.1),
                None => Ok(h[*i].clone()),
            })
            .collect::<Result<Vec<_>, Overflow>>()?;
        Ok(Some(coords))
    }
}

/// Coordinates of a homology class: residues on the torsion generators and
/// integers on the free ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyCoordinates {
    pub torsion: Vec<i64>,
    pub free: Vec<i64>,
}

enum Inner {
    Small(HomologyBasis<i64>),
    Big(HomologyBasis<BigInt>),
}

/// Integral homology with bases, computed in machine words when possible
/// and with arbitrary precision otherwise.
pub struct IntegralHomology {
    inner: Inner,
}

fn narrow(v: &BigInt) -> Result<i64> {
    v.to_i64().ok_or_else(|| Error::Internal("homology coordinate exceeds 64 bits".into()))
}

impl IntegralHomology {
    pub fn compute(c: &ChainComplex<i64>, reduced: bool) -> Self {
        let inner = match HomologyBasis::compute(c, reduced) {
            Ok(b) => Inner::Small(b),
            Err(Overflow) => Inner::Big(
                HomologyBasis::compute(&c.map_coefficients(|x| BigInt::from(*x)), reduced).expect("arbitrary precision does not overflow"),
            ),
        };
        IntegralHomology { inner }
    }

    pub fn groups(&self) -> &HomologyGroups {
        match &self.inner {
            Inner::Small(b) => b.groups(),
            Inner::Big(b) => b.groups(),
        }
    }

    /// Whether the computation needed arbitrary precision.
    pub fn is_big(&self) -> bool {
        matches!(self.inner, Inner::Big(_))
    }

    /// Cycle representatives in degree `d`, torsion classes first.
    pub fn generators(&self, d: usize) -> Result<Vec<SparseVec<i64>>> {
        match &self.inner {
            Inner::Small(b) => b.generators(d).map_err(|_| Error::Internal("overflow lifting generators".into())),
            Inner::Big(b) => b
                .generators(d)
                .expect("arbitrary precision does not overflow")
                .iter()
                .map(|g| g.iter().map(|(i, v)| Ok((*i, narrow(v)?))).collect())
                .collect(),
        }
    }

    pub fn coordinates(&self, d: usize, z: &[(usize, i64)]) -> Result<HomologyCoordinates> {
        let raw: Vec<i64> = match &self.inner {
            Inner::Small(b) => {
                b.coordinates(d, z).map_err(|_| Error::Internal("overflow in homology coordinates".into()))?.ok_or_else(not_a_cycle)?
            }
            Inner::Big(b) => {
                let zb: Vec<(usize, BigInt)> = z.iter().map(|(i, v)| (*i, BigInt::from(*v))).collect();
                b.coordinates(d, &zb)
                    .expect("arbitrary precision does not overflow")
                    .ok_or_else(not_a_cycle)?
                    .iter()
                    .map(narrow)
                    .collect::<Result<_>>()?
            }
        };
        let t = self.groups().torsion(d).len();
        Ok(HomologyCoordinates { torsion: raw[..t].to_vec(), free: raw[t..].to_vec() })
    }
}

fn not_a_cycle() -> Error {
    Error::Internal("chain is not a cycle".into())
}

/// The map induced on `H_d` in the generator bases of the two sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InducedMap {
    pub dim: usize,
    pub source_torsion: Vec<u64>,
    pub target_torsion: Vec<u64>,
    /// Target free coordinates of the source free generators
    /// (rows: target, columns: source).
    pub free: Vec<Vec<i64>>,
    /// Target torsion coordinates of every source generator, torsion
    /// generators first.
    pub torsion: Vec<Vec<i64>>,
}

impl InducedMap {
    pub fn is_zero_on_free_part(&self) -> bool {
        self.free.iter().flatten().all(|&x| x == 0)
    }

    /// Determinant of a square free block (the degree for rank one).
    pub fn degree(&self) -> Option<i64> {
        match self.free.as_slice() {
            [row] if row.len() == 1 => Some(row[0]),
            _ => None,
        }
    }
}

/// `f_*` on `H_d`; `source` and `target` must be the homology of the
/// complexes `f` goes between.
pub fn induced_on_homology(f: &ChainMap<i64>, source: &IntegralHomology, target: &IntegralHomology, d: usize) -> Result<InducedMap> {
    if source.groups().get(d).is_none() && target.groups().get(d).is_none() {
        return Err(Error::ParameterOutOfRange(format!("no homology in dimension {d} on either side")));
    }
    let gens = source.generators(d)?;
    let st = source.groups().torsion(d).to_vec();
    let tt = target.groups().torsion(d).to_vec();
    let tfree = target.groups().betti(d);
    let mut free = vec![Vec::new(); tfree];
    let mut torsion = vec![Vec::new(); tt.len()];
    for (j, g) in gens.iter().enumerate() {
        let img = f.apply(d, g).map_err(|_| Error::Internal("overflow applying chain map".into()))?;
        let c = if target.groups().get(d).is_some() {
            target.coordinates(d, &img)?
        } else if img.is_empty() {
            HomologyCoordinates { torsion: Vec::new(), free: Vec::new() }
        } else {
            return Err(Error::Internal("chain map has nonzero image in an empty dimension".into()));
        };
        for (row, x) in torsion.iter_mut().zip(&c.torsion) {
            row.push(*x);
        }
        if j >= st.len() {
            for (row, x) in free.iter_mut().zip(&c.free) {
                row.push(*x);
            }
        }
    }
    Ok(InducedMap { dim: d, source_torsion: st, target_torsion: tt, free, torsion })
}

impl<T: EuclideanRing> HomologyBasis<T> {
    #[cfg(test)]
    fn class_count(&self, d: usize) -> usize {
        self.level(d).map_or(0, |(_, l)| l.classes.len())
    }
}
