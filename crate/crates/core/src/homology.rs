//! Reduced simplicial homology over the rationals, `η`, Leray numbers, and
//! checks of the homological statements about independence and non-cover
//! complexes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::complexes::{alexander_dual, independence_complex, noncover_complex, SimplicialComplex};
use crate::domination::{igamma, DominationValue};
use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::vertex_set::VertexSet;

/// Largest vertex support for which [`leray_number`] scans all induced
/// subcomplexes.
pub const LERAY_MAX_N: usize = 16;

/// Rank of an integer matrix, computed exactly.
///
/// Uses fraction-free (Bareiss) elimination in `i128`; on overflow the
/// computation is redone with arbitrary-precision rationals.
pub fn rank(matrix: &[Vec<i64>]) -> usize {
    bareiss_rank(matrix).unwrap_or_else(|| rational_rank(matrix))
}

#[allow(clippy::needless_range_loop)]
fn bareiss_rank(matrix: &[Vec<i64>]) -> Option<usize> {
    let mut m: Vec<Vec<i128>> = matrix
        .iter()
        .map(|row| row.iter().map(|&x| x as i128).collect())
        .collect();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    let mut prev: i128 = 1;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c];
        for i in r + 1..rows {
            let factor = m[i][c];
            for j in c + 1..cols {
                let v = pivot
                    .checked_mul(m[i][j])?
                    .checked_sub(factor.checked_mul(m[r][j])?)?;
                debug_assert_eq!(v % prev, 0);
                m[i][j] = v / prev;
            }
            m[i][c] = 0;
        }
        prev = pivot;
        r += 1;
    }
    Some(r)
}

/// Plain Gaussian elimination over `Q`.
#[allow(clippy::needless_range_loop)]
pub fn rational_rank(matrix: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = matrix
        .iter()
        .map(|row| {
            row.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = BigRational::one() / &m[r][c];
        for i in r + 1..rows {
            if m[i][c].is_zero() {
                continue;
            }
            let factor = &m[i][c] * &inv;
            for j in c..cols {
                let delta = &factor * &m[r][j];
                m[i][j] -= delta;
            }
        }
        r += 1;
    }
    r
}

/// Reduced Betti numbers `dim H̃_k(X; Q)` for `k >= -1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyProfile {
    /// Entries run from `-1` up to the dimension of the complex; empty for
    /// the void complex.
    pub betti: BTreeMap<isize, usize>,
}

impl HomologyProfile {
    pub fn betti(&self, k: isize) -> usize {
        self.betti.get(&k).copied().unwrap_or(0)
    }

    /// Dimensions with non-zero reduced homology, ascending.
    pub fn nonzero_dims(&self) -> impl Iterator<Item = isize> + '_ {
        self.betti.iter().filter(|(_, &b)| b != 0).map(|(&k, _)| k)
    }

    /// `H̃_i = 0` for every `i >= d`.
    pub fn vanishes_from(&self, d: isize) -> bool {
        self.nonzero_dims().all(|k| k < d)
    }

    pub fn is_acyclic(&self) -> bool {
        self.nonzero_dims().next().is_none()
    }

    /// `Σ (-1)^k b_k`.
    pub fn euler_characteristic(&self) -> i64 {
        self.betti
            .iter()
            .map(|(&k, &b)| if k.rem_euclid(2) == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

/// Faces grouped by size: `by_size[s]` lists the faces with `s` vertices.
fn faces_by_size(x: &SimplicialComplex, face_budget: usize) -> Result<Vec<Vec<VertexSet>>> {
    let faces = x.enumerate_faces(face_budget)?;
    let top = faces.iter().map(|f| f.len()).max().unwrap_or(0);
    let mut by_size = vec![Vec::new(); top + 1];
    for f in faces {
        by_size[f.len()].push(f);
    }
    Ok(by_size)
}

/// Matrix of the boundary map from faces of size `s` to faces of size
/// `s - 1`, with the `i`-th vertex (ascending) removed carrying sign `(-1)^i`.
/// Rows index the smaller faces.
fn boundary_matrix(lower: &[VertexSet], upper: &[VertexSet]) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; upper.len()]; lower.len()];
    for (j, &f) in upper.iter().enumerate() {
        for (i, v) in f.iter().enumerate() {
            let row = lower
                .binary_search(&f.without(v))
                .expect("boundary faces are faces");
            m[row][j] = if i % 2 == 0 { 1 } else { -1 };
        }
    }
    m
}

/// Reduced rational homology of `x`. All groups vanish for the void
/// complex; `{∅}` has `H̃_{-1} = Q`.
pub fn reduced_betti(x: &SimplicialComplex, face_budget: usize) -> Result<HomologyProfile> {
    if x.is_void() {
        return Ok(HomologyProfile::default());
    }
    let by_size = faces_by_size(x, face_budget)?;
    // ranks[s] = rank of the boundary out of size-s faces; the augmentation
    // is s = 1, and nothing leaves the empty face.
    let mut ranks = vec![0usize; by_size.len() + 1];
    for s in 1..by_size.len() {
        ranks[s] = rank(&boundary_matrix(&by_size[s - 1], &by_size[s]));
    }
    let betti = (0..by_size.len())
        .map(|s| {
            let b = by_size[s].len() - ranks[s] - ranks[s + 1];
            (s as isize - 1, b)
        })
        .collect();
    Ok(HomologyProfile { betti })
}

/// Topological connectivity `η`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Eta {
    Finite(usize),
    /// Every reduced homology group vanishes.
    Unbounded,
}

impl Eta {
    pub fn at_least(self, value: usize) -> bool {
        match self {
            Eta::Finite(e) => e >= value,
            Eta::Unbounded => true,
        }
    }
}

/// Largest `k` with `H̃_j(X) = 0` for `-1 <= j <= k - 2`, i.e. one more than
/// the first dimension carrying homology. The void complex is reported as
/// unbounded; callers that care should test [`SimplicialComplex::is_void`].
pub fn eta_of(profile: &HomologyProfile) -> Eta {
    match profile.nonzero_dims().next() {
        Some(j) => Eta::Finite((j + 1) as usize),
        None => Eta::Unbounded,
    }
}

pub fn eta(x: &SimplicialComplex, face_budget: usize) -> Result<Eta> {
    Ok(eta_of(&reduced_betti(x, face_budget)?))
}

/// Least `d >= 0` such that every induced subcomplex has vanishing reduced
/// homology in all dimensions `>= d`.
pub fn leray_number(x: &SimplicialComplex, face_budget: usize) -> Result<usize> {
    let support = x.vertex_support();
    if support.len() > LERAY_MAX_N {
        return Err(Error::GuardExceeded {
            what: "leray vertex support",
            limit: LERAY_MAX_N,
            reached: support.len(),
        });
    }
    let mut d = 0;
    for w in support.subsets() {
        let profile = reduced_betti(&x.induced_subcomplex(w), face_budget)?;
        if let Some(top) = profile.nonzero_dims().filter(|&k| k >= 0).last() {
            d = d.max(top as usize + 1);
        }
    }
    Ok(d)
}

/// Outcome of a theorem check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status", content = "reason")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped(String),
}

impl CheckStatus {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        }
    }

    pub fn is_pass(&self) -> bool {
        *self == CheckStatus::Pass
    }

    pub fn is_fail(&self) -> bool {
        *self == CheckStatus::Fail
    }
}

/// `η(I(G)) >= iγ(G)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectivityReport {
    pub eta: Eta,
    pub igamma: DominationValue,
    pub status: CheckStatus,
}

pub fn check_independence_connectivity(g: &Graph, face_budget: usize) -> Result<ConnectivityReport> {
    let ig = igamma(g).value;
    let eta = eta(&independence_complex(g), face_budget)?;
    let status = match ig {
        DominationValue::Infinite => {
            CheckStatus::Skipped("isolated vertex: independent domination number is infinite".into())
        }
        DominationValue::Finite(v) => CheckStatus::from_bool(eta.at_least(v)),
    };
    Ok(ConnectivityReport {
        eta,
        igamma: ig,
        status,
    })
}

/// Vanishing of `H̃_i(NC(G))` for `i >= n - iγ(G) - 1`, optionally on every
/// induced subcomplex `NC(G)[W]` as well.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingReport {
    pub bound: usize,
    pub profile: HomologyProfile,
    /// First induced subset `W` violating the bound, if any.
    pub violation: Option<VertexSet>,
    pub induced_checked: usize,
    pub status: CheckStatus,
}

pub fn check_noncover_vanishing(g: &Graph, induced: bool, face_budget: usize) -> Result<VanishingReport> {
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let bound = crate::mes::collapsibility_bound(g)?;
    let nc = noncover_complex(g);
    let profile = reduced_betti(&nc, face_budget)?;
    let mut violation = (!profile.vanishes_from(bound as isize)).then_some(g.vertices());
    let mut induced_checked = 0;
    if induced && violation.is_none() {
        for w in g.vertices().subsets() {
            induced_checked += 1;
            let sub = reduced_betti(&nc.induced_subcomplex(w), face_budget)?;
            if !sub.vanishes_from(bound as isize) {
                violation = Some(w);
                break;
            }
        }
    }
    Ok(VanishingReport {
        bound,
        profile,
        status: CheckStatus::from_bool(violation.is_none()),
        violation,
        induced_checked,
    })
}

/// `H̃_i(D(X)) ≅ H̃_{n-i-3}(X)` for `-1 <= i <= n - 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityReport {
    pub complex: HomologyProfile,
    pub dual: HomologyProfile,
    /// Dimensions `i` (of the dual) where the ranks disagree.
    pub mismatches: Vec<isize>,
    pub status: CheckStatus,
}

pub fn check_alexander_duality(x: &SimplicialComplex, face_budget: usize) -> Result<DualityReport> {
    let n = x.ground_n() as isize;
    if x.contains_face(x.ground()) {
        return Err(Error::Precondition(
            "the full ground set is a face; duality needs it to be a non-face".into(),
        ));
    }
    let dual = alexander_dual(x)?;
    let px = reduced_betti(x, face_budget)?;
    let pd = reduced_betti(&dual, face_budget)?;
    let mismatches: Vec<isize> = (-1..=n - 2)
        .filter(|&i| pd.betti(i) != px.betti(n - i - 3))
        .collect();
    Ok(DualityReport {
        status: CheckStatus::from_bool(mismatches.is_empty()),
        complex: px,
        dual: pd,
        mismatches,
    })
}
