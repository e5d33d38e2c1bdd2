//! Generic 3-dimensional rigidity by randomized rank computation.
//!
//! Vertices are placed at random points of `F_p^3` with `p = 2^61 - 1` and the
//! rank of the rigidity matrix is computed exactly over that field. A rank
//! over `F_p` never exceeds the generic rank over the rationals, so a full
//! rank certificate is exact; a deficient rank is wrong with probability at
//! most `E/p` per trial.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::graph::Graph;
use crate::mesh::VertexId;

pub const MODULUS: u64 = (1 << 61) - 1;
pub const DEFAULT_TRIALS: usize = 3;
pub const DEFAULT_SEED: u64 = 0x5eed;

/// Arithmetic modulo the Mersenne prime `2^61 - 1`.
mod field {
    use super::MODULUS;

    pub fn reduce(x: u128) -> u64 {
        let lo = (x as u64) & MODULUS;
        let hi = (x >> 61) as u64;
        let s = lo + (hi & MODULUS) + (hi >> 61);
        let s = (s & MODULUS) + (s >> 61);
        if s >= MODULUS {
            s - MODULUS
        } else {
            s
        }
    }

    pub fn sub(a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + MODULUS - b
        }
    }

    pub fn mul(a: u64, b: u64) -> u64 {
        reduce(a as u128 * b as u128)
    }

    pub fn pow(mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, a);
            }
            a = mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(a: u64) -> u64 {
        pow(a, MODULUS - 2)
    }
}

/// Rank of a full-dimensional framework on `n` vertices in 3-space.
pub fn max_rank(n: usize) -> usize {
    if n >= 3 {
        3 * n - 6
    } else {
        n * n.saturating_sub(1) / 2
    }
}

/// Rigidity matrix over `F_p` for the placement `points` (indexed like
/// `g`'s vertices): one row per edge, three columns per vertex.
pub fn rigidity_matrix(g: &Graph, points: &[[u64; 3]]) -> Vec<Vec<u64>> {
    let n = g.vertex_count();
    g.edges()
        .iter()
        .map(|&(i, j)| {
            let mut row = vec![0u64; 3 * n];
            for k in 0..3 {
                let diff = field::sub(points[i][k], points[j][k]);
                row[3 * i + k] = diff;
                row[3 * j + k] = field::sub(0, diff);
            }
            row
        })
        .collect()
}

/// Rank by elimination, plus the index of the first row dependent on the
/// rows before it.
fn rank_with_dependency(mut rows: Vec<Vec<u64>>) -> (usize, Option<usize>) {
    let cols = rows.first().map_or(0, Vec::len);
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut dependent = None;
    for (r, row) in rows.iter_mut().enumerate() {
        for (pivot, b) in &basis {
            let factor = row[*pivot];
            if factor != 0 {
                for c in *pivot..cols {
                    if b[c] != 0 {
                        row[c] = field::sub(row[c], field::mul(factor, b[c]));
                    }
                }
            }
        }
        match row.iter().position(|&x| x != 0) {
            Some(p) => {
                let scale = field::inv(row[p]);
                let normalized: Vec<u64> = row.iter().map(|&x| field::mul(x, scale)).collect();
                basis.push((p, normalized));
            }
            None => {
                if dependent.is_none() {
                    dependent = Some(r);
                }
            }
        }
    }
    (basis.len(), dependent)
}

pub fn rank_mod_p(rows: Vec<Vec<u64>>) -> usize {
    rank_with_dependency(rows).0
}

pub fn random_points(n: usize, rng: &mut impl Rng) -> Vec<[u64; 3]> {
    (0..n)
        .map(|_| {
            [
                rng.random_range(0..MODULUS),
                rng.random_range(0..MODULUS),
                rng.random_range(0..MODULUS),
            ]
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub vertices: usize,
    pub edges: usize,
    pub rank: usize,
    /// `3|V| - 6 - rank` (for at least three vertices)
    pub dof: usize,
    pub is_3rigid: bool,
    pub is_min_3rigid: bool,
    /// `min(|E|, 3|V| - 6)`
    pub upper_bound: usize,
    pub trials: usize,
    pub seed: u64,
    /// first edge (in id order) dependent on the earlier ones, from the best
    /// trial
    pub dependent_edge: Option<(VertexId, VertexId)>,
}

/// Generic rank estimate: the best of `trials` random placements, stopping
/// early once the upper bound is reached.
pub fn generic_rank(g: &Graph, seed: u64, trials: usize) -> RankReport {
    let n = g.vertex_count();
    let upper = g.edge_count().min(max_rank(n));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(usize, Option<usize>)> = None;
    let mut used = 0;
    for _ in 0..trials.max(1) {
        used += 1;
        let points = random_points(n, &mut rng);
        let result = rank_with_dependency(rigidity_matrix(g, &points));
        if best.is_none_or(|b| result.0 > b.0) {
            best = Some(result);
        }
        if result.0 == upper {
            break;
        }
    }
    let (rank, dep) = best.expect("at least one trial");
    let full = max_rank(n);
    RankReport {
        vertices: n,
        edges: g.edge_count(),
        rank,
        dof: full - rank,
        is_3rigid: rank == full,
        is_min_3rigid: rank == full && g.edge_count() == full,
        upper_bound: upper,
        trials: used,
        seed,
        dependent_edge: dep.map(|r| {
            let (i, j) = g.edges()[r];
            (g.id(i), g.id(j))
        }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum RigidityVerdict {
    MinimallyRigid { rank: usize },
    /// rank below `3|V| - 6`, whether or not some edge is also redundant
    Flexible { rank: usize, missing: usize },
    /// full rank, but some edge is implied by the others
    Redundant { rank: usize, edge: (VertexId, VertexId) },
}

impl RigidityVerdict {
    pub fn is_minimally_rigid(&self) -> bool {
        matches!(self, RigidityVerdict::MinimallyRigid { .. })
    }
}

/// Minimal generic 3-rigidity: full rank `3|V| - 6` with exactly that many
/// edges.
pub fn is_min_3rigid(g: &Graph, seed: u64, trials: usize) -> RigidityVerdict {
    let report = generic_rank(g, seed, trials);
    let full = max_rank(g.vertex_count());
    if report.rank < full {
        return RigidityVerdict::Flexible {
            rank: report.rank,
            missing: full - report.rank,
        };
    }
    if report.rank < g.edge_count() {
        let edge = report.dependent_edge.expect("dependent row exists");
        return RigidityVerdict::Redundant {
            rank: report.rank,
            edge,
        };
    }
    RigidityVerdict::MinimallyRigid { rank: report.rank }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    fn rational_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
        let cols = rows.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && !row[c].is_zero() {
                    let f = row[c].clone() / pivot_row[c].clone();
                    for (x, p) in row[c..cols].iter_mut().zip(&pivot_row[c..cols]) {
                        *x -= f.clone() * p.clone();
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Exact rank over the rationals at a small integer placement.
    fn exact_rank(g: &Graph, seed: u64) -> usize {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts: Vec<[i64; 3]> = (0..g.vertex_count())
            .map(|_| [rng.random_range(-50..50), rng.random_range(-50..50), rng.random_range(-50..50)])
            .collect();
        let n = g.vertex_count();
        let rows = g
            .edges()
            .iter()
            .map(|&(i, j)| {
                let mut row = vec![BigRational::zero(); 3 * n];
                for k in 0..3 {
                    let d = BigRational::from_integer(BigInt::from(pts[i][k] - pts[j][k]));
                    row[3 * j + k] = -d.clone();
                    row[3 * i + k] = d;
                }
                row
            })
            .collect();
        rational_rank(rows)
    }

    #[test]
    fn field_arithmetic() {
        assert_eq!(field::mul(MODULUS - 1, MODULUS - 1), 1);
        assert_eq!(field::sub(0, 1), MODULUS - 1);
        for a in [2u64, 12345, MODULUS - 7] {
            assert_eq!(field::mul(a, field::inv(a)), 1);
        }
        assert_eq!(field::reduce(u128::from(MODULUS) * 3 + 5), 5);
        assert!(BigRational::one() > BigRational::zero());
    }

    #[test]
    fn complete_graphs() {
        // K4 is minimally rigid, K5 has one redundant edge
        assert!(is_min_3rigid(&Graph::complete(4), 1, 3).is_minimally_rigid());
        let k5 = is_min_3rigid(&Graph::complete(5), 1, 3);
        assert!(matches!(k5, RigidityVerdict::Redundant { rank: 9, .. }));
        let k5e = Graph::complete(5).without_edge(0, 1);
        assert!(is_min_3rigid(&k5e, 1, 3).is_minimally_rigid());
    }

    #[test]
    fn flexible_path() {
        let g = Graph::new(0..4, [(0, 1), (1, 2), (2, 3)]);
        assert_eq!(
            is_min_3rigid(&g, 7, 3),
            RigidityVerdict::Flexible { rank: 3, missing: 3 }
        );
    }

    #[test]
    fn agrees_with_rational_elimination() {
        let graphs = [
            Graph::complete(5),
            Graph::complete(6),
            Graph::complete(6).without_edge(0, 1).without_edge(2, 3).without_edge(4, 5),
            Graph::complete(7),
            Graph::new(0..6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]),
        ];
        for (k, g) in graphs.iter().enumerate() {
            let exact = (0..3).map(|s| exact_rank(g, 100 + s)).max().unwrap();
            assert_eq!(generic_rank(g, k as u64, 3).rank, exact, "graph {k}");
        }
    }

    #[test]
    fn double_banana_has_one_flex() {
        let r = generic_rank(&crate::seeds::double_banana(), 3, 3);
        assert_eq!((r.vertices, r.edges, r.rank, r.dof), (8, 18, 17, 1));
        assert!(!r.is_3rigid && !r.is_min_3rigid);
        let oct = generic_rank(&crate::seeds::octahedron().graph(), 3, 3);
        assert!(oct.is_min_3rigid && oct.dof == 0);
    }

    #[test]
    fn collinear_triangle_drops_rank() {
        let g = Graph::complete(3);
        assert_eq!(rank_mod_p(rigidity_matrix(&g, &[[0, 0, 0], [1, 1, 1], [2, 2, 2]])), 2);
        assert_eq!(rank_mod_p(rigidity_matrix(&g, &[[0, 0, 0], [1, 0, 0], [0, 1, 0]])), 3);
    }

    #[test]
    fn deterministic_for_a_seed() {
        let g = Graph::complete(6);
        assert_eq!(generic_rank(&g, 42, 3), generic_rank(&g, 42, 3));
    }
}
