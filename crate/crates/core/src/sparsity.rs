//! (3,6)-sparsity and tightness of finite graphs.
//!
//! The deficiency of a graph is the maximum, over vertex sets `W` with
//! `|W| >= 3`, of `|E(G[W])| - (3|W| - 6)`. A graph is violating when the
//! deficiency is positive and tight when it is zero and `3|V| - |E| = 6`.
//!
//! Two independent deciders are provided: [`check_exhaustive`] enumerates
//! vertex subsets, [`check_flow`] anchors on connected vertex triples and
//! solves one max-closure problem per anchor.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::graph::Graph;
use crate::mesh::VertexId;

pub const DEFAULT_EXHAUSTIVE_BOUND: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Tight,
    SparseNotTight,
    Violating,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SparsityVerdict {
    pub status: Status,
    /// `None` for graphs with fewer than three vertices.
    pub deficiency: Option<i64>,
    /// a vertex set attaining the deficiency (sorted ids)
    pub witness: Vec<VertexId>,
    pub maxwell: i64,
}

impl SparsityVerdict {
    fn from_parts(deficiency: Option<i64>, witness: Vec<VertexId>, maxwell: i64) -> Self {
        let status = match deficiency {
            Some(d) if d > 0 => Status::Violating,
            Some(0) if maxwell == 6 => Status::Tight,
            _ => Status::SparseNotTight,
        };
        Self {
            status,
            deficiency,
            witness,
            maxwell,
        }
    }

    pub fn is_tight(&self) -> bool {
        self.status == Status::Tight
    }

    pub fn is_sparse(&self) -> bool {
        self.status != Status::Violating
    }
}

#[derive(Debug, thiserror::Error)]
#[error("{vertices} vertices exceed the exhaustive bound {bound}; use the flow method")]
pub struct TooLarge {
    pub vertices: usize,
    pub bound: usize,
}

pub fn maxwell_count(g: &Graph) -> i64 {
    g.maxwell_count()
}

/// Order on vertex sets given as bit masks: lexicographic on sorted lists.
fn mask_lex_cmp(a: u32, b: u32) -> Ordering {
    if a == b {
        return Ordering::Equal;
    }
    let low = (a ^ b).trailing_zeros();
    let above = !((1u64 << (low + 1)) - 1) as u32;
    if a & (1 << low) != 0 {
        if b & above != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    } else if a & above != 0 {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

/// Decide sparsity by enumerating every vertex subset of size at least 3.
pub fn check_exhaustive(g: &Graph) -> Result<SparsityVerdict, TooLarge> {
    check_exhaustive_with_bound(g, DEFAULT_EXHAUSTIVE_BOUND)
}

pub fn check_exhaustive_with_bound(g: &Graph, bound: usize) -> Result<SparsityVerdict, TooLarge> {
    let n = g.vertex_count();
    if n > bound || n > 31 {
        return Err(TooLarge { vertices: n, bound });
    }
    if n < 3 {
        return Ok(SparsityVerdict::from_parts(None, Vec::new(), g.maxwell_count()));
    }
    let mut adj = vec![0u32; n];
    for &(i, j) in g.edges() {
        adj[i] |= 1 << j;
        adj[j] |= 1 << i;
    }
    let mut best: Option<(i64, u32)> = None;
    for mask in 1u32..(1u32 << n) {
        let size = mask.count_ones() as i64;
        if size < 3 {
            continue;
        }
        let mut twice_edges = 0i64;
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            twice_edges += (adj[v] & mask).count_ones() as i64;
        }
        let value = twice_edges / 2 - 3 * size + 6;
        best = match best {
            None => Some((value, mask)),
            Some((bv, bm)) => {
                if value > bv || (value == bv && mask_lex_cmp(mask, bm) == Ordering::Less) {
                    Some((value, mask))
                } else {
                    Some((bv, bm))
                }
            }
        };
    }
    let (value, mask) = best.expect("n >= 3");
    let witness = (0..n).filter(|&i| mask & (1 << i) != 0).map(|i| g.id(i)).collect();
    Ok(SparsityVerdict::from_parts(Some(value), witness, g.maxwell_count()))
}

const INF: i64 = i64::MAX / 4;

/// Dinic max-flow on a fixed arc set whose capacities can be reset.
#[derive(Clone)]
struct Dinic {
    head: Vec<usize>,
    next: Vec<usize>,
    to: Vec<usize>,
    cap: Vec<i64>,
    base: Vec<i64>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

const NIL: usize = usize::MAX;

impl Dinic {
    fn new(n: usize) -> Self {
        Self {
            head: vec![NIL; n],
            next: Vec::new(),
            to: Vec::new(),
            cap: Vec::new(),
            base: Vec::new(),
            level: vec![0; n],
            iter: vec![0; n],
        }
    }

    fn add_arc(&mut self, a: usize, b: usize, c: i64) -> usize {
        let id = self.to.len();
        for (x, y, cc) in [(a, b, c), (b, a, 0)] {
            self.to.push(y);
            self.cap.push(cc);
            self.base.push(cc);
            self.next.push(self.head[x]);
            self.head[x] = self.to.len() - 1;
        }
        id
    }

    fn reset(&mut self) {
        self.cap.copy_from_slice(&self.base);
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        let mut queue = std::collections::VecDeque::from([s]);
        self.level[s] = 0;
        while let Some(x) = queue.pop_front() {
            let mut a = self.head[x];
            while a != NIL {
                let y = self.to[a];
                if self.cap[a] > 0 && self.level[y] < 0 {
                    self.level[y] = self.level[x] + 1;
                    queue.push_back(y);
                }
                a = self.next[a];
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, x: usize, t: usize, f: i64) -> i64 {
        if x == t {
            return f;
        }
        while self.iter[x] != NIL {
            let a = self.iter[x];
            let y = self.to[a];
            if self.cap[a] > 0 && self.level[y] == self.level[x] + 1 {
                let pushed = self.dfs(y, t, f.min(self.cap[a]));
                if pushed > 0 {
                    self.cap[a] -= pushed;
                    self.cap[a ^ 1] += pushed;
                    return pushed;
                }
            }
            self.iter[x] = self.next[a];
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        while self.bfs(s, t) {
            self.iter.copy_from_slice(&self.head);
            loop {
                let f = self.dfs(s, t, INF);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
        total
    }

    /// Nodes reachable from `s` in the residual network.
    fn source_side(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            let mut a = self.head[x];
            while a != NIL {
                let y = self.to[a];
                if self.cap[a] > 0 && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
                a = self.next[a];
            }
        }
        seen
    }
}

/// Closure network: source -> edge (1), edge -> endpoints (inf),
/// vertex -> sink (3). Anchored vertices get sink capacity 0.
struct AnchorNetwork {
    flow: Dinic,
    sink_arcs: Vec<usize>,
    source: usize,
    sink: usize,
    n: usize,
    m: usize,
}

impl AnchorNetwork {
    fn new(g: &Graph) -> Self {
        let n = g.vertex_count();
        let m = g.edge_count();
        let source = n + m;
        let sink = source + 1;
        let mut flow = Dinic::new(n + m + 2);
        for (k, &(i, j)) in g.edges().iter().enumerate() {
            flow.add_arc(source, n + k, 1);
            flow.add_arc(n + k, i, INF);
            flow.add_arc(n + k, j, INF);
        }
        let sink_arcs = (0..n).map(|v| flow.add_arc(v, sink, 3)).collect();
        Self {
            flow,
            sink_arcs,
            source,
            sink,
            n,
            m,
        }
    }

    /// `max_{W ⊇ A} |E(W)| - 3|W \ A|` and the minimal maximiser.
    fn solve(&mut self, anchors: &[usize]) -> (i64, Vec<usize>) {
        self.flow.reset();
        for &a in anchors {
            let arc = self.sink_arcs[a];
            self.flow.cap[arc] = 0;
        }
        let cut = self.flow.max_flow(self.source, self.sink);
        let side = self.flow.source_side(self.source);
        let mut w: Vec<usize> = (0..self.n).filter(|&v| side[v]).collect();
        for &a in anchors {
            if !side[a] {
                w.push(a);
            }
        }
        w.sort_unstable();
        (self.m as i64 - cut, w)
    }
}

/// Decide sparsity with one max-closure computation per anchor triple.
///
/// Anchors are the paths `a-b-c` of length two: whenever the graph has such a
/// path, some maximising `W` contains one (any `W` inducing no such path has
/// value at most `-3/2·|W| + 6 < -1`, while a path alone scores `-1`).
pub fn check_flow(g: &Graph) -> SparsityVerdict {
    let n = g.vertex_count();
    let maxwell = g.maxwell_count();
    if n < 3 {
        return SparsityVerdict::from_parts(None, Vec::new(), maxwell);
    }
    let adj = g.adjacency();
    let mut anchors: Vec<[usize; 3]> = Vec::new();
    for (b, nb) in adj.iter().enumerate() {
        for (x, &a) in nb.iter().enumerate() {
            for &c in &nb[x + 1..] {
                let mut t = [a, b, c];
                t.sort_unstable();
                anchors.push(t);
            }
        }
    }
    anchors.sort_unstable();
    anchors.dedup();
    if anchors.is_empty() {
        // a matching plus isolated vertices: the best W is any 3 vertices
        // containing an edge if there is one
        let w: Vec<usize> = match g.edges().first() {
            Some(&(i, j)) => {
                let third = (0..n).find(|&v| v != i && v != j).expect("n >= 3");
                let mut w = vec![i, j, third];
                w.sort_unstable();
                w
            }
            None => vec![0, 1, 2],
        };
        let edges = g.edges().len().min(1) as i64;
        let witness = w.into_iter().map(|i| g.id(i)).collect();
        return SparsityVerdict::from_parts(Some(edges - 3), witness, maxwell);
    }
    let template = AnchorNetwork::new(g);
    let results: Vec<(i64, Vec<usize>)> = anchors
        .par_chunks(64)
        .map_init(
            || AnchorNetwork {
                flow: template.flow.clone(),
                sink_arcs: template.sink_arcs.clone(),
                source: template.source,
                sink: template.sink,
                n: template.n,
                m: template.m,
            },
            |net, chunk| {
                let mut best: Option<(i64, Vec<usize>)> = None;
                for t in chunk {
                    let (value, w) = net.solve(t);
                    let cand = (value - 3, w);
                    best = Some(match best {
                        None => cand,
                        Some(b) => better(b, cand),
                    });
                }
                best.expect("non-empty chunk")
            },
        )
        .collect();
    let (deficiency, w) = results.into_iter().reduce(better).expect("anchors");
    let witness = w.into_iter().map(|i| g.id(i)).collect();
    SparsityVerdict::from_parts(Some(deficiency), witness, maxwell)
}

fn better(a: (i64, Vec<usize>), b: (i64, Vec<usize>)) -> (i64, Vec<usize>) {
    match a.0.cmp(&b.0) {
        Ordering::Greater => a,
        Ordering::Less => b,
        Ordering::Equal => {
            if b.1 < a.1 {
                b
            } else {
                a
            }
        }
    }
}

/// Exhaustive when within `bound` vertices, flow otherwise.
pub fn check(g: &Graph) -> SparsityVerdict {
    check_exhaustive(g).unwrap_or_else(|_| check_flow(g))
}

/// Deficiency of a specific vertex set, `|E(G[W])| - 3|W| + 6`.
pub fn set_value(g: &Graph, w: &BTreeSet<VertexId>) -> i64 {
    g.induced_edge_count(w) as i64 - 3 * w.len() as i64 + 6
}
