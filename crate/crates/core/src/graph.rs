//! Simple undirected graphs and the zero-divisor graph constructions over Z_n.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use crate::error::{domain, Error, Result};
use crate::number_theory::{
    class_graph_kind, divisor_class, factorize, gcd, is_prime, proper_divisors, ClassKind, DivisorClass,
};

/// A labeled simple graph with a dense symmetric adjacency relation.
///
/// Vertex `i` carries `labels[i]`; labels are unique. For ring constructions
/// the label is the ring element, for compressed graphs it is the smallest
/// representative of the class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<u64>,
    adj: Vec<bool>,
}

impl Graph {
    /// Edgeless graph on the given labels.
    pub fn null(labels: Vec<u64>) -> Result<Self> {
        let mut sorted = labels.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(domain("graph labels must be unique"));
        }
        let n = labels.len();
        Ok(Graph {
            labels,
            adj: vec![false; n * n],
        })
    }

    pub fn complete(labels: Vec<u64>) -> Result<Self> {
        let mut g = Self::null(labels)?;
        let n = g.order();
        for i in 0..n {
            for j in i + 1..n {
                g.add_edge(i, j);
            }
        }
        Ok(g)
    }

    /// `K_m` on labels `0..m`.
    pub fn complete_on(m: usize) -> Self {
        Self::complete((0..m as u64).collect()).expect("labels are distinct")
    }

    /// Null graph on labels `0..m`.
    pub fn null_on(m: usize) -> Self {
        Self::null((0..m as u64).collect()).expect("labels are distinct")
    }

    pub fn from_edges(labels: Vec<u64>, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::null(labels)?;
        for &(i, j) in edges {
            if i == j || i >= g.order() || j >= g.order() {
                return Err(domain(format!("invalid edge ({i}, {j})")));
            }
            g.add_edge(i, j);
        }
        Ok(g)
    }

    pub(crate) fn add_edge(&mut self, i: usize, j: usize) {
        let n = self.order();
        self.adj[i * n + j] = true;
        self.adj[j * n + i] = true;
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn index_of(&self, label: u64) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.order() + j]
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let n = self.order();
        (0..n).filter(move |&j| self.adj[i * n + j])
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors(i).count()
    }

    /// Edges as index pairs `(i, j)` with `i < j`, lexicographic.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.order();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Edges as label pairs with the smaller label first, sorted.
    pub fn label_edges(&self) -> Vec<(u64, u64)> {
        let mut out: Vec<_> = self
            .edges()
            .into_iter()
            .map(|(i, j)| {
                let (a, b) = (self.labels[i], self.labels[j]);
                (a.min(b), a.max(b))
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().filter(|&&b| b).count() / 2
    }

    /// Same graph with vertices reordered by ascending label.
    pub fn canonical(&self) -> Graph {
        let mut order: Vec<usize> = (0..self.order()).collect();
        order.sort_by_key(|&i| self.labels[i]);
        self.permuted(&order)
    }

    /// Vertex `k` of the result is vertex `order[k]` of `self`.
    pub fn permuted(&self, order: &[usize]) -> Graph {
        let n = order.len();
        let mut adj = vec![false; n * n];
        for (a, &i) in order.iter().enumerate() {
            for (b, &j) in order.iter().enumerate() {
                adj[a * n + b] = self.has_edge(i, j);
            }
        }
        Graph {
            labels: order.iter().map(|&i| self.labels[i]).collect(),
            adj,
        }
    }

    /// Adjacency-list text, one line per vertex: `label: neighbor,neighbor,...`.
    pub fn to_adjacency_text(&self) -> String {
        let mut out = String::new();
        for i in 0..self.order() {
            let nbrs: Vec<String> = self.neighbors(i).map(|j| self.labels[j].to_string()).collect();
            if nbrs.is_empty() {
                let _ = writeln!(out, "{}:", self.labels[i]);
            } else {
                let _ = writeln!(out, "{}: {}", self.labels[i], nbrs.join(","));
            }
        }
        out
    }

    pub fn from_adjacency_text(text: &str) -> Result<Graph> {
        let mut rows = Vec::new();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let (head, tail) = line
                .split_once(':')
                .ok_or_else(|| domain(format!("missing ':' in line {line:?}")))?;
            let label: u64 = head
                .trim()
                .parse()
                .map_err(|_| domain(format!("bad label in line {line:?}")))?;
            let nbrs = tail
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<u64>().map_err(|_| domain(format!("bad neighbor {s:?}"))))
                .collect::<Result<Vec<_>>>()?;
            rows.push((label, nbrs));
        }
        let mut g = Graph::null(rows.iter().map(|r| r.0).collect())?;
        let index: HashMap<u64, usize> = g.labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        for (i, (_, nbrs)) in rows.iter().enumerate() {
            for l in nbrs {
                let j = *index
                    .get(l)
                    .ok_or_else(|| domain(format!("unknown neighbor label {l}")))?;
                if i == j {
                    return Err(domain("self-loop in adjacency text"));
                }
                g.add_edge(i, j);
            }
        }
        for (i, (_, nbrs)) in rows.iter().enumerate() {
            if g.degree(i) != nbrs.len() {
                return Err(domain(format!(
                    "adjacency of {} is not symmetric or lists duplicates",
                    rows[i].0
                )));
            }
        }
        Ok(g)
    }
}

fn zero_divisor_labels(n: u64) -> Result<Vec<u64>> {
    if n < 4 || is_prime(n) {
        return Err(Error::EmptyGraph { n });
    }
    Ok((1..n).filter(|&k| gcd(k, n) > 1).collect())
}

fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(n)) as u64
}

/// Zero-divisor graph Γ(Z_n): nonzero zero divisors, `u ~ v` iff `uv ≡ 0 (mod n)`.
pub fn build_zdg(n: u64) -> Result<Graph> {
    let labels = zero_divisor_labels(n)?;
    let mut g = Graph::null(labels)?;
    let m = g.order();
    for i in 0..m {
        for j in i + 1..m {
            if mul_mod(g.labels[i], g.labels[j], n) == 0 {
                g.add_edge(i, j);
            }
        }
    }
    Ok(g)
}

/// Extended zero-divisor graph Γ_E(Z_n): `u ~ v` iff `u^a v^b ≡ 0` for some `a, b >= 1`.
///
/// Decided by prime coverage: every prime dividing n must divide `u*v`, since
/// large enough powers then supply any required prime exponent.
pub fn build_extended_zdg(n: u64) -> Result<Graph> {
    let labels = zero_divisor_labels(n)?;
    let primes: Vec<u64> = factorize(n)?.factors().iter().map(|&(p, _)| p).collect();
    let mut g = Graph::null(labels)?;
    let m = g.order();
    for i in 0..m {
        for j in i + 1..m {
            let (u, v) = (g.labels[i], g.labels[j]);
            if primes.iter().all(|&p| u % p == 0 || v % p == 0) {
                g.add_edge(i, j);
            }
        }
    }
    Ok(g)
}

/// Compressed zero-divisor graph: one vertex per annihilator class.
///
/// Classes come from grouping explicit annihilator sets; each vertex is
/// labeled by its smallest member. Two classes are adjacent iff their
/// representatives multiply to zero; a class annihilating itself gets no loop.
pub fn build_compressed_zdg(n: u64) -> Result<Graph> {
    let zds = zero_divisor_labels(n)?;
    let mut classes: BTreeMap<Vec<u64>, Vec<u64>> = BTreeMap::new();
    for &u in &zds {
        let ann: Vec<u64> = (0..n).filter(|&y| mul_mod(u, y, n) == 0).collect();
        classes.entry(ann).or_default().push(u);
    }
    let mut reps: Vec<u64> = classes.values().map(|c| c[0]).collect();
    reps.sort_unstable();
    let mut g = Graph::null(reps)?;
    let m = g.order();
    for i in 0..m {
        for j in i + 1..m {
            if mul_mod(g.labels[i], g.labels[j], n) == 0 {
                g.add_edge(i, j);
            }
        }
    }
    Ok(g)
}

/// Γ(Z_p × Z_p). Vertex `(a, 0)` is labeled `a`, vertex `(0, b)` is labeled `p + b`.
pub fn build_zdg_zp_x_zp(p: u64) -> Result<Graph> {
    if !is_prime(p) {
        return Err(domain(format!("{p} is not prime")));
    }
    let labels: Vec<u64> = (1..p).chain((1..p).map(|b| p + b)).collect();
    let mut g = Graph::null(labels)?;
    let m = (p - 1) as usize;
    // (a,0)(a',0) = (aa',0) is never zero for a field; (a,0)(0,b) always is.
    for i in 0..m {
        for j in m..2 * m {
            g.add_edge(i, j);
        }
    }
    Ok(g)
}

pub fn complement(g: &Graph) -> Graph {
    let n = g.order();
    let mut adj = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            adj[i * n + j] = i != j && !g.has_edge(i, j);
        }
    }
    Graph {
        labels: g.labels.clone(),
        adj,
    }
}

/// Skeleton Υ_n on the proper divisors of n, `d_i ~ d_j` iff `n | d_i d_j`.
pub fn upsilon(n: u64) -> Result<Graph> {
    if n < 4 || is_prime(n) {
        return Err(Error::EmptyGraph { n });
    }
    let divs = proper_divisors(n);
    let mut g = Graph::null(divs)?;
    let m = g.order();
    for i in 0..m {
        for j in i + 1..m {
            if mul_mod(g.labels[i], g.labels[j], n) == 0 {
                g.add_edge(i, j);
            }
        }
    }
    Ok(g)
}

/// `skeleton[parts[0], ..., parts[k-1]]`: disjoint union of the parts plus all
/// edges between part i and part j whenever `i ~ j` in the skeleton.
///
/// The result keeps the parts' labels, in part order, so they must be
/// globally unique.
pub fn generalized_join(skeleton: &Graph, parts: &[Graph]) -> Result<Graph> {
    if parts.len() != skeleton.order() {
        return Err(domain(format!(
            "skeleton has {} vertices but {} parts were given",
            skeleton.order(),
            parts.len()
        )));
    }
    let labels: Vec<u64> = parts.iter().flat_map(|h| h.labels.iter().copied()).collect();
    let mut g = Graph::null(labels)?;
    let offsets: Vec<usize> = parts
        .iter()
        .scan(0, |acc, h| {
            let start = *acc;
            *acc += h.order();
            Some(start)
        })
        .collect();
    for (h, &off) in parts.iter().zip(&offsets) {
        for (i, j) in h.edges() {
            g.add_edge(off + i, off + j);
        }
    }
    for (a, b) in skeleton.edges() {
        for i in 0..parts[a].order() {
            for j in 0..parts[b].order() {
                g.add_edge(offsets[a] + i, offsets[b] + j);
            }
        }
    }
    Ok(g)
}

/// Γ(Z_n) written as Υ_n[Γ(A(d_1)), ..., Γ(A(d_s))].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub skeleton: Graph,
    pub parts: Vec<(DivisorClass, ClassKind)>,
}

impl Decomposition {
    /// Rebuilds the graph by generalized join (vertices in class order).
    pub fn reconstruct(&self) -> Result<Graph> {
        let parts = self
            .parts
            .iter()
            .map(|(class, kind)| match kind {
                ClassKind::Complete => Graph::complete(class.elements().to_vec()),
                ClassKind::Null => Graph::null(class.elements().to_vec()),
            })
            .collect::<Result<Vec<_>>>()?;
        generalized_join(&self.skeleton, &parts)
    }
}

pub fn decompose_zdg(n: u64) -> Result<Decomposition> {
    let skeleton = upsilon(n)?;
    let parts = skeleton
        .labels()
        .iter()
        .map(|&d| Ok((divisor_class(n, d)?, class_graph_kind(n, d)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Decomposition { skeleton, parts })
}

/// All-pairs shortest path lengths; `None` marks unreachable pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceTable {
    n: usize,
    dist: Vec<Option<u32>>,
}

impl DistanceTable {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Option<u32> {
        self.dist[i * self.n + j]
    }
}

pub fn distances(g: &Graph) -> DistanceTable {
    let n = g.order();
    let mut dist = vec![None; n * n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        dist[s * n + s] = Some(0);
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            let du = dist[s * n + u].expect("queued vertices have a distance");
            for v in g.neighbors(u) {
                if dist[s * n + v].is_none() {
                    dist[s * n + v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
    }
    DistanceTable { n, dist }
}

/// Connected components as ascending index lists, ordered by smallest member.
pub fn components(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut comp = vec![usize::MAX; n];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut k = 0;
        while k < members.len() {
            let u = members[k];
            k += 1;
            for v in g.neighbors(u) {
                if comp[v] == usize::MAX {
                    comp[v] = id;
                    members.push(v);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// The empty graph counts as connected.
pub fn is_connected(g: &Graph) -> bool {
    components(g).len() <= 1
}

pub fn is_tree(g: &Graph) -> bool {
    g.order() >= 1 && is_connected(g) && g.edge_count() == g.order() - 1
}

/// A tree with at most one vertex of degree > 1; K_1 and K_2 qualify.
pub fn is_star(g: &Graph) -> bool {
    is_tree(g) && (0..g.order()).filter(|&i| g.degree(i) > 1).count() <= 1
}

pub fn is_complete(g: &Graph) -> bool {
    let n = g.order();
    g.edge_count() == n * n.saturating_sub(1) / 2
}
