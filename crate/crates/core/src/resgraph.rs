//! Resolution graphs, blow-downs and orbifold diagrams.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{eval_neg_cont_frac, Rat};

/// Decorated tree: vertex `v` carries the self-intersection `weights[v]`, all genera zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ResolutionGraph {
    pub weights: Vec<BigInt>,
    pub edges: Vec<(usize, usize)>,
}

impl ResolutionGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_parts(weights: Vec<i64>, edges: Vec<(usize, usize)>) -> Self {
        ResolutionGraph { weights: weights.into_iter().map(BigInt::from).collect(), edges }
    }

    pub fn add_vertex(&mut self, b: BigInt) -> usize {
        self.weights.push(b);
        self.weights.len() - 1
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        self.edges.push((a, b));
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Connected and acyclic.
    pub fn is_tree(&self) -> bool {
        if self.is_empty() {
            return false;
        }
        if self.edges.len() + 1 != self.len() {
            return false;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Intersection matrix `I`.
    pub fn matrix(&self) -> Vec<Vec<BigInt>> {
        let n = self.len();
        let mut m = vec![vec![BigInt::zero(); n]; n];
        for (i, b) in self.weights.iter().enumerate() {
            m[i][i] = b.clone();
        }
        for &(a, b) in &self.edges {
            m[a][b] += 1;
            m[b][a] += 1;
        }
        m
    }

    /// Subgraph induced by `keep`, in the given order.
    pub fn induced(&self, keep: &[usize]) -> ResolutionGraph {
        let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        ResolutionGraph {
            weights: keep.iter().map(|&v| self.weights[v].clone()).collect(),
            edges: self.edges.iter().filter_map(|(a, b)| Some((*pos.get(a)?, *pos.get(b)?))).collect(),
        }
    }
}

impl fmt::Display for ResolutionGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.weights.iter().map(|b| b.to_string()).collect();
        let e: Vec<String> = self.edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        write!(f, "weights [{}] edges [{}]", w.join(" "), e.join(" "))
    }
}

/// Leading principal minors of an integer matrix by fraction-free elimination.
/// Stops at the first vanishing minor.
fn leading_minors(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let n = a.len();
    let mut minors = Vec::with_capacity(n);
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = a[k][k].clone();
        minors.push(pivot.clone());
        if pivot.is_zero() {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&pivot * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = pivot;
    }
    minors
}

/// Determinant of an integer matrix (Bareiss with row pivoting).
pub fn int_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Determinant of a rational matrix by Gaussian elimination.
pub fn rat_det(mut a: Vec<Vec<Rat>>) -> Rat {
    let n = a.len();
    let mut det = Rat::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Rat::zero();
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        det *= a[k][k].clone();
        for i in k + 1..n {
            let f = &a[i][k] / &a[k][k];
            if f.is_zero() {
                continue;
            }
            for j in k..n {
                let v = &a[k][j] * &f;
                a[i][j] -= v;
            }
        }
    }
    det
}

/// Solve `a x = b` exactly; `None` when `a` is singular.
pub fn solve_rat(mut a: Vec<Vec<Rat>>, mut b: Vec<Rat>) -> Option<Vec<Rat>> {
    let n = a.len();
    for k in 0..n {
        let p = (k..n).find(|&i| !a[i][k].is_zero())?;
        a.swap(p, k);
        b.swap(p, k);
        for i in 0..n {
            if i == k || a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &a[k][k];
            for j in k..n {
                let v = &a[k][j] * &f;
                a[i][j] -= v;
            }
            let v = &b[k] * &f;
            b[i] -= v;
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

fn negated(m: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    m.into_iter().map(|r| r.into_iter().map(|x| -x).collect()).collect()
}

/// All leading principal minors of `-I` are positive.
pub fn is_negative_definite(g: &ResolutionGraph) -> bool {
    if g.is_empty() {
        return false;
    }
    let minors = leading_minors(negated(g.matrix()));
    minors.len() == g.len() && minors.iter().all(|m| m.is_positive())
}

/// `det(-I)`.
pub fn graph_det(g: &ResolutionGraph) -> Result<BigInt> {
    if !is_negative_definite(g) {
        return Err(Error::InvalidArgument("the intersection matrix is not negative definite".into()));
    }
    Ok(int_det(negated(g.matrix())))
}

/// Determinant of the string formed by `path` (empty path has determinant 1).
pub fn string_det(g: &ResolutionGraph, path: &[usize]) -> BigInt {
    let (mut prev, mut cur) = (BigInt::zero(), BigInt::one());
    for &v in path {
        let next = -&g.weights[v] * &cur - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Good minimal model: blow down `-1` vertices of degree at most two.
pub fn minimize(g: &ResolutionGraph) -> Result<ResolutionGraph> {
    if !g.is_tree() {
        return Err(Error::InvalidArgument("resolution graph must be a tree".into()));
    }
    let mut weights: Vec<Option<BigInt>> = g.weights.iter().cloned().map(Some).collect();
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); g.len()];
    for &(a, b) in &g.edges {
        adj[a].insert(b);
        adj[b].insert(a);
    }
    let minus_one = -BigInt::one();
    loop {
        let pick = (0..weights.len()).find(|&v| weights[v].as_ref() == Some(&minus_one) && adj[v].len() <= 2);
        let Some(v) = pick else { break };
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        if nb.is_empty() {
            return Err(Error::InvalidArgument("graph blows down to a smooth point".into()));
        }
        for &w in &nb {
            adj[w].remove(&v);
            *weights[w].as_mut().expect("live vertex") += 1;
        }
        if nb.len() == 2 {
            adj[nb[0]].insert(nb[1]);
            adj[nb[1]].insert(nb[0]);
        }
        adj[v].clear();
        weights[v] = None;
    }
    let live: Vec<usize> = (0..weights.len()).filter(|&v| weights[v].is_some()).collect();
    let pos: BTreeMap<usize, usize> = live.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut out = ResolutionGraph::new();
    for &v in &live {
        out.add_vertex(weights[v].clone().expect("live"));
    }
    for &v in &live {
        for &w in &adj[v] {
            if v < w {
                out.add_edge(pos[&v], pos[&w]);
            }
        }
    }
    Ok(out)
}

/// A maximal string between two nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub ends: (usize, usize),
    /// Interior vertices from `ends.0` to `ends.1`.
    pub path: Vec<usize>,
}

/// A maximal string hanging off a node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Leg {
    pub node: usize,
    /// Vertices read outward from the node.
    pub path: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub nodes: Vec<usize>,
    pub chains: Vec<Chain>,
    pub legs: Vec<Leg>,
    /// The graph has no node and is a single string.
    pub is_string: bool,
}

/// Nodes (degree at least three), chains and legs of a tree.
pub fn decompose(g: &ResolutionGraph) -> Decomposition {
    let adj = g.adjacency();
    let nodes: Vec<usize> = (0..g.len()).filter(|&v| adj[v].len() >= 3).collect();
    let is_node: BTreeSet<usize> = nodes.iter().copied().collect();
    let mut chains = Vec::new();
    let mut legs = Vec::new();
    for &r in &nodes {
        for &start in &adj[r] {
            let mut path = Vec::new();
            let (mut prev, mut cur) = (r, start);
            loop {
                if is_node.contains(&cur) {
                    if r < cur {
                        chains.push(Chain { ends: (r, cur), path: path.clone() });
                    }
                    break;
                }
                path.push(cur);
                let next: Vec<usize> = adj[cur].iter().copied().filter(|&w| w != prev).collect();
                match next.first() {
                    Some(&w) => {
                        prev = cur;
                        cur = w;
                    }
                    None => {
                        legs.push(Leg { node: r, path: path.clone() });
                        break;
                    }
                }
            }
        }
    }
    Decomposition { is_string: nodes.is_empty(), nodes, chains, legs }
}

/// Orbifold diagram: nodes with rational Euler numbers, decorated edges and legs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbifoldDiagram {
    pub euler: Vec<Rat>,
    /// `(a, b, det)` for each chain between nodes `a` and `b`.
    pub edges: Vec<(usize, usize, BigInt)>,
    /// `(node, det)` for each leg.
    pub legs: Vec<(usize, BigInt)>,
    /// Set when the source graph has no node: the determinant of the whole string.
    pub free_edge: Option<BigInt>,
}

impl OrbifoldDiagram {
    pub fn free(n: BigInt) -> Self {
        OrbifoldDiagram { euler: Vec::new(), edges: Vec::new(), legs: Vec::new(), free_edge: Some(n) }
    }

    pub fn node_count(&self) -> usize {
        self.euler.len()
    }

    /// Sorted leg determinants at node `r`.
    pub fn legs_at(&self, r: usize) -> Vec<BigInt> {
        let mut v: Vec<BigInt> = self.legs.iter().filter(|(n, _)| *n == r).map(|(_, d)| d.clone()).collect();
        v.sort();
        v
    }

    /// `(neighbour, det)` for every edge at node `r`.
    pub fn edges_at(&self, r: usize) -> Vec<(usize, BigInt)> {
        let mut v = Vec::new();
        for (a, b, d) in &self.edges {
            if *a == r {
                v.push((*b, d.clone()));
            } else if *b == r {
                v.push((*a, d.clone()));
            }
        }
        v
    }

    /// Orbifold intersection matrix `I^o`.
    pub fn matrix(&self) -> Vec<Vec<Rat>> {
        let n = self.node_count();
        let mut m = vec![vec![Rat::zero(); n]; n];
        for (i, e) in self.euler.iter().enumerate() {
            m[i][i] = e.clone();
        }
        for (a, b, d) in &self.edges {
            let w = Rat::new(BigInt::one(), d.clone());
            m[*a][*b] += w.clone();
            m[*b][*a] += w;
        }
        m
    }
}

/// Seifert pair `(alpha, omega)` of a string read outward from its node.
fn seifert_pair(g: &ResolutionGraph, path: &[usize]) -> (BigInt, BigInt) {
    if path.is_empty() {
        return (BigInt::one(), BigInt::zero());
    }
    (string_det(g, path), string_det(g, &path[1..]))
}

/// Orbifold diagram of a negative-definite tree.
pub fn orbifold(g: &ResolutionGraph) -> Result<OrbifoldDiagram> {
    if !g.is_tree() {
        return Err(Error::InvalidArgument("resolution graph must be a tree".into()));
    }
    let d = decompose(g);
    if d.is_string {
        return Ok(OrbifoldDiagram::free(graph_det(g)?));
    }
    let index: BTreeMap<usize, usize> = d.nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut euler: Vec<Rat> = d.nodes.iter().map(|&v| Rat::from_integer(g.weights[v].clone())).collect();
    let mut edges = Vec::new();
    let mut legs = Vec::new();
    for c in &d.chains {
        let (a, b) = (index[&c.ends.0], index[&c.ends.1]);
        let (alpha, w0) = seifert_pair(g, &c.path);
        let rev: Vec<usize> = c.path.iter().rev().copied().collect();
        let (_, w1) = seifert_pair(g, &rev);
        euler[a] += Rat::new(w0, alpha.clone());
        euler[b] += Rat::new(w1, alpha.clone());
        edges.push((a, b, alpha));
    }
    for l in &d.legs {
        let r = index[&l.node];
        let (alpha, w) = seifert_pair(g, &l.path);
        euler[r] += Rat::new(w, alpha.clone());
        legs.push((r, alpha));
    }
    legs.sort();
    Ok(OrbifoldDiagram { euler, edges, legs, free_edge: None })
}

/// `det(-I^o)`; `None` for a free edge.
pub fn orbifold_det(go: &OrbifoldDiagram) -> Option<Rat> {
    if go.free_edge.is_some() {
        return None;
    }
    let m: Vec<Vec<Rat>> = go.matrix().into_iter().map(|r| r.into_iter().map(|x| -x).collect()).collect();
    Some(rat_det(m))
}

/// Product of the determinants of all chains and legs.
pub fn chain_leg_product(go: &OrbifoldDiagram) -> BigInt {
    go.edges.iter().map(|e| &e.2).chain(go.legs.iter().map(|l| &l.1)).fold(BigInt::one(), |acc, d| acc * d)
}

/// Orbifold intersection matrix is negative definite.
pub fn orbifold_negative_definite(go: &OrbifoldDiagram) -> bool {
    let m: Vec<Vec<Rat>> = go.matrix().into_iter().map(|r| r.into_iter().map(|x| -x).collect()).collect();
    (1..=m.len()).all(|k| {
        let sub: Vec<Vec<Rat>> = m[..k].iter().map(|r| r[..k].to_vec()).collect();
        rat_det(sub).is_positive()
    })
}

/// Canonical string of a labelled tree (`labels[v]`, adjacency with edge labels).
fn tree_canon(labels: &[String], adj: &[Vec<(usize, String)>]) -> String {
    let n = labels.len();
    if n == 0 {
        return String::new();
    }
    // centres by repeated leaf stripping
    let mut deg: Vec<usize> = adj.iter().map(|a| a.len()).collect();
    let mut leaves: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
    let mut remaining = n;
    let mut removed = vec![false; n];
    while remaining > 2 {
        let mut next = Vec::new();
        for &v in &leaves {
            removed[v] = true;
            remaining -= 1;
            for (w, _) in &adj[v] {
                if !removed[*w] {
                    deg[*w] -= 1;
                    if deg[*w] == 1 {
                        next.push(*w);
                    }
                }
            }
        }
        leaves = next;
    }
    let centres: Vec<usize> = (0..n).filter(|&v| !removed[v]).collect();
    fn rooted(v: usize, parent: Option<usize>, labels: &[String], adj: &[Vec<(usize, String)>]) -> String {
        let mut kids: Vec<String> = adj[v]
            .iter()
            .filter(|(w, _)| Some(*w) != parent)
            .map(|(w, el)| format!("{el}:{}", rooted(*w, Some(v), labels, adj)))
            .collect();
        kids.sort();
        format!("({}[{}])", labels[v], kids.join(","))
    }
    centres.iter().map(|&c| rooted(c, None, labels, adj)).min().expect("a centre")
}

/// Canonical form of a resolution graph.
pub fn graph_canon(g: &ResolutionGraph) -> String {
    let labels: Vec<String> = g.weights.iter().map(|b| b.to_string()).collect();
    let mut adj = vec![Vec::new(); g.len()];
    for &(a, b) in &g.edges {
        adj[a].push((b, String::new()));
        adj[b].push((a, String::new()));
    }
    tree_canon(&labels, &adj)
}

pub fn graph_iso(a: &ResolutionGraph, b: &ResolutionGraph) -> bool {
    a.len() == b.len() && a.edges.len() == b.edges.len() && graph_canon(a) == graph_canon(b)
}

/// Canonical form of an orbifold diagram; parallel edges are merged into one labelled edge.
pub fn orbifold_canon(go: &OrbifoldDiagram) -> String {
    if let Some(n) = &go.free_edge {
        return format!("free:{n}");
    }
    let n = go.node_count();
    let labels: Vec<String> = (0..n)
        .map(|r| {
            let legs: Vec<String> = go.legs_at(r).iter().map(|d| d.to_string()).collect();
            format!("{}|{}", go.euler[r], legs.join(" "))
        })
        .collect();
    let mut multi: BTreeMap<(usize, usize), Vec<BigInt>> = BTreeMap::new();
    for (a, b, d) in &go.edges {
        multi.entry(((*a).min(*b), (*a).max(*b))).or_default().push(d.clone());
    }
    let mut adj = vec![Vec::new(); n];
    for ((a, b), mut ds) in multi {
        ds.sort();
        let l: Vec<String> = ds.iter().map(|d| d.to_string()).collect();
        let l = l.join("+");
        adj[a].push((b, l.clone()));
        adj[b].push((a, l));
    }
    tree_canon(&labels, &adj)
}

pub fn orb_iso(a: &OrbifoldDiagram, b: &OrbifoldDiagram) -> bool {
    orbifold_canon(a) == orbifold_canon(b)
}

/// Value of the continued fraction of a string read from `path[0]`.
pub fn string_fraction(g: &ResolutionGraph, path: &[usize]) -> Rat {
    let bs: Vec<BigInt> = path.iter().map(|&v| -&g.weights[v]).collect();
    eval_neg_cont_frac(&bs)
}
