//! Reconstruction of the d-minimal Newton diagram from an orbifold diagram.

mod arm;
mod center;
mod whc;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::diagram::minimal::{d_minimal, segment_diagram};
use crate::diagram::{newton_boundary, NewtonDiagram};
use crate::error::{fail, Error, Result};
use crate::lattice::{IVec3, Rat};
use crate::oka::oka_graph;
use crate::resgraph::{is_negative_definite, minimize, orb_iso, orbifold, solve_rat, OrbifoldDiagram, ResolutionGraph};

pub use arm::{arm_postprocess, find_hand, ArmTriangle, BasicData, Beyond, Crossing, HandKind};
pub use center::{central_triangles, solve_center, solve_six_tuple, Candidates, CenterCase, SixTuple};
pub use whc::{case_n1, whc_candidates};

/// Which branch of the inverse algorithm produced a diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Route {
    Segment,
    /// One node; the matched weighted homogeneous case (1 to 12).
    WeightedHomogeneous(usize),
    Center(CenterCase),
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Route::Segment => write!(f, "segment"),
            Route::WeightedHomogeneous(k) => write!(f, "weighted homogeneous case {k}"),
            Route::Center(c) => write!(f, "{c}"),
        }
    }
}

/// A successful inversion.
#[derive(Clone, Debug)]
pub struct Inversion {
    /// d-minimal, permutation-normalized.
    pub diagram: NewtonDiagram,
    pub route: Route,
}

/// Either the reconstructed diagram or a `NotRealizable` failure with its stage.
pub type InverseResult = Result<Inversion>;

/// A node of the orbifold diagram with its edges and leg groups.
#[derive(Clone, Debug)]
pub(crate) struct Node {
    pub e: Rat,
    pub nbrs: Vec<(usize, BigInt)>,
    /// Leg decoration to number of legs.
    pub legs: BTreeMap<BigInt, usize>,
}

/// Adjacency view of an orbifold diagram with at least one node.
#[derive(Clone, Debug)]
pub(crate) struct View {
    pub nodes: Vec<Node>,
}

impl View {
    pub fn new(go: &OrbifoldDiagram) -> Result<View> {
        let n = go.node_count();
        let mut nodes: Vec<Node> =
            go.euler.iter().map(|e| Node { e: e.clone(), nbrs: Vec::new(), legs: BTreeMap::new() }).collect();
        let mut seen = BTreeSet::new();
        for (a, b, d) in &go.edges {
            if a == b || *a >= n || *b >= n || !seen.insert(((*a).min(*b), (*a).max(*b))) {
                return fail("shape", "orbifold edges do not form a simple graph");
            }
            if d < &BigInt::one() {
                return fail("shape", format!("edge decoration {d} is not positive"));
            }
            nodes[*a].nbrs.push((*b, d.clone()));
            nodes[*b].nbrs.push((*a, d.clone()));
        }
        for (r, d) in &go.legs {
            if *r >= n {
                return fail("shape", "leg attached to a missing node");
            }
            if d <= &BigInt::one() {
                return fail("shape", format!("leg decoration {d} is not greater than one"));
            }
            *nodes[*r].legs.entry(d.clone()).or_default() += 1;
        }
        if go.edges.len() + 1 != n {
            return fail("shape", "orbifold diagram is not a tree");
        }
        let view = View { nodes };
        let mut reach = BTreeSet::from([0usize]);
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            for (w, _) in &view.nodes[v].nbrs {
                if reach.insert(*w) {
                    stack.push(*w);
                }
            }
        }
        if reach.len() != n {
            return fail("shape", "orbifold diagram is not connected");
        }
        Ok(view)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    /// Adjacent nodes plus distinct leg decorations.
    pub fn groups(&self, v: usize) -> usize {
        self.nodes[v].nbrs.len() + self.nodes[v].legs.len()
    }

    pub fn leg_count(&self, v: usize) -> usize {
        self.nodes[v].legs.values().sum()
    }

    /// Number of edges and legs at `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.nodes[v].nbrs.len() + self.leg_count(v)
    }

    pub fn det(&self, a: usize, b: usize) -> Option<BigInt> {
        self.nodes[a].nbrs.iter().find(|(w, _)| *w == b).map(|(_, d)| d.clone())
    }

    pub fn is_end(&self, v: usize) -> bool {
        self.nodes[v].nbrs.len() == 1
    }

    /// Orbifold intersection matrix.
    pub fn matrix(&self) -> Vec<Vec<Rat>> {
        let n = self.len();
        let mut m = vec![vec![Rat::zero(); n]; n];
        for (i, node) in self.nodes.iter().enumerate() {
            m[i][i] = node.e.clone();
            for (w, d) in &node.nbrs {
                m[i][*w] = Rat::new(BigInt::one(), d.clone());
            }
        }
        m
    }

    /// Right-hand side of the face-value identities: `-g(v)` minus the known leg terms.
    fn face_value_rhs(&self, legs: &[(usize, BigInt, BigInt)]) -> Vec<Rat> {
        let mut b: Vec<Rat> =
            (0..self.len()).map(|v| Rat::from_integer(BigInt::from(2) - BigInt::from(self.degree(v)))).collect();
        for (v, d, m) in legs {
            b[*v] -= Rat::new(m.clone(), d.clone());
        }
        b
    }

    /// Face values of all compact faces from the face-value identities.
    pub fn face_values(&self, legs: &[(usize, BigInt, BigInt)]) -> Result<Vec<Rat>> {
        solve_rat(self.matrix(), self.face_value_rhs(legs))
            .ok_or_else(|| Error::Inconsistent("singular face-value system".into()))
    }

    /// Face values as `m0 + s m1`, where `s` is the unknown face value of one leg `(node, det)`.
    pub fn face_values_with_unknown(
        &self,
        legs: &[(usize, BigInt, BigInt)],
        node: usize,
        det: &BigInt,
    ) -> Result<(Vec<Rat>, Vec<Rat>)> {
        let m0 = self.face_values(legs)?;
        let mut b = vec![Rat::zero(); self.len()];
        b[node] = -Rat::new(BigInt::one(), det.clone());
        let m1 = solve_rat(self.matrix(), b).ok_or_else(|| Error::Inconsistent("singular face-value system".into()))?;
        Ok((m0, m1))
    }
}

/// `orbifold(minimize(oka_graph(g)))`.
pub fn forward_orbifold(g: &NewtonDiagram) -> Result<OrbifoldDiagram> {
    orbifold(&minimize(&oka_graph(g)?)?)
}

/// Build a diagram from candidate vertices and keep it only if it maps back to `go`.
pub(crate) fn verify_candidate(points: &[IVec3], go: &OrbifoldDiagram) -> Option<NewtonDiagram> {
    if points.iter().any(|p| !p.is_nonneg()) {
        return None;
    }
    let g = newton_boundary(points);
    if !g.is_valid() {
        return None;
    }
    match forward_orbifold(&g) {
        Ok(o) if orb_iso(&o, go) => Some(g),
        _ => None,
    }
}

/// Reconstruct the d-minimal diagram whose orbifold diagram is `go`.
pub fn invert(go: &OrbifoldDiagram) -> InverseResult {
    if let Some(n) = &go.free_edge {
        if n < &BigInt::from(2) {
            return fail("free edge", format!("string determinant {n} is below 2"));
        }
        log::debug!("free edge {n}: segment class");
        return Ok(Inversion { diagram: segment_diagram(n).normalized(), route: Route::Segment });
    }
    if go.node_count() == 0 {
        return fail("shape", "orbifold diagram without nodes or free edge");
    }
    let view = View::new(go)?;
    if view.len() == 1 {
        let (case, g) = case_n1(go)?;
        return Ok(Inversion { diagram: g, route: Route::WeightedHomogeneous(case) });
    }
    let candidates = solve_center(go)?;
    log::debug!("{} candidate diagrams", candidates.len());
    for (case, pts) in &candidates {
        if let Some(g) = verify_candidate(pts, go) {
            log::debug!("{case}: verified {g}");
            return Ok(Inversion { diagram: d_minimal(&g)?, route: Route::Center(*case) });
        }
    }
    fail(&candidates[0].0.to_string(), "no reconstructed diagram reproduces the orbifold diagram")
}

/// Decide whether a resolution graph comes from a valid Newton diagram, returning the diagram.
pub fn realizable(g: &ResolutionGraph) -> InverseResult {
    if !g.is_tree() {
        return fail("input", "the graph is not a tree");
    }
    if !is_negative_definite(g) {
        return fail("input", "the intersection matrix is not negative definite");
    }
    let go = orbifold(&minimize(g)?)?;
    let inv = invert(&go)?;
    let back = forward_orbifold(&inv.diagram)?;
    if !orb_iso(&back, &go) {
        return fail("forward check", "the reconstructed diagram has a different orbifold diagram");
    }
    Ok(inv)
}

/// Positive integer value of a rational.
pub(crate) fn pos_int(r: &Rat) -> Option<BigInt> {
    if r.is_integer() && r.is_positive() {
        Some(r.to_integer())
    } else {
        None
    }
}
