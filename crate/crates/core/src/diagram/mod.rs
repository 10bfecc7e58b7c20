//! Newton boundaries: construction, validation and lattice-point queries.

mod hull;
pub mod minimal;
pub mod moves;
pub mod structure;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::lattice::{gcd3, IVec3, LatticePolygon, PERMS};

pub use hull::newton_boundary;
pub use minimal::{canonical, d_minimal, det_criterion_check, equivalent};
pub use moves::{apply_move, enumerate_moves, Move, MoveKind};
pub use structure::{
    arms, classify_faces, structure_class, Arm, ArmDecomposition, FaceShape, StructureClass, Trapezoid,
};

/// A face of the Newton polyhedron. Compact faces carry a full polygon; non-compact faces
/// carry only the compact part of their boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub polygon: LatticePolygon,
    pub normal: IVec3,
    pub value: BigInt,
    pub compact: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    /// Both endpoints lie on one coordinate plane.
    CoordinatePlane,
    /// Of the form `[(p,0,a),(0,q,b)]` up to permutation, `p, q > 0`.
    Crossing,
    /// Any other edge, e.g. a central edge `[(0,0,a),(p,q,0)]`.
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub ends: [IVec3; 2],
    /// Indices into `NewtonDiagram::faces`.
    pub faces: [usize; 2],
    pub det: BigInt,
    pub mult: BigInt,
    pub kind: EdgeKind,
    /// True when at most one adjacent face is compact.
    pub boundary: bool,
}

/// The Newton boundary together with its face/edge incidence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonDiagram {
    /// Sorted vertex list; the diagram is determined by it.
    pub vertices: Vec<IVec3>,
    /// Compact faces first, then the non-compact faces adjacent to compact edges.
    pub faces: Vec<Face>,
    pub edges: Vec<Edge>,
}

impl NewtonDiagram {
    pub fn from_points(points: &[IVec3]) -> NewtonDiagram {
        newton_boundary(points)
    }

    pub fn compact_faces(&self) -> impl Iterator<Item = (usize, &Face)> {
        self.faces.iter().enumerate().filter(|(_, f)| f.compact)
    }

    pub fn compact_count(&self) -> usize {
        self.faces.iter().filter(|f| f.compact).count()
    }

    pub fn is_segment(&self) -> bool {
        self.compact_count() == 0 && self.vertices.len() == 2
    }

    /// Edges incident to face `fi`.
    pub fn face_edges(&self, fi: usize) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.faces[0] == fi || e.faces[1] == fi)
    }

    /// The other face of an edge.
    pub fn other_face(e: &Edge, fi: usize) -> usize {
        if e.faces[0] == fi {
            e.faces[1]
        } else {
            e.faces[0]
        }
    }

    /// Is `p` a point of the diagram (on a compact face, an edge, or a vertex)?
    pub fn contains(&self, p: &IVec3) -> bool {
        if self.vertices.contains(p) {
            return true;
        }
        if self.compact_faces().any(|(_, f)| polygon_contains(&f.polygon, &f.normal, &f.value, p)) {
            return true;
        }
        self.edges.iter().any(|e| segment_contains(&e.ends[0], &e.ends[1], p))
    }

    /// All lattice points of the diagram, sorted.
    pub fn lattice_points(&self) -> Vec<IVec3> {
        let mut out: BTreeSet<IVec3> = self.vertices.iter().cloned().collect();
        for (_, f) in self.compact_faces() {
            out.extend(polygon_lattice_points(&f.polygon, &f.normal, &f.value));
        }
        for e in &self.edges {
            out.extend(segment_lattice_points(&e.ends[0], &e.ends[1]));
        }
        out.into_iter().collect()
    }

    /// Lattice points on the boundary of compact face `fi` in cyclic order.
    pub fn face_boundary_points(&self, fi: usize) -> Vec<IVec3> {
        polygon_boundary_points(&self.faces[fi].polygon)
    }

    /// Isolatedness criterion with the list of failed conditions.
    pub fn check_isolated(&self) -> IsolatedReport {
        let mut failures = Vec::new();
        for p in [IVec3::zero(), IVec3::unit(0), IVec3::unit(1), IVec3::unit(2)] {
            if self.contains(&p) {
                failures.push(format!("diagram contains {p}"));
            }
        }
        for i in 0..3 {
            if !self.vertices.iter().any(|v| v[i].is_zero()) {
                failures.push(format!("no vertex on the plane z{}=0", i + 1));
            }
        }
        for i in 0..3 {
            let near = self.vertices.iter().any(|v| {
                let others: Vec<&BigInt> = (0..3).filter(|&j| j != i).map(|j| &v[j]).collect();
                let s = others[0] + others[1];
                s <= BigInt::one() && !others[0].is_negative() && !others[1].is_negative()
            });
            if !near {
                failures.push(format!("no vertex at distance at most 1 from the z{} axis", i + 1));
            }
        }
        IsolatedReport { ok: failures.is_empty(), failures }
    }

    pub fn is_isolated(&self) -> bool {
        self.check_isolated().ok
    }

    /// No lattice point of the diagram has all coordinates positive.
    pub fn check_qhs(&self) -> bool {
        self.positive_lattice_point().is_none()
    }

    /// A strictly positive lattice point of the diagram, if any.
    pub fn positive_lattice_point(&self) -> Option<IVec3> {
        self.lattice_points().into_iter().find(|p| p.is_positive())
    }

    /// Isolated and QHS.
    pub fn is_valid(&self) -> bool {
        self.is_isolated() && self.check_qhs()
    }

    /// Vertex list under a coordinate permutation, sorted.
    pub fn permuted_vertices(&self, perm: &[usize; 3]) -> Vec<IVec3> {
        let mut v: Vec<IVec3> = self.vertices.iter().map(|p| p.permute(perm)).collect();
        v.sort();
        v
    }

    /// Lexicographically least sorted vertex list over all coordinate permutations.
    pub fn normal_form(&self) -> (Vec<IVec3>, [usize; 3]) {
        PERMS.iter().map(|p| (self.permuted_vertices(p), *p)).min().expect("six permutations")
    }

    /// The diagram in its normal-form coordinates.
    pub fn normalized(&self) -> NewtonDiagram {
        let (v, _) = self.normal_form();
        newton_boundary(&v)
    }

    pub fn permuted(&self, perm: &[usize; 3]) -> NewtonDiagram {
        newton_boundary(&self.permuted_vertices(perm))
    }

    /// Equal up to a permutation of coordinates.
    pub fn same_up_to_permutation(&self, other: &NewtonDiagram) -> bool {
        self.normal_form().0 == other.normal_form().0
    }

    /// Face keys used to compare face sets of two diagrams.
    pub fn face_keys(&self) -> BTreeSet<(IVec3, Vec<IVec3>)> {
        self.compact_faces()
            .map(|(_, f)| {
                let mut v = f.polygon.vertices.clone();
                v.sort();
                (f.normal.clone(), v)
            })
            .collect()
    }
}

impl fmt::Display for NewtonDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.vertices.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", v.join(" "))
    }
}

/// Outcome of the isolatedness check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatedReport {
    pub ok: bool,
    pub failures: Vec<String>,
}

/// Lattice points on the closed segment `[a, b]`, from `a` to `b`.
pub fn segment_lattice_points(a: &IVec3, b: &IVec3) -> Vec<IVec3> {
    let d = b - a;
    let g = gcd3(&d);
    if g.is_zero() {
        return vec![a.clone()];
    }
    let step = d.div_exact(&g).expect("gcd divides");
    let mut out = Vec::new();
    let mut k = BigInt::zero();
    while k <= g {
        out.push(a + &step.scale(&k));
        k += 1;
    }
    out
}

/// Number of primitive sub-segments of `[a, b]`.
pub fn lattice_length(a: &IVec3, b: &IVec3) -> BigInt {
    gcd3(&(b - a))
}

pub(crate) fn segment_contains(a: &IVec3, b: &IVec3, p: &IVec3) -> bool {
    let d = b - a;
    let w = p - a;
    if !crate::lattice::cross(&d, &w).is_zero() {
        return false;
    }
    let t = w.dot(&d);
    !t.is_negative() && t <= d.dot(&d)
}

/// Cyclic list of boundary lattice points of a polygon.
pub fn polygon_boundary_points(p: &LatticePolygon) -> Vec<IVec3> {
    let mut out = Vec::new();
    for (a, b) in p.edges() {
        let pts = segment_lattice_points(&a, &b);
        out.extend(pts[..pts.len() - 1].iter().cloned());
    }
    out
}

/// 2D orientation of `(b - a, c - a)` projected to the first two coordinates.
fn orient2(a: &IVec3, b: &IVec3, c: &IVec3) -> BigInt {
    (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x)
}

/// Point in a compact face (normal with positive third coordinate, counter-clockwise in xy).
pub(crate) fn polygon_contains(p: &LatticePolygon, normal: &IVec3, value: &BigInt, q: &IVec3) -> bool {
    if &normal.dot(q) != value {
        return false;
    }
    p.edges().iter().all(|(a, b)| !orient2(a, b, q).is_negative())
}

pub(crate) fn polygon_lattice_points(p: &LatticePolygon, normal: &IVec3, value: &BigInt) -> Vec<IVec3> {
    let xs = p.vertices.iter().map(|v| v.x.clone());
    let ys = p.vertices.iter().map(|v| v.y.clone());
    let (x0, x1) = (xs.clone().min().unwrap(), xs.max().unwrap());
    let (y0, y1) = (ys.clone().min().unwrap(), ys.max().unwrap());
    let mut out = Vec::new();
    let mut x = x0;
    while x <= x1 {
        let mut y = y0.clone();
        while y <= y1 {
            let rest = value - &normal.x * &x - &normal.y * &y;
            let (z, r) = rest.div_rem(&normal.z);
            if r.is_zero() {
                let q = IVec3::from_big(x.clone(), y.clone(), z);
                if polygon_contains(p, normal, value, &q) {
                    out.push(q);
                }
            }
            y += 1;
        }
        x += 1;
    }
    out
}
