//! Face shapes, arms and the structure family of a diagram.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{lattice_length, EdgeKind, NewtonDiagram};
use crate::error::{Error, Result};
use crate::lattice::{IVec3, PERMS};

/// Trapezoid in the coordinates `A=(p,0,n)`, `B=(0,q,n)`, `C=(r1,r2+tq,0)`, `D=(r1+tp,r2,0)`
/// after applying `perm`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trapezoid {
    pub perm: [usize; 3],
    pub p: BigInt,
    pub q: BigInt,
    pub n: BigInt,
    pub t: BigInt,
    pub r1: BigInt,
    pub r2: BigInt,
    /// Vertices `A, B, C, D` in original coordinates.
    pub vertices: [IVec3; 4],
}

impl Trapezoid {
    pub fn bottom(&self) -> (IVec3, IVec3) {
        (self.vertices[2].clone(), self.vertices[3].clone())
    }

    pub fn top(&self) -> (IVec3, IVec3) {
        (self.vertices[0].clone(), self.vertices[1].clone())
    }

    /// A trapezoid that cannot be shrunk to a triangle.
    pub fn is_non_removable(&self) -> bool {
        let one = BigInt::one();
        self.n > one && &self.r1 + &self.p > one && &self.r2 + &self.q > one
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FaceShape {
    Triangle,
    Trapezoid(Trapezoid),
}

/// Match four cyclically ordered vertices against the trapezoid normal form.
fn match_trapezoid(v: &[IVec3]) -> Option<Trapezoid> {
    let mut found: Vec<(bool, usize, Trapezoid)> = Vec::new();
    for perm in PERMS.iter() {
        let w: Vec<IVec3> = v.iter().map(|x| x.permute(perm)).collect();
        for start in 0..4 {
            for dir in [1usize, 3] {
                let idx = |k: usize| (start + dir * k) % 4;
                let (a, b, c, d) = (&w[idx(0)], &w[idx(1)], &w[idx(2)], &w[idx(3)]);
                if !(a.y.is_zero() && b.x.is_zero() && c.z.is_zero() && d.z.is_zero() && a.z == b.z) {
                    continue;
                }
                let (p, q, n) = (a.x.clone(), b.y.clone(), a.z.clone());
                if !p.is_positive() || !q.is_positive() || !n.is_positive() || !p.gcd(&q).is_one() {
                    continue;
                }
                let dx = &d.x - &c.x;
                let dy = &c.y - &d.y;
                if !(&dx % &p).is_zero() || !(&dy % &q).is_zero() {
                    continue;
                }
                let t = &dx / &p;
                if t != &dy / &q || !t.is_positive() {
                    continue;
                }
                let (r1, r2) = (c.x.clone(), d.y.clone());
                if r1.is_negative() || r2.is_negative() {
                    continue;
                }
                let bottom_inner = lattice_length(c, d) > BigInt::one();
                let tz = Trapezoid {
                    perm: *perm,
                    p,
                    q,
                    n,
                    t,
                    r1,
                    r2,
                    vertices: [v[idx(0)].clone(), v[idx(1)].clone(), v[idx(2)].clone(), v[idx(3)].clone()],
                };
                // bottom plane index in original coordinates
                let plane = perm[2];
                found.push((bottom_inner, plane, tz));
            }
        }
    }
    // bottom with inner lattice points first, then the least coordinate plane (z1z2 before z1z3 before z2z3)
    found.into_iter().max_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1))).map(|x| x.2)
}

/// Shape of every compact face, indexed like `NewtonDiagram::faces`.
pub fn classify_faces(g: &NewtonDiagram) -> Result<Vec<(usize, FaceShape)>> {
    let mut out = Vec::new();
    for (fi, f) in g.compact_faces() {
        let shape = match f.polygon.len() {
            3 => FaceShape::Triangle,
            4 => match match_trapezoid(&f.polygon.vertices) {
                Some(t) => FaceShape::Trapezoid(t),
                None => {
                    return Err(Error::InvalidDiagram(format!(
                        "quadrilateral face {:?} is not a trapezoid",
                        f.polygon.vertices
                    )))
                }
            },
            k => return Err(Error::InvalidDiagram(format!("face with {k} vertices"))),
        };
        out.push((fi, shape));
    }
    Ok(out)
}

/// An arm in the direction of a coordinate axis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arm {
    pub axis: usize,
    /// Face indices from the hand to the shoulder side.
    pub triangles: Vec<usize>,
    /// The crossing edge of the arm farthest from the axis.
    pub shoulder: (IVec3, IVec3),
}

impl Arm {
    pub fn is_degenerate(&self) -> bool {
        self.triangles.is_empty()
    }

    pub fn hand(&self) -> Option<usize> {
        self.triangles.first().copied()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArmDecomposition {
    pub arms: [Option<Arm>; 3],
}

impl ArmDecomposition {
    pub fn hands(&self) -> usize {
        self.arms.iter().flatten().filter(|a| !a.is_degenerate()).count()
    }
}

/// Closeness of a point to axis `k` in the projection to the standard triangle.
fn closeness(p: &IVec3, k: usize) -> BigRational {
    BigRational::new(p[k].clone(), p.sum())
}

fn on_two_planes(v: &[IVec3], axis: usize) -> bool {
    let (i, j) = ((axis + 1) % 3, (axis + 2) % 3);
    v.iter().all(|p| p[i].is_zero() || p[j].is_zero())
}

fn crosses(a: &IVec3, b: &IVec3, axis: usize) -> bool {
    let (i, j) = ((axis + 1) % 3, (axis + 2) % 3);
    let ok = |x: &IVec3, y: &IVec3| x[i].is_positive() && x[j].is_zero() && y[i].is_zero() && y[j].is_positive();
    (ok(a, b) || ok(b, a)) && (&a[axis] + &b[axis]).is_positive()
}

/// Arm decomposition, one entry per coordinate axis.
pub fn arms(g: &NewtonDiagram) -> ArmDecomposition {
    let mut out: [Option<Arm>; 3] = [None, None, None];
    if g.compact_count() <= 1 && g.vertices.iter().all(|v| v.zeros() == 2) {
        return ArmDecomposition { arms: out };
    }
    for (axis, slot) in out.iter_mut().enumerate() {
        let mut tris: Vec<(BigRational, usize)> = g
            .compact_faces()
            .filter(|(_, f)| f.polygon.len() == 3 && on_two_planes(&f.polygon.vertices, axis))
            .map(|(fi, f)| {
                let c = f.polygon.vertices.iter().fold(IVec3::zero(), |acc, v| &acc + v);
                (closeness(&c, axis), fi)
            })
            .collect();
        tris.sort_by(|a, b| b.0.cmp(&a.0));
        let crossing: Vec<(BigRational, (IVec3, IVec3))> = g
            .edges
            .iter()
            .filter(|e| e.kind == EdgeKind::Crossing && crosses(&e.ends[0], &e.ends[1], axis))
            .map(|e| (closeness(&(&e.ends[0] + &e.ends[1]), axis), (e.ends[0].clone(), e.ends[1].clone())))
            .collect();
        let Some(shoulder) = crossing.iter().min_by(|a, b| a.0.cmp(&b.0)).map(|c| c.1.clone()) else {
            continue;
        };
        *slot = Some(Arm { axis, triangles: tris.into_iter().map(|t| t.1).collect(), shoulder });
    }
    ArmDecomposition { arms: out }
}

/// Structure family of a minimal representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StructureClass {
    /// Non-removable trapezoid with the given number of hands.
    Trapezoid(usize),
    /// Central triangle with the given number of hands.
    Triangle(usize),
    /// Central edge with the given number of hands.
    Edge(usize),
    Segment,
}

impl fmt::Display for StructureClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureClass::Trapezoid(k) => write!(f, "trapezoid-{k}"),
            StructureClass::Triangle(k) => write!(f, "triangle-{k}"),
            StructureClass::Edge(k) => write!(f, "edge-{k}"),
            StructureClass::Segment => f.write_str("segment"),
        }
    }
}

fn is_central_triangle(v: &[IVec3]) -> bool {
    v.len() == 3 && (0..3).all(|axis| !on_two_planes(v, axis))
}

fn is_central_edge(a: &IVec3, b: &IVec3) -> bool {
    let shape = |x: &IVec3, y: &IVec3| {
        (0..3).any(|k| {
            let (i, j) = ((k + 1) % 3, (k + 2) % 3);
            x[i].is_zero() && x[j].is_zero() && y[k].is_zero() && y[i].is_positive() && y[j].is_positive()
        })
    };
    shape(a, b) || shape(b, a)
}

pub fn structure_class(g: &NewtonDiagram) -> StructureClass {
    if g.compact_count() == 0 {
        return StructureClass::Segment;
    }
    let hands = arms(g).hands();
    let shapes = classify_faces(g).unwrap_or_default();
    if shapes.iter().any(|(_, s)| matches!(s, FaceShape::Trapezoid(_))) {
        return StructureClass::Trapezoid(hands);
    }
    if g.compact_faces().any(|(_, f)| is_central_triangle(&f.polygon.vertices))
        || (g.compact_count() == 1 && g.vertices.iter().all(|v| v.zeros() == 2))
    {
        return StructureClass::Triangle(hands);
    }
    if g.edges.iter().any(|e| is_central_edge(&e.ends[0], &e.ends[1])) {
        return StructureClass::Edge(hands);
    }
    StructureClass::Triangle(hands)
}
