//! Elementary moves M1± (add/remove a triangle) and M2± (grow/shrink a face in its plane).

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{newton_boundary, polygon_boundary_points, EdgeKind, NewtonDiagram};
use crate::error::{Error, Result};
use crate::lattice::{IVec3, PERMS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    M1Plus,
    M1Minus,
    M2Plus,
    M2Minus,
}

impl MoveKind {
    pub const ALL: [MoveKind; 4] = [MoveKind::M1Plus, MoveKind::M1Minus, MoveKind::M2Plus, MoveKind::M2Minus];
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MoveKind::M1Plus => "M1+",
            MoveKind::M1Minus => "M1-",
            MoveKind::M2Plus => "M2+",
            MoveKind::M2Minus => "M2-",
        };
        f.write_str(s)
    }
}

/// A move together with the support it produces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Move {
    pub kind: MoveKind,
    pub axis: (IVec3, IVec3),
    /// Points added (M1+, M2+) or removed (M1−, M2−).
    pub points: Vec<IVec3>,
    /// Vertex set of the resulting diagram.
    pub result: Vec<IVec3>,
}

fn is_boundary_axis(g: &NewtonDiagram, a: &IVec3, b: &IVec3) -> bool {
    if g.is_segment() {
        return g.vertices.contains(a) && g.vertices.contains(b);
    }
    g.edges.iter().any(|e| {
        e.boundary
            && e.kind != EdgeKind::CoordinatePlane
            && g.faces[e.faces[0]].compact != g.faces[e.faces[1]].compact
            && ((&e.ends[0] == a && &e.ends[1] == b) || (&e.ends[0] == b && &e.ends[1] == a))
    })
}

fn not_coordinate(a: &IVec3, b: &IVec3) -> bool {
    !(0..3).any(|i| a[i].is_zero() && b[i].is_zero())
}

/// Face keys of `g` with face `skip` removed.
fn keys_without(g: &NewtonDiagram, skip: usize) -> BTreeSet<(IVec3, Vec<IVec3>)> {
    let f = &g.faces[skip];
    let mut v = f.polygon.vertices.clone();
    v.sort();
    let mut keys = g.face_keys();
    keys.remove(&(f.normal.clone(), v));
    keys
}

/// All M1− moves: delete a triangle through one of its vertices.
fn m1_minus(g: &NewtonDiagram) -> Vec<Move> {
    let mut out = Vec::new();
    for (fi, f) in g.compact_faces() {
        if f.polygon.len() != 3 {
            continue;
        }
        for c in &f.polygon.vertices {
            let shared = g.compact_faces().any(|(fj, h)| fj != fi && h.polygon.vertices.contains(c));
            if shared {
                continue;
            }
            let ab: Vec<IVec3> = f.polygon.vertices.iter().filter(|v| *v != c).cloned().collect();
            if !not_coordinate(&ab[0], &ab[1]) {
                continue;
            }
            let support: Vec<IVec3> = g.vertices.iter().filter(|v| *v != c).cloned().collect();
            let h = newton_boundary(&support);
            if h.face_keys() != keys_without(g, fi) || !h.is_isolated() {
                continue;
            }
            if !is_boundary_axis(&h, &ab[0], &ab[1]) {
                continue;
            }
            out.push(Move {
                kind: MoveKind::M1Minus,
                axis: (ab[0].clone(), ab[1].clone()),
                points: vec![c.clone()],
                result: h.vertices.clone(),
            });
        }
    }
    out
}

/// Signed side of `q` with respect to the line `ab` in the xy projection.
fn side(a: &IVec3, b: &IVec3, q: &IVec3) -> BigInt {
    (&b.x - &a.x) * (&q.y - &a.y) - (&b.y - &a.y) * (&q.x - &a.x)
}

/// All M2− moves: cut a face along a chord through two of its boundary lattice points.
fn m2_minus(g: &NewtonDiagram) -> Vec<Move> {
    let mut out = Vec::new();
    for (fi, f) in g.compact_faces() {
        let bp = polygon_boundary_points(&f.polygon);
        let others: BTreeSet<&IVec3> =
            g.compact_faces().filter(|(fj, _)| *fj != fi).flat_map(|(_, h)| h.polygon.vertices.iter()).collect();
        for i in 0..bp.len() {
            for j in i + 1..bp.len() {
                let (a, b) = (&bp[i], &bp[j]);
                if !not_coordinate(a, b) {
                    continue;
                }
                for sgn in [1i32, -1] {
                    let beyond = |q: &IVec3| {
                        let s = side(a, b, q);
                        if sgn > 0 {
                            s.is_positive()
                        } else {
                            s.is_negative()
                        }
                    };
                    let removed: Vec<IVec3> = f.polygon.vertices.iter().filter(|v| beyond(v)).cloned().collect();
                    if removed.is_empty() || removed.iter().any(|v| others.contains(v)) {
                        continue;
                    }
                    let kept: Vec<IVec3> = f.polygon.vertices.iter().filter(|v| !beyond(v)).cloned().collect();
                    if !kept.iter().any(|v| !side(a, b, v).is_zero()) {
                        continue;
                    }
                    let mut support: BTreeSet<IVec3> =
                        g.vertices.iter().filter(|v| !removed.contains(v)).cloned().collect();
                    support.insert(a.clone());
                    support.insert(b.clone());
                    let support: Vec<IVec3> = support.into_iter().collect();
                    let h = newton_boundary(&support);
                    let mut expect = keys_without(g, fi);
                    let mut cut: BTreeSet<IVec3> = kept.iter().cloned().collect();
                    cut.insert(a.clone());
                    cut.insert(b.clone());
                    let new_face = h.compact_faces().find(|(_, hf)| hf.normal == f.normal).map(|(_, hf)| {
                        let mut v = hf.polygon.vertices.clone();
                        v.sort();
                        v
                    });
                    let Some(nv) = new_face else { continue };
                    if !nv.iter().all(|v| cut.contains(v)) {
                        continue;
                    }
                    expect.insert((f.normal.clone(), nv));
                    if h.face_keys() != expect || !h.is_isolated() || !is_boundary_axis(&h, a, b) {
                        continue;
                    }
                    out.push(Move {
                        kind: MoveKind::M2Minus,
                        axis: (a.clone(), b.clone()),
                        points: removed,
                        result: h.vertices.clone(),
                    });
                }
            }
        }
    }
    out
}

/// Permutation bringing a crossing axis into the form `A=(a,0,c)`, `B=(0,1,b)`.
fn axis_frames(a: &IVec3, b: &IVec3) -> Vec<([usize; 3], IVec3, IVec3)> {
    let mut out = Vec::new();
    for perm in PERMS.iter() {
        for (x, y) in [(a, b), (b, a)] {
            let (pa, pb) = (x.permute(perm), y.permute(perm));
            if pa.x.is_positive() && pa.y.is_zero() && pb.x.is_zero() && pb.y == BigInt::from(1) {
                out.push((*perm, pa, pb));
            }
        }
    }
    out
}

fn inverse_perm(perm: &[usize; 3]) -> [usize; 3] {
    let mut inv = [0usize; 3];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

fn max_coord(g: &NewtonDiagram) -> BigInt {
    g.vertices.iter().flat_map(|v| v.to_array()).max().unwrap_or_else(BigInt::zero)
}

/// M1+ moves: add `C=(a',0,c')` creating one new triangle on a crossing boundary axis.
fn m1_plus(g: &NewtonDiagram) -> Vec<Move> {
    let bound: BigInt = max_coord(g) * 2 + 2;
    let axes: Vec<(IVec3, IVec3)> = if g.is_segment() {
        vec![(g.vertices[0].clone(), g.vertices[1].clone())]
    } else {
        g.edges
            .iter()
            .filter(|e| is_boundary_axis(g, &e.ends[0], &e.ends[1]))
            .map(|e| (e.ends[0].clone(), e.ends[1].clone()))
            .collect()
    };
    let old_keys = g.face_keys();
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for (a, b) in axes {
        for (perm, pa, _pb) in axis_frames(&a, &b) {
            let inv = inverse_perm(&perm);
            let mut ap = BigInt::zero();
            while ap < pa.x {
                let mut cp: BigInt = &pa.z + 1;
                while cp <= bound {
                    let c = IVec3::from_big(ap.clone(), BigInt::zero(), cp.clone()).permute(&inv);
                    cp += 1;
                    if !seen.insert(c.clone()) || g.contains(&c) {
                        continue;
                    }
                    let mut support = g.vertices.clone();
                    support.push(c.clone());
                    let h = newton_boundary(&support);
                    let new: Vec<_> = h.face_keys().difference(&old_keys).cloned().collect();
                    let lost = old_keys.difference(&h.face_keys()).count();
                    if lost != 0 || new.len() != 1 {
                        continue;
                    }
                    let mut tri = vec![a.clone(), b.clone(), c.clone()];
                    tri.sort();
                    if new[0].1 != tri || !h.is_isolated() {
                        continue;
                    }
                    out.push(Move {
                        kind: MoveKind::M1Plus,
                        axis: (a.clone(), b.clone()),
                        points: vec![c],
                        result: h.vertices.clone(),
                    });
                }
                ap += 1;
            }
        }
    }
    out
}

/// Single-point M2+ moves: grow a face across one of its crossing boundary edges.
pub(crate) fn m2_plus(g: &NewtonDiagram) -> Vec<Move> {
    let old_keys = g.face_keys();
    let mut out = Vec::new();
    for (fi, f) in g.compact_faces() {
        let axes: Vec<(IVec3, IVec3)> = g
            .face_edges(fi)
            .filter(|e| is_boundary_axis(g, &e.ends[0], &e.ends[1]))
            .map(|e| (e.ends[0].clone(), e.ends[1].clone()))
            .collect();
        if axes.is_empty() {
            continue;
        }
        let others: Vec<(IVec3, BigInt)> =
            g.compact_faces().filter(|(fj, _)| *fj != fi).map(|(_, h)| (h.normal.clone(), h.value.clone())).collect();
        let interior = f.polygon.vertices.iter().fold(IVec3::zero(), |acc, v| &acc + v);
        let n = &f.normal;
        let m = &f.value;
        let mut x = BigInt::zero();
        while &(&n.x * &x) <= m {
            let mut y = BigInt::zero();
            while &(&n.x * &x + &n.y * &y) <= m {
                let rest = m - &n.x * &x - &n.y * &y;
                let (z, r) = rest.div_rem(&n.z);
                let p = IVec3::from_big(x.clone(), y.clone(), z);
                y += 1;
                if !r.is_zero() {
                    continue;
                }
                if others.iter().any(|(on, ov)| on.dot(&p) <= *ov) {
                    continue;
                }
                // must lie strictly beyond one of the axes, away from the face
                let k = BigInt::from(f.polygon.len());
                let axis = axes.iter().find(|(a, b)| {
                    let sp = side(a, b, &p);
                    let si = side(&a.scale(&k), &b.scale(&k), &interior);
                    !sp.is_zero() && (sp.is_positive() != si.is_positive())
                });
                let Some((a, b)) = axis else { continue };
                let mut support = g.vertices.clone();
                support.push(p.clone());
                let h = newton_boundary(&support);
                let hk = h.face_keys();
                let lost: Vec<_> = old_keys.difference(&hk).collect();
                let new: Vec<_> = hk.difference(&old_keys).collect();
                if lost.len() != 1 || new.len() != 1 || new[0].0 != f.normal || lost[0].0 != f.normal {
                    continue;
                }
                if !f.polygon.vertices.iter().all(|v| h.contains(v)) || !h.is_isolated() {
                    continue;
                }
                out.push(Move {
                    kind: MoveKind::M2Plus,
                    axis: (a.clone(), b.clone()),
                    points: vec![p],
                    result: h.vertices.clone(),
                });
            }
            x += 1;
        }
    }
    out
}

/// All applicable moves of the requested kinds.
pub fn enumerate_moves(g: &NewtonDiagram, kinds: &[MoveKind]) -> Vec<Move> {
    let mut out = Vec::new();
    for k in kinds {
        match k {
            MoveKind::M1Minus => out.extend(m1_minus(g)),
            MoveKind::M2Minus => out.extend(m2_minus(g)),
            MoveKind::M1Plus => out.extend(m1_plus(g)),
            MoveKind::M2Plus => out.extend(m2_plus(g)),
        }
    }
    out
}

/// Apply a move after re-validating it against `g`.
pub fn apply_move(g: &NewtonDiagram, mv: &Move) -> Result<NewtonDiagram> {
    let ok = enumerate_moves(g, &[mv.kind])
        .into_iter()
        .any(|m| m.points == mv.points && (m.axis == mv.axis || (m.axis.0 == mv.axis.1 && m.axis.1 == mv.axis.0)));
    if !ok {
        return Err(Error::InvalidMove(format!("{} with axis {}-{} is not applicable", mv.kind, mv.axis.0, mv.axis.1)));
    }
    let h = newton_boundary(&mv.result);
    if !h.is_isolated() {
        return Err(Error::InvalidMove("result violates the isolatedness criterion".into()));
    }
    if !h.check_qhs() {
        return Err(Error::InvalidMove("result has a positive lattice point".into()));
    }
    Ok(h)
}
