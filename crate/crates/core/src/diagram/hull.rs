use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{segment_contains, segment_lattice_points, Edge, EdgeKind, Face, NewtonDiagram};
use crate::lattice::{cross, face_det, primitive, IVec3, LatticePolygon};

/// Drop duplicates and points that dominate another point.
fn reduce(points: &[IVec3]) -> Vec<IVec3> {
    let set: BTreeSet<IVec3> = points.iter().cloned().collect();
    let pts: Vec<IVec3> = set.into_iter().collect();
    pts.iter().filter(|p| !pts.iter().any(|q| q != *p && p.dominates(q))).cloned().collect()
}

/// Orient a vector to have non-negative entries; `None` for mixed signs or zero.
fn orient_nonneg(v: &IVec3) -> Option<IVec3> {
    if v.is_zero() {
        return None;
    }
    if v.is_nonneg() {
        Some(primitive(v).ok()?)
    } else if (-v).is_nonneg() {
        Some(primitive(&-v).ok()?)
    } else {
        None
    }
}

fn supports(n: &IVec3, p: &IVec3, pts: &[IVec3]) -> bool {
    let m = n.dot(p);
    pts.iter().all(|s| n.dot(s) >= m)
}

/// Convex hull in the xy projection, counter-clockwise, without collinear points.
fn hull2(points: &[IVec3]) -> Vec<IVec3> {
    let mut pts: Vec<IVec3> = points.to_vec();
    pts.sort_by(|a, b| (&a.x, &a.y).cmp(&(&b.x, &b.y)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let turn = |o: &IVec3, a: &IVec3, b: &IVec3| (&a.x - &o.x) * (&b.y - &o.y) - (&a.y - &o.y) * (&b.x - &o.x);
    let mut lower: Vec<IVec3> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && !turn(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<IVec3> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !turn(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Supporting non-compact normals through the segment `[p, q]`.
fn noncompact_normals(p: &IVec3, q: &IVec3, pts: &[IVec3]) -> Vec<IVec3> {
    let d = q - p;
    let mut out: Vec<IVec3> = Vec::new();
    for k in 0..3 {
        if let Some(n) = orient_nonneg(&cross(&d, &IVec3::unit(k))) {
            if supports(&n, p, pts) && !out.contains(&n) {
                out.push(n);
            }
        }
    }
    out
}

/// Compact edge not contained in any compact face.
fn is_free_edge(p: &IVec3, q: &IVec3, pts: &[IVec3]) -> bool {
    let ns = noncompact_normals(p, q, pts);
    for i in 0..ns.len() {
        for j in i + 1..ns.len() {
            let s = &ns[i] + &ns[j];
            if !s.is_positive() {
                continue;
            }
            let m = s.dot(p);
            if pts.iter().filter(|r| s.dot(r) == m).all(|r| segment_contains(p, q, r)) {
                return true;
            }
        }
    }
    false
}

fn edge_kind(a: &IVec3, b: &IVec3) -> EdgeKind {
    if (0..3).any(|i| a[i].is_zero() && b[i].is_zero()) {
        return EdgeKind::CoordinatePlane;
    }
    for i in 0..3 {
        for j in 0..3 {
            if i != j && a[j].is_zero() && b[i].is_zero() && a[i].is_positive() && b[j].is_positive() {
                return EdgeKind::Crossing;
            }
        }
    }
    EdgeKind::Other
}

fn edge_mult(a: &IVec3, b: &IVec3) -> BigInt {
    let pts = segment_lattice_points(a, b);
    let inner = &pts[1..pts.len() - 1];
    BigInt::one() + BigInt::from(inner.iter().filter(|p| !p.is_positive()).count())
}

fn key(a: &IVec3, b: &IVec3) -> (IVec3, IVec3) {
    if a <= b {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    }
}

/// Newton boundary of a finite support set.
pub fn newton_boundary(points: &[IVec3]) -> NewtonDiagram {
    let pts = reduce(points);
    let n = pts.len();

    // compact faces: planes through three points with a positive supporting normal
    let mut faces: Vec<Face> = Vec::new();
    let mut seen: BTreeSet<IVec3> = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..n {
            let dij = &pts[j] - &pts[i];
            for k in j + 1..n {
                let c = cross(&dij, &(&pts[k] - &pts[i]));
                let nrm = if c.is_positive() {
                    c
                } else if (-&c).is_positive() {
                    -&c
                } else {
                    continue;
                };
                let nrm = primitive(&nrm).expect("nonzero");
                if seen.contains(&nrm) {
                    continue;
                }
                let m = nrm.dot(&pts[i]);
                let mut on = Vec::new();
                let mut ok = true;
                for s in &pts {
                    let v = nrm.dot(s);
                    if v < m {
                        ok = false;
                        break;
                    }
                    if v == m {
                        on.push(s.clone());
                    }
                }
                if !ok {
                    continue;
                }
                seen.insert(nrm.clone());
                let poly = hull2(&on);
                faces.push(Face { polygon: LatticePolygon::new(poly), normal: nrm, value: m, compact: true });
            }
        }
    }
    faces.sort_by(|a, b| a.normal.cmp(&b.normal));

    // edges of compact faces
    let mut edge_faces: BTreeMap<(IVec3, IVec3), Vec<usize>> = BTreeMap::new();
    for (fi, f) in faces.iter().enumerate() {
        for (a, b) in f.polygon.edges() {
            edge_faces.entry(key(&a, &b)).or_default().push(fi);
        }
    }

    let mut vertices: BTreeSet<IVec3> = BTreeSet::new();
    for f in &faces {
        vertices.extend(f.polygon.vertices.iter().cloned());
    }

    // compact edges lying in no compact face
    let mut free_edges: Vec<(IVec3, IVec3)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let k = key(&pts[i], &pts[j]);
            if edge_faces.contains_key(&k) {
                continue;
            }
            if is_free_edge(&pts[i], &pts[j], &pts) {
                free_edges.push(k);
            }
        }
    }
    for (a, b) in &free_edges {
        vertices.insert(a.clone());
        vertices.insert(b.clone());
    }
    if vertices.is_empty() && n == 1 {
        vertices.insert(pts[0].clone());
    }

    let ncompact = faces.len();
    let mut noncompact: BTreeMap<IVec3, BTreeSet<IVec3>> = BTreeMap::new();
    let mut raw_edges: Vec<((IVec3, IVec3), [Option<usize>; 2], [Option<IVec3>; 2])> = Vec::new();
    for (k, fs) in &edge_faces {
        if fs.len() >= 2 {
            raw_edges.push((k.clone(), [Some(fs[0]), Some(fs[1])], [None, None]));
        } else {
            let ns = noncompact_normals(&k.0, &k.1, &pts);
            let nc = ns.into_iter().next().expect("boundary edge has a non-compact neighbour");
            let e = noncompact.entry(nc.clone()).or_default();
            e.insert(k.0.clone());
            e.insert(k.1.clone());
            raw_edges.push((k.clone(), [Some(fs[0]), None], [None, Some(nc)]));
        }
    }
    for k in &free_edges {
        let ns = noncompact_normals(&k.0, &k.1, &pts);
        let (n0, n1) = (ns[0].clone(), ns[1].clone());
        for nc in [&n0, &n1] {
            let e = noncompact.entry(nc.clone()).or_default();
            e.insert(k.0.clone());
            e.insert(k.1.clone());
        }
        raw_edges.push((k.clone(), [None, None], [Some(n0), Some(n1)]));
    }

    let nc_index: BTreeMap<IVec3, usize> =
        noncompact.keys().enumerate().map(|(i, nrm)| (nrm.clone(), ncompact + i)).collect();
    for (nrm, ps) in &noncompact {
        let first = ps.iter().next().expect("nonempty").clone();
        faces.push(Face {
            polygon: LatticePolygon::new(ps.iter().cloned().collect()),
            value: nrm.dot(&first),
            normal: nrm.clone(),
            compact: false,
        });
    }

    let edges = raw_edges
        .into_iter()
        .map(|((a, b), cf, nf)| {
            let idx: Vec<usize> = (0..2)
                .map(|s| match (&cf[s], &nf[s]) {
                    (Some(i), _) => *i,
                    (None, Some(nrm)) => nc_index[nrm],
                    _ => unreachable!(),
                })
                .collect();
            let det = face_det(&faces[idx[0]].normal, &faces[idx[1]].normal).unwrap_or_else(|_| BigInt::zero());
            Edge {
                kind: edge_kind(&a, &b),
                mult: edge_mult(&a, &b),
                boundary: !(faces[idx[0]].compact && faces[idx[1]].compact),
                faces: [idx[0], idx[1]],
                det,
                ends: [a, b],
            }
        })
        .collect();

    NewtonDiagram { vertices: vertices.into_iter().collect(), faces, edges }
}
