//! M1-minimal, canonical, minimal and d-minimal representatives of a move class.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::moves::{enumerate_moves, m2_plus, MoveKind};
use super::{newton_boundary, Face, NewtonDiagram};
use crate::error::{Error, Result};
use crate::invariants::milnor;
use crate::lattice::{IVec3, PERMS};

fn require_valid(g: &NewtonDiagram) -> Result<()> {
    let rep = g.check_isolated();
    if !rep.ok {
        return Err(Error::InvalidDiagram(rep.failures.join("; ")));
    }
    if let Some(p) = g.positive_lattice_point() {
        return Err(Error::InvalidDiagram(format!("positive lattice point {p} on the diagram")));
    }
    Ok(())
}

/// True when the class contains the segment `[(0,1,1),(n,0,0)]`.
pub fn is_segment_class(g: &NewtonDiagram) -> bool {
    g.is_segment() || [IVec3::new(0, 1, 1), IVec3::new(1, 0, 1), IVec3::new(1, 1, 0)].iter().any(|p| g.contains(p))
}

/// The segment diagram `[(0,1,1),(n,0,0)]`.
pub fn segment_diagram(n: &BigInt) -> NewtonDiagram {
    newton_boundary(&[IVec3::new(0, 1, 1), IVec3::from_big(n.clone(), BigInt::zero(), BigInt::zero())])
}

/// Remove triangles by M1− until none can be removed.
pub fn m1_minimal(g: &NewtonDiagram) -> NewtonDiagram {
    let mut cur = g.clone();
    loop {
        let mv = enumerate_moves(&cur, &[MoveKind::M1Minus]);
        match mv.into_iter().next() {
            Some(m) => cur = newton_boundary(&m.result),
            None => return cur,
        }
    }
}

fn grow(g: &NewtonDiagram) -> NewtonDiagram {
    let mut cur = g.clone();
    loop {
        match m2_plus(&cur).into_iter().next() {
            Some(m) => cur = newton_boundary(&m.result),
            None => return cur,
        }
    }
}

/// The canonical representative: M1-minimal with every face maximal in its plane.
pub fn canonical(g: &NewtonDiagram) -> Result<NewtonDiagram> {
    require_valid(g)?;
    if is_segment_class(g) {
        return Err(Error::InvalidArgument("the class of a segment has no canonical representative".into()));
    }
    Ok(grow(&m1_minimal(g)))
}

/// All minimal representatives reachable from `start` by M2− moves.
pub fn minimal_representatives(start: &NewtonDiagram) -> Vec<NewtonDiagram> {
    let mut seen: BTreeSet<Vec<IVec3>> = BTreeSet::new();
    let mut queue = VecDeque::from([start.clone()]);
    seen.insert(start.vertices.clone());
    let mut out = Vec::new();
    while let Some(g) = queue.pop_front() {
        let moves = enumerate_moves(&g, &[MoveKind::M2Minus]);
        if moves.is_empty() {
            out.push(g);
            continue;
        }
        for m in moves {
            if seen.insert(m.result.clone()) {
                queue.push_back(newton_boundary(&m.result));
            }
        }
    }
    out
}

/// Placement rank of a moving triangle `(p,0,1),(0,q,1),R` with `R` on the third coordinate plane.
fn moving_rank(f: &Face) -> Option<(u8, BigInt)> {
    let v = &f.polygon.vertices;
    if v.len() != 3 {
        return None;
    }
    let one = BigInt::one();
    let mut best: Option<(u8, BigInt)> = None;
    for k in 0..3 {
        let (i, j) = ((k + 1) % 3, (k + 2) % 3);
        for perm in PERMS.iter() {
            let (pp, qq, rr) = (&v[perm[0]], &v[perm[1]], &v[perm[2]]);
            let shape = pp[k] == one
                && qq[k] == one
                && rr[k].is_zero()
                && pp[j].is_zero()
                && qq[i].is_zero()
                && !pp[i].is_zero()
                && !qq[j].is_zero();
            if !shape {
                continue;
            }
            let (p, q) = (&pp[i], &qq[j]);
            let orients: Vec<(usize, usize)> = if p < q {
                vec![(i, j)]
            } else if q < p {
                vec![(j, i)]
            } else {
                vec![(i, j), (j, i)]
            };
            for (z1, z2) in orients {
                let class = if rr[z2].is_zero() {
                    0
                } else if rr[z1].is_zero() {
                    1
                } else {
                    2
                };
                let r = (class, rr[z2].clone());
                if best.as_ref().map_or(true, |b| &r < b) {
                    best = Some(r);
                }
            }
        }
    }
    best
}

type RepKey = (usize, Vec<Option<(u8, BigInt)>>, Vec<IVec3>);

/// Distinguished choice among minimal representatives: triangles before trapezoids, then
/// moving-triangle placement, then the least normal form.
fn select(reps: Vec<NewtonDiagram>) -> NewtonDiagram {
    if reps.len() == 1 {
        return reps.into_iter().next().expect("one");
    }
    // normals whose face differs between representatives
    let mut by_normal: BTreeMap<IVec3, BTreeSet<Vec<IVec3>>> = BTreeMap::new();
    for r in &reps {
        for (n, v) in r.face_keys() {
            by_normal.entry(n).or_default().insert(v);
        }
    }
    let varying: BTreeSet<IVec3> = by_normal.into_iter().filter(|(_, s)| s.len() > 1).map(|(n, _)| n).collect();
    let key = |r: &NewtonDiagram| -> RepKey {
        let ranks = varying
            .iter()
            .map(|n| r.compact_faces().find(|(_, f)| &f.normal == n).and_then(|(_, f)| moving_rank(f)))
            .collect();
        let quads = r.compact_faces().filter(|(_, f)| f.polygon.vertices.len() > 3).count();
        (quads, ranks, r.normal_form().0)
    };
    reps.into_iter().min_by_key(key).expect("nonempty")
}

/// The d-minimal representative of the class of `g`, permutation-normalized.
pub fn d_minimal(g: &NewtonDiagram) -> Result<NewtonDiagram> {
    require_valid(g)?;
    if is_segment_class(g) {
        let mu = milnor(g)?;
        return Ok(segment_diagram(&(mu + 1)).normalized());
    }
    let canon = grow(&m1_minimal(g));
    log::debug!("canonical representative {canon}");
    let reps = minimal_representatives(&canon);
    log::debug!("{} minimal representatives", reps.len());
    Ok(select(reps).normalized())
}

/// Same move class up to a permutation of coordinates.
pub fn equivalent(a: &NewtonDiagram, b: &NewtonDiagram) -> Result<bool> {
    Ok(d_minimal(a)?.vertices == d_minimal(b)?.vertices)
}

/// Every edge between a compact and a non-compact face has determinant greater than one.
pub fn det_criterion_check(g: &NewtonDiagram) -> bool {
    if g.is_segment() {
        return g.edges.iter().all(|e| e.det > BigInt::one());
    }
    g.edges.iter().filter(|e| g.faces[e.faces[0]].compact != g.faces[e.faces[1]].compact).all(|e| e.det > BigInt::one())
}
