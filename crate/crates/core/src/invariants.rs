//! Milnor number, geometric genus and multiplicity read off a Newton diagram.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::diagram::{newton_boundary, EdgeKind, NewtonDiagram};
use crate::error::{Error, Result};
use crate::lattice::IVec3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub milnor: BigInt,
    pub geometric_genus: BigInt,
    pub multiplicity: BigInt,
}

fn det3(a: &IVec3, b: &IVec3, c: &IVec3) -> BigInt {
    crate::lattice::cross(b, c).dot(a)
}

/// Add `d·E_k` for every axis the diagram misses. `d` starts at `2·(max coordinate sum) + 3`
/// and is doubled until the completion keeps every face and adds exactly one triangle per axis.
pub fn convenient_completion(g: &NewtonDiagram) -> NewtonDiagram {
    let missing: Vec<usize> =
        (0..3).filter(|&k| !g.vertices.iter().any(|v| v.zeros() == 2 && !v[k].is_zero())).collect();
    if missing.is_empty() {
        return g.clone();
    }
    let mmax = g.vertices.iter().map(|v| v.sum()).max().unwrap_or_else(BigInt::zero);
    let mut d = mmax * 2 + 3;
    let old = g.face_keys();
    loop {
        let mut pts = g.vertices.clone();
        for &k in &missing {
            pts.push(IVec3::unit(k).scale(&d));
        }
        let c = newton_boundary(&pts);
        let keys = c.face_keys();
        let keeps = old.is_subset(&keys) && keys.len() == old.len() + missing.len();
        if keeps && g.vertices.iter().all(|v| c.vertices.contains(v)) {
            return c;
        }
        d *= 2;
    }
}

/// `6V3 - 2V2 + V1 - 1` of the region under a convenient diagram.
fn nu(g: &NewtonDiagram) -> Result<BigInt> {
    let mut v3 = BigInt::zero();
    for (_, f) in g.compact_faces() {
        let v = &f.polygon.vertices;
        for i in 1..v.len() - 1 {
            v3 += det3(&v[0], &v[i], &v[i + 1]).abs();
        }
    }
    let mut v2 = BigInt::zero();
    for e in &g.edges {
        if e.kind != EdgeKind::CoordinatePlane {
            continue;
        }
        let (a, b) = (&e.ends[0], &e.ends[1]);
        v2 += crate::lattice::cross(a, b).sum().abs();
    }
    let mut v1 = BigInt::zero();
    for v in &g.vertices {
        if v.zeros() == 2 {
            v1 += v.sum();
        }
    }
    if g.vertices.len() == 1 {
        return Err(Error::InvalidDiagram("a single vertex has no Milnor number".into()));
    }
    Ok(v3 - v2 + v1 - 1)
}

/// Milnor number via the volume formula on the convenient completion.
pub fn milnor(g: &NewtonDiagram) -> Result<BigInt> {
    if !g.is_isolated() {
        return Err(Error::InvalidDiagram("the diagram violates the isolatedness criterion".into()));
    }
    nu(&convenient_completion(g))
}

/// Number of strictly positive lattice points on or under the diagram.
pub fn geom_genus(g: &NewtonDiagram) -> Result<BigInt> {
    if !g.is_isolated() {
        return Err(Error::InvalidDiagram("the diagram violates the isolatedness criterion".into()));
    }
    let c = convenient_completion(g);
    let faces: Vec<(IVec3, BigInt)> = c.compact_faces().map(|(_, f)| (f.normal.clone(), f.value.clone())).collect();
    let xmax = c.vertices.iter().map(|v| v.x.clone()).max().unwrap_or_else(BigInt::zero);
    let ymax = c.vertices.iter().map(|v| v.y.clone()).max().unwrap_or_else(BigInt::zero);
    let mut count = BigInt::zero();
    let mut x = BigInt::from(1);
    while x <= xmax {
        let mut y = BigInt::from(1);
        while y <= ymax {
            let top = faces
                .iter()
                .map(|(n, m)| (m - &n.x * &x - &n.y * &y).div_floor(&n.z))
                .max()
                .unwrap_or_else(BigInt::zero);
            if top.is_positive() {
                count += top;
            }
            y += 1;
        }
        x += 1;
    }
    Ok(count)
}

/// Least coordinate sum over the vertices.
pub fn multiplicity(g: &NewtonDiagram) -> Result<BigInt> {
    g.vertices.iter().map(|v| v.sum()).min().ok_or_else(|| Error::InvalidDiagram("empty diagram".into()))
}

pub fn invariants(g: &NewtonDiagram) -> Result<InvariantReport> {
    Ok(InvariantReport { milnor: milnor(g)?, geometric_genus: geom_genus(g)?, multiplicity: multiplicity(g)? })
}
