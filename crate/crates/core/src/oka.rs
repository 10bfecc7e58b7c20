//! Dual resolution graph of a Newton diagram.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::diagram::NewtonDiagram;
use crate::error::{Error, Result};
use crate::lattice::{face_det, neg_cont_frac, IVec3};
use crate::resgraph::ResolutionGraph;

/// The string of curves between two adjacent faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainSpec {
    pub det: BigInt,
    pub lambda: BigInt,
    pub mult: BigInt,
    /// Negated self-intersections, read from the first face towards the second.
    pub weights: Vec<BigInt>,
    /// Normal vector of the chain curve next to the first face (the second face when `det = 1`).
    pub first: IVec3,
}

/// Chain between faces with normals `fa` and `fb`.
pub fn chain_between(fa: &IVec3, fb: &IVec3, m: &BigInt) -> Result<ChainSpec> {
    let t = face_det(fa, fb)?;
    if t.is_one() {
        return Ok(ChainSpec {
            det: t,
            lambda: BigInt::zero(),
            mult: m.clone(),
            weights: Vec::new(),
            first: fb.clone(),
        });
    }
    let mut lambda = BigInt::one();
    while lambda < t {
        if let Some(c) = (fb + &fa.scale(&lambda)).div_exact(&t) {
            let weights = neg_cont_frac(&t, &lambda)?;
            // walk the chain and make sure it lands on the second face
            let (mut prev, mut cur) = (fa.clone(), c.clone());
            for b in &weights {
                let next = &cur.scale(b) - &prev;
                prev = cur;
                cur = next;
            }
            if &cur != fb {
                return Err(Error::Inconsistent(format!("chain from {fa} does not reach {fb}")));
            }
            return Ok(ChainSpec { det: t, lambda, mult: m.clone(), weights, first: c });
        }
        lambda += 1;
    }
    Err(Error::Inconsistent(format!("no integral chain vector between {fa} and {fb}")))
}

/// Self-intersection of the curve of compact face `fi`.
pub fn self_intersection(g: &NewtonDiagram, fi: usize) -> Result<BigInt> {
    let f = &g.faces[fi];
    if !f.compact {
        return Err(Error::InvalidArgument("self-intersection is defined for compact faces".into()));
    }
    let mut sum = IVec3::zero();
    for e in g.face_edges(fi) {
        let other = NewtonDiagram::other_face(e, fi);
        let c = chain_between(&f.normal, &g.faces[other].normal, &e.mult)?;
        sum = &sum + &c.first.scale(&e.mult);
    }
    // b F + sum = 0
    let neg = -&sum;
    let mut b: Option<BigInt> = None;
    for k in 0..3 {
        if f.normal[k].is_zero() {
            continue;
        }
        if !(&neg[k] % &f.normal[k]).is_zero() {
            return Err(Error::InvalidDiagram(format!("face {} has a non-integral self-intersection", f.normal)));
        }
        let q = &neg[k] / &f.normal[k];
        if b.as_ref().is_some_and(|x| x != &q) {
            return Err(Error::InvalidDiagram(format!("face {} gives inconsistent self-intersections", f.normal)));
        }
        b = Some(q);
    }
    let b = b.expect("compact normal is positive");
    if !b.is_negative() {
        return Err(Error::InvalidDiagram(format!("face {} has self-intersection {b}", f.normal)));
    }
    Ok(b)
}

/// The resolution graph together with the graph vertex of every compact face.
#[derive(Clone, Debug)]
pub struct OkaGraph {
    pub graph: ResolutionGraph,
    /// `(face index, vertex)` pairs.
    pub face_vertex: Vec<(usize, usize)>,
}

fn push_string(g: &mut ResolutionGraph, weights: &[BigInt], from: Option<usize>) -> Option<usize> {
    let mut prev = from;
    for b in weights {
        let v = g.add_vertex(-b);
        if let Some(p) = prev {
            g.add_edge(p, v);
        }
        prev = Some(v);
    }
    prev
}

/// Oka's graph with the face-to-vertex correspondence.
pub fn oka_graph_detailed(gm: &NewtonDiagram) -> Result<OkaGraph> {
    if !gm.is_isolated() {
        return Err(Error::InvalidDiagram("the diagram violates the isolatedness criterion".into()));
    }
    if let Some(p) = gm.positive_lattice_point() {
        return Err(Error::InvalidDiagram(format!("positive lattice point {p} on the diagram")));
    }
    let mut g = ResolutionGraph::new();
    if gm.compact_count() == 0 {
        if !gm.is_segment() {
            return Err(Error::InvalidDiagram("a diagram without faces must be a segment".into()));
        }
        let e = &gm.edges[0];
        let c = chain_between(&gm.faces[e.faces[0]].normal, &gm.faces[e.faces[1]].normal, &BigInt::one())?;
        push_string(&mut g, &c.weights, None);
        return Ok(OkaGraph { graph: g, face_vertex: Vec::new() });
    }
    let mut face_vertex = Vec::new();
    let mut vertex_of = vec![usize::MAX; gm.faces.len()];
    for (fi, _) in gm.compact_faces() {
        let b = self_intersection(gm, fi)?;
        let v = g.add_vertex(b);
        vertex_of[fi] = v;
        face_vertex.push((fi, v));
    }
    for e in &gm.edges {
        let (fa, fb) = (&gm.faces[e.faces[0]], &gm.faces[e.faces[1]]);
        let (ia, ib) = match (fa.compact, fb.compact) {
            (true, _) => (e.faces[0], e.faces[1]),
            (false, true) => (e.faces[1], e.faces[0]),
            (false, false) => {
                return Err(Error::InvalidDiagram("compact edge outside every compact face".into()));
            }
        };
        let c = chain_between(&gm.faces[ia].normal, &gm.faces[ib].normal, &e.mult)?;
        let mut k = BigInt::zero();
        while k < e.mult {
            let end = push_string(&mut g, &c.weights, Some(vertex_of[ia]));
            if gm.faces[ib].compact {
                g.add_edge(end.expect("start vertex"), vertex_of[ib]);
            }
            k += 1;
        }
    }
    Ok(OkaGraph { graph: g, face_vertex })
}

/// Oka's dual resolution graph.
pub fn oka_graph(gm: &NewtonDiagram) -> Result<ResolutionGraph> {
    Ok(oka_graph_detailed(gm)?.graph)
}
