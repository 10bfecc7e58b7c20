//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use singlink::corpus::{generate, generate_armed, generate_trapezoids, CorpusSpec};
use singlink::diagram::newton_boundary;
use singlink::lattice::{IVec3, Rat};
use singlink::resgraph::ResolutionGraph;
use singlink::NewtonDiagram;

pub fn v(x: i64, y: i64, z: i64) -> IVec3 {
    IVec3::new(x, y, z)
}

pub fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn diagram(pts: &[(i64, i64, i64)]) -> NewtonDiagram {
    newton_boundary(&pts.iter().map(|&(a, b, c)| v(a, b, c)).collect::<Vec<_>>())
}

/// Determinant by rational Gaussian elimination with row swaps.
pub fn rat_det_oracle(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    let mut det = Rat::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rat::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det *= pivot.clone();
        for r in col + 1..n {
            let f = m[r][col].clone() / pivot.clone();
            if f.is_zero() {
                continue;
            }
            for c in col..n {
                let x = m[col][c].clone() * f.clone();
                m[r][c] -= x;
            }
        }
    }
    det
}

/// `det(-I)` of a plumbing graph, computed from its weights and edges.
pub fn graph_det_oracle(g: &ResolutionGraph) -> BigInt {
    let n = g.len();
    let mut m = vec![vec![Rat::zero(); n]; n];
    for (i, b) in g.weights.iter().enumerate() {
        m[i][i] = Rat::from_integer(-b);
    }
    for &(a, b) in &g.edges {
        m[a][b] = -Rat::one();
        m[b][a] = -Rat::one();
    }
    let d = rat_det_oracle(m);
    assert!(d.is_integer());
    d.to_integer()
}

/// `b1 - 1/(b2 - ...)` as a reduced pair `(num, den)`.
pub fn cont_frac_pair(bs: &[BigInt]) -> (BigInt, BigInt) {
    let (mut num, mut den) = (BigInt::one(), BigInt::zero());
    for b in bs.iter().rev() {
        let next = b * &num - &den;
        den = num;
        num = next;
    }
    let g = num.gcd(&den);
    (num / &g, den / g)
}

/// `6V3 - 2V2 + V1 - 1` for the region under the triangle `a E1, b E2, c E3`.
pub fn brieskorn_nu_oracle(a: i64, b: i64, c: i64) -> BigInt {
    // one tetrahedron, three coordinate triangles, three axis segments
    let tet = [[a, 0, 0], [0, b, 0], [0, 0, c]];
    let det = |m: &[[i64; 3]; 3]| -> i128 {
        let m: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let v3 = det(&tet).abs();
    let mut v2 = 0i128;
    for (i, j) in [(0usize, 1usize), (1, 2), (0, 2)] {
        let (p, q) = (tet[i], tet[j]);
        let (pi, pj) = (p[i] as i128, p[j] as i128);
        let (qi, qj) = (q[i] as i128, q[j] as i128);
        v2 += (pi * qj - pj * qi).abs();
    }
    let v1 = (a + b + c) as i128;
    BigInt::from(v3 - v2 + v1 - 1)
}

/// `6V3 - 2V2 + V1 - 1` for a convenient diagram, by a cone decomposition from the origin
/// over the polygon boundaries listed by the diagram.
pub fn kouchnirenko_oracle(g: &NewtonDiagram) -> BigInt {
    let tri = |a: &IVec3, b: &IVec3, c: &IVec3| -> BigInt {
        let d = &a.x * (&b.y * &c.z - &b.z * &c.y) - &a.y * (&b.x * &c.z - &b.z * &c.x)
            + &a.z * (&b.x * &c.y - &b.y * &c.x);
        d.abs()
    };
    let mut v3 = BigInt::zero();
    for (_, f) in g.compact_faces() {
        let vs = &f.polygon.vertices;
        for i in 1..vs.len() - 1 {
            v3 += tri(&vs[0], &vs[i], &vs[i + 1]);
        }
    }
    let mut v2 = BigInt::zero();
    for e in &g.edges {
        let [a, b] = &e.ends;
        for k in 0..3 {
            if a.coords()[k].is_zero() && b.coords()[k].is_zero() {
                let (i, j) = ((k + 1) % 3, (k + 2) % 3);
                v2 += (a.coords()[i] * b.coords()[j] - a.coords()[j] * b.coords()[i]).abs();
            }
        }
    }
    let v1: BigInt = g.vertices.iter().filter(|p| p.zeros() == 2).map(|p| p.sum()).sum();
    v3 - v2 + v1 - 1
}

pub fn is_convenient(g: &NewtonDiagram) -> bool {
    (0..3).all(|k| g.vertices.iter().any(|p| p.zeros() == 2 && !p.coords()[k].is_zero()))
}

/// Mixed corpus with every vertex coordinate at most `bound`.
pub fn mixed_corpus(bound: i64, per_generator: usize, seed: u64) -> Vec<NewtonDiagram> {
    let spec = CorpusSpec { bound, max_support: 6, count: per_generator, seed };
    let mut out = generate(&spec).expect("uniform corpus");
    out.extend(generate_armed(&CorpusSpec { seed: seed + 1, ..spec.clone() }).expect("armed corpus"));
    out.extend(generate_trapezoids(&CorpusSpec { seed: seed + 2, ..spec }).expect("trapezoid corpus"));
    let lim = big(bound);
    out.retain(|g| g.vertices.iter().all(|p| p.coords().iter().all(|c| **c <= lim)));
    out
}
