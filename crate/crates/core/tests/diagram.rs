use num_bigint::BigInt;
use singlink::diagram::{
    apply_move, canonical, d_minimal, det_criterion_check, enumerate_moves, equivalent, newton_boundary, EdgeKind,
    MoveKind,
};
use singlink::lattice::IVec3;

fn v(x: i64, y: i64, z: i64) -> IVec3 {
    IVec3::new(x, y, z)
}

fn pts(list: &[(i64, i64, i64)]) -> Vec<IVec3> {
    list.iter().map(|&(a, b, c)| v(a, b, c)).collect()
}

#[test]
fn brieskorn_single_face() {
    let g = newton_boundary(&pts(&[(5, 0, 0), (0, 3, 0), (0, 0, 2)]));
    assert_eq!(g.compact_count(), 1);
    let f = &g.faces[0];
    assert_eq!(f.normal, v(6, 10, 15));
    assert_eq!(f.value, BigInt::from(30));
    assert!(g.is_isolated());
    assert!(g.check_qhs());
    let boundary: Vec<_> = g.edges.iter().filter(|e| e.boundary).collect();
    assert_eq!(boundary.len(), 3);
    assert!(boundary.iter().all(|e| e.kind == EdgeKind::CoordinatePlane));
    let dets: Vec<BigInt> = g.edges.iter().map(|e| e.det.clone()).collect();
    let mut d: Vec<i64> = dets.iter().map(|x| i64::try_from(x).unwrap()).collect();
    d.sort();
    assert_eq!(d, vec![2, 3, 5]);
}

#[test]
fn segment_support() {
    let g = newton_boundary(&pts(&[(4, 0, 0), (0, 1, 1)]));
    assert!(g.is_segment());
    assert_eq!(g.edges.len(), 1);
    assert_eq!(g.edges[0].det, BigInt::from(4));
    assert!(g.is_isolated());
    assert!(g.check_qhs());
    assert!(det_criterion_check(&g));
}

#[test]
fn single_vertex_support() {
    let g = newton_boundary(&pts(&[(1, 1, 1)]));
    assert_eq!(g.vertices, vec![v(1, 1, 1)]);
    assert!(g.edges.is_empty());
    assert_eq!(g.compact_count(), 0);
}

#[test]
fn isolatedness_failure() {
    let g = newton_boundary(&pts(&[(2, 2, 0), (0, 0, 3)]));
    assert!(!g.is_isolated());
}

#[test]
fn non_qhs_brieskorn() {
    let g = newton_boundary(&pts(&[(3, 0, 0), (0, 7, 0), (0, 0, 21)]));
    assert!(g.is_isolated());
    assert_eq!(g.positive_lattice_point(), Some(v(1, 1, 11)));
}

#[test]
fn removable_triangle_reduces_to_segment() {
    // (a,b,c) = (2,1,1): triangle (2,0,1),(0,1,1),(1,1,0)
    let g = newton_boundary(&pts(&[(2, 0, 1), (0, 1, 1), (1, 1, 0)]));
    assert!(g.is_valid());
    let d = d_minimal(&g).unwrap();
    assert!(d.is_segment());
    assert_eq!(d.edges[0].det, BigInt::from(3));
    assert!(!det_criterion_check(&g));
}

#[test]
fn segment_orientations_equivalent() {
    let a = newton_boundary(&pts(&[(0, 1, 1), (5, 0, 0)]));
    let b = newton_boundary(&pts(&[(1, 0, 1), (0, 5, 0)]));
    let c = newton_boundary(&pts(&[(1, 0, 1), (0, 4, 0)]));
    assert!(equivalent(&a, &b).unwrap());
    assert!(!equivalent(&a, &c).unwrap());
}

#[test]
fn segment_plus_vertex() {
    let g = newton_boundary(&pts(&[(0, 1, 1), (4, 0, 0)]));
    let mv = enumerate_moves(&g, &[MoveKind::M1Plus]);
    let m = mv.iter().find(|m| m.points == vec![v(1, 0, 1)]).expect("M1+ adding (1,0,1)");
    let h = apply_move(&g, m).unwrap();
    assert_eq!(h.compact_count(), 1);
}

#[test]
fn brieskorn_is_fixpoint() {
    let g = newton_boundary(&pts(&[(5, 0, 0), (0, 3, 0), (0, 0, 2)]));
    let d = d_minimal(&g).unwrap();
    assert!(d.same_up_to_permutation(&g));
    assert!(canonical(&g).unwrap().same_up_to_permutation(&g));
    assert!(enumerate_moves(&d, &[MoveKind::M1Minus, MoveKind::M2Minus]).is_empty());
}

#[test]
fn quadrangle_ambiguity() {
    // canonical trapezoid with p=q=1, r1=r2=0, n=3, t=3
    let g = newton_boundary(&pts(&[(1, 0, 3), (0, 1, 3), (0, 3, 0), (3, 0, 0)]));
    assert!(g.is_valid());
    let d = d_minimal(&g).unwrap();
    // the two triangles, which swap under a permutation
    let candidates = [pts(&[(0, 1, 3), (3, 0, 0), (1, 2, 0)]), pts(&[(1, 0, 3), (2, 1, 0), (0, 3, 0)])];
    assert!(candidates.iter().any(|c| newton_boundary(c).same_up_to_permutation(&d)), "{d}");
    let reps = singlink::diagram::minimal::minimal_representatives(&canonical(&g).unwrap());
    assert_eq!(reps.len(), 3);
}

#[test]
fn removable_trapezoid_reduces_to_triangle() {
    // the smaller trapezoid is also M2-minimal but the triangle is distinguished
    let g = newton_boundary(&pts(&[(0, 0, 5), (0, 8, 1), (9, 0, 1), (9, 2, 0)]));
    let d = d_minimal(&g).unwrap();
    assert!(d.same_up_to_permutation(&newton_boundary(&pts(&[(0, 0, 5), (0, 10, 0), (9, 0, 1)]))), "{d}");
}
