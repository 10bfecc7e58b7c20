use num_bigint::BigInt;
use singlink::diagram::newton_boundary;
use singlink::invariants::{geom_genus, milnor, multiplicity};
use singlink::lattice::{rat, IVec3};
use singlink::oka::{chain_between, oka_graph, self_intersection};
use singlink::resgraph::{
    chain_leg_product, decompose, graph_det, graph_iso, is_negative_definite, minimize, orb_iso, orbifold,
    orbifold_det, ResolutionGraph,
};

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn brieskorn(a: i64, b: i64, c: i64) -> singlink::NewtonDiagram {
    newton_boundary(&[IVec3::new(a, 0, 0), IVec3::new(0, b, 0), IVec3::new(0, 0, c)])
}

#[test]
fn chain_examples() {
    let f = IVec3::new(6, 10, 15);
    let c = chain_between(&f, &IVec3::unit(0), &big(1)).unwrap();
    assert_eq!((c.det.clone(), c.lambda.clone()), (big(5), big(4)));
    assert_eq!(c.weights, vec![big(2); 4]);
    assert_eq!(c.first, IVec3::new(5, 8, 12));
    let c = chain_between(&f, &IVec3::unit(2), &big(1)).unwrap();
    assert_eq!((c.det.clone(), c.lambda.clone(), c.weights.clone()), (big(2), big(1), vec![big(2)]));
    let c = chain_between(&IVec3::new(1, 1, 1), &IVec3::new(1, 1, 2), &big(1)).unwrap();
    assert_eq!(c.det, big(1));
    assert!(c.weights.is_empty());
}

#[test]
fn e8_pipeline() {
    let g = brieskorn(5, 3, 2);
    assert_eq!(self_intersection(&g, 0).unwrap(), big(-2));
    let res = oka_graph(&g).unwrap();
    assert_eq!(res.len(), 8);
    assert!(is_negative_definite(&res));
    assert_eq!(graph_det(&res).unwrap(), big(1));
    let d = decompose(&res);
    assert_eq!(d.nodes.len(), 1);
    let mut lens: Vec<usize> = d.legs.iter().map(|l| l.path.len()).collect();
    lens.sort();
    assert_eq!(lens, vec![1, 2, 4]);
    let go = orbifold(&minimize(&res).unwrap()).unwrap();
    assert_eq!(go.euler, vec![rat(-1, 30)]);
    assert_eq!(go.legs_at(0), vec![big(2), big(3), big(5)]);
    assert_eq!(orbifold_det(&go).unwrap() * rat(chain_leg_product(&go), 1), rat(1, 1));
    assert_eq!(milnor(&g).unwrap(), big(8));
    assert_eq!(geom_genus(&g).unwrap(), big(0));
    assert_eq!(multiplicity(&g).unwrap(), big(2));
}

#[test]
fn a_series_strings() {
    for n in 2..=20 {
        let g = newton_boundary(&[IVec3::new(0, 1, 1), IVec3::new(n, 0, 0)]);
        let res = minimize(&oka_graph(&g).unwrap()).unwrap();
        assert_eq!(res.len() as i64, n - 1);
        assert!(res.weights.iter().all(|b| b == &big(-2)));
        assert_eq!(graph_det(&res).unwrap(), big(n));
        assert_eq!(milnor(&g).unwrap(), big(n - 1));
        assert_eq!(multiplicity(&g).unwrap(), big(2));
        let go = orbifold(&res).unwrap();
        assert_eq!(go.free_edge, Some(big(n)));
    }
}

#[test]
fn blow_up_then_minimize() {
    let e8 = oka_graph(&brieskorn(5, 3, 2)).unwrap();
    let (a, b) = e8.edges[0];
    let mut up = ResolutionGraph { weights: e8.weights.clone(), edges: Vec::new() };
    for &(x, y) in &e8.edges[1..] {
        up.add_edge(x, y);
    }
    let c = up.add_vertex(big(-1));
    up.weights[a] -= 1;
    up.weights[b] -= 1;
    up.add_edge(a, c);
    up.add_edge(c, b);
    assert!(!graph_iso(&up, &e8));
    assert!(graph_iso(&minimize(&up).unwrap(), &e8));
}

#[test]
fn mirror_strings_are_isomorphic() {
    let a = ResolutionGraph::from_parts(vec![-2, -3, -5], vec![(0, 1), (1, 2)]);
    let b = ResolutionGraph::from_parts(vec![-5, -3, -2], vec![(0, 1), (1, 2)]);
    let c = ResolutionGraph::from_parts(vec![-2, -2, -2], vec![(0, 1), (1, 2)]);
    let d = ResolutionGraph::from_parts(vec![-2, -2, -2, -2], vec![(0, 1), (1, 2), (2, 3)]);
    assert!(graph_iso(&a, &b));
    assert!(!graph_iso(&c, &d));
    assert!(orb_iso(&orbifold(&a).unwrap(), &orbifold(&b).unwrap()));
}
