//! Acceptance suite: prints one pass/fail line per criterion and exits non-zero on any failure.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use common::{big, brieskorn_nu_oracle, cont_frac_pair, diagram, graph_det_oracle, mixed_corpus, rat_det_oracle};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use singlink::diagram::{
    apply_move, classify_faces, d_minimal, enumerate_moves, structure_class, EdgeKind, FaceShape, MoveKind,
};
use singlink::invariants::{geom_genus, milnor, multiplicity};
use singlink::inverse::{forward_orbifold, invert, realizable, Route};
use singlink::lattice::{comb_area, eval_neg_cont_frac, IVec3, Rat};
use singlink::oka::{chain_between, oka_graph, self_intersection};
use singlink::resgraph::{
    chain_leg_product, decompose, graph_det, graph_iso, is_negative_definite, minimize, orbifold, orbifold_det,
    orbifold_negative_definite, OrbifoldDiagram, ResolutionGraph,
};
use singlink::{Error, NewtonDiagram};

type Outcome = Result<String, String>;

/// A corpus diagram with its d-minimal representative.
struct Entry {
    label: String,
    source: NewtonDiagram,
    dmin: NewtonDiagram,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn segment_supports() -> Vec<(String, NewtonDiagram)> {
    (2..=12).map(|n| (format!("segment {n}"), diagram(&[(n, 0, 0), (0, 1, 1)]))).collect()
}

fn brieskorn_supports() -> Vec<(String, NewtonDiagram)> {
    let mut out = Vec::new();
    for a in 2..=9 {
        for b in a..=9 {
            for c in b..=9 {
                let g = diagram(&[(a, 0, 0), (0, b, 0), (0, 0, c)]);
                if g.is_valid() {
                    out.push((format!("brieskorn {a},{b},{c}"), g));
                }
            }
        }
    }
    out
}

/// Trapezoid `(p,0,n),(0,q,n),(r1,r2+tq,0),(r1+tp,r2,0)` closed off by axis points just above its plane.
fn trapezoid_supports() -> Vec<(String, NewtonDiagram)> {
    let mut out = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for p in 1..=3i64 {
        for q in 1..=3i64 {
            if p.gcd(&q) != 1 {
                continue;
            }
            for n in 2..=3 {
                for t in 1..=2 {
                    for r1 in 0..=2 {
                        for r2 in 0..=2 {
                            let quad = [(p, 0, n), (0, q, n), (r1, r2 + t * q, 0), (r1 + t * p, r2, 0)];
                            let normal = [n * q, n * p, r1 * q + r2 * p + (t - 1) * p * q];
                            let m = normal[0] * p + normal[2] * n;
                            for mask in 0..8 {
                                let mut pts: Vec<(i64, i64, i64)> = quad.to_vec();
                                for k in 0..3 {
                                    if mask & (1 << k) != 0 && normal[k] > 0 {
                                        let mut c = [0i64; 3];
                                        c[k] = m / normal[k] + 1;
                                        pts.push((c[0], c[1], c[2]));
                                    }
                                }
                                let g = diagram(&pts);
                                if g.is_valid() && seen.insert(g.vertices.clone()) {
                                    out.push((format!("trapezoid p={p} q={q} n={n} t={t} r=({r1},{r2})"), g));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

fn curated() -> Vec<(String, NewtonDiagram)> {
    let mut out = segment_supports();
    out.extend(brieskorn_supports());
    out.push(("symmetric example".into(), diagram(&[(0, 0, 2), (2, 0, 1), (0, 3, 1), (7, 1, 0)])));
    out.extend(trapezoid_supports());
    out
}

fn criterion_1(entries: &[Entry], failures: usize) -> Outcome {
    let mut by_class: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    let mut bad = Vec::new();
    for e in entries {
        let class = structure_class(&e.dmin).to_string();
        let ok = match forward_orbifold(&e.dmin).and_then(|go| invert(&go)) {
            Ok(inv) => inv.diagram.same_up_to_permutation(&e.dmin),
            Err(_) => false,
        };
        let s = by_class.entry(class).or_default();
        s.0 += 1;
        if ok {
            s.1 += 1;
        } else {
            bad.push(e.label.clone());
        }
    }
    let summary: Vec<String> = by_class.iter().map(|(c, (n, ok))| format!("{c} {ok}/{n}")).collect();
    if bad.is_empty() && failures == 0 {
        Ok(format!("{} diagrams round-trip ({})", entries.len(), summary.join(", ")))
    } else {
        Err(format!(
            "{} round-trip failures, {failures} d-minimal failures; first: {:?}",
            bad.len(),
            bad.iter().take(5).collect::<Vec<_>>()
        ))
    }
}

fn criterion_2() -> Outcome {
    for n in 2..=20i64 {
        let g = diagram(&[(n, 0, 0), (0, 1, 1)]);
        let res = minimize(&oka_graph(&g).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(res.len() as i64 == n - 1, || format!("n={n}: {} vertices", res.len()))?;
        ensure(res.weights.iter().all(|b| b == &big(-2)), || format!("n={n}: weights {:?}", res.weights))?;
        let mut deg = vec![0; res.len()];
        for &(a, b) in &res.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        ensure(res.edges.len() + 1 == res.len() && deg.iter().all(|&d| d <= 2), || format!("n={n}: not a string"))?;
        ensure(graph_det_oracle(&res) == big(n), || format!("n={n}: determinant {}", graph_det_oracle(&res)))?;
    }
    Ok("strings of n-1 (-2)-vertices with determinant n for n=2..20".into())
}

fn criterion_3() -> Outcome {
    let g = diagram(&[(5, 0, 0), (0, 3, 0), (0, 0, 2)]);
    let b = self_intersection(&g, 0).map_err(|e| e.to_string())?;
    ensure(b == big(-2), || format!("b = {b}"))?;
    let res = oka_graph(&g).map_err(|e| e.to_string())?;
    let d = decompose(&res);
    ensure(d.nodes.len() == 1, || format!("{} nodes", d.nodes.len()))?;
    let node = d.nodes[0];
    let mut fractions: Vec<(BigInt, BigInt)> =
        d.legs.iter().map(|l| cont_frac_pair(&l.path.iter().map(|&x| -&res.weights[x]).collect::<Vec<_>>())).collect();
    fractions.sort();
    let want = vec![(big(2), big(1)), (big(3), big(2)), (big(5), big(4))];
    ensure(fractions == want, || format!("chains {fractions:?}"))?;
    ensure(graph_det_oracle(&res) == big(1), || "det(G) != 1".into())?;
    // e = b + sum of omega/alpha
    let e = fractions
        .iter()
        .fold(Rat::from_integer(res.weights[node].clone()), |acc, (a, w)| acc + Rat::new(w.clone(), a.clone()));
    ensure(e == Rat::new(big(-1), big(30)), || format!("oracle e = {e}"))?;
    let go = orbifold(&minimize(&res).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(go.euler == vec![e.clone()], || format!("orbifold e = {:?}", go.euler))?;
    ensure(go.legs_at(0) == vec![big(2), big(3), big(5)], || format!("legs {:?}", go.legs_at(0)))?;
    let inv = invert(&go).map_err(|e| e.to_string())?;
    ensure(inv.route == Route::WeightedHomogeneous(11), || format!("route {}", inv.route))?;
    ensure(inv.diagram.same_up_to_permutation(&g), || format!("inverted to {}", inv.diagram))?;
    Ok("b=-2, chains 2/1 3/2 5/4, det 1, e=-1/30, inverted by weighted homogeneous case 11".into())
}

fn unrealizable_graph() -> ResolutionGraph {
    ResolutionGraph::from_parts(vec![-3, -7, -1, -2, -3, -3], vec![(0, 1), (1, 2), (2, 3), (1, 4), (2, 5)])
}

fn criterion_4() -> Outcome {
    let g = unrealizable_graph();
    ensure(is_negative_definite(&g), || "not negative definite".into())?;
    match realizable(&g) {
        Ok(inv) => Err(format!("realized by {}", inv.diagram)),
        Err(Error::NotRealizable { stage, reason }) => Ok(format!("negative definite, rejected at {stage}: {reason}")),
        Err(e) => Err(format!("unexpected error {e}")),
    }
}

fn check_gr(g: &ResolutionGraph) -> Result<(), String> {
    let det = graph_det_oracle(g);
    ensure(graph_det(g).map_err(|e| e.to_string())? == det, || "library determinant disagrees".into())?;
    let go = orbifold(g).map_err(|e| e.to_string())?;
    match &go.free_edge {
        Some(n) => ensure(*n == det, || format!("free edge {n} vs det {det}")),
        None => {
            let o = orbifold_det(&go).expect("nodes");
            // independent elimination on -I^o
            let neg: Vec<Vec<Rat>> = go.matrix().into_iter().map(|r| r.into_iter().map(|x| -x).collect()).collect();
            ensure(rat_det_oracle(neg) == o, || "orbifold determinant disagrees".into())?;
            let rhs = o * Rat::from_integer(chain_leg_product(&go));
            ensure(Rat::from_integer(det.clone()) == rhs, || format!("det {det} vs {rhs}"))
        }
    }
}

fn criterion_5(entries: &[Entry]) -> Outcome {
    let mut graphs = 0;
    for e in entries {
        let g = oka_graph(&e.dmin).map_err(|x| format!("{}: {x}", e.label))?;
        let m = minimize(&g).map_err(|x| format!("{}: {x}", e.label))?;
        for h in [&g, &m] {
            check_gr(h).map_err(|x| format!("{}: {x}", e.label))?;
            graphs += 1;
        }
    }
    Ok(format!("det(G) = det(G^o) * product of chain and leg determinants on {graphs} graphs"))
}

fn criterion_6(entries: &[Entry]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let pool: Vec<&Entry> = entries.iter().filter(|e| !e.source.is_segment()).collect();
    let mut pairs = 0;
    let mut steps = 0;
    while pairs < 200 {
        let start = &pool[rng.gen_range(0..pool.len())].source;
        let key = |g: &NewtonDiagram| -> Result<(BigInt, BigInt, BigInt, ResolutionGraph), String> {
            let inv = (|| Ok::<_, Error>((milnor(g)?, multiplicity(g)?, geom_genus(g)?, minimize(&oka_graph(g)?)?)))();
            inv.map_err(|e| format!("{g}: {e}"))
        };
        let base = key(start)?;
        let len = rng.gen_range(1..=6);
        let mut cur = start.clone();
        for _ in 0..len {
            let moves = enumerate_moves(&cur, &MoveKind::ALL);
            if moves.is_empty() {
                break;
            }
            let mv = &moves[rng.gen_range(0..moves.len())];
            cur = apply_move(&cur, mv).map_err(|e| format!("{cur}: {e}"))?;
            let k = key(&cur)?;
            ensure(k.0 == base.0 && k.1 == base.1 && k.2 == base.2, || {
                format!("{start} -> {cur}: invariants {:?} vs {:?}", (&k.0, &k.1, &k.2), (&base.0, &base.1, &base.2))
            })?;
            ensure(graph_iso(&k.3, &base.3), || format!("{start} -> {cur}: minimal graphs differ"))?;
            steps += 1;
        }
        pairs += 1;
    }
    Ok(format!("{pairs} move sequences, {steps} moves, invariants and minimal graphs constant"))
}

fn criterion_7() -> Outcome {
    let mut n = 0;
    for a in 2..=12i64 {
        for b in a + 1..=12 {
            for c in b + 1..=12 {
                if a.gcd(&b) != 1 || a.gcd(&c) != 1 || b.gcd(&c) != 1 {
                    continue;
                }
                let g = diagram(&[(a, 0, 0), (0, b, 0), (0, 0, c)]);
                if !g.is_valid() {
                    continue;
                }
                let mu = milnor(&g).map_err(|e| e.to_string())?;
                let oracle = brieskorn_nu_oracle(a, b, c);
                ensure(oracle == big((a - 1) * (b - 1) * (c - 1)), || format!("oracle ({a},{b},{c}) = {oracle}"))?;
                ensure(mu == oracle, || format!("({a},{b},{c}): milnor {mu}, oracle {oracle}"))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} pairwise coprime triples agree with the volume oracle"))
}

/// `e` of every compact face: its weight plus `omega/alpha` over all adjacent chains and legs.
fn face_identities(g: &NewtonDiagram) -> Result<usize, String> {
    let mut faces = 0;
    for (fi, f) in g.compact_faces() {
        let b = self_intersection(g, fi).map_err(|e| e.to_string())?;
        let mut e = Rat::from_integer(b);
        let mut vec_sum = [Rat::zero(), Rat::zero(), Rat::zero()];
        let mut val_sum = Rat::zero();
        for edge in g.face_edges(fi) {
            let other = NewtonDiagram::other_face(edge, fi);
            let fo = &g.faces[other];
            let c = chain_between(&f.normal, &fo.normal, &edge.mult).map_err(|e| e.to_string())?;
            ensure(c.det == edge.det, || format!("chain det {} vs edge det {}", c.det, edge.det))?;
            if !c.weights.is_empty() {
                let ab = eval_neg_cont_frac(&c.weights);
                e += Rat::from_integer(edge.mult.clone()) / ab;
            }
            let w = Rat::new(edge.mult.clone(), edge.det.clone());
            for (k, s) in vec_sum.iter_mut().enumerate() {
                *s += w.clone() * Rat::from_integer(fo.normal.coords()[k].clone());
            }
            val_sum += w * Rat::from_integer(fo.value.clone());
        }
        for k in 0..3 {
            let lhs = e.clone() * Rat::from_integer(f.normal.coords()[k].clone()) + vec_sum[k].clone();
            ensure(lhs.is_zero(), || format!("{g}: face {} normal identity gives {lhs}", f.normal))?;
        }
        let area = comb_area(&f.polygon).map_err(|e| e.to_string())?;
        let lhs = e * Rat::from_integer(f.value.clone()) + val_sum;
        ensure(lhs == Rat::from_integer(-area.clone()), || {
            format!("{g}: face {} value identity {lhs} vs -{area}", f.normal)
        })?;
        faces += 1;
    }
    Ok(faces)
}

fn criterion_8(entries: &[Entry]) -> Outcome {
    let mut faces = 0;
    let mut systems = 0;
    for e in entries {
        faces += face_identities(&e.source)?;
        faces += face_identities(&e.dmin)?;
        let go = forward_orbifold(&e.dmin).map_err(|x| x.to_string())?;
        if go.node_count() == 0 {
            continue;
        }
        ensure(orbifold_negative_definite(&go), || format!("{}: I^o not negative definite", e.label))?;
        let m = go.matrix();
        let n = m.len();
        ensure(!rat_det_oracle(m.clone()).is_zero(), || format!("{}: singular system", e.label))?;
        for drop in 0..n {
            if n == 1 {
                break;
            }
            let sub: Vec<Vec<Rat>> = (0..n)
                .filter(|&i| i != drop)
                .map(|i| (0..n).filter(|&j| j != drop).map(|j| m[i][j].clone()).collect())
                .collect();
            ensure(!rat_det_oracle(sub).is_zero(), || format!("{}: singular restricted system", e.label))?;
        }
        systems += 1;
    }
    Ok(format!("{faces} face identities hold, {systems} orbifold systems non-singular"))
}

/// Coordinate plane containing both ends, if any.
fn plane_of(a: &IVec3, b: &IVec3) -> Option<usize> {
    (0..3).find(|&k| a.coords()[k].is_zero() && b.coords()[k].is_zero())
}

/// Axes crossed by an edge `[(p,0,a),(0,q,b)]` up to permutation; two when an end sits on an axis.
fn crossed_axes(a: &IVec3, b: &IVec3) -> Vec<usize> {
    (0..3)
        .filter(|&k| {
            let (i, j) = ((k + 1) % 3, (k + 2) % 3);
            let (ai, aj, bi, bj) = (a.coords()[i], a.coords()[j], b.coords()[i], b.coords()[j]);
            (ai.is_positive() && aj.is_zero() && bi.is_zero() && bj.is_positive())
                || (aj.is_positive() && ai.is_zero() && bj.is_zero() && bi.is_positive())
        })
        .collect()
}

/// Slots `(i, j)` when the edge reads `[(p,0,a),(0,1,b)]` with `p` in slot `i` and the unit in slot `j`.
fn unit_crossing(ends: &[IVec3; 2], k: usize) -> Option<(usize, usize)> {
    let (s, t) = ((k + 1) % 3, (k + 2) % 3);
    for (i, j) in [(s, t), (t, s)] {
        for (x, y) in [(&ends[0], &ends[1]), (&ends[1], &ends[0])] {
            if x.coords()[i].is_positive()
                && x.coords()[j].is_zero()
                && y.coords()[i].is_zero()
                && y.coords()[j].is_one()
            {
                return Some((i, j));
            }
        }
    }
    None
}

/// The crossing edge can be moved to a coordinate plane: a moving vertex `(r1,1,0)` with `r1 | p`,
/// or a point `(0,2,c)` on the face.
fn movable(g: &NewtonDiagram, fi: usize, ends: &[IVec3; 2], i: usize, j: usize, k: usize) -> bool {
    let f = &g.faces[fi];
    let p = ends.iter().map(|x| x.coords()[i].clone()).max().expect("two ends");
    let on_face: Vec<IVec3> = g.lattice_points().into_iter().filter(|x| x.dot(&f.normal) == f.value).collect();
    on_face.iter().any(|x| {
        let c = x.coords();
        let moving = c[k].is_zero() && c[j].is_one() && c[i].is_positive() && (&p % c[i]).is_zero();
        let raised = c[i].is_zero() && *c[j] == big(2);
        moving || raised
    })
}

fn share_end(a: &[IVec3; 2], b: &[IVec3; 2]) -> bool {
    a.iter().any(|p| b.contains(p))
}

/// Checks the clauses on every compact face; returns the face count and the number of crossing
/// edges outside the unit form `[(p,0,a),(0,1,b)]`, which the pairwise clauses do not cover.
fn divisibility(g: &NewtonDiagram) -> Result<(usize, usize), String> {
    let mut checked = 0;
    let mut non_unit = 0;
    for (fi, f) in g.compact_faces() {
        let a = f.normal.coords();
        // (ends, det, plane, crossed axis)
        let mut legs: Vec<([IVec3; 2], BigInt, Option<usize>, Option<usize>)> = Vec::new();
        for e in g.face_edges(fi).filter(|e| !g.faces[NewtonDiagram::other_face(e, fi)].compact) {
            let plane = if e.kind == EdgeKind::CoordinatePlane { plane_of(&e.ends[0], &e.ends[1]) } else { None };
            let axis = if e.kind == EdgeKind::Crossing {
                let ks = crossed_axes(&e.ends[0], &e.ends[1]);
                ks.iter().copied().find(|&k| e.det == *a[k]).or(ks.first().copied())
            } else {
                None
            };
            ensure(plane.is_some() || axis.is_some(), || format!("{g}: boundary edge {:?} of unknown kind", e.ends))?;
            legs.push((e.ends.clone(), e.det.clone(), plane, axis));
        }
        for (ends, d, plane, axis) in &legs {
            if let Some(k) = plane {
                let (i, j) = ((k + 1) % 3, (k + 2) % 3);
                ensure(*d == a[i].gcd(a[j]), || format!("{g}: plane edge det {d} on plane {k} of {}", f.normal))?;
                ensure(d.gcd(a[*k]).is_one(), || format!("{g}: plane edge det {d} not coprime to a{k}"))?;
            }
            if let Some(k) = axis {
                ensure(d == a[*k], || format!("{g}: crossing edge det {d} of {ends:?} vs {}", f.normal))?;
                if let Some((i, j)) = unit_crossing(ends, *k) {
                    if (a[i] % d).is_zero() || (a[j] % d).is_zero() {
                        ensure(movable(g, fi, ends, i, j, *k), || {
                            format!(
                                "{g}: crossing edge det {d} of {ends:?} divides a coordinate of {} but cannot move",
                                f.normal
                            )
                        })?;
                    }
                }
            }
        }
        let before = legs.len();
        legs.retain(|(ends, _, plane, axis)| plane.is_some() || axis.and_then(|k| unit_crossing(ends, k)).is_some());
        non_unit += before - legs.len();
        for x in 0..legs.len() {
            for y in x + 1..legs.len() {
                let (ex, dx, px, _) = &legs[x];
                let (ey, dy, py, _) = &legs[y];
                if dx == dy {
                    ensure(px.is_some() != py.is_some() && share_end(ex, ey), || {
                        format!("{g}: equal determinants {dx} on {ex:?} and {ey:?}")
                    })?;
                }
                let gcd = dx.gcd(dy);
                if gcd.is_one() {
                    continue;
                }
                let ok = match (px, py) {
                    (Some(_), None) => share_end(ex, ey) && (dy % dx).is_zero(),
                    (None, Some(_)) => share_end(ex, ey) && (dx % dy).is_zero(),
                    (None, None) => legs
                        .iter()
                        .any(|(ez, dz, pz, _)| pz.is_some() && share_end(ez, ex) && share_end(ez, ey) && *dz == gcd),
                    (Some(_), Some(_)) => false,
                };
                ensure(ok, || format!("{g}: determinants {dx}, {dy} of {ex:?}, {ey:?} share a factor"))?;
            }
        }
        checked += 1;
    }
    Ok((checked, non_unit))
}

fn four_groups(go: &OrbifoldDiagram) -> usize {
    (0..go.node_count())
        .filter(|&r| {
            let mut legs = go.legs_at(r);
            legs.dedup();
            go.edges_at(r).len() + legs.len() == 4
        })
        .count()
}

fn criterion_9(entries: &[Entry]) -> Outcome {
    let mut faces = 0;
    let mut non_unit = 0;
    let mut trapezoids = 0;
    for e in entries.iter().filter(|e| !e.dmin.is_segment()) {
        let (f, n) = divisibility(&e.dmin)?;
        faces += f;
        non_unit += n;
        let shapes = classify_faces(&e.dmin).map_err(|x| x.to_string())?;
        let traps = shapes.iter().filter(|(_, s)| matches!(s, FaceShape::Trapezoid(t) if t.is_non_removable())).count();
        let go = forward_orbifold(&e.dmin).map_err(|x| x.to_string())?;
        ensure(go.node_count() == e.dmin.compact_count(), || format!("{}: node count", e.label))?;
        ensure(four_groups(&go) == traps, || {
            format!("{} {}: {traps} trapezoids, {} four-group nodes", e.label, e.dmin, four_groups(&go))
        })?;
        trapezoids += traps;
    }
    Ok(format!(
        "{faces} faces satisfy the divisibility clauses ({non_unit} non-unit crossing edges left out of the pairwise clauses), {trapezoids} trapezoid nodes with 4 groups"
    ))
}

/// Positive integer tuples of length `n` and sum `s`.
fn tuples(n: usize, s: i64) -> Vec<Vec<i64>> {
    if n == 1 {
        return vec![vec![s]];
    }
    let mut out = Vec::new();
    for first in 1..=s - (n as i64 - 1) {
        for mut rest in tuples(n - 1, s - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn div(a: i64, b: i64) -> bool {
    b != 0 && a % b == 0
}

/// Support of the listed equation and the expected leg groups; the `e` side condition is checked separately.
type Instance = (Vec<(i64, i64, i64)>, Vec<(i64, i64)>, Box<dyn Fn(&Rat) -> bool>);

fn whc_instance(case: usize, x: &[i64]) -> Option<Instance> {
    let one = |r: &Rat, v: i64| *r == Rat::from_integer(big(v));
    let free = |a: i64, b: i64, c: i64| !(div(b, a) || div(a, b) || div(c, a) || div(a, c) || div(c, b) || div(b, c));
    let inst: Instance = match case {
        1 => {
            let (d, k) = (x[0] + 1, x[1] + 2);
            (vec![(d, 0, 0), (0, k - 1, 1), (0, 1, k - 1)], vec![(d, k)], Box::new(|_| true))
        }
        2 => {
            let (d, dd) = (x[0] + 1, x[1] + 1);
            (vec![(d, 0, 1), (0, 2 * dd, 0), (0, 0, 2)], vec![(d, 2), (dd, 2)], Box::new(|_| true))
        }
        3 => {
            let (d, k, dd) = (x[0] + 1, x[1] + 1, x[2] + 1);
            if !div(dd, d) {
                return None;
            }
            (vec![(k, 1, 0), (1, (k - 1) * dd / d + 1, 0), (0, 0, d)], vec![(d, k), (dd, 1)], Box::new(|_| true))
        }
        4 => {
            let (d, k, dd) = (x[0] + 1, x[1] + 1, x[2] + 1);
            if d.gcd(&dd) != 1 {
                return None;
            }
            let w = d * dd;
            (
                vec![(d, 0, 0), (0, (k - 1) * dd, 1), (0, 0, k)],
                vec![(d, k), (dd, 1)],
                Box::new(move |e| one(&(-e.clone() * Rat::from_integer(big(w))), 1)),
            )
        }
        5 => {
            let (d, k, dd) = (x[0] + 1, x[1] + 1, x[2] + 1);
            if d.gcd(&dd) != 1 || !div((dd + 1) * (k - 1), k) {
                return None;
            }
            let w = d * dd;
            (
                vec![(d, 1, 0), (0, (dd + 1) * (k - 1) / k, 1), (0, 0, k)],
                vec![(d, k), (dd, 1)],
                Box::new(move |e| one(&(-e.clone() * Rat::from_integer(big(w))), k)),
            )
        }
        6 => {
            let (a, b, c) = (x[0] + 1, x[1] + 1, x[2] + 1);
            (vec![(2 * a, 0, 0), (0, 2 * b, 0), (0, 0, 2 * c)], vec![(a, 2), (b, 2), (c, 2)], Box::new(|_| true))
        }
        7 | 8 | 9 | 11 => {
            let (a, k, b, c) = (x[0] + 1, x[1], x[2] + 1, x[3] + 1);
            let legs = vec![(a, k), (b, 1), (c, 1)];
            let bc = b * c;
            let abc = a * b * c;
            match case {
                7 if div(b, a) && div(c, a) => {
                    (vec![(b * k / a + 1, 1, 0), (1, c * k / a + 1, 0), (0, 0, a)], legs, Box::new(|_| true))
                }
                8 if div(c, b) && k > 1 => {
                    (vec![(a, 1, 0), (0, c / b + 1, 0), (0, 0, k * b)], legs, Box::new(|_| true))
                }
                9 if div(b, a) && !div(c, a) => (
                    vec![(k * c, 1, 0), (0, b * k / a + 1, 0), (0, 0, a)],
                    legs,
                    Box::new(move |e| one(&(-e.clone() * Rat::from_integer(big(bc))), 1)),
                ),
                11 if free(a, b, c) => (
                    vec![(a, 0, 0), (0, k * c, 0), (0, 0, k * b)],
                    legs,
                    Box::new(move |e| one(&(-e.clone() * Rat::from_integer(big(abc))), 1)),
                ),
                _ => return None,
            }
        }
        10 => {
            let (a, k, b, c, aa) = (x[0] + 1, x[1], x[2] + 1, x[3] + 1, x[4] + 1);
            if !div(b, a) || div(c, a) || !div(k * c - 1, aa) {
                return None;
            }
            let bc = b * c;
            (
                vec![((k * c - 1) / aa + 1, 1, 0), (0, aa, 0), (1, 0, a)],
                vec![(a, k), (b, 1), (c, 1)],
                Box::new(move |e| one(&(-e.clone() * Rat::from_integer(big(bc))), aa)),
            )
        }
        12 => {
            let (a, b, c, aa) = (x[0] + 1, x[1] + 1, x[2] + 1, x[3] + 1);
            if !free(a, b, c) {
                return None;
            }
            let abc = a * b * c;
            let first = div(aa - b, a) && div(aa - c, b) && div(aa - a, c);
            let second = div(aa - b, c) && div(aa - a, b) && div(aa - c, a);
            let pts = if first {
                vec![((aa - b) / a, 1, 0), (0, (aa - c) / b, 1), (1, 0, (aa - a) / c)]
            } else if second {
                vec![((aa - b) / c, 1, 0), (0, (aa - a) / b, 1), (1, 0, (aa - c) / a)]
            } else {
                return None;
            };
            if pts.iter().any(|p| p.0 < 0 || p.1 < 0 || p.2 < 0) {
                return None;
            }
            (pts, vec![(a, 1), (b, 1), (c, 1)], Box::new(move |e| one(&(-e.clone() * Rat::from_integer(big(abc))), aa)))
        }
        _ => return None,
    };
    Some(inst)
}

fn leg_groups(go: &OrbifoldDiagram) -> Vec<(BigInt, usize)> {
    let mut out: Vec<(BigInt, usize)> = Vec::new();
    for d in go.legs_at(0) {
        match out.last_mut() {
            Some((last, k)) if *last == d => *k += 1,
            _ => out.push((d, 1)),
        }
    }
    out
}

/// Smallest parameters (by sum) whose equation has one node with the case's leg groups and side condition.
fn smallest_whc(case: usize) -> Option<(Vec<i64>, NewtonDiagram, OrbifoldDiagram)> {
    let arity = match case {
        1 | 2 => 2,
        3..=6 => 3,
        7..=9 | 11 | 12 => 4,
        _ => 5,
    };
    for s in arity as i64..=40 {
        for x in tuples(arity, s) {
            let x: Vec<i64> = x.iter().map(|v| v - 1).collect();
            let Some((pts, legs, side)) = whc_instance(case, &x) else { continue };
            if pts.iter().any(|p| p.0 < 0 || p.1 < 0 || p.2 < 0) {
                continue;
            }
            let mut want: Vec<(BigInt, usize)> = legs.iter().map(|&(d, k)| (big(d), k as usize)).collect();
            want.sort();
            if want.windows(2).any(|w| w[0].0 == w[1].0) || want.iter().any(|(d, _)| d <= &BigInt::one()) {
                continue;
            }
            let g = diagram(&pts);
            if !g.is_valid() {
                continue;
            }
            let Ok(go) = forward_orbifold(&g) else { continue };
            if go.node_count() != 1 || leg_groups(&go) != want || !side(&go.euler[0]) {
                continue;
            }
            return Some((x, g, go));
        }
    }
    None
}

fn criterion_10() -> Outcome {
    let mut lines = Vec::new();
    let mut bad = Vec::new();
    for case in 1..=12 {
        let Some((x, g, go)) = smallest_whc(case) else {
            bad.push(format!("case {case}: no admissible parameters"));
            continue;
        };
        match invert(&go) {
            Ok(inv) if inv.diagram.same_up_to_permutation(&d_minimal(&g).map_err(|e| e.to_string())?) => {
                lines.push(format!("{case}:{}", inv.route));
            }
            Ok(inv) => bad.push(format!("case {case} {x:?}: {g} inverted to {}", inv.diagram)),
            Err(e) => bad.push(format!("case {case} {x:?}: {g}: {e}")),
        }
    }
    if bad.is_empty() {
        Ok(format!("all 12 cases reproduce their diagram ({} matched by route)", lines.len()))
    } else {
        Err(bad.join("; "))
    }
}

fn main() -> ExitCode {
    let t0 = Instant::now();
    let mut sources: Vec<(String, NewtonDiagram)> =
        mixed_corpus(10, 220, 1).into_iter().enumerate().map(|(i, g)| (format!("generated #{i}"), g)).collect();
    sources.extend(curated());
    let mut entries = Vec::new();
    let mut dmin_failures = 0;
    for (label, g) in sources {
        match d_minimal(&g) {
            Ok(dmin) => entries.push(Entry { label, source: g, dmin }),
            Err(e) => {
                eprintln!("{label}: d-minimal failed: {e}");
                dmin_failures += 1;
            }
        }
    }
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("round trip", Box::new(|| criterion_1(&entries, dmin_failures))),
        ("A-series strings", Box::new(criterion_2)),
        ("E8 pipeline", Box::new(criterion_3)),
        ("unrealizable graph rejected", Box::new(criterion_4)),
        ("determinant identity", Box::new(|| criterion_5(&entries))),
        ("move stability", Box::new(|| criterion_6(&entries))),
        ("Milnor number oracle", Box::new(criterion_7)),
        ("face identities", Box::new(|| criterion_8(&entries))),
        ("divisibility", Box::new(|| criterion_9(&entries))),
        ("weighted homogeneous cases", Box::new(criterion_10)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg} [{secs:.1}s]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {msg} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {}/{} criteria passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        t0.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
