//! Arms: reading the basic data off the orbifold diagram and completing the vertex coordinates.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::View;
use crate::error::{fail, Result};
use crate::lattice::{cross, gcd3, plane_side_test, IVec3, PlaneSide, Rat};

/// Which shape the hand has.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HandKind {
    /// Coprime leg decorations; the hand meets the axis.
    Coprime,
    /// One decoration divides the other.
    Divisible,
    /// A single leg decoration.
    Single,
}

/// Coordinate plane of the arm's local frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Plane {
    /// First local coordinate zero.
    X,
    /// Second local coordinate zero.
    Y,
}

/// Edge between consecutive arm faces, given by its endpoints `(x, 0)` and `(0, y)` in local coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub x: BigInt,
    pub y: BigInt,
    pub det: BigInt,
    pub mult: BigInt,
}

/// Face past the last crossing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Beyond {
    Node(usize),
    /// A non-compact face; the last crossing is a leg group.
    Legs,
}

/// A triangle of the arm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArmTriangle {
    pub node: usize,
    /// Third coordinate of the normal in the local frame.
    pub a3: BigInt,
}

/// Basic data of an arm in local coordinates, the arm pointing along the third axis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicData {
    pub kind: HandKind,
    pub triangles: Vec<ArmTriangle>,
    /// Vertex of the hand off its outgoing crossing.
    pub apex: (BigInt, BigInt),
    /// `crossings[k]` separates triangle `k` from the next face.
    pub crossings: Vec<Crossing>,
    pub beyond: Beyond,
    pub beyond_a3: BigInt,
    /// `(node, decoration, face value)` of legs with non-zero face value.
    pub leg_values: Vec<(usize, BigInt, BigInt)>,
}

impl BasicData {
    pub fn nodes(&self) -> Vec<usize> {
        self.triangles.iter().map(|t| t.node).collect()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.triangles.iter().any(|t| t.node == v)
    }

    pub fn index_of(&self, v: usize) -> Option<usize> {
        self.triangles.iter().position(|t| t.node == v)
    }

    /// Third local normal coordinate of node `v`, inside the arm or just past it.
    pub fn a3_of(&self, v: usize) -> Option<BigInt> {
        if let Some(i) = self.index_of(v) {
            return Some(self.triangles[i].a3.clone());
        }
        (self.beyond == Beyond::Node(v)).then(|| self.beyond_a3.clone())
    }

    /// The two non-zero local coordinates of the shoulder.
    pub fn shoulder_set(&self) -> (BigInt, BigInt) {
        let c = self.crossings.last().expect("an arm has a crossing");
        (c.x.clone(), c.y.clone())
    }

    /// Keep the arm up to and including triangle `k`.
    pub fn truncated(&self, k: usize) -> BasicData {
        let mut b = self.clone();
        b.triangles.truncate(k + 1);
        b.crossings.truncate(k + 1);
        let kept: BTreeSet<usize> = b.nodes().into_iter().collect();
        b.leg_values.retain(|(v, _, _)| kept.contains(v));
        b
    }
}

/// Starting data of a hand: shape, apex, first crossing, normal coordinate, reference plane edge.
#[derive(Clone, Debug)]
pub(crate) struct HandStart {
    pub kind: HandKind,
    pub apex: (BigInt, BigInt),
    pub x: BigInt,
    pub y: BigInt,
    pub a3: BigInt,
    /// Decoration of the chosen coordinate-plane edge, which lies on local `x = 0`.
    pub ref_det: BigInt,
    /// Leg with non-zero face value, if any.
    pub value_leg: Option<(BigInt, BigInt)>,
}

/// Hand data from the leg groups of a node.
pub(crate) fn hand_from_legs(legs: &[(BigInt, usize)]) -> Result<Vec<HandStart>> {
    match legs {
        [(n, c)] => {
            if *c < 2 {
                return fail("hand", "a single-leg hand is degenerate");
            }
            let t = BigInt::from(*c - 1);
            Ok(vec![divisible(n, n, &t, HandKind::Single)])
        }
        [(d1, c1), (d2, c2)] => {
            let mut out = Vec::new();
            if d1.gcd(d2).is_one() {
                // n1 carries t legs, n2 exactly one
                for ((n1, t), (n2, k)) in [((d1, c1), (d2, c2)), ((d2, c2), (d1, c1))] {
                    if *k != 1 || (*t == 1 && !out.is_empty()) {
                        continue;
                    }
                    let t = BigInt::from(*t);
                    out.push(HandStart {
                        kind: HandKind::Coprime,
                        apex: (BigInt::zero(), BigInt::zero()),
                        x: n1.clone(),
                        y: &t * n2,
                        a3: n1 * n2,
                        ref_det: n1.clone(),
                        value_leg: None,
                    });
                }
            } else {
                let (small, big, cs, cb) = if d1 < d2 { (d1, d2, c1, c2) } else { (d2, d1, c2, c1) };
                if (big % small).is_zero() && *cb == 1 {
                    out.push(divisible(small, big, &BigInt::from(*cs), HandKind::Divisible));
                }
            }
            if out.is_empty() {
                return fail("hand", format!("leg groups {d1}x{c1}, {d2}x{c2} do not form a hand"));
            }
            Ok(out)
        }
        _ => fail("hand", "a hand has one or two leg groups"),
    }
}

fn divisible(n1: &BigInt, n2: &BigInt, t: &BigInt, kind: HandKind) -> HandStart {
    HandStart {
        kind,
        apex: (BigInt::zero(), BigInt::one()),
        x: n1.clone(),
        y: BigInt::one() + t * n2 / n1,
        a3: n2.clone(),
        ref_det: n1.clone(),
        value_leg: Some((n2.clone(), n1.clone())),
    }
}

fn leg_groups(view: &View, v: usize) -> Vec<(BigInt, usize)> {
    view.nodes[v].legs.iter().map(|(d, c)| (d.clone(), *c)).collect()
}

/// Basic data of the arm whose hand is `hand`, stopping before `stop` if given.
pub(crate) fn arm_preprocess(view: &View, hand: usize, stop: Option<usize>) -> Result<Vec<BasicData>> {
    let node = &view.nodes[hand];
    if node.nbrs.len() != 1 {
        return fail("arm", format!("hand node {hand} has {} neighbours", node.nbrs.len()));
    }
    let mut out = Vec::new();
    let mut err = None;
    for start in hand_from_legs(&leg_groups(view, hand))? {
        match continue_arm(view, hand, stop, &start) {
            Ok(d) => out.push(d),
            Err(e) => err = Some(e),
        }
    }
    match err {
        Some(e) if out.is_empty() => Err(e),
        _ => Ok(out),
    }
}

/// Basic data of a virtual hand built from explicit leg groups (no continuation).
pub(crate) fn virtual_hand(legs: &[(BigInt, usize)]) -> Result<Vec<HandStart>> {
    hand_from_legs(legs)
}

fn continue_arm(view: &View, hand: usize, stop: Option<usize>, start: &HandStart) -> Result<BasicData> {
    let (first, det0) = view.nodes[hand].nbrs[0].clone();
    let mut data = BasicData {
        kind: start.kind,
        triangles: vec![ArmTriangle { node: hand, a3: start.a3.clone() }],
        apex: start.apex.clone(),
        crossings: vec![Crossing { x: start.x.clone(), y: start.y.clone(), det: det0.clone(), mult: BigInt::one() }],
        beyond: Beyond::Node(first),
        beyond_a3: BigInt::zero(),
        leg_values: start.value_leg.iter().map(|(d, m)| (hand, d.clone(), m.clone())).collect(),
    };
    let mut visited = BTreeSet::from([hand]);
    let mut ref_plane = Plane::X;
    let mut ref_det = start.ref_det.clone();
    // (node, det of the edge to the previous triangle, a3 of the previous triangle)
    let mut prev: Option<(BigInt, BigInt)> = None;
    let mut cur = hand;
    loop {
        let gamma = data.crossings.last().expect("crossing").clone();
        let a3_cur = data.triangles.last().expect("triangle").a3.clone();
        // third coordinate of the face identity at the current node
        let mut s = &view.nodes[cur].e * Rat::from_integer(a3_cur.clone());
        if let Some((t_prev, a3_prev)) = &prev {
            s += Rat::new(a3_prev.clone(), t_prev.clone());
        }
        let next = -(s * Rat::new(gamma.det.clone(), gamma.mult.clone()));
        if !next.is_integer() || !next.is_positive() {
            return fail("arm", format!("next normal coordinate {next} at node {cur} is not a positive integer"));
        }
        let a3_next = next.to_integer();
        data.beyond_a3 = a3_next.clone();
        let w = match data.beyond {
            Beyond::Legs => break,
            Beyond::Node(w) => w,
        };
        if Some(w) == stop || visited.contains(&w) || view.groups(w) == 4 || view.nodes[w].legs.is_empty() {
            break;
        }
        let Some(l) = view.nodes[w].legs.keys().filter(|d| (&a3_next % *d).is_zero()).max().cloned() else {
            break;
        };
        let count = view.nodes[w].legs[&l];
        let others: Vec<(usize, BigInt)> = view.nodes[w].nbrs.iter().filter(|(x, _)| *x != cur).cloned().collect();
        let leg_kinds = view.nodes[w].legs.len();
        let (m_alpha, next_crossing) = match (others.len(), leg_kinds) {
            (1, 1) => (count, Some((others[0].1.clone(), BigInt::one(), Beyond::Node(others[0].0)))),
            (0, 2) => {
                let (d2, c2) = view.nodes[w]
                    .legs
                    .iter()
                    .find(|(d, _)| **d != l)
                    .map(|(d, c)| (d.clone(), *c))
                    .expect("two groups");
                (count, Some((d2, BigInt::from(c2), Beyond::Legs)))
            }
            (0, 1) if count >= 2 => (count - 1, Some((l.clone(), BigInt::one(), Beyond::Legs))),
            _ => (count, None),
        };
        let Some((det_next, mult_next, beyond_next)) = next_crossing else {
            break;
        };
        // an undecided side test means `w` is not a triangle of this arm
        let Ok(side) = plane_side_test(&ref_det, &l, &gamma.det) else {
            break;
        };
        let plane = match (side, ref_plane) {
            (PlaneSide::Same, p) => p,
            (PlaneSide::Other, Plane::X) => Plane::Y,
            (PlaneSide::Other, Plane::Y) => Plane::X,
        };
        let step = BigInt::from(m_alpha) * &a3_next / &l;
        let mut c = Crossing { x: gamma.x.clone(), y: gamma.y.clone(), det: det_next, mult: mult_next };
        match plane {
            Plane::Y => c.x += &step,
            Plane::X => c.y += &step,
        }
        log::trace!("arm from {hand}: node {w} joins with a3 {a3_next}, crossing ({}, {})", c.x, c.y);
        visited.insert(w);
        data.triangles.push(ArmTriangle { node: w, a3: a3_next.clone() });
        data.crossings.push(c);
        data.beyond = beyond_next;
        prev = Some((gamma.det.clone(), a3_cur));
        ref_plane = plane;
        ref_det = l;
        cur = w;
    }
    Ok(data)
}

/// Complete the arm: the shoulder endpoints `ends` and the beyond normal are in global coordinates.
/// `upto` is the index of the crossing used as shoulder. Returns every consistent vertex list.
pub fn arm_postprocess(
    data: &BasicData,
    upto: usize,
    axis: usize,
    ends: [&IVec3; 2],
    beyond: &IVec3,
) -> Vec<Vec<IVec3>> {
    let others: Vec<usize> = (0..3).filter(|&k| k != axis).collect();
    let mut out = Vec::new();
    for (gx, gy) in [(others[0], others[1]), (others[1], others[0])] {
        let c = &data.crossings[upto];
        let on_y = |p: &IVec3| p[gy].is_zero() && p[gx] == c.x;
        let on_x = |p: &IVec3| p[gx].is_zero() && p[gy] == c.y;
        for (px, py) in [(ends[0], ends[1]), (ends[1], ends[0])] {
            if !on_y(px) || !on_x(py) {
                continue;
            }
            walk(data, upto, axis, gx, gy, px.clone(), py.clone(), beyond.clone(), Vec::new(), &mut out);
        }
    }
    out.sort();
    out.dedup();
    out
}

fn lift(axis: usize, gx: usize, gy: usize, lx: &BigInt, ly: &BigInt, z: BigInt) -> IVec3 {
    let mut p = IVec3::zero();
    p[gx] = lx.clone();
    p[gy] = ly.clone();
    p[axis] = z;
    p
}

#[allow(clippy::too_many_arguments)]
fn walk(
    data: &BasicData,
    k: usize,
    axis: usize,
    gx: usize,
    gy: usize,
    px: IVec3,
    py: IVec3,
    cur: IVec3,
    mut acc: Vec<IVec3>,
    out: &mut Vec<Vec<IVec3>>,
) {
    let c = &data.crossings[k];
    let a3 = &data.triangles[k].a3;
    if cur[axis].is_zero() {
        return;
    }
    let third = if k == 0 {
        data.apex.clone()
    } else {
        let p = &data.crossings[k - 1];
        if p.x != c.x {
            (p.x.clone(), BigInt::zero())
        } else {
            (BigInt::zero(), p.y.clone())
        }
    };
    acc.push(px.clone());
    acc.push(py.clone());
    let v = &py - &px;
    let n2 = cur.dot(&cur);
    for sign in [1i64, -1] {
        // F x cur = w with w = (t/m) v
        let w = v.scale(&(BigInt::from(sign) * &c.det));
        let base = cross(&cur, &w);
        let denom = &n2 * &c.mult;
        // F = base / denom + lambda cur, fixed by F[axis] = a3
        let lam = Rat::new(a3 * &denom - &base[axis], &denom * &cur[axis]);
        let mut f = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
        let mut ok = true;
        for i in 0..3 {
            let r = Rat::new(base[i].clone(), denom.clone()) + &lam * Rat::from_integer(cur[i].clone());
            if !r.is_integer() || !r.is_positive() {
                ok = false;
                break;
            }
            f[i] = r.to_integer();
        }
        if !ok {
            continue;
        }
        let f = IVec3::from_array(f);
        if !gcd3(&f).is_one() || cross(&f, &cur) != w.div_exact(&c.mult).unwrap_or_else(IVec3::zero) {
            continue;
        }
        let m = f.dot(&px);
        let num = &m - &f[gx] * &third.0 - &f[gy] * &third.1;
        if !(&num % &f[axis]).is_zero() {
            continue;
        }
        let z = &num / &f[axis];
        if z.is_negative() {
            continue;
        }
        let apex = lift(axis, gx, gy, &third.0, &third.1, z);
        if cur.dot(&apex) <= cur.dot(&px) {
            continue;
        }
        if k == 0 {
            let mut done = acc.clone();
            done.push(apex);
            out.push(done);
            continue;
        }
        let p = &data.crossings[k - 1];
        let (nx, ny) = if p.x != c.x { (apex, py.clone()) } else { (px.clone(), apex) };
        walk(data, k - 1, axis, gx, gy, nx, ny, f, acc.clone(), out);
    }
}

/// End nodes ordered by preference as hands: easily recognizable hands first, then by `r(v)`.
pub fn find_hand(go: &crate::resgraph::OrbifoldDiagram) -> Result<Vec<usize>> {
    let view = View::new(go)?;
    find_hand_view(&view)
}

pub(crate) fn find_hand_view(view: &View) -> Result<Vec<usize>> {
    for v in 0..view.len() {
        let shape_ok = match view.nodes[v].nbrs.len() {
            1 => matches!(view.groups(v), 2 | 3),
            2 => view.groups(v) == 3,
            _ => false,
        };
        if !shape_ok {
            return fail("hand search", format!("node {v} does not have three groups along a string"));
        }
    }
    let ends: Vec<usize> = (0..view.len()).filter(|&v| view.is_end(v)).collect();
    if ends.len() != 2 {
        return fail("hand search", "the orbifold diagram is not a string of nodes");
    }
    let er = |v: usize| is_er_hand(view, v);
    let r = |v: usize| -> BigInt {
        let g: Vec<(&BigInt, &usize)> = view.nodes[v].legs.iter().collect();
        g[0].0 * BigInt::from(*g[1].1) + g[1].0 * BigInt::from(*g[0].1)
    };
    let (a, b) = (ends[0], ends[1]);
    let first = match (er(a), er(b)) {
        (true, _) => a,
        (false, true) => b,
        _ => {
            let (ra, rb) = (r(a), r(b));
            if ra != rb {
                if ra < rb {
                    a
                } else {
                    b
                }
            } else if view.nodes[b].e > view.nodes[a].e {
                b
            } else {
                a
            }
        }
    };
    let second = if first == a { b } else { a };
    Ok(vec![first, second])
}

/// Easily recognizable hand: one leg decoration, or two that share a factor.
pub(crate) fn is_er_hand(view: &View, v: usize) -> bool {
    let legs: Vec<&BigInt> = view.nodes[v].legs.keys().collect();
    match legs.as_slice() {
        [_] => true,
        [a, b] => !a.gcd(b).is_one(),
        _ => false,
    }
}
