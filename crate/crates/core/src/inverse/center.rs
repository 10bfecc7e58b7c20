//! The center of the diagram: triangles, trapezoids and central edges.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::arm::{arm_postprocess, arm_preprocess, find_hand_view, is_er_hand, virtual_hand, BasicData, Beyond};
use super::{pos_int, View};
use crate::error::{fail, Error, Result};
use crate::lattice::{empty_triangle_normal, IVec3, Rat};
use crate::resgraph::OrbifoldDiagram;

/// Shape of the center found by the solver.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CenterCase {
    /// Central triangle with one, two or three non-degenerate arms.
    Triangle1,
    Triangle2,
    Triangle3,
    /// Non-removable trapezoid with one, two or three non-degenerate arms.
    Trapezoid1,
    Trapezoid2,
    Trapezoid3,
    /// A single arm contains every compact face.
    Edge1,
    /// Two arms meeting along a central edge.
    Edge2,
}

impl fmt::Display for CenterCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CenterCase::Triangle1 => "central triangle, one arm",
            CenterCase::Triangle2 => "central triangle, two arms",
            CenterCase::Triangle3 => "central triangle, three arms",
            CenterCase::Trapezoid1 => "trapezoid, one arm",
            CenterCase::Trapezoid2 => "trapezoid, two arms",
            CenterCase::Trapezoid3 => "trapezoid, three arms",
            CenterCase::Edge1 => "single arm",
            CenterCase::Edge2 => "central edge",
        };
        f.write_str(s)
    }
}

/// Candidate vertex lists tagged with the case that produced them.
pub type Candidates = Vec<(CenterCase, Vec<IVec3>)>;

fn p3(x: &BigInt, y: &BigInt, z: &BigInt) -> IVec3 {
    IVec3::from_big(x.clone(), y.clone(), z.clone())
}

fn both<T: Clone>(a: &T, b: &T) -> [(T, T); 2] {
    [(a.clone(), b.clone()), (b.clone(), a.clone())]
}

/// The other element of the pair `s` once `x` is removed.
fn other(s: &(BigInt, BigInt), x: &BigInt) -> Option<BigInt> {
    if &s.0 == x {
        Some(s.1.clone())
    } else if &s.1 == x {
        Some(s.0.clone())
    } else {
        None
    }
}

/// Empty triangles `(0,p2,p3), (q1,0,q3), (r1,r2,0)` with the given coordinate pairs, normal and face value.
/// The pairs are `{q1, p2}`, `{r2, q3}` and `{p3, r1}`.
pub fn central_triangles(
    normal: &IVec3,
    value: &BigInt,
    s12: &(BigInt, BigInt),
    s23: &(BigInt, BigInt),
    s13: &(BigInt, BigInt),
) -> Vec<[IVec3; 3]> {
    let z = BigInt::zero();
    let mut out = Vec::new();
    for (q1, p2) in both(&s12.0, &s12.1) {
        for (r2, q3) in both(&s23.0, &s23.1) {
            for (p3v, r1) in both(&s13.0, &s13.1) {
                let p = p3(&z, &p2, &p3v);
                let q = p3(&q1, &z, &q3);
                let r = p3(&r1, &r2, &z);
                if &normal.dot(&p) != value || &normal.dot(&q) != value || &normal.dot(&r) != value {
                    continue;
                }
                if empty_triangle_normal(&p, &q, &r).ok().as_ref() != Some(normal) {
                    continue;
                }
                let t = [p, q, r];
                if !out.contains(&t) {
                    out.push(t);
                }
            }
        }
    }
    out
}

/// Central triangle `(q1,0,q3), (0,p2,1), (r1,1,0)` with normal `(a1,a2,a3)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SixTuple {
    pub r1: BigInt,
    pub p2: BigInt,
    pub q1: BigInt,
    pub q3: BigInt,
    pub a1: BigInt,
    pub a2: BigInt,
}

/// Solve for the central triangle of one arm: `leg_decs = {a1, a2}`, `shoulder = {p2, q1}`, `a3` past the shoulder.
pub fn solve_six_tuple(a3: &BigInt, shoulder: &(BigInt, BigInt), leg_decs: &(BigInt, BigInt)) -> Vec<SixTuple> {
    let mut out = Vec::new();
    for (a1, a2) in both(&leg_decs.0, &leg_decs.1) {
        if a2 <= BigInt::one() || a1 <= BigInt::one() {
            continue;
        }
        let eg = a1.extended_gcd(&a2);
        if !eg.gcd.is_one() {
            continue;
        }
        // r1 a1 = a3 mod a2
        let r1 = (a3 * &eg.x).mod_floor(&a2);
        if !r1.is_positive() {
            continue;
        }
        let num = &r1 * &a1 - a3;
        if !(&num % &a2).is_zero() {
            continue;
        }
        let p2m1 = &num / &a2;
        if !p2m1.is_positive() || p2m1 >= a1 {
            continue;
        }
        let p2: BigInt = &p2m1 + 1;
        let Some(q1) = other(shoulder, &p2) else { continue };
        let q3n: BigInt = &a1 - 1;
        if !(&q3n % &p2m1).is_zero() {
            continue;
        }
        let q3 = &q3n / &p2m1;
        if q3 < BigInt::from(2) {
            continue;
        }
        let nv1 = &p2 * &q3 - &q3 + 1;
        let nv2 = &q3 * &r1 + &q1 - &r1;
        let nv3 = &r1 * &p2 + &q1 - &q1 * &p2;
        if nv1 != a1 || nv2 != a2 || &nv3 != a3 {
            continue;
        }
        out.push(SixTuple { r1, p2, q1, q3, a1, a2 });
    }
    out.sort();
    out
}

/// All combinations picking one entry from each list.
fn product<T: Clone>(lists: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = vec![Vec::new()];
    for l in lists {
        let mut next = Vec::new();
        for prefix in &out {
            for x in l {
                let mut p = prefix.clone();
                p.push(x.clone());
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Join the center vertices with every combination of completed arms.
fn assemble(case: CenterCase, center: &[IVec3], arms: Vec<Vec<Vec<IVec3>>>, out: &mut Candidates) {
    for combo in product(&arms) {
        let mut pts: Vec<IVec3> = center.to_vec();
        for a in combo {
            pts.extend(a);
        }
        pts.sort();
        pts.dedup();
        out.push((case, pts));
    }
}

fn last(a: &BasicData) -> usize {
    a.crossings.len() - 1
}

/// Face value of node `v` from the face-value identities.
fn face_value(view: &View, legs: &[(usize, BigInt, BigInt)], v: usize) -> Result<BigInt> {
    let m = view.face_values(legs)?;
    pos_int(&m[v]).ok_or_else(|| Error::NotRealizable {
        stage: "face value".into(),
        reason: format!("face value {} of node {v} is not a positive integer", m[v]),
    })
}

/// Walk a branch from `v` through `first` to its end node; returns the nodes in order.
fn branch(view: &View, v: usize, first: usize) -> Result<Vec<usize>> {
    let mut path = vec![first];
    let (mut prev, mut cur) = (v, first);
    loop {
        let nb: Vec<usize> = view.nodes[cur].nbrs.iter().map(|(w, _)| *w).filter(|&w| w != prev).collect();
        match nb.as_slice() {
            [] => return Ok(path),
            [w] => {
                path.push(*w);
                prev = cur;
                cur = *w;
            }
            _ => return fail("branch", format!("node {cur} branches away from the center")),
        }
    }
}

/// Arms of every branch at `v`, each reaching exactly `v`.
fn branch_arms(view: &View, v: usize) -> Result<Vec<Vec<BasicData>>> {
    let mut all = Vec::new();
    for (first, _) in &view.nodes[v].nbrs {
        let path = branch(view, v, *first)?;
        let hand = *path.last().expect("non-empty branch");
        let arms: Vec<BasicData> = arm_preprocess(view, hand, Some(v))?
            .into_iter()
            .filter(|a| {
                a.beyond == Beyond::Node(v) && {
                    let mut n = a.nodes();
                    let mut p = path.clone();
                    n.sort();
                    p.sort();
                    n == p
                }
            })
            .collect();
        if arms.is_empty() {
            return fail("arm", format!("the arm of hand {hand} does not reach the center {v}"));
        }
        all.push(arms);
    }
    Ok(all)
}

fn leg_values(arms: &[&BasicData]) -> Vec<(usize, BigInt, BigInt)> {
    arms.iter().flat_map(|a| a.leg_values.iter().cloned()).collect()
}

fn triangle3(view: &View, v: usize) -> Result<Candidates> {
    let arms = branch_arms(view, v)?;
    let mut out = Vec::new();
    for combo in product(&arms) {
        let [a0, a1, a2] = [&combo[0], &combo[1], &combo[2]];
        let f = IVec3::from_big(a0.beyond_a3.clone(), a1.beyond_a3.clone(), a2.beyond_a3.clone());
        let m = face_value(view, &leg_values(&[a0, a1, a2]), v)?;
        for [p, q, r] in central_triangles(&f, &m, &a2.shoulder_set(), &a0.shoulder_set(), &a1.shoulder_set()) {
            let parts = vec![
                arm_postprocess(a2, last(a2), 2, [&p, &q], &f),
                arm_postprocess(a0, last(a0), 0, [&q, &r], &f),
                arm_postprocess(a1, last(a1), 1, [&p, &r], &f),
            ];
            assemble(CenterCase::Triangle3, &[p.clone(), q.clone(), r.clone()], parts, &mut out);
        }
    }
    Ok(out)
}

/// Trapezoid `(p,0,n), (0,q,n), (r1,r2+tq,0), (r1+tp,r2,0)`.
fn trapezoid_vertices(n: &BigInt, p: &BigInt, q: &BigInt, r1: &BigInt, r2: &BigInt, t: &BigInt) -> [IVec3; 4] {
    let z = BigInt::zero();
    [p3(p, &z, n), p3(&z, q, n), p3(r1, &(r2 + t * q), &z), p3(&(r1 + t * p), r2, &z)]
}

fn trapezoid_normal(n: &BigInt, p: &BigInt, q: &BigInt, r1: &BigInt, r2: &BigInt, t: &BigInt) -> IVec3 {
    IVec3::from_big(n * q, n * p, r1 * q + r2 * p + (t - 1) * p * q)
}

fn trapezoid(view: &View, v: usize) -> Result<Candidates> {
    let legs: Vec<(BigInt, usize)> = view.nodes[v].legs.iter().map(|(d, c)| (d.clone(), *c)).collect();
    let count = |d: &BigInt| BigInt::from(view.nodes[v].legs.get(d).copied().unwrap_or(0));
    let arms = branch_arms(view, v)?;
    let mut out = Vec::new();
    match arms.len() {
        3 => {
            let (d, t) = (&legs[0].0, BigInt::from(legs[0].1));
            for combo in product(&arms) {
                let top: Vec<usize> = (0..3).filter(|&i| !(&combo[i].beyond_a3 % d).is_zero()).collect();
                let [k3] = top.as_slice() else { continue };
                let sides: Vec<usize> = (0..3).filter(|i| i != k3).collect();
                for (i1, i2) in both(&sides[0], &sides[1]) {
                    let (z1, z2, z3) = (&combo[i1], &combo[i2], &combo[*k3]);
                    let n = z1.beyond_a3.gcd(&z2.beyond_a3);
                    if &n != d {
                        continue;
                    }
                    let (q, p) = (&z1.beyond_a3 / &n, &z2.beyond_a3 / &n);
                    let (Some(r2), Some(r1)) = (other(&z1.shoulder_set(), &n), other(&z2.shoulder_set(), &n)) else {
                        continue;
                    };
                    let f = trapezoid_normal(&n, &p, &q, &r1, &r2, &t);
                    if f.z != z3.beyond_a3 {
                        continue;
                    }
                    let [a, b, c, dd] = trapezoid_vertices(&n, &p, &q, &r1, &r2, &t);
                    let parts = vec![
                        arm_postprocess(z3, last(z3), 2, [&a, &b], &f),
                        arm_postprocess(z1, last(z1), 0, [&a, &dd], &f),
                        arm_postprocess(z2, last(z2), 1, [&b, &c], &f),
                    ];
                    assemble(CenterCase::Trapezoid3, &[a, b, c, dd], parts, &mut out);
                }
            }
        }
        2 => {
            for combo in product(&arms) {
                let (x, y) = (&combo[0], &combo[1]);
                let (bx, by) = (&x.beyond_a3, &y.beyond_a3);
                let divisible = (by % bx).is_zero() || (bx % by).is_zero();
                if divisible {
                    for (z1, z2) in both(x, y) {
                        if !(&z2.beyond_a3 % &z1.beyond_a3).is_zero() {
                            continue;
                        }
                        let n = z1.beyond_a3.clone();
                        let p = &z2.beyond_a3 / &n;
                        let q = BigInt::one();
                        let (Some(r2), Some(r1)) = (other(&z1.shoulder_set(), &n), other(&z2.shoulder_set(), &n))
                        else {
                            continue;
                        };
                        let total: usize = legs.iter().map(|(_, c)| c).sum();
                        let t = BigInt::from(total - 1);
                        let f = trapezoid_normal(&n, &p, &q, &r1, &r2, &t);
                        let mut want = vec![n.clone(); total - 1];
                        want.push(f.z.clone());
                        want.sort();
                        let mut have: Vec<BigInt> = legs.iter().flat_map(|(d, c)| vec![d.clone(); *c]).collect();
                        have.sort();
                        if want != have {
                            continue;
                        }
                        let [a, b, c, dd] = trapezoid_vertices(&n, &p, &q, &r1, &r2, &t);
                        let parts = vec![
                            arm_postprocess(&z1, last(&z1), 0, [&a, &dd], &f),
                            arm_postprocess(&z2, last(&z2), 1, [&b, &c], &f),
                        ];
                        assemble(CenterCase::Trapezoid2, &[a, b, c, dd], parts, &mut out);
                    }
                } else {
                    for (z1, z3) in both(x, y) {
                        for hs in virtual_hand(&legs).unwrap_or_default() {
                            let f = IVec3::from_big(z1.beyond_a3.clone(), hs.a3.clone(), z3.beyond_a3.clone());
                            let mut lv = leg_values(&[&z1, &z3]);
                            if let Some((d, m)) = &hs.value_leg {
                                lv.push((v, d.clone(), m.clone()));
                            }
                            let Ok(m) = face_value(view, &lv, v) else { continue };
                            let sv = (hs.x.clone(), hs.y.clone());
                            for [p, q, r] in central_triangles(&f, &m, &z3.shoulder_set(), &z1.shoulder_set(), &sv) {
                                let (b, a, dd) = (p, q, r);
                                let t = count(&a.z);
                                if !t.is_positive() {
                                    continue;
                                }
                                let c = &dd + &(&b - &a).scale(&t);
                                if !c.is_nonneg() {
                                    continue;
                                }
                                let parts = vec![
                                    arm_postprocess(&z3, last(&z3), 2, [&a, &b], &f),
                                    arm_postprocess(&z1, last(&z1), 0, [&a, &dd], &f),
                                ];
                                assemble(CenterCase::Trapezoid2, &[a, b, c, dd], parts, &mut out);
                            }
                        }
                    }
                }
            }
        }
        1 => {
            let decs: Vec<BigInt> = legs.iter().map(|(d, _)| d.clone()).collect();
            for arm in &arms[0] {
                let big_a = &arm.beyond_a3;
                let s = arm.shoulder_set();
                if (&s.0 == big_a || &s.1 == big_a) && decs.contains(big_a) {
                    let n = big_a.clone();
                    let r2 = other(&s, &n).expect("member");
                    let rest: Vec<&BigInt> = decs.iter().filter(|d| **d != n).collect();
                    let mut choices = Vec::new();
                    for d in &rest {
                        if (*d % &n).is_zero() {
                            choices.push((BigInt::one(), *d / &n));
                        }
                    }
                    if rest.len() == 2 {
                        let (d1, d2) = if rest[0] < rest[1] { (rest[0], rest[1]) } else { (rest[1], rest[0]) };
                        if (d2 % d1).is_zero() {
                            choices.push((BigInt::zero(), d1.clone()));
                        }
                    }
                    let t = count(&n);
                    for (r1, p) in choices {
                        let q = BigInt::one();
                        let f = trapezoid_normal(&n, &p, &q, &r1, &r2, &t);
                        let [a, b, c, dd] = trapezoid_vertices(&n, &p, &q, &r1, &r2, &t);
                        let parts = vec![arm_postprocess(arm, last(arm), 0, [&a, &dd], &f)];
                        assemble(CenterCase::Trapezoid1, &[a, b, c, dd], parts, &mut out);
                    }
                } else {
                    let Some(n) = decs.iter().filter(|d| !(big_a % *d).is_zero()).min().cloned() else { continue };
                    let t = count(&n);
                    let mut want: Vec<BigInt> = decs.clone();
                    want.sort();
                    for (p, q) in both(&s.0, &s.1) {
                        for r1 in [BigInt::zero(), BigInt::one()] {
                            for r2 in [BigInt::zero(), BigInt::one()] {
                                let np = if r1.is_one() { &n * &p } else { p.clone() };
                                let nq = if r2.is_one() { &n * &q } else { q.clone() };
                                let mut got = vec![n.clone(), np, nq];
                                got.sort();
                                if got != want {
                                    continue;
                                }
                                let f = trapezoid_normal(&n, &p, &q, &r1, &r2, &t);
                                if &f.z != big_a {
                                    continue;
                                }
                                let [a, b, c, dd] = trapezoid_vertices(&n, &p, &q, &r1, &r2, &t);
                                let parts = vec![arm_postprocess(arm, last(arm), 2, [&a, &b], &f)];
                                assemble(CenterCase::Trapezoid1, &[a, b, c, dd], parts, &mut out);
                            }
                        }
                    }
                }
            }
        }
        _ => return fail("trapezoid", "a trapezoid node needs one to three arms"),
    }
    Ok(out)
}

/// Nodes of a string-shaped diagram from one end to the other.
fn string_order(view: &View, start: usize) -> Vec<usize> {
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some((w, _)) = view.nodes[cur].nbrs.iter().find(|(w, _)| *w != prev) {
        order.push(*w);
        prev = cur;
        cur = *w;
    }
    order
}

fn single_arm(a: &BasicData, out: &mut Candidates) {
    if a.beyond != Beyond::Legs {
        return;
    }
    let a3 = &a.beyond_a3;
    let (x, y) = a.shoulder_set();
    let z = BigInt::zero();
    let one = BigInt::one();
    if a3.is_one() {
        let (r, p) = (p3(&x, &z, &z), p3(&z, &y, &z));
        let parts = vec![arm_postprocess(a, last(a), 2, [&r, &p], &IVec3::unit(2))];
        assemble(CenterCase::Edge1, &[], parts, out);
        return;
    }
    for (r1, p2) in both(&x, &y) {
        if &r1 != a3 {
            continue;
        }
        let (r, p) = (p3(&r1, &z, &z), p3(&z, &p2, &one));
        let beyond = p3(&one, &z, a3);
        let parts = vec![arm_postprocess(a, last(a), 2, [&r, &p], &beyond)];
        assemble(CenterCase::Edge1, &[], parts, out);
    }
}

fn triangle1(view: &View, a: &BasicData, v2: usize, out: &mut Candidates) {
    let decs: Vec<BigInt> = view.nodes[v2].legs.keys().cloned().collect();
    let [d1, d2] = decs.as_slice() else { return };
    let a3 = &a.beyond_a3;
    let s = a.shoulder_set();
    let z = BigInt::zero();
    let one = BigInt::one();
    let mut ds = [d1.clone(), d2.clone()];
    ds.sort();
    let mut ss = [s.0.clone(), s.1.clone()];
    ss.sort();
    if ds == ss {
        // moving triangle: (q1,0,1), (0,p2,1), (r1,r2,0) with r1 p2 + r2 q1 = a3 + q1 p2
        for (p2, q1) in both(&s.0, &s.1) {
            let rhs = a3 + &q1 * &p2;
            let mut sols = Vec::new();
            let mut r1 = BigInt::zero();
            while &r1 * &p2 <= rhs {
                let rest = &rhs - &r1 * &p2;
                if (&rest % &q1).is_zero() {
                    sols.push((r1.clone(), &rest / &q1));
                }
                r1 += 1;
            }
            sols.sort_by_key(|(r1, r2)| !(r1.is_positive() && r2.is_positive()));
            for (r1, r2) in sols {
                let (p, q, r) = (p3(&z, &p2, &one), p3(&q1, &z, &one), p3(&r1, &r2, &z));
                let f = p3(&p2, &q1, a3);
                let parts = vec![arm_postprocess(a, last(a), 2, [&p, &q], &f)];
                assemble(CenterCase::Triangle1, &[p, q, r], parts, out);
            }
        }
        return;
    }
    for st in solve_six_tuple(a3, &s, &(d1.clone(), d2.clone())) {
        let (q, p, r) = (p3(&st.q1, &z, &st.q3), p3(&z, &st.p2, &one), p3(&st.r1, &one, &z));
        let f = p3(&st.a1, &st.a2, a3);
        let parts = vec![arm_postprocess(a, last(a), 2, [&p, &q], &f)];
        assemble(CenterCase::Triangle1, &[p, q, r], parts, out);
    }
}

fn edge2(view: &View, order: &[usize], a1: &BasicData, a2: &BasicData, out: &mut Candidates) {
    let Some(b) = order.iter().position(|v| a2.contains(*v)) else { return };
    if b == 0 {
        return;
    }
    let (u, w) = (order[b - 1], order[b]);
    let (Some(k1), Some(k2)) = (a1.index_of(u), a2.index_of(w)) else { return };
    let (Some(x1), Some(y1), Some(x2), Some(y2)) = (a1.a3_of(u), a2.a3_of(u), a1.a3_of(w), a2.a3_of(w)) else {
        return;
    };
    let Some(det) = view.det(u, w) else { return };
    let cross = (&x1 * &y2 - &y1 * &x2).abs();
    if !cross.is_positive() || !(&cross % &det).is_zero() {
        return;
    }
    let c = cross / det;
    let s1 = (a1.crossings[k1].x.clone(), a1.crossings[k1].y.clone());
    let s2 = (a2.crossings[k2].x.clone(), a2.crossings[k2].y.clone());
    let (Some(q), Some(p)) = (other(&s1, &c), other(&s2, &c)) else { return };
    let third = |x: &BigInt, y: &BigInt| {
        let num = &p * x + &q * y;
        (&num % &c).is_zero().then(|| &num / &c)
    };
    let (Some(z1), Some(z2)) = (third(&x1, &y1), third(&x2, &y2)) else { return };
    let f1 = p3(&x1, &y1, &z1);
    let f2 = p3(&x2, &y2, &z2);
    let zero = BigInt::zero();
    let e0 = p3(&zero, &zero, &c);
    let e1 = p3(&p, &q, &zero);
    let parts = vec![
        arm_postprocess(&a1.truncated(k1), k1, 0, [&e0, &e1], &f2),
        arm_postprocess(&a2.truncated(k2), k2, 1, [&e0, &e1], &f1),
    ];
    assemble(CenterCase::Edge2, &[], parts, out);
}

fn triangle2(view: &View, a1: &BasicData, a2: &BasicData, c: usize, out: &mut Candidates) {
    if a1.beyond != Beyond::Node(c) || a2.beyond != Beyond::Node(c) {
        return;
    }
    let legs: Vec<(&BigInt, &usize)> = view.nodes[c].legs.iter().collect();
    let [(d3, 1)] = legs.as_slice() else { return };
    let d3 = (*d3).clone();
    let f = IVec3::from_big(a1.beyond_a3.clone(), a2.beyond_a3.clone(), d3.clone());
    let (l1, l2) = (a1.triangles.last().expect("arm"), a2.triangles.last().expect("arm"));
    let (Some(n1), Some(n2)) = (view.det(c, l1.node), view.det(c, l2.node)) else { return };
    let r = |x: &BigInt| Rat::from_integer(x.clone());
    let sum = &view.nodes[c].e + r(&l1.a3) / (r(&n1) * r(&f.x)) + r(&l2.a3) / (r(&n2) * r(&f.y));
    let m = -(sum * r(&(&f.x * &f.y * &f.z)));
    let Some(m) = pos_int(&m) else { return };
    let lv = leg_values(&[a1, a2]);
    let Ok((m0, m1)) = view.face_values_with_unknown(&lv, c, &d3) else { return };
    if m1[c].is_zero() {
        return;
    }
    let s = (r(&m) - &m0[c]) / &m1[c];
    let Some(s) = pos_int(&s) else { return };
    let s12 = (BigInt::one(), s);
    for [p, q, rr] in central_triangles(&f, &m, &s12, &a1.shoulder_set(), &a2.shoulder_set()) {
        let parts =
            vec![arm_postprocess(a1, last(a1), 0, [&q, &rr], &f), arm_postprocess(a2, last(a2), 1, [&p, &rr], &f)];
        assemble(CenterCase::Triangle2, &[p, q, rr], parts, out);
    }
}

/// Candidates for a string of nodes, starting from the hand `v1`.
fn string_from(view: &View, v1: usize, v2: usize) -> Result<Candidates> {
    let n = view.len();
    let order = string_order(view, v1);
    let mut out = Vec::new();
    let arms1 = arm_preprocess(view, v1, None)?;
    for a1 in &arms1 {
        let covered = a1.triangles.len();
        if covered == n {
            single_arm(a1, &mut out);
            continue;
        }
        if covered == n - 1 && !a1.contains(v2) && !is_er_hand(view, v2) {
            triangle1(view, a1, v2, &mut out);
            continue;
        }
        let arms2 = arm_preprocess(view, v2, None)?;
        for a2 in &arms2 {
            if a2.triangles.len() == n {
                single_arm(a2, &mut out);
                continue;
            }
            let uncovered: Vec<usize> =
                order.iter().copied().filter(|v| !a1.contains(*v) && !a2.contains(*v)).collect();
            match uncovered.as_slice() {
                [] => edge2(view, &order, a1, a2, &mut out),
                [c] => triangle2(view, a1, a2, *c, &mut out),
                _ => {}
            }
        }
    }
    Ok(out)
}

fn string_case(view: &View) -> Result<Candidates> {
    let ends = find_hand_view(view)?;
    let mut out = Vec::new();
    let mut err = None;
    for (h, other_end) in [(ends[0], ends[1]), (ends[1], ends[0])] {
        match string_from(view, h, other_end) {
            Ok(c) => out.extend(c),
            Err(e) => {
                log::debug!("hand {h}: {e}");
                err.get_or_insert(e);
            }
        }
    }
    match err {
        Some(e) if out.is_empty() => Err(e),
        _ => Ok(out),
    }
}

/// Candidate diagrams for an orbifold diagram with at least two nodes, most likely first.
pub fn solve_center(go: &OrbifoldDiagram) -> Result<Candidates> {
    let view = View::new(go)?;
    if view.len() < 2 {
        return Err(Error::InvalidArgument("the center solver needs at least two nodes".into()));
    }
    let n = view.len();
    let out = if let Some(v) = (0..n).find(|&v| view.groups(v) == 4) {
        trapezoid(&view, v)?
    } else if let Some(v) = (0..n).find(|&v| view.nodes[v].nbrs.len() == 3 && view.nodes[v].legs.is_empty()) {
        triangle3(&view, v)?
    } else {
        string_case(&view)?
    };
    if out.is_empty() {
        return fail("center", "no center is consistent with the orbifold diagram");
    }
    Ok(out)
}
