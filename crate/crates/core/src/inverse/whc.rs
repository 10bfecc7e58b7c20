//! One node: the twelve weighted homogeneous cases.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::verify_candidate;
use crate::diagram::minimal::d_minimal;
use crate::diagram::NewtonDiagram;
use crate::error::{fail, Error, Result};
use crate::lattice::{IVec3, Rat};
use crate::resgraph::OrbifoldDiagram;

fn pt(x: &BigInt, y: &BigInt, z: &BigInt) -> IVec3 {
    IVec3::from_big(x.clone(), y.clone(), z.clone())
}

fn divides(a: &BigInt, b: &BigInt) -> bool {
    (b % a).is_zero()
}

/// `a / b` when exact and non-negative.
fn q(a: &BigInt, b: &BigInt) -> Option<BigInt> {
    if b.is_zero() || !divides(b, a) {
        return None;
    }
    let r = a / b;
    (!r.is_negative()).then_some(r)
}

fn rint(r: &Rat) -> Option<BigInt> {
    r.is_integer().then(|| r.to_integer())
}

/// Leg groups `(decoration, size)` sorted by decoration.
fn groups(go: &OrbifoldDiagram) -> Vec<(BigInt, BigInt)> {
    let mut out: Vec<(BigInt, BigInt)> = Vec::new();
    for d in go.legs_at(0) {
        match out.last_mut() {
            Some((last, k)) if *last == d => *k += 1,
            _ => out.push((d, BigInt::one())),
        }
    }
    out
}

/// Every ordering of the leg groups.
fn orderings(g: &[(BigInt, BigInt)]) -> Vec<Vec<(BigInt, BigInt)>> {
    if g.len() <= 1 {
        return vec![g.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..g.len() {
        let mut rest = g.to_vec();
        let head = rest.remove(i);
        for mut tail in orderings(&rest) {
            tail.insert(0, head.clone());
            out.push(tail);
        }
    }
    out
}

/// Supports of the listed equations for one ordering of the groups, tagged with the case number.
fn case_supports(g: &[(BigInt, BigInt)], e: &Rat) -> Vec<(usize, Vec<IVec3>)> {
    let zero = BigInt::zero();
    let one = BigInt::one();
    let two = BigInt::from(2);
    let mut out = Vec::new();
    match g {
        [(d, k)] => {
            let k1 = k - 1;
            out.push((1, vec![pt(d, &zero, &zero), pt(&zero, &k1, &one), pt(&zero, &one, &k1)]));
        }
        [(d, k), (dd, kk)] => {
            if *k == two && *kk == two {
                out.push((2, vec![pt(d, &zero, &one), pt(&zero, &(dd * 2), &zero), pt(&zero, &zero, &two)]));
            }
            if kk.is_one() && divides(d, dd) {
                let y = (k - 1) * dd / d + 1;
                out.push((3, vec![pt(k, &one, &zero), pt(&one, &y, &zero), pt(&zero, &zero, d)]));
            }
            if kk.is_one() && d.gcd(dd).is_one() {
                let edd = -(e * Rat::from_integer(d * dd));
                if edd.is_one() && k > &one {
                    let y = (k - 1) * dd;
                    out.push((4, vec![pt(d, &zero, &zero), pt(&zero, &y, &one), pt(&zero, &zero, k)]));
                }
                if rint(&edd).as_ref() == Some(k) {
                    if let Some(y) = q(&((dd + 1) * (k - 1)), k) {
                        out.push((5, vec![pt(d, &one, &zero), pt(&zero, &y, &one), pt(&zero, &zero, k)]));
                    }
                }
            }
        }
        [(a, k), (b, kb), (c, kc)] => {
            if *k == two && *kb == two && *kc == two {
                out.push((6, vec![pt(&(a * 2), &zero, &zero), pt(&zero, &(b * 2), &zero), pt(&zero, &zero, &(c * 2))]));
            }
            if !(kb.is_one() && kc.is_one()) {
                return out;
            }
            if divides(a, b) && divides(a, c) {
                let x = b * k / a + 1;
                let y = c * k / a + 1;
                out.push((7, vec![pt(&x, &one, &zero), pt(&one, &y, &zero), pt(&zero, &zero, a)]));
            }
            if divides(b, c) && k > &one {
                out.push((8, vec![pt(a, &one, &zero), pt(&zero, &(c / b + 1), &zero), pt(&zero, &zero, &(k * b))]));
            }
            let ebc = -(e * Rat::from_integer(b * c));
            if divides(a, b) && !divides(a, c) {
                if ebc.is_one() {
                    out.push((
                        9,
                        vec![pt(&(k * c), &one, &zero), pt(&zero, &(b * k / a + 1), &zero), pt(&zero, &zero, a)],
                    ));
                }
                if let Some(big_a) = rint(&ebc).filter(|v| v > &one) {
                    if let Some(x) = q(&(k * c - 1), &big_a) {
                        out.push((10, vec![pt(&(x + 1), &one, &zero), pt(&zero, &big_a, &zero), pt(&one, &zero, a)]));
                    }
                }
            }
            let free = !divides(a, b)
                && !divides(b, a)
                && !divides(a, c)
                && !divides(c, a)
                && !divides(b, c)
                && !divides(c, b);
            if free {
                let eabc = -(e * Rat::from_integer(a * b * c));
                if eabc.is_one() {
                    out.push((11, vec![pt(a, &zero, &zero), pt(&zero, &(k * c), &zero), pt(&zero, &zero, &(k * b))]));
                }
                if let Some(big_a) = rint(&eabc).filter(|v| k.is_one() && v > &one) {
                    if let (Some(x), Some(y), Some(z)) = (q(&(&big_a - b), a), q(&(&big_a - c), b), q(&(&big_a - a), c))
                    {
                        out.push((12, vec![pt(&x, &one, &zero), pt(&zero, &y, &one), pt(&one, &zero, &z)]));
                    }
                    if let (Some(x), Some(y), Some(z)) = (q(&(&big_a - b), c), q(&(&big_a - a), b), q(&(&big_a - c), a))
                    {
                        out.push((12, vec![pt(&x, &one, &zero), pt(&zero, &y, &one), pt(&one, &zero, &z)]));
                    }
                }
            }
        }
        _ => {}
    }
    out
}

/// All supports suggested by the table for a one-node orbifold diagram, in case order.
pub fn whc_candidates(go: &OrbifoldDiagram) -> Result<Vec<(usize, Vec<IVec3>)>> {
    if go.node_count() != 1 || go.free_edge.is_some() {
        return Err(Error::InvalidArgument("expected an orbifold diagram with one node".into()));
    }
    let g = groups(go);
    let legs: BigInt = g.iter().map(|(_, k)| k.clone()).sum();
    if legs < BigInt::from(3) {
        return fail("weighted homogeneous", "fewer than three legs");
    }
    let mut out = Vec::new();
    for ord in orderings(&g) {
        out.extend(case_supports(&ord, &go.euler[0]));
    }
    out.sort_by_key(|(c, _)| *c);
    Ok(out)
}

/// Match the table, forward-verify every match and return the case number with the d-minimal diagram.
pub fn case_n1(go: &OrbifoldDiagram) -> Result<(usize, NewtonDiagram)> {
    let mut found: Option<(usize, NewtonDiagram)> = None;
    for (case, pts) in whc_candidates(go)? {
        let Some(g) = verify_candidate(&pts, go) else { continue };
        let dm = d_minimal(&g)?;
        match &found {
            None => {
                log::debug!("weighted homogeneous case {case} matches");
                found = Some((case, dm));
            }
            Some((first, prev)) if !prev.same_up_to_permutation(&dm) => {
                return Err(Error::Inconsistent(format!(
                    "weighted homogeneous cases {first} and {case} give different diagrams"
                )));
            }
            _ => {}
        }
    }
    match found {
        Some(f) => Ok(f),
        None => fail("weighted homogeneous", "no case of the table reproduces the orbifold diagram"),
    }
}
