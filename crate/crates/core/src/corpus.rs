//! Seeded generation of valid Newton diagrams.

use std::collections::BTreeSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::diagram::{newton_boundary, NewtonDiagram};
use crate::error::{arg, Result};
use crate::lattice::IVec3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusSpec {
    /// Coordinates are drawn from `[0, bound]`.
    pub bound: i64,
    pub max_support: usize,
    pub count: usize,
    pub seed: u64,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec { bound: 8, max_support: 6, count: 500, seed: 1 }
    }
}

fn sample_point(rng: &mut ChaCha8Rng, bound: i64) -> IVec3 {
    let zeros = match rng.gen_range(0..10) {
        0..=2 => 2,
        3..=7 => 1,
        _ => 0,
    };
    let mut c = [0i64; 3];
    for v in c.iter_mut() {
        *v = rng.gen_range(1..=bound);
    }
    let mut idx = [0usize, 1, 2];
    for i in (1..3).rev() {
        let j = rng.gen_range(0..=i);
        idx.swap(i, j);
    }
    for &i in idx.iter().take(zeros) {
        c[i] = 0;
    }
    IVec3::new(c[0], c[1], c[2])
}

/// A point on a coordinate plane close to one of its two axes.
fn sample_arm_point(rng: &mut ChaCha8Rng, bound: i64) -> IVec3 {
    let axis = rng.gen_range(0..3);
    let side = (axis + rng.gen_range(1..3)) % 3;
    let mut c = [0i64; 3];
    c[axis] = rng.gen_range(1..=bound);
    let low = if rng.gen_bool(0.2) { 0 } else { 1 };
    c[side] = rng.gen_range(low..=3.min(bound));
    IVec3::new(c[0], c[1], c[2])
}

/// Valid (isolated, rational homology sphere) diagrams with distinct vertex sets.
pub fn generate(spec: &CorpusSpec) -> Result<Vec<NewtonDiagram>> {
    generate_with(spec, |rng, bound| sample_point(rng, bound))
}

/// Like [`generate`], with most points near the coordinate axes so that long arms are common.
pub fn generate_armed(spec: &CorpusSpec) -> Result<Vec<NewtonDiagram>> {
    generate_with(
        spec,
        |rng, bound| {
            if rng.gen_bool(0.85) {
                sample_arm_point(rng, bound)
            } else {
                sample_point(rng, bound)
            }
        },
    )
}

/// Diagrams built around a trapezoid `(p,0,n),(0,q,n),(r1,r2+tq,0),(r1+tp,r2,0)` plus points near the axes.
pub fn generate_trapezoids(spec: &CorpusSpec) -> Result<Vec<NewtonDiagram>> {
    generate_supports(spec, |rng, bound, size| {
        let small = (bound / 3).max(1);
        let (p, q, n) = (rng.gen_range(1..=small), rng.gen_range(1..=small), rng.gen_range(1..=small));
        let (t, r1, r2) = (rng.gen_range(1..=3), rng.gen_range(0..=small), rng.gen_range(0..=small));
        let mut pts = vec![
            IVec3::new(p, 0, n),
            IVec3::new(0, q, n),
            IVec3::new(r1, r2 + t * q, 0),
            IVec3::new(r1 + t * p, r2, 0),
        ];
        pts.extend((0..size).map(|_| sample_arm_point(rng, bound)));
        pts
    })
}

fn generate_with(spec: &CorpusSpec, sample: impl Fn(&mut ChaCha8Rng, i64) -> IVec3) -> Result<Vec<NewtonDiagram>> {
    generate_supports(spec, |rng, bound, size| (0..size).map(|_| sample(rng, bound)).collect())
}

fn generate_supports(
    spec: &CorpusSpec,
    support: impl Fn(&mut ChaCha8Rng, i64, usize) -> Vec<IVec3>,
) -> Result<Vec<NewtonDiagram>> {
    if spec.bound < 2 {
        return arg("corpus bound must be at least 2");
    }
    if spec.max_support < 2 {
        return arg("support size must be at least 2");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut seen: BTreeSet<Vec<IVec3>> = BTreeSet::new();
    let mut out = Vec::new();
    let mut attempts = 0usize;
    while out.len() < spec.count {
        attempts += 1;
        if attempts > spec.count.saturating_mul(10_000) {
            log::warn!("corpus generation stopped after {attempts} attempts");
            break;
        }
        let size = rng.gen_range(2..=spec.max_support);
        let pts = support(&mut rng, spec.bound, size);
        let g = newton_boundary(&pts);
        if g.vertices.len() < 2 || !g.is_valid() || seen.contains(&g.vertices) {
            continue;
        }
        if g.compact_count() > 0 && g.edges.iter().any(|e| !g.faces[e.faces[0]].compact && !g.faces[e.faces[1]].compact)
        {
            continue;
        }
        seen.insert(g.vertices.clone());
        out.push(g);
    }
    Ok(out)
}
