//! Exact integer vectors, rationals and the small lattice lemmas used everywhere else.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{arg, Error, Result};

/// Exact rational number, always reduced with a positive denominator.
pub type Rat = BigRational;

/// Shorthand for building a big integer from a machine integer.
pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

/// Shorthand for the rational `n / d`.
pub fn rat(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Rat {
    Rat::new(n.into(), d.into())
}

/// Integer 3-vector used for lattice points, normals and edge vectors.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IVec3 {
    pub x: BigInt,
    pub y: BigInt,
    pub z: BigInt,
}

impl IVec3 {
    pub fn new(x: i64, y: i64, z: i64) -> Self {
        IVec3 { x: int(x), y: int(y), z: int(z) }
    }

    pub fn from_big(x: BigInt, y: BigInt, z: BigInt) -> Self {
        IVec3 { x, y, z }
    }

    pub fn from_array(c: [BigInt; 3]) -> Self {
        let [x, y, z] = c;
        IVec3 { x, y, z }
    }

    pub fn zero() -> Self {
        IVec3::new(0, 0, 0)
    }

    /// Coordinate vector E_i (0-based index).
    pub fn unit(i: usize) -> Self {
        let mut v = IVec3::zero();
        v[i] = BigInt::one();
        v
    }

    pub fn coords(&self) -> [&BigInt; 3] {
        [&self.x, &self.y, &self.z]
    }

    pub fn to_array(&self) -> [BigInt; 3] {
        [self.x.clone(), self.y.clone(), self.z.clone()]
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn dot(&self, o: &IVec3) -> BigInt {
        &self.x * &o.x + &self.y * &o.y + &self.z * &o.z
    }

    pub fn scale(&self, k: &BigInt) -> IVec3 {
        IVec3 { x: &self.x * k, y: &self.y * k, z: &self.z * k }
    }

    /// Exact division of every coordinate; `None` if not divisible.
    pub fn div_exact(&self, k: &BigInt) -> Option<IVec3> {
        if k.is_zero() {
            return None;
        }
        let mut out = IVec3::zero();
        for i in 0..3 {
            let (q, r) = self[i].div_rem(k);
            if !r.is_zero() {
                return None;
            }
            out[i] = q;
        }
        Some(out)
    }

    /// All coordinates strictly positive.
    pub fn is_positive(&self) -> bool {
        self.coords().iter().all(|c| c.is_positive())
    }

    /// All coordinates non-negative.
    pub fn is_nonneg(&self) -> bool {
        self.coords().iter().all(|c| !c.is_negative())
    }

    /// Number of zero coordinates.
    pub fn zeros(&self) -> usize {
        self.coords().iter().filter(|c| c.is_zero()).count()
    }

    pub fn sum(&self) -> BigInt {
        &self.x + &self.y + &self.z
    }

    /// Apply a coordinate permutation: output coordinate `i` is input coordinate `perm[i]`.
    pub fn permute(&self, perm: &[usize; 3]) -> IVec3 {
        IVec3 { x: self[perm[0]].clone(), y: self[perm[1]].clone(), z: self[perm[2]].clone() }
    }

    /// Componentwise `self >= o`.
    pub fn dominates(&self, o: &IVec3) -> bool {
        (0..3).all(|i| self[i] >= o[i])
    }
}

impl Index<usize> for IVec3 {
    type Output = BigInt;
    fn index(&self, i: usize) -> &BigInt {
        match i {
            0 => &self.x,
            1 => &self.y,
            2 => &self.z,
            _ => panic!("IVec3 index {i} out of range"),
        }
    }
}

impl IndexMut<usize> for IVec3 {
    fn index_mut(&mut self, i: usize) -> &mut BigInt {
        match i {
            0 => &mut self.x,
            1 => &mut self.y,
            2 => &mut self.z,
            _ => panic!("IVec3 index {i} out of range"),
        }
    }
}

impl Add for &IVec3 {
    type Output = IVec3;
    fn add(self, o: &IVec3) -> IVec3 {
        IVec3 { x: &self.x + &o.x, y: &self.y + &o.y, z: &self.z + &o.z }
    }
}

impl Sub for &IVec3 {
    type Output = IVec3;
    fn sub(self, o: &IVec3) -> IVec3 {
        IVec3 { x: &self.x - &o.x, y: &self.y - &o.y, z: &self.z - &o.z }
    }
}

impl Neg for &IVec3 {
    type Output = IVec3;
    fn neg(self) -> IVec3 {
        IVec3 { x: -&self.x, y: -&self.y, z: -&self.z }
    }
}

impl Mul<&IVec3> for &BigInt {
    type Output = IVec3;
    fn mul(self, v: &IVec3) -> IVec3 {
        v.scale(self)
    }
}

impl fmt::Debug for IVec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.x, self.y, self.z)
    }
}

impl fmt::Display for IVec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.x, self.y, self.z)
    }
}

/// Ordered, coplanar lattice polygon (cyclic vertex order, no redundant vertices).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePolygon {
    pub vertices: Vec<IVec3>,
}

impl LatticePolygon {
    pub fn new(vertices: Vec<IVec3>) -> Self {
        LatticePolygon { vertices }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Cyclic edges as pairs of consecutive vertices.
    pub fn edges(&self) -> Vec<(IVec3, IVec3)> {
        let n = self.vertices.len();
        (0..n).map(|i| (self.vertices[i].clone(), self.vertices[(i + 1) % n].clone())).collect()
    }

    /// Sum of the cross products of a fan triangulation; a multiple of the primitive normal.
    fn area_vector(&self) -> IVec3 {
        let v0 = &self.vertices[0];
        let mut acc = IVec3::zero();
        for w in self.vertices[1..].windows(2) {
            acc = &acc + &cross(&(&w[0] - v0), &(&w[1] - v0));
        }
        acc
    }

    /// Number of lattice points on the boundary.
    pub fn boundary_points(&self) -> BigInt {
        self.edges().iter().map(|(a, b)| gcd3(&(b - a))).sum()
    }
}

/// gcd of the absolute values of the coordinates; `gcd3(0) = 0`.
pub fn gcd3(v: &IVec3) -> BigInt {
    v.x.gcd(&v.y).gcd(&v.z)
}

/// Divide by `gcd3`, keeping orientation.
pub fn primitive(v: &IVec3) -> Result<IVec3> {
    let g = gcd3(v);
    if g.is_zero() {
        return arg("primitive of the zero vector");
    }
    Ok(v.div_exact(&g).expect("gcd divides"))
}

pub fn cross(a: &IVec3, b: &IVec3) -> IVec3 {
    IVec3 { x: &a.y * &b.z - &a.z * &b.y, y: &a.z * &b.x - &a.x * &b.z, z: &a.x * &b.y - &a.y * &b.x }
}

/// Determinant of two adjacent faces: gcd of the entries of their cross product.
pub fn face_det(f1: &IVec3, f2: &IVec3) -> Result<BigInt> {
    let g = gcd3(&cross(f1, f2));
    if g.is_zero() {
        return arg(format!("parallel normals {f1} and {f2}"));
    }
    Ok(g)
}

/// Combinatorial area `2 #interior + #boundary - 2` of a lattice polygon.
pub fn comb_area(p: &LatticePolygon) -> Result<BigInt> {
    if p.vertices.len() < 3 {
        return arg("polygon needs at least three vertices");
    }
    let av = p.area_vector();
    if av.is_zero() {
        return arg("degenerate polygon");
    }
    // the fan cross products are positive multiples of the primitive normal
    Ok(gcd3(&av))
}

/// Negative (Hirzebruch-Jung) continued fraction of `t/s`, every entry at least 2.
pub fn neg_cont_frac(t: &BigInt, s: &BigInt) -> Result<Vec<BigInt>> {
    if !s.is_positive() || s >= t {
        return arg(format!("continued fraction needs 0 < s < t, got t={t}, s={s}"));
    }
    let (mut t, mut s) = (t.clone(), s.clone());
    let mut out = Vec::new();
    loop {
        let b = t.div_ceil(&s);
        let r = &b * &s - &t;
        out.push(b);
        if r.is_zero() {
            return Ok(out);
        }
        t = s;
        s = r;
    }
}

/// Evaluate `[b1, ..., bk]` as `b1 - 1/(b2 - 1/(...))`.
pub fn eval_neg_cont_frac(bs: &[BigInt]) -> Rat {
    let mut acc: Option<Rat> = None;
    for b in bs.iter().rev() {
        let v = Rat::from_integer(b.clone());
        acc = Some(match acc {
            None => v,
            Some(a) => v - a.recip(),
        });
    }
    acc.unwrap_or_else(Rat::zero)
}

/// Normal of the empty triangle `(0,p2,p3), (q1,0,q3), (r1,r2,0)`.
pub fn empty_triangle_normal(a: &IVec3, b: &IVec3, c: &IVec3) -> Result<IVec3> {
    if !a.x.is_zero() || !b.y.is_zero() || !c.z.is_zero() {
        return arg("expected vertices of the form (0,p2,p3), (q1,0,q3), (r1,r2,0)");
    }
    let poly = LatticePolygon::new(vec![a.clone(), b.clone(), c.clone()]);
    if comb_area(&poly)? != BigInt::one() {
        return arg("triangle is not empty");
    }
    let (p2, p3, q1, q3, r1, r2) = (&a.y, &a.z, &b.x, &b.z, &c.x, &c.y);
    let n = IVec3 { x: p2 * q3 + r2 * p3 - r2 * q3, y: q3 * r1 + p3 * q1 - p3 * r1, z: r1 * p2 + q1 * r2 - q1 * p2 };
    let m = n.dot(a);
    if !m.is_positive() || n.dot(b) != m || n.dot(c) != m {
        return Err(Error::Inconsistent(format!("normal {n} does not support {a}, {b}, {c}")));
    }
    Ok(n)
}

/// Edge vector `(m/t) F1 x F2` of the common edge of two faces.
pub fn edge_vector(f1: &IVec3, f2: &IVec3, m: &BigInt) -> Result<IVec3> {
    let c = cross(f1, f2);
    let t = face_det(f1, f2)?;
    Ok(c.div_exact(&t).expect("gcd divides").scale(m))
}

/// Determinant through a third vertex: `(m/g) <a, F_adj>`.
pub fn det_via_vertex(a: &IVec3, f_adj: &IVec3, m: &BigInt, g: &BigInt) -> Result<BigInt> {
    let num = m * a.dot(f_adj);
    if g.is_zero() {
        return arg("zero combinatorial area");
    }
    let (q, r) = num.div_rem(g);
    if !r.is_zero() || !q.is_positive() {
        return Err(Error::Inconsistent(format!("(m/g)<a,F> = {num}/{g} is not a positive integer")));
    }
    Ok(q)
}

/// Determinant of a crossing boundary edge `[(a,0,c),(0,1,b)]`: the third normal coordinate.
pub fn crossing_edge_det(f: &IVec3) -> Result<BigInt> {
    if !f.z.is_positive() {
        return arg(format!("normal {f} has no positive third coordinate"));
    }
    Ok(f.z.clone())
}

/// Which coordinate plane carries the next coordinate-plane edge of an arm.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlaneSide {
    Same,
    Other,
}

pub fn plane_side_test(leg_a: &BigInt, leg_b: &BigInt, t: &BigInt) -> Result<PlaneSide> {
    let same = leg_a == leg_b && (t % leg_b).is_zero();
    let other = leg_a.gcd(leg_b).gcd(t).is_one();
    match (same, other) {
        (true, false) => Ok(PlaneSide::Same),
        (false, true) => Ok(PlaneSide::Other),
        _ => {
            Err(Error::Inconsistent(format!("plane side test undecided for legs {leg_a}, {leg_b} and determinant {t}")))
        }
    }
}

/// All six coordinate permutations.
pub const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Rational vector helper used by the linear solvers.
pub fn rat_int(v: &BigInt) -> Rat {
    Rat::from_integer(v.clone())
}

/// Integer value of a rational, if it is one.
pub fn as_int(r: &Rat) -> Option<BigInt> {
    if r.is_integer() {
        Some(r.to_integer())
    } else {
        None
    }
}
