//! The projective plane `PG(2, q)`: points, lines, incidence, projectivities
//! and cross-ratios.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{Field, FieldElement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("homogeneous coordinates must not all vanish")]
    ZeroVector,
    #[error("the two points coincide")]
    EqualPoints,
    #[error("the two lines coincide")]
    EqualLines,
    #[error("points are not collinear")]
    NotCollinear,
    #[error("lines are not concurrent")]
    NotConcurrent,
    #[error("cross-ratio arguments must be pairwise distinct")]
    RepeatedArguments,
    #[error("points are not in general position")]
    Degenerate,
    #[error("matrix is singular")]
    Singular,
    #[error("auxiliary line passes through the common point or coincides with an argument")]
    BadTransversal,
}

pub type Triple = [FieldElement; 3];

/// A point of `PG(2, q)`, first nonzero coordinate equal to one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProjPoint(Triple);

/// A line `a x1 + b x2 + c x3 = 0`, normalized like points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProjLine(Triple);

/// Scales `v` so that its first nonzero entry is one.
pub fn normalize(f: &Field, v: Triple) -> Option<Triple> {
    let lead = v.iter().copied().find(|x| !x.is_zero())?;
    let s = f.inv(lead).ok()?;
    Some([f.mul(v[0], s), f.mul(v[1], s), f.mul(v[2], s)])
}

pub fn dot(f: &Field, a: &Triple, b: &Triple) -> FieldElement {
    f.add(f.add(f.mul(a[0], b[0]), f.mul(a[1], b[1])), f.mul(a[2], b[2]))
}

pub fn cross(f: &Field, a: &Triple, b: &Triple) -> Triple {
    [
        f.sub(f.mul(a[1], b[2]), f.mul(a[2], b[1])),
        f.sub(f.mul(a[2], b[0]), f.mul(a[0], b[2])),
        f.sub(f.mul(a[0], b[1]), f.mul(a[1], b[0])),
    ]
}

pub fn det3(f: &Field, a: &Triple, b: &Triple, c: &Triple) -> FieldElement {
    dot(f, a, &cross(f, b, c))
}

fn ints(f: &Field, v: [i64; 3]) -> Triple {
    [f.from_int(v[0]), f.from_int(v[1]), f.from_int(v[2])]
}

impl ProjPoint {
    pub fn new(f: &Field, coords: Triple) -> Result<Self, GeometryError> {
        normalize(f, coords).map(ProjPoint).ok_or(GeometryError::ZeroVector)
    }

    pub fn from_ints(f: &Field, coords: [i64; 3]) -> Result<Self, GeometryError> {
        Self::new(f, ints(f, coords))
    }

    /// Affine point `(x, y)` embedded as `(x, y, 1)`.
    pub fn affine(f: &Field, x: FieldElement, y: FieldElement) -> Self {
        ProjPoint(normalize(f, [x, y, FieldElement::ONE]).expect("nonzero"))
    }

    pub fn coords(&self) -> Triple {
        self.0
    }

    /// The line with the same coordinate triple.
    pub fn dual(&self) -> ProjLine {
        ProjLine(self.0)
    }

    pub fn is_on(&self, f: &Field, l: &ProjLine) -> bool {
        dot(f, &self.0, &l.0).is_zero()
    }
}

impl ProjLine {
    pub fn new(f: &Field, coeffs: Triple) -> Result<Self, GeometryError> {
        normalize(f, coeffs).map(ProjLine).ok_or(GeometryError::ZeroVector)
    }

    pub fn from_ints(f: &Field, coeffs: [i64; 3]) -> Result<Self, GeometryError> {
        Self::new(f, ints(f, coeffs))
    }

    pub fn coeffs(&self) -> Triple {
        self.0
    }

    /// The point with the same coordinate triple.
    pub fn dual(&self) -> ProjPoint {
        ProjPoint(self.0)
    }

    pub fn contains(&self, f: &Field, p: &ProjPoint) -> bool {
        p.is_on(f, self)
    }

    /// The line at infinity `x3 = 0`.
    pub fn at_infinity() -> Self {
        ProjLine([FieldElement::ZERO, FieldElement::ZERO, FieldElement::ONE])
    }
}

pub fn line_through(f: &Field, p: &ProjPoint, q: &ProjPoint) -> Result<ProjLine, GeometryError> {
    if p == q {
        return Err(GeometryError::EqualPoints);
    }
    Ok(ProjLine(normalize(f, cross(f, &p.0, &q.0)).expect("distinct points")))
}

pub fn meet(f: &Field, l: &ProjLine, m: &ProjLine) -> Result<ProjPoint, GeometryError> {
    if l == m {
        return Err(GeometryError::EqualLines);
    }
    Ok(ProjPoint(normalize(f, cross(f, &l.0, &m.0)).expect("distinct lines")))
}

pub fn collinear(f: &Field, a: &ProjPoint, b: &ProjPoint, c: &ProjPoint) -> bool {
    det3(f, &a.0, &b.0, &c.0).is_zero()
}

/// Writes `c` as `x a + y b` for independent `a`, `b` (assumes `c` lies in their span).
fn span_coords(f: &Field, a: &Triple, b: &Triple, c: &Triple) -> (FieldElement, FieldElement) {
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let minor = f.sub(f.mul(a[i], b[j]), f.mul(a[j], b[i]));
        if minor.is_zero() {
            continue;
        }
        let x = f.sub(f.mul(c[i], b[j]), f.mul(c[j], b[i]));
        let y = f.sub(f.mul(a[i], c[j]), f.mul(a[j], c[i]));
        let inv = f.inv(minor).expect("nonzero minor");
        return (f.mul(x, inv), f.mul(y, inv));
    }
    unreachable!("a and b are independent")
}

/// Cross-ratio of four vectors spanning a 2-dimensional space:
/// with `C = aA + bB` and `D = cA + dB` it is `(b c) / (a d)`.
fn cross_ratio_vectors(
    f: &Field,
    a: &Triple,
    b: &Triple,
    c: &Triple,
    d: &Triple,
) -> FieldElement {
    let (ca, cb) = span_coords(f, a, b, c);
    let (da, db) = span_coords(f, a, b, d);
    f.div(f.mul(cb, da), f.mul(ca, db)).expect("distinct arguments")
}

/// Cross-ratio `(A, B; C, D)` of four distinct collinear points. With
/// `A = (1,0,0)`, `B = (0,1,0)`, `C = (1,1,0)` the point `D = (k,1,0)` has
/// cross-ratio `k`.
pub fn cross_ratio_points(
    f: &Field,
    a: &ProjPoint,
    b: &ProjPoint,
    c: &ProjPoint,
    d: &ProjPoint,
) -> Result<FieldElement, GeometryError> {
    let pts = [a, b, c, d];
    for i in 0..4 {
        for j in i + 1..4 {
            if pts[i] == pts[j] {
                return Err(GeometryError::RepeatedArguments);
            }
        }
    }
    if !collinear(f, a, b, c) || !collinear(f, a, b, d) {
        return Err(GeometryError::NotCollinear);
    }
    Ok(cross_ratio_vectors(f, &a.0, &b.0, &c.0, &d.0))
}

/// Cross-ratio of four distinct concurrent lines, computed on the dual points.
pub fn cross_ratio_lines(f: &Field, lines: [&ProjLine; 4]) -> Result<FieldElement, GeometryError> {
    let [l1, l2, l3, l4] = lines;
    cross_ratio_points(f, &l1.dual(), &l2.dual(), &l3.dual(), &l4.dual()).map_err(|e| match e {
        GeometryError::NotCollinear => GeometryError::NotConcurrent,
        e => e,
    })
}

/// Cross-ratio of four concurrent lines through their traces on `transversal`.
pub fn cross_ratio_lines_via_transversal(
    f: &Field,
    lines: [&ProjLine; 4],
    transversal: &ProjLine,
) -> Result<FieldElement, GeometryError> {
    let [l1, l2, l3, l4] = lines;
    if lines.contains(&transversal) {
        return Err(GeometryError::BadTransversal);
    }
    let centre = meet(f, l1, l2).map_err(|_| GeometryError::RepeatedArguments)?;
    if transversal.contains(f, &centre) {
        return Err(GeometryError::BadTransversal);
    }
    let tr = |l: &ProjLine| meet(f, l, transversal).expect("distinct lines");
    cross_ratio_points(f, &tr(l1), &tr(l2), &tr(l3), &tr(l4)).map_err(|e| match e {
        GeometryError::NotCollinear => GeometryError::NotConcurrent,
        e => e,
    })
}

/// The values `{k, 1/k, 1-k, 1/(1-k), k/(k-1), 1-1/k}`, sorted and deduplicated.
pub fn six_orbit(f: &Field, k: FieldElement) -> Vec<FieldElement> {
    assert!(!k.is_zero() && k != f.one(), "cross-ratio is never 0 or 1");
    let one = f.one();
    let inv = |x| f.inv(x).expect("nonzero");
    let omk = f.sub(one, k);
    let mut v = vec![
        k,
        inv(k),
        omk,
        inv(omk),
        f.mul(k, inv(f.sub(k, one))),
        f.sub(one, inv(k)),
    ];
    v.sort();
    v.dedup();
    v
}

pub type Matrix3 = [[FieldElement; 3]; 3];

fn mat_vec(f: &Field, m: &Matrix3, v: &Triple) -> Triple {
    [dot(f, &m[0], v), dot(f, &m[1], v), dot(f, &m[2], v)]
}

fn transpose(m: &Matrix3) -> Matrix3 {
    let mut t = *m;
    for (i, row) in m.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            t[j][i] = x;
        }
    }
    t
}

fn mat_mul(f: &Field, a: &Matrix3, b: &Matrix3) -> Matrix3 {
    let bt = transpose(b);
    let mut out = [[FieldElement::ZERO; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = dot(f, &a[i], &bt[j]);
        }
    }
    out
}

fn mat_inv(f: &Field, m: &Matrix3) -> Option<Matrix3> {
    let det = det3(f, &m[0], &m[1], &m[2]);
    let s = f.inv(det).ok()?;
    // The columns of the inverse are the cross products of the rows.
    let c0 = cross(f, &m[1], &m[2]);
    let c1 = cross(f, &m[2], &m[0]);
    let c2 = cross(f, &m[0], &m[1]);
    let mut out = [[FieldElement::ZERO; 3]; 3];
    for i in 0..3 {
        out[i] = [f.mul(c0[i], s), f.mul(c1[i], s), f.mul(c2[i], s)];
    }
    Some(out)
}

/// An invertible 3x3 matrix acting on points by `P -> M P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projectivity {
    matrix: Matrix3,
    inverse: Matrix3,
}

impl Projectivity {
    pub fn new(f: &Field, matrix: Matrix3) -> Result<Self, GeometryError> {
        let inverse = mat_inv(f, &matrix).ok_or(GeometryError::Singular)?;
        Ok(Projectivity { matrix, inverse })
    }

    pub fn identity() -> Self {
        let (o, z) = (FieldElement::ONE, FieldElement::ZERO);
        let m = [[o, z, z], [z, o, z], [z, z, o]];
        Projectivity { matrix: m, inverse: m }
    }

    pub fn matrix(&self) -> &Matrix3 {
        &self.matrix
    }

    pub fn inverse(&self) -> Projectivity {
        Projectivity { matrix: self.inverse, inverse: self.matrix }
    }

    /// `self` after `other`.
    pub fn compose(&self, f: &Field, other: &Projectivity) -> Projectivity {
        Projectivity {
            matrix: mat_mul(f, &self.matrix, &other.matrix),
            inverse: mat_mul(f, &other.inverse, &self.inverse),
        }
    }

    pub fn apply_point(&self, f: &Field, p: &ProjPoint) -> ProjPoint {
        ProjPoint(normalize(f, mat_vec(f, &self.matrix, &p.0)).expect("invertible"))
    }

    /// Lines transform by `l -> l M^{-1}`, which preserves incidence.
    pub fn apply_line(&self, f: &Field, l: &ProjLine) -> ProjLine {
        let it = transpose(&self.inverse);
        ProjLine(normalize(f, mat_vec(f, &it, &l.0)).expect("invertible"))
    }

    /// Whether two matrices define the same projectivity.
    pub fn same_as(&self, f: &Field, other: &Projectivity) -> bool {
        let flat = |m: &Matrix3| -> Vec<FieldElement> { m.iter().flatten().copied().collect() };
        let (a, b) = (flat(&self.matrix), flat(&other.matrix));
        let i = a.iter().position(|x| !x.is_zero()).expect("invertible");
        if b[i].is_zero() {
            return false;
        }
        let s = f.div(b[i], a[i]).expect("nonzero");
        a.iter().zip(&b).all(|(&x, &y)| f.mul(x, s) == y)
    }
}

/// The projectivity sending `p1..p4` to `(1,0,0), (0,1,0), (0,0,1), (1,1,1)`.
pub fn frame_map(f: &Field, pts: [&ProjPoint; 4]) -> Result<Projectivity, GeometryError> {
    let [p1, p2, p3, p4] = pts;
    let cols = transpose(&[p1.0, p2.0, p3.0]);
    let a_inv = mat_inv(f, &cols).ok_or(GeometryError::Degenerate)?;
    let lambda = mat_vec(f, &a_inv, &p4.0);
    if lambda.iter().any(|x| x.is_zero()) {
        return Err(GeometryError::Degenerate);
    }
    let scaled = transpose(&[
        p1.0.map(|x| f.mul(x, lambda[0])),
        p2.0.map(|x| f.mul(x, lambda[1])),
        p3.0.map(|x| f.mul(x, lambda[2])),
    ]);
    Ok(Projectivity::new(f, scaled)?.inverse())
}

/// Enumeration and indexing of all points and lines of `PG(2, q)`.
///
/// Index order coincides with the lexicographic order of canonical
/// coordinates: `(0,0,1)`, then `(0,1,b)`, then `(1,a,b)`.
#[derive(Clone, Debug)]
pub struct Plane {
    field: Field,
}

impl Plane {
    pub fn new(field: &Field) -> Self {
        Plane { field: field.clone() }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn size(&self) -> usize {
        let q = self.field.order() as usize;
        q * q + q + 1
    }

    pub fn index_of(&self, t: &Triple) -> usize {
        let q = self.field.order() as usize;
        if !t[0].is_zero() {
            1 + q + t[1].index() as usize * q + t[2].index() as usize
        } else if !t[1].is_zero() {
            1 + t[2].index() as usize
        } else {
            0
        }
    }

    pub fn triple_at(&self, idx: usize) -> Triple {
        let q = self.field.order() as usize;
        let el = |i: usize| self.field.from_index(i as u32).expect("in range");
        if idx == 0 {
            [FieldElement::ZERO, FieldElement::ZERO, FieldElement::ONE]
        } else if idx <= q {
            [FieldElement::ZERO, FieldElement::ONE, el(idx - 1)]
        } else {
            let k = idx - 1 - q;
            [FieldElement::ONE, el(k / q), el(k % q)]
        }
    }

    pub fn point_index(&self, p: &ProjPoint) -> usize {
        self.index_of(&p.0)
    }

    pub fn line_index(&self, l: &ProjLine) -> usize {
        self.index_of(&l.0)
    }

    pub fn point_at(&self, idx: usize) -> ProjPoint {
        ProjPoint(self.triple_at(idx))
    }

    pub fn line_at(&self, idx: usize) -> ProjLine {
        ProjLine(self.triple_at(idx))
    }

    pub fn points(&self) -> Vec<ProjPoint> {
        (0..self.size()).map(|i| self.point_at(i)).collect()
    }

    pub fn lines(&self) -> Vec<ProjLine> {
        (0..self.size()).map(|i| self.line_at(i)).collect()
    }

    /// The `q + 1` points of a line, in index order.
    pub fn points_on(&self, l: &ProjLine) -> Vec<ProjPoint> {
        let f = &self.field;
        // Two independent vectors in the kernel of l span its points.
        let basis: Vec<Triple> = {
            let c = l.0;
            let cands = [
                [f.neg(c[1]), c[0], FieldElement::ZERO],
                [f.neg(c[2]), FieldElement::ZERO, c[0]],
                [FieldElement::ZERO, f.neg(c[2]), c[1]],
            ];
            let mut chosen: Vec<Triple> = Vec::new();
            for v in cands {
                if v.iter().all(|x| x.is_zero()) {
                    continue;
                }
                if chosen.len() == 1 && cross(f, &chosen[0], &v).iter().all(|x| x.is_zero()) {
                    continue;
                }
                chosen.push(v);
                if chosen.len() == 2 {
                    break;
                }
            }
            chosen
        };
        let (a, b) = (basis[0], basis[1]);
        let mut pts: Vec<ProjPoint> = f
            .elements()
            .map(|t| {
                let v = [
                    f.add(a[0], f.mul(t, b[0])),
                    f.add(a[1], f.mul(t, b[1])),
                    f.add(a[2], f.mul(t, b[2])),
                ];
                ProjPoint(normalize(f, v).expect("independent"))
            })
            .collect();
        pts.push(ProjPoint(normalize(f, b).expect("nonzero")));
        pts.sort();
        pts
    }

    /// The `q + 1` lines through a point, in index order.
    pub fn lines_through(&self, p: &ProjPoint) -> Vec<ProjLine> {
        self.points_on(&p.dual()).into_iter().map(|x| x.dual()).collect()
    }
}
