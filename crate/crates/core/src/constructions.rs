//! Explicit families of embedded nets.
//!
//! Affine points `(x, y)` are embedded as `(x, y, 1)`; the line at infinity
//! is `x3 = 0`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{prime_power, Field, FieldElement, FieldError};
use crate::net::{DualKNet, KNet};
use crate::plane::{ProjLine, ProjPoint, Triple};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("field has no primitive cube root of unity (need q = 1 mod 3)")]
    NoCubeRoot,
    #[error("construction needs characteristic 3, field has characteristic {0}")]
    WrongCharacteristic(u64),
    #[error("subplane degree {h} does not divide the field degree {r}")]
    SubfieldDegree { h: u32, r: u32 },
    #[error("number of components {k} outside 3..={max}")]
    ComponentCount { k: usize, max: usize },
    #[error("extension exponent s = {0} must be at least 3")]
    ExponentTooSmall(u32),
    #[error("1, u, v are linearly dependent over the subfield")]
    DependentUV,
    #[error("b1, b2 are not a basis of F_q^2")]
    DependentBasis,
    #[error("malformed Lunardon input: {0}")]
    Malformed(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Family tag and parameters, as accepted by the CLI `construct` command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum ConstructionSpec {
    Classical { p: u64, r: u32 },
    Char3 { r: u32 },
    Subplane { p: u64, r: u32, h: u32, k: usize },
    Lunardon { base: u64, s: u32 },
    LunardonExtended { base: u64, s: u32 },
}

/// Either kind of net produced by a construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Constructed {
    Net(KNet),
    Dual(DualKNet),
}

impl ConstructionSpec {
    pub fn build(&self) -> Result<Constructed, ConstructionError> {
        Ok(match *self {
            ConstructionSpec::Classical { p, r } => Constructed::Net(classical_4net(&Field::new(p, r, None)?)?),
            ConstructionSpec::Char3 { r } => Constructed::Net(char3_4net(&Field::new(3, r, None)?)?),
            ConstructionSpec::Subplane { p, r, h, k } => {
                Constructed::Net(subplane_knet(&Field::new(p, r, None)?, h, k)?)
            }
            ConstructionSpec::Lunardon { base, s } => Constructed::Dual(lunardon_dual_net(base, s)?.dual),
            ConstructionSpec::LunardonExtended { base, s } => {
                Constructed::Dual(lunardon_extend_infinity(&lunardon_dual_net(base, s)?)?)
            }
        })
    }
}

fn line(f: &Field, t: Triple) -> ProjLine {
    ProjLine::new(f, t).expect("nonzero line")
}

/// The twelve line equations of the classical 4-net, unnormalized, grouped
/// by component, for a primitive cube root `xi`.
pub fn classical_equations(f: &Field, xi: FieldElement) -> [[Triple; 3]; 4] {
    let (o, z) = (f.one(), f.zero());
    let xi2 = f.mul(xi, xi);
    [
        [[o, z, z], [z, o, z], [z, z, o]],
        [[o, o, o], [o, xi, xi2], [o, xi2, xi]],
        [[xi, o, o], [o, xi, o], [o, o, xi]],
        [[xi2, o, o], [o, xi2, o], [o, o, xi2]],
    ]
}

/// The classical 4-net of order 3 (the dual Hesse configuration).
pub fn classical_4net(f: &Field) -> Result<KNet, ConstructionError> {
    let xi = f.primitive_cube_root().ok_or(ConstructionError::NoCubeRoot)?;
    let comps = classical_equations(f, xi)
        .iter()
        .map(|c| c.iter().map(|t| line(f, *t)).collect())
        .collect();
    Ok(KNet::new(f, comps))
}

/// Horizontal, vertical, slope 1 and slope -1 lines of `AG(2, 3^r)`.
pub fn char3_4net(f: &Field) -> Result<KNet, ConstructionError> {
    if f.characteristic() != 3 {
        return Err(ConstructionError::WrongCharacteristic(f.characteristic()));
    }
    let (o, z) = (f.one(), f.zero());
    let m1 = f.neg(o);
    let class = |g: &dyn Fn(FieldElement) -> Triple| -> Vec<ProjLine> {
        f.elements().map(|c| line(f, g(c))).collect()
    };
    Ok(KNet::new(
        f,
        vec![
            class(&|c| [z, o, f.neg(c)]),
            class(&|c| [o, z, f.neg(c)]),
            class(&|c| [o, m1, c]),
            class(&|c| [o, o, f.neg(c)]),
        ],
    ))
}

/// `k` parallel classes of the affine subplane `AG(2, p^h)`: slope 0,
/// vertical, then the nonzero slopes of the subfield in enumeration order.
pub fn subplane_knet(f: &Field, h: u32, k: usize) -> Result<KNet, ConstructionError> {
    let sub = f
        .subfield(h)
        .ok_or(ConstructionError::SubfieldDegree { h, r: f.degree() })?;
    let max = sub.len() + 1;
    if !(3..=max).contains(&k) {
        return Err(ConstructionError::ComponentCount { k, max });
    }
    let (o, z) = (f.one(), f.zero());
    let m1 = f.neg(o);
    let mut comps: Vec<Vec<ProjLine>> = vec![
        sub.iter().map(|&c| line(f, [z, o, f.neg(c)])).collect(),
        sub.iter().map(|&c| line(f, [o, z, f.neg(c)])).collect(),
    ];
    for &m in sub.iter().filter(|m| !m.is_zero()) {
        comps.push(sub.iter().map(|&c| line(f, [m, m1, c])).collect());
    }
    comps.truncate(k);
    Ok(KNet::new(f, comps))
}

/// A dual net `A_α = {α b0 + λ b1 + μ b2}` built from a subfield `F_r` of `F_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LunardonNet {
    pub field: Field,
    /// Elements of the subfield `F_r`; `alphas[i]` labels component `i`.
    pub subfield: Vec<FieldElement>,
    pub u: FieldElement,
    pub v: FieldElement,
    pub b1: [FieldElement; 2],
    pub b2: [FieldElement; 2],
    pub dual: DualKNet,
}

/// `F_q` with `q = r^s` and the canonical modulus.
pub fn lunardon_field(r: u64, s: u32) -> Result<Field, ConstructionError> {
    let (p, t) = prime_power(r)?;
    Ok(Field::new(p, t * s, None)?)
}

/// Default parameters: `u = X`, `v = X^2`, `b1 = (1,0)`, `b2 = (0,1)`.
pub fn lunardon_dual_net(r: u64, s: u32) -> Result<LunardonNet, ConstructionError> {
    if s < 3 {
        return Err(ConstructionError::ExponentTooSmall(s));
    }
    let f = lunardon_field(r, s)?;
    let x = f.generator_x();
    let (o, z) = (f.one(), f.zero());
    lunardon_dual_net_with(&f, r, x, f.mul(x, x), [o, z], [z, o])
}

/// Checked construction with explicit `u`, `v` and basis `b1`, `b2`.
pub fn lunardon_dual_net_with(
    f: &Field,
    r: u64,
    u: FieldElement,
    v: FieldElement,
    b1: [FieldElement; 2],
    b2: [FieldElement; 2],
) -> Result<LunardonNet, ConstructionError> {
    let (p, t) = prime_power(r)?;
    if p != f.characteristic() || !f.degree().is_multiple_of(t) {
        return Err(ConstructionError::Malformed(format!("F_{r} is not a subfield of the given field")));
    }
    let s = f.degree() / t;
    if s < 3 {
        return Err(ConstructionError::ExponentTooSmall(s));
    }
    let net = lunardon_unchecked(f, t, u, v, b1, b2)?;
    let sub = &net.subfield;
    for &a in sub {
        for &b in sub {
            for &c in sub {
                if (a, b, c) == (f.zero(), f.zero(), f.zero()) {
                    continue;
                }
                if f.add(f.add(a, f.mul(b, u)), f.mul(c, v)).is_zero() {
                    return Err(ConstructionError::DependentUV);
                }
            }
        }
    }
    Ok(net)
}

/// Builds the point sets with no independence check on `1, u, v`.
pub fn lunardon_unchecked(
    f: &Field,
    subfield_degree: u32,
    u: FieldElement,
    v: FieldElement,
    b1: [FieldElement; 2],
    b2: [FieldElement; 2],
) -> Result<LunardonNet, ConstructionError> {
    let subfield = f.subfield(subfield_degree).ok_or(ConstructionError::SubfieldDegree {
        h: subfield_degree,
        r: f.degree(),
    })?;
    if f.sub(f.mul(b1[0], b2[1]), f.mul(b1[1], b2[0])).is_zero() {
        return Err(ConstructionError::DependentBasis);
    }
    let proto = LunardonNet {
        field: f.clone(),
        subfield: subfield.clone(),
        u,
        v,
        b1,
        b2,
        dual: DualKNet::new(f, Vec::new()),
    };
    let comps = subfield
        .iter()
        .map(|&alpha| {
            subfield
                .iter()
                .flat_map(|&lambda| subfield.iter().map(move |&mu| (lambda, mu)))
                .map(|(lambda, mu)| proto.point(alpha, lambda, mu))
                .collect()
        })
        .collect();
    Ok(LunardonNet { dual: DualKNet::new(f, comps), ..proto })
}

impl LunardonNet {
    pub fn b0(&self) -> [FieldElement; 2] {
        let f = &self.field;
        [
            f.add(f.mul(self.u, self.b1[0]), f.mul(self.v, self.b2[0])),
            f.add(f.mul(self.u, self.b1[1]), f.mul(self.v, self.b2[1])),
        ]
    }

    /// Affine coordinates of `α b0 + λ b1 + μ b2`.
    pub fn affine(&self, alpha: FieldElement, lambda: FieldElement, mu: FieldElement) -> [FieldElement; 2] {
        let f = &self.field;
        let b0 = self.b0();
        let c = |i: usize| {
            f.add(
                f.add(f.mul(alpha, b0[i]), f.mul(lambda, self.b1[i])),
                f.mul(mu, self.b2[i]),
            )
        };
        [c(0), c(1)]
    }

    pub fn point(&self, alpha: FieldElement, lambda: FieldElement, mu: FieldElement) -> ProjPoint {
        let [x, y] = self.affine(alpha, lambda, mu);
        ProjPoint::affine(&self.field, x, y)
    }

    /// `P3 = ((α3-α2)/(α1-α2)) P1 + ((α1-α3)/(α1-α2)) P2` on affine coordinates.
    pub fn third_point(
        &self,
        alphas: [FieldElement; 3],
        p1: [FieldElement; 2],
        p2: [FieldElement; 2],
    ) -> Option<ProjPoint> {
        let f = &self.field;
        let [a1, a2, a3] = alphas;
        let d = f.inv(f.sub(a1, a2)).ok()?;
        let c1 = f.mul(f.sub(a3, a2), d);
        let c2 = f.mul(f.sub(a1, a3), d);
        let x = f.add(f.mul(c1, p1[0]), f.mul(c2, p2[0]));
        let y = f.add(f.mul(c1, p1[1]), f.mul(c2, p2[1]));
        Some(ProjPoint::affine(&self.field, x, y))
    }

    /// The subfield size `r`.
    pub fn base(&self) -> usize {
        self.subfield.len()
    }
}

/// Adds the `r^2` points at infinity with directions `(u+λ) b1 + (v+μ) b2`
/// as a first component `λ0`.
pub fn lunardon_extend_infinity(net: &LunardonNet) -> Result<DualKNet, ConstructionError> {
    let f = &net.field;
    let r = net.base();
    if net.dual.k() != r || net.dual.components().iter().any(|c| c.len() != r * r) {
        return Err(ConstructionError::Malformed("component shape does not match the subfield".into()));
    }
    let mut infinite: Vec<ProjPoint> = Vec::with_capacity(r * r);
    for &lambda in &net.subfield {
        for &mu in &net.subfield {
            let a = f.add(net.u, lambda);
            let b = f.add(net.v, mu);
            let dir = [
                f.add(f.mul(a, net.b1[0]), f.mul(b, net.b2[0])),
                f.add(f.mul(a, net.b1[1]), f.mul(b, net.b2[1])),
            ];
            let p = ProjPoint::new(f, [dir[0], dir[1], f.zero()])
                .map_err(|_| ConstructionError::Malformed("zero direction".into()))?;
            infinite.push(p);
        }
    }
    let mut sorted = infinite.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != r * r {
        return Err(ConstructionError::Malformed("directions at infinity are not distinct".into()));
    }
    let mut comps = vec![infinite];
    comps.extend(net.dual.components().iter().cloned());
    Ok(DualKNet::new(f, comps))
}

/// True iff `n` is a positive power of the prime `p`.
pub fn is_power_of(n: u64, p: u64) -> bool {
    if n < p {
        return false;
    }
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}
