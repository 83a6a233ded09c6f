//! k-nets and dual k-nets: axiom verification, the constant cross-ratio of a
//! 4-net and the root-of-unity constraints it satisfies.

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::field::{Field, FieldElement};
use crate::forms::{self, FormError, PencilCoeffs};
use crate::plane::{self, GeometryError, ProjLine, ProjPoint, Projectivity, Triple};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NetError {
    #[error("input does not satisfy the net axioms")]
    NotVerified,
    #[error("need at least {needed} components, got {got}")]
    TooFewComponents { needed: usize, got: usize },
    #[error("net has no components or an empty component")]
    Empty,
    #[error("cross-ratio must differ from 0 and 1")]
    DegenerateKappa,
    #[error("value is not a root of X^2 - X + 1")]
    NotEq9Root,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Form(#[from] FormError),
}

/// An embedded k-net: `k` components of `n` lines each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KNet {
    field: Field,
    components: Vec<Vec<ProjLine>>,
}

/// The dual notion: components are point sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualKNet {
    field: Field,
    components: Vec<Vec<ProjPoint>>,
}

/// A violated incidence: the join/meet of two elements from components
/// `first.0` and `second.0` meets `component` in `count != 1` elements.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub first: (usize, usize),
    pub second: (usize, usize),
    pub component: usize,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NetReport {
    pub kind: &'static str,
    pub pass: bool,
    pub k: usize,
    pub n: usize,
    pub element_count: usize,
    pub expected_elements: usize,
    pub incidence_count: usize,
    pub expected_incidences: usize,
    pub issues: Vec<String>,
    pub flags: Vec<String>,
    pub violations: Vec<Violation>,
}

impl KNet {
    pub fn new(field: &Field, components: Vec<Vec<ProjLine>>) -> Self {
        KNet { field: field.clone(), components }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn components(&self) -> &[Vec<ProjLine>] {
        &self.components
    }

    pub fn k(&self) -> usize {
        self.components.len()
    }

    /// Size of the first component (the order of a well-formed net).
    pub fn order(&self) -> usize {
        self.components.first().map_or(0, Vec::len)
    }

    pub fn lines(&self) -> impl Iterator<Item = &ProjLine> {
        self.components.iter().flatten()
    }

    /// Sub-net formed by the listed components, in the given order.
    pub fn select(&self, which: &[usize]) -> KNet {
        KNet::new(&self.field, which.iter().map(|&i| self.components[i].clone()).collect())
    }

    pub fn with_component(&self, extra: Vec<ProjLine>) -> KNet {
        let mut c = self.components.clone();
        c.push(extra);
        KNet::new(&self.field, c)
    }

    /// All meets of lines from distinct components, sorted.
    pub fn points(&self) -> Vec<ProjPoint> {
        let f = &self.field;
        let mut set = BTreeSet::new();
        for i in 0..self.k() {
            for j in i + 1..self.k() {
                for a in &self.components[i] {
                    for b in &self.components[j] {
                        if let Ok(p) = plane::meet(f, a, b) {
                            set.insert(p);
                        }
                    }
                }
            }
        }
        set.into_iter().collect()
    }

    pub fn transform(&self, g: &Projectivity) -> KNet {
        let f = &self.field;
        let components = self
            .components
            .iter()
            .map(|c| c.iter().map(|l| g.apply_line(f, l)).collect())
            .collect();
        KNet::new(f, components)
    }

    /// The dual net obtained by reading line coordinates as point coordinates.
    pub fn to_dual(&self) -> DualKNet {
        DualKNet::new(
            &self.field,
            self.components.iter().map(|c| c.iter().map(ProjLine::dual).collect()).collect(),
        )
    }

    pub fn verify(&self) -> NetReport {
        let f = &self.field;
        let comps: Vec<Vec<Triple>> =
            self.components.iter().map(|c| c.iter().map(|l| l.coeffs()).collect()).collect();
        let mut report = verify_incidence(f, &comps, "net");
        if report.issues.is_empty() && report.k >= 2 {
            report.element_count = self.points().len();
            report.expected_elements = report.n * report.n;
            if report.element_count != report.expected_elements {
                report.issues.push(format!(
                    "{} net points, expected {}",
                    report.element_count, report.expected_elements
                ));
            }
        }
        report.pass = report.issues.is_empty() && report.violations.is_empty();
        report
    }

    pub fn is_verified(&self) -> bool {
        self.verify().pass
    }
}

impl DualKNet {
    pub fn new(field: &Field, components: Vec<Vec<ProjPoint>>) -> Self {
        DualKNet { field: field.clone(), components }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn components(&self) -> &[Vec<ProjPoint>] {
        &self.components
    }

    pub fn k(&self) -> usize {
        self.components.len()
    }

    pub fn order(&self) -> usize {
        self.components.first().map_or(0, Vec::len)
    }

    pub fn select(&self, which: &[usize]) -> DualKNet {
        DualKNet::new(&self.field, which.iter().map(|&i| self.components[i].clone()).collect())
    }

    /// All joins of points from distinct components, sorted.
    pub fn lines(&self) -> Vec<ProjLine> {
        self.to_net_unchecked().points().into_iter().map(|p| p.dual()).collect()
    }

    fn to_net_unchecked(&self) -> KNet {
        KNet::new(
            &self.field,
            self.components.iter().map(|c| c.iter().map(ProjPoint::dual).collect()).collect(),
        )
    }

    pub fn verify(&self) -> NetReport {
        let comps: Vec<Vec<Triple>> =
            self.components.iter().map(|c| c.iter().map(|p| p.coords()).collect()).collect();
        let mut report = verify_incidence(&self.field, &comps, "dual");
        if report.issues.is_empty() && report.k >= 3 {
            report.element_count = self.lines().len();
            report.expected_elements = report.n * report.n;
            if report.element_count != report.expected_elements {
                report.issues.push(format!(
                    "{} net lines, expected {}",
                    report.element_count, report.expected_elements
                ));
            }
        }
        report.pass = report.issues.is_empty() && report.violations.is_empty();
        report
    }

    pub fn is_verified(&self) -> bool {
        self.verify().pass
    }
}

/// Shared verifier for both nets and dual nets, phrased on coordinate
/// triples: for elements `a`, `b` of distinct components, `a x b` must be
/// incident with exactly one element of every component.
fn verify_incidence(f: &Field, comps: &[Vec<Triple>], kind: &'static str) -> NetReport {
    let k = comps.len();
    let n = comps.first().map_or(0, Vec::len);
    let mut report = NetReport {
        kind,
        pass: false,
        k,
        n,
        element_count: 0,
        expected_elements: n * n,
        incidence_count: comps.iter().map(Vec::len).sum(),
        expected_incidences: k * n,
        issues: Vec::new(),
        flags: Vec::new(),
        violations: Vec::new(),
    };
    if k == 0 || n == 0 {
        report.issues.push("empty net".to_string());
        return report;
    }
    if let Some((i, c)) = comps.iter().enumerate().find(|(_, c)| c.len() != n) {
        report.issues.push(format!("component {i} has {} elements, expected {n}", c.len()));
    }
    let mut seen = HashSet::new();
    for (i, c) in comps.iter().enumerate() {
        for (j, t) in c.iter().enumerate() {
            let Some(t) = plane::normalize(f, *t) else {
                report.issues.push(format!("element {j} of component {i} is the zero vector"));
                continue;
            };
            if !seen.insert(t) {
                report.issues.push(format!("element {j} of component {i} is repeated"));
            }
        }
    }
    if !report.issues.is_empty() {
        return report;
    }
    if k < 3 && kind == "dual" {
        report.flags.push("k < 3".to_string());
        report.pass = true;
        return report;
    }
    if k < 3 {
        report.flags.push("k < 3".to_string());
    }
    let pairs: Vec<(usize, usize, usize)> = (0..k)
        .flat_map(|ci| (ci + 1..k).flat_map(move |cj| (0..n).map(move |a| (ci, cj, a))))
        .collect();
    let mut violations: Vec<Violation> = pairs
        .par_iter()
        .flat_map_iter(|&(ci, cj, a)| {
            let x = comps[ci][a];
            (0..n).flat_map(move |b| {
                let y = comps[cj][b];
                let join = plane::cross(f, &x, &y);
                (0..k).filter_map(move |c| {
                    let count =
                        comps[c].iter().filter(|t| plane::dot(f, t, &join).is_zero()).count();
                    (count != 1).then_some(Violation {
                        first: (ci, a),
                        second: (cj, b),
                        component: c,
                        count,
                    })
                })
            })
        })
        .collect();
    violations.sort();
    report.violations = violations;
    report
}

/// Cross-ratio data of a 4-net.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossRatioReport {
    pub n: usize,
    pub kappa: FieldElement,
    pub orbit: Vec<FieldElement>,
    pub constant: bool,
    pub per_point: Vec<(ProjPoint, FieldElement)>,
    pub constraints: ConstraintReport,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConstraintReport {
    /// `N = n(n-1)`.
    pub exponent: u64,
    pub kappa_pow_is_one: bool,
    pub kappa_minus_one_pow_is_one: bool,
    pub eq9: bool,
}

impl CrossRatioReport {
    pub fn satisfies_eq8(&self) -> bool {
        self.constraints.kappa_pow_is_one && self.constraints.kappa_minus_one_pow_is_one
    }

    pub fn satisfies_eq9(&self) -> bool {
        self.constraints.eq9
    }
}

fn require_four(net: &KNet) -> Result<KNet, NetError> {
    if net.k() < 4 {
        return Err(NetError::TooFewComponents { needed: 4, got: net.k() });
    }
    let sub = net.select(&[0, 1, 2, 3]);
    if !sub.is_verified() {
        return Err(NetError::NotVerified);
    }
    Ok(sub)
}

/// Cross-ratio `(l1, l2, l3, l4)` of the lines through each net point, where
/// `li` is taken from component `i` (the first four components are used).
pub fn constant_cross_ratio(net: &KNet) -> Result<CrossRatioReport, NetError> {
    let sub = require_four(net)?;
    let f = sub.field();
    let points = sub.points();
    let per_point: Vec<(ProjPoint, FieldElement)> = points
        .par_iter()
        .map(|p| {
            let ls: Vec<&ProjLine> = sub
                .components()
                .iter()
                .map(|c| c.iter().find(|l| l.contains(f, p)).expect("verified net"))
                .collect();
            let k = plane::cross_ratio_lines(f, [ls[0], ls[1], ls[2], ls[3]])?;
            Ok((*p, k))
        })
        .collect::<Result<_, GeometryError>>()?;
    let kappa = per_point[0].1;
    let constant = per_point.iter().all(|(_, k)| *k == kappa);
    let n = sub.order();
    Ok(CrossRatioReport {
        n,
        kappa,
        orbit: plane::six_orbit(f, kappa),
        constant,
        per_point,
        constraints: constraint_battery(f, kappa, n)?,
    })
}

/// `α β' / (α' β)` from the pencils through `(λ1, λ2, λ3)` and `(λ1, λ2, λ4)`,
/// computed on explicit line equations (which need not be normalized).
pub fn cross_ratio_from_equations(
    f: &Field,
    comps: [&[Triple]; 4],
) -> Result<(FieldElement, PencilCoeffs, PencilCoeffs), NetError> {
    let first = forms::pencil_coefficients(f, comps[0], comps[1], comps[2])?;
    let second = forms::pencil_coefficients(f, comps[0], comps[1], comps[3])?;
    let num = f.mul(first.alpha, second.beta);
    let den = f.mul(second.alpha, first.beta);
    Ok((f.div(num, den).expect("pencil coefficients are nonzero"), first, second))
}

/// Pencil route to the cross-ratio. Under the conventions of
/// [`plane::cross_ratio_points`] it returns the inverse of the direct value.
pub fn cross_ratio_via_pencil(net: &KNet) -> Result<FieldElement, NetError> {
    let sub = require_four(net)?;
    let eqs: Vec<Vec<Triple>> =
        sub.components().iter().map(|c| c.iter().map(|l| l.coeffs()).collect()).collect();
    let (k, _, _) = cross_ratio_from_equations(sub.field(), [&eqs[0], &eqs[1], &eqs[2], &eqs[3]])?;
    Ok(k)
}

/// Evaluates `κ^N = 1`, `(κ-1)^N = 1` and `κ² - κ + 1 = 0` for `N = n(n-1)`.
pub fn constraint_battery(f: &Field, kappa: FieldElement, n: usize) -> Result<ConstraintReport, NetError> {
    let one = f.one();
    if kappa.is_zero() || kappa == one {
        return Err(NetError::DegenerateKappa);
    }
    let exponent = (n as u64) * (n as u64).saturating_sub(1);
    Ok(ConstraintReport {
        exponent,
        kappa_pow_is_one: f.pow(kappa, exponent) == one,
        kappa_minus_one_pow_is_one: f.pow(f.sub(kappa, one), exponent) == one,
        eq9: is_eq9_root(f, kappa),
    })
}

pub fn is_eq9_root(f: &Field, x: FieldElement) -> bool {
    f.add(f.sub(f.mul(x, x), x), f.one()).is_zero()
}

/// With `A=(1,0,0)`, `B=(0,1,0)`, `D=(κ,1,0)`, `D'=(1-κ,1,0)`, checks `(A,B;D,D') = -κ`.
pub fn lemma_minus_kappa_check(f: &Field, kappa: FieldElement) -> Result<bool, NetError> {
    if !is_eq9_root(f, kappa) {
        return Err(NetError::NotEq9Root);
    }
    let (o, z) = (f.one(), f.zero());
    let a = ProjPoint::new(f, [o, z, z])?;
    let b = ProjPoint::new(f, [z, o, z])?;
    let d = ProjPoint::new(f, [kappa, o, z])?;
    let d2 = ProjPoint::new(f, [f.sub(o, kappa), o, z])?;
    Ok(plane::cross_ratio_points(f, &a, &b, &d, &d2)? == f.neg(kappa))
}

/// Point-line duality applied to a verified dual net.
pub fn dualize(dnet: &DualKNet) -> Result<KNet, NetError> {
    if dnet.k() == 0 || dnet.components().iter().any(Vec::is_empty) {
        return Err(NetError::Empty);
    }
    if !dnet.is_verified() {
        return Err(NetError::NotVerified);
    }
    Ok(dnet.to_net_unchecked())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lines(f: &Field, v: &[[i64; 3]]) -> Vec<ProjLine> {
        v.iter().map(|t| ProjLine::from_ints(f, *t).unwrap()).collect()
    }

    /// AG(2,3) in PG(2,3): horizontal, vertical, slope 1, slope -1.
    fn ag23() -> KNet {
        let f = Field::prime(3).unwrap();
        let c = |g: &dyn Fn(i64) -> [i64; 3]| lines(&f, &[g(0), g(1), g(2)]);
        KNet::new(
            &f,
            vec![
                c(&|t| [0, 1, -t]),
                c(&|t| [1, 0, -t]),
                c(&|t| [1, -1, t]),
                c(&|t| [1, 1, -t]),
            ],
        )
    }

    #[test]
    fn affine_plane_of_order_three_is_a_four_net() {
        let net = ag23();
        let r = net.verify();
        assert!(r.pass, "{r:?}");
        assert_eq!((r.element_count, r.incidence_count), (9, 12));
        let cr = constant_cross_ratio(&net).unwrap();
        assert!(cr.constant);
        assert_eq!(cr.kappa, net.field().from_int(-1));
    }

    #[test]
    fn broken_net_lists_violations() {
        let net = ag23();
        let f = net.field().clone();
        let mut comps = net.components().to_vec();
        comps[2][1] = ProjLine::from_ints(&f, [1, 1, 1]).unwrap();
        let r = KNet::new(&f, comps).verify();
        assert!(!r.pass);
        assert!(!r.violations.is_empty() || !r.issues.is_empty());
    }

    #[test]
    fn component_order_inverts_kappa() {
        let net = ag23().select(&[0, 1, 3, 2]);
        let cr = constant_cross_ratio(&net).unwrap();
        assert_eq!(cr.kappa, net.field().from_int(-1));
    }

    #[test]
    fn constraint_battery_examples() {
        let f7 = Field::prime(7).unwrap();
        let r = constraint_battery(&f7, f7.from_int(3), 3).unwrap();
        assert!(r.kappa_pow_is_one && r.kappa_minus_one_pow_is_one && r.eq9);
        assert!(!constraint_battery(&f7, f7.from_int(2), 3).unwrap().eq9);
        assert_eq!(constraint_battery(&f7, f7.one(), 3), Err(NetError::DegenerateKappa));
        // -1 is a double root of X^2 - X + 1 = (X + 1)^2 in characteristic 3.
        let f9 = Field::new(3, 2, None).unwrap();
        let r = constraint_battery(&f9, f9.from_int(-1), 9).unwrap();
        assert_eq!(r.exponent, 72);
        assert!(r.kappa_pow_is_one && r.kappa_minus_one_pow_is_one);
        assert!(r.eq9);
    }

    #[test]
    fn lemma_on_both_roots() {
        for p in [7, 13] {
            let f = Field::prime(p).unwrap();
            let roots: Vec<_> = f.elements().filter(|&x| is_eq9_root(&f, x)).collect();
            assert_eq!(roots.len(), 2);
            for k in roots {
                assert!(lemma_minus_kappa_check(&f, k).unwrap());
            }
        }
        let f = Field::prime(7).unwrap();
        assert_eq!(lemma_minus_kappa_check(&f, f.from_int(2)), Err(NetError::NotEq9Root));
    }

    #[test]
    fn too_few_components() {
        let net = ag23().select(&[0, 1, 2]);
        assert!(net.verify().pass);
        assert_eq!(
            constant_cross_ratio(&net),
            Err(NetError::TooFewComponents { needed: 4, got: 3 })
        );
    }

    #[test]
    fn dual_roundtrip() {
        let net = ag23();
        let d = net.to_dual();
        assert!(d.verify().pass);
        let back = dualize(&d).unwrap();
        assert_eq!(back, net);
        assert_eq!(dualize(&DualKNet::new(net.field(), vec![])), Err(NetError::Empty));
        let two = d.select(&[0, 1]);
        let r = two.verify();
        assert!(r.pass && r.flags.contains(&"k < 3".to_string()));
    }
}
