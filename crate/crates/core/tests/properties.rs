mod common;

use proptest::prelude::*;

use netforge::constructions::{char3_4net, classical_4net, classical_equations};
use netforge::field::{Field, FieldElement};
use netforge::net::{constant_cross_ratio, cross_ratio_from_equations, is_eq9_root, lemma_minus_kappa_check};
use netforge::plane::{cross_ratio_points, six_orbit, Plane, ProjPoint, Projectivity, Triple};

const ORDERS: [u64; 12] = [2, 3, 4, 5, 7, 8, 9, 13, 16, 25, 27, 49];

fn field_of(i: usize) -> Field {
    Field::of_order(ORDERS[i % ORDERS.len()]).unwrap()
}

fn el(f: &Field, x: u64) -> FieldElement {
    f.from_index((x % f.order()) as u32).unwrap()
}

proptest! {
    #![proptest_config(common::proptest_config(400))]

    #[test]
    fn field_axioms(i in 0usize..12, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let f = field_of(i);
        let (a, b, c) = (el(&f, a), el(&f, b), el(&f, c));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), f.zero());
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        }
        prop_assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
        prop_assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
        prop_assert_eq!(f.pow(a, f.order()), a);
    }

    #[test]
    fn six_orbit_closure(i in 0usize..12, k in any::<u64>()) {
        let f = field_of(i);
        let k = el(&f, k);
        prop_assume!(!k.is_zero() && k != f.one());
        let orbit = six_orbit(&f, k);
        prop_assert!(orbit.contains(&k));
        for &x in &orbit {
            prop_assert_eq!(six_orbit(&f, x), orbit.clone());
        }
        let (o, z) = (f.one(), f.zero());
        let pts = [
            ProjPoint::new(&f, [o, z, z]).unwrap(),
            ProjPoint::new(&f, [z, o, z]).unwrap(),
            ProjPoint::new(&f, [o, o, z]).unwrap(),
            ProjPoint::new(&f, [k, o, z]).unwrap(),
        ];
        for perm in permutations() {
            let v = cross_ratio_points(&f, &pts[perm[0]], &pts[perm[1]], &pts[perm[2]], &pts[perm[3]]).unwrap();
            prop_assert!(orbit.contains(&v));
        }
    }

    #[test]
    fn projectivity_preserves_kappa(m in proptest::array::uniform9(0i64..13), which in 0usize..2) {
        let f = if which == 0 { Field::prime(7).unwrap() } else { Field::prime(13).unwrap() };
        let mat = [[m[0], m[1], m[2]], [m[3], m[4], m[5]], [m[6], m[7], m[8]]].map(|r| r.map(|x| f.from_int(x)));
        let Ok(g) = Projectivity::new(&f, mat) else { return Ok(()) };
        let net = classical_4net(&f).unwrap();
        let moved = net.transform(&g);
        prop_assert!(moved.is_verified());
        let a = constant_cross_ratio(&net).unwrap();
        let b = constant_cross_ratio(&moved).unwrap();
        prop_assert!(b.constant);
        prop_assert_eq!(a.kappa, b.kappa);
        prop_assert_eq!(a.orbit, b.orbit);
    }

    #[test]
    fn pencil_kappa_ignores_line_scaling(scales in proptest::array::uniform12(1i64..13), which in 0usize..2) {
        let f = if which == 0 { Field::prime(7).unwrap() } else { Field::prime(13).unwrap() };
        let xi = f.primitive_cube_root().unwrap();
        let eqs = classical_equations(&f, xi);
        let scaled: Vec<Vec<Triple>> = eqs
            .iter()
            .enumerate()
            .map(|(c, comp)| {
                comp.iter()
                    .enumerate()
                    .map(|(j, t)| t.map(|x| f.mul(x, f.from_int(1 + scales[3 * c + j] % (f.order() as i64 - 1)))))
                    .collect()
            })
            .collect();
        let plain: Vec<Vec<Triple>> = eqs.iter().map(|c| c.to_vec()).collect();
        let (k0, _, _) = cross_ratio_from_equations(&f, [&plain[0], &plain[1], &plain[2], &plain[3]]).unwrap();
        let (k1, _, _) = cross_ratio_from_equations(&f, [&scaled[0], &scaled[1], &scaled[2], &scaled[3]]).unwrap();
        prop_assert_eq!(k0, k1);
    }
}

fn permutations() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).all(|x| p.contains(&x)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

#[test]
fn incidence_counts() {
    for q in ORDERS.into_iter().filter(|&q| q <= 27) {
        let f = Field::of_order(q).unwrap();
        let plane = Plane::new(&f);
        let n = (q * q + q + 1) as usize;
        assert_eq!(plane.points().len(), n);
        assert_eq!(plane.lines().len(), n);
        for l in plane.lines().iter().step_by(7) {
            assert_eq!(plane.points_on(l).len(), q as usize + 1);
        }
        for p in plane.points().iter().step_by(7) {
            assert_eq!(plane.lines_through(p).len(), q as usize + 1);
        }
    }
}

#[test]
fn lemma_for_both_roots() {
    for q in [7u64, 13] {
        let f = Field::prime(q).unwrap();
        let roots: Vec<FieldElement> = f.elements().filter(|&x| is_eq9_root(&f, x)).collect();
        assert_eq!(roots.len(), 2);
        for k in roots {
            assert!(lemma_minus_kappa_check(&f, k).unwrap(), "q = {q}");
        }
    }
}

#[test]
fn char3_kappa_is_minus_one() {
    for r in 1..=3 {
        let f = Field::new(3, r, None).unwrap();
        let rep = constant_cross_ratio(&char3_4net(&f).unwrap()).unwrap();
        assert_eq!(rep.kappa, f.neg(f.one()));
    }
}
