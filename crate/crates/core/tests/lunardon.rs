mod common;

use std::collections::BTreeSet;

use rand::{rngs::StdRng, Rng, SeedableRng};

use netforge::constructions::{lunardon_dual_net, lunardon_extend_infinity, LunardonNet};
use netforge::field::{Field, FieldElement};
use netforge::net::{constant_cross_ratio, dualize};
use netforge::plane::{collinear, line_through, ProjLine};

fn pick(rng: &mut StdRng, xs: &[FieldElement]) -> FieldElement {
    xs[rng.gen_range(0..xs.len())]
}

/// The unique point of component `α3` on the line `P1 P2`, by scanning.
fn scan_third(l: &LunardonNet, line: &ProjLine, alpha3_index: usize) -> Vec<netforge::ProjPoint> {
    l.dual.components()[alpha3_index].iter().filter(|p| line.contains(&l.field, p)).copied().collect()
}

fn check_p3_formula(r: u64, samples: usize) {
    let l = lunardon_dual_net(r, 3).unwrap();
    let f = &l.field;
    let sub = l.subfield.clone();
    let mut rng = StdRng::seed_from_u64(common::seed() ^ r);
    for _ in 0..samples {
        let i1 = rng.gen_range(0..sub.len());
        let mut i2 = rng.gen_range(0..sub.len());
        while i2 == i1 {
            i2 = rng.gen_range(0..sub.len());
        }
        let mut i3 = rng.gen_range(0..sub.len());
        while i3 == i1 || i3 == i2 {
            i3 = rng.gen_range(0..sub.len());
        }
        let (a1, a2, a3) = (sub[i1], sub[i2], sub[i3]);
        let p1 = l.affine(a1, pick(&mut rng, &sub), pick(&mut rng, &sub));
        let p2 = l.affine(a2, pick(&mut rng, &sub), pick(&mut rng, &sub));
        let q1 = netforge::ProjPoint::affine(f, p1[0], p1[1]);
        let q2 = netforge::ProjPoint::affine(f, p2[0], p2[1]);
        let line = line_through(f, &q1, &q2).unwrap();
        let p3 = l.third_point([a1, a2, a3], p1, p2).unwrap();
        assert_eq!(scan_third(&l, &line, i3), vec![p3]);
        assert!(collinear(f, &q1, &q2, &p3));
    }
}

#[test]
fn p3_formula_on_sampled_triples() {
    check_p3_formula(3, 1000);
    check_p3_formula(5, 1000);
}

/// `(α1, α2; α3, α4)` for the points `(α, 1)` of the projective line, with
/// `C = aA + bB`, `D = cA + dB` and value `bc / (ad)`.
fn alpha_cross_ratio(f: &Field, a: [FieldElement; 4]) -> FieldElement {
    let num = f.mul(f.sub(a[2], a[0]), f.sub(a[1], a[3]));
    let den = f.mul(f.sub(a[1], a[2]), f.sub(a[3], a[0]));
    f.div(num, den).unwrap()
}

#[test]
fn subnet_cross_ratios_realize_every_admissible_value() {
    let l = lunardon_dual_net(5, 3).unwrap();
    let f = &l.field;
    let net = dualize(&l.dual).unwrap();
    let sub = &l.subfield;
    let mut seen = BTreeSet::new();
    for a in 0..5 {
        for b in 0..5 {
            for c in 0..5 {
                for d in 0..5 {
                    let idx = [a, b, c, d];
                    if BTreeSet::from(idx).len() < 4 {
                        continue;
                    }
                    let rep = constant_cross_ratio(&net.select(&idx)).unwrap();
                    assert!(rep.constant);
                    let want = alpha_cross_ratio(f, idx.map(|i| sub[i]));
                    assert_eq!(rep.kappa, want, "{idx:?}");
                    seen.insert(rep.kappa);
                }
            }
        }
    }
    let admissible: BTreeSet<FieldElement> =
        sub.iter().copied().filter(|&x| !x.is_zero() && x != f.one()).collect();
    assert_eq!(seen, admissible);
    assert_eq!(seen.len(), 3);
}

#[test]
fn extension_by_points_at_infinity() {
    for r in [3u64, 5] {
        let l = lunardon_dual_net(r, 3).unwrap();
        assert!(l.dual.is_verified());
        let ext = lunardon_extend_infinity(&l).unwrap();
        assert_eq!(ext.k(), r as usize + 1);
        assert!(ext.verify().pass);
        let at_inf = ProjLine::at_infinity();
        assert!(ext.components()[0].iter().all(|p| at_inf.contains(&l.field, p)));
    }
}
