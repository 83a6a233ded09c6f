//! 4-nets of order 3 from scratch. The nine points of such a net carry the
//! affine plane AG(2,3): its twelve lines are the net lines. After moving
//! four points in general position to the standard frame, each remaining
//! point lies on a plane line through two already placed points.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::exact_cover::Control;
use crate::field::Field;
use crate::net::KNet;
use crate::plane::{self, collinear, Plane, ProjLine, ProjPoint, Projectivity};

/// AG(2,3) label `(i, j)` stored as `3i + j`.
type Label = usize;

fn label(i: usize, j: usize) -> Label {
    3 * (i % 3) + j % 3
}

fn ij(l: Label) -> (usize, usize) {
    (l / 3, l % 3)
}

/// Directions of the four parallel classes.
const DIRECTIONS: [(usize, usize); 4] = [(1, 0), (0, 1), (1, 1), (1, 2)];

/// The three lines of the class with direction `d`, each a sorted label triple.
fn class_lines(d: (usize, usize)) -> Vec<[Label; 3]> {
    let mut lines: Vec<[Label; 3]> = (0..9)
        .map(|s| {
            let (i, j) = ij(s);
            let mut t = [label(i, j), label(i + d.0, j + d.1), label(i + 2 * d.0, j + 2 * d.1)];
            t.sort_unstable();
            t
        })
        .collect();
    lines.sort_unstable();
    lines.dedup();
    lines
}

fn is_ag_line(a: Label, b: Label, c: Label) -> bool {
    let (ai, aj) = ij(a);
    let (bi, bj) = ij(b);
    let (ci, cj) = ij(c);
    (ai + bi + ci) % 3 == 0 && (aj + bj + cj) % 3 == 0
}

/// The third point of the AG line through `a` and `b`.
fn third(a: Label, b: Label) -> Label {
    let (ai, aj) = ij(a);
    let (bi, bj) = ij(b);
    label(6 - ai - bi, 6 - aj - bj)
}

const FRAME: [Label; 4] = [0, 3, 1, 4];

/// Placement order after the frame with the two placed labels defining the
/// line each new point must lie on.
fn schedule() -> Vec<(Label, Label, Label)> {
    let mut placed: Vec<Label> = FRAME.to_vec();
    let order = [label(2, 0), label(0, 2), label(2, 2), label(1, 2), label(2, 1)];
    order
        .iter()
        .map(|&t| {
            let pair = placed
                .iter()
                .enumerate()
                .flat_map(|(x, &a)| placed[x + 1..].iter().map(move |&b| (a, b)))
                .find(|&(a, b)| third(a, b) == t)
                .expect("every label completes some placed pair");
            placed.push(t);
            (t, pair.0, pair.1)
        })
        .collect()
}

struct Ctx<'a> {
    plane: &'a Plane,
    steps: Vec<(Label, Label, Label)>,
}

impl Ctx<'_> {
    fn field(&self) -> &Field {
        self.plane.field()
    }

    /// Checks every triple containing `new` against the AG incidence.
    fn consistent(&self, pts: &[Option<ProjPoint>; 9], new: Label) -> bool {
        let f = self.field();
        let p = pts[new].as_ref().expect("placed");
        let placed: Vec<Label> = (0..9).filter(|&l| l != new && pts[l].is_some()).collect();
        if placed.iter().any(|&l| pts[l].as_ref() == Some(p)) {
            return false;
        }
        for (x, &a) in placed.iter().enumerate() {
            for &b in &placed[x + 1..] {
                let col = collinear(f, pts[a].as_ref().unwrap(), pts[b].as_ref().unwrap(), p);
                if col != is_ag_line(a, b, new) {
                    return false;
                }
            }
        }
        true
    }

    fn descend(&self, pts: [Option<ProjPoint>; 9], step: usize, ctl: &Control, out: &mut Vec<[ProjPoint; 9]>) {
        if !ctl.enter() {
            return;
        }
        if step == self.steps.len() {
            out.push(pts.map(|p| p.expect("complete")));
            ctl.found();
            return;
        }
        for cand in self.candidates(&pts, step) {
            if ctl.stopped() {
                return;
            }
            let mut next = pts;
            next[self.steps[step].0] = Some(cand);
            if self.consistent(&next, self.steps[step].0) {
                self.descend(next, step + 1, ctl, out);
            }
        }
    }

    fn candidates(&self, pts: &[Option<ProjPoint>; 9], step: usize) -> Vec<ProjPoint> {
        let (_, a, b) = self.steps[step];
        let f = self.field();
        let l = plane::line_through(f, pts[a].as_ref().unwrap(), pts[b].as_ref().unwrap())
            .expect("placed points are distinct");
        let mut c = self.plane.points_on(&l);
        c.sort();
        c
    }
}

fn frame_points(f: &Field) -> [Option<ProjPoint>; 9] {
    let (o, z) = (f.one(), f.zero());
    let mut pts: [Option<ProjPoint>; 9] = Default::default();
    let frame = [[o, z, z], [z, o, z], [z, z, o], [o, o, o]];
    for (l, c) in FRAME.iter().zip(frame) {
        pts[*l] = Some(ProjPoint::new(f, c).expect("nonzero"));
    }
    pts
}

/// All labelled embeddings with the frame fixed. Returns them sorted.
pub(crate) fn labelled_embeddings(plane: &Plane, ctl: &Control, parallel: bool) -> Vec<[ProjPoint; 9]> {
    let ctx = Ctx { plane, steps: schedule() };
    let root = frame_points(plane.field());
    let mut out = Vec::new();
    if parallel {
        if ctl.enter() {
            let cands = ctx.candidates(&root, 0);
            let parts: Vec<Vec<[ProjPoint; 9]>> = cands
                .par_iter()
                .map(|c| {
                    let mut next = root;
                    next[ctx.steps[0].0] = Some(*c);
                    let mut part = Vec::new();
                    if ctx.consistent(&next, ctx.steps[0].0) {
                        ctx.descend(next, 1, ctl, &mut part);
                    }
                    part
                })
                .collect();
            out = parts.into_iter().flatten().collect();
        }
    } else {
        ctx.descend(root, 0, ctl, &mut out);
    }
    out.sort();
    out
}

/// The 4-net with the given labelled points.
pub fn net_from_labels(f: &Field, pts: &[ProjPoint; 9]) -> KNet {
    let components = DIRECTIONS
        .iter()
        .map(|&d| {
            class_lines(d)
                .iter()
                .map(|t| plane::line_through(f, &pts[t[0]], &pts[t[1]]).expect("distinct points"))
                .collect::<Vec<ProjLine>>()
        })
        .collect();
    KNet::new(f, components)
}

/// Canonical form of a point configuration under PGL(3, q): the smallest
/// sorted image over all projectivities sending an ordered quadruple of the
/// points in general position to the standard frame. Also returns one such
/// projectivity and the number of quadruples attaining the minimum, which is
/// the order of the set-wise stabilizer.
pub fn canonical_form(f: &Field, pts: &[ProjPoint]) -> Option<(Vec<ProjPoint>, Projectivity, usize)> {
    let m = pts.len();
    let mut best: Option<(Vec<ProjPoint>, Projectivity, usize)> = None;
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                if a == b || b == c || a == c {
                    continue;
                }
                for d in 0..m {
                    if d == a || d == b || d == c {
                        continue;
                    }
                    let Ok(g) = plane::frame_map(f, [&pts[a], &pts[b], &pts[c], &pts[d]]) else {
                        continue;
                    };
                    let mut img: Vec<ProjPoint> = pts.iter().map(|p| g.apply_point(f, p)).collect();
                    img.sort();
                    match &mut best {
                        Some((bi, _, count)) if img == *bi => *count += 1,
                        Some((bi, _, _)) if img > *bi => {}
                        _ => best = Some((img, g, 1)),
                    }
                }
            }
        }
    }
    best
}

/// `|PGL(3, q)| = q³ (q³ − 1)(q² − 1)`.
pub fn pgl3_order(q: u64) -> u128 {
    let q = q as u128;
    q.pow(3) * (q.pow(3) - 1) * (q * q - 1)
}

pub(crate) struct Orbit {
    pub canonical: Vec<ProjPoint>,
    pub representative: KNet,
    pub stabilizer: usize,
    pub labelled: usize,
}

/// Groups labelled embeddings by canonical form.
pub(crate) fn orbits(f: &Field, embeddings: &[[ProjPoint; 9]]) -> Vec<Orbit> {
    let forms: Vec<(Vec<ProjPoint>, Projectivity, usize)> = embeddings
        .par_iter()
        .map(|e| canonical_form(f, e).expect("frame points are in general position"))
        .collect();
    let mut groups: BTreeMap<Vec<ProjPoint>, Orbit> = BTreeMap::new();
    for (e, (canonical, g, stab)) in embeddings.iter().zip(forms) {
        groups
            .entry(canonical.clone())
            .or_insert_with(|| Orbit {
                canonical,
                representative: net_from_labels(f, e).transform(&g),
                stabilizer: stab,
                labelled: 0,
            })
            .labelled += 1;
    }
    groups.into_values().collect()
}
