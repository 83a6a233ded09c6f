//! Bitset exact cover with most-constrained-item branching.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

/// Why a search stopped before exhausting its tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Truncation {
    NodeCap,
    TimeCap,
    SolutionCap,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Limits {
    pub max_nodes: Option<u64>,
    pub deadline: Option<Instant>,
    pub max_solutions: Option<usize>,
}

/// Shared bookkeeping for node counting and early termination across workers.
pub(crate) struct Control {
    limits: Limits,
    nodes: AtomicU64,
    solutions: AtomicUsize,
    stop: AtomicBool,
    reason: Mutex<Option<Truncation>>,
}

impl Control {
    pub(crate) fn new(limits: Limits) -> Self {
        Control {
            limits,
            nodes: AtomicU64::new(0),
            solutions: AtomicUsize::new(0),
            stop: AtomicBool::new(false),
            reason: Mutex::new(None),
        }
    }

    fn halt(&self, why: Truncation) {
        let mut r = self.reason.lock().expect("poisoned");
        if r.is_none() {
            *r = Some(why);
        }
        self.stop.store(true, Ordering::SeqCst);
    }

    /// Counts a node; returns false once the search must stop.
    pub(crate) fn enter(&self) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return false;
        }
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if let Some(cap) = self.limits.max_nodes {
            if n > cap {
                self.halt(Truncation::NodeCap);
                return false;
            }
        }
        if n.is_multiple_of(256) {
            if let Some(d) = self.limits.deadline {
                if Instant::now() >= d {
                    self.halt(Truncation::TimeCap);
                    return false;
                }
            }
        }
        true
    }

    pub(crate) fn found(&self) {
        let n = self.solutions.fetch_add(1, Ordering::SeqCst) + 1;
        if self.limits.max_solutions.is_some_and(|m| n >= m) {
            self.halt(Truncation::SolutionCap);
        }
    }

    pub(crate) fn stopped(&self) -> bool {
        self.stop.load(Ordering::Relaxed)
    }

    pub(crate) fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::SeqCst).min(self.limits.max_nodes.unwrap_or(u64::MAX))
    }

    pub(crate) fn truncation(&self) -> Option<Truncation> {
        *self.reason.lock().expect("poisoned")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverOutcome {
    /// Chosen set indices per solution, each sorted ascending; solutions sorted.
    pub solutions: Vec<Vec<usize>>,
    pub nodes: u64,
    pub truncated: Option<Truncation>,
}

impl CoverOutcome {
    pub fn exhaustive(&self) -> bool {
        self.truncated.is_none()
    }
}

/// Exact cover instance: choose sets so every item is covered exactly once.
pub struct ExactCover {
    items: usize,
    sets: Vec<Vec<usize>>,
    item_words: usize,
    set_words: usize,
    /// For each item, the sets containing it as a bitset over set indices.
    by_item: Vec<Vec<u64>>,
}

fn bit(words: &[u64], i: usize) -> bool {
    words[i / 64] >> (i % 64) & 1 == 1
}

fn set_bit(words: &mut [u64], i: usize) {
    words[i / 64] |= 1 << (i % 64);
}

fn ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(w, &x)| {
        let mut x = x;
        std::iter::from_fn(move || {
            (x != 0).then(|| {
                let b = x.trailing_zeros() as usize;
                x &= x - 1;
                w * 64 + b
            })
        })
    })
}

struct State {
    covered: Vec<u64>,
    uncovered: usize,
    avail: Vec<u64>,
    chosen: Vec<usize>,
}

impl ExactCover {
    /// Sets with repeated or out-of-range items are dropped up front.
    pub fn new(items: usize, sets: Vec<Vec<usize>>) -> Self {
        let item_words = items.div_ceil(64).max(1);
        let set_words = sets.len().div_ceil(64).max(1);
        let mut by_item = vec![vec![0u64; set_words]; items];
        for (s, members) in sets.iter().enumerate() {
            let mut seen = vec![0u64; item_words];
            let valid = members.iter().all(|&i| {
                let ok = i < items && !bit(&seen, i);
                if ok {
                    set_bit(&mut seen, i);
                }
                ok
            });
            if valid && !members.is_empty() {
                for &i in members {
                    set_bit(&mut by_item[i], s);
                }
            }
        }
        ExactCover { items, sets, item_words, set_words, by_item }
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    fn root(&self) -> State {
        let mut avail = vec![0u64; self.set_words];
        for row in &self.by_item {
            for (a, r) in avail.iter_mut().zip(row) {
                *a |= r;
            }
        }
        State { covered: vec![0; self.item_words], uncovered: self.items, avail, chosen: Vec::new() }
    }

    /// Most constrained uncovered item and its live sets, or `None` if a
    /// dead end (some item has no live set).
    fn pick(&self, st: &State) -> Option<(usize, Vec<u64>)> {
        let mut best: Option<(usize, u32)> = None;
        for i in 0..self.items {
            if bit(&st.covered, i) {
                continue;
            }
            let c: u32 = self.by_item[i].iter().zip(&st.avail).map(|(a, b)| (a & b).count_ones()).sum();
            if c == 0 {
                return None;
            }
            if best.is_none_or(|(_, bc)| c < bc) {
                best = Some((i, c));
                if c == 1 {
                    break;
                }
            }
        }
        let (i, _) = best?;
        Some((i, self.by_item[i].iter().zip(&st.avail).map(|(a, b)| a & b).collect()))
    }

    fn choose(&self, st: &State, s: usize) -> State {
        let mut covered = st.covered.clone();
        let mut avail = st.avail.clone();
        for &i in &self.sets[s] {
            set_bit(&mut covered, i);
            for (a, r) in avail.iter_mut().zip(&self.by_item[i]) {
                *a &= !r;
            }
        }
        let mut chosen = st.chosen.clone();
        chosen.push(s);
        State { covered, uncovered: st.uncovered - self.sets[s].len(), avail, chosen }
    }

    fn descend(&self, st: State, ctl: &Control, out: &mut Vec<Vec<usize>>) {
        if !ctl.enter() {
            return;
        }
        if st.uncovered == 0 {
            let mut sol = st.chosen;
            sol.sort_unstable();
            out.push(sol);
            ctl.found();
            return;
        }
        let Some((_, live)) = self.pick(&st) else { return };
        for s in ones(&live) {
            if ctl.stopped() {
                return;
            }
            self.descend(self.choose(&st, s), ctl, out);
        }
    }

    pub fn solve(&self, limits: Limits, parallel: bool) -> CoverOutcome {
        let ctl = Control::new(limits);
        let mut solutions = Vec::new();
        let root = self.root();
        if self.items == 0 {
            ctl.enter();
            solutions.push(Vec::new());
        } else if parallel && ctl.enter() {
            if let Some((_, live)) = self.pick(&root) {
                let branches: Vec<usize> = ones(&live).collect();
                let parts: Vec<Vec<Vec<usize>>> = branches
                    .par_iter()
                    .map(|&s| {
                        let mut out = Vec::new();
                        self.descend(self.choose(&root, s), &ctl, &mut out);
                        out
                    })
                    .collect();
                solutions = parts.into_iter().flatten().collect();
            }
        } else if !parallel {
            self.descend(root, &ctl, &mut solutions);
        }
        solutions.sort();
        CoverOutcome { solutions, nodes: ctl.nodes(), truncated: ctl.truncation() }
    }
}
