//! Certificate-producing searches: extending a k-net by one component,
//! 4-nets of order 3 from scratch, and 5-net refutation.

pub mod exact_cover;
pub mod order3;

use std::collections::HashMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::field::{Field, FieldDescriptor};
use crate::io::{self, CoeffTriple, NetFile, SCHEMA};
use crate::net::{self, KNet, NetError};
use crate::plane::{self, Plane, ProjLine};
use exact_cover::{Control, ExactCover, Limits, Truncation};

pub use order3::{canonical_form, net_from_labels, pgl3_order};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("input does not satisfy the net axioms")]
    NotVerified,
    #[error("need {needed} components, got {got}")]
    ComponentCount { needed: usize, got: usize },
    #[error("field order {q} exceeds the search cap {cap}")]
    FieldTooLarge { q: u64, cap: u64 },
    #[error(transparent)]
    Net(#[from] NetError),
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
    pub max_solutions: Option<usize>,
    pub parallel: bool,
    /// Largest field order accepted by the from-scratch search.
    pub q_cap: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { max_nodes: None, max_time: None, max_solutions: None, parallel: true, q_cap: 16 }
    }
}

impl SearchOptions {
    fn limits(&self, start: Instant) -> Limits {
        Limits {
            max_nodes: self.max_nodes,
            deadline: self.max_time.map(|d| start + d),
            max_solutions: self.max_solutions,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Extend,
    Scratch,
    Refute,
}

/// Cross-ratios of the three 4-subnets `(1,2,3,4)`, `(1,2,3,5)`, `(1,2,4,5)`
/// of a 5-net, with whether each is a root of `X² − X + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    pub solution: usize,
    pub kappa5: Vec<u64>,
    pub kappa4: Vec<u64>,
    pub kappa45: Vec<u64>,
    pub constant: [bool; 3],
    pub eq9: [bool; 3],
}

impl Obstruction {
    pub fn violates_eq9(&self) -> bool {
        self.eq9.iter().any(|e| !e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitSummary {
    pub canonical_points: Vec<CoeffTriple>,
    pub stabilizer: usize,
    /// `|PGL(3,q)| / stabilizer`, as a decimal string.
    pub orbit_size: String,
    pub labelled_embeddings: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchCertificate {
    pub schema: String,
    pub mode: SearchMode,
    /// SHA-256 of the compact input net JSON; absent for scratch searches.
    pub input_hash: Option<String>,
    pub field: FieldDescriptor,
    pub exhaustive: bool,
    pub truncated: Option<Truncation>,
    pub solution_count: usize,
    pub solutions: Vec<NetFile>,
    pub nodes_visited: u64,
    pub wall_time_ms: u64,
    pub candidates: Option<usize>,
    pub obstructions: Vec<Obstruction>,
    pub orbits: Vec<OrbitSummary>,
}

impl SearchCertificate {
    /// True when the certificate proves there is no solution.
    pub fn refutes(&self) -> bool {
        self.exhaustive && self.solution_count == 0
    }

    /// The certificate with timing removed, for reproducibility comparisons.
    pub fn without_timing(&self) -> SearchCertificate {
        SearchCertificate { wall_time_ms: 0, ..self.clone() }
    }

    pub fn solution_nets(&self) -> Vec<KNet> {
        self.solutions.iter().map(|s| s.into_net().expect("certificate nets are well formed")).collect()
    }
}

fn require_verified(net: &KNet) -> Result<(), SearchError> {
    if net.k() < 2 {
        return Err(SearchError::ComponentCount { needed: 2, got: net.k() });
    }
    if !net.is_verified() {
        return Err(SearchError::NotVerified);
    }
    Ok(())
}

fn elapsed_ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

/// Lines outside the net through exactly `n` net points, lying on distinct
/// lines of every component. Sorted by canonical coordinates.
pub fn transversal_lines(net: &KNet) -> Result<Vec<ProjLine>, SearchError> {
    require_verified(net)?;
    Ok(transversals_unchecked(net, &net.points()))
}

fn transversals_unchecked(net: &KNet, points: &[plane::ProjPoint]) -> Vec<ProjLine> {
    let f = net.field();
    let n = net.order();
    let plane = Plane::new(f);
    let own: std::collections::HashSet<ProjLine> = net.lines().copied().collect();
    let mut out: Vec<ProjLine> = plane
        .lines()
        .into_par_iter()
        .filter(|l| !own.contains(l))
        .filter(|l| {
            let on: Vec<&plane::ProjPoint> = points.iter().filter(|p| l.contains(f, p)).collect();
            on.len() == n
                && net.components().iter().all(|c| {
                    c.iter().all(|m| on.iter().filter(|p| m.contains(f, p)).count() <= 1)
                })
        })
        .collect();
    out.sort();
    out
}

fn extend(net: &KNet, opts: &SearchOptions, mode: SearchMode) -> Result<SearchCertificate, SearchError> {
    let start = Instant::now();
    require_verified(net)?;
    let f = net.field();
    let points = net.points();
    let index: HashMap<plane::ProjPoint, usize> = points.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let candidates = transversals_unchecked(net, &points);
    let sets: Vec<Vec<usize>> = candidates
        .iter()
        .map(|l| points.iter().filter(|p| l.contains(f, p)).map(|p| index[p]).collect())
        .collect();
    let outcome = ExactCover::new(points.len(), sets).solve(opts.limits(start), opts.parallel);
    let nets: Vec<KNet> = outcome
        .solutions
        .iter()
        .map(|sol| net.with_component(sol.iter().map(|&s| candidates[s]).collect()))
        .collect();
    for s in &nets {
        assert!(s.is_verified(), "exact cover produced a non-net");
    }
    let obstructions = if nets.first().is_some_and(|s| s.k() == 5) {
        nets.iter().enumerate().map(|(i, s)| obstruction(i, s)).collect::<Result<_, _>>()?
    } else {
        Vec::new()
    };
    Ok(SearchCertificate {
        schema: SCHEMA.into(),
        mode,
        input_hash: Some(NetFile::from_net(net).digest()),
        field: f.descriptor(),
        exhaustive: outcome.exhaustive(),
        truncated: outcome.truncated,
        solution_count: nets.len(),
        solutions: nets.iter().map(NetFile::from_net).collect(),
        nodes_visited: outcome.nodes,
        wall_time_ms: elapsed_ms(start),
        candidates: Some(candidates.len()),
        obstructions,
        orbits: Vec::new(),
    })
}

fn obstruction(solution: usize, net5: &KNet) -> Result<Obstruction, SearchError> {
    let f = net5.field();
    let subnets = [[0, 1, 2, 3], [0, 1, 2, 4], [0, 1, 3, 4]];
    let reports = subnets
        .iter()
        .map(|s| net::constant_cross_ratio(&net5.select(s)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Obstruction {
        solution,
        kappa5: io::element_json(f, reports[0].kappa),
        kappa4: io::element_json(f, reports[1].kappa),
        kappa45: io::element_json(f, reports[2].kappa),
        constant: [reports[0].constant, reports[1].constant, reports[2].constant],
        eq9: [reports[0].satisfies_eq9(), reports[1].satisfies_eq9(), reports[2].satisfies_eq9()],
    })
}

/// All ways of adding one component to a verified net, as an exact cover of
/// the net points by transversal lines.
pub fn extend_net(net: &KNet, opts: &SearchOptions) -> Result<SearchCertificate, SearchError> {
    extend(net, opts, SearchMode::Extend)
}

/// Extension of a 4-net to a 5-net; an exhaustive empty certificate proves
/// non-extendability. Solutions carry their 4-subnet cross-ratios.
pub fn refute_5net(net: &KNet, opts: &SearchOptions) -> Result<SearchCertificate, SearchError> {
    if net.k() != 4 {
        return Err(SearchError::ComponentCount { needed: 4, got: net.k() });
    }
    extend(net, opts, SearchMode::Refute)
}

/// 4-nets of order 3 in PG(2, q) up to projectivity.
pub fn search_4nets_order3(f: &Field, opts: &SearchOptions) -> Result<SearchCertificate, SearchError> {
    let start = Instant::now();
    if f.order() > opts.q_cap {
        return Err(SearchError::FieldTooLarge { q: f.order(), cap: opts.q_cap });
    }
    let plane = Plane::new(f);
    let ctl = Control::new(opts.limits(start));
    let embeddings = order3::labelled_embeddings(&plane, &ctl, opts.parallel);
    let truncated = ctl.truncation();
    let orbits = order3::orbits(f, &embeddings);
    for o in &orbits {
        assert!(o.representative.is_verified(), "embedding produced a non-net");
    }
    Ok(SearchCertificate {
        schema: SCHEMA.into(),
        mode: SearchMode::Scratch,
        input_hash: None,
        field: f.descriptor(),
        exhaustive: truncated.is_none(),
        truncated,
        solution_count: orbits.len(),
        solutions: orbits.iter().map(|o| NetFile::from_net(&o.representative)).collect(),
        nodes_visited: ctl.nodes(),
        wall_time_ms: elapsed_ms(start),
        candidates: None,
        obstructions: Vec::new(),
        orbits: orbits
            .iter()
            .map(|o| OrbitSummary {
                canonical_points: o
                    .canonical
                    .iter()
                    .map(|p| p.coords().map(|c| io::element_json(f, c)))
                    .collect(),
                stabilizer: o.stabilizer,
                orbit_size: (pgl3_order(f.order()) / o.stabilizer as u128).to_string(),
                labelled_embeddings: o.labelled,
            })
            .collect(),
    })
}
