//! Exhaustive search for nearrings with identity on a small group.
//!
//! Left distributivity makes each row map `λ_x: y -> x*y` an additive
//! endomorphism, and associativity is exactly the closure law
//! `λ_{x*y} = λ_x ∘ λ_y`. A nearring with identity `i` is therefore a choice
//! of endomorphisms `λ_x` with `λ_x(i) = x` and `λ_i = id` closed under
//! that law. The engine assigns rows one element at a time and propagates
//! the closure law after every assignment.
//!
//! Identity candidates are elements of maximal additive order, one per
//! automorphism orbit. In local mode the search also fixes the future
//! subgroup `L` of non-units, which turns unit rows into automorphisms
//! preserving `L` and non-unit rows into maps into `L`. Found tables are
//! reduced to canonical form under the automorphisms fixing the identity.

mod checkpoint;
mod endo;
mod engine;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use checkpoint::{Checkpoint, ClassRecord, CHECKPOINT_VERSION};
pub use endo::{all_endomorphisms, EndoMap, EndoSet, ENDO_ORDER_LIMIT};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::nearring::{are_isomorphic, locality_report, Nearring};
use crate::pgroup::{catalog, GroupSpec, GroupTable};

/// Largest group order the search accepts.
pub const SEARCH_ORDER_LIMIT: usize = 81;

/// Rows to fix before searching, taken from a known table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WarmStart {
    pub identity: usize,
    /// Subgroup of non-units to assume in local mode.
    pub l: Option<Vec<usize>>,
    pub rows: Vec<(usize, Vec<u16>)>,
}

impl WarmStart {
    /// Seeds the search with the rows of `nr` at `elements`.
    pub fn from_nearring(nr: &Nearring, elements: &[usize]) -> Result<Self> {
        let rep = locality_report(nr)?;
        Ok(WarmStart {
            identity: rep.axioms.identity.expect("locality report implies identity"),
            l: rep.is_local.then(|| rep.l.clone()),
            rows: elements.iter().map(|&x| (x, nr.row(x).to_vec())).collect(),
        })
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Search only for local nearrings (branching over the subgroup L).
    pub local_only: bool,
    /// Only tables with `0*x = 0`.
    pub zero_symmetric_only: bool,
    /// In local mode require L to contain the derived subgroup, which every
    /// local nearring satisfies.
    pub characteristic_pruning: bool,
    /// Maximum number of row assignments tried in this run.
    pub node_budget: Option<u64>,
    pub warm_start: Option<WarmStart>,
    #[serde(skip)]
    pub exec: Exec,
    #[serde(skip)]
    pub threads: Option<usize>,
    #[serde(skip)]
    pub resume: Option<Checkpoint>,
}

impl SearchConfig {
    pub fn local() -> Self {
        SearchConfig {
            local_only: true,
            characteristic_pruning: true,
            ..Default::default()
        }
    }

    pub fn unital() -> Self {
        SearchConfig::default()
    }

    pub fn with_budget(mut self, nodes: u64) -> Self {
        self.node_budget = Some(nodes);
        self
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub fn zero_symmetric(mut self) -> Self {
        self.zero_symmetric_only = true;
        self
    }

    /// Settings that change the search space; checkpoints must match them.
    fn key(&self) -> String {
        format!(
            "local={} zs={} char={} warm={}",
            self.local_only,
            self.zero_symmetric_only,
            self.characteristic_pruning,
            self.warm_start
                .as_ref()
                .map_or_else(|| "none".to_string(), |w| serde_json::to_string(w).unwrap_or_default())
        )
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PruningStats {
    /// Row assignments tried.
    pub nodes_visited: u64,
    /// Assignments rejected by closure propagation.
    pub nodes_pruned: u64,
    /// Complete tables reached.
    pub leaves: u64,
    /// Independent work units (identity, L, first row) in the search tree.
    pub work_units: u64,
}

impl PruningStats {
    fn add(&mut self, o: &PruningStats) {
        self.nodes_visited += o.nodes_visited;
        self.nodes_pruned += o.nodes_pruned;
        self.leaves += o.leaves;
    }
}

/// One isomorphism class, given by its canonical table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Representative {
    pub identity: usize,
    pub is_local: bool,
    pub is_zero_symmetric: bool,
    pub is_nearfield: bool,
    pub l_order: Option<usize>,
    /// Distinct tables (with this identity) in the class.
    pub tables: u64,
    pub mul: Vec<Vec<u16>>,
}

impl Representative {
    pub fn to_nearring(&self, g: Arc<GroupTable>) -> Result<Nearring> {
        Nearring::new(g, self.mul.iter().flatten().copied().collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub group: String,
    pub group_spec: GroupSpec,
    pub order: usize,
    pub complete: bool,
    pub local_only: bool,
    pub zero_symmetric_only: bool,
    pub identity_orbits_tried: usize,
    pub l_candidates: usize,
    /// Distinct unital tables found (identities restricted to orbit
    /// representatives).
    pub candidates_found: u64,
    /// Of those, tables that are local.
    pub local_count: u64,
    /// Isomorphism classes among all tables found.
    pub unital_class_count: usize,
    /// Isomorphism classes of local tables.
    pub iso_class_count: usize,
    pub zero_symmetric_class_count: usize,
    pub representatives: Vec<Representative>,
    pub stats: PruningStats,
    pub elapsed_ms: u64,
    /// Present when the budget ran out before the search finished.
    pub checkpoint: Option<Checkpoint>,
}

impl SearchReport {
    /// Local classes with `|L| = l` that are not nearfields.
    pub fn local_with_l_order(&self, l: usize) -> impl Iterator<Item = &Representative> {
        self.representatives
            .iter()
            .filter(move |r| r.is_local && r.l_order == Some(l))
    }

    pub fn group_table(&self) -> Result<Arc<GroupTable>> {
        Ok(Arc::new(GroupTable::new(self.group_spec.clone())?))
    }

    pub fn nearrings(&self) -> Result<Vec<Nearring>> {
        let g = self.group_table()?;
        self.representatives.iter().map(|r| r.to_nearring(g.clone())).collect()
    }
}

pub fn enumerate_unital_nearrings(spec: &GroupSpec, cfg: &SearchConfig) -> Result<SearchReport> {
    if spec.order() > SEARCH_ORDER_LIMIT {
        return Err(Error::TooLarge {
            order: spec.order(),
            limit: SEARCH_ORDER_LIMIT,
        });
    }
    let g = Arc::new(GroupTable::with_exec(spec.clone(), cfg.exec)?);
    cfg.exec.install(cfg.threads, || engine::run(g, cfg))
}

/// Keeps the local classes and re-checks that they are pairwise
/// non-isomorphic with the general isomorphism test.
pub fn filter_local(report: &SearchReport) -> Result<SearchReport> {
    if !report.complete {
        return Err(Error::Precondition("cannot filter an incomplete report".into()));
    }
    let g = report.group_table()?;
    let survivors: Vec<(Representative, Nearring)> = report
        .representatives
        .iter()
        .filter(|r| r.is_local)
        .map(|r| Ok((r.clone(), r.to_nearring(g.clone())?)))
        .collect::<Result<_>>()?;
    let mut kept: Vec<(Representative, Nearring)> = Vec::new();
    for (rep, nr) in survivors {
        let mut merged = false;
        for (k, knr) in kept.iter_mut() {
            if are_isomorphic(knr, &nr)?.is_some() {
                k.tables += rep.tables;
                merged = true;
                break;
            }
        }
        if !merged {
            kept.push((rep, nr));
        }
    }
    let reps: Vec<Representative> = kept.into_iter().map(|(r, _)| r).collect();
    let mut out = report.clone();
    out.candidates_found = report.local_count;
    out.unital_class_count = reps.len();
    out.iso_class_count = reps.len();
    out.zero_symmetric_class_count = reps.iter().filter(|r| r.is_zero_symmetric).count();
    out.representatives = reps;
    Ok(out)
}

/// Local-nearring search on G6(p) with every structural pruning enabled.
pub fn conjecture1_check(p: u32, cfg: &SearchConfig) -> Result<SearchReport> {
    let spec = catalog("G6", p)?;
    let cfg = SearchConfig {
        local_only: true,
        characteristic_pruning: true,
        ..cfg.clone()
    };
    enumerate_unital_nearrings(&spec, &cfg)
}
