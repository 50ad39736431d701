//! Backtracking over row maps with closure propagation.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use super::checkpoint::{Checkpoint, ClassRecord, CHECKPOINT_VERSION};
use super::endo::EndoSet;
use super::{PruningStats, Representative, SearchConfig, SearchReport};
use crate::error::{Error, Result};
use crate::pgroup::GroupTable;

/// One branch of the top level: identity, optional subgroup of non-units,
/// candidate rows per element and the order in which elements are assigned.
struct Task {
    identity: usize,
    h: Option<Vec<bool>>,
    stab: Arc<Vec<(Vec<u8>, Vec<u8>)>>,
    fixed: Vec<(usize, Vec<u8>)>,
    cands: Vec<Vec<u32>>,
    order: Vec<usize>,
}

#[derive(Clone)]
struct State {
    rows: Vec<u8>,
    assigned: Vec<bool>,
    list: Vec<u8>,
}

impl State {
    fn new(n: usize) -> Self {
        State {
            rows: vec![0; n * n],
            assigned: vec![false; n],
            list: Vec::with_capacity(n),
        }
    }

    fn set(&mut self, n: usize, t: usize, row: &[u8], queue: &mut Vec<usize>) -> bool {
        if self.assigned[t] {
            return &self.rows[t * n..(t + 1) * n] == row;
        }
        self.rows[t * n..(t + 1) * n].copy_from_slice(row);
        self.assigned[t] = true;
        self.list.push(t as u8);
        queue.push(t);
        true
    }

    /// Sets `λ_x = row` and closes under `λ_{z*y} = λ_z ∘ λ_y`. Returns false
    /// on a conflict with an existing row.
    fn assign(&mut self, n: usize, x: usize, row: &[u8]) -> bool {
        let mut queue = Vec::new();
        if !self.set(n, x, row, &mut queue) {
            return false;
        }
        let mut buf = vec![0u8; n];
        while let Some(z) = queue.pop() {
            let mut k = 0;
            while k < self.list.len() {
                let y = self.list[k] as usize;
                k += 1;
                let t = self.rows[z * n + y] as usize;
                for w in 0..n {
                    buf[w] = self.rows[z * n + self.rows[y * n + w] as usize];
                }
                if !self.set(n, t, &buf, &mut queue) {
                    return false;
                }
                if y != z {
                    let t = self.rows[y * n + z] as usize;
                    for w in 0..n {
                        buf[w] = self.rows[y * n + self.rows[z * n + w] as usize];
                    }
                    if !self.set(n, t, &buf, &mut queue) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

struct Frame {
    state: State,
    var: usize,
    next: usize,
}

struct Found {
    canon: Vec<u8>,
    identity: usize,
    local: bool,
    zero_symmetric: bool,
    l_order: Option<usize>,
}

#[derive(Default)]
struct UnitOutcome {
    stats: PruningStats,
    found: Vec<Found>,
    complete: bool,
    path: Vec<u32>,
}

struct Search<'a> {
    g: &'a GroupTable,
    n: usize,
    endos: EndoSet,
    tasks: Vec<Task>,
    units: Vec<(usize, Option<u32>)>,
    local_only: bool,
}

fn invert(p: &[u8]) -> Vec<u8> {
    let mut inv = vec![0u8; p.len()];
    for (x, &y) in p.iter().enumerate() {
        inv[y as usize] = x as u8;
    }
    inv
}

/// Lexicographically least relabelling `σ(T[σ⁻¹a][σ⁻¹b])` over `stab`.
fn canonical(n: usize, rows: &[u8], stab: &[(Vec<u8>, Vec<u8>)]) -> Vec<u8> {
    let mut best = rows.to_vec();
    let mut cur = vec![0u8; n * n];
    for (s, si) in stab {
        let mut ord = Ordering::Equal;
        'rows: for a in 0..n {
            let ra = si[a] as usize * n;
            for b in 0..n {
                let v = s[rows[ra + si[b] as usize] as usize];
                let k = a * n + b;
                if ord == Ordering::Equal {
                    ord = v.cmp(&best[k]);
                    if ord == Ordering::Greater {
                        break 'rows;
                    }
                }
                cur[k] = v;
            }
        }
        if ord == Ordering::Less {
            best.copy_from_slice(&cur);
        }
    }
    best
}

impl<'a> Search<'a> {
    fn prepare(g: &'a GroupTable, cfg: &SearchConfig) -> Result<(Self, usize, usize)> {
        let n = g.order();
        let endos = EndoSet::new(g)?;
        let e = g.exponent();
        let auts: Vec<&[u8]> = endos.automorphisms().collect();

        // identity candidates: one element of maximal order per orbit
        let identities: Vec<usize> = match &cfg.warm_start {
            Some(w) => {
                if w.identity >= n || g.order_of(w.identity) != e {
                    return Err(Error::Precondition(format!(
                        "warm-start identity {} does not have maximal additive order",
                        w.identity
                    )));
                }
                vec![w.identity]
            }
            None => {
                let mut covered = vec![false; n];
                let mut reps = Vec::new();
                for x in 0..n {
                    if g.order_of(x) == e && !covered[x] {
                        reps.push(x);
                        for s in &auts {
                            covered[s[x] as usize] = true;
                        }
                    }
                }
                reps
            }
        };

        let hs: Vec<Option<Vec<bool>>> = if !cfg.local_only {
            vec![None]
        } else if let Some(l) = cfg.warm_start.as_ref().and_then(|w| w.l.as_ref()) {
            let mut h = vec![false; n];
            for &x in l {
                h[x] = true;
            }
            if !g.is_subgroup(&h) {
                return Err(Error::Precondition("warm-start L is not a subgroup".into()));
            }
            vec![Some(h)]
        } else {
            let derived = g.derived_subgroup();
            g.subgroups()
                .into_iter()
                .filter(|h| {
                    let size = h.iter().filter(|&&v| v).count();
                    size < n
                        && (0..n).all(|x| h[x] || g.order_of(x) == e)
                        && (!cfg.characteristic_pruning || (0..n).all(|x| !derived[x] || h[x]))
                })
                .map(Some)
                .collect()
        };
        let l_candidates = if cfg.local_only { hs.len() } else { 0 };

        let identity_row: Vec<u8> = (0..n as u8).collect();
        let mut tasks = Vec::new();
        for &i in &identities {
            let stab: Vec<(Vec<u8>, Vec<u8>)> = auts
                .iter()
                .filter(|s| s[i] as usize == i)
                .map(|s| (s.to_vec(), invert(s)))
                .collect();
            let stab = Arc::new(stab);
            for h in &hs {
                if h.as_ref().is_some_and(|h| h[i]) {
                    continue;
                }
                let mut fixed = vec![(i, identity_row.clone())];
                if cfg.zero_symmetric_only {
                    fixed.push((0, vec![0; n]));
                }
                if let Some(w) = &cfg.warm_start {
                    for (x, row) in &w.rows {
                        if *x >= n || row.len() != n || row.iter().any(|&v| v as usize >= n) {
                            return Err(Error::Precondition(format!("warm-start row {x} is malformed")));
                        }
                        fixed.push((*x, row.iter().map(|&v| v as u8).collect()));
                    }
                }
                let mut cands: Vec<Vec<u32>> = vec![Vec::new(); n];
                for k in 0..endos.len() {
                    let f = endos.get(k);
                    let x = f[i] as usize;
                    let ok = match h {
                        None => true,
                        Some(h) if h[x] => f.iter().all(|&v| h[v as usize]),
                        Some(h) => {
                            endos.bijective[k] && (0..n).all(|y| !h[y] || h[f[y] as usize])
                        }
                    };
                    if ok {
                        cands[x].push(k as u32);
                    }
                }
                let mut order: Vec<usize> = (0..n).filter(|&x| x != i).collect();
                match h {
                    Some(h) => order.sort_by_key(|&x| h[x]),
                    None => order.sort_by_key(|&x| g.order_of(x) != e),
                }
                tasks.push(Task {
                    identity: i,
                    h: h.clone(),
                    stab: stab.clone(),
                    fixed,
                    cands,
                    order,
                });
            }
        }

        let mut s = Search {
            g,
            n,
            endos,
            tasks,
            units: Vec::new(),
            local_only: cfg.local_only,
        };
        for t in 0..s.tasks.len() {
            let Some(root) = s.root(&s.tasks[t]) else { continue };
            match s.next_var(&s.tasks[t], &root) {
                None => s.units.push((t, None)),
                Some(v) => {
                    for c in 0..s.tasks[t].cands[v].len() {
                        s.units.push((t, Some(c as u32)));
                    }
                }
            }
        }
        Ok((s, identities.len(), l_candidates))
    }

    fn root(&self, task: &Task) -> Option<State> {
        let mut s = State::new(self.n);
        for (x, row) in &task.fixed {
            if row[task.identity] as usize != *x || !s.assign(self.n, *x, row) {
                return None;
            }
        }
        Some(s)
    }

    fn next_var(&self, task: &Task, s: &State) -> Option<usize> {
        task.order.iter().copied().find(|&x| !s.assigned[x])
    }

    fn apply(&self, task: &Task, s: &mut State, var: usize, c: usize) -> bool {
        let k = task.cands[var][c] as usize;
        s.assign(self.n, var, self.endos.get(k))
    }

    fn leaf(&self, task: &Task, s: &State, out: &mut UnitOutcome) {
        let n = self.n;
        out.stats.leaves += 1;
        let mut l = vec![false; n];
        for x in 0..n {
            let mut seen = vec![false; n];
            let row = &s.rows[x * n..(x + 1) * n];
            l[x] = !row.iter().all(|&v| !std::mem::replace(&mut seen[v as usize], true));
        }
        let l_size = l.iter().filter(|&&v| v).count();
        let local = self.g.is_subgroup(&l);
        if let Some(h) = &task.h {
            debug_assert_eq!(&l, h, "rows outside L must be exactly the units");
        }
        if self.local_only && !local {
            return;
        }
        out.found.push(Found {
            canon: canonical(n, &s.rows, &task.stab),
            identity: task.identity,
            local,
            zero_symmetric: s.rows[..n].iter().all(|&v| v == 0),
            l_order: local.then_some(l_size),
        });
    }

    fn run_unit(&self, u: usize, resume: Option<&[u32]>, budget: u64) -> UnitOutcome {
        let (t, first) = self.units[u];
        let task = &self.tasks[t];
        let mut out = UnitOutcome::default();
        let root = self.root(task).expect("units exist only for consistent roots");
        let Some(c0) = first else {
            self.leaf(task, &root, &mut out);
            out.complete = true;
            return out;
        };
        let resume = resume.filter(|p| !p.is_empty());
        if resume.is_none() {
            if budget == 0 {
                return out;
            }
            out.stats.nodes_visited += 1;
        }
        let var0 = self.next_var(task, &root).expect("unit has a first variable");
        let mut start = root;
        if !self.apply(task, &mut start, var0, c0 as usize) {
            out.stats.nodes_pruned += 1;
            out.complete = true;
            return out;
        }

        let mut frames: Vec<Frame> = Vec::new();
        match resume {
            Some(path) => {
                let var = self.next_var(task, &start).expect("resumed frame");
                frames.push(Frame {
                    state: start,
                    var,
                    next: path[0] as usize,
                });
                for d in 1..path.len() {
                    let f = &frames[d - 1];
                    let mut child = f.state.clone();
                    let ok = self.apply(task, &mut child, f.var, f.next - 1);
                    assert!(ok, "checkpoint path replays a pruned branch");
                    let var = self.next_var(task, &child).expect("resumed frame");
                    frames.push(Frame {
                        state: child,
                        var,
                        next: path[d] as usize,
                    });
                }
            }
            None => match self.next_var(task, &start) {
                Some(var) => frames.push(Frame {
                    state: start,
                    var,
                    next: 0,
                }),
                None => self.leaf(task, &start, &mut out),
            },
        }

        while let Some(top) = frames.last_mut() {
            if top.next >= task.cands[top.var].len() {
                frames.pop();
                continue;
            }
            if out.stats.nodes_visited >= budget {
                out.path = frames.iter().map(|f| f.next as u32).collect();
                return out;
            }
            let c = top.next;
            top.next += 1;
            out.stats.nodes_visited += 1;
            let mut child = top.state.clone();
            if !self.apply(task, &mut child, top.var, c) {
                out.stats.nodes_pruned += 1;
                continue;
            }
            match self.next_var(task, &child) {
                Some(var) => frames.push(Frame {
                    state: child,
                    var,
                    next: 0,
                }),
                None => self.leaf(task, &child, &mut out),
            }
        }
        out.complete = true;
        out
    }
}

struct Totals {
    stats: PruningStats,
    candidates_found: u64,
    local_count: u64,
    classes: BTreeMap<Vec<u8>, ClassRecord>,
}

impl Totals {
    fn merge(&mut self, o: UnitOutcome) {
        self.stats.add(&o.stats);
        for f in o.found {
            self.candidates_found += 1;
            self.local_count += f.local as u64;
            self.classes
                .entry(f.canon.clone())
                .or_insert_with(|| ClassRecord {
                    identity: f.identity,
                    is_local: f.local,
                    is_zero_symmetric: f.zero_symmetric,
                    l_order: f.l_order,
                    tables: 0,
                    canon: f.canon,
                })
                .tables += 1;
        }
    }
}

pub(super) fn run(g: Arc<GroupTable>, cfg: &SearchConfig) -> Result<SearchReport> {
    let started = Instant::now();
    let key = cfg.key();
    let (search, identity_orbits, l_candidates) = Search::prepare(&g, cfg)?;
    let n = search.n;

    let mut totals = Totals {
        stats: PruningStats::default(),
        candidates_found: 0,
        local_count: 0,
        classes: BTreeMap::new(),
    };
    let mut unit = 0usize;
    let mut path: Vec<u32> = Vec::new();
    if let Some(cp) = &cfg.resume {
        cp.check_matches(g.spec(), &key)?;
        if cp.unit > search.units.len() {
            return Err(Error::Checkpoint(format!("unit {} out of range", cp.unit)));
        }
        unit = cp.unit;
        path = cp.path.clone();
        totals.stats = cp.stats;
        totals.candidates_found = cp.candidates_found;
        totals.local_count = cp.local_count;
        for c in &cp.classes {
            totals.classes.insert(c.canon.clone(), c.clone());
        }
    }
    totals.stats.work_units = search.units.len() as u64;

    let budget = cfg.node_budget.unwrap_or(u64::MAX);
    let mut used = 0u64;
    let mut stop: Option<(usize, Vec<u32>)> = None;

    if !path.is_empty() {
        let o = search.run_unit(unit, Some(&path), budget);
        used += o.stats.nodes_visited;
        let complete = o.complete;
        let p = o.path.clone();
        totals.merge(o);
        if complete {
            unit += 1;
        } else {
            stop = Some((unit, p));
        }
    }

    let chunk = cfg.exec.workers().max(1) * 2;
    while stop.is_none() && unit < search.units.len() {
        let remaining = budget - used;
        if remaining == 0 {
            stop = Some((unit, Vec::new()));
            break;
        }
        let end = (unit + chunk).min(search.units.len());
        let outs = cfg
            .exec
            .map_range(unit..end, |u| search.run_unit(u, None, remaining));
        for (k, o) in outs.into_iter().enumerate() {
            let u = unit + k;
            let rem = budget - used;
            // a unit run with a larger allowance is only reusable if it
            // finished within the exact one
            let o = if o.complete && o.stats.nodes_visited <= rem {
                o
            } else {
                search.run_unit(u, None, rem)
            };
            used += o.stats.nodes_visited;
            let complete = o.complete;
            let p = o.path.clone();
            totals.merge(o);
            if !complete {
                stop = Some((u, p));
                break;
            }
        }
        if stop.is_none() {
            unit = end;
        }
    }

    let checkpoint = stop.map(|(unit, path)| Checkpoint {
        version: CHECKPOINT_VERSION,
        group: g.spec().clone(),
        config: key.clone(),
        unit,
        path,
        stats: totals.stats,
        candidates_found: totals.candidates_found,
        local_count: totals.local_count,
        classes: totals.classes.values().cloned().collect(),
    });

    let representatives: Vec<Representative> = totals
        .classes
        .values()
        .map(|c| Representative {
            identity: c.identity,
            is_local: c.is_local,
            is_zero_symmetric: c.is_zero_symmetric,
            is_nearfield: c.l_order == Some(1),
            l_order: c.l_order,
            tables: c.tables,
            mul: c.canon.chunks(n).map(|r| r.iter().map(|&v| v as u16).collect()).collect(),
        })
        .collect();
    let local_classes = representatives.iter().filter(|r| r.is_local);
    Ok(SearchReport {
        group: g.spec().name.clone(),
        group_spec: g.spec().clone(),
        order: n,
        complete: checkpoint.is_none(),
        local_only: cfg.local_only,
        zero_symmetric_only: cfg.zero_symmetric_only,
        identity_orbits_tried: identity_orbits,
        l_candidates,
        candidates_found: totals.candidates_found,
        local_count: totals.local_count,
        unital_class_count: representatives.len(),
        iso_class_count: local_classes.clone().count(),
        zero_symmetric_class_count: local_classes.filter(|r| r.is_zero_symmetric).count(),
        representatives,
        stats: totals.stats,
        elapsed_ms: started.elapsed().as_millis() as u64,
        checkpoint,
    })
}
