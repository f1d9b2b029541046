//! Exact detour (longest simple path) distances.
//!
//! Members of a twin class are interchangeable, so a simple path is determined
//! up to automorphism by the sequence of classes it visits. The search walks
//! the class quotient with per-class usage counters instead of individual
//! vertices: a closed class may be re-entered from itself, an open class may
//! not, and every class is used at most `|class|` times. The endpoints are
//! split off their classes as singletons. States `(current class, counters)`
//! are memoised, and branches from which the target is unreachable through
//! unused capacity are cut.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::Graph;
use crate::matrices::DistanceMatrix;
use crate::power_graph::{twin_class_index, twin_classes, TwinKind};
use crate::{Error, Result};

pub const DEFAULT_MAX_STATES: usize = 5_000_000;
const POLL_INTERVAL: usize = 1024;

pub struct DetourOptions<'a> {
    /// Polled during the search; returning `true` aborts with
    /// [`Error::DetourInfeasible`].
    pub should_abort: Option<&'a mut dyn FnMut() -> bool>,
    /// Cap on memoised states per endpoint pair.
    pub max_states: usize,
}

impl Default for DetourOptions<'_> {
    fn default() -> Self {
        DetourOptions { should_abort: None, max_states: DEFAULT_MAX_STATES }
    }
}

struct Quotient {
    cap: Vec<u16>,
    /// Whether a step may stay inside the node (closed twins with spare members).
    internal: Vec<bool>,
    adj: Vec<Vec<bool>>,
    start: usize,
    target: usize,
}

impl Quotient {
    fn new(graph: &Graph, s: usize, t: usize) -> Self {
        let n = graph.order();
        let classes = twin_classes(graph);
        let mut members: Vec<Vec<usize>> = Vec::new();
        let mut kinds = Vec::new();
        for class in &classes {
            let rest: Vec<usize> =
                class.members.iter().copied().filter(|&v| v != s && v != t).collect();
            if !rest.is_empty() {
                members.push(rest);
                kinds.push(class.kind);
            }
        }
        let start = members.len();
        members.push(vec![s]);
        kinds.push(TwinKind::Singleton);
        let target = members.len();
        members.push(vec![t]);
        kinds.push(TwinKind::Singleton);
        debug_assert_eq!(members.iter().map(Vec::len).sum::<usize>(), n);

        let k = members.len();
        let reps: Vec<usize> = members.iter().map(|m| m[0]).collect();
        let adj = (0..k)
            .map(|i| (0..k).map(|j| i != j && graph.has_edge(reps[i], reps[j])).collect())
            .collect();
        Quotient {
            cap: members.iter().map(|m| m.len() as u16).collect(),
            internal: kinds.iter().zip(&members).map(|(&kd, m)| kd == TwinKind::Closed && m.len() > 1).collect(),
            adj,
            start,
            target,
        }
    }

    fn can_step(&self, from: usize, to: usize, used: &[u16]) -> bool {
        used[to] < self.cap[to] && (self.adj[from][to] || (from == to && self.internal[from]))
    }

    /// Is the target reachable from `cur` through nodes with spare capacity?
    fn target_reachable(&self, cur: usize, used: &[u16]) -> bool {
        let k = self.cap.len();
        let mut seen = vec![false; k];
        seen[cur] = true;
        let mut queue = VecDeque::from([cur]);
        while let Some(v) = queue.pop_front() {
            for w in 0..k {
                if !seen[w] && self.adj[v][w] && used[w] < self.cap[w] {
                    if w == self.target {
                        return true;
                    }
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        false
    }
}

struct Search<'q, 'o, 'a> {
    q: &'q Quotient,
    memo: BTreeMap<Vec<u16>, Option<u32>>,
    options: &'o mut DetourOptions<'a>,
    expansions: usize,
}

impl Search<'_, '_, '_> {
    fn longest(&mut self, cur: usize, used: &mut Vec<u16>) -> Result<Option<u32>> {
        if cur == self.q.target {
            return Ok(Some(0));
        }
        let mut key = used.clone();
        key.push(cur as u16);
        if let Some(&hit) = self.memo.get(&key) {
            return Ok(hit);
        }
        self.expansions += 1;
        if self.expansions.is_multiple_of(POLL_INTERVAL) {
            if let Some(abort) = self.options.should_abort.as_mut() {
                if abort() {
                    return Err(Error::DetourInfeasible("time budget exceeded".into()));
                }
            }
        }
        if self.memo.len() >= self.options.max_states {
            return Err(Error::DetourInfeasible(alloc::format!(
                "more than {} search states",
                self.options.max_states
            )));
        }
        let mut best = None;
        if self.q.target_reachable(cur, used) {
            for next in 0..self.q.cap.len() {
                if !self.q.can_step(cur, next, used) {
                    continue;
                }
                used[next] += 1;
                let sub = self.longest(next, used)?;
                used[next] -= 1;
                if let Some(len) = sub {
                    best = best.max(Some(len + 1));
                }
            }
        }
        self.memo.insert(key, best);
        Ok(best)
    }
}

/// Length of a longest simple `s`–`t` path, `None` if `t` is unreachable.
pub fn longest_path(
    graph: &Graph,
    s: usize,
    t: usize,
    options: &mut DetourOptions<'_>,
) -> Result<Option<u32>> {
    if s == t {
        return Ok(Some(0));
    }
    let q = Quotient::new(graph, s, t);
    let mut used = vec![0u16; q.cap.len()];
    used[q.start] = 1;
    let mut search = Search { q: &q, memo: BTreeMap::new(), options, expansions: 0 };
    search.longest(q.start, &mut used)
}

/// Detour distances for every pair. Pairs related by twin swaps share one
/// search. The graph must be connected.
pub fn detour_matrix(graph: &Graph, options: &mut DetourOptions<'_>) -> Result<DistanceMatrix> {
    let n = graph.order();
    if !graph.is_connected() {
        return Err(Error::Disconnected);
    }
    let classes = twin_classes(graph);
    let class_of = twin_class_index(&classes, n);
    let mut cache: BTreeMap<(usize, usize), u32> = BTreeMap::new();
    let mut values = vec![0u32; n * n];
    for s in 0..n {
        for t in s + 1..n {
            let key = (class_of[s].min(class_of[t]), class_of[s].max(class_of[t]));
            let d = match cache.get(&key) {
                Some(&d) => d,
                None => {
                    let d = longest_path(graph, s, t, options)?.ok_or(Error::Disconnected)?;
                    cache.insert(key, d);
                    d
                }
            };
            values[s * n + t] = d;
        }
    }
    Ok(DistanceMatrix::from_fn(n, |i, j| values[i * n + j]))
}
