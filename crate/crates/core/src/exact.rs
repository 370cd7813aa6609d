//! Exact `M(n)` for small `n` by branch and bound, plus the brute-force
//! family enumeration that certifies it for `n <= 4`.
//!
//! Candidates are the non-empty subsets of `[n]` ordered by descending
//! cardinality, then ascending mask. Because every chosen set is at least as
//! large as any later candidate, a new set is never covered by earlier ones;
//! it can only complete the cover of a larger chosen set. Each chosen set `A`
//! keeps its deficit `A ∖ cover(A)`, and a candidate `T ⊊ A` becomes
//! infeasible once `deficit(A) ⊆ T`.
//!
//! The search is split into one task per first chosen set. Tasks run on
//! worker threads sharing the best size found so far; the reported witness is
//! the first optimum in sequential search order, whatever the worker count.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use num_traits::ToPrimitive;

use crate::bounds::{materialize_lower_witness, BoundState};
use crate::error::{Error, Result};
use crate::family::Family;
use crate::mask::{ground_bits, SubsetMask};

pub const EXACT_MAX_N: u32 = 16;
pub const EXHAUSTIVE_MAX_N: u32 = 4;

const WORKER_STACK: usize = 64 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub n: u32,
    pub time_limit: Option<Duration>,
    pub thread_hint: Option<usize>,
    /// Only explore families whose first chosen set is `{1, …, k}`.
    pub symmetry: bool,
}

impl SearchConfig {
    pub fn new(n: u32) -> Self {
        SearchConfig { n, time_limit: None, thread_hint: None, symmetry: false }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchStatus {
    Exact,
    Timeout,
}

impl std::fmt::Display for SearchStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SearchStatus::Exact => "exact",
            SearchStatus::Timeout => "timeout",
        })
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub status: SearchStatus,
    pub best_size: usize,
    pub witness: Family,
    pub explored: u64,
    pub elapsed: Duration,
}

struct Shared {
    deadline: Option<Instant>,
    cap: usize,
    global_best: AtomicUsize,
    earliest_capped: AtomicUsize,
    timed_out: AtomicBool,
    explored: AtomicU64,
}

struct Worker<'a> {
    shared: &'a Shared,
    task: usize,
    cands: &'a [SubsetMask],
    index_of: &'a [u32],
    blocked: Vec<bool>,
    block_trail: Vec<u32>,
    /// (set, deficit) for each chosen member
    chosen: Vec<(SubsetMask, u64)>,
    deficit_trail: Vec<(u32, u64)>,
    best: Vec<SubsetMask>,
    nodes: u64,
    stop: bool,
}

impl<'a> Worker<'a> {
    fn new(shared: &'a Shared, task: usize, cands: &'a [SubsetMask], index_of: &'a [u32]) -> Self {
        Worker {
            shared,
            task,
            cands,
            index_of,
            blocked: vec![false; cands.len()],
            block_trail: Vec::new(),
            chosen: Vec::new(),
            deficit_trail: Vec::new(),
            best: Vec::new(),
            nodes: 0,
            stop: false,
        }
    }

    fn poll(&mut self) {
        self.nodes += 1;
        if !self.nodes.is_multiple_of(1024) {
            return;
        }
        if let Some(d) = self.shared.deadline {
            if Instant::now() >= d {
                self.shared.timed_out.store(true, Ordering::Relaxed);
            }
        }
        if self.shared.timed_out.load(Ordering::Relaxed)
            || self.shared.earliest_capped.load(Ordering::Relaxed) < self.task
        {
            self.stop = true;
        }
    }

    /// Adds candidate `i`; returns how many later free candidates it blocked.
    fn include(&mut self, i: usize) -> usize {
        let c = self.cands[i];
        let before = self.block_trail.len();
        for k in 0..self.chosen.len() {
            let (a, d) = self.chosen[k];
            if !c.is_proper_subset_of(a) {
                continue;
            }
            let nd = d & !c.bits();
            debug_assert!(nd != 0, "included a covering candidate");
            self.deficit_trail.push((k as u32, d));
            self.chosen[k].1 = nd;
            // block every later T with nd ⊆ T ⊊ a
            let free = a.bits() & !nd;
            let mut sub = free;
            loop {
                let t = nd | sub;
                if t != a.bits() {
                    let idx = self.index_of[t as usize] as usize;
                    if idx > i && !self.blocked[idx] {
                        self.blocked[idx] = true;
                        self.block_trail.push(idx as u32);
                    }
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & free;
            }
        }
        self.chosen.push((c, c.bits()));
        self.block_trail.push(u32::MAX);
        self.block_trail.len() - before - 1
    }

    fn undo(&mut self, deficits_before: usize) {
        self.chosen.pop();
        let marker = self.block_trail.pop();
        debug_assert_eq!(marker, Some(u32::MAX));
        while let Some(&idx) = self.block_trail.last() {
            if idx == u32::MAX {
                break;
            }
            self.blocked[idx as usize] = false;
            self.block_trail.pop();
        }
        while self.deficit_trail.len() > deficits_before {
            let (k, d) = self.deficit_trail.pop().expect("non-empty");
            self.chosen[k as usize].1 = d;
        }
    }

    fn record(&mut self) {
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.iter().map(|&(s, _)| s).collect();
            self.shared.global_best.fetch_max(self.best.len(), Ordering::Relaxed);
            if self.best.len() >= self.shared.cap {
                self.shared.earliest_capped.fetch_min(self.task, Ordering::Relaxed);
                self.stop = true;
            }
        }
    }

    fn prunes(&self, bound: usize) -> bool {
        bound <= self.best.len() || bound < self.shared.global_best.load(Ordering::Relaxed)
    }

    /// `remaining` counts free candidates at positions `start..`.
    fn search(&mut self, start: usize, mut remaining: usize) {
        for i in start..self.cands.len() {
            if self.stop {
                return;
            }
            if self.blocked[i] {
                continue;
            }
            if self.prunes(self.chosen.len() + remaining) {
                return;
            }
            remaining -= 1;
            self.poll();
            let deficits_before = self.deficit_trail.len();
            let newly = self.include(i);
            self.record();
            self.search(i + 1, remaining - newly);
            self.undo(deficits_before);
        }
    }

    fn run(&mut self) {
        let i = self.task;
        let remaining = self.cands.len() - i;
        if self.prunes(remaining) {
            return;
        }
        self.poll();
        let newly = self.include(i);
        self.record();
        self.search(i + 1, remaining - 1 - newly);
        self.undo(0);
    }
}

/// Non-empty subsets of `[n]`, largest first, ascending mask within a size.
fn candidate_order(n: u32) -> Vec<SubsetMask> {
    let mut v: Vec<SubsetMask> = (1..=ground_bits(n)).map(SubsetMask::from_bits).collect();
    v.sort_unstable_by(|a, b| b.len().cmp(&a.len()).then(a.bits().cmp(&b.bits())));
    v
}

fn is_prefix_set(s: SubsetMask) -> bool {
    s.bits() == ground_bits(s.len())
}

/// Maximum size of a union-free family of non-empty subsets of `[n]`.
pub fn max_union_free(config: &SearchConfig) -> Result<SearchResult> {
    let n = config.n;
    if n == 0 || n > EXACT_MAX_N {
        return Err(Error::Refused(format!("exact search supports 1 <= n <= {EXACT_MAX_N}, got {n}")));
    }
    let started = Instant::now();
    let mut bounds = BoundState::new();
    let lower = bounds.lower(n)?.0.to_usize().expect("fits for n <= 16");
    let cap = bounds.upper(n)?.0.to_usize().expect("fits for n <= 16");

    let cands = candidate_order(n);
    let mut index_of = vec![u32::MAX; 1usize << n];
    for (i, c) in cands.iter().enumerate() {
        index_of[c.bits() as usize] = i as u32;
    }
    let tasks: Vec<usize> = (0..cands.len())
        .filter(|&i| !config.symmetry || is_prefix_set(cands[i]))
        .collect();

    let shared = Shared {
        deadline: config.time_limit.map(|d| started + d),
        cap,
        global_best: AtomicUsize::new(lower),
        earliest_capped: AtomicUsize::new(usize::MAX),
        timed_out: AtomicBool::new(false),
        explored: AtomicU64::new(0),
    };
    let next_task = AtomicUsize::new(0);
    let results: Mutex<Vec<(usize, Vec<SubsetMask>)>> = Mutex::new(Vec::new());
    let threads = config.thread_hint.unwrap_or(1).clamp(1, tasks.len().max(1));

    std::thread::scope(|scope| {
        for _ in 0..threads {
            std::thread::Builder::new()
                .stack_size(WORKER_STACK)
                .spawn_scoped(scope, || loop {
                    let k = next_task.fetch_add(1, Ordering::Relaxed);
                    let Some(&task) = tasks.get(k) else { break };
                    if shared.timed_out.load(Ordering::Relaxed)
                        || shared.earliest_capped.load(Ordering::Relaxed) < task
                    {
                        break;
                    }
                    let mut w = Worker::new(&shared, task, &cands, &index_of);
                    w.run();
                    shared.explored.fetch_add(w.nodes, Ordering::Relaxed);
                    if !w.best.is_empty() {
                        results.lock().expect("no poisoned lock").push((task, w.best));
                    }
                })
                .expect("spawn search worker");
        }
    });

    let timed_out = shared.timed_out.load(Ordering::Relaxed);
    let mut results = results.into_inner().expect("no poisoned lock");
    results.sort_by_key(|(task, _)| *task);
    let best = results
        .into_iter()
        .fold(None::<Vec<SubsetMask>>, |acc, (_, fam)| match acc {
            Some(b) if b.len() >= fam.len() => Some(b),
            _ => Some(fam),
        })
        .filter(|b| b.len() >= lower);
    let witness = match best {
        Some(members) => Family::new(n, members)?,
        None if timed_out => materialize_lower_witness(n)?,
        None => unreachable!("a complete search finds the lower-bound family"),
    };
    Ok(SearchResult {
        status: if timed_out { SearchStatus::Timeout } else { SearchStatus::Exact },
        best_size: witness.len(),
        witness,
        explored: shared.explored.load(Ordering::Relaxed),
        elapsed: started.elapsed(),
    })
}

/// True iff no union-free family of non-empty subsets of `[n]` has more than
/// `bound` members, checked over all `2^(2^n − 1)` families.
pub fn exhaustive_bound_check(n: u32, bound: usize) -> Result<bool> {
    if n == 0 || n > EXHAUSTIVE_MAX_N {
        return Err(Error::Refused(format!(
            "exhaustive enumeration supports 1 <= n <= {EXHAUSTIVE_MAX_N}, got {n}"
        )));
    }
    let subsets: Vec<SubsetMask> = (1..=ground_bits(n)).map(SubsetMask::from_bits).collect();
    let total = 1u64 << subsets.len();
    for pick in 0..total {
        if pick.count_ones() as usize <= bound {
            continue;
        }
        let members = (0..subsets.len())
            .filter(|i| pick >> i & 1 == 1)
            .map(|i| subsets[i]);
        if Family::new(n, members)?.is_union_free() {
            return Ok(false);
        }
    }
    Ok(true)
}
