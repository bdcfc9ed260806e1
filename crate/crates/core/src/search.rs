//! Backtracking search for APN permutations.
//!
//! A node of the tree is a partial table. Two things rule out a candidate
//! output for an input: the output is already used, or one of the difference
//! pairs `(x ^ x', F(x) ^ F(x'))` it creates was already realised by another
//! pair of assigned inputs (that would push `delta_F(a, b)` above 2).
//!
//! Every unassigned input carries the set of outputs ruled out for it. A
//! branch is abandoned when one of these sets fills up, or when some unused
//! output is ruled out for every unassigned input.
//!
//! Inputs are taken either in ascending order or by fewest remaining options
//! (ties to the smaller input); candidate outputs are always tried in
//! ascending order.
//!
//! Optional normalizations shrink the tree without losing solutions:
//! `F(0) = 0` (translate the output) and `F(1) = 1` (apply an affine
//! bijection of the output space; combined with the first this is linear).
//!
//! The top levels are split into independent subtrees that run on a rayon
//! pool. Subtrees are indexed in DFS order and a solution in a subtree only
//! cancels the subtrees after it, so `Found` always reports the first
//! solution in DFS order.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::vectfn::VectFn;

/// Largest dimension the search state supports.
pub const MAX_SEARCH_DIM: usize = 6;
/// Largest dimension searched without a node budget.
pub const MAX_UNBUDGETED_DIM: usize = 4;

const FLUSH_EVERY: u64 = 1 << 12;
const UNASSIGNED: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Reductions {
    pub fix_zero: bool,
    pub fix_one: bool,
}

impl Reductions {
    pub fn all() -> Self {
        Reductions {
            fix_zero: true,
            fix_one: true,
        }
    }

    pub fn none() -> Self {
        Reductions {
            fix_zero: false,
            fix_one: false,
        }
    }

    fn forced(&self, x: usize) -> Option<u32> {
        match x {
            0 if self.fix_zero => Some(0),
            1 if self.fix_one => Some(1),
            _ => None,
        }
    }

    fn fixed_levels(&self) -> usize {
        self.fix_zero as usize + self.fix_one as usize
    }
}

impl Default for Reductions {
    fn default() -> Self {
        Self::all()
    }
}

/// Which unassigned input the search branches on next.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InputOrder {
    /// `x = 0, 1, 2, ...`
    #[default]
    Ascending,
    /// The input with the fewest admissible outputs, smallest `x` on ties.
    FewestOptions,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub m: usize,
    pub reductions: Reductions,
    pub node_budget: Option<u64>,
    pub workers: usize,
    pub order: InputOrder,
}

impl SearchConfig {
    pub fn new(m: usize) -> Self {
        SearchConfig {
            m,
            reductions: Reductions::all(),
            node_budget: None,
            workers: crate::default_workers(),
            order: InputOrder::default(),
        }
    }

    pub fn reductions(mut self, r: Reductions) -> Self {
        self.reductions = r;
        self
    }

    pub fn budget(mut self, nodes: Option<u64>) -> Self {
        self.node_budget = nodes;
        self
    }

    pub fn workers(mut self, n: usize) -> Self {
        self.workers = n.max(1);
        self
    }

    pub fn order(mut self, order: InputOrder) -> Self {
        self.order = order;
        self
    }

    pub fn run(&self) -> Result<SearchOutcome> {
        run(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchResult {
    ExhaustedNoSolution,
    Found(VectFn),
    BudgetExceeded,
}

impl SearchResult {
    pub fn label(&self) -> &'static str {
        match self {
            SearchResult::ExhaustedNoSolution => "exhausted_no_solution",
            SearchResult::Found(_) => "found",
            SearchResult::BudgetExceeded => "budget_exceeded",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Successful assignments (tree nodes below the root).
    pub nodes: u64,
    /// Candidates rejected because a difference pair was already taken.
    pub ddt_overflow: u64,
    /// Candidates rejected because the output was already used.
    pub output_reuse: u64,
    /// Assignments abandoned because the remaining inputs can no longer be
    /// completed.
    pub lookahead: u64,
    pub wall_time: Duration,
}

impl SearchStats {
    fn absorb(&mut self, other: &SearchStats) {
        self.nodes += other.nodes;
        self.ddt_overflow += other.ddt_overflow;
        self.output_reuse += other.output_reuse;
        self.lookahead += other.lookahead;
    }

    fn count_rejected(&mut self, st: &State, tried: u64, open: u64) {
        let rejected = tried & !open;
        self.output_reuse += (rejected & st.used_outputs()).count_ones() as u64;
        self.ddt_overflow += (rejected & !st.used_outputs()).count_ones() as u64;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub result: SearchResult,
    pub stats: SearchStats,
}

/// Searches for an APN permutation of dimension `m` with the given
/// normalizations, on the default worker count and input order.
pub fn search_apn_permutation(m: usize, reductions: Reductions, node_budget: Option<u64>) -> Result<SearchOutcome> {
    SearchConfig::new(m).reductions(reductions).budget(node_budget).run()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Prune {
    OutputReuse,
    DdtOverflow,
}

/// Partial table with incremental bookkeeping of used outputs, used
/// difference pairs, and for every unassigned input the outputs ruled out
/// for it.
#[derive(Debug, Clone)]
pub(crate) struct State {
    m: usize,
    n: usize,
    value: Vec<u32>,
    /// Assigned inputs in assignment order.
    trail: Vec<u32>,
    assigned: u64,
    used_out: u64,
    /// Bit `b` of `pairs[a]` is set once some assigned `x, x'` have
    /// `x ^ x' = a` and `F(x) ^ F(x') = b`.
    pairs: Vec<u64>,
    /// Frame `d` (entries `d*n .. (d+1)*n`) holds, at depth `d`, the outputs
    /// ruled out for each unassigned input.
    blocked: Vec<u64>,
    dead: bool,
}

const BLOCK_LO: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

/// The set `{b ^ c : b in set}`.
fn xor_shift(mut set: u64, c: u32, m: usize) -> u64 {
    for (j, lo) in BLOCK_LO.iter().enumerate().take(m) {
        if c >> j & 1 == 1 {
            let s = 1 << j;
            set = ((set & lo) << s) | ((set >> s) & lo);
        }
    }
    set
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl State {
    pub(crate) fn new(m: usize) -> Self {
        let n = 1usize << m;
        State {
            m,
            n,
            value: vec![UNASSIGNED; n],
            trail: Vec::with_capacity(n),
            assigned: 0,
            used_out: 0,
            pairs: vec![0; n],
            blocked: vec![0; (n + 1) * n],
            dead: false,
        }
    }

    pub(crate) fn depth(&self) -> usize {
        self.trail.len()
    }

    pub(crate) fn is_complete(&self) -> bool {
        self.depth() == self.n
    }

    /// `(x, F(x))` in assignment order.
    pub(crate) fn assignments(&self) -> Vec<(u32, u32)> {
        self.trail.iter().map(|&x| (x, self.value[x as usize])).collect()
    }

    #[cfg(test)]
    pub(crate) fn pair_bits(&self) -> &[u64] {
        &self.pairs
    }

    pub(crate) fn used_outputs(&self) -> u64 {
        self.used_out
    }

    pub(crate) fn is_assigned(&self, x: usize) -> bool {
        self.assigned >> x & 1 == 1
    }

    /// Outputs ruled out for the unassigned input `x`.
    pub(crate) fn blocked(&self, x: usize) -> u64 {
        self.blocked[self.depth() * self.n + x]
    }

    /// The current partial table cannot be completed.
    pub(crate) fn is_dead(&self) -> bool {
        self.dead
    }

    pub(crate) fn try_assign(&mut self, x: usize, y: u32) -> std::result::Result<(), Prune> {
        debug_assert!(!self.is_assigned(x));
        if self.used_out >> y & 1 == 1 {
            return Err(Prune::OutputReuse);
        }
        for (i, &xp) in self.trail.iter().enumerate() {
            let a = x ^ xp as usize;
            let bit = 1u64 << (y ^ self.value[xp as usize]);
            if self.pairs[a] & bit != 0 {
                for &undo in &self.trail[..i] {
                    self.pairs[x ^ undo as usize] &= !(1u64 << (y ^ self.value[undo as usize]));
                }
                return Err(Prune::DdtOverflow);
            }
            self.pairs[a] |= bit;
        }
        self.value[x] = y;
        self.trail.push(x as u32);
        self.assigned |= 1 << x;
        self.used_out |= 1 << y;
        self.propagate(x, y);
        Ok(())
    }

    fn propagate(&mut self, x: usize, y: u32) {
        let n = self.n;
        let d = self.trail.len();
        let (done, rest) = self.blocked.split_at_mut(d * n);
        let prev = &done[(d - 1) * n..];
        let next = &mut rest[..n];
        let full = full_mask(n);
        let earlier = &self.trail[..d - 1];
        let mut dead = false;
        let mut reachable = 0u64;
        let mut open = full & !self.assigned;
        while open != 0 {
            let x2 = open.trailing_zeros() as usize;
            open &= open - 1;
            let mut b = prev[x2] | 1 << y;
            b |= xor_shift(self.pairs[x2 ^ x], y, self.m);
            // pairs new at this step, seen from another assigned input
            for &xp in earlier {
                let xpp = x2 ^ x ^ xp as usize;
                if self.assigned >> xpp & 1 == 1 {
                    b |= 1 << (y ^ self.value[xp as usize] ^ self.value[xpp]);
                }
            }
            next[x2] = b;
            dead |= b & full == full;
            reachable |= !b;
        }
        // every unused output must stay reachable from some unassigned input
        let unused = full & !self.used_out;
        self.dead = dead || reachable & unused != unused;
    }

    pub(crate) fn pop(&mut self) {
        let x = self.trail.pop().expect("pop on empty state") as usize;
        let y = self.value[x];
        for &xp in &self.trail {
            self.pairs[x ^ xp as usize] &= !(1u64 << (y ^ self.value[xp as usize]));
        }
        self.value[x] = UNASSIGNED;
        self.assigned &= !(1 << x);
        self.used_out &= !(1 << y);
        self.dead = false;
    }

    /// The input to branch on next, if any is left.
    fn next_input(&self, order: InputOrder, reductions: &Reductions) -> Option<usize> {
        let free = full_mask(self.n) & !self.assigned;
        if free == 0 {
            return None;
        }
        for x in 0..2 {
            if free >> x & 1 == 1 && reductions.forced(x).is_some() {
                return Some(x);
            }
        }
        match order {
            InputOrder::Ascending => Some(free.trailing_zeros() as usize),
            InputOrder::FewestOptions => {
                let mut best = (u32::MAX, 0);
                let mut rest = free;
                while rest != 0 {
                    let x = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    let options = (!self.blocked(x) & full_mask(self.n)).count_ones();
                    if options < best.0 {
                        best = (options, x);
                    }
                }
                Some(best.1)
            }
        }
    }

    /// Outputs offered to `x` before and after pruning.
    fn candidates(&self, x: usize, reductions: &Reductions) -> (u64, u64) {
        let tried = match reductions.forced(x) {
            Some(y) => 1 << y,
            None => full_mask(self.n),
        };
        (tried, tried & !self.blocked(x))
    }

    fn table(&self) -> Vec<u32> {
        debug_assert!(self.is_complete());
        self.value.clone()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Flow {
    Continue,
    Found,
    Stop,
}

struct Control {
    budget: Option<u64>,
    spent: AtomicU64,
    over_budget: AtomicBool,
    /// Lowest subtree index holding a solution so far.
    first_found: AtomicUsize,
}

struct Worker<'a> {
    ctl: &'a Control,
    reductions: Reductions,
    order: InputOrder,
    index: usize,
    pending: u64,
    stats: SearchStats,
}

impl Worker<'_> {
    fn interrupted(&self) -> bool {
        self.ctl.over_budget.load(Ordering::Relaxed) || self.ctl.first_found.load(Ordering::Relaxed) < self.index
    }

    fn flush(&mut self) {
        if let Some(b) = self.ctl.budget {
            let total = self.ctl.spent.fetch_add(self.pending, Ordering::Relaxed) + self.pending;
            if total > b {
                self.ctl.over_budget.store(true, Ordering::Relaxed);
            }
        }
        self.pending = 0;
    }

    fn dfs(&mut self, st: &mut State) -> Flow {
        let Some(x) = st.next_input(self.order, &self.reductions) else {
            return Flow::Found;
        };
        let (tried, mut open) = st.candidates(x, &self.reductions);
        self.stats.count_rejected(st, tried, open);
        while open != 0 {
            let y = open.trailing_zeros();
            open &= open - 1;
            st.try_assign(x, y).expect("candidate passed the blocked set");
            self.stats.nodes += 1;
            self.pending += 1;
            if self.pending == FLUSH_EVERY {
                self.flush();
                if self.interrupted() {
                    return Flow::Stop;
                }
            }
            if st.is_dead() {
                self.stats.lookahead += 1;
                st.pop();
                continue;
            }
            match self.dfs(st) {
                Flow::Continue => st.pop(),
                other => return other,
            }
        }
        Flow::Continue
    }
}

/// Collects every partial assignment of the given depth in DFS order.
fn prefixes(
    st: &mut State,
    cfg: &SearchConfig,
    depth: usize,
    stats: &mut SearchStats,
    out: &mut Vec<Vec<(u32, u32)>>,
) {
    let next = st.next_input(cfg.order, &cfg.reductions);
    let Some(x) = next.filter(|_| st.depth() < depth) else {
        out.push(st.assignments());
        return;
    };
    let (tried, mut open) = st.candidates(x, &cfg.reductions);
    stats.count_rejected(st, tried, open);
    while open != 0 {
        let y = open.trailing_zeros();
        open &= open - 1;
        st.try_assign(x, y).expect("candidate passed the blocked set");
        stats.nodes += 1;
        if st.is_dead() {
            stats.lookahead += 1;
        } else {
            prefixes(st, cfg, depth, stats, out);
        }
        st.pop();
    }
}

fn run(cfg: &SearchConfig) -> Result<SearchOutcome> {
    let m = cfg.m;
    if !(2..=MAX_SEARCH_DIM).contains(&m) {
        return Err(Error::range("search dimension", m as u64, format!("2..={MAX_SEARCH_DIM}")));
    }
    if m > MAX_UNBUDGETED_DIM && cfg.node_budget.is_none() {
        return Err(Error::domain(format!("m = {m} can only be searched with a node budget")));
    }
    let start = Instant::now();
    let mut stats = SearchStats::default();
    let split = cfg.reductions.fixed_levels() + 2;
    let mut parts = Vec::new();
    prefixes(&mut State::new(m), cfg, split, &mut stats, &mut parts);

    let ctl = Control {
        budget: cfg.node_budget,
        spent: AtomicU64::new(stats.nodes),
        over_budget: AtomicBool::new(cfg.node_budget.is_some_and(|b| stats.nodes > b)),
        first_found: AtomicUsize::new(usize::MAX),
    };
    let work = |(index, prefix): (usize, &Vec<(u32, u32)>)| -> (SearchStats, Option<Vec<u32>>) {
        let mut st = State::new(m);
        for &(x, y) in prefix {
            st.try_assign(x as usize, y).expect("prefix was valid when generated");
        }
        let mut w = Worker {
            ctl: &ctl,
            reductions: cfg.reductions,
            order: cfg.order,
            index,
            pending: 0,
            stats: SearchStats::default(),
        };
        if w.interrupted() {
            return (w.stats, None);
        }
        let flow = w.dfs(&mut st);
        w.flush();
        let found = (flow == Flow::Found).then(|| {
            ctl.first_found.fetch_min(index, Ordering::Relaxed);
            st.table()
        });
        (w.stats, found)
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers.max(1))
        .build()
        .map_err(|e| Error::domain(format!("cannot start worker pool: {e}")))?;
    let results: Vec<(SearchStats, Option<Vec<u32>>)> = pool.install(|| {
        use rayon::prelude::*;
        parts.par_iter().enumerate().map(work).collect()
    });

    let mut solution = None;
    for (s, found) in &results {
        stats.absorb(s);
        if solution.is_none() {
            solution = found.clone();
        }
    }
    stats.wall_time = start.elapsed();

    let result = match solution {
        Some(table) => SearchResult::Found(revalidate(table)?),
        None if cfg.node_budget.is_some_and(|b| stats.nodes > b) => SearchResult::BudgetExceeded,
        None => SearchResult::ExhaustedNoSolution,
    };
    Ok(SearchOutcome { result, stats })
}

fn revalidate(table: Vec<u32>) -> Result<VectFn> {
    let f = VectFn::new(table)?;
    if !f.is_permutation() || !f.is_apn() {
        return Err(Error::TheoremContradiction {
            theorem: "search solutions are APN permutations".into(),
            witness: f.to_text(&[]).trim_end().to_string(),
        });
    }
    Ok(f)
}
