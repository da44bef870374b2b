//! Aggregate-cost checks by negative path / negative cycle detection.
//!
//! Each product edge carries the slack `d - ed(transition)` with
//! denominators cleared; a word of the input type violates the bound iff
//! its run is a source-to-target path of negative total weight. Such a
//! path exists iff either Bellman-Ford leaves a target at negative
//! distance, or a negative cycle sits on some source-to-target path.

use std::collections::{HashMap, VecDeque};

use num_rational::Ratio;

use crate::alphabet::Sym;
use crate::automata::{Dfa, Ft, LookaheadFt};
use crate::error::{Error, Result};

/// Outcome of an aggregate-cost check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CostVerdict {
    Within,
    /// A word of the input type whose aggregate cost exceeds the bound.
    /// `pumped` is set when the witness repeats a negative cycle.
    Exceeds {
        witness: String,
        pumped: bool,
    },
}

impl CostVerdict {
    pub fn is_within(&self) -> bool {
        matches!(self, CostVerdict::Within)
    }
}

#[derive(Debug, Clone, Copy)]
struct Edge {
    from: usize,
    to: usize,
    weight: i64,
    label: Sym,
}

#[derive(Debug, Default)]
struct WeightedGraph {
    n: usize,
    edges: Vec<Edge>,
    sources: Vec<usize>,
    targets: Vec<bool>,
}

impl WeightedGraph {
    fn adjacency(&self, keep: &[bool]) -> Vec<Vec<Edge>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            if keep[e.from] && keep[e.to] {
                adj[e.from].push(*e);
            }
        }
        adj
    }

    fn relevant(&self) -> Vec<bool> {
        let mut fwd = vec![false; self.n];
        let mut stack = self.sources.clone();
        for &s in &self.sources {
            fwd[s] = true;
        }
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        let mut back: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for e in &self.edges {
            out[e.from].push(e.to);
            back[e.to].push(e.from);
        }
        while let Some(v) = stack.pop() {
            for &w in &out[v] {
                if !fwd[w] {
                    fwd[w] = true;
                    stack.push(w);
                }
            }
        }
        let mut bwd = self.targets.clone();
        let mut stack: Vec<usize> = (0..self.n).filter(|&v| self.targets[v]).collect();
        while let Some(v) = stack.pop() {
            for &u in &back[v] {
                if !bwd[u] {
                    bwd[u] = true;
                    stack.push(u);
                }
            }
        }
        (0..self.n).map(|v| fwd[v] && bwd[v]).collect()
    }

    /// BFS path (edge list) from any vertex in `from` to a vertex satisfying `goal`.
    fn bfs_path(adj: &[Vec<Edge>], from: &[usize], goal: impl Fn(usize) -> bool) -> Option<Vec<Edge>> {
        let mut pred: Vec<Option<Edge>> = vec![None; adj.len()];
        let mut seen = vec![false; adj.len()];
        let mut queue = VecDeque::new();
        for &s in from {
            if !seen[s] {
                seen[s] = true;
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            if goal(v) {
                let mut path = Vec::new();
                let mut cur = v;
                while let Some(e) = pred[cur] {
                    path.push(e);
                    cur = e.from;
                }
                path.reverse();
                return Some(path);
            }
            for e in &adj[v] {
                if !seen[e.to] {
                    seen[e.to] = true;
                    pred[e.to] = Some(*e);
                    queue.push_back(e.to);
                }
            }
        }
        None
    }

    /// Labels of a source-to-target path whose weight plus `credit` is
    /// negative, if one exists.
    fn negative_run(&self, credit: i64) -> Option<(Vec<Sym>, bool)> {
        let keep = self.relevant();
        let adj = self.adjacency(&keep);
        let sources: Vec<usize> = self.sources.iter().copied().filter(|&s| keep[s]).collect();
        if sources.is_empty() {
            return None;
        }
        let n_keep = keep.iter().filter(|&&k| k).count();
        let mut dist: Vec<Option<i64>> = vec![None; self.n];
        let mut pred: Vec<Option<Edge>> = vec![None; self.n];
        for &s in &sources {
            dist[s] = Some(0);
        }
        let mut last_relaxed = None;
        for _ in 0..=n_keep {
            last_relaxed = None;
            for v in 0..self.n {
                let Some(dv) = dist[v] else { continue };
                for e in &adj[v] {
                    let cand = dv + e.weight;
                    if dist[e.to].is_none_or(|d| cand < d) {
                        dist[e.to] = Some(cand);
                        pred[e.to] = Some(*e);
                        last_relaxed = Some(e.to);
                    }
                }
            }
            if last_relaxed.is_none() {
                break;
            }
        }

        if let Some(v) = last_relaxed {
            // still relaxing after |V| rounds: walk back onto the cycle
            let mut x = v;
            for _ in 0..n_keep {
                x = pred[x].expect("relaxed vertices have predecessors").from;
            }
            let mut cycle = Vec::new();
            let mut cur = x;
            loop {
                let e = pred[cur].expect("cycle vertices have predecessors");
                cycle.push(e);
                cur = e.from;
                if cur == x {
                    break;
                }
            }
            cycle.reverse();
            let prefix = Self::bfs_path(&adj, &sources, |u| u == x).expect("x is reachable");
            let suffix = Self::bfs_path(&adj, &[x], |u| self.targets[u]).expect("x is co-reachable");
            let w = |p: &[Edge]| p.iter().map(|e| e.weight).sum::<i64>();
            let (wp, wc, ws) = (w(&prefix), w(&cycle), w(&suffix));
            debug_assert!(wc < 0);
            let rest = wp + ws + credit;
            let reps = if rest < 0 { 0 } else { rest / (-wc) + 1 };
            let mut word: Vec<Sym> = prefix.iter().map(|e| e.label).collect();
            for _ in 0..reps {
                word.extend(cycle.iter().map(|e| e.label));
            }
            word.extend(suffix.iter().map(|e| e.label));
            return Some((word, reps > 0));
        }

        let worst =
            (0..self.n).filter(|&v| self.targets[v] && keep[v]).filter_map(|v| dist[v].map(|d| (d, v))).min()?;
        if worst.0 + credit >= 0 {
            return None;
        }
        let mut word = Vec::new();
        let mut cur = worst.1;
        while let Some(e) = pred[cur] {
            word.push(e.label);
            cur = e.from;
        }
        word.reverse();
        Some((word, false))
    }
}

/// Interns product states reachable from the sources.
struct Explorer<K> {
    ids: HashMap<K, usize>,
    states: Vec<K>,
}

impl<K: Clone + Eq + std::hash::Hash> Explorer<K> {
    fn new() -> Self {
        Explorer { ids: HashMap::new(), states: Vec::new() }
    }

    fn intern(&mut self, k: K) -> usize {
        if let Some(&id) = self.ids.get(&k) {
            return id;
        }
        let id = self.states.len();
        self.ids.insert(k.clone(), id);
        self.states.push(k);
        id
    }
}

fn positive(d: Ratio<i64>) -> Result<(i64, i64)> {
    if *d.numer() <= 0 {
        return Err(Error::InvalidInput(format!("distance bound must be positive, got {d}")));
    }
    Ok((*d.numer(), *d.denom()))
}

fn plain_graph(p: &Dfa, t: &Ft, weight: impl Fn(usize) -> i64) -> Result<WeightedGraph> {
    if p.alphabet() != t.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let mut ex = Explorer::new();
    let mut g = WeightedGraph::default();
    let s = ex.intern((p.init(), t.init()));
    g.sources.push(s);
    let mut i = 0;
    while i < ex.states.len() {
        let (ps, ts) = ex.states[i];
        for a in 0..p.alphabet().len() {
            let to = ex.intern((p.step(ps, a), t.step(ts, a)));
            g.edges.push(Edge { from: i, to, weight: weight(t.transition_cost(ts, a)), label: a });
        }
        i += 1;
    }
    g.n = ex.states.len();
    g.targets = ex.states.iter().map(|&(ps, _)| p.is_final(ps)).collect();
    Ok(g)
}

fn lookahead_graph(p: &Dfa, t: &LookaheadFt, weight: impl Fn(usize) -> i64) -> Result<WeightedGraph> {
    if p.alphabet() != t.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let r = t.lookahead();
    let mut ex = Explorer::new();
    let mut g = WeightedGraph::default();
    for rho in 0..r.num_states() {
        let s = ex.intern((p.init(), t.init(), rho));
        g.sources.push(s);
    }
    let mut i = 0;
    while i < ex.states.len() {
        let (ps, ts, rho) = ex.states[i];
        for a in 0..p.alphabet().len() {
            // the symbol is read with the lookahead state of the remaining suffix
            for rho_next in (0..r.num_states()).filter(|&x| r.step(x, a) == rho) {
                let to = ex.intern((p.step(ps, a), t.step(ts, rho_next, a), rho_next));
                let cost = t.transition_cost(ts, rho_next, a);
                g.edges.push(Edge { from: i, to, weight: weight(cost), label: a });
            }
        }
        i += 1;
    }
    g.n = ex.states.len();
    g.targets = ex.states.iter().map(|&(ps, _, rho)| p.is_final(ps) && rho == r.init()).collect();
    Ok(g)
}

fn verdict(p: &Dfa, found: Option<(Vec<Sym>, bool)>) -> CostVerdict {
    match found {
        None => CostVerdict::Within,
        Some((w, pumped)) => CostVerdict::Exceeds { witness: p.alphabet().decode(&w), pumped },
    }
}

/// Decides whether every word of `L(p)` has mean aggregate cost at most `d`
/// under `t`. The empty word satisfies every bound.
pub fn check_mean_aggregate(p: &Dfa, t: &Ft, d: Ratio<i64>) -> Result<CostVerdict> {
    let (num, den) = positive(d)?;
    let g = plain_graph(p, t, |ed| num - den * ed as i64)?;
    Ok(verdict(p, g.negative_run(0)))
}

/// Decides whether every word of `L(p)` has aggregate cost at most `bound`.
pub fn check_total_aggregate(p: &Dfa, t: &Ft, bound: u64) -> Result<CostVerdict> {
    let g = plain_graph(p, t, |ed| -(ed as i64))?;
    Ok(verdict(p, g.negative_run(bound as i64)))
}

/// [`check_mean_aggregate`] for transducers with lookahead.
pub fn check_mean_aggregate_lookahead(p: &Dfa, t: &LookaheadFt, d: Ratio<i64>) -> Result<CostVerdict> {
    let (num, den) = positive(d)?;
    let g = lookahead_graph(p, t, |ed| num - den * ed as i64)?;
    Ok(verdict(p, g.negative_run(0)))
}

/// [`check_total_aggregate`] for transducers with lookahead.
pub fn check_total_aggregate_lookahead(p: &Dfa, t: &LookaheadFt, bound: u64) -> Result<CostVerdict> {
    let g = lookahead_graph(p, t, |ed| -(ed as i64))?;
    Ok(verdict(p, g.negative_run(bound as i64)))
}
