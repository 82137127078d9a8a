//! Letter-reuse poset over the positions of a word.
//!
//! Positions `j` and `k` are related when they are closer than `n` and
//! `a_j < a_k`. Any labelling that is strictly increasing along this
//! relation keeps every length-`n` window order-isomorphic, so the fewest
//! letters such a relabelling can use is the number of elements in a longest
//! chain. Labelling each position by the length of the longest chain ending
//! there attains that bound.

use std::fmt::Write as _;

use serde::Serialize;

use crate::perm::{check_window_len, PermWord};
use crate::{Error, Result};

/// Largest word accepted by the closure-based queries ([`is_graded`],
/// [`maximal_chain_extremes`]), which need quadratic memory.
pub const CLOSURE_MAX_NODES: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PosetDag {
    pub node_count: usize,
    pub cyclic: bool,
    /// Generator pairs `(j, k)`, 1-based positions with `a_j < a_k`, sorted.
    pub edges: Vec<(usize, usize)>,
    /// Elements in a longest chain ending at each position.
    pub heights: Vec<usize>,
    pub height: usize,
}

impl PosetDag {
    /// Generator predecessors of each position (0-based).
    fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut preds = vec![Vec::new(); self.node_count];
        for &(j, k) in &self.edges {
            preds[k - 1].push(j - 1);
        }
        preds
    }

    /// One `"j k"` line per generator pair.
    pub fn edge_list(&self) -> String {
        let mut out = String::new();
        for (j, k) in &self.edges {
            let _ = writeln!(out, "{j} {k}");
        }
        out
    }
}

pub fn build_poset(w: &PermWord, n: usize, cyclic: bool) -> Result<PosetDag> {
    let a = w.letters();
    let len = a.len();
    check_window_len(len, n)?;

    let mut edges = Vec::with_capacity(len * n.saturating_sub(1));
    for p in 0..len {
        for d in 1..n {
            let q = p + d;
            let q = if q < len {
                q
            } else if cyclic {
                q % len
            } else {
                break;
            };
            if q == p {
                continue;
            }
            edges.push(if a[p] < a[q] {
                (p + 1, q + 1)
            } else {
                (q + 1, p + 1)
            });
        }
    }
    edges.sort_unstable();
    edges.dedup();

    let mut dag = PosetDag {
        node_count: len,
        cyclic,
        edges,
        heights: vec![1; len],
        height: 0,
    };
    let preds = dag.predecessors();
    let mut by_letter: Vec<usize> = (0..len).collect();
    by_letter.sort_unstable_by_key(|&p| a[p]);
    for &k in &by_letter {
        if let Some(h) = preds[k].iter().map(|&j| dag.heights[j]).max() {
            dag.heights[k] = h + 1;
        }
    }
    dag.height = dag.heights.iter().copied().max().unwrap_or(0);
    Ok(dag)
}

/// Relabels `w` over `{1, ..., height}` keeping every length-`n` window's
/// pattern.
pub fn relabel_min(w: &PermWord, n: usize) -> Result<Vec<u32>> {
    Ok(build_poset(w, n, false)?
        .heights
        .into_iter()
        .map(|h| h as u32)
        .collect())
}

/// Lower bound on the alphabet of the greedy word: the first steps are
/// forced to introduce new letters.
pub fn alphabet_lower_bound(n: usize) -> usize {
    (2 * n).saturating_sub(2)
}

/// Strict down-sets as bitsets, plus the topological order used.
fn down_sets(dag: &PosetDag, a: &[u32]) -> Result<(Vec<Vec<u64>>, Vec<usize>)> {
    let len = dag.node_count;
    if len > CLOSURE_MAX_NODES {
        return Err(Error::Capacity {
            what: "poset size",
            requested: len,
            limit: CLOSURE_MAX_NODES,
        });
    }
    let words = len.div_ceil(64);
    let preds = dag.predecessors();
    let mut order: Vec<usize> = (0..len).collect();
    order.sort_unstable_by_key(|&p| a[p]);
    let mut below = vec![vec![0u64; words]; len];
    for &k in &order {
        let mut acc = vec![0u64; words];
        for &j in &preds[k] {
            for (x, y) in acc.iter_mut().zip(&below[j]) {
                *x |= y;
            }
            acc[j / 64] |= 1 << (j % 64);
        }
        below[k] = acc;
    }
    Ok((below, order))
}

/// Cover relations `(j, k)` (1-based) of the transitive closure.
pub fn hasse_edges(dag: &PosetDag, w: &PermWord) -> Result<Vec<(usize, usize)>> {
    check_same_word(dag, w)?;
    let (below, _) = down_sets(dag, w.letters())?;
    let preds = dag.predecessors();
    let mut covers = Vec::new();
    for &(j, k) in &dag.edges {
        let (j0, k0) = (j - 1, k - 1);
        let implied = preds[k0]
            .iter()
            .any(|&i| i != j0 && below[i][j0 / 64] & (1 << (j0 % 64)) != 0);
        if !implied {
            covers.push((j, k));
        }
    }
    Ok(covers)
}

/// Whether the poset admits a rank function, i.e. `rank(k) = rank(j) + 1`
/// for every cover `j < k`.
pub fn is_graded(dag: &PosetDag, w: &PermWord) -> Result<bool> {
    let covers = hasse_edges(dag, w)?;
    let len = dag.node_count;
    let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); len];
    for &(j, k) in &covers {
        adj[j - 1].push((k - 1, 1));
        adj[k - 1].push((j - 1, -1));
    }
    let mut rank: Vec<Option<i64>> = vec![None; len];
    for root in 0..len {
        if rank[root].is_some() {
            continue;
        }
        rank[root] = Some(0);
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            let ru = rank[u].unwrap();
            for &(v, delta) in &adj[u] {
                match rank[v] {
                    None => {
                        rank[v] = Some(ru + delta);
                        stack.push(v);
                    }
                    Some(rv) if rv != ru + delta => return Ok(false),
                    Some(_) => {}
                }
            }
        }
    }
    Ok(true)
}

/// A shortest and a longest maximal chain, as 1-based positions from a
/// minimal to a maximal element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainExtremes {
    pub shortest: Vec<usize>,
    pub longest: Vec<usize>,
}

pub fn maximal_chain_extremes(dag: &PosetDag, w: &PermWord) -> Result<ChainExtremes> {
    let covers = hasse_edges(dag, w)?;
    let len = dag.node_count;
    let mut lower = vec![Vec::new(); len];
    let mut has_upper = vec![false; len];
    for &(j, k) in &covers {
        lower[k - 1].push(j - 1);
        has_upper[j - 1] = true;
    }
    let mut order: Vec<usize> = (0..len).collect();
    order.sort_unstable_by_key(|&p| w.letters()[p]);

    // (length, back-pointer) of the shortest / longest saturated chain from a
    // minimal element up to each node
    let mut short: Vec<(usize, Option<usize>)> = vec![(1, None); len];
    let mut long: Vec<(usize, Option<usize>)> = vec![(1, None); len];
    for &k in &order {
        if let Some(&j) = lower[k].iter().min_by_key(|&&j| (short[j].0, j)) {
            short[k] = (short[j].0 + 1, Some(j));
        }
        if let Some(&j) = lower[k]
            .iter()
            .max_by_key(|&&j| (long[j].0, std::cmp::Reverse(j)))
        {
            long[k] = (long[j].0 + 1, Some(j));
        }
    }
    let tops = (0..len).filter(|&p| !has_upper[p]);
    let walk = |table: &[(usize, Option<usize>)], top: usize| {
        let mut chain = vec![top + 1];
        let mut cur = top;
        while let Some(prev) = table[cur].1 {
            chain.push(prev + 1);
            cur = prev;
        }
        chain.reverse();
        chain
    };
    let s_top = tops.clone().min_by_key(|&p| (short[p].0, p)).unwrap_or(0);
    let l_top = tops
        .max_by_key(|&p| (long[p].0, std::cmp::Reverse(p)))
        .unwrap_or(0);
    Ok(ChainExtremes {
        shortest: walk(&short, s_top),
        longest: walk(&long, l_top),
    })
}

fn check_same_word(dag: &PosetDag, w: &PermWord) -> Result<()> {
    if dag.node_count != w.len() {
        return Err(Error::invalid("poset and word have different lengths"));
    }
    Ok(())
}
