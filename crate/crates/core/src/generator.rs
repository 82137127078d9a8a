//! The greedy construction of universal words and cycles for permutations.
//!
//! Starting from `12...(n-1)`, each step looks at the reduced suffix of the
//! last `n - 1` letters and appends its smallest extension whose length-`n`
//! pattern has not been produced yet. The step rewrites every letter of the
//! word (`x -> x + 1` for `x >= b`), so the letters themselves are never
//! stored during the run. Instead the positions are kept in a doubly linked
//! list sorted by value: appending `b` just below the current `i`-th
//! smallest suffix letter is an O(1) splice, and the integer letters are read
//! off the list once the run terminates.

use serde::Serialize;

use crate::perm::{all_perms, factorial, PermWord, ReducedPerm};
use crate::{Error, Result};

/// Default largest `n` accepted by [`generate_u_word`].
pub const DEFAULT_MAX_N: usize = 8;
/// Default largest `n` accepted by [`scan_starts`].
pub const DEFAULT_SCAN_MAX_N: usize = 6;
/// Largest `n` the pattern bookkeeping supports at all.
pub const HARD_MAX_N: usize = 12;

/// One greedy step.
///
/// `sigma` is the reduced window of the last `n` letters (absent before the
/// first extension), `sigma_prime` the reduced suffix of the last `n - 1`
/// letters and `occurrences` the number of times that suffix pattern has
/// occurred so far. The terminal step has no chosen index and no letter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<ReducedPerm>,
    pub sigma_prime: ReducedPerm,
    #[serde(rename = "J")]
    pub occurrences: usize,
    #[serde(rename = "i", skip_serializing_if = "Option::is_none")]
    pub chosen_i: Option<usize>,
    #[serde(rename = "b", skip_serializing_if = "Option::is_none")]
    pub appended_b: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenerationResult {
    pub n: usize,
    /// Length `n! + n - 1`, a permutation of `{1, ..., n! + n - 1}`.
    pub u_word: PermWord,
    /// Length `n!`.
    pub u_cycle: ReducedPerm,
    pub trace: Option<Vec<TraceStep>>,
}

/// Outcome of running the greedy rule from an arbitrary `(n-1)`-permutation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StartScanResult {
    pub start: ReducedPerm,
    pub terminal_word: PermWord,
    pub covered_count: usize,
    pub missing: Vec<ReducedPerm>,
    pub is_u_word: bool,
}

/// Builds the universal word for `n`-permutations with the default size guard.
pub fn generate_u_word(n: usize, with_trace: bool) -> Result<GenerationResult> {
    generate_u_word_with_max(n, with_trace, DEFAULT_MAX_N)
}

pub fn generate_u_word_with_max(
    n: usize,
    with_trace: bool,
    max_n: usize,
) -> Result<GenerationResult> {
    check_order(n, max_n)?;
    if n == 1 {
        return Ok(GenerationResult {
            n,
            u_word: PermWord::from_vec_unchecked(vec![1]),
            u_cycle: ReducedPerm::identity(1),
            trace: with_trace.then(Vec::new),
        });
    }
    let run = Greedy::new(n, &ReducedPerm::identity(n - 1), with_trace).run();
    let u_cycle = cycle_from_word(run.word.letters(), n);
    Ok(GenerationResult {
        n,
        u_word: run.word,
        u_cycle,
        trace: run.trace,
    })
}

/// Drops the last `n - 1` letters of a universal word and reduces the rest.
pub fn derive_u_cycle(u_word: &PermWord, n: usize) -> Result<ReducedPerm> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    let expected = factorial(n)
        .and_then(|f| f.checked_add(n - 1))
        .ok_or_else(|| Error::invalid(format!("n = {n} is too large")))?;
    if u_word.len() != expected {
        return Err(Error::invalid(format!(
            "a universal word for n = {n} has {expected} letters, got {}",
            u_word.len()
        )));
    }
    Ok(cycle_from_word(u_word.letters(), n))
}

fn cycle_from_word(letters: &[u32], n: usize) -> ReducedPerm {
    let head = PermWord::from_vec_unchecked(letters[..letters.len() - (n - 1)].to_vec());
    crate::perm::reduce(&head)
}

/// Runs the greedy rule from `start`, an `(n-1)`-permutation, and reports
/// which `n`-permutations the terminal word covers.
pub fn run_from_start(start: &ReducedPerm) -> Result<StartScanResult> {
    let n = start.order() + 1;
    check_order(n, HARD_MAX_N)?;
    if n < 2 {
        return Err(Error::invalid("start permutation must be nonempty"));
    }
    let run = Greedy::new(n, start, false).run();
    let missing: Vec<ReducedPerm> = all_perms(n)
        .filter(|p| !run.covered[lehmer_rank(p.letters())])
        .collect();
    let is_u_word = missing.is_empty() && Some(run.covered_count) == factorial(n);
    Ok(StartScanResult {
        start: start.clone(),
        terminal_word: run.word,
        covered_count: run.covered_count,
        missing,
        is_u_word,
    })
}

/// Runs the greedy rule from every `(n-1)`-permutation, in lexicographic
/// order of the starts.
pub fn scan_starts(n: usize) -> Result<Vec<StartScanResult>> {
    scan_starts_with_max(n, DEFAULT_SCAN_MAX_N)
}

pub fn scan_starts_with_max(n: usize, max_n: usize) -> Result<Vec<StartScanResult>> {
    check_order(n, max_n)?;
    if n < 2 {
        return Err(Error::invalid("start scans need n >= 2"));
    }
    all_perms(n - 1).map(|s| run_from_start(&s)).collect()
}

/// A window where a word departs from the greedy rule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Deviation {
    /// 1-based index of the window.
    pub window: usize,
    /// Extension index the word actually uses.
    pub taken: usize,
    /// Smallest extension index whose pattern was still uncovered.
    pub greedy: usize,
}

/// Replays a linear word against the greedy rule, starting from the
/// pattern of its first `n - 1` letters, and lists every window whose
/// extension index is not the smallest uncovered one. Windows repeating an
/// earlier pattern are reported with `greedy = n + 1` when every extension
/// was already covered.
pub fn greedy_deviations(word: &[u32], n: usize) -> Result<Vec<Deviation>> {
    check_order(n, HARD_MAX_N)?;
    if n < 2 {
        return Err(Error::invalid("greedy replay needs n >= 2"));
    }
    let sigma = crate::perm::windows(word, n, false)?;
    let mut covered = vec![false; factorial(n).unwrap()];
    let mut out = Vec::new();
    for (idx, s) in sigma.iter().enumerate() {
        let letters = s.letters();
        // the window is the extension of its own first n - 1 letters with
        // index equal to its last letter
        let taken = letters[n - 1] as usize;
        let mut candidate = vec![0u32; n];
        let head = crate::perm::reduce_letters(&letters[..n - 1])?;
        let greedy = (1..=n as u32)
            .find(|&i| {
                for (c, &x) in candidate.iter_mut().zip(head.letters()) {
                    *c = if x >= i { x + 1 } else { x };
                }
                candidate[n - 1] = i;
                !covered[lehmer_rank(&candidate)]
            })
            .map_or(n + 1, |i| i as usize);
        if taken != greedy {
            out.push(Deviation {
                window: idx + 1,
                taken,
                greedy,
            });
        }
        covered[lehmer_rank(letters)] = true;
    }
    Ok(out)
}

fn check_order(n: usize, max_n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    let limit = max_n.min(HARD_MAX_N);
    if n > limit {
        return Err(Error::Capacity {
            what: "permutation order",
            requested: n,
            limit,
        });
    }
    Ok(())
}

/// Lexicographic rank of a permutation of `{1, ..., m}`.
pub(crate) fn lehmer_rank(p: &[u32]) -> usize {
    let m = p.len();
    let mut rank = 0usize;
    for i in 0..m {
        let smaller_after = p[i + 1..].iter().filter(|&&x| x < p[i]).count();
        rank = rank * (m - i) + smaller_after;
    }
    rank
}

/// Positions of the working word kept in increasing order of their letters.
/// Node 0 is the sentinel; position `p` lives at node `p + 1`.
struct ValueOrder {
    next: Vec<usize>,
    prev: Vec<usize>,
}

impl ValueOrder {
    fn with_capacity(cap: usize) -> Self {
        let mut next = Vec::with_capacity(cap + 1);
        let mut prev = Vec::with_capacity(cap + 1);
        next.push(0);
        prev.push(0);
        ValueOrder { next, prev }
    }

    fn ensure(&mut self, pos: usize) {
        while self.next.len() <= pos + 1 {
            self.next.push(0);
            self.prev.push(0);
        }
    }

    fn insert_before(&mut self, anchor: usize, pos: usize) {
        self.ensure(pos);
        let a = anchor + 1;
        let node = pos + 1;
        let p = self.prev[a];
        self.next[p] = node;
        self.prev[node] = p;
        self.next[node] = a;
        self.prev[a] = node;
    }

    fn insert_after(&mut self, anchor: usize, pos: usize) {
        let after = self.next[anchor + 1];
        if after == 0 {
            self.push_max(pos);
        } else {
            self.insert_before(after - 1, pos);
        }
    }

    fn push_max(&mut self, pos: usize) {
        self.ensure(pos);
        let node = pos + 1;
        let last = self.prev[0];
        self.next[last] = node;
        self.prev[node] = last;
        self.next[node] = 0;
        self.prev[0] = node;
    }

    /// Letter of every position, `1..=len`.
    fn letters(&self, len: usize) -> Vec<u32> {
        let mut out = vec![0u32; len];
        let mut node = self.next[0];
        let mut value = 1;
        while node != 0 {
            out[node - 1] = value;
            value += 1;
            node = self.next[node];
        }
        out
    }
}

struct PendingStep {
    sigma: Option<Vec<u32>>,
    sigma_prime: Vec<u32>,
    occurrences: usize,
    chosen_i: Option<usize>,
}

struct Greedy {
    n: usize,
    order: ValueOrder,
    len: usize,
    suffix: Vec<u32>,
    covered: Vec<bool>,
    covered_count: usize,
    suffix_counts: Option<Vec<usize>>,
    steps: Vec<PendingStep>,
}

struct GreedyRun {
    word: PermWord,
    covered: Vec<bool>,
    covered_count: usize,
    trace: Option<Vec<TraceStep>>,
}

impl Greedy {
    fn new(n: usize, start: &ReducedPerm, with_trace: bool) -> Self {
        let m = n - 1;
        debug_assert_eq!(start.order(), m);
        let total = factorial(n).expect("n is bounded by HARD_MAX_N");
        let mut order = ValueOrder::with_capacity(total + m);
        let mut by_value = vec![0usize; m];
        for (pos, &v) in start.letters().iter().enumerate() {
            by_value[v as usize - 1] = pos;
        }
        for pos in by_value {
            order.push_max(pos);
        }
        Greedy {
            n,
            order,
            len: m,
            suffix: start.letters().to_vec(),
            covered: vec![false; total],
            covered_count: 0,
            suffix_counts: with_trace.then(|| vec![0; factorial(m).unwrap()]),
            steps: Vec::new(),
        }
    }

    fn run(mut self) -> GreedyRun {
        let n = self.n;
        let m = n - 1;
        let mut candidate = vec![0u32; n];
        let mut sigma: Option<Vec<u32>> = None;

        loop {
            let occurrences = match &mut self.suffix_counts {
                Some(counts) => {
                    let r = lehmer_rank(&self.suffix);
                    counts[r] += 1;
                    counts[r]
                }
                None => 0,
            };

            let mut chosen = None;
            for i in 1..=n as u32 {
                for (c, &x) in candidate.iter_mut().zip(&self.suffix) {
                    *c = if x >= i { x + 1 } else { x };
                }
                candidate[m] = i;
                let r = lehmer_rank(&candidate);
                if !self.covered[r] {
                    self.covered[r] = true;
                    chosen = Some(i);
                    break;
                }
            }

            if self.suffix_counts.is_some() {
                self.steps.push(PendingStep {
                    sigma: sigma.clone(),
                    sigma_prime: self.suffix.clone(),
                    occurrences,
                    chosen_i: chosen.map(|i| i as usize),
                });
            }

            let Some(i) = chosen else { break };
            self.covered_count += 1;
            debug_assert!(self.covered_count <= self.covered.len());

            // suffix letters sit at positions len - m .. len
            let base = self.len - m;
            let at_rank = |r: u32| base + self.suffix.iter().position(|&x| x == r).unwrap();
            if (i as usize) <= m {
                let anchor = at_rank(i);
                self.order.insert_before(anchor, self.len);
            } else {
                let anchor = at_rank(m as u32);
                self.order.insert_after(anchor, self.len);
            }
            self.len += 1;

            let first = candidate[0];
            for (s, &x) in self.suffix.iter_mut().zip(&candidate[1..]) {
                *s = if x > first { x - 1 } else { x };
            }
            if self.suffix_counts.is_some() {
                sigma = Some(candidate.clone());
            }
        }

        let letters = self.order.letters(self.len);
        let trace = self
            .suffix_counts
            .is_some()
            .then(|| finish_trace(&letters, m, std::mem::take(&mut self.steps)));
        GreedyRun {
            word: PermWord::from_vec_unchecked(letters),
            covered: self.covered,
            covered_count: self.covered_count,
            trace,
        }
    }
}

/// Fills in the appended letters. The letter appended at step `k` is the
/// rank of the new position's final letter among the first `k + n` letters.
fn finish_trace(letters: &[u32], m: usize, steps: Vec<PendingStep>) -> Vec<TraceStep> {
    let mut fenwick = vec![0u32; letters.len() + 1];
    let add = |f: &mut Vec<u32>, mut i: usize| {
        while i < f.len() {
            f[i] += 1;
            i += i & i.wrapping_neg();
        }
    };
    let count_le = |f: &Vec<u32>, mut i: usize| {
        let mut s = 0;
        while i > 0 {
            s += f[i];
            i -= i & i.wrapping_neg();
        }
        s
    };
    for &x in &letters[..m] {
        add(&mut fenwick, x as usize);
    }
    let mut appended = Vec::with_capacity(letters.len() - m);
    for &x in &letters[m..] {
        appended.push(count_le(&fenwick, x as usize) + 1);
        add(&mut fenwick, x as usize);
    }

    steps
        .into_iter()
        .enumerate()
        .map(|(k, s)| TraceStep {
            k,
            sigma: s.sigma.map(ReducedPerm::from_vec_unchecked),
            sigma_prime: ReducedPerm::from_vec_unchecked(s.sigma_prime),
            occurrences: s.occurrences,
            chosen_i: s.chosen_i,
            appended_b: s.chosen_i.map(|_| appended[k]),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{extend, reduce, windows};
    use std::collections::HashSet;

    /// Literal transcription of the rule: rewrite the whole word with every
    /// extension and compare patterns through fresh window reduction.
    fn naive_greedy(start: &[u32], n: usize) -> Vec<u32> {
        let mut word = PermWord::new(start.to_vec()).unwrap();
        let mut seen: HashSet<ReducedPerm> = HashSet::new();
        loop {
            let suffix = PermWord::new(word.letters()[word.len() - (n - 1)..].to_vec()).unwrap();
            let mut next = None;
            for i in 1..=n {
                let pattern = reduce(&extend(&suffix, i).unwrap());
                if !seen.contains(&pattern) {
                    let b = if i < n {
                        let mut s = suffix.letters().to_vec();
                        s.sort_unstable();
                        s[i - 1]
                    } else {
                        suffix.letters().iter().max().unwrap() + 1
                    };
                    let mut w: Vec<u32> = word
                        .letters()
                        .iter()
                        .map(|&x| if x >= b { x + 1 } else { x })
                        .collect();
                    w.push(b);
                    seen.insert(pattern);
                    next = Some(PermWord::new(w).unwrap());
                    break;
                }
            }
            match next {
                Some(w) => word = w,
                None => return word.into_inner(),
            }
        }
    }

    fn letters(r: &GenerationResult) -> &[u32] {
        r.u_word.letters()
    }

    #[test]
    fn n3_word_and_cycle() {
        let r = generate_u_word(3, false).unwrap();
        assert_eq!(letters(&r), [7, 8, 6, 1, 3, 2, 4, 5]);
        assert_eq!(r.u_cycle.letters(), [5, 6, 4, 1, 3, 2]);
        assert!(r.trace.is_none());
    }

    #[test]
    fn n2_word_and_cycle() {
        let r = generate_u_word(2, false).unwrap();
        assert_eq!(letters(&r), [3, 1, 2]);
        assert_eq!(r.u_cycle.letters(), [2, 1]);
    }

    #[test]
    fn n1_is_degenerate() {
        let r = generate_u_word(1, true).unwrap();
        assert_eq!(letters(&r), [1]);
        assert_eq!(r.u_cycle.letters(), [1]);
    }

    #[test]
    fn n4_word_and_cycle() {
        let r = generate_u_word(4, false).unwrap();
        assert_eq!(
            letters(&r),
            [
                25, 26, 27, 24, 23, 21, 22, 3, 20, 4, 2, 19, 1, 6, 9, 5, 10, 8, 7, 13, 11, 12, 15,
                14, 16, 17, 18
            ]
        );
        assert_eq!(
            r.u_cycle.letters(),
            [
                22, 23, 24, 21, 20, 18, 19, 3, 17, 4, 2, 16, 1, 6, 9, 5, 10, 8, 7, 13, 11, 12, 15,
                14
            ]
        );
    }

    #[test]
    fn deviations() {
        for n in 2..=6 {
            let r = generate_u_word(n, false).unwrap();
            assert!(greedy_deviations(r.u_word.letters(), n).unwrap().is_empty());
        }
        // a universal word for n = 4 that takes extension 3 at window 15
        // while extension 2 is still free
        let other = [
            25, 26, 27, 24, 23, 21, 22, 3, 20, 4, 2, 19, 1, 6, 7, 5, 11, 10, 8, 13, 9, 12, 15, 14,
            16, 17, 18,
        ];
        assert_eq!(
            greedy_deviations(&other, 4).unwrap(),
            vec![Deviation {
                window: 15,
                taken: 3,
                greedy: 2
            }]
        );
        // the failed start 21 for n = 3 follows the rule from its own start
        assert!(greedy_deviations(&[7, 6, 2, 3, 1, 5, 4], 3)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn matches_naive_rewrite() {
        for n in 2..=6 {
            let start: Vec<u32> = (1..n as u32).collect();
            assert_eq!(
                letters(&generate_u_word(n, false).unwrap()),
                naive_greedy(&start, n).as_slice(),
                "n = {n}"
            );
        }
    }

    #[test]
    fn matches_naive_rewrite_from_other_starts() {
        for n in 2..=5 {
            for s in all_perms(n - 1) {
                let fast = run_from_start(&s).unwrap();
                assert_eq!(
                    fast.terminal_word.letters(),
                    naive_greedy(s.letters(), n).as_slice()
                );
            }
        }
    }

    #[test]
    fn n3_trace() {
        let r = generate_u_word(3, true).unwrap();
        let trace = r.trace.unwrap();
        assert_eq!(trace.len(), 7);
        let chosen: Vec<_> = trace.iter().filter_map(|s| s.chosen_i).collect();
        assert_eq!(chosen, [1, 1, 2, 2, 3, 3]);
        let b: Vec<_> = trace.iter().filter_map(|s| s.appended_b).collect();
        assert_eq!(b, [1, 1, 2, 2, 4, 5]);
        let j: Vec<_> = trace.iter().map(|s| s.occurrences).collect();
        assert_eq!(j, [1, 1, 2, 2, 3, 3, 4]);
        assert!(trace[0].sigma.is_none());
        assert_eq!(trace[1].sigma.as_ref().unwrap().letters(), [2, 3, 1]);
        assert_eq!(trace[6].sigma.as_ref().unwrap().letters(), [1, 2, 3]);
        assert_eq!(trace[6].chosen_i, None);
    }

    #[test]
    fn trace_follows_occurrence_rule() {
        for n in 2..=6 {
            let r = generate_u_word(n, true).unwrap();
            let trace = r.trace.unwrap();
            assert_eq!(trace.len(), factorial(n).unwrap() + 1);
            for step in &trace[..trace.len() - 1] {
                assert_eq!(step.chosen_i, Some(step.occurrences));
            }
            assert_eq!(trace.last().unwrap().occurrences, n + 1);
            // replaying the appended letters reproduces the word
            let mut w = PermWord::new((1..n as u32).collect()).unwrap();
            for step in &trace[..trace.len() - 1] {
                let b = step.appended_b.unwrap();
                let mut v: Vec<u32> = w
                    .letters()
                    .iter()
                    .map(|&x| if x >= b { x + 1 } else { x })
                    .collect();
                v.push(b);
                w = PermWord::new(v).unwrap();
            }
            assert_eq!(w, r.u_word);
        }
    }

    #[test]
    fn derive_cycle() {
        let w = PermWord::new(vec![7, 8, 6, 1, 3, 2, 4, 5]).unwrap();
        assert_eq!(derive_u_cycle(&w, 3).unwrap().letters(), [5, 6, 4, 1, 3, 2]);
        let w2 = PermWord::new(vec![3, 1, 2]).unwrap();
        assert_eq!(derive_u_cycle(&w2, 2).unwrap().letters(), [2, 1]);
        assert!(derive_u_cycle(&w, 4).is_err());
        assert!(derive_u_cycle(&w, 0).is_err());
    }

    #[test]
    fn capacity_guard() {
        assert!(matches!(
            generate_u_word(9, false),
            Err(Error::Capacity { .. })
        ));
        assert!(matches!(
            generate_u_word(0, false),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(scan_starts(7), Err(Error::Capacity { .. })));
        assert!(matches!(
            generate_u_word_with_max(13, false, 20),
            Err(Error::Capacity {
                limit: HARD_MAX_N,
                ..
            })
        ));
    }

    #[test]
    fn start_21_for_n3() {
        let s = ReducedPerm::new(vec![2, 1]).unwrap();
        let r = run_from_start(&s).unwrap();
        assert_eq!(r.terminal_word.letters(), [7, 6, 2, 3, 1, 5, 4]);
        assert_eq!(r.covered_count, 5);
        assert_eq!(r.missing, vec![ReducedPerm::identity(3)]);
        assert!(!r.is_u_word);
    }

    #[test]
    fn scan_n4_only_identity_succeeds() {
        let results = scan_starts(4).unwrap();
        assert_eq!(results.len(), 6);
        let ok: Vec<_> = results.iter().filter(|r| r.is_u_word).collect();
        assert_eq!(ok.len(), 1);
        assert!(ok[0].start.is_identity());
    }

    #[test]
    fn lehmer_rank_is_lex_index() {
        for (idx, p) in all_perms(5).enumerate() {
            assert_eq!(lehmer_rank(p.letters()), idx);
        }
    }

    #[test]
    fn generated_windows_are_distinct() {
        let r = generate_u_word(5, false).unwrap();
        let ws = windows(r.u_word.letters(), 5, false).unwrap();
        let set: HashSet<_> = ws.iter().collect();
        assert_eq!(set.len(), ws.len());
    }
}
