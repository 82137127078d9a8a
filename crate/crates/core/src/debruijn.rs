//! De Bruijn sequences: the greedy "prefer smallest" construction and the
//! concatenation of Lyndon words, plus a cyclic coverage check.

use std::fmt;

use serde::Serialize;

use crate::{Error, Result};

/// Default limit on `k^n`.
pub const DEFAULT_MAX_LETTERS: usize = 1 << 24;

/// A word over `{0, ..., k-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AlphaWord {
    pub letters: Vec<u32>,
    pub k: u32,
}

impl AlphaWord {
    pub fn new(letters: Vec<u32>, k: u32) -> Result<Self> {
        if let Some(bad) = letters.iter().find(|&&x| x >= k) {
            return Err(Error::invalid(format!("letter {bad} outside 0..{k}")));
        }
        Ok(AlphaWord { letters, k })
    }

    /// Parses a digit string (`"200102112"`) or whitespace-separated
    /// integers.
    pub fn parse(s: &str, k: u32) -> Result<Self> {
        let s = s.trim();
        let letters = if s.contains(char::is_whitespace) {
            s.split_whitespace()
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|e| Error::invalid(format!("{t:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::invalid(format!("{c:?} is not a digit")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        AlphaWord::new(letters, k)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

/// Digits for `k <= 10`, space-separated integers otherwise.
impl fmt::Display for AlphaWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.k <= 10 { "" } else { " " };
        for (i, x) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

fn check_params(k: u32, n: usize, max_letters: usize) -> Result<usize> {
    if k < 2 {
        return Err(Error::invalid("alphabet size k must be at least 2"));
    }
    if n < 1 {
        return Err(Error::invalid("factor length n must be at least 1"));
    }
    let total = u32::try_from(n)
        .ok()
        .and_then(|n| (k as usize).checked_pow(n))
        .filter(|&t| t <= max_letters);
    total.ok_or(Error::Capacity {
        what: "sequence length k^n",
        requested: (k as usize).saturating_pow(n.min(64) as u32),
        limit: max_letters,
    })
}

/// Greedy construction with the default length budget.
pub fn martin(k: u32, n: usize) -> Result<AlphaWord> {
    martin_with_max(k, n, DEFAULT_MAX_LETTERS)
}

pub fn martin_with_max(k: u32, n: usize, max_letters: usize) -> Result<AlphaWord> {
    let run = martin_run(k, n, max_letters)?;
    let keep = run.len() - (n - 1);
    Ok(AlphaWord {
        letters: run[..keep].to_vec(),
        k,
    })
}

/// The greedy run before the last `n - 1` letters are dropped: start from
/// `(k-1)^(n-1)` and append the smallest letter that creates a new factor
/// of length `n`.
pub fn martin_run(k: u32, n: usize, max_letters: usize) -> Result<Vec<u32>> {
    let total = check_params(k, n, max_letters)?;
    let k_us = k as usize;
    // factors are base-k integers; `high` strips the oldest digit
    let high = total / k_us;
    let mut seen = vec![false; total];
    let mut word = vec![k - 1; n - 1];
    word.reserve(total);
    let mut tail = word.iter().fold(0usize, |acc, &x| acc * k_us + x as usize);
    loop {
        let base = (tail % high) * k_us;
        let Some(c) = (0..k_us).find(|&c| !seen[base + c]) else {
            break;
        };
        seen[base + c] = true;
        word.push(c as u32);
        tail = base + c;
    }
    Ok(word)
}

/// Lyndon words over `{0, ..., k-1}` of length at most `n`, in
/// lexicographic order.
pub fn lyndon_words(k: u32, n: usize) -> LyndonWords {
    LyndonWords {
        k,
        n,
        w: if n == 0 { Vec::new() } else { vec![-1] },
    }
}

pub struct LyndonWords {
    k: u32,
    n: usize,
    w: Vec<i64>,
}

impl Iterator for LyndonWords {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let last = self.w.last_mut()?;
        *last += 1;
        let out: Vec<u32> = self.w.iter().map(|&x| x as u32).collect();
        // successor: repeat the word periodically up to length n, then strip
        // trailing maximal letters
        let m = self.w.len();
        while self.w.len() < self.n {
            let x = self.w[self.w.len() - m];
            self.w.push(x);
        }
        while self.w.last() == Some(&(self.k as i64 - 1)) {
            self.w.pop();
        }
        Some(out)
    }
}

pub fn lyndon_concat(k: u32, n: usize) -> Result<AlphaWord> {
    lyndon_concat_with_max(k, n, DEFAULT_MAX_LETTERS)
}

pub fn lyndon_concat_with_max(k: u32, n: usize, max_letters: usize) -> Result<AlphaWord> {
    let total = check_params(k, n, max_letters)?;
    let mut letters = Vec::with_capacity(total);
    for w in lyndon_words(k, n).filter(|w| n.is_multiple_of(w.len())) {
        letters.extend(w);
    }
    Ok(AlphaWord { letters, k })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeBruijnReport {
    pub k: u32,
    pub n: usize,
    pub length: usize,
    pub missing: Vec<Vec<u32>>,
    /// Factors with their 1-based cyclic start positions.
    pub duplicated: Vec<(Vec<u32>, Vec<usize>)>,
    pub verdict: bool,
}

/// Checks that every length-`n` word over `k` letters occurs exactly once
/// as a cyclic factor of `w`.
pub fn is_de_bruijn(w: &AlphaWord, k: u32, n: usize) -> Result<DeBruijnReport> {
    let total = check_params(k, n, DEFAULT_MAX_LETTERS)?;
    if let Some(bad) = w.letters.iter().find(|&&x| x >= k) {
        return Err(Error::invalid(format!("letter {bad} outside 0..{k}")));
    }
    let len = w.letters.len();
    let mut positions: Vec<Vec<usize>> = vec![Vec::new(); total];
    if len > 0 {
        for start in 0..len {
            let code = (0..n).fold(0usize, |acc, j| {
                acc * k as usize + w.letters[(start + j) % len] as usize
            });
            positions[code].push(start + 1);
        }
    }
    let decode = |mut code: usize| {
        let mut v = vec![0u32; n];
        for slot in v.iter_mut().rev() {
            *slot = (code % k as usize) as u32;
            code /= k as usize;
        }
        v
    };
    let missing: Vec<Vec<u32>> = (0..total)
        .filter(|&c| positions[c].is_empty())
        .map(decode)
        .collect();
    let duplicated: Vec<(Vec<u32>, Vec<usize>)> = positions
        .iter()
        .enumerate()
        .filter(|(_, p)| p.len() > 1)
        .map(|(c, p)| (decode(c), p.clone()))
        .collect();
    Ok(DeBruijnReport {
        k,
        n,
        length: len,
        verdict: len == total && missing.is_empty() && duplicated.is_empty(),
        missing,
        duplicated,
    })
}

/// Whether `b` is a cyclic rotation of `a`: KMP search for `b` in `a a`.
pub fn is_cyclic_rotation(a: &[u32], b: &[u32]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if b.is_empty() {
        return true;
    }
    let mut fail = vec![0usize; b.len()];
    let mut q = 0;
    for i in 1..b.len() {
        while q > 0 && b[i] != b[q] {
            q = fail[q - 1];
        }
        if b[i] == b[q] {
            q += 1;
        }
        fail[i] = q;
    }
    q = 0;
    for &x in a.iter().chain(a.iter()) {
        while q > 0 && x != b[q] {
            q = fail[q - 1];
        }
        if x == b[q] {
            q += 1;
        }
        if q == b.len() {
            return true;
        }
    }
    false
}
