//! Permutation words, reduced forms and the extension map.
//!
//! Letters are arbitrary distinct positive integers; only their relative
//! order matters. A [`ReducedPerm`] is the canonical representative of that
//! order: a permutation of `{1, ..., m}`.

use std::fmt;

use serde::Serialize;

use crate::{Error, Result};

/// A finite sequence of pairwise distinct positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct PermWord(Vec<u32>);

impl PermWord {
    pub fn new(letters: Vec<u32>) -> Result<Self> {
        if letters.contains(&0) {
            return Err(Error::invalid("letters must be positive integers"));
        }
        if let Err(dup) = order_ranks(&letters) {
            return Err(Error::invalid(format!(
                "letter {dup} occurs more than once"
            )));
        }
        Ok(PermWord(letters))
    }

    /// The empty word, only meaningful for the degenerate `n = 1` paths.
    pub fn empty() -> Self {
        PermWord(Vec::new())
    }

    pub(crate) fn from_vec_unchecked(letters: Vec<u32>) -> Self {
        debug_assert!(PermWord::new(letters.clone()).is_ok());
        PermWord(letters)
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.0
    }
}

impl AsRef<[u32]> for PermWord {
    fn as_ref(&self) -> &[u32] {
        &self.0
    }
}

impl From<ReducedPerm> for PermWord {
    fn from(p: ReducedPerm) -> Self {
        PermWord(p.0)
    }
}

impl fmt::Display for PermWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_spaced(f, &self.0)
    }
}

/// A permutation of `{1, ..., m}`; the pattern of a window.
///
/// Ordering is lexicographic on the letters, which is what the coverage
/// reports use for their `missing` lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ReducedPerm(Vec<u32>);

impl ReducedPerm {
    pub fn new(letters: Vec<u32>) -> Result<Self> {
        let m = letters.len();
        let mut seen = vec![false; m + 1];
        for &x in &letters {
            let x = x as usize;
            if x == 0 || x > m || seen[x] {
                return Err(Error::invalid(format!(
                    "{letters:?} is not a permutation of 1..={m}"
                )));
            }
            seen[x] = true;
        }
        Ok(ReducedPerm(letters))
    }

    /// `12...m`
    pub fn identity(m: usize) -> Self {
        ReducedPerm((1..=m as u32).collect())
    }

    pub(crate) fn from_vec_unchecked(letters: Vec<u32>) -> Self {
        debug_assert!(ReducedPerm::new(letters.clone()).is_ok());
        ReducedPerm(letters)
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| x as usize == i + 1)
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.0
    }
}

impl AsRef<[u32]> for ReducedPerm {
    fn as_ref(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for ReducedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_spaced(f, &self.0)
    }
}

fn write_spaced(f: &mut fmt::Formatter<'_>, letters: &[u32]) -> fmt::Result {
    for (i, x) in letters.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

/// Index of an extension, `1 <= i <= m + 1` for a word of length `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtensionIndex(usize);

impl ExtensionIndex {
    pub fn new(i: usize, word_len: usize) -> Result<Self> {
        if i == 0 || i > word_len + 1 {
            return Err(Error::invalid(format!(
                "extension index {i} outside 1..={}",
                word_len + 1
            )));
        }
        Ok(ExtensionIndex(i))
    }

    pub fn get(self) -> usize {
        self.0
    }
}

/// Ranks of `letters` (1-based), or the first repeated letter found.
fn order_ranks(letters: &[u32]) -> std::result::Result<Vec<u32>, u32> {
    let mut idx: Vec<usize> = (0..letters.len()).collect();
    idx.sort_unstable_by_key(|&i| letters[i]);
    let mut ranks = vec![0u32; letters.len()];
    for (r, pair) in idx.iter().enumerate() {
        ranks[*pair] = r as u32 + 1;
        if r > 0 && letters[idx[r - 1]] == letters[*pair] {
            return Err(letters[*pair]);
        }
    }
    Ok(ranks)
}

/// Reduced form of `w`: the i-th smallest letter is replaced by `i`.
pub fn reduce(w: &PermWord) -> ReducedPerm {
    ReducedPerm(order_ranks(&w.0).expect("PermWord letters are distinct"))
}

/// Reduced form of an arbitrary slice, failing on repeated letters.
pub fn reduce_letters(letters: &[u32]) -> Result<ReducedPerm> {
    order_ranks(letters)
        .map(ReducedPerm)
        .map_err(|dup| Error::invalid(format!("letter {dup} occurs more than once")))
}

/// Like [`reduce_letters`] but reports a repeat as a malformed window
/// starting at `position` (1-based).
pub(crate) fn reduce_window(letters: &[u32], position: usize) -> Result<ReducedPerm> {
    order_ranks(letters)
        .map(ReducedPerm)
        .map_err(|letter| Error::MalformedWindow { position, letter })
}

/// The `i`-th extension of `w` to the right.
///
/// For `i <= |w|` the appended letter `b` is the `i`-th smallest letter of
/// `w` and every letter `>= b` is shifted up by one. For `i = |w| + 1` the
/// appended letter is `max(w) + 1`.
pub fn extend(w: &PermWord, i: usize) -> Result<PermWord> {
    if w.is_empty() {
        return Err(Error::invalid("cannot extend the empty word"));
    }
    let i = ExtensionIndex::new(i, w.len())?.get();
    let b = if i <= w.len() {
        let mut sorted = w.0.clone();
        sorted.sort_unstable();
        sorted[i - 1]
    } else {
        w.0.iter().max().copied().unwrap_or(0) + 1
    };
    let mut out: Vec<u32> =
        w.0.iter()
            .map(|&x| if x >= b { x + 1 } else { x })
            .collect();
    out.push(b);
    Ok(PermWord(out))
}

/// Reduced length-`n` windows of `letters`, in position order.
///
/// Linear mode yields `|w| - n + 1` windows, cyclic mode yields `|w|`
/// windows with wrap-around.
pub fn windows(letters: &[u32], n: usize, cyclic: bool) -> Result<Vec<ReducedPerm>> {
    check_window_len(letters.len(), n)?;
    let count = if cyclic {
        letters.len()
    } else {
        letters.len() - n + 1
    };
    let mut buf = Vec::with_capacity(n);
    (0..count)
        .map(|start| {
            buf.clear();
            buf.extend((0..n).map(|j| letters[(start + j) % letters.len()]));
            reduce_window(&buf, start + 1)
        })
        .collect()
}

pub(crate) fn check_window_len(len: usize, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("window length must be at least 1"));
    }
    if n > len {
        return Err(Error::invalid(format!(
            "window length {n} exceeds word length {len}"
        )));
    }
    Ok(())
}

/// `n!`, or `None` on overflow.
pub fn factorial(n: usize) -> Option<usize> {
    (1..=n).try_fold(1usize, |acc, x| acc.checked_mul(x))
}

/// All permutations of `{1, ..., n}` in lexicographic order.
pub fn all_perms(n: usize) -> AllPerms {
    AllPerms {
        next: Some((1..=n as u32).collect()),
    }
}

pub struct AllPerms {
    next: Option<Vec<u32>>,
}

impl Iterator for AllPerms {
    type Item = ReducedPerm;

    fn next(&mut self) -> Option<ReducedPerm> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(ReducedPerm(current))
    }
}

fn next_permutation(p: &mut [u32]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
