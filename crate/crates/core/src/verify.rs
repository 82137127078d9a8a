//! Brute-force exact-cover checks for universal words and cycles.
//!
//! Every window is reduced from scratch and tallied; nothing is shared with
//! the generator's bookkeeping.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::perm::{all_perms, check_window_len, factorial, reduce_window, ReducedPerm};
use crate::{Error, Result};

/// Largest `n` accepted by the checks; the missing list is enumerated over
/// all of `S_n`.
pub const VERIFY_MAX_N: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Linear,
    Cyclic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Duplicate {
    pub pattern: ReducedPerm,
    /// 1-based window start positions.
    pub positions: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverageReport {
    pub n: usize,
    pub mode: Mode,
    pub total_windows: usize,
    pub covered: BTreeSet<ReducedPerm>,
    pub missing: Vec<ReducedPerm>,
    pub duplicated: Vec<Duplicate>,
    pub verdict: bool,
}

/// Does `w` cover every `n`-permutation exactly once as a factor?
pub fn check_u_word(w: &[u32], n: usize) -> Result<CoverageReport> {
    check(w, n, Mode::Linear)
}

/// Cyclic variant of [`check_u_word`]; a `true` verdict requires `|w| = n!`.
pub fn check_u_cycle(w: &[u32], n: usize) -> Result<CoverageReport> {
    check(w, n, Mode::Cyclic)
}

fn check(w: &[u32], n: usize, mode: Mode) -> Result<CoverageReport> {
    check_window_len(w.len(), n)?;
    if n > VERIFY_MAX_N {
        return Err(Error::Capacity {
            what: "verification order",
            requested: n,
            limit: VERIFY_MAX_N,
        });
    }
    let total_windows = match mode {
        Mode::Linear => w.len() - n + 1,
        Mode::Cyclic => w.len(),
    };

    let mut seen: BTreeMap<ReducedPerm, Vec<usize>> = BTreeMap::new();
    let mut buf = Vec::with_capacity(n);
    for start in 0..total_windows {
        buf.clear();
        buf.extend((0..n).map(|j| w[(start + j) % w.len()]));
        let pattern = reduce_window(&buf, start + 1)?;
        seen.entry(pattern).or_default().push(start + 1);
    }

    let missing: Vec<ReducedPerm> = all_perms(n).filter(|p| !seen.contains_key(p)).collect();
    let duplicated: Vec<Duplicate> = seen
        .iter()
        .filter(|(_, pos)| pos.len() > 1)
        .map(|(p, pos)| Duplicate {
            pattern: p.clone(),
            positions: pos.clone(),
        })
        .collect();
    let verdict =
        missing.is_empty() && duplicated.is_empty() && Some(total_windows) == factorial(n);

    Ok(CoverageReport {
        n,
        mode,
        total_windows,
        covered: seen.into_keys().collect(),
        missing,
        duplicated,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn published_words_pass() {
        assert!(check_u_word(&[7, 8, 6, 1, 3, 2, 4, 5], 3).unwrap().verdict);
        assert!(check_u_cycle(&[5, 6, 4, 1, 3, 2], 3).unwrap().verdict);
        assert!(check_u_cycle(&[1, 4, 5, 2, 4, 3], 3).unwrap().verdict);
        let pi4 = [
            22, 23, 24, 21, 20, 18, 19, 3, 17, 4, 2, 16, 1, 6, 7, 5, 11, 10, 8, 13, 9, 12, 15, 14,
        ];
        assert!(check_u_cycle(&pi4, 4).unwrap().verdict);
    }

    #[test]
    fn monotone_word() {
        let r = check_u_word(&[1, 2, 3, 4, 5], 3).unwrap();
        assert!(!r.verdict);
        assert_eq!(r.total_windows, 3);
        assert_eq!(r.missing.len(), 5);
        assert!(!r.missing.contains(&ReducedPerm::identity(3)));
        assert_eq!(
            r.duplicated,
            vec![Duplicate {
                pattern: ReducedPerm::identity(3),
                positions: vec![1, 2, 3]
            }]
        );
        assert_eq!(r.covered.len() + r.missing.len(), 6);
    }

    #[test]
    fn failed_start_word() {
        let r = check_u_word(&[5, 4, 2, 3, 1, 7, 6], 3).unwrap();
        assert!(!r.verdict);
        assert_eq!(r.missing, vec![ReducedPerm::identity(3)]);
        assert!(r.duplicated.is_empty());
    }

    #[test]
    fn cycle_needs_exact_length() {
        // every pattern covered once linearly, but cyclic wrap adds windows
        let r = check_u_cycle(&[7, 8, 6, 1, 3, 2, 4, 5], 3).unwrap();
        assert!(!r.verdict);
        assert_eq!(r.total_windows, 8);
    }

    #[test]
    fn repeated_letters() {
        // repeats are fine as long as no window holds two of them
        assert!(check_u_word(&[5, 6, 4, 1, 3, 2, 4, 5], 3).unwrap().verdict);
        assert_eq!(
            check_u_word(&[1, 2, 1, 3], 3),
            Err(Error::MalformedWindow {
                position: 1,
                letter: 1
            })
        );
        assert_eq!(
            check_u_cycle(&[1, 2, 3, 4, 1], 3),
            Err(Error::MalformedWindow {
                position: 4,
                letter: 1
            })
        );
    }

    #[test]
    fn too_short() {
        assert!(matches!(
            check_u_word(&[1, 2], 3),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            check_u_cycle(&[1, 2], 3),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn degenerate_n1() {
        assert!(check_u_word(&[1], 1).unwrap().verdict);
        assert!(check_u_cycle(&[1], 1).unwrap().verdict);
        assert!(!check_u_word(&[1, 2], 1).unwrap().verdict);
    }
}
