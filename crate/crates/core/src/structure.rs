//! Structural laws of the greedy universal word.
//!
//! Windows are indexed from 1: `sigma_k` is the reduced factor starting at
//! position `k`, for `k` in `1..=n!`. With `h = n!/2`, every window up to
//! `sigma_h` has `n` before `1` and every later window has `1` before `n`.
//! The three windows around the split have fixed shapes and the letter at
//! position `h + 1` is `1`.

use serde::Serialize;

use crate::generator::GenerationResult;
use crate::perm::{factorial, windows, ReducedPerm};
use crate::verify::check_u_word;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum HalfClass {
    /// `1` precedes `n`.
    FirstOneThenN,
    /// `n` precedes `1`.
    FirstNThenOne,
}

pub fn classify(p: &ReducedPerm) -> Result<HalfClass> {
    let n = p.order();
    if n < 2 {
        return Err(Error::invalid("classes need n >= 2"));
    }
    let pos = |v: u32| p.letters().iter().position(|&x| x == v).unwrap();
    Ok(if pos(1) < pos(n as u32) {
        HalfClass::FirstOneThenN
    } else {
        HalfClass::FirstNThenOne
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub n: usize,
    pub a_mid_is_one: bool,
    pub sigma_mid: ReducedPerm,
    pub sigma_mid_plus_1: ReducedPerm,
    /// Absent for `n = 2`, which has only two windows.
    pub sigma_mid_plus_2: Option<ReducedPerm>,
    pub boundary_windows_match: bool,
    pub first_half_class_pure: bool,
    pub second_half_class_pure: bool,
    pub last_letter_is_max_right_of_one: bool,
    /// First window index (1-based) breaking the half-split, if any.
    pub first_violation: Option<usize>,
}

impl PropertyReport {
    pub fn all_passed(&self) -> bool {
        self.a_mid_is_one
            && self.boundary_windows_match
            && self.first_half_class_pure
            && self.second_half_class_pure
            && self.last_letter_is_max_right_of_one
    }
}

/// `n 1 2 ... (n-1)`
pub fn expected_sigma_mid(n: usize) -> ReducedPerm {
    let mut v = vec![n as u32];
    v.extend(1..n as u32);
    ReducedPerm::from_vec_unchecked(v)
}

/// `1 3 4 ... n 2`
pub fn expected_sigma_mid_plus_1(n: usize) -> ReducedPerm {
    let mut v = vec![1];
    v.extend(3..=n as u32);
    v.push(2);
    ReducedPerm::from_vec_unchecked(v)
}

/// `2 3 ... (n-1) 1 n`
pub fn expected_sigma_mid_plus_2(n: usize) -> ReducedPerm {
    let mut v: Vec<u32> = (2..n as u32).collect();
    v.push(1);
    v.push(n as u32);
    ReducedPerm::from_vec_unchecked(v)
}

pub fn check_theorem3(result: &GenerationResult) -> Result<PropertyReport> {
    let n = result.n;
    if n < 2 {
        return Err(Error::Precondition("half-split laws need n >= 2".into()));
    }
    let word = result.u_word.letters();
    if !check_u_word(word, n)?.verdict {
        return Err(Error::Precondition(format!(
            "input is not a universal word for n = {n}"
        )));
    }
    let total = factorial(n).unwrap();
    let half = total / 2;
    let sigma = windows(word, n, false)?;
    // sigma_k lives at sigma[k - 1]
    let sigma_mid = sigma[half - 1].clone();
    let sigma_mid_plus_1 = sigma[half].clone();
    let sigma_mid_plus_2 = sigma.get(half + 1).cloned();

    let boundary_windows_match = sigma_mid == expected_sigma_mid(n)
        && sigma_mid_plus_1 == expected_sigma_mid_plus_1(n)
        && sigma_mid_plus_2
            .as_ref()
            .is_none_or(|s| *s == expected_sigma_mid_plus_2(n));

    let mut first_violation = None;
    let mut first_half_class_pure = true;
    let mut second_half_class_pure = true;
    for (idx, s) in sigma.iter().enumerate() {
        let k = idx + 1;
        let class = classify(s)?;
        let ok = if k <= half {
            let ok = class == HalfClass::FirstNThenOne;
            first_half_class_pure &= ok;
            ok
        } else {
            let ok = class == HalfClass::FirstOneThenN;
            second_half_class_pure &= ok;
            ok
        };
        if !ok && first_violation.is_none() {
            first_violation = Some(k);
        }
    }

    // a_{h+1} in 1-based terms
    let a_mid_is_one = word[half] == 1;
    let last = *word.last().unwrap();
    let last_letter_is_max_right_of_one = word[half + 1..].iter().all(|&x| x <= last);

    Ok(PropertyReport {
        n,
        a_mid_is_one,
        sigma_mid,
        sigma_mid_plus_1,
        sigma_mid_plus_2,
        boundary_windows_match,
        first_half_class_pure,
        second_half_class_pure,
        last_letter_is_max_right_of_one,
        first_violation,
    })
}

/// After `n - 1` extensions the word reads `n (n+1) ... (2n-2) (n-1) ... 1`.
pub fn expected_prefix(n: usize) -> Vec<u32> {
    let n = n as u32;
    let mut v: Vec<u32> = (n..=2 * n - 2).collect();
    v.extend((1..n).rev());
    v
}

/// Checks the prefix law on a finished universal word. Later steps only
/// append letters below `a_1` or shift letters up, so the relative order of
/// the first `2n - 2` letters is that of the prefix.
pub fn prefix_law_holds(word: &[u32], n: usize) -> bool {
    if n < 2 || word.len() < 2 * n - 2 {
        return false;
    }
    let head = &word[..2 * n - 2];
    match crate::perm::reduce_letters(head) {
        Ok(p) => p.letters() == expected_prefix(n).as_slice(),
        Err(_) => false,
    }
}

/// 1-based starts of windows reducing to the identity.
pub fn identity_positions(word: &[u32], n: usize) -> Result<Vec<usize>> {
    Ok(windows(word, n, false)?
        .iter()
        .enumerate()
        .filter(|(_, p)| p.is_identity())
        .map(|(i, _)| i + 1)
        .collect())
}
