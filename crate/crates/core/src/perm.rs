//! Permutations of `[n]` in lexicographic order.

use crate::error::{Error, Result};

/// All permutations of `1..=n`, lexicographically.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut current: Vec<usize> = (1..=n).collect();
    let mut out = vec![current.clone()];
    while next_permutation(&mut current) {
        out.push(current.clone());
    }
    out
}

pub fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let Some(i) = (0..p.len() - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..p.len()).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

pub fn check_permutation(sigma: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n + 1];
    if sigma.len() != n {
        return Err(Error::NotAPermutation { n });
    }
    for &s in sigma {
        if s == 0 || s > n || seen[s] {
            return Err(Error::NotAPermutation { n });
        }
        seen[s] = true;
    }
    Ok(())
}
