//! Nondecreasing set functions and up functions of antichains.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::setfn::SetFunction;
use crate::subset::{check_ground_set, SubsetMask, MAX_GROUND_SET};

/// A family of subsets of `[n]` in which no member contains another,
/// stored in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Antichain {
    n: usize,
    sets: Vec<SubsetMask>,
}

impl Antichain {
    pub fn new(n: usize, mut sets: Vec<SubsetMask>) -> Result<Self> {
        check_ground_set(n, 0, MAX_GROUND_SET)?;
        if let Some(s) = sets.iter().find(|s| !s.is_subset_of(SubsetMask::full(n))) {
            return Err(Error::Parse(format!("{s:?} is not a subset of [{n}]")));
        }
        sets.sort();
        sets.dedup();
        for (k, a) in sets.iter().enumerate() {
            if sets[k + 1..].iter().any(|b| a.is_subset_of(*b)) {
                return Err(Error::NotAnAntichain);
            }
        }
        Ok(Antichain { n, sets })
    }

    /// Minimal members of an arbitrary family.
    pub fn minimal_sets(n: usize, family: impl IntoIterator<Item = SubsetMask>) -> Result<Self> {
        let mut family: Vec<SubsetMask> = family.into_iter().collect();
        family.sort();
        family.dedup();
        let minimal = family
            .iter()
            .copied()
            .filter(|s| !family.iter().any(|t| t != s && t.is_subset_of(*s)))
            .collect();
        Self::new(n, minimal)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sets(&self) -> &[SubsetMask] {
        &self.sets
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Some member is contained in `s`.
    pub fn covers(&self, s: SubsetMask) -> bool {
        self.sets.iter().any(|a| a.is_subset_of(s))
    }

    pub fn to_json(&self) -> AntichainJson {
        AntichainJson {
            n: self.n,
            sets: self.sets.iter().map(|s| s.elements()).collect(),
        }
    }

    pub fn from_json(json: &AntichainJson) -> Result<Self> {
        let sets = json
            .sets
            .iter()
            .map(|e| SubsetMask::from_elements(e, json.n))
            .collect::<Result<Vec<_>>>()?;
        Self::new(json.n, sets)
    }
}

/// `{ "n": int, "sets": [[...], ...] }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AntichainJson {
    pub n: usize,
    pub sets: Vec<Vec<usize>>,
}

/// `f(I ∪ {i}) >= f(I)` on every cover relation.
pub fn is_nondecreasing(f: &SetFunction) -> bool {
    let n = f.n();
    (0..1u32 << n).all(|b| {
        let s = SubsetMask(b);
        (1..=n)
            .filter(|&i| !s.contains(i))
            .all(|i| f.value(s.with(i)) >= f.value(s))
    })
}

/// `u_A(I) = 1` if `I` contains a member of `A`, else 0.
pub fn up_function(a: &Antichain) -> Result<SetFunction> {
    if a.is_empty() {
        return Err(Error::EmptyAntichain);
    }
    SetFunction::from_fn(a.n, |s| if a.covers(s) { Rational::one() } else { Rational::zero() })
}

/// Minimal sets where `f` rises above `f(∅)` and the smallest rise there.
fn rise(f: &SetFunction) -> Option<(Rational, Antichain)> {
    let base = f.value(SubsetMask::EMPTY);
    let raised: Vec<SubsetMask> = (0..1u32 << f.n())
        .map(SubsetMask)
        .filter(|s| f.value(*s) > base)
        .collect();
    let c = raised.iter().map(|s| f.value(*s) - base).min()?;
    let a = Antichain::minimal_sets(f.n(), raised).expect("subsets of [n]");
    Some((c, a))
}

/// `Some((c, A))` exactly when `f = f(∅) + c · u_A` with `c = f([n]) − f(∅) > 0`.
pub fn is_irreducible_nondecreasing(f: &SetFunction) -> Result<Option<(Rational, Antichain)>> {
    if !is_nondecreasing(f) {
        return Err(Error::NotNondecreasing);
    }
    let Some((_, a)) = rise(f) else {
        return Ok(None);
    };
    let base = f.value(SubsetMask::EMPTY);
    let c = f.value(SubsetMask::full(f.n())) - base;
    debug_assert!(c.is_positive());
    let matches = (0..1u32 << f.n()).map(SubsetMask).all(|s| {
        let expected = if a.covers(s) { base + &c } else { base.clone() };
        f.value(s) == &expected
    });
    Ok(matches.then_some((c, a)))
}

/// For non-constant nondecreasing `f`: some `c > 0` and antichain `A` with
/// `f − c · u_A` still nondecreasing.
pub fn reducibility_witness(f: &SetFunction) -> Result<Option<(Rational, Antichain)>> {
    if !is_nondecreasing(f) {
        return Err(Error::NotNondecreasing);
    }
    Ok(rise(f))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AntichainCount {
    pub n: usize,
    pub with_empty: u64,
    pub without_empty: u64,
}

/// Monotone Boolean functions on `[k]` as truth tables (`bit b` is the value on mask `b`).
///
/// A function on `[k]` is a pair `(f0, f1)` on `[k−1]` with `f0 <= f1`.
fn monotone_tables(k: usize) -> Vec<u64> {
    let mut tables: Vec<u64> = vec![0, 1];
    for level in 1..=k {
        let half = 1u32 << (level - 1);
        let mut next = Vec::new();
        for &f1 in &tables {
            for &f0 in &tables {
                if f0 & !f1 == 0 {
                    next.push(f0 | (f1 << half));
                }
            }
        }
        next.sort_unstable();
        tables = next;
    }
    tables
}

/// Counts antichains of subsets of `[n]` (`n <= 6`).
pub fn count_antichains(n: usize) -> Result<AntichainCount> {
    check_ground_set(n, 0, 6)?;
    let with_empty = if n == 0 {
        2
    } else {
        let tables = monotone_tables(n - 1);
        tables
            .iter()
            .map(|&f1| tables.iter().filter(|&&f0| f0 & !f1 == 0).count() as u64)
            .sum()
    };
    Ok(AntichainCount { n, with_empty, without_empty: with_empty - 1 })
}

/// Every antichain of subsets of `[n]` (`n <= 5`), including the empty one.
pub fn antichains(n: usize) -> Result<Vec<Antichain>> {
    check_ground_set(n, 0, 5)?;
    let mut out: Vec<Antichain> = monotone_tables(n)
        .into_iter()
        .map(|table| {
            let upset = (0..1u32 << n).filter(|b| table >> b & 1 == 1).map(SubsetMask);
            Antichain::minimal_sets(n, upset).expect("subsets of [n]")
        })
        .collect();
    out.sort();
    Ok(out)
}
