//! Irreducible supermodular functions whose supermodularities live on two
//! adjacent layers `t` and `t + 1`.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{int, Rational};
use crate::setfn::{close_pairs, ClosePair, SetFunction};
use crate::subset::{canonical_subsets, check_ground_set, SubsetMask, MAX_GROUND_SET};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoLayerSpec {
    n: usize,
    t: usize,
}

impl TwoLayerSpec {
    pub fn new(n: usize, t: usize) -> Result<Self> {
        check_ground_set(n, 3, MAX_GROUND_SET)?;
        if t == 0 || t + 2 > n {
            return Err(Error::ParamOutOfRange(format!("need 1 <= t <= n - 2, got n = {n}, t = {t}")));
        }
        Ok(TwoLayerSpec { n, t })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }
}

fn check_element(n: usize, k: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::ElementOutOfRange { element: k, n });
    }
    Ok(())
}

/// `α_{n,t}(I) = max(0, |I| − t)`, for `1 <= t <= n − 1`.
pub fn alpha(n: usize, t: usize) -> Result<SetFunction> {
    check_ground_set(n, 2, MAX_GROUND_SET)?;
    if t == 0 || t >= n {
        return Err(Error::ParamOutOfRange(format!("need 1 <= t <= n - 1, got n = {n}, t = {t}")));
    }
    SetFunction::from_integers(n, |s| (s.len() as i64 - t as i64).max(0))
}

/// `β_{n,t,k}(I) = max(0, |I ∖ {k}| − t)`.
pub fn beta(n: usize, t: usize, k: usize) -> Result<SetFunction> {
    TwoLayerSpec::new(n, t)?;
    check_element(n, k)?;
    SetFunction::from_integers(n, |s| (s.without(k).len() as i64 - t as i64).max(0))
}

/// `γ_{n,t,ℓ} = Σ_{k ≠ ℓ} β_{n,t,k} − (n − t − 2) α_{n,t} − (t − 1) α_{n,t+1}`.
pub fn gamma(n: usize, t: usize, l: usize) -> Result<SetFunction> {
    TwoLayerSpec::new(n, t)?;
    check_element(n, l)?;
    let mut f = SetFunction::zero(n)?;
    for k in (1..=n).filter(|&k| k != l) {
        f = &f + &beta(n, t, k)?;
    }
    f = &f - &alpha(n, t)?.scale(&int((n - t - 2) as i64));
    f = &f - &alpha(n, t + 1)?.scale(&int(t as i64 - 1));
    Ok(f)
}

/// Why `S` falls outside the admissible family, if it does.
pub fn admissibility_violation(n: usize, t: usize, s: SubsetMask) -> Option<String> {
    let size = s.len();
    let lo = (t + 1).min(n - t);
    let hi = (t + 1).max(n - t);
    if size == 1 || (lo < size && size < hi) {
        return None;
    }
    if size + 1 == n && size > lo {
        return None;
    }
    Some(if size + 1 == n {
        format!("|S| = n - 1 = {size} equals min(t + 1, n - t) = {lo}")
    } else {
        format!("|S| = {size} is not 1 or n - 1 = {} and not strictly between {lo} and {hi}", n - 1)
    })
}

/// `Σ_{k∈S} β_{n,t,k} − max(0, |S| − t − 1) α_{n,t} − max(0, |S| − n + t) α_{n,t+1}`, standardized.
pub fn from_subset(n: usize, t: usize, s: SubsetMask) -> Result<SetFunction> {
    TwoLayerSpec::new(n, t)?;
    if !s.is_subset_of(SubsetMask::full(n)) {
        return Err(Error::InadmissibleSubset(format!("{s:?} is not a subset of [{n}]")));
    }
    if let Some(why) = admissibility_violation(n, t, s) {
        return Err(Error::InadmissibleSubset(why));
    }
    let size = s.len() as i64;
    let mut f = SetFunction::zero(n)?;
    for k in s.elements() {
        f = &f + &beta(n, t, k)?;
    }
    f = &f - &alpha(n, t)?.scale(&int((size - t as i64 - 1).max(0)));
    f = &f - &alpha(n, t + 1)?.scale(&int((size - (n - t) as i64).max(0)));
    f.standardize()
}

fn canonical_key(f: &SetFunction) -> Vec<Rational> {
    canonical_subsets(f.n()).into_iter().map(|s| f.value(s).clone()).collect()
}

/// `K = {α_{n,t}, α_{n,t+1}} ∪ {fromSubset(S) : S admissible}` in canonical order.
pub fn enumerate_two_layer(n: usize, t: usize) -> Result<Vec<SetFunction>> {
    TwoLayerSpec::new(n, t)?;
    let mut family = vec![alpha(n, t)?, alpha(n, t + 1)?];
    for s in canonical_subsets(n) {
        if admissibility_violation(n, t, s).is_none() {
            family.push(from_subset(n, t, s)?);
        }
    }
    family.sort_by_cached_key(canonical_key);
    family.dedup();
    let rows: Vec<Vec<Rational>> = family.iter().map(|f| f.values().to_vec()).collect();
    let dim = linalg::rank(&rows);
    if dim != n + 1 {
        return Err(Error::InvariantViolation(format!("span of the two-layer family has dimension {dim}, expected {}", n + 1)));
    }
    Ok(family)
}

/// `Σ_k β_{n,t,k} = (n − t − 1) α_{n,t} + t α_{n,t+1}` exactly.
pub fn verify_two_layer_identity(n: usize, t: usize) -> Result<bool> {
    TwoLayerSpec::new(n, t)?;
    let mut lhs = SetFunction::zero(n)?;
    for k in 1..=n {
        lhs = &lhs + &beta(n, t, k)?;
    }
    let rhs = &alpha(n, t)?.scale(&int((n - t - 1) as i64)) + &alpha(n, t + 1)?.scale(&int(t as i64));
    Ok(lhs == rhs)
}

/// Layers `t` of the close pairs on which `f` is strictly supermodular.
pub fn layer_support(f: &SetFunction) -> Result<BTreeSet<usize>> {
    Ok(close_pairs(f.n())?
        .iter()
        .filter(|p| !f.supermodularity_value(p).is_zero())
        .map(ClosePair::layer)
        .collect())
}

/// Members of `rays` whose supermodularities lie on layers `t` and `t + 1` only.
pub fn filter_by_layers(rays: &[SetFunction], t: usize) -> Result<Vec<SetFunction>> {
    let mut out = Vec::new();
    for f in rays {
        if layer_support(f)?.iter().all(|&l| l == t || l == t + 1) {
            out.push(f.clone());
        }
    }
    out.sort_by_cached_key(canonical_key);
    Ok(out)
}

/// A close pair where `f` is strictly supermodular and `g` is modular.
pub fn separating_pair(f: &SetFunction, g: &SetFunction) -> Result<Option<ClosePair>> {
    if f.n() != g.n() {
        return Err(Error::MismatchedGroundSet { left: f.n(), right: g.n() });
    }
    Ok(close_pairs(f.n())?
        .into_iter()
        .find(|p| !f.supermodularity_value(p).is_zero() && g.supermodularity_value(p).is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::{apply_t, color_weights};

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha(3, 1).unwrap(), SetFunction::from_layers(3, &[0, 0, 1, 2]).unwrap());
        assert_eq!(alpha(4, 3).unwrap(), SetFunction::from_layers(4, &[0, 0, 0, 0, 1]).unwrap());
        let f = alpha(4, 2).unwrap();
        let s = apply_t(&f).unwrap();
        let pairs = close_pairs(4).unwrap();
        assert_eq!(pairs.len(), 24);
        for (p, v) in pairs.iter().zip(s.entries()) {
            assert_eq!(*v, int((p.layer() == 2) as i64));
        }
        assert!(alpha(3, 3).is_err());
    }

    #[test]
    fn beta_examples() {
        let b = beta(3, 1, 3).unwrap();
        let expected = SetFunction::from_integers(3, |s| (s == SubsetMask(3) || s == SubsetMask(7)) as i64).unwrap();
        assert_eq!(b, expected);
        let a = alpha(5, 2).unwrap();
        let b = beta(5, 2, 4).unwrap();
        for m in 0..32u32 {
            if !SubsetMask(m).contains(4) {
                assert_eq!(a.value(SubsetMask(m)), b.value(SubsetMask(m)));
            }
        }
        assert_eq!(color_weights(&beta(4, 1, 4).unwrap()).0, vec![int(1), int(1), int(1), int(0)]);
        assert!(beta(3, 2, 1).is_err());
        assert!(beta(3, 1, 4).is_err());
    }

    #[test]
    fn gamma_examples() {
        for n in 3..=6 {
            for t in 1..=n - 2 {
                for l in 1..=n {
                    assert!(gamma(n, t, l).unwrap().is_supermodular());
                }
            }
        }
        let mut expected = SetFunction::zero(4).unwrap();
        for k in 1..=3 {
            expected = &expected + &beta(4, 1, k).unwrap();
        }
        expected = &expected - &alpha(4, 1).unwrap();
        assert_eq!(gamma(4, 1, 4).unwrap(), expected);
    }

    #[test]
    fn from_subset_examples() {
        assert_eq!(from_subset(5, 2, SubsetMask::singleton(3)).unwrap(), beta(5, 2, 3).unwrap());
        let f = from_subset(4, 1, SubsetMask(0b0111)).unwrap();
        assert!(f.equivalent(&gamma(4, 1, 4).unwrap()).unwrap());
        assert_eq!(f, gamma(4, 1, 4).unwrap().standardize().unwrap());
        assert!(matches!(from_subset(4, 1, SubsetMask(0b0011)), Err(Error::InadmissibleSubset(_))));
        assert!(matches!(from_subset(3, 1, SubsetMask(0b011)), Err(Error::InadmissibleSubset(_))));
        assert!(matches!(from_subset(4, 1, SubsetMask::EMPTY), Err(Error::InadmissibleSubset(_))));
    }

    #[test]
    fn family_sizes() {
        assert_eq!(enumerate_two_layer(4, 1).unwrap().len(), 10);
        assert_eq!(enumerate_two_layer(5, 2).unwrap().len(), 12);
        assert_eq!(enumerate_two_layer(3, 1).unwrap().len(), 5);
        assert!(enumerate_two_layer(4, 3).is_err());
    }

    #[test]
    fn identity_holds() {
        for n in 3..=6 {
            for t in 1..=n - 2 {
                assert!(verify_two_layer_identity(n, t).unwrap());
            }
        }
    }

    #[test]
    fn support_and_separation() {
        for n in 3..=5 {
            for t in 1..=n - 2 {
                let family = enumerate_two_layer(n, t).unwrap();
                for f in &family {
                    assert!(layer_support(f).unwrap().iter().all(|&l| l == t || l == t + 1));
                }
                for f in &family {
                    for g in &family {
                        if f != g {
                            assert!(separating_pair(f, g).unwrap().is_some());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn matches_face_enumeration() {
        for n in 3..=5 {
            for t in 1..=n - 2 {
                let face = crate::cone::enumerate_irreducible_on_layers(n, &[t, t + 1]).unwrap();
                assert_eq!(face, enumerate_two_layer(n, t).unwrap(), "n = {n}, t = {t}");
            }
            for t in 1..n {
                let single = crate::cone::enumerate_irreducible_on_layers(n, &[t]).unwrap();
                assert_eq!(single, vec![alpha(n, t).unwrap()]);
            }
        }
    }
}
