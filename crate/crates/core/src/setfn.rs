//! Set functions on `2^[n]` with exact rational values.
//!
//! Covers modularity and supermodularity tests, standard representatives,
//! equivalence, discrete derivatives and the vertices of the associated
//! generalized permutohedron.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::permutations;
use crate::rational::{format_rational, parse_rational, primitive_integer_vector, Rational};
use crate::subset::{canonical_subsets, check_ground_set, SubsetMask, MAX_GROUND_SET};

/// An exact-rational function on every subset of `[n]`, indexed by mask bits.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetFunction {
    n: usize,
    values: Vec<Rational>,
}

/// An unordered close pair `{meet + a, meet + b}` with `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ClosePair {
    pub meet: SubsetMask,
    pub a: usize,
    pub b: usize,
}

impl ClosePair {
    pub fn new(meet: SubsetMask, a: usize, b: usize) -> Self {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        debug_assert!(!meet.contains(a) && !meet.contains(b) && a != b);
        ClosePair { meet, a, b }
    }

    pub fn left(&self) -> SubsetMask {
        self.meet.with(self.a)
    }

    pub fn right(&self) -> SubsetMask {
        self.meet.with(self.b)
    }

    pub fn join(&self) -> SubsetMask {
        self.meet.with(self.a).with(self.b)
    }

    /// Layer `t` of the pair, i.e. `|I| = |J| = t`.
    pub fn layer(&self) -> usize {
        self.meet.len() + 1
    }

    /// Recovers the pair from its two sets, if they form a close pair.
    pub fn from_sets(i: SubsetMask, j: SubsetMask) -> Option<Self> {
        let meet = i.intersection(j);
        let only_i = i.difference(j);
        let only_j = j.difference(i);
        if i.len() != j.len() || only_i.len() != 1 || only_j.len() != 1 {
            return None;
        }
        Some(ClosePair::new(meet, only_i.elements()[0], only_j.elements()[0]))
    }
}

/// Every close pair of `[n]`, ordered by meet (canonically) and then `(a, b)`.
pub fn close_pairs(n: usize) -> Result<Vec<ClosePair>> {
    check_ground_set(n, 2, MAX_GROUND_SET)?;
    Ok(close_pairs_unchecked(n))
}

pub(crate) fn close_pairs_unchecked(n: usize) -> Vec<ClosePair> {
    let mut out = Vec::new();
    for meet in canonical_subsets(n) {
        for a in 1..=n {
            if meet.contains(a) {
                continue;
            }
            for b in a + 1..=n {
                if !meet.contains(b) {
                    out.push(ClosePair { meet, a, b });
                }
            }
        }
    }
    out
}

/// `base + Σ_{i ∈ I} increments[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularFunction {
    pub base: Rational,
    pub increments: Vec<Rational>,
}

impl ModularFunction {
    pub fn to_set_function(&self) -> SetFunction {
        let n = self.increments.len();
        SetFunction::from_fn(n, |s| {
            s.elements()
                .iter()
                .fold(self.base.clone(), |acc, &e| acc + &self.increments[e - 1])
        })
        .expect("ground-set size checked by caller")
    }

    /// The modular function agreeing with `f` on all sets of size at most one.
    pub fn matching_low_sets(f: &SetFunction) -> Self {
        let base = f.value(SubsetMask::EMPTY).clone();
        let increments = (1..=f.n())
            .map(|i| f.value(SubsetMask::singleton(i)) - &base)
            .collect();
        ModularFunction { base, increments }
    }
}

impl SetFunction {
    pub fn new(n: usize, values: Vec<Rational>) -> Result<Self> {
        check_ground_set(n, 0, MAX_GROUND_SET)?;
        if values.len() != 1 << n {
            return Err(Error::Parse(format!(
                "expected {} values for n = {n}, got {}",
                1usize << n,
                values.len()
            )));
        }
        Ok(SetFunction { n, values })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(SubsetMask) -> Rational) -> Result<Self> {
        check_ground_set(n, 0, MAX_GROUND_SET)?;
        let values = (0..1u32 << n).map(|b| f(SubsetMask(b))).collect();
        Ok(SetFunction { n, values })
    }

    pub fn from_integers(n: usize, mut f: impl FnMut(SubsetMask) -> i64) -> Result<Self> {
        Self::from_fn(n, |s| Rational::from_integer(BigInt::from(f(s))))
    }

    /// Values given per cardinality, `layers[k]` for every `|I| = k`.
    pub fn from_layers(n: usize, layers: &[i64]) -> Result<Self> {
        if layers.len() != n + 1 {
            return Err(Error::Parse(format!("expected {} layer values", n + 1)));
        }
        Self::from_integers(n, |s| layers[s.len()])
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::from_fn(n, |_| Rational::zero())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn value(&self, s: SubsetMask) -> &Rational {
        &self.values[s.index()]
    }

    /// Values indexed by mask bits.
    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.values.iter().all(|v| v.is_integer())
    }

    pub fn scale(&self, c: &Rational) -> SetFunction {
        SetFunction {
            n: self.n,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    fn check_same(&self, other: &SetFunction) -> Result<()> {
        if self.n != other.n {
            return Err(Error::MismatchedGroundSet {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &SetFunction) -> Result<SetFunction> {
        self.check_same(other)?;
        Ok(SetFunction {
            n: self.n,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, other: &SetFunction) -> Result<SetFunction> {
        self.check_same(other)?;
        Ok(SetFunction {
            n: self.n,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect(),
        })
    }

    /// `s_{I,J} = f(I ∩ J) + f(I ∪ J) − f(I) − f(J)`.
    pub fn supermodularity_value(&self, pair: &ClosePair) -> Rational {
        self.value(pair.meet) + self.value(pair.join()) - self.value(pair.left()) - self.value(pair.right())
    }

    /// First close pair with a negative supermodularity value.
    pub fn first_violation(&self) -> Option<ClosePair> {
        if self.n < 2 {
            return None;
        }
        close_pairs_unchecked(self.n)
            .into_iter()
            .find(|p| self.supermodularity_value(p).is_negative())
    }

    /// Close-pair test; sufficient for supermodularity.
    pub fn is_supermodular(&self) -> bool {
        self.first_violation().is_none()
    }

    /// Checks `f(I ∩ J) + f(I ∪ J) >= f(I) + f(J)` over all pairs of subsets.
    pub fn is_supermodular_full(&self) -> bool {
        let size = 1u32 << self.n;
        (0..size).all(|i| {
            (i + 1..size).all(|j| {
                let (a, b) = (SubsetMask(i), SubsetMask(j));
                self.value(a.intersection(b)) + self.value(a.union(b)) >= self.value(a) + self.value(b)
            })
        })
    }

    pub fn is_modular(&self) -> bool {
        if self.n < 2 {
            return true;
        }
        close_pairs_unchecked(self.n)
            .iter()
            .all(|p| self.supermodularity_value(p).is_zero())
    }

    pub fn ensure_supermodular(&self) -> Result<()> {
        match self.first_violation() {
            None => Ok(()),
            Some(p) => Err(Error::NotSupermodular {
                meet: p.meet.elements(),
                a: p.a,
                b: p.b,
            }),
        }
    }

    /// The representative vanishing on `|I| <= 1` with coprime integer values.
    pub fn standardize(&self) -> Result<SetFunction> {
        let shifted = self.try_sub(&ModularFunction::matching_low_sets(self).to_set_function())?;
        let ints = primitive_integer_vector(&shifted.values).ok_or(Error::ModularInput)?;
        let values: Vec<Rational> = ints.into_iter().map(Rational::from_integer).collect();
        let out = SetFunction { n: self.n, values };
        if !out.is_modular() {
            Ok(out)
        } else {
            Err(Error::ModularInput)
        }
    }

    /// `f` vanishes on every set of size at most one.
    pub fn is_normalized(&self) -> bool {
        canonical_subsets(self.n)
            .into_iter()
            .take_while(|s| s.len() <= 1)
            .all(|s| self.value(s).is_zero())
    }

    pub fn is_standard(&self) -> bool {
        self.is_normalized()
            && self.is_integral()
            && !self.is_zero()
            && crate::rational::gcd_of(&self.values.iter().map(|v| v.numer().clone()).collect::<Vec<_>>()).is_one()
    }

    /// `f` and `g` differ by a modular function.
    pub fn equivalent(&self, other: &SetFunction) -> Result<bool> {
        Ok(self.try_sub(other)?.is_modular())
    }

    /// `(∂_i f)(I) = f(I ∪ {i}) − f(I)` on `[n] ∖ {i}`, re-indexed onto `[n − 1]`.
    pub fn discrete_derivative(&self, i: usize) -> Result<SetFunction> {
        if i == 0 || i > self.n {
            return Err(Error::ElementOutOfRange {
                element: i,
                n: self.n,
            });
        }
        SetFunction::from_fn(self.n - 1, |s| {
            let lifted = s.insert_gap(i);
            self.value(lifted.with(i)) - self.value(lifted)
        })
    }

    pub fn is_constant(&self) -> bool {
        self.values.iter().all(|v| v == &self.values[0])
    }

    /// Vertices of the generalized permutohedron
    /// `{x : x · 1_I >= f(I), x · 1_[n] = f([n])}`, sorted and deduplicated.
    pub fn gp_vertices(&self) -> Result<Vec<Vec<Rational>>> {
        self.ensure_supermodular()?;
        if !self.value(SubsetMask::EMPTY).is_zero() {
            return Err(Error::ParamOutOfRange("gp_vertices requires f(∅) = 0".into()));
        }
        let mut out = BTreeSet::new();
        for sigma in permutations(self.n) {
            let mut x = vec![Rational::zero(); self.n];
            let mut prefix = SubsetMask::EMPTY;
            for &e in &sigma {
                let next = prefix.with(e);
                x[e - 1] = self.value(next) - self.value(prefix);
                prefix = next;
            }
            out.insert(x);
        }
        Ok(out.into_iter().collect())
    }

    /// `f(I) = x_1 + … + x_{|I|}` for a nondecreasing point `x`.
    pub fn permutohedron_from_point(x: &[Rational]) -> Result<SetFunction> {
        if x.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::UnsortedInput);
        }
        let mut prefix = vec![Rational::zero()];
        for v in x {
            let last = prefix.last().unwrap().clone();
            prefix.push(last + v);
        }
        SetFunction::from_fn(x.len(), |s| prefix[s.len()].clone())
    }

    pub fn to_json(&self) -> SetFunctionJson {
        SetFunctionJson {
            n: self.n,
            values: canonical_subsets(self.n)
                .into_iter()
                .map(|s| SetValueJson {
                    set: s.elements(),
                    value: format_rational(self.value(s)),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &SetFunctionJson) -> Result<SetFunction> {
        check_ground_set(json.n, 0, MAX_GROUND_SET)?;
        let mut values: Vec<Option<Rational>> = vec![None; 1 << json.n];
        for entry in &json.values {
            let mask = SubsetMask::from_elements(&entry.set, json.n)?;
            if mask.len() != entry.set.len() {
                return Err(Error::Parse(format!("repeated element in {:?}", entry.set)));
            }
            let slot = &mut values[mask.index()];
            if slot.is_some() {
                return Err(Error::Parse(format!("duplicate subset {:?}", entry.set)));
            }
            *slot = Some(parse_rational(&entry.value)?);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(b, v)| v.ok_or_else(|| Error::Parse(format!("missing subset {:?}", SubsetMask(b as u32)))))
            .collect::<Result<Vec<_>>>()?;
        SetFunction::new(json.n, values)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("serializable")
    }

    pub fn from_json_str(text: &str) -> Result<SetFunction> {
        let json: SetFunctionJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&json)
    }
}

impl fmt::Debug for SetFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetFunction(n={}; ", self.n)?;
        for (k, s) in canonical_subsets(self.n).into_iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}:{}", s, self.value(s))?;
        }
        write!(f, ")")
    }
}

impl Add for &SetFunction {
    type Output = SetFunction;
    fn add(self, rhs: &SetFunction) -> SetFunction {
        self.try_add(rhs).expect("ground sets must match")
    }
}

impl Sub for &SetFunction {
    type Output = SetFunction;
    fn sub(self, rhs: &SetFunction) -> SetFunction {
        self.try_sub(rhs).expect("ground sets must match")
    }
}

impl Mul<&SetFunction> for &Rational {
    type Output = SetFunction;
    fn mul(self, rhs: &SetFunction) -> SetFunction {
        rhs.scale(self)
    }
}

impl Neg for &SetFunction {
    type Output = SetFunction;
    fn neg(self) -> SetFunction {
        self.scale(&-Rational::one())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetValueJson {
    pub set: Vec<usize>,
    pub value: String,
}

/// `{ "n": int, "values": [ {"set": [...], "value": "p/q"} ... ] }`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetFunctionJson {
    pub n: usize,
    pub values: Vec<SetValueJson>,
}
