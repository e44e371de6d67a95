//! The map `T: f ↦ s` onto supermodularity vectors, path sums along
//! permutations, color weights, the image test and reconstruction of `f`
//! from `s`.

use std::collections::HashMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{check_permutation, permutations};
use crate::rational::{format_rational, parse_rational, primitive_integer_vector, Rational};
use crate::setfn::{close_pairs_unchecked, ClosePair, SetFunction};
use crate::subset::{canonical_subsets, check_ground_set, SubsetMask, MAX_GROUND_SET};

/// Close pairs of `[n]` with O(1) lookup of their position.
#[derive(Debug, Clone)]
pub struct PairIndex {
    n: usize,
    pairs: Vec<ClosePair>,
    lookup: HashMap<ClosePair, usize>,
}

impl PairIndex {
    pub fn new(n: usize) -> Result<Self> {
        check_ground_set(n, 2, MAX_GROUND_SET)?;
        let pairs = close_pairs_unchecked(n);
        let lookup = pairs.iter().enumerate().map(|(k, p)| (*p, k)).collect();
        Ok(PairIndex { n, pairs, lookup })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[ClosePair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn position(&self, pair: &ClosePair) -> usize {
        self.lookup[pair]
    }

    /// Position of `{meet + a, meet + b}`.
    pub fn position_of(&self, meet: SubsetMask, a: usize, b: usize) -> usize {
        self.lookup[&ClosePair::new(meet, a, b)]
    }
}

/// A value for every close pair of `[n]`, in [`close_pairs`](crate::setfn::close_pairs) order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupermodularityVector {
    n: usize,
    entries: Vec<Rational>,
}

impl SupermodularityVector {
    pub fn new(n: usize, entries: Vec<Rational>) -> Result<Self> {
        check_ground_set(n, 2, MAX_GROUND_SET)?;
        let expected = crate::subset::binomial(n, 2) as usize * (1usize << (n - 2));
        if entries.len() != expected {
            return Err(Error::Parse(format!("expected {expected} entries, got {}", entries.len())));
        }
        Ok(SupermodularityVector { n, entries })
    }

    pub fn zero(n: usize) -> Result<Self> {
        let len = crate::subset::binomial(n, 2) as usize * (1usize << n.saturating_sub(2));
        Self::new(n, vec![Rational::zero(); len])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn get(&self, index: &PairIndex, pair: &ClosePair) -> &Rational {
        &self.entries[index.position(pair)]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|v| !v.is_negative())
    }

    pub fn to_json(&self) -> SupermodularityVectorJson {
        SupermodularityVectorJson {
            n: self.n,
            entries: close_pairs_unchecked(self.n)
                .iter()
                .zip(&self.entries)
                .map(|(p, v)| PairValueJson {
                    meet: p.meet.elements(),
                    add: [p.a, p.b],
                    value: format_rational(v),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &SupermodularityVectorJson) -> Result<Self> {
        let index = PairIndex::new(json.n)?;
        let mut entries: Vec<Option<Rational>> = vec![None; index.len()];
        for e in &json.entries {
            let meet = SubsetMask::from_elements(&e.meet, json.n)?;
            let [a, b] = e.add;
            if a == b || a == 0 || b == 0 || a > json.n || b > json.n || meet.contains(a) || meet.contains(b) {
                return Err(Error::Parse(format!("not a close pair: meet {:?} add {:?}", e.meet, e.add)));
            }
            let slot = &mut entries[index.position_of(meet, a, b)];
            if slot.is_some() {
                return Err(Error::Parse(format!("duplicate pair: meet {:?} add {:?}", e.meet, e.add)));
            }
            *slot = Some(parse_rational(&e.value)?);
        }
        let entries = entries
            .into_iter()
            .zip(index.pairs())
            .map(|(v, p)| v.ok_or_else(|| Error::Parse(format!("missing pair {p:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(json.n, entries)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairValueJson {
    pub meet: Vec<usize>,
    pub add: [usize; 2],
    pub value: String,
}

/// `{ "n": int, "entries": [ {"meet": [...], "add": [a, b], "value": "p/q"} ... ] }`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupermodularityVectorJson {
    pub n: usize,
    pub entries: Vec<PairValueJson>,
}

/// The chain of close pairs `(I_r, J_r)` with `I_r = {σ_1..σ_r}` and
/// `J_r = {σ_2..σ_{r+1}}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathChain {
    pub sigma: Vec<usize>,
    pub pairs: Vec<ClosePair>,
    pub color: usize,
}

/// Color weights `m_1..m_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorWeights(pub Vec<Rational>);

/// A failed image identity: distinct `i, j, k` and `meet ⊆ [n] ∖ {i, j, k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageViolation {
    pub meet: SubsetMask,
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

pub fn apply_t(f: &SetFunction) -> Result<SupermodularityVector> {
    check_ground_set(f.n(), 2, MAX_GROUND_SET)?;
    let entries = close_pairs_unchecked(f.n())
        .iter()
        .map(|p| f.supermodularity_value(p))
        .collect();
    SupermodularityVector::new(f.n(), entries)
}

/// Matrix of `T` with one row per close pair and one column per subset
/// (indexed by mask bits).
pub fn t_matrix(n: usize) -> Result<Vec<Vec<i64>>> {
    check_ground_set(n, 2, MAX_GROUND_SET)?;
    Ok(close_pairs_unchecked(n)
        .iter()
        .map(|p| {
            let mut row = vec![0i64; 1 << n];
            row[p.meet.index()] += 1;
            row[p.join().index()] += 1;
            row[p.left().index()] -= 1;
            row[p.right().index()] -= 1;
            row
        })
        .collect())
}

pub fn path_chain(sigma: &[usize]) -> Result<PathChain> {
    let n = sigma.len();
    check_permutation(sigma, n)?;
    if n < 2 {
        return Err(Error::NotAPermutation { n });
    }
    let color = sigma[0];
    let mut meet = SubsetMask::EMPTY;
    let mut pairs = Vec::with_capacity(n - 1);
    for r in 1..n {
        pairs.push(ClosePair::new(meet, color, sigma[r]));
        meet = meet.with(sigma[r]);
    }
    Ok(PathChain {
        sigma: sigma.to_vec(),
        pairs,
        color,
    })
}

pub fn path_sum(s: &SupermodularityVector, sigma: &[usize]) -> Result<Rational> {
    if sigma.len() != s.n() {
        return Err(Error::NotAPermutation { n: s.n() });
    }
    let index = PairIndex::new(s.n())?;
    path_sum_indexed(s, &index, sigma)
}

pub(crate) fn path_sum_indexed(s: &SupermodularityVector, index: &PairIndex, sigma: &[usize]) -> Result<Rational> {
    let chain = path_chain(sigma)?;
    Ok(chain.pairs.iter().map(|p| s.get(index, p)).sum())
}

/// `m_i = f([n]) + f(∅) − f({i}) − f([n] ∖ {i})`.
pub fn color_weights(f: &SetFunction) -> ColorWeights {
    let full = SubsetMask::full(f.n());
    let base = f.value(full) + f.value(SubsetMask::EMPTY);
    ColorWeights(
        (1..=f.n())
            .map(|i| &base - f.value(SubsetMask::singleton(i)) - f.value(full.without(i)))
            .collect(),
    )
}

/// Common path sum per color over all permutations, if every color has one.
pub fn path_sum_weights(s: &SupermodularityVector) -> Result<Option<ColorWeights>> {
    let n = s.n();
    let index = PairIndex::new(n)?;
    let mut weights: Vec<Option<Rational>> = vec![None; n];
    for sigma in permutations(n) {
        let v = path_sum_indexed(s, &index, &sigma)?;
        let slot = &mut weights[sigma[0] - 1];
        match slot {
            None => *slot = Some(v),
            Some(w) if *w != v => return Ok(None),
            _ => {}
        }
    }
    Ok(Some(ColorWeights(weights.into_iter().map(|w| w.unwrap_or_default()).collect())))
}

/// The first failing identity
/// `s_{I+i,I+j} + s_{I+ij,I+jk} = s_{I+i,I+k} + s_{I+ik,I+jk}`, if any.
pub fn image_violation(s: &SupermodularityVector) -> Option<ImageViolation> {
    let n = s.n();
    let index = PairIndex::new(n).ok()?;
    for meet in canonical_subsets(n) {
        let free: Vec<usize> = (1..=n).filter(|&e| !meet.contains(e)).collect();
        for &i in &free {
            for &j in &free {
                for &k in &free {
                    if j >= k || i == j || i == k {
                        continue;
                    }
                    let lhs = &s.entries[index.position_of(meet, i, j)]
                        + &s.entries[index.position_of(meet.with(j), i, k)];
                    let rhs = &s.entries[index.position_of(meet, i, k)]
                        + &s.entries[index.position_of(meet.with(k), i, j)];
                    if lhs != rhs {
                        return Some(ImageViolation { meet, i, j, k });
                    }
                }
            }
        }
    }
    None
}

pub fn in_image_t(s: &SupermodularityVector) -> bool {
    image_violation(s).is_none()
}

/// The unique `f` vanishing on `|I| <= 1` with `T f = s`.
pub fn reconstruct(s: &SupermodularityVector) -> Result<SetFunction> {
    reconstruct_with(s, |j| {
        let e = j.elements();
        (e[0], e[1])
    })
}

/// Reconstruction with a caller-chosen pair `(i, j)` of elements of each set.
pub fn reconstruct_with(
    s: &SupermodularityVector,
    mut choose: impl FnMut(SubsetMask) -> (usize, usize),
) -> Result<SetFunction> {
    if let Some(v) = image_violation(s) {
        return Err(Error::NotInImage(format!(
            "identity fails at I = {:?}, i = {}, j = {}, k = {}",
            v.meet, v.i, v.j, v.k
        )));
    }
    let n = s.n();
    let index = PairIndex::new(n)?;
    let mut values = vec![Rational::zero(); 1 << n];
    for set in canonical_subsets(n) {
        if set.len() < 2 {
            continue;
        }
        let (i, j) = choose(set);
        debug_assert!(i != j && set.contains(i) && set.contains(j));
        let rest = set.without(i).without(j);
        let v = &s.entries[index.position_of(rest, i, j)] + &values[rest.with(i).index()]
            + &values[rest.with(j).index()]
            - &values[rest.index()];
        values[set.index()] = v;
    }
    SetFunction::new(n, values)
}

/// Largest color weight of `T f` after scaling to coprime integers.
pub fn complexity_of(f: &SetFunction) -> Result<u64> {
    f.ensure_supermodular()?;
    let s = apply_t(f)?;
    let primitive = primitive_integer_vector(s.entries()).ok_or(Error::ModularInput)?;
    let s = SupermodularityVector::new(f.n(), primitive.into_iter().map(Rational::from_integer).collect())?;
    let index = PairIndex::new(f.n())?;
    let mut best = Rational::zero();
    for color in 1..=f.n() {
        let mut sigma = vec![color];
        sigma.extend((1..=f.n()).filter(|&e| e != color));
        let w = path_sum_indexed(&s, &index, &sigma)?;
        if w > best {
            best = w;
        }
    }
    Ok(num_traits::ToPrimitive::to_u64(&best.to_integer()).expect("complexity fits in u64"))
}
