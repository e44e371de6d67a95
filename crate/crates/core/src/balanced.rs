//! Balanced multisets and vectors of subsets of `[N]`.
//!
//! A nonnegative vector `v` indexed by nonempty subsets is balanced when every
//! element is covered the same total amount `m`. Irreducible balanced vectors
//! are the extreme rays of the balanced cone; they are found two ways, from
//! the cone engine and from supports solved by Cramer's rule.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::cone::{extreme_rays, ConeH};
use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{int, primitive_integer_vector, serde_int, Rational};
use crate::rng::Lcg64;
use crate::subset::{canonical_subsets, check_ground_set, SubsetMask, MAX_GROUND_SET};

/// Nonnegative weights on the nonempty subsets of `[N]`, indexed by mask bits
/// (entry 0, the empty set, is always zero).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BalancedVector {
    n: usize,
    entries: Vec<Rational>,
}

impl BalancedVector {
    pub fn new(n: usize, entries: Vec<Rational>) -> Result<Self> {
        check_ground_set(n, 1, MAX_GROUND_SET)?;
        if entries.len() != 1 << n {
            return Err(Error::Parse(format!("expected {} entries", 1usize << n)));
        }
        if entries.iter().any(Signed::is_negative) {
            return Err(Error::ParamOutOfRange("balanced vectors are nonnegative".into()));
        }
        if !entries[0].is_zero() {
            return Err(Error::ParamOutOfRange("the empty set carries no weight".into()));
        }
        Ok(BalancedVector { n, entries })
    }

    pub fn from_sets(n: usize, weighted: &[(SubsetMask, Rational)]) -> Result<Self> {
        let mut entries = vec![Rational::zero(); 1 << n];
        for (s, w) in weighted {
            if s.index() >= entries.len() {
                return Err(Error::ElementOutOfRange { element: s.elements().last().copied().unwrap_or(0), n });
            }
            entries[s.index()] += w;
        }
        Self::new(n, entries)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, s: SubsetMask) -> &Rational {
        &self.entries[s.index()]
    }

    /// Support in canonical order.
    pub fn support(&self) -> Vec<SubsetMask> {
        canonical_subsets(self.n)
            .into_iter()
            .filter(|s| !self.entries[s.index()].is_zero())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> BalancedVector {
        BalancedVector {
            n: self.n,
            entries: self.entries.iter().map(|v| v * c).collect(),
        }
    }

    /// Values in canonical subset order, skipping the empty set.
    pub fn canonical_values(&self) -> Vec<Rational> {
        canonical_subsets(self.n)
            .into_iter()
            .skip(1)
            .map(|s| self.entries[s.index()].clone())
            .collect()
    }

    /// Coprime integer form.
    pub fn primitive(&self) -> Result<BalancedVector> {
        let ints = primitive_integer_vector(&self.entries).ok_or(Error::ZeroVector)?;
        Ok(BalancedVector {
            n: self.n,
            entries: ints.into_iter().map(Rational::from_integer).collect(),
        })
    }

    pub fn to_multiset(&self) -> Result<SubsetMultiset> {
        let p = self.primitive()?;
        let counts = p
            .entries
            .iter()
            .map(|v| v.to_integer().to_u64().expect("multiplicity fits in u64"))
            .collect();
        Ok(SubsetMultiset { n: self.n, counts })
    }

    pub fn to_json(&self) -> BalancedVectorJson {
        BalancedVectorJson {
            n: self.n,
            entries: self
                .support()
                .into_iter()
                .map(|s| BalancedEntryJson {
                    set: s.elements(),
                    value: crate::rational::format_rational(self.get(s)),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct BalancedEntryJson {
    pub set: Vec<usize>,
    pub value: String,
}

/// `{ "n": int, "entries": [ {"set": [...], "value": "p/q"} ... ] }`, support only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct BalancedVectorJson {
    pub n: usize,
    pub entries: Vec<BalancedEntryJson>,
}

impl BalancedVectorJson {
    pub fn to_vector(&self) -> Result<BalancedVector> {
        let mut weighted = Vec::new();
        for e in &self.entries {
            let s = SubsetMask::from_elements(&e.set, self.n)?;
            if s.is_empty() {
                return Err(Error::Parse("empty set in balanced vector".into()));
            }
            weighted.push((s, crate::rational::parse_rational(&e.value)?));
        }
        BalancedVector::from_sets(self.n, &weighted)
    }
}

/// Multiplicities of nonempty subsets of `[N]`, indexed by mask bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetMultiset {
    n: usize,
    counts: Vec<u64>,
}

impl SubsetMultiset {
    pub fn new(n: usize, sets: &[SubsetMask]) -> Result<Self> {
        check_ground_set(n, 1, MAX_GROUND_SET)?;
        let mut counts = vec![0u64; 1 << n];
        for s in sets {
            if s.is_empty() || s.index() >= counts.len() {
                return Err(Error::Parse(format!("set {s:?} is not a nonempty subset of [{n}]")));
            }
            counts[s.index()] += 1;
        }
        Ok(SubsetMultiset { n, counts })
    }

    /// Sets written as digit strings, e.g. `["1234", "4", "12"]` (elements below 10).
    pub fn from_digit_strings(n: usize, sets: &[&str]) -> Result<Self> {
        let masks = sets
            .iter()
            .map(|s| {
                let elems: Vec<usize> = s
                    .chars()
                    .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::Parse(format!("bad set {s:?}"))))
                    .collect::<Result<_>>()?;
                SubsetMask::from_elements(&elems, n)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, &masks)
    }

    /// One set per line, 1-based elements separated by commas or spaces; repeated lines add
    /// multiplicity. Blank lines and `#` comments are skipped. `n` defaults to
    /// the largest element.
    pub fn parse_text(text: &str, n: Option<usize>) -> Result<Self> {
        let mut sets: Vec<Vec<usize>> = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let elems = line
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad element in {line:?}"))))
                .collect::<Result<Vec<_>>>()?;
            sets.push(elems);
        }
        let n = n.unwrap_or_else(|| sets.iter().flatten().copied().max().unwrap_or(1));
        let masks = sets
            .iter()
            .map(|e| {
                let m = SubsetMask::from_elements(e, n)?;
                if m.len() != e.len() {
                    return Err(Error::Parse(format!("repeated element in {e:?}")));
                }
                Ok(m)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, &masks)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in canonical_subsets(self.n) {
            for _ in 0..self.counts[s.index()] {
                let e: Vec<String> = s.elements().iter().map(|x| x.to_string()).collect();
                out.push_str(&e.join(","));
                out.push('\n');
            }
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn count(&self, s: SubsetMask) -> u64 {
        self.counts[s.index()]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn to_vector(&self) -> BalancedVector {
        BalancedVector {
            n: self.n,
            entries: self.counts.iter().map(|&c| int(c as i64)).collect(),
        }
    }

    /// Coverage of each element.
    pub fn coverage(&self) -> Vec<u64> {
        (1..=self.n)
            .map(|e| {
                (0..self.counts.len())
                    .filter(|&b| SubsetMask(b as u32).contains(e))
                    .map(|b| self.counts[b])
                    .sum()
            })
            .collect()
    }
}

/// Common coverage `m` of every element, if there is one.
pub fn balance_of(v: &BalancedVector) -> Option<Rational> {
    let mut common: Option<Rational> = None;
    for e in 1..=v.n {
        let cover: Rational = (0..v.entries.len())
            .filter(|&b| SubsetMask(b as u32).contains(e))
            .map(|b| &v.entries[b])
            .sum();
        match &common {
            None => common = Some(cover),
            Some(c) if *c != cover => return None,
            _ => {}
        }
    }
    common
}

/// `m` of the coprime integer scaling of a nonzero balanced `v`.
pub fn complexity_of_balanced(v: &BalancedVector) -> Result<BigInt> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let p = v.primitive()?;
    let m = balance_of(&p).ok_or(Error::Unbalanced)?;
    Ok(m.to_integer())
}

fn indicator(s: SubsetMask, n: usize) -> Vec<BigInt> {
    (1..=n).map(|e| if s.contains(e) { BigInt::one() } else { BigInt::zero() }).collect()
}

/// Indicator vectors of the support are linearly independent.
pub fn support_independent(v: &BalancedVector) -> bool {
    let rows: Vec<Vec<BigInt>> = v.support().into_iter().map(|s| indicator(s, v.n)).collect();
    linalg::rank_int(&rows) == rows.len()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BalancedCertificate {
    pub irreducible: bool,
    pub support_size: usize,
    pub support_rank: usize,
    /// Dimension of `{(u, m') : supp u ⊆ supp v, B u = m' 1}`.
    pub solution_dimension: usize,
}

pub fn is_irreducible_balanced(v: &BalancedVector) -> Result<BalancedCertificate> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    balance_of(v).ok_or(Error::Unbalanced)?;
    let support = v.support();
    let rows: Vec<Vec<BigInt>> = support.iter().map(|&s| indicator(s, v.n)).collect();
    let support_rank = linalg::rank_int(&rows);
    // Each element e gives Σ_{I ∋ e} u_I − m' = 0.
    let system: Vec<Vec<BigInt>> = (1..=v.n)
        .map(|e| {
            let mut row: Vec<BigInt> = support
                .iter()
                .map(|s| if s.contains(e) { BigInt::one() } else { BigInt::zero() })
                .collect();
            row.push(-BigInt::one());
            row
        })
        .collect();
    let solution_dimension = support.len() + 1 - linalg::rank_int(&system);
    Ok(BalancedCertificate {
        irreducible: support_rank == support.len() && solution_dimension == 1,
        support_size: support.len(),
        support_rank,
        solution_dimension,
    })
}

/// Searches for a proper nonempty balanced sub-multiset.
pub fn balanced_submultiset(mset: &SubsetMultiset) -> Result<Option<SubsetMultiset>> {
    if mset.total() == 0 {
        return Err(Error::ZeroVector);
    }
    balance_of(&mset.to_vector()).ok_or(Error::Unbalanced)?;
    let support: Vec<SubsetMask> = canonical_subsets(mset.n)
        .into_iter()
        .filter(|s| mset.count(*s) > 0)
        .collect();
    let n = mset.n;
    // remaining[k][e] = coverage of element e available from support[k..]
    let mut remaining = vec![vec![0u64; n]; support.len() + 1];
    for k in (0..support.len()).rev() {
        remaining[k] = remaining[k + 1].clone();
        for e in 1..=n {
            if support[k].contains(e) {
                remaining[k][e - 1] += mset.count(support[k]);
            }
        }
    }
    let mut chosen = vec![0u64; support.len()];
    let mut cover = vec![0u64; n];
    let found = search_submultiset(mset, &support, &remaining, 0, &mut chosen, &mut cover);
    Ok(found.then(|| {
        let mut counts = vec![0u64; 1 << n];
        for (s, c) in support.iter().zip(&chosen) {
            counts[s.index()] = *c;
        }
        SubsetMultiset { n, counts }
    }))
}

fn search_submultiset(
    mset: &SubsetMultiset,
    support: &[SubsetMask],
    remaining: &[Vec<u64>],
    k: usize,
    chosen: &mut [u64],
    cover: &mut [u64],
) -> bool {
    let max_cover = *cover.iter().max().unwrap_or(&0);
    if cover.iter().zip(&remaining[k]).any(|(c, r)| c + r < max_cover) {
        return false;
    }
    if k == support.len() {
        let picked: u64 = chosen.iter().sum();
        let proper = chosen.iter().zip(support).any(|(c, s)| *c < mset.count(*s));
        return picked > 0 && proper && cover.iter().all(|c| *c == cover[0]);
    }
    let set = support[k];
    for c in (0..=mset.count(set)).rev() {
        chosen[k] = c;
        for e in set.elements() {
            cover[e - 1] += c;
        }
        let ok = search_submultiset(mset, support, remaining, k + 1, chosen, cover);
        for e in set.elements() {
            cover[e - 1] -= c;
        }
        if ok {
            return true;
        }
    }
    chosen[k] = 0;
    false
}

/// No proper nonempty sub-multiset is balanced.
pub fn is_z_irreducible(mset: &SubsetMultiset) -> Result<bool> {
    Ok(balanced_submultiset(mset)?.is_none())
}

/// Primitive positive solution of `A x = m 1` supported on `sets`,
/// completing the system with singletons (smallest first) and applying
/// Cramer's rule. `None` when the solution is not positive on `sets`.
pub fn complexity_from_support(sets: &[SubsetMask], n: usize) -> Result<Option<(BigInt, Vec<BigInt>)>> {
    check_ground_set(n, 1, MAX_GROUND_SET)?;
    if sets.len() > n || sets.iter().any(|s| s.is_empty() || s.index() >= 1 << n) {
        return Err(Error::ParamOutOfRange("support must be at most N nonempty subsets of [N]".into()));
    }
    let mut columns: Vec<Vec<BigInt>> = sets.iter().map(|&s| indicator(s, n)).collect();
    if linalg::rank_int(&columns) < columns.len() {
        return Err(Error::SingularSystem);
    }
    for e in 1..=n {
        if columns.len() == n {
            break;
        }
        let mut trial = columns.clone();
        trial.push(indicator(SubsetMask::singleton(e), n));
        if linalg::rank_int(&trial) == trial.len() {
            columns = trial;
        }
    }
    let matrix = transpose(&columns);
    let det = linalg::determinant(&matrix);
    debug_assert!(!det.is_zero());
    let cramer: Vec<BigInt> = (0..n)
        .map(|i| {
            let mut replaced = columns.clone();
            replaced[i] = vec![BigInt::one(); n];
            linalg::determinant(&transpose(&replaced))
        })
        .collect();
    if cramer[sets.len()..].iter().any(|d| !d.is_zero()) {
        return Ok(None);
    }
    let g = cramer[..sets.len()].iter().fold(det.clone(), |acc, d| acc.gcd(d));
    let sign = if det.is_negative() { -BigInt::one() } else { BigInt::one() };
    let m = &det / &g * &sign;
    let x: Vec<BigInt> = cramer[..sets.len()].iter().map(|d| d / &g * &sign).collect();
    if x.iter().any(|v| !v.is_positive()) {
        return Ok(None);
    }
    Ok(Some((m, x)))
}

fn transpose(columns: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = columns.first().map_or(0, Vec::len);
    (0..n).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect()
}

/// Irreducible balanced vectors as extreme rays of `{v >= 0, B v ∈ R·1}`.
pub fn enumerate_irreducible_balanced_by_cone(n: usize) -> Result<Vec<BalancedVector>> {
    check_ground_set(n, 1, 5)?;
    let subsets: Vec<SubsetMask> = canonical_subsets(n).into_iter().skip(1).collect();
    let dim = subsets.len();
    let inequalities: Vec<Vec<i64>> = (0..dim)
        .map(|k| (0..dim).map(|c| (c == k) as i64).collect())
        .collect();
    let equalities: Vec<Vec<i64>> = (2..=n)
        .map(|e| {
            subsets
                .iter()
                .map(|s| s.contains(e) as i64 - s.contains(1) as i64)
                .collect()
        })
        .collect();
    let cone = ConeH::from_integer_rows(dim, &inequalities, &equalities)?;
    let mut out: Vec<BalancedVector> = extreme_rays(&cone)?
        .into_iter()
        .map(|ray| {
            let mut entries = vec![Rational::zero(); 1 << n];
            for (s, v) in subsets.iter().zip(ray.direction) {
                entries[s.index()] = Rational::from_integer(v);
            }
            BalancedVector { n, entries }
        })
        .collect();
    sort_canonically(&mut out);
    Ok(out)
}

/// Irreducible balanced vectors from every independent support of at most `N` sets.
pub fn enumerate_irreducible_balanced_by_support(n: usize) -> Result<Vec<BalancedVector>> {
    check_ground_set(n, 1, 5)?;
    let subsets: Vec<SubsetMask> = canonical_subsets(n).into_iter().skip(1).collect();
    let mut supports: Vec<Vec<SubsetMask>> = Vec::new();
    let mut stack: Vec<SubsetMask> = Vec::new();
    collect_supports(&subsets, 0, n, &mut stack, &mut supports);
    let found: Vec<Option<BalancedVector>> = supports
        .par_iter()
        .map(|sets| match complexity_from_support(sets, n) {
            Ok(Some((_, x))) => {
                let mut entries = vec![Rational::zero(); 1 << n];
                for (s, v) in sets.iter().zip(x) {
                    entries[s.index()] = Rational::from_integer(v);
                }
                Some(BalancedVector { n, entries })
            }
            _ => None,
        })
        .collect();
    let unique: BTreeSet<Vec<Rational>> = found.into_iter().flatten().map(|v| v.entries).collect();
    let mut out: Vec<BalancedVector> = unique.into_iter().map(|entries| BalancedVector { n, entries }).collect();
    sort_canonically(&mut out);
    Ok(out)
}

fn collect_supports(
    subsets: &[SubsetMask],
    start: usize,
    limit: usize,
    stack: &mut Vec<SubsetMask>,
    out: &mut Vec<Vec<SubsetMask>>,
) {
    if !stack.is_empty() {
        out.push(stack.clone());
    }
    if stack.len() == limit {
        return;
    }
    for k in start..subsets.len() {
        stack.push(subsets[k]);
        collect_supports(subsets, k + 1, limit, stack, out);
        stack.pop();
    }
}

fn sort_canonically(v: &mut [BalancedVector]) {
    v.sort_by_cached_key(|b| b.canonical_values());
}

/// Both enumeration routes; they must agree exactly.
pub fn enumerate_irreducible_balanced(n: usize) -> Result<Vec<BalancedVector>> {
    let by_cone = enumerate_irreducible_balanced_by_cone(n)?;
    let by_support = enumerate_irreducible_balanced_by_support(n)?;
    if by_cone != by_support {
        return Err(Error::InvariantViolation(format!(
            "balanced enumeration disagrees: {} rays vs {} support solutions",
            by_cone.len(),
            by_support.len()
        )));
    }
    Ok(by_cone)
}

/// Largest determinant of an `N × N` matrix with entries in `{0, 1}` (brute force).
pub fn max_binary_determinant(n: usize) -> Result<BigInt> {
    check_ground_set(n, 1, 4)?;
    let cells = n * n;
    let best = (0u64..1u64 << cells)
        .into_par_iter()
        .map(|bits| {
            let m: Vec<Vec<i64>> = (0..n)
                .map(|r| (0..n).map(|c| ((bits >> (r * n + c)) & 1) as i64).collect())
                .collect();
            linalg::determinant_i64(&m)
        })
        .max()
        .unwrap_or_default();
    Ok(best)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexityBoundReport {
    pub n: usize,
    pub vectors: usize,
    #[serde(serialize_with = "serde_int::bigint")]
    pub max_complexity: BigInt,
    #[serde(serialize_with = "serde_int::bigint")]
    pub max_binary_determinant: BigInt,
    /// `m ≤ (N+1)^{(N+1)/2} / 2^N`, compared exactly as `(m 2^N)^2 ≤ (N+1)^{N+1}`.
    pub within_closed_form: bool,
    pub holds: bool,
}

pub fn verify_complexity_bound(n: usize) -> Result<ComplexityBoundReport> {
    check_ground_set(n, 1, 4)?;
    let vectors = enumerate_irreducible_balanced(n)?;
    let max_complexity = vectors
        .iter()
        .map(complexity_of_balanced)
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .unwrap_or_default();
    let max_det = max_binary_determinant(n)?;
    let within_closed_form = within_hadamard_bound(&max_complexity, n) && within_hadamard_bound(&max_det, n);
    Ok(ComplexityBoundReport {
        n,
        vectors: vectors.len(),
        holds: max_complexity <= max_det && within_closed_form,
        max_complexity,
        max_binary_determinant: max_det,
        within_closed_form,
    })
}

/// `value ≤ (N+1)^{(N+1)/2} / 2^N` without leaving the integers.
pub fn within_hadamard_bound(value: &BigInt, n: usize) -> bool {
    let scaled = value * (BigInt::one() << n);
    &scaled * &scaled <= num_traits::pow(BigInt::from(n + 1), n + 1)
}

/// The ℤ-irreducible bound `m ≤ (N+1)^{(N+1)/2}`, compared as `m² ≤ (N+1)^{N+1}`.
pub fn within_z_irreducible_bound(m: &BigInt, n: usize) -> bool {
    m * m <= num_traits::pow(BigInt::from(n + 1), n + 1)
}

/// Checks the column operations relating `{0, 1}` determinants to `±1`
/// determinants for one matrix and a 1-based column `i`.
pub fn row_operation_check(a: &[Vec<i64>], i: usize) -> Result<bool> {
    let n = a.len();
    if n == 0 || i == 0 || i > n || a.iter().any(|r| r.len() != n) {
        return Err(Error::ParamOutOfRange("square matrix and 1-based column index required".into()));
    }
    if a.iter().flatten().any(|&v| v != 0 && v != 1) {
        return Err(Error::ParamOutOfRange("entries must be 0 or 1".into()));
    }
    let col = i - 1;

    // A_i and A_i': column j ≠ i becomes (column i) − 2 (column j).
    let mut a_i = a.to_vec();
    for row in a_i.iter_mut() {
        row[col] = 1;
    }
    let a_i_prime: Vec<Vec<i64>> = a_i
        .iter()
        .map(|row| {
            (0..n)
                .map(|j| if j == col { row[col] } else { row[col] - 2 * row[j] })
                .collect()
        })
        .collect();
    let signs_ok = a_i_prime.iter().flatten().all(|&v| v == 1 || v == -1);
    let scale = num_traits::pow(BigInt::from(-2), n - 1);
    let second_claim = linalg::determinant_i64(&a_i_prime) == scale * linalg::determinant_i64(&a_i);

    // A' borders A with a first column of ones and a zero top row.
    let mut bordered = vec![vec![0i64; n + 1]; n + 1];
    bordered[0][0] = 1;
    for r in 0..n {
        bordered[r + 1][0] = 1;
        bordered[r + 1][1..].copy_from_slice(&a[r]);
    }
    let det_a = linalg::determinant_i64(a);
    let mut first_claim = linalg::determinant_i64(&bordered) == det_a;
    // Replacing any set of columns c > 1 by (column 1) − (column c) keeps |det|
    // and yields a {0,1} matrix whose first column is all ones.
    let flips: Vec<u32> = if n <= 8 { (0..1u32 << n).collect() } else { vec![0, (1u32 << n) - 1] };
    for mask in flips {
        let flipped: Vec<Vec<i64>> = bordered
            .iter()
            .map(|row| {
                (0..=n)
                    .map(|c| if c > 0 && mask >> (c - 1) & 1 == 1 { row[0] - row[c] } else { row[c] })
                    .collect()
            })
            .collect();
        let binary = flipped.iter().flatten().all(|&v| v == 0 || v == 1) && flipped.iter().all(|r| r[0] == 1);
        first_claim &= binary && linalg::determinant_i64(&flipped).abs() == det_a.abs();
    }
    Ok(signs_ok && second_claim && first_claim)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeterminantStats {
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    pub singular_count: u64,
    #[serde(serialize_with = "serde_int::bigint")]
    pub max_abs_det: BigInt,
    /// Histogram of `|det A| · 2^N`, the matching `±1` determinant of size `N + 1`.
    #[serde(serialize_with = "serde_int::bigint_map")]
    pub scaled_histogram: BTreeMap<BigInt, u64>,
}

impl DeterminantStats {
    pub const CSV_HEADER: &'static str = "N,trials,seed,singular_count,max_abs_det";

    pub fn csv_row(&self) -> String {
        format!("{},{},{},{},{}", self.n, self.trials, self.seed, self.singular_count, self.max_abs_det)
    }
}

/// Determinants of `trials` uniform `{0, 1}` matrices drawn from [`Lcg64`].
pub fn determinant_experiment(n: usize, trials: u64, seed: u64) -> Result<DeterminantStats> {
    check_ground_set(n, 1, 64)?;
    if trials == 0 {
        return Err(Error::ParamOutOfRange("trials must be at least 1".into()));
    }
    let mut rng = Lcg64::new(seed);
    let mut stats = DeterminantStats {
        n,
        trials,
        seed,
        singular_count: 0,
        max_abs_det: BigInt::zero(),
        scaled_histogram: BTreeMap::new(),
    };
    for _ in 0..trials {
        let m = rng.binary_matrix(n);
        let d = linalg::determinant_i64(&m).abs();
        if d.is_zero() {
            stats.singular_count += 1;
        }
        *stats.scaled_histogram.entry(&d << n).or_insert(0) += 1;
        if d > stats.max_abs_det {
            stats.max_abs_det = d;
        }
    }
    Ok(stats)
}
