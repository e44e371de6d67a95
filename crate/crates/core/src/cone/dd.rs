//! Double description method for pointed polyhedral cones.
//!
//! The cone `{x : E x = 0, A x >= 0}` is first restricted to an integer basis
//! of `ker E`. Inequalities are then inserted one at a time into the ray set
//! of an initial simplicial cone; a new ray is formed from every adjacent
//! (positive, negative) pair, with adjacency decided combinatorially: no
//! third ray is tight on every constraint the pair shares.
//!
//! Arithmetic is integer throughout. The engine first runs on `i64` with
//! checked `i128` intermediates and restarts on `BigInt` if anything
//! overflows.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{primitive_bigint_vector, primitive_integer_vector, Rational};

/// H-representation `{x : equalities · x = 0, inequalities · x >= 0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeH {
    pub dim: usize,
    pub inequalities: Vec<Vec<Rational>>,
    pub equalities: Vec<Vec<Rational>>,
}

impl ConeH {
    pub fn new(
        dim: usize,
        inequalities: Vec<Vec<Rational>>,
        equalities: Vec<Vec<Rational>>,
    ) -> Result<Self> {
        for row in inequalities.iter().chain(&equalities) {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
        }
        Ok(ConeH {
            dim,
            inequalities,
            equalities,
        })
    }

    pub fn from_integer_rows(dim: usize, inequalities: &[Vec<i64>], equalities: &[Vec<i64>]) -> Result<Self> {
        let conv = |rows: &[Vec<i64>]| -> Vec<Vec<Rational>> {
            rows.iter()
                .map(|r| r.iter().map(|&v| crate::rational::int(v)).collect())
                .collect()
        };
        Self::new(dim, conv(inequalities), conv(equalities))
    }
}

/// An extreme ray: primitive integer direction plus the inequalities it meets
/// with equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ray {
    pub direction: Vec<BigInt>,
    pub tight: Vec<usize>,
}

/// Order in which inequalities enter the double description.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InsertionOrder {
    /// Input order. For the supermodular cone this is close-pair order,
    /// which keeps intermediate ray sets smallest.
    #[default]
    Given,
    /// Rows sorted lexicographically, smallest first.
    LexMin,
    /// Next row is the one creating the fewest (positive, negative) pairs.
    FewestPairs,
    /// Next row is the one whose positive/negative split is most balanced.
    MostBalanced,
}

/// Progress snapshot passed to [`DdOptions::progress`].
#[derive(Debug, Clone, Copy)]
pub struct DdProgress {
    pub inserted: usize,
    pub total: usize,
    pub rays: usize,
}

#[derive(Default)]
pub struct DdOptions<'a> {
    pub order: InsertionOrder,
    pub progress: Option<&'a (dyn Fn(DdProgress) + Sync)>,
}

/// All extreme rays of a pointed cone, sorted lexicographically by direction.
pub fn extreme_rays(cone: &ConeH) -> Result<Vec<Ray>> {
    extreme_rays_with(cone, &DdOptions::default())
}

pub fn extreme_rays_with(cone: &ConeH, options: &DdOptions<'_>) -> Result<Vec<Ray>> {
    let inequalities: Vec<Vec<BigInt>> = cone
        .inequalities
        .iter()
        .map(|r| primitive_integer_vector(r).unwrap_or_else(|| vec![BigInt::zero(); cone.dim]))
        .collect();

    // Coordinates for the subspace cut out by the equalities.
    let basis: Vec<Vec<BigInt>> = if cone.equalities.is_empty() {
        (0..cone.dim)
            .map(|i| {
                let mut e = vec![BigInt::zero(); cone.dim];
                e[i] = BigInt::one();
                e
            })
            .collect()
    } else {
        linalg::kernel_basis(&cone.equalities, cone.dim)
    };
    let k = basis.len();
    if k == 0 {
        return Ok(Vec::new());
    }
    let reduced: Vec<Vec<BigInt>> = inequalities
        .iter()
        .map(|row| {
            let projected: Vec<BigInt> = basis.iter().map(|b| linalg::dot_int(row, b)).collect();
            primitive_bigint_vector(projected)
        })
        .collect();
    if linalg::rank_int(&reduced) < k {
        return Err(Error::NotPointed);
    }

    let small: Option<Vec<Vec<i64>>> = reduced
        .iter()
        .map(|r| r.iter().map(|v| v.to_i64()).collect())
        .collect();
    let rays_y: Vec<Vec<BigInt>> = match small.and_then(|rows| run::<i64>(&rows, k, options)) {
        Some(rays) => rays
            .into_iter()
            .map(|r| r.into_iter().map(BigInt::from).collect())
            .collect(),
        None => run::<BigInt>(&reduced, k, options).expect("BigInt arithmetic cannot overflow"),
    };

    let mut rays: Vec<Ray> = rays_y
        .into_iter()
        .map(|y| {
            let x: Vec<BigInt> = (0..cone.dim)
                .map(|c| basis.iter().zip(&y).map(|(b, yi)| &b[c] * yi).sum())
                .collect();
            let direction = primitive_bigint_vector(x);
            let tight = inequalities
                .iter()
                .enumerate()
                .filter(|(_, a)| linalg::dot_int(a, &direction).is_zero())
                .map(|(i, _)| i)
                .collect();
            Ray { direction, tight }
        })
        .collect();
    rays.sort_by(|a, b| cmp_vectors(&a.direction, &b.direction));
    rays.dedup_by(|a, b| a.direction == b.direction);

    // Each output ray must be tight on a rank-(k - 1) set of reduced rows.
    for ray in &rays {
        let rows: Vec<Vec<BigInt>> = ray.tight.iter().map(|&i| reduced[i].clone()).collect();
        let r = rank_checked(&rows);
        assert_eq!(r, k - 1, "double description produced a non-extreme ray");
    }
    Ok(rays)
}

pub fn cmp_vectors(a: &[BigInt], b: &[BigInt]) -> Ordering {
    a.iter().cmp(b.iter())
}

fn rank_checked(rows: &[Vec<BigInt>]) -> usize {
    let small: Option<Vec<Vec<i64>>> = rows
        .iter()
        .map(|r| r.iter().map(|v| v.to_i64()).collect())
        .collect();
    small
        .and_then(rank_scalar)
        .unwrap_or_else(|| linalg::rank_int(rows))
}

/// Integer scalar used by the engine.
pub(crate) trait Scalar: Clone + Send + Sync + Sized {
    fn from_big(v: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn signum(&self) -> i32;
    fn dot(a: &[Self], b: &[Self]) -> Option<Self>;
    /// `out = vp * q - vq * p`, divided by the gcd of its entries.
    fn combine(vp: &Self, q: &[Self], vq: &Self, p: &[Self], out: &mut Vec<Self>) -> Option<()>;
}

impl Scalar for i64 {
    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i64()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn signum(&self) -> i32 {
        i64::signum(*self) as i32
    }
    fn dot(a: &[Self], b: &[Self]) -> Option<Self> {
        let mut acc: i128 = 0;
        for (x, y) in a.iter().zip(b) {
            acc = acc.checked_add(*x as i128 * *y as i128)?;
        }
        i64::try_from(acc).ok()
    }
    fn combine(vp: &Self, q: &[Self], vq: &Self, p: &[Self], out: &mut Vec<Self>) -> Option<()> {
        let mut wide: Vec<i128> = Vec::with_capacity(q.len());
        let mut g: i128 = 0;
        for (qi, pi) in q.iter().zip(p) {
            let v = (*vp as i128)
                .checked_mul(*qi as i128)?
                .checked_sub((*vq as i128).checked_mul(*pi as i128)?)?;
            g = g.gcd(&v);
            wide.push(v);
        }
        out.clear();
        for v in wide {
            let v = if g > 1 { v / g } else { v };
            out.push(i64::try_from(v).ok()?);
        }
        Some(())
    }
}

impl Scalar for BigInt {
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn signum(&self) -> i32 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }
    fn dot(a: &[Self], b: &[Self]) -> Option<Self> {
        Some(a.iter().zip(b).map(|(x, y)| x * y).sum())
    }
    fn combine(vp: &Self, q: &[Self], vq: &Self, p: &[Self], out: &mut Vec<Self>) -> Option<()> {
        out.clear();
        out.extend(q.iter().zip(p).map(|(qi, pi)| vp * qi - vq * pi));
        let g = out.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        if !g.is_zero() && !g.is_one() {
            for v in out.iter_mut() {
                *v /= &g;
            }
        }
        Some(())
    }
}

fn rank_scalar<S: Scalar>(mut rows: Vec<Vec<S>>) -> Option<usize> {
    let height = rows.len();
    let width = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    let mut scratch = Vec::new();
    for c in 0..width {
        if r == height {
            break;
        }
        let Some(p) = (r..height).find(|&i| rows[i][c].signum() != 0) else {
            continue;
        };
        rows.swap(r, p);
        for i in r + 1..height {
            if rows[i][c].signum() == 0 {
                continue;
            }
            let a = rows[r][c].clone();
            let b = rows[i][c].clone();
            S::combine(&a, &rows[i], &b, &rows[r], &mut scratch)?;
            std::mem::swap(&mut rows[i], &mut scratch);
        }
        r += 1;
    }
    Some(r)
}

/// Flat storage: `coords` has stride `k`, `zeros` has stride `words`.
struct RaySet<S> {
    k: usize,
    words: usize,
    coords: Vec<S>,
    zeros: Vec<u64>,
}

impl<S: Scalar> RaySet<S> {
    fn new(k: usize, words: usize) -> Self {
        RaySet {
            k,
            words,
            coords: Vec::new(),
            zeros: Vec::new(),
        }
    }

    fn len(&self) -> usize {
        self.coords.len().checked_div(self.k).unwrap_or(0)
    }

    fn coords(&self, i: usize) -> &[S] {
        &self.coords[i * self.k..(i + 1) * self.k]
    }

    fn zeros(&self, i: usize) -> &[u64] {
        &self.zeros[i * self.words..(i + 1) * self.words]
    }

    fn push(&mut self, coords: &[S], zeros: &[u64]) {
        self.coords.extend_from_slice(coords);
        self.zeros.extend_from_slice(zeros);
    }
}

fn set_bit(words: &mut [u64], bit: usize) {
    words[bit / 64] |= 1 << (bit % 64);
}

fn is_subset(small: &[u64], big: &[u64]) -> bool {
    small.iter().zip(big).all(|(s, b)| s & !b == 0)
}

fn run<S: Scalar>(rows: &[Vec<S>], k: usize, options: &DdOptions<'_>) -> Option<Vec<Vec<S>>> {
    let m = rows.len();
    let words = m.div_ceil(64).max(1);

    let mut pending: Vec<usize> = (0..m).collect();
    if options.order == InsertionOrder::LexMin {
        let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(S::to_big).collect()).collect();
        pending.sort_by(|&a, &b| cmp_vectors(&big[a], &big[b]).then(a.cmp(&b)));
    }

    // Initial simplicial cone from the first k independent rows.
    let mut chosen: Vec<usize> = Vec::with_capacity(k);
    let mut echelon: Vec<Vec<Rational>> = Vec::new();
    for &i in &pending {
        if chosen.len() == k {
            break;
        }
        let mut trial = echelon.clone();
        trial.push(rows[i].iter().map(|v| Rational::from_integer(v.to_big())).collect());
        if linalg::rank(&trial) > echelon.len() {
            echelon = trial;
            chosen.push(i);
        }
    }
    debug_assert_eq!(chosen.len(), k);
    pending.retain(|i| !chosen.contains(i));

    let mut rays = RaySet::<S>::new(k, words);
    {
        let mut aug: Vec<Vec<Rational>> = echelon
            .iter()
            .enumerate()
            .map(|(r, row)| {
                let mut out = row.clone();
                out.extend((0..k).map(|c| if c == r { Rational::one() } else { Rational::zero() }));
                out
            })
            .collect();
        linalg::rref(&mut aug);
        for j in 0..k {
            let column: Vec<Rational> = (0..k).map(|r| aug[r][k + j].clone()).collect();
            let dir = primitive_integer_vector(&column)?;
            let dir: Vec<S> = dir.iter().map(S::from_big).collect::<Option<_>>()?;
            let mut zeros = vec![0u64; words];
            for (c, &row) in chosen.iter().enumerate() {
                if c != j {
                    set_bit(&mut zeros, row);
                }
            }
            rays.push(&dir, &zeros);
        }
    }

    let total = m;
    let mut inserted = k;
    while !pending.is_empty() {
        let pick = match options.order {
            InsertionOrder::Given | InsertionOrder::LexMin => 0,
            InsertionOrder::FewestPairs | InsertionOrder::MostBalanced => {
                let scores: Vec<(u128, usize)> = pending
                    .par_iter()
                    .enumerate()
                    .map(|(pos, &row)| {
                        let (mut p, mut n) = (0u128, 0u128);
                        for r in 0..rays.len() {
                            match S::dot(&rows[row], rays.coords(r)).map(|v| v.signum()) {
                                Some(1) => p += 1,
                                Some(-1) => n += 1,
                                _ => {}
                            }
                        }
                        let score = match options.order {
                            InsertionOrder::FewestPairs => p * n,
                            _ => u128::MAX - p.min(n),
                        };
                        (score, pos)
                    })
                    .collect();
                scores.into_iter().min().map(|(_, pos)| pos).unwrap_or(0)
            }
        };
        let row = pending.remove(pick);
        rays = insert_row(rays, &rows[row], row, k)?;
        inserted += 1;
        if let Some(cb) = options.progress {
            cb(DdProgress {
                inserted,
                total,
                rays: rays.len(),
            });
        }
    }

    Some((0..rays.len()).map(|i| rays.coords(i).to_vec()).collect())
}

/// Coordinates and tight-row bitmap of a ray created by an insertion.
type NewRay<S> = (Vec<S>, Vec<u64>);

fn insert_row<S: Scalar>(rays: RaySet<S>, row: &[S], row_index: usize, k: usize) -> Option<RaySet<S>> {
    let count = rays.len();
    let values: Vec<S> = (0..count)
        .into_par_iter()
        .map(|i| S::dot(row, rays.coords(i)))
        .collect::<Option<_>>()?;
    let mut positive = Vec::new();
    let mut negative = Vec::new();
    let mut zero = Vec::new();
    for (i, v) in values.iter().enumerate() {
        match v.signum() {
            1 => positive.push(i),
            -1 => negative.push(i),
            _ => zero.push(i),
        }
    }

    let words = rays.words;
    let mut next = RaySet::<S>::new(rays.k, words);
    if negative.is_empty() {
        for i in 0..count {
            let mut z = rays.zeros(i).to_vec();
            if values[i].signum() == 0 {
                set_bit(&mut z, row_index);
            }
            next.push(rays.coords(i), &z);
        }
        return Some(next);
    }

    // Any partner q of p, and any ray blocking the pair, shares at least
    // k - 2 tight rows with p. Collect those neighbours once per p.
    let need = k.saturating_sub(2) as u32;
    let is_negative: Vec<bool> = values.iter().map(|v| v.signum() < 0).collect();

    let created: Vec<Option<Vec<NewRay<S>>>> = positive
        .par_iter()
        .map(|&p| {
            let zp = rays.zeros(p);
            // near holds zeros(p) & zeros(r) for each neighbour r.
            let mut near: Vec<u64> = Vec::new();
            let mut partners: Vec<(usize, usize)> = Vec::new();
            for r in 0..count {
                if r == p {
                    continue;
                }
                let zr = rays.zeros(r);
                let size: u32 = zp.iter().zip(zr).map(|(a, b)| (a & b).count_ones()).sum();
                if size < need {
                    continue;
                }
                if is_negative[r] {
                    partners.push((near.len() / words, r));
                }
                near.extend(zp.iter().zip(zr).map(|(a, b)| a & b));
            }
            // A blocker's shared set contains the pair's, so it is at least
            // as large: scan neighbours from the largest shared set down.
            let slots = near.len() / words;
            let mut by_size: Vec<(u32, usize)> = (0..slots)
                .map(|t| (near[t * words..(t + 1) * words].iter().map(|w| w.count_ones()).sum(), t))
                .collect();
            by_size.sort_unstable_by(|a, b| b.cmp(a));
            let mut out = Vec::new();
            let mut scratch = Vec::with_capacity(k);
            for &(s, q) in &partners {
                let common = &near[s * words..(s + 1) * words];
                let size: u32 = common.iter().map(|w| w.count_ones()).sum();
                let blocked = by_size
                    .iter()
                    .take_while(|(c, _)| *c >= size)
                    .any(|&(_, t)| t != s && is_subset(common, &near[t * words..(t + 1) * words]));
                if blocked {
                    continue;
                }
                S::combine(&values[p], rays.coords(q), &values[q], rays.coords(p), &mut scratch)?;
                let mut z = common.to_vec();
                set_bit(&mut z, row_index);
                out.push((scratch.clone(), z));
            }
            Some(out)
        })
        .collect();

    for &i in positive.iter() {
        next.push(rays.coords(i), rays.zeros(i));
    }
    for &i in zero.iter() {
        let mut z = rays.zeros(i).to_vec();
        set_bit(&mut z, row_index);
        next.push(rays.coords(i), &z);
    }
    for batch in created {
        for (c, z) in batch? {
            next.push(&c, &z);
        }
    }
    Some(next)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ray_dirs(rays: &[Ray]) -> Vec<Vec<i64>> {
        rays.iter()
            .map(|r| r.direction.iter().map(|v| v.to_i64().unwrap()).collect())
            .collect()
    }

    #[test]
    fn positive_quadrant() {
        let cone = ConeH::from_integer_rows(2, &[vec![1, 0], vec![0, 1]], &[]).unwrap();
        let rays = extreme_rays(&cone).unwrap();
        assert_eq!(ray_dirs(&rays), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(rays[0].tight, vec![0]);
    }

    #[test]
    fn square_pyramid() {
        // Cone over a square: x0 +- x1 >= 0, x0 +- x2 >= 0.
        let rows = vec![vec![1, 1, 0], vec![1, -1, 0], vec![1, 0, 1], vec![1, 0, -1]];
        let cone = ConeH::from_integer_rows(3, &rows, &[]).unwrap();
        for order in [
            InsertionOrder::Given,
            InsertionOrder::LexMin,
            InsertionOrder::FewestPairs,
            InsertionOrder::MostBalanced,
        ] {
            let rays = extreme_rays_with(&cone, &DdOptions { order, progress: None }).unwrap();
            assert_eq!(
                ray_dirs(&rays),
                vec![vec![1, -1, -1], vec![1, -1, 1], vec![1, 1, -1], vec![1, 1, 1]]
            );
        }
    }

    #[test]
    fn equalities_restrict_the_cone() {
        // x >= 0 in R^3 with x0 = x1.
        let cone = ConeH::from_integer_rows(
            3,
            &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
            &[vec![1, -1, 0]],
        )
        .unwrap();
        let rays = extreme_rays(&cone).unwrap();
        assert_eq!(ray_dirs(&rays), vec![vec![0, 0, 1], vec![1, 1, 0]]);
    }

    #[test]
    fn non_pointed_and_mismatched() {
        let cone = ConeH::from_integer_rows(2, &[vec![1, 0]], &[]).unwrap();
        assert_eq!(extreme_rays(&cone), Err(Error::NotPointed));
        assert!(matches!(
            ConeH::from_integer_rows(2, &[vec![1, 0, 0]], &[]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn redundant_rows_do_not_create_rays() {
        let cone = ConeH::from_integer_rows(
            2,
            &[vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 1]],
            &[],
        )
        .unwrap();
        assert_eq!(ray_dirs(&extreme_rays(&cone).unwrap()), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn bigint_fallback_matches() {
        let huge = 1i64 << 40;
        let rows = vec![vec![huge, 1, 0], vec![huge, -1, 0], vec![huge, 0, 1], vec![huge, 0, -1]];
        let cone = ConeH::from_integer_rows(3, &rows, &[]).unwrap();
        let rays = extreme_rays(&cone).unwrap();
        assert_eq!(rays.len(), 4);
        assert_eq!(rays[0].direction, vec![BigInt::from(1), BigInt::from(-huge), BigInt::from(-huge)]);
    }
}
