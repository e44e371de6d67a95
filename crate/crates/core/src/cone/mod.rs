//! The supermodular cone, its extreme rays, irreducibility certificates and
//! conic decompositions.

pub mod dd;

pub use dd::{extreme_rays, extreme_rays_with, ConeH, DdOptions, DdProgress, InsertionOrder, Ray};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::linalg;
use crate::setfn::{close_pairs_unchecked, ClosePair, ModularFunction, SetFunction};
use crate::transform::complexity_of;
use crate::subset::{canonical_subsets, check_ground_set, SubsetMask, MAX_GROUND_SET};

/// Coordinates `f(I)` for `|I| >= 2`, the free values of a standard representative.
#[derive(Debug, Clone)]
pub struct StandardCoordinates {
    n: usize,
    subsets: Vec<SubsetMask>,
    index: Vec<Option<usize>>,
}

impl StandardCoordinates {
    pub fn new(n: usize) -> Result<Self> {
        check_ground_set(n, 2, MAX_GROUND_SET)?;
        let subsets: Vec<SubsetMask> = canonical_subsets(n).into_iter().filter(|s| s.len() >= 2).collect();
        let mut index = vec![None; 1 << n];
        for (k, s) in subsets.iter().enumerate() {
            index[s.index()] = Some(k);
        }
        Ok(StandardCoordinates { n, subsets, index })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.subsets.len()
    }

    pub fn subsets(&self) -> &[SubsetMask] {
        &self.subsets
    }

    /// Coordinates of a normalized function (`f = 0` on `|I| <= 1`).
    pub fn coordinates(&self, f: &SetFunction) -> Vec<Rational> {
        self.subsets.iter().map(|&s| f.value(s).clone()).collect()
    }

    pub fn function(&self, coords: &[Rational]) -> SetFunction {
        SetFunction::from_fn(self.n, |s| match self.index[s.index()] {
            Some(k) => coords[k].clone(),
            None => Rational::zero(),
        })
        .expect("ground set checked")
    }

    pub fn function_from_integers(&self, coords: &[BigInt]) -> SetFunction {
        let rational: Vec<Rational> = coords.iter().cloned().map(Rational::from_integer).collect();
        self.function(&rational)
    }

    /// Row of the linear form `f ↦ s_{I,J}(f)` for every close pair.
    pub fn supermodularity_rows(&self) -> Vec<Vec<i64>> {
        close_pairs_unchecked(self.n)
            .iter()
            .map(|p| {
                let mut row = vec![0i64; self.dim()];
                let mut add = |s: SubsetMask, c: i64| {
                    if let Some(k) = self.index[s.index()] {
                        row[k] += c;
                    }
                };
                add(p.meet, 1);
                add(p.join(), 1);
                add(p.left(), -1);
                add(p.right(), -1);
                row
            })
            .collect()
    }
}

/// `{f : s_{I,J}(f) >= 0}` in standard coordinates; one inequality per close pair.
pub fn supermodular_cone(n: usize) -> Result<ConeH> {
    let coords = StandardCoordinates::new(n)?;
    ConeH::from_integer_rows(coords.dim(), &coords.supermodularity_rows(), &[])
}

/// Standard representatives of every irreducible supermodular function on `[n]`.
pub fn enumerate_irreducible_supermodular(n: usize) -> Result<Vec<SetFunction>> {
    enumerate_irreducible_supermodular_with(n, &DdOptions::default())
}

pub fn enumerate_irreducible_supermodular_with(n: usize, options: &DdOptions<'_>) -> Result<Vec<SetFunction>> {
    check_ground_set(n, 2, 5)?;
    let coords = StandardCoordinates::new(n)?;
    let cone = supermodular_cone(n)?;
    let rays = extreme_rays_with(&cone, options)?;
    debug_assert!(rays.iter().all(|r| r.direction.iter().all(|v| !v.is_negative())));
    Ok(rays.iter().map(|r| coords.function_from_integers(&r.direction)).collect())
}

/// Irreducibles whose supermodularities vanish off the given layers.
///
/// These are the extreme rays of the face `{s_{I,J} = 0 : layer ∉ layers}` of
/// the supermodular cone, enumerated directly on that face.
pub fn enumerate_irreducible_on_layers(n: usize, layers: &[usize]) -> Result<Vec<SetFunction>> {
    check_ground_set(n, 2, 6)?;
    let coords = StandardCoordinates::new(n)?;
    let pairs = close_pairs_unchecked(n);
    let (mut inequalities, mut equalities) = (Vec::new(), Vec::new());
    for (pair, row) in pairs.iter().zip(coords.supermodularity_rows()) {
        if layers.contains(&pair.layer()) {
            inequalities.push(row);
        } else {
            equalities.push(row);
        }
    }
    if inequalities.is_empty() {
        return Ok(Vec::new());
    }
    let cone = ConeH::from_integer_rows(coords.dim(), &inequalities, &equalities)?;
    let mut out: Vec<SetFunction> = extreme_rays(&cone)?
        .iter()
        .map(|r| coords.function_from_integers(&r.direction))
        .collect();
    out.sort_by_cached_key(|f| canonical_subsets(n).into_iter().map(|s| f.value(s).clone()).collect::<Vec<_>>());
    Ok(out)
}

/// Tight close pairs of a supermodular function and the rank they span.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IrreducibilityCertificate {
    pub irreducible: bool,
    pub tight_pairs: Vec<ClosePair>,
    pub rank: usize,
    pub required_rank: usize,
}

/// `f` spans an extreme ray iff its tight close pairs have rank `2^n − n − 2`.
pub fn is_irreducible_supermodular(f: &SetFunction) -> Result<IrreducibilityCertificate> {
    f.ensure_supermodular()?;
    if f.is_modular() {
        return Err(Error::ModularInput);
    }
    let coords = StandardCoordinates::new(f.n())?;
    let rows = coords.supermodularity_rows();
    let pairs = close_pairs_unchecked(f.n());
    let mut tight_pairs = Vec::new();
    let mut tight_rows = Vec::new();
    for (pair, row) in pairs.iter().zip(rows) {
        if f.supermodularity_value(pair).is_zero() {
            tight_pairs.push(*pair);
            tight_rows.push(row.into_iter().map(BigInt::from).collect::<Vec<_>>());
        }
    }
    let rank = linalg::rank_int(&tight_rows);
    let required_rank = coords.dim() - 1;
    Ok(IrreducibilityCertificate {
        irreducible: rank == required_rank,
        tight_pairs,
        rank,
        required_rank,
    })
}

/// Normalized coordinates: `f` minus the modular function matching it on `|I| <= 1`.
fn normalized_coordinates(coords: &StandardCoordinates, f: &SetFunction) -> Result<Vec<Rational>> {
    let shifted = f.try_sub(&ModularFunction::matching_low_sets(f).to_set_function())?;
    Ok(coords.coordinates(&shifted))
}

/// Nonnegative weights `λ_i` with `Σ λ_i · rays[i]` equivalent to `f`.
///
/// Each step picks a ray in the smallest face containing the remainder (the
/// one with the most tight pairs, lowest index on ties) and subtracts the
/// largest multiple that keeps the remainder supermodular. The remainder gains
/// a tight pair every step, so at most `2^n − n − 1` terms appear.
pub fn conic_decompose(f: &SetFunction, rays: &[SetFunction]) -> Result<Vec<(Rational, usize)>> {
    f.ensure_supermodular()?;
    let coords = StandardCoordinates::new(f.n())?;
    let rows: Vec<Vec<Rational>> = coords
        .supermodularity_rows()
        .into_iter()
        .map(|r| r.into_iter().map(crate::rational::int).collect())
        .collect();
    let s_of = |x: &[Rational]| -> Vec<Rational> { rows.iter().map(|r| linalg::dot(r, x)).collect() };

    let mut ray_s = Vec::with_capacity(rays.len());
    for r in rays {
        if r.n() != f.n() {
            return Err(Error::MismatchedGroundSet { left: f.n(), right: r.n() });
        }
        ray_s.push(s_of(&normalized_coordinates(&coords, r)?));
    }
    let mut remainder = s_of(&normalized_coordinates(&coords, f)?);
    let mut terms: Vec<(Rational, usize)> = Vec::new();
    for _ in 0..=coords.dim() {
        if remainder.iter().all(Zero::is_zero) {
            terms.sort_by_key(|t| t.1);
            return Ok(terms);
        }
        let best = ray_s
            .iter()
            .enumerate()
            .filter(|(_, s)| s.iter().any(|v| !v.is_zero()))
            .filter(|(_, s)| s.iter().zip(&remainder).all(|(sv, xv)| !xv.is_zero() || sv.is_zero()))
            .max_by_key(|(i, s)| (s.iter().filter(|v| v.is_zero()).count(), std::cmp::Reverse(*i)));
        let Some((index, s)) = best else {
            return Err(Error::Infeasible);
        };
        let step = s
            .iter()
            .zip(&remainder)
            .filter(|(sv, _)| sv.is_positive())
            .map(|(sv, xv)| xv / sv)
            .min()
            .ok_or(Error::Infeasible)?;
        for (x, sv) in remainder.iter_mut().zip(s) {
            *x -= &step * sv;
        }
        terms.push((step, index));
    }
    Err(Error::Infeasible)
}

/// Checks that `terms` is a valid conic decomposition of `f` over `rays`.
pub fn is_valid_decomposition(f: &SetFunction, rays: &[SetFunction], terms: &[(Rational, usize)]) -> bool {
    let Ok(mut total) = SetFunction::zero(f.n()) else {
        return false;
    };
    for (c, i) in terms {
        if c.is_negative() || *i >= rays.len() {
            return false;
        }
        let Ok(sum) = total.try_add(&rays[*i].scale(c)) else {
            return false;
        };
        total = sum;
    }
    f.equivalent(&total).unwrap_or(false)
}

/// Largest complexity over the enumerated irreducibles of `[n]`.
pub fn max_enumerated_complexity(n: usize) -> Result<u64> {
    let rays = enumerate_irreducible_supermodular(n)?;
    max_complexity(&rays)
}

pub fn max_complexity(rays: &[SetFunction]) -> Result<u64> {
    rays.iter().try_fold(0u64, |best, f| Ok(best.max(complexity_of(f)?)))
}
