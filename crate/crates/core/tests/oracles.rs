//! Independent oracles for the enumeration routines.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use supermod::balanced;
use supermod::cone::{self, DdOptions, InsertionOrder, StandardCoordinates};
use supermod::linalg;
use supermod::matroid;
use supermod::subset::canonical_subsets;
use supermod::{SetFunction, SubsetMask};

fn key(f: &SetFunction) -> Vec<supermod::Rational> {
    canonical_subsets(f.n()).into_iter().map(|s| f.value(s).clone()).collect()
}

/// Every rank-(d-1) set of tight rows whose kernel meets the cone.
fn brute_force_rays(rows: &[Vec<i64>], dim: usize) -> BTreeSet<Vec<BigInt>> {
    let m = rows.len();
    let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    let mut out = BTreeSet::new();
    for mask in 0u64..1 << m {
        if mask.count_ones() as usize != dim - 1 {
            continue;
        }
        let chosen: Vec<Vec<BigInt>> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| big[i].clone()).collect();
        if linalg::rank_int(&chosen) != dim - 1 {
            continue;
        }
        let kernel = linalg::kernel_basis(&linalg::to_rational_rows(&chosen), dim);
        assert_eq!(kernel.len(), 1);
        for sign in [1, -1] {
            let v: Vec<BigInt> = kernel[0].iter().map(|x| x * sign).collect();
            if big.iter().all(|r| !linalg::dot_int(r, &v).is_negative()) {
                out.insert(v);
            }
        }
    }
    out
}

#[test]
fn n3_rays_match_brute_force() {
    let coords = StandardCoordinates::new(3).unwrap();
    let expected = brute_force_rays(&coords.supermodularity_rows(), coords.dim());
    let got: BTreeSet<Vec<BigInt>> = cone::extreme_rays(&cone::supermodular_cone(3).unwrap())
        .unwrap()
        .into_iter()
        .map(|r| r.direction)
        .collect();
    assert_eq!(got, expected);
    assert_eq!(got.len(), 5);
}

fn permute(f: &SetFunction, sigma: &[usize]) -> SetFunction {
    SetFunction::from_fn(f.n(), |s| {
        let image = s.elements().iter().fold(SubsetMask::EMPTY, |acc, &e| acc.with(sigma[e - 1]));
        f.value(image).clone()
    })
    .unwrap()
}

/// `f(I) ↦ f([n] ∖ I)` preserves supermodularity; re-standardize afterwards.
fn complement(f: &SetFunction) -> SetFunction {
    let full = SubsetMask::full(f.n());
    SetFunction::from_fn(f.n(), |s| f.value(full.difference(s)).clone())
        .unwrap()
        .standardize()
        .unwrap()
}

#[test]
fn n4_rays_closed_under_symmetry() {
    let rays = cone::enumerate_irreducible_supermodular(4).unwrap();
    let set: BTreeSet<Vec<supermod::Rational>> = rays.iter().map(key).collect();
    assert_eq!(set.len(), 37);
    for f in &rays {
        assert!(set.contains(&key(&complement(f))));
        for sigma in supermod::perm::permutations(4) {
            assert!(set.contains(&key(&permute(f, &sigma))));
        }
    }
}

#[test]
fn insertion_order_does_not_change_rays() {
    for n in 3..=4 {
        let reference = cone::enumerate_irreducible_supermodular(n).unwrap();
        for order in [InsertionOrder::Given, InsertionOrder::LexMin, InsertionOrder::MostBalanced] {
            let options = DdOptions { order, progress: None };
            assert_eq!(cone::enumerate_irreducible_supermodular_with(n, &options).unwrap(), reference);
        }
    }
}

#[test]
fn every_ray_is_certified_irreducible() {
    for n in 2..=4 {
        for f in cone::enumerate_irreducible_supermodular(n).unwrap() {
            assert!(f.is_standard());
            assert!(cone::is_irreducible_supermodular(&f).unwrap().irreducible);
        }
    }
}

#[test]
fn sums_of_distinct_rays_are_reducible() {
    let rays = cone::enumerate_irreducible_supermodular(4).unwrap();
    for (i, f) in rays.iter().enumerate() {
        for g in &rays[i + 1..] {
            assert!(!cone::is_irreducible_supermodular(&(f + g)).unwrap().irreducible);
        }
    }
}

#[test]
fn balanced_enumeration_methods_agree_at_four() {
    let by_cone = balanced::enumerate_irreducible_balanced_by_cone(4).unwrap();
    let by_support = balanced::enumerate_irreducible_balanced_by_support(4).unwrap();
    assert_eq!(by_cone, by_support);
    let report = balanced::verify_complexity_bound(4).unwrap();
    assert!(report.holds);
}

#[test]
fn max_binary_determinant_matches_expansion() {
    for n in 1..=3 {
        let cells = n * n;
        let mut best = 0i128;
        for bits in 0u64..1 << cells {
            let m: Vec<Vec<i64>> = (0..n).map(|r| (0..n).map(|c| (bits >> (r * n + c) & 1) as i64).collect()).collect();
            best = best.max(linalg::determinant_by_expansion(&m));
        }
        assert_eq!(balanced::max_binary_determinant(n).unwrap(), BigInt::from(best));
    }
}

#[test]
fn exhaustive_n3_experiment_max() {
    let mut best = BigInt::zero();
    for bits in 0u32..512 {
        let m: Vec<Vec<i64>> = (0..3).map(|r| (0..3).map(|c| (bits >> (r * 3 + c) & 1) as i64).collect()).collect();
        best = best.max(linalg::determinant_i64(&m).abs());
    }
    let stats = balanced::determinant_experiment(3, 10_000, 11).unwrap();
    assert!(stats.max_abs_det <= best);
    assert_eq!(best, BigInt::from(2));
}

#[test]
fn loopless_matroid_counts() {
    // Labeled loopless matroids on [n] for n = 0..=4.
    let counts: Vec<usize> = (0..=4).map(|n| matroid::enumerate_loopless_matroids(n).unwrap().len()).collect();
    assert_eq!(counts[..3], [1, 1, 2]);
    for n in 1..=4 {
        let simple_standard: BTreeSet<Vec<supermod::Rational>> = matroid::enumerate_loopless_matroids(n)
            .unwrap()
            .iter()
            .map(|m| key(&matroid::matroid_to_supermodular(m).unwrap()))
            .collect();
        assert_eq!(simple_standard.len(), counts[n]);
    }
}

/// Standard functions with every derivative constant 0 or a 0/1 up function,
/// found by scanning all values `0 <= f(I) <= |I| − 1`.
fn unit_simple_functions(n: usize) -> BTreeSet<Vec<supermod::Rational>> {
    let coords = StandardCoordinates::new(n).unwrap();
    let sizes: Vec<i64> = coords.subsets().iter().map(|s| s.len() as i64).collect();
    let mut values = vec![0i64; sizes.len()];
    let mut out = BTreeSet::new();
    loop {
        let ints: Vec<BigInt> = values.iter().map(|&v| BigInt::from(v)).collect();
        let f = coords.function_from_integers(&ints);
        if f.is_supermodular() {
            let unit = (1..=n).all(|i| {
                let d = f.discrete_derivative(i).unwrap();
                d.values().iter().all(|v| v.is_zero() || *v == supermod::rational::int(1))
                    && (d.is_constant() || supermod::nondecreasing::is_irreducible_nondecreasing(&d).unwrap().is_some())
            });
            if unit {
                out.insert(key(&f));
            }
        }
        let mut k = 0;
        loop {
            if k == values.len() {
                return out;
            }
            values[k] += 1;
            if values[k] < sizes[k] {
                break;
            }
            values[k] = 0;
            k += 1;
        }
    }
}

#[test]
fn nullity_functions_are_the_unit_simple_functions() {
    for n in 2..=4 {
        let nullities: BTreeSet<Vec<supermod::Rational>> = matroid::enumerate_loopless_matroids(n)
            .unwrap()
            .iter()
            .map(|m| key(&matroid::matroid_to_supermodular(m).unwrap()))
            .collect();
        assert_eq!(nullities, unit_simple_functions(n), "n = {n}");
    }
}

#[test]
fn scaled_direct_sum_is_simple_but_not_a_nullity() {
    let f = SetFunction::from_integers(4, |s| {
        let a = (s.contains(1) && s.contains(2)) as i64;
        let b = (s.contains(3) && s.contains(4)) as i64;
        a + 2 * b
    })
    .unwrap();
    assert!(f.is_standard());
    assert!(matroid::is_simple(&f).unwrap());
    assert!(matches!(matroid::supermodular_to_matroid(&f), Err(supermod::Error::NotZeroOne(_))));
}
