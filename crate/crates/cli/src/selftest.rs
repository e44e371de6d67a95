use supermod::balanced::{self, SubsetMultiset};
use supermod::cone;
use supermod::matroid;
use supermod::rng::{random_supermodular, Lcg64};
use supermod::transform;
use supermod::twolayer;

use crate::io::{CliResult, Emitter};
use crate::{Cli, Outcome};

type Check = (&'static str, fn() -> supermod::Result<bool>);

fn ray_count(n: usize, expected: usize) -> supermod::Result<bool> {
    Ok(cone::enumerate_irreducible_supermodular(n)?.len() == expected)
}

fn transform_roundtrip() -> supermod::Result<bool> {
    let mut rng = Lcg64::new(7);
    for n in 3..=4 {
        for _ in 0..25 {
            let f = random_supermodular(n, &mut rng)?;
            let s = transform::apply_t(&f)?;
            let weights = transform::path_sum_weights(&s)?;
            if weights.as_ref() != Some(&transform::color_weights(&f)) {
                return Ok(false);
            }
            if !transform::reconstruct(&s)?.equivalent(&f)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn balanced_example() -> supermod::Result<bool> {
    let m = SubsetMultiset::from_digit_strings(4, &["1", "1", "23", "24", "34"])?;
    let v = m.to_vector();
    Ok(balanced::complexity_of_balanced(&v)? == 2.into()
        && balanced::is_z_irreducible(&m)?
        && balanced::is_irreducible_balanced(&v)?.irreducible)
}

fn balanced_dual_enumeration() -> supermod::Result<bool> {
    Ok(balanced::enumerate_irreducible_balanced(3).is_ok())
}

fn matroid_roundtrip() -> supermod::Result<bool> {
    for m in matroid::enumerate_loopless_matroids(4)? {
        let f = matroid::matroid_to_supermodular(&m)?;
        if matroid::supermodular_to_matroid(&f)? != m {
            return Ok(false);
        }
    }
    Ok(true)
}

fn two_layer_identity() -> supermod::Result<bool> {
    for n in 3..=6 {
        for t in 1..=n - 2 {
            if !twolayer::verify_two_layer_identity(n, t)? {
                return Ok(false);
            }
        }
    }
    Ok(twolayer::enumerate_two_layer(4, 1)?.len() == 10 && twolayer::enumerate_two_layer(5, 2)?.len() == 12)
}

const CHECKS: &[Check] = &[
    ("ray count n=2 is 1", || ray_count(2, 1)),
    ("ray count n=3 is 5", || ray_count(3, 5)),
    ("ray count n=4 is 37", || ray_count(4, 37)),
    ("path sums and reconstruction", transform_roundtrip),
    ("balanced example has complexity 2", balanced_example),
    ("balanced enumeration methods agree at N=3", balanced_dual_enumeration),
    ("matroid roundtrip n=4", matroid_roundtrip),
    ("two-layer identity n<=6 and family sizes", two_layer_identity),
];

pub fn run(cli: &Cli) -> CliResult<Outcome> {
    let mut out = Emitter::new(cli.out.clone());
    let mut all = true;
    for (name, check) in CHECKS {
        let passed = match check() {
            Ok(b) => b,
            Err(e) => {
                eprintln!("{name}: {e}");
                false
            }
        };
        all &= passed;
        out.line(&format!("{} {name}", if passed { "PASS" } else { "FAIL" }));
    }
    out.finish()?;
    Ok(Outcome::from(all))
}
