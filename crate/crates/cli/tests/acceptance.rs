//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed};

use supermod::balanced::{self, SubsetMultiset};
use supermod::cone;
use supermod::linalg;
use supermod::matroid::{self, Matroid};
use supermod::perm::permutations;
use supermod::rational::{int, Rational};
use supermod::rng::{random_integer_function, random_supermodular, Lcg64};
use supermod::transform::{self, SupermodularityVector};
use supermod::twolayer;
use supermod::SetFunction;

type Outcome = Result<String, String>;
type Check = fn() -> Outcome;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn values(f: &SetFunction) -> Vec<Rational> {
    f.values().to_vec()
}

fn value_set(fs: &[SetFunction]) -> BTreeSet<Vec<Rational>> {
    fs.iter().map(values).collect()
}

static RAYS5: OnceLock<(Vec<SetFunction>, Duration)> = OnceLock::new();

fn rays5() -> &'static (Vec<SetFunction>, Duration) {
    RAYS5.get_or_init(|| {
        let start = Instant::now();
        let rays = cone::enumerate_irreducible_supermodular(5).expect("n = 5 enumeration");
        (rays, start.elapsed())
    })
}

fn rays(n: usize) -> Vec<SetFunction> {
    if n == 5 {
        rays5().0.clone()
    } else {
        cone::enumerate_irreducible_supermodular(n).unwrap()
    }
}

fn ray_counts() -> Outcome {
    let mut detail = Vec::new();
    for (n, expected, limit) in [(3, 5, 1.0), (4, 37, 10.0)] {
        let start = Instant::now();
        let count = cone::enumerate_irreducible_supermodular(n).map_err(|e| e.to_string())?.len();
        let secs = start.elapsed().as_secs_f64();
        ensure(count == expected, || format!("n={n}: {count} rays, expected {expected}"))?;
        ensure(secs < limit, || format!("n={n}: {secs:.2}s exceeds {limit}s"))?;
        detail.push(format!("n={n}: {count} in {secs:.3}s"));
    }
    let (r5, time) = rays5();
    ensure(r5.len() == 117_978, || format!("n=5: {} rays, expected 117978", r5.len()))?;
    ensure(time.as_secs() < 7200, || format!("n=5 took {time:?}"))?;
    detail.push(format!("n=5: {} in {:.1}s", r5.len(), time.as_secs_f64()));
    Ok(detail.join(", "))
}

fn n3_identities() -> Outcome {
    let mut expected = vec![twolayer::alpha(3, 1).unwrap(), twolayer::alpha(3, 2).unwrap()];
    for k in 1..=3usize {
        expected.push(
            SetFunction::from_integers(3, |s| {
                let rest = s.len() - usize::from(s.contains(k));
                rest.saturating_sub(1) as i64
            })
            .unwrap(),
        );
    }
    let found = rays(3);
    ensure(value_set(&found) == value_set(&expected) && found.len() == 5, || {
        "n=3 rays differ from alpha_{3,1}, alpha_{3,2} and the three lifts".into()
    })?;
    Ok("rays = {alpha31, alpha32, max(0,|I\\k|-1) for k=1,2,3}".into())
}

fn path_sums_and_reconstruction() -> Outcome {
    let mut rng = Lcg64::new(2024);
    for n in 3..=5 {
        let perms = permutations(n);
        for trial in 0..200 {
            let f = random_supermodular(n, &mut rng).unwrap();
            ensure(f.is_integral() && f.is_supermodular(), || format!("n={n}: bad random input"))?;
            let s = transform::apply_t(&f).unwrap();
            let w = transform::color_weights(&f);
            for sigma in &perms {
                let p = transform::path_sum(&s, sigma).unwrap();
                ensure(p == w.0[sigma[0] - 1], || format!("n={n} trial {trial}: path sum {p} for {sigma:?}"))?;
            }
            let g = transform::reconstruct(&s).unwrap();
            ensure(g.equivalent(&f).unwrap(), || format!("n={n} trial {trial}: reconstruction differs"))?;
        }
    }
    let mut in_image = 0;
    for n in 3..=4 {
        let rows: Vec<Vec<BigInt>> =
            transform::t_matrix(n).unwrap().into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
        let a = linalg::to_rational_rows(&rows);
        let len = rows.len();
        for trial in 0..200 {
            // Half the vectors come from T, half are T-images with a few
            // entries nudged, so both answers occur.
            let f = random_integer_function(n, -5, 5, &mut rng).unwrap();
            let mut entries = transform::apply_t(&f).unwrap().entries().to_vec();
            if trial % 2 == 1 {
                for _ in 0..1 + rng.below(3) {
                    let i = rng.below(len as u32) as usize;
                    entries[i] += int(rng.range(-2, 2));
                }
            }
            let s = SupermodularityVector::new(n, entries).unwrap();
            let algebraic = linalg::solve(&a, s.entries()).is_some();
            let local = transform::in_image_t(&s);
            let paths = transform::path_sum_weights(&s).unwrap().is_some();
            ensure(algebraic == local && local == paths, || {
                format!("n={n} trial {trial}: image {algebraic}, local {local}, path sums {paths}")
            })?;
            in_image += usize::from(algebraic);
        }
    }
    Ok(format!("600 functions checked on all paths; 400 vectors agree ({in_image} in image)"))
}

fn image_dimension() -> Outcome {
    let mut detail = Vec::new();
    for n in 3..=5 {
        let rows: Vec<Vec<BigInt>> =
            transform::t_matrix(n).unwrap().into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
        let rank = linalg::rank_int(&rows);
        let expected = (1 << n) - n - 1;
        ensure(rank == expected, || format!("n={n}: rank {rank}, expected {expected}"))?;
        detail.push(format!("n={n}: {rank}"));
    }
    Ok(detail.join(", "))
}

fn balanced_suite() -> Outcome {
    let example = SubsetMultiset::from_digit_strings(4, &["1", "1", "23", "24", "34"]).unwrap();
    let v = example.to_vector();
    let m = balanced::complexity_of_balanced(&v).map_err(|e| e.to_string())?;
    ensure(m == BigInt::from(2), || format!("example complexity {m}"))?;
    ensure(balanced::is_z_irreducible(&example).unwrap(), || "example not Z-irreducible".into())?;
    ensure(balanced::is_irreducible_balanced(&v).unwrap().irreducible, || "example not irreducible".into())?;

    let five = SubsetMultiset::from_digit_strings(5, &["1234", "4", "12", "135", "235", "45"]).unwrap();
    ensure(balanced::balance_of(&five.to_vector()).is_some(), || "N=5 example unbalanced".into())?;
    ensure(balanced::is_z_irreducible(&five).unwrap(), || "N=5 example not Z-irreducible".into())?;
    ensure(!balanced::is_irreducible_balanced(&five.to_vector()).unwrap().irreducible, || {
        "N=5 example irreducible".into()
    })?;

    let mut counts = Vec::new();
    for size in 1..=4 {
        let by_cone = balanced::enumerate_irreducible_balanced_by_cone(size).unwrap();
        let by_support = balanced::enumerate_irreducible_balanced_by_support(size).unwrap();
        ensure(by_cone == by_support, || format!("N={size}: cone and support enumerations differ"))?;
        counts.push(format!("N={size}: {}", by_cone.len()));
    }
    let report = balanced::verify_complexity_bound(3).unwrap();
    ensure(report.max_complexity <= BigInt::from(2) && report.holds, || {
        format!("N=3 max complexity {}", report.max_complexity)
    })?;
    Ok(format!(
        "examples certified; enumerations agree ({}); N=3 max complexity {} <= 16/8",
        counts.join(", "),
        report.max_complexity
    ))
}

fn row_operations() -> Outcome {
    let mut rng = Lcg64::new(77);
    for size in 2..=6 {
        for trial in 0..1000 {
            let a = rng.binary_matrix(size);
            let i = 1 + rng.below(size as u32) as usize;
            ensure(balanced::row_operation_check(&a, i).unwrap(), || {
                format!("N={size} trial {trial}: identity fails for {a:?}, i={i}")
            })?;
        }
    }
    Ok("5000 random (A, i), zero failures".into())
}

fn matroid_bijection() -> Outcome {
    let mut total = 0;
    for n in 1..=4 {
        for m in matroid::enumerate_loopless_matroids(n).unwrap() {
            let f = matroid::matroid_to_supermodular(&m).unwrap();
            let back = matroid::supermodular_to_matroid(&f).map_err(|e| e.to_string())?;
            ensure(back == m, || format!("n={n}: roundtrip changed {:?}", m.bases()))?;
            total += 1;
        }
    }

    let mut literal_mismatch: Option<Matroid> = None;
    let mut simple_total = 0;
    for n in 2..=4 {
        let mut from_rays = BTreeSet::new();
        for r in rays(n).iter().filter(|r| matroid::is_simple(r).unwrap()) {
            let m = matroid::supermodular_to_matroid(r).map_err(|e| format!("simple ray not a nullity: {e}"))?;
            let f = matroid::matroid_to_supermodular(&m).unwrap().standardize().unwrap();
            ensure(&f == r, || format!("n={n}: nullity does not reproduce its ray"))?;
            from_rays.insert(m.bases().to_vec());
            simple_total += 1;
        }
        let loopless = matroid::enumerate_loopless_matroids(n).unwrap();
        let corrected: BTreeSet<_> =
            loopless.iter().filter(|m| m.nullity_is_irreducible()).map(|m| m.bases().to_vec()).collect();
        ensure(from_rays == corrected, || format!("n={n}: simple rays differ from irreducible nullities"))?;
        for m in &loopless {
            let ray = from_rays.contains(m.bases());
            if m.coloops().is_empty() {
                ensure(ray == !m.is_reducible(), || format!("n={n}: coloop-free {:?} breaks the correspondence", m.bases()))?;
            } else if ray && literal_mismatch.is_none() {
                literal_mismatch = Some(m.clone());
            }
        }
    }
    let note = match literal_mismatch {
        Some(m) => format!(
            "; with coloops the nullity can be irreducible while the matroid is reducible, e.g. bases {:?} on [{}]",
            m.bases().iter().map(|b| b.elements()).collect::<Vec<_>>(),
            m.n()
        ),
        None => String::new(),
    };
    Ok(format!(
        "{total} loopless matroids roundtrip; {simple_total} simple rays = nullities of loopless matroids with one \
         non-coloop component; irreducible <=> irreducible on coloop-free matroids{note}"
    ))
}

fn two_layer() -> Outcome {
    for n in 3..=5 {
        let full = rays(n);
        for t in 1..=n - 2 {
            let family = twolayer::enumerate_two_layer(n, t).map_err(|e| e.to_string())?;
            let face = cone::enumerate_irreducible_on_layers(n, &[t, t + 1]).unwrap();
            let filtered = twolayer::filter_by_layers(&full, t).unwrap();
            ensure(family == face, || format!("(n,t)=({n},{t}): family differs from the face oracle"))?;
            ensure(family == filtered, || format!("(n,t)=({n},{t}): family differs from the filtered ray list"))?;
        }
    }
    let a = twolayer::enumerate_two_layer(4, 1).unwrap().len();
    let b = twolayer::enumerate_two_layer(5, 2).unwrap().len();
    ensure(a == 10 && b == 12, || format!("|K| = {a} at (4,1) and {b} at (5,2)"))?;
    for n in 3..=6 {
        for t in 1..=n - 2 {
            ensure(twolayer::verify_two_layer_identity(n, t).unwrap(), || format!("identity fails at ({n},{t})"))?;
        }
    }
    Ok("families match face oracle and filtered rays for n=3..5; |K| = 10, 12; identity holds for n<=6".into())
}

fn binomial(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn substituted_properties() -> Outcome {
    let mut detail = Vec::new();
    for n in 2..=5u64 {
        let count = rays(n as usize).len();
        let bound = binomial((n * n) << n, 1 << n);
        ensure(BigInt::from(count) <= bound, || format!("n={n}: {count} rays exceed the bound"))?;
        detail.push(format!("n={n}: {count}"));
    }
    let mut vectors = 0;
    for size in 1..=4 {
        for v in balanced::enumerate_irreducible_balanced(size).unwrap() {
            ensure(v.support().len() <= size, || format!("N={size}: support of size {}", v.support().len()))?;
            ensure(v.canonical_values().iter().all(|x| !x.is_negative()), || "negative entry".into())?;
            ensure(balanced::is_z_irreducible(&v.to_multiset().unwrap()).unwrap(), || {
                format!("N={size}: irreducible vector not Z-irreducible")
            })?;
            vectors += 1;
        }
    }
    Ok(format!("ray counts under C(n^2 2^n, 2^n) ({}); {vectors} balanced vectors have support <= N and are Z-irreducible", detail.join(", ")))
}

fn run_cli(args: &[&str], threads: usize, out: &std::path::Path) -> Result<Vec<u8>, String> {
    let status = Command::new(env!("CARGO_BIN_EXE_supermod"))
        .args(args)
        .arg("--threads")
        .arg(threads.to_string())
        .arg("--out")
        .arg(out)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(status.status.code().is_some_and(|c| c == 0 || c == 1), || {
        format!("{args:?} failed: {}", String::from_utf8_lossy(&status.stderr))
    })?;
    std::fs::read(out).map_err(|e| e.to_string())
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let jobs: [&[&str]; 9] = [
        &["enumerate", "--n", "3"],
        &["enumerate", "--n", "4"],
        &["enumerate", "--n", "4", "--order", "fewest"],
        &["balanced", "enumerate", "--N", "3"],
        &["balanced", "enumerate", "--N", "4"],
        &["matroid", "enumerate", "--n", "4"],
        &["two-layer", "--n", "5", "--t", "2", "--oracle"],
        &["two-layer", "--n", "6", "--t", "3"],
        &["det-experiment", "--N", "5", "--trials", "5000", "--seed", "9"],
    ];
    for job in jobs {
        let mut outputs = Vec::new();
        for (k, threads) in [1, 4, 1, 4].into_iter().enumerate() {
            outputs.push(run_cli(job, threads, &dir.path().join(format!("out{k}")))?);
        }
        ensure(!outputs[0].is_empty(), || format!("{job:?}: empty output"))?;
        ensure(outputs.iter().all(|o| o == &outputs[0]), || format!("{job:?}: outputs differ across runs"))?;
    }
    let n4_given = run_cli(&["enumerate", "--n", "4"], 2, &dir.path().join("given"))?;
    let n4_lex = run_cli(&["enumerate", "--n", "4", "--order", "lex"], 2, &dir.path().join("lex"))?;
    ensure(n4_given == n4_lex, || "n=4 output depends on insertion order".into())?;

    // The n = 5 list again, on a multi-threaded pool.
    let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().map_err(|e| e.to_string())?;
    let again = pool.install(|| cone::enumerate_irreducible_supermodular(5)).map_err(|e| e.to_string())?;
    ensure(again == rays5().0, || "n=5 rays differ between thread counts".into())?;
    Ok(format!("{} CLI jobs byte-identical over 4 runs with 1 and 4 threads; n=5 list identical on 3 threads", jobs.len()))
}

fn main() {
    let criteria: [(&str, Check); 10] = [
        ("ray counts", ray_counts),
        ("n=3 ray identities", n3_identities),
        ("path sums and reconstruction", path_sums_and_reconstruction),
        ("image dimension", image_dimension),
        ("balanced suite", balanced_suite),
        ("row-operation identities", row_operations),
        ("matroid bijection", matroid_bijection),
        ("two-layer classification", two_layer),
        ("substituted asymptotic properties", substituted_properties),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS [{}] {name} ({secs:.1}s): {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{}] {name} ({secs:.1}s): {detail}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
