//! Matroids given by their bases, and the correspondence between loopless
//! matroids and simple supermodular functions through the nullity function.
//!
//! Rank is the largest intersection with a basis, so that nullity vanishes
//! exactly on independent sets.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nondecreasing::is_irreducible_nondecreasing;
use crate::rational::format_rational;
use crate::setfn::SetFunction;
use crate::subset::{check_ground_set, subsets_of_size, SubsetMask, MAX_GROUND_SET};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matroid {
    n: usize,
    bases: Vec<SubsetMask>,
}

/// Basis exchange on a nonempty family of equal-size sets.
pub fn check_exchange(bases: &[SubsetMask]) -> bool {
    let Some(first) = bases.first() else {
        return false;
    };
    if bases.iter().any(|b| b.len() != first.len()) {
        return false;
    }
    let family: BTreeSet<SubsetMask> = bases.iter().copied().collect();
    family.iter().all(|&a| {
        family.iter().all(|&b| {
            a.difference(b).elements().into_iter().all(|x| {
                b.difference(a)
                    .elements()
                    .into_iter()
                    .any(|y| family.contains(&a.without(x).with(y)))
            })
        })
    })
}

impl Matroid {
    pub fn new(n: usize, mut bases: Vec<SubsetMask>) -> Result<Self> {
        check_ground_set(n, 0, MAX_GROUND_SET)?;
        if bases.iter().any(|b| !b.is_subset_of(SubsetMask::full(n))) {
            return Err(Error::Parse(format!("basis outside [{n}]")));
        }
        bases.sort();
        bases.dedup();
        if !check_exchange(&bases) {
            return Err(Error::NotAMatroid);
        }
        Ok(Matroid { n, bases })
    }

    /// Uniform matroid `U_{r,n}`.
    pub fn uniform(r: usize, n: usize) -> Result<Self> {
        if r > n {
            return Err(Error::ParamOutOfRange(format!("rank {r} exceeds n = {n}")));
        }
        Self::new(n, subsets_of_size(n, r))
    }

    pub fn free(n: usize) -> Result<Self> {
        Self::new(n, vec![SubsetMask::full(n)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bases(&self) -> &[SubsetMask] {
        &self.bases
    }

    pub fn matroid_rank(&self) -> usize {
        self.bases[0].len()
    }

    pub fn rank(&self, s: SubsetMask) -> usize {
        self.bases.iter().map(|b| b.intersection(s).len()).max().unwrap_or(0)
    }

    pub fn nullity(&self, s: SubsetMask) -> usize {
        s.len() - self.rank(s)
    }

    pub fn is_independent(&self, s: SubsetMask) -> bool {
        self.nullity(s) == 0
    }

    pub fn loops(&self) -> SubsetMask {
        let union = self.bases.iter().fold(SubsetMask::EMPTY, |acc, b| acc.union(*b));
        SubsetMask::full(self.n).difference(union)
    }

    pub fn coloops(&self) -> SubsetMask {
        self.bases.iter().fold(SubsetMask::full(self.n), |acc, b| acc.intersection(*b))
    }

    pub fn is_loopless(&self) -> bool {
        self.loops().is_empty()
    }

    /// A partition `(E1, E2)` with every basis a union `B1 ∪ B2` of bases of
    /// the two restrictions, if one exists. `E1` contains element 1.
    pub fn reducing_partition(&self) -> Option<(SubsetMask, SubsetMask)> {
        if self.n < 2 {
            return None;
        }
        let full = SubsetMask::full(self.n);
        let total = self.matroid_rank();
        let bases: BTreeSet<SubsetMask> = self.bases.iter().copied().collect();
        (0..1u32 << (self.n - 1))
            .map(|b| SubsetMask((b << 1) | 1))
            .filter(|&e1| e1 != full)
            .find(|&e1| {
                let e2 = full.difference(e1);
                if self.rank(e1) + self.rank(e2) != total {
                    return false;
                }
                let left: BTreeSet<SubsetMask> = self.bases.iter().map(|b| b.intersection(e1)).collect();
                let right: BTreeSet<SubsetMask> = self.bases.iter().map(|b| b.intersection(e2)).collect();
                left.len() * right.len() == bases.len()
                    && left.iter().all(|l| right.iter().all(|r| bases.contains(&l.union(*r))))
            })
            .map(|e1| (e1, full.difference(e1)))
    }

    pub fn is_reducible(&self) -> bool {
        self.reducing_partition().is_some()
    }

    /// Connected components. Two elements share a component when some basis
    /// exchange swaps one for the other.
    pub fn components(&self) -> Vec<SubsetMask> {
        let mut parent: Vec<usize> = (0..=self.n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            parent[x] = r;
            r
        }
        let bases: BTreeSet<SubsetMask> = self.bases.iter().copied().collect();
        for b in &self.bases {
            for e in b.elements() {
                for f in SubsetMask::full(self.n).difference(*b).elements() {
                    if bases.contains(&b.without(e).with(f)) {
                        let (x, y) = (find(&mut parent, e), find(&mut parent, f));
                        parent[x] = y;
                    }
                }
            }
        }
        let mut groups: Vec<SubsetMask> = Vec::new();
        let mut root_of: Vec<Option<usize>> = vec![None; self.n + 1];
        for e in 1..=self.n {
            let r = find(&mut parent, e);
            match root_of[r] {
                Some(g) => groups[g] = groups[g].with(e),
                None => {
                    root_of[r] = Some(groups.len());
                    groups.push(SubsetMask::singleton(e));
                }
            }
        }
        groups
    }

    /// The nullity function spans an extreme ray: the matroid is loopless and
    /// exactly one component is not a coloop.
    pub fn nullity_is_irreducible(&self) -> bool {
        let coloops = self.coloops();
        self.is_loopless() && self.components().iter().filter(|c| !c.is_subset_of(coloops)).count() == 1
    }

    pub fn to_json(&self) -> MatroidJson {
        MatroidJson {
            n: self.n,
            bases: self.bases.iter().map(|b| b.elements()).collect(),
        }
    }

    pub fn from_json(json: &MatroidJson) -> Result<Self> {
        let bases = json
            .bases
            .iter()
            .map(|b| {
                let m = SubsetMask::from_elements(b, json.n)?;
                if m.len() != b.len() {
                    return Err(Error::Parse(format!("repeated element in basis {b:?}")));
                }
                Ok(m)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(json.n, bases)
    }
}

/// `{ "n": int, "bases": [[...], ...] }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidJson {
    pub n: usize,
    pub bases: Vec<Vec<usize>>,
}

/// The nullity function of a loopless matroid.
pub fn matroid_to_supermodular(m: &Matroid) -> Result<SetFunction> {
    if let Some(&l) = m.loops().elements().first() {
        return Err(Error::HasLoop(l));
    }
    SetFunction::from_integers(m.n, |s| m.nullity(s) as i64)
}

/// Every discrete derivative is constant or an irreducible nondecreasing function.
pub fn is_simple(f: &SetFunction) -> Result<bool> {
    f.ensure_supermodular()?;
    for i in 1..=f.n() {
        let d = f.discrete_derivative(i)?;
        if !d.is_constant() && is_irreducible_nondecreasing(&d)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The loopless matroid whose nullity is the standard representative of `f`.
///
/// Vertices of the generalized permutohedron of a nullity function are the
/// indicator vectors of basis complements.
pub fn supermodular_to_matroid(f: &SetFunction) -> Result<Matroid> {
    if !is_simple(f)? {
        return Err(Error::NotSimple);
    }
    let g = if f.is_modular() { SetFunction::zero(f.n())? } else { f.standardize()? };
    let full = SubsetMask::full(f.n());
    let mut bases = Vec::new();
    for x in g.gp_vertices()? {
        if x.iter().any(|v| !v.is_zero() && !v.is_one()) {
            return Err(Error::NotZeroOne(x.iter().map(format_rational).collect()));
        }
        let support = (1..=f.n()).filter(|&e| x[e - 1].is_one()).fold(SubsetMask::EMPTY, |s, e| s.with(e));
        bases.push(full.difference(support));
    }
    let m = Matroid::new(f.n(), bases)?;
    let back = matroid_to_supermodular(&m)?;
    if back != g {
        return Err(Error::InvariantViolation("matroid nullity does not reproduce f".into()));
    }
    Ok(m)
}

/// All loopless matroids on `[n]` (labeled), ordered by rank and then bases.
pub fn enumerate_loopless_matroids(n: usize) -> Result<Vec<Matroid>> {
    check_ground_set(n, 0, 5)?;
    let full = SubsetMask::full(n);
    let mut out: Vec<Matroid> = (0..=n)
        .into_par_iter()
        .flat_map_iter(|r| {
            let layer = subsets_of_size(n, r);
            let count = layer.len();
            (1u64..1u64 << count)
                .filter_map(move |pick| {
                    let bases: Vec<SubsetMask> = (0..count).filter(|k| pick >> k & 1 == 1).map(|k| layer[k]).collect();
                    let union = bases.iter().fold(SubsetMask::EMPTY, |a, b| a.union(*b));
                    (union == full && check_exchange(&bases)).then(|| {
                        let mut bases = bases;
                        bases.sort();
                        Matroid { n, bases }
                    })
                })
                .collect::<Vec<_>>()
        })
        .collect();
    out.sort_by(|a, b| (a.matroid_rank(), &a.bases).cmp(&(b.matroid_rank(), &b.bases)));
    Ok(out)
}
