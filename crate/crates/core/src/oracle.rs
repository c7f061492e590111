//! Brute-force reference computations. These deliberately avoid the
//! lattice formulas and locality search of the main modules: ranks come
//! from the independence test `|I ∩ Z| <= rho(Z)` over cyclic flats, `d`
//! from a scan for the smallest rank-dropping erasure, locality from the
//! definition, and layouts from exhaustive enumeration.

use std::collections::HashSet;

use serde::Serialize;

use crate::analysis;
use crate::constructions::{self, AtomSpec};
use crate::matroid::{CyclicFlatLattice, Matroid};
use crate::subset::{subsets_of_size, Subset};
use crate::Error;

/// Largest ground set for [`oracle_d`].
pub const D_LIMIT: usize = 20;
/// Largest ground set for [`oracle_locality`].
pub const LOCALITY_LIMIT: usize = 16;
/// Largest ground set for layout enumeration.
pub const LAYOUT_LIMIT: usize = 10;
/// Largest ground set for the rank comparison in [`verify`].
pub const RANK_LIMIT: usize = 12;

/// One oracle comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleVerdict {
    pub subject: String,
    pub expected: serde_json::Value,
    pub actual: serde_json::Value,
    pub agrees: bool,
    #[serde(serialize_with = "crate::io::ser_subsets")]
    pub witness: Vec<Subset>,
}

/// `d` and a smallest erasure pattern `X` with `rho(E ∖ X) < rho(E)`.
pub fn oracle_d_witness(m: &Matroid) -> Result<(usize, Subset), Error> {
    let n = m.n();
    if n > D_LIMIT {
        return Err(Error::TooLarge { n, limit: D_LIMIT });
    }
    let e = m.ground();
    let k = m.rank(e);
    if k == 0 {
        return Err(Error::RankZero);
    }
    for size in 1..=n {
        if let Some(x) = subsets_of_size(n, size).find(|&x| m.rank(e.difference(x)) < k) {
            return Ok((size, x));
        }
    }
    unreachable!("erasing everything drops a positive rank")
}

/// Minimum distance by scanning erasure patterns in increasing size.
pub fn oracle_d(m: &Matroid) -> Result<usize, Error> {
    oracle_d_witness(m).map(|(d, _)| d)
}

/// `S` tolerates any `δ - 1` erasures without losing rank.
fn tolerates(m: &Matroid, s: Subset, delta: usize) -> bool {
    let rs = m.rank(s);
    (1..delta).all(|t| {
        s.subsets()
            .filter(|x| x.len() == t)
            .all(|x| m.rank(s.difference(x)) == rs)
    })
}

/// First element with no set `S ∋ x`, `|S| <= r + δ - 1`, surviving every
/// `δ - 1` erasures without a rank drop.
pub fn oracle_locality_gap(m: &Matroid, r: usize, delta: usize) -> Result<Option<usize>, Error> {
    let n = m.n();
    if n > LOCALITY_LIMIT {
        return Err(Error::TooLarge { n, limit: LOCALITY_LIMIT });
    }
    if r == 0 || delta < 2 {
        return Ok(Some(0).filter(|_| n > 0));
    }
    let cap = r + delta - 1;
    for x in 0..n {
        let others = m.ground().remove(x);
        let found = others
            .subsets()
            .filter(|t| t.len() < cap)
            .any(|t| tolerates(m, t.insert(x), delta));
        if !found {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// Ground-truth `(r, δ)` locality verdict.
pub fn oracle_locality(m: &Matroid, r: usize, delta: usize) -> Result<bool, Error> {
    oracle_locality_gap(m, r, delta).map(|gap| gap.is_none())
}

/// `X` is independent iff `|X ∩ Z| <= rho(Z)` for every cyclic flat `Z`.
pub fn independent_in_lattice(lattice: &CyclicFlatLattice, x: Subset) -> bool {
    lattice
        .flats()
        .iter()
        .all(|z| x.intersection(z.set).len() <= z.rank)
}

/// Rank as the largest lattice-independent subset.
pub fn oracle_rank(lattice: &CyclicFlatLattice, x: Subset) -> usize {
    x.subsets()
        .filter(|&i| independent_in_lattice(lattice, i))
        .map(|i| i.len())
        .max()
        .unwrap_or(0)
}

/// Compares the matroid's rank function, `d` and (optionally) locality with
/// the brute-force oracles.
pub fn verify(m: &Matroid, locality: Option<(usize, usize)>) -> Result<Vec<OracleVerdict>, Error> {
    let mut out = Vec::new();
    let n = m.n();
    if n <= RANK_LIMIT {
        let lattice = m.cyclic_flats();
        let bad = m
            .ground()
            .subsets()
            .find(|&x| oracle_rank(&lattice, x) != m.rank(x));
        out.push(OracleVerdict {
            subject: "rank".into(),
            expected: serde_json::json!("independence test over cyclic flats"),
            actual: serde_json::json!(match bad {
                Some(x) => format!("rank {} vs oracle {} on {x}", m.rank(x), oracle_rank(&lattice, x)),
                None => "agrees on every subset".into(),
            }),
            agrees: bad.is_none(),
            witness: bad.into_iter().collect(),
        });
    }
    if m.full_rank() > 0 && n <= D_LIMIT {
        let (d, x) = oracle_d_witness(m)?;
        let computed = analysis::params_from_matroid(m)?.d;
        out.push(OracleVerdict {
            subject: "d".into(),
            expected: d.into(),
            actual: computed.into(),
            agrees: d == computed,
            witness: vec![x],
        });
    }
    if let Some((r, delta)) = locality {
        if n <= LOCALITY_LIMIT {
            let gap = oracle_locality_gap(m, r, delta)?;
            let found = analysis::has_locality(m, r, delta);
            let witness = match (&found, gap) {
                (_, Some(x)) => vec![Subset::singleton(x)],
                (Some(cover), None) => cover.distinct_sets(),
                (None, None) => vec![],
            };
            out.push(OracleVerdict {
                subject: format!("locality({r},{delta})"),
                expected: gap.is_none().into(),
                actual: found.is_some().into(),
                agrees: gap.is_none() == found.is_some(),
                witness,
            });
        }
    }
    Ok(out)
}

/// Region-count signature of an atom layout: for each atom-index set `R`,
/// the number of elements lying in exactly the atoms of `R`, together with
/// the ranks, minimized over atom orderings. Two layouts related by a
/// relabeling of elements and atoms share a signature.
pub fn canonical_layout(atoms: &[AtomSpec]) -> Vec<usize> {
    let m = atoms.len();
    let mut counts = vec![0usize; 1 << m];
    let universe = atoms.iter().fold(Subset::EMPTY, |a, f| a.union(f.set));
    for x in universe.iter() {
        let mask = (0..m).filter(|&i| atoms[i].set.contains(x)).fold(0, |a, i| a | 1 << i);
        counts[mask] += 1;
    }
    let ranks: Vec<usize> = atoms.iter().map(|a| a.rank).collect();
    signature(&ranks, &counts)
}

fn signature(ranks: &[usize], counts: &[usize]) -> Vec<usize> {
    let m = ranks.len();
    let mut perm: Vec<usize> = (0..m).collect();
    let mut best: Option<Vec<usize>> = None;
    loop {
        // perm[i] is the new position of atom i
        let mut key = vec![m];
        let mut new_ranks = vec![0; m];
        for i in 0..m {
            new_ranks[perm[i]] = ranks[i];
        }
        key.extend(new_ranks);
        let mut new_counts = vec![0; 1 << m];
        for (mask, &c) in counts.iter().enumerate() {
            let mapped = (0..m)
                .filter(|&i| mask >> i & 1 == 1)
                .fold(0usize, |a, i| a | 1 << perm[i]);
            new_counts[mapped] = c;
        }
        key.extend(&new_counts[1..]);
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap()
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Best layout found by [`exhaust_theorem9_layouts`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LayoutResult {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub delta: usize,
    pub singleton: usize,
    /// Distinct layouts (up to relabeling) that gave a valid matroid.
    pub layouts: usize,
    pub best_d: Option<usize>,
    #[serde(serialize_with = "crate::io::ser_subsets")]
    pub best_atoms: Vec<Subset>,
    pub best_ranks: Vec<usize>,
}

struct Search {
    n: usize,
    k: usize,
    r: usize,
    delta: usize,
    seen: HashSet<Vec<usize>>,
    best: Option<(usize, Vec<AtomSpec>)>,
    layouts: usize,
}

impl Search {
    fn run(&mut self, m: usize) -> Result<(), Error> {
        let shared: Vec<usize> = (1usize..1 << m).filter(|x| x.count_ones() >= 2).collect();
        let mut ranks = vec![1; m];
        loop {
            let mut counts = vec![0usize; 1 << m];
            self.shared(m, &ranks, &shared, 0, &mut counts)?;
            // next rank tuple in 1..=r
            let mut i = 0;
            while i < m {
                ranks[i] += 1;
                if ranks[i] <= self.r {
                    break;
                }
                ranks[i] = 1;
                i += 1;
            }
            if i == m {
                return Ok(());
            }
        }
    }

    fn shared_totals(m: usize, counts: &[usize]) -> Vec<usize> {
        (0..m)
            .map(|i| {
                counts
                    .iter()
                    .enumerate()
                    .filter(|&(mask, _)| mask.count_ones() >= 2 && mask >> i & 1 == 1)
                    .map(|(_, &c)| c)
                    .sum()
            })
            .collect()
    }

    fn min_private(&self, rank: usize, shared: usize) -> usize {
        (self.delta - 1 + rank).saturating_sub(shared).max(1)
    }

    fn shared(
        &mut self,
        m: usize,
        ranks: &[usize],
        regions: &[usize],
        idx: usize,
        counts: &mut Vec<usize>,
    ) -> Result<(), Error> {
        let totals = Self::shared_totals(m, counts);
        let used: usize = counts.iter().sum();
        let floor: usize = (0..m).map(|i| self.min_private(ranks[i], totals[i])).sum();
        if used > self.n {
            return Ok(());
        }
        if idx == regions.len() {
            if used + floor > self.n {
                return Ok(());
            }
            let spare = self.n - used - floor;
            let base: Vec<usize> = (0..m).map(|i| self.min_private(ranks[i], totals[i])).collect();
            let mut extra = vec![0; m];
            return self.privates(m, ranks, counts, &base, &mut extra, 0, spare);
        }
        let region = regions[idx];
        loop {
            self.shared(m, ranks, regions, idx + 1, counts)?;
            counts[region] += 1;
            let totals = Self::shared_totals(m, counts);
            if (0..m).any(|i| totals[i] >= ranks[i]) {
                counts[region] = 0;
                return Ok(());
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn privates(
        &mut self,
        m: usize,
        ranks: &[usize],
        counts: &[usize],
        base: &[usize],
        extra: &mut Vec<usize>,
        i: usize,
        left: usize,
    ) -> Result<(), Error> {
        if i + 1 == m {
            extra[i] = left;
            return self.evaluate(m, ranks, counts, base, extra);
        }
        for e in 0..=left {
            extra[i] = e;
            self.privates(m, ranks, counts, base, extra, i + 1, left - e)?;
        }
        Ok(())
    }

    fn evaluate(
        &mut self,
        m: usize,
        ranks: &[usize],
        counts: &[usize],
        base: &[usize],
        extra: &[usize],
    ) -> Result<(), Error> {
        let mut full = counts.to_vec();
        for i in 0..m {
            full[1 << i] = base[i] + extra[i];
        }
        let key = signature(ranks, &full);
        if !self.seen.insert(key) {
            return Ok(());
        }
        let mut sets = vec![Subset::EMPTY; m];
        let mut next = 0;
        for (mask, &c) in full.iter().enumerate().skip(1) {
            let block = Subset::range(next, next + c);
            next += c;
            for (i, set) in sets.iter_mut().enumerate() {
                if mask >> i & 1 == 1 {
                    *set = set.union(block);
                }
            }
        }
        let atoms: Vec<AtomSpec> = sets
            .into_iter()
            .zip(ranks)
            .map(|(s, &r)| AtomSpec::new(s, r))
            .collect();
        let am = match constructions::theorem9(self.n, &atoms, self.k) {
            Ok(am) => am,
            Err(Error::ConditionViolated(_)) => return Ok(()),
            Err(e) => return Err(e),
        };
        self.layouts += 1;
        let d = oracle_d(&am.matroid)?;
        if self.best.as_ref().is_none_or(|(b, _)| d > *b) {
            self.best = Some((d, atoms));
        }
        Ok(())
    }
}

/// Largest `d` over all restricted-intersection atom layouts on `n`
/// elements with `rho(F_i) <= r` and `η(F_i) >= δ - 1`, so that every
/// layout has `(r, δ)` locality. `m` fixes the number of atoms; `None` tries
/// every feasible count.
pub fn exhaust_theorem9_layouts(
    n: usize,
    k: usize,
    r: usize,
    delta: usize,
    m: Option<usize>,
) -> Result<LayoutResult, Error> {
    if n > LAYOUT_LIMIT {
        return Err(Error::TooLarge { n, limit: LAYOUT_LIMIT });
    }
    let singleton = analysis::singleton_bound(n, k, r, delta)?;
    let mut search = Search {
        n,
        k,
        r,
        delta,
        seen: HashSet::new(),
        best: None,
        layouts: 0,
    };
    let counts: Vec<usize> = match m {
        Some(m) => vec![m],
        None => (1..=n / delta).collect(),
    };
    for m in counts {
        if m == 0 || m > n / delta {
            continue;
        }
        search.run(m)?;
    }
    let (best_d, best_atoms, best_ranks) = match search.best {
        Some((d, atoms)) => (
            Some(d),
            atoms.iter().map(|a| a.set).collect(),
            atoms.iter().map(|a| a.rank).collect(),
        ),
        None => (None, vec![], vec![]),
    };
    Ok(LayoutResult {
        n,
        k,
        r,
        delta,
        singleton,
        layouts: search.layouts,
        best_d,
        best_atoms,
        best_ranks,
    })
}
