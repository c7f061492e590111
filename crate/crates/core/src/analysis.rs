//! LRC parameters as matroid invariants, locality discovery, the generalized
//! Singleton bound and the structural conditions that optimal matroids must
//! satisfy.

use std::fmt;

use serde::Serialize;

use crate::matroid::{CyclicFlatLattice, Matroid};
use crate::subset::{subsets_of_size, Subset};
use crate::{ceil_div, Error};

/// The tuple `(n, k, d, r, δ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LrcParams {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub r: usize,
    pub delta: usize,
}

impl LrcParams {
    /// `⌈k/r⌉`.
    pub fn groups(&self) -> usize {
        ceil_div(self.k, self.r)
    }

    /// `r + δ - 1`, the largest locality-set size.
    pub fn block(&self) -> usize {
        self.r + self.delta - 1
    }

    /// `k_max = ⌈k/r⌉ r`.
    pub fn k_max(&self) -> usize {
        self.groups() * self.r
    }

    /// `n_max = ⌈n/(r+δ-1)⌉ (r+δ-1)`.
    pub fn n_max(&self) -> usize {
        ceil_div(self.n, self.block()) * self.block()
    }

    /// `a = ⌈k/r⌉ r - k`.
    pub fn a(&self) -> usize {
        self.k_max() - self.k
    }

    /// `b = ⌈n/(r+δ-1)⌉ (r+δ-1) - n`.
    pub fn b(&self) -> usize {
        self.n_max() - self.n
    }
}

/// `(n, k, d)` of a matroid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BasicParams {
    pub n: usize,
    pub k: usize,
    pub d: usize,
}

/// Slack constants for a parameter tuple without `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Constants {
    pub a: usize,
    pub b: usize,
    pub groups: usize,
    pub blocks: usize,
}

/// `a`, `b`, `⌈k/r⌉` and `⌈n/(r+δ-1)⌉` for `(n, k, r, δ)`.
pub fn constants(n: usize, k: usize, r: usize, delta: usize) -> Constants {
    let p = LrcParams { n, k, d: 0, r, delta };
    Constants {
        a: p.a(),
        b: p.b(),
        groups: p.groups(),
        blocks: ceil_div(n, p.block()),
    }
}

/// Why `(n, k, r, δ)` cannot be the parameters of an LRC matroid, if it cannot.
pub fn params_problem(n: usize, k: usize, r: usize, delta: usize) -> Option<String> {
    if delta < 2 {
        return Some(format!("δ must be at least 2, got {delta}"));
    }
    if k == 0 {
        return Some("k must be positive".into());
    }
    if r == 0 || r > k {
        return Some(format!("r must satisfy 0 < r <= k, got r={r} k={k}"));
    }
    let need = k + ceil_div(k, r) * (delta - 1);
    if need > n {
        return Some(format!(
            "k <= n - ⌈k/r⌉(δ-1) fails: {k} > {n} - {}",
            ceil_div(k, r) * (delta - 1)
        ));
    }
    None
}

/// True when `(n, k, r, δ)` satisfies `δ >= 2`, `0 < r <= k` and
/// `k <= n - ⌈k/r⌉(δ-1)`.
pub fn validate_params(n: usize, k: usize, r: usize, delta: usize) -> bool {
    params_problem(n, k, r, delta).is_none()
}

/// `d` from a lattice of cyclic flats whose top is the ground set:
/// `n - k + 1 - max η(Z)` over the coatoms.
pub fn d_from_cyclic_flats(lattice: &CyclicFlatLattice) -> Result<usize, Error> {
    let e = Subset::full(lattice.n());
    let top = lattice.top().ok_or(Error::NotALattice)?;
    if top.set != e {
        return Err(Error::TopNotE);
    }
    if top.rank == 0 {
        return Err(Error::RankZero);
    }
    let max_coatom_nullity = lattice
        .coatoms()
        .iter()
        .map(|z| z.set.len() - z.rank)
        .max()
        .unwrap_or(0);
    Ok(lattice.n() - top.rank + 1 - max_coatom_nullity)
}

/// `(n, k, d)` of a matroid with `rho(E) > 0`.
///
/// When the ground set is not cyclic some element is a coloop, and removing
/// it alone drops the rank, so `d = 1`.
pub fn params_from_matroid(m: &Matroid) -> Result<BasicParams, Error> {
    let k = m.full_rank();
    if k == 0 {
        return Err(Error::RankZero);
    }
    let lattice = m.lattice();
    let d = match d_from_cyclic_flats(&lattice) {
        Ok(d) => d,
        Err(Error::TopNotE) => 1,
        Err(e) => return Err(e),
    };
    Ok(BasicParams { n: m.n(), k, d })
}

/// Minimum distance of `M|S`, or `None` when `rho(S) = 0` (no finite
/// distance).
pub fn restricted_distance(m: &Matroid, s: Subset) -> Option<usize> {
    if m.rank(s) == 0 {
        return None;
    }
    let restricted = m.restriction(s);
    let lattice = restricted.cyclic_flats();
    Some(d_from_cyclic_flats(&lattice).unwrap_or(1))
}

/// A chosen locality set for every element of the ground set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalityCover {
    pub r: usize,
    pub delta: usize,
    sets: Vec<Subset>,
}

impl LocalityCover {
    /// Wraps explicit sets, `sets[x]` being the locality set of element `x`.
    pub fn new(r: usize, delta: usize, sets: Vec<Subset>) -> Self {
        LocalityCover { r, delta, sets }
    }

    pub fn set_for(&self, x: usize) -> Subset {
        self.sets[x]
    }

    pub fn sets(&self) -> &[Subset] {
        &self.sets
    }

    /// Distinct sets in order of first appearance.
    pub fn distinct_sets(&self) -> Vec<Subset> {
        let mut out: Vec<Subset> = Vec::new();
        for &s in &self.sets {
            if !out.contains(&s) {
                out.push(s);
            }
        }
        out
    }

    /// Checks membership, size, cyclicity and `d(M|S_x) >= δ` for every element.
    pub fn validate(&self, m: &Matroid) -> Result<(), Error> {
        if self.delta < 2 || self.r == 0 {
            return Err(Error::InvalidCover(format!(
                "needs r >= 1 and δ >= 2, got r={} δ={}",
                self.r, self.delta
            )));
        }
        if self.sets.len() != m.n() {
            return Err(Error::InvalidCover(format!(
                "{} sets for {} elements",
                self.sets.len(),
                m.n()
            )));
        }
        for (x, &s) in self.sets.iter().enumerate() {
            if !s.contains(x) || !s.is_subset_of(m.ground()) {
                return Err(Error::InvalidCover(format!("{s} does not contain {x}")));
            }
            if s.len() > self.r + self.delta - 1 {
                return Err(Error::InvalidCover(format!("{s} is larger than r + δ - 1")));
            }
            if !m.is_cyclic(s) {
                return Err(Error::InvalidCover(format!("{s} is not cyclic")));
            }
            if restricted_distance(m, s).is_some_and(|d| d < self.delta) {
                return Err(Error::InvalidCover(format!("d(M|{s}) < δ")));
            }
        }
        Ok(())
    }
}

/// Searches for an `(r, δ)` locality cover: for each element the smallest
/// cyclic set containing it with `|S| <= r + δ - 1` and `d(M|S) >= δ`, ties
/// broken lexicographically. Returns `None` when some element has no such set.
pub fn has_locality(m: &Matroid, r: usize, delta: usize) -> Option<LocalityCover> {
    if delta < 2 || r == 0 {
        return None;
    }
    let n = m.n();
    let max_size = (r + delta - 1).min(n);
    let mut chosen: Vec<Option<Subset>> = vec![None; n];
    let mut uncovered = m.ground();
    for size in 1..=max_size {
        if uncovered.is_empty() {
            break;
        }
        let mut candidates: Vec<Subset> = subsets_of_size(n, size)
            .filter(|s| !s.intersection(uncovered).is_empty())
            .collect();
        candidates.sort_by(|a, b| a.lex_cmp(*b));
        for s in candidates {
            if s.intersection(uncovered).is_empty() {
                continue;
            }
            if !m.is_cyclic(s) {
                continue;
            }
            if restricted_distance(m, s).is_some_and(|d| d < delta) {
                continue;
            }
            for x in s.intersection(uncovered).iter() {
                chosen[x] = Some(s);
            }
            uncovered = uncovered.difference(s);
        }
    }
    if !uncovered.is_empty() {
        return None;
    }
    Some(LocalityCover::new(
        r,
        delta,
        chosen.into_iter().map(|s| s.unwrap()).collect(),
    ))
}

/// `n - k + 1 - (⌈k/r⌉ - 1)(δ - 1)`.
pub fn singleton_bound(n: usize, k: usize, r: usize, delta: usize) -> Result<usize, Error> {
    if let Some(p) = params_problem(n, k, r, delta) {
        return Err(Error::BadParams(p));
    }
    Ok(n - k + 1 - (ceil_div(k, r) - 1) * (delta - 1))
}

/// True when the matroid has `(r, δ)` locality and meets the generalized
/// Singleton bound with equality.
pub fn achieves_bound(m: &Matroid, r: usize, delta: usize) -> Result<bool, Error> {
    if has_locality(m, r, delta).is_none() {
        return Err(Error::NoLocality { r, delta });
    }
    let p = params_from_matroid(m)?;
    Ok(p.d == singleton_bound(p.n, p.k, r, delta)?)
}

/// The full parameter tuple for a matroid with `(r, δ)` locality.
pub fn lrc_params(m: &Matroid, r: usize, delta: usize) -> Result<LrcParams, Error> {
    if has_locality(m, r, delta).is_none() {
        return Err(Error::NoLocality { r, delta });
    }
    let p = params_from_matroid(m)?;
    Ok(LrcParams {
        n: p.n,
        k: p.k,
        d: p.d,
        r,
        delta,
    })
}

/// Outcome of one structural condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionCheck {
    pub condition: String,
    pub passed: bool,
    #[serde(serialize_with = "crate::io::ser_subsets")]
    pub witnesses: Vec<Subset>,
    pub detail: String,
}

/// Per-condition results of the structure check for optimal matroids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub checks: Vec<ConditionCheck>,
}

impl StructureReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ConditionCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// First failing check for a condition label such as `"ii.a"`.
    pub fn failed(&self, label: &str) -> bool {
        self.checks.iter().any(|c| c.condition == label && !c.passed)
    }
}

struct ReportBuilder {
    checks: Vec<ConditionCheck>,
}

impl ReportBuilder {
    fn record(&mut self, condition: &str, passed: bool, witnesses: Vec<Subset>, detail: String) {
        // keep one entry per condition: the first failure, or a pass
        if let Some(c) = self.checks.iter_mut().find(|c| c.condition == condition) {
            if c.passed && !passed {
                *c = ConditionCheck {
                    condition: condition.into(),
                    passed,
                    witnesses,
                    detail,
                };
            }
            return;
        }
        self.checks.push(ConditionCheck {
            condition: condition.into(),
            passed,
            witnesses,
            detail,
        });
    }
}

/// Evaluates the necessary conditions for an optimal `(n, k, d, r, δ)`
/// matroid with `r < k` against a locality cover:
///
/// - `i`: `0_Z = ∅`;
/// - `ii.a`: `η(S_x) = δ - 1`;
/// - `ii.b`: `S_x` is a cyclic flat whose only cyclic flats below it are `∅` and itself;
/// - `iii.c`–`iii.f`: nullity, join, rank and overlap conditions for every
///   collection of at most `⌈k/r⌉` locality sets with a nontrivial union.
///
/// The report lists every condition with its first failing witness.
pub fn check_structure_theorem(m: &Matroid, cover: &LocalityCover) -> Result<StructureReport, Error> {
    cover.validate(m)?;
    let n = m.n();
    let k = m.full_rank();
    let r = cover.r;
    let delta = cover.delta;
    if r >= k {
        return Err(Error::PreconditionFailed(format!(
            "structure conditions need r < k, got r={r} k={k}"
        )));
    }
    let groups = ceil_div(k, r);
    let lattice = m.lattice();
    let mut rep = ReportBuilder { checks: Vec::new() };

    let bottom = lattice.bottom().ok_or(Error::NotALattice)?;
    rep.record(
        "i",
        bottom.set.is_empty(),
        vec![bottom.set],
        format!("0_Z = {}", bottom.set),
    );

    for s in cover.distinct_sets() {
        let eta = m.nullity(s);
        rep.record(
            "ii.a",
            eta == delta - 1,
            vec![s],
            format!("η({s}) = {eta}, δ - 1 = {}", delta - 1),
        );
        let is_cf = lattice.contains(s);
        let below: Vec<Subset> = lattice
            .flats()
            .iter()
            .map(|f| f.set)
            .filter(|z| z.is_subset_of(s))
            .collect();
        let ok = is_cf && below.len() == 2 && below.contains(&Subset::EMPTY);
        rep.record(
            "ii.b",
            ok,
            vec![s],
            if is_cf {
                format!("cyclic flats inside {s}: {below:?}")
            } else {
                format!("{s} is not a cyclic flat (closure {})", m.closure(s))
            },
        );
    }

    let flats: Vec<Subset> = cover
        .distinct_sets()
        .into_iter()
        .filter(|s| lattice.contains(*s))
        .collect();
    let mut any_collection = false;
    for j in 1..=groups.min(flats.len()) {
        for pick in subsets_of_size(flats.len(), j) {
            let coll: Vec<Subset> = pick.iter().map(|i| flats[i]).collect();
            if !nontrivial_union(&coll) {
                continue;
            }
            any_collection = true;
            let union = coll.iter().fold(Subset::EMPTY, |a, &b| a.union(b));
            let join = m.closure(union);
            let eta = m.nullity(join);
            let rho = m.rank(join);
            let small = j < groups;
            let (c_ok, c_detail) = if small {
                (eta == j * (delta - 1), format!("η(join) = {eta}, want {}", j * (delta - 1)))
            } else {
                (
                    eta == n - k && n - k >= groups * (delta - 1),
                    format!(
                        "η(join) = {eta}, want n - k = {} >= {}",
                        n - k,
                        groups * (delta - 1)
                    ),
                )
            };
            rep.record("iii.c", c_ok, coll.clone(), c_detail);
            let (d_ok, d_detail) = if small {
                (join == union, format!("join {join} vs union {union}"))
            } else {
                (join == m.ground(), format!("join {join} vs E"))
            };
            rep.record("iii.d", d_ok, coll.clone(), d_detail);
            let (e_ok, e_detail) = if small {
                let want = union.len() as i64 - (j * (delta - 1)) as i64;
                (rho as i64 == want, format!("rank(join) = {rho}, want {want}"))
            } else {
                (rho == k, format!("rank(join) = {rho}, want k = {k}"))
            };
            rep.record("iii.e", e_ok, coll.clone(), e_detail);
            for (idx, &last) in coll.iter().enumerate() {
                let rest = coll
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != idx)
                    .fold(Subset::EMPTY, |a, (_, &b)| a.union(b));
                let overlap = last.intersection(rest).len();
                let ok = overlap + delta <= last.len();
                rep.record(
                    "iii.f",
                    ok,
                    coll.clone(),
                    format!("|{last} ∩ rest| = {overlap}, bound |F| - δ = {}", last.len() as i64 - delta as i64),
                );
            }
        }
    }
    if !any_collection {
        for label in ["iii.c", "iii.d", "iii.e", "iii.f"] {
            rep.record(label, true, vec![], "no locality set is a cyclic flat".into());
        }
    }
    Ok(StructureReport { checks: rep.checks })
}

/// `X_l ⊄ ∪_{i≠l} X_i` for every member.
pub fn nontrivial_union(sets: &[Subset]) -> bool {
    sets.iter().enumerate().all(|(l, &x)| {
        let others = sets
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != l)
            .fold(Subset::EMPTY, |a, (_, &b)| a.union(b));
        !x.is_subset_of(others)
    })
}

/// A chain `0_Z = Y_0 ⊊ Y_1 ⊊ … ⊊ Y_m = E` of cyclic flats with the locality
/// sets `S_j` used at each step, `Y_j = cl(Y_{j-1} ∪ S_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlatChain {
    #[serde(serialize_with = "crate::io::ser_subsets")]
    pub flats: Vec<Subset>,
    #[serde(serialize_with = "crate::io::ser_subsets")]
    pub sets: Vec<Subset>,
}

impl FlatChain {
    /// Number of steps `m`.
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

impl fmt::Display for FlatChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, y) in self.flats.iter().enumerate() {
            if i > 0 {
                write!(f, " ⊊ ")?;
            }
            write!(f, "{y}")?;
        }
        Ok(())
    }
}

/// Greedy chain: walk the cover's distinct sets in element order and close
/// up with every set not already absorbed.
pub fn find_locality_chain(m: &Matroid, cover: &LocalityCover) -> Result<FlatChain, Error> {
    let e = m.ground();
    let bottom = m.lattice().bottom().ok_or(Error::NotALattice)?.set;
    let mut flats = vec![bottom];
    let mut sets = Vec::new();
    let mut y = bottom;
    for s in cover.distinct_sets() {
        if y == e {
            break;
        }
        if s.is_subset_of(y) {
            continue;
        }
        y = m.closure(y.union(s));
        flats.push(y);
        sets.push(s);
    }
    if y != e {
        return Err(Error::ChainStalled { stalled_at: y });
    }
    Ok(FlatChain { flats, sets })
}

/// Verdicts of the chain step bounds and the two chain inequalities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub m: usize,
    pub d: usize,
    /// Every `Y_j` is a cyclic flat and the chain is strictly increasing.
    pub is_chain: bool,
    /// `rho(Y_j) - rho(Y_{j-1}) <= r` at each step.
    pub rank_steps: bool,
    /// `η(Y_j) - η(Y_{j-1}) >= δ - 1` at each step.
    pub nullity_steps: bool,
    /// `d <= n - k + 1 - η(Y_{m-1})`.
    pub distance_bound: bool,
    /// `m >= ⌈k/r⌉`.
    pub length_bound: bool,
}

impl ChainReport {
    pub fn holds(&self) -> bool {
        self.is_chain && self.rank_steps && self.nullity_steps && self.distance_bound && self.length_bound
    }
}

pub fn check_chain_inequalities(
    m: &Matroid,
    chain: &FlatChain,
    r: usize,
    delta: usize,
) -> Result<ChainReport, Error> {
    let p = params_from_matroid(m)?;
    let lattice = m.lattice();
    let steps = chain.len();
    let is_chain = chain.flats.iter().all(|y| lattice.contains(*y))
        && chain.flats.windows(2).all(|w| w[0].is_proper_subset_of(w[1]))
        && chain.flats.last() == Some(&m.ground());
    let rank_steps = chain
        .flats
        .windows(2)
        .all(|w| m.rank(w[1]) <= m.rank(w[0]) + r);
    let nullity_steps = chain
        .flats
        .windows(2)
        .all(|w| m.nullity(w[1]) >= m.nullity(w[0]) + delta - 1);
    let penultimate = if steps == 0 {
        chain.flats[0]
    } else {
        chain.flats[steps - 1]
    };
    let distance_bound = p.d + m.nullity(penultimate) <= p.n - p.k + 1;
    let length_bound = steps >= ceil_div(p.k, r);
    Ok(ChainReport {
        m: steps,
        d: p.d,
        is_chain,
        rank_steps,
        nullity_steps,
        distance_bound,
        length_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::CyclicFlat;

    fn s(e: &[usize]) -> Subset {
        Subset::from_elements(e.iter().copied())
    }

    fn two_atom() -> Matroid {
        Matroid::from_cyclic_flats(CyclicFlatLattice::new(
            6,
            vec![
                CyclicFlat { set: Subset::EMPTY, rank: 0 },
                CyclicFlat { set: s(&[0, 1, 2]), rank: 2 },
                CyclicFlat { set: s(&[3, 4, 5]), rank: 2 },
                CyclicFlat { set: Subset::full(6), rank: 4 },
            ],
        ))
        .unwrap()
    }

    #[test]
    fn basic_params() {
        let u42 = Matroid::uniform(4, 2).unwrap();
        assert_eq!(params_from_matroid(&u42).unwrap(), BasicParams { n: 4, k: 2, d: 3 });
        assert_eq!(params_from_matroid(&two_atom()).unwrap(), BasicParams { n: 6, k: 4, d: 2 });
        let u32_ = Matroid::uniform(3, 2).unwrap();
        assert_eq!(params_from_matroid(&u32_).unwrap().d, 2);
        assert!(matches!(
            params_from_matroid(&Matroid::uniform(3, 0).unwrap()),
            Err(Error::RankZero)
        ));
        // a coloop forces d = 1
        assert_eq!(params_from_matroid(&Matroid::free(3).unwrap()).unwrap().d, 1);
    }

    #[test]
    fn d_from_lattice() {
        assert_eq!(d_from_cyclic_flats(&Matroid::uniform(4, 2).unwrap().lattice()).unwrap(), 3);
        assert_eq!(d_from_cyclic_flats(&two_atom().lattice()).unwrap(), 2);
        let free = Matroid::free(2).unwrap().lattice();
        assert!(matches!(d_from_cyclic_flats(&free), Err(Error::TopNotE)));
    }

    #[test]
    fn locality_search() {
        let u42 = Matroid::uniform(4, 2).unwrap();
        let cover = has_locality(&u42, 2, 2).unwrap();
        assert_eq!(cover.set_for(0), s(&[0, 1, 2]));
        assert_eq!(cover.set_for(3), s(&[0, 1, 3]));
        assert!(cover.validate(&u42).is_ok());
        assert!(has_locality(&u42, 1, 2).is_none());
        assert!(has_locality(&Matroid::free(4).unwrap(), 3, 2).is_none());
        let cover = has_locality(&two_atom(), 2, 2).unwrap();
        assert_eq!(cover.distinct_sets(), vec![s(&[0, 1, 2]), s(&[3, 4, 5])]);
    }

    #[test]
    fn singleton_values() {
        assert_eq!(singleton_bound(10, 5, 3, 2).unwrap(), 5);
        assert_eq!(singleton_bound(6, 4, 2, 2).unwrap(), 2);
        assert_eq!(singleton_bound(9, 4, 4, 3).unwrap(), 6);
        assert!(matches!(singleton_bound(4, 3, 1, 3), Err(Error::BadParams(_))));
    }

    #[test]
    fn params_validity() {
        assert!(validate_params(10, 5, 3, 2));
        assert!(!validate_params(4, 3, 1, 3));
        assert!(!validate_params(10, 5, 3, 1));
        assert!(!validate_params(10, 5, 6, 2));
        let p = LrcParams { n: 10, k: 5, d: 5, r: 3, delta: 2 };
        assert_eq!((p.a(), p.b(), p.groups()), (1, 2, 2));
    }

    #[test]
    fn bound_achievement() {
        let u42 = Matroid::uniform(4, 2).unwrap();
        assert!(achieves_bound(&u42, 2, 2).unwrap());
        assert!(achieves_bound(&two_atom(), 2, 2).unwrap());
        assert!(matches!(achieves_bound(&u42, 1, 2), Err(Error::NoLocality { .. })));
    }

    #[test]
    fn structure_on_optimal_two_atom() {
        let m = two_atom();
        let cover = has_locality(&m, 2, 2).unwrap();
        let rep = check_structure_theorem(&m, &cover).unwrap();
        assert!(rep.all_passed(), "{rep:?}");
        let u42 = Matroid::uniform(4, 2).unwrap();
        let cover = has_locality(&u42, 2, 2).unwrap();
        assert!(matches!(
            check_structure_theorem(&u42, &cover),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn chains() {
        let m = two_atom();
        let cover = has_locality(&m, 2, 2).unwrap();
        let chain = find_locality_chain(&m, &cover).unwrap();
        assert_eq!(chain.flats, vec![Subset::EMPTY, s(&[0, 1, 2]), Subset::full(6)]);
        assert_eq!(chain.len(), 2);
        let rep = check_chain_inequalities(&m, &chain, 2, 2).unwrap();
        assert!(rep.holds(), "{rep:?}");

        let u42 = Matroid::uniform(4, 2).unwrap();
        let cover = has_locality(&u42, 2, 2).unwrap();
        let chain = find_locality_chain(&u42, &cover).unwrap();
        assert_eq!(chain.flats, vec![Subset::EMPTY, u42.ground()]);
        assert!(check_chain_inequalities(&u42, &chain, 2, 2).unwrap().holds());

        // a cover that never reaches element 5
        let bad = LocalityCover::new(2, 2, vec![s(&[0, 1, 2]); 6]);
        assert!(matches!(
            find_locality_chain(&m, &bad),
            Err(Error::ChainStalled { .. })
        ));
    }

    #[test]
    fn nontrivial_unions() {
        assert!(nontrivial_union(&[s(&[0, 1]), s(&[1, 2])]));
        assert!(!nontrivial_union(&[s(&[0, 1]), s(&[1])]));
        assert!(!nontrivial_union(&[s(&[0, 1]), s(&[1, 2]), s(&[0, 2])]));
        assert!(nontrivial_union(&[s(&[0])]));
    }
}
