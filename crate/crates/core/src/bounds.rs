//! Lower bounds on the largest minimum distance `d_max(n, k, r, δ)` when the
//! generalized Singleton bound may be out of reach, the graph instance that
//! realizes the improved bound, nullity redistribution between atoms, and a
//! classifier that reports when the Singleton bound is known to be achieved.

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{self, constants};
use crate::constructions::{self, AtomMatroid, AtomSpec, ConstructionGraph};
use crate::matroid::Matroid;
use crate::subset::Subset;
use crate::{ceil_div, Error};

/// `(n, k, r, δ)` without a distance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ParamTuple {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub delta: usize,
}

impl ParamTuple {
    pub fn new(n: usize, k: usize, r: usize, delta: usize) -> Self {
        ParamTuple { n, k, r, delta }
    }

    fn signed(&self) -> (i64, i64, i64, i64) {
        (self.n as i64, self.k as i64, self.r as i64, self.delta as i64)
    }
}

fn require_valid(t: ParamTuple) -> Result<(), Error> {
    match analysis::params_problem(t.n, t.k, t.r, t.delta) {
        Some(p) => Err(Error::BadParams(p)),
        None => Ok(()),
    }
}

fn require_b_above_a(t: ParamTuple) -> Result<(), Error> {
    require_valid(t)?;
    let c = constants(t.n, t.k, t.r, t.delta);
    if c.b <= c.a {
        return Err(Error::BadParams(format!(
            "bound needs b > a, got a={} b={}",
            c.a, c.b
        )));
    }
    Ok(())
}

/// The earlier lower bound for `b > a`: `n - k + 1 - ⌈k/r⌉(δ-1)`, plus
/// `b - r` when `b >= r`.
pub fn old_lower_bound(n: usize, k: usize, r: usize, delta: usize) -> Result<i64, Error> {
    let t = ParamTuple::new(n, k, r, delta);
    require_b_above_a(t)?;
    let b = constants(n, k, r, delta).b as i64;
    let (n, k, r, delta) = t.signed();
    let base = n - k + 1 - ceil_div(t.k, t.r) as i64 * (delta - 1);
    Ok(if b >= r { base + b - r } else { base })
}

/// `d_old = n - k + 1 - ⌈k/r⌉(δ-1) + (b - r)`, the `b >= r` expression used
/// when comparing against the improved bound.
pub fn d_old(n: usize, k: usize, r: usize, delta: usize) -> i64 {
    let c = constants(n, k, r, delta);
    let (n, k, r, delta) = ParamTuple::new(n, k, r, delta).signed();
    n - k + 1 - c.groups as i64 * (delta - 1) + c.b as i64 - r
}

/// Which of the two cases of the improved bound applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `δ - 1 <= (⌈k/r⌉-1)q + min(v, ⌈k/r⌉-1)`: the bound is `n - k + 1 - ⌈k/r⌉(δ-1)`.
    Remaining,
    /// Otherwise the bound is `d_new`.
    Improved,
}

/// The improved lower bound with its intermediate quantities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ImprovedBound {
    pub value: i64,
    pub branch: Branch,
    /// `n - k + 1 - (⌈k/r⌉-1)(q + δ - 1) - min(v, ⌈k/r⌉-1)`.
    pub d_new: i64,
    /// `⌈n/(r+δ-1)⌉ - 1`.
    pub m: usize,
    /// `⌊(r+δ-1-b)/m⌋`.
    pub q: usize,
    /// `r+δ-1-b-qm`.
    pub v: usize,
}

/// The improved lower bound for `0 < r < k` and `b > a`.
pub fn theorem14_lower_bound(n: usize, k: usize, r: usize, delta: usize) -> Result<ImprovedBound, Error> {
    let t = ParamTuple::new(n, k, r, delta);
    require_b_above_a(t)?;
    if r >= k {
        return Err(Error::BadParams(format!("bound needs r < k, got r={r} k={k}")));
    }
    let c = constants(n, k, r, delta);
    let block = r + delta - 1;
    let m = c.blocks - 1;
    if m == 0 {
        return Err(Error::BadParams("⌈n/(r+δ-1)⌉ must exceed 1".into()));
    }
    let spare = block - c.b;
    let q = spare / m;
    let v = spare - q * m;
    let g = c.groups - 1;
    let (ni, ki, _, di) = t.signed();
    let spread = (g * q + v.min(g)) as i64;
    let d_new = ni - ki + 1 - (g * (q + delta - 1) + v.min(g)) as i64;
    let remaining = ni - ki + 1 - c.groups as i64 * (di - 1);
    let (value, branch) = if di - 1 <= spread {
        (remaining, Branch::Remaining)
    } else {
        (d_new, Branch::Improved)
    };
    Ok(ImprovedBound {
        value,
        branch,
        d_new,
        m,
        q,
        v,
    })
}

/// `q (m - ⌈k/r⌉ + 1)`, the guaranteed gap `d_new - d_old`.
pub fn improvement_floor(n: usize, k: usize, r: usize, delta: usize) -> Result<i64, Error> {
    let b = theorem14_lower_bound(n, k, r, delta)?;
    let groups = ceil_div(k, r) as i64;
    Ok(b.q as i64 * (b.m as i64 - groups + 1))
}

/// The graph behind the improved bound: `m = ⌈n/(r+δ-1)⌉ - 1` vertices, no
/// edges, `α ≡ 0`, and `β` spread as `⌈(r+δ-1-b)/m⌉` on the first `v`
/// vertices and `⌊(r+δ-1-b)/m⌋` on the rest.
pub fn theorem14_graph(n: usize, k: usize, r: usize, delta: usize) -> Result<ConstructionGraph, Error> {
    let bound = theorem14_lower_bound(n, k, r, delta)?;
    let beta = (0..bound.m)
        .map(|i| (bound.q + usize::from(i < bound.v)) as i64)
        .collect();
    Ok(ConstructionGraph::edgeless(vec![0; bound.m], beta, k, r, delta))
}

/// Builds the improved-bound graph instance. The built matroid has exactly
/// `n` elements and minimum distance `d_new`.
pub fn theorem14_construction(n: usize, k: usize, r: usize, delta: usize) -> Result<AtomMatroid, Error> {
    let bound = theorem14_lower_bound(n, k, r, delta)?;
    let g = theorem14_graph(n, k, r, delta)?;
    let (am, params) = constructions::graph_construction(&g)?;
    if params.n != n {
        return Err(Error::FormulaMismatch(format!("built {} elements, wanted {n}", params.n)));
    }
    if params.d as i64 != bound.d_new {
        return Err(Error::FormulaMismatch(format!(
            "built d = {}, d_new = {}",
            params.d, bound.d_new
        )));
    }
    Ok(am)
}

/// What one redistribution step did after removing `removed` from `atom`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "action", rename_all = "snake_case")]
pub enum StepAction {
    /// The element joined `target`, whose rank went up by one.
    RaisedRank { target: usize },
    /// The element replaced `shared` in `target`; `partner` keeps `shared`.
    Swapped { target: usize, partner: usize, shared: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RedistributionStep {
    pub atom: usize,
    pub removed: usize,
    #[serde(flatten)]
    pub action: StepAction,
}

/// Total nullity above `δ - 1` over all atoms.
pub fn excess_nullity(am: &AtomMatroid, delta: usize) -> i64 {
    am.atoms
        .iter()
        .map(|a| (a.nullity() - (delta as i64 - 1)).max(0))
        .sum()
}

/// One nullity redistribution step on a restricted-intersection matroid.
///
/// Takes the lowest atom `F_u` with `η(F_u) > δ - 1` and removes its lowest
/// private element `x`. Then `x` joins the lowest atom of rank below `r`
/// (raising that rank), or if every atom has rank `r`, replaces the lowest
/// element `y` of `F_k ∩ F_l` in `F_k` for the lexicographically first
/// intersecting pair `(k, l)`. The result is rebuilt and revalidated.
pub fn redistribute_nullity(
    am: &AtomMatroid,
    r: usize,
    delta: usize,
) -> Result<(AtomMatroid, RedistributionStep), Error> {
    let n = am.n();
    let u = am
        .atoms
        .iter()
        .position(|a| a.nullity() > delta as i64 - 1)
        .ok_or(Error::NoExcessNullity)?;
    let groups = ceil_div(am.k, r);
    if am.max_below_k_size() != groups - 1 {
        return Err(Error::PreconditionFailed(format!(
            "largest index set below k has size {}, want ⌈k/r⌉ - 1 = {}",
            am.max_below_k_size(),
            groups - 1
        )));
    }
    let blocks = ceil_div(n, r + delta - 1);
    if am.atoms.len() < blocks {
        return Err(Error::PreconditionFailed(format!(
            "needs at least ⌈n/(r+δ-1)⌉ = {blocks} atoms, got {}",
            am.atoms.len()
        )));
    }
    if let Some(i) = am.atoms.iter().position(|a| a.rank > r) {
        return Err(Error::PreconditionFailed(format!("atom {i} has rank above r = {r}")));
    }
    let x = am
        .private_elements(u)
        .first()
        .ok_or_else(|| Error::PreconditionFailed(format!("atom {u} has no private element")))?;

    let mut atoms: Vec<AtomSpec> = am.atoms.clone();
    atoms[u].set = atoms[u].set.remove(x);
    let action = if let Some(j) = atoms.iter().position(|a| a.rank < r) {
        atoms[j].set = atoms[j].set.insert(x);
        atoms[j].rank += 1;
        StepAction::RaisedRank { target: j }
    } else {
        let m = atoms.len();
        let pair = (0..m)
            .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
            .find(|&(i, j)| !atoms[i].set.intersection(atoms[j].set).is_empty());
        let (k, l) = pair.ok_or(Error::NoDonorPair)?;
        let y = atoms[k].set.intersection(atoms[l].set).first().unwrap();
        atoms[k].set = atoms[k].set.remove(y).insert(x);
        StepAction::Swapped {
            target: k,
            partner: l,
            shared: y,
        }
    };
    let next = constructions::theorem9(n, &atoms, am.k)?;
    if next.max_below_k_size() != groups - 1 {
        return Err(Error::FormulaMismatch(format!(
            "largest index set below k changed to {}",
            next.max_below_k_size()
        )));
    }
    Ok((
        next,
        RedistributionStep {
            atom: u,
            removed: x,
            action,
        },
    ))
}

/// Repeats [`redistribute_nullity`] until every atom has nullity `δ - 1`.
/// A matroid already at that point comes back unchanged with no steps.
pub fn redistribute_to_fixed_point(
    am: &AtomMatroid,
    r: usize,
    delta: usize,
) -> Result<(AtomMatroid, Vec<RedistributionStep>), Error> {
    let mut current = am.clone();
    let mut steps = Vec::new();
    loop {
        match redistribute_nullity(&current, r, delta) {
            Ok((next, step)) => {
                current = next;
                steps.push(step);
            }
            Err(Error::NoExcessNullity) => return Ok((current, steps)),
            Err(e) => return Err(e),
        }
    }
}

/// Which construction witnesses the Singleton bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// `r = k`: the uniform matroid `U_{n,k}`.
    Uniform,
    /// `a >= b`: `⌈n/(r+δ-1)⌉` disjoint atoms of nullity `δ - 1`.
    Disjoint,
    /// Shared-core construction for `⌈k/r⌉ = 2`.
    SharedCore,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Achievability {
    Yes { witness: Witness },
    Unknown { reason: String },
}

impl Achievability {
    pub fn label(&self) -> String {
        match self {
            Achievability::Yes { witness } => {
                format!("yes:{}", serde_json::to_value(witness).unwrap().as_str().unwrap())
            }
            Achievability::Unknown { .. } => "unknown".into(),
        }
    }
}

/// Singleton bound, lower bounds and achievability for a parameter tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub params: ParamTuple,
    pub a: usize,
    pub b: usize,
    pub singleton: usize,
    pub old_lower: Option<i64>,
    pub new_lower: Option<i64>,
    pub branch: Option<Branch>,
    pub achievable: Achievability,
    #[serde(skip)]
    pub witness: Option<Matroid>,
}

/// Atoms for the disjoint witness: `⌈n/(r+δ-1)⌉` disjoint blocks of nullity
/// `δ - 1`, the first one with rank `r - b`, the others with rank `r`.
pub fn disjoint_witness_atoms(n: usize, k: usize, r: usize, delta: usize) -> Vec<AtomSpec> {
    let c = constants(n, k, r, delta);
    let mut next = 0;
    (0..c.blocks)
        .map(|i| {
            let rank = if i == 0 { r - c.b } else { r };
            let size = rank + delta - 1;
            let set = Subset::range(next, next + size);
            next += size;
            AtomSpec::new(set, rank)
        })
        .collect()
}

fn rule(t: ParamTuple) -> Achievability {
    let c = constants(t.n, t.k, t.r, t.delta);
    if t.r == t.k {
        return Achievability::Yes { witness: Witness::Uniform };
    }
    if c.a >= c.b {
        return Achievability::Yes { witness: Witness::Disjoint };
    }
    match constructions::theorem11_preconditions(t.n, t.k, t.r, t.delta) {
        Ok(()) => Achievability::Yes { witness: Witness::SharedCore },
        Err(Error::PreconditionFailed(p)) => Achievability::Unknown {
            reason: format!("b > a and the shared-core construction does not apply: {p}"),
        },
        Err(e) => Achievability::Unknown { reason: e.to_string() },
    }
}

fn build_witness(t: ParamTuple, w: Witness) -> Result<Matroid, Error> {
    match w {
        Witness::Uniform => Matroid::uniform(t.n, t.k),
        Witness::Disjoint => {
            let atoms = disjoint_witness_atoms(t.n, t.k, t.r, t.delta);
            Ok(constructions::theorem9(t.n, &atoms, t.k)?.matroid)
        }
        Witness::SharedCore => {
            Ok(constructions::theorem11_construction(t.n, t.k, t.r, t.delta)?.matroid)
        }
    }
}

fn report(t: ParamTuple, build: bool) -> Result<BoundReport, Error> {
    require_valid(t)?;
    let c = constants(t.n, t.k, t.r, t.delta);
    let singleton = analysis::singleton_bound(t.n, t.k, t.r, t.delta)?;
    let (old_lower, new_lower, branch) = if c.b > c.a {
        let old = old_lower_bound(t.n, t.k, t.r, t.delta).ok();
        match theorem14_lower_bound(t.n, t.k, t.r, t.delta) {
            Ok(b) => (old, Some(b.value), Some(b.branch)),
            Err(_) => (old, None, None),
        }
    } else {
        (None, None, None)
    };
    let achievable = rule(t);
    let witness = match (&achievable, build) {
        (Achievability::Yes { witness }, true) => {
            let m = build_witness(t, *witness)?;
            if !analysis::achieves_bound(&m, t.r, t.delta)? {
                return Err(Error::FormulaMismatch(format!(
                    "{witness:?} witness for {t:?} misses the Singleton bound"
                )));
            }
            Some(m)
        }
        _ => None,
    };
    Ok(BoundReport {
        params: t,
        a: c.a,
        b: c.b,
        singleton,
        old_lower,
        new_lower,
        branch,
        achievable,
        witness,
    })
}

/// Classifies a tuple, building and checking the witness for every `Yes`.
/// Never answers "no": tuples outside the known constructions are `Unknown`.
pub fn classify_achievability(n: usize, k: usize, r: usize, delta: usize) -> Result<BoundReport, Error> {
    report(ParamTuple::new(n, k, r, delta), true)
}

/// Like [`classify_achievability`] but decides by the construction
/// preconditions alone, without building witnesses.
pub fn classify_by_rule(n: usize, k: usize, r: usize, delta: usize) -> Result<BoundReport, Error> {
    report(ParamTuple::new(n, k, r, delta), false)
}

/// Every valid `(n, k, r, δ)` with `n <= n_max`, in lexicographic order.
pub fn valid_tuples(n_max: usize) -> Vec<ParamTuple> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for k in 1..=n {
            for r in 1..=k {
                for delta in 2..=n {
                    if analysis::validate_params(n, k, r, delta) {
                        out.push(ParamTuple::new(n, k, r, delta));
                    }
                }
            }
        }
    }
    out
}

/// One line of a sweep table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub delta: usize,
    pub singleton: usize,
    pub old: Option<i64>,
    pub new: Option<i64>,
    pub verdict: String,
}

impl SweepRow {
    pub const CSV_HEADER: &'static str = "n,k,r,delta,singleton,old,new,verdict";

    pub fn to_csv(&self) -> String {
        let opt = |v: Option<i64>| v.map(|x| x.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{}",
            self.n,
            self.k,
            self.r,
            self.delta,
            self.singleton,
            opt(self.old),
            opt(self.new),
            self.verdict
        )
    }
}

/// Sweeps every valid tuple with `n <= n_max`. Witnesses are built and
/// checked for `n <= build_max`; larger tuples are classified by rule.
pub fn sweep(n_max: usize, build_max: usize) -> Result<Vec<SweepRow>, Error> {
    valid_tuples(n_max)
        .into_par_iter()
        .map(|t| {
            let rep = report(t, t.n <= build_max)?;
            Ok(SweepRow {
                n: t.n,
                k: t.k,
                r: t.r,
                delta: t.delta,
                singleton: rep.singleton,
                old: rep.old_lower,
                new: rep.new_lower,
                verdict: rep.achievable.label(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    #[test]
    fn old_bound_cases() {
        assert_eq!(old_lower_bound(7, 4, 2, 2).unwrap(), 2);
        assert_eq!(old_lower_bound(10, 5, 3, 2).unwrap(), 4);
        assert!(matches!(old_lower_bound(9, 4, 2, 2), Err(Error::BadParams(_))));
    }

    #[test]
    fn improved_bound_walkthrough() {
        let b = theorem14_lower_bound(7, 4, 2, 2).unwrap();
        assert_eq!((b.m, b.q, b.v), (2, 0, 1));
        assert_eq!(b.branch, Branch::Remaining);
        assert_eq!(b.value, 2);
        assert_eq!(improvement_floor(7, 4, 2, 2).unwrap(), 0);
        assert!(matches!(theorem14_lower_bound(9, 4, 2, 2), Err(Error::BadParams(_))));
        let b = theorem14_lower_bound(10, 5, 3, 2).unwrap();
        assert_eq!((b.m, b.q, b.v, b.d_new), (2, 1, 0, 4));
    }

    #[test]
    fn improved_graph_instances() {
        let g = theorem14_graph(7, 4, 2, 2).unwrap();
        assert_eq!(g.beta, vec![1, 0]);
        let am = theorem14_construction(7, 4, 2, 2).unwrap();
        let sizes: Vec<usize> = am.atoms.iter().map(|a| a.set.len()).collect();
        assert_eq!(sizes, vec![4, 3]);
        assert_eq!(oracle::oracle_d(&am.matroid).unwrap(), 2);

        let g = theorem14_graph(10, 5, 3, 2).unwrap();
        assert_eq!(g.beta, vec![1, 1]);
        let am = theorem14_construction(10, 5, 3, 2).unwrap();
        assert_eq!(am.n(), 10);
        assert_eq!(oracle::oracle_d(&am.matroid).unwrap(), 4);
        assert!(theorem14_construction(9, 4, 2, 2).is_err());
    }

    fn three_atoms() -> AtomMatroid {
        // ranks (3,2,2), nullities (2,1,1)
        let atoms = [
            AtomSpec::new(Subset::range(0, 5), 3),
            AtomSpec::new(Subset::range(5, 8), 2),
            AtomSpec::new(Subset::range(8, 11), 2),
        ];
        constructions::theorem9(11, &atoms, 4).unwrap()
    }

    #[test]
    fn redistribution_reaches_uniform_nullity() {
        let am = three_atoms();
        let nullities: Vec<i64> = am.atoms.iter().map(AtomSpec::nullity).collect();
        assert_eq!(nullities, vec![2, 1, 1]);
        let (out, steps) = redistribute_to_fixed_point(&am, 3, 2).unwrap();
        assert_eq!(steps.len(), 1);
        assert_eq!(steps[0].action, StepAction::RaisedRank { target: 1 });
        let nullities: Vec<i64> = out.atoms.iter().map(AtomSpec::nullity).collect();
        assert_eq!(nullities, vec![1, 1, 1]);
        assert_eq!(out.n(), 11);
        assert!(matches!(redistribute_nullity(&out, 3, 2), Err(Error::NoExcessNullity)));
        let (again, none) = redistribute_to_fixed_point(&out, 3, 2).unwrap();
        assert!(none.is_empty());
        assert_eq!(again, out);
    }

    #[test]
    fn redistribution_swaps_when_ranks_are_full() {
        // all ranks r = 2; atoms 1 and 2 share element 4
        let atoms = [
            AtomSpec::new(Subset::range(0, 4), 2),
            AtomSpec::new(Subset::from_elements([4, 5, 6]), 2),
            AtomSpec::new(Subset::from_elements([4, 7, 8]), 2),
        ];
        let am = constructions::theorem9(9, &atoms, 3).unwrap();
        let (out, step) = redistribute_nullity(&am, 2, 2).unwrap();
        assert_eq!(step.removed, 0);
        assert_eq!(
            step.action,
            StepAction::Swapped { target: 1, partner: 2, shared: 4 }
        );
        assert_eq!(out.atoms[1].set, Subset::from_elements([0, 5, 6]));
        assert_eq!(excess_nullity(&out, 2), 0);
    }

    #[test]
    fn classifier_examples() {
        let rep = classify_achievability(4, 2, 2, 2).unwrap();
        assert_eq!(rep.achievable, Achievability::Yes { witness: Witness::Uniform });
        let rep = classify_achievability(10, 5, 3, 2).unwrap();
        assert_eq!(rep.achievable, Achievability::Yes { witness: Witness::SharedCore });
        assert_eq!(rep.singleton, 5);
        let rep = classify_achievability(7, 4, 2, 2).unwrap();
        assert!(matches!(rep.achievable, Achievability::Unknown { .. }));
        assert_eq!((rep.singleton, rep.new_lower), (3, Some(2)));
        let rep = classify_achievability(9, 4, 2, 2).unwrap();
        assert_eq!(rep.achievable, Achievability::Yes { witness: Witness::Disjoint });
        assert!(classify_achievability(4, 3, 1, 3).is_err());
    }

    #[test]
    fn sweep_rows() {
        let rows = sweep(8, 8).unwrap();
        assert_eq!(rows.len(), valid_tuples(8).len());
        let row = rows
            .iter()
            .find(|r| (r.n, r.k, r.r, r.delta) == (7, 4, 2, 2))
            .unwrap();
        assert_eq!(row.to_csv(), "7,4,2,2,3,2,2,unknown");
    }
}
