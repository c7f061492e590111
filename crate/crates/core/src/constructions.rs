//! Matroids built from atoms with prescribed ranks: the general atom
//! construction, its restricted-intersection subclass, the weighted-graph
//! construction and the shared-core construction for `⌈k/r⌉ = 2`.
//!
//! Every builder produces an [`AtomMatroid`]: the matroid (stored as its
//! lattice of cyclic flats) together with the atoms it was built from.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::analysis::{self, LrcParams};
use crate::matroid::{CyclicFlat, CyclicFlatLattice, Matroid};
use crate::subset::{subsets_of_size, Subset};
use crate::{ceil_div, Error};

/// Largest number of atoms the builders enumerate unions over.
pub const MAX_ATOMS: usize = 20;

/// A building-block set `F_i` with its prescribed rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AtomSpec {
    pub set: Subset,
    pub rank: usize,
}

impl AtomSpec {
    pub fn new(set: Subset, rank: usize) -> Self {
        AtomSpec { set, rank }
    }

    /// `η(F_i) = |F_i| - rho(F_i)`, negative when the declared rank is too big.
    pub fn nullity(&self) -> i64 {
        self.set.len() as i64 - self.rank as i64
    }
}

/// One violated construction condition with a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionViolation {
    /// Condition label, e.g. `"iv"`.
    pub condition: String,
    /// Atom indices (or graph vertices) involved in the witness.
    pub atoms: Vec<usize>,
    pub detail: String,
}

impl ConditionViolation {
    fn new(condition: &str, atoms: Vec<usize>, detail: String) -> Self {
        ConditionViolation {
            condition: condition.into(),
            atoms,
            detail,
        }
    }
}

impl fmt::Display for ConditionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) {}", self.condition, self.detail)
    }
}

/// Unions, sizes and reduced ranks `rho'(F_I) = |F_I| - Σ_{i∈I} η(F_i)` for
/// every index set `I`, indexed by bitmask.
struct UnionTable {
    unions: Vec<Subset>,
    reduced: Vec<i64>,
}

impl UnionTable {
    fn new(atoms: &[AtomSpec]) -> Self {
        let m = atoms.len();
        let size = 1usize << m;
        let mut unions = vec![Subset::EMPTY; size];
        let mut eta_sum = vec![0i64; size];
        for mask in 1..size {
            let low = mask.trailing_zeros() as usize;
            let prev = mask & (mask - 1);
            unions[mask] = unions[prev].union(atoms[low].set);
            eta_sum[mask] = eta_sum[prev] + atoms[low].nullity();
        }
        let reduced = (0..size)
            .map(|i| unions[i].len() as i64 - eta_sum[i])
            .collect();
        UnionTable { unions, reduced }
    }

    /// `Z_{<k}` as index masks: every `J` all of whose subsets have `rho' < k`.
    fn below_k(&self, k: usize) -> Vec<bool> {
        let size = self.unions.len();
        let mut inside = vec![false; size];
        for mask in 0..size {
            if self.reduced[mask] >= k as i64 {
                continue;
            }
            let mut ok = true;
            let mut bits = mask;
            while bits != 0 {
                let low = bits & bits.wrapping_neg();
                if !inside[mask ^ low] {
                    ok = false;
                    break;
                }
                bits ^= low;
            }
            inside[mask] = ok;
        }
        inside
    }
}

fn mask_indices(mask: usize) -> Vec<usize> {
    Subset(mask as u64).to_vec()
}

fn check_atom_count(atoms: &[AtomSpec]) -> Result<(), Error> {
    if atoms.is_empty() {
        return Err(Error::BadParams("at least one atom is required".into()));
    }
    if atoms.len() > MAX_ATOMS {
        return Err(Error::TooLarge {
            n: atoms.len(),
            limit: MAX_ATOMS,
        });
    }
    Ok(())
}

/// A matroid built from atoms, with the data needed to re-derive its
/// parameters in closed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomMatroid {
    pub matroid: Matroid,
    pub atoms: Vec<AtomSpec>,
    pub k: usize,
    /// Index sets `J` with `F_J ∈ Z_{<k}`.
    pub below_k: Vec<Vec<usize>>,
}

impl AtomMatroid {
    pub fn n(&self) -> usize {
        self.matroid.n()
    }

    /// `max_i rho(F_i)`.
    pub fn r(&self) -> usize {
        self.atoms.iter().map(|a| a.rank).max().unwrap_or(0)
    }

    /// `min_i η(F_i) + 1`.
    pub fn delta(&self) -> usize {
        self.atoms.iter().map(|a| a.nullity()).min().unwrap_or(0) as usize + 1
    }

    /// `max{|I| : F_I ∈ Z_{<k}}`.
    pub fn max_below_k_size(&self) -> usize {
        self.below_k.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `max{Σ_{i∈I} η(F_i) : F_I ∈ Z_{<k}}`.
    pub fn max_below_k_nullity(&self) -> usize {
        self.below_k
            .iter()
            .map(|idx| idx.iter().map(|&i| self.atoms[i].nullity()).sum::<i64>())
            .max()
            .unwrap_or(0) as usize
    }

    /// The closed-form parameters: `n = |E|`, `k = rho(E)`,
    /// `d = n - k + 1 - max Σ η over Z_{<k}`, `δ - 1 = min η(F_i)`,
    /// `r = max rho(F_i)`.
    pub fn predicted_params(&self) -> LrcParams {
        let n = self.n();
        LrcParams {
            n,
            k: self.k,
            d: n + 1 - self.k - self.max_below_k_nullity(),
            r: self.r(),
            delta: self.delta(),
        }
    }

    /// Rank `rho'(F_I) = |F_I| - Σ η(F_i)` of a union of atoms, before capping at `k`.
    pub fn reduced_rank(&self, idx: &[usize]) -> i64 {
        let union = idx
            .iter()
            .fold(Subset::EMPTY, |a, &i| a.union(self.atoms[i].set));
        union.len() as i64 - idx.iter().map(|&i| self.atoms[i].nullity()).sum::<i64>()
    }

    pub fn union_of(&self, idx: &[usize]) -> Subset {
        idx.iter()
            .fold(Subset::EMPTY, |a, &i| a.union(self.atoms[i].set))
    }

    /// Elements of atom `i` that belong to no other atom.
    pub fn private_elements(&self, i: usize) -> Subset {
        let others = self
            .atoms
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(Subset::EMPTY, |a, (_, f)| a.union(f.set));
        self.atoms[i].set.difference(others)
    }
}

/// Every violated condition of the general atom construction on the ground
/// set `{0, .., n-1}`:
///
/// - (i) nontrivial union covering `E`;
/// - (ii) `0 < rho(F_i) < |F_i|`;
/// - (iii) some `I` with `|F_I| - Σ η(F_i) >= k`;
/// - (iv) `F_I ∈ Z_{<k}`, `j ∉ I` implies `|F_I ∩ F_j| < rho(F_j)`;
/// - (v) `F_I, F_J ∈ Z_{<k}`, `F_{I∪J} ∉ Z_{<k}` implies `rho'(F_{I∪J}) >= k`.
pub fn construction1_conditions(n: usize, atoms: &[AtomSpec], k: usize) -> Result<Vec<ConditionViolation>, Error> {
    check_atom_count(atoms)?;
    let e = Subset::full(n);
    let m = atoms.len();
    let mut out = Vec::new();

    if let Some((i, _)) = atoms.iter().enumerate().find(|(_, a)| !a.set.is_subset_of(e)) {
        out.push(ConditionViolation::new("i", vec![i], format!("F_{i} leaves the ground set")));
    }
    let sets: Vec<Subset> = atoms.iter().map(|a| a.set).collect();
    let union = sets.iter().fold(Subset::EMPTY, |a, &b| a.union(b));
    if union != e {
        out.push(ConditionViolation::new(
            "i",
            vec![],
            format!("union of atoms is {union}, not E"),
        ));
    } else if let Some(l) = (0..m).find(|&l| {
        let others = sets
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != l)
            .fold(Subset::EMPTY, |a, (_, &b)| a.union(b));
        sets[l].is_subset_of(others)
    }) {
        out.push(ConditionViolation::new(
            "i",
            vec![l],
            format!("F_{l} is covered by the other atoms"),
        ));
    }
    if let Some((i, a)) = atoms
        .iter()
        .enumerate()
        .find(|(_, a)| a.rank == 0 || a.rank >= a.set.len())
    {
        out.push(ConditionViolation::new(
            "ii",
            vec![i],
            format!("rank {} of F_{i} not in (0, {})", a.rank, a.set.len()),
        ));
    }
    if k == 0 {
        out.push(ConditionViolation::new("iii", vec![], "k must be positive".into()));
        return Ok(out);
    }
    let table = UnionTable::new(atoms);
    if !table.reduced.iter().any(|&v| v >= k as i64) {
        out.push(ConditionViolation::new(
            "iii",
            vec![],
            format!("no union of atoms reaches reduced rank {k}"),
        ));
    }
    let inside = table.below_k(k);
    let members: Vec<usize> = (0..inside.len()).filter(|&j| inside[j]).collect();
    'iv: for &mask in &members {
        for j in 0..m {
            if mask >> j & 1 == 1 {
                continue;
            }
            let overlap = table.unions[mask].intersection(atoms[j].set).len();
            if overlap >= atoms[j].rank {
                let mut w = mask_indices(mask);
                w.push(j);
                out.push(ConditionViolation::new(
                    "iv",
                    w,
                    format!(
                        "|F_I ∩ F_{j}| = {overlap} >= rho(F_{j}) = {} for I = {:?}",
                        atoms[j].rank,
                        mask_indices(mask)
                    ),
                ));
                break 'iv;
            }
        }
    }
    'v: for (a, &i) in members.iter().enumerate() {
        for &j in &members[a..] {
            let u = i | j;
            if !inside[u] && table.reduced[u] < k as i64 {
                out.push(ConditionViolation::new(
                    "v",
                    mask_indices(u),
                    format!(
                        "F_{{I∪J}} for I = {:?}, J = {:?} leaves Z_<k with reduced rank {} < {k}",
                        mask_indices(i),
                        mask_indices(j),
                        table.reduced[u]
                    ),
                ));
                break 'v;
            }
        }
    }
    Ok(out)
}

/// The general atom construction: the lattice `Z_{<k} ∪ {E}` with
/// `rho(F_I) = |F_I| - Σ η(F_i)` and `rho(E) = k`.
pub fn construction1(n: usize, atoms: &[AtomSpec], k: usize) -> Result<AtomMatroid, Error> {
    let violations = construction1_conditions(n, atoms, k)?;
    if !violations.is_empty() {
        return Err(Error::ConditionViolated(violations));
    }
    let table = UnionTable::new(atoms);
    let inside = table.below_k(k);
    let mut flats = Vec::new();
    let mut below_k = Vec::new();
    for (mask, &is_in) in inside.iter().enumerate() {
        if is_in {
            flats.push(CyclicFlat {
                set: table.unions[mask],
                rank: table.reduced[mask] as usize,
            });
            below_k.push(mask_indices(mask));
        }
    }
    flats.push(CyclicFlat {
        set: Subset::full(n),
        rank: k,
    });
    let matroid = Matroid::from_cyclic_flats(CyclicFlatLattice::new(n, flats))?;
    below_k.sort();
    Ok(AtomMatroid {
        matroid,
        atoms: atoms.to_vec(),
        k,
        below_k,
    })
}

/// Every violated condition of the restricted-intersection subclass:
///
/// - (i) `0 < rho(F_i) < |F_i|`;
/// - (ii) `F_[m] = E`;
/// - (iii) `k <= |F_[m]| - Σ η(F_i)`;
/// - (iv) `|F_{[m]∖{j}} ∩ F_j| < rho(F_j)`.
pub fn theorem9_conditions(n: usize, atoms: &[AtomSpec], k: usize) -> Result<Vec<ConditionViolation>, Error> {
    check_atom_count(atoms)?;
    let e = Subset::full(n);
    let mut out = Vec::new();
    if let Some((i, a)) = atoms
        .iter()
        .enumerate()
        .find(|(_, a)| a.rank == 0 || a.rank >= a.set.len())
    {
        out.push(ConditionViolation::new(
            "i",
            vec![i],
            format!("rank {} of F_{i} not in (0, {})", a.rank, a.set.len()),
        ));
    }
    let union = atoms.iter().fold(Subset::EMPTY, |a, f| a.union(f.set));
    if union != e {
        out.push(ConditionViolation::new(
            "ii",
            vec![],
            format!("union of atoms is {union}, not E = {e}"),
        ));
    }
    let eta_total: i64 = atoms.iter().map(AtomSpec::nullity).sum();
    let reduced = union.len() as i64 - eta_total;
    if k == 0 || (k as i64) > reduced {
        out.push(ConditionViolation::new(
            "iii",
            vec![],
            format!("k = {k} must lie in 1..={reduced}"),
        ));
    }
    for (j, a) in atoms.iter().enumerate() {
        let others = atoms
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != j)
            .fold(Subset::EMPTY, |acc, (_, f)| acc.union(f.set));
        let overlap = others.intersection(a.set).len();
        if overlap >= a.rank {
            out.push(ConditionViolation::new(
                "iv",
                vec![j],
                format!("F_{j} shares {overlap} elements with the other atoms, rank is {}", a.rank),
            ));
            break;
        }
    }
    Ok(out)
}

/// Builds a matroid from atoms meeting the restricted-intersection
/// conditions. Such atoms always satisfy the general construction's
/// conditions too; the general builder re-checks them.
pub fn theorem9(n: usize, atoms: &[AtomSpec], k: usize) -> Result<AtomMatroid, Error> {
    let violations = theorem9_conditions(n, atoms, k)?;
    if !violations.is_empty() {
        return Err(Error::ConditionViolated(violations));
    }
    construction1(n, atoms, k)
}

/// A weighted graph describing how atoms overlap: vertices are atoms,
/// `gamma` on an edge is the number of shared elements, `alpha` lowers an
/// atom's rank below `r` and `beta` raises its nullity above `δ - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionGraph {
    pub m: usize,
    pub edges: Vec<GraphEdge>,
    pub alpha: Vec<i64>,
    pub beta: Vec<i64>,
    pub k: usize,
    pub r: usize,
    pub delta: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphEdge {
    pub u: usize,
    pub v: usize,
    pub gamma: i64,
}

impl ConstructionGraph {
    /// Edgeless graph with the given labels.
    pub fn edgeless(alpha: Vec<i64>, beta: Vec<i64>, k: usize, r: usize, delta: usize) -> Self {
        ConstructionGraph {
            m: alpha.len(),
            edges: Vec::new(),
            alpha,
            beta,
            k,
            r,
            delta,
        }
    }

    fn edge_weight(&self, i: usize, j: usize) -> Option<i64> {
        self.edges
            .iter()
            .find(|e| (e.u == i && e.v == j) || (e.u == j && e.v == i))
            .map(|e| e.gamma)
    }

    fn incident_weight(&self, i: usize) -> i64 {
        self.edges
            .iter()
            .filter(|e| e.u == i || e.v == i)
            .map(|e| e.gamma)
            .sum()
    }

    /// `n = (r+δ-1)m - Σα + Σβ - Σγ`.
    pub fn formula_n(&self) -> i64 {
        let block = (self.r + self.delta - 1) as i64;
        block * self.m as i64 - self.alpha.iter().sum::<i64>() + self.beta.iter().sum::<i64>()
            - self.edges.iter().map(|e| e.gamma).sum::<i64>()
    }

    /// Index sets `I` with `r|I| - Σ_I α - Σ_{edges inside I} γ < k`.
    pub fn below_k(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for mask in 0..(1u64 << self.m) {
            let idx = Subset(mask).to_vec();
            let inner: i64 = self
                .edges
                .iter()
                .filter(|e| mask >> e.u & 1 == 1 && mask >> e.v & 1 == 1)
                .map(|e| e.gamma)
                .sum();
            let value = self.r as i64 * idx.len() as i64
                - idx.iter().map(|&i| self.alpha[i]).sum::<i64>()
                - inner;
            if value < self.k as i64 {
                out.push(idx);
            }
        }
        out
    }

    /// `d = n - k + 1 - max_{I ∈ V_{<k}} ((δ-1)|I| + Σ_I β)`, over all of `V_{<k}`.
    pub fn formula_d(&self) -> i64 {
        let best = self
            .below_k()
            .iter()
            .map(|idx| {
                (self.delta as i64 - 1) * idx.len() as i64
                    + idx.iter().map(|&i| self.beta[i]).sum::<i64>()
            })
            .max()
            .unwrap_or(0);
        self.formula_n() - self.k as i64 + 1 - best
    }

    /// Every violated condition among (i)–(vi), plus basic shape checks.
    pub fn conditions(&self) -> Vec<ConditionViolation> {
        let mut out = Vec::new();
        let m = self.m;
        if self.alpha.len() != m || self.beta.len() != m {
            out.push(ConditionViolation::new(
                "shape",
                vec![],
                format!(
                    "alpha has {} and beta {} labels for {m} vertices",
                    self.alpha.len(),
                    self.beta.len()
                ),
            ));
            return out;
        }
        if m == 0 || m > MAX_ATOMS {
            out.push(ConditionViolation::new(
                "shape",
                vec![],
                format!("vertex count {m} outside 1..={MAX_ATOMS}"),
            ));
            return out;
        }
        if !(0 < self.r && self.r < self.k) || self.delta < 2 {
            out.push(ConditionViolation::new(
                "shape",
                vec![],
                format!(
                    "needs 0 < r < k and δ >= 2, got r={} k={} δ={}",
                    self.r, self.k, self.delta
                ),
            ));
        }
        for (idx, e) in self.edges.iter().enumerate() {
            if e.u >= m || e.v >= m || e.u == e.v {
                out.push(ConditionViolation::new(
                    "shape",
                    vec![e.u, e.v],
                    format!("edge {idx} ({}, {}) is not between distinct vertices", e.u, e.v),
                ));
                return out;
            }
            if self.edges[..idx]
                .iter()
                .any(|f| (f.u == e.u && f.v == e.v) || (f.u == e.v && f.v == e.u))
            {
                out.push(ConditionViolation::new(
                    "shape",
                    vec![e.u, e.v],
                    format!("edge ({}, {}) listed twice", e.u, e.v),
                ));
                return out;
            }
        }
        'tri: for a in 0..m {
            for b in a + 1..m {
                for c in b + 1..m {
                    if self.edge_weight(a, b).is_some()
                        && self.edge_weight(b, c).is_some()
                        && self.edge_weight(a, c).is_some()
                    {
                        out.push(ConditionViolation::new(
                            "i",
                            vec![a, b, c],
                            format!("3-cycle on vertices {a}, {b}, {c}"),
                        ));
                        break 'tri;
                    }
                }
            }
        }
        let r = self.r as i64;
        if let Some(i) = (0..m).find(|&i| !(0..r).contains(&self.alpha[i])) {
            out.push(ConditionViolation::new(
                "ii",
                vec![i],
                format!("alpha({i}) = {} outside 0..={}", self.alpha[i], r - 1),
            ));
        }
        if let Some(i) = (0..m).find(|&i| self.beta[i] < 0) {
            out.push(ConditionViolation::new(
                "iii",
                vec![i],
                format!("beta({i}) = {} is negative", self.beta[i]),
            ));
        }
        if let Some(e) = self.edges.iter().find(|e| e.gamma < 1) {
            out.push(ConditionViolation::new(
                "iv",
                vec![e.u, e.v],
                format!("gamma({}, {}) = {} < 1", e.u, e.v, e.gamma),
            ));
        }
        let cap = r * m as i64
            - self.alpha.iter().sum::<i64>()
            - self.edges.iter().map(|e| e.gamma).sum::<i64>();
        if (self.k as i64) > cap {
            out.push(ConditionViolation::new(
                "v",
                vec![],
                format!("k = {} exceeds rm - Σα - Σγ = {cap}", self.k),
            ));
        }
        if let Some(i) = (0..m).find(|&i| r - self.alpha[i] <= self.incident_weight(i)) {
            out.push(ConditionViolation::new(
                "vi",
                vec![i],
                format!(
                    "r - alpha({i}) = {} is not above incident weight {}",
                    r - self.alpha[i],
                    self.incident_weight(i)
                ),
            ));
        }
        out
    }

    /// Realizes the atoms. Shared blocks are allocated first, one
    /// `gamma`-sized block per edge in listed order, then each atom's private
    /// elements in vertex order. `|F_i| = r - α(i) + δ - 1 + β(i)` and
    /// `rho(F_i) = r - α(i)`.
    pub fn realize(&self) -> Result<(usize, Vec<AtomSpec>), Error> {
        let violations = self.conditions();
        if !violations.is_empty() {
            return Err(Error::ConditionViolated(violations));
        }
        let mut next = 0usize;
        let mut sets = vec![Subset::EMPTY; self.m];
        for e in &self.edges {
            let block = Subset::range(next, next + e.gamma as usize);
            next += e.gamma as usize;
            sets[e.u] = sets[e.u].union(block);
            sets[e.v] = sets[e.v].union(block);
        }
        let mut atoms = Vec::with_capacity(self.m);
        for (i, shared) in sets.into_iter().enumerate() {
            let rank = (self.r as i64 - self.alpha[i]) as usize;
            let size = rank + self.delta - 1 + self.beta[i] as usize;
            let private = size - shared.len();
            let set = shared.union(Subset::range(next, next + private));
            next += private;
            atoms.push(AtomSpec::new(set, rank));
        }
        if next > crate::subset::MAX_GROUND {
            return Err(Error::TooLarge {
                n: next,
                limit: crate::subset::MAX_GROUND,
            });
        }
        Ok((next, atoms))
    }
}

/// Builds the matroid of a construction graph and checks the built matroid
/// against the closed-form `n` and `d`.
pub fn graph_construction(g: &ConstructionGraph) -> Result<(AtomMatroid, LrcParams), Error> {
    let (n, atoms) = g.realize()?;
    let built = theorem9(n, &atoms, g.k)?;
    if g.formula_n() != n as i64 {
        return Err(Error::FormulaMismatch(format!(
            "graph predicts n = {}, built {n}",
            g.formula_n()
        )));
    }
    let d = analysis::d_from_cyclic_flats(&built.matroid.lattice())?;
    if g.formula_d() != d as i64 {
        return Err(Error::FormulaMismatch(format!(
            "graph predicts d = {}, built matroid has d = {d}",
            g.formula_d()
        )));
    }
    Ok((
        built,
        LrcParams {
            n,
            k: g.k,
            d,
            r: g.r,
            delta: g.delta,
        },
    ))
}

/// Checks the shared-core construction's preconditions, naming the first
/// violated inequality.
pub fn theorem11_preconditions(n: usize, k: usize, r: usize, delta: usize) -> Result<(), Error> {
    if let Some(p) = analysis::params_problem(n, k, r, delta) {
        return Err(Error::PreconditionFailed(p));
    }
    if r >= k {
        return Err(Error::PreconditionFailed(format!("needs r < k, got r={r} k={k}")));
    }
    let c = analysis::constants(n, k, r, delta);
    if c.groups != 2 {
        return Err(Error::PreconditionFailed(format!("needs ⌈k/r⌉ = 2, got {}", c.groups)));
    }
    if c.b <= c.a {
        return Err(Error::PreconditionFailed(format!("needs b > a, got a={} b={}", c.a, c.b)));
    }
    if c.a < c.groups - 1 {
        return Err(Error::PreconditionFailed(format!(
            "needs a >= ⌈k/r⌉ - 1, got a={}",
            c.a
        )));
    }
    let need = ceil_div(c.b, c.a) + 1;
    if c.blocks < need {
        return Err(Error::PreconditionFailed(format!(
            "needs ⌈n/(r+δ-1)⌉ >= ⌈b/a⌉ + 1, got {} < {need}",
            c.blocks
        )));
    }
    Ok(())
}

/// Shared-core construction for `⌈k/r⌉ = 2`, `b > a >= 1`: `⌈n/(r+δ-1)⌉`
/// atoms of size `r+δ-1` and rank `r`. A core `X` of `a` elements lies in
/// the first `⌈b/a⌉` atoms; the next atom holds the first
/// `b - (⌈b/a⌉ - 1)a` elements of `X`; all other elements are private.
pub fn theorem11_construction(n: usize, k: usize, r: usize, delta: usize) -> Result<AtomMatroid, Error> {
    theorem11_preconditions(n, k, r, delta)?;
    let c = analysis::constants(n, k, r, delta);
    let block = r + delta - 1;
    let full_share = ceil_div(c.b, c.a);
    let partial = c.b - (full_share - 1) * c.a;
    let core = Subset::range(0, c.a);
    let mut next = c.a;
    let mut atoms = Vec::with_capacity(c.blocks);
    for i in 0..c.blocks {
        let shared = if i < full_share {
            core
        } else if i == full_share {
            Subset::range(0, partial)
        } else {
            Subset::EMPTY
        };
        let fresh = block - shared.len();
        atoms.push(AtomSpec::new(
            shared.union(Subset::range(next, next + fresh)),
            r,
        ));
        next += fresh;
    }
    debug_assert_eq!(next, n);
    theorem9(n, &atoms, k)
}

/// Optimality test for restricted-intersection matroids with their own
/// `r = max rho(F_i)` and `δ = min η(F_i) + 1`: every union of `⌈k/r⌉`
/// atoms has at least `⌈k/r⌉(r+δ-1) - a` elements, and every atom has
/// nullity exactly `δ - 1`.
pub fn is_optimal_theorem9(am: &AtomMatroid) -> bool {
    optimality_conditions(am, am.r(), am.delta())
}

/// The same test against explicit `(r, δ)`.
pub fn optimality_conditions(am: &AtomMatroid, r: usize, delta: usize) -> bool {
    let groups = ceil_div(am.k, r);
    let a = groups * r - am.k;
    let floor = (groups * (r + delta - 1)) as i64 - a as i64;
    let m = am.atoms.len();
    let sizes_ok = m < groups
        || subsets_of_size(m, groups).all(|t| am.union_of(&t.to_vec()).len() as i64 >= floor);
    let nullity_ok = am.atoms.iter().all(|f| f.nullity() == delta as i64 - 1);
    sizes_ok && nullity_ok
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn s(e: &[usize]) -> Subset {
        Subset::from_elements(e.iter().copied())
    }

    #[test]
    fn two_disjoint_atoms() {
        let atoms = [AtomSpec::new(s(&[0, 1, 2]), 2), AtomSpec::new(s(&[3, 4, 5]), 2)];
        let am = construction1(6, &atoms, 4).unwrap();
        let p = am.predicted_params();
        assert_eq!((p.n, p.k, p.d, p.r, p.delta), (6, 4, 2, 2, 2));
        assert_eq!(oracle::oracle_d(&am.matroid).unwrap(), 2);
        assert_eq!(am.matroid.lattice().len(), 4);
    }

    #[test]
    fn single_atom_collapses_to_uniform() {
        let am = construction1(4, &[AtomSpec::new(Subset::full(4), 2)], 2).unwrap();
        // F itself has reduced rank 2 = k, so Z_<k = {∅} and M = U_{4,2}
        assert_eq!(am.below_k, vec![Vec::<usize>::new()]);
        assert_eq!(am.predicted_params().d, 3);
        assert_eq!(oracle::oracle_d(&am.matroid).unwrap(), 3);
        assert!(am.matroid.same_ranks(&Matroid::uniform(4, 2).unwrap()));
    }

    #[test]
    fn reports_condition_iv() {
        // F_0 ∩ F_1 has 2 elements but rho(F_1) = 2
        let atoms = [AtomSpec::new(s(&[0, 1, 2, 3]), 3), AtomSpec::new(s(&[2, 3, 4, 5]), 2)];
        let err = construction1(6, &atoms, 5).unwrap_err();
        let Error::ConditionViolated(v) = err else { panic!("{err}") };
        assert!(v.iter().any(|c| c.condition == "iv"), "{v:?}");
    }

    #[test]
    fn reports_several_conditions() {
        let atoms = [AtomSpec::new(s(&[0, 1]), 2), AtomSpec::new(s(&[0]), 1)];
        let v = construction1_conditions(3, &atoms, 9).unwrap();
        let labels: Vec<&str> = v.iter().map(|c| c.condition.as_str()).collect();
        assert!(labels.contains(&"i"));
        assert!(labels.contains(&"ii"));
        assert!(labels.contains(&"iii"));
    }

    #[test]
    fn theorem9_rejects_covered_atom() {
        let atoms = [
            AtomSpec::new(s(&[0, 1, 2]), 2),
            AtomSpec::new(s(&[3, 4, 5]), 2),
            AtomSpec::new(s(&[0, 3, 6]), 2),
        ];
        let err = theorem9(7, &atoms, 4).unwrap_err();
        let Error::ConditionViolated(v) = err else { panic!() };
        assert_eq!(v[0].condition, "iv");
        let disjoint = [
            AtomSpec::new(s(&[0, 1, 2]), 2),
            AtomSpec::new(s(&[3, 4, 5]), 2),
            AtomSpec::new(s(&[6, 7, 8]), 2),
        ];
        let am = theorem9(9, &disjoint, 4).unwrap();
        assert!(is_optimal_theorem9(&am));
    }

    #[test]
    fn graph_two_vertices() {
        let g = ConstructionGraph::edgeless(vec![0, 0], vec![0, 0], 4, 2, 2);
        let (am, p) = graph_construction(&g).unwrap();
        assert_eq!((p.n, p.d), (6, 2));
        assert_eq!(am.n(), 6);
        let mut bad = g.clone();
        bad.edges.push(GraphEdge { u: 0, v: 1, gamma: 2 });
        let v = bad.conditions();
        assert!(v.iter().any(|c| c.condition == "vi"), "{v:?}");
    }

    #[test]
    fn graph_rejects_triangle() {
        let g = ConstructionGraph {
            m: 3,
            edges: vec![
                GraphEdge { u: 0, v: 1, gamma: 1 },
                GraphEdge { u: 1, v: 2, gamma: 1 },
                GraphEdge { u: 0, v: 2, gamma: 1 },
            ],
            alpha: vec![0; 3],
            beta: vec![0; 3],
            k: 4,
            r: 4,
            delta: 2,
        };
        let v = g.conditions();
        assert!(v.iter().any(|c| c.condition == "i"));
    }

    #[test]
    fn graph_with_edge_shares_elements() {
        let g = ConstructionGraph {
            m: 2,
            edges: vec![GraphEdge { u: 0, v: 1, gamma: 1 }],
            alpha: vec![0, 0],
            beta: vec![0, 0],
            k: 4,
            r: 3,
            delta: 2,
        };
        let (n, atoms) = g.realize().unwrap();
        assert_eq!(n, 7);
        assert_eq!(atoms[0].set.intersection(atoms[1].set), s(&[0]));
        let (_, p) = graph_construction(&g).unwrap();
        assert_eq!(p.d as i64, g.formula_d());
    }

    #[test]
    fn theorem11_layout() {
        let am = theorem11_construction(10, 5, 3, 2).unwrap();
        assert_eq!(am.atoms.len(), 3);
        assert!(am.atoms.iter().all(|a| a.set.len() == 4 && a.rank == 3));
        for i in 0..3 {
            assert!(am.atoms[i].set.contains(0));
        }
        assert_eq!(am.n(), 10);
        assert_eq!(oracle::oracle_d(&am.matroid).unwrap(), 5);
        assert!(is_optimal_theorem9(&am));
        assert!(matches!(
            theorem11_construction(11, 5, 3, 2),
            Err(Error::PreconditionFailed(_))
        ));
        // b = 0 <= a
        assert!(matches!(
            theorem11_construction(12, 5, 3, 2),
            Err(Error::PreconditionFailed(_))
        ));
    }
}
