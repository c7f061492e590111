//! Matroids given by independent sets, a full rank table, or a lattice of
//! cyclic flats, together with the derived operators (closure, circuits,
//! cyclic sets, flats, dual, restriction).
//!
//! Ground-set elements are `0..n`. All queries are pure; a [`Matroid`] is
//! immutable once validated.

use std::collections::HashSet;
use std::fmt;

use crate::subset::{all_subsets, Subset, MAX_GROUND};
use crate::Error;

/// Largest ground set for which a full rank table is materialized.
pub const MAX_TABLE_GROUND: usize = 24;

/// A duplicate-free collection of subsets, kept in canonical order
/// (lexicographic on sorted element lists).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SubsetFamily(Vec<Subset>);

impl SubsetFamily {
    pub fn new<I: IntoIterator<Item = Subset>>(members: I) -> Self {
        let mut v: Vec<Subset> = members.into_iter().collect();
        v.sort_by(|a, b| a.lex_cmp(*b));
        v.dedup();
        SubsetFamily(v)
    }

    pub fn members(&self) -> &[Subset] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.0.contains(&s)
    }

    pub fn iter(&self) -> impl Iterator<Item = Subset> + '_ {
        self.0.iter().copied()
    }
}

impl fmt::Debug for SubsetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

impl FromIterator<Subset> for SubsetFamily {
    fn from_iter<I: IntoIterator<Item = Subset>>(iter: I) -> Self {
        SubsetFamily::new(iter)
    }
}

/// Rank of every subset of `{0, .., n-1}`, indexed by subset mask.
#[derive(Clone, PartialEq, Eq)]
pub struct RankTable {
    n: usize,
    ranks: Vec<u8>,
}

impl RankTable {
    /// Wraps a table indexed by mask. Fails with [`Error::MissingSubset`]
    /// unless exactly `2^n` entries are supplied.
    pub fn new(n: usize, ranks: Vec<u8>) -> Result<Self, Error> {
        if n > MAX_TABLE_GROUND {
            return Err(Error::TooLarge { n, limit: MAX_TABLE_GROUND });
        }
        let expected = 1usize << n;
        if ranks.len() != expected {
            return Err(Error::MissingSubset {
                expected,
                found: ranks.len(),
            });
        }
        Ok(RankTable { n, ranks })
    }

    /// Tabulates `f` over every subset.
    pub fn from_fn(n: usize, mut f: impl FnMut(Subset) -> usize) -> Result<Self, Error> {
        if n > MAX_TABLE_GROUND {
            return Err(Error::TooLarge { n, limit: MAX_TABLE_GROUND });
        }
        let ranks = all_subsets(n).map(|s| f(s) as u8).collect();
        Ok(RankTable { n, ranks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self, x: Subset) -> usize {
        self.ranks[x.0 as usize] as usize
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.ranks
    }
}

impl fmt::Debug for RankTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RankTable")
            .field("n", &self.n)
            .field("ranks", &self.ranks)
            .finish()
    }
}

/// A cyclic flat together with its rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CyclicFlat {
    pub set: Subset,
    pub rank: usize,
}

/// The lattice of cyclic flats of a matroid, ordered by inclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicFlatLattice {
    n: usize,
    flats: Vec<CyclicFlat>,
}

impl CyclicFlatLattice {
    /// Builds an unvalidated lattice. Flats are stored in canonical order.
    pub fn new(n: usize, flats: Vec<CyclicFlat>) -> Self {
        let mut flats = flats;
        flats.sort_by(|a, b| a.set.lex_cmp(b.set).then(a.rank.cmp(&b.rank)));
        CyclicFlatLattice { n, flats }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn flats(&self) -> &[CyclicFlat] {
        &self.flats
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn rank_of(&self, set: Subset) -> Option<usize> {
        self.flats.iter().find(|f| f.set == set).map(|f| f.rank)
    }

    pub fn contains(&self, set: Subset) -> bool {
        self.rank_of(set).is_some()
    }

    /// Least element `0_Z` (the intersection of all members when that is a member).
    pub fn bottom(&self) -> Option<CyclicFlat> {
        let meet = self
            .flats
            .iter()
            .fold(Subset::full(self.n), |acc, f| acc.intersection(f.set));
        self.flats.iter().copied().find(|f| f.set == meet)
    }

    /// Greatest element `1_Z`.
    pub fn top(&self) -> Option<CyclicFlat> {
        let join = self
            .flats
            .iter()
            .fold(Subset::EMPTY, |acc, f| acc.union(f.set));
        self.flats.iter().copied().find(|f| f.set == join)
    }

    /// Maximal members strictly below the top.
    pub fn coatoms(&self) -> Vec<CyclicFlat> {
        let Some(top) = self.top() else {
            return Vec::new();
        };
        let below: Vec<CyclicFlat> = self
            .flats
            .iter()
            .copied()
            .filter(|f| f.set != top.set)
            .collect();
        below
            .iter()
            .copied()
            .filter(|f| {
                !below
                    .iter()
                    .any(|g| f.set.is_proper_subset_of(g.set))
            })
            .collect()
    }

    /// Minimal members strictly above the bottom.
    pub fn atoms(&self) -> Vec<CyclicFlat> {
        let Some(bottom) = self.bottom() else {
            return Vec::new();
        };
        let above: Vec<CyclicFlat> = self
            .flats
            .iter()
            .copied()
            .filter(|f| f.set != bottom.set)
            .collect();
        above
            .iter()
            .copied()
            .filter(|f| !above.iter().any(|g| g.set.is_proper_subset_of(f.set)))
            .collect()
    }

    fn require(&self, x: Subset) -> Result<(), Error> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::NotInLattice(x))
        }
    }

    /// Least upper bound in the inclusion order.
    pub fn join(&self, x: Subset, y: Subset) -> Result<Subset, Error> {
        self.require(x)?;
        self.require(y)?;
        self.order_join(x, y).ok_or(Error::NotALattice)
    }

    /// Greatest lower bound in the inclusion order.
    pub fn meet(&self, x: Subset, y: Subset) -> Result<Subset, Error> {
        self.require(x)?;
        self.require(y)?;
        self.order_meet(x, y).ok_or(Error::NotALattice)
    }

    fn order_join(&self, x: Subset, y: Subset) -> Option<Subset> {
        let both = x.union(y);
        let mut uppers = self.flats.iter().filter(|f| both.is_subset_of(f.set));
        let first = uppers.next()?.set;
        let cand = uppers.fold(first, |acc, f| acc.intersection(f.set));
        self.contains(cand).then_some(cand)
    }

    fn order_meet(&self, x: Subset, y: Subset) -> Option<Subset> {
        let both = x.intersection(y);
        let cand = self
            .flats
            .iter()
            .filter(|f| f.set.is_subset_of(both))
            .fold(Subset::EMPTY, |acc, f| acc.union(f.set));
        let found = self.flats.iter().any(|f| f.set.is_subset_of(both));
        (found && self.contains(cand)).then_some(cand)
    }

    /// Rank of an arbitrary subset via `min_Z (rho(Z) + |X \ Z|)`.
    pub fn extended_rank(&self, x: Subset) -> usize {
        self.flats
            .iter()
            .map(|f| f.rank + x.difference(f.set).len())
            .min()
            .unwrap_or(0)
    }

    /// Checks (Z0)–(Z3): lattice under inclusion, zero-rank bottom, strict
    /// rank and nullity growth along the order, and the lattice form of
    /// semimodularity.
    pub fn check_axioms(&self) -> Result<(), AxiomViolation> {
        let ground = Subset::full(self.n);
        let mut seen = HashSet::new();
        for f in &self.flats {
            if !f.set.is_subset_of(ground) {
                return Err(AxiomViolation::new(
                    Axiom::Z0,
                    vec![f.set],
                    format!("{} is not a subset of the ground set", f.set),
                ));
            }
            if !seen.insert(f.set) {
                return Err(AxiomViolation::new(
                    Axiom::Z0,
                    vec![f.set],
                    format!("{} listed twice", f.set),
                ));
            }
        }
        if self.flats.is_empty() {
            return Err(AxiomViolation::new(Axiom::Z0, vec![], "empty family".into()));
        }
        for (i, a) in self.flats.iter().enumerate() {
            for b in &self.flats[i..] {
                if self.order_join(a.set, b.set).is_none() {
                    return Err(AxiomViolation::new(
                        Axiom::Z0,
                        vec![a.set, b.set],
                        format!("{} and {} have no least upper bound", a.set, b.set),
                    ));
                }
                if self.order_meet(a.set, b.set).is_none() {
                    return Err(AxiomViolation::new(
                        Axiom::Z0,
                        vec![a.set, b.set],
                        format!("{} and {} have no greatest lower bound", a.set, b.set),
                    ));
                }
            }
        }
        let bottom = self.bottom().expect("lattice has a bottom");
        if bottom.rank != 0 {
            return Err(AxiomViolation::new(
                Axiom::Z1,
                vec![bottom.set],
                format!("rank of bottom {} is {}", bottom.set, bottom.rank),
            ));
        }
        for a in &self.flats {
            for b in &self.flats {
                if a.set.is_proper_subset_of(b.set) {
                    let dr = b.rank as i64 - a.rank as i64;
                    let ds = b.set.len() as i64 - a.set.len() as i64;
                    if !(0 < dr && dr < ds) {
                        return Err(AxiomViolation::new(
                            Axiom::Z2,
                            vec![a.set, b.set],
                            format!(
                                "{} ⊊ {} but rank grows by {dr} and size by {ds}",
                                a.set, b.set
                            ),
                        ));
                    }
                }
            }
        }
        for (i, a) in self.flats.iter().enumerate() {
            for b in &self.flats[i..] {
                let join = self.order_join(a.set, b.set).unwrap();
                let meet = self.order_meet(a.set, b.set).unwrap();
                let lhs = a.rank + b.rank;
                let rhs = self.rank_of(join).unwrap()
                    + self.rank_of(meet).unwrap()
                    + a.set.intersection(b.set).difference(meet).len();
                if lhs < rhs {
                    return Err(AxiomViolation::new(
                        Axiom::Z3,
                        vec![a.set, b.set],
                        format!("{} + {} < {rhs}", a.rank, b.rank),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Which axiom a violation refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    /// Independent sets: `∅` is independent.
    I1,
    /// Independent sets: closed under taking subsets.
    I2,
    /// Independent sets: augmentation.
    I3,
    /// Rank: `0 <= rho(X) <= |X|`.
    R1,
    /// Rank: monotone.
    R2,
    /// Rank: semimodular.
    R3,
    Z0,
    Z1,
    Z2,
    Z3,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::I1 => "independence (i)",
            Axiom::I2 => "independence (ii)",
            Axiom::I3 => "independence (iii)",
            Axiom::R1 => "rank (i)",
            Axiom::R2 => "rank (ii)",
            Axiom::R3 => "rank (iii)",
            Axiom::Z0 => "Z0",
            Axiom::Z1 => "Z1",
            Axiom::Z2 => "Z2",
            Axiom::Z3 => "Z3",
        };
        f.write_str(s)
    }
}

/// First violated axiom found by a checker, with witness sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub witnesses: Vec<Subset>,
    pub detail: String,
}

impl AxiomViolation {
    fn new(axiom: Axiom, witnesses: Vec<Subset>, detail: String) -> Self {
        AxiomViolation {
            axiom,
            witnesses,
            detail,
        }
    }
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "axiom {} violated: {}", self.axiom, self.detail)
    }
}

/// Checks the independence axioms on a family over `{0, .., n-1}`.
pub fn check_independence_axioms(n: usize, family: &SubsetFamily) -> Result<(), AxiomViolation> {
    let ground = Subset::full(n);
    if let Some(bad) = family.iter().find(|s| !s.is_subset_of(ground)) {
        return Err(AxiomViolation::new(
            Axiom::I1,
            vec![bad],
            format!("{bad} is not a subset of the ground set"),
        ));
    }
    let members: HashSet<Subset> = family.iter().collect();
    if !members.contains(&Subset::EMPTY) {
        return Err(AxiomViolation::new(
            Axiom::I1,
            vec![],
            "the empty set is not in the family".into(),
        ));
    }
    for y in family.iter() {
        for e in y.iter() {
            if !members.contains(&y.remove(e)) {
                return Err(AxiomViolation::new(
                    Axiom::I2,
                    vec![y, y.remove(e)],
                    format!("{} is in the family but its subset {} is not", y, y.remove(e)),
                ));
            }
        }
    }
    for x in family.iter() {
        for y in family.iter() {
            if x.len() > y.len()
                && !x
                    .difference(y)
                    .iter()
                    .any(|e| members.contains(&y.insert(e)))
            {
                return Err(AxiomViolation::new(
                    Axiom::I3,
                    vec![x, y],
                    format!("no element of {x} augments {y}"),
                ));
            }
        }
    }
    Ok(())
}

/// Checks the rank axioms on a full table.
///
/// Semimodularity is verified in its local form
/// `rho(X+a) + rho(X+b) >= rho(X+a+b) + rho(X)`, which together with the
/// unit-increase property is equivalent to the inequality over all pairs.
/// Any violation is reported as a concrete pair violating the global
/// statement.
pub fn check_rank_axioms(table: &RankTable) -> Result<(), AxiomViolation> {
    let n = table.n();
    for x in all_subsets(n) {
        if table.rank(x) > x.len() {
            return Err(AxiomViolation::new(
                Axiom::R1,
                vec![x],
                format!("rank({x}) = {} exceeds |X|", table.rank(x)),
            ));
        }
    }
    for x in all_subsets(n) {
        let rx = table.rank(x);
        for a in Subset::full(n).difference(x).iter() {
            let xa = x.insert(a);
            let rxa = table.rank(xa);
            if rxa < rx {
                return Err(AxiomViolation::new(
                    Axiom::R2,
                    vec![x, xa],
                    format!("rank({x}) = {rx} > rank({xa}) = {rxa}"),
                ));
            }
            if rxa > rx + 1 {
                let single = Subset::singleton(a);
                return Err(AxiomViolation::new(
                    Axiom::R3,
                    vec![x, single],
                    format!(
                        "rank({x}) + rank({single}) = {} < rank({xa}) + rank(∅) = {rxa}",
                        rx + table.rank(single)
                    ),
                ));
            }
        }
    }
    for x in all_subsets(n) {
        let rest = Subset::full(n).difference(x);
        let rx = table.rank(x);
        for a in rest.iter() {
            for b in rest.iter().filter(|&b| b > a) {
                let xa = x.insert(a);
                let xb = x.insert(b);
                let xab = xa.insert(b);
                if table.rank(xa) + table.rank(xb) < table.rank(xab) + rx {
                    return Err(AxiomViolation::new(
                        Axiom::R3,
                        vec![xa, xb],
                        format!(
                            "rank({xa}) + rank({xb}) < rank({xab}) + rank({x})"
                        ),
                    ));
                }
            }
        }
    }
    Ok(())
}

/// The three supported ways of specifying a matroid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Representation {
    IndependentSets(SubsetFamily),
    Ranks(RankTable),
    CyclicFlats(CyclicFlatLattice),
}

/// A matroid on the ground set `{0, .., n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matroid {
    n: usize,
    repr: Representation,
}

impl Matroid {
    fn check_ground(n: usize) -> Result<(), Error> {
        if n > MAX_GROUND {
            Err(Error::TooLarge { n, limit: MAX_GROUND })
        } else {
            Ok(())
        }
    }

    pub fn from_independent_sets(n: usize, family: SubsetFamily) -> Result<Self, Error> {
        Self::check_ground(n)?;
        check_independence_axioms(n, &family).map_err(Error::InvalidMatroid)?;
        Ok(Matroid {
            n,
            repr: Representation::IndependentSets(family),
        })
    }

    pub fn from_rank_table(table: RankTable) -> Result<Self, Error> {
        check_rank_axioms(&table).map_err(Error::InvalidMatroid)?;
        Ok(Matroid {
            n: table.n(),
            repr: Representation::Ranks(table),
        })
    }

    pub fn from_cyclic_flats(lattice: CyclicFlatLattice) -> Result<Self, Error> {
        Self::check_ground(lattice.n())?;
        lattice.check_axioms().map_err(Error::InvalidMatroid)?;
        Ok(Matroid {
            n: lattice.n(),
            repr: Representation::CyclicFlats(lattice),
        })
    }

    pub fn from_representation(n: usize, repr: Representation) -> Result<Self, Error> {
        match repr {
            Representation::IndependentSets(f) => Self::from_independent_sets(n, f),
            Representation::Ranks(t) => {
                if t.n() != n {
                    return Err(Error::MissingSubset {
                        expected: 1 << n,
                        found: t.as_slice().len(),
                    });
                }
                Self::from_rank_table(t)
            }
            Representation::CyclicFlats(l) => {
                if l.n() != n {
                    return Err(Error::BadParams(format!(
                        "lattice declared on {} elements, matroid on {n}",
                        l.n()
                    )));
                }
                Self::from_cyclic_flats(l)
            }
        }
    }

    /// The `(n, k)`-uniform matroid, `rho(X) = min(|X|, k)`, given by its
    /// cyclic flats.
    pub fn uniform(n: usize, k: usize) -> Result<Self, Error> {
        if k > n {
            return Err(Error::BadParams(format!("uniform matroid needs k <= n, got n={n} k={k}")));
        }
        Self::check_ground(n)?;
        let e = Subset::full(n);
        let flats = if k == n {
            vec![CyclicFlat { set: Subset::EMPTY, rank: 0 }]
        } else if k == 0 {
            vec![CyclicFlat { set: e, rank: 0 }]
        } else {
            vec![
                CyclicFlat { set: Subset::EMPTY, rank: 0 },
                CyclicFlat { set: e, rank: k },
            ]
        };
        Self::from_cyclic_flats(CyclicFlatLattice::new(n, flats))
    }

    /// The free matroid: every subset independent.
    pub fn free(n: usize) -> Result<Self, Error> {
        Self::uniform(n, n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ground(&self) -> Subset {
        Subset::full(self.n)
    }

    pub fn representation(&self) -> &Representation {
        &self.repr
    }

    pub fn rank(&self, x: Subset) -> usize {
        debug_assert!(x.is_subset_of(self.ground()));
        match &self.repr {
            Representation::IndependentSets(f) => f
                .iter()
                .filter(|y| y.is_subset_of(x))
                .map(|y| y.len())
                .max()
                .unwrap_or(0),
            Representation::Ranks(t) => t.rank(x),
            Representation::CyclicFlats(l) => l.extended_rank(x),
        }
    }

    /// `rho(E)`.
    pub fn full_rank(&self) -> usize {
        self.rank(self.ground())
    }

    pub fn nullity(&self, x: Subset) -> usize {
        x.len() - self.rank(x)
    }

    pub fn is_independent(&self, x: Subset) -> bool {
        self.rank(x) == x.len()
    }

    pub fn closure(&self, x: Subset) -> Subset {
        let r = self.rank(x);
        self.ground()
            .iter()
            .filter(|&e| x.contains(e) || self.rank(x.insert(e)) == r)
            .collect()
    }

    pub fn is_flat(&self, x: Subset) -> bool {
        self.closure(x) == x
    }

    /// `X` is cyclic when removing any single element keeps the rank.
    pub fn is_cyclic(&self, x: Subset) -> bool {
        let r = self.rank(x);
        x.iter().all(|e| self.rank(x.remove(e)) == r)
    }

    /// Materializes the full rank table. Panics if `n > MAX_TABLE_GROUND`.
    pub fn rank_table(&self) -> RankTable {
        match &self.repr {
            Representation::Ranks(t) => t.clone(),
            _ => RankTable::from_fn(self.n, |x| self.rank(x))
                .expect("ground set too large for a rank table"),
        }
    }

    /// The matroid with the same ranks, stored as a rank table.
    pub fn to_rank_table_repr(&self) -> Matroid {
        Matroid {
            n: self.n,
            repr: Representation::Ranks(self.rank_table()),
        }
    }

    /// All independent sets.
    pub fn independent_sets(&self) -> SubsetFamily {
        let t = self.rank_table();
        all_subsets(self.n).filter(|&x| t.rank(x) == x.len()).collect()
    }

    pub fn to_independent_sets_repr(&self) -> Matroid {
        Matroid {
            n: self.n,
            repr: Representation::IndependentSets(self.independent_sets()),
        }
    }

    /// Minimal dependent sets.
    pub fn circuits(&self) -> SubsetFamily {
        let t = self.rank_table();
        circuits_within(&t, self.ground())
    }

    /// Unions of circuits, i.e. sets with no coloop of the restriction.
    pub fn cyclic_sets(&self) -> SubsetFamily {
        let t = self.rank_table();
        all_subsets(self.n)
            .filter(|&x| {
                let r = t.rank(x);
                x.iter().all(|e| t.rank(x.remove(e)) == r)
            })
            .collect()
    }

    pub fn flats(&self) -> SubsetFamily {
        let t = self.rank_table();
        let e = self.ground();
        all_subsets(self.n)
            .filter(|&x| {
                let r = t.rank(x);
                e.difference(x).iter().all(|y| t.rank(x.insert(y)) > r)
            })
            .collect()
    }

    /// Computes the lattice of cyclic flats from the rank function.
    pub fn cyclic_flats(&self) -> CyclicFlatLattice {
        let t = self.rank_table();
        let e = self.ground();
        let flats = all_subsets(self.n)
            .filter(|&x| {
                let r = t.rank(x);
                x.iter().all(|y| t.rank(x.remove(y)) == r)
                    && e.difference(x).iter().all(|y| t.rank(x.insert(y)) > r)
            })
            .map(|x| CyclicFlat {
                set: x,
                rank: t.rank(x),
            })
            .collect();
        CyclicFlatLattice::new(self.n, flats)
    }

    /// The lattice of cyclic flats: the stored one when the matroid was
    /// given that way, otherwise computed.
    pub fn lattice(&self) -> CyclicFlatLattice {
        match &self.repr {
            Representation::CyclicFlats(l) => l.clone(),
            _ => self.cyclic_flats(),
        }
    }

    pub fn to_cyclic_flats_repr(&self) -> Matroid {
        Matroid {
            n: self.n,
            repr: Representation::CyclicFlats(self.lattice()),
        }
    }

    fn require_cyclic_flat(&self, x: Subset) -> Result<(), Error> {
        if x.is_subset_of(self.ground()) && self.is_cyclic(x) && self.is_flat(x) {
            Ok(())
        } else {
            Err(Error::NotInLattice(x))
        }
    }

    /// `X ∨ Y = cl(X ∪ Y)` for cyclic flats `X`, `Y`.
    pub fn join(&self, x: Subset, y: Subset) -> Result<Subset, Error> {
        self.require_cyclic_flat(x)?;
        self.require_cyclic_flat(y)?;
        Ok(self.closure(x.union(y)))
    }

    /// `X ∧ Y` as the union of the circuits contained in `X ∩ Y`.
    pub fn meet(&self, x: Subset, y: Subset) -> Result<Subset, Error> {
        self.require_cyclic_flat(x)?;
        self.require_cyclic_flat(y)?;
        let both = x.intersection(y);
        let t = RankTable::from_fn(self.n, |s| {
            if s.is_subset_of(both) {
                self.rank(s)
            } else {
                0
            }
        })
        .expect("ground set too large for a rank table");
        Ok(circuits_within(&t, both)
            .iter()
            .fold(Subset::EMPTY, |acc, c| acc.union(c)))
    }

    /// The dual matroid, `rho*(X) = rho(E \ X) + |X| - rho(E)`.
    ///
    /// A lattice-represented matroid dualizes to the lattice of complements;
    /// other representations produce a rank table.
    pub fn dual(&self) -> Matroid {
        let e = self.ground();
        let full = self.full_rank();
        match &self.repr {
            Representation::CyclicFlats(l) => {
                let flats = l
                    .flats()
                    .iter()
                    .map(|f| {
                        let c = e.difference(f.set);
                        CyclicFlat {
                            set: c,
                            rank: f.rank + c.len() - full,
                        }
                    })
                    .collect();
                Matroid {
                    n: self.n,
                    repr: Representation::CyclicFlats(CyclicFlatLattice::new(self.n, flats)),
                }
            }
            _ => {
                let t = RankTable::from_fn(self.n, |x| self.rank(e.difference(x)) + x.len() - full)
                    .expect("ground set too large for a rank table");
                Matroid {
                    n: self.n,
                    repr: Representation::Ranks(t),
                }
            }
        }
    }

    /// `M|X`, relabelled so that the `j`-th smallest element of `X` becomes `j`.
    pub fn restriction(&self, x: Subset) -> Matroid {
        assert!(x.is_subset_of(self.ground()), "restriction set outside ground set");
        let elems = x.to_vec();
        let m = elems.len();
        let t = RankTable::from_fn(m, |local| {
            self.rank(local.iter().map(|j| elems[j]).collect())
        })
        .expect("restriction too large for a rank table");
        Matroid {
            n: m,
            repr: Representation::Ranks(t),
        }
    }

    /// True when both matroids have the same ground set and the same rank on
    /// every subset.
    pub fn same_ranks(&self, other: &Matroid) -> bool {
        self.n == other.n && all_subsets(self.n).all(|x| self.rank(x) == other.rank(x))
    }
}

/// Minimal dependent subsets of `within` according to `t`.
fn circuits_within(t: &RankTable, within: Subset) -> SubsetFamily {
    within
        .subsets()
        .filter(|&c| {
            !c.is_empty()
                && t.rank(c) < c.len()
                && c.iter().all(|e| {
                    let d = c.remove(e);
                    t.rank(d) == d.len()
                })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(e: &[usize]) -> Subset {
        Subset::from_elements(e.iter().copied())
    }

    fn fam(sets: &[&[usize]]) -> SubsetFamily {
        sets.iter().map(|e| s(e)).collect()
    }

    /// Two disjoint 3-element atoms of rank 2 under a rank-4 top.
    fn two_atom() -> Matroid {
        let f1 = s(&[0, 1, 2]);
        let f2 = s(&[3, 4, 5]);
        Matroid::from_cyclic_flats(CyclicFlatLattice::new(
            6,
            vec![
                CyclicFlat { set: Subset::EMPTY, rank: 0 },
                CyclicFlat { set: f1, rank: 2 },
                CyclicFlat { set: f2, rank: 2 },
                CyclicFlat { set: Subset::full(6), rank: 4 },
            ],
        ))
        .unwrap()
    }

    #[test]
    fn independence_axioms() {
        assert!(check_independence_axioms(2, &fam(&[&[], &[0], &[1], &[0, 1]])).is_ok());
        let err = check_independence_axioms(2, &fam(&[&[0]])).unwrap_err();
        assert_eq!(err.axiom, Axiom::I1);
        let u32_ = fam(&[&[], &[0], &[1], &[2], &[0, 1], &[0, 2], &[1, 2]]);
        assert!(check_independence_axioms(3, &u32_).is_ok());
        let err = check_independence_axioms(3, &fam(&[&[], &[0, 1]])).unwrap_err();
        assert_eq!(err.axiom, Axiom::I2);
        // {0,1} and {2} both maximal: augmentation fails
        let err =
            check_independence_axioms(3, &fam(&[&[], &[0], &[1], &[2], &[0, 1]])).unwrap_err();
        assert_eq!(err.axiom, Axiom::I3);
        assert_eq!(err.witnesses, vec![s(&[0, 1]), s(&[2])]);
    }

    #[test]
    fn rank_axioms() {
        let t = RankTable::from_fn(4, |x| x.len().min(2)).unwrap();
        assert!(check_rank_axioms(&t).is_ok());
        let zero = RankTable::from_fn(4, |_| 0).unwrap();
        assert!(check_rank_axioms(&zero).is_ok());
        // |X| capped at n-1 on the full set is U_{3,2}, a valid matroid.
        let capped = RankTable::from_fn(3, |x| if x.len() == 3 { 2 } else { x.len() }).unwrap();
        assert!(check_rank_axioms(&capped).is_ok());
        let drop = RankTable::from_fn(3, |x| if x.len() == 3 { 1 } else { x.len() }).unwrap();
        assert_eq!(check_rank_axioms(&drop).unwrap_err().axiom, Axiom::R2);
        let too_big = RankTable::from_fn(2, |x| x.len() + 1).unwrap();
        assert_eq!(check_rank_axioms(&too_big).unwrap_err().axiom, Axiom::R1);
        // rho = 0 on singletons, 2 on the pair
        let jump = RankTable::from_fn(2, |x| if x.len() == 2 { 2 } else { 0 }).unwrap();
        assert_eq!(check_rank_axioms(&jump).unwrap_err().axiom, Axiom::R3);
        // rank 1 on {0,1} and {0,2} but 2 on E: not submodular
        let bad = RankTable::from_fn(3, |x| match x.len() {
            0 => 0,
            1 => 1,
            2 => {
                if x == s(&[1, 2]) {
                    2
                } else {
                    1
                }
            }
            _ => 2,
        })
        .unwrap();
        assert_eq!(check_rank_axioms(&bad).unwrap_err().axiom, Axiom::R3);
        assert!(matches!(
            RankTable::new(2, vec![0, 1, 1]),
            Err(Error::MissingSubset { expected: 4, found: 3 })
        ));
    }

    #[test]
    fn lattice_axioms() {
        let u32_ = CyclicFlatLattice::new(
            3,
            vec![
                CyclicFlat { set: Subset::EMPTY, rank: 0 },
                CyclicFlat { set: Subset::full(3), rank: 2 },
            ],
        );
        assert!(u32_.check_axioms().is_ok());
        let empty = CyclicFlatLattice::new(0, vec![CyclicFlat { set: Subset::EMPTY, rank: 0 }]);
        assert!(empty.check_axioms().is_ok());
        assert!(two_atom().lattice().check_axioms().is_ok());

        let bad_z1 = CyclicFlatLattice::new(2, vec![CyclicFlat { set: Subset::EMPTY, rank: 1 }]);
        assert_eq!(bad_z1.check_axioms().unwrap_err().axiom, Axiom::Z1);
        let bad_z2 = CyclicFlatLattice::new(
            3,
            vec![
                CyclicFlat { set: Subset::EMPTY, rank: 0 },
                CyclicFlat { set: Subset::full(3), rank: 3 },
            ],
        );
        assert_eq!(bad_z2.check_axioms().unwrap_err().axiom, Axiom::Z2);
        let no_top = CyclicFlatLattice::new(
            6,
            vec![
                CyclicFlat { set: Subset::EMPTY, rank: 0 },
                CyclicFlat { set: s(&[0, 1, 2]), rank: 2 },
                CyclicFlat { set: s(&[3, 4, 5]), rank: 2 },
            ],
        );
        assert_eq!(no_top.check_axioms().unwrap_err().axiom, Axiom::Z0);
        // atoms overlapping in two elements outside their meet
        let bad_z3 = CyclicFlatLattice::new(
            6,
            vec![
                CyclicFlat { set: Subset::EMPTY, rank: 0 },
                CyclicFlat { set: s(&[0, 1, 2]), rank: 2 },
                CyclicFlat { set: s(&[1, 2, 3]), rank: 2 },
                CyclicFlat { set: Subset::full(6), rank: 3 },
            ],
        );
        assert_eq!(bad_z3.check_axioms().unwrap_err().axiom, Axiom::Z3);
    }

    #[test]
    fn rank_nullity_closure() {
        let u42 = Matroid::uniform(4, 2).unwrap();
        assert_eq!(u42.rank(s(&[0, 1, 2])), 2);
        assert_eq!(u42.rank(Subset::EMPTY), 0);
        assert_eq!(u42.nullity(u42.ground()), 2);
        assert_eq!(u42.nullity(Subset::EMPTY), 0);
        assert_eq!(u42.closure(s(&[0, 1])), u42.ground());
        assert_eq!(u42.closure(Subset::EMPTY), Subset::EMPTY);
        let free = Matroid::free(4).unwrap();
        for x in all_subsets(4) {
            assert_eq!(free.closure(x), x);
        }
        let m = two_atom();
        assert_eq!(m.rank(s(&[0, 1])), 2);
        assert_eq!(m.nullity(s(&[0, 1, 2])), 1);
        assert_eq!(m.rank(Subset::EMPTY), 0);
    }

    #[test]
    fn circuits_and_cyclic_structure() {
        let u32_ = Matroid::uniform(3, 2).unwrap();
        assert_eq!(u32_.circuits(), fam(&[&[0, 1, 2]]));
        assert!(Matroid::free(4).unwrap().circuits().is_empty());
        let u42 = Matroid::uniform(4, 2).unwrap();
        assert_eq!(
            u42.circuits(),
            fam(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]])
        );
        let lat = u42.cyclic_flats();
        assert_eq!(
            lat.flats().iter().map(|f| f.set).collect::<Vec<_>>(),
            vec![Subset::EMPTY, u42.ground()]
        );
        assert_eq!(Matroid::free(3).unwrap().cyclic_sets(), fam(&[&[]]));
        let m = two_atom();
        assert_eq!(m.cyclic_flats(), m.lattice());
        let u52 = Matroid::uniform(5, 2).unwrap();
        assert_eq!(u52.cyclic_flats().len(), 2);
        let flats = u42.flats();
        // every flat of U_{4,2}: ∅, singletons, E
        assert_eq!(flats.len(), 1 + 4 + 1);
    }

    #[test]
    fn meet_and_join() {
        let m = two_atom();
        let f1 = s(&[0, 1, 2]);
        let f2 = s(&[3, 4, 5]);
        assert_eq!(m.join(f1, f2).unwrap(), m.ground());
        assert_eq!(m.meet(f1, f2).unwrap(), Subset::EMPTY);
        assert_eq!(m.join(f1, f1).unwrap(), f1);
        assert_eq!(m.meet(f1, Subset::EMPTY).unwrap(), Subset::EMPTY);
        let l = m.lattice();
        assert_eq!(l.join(f1, f2).unwrap(), m.ground());
        assert_eq!(l.meet(f1, f2).unwrap(), Subset::EMPTY);
        assert!(matches!(l.join(s(&[0]), f1), Err(Error::NotInLattice(_))));
        assert!(matches!(m.meet(s(&[0, 1]), f1), Err(Error::NotInLattice(_))));
    }

    #[test]
    fn dual_and_restriction() {
        let u42 = Matroid::uniform(4, 2).unwrap();
        let d = u42.dual();
        assert!(d.same_ranks(&u42));
        assert!(check_rank_axioms(&d.rank_table()).is_ok());
        let free = Matroid::free(3).unwrap();
        assert_eq!(free.dual().full_rank(), 0);
        let u32_ = Matroid::uniform(3, 2).unwrap();
        assert_eq!(
            u32_.dual().circuits(),
            fam(&[&[0, 1], &[0, 2], &[1, 2]])
        );
        let table_dual = u32_.to_rank_table_repr().dual();
        assert!(table_dual.same_ranks(&u32_.dual()));

        let r = u42.restriction(s(&[0, 1, 2]));
        assert!(r.same_ranks(&u32_));
        assert!(u42.restriction(u42.ground()).same_ranks(&u42));
        let empty = u42.restriction(Subset::EMPTY);
        assert_eq!(empty.n(), 0);
        assert_eq!(empty.full_rank(), 0);
    }

    #[test]
    fn uniform_params() {
        assert_eq!(Matroid::uniform(4, 2).unwrap().full_rank(), 2);
        assert!(Matroid::uniform(3, 3).unwrap().same_ranks(&Matroid::free(3).unwrap()));
        assert!(matches!(Matroid::uniform(2, 3), Err(Error::BadParams(_))));
        let zero = Matroid::uniform(3, 0).unwrap();
        assert_eq!(zero.full_rank(), 0);
        assert_eq!(zero.lattice().bottom().unwrap().set, Subset::full(3));
    }

    #[test]
    fn representations_agree() {
        let m = two_atom();
        let by_table = m.to_rank_table_repr();
        let by_indep = m.to_independent_sets_repr();
        assert!(m.same_ranks(&by_table));
        assert!(m.same_ranks(&by_indep));
        assert!(Matroid::from_independent_sets(6, m.independent_sets()).is_ok());
    }
}
