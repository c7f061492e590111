//! Erasure-channel simulation on a matroid: global decodability, local
//! repair by peeling over locality sets, and Monte-Carlo statistics.
//!
//! Repair runs in synchronous rounds. In each round every erased element is
//! tried in ascending order, first against its own locality set from the
//! cover and then against the other cover sets containing it. An element is
//! repaired from `S` when it lies in the closure of the surviving part of
//! `S`, judged on the symbols present at the start of the round.
//!
//! Random trials use ChaCha8 seeded with `seed` and stream `trial`, so each
//! trial is reproducible on its own and results do not depend on threading.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::LocalityCover;
use crate::io::ser_subset;
use crate::matroid::{Matroid, Representation, MAX_TABLE_GROUND};
use crate::subset::{subsets_of_size, Subset};
use crate::Error;

/// One repaired symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RepairEvent {
    pub element: usize,
    #[serde(serialize_with = "ser_subset")]
    pub set: Subset,
    /// Symbols read: `|S ∖ erased|` at the start of the round.
    pub contacts: usize,
    pub round: usize,
}

/// Erased positions and the repairs made so far.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ErasurePattern {
    #[serde(serialize_with = "ser_subset")]
    pub erased: Subset,
    pub trace: Vec<RepairEvent>,
    pub rounds: usize,
}

impl ErasurePattern {
    pub fn new(erased: Subset) -> Self {
        ErasurePattern {
            erased,
            trace: Vec::new(),
            rounds: 0,
        }
    }

    pub fn contacts(&self) -> usize {
        self.trace.iter().map(|e| e.contacts).sum()
    }
}

/// True when the surviving symbols still have full rank.
pub fn is_globally_decodable(m: &Matroid, erased: Subset) -> bool {
    m.rank(m.ground().difference(erased)) == m.full_rank()
}

fn candidate_sets(cover: &LocalityCover, x: usize) -> Vec<Subset> {
    let own = cover.set_for(x);
    let mut out = vec![own];
    out.extend(cover.distinct_sets().into_iter().filter(|s| *s != own && s.contains(x)));
    out
}

/// One synchronous repair round.
pub fn local_repair_step(m: &Matroid, cover: &LocalityCover, pattern: &ErasurePattern) -> ErasurePattern {
    let erased = pattern.erased;
    let round = pattern.rounds + 1;
    let mut repaired = Subset::EMPTY;
    let mut trace = pattern.trace.clone();
    for x in erased.iter() {
        for s in candidate_sets(cover, x) {
            let alive = s.difference(erased);
            if m.rank(alive.insert(x)) == m.rank(alive) {
                repaired = repaired.insert(x);
                trace.push(RepairEvent {
                    element: x,
                    set: s,
                    contacts: alive.len(),
                    round,
                });
                break;
            }
        }
    }
    ErasurePattern {
        erased: erased.difference(repaired),
        trace,
        rounds: if repaired.is_empty() { pattern.rounds } else { round },
    }
}

/// Repeats repair rounds until nothing changes. The flag is true when every
/// erasure was repaired.
pub fn peel_repair(m: &Matroid, cover: &LocalityCover, pattern: &ErasurePattern) -> (ErasurePattern, bool) {
    let mut current = pattern.clone();
    loop {
        let next = local_repair_step(m, cover, &current);
        if next.erased == current.erased {
            let done = next.erased.is_empty();
            return (next, done);
        }
        current = next;
    }
}

/// Outcome counts of a batch of trials. Rates are derived from the counts.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimStats {
    pub trials: u64,
    pub seed: u64,
    pub p: f64,
    pub locally_repaired: u64,
    pub globally_decodable: u64,
    pub lost: u64,
    pub total_erasures: u64,
    pub total_contacts: u64,
    pub repair_events: u64,
}

impl SimStats {
    pub fn local_rate(&self) -> f64 {
        self.locally_repaired as f64 / self.trials as f64
    }

    pub fn decodable_rate(&self) -> f64 {
        self.globally_decodable as f64 / self.trials as f64
    }

    pub fn loss_rate(&self) -> f64 {
        self.lost as f64 / self.trials as f64
    }

    /// Mean symbols read per trial.
    pub fn mean_contacts(&self) -> f64 {
        self.total_contacts as f64 / self.trials as f64
    }
}

#[derive(Clone, Copy, Default)]
struct Tally {
    local: u64,
    decodable: u64,
    lost: u64,
    erasures: u64,
    contacts: u64,
    events: u64,
}

impl Tally {
    fn add(self, o: Tally) -> Tally {
        Tally {
            local: self.local + o.local,
            decodable: self.decodable + o.decodable,
            lost: self.lost + o.lost,
            erasures: self.erasures + o.erasures,
            contacts: self.contacts + o.contacts,
            events: self.events + o.events,
        }
    }
}

fn with_fast_ranks(m: &Matroid) -> Matroid {
    match m.representation() {
        Representation::Ranks(_) => m.clone(),
        _ if m.n() <= MAX_TABLE_GROUND => m.to_rank_table_repr(),
        _ => m.clone(),
    }
}

fn tally(m: &Matroid, cover: &LocalityCover, erased: Subset) -> Tally {
    let (done, ok) = peel_repair(m, cover, &ErasurePattern::new(erased));
    let decodable = is_globally_decodable(m, erased);
    Tally {
        local: u64::from(ok),
        decodable: u64::from(decodable),
        lost: u64::from(!decodable),
        erasures: erased.len() as u64,
        contacts: done.contacts() as u64,
        events: done.trace.len() as u64,
    }
}

/// The erasure pattern of one trial.
pub fn sample_pattern(n: usize, p: f64, seed: u64, trial: u64) -> Subset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    (0..n).filter(|_| rng.gen_bool(p)).collect()
}

/// Runs `trials` independent Bernoulli(`p`) erasure trials.
pub fn monte_carlo(
    m: &Matroid,
    cover: &LocalityCover,
    p: f64,
    trials: u64,
    seed: u64,
) -> Result<SimStats, Error> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::BadParams(format!("erasure probability {p} outside [0, 1]")));
    }
    if trials == 0 {
        return Err(Error::BadParams("at least one trial is required".into()));
    }
    let fast = with_fast_ranks(m);
    let n = m.n();
    let t = (0..trials)
        .into_par_iter()
        .map(|trial| tally(&fast, cover, sample_pattern(n, p, seed, trial)))
        .reduce(Tally::default, Tally::add);
    Ok(SimStats {
        trials,
        seed,
        p,
        locally_repaired: t.local,
        globally_decodable: t.decodable,
        lost: t.lost,
        total_erasures: t.erasures,
        total_contacts: t.contacts,
        repair_events: t.events,
    })
}

/// Counts for all patterns of one size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SizeCounts {
    pub erasures: usize,
    pub patterns: u64,
    pub locally_repaired: u64,
    pub globally_decodable: u64,
}

/// Exhaustive enumeration of erasure patterns up to a size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExhaustiveReport {
    pub max_erasures: usize,
    pub by_size: Vec<SizeCounts>,
    /// A smallest pattern that is not decodable, if any was seen.
    #[serde(serialize_with = "ser_opt_subset")]
    pub first_undecodable: Option<Subset>,
}

fn ser_opt_subset<S: serde::Serializer>(set: &Option<Subset>, s: S) -> Result<S::Ok, S::Error> {
    set.map(Subset::to_vec).serialize(s)
}

/// Tries every pattern with at most `max_erasures` erased elements.
pub fn exhaustive(m: &Matroid, cover: &LocalityCover, max_erasures: usize) -> ExhaustiveReport {
    let fast = with_fast_ranks(m);
    let n = m.n();
    let mut by_size = Vec::new();
    let mut first_undecodable = None;
    for size in 0..=max_erasures.min(n) {
        let patterns: Vec<Subset> = subsets_of_size(n, size).collect();
        let t = patterns
            .par_iter()
            .map(|&e| tally(&fast, cover, e))
            .reduce(Tally::default, Tally::add);
        if first_undecodable.is_none() {
            first_undecodable = patterns
                .iter()
                .copied()
                .find(|&e| !is_globally_decodable(&fast, e));
        }
        by_size.push(SizeCounts {
            erasures: size,
            patterns: patterns.len() as u64,
            locally_repaired: t.local,
            globally_decodable: t.decodable,
        });
    }
    ExhaustiveReport {
        max_erasures,
        by_size,
        first_undecodable,
    }
}
