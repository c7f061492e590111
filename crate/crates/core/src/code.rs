//! Explicit block codes, projections, the almost-affine test and the induced
//! matroid `rho_C(X) = log_s |C_X|`.

use std::collections::BTreeSet;

use crate::matroid::{Matroid, RankTable};
use crate::subset::{all_subsets, Subset};
use crate::Error;

/// Largest code the explicit-enumeration routines accept.
pub const MAX_CODEWORDS: usize = 1 << 20;

/// A code `C ⊆ Σ^n` over the alphabet `{0, .., s-1}`, stored as its set of
/// codewords.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockCode {
    alphabet_size: usize,
    length: usize,
    codewords: BTreeSet<Vec<u32>>,
}

impl BlockCode {
    pub fn new(alphabet_size: usize, length: usize, words: Vec<Vec<u32>>) -> Result<Self, Error> {
        if alphabet_size < 2 {
            return Err(Error::BadParams(format!(
                "alphabet size must be at least 2, got {alphabet_size}"
            )));
        }
        if words.is_empty() {
            return Err(Error::BadParams("a code needs at least one codeword".into()));
        }
        if words.len() > MAX_CODEWORDS {
            return Err(Error::TooLarge {
                n: words.len(),
                limit: MAX_CODEWORDS,
            });
        }
        for (i, w) in words.iter().enumerate() {
            if w.len() != length {
                return Err(Error::BadParams(format!(
                    "codeword {i} has length {}, expected {length}",
                    w.len()
                )));
            }
            if let Some(sym) = w.iter().find(|&&c| c as usize >= alphabet_size) {
                return Err(Error::BadParams(format!(
                    "codeword {i} uses symbol {sym} outside alphabet of size {alphabet_size}"
                )));
            }
        }
        let count = words.len();
        let codewords: BTreeSet<Vec<u32>> = words.into_iter().collect();
        if codewords.len() != count {
            return Err(Error::BadParams("duplicate codewords".into()));
        }
        Ok(BlockCode {
            alphabet_size,
            length,
            codewords,
        })
    }

    /// The linear code over the prime field `GF(q)` spanned by the rows of
    /// `generator`.
    pub fn linear(q: u32, generator: &[Vec<u32>]) -> Result<Self, Error> {
        let k = generator.len();
        let n = generator.first().map_or(0, Vec::len);
        if (q as usize).pow(k as u32) > MAX_CODEWORDS {
            return Err(Error::TooLarge {
                n: (q as usize).pow(k as u32),
                limit: MAX_CODEWORDS,
            });
        }
        let mut words = BTreeSet::new();
        let mut msg = vec![0u32; k];
        loop {
            let word: Vec<u32> = (0..n)
                .map(|j| {
                    msg.iter()
                        .zip(generator)
                        .map(|(&m, row)| m * row[j])
                        .sum::<u32>()
                        % q
                })
                .collect();
            words.insert(word);
            // next message in base q
            let mut i = 0;
            while i < k {
                msg[i] += 1;
                if msg[i] < q {
                    break;
                }
                msg[i] = 0;
                i += 1;
            }
            if i == k {
                break;
            }
        }
        BlockCode::new(q as usize, n, words.into_iter().collect())
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    pub fn codewords(&self) -> impl Iterator<Item = &Vec<u32>> {
        self.codewords.iter()
    }

    /// `C_X`: codewords restricted to the coordinates in `X`, duplicates
    /// collapsed. Coordinates keep their relative order.
    pub fn project(&self, x: Subset) -> BlockCode {
        let coords = x.to_vec();
        let codewords = self
            .codewords
            .iter()
            .map(|w| coords.iter().map(|&j| w[j]).collect())
            .collect();
        BlockCode {
            alphabet_size: self.alphabet_size,
            length: coords.len(),
            codewords,
        }
    }

    fn projection_size(&self, x: Subset) -> usize {
        let coords = x.to_vec();
        self.codewords
            .iter()
            .map(|w| coords.iter().map(|&j| w[j]).collect::<Vec<_>>())
            .collect::<BTreeSet<_>>()
            .len()
    }

    /// True when every projection has a size that is an exact power of `s`.
    pub fn is_almost_affine(&self) -> bool {
        self.first_non_affine_projection().is_none()
    }

    fn first_non_affine_projection(&self) -> Option<Subset> {
        all_subsets(self.length).find(|&x| exact_log(self.projection_size(x), self.alphabet_size).is_none())
    }

    /// The matroid `rho_C(X) = log_s |C_X|` of an almost affine code.
    pub fn induce_matroid(&self) -> Result<Matroid, Error> {
        let mut witness = None;
        let table = RankTable::from_fn(self.length, |x| {
            match exact_log(self.projection_size(x), self.alphabet_size) {
                Some(r) => r,
                None => {
                    witness.get_or_insert(x);
                    0
                }
            }
        })?;
        if let Some(x) = witness {
            return Err(Error::NotAlmostAffine { witness: x });
        }
        Matroid::from_rank_table(table)
    }

    /// Minimum pairwise Hamming distance.
    pub fn min_distance(&self) -> Result<usize, Error> {
        if self.codewords.len() < 2 {
            return Err(Error::SingletonCode);
        }
        let words: Vec<&Vec<u32>> = self.codewords.iter().collect();
        let mut best = usize::MAX;
        for (i, a) in words.iter().enumerate() {
            for b in &words[i + 1..] {
                best = best.min(hamming(a, b));
            }
        }
        Ok(best)
    }
}

fn hamming(a: &[u32], b: &[u32]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// `log_base(value)` when `value` is an exact power of `base`.
pub fn exact_log(value: usize, base: usize) -> Option<usize> {
    let mut acc = 1usize;
    let mut exp = 0;
    while acc < value {
        acc = acc.checked_mul(base)?;
        exp += 1;
    }
    (acc == value).then_some(exp)
}

/// Locality-set test through the distance form: `|S| <= r + δ - 1` and
/// `d(C_S) >= δ`. A projection with a single word has no finite distance
/// and passes the distance part.
pub fn is_locality_set_of_code(code: &BlockCode, s: Subset, r: usize, delta: usize) -> bool {
    if s.len() > r + delta - 1 {
        return false;
    }
    match code.project(s).min_distance() {
        Ok(d) => d >= delta,
        Err(_) => true,
    }
}

/// Locality-set test through repair functions: every symbol `l ∈ S` is a
/// function of any `|S| - (δ-1)` other symbols of `S`.
pub fn is_locality_set_by_repair_function(code: &BlockCode, s: Subset, r: usize, delta: usize) -> bool {
    if s.len() > r + delta - 1 {
        return false;
    }
    let Some(size) = (s.len() + 1).checked_sub(delta) else {
        return true;
    };
    for l in s.iter() {
        let others = s.remove(l);
        for sub in others.subsets().filter(|x| x.len() == size) {
            let coords = sub.to_vec();
            let mut seen: std::collections::HashMap<Vec<u32>, u32> = Default::default();
            for w in code.codewords() {
                let key: Vec<u32> = coords.iter().map(|&j| w[j]).collect();
                match seen.get(&key) {
                    Some(&v) if v != w[l] => return false,
                    Some(_) => {}
                    None => {
                        seen.insert(key, w[l]);
                    }
                }
            }
        }
    }
    true
}

/// Locality-set test through projection sizes: `|C_{L ∪ l}| = |C_L|`.
pub fn is_locality_set_by_projection_sizes(
    code: &BlockCode,
    s: Subset,
    r: usize,
    delta: usize,
) -> bool {
    if s.len() > r + delta - 1 {
        return false;
    }
    let Some(size) = (s.len() + 1).checked_sub(delta) else {
        return true;
    };
    s.iter().all(|l| {
        s.remove(l)
            .subsets()
            .filter(|x| x.len() == size)
            .all(|big_l| code.projection_size(big_l.insert(l)) == code.projection_size(big_l))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parity() -> BlockCode {
        BlockCode::new(2, 3, vec![vec![0, 0, 0], vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]).unwrap()
    }

    fn repetition() -> BlockCode {
        BlockCode::new(2, 3, vec![vec![0, 0, 0], vec![1, 1, 1]]).unwrap()
    }

    #[test]
    fn projections() {
        let c = parity();
        let p = c.project(Subset::from_elements([0, 1]));
        assert_eq!(p.len(), 4);
        assert_eq!(p.length(), 2);
        let e = c.project(Subset::EMPTY);
        assert_eq!(e.len(), 1);
        assert_eq!(e.codewords().next().unwrap().len(), 0);
        assert_eq!(c.project(Subset::full(3)), c);
    }

    #[test]
    fn almost_affine() {
        assert!(parity().is_almost_affine());
        let three = BlockCode::new(2, 2, vec![vec![0, 0], vec![0, 1], vec![1, 0]]).unwrap();
        assert!(!three.is_almost_affine());
        assert!(matches!(three.induce_matroid(), Err(Error::NotAlmostAffine { .. })));
        let bit = BlockCode::new(2, 1, vec![vec![0], vec![1]]).unwrap();
        assert!(bit.is_almost_affine());
        let ternary = BlockCode::linear(3, &[vec![1, 0, 1], vec![0, 1, 2]]).unwrap();
        assert_eq!(ternary.len(), 9);
        assert!(ternary.is_almost_affine());
    }

    #[test]
    fn induced_matroids() {
        let u32_ = Matroid::uniform(3, 2).unwrap();
        assert!(parity().induce_matroid().unwrap().same_ranks(&u32_));
        let u31 = Matroid::uniform(3, 1).unwrap();
        assert!(repetition().induce_matroid().unwrap().same_ranks(&u31));
        let single = BlockCode::new(2, 3, vec![vec![1, 0, 1]]).unwrap();
        assert_eq!(single.induce_matroid().unwrap().full_rank(), 0);
    }

    #[test]
    fn distances() {
        assert_eq!(parity().min_distance().unwrap(), 2);
        assert_eq!(repetition().min_distance().unwrap(), 3);
        let full = BlockCode::linear(2, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(full.min_distance().unwrap(), 1);
        let single = BlockCode::new(2, 2, vec![vec![0, 0]]).unwrap();
        assert!(matches!(single.min_distance(), Err(Error::SingletonCode)));
    }

    #[test]
    fn locality_sets() {
        let c = parity();
        assert!(is_locality_set_of_code(&c, Subset::full(3), 2, 2));
        assert!(!is_locality_set_of_code(&c, Subset::from_elements([0]), 1, 2));
        assert!(!is_locality_set_of_code(&c, Subset::full(3), 1, 2));
        let rep = repetition();
        assert!(is_locality_set_of_code(&rep, Subset::from_elements([0, 1]), 1, 2));
        for f in [is_locality_set_by_repair_function, is_locality_set_by_projection_sizes] {
            assert!(f(&c, Subset::full(3), 2, 2));
            assert!(!f(&c, Subset::from_elements([0]), 1, 2));
            assert!(f(&rep, Subset::from_elements([0, 1]), 1, 2));
        }
    }

    #[test]
    fn constructor_rejects_bad_input() {
        assert!(BlockCode::new(1, 1, vec![vec![0]]).is_err());
        assert!(BlockCode::new(2, 2, vec![vec![0]]).is_err());
        assert!(BlockCode::new(2, 1, vec![vec![2]]).is_err());
        assert!(BlockCode::new(2, 1, vec![vec![0], vec![0]]).is_err());
        assert!(BlockCode::new(2, 1, vec![]).is_err());
    }

    #[test]
    fn exact_logs() {
        assert_eq!(exact_log(1, 2), Some(0));
        assert_eq!(exact_log(8, 2), Some(3));
        assert_eq!(exact_log(3, 2), None);
        assert_eq!(exact_log(27, 3), Some(3));
        assert_eq!(exact_log(12, 3), None);
    }
}
