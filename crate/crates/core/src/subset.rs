//! Fixed-width subsets of a ground set `{0, .., n-1}` with `n <= 64`.

use std::fmt;

/// Largest supported ground-set size.
pub const MAX_GROUND: usize = 64;

/// A subset of the ground set, stored as a 64-bit mask. Bit `i` set means
/// element `i` is a member.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Subset(pub u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    /// The full ground set `{0, .., n-1}`.
    pub fn full(n: usize) -> Subset {
        assert!(n <= MAX_GROUND, "ground set of size {n} exceeds {MAX_GROUND}");
        if n == 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn singleton(x: usize) -> Subset {
        Subset(1u64 << x)
    }

    /// Builds a subset from element indices. Duplicates are ignored.
    pub fn from_elements<I: IntoIterator<Item = usize>>(elems: I) -> Subset {
        let mut bits = 0u64;
        for e in elems {
            assert!(e < MAX_GROUND, "element {e} out of range");
            bits |= 1u64 << e;
        }
        Subset(bits)
    }

    /// Contiguous range `start..end`.
    pub fn range(start: usize, end: usize) -> Subset {
        Subset::full(end).difference(Subset::full(start))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, x: usize) -> bool {
        x < MAX_GROUND && (self.0 >> x) & 1 == 1
    }

    pub fn insert(self, x: usize) -> Subset {
        Subset(self.0 | (1u64 << x))
    }

    pub fn remove(self, x: usize) -> Subset {
        Subset(self.0 & !(1u64 << x))
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset_of(self, other: Subset) -> bool {
        self.is_subset_of(other) && self != other
    }

    /// Lowest member, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Largest member, if any.
    pub fn last(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    /// Members in ascending order.
    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`, including `∅` and `self`, in increasing mask order.
    pub fn subsets(self) -> SubsetsOf {
        SubsetsOf {
            mask: self.0,
            next: Some(0),
        }
    }

    /// Lexicographic comparison of the sorted element lists, the canonical
    /// ordering used for serialized families.
    pub fn lex_cmp(self, other: Subset) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Subset::from_elements(iter)
    }
}

/// Iterator over the members of a [`Subset`].
#[derive(Clone)]
pub struct Elements(u64);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

/// Iterator over all subsets of a mask (standard `(s - mask) & mask` walk).
pub struct SubsetsOf {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for SubsetsOf {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            Some(cur.wrapping_sub(self.mask) & self.mask)
        };
        Some(Subset(cur))
    }
}

/// All `size`-element subsets of `{0, .., n-1}` in increasing mask order.
pub fn subsets_of_size(n: usize, size: usize) -> impl Iterator<Item = Subset> {
    KSubsets::new(n, size)
}

struct KSubsets {
    limit: u64,
    cur: Option<u64>,
}

impl KSubsets {
    fn new(n: usize, size: usize) -> Self {
        assert!(n < 64, "k-subset enumeration needs n < 64");
        let cur = if size > n {
            None
        } else if size == 0 {
            Some(0)
        } else {
            Some((1u64 << size) - 1)
        };
        KSubsets {
            limit: 1u64 << n,
            cur,
        }
    }
}

impl Iterator for KSubsets {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        let c = self.cur?;
        self.cur = if c == 0 {
            None
        } else {
            // Gosper's hack
            let lowest = c & c.wrapping_neg();
            let ripple = c + lowest;
            let next = (((ripple ^ c) >> 2) / lowest) | ripple;
            (next < self.limit).then_some(next)
        };
        Some(Subset(c))
    }
}

/// Every subset of `{0, .., n-1}` in increasing mask order. Requires `n < 64`.
pub fn all_subsets(n: usize) -> impl Iterator<Item = Subset> {
    assert!(n < 64, "exhaustive enumeration needs n < 64");
    (0..(1u64 << n)).map(Subset)
}
