use std::cmp::Ordering;
use std::fmt;

/// A set of point indices drawn from a fixed universe `[0, universe)`,
/// stored as a bitmask with the cardinality cached.
///
/// Sets over different universes never compare equal and must not be mixed
/// in binary operations (debug-asserted).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    universe: u32,
    card: u32,
    words: Box<[u64]>,
}

#[inline]
fn word_count(universe: usize) -> usize {
    universe.div_ceil(64)
}

impl PointSet {
    pub fn empty(universe: usize) -> Self {
        PointSet {
            universe: universe as u32,
            card: 0,
            words: vec![0u64; word_count(universe)].into_boxed_slice(),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for i in 0..universe {
            s.insert(i);
        }
        s
    }

    pub fn from_points<I: IntoIterator<Item = usize>>(universe: usize, points: I) -> Self {
        let mut s = Self::empty(universe);
        for p in points {
            assert!(p < universe, "point {p} outside universe {universe}");
            s.insert(p);
        }
        s
    }

    pub fn singleton(universe: usize, p: usize) -> Self {
        Self::from_points(universe, [p])
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe as usize
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.card as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.card == 0
    }

    #[inline]
    pub fn contains(&self, p: usize) -> bool {
        debug_assert!(p < self.universe as usize);
        self.words[p / 64] >> (p % 64) & 1 == 1
    }

    /// Inserts `p`; returns true if it was new.
    #[inline]
    pub fn insert(&mut self, p: usize) -> bool {
        debug_assert!(p < self.universe as usize);
        let w = &mut self.words[p / 64];
        let bit = 1u64 << (p % 64);
        if *w & bit == 0 {
            *w |= bit;
            self.card += 1;
            true
        } else {
            false
        }
    }

    /// Removes `p`; returns true if it was present.
    #[inline]
    pub fn remove(&mut self, p: usize) -> bool {
        debug_assert!(p < self.universe as usize);
        let w = &mut self.words[p / 64];
        let bit = 1u64 << (p % 64);
        if *w & bit != 0 {
            *w &= !bit;
            self.card -= 1;
            true
        } else {
            false
        }
    }

    pub fn with(&self, p: usize) -> Self {
        let mut s = self.clone();
        s.insert(p);
        s
    }

    pub fn without(&self, p: usize) -> Self {
        let mut s = self.clone();
        s.remove(p);
        s
    }

    fn recount(&mut self) {
        self.card = self.words.iter().map(|w| w.count_ones()).sum();
    }

    pub fn union_in_place(&mut self, other: &Self) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= *b;
        }
        self.recount();
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.union_in_place(other);
        s
    }

    pub fn intersection(&self, other: &Self) -> Self {
        debug_assert_eq!(self.universe, other.universe);
        let mut s = self.clone();
        for (a, b) in s.words.iter_mut().zip(other.words.iter()) {
            *a &= *b;
        }
        s.recount();
        s
    }

    pub fn difference(&self, other: &Self) -> Self {
        debug_assert_eq!(self.universe, other.universe);
        let mut s = self.clone();
        for (a, b) in s.words.iter_mut().zip(other.words.iter()) {
            *a &= !*b;
        }
        s.recount();
        s
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_superset_of(&self, other: &Self) -> bool {
        other.is_subset_of(self)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & b == 0)
    }

    pub fn intersection_len(&self, other: &Self) -> usize {
        debug_assert_eq!(self.universe, other.universe);
        self.words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Smallest member, if any.
    pub fn min_element(&self) -> Option<usize> {
        for (i, w) in self.words.iter().enumerate() {
            if *w != 0 {
                return Some(i * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Smallest member strictly greater than `p`, if any.
    pub fn min_element_above(&self, p: usize) -> Option<usize> {
        let start = p + 1;
        if start >= self.universe as usize {
            return None;
        }
        let mut wi = start / 64;
        let mut w = self.words[wi] & (!0u64 << (start % 64));
        loop {
            if w != 0 {
                return Some(wi * 64 + w.trailing_zeros() as usize);
            }
            wi += 1;
            if wi == self.words.len() {
                return None;
            }
            w = self.words[wi];
        }
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            set: self,
            word: 0,
            bits: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

/// Ascending iterator over members.
pub struct Iter<'a> {
    set: &'a PointSet,
    word: usize,
    bits: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.bits != 0 {
                let t = self.bits.trailing_zeros() as usize;
                self.bits &= self.bits - 1;
                return Some(self.word * 64 + t);
            }
            self.word += 1;
            if self.word >= self.set.words.len() {
                return None;
            }
            self.bits = self.set.words[self.word];
        }
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = usize;
    type IntoIter = Iter<'a>;
    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

/// Orders sets like their ascending member lists compare lexicographically:
/// {0,5} < {0,7} < {1} and a proper prefix sorts first. This is the canonical
/// order used for deterministic witness selection.
impl Ord for PointSet {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.universe, other.universe);
        // Lowest point in the symmetric difference decides, except that
        // running out of elements (prefix) sorts first.
        for (i, (a, b)) in self.words.iter().zip(other.words.iter()).enumerate() {
            let diff = a ^ b;
            if diff != 0 {
                let t = i * 64 + diff.trailing_zeros() as usize;
                return if self.contains(t) {
                    // `other` either ends here (prefix, smaller) or continues
                    // with a larger element (so `self` is smaller).
                    if other.min_element_above(t).is_some() {
                        Ordering::Less
                    } else {
                        Ordering::Greater
                    }
                } else if self.min_element_above(t).is_some() {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for PointSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

impl serde::Serialize for PointSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}
