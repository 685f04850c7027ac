use std::fmt;

/// A set of edge indices, kept sorted. The derived ordering is lexicographic
/// on the sorted index lists, which is the tie-break order for witnesses.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct EdgeSet(Vec<usize>);

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.0).finish()
    }
}

impl FromIterator<usize> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        EdgeSet(v)
    }
}

impl EdgeSet {
    pub fn empty() -> Self {
        EdgeSet(Vec::new())
    }

    pub fn single(e: usize) -> Self {
        EdgeSet(vec![e])
    }

    pub fn from_mask(mask: u64) -> Self {
        (0..64).filter(|&e| mask >> e & 1 == 1).collect()
    }

    /// Bitmask form; every member must be below 64.
    pub fn mask(&self) -> u64 {
        self.0.iter().fold(0, |m, &e| m | 1 << e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.0.binary_search(&e).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        self.iter().chain(other.iter()).collect()
    }

    pub fn difference(&self, other: &EdgeSet) -> EdgeSet {
        self.iter().filter(|&e| !other.contains(e)).collect()
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.iter().all(|e| other.contains(e))
    }

    /// Membership flags for edges `0..n`.
    pub fn indicator(&self, n: usize) -> Vec<bool> {
        let mut flags = vec![false; n];
        for &e in &self.0 {
            flags[e] = true;
        }
        flags
    }
}

/// A set of source positions `0..s` (not node indices), as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SourceSet(pub u32);

impl fmt::Debug for SourceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl SourceSet {
    pub const EMPTY: SourceSet = SourceSet(0);

    pub fn single(i: usize) -> Self {
        SourceSet(1 << i)
    }

    pub fn full(s: usize) -> Self {
        if s >= 32 {
            SourceSet(u32::MAX)
        } else {
            SourceSet((1u32 << s) - 1)
        }
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, o: SourceSet) -> SourceSet {
        SourceSet(self.0 | o.0)
    }

    pub fn intersection(self, o: SourceSet) -> SourceSet {
        SourceSet(self.0 & o.0)
    }

    pub fn difference(self, o: SourceSet) -> SourceSet {
        SourceSet(self.0 & !o.0)
    }

    pub fn is_subset(self, o: SourceSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}
