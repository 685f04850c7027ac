use std::collections::HashMap;

use super::FunctionError;

/// A partition of `0..len` given by a block id per element. Ids are numbered
/// by first occurrence, so equal partitions compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<usize>,
    count: usize,
}

impl Partition {
    /// Groups elements by equal label.
    pub fn from_labels<L: Eq + std::hash::Hash>(labels: impl IntoIterator<Item = L>) -> Self {
        let mut ids = HashMap::new();
        let blocks: Vec<usize> = labels
            .into_iter()
            .map(|l| {
                let next = ids.len();
                *ids.entry(l).or_insert(next)
            })
            .collect();
        Partition {
            count: ids.len(),
            blocks,
        }
    }

    pub fn identity(len: usize) -> Self {
        Partition {
            blocks: (0..len).collect(),
            count: len,
        }
    }

    pub fn single(len: usize) -> Self {
        Partition {
            blocks: vec![0; len],
            count: (len > 0) as usize,
        }
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_count(&self) -> usize {
        self.count
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.blocks[x]
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.count];
        for &b in &self.blocks {
            sizes[b] += 1;
        }
        sizes
    }

    /// Every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        let mut image = vec![None; self.count];
        self.len() == other.len()
            && self.blocks.iter().zip(&other.blocks).all(|(&a, &b)| {
                let slot = &mut image[a];
                *slot.get_or_insert(b) == b
            })
    }

    /// Pulls the partition back along `map`: `x` and `y` share a block when
    /// `map(x)` and `map(y)` do.
    pub fn pull_back(&self, len: usize, map: impl Fn(usize) -> usize) -> Partition {
        Partition::from_labels((0..len).map(|x| self.blocks[map(x)]))
    }
}

/// The finest partition coarser than both arguments: connected components of
/// the graph linking the two blocks each element belongs to.
pub fn maximal_common_function(p1: &Partition, p2: &Partition) -> Result<Partition, FunctionError> {
    if p1.len() != p2.len() {
        return Err(FunctionError::DomainMismatch(p1.len(), p2.len()));
    }
    // union-find over p1 blocks followed by p2 blocks
    let mut parent: Vec<usize> = (0..p1.count + p2.count).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (&a, &b) in p1.blocks.iter().zip(&p2.blocks) {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, p1.count + b));
        parent[ra] = rb;
    }
    Ok(Partition::from_labels(
        p1.blocks.iter().map(|&a| find(&mut parent, a)).collect::<Vec<_>>(),
    ))
}

/// Shannon entropy in bits of the block containing a uniform element.
pub fn entropy_uniform(p: &Partition) -> f64 {
    let n = p.len() as f64;
    p.block_sizes()
        .into_iter()
        .filter(|&k| k > 0)
        .map(|k| {
            let pr = k as f64 / n;
            -pr * pr.log2()
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn meet_of_overlapping_blocks() {
        let p1 = Partition::from_labels([0, 0, 1, 1, 2, 2]);
        let p2 = Partition::from_labels([0, 1, 1, 2, 3, 3]);
        let m = maximal_common_function(&p1, &p2).unwrap();
        assert_eq!(m, Partition::from_labels([0, 0, 0, 0, 1, 1]));
        assert!(p1.refines(&m) && p2.refines(&m));
        assert_eq!(maximal_common_function(&p1, &Partition::identity(6)).unwrap(), p1);
        assert!(maximal_common_function(&p1, &Partition::identity(5)).is_err());
    }

    #[test]
    fn entropies() {
        assert_eq!(entropy_uniform(&Partition::single(7)), 0.0);
        assert!((entropy_uniform(&Partition::identity(8)) - 3.0).abs() < 1e-12);
        assert!((entropy_uniform(&Partition::from_labels([0, 0, 1, 1, 2, 2])) - 3f64.log2()).abs() < 1e-12);
    }
}
