use std::fmt;
use std::ops::RangeInclusive;

use crate::error::{Error, Result};

/// Block boundaries `n_0 = 0 < n_1 < ... < n_l = n`.
///
/// Block `i` (0-based) owns the coordinates `n_i ..= n_{i+1}`; consecutive blocks share the
/// junction coordinate `n_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSpec {
    boundaries: Vec<usize>,
}

impl BlockSpec {
    pub fn new(boundaries: Vec<usize>) -> Result<Self> {
        if boundaries.len() < 2 {
            return Err(Error::InvalidBlocks("need at least two boundaries".into()));
        }
        if boundaries[0] != 0 {
            return Err(Error::InvalidBlocks(format!("first boundary must be 0, got {}", boundaries[0])));
        }
        if let Some(w) = boundaries.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidBlocks(format!("not increasing: {} then {}", w[0], w[1])));
        }
        Ok(BlockSpec { boundaries })
    }

    /// Checks that the last boundary is the last coordinate of a ring of the given arity.
    pub fn check_arity(&self, arity: usize) -> Result<()> {
        if self.last() + 1 != arity {
            return Err(Error::InvalidBlocks(format!(
                "last boundary {} does not match ring arity {arity}",
                self.last()
            )));
        }
        Ok(())
    }

    pub fn boundaries(&self) -> &[usize] {
        &self.boundaries
    }

    /// Number of blocks.
    pub fn len(&self) -> usize {
        self.boundaries.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Index of the last coordinate.
    pub fn last(&self) -> usize {
        *self.boundaries.last().unwrap()
    }

    pub fn arity(&self) -> usize {
        self.last() + 1
    }

    pub fn block(&self, i: usize) -> RangeInclusive<usize> {
        self.boundaries[i]..=self.boundaries[i + 1]
    }

    pub fn block_vars(&self, i: usize) -> Vec<usize> {
        self.block(i).collect()
    }

    /// Coordinates outside block `i`.
    pub fn outside_vars(&self, i: usize) -> Vec<usize> {
        let b = self.block(i);
        (0..self.arity()).filter(|v| !b.contains(v)).collect()
    }

    /// Interior boundaries shared by consecutive blocks.
    pub fn junctions(&self) -> &[usize] {
        &self.boundaries[1..self.boundaries.len() - 1]
    }

    /// The block containing every coordinate of `support`, if one exists (smallest index).
    pub fn block_containing(&self, support: &[usize]) -> Option<usize> {
        (0..self.len()).find(|&i| support.iter().all(|v| self.block(i).contains(v)))
    }
}

impl fmt::Display for BlockSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.boundaries.iter().map(|b| b.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(BlockSpec::new(vec![0, 2, 4]).is_ok());
        assert!(BlockSpec::new(vec![0, 3, 2]).is_err());
        assert!(BlockSpec::new(vec![1, 3]).is_err());
        assert!(BlockSpec::new(vec![0]).is_err());
    }

    #[test]
    fn blocks_and_junctions() {
        let b = BlockSpec::new(vec![0, 4, 7, 11]).unwrap();
        assert_eq!(b.len(), 3);
        assert_eq!(b.block_vars(1), vec![4, 5, 6, 7]);
        assert_eq!(b.junctions(), &[4, 7]);
        assert_eq!(b.outside_vars(0), vec![5, 6, 7, 8, 9, 10, 11]);
        assert_eq!(b.block_containing(&[4]), Some(0));
        assert_eq!(b.block_containing(&[5, 7]), Some(1));
        assert_eq!(b.block_containing(&[3, 5]), None);
        assert!(b.check_arity(12).is_ok());
        assert!(b.check_arity(11).is_err());
    }
}
