use std::fmt;
use std::ops::Range;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Block structure of a model: the direct sum of full symmetric matrix
/// algebras of sizes `n1, ..., nk`.
///
/// A single block gives a factor (trivial center); several blocks give a
/// center with `2^k` projections.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModelShape {
    blocks: Arc<[usize]>,
}

impl ModelShape {
    pub fn new(blocks: &[usize]) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidShape("at least one block is required".into()));
        }
        if let Some(pos) = blocks.iter().position(|&b| b == 0) {
            return Err(Error::InvalidShape(format!("block {pos} has dimension 0")));
        }
        Ok(Self { blocks: blocks.into() })
    }

    /// A one-block (irreducible) model of dimension `n`.
    pub fn square(n: usize) -> Result<Self> {
        Self::new(&[n])
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().sum()
    }

    pub fn is_irreducible(&self) -> bool {
        self.blocks.len() == 1
    }

    /// Row/column index range of block `b`.
    pub fn range(&self, b: usize) -> Range<usize> {
        let start: usize = self.blocks[..b].iter().sum();
        start..start + self.blocks[b]
    }

    pub fn ranges(&self) -> impl Iterator<Item = Range<usize>> + '_ {
        let mut start = 0;
        self.blocks.iter().map(move |&n| {
            let r = start..start + n;
            start += n;
            r
        })
    }

    /// Index of the block containing row `i`.
    pub fn block_of(&self, i: usize) -> usize {
        let mut start = 0;
        for (b, &n) in self.blocks.iter().enumerate() {
            if i < start + n {
                return b;
            }
            start += n;
        }
        panic!("index {i} outside model of dimension {}", self.dim());
    }

    pub fn in_block(&self, i: usize, j: usize) -> bool {
        self.block_of(i) == self.block_of(j)
    }
}

impl fmt::Debug for ModelShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModelShape{:?}", &*self.blocks)
    }
}

impl fmt::Display for ModelShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(|b| b.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Parses `"2,3"` or `"2 3"` or `"(2,3)"`.
impl FromStr for ModelShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        let blocks = trimmed
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::InvalidShape(format!("bad block size `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&blocks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_and_lookup() {
        let s = ModelShape::new(&[2, 3]).unwrap();
        assert_eq!(s.dim(), 5);
        assert_eq!(s.range(1), 2..5);
        assert_eq!(s.block_of(1), 0);
        assert_eq!(s.block_of(4), 1);
        assert!(s.in_block(2, 4));
        assert!(!s.in_block(1, 2));
        assert_eq!(s.ranges().collect::<Vec<_>>(), vec![0..2, 2..5]);
    }

    #[test]
    fn parse() {
        assert_eq!("2,3".parse::<ModelShape>().unwrap().blocks(), &[2, 3]);
        assert_eq!("(4)".parse::<ModelShape>().unwrap().blocks(), &[4]);
        assert!("".parse::<ModelShape>().is_err());
        assert!("2,0".parse::<ModelShape>().is_err());
        assert!("x".parse::<ModelShape>().is_err());
    }
}
