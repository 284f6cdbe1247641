use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// An explicit assignment of one of `num_colors` colors to each integer
/// in `[1, n]`. Color 0 plays the role of red, color 1 of blue.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    colors: Vec<u8>,
    num_colors: u8,
}

impl Coloring {
    /// Builds a coloring from per-position colors; `colors[i]` colors the
    /// integer `i + 1`. Every entry must be `< num_colors`.
    pub fn new(colors: Vec<u8>, num_colors: u8) -> Result<Self> {
        if colors.is_empty() {
            return Err(Error::EmptyColoring);
        }
        if num_colors == 0 {
            return Err(Error::InvalidParameter(
                "number of colors must be at least 1".into(),
            ));
        }
        if let Some(position) = colors.iter().position(|&c| c >= num_colors) {
            return Err(Error::ColorOutOfRange {
                position: position + 1,
                color: colors[position],
                num_colors,
            });
        }
        Ok(Self { colors, num_colors })
    }

    /// The single-color coloring of `[1, n]`.
    pub fn uniform(n: usize, color: u8, num_colors: u8) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyColoring);
        }
        Self::new(vec![color; n], num_colors)
    }

    /// Interval length n.
    pub fn n(&self) -> usize {
        self.colors.len()
    }

    pub fn num_colors(&self) -> u8 {
        self.num_colors
    }

    /// Color of the integer `m`, 1-based. Panics if `m` is out of range.
    pub fn color(&self, m: usize) -> u8 {
        self.colors[m - 1]
    }

    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    /// Number of positions painted `color`.
    pub fn count_color(&self, color: u8) -> usize {
        self.colors.iter().filter(|&&c| c == color).count()
    }

    /// Relabels colors through `perm` (old color -> new color), which must
    /// be a permutation of `0..num_colors`.
    pub fn permute_colors(&self, perm: &[u8]) -> Result<Self> {
        if perm.len() != self.num_colors as usize {
            return Err(Error::InvalidParameter(
                "permutation length must equal the color count".into(),
            ));
        }
        let mut seen = vec![false; perm.len()];
        for &p in perm {
            if p as usize >= perm.len() || seen[p as usize] {
                return Err(Error::InvalidParameter(
                    "color permutation must be a bijection".into(),
                ));
            }
            seen[p as usize] = true;
        }
        let colors = self.colors.iter().map(|&c| perm[c as usize]).collect();
        Self::new(colors, self.num_colors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_and_out_of_range() {
        assert_eq!(Coloring::new(vec![], 2), Err(Error::EmptyColoring));
        assert_eq!(
            Coloring::new(vec![0, 2, 1], 2),
            Err(Error::ColorOutOfRange {
                position: 2,
                color: 2,
                num_colors: 2
            })
        );
    }

    #[test]
    fn permute_relabels_positions() {
        let c = Coloring::new(vec![0, 0, 1, 1, 0], 2).unwrap();
        let p = c.permute_colors(&[1, 0]).unwrap();
        assert_eq!(p.colors(), &[1, 1, 0, 0, 1]);
        assert!(c.permute_colors(&[0, 0]).is_err());
    }
}
