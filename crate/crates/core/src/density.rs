//! Exact-rational leading coefficient of the monochromatic triple count
//! for block colorings, and discretization of a pattern to an explicit
//! coloring.
//!
//! A pattern with total length normalized to 1 has, for large n, about
//! `coefficient * n^2` monochromatic solutions of x + a*y = z. The
//! coefficient is a finite sum of polygon areas: one region
//! `{(x, y) : x in B_i, y in B_j, x + a*y in B_k}` per same-color block
//! triple (restricted to x <= y when a = 1), each computed in closed
//! form by clipping the band against the rectangle in exact rational
//! arithmetic.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::rational::{round_half_up, Rational};

/// A coloring of an interval described by consecutive blocks of exact
/// rational length. Lengths matter only up to common rescaling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPattern {
    blocks: Vec<(u8, Rational)>,
    num_colors: u8,
}

impl BlockPattern {
    pub fn new(blocks: Vec<(u8, Rational)>, num_colors: u8) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::EmptyPattern);
        }
        if num_colors == 0 {
            return Err(Error::InvalidParameter(
                "number of colors must be at least 1".into(),
            ));
        }
        for (index, (color, len)) in blocks.iter().enumerate() {
            if *color >= num_colors {
                return Err(Error::ColorOutOfRange {
                    position: index,
                    color: *color,
                    num_colors,
                });
            }
            if !len.is_positive() {
                return Err(Error::NonPositiveLength { index });
            }
        }
        Ok(Self { blocks, num_colors })
    }

    /// Convenience constructor from `(color, numerator, denominator)`.
    pub fn from_ratios(blocks: &[(u8, i64, i64)], num_colors: u8) -> Result<Self> {
        let blocks = blocks
            .iter()
            .map(|&(c, p, q)| (c, Rational::new(BigInt::from(p), BigInt::from(q))))
            .collect();
        Self::new(blocks, num_colors)
    }

    pub fn blocks(&self) -> &[(u8, Rational)] {
        &self.blocks
    }

    pub fn num_colors(&self) -> u8 {
        self.num_colors
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Sum of all block lengths.
    pub fn total(&self) -> Rational {
        let mut total = Rational::zero();
        for (_, len) in &self.blocks {
            total += len;
        }
        total
    }

    /// Cumulative boundaries `0 = b_0 < b_1 < ... < b_m = total`.
    pub fn boundaries(&self) -> Vec<Rational> {
        let mut out = Vec::with_capacity(self.blocks.len() + 1);
        let mut acc = Rational::zero();
        out.push(acc.clone());
        for (_, len) in &self.blocks {
            acc += len;
            out.push(acc.clone());
        }
        out
    }

    /// Appends one block at the right end.
    pub fn append(&mut self, color: u8, len: Rational) -> Result<()> {
        if color >= self.num_colors {
            return Err(Error::ColorOutOfRange {
                position: self.blocks.len(),
                color,
                num_colors: self.num_colors,
            });
        }
        if !len.is_positive() {
            return Err(Error::NonPositiveLength {
                index: self.blocks.len(),
            });
        }
        self.blocks.push((color, len));
        Ok(())
    }

    /// Rescales all lengths by the unique positive rational that turns
    /// them into integers with gcd 1. Density-level quantities are
    /// invariant under this, and integer lengths keep the clipping
    /// arithmetic cheap.
    pub fn integerized(&self) -> Self {
        let mut denom_lcm = BigInt::one();
        for (_, len) in &self.blocks {
            denom_lcm = denom_lcm.lcm(len.denom());
        }
        let mut numers: Vec<BigInt> = self
            .blocks
            .iter()
            .map(|(_, len)| len.numer() * (&denom_lcm / len.denom()))
            .collect();
        let mut gcd = BigInt::zero();
        for v in &numers {
            gcd = gcd.gcd(v);
        }
        if !gcd.is_one() && !gcd.is_zero() {
            for v in &mut numers {
                *v /= &gcd;
            }
        }
        let blocks = self
            .blocks
            .iter()
            .zip(numers)
            .map(|(&(c, _), v)| (c, Rational::from_integer(v)))
            .collect();
        Self {
            blocks,
            num_colors: self.num_colors,
        }
    }
}

/// The exact n^2-coefficient of the monochromatic count of a pattern,
/// split by color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityReport {
    /// Coefficient of n^2 in the monochromatic count, total length 1.
    pub coefficient: Rational,
    /// Per-color contributions; they sum to `coefficient`.
    pub per_color: Vec<Rational>,
}

/// Clips a convex polygon against the half-plane nx*x + ny*y <= rhs.
/// Vertices must be in consistent (either) orientation.
pub(crate) fn clip_halfplane(
    poly: &[(Rational, Rational)],
    nx: &Rational,
    ny: &Rational,
    rhs: &Rational,
) -> Vec<(Rational, Rational)> {
    if poly.is_empty() {
        return Vec::new();
    }
    let side = |p: &(Rational, Rational)| -> Rational { rhs - nx * &p.0 - ny * &p.1 };
    let mut out = Vec::with_capacity(poly.len() + 2);
    for i in 0..poly.len() {
        let cur = &poly[i];
        let next = &poly[(i + 1) % poly.len()];
        let s_cur = side(cur);
        let s_next = side(next);
        let cur_in = !s_cur.is_negative();
        let next_in = !s_next.is_negative();
        if cur_in {
            out.push(cur.clone());
        }
        if cur_in != next_in {
            // Intersection of the edge with the clip line.
            let t = &s_cur / (&s_cur - &s_next);
            let x = &cur.0 + &t * (&next.0 - &cur.0);
            let y = &cur.1 + &t * (&next.1 - &cur.1);
            out.push((x, y));
        }
    }
    out
}

/// Unsigned area of a simple polygon (shoelace / 2).
pub(crate) fn polygon_area(poly: &[(Rational, Rational)]) -> Rational {
    if poly.len() < 3 {
        return Rational::zero();
    }
    let mut twice = Rational::zero();
    for i in 0..poly.len() {
        let (x1, y1) = &poly[i];
        let (x2, y2) = &poly[(i + 1) % poly.len()];
        twice += x1 * y2 - x2 * y1;
    }
    twice.abs() / Rational::from_integer(2.into())
}

/// Area of `{(x, y) : x in [x_lo, x_hi], y in [y_lo, y_hi],
/// band_lo <= x + a*y <= band_hi}`, intersected with `x <= y` when
/// `diagonal` is set.
#[allow(clippy::too_many_arguments)]
pub(crate) fn triple_region_area(
    x_lo: &Rational,
    x_hi: &Rational,
    y_lo: &Rational,
    y_hi: &Rational,
    band_lo: &Rational,
    band_hi: &Rational,
    a: u32,
    diagonal: bool,
) -> Rational {
    if x_lo >= x_hi || y_lo >= y_hi || band_lo >= band_hi {
        return Rational::zero();
    }
    // Quick reject on the band against the box corners.
    let a_rat = Rational::from_integer(BigInt::from(a));
    let min_val = x_lo + &a_rat * y_lo;
    let max_val = x_hi + &a_rat * y_hi;
    if &min_val >= band_hi || &max_val <= band_lo {
        return Rational::zero();
    }
    let mut poly = vec![
        (x_lo.clone(), y_lo.clone()),
        (x_hi.clone(), y_lo.clone()),
        (x_hi.clone(), y_hi.clone()),
        (x_lo.clone(), y_hi.clone()),
    ];
    let one = Rational::one();
    poly = clip_halfplane(&poly, &one, &a_rat, band_hi);
    if !poly.is_empty() {
        let neg_lo = -band_lo.clone();
        poly = clip_halfplane(&poly, &-one.clone(), &-a_rat.clone(), &neg_lo);
    }
    if diagonal && !poly.is_empty() {
        let neg_one = -Rational::one();
        poly = clip_halfplane(&poly, &one, &neg_one, &Rational::zero());
    }
    polygon_area(&poly)
}

/// Per-color n^2-coefficients of the pattern measured with its absolute
/// (unnormalized) lengths. Dividing by total^2 gives density-level
/// values.
pub(crate) fn count_coeff_abs_per_color(pattern: &BlockPattern, a: u32) -> Vec<Rational> {
    let bounds = pattern.boundaries();
    let diagonal = a == 1;
    let mut per_color = vec![Rational::zero(); pattern.num_colors() as usize];
    let m = pattern.len();
    for i in 0..m {
        let ci = pattern.blocks()[i].0;
        for j in 0..m {
            if pattern.blocks()[j].0 != ci {
                continue;
            }
            for k in 0..m {
                if pattern.blocks()[k].0 != ci {
                    continue;
                }
                per_color[ci as usize] += triple_region_area(
                    &bounds[i],
                    &bounds[i + 1],
                    &bounds[j],
                    &bounds[j + 1],
                    &bounds[k],
                    &bounds[k + 1],
                    a,
                    diagonal,
                );
            }
        }
    }
    per_color
}

fn check_a(a: u32) -> Result<()> {
    if a < 1 {
        return Err(Error::InvalidParameter("a must be at least 1".into()));
    }
    Ok(())
}

/// Exact coefficient of n^2 in the monochromatic count of the pattern
/// (total length normalized to 1), split by color.
pub fn mono_density(pattern: &BlockPattern, a: u32) -> Result<DensityReport> {
    check_a(a)?;
    let total = pattern.total();
    let total_sq = &total * &total;
    let per_color: Vec<Rational> = count_coeff_abs_per_color(pattern, a)
        .into_iter()
        .map(|v| v / &total_sq)
        .collect();
    let mut coefficient = Rational::zero();
    for v in &per_color {
        coefficient += v;
    }
    Ok(DensityReport {
        coefficient,
        per_color,
    })
}

/// Coefficient of n^2 in the count of all solutions: 1/4 for the
/// unordered a = 1 convention, 1/(2a) for a >= 2.
pub fn total_density(a: u32) -> Result<Rational> {
    check_a(a)?;
    if a == 1 {
        Ok(Rational::new(BigInt::one(), BigInt::from(4)))
    } else {
        Ok(Rational::new(BigInt::one(), BigInt::from(2 * u64::from(a))))
    }
}

/// Discretizes a pattern to an explicit coloring of [1, n]: each
/// cumulative boundary is scaled to n and rounded to the nearest
/// integer independently, so rounding never drifts.
pub fn realize(pattern: &BlockPattern, n: usize) -> Result<Coloring> {
    if n < pattern.len() {
        return Err(Error::RealizeTooShort {
            n,
            blocks: pattern.len(),
        });
    }
    let total = pattern.total();
    let n_rat = Rational::from_integer(BigInt::from(n as u64));
    let mut colors = vec![0u8; n];
    let mut prev = 0usize;
    let bounds = pattern.boundaries();
    for (idx, (color, _)) in pattern.blocks().iter().enumerate() {
        let scaled = &n_rat * &bounds[idx + 1] / &total;
        let b = round_half_up(&scaled)
            .to_usize()
            .unwrap_or(n)
            .clamp(prev, n);
        for c in colors.iter_mut().take(b).skip(prev) {
            *c = *color;
        }
        prev = b;
    }
    Coloring::new(colors, pattern.num_colors())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn single_block_matches_closed_form() {
        for a in 1..=6u32 {
            let p = BlockPattern::from_ratios(&[(0, 1, 1)], 1).unwrap();
            let d = mono_density(&p, a).unwrap();
            assert_eq!(d.coefficient, total_density(a).unwrap(), "a = {a}");
            assert_eq!(d.per_color, vec![d.coefficient.clone()]);
        }
    }

    #[test]
    fn paper_schur_two_color_pattern() {
        let p = BlockPattern::from_ratios(&[(0, 1, 1), (1, 3, 2), (0, 1, 4)], 2).unwrap();
        let d = mono_density(&p, 1).unwrap();
        assert_eq!(d.coefficient, ratio(1, 22));
        assert_eq!(d.per_color, vec![ratio(9, 242), ratio(2, 242)]);
    }

    #[test]
    fn paper_a2_pattern() {
        let p = BlockPattern::from_ratios(&[(0, 1, 1), (1, 7, 3), (0, 1, 3)], 2).unwrap();
        let d = mono_density(&p, 2).unwrap();
        assert_eq!(d.coefficient, ratio(1, 44));
    }

    #[test]
    fn paper_three_color_pattern() {
        let p = BlockPattern::from_ratios(
            &[
                (0, 1, 1),
                (1, 3, 2),
                (0, 1, 4),
                (2, 3, 1),
                (0, 1, 8),
                (1, 487, 440),
                (0, 47, 440),
            ],
            3,
        )
        .unwrap();
        let d = mono_density(&p, 1).unwrap();
        assert_eq!(d.coefficient, ratio(47, 6238));
    }

    #[test]
    fn realize_examples() {
        let p = BlockPattern::from_ratios(&[(0, 1, 1)], 1).unwrap();
        let c = realize(&p, 7).unwrap();
        assert_eq!(c.colors(), &[0, 0, 0, 0, 0, 0, 0]);

        let p = BlockPattern::from_ratios(&[(0, 1, 1), (1, 3, 2), (0, 1, 4)], 2).unwrap();
        let c = realize(&p, 11).unwrap();
        assert_eq!(c.colors(), &[0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 0]);

        let p = BlockPattern::from_ratios(&[(0, 1, 1), (1, 7, 3), (0, 1, 3)], 2).unwrap();
        let c = realize(&p, 11).unwrap();
        assert_eq!(c.colors(), &[0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 0]);

        assert!(matches!(
            realize(&p, 2),
            Err(Error::RealizeTooShort { n: 2, blocks: 3 })
        ));
    }

    #[test]
    fn integerized_is_primitive() {
        let p = BlockPattern::from_ratios(&[(0, 2, 1), (1, 14, 3), (0, 2, 3)], 2).unwrap();
        let q = p.integerized();
        let lens: Vec<_> = q.blocks().iter().map(|(_, l)| l.clone()).collect();
        assert_eq!(lens, vec![ratio(3, 1), ratio(7, 1), ratio(1, 1)]);
        assert_eq!(
            mono_density(&p, 2).unwrap().coefficient,
            mono_density(&q, 2).unwrap().coefficient
        );
    }

    #[test]
    fn rejects_invalid_patterns() {
        assert!(matches!(
            BlockPattern::new(vec![], 2),
            Err(Error::EmptyPattern)
        ));
        assert!(matches!(
            BlockPattern::from_ratios(&[(0, 0, 1)], 1),
            Err(Error::NonPositiveLength { index: 0 })
        ));
        assert!(matches!(
            BlockPattern::from_ratios(&[(3, 1, 1)], 2),
            Err(Error::ColorOutOfRange { .. })
        ));
    }
}
