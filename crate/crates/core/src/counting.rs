//! Exact integer counting of monochromatic and non-monochromatic triples
//! {x, y, x+ay} over explicit colorings, plus the bichromatic pair
//! categories behind the divisibility bound and the pair-decomposition
//! identity.
//!
//! Conventions, fixed once for the whole crate:
//! - `a == 1` counts unordered solutions of x + y = z with x <= y
//!   (so the one-color total is floor(n^2/4)); x = y is allowed.
//! - `a >= 2` counts ordered pairs (x, y) with x + a*y = z
//!   (so the one-color total is ~ n^2/(2a)).
//!
//! In every solution z = x + a*y is strictly the largest element.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Exact triple counts for one coloring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TripleCounts {
    /// Solutions whose three elements share one color.
    pub mono: u64,
    /// Solutions colored with two colors.
    pub nonmono: u64,
    /// All solutions in [1, n].
    pub total: u64,
}

/// Bichromatic pair counts for the three categories a non-monochromatic
/// solution decomposes into, plus per-residue color tallies.
///
/// Each non-monochromatic solution (x, y, z) of a 2-coloring has exactly
/// two bichromatic pairs among {x,z}, {y,z}, {x,y}. The categories count
/// those pair slots over all of [1, n]^2:
/// - `divisible`: pairs u < v with a | (v - u) — the {x, z} slot of the
///   unique solution (u, (v-u)/a, v);
/// - `lower_cat`: pairs (p, q) with q - a*p >= 1 — the {y, z} slot of
///   (q - a*p, p, q);
/// - `upper_cat`: pairs (u, w) with u + a*w <= n — the {x, y} slot of
///   (u, w, u + a*w).
///
/// With these conventions `divisible + lower_cat + upper_cat` equals
/// twice the non-monochromatic count, exactly, for every coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairCategoryCounts {
    pub divisible: u64,
    pub lower_cat: u64,
    pub upper_cat: u64,
    /// residue_red[i] = red points at positions ≡ i+1 (mod a), i in 0..a.
    pub residue_red: Vec<u64>,
    /// residue_blue[i] = blue points at positions ≡ i+1 (mod a).
    pub residue_blue: Vec<u64>,
}

impl PairCategoryCounts {
    pub fn red_total(&self) -> u64 {
        self.residue_red.iter().sum()
    }

    pub fn blue_total(&self) -> u64 {
        self.residue_blue.iter().sum()
    }
}

fn check_a(a: u32) -> Result<()> {
    if a < 1 {
        return Err(Error::InvalidParameter("a must be at least 1".into()));
    }
    Ok(())
}

/// Counts monochromatic / non-monochromatic / all solutions of
/// x + a*y = z inside [1, n] for the given coloring.
pub fn count_triples(coloring: &Coloring, a: u32) -> Result<TripleCounts> {
    check_a(a)?;
    let n = coloring.n();
    let colors = coloring.colors();
    let mut mono = 0u64;
    let mut nonmono = 0u64;
    if a == 1 {
        for y in 1..n {
            let cy = colors[y - 1];
            let x_max = y.min(n - y);
            for x in 1..=x_max {
                let z = x + y;
                if colors[x - 1] == cy && colors[z - 1] == cy {
                    mono += 1;
                } else {
                    nonmono += 1;
                }
            }
        }
    } else {
        let a = a as usize;
        let mut y = 1usize;
        while a * y < n {
            let cy = colors[y - 1];
            for x in 1..=(n - a * y) {
                let z = x + a * y;
                if colors[x - 1] == cy && colors[z - 1] == cy {
                    mono += 1;
                } else {
                    nonmono += 1;
                }
            }
            y += 1;
        }
    }
    Ok(TripleCounts {
        mono,
        nonmono,
        total: mono + nonmono,
    })
}

/// Counts the three bichromatic pair categories and the per-residue
/// red/blue tallies for a 2-coloring, a >= 2.
pub fn count_pair_categories(coloring: &Coloring, a: u32) -> Result<PairCategoryCounts> {
    if coloring.num_colors() != 2 {
        return Err(Error::TwoColorsRequired {
            got: coloring.num_colors(),
        });
    }
    if a < 2 {
        return Err(Error::InvalidParameter(
            "pair categories require a >= 2".into(),
        ));
    }
    let n = coloring.n();
    let colors = coloring.colors();
    let a = a as usize;

    let mut residue_red = vec![0u64; a];
    let mut residue_blue = vec![0u64; a];
    for m in 1..=n {
        let class = (m - 1) % a;
        if colors[m - 1] == 0 {
            residue_red[class] += 1;
        } else {
            residue_blue[class] += 1;
        }
    }

    let mut divisible = 0u64;
    let mut d = a;
    while d < n {
        for u in 1..=(n - d) {
            if colors[u - 1] != colors[u + d - 1] {
                divisible += 1;
            }
        }
        d += a;
    }

    let mut lower_cat = 0u64;
    let mut p = 1usize;
    while a * p < n {
        let cp = colors[p - 1];
        for q in (a * p + 1)..=n {
            if colors[q - 1] != cp {
                lower_cat += 1;
            }
        }
        p += 1;
    }

    let mut upper_cat = 0u64;
    let mut w = 1usize;
    while a * w < n {
        let cw = colors[w - 1];
        for u in 1..=(n - a * w) {
            if colors[u - 1] != cw {
                upper_cat += 1;
            }
        }
        w += 1;
    }

    Ok(PairCategoryCounts {
        divisible,
        lower_cat,
        upper_cat,
        residue_red,
        residue_blue,
    })
}

/// Exact slack `|R||B|/a - divisible` of the divisibility bound.
///
/// For `a | n` the slack is always >= 0 with equality iff all residue
/// classes hold the same number of red points. For `a` not dividing `n`
/// the residue classes have unequal sizes and the slack can dip slightly
/// below zero; it is always > -(n + a)/4 (see [`residue_slack_floor`]).
pub fn residue_bound_slack(coloring: &Coloring, a: u32) -> Result<Rational> {
    let cats = count_pair_categories(coloring, a)?;
    let red = cats.red_total();
    let blue = cats.blue_total();
    let product = BigInt::from(red) * BigInt::from(blue);
    Ok(Rational::new(product, BigInt::from(a)) - Rational::from_integer(cats.divisible.into()))
}

/// Lower bound on [`residue_bound_slack`] valid for every 2-coloring:
/// -(n + a)/4. Derivation: with class sizes s_i = n/a + d_i, |d_i| < 1,
/// slack >= -sum r_i d_i >= -(max class size) * (sum of positive d_i)
/// >= -(n/a + 1) * a/4.
pub fn residue_slack_floor(n: usize, a: u32) -> Rational {
    -Rational::new(BigInt::from(n as u64 + a as u64), BigInt::from(4))
}

/// Precomputed solution lists for incremental recounting: for each
/// position p, every solution containing p, stored as the other two
/// elements (repeats of p included so flips substitute correctly).
#[derive(Debug, Clone)]
pub struct TripleIndex {
    n: usize,
    a: u32,
    through: Vec<Vec<(u32, u32)>>,
}

impl TripleIndex {
    pub fn new(n: usize, a: u32) -> Result<Self> {
        check_a(a)?;
        if n == 0 {
            return Err(Error::EmptyColoring);
        }
        let mut through: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n];
        let mut push = |p: usize, o1: usize, o2: usize| {
            through[p - 1].push((o1 as u32, o2 as u32));
        };
        if a == 1 {
            for y in 1..n {
                for x in 1..=y.min(n - y) {
                    let z = x + y;
                    if x == y {
                        push(x, x, z);
                        push(z, x, x);
                    } else {
                        push(x, y, z);
                        push(y, x, z);
                        push(z, x, y);
                    }
                }
            }
        } else {
            let a = a as usize;
            let mut y = 1usize;
            while a * y < n {
                for x in 1..=(n - a * y) {
                    let z = x + a * y;
                    if x == y {
                        push(x, x, z);
                        push(z, x, x);
                    } else {
                        push(x, y, z);
                        push(y, x, z);
                        push(z, x, y);
                    }
                }
                y += 1;
            }
        }
        Ok(Self { n, a, through })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    /// Solutions containing position p (1-based), as their other elements.
    pub fn through(&self, p: usize) -> &[(u32, u32)] {
        &self.through[p - 1]
    }

    /// Total work of one flip at p, used by budget estimates.
    pub fn degree(&self, p: usize) -> usize {
        self.through[p - 1].len()
    }
}

/// Incremental monochromatic counter over single-point recolorings.
/// One flip costs O(n/a + max(0, n - a*p)) instead of a full recount.
#[derive(Debug, Clone)]
pub struct FlipCounter<'a> {
    index: &'a TripleIndex,
    colors: Vec<u8>,
    mono: u64,
}

impl<'a> FlipCounter<'a> {
    pub fn new(index: &'a TripleIndex, coloring: &Coloring, a: u32) -> Result<Self> {
        if coloring.n() != index.n() || a != index.a() {
            return Err(Error::InvalidParameter(
                "triple index does not match coloring dimensions".into(),
            ));
        }
        let counts = count_triples(coloring, a)?;
        Ok(Self {
            index,
            colors: coloring.colors().to_vec(),
            mono: counts.mono,
        })
    }

    pub fn mono(&self) -> u64 {
        self.mono
    }

    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    pub fn color(&self, p: usize) -> u8 {
        self.colors[p - 1]
    }

    /// Monochromatic count change if position p were recolored to `new`,
    /// without applying the move.
    pub fn peek_delta(&self, p: usize, new: u8) -> i64 {
        let old = self.colors[p - 1];
        if old == new {
            return 0;
        }
        let mut delta = 0i64;
        for &(o1, o2) in self.index.through(p) {
            let c1_old = self.effective(o1 as usize, p, old);
            let c2_old = self.effective(o2 as usize, p, old);
            let c1_new = self.effective(o1 as usize, p, new);
            let c2_new = self.effective(o2 as usize, p, new);
            delta += i64::from(c1_new == new && c2_new == new);
            delta -= i64::from(c1_old == old && c2_old == old);
        }
        delta
    }

    /// Recolors position p and returns the mono-count change.
    pub fn flip(&mut self, p: usize, new: u8) -> i64 {
        let delta = self.peek_delta(p, new);
        self.colors[p - 1] = new;
        self.mono = (self.mono as i64 + delta) as u64;
        delta
    }

    #[inline]
    fn effective(&self, o: usize, p: usize, cand: u8) -> u8 {
        if o == p {
            cand
        } else {
            self.colors[o - 1]
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::String;

    fn coloring_of(s: &str) -> Coloring {
        let colors: Vec<u8> = s
            .bytes()
            .map(|b| match b {
                b'R' => 0,
                b'B' => 1,
                d => d - b'0',
            })
            .collect();
        let r = colors.iter().copied().max().unwrap() + 1;
        Coloring::new(colors, r.max(2)).unwrap()
    }

    #[test]
    fn all_red_interval_a2() {
        let c = Coloring::uniform(10, 0, 2).unwrap();
        let t = count_triples(&c, 2).unwrap();
        assert_eq!((t.mono, t.nonmono, t.total), (20, 0, 20));
    }

    #[test]
    fn no_solutions_fit_below_a_plus_one() {
        for a in 1..=6u32 {
            let c = Coloring::uniform(a as usize, 0, 2).unwrap();
            assert_eq!(count_triples(&c, a).unwrap().total, 0);
        }
    }

    #[test]
    fn rrbbr_has_one_mono_solution() {
        let c = coloring_of("RRBBR");
        let t = count_triples(&c, 2).unwrap();
        assert_eq!(t.total, 4);
        assert_eq!(t.mono, 1);
        assert_eq!(t.nonmono, 3);
    }

    #[test]
    fn rrbbr_pair_identity() {
        let c = coloring_of("RRBBR");
        let cats = count_pair_categories(&c, 2).unwrap();
        assert_eq!(cats.divisible, 3);
        assert_eq!(cats.lower_cat, 2);
        assert_eq!(cats.upper_cat, 1);
        let t = count_triples(&c, 2).unwrap();
        assert_eq!(
            cats.divisible + cats.lower_cat + cats.upper_cat,
            2 * t.nonmono
        );
    }

    #[test]
    fn monochromatic_coloring_has_empty_categories() {
        let c = Coloring::uniform(9, 0, 2).unwrap();
        let cats = count_pair_categories(&c, 3).unwrap();
        assert_eq!((cats.divisible, cats.lower_cat, cats.upper_cat), (0, 0, 0));
        assert_eq!(cats.red_total(), 9);
        assert_eq!(cats.blue_total(), 0);
    }

    #[test]
    fn alternating_coloring_has_no_divisible_pairs_mod_2() {
        let colors: Vec<u8> = (0..12).map(|i| (i % 2) as u8).collect();
        let c = Coloring::new(colors, 2).unwrap();
        let cats = count_pair_categories(&c, 2).unwrap();
        assert_eq!(cats.divisible, 0);
    }

    #[test]
    fn slack_examples() {
        let all_red = Coloring::uniform(8, 0, 2).unwrap();
        assert_eq!(
            residue_bound_slack(&all_red, 2).unwrap(),
            Rational::from_integer(0.into())
        );

        // First a integers red, last a blue: r_i all equal, slack = 0.
        for a in 2..=4u32 {
            let n = 2 * a as usize;
            let mut colors = vec![0u8; n];
            for c in colors.iter_mut().skip(a as usize) {
                *c = 1;
            }
            let c = Coloring::new(colors, 2).unwrap();
            let slack = residue_bound_slack(&c, a).unwrap();
            assert_eq!(slack, Rational::from_integer(0.into()), "a = {a}");
        }

        // Red on even positions, blue on odd: no bichromatic pair at even
        // distance, so slack is the full |R||B|/2 = 18.
        let colors: Vec<u8> = (1..=12).map(|m| (m % 2) as u8).collect();
        let c = Coloring::new(colors, 2).unwrap();
        assert_eq!(
            residue_bound_slack(&c, 2).unwrap(),
            Rational::from_integer(18.into())
        );
    }

    #[test]
    fn rejects_bad_parameters() {
        let c = coloring_of("RRBBR");
        assert!(count_triples(&c, 0).is_err());
        assert!(count_pair_categories(&c, 1).is_err());
        let three = Coloring::new(vec![0, 1, 2], 3).unwrap();
        assert!(matches!(
            count_pair_categories(&three, 2),
            Err(Error::TwoColorsRequired { got: 3 })
        ));
        assert!(residue_bound_slack(&three, 2).is_err());
    }

    #[test]
    fn flip_counter_matches_recount() {
        let s: String = "RRBBRBRRBBRB".into();
        let c = coloring_of(&s);
        for a in [1u32, 2, 3] {
            let index = TripleIndex::new(c.n(), a).unwrap();
            let mut fc = FlipCounter::new(&index, &c, a).unwrap();
            let mut cur = c.clone();
            for (p, new) in [(1, 1u8), (5, 1), (5, 0), (12, 0), (3, 0), (1, 0)] {
                fc.flip(p, new);
                let mut colors = cur.colors().to_vec();
                colors[p - 1] = new;
                cur = Coloring::new(colors, 2).unwrap();
                assert_eq!(
                    fc.mono(),
                    count_triples(&cur, a).unwrap().mono,
                    "a={a} p={p}"
                );
            }
        }
    }
}
