//! Exact brute-force minimization over all r-colorings of [1, n], and a
//! seeded hill-climbing heuristic for larger n.
//!
//! The exhaustive search fixes color(1) = 0 (color-permutation symmetry)
//! and walks the remaining positions in reflected mixed-radix Gray-code
//! order, so each step recolors one point and the monochromatic count
//! updates incrementally in O(n/a + max(0, n - a p)) instead of a full
//! recount. Workers can enumerate disjoint prefix subcubes; reducing
//! their outcomes by (count, lexicographic witness) is order-independent,
//! which keeps multi-threaded drivers deterministic.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coloring::Coloring;
use crate::counting::{FlipCounter, TripleIndex};
use crate::error::{Error, Result};

/// Cap on exhaustive enumeration, measured in incremental Gray-code
/// steps (= colorings examined after the symmetry quotient).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget(pub u128);

impl Default for SearchBudget {
    /// 2^27 steps: 2-color searches up to n = 28.
    fn default() -> Self {
        SearchBudget(1 << 27)
    }
}

/// Estimated enumeration steps for an exhaustive run: r^(n-1) colorings
/// after fixing the first point's color.
pub fn estimated_steps(n: usize, r: u8) -> u128 {
    let mut steps: u128 = 1;
    for _ in 1..n {
        steps = steps.saturating_mul(r as u128);
    }
    steps
}

/// Outcome of a minimum search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub n: usize,
    pub a: u32,
    pub r: u8,
    pub min_count: u64,
    pub witness: Coloring,
    /// True when every coloring (up to color permutation) was examined.
    pub exhaustive: bool,
    /// Colorings examined (exhaustive) or candidate moves evaluated
    /// (local search).
    pub explored: u128,
}

/// Partial outcome of one enumeration subcube, ready for deterministic
/// reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubcubeOutcome {
    pub min_count: u64,
    pub witness: Vec<u8>,
    pub explored: u128,
}

impl SubcubeOutcome {
    /// Order-independent reduction: smaller count wins, ties go to the
    /// lexicographically smaller witness.
    pub fn merge(self, other: SubcubeOutcome) -> SubcubeOutcome {
        let explored = self.explored + other.explored;
        let mut best = if (other.min_count, &other.witness) < (self.min_count, &self.witness) {
            other
        } else {
            self
        };
        best.explored = explored;
        best
    }
}

fn check_params(n: usize, a: u32, r: u8) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptyColoring);
    }
    if a < 1 {
        return Err(Error::InvalidParameter("a must be at least 1".into()));
    }
    if r < 1 {
        return Err(Error::InvalidParameter(
            "number of colors must be at least 1".into(),
        ));
    }
    Ok(())
}

/// Exhaustively enumerates the colorings of [1, n] with color(1) = 0,
/// positions 2..=(1 + prefix.len()) fixed to `prefix`, and the remaining
/// positions free, tracking the minimum monochromatic count and its
/// lexicographically smallest witness.
///
/// Free positions are walked in reflected mixed-radix Gray order, mapped
/// so the most frequently flipped digit recolors the position with the
/// fewest incident solutions.
pub fn exact_min_subcube(
    index: &TripleIndex,
    r: u8,
    prefix: &[u8],
) -> Result<SubcubeOutcome> {
    let n = index.n();
    let fixed = 1 + prefix.len();
    if fixed > n {
        return Err(Error::InvalidParameter(
            "prefix longer than the free positions".into(),
        ));
    }
    if prefix.iter().any(|&c| c >= r) {
        return Err(Error::InvalidParameter("prefix color out of range".into()));
    }
    let mut colors = vec![0u8; n];
    colors[1..fixed].copy_from_slice(prefix);
    let coloring = Coloring::new(colors, r)?;
    let mut counter = FlipCounter::new(index, &coloring, index.a())?;

    let m = n - fixed;
    let mut best_count = counter.mono();
    let mut best_witness = counter.colors().to_vec();
    let mut explored: u128 = 1;

    if m == 0 || r == 1 {
        return Ok(SubcubeOutcome {
            min_count: best_count,
            witness: best_witness,
            explored,
        });
    }

    // Digit j recolors position n - j: high positions sit in the fewest
    // solutions and absorb the most frequent flips.
    let position = |j: usize| n - j;

    let mut digits = vec![0u8; m];
    let mut dirs = vec![1i8; m];
    let mut focus: Vec<usize> = (0..=m).collect();
    loop {
        let j = focus[0];
        focus[0] = 0;
        if j == m {
            break;
        }
        let next = (digits[j] as i8 + dirs[j]) as u8;
        digits[j] = next;
        counter.flip(position(j), next);
        if next == 0 || next == r - 1 {
            dirs[j] = -dirs[j];
            focus[j] = focus[j + 1];
            focus[j + 1] = j + 1;
        }
        explored += 1;

        let mono = counter.mono();
        if mono < best_count
            || (mono == best_count && counter.colors() < best_witness.as_slice())
        {
            best_count = mono;
            best_witness = counter.colors().to_vec();
        }
    }

    Ok(SubcubeOutcome {
        min_count: best_count,
        witness: best_witness,
        explored,
    })
}

/// Exact minimum over all r-colorings of [1, n], single-threaded.
/// The witness is the lexicographically smallest minimizer with
/// color(1) = 0.
pub fn exact_min(n: usize, a: u32, r: u8, budget: SearchBudget) -> Result<SearchResult> {
    check_params(n, a, r)?;
    let estimated = estimated_steps(n, r);
    if estimated > budget.0 {
        return Err(Error::BudgetExceeded {
            estimated_steps: estimated,
            budget: budget.0,
        });
    }
    let index = TripleIndex::new(n, a)?;
    let outcome = exact_min_subcube(&index, r, &[])?;
    Ok(SearchResult {
        n,
        a,
        r,
        min_count: outcome.min_count,
        witness: Coloring::new(outcome.witness, r)?,
        exhaustive: true,
        explored: outcome.explored,
    })
}

/// Exact minima for every n in 1..=n_max.
pub fn scan_minima(
    a: u32,
    r: u8,
    n_max: usize,
    budget: SearchBudget,
) -> Result<Vec<(usize, u64)>> {
    if n_max == 0 {
        return Err(Error::EmptyColoring);
    }
    let estimated = estimated_steps(n_max, r);
    if estimated > budget.0 {
        return Err(Error::BudgetExceeded {
            estimated_steps: estimated,
            budget: budget.0,
        });
    }
    let mut rows = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let result = exact_min(n, a, r, budget)?;
        rows.push((n, result.min_count));
    }
    Ok(rows)
}

/// Fixed seed-splitting rule for per-restart generators (SplitMix64 of
/// seed xor golden-ratio multiples of the restart index).
pub fn restart_seed(seed: u64, restart: u64) -> u64 {
    let mut z = seed ^ restart.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Hill climbing on single-point recolorings with seeded random
/// restarts. Restart 0 always starts from the all-color-0 coloring;
/// restarts 1..=restarts start from uniform random colorings. Moves are
/// first-improvement over a per-restart shuffled position order; equal
/// cost moves (plateau walk) are accepted up to 2n times per restart.
/// Deterministic for a fixed (seed, restarts).
pub fn local_search_min(
    n: usize,
    a: u32,
    r: u8,
    restarts: u32,
    seed: u64,
) -> Result<SearchResult> {
    check_params(n, a, r)?;
    let index = TripleIndex::new(n, a)?;
    let mut best: Option<(u64, Vec<u8>)> = None;
    let mut explored: u128 = 0;

    for run in 0..=restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(restart_seed(seed, run as u64));
        let colors: Vec<u8> = if run == 0 {
            vec![0u8; n]
        } else {
            (0..n).map(|_| rng.gen_range(0..r)).collect()
        };
        let coloring = Coloring::new(colors, r)?;
        let mut counter = FlipCounter::new(&index, &coloring, a)?;

        let mut order: Vec<usize> = (1..=n).collect();
        order.shuffle(&mut rng);

        descend(&mut counter, &order, r, 2 * n, &mut explored);

        let candidate = (counter.mono(), counter.colors().to_vec());
        best = Some(match best {
            None => candidate,
            Some(cur) => {
                if (candidate.0, &candidate.1) < (cur.0, &cur.1) {
                    candidate
                } else {
                    cur
                }
            }
        });
    }

    let (min_count, witness) = best.expect("at least one run");
    Ok(SearchResult {
        n,
        a,
        r,
        min_count,
        witness: Coloring::new(witness, r)?,
        exhaustive: false,
        explored,
    })
}

/// First-improvement descent with a bounded plateau walk. Scans
/// positions circularly in the given order; stops when a full pass
/// accepts no move.
fn descend(
    counter: &mut FlipCounter,
    order: &[usize],
    r: u8,
    plateau_limit: usize,
    explored: &mut u128,
) {
    let n = order.len();
    let mut plateau_used = 0usize;
    let mut since_accept = 0usize;
    let mut idx = 0usize;
    loop {
        let p = order[idx % n];
        idx += 1;
        let cur = counter.color(p);
        let mut accepted = false;
        for c in 0..r {
            if c == cur {
                continue;
            }
            *explored += 1;
            let delta = counter.peek_delta(p, c);
            if delta < 0 {
                counter.flip(p, c);
                accepted = true;
                break;
            }
            if delta == 0 && plateau_used < plateau_limit {
                counter.flip(p, c);
                plateau_used += 1;
                accepted = true;
                break;
            }
        }
        if accepted {
            since_accept = 0;
        } else {
            since_accept += 1;
            if since_accept >= n {
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::count_triples;

    #[test]
    fn budget_guard_reports_estimate() {
        let err = exact_min(10, 1, 2, SearchBudget(100)).unwrap_err();
        assert_eq!(
            err,
            Error::BudgetExceeded {
                estimated_steps: 512,
                budget: 100
            }
        );
    }

    #[test]
    fn single_solution_instance_is_avoidable() {
        // n=3, a=2: the only solution is (1,1,3); coloring 1 and 3
        // differently kills it.
        let result = exact_min(3, 2, 2, SearchBudget::default()).unwrap();
        assert_eq!(result.min_count, 0);
        assert!(result.exhaustive);
        assert_eq!(result.explored, 4);
    }

    #[test]
    fn witness_reproduces_min_count() {
        let result = exact_min(9, 1, 2, SearchBudget::default()).unwrap();
        let recount = count_triples(&result.witness, 1).unwrap();
        assert_eq!(recount.mono, result.min_count);
        assert_eq!(result.witness.color(1), 0);
    }

    #[test]
    fn local_search_descends_from_all_red() {
        let start = Coloring::uniform(5, 0, 2).unwrap();
        let initial = count_triples(&start, 2).unwrap().mono;
        let result = local_search_min(5, 2, 2, 0, 7).unwrap();
        assert!(result.min_count <= initial);
        assert!(!result.exhaustive);
    }

    #[test]
    fn local_search_is_reproducible() {
        let a = local_search_min(30, 1, 2, 5, 12345).unwrap();
        let b = local_search_min(30, 1, 2, 5, 12345).unwrap();
        assert_eq!(a, b);
        let c = local_search_min(30, 1, 2, 5, 54321).unwrap();
        assert_eq!(a.n, c.n); // different seed may find a different witness
    }

    #[test]
    fn subcube_merge_prefers_count_then_witness() {
        let x = SubcubeOutcome {
            min_count: 3,
            witness: vec![0, 1],
            explored: 10,
        };
        let y = SubcubeOutcome {
            min_count: 3,
            witness: vec![0, 0],
            explored: 5,
        };
        let merged = x.merge(y);
        assert_eq!(merged.min_count, 3);
        assert_eq!(merged.witness, vec![0, 0]);
        assert_eq!(merged.explored, 15);
    }
}
