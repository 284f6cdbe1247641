//! The greedy calculus: repeatedly append an interval of symbolic length
//! t in the best color, choosing t by exact minimization of the density
//! `A(t) / (S + t)^2`, where `A` is the count coefficient of the extended
//! pattern.
//!
//! `A` is piecewise quadratic in t. Every same-color block triple of the
//! extended pattern contributes the area of a convex region cut out by
//! half-planes whose offsets are affine in t; the region's vertices are
//! intersections of constraint lines with constant normals, hence affine
//! in t as well. Breakpoints are enumerated exactly (every t where a
//! vertex crosses another constraint, or two parallel constraint lines
//! coincide), the quadratic on each piece comes straight from the
//! shoelace formula on affine vertices, and every piece is checked
//! against the exact area oracle at its midpoint.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::density::{count_coeff_abs_per_color, mono_density, triple_region_area, BlockPattern};
use crate::error::{Error, Result};
use crate::pwq::{from_pieces_unchecked, minimize_ratio, PiecewiseQuadratic, QuadraticPiece};
use crate::rational::Rational;

/// Affine function of the appended length t.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Aff {
    c0: Rational,
    c1: Rational,
}

impl Aff {
    fn constant(v: Rational) -> Self {
        Aff {
            c0: v,
            c1: Rational::zero(),
        }
    }

    fn eval(&self, t: &Rational) -> Rational {
        &self.c0 + &self.c1 * t
    }

    fn add(&self, o: &Aff) -> Aff {
        Aff {
            c0: &self.c0 + &o.c0,
            c1: &self.c1 + &o.c1,
        }
    }

    fn sub(&self, o: &Aff) -> Aff {
        Aff {
            c0: &self.c0 - &o.c0,
            c1: &self.c1 - &o.c1,
        }
    }

    fn scale(&self, k: &Rational) -> Aff {
        Aff {
            c0: &self.c0 * k,
            c1: &self.c1 * k,
        }
    }

    fn neg(&self) -> Aff {
        Aff {
            c0: -self.c0.clone(),
            c1: -self.c1.clone(),
        }
    }

    /// Is `self(t) <= 0` for every t >= 0?
    fn nonpositive_on_ray(&self) -> bool {
        !self.c0.is_positive() && !self.c1.is_positive()
    }
}

/// Quadratic in t with exact coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Quad {
    c2: Rational,
    c1: Rational,
    c0: Rational,
}

impl Quad {
    fn zero() -> Self {
        Quad {
            c2: Rational::zero(),
            c1: Rational::zero(),
            c0: Rational::zero(),
        }
    }

    fn eval(&self, t: &Rational) -> Rational {
        (&self.c2 * t + &self.c1) * t + &self.c0
    }

    fn add_assign(&mut self, o: &Quad) {
        self.c2 += &o.c2;
        self.c1 += &o.c1;
        self.c0 += &o.c0;
    }

    fn sub(&self, o: &Quad) -> Quad {
        Quad {
            c2: &self.c2 - &o.c2,
            c1: &self.c1 - &o.c1,
            c0: &self.c0 - &o.c0,
        }
    }

    fn neg_assign(&mut self) {
        self.c2 = -self.c2.clone();
        self.c1 = -self.c1.clone();
        self.c0 = -self.c0.clone();
    }

    fn scale(&self, k: &Rational) -> Quad {
        Quad {
            c2: &self.c2 * k,
            c1: &self.c1 * k,
            c0: &self.c0 * k,
        }
    }
}

/// Product of two affine functions.
fn aff_mul(a: &Aff, b: &Aff) -> Quad {
    Quad {
        c2: &a.c1 * &b.c1,
        c1: &a.c0 * &b.c1 + &a.c1 * &b.c0,
        c0: &a.c0 * &b.c0,
    }
}

/// Half-plane nx*x + ny*y <= rhs(t), with constant normal.
#[derive(Debug, Clone)]
struct HalfPlane {
    nx: Rational,
    ny: Rational,
    rhs: Aff,
}

/// One same-color block triple's area as a function of t: a list of
/// contiguous pieces starting at 0, the last unbounded.
type TriplePieces = Vec<(Rational, Option<Rational>, Quad)>;

fn zero_pieces() -> TriplePieces {
    vec![(Rational::zero(), None, Quad::zero())]
}

/// Interval bound pair, affine in t. Old blocks are constants, the
/// appended block is [S, S + t].
#[derive(Debug, Clone)]
struct Interval {
    lo: Aff,
    hi: Aff,
}

/// Area of {x in X, y in Y, x + a*y in K [, x <= y]} as exact piecewise
/// quadratic in t.
fn triple_pieces(
    x: &Interval,
    y: &Interval,
    band: &Interval,
    a: u32,
    diagonal: bool,
) -> Result<TriplePieces> {
    let a_rat = Rational::from_integer(a.into());
    let one = Rational::one();

    // Emptiness for every t >= 0: band unreachable from the box, or the
    // diagonal cut infeasible. Equality means zero area, also skippable.
    let box_max = x.hi.add(&y.hi.scale(&a_rat));
    if band.lo.sub(&box_max).neg().nonpositive_on_ray() {
        return Ok(zero_pieces());
    }
    let box_min = x.lo.add(&y.lo.scale(&a_rat));
    if band.hi.sub(&box_min).nonpositive_on_ray() {
        return Ok(zero_pieces());
    }
    if diagonal && y.hi.sub(&x.lo).nonpositive_on_ray() {
        return Ok(zero_pieces());
    }

    let mut cons: Vec<HalfPlane> = vec![
        HalfPlane {
            nx: -one.clone(),
            ny: Rational::zero(),
            rhs: x.lo.neg(),
        },
        HalfPlane {
            nx: one.clone(),
            ny: Rational::zero(),
            rhs: x.hi.clone(),
        },
        HalfPlane {
            nx: Rational::zero(),
            ny: -one.clone(),
            rhs: y.lo.neg(),
        },
        HalfPlane {
            nx: Rational::zero(),
            ny: one.clone(),
            rhs: y.hi.clone(),
        },
        HalfPlane {
            nx: -one.clone(),
            ny: -a_rat.clone(),
            rhs: band.lo.neg(),
        },
        HalfPlane {
            nx: one.clone(),
            ny: a_rat.clone(),
            rhs: band.hi.clone(),
        },
    ];
    if diagonal {
        cons.push(HalfPlane {
            nx: one.clone(),
            ny: -one.clone(),
            rhs: Aff::constant(Rational::zero()),
        });
    }

    // Pairwise line intersections; vertices are affine in t because the
    // normals are constant.
    let mut vertices: Vec<(Aff, Aff)> = Vec::new();
    let mut roots: Vec<Rational> = Vec::new();
    for i in 0..cons.len() {
        for j in (i + 1)..cons.len() {
            let (hi, hj) = (&cons[i], &cons[j]);
            let det = &hi.nx * &hj.ny - &hj.nx * &hi.ny;
            if det.is_zero() {
                // Parallel lines; they coincide at roots of the scaled
                // offset difference, which can change the area's shape.
                let lambda = if !hi.nx.is_zero() {
                    &hj.nx / &hi.nx
                } else {
                    &hj.ny / &hi.ny
                };
                let diff = hj.rhs.sub(&hi.rhs.scale(&lambda));
                if !diff.c1.is_zero() {
                    let root = -&diff.c0 / &diff.c1;
                    if root.is_positive() {
                        roots.push(root);
                    }
                }
                continue;
            }
            let vx = hi.rhs.scale(&hj.ny).sub(&hj.rhs.scale(&hi.ny)).scale(&(Rational::one() / &det));
            let vy = hj.rhs.scale(&hi.nx).sub(&hi.rhs.scale(&hj.nx)).scale(&(Rational::one() / &det));
            vertices.push((vx, vy));
        }
    }

    // Breakpoint candidates: a vertex crossing any constraint line.
    for (vx, vy) in &vertices {
        for h in &cons {
            let s = h.rhs.sub(&vx.scale(&h.nx)).sub(&vy.scale(&h.ny));
            if !s.c1.is_zero() {
                let root = -&s.c0 / &s.c1;
                if root.is_positive() {
                    roots.push(root);
                }
            }
        }
    }
    roots.sort();
    roots.dedup();

    let mut pieces: TriplePieces = Vec::with_capacity(roots.len() + 1);
    let mut lo = Rational::zero();
    for idx in 0..=roots.len() {
        let hi = roots.get(idx).cloned();
        let sample = match &hi {
            Some(h) => (&lo + h) / Rational::from_integer(2.into()),
            None => &lo + Rational::one(),
        };
        let quad = piece_quad(&cons, &vertices, &sample)?;

        // Midpoint validation against the exact area oracle.
        let expect = triple_region_area(
            &x.lo.eval(&sample),
            &x.hi.eval(&sample),
            &y.lo.eval(&sample),
            &y.hi.eval(&sample),
            &band.lo.eval(&sample),
            &band.hi.eval(&sample),
            a,
            diagonal,
        );
        if quad.eval(&sample) != expect {
            return Err(Error::PieceValidation(alloc::format!(
                "triple area mismatch at t = {sample}"
            )));
        }

        match pieces.last_mut() {
            Some((_, last_hi, last_quad)) if *last_quad == quad => *last_hi = hi.clone(),
            _ => pieces.push((lo.clone(), hi.clone(), quad)),
        }
        if let Some(h) = hi {
            lo = h;
        }
    }
    Ok(pieces)
}

/// The quadratic on one structurally-stable piece, via feasible-vertex
/// enumeration and the shoelace formula on affine coordinates.
fn piece_quad(cons: &[HalfPlane], vertices: &[(Aff, Aff)], sample: &Rational) -> Result<Quad> {
    let mut feasible: Vec<(Aff, Aff)> = Vec::new();
    'vertex: for (vx, vy) in vertices {
        let px = vx.eval(sample);
        let py = vy.eval(sample);
        for h in cons {
            if &h.nx * &px + &h.ny * &py > h.rhs.eval(sample) {
                continue 'vertex;
            }
        }
        if !feasible.iter().any(|(fx, fy)| fx == vx && fy == vy) {
            feasible.push((vx.clone(), vy.clone()));
        }
    }
    if feasible.len() < 3 {
        return Ok(Quad::zero());
    }

    // Order vertices around their centroid at the sample point.
    let points: Vec<(Rational, Rational)> = feasible
        .iter()
        .map(|(vx, vy)| (vx.eval(sample), vy.eval(sample)))
        .collect();
    let len_rat = Rational::from_integer((points.len() as u64).into());
    let cx = points.iter().map(|(x, _)| x).sum::<Rational>() / &len_rat;
    let cy = points.iter().map(|(_, y)| y).sum::<Rational>() / &len_rat;
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&p, &q| {
        let (px, py) = (&points[p].0 - &cx, &points[p].1 - &cy);
        let (qx, qy) = (&points[q].0 - &cx, &points[q].1 - &cy);
        let half = |x: &Rational, y: &Rational| -> u8 {
            u8::from(!(y.is_positive() || (y.is_zero() && !x.is_negative())))
        };
        half(&px, &py).cmp(&half(&qx, &qy)).then_with(|| {
            let cross = &px * &qy - &qx * &py;
            // CCW: positive cross means p comes first.
            Rational::zero().cmp(&cross)
        })
    });

    let mut twice = Quad::zero();
    for i in 0..order.len() {
        let (x1, y1) = &feasible[order[i]];
        let (x2, y2) = &feasible[order[(i + 1) % order.len()]];
        twice.add_assign(&aff_mul(x1, y2).sub(&aff_mul(x2, y1)));
    }
    let mut area = twice.scale(&Rational::new(1.into(), 2.into()));
    if area.eval(sample).is_negative() {
        area.neg_assign();
    }
    Ok(area)
}

/// Sum of per-triple piecewise quadratics plus a constant base, as a
/// tiled, validated piecewise quadratic.
fn sweep_sum(base: Rational, parts: Vec<TriplePieces>) -> Result<PiecewiseQuadratic> {
    let mut initial = Quad {
        c2: Rational::zero(),
        c1: Rational::zero(),
        c0: base,
    };
    let mut events: BTreeMap<Rational, Quad> = BTreeMap::new();
    for part in &parts {
        initial.add_assign(&part[0].2);
        for w in part.windows(2) {
            let (_, _, prev_quad) = &w[0];
            let (lo, _, quad) = &w[1];
            let delta = quad.sub(prev_quad);
            events
                .entry(lo.clone())
                .and_modify(|d| d.add_assign(&delta))
                .or_insert(delta);
        }
    }

    let mut pieces = Vec::with_capacity(events.len() + 1);
    let mut cur_lo = Rational::zero();
    let mut cur = initial;
    for (t, delta) in events {
        if t > cur_lo {
            pieces.push(QuadraticPiece {
                t_lo: cur_lo.clone(),
                t_hi: Some(t.clone()),
                c2: cur.c2.clone(),
                c1: cur.c1.clone(),
                c0: cur.c0.clone(),
            });
            cur_lo = t;
        }
        cur.add_assign(&delta);
    }
    pieces.push(QuadraticPiece {
        t_lo: cur_lo,
        t_hi: None,
        c2: cur.c2,
        c1: cur.c1,
        c0: cur.c0,
    });
    let pwq = from_pieces_unchecked(pieces).coalesced();
    pwq.validate()?;
    Ok(pwq)
}

fn same_color_intervals(pattern: &BlockPattern, color: u8) -> (Vec<Interval>, Rational) {
    let bounds = pattern.boundaries();
    let mut olds = Vec::new();
    for (idx, (c, _)) in pattern.blocks().iter().enumerate() {
        if *c == color {
            olds.push(Interval {
                lo: Aff::constant(bounds[idx].clone()),
                hi: Aff::constant(bounds[idx + 1].clone()),
            });
        }
    }
    (olds, bounds.last().expect("nonempty pattern").clone())
}

fn appended_pwq(
    pattern: &BlockPattern,
    color: u8,
    a: u32,
    base: Rational,
) -> Result<PiecewiseQuadratic> {
    let (olds, total) = same_color_intervals(pattern, color);
    let new_idx = olds.len();
    let mut intervals = olds;
    intervals.push(Interval {
        lo: Aff::constant(total.clone()),
        hi: Aff {
            c0: total,
            c1: Rational::one(),
        },
    });
    let diagonal = a == 1;
    let m = intervals.len();
    let mut parts = Vec::new();
    for xi in 0..m {
        for yi in 0..m {
            for ki in 0..m {
                if xi != new_idx && yi != new_idx && ki != new_idx {
                    continue;
                }
                parts.push(triple_pieces(
                    &intervals[xi],
                    &intervals[yi],
                    &intervals[ki],
                    a,
                    diagonal,
                )?);
            }
        }
    }
    sweep_sum(base, parts)
}

fn check_color(pattern: &BlockPattern, color: u8) -> Result<()> {
    if color >= pattern.num_colors() {
        return Err(Error::ColorOutOfRange {
            position: pattern.len(),
            color,
            num_colors: pattern.num_colors(),
        });
    }
    Ok(())
}

fn abs_coefficient(pattern: &BlockPattern, a: u32) -> Rational {
    let mut base = Rational::zero();
    for v in count_coeff_abs_per_color(pattern, a) {
        base += v;
    }
    base
}

/// The count coefficient `A(t)` of `pattern` extended by one block of
/// color `color` and length t, with the pattern's absolute lengths (the
/// resulting density is `A(t) / (S + t)^2`). Every output piece is
/// additionally validated at its midpoint against the exact coefficient
/// of the instantiated extended pattern.
pub fn appended_count(pattern: &BlockPattern, color: u8, a: u32) -> Result<PiecewiseQuadratic> {
    if a < 1 {
        return Err(Error::InvalidParameter("a must be at least 1".into()));
    }
    check_color(pattern, color)?;
    let base = abs_coefficient(pattern, a);
    let pwq = appended_pwq(pattern, color, a, base)?;
    for piece in pwq.pieces() {
        let sample = match &piece.t_hi {
            Some(hi) => (&piece.t_lo + hi) / Rational::from_integer(2.into()),
            None => &piece.t_lo + Rational::one(),
        };
        let mut extended = pattern.clone();
        extended.append(color, sample.clone())?;
        let expect = abs_coefficient(&extended, a);
        if piece.eval(&sample) != expect {
            return Err(Error::PieceValidation(alloc::format!(
                "appended count mismatch at t = {sample}"
            )));
        }
    }
    Ok(pwq)
}

/// How the greedy run picks the color of the next block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelectionMode {
    /// Evaluate every color, take the strictly best density; ties break
    /// toward the lowest color index, then the smallest length.
    BestOfAll,
    /// Try colors in index order and accept the first one whose optimal
    /// appended length is strictly positive.
    FirstPositive,
}

/// Why the greedy run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// No color admits a strictly positive appended length that strictly
    /// lowers the density.
    Converged,
    /// The block cap was reached while an improving step still existed.
    BlockLimit,
}

/// One color trial within a greedy step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyStep {
    pub color: u8,
    /// Optimal appended length for this color, in the units of the
    /// pattern as it was at trial time; `None` when t = 0 is optimal.
    pub optimal_t: Option<Rational>,
    /// Density after appending `optimal_t` (the current density when
    /// `optimal_t` is `None`).
    pub density_after: Rational,
    pub accepted: bool,
}

/// Full record of a greedy run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyTrace {
    pub steps: Vec<GreedyStep>,
    pub final_pattern: BlockPattern,
    pub final_density: Rational,
    pub termination: Termination,
}

impl GreedyTrace {
    /// The accepted trials, in order.
    pub fn accepted_steps(&self) -> impl Iterator<Item = &GreedyStep> {
        self.steps.iter().filter(|s| s.accepted)
    }
}

/// Greedy minimization with the default best-of-all-colors selection.
pub fn greedy_optimize(a: u32, num_colors: u8, max_blocks: usize) -> Result<GreedyTrace> {
    greedy_optimize_with(a, num_colors, max_blocks, SelectionMode::BestOfAll)
}

/// Greedy minimization starting from a single block of color 0 and
/// length 1. Each step appends the chosen color's optimal-length block,
/// accepting only strict density improvements; the pattern is rescaled
/// to primitive integer lengths after every step (density-level results
/// are scaling invariant, and integer lengths keep the exact arithmetic
/// small).
pub fn greedy_optimize_with(
    a: u32,
    num_colors: u8,
    max_blocks: usize,
    mode: SelectionMode,
) -> Result<GreedyTrace> {
    if a < 1 {
        return Err(Error::InvalidParameter("a must be at least 1".into()));
    }
    if num_colors < 1 {
        return Err(Error::InvalidParameter(
            "number of colors must be at least 1".into(),
        ));
    }
    if max_blocks < 1 {
        return Err(Error::InvalidParameter(
            "max_blocks must be at least 1".into(),
        ));
    }

    let mut pattern = BlockPattern::new(vec![(0u8, Rational::one())], num_colors)?;
    let mut base = abs_coefficient(&pattern, a);
    let mut total = Rational::one();
    let mut steps: Vec<GreedyStep> = Vec::new();

    let termination = loop {
        let cur_density = &base / (&total * &total);
        let at_cap = pattern.len() >= max_blocks;

        let mut round: Vec<GreedyStep> = Vec::new();
        let mut chosen: Option<(usize, Rational, Rational, PiecewiseQuadratic)> = None;
        for color in 0..num_colors {
            let pwq = appended_pwq(&pattern, color, a, base.clone())?;
            let (t_opt, value) = minimize_ratio(&pwq, &total)?;
            let improving = t_opt.is_some() && value < cur_density;
            round.push(GreedyStep {
                color,
                optimal_t: t_opt.clone(),
                density_after: value.clone(),
                accepted: false,
            });
            if improving {
                let t_star = t_opt.expect("improving implies Some");
                let better = match (&chosen, mode) {
                    (None, _) => true,
                    (Some((_, _, best_val, _)), SelectionMode::BestOfAll) => &value < best_val,
                    (Some(_), SelectionMode::FirstPositive) => false,
                };
                if better {
                    chosen = Some((round.len() - 1, t_star, value, pwq));
                }
                if mode == SelectionMode::FirstPositive {
                    break;
                }
            }
        }

        match chosen {
            None => {
                steps.extend(round);
                break Termination::Converged;
            }
            Some(_) if at_cap => {
                steps.extend(round);
                break Termination::BlockLimit;
            }
            Some((idx, t_star, _, pwq)) => {
                round[idx].accepted = true;
                let color = round[idx].color;
                steps.extend(round);
                let appended_value = pwq.eval(&t_star);
                pattern.append(color, t_star.clone())?;
                let grown_total = &total + &t_star;

                // Rescale to primitive integer lengths; the absolute
                // coefficient scales with the square of the factor.
                pattern = pattern.integerized();
                let new_total = pattern.total();
                let factor = &new_total / &grown_total;
                base = appended_value * (&factor * &factor);
                total = new_total;
            }
        }
    };

    let final_density = &base / (&total * &total);
    // Cross-check the incrementally tracked density against a fresh
    // computation before reporting.
    let report = mono_density(&pattern, a)?;
    if report.coefficient != final_density {
        return Err(Error::PieceValidation(
            "greedy density drifted from the density oracle".into(),
        ));
    }

    Ok(GreedyTrace {
        steps,
        final_pattern: pattern,
        final_density,
        termination,
    })
}
