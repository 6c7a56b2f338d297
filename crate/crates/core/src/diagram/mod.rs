//! Affine diagrams in normal form.
//!
//! A diagram with `t ≥ 1` through-strands is determined by its top and bottom
//! annular involutions and its winding number. A diagram without
//! through-strands is determined by the two involutions, the face of each
//! boundary circle that faces the other circle, and its number of
//! non-contractible loops. The face is recorded as a gap index: the smallest
//! `g` in `0..n` such that no arc passes between positions `g` and `g + 1`.

mod cover;

use std::cmp::{Ordering, Reverse};
use std::fmt;

use crate::annular::AnnularInvolution;
use crate::error::{Error, Result};

pub use cover::{CoverMatching, Node, Row};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    Strands {
        w: i64,
    },
    Loops {
        top_gap: usize,
        bot_gap: usize,
        k: u32,
    },
}

/// A basis diagram in normal form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Diagram {
    top: AnnularInvolution,
    bot: AnnularInvolution,
    shape: Shape,
}

impl Diagram {
    /// `[top, bot, w]`; both involutions must have the same positive number of fixed points.
    pub fn strands(top: AnnularInvolution, bot: AnnularInvolution, w: i64) -> Result<Self> {
        if top.n() != bot.n() {
            return Err(Error::RankMismatch(top.n(), bot.n()));
        }
        if top.num_fixed() != bot.num_fixed() {
            return Err(Error::invalid(format!(
                "top has {} fixed points, bottom has {}",
                top.num_fixed(),
                bot.num_fixed()
            )));
        }
        if top.num_fixed() == 0 {
            return Err(Error::invalid(
                "a strands diagram needs at least one through-strand",
            ));
        }
        Ok(Diagram {
            top,
            bot,
            shape: Shape::Strands { w },
        })
    }

    /// A diagram without through-strands; each gap must be the canonical face index.
    pub fn loops(
        top: AnnularInvolution,
        bot: AnnularInvolution,
        k: u32,
        top_gap: usize,
        bot_gap: usize,
    ) -> Result<Self> {
        if top.n() != bot.n() {
            return Err(Error::RankMismatch(top.n(), bot.n()));
        }
        if top.num_fixed() != 0 || bot.num_fixed() != 0 {
            return Err(Error::invalid("a loops diagram has no fixed points"));
        }
        for (s, g) in [(&top, top_gap), (&bot, bot_gap)] {
            if g >= s.n() {
                return Err(Error::IndexOutOfRange {
                    index: g as i64,
                    lo: 0,
                    hi: s.n() as i64 - 1,
                });
            }
            if canonical_gap(s, g) != Some(g) {
                return Err(Error::invalid(format!(
                    "gap {g} is not a canonical face of {s}"
                )));
            }
        }
        Ok(Diagram {
            top,
            bot,
            shape: Shape::Loops {
                top_gap,
                bot_gap,
                k,
            },
        })
    }

    pub fn identity(n: usize) -> Self {
        Self::u_pow(n, 0)
    }

    /// `u^m`: every strand moves `m` places to the right.
    pub fn u_pow(n: usize, m: i64) -> Self {
        Diagram {
            top: AnnularInvolution::identity(n),
            bot: AnnularInvolution::identity(n),
            shape: Shape::Strands { w: m },
        }
    }

    /// The generator `E_i`, `1 ≤ i ≤ n`, joining `i` to `i + 1` (cyclically) on both circles.
    pub fn e(n: usize, i: usize) -> Result<Self> {
        if n < 3 || i == 0 || i > n {
            return Err(Error::IndexOutOfRange {
                index: i as i64,
                lo: 1,
                hi: n as i64,
            });
        }
        let pair = if i == n { (1, n) } else { (i, i + 1) };
        let s = AnnularInvolution::from_pairs(n, &[pair])?;
        Self::strands(s.clone(), s, 0)
    }

    pub fn n(&self) -> usize {
        self.top.n()
    }

    pub fn top(&self) -> &AnnularInvolution {
        &self.top
    }

    pub fn bot(&self) -> &AnnularInvolution {
        &self.bot
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn strand_count(&self) -> usize {
        self.top.num_fixed()
    }

    pub fn winding(&self) -> Result<i64> {
        match self.shape {
            Shape::Strands { w } => Ok(w),
            Shape::Loops { .. } => Err(Error::WindingUndefined),
        }
    }

    /// Same involutions with the winding number replaced.
    pub fn with_winding(&self, w: i64) -> Result<Self> {
        match self.shape {
            Shape::Strands { .. } => Ok(Diagram {
                shape: Shape::Strands { w },
                ..self.clone()
            }),
            Shape::Loops { .. } => Err(Error::WindingUndefined),
        }
    }

    /// Lifts to the universal cover.
    pub fn realize(&self) -> CoverMatching {
        let n = self.n();
        let ni = n as i64;
        let mut top = vec![(Row::Top, 0); n];
        let mut bottom = vec![(Row::Top, 0); n];
        let gaps = match self.shape {
            Shape::Strands { .. } => None,
            Shape::Loops {
                top_gap, bot_gap, ..
            } => Some((top_gap, bot_gap)),
        };
        for (row, s, slots) in [
            (Row::Top, &self.top, &mut top),
            (Row::Bottom, &self.bot, &mut bottom),
        ] {
            let gap = gaps.map(|(t, b)| if row == Row::Top { t } else { b });
            for (i, j) in s.pairs() {
                let (a, b) = arc_lift(s, i, j, gap);
                set_pair(slots, ni, (row, a), (row, b));
            }
        }
        if let Shape::Strands { w } = self.shape {
            let bfix = self.bot.fixed_points();
            let tfix = self.top.fixed_points();
            let t = bfix.len() as i64;
            let lift =
                |fix: &[usize], m: i64| fix[m.rem_euclid(t) as usize] as i64 + ni * m.div_euclid(t);
            // winding of the unshifted connection is zero; each unit of shift adds one
            for (m, &b) in bfix.iter().enumerate() {
                let a = lift(&tfix, m as i64 + w);
                bottom[b - 1] = (Row::Top, a);
                let k = cover::period(a, ni);
                top[(a - k * ni) as usize - 1] = (Row::Bottom, b as i64 - k * ni);
            }
        }
        let k = match self.shape {
            Shape::Loops { k, .. } => k,
            Shape::Strands { .. } => 0,
        };
        let cm = CoverMatching::new_unchecked(n, top, bottom, k);
        debug_assert_eq!(cm.winding().ok(), self.winding().ok());
        cm
    }

    /// Reads the normal form off a cover matching.
    pub fn normalize(cm: &CoverMatching) -> Result<Self> {
        let n = cm.n();
        let ni = n as i64;
        let read = |row: Row| -> Result<AnnularInvolution> {
            let map = (1..=ni)
                .map(|x| match cm.partner((row, x)) {
                    (r, y) if r == row => (y - 1).rem_euclid(ni) as usize + 1,
                    _ => x as usize,
                })
                .collect();
            AnnularInvolution::new(map)
                .map_err(|e| Error::internal(format!("induced involution: {e}")))
        };
        let top = read(Row::Top)?;
        let bot = read(Row::Bottom)?;
        let d = if cm.through_strands() > 0 {
            Diagram::strands(top, bot, cm.winding()?)?
        } else {
            let gap = |row| {
                cm.free_gaps(row)
                    .first()
                    .copied()
                    .ok_or_else(|| Error::internal("no free gap"))
            };
            let (tg, bg) = (gap(Row::Top)?, gap(Row::Bottom)?);
            Diagram {
                top,
                bot,
                shape: Shape::Loops {
                    top_gap: tg,
                    bot_gap: bg,
                    k: cm.loops(),
                },
            }
        };
        debug_assert!(
            d.realize() == *cm,
            "normal form does not realize its source"
        );
        Ok(d)
    }

    /// The hard bound on middle nodes visited per path when composing `self` above `other`.
    fn path_bound(&self, other: &Diagram) -> usize {
        let w = |d: &Diagram| d.winding().map_or(0, |w| w.unsigned_abs() as usize);
        let t = self.strand_count().max(other.strand_count());
        (w(self) + w(other) + 2 * t + 4) * self.n()
    }

    /// `self` stacked on top of `other`: `self · other = [2]^x · C`.
    pub fn compose(&self, other: &Diagram) -> Result<(u32, Diagram)> {
        if self.n() != other.n() {
            return Err(Error::RankMismatch(self.n(), other.n()));
        }
        let (x, cm) = self
            .realize()
            .compose(&other.realize(), self.path_bound(other))?;
        Ok((x, Diagram::normalize(&cm)?))
    }

    /// Crossing parity of the seam: `true` when odd.
    pub fn is_odd(&self) -> bool {
        match self.shape {
            Shape::Strands { w } => {
                (seam_arcs(&self.top) + seam_arcs(&self.bot) + w).rem_euclid(2) == 1
            }
            Shape::Loops { .. } => self.realize().is_odd(),
        }
    }

    /// `+1` on even diagrams (those in O_n), `-1` otherwise.
    pub fn epsilon_sign(&self) -> i64 {
        if self.is_odd() {
            -1
        } else {
            1
        }
    }

    /// The anti-involution: the cylinder turned upside down.
    pub fn star(&self) -> Diagram {
        let d = Diagram::normalize(&self.realize().rotate_upside_down())
            .expect("star of a valid diagram");
        debug_assert!(
            d.top == self.bot.star() && d.bot == self.top.star(),
            "star does not conjugate the involutions"
        );
        d
    }

    fn sort_key(
        &self,
    ) -> (
        Reverse<usize>,
        &AnnularInvolution,
        &AnnularInvolution,
        Shape,
    ) {
        (
            Reverse(self.strand_count()),
            &self.top,
            &self.bot,
            self.shape,
        )
    }
}

/// Number of arcs of `s` that cross the seam when lifted by the forced route.
pub(crate) fn seam_arcs(s: &AnnularInvolution) -> i64 {
    s.pairs()
        .iter()
        .filter(|&&(i, j)| s.arc_encloses_fixed(i, j))
        .count() as i64
}

/// The `w` in `0..=1` making `[top, bot, w]` even.
pub fn r_offset(top: &AnnularInvolution, bot: &AnnularInvolution) -> Result<i64> {
    if top.num_fixed() == 0 || bot.num_fixed() == 0 {
        return Err(Error::WindingUndefined);
    }
    Ok((seam_arcs(top) + seam_arcs(bot)).rem_euclid(2))
}

/// The lift of the arc `{i, j}`, `i < j`, as a pair of cover positions.
///
/// With fixed points present the route is forced: the arc runs over `[i, j]`
/// unless that interval holds the fixed points, in which case it runs the
/// other way round, from `j` to `i + n`. Without fixed points the arc stays
/// inside the window `[gap + 1, gap + n]`.
fn arc_lift(s: &AnnularInvolution, i: usize, j: usize, gap: Option<usize>) -> (i64, i64) {
    let n = s.n() as i64;
    let (i, j) = (i as i64, j as i64);
    match gap {
        None => {
            if s.arc_encloses_fixed(i as usize, j as usize) {
                (j, i + n)
            } else {
                (i, j)
            }
        }
        Some(g) => {
            let g = g as i64;
            let lift = |x: i64| if x > g { x } else { x + n };
            let (a, b) = (lift(i), lift(j));
            (a.min(b), a.max(b))
        }
    }
}

fn set_pair(slots: &mut [Node], n: i64, a: Node, b: Node) {
    let k = cover::period(a.1, n);
    slots[(a.1 - k * n) as usize - 1] = (b.0, b.1 - k * n);
    let k = cover::period(b.1, n);
    slots[(b.1 - k * n) as usize - 1] = (a.0, a.1 - k * n);
}

/// The canonical gap of the realization of `s` cut at `gap`, if that cut is planar.
fn canonical_gap(s: &AnnularInvolution, gap: usize) -> Option<usize> {
    let n = s.n();
    let ni = n as i64;
    let mut slots = vec![(Row::Top, 0); n];
    for (i, j) in s.pairs() {
        let (a, b) = arc_lift(s, i, j, Some(gap));
        set_pair(&mut slots, ni, (Row::Top, a), (Row::Top, b));
    }
    // pair the bottom row trivially so that only the top row is under test
    let bottom = (1..=ni)
        .map(|x| (Row::Bottom, if x % 2 == 1 { x + 1 } else { x - 1 }))
        .collect();
    let cm = CoverMatching::new(n, slots, bottom, 0).ok()?;
    cm.free_gaps(Row::Top).first().copied()
}

/// All faces of `s` (fixed-point free) as canonical gaps.
pub fn canonical_gaps(s: &AnnularInvolution) -> Vec<usize> {
    let mut gaps: Vec<usize> = (0..s.n()).filter_map(|g| canonical_gap(s, g)).collect();
    gaps.sort_unstable();
    gaps.dedup();
    gaps
}

impl PartialOrd for Diagram {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Descending strand count, then top and bottom involutions, then winding
/// (or gaps and loop count).
impl Ord for Diagram {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.shape {
            Shape::Strands { w } => write!(f, "[{}, {}, {w}]", self.top, self.bot),
            Shape::Loops {
                top_gap,
                bot_gap,
                k,
            } => {
                write!(
                    f,
                    "[{}@{top_gap}, {}@{bot_gap}; {k} loops]",
                    self.top, self.bot
                )
            }
        }
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
