//! Diagrams as n-periodic matchings on two copies of the integers.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Row {
    Bottom,
    Top,
}

impl Row {
    pub fn flip(self) -> Row {
        match self {
            Row::Bottom => Row::Top,
            Row::Top => Row::Bottom,
        }
    }
}

/// A node of the universal cover: a row and an integer position.
pub type Node = (Row, i64);

/// `floor((x - 1) / n)`: which period the position `x` lies in.
pub(crate) fn period(x: i64, n: i64) -> i64 {
    (x - 1).div_euclid(n)
}

/// Number of lines `x = i + 1/2 + kn` strictly between `a` and `b`.
pub(crate) fn crossings(a: i64, b: i64, line: i64, n: i64) -> i64 {
    ((b - 1 - line).div_euclid(n) - (a - 1 - line).div_euclid(n)).abs()
}

/// An affine diagram in the universal cover.
///
/// `top[i - 1]` and `bottom[i - 1]` are the partners of the nodes at position
/// `i` in `1..=n`; partners of other positions follow by translation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoverMatching {
    n: usize,
    top: Vec<Node>,
    bottom: Vec<Node>,
    loops: u32,
}

impl CoverMatching {
    /// Validates mutuality, planarity and the loop constraint.
    pub fn new(n: usize, top: Vec<Node>, bottom: Vec<Node>, loops: u32) -> Result<Self> {
        if top.len() != n || bottom.len() != n || n == 0 {
            return Err(Error::invalid("partner arrays must have length n"));
        }
        let cm = CoverMatching {
            n,
            top,
            bottom,
            loops,
        };
        cm.validate()?;
        Ok(cm)
    }

    pub(crate) fn new_unchecked(n: usize, top: Vec<Node>, bottom: Vec<Node>, loops: u32) -> Self {
        CoverMatching {
            n,
            top,
            bottom,
            loops,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn loops(&self) -> u32 {
        self.loops
    }

    fn ni(&self) -> i64 {
        self.n as i64
    }

    /// Partner of any cover node.
    pub fn partner(&self, (row, x): Node) -> Node {
        let n = self.ni();
        let k = period(x, n);
        let r = (x - k * n) as usize;
        let (prow, px) = match row {
            Row::Top => self.top[r - 1],
            Row::Bottom => self.bottom[r - 1],
        };
        (prow, px + k * n)
    }

    pub fn through_strands(&self) -> usize {
        self.bottom.iter().filter(|p| p.0 == Row::Top).count()
    }

    /// One representative per edge class: horizontal arcs as `(row, left, right)`
    /// with `left` in `1..=n`, and through-strands as `(bottom, top)` with bottom in `1..=n`.
    fn edges(&self) -> (Vec<(Row, i64, i64)>, Vec<(i64, i64)>) {
        let mut arcs = Vec::new();
        let mut strands = Vec::new();
        for row in [Row::Top, Row::Bottom] {
            for x in 1..=self.ni() {
                let (prow, y) = self.partner((row, x));
                if prow == row && y > x {
                    arcs.push((row, x, y));
                } else if row == Row::Bottom && prow == Row::Top {
                    strands.push((x, y));
                }
            }
        }
        (arcs, strands)
    }

    fn validate(&self) -> Result<()> {
        let n = self.ni();
        for row in [Row::Top, Row::Bottom] {
            for x in 1..=n {
                let p = self.partner((row, x));
                if p == (row, x) {
                    return Err(Error::invalid(format!("node {x} is matched to itself")));
                }
                if self.partner(p) != (row, x) {
                    return Err(Error::invalid(format!(
                        "partner relation is not mutual at {row:?} {x}"
                    )));
                }
            }
        }
        let (arcs, strands) = self.edges();
        if self.loops > 0 && !strands.is_empty() {
            return Err(Error::invalid(
                "non-contractible loops require zero through-strands",
            ));
        }
        let span = arcs
            .iter()
            .map(|a| a.2 - a.1)
            .chain(strands.iter().map(|s| (s.1 - s.0).abs()))
            .max()
            .unwrap_or(0);
        let reach = span / n + 2;
        let bad = || Error::invalid("edges cross");
        for &(row, a, b) in &arcs {
            for k in -reach..=reach {
                let shift = k * n;
                for &(row2, c, d) in &arcs {
                    let (c, d) = (c + shift, d + shift);
                    if row == row2 && a < c && c < b && b < d {
                        return Err(bad());
                    }
                }
                for &(p, q) in &strands {
                    let end = if row == Row::Top { q } else { p } + shift;
                    if a < end && end < b {
                        return Err(bad());
                    }
                }
            }
        }
        for &(p1, q1) in &strands {
            for k in -reach..=reach {
                for &(p2, q2) in &strands {
                    let (p2, q2) = (p2 + k * n, q2 + k * n);
                    if (p1 - p2).signum() * (q1 - q2).signum() < 0 {
                        return Err(bad());
                    }
                }
            }
        }
        Ok(())
    }

    /// Signed count of seam crossings by through-strands.
    pub fn winding(&self) -> Result<i64> {
        let n = self.ni();
        let (_, strands) = self.edges();
        if strands.is_empty() {
            return Err(Error::WindingUndefined);
        }
        let mut pos = 0;
        let mut neg = 0;
        for (b, t) in strands {
            let d = period(t, n) - period(b, n);
            if d > 0 {
                pos += d;
            } else {
                neg -= d;
            }
        }
        if pos != 0 && neg != 0 {
            return Err(Error::internal("through-strands wind in both directions"));
        }
        Ok(pos - neg)
    }

    /// Parity of the number of crossings of the line `x = line + 1/2`.
    pub fn crossing_parity_at(&self, line: i64) -> bool {
        let n = self.ni();
        let (arcs, strands) = self.edges();
        let total: i64 = arcs
            .iter()
            .map(|&(_, a, b)| crossings(a, b, line, n))
            .sum::<i64>()
            + strands
                .iter()
                .map(|&(a, b)| crossings(a.min(b), a.max(b), line, n))
                .sum::<i64>()
            + self.loops as i64;
        total % 2 == 1
    }

    /// Whether the seam crossing count is odd.
    pub fn is_odd(&self) -> bool {
        self.crossing_parity_at(0)
    }

    /// Gaps `g` in `0..n` (between `g` and `g + 1`) not covered by any arc on `row`.
    pub fn free_gaps(&self, row: Row) -> Vec<usize> {
        let n = self.ni();
        let (arcs, _) = self.edges();
        (0..self.n)
            .filter(|&g| {
                !arcs
                    .iter()
                    .any(|&(r, a, b)| r == row && crossings(a, b, g as i64, n) > 0)
            })
            .collect()
    }

    /// Stacks `self` on top of `other`; returns the contractible loop count and the product.
    pub fn compose(
        &self,
        other: &CoverMatching,
        path_bound: usize,
    ) -> Result<(u32, CoverMatching)> {
        if self.n != other.n {
            return Err(Error::RankMismatch(self.n, other.n));
        }
        let n = self.ni();
        let mut seen = vec![false; self.n];
        let mark = |seen: &mut Vec<bool>, m: i64| seen[(m - 1).rem_euclid(n) as usize] = true;

        // Walk from a middle node until the path leaves through the top or bottom.
        let walk = |mut m: i64, mut in_lower: bool, seen: &mut Vec<bool>| -> Result<Node> {
            for _ in 0..path_bound {
                mark(seen, m);
                if in_lower {
                    match other.partner((Row::Top, m)) {
                        (Row::Bottom, y) => return Ok((Row::Bottom, y)),
                        (Row::Top, y) => m = y,
                    }
                } else {
                    match self.partner((Row::Bottom, m)) {
                        (Row::Top, y) => return Ok((Row::Top, y)),
                        (Row::Bottom, y) => m = y,
                    }
                }
                in_lower = !in_lower;
            }
            Err(Error::internal(
                "composition path exceeded its length bound",
            ))
        };

        let mut top = Vec::with_capacity(self.n);
        for x in 1..=n {
            top.push(match self.partner((Row::Top, x)) {
                p @ (Row::Top, _) => p,
                (Row::Bottom, m) => walk(m, true, &mut seen)?,
            });
        }
        let mut bottom = Vec::with_capacity(self.n);
        for x in 1..=n {
            bottom.push(match other.partner((Row::Bottom, x)) {
                p @ (Row::Bottom, _) => p,
                (Row::Top, m) => walk(m, false, &mut seen)?,
            });
        }

        let mut contractible = 0u32;
        let mut wrapped = 0u32;
        for start in 1..=n {
            if seen[(start - 1) as usize] {
                continue;
            }
            let mut m = start;
            let mut steps = 0usize;
            loop {
                mark(&mut seen, m);
                let (_, y) = self.partner((Row::Bottom, m));
                mark(&mut seen, y);
                let (_, z) = other.partner((Row::Top, y));
                m = z;
                steps += 1;
                if (m - start).rem_euclid(n) == 0 {
                    break;
                }
                if steps > path_bound {
                    return Err(Error::internal("middle cycle exceeded its length bound"));
                }
            }
            match m - start {
                0 => contractible += 1,
                d if d.abs() == n => wrapped += 1,
                d => return Err(Error::internal(format!("middle cycle translated by {d}"))),
            }
        }
        let product =
            CoverMatching::new_unchecked(self.n, top, bottom, self.loops + other.loops + wrapped);
        debug_assert!(
            product.validate().is_ok(),
            "composition produced an invalid matching"
        );
        Ok((contractible, product))
    }

    /// Mirror image under `x ↦ n + 1 - x` with the two rows exchanged.
    pub fn rotate_upside_down(&self) -> CoverMatching {
        let n = self.ni();
        let reflect = |(row, x): Node| (row.flip(), n + 1 - x);
        let mut top = Vec::with_capacity(self.n);
        let mut bottom = Vec::with_capacity(self.n);
        for x in 1..=n {
            top.push(reflect(self.partner((Row::Bottom, n + 1 - x))));
            bottom.push(reflect(self.partner((Row::Top, n + 1 - x))));
        }
        CoverMatching::new_unchecked(self.n, top, bottom, self.loops)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shift(n: usize, s: i64) -> CoverMatching {
        let top = (1..=n as i64).map(|i| (Row::Bottom, i - s)).collect();
        let bottom = (1..=n as i64).map(|i| (Row::Top, i + s)).collect();
        CoverMatching::new(n, top, bottom, 0).unwrap()
    }

    #[test]
    fn translations_wind() {
        for n in 3..=6 {
            for s in -8..=8 {
                assert_eq!(shift(n, s).winding().unwrap(), s);
                assert_eq!(shift(n, s).is_odd(), s % 2 != 0);
            }
        }
    }

    #[test]
    fn crossing_edges_rejected() {
        // strands 1 -> 2 and 2 -> 1 cross
        let top = vec![(Row::Bottom, 2), (Row::Bottom, 1), (Row::Bottom, 3)];
        let bottom = vec![(Row::Top, 2), (Row::Top, 1), (Row::Top, 3)];
        assert!(CoverMatching::new(3, top, bottom, 0).is_err());
        // arc (1, 3) on top with a strand ending at 2
        let top = vec![(Row::Top, 3), (Row::Bottom, 2), (Row::Top, 1)];
        let bottom = vec![(Row::Bottom, 3), (Row::Top, 2), (Row::Bottom, 1)];
        assert!(CoverMatching::new(3, top, bottom, 0).is_err());
    }

    #[test]
    fn loops_need_no_strands() {
        let top = vec![(Row::Top, 2), (Row::Top, 1), (Row::Bottom, 3)];
        let bottom = vec![(Row::Bottom, 2), (Row::Bottom, 1), (Row::Top, 3)];
        assert!(CoverMatching::new(3, top.clone(), bottom.clone(), 0).is_ok());
        assert!(CoverMatching::new(3, top, bottom, 1).is_err());
    }

    #[test]
    fn crossing_count() {
        assert_eq!(crossings(4, 5, 0, 4), 1);
        assert_eq!(crossings(1, 4, 0, 4), 0);
        assert_eq!(crossings(1, 4, 1, 4), 1);
        assert_eq!(crossings(0, 9, 0, 4), 3);
    }
}
