//! Annular involutions: the horizontal-edge patterns of one boundary circle.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An involution of `{1..n}` whose 2-cycles are linearly non-crossing and
/// where every arc contains either none or all of the fixed points.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawInvolution", into = "RawInvolution")]
pub struct AnnularInvolution {
    n: usize,
    /// 1-based images, `map[i - 1] = S(i)`.
    map: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawInvolution {
    n: usize,
    map: Vec<usize>,
}

impl TryFrom<RawInvolution> for AnnularInvolution {
    type Error = Error;

    fn try_from(raw: RawInvolution) -> Result<Self> {
        if raw.map.len() != raw.n {
            return Err(Error::invalid(format!(
                "involution map has length {}, expected {}",
                raw.map.len(),
                raw.n
            )));
        }
        AnnularInvolution::new(raw.map)
    }
}

impl From<AnnularInvolution> for RawInvolution {
    fn from(s: AnnularInvolution) -> Self {
        RawInvolution { n: s.n, map: s.map }
    }
}

fn check_involution(map: &[usize]) -> Result<()> {
    let n = map.len();
    for (i, &j) in map.iter().enumerate() {
        if j == 0 || j > n {
            return Err(Error::NotInvolution(format!(
                "image {j} of {} outside 1..={n}",
                i + 1
            )));
        }
        if map[j - 1] != i + 1 {
            return Err(Error::NotInvolution(format!(
                "S({}) = {j} but S({j}) = {}",
                i + 1,
                map[j - 1]
            )));
        }
    }
    Ok(())
}

fn annular_violation(map: &[usize]) -> Option<String> {
    let fixed: Vec<usize> = (1..=map.len()).filter(|&i| map[i - 1] == i).collect();
    for i in 1..=map.len() {
        let j = map[i - 1];
        if j <= i {
            continue;
        }
        if let Some(k) = (i + 1..j).find(|&k| !(i..=j).contains(&map[k - 1])) {
            return Some(format!("arc ({i} {j}) is crossed by the arc at {k}"));
        }
        let inside = fixed.iter().filter(|&&f| i < f && f < j).count();
        if inside != 0 && inside != fixed.len() {
            return Some(format!("arc ({i} {j}) separates the fixed points"));
        }
    }
    None
}

/// Whether an involution (given as 1-based images) is annular.
pub fn is_annular(map: &[usize]) -> Result<bool> {
    check_involution(map)?;
    Ok(annular_violation(map).is_none())
}

impl AnnularInvolution {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        check_involution(&map)?;
        if let Some(why) = annular_violation(&map) {
            return Err(Error::NotAnnular(why));
        }
        Ok(AnnularInvolution { n: map.len(), map })
    }

    /// Builds from a list of 2-cycles; unlisted points are fixed.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut map: Vec<usize> = (1..=n).collect();
        for &(a, b) in pairs {
            if a == 0 || b == 0 || a > n || b > n || a == b {
                return Err(Error::invalid(format!("bad pair ({a} {b}) for n = {n}")));
            }
            if map[a - 1] != a || map[b - 1] != b {
                return Err(Error::NotInvolution(format!("point reused in ({a} {b})")));
            }
            map[a - 1] = b;
            map[b - 1] = a;
        }
        Self::new(map)
    }

    pub fn identity(n: usize) -> Self {
        AnnularInvolution {
            n,
            map: (1..=n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// `S(i)` for `i` in `1..=n`.
    pub fn image(&self, i: usize) -> usize {
        self.map[i - 1]
    }

    pub fn is_fixed(&self, i: usize) -> bool {
        self.map[i - 1] == i
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (1..=self.n).filter(|&i| self.is_fixed(i)).collect()
    }

    pub fn num_fixed(&self) -> usize {
        (1..=self.n).filter(|&i| self.is_fixed(i)).count()
    }

    /// The 2-cycles `(i, j)` with `i < j`, ordered by `i`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (1..=self.n)
            .filter_map(|i| {
                let j = self.map[i - 1];
                (j > i).then_some((i, j))
            })
            .collect()
    }

    /// Whether the arc `(i, j)` with `i < j` encloses fixed points.
    pub fn arc_encloses_fixed(&self, i: usize, j: usize) -> bool {
        (i + 1..j).any(|k| self.is_fixed(k))
    }

    /// Conjugation by the longest permutation: `i ↦ n + 1 - S(n + 1 - i)`.
    pub fn star(&self) -> Self {
        let n = self.n;
        AnnularInvolution {
            n,
            map: (1..=n).map(|i| n + 1 - self.map[n - i]).collect(),
        }
    }
}

impl fmt::Debug for AnnularInvolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for AnnularInvolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs = self.pairs();
        if pairs.is_empty() {
            return write!(f, "id_{}", self.n);
        }
        for (a, b) in pairs {
            write!(f, "({a} {b})")?;
        }
        Ok(())
    }
}

fn check_counts(n: usize, t: usize) -> bool {
    t <= n && (n - t) % 2 == 0
}

/// All annular involutions of `{1..n}` with exactly `t` fixed points, sorted by map.
pub fn enumerate_annular(n: usize, t: usize) -> Vec<AnnularInvolution> {
    if !check_counts(n, t) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut map = vec![0usize; n];
    // open arcs: (start position, fixed points seen before it opened)
    let mut open: Vec<(usize, usize)> = Vec::new();

    fn go(
        pos: usize,
        fixed: usize,
        n: usize,
        t: usize,
        map: &mut Vec<usize>,
        open: &mut Vec<(usize, usize)>,
        out: &mut Vec<AnnularInvolution>,
    ) {
        if pos > n {
            if open.is_empty() && fixed == t {
                out.push(AnnularInvolution {
                    n,
                    map: map.clone(),
                });
            }
            return;
        }
        let remaining = n - pos + 1;
        let need_fixed = t - fixed;
        if open.len() + need_fixed > remaining || (remaining - open.len() - need_fixed) % 2 != 0 {
            return;
        }
        if need_fixed > 0 {
            map[pos - 1] = pos;
            go(pos + 1, fixed + 1, n, t, map, open, out);
        }
        if let Some(&(start, before)) = open.last() {
            let inside = fixed - before;
            if inside == 0 || inside == t {
                open.pop();
                map[pos - 1] = start;
                map[start - 1] = pos;
                go(pos + 1, fixed, n, t, map, open, out);
                open.push((start, before));
            }
        }
        open.push((pos, fixed));
        go(pos + 1, fixed, n, t, map, open, out);
        open.pop();
    }

    go(1, 0, n, t, &mut map, &mut open, &mut out);
    out.sort();
    out
}

/// The reference involution fixing `1..=t` and nesting arcs `(t + i, n + 1 - i)`.
pub fn standard_base(n: usize, t: usize) -> Result<AnnularInvolution> {
    let min_t = if n % 2 == 0 { 2 } else { 1 };
    if !check_counts(n, t) || t < min_t {
        return Err(Error::invalid(format!(
            "no standard base for n = {n}, t = {t}"
        )));
    }
    let pairs: Vec<(usize, usize)> = (1..=(n - t) / 2).map(|i| (t + i, n + 1 - i)).collect();
    AnnularInvolution::from_pairs(n, &pairs)
}
