//! Moving words to bigger pages: holes may be split into consecutive blocks
//! and new holes may be inserted between them.

use crate::mcg::{Curve, Factorization, Page};
use crate::Error;

/// An order-preserving embedding of a page with `blocks.len()` holes into a
/// page with `target` holes. Hole `k` of the source becomes the consecutive
/// block `blocks[k-1]`; target holes outside every block are new.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HoleMap {
    pub target: usize,
    pub blocks: Vec<(usize, usize)>,
}

impl HoleMap {
    pub fn new(target: usize, blocks: Vec<(usize, usize)>) -> Result<Self, Error> {
        let mut last = 0;
        for &(lo, hi) in &blocks {
            if lo > hi || lo <= last || hi > target {
                return Err(Error::Domain(format!("hole map is not monotone at block {lo}..{hi}")));
            }
            last = hi;
        }
        Ok(HoleMap { target, blocks })
    }

    pub fn identity(h: usize) -> Self {
        HoleMap {
            target: h,
            blocks: (1..=h).map(|k| (k, k)).collect(),
        }
    }

    pub fn source(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_identity(&self) -> bool {
        self.target == self.source() && self.blocks.iter().all(|&(lo, hi)| lo == hi)
    }

    /// Target holes not covered by any block.
    pub fn new_holes(&self) -> Vec<usize> {
        (1..=self.target)
            .filter(|&m| !self.blocks.iter().any(|&(lo, hi)| lo <= m && m <= hi))
            .collect()
    }

    /// Image of a set of source holes.
    pub fn image(&self, holes: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = holes
            .iter()
            .flat_map(|&k| {
                let (lo, hi) = self.blocks[k - 1];
                lo..=hi
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// All ways to cut `1..=target` into `source` consecutive nonempty blocks
    /// covering everything.
    pub fn compositions(source: usize, target: usize) -> Vec<HoleMap> {
        fn go(start: usize, left: usize, target: usize, cur: &mut Vec<(usize, usize)>, out: &mut Vec<HoleMap>) {
            if left == 0 {
                if start == target + 1 {
                    out.push(HoleMap {
                        target,
                        blocks: cur.clone(),
                    });
                }
                return;
            }
            let max_hi = target + 1 - left;
            for hi in start..=max_hi {
                cur.push((start, hi));
                go(hi + 1, left - 1, target, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if source >= 1 && source <= target {
            go(1, source, target, &mut Vec::new(), &mut out);
        }
        out
    }
}

/// The curve on `h + 1` holes obtained by inserting a new hole at position
/// `m` (1-based). The new hole enters from the right end, passing in front
/// of the holes `m..=h`.
pub fn insert_hole(c: &Curve, h: usize, m: usize) -> Curve {
    assert!(1 <= m && m <= h + 1, "insertion point {m} out of range");
    let mut conj: Vec<i32> = (m..=h).map(|k| k as i32).collect();
    conj.extend(&c.widen().conj);
    Curve::conjugated(conj, c.lo, c.hi).simplify(h + 1)
}

/// Extends a curve along a hole map: splits first, then insertions.
pub fn extend_curve(c: &Curve, map: &HoleMap) -> Curve {
    let mut cur = c.clone();
    let mut h = map.source();
    for k in (1..=map.source()).rev() {
        let (lo, hi) = map.blocks[k - 1];
        for _ in lo..hi {
            cur = cur.split_hole(h, k);
            h += 1;
        }
    }
    for m in map.new_holes() {
        cur = insert_hole(&cur, h, m);
        h += 1;
    }
    cur.simplify(h)
}

pub fn extend_factorization(f: &Factorization, map: &HoleMap) -> Result<Factorization, Error> {
    if f.page.genus != 0 {
        return Err(Error::Unsupported("hole maps act on planar pages only".into()));
    }
    if f.page.holes != map.source() {
        return Err(Error::Domain(format!(
            "hole map expects {} holes, page has {}",
            map.source(),
            f.page.holes
        )));
    }
    let word = f.word.iter().map(|c| extend_curve(c, map)).collect();
    Ok(Factorization::new(Page::planar(map.target), word))
}

/// Inserts the given new holes (positions on the final page) and appends one
/// twist about each of them.
pub fn positive_stabilize(f: &Factorization, new_holes: &[usize]) -> Result<Factorization, Error> {
    let target = f.page.holes + new_holes.len();
    let mut sorted = new_holes.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != new_holes.len() || sorted.iter().any(|&m| m == 0 || m > target) {
        return Err(Error::Domain("bad stabilization holes".into()));
    }
    let mut blocks = Vec::new();
    let mut k = 0;
    for m in 1..=target {
        if !sorted.contains(&m) {
            k += 1;
            blocks.push((m, m));
        }
    }
    debug_assert_eq!(k, f.page.holes);
    let map = HoleMap::new(target, blocks)?;
    let mut g = extend_factorization(f, &map)?;
    g.word.extend(sorted.iter().map(|&m| Curve::hole(m)));
    Ok(g)
}
