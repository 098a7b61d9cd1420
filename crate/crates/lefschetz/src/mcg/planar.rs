//! Mapping classes of a disk with holes.
//!
//! A mapping class is stored as its action on the free group of the holes
//! (the Artin action of the underlying pure braid) together with the vector
//! of boundary twists obtained by capping off all holes but one.

use std::fmt;

use super::free::{self, Aut};
use crate::Error;

/// A word in the elementary half twists: `k` is `s_k`, `-k` is `s_k^-1`
/// (1-based, `s_k` exchanges holes `k` and `k + 1`).
pub type SWord = Vec<i32>;

pub fn reduce_sword(w: &[i32]) -> SWord {
    free::reduce(w)
}

pub fn invert_sword(w: &[i32]) -> SWord {
    free::inverse(w)
}

/// Half-twist word of the full twist on holes `lo..=hi`.
pub fn full_twist_word(lo: usize, hi: usize) -> SWord {
    let n = hi - lo + 1;
    let mut w = Vec::with_capacity(n * (n - 1));
    for _ in 0..n {
        for k in lo..hi {
            w.push(k as i32);
        }
    }
    w
}

/// Artin automorphism of an s-word on `h` holes; `braid_aut(uv) = braid_aut(u) ∘ braid_aut(v)`.
pub fn braid_aut(h: usize, w: &[i32]) -> Aut {
    let mut acc = Aut::identity(h);
    for &l in w {
        let k = l.unsigned_abs() as usize;
        acc = acc.compose(&Aut::half_twist(h, k - 1, l < 0));
    }
    acc
}

/// Permutation of holes (0-based) induced by an s-word.
pub fn braid_perm(h: usize, w: &[i32]) -> Vec<usize> {
    (0..h)
        .map(|m| {
            let mut p = m;
            for &l in w.iter().rev() {
                let k = l.unsigned_abs() as usize - 1;
                if p == k {
                    p = k + 1;
                } else if p == k + 1 {
                    p = k;
                }
            }
            p
        })
        .collect()
}

/// A page of a Lefschetz fibration: genus 0 or 1 with `holes` inner boundary
/// components ordered left to right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Page {
    pub genus: u8,
    pub holes: usize,
}

impl Page {
    pub fn planar(holes: usize) -> Self {
        Page { genus: 0, holes }
    }

    pub fn euler_char(&self) -> i64 {
        2 - 2 * self.genus as i64 - (self.holes as i64 + 1)
    }
}

/// Conjugating words longer than this are not tested for being round.
pub const SIMPLIFY_MAX_LETTERS: usize = 64;

/// A simple closed curve on a disk with holes: the image of the round curve
/// about holes `lo..=hi` (1-based) under the braid `conj`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Curve {
    pub lo: usize,
    pub hi: usize,
    pub conj: SWord,
}

impl Curve {
    pub fn round(lo: usize, hi: usize) -> Self {
        assert!(1 <= lo && lo <= hi, "bad hole interval {lo}..{hi}");
        Curve {
            lo,
            hi,
            conj: Vec::new(),
        }
    }

    pub fn hole(k: usize) -> Self {
        Curve::round(k, k)
    }

    pub fn conjugated(conj: SWord, lo: usize, hi: usize) -> Self {
        Curve {
            lo,
            hi,
            conj: reduce_sword(&conj),
        }
    }

    pub fn is_round(&self) -> bool {
        self.conj.is_empty()
    }

    /// Largest hole index the curve refers to.
    pub fn max_hole(&self) -> usize {
        let c = self.conj.iter().map(|l| l.unsigned_abs() as usize + 1);
        c.chain(std::iter::once(self.hi)).max().unwrap_or(self.hi)
    }

    /// Enclosed holes (1-based, sorted).
    pub fn encloses(&self, h: usize) -> Vec<usize> {
        let perm = braid_perm(h, &self.conj);
        let mut s: Vec<usize> = (self.lo - 1..self.hi).map(|m| perm[m] + 1).collect();
        s.sort_unstable();
        s
    }

    /// s-word of the right-handed twist about this curve.
    pub fn twist_word(&self) -> SWord {
        let mut w = self.conj.clone();
        w.extend(full_twist_word(self.lo, self.hi));
        w.extend(invert_sword(&self.conj));
        reduce_sword(&w)
    }

    /// The curve on `h + 1` holes obtained by doubling hole `m`: a parallel
    /// copy is inserted immediately to its right and the conjugating braid
    /// is cabled along that strand.
    pub fn split_hole(&self, h: usize, m: usize) -> Curve {
        assert!(1 <= m && m <= h, "hole {m} out of range");
        let perm = braid_perm(h, &self.conj);
        let p0 = perm.iter().position(|&x| x + 1 == m).expect("permutation") + 1;
        let (lo, hi) = if p0 < self.lo {
            (self.lo + 1, self.hi + 1)
        } else if p0 <= self.hi {
            (self.lo, self.hi + 1)
        } else {
            (self.lo, self.hi)
        };
        // walk the braid from the round curve outward (last letter first),
        // tracking the left strand of the cable
        let mut pos = p0;
        let mut timed: Vec<i32> = Vec::with_capacity(self.conj.len() + 4);
        for &l in self.conj.iter().rev() {
            let k = l.unsigned_abs() as usize;
            let sg = l.signum();
            if k + 1 < pos {
                timed.push(l);
            } else if k > pos {
                timed.push(sg * (k as i32 + 1));
            } else if k == pos {
                // the strand on the right passes the cable, nearer strand first
                timed.push(sg * (pos as i32 + 1));
                timed.push(sg * pos as i32);
                pos += 1;
            } else {
                timed.push(sg * (pos as i32 - 1));
                timed.push(sg * pos as i32);
                pos -= 1;
            }
        }
        timed.reverse();
        Curve::conjugated(timed, lo, hi)
    }

    /// The same curve on a page with extra holes appended on the right.
    pub fn widen(&self) -> Curve {
        self.clone()
    }

    /// Drops trailing letters that preserve the round curve, then replaces
    /// the curve by a round one when it is isotopic to it. The isotopy test
    /// is skipped for long words, where it costs more than it saves.
    pub fn simplify(&self, h: usize) -> Curve {
        let mut conj = self.conj.clone();
        while let Some(&l) = conj.last() {
            let k = l.unsigned_abs() as usize;
            let inside = self.lo <= k && k < self.hi;
            let outside = k + 1 < self.lo || k > self.hi;
            if !(inside || outside) {
                break;
            }
            conj.pop();
        }
        let c = Curve::conjugated(conj, self.lo, self.hi);
        if c.conj.is_empty() || c.conj.len() > SIMPLIFY_MAX_LETTERS {
            return c;
        }
        let enc = c.encloses(h);
        let (lo, hi) = (enc[0], enc[enc.len() - 1]);
        if hi - lo + 1 == enc.len() {
            let round = Curve::round(lo, hi);
            if dehn_twist(&round, h) == dehn_twist(&c, h) {
                return round;
            }
        }
        c
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.conj.is_empty() {
            write!(f, "conj {} ", format_sword(&self.conj))?;
        }
        write!(f, "round {}..{}", self.lo, self.hi)
    }
}

pub fn format_sword(w: &[i32]) -> String {
    w.iter()
        .map(|&l| {
            if l > 0 {
                format!("s{l}")
            } else {
                format!("s{}^-1", -l)
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// A mapping class of the disk with `h` holes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MappingClass {
    pub artin: Aut,
    pub twistvec: Vec<i64>,
}

impl MappingClass {
    pub fn identity(h: usize) -> Self {
        MappingClass {
            artin: Aut::identity(h),
            twistvec: vec![0; h],
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MappingClass) -> MappingClass {
        MappingClass {
            artin: self.artin.compose(&other.artin),
            twistvec: self
                .twistvec
                .iter()
                .zip(&other.twistvec)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn holes(&self) -> usize {
        self.twistvec.len()
    }
}

/// Right-handed Dehn twist about a curve on the disk with `h` holes.
pub fn dehn_twist(c: &Curve, h: usize) -> MappingClass {
    assert!(c.max_hole() <= h, "curve {c} does not fit on {h} holes");
    let inner = braid_aut(h, &full_twist_word(c.lo, c.hi));
    let artin = if c.conj.is_empty() {
        inner
    } else {
        let g = braid_aut(h, &c.conj);
        let gi = braid_aut(h, &invert_sword(&c.conj));
        g.compose(&inner).compose(&gi)
    };
    let mut twistvec = vec![0; h];
    for k in c.encloses(h) {
        twistvec[k - 1] = 1;
    }
    MappingClass { artin, twistvec }
}

/// Ordered product `t_{w_1} ∘ t_{w_2} ∘ ... ∘ t_{w_n}`.
pub fn product(word: &[Curve], h: usize) -> MappingClass {
    let mut acc = MappingClass::identity(h);
    for c in word {
        acc = acc.compose(&dehn_twist(c, h));
    }
    acc
}

/// Decides whether two twist words define the same mapping class.
pub fn mc_equal(w1: &[Curve], w2: &[Curve], h: usize) -> bool {
    product(w1, h) == product(w2, h)
}

/// An ordered word of right-handed Dehn twists on a page.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factorization {
    pub page: Page,
    pub word: Vec<Curve>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `(a, b) -> (t_a(b), a)`
    Forward,
    /// `(a, b) -> (b, t_b^-1(a))`
    Backward,
}

impl Factorization {
    pub fn new(page: Page, word: Vec<Curve>) -> Self {
        Factorization { page, word }
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn monodromy(&self) -> MappingClass {
        product(&self.word, self.page.holes)
    }

    /// Hurwitz move on positions `i, i + 1` (0-based).
    pub fn hurwitz_move(&self, i: usize, dir: Direction) -> Result<Factorization, Error> {
        if i + 1 >= self.word.len() {
            return Err(Error::Domain(format!(
                "hurwitz index {i} out of range for length {}",
                self.word.len()
            )));
        }
        let h = self.page.holes;
        let (a, b) = (&self.word[i], &self.word[i + 1]);
        let mut word = self.word.clone();
        match dir {
            Direction::Forward => {
                let mut conj = a.twist_word();
                conj.extend(&b.conj);
                let moved = Curve::conjugated(conj, b.lo, b.hi).simplify(h);
                word[i] = moved;
                word[i + 1] = a.clone();
            }
            Direction::Backward => {
                let mut conj = invert_sword(&b.twist_word());
                conj.extend(&a.conj);
                let moved = Curve::conjugated(conj, a.lo, a.hi).simplify(h);
                word[i] = b.clone();
                word[i + 1] = moved;
            }
        }
        Ok(Factorization::new(self.page, word))
    }

    /// Replaces every curve `c` by `g(c)` where `g` is the product of the
    /// given twist powers (leftmost factor applied last).
    pub fn global_conjugate(&self, g: &[(Curve, i32)]) -> Factorization {
        let h = self.page.holes;
        let mut gw: SWord = Vec::new();
        for (c, p) in g {
            let tw = c.twist_word();
            let piece = if *p >= 0 { tw } else { invert_sword(&tw) };
            for _ in 0..p.unsigned_abs() {
                gw.extend(&piece);
            }
        }
        let gw = reduce_sword(&gw);
        let word = self
            .word
            .iter()
            .map(|c| {
                let mut conj = gw.clone();
                conj.extend(&c.conj);
                Curve::conjugated(conj, c.lo, c.hi).simplify(h)
            })
            .collect();
        Factorization::new(self.page, word)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "page g={} h={}", self.page.genus, self.page.holes)?;
        for c in &self.word {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}
