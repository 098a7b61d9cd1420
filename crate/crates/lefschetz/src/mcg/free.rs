//! Free groups on the hole generators and their automorphisms.
//!
//! A letter is a nonzero `i32`: `k + 1` stands for generator `x_k` (0-based)
//! and `-(k + 1)` for its inverse.

pub type Word = Vec<i32>;

/// Freely reduces a word in place order.
pub fn reduce(word: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(word.len());
    for &l in word {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn inverse(word: &[i32]) -> Word {
    word.iter().rev().map(|l| -l).collect()
}

/// Concatenates and reduces.
pub fn mul(a: &[i32], b: &[i32]) -> Word {
    let mut w = a.to_vec();
    for &l in b {
        if w.last() == Some(&-l) {
            w.pop();
        } else {
            w.push(l);
        }
    }
    w
}

pub fn gen(k: usize) -> i32 {
    k as i32 + 1
}

/// An automorphism of the free group of rank `images.len()`, stored by the
/// reduced images of the generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Aut {
    pub images: Vec<Word>,
}

impl Aut {
    pub fn identity(rank: usize) -> Self {
        Aut {
            images: (0..rank).map(|k| vec![gen(k)]).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(k, w)| w.len() == 1 && w[0] == gen(k))
    }

    /// The elementary half twist `s_k` (0-based `k`, exchanging holes `k` and
    /// `k + 1`): `x_k -> x_k x_{k+1} x_k^-1`, `x_{k+1} -> x_k`.
    pub fn half_twist(rank: usize, k: usize, inverse: bool) -> Self {
        assert!(k + 1 < rank, "half twist index out of range");
        let mut a = Aut::identity(rank);
        let (xk, xk1) = (gen(k), gen(k + 1));
        if inverse {
            a.images[k] = vec![xk1];
            a.images[k + 1] = vec![-xk1, xk, xk1];
        } else {
            a.images[k] = vec![xk, xk1, -xk];
            a.images[k + 1] = vec![xk];
        }
        a
    }

    /// Image of a word.
    pub fn apply(&self, word: &[i32]) -> Word {
        let mut out: Word = Vec::new();
        for &l in word {
            let img = &self.images[(l.unsigned_abs() - 1) as usize];
            if l > 0 {
                for &m in img {
                    push_reduced(&mut out, m);
                }
            } else {
                for &m in img.iter().rev() {
                    push_reduced(&mut out, -m);
                }
            }
        }
        out
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Aut) -> Aut {
        Aut {
            images: other.images.iter().map(|w| self.apply(w)).collect(),
        }
    }

    /// Permutation of the generators up to conjugacy, if every image is a
    /// conjugate of a generator (never of an inverse).
    pub fn peripheral_permutation(&self) -> Option<Vec<usize>> {
        let mut perm = Vec::with_capacity(self.rank());
        for w in &self.images {
            let core = cyclic_core(w);
            if core.len() != 1 || core[0] < 0 {
                return None;
            }
            perm.push((core[0] - 1) as usize);
        }
        Some(perm)
    }
}

fn push_reduced(out: &mut Word, l: i32) {
    if out.last() == Some(&-l) {
        out.pop();
    } else {
        out.push(l);
    }
}

/// Cyclically reduced core of a reduced word.
pub fn cyclic_core(w: &[i32]) -> &[i32] {
    let mut lo = 0;
    let mut hi = w.len();
    while hi - lo >= 2 && w[lo] == -w[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    &w[lo..hi]
}
