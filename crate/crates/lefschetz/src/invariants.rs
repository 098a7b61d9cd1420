//! Invariants of the total space of a Lefschetz fibration over the disk:
//! Euler characteristic, first homology, rotation numbers and the
//! adjunction check on sphere classes.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::mcg::{Factorization, Genus1Factorization, Page};
use crate::palf::PalfDescription;
use crate::plumbing::{PlumbingGraph, VertexId};
use crate::Error;

/// A finitely generated abelian group `Z^rank + Z/t_1 + ... + Z/t_k` with
/// `t_1 | t_2 | ...` and every `t_i > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Order of a finite group, `None` when the rank is positive.
    pub fn order(&self) -> Option<BigInt> {
        (self.rank == 0).then(|| self.torsion.iter().product())
    }

    /// Cokernel of the map `Z^rows -> Z^cols` given by the relator rows.
    pub fn cokernel(ambient: usize, rows: &[Vec<i64>]) -> Self {
        let diag = smith_diagonal(rows, ambient);
        let nonzero: Vec<BigInt> = diag.into_iter().filter(|d| !d.is_zero()).collect();
        AbelianGroup {
            rank: ambient - nonzero.len(),
            torsion: nonzero.into_iter().filter(|d| !d.is_one()).collect(),
        }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Diagonal of the Smith normal form of a `rows x cols` integer matrix, with
/// nonnegative entries each dividing the next (zeros last).
pub fn smith_diagonal(rows: &[Vec<i64>], cols: usize) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), cols, "ragged relator matrix");
            r.iter().map(|&x| BigInt::from(x)).collect()
        })
        .collect();
    let m = a.len();
    let n = cols;
    let mut diag = Vec::new();
    for t in 0..m.min(n) {
        // smallest nonzero entry of the remaining block
        let Some((pi, pj)) = min_entry(&a, t, m, n) else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    for j in t..n {
                        let v = &q * &a[t][j];
                        a[i][j] -= v;
                    }
                    if !a[i][t].is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for i in t..m {
                        let v = &q * &a[i][t];
                        a[i][j] -= v;
                    }
                    if !a[t][j].is_zero() {
                        dirty = true;
                    }
                }
            }
            if !dirty {
                // pivot must divide the rest of the block
                let bad = (t + 1..m)
                    .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !(&a[i][j] % &a[t][t]).is_zero());
                match bad {
                    Some((i, _)) => {
                        for j in t..n {
                            let v = a[i][j].clone();
                            a[t][j] += v;
                        }
                    }
                    None => break,
                }
            }
            if let Some((pi, pj)) = min_entry(&a, t, m, n) {
                if a[pi][pj].abs() < a[t][t].abs() || a[t][t].is_zero() {
                    a.swap(t, pi);
                    for row in a.iter_mut() {
                        row.swap(t, pj);
                    }
                }
            }
        }
        diag.push(a[t][t].abs());
    }
    while diag.len() < m.min(n) {
        diag.push(BigInt::zero());
    }
    diag
}

fn min_entry(a: &[Vec<BigInt>], t: usize, m: usize, n: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..m {
        for j in t..n {
            if a[i][j].is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a[bi][bj].abs() <= a[i][j].abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Homological data of a factorization: the page and the class of each
/// vanishing cycle in the first homology of the page.
pub trait VanishingData {
    fn page(&self) -> Page;
    fn twist_count(&self) -> usize;
    /// Rank of the first homology of the page.
    fn ambient_rank(&self) -> usize;
    fn relator_rows(&self) -> Result<Vec<Vec<i64>>, Error>;
}

impl VanishingData for Factorization {
    fn page(&self) -> Page {
        self.page
    }

    fn twist_count(&self) -> usize {
        self.word.len()
    }

    fn ambient_rank(&self) -> usize {
        self.page.holes
    }

    fn relator_rows(&self) -> Result<Vec<Vec<i64>>, Error> {
        if self.page.genus != 0 {
            return Err(Error::Unsupported(
                "planar curves on a genus-1 page carry no homology data".into(),
            ));
        }
        let h = self.page.holes;
        Ok(self
            .word
            .iter()
            .map(|c| {
                let mut row = vec![0; h];
                for k in c.encloses(h) {
                    row[k - 1] = 1;
                }
                row
            })
            .collect())
    }
}

impl VanishingData for Genus1Factorization {
    fn page(&self) -> Page {
        self.page.page()
    }

    fn twist_count(&self) -> usize {
        self.word.len()
    }

    fn ambient_rank(&self) -> usize {
        self.page.rank()
    }

    fn relator_rows(&self) -> Result<Vec<Vec<i64>>, Error> {
        let r = self.page.rank();
        self.word
            .iter()
            .map(|c| {
                if c.class.len() == r {
                    Ok(c.class.clone())
                } else {
                    Err(Error::Domain(format!("curve {} has no class on this page", c.name)))
                }
            })
            .collect()
    }
}

/// `chi(page) + #twists`.
pub fn euler_char<F: VanishingData + ?Sized>(f: &F) -> i64 {
    f.page().euler_char() + f.twist_count() as i64
}

/// First homology of the page modulo the vanishing cycles.
pub fn first_homology<F: VanishingData + ?Sized>(f: &F) -> Result<AbelianGroup, Error> {
    Ok(AbelianGroup::cokernel(f.ambient_rank(), &f.relator_rows()?))
}

/// Rotation number of a planar vanishing cycle in the flat trivialization.
/// Every planar curve is embedded and oriented counterclockwise.
pub fn planar_rotation_number() -> i64 {
    1
}

/// A sphere class written as a combination of word positions.
pub type ClassMap = BTreeMap<VertexId, Vec<(usize, i64)>>;

/// Per-vertex verdict of `sum m_i r(C_i) = deg(v) + 2`.
pub fn check_adjunction(
    pd: &PalfDescription,
    g: &PlumbingGraph,
    classes: &ClassMap,
) -> Result<BTreeMap<VertexId, bool>, Error> {
    let mut out = BTreeMap::new();
    for v in g.ids() {
        let combo = classes
            .get(&v)
            .ok_or_else(|| Error::Domain(format!("no class given for vertex {v}")))?;
        let mut s = 0i64;
        for &(pos, m) in combo {
            let r = pd
                .rotation
                .get(pos)
                .ok_or_else(|| Error::Domain(format!("word position {pos} out of range")))?
                .ok_or_else(|| Error::Domain(format!("no rotation number at position {pos}")))?;
            s += m * r;
        }
        out.insert(v, s == g.degree(v) + 2);
    }
    Ok(out)
}

/// `sum m_i r(C_i)` for a class.
pub fn chern_pairing(rotation: &[i64], combo: &[(usize, i64)]) -> i64 {
    combo.iter().map(|&(p, m)| m * rotation[p]).sum()
}

/// Order of a finite group as a machine integer.
pub fn finite_order(g: &AbelianGroup) -> Option<i64> {
    g.order().and_then(|o| o.to_i64())
}
