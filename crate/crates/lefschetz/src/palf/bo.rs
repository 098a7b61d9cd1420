//! Words for the fillings of a cyclic quotient singularity indexed by a Lisca
//! tuple. The page grows one hole per blow-up of the trace from `(0)`.

use super::{Label, PalfDescription};
use crate::chains::{self, BlowPos};
use crate::invariants;
use crate::mcg::{Curve, Factorization, Page};
use crate::Error;

/// Twist word for `tuple` under the bound `n/(n-q)` and a blow-up trace.
pub fn bo_word(bound: &[i64], tuple: &[i64], trace: &[BlowPos]) -> Result<(Vec<Curve>, Vec<Label>), Error> {
    let replayed = chains::replay(trace)?;
    if replayed != tuple {
        return Err(Error::Domain(format!(
            "trace replays to {} not {}",
            chains::format_tuple(&replayed),
            chains::format_tuple(tuple)
        )));
    }
    if bound.len() != tuple.len() {
        return Err(Error::Domain("tuple and bound have different lengths".into()));
    }
    if let Some(i) = (0..tuple.len()).find(|&i| tuple[i] > bound[i]) {
        return Err(Error::Domain(format!("entry {} exceeds the bound", i + 1)));
    }
    let mut t = 1usize;
    let mut curves: Vec<Curve> = Vec::new();
    let mut labels = Vec::new();
    for (step, &p) in trace.iter().enumerate() {
        match p {
            BlowPos::End => {
                t += 1;
                curves.push(Curve::hole(t));
            }
            BlowPos::Gap(j) => {
                curves = curves.iter().map(|c| c.split_hole(t, j + 1)).collect();
                t += 1;
                // round 1..j+1 with hole j+2 pulled in past hole j+1
                curves.push(Curve::conjugated(vec![-(j as i32 + 1)], 1, j + 1));
            }
        }
        labels.push(Label::Cycle(step + 1));
    }
    for (i, (&a, &n)) in bound.iter().zip(tuple).enumerate() {
        for _ in 0..a - n {
            curves.push(Curve::round(1, i + 1));
            labels.push(Label::Gamma(i + 1));
        }
    }
    let curves = curves.iter().map(|c| c.simplify(t)).collect();
    Ok((curves, labels))
}

fn bound_for(n: i64, q: i64) -> Result<Vec<i64>, Error> {
    if !(1 <= q && q < n) || num_integer::gcd(n, q) != 1 {
        return Err(Error::Domain(format!("need coprime 1 <= q < n, got {n}/{q}")));
    }
    chains::hj_expand_frac(n, n - q)
}

/// PALF on the filling `W_{n,q}(tuple)`.
pub fn bo_palf(n: i64, q: i64, tuple: &[i64], trace: &[BlowPos]) -> Result<PalfDescription, Error> {
    let bound = bound_for(n, q)?;
    let (curves, labels) = bo_word(&bound, tuple, trace)?;
    let f = Factorization::new(Page::planar(tuple.len()), curves);
    Ok(PalfDescription::planar(f, labels))
}

/// Tuple used for the rational-ball side of a class-T chain `n/q`: the first
/// member of `Z_e(n/(n-q))` whose word has `d` twists beyond the page and
/// first homology of order `order`.
pub fn ball_tuple(n: i64, q: i64, d: i64, order: i64) -> Result<(Vec<i64>, Vec<BlowPos>), Error> {
    let (_, set) = chains::enumerate_z_bounded(n, q)?;
    for (tuple, trace) in &set {
        let pd = bo_palf(n, q, tuple, trace)?;
        if pd.euler_char() != d {
            continue;
        }
        let h1 = invariants::first_homology(&pd.word)?;
        if invariants::finite_order(&h1) == Some(order) {
            return Ok((tuple.clone(), trace.clone()));
        }
    }
    Err(Error::Unsupported(format!("no tuple for {n}/{q} with d = {d}")))
}
