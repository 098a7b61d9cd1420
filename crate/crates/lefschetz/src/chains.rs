//! Hirzebruch–Jung continued fractions, blow-ups of zero chains, class T
//! recognition and the admissible tuple sets used for cyclic fillings.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Error;

/// Value of a continued fraction `[c_1, ..., c_t]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HjValue {
    Rational(BigRational),
    Zero,
    /// Some intermediate denominator vanished.
    Undefined,
}

impl HjValue {
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            HjValue::Rational(r) => Some(r.clone()),
            HjValue::Zero => Some(BigRational::zero()),
            HjValue::Undefined => None,
        }
    }

    /// `(numerator, denominator)` as machine integers when they fit.
    pub fn as_pair(&self) -> Option<(i64, i64)> {
        let r = self.as_rational()?;
        Some((r.numer().to_i64()?, r.denom().to_i64()?))
    }
}

impl fmt::Display for HjValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HjValue::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            HjValue::Zero => write!(f, "0"),
            HjValue::Undefined => write!(f, "undefined"),
        }
    }
}

/// Evaluates `[c_1, ..., c_t]` with `[c_t] = c_t` and
/// `[c_i, ..., c_t] = c_i - 1 / [c_{i+1}, ..., c_t]`.
pub fn hj_eval(chain: &[i64]) -> Result<HjValue, Error> {
    let (&last, rest) = chain
        .split_last()
        .ok_or_else(|| Error::Domain("empty chain".into()))?;
    let mut v = BigRational::from_integer(BigInt::from(last));
    for &c in rest.iter().rev() {
        if v.is_zero() {
            return Ok(HjValue::Undefined);
        }
        v = BigRational::from_integer(BigInt::from(c)) - v.recip();
    }
    Ok(if v.is_zero() {
        HjValue::Zero
    } else {
        HjValue::Rational(v)
    })
}

/// True when every denominator `[c_{i+1}, ..., c_t]` (`i < t`) is positive.
pub fn is_admissible(chain: &[i64]) -> bool {
    let Some((&last, rest)) = chain.split_last() else {
        return false;
    };
    let mut v = BigRational::from_integer(BigInt::from(last));
    for &c in rest.iter().rev() {
        if !v.is_positive() {
            return false;
        }
        v = BigRational::from_integer(BigInt::from(c)) - v.recip();
    }
    true
}

/// Expands `r > 1` as `[b_1, ..., b_r]` with every `b_i >= 2`.
pub fn hj_expand(r: &BigRational) -> Result<Vec<i64>, Error> {
    if r <= &BigRational::one() {
        return Err(Error::Domain(format!("{r} is not greater than 1")));
    }
    let mut n = r.numer().clone();
    let mut q = r.denom().clone();
    let mut out = Vec::new();
    loop {
        // b = ceil(n / q), then n/q = b - (b q - n) / q
        let b = n.div_ceil(&q);
        out.push(
            b.to_i64()
                .ok_or_else(|| Error::Domain("entry overflow".into()))?,
        );
        let rem = &b * &q - &n;
        if rem.is_zero() {
            break;
        }
        n = q;
        q = rem;
    }
    Ok(out)
}

/// Convenience form of [`hj_expand`] for `n / q`.
pub fn hj_expand_frac(n: i64, q: i64) -> Result<Vec<i64>, Error> {
    if q < 1 || n <= q || n.gcd(&q) != 1 {
        return Err(Error::Domain(format!("need coprime n > q >= 1, got {n}/{q}")));
    }
    hj_expand(&BigRational::new(n.into(), q.into()))
}

pub fn format_chain(c: &[i64]) -> String {
    format!("[{}]", join(c))
}

pub fn format_tuple(c: &[i64]) -> String {
    format!("({})", join(c))
}

fn join(c: &[i64]) -> String {
    c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Parses `[5,2]`, `(2,2,1,3)` or a bare `5,2`.
pub fn parse_chain(s: &str) -> Result<Vec<i64>, Error> {
    let t = s.trim();
    let t = t
        .strip_prefix('[')
        .and_then(|x| x.strip_suffix(']'))
        .or_else(|| t.strip_prefix('(').and_then(|x| x.strip_suffix(')')))
        .unwrap_or(t);
    let out: Result<Vec<i64>, _> = t
        .split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect();
    match out {
        Ok(v) if !v.is_empty() => Ok(v),
        _ => Err(Error::Parse(format!("not a chain: {s:?}"))),
    }
}

/// Where a blow-up happens.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlowPos {
    /// Between entries `i` and `i + 1` (1-based).
    Gap(usize),
    /// After the last entry.
    End,
}

impl BlowPos {
    /// Integer code used for lexicographic ordering of traces: gap `i` is
    /// `i`, the end of a length-`t` chain is `t`.
    pub fn code(&self, len: usize) -> usize {
        match *self {
            BlowPos::Gap(i) => i,
            BlowPos::End => len,
        }
    }
}

impl fmt::Display for BlowPos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlowPos::Gap(i) => write!(f, "gap{i}"),
            BlowPos::End => write!(f, "end"),
        }
    }
}

pub fn blow_up(chain: &[i64], pos: BlowPos) -> Result<Vec<i64>, Error> {
    let t = chain.len();
    if t == 0 {
        return Err(Error::Domain("empty chain".into()));
    }
    let mut out = chain.to_vec();
    match pos {
        BlowPos::Gap(i) if (1..t).contains(&i) => {
            out[i - 1] += 1;
            out[i] += 1;
            out.insert(i, 1);
        }
        BlowPos::End => {
            out[t - 1] += 1;
            out.push(1);
        }
        BlowPos::Gap(i) => {
            return Err(Error::Domain(format!("no gap {i} in a chain of length {t}")))
        }
    }
    Ok(out)
}

/// Inverse of [`blow_up`]: removes the entry `1` at `index` (1-based).
pub fn blow_down(chain: &[i64], index: usize) -> Result<Vec<i64>, Error> {
    let t = chain.len();
    if index == 0 || index > t {
        return Err(Error::Domain(format!("index {index} out of range")));
    }
    if t == 1 {
        return Err(Error::Domain("cannot blow down the only entry".into()));
    }
    if chain[index - 1] != 1 {
        return Err(Error::Domain(format!(
            "entry {index} is {}, not 1",
            chain[index - 1]
        )));
    }
    let mut out = chain.to_vec();
    out.remove(index - 1);
    if index > 1 {
        out[index - 2] -= 1;
    }
    if index <= t - 1 {
        out[index - 1] -= 1;
    }
    Ok(out)
}

/// One growth step of a class T chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WahlStep {
    /// prepend 2 and increment the last entry
    PrependTwo,
    /// increment the first entry and append 2
    AppendTwo,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassT {
    RationalDoublePoint,
    /// Type `1/(d n^2) (1, d n a - 1)`, reached from `base` by `steps`.
    Wahl {
        d: i64,
        n: i64,
        a: i64,
        base: Vec<i64>,
        steps: Vec<WahlStep>,
    },
    No,
}

impl ClassT {
    pub fn is_t(&self) -> bool {
        !matches!(self, ClassT::No)
    }
}

fn is_base(c: &[i64]) -> bool {
    match c {
        [4] => true,
        [3, mid @ .., 3] => mid.iter().all(|&x| x == 2),
        _ => false,
    }
}

/// Recognizes class T chains by undoing growth steps.
pub fn is_class_t(chain: &[i64]) -> ClassT {
    if chain.is_empty() || chain.iter().any(|&c| c < 2) {
        return ClassT::No;
    }
    if chain.iter().all(|&c| c == 2) {
        return ClassT::RationalDoublePoint;
    }
    let mut cur = chain.to_vec();
    let mut steps = Vec::new();
    while !is_base(&cur) {
        let t = cur.len();
        if t >= 2 && cur[0] == 2 && cur[t - 1] >= 3 {
            cur.remove(0);
            *cur.last_mut().unwrap() -= 1;
            steps.push(WahlStep::PrependTwo);
        } else if t >= 2 && cur[t - 1] == 2 && cur[0] >= 3 {
            cur.pop();
            cur[0] -= 1;
            steps.push(WahlStep::AppendTwo);
        } else {
            return ClassT::No;
        }
    }
    steps.reverse();
    let (num, den) = match hj_eval(chain).ok().and_then(|v| v.as_pair()) {
        Some(p) => p,
        None => return ClassT::No,
    };
    // num = d n^2, den + 1 = d n a, gcd(num, den + 1) = d n
    let g = num.gcd(&(den + 1));
    let n = num / g;
    let d = g / n;
    let a = (den + 1) / (d * n);
    ClassT::Wahl {
        d,
        n,
        a,
        base: cur,
        steps,
    }
}

/// Replays a Wahl derivation.
pub fn wahl_grow(base: &[i64], steps: &[WahlStep]) -> Vec<i64> {
    let mut c = base.to_vec();
    for s in steps {
        match s {
            WahlStep::PrependTwo => {
                *c.last_mut().unwrap() += 1;
                c.insert(0, 2);
            }
            WahlStep::AppendTwo => {
                c[0] += 1;
                c.push(2);
            }
        }
    }
    c
}

/// Blow-up sequence from `(0)`.
pub type Trace = Vec<BlowPos>;

pub fn replay(trace: &[BlowPos]) -> Result<Vec<i64>, Error> {
    let mut t = vec![0];
    for &p in trace {
        t = blow_up(&t, p)?;
    }
    Ok(t)
}

/// Every blow-up sequence from `(0)` reaching `tuple`, sorted
/// lexicographically by position codes.
pub fn all_traces(tuple: &[i64]) -> Vec<Trace> {
    fn rec(t: &[i64], out: &mut Vec<Trace>, suffix: &mut Vec<BlowPos>) {
        if t == [0] {
            out.push(suffix.iter().rev().copied().collect());
            return;
        }
        let len = t.len();
        for i in 2..=len {
            if t[i - 1] != 1 {
                continue;
            }
            let pos = if i == len { BlowPos::End } else { BlowPos::Gap(i - 1) };
            if let Ok(prev) = blow_down(t, i) {
                suffix.push(pos);
                rec(&prev, out, suffix);
                suffix.pop();
            }
        }
    }
    let mut out = Vec::new();
    if tuple.is_empty() || tuple.iter().any(|&x| x < 0) {
        return out;
    }
    rec(tuple, &mut out, &mut Vec::new());
    out.sort_by_key(|tr| trace_key(tr));
    out.dedup();
    out
}

fn trace_key(trace: &[BlowPos]) -> Vec<usize> {
    trace
        .iter()
        .enumerate()
        .map(|(i, p)| p.code(i + 1))
        .collect()
}

fn positions(len: usize) -> impl Iterator<Item = BlowPos> {
    (1..len).map(BlowPos::Gap).chain(std::iter::once(BlowPos::End))
}

/// All tuples reachable from `(0)` by `e - 1` blow-ups, each with its
/// lexicographically smallest blow-up sequence.
pub fn enumerate_z(e: usize) -> BTreeMap<Vec<i64>, Trace> {
    enumerate_pruned(e, None)
}

/// `Z_e(n / (n - q))`: members of `Z_e` bounded by `hj_expand(n / (n - q))`.
pub fn enumerate_z_bounded(n: i64, q: i64) -> Result<(Vec<i64>, BTreeMap<Vec<i64>, Trace>), Error> {
    if q < 1 || n <= q || n.gcd(&q) != 1 {
        return Err(Error::Domain(format!("need coprime n > q >= 1, got {n}/{q}")));
    }
    let bound = hj_expand_frac(n, n - q)?;
    let set = enumerate_pruned(bound.len(), Some(&bound));
    Ok((bound, set))
}

fn enumerate_pruned(e: usize, bound: Option<&[i64]>) -> BTreeMap<Vec<i64>, Trace> {
    assert!(e >= 1, "e must be positive");
    let mut level: BTreeMap<Vec<i64>, Trace> = BTreeMap::new();
    level.insert(vec![0], Vec::new());
    for k in 1..e {
        let mut next: BTreeMap<Vec<i64>, Trace> = BTreeMap::new();
        for (tuple, trace) in &level {
            for p in positions(tuple.len()) {
                let child = blow_up(tuple, p).expect("legal position");
                if let Some(b) = bound {
                    if !embeddable(&child, b, e - k - 1) {
                        continue;
                    }
                }
                let mut ct = trace.clone();
                ct.push(p);
                match next.get(&child) {
                    Some(old) if trace_key(old) <= trace_key(&ct) => {}
                    _ => {
                        next.insert(child, ct);
                    }
                }
            }
        }
        level = next;
    }
    if let Some(b) = bound {
        level.retain(|t, _| t.iter().zip(b).all(|(x, y)| x <= y));
    }
    level
}

/// Entries never decrease under blow-up, so a partial tuple can only grow
/// into a bounded one if its entries fit an increasing choice of final
/// positions. `extra` is the number of entries still to be inserted.
fn embeddable(partial: &[i64], bound: &[i64], extra: usize) -> bool {
    let mut pos = 0usize;
    let mut slack = extra;
    for &m in partial {
        loop {
            if pos >= bound.len() {
                return false;
            }
            if m <= bound[pos] {
                pos += 1;
                break;
            }
            if slack == 0 {
                return false;
            }
            slack -= 1;
            pos += 1;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn eval_examples() {
        assert_eq!(hj_eval(&[5, 2]).unwrap(), HjValue::Rational(q(9, 2)));
        assert_eq!(hj_eval(&[7]).unwrap(), HjValue::Rational(q(7, 1)));
        assert_eq!(hj_eval(&[2, 2, 1, 3]).unwrap(), HjValue::Zero);
        // 1 - 1/(1 - 1/5) = -1/4
        assert_eq!(hj_eval(&[1, 1, 5]).unwrap(), HjValue::Rational(q(-1, 4)));
        assert!(hj_eval(&[]).is_err());
    }

    #[test]
    fn undefined_when_a_denominator_vanishes() {
        // [1, 0] divides by zero
        assert_eq!(hj_eval(&[1, 0]).unwrap(), HjValue::Undefined);
        assert_eq!(hj_eval(&[3, 1, 1]).unwrap(), HjValue::Undefined);
    }

    #[test]
    fn expand_examples() {
        assert_eq!(hj_expand(&q(9, 2)).unwrap(), vec![5, 2]);
        assert_eq!(hj_expand(&q(11, 1)).unwrap(), vec![11]);
        assert_eq!(hj_expand(&q(9, 7)).unwrap(), vec![2, 2, 2, 3]);
        assert!(hj_expand(&q(1, 1)).is_err());
        assert!(hj_expand(&q(1, 2)).is_err());
    }

    #[test]
    fn blow_up_examples() {
        assert_eq!(blow_up(&[0], BlowPos::End).unwrap(), vec![1, 1]);
        assert_eq!(blow_up(&[1, 1], BlowPos::Gap(1)).unwrap(), vec![2, 1, 2]);
        assert_eq!(blow_up(&[2, 1, 2], BlowPos::Gap(2)).unwrap(), vec![2, 2, 1, 3]);
        assert!(blow_up(&[2, 1, 2], BlowPos::Gap(3)).is_err());
    }

    #[test]
    fn blow_down_examples() {
        assert_eq!(blow_down(&[2, 1, 2], 2).unwrap(), vec![1, 1]);
        assert_eq!(blow_down(&[1, 1], 1).unwrap(), vec![0]);
        assert_eq!(blow_down(&[2, 2, 1, 3], 3).unwrap(), vec![2, 1, 2]);
        assert!(blow_down(&[2, 2, 1, 3], 2).is_err());
        assert!(blow_down(&[1], 1).is_err());
    }

    #[test]
    fn class_t_examples() {
        assert!(matches!(is_class_t(&[4]), ClassT::Wahl { d: 1, n: 2, a: 1, .. }));
        assert_eq!(is_class_t(&[2, 2]), ClassT::RationalDoublePoint);
        match is_class_t(&[5, 2]) {
            ClassT::Wahl { d, n, a, base, steps } => {
                assert_eq!((d, n, a), (1, 3, 1));
                assert_eq!(wahl_grow(&base, &steps), vec![5, 2]);
            }
            other => panic!("{other:?}"),
        }
        assert!(is_class_t(&[2, 5, 3]).is_t());
        assert_eq!(is_class_t(&[5]), ClassT::No);
        assert_eq!(is_class_t(&[2, 5, 2]), ClassT::No);
    }

    #[test]
    fn z_small_levels() {
        let z1 = enumerate_z(1);
        assert_eq!(z1.keys().cloned().collect::<Vec<_>>(), vec![vec![0]]);
        let z2 = enumerate_z(2);
        assert_eq!(z2.keys().cloned().collect::<Vec<_>>(), vec![vec![1, 1]]);
        let z4 = enumerate_z(4);
        assert_eq!(
            z4[&vec![2, 2, 1, 3]],
            vec![BlowPos::End, BlowPos::Gap(1), BlowPos::Gap(2)]
        );
    }

    #[test]
    fn bounded_set_for_nine_two() {
        let (bound, set) = enumerate_z_bounded(9, 2).unwrap();
        assert_eq!(bound, vec![2, 2, 2, 3]);
        assert!(set.contains_key(&vec![2, 2, 1, 3]));
        let (bound, set) = enumerate_z_bounded(2, 1).unwrap();
        assert_eq!(bound, vec![2]);
        assert_eq!(set.keys().cloned().collect::<Vec<_>>(), vec![vec![0]]);
    }
}
