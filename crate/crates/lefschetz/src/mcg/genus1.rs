//! Genus-one pages: a planar page with a one-handle attached along two of its
//! boundary components. Curves are named objects with homology classes; a
//! twist acts on homology by the transvection `v -> v + <c, v> c`.
//!
//! A small symbolic calculus tracks images `(t_{c_1}^{k_1} ... t_{c_m}^{k_m})(b)`
//! of named curves, enough to replay explicit rewrite scripts and compare the
//! result with displayed words.

use std::collections::BTreeMap;
use std::fmt;

use super::planar::{Curve, Page};
use crate::Error;

/// Planar page `F_L` with `planar_holes` holes and a one-handle joining hole
/// `left` to hole `right` (or to the outer boundary when `right` is `None`).
///
/// Homology basis: index 0 is the class `a` of a core running over the
/// handle, index `k` is the class `e_k` of the `k`-th planar hole.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HandlePage {
    pub planar_holes: usize,
    pub left: usize,
    pub right: Option<usize>,
}

impl HandlePage {
    pub fn new(planar_holes: usize, left: usize, right: Option<usize>) -> Result<Self, Error> {
        let ok = 1 <= left
            && left <= planar_holes
            && right.is_none_or(|r| left < r && r <= planar_holes);
        if !ok {
            return Err(Error::Domain(format!(
                "handle feet {left}, {right:?} do not fit {planar_holes} holes"
            )));
        }
        Ok(HandlePage {
            planar_holes,
            left,
            right,
        })
    }

    pub fn rank(&self) -> usize {
        self.planar_holes + 1
    }

    /// Joining two boundary components by a handle keeps one of them.
    pub fn page(&self) -> Page {
        Page {
            genus: 1,
            holes: self.planar_holes - 1,
        }
    }

    pub fn euler_char(&self) -> i64 {
        self.page().euler_char()
    }

    pub fn handle_class(&self) -> Vec<i64> {
        let mut v = vec![0; self.rank()];
        v[0] = 1;
        v
    }

    /// Class of a planar curve enclosing the given holes.
    pub fn planar_class(&self, holes: &[usize]) -> Vec<i64> {
        let mut v = vec![0; self.rank()];
        for &k in holes {
            v[k] += 1;
        }
        v
    }

    /// Algebraic intersection: `<a, e_left> = 1`, `<a, e_right> = -1`.
    pub fn pairing(&self, u: &[i64], v: &[i64]) -> i64 {
        let foot = |w: &[i64]| w[self.left] - self.right.map_or(0, |r| w[r]);
        u[0] * foot(v) - v[0] * foot(u)
    }

    /// `T_c^k (v)`.
    pub fn transvect(&self, c: &[i64], v: &[i64], k: i64) -> Vec<i64> {
        let s = k * self.pairing(c, v);
        v.iter().zip(c).map(|(x, y)| x + s * y).collect()
    }

    /// Matrix (columns are images of basis vectors) of `T_{c_1} ∘ ... ∘ T_{c_n}`.
    pub fn product_matrix(&self, classes: &[Vec<i64>]) -> Vec<Vec<i64>> {
        (0..self.rank())
            .map(|j| {
                let mut v = vec![0; self.rank()];
                v[j] = 1;
                for c in classes.iter().rev() {
                    v = self.transvect(c, &v, 1);
                }
                v
            })
            .collect()
    }
}

impl fmt::Display for HandlePage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.right {
            Some(r) => write!(f, "handle {} {} {}", self.planar_holes, self.left, r),
            None => write!(f, "handle {} {} outer", self.planar_holes, self.left),
        }
    }
}

/// A vanishing cycle on a genus-one page.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NamedCurve {
    pub name: String,
    pub class: Vec<i64>,
    /// Rotation number, when known.
    pub rotation: Option<i64>,
    /// The curve on `F_L` when it avoids the handle.
    pub planar: Option<Curve>,
}

/// An ordered twist word on a genus-one page.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Genus1Factorization {
    pub page: HandlePage,
    pub word: Vec<NamedCurve>,
}

impl Genus1Factorization {
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn classes(&self) -> Vec<Vec<i64>> {
        self.word.iter().map(|c| c.class.clone()).collect()
    }

    pub fn product_matrix(&self) -> Vec<Vec<i64>> {
        self.page.product_matrix(&self.classes())
    }

    /// Names with consecutive repeats written as powers.
    pub fn render(&self) -> Vec<String> {
        let names: Vec<&str> = self.word.iter().map(|c| c.name.as_str()).collect();
        powers(&names)
    }
}

impl fmt::Display for Genus1Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.page.page();
        writeln!(f, "page g={} h={}", p.genus, p.holes)?;
        writeln!(f, "{}", self.page)?;
        for c in &self.word {
            let cls: Vec<String> = c.class.iter().map(|x| x.to_string()).collect();
            write!(f, "named {} class {}", c.name, cls.join(" "))?;
            if let Some(r) = c.rotation {
                write!(f, " rot {r}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Collapses runs: `[a, a, b]` becomes `["a^2", "b"]`.
pub fn powers(names: &[&str]) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let mut i = 0;
    while i < names.len() {
        let mut j = i;
        while j < names.len() && names[j] == names[i] {
            j += 1;
        }
        if j - i == 1 {
            out.push(names[i].to_string());
        } else {
            out.push(format!("{}^{}", names[i], j - i));
        }
        i = j;
    }
    out
}

/// A twist power `t_c^k` about a named atom.
pub type Op = (String, i64);

/// The curve `(t_{c_1}^{k_1} ... t_{c_m}^{k_m})(base)`; the rightmost factor
/// acts first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sym {
    pub ops: Vec<Op>,
    pub base: String,
}

impl Sym {
    pub fn atom(name: &str) -> Self {
        Sym {
            ops: Vec::new(),
            base: name.to_string(),
        }
    }

    pub fn image(ops: &[Op], base: &str) -> Self {
        Sym {
            ops: ops.to_vec(),
            base: base.to_string(),
        }
    }

    /// The twist about this curve, `t_{φ(c)}^k = φ t_c^k φ^-1`, as atom ops.
    pub fn twist_ops(&self, k: i64) -> Vec<Op> {
        let mut out = self.ops.clone();
        out.push((self.base.clone(), k));
        out.extend(invert_ops(&self.ops));
        out
    }
}

pub fn invert_ops(ops: &[Op]) -> Vec<Op> {
    ops.iter().rev().map(|(c, k)| (c.clone(), -k)).collect()
}

/// Merges neighbouring powers of the same atom and drops zero powers.
pub fn merge_ops(ops: &[Op]) -> Vec<Op> {
    let mut out: Vec<Op> = Vec::new();
    for (c, k) in ops {
        if let Some(last) = out.last_mut() {
            if &last.0 == c {
                last.1 += k;
                if last.1 == 0 {
                    out.pop();
                }
                continue;
            }
        }
        if *k != 0 {
            out.push((c.clone(), *k));
        }
    }
    out
}

/// A named curve of the calculus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub class: Vec<i64>,
    pub rotation: Option<i64>,
    pub planar: Option<Curve>,
}

/// A named shorthand: either a curve (`y = t_α2 t_γ2 (x)`) or a map
/// (`f = t_x t_α3 t_x^-2`) used when rendering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alias {
    pub name: String,
    pub ops: Vec<Op>,
    pub base: Option<String>,
}

/// Atoms of a genus-one page with their declared geometric intersections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Registry {
    pub page: HandlePage,
    pub atoms: BTreeMap<String, Atom>,
    pub aliases: Vec<Alias>,
    declared: BTreeMap<(String, String), u32>,
}

impl Registry {
    pub fn new(page: HandlePage) -> Self {
        Registry {
            page,
            atoms: BTreeMap::new(),
            aliases: Vec::new(),
            declared: BTreeMap::new(),
        }
    }

    /// Registers a round planar curve on `F_L` under its standard name.
    pub fn add_round(&mut self, lo: usize, hi: usize) -> String {
        let name = round_name(lo, hi);
        let holes: Vec<usize> = (lo..=hi).collect();
        self.atoms.insert(
            name.clone(),
            Atom {
                class: self.page.planar_class(&holes),
                rotation: Some(1),
                planar: Some(Curve::round(lo, hi)),
            },
        );
        name
    }

    pub fn add_atom(&mut self, name: &str, atom: Atom) {
        self.atoms.insert(name.to_string(), atom);
    }

    pub fn add_alias(&mut self, name: &str, ops: Vec<Op>, base: Option<&str>) {
        self.aliases.push(Alias {
            name: name.to_string(),
            ops,
            base: base.map(str::to_string),
        });
    }

    pub fn declare_intersection(&mut self, a: &str, b: &str, i: u32) {
        self.declared.insert(key(a, b), i);
    }

    /// Geometric intersection of two atoms, when known. Round planar curves
    /// meet twice or not at all; a handle curve meets a round planar curve
    /// once exactly when the curve separates the two feet of the handle.
    pub fn intersection(&self, a: &str, b: &str) -> Option<u32> {
        if a == b {
            return Some(0);
        }
        if let Some(&i) = self.declared.get(&key(a, b)) {
            return Some(i);
        }
        let (x, y) = (self.atoms.get(a)?, self.atoms.get(b)?);
        match (&x.planar, &y.planar) {
            (Some(c), Some(d)) if c.is_round() && d.is_round() => {
                let nested = (c.lo <= d.lo && d.hi <= c.hi) || (d.lo <= c.lo && c.hi <= d.hi);
                let apart = c.hi < d.lo || d.hi < c.lo;
                Some(if nested || apart { 0 } else { 2 })
            }
            (Some(c), None) | (None, Some(c)) if c.is_round() => {
                let handle = if x.planar.is_none() { x } else { y };
                if handle.class[1..].iter().any(|&v| v != 0) {
                    return None;
                }
                let planar = if x.planar.is_none() { y } else { x };
                Some(self.page.pairing(&handle.class, &planar.class).unsigned_abs() as u32)
            }
            _ => None,
        }
    }

    fn atom(&self, name: &str) -> Result<&Atom, Error> {
        self.atoms
            .get(name)
            .ok_or_else(|| Error::Domain(format!("unregistered curve {name}")))
    }

    /// Homology class of a symbolic curve.
    pub fn class(&self, s: &Sym) -> Result<Vec<i64>, Error> {
        let mut v = self.atom(&s.base)?.class.clone();
        for (c, k) in s.ops.iter().rev() {
            v = self.page.transvect(&self.atom(c)?.class, &v, *k);
        }
        Ok(v)
    }

    /// Applies the rewriting rules until none fires: merge powers, drop a
    /// rightmost twist fixing the base, and `t_a t_b (a) = b` when `a` and
    /// `b` meet once.
    pub fn simplify(&self, s: &Sym) -> Sym {
        let mut ops = merge_ops(&s.ops);
        let mut base = s.base.clone();
        loop {
            ops = merge_ops(&ops);
            let n = ops.len();
            if n == 0 {
                break;
            }
            let (c, _) = &ops[n - 1];
            if self.intersection(c, &base) == Some(0) {
                ops.pop();
                continue;
            }
            if n >= 2 {
                let ((a, ka), (b, kb)) = (&ops[n - 2], &ops[n - 1]);
                if *ka == 1 && *kb == 1 && *a == base && self.intersection(a, b) == Some(1) {
                    base = b.clone();
                    ops.truncate(n - 2);
                    continue;
                }
            }
            break;
        }
        Sym { ops, base }
    }

    /// Paper-style rendering: `t_x(α3)`, `t_x^2(α3)`,
    /// `(t_x^2·t_α3^-1·t_x^-1)(α2)`, or an alias such as `f(γ2)`.
    pub fn render(&self, s: &Sym) -> String {
        for a in &self.aliases {
            match &a.base {
                Some(b) if *b == s.base && a.ops == s.ops => return a.name.clone(),
                None if a.ops == s.ops && !s.ops.is_empty() => {
                    return format!("{}({})", a.name, s.base)
                }
                _ => {}
            }
        }
        let t = |(c, k): &Op| {
            if *k == 1 {
                format!("t_{c}")
            } else {
                format!("t_{c}^{k}")
            }
        };
        match s.ops.len() {
            0 => s.base.clone(),
            1 => format!("{}({})", t(&s.ops[0]), s.base),
            _ => {
                let parts: Vec<String> = s.ops.iter().map(t).collect();
                format!("({})({})", parts.join("·"), s.base)
            }
        }
    }

    pub fn render_word(&self, w: &[Sym]) -> Vec<String> {
        let names: Vec<String> = w.iter().map(|s| self.render(s)).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        powers(&refs)
    }

    pub fn realize(&self, s: &Sym) -> Result<NamedCurve, Error> {
        let planar = if s.ops.is_empty() {
            self.atom(&s.base)?.planar.clone()
        } else {
            None
        };
        let rotation = if s.ops.is_empty() {
            self.atom(&s.base)?.rotation
        } else {
            None
        };
        Ok(NamedCurve {
            name: self.render(s),
            class: self.class(s)?,
            rotation,
            planar,
        })
    }

    pub fn realize_word(&self, w: &[Sym]) -> Result<Genus1Factorization, Error> {
        Ok(Genus1Factorization {
            page: self.page,
            word: w.iter().map(|s| self.realize(s)).collect::<Result<_, _>>()?,
        })
    }
}

fn key(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

/// `αk` for a single hole, `γk` for holes `1..k`, `εi..j` otherwise.
pub fn round_name(lo: usize, hi: usize) -> String {
    if lo == hi {
        format!("α{lo}")
    } else if lo == 1 {
        format!("γ{hi}")
    } else {
        format!("ε{lo}..{hi}")
    }
}

/// One step of a rewrite script.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    /// `(a, b) -> (t_a(b), a)` at positions `i, i + 1`.
    Forward(usize),
    /// `(a, b) -> (b, t_b^-1(a))` at positions `i, i + 1`.
    Backward(usize),
    /// Replace every curve `c` by `g(c)`.
    Conjugate { name: String, ops: Vec<Op> },
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Forward(i) => write!(f, "hurwitz {i} forward"),
            Move::Backward(i) => write!(f, "hurwitz {i} backward"),
            Move::Conjugate { name, ops } => {
                let parts: Vec<String> = ops.iter().map(|(c, k)| format!("t_{c}^{k}")).collect();
                write!(f, "conjugate {name} = {}", parts.join("·"))
            }
        }
    }
}

/// Applies one move symbolically.
pub fn apply_move(reg: &Registry, w: &[Sym], mv: &Move) -> Result<Vec<Sym>, Error> {
    let mut out = w.to_vec();
    match mv {
        Move::Forward(i) | Move::Backward(i) => {
            let i = *i;
            if i + 1 >= w.len() {
                return Err(Error::Domain(format!("move index {i} out of range")));
            }
            let (a, b) = (&w[i], &w[i + 1]);
            if matches!(mv, Move::Forward(_)) {
                let mut ops = a.twist_ops(1);
                ops.extend(b.ops.iter().cloned());
                out[i] = reg.simplify(&Sym::image(&ops, &b.base));
                out[i + 1] = a.clone();
            } else {
                let mut ops = b.twist_ops(-1);
                ops.extend(a.ops.iter().cloned());
                out[i] = b.clone();
                out[i + 1] = reg.simplify(&Sym::image(&ops, &a.base));
            }
        }
        Move::Conjugate { ops, .. } => {
            for s in out.iter_mut() {
                let mut o = ops.clone();
                o.extend(s.ops.iter().cloned());
                *s = reg.simplify(&Sym::image(&o, &s.base));
            }
        }
    }
    Ok(out)
}

/// A replayed step: the move, the rendered word after it, and whether the
/// homology product is unchanged (conjugation is compared after conjugating).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptStep {
    pub mv: Move,
    pub word: Vec<String>,
    pub homology_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptReplay {
    pub start: Vec<String>,
    pub steps: Vec<ScriptStep>,
    pub result: Vec<Sym>,
}

impl ScriptReplay {
    pub fn all_ok(&self) -> bool {
        self.steps.iter().all(|s| s.homology_ok)
    }
}

/// `a ∘ b` for matrices stored by columns.
fn compose(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    b.iter().map(|col| apply_cols(a, col)).collect()
}

fn apply_cols(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    let mut out = vec![0; v.len()];
    for (j, &x) in v.iter().enumerate() {
        if x != 0 {
            for (o, y) in out.iter_mut().zip(&m[j]) {
                *o += x * y;
            }
        }
    }
    out
}

fn ops_matrix(reg: &Registry, ops: &[Op]) -> Result<Vec<Vec<i64>>, Error> {
    let page = &reg.page;
    (0..page.rank())
        .map(|j| {
            let mut v = vec![0; page.rank()];
            v[j] = 1;
            for (c, k) in ops.iter().rev() {
                v = page.transvect(&reg.atom(c)?.class, &v, *k);
            }
            Ok(v)
        })
        .collect()
}

/// Replays a script, checking after every step that the ordered product of
/// transvections is unchanged (up to the conjugating map for `Conjugate`).
pub fn replay(reg: &Registry, start: &[Sym], moves: &[Move]) -> Result<ScriptReplay, Error> {
    let page = reg.page;
    let classes = |w: &[Sym]| -> Result<Vec<Vec<i64>>, Error> {
        w.iter().map(|s| reg.class(s)).collect()
    };
    let mut cur = start.to_vec();
    let mut m = page.product_matrix(&classes(&cur)?);
    let mut steps = Vec::new();
    for mv in moves {
        let next = apply_move(reg, &cur, mv)?;
        let m2 = page.product_matrix(&classes(&next)?);
        let ok = match mv {
            Move::Conjugate { ops, .. } => {
                let g = ops_matrix(reg, ops)?;
                // g m g^-1 = m2  <=>  g m = m2 g
                compose(&g, &m) == compose(&m2, &g)
            }
            _ => m2 == m,
        };
        steps.push(ScriptStep {
            mv: mv.clone(),
            word: reg.render_word(&next),
            homology_ok: ok,
        });
        cur = next;
        m = m2;
    }
    Ok(ScriptReplay {
        start: reg.render_word(start),
        steps,
        result: cur,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reg() -> Registry {
        let page = HandlePage::new(5, 2, Some(3)).unwrap();
        let mut r = Registry::new(page);
        for k in 1..=5 {
            r.add_round(k, k);
        }
        r.add_round(1, 2);
        r.add_round(1, 5);
        r.add_atom(
            "x",
            Atom {
                class: page.handle_class(),
                rotation: Some(1),
                planar: None,
            },
        );
        r
    }

    #[test]
    fn pairing_is_antisymmetric() {
        let r = reg();
        let a = r.page.handle_class();
        let e2 = r.page.planar_class(&[2]);
        assert_eq!(r.page.pairing(&a, &e2), 1);
        assert_eq!(r.page.pairing(&e2, &a), -1);
        assert_eq!(r.page.pairing(&a, &r.page.planar_class(&[3])), -1);
        assert_eq!(r.page.pairing(&a, &r.page.planar_class(&[2, 3])), 0);
    }

    #[test]
    fn handle_curve_meets_separating_curves_once() {
        let r = reg();
        assert_eq!(r.intersection("x", "α2"), Some(1));
        assert_eq!(r.intersection("x", "γ2"), Some(1));
        assert_eq!(r.intersection("x", "α1"), Some(0));
        assert_eq!(r.intersection("x", "γ5"), Some(0));
        assert_eq!(r.intersection("α1", "γ2"), Some(0));
    }

    #[test]
    fn braid_relation_in_homology() {
        let r = reg();
        let x = r.atoms["x"].class.clone();
        let a3 = r.atoms["α3"].class.clone();
        let lhs = r.page.product_matrix(&[x.clone(), a3.clone(), x.clone()]);
        let rhs = r.page.product_matrix(&[a3.clone(), x, a3]);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn rules_fire() {
        let r = reg();
        let f = vec![("x".to_string(), 1), ("α3".to_string(), 1), ("x".to_string(), -2)];
        assert_eq!(r.simplify(&Sym::image(&f, "x")), Sym::atom("α3"));
        assert_eq!(r.simplify(&Sym::image(&f, "α1")), Sym::atom("α1"));
        let g = r.simplify(&Sym::image(&f, "γ2"));
        assert_eq!(g.ops, f);
    }

    #[test]
    fn rendering() {
        let mut r = reg();
        let s = Sym::image(&[("x".into(), 2), ("α3".into(), -1), ("x".into(), -1)], "α2");
        assert_eq!(r.render(&s), "(t_x^2·t_α3^-1·t_x^-1)(α2)");
        assert_eq!(r.render(&Sym::image(&[("x".into(), 2)], "α3")), "t_x^2(α3)");
        r.add_alias("f", vec![("x".into(), 1)], None);
        assert_eq!(r.render(&Sym::image(&[("x".into(), 1)], "α3")), "f(α3)");
        assert_eq!(powers(&["a", "a", "b"]), vec!["a^2", "b"]);
    }
}
