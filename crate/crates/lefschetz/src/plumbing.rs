//! Plumbing graphs of resolutions: builders for the quotient singularity
//! classes, intersection data, canonical coefficients and P-resolutions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::chains::{self, ClassT};
use crate::invariants::AbelianGroup;
use crate::par;
use crate::Error;

pub type VertexId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub id: VertexId,
    /// Self-intersection, `-b`.
    pub degree: i64,
}

/// A weighted tree (or forest) of spheres with optional class T decorations.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PlumbingGraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<(VertexId, VertexId)>,
    /// Each decoration is a path of vertex ids, in path order.
    pub decorations: Vec<Vec<VertexId>>,
}

impl PlumbingGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, id: VertexId, degree: i64) -> Result<(), Error> {
        if self.has_vertex(id) {
            return Err(Error::Domain(format!("duplicate vertex {id}")));
        }
        self.vertices.push(Vertex { id, degree });
        self.vertices.sort();
        Ok(())
    }

    pub fn add_edge(&mut self, a: VertexId, b: VertexId) -> Result<(), Error> {
        if a == b || !self.has_vertex(a) || !self.has_vertex(b) {
            return Err(Error::Domain(format!("bad edge {a} {b}")));
        }
        let e = (a.min(b), a.max(b));
        if self.edges.contains(&e) {
            return Err(Error::Domain(format!("duplicate edge {a} {b}")));
        }
        self.edges.push(e);
        self.edges.sort();
        Ok(())
    }

    pub fn has_vertex(&self, id: VertexId) -> bool {
        self.vertices.iter().any(|v| v.id == id)
    }

    pub fn ids(&self) -> Vec<VertexId> {
        self.vertices.iter().map(|v| v.id).collect()
    }

    pub fn degree(&self, id: VertexId) -> i64 {
        self.vertices
            .iter()
            .find(|v| v.id == id)
            .map(|v| v.degree)
            .unwrap_or_else(|| panic!("no vertex {id}"))
    }

    /// `b = -degree`.
    pub fn b(&self, id: VertexId) -> i64 {
        -self.degree(id)
    }

    fn set_degree(&mut self, id: VertexId, degree: i64) {
        for v in &mut self.vertices {
            if v.id == id {
                v.degree = degree;
            }
        }
    }

    pub fn neighbors(&self, id: VertexId) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == id {
                    Some(b)
                } else if b == id {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn valence(&self, id: VertexId) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == id || b == id).count()
    }

    pub fn is_adjacent(&self, a: VertexId, b: VertexId) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn next_id(&self) -> VertexId {
        self.vertices.iter().map(|v| v.id).max().map_or(1, |m| m + 1)
    }

    pub fn components(&self) -> usize {
        let ids = self.ids();
        let mut seen = BTreeSet::new();
        let mut count = 0;
        for &s in &ids {
            if seen.insert(s) {
                count += 1;
                let mut stack = vec![s];
                while let Some(v) = stack.pop() {
                    for u in self.neighbors(v) {
                        if seen.insert(u) {
                            stack.push(u);
                        }
                    }
                }
            }
        }
        count
    }

    pub fn is_tree(&self) -> bool {
        !self.vertices.is_empty()
            && self.components() == 1
            && self.edges.len() + 1 == self.vertices.len()
    }

    /// Intersection matrix in vertex order.
    pub fn intersection_matrix(&self) -> Vec<Vec<i64>> {
        let ids = self.ids();
        let n = ids.len();
        let pos: BTreeMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut m = vec![vec![0i64; n]; n];
        for (i, v) in self.vertices.iter().enumerate() {
            m[i][i] = v.degree;
        }
        for &(a, b) in &self.edges {
            m[pos[&a]][pos[&b]] += 1;
            m[pos[&b]][pos[&a]] += 1;
        }
        m
    }

    /// Sylvester test on the leading principal minors of `-M`.
    pub fn is_negative_definite(&self) -> bool {
        let m = self.intersection_matrix();
        let neg: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
        (1..=neg.len()).all(|k| leading_minor(&neg, k).is_positive())
    }

    pub fn is_decorated(&self, id: VertexId) -> bool {
        self.decorations.iter().any(|d| d.contains(&id))
    }

    /// Same graph with the decorations replaced.
    pub fn with_decorations(&self, decorations: Vec<Vec<VertexId>>) -> Self {
        PlumbingGraph {
            vertices: self.vertices.clone(),
            edges: self.edges.clone(),
            decorations,
        }
    }

    /// Chain of `b` values along a path of vertex ids.
    pub fn chain_of(&self, path: &[VertexId]) -> Vec<i64> {
        path.iter().map(|&v| self.b(v)).collect()
    }

    /// Orders a vertex set as a path, if it induces one.
    pub fn as_path(&self, set: &BTreeSet<VertexId>) -> Option<Vec<VertexId>> {
        if set.is_empty() {
            return None;
        }
        let inner = |v: VertexId| -> Vec<VertexId> {
            self.neighbors(v).into_iter().filter(|u| set.contains(u)).collect()
        };
        let mut internal_edges = 0;
        for &v in set {
            let k = inner(v).len();
            if k > 2 {
                return None;
            }
            internal_edges += k;
        }
        if internal_edges / 2 + 1 != set.len() {
            return None;
        }
        let start = *set.iter().find(|&&v| inner(v).len() <= 1)?;
        let mut path = vec![start];
        let mut prev = None;
        let mut cur = start;
        loop {
            let next = inner(cur).into_iter().find(|&u| Some(u) != prev);
            match next {
                Some(u) => {
                    path.push(u);
                    prev = Some(cur);
                    cur = u;
                }
                None => break,
            }
        }
        (path.len() == set.len()).then_some(path)
    }

    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut g = PlumbingGraph::new();
        let mut pending_edges = Vec::new();
        let mut decorations = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = || Error::Parse(format!("line {}: {raw:?}", lineno + 1));
            let mut parts = line.split_whitespace();
            match parts.next() {
                Some("vertex") => {
                    let id = parts.next().and_then(|x| x.parse().ok()).ok_or_else(bad)?;
                    let d = parts.next().and_then(|x| x.parse().ok()).ok_or_else(bad)?;
                    g.add_vertex(id, d)?;
                }
                Some("edge") => {
                    let a: VertexId = parts.next().and_then(|x| x.parse().ok()).ok_or_else(bad)?;
                    let b: VertexId = parts.next().and_then(|x| x.parse().ok()).ok_or_else(bad)?;
                    pending_edges.push((a, b));
                }
                Some("decorate") => {
                    let rest: String = parts.collect::<Vec<_>>().join("");
                    let ids: Result<Vec<VertexId>, _> =
                        rest.split(',').map(|x| x.trim().parse()).collect();
                    decorations.push(ids.map_err(|_| bad())?);
                }
                _ => return Err(bad()),
            }
        }
        for (a, b) in pending_edges {
            g.add_edge(a, b)?;
        }
        for d in &decorations {
            if let Some(v) = d.iter().find(|v| !g.has_vertex(**v)) {
                return Err(Error::Parse(format!("decoration names unknown vertex {v}")));
            }
        }
        g.decorations = decorations;
        Ok(g)
    }
}

impl fmt::Display for PlumbingGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.vertices {
            writeln!(f, "vertex {} {}", v.id, v.degree)?;
        }
        for (a, b) in &self.edges {
            writeln!(f, "edge {a} {b}")?;
        }
        for d in &self.decorations {
            let s: Vec<String> = d.iter().map(|x| x.to_string()).collect();
            writeln!(f, "decorate {}", s.join(","))?;
        }
        Ok(())
    }
}

/// Determinant of the leading `k x k` block (Bareiss, exact).
fn leading_minor(m: &[Vec<i64>], k: usize) -> BigInt {
    let mut a: Vec<Vec<BigInt>> = m[..k]
        .iter()
        .map(|r| r[..k].iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    determinant(&mut a)
}

pub(crate) fn determinant(a: &mut [Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

fn chain_graph(bs: &[i64], first_id: VertexId, g: &mut PlumbingGraph, attach: Option<VertexId>) {
    let mut prev = attach;
    for (i, &b) in bs.iter().enumerate() {
        let id = first_id + i;
        g.add_vertex(id, -b).expect("fresh id");
        if let Some(p) = prev {
            g.add_edge(p, id).expect("fresh edge");
        }
        prev = Some(id);
    }
}

fn check_nq(n: i64, q: i64) -> Result<(), Error> {
    if q < 1 || n <= q || n.gcd(&q) != 1 {
        return Err(Error::Domain(format!("need coprime n > q >= 1, got ({n}, {q})")));
    }
    Ok(())
}

/// Linear chain `-b_1 - ... - -b_r` for `n/q = [b_1, ..., b_r]`; ids `1..=r`.
pub fn build_cyclic(n: i64, q: i64) -> Result<PlumbingGraph, Error> {
    check_nq(n, q)?;
    let bs = chains::hj_expand_frac(n, q)?;
    let mut g = PlumbingGraph::new();
    chain_graph(&bs, 1, &mut g, None);
    Ok(g)
}

/// Dihedral star: `n/q = [b, b_1, ..., b_r]`, center id 1, the two `-2`
/// leaves 2 and 3, the arm from id 4 outward.
pub fn build_dihedral(n: i64, q: i64) -> Result<PlumbingGraph, Error> {
    check_nq(n, q)?;
    if q == 1 {
        return Err(Error::Domain("dihedral type needs q > 1".into()));
    }
    let bs = chains::hj_expand_frac(n, q)?;
    build_star(bs[0], &[2], &[2], &bs[1..])
}

/// Arm patterns of the non-cyclic stars, listed from the center outward.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StarType {
    Dihedral,
    /// arms `(2)` and `(3)`
    ThreeOne,
    /// arms `(2)` and `(2, 2)`
    ThreeTwo,
}

impl StarType {
    pub fn fixed_arms(&self) -> (&'static [i64], &'static [i64]) {
        match self {
            StarType::Dihedral => (&[2], &[2]),
            StarType::ThreeOne => (&[2], &[3]),
            StarType::ThreeTwo => (&[2], &[2, 2]),
        }
    }
}

/// Star with central `-b` and three arms given as `b`-chains from the center
/// outward. Ids: center 1, then arm 1, arm 2, arm 3 consecutively.
pub fn build_star(b: i64, arm1: &[i64], arm2: &[i64], arm3: &[i64]) -> Result<PlumbingGraph, Error> {
    if b < 2 || [arm1, arm2, arm3].iter().any(|a| a.iter().any(|&x| x < 2)) {
        return Err(Error::Domain("star entries must be at least 2".into()));
    }
    let mut g = PlumbingGraph::new();
    g.add_vertex(1, -b)?;
    let mut next = 2;
    for arm in [arm1, arm2, arm3] {
        chain_graph(arm, next, &mut g, Some(1));
        next += arm.len();
    }
    Ok(g)
}

pub fn build_typed_star(kind: StarType, b: i64, arm: &[i64]) -> Result<PlumbingGraph, Error> {
    let (a1, a2) = kind.fixed_arms();
    build_star(b, a1, a2, arm)
}

/// Recognizes a star built by [`build_typed_star`] (ids as assigned there).
pub fn star_shape(g: &PlumbingGraph) -> Option<(StarType, i64, Vec<i64>)> {
    if !g.is_tree() {
        return None;
    }
    let center = g.ids().into_iter().find(|&v| g.valence(v) == 3)?;
    if g.ids().iter().filter(|&&v| g.valence(v) >= 3).count() != 1 {
        return None;
    }
    let mut arms: Vec<Vec<i64>> = g
        .neighbors(center)
        .into_iter()
        .map(|n| {
            let mut arm = vec![g.b(n)];
            let (mut prev, mut cur) = (center, n);
            while let Some(nx) = g.neighbors(cur).into_iter().find(|&u| u != prev) {
                arm.push(g.b(nx));
                prev = cur;
                cur = nx;
            }
            arm
        })
        .collect();
    arms.sort_by_key(|a| (a.len(), a.clone()));
    let b = g.b(center);
    for kind in [StarType::Dihedral, StarType::ThreeOne, StarType::ThreeTwo] {
        let (f1, f2) = kind.fixed_arms();
        for i in 0..3 {
            for j in 0..3 {
                if i == j {
                    continue;
                }
                if arms[i] == f1 && arms[j] == f2 {
                    let k = 3 - i - j;
                    return Some((kind, b, arms[k].clone()));
                }
            }
        }
    }
    None
}

/// First vertex (by id) whose valence exceeds `|degree|`.
pub fn has_bad_vertex(g: &PlumbingGraph) -> Option<VertexId> {
    g.vertices
        .iter()
        .find(|v| (g.valence(v.id) as i64) > v.degree.abs())
        .map(|v| v.id)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalCoefficients {
    pub k: BTreeMap<VertexId, BigRational>,
}

/// Solves `sum_j k_j (E_j . E_i) = b_i - 2` exactly.
pub fn canonical_coefficients(g: &PlumbingGraph) -> Result<CanonicalCoefficients, Error> {
    let ids = g.ids();
    let m = g.intersection_matrix();
    let rhs: Vec<BigRational> = ids
        .iter()
        .map(|&v| BigRational::from_integer(BigInt::from(g.b(v) - 2)))
        .collect();
    let sol = solve_rational(&m, &rhs)
        .ok_or_else(|| Error::Domain("singular intersection matrix".into()))?;
    Ok(CanonicalCoefficients {
        k: ids.into_iter().zip(sol).collect(),
    })
}

/// Canonical coefficients of a linear chain of `b` values on its own.
pub fn chain_coefficients(bs: &[i64]) -> Option<Vec<BigRational>> {
    let n = bs.len();
    let mut m = vec![vec![0i64; n]; n];
    for i in 0..n {
        m[i][i] = -bs[i];
        if i + 1 < n {
            m[i][i + 1] = 1;
            m[i + 1][i] = 1;
        }
    }
    let rhs: Vec<BigRational> = bs
        .iter()
        .map(|&b| BigRational::from_integer(BigInt::from(b - 2)))
        .collect();
    solve_rational(&m, &rhs)
}

fn solve_rational(m: &[Vec<i64>], rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .zip(rhs)
        .map(|(row, r)| {
            let mut v: Vec<BigRational> = row
                .iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect();
            v.push(r.clone());
            v
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let p = a[col][col].clone();
        for j in col..=n {
            a[col][j] = &a[col][j] / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in col..=n {
                    let t = &f * &a[col][j];
                    a[r][j] -= t;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n].clone()).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Validation {
    pub ok: bool,
    pub diagnostics: Vec<String>,
}

/// Checks that the decorations describe a P-resolution: every decorated
/// chain is class T or a rational double point chain, and every `-1` vertex
/// meets exactly two decorated curves whose coefficients sum below `-1`.
pub fn validate_p_resolution(g: &PlumbingGraph) -> Validation {
    let mut diag = Vec::new();
    let mut owner: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut k: BTreeMap<VertexId, BigRational> = BTreeMap::new();
    for (i, d) in g.decorations.iter().enumerate() {
        if d.is_empty() {
            diag.push(format!("decoration {i} is empty"));
            continue;
        }
        for &v in d {
            if !g.has_vertex(v) {
                diag.push(format!("decoration {i} names unknown vertex {v}"));
            } else if owner.insert(v, i).is_some() {
                diag.push(format!("vertex {v} lies in two decorations"));
            }
        }
        if d.iter().any(|&v| !g.has_vertex(v)) {
            continue;
        }
        if d.windows(2).any(|w| !g.is_adjacent(w[0], w[1])) {
            diag.push(format!("decoration {i} is not a path"));
            continue;
        }
        let chain = g.chain_of(d);
        if chain.iter().any(|&b| b < 2) {
            diag.push(format!("decoration {i} contains a curve of degree above -2"));
            continue;
        }
        if matches!(chains::is_class_t(&chain), ClassT::No) {
            diag.push(format!(
                "decoration {i} {} is neither class T nor a rational double point",
                chains::format_chain(&chain)
            ));
            continue;
        }
        if let Some(ks) = chain_coefficients(&chain) {
            for (&v, kv) in d.iter().zip(ks) {
                k.insert(v, kv);
            }
        }
    }
    for &(a, b) in &g.edges {
        if let (Some(x), Some(y)) = (owner.get(&a), owner.get(&b)) {
            if x != y {
                diag.push(format!("decorations {x} and {y} are adjacent"));
            }
        }
    }
    let minus_one = BigRational::from_integer(BigInt::from(-1));
    for v in &g.vertices {
        if v.degree != -1 || owner.contains_key(&v.id) {
            continue;
        }
        let hits: Vec<VertexId> = g
            .neighbors(v.id)
            .into_iter()
            .filter(|u| owner.contains_key(u))
            .collect();
        if hits.len() != 2 {
            diag.push(format!(
                "-1 vertex {} meets {} decorated curves, not 2",
                v.id,
                hits.len()
            ));
            continue;
        }
        let s: BigRational = hits.iter().filter_map(|u| k.get(u)).cloned().sum();
        if s >= minus_one {
            diag.push(format!(
                "-1 vertex {}: canonical coefficients sum to {s}, not below -1",
                v.id
            ));
        }
    }
    Validation {
        ok: diag.is_empty(),
        diagnostics: diag,
    }
}

/// Intersection of the pulled-back canonical class of the partial
/// resolution with an undecorated curve.
fn k_degree(g: &PlumbingGraph, k: &BTreeMap<VertexId, BigRational>, v: VertexId) -> BigRational {
    let mut s = BigRational::from_integer(BigInt::from(g.b(v) - 2));
    for u in g.neighbors(v) {
        if let Some(ku) = k.get(&u) {
            s -= ku;
        }
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresEnumeration {
    pub results: Vec<PlumbingGraph>,
    pub budget: usize,
    /// Some P-resolution needed the full budget, so larger budgets may find more.
    pub partial: bool,
}

/// Blow-ups of a graph: a `-1` vertex on an edge, or a `-1` leaf on a vertex.
pub fn graph_blow_ups(g: &PlumbingGraph) -> Vec<PlumbingGraph> {
    let mut out = Vec::new();
    let fresh = g.next_id();
    for &(a, b) in &g.edges {
        let mut h = g.with_decorations(Vec::new());
        h.edges.retain(|&e| e != (a, b));
        h.add_vertex(fresh, -1).unwrap();
        h.set_degree(a, g.degree(a) - 1);
        h.set_degree(b, g.degree(b) - 1);
        h.add_edge(a, fresh).unwrap();
        h.add_edge(fresh, b).unwrap();
        out.push(h);
    }
    for v in g.ids() {
        let mut h = g.with_decorations(Vec::new());
        h.add_vertex(fresh, -1).unwrap();
        h.set_degree(v, g.degree(v) - 1);
        h.add_edge(v, fresh).unwrap();
        out.push(h);
    }
    out
}

/// Drops the decorations and blows down `-1` vertices of valence at most 2
/// until none is left. Surviving vertices keep their ids.
pub fn blow_down_all(g: &PlumbingGraph) -> PlumbingGraph {
    let mut h = g.with_decorations(Vec::new());
    while let Some(v) = h.ids().into_iter().find(|&v| h.degree(v) == -1 && h.valence(v) <= 2) {
        let nb = h.neighbors(v);
        for &u in &nb {
            h.set_degree(u, h.degree(u) + 1);
        }
        h.vertices.retain(|x| x.id != v);
        h.edges.retain(|&(a, b)| a != v && b != v);
        if let [a, b] = nb[..] {
            h.add_edge(a, b).expect("tree stays a tree");
        }
    }
    h
}

/// Canonical text of a decorated graph in which vertices with id at most
/// `original` keep their labels and inserted vertices are anonymous.
fn canonical_form(g: &PlumbingGraph, original: VertexId) -> String {
    let decorated: BTreeSet<VertexId> = g.decorations.iter().flatten().copied().collect();
    let root = g.ids().into_iter().filter(|&v| v <= original).min();
    let Some(root) = root else {
        return g.to_string();
    };
    fn enc(
        g: &PlumbingGraph,
        v: VertexId,
        parent: Option<VertexId>,
        original: VertexId,
        dec: &BTreeSet<VertexId>,
    ) -> String {
        let mut kids: Vec<String> = g
            .neighbors(v)
            .into_iter()
            .filter(|&u| Some(u) != parent)
            .map(|u| enc(g, u, Some(v), original, dec))
            .collect();
        kids.sort();
        let label = if v <= original { v.to_string() } else { "*".into() };
        let mark = if dec.contains(&v) { "!" } else { "" };
        format!("{label}:{}{mark}({})", g.degree(v), kids.join(","))
    }
    enc(g, root, None, original, &decorated)
}

/// Valid decorated versions of one graph, without redundant copies in which
/// a `-2` curve of zero canonical degree is left outside an adjacent
/// rational double point.
fn decorations_of(g: &PlumbingGraph) -> Vec<PlumbingGraph> {
    let candidates: Vec<VertexId> = g.ids().into_iter().filter(|&v| g.b(v) >= 2).collect();
    assert!(candidates.len() < 24, "graph too large for exhaustive decoration");
    let mut valid: BTreeMap<u32, PlumbingGraph> = BTreeMap::new();
    for mask in 0u32..(1 << candidates.len()) {
        let set: BTreeSet<VertexId> = candidates
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect();
        let Some(decs) = split_into_paths(g, &set) else {
            continue;
        };
        let d = g.with_decorations(decs);
        if validate_p_resolution(&d).ok {
            valid.insert(mask, d);
        }
    }
    let index: BTreeMap<VertexId, usize> =
        candidates.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    valid
        .iter()
        .filter(|(mask, d)| {
            let k = decorated_coefficients(d);
            !candidates.iter().any(|&v| {
                let bit = 1u32 << index[&v];
                *mask & bit == 0
                    && g.b(v) == 2
                    && k_degree(d, &k, v).is_zero()
                    && valid.contains_key(&(*mask | bit))
            })
        })
        .map(|(_, d)| d.clone())
        .collect()
}

fn decorated_coefficients(g: &PlumbingGraph) -> BTreeMap<VertexId, BigRational> {
    let mut k = BTreeMap::new();
    for d in &g.decorations {
        if let Some(ks) = chain_coefficients(&g.chain_of(d)) {
            for (&v, kv) in d.iter().zip(ks) {
                k.insert(v, kv);
            }
        }
    }
    k
}

/// Connected components of `set`, each ordered as a path with the smaller
/// end first; `None` when some component is not a path.
fn split_into_paths(g: &PlumbingGraph, set: &BTreeSet<VertexId>) -> Option<Vec<Vec<VertexId>>> {
    let mut left = set.clone();
    let mut out = Vec::new();
    while let Some(&s) = left.iter().next() {
        let mut comp = BTreeSet::new();
        let mut stack = vec![s];
        comp.insert(s);
        while let Some(v) = stack.pop() {
            for u in g.neighbors(v) {
                if left.contains(&u) && comp.insert(u) {
                    stack.push(u);
                }
            }
        }
        for v in &comp {
            left.remove(v);
        }
        let mut path = g.as_path(&comp)?;
        if path.first() > path.last() {
            path.reverse();
        }
        out.push(path);
    }
    Some(out)
}

/// All P-resolutions of `g` and of its iterated blow-ups (at most `budget`
/// of them), found by exhaustive decoration. Original vertices keep their
/// identity when deduplicating; inserted vertices do not.
pub fn enumerate_p_resolutions(g: &PlumbingGraph, budget: usize) -> PresEnumeration {
    let original = g.next_id() - 1;
    let mut seen_graphs: BTreeSet<String> = BTreeSet::new();
    let mut levels: Vec<Vec<PlumbingGraph>> = vec![vec![g.with_decorations(Vec::new())]];
    seen_graphs.insert(canonical_form(&levels[0][0], original));
    for _ in 0..budget {
        let mut next = Vec::new();
        for h in levels.last().unwrap() {
            for b in graph_blow_ups(h) {
                if seen_graphs.insert(canonical_form(&b, original)) {
                    next.push(b);
                }
            }
        }
        levels.push(next);
    }
    let mut results = Vec::new();
    let mut seen = BTreeSet::new();
    let mut partial = false;
    let deepest = levels.len() - 1;
    for (depth, level) in levels.iter().enumerate() {
        let found: Vec<Vec<PlumbingGraph>> = par::map(level, decorations_of);
        for d in found.into_iter().flatten() {
            if seen.insert(canonical_form(&d, original)) {
                if depth == deepest && depth > 0 {
                    partial = true;
                }
                results.push(d);
            }
        }
    }
    PresEnumeration {
        results,
        budget,
        partial,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlumbingInvariants {
    pub euler_char: i64,
    pub h1: AbelianGroup,
    /// `(positive, negative, zero)` eigenvalue counts of the intersection form.
    pub signature: (usize, usize, usize),
    pub intersection_matrix: Vec<Vec<i64>>,
}

/// Invariants of the plumbed 4-manifold of spheres.
pub fn plumbing_invariants(g: &PlumbingGraph) -> PlumbingInvariants {
    let v = g.vertices.len() as i64;
    let e = g.edges.len() as i64;
    let c = g.components() as i64;
    let loops = e - v + c;
    let m = g.intersection_matrix();
    PlumbingInvariants {
        euler_char: c + v - loops,
        h1: AbelianGroup::free(loops as usize),
        signature: inertia(&m),
        intersection_matrix: m,
    }
}

/// Inertia of a symmetric integer matrix by symmetric elimination.
pub fn inertia(m: &[Vec<i64>]) -> (usize, usize, usize) {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    let mut alive: Vec<usize> = (0..n).collect();
    while !alive.is_empty() {
        let diag = alive.iter().copied().find(|&i| !a[i][i].is_zero());
        let (p, q) = match diag {
            Some(i) => (i, None),
            None => match alive
                .iter()
                .flat_map(|&i| alive.iter().map(move |&j| (i, j)))
                .find(|&(i, j)| i != j && !a[i][j].is_zero())
            {
                Some((i, j)) => (i, Some(j)),
                None => {
                    zero += alive.len();
                    break;
                }
            },
        };
        match q {
            None => {
                let piv = a[p][p].clone();
                if piv.is_positive() {
                    pos += 1
                } else {
                    neg += 1
                }
                alive.retain(|&x| x != p);
                for &i in &alive {
                    let f = &a[i][p] / &piv;
                    for &j in &alive {
                        let t = &f * &a[p][j];
                        a[i][j] -= t;
                    }
                }
            }
            Some(q) => {
                // replace row/col p by p + q to create a nonzero diagonal
                for &j in &alive {
                    let t = a[q][j].clone();
                    a[p][j] += t;
                }
                for &i in &alive {
                    let t = a[i][q].clone();
                    a[i][p] += t;
                }
            }
        }
    }
    (pos, neg, zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn cyclic_builders() {
        let g = build_cyclic(9, 2).unwrap();
        assert_eq!(g.chain_of(&[1, 2]), vec![5, 2]);
        assert_eq!(build_cyclic(7, 1).unwrap().vertices.len(), 1);
        assert_eq!(build_cyclic(8, 3).unwrap().chain_of(&[1, 2]), vec![3, 3]);
        assert!(build_cyclic(8, 2).is_err());
    }

    #[test]
    fn dihedral_builders() {
        let g = build_dihedral(9, 2).unwrap();
        assert_eq!(g.b(1), 5);
        assert_eq!(g.neighbors(1), vec![2, 3, 4]);
        assert_eq!(g.vertices.len(), 4);
        let g = build_dihedral(5, 3).unwrap();
        assert_eq!((g.b(1), g.b(4)), (2, 3));
        assert!(g.is_negative_definite());
    }

    #[test]
    fn stars() {
        let single = build_star(3, &[], &[], &[]).unwrap();
        assert_eq!(single.vertices.len(), 1);
        let d4 = build_typed_star(StarType::Dihedral, 2, &[2]).unwrap();
        assert_eq!(d4.vertices.len(), 4);
        assert!(d4.is_negative_definite());
        let t = build_typed_star(StarType::ThreeOne, 5, &[3]).unwrap();
        assert_eq!(star_shape(&t), Some((StarType::ThreeOne, 5, vec![3])));
    }

    #[test]
    fn bad_vertex() {
        let a = build_star(5, &[2], &[3], &[]).unwrap();
        assert_eq!(has_bad_vertex(&a), None);
        let b = build_star(2, &[2], &[3], &[2]).unwrap();
        assert_eq!(has_bad_vertex(&b), Some(1));
        assert_eq!(has_bad_vertex(&build_cyclic(2, 1).unwrap()), None);
    }

    #[test]
    fn coefficients() {
        let k = canonical_coefficients(&build_cyclic(4, 1).unwrap()).unwrap();
        assert_eq!(k.k[&1], r(-1, 2));
        let k = canonical_coefficients(&build_cyclic(2, 1).unwrap()).unwrap();
        assert_eq!(k.k[&1], r(0, 1));
        // -2 - -5 is 9/5
        let k = canonical_coefficients(&build_cyclic(9, 5).unwrap()).unwrap();
        assert_eq!((k.k[&1].clone(), k.k[&2].clone()), (r(-1, 3), r(-2, 3)));
    }

    #[test]
    fn validation_of_dihedral_nine_two() {
        let g = build_dihedral(9, 2).unwrap();
        assert!(validate_p_resolution(&g).ok);
        let central = g.with_decorations(vec![vec![1]]);
        let v = validate_p_resolution(&central);
        assert!(!v.ok);
        assert!(v.diagnostics[0].contains("neither class T"));
        assert!(validate_p_resolution(&g.with_decorations(vec![vec![2, 1]])).ok);
        assert!(!validate_p_resolution(&g.with_decorations(vec![vec![2, 1], vec![3]])).ok);
    }

    #[test]
    fn enumeration_counts() {
        let g = build_dihedral(9, 2).unwrap();
        assert_eq!(enumerate_p_resolutions(&g, 0).results.len(), 4);
        let g = build_cyclic(4, 1).unwrap();
        assert_eq!(enumerate_p_resolutions(&g, 0).results.len(), 2);
    }

    #[test]
    fn text_round_trip() {
        let g = build_dihedral(9, 2).unwrap().with_decorations(vec![vec![2, 1]]);
        assert_eq!(PlumbingGraph::parse(&g.to_string()).unwrap(), g);
        assert!(PlumbingGraph::parse("vertex x 2").is_err());
    }

    #[test]
    fn invariants_of_trees() {
        let inv = plumbing_invariants(&build_dihedral(9, 2).unwrap());
        assert_eq!(inv.euler_char, 5);
        assert!(inv.h1.is_trivial());
        assert_eq!(inv.signature, (0, 4, 0));
        assert_eq!(plumbing_invariants(&build_cyclic(4, 1).unwrap()).euler_char, 2);
    }

    #[test]
    fn inertia_handles_zero_diagonal() {
        assert_eq!(inertia(&[vec![0, 1], vec![1, 0]]), (1, 1, 0));
        assert_eq!(inertia(&[vec![0, 0], vec![0, 0]]), (0, 0, 2));
    }
}
