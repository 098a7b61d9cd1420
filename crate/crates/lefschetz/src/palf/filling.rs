//! Fillings from P-resolutions. The minimal-resolution word is rewritten by
//! one certified substitution per class-T chain that has to be smoothed.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::extend::{extend_factorization, HoleMap};
use super::genus1::{genus1_setup, handle_rewrite, rewrite_script, Genus1Layout, Genus1Setup};
use super::gm::{gay_mark_word, gm_chain_word, Boundary, GmLayout, GmWord};
use super::{choose_genus, Label, PalfDescription, PalfWord};
use crate::chains::{self, ClassT};
use crate::invariants;
use crate::mcg::genus1::{replay, round_name};
use crate::mcg::{mc_equal, Curve, Factorization, Genus1Factorization, NamedCurve, Page};
use crate::plumbing::{PlumbingGraph, VertexId};
use crate::relations::{rbd_relation, Evidence, SubstitutionCertificate};
use crate::Error;

pub use crate::plumbing::blow_down_all;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FillingCase {
    /// Nothing to substitute.
    Minimal,
    /// Decorations on one leaf-to-leaf path, planar page.
    Linear,
    /// Decorations off every such path, planar page.
    Central,
    /// Genus-one page, substitutions inside the planar part.
    HandleLinear,
    /// Genus-one page, substitution after a handle rewrite.
    HandleRewrite,
}

impl fmt::Display for FillingCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FillingCase::Minimal => "minimal",
            FillingCase::Linear => "linear",
            FillingCase::Central => "central",
            FillingCase::HandleLinear => "genus-one linear",
            FillingCase::HandleRewrite => "genus-one rewrite",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug)]
pub struct FillingResult {
    pub palf: PalfDescription,
    pub certificates: Vec<SubstitutionCertificate>,
    pub case: FillingCase,
    /// Euler characteristic the smoothing must have.
    pub expected_euler: i64,
}

/// A decorated chain of the P-resolution.
#[derive(Clone, Debug)]
struct TChain {
    vertices: Vec<VertexId>,
    bs: Vec<i64>,
    drop: usize,
}

fn t_chains(y: &PlumbingGraph) -> Result<(Vec<TChain>, usize), Error> {
    let mut out = Vec::new();
    let mut total = 0;
    for d in &y.decorations {
        let set: BTreeSet<VertexId> = d.iter().copied().collect();
        let path = y
            .as_path(&set)
            .ok_or_else(|| Error::Domain(format!("decoration {d:?} is not a path")))?;
        let bs = y.chain_of(&path);
        match chains::is_class_t(&bs) {
            ClassT::RationalDoublePoint => {}
            ClassT::Wahl { d, .. } => {
                let drop = bs.len() + 1 - d as usize;
                total += drop;
                out.push(TChain {
                    vertices: path,
                    bs,
                    drop,
                });
            }
            ClassT::No => {
                return Err(Error::Domain(format!(
                    "decoration {} is not of class T",
                    chains::format_chain(&bs)
                )))
            }
        }
    }
    Ok((out, total))
}

/// Leaves and valence-3 vertices aside, a rough shape fingerprint.
fn fingerprint(g: &PlumbingGraph) -> Vec<(i64, Vec<i64>)> {
    let mut f: Vec<(i64, Vec<i64>)> = g
        .ids()
        .into_iter()
        .map(|v| {
            let mut nb: Vec<i64> = g.neighbors(v).iter().map(|&u| g.degree(u)).collect();
            nb.sort_unstable();
            (g.degree(v), nb)
        })
        .collect();
    f.sort();
    f
}

/// True when one leaf-to-leaf path carries every decorated vertex.
fn on_one_path(y: &PlumbingGraph) -> bool {
    let dec: BTreeSet<VertexId> = y.decorations.iter().flatten().copied().collect();
    if dec.is_empty() {
        return true;
    }
    let leaves: Vec<VertexId> = y.ids().into_iter().filter(|&v| y.valence(v) <= 1).collect();
    for (i, &a) in leaves.iter().enumerate() {
        for &b in &leaves[i..] {
            let p = tree_path(y, a, b);
            if dec.iter().all(|v| p.contains(v)) {
                return true;
            }
        }
    }
    false
}

fn tree_path(g: &PlumbingGraph, a: VertexId, b: VertexId) -> Vec<VertexId> {
    let mut parent: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut stack = vec![a];
    let mut seen = BTreeSet::from([a]);
    while let Some(v) = stack.pop() {
        for u in g.neighbors(v) {
            if seen.insert(u) {
                parent.insert(u, v);
                stack.push(u);
            }
        }
    }
    let mut p = vec![b];
    let mut cur = b;
    while cur != a {
        match parent.get(&cur) {
            Some(&u) => {
                p.push(u);
                cur = u;
            }
            None => return Vec::new(),
        }
    }
    p
}

/// Subsets of chains whose drops add up to `need`: those with a chain through
/// a vertex of valence three first, then larger ones first.
fn subsets(chs: &[TChain], y: &PlumbingGraph, need: usize) -> Vec<Vec<usize>> {
    let k = chs.len();
    let central = |i: usize| chs[i].vertices.iter().any(|&v| y.valence(v) >= 3);
    let mut out: Vec<Vec<usize>> = (0..1u32 << k)
        .map(|m| (0..k).filter(|&i| m >> i & 1 == 1).collect::<Vec<_>>())
        .filter(|s| s.iter().map(|&i| chs[i].drop).sum::<usize>() == need)
        .collect();
    out.sort_by_key(|s| (!s.iter().any(|&i| central(i)), std::cmp::Reverse(s.len()), s.clone()));
    out
}

/// A chain placed inside a word of round curves.
#[derive(Clone, Debug)]
struct Placed {
    oriented: Vec<i64>,
    map: HoleMap,
    used: Vec<usize>,
}

const SEARCH_CAP: usize = 200_000;

struct Search<'a> {
    base: &'a [Curve],
    holes: usize,
    tries: usize,
}

impl Search<'_> {
    fn available(&self, c: &Curve, taken: &[bool]) -> Option<usize> {
        (0..self.base.len()).find(|&i| !taken[i] && self.base[i] == *c)
    }

    fn run(&mut self, chs: &[&[i64]], taken: &mut Vec<bool>) -> Option<Vec<Placed>> {
        let Some((first, rest)) = chs.split_first() else {
            return Some(Vec::new());
        };
        let mut orients = vec![first.to_vec()];
        let rev: Vec<i64> = first.iter().rev().copied().collect();
        if rev != *first {
            orients.push(rev);
        }
        for oriented in orients {
            let gm = gm_chain_word(&oriented).ok()?;
            let hc = gm.holes;
            for lo in 1..=self.holes {
                for hi in lo + hc - 1..=self.holes {
                    if self.available(&Curve::round(lo, hi), taken).is_none() {
                        continue;
                    }
                    let mut blocks = Vec::new();
                    if let Some(found) = self.blocks(&gm, lo, hi, &mut blocks, &oriented, rest, taken) {
                        return Some(found);
                    }
                    if self.tries > SEARCH_CAP {
                        return None;
                    }
                }
            }
        }
        None
    }

    #[allow(clippy::too_many_arguments)]
    fn blocks(
        &mut self,
        gm: &GmWord,
        lo: usize,
        hi: usize,
        blocks: &mut Vec<(usize, usize)>,
        oriented: &[i64],
        rest: &[&[i64]],
        taken: &mut Vec<bool>,
    ) -> Option<Vec<Placed>> {
        self.tries += 1;
        if self.tries > SEARCH_CAP {
            return None;
        }
        let k = blocks.len();
        let hc = gm.holes;
        if k == hc {
            if blocks.last().map(|b| b.1) != Some(hi) {
                return None;
            }
            let map = HoleMap::new(self.holes, blocks.clone()).ok()?;
            let mut used = Vec::new();
            for c in &gm.curves {
                let img = Curve::round(map.blocks[c.lo - 1].0, map.blocks[c.hi - 1].1);
                match self.available(&img, taken) {
                    Some(i) => {
                        taken[i] = true;
                        used.push(i);
                    }
                    None => {
                        for &i in &used {
                            taken[i] = false;
                        }
                        return None;
                    }
                }
            }
            if let Some(mut more) = self.run(rest, taken) {
                more.insert(
                    0,
                    Placed {
                        oriented: oriented.to_vec(),
                        map,
                        used,
                    },
                );
                return Some(more);
            }
            for &i in &used {
                taken[i] = false;
            }
            return None;
        }
        let start = blocks.last().map_or(lo, |b| b.1 + 1);
        let left = hc - k;
        if start + left - 1 > hi {
            return None;
        }
        let single = gm.curves.iter().any(|c| c.lo == k + 1 && c.hi == k + 1);
        for end in start..=hi + 1 - left {
            if single && self.available(&Curve::round(start, end), taken).is_none() {
                continue;
            }
            blocks.push((start, end));
            let r = self.blocks(gm, lo, hi, blocks, oriented, rest, taken);
            blocks.pop();
            if r.is_some() {
                return r;
            }
        }
        None
    }
}

fn place(base: &[Curve], holes: usize, chs: &[&[i64]]) -> Option<Vec<Placed>> {
    let mut s = Search {
        base,
        holes,
        tries: 0,
    };
    s.run(chs, &mut vec![false; base.len()])
}

/// Certificates for placed chains, extended to the big page.
fn certify_placed(placed: &[Placed], base: &[Curve], holes: usize) -> Result<Vec<SubstitutionCertificate>, Error> {
    placed
        .iter()
        .map(|p| {
            let model = rbd_relation(&p.oriented)?;
            let (PalfWord::Planar(l), PalfWord::Planar(r)) = (&model.lhs, &model.rhs) else {
                unreachable!("planar model")
            };
            let lhs = extend_factorization(l, &p.map)?;
            let rhs = extend_factorization(r, &p.map)?;
            let mut want: Vec<&Curve> = p.used.iter().map(|&i| &base[i]).collect();
            let mut got: Vec<&Curve> = lhs.word.iter().collect();
            want.sort();
            got.sort();
            if want != got {
                return Err(Error::Certificate("extended left side differs from the placed curves".into()));
            }
            let name = format!("{} on {} holes", model.name, holes);
            SubstitutionCertificate::certify(&name, lhs, rhs, Some(p.oriented.clone()))
        })
        .collect()
}

/// Filling PALF for the smoothing of `pres`, a P-resolution of the singularity
/// whose minimal resolution is `g`.
pub fn filling_palf(g: &PlumbingGraph, pres: &PlumbingGraph) -> Result<FillingResult, Error> {
    let a = blow_down_all(pres);
    if fingerprint(&a) != fingerprint(&g.with_decorations(Vec::new())) {
        return Err(Error::Domain("the P-resolution does not blow down to the given graph".into()));
    }
    let (chs, total) = t_chains(pres)?;
    let extra = pres.ids().len() - a.ids().len();
    let expected_euler = 1 + pres.ids().len() as i64 - total as i64;
    let need = total
        .checked_sub(extra)
        .ok_or_else(|| Error::Unsupported("more blow-ups than the chains can absorb".into()))?;
    let subs = subsets(&chs, pres, need);
    if subs.is_empty() {
        return Err(Error::Unsupported(format!("no set of chains drops {need} twists")));
    }
    let linear = on_one_path(pres);
    let out = if choose_genus(&a) == 0 {
        planar_filling(&a, &chs, &subs, linear)?
    } else {
        genus1_filling(&a, pres, &chs, &subs)?
    };
    let chi = out.palf.euler_char();
    if chi != expected_euler {
        return Err(Error::Unsupported(format!(
            "smoothing needs Euler characteristic {expected_euler}, construction gives {chi}"
        )));
    }
    Ok(FillingResult {
        expected_euler,
        ..out
    })
}

fn planar_filling(a: &PlumbingGraph, chs: &[TChain], subs: &[Vec<usize>], linear: bool) -> Result<FillingResult, Error> {
    let layouts = GmLayout::all(a);
    let default = GmLayout::default_for(a)?;
    let mut words = vec![gay_mark_word(a, &default)?];
    for l in layouts.iter().filter(|l| **l != default) {
        words.push(gay_mark_word(a, l)?);
    }
    for sub in subs {
        let picked: Vec<&[i64]> = sub.iter().map(|&i| chs[i].bs.as_slice()).collect();
        for w in &words {
            let Some(placed) = place(&w.curves, w.holes, &picked) else { continue };
            let certs = certify_placed(&placed, &w.curves, w.holes)?;
            let used: BTreeSet<usize> = placed.iter().flat_map(|p| p.used.iter().copied()).collect();
            let mut curves = Vec::new();
            let mut labels = Vec::new();
            for (i, c) in w.curves.iter().enumerate() {
                if !used.contains(&i) {
                    curves.push(c.clone());
                    labels.push(w.labels[i].clone());
                }
            }
            for (j, c) in certs.iter().enumerate() {
                let PalfWord::Planar(r) = &c.rhs else { unreachable!() };
                for (pos, cv) in r.word.iter().enumerate() {
                    curves.push(cv.clone());
                    labels.push(Label::Substituted { cert: j, pos });
                }
            }
            if !mc_equal(&curves, &w.curves, w.holes) {
                return Err(Error::Certificate("filling word changed the monodromy".into()));
            }
            let f = Factorization::new(Page::planar(w.holes), curves);
            let case = match (sub.is_empty(), linear) {
                (true, _) => FillingCase::Minimal,
                (false, true) => FillingCase::Linear,
                (false, false) => FillingCase::Central,
            };
            return Ok(FillingResult {
                palf: PalfDescription::planar(f, labels),
                certificates: certs,
                case,
                expected_euler: 0,
            });
        }
    }
    Err(Error::Unsupported("no placement of the class-T chains in any layout".into()))
}

fn genus1_filling(
    a: &PlumbingGraph,
    pres: &PlumbingGraph,
    chs: &[TChain],
    subs: &[Vec<usize>],
) -> Result<FillingResult, Error> {
    let setups: Vec<Genus1Setup> = [Genus1Layout::VariableEnd, Genus1Layout::FixedEnd]
        .into_iter()
        .filter_map(|l| genus1_setup(a, l).ok())
        .collect();
    if setups.is_empty() {
        return Err(Error::Unsupported("no genus-one word for this graph".into()));
    }
    let mut last_err = Error::Unsupported("no genus-one substitution found".into());
    for sub in subs {
        for s in &setups {
            let touches_excluded = sub
                .iter()
                .any(|&i| chs[i].vertices.iter().any(|v| s.excluded.contains(v)));
            let r = if sub.is_empty() {
                Ok(FillingResult {
                    palf: s.palf()?,
                    certificates: Vec::new(),
                    case: FillingCase::Minimal,
                    expected_euler: 0,
                })
            } else if touches_excluded {
                if sub.len() == 1 {
                    rewrite_filling(s, pres, &chs[sub[0]])
                } else {
                    Err(Error::Unsupported("several chains next to the handle".into()))
                }
            } else {
                handle_linear_filling(s, &sub.iter().map(|&i| chs[i].bs.as_slice()).collect::<Vec<_>>())
            };
            match r {
                Ok(res) => return Ok(res),
                Err(e @ Error::Certificate(_)) => return Err(e),
                Err(e) => last_err = e,
            }
        }
    }
    Err(last_err)
}

fn named_planar(page: &crate::mcg::HandlePage, c: &Curve, name: String) -> NamedCurve {
    NamedCurve {
        name,
        class: page.planar_class(&c.encloses(page.planar_holes)),
        rotation: Some(invariants::planar_rotation_number()),
        planar: Some(c.clone()),
    }
}

fn handle_linear_filling(s: &Genus1Setup, picked: &[&[i64]]) -> Result<FillingResult, Error> {
    let reg = &s.registry;
    let page = reg.page;
    let h = page.planar_holes;
    let first_planar = s.word.iter().position(|w| w.base != "x" && w.ops.is_empty()).unwrap_or(s.word.len());
    let base: Vec<Curve> = s.word[first_planar..]
        .iter()
        .map(|w| reg.atoms[&w.base].planar.clone().expect("planar atom"))
        .collect();
    let placed = place(&base, h, picked).ok_or_else(|| Error::Unsupported("chains do not fit the planar part".into()))?;
    let models = certify_placed(&placed, &base, h)?;
    let used: BTreeSet<usize> = placed.iter().flat_map(|p| p.used.iter().copied()).collect();
    let full = s.factorization()?;
    let mut word: Vec<NamedCurve> = full.word[..first_planar].to_vec();
    let mut labels: Vec<Label> = s.labels[..first_planar].to_vec();
    let mut rotation: Vec<Option<i64>> = s.rotation[..first_planar].to_vec();
    for (i, _) in base.iter().enumerate() {
        if !used.contains(&i) {
            word.push(full.word[first_planar + i].clone());
            labels.push(s.labels[first_planar + i].clone());
            rotation.push(s.rotation[first_planar + i]);
        }
    }
    let mut certs = Vec::new();
    let mut k = 0;
    for (j, m) in models.into_iter().enumerate() {
        let (PalfWord::Planar(l), PalfWord::Planar(r)) = (&m.lhs, &m.rhs) else { unreachable!() };
        let lw: Vec<NamedCurve> = l.word.iter().map(|c| named_planar(&page, c, curve_name(c))).collect();
        let mut rw = Vec::new();
        for (pos, c) in r.word.iter().enumerate() {
            k += 1;
            let n = named_planar(&page, c, format!("ρ{k}"));
            word.push(n.clone());
            labels.push(Label::Substituted { cert: j, pos });
            rotation.push(n.rotation);
            rw.push(n);
        }
        let (name, chain) = (m.name.clone(), m.chain.clone());
        let cert = homology_certificate(&name, page, lw, rw, chain, m, None)?;
        certs.push(cert);
    }
    let f = Genus1Factorization { page, word };
    if f.product_matrix() != full.product_matrix() {
        return Err(Error::Certificate("filling word changed the homology monodromy".into()));
    }
    Ok(FillingResult {
        palf: PalfDescription {
            word: PalfWord::Genus1(f),
            labels,
            rotation,
            vertex_classes: BTreeMap::new(),
        },
        certificates: certs,
        case: FillingCase::HandleLinear,
        expected_euler: 0,
    })
}

fn curve_name(c: &Curve) -> String {
    if c.is_round() {
        round_name(c.lo, c.hi)
    } else {
        c.to_string()
    }
}

fn homology_certificate(
    name: &str,
    page: crate::mcg::HandlePage,
    lhs: Vec<NamedCurve>,
    rhs: Vec<NamedCurve>,
    chain: Option<Vec<i64>>,
    model: SubstitutionCertificate,
    script: Option<crate::mcg::genus1::ScriptReplay>,
) -> Result<SubstitutionCertificate, Error> {
    let mut c = SubstitutionCertificate::check(
        name,
        PalfWord::Genus1(Genus1Factorization { page, word: lhs }),
        PalfWord::Genus1(Genus1Factorization { page, word: rhs }),
        chain,
    )?;
    if let Evidence::Homology { model: m, script: s, .. } = &mut c.evidence {
        *m = Some(Box::new(model));
        *s = script;
    }
    c.verify()?;
    Ok(c)
}

/// Boundary components of the page of a planar word, holes then outer.
fn transport_holes(
    enclosed: &[usize],
    map: &BTreeMap<Boundary, Boundary>,
    holes: usize,
) -> Vec<usize> {
    let img: BTreeSet<Boundary> = enclosed.iter().map(|&k| map[&Boundary::Hole(k)]).collect();
    let set: BTreeSet<Boundary> = if img.contains(&Boundary::Outer) {
        (1..=holes).map(Boundary::Hole).chain([Boundary::Outer]).filter(|b| !img.contains(b)).collect()
    } else {
        img
    };
    set.into_iter()
        .map(|b| match b {
            Boundary::Hole(k) => k,
            Boundary::Outer => unreachable!("outer removed"),
        })
        .collect()
}

fn rewrite_filling(s: &Genus1Setup, pres: &PlumbingGraph, ch: &TChain) -> Result<FillingResult, Error> {
    let run = handle_rewrite(s)?;
    let reg = &run.registry;
    let page = reg.page;
    let h = page.planar_holes;
    let n = s.word.len();
    let mut moves = rewrite_script(run.l, h);
    moves.push(crate::mcg::genus1::Move::Forward(n - 2));
    let full = replay(reg, &s.word, &moves)?;
    if !full.all_ok() {
        return Err(Error::Certificate("rewrite changed the homology product".into()));
    }
    let w = &full.result;
    let block = &w[1..n - 1];
    if block.iter().any(|x| !x.ops.is_empty()) {
        return Err(Error::Unsupported("rewritten block is not planar".into()));
    }
    let s_curves: Vec<Curve> = block
        .iter()
        .map(|x| reg.atoms[&x.base].planar.clone().expect("planar atom"))
        .collect();

    // the chain through the center, rooted there
    let center = s.center;
    let deep = s.path[0];
    let top = s.excluded[0];
    let want: BTreeSet<VertexId> = [deep, center, top].into();
    let have: BTreeSet<VertexId> = ch.vertices.iter().copied().collect();
    if want != have {
        return Err(Error::Unsupported("the chain through the center has another shape".into()));
    }
    let bs = [pres.b(deep), pres.b(center), pres.b(top)];
    let mut cg = PlumbingGraph::new();
    cg.add_vertex(deep, -bs[0])?;
    cg.add_vertex(center, -bs[1])?;
    cg.add_vertex(top, -bs[2])?;
    cg.add_edge(deep, center)?;
    cg.add_edge(center, top)?;
    let layout = GmLayout {
        root: center,
        children: BTreeMap::from([(center, vec![deep, top]), (deep, vec![]), (top, vec![])]),
    };
    let sm = gay_mark_word(&cg, &layout)?;
    let mut a_sorted = sm.curves.clone();
    let mut b_sorted = s_curves.clone();
    a_sorted.sort();
    b_sorted.sort();
    if sm.holes != h || a_sorted != b_sorted {
        return Err(Error::Unsupported("rewritten block is not the chain word".into()));
    }

    // planar model rooted at the top, boundaries matched vertex by vertex
    let model = rbd_relation(&bs)?;
    let em = gm_chain_word(&bs)?;
    let ids = [deep, center, top];
    let mut bmap: BTreeMap<Boundary, Boundary> = BTreeMap::new();
    for (i, &v) in ids.iter().enumerate() {
        let from = &em.boundaries[&(i + 1)];
        let to = &sm.boundaries[&v];
        if from.len() != to.len() {
            return Err(Error::Certificate("boundary counts differ between models".into()));
        }
        for (x, y) in from.iter().zip(to) {
            bmap.insert(*x, *y);
        }
    }
    let (PalfWord::Planar(ml), PalfWord::Planar(mr)) = (&model.lhs, &model.rhs) else { unreachable!() };
    let eh = ml.page.holes;
    let mut moved_lhs: Vec<Vec<i64>> = ml
        .word
        .iter()
        .map(|c| page.planar_class(&transport_holes(&c.encloses(eh), &bmap, h)))
        .collect();
    let mut s_classes: Vec<Vec<i64>> = s_curves.iter().map(|c| page.planar_class(&c.encloses(h))).collect();
    moved_lhs.sort();
    s_classes.sort();
    if moved_lhs != s_classes {
        return Err(Error::Certificate("transported left side differs from the block".into()));
    }
    let lhs: Vec<NamedCurve> = block.iter().map(|x| reg.realize(x)).collect::<Result<_, _>>()?;
    let rhs: Vec<NamedCurve> = mr
        .word
        .iter()
        .enumerate()
        .map(|(k, c)| NamedCurve {
            name: format!("ρ{}", k + 1),
            class: page.planar_class(&transport_holes(&c.encloses(eh), &bmap, h)),
            rotation: Some(invariants::planar_rotation_number()),
            planar: None,
        })
        .collect();
    let name = format!("{} after handle rewrite", model.name);
    let cert = homology_certificate(&name, page, lhs, rhs.clone(), Some(bs.to_vec()), model, Some(full.clone()))?;

    let first = reg.realize(&w[0])?;
    let last = reg.realize(&w[n - 1])?;
    let mut word = vec![first];
    let mut labels = vec![Label::Rewritten];
    let mut rotation = vec![None];
    for (pos, c) in rhs.into_iter().enumerate() {
        rotation.push(c.rotation);
        word.push(c);
        labels.push(Label::Substituted { cert: 0, pos });
    }
    word.push(last);
    labels.push(Label::Rewritten);
    rotation.push(None);
    let f = Genus1Factorization { page, word };
    let before = reg.realize_word(w)?;
    if f.product_matrix() != before.product_matrix() {
        return Err(Error::Certificate("substitution changed the homology monodromy".into()));
    }
    Ok(FillingResult {
        palf: PalfDescription {
            word: PalfWord::Genus1(f),
            labels,
            rotation,
            vertex_classes: BTreeMap::new(),
        },
        certificates: vec![cert],
        case: FillingCase::HandleRewrite,
        expected_euler: 0,
    })
}
