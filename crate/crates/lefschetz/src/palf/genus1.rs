//! Genus-one words on star graphs whose center is a bad vertex. The maximal
//! linear subgraph gets its planar Gay–Mark word; a one-handle attached next
//! to the deepest leaf carries the extra vertices.

use std::collections::BTreeMap;

use super::gm::{gay_mark_word, GmLayout, GmWord};
use super::{Label, PalfDescription, PalfWord};
use crate::invariants::ClassMap;
use crate::mcg::genus1::{replay, round_name, Atom, Move, Registry, ScriptReplay, Sym};
use crate::mcg::{Genus1Factorization, HandlePage};
use crate::plumbing::{star_shape, PlumbingGraph, StarType, VertexId};
use crate::Error;

/// Which end of the linear subgraph carries the outer boundary.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Genus1Layout {
    /// Far end of the variable arm; the fixed leaf is deepest.
    #[default]
    VariableEnd,
    /// The fixed leaf; the far end of the variable arm is deepest.
    FixedEnd,
}

/// Everything the genus-one constructions share.
#[derive(Clone, Debug)]
pub struct Genus1Setup {
    pub kind: StarType,
    pub center: VertexId,
    /// Linear subgraph from the deepest leaf to the root.
    pub path: Vec<VertexId>,
    /// Vertices off the linear subgraph, nearest the center first.
    pub excluded: Vec<VertexId>,
    pub gm: GmWord,
    pub registry: Registry,
    pub word: Vec<Sym>,
    pub labels: Vec<Label>,
    pub rotation: Vec<Option<i64>>,
    pub classes: ClassMap,
    /// Neck of the deepest leaf and its last free hole.
    pub orange: String,
    pub olive: String,
}

fn arms(g: &PlumbingGraph, center: VertexId) -> Vec<Vec<VertexId>> {
    g.neighbors(center)
        .into_iter()
        .map(|n| {
            let mut arm = vec![n];
            let (mut prev, mut cur) = (center, n);
            while let Some(nx) = g.neighbors(cur).into_iter().find(|&u| u != prev) {
                arm.push(nx);
                prev = cur;
                cur = nx;
            }
            arm
        })
        .collect()
}

fn patterns(kind: StarType) -> (&'static [i64], &'static [i64]) {
    match kind {
        StarType::Dihedral => (&[2], &[2]),
        StarType::ThreeOne => (&[2], &[3]),
        StarType::ThreeTwo => (&[2, 2], &[2]),
    }
}

pub fn genus1_setup(g: &PlumbingGraph, layout: Genus1Layout) -> Result<Genus1Setup, Error> {
    let (kind, _, _) = star_shape(g).ok_or_else(|| {
        Error::Unsupported("genus-one words need a dihedral, (3,1) or (3,2) star".into())
    })?;
    let center = g.ids().into_iter().find(|&v| g.valence(v) == 3).expect("star center");
    if g.b(center) >= 3 {
        return Err(Error::Domain("the center is not a bad vertex".into()));
    }
    let arms = arms(g, center);
    let degs = |a: &[VertexId]| a.iter().map(|&v| g.b(v)).collect::<Vec<_>>();
    let (excl_pat, kept_pat) = patterns(kind);
    let mut pick = None;
    'outer: for e in 0..3 {
        for k in 0..3 {
            if e != k && degs(&arms[e]) == excl_pat && degs(&arms[k]) == kept_pat {
                pick = Some((e, k, 3 - e - k));
                break 'outer;
            }
        }
    }
    let (e, k, var) = pick.expect("star_shape matched the arms");
    let mut path: Vec<VertexId> = arms[k].iter().rev().copied().collect();
    path.push(center);
    path.extend(&arms[var]);
    if layout == Genus1Layout::FixedEnd {
        path.reverse();
    }
    let mut sub = PlumbingGraph::new();
    for &v in &path {
        sub.add_vertex(v, g.degree(v))?;
    }
    for w in path.windows(2) {
        sub.add_edge(w[0], w[1])?;
    }
    let gm = gay_mark_word(&sub, &GmLayout::rooted(&sub, *path.last().unwrap())?)?;
    let h = gm.holes;
    let (lo, max_j) = gm.intervals[&path[0]];
    debug_assert_eq!(lo, 1);
    let right = (max_j < h).then_some(max_j + 1);
    let page = HandlePage::new(h, max_j, right)?;
    let mut reg = Registry::new(page);
    for c in &gm.curves {
        reg.add_round(c.lo, c.hi);
    }
    let orange = round_name(1, max_j);
    let olive = round_name(max_j, max_j);
    reg.add_atom(
        "x",
        Atom {
            class: page.handle_class(),
            rotation: Some(1),
            planar: None,
        },
    );
    let blue_ops = match kind {
        StarType::ThreeOne => vec![(olive.clone(), 1), (orange.clone(), 1)],
        _ => vec![(orange.clone(), 2)],
    };
    reg.add_alias("y", blue_ops.clone(), Some("x"));
    let blue = Sym::image(&blue_ops, "x");
    let blues = if kind == StarType::ThreeTwo { 2 } else { 1 };

    // red, blues, orange copies, then the rest in Gay–Mark order
    let orange_curve = crate::mcg::Curve::round(1, max_j);
    let is_orange: Vec<bool> = gm.curves.iter().map(|c| *c == orange_curve).collect();
    let mut order: Vec<usize> = (0..gm.curves.len()).filter(|&i| is_orange[i]).collect();
    order.extend((0..gm.curves.len()).filter(|&i| !is_orange[i]));
    let shift = 1 + blues;
    let mut new_pos = vec![0; gm.curves.len()];
    for (n, &old) in order.iter().enumerate() {
        new_pos[old] = n + shift;
    }
    let mut word = vec![Sym::atom("x")];
    let mut labels = vec![Label::Handle("red".into())];
    let mut rotation = vec![Some(1)];
    for _ in 0..blues {
        word.push(blue.clone());
        labels.push(Label::Handle("blue".into()));
        rotation.push(Some(-1));
    }
    for &old in &order {
        let c = &gm.curves[old];
        word.push(Sym::atom(&round_name(c.lo, c.hi)));
        labels.push(gm.labels[old].clone());
        rotation.push(Some(1));
    }
    let mut classes: ClassMap = gm
        .classes
        .iter()
        .map(|(&v, combo)| (v, combo.iter().map(|&(p, m)| (new_pos[p], m)).collect()))
        .collect();
    let excluded: Vec<VertexId> = arms[e].clone();
    let orange_pos: Vec<usize> = (shift..shift + is_orange.iter().filter(|&&b| b).count()).collect();
    let twice_orange = if orange_pos.len() >= 2 {
        vec![(orange_pos[0], 1), (orange_pos[1], 1)]
    } else {
        vec![(orange_pos[0], 2)]
    };
    let mut first: Vec<(usize, i64)> = vec![(1, 1), (0, -1)];
    match kind {
        StarType::ThreeOne => {
            let olive_curve = crate::mcg::Curve::hole(max_j);
            let olive_pos = (0..gm.curves.len())
                .find(|&i| gm.curves[i] == olive_curve && !is_orange[i])
                .map(|i| new_pos[i])
                .unwrap_or(orange_pos[0]);
            first.push((olive_pos, 1));
            first.push((orange_pos[0], 1));
        }
        _ => first.extend(twice_orange),
    }
    first.sort_unstable();
    classes.insert(excluded[0], first);
    if kind == StarType::ThreeTwo {
        classes.insert(excluded[1], vec![(1, -1), (2, 1)]);
    }
    Ok(Genus1Setup {
        kind,
        center,
        path,
        excluded,
        gm,
        registry: reg,
        word,
        labels,
        rotation,
        classes,
        orange,
        olive,
    })
}

impl Genus1Setup {
    pub fn factorization(&self) -> Result<Genus1Factorization, Error> {
        let mut f = self.registry.realize_word(&self.word)?;
        for (c, r) in f.word.iter_mut().zip(&self.rotation) {
            c.rotation = *r;
        }
        Ok(f)
    }

    pub fn palf(&self) -> Result<PalfDescription, Error> {
        Ok(PalfDescription {
            word: PalfWord::Genus1(self.factorization()?),
            labels: self.labels.clone(),
            rotation: self.rotation.clone(),
            vertex_classes: self.classes.clone(),
        })
    }

    /// Rendered word, e.g. `x y γ2^2 α1 α2 α3 α4 α5 γ5`.
    pub fn rendered(&self) -> Vec<String> {
        self.registry.render_word(&self.word)
    }
}

pub fn genus1_minres_with(g: &PlumbingGraph, layout: Genus1Layout) -> Result<PalfDescription, Error> {
    genus1_setup(g, layout)?.palf()
}

/// Genus-one PALF on a star whose center is a bad vertex.
pub fn genus1_minres_palf(g: &PlumbingGraph) -> Result<PalfDescription, Error> {
    genus1_minres_with(g, Genus1Layout::default())
}

/// A replayed handle rewrite.
#[derive(Clone, Debug)]
pub struct RewriteRun {
    pub registry: Registry,
    pub replay: ScriptReplay,
    /// Hole of the deepest leaf's last free hole and the next hole.
    pub l: usize,
    pub r: usize,
    pub holes: usize,
    pub tokens: Vec<String>,
}

impl RewriteRun {
    pub fn final_word(&self) -> &[Sym] {
        &self.replay.result
    }

    pub fn factorization(&self) -> Result<Genus1Factorization, Error> {
        self.registry.realize_word(&self.replay.result)
    }
}

/// Moves taking `x y γl^2 α1 ... αH γH` to
/// `t_x(αr) αl γl αr^2 α1 ... f(γl) γH` with `r = l + 1`.
pub fn rewrite_script(l: usize, holes: usize) -> Vec<Move> {
    let r = l + 1;
    let mut m = Vec::new();
    for k in (2..=l + 2).rev() {
        m.push(Move::Forward(k));
    }
    m.extend([Move::Backward(1), Move::Backward(2)]);
    for k in 4..=holes + 2 {
        m.push(Move::Backward(k));
    }
    for k in (4..=l + 2).rev() {
        m.push(Move::Forward(k));
    }
    m.extend([
        Move::Forward(0),
        Move::Forward(1),
        Move::Forward(3),
        Move::Forward(2),
        Move::Backward(1),
        Move::Backward(0),
    ]);
    m.push(Move::Conjugate {
        name: "f".into(),
        ops: conjugator(r),
    });
    m
}

fn conjugator(r: usize) -> Vec<(String, i64)> {
    vec![("x".into(), 1), (round_name(r, r), 1), ("x".into(), -2)]
}

/// Expected tokens after [`rewrite_script`].
pub fn rewrite_target(l: usize, holes: usize) -> Vec<String> {
    let r = l + 1;
    let mut t = vec![
        format!("t_x(α{r})"),
        format!("α{l}"),
        format!("γ{l}"),
        format!("α{r}^2"),
    ];
    t.extend((1..=holes).filter(|&k| k != l && k != r).map(|k| format!("α{k}")));
    t.push(format!("f(γ{l})"));
    t.push(format!("γ{holes}"));
    t
}

/// Replays the handle rewrite on a (3,1) star whose linear subgraph word has
/// the shape `x y γl^2 α1 ... αH γH`.
pub fn handle_rewrite(setup: &Genus1Setup) -> Result<RewriteRun, Error> {
    if setup.kind != StarType::ThreeOne {
        return Err(Error::Unsupported("handle rewrites exist for (3,1) stars only".into()));
    }
    let l = setup.registry.page.left;
    let h = setup.gm.holes;
    if setup.registry.page.right != Some(l + 1) {
        return Err(Error::Unsupported("handle at the outer boundary".into()));
    }
    let mut expect = vec!["x".to_string(), "y".to_string(), format!("γ{l}^2")];
    expect.extend((1..=h).map(|k| format!("α{k}")));
    expect.push(format!("γ{h}"));
    if setup.rendered() != expect {
        return Err(Error::Unsupported(format!(
            "no rewrite script for the word {}",
            setup.rendered().join(" ")
        )));
    }
    let mut reg = setup.registry.clone();
    reg.add_alias("f", conjugator(l + 1), None);
    let run = replay(&reg, &setup.word, &rewrite_script(l, h))?;
    if !run.all_ok() {
        return Err(Error::Certificate("rewrite changed the homology product".into()));
    }
    let tokens = reg.render_word(&run.result);
    Ok(RewriteRun {
        registry: reg,
        replay: run,
        l,
        r: l + 1,
        holes: h,
        tokens,
    })
}

/// Sum of `m * rotation` over a class.
pub fn class_rotation(pd: &PalfDescription, v: VertexId) -> Option<i64> {
    let combo = pd.vertex_classes.get(&v)?;
    combo.iter().map(|&(p, m)| pd.rotation[p].map(|r| m * r)).sum()
}

/// Rotation numbers keyed by colour, for reporting.
pub fn colour_rotations(pd: &PalfDescription) -> BTreeMap<String, i64> {
    let mut out = BTreeMap::new();
    for (l, r) in pd.labels.iter().zip(&pd.rotation) {
        if let (Label::Handle(c), Some(r)) = (l, r) {
            out.insert(c.clone(), *r);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plumbing::{build_dihedral, build_typed_star};

    #[test]
    fn icosahedral_start_word() {
        let g = build_typed_star(StarType::ThreeOne, 2, &[5]).unwrap();
        let s = genus1_setup(&g, Genus1Layout::VariableEnd).unwrap();
        assert_eq!(s.rendered().join(" "), "x y γ2^2 α1 α2 α3 α4 α5 γ5");
    }

    #[test]
    fn octahedral_start_word() {
        let g = build_typed_star(StarType::ThreeOne, 2, &[4]).unwrap();
        let s = genus1_setup(&g, Genus1Layout::FixedEnd).unwrap();
        assert_eq!(s.rendered().join(" "), "x y γ3^2 α1 α2 α3 α4 γ4");
    }

    #[test]
    fn euler_characteristic_counts_vertices() {
        for g in [
            build_dihedral(5, 3).unwrap(),
            build_typed_star(StarType::ThreeTwo, 2, &[3, 2]).unwrap(),
            build_typed_star(StarType::ThreeOne, 2, &[5]).unwrap(),
        ] {
            let pd = genus1_minres_palf(&g).unwrap();
            assert_eq!(pd.euler_char(), 1 + g.ids().len() as i64);
            assert!(pd.first_homology().unwrap().is_trivial());
        }
    }

    #[test]
    fn excluded_vertices_satisfy_adjunction() {
        let g = build_typed_star(StarType::ThreeTwo, 2, &[3]).unwrap();
        let pd = genus1_minres_palf(&g).unwrap();
        for v in g.ids() {
            assert_eq!(class_rotation(&pd, v), Some(g.degree(v) + 2), "vertex {v}");
        }
    }
}
