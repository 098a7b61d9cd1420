//! Genus-0 words on plumbings without bad vertices. Each vertex is a sphere
//! with `b` holes; the tree is flattened depth-first into a disk with holes,
//! so every vanishing cycle is a round curve.

use std::collections::BTreeMap;

use super::{Label, PalfDescription, PalfWord};
use crate::invariants::{self, ClassMap};
use crate::mcg::{Curve, Factorization, Page};
use crate::plumbing::{has_bad_vertex, PlumbingGraph, VertexId};
use crate::Error;

/// A rooted planar embedding of a plumbing tree: the root and, for each
/// vertex, the left-to-right order of its children.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GmLayout {
    pub root: VertexId,
    pub children: BTreeMap<VertexId, Vec<VertexId>>,
}

/// Layouts beyond this many are not enumerated by [`GmLayout::all`].
const LAYOUT_CAP: usize = 4096;

impl GmLayout {
    /// Children in increasing id order under the given root.
    pub fn rooted(g: &PlumbingGraph, root: VertexId) -> Result<Self, Error> {
        if !g.has_vertex(root) {
            return Err(Error::Domain(format!("no vertex {root}")));
        }
        if !g.is_tree() {
            return Err(Error::Domain("plumbing graph is not a tree".into()));
        }
        let mut children = BTreeMap::new();
        let mut stack = vec![(root, None)];
        while let Some((v, parent)) = stack.pop() {
            let kids: Vec<VertexId> = g.neighbors(v).into_iter().filter(|&u| Some(u) != parent).collect();
            for &k in &kids {
                stack.push((k, Some(v)));
            }
            children.insert(v, kids);
        }
        Ok(GmLayout { root, children })
    }

    /// Rooted at the largest id that has a free boundary left for the outer
    /// curve.
    pub fn default_for(g: &PlumbingGraph) -> Result<Self, Error> {
        let root = g
            .ids()
            .into_iter()
            .rev()
            .find(|&v| g.b(v) > g.valence(v) as i64)
            .ok_or_else(|| Error::Domain("no vertex can carry the outer boundary".into()))?;
        Self::rooted(g, root)
    }

    /// Every admissible root with every ordering of children, up to a cap.
    pub fn all(g: &PlumbingGraph) -> Vec<Self> {
        let mut out = Vec::new();
        for root in g.ids() {
            if g.b(root) <= g.valence(root) as i64 {
                continue;
            }
            let Ok(base) = Self::rooted(g, root) else { continue };
            let mut acc = vec![base.clone()];
            for (v, kids) in &base.children {
                if kids.len() < 2 {
                    continue;
                }
                let perms = permutations(kids);
                let mut next = Vec::new();
                for l in &acc {
                    for p in &perms {
                        let mut l2 = l.clone();
                        l2.children.insert(*v, p.clone());
                        next.push(l2);
                        if next.len() >= LAYOUT_CAP {
                            break;
                        }
                    }
                }
                acc = next;
            }
            out.extend(acc);
            if out.len() >= LAYOUT_CAP {
                out.truncate(LAYOUT_CAP);
                break;
            }
        }
        out
    }
}

fn permutations(v: &[VertexId]) -> Vec<Vec<VertexId>> {
    if v.len() <= 1 {
        return vec![v.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..v.len() {
        let mut rest = v.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// A boundary component of a vertex piece in the flattened page.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Boundary {
    Hole(usize),
    Outer,
}

/// The flattened Gay–Mark word with its bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GmWord {
    pub holes: usize,
    pub curves: Vec<Curve>,
    pub labels: Vec<Label>,
    /// Sphere class of each vertex as a combination of word positions.
    pub classes: ClassMap,
    /// Free boundaries of each vertex piece.
    pub boundaries: BTreeMap<VertexId, Vec<Boundary>>,
    /// Hole interval spanned by each vertex subtree.
    pub intervals: BTreeMap<VertexId, (usize, usize)>,
}

impl GmWord {
    pub fn factorization(&self) -> Factorization {
        Factorization::new(Page::planar(self.holes), self.curves.clone())
    }
}

struct Builder<'a> {
    g: &'a PlumbingGraph,
    layout: &'a GmLayout,
    next: usize,
    curves: Vec<Curve>,
    labels: Vec<Label>,
    classes: BTreeMap<VertexId, Vec<(usize, i64)>>,
    boundaries: BTreeMap<VertexId, Vec<Boundary>>,
    intervals: BTreeMap<VertexId, (usize, usize)>,
}

impl Builder<'_> {
    fn push(&mut self, c: Curve, l: Label) -> usize {
        self.curves.push(c);
        self.labels.push(l);
        self.curves.len() - 1
    }

    fn visit(&mut self, v: VertexId) -> Result<(usize, usize), Error> {
        let lo = self.next + 1;
        let kids = self.layout.children.get(&v).cloned().unwrap_or_default();
        for c in kids {
            let (clo, chi) = self.visit(c)?;
            let p = self.push(Curve::round(clo, chi), Label::Neck { lower: c, upper: v });
            self.classes.entry(c).or_default().push((p, 1));
            self.classes.entry(v).or_default().push((p, -1));
        }
        let is_root = v == self.layout.root;
        let free = self.g.b(v) - self.g.valence(v) as i64 - i64::from(is_root);
        if free < 0 {
            return Err(Error::Domain(format!("vertex {v} has more neighbours than |degree|")));
        }
        for _ in 0..free {
            self.next += 1;
            let k = self.next;
            let p = self.push(Curve::hole(k), Label::Free(v));
            self.classes.entry(v).or_default().push((p, -1));
            self.boundaries.entry(v).or_default().push(Boundary::Hole(k));
        }
        self.boundaries.entry(v).or_default();
        if self.next < lo {
            return Err(Error::Domain(format!("subtree at vertex {v} has no holes")));
        }
        self.intervals.insert(v, (lo, self.next));
        Ok((lo, self.next))
    }
}

/// Flattened Gay–Mark word for a layout. Curves are sorted with single-hole
/// twists first, then by interval; all of them commute.
pub fn gay_mark_word(g: &PlumbingGraph, layout: &GmLayout) -> Result<GmWord, Error> {
    if let Some(v) = has_bad_vertex(g) {
        return Err(Error::Domain(format!("bad vertex {v}: no genus-0 word")));
    }
    if !g.is_tree() {
        return Err(Error::Domain("plumbing graph is not a tree".into()));
    }
    if g.ids().iter().any(|&v| g.degree(v) >= 0) {
        return Err(Error::Domain("degrees must be negative".into()));
    }
    let mut b = Builder {
        g,
        layout,
        next: 0,
        curves: Vec::new(),
        labels: Vec::new(),
        classes: BTreeMap::new(),
        boundaries: BTreeMap::new(),
        intervals: BTreeMap::new(),
    };
    let root = layout.root;
    let (_, h) = b.visit(root)?;
    let p = b.push(Curve::round(1, h), Label::Outer(root));
    b.classes.entry(root).or_default().push((p, 1));
    b.boundaries.entry(root).or_default().push(Boundary::Outer);

    let key = |c: &Curve| (usize::from(c.lo != c.hi), c.hi, c.lo);
    let mut order: Vec<usize> = (0..b.curves.len()).collect();
    order.sort_by_key(|&i| key(&b.curves[i]));
    let mut inv = vec![0; order.len()];
    for (new, &old) in order.iter().enumerate() {
        inv[old] = new;
    }
    let classes = b
        .classes
        .into_iter()
        .map(|(v, combo)| {
            let mut c: Vec<(usize, i64)> = combo.into_iter().map(|(p, m)| (inv[p], m)).collect();
            c.sort_unstable();
            (v, c)
        })
        .collect();
    Ok(GmWord {
        holes: h,
        curves: order.iter().map(|&i| b.curves[i].clone()).collect(),
        labels: order.iter().map(|&i| b.labels[i].clone()).collect(),
        classes,
        boundaries: b.boundaries,
        intervals: b.intervals,
    })
}

/// Gay–Mark PALF with the default layout.
pub fn gay_mark_palf(g: &PlumbingGraph) -> Result<PalfDescription, Error> {
    let w = gay_mark_word(g, &GmLayout::default_for(g)?)?;
    let n = w.curves.len();
    Ok(PalfDescription {
        word: PalfWord::Planar(w.factorization()),
        labels: w.labels,
        rotation: vec![Some(invariants::planar_rotation_number()); n],
        vertex_classes: w.classes,
    })
}

/// Gay–Mark word of a linear chain rooted at its last entry.
pub fn gm_chain_word(bs: &[i64]) -> Result<GmWord, Error> {
    if bs.is_empty() || bs.iter().any(|&b| b < 2) {
        return Err(Error::Domain("chain entries must be at least 2".into()));
    }
    let mut g = PlumbingGraph::new();
    for (i, &b) in bs.iter().enumerate() {
        g.add_vertex(i + 1, -b)?;
        if i > 0 {
            g.add_edge(i, i + 1)?;
        }
    }
    gay_mark_word(&g, &GmLayout::rooted(&g, bs.len())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plumbing::build_dihedral;

    #[test]
    fn chain_word_matches_displayed_lhs() {
        let w = gm_chain_word(&[2, 5, 3]).unwrap();
        let shown: Vec<String> = w.curves.iter().map(|c| c.to_string()).collect();
        assert_eq!(
            shown,
            ["round 1..1", "round 1..1", "round 2..2", "round 3..3", "round 4..4", "round 5..5", "round 1..4", "round 1..5"]
        );
    }

    #[test]
    fn vertex_classes_pair_to_self_intersection() {
        // sum of multiplicities equals 2 - b for every vertex
        let g = build_dihedral(9, 2).unwrap();
        let w = gay_mark_word(&g, &GmLayout::default_for(&g).unwrap()).unwrap();
        for v in g.ids() {
            let s: i64 = w.classes[&v].iter().map(|&(_, m)| m).sum();
            assert_eq!(s, 2 - g.b(v), "vertex {v}");
        }
        assert_eq!(w.curves.len(), 8);
    }

    #[test]
    fn lone_minus_one_has_no_word() {
        let mut g = PlumbingGraph::new();
        g.add_vertex(1, -1).unwrap();
        assert!(gay_mark_palf(&g).is_err());
    }
}
