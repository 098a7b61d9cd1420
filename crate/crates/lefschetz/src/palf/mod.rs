//! Synthesis of PALF monodromy factorizations: the Bhupal–Ozbagci words for
//! cyclic fillings, Gay–Mark words on minimal resolutions, genus-one words for
//! graphs with a bad vertex, and fillings assembled from certified
//! substitutions.

mod bo;
mod extend;
mod filling;
mod genus1;
mod gm;

use std::collections::BTreeMap;
use std::fmt;

pub use bo::{ball_tuple, bo_palf, bo_word};
pub use extend::{extend_curve, extend_factorization, insert_hole, positive_stabilize, HoleMap};
pub use filling::{filling_palf, FillingCase, FillingResult};
pub use genus1::{
    genus1_minres_palf, genus1_minres_with, genus1_setup, handle_rewrite, rewrite_script, rewrite_target,
    class_rotation, colour_rotations, Genus1Layout, Genus1Setup, RewriteRun,
};
pub use gm::{gay_mark_palf, gay_mark_word, gm_chain_word, Boundary, GmLayout, GmWord};

use crate::invariants::{self, AbelianGroup, ClassMap, VanishingData};
use crate::mcg::{Factorization, Genus1Factorization, Page};
use crate::plumbing::{has_bad_vertex, PlumbingGraph, VertexId};
use crate::Error;

/// Where a twist of a synthesized word comes from.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    /// Boundary twist about a free hole of a vertex piece.
    Free(VertexId),
    /// Neck between a vertex piece and its parent piece.
    Neck { lower: VertexId, upper: VertexId },
    /// Outer boundary of the root piece.
    Outer(VertexId),
    /// Cycle created by the given blow-up step (1-based).
    Cycle(usize),
    /// Meridian `γ_i`.
    Gamma(usize),
    /// Twist about a hole added by stabilization.
    Stabilizer(usize),
    /// New curve of the genus-one construction, by colour.
    Handle(String),
    /// Position `pos` of the right side of certificate `cert`.
    Substituted { cert: usize, pos: usize },
    /// Curve produced by a rewrite script.
    Rewritten,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Free(v) => write!(f, "free v{v}"),
            Label::Neck { lower, upper } => write!(f, "neck v{lower} v{upper}"),
            Label::Outer(v) => write!(f, "outer v{v}"),
            Label::Cycle(s) => write!(f, "cycle {s}"),
            Label::Gamma(i) => write!(f, "gamma {i}"),
            Label::Stabilizer(h) => write!(f, "stabilizer {h}"),
            Label::Handle(c) => write!(f, "handle {c}"),
            Label::Substituted { cert, pos } => write!(f, "substituted {cert} {pos}"),
            Label::Rewritten => write!(f, "rewritten"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PalfWord {
    Planar(Factorization),
    Genus1(Genus1Factorization),
}

impl PalfWord {
    pub fn len(&self) -> usize {
        match self {
            PalfWord::Planar(f) => f.len(),
            PalfWord::Genus1(f) => f.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn genus(&self) -> u8 {
        match self {
            PalfWord::Planar(_) => 0,
            PalfWord::Genus1(_) => 1,
        }
    }

    pub fn as_planar(&self) -> Option<&Factorization> {
        match self {
            PalfWord::Planar(f) => Some(f),
            PalfWord::Genus1(_) => None,
        }
    }

    pub fn as_genus1(&self) -> Option<&Genus1Factorization> {
        match self {
            PalfWord::Planar(_) => None,
            PalfWord::Genus1(f) => Some(f),
        }
    }
}

impl fmt::Display for PalfWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PalfWord::Planar(w) => write!(f, "{w}"),
            PalfWord::Genus1(w) => write!(f, "{w}"),
        }
    }
}

impl VanishingData for PalfWord {
    fn page(&self) -> Page {
        match self {
            PalfWord::Planar(f) => f.page,
            PalfWord::Genus1(f) => f.page.page(),
        }
    }

    fn twist_count(&self) -> usize {
        self.len()
    }

    fn ambient_rank(&self) -> usize {
        match self {
            PalfWord::Planar(f) => f.ambient_rank(),
            PalfWord::Genus1(f) => f.ambient_rank(),
        }
    }

    fn relator_rows(&self) -> Result<Vec<Vec<i64>>, Error> {
        match self {
            PalfWord::Planar(f) => f.relator_rows(),
            PalfWord::Genus1(f) => f.relator_rows(),
        }
    }
}

/// A synthesized factorization with per-position provenance, rotation
/// numbers and (for minimal resolutions) the sphere class of every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PalfDescription {
    pub word: PalfWord,
    pub labels: Vec<Label>,
    pub rotation: Vec<Option<i64>>,
    pub vertex_classes: ClassMap,
}

impl PalfDescription {
    pub fn planar(f: Factorization, labels: Vec<Label>) -> Self {
        let n = f.len();
        PalfDescription {
            word: PalfWord::Planar(f),
            labels,
            rotation: vec![Some(invariants::planar_rotation_number()); n],
            vertex_classes: BTreeMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn euler_char(&self) -> i64 {
        invariants::euler_char(&self.word)
    }

    pub fn first_homology(&self) -> Result<AbelianGroup, Error> {
        invariants::first_homology(&self.word)
    }

    /// One line per position: index, label, rotation number.
    pub fn label_sidecar(&self) -> String {
        let mut s = String::new();
        for (i, l) in self.labels.iter().enumerate() {
            let r = self.rotation[i].map_or("?".to_string(), |r| r.to_string());
            s.push_str(&format!("{i} {l} rot {r}\n"));
        }
        s
    }
}

/// Genus of the PALF on a minimal resolution: 1 exactly when some vertex
/// has more neighbours than `|degree|`.
pub fn choose_genus(g: &PlumbingGraph) -> u8 {
    u8::from(has_bad_vertex(g).is_some())
}

/// PALF on a minimal resolution graph, of the genus picked by [`choose_genus`].
pub fn minres_palf(g: &PlumbingGraph) -> Result<PalfDescription, Error> {
    match choose_genus(g) {
        0 => gay_mark_palf(g),
        _ => genus1_minres_palf(g),
    }
}
