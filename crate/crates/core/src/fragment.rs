use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::complex::FaceOracle;
use crate::simplex::Simplex;

/// A sub-complex induced by a roster of `(d-1)`-simplices: every simplex of
/// the parent contained in `a ∪ b` for roster members `a`, `b`.
///
/// The roster is kept explicitly because the induced complex can contain
/// `(d-1)`-faces that are not roster members (subfaces of induced unions).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fragment {
    pub d: usize,
    /// Union of the roster's vertices.
    pub vertices: BTreeSet<u32>,
    /// Distinguished `(d-1)`-simplices the fragment was induced by.
    pub roster: BTreeSet<Simplex>,
    /// All `(d-1)`-faces of the induced complex.
    pub ridges: BTreeSet<Simplex>,
    /// All `d`-faces of the induced complex.
    pub faces: BTreeSet<Simplex>,
}

impl Fragment {
    pub(crate) fn induce<F: FaceOracle + ?Sized>(x: &F, roster: BTreeSet<Simplex>) -> Self {
        let d = x.d();
        let members: Vec<&Simplex> = roster.iter().collect();
        let mut ridges = BTreeSet::new();
        let mut faces = BTreeSet::new();
        for (i, a) in members.iter().enumerate() {
            for b in &members[i..] {
                let u = a.union(b);
                if u.len() == d {
                    ridges.insert(u);
                    continue;
                }
                ridges.extend(u.subsets(d));
                if u.len() == d + 1 {
                    if x.has_face(&u) {
                        faces.insert(u);
                    }
                } else {
                    faces.extend(u.subsets(d + 1).filter(|t| x.has_face(t)));
                }
            }
        }
        let vertices = roster
            .iter()
            .flat_map(|s| s.vertices().iter().copied())
            .collect();
        Fragment {
            d,
            vertices,
            roster,
            ridges,
            faces,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.roster.is_empty()
    }

    /// Generating family of the induced complex: its `(d-1)`- and `d`-faces.
    /// Its downward closure is the whole fragment, so two fragments are
    /// isomorphic exactly when their families are.
    pub fn face_family(&self) -> Vec<Simplex> {
        self.ridges
            .iter()
            .chain(self.faces.iter())
            .cloned()
            .collect()
    }

    /// Every simplex of the fragment, including the empty simplex when the
    /// fragment is non-empty. Exponential in face size; meant for small checks.
    pub fn closure(&self) -> BTreeSet<Simplex> {
        let mut out = BTreeSet::new();
        for f in self.face_family() {
            for k in 0..=f.len() {
                out.extend(f.subsets(k));
            }
        }
        out
    }
}
