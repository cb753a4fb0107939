//! Canonical forms of finite face families up to vertex relabelling.
//!
//! A family is treated as a hypergraph on the union of its faces. Vertices are
//! coloured by label-free invariants, the colouring is refined until stable,
//! and remaining ties are broken by individualising each vertex of the first
//! smallest non-trivial cell in turn. Every discrete colouring yields a
//! relabelled, sorted face list; the smallest one is the canonical code.
//! Leaves reached twice with the same code reveal an automorphism, and the
//! search then backs up to the deepest common ancestor of the two leaves.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::simplex::Simplex;

/// Label-free summary stored alongside the canonical bytes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FormMeta {
    pub vertex_count: usize,
    pub face_count: usize,
    /// `(face size, number of faces of that size)`, ascending by size.
    pub size_histogram: Vec<(usize, usize)>,
}

/// A byte string that is equal for two face families exactly when they are
/// isomorphic (with anchors mapped in order).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    bytes: Vec<u8>,
    meta: FormMeta,
}

impl CanonicalForm {
    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn meta(&self) -> &FormMeta {
        &self.meta
    }

    pub fn to_hex(&self) -> String {
        self.bytes.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// The form of the family with no faces and no anchors.
    pub fn is_empty_form(&self) -> bool {
        self.meta.vertex_count == 0
    }
}

impl PartialOrd for FormMeta {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FormMeta {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.vertex_count, self.face_count, &self.size_histogram).cmp(&(
            other.vertex_count,
            other.face_count,
            &other.size_histogram,
        ))
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CanonicalForm({} vertices, {} faces, {})",
            self.meta.vertex_count,
            self.meta.face_count,
            self.to_hex()
        )
    }
}

/// Canonical form of `faces` under vertex bijections that map `anchors[i]`
/// onto `anchors[i]` setwise. Repeated faces count once.
///
/// ```
/// use lm_shotgun::{canonical_form, simplex};
/// let path_a = [simplex![1, 2], simplex![2, 3]];
/// let path_b = [simplex![7, 9], simplex![5, 7]];
/// assert_eq!(canonical_form(&path_a, &[]), canonical_form(&path_b, &[]));
/// // Rooting at an end vertex distinguishes it from the middle one.
/// assert_ne!(
///     canonical_form(&path_a, &[simplex![1]]),
///     canonical_form(&path_a, &[simplex![2]]),
/// );
/// ```
pub fn canonical_form(faces: &[Simplex], anchors: &[Simplex]) -> CanonicalForm {
    let h = Hypergraph::new(faces, anchors);
    let code = h.canonical_code();
    let mut bytes = Vec::with_capacity(12 + 4 * code.len());
    for word in [h.m as u32, h.faces.len() as u32, h.anchors.len() as u32]
        .into_iter()
        .chain(code)
    {
        bytes.extend_from_slice(&word.to_le_bytes());
    }
    let mut histogram: Vec<(usize, usize)> = Vec::new();
    let mut sizes: Vec<usize> = h.faces.iter().map(Vec::len).collect();
    sizes.sort_unstable();
    for s in sizes {
        match histogram.last_mut() {
            Some((size, count)) if *size == s => *count += 1,
            _ => histogram.push((s, 1)),
        }
    }
    CanonicalForm {
        bytes,
        meta: FormMeta {
            vertex_count: h.m,
            face_count: h.faces.len(),
            size_histogram: histogram,
        },
    }
}

/// Whether some vertex bijection maps the family `a` onto the family `b`.
pub fn is_isomorphic(a: &[Simplex], b: &[Simplex]) -> bool {
    canonical_form(a, &[]) == canonical_form(b, &[])
}

struct Hypergraph {
    m: usize,
    faces: Vec<Vec<u32>>,
    anchors: Vec<Vec<u32>>,
    incidence: Vec<Vec<usize>>,
}

type Colouring = Vec<u32>;

impl Hypergraph {
    fn new(faces: &[Simplex], anchors: &[Simplex]) -> Self {
        let mut support: Vec<u32> = faces
            .iter()
            .chain(anchors)
            .flat_map(|s| s.vertices().iter().copied())
            .collect();
        support.sort_unstable();
        support.dedup();
        let local = |s: &Simplex| -> Vec<u32> {
            s.vertices()
                .iter()
                .map(|v| support.binary_search(v).unwrap() as u32)
                .collect()
        };
        let mut fs: Vec<Vec<u32>> = faces.iter().map(local).collect();
        fs.sort_unstable();
        fs.dedup();
        let anchors: Vec<Vec<u32>> = anchors.iter().map(local).collect();
        let mut incidence = vec![Vec::new(); support.len()];
        for (i, f) in fs.iter().enumerate() {
            for &v in f {
                incidence[v as usize].push(i);
            }
        }
        Hypergraph {
            m: support.len(),
            faces: fs,
            anchors,
            incidence,
        }
    }

    fn initial_colouring(&self) -> Colouring {
        let keys: Vec<Vec<u32>> = (0..self.m as u32)
            .map(|v| {
                let mut key: Vec<u32> = self
                    .anchors
                    .iter()
                    .map(|a| u32::from(a.contains(&v)))
                    .collect();
                let mut sizes: Vec<u32> = self.incidence[v as usize]
                    .iter()
                    .map(|&f| self.faces[f].len() as u32)
                    .collect();
                sizes.sort_unstable();
                key.extend(sizes);
                key
            })
            .collect();
        rank(&keys)
    }

    /// Refines until the number of cells stops growing. Each vertex's new
    /// key is its colour plus the sorted multiset of its faces, each face
    /// described by the rank of its sorted colour multiset. Together with the
    /// vertex's own colour this fixes the colours of the face's other vertices.
    fn refine(&self, mut colours: Colouring) -> Colouring {
        let mut cells = cell_count(&colours);
        while cells < self.m {
            let face_keys: Vec<Vec<u32>> = self
                .faces
                .iter()
                .map(|f| {
                    let mut key: Vec<u32> = f.iter().map(|&u| colours[u as usize]).collect();
                    key.sort_unstable();
                    key
                })
                .collect();
            let face_ranks = rank(&face_keys);
            let keys: Vec<(u32, Vec<u32>)> = (0..self.m)
                .map(|v| {
                    let mut sig: Vec<u32> =
                        self.incidence[v].iter().map(|&f| face_ranks[f]).collect();
                    sig.sort_unstable();
                    (colours[v], sig)
                })
                .collect();
            let next = rank(&keys);
            let next_cells = cell_count(&next);
            if next_cells == cells {
                break;
            }
            colours = next;
            cells = next_cells;
        }
        colours
    }

    fn individualise(&self, colours: &Colouring, v: usize) -> Colouring {
        let keys: Vec<(u32, u32)> = colours
            .iter()
            .enumerate()
            .map(|(u, &c)| (c, u32::from(u != v)))
            .collect();
        rank(&keys)
    }

    /// First cell (by colour) among the smallest cells with two or more
    /// vertices, or `None` for a discrete colouring.
    fn target_cell(&self, colours: &Colouring) -> Option<Vec<usize>> {
        let mut sizes = vec![0usize; self.m];
        for &c in colours {
            sizes[c as usize] += 1;
        }
        let colour = (0..self.m)
            .filter(|&c| sizes[c] > 1)
            .min_by_key(|&c| (sizes[c], c))?;
        Some(
            (0..self.m)
                .filter(|&v| colours[v] as usize == colour)
                .collect(),
        )
    }

    fn leaf_code(&self, colours: &Colouring) -> Vec<u32> {
        let mut faces: Vec<Vec<u32>> = self
            .faces
            .iter()
            .map(|f| {
                let mut g: Vec<u32> = f.iter().map(|&v| colours[v as usize]).collect();
                g.sort_unstable();
                g
            })
            .collect();
        faces.sort_unstable();
        let mut code = Vec::new();
        for f in faces {
            code.push(f.len() as u32);
            code.extend(f);
        }
        for a in &self.anchors {
            let mut g: Vec<u32> = a.iter().map(|&v| colours[v as usize]).collect();
            g.sort_unstable();
            code.push(g.len() as u32);
            code.extend(g);
        }
        code
    }

    fn canonical_code(&self) -> Vec<u32> {
        if self.m == 0 {
            return self.leaf_code(&Vec::new());
        }
        let root = self.refine(self.initial_colouring());
        let mut search = Search {
            h: self,
            best: None,
            seen: HashMap::new(),
            generators: Vec::new(),
        };
        search.descend(root, &mut Vec::new());
        search.best.expect("search visits at least one leaf")
    }
}

struct Search<'a> {
    h: &'a Hypergraph,
    best: Option<Vec<u32>>,
    /// Leaf code to the path and colouring of the first leaf that produced it.
    seen: HashMap<Vec<u32>, (Vec<usize>, Colouring)>,
    /// Automorphisms found so far, as vertex permutations.
    generators: Vec<Vec<u32>>,
}

impl Search<'_> {
    /// Explores the subtree below `colours`. Returns `Some(depth)` when an
    /// automorphism was found and the search should resume at that depth.
    fn descend(&mut self, colours: Colouring, path: &mut Vec<usize>) -> Option<usize> {
        let Some(cell) = self.h.target_cell(&colours) else {
            let code = self.h.leaf_code(&colours);
            if let Some((prev_path, prev_colours)) = self.seen.get(&code) {
                let common = prev_path
                    .iter()
                    .zip(path.iter())
                    .take_while(|(a, b)| a == b)
                    .count();
                let mut by_colour = vec![0u32; self.h.m];
                for (u, &c) in prev_colours.iter().enumerate() {
                    by_colour[c as usize] = u as u32;
                }
                self.generators
                    .push(colours.iter().map(|&c| by_colour[c as usize]).collect());
                return Some(common);
            }
            if self.best.as_ref().is_none_or(|b| code < *b) {
                self.best = Some(code.clone());
            }
            self.seen.insert(code, (path.clone(), colours));
            return None;
        };
        let depth = path.len();
        let mut explored: Vec<usize> = Vec::new();
        for v in cell {
            if !explored.is_empty() {
                let orbits = self.orbits_fixing(path);
                if explored.iter().any(|&w| orbits[w] == orbits[v]) {
                    continue;
                }
            }
            explored.push(v);
            let child = self.h.refine(self.h.individualise(&colours, v));
            path.push(v);
            let jump = self.descend(child, path);
            path.pop();
            if let Some(target) = jump {
                if target < depth {
                    return Some(target);
                }
            }
        }
        None
    }

    /// Orbit representatives of the group generated by the known automorphisms
    /// that fix every vertex of `fixed`.
    fn orbits_fixing(&self, fixed: &[usize]) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.h.m).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for g in &self.generators {
            if fixed.iter().any(|&v| g[v] as usize != v) {
                continue;
            }
            for (u, &image) in g.iter().enumerate() {
                let (a, b) = (find(&mut parent, u), find(&mut parent, image as usize));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        (0..self.h.m).map(|v| find(&mut parent, v)).collect()
    }
}

fn cell_count(colours: &Colouring) -> usize {
    colours.iter().max().map_or(0, |&c| c as usize + 1)
}

/// Dense ranks of `keys`: equal keys share a colour, colours follow key order.
fn rank<K: Ord>(keys: &[K]) -> Colouring {
    let mut order: Vec<usize> = (0..keys.len()).collect();
    order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    let mut out = vec![0u32; keys.len()];
    let mut colour = 0u32;
    for (i, &v) in order.iter().enumerate() {
        if i > 0 && keys[order[i - 1]] != keys[v] {
            colour += 1;
        }
        out[v] = colour;
    }
    out
}
