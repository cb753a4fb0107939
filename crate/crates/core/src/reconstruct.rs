//! Anonymised 1-neighbourhoods and reconstruction by fingerprint matching.
//!
//! Each `(d-1)`-simplex `sigma` is published with its neighbours, the faces
//! through it and the faces spanned by two of its neighbours, all over fresh
//! interior labels. For each neighbour `tau` the neighbourhood determines the
//! common neighbours of `sigma` and `tau` and the complex they induce; its
//! canonical form is the fingerprint of `(sigma, tau)`. A true face
//! `sigma1 ∪ sigma2` yields the same fingerprint at both centers, so matching
//! fingerprints across centers recovers every face. When fingerprints are not
//! unique some false faces are declared as well; they are detected by
//! comparing each center's declared degree with its published degree.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{Complex, FaceOracle};
use crate::error::{Error, Result};
use crate::fragment::Fragment;
use crate::iso::{canonical_form, CanonicalForm};
use crate::ops;
use crate::sampler::trial_seed;
use crate::simplex::{colex_rank, Simplex};
use crate::FORMAT_VERSION;

/// The 1-neighbourhood of `center` over anonymous interior labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootedNeighbourhood {
    /// Public identity of the `(d-1)`-simplex.
    pub center: Simplex,
    /// Interior images of the center's neighbours.
    pub roster: Vec<Simplex>,
    /// Faces through the center's image.
    pub d_faces: Vec<Simplex>,
    /// Faces spanned by two neighbours and avoiding the center's image.
    pub d_star_faces: Vec<Simplex>,
}

/// One neighbourhood per `(d-1)`-simplex of positive degree, sorted by center.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeighbourhoodCollection {
    pub format_version: u32,
    pub n: u32,
    pub d: usize,
    pub neighbourhoods: Vec<RootedNeighbourhood>,
}

impl NeighbourhoodCollection {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("collection serialises")
    }

    /// Parses and validates a collection.
    pub fn from_json(text: &str) -> Result<Self> {
        let coll: NeighbourhoodCollection = serde_json::from_str(text).map_err(|e| {
            Error::validation(
                format!("line {} column {}", e.line(), e.column()),
                e.to_string(),
            )
        })?;
        coll.validate()?;
        Ok(coll)
    }

    /// Checks the structural invariants a collection extracted from some
    /// complex must satisfy. Errors name the offending JSON path.
    pub fn validate(&self) -> Result<()> {
        let d = self.d;
        if self.format_version != FORMAT_VERSION {
            return Err(Error::validation(
                "format_version",
                format!("unsupported version {}", self.format_version),
            ));
        }
        if d == 0 || (self.n as usize) <= d {
            return Err(Error::validation(
                "d",
                format!("need 1 <= d < n, got n = {}, d = {d}", self.n),
            ));
        }
        let mut centers = HashSet::new();
        for (i, nb) in self.neighbourhoods.iter().enumerate() {
            let at = |field: &str| format!("neighbourhoods[{i}].{field}");
            if nb.center.len() != d || nb.center.vertices().iter().any(|&v| v == 0 || v > self.n) {
                return Err(Error::validation(
                    at("center"),
                    format!(
                        "{} is not a {}-simplex on 1..={}",
                        nb.center,
                        d as isize - 1,
                        self.n
                    ),
                ));
            }
            if !centers.insert(&nb.center) {
                return Err(Error::validation(
                    at("center"),
                    format!("center {} repeated", nb.center),
                ));
            }
            for (field, list, size) in [
                ("roster", &nb.roster, d),
                ("d_faces", &nb.d_faces, d + 1),
                ("d_star_faces", &nb.d_star_faces, d + 1),
            ] {
                let mut seen = HashSet::new();
                for (j, s) in list.iter().enumerate() {
                    if s.len() != size {
                        return Err(Error::validation(
                            at(&format!("{field}[{j}]")),
                            format!("expected {size} vertices"),
                        ));
                    }
                    if !seen.insert(s) {
                        return Err(Error::validation(
                            at(&format!("{field}[{j}]")),
                            "repeated entry",
                        ));
                    }
                }
            }
            if nb.d_faces.is_empty() {
                return Err(Error::validation(
                    at("d_faces"),
                    "empty neighbourhoods must be omitted",
                ));
            }
            if nb.roster.len() != d * nb.d_faces.len() {
                return Err(Error::validation(
                    at("roster"),
                    format!(
                        "{} neighbours for {} faces in dimension {d}",
                        nb.roster.len(),
                        nb.d_faces.len()
                    ),
                ));
            }
            let image = nb.center_image().ok_or_else(|| {
                Error::validation(
                    at("d_faces"),
                    "faces do not share a common center outside the roster",
                )
            })?;
            let roster: HashSet<&Simplex> = nb.roster.iter().collect();
            for (j, f) in nb.d_faces.iter().enumerate() {
                if !image.is_subset(f) || f.subsets(d).any(|r| r != image && !roster.contains(&r)) {
                    return Err(Error::validation(
                        at(&format!("d_faces[{j}]")),
                        "not the center plus one apex",
                    ));
                }
            }
            for (j, f) in nb.d_star_faces.iter().enumerate() {
                let spanned = f.subsets(d).filter(|r| roster.contains(r)).count() >= 2;
                if image.is_subset(f) || !spanned {
                    return Err(Error::validation(
                        at(&format!("d_star_faces[{j}]")),
                        "not spanned by two neighbours away from the center",
                    ));
                }
            }
        }
        Ok(())
    }
}

impl RootedNeighbourhood {
    /// Interior label of the center: the `d`-subset of a face through it that
    /// is not a neighbour.
    pub fn center_image(&self) -> Option<Simplex> {
        let roster: HashSet<&Simplex> = self.roster.iter().collect();
        let first = self.d_faces.first()?;
        let mut candidates = first
            .subsets(first.len() - 1)
            .filter(|r| !roster.contains(r));
        let image = candidates.next()?;
        if candidates.next().is_some() || !self.d_faces.iter().all(|f| image.is_subset(f)) {
            return None;
        }
        Some(image)
    }

    fn local_faces(&self) -> LocalFaces {
        LocalFaces {
            d: self.center.len(),
            faces: self
                .d_faces
                .iter()
                .chain(&self.d_star_faces)
                .cloned()
                .collect(),
        }
    }

    /// The whole neighbourhood as an induced fragment over interior labels.
    pub fn fragment(&self) -> Fragment {
        let mut roster: BTreeSet<Simplex> = self.roster.iter().cloned().collect();
        roster.extend(self.center_image());
        Fragment::induce(&self.local_faces(), roster)
    }

    /// Canonical form of the neighbourhood. With `rooted`, isomorphisms must
    /// map the center to the center.
    pub fn canonical_form(&self, rooted: bool) -> CanonicalForm {
        let anchors: Vec<Simplex> = if rooted {
            self.center_image().into_iter().collect()
        } else {
            Vec::new()
        };
        canonical_form(&self.fragment().face_family(), &anchors)
    }
}

/// Faces visible inside one neighbourhood.
struct LocalFaces {
    d: usize,
    faces: HashSet<Simplex>,
}

impl FaceOracle for LocalFaces {
    fn n(&self) -> u32 {
        self.faces
            .iter()
            .flat_map(|f| f.vertices().iter().copied())
            .max()
            .unwrap_or(0)
    }

    fn d(&self) -> usize {
        self.d
    }

    fn has_face(&self, face: &Simplex) -> bool {
        self.faces.contains(face)
    }
}

/// Publishes every neighbourhood of `x` over a fresh random interior
/// labelling. Deterministic in `scramble_seed`.
///
/// ```
/// use lm_shotgun::{reconstruct::extract_collection, simplex, Complex};
/// let x = Complex::new(5, 2, [simplex![1, 2, 3], simplex![1, 2, 4], simplex![1, 2, 5]])?;
/// let coll = extract_collection(&x, 1);
/// let nb = coll.neighbourhoods.iter().find(|nb| nb.center == simplex![1, 2]).unwrap();
/// assert_eq!((nb.roster.len(), nb.d_faces.len()), (6, 3));
/// # Ok::<(), lm_shotgun::Error>(())
/// ```
pub fn extract_collection(x: &Complex, scramble_seed: u64) -> NeighbourhoodCollection {
    extract(x, Some(scramble_seed))
}

/// [`extract_collection`] keeping the original vertex ids as interior labels.
pub fn extract_collection_unscrambled(x: &Complex) -> NeighbourhoodCollection {
    extract(x, None)
}

fn extract(x: &Complex, scramble_seed: Option<u64>) -> NeighbourhoodCollection {
    let ridges: Vec<Simplex> = x.ridges().collect();
    let neighbourhoods = ridges
        .par_iter()
        .filter_map(|sigma| {
            let t = ops::neighbourhood_triple(x, sigma).expect("ridge of x");
            if t.d_faces.is_empty() {
                return None;
            }
            let relabel: HashMap<u32, u32> = match scramble_seed {
                Some(seed) => {
                    let support: BTreeSet<u32> = t
                        .d_faces
                        .iter()
                        .flat_map(|f| f.vertices().iter().copied())
                        .collect();
                    let mut labels: Vec<u32> = (1..=support.len() as u32).collect();
                    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, colex_rank(sigma)));
                    labels.shuffle(&mut rng);
                    support.into_iter().zip(labels).collect()
                }
                None => HashMap::new(),
            };
            let map = |s: &Simplex| s.map(|v| relabel.get(&v).copied().unwrap_or(v));
            let sorted = |it: &BTreeSet<Simplex>| -> Vec<Simplex> {
                let mut v: Vec<Simplex> = it.iter().map(map).collect();
                v.sort();
                v
            };
            Some(RootedNeighbourhood {
                center: sigma.clone(),
                roster: sorted(&t.neighbours),
                d_faces: sorted(&t.d_faces),
                d_star_faces: sorted(&t.d_star_faces),
            })
        })
        .collect();
    NeighbourhoodCollection {
        format_version: FORMAT_VERSION,
        n: x.n(),
        d: x.d(),
        neighbourhoods,
    }
}

/// For each neighbour `tau` of the center, the canonical form of the complex
/// induced by the common neighbours of the center and `tau`, computed from
/// the neighbourhood alone. Sorted by neighbour handle.
pub fn center_fingerprints(nb: &RootedNeighbourhood) -> Vec<(Simplex, CanonicalForm)> {
    let local = nb.local_faces();
    let mut roster = nb.roster.clone();
    roster.sort();
    roster
        .iter()
        .map(|tau| {
            let common: BTreeSet<Simplex> = roster
                .iter()
                .filter(|rho| {
                    *rho != tau
                        && rho.union_len(tau) == local.d + 1
                        && local.has_face(&rho.union(tau))
                })
                .cloned()
                .collect();
            let h = Fragment::induce(&local, common);
            (tau.clone(), canonical_form(&h.face_family(), &[]))
        })
        .collect()
}

/// Fingerprints of every center in a collection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FingerprintTable {
    pub entries: Vec<(Simplex, Vec<(Simplex, CanonicalForm)>)>,
}

pub fn fingerprint_table(coll: &NeighbourhoodCollection) -> FingerprintTable {
    FingerprintTable {
        entries: coll
            .neighbourhoods
            .par_iter()
            .map(|nb| (nb.center.clone(), center_fingerprints(nb)))
            .collect(),
    }
}

/// A center whose reconstructed degree exceeds its published degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeMismatch {
    pub center: Simplex,
    pub published: usize,
    pub declared: usize,
}

/// Diagnostics on fingerprint collisions behind a reconstruction.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbiguityReport {
    pub declared_faces: usize,
    /// Distinct fingerprints held by more than two centers.
    pub collision_groups: usize,
    /// Largest number of centers sharing one fingerprint.
    pub largest_group: usize,
    /// Centers holding the fingerprint of an empty common neighbourhood.
    pub empty_fingerprint_centers: usize,
    /// Declared faces whose only support is a fingerprint shared by more
    /// than two centers.
    pub collision_supported: Vec<Simplex>,
    /// Centers whose declared degree disagrees with their neighbourhood.
    pub degree_mismatches: Vec<DegreeMismatch>,
    /// Declared faces through a center with a degree mismatch.
    pub ambiguous_faces: Vec<Simplex>,
}

impl AmbiguityReport {
    /// True when every center's declared degree equals its published degree.
    /// For a collection extracted from a complex this holds exactly when the
    /// reconstruction equals the source, since no true face is ever missed.
    pub fn is_clean(&self) -> bool {
        self.degree_mismatches.is_empty()
    }
}

/// Rebuilds a complex from a collection: `sigma1 ∪ sigma2` is declared a face
/// when the two centers share `d - 1` vertices and hold a common fingerprint.
pub fn reconstruct(coll: &NeighbourhoodCollection) -> Result<(Complex, AmbiguityReport)> {
    coll.validate()?;
    let (n, d) = (coll.n, coll.d);
    let table = fingerprint_table(coll);

    let centers: Vec<&Simplex> = table.entries.iter().map(|(c, _)| c).collect();
    let mut groups: BTreeMap<&CanonicalForm, Vec<usize>> = BTreeMap::new();
    for (i, (_, fps)) in table.entries.iter().enumerate() {
        let forms: BTreeSet<&CanonicalForm> = fps.iter().map(|(_, f)| f).collect();
        for f in forms {
            groups.entry(f).or_default().push(i);
        }
    }

    // Face -> whether some supporting fingerprint is shared by exactly two centers.
    let mut declared: BTreeMap<Simplex, bool> = BTreeMap::new();
    let mut report = AmbiguityReport::default();
    for (form, members) in &groups {
        report.largest_group = report.largest_group.max(members.len());
        if form.is_empty_form() {
            report.empty_fingerprint_centers = members.len();
        }
        if members.len() < 2 {
            continue;
        }
        if members.len() > 2 {
            report.collision_groups += 1;
        }
        let unique = members.len() == 2;
        for (a, b) in candidate_pairs(&centers, members, n, d) {
            let face = centers[a].union(centers[b]);
            let entry = declared.entry(face).or_insert(false);
            *entry |= unique;
        }
    }

    let faces: BTreeSet<Simplex> = declared.keys().cloned().collect();
    let y = Complex::from_set(n, d, faces);
    report.declared_faces = y.face_count();
    report.collision_supported = declared
        .iter()
        .filter(|(_, &unique)| !unique)
        .map(|(f, _)| f.clone())
        .collect();

    let published: HashMap<&Simplex, usize> = coll
        .neighbourhoods
        .iter()
        .map(|nb| (&nb.center, nb.d_faces.len()))
        .collect();
    let mut touched: BTreeSet<Simplex> = BTreeSet::new();
    for f in y.faces() {
        touched.extend(f.subsets(d));
    }
    for sigma in touched {
        let declared_deg = y.apexes(&sigma).len();
        let published_deg = published.get(&sigma).copied().unwrap_or(0);
        if declared_deg != published_deg {
            report.degree_mismatches.push(DegreeMismatch {
                center: sigma,
                published: published_deg,
                declared: declared_deg,
            });
        }
    }
    let bad: HashSet<&Simplex> = report.degree_mismatches.iter().map(|m| &m.center).collect();
    report.ambiguous_faces = y
        .faces()
        .iter()
        .filter(|f| f.subsets(d).any(|r| bad.contains(&r)))
        .cloned()
        .collect();
    Ok((y, report))
}

/// Pairs of group members that share `d - 1` vertices, as index pairs `a < b`.
fn candidate_pairs(
    centers: &[&Simplex],
    members: &[usize],
    n: u32,
    d: usize,
) -> Vec<(usize, usize)> {
    let k = members.len();
    let mut out = Vec::new();
    if k * (k - 1) / 2 <= k * d * (n as usize) {
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                if centers[a].union_len(centers[b]) == d + 1 {
                    out.push((a, b));
                }
            }
        }
    } else {
        let index: HashMap<&Simplex, usize> = members.iter().map(|&i| (centers[i], i)).collect();
        for &a in members {
            let sigma = centers[a];
            for &u in sigma.vertices() {
                let base = sigma.without(u);
                for w in 1..=n {
                    if sigma.contains(w) {
                        continue;
                    }
                    if let Some(&b) = index.get(&base.with(w)) {
                        if a < b {
                            out.push((a, b));
                        }
                    }
                }
            }
        }
    }
    out
}

/// Whether `x` and `y` have the same parameters and the same faces.
pub fn verify_exact(x: &Complex, y: &Complex) -> Result<bool> {
    if x.n() != y.n() || x.d() != y.d() {
        return Err(Error::invalid(format!(
            "parameter mismatch: (n, d) = ({}, {}) vs ({}, {})",
            x.n(),
            x.d(),
            y.n(),
            y.d()
        )));
    }
    Ok(x.faces() == y.faces())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex;

    #[test]
    fn empty_complex_round_trip() {
        let x = Complex::empty(6, 2).unwrap();
        let coll = extract_collection(&x, 3);
        assert!(coll.neighbourhoods.is_empty());
        let (y, report) = reconstruct(&coll).unwrap();
        assert_eq!(y.face_count(), 0);
        assert!(report.is_clean());
        assert!(report.collision_supported.is_empty());
    }

    #[test]
    fn single_edge_fingerprint_is_empty() {
        let x = Complex::new(4, 1, [simplex![1, 2]]).unwrap();
        let coll = extract_collection(&x, 0);
        let fps = center_fingerprints(&coll.neighbourhoods[0]);
        assert_eq!(fps.len(), 1);
        assert!(fps[0].1.is_empty_form());
    }

    #[test]
    fn unscrambled_matches_k_neighbourhood() {
        let x = Complex::new(
            6,
            2,
            [
                simplex![1, 2, 3],
                simplex![1, 2, 4],
                simplex![2, 3, 4],
                simplex![1, 3, 5],
                simplex![4, 5, 6],
            ],
        )
        .unwrap();
        let coll = extract_collection_unscrambled(&x);
        for nb in &coll.neighbourhoods {
            let frag = ops::k_neighbourhood(&x, &nb.center, 1).unwrap();
            assert_eq!(nb.fragment(), frag);
            assert_eq!(nb.center_image().as_ref(), Some(&nb.center));
        }
    }

    #[test]
    fn validation_paths() {
        let x = Complex::new(4, 1, [simplex![1, 2], simplex![2, 3]]).unwrap();
        let mut coll = extract_collection(&x, 5);
        coll.neighbourhoods[0].roster.pop();
        let err = coll.validate().unwrap_err();
        assert!(
            err.to_string().contains("neighbourhoods[0].roster"),
            "{err}"
        );
        assert!(NeighbourhoodCollection::from_json("{\"n\": 3}").is_err());
    }

    #[test]
    fn verify_exact_checks_parameters() {
        let x = Complex::new(4, 1, [simplex![1, 2]]).unwrap();
        assert!(verify_exact(&x, &x).unwrap());
        assert!(!verify_exact(&x, &Complex::empty(4, 1).unwrap()).unwrap());
        assert!(verify_exact(&x, &Complex::empty(5, 1).unwrap()).is_err());
    }
}
