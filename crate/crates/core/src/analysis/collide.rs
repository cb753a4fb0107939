//! Pairs of non-isomorphic complexes whose 1-neighbourhoods agree center by
//! center, which no reconstruction from 1-neighbourhoods can tell apart.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::iso::{canonical_form, CanonicalForm};
use crate::ops;
use crate::sampler::enumerate_complexes;
use crate::simplex::Simplex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    /// Try every complex with at most 24 candidate faces.
    Exhaustive,
    /// Build a known pair from disjoint cycles versus one long cycle.
    Constructed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub x: Complex,
    pub y: Complex,
}

/// Outcome of checking a candidate pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCheck {
    pub centers_checked: usize,
    /// Centers whose neighbourhoods differ up to isomorphism.
    pub mismatched_centers: Vec<Simplex>,
    /// Centers whose neighbourhoods differ once the center must map to itself.
    pub rooted_mismatches: usize,
    pub complexes_isomorphic: bool,
}

impl WitnessCheck {
    pub fn is_witness(&self) -> bool {
        self.mismatched_centers.is_empty() && !self.complexes_isomorphic
    }
}

/// Canonical form of a whole complex: its faces plus every vertex, which with
/// `n` and `d` fixed determines the complete skeleton.
pub fn complex_form(x: &Complex) -> CanonicalForm {
    let mut family: Vec<Simplex> = x.faces().iter().cloned().collect();
    family.extend((1..=x.n()).map(|v| Simplex::new([v]).expect("single vertex")));
    canonical_form(&family, &[])
}

/// Canonical form of the 1-neighbourhood of every `(d-1)`-simplex, in
/// lexicographic order of the centers.
pub fn neighbourhood_forms(x: &Complex, rooted: bool) -> Vec<CanonicalForm> {
    x.ridges()
        .map(|sigma| {
            let frag = ops::k_neighbourhood(x, &sigma, 1).expect("ridge of x");
            let anchors = if rooted { vec![sigma] } else { Vec::new() };
            canonical_form(&frag.face_family(), &anchors)
        })
        .collect()
}

/// Compares the neighbourhoods of `x` and `y` center by center and the
/// complexes as a whole.
pub fn verify_witness(x: &Complex, y: &Complex) -> Result<WitnessCheck> {
    if x.n() != y.n() || x.d() != y.d() {
        return Err(Error::invalid("witness complexes must share n and d"));
    }
    let centers: Vec<Simplex> = x.ridges().collect();
    let (fx, fy) = (neighbourhood_forms(x, false), neighbourhood_forms(y, false));
    let (rx, ry) = (neighbourhood_forms(x, true), neighbourhood_forms(y, true));
    Ok(WitnessCheck {
        centers_checked: centers.len(),
        mismatched_centers: centers
            .iter()
            .zip(fx.iter().zip(&fy))
            .filter(|(_, (a, b))| a != b)
            .map(|(s, _)| s.clone())
            .collect(),
        rooted_mismatches: rx.iter().zip(&ry).filter(|(a, b)| a != b).count(),
        complexes_isomorphic: complex_form(x) == complex_form(y),
    })
}

/// Looks for a pair of complexes on `{1..n}` with matching neighbourhoods
/// that are not isomorphic. `Ok(None)` means the search found nothing.
pub fn collision_search(n: u32, d: usize, mode: SearchMode) -> Result<Option<Witness>> {
    match mode {
        SearchMode::Exhaustive => exhaustive(n, d),
        SearchMode::Constructed => constructed(n, d).map(Some),
    }
}

fn exhaustive(n: u32, d: usize) -> Result<Option<Witness>> {
    let mut classes: HashMap<Vec<CanonicalForm>, Vec<(Complex, CanonicalForm)>> = HashMap::new();
    for x in enumerate_complexes(n, d)? {
        let key = neighbourhood_forms(&x, false);
        let form = complex_form(&x);
        let members = classes.entry(key).or_default();
        if let Some((other, _)) = members.iter().find(|(_, f)| *f != form) {
            return Ok(Some(Witness {
                x: other.clone(),
                y: x,
            }));
        }
        if members.is_empty() {
            members.push((x, form));
        }
    }
    Ok(None)
}

fn edge(a: u32, b: u32) -> Simplex {
    Simplex::new([a, b]).expect("distinct endpoints")
}

/// Edges of the cycle visiting `vs` in order.
fn cycle(vs: &[u32]) -> Vec<Simplex> {
    (0..vs.len())
        .map(|i| edge(vs[i], vs[(i + 1) % vs.len()]))
        .collect()
}

fn constructed(n: u32, d: usize) -> Result<Witness> {
    match d {
        1 => {
            if n < 8 {
                return Err(Error::invalid(
                    "the cycle construction needs n >= 8 when d = 1",
                ));
            }
            let m = n / 4;
            let first: Vec<u32> = (1..=2 * m).collect();
            let second: Vec<u32> = (2 * m + 1..=4 * m).collect();
            let all: Vec<u32> = (1..=4 * m).collect();
            let x = Complex::new(n, 1, cycle(&first).into_iter().chain(cycle(&second)))?;
            let y = Complex::new(n, 1, cycle(&all))?;
            Ok(Witness { x, y })
        }
        2 => {
            // Two cones over 2-regular graphs on 4m base vertices. In `x` the
            // first apex sees two disjoint 2m-cycles and the second the
            // complementary Hamiltonian cycle of C_4m(1, 2); in `y` the two
            // apexes see the halves of a Hamiltonian decomposition of the
            // same graph. Every edge's neighbourhood has the same shape in
            // both, but only `x` has an apex with a disconnected link.
            if n < 10 {
                return Err(Error::invalid(
                    "the cone construction needs n >= 10 when d = 2",
                ));
            }
            let m = (n - 2) / 4;
            let k = 4 * m;
            let (apex_a, apex_b) = (k + 1, k + 2);
            let step = |i: u32, s: u32| (i - 1 + s) % k + 1;
            let evens: Vec<u32> = (0..2 * m).map(|j| 2 * j + 1).collect();
            let odds: Vec<u32> = (0..2 * m).map(|j| 2 * j + 2).collect();
            let two_cycles: Vec<Simplex> = cycle(&evens).into_iter().chain(cycle(&odds)).collect();
            let hamiltonian: Vec<Simplex> = (1..=k).map(|i| edge(i, step(i, 1))).collect();
            let graph: BTreeSet<Simplex> = two_cycles.iter().chain(&hamiltonian).cloned().collect();
            let (left, right) = hamiltonian_decomposition(k, &graph).ok_or_else(|| {
                Error::Precondition(format!("no Hamiltonian decomposition of C_{k}(1, 2) found"))
            })?;
            let cone = |apex: u32, edges: &[Simplex]| -> Vec<Simplex> {
                edges.iter().map(|e| e.with(apex)).collect()
            };
            let x = Complex::new(
                n,
                2,
                cone(apex_a, &two_cycles)
                    .into_iter()
                    .chain(cone(apex_b, &hamiltonian)),
            )?;
            let y = Complex::new(
                n,
                2,
                cone(apex_a, &left).into_iter().chain(cone(apex_b, &right)),
            )?;
            Ok(Witness { x, y })
        }
        _ => Err(Error::invalid(format!(
            "constructed witnesses are available for d = 1 and d = 2, not d = {d}"
        ))),
    }
}

/// Splits a 4-regular graph on `1..=k` into two Hamiltonian cycles by depth-first
/// search over Hamiltonian cycles through vertex 1.
fn hamiltonian_decomposition(
    k: u32,
    graph: &BTreeSet<Simplex>,
) -> Option<(Vec<Simplex>, Vec<Simplex>)> {
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); k as usize + 1];
    for e in graph {
        let (a, b) = (e.vertices()[0], e.vertices()[1]);
        adj[a as usize].push(b);
        adj[b as usize].push(a);
    }
    let mut path = vec![1u32];
    let mut used = vec![false; k as usize + 1];
    used[1] = true;
    search(k, graph, &adj, &mut path, &mut used)
}

fn search(
    k: u32,
    graph: &BTreeSet<Simplex>,
    adj: &[Vec<u32>],
    path: &mut Vec<u32>,
    used: &mut [bool],
) -> Option<(Vec<Simplex>, Vec<Simplex>)> {
    let last = *path.last().expect("non-empty path");
    if path.len() == k as usize {
        if !adj[last as usize].contains(&1) {
            return None;
        }
        let first = cycle(path);
        let rest: Vec<Simplex> = graph
            .iter()
            .filter(|e| !first.contains(e))
            .cloned()
            .collect();
        return is_single_cycle(k, &rest).then_some((first, rest));
    }
    for &next in &adj[last as usize] {
        if used[next as usize] {
            continue;
        }
        used[next as usize] = true;
        path.push(next);
        if let Some(found) = search(k, graph, adj, path, used) {
            return Some(found);
        }
        path.pop();
        used[next as usize] = false;
    }
    None
}

fn is_single_cycle(k: u32, edges: &[Simplex]) -> bool {
    if edges.len() != k as usize {
        return false;
    }
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); k as usize + 1];
    for e in edges {
        let (a, b) = (e.vertices()[0], e.vertices()[1]);
        adj[a as usize].push(b);
        adj[b as usize].push(a);
    }
    if adj[1..].iter().any(|a| a.len() != 2) {
        return false;
    }
    let (mut prev, mut cur, mut steps) = (1u32, adj[1][0], 1u32);
    while cur != 1 {
        let next = if adj[cur as usize][0] == prev {
            adj[cur as usize][1]
        } else {
            adj[cur as usize][0]
        };
        prev = cur;
        cur = next;
        steps += 1;
    }
    steps == k
}
