//! Brute-force oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use lm_shotgun::{Complex, FaceOracle, Simplex};

/// All permutations of `0..m` (Heap's algorithm).
pub fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut a: Vec<usize> = (0..m).collect();
    let mut out = vec![a.clone()];
    let mut c = vec![0usize; m];
    let mut i = 0;
    while i < m {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Whether some bijection of supports maps family `a` onto family `b`, by
/// trying every permutation.
pub fn brute_isomorphic(a: &[Simplex], b: &[Simplex]) -> bool {
    let support = |f: &[Simplex]| -> Vec<u32> {
        let s: BTreeSet<u32> = f
            .iter()
            .flat_map(|s| s.vertices().iter().copied())
            .collect();
        s.into_iter().collect()
    };
    let (va, vb) = (support(a), support(b));
    let fa: HashSet<&Simplex> = a.iter().collect();
    let fb: HashSet<Simplex> = b.iter().cloned().collect();
    if va.len() != vb.len() || fa.len() != fb.len() {
        return false;
    }
    permutations(va.len()).into_iter().any(|perm| {
        fa.iter().all(|s| {
            let image = s.map(|v| vb[perm[va.binary_search(&v).unwrap()]]);
            fb.contains(&image)
        })
    })
}

/// Neighbours of `sigma` by scanning every `(d-1)`-simplex.
pub fn neighbours_by_definition(x: &Complex, sigma: &Simplex) -> BTreeSet<Simplex> {
    x.ridges()
        .filter(|t| t.union_len(sigma) == x.d() + 1 && x.has_face(&t.union(sigma)))
        .collect()
}

/// Degree of `sigma` by scanning the face list.
pub fn degree_by_definition(x: &Complex, sigma: &Simplex) -> usize {
    x.faces().iter().filter(|f| sigma.is_subset(f)).count()
}

/// All-pairs distances between `(d-1)`-simplices by Floyd–Warshall.
pub fn floyd_warshall(x: &Complex) -> (Vec<Simplex>, Vec<Vec<Option<usize>>>) {
    let ridges: Vec<Simplex> = x.ridges().collect();
    let m = ridges.len();
    let mut dist = vec![vec![None; m]; m];
    for i in 0..m {
        dist[i][i] = Some(0);
        for j in 0..m {
            if i != j
                && ridges[i].union_len(&ridges[j]) == x.d() + 1
                && x.has_face(&ridges[i].union(&ridges[j]))
            {
                dist[i][j] = Some(1);
            }
        }
    }
    for k in 0..m {
        for i in 0..m {
            for j in 0..m {
                if let (Some(a), Some(b)) = (dist[i][k], dist[k][j]) {
                    if dist[i][j].is_none_or(|c| a + b < c) {
                        dist[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    (ridges, dist)
}

/// Every face of `x` (of any dimension, including the empty one) inside the
/// union of two members of `roster`, by expanding the definition literally.
pub fn induced_by_definition(x: &Complex, roster: &BTreeSet<Simplex>) -> BTreeSet<Simplex> {
    let mut all: Vec<Simplex> = Vec::new();
    for k in 0..=x.d() {
        all.extend(lm_shotgun::simplex::Combinations::new(x.n(), k));
    }
    all.extend(x.faces().iter().cloned());
    let unions: Vec<Simplex> = roster
        .iter()
        .flat_map(|a| roster.iter().map(move |b| a.union(b)))
        .collect();
    all.into_iter()
        .filter(|t| unions.iter().any(|u| t.is_subset(u)))
        .collect()
}
