//! Neighbour relation, degrees, distances, balls and induced fragments.
//!
//! Every function takes any [`FaceOracle`], so the same code runs against a
//! materialised [`Complex`](crate::Complex) and a lazily sampled complex.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::complex::FaceOracle;
use crate::error::{Error, Result};
use crate::fragment::Fragment;
use crate::simplex::Simplex;

/// Counts behind the common-neighbour statistic of a neighbouring pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeighbourPairStats {
    /// Number of `(d-1)`-simplices adjacent to both members of the pair.
    pub w: usize,
    /// Those contained in the union of the pair.
    pub s_prime: usize,
    /// The rest; each is the pair's intersection plus one outside vertex.
    pub s_dprime: usize,
}

/// Common neighbours of four `(d-1)`-simplices and the cross-adjacency count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FourTupleStats {
    /// Number of `(d-1)`-simplices adjacent to all four.
    pub s: usize,
    /// `[s1~s3 and s1~s4] + [s2~s3 and s2~s4]`.
    pub z: usize,
}

pub(crate) fn check_ridge<F: FaceOracle + ?Sized>(x: &F, s: &Simplex) -> Result<()> {
    if s.len() != x.d() {
        return Err(Error::invalid(format!(
            "{s} has dimension {}, expected {}",
            s.dim(),
            x.d() as isize - 1
        )));
    }
    if s.vertices().iter().any(|&v| v == 0 || v > x.n()) {
        return Err(Error::invalid(format!(
            "{s} has a vertex outside 1..={}",
            x.n()
        )));
    }
    Ok(())
}

/// Number of `d`-faces containing the `(d-1)`-simplex `sigma`.
///
/// ```
/// use lm_shotgun::{ops, simplex, Complex};
/// let x = Complex::new(5, 2, [simplex![1, 2, 3], simplex![1, 2, 4], simplex![1, 2, 5]])?;
/// assert_eq!(ops::degree(&x, &simplex![1, 2])?, 3);
/// # Ok::<(), lm_shotgun::Error>(())
/// ```
pub fn degree<F: FaceOracle + ?Sized>(x: &F, sigma: &Simplex) -> Result<usize> {
    check_ridge(x, sigma)?;
    Ok(x.apexes(sigma).len())
}

/// Whether `a ∪ b` has `d + 1` vertices and is a face.
pub fn are_neighbours<F: FaceOracle + ?Sized>(x: &F, a: &Simplex, b: &Simplex) -> Result<bool> {
    check_ridge(x, a)?;
    check_ridge(x, b)?;
    Ok(adjacent(x, a, b))
}

pub(crate) fn adjacent<F: FaceOracle + ?Sized>(x: &F, a: &Simplex, b: &Simplex) -> bool {
    a.union_len(b) == x.d() + 1 && x.has_face(&a.union(b))
}

/// The neighbours of `sigma`: `sigma - u + v` for each apex `v` and `u ∈ sigma`.
pub fn neighbours<F: FaceOracle + ?Sized>(x: &F, sigma: &Simplex) -> Result<BTreeSet<Simplex>> {
    check_ridge(x, sigma)?;
    Ok(neighbour_set(x, sigma))
}

pub(crate) fn neighbour_set<F: FaceOracle + ?Sized>(x: &F, sigma: &Simplex) -> BTreeSet<Simplex> {
    let mut out = BTreeSet::new();
    for v in x.apexes(sigma) {
        for &u in sigma.vertices() {
            out.insert(sigma.without(u).with(v));
        }
    }
    out
}

/// Length of a shortest chain of neighbours from `a` to `b`, or `None` when
/// they lie in different components.
pub fn distance<F: FaceOracle + ?Sized>(x: &F, a: &Simplex, b: &Simplex) -> Result<Option<usize>> {
    check_ridge(x, a)?;
    check_ridge(x, b)?;
    if a == b {
        return Ok(Some(0));
    }
    let mut dist: HashMap<Simplex, usize> = HashMap::from([(a.clone(), 0)]);
    let mut queue = VecDeque::from([a.clone()]);
    while let Some(s) = queue.pop_front() {
        let ds = dist[&s];
        for t in neighbour_set(x, &s) {
            if dist.contains_key(&t) {
                continue;
            }
            if &t == b {
                return Ok(Some(ds + 1));
            }
            dist.insert(t.clone(), ds + 1);
            queue.push_back(t);
        }
    }
    Ok(None)
}

/// All `(d-1)`-simplices within distance `k` of `sigma`, including `sigma`.
pub fn k_ball<F: FaceOracle + ?Sized>(
    x: &F,
    sigma: &Simplex,
    k: usize,
) -> Result<BTreeSet<Simplex>> {
    check_ridge(x, sigma)?;
    let mut ball = BTreeSet::from([sigma.clone()]);
    let mut frontier = vec![sigma.clone()];
    for _ in 0..k {
        let mut next = Vec::new();
        for s in &frontier {
            for t in neighbour_set(x, s) {
                if ball.insert(t.clone()) {
                    next.push(t);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(ball)
}

/// The sub-complex induced by the `k`-ball of `sigma`: every face contained in
/// the union of two ball members. `k = 0` is rejected.
///
/// ```
/// use lm_shotgun::{ops, simplex, Complex};
/// let triangle = Complex::new(3, 1, [simplex![1, 2], simplex![2, 3], simplex![1, 3]])?;
/// let nb = ops::k_neighbourhood(&triangle, &simplex![1], 1)?;
/// assert_eq!(nb.faces.len(), 3);
/// # Ok::<(), lm_shotgun::Error>(())
/// ```
pub fn k_neighbourhood<F: FaceOracle + ?Sized>(
    x: &F,
    sigma: &Simplex,
    k: usize,
) -> Result<Fragment> {
    if k == 0 {
        return Err(Error::invalid("k-neighbourhood needs k >= 1"));
    }
    let ball = k_ball(x, sigma, k)?;
    Ok(Fragment::induce(x, ball))
}

/// Common neighbours of `a` and `b`, computed from the apexes of `a`.
pub(crate) fn common_neighbours<F: FaceOracle + ?Sized>(
    x: &F,
    a: &Simplex,
    b: &Simplex,
) -> BTreeSet<Simplex> {
    neighbour_set(x, a)
        .into_iter()
        .filter(|t| adjacent(x, t, b))
        .collect()
}

fn require_adjacent<F: FaceOracle + ?Sized>(x: &F, a: &Simplex, b: &Simplex) -> Result<()> {
    check_ridge(x, a)?;
    check_ridge(x, b)?;
    if !adjacent(x, a, b) {
        return Err(Error::Precondition(format!(
            "{a} and {b} are not neighbours"
        )));
    }
    Ok(())
}

/// The fragment induced by the common neighbours of the neighbouring pair
/// `(a, b)`. Its roster is the common-neighbour set.
pub fn common_fingerprint_complex<F: FaceOracle + ?Sized>(
    x: &F,
    a: &Simplex,
    b: &Simplex,
) -> Result<Fragment> {
    require_adjacent(x, a, b)?;
    Ok(Fragment::induce(x, common_neighbours(x, a, b)))
}

/// Splits the common neighbours of the neighbouring pair `(a, b)` into those
/// inside `a ∪ b` and the rest.
pub fn neighbour_pair_stats<F: FaceOracle + ?Sized>(
    x: &F,
    a: &Simplex,
    b: &Simplex,
) -> Result<NeighbourPairStats> {
    require_adjacent(x, a, b)?;
    let u = a.union(b);
    let common = common_neighbours(x, a, b);
    let s_prime = common.iter().filter(|t| t.is_subset(&u)).count();
    Ok(NeighbourPairStats {
        w: common.len(),
        s_prime,
        s_dprime: common.len() - s_prime,
    })
}

/// Common neighbours of all four simplices and the cross-adjacency count, for
/// neighbouring pairs `(s1, s2)` and `(s3, s4)`.
pub fn four_tuple_stats<F: FaceOracle + ?Sized>(
    x: &F,
    tuple: [&Simplex; 4],
) -> Result<FourTupleStats> {
    let [s1, s2, s3, s4] = tuple;
    require_adjacent(x, s1, s2)?;
    require_adjacent(x, s3, s4)?;
    let s = common_neighbours(x, s1, s2)
        .iter()
        .filter(|t| adjacent(x, t, s3) && adjacent(x, t, s4))
        .count();
    let z = usize::from(adjacent(x, s1, s3) && adjacent(x, s1, s4))
        + usize::from(adjacent(x, s2, s3) && adjacent(x, s2, s4));
    Ok(FourTupleStats { s, z })
}

/// Number of distinct faces of `x` of the form `a ∪ b` with `a, b ∈ family`.
pub fn supp_d<'a, F, I>(x: &F, family: I) -> Result<usize>
where
    F: FaceOracle + ?Sized,
    I: IntoIterator<Item = &'a Simplex>,
{
    let members: Vec<&Simplex> = family.into_iter().collect();
    for s in &members {
        check_ridge(x, s)?;
    }
    let mut faces = BTreeSet::new();
    for (i, a) in members.iter().enumerate() {
        for b in &members[i + 1..] {
            if adjacent(x, a, b) {
                faces.insert(a.union(b));
            }
        }
    }
    Ok(faces.len())
}

/// The 1-neighbourhood of `sigma` split into its neighbours, the faces through
/// `sigma`, and the faces spanned by two neighbours that avoid `sigma`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighbourhoodTriple {
    pub neighbours: BTreeSet<Simplex>,
    pub d_faces: BTreeSet<Simplex>,
    pub d_star_faces: BTreeSet<Simplex>,
}

/// Computes the triple directly from the apexes of `sigma` and of its
/// neighbours, without materialising the induced fragment.
pub fn neighbourhood_triple<F: FaceOracle + ?Sized>(
    x: &F,
    sigma: &Simplex,
) -> Result<NeighbourhoodTriple> {
    check_ridge(x, sigma)?;
    let neighbours = neighbour_set(x, sigma);
    let d_faces: BTreeSet<Simplex> = x.apexes(sigma).into_iter().map(|v| sigma.with(v)).collect();
    let mut d_star_faces = BTreeSet::new();
    for rho in &neighbours {
        for v in x.apexes(rho) {
            let f = rho.with(v);
            if sigma.is_subset(&f) {
                continue;
            }
            // `f = rho ∪ rho'`; the other member must also neighbour `sigma`.
            if f.vertices()
                .iter()
                .any(|&w| w != v && neighbours.contains(&f.without(w)))
            {
                d_star_faces.insert(f);
            }
        }
    }
    Ok(NeighbourhoodTriple {
        neighbours,
        d_faces,
        d_star_faces,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex;
    use crate::Complex;

    fn figure_two() -> Complex {
        Complex::new(
            5,
            2,
            [
                simplex![1, 2, 5],
                simplex![1, 4, 5],
                simplex![1, 3, 4],
                simplex![1, 2, 3],
            ],
        )
        .unwrap()
    }

    #[test]
    fn degree_examples() {
        let x = Complex::new(
            5,
            2,
            [simplex![1, 2, 3], simplex![1, 2, 4], simplex![1, 2, 5]],
        )
        .unwrap();
        assert_eq!(degree(&x, &simplex![1, 2]).unwrap(), 3);
        assert_eq!(neighbours(&x, &simplex![1, 2]).unwrap().len(), 6);
        let k5 = Complex::complete(5, 1).unwrap();
        assert_eq!(degree(&k5, &simplex![3]).unwrap(), 4);
        assert!(degree(&k5, &simplex![1, 2]).is_err());
    }

    #[test]
    fn neighbour_examples() {
        let x = figure_two();
        assert!(are_neighbours(&x, &simplex![1, 2], &simplex![1, 5]).unwrap());
        assert!(!are_neighbours(&x, &simplex![1, 2], &simplex![1, 2]).unwrap());
        assert!(!are_neighbours(&x, &simplex![1, 2], &simplex![3, 4]).unwrap());
        let star = Complex::new(3, 1, [simplex![1, 2], simplex![1, 3]]).unwrap();
        assert_eq!(
            neighbours(&star, &simplex![1]).unwrap(),
            BTreeSet::from([simplex![2], simplex![3]])
        );
    }

    #[test]
    fn distance_on_path() {
        let path = Complex::new(4, 1, [simplex![1, 2], simplex![2, 3]]).unwrap();
        assert_eq!(
            distance(&path, &simplex![1], &simplex![1]).unwrap(),
            Some(0)
        );
        assert_eq!(
            distance(&path, &simplex![1], &simplex![2]).unwrap(),
            Some(1)
        );
        assert_eq!(
            distance(&path, &simplex![1], &simplex![3]).unwrap(),
            Some(2)
        );
        assert_eq!(distance(&path, &simplex![1], &simplex![4]).unwrap(), None);
        assert_eq!(
            k_ball(&path, &simplex![1], 2).unwrap(),
            BTreeSet::from([simplex![1], simplex![2], simplex![3]])
        );
        assert_eq!(
            k_ball(&path, &simplex![1], 0).unwrap(),
            BTreeSet::from([simplex![1]])
        );
    }

    #[test]
    fn pair_stats_and_fingerprint() {
        let x = figure_two();
        let (a, b) = (simplex![1, 2], simplex![1, 4]);
        assert!(are_neighbours(&x, &a, &b).is_ok_and(|t| !t));
        let (a, b) = (simplex![1, 2], simplex![2, 5]);
        let st = neighbour_pair_stats(&x, &a, &b).unwrap();
        assert_eq!(st.s_prime, 1);
        assert_eq!(st.w, st.s_prime + st.s_dprime);
        assert!(common_fingerprint_complex(&x, &simplex![1, 2], &simplex![3, 4]).is_err());

        let only = Complex::new(6, 3, [simplex![1, 2, 3, 4]]).unwrap();
        let st = neighbour_pair_stats(&only, &simplex![1, 2, 3], &simplex![1, 2, 4]).unwrap();
        assert_eq!((st.w, st.s_prime, st.s_dprime), (2, 2, 0));
    }

    #[test]
    fn four_tuple_self_pair() {
        let x = Complex::complete(6, 2).unwrap();
        let (a, b) = (simplex![1, 2], simplex![1, 3]);
        let st = four_tuple_stats(&x, [&a, &b, &a, &b]).unwrap();
        assert_eq!(st.z, 0);
        assert_eq!(st.s, neighbour_pair_stats(&x, &a, &b).unwrap().w);
    }

    #[test]
    fn supp_examples() {
        let x = Complex::new(3, 1, [simplex![1, 2]]).unwrap();
        assert_eq!(supp_d(&x, &[simplex![1], simplex![2]]).unwrap(), 1);
        assert_eq!(supp_d(&x, &[simplex![1]]).unwrap(), 0);
        assert_eq!(supp_d(&x, &[]).unwrap(), 0);
    }

    #[test]
    fn triple_matches_fragment() {
        let x = figure_two();
        for sigma in x.ridges() {
            let t = neighbourhood_triple(&x, &sigma).unwrap();
            let frag = k_neighbourhood(&x, &sigma, 1).unwrap();
            let through: BTreeSet<_> = frag
                .faces
                .iter()
                .filter(|f| sigma.is_subset(f))
                .cloned()
                .collect();
            let avoid: BTreeSet<_> = frag
                .faces
                .iter()
                .filter(|f| !sigma.is_subset(f))
                .cloned()
                .collect();
            assert_eq!(t.d_faces, through);
            assert_eq!(t.d_star_faces, avoid);
            let mut roster = t.neighbours.clone();
            roster.insert(sigma.clone());
            assert_eq!(frag.roster, roster);
        }
    }
}
