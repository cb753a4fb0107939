//! Vertex sets and the combinatorics of `k`-subsets of `{1..n}`.

use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// A finite set of vertex ids, stored strictly increasing.
///
/// A simplex with `k + 1` vertices has dimension `k`. Vertex ids are 1-based
/// when the simplex lives in a [`Complex`](crate::Complex), but the type itself
/// only requires distinct `u32` labels, so it is also used for the anonymised
/// interiors of neighbourhoods and for generic face families.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Simplex(SmallVec<[u32; 4]>);

impl Simplex {
    /// Builds a simplex from vertices in any order. Duplicates are rejected.
    pub fn new(vertices: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut v: SmallVec<[u32; 4]> = vertices.into_iter().collect();
        v.sort_unstable();
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!("duplicate vertex in {v:?}")));
        }
        Ok(Simplex(v))
    }

    pub fn empty() -> Self {
        Simplex(SmallVec::new())
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|vertices| - 1`; the empty simplex has dimension `-1`.
    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn contains(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset(&self, other: &Simplex) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() {
            if j == other.0.len() {
                return false;
            }
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => return false,
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
                std::cmp::Ordering::Greater => j += 1,
            }
        }
        true
    }

    pub fn union(&self, other: &Simplex) -> Simplex {
        let mut out = SmallVec::with_capacity(self.len() + other.len());
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i] < b[j]) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j] < a[i] {
                out.push(b[j]);
                j += 1;
            } else {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
        Simplex(out)
    }

    /// Size of the union without allocating it.
    pub fn union_len(&self, other: &Simplex) -> usize {
        self.len() + other.len() - self.intersection_len(other)
    }

    pub fn intersection(&self, other: &Simplex) -> Simplex {
        Simplex(
            self.0
                .iter()
                .copied()
                .filter(|v| other.contains(*v))
                .collect(),
        )
    }

    pub fn intersection_len(&self, other: &Simplex) -> usize {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j, mut k) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    k += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        k
    }

    /// The simplex with `v` removed (unchanged if `v` is absent).
    pub fn without(&self, v: u32) -> Simplex {
        Simplex(self.0.iter().copied().filter(|&u| u != v).collect())
    }

    /// The simplex with `v` added (unchanged if already present).
    pub fn with(&self, v: u32) -> Simplex {
        match self.0.binary_search(&v) {
            Ok(_) => self.clone(),
            Err(pos) => {
                let mut out = self.0.clone();
                out.insert(pos, v);
                Simplex(out)
            }
        }
    }

    /// All subsets of size `k`, in lexicographic order.
    pub fn subsets(&self, k: usize) -> impl Iterator<Item = Simplex> + '_ {
        Combinations::new(self.len() as u32, k).map(move |idx| {
            Simplex(
                idx.vertices()
                    .iter()
                    .map(|&i| self.0[i as usize - 1])
                    .collect(),
            )
        })
    }

    /// Applies a vertex map; the result is re-sorted.
    pub fn map(&self, f: impl Fn(u32) -> u32) -> Simplex {
        let mut v: SmallVec<[u32; 4]> = self.0.iter().map(|&x| f(x)).collect();
        v.sort_unstable();
        Simplex(v)
    }
}

impl TryFrom<Vec<u32>> for Simplex {
    type Error = Error;

    fn try_from(v: Vec<u32>) -> Result<Self> {
        Simplex::new(v)
    }
}

impl From<Simplex> for Vec<u32> {
    fn from(s: Simplex) -> Self {
        s.0.into_vec()
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Builds a [`Simplex`] from a vertex list, panicking on duplicates.
///
/// ```
/// use lm_shotgun::simplex;
/// let s = simplex![3, 1, 2];
/// assert_eq!(s.vertices(), &[1, 2, 3]);
/// ```
#[macro_export]
macro_rules! simplex {
    ($($v:expr),* $(,)?) => {
        $crate::Simplex::new([$($v as u32),*]).expect("duplicate vertex in simplex! literal")
    };
}

/// `C(n, k)` as `u128`; saturates rather than overflowing.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(x) => x / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Colexicographic rank of a `k`-subset of `{1..n}`: `sum_i C(v_i - 1, i + 1)`.
///
/// Ranks are dense in `0..C(n, k)` and independent of `n`.
pub fn colex_rank(s: &Simplex) -> u64 {
    s.vertices()
        .iter()
        .enumerate()
        .map(|(i, &v)| binomial(v as u64 - 1, i as u64 + 1) as u64)
        .sum()
}

/// Inverse of [`colex_rank`] for `k`-subsets.
pub fn colex_unrank(mut rank: u64, k: usize) -> Simplex {
    let mut out: SmallVec<[u32; 4]> = smallvec::smallvec![0; k];
    for i in (0..k).rev() {
        let slot = i as u64 + 1;
        // largest c with C(c, slot) <= rank, found by galloping then bisection
        let mut hi: u64 = slot;
        while (binomial(hi, slot) as u64) <= rank {
            hi *= 2;
        }
        let mut lo = slot - 1;
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if (binomial(mid, slot) as u64) <= rank {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        rank -= binomial(lo, slot) as u64;
        out[i] = lo as u32 + 1;
    }
    Simplex(out)
}

/// Lexicographic iterator over the `k`-subsets of `{1..n}`.
#[derive(Debug, Clone)]
pub struct Combinations {
    n: u32,
    current: Option<SmallVec<[u32; 4]>>,
}

impl Combinations {
    pub fn new(n: u32, k: usize) -> Self {
        let current = if k as u64 <= n as u64 {
            Some((1..=k as u32).collect())
        } else {
            None
        };
        Combinations { n, current }
    }
}

impl Iterator for Combinations {
    type Item = Simplex;

    fn next(&mut self) -> Option<Simplex> {
        let cur = self.current.as_mut()?;
        let out = Simplex(cur.clone());
        let k = cur.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if cur[i] < self.n - (k - 1 - i) as u32 {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Colexicographic iterator over the `k`-subsets of `{1..n}`; yields ranks `0, 1, 2, ...`.
#[derive(Debug, Clone)]
pub(crate) struct ColexCombinations {
    n: u32,
    current: Option<SmallVec<[u32; 4]>>,
}

impl ColexCombinations {
    pub(crate) fn new(n: u32, k: usize) -> Self {
        let current = if k as u64 <= n as u64 {
            Some((1..=k as u32).collect())
        } else {
            None
        };
        ColexCombinations { n, current }
    }
}

impl Iterator for ColexCombinations {
    type Item = Simplex;

    fn next(&mut self) -> Option<Simplex> {
        let cur = self.current.as_mut()?;
        let out = Simplex(cur.clone());
        let k = cur.len();
        if k == 0 {
            self.current = None;
            return Some(out);
        }
        // bump the lowest position that has room below its successor
        let mut i = 0;
        loop {
            let ceiling = if i + 1 < k { cur[i + 1] } else { self.n + 1 };
            if cur[i] + 1 < ceiling {
                cur[i] += 1;
                for (j, slot) in cur.iter_mut().enumerate().take(i) {
                    *slot = j as u32 + 1;
                }
                break;
            }
            i += 1;
            if i == k {
                self.current = None;
                break;
            }
        }
        Some(out)
    }
}
