//! Complexes with a complete `(d-1)`-skeleton and a chosen set of `d`-faces.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::OnceLock;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::simplex::{binomial, Combinations, Simplex};

/// Read access to the `d`-faces of a complex on `{1..n}` whose `(d-1)`-skeleton
/// is complete.
///
/// Implemented by the materialised [`Complex`] and by the lazily evaluated
/// [`LazyLmComplex`](crate::sampler::LazyLmComplex), so that the combinatorial
/// operations in [`ops`](crate::ops) work on either.
pub trait FaceOracle {
    fn n(&self) -> u32;

    fn d(&self) -> usize;

    /// Whether the `(d+1)`-vertex set `face` is a `d`-face.
    fn has_face(&self, face: &Simplex) -> bool;

    /// Vertices `v` such that `ridge + v` is a `d`-face, ascending.
    fn apexes(&self, ridge: &Simplex) -> Vec<u32> {
        (1..=self.n())
            .filter(|&v| !ridge.contains(v) && self.has_face(&ridge.with(v)))
            .collect()
    }
}

/// A complex on `{1..n}` containing every simplex of dimension below `d` plus
/// the listed `d`-faces.
///
/// Immutable after construction. The ridge-to-apex index used by degree and
/// neighbour queries is built on first use and shared between threads.
#[derive(Clone)]
pub struct Complex {
    n: u32,
    d: usize,
    faces: BTreeSet<Simplex>,
    index: OnceLock<HashMap<Simplex, SmallVec<[u32; 8]>>>,
}

impl Complex {
    /// Validates and builds a complex. Every face needs `d + 1` distinct
    /// vertices in `1..=n`; repeated faces are rejected.
    pub fn new(n: u32, d: usize, faces: impl IntoIterator<Item = Simplex>) -> Result<Self> {
        if d == 0 {
            return Err(Error::invalid("dimension d must be at least 1"));
        }
        if (n as usize) <= d {
            return Err(Error::invalid(format!("need n > d, got n = {n}, d = {d}")));
        }
        let mut set = BTreeSet::new();
        for f in faces {
            if f.len() != d + 1 {
                return Err(Error::invalid(format!(
                    "face {f} has {} vertices, expected {}",
                    f.len(),
                    d + 1
                )));
            }
            if f.vertices().iter().any(|&v| v == 0 || v > n) {
                return Err(Error::invalid(format!(
                    "face {f} has a vertex outside 1..={n}"
                )));
            }
            if !set.insert(f.clone()) {
                return Err(Error::invalid(format!("face {f} listed twice")));
            }
        }
        Ok(Self::from_set(n, d, set))
    }

    pub(crate) fn from_set(n: u32, d: usize, faces: BTreeSet<Simplex>) -> Self {
        Complex {
            n,
            d,
            faces,
            index: OnceLock::new(),
        }
    }

    /// The complex with no `d`-faces.
    pub fn empty(n: u32, d: usize) -> Result<Self> {
        Self::new(n, d, std::iter::empty())
    }

    /// The complex containing every `d`-face on `{1..n}`.
    pub fn complete(n: u32, d: usize) -> Result<Self> {
        Self::new(n, d, Combinations::new(n, d + 1))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn faces(&self) -> &BTreeSet<Simplex> {
        &self.faces
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Membership for a simplex of any dimension. Everything of dimension
    /// `< d` on `{1..n}` is present.
    pub fn contains(&self, s: &Simplex) -> bool {
        if s.vertices().iter().any(|&v| v == 0 || v > self.n) {
            return false;
        }
        match s.len() {
            k if k <= self.d => true,
            k if k == self.d + 1 => self.faces.contains(s),
            _ => false,
        }
    }

    /// All `(d-1)`-simplices on `{1..n}` in lexicographic order.
    pub fn ridges(&self) -> Combinations {
        Combinations::new(self.n, self.d)
    }

    pub fn ridge_count(&self) -> u128 {
        binomial(self.n as u64, self.d as u64)
    }

    fn index(&self) -> &HashMap<Simplex, SmallVec<[u32; 8]>> {
        self.index.get_or_init(|| {
            let mut idx: HashMap<Simplex, SmallVec<[u32; 8]>> = HashMap::new();
            for f in &self.faces {
                for &v in f.vertices() {
                    idx.entry(f.without(v)).or_default().push(v);
                }
            }
            for apexes in idx.values_mut() {
                apexes.sort_unstable();
            }
            idx
        })
    }

    /// Same vertex count and dimension, same faces.
    pub fn same_faces(&self, other: &Complex) -> bool {
        self == other
    }

    /// Serialises to the line format: `LM n d`, then one face per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("LM {} {}\n", self.n, self.d);
        for f in &self.faces {
            let line: Vec<String> = f.vertices().iter().map(u32::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the line format. Blank lines and `#` comments are ignored.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut header: Option<(u32, usize)> = None;
        let mut faces = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match header {
                None => {
                    if tokens.len() != 3 || tokens[0] != "LM" {
                        return Err(Error::Parse {
                            line: line_no,
                            message: format!("expected header `LM n d`, found `{line}`"),
                        });
                    }
                    let n = parse_num::<u32>(tokens[1], line_no)?;
                    let d = parse_num::<usize>(tokens[2], line_no)?;
                    header = Some((n, d));
                }
                Some(_) => {
                    let vs = tokens
                        .iter()
                        .map(|t| parse_num::<u32>(t, line_no))
                        .collect::<Result<Vec<_>>>()?;
                    if vs.windows(2).any(|w| w[0] >= w[1]) {
                        return Err(Error::Parse {
                            line: line_no,
                            message: "vertex ids must be strictly ascending".into(),
                        });
                    }
                    faces.push((line_no, Simplex::new(vs)?));
                }
            }
        }
        let (n, d) = header.ok_or(Error::Parse {
            line: 0,
            message: "missing `LM n d` header".into(),
        })?;
        let mut set = BTreeSet::new();
        for (line, f) in faces {
            if f.len() != d + 1 || f.vertices().iter().any(|&v| v == 0 || v > n) {
                return Err(Error::Parse {
                    line,
                    message: format!("face {f} is not a {d}-simplex on 1..={n}"),
                });
            }
            if !set.insert(f.clone()) {
                return Err(Error::Parse {
                    line,
                    message: format!("face {f} listed twice"),
                });
            }
        }
        if d == 0 {
            return Err(Error::Parse {
                line: 1,
                message: "dimension must be at least 1".into(),
            });
        }
        Ok(Self::from_set(n, d, set))
    }
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T> {
    tok.parse().map_err(|_| Error::Parse {
        line,
        message: format!("not a non-negative integer: `{tok}`"),
    })
}

impl FaceOracle for Complex {
    fn n(&self) -> u32 {
        self.n
    }

    fn d(&self) -> usize {
        self.d
    }

    fn has_face(&self, face: &Simplex) -> bool {
        self.faces.contains(face)
    }

    fn apexes(&self, ridge: &Simplex) -> Vec<u32> {
        self.index()
            .get(ridge)
            .map(|a| a.to_vec())
            .unwrap_or_default()
    }
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.d == other.d && self.faces == other.faces
    }
}

impl Eq for Complex {}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Complex")
            .field("n", &self.n)
            .field("d", &self.d)
            .field("faces", &self.faces)
            .finish()
    }
}
