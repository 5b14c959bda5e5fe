//! Permutations of `{0, ..., n-1}` stored as image lists.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bijection of `{0, ..., n-1}`. Entry `i` of the image list is the image of `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm {
            images: (0..n).collect(),
        }
    }

    /// Validates that `images` is a bijection of `0..images.len()`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (i, &v) in images.iter().enumerate() {
            if v >= n {
                return Err(Error::InvalidPerm(format!(
                    "image {v} of point {i} is out of range for degree {n}"
                )));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidPerm(format!("image {v} occurs twice")));
            }
        }
        Ok(Perm { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Perm::from_images(images.clone()).is_ok());
        Perm { images }
    }

    /// Builds a permutation of degree `n` from 0-based cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut moved = vec![false; n];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p >= n {
                    return Err(Error::InvalidPerm(format!("point {p} is out of range for degree {n}")));
                }
                if std::mem::replace(&mut moved[p], true) {
                    return Err(Error::InvalidPerm(format!("point {p} appears in more than one cycle")));
                }
                images[p] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Perm { images })
    }

    /// Parses 1-based cycle notation such as `(1 3 2 4)(5 6)` or `(1324)`.
    ///
    /// Inside a cycle, points may be separated by spaces or commas; a cycle with no
    /// separators is read digit by digit, which is only unambiguous for `n <= 9`.
    /// `()`, `id` and the empty string denote the identity.
    pub fn parse_cycles(n: usize, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text == "id" || text == "()" {
            return Ok(Perm::identity(n));
        }
        let mut cycles = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let open = rest
                .find('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in cycle notation {text:?}")))?;
            if !rest[..open].trim().is_empty() {
                return Err(Error::Parse(format!("unexpected text in {text:?}")));
            }
            let close = rest[open..]
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in {text:?}")))?
                + open;
            let body = rest[open + 1..close].trim();
            let tokens: Vec<&str> = if body.contains([' ', ',']) {
                body.split([' ', ',']).filter(|t| !t.is_empty()).collect()
            } else {
                body.char_indices().map(|(i, c)| &body[i..i + c.len_utf8()]).collect()
            };
            let mut cycle = Vec::with_capacity(tokens.len());
            for tok in tokens {
                let p: usize = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad point {tok:?} in {text:?}")))?;
                if p == 0 {
                    return Err(Error::Parse(format!("cycle notation is 1-based; found 0 in {text:?}")));
                }
                cycle.push(p - 1);
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = rest[close + 1..].trim_start();
        }
        Perm::from_cycles(n, &cycles)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn into_images(self) -> Vec<usize> {
        self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in compose");
        Perm {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v] = i;
        }
        Perm { images }
    }

    /// `f ∘ self ∘ f⁻¹`, the same permutation written in the labels given by `f`.
    pub fn conjugate_by(&self, f: &Perm) -> Perm {
        let mut images = vec![0; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            images[f.apply(i)] = f.apply(v);
        }
        Perm { images }
    }

    /// Disjoint cycles including fixed points, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.images[start];
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.images[p];
            }
            out.push(cycle);
        }
        out
    }

    /// Sorted (descending) cycle lengths.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }

    /// True iff the permutation is a single cycle through all points.
    pub fn is_full_cycle(&self) -> bool {
        self.degree() > 0 && self.cycle_type()[0] == self.degree()
    }

    /// 1-based cycle notation without fixed points, `()` for the identity.
    pub fn to_cycle_string(&self) -> String {
        let cycles: Vec<String> = self
            .cycles()
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| {
                let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
                format!("({})", pts.join(" "))
            })
            .collect();
        if cycles.is_empty() {
            "()".to_string()
        } else {
            cycles.concat()
        }
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

impl TryFrom<Vec<usize>> for Perm {
    type Error = Error;

    fn try_from(images: Vec<usize>) -> Result<Self> {
        Perm::from_images(images)
    }
}

impl From<Perm> for Vec<usize> {
    fn from(p: Perm) -> Self {
        p.images
    }
}

/// All permutations of degree `n` in lexicographic order of image lists.
pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(Perm {
            images: current.clone(),
        });
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
    }
    out
}
