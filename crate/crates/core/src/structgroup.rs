//! Structure groups of solutions.
//!
//! For an involutive solution the structure group embeds in the affine group
//! `Sym(n) ⋉ Zⁿ` through `x_i ↦ (σ_i, e_i)`, an element `(P, t)` standing for the
//! integer matrix `[P t; 0 1]` with `P e_j = e_{P(j)}`. Everything here uses exact
//! integers or rationals.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::solutions::{self, Solution};

/// Minimal group interface shared by the concrete element types.
pub trait GroupElement: Clone + Eq + Hash {
    fn op(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;

    fn identity_like(&self) -> Self {
        self.op(&self.inverse())
    }

    fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = self.identity_like();
        for _ in 0..k.unsigned_abs() {
            acc = acc.op(&base);
        }
        acc
    }
}

// Affine elements ------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineElement {
    perm: Perm,
    trans: Vec<BigInt>,
}

impl AffineElement {
    pub fn new(perm: Perm, trans: Vec<BigInt>) -> Result<Self> {
        if perm.degree() != trans.len() {
            return Err(Error::DegreeMismatch {
                expected: perm.degree(),
                found: trans.len(),
            });
        }
        Ok(AffineElement { perm, trans })
    }

    pub fn identity(n: usize) -> Self {
        AffineElement {
            perm: Perm::identity(n),
            trans: vec![BigInt::zero(); n],
        }
    }

    pub fn dim(&self) -> usize {
        self.trans.len()
    }

    pub fn perm_part(&self) -> &Perm {
        &self.perm
    }

    pub fn trans_part(&self) -> &[BigInt] {
        &self.trans
    }

    /// `P·s`, moving coordinate `j` to `P(j)`.
    fn permute(&self, s: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); s.len()];
        for (j, v) in s.iter().enumerate() {
            out[self.perm.apply(j)] = v.clone();
        }
        out
    }

    /// The `(n+1) × (n+1)` matrix `[P t; 0 1]`.
    pub fn to_matrix(&self) -> Vec<Vec<BigInt>> {
        let n = self.dim();
        let mut m = vec![vec![BigInt::zero(); n + 1]; n + 1];
        for j in 0..n {
            m[self.perm.apply(j)][j] = BigInt::one();
        }
        for i in 0..n {
            m[i][n] = self.trans[i].clone();
        }
        m[n][n] = BigInt::one();
        m
    }
}

impl GroupElement for AffineElement {
    /// `(P, t)(Q, s) = (PQ, P·s + t)`.
    fn op(&self, other: &Self) -> Self {
        let moved = self.permute(&other.trans);
        AffineElement {
            perm: self.perm.compose(&other.perm),
            trans: moved.into_iter().zip(&self.trans).map(|(a, b)| a + b).collect(),
        }
    }

    fn inverse(&self) -> Self {
        let inv = self.perm.inverse();
        let neg: Vec<BigInt> = self.trans.iter().map(|v| -v).collect();
        let holder = AffineElement {
            perm: inv.clone(),
            trans: vec![BigInt::zero(); self.dim()],
        };
        AffineElement {
            trans: holder.permute(&neg),
            perm: inv,
        }
    }

    fn identity_like(&self) -> Self {
        AffineElement::identity(self.dim())
    }
}

impl fmt::Display for AffineElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_matrix(&self.to_matrix()))
    }
}

pub fn format_matrix<T: fmt::Display>(m: &[Vec<T>]) -> String {
    let cells: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    cells
        .iter()
        .map(|r| r.iter().map(|c| format!("{c:>width$}")).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("\n")
}

// Rational matrices ----------------------------------------------------------------

/// Square matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    dim: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Parse("matrix is not square".into()));
        }
        Ok(RationalMatrix {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_integers(rows: &[Vec<BigInt>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|v| BigRational::from_integer(v.clone())).collect())
                .collect(),
        )
    }

    /// Entries written as `p` or `p/q`.
    pub fn parse_rows(rows: &[&[&str]]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| {
                        BigRational::from_str(s.trim()).map_err(|e| Error::Parse(format!("bad rational {s}: {e}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(parsed)
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![BigRational::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = BigRational::one();
        }
        RationalMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<BigRational>> {
        self.entries.chunks(self.dim).map(<[BigRational]>::to_vec).collect()
    }

    pub fn checked_inverse(&self) -> Option<Self> {
        let n = self.dim;
        let mut a = self.rows();
        let mut inv = RationalMatrix::identity(n).rows();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].clone();
            for j in 0..n {
                a[col][j] = &a[col][j] / &p;
                inv[col][j] = &inv[col][j] / &p;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let factor = a[r][col].clone();
                    for j in 0..n {
                        let (x, y) = (&a[col][j] * &factor, &inv[col][j] * &factor);
                        a[r][j] -= x;
                        inv[r][j] -= y;
                    }
                }
            }
        }
        Some(RationalMatrix {
            dim: n,
            entries: inv.into_iter().flatten().collect(),
        })
    }
}

impl GroupElement for RationalMatrix {
    fn op(&self, other: &Self) -> Self {
        let n = self.dim;
        let mut entries = vec![BigRational::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] += a * other.get(k, j);
                }
            }
        }
        RationalMatrix { dim: n, entries }
    }

    /// # Panics
    ///
    /// If the matrix is singular.
    fn inverse(&self) -> Self {
        self.checked_inverse().expect("group elements are invertible")
    }

    fn identity_like(&self) -> Self {
        RationalMatrix::identity(self.dim)
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_matrix(&self.rows()))
    }
}

// Words and presentations ----------------------------------------------------------

/// A generator `x_index` (1-based) or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub index: usize,
    pub inverse: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupWord(pub Vec<Letter>);

impl GroupWord {
    pub fn generator(index: usize) -> Self {
        GroupWord(vec![Letter { index, inverse: false }])
    }

    pub fn pair(a: usize, b: usize) -> Self {
        GroupWord(vec![
            Letter {
                index: a,
                inverse: false,
            },
            Letter {
                index: b,
                inverse: false,
            },
        ])
    }

    pub fn inverse(&self) -> Self {
        GroupWord(
            self.0
                .iter()
                .rev()
                .map(|l| Letter {
                    index: l.index,
                    inverse: !l.inverse,
                })
                .collect(),
        )
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }
}

impl FromStr for GroupWord {
    type Err = Error;

    /// Whitespace-separated `i` or `i'`, 1-based, optionally written `xi`; `e` is the
    /// empty word.
    fn from_str(s: &str) -> Result<Self> {
        s.split_whitespace()
            .filter(|&tok| tok != "e")
            .map(|tok| {
                let (digits, inverse) = match tok.strip_suffix('\'') {
                    Some(d) => (d, true),
                    None => (tok, false),
                };
                let digits = digits.strip_prefix('x').unwrap_or(digits);
                let index: usize = digits
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad word token {tok:?}")))?;
                if index == 0 {
                    return Err(Error::Parse(format!("generator indices start at 1, got {tok:?}")));
                }
                Ok(Letter { index, inverse })
            })
            .collect::<Result<Vec<_>>>()
            .map(GroupWord)
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| format!("x{}{}", l.index, if l.inverse { "'" } else { "" }))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: usize,
    pub relations: Vec<(GroupWord, GroupWord)>,
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (l, r) in &self.relations {
            writeln!(f, "{l} = {r}")?;
        }
        Ok(())
    }
}

/// Relations `x y = u v` for `r(x, y) = (u, v)`. Trivial relations are dropped and
/// each relation is kept once regardless of orientation.
pub fn presentation_of(s: &Solution) -> Presentation {
    let n = s.size();
    let mut seen = HashSet::new();
    let mut relations = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let (u, v) = s.r(x, y);
            let l = GroupWord::pair(x + 1, y + 1);
            let r = GroupWord::pair(u + 1, v + 1);
            if l == r {
                continue;
            }
            let key = if l < r {
                (l.clone(), r.clone())
            } else {
                (r.clone(), l.clone())
            };
            if seen.insert(key) {
                relations.push((l, r));
            }
        }
    }
    Presentation {
        generators: n,
        relations,
    }
}

/// Partition of the generators (0-based, sorted) forced by repeatedly cancelling a
/// common first or last letter in length-two relations. Generators in one block are
/// equal in the group; the converse need not hold.
pub fn generator_collapse(p: &Presentation) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..p.generators).collect();
    fn find(parent: &mut [usize], a: usize) -> usize {
        let mut r = a;
        while parent[r] != r {
            r = parent[r];
        }
        let mut c = a;
        while parent[c] != r {
            let next = parent[c];
            parent[c] = r;
            c = next;
        }
        r
    }
    let pairs: Vec<((usize, usize), (usize, usize))> = p
        .relations
        .iter()
        .filter(|(l, r)| l.0.len() == 2 && r.0.len() == 2 && l.0.iter().chain(&r.0).all(|x| !x.inverse))
        .map(|(l, r)| {
            (
                (l.0[0].index - 1, l.0[1].index - 1),
                (r.0[0].index - 1, r.0[1].index - 1),
            )
        })
        .collect();
    loop {
        let mut changed = false;
        for &((a, b), (c, d)) in &pairs {
            let (ra, rb, rc, rd) = (
                find(&mut parent, a),
                find(&mut parent, b),
                find(&mut parent, c),
                find(&mut parent, d),
            );
            if rb == rd && ra != rc {
                parent[ra.max(rc)] = ra.min(rc);
                changed = true;
            } else if ra == rc && rb != rd {
                parent[rb.max(rd)] = rb.min(rd);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for g in 0..p.generators {
        let root = find(&mut parent, g);
        blocks.entry(root).or_default().push(g);
    }
    blocks.into_values().collect()
}

/// Relations of the group `A(X, r)` under the literal reading of the rule
/// `x u = u σ_u(v)` whenever `r(x, y) = (u, v)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdditiveRelations {
    pub rule: String,
    /// The printed rule names `x, y` on one side and `u, v` on the other, so this
    /// reading is one of several possible.
    pub ambiguous: bool,
    pub presentation: Presentation,
}

pub fn additive_relations_literal(s: &Solution) -> AdditiveRelations {
    let n = s.size();
    let mut seen = HashSet::new();
    let mut relations = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let (u, v) = s.r(x, y);
            let l = GroupWord::pair(x + 1, u + 1);
            let r = GroupWord::pair(u + 1, s.sigma(u).apply(v) + 1);
            if l == r {
                continue;
            }
            let key = if l < r {
                (l.clone(), r.clone())
            } else {
                (r.clone(), l.clone())
            };
            if seen.insert(key) {
                relations.push((l, r));
            }
        }
    }
    AdditiveRelations {
        rule: "x u = u σ_u(v) whenever r(x, y) = (u, v)".into(),
        ambiguous: true,
        presentation: Presentation {
            generators: n,
            relations,
        },
    }
}

// Affine representation -------------------------------------------------------------

/// `x_i ↦ (σ_i, e_i)`, checked against every defining relation.
pub fn affine_rep(s: &Solution) -> Result<Vec<AffineElement>> {
    if !solutions::is_involutive(s) {
        return Err(Error::NotInvolutive("the affine representation"));
    }
    let n = s.size();
    let gens: Vec<AffineElement> = (0..n)
        .map(|i| {
            let mut t = vec![BigInt::zero(); n];
            t[i] = BigInt::one();
            AffineElement {
                perm: s.sigma(i).clone(),
                trans: t,
            }
        })
        .collect();
    for x in 0..n {
        for y in 0..n {
            let (u, v) = s.r(x, y);
            if gens[x].op(&gens[y]) != gens[u].op(&gens[v]) {
                return Err(Error::Internal(format!(
                    "relation x{} x{} = x{} x{} fails",
                    x + 1,
                    y + 1,
                    u + 1,
                    v + 1
                )));
            }
        }
    }
    Ok(gens)
}

/// Product of the letters of `w`; the empty word gives the identity.
pub fn eval_word<E: GroupElement>(gens: &[E], identity: &E, w: &GroupWord) -> Result<E> {
    let mut acc = identity.clone();
    for l in w.letters() {
        if l.index == 0 || l.index > gens.len() {
            return Err(Error::IndexOutOfRange {
                index: l.index,
                n: gens.len(),
            });
        }
        let g = &gens[l.index - 1];
        acc = if l.inverse { acc.op(&g.inverse()) } else { acc.op(g) };
    }
    Ok(acc)
}

pub fn eval_affine(gens: &[AffineElement], w: &GroupWord) -> Result<AffineElement> {
    let n = gens.first().map_or(0, AffineElement::dim);
    eval_word(gens, &AffineElement::identity(n), w)
}

// Growth ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallSizes {
    /// `γ(0), γ(1), ...` for every radius fully explored.
    pub gamma: Vec<u64>,
    /// Set when the element cap stopped the search before the requested radius.
    pub truncated: bool,
}

/// Breadth-first search in the Cayley graph for `X ∪ X⁻¹`, over `(perm, vector)`
/// pairs. The frontier is expanded in `jobs` shards and merged in shard order.
pub fn ball_sizes(s: &Solution, radius: usize, max_elements: usize, jobs: usize) -> Result<BallSizes> {
    let gens = affine_rep(s)?;
    let mut steps: Vec<AffineElement> = gens
        .iter()
        .cloned()
        .chain(gens.iter().map(GroupElement::inverse))
        .collect();
    steps.sort_by_key(|a| a.to_matrix());
    steps.dedup();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    let id = AffineElement::identity(s.size());
    Ok(pool.install(|| bfs(id, &steps, radius, max_elements, jobs.max(1))))
}

/// The same search over explicit `(n+1) × (n+1)` rational matrices.
pub fn ball_sizes_matrix(s: &Solution, radius: usize, max_elements: usize) -> Result<BallSizes> {
    if !solutions::is_involutive(s) {
        return Err(Error::NotInvolutive("the growth function"));
    }
    let n = s.size();
    let mut steps = Vec::new();
    for i in 0..n {
        let mut m = vec![vec![BigInt::zero(); n + 1]; n + 1];
        for j in 0..n {
            m[s.sigma(i).apply(j)][j] = BigInt::one();
        }
        m[i][n] = BigInt::one();
        m[n][n] = BigInt::one();
        let g = RationalMatrix::from_integers(&m)?;
        let inv = g
            .checked_inverse()
            .ok_or_else(|| Error::Internal("singular generator".into()))?;
        steps.push(g);
        steps.push(inv);
    }
    let mut seen = HashSet::new();
    steps.retain(|g| seen.insert(g.clone()));
    Ok(bfs(RationalMatrix::identity(n + 1), &steps, radius, max_elements, 1))
}

fn bfs<E: GroupElement + Send + Sync>(
    id: E,
    steps: &[E],
    radius: usize,
    max_elements: usize,
    shards: usize,
) -> BallSizes {
    let mut visited: HashSet<E> = HashSet::new();
    visited.insert(id.clone());
    let mut frontier = vec![id];
    let mut gamma = vec![1u64];
    for _ in 0..radius {
        let chunk = frontier.len().div_ceil(shards).max(1);
        let candidates: Vec<Vec<E>> = frontier
            .par_chunks(chunk)
            .map(|part| part.iter().flat_map(|g| steps.iter().map(move |s| g.op(s))).collect())
            .collect();
        let mut next = Vec::new();
        for h in candidates.into_iter().flatten() {
            if !visited.contains(&h) {
                visited.insert(h.clone());
                next.push(h);
            }
        }
        if visited.len() > max_elements {
            return BallSizes { gamma, truncated: true };
        }
        gamma.push(visited.len() as u64);
        frontier = next;
    }
    BallSizes {
        gamma,
        truncated: false,
    }
}

/// Elements of the ball of the given radius, for checking the cocycle.
pub fn ball_elements(s: &Solution, radius: usize) -> Result<Vec<AffineElement>> {
    let gens = affine_rep(s)?;
    let steps: Vec<AffineElement> = gens
        .iter()
        .cloned()
        .chain(gens.iter().map(GroupElement::inverse))
        .collect();
    let id = AffineElement::identity(s.size());
    let mut visited: HashSet<AffineElement> = HashSet::from([id.clone()]);
    let mut order = vec![id.clone()];
    let mut frontier = vec![id];
    for _ in 0..radius {
        let mut next = Vec::new();
        for g in &frontier {
            for st in &steps {
                let h = g.op(st);
                if visited.insert(h.clone()) {
                    order.push(h.clone());
                    next.push(h);
                }
            }
        }
        frontier = next;
    }
    Ok(order)
}

// Rational series -----------------------------------------------------------------------

/// `p(t) / q(t)` with integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalSeries {
    pub numerator: Vec<BigInt>,
    pub denominator: Vec<BigInt>,
}

impl RationalSeries {
    /// First `k` coefficients of the power series.
    pub fn expand(&self, k: usize) -> Vec<BigInt> {
        let q0 = &self.denominator[0];
        let mut out: Vec<BigInt> = Vec::with_capacity(k);
        for i in 0..k {
            let mut acc = self.numerator.get(i).cloned().unwrap_or_default();
            for j in 1..self.denominator.len().min(i + 1) {
                acc -= &self.denominator[j] * &out[i - j];
            }
            out.push(acc / q0);
        }
        out
    }
}

fn format_poly(c: &[BigInt]) -> String {
    let mut terms = Vec::new();
    for (i, v) in c.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let mag = v.abs();
        let coef = if i > 0 && mag.is_one() {
            String::new()
        } else {
            mag.to_string()
        };
        let var = match i {
            0 => String::new(),
            1 => "t".into(),
            _ => format!("t^{i}"),
        };
        let sign = if v.is_negative() { "-" } else { "+" };
        terms.push((sign, format!("{coef}{var}")));
    }
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (k, (sign, body)) in terms.iter().enumerate() {
        if k == 0 {
            if *sign == "-" {
                s.push('-');
            }
        } else {
            s.push_str(&format!(" {sign} "));
        }
        s.push_str(body);
    }
    s
}

/// `(1 + t)^k` or `(1 - t)^k` when the polynomial is exactly such a power.
fn binomial_power(c: &[BigInt]) -> Option<String> {
    let k = c.len().checked_sub(1).filter(|&k| k >= 1)?;
    for (sign, text) in [(1i64, "+"), (-1, "-")] {
        let mut row = vec![BigInt::one()];
        for _ in 0..k {
            let mut next = vec![BigInt::zero(); row.len() + 1];
            for (i, v) in row.iter().enumerate() {
                next[i] += v;
                next[i + 1] += v * sign;
            }
            row = next;
        }
        if row == c {
            return Some(if k == 1 {
                format!("(1 {text} t)")
            } else {
                format!("(1 {text} t)^{k}")
            });
        }
    }
    None
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |c: &[BigInt]| binomial_power(c).unwrap_or_else(|| format!("({})", format_poly(c)));
        write!(f, "{} / {}", part(&self.numerator), part(&self.denominator))
    }
}

/// Shortest linear recurrence by Berlekamp–Massey over the rationals, turned into
/// `p/q`. Returns `None` for fewer than 5 values, when no value remains beyond twice
/// the recurrence length, or when the result does not reproduce every value. A returned
/// series is a conjecture consistent with the data, not a certificate.
pub fn guess_rational_series(values: &[BigInt]) -> Option<RationalSeries> {
    if values.len() < 5 {
        return None;
    }
    let s: Vec<BigRational> = values.iter().map(|v| BigRational::from_integer(v.clone())).collect();
    let mut c = vec![BigRational::one()];
    let mut b = vec![BigRational::one()];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut bd = BigRational::one();
    for i in 0..s.len() {
        let mut d = s[i].clone();
        for j in 1..=l {
            if j < c.len() {
                d += &c[j] * &s[i - j];
            }
        }
        if d.is_zero() {
            m += 1;
            continue;
        }
        let coef = &d / &bd;
        let prev = c.clone();
        if c.len() < b.len() + m {
            c.resize(b.len() + m, BigRational::zero());
        }
        for (j, bj) in b.iter().enumerate() {
            c[j + m] -= &coef * bj;
        }
        if 2 * l <= i {
            l = i + 1 - l;
            b = prev;
            bd = d;
            m = 1;
        } else {
            m += 1;
        }
    }
    c.resize(l + 1, BigRational::zero());
    if 2 * l + 1 > values.len() {
        return None;
    }
    // numerator = (S · C) mod t^L
    let mut p = vec![BigRational::zero(); l];
    for (i, pi) in p.iter_mut().enumerate() {
        for j in 0..=i {
            *pi += &c[j] * &s[i - j];
        }
    }
    let denom_lcm = c
        .iter()
        .chain(&p)
        .fold(BigInt::one(), |acc, v| num_integer::lcm(acc, v.denom().clone()));
    let scale = |v: &BigRational| (v * BigRational::from_integer(denom_lcm.clone())).to_integer();
    let mut numerator: Vec<BigInt> = p.iter().map(scale).collect();
    let denominator: Vec<BigInt> = c.iter().map(scale).collect();
    while numerator.last().is_some_and(Zero::is_zero) {
        numerator.pop();
    }
    let series = RationalSeries { numerator, denominator };
    (series.expand(values.len()) == values).then_some(series)
}

// Unique products ---------------------------------------------------------------------------

/// `x²y, y²x, xyx⁻¹, (y²x)⁻¹, (xy)⁻², y, (xy)²x, (xy)², (xyx)⁻¹, yxy, y⁻¹, x, xyx, x⁻¹`.
pub fn promislow_set<E: GroupElement>(x: &E, y: &E) -> Vec<E> {
    let xi = x.inverse();
    let yi = y.inverse();
    let xy = x.op(y);
    let xy2 = xy.op(&xy);
    let y2x = y.op(y).op(x);
    let xyx = xy.op(x);
    vec![
        x.op(x).op(y),
        y2x.clone(),
        xy.op(&xi),
        y2x.inverse(),
        xy2.inverse(),
        y.clone(),
        xy2.op(x),
        xy2,
        xyx.inverse(),
        y.op(x).op(y),
        yi,
        x.clone(),
        xyx,
        xi,
    ]
}

/// `x⁻¹y²x = y⁻²` and `y⁻¹x²y = x⁻²`.
pub fn check_promislow_relations<E: GroupElement>(x: &E, y: &E) -> bool {
    let (xi, yi) = (x.inverse(), y.inverse());
    let y2 = y.op(y);
    let x2 = x.op(x);
    xi.op(&y2).op(x) == y2.inverse() && yi.op(&x2).op(y) == x2.inverse()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UppReport {
    /// Distinct elements of `S`.
    pub set_size: usize,
    /// Ordered pairs `(a, b) ∈ S × S`.
    pub pairs: usize,
    /// Distinct products.
    pub products: usize,
    /// Number of factorizations mapped to how many products have that many.
    pub multiplicities: BTreeMap<usize, usize>,
    /// Pairs of indices into the deduplicated set whose product has a unique factorization.
    pub unique: Vec<(usize, usize)>,
}

impl UppReport {
    /// Every product has at least two factorizations, so `S` witnesses the failure
    /// of the unique product property.
    pub fn falsified(&self) -> bool {
        self.unique.is_empty()
    }
}

impl fmt::Display for UppReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.falsified() {
            writeln!(
                f,
                "FALSIFIED: all {} products have ≥2 factorizations ({} distinct products, |S| = {})",
                self.pairs, self.products, self.set_size
            )?;
        } else {
            writeln!(
                f,
                "not falsified by this set: {} of {} distinct products factor uniquely (|S| = {})",
                self.unique.len(),
                self.products,
                self.set_size
            )?;
        }
        writeln!(f, "factorizations  products")?;
        for (k, v) in &self.multiplicities {
            writeln!(f, "{k:>14}  {v}")?;
        }
        Ok(())
    }
}

pub fn upp_falsify<E: GroupElement>(set: &[E]) -> UppReport {
    let mut distinct: Vec<E> = Vec::new();
    for e in set {
        if !distinct.contains(e) {
            distinct.push(e.clone());
        }
    }
    let mut count: HashMap<E, (usize, (usize, usize))> = HashMap::new();
    for (i, a) in distinct.iter().enumerate() {
        for (j, b) in distinct.iter().enumerate() {
            let entry = count.entry(a.op(b)).or_insert((0, (i, j)));
            entry.0 += 1;
        }
    }
    let mut multiplicities = BTreeMap::new();
    let mut unique = Vec::new();
    for (k, pair) in count.values() {
        *multiplicities.entry(*k).or_insert(0) += 1;
        if *k == 1 {
            unique.push(*pair);
        }
    }
    unique.sort_unstable();
    UppReport {
        set_size: distinct.len(),
        pairs: distinct.len() * distinct.len(),
        products: count.len(),
        multiplicities,
        unique,
    }
}

/// The two generators of the Promislow group as rational `4 × 4` matrices.
pub fn promislow_matrices() -> (RationalMatrix, RationalMatrix) {
    let x = RationalMatrix::parse_rows(&[
        &["0", "1", "0", "0"],
        &["2", "0", "0", "0"],
        &["0", "0", "0", "1/2"],
        &["0", "0", "1", "0"],
    ])
    .expect("constant matrix");
    let y = RationalMatrix::parse_rows(&[
        &["0", "0", "1", "0"],
        &["0", "0", "0", "1"],
        &["2", "0", "0", "0"],
        &["0", "1/2", "0", "0"],
    ])
    .expect("constant matrix");
    (x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn ints(rows: &[[i64; 5]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    fn w(s: &str) -> GroupWord {
        s.parse().unwrap()
    }

    #[test]
    fn printed_matrices() {
        let gens = affine_rep(&catalog::four_point_indecomposable()).unwrap();
        let expected = [
            ints(&[
                [0, 1, 0, 0, 1],
                [1, 0, 0, 0, 0],
                [0, 0, 1, 0, 0],
                [0, 0, 0, 1, 0],
                [0, 0, 0, 0, 1],
            ]),
            ints(&[
                [0, 0, 0, 1, 0],
                [0, 0, 1, 0, 1],
                [1, 0, 0, 0, 0],
                [0, 1, 0, 0, 0],
                [0, 0, 0, 0, 1],
            ]),
            ints(&[
                [1, 0, 0, 0, 0],
                [0, 1, 0, 0, 0],
                [0, 0, 0, 1, 1],
                [0, 0, 1, 0, 0],
                [0, 0, 0, 0, 1],
            ]),
            ints(&[
                [0, 0, 1, 0, 0],
                [0, 0, 0, 1, 0],
                [0, 1, 0, 0, 0],
                [1, 0, 0, 0, 1],
                [0, 0, 0, 0, 1],
            ]),
        ];
        for (g, e) in gens.iter().zip(&expected) {
            assert_eq!(&g.to_matrix(), e);
        }
    }

    #[test]
    fn affine_arithmetic() {
        let gens = affine_rep(&catalog::four_point_indecomposable()).unwrap();
        for g in &gens {
            assert_eq!(g.op(&g.inverse()), AffineElement::identity(4));
            let m = RationalMatrix::from_integers(&g.to_matrix()).unwrap();
            let h = &gens[1];
            let mh = RationalMatrix::from_integers(&h.to_matrix()).unwrap();
            assert_eq!(RationalMatrix::from_integers(&g.op(h).to_matrix()).unwrap(), m.op(&mh));
        }
        assert!(matches!(
            affine_rep(&catalog::three_point_non_involutive()),
            Err(Error::NotInvolutive(_))
        ));
    }

    #[test]
    fn trivial_and_permutation_reps() {
        let gens = affine_rep(&solutions::make_trivial(3).unwrap()).unwrap();
        assert!(gens.iter().all(|g| g.perm_part().is_identity()));
        let swap = Perm::from_images(vec![1, 0]).unwrap();
        let s = solutions::make_permutation(&swap, &swap).unwrap();
        let gens = affine_rep(&s).unwrap();
        assert!(gens.iter().all(|g| g.perm_part() == &swap));
        assert_eq!(gens[1].trans_part(), &[BigInt::zero(), BigInt::one()]);
    }

    #[test]
    fn words() {
        let gens = affine_rep(&catalog::four_point_indecomposable()).unwrap();
        assert_eq!(eval_affine(&gens, &w("1 1'")).unwrap(), AffineElement::identity(4));
        assert_eq!(eval_affine(&gens, &w("")).unwrap(), AffineElement::identity(4));
        assert_eq!(
            eval_affine(&gens, &w("1 1")).unwrap(),
            eval_affine(&gens, &w("2 4")).unwrap()
        );
        assert!(matches!(
            eval_affine(&gens, &w("5")),
            Err(Error::IndexOutOfRange { index: 5, n: 4 })
        ));
        assert!("0".parse::<GroupWord>().is_err());
        assert!("x".parse::<GroupWord>().is_err());
        let x = eval_affine(&gens, &w("1 2'")).unwrap();
        // x1 x2⁻¹ = ((12)(34)-shaped permutation, frozen translation)
        assert_eq!(x.perm_part().images(), &[3, 2, 1, 0]);
        let t: Vec<i64> = x.trans_part().iter().map(|v| i64::try_from(v).unwrap()).collect();
        assert_eq!(t, vec![1, 0, -1, 0]);
        for word in ["1 2' 3", "4' 4' 2", "3 1 2' 4"] {
            let u = eval_affine(&gens, &w(word)).unwrap();
            let v = eval_affine(&gens, &w(word).inverse()).unwrap();
            assert_eq!(u.op(&v), AffineElement::identity(4));
        }
    }

    #[test]
    fn presentations() {
        let p = presentation_of(&catalog::four_point_indecomposable());
        let text = p.to_string();
        for rel in [
            ("x1 x1", "x2 x4"),
            ("x1 x3", "x3 x1"),
            ("x2 x1", "x3 x2"),
            ("x2 x2", "x4 x4"),
            ("x3 x3", "x4 x2"),
            ("x1 x4", "x4 x3"),
        ] {
            let fwd = format!("{} = {}", rel.0, rel.1);
            let back = format!("{} = {}", rel.1, rel.0);
            assert!(text.contains(&fwd) || text.contains(&back), "missing {fwd}");
        }
        let sigma = Perm::parse_cycles(4, "(12)").unwrap();
        let tau = Perm::parse_cycles(4, "(34)").unwrap();
        let perm_sol = solutions::make_permutation(&sigma, &tau).unwrap();
        let blocks = generator_collapse(&presentation_of(&perm_sol));
        assert!(blocks.iter().any(|b| b.contains(&0) && b.contains(&1)));
        let triv = presentation_of(&solutions::make_trivial(3).unwrap());
        assert_eq!(triv.relations.len(), 3);
        assert_eq!(generator_collapse(&triv), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn additive_relations_match_printed_example() {
        // printed: x1x2 = x3x1 = x2x3, x1x3 = x2x1 = x3x2
        let a = additive_relations_literal(&catalog::three_point_non_involutive());
        assert!(a.ambiguous);
        let printed = [[(1, 2), (3, 1), (2, 3)], [(1, 3), (2, 1), (3, 2)]];
        let class_of = |pair: (usize, usize)| printed.iter().position(|c| c.contains(&pair));
        for (l, r) in &a.presentation.relations {
            let lp = (l.0[0].index, l.0[1].index);
            let rp = (r.0[0].index, r.0[1].index);
            assert_eq!(class_of(lp), class_of(rp), "{l} = {r}");
        }
    }

    #[test]
    fn small_growth() {
        let one = solutions::make_trivial(1).unwrap();
        let b = ball_sizes(&one, 4, 1 << 20, 1).unwrap();
        assert_eq!(b.gamma, vec![1, 3, 5, 7, 9]);
        let two = solutions::make_trivial(2).unwrap();
        let b = ball_sizes(&two, 2, 1 << 20, 3).unwrap();
        assert_eq!(b.gamma, vec![1, 5, 13]);
        assert_eq!(ball_sizes_matrix(&two, 2, 1 << 20).unwrap(), b);
        let capped = ball_sizes(&two, 5, 20, 1).unwrap();
        assert!(capped.truncated);
        assert_eq!(capped.gamma, vec![1, 5, 13]);
    }

    #[test]
    fn series_guessing() {
        let v = |xs: &[i64]| xs.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        let s = guess_rational_series(&v(&[1, 3, 5, 7, 9, 11])).unwrap();
        assert_eq!(s.numerator, v(&[1, 1]));
        assert_eq!(s.denominator, v(&[1, -2, 1]));
        assert_eq!(s.to_string(), "(1 + t) / (1 - t)^2");
        let s = guess_rational_series(&v(&[1, 3, 5, 7, 9])).unwrap();
        assert_eq!(s.to_string(), "(1 + t) / (1 - t)^2");
        let s = guess_rational_series(&v(&[1, 2, 4, 8, 16, 32, 64])).unwrap();
        assert_eq!(s.to_string(), "(1) / (1 - 2t)");
        let s = guess_rational_series(&v(&[1, 2, 4, 8, 16, 32])).unwrap();
        assert_eq!((s.numerator, s.denominator), (v(&[1]), v(&[1, -2])));
        // 2k² + 2k + 1 = coefficients of (1 + t)² / (1 - t)³
        let lattice: Vec<i64> = (0..8).map(|k| 2 * k * k + 2 * k + 1).collect();
        let s = guess_rational_series(&v(&lattice)).unwrap();
        assert_eq!((s.numerator, s.denominator), (v(&[1, 2, 1]), v(&[1, -3, 3, -1])));
        assert!(guess_rational_series(&v(&[1, 2, 3])).is_none());
        assert!(guess_rational_series(&v(&[1, 0, 0, 0, 0, 0, 0, 5])).is_none());
        assert!(guess_rational_series(&v(&[1, 9, 41, 129, 321, 681])).is_none());
        assert!(guess_rational_series(&v(&[1, 3, 5, 7])).is_none());
    }

    #[test]
    fn promislow_matrix_model() {
        let (x, y) = promislow_matrices();
        assert!(check_promislow_relations(&x, &y));
        let set = promislow_set(&x, &y);
        assert_eq!(upp_falsify(&set).set_size, 14);
        assert!(upp_falsify(&set).falsified());
        let id = RationalMatrix::identity(4);
        assert!(check_promislow_relations(&id, &id));
        let collapsed = promislow_set(&id, &id);
        let r = upp_falsify(&collapsed);
        assert_eq!(r.set_size, 1);
        assert!(!r.falsified());
    }

    #[test]
    fn promislow_in_structure_group() {
        let gens = affine_rep(&catalog::four_point_indecomposable()).unwrap();
        let x = eval_affine(&gens, &w("1 2'")).unwrap();
        let y = eval_affine(&gens, &w("1 3'")).unwrap();
        assert!(check_promislow_relations(&x, &y));
        let report = upp_falsify(&promislow_set(&x, &y));
        assert_eq!((report.set_size, report.pairs), (14, 196));
        assert!(report.falsified());
    }
}
