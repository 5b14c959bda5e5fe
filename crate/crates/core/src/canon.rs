//! Canonical labeling of a family of binary tables on `{0, ..., n-1}`.
//!
//! A relabeling `f` maps a table `t` to `t'[f(a)][f(b)] = f(t[a][b])`. The canonical
//! form is the lexicographically least row-major serialization of all tables (table
//! 0 first) over every relabeling, optionally restricted to those fixing 0.
//!
//! Search is branch-and-bound over labels assigned in increasing order: a position
//! whose row or column label is still free branches over the unlabeled points, and a
//! position whose value is an unlabeled point forces that point to take the next
//! label, since any other choice yields a larger entry there.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Lexicographically least serialization, prefixed by the size.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn from_bytes(bytes: Vec<u8>) -> Self {
        CanonicalForm(bytes)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.to_hex())
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Result of canonical labeling: the serialization and one relabeling `old -> new`
/// that produces it.
pub struct Labeling {
    pub form: CanonicalForm,
    pub relabel: Vec<usize>,
}

/// Canonical labeling of `tables` (each row-major `n × n`, entries below `n`).
///
/// # Panics
///
/// If `n > 255`.
pub fn canonical_labeling(n: usize, tables: &[&[usize]], fix_zero: bool) -> Labeling {
    assert!(n <= 255, "canonical forms support at most 255 points");
    let total = tables.len() * n * n;
    let mut s = Search {
        n,
        tables,
        total,
        g: Vec::with_capacity(n),
        f: vec![usize::MAX; n],
        cur: Vec::with_capacity(total),
        best: None,
        best_f: Vec::new(),
        eq_upto: 0,
        fix_zero,
    };
    if n == 0 {
        return Labeling {
            form: CanonicalForm(vec![0]),
            relabel: Vec::new(),
        };
    }
    s.dfs(0);
    let mut bytes = Vec::with_capacity(total + 1);
    bytes.push(n as u8);
    bytes.extend(
        s.best
            .expect("search visits at least one leaf")
            .iter()
            .map(|&v| v as u8),
    );
    Labeling {
        form: CanonicalForm(bytes),
        relabel: s.best_f,
    }
}

struct Search<'a> {
    n: usize,
    tables: &'a [&'a [usize]],
    total: usize,
    /// new label -> old point
    g: Vec<usize>,
    /// old point -> new label
    f: Vec<usize>,
    cur: Vec<usize>,
    best: Option<Vec<usize>>,
    best_f: Vec<usize>,
    /// Leading positions of `cur` known to agree with `best`.
    eq_upto: usize,
    fix_zero: bool,
}

impl Search<'_> {
    fn dfs(&mut self, p: usize) {
        if p == self.total {
            let better = match &self.best {
                None => true,
                Some(_) => self.eq_upto < p,
            };
            if better {
                self.best = Some(self.cur.clone());
                self.best_f = self.f.clone();
            }
            self.eq_upto = p;
            return;
        }
        let n = self.n;
        let cell = p % (n * n);
        let (i, j) = (cell / n, cell % n);
        let m = self.g.len();
        if i >= m || j >= m {
            debug_assert_eq!(i.max(j), m);
            for v in 0..n {
                if self.f[v] != usize::MAX || (self.fix_zero && m == 0 && v != 0) {
                    continue;
                }
                self.g.push(v);
                self.f[v] = m;
                self.dfs(p);
                self.f[v] = usize::MAX;
                self.g.pop();
                self.eq_upto = self.eq_upto.min(p);
            }
            return;
        }
        let t = self.tables[p / (n * n)];
        let v = t[self.g[i] * n + self.g[j]];
        let forced = self.f[v] == usize::MAX;
        if forced {
            self.f[v] = m;
            self.g.push(v);
        }
        let val = self.f[v];
        let mut prune = false;
        if let Some(best) = &self.best {
            if self.eq_upto == p {
                match val.cmp(&best[p]) {
                    std::cmp::Ordering::Greater => prune = true,
                    std::cmp::Ordering::Equal => self.eq_upto = p + 1,
                    std::cmp::Ordering::Less => {}
                }
            }
        }
        if !prune {
            self.cur.push(val);
            self.dfs(p + 1);
            self.cur.pop();
            self.eq_upto = self.eq_upto.min(p);
        }
        if forced {
            self.g.pop();
            self.f[v] = usize::MAX;
        }
    }
}

/// Applies a relabeling `f` (old -> new) to a row-major table.
pub fn relabel_table(n: usize, table: &[usize], f: &[usize]) -> Vec<usize> {
    let mut out = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            out[f[a] * n + f[b]] = f[table[a * n + b]];
        }
    }
    out
}
