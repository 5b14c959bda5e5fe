//! Finite groups given by permutation generators or by Cayley tables.
//!
//! Elements are indices `0..order` with `0` the identity. Groups produced by
//! [`generate`] number their elements in breadth-first discovery order from the
//! lexicographically sorted generators, so the numbering is deterministic.

use std::collections::{HashMap, VecDeque};

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::perm::Perm;

/// Closure gives up beyond this many elements.
pub const MAX_GROUP_ORDER: usize = 100_000;

/// Permutation groups up to this order also keep a full Cayley table.
const TABLE_LIMIT: usize = 2048;

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    order: usize,
    /// Row-major `order × order` table, absent for large permutation groups.
    table: Option<Vec<u32>>,
    perms: Option<PermIndex>,
    inv: Vec<usize>,
    gens: Vec<usize>,
}

#[derive(Clone, Debug)]
struct PermIndex {
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

/// Closure of a set of permutations under composition.
///
/// An empty generator set yields the trivial group (of degree 0 when no degree is
/// known; use [`generate_on`] to fix the degree).
pub fn generate(generators: &[Perm]) -> Result<FiniteGroup> {
    let n = generators.first().map_or(0, Perm::degree);
    generate_on(n, generators)
}

/// Like [`generate`] but with an explicit degree, so that an empty generator set
/// produces the trivial group acting on `n` points.
pub fn generate_on(n: usize, generators: &[Perm]) -> Result<FiniteGroup> {
    for g in generators {
        if g.degree() != n {
            return Err(Error::DegreeMismatch {
                expected: n,
                found: g.degree(),
            });
        }
    }
    let mut gens: Vec<Perm> = generators.iter().filter(|g| !g.is_identity()).cloned().collect();
    gens.sort();
    gens.dedup();

    let identity = Perm::identity(n);
    let mut elements = vec![identity.clone()];
    let mut index = HashMap::from([(identity, 0usize)]);
    let mut head = 0;
    while head < elements.len() {
        for g in &gens {
            let h = elements[head].compose(g);
            if !index.contains_key(&h) {
                if elements.len() == MAX_GROUP_ORDER {
                    return Err(Error::GroupTooLarge { limit: MAX_GROUP_ORDER });
                }
                index.insert(h.clone(), elements.len());
                elements.push(h);
            }
        }
        head += 1;
    }

    let order = elements.len();
    let inv: Vec<usize> = elements.iter().map(|e| index[&e.inverse()]).collect();
    let gen_idx: Vec<usize> = gens.iter().map(|g| index[g]).collect();
    let table = (order <= TABLE_LIMIT).then(|| {
        let mut t = Vec::with_capacity(order * order);
        for a in &elements {
            for b in &elements {
                t.push(index[&a.compose(b)] as u32);
            }
        }
        t
    });
    Ok(FiniteGroup {
        order,
        table,
        perms: Some(PermIndex { elements, index }),
        inv,
        gens: gen_idx,
    })
}

/// True iff the group generated by `generators` moves point 0 to every point of `0..n`.
pub fn is_transitive(generators: &[Perm], n: usize) -> bool {
    if n == 0 {
        return false;
    }
    orbit(generators, n, 0).len() == n
}

/// Orbit of `start` under the group generated by `generators`, sorted.
pub fn orbit(generators: &[Perm], n: usize, start: usize) -> Vec<usize> {
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        for g in generators {
            let q = g.apply(p);
            if !seen[q] {
                seen[q] = true;
                queue.push_back(q);
            }
        }
    }
    (0..n).filter(|&p| seen[p]).collect()
}

impl FiniteGroup {
    /// Validates a Cayley table with identity 0.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self> {
        let order = table.len();
        if order == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        let mut flat = Vec::with_capacity(order * order);
        for (a, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidGroup(format!("row {a} has wrong length")));
            }
            for &v in row {
                if v >= order {
                    return Err(Error::InvalidGroup(format!("entry {v} out of range")));
                }
                flat.push(v as u32);
            }
        }
        let at = |a: usize, b: usize| flat[a * order + b] as usize;
        for a in 0..order {
            if at(0, a) != a || at(a, 0) != a {
                return Err(Error::InvalidGroup("0 is not the identity".into()));
            }
        }
        let mut inv = vec![usize::MAX; order];
        for a in 0..order {
            match (0..order).find(|&b| at(a, b) == 0) {
                Some(b) if at(b, a) == 0 => inv[a] = b,
                _ => return Err(Error::InvalidGroup(format!("element {a} has no inverse"))),
            }
        }
        for a in 0..order {
            for b in 0..order {
                let ab = at(a, b);
                for c in 0..order {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::InvalidGroup(format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        let mut g = FiniteGroup {
            order,
            table: Some(flat),
            perms: None,
            inv,
            gens: Vec::new(),
        };
        g.gens = g.greedy_generators();
        Ok(g)
    }

    /// The group acting on its own elements by left multiplication, as a permutation group.
    pub fn regular_representation(&self) -> Result<FiniteGroup> {
        let gens: Vec<Perm> = self
            .gens
            .iter()
            .map(|&g| Perm::from_images_unchecked((0..self.order).map(|x| self.mul(g, x)).collect()))
            .collect();
        generate_on(self.order, &gens)
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![0usize];
        for a in 1..self.order {
            if span.binary_search(&a).is_err() {
                gens.push(a);
                span = self.subgroup_generated(&gens);
            }
        }
        gens
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.order + b] as usize,
            None => {
                let p = self.perms.as_ref().expect("group without table or perms");
                p.index[&p.elements[a].compose(&p.elements[b])]
            }
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inv
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let mut result = 0;
        let mut base = a;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        result
    }

    /// Generators as element indices (sorted permutation generators, or a greedy
    /// generating set for table groups).
    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    /// The permutation behind element `i`, for groups built by [`generate`].
    pub fn perm(&self, i: usize) -> Option<&Perm> {
        self.perms.as_ref().map(|p| &p.elements[i])
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.perms.as_ref().and_then(|idx| idx.index.get(p).copied())
    }

    /// The full Cayley table as nested rows.
    pub fn cayley_table(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .enumerate()
            .all(|(i, &a)| self.gens[i + 1..].iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Elements commuting with every generator, sorted.
    pub fn center(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&z| self.gens.iter().all(|&g| self.mul(z, g) == self.mul(g, z)))
            .collect()
    }

    /// Sorted members of the subgroup generated by `set`.
    pub fn subgroup_generated(&self, set: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut members = vec![0];
        let mut head = 0;
        while head < members.len() {
            let a = members[head];
            for &s in set {
                let b = self.mul(a, s);
                if !seen[b] {
                    seen[b] = true;
                    members.push(b);
                }
            }
            head += 1;
        }
        members.sort_unstable();
        members
    }

    /// Normal closure of `set` under conjugation by the whole group.
    pub fn normal_closure(&self, set: &[usize]) -> Vec<usize> {
        let mut gens: Vec<usize> = set.to_vec();
        let mut members = self.subgroup_generated(&gens);
        loop {
            let mut grew = false;
            for &g in &self.gens {
                let gi = self.inv(g);
                for k in gens.clone() {
                    let c = self.mul(self.mul(g, k), gi);
                    if members.binary_search(&c).is_err() {
                        gens.push(c);
                        members = self.subgroup_generated(&gens);
                        grew = true;
                    }
                }
            }
            if !grew {
                return members;
            }
        }
    }

    pub fn is_normal(&self, members: &[usize]) -> bool {
        let sorted = is_sorted_set(members);
        self.gens.iter().all(|&g| {
            let gi = self.inv(g);
            members.iter().all(|&k| {
                let c = self.mul(self.mul(g, k), gi);
                if sorted {
                    members.binary_search(&c).is_ok()
                } else {
                    members.contains(&c)
                }
            })
        })
    }

    /// Quotient by a normal subgroup. Cosets are numbered by their least member.
    pub fn quotient(&self, normal: &[usize]) -> Result<FiniteGroup> {
        if !normal.contains(&0) || !self.is_normal(normal) {
            return Err(Error::InvalidGroup("not a normal subgroup".into()));
        }
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for a in 0..self.order {
            if coset_of[a] == usize::MAX {
                for &k in normal {
                    coset_of[self.mul(a, k)] = reps.len();
                }
                reps.push(a);
            }
        }
        let table: Vec<Vec<usize>> = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| coset_of[self.mul(a, b)]).collect())
            .collect();
        let inv = reps.iter().map(|&a| coset_of[self.inv(a)]).collect();
        let m = reps.len();
        let flat = table.iter().flatten().map(|&v| v as u32).collect();
        let mut q = FiniteGroup {
            order: m,
            table: Some(flat),
            perms: None,
            inv,
            gens: Vec::new(),
        };
        let mut gens: Vec<usize> = self.gens.iter().map(|&g| coset_of[g]).filter(|&c| c != 0).collect();
        gens.sort_unstable();
        gens.dedup();
        q.gens = gens;
        Ok(q)
    }

    /// Derived subgroup of the subgroup with the given generators, sorted.
    fn derived_of(&self, gens: &[usize], members: &[usize]) -> Vec<usize> {
        let mut comms = Vec::new();
        for &a in gens {
            for &b in gens {
                let c = self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b));
                if c != 0 {
                    comms.push(c);
                }
            }
        }
        // normal closure inside the subgroup
        let mut dgens = comms;
        let mut d = self.subgroup_generated(&dgens);
        loop {
            let mut grew = false;
            for &g in gens {
                let gi = self.inv(g);
                for k in dgens.clone() {
                    let c = self.mul(self.mul(g, k), gi);
                    if d.binary_search(&c).is_err() {
                        dgens.push(c);
                        d = self.subgroup_generated(&dgens);
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        debug_assert!(d.iter().all(|x| members.binary_search(x).is_ok()));
        d
    }
}

fn is_sorted_set(xs: &[usize]) -> bool {
    xs.windows(2).all(|w| w[0] < w[1])
}

/// Least common multiple of the element orders.
pub fn exponent(g: &FiniteGroup) -> u64 {
    (0..g.order()).fold(1, |acc, a| acc.lcm(&g.element_order(a)))
}

/// Exponent of `G/Z(G)`, computed on the quotient table.
pub fn quotient_exponent_mod_center(g: &FiniteGroup) -> u64 {
    let q = g.quotient(&g.center()).expect("the center is a normal subgroup");
    exponent(&q)
}

/// True iff the derived series reaches the trivial group.
pub fn is_solvable(g: &FiniteGroup) -> bool {
    let mut members: Vec<usize> = (0..g.order()).collect();
    let mut gens: Vec<usize> = g.generators().to_vec();
    loop {
        if members.len() == 1 {
            return true;
        }
        let d = g.derived_of(&gens, &members);
        if d.len() == members.len() {
            return false;
        }
        gens = minimal_generators(g, &d);
        members = d;
    }
}

fn minimal_generators(g: &FiniteGroup, members: &[usize]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = vec![0usize];
    for &a in members {
        if span.binary_search(&a).is_err() {
            gens.push(a);
            span = g.subgroup_generated(&gens);
        }
    }
    gens
}

/// Prime factorization as `(p, exponent)` pairs in increasing `p`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// True iff every Sylow subgroup is cyclic.
///
/// For each prime `p` dividing `|G|`, looks for an element whose order is the full
/// `p`-part of `|G|`; such an element generates a Sylow `p`-subgroup, and all Sylow
/// `p`-subgroups are conjugate.
pub fn has_all_cyclic_sylows(g: &FiniteGroup) -> bool {
    let orders: Vec<u64> = (0..g.order()).map(|a| g.element_order(a)).collect();
    factorize(g.order() as u64).into_iter().all(|(p, e)| {
        let part = p.pow(e);
        orders.iter().any(|&o| o % part == 0)
    })
}

/// Powerfulness of a finite `p`-group: `G/G^p` abelian for odd `p`, `G/G^4` for `p = 2`.
pub fn is_powerful(g: &FiniteGroup, p: usize) -> Result<bool> {
    let factors = factorize(g.order() as u64);
    let is_p_group = factors.is_empty() || (factors.len() == 1 && factors[0].0 == p as u64);
    if !is_p_group || p < 2 || factorize(p as u64).len() != 1 || factorize(p as u64)[0].1 != 1 {
        return Err(Error::NotPrimePower { order: g.order(), p });
    }
    let k = if p == 2 { 4 } else { p as u64 };
    let powers: Vec<usize> = (0..g.order()).map(|a| g.pow(a, k)).collect();
    let sub = g.subgroup_generated(&powers);
    Ok(g.quotient(&sub)?.is_abelian())
}

/// All automorphisms, as permutations of the element indices, sorted.
pub fn automorphisms(g: &FiniteGroup) -> Vec<Perm> {
    let n = g.order();
    let gens = g.generators().to_vec();
    // BFS spanning tree: each element reached as parent * generator.
    let mut parent = vec![(usize::MAX, usize::MAX); n];
    let mut order_seen = vec![0usize];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut head = 0;
    while head < order_seen.len() {
        let a = order_seen[head];
        for (gi, &s) in gens.iter().enumerate() {
            let b = g.mul(a, s);
            if !seen[b] {
                seen[b] = true;
                parent[b] = (a, gi);
                order_seen.push(b);
            }
        }
        head += 1;
    }
    let gen_orders: Vec<u64> = gens.iter().map(|&s| g.element_order(s)).collect();
    let candidates: Vec<Vec<usize>> = gen_orders
        .iter()
        .map(|&o| (0..n).filter(|&a| g.element_order(a) == o).collect())
        .collect();

    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    'outer: loop {
        let images: Vec<usize> = choice.iter().enumerate().map(|(i, &c)| candidates[i][c]).collect();
        let mut f = vec![usize::MAX; n];
        f[0] = 0;
        for &b in &order_seen[1..] {
            let (a, gi) = parent[b];
            f[b] = g.mul(f[a], images[gi]);
        }
        let mut hit = vec![false; n];
        let bijective = f.iter().all(|&v| !std::mem::replace(&mut hit[v], true));
        if bijective
            && (0..n).all(|a| {
                gens.iter()
                    .zip(&images)
                    .all(|(&s, &fs)| f[g.mul(a, s)] == g.mul(f[a], fs))
            })
        {
            out.push(Perm::from_images_unchecked(f));
        }
        // advance odometer
        for i in (0..choice.len()).rev() {
            choice[i] += 1;
            if choice[i] < candidates[i].len() {
                continue 'outer;
            }
            choice[i] = 0;
        }
        break;
    }
    out.sort();
    out
}

/// Named groups used as building blocks and test subjects.
pub mod library {
    use super::*;

    pub fn cyclic(n: usize) -> FiniteGroup {
        let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::from_table(&table).expect("cyclic table is a group")
    }

    /// Direct product with elements `(a, b)` numbered `a * |H| + b`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
        let (m, k) = (g.order(), h.order());
        let table: Vec<Vec<usize>> = (0..m * k)
            .map(|x| {
                (0..m * k)
                    .map(|y| g.mul(x / k, y / k) * k + h.mul(x % k, y % k))
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(&table).expect("direct product is a group")
    }

    pub fn symmetric(n: usize) -> FiniteGroup {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Perm::from_cycles(n, &[vec![0, 1]]).unwrap());
            gens.push(Perm::from_cycles(n, &[(0..n).collect()]).unwrap());
        }
        generate_on(n, &gens).expect("symmetric group within limits")
    }

    pub fn alternating(n: usize) -> FiniteGroup {
        let gens: Vec<Perm> = (2..n)
            .map(|k| Perm::from_cycles(n, &[vec![0, 1, k]]).unwrap())
            .collect();
        generate_on(n, &gens).expect("alternating group within limits")
    }

    /// Dihedral group of order `2k` acting on a `k`-gon.
    pub fn dihedral(k: usize) -> FiniteGroup {
        let rot = Perm::from_images((0..k).map(|i| (i + 1) % k).collect()).unwrap();
        let refl = Perm::from_images((0..k).map(|i| (k - i) % k).collect()).unwrap();
        generate_on(k, &[rot, refl]).expect("dihedral group within limits")
    }

    /// Quaternion group of order 8 in its regular representation.
    pub fn quaternion() -> FiniteGroup {
        // i and j acting on {1,i,j,k,-1,-i,-j,-k} = 0..8 by left multiplication
        let i = Perm::from_images(vec![1, 4, 3, 6, 5, 0, 7, 2]).unwrap();
        let j = Perm::from_images(vec![2, 7, 4, 1, 6, 3, 0, 5]).unwrap();
        generate_on(8, &[i, j]).expect("quaternion group")
    }

    /// All groups of order `n` up to isomorphism, for `n <= 15`.
    pub fn groups_of_order(n: usize) -> Option<Vec<FiniteGroup>> {
        let c = cyclic;
        let x = |a: &FiniteGroup, b: &FiniteGroup| direct_product(a, b);
        let table = |g: FiniteGroup| FiniteGroup::from_table(&g.cayley_table()).unwrap();
        let gs = match n {
            1 | 2 | 3 | 5 | 7 | 11 | 13 => vec![c(n)],
            4 => vec![c(4), x(&c(2), &c(2))],
            6 => vec![c(6), table(symmetric(3))],
            8 => vec![
                c(8),
                x(&c(4), &c(2)),
                x(&x(&c(2), &c(2)), &c(2)),
                table(dihedral(4)),
                table(quaternion()),
            ],
            9 => vec![c(9), x(&c(3), &c(3))],
            10 => vec![c(10), table(dihedral(5))],
            12 => vec![
                c(12),
                x(&c(6), &c(2)),
                table(alternating(4)),
                table(dihedral(6)),
                dicyclic12(),
            ],
            14 => vec![c(14), table(dihedral(7))],
            15 => vec![c(15)],
            _ => return None,
        };
        Some(gs)
    }

    /// The dicyclic group of order 12, `Z/3 ⋊ Z/4`.
    fn dicyclic12() -> FiniteGroup {
        // elements (a, b) with a in Z/3, b in Z/4; b acts on Z/3 by (-1)^b
        let idx = |a: usize, b: usize| a * 4 + b;
        let table: Vec<Vec<usize>> = (0..12)
            .map(|x| {
                let (a1, b1) = (x / 4, x % 4);
                (0..12)
                    .map(|y| {
                        let (a2, b2) = (y / 4, y % 4);
                        let twisted = if b1 % 2 == 0 { a2 } else { (3 - a2) % 3 };
                        idx((a1 + twisted) % 3, (b1 + b2) % 4)
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(&table).expect("dicyclic group")
    }
}
