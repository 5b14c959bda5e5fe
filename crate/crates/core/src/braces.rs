//! Finite skew braces stored as two Cayley tables sharing the identity 0.
//!
//! Conventions: `a + b` is the additive operation, `a ∘ b` the multiplicative one,
//! `-a` the additive inverse and `a'` the multiplicative inverse. Subtraction is
//! `a - b = a + (-b)`, which matters when `(A, +)` is not abelian.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::canon::{self, CanonicalForm};
use crate::error::{Error, Result};
use crate::groups::{self, FiniteGroup};
use crate::perm::Perm;
use crate::solutions::{self, Solution};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SkewBrace {
    n: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    neg: Vec<usize>,
    minv: Vec<usize>,
}

impl fmt::Debug for SkewBrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SkewBrace")
            .field("n", &self.n)
            .field("add", &self.add_table())
            .field("mul", &self.mul_table())
            .finish()
    }
}

fn identity_of(n: usize, t: &[usize]) -> Option<usize> {
    (0..n).find(|&e| (0..n).all(|a| t[e * n + a] == a && t[a * n + e] == a))
}

fn flatten(n: usize, rows: &[Vec<usize>], what: &'static str) -> Result<Vec<usize>> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::BraceNotGroup {
            op: what,
            reason: format!("table is not {n}×{n}"),
        });
    }
    let flat: Vec<usize> = rows.iter().flatten().copied().collect();
    if let Some(v) = flat.iter().find(|&&v| v >= n) {
        return Err(Error::BraceNotGroup {
            op: what,
            reason: format!("entry {v} out of range"),
        });
    }
    Ok(flat)
}

fn group_inverses(n: usize, t: &[usize], op: &'static str) -> Result<Vec<usize>> {
    let rows: Vec<Vec<usize>> = t.chunks(n).map(<[usize]>::to_vec).collect();
    let g = FiniteGroup::from_table(&rows).map_err(|e| Error::BraceNotGroup {
        op,
        reason: match e {
            Error::InvalidGroup(r) => r,
            other => other.to_string(),
        },
    })?;
    Ok(g.inverses().to_vec())
}

impl SkewBrace {
    /// Validates the group axioms for both tables, the shared identity and the
    /// compatibility `a∘(b+c) = a∘b - a + a∘c`. A shared identity other than 0 is
    /// moved to index 0 by swapping it with 0.
    pub fn verify(add: &[Vec<usize>], mul: &[Vec<usize>]) -> Result<SkewBrace> {
        let n = add.len();
        if n == 0 {
            return Err(Error::BraceNotGroup {
                op: "+",
                reason: "empty table".into(),
            });
        }
        let mut add = flatten(n, add, "+")?;
        let mut mul = flatten(n, mul, "∘")?;
        let e_add = identity_of(n, &add).ok_or_else(|| Error::BraceNotGroup {
            op: "+",
            reason: "no identity element".into(),
        })?;
        let e_mul = identity_of(n, &mul).ok_or_else(|| Error::BraceNotGroup {
            op: "∘",
            reason: "no identity element".into(),
        })?;
        if e_add != e_mul {
            return Err(Error::IdentityMismatch { add: e_add, mul: e_mul });
        }
        if e_add != 0 {
            let mut f: Vec<usize> = (0..n).collect();
            f.swap(0, e_add);
            add = canon::relabel_table(n, &add, &f);
            mul = canon::relabel_table(n, &mul, &f);
        }
        let neg = group_inverses(n, &add, "+")?;
        let minv = group_inverses(n, &mul, "∘")?;
        let brace = SkewBrace { n, add, mul, neg, minv };
        brace.check_compatibility()?;
        Ok(brace)
    }

    fn check_compatibility(&self) -> Result<()> {
        for a in 0..self.n {
            for b in 0..self.n {
                let ab = self.mul(a, b);
                for c in 0..self.n {
                    let lhs = self.mul(a, self.add(b, c));
                    let rhs = self.add(self.sub(ab, a), self.mul(a, c));
                    if lhs != rhs {
                        return Err(Error::Compatibility { a, b, c });
                    }
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.n + b]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b]
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    /// Inverse for `∘`.
    #[inline]
    pub fn minv(&self, a: usize) -> usize {
        self.minv[a]
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn add_table(&self) -> Vec<Vec<usize>> {
        self.add.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    pub fn mul_table(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    pub fn additive_group(&self) -> FiniteGroup {
        FiniteGroup::from_table(&self.add_table()).expect("validated additive group")
    }

    pub fn multiplicative_group(&self) -> FiniteGroup {
        FiniteGroup::from_table(&self.mul_table()).expect("validated multiplicative group")
    }

    pub fn is_abelian_type(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.add(a, b) == self.add(b, a)))
    }

    /// Renames every element `x` to `f(x)`; `f` must fix 0.
    pub fn relabel(&self, f: &Perm) -> SkewBrace {
        assert_eq!(f.apply(0), 0, "relabeling must fix the identity");
        let n = self.n;
        let mut neg = vec![0; n];
        let mut minv = vec![0; n];
        for a in 0..n {
            neg[f.apply(a)] = f.apply(self.neg[a]);
            minv[f.apply(a)] = f.apply(self.minv[a]);
        }
        SkewBrace {
            n,
            add: canon::relabel_table(n, &self.add, f.images()),
            mul: canon::relabel_table(n, &self.mul, f.images()),
            neg,
            minv,
        }
    }
}

// Constructions ------------------------------------------------------------

/// `a∘b = a + b`.
pub fn make_trivial(g: &FiniteGroup) -> SkewBrace {
    let t = g.cayley_table();
    SkewBrace::verify(&t, &t).expect("trivial brace")
}

/// `a∘b = b + a`.
pub fn make_almost_trivial(g: &FiniteGroup) -> SkewBrace {
    let t = g.cayley_table();
    let op: Vec<Vec<usize>> = (0..g.order())
        .map(|a| (0..g.order()).map(|b| g.mul(b, a)).collect())
        .collect();
    SkewBrace::verify(&t, &op).expect("almost trivial brace")
}

fn is_subgroup(g: &FiniteGroup, members: &[usize]) -> bool {
    members.contains(&0)
        && members
            .iter()
            .all(|&a| members.iter().all(|&b| members.contains(&g.mul(a, b))))
}

/// Brace from an exact factorization `G = B + C`, `B ∩ C = {0}`: writing
/// `a = b + c`, the product is `a∘a₁ = b + a₁ + c`.
pub fn make_exact_factorization(g: &FiniteGroup, b: &[usize], c: &[usize]) -> Result<SkewBrace> {
    let n = g.order();
    if !is_subgroup(g, b) || !is_subgroup(g, c) {
        return Err(Error::NotExactFactorization("B and C must be subgroups".into()));
    }
    if b.iter().any(|&x| x != 0 && c.contains(&x)) {
        return Err(Error::NotExactFactorization("B ∩ C is not trivial".into()));
    }
    let mut split = vec![None; n];
    for &x in b {
        for &y in c {
            split[g.mul(x, y)] = Some((x, y));
        }
    }
    if split.iter().any(Option::is_none) {
        return Err(Error::NotExactFactorization("B + C is not the whole group".into()));
    }
    let split: Vec<(usize, usize)> = split.into_iter().map(Option::unwrap).collect();
    let mul: Vec<Vec<usize>> = (0..n)
        .map(|a| {
            let (bb, cc) = split[a];
            (0..n).map(|a1| g.mul(g.mul(bb, a1), cc)).collect()
        })
        .collect();
    let brace =
        SkewBrace::verify(&g.cayley_table(), &mul).map_err(|e| Error::Internal(format!("exact factorization: {e}")))?;

    // (A,∘) ≅ B × C^op: B and C embed, commute elementwise, and the exponent matches.
    let exp_b = b.iter().fold(1u64, |acc, &x| num_integer::lcm(acc, g.element_order(x)));
    let exp_c = c.iter().fold(1u64, |acc, &x| num_integer::lcm(acc, g.element_order(x)));
    let commute = b.iter().all(|&x| c.iter().all(|&y| brace.mul(x, y) == brace.mul(y, x)));
    if !commute || groups::exponent(&brace.multiplicative_group()) != num_integer::lcm(exp_b, exp_c) {
        return Err(Error::Internal("multiplicative group is not B × C".into()));
    }
    Ok(brace)
}

// λ, ∗ and friends -----------------------------------------------------------

/// `λ_a(b) = -a + a∘b`.
pub fn lambda(a_brace: &SkewBrace, a: usize) -> Perm {
    let images = (0..a_brace.n)
        .map(|b| a_brace.add(a_brace.neg(a), a_brace.mul(a, b)))
        .collect();
    Perm::from_images(images).expect("λ_a is bijective in a skew brace")
}

/// `a∗b = -a + a∘b - b`.
pub fn star(brace: &SkewBrace, a: usize, b: usize) -> usize {
    brace.sub(brace.add(brace.neg(a), brace.mul(a, b)), b)
}

/// `(a+b)∘c = a∘c - c + b∘c` for all triples.
pub fn is_two_sided(brace: &SkewBrace) -> bool {
    let n = brace.n;
    (0..n).all(|a| {
        (0..n).all(|b| {
            (0..n).all(|c| brace.mul(brace.add(a, b), c) == brace.add(brace.sub(brace.mul(a, c), c), brace.mul(b, c)))
        })
    })
}

pub fn is_star_associative(brace: &SkewBrace) -> bool {
    let n = brace.n;
    (0..n).all(|a| {
        (0..n).all(|b| {
            let ab = star(brace, a, b);
            (0..n).all(|c| star(brace, ab, c) == star(brace, a, star(brace, b, c)))
        })
    })
}

/// `(A, +, ∗)` as a ring, for an associative brace of abelian type. Returns whether
/// it satisfies every ring axiom and is radical.
pub fn lau_check(brace: &SkewBrace) -> Result<bool> {
    if !brace.is_abelian_type() {
        return Err(Error::NotAbelianType);
    }
    if !is_star_associative(brace) {
        return Err(Error::NotStarAssociative);
    }
    let n = brace.n;
    let prod: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| star(brace, a, b)).collect()).collect();
    Ok(match FiniteRing::new(&brace.add_table(), &prod) {
        Ok(ring) => ring.is_radical(),
        Err(_) => false,
    })
}

// Ideals ------------------------------------------------------------------

/// A subset of a brace containing 0, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraceIdeal {
    members: Vec<usize>,
}

impl BraceIdeal {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        BraceIdeal { members }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members.binary_search(&a).is_ok()
    }
}

pub fn is_ideal(brace: &SkewBrace, ideal: &BraceIdeal) -> bool {
    let n = brace.n;
    if !ideal.contains(0) {
        return false;
    }
    let m = ideal.members();
    let closed = |op: &dyn Fn(usize, usize) -> usize| m.iter().all(|&x| m.iter().all(|&y| ideal.contains(op(x, y))));
    if !closed(&|x, y| brace.add(x, y)) || !closed(&|x, y| brace.mul(x, y)) {
        return false;
    }
    let normal = (0..n).all(|a| {
        m.iter().all(|&x| {
            ideal.contains(brace.add(brace.add(a, x), brace.neg(a)))
                && ideal.contains(brace.mul(brace.mul(a, x), brace.minv(a)))
        })
    });
    normal
        && (0..n).all(|a| {
            m.iter()
                .all(|&x| ideal.contains(brace.add(brace.neg(a), brace.mul(a, x))))
        })
}

/// `Soc(A) = ker λ ∩ Z(A, +)`.
pub fn socle(brace: &SkewBrace) -> BraceIdeal {
    let n = brace.n;
    let members = (0..n)
        .filter(|&a| (0..n).all(|b| brace.mul(a, b) == brace.add(a, b)))
        .filter(|&a| (0..n).all(|b| brace.add(a, b) == brace.add(b, a)))
        .collect();
    let ideal = BraceIdeal::new(members);
    assert!(is_ideal(brace, &ideal), "the socle is an ideal");
    ideal
}

/// `Ann(A) = Soc(A) ∩ Z(A, ∘)`.
pub fn annihilator(brace: &SkewBrace) -> BraceIdeal {
    let n = brace.n;
    let members = socle(brace)
        .members()
        .iter()
        .copied()
        .filter(|&a| (0..n).all(|b| brace.mul(a, b) == brace.mul(b, a)))
        .collect();
    let ideal = BraceIdeal::new(members);
    assert!(is_ideal(brace, &ideal), "the annihilator is an ideal");
    ideal
}

/// `A/I` on the cosets `a + I`, numbered by least member.
pub fn quotient(brace: &SkewBrace, ideal: &BraceIdeal) -> Result<SkewBrace> {
    if !is_ideal(brace, ideal) {
        return Err(Error::NotIdeal);
    }
    let n = brace.n;
    let mut class = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for a in 0..n {
        if class[a] == usize::MAX {
            for &x in ideal.members() {
                class[brace.add(a, x)] = reps.len();
            }
            reps.push(a);
        }
    }
    let table = |op: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<usize>> {
        reps.iter()
            .map(|&a| reps.iter().map(|&b| class[op(a, b)]).collect())
            .collect()
    };
    let add = table(&|a, b| brace.add(a, b));
    let mul = table(&|a, b| brace.mul(a, b));
    SkewBrace::verify(&add, &mul).map_err(|e| Error::Internal(format!("quotient brace: {e}")))
}

/// Least `m` with `A^(m) = {0}`, where `A^(1) = A` and `A^(k+1)` is the additive
/// subgroup generated by `x∗y` for `x ∈ A^(k)`, `y ∈ A`; `None` if the chain
/// stabilizes above `{0}`.
pub fn right_nilpotency(brace: &SkewBrace) -> Option<usize> {
    let n = brace.n;
    let add = brace.additive_group();
    let mut current: Vec<usize> = (0..n).collect();
    let mut k = 1;
    loop {
        if current.len() == 1 {
            return Some(k);
        }
        let stars: Vec<usize> = current
            .iter()
            .flat_map(|&x| (0..n).map(move |y| (x, y)))
            .map(|(x, y)| star(brace, x, y))
            .filter(|&s| s != 0)
            .collect();
        let next = add.subgroup_generated(&stars);
        if next == current {
            return None;
        }
        current = next;
        k += 1;
    }
}

// Solutions ----------------------------------------------------------------

/// `r_A(x, y) = (λ_x(y), λ_x(y)' ∘ x ∘ y)`.
pub fn solution_of(brace: &SkewBrace) -> Solution {
    let n = brace.n;
    let lambdas: Vec<Perm> = (0..n).map(|x| lambda(brace, x)).collect();
    let sigma: Vec<Vec<usize>> = lambdas.iter().map(|p| p.images().to_vec()).collect();
    let tau = (0..n)
        .map(|y| {
            (0..n)
                .map(|x| brace.mul(brace.mul(brace.minv(lambdas[x].apply(y)), x), y))
                .collect()
        })
        .collect();
    Solution::verify(n, sigma, tau).expect("the solution of a skew brace validates")
}

/// Order of `r_A` on `A × A` and the value `2·exp(G/Z(G))` for the additive group `G`.
pub fn r_order_check(brace: &SkewBrace) -> Result<(u64, u64)> {
    if brace.n < 2 {
        return Err(Error::TooSmall);
    }
    let measured = solution_of(brace).r_as_perm().order();
    let predicted = 2 * groups::quotient_exponent_mod_center(&brace.additive_group());
    Ok((measured, predicted))
}

// Isomorphism ---------------------------------------------------------------

/// Least serialization of `(add, mul)` over relabelings fixing 0.
pub fn brace_canonical_form(brace: &SkewBrace) -> CanonicalForm {
    canon::canonical_labeling(brace.n, &[&brace.add, &brace.mul], true).form
}

/// A brace isomorphism `A → B`, if any.
pub fn brace_is_isomorphic(a: &SkewBrace, b: &SkewBrace) -> Option<Perm> {
    if a.n != b.n {
        return None;
    }
    let la = canon::canonical_labeling(a.n, &[&a.add, &a.mul], true);
    let lb = canon::canonical_labeling(b.n, &[&b.add, &b.mul], true);
    if la.form != lb.form {
        return None;
    }
    let fb = Perm::from_images_unchecked(lb.relabel);
    let fa = Perm::from_images_unchecked(la.relabel);
    Some(fb.inverse().compose(&fa))
}

// Identity suite -------------------------------------------------------------

/// Violations of the standard skew-brace identities, as human-readable strings.
/// An empty list means every identity holds on every tuple.
pub fn identity_violations(brace: &SkewBrace) -> Vec<String> {
    let n = brace.n;
    let mut out = Vec::new();
    let lambdas: Vec<Perm> = (0..n).map(|a| lambda(brace, a)).collect();
    let two_sided = is_two_sided(brace);
    for a in 0..n {
        let la = &lambdas[a];
        let la_inv = la.inverse();
        // λ_a(a') = -a
        if la.apply(brace.minv(a)) != brace.neg(a) {
            out.push(format!("λ_a(a') ≠ -a at a={a}"));
        }
        for b in 0..n {
            // λ is a homomorphism (A,∘) → Aut(A,+)
            if lambdas[brace.mul(a, b)] != la.compose(&lambdas[b]) {
                out.push(format!("λ_(a∘b) ≠ λ_a λ_b at ({a},{b})"));
            }
            if la.apply(brace.add(a, b)) != brace.add(la.apply(a), la.apply(b)) {
                out.push(format!("λ_a not additive at ({a},{b})"));
            }
            if brace.mul(a, b) != brace.add(a, la.apply(b)) {
                out.push(format!("a∘b ≠ a + λ_a(b) at ({a},{b})"));
            }
            if brace.add(a, b) != brace.mul(a, la_inv.apply(b)) {
                out.push(format!("a+b ≠ a∘λ⁻¹_a(b) at ({a},{b})"));
            }
            if two_sided {
                let ab = brace.mul(a, b);
                if brace.mul(a, brace.neg(b)) != brace.add(brace.sub(a, ab), a) {
                    out.push(format!("a∘(-b) ≠ a - a∘b + a at ({a},{b})"));
                }
                if brace.mul(brace.neg(a), b) != brace.add(brace.sub(b, ab), b) {
                    out.push(format!("(-a)∘b ≠ b - a∘b + b at ({a},{b})"));
                }
            }
            for c in 0..n {
                // a∗(b+c) = a∗b + b + a∗c - b
                let lhs = star(brace, a, brace.add(b, c));
                let rhs = brace.sub(brace.add(brace.add(star(brace, a, b), b), star(brace, a, c)), b);
                if lhs != rhs {
                    out.push(format!("a∗(b+c) identity fails at ({a},{b},{c})"));
                }
                // (a∘b)∗c = a∗(b∗c) + b∗c + a∗c
                let lhs = star(brace, brace.mul(a, b), c);
                let bc = star(brace, b, c);
                let rhs = brace.add(brace.add(star(brace, a, bc), bc), star(brace, a, c));
                if lhs != rhs {
                    out.push(format!("(a∘b)∗c identity fails at ({a},{b},{c})"));
                }
                // a∘(-b+c) = a - a∘b + a∘c and a∘(b-c) = a∘b - a∘c + a
                let lhs = brace.mul(a, brace.add(brace.neg(b), c));
                let rhs = brace.add(brace.sub(a, brace.mul(a, b)), brace.mul(a, c));
                if lhs != rhs {
                    out.push(format!("a∘(-b+c) identity fails at ({a},{b},{c})"));
                }
                let lhs = brace.mul(a, brace.sub(b, c));
                let rhs = brace.add(brace.sub(brace.mul(a, b), brace.mul(a, c)), a);
                if lhs != rhs {
                    out.push(format!("a∘(b-c) identity fails at ({a},{b},{c})"));
                }
            }
        }
    }
    out
}

// Radical rings ---------------------------------------------------------------

/// A finite non-unitary ring: an abelian additive group with identity 0 and an
/// associative, two-sided distributive product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRing {
    n: usize,
    add: Vec<usize>,
    prod: Vec<usize>,
}

impl FiniteRing {
    pub fn new(add: &[Vec<usize>], prod: &[Vec<usize>]) -> Result<FiniteRing> {
        let n = add.len();
        let g = FiniteGroup::from_table(add).map_err(|e| Error::NotRing(format!("addition: {e}")))?;
        if !g.is_abelian() {
            return Err(Error::NotRing("addition is not commutative".into()));
        }
        if prod.len() != n || prod.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return Err(Error::NotRing("product table has the wrong shape".into()));
        }
        let ring = FiniteRing {
            n,
            add: add.iter().flatten().copied().collect(),
            prod: prod.iter().flatten().copied().collect(),
        };
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if ring.mul(ring.mul(x, y), z) != ring.mul(x, ring.mul(y, z)) {
                        return Err(Error::NotRing(format!("product not associative at ({x},{y},{z})")));
                    }
                    if ring.mul(x, ring.add(y, z)) != ring.add(ring.mul(x, y), ring.mul(x, z))
                        || ring.mul(ring.add(x, y), z) != ring.add(ring.mul(x, z), ring.mul(y, z))
                    {
                        return Err(Error::NotRing(format!("not distributive at ({x},{y},{z})")));
                    }
                }
            }
        }
        Ok(ring)
    }

    pub fn from_fn(
        n: usize,
        add: impl Fn(usize, usize) -> usize,
        prod: impl Fn(usize, usize) -> usize,
    ) -> Result<FiniteRing> {
        let a: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| add(x, y)).collect()).collect();
        let p: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| prod(x, y)).collect()).collect();
        FiniteRing::new(&a, &p)
    }

    /// `Z/n` with product `x·y = k x y mod n`.
    pub fn scaled_integers(n: usize, k: usize) -> Result<FiniteRing> {
        FiniteRing::from_fn(n, |x, y| (x + y) % n, |x, y| k * x * y % n)
    }

    /// Strictly upper triangular `dim × dim` matrices over `Z/p`. Elements are the
    /// above-diagonal entries read row by row as base-`p` digits.
    pub fn strictly_upper_triangular(dim: usize, p: usize) -> Result<FiniteRing> {
        let slots: Vec<(usize, usize)> = (0..dim).flat_map(|i| (i + 1..dim).map(move |j| (i, j))).collect();
        let size = p.pow(slots.len() as u32);
        let decode = |mut x: usize| -> Vec<Vec<usize>> {
            let mut m = vec![vec![0; dim]; dim];
            for &(i, j) in &slots {
                m[i][j] = x % p;
                x /= p;
            }
            m
        };
        let encode = |m: &[Vec<usize>]| -> usize { slots.iter().rev().fold(0, |acc, &(i, j)| acc * p + m[i][j]) };
        let add = |x: usize, y: usize| {
            let (a, b) = (decode(x), decode(y));
            let s: Vec<Vec<usize>> = (0..dim)
                .map(|i| (0..dim).map(|j| (a[i][j] + b[i][j]) % p).collect())
                .collect();
            encode(&s)
        };
        let prod = |x: usize, y: usize| {
            let (a, b) = (decode(x), decode(y));
            let s: Vec<Vec<usize>> = (0..dim)
                .map(|i| {
                    (0..dim)
                        .map(|j| (0..dim).map(|k| a[i][k] * b[k][j]).sum::<usize>() % p)
                        .collect()
                })
                .collect();
            encode(&s)
        };
        FiniteRing::from_fn(size, add, prod)
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x * self.n + y]
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.prod[x * self.n + y]
    }

    pub fn add_table(&self) -> Vec<Vec<usize>> {
        self.add.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    pub fn prod_table(&self) -> Vec<Vec<usize>> {
        self.prod.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    /// `x∘y = x + xy + y`.
    pub fn circle(&self, x: usize, y: usize) -> usize {
        self.add(self.add(x, self.mul(x, y)), y)
    }

    /// True iff the circle operation is a group law.
    pub fn is_radical(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).any(|y| self.circle(x, y) == 0 && self.circle(y, x) == 0))
    }
}

/// The brace `(R, +, ∘)` with `x∘y = x + xy + y`.
pub fn brace_from_radical_ring(ring: &FiniteRing) -> Result<SkewBrace> {
    if !ring.is_radical() {
        return Err(Error::NotRadical("the circle operation is not a group".into()));
    }
    let n = ring.n;
    let circle: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| ring.circle(x, y)).collect()).collect();
    SkewBrace::verify(&ring.add_table(), &circle).map_err(|e| Error::Internal(format!("radical ring brace: {e}")))
}

/// The ring with `xy = -x + x∘y - y` on a two-sided brace of abelian type.
pub fn ring_from_two_sided(brace: &SkewBrace) -> Result<FiniteRing> {
    if !brace.is_abelian_type() {
        return Err(Error::NotAbelianType);
    }
    if !is_two_sided(brace) {
        return Err(Error::NotTwoSided);
    }
    let n = brace.n;
    let prod: Vec<Vec<usize>> = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| brace.sub(brace.add(brace.neg(x), brace.mul(x, y)), y))
                .collect()
        })
        .collect();
    let ring = FiniteRing::new(&brace.add_table(), &prod)
        .map_err(|e| Error::Internal(format!("two-sided brace ring: {e}")))?;
    if !ring.is_radical() {
        return Err(Error::Internal("ring of a two-sided brace is not radical".into()));
    }
    Ok(ring)
}

// Reports --------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraceReport {
    pub size: usize,
    pub abelian_type: bool,
    pub two_sided: bool,
    pub star_associative: bool,
    pub right_nilpotency: Option<usize>,
    pub socle_size: usize,
    pub annihilator_size: usize,
    /// Measured order of `r_A` and `2·exp(G/Z(G))`; absent for the one-element brace.
    pub r_order: Option<(u64, u64)>,
    pub multiplicative_solvable: bool,
    pub solution_involutive: bool,
}

pub fn analyze(brace: &SkewBrace) -> BraceReport {
    BraceReport {
        size: brace.n,
        abelian_type: brace.is_abelian_type(),
        two_sided: is_two_sided(brace),
        star_associative: is_star_associative(brace),
        right_nilpotency: right_nilpotency(brace),
        socle_size: socle(brace).len(),
        annihilator_size: annihilator(brace).len(),
        r_order: r_order_check(brace).ok(),
        multiplicative_solvable: groups::is_solvable(&brace.multiplicative_group()),
        solution_involutive: solutions::is_involutive(&solution_of(brace)),
    }
}
