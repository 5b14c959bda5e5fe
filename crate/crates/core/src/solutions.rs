//! Finite non-degenerate set-theoretic solutions of the Yang–Baxter equation.
//!
//! A solution on `{0, ..., n-1}` is stored as the two families of permutations
//! `sigma[x]` and `tau[y]` with `r(x, y) = (sigma[x](y), tau[y](x))`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::canon::{self, CanonicalForm};
use crate::error::{Error, Result, Side};
use crate::groups::{self, FiniteGroup};
use crate::perm::Perm;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Solution {
    n: usize,
    sigma: Vec<Perm>,
    tau: Vec<Perm>,
}

impl fmt::Debug for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Solution")
            .field("n", &self.n)
            .field(
                "sigma",
                &self.sigma.iter().map(|p| p.to_cycle_string()).collect::<Vec<_>>(),
            )
            .field("tau", &self.tau.iter().map(|p| p.to_cycle_string()).collect::<Vec<_>>())
            .finish()
    }
}

/// Multipermutation level of an involutive solution. Serialized as a number or `"none"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MultipermutationLevel {
    /// Number of retractions needed to reach one point.
    Finite(usize),
    /// The retraction tower stops shrinking above one point.
    None,
}

impl MultipermutationLevel {
    pub fn is_finite(self) -> bool {
        matches!(self, MultipermutationLevel::Finite(_))
    }
}

impl Serialize for MultipermutationLevel {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            MultipermutationLevel::Finite(k) => serializer.serialize_u64(*k as u64),
            MultipermutationLevel::None => serializer.serialize_str("none"),
        }
    }
}

impl<'de> Deserialize<'de> for MultipermutationLevel {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Level(usize),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Level(k) => Ok(MultipermutationLevel::Finite(k)),
            Raw::Text(t) if t == "none" => Ok(MultipermutationLevel::None),
            Raw::Text(t) => Err(serde::de::Error::custom(format!(
                "unknown multipermutation level {t:?}"
            ))),
        }
    }
}

impl fmt::Display for MultipermutationLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MultipermutationLevel::Finite(k) => write!(f, "{k}"),
            MultipermutationLevel::None => f.write_str("none"),
        }
    }
}

/// The classifiers of this module applied to one solution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionReport {
    pub size: usize,
    pub involutive: bool,
    pub indecomposable: bool,
    /// Only defined for involutive solutions.
    pub multipermutation_level: Option<MultipermutationLevel>,
    pub perm_group_order: usize,
    /// Only defined for involutive solutions.
    pub t_is_full_cycle: Option<bool>,
    pub perm_group_cyclic_sylows: bool,
}

impl Solution {
    /// Checks non-degeneracy, bijectivity of `r` and the braid relation, in that order.
    pub fn verify(n: usize, sigma: Vec<Vec<usize>>, tau: Vec<Vec<usize>>) -> Result<Solution> {
        if n == 0 {
            return Err(Error::InvalidPerm("a solution needs at least one point".into()));
        }
        for (rows, side) in [(&sigma, Side::Sigma), (&tau, Side::Tau)] {
            if rows.len() != n {
                return Err(Error::DegreeMismatch {
                    expected: n,
                    found: rows.len(),
                });
            }
            for row in rows.iter() {
                if row.len() != n {
                    return Err(Error::DegreeMismatch {
                        expected: n,
                        found: row.len(),
                    });
                }
            }
            for (index, row) in rows.iter().enumerate() {
                if Perm::from_images(row.clone()).is_err() {
                    return Err(Error::Degenerate { side, index });
                }
            }
        }
        let sigma = sigma.into_iter().map(Perm::from_images_unchecked).collect();
        let tau = tau.into_iter().map(Perm::from_images_unchecked).collect();
        Solution::from_perms(sigma, tau)
    }

    /// Validates a solution given as permutations.
    pub fn from_perms(sigma: Vec<Perm>, tau: Vec<Perm>) -> Result<Solution> {
        let n = sigma.len();
        if n == 0 {
            return Err(Error::InvalidPerm("a solution needs at least one point".into()));
        }
        if tau.len() != n {
            return Err(Error::DegreeMismatch {
                expected: n,
                found: tau.len(),
            });
        }
        if let Some(p) = sigma.iter().chain(&tau).find(|p| p.degree() != n) {
            return Err(Error::DegreeMismatch {
                expected: n,
                found: p.degree(),
            });
        }
        let s = Solution { n, sigma, tau };
        s.check_bijective()?;
        s.check_braid()?;
        Ok(s)
    }

    fn check_bijective(&self) -> Result<()> {
        let n = self.n;
        let mut preimage = vec![usize::MAX; n * n];
        for x in 0..n {
            for y in 0..n {
                let (u, v) = self.r(x, y);
                let slot = &mut preimage[u * n + v];
                if *slot != usize::MAX {
                    return Err(Error::NotBijective {
                        x: *slot / n,
                        y: *slot % n,
                        x2: x,
                        y2: y,
                    });
                }
                *slot = x * n + y;
            }
        }
        Ok(())
    }

    fn check_braid(&self) -> Result<()> {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.r1r2r1(x, y, z) != self.r2r1r2(x, y, z) {
                        return Err(Error::Braid { x, y, z });
                    }
                }
            }
        }
        Ok(())
    }

    fn r1r2r1(&self, x: usize, y: usize, z: usize) -> (usize, usize, usize) {
        let (a, b) = self.r(x, y);
        let (b, c) = self.r(b, z);
        let (a, b) = self.r(a, b);
        (a, b, c)
    }

    fn r2r1r2(&self, x: usize, y: usize, z: usize) -> (usize, usize, usize) {
        let (b, c) = self.r(y, z);
        let (a, b) = self.r(x, b);
        let (b, c) = self.r(b, c);
        (a, b, c)
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn sigma(&self, x: usize) -> &Perm {
        &self.sigma[x]
    }

    #[inline]
    pub fn tau(&self, y: usize) -> &Perm {
        &self.tau[y]
    }

    pub fn sigmas(&self) -> &[Perm] {
        &self.sigma
    }

    pub fn taus(&self) -> &[Perm] {
        &self.tau
    }

    /// `r(x, y) = (sigma[x](y), tau[y](x))`.
    #[inline]
    pub fn r(&self, x: usize, y: usize) -> (usize, usize) {
        (self.sigma[x].apply(y), self.tau[y].apply(x))
    }

    /// Row-major tables `S[x][y] = sigma[x](y)` and `T[y][x] = tau[y](x)`.
    pub fn tables(&self) -> (Vec<usize>, Vec<usize>) {
        let s = self.sigma.iter().flat_map(|p| p.images().iter().copied()).collect();
        let t = self.tau.iter().flat_map(|p| p.images().iter().copied()).collect();
        (s, t)
    }

    /// The same solution with every point `x` renamed to `f(x)`.
    pub fn relabel(&self, f: &Perm) -> Solution {
        let mut sigma = vec![Perm::identity(self.n); self.n];
        let mut tau = vec![Perm::identity(self.n); self.n];
        for x in 0..self.n {
            sigma[f.apply(x)] = self.sigma[x].conjugate_by(f);
            tau[f.apply(x)] = self.tau[x].conjugate_by(f);
        }
        Solution { n: self.n, sigma, tau }
    }

    /// `r` as a permutation of the `n²` pairs, pair `(x, y)` numbered `x * n + y`.
    pub fn r_as_perm(&self) -> Perm {
        let n = self.n;
        let images = (0..n * n)
            .map(|c| {
                let (u, v) = self.r(c / n, c % n);
                u * n + v
            })
            .collect();
        Perm::from_images_unchecked(images)
    }
}

// Constructions ------------------------------------------------------------

/// `r(x, y) = (y, x)`.
pub fn make_trivial(n: usize) -> Result<Solution> {
    let id = Perm::identity(n);
    Solution::from_perms(vec![id.clone(); n], vec![id; n])
}

/// `r(x, y) = (sigma(y), tau(x))`; a solution iff `sigma` and `tau` commute.
pub fn make_permutation(sigma: &Perm, tau: &Perm) -> Result<Solution> {
    if sigma.degree() != tau.degree() {
        return Err(Error::DegreeMismatch {
            expected: sigma.degree(),
            found: tau.degree(),
        });
    }
    let n = sigma.degree();
    Solution::from_perms(vec![sigma.clone(); n], vec![tau.clone(); n])
}

fn from_maps(
    n: usize,
    sigma: impl Fn(usize, usize) -> usize,
    tau: impl Fn(usize, usize) -> usize,
    what: &str,
) -> Result<Solution> {
    let sigma_rows = (0..n).map(|x| (0..n).map(|y| sigma(x, y)).collect()).collect();
    let tau_rows = (0..n).map(|y| (0..n).map(|x| tau(y, x)).collect()).collect();
    Solution::verify(n, sigma_rows, tau_rows)
        .map_err(|e| Error::Internal(format!("{what} construction failed to validate: {e}")))
}

/// `r(x, y) = (y, y⁻¹xy)` on the elements of `g`.
pub fn make_conjugation(g: &FiniteGroup) -> Result<Solution> {
    from_maps(g.order(), |_, y| y, |y, x| g.mul(g.mul(g.inv(y), x), y), "conjugation")
}

/// `r(x, y) = (xy⁻¹x, x)` on the elements of `g`.
pub fn make_core(g: &FiniteGroup) -> Result<Solution> {
    from_maps(g.order(), |x, y| g.mul(g.mul(x, g.inv(y)), x), |_, x| x, "core")
}

/// `r(x, y) = (x - g(x - y), x)` on an abelian group `a` (written additively) with
/// an automorphism given as a permutation of the element indices.
pub fn make_alexander(a: &FiniteGroup, auto: &Perm) -> Result<Solution> {
    let n = a.order();
    if !a.is_abelian() || auto.degree() != n {
        return Err(Error::NotAutomorphism);
    }
    for x in 0..n {
        for y in 0..n {
            if auto.apply(a.mul(x, y)) != a.mul(auto.apply(x), auto.apply(y)) {
                return Err(Error::NotAutomorphism);
            }
        }
    }
    let sub = |x: usize, y: usize| a.mul(x, a.inv(y));
    from_maps(n, |x, y| sub(x, auto.apply(sub(x, y))), |_, x| x, "Alexander")
}

/// The three families of solutions found by Wada, `variant` in `1..=3`:
/// `(y, x⁻¹)`, `(y⁻¹, x⁻¹)` and `(x²y, y⁻¹x⁻¹y)`.
pub fn make_wada(g: &FiniteGroup, variant: u8) -> Result<Solution> {
    let n = g.order();
    match variant {
        1 => from_maps(n, |_, y| y, |_, x| g.inv(x), "Wada"),
        2 => from_maps(n, |_, y| g.inv(y), |_, x| g.inv(x), "Wada"),
        3 => from_maps(
            n,
            |x, y| g.mul(g.mul(x, x), y),
            |y, x| g.mul(g.mul(g.inv(y), g.inv(x)), y),
            "Wada",
        ),
        _ => Err(Error::Parse(format!("Wada variant must be 1, 2 or 3, got {variant}"))),
    }
}

// Classifiers --------------------------------------------------------------

pub fn is_involutive(s: &Solution) -> bool {
    (0..s.n).all(|x| {
        (0..s.n).all(|y| {
            let (u, v) = s.r(x, y);
            s.r(u, v) == (x, y)
        })
    })
}

fn require_involutive(s: &Solution, what: &'static str) -> Result<()> {
    if is_involutive(s) {
        Ok(())
    } else {
        Err(Error::NotInvolutive(what))
    }
}

/// The permutation group generated by the `sigma[x]`.
pub fn permutation_group(s: &Solution) -> FiniteGroup {
    groups::generate_on(s.n, &s.sigma).expect("sigma generators share the degree")
}

/// Decomposability by the definition: tries every split `X = Y ⊔ Z` with both
/// parts nonempty and `r`-invariant.
pub fn is_indecomposable_by_bipartition(s: &Solution) -> bool {
    let n = s.n;
    assert!(n <= 24, "bipartition search is exponential");
    if n == 1 {
        return true;
    }
    // bit i of `mask` (for points 1..n) puts point i in Y; point 0 is always in Y
    let full = (1u32 << (n - 1)) - 1;
    for mask in 0..full {
        let in_y = |p: usize| p == 0 || mask & (1 << (p - 1)) != 0;
        let invariant = (0..n).all(|x| {
            (0..n).all(|y| {
                if in_y(x) != in_y(y) {
                    return true;
                }
                let (u, v) = s.r(x, y);
                in_y(u) == in_y(x) && in_y(v) == in_y(x)
            })
        });
        if invariant {
            return false;
        }
    }
    true
}

/// Indecomposability: transitivity of the permutation group for involutive
/// solutions, the bipartition search otherwise.
pub fn is_indecomposable(s: &Solution) -> bool {
    if is_involutive(s) {
        groups::is_transitive(&s.sigma, s.n)
    } else {
        is_indecomposable_by_bipartition(s)
    }
}

/// The map `x ↦ sigma[x]⁻¹(x)`.
pub fn t_map(s: &Solution) -> Perm {
    let images = (0..s.n).map(|x| s.sigma[x].inverse().apply(x)).collect();
    Perm::from_images(images).expect("T is bijective for involutive solutions")
}

/// True iff `x ↦ sigma[x]⁻¹(x)` is a single cycle through all points.
pub fn t_map_is_full_cycle(s: &Solution) -> Result<bool> {
    require_involutive(s, "the T-map criterion")?;
    Ok(t_map(s).is_full_cycle())
}

/// Class index of each point under `x ~ y ⟺ sigma[x] = sigma[y]`, classes numbered
/// in order of their least member.
pub fn retraction_classes(s: &Solution) -> Vec<usize> {
    let mut class = vec![usize::MAX; s.n];
    let mut next = 0;
    for x in 0..s.n {
        if class[x] != usize::MAX {
            continue;
        }
        for y in x..s.n {
            if s.sigma[y] == s.sigma[x] {
                class[y] = next;
            }
        }
        next += 1;
    }
    class
}

/// The retraction: the induced solution on the classes of `x ~ y ⟺ sigma[x] = sigma[y]`.
pub fn retract(s: &Solution) -> Result<Solution> {
    require_involutive(s, "retraction")?;
    let class = retraction_classes(s);
    let m = class.iter().max().map_or(0, |&c| c + 1);
    let mut reps = vec![usize::MAX; m];
    for x in (0..s.n).rev() {
        reps[class[x]] = x;
    }
    let sigma = reps
        .iter()
        .map(|&x| reps.iter().map(|&y| class[s.sigma[x].apply(y)]).collect())
        .collect();
    let tau = reps
        .iter()
        .map(|&y| reps.iter().map(|&x| class[s.tau[y].apply(x)]).collect())
        .collect();
    Solution::verify(m, sigma, tau).map_err(|e| Error::Internal(format!("retraction failed to validate: {e}")))
}

/// Sizes of the retraction tower `X, Ret(X), Ret²(X), ...` until it reaches one
/// point or stops shrinking.
pub fn retraction_sizes(s: &Solution) -> Result<Vec<usize>> {
    require_involutive(s, "retraction")?;
    let mut sizes = vec![s.n];
    let mut cur = s.clone();
    while cur.n > 1 {
        let next = retract(&cur)?;
        if next.n == cur.n {
            break;
        }
        sizes.push(next.n);
        cur = next;
    }
    Ok(sizes)
}

/// Least `k` with `|Ret^k(X)| = 1` (0 for a single point), or
/// [`MultipermutationLevel::None`] when the tower stabilizes above one point.
pub fn multipermutation_level(s: &Solution) -> Result<MultipermutationLevel> {
    let sizes = retraction_sizes(s)?;
    Ok(if *sizes.last().unwrap() == 1 {
        MultipermutationLevel::Finite(sizes.len() - 1)
    } else {
        MultipermutationLevel::None
    })
}

/// A bijection `f` with `(f × f) ∘ r = r' ∘ (f × f)`, if one exists.
///
/// Backtracks over point images in increasing order of source points; candidate
/// images must match the cycle types of `sigma` and `tau`, and every pair whose
/// images are known is checked against both tables.
pub fn is_isomorphic(s: &Solution, t: &Solution) -> Option<Perm> {
    if s.n != t.n {
        return None;
    }
    let n = s.n;
    let key = |sol: &Solution, x: usize| (sol.sigma[x].cycle_type(), sol.tau[x].cycle_type());
    let skeys: Vec<_> = (0..n).map(|x| key(s, x)).collect();
    let tkeys: Vec<_> = (0..n).map(|x| key(t, x)).collect();
    let mut sk = skeys.clone();
    let mut tk = tkeys.clone();
    sk.sort();
    tk.sort();
    if sk != tk {
        return None;
    }
    let mut f = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if iso_search(s, t, &skeys, &tkeys, 0, &mut f, &mut used) {
        Some(Perm::from_images_unchecked(f))
    } else {
        None
    }
}

fn iso_search(
    s: &Solution,
    t: &Solution,
    skeys: &[(Vec<usize>, Vec<usize>)],
    tkeys: &[(Vec<usize>, Vec<usize>)],
    x: usize,
    f: &mut [usize],
    used: &mut [bool],
) -> bool {
    let n = s.n;
    if x == n {
        return true;
    }
    for y in 0..n {
        if used[y] || skeys[x] != tkeys[y] {
            continue;
        }
        f[x] = y;
        used[y] = true;
        if iso_consistent(s, t, x, f, used) && iso_search(s, t, skeys, tkeys, x + 1, f, used) {
            return true;
        }
        used[y] = false;
        f[x] = usize::MAX;
    }
    false
}

/// Checks every pair involving the newly mapped point `x` (all points `<= x` mapped).
fn iso_consistent(s: &Solution, t: &Solution, x: usize, f: &[usize], used: &[bool]) -> bool {
    let check = |image_src: usize, image_dst: usize| -> bool {
        match f[image_src] {
            usize::MAX => !used[image_dst],
            m => m == image_dst,
        }
    };
    for a in 0..=x {
        for (p, q) in [(x, a), (a, x)] {
            let (fp, fq) = (f[p], f[q]);
            if !check(s.sigma[p].apply(q), t.sigma[fp].apply(fq)) {
                return false;
            }
            if !check(s.tau[p].apply(q), t.tau[fp].apply(fq)) {
                return false;
            }
        }
    }
    true
}

/// Least serialization of `(sigma, tau)` over all relabelings; equal iff isomorphic.
pub fn canonical_form(s: &Solution) -> CanonicalForm {
    canonical_labeling(s).0
}

/// Canonical form together with the canonical representative.
pub fn canonical_labeling(s: &Solution) -> (CanonicalForm, Solution) {
    let (st, tt) = s.tables();
    let lab = canon::canonical_labeling(s.n, &[&st, &tt], false);
    let f = Perm::from_images_unchecked(lab.relabel);
    (lab.form, s.relabel(&f))
}

/// Rebuilds a solution from a canonical form.
pub fn from_canonical_form(form: &CanonicalForm) -> Result<Solution> {
    let bytes = form.as_bytes();
    let n = *bytes
        .first()
        .ok_or_else(|| Error::Parse("empty canonical form".into()))? as usize;
    if bytes.len() != 1 + 2 * n * n {
        return Err(Error::Parse("canonical form has the wrong length".into()));
    }
    let rows = |k: usize| -> Vec<Vec<usize>> {
        (0..n)
            .map(|x| (0..n).map(|y| bytes[1 + k * n * n + x * n + y] as usize).collect())
            .collect()
    };
    Solution::verify(n, rows(0), rows(1))
}

/// Runs every classifier of this module.
pub fn analyze(s: &Solution) -> Result<SolutionReport> {
    let involutive = is_involutive(s);
    let g = permutation_group(s);
    Ok(SolutionReport {
        size: s.n,
        involutive,
        indecomposable: is_indecomposable(s),
        multipermutation_level: if involutive {
            Some(multipermutation_level(s)?)
        } else {
            None
        },
        perm_group_order: g.order(),
        t_is_full_cycle: if involutive {
            Some(t_map_is_full_cycle(s)?)
        } else {
            None
        },
        perm_group_cyclic_sylows: groups::has_all_cyclic_sylows(&g),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::groups::library;

    fn cyc(n: usize, text: &str) -> Perm {
        Perm::parse_cycles(n, text).unwrap()
    }

    #[test]
    fn degenerate_row_is_reported() {
        let err = Solution::verify(2, vec![vec![0, 0], vec![0, 1]], vec![vec![0, 1], vec![0, 1]]).unwrap_err();
        assert_eq!(err.to_string(), "non-degenerate fails at x=0");
        let err = Solution::verify(2, vec![vec![0, 1], vec![0, 1]], vec![vec![0, 1], vec![1, 1]]).unwrap_err();
        assert_eq!(err.to_string(), "non-degenerate fails at y=1");
    }

    #[test]
    fn non_bijective_r_is_reported() {
        // r(x, y) = (x + y, x + y) over Z/2
        let rows = vec![vec![0, 1], vec![1, 0]];
        let err = Solution::verify(2, rows.clone(), rows).unwrap_err();
        assert!(matches!(err, Error::NotBijective { .. }), "{err}");
    }

    #[test]
    fn braid_failure_is_reported() {
        let err = make_permutation(&cyc(3, "(1 2)"), &cyc(3, "(1 3)")).unwrap_err();
        assert!(matches!(err, Error::Braid { .. }), "{err}");
    }

    #[test]
    fn trivial_and_permutation_solutions() {
        let t = make_trivial(4).unwrap();
        assert!(is_involutive(&t));
        assert_eq!(permutation_group(&t).order(), 1);
        assert_eq!(multipermutation_level(&t).unwrap(), MultipermutationLevel::Finite(1));
        assert!(!t_map_is_full_cycle(&t).unwrap());
        assert!(!is_indecomposable(&make_trivial(2).unwrap()));
        assert!(is_indecomposable(&make_trivial(1).unwrap()));
        assert_eq!(
            multipermutation_level(&make_trivial(1).unwrap()).unwrap(),
            MultipermutationLevel::Finite(0)
        );

        let p = make_permutation(&cyc(4, "(1 2)"), &cyc(4, "(3 4)")).unwrap();
        assert!(!is_involutive(&p));

        let s = cyc(5, "(1 2 3 4 5)");
        let q = make_permutation(&s, &s.inverse()).unwrap();
        assert!(is_involutive(&q));
        assert!(is_indecomposable(&q));
        let r = make_permutation(&cyc(5, "(1 2 3)(4 5)"), &cyc(5, "(1 3 2)(4 5)")).unwrap();
        assert!(!is_indecomposable(&r));
    }

    #[test]
    fn non_involutive_three_point_example() {
        let s = catalog::three_point_non_involutive();
        assert!(!is_involutive(&s));
        assert!(matches!(retract(&s), Err(Error::NotInvolutive(_))));
        assert!(matches!(t_map_is_full_cycle(&s), Err(Error::NotInvolutive(_))));
        assert!(matches!(multipermutation_level(&s), Err(Error::NotInvolutive(_))));
    }

    #[test]
    fn group_constructions_validate() {
        let s3 = library::symmetric(3);
        let conj = make_conjugation(&s3).unwrap();
        assert!(!is_involutive(&conj));
        make_core(&s3).unwrap();
        for v in 1..=3 {
            make_wada(&s3, v).unwrap();
        }
        assert!(make_wada(&s3, 4).is_err());
        let w = make_wada(&library::cyclic(3), 2).unwrap();
        assert!(is_involutive(&w));
        assert_eq!(w.r(1, 2), (1, 2));

        let z5 = library::cyclic(5);
        let times2 = Perm::from_images((0..5).map(|x| 2 * x % 5).collect()).unwrap();
        make_alexander(&z5, &times2).unwrap();
        let shift = Perm::from_images((0..5).map(|x| (x + 1) % 5).collect()).unwrap();
        assert!(matches!(make_alexander(&z5, &shift), Err(Error::NotAutomorphism)));
        assert!(matches!(
            make_alexander(&s3, &Perm::identity(6)),
            Err(Error::NotAutomorphism)
        ));
    }

    #[test]
    fn cyclic_shift_solution() {
        for p in [2, 3, 5, 7] {
            let s = catalog::cyclic_shift(p);
            assert!(is_involutive(&s));
            assert_eq!(permutation_group(&s).order(), p);
            assert!(t_map_is_full_cycle(&s).unwrap());
            assert!(is_indecomposable(&s));
        }
    }

    #[test]
    fn catalog_examples() {
        let s = catalog::four_point_indecomposable();
        assert!(is_involutive(&s));
        assert!(is_indecomposable(&s));
        assert!(is_indecomposable_by_bipartition(&s));
        let g = permutation_group(&s);
        assert!(groups::is_transitive(s.sigmas(), 4));
        assert_eq!(multipermutation_level(&s).unwrap(), MultipermutationLevel::None);
        assert!(is_isomorphic(&retract(&s).unwrap(), &s).is_some());
        assert!(g.order() > 1);

        let five = catalog::five_point_level_three();
        assert_eq!(retraction_sizes(&five).unwrap(), vec![5, 3, 2, 1]);
        assert_eq!(multipermutation_level(&five).unwrap(), MultipermutationLevel::Finite(3));
        assert!(!t_map_is_full_cycle(&five).unwrap());
        let t = t_map(&five);
        assert_eq!((t.apply(0), t.apply(1), t.apply(2)), (0, 1, 2));
        assert!(!groups::is_transitive(five.sigmas(), 5));
        let ret2 = retract(&retract(&five).unwrap()).unwrap();
        assert_eq!(ret2, make_trivial(2).unwrap());

        let cand = catalog::eight_point_candidate();
        assert!(is_involutive(&cand));
        let ret = retract(&cand).unwrap();
        assert_eq!(ret.size(), 4);
        assert_eq!(retract(&ret).unwrap(), ret);
        // fixed points of x -> sigma_x(x) are an isomorphism invariant
        let own_fixed = |sol: &Solution| (0..4).filter(|&x| sol.sigma(x).apply(x) == x).count();
        assert_eq!((own_fixed(&ret), own_fixed(&s)), (2, 0));
        assert_eq!(multipermutation_level(&cand).unwrap(), MultipermutationLevel::None);
    }

    #[test]
    fn isomorphism_examples() {
        let s = catalog::four_point_indecomposable();
        let f = is_isomorphic(&s, &s).unwrap();
        assert_eq!(s.relabel(&f), s);
        let triv = make_trivial(3).unwrap();
        let c = cyc(3, "(1 2 3)");
        let perm = make_permutation(&c, &c).unwrap();
        assert!(is_isomorphic(&triv, &perm).is_none());
        assert!(is_isomorphic(&triv, &make_trivial(4).unwrap()).is_none());

        let g = cyc(4, "(1 3)(2 4 )");
        let relabeled = s.relabel(&g);
        let h = is_isomorphic(&s, &relabeled).unwrap();
        assert_eq!(s.relabel(&h), relabeled);
        assert_eq!(canonical_form(&s), canonical_form(&relabeled));
    }

    #[test]
    fn canonical_form_examples() {
        let swap = cyc(2, "(1 2)");
        let a = make_trivial(2).unwrap();
        let b = make_permutation(&swap, &swap).unwrap();
        assert_ne!(canonical_form(&a), canonical_form(&b));
        let (form, rep) = canonical_labeling(&b);
        assert_eq!(from_canonical_form(&form).unwrap(), rep);
    }

    #[test]
    fn four_point_indecomposable_golden_canonical_form() {
        let form = canonical_form(&catalog::four_point_indecomposable());
        assert_eq!(form.to_hex(), GOLDEN_FOUR_POINT);
    }

    /// Frozen after the first computation; guards the canonical serialization.
    const GOLDEN_FOUR_POINT: &str = "040100020302030100000103020302000103010200010300020002010302000301";

    #[test]
    fn report_fields() {
        let r = analyze(&catalog::four_point_indecomposable()).unwrap();
        assert!(r.involutive && r.indecomposable);
        assert_eq!(r.multipermutation_level, Some(MultipermutationLevel::None));
        let r = analyze(&catalog::three_point_non_involutive()).unwrap();
        assert_eq!(r.multipermutation_level, None);
        assert_eq!(r.t_is_full_cycle, None);
    }
}
