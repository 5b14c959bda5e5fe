//! Isomorph-free enumeration of small solutions and skew braces.
//!
//! Solutions are searched cell by cell over the tables `S[x][y] = σ_x(y)` and
//! `T[y][x] = τ_y(x)`, laid out exactly as their canonical serialization. After
//! every assignment the three braid equations, row bijectivity, bijectivity of `r`
//! and (in involutive mode) `r² = id` are propagated to a fixed point. A node is
//! abandoned as soon as some relabeling makes a determined prefix strictly
//! smaller, so each isomorphism class is reached only at its lex-least labeling.
//!
//! The tree is split into independent tasks by the value of the row `σ_0`; tasks
//! run on a rayon pool and their outputs are merged in sorted order.

use std::collections::{BTreeSet, HashMap};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::braces::{self, SkewBrace};
use crate::canon::CanonicalForm;
use crate::error::{Error, Result};
use crate::groups::{self, library};
use crate::perm::{all_perms, Perm};
use crate::solutions::{self, Solution};

/// Largest size the search supports at all.
pub const MAX_SIZE: usize = 8;
pub const DEFAULT_INVOLUTIVE_CAP: usize = 6;
pub const DEFAULT_ALL_CAP: usize = 4;
pub const DEFAULT_BRACE_CAP: usize = 8;

/// Published counts of involutive solutions, indexed by size starting at 1.
pub const PRINTED_INVOLUTIVE: [u64; 10] = [1, 2, 5, 23, 88, 595, 3456, 34530, 321931, 4895272];
/// Published counts of non-involutive solutions, indexed by size starting at 1.
pub const PRINTED_NON_INVOLUTIVE: [u64; 8] = [0, 2, 21, 253, 3519, 100071, 4602720, 422449480];

const CHECKPOINT_FILE: &str = "enumeration-checkpoint.json";
const CHECKPOINT_VERSION: u32 = 1;
/// Environment variable naming a checkpoint directory when none is given explicitly.
pub const CHECKPOINT_ENV: &str = "YBE_CHECKPOINT_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Involutive,
    All,
}

/// `Some(true)` keeps only solutions with the property, `Some(false)` only those without.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Filters {
    pub indecomposable: Option<bool>,
    pub multipermutation: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct EnumerationTask {
    pub n: usize,
    pub mode: Mode,
    pub filters: Filters,
    /// Worker threads; 0 means rayon's default.
    pub jobs: usize,
    pub time_budget: Option<Duration>,
    pub checkpoint_dir: Option<PathBuf>,
    /// Overrides the default size cap of the mode.
    pub size_cap: Option<usize>,
}

impl EnumerationTask {
    pub fn new(n: usize, mode: Mode) -> Self {
        EnumerationTask {
            n,
            mode,
            filters: Filters::default(),
            jobs: 1,
            time_budget: None,
            checkpoint_dir: None,
            size_cap: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidTask("size must be at least 1".into()));
        }
        let cap = self.size_cap.unwrap_or(match self.mode {
            Mode::Involutive => DEFAULT_INVOLUTIVE_CAP,
            Mode::All => DEFAULT_ALL_CAP,
        });
        let cap = cap.min(MAX_SIZE);
        if self.n > cap {
            return Err(Error::SizeCap { n: self.n, cap });
        }
        if self.mode == Mode::All && self.filters.multipermutation.is_some() {
            return Err(Error::InvalidTask(
                "the multipermutation filter needs involutive mode".into(),
            ));
        }
        Ok(())
    }
}

/// Canonical forms of the classes found, sorted, split by involutivity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationResult {
    pub n: usize,
    pub mode: Mode,
    pub filters: Filters,
    pub involutive: usize,
    pub non_involutive: usize,
    pub forms: Vec<CanonicalForm>,
}

impl EnumerationResult {
    pub fn total(&self) -> usize {
        self.involutive + self.non_involutive
    }

    /// The canonical representatives, in form order.
    pub fn solutions(&self) -> impl Iterator<Item = Solution> + '_ {
        self.forms
            .iter()
            .map(|f| solutions::from_canonical_form(f).expect("enumerated forms are valid"))
    }

    /// Differences from the published tables, one line each; empty when consistent or
    /// when no published value applies.
    pub fn table_discrepancies(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.filters != Filters::default() {
            return out;
        }
        if let Some(&p) = PRINTED_INVOLUTIVE.get(self.n - 1) {
            if p != self.involutive as u64 {
                out.push(format!(
                    "involutive count {} differs from the published {p}",
                    self.involutive
                ));
            }
        }
        if self.mode == Mode::All {
            if let Some(&p) = PRINTED_NON_INVOLUTIVE.get(self.n - 1) {
                if p != self.non_involutive as u64 {
                    let all_minus = self.total() as i64 - self.involutive as i64;
                    out.push(format!(
                        "non-involutive count {} (all minus involutive: {all_minus}) differs from the published {p}",
                        self.non_involutive
                    ));
                }
            }
        }
        out
    }
}

// Search state ---------------------------------------------------------------

const MAX_CELLS: usize = 2 * MAX_SIZE * MAX_SIZE;
const UNKNOWN: u8 = u8::MAX;

#[derive(Clone)]
struct State {
    val: [u8; MAX_CELLS],
    dom: [u16; MAX_CELLS],
}

#[derive(Clone, Copy)]
enum Ev {
    Val(usize),
    /// Both indices known, the cell itself unassigned.
    Cell(usize),
    /// Row known, column given by the unassigned cell `col`.
    Pending {
        row: usize,
        col: usize,
    },
    Unk,
}

struct Conflict;

struct Engine<'a> {
    n: usize,
    involutive: bool,
    /// Pairs `(f, f⁻¹)` for every non-identity relabeling.
    relabelings: &'a [(Vec<u8>, Vec<u8>)],
    deadline: Option<Instant>,
    abort: &'a AtomicBool,
    nodes: u64,
}

impl Engine<'_> {
    fn cells(&self) -> usize {
        2 * self.n * self.n
    }

    fn root(&self) -> State {
        let full = (1u16 << self.n) - 1;
        let mut st = State {
            val: [UNKNOWN; MAX_CELLS],
            dom: [0; MAX_CELLS],
        };
        st.dom[..self.cells()].fill(full);
        st
    }

    #[inline]
    fn s(&self, st: &State, a: Ev, b: Ev) -> Ev {
        self.lookup(st, 0, a, b)
    }

    #[inline]
    fn t(&self, st: &State, a: Ev, b: Ev) -> Ev {
        self.lookup(st, self.n * self.n, a, b)
    }

    #[inline]
    fn lookup(&self, st: &State, base: usize, a: Ev, b: Ev) -> Ev {
        match (a, b) {
            (Ev::Val(a), Ev::Val(b)) => {
                let c = base + a * self.n + b;
                match st.val[c] {
                    UNKNOWN => Ev::Cell(c),
                    v => Ev::Val(v as usize),
                }
            }
            (Ev::Val(a), Ev::Cell(col)) => Ev::Pending {
                row: base + a * self.n,
                col,
            },
            _ => Ev::Unk,
        }
    }

    fn set(&self, st: &mut State, c: usize, v: usize) -> Result<bool, Conflict> {
        if st.val[c] != UNKNOWN {
            return if st.val[c] as usize == v {
                Ok(false)
            } else {
                Err(Conflict)
            };
        }
        if st.dom[c] & (1 << v) == 0 {
            return Err(Conflict);
        }
        st.val[c] = v as u8;
        st.dom[c] = 1 << v;
        let row = c - c % self.n;
        for d in row..row + self.n {
            if d != c {
                st.dom[d] &= !(1 << v);
                if st.dom[d] == 0 {
                    return Err(Conflict);
                }
            }
        }
        Ok(true)
    }

    fn equate(&self, st: &mut State, l: Ev, r: Ev) -> Result<bool, Conflict> {
        match (l, r) {
            (Ev::Val(a), Ev::Val(b)) => {
                if a == b {
                    Ok(false)
                } else {
                    Err(Conflict)
                }
            }
            (Ev::Val(a), Ev::Cell(c)) | (Ev::Cell(c), Ev::Val(a)) => self.set(st, c, a),
            (Ev::Val(a), Ev::Pending { row, col }) | (Ev::Pending { row, col }, Ev::Val(a)) => {
                // rows are bijective, so a known position of `a` fixes the column
                match (0..self.n).find(|&k| st.val[row + k] as usize == a) {
                    Some(k) => self.set(st, col, k),
                    None => Ok(false),
                }
            }
            _ => Ok(false),
        }
    }

    fn propagate(&self, st: &mut State) -> Result<(), Conflict> {
        let n = self.n;
        let nn = n * n;
        loop {
            let mut changed = false;
            // naked and hidden singles in each row
            for row in 0..2 * n {
                let base = row * n;
                for c in base..base + n {
                    if st.val[c] == UNKNOWN && st.dom[c].count_ones() == 1 {
                        changed |= self.set(st, c, st.dom[c].trailing_zeros() as usize)?;
                    }
                }
                for v in 0..n {
                    let mut place = None;
                    let mut count = 0;
                    for c in base..base + n {
                        if st.dom[c] & (1 << v) != 0 {
                            count += 1;
                            place = Some(c);
                        }
                    }
                    match (count, place) {
                        (0, _) => return Err(Conflict),
                        (1, Some(c)) => changed |= self.set(st, c, v)?,
                        _ => {}
                    }
                }
            }
            // r is injective
            if !self.involutive {
                let mut seen = [false; MAX_SIZE * MAX_SIZE];
                for x in 0..n {
                    for y in 0..n {
                        let (u, v) = (st.val[x * n + y], st.val[nn + y * n + x]);
                        if u != UNKNOWN && v != UNKNOWN {
                            let k = u as usize * n + v as usize;
                            if seen[k] {
                                return Err(Conflict);
                            }
                            seen[k] = true;
                        }
                    }
                }
            }
            for x in 0..n {
                let vx = Ev::Val(x);
                for y in 0..n {
                    let vy = Ev::Val(y);
                    let sxy = self.s(st, vx, vy);
                    let tyx = self.t(st, vy, vx);
                    if self.involutive {
                        let l = self.s(st, sxy, tyx);
                        changed |= self.equate(st, l, vx)?;
                        let l = self.t(st, tyx, sxy);
                        changed |= self.equate(st, l, vy)?;
                    }
                    for z in 0..n {
                        let vz = Ev::Val(z);
                        let syz = self.s(st, vy, vz);
                        let tzy = self.t(st, vz, vy);
                        // σ_x σ_y (z) = σ_{σ_x y} σ_{τ_y x} (z)
                        let l = self.s(st, vx, syz);
                        let inner = self.s(st, tyx, vz);
                        let r = self.s(st, sxy, inner);
                        changed |= self.equate(st, l, r)?;
                        // τ_z τ_y (x) = τ_{τ_z y} τ_{σ_y z} (x)
                        let l = self.t(st, vz, tyx);
                        let inner = self.t(st, syz, vx);
                        let r = self.t(st, tzy, inner);
                        changed |= self.equate(st, l, r)?;
                        // τ_{σ_{τ_y x} z}(σ_x y) = σ_{τ_{σ_y z} x}(τ_z y)
                        let a = self.s(st, tyx, vz);
                        let l = self.t(st, a, sxy);
                        let b = self.t(st, syz, vx);
                        let r = self.s(st, b, tzy);
                        changed |= self.equate(st, l, r)?;
                    }
                }
            }
            if !changed {
                return Ok(());
            }
        }
    }

    /// False if some relabeling already yields a strictly smaller determined prefix.
    fn may_be_minimal(&self, st: &State) -> bool {
        let n = self.n;
        let nn = n * n;
        for (f, g) in self.relabelings {
            for p in 0..self.cells() {
                let own = st.val[p];
                if own == UNKNOWN {
                    break;
                }
                let (k, i, j) = (p / nn, (p % nn) / n, p % n);
                let src = st.val[k * nn + g[i] as usize * n + g[j] as usize];
                if src == UNKNOWN {
                    break;
                }
                let other = f[src as usize];
                if other < own {
                    return false;
                }
                if other > own {
                    break;
                }
            }
        }
        true
    }

    fn first_unknown(&self, st: &State) -> Option<usize> {
        (0..self.cells()).find(|&c| st.val[c] == UNKNOWN)
    }

    fn out_of_time(&mut self) -> bool {
        self.nodes += 1;
        if self.abort.load(Ordering::Relaxed) {
            return true;
        }
        if self.nodes.is_multiple_of(256) {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.abort.store(true, Ordering::Relaxed);
                    return true;
                }
            }
        }
        false
    }

    /// Depth-first search below a propagated node; leaves are passed to `emit`.
    fn search(&mut self, st: State, stop_at: usize, emit: &mut dyn FnMut(&State)) -> bool {
        if self.out_of_time() {
            return false;
        }
        match self.first_unknown(&st) {
            Some(c) if c < stop_at => {
                let dom = st.dom[c];
                for v in 0..self.n {
                    if dom & (1 << v) == 0 {
                        continue;
                    }
                    let mut child = st.clone();
                    if self.set(&mut child, c, v).is_err() || self.propagate(&mut child).is_err() {
                        continue;
                    }
                    if !self.may_be_minimal(&child) {
                        continue;
                    }
                    if !self.search(child, stop_at, emit) {
                        return false;
                    }
                }
                true
            }
            _ => {
                emit(&st);
                true
            }
        }
    }
}

fn relabelings(n: usize) -> Vec<(Vec<u8>, Vec<u8>)> {
    all_perms(n)
        .into_iter()
        .filter(|p| !p.is_identity())
        .map(|p| {
            let f = p.images().iter().map(|&v| v as u8).collect();
            let g = p.inverse().images().iter().map(|&v| v as u8).collect();
            (f, g)
        })
        .collect()
}

fn state_solution(n: usize, st: &State) -> Solution {
    let nn = n * n;
    let rows = |base: usize| -> Vec<Vec<usize>> {
        (0..n)
            .map(|i| (0..n).map(|j| st.val[base + i * n + j] as usize).collect())
            .collect()
    };
    Solution::verify(n, rows(0), rows(nn)).expect("propagated leaves satisfy every axiom")
}

fn keep(filters: &Filters, s: &Solution) -> bool {
    if let Some(want) = filters.indecomposable {
        if solutions::is_indecomposable(s) != want {
            return false;
        }
    }
    if let Some(want) = filters.multipermutation {
        let finite = solutions::multipermutation_level(s)
            .map(|l| l.is_finite())
            .unwrap_or(false);
        if finite != want {
            return false;
        }
    }
    true
}

// Checkpoints ------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct TaskRecord {
    sigma0: Vec<usize>,
    done: bool,
    forms: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct Checkpoint {
    format_version: u32,
    n: usize,
    mode: Mode,
    filters: Filters,
    tasks: Vec<TaskRecord>,
}

impl Checkpoint {
    fn load(dir: &Path) -> Result<Option<Checkpoint>> {
        let path = dir.join(CHECKPOINT_FILE);
        if !path.exists() {
            return Ok(None);
        }
        let cp: Checkpoint = serde_json::from_str(&fs::read_to_string(&path)?)
            .map_err(|e| Error::Checkpoint(format!("{}: {e}", path.display())))?;
        if cp.format_version != CHECKPOINT_VERSION {
            return Err(Error::Checkpoint(format!(
                "unsupported checkpoint version {}",
                cp.format_version
            )));
        }
        Ok(Some(cp))
    }

    fn save(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        let tmp = dir.join(format!("{CHECKPOINT_FILE}.tmp"));
        fs::write(&tmp, serde_json::to_string_pretty(self)?)?;
        fs::rename(&tmp, dir.join(CHECKPOINT_FILE))?;
        Ok(())
    }
}

fn parse_hex_form(s: &str) -> Result<CanonicalForm> {
    if !s.len().is_multiple_of(2) {
        return Err(Error::Checkpoint(format!("bad canonical form {s}")));
    }
    let bytes = (0..s.len())
        .step_by(2)
        .map(|i| u8::from_str_radix(&s[i..i + 2], 16))
        .collect::<std::result::Result<Vec<u8>, _>>()
        .map_err(|e| Error::Checkpoint(format!("bad canonical form {s}: {e}")))?;
    Ok(CanonicalForm::from_bytes(bytes))
}

// Driver --------------------------------------------------------------------------

/// Runs a task to completion, or fails with [`Error::TimeBudget`] after saving the
/// frontier when a checkpoint directory is configured.
pub fn enumerate_solutions(task: &EnumerationTask) -> Result<EnumerationResult> {
    task.validate()?;
    let n = task.n;
    let rel = relabelings(n);
    let abort = AtomicBool::new(false);
    let never = AtomicBool::new(false);
    let deadline = task.time_budget.map(|b| Instant::now() + b);
    let involutive = task.mode == Mode::Involutive;
    let engine = |abort| Engine {
        n,
        involutive,
        relabelings: &rel,
        deadline,
        abort,
        nodes: 0,
    };

    // frontier: every consistent value of the row σ_0
    let mut frontier = Vec::new();
    {
        let mut e = Engine {
            deadline: None,
            ..engine(&never)
        };
        let mut root = e.root();
        if e.propagate(&mut root).is_ok() {
            e.search(root, n, &mut |st| frontier.push(st.clone()));
        }
    }
    let sigma0 = |st: &State| -> Vec<usize> { st.val[..n].iter().map(|&v| v as usize).collect() };

    let dir = task.checkpoint_dir.clone();
    let mut records: Vec<TaskRecord> = frontier
        .iter()
        .map(|st| TaskRecord {
            sigma0: sigma0(st),
            done: false,
            forms: Vec::new(),
        })
        .collect();
    if let Some(dir) = &dir {
        if let Some(cp) = Checkpoint::load(dir)? {
            let same_tasks = cp.tasks.iter().map(|t| &t.sigma0).eq(records.iter().map(|t| &t.sigma0));
            if cp.n != n || cp.mode != task.mode || cp.filters != task.filters || !same_tasks {
                return Err(Error::Checkpoint(
                    "checkpoint belongs to a different enumeration".into(),
                ));
            }
            records = cp.tasks;
        }
    }
    let checkpoint = Mutex::new(Checkpoint {
        format_version: CHECKPOINT_VERSION,
        n,
        mode: task.mode,
        filters: task.filters,
        tasks: records.clone(),
    });

    let run = |i: usize| -> Result<()> {
        if records[i].done {
            return Ok(());
        }
        let mut e = engine(&abort);
        let mut forms = Vec::new();
        let finished = e.search(frontier[i].clone(), usize::MAX, &mut |st| {
            let bytes: Vec<u8> = std::iter::once(n as u8)
                .chain(st.val[..2 * n * n].iter().copied())
                .collect();
            let s = state_solution(n, st);
            debug_assert_eq!(solutions::canonical_form(&s).as_bytes(), bytes.as_slice());
            if keep(&task.filters, &s) {
                forms.push(CanonicalForm::from_bytes(bytes));
            }
        });
        if finished {
            let mut cp = checkpoint.lock().expect("checkpoint lock");
            cp.tasks[i].done = true;
            cp.tasks[i].forms = forms.iter().map(CanonicalForm::to_hex).collect();
            if let Some(dir) = &dir {
                cp.save(dir)?;
            }
        }
        Ok(())
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(task.jobs)
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    pool.install(|| (0..frontier.len()).into_par_iter().try_for_each(run))?;

    let cp = checkpoint.into_inner().expect("checkpoint lock");
    let completed = cp.tasks.iter().filter(|t| t.done).count();
    if completed < cp.tasks.len() {
        if let Some(dir) = &dir {
            cp.save(dir)?;
        }
        return Err(Error::TimeBudget {
            completed,
            total: cp.tasks.len(),
        });
    }
    let mut forms: Vec<CanonicalForm> = cp
        .tasks
        .iter()
        .flat_map(|t| t.forms.iter().map(|h| parse_hex_form(h)))
        .collect::<Result<_>>()?;
    forms.sort();
    let involutive = forms
        .iter()
        .filter(|f| solutions::is_involutive(&solutions::from_canonical_form(f).expect("valid form")))
        .count();
    Ok(EnumerationResult {
        n,
        mode: task.mode,
        filters: task.filters,
        involutive,
        non_involutive: forms.len() - involutive,
        forms,
    })
}

/// Canonical forms of every class, found by testing all `(n!)^(2n)` candidate
/// families without any pruning. Only feasible for `n ≤ 3`.
pub fn brute_force_solutions(n: usize, mode: Mode) -> Result<Vec<CanonicalForm>> {
    if n == 0 || n > 3 {
        return Err(Error::SizeCap { n, cap: 3 });
    }
    let perms = all_perms(n);
    let k = perms.len();
    let mut forms = BTreeSet::new();
    let rows = 2 * n;
    let mut idx = vec![0usize; rows];
    loop {
        let sigma: Vec<Perm> = idx[..n].iter().map(|&i| perms[i].clone()).collect();
        let tau: Vec<Perm> = idx[n..].iter().map(|&i| perms[i].clone()).collect();
        if let Ok(s) = Solution::from_perms(sigma, tau) {
            if mode == Mode::All || solutions::is_involutive(&s) {
                forms.insert(solutions::canonical_form(&s));
            }
        }
        let mut pos = 0;
        loop {
            if pos == rows {
                return Ok(forms.into_iter().collect());
            }
            idx[pos] += 1;
            if idx[pos] < k {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Canonical forms of every class, found by assigning the pairs `(σ_x, τ_x)` row by
/// row and discarding a partial assignment only when a fully evaluable braid triple
/// fails. Shares no propagation or symmetry breaking with the main search; feasible
/// for `n ≤ 4`.
pub fn row_search_solutions(n: usize, mode: Mode) -> Result<Vec<CanonicalForm>> {
    if n == 0 || n > 4 {
        return Err(Error::SizeCap { n, cap: 4 });
    }
    let perms = all_perms(n);
    let mut sigma = vec![None; n];
    let mut tau = vec![None; n];
    let mut forms = BTreeSet::new();
    row_search(0, n, mode, &perms, &mut sigma, &mut tau, &mut forms);
    Ok(forms.into_iter().collect())
}

fn row_search(
    k: usize,
    n: usize,
    mode: Mode,
    perms: &[Perm],
    sigma: &mut Vec<Option<usize>>,
    tau: &mut Vec<Option<usize>>,
    forms: &mut BTreeSet<CanonicalForm>,
) {
    if k == n {
        let s = sigma.iter().map(|i| perms[i.expect("assigned")].clone()).collect();
        let t = tau.iter().map(|i| perms[i.expect("assigned")].clone()).collect();
        if let Ok(sol) = Solution::from_perms(s, t) {
            if mode == Mode::All || solutions::is_involutive(&sol) {
                forms.insert(solutions::canonical_form(&sol));
            }
        }
        return;
    }
    for i in 0..perms.len() {
        for j in 0..perms.len() {
            sigma[k] = Some(i);
            tau[k] = Some(j);
            if braid_consistent(n, perms, sigma, tau) {
                row_search(k + 1, n, mode, perms, sigma, tau, forms);
            }
        }
    }
    sigma[k] = None;
    tau[k] = None;
}

fn braid_consistent(n: usize, perms: &[Perm], sigma: &[Option<usize>], tau: &[Option<usize>]) -> bool {
    let s = |a: usize, b: usize| sigma[a].map(|i| perms[i].apply(b));
    let t = |a: usize, b: usize| tau[a].map(|i| perms[i].apply(b));
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = (|| {
                    let (a, b) = (s(x, y)?, t(y, x)?);
                    let (b, c) = (s(b, z)?, t(z, b)?);
                    Some((s(a, b)?, t(b, a)?, c))
                })();
                let rhs = (|| {
                    let (p, q) = (s(y, z)?, t(z, y)?);
                    let (u, w) = (s(x, p)?, t(p, x)?);
                    Some((u, s(w, q)?, t(q, w)?))
                })();
                if let (Some(l), Some(r)) = (lhs, rhs) {
                    if l != r {
                        return false;
                    }
                }
            }
        }
    }
    true
}

// Skew braces --------------------------------------------------------------------

/// One brace per isomorphism class of order `n`, sorted by canonical form.
pub fn enumerate_braces(n: usize) -> Result<Vec<(CanonicalForm, SkewBrace)>> {
    enumerate_braces_capped(n, DEFAULT_BRACE_CAP)
}

pub fn enumerate_braces_capped(n: usize, cap: usize) -> Result<Vec<(CanonicalForm, SkewBrace)>> {
    if n == 0 || n > cap {
        return Err(Error::SizeCap { n, cap });
    }
    let groups = library::groups_of_order(n).ok_or(Error::SizeCap { n, cap: 15 })?;
    let mut found: Vec<(CanonicalForm, SkewBrace)> = Vec::new();
    for g in &groups {
        let auts = groups::automorphisms(g);
        let index: HashMap<&Perm, usize> = auts.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let comp: Vec<usize> = auts
            .iter()
            .flat_map(|a| auts.iter().map(move |b| (a, b)))
            .map(|(a, b)| index[&a.compose(b)])
            .collect();
        let id = index[&Perm::identity(n)];
        let mut lam = vec![None; n];
        lam[0] = Some(id);
        let mut seen = BTreeSet::new();
        let mut leaves = Vec::new();
        lambda_search(g, &auts, &comp, lam, &mut leaves);
        for lam in leaves {
            let lambda: Vec<&Perm> = lam.iter().map(|&i| &auts[i]).collect();
            let mul: Vec<Vec<usize>> = (0..n)
                .map(|a| (0..n).map(|b| g.mul(a, lambda[a].apply(b))).collect())
                .collect();
            let brace = SkewBrace::verify(&g.cayley_table(), &mul)
                .map_err(|e| Error::Internal(format!("λ-map did not give a brace: {e}")))?;
            let form = braces::brace_canonical_form(&brace);
            if seen.insert(form.clone()) {
                found.push((form, brace));
            }
        }
    }
    found.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(found)
}

/// Maps `λ: G → Aut(G)` with `λ_{a + λ_a(b)} = λ_a λ_b`.
fn lambda_search(
    g: &groups::FiniteGroup,
    auts: &[Perm],
    comp: &[usize],
    mut lam: Vec<Option<usize>>,
    out: &mut Vec<Vec<usize>>,
) {
    let n = g.order();
    let k = auts.len();
    loop {
        let mut changed = false;
        for a in 0..n {
            let Some(la) = lam[a] else { continue };
            for b in 0..n {
                let Some(lb) = lam[b] else { continue };
                let c = g.mul(a, auts[la].apply(b));
                let want = comp[la * k + lb];
                match lam[c] {
                    None => {
                        lam[c] = Some(want);
                        changed = true;
                    }
                    Some(have) if have != want => return,
                    _ => {}
                }
            }
        }
        if !changed {
            break;
        }
    }
    match lam.iter().position(Option::is_none) {
        None => out.push(lam.into_iter().map(Option::unwrap).collect()),
        Some(a) => {
            for choice in 0..k {
                let mut next = lam.clone();
                next[a] = Some(choice);
                lambda_search(g, auts, comp, next, out);
            }
        }
    }
}

/// Every `(+, ∘)` pair of group tables with identity 0, filtered by compatibility
/// and reduced to canonical forms. Only feasible for `n ≤ 4`.
pub fn brute_force_braces(n: usize) -> Result<Vec<CanonicalForm>> {
    if n == 0 || n > 4 {
        return Err(Error::SizeCap { n, cap: 4 });
    }
    let free = (n - 1) * (n - 1);
    let total = n.pow(free as u32);
    let mut tables = Vec::new();
    for code in 0..total {
        let mut t = vec![vec![0; n]; n];
        let mut c = code;
        for (a, row) in t.iter_mut().enumerate() {
            for (b, cell) in row.iter_mut().enumerate() {
                *cell = if a == 0 {
                    b
                } else if b == 0 {
                    a
                } else {
                    let v = c % n;
                    c /= n;
                    v
                };
            }
        }
        if groups::FiniteGroup::from_table(&t).is_ok() {
            tables.push(t);
        }
    }
    let mut forms = BTreeSet::new();
    for add in &tables {
        for mul in &tables {
            if let Ok(b) = SkewBrace::verify(add, mul) {
                forms.insert(braces::brace_canonical_form(&b));
            }
        }
    }
    Ok(forms.into_iter().collect())
}

// Corpus statistics -----------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusRow {
    pub size: usize,
    pub total: usize,
    pub multipermutation: usize,
    pub indecomposable: usize,
    pub t_full_cycle: usize,
    pub cyclic_sylow: usize,
    pub multipermutation_fraction: f64,
}

/// Per-size statistics of a stream of involutive solutions; non-involutive entries
/// are skipped.
pub fn corpus_report<I: IntoIterator<Item = Solution>>(stream: I) -> Vec<CorpusRow> {
    let mut rows: Vec<CorpusRow> = Vec::new();
    for s in stream {
        if !solutions::is_involutive(&s) {
            continue;
        }
        let size = s.size();
        let pos = match rows.iter().position(|r| r.size == size) {
            Some(p) => p,
            None => {
                rows.push(CorpusRow {
                    size,
                    total: 0,
                    multipermutation: 0,
                    indecomposable: 0,
                    t_full_cycle: 0,
                    cyclic_sylow: 0,
                    multipermutation_fraction: 0.0,
                });
                rows.len() - 1
            }
        };
        let row = &mut rows[pos];
        row.total += 1;
        if solutions::multipermutation_level(&s)
            .map(|l| l.is_finite())
            .unwrap_or(false)
        {
            row.multipermutation += 1;
        }
        if solutions::is_indecomposable(&s) {
            row.indecomposable += 1;
        }
        if solutions::t_map_is_full_cycle(&s).unwrap_or(false) {
            row.t_full_cycle += 1;
        }
        if groups::has_all_cyclic_sylows(&solutions::permutation_group(&s)) {
            row.cyclic_sylow += 1;
        }
    }
    for r in &mut rows {
        r.multipermutation_fraction = r.multipermutation as f64 / r.total as f64;
    }
    rows.sort_by_key(|r| r.size);
    rows
}

/// Relabels a brace's canonical form back to tables, for streams.
pub fn brace_from_canonical_form(form: &CanonicalForm) -> Result<SkewBrace> {
    let bytes = form.as_bytes();
    let n = *bytes
        .first()
        .ok_or_else(|| Error::Parse("empty canonical form".into()))? as usize;
    if bytes.len() != 1 + 2 * n * n {
        return Err(Error::Parse("canonical form has the wrong length".into()));
    }
    let rows = |k: usize| -> Vec<Vec<usize>> {
        (0..n)
            .map(|a| (0..n).map(|b| bytes[1 + k * n * n + a * n + b] as usize).collect())
            .collect()
    };
    SkewBrace::verify(&rows(0), &rows(1))
}
