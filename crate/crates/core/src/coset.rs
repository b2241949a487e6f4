//! Todd–Coxeter coset enumeration, Felsch strategy.
//!
//! Column `2i` holds the action of generator `i`, column `2i + 1` that of its
//! inverse, so `c ^ 1` is the inverse column of `c`. Every table entry is
//! entered together with its inverse entry and pushed on the deduction
//! queue; processing a deduction `(k, c)` scans every cyclic conjugate of
//! every relator (and relator inverse) that starts with `c` from `k`, and
//! those starting with `c ^ 1` from `k·c`. Coincidences are resolved at
//! once through a union-find forest where the smaller id always survives.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::PresentationError;
use crate::presentation::Presentation;
use crate::word::{Generator, Word};

/// Coset budget used when the caller gives none.
pub const DEFAULT_BUDGET: usize = 100_000;

const UNDEF: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    /// The subgroup has exactly this index.
    Completed { index: usize },
    /// The budget ran out. Says nothing about the index.
    Exhausted { cosets_defined: usize, budget: usize },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationStats {
    pub definitions: usize,
    pub coincidences: usize,
    /// Relator scans performed.
    pub steps: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationOutcome {
    pub verdict: Verdict,
    pub stats: EnumerationStats,
    /// The compacted table, present exactly when the enumeration completed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<CosetTable>,
}

impl EnumerationOutcome {
    pub fn index(&self) -> Option<usize> {
        match self.verdict {
            Verdict::Completed { index } => Some(index),
            Verdict::Exhausted { .. } => None,
        }
    }

    /// Copy without the table, for compact evidence records.
    pub fn summary(&self) -> EnumerationOutcome {
        EnumerationOutcome {
            verdict: self.verdict,
            stats: self.stats,
            table: None,
        }
    }
}

/// Completed coset table. Row `r`, column `c` is the coset reached from
/// coset `r` by the letter labelling column `c`; coset 0 is the subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetTable {
    pub generators: Vec<Generator>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<u32>>,
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.rows.len()
    }

    /// Coset reached from `start` by reading `w`, if every step is defined.
    pub fn trace(&self, start: usize, w: &Word) -> Option<usize> {
        let mut c = start;
        for l in w.letters() {
            let g = self.generators.iter().position(|x| *x == l.generator)?;
            c = *self.rows.get(c)?.get(2 * g + usize::from(l.inverse))? as usize;
        }
        Some(c)
    }

    /// Checks that the table is a complete permutation action in which every
    /// relator fixes every coset and every subgroup word fixes coset 0.
    pub fn audit(&self, p: &Presentation, subgroup: &[Word]) -> Result<(), String> {
        let n = self.rows.len();
        for (r, row) in self.rows.iter().enumerate() {
            if row.len() != self.columns.len() {
                return Err(format!("row {r} has {} entries", row.len()));
            }
            for (c, &d) in row.iter().enumerate() {
                let d = d as usize;
                if d >= n {
                    return Err(format!("row {r} column {c} points outside the table"));
                }
                if self.rows[d][c ^ 1] as usize != r {
                    return Err(format!("row {r} column {c} has no matching inverse entry"));
                }
            }
        }
        for (i, rel) in p.relators().iter().enumerate() {
            for start in 0..n {
                if self.trace(start, rel) != Some(start) {
                    return Err(format!("relator {i} does not close at coset {start}"));
                }
            }
        }
        for (i, w) in subgroup.iter().enumerate() {
            if n > 0 && self.trace(0, w) != Some(0) {
                return Err(format!("subgroup word {i} does not fix coset 0"));
            }
        }
        Ok(())
    }
}

struct Exhausted;

struct Enumerator {
    cols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    /// Cyclic conjugates of relators and their inverses, by first column.
    by_first: Vec<Vec<Vec<usize>>>,
    queue: VecDeque<(u32, usize)>,
    budget: usize,
    stats: EnumerationStats,
}

impl Enumerator {
    fn new(cols: usize, relators: &[Vec<usize>], budget: usize) -> Self {
        let mut seen = HashSet::new();
        let mut by_first = vec![Vec::new(); cols];
        for r in relators {
            let inv: Vec<usize> = r.iter().rev().map(|c| c ^ 1).collect();
            for w in [r, &inv] {
                for k in 0..w.len() {
                    let rot: Vec<usize> = w[k..].iter().chain(&w[..k]).copied().collect();
                    if seen.insert(rot.clone()) {
                        by_first[rot[0]].push(rot);
                    }
                }
            }
        }
        Enumerator {
            cols,
            table: Vec::new(),
            parent: Vec::new(),
            by_first,
            queue: VecDeque::new(),
            budget,
            stats: EnumerationStats::default(),
        }
    }

    fn get(&self, k: u32, c: usize) -> u32 {
        self.table[k as usize * self.cols + c]
    }

    fn set(&mut self, k: u32, c: usize, v: u32) {
        self.table[k as usize * self.cols + c] = v;
    }

    fn live(&self, k: u32) -> bool {
        self.parent[k as usize] == k
    }

    fn new_coset(&mut self) -> Result<u32, Exhausted> {
        let n = self.parent.len();
        if n >= self.budget {
            return Err(Exhausted);
        }
        self.parent.push(n as u32);
        self.table.extend(std::iter::repeat_n(UNDEF, self.cols));
        Ok(n as u32)
    }

    fn define(&mut self, k: u32, c: usize) -> Result<(), Exhausted> {
        let b = self.new_coset()?;
        self.stats.definitions += 1;
        self.set(k, c, b);
        self.set(b, c ^ 1, k);
        self.queue.push_back((k, c));
        Ok(())
    }

    fn rep(&mut self, k: u32) -> u32 {
        let mut root = k;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut k = k;
        while self.parent[k as usize] != root {
            let next = self.parent[k as usize];
            self.parent[k as usize] = root;
            k = next;
        }
        root
    }

    fn merge(&mut self, a: u32, b: u32, dead: &mut Vec<u32>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (keep, lose) = (a.min(b), a.max(b));
            self.parent[lose as usize] = keep;
            dead.push(lose);
            self.stats.coincidences += 1;
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        let mut dead = Vec::new();
        self.merge(a, b, &mut dead);
        let mut i = 0;
        while i < dead.len() {
            let g = dead[i];
            i += 1;
            for c in 0..self.cols {
                let d = self.get(g, c);
                if d == UNDEF {
                    continue;
                }
                self.set(d, c ^ 1, UNDEF);
                let mu = self.rep(g);
                let nu = self.rep(d);
                let mu_c = self.get(mu, c);
                let nu_inv = self.get(nu, c ^ 1);
                if mu_c != UNDEF {
                    self.merge(nu, mu_c, &mut dead);
                } else if nu_inv != UNDEF {
                    self.merge(mu, nu_inv, &mut dead);
                } else {
                    self.set(mu, c, nu);
                    self.set(nu, c ^ 1, mu);
                    self.queue.push_back((mu, c));
                }
            }
        }
    }

    /// Scans `w` from `k`, entering a deduction or resolving a coincidence
    /// when the scan is complete or has exactly one gap.
    fn scan(&mut self, k: u32, w: &[usize]) {
        self.stats.steps += 1;
        let r = w.len();
        let (mut f, mut i) = (k, 0);
        while i < r {
            let next = self.get(f, w[i]);
            if next == UNDEF {
                break;
            }
            f = next;
            i += 1;
        }
        if i == r {
            if f != k {
                self.coincidence(f, k);
            }
            return;
        }
        let (mut b, mut j) = (k, r);
        while j > i {
            let prev = self.get(b, w[j - 1] ^ 1);
            if prev == UNDEF {
                break;
            }
            b = prev;
            j -= 1;
        }
        if j == i {
            self.coincidence(f, b);
        } else if j == i + 1 {
            self.set(f, w[i], b);
            self.set(b, w[i] ^ 1, f);
            self.queue.push_back((f, w[i]));
        }
    }

    /// Like [`Enumerator::scan`], but defines new cosets to close every gap.
    fn scan_and_fill(&mut self, k: u32, w: &[usize]) -> Result<(), Exhausted> {
        let r = w.len();
        loop {
            self.stats.steps += 1;
            let k = self.rep(k);
            let (mut f, mut i) = (k, 0);
            while i < r {
                let next = self.get(f, w[i]);
                if next == UNDEF {
                    break;
                }
                f = next;
                i += 1;
            }
            if i == r {
                if f != k {
                    self.coincidence(f, k);
                }
                return Ok(());
            }
            let (mut b, mut j) = (k, r);
            while j > i {
                let prev = self.get(b, w[j - 1] ^ 1);
                if prev == UNDEF {
                    break;
                }
                b = prev;
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                self.set(f, w[i], b);
                self.set(b, w[i] ^ 1, f);
                self.queue.push_back((f, w[i]));
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    fn process_deductions(&mut self) {
        while let Some((k, c)) = self.queue.pop_front() {
            if !self.live(k) {
                continue;
            }
            for idx in 0..self.by_first[c].len() {
                let w = std::mem::take(&mut self.by_first[c][idx]);
                self.scan(k, &w);
                self.by_first[c][idx] = w;
                if !self.live(k) {
                    break;
                }
            }
            if !self.live(k) {
                continue;
            }
            let b = self.get(k, c);
            if b == UNDEF || !self.live(b) {
                continue;
            }
            let ci = c ^ 1;
            for idx in 0..self.by_first[ci].len() {
                let w = std::mem::take(&mut self.by_first[ci][idx]);
                self.scan(b, &w);
                self.by_first[ci][idx] = w;
                if !self.live(b) {
                    break;
                }
            }
        }
    }

    fn run(&mut self, subgroup: &[Vec<usize>]) -> Result<(), Exhausted> {
        self.new_coset()?;
        for w in subgroup {
            self.scan_and_fill(0, w)?;
            self.process_deductions();
        }
        let mut k = 0usize;
        while k < self.parent.len() {
            for c in 0..self.cols {
                if self.live(k as u32) && self.get(k as u32, c) == UNDEF {
                    self.define(k as u32, c)?;
                    self.process_deductions();
                }
            }
            k += 1;
        }
        Ok(())
    }

    fn compact(&self, generators: &[Generator]) -> CosetTable {
        let mut new_id = vec![UNDEF; self.parent.len()];
        let mut n = 0u32;
        for (k, id) in new_id.iter_mut().enumerate() {
            if self.live(k as u32) {
                *id = n;
                n += 1;
            }
        }
        let rows = (0..self.parent.len())
            .filter(|&k| self.live(k as u32))
            .map(|k| {
                (0..self.cols)
                    .map(|c| new_id[self.get(k as u32, c) as usize])
                    .collect()
            })
            .collect();
        let columns = generators
            .iter()
            .flat_map(|g| [g.to_string(), format!("{g}^-1")])
            .collect();
        CosetTable {
            generators: generators.to_vec(),
            columns,
            rows,
        }
    }
}

fn to_columns(p: &Presentation, w: &Word) -> Vec<usize> {
    w.free_reduce()
        .letters()
        .iter()
        .map(|l| 2 * p.index_of(&l.generator).expect("checked word") + usize::from(l.inverse))
        .collect()
}

/// Enumerates the cosets of the subgroup generated by `subgroup` in the
/// group presented by `p`, defining at most `budget` cosets in total.
pub fn enumerate_cosets(
    p: &Presentation,
    subgroup: &[Word],
    budget: usize,
) -> Result<EnumerationOutcome, PresentationError> {
    for w in subgroup {
        p.check_word(w)?;
    }
    let budget = budget.min(UNDEF as usize - 1);
    let relators: Vec<Vec<usize>> = p
        .relators()
        .iter()
        .map(|r| to_columns(p, &r.cyclically_reduce()))
        .filter(|r| !r.is_empty())
        .collect();
    let words: Vec<Vec<usize>> = subgroup
        .iter()
        .map(|w| to_columns(p, w))
        .filter(|w| !w.is_empty())
        .collect();
    let mut e = Enumerator::new(2 * p.generator_count(), &relators, budget);
    let outcome = match e.run(&words) {
        Ok(()) => {
            let table = e.compact(p.generators());
            EnumerationOutcome {
                verdict: Verdict::Completed {
                    index: table.index(),
                },
                stats: e.stats,
                table: Some(table),
            }
        }
        Err(Exhausted) => EnumerationOutcome {
            verdict: Verdict::Exhausted {
                cosets_defined: e.parent.len(),
                budget,
            },
            stats: e.stats,
            table: None,
        },
    };
    Ok(outcome)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", content = "outcome", rename_all = "snake_case")]
pub enum TrivialityVerdict {
    Trivial(EnumerationOutcome),
    /// Enumeration completed with more than one coset: the group has that
    /// finite order.
    Nontrivial(EnumerationOutcome),
    Inconclusive(EnumerationOutcome),
}

/// Enumerates the cosets of the trivial subgroup.
pub fn is_trivial_group(p: &Presentation, budget: usize) -> TrivialityVerdict {
    let out = enumerate_cosets(p, &[], budget).expect("no subgroup words to check");
    match out.index() {
        Some(1) => TrivialityVerdict::Trivial(out),
        Some(_) => TrivialityVerdict::Nontrivial(out),
        None => TrivialityVerdict::Inconclusive(out),
    }
}
