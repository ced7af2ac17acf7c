//! Todd–Coxeter coset enumeration (HLT with lookahead).
//!
//! Each generator gets two columns, one for itself and one for its inverse.
//! Cosets are numbered in order of first definition; the subgroup is coset 0
//! internally and coset 1 in user-facing output.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::group::GeneratedGroup;
use crate::perm::Permutation;
use crate::presentation::{Presentation, Word};

pub const DEFAULT_COSET_BUDGET: usize = 1_000_000;

const UNDEF: u32 = u32::MAX;

/// Enumeration strategy. Only HLT with lookahead is implemented; the
/// variant exists so callers pin it explicitly.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    #[default]
    HltLookahead,
}

/// A complete coset table: the action of each generator on the cosets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    coset_count: usize,
    generator_count: usize,
    /// Row-major, `2 * generator_count` columns; column `2g` is `g`,
    /// column `2g + 1` is `g^-1`.
    table: Vec<u32>,
    subgroup_words: Vec<Word>,
}

impl CosetTable {
    pub fn coset_count(&self) -> usize {
        self.coset_count
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn subgroup_words(&self) -> &[Word] {
        &self.subgroup_words
    }

    /// Image of coset `c` (0-based) under generator `g`.
    pub fn act(&self, c: usize, g: usize) -> usize {
        self.table[c * 2 * self.generator_count + 2 * g] as usize
    }

    pub fn act_inverse(&self, c: usize, g: usize) -> usize {
        self.table[c * 2 * self.generator_count + 2 * g + 1] as usize
    }

    /// Coset reached from `c` by reading `w`.
    pub fn trace(&self, mut c: usize, w: &Word) -> usize {
        for l in w.letters() {
            c = if l.inverse {
                self.act_inverse(c, l.generator)
            } else {
                self.act(c, l.generator)
            };
        }
        c
    }

    /// The permutation of the cosets induced by generator `g`.
    pub fn permutation(&self, g: usize) -> Permutation {
        Permutation::from_raw((0..self.coset_count).map(|c| self.act(c, g) as u32).collect())
    }

    pub fn permutations(&self) -> Vec<Permutation> {
        (0..self.generator_count).map(|g| self.permutation(g)).collect()
    }
}

struct Enumerator {
    cols: usize,
    relators: Vec<Vec<usize>>,
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    budget: usize,
    queue: Vec<u32>,
}

/// Column sequence for a word.
fn columns(w: &Word) -> Vec<usize> {
    w.letters()
        .iter()
        .map(|l| 2 * l.generator + usize::from(l.inverse))
        .collect()
}

#[inline]
fn inv(col: usize) -> usize {
    col ^ 1
}

impl Enumerator {
    fn new(pres: &Presentation, budget: usize) -> Self {
        let cols = 2 * pres.generator_count();
        let relators = pres
            .relators()
            .iter()
            .map(columns)
            .filter(|r| !r.is_empty())
            .collect();
        Self {
            cols,
            relators,
            table: vec![UNDEF; cols],
            parent: vec![0],
            live: 1,
            budget,
            queue: Vec::new(),
        }
    }

    #[inline]
    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.cols + x]
    }

    #[inline]
    fn set(&mut self, c: u32, x: usize, d: u32) {
        self.table[c as usize * self.cols + x] = d;
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn allocated(&self) -> usize {
        self.parent.len()
    }

    /// Defines `c^x` as a new coset; `None` when the table is full even
    /// after lookahead and compaction.
    fn define(&mut self, c: u32, x: usize) -> Option<u32> {
        if self.allocated() >= self.budget {
            return None;
        }
        let d = self.allocated() as u32;
        self.parent.push(d);
        self.table.extend(std::iter::repeat(UNDEF).take(self.cols));
        self.live += 1;
        self.set(c, x, d);
        self.set(d, inv(x), c);
        Some(d)
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut c = c;
        while self.parent[c as usize] != r {
            let next = self.parent[c as usize];
            self.parent[c as usize] = r;
            c = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let r = self.rep(a);
        let s = self.rep(b);
        if r != s {
            let (lo, hi) = if r < s { (r, s) } else { (s, r) };
            self.parent[hi as usize] = lo;
            self.live -= 1;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                let f = self.get(e, x);
                if f == UNDEF {
                    continue;
                }
                if self.get(f, inv(x)) == e {
                    self.set(f, inv(x), UNDEF);
                }
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                let ex = self.get(e1, x);
                if ex != UNDEF {
                    self.merge(f1, ex);
                } else {
                    let fx = self.get(f1, inv(x));
                    if fx != UNDEF {
                        self.merge(e1, fx);
                    } else {
                        self.set(e1, x, f1);
                        self.set(f1, inv(x), e1);
                    }
                }
            }
        }
    }

    /// Scans `word` at coset `c`, defining cosets to close it if `fill`.
    /// Returns `false` only when a definition was needed but the table is
    /// full.
    fn scan(&mut self, c: u32, word: &[usize], fill: bool) -> bool {
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = word.len();
        loop {
            while i < j {
                let n = self.get(f, word[i]);
                if n == UNDEF {
                    break;
                }
                f = n;
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return true;
            }
            while j > i {
                let n = self.get(b, inv(word[j - 1]));
                if n == UNDEF {
                    break;
                }
                b = n;
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return true;
            }
            if j == i + 1 {
                self.set(f, word[i], b);
                self.set(b, inv(word[i]), f);
                return true;
            }
            if !fill {
                return true;
            }
            match self.define(f, word[i]) {
                Some(_) => {}
                None => return false,
            }
        }
    }

    /// Scans every relator at every live coset without defining anything.
    fn lookahead(&mut self) {
        let relators = std::mem::take(&mut self.relators);
        let mut c = 0u32;
        while (c as usize) < self.allocated() {
            for r in &relators {
                if !self.is_live(c) {
                    break;
                }
                self.scan(c, r, false);
            }
            c += 1;
        }
        self.relators = relators;
    }

    /// Renumbers live cosets in increasing order; returns the new index of
    /// the first live coset at or after `cursor`.
    fn compact(&mut self, cursor: u32) -> u32 {
        let n = self.allocated();
        let mut map = vec![UNDEF; n];
        let mut next = 0u32;
        for c in 0..n {
            if self.parent[c] == c as u32 {
                map[c] = next;
                next += 1;
            }
        }
        let mut table = Vec::with_capacity(next as usize * self.cols);
        for c in 0..n {
            if map[c] == UNDEF {
                continue;
            }
            for x in 0..self.cols {
                let d = self.table[c * self.cols + x];
                table.push(if d == UNDEF { UNDEF } else { map[d as usize] });
            }
        }
        self.table = table;
        self.parent = (0..next).collect();
        self.live = next as usize;
        (cursor as usize..n)
            .find(|&c| map[c] != UNDEF)
            .map(|c| map[c])
            .unwrap_or(next)
    }

    /// Makes room after the table fills: lookahead, then compaction.
    fn make_room(&mut self, cursor: u32) -> Result<u32> {
        self.lookahead();
        let cursor = self.compact(cursor);
        if self.allocated() >= self.budget {
            return Err(Error::BudgetExceeded {
                budget: self.budget,
            });
        }
        Ok(cursor)
    }

    fn run(&mut self, subgroup: &[Vec<usize>]) -> Result<()> {
        for h in subgroup {
            while !self.scan(0, h, true) {
                self.make_room(0)?;
            }
        }
        let mut c = 0u32;
        while (c as usize) < self.allocated() {
            let mut r = 0;
            while r < self.relators.len() && self.is_live(c) {
                let word = std::mem::take(&mut self.relators[r]);
                let ok = self.scan(c, &word, true);
                self.relators[r] = word;
                if ok {
                    r += 1;
                } else {
                    c = self.make_room(c)?;
                    r = 0;
                }
            }
            let mut x = 0;
            while x < self.cols && self.is_live(c) {
                if self.get(c, x) == UNDEF && self.define(c, x).is_none() {
                    c = self.make_room(c)?;
                    x = 0;
                    continue;
                }
                x += 1;
            }
            c += 1;
        }
        self.compact(0);
        Ok(())
    }
}

/// Enumerates the cosets of the subgroup generated by `subgroup` in the group
/// presented by `pres`. Fails with `BudgetExceeded` when more than `budget`
/// cosets are live at once.
pub fn enumerate(pres: &Presentation, subgroup: &[Word], budget: usize) -> Result<CosetTable> {
    enumerate_with(pres, subgroup, budget, Strategy::default())
}

pub fn enumerate_with(
    pres: &Presentation,
    subgroup: &[Word],
    budget: usize,
    strategy: Strategy,
) -> Result<CosetTable> {
    let Strategy::HltLookahead = strategy;
    for w in subgroup {
        w.check(pres.generator_count())?;
    }
    let budget = budget.max(1);
    let mut e = Enumerator::new(pres, budget);
    let sub: Vec<Vec<usize>> = subgroup.iter().map(columns).filter(|w| !w.is_empty()).collect();
    e.run(&sub)?;
    Ok(CosetTable {
        coset_count: e.allocated(),
        generator_count: pres.generator_count(),
        table: e.table,
        subgroup_words: subgroup.to_vec(),
    })
}

/// Order of the presented group (index of the trivial subgroup).
pub fn group_order(pres: &Presentation, budget: usize) -> Result<usize> {
    Ok(enumerate(pres, &[], budget)?.coset_count())
}

/// Which coset space a realization acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Action {
    /// Cosets of the subgroup generated by all generators but the first.
    Vertices,
    Regular,
}

/// The presented group as a permutation group on cosets, preferring the
/// vertex action and falling back to the regular action when the vertex
/// action is not faithful.
pub fn permutation_realization(pres: &Presentation, budget: usize) -> Result<GeneratedGroup> {
    Ok(realize(pres, budget)?.0)
}

pub fn realize(pres: &Presentation, budget: usize) -> Result<(GeneratedGroup, Action)> {
    let regular = enumerate(pres, &[], budget)?;
    let order = BigUint::from(regular.coset_count());
    match realize_on(pres, Action::Vertices, budget) {
        Ok(g) if *g.order() == order => Ok((g, Action::Vertices)),
        _ => {
            let g = GeneratedGroup::close_and_order(regular.coset_count(), regular.permutations())?;
            if *g.order() != order {
                return Err(Error::FaithfulnessFailure {
                    action: g.order().to_string(),
                    presented: order.to_string(),
                });
            }
            Ok((g, Action::Regular))
        }
    }
}

/// Action on the given coset space, checked for faithfulness only by the
/// caller.
pub fn realize_on(pres: &Presentation, action: Action, budget: usize) -> Result<GeneratedGroup> {
    let subgroup: Vec<Word> = match action {
        Action::Vertices => (1..pres.generator_count()).map(Word::generator).collect(),
        Action::Regular => Vec::new(),
    };
    let table = enumerate(pres, &subgroup, budget)?;
    GeneratedGroup::close_and_order(table.coset_count(), table.permutations())
}
