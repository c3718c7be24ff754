//! Exhaustive search for every fraction of size `s` and strength `t`.
//!
//! Runs are decided in index order. For every `J` with `|J| <= t` (the empty
//! set included, which fixes the size) each marginal cell keeps a count of
//! chosen runs and of undecided runs; a branch is cut as soon as some cell
//! overshoots `s / m_J` or can no longer reach it.

use alloc::vec::Vec;

use crate::contrast::{compatible_sizes, subsets_of_size};
use crate::space::{DesignSpace, Fraction};
use crate::symmetry::SymmetryGroup;
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct Enumerator {
    size: usize,
    strength: usize,
    runs: usize,
    /// `cells[run]` lists the marginal cells the run falls into.
    cells: Vec<Vec<usize>>,
    targets: Vec<usize>,
    capacity: Vec<usize>,
}

#[derive(Clone)]
struct State {
    y: Vec<bool>,
    count: Vec<usize>,
    remaining: Vec<usize>,
}

impl Enumerator {
    pub fn new(space: &DesignSpace, size: usize, strength: usize) -> Result<Self> {
        if !compatible_sizes(space, strength)?.contains(&size) {
            return Err(Error::IncompatibleSize { size, strength });
        }
        let n = space.factor_count();
        let m = space.run_count();
        let radices = space.level_counts();
        let mut cells = alloc::vec![Vec::new(); m];
        let mut targets = Vec::new();
        let mut capacity = Vec::new();
        for k in 0..=strength {
            for subset in subsets_of_size(n, k) {
                let mj = space.subset_run_count(&subset);
                let base = targets.len();
                targets.extend(core::iter::repeat_n(size / mj, mj));
                capacity.extend(core::iter::repeat_n(m / mj, mj));
                for (run, slot) in cells.iter_mut().enumerate() {
                    let c = space.coords(run);
                    let cell = subset.iter().fold(0, |acc, &j| acc * radices[j] + c[j]);
                    slot.push(base + cell);
                }
            }
        }
        Ok(Enumerator { size, strength, runs: m, cells, targets, capacity })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn strength(&self) -> usize {
        self.strength
    }

    fn initial(&self) -> State {
        State {
            y: Vec::with_capacity(self.runs),
            count: alloc::vec![0; self.targets.len()],
            remaining: self.capacity.clone(),
        }
    }

    fn can_take(&self, st: &State, run: usize) -> bool {
        self.cells[run].iter().all(|&c| st.count[c] < self.targets[c])
    }

    fn can_skip(&self, st: &State, run: usize) -> bool {
        self.cells[run].iter().all(|&c| st.count[c] + st.remaining[c] > self.targets[c])
    }

    fn push(&self, st: &mut State, take: bool) {
        let run = st.y.len();
        for &c in &self.cells[run] {
            st.remaining[c] -= 1;
            if take {
                st.count[c] += 1;
            }
        }
        st.y.push(take);
    }

    fn pop(&self, st: &mut State) {
        let take = st.y.pop().expect("non-empty assignment");
        let run = st.y.len();
        for &c in &self.cells[run] {
            st.remaining[c] += 1;
            if take {
                st.count[c] -= 1;
            }
        }
    }

    fn walk(&self, st: &mut State, depth: usize, visit: &mut dyn FnMut(&[bool])) {
        let run = st.y.len();
        if run == depth {
            visit(&st.y);
            return;
        }
        for take in [true, false] {
            let ok = if take { self.can_take(st, run) } else { self.can_skip(st, run) };
            if ok {
                self.push(st, take);
                self.walk(st, depth, visit);
                self.pop(st);
            }
        }
    }

    fn replay(&self, prefix: &[bool]) -> Option<State> {
        let mut st = self.initial();
        for &take in prefix {
            let run = st.y.len();
            if run >= self.runs {
                return None;
            }
            let ok = if take { self.can_take(&st, run) } else { self.can_skip(&st, run) };
            if !ok {
                return None;
            }
            self.push(&mut st, take);
        }
        Some(st)
    }

    /// Every feasible assignment of the first `depth` runs. Searching below
    /// each of them with [`Enumerator::search_prefix`] covers all solutions
    /// exactly once.
    pub fn prefixes(&self, depth: usize) -> Vec<Vec<bool>> {
        let mut out = Vec::new();
        let mut st = self.initial();
        self.walk(&mut st, depth.min(self.runs), &mut |y| out.push(y.to_vec()));
        out
    }

    /// Calls `visit` on each solution extending `prefix`.
    pub fn for_each_with_prefix(&self, prefix: &[bool], visit: &mut dyn FnMut(Fraction)) {
        if let Some(mut st) = self.replay(prefix) {
            self.walk(&mut st, self.runs, &mut |y| visit(Fraction::from_bits(y.to_vec())));
        }
    }

    /// Solutions extending `prefix`, ascending.
    pub fn search_prefix(&self, prefix: &[bool]) -> Vec<Fraction> {
        let mut out = Vec::new();
        self.for_each_with_prefix(prefix, &mut |f| out.push(f));
        out.sort();
        out
    }

    /// All solutions, ascending.
    pub fn solutions(&self) -> Vec<Fraction> {
        self.search_prefix(&[])
    }

    pub fn count(&self) -> usize {
        let mut n = 0;
        let mut st = self.initial();
        self.walk(&mut st, self.runs, &mut |_| n += 1);
        n
    }

    /// The canonical representative of each orbit that has a solution.
    pub fn canonical_solutions(&self, group: &SymmetryGroup) -> Vec<Fraction> {
        let mut out = Vec::new();
        self.for_each_with_prefix(&[], &mut |f| {
            if group.is_canonical(&f) {
                out.push(f);
            }
        });
        out.sort();
        out
    }
}

/// All fractions of `space` with `s` runs and strength at least `t`,
/// ascending. An incompatible size is an error; a compatible size with no
/// solution gives an empty list.
pub fn enumerate_orthogonal(space: &DesignSpace, s: usize, t: usize) -> Result<Vec<Fraction>> {
    Ok(Enumerator::new(space, s, t)?.solutions())
}

pub fn count_orthogonal(space: &DesignSpace, s: usize, t: usize) -> Result<usize> {
    Ok(Enumerator::new(space, s, t)?.count())
}
