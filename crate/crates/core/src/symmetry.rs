//! The group generated by level permutations within each factor and by
//! permutations of factors with the same number of levels, acting on runs,
//! fractions, indicator coefficients and contrast coordinates.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::contrast::contrast_matrix;
use crate::matrix::{solve_exact, ExactMatrix};
use crate::rational::Rational;
use crate::space::{DesignSpace, Fraction, RunIndex};
use crate::{Error, Result};

/// `(sigma, pi_1, ..., pi_n)`: factor `j` moves to position `sigma[j]`, then
/// level `l` of factor `k` becomes `pi[k][l]` (all 0-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    sigma: Vec<usize>,
    pi: Vec<Vec<usize>>,
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = alloc::vec![false; p.len()];
    p.iter().all(|&v| v < p.len() && !core::mem::replace(&mut seen[v], true))
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = alloc::vec![0; p.len()];
    for (i, &v) in p.iter().enumerate() {
        inv[v] = i;
    }
    inv
}

/// All permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

impl GroupElement {
    pub fn new(space: &DesignSpace, sigma: Vec<usize>, pi: Vec<Vec<usize>>) -> Result<Self> {
        let r = space.level_counts();
        if sigma.len() != r.len() || pi.len() != r.len() {
            return Err(Error::InvalidGroupElement("wrong number of factors"));
        }
        if !is_permutation(&sigma) {
            return Err(Error::InvalidGroupElement("factor map is not a permutation"));
        }
        if sigma.iter().enumerate().any(|(j, &k)| r[j] != r[k]) {
            return Err(Error::InvalidGroupElement("factors with different level counts exchanged"));
        }
        if pi.iter().zip(r).any(|(p, &rk)| p.len() != rk || !is_permutation(p)) {
            return Err(Error::InvalidGroupElement("level map is not a permutation"));
        }
        Ok(GroupElement { sigma, pi })
    }

    pub fn identity(space: &DesignSpace) -> Self {
        GroupElement {
            sigma: (0..space.factor_count()).collect(),
            pi: space.level_counts().iter().map(|&r| (0..r).collect()).collect(),
        }
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn pi(&self) -> &[Vec<usize>] {
        &self.pi
    }

    pub fn is_identity(&self) -> bool {
        self.sigma.iter().enumerate().all(|(j, &k)| j == k)
            && self.pi.iter().all(|p| p.iter().enumerate().all(|(l, &v)| l == v))
    }

    /// 0-based level coordinates of the image run.
    pub fn act_on_coords(&self, c: &[usize]) -> Vec<usize> {
        let mut moved = alloc::vec![0; c.len()];
        for (j, &k) in self.sigma.iter().enumerate() {
            moved[k] = c[j];
        }
        moved.iter().enumerate().map(|(k, &l)| self.pi[k][l]).collect()
    }

    pub fn act_on_run(&self, i: &RunIndex) -> RunIndex {
        let c: Vec<usize> = i.0.iter().map(|&v| v - 1).collect();
        RunIndex(self.act_on_coords(&c).into_iter().map(|v| v + 1).collect())
    }

    /// `self * other`, acting as `other` first.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        let sigma = other.sigma.iter().map(|&k| self.sigma[k]).collect();
        let sinv = invert(&self.sigma);
        let pi = (0..self.pi.len()).map(|k| other.pi[sinv[k]].iter().map(|&l| self.pi[k][l]).collect()).collect();
        GroupElement { sigma, pi }
    }

    pub fn inverse(&self) -> GroupElement {
        let sigma = invert(&self.sigma);
        let pi = (0..self.pi.len()).map(|k| invert(&self.pi[self.sigma[k]])).collect();
        GroupElement { sigma, pi }
    }

    /// `perm[i]` is the flat index of `g . i`.
    pub fn run_permutation(&self, space: &DesignSpace) -> Vec<usize> {
        (0..space.run_count()).map(|flat| space.flat_of_coords(&self.act_on_coords(&space.coords(flat)))).collect()
    }

    /// `P_g` with `P[g.i][i] = 1`.
    pub fn permutation_matrix(&self, space: &DesignSpace) -> ExactMatrix {
        let m = space.run_count();
        let mut p = ExactMatrix::zeros(m, m);
        for (i, gi) in self.run_permutation(space).into_iter().enumerate() {
            p.set(gi, i, Rational::from_integer(1.into()));
        }
        p
    }

    pub fn apply(&self, space: &DesignSpace, fraction: &Fraction) -> Fraction {
        permute_bits(&self.run_permutation(space), fraction)
    }

    /// `X^{-1} P_g X theta`, with `theta` in exponent order.
    pub fn theta_transform(&self, space: &DesignSpace, theta: &[Rational]) -> Result<Vec<Rational>> {
        let x = space.model_matrix();
        let y = x.mul_vec(theta)?;
        let moved = permute_values(&self.run_permutation(space), &y);
        solve_exact(&x, &moved)
    }

    /// `C P_g C^{-1} mu`, with `mu` in contrast-row order.
    pub fn mu_transform(&self, space: &DesignSpace, mu: &[Rational]) -> Result<Vec<Rational>> {
        let c = contrast_matrix(space);
        let y = solve_exact(&c.matrix(), mu)?;
        let moved = permute_values(&self.run_permutation(space), &y);
        c.apply(&moved)
    }
}

fn permute_bits(perm: &[usize], fraction: &Fraction) -> Fraction {
    let mut y = alloc::vec![false; perm.len()];
    for (i, &b) in fraction.bits().iter().enumerate() {
        y[perm[i]] = b;
    }
    Fraction::from_bits(y)
}

fn permute_values(perm: &[usize], v: &[Rational]) -> Vec<Rational> {
    let mut out = v.to_vec();
    for (i, x) in v.iter().enumerate() {
        out[perm[i]] = x.clone();
    }
    out
}

/// `1 - y`.
pub fn complement(fraction: &Fraction) -> Fraction {
    Fraction::from_bits(fraction.bits().iter().map(|b| !b).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    /// The canonical form shared by every member.
    pub representative: Fraction,
    /// Members in ascending order.
    pub members: Vec<Fraction>,
}

impl Orbit {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

#[derive(Debug, Clone)]
pub struct SymmetryGroup {
    space: DesignSpace,
    elements: Vec<GroupElement>,
    run_perms: Vec<Vec<usize>>,
}

impl SymmetryGroup {
    /// Every element, identity first.
    pub fn new(space: &DesignSpace) -> Self {
        let r = space.level_counts();
        let n = r.len();
        let sigmas: Vec<Vec<usize>> =
            permutations(n).into_iter().filter(|s| s.iter().enumerate().all(|(j, &k)| r[j] == r[k])).collect();
        let level_perms: Vec<Vec<Vec<usize>>> = r.iter().map(|&rk| permutations(rk)).collect();
        let mut pis: Vec<Vec<Vec<usize>>> = alloc::vec![Vec::new()];
        for perms in &level_perms {
            pis = pis
                .into_iter()
                .flat_map(|prefix| {
                    perms.iter().map(move |p| {
                        let mut next = prefix.clone();
                        next.push(p.clone());
                        next
                    })
                })
                .collect();
        }
        let elements: Vec<GroupElement> = sigmas
            .iter()
            .flat_map(|s| pis.iter().map(move |pi| GroupElement { sigma: s.clone(), pi: pi.clone() }))
            .collect();
        let run_perms = elements.iter().map(|g| g.run_permutation(space)).collect();
        SymmetryGroup { space: space.clone(), elements, run_perms }
    }

    /// `|G|` without building the group, saturating at `u128::MAX`.
    pub fn order_of(space: &DesignSpace) -> u128 {
        let fact = |k: usize| (1..=k as u128).try_fold(1u128, |acc, v| acc.checked_mul(v));
        let r = space.level_counts();
        let mut blocks: BTreeMap<usize, usize> = BTreeMap::new();
        for &rk in r {
            *blocks.entry(rk).or_default() += 1;
        }
        let levels = r.iter().try_fold(1u128, |acc, &rk| fact(rk).and_then(|f| acc.checked_mul(f)));
        let factors = blocks.values().try_fold(1u128, |acc, &c| fact(c).and_then(|f| acc.checked_mul(f)));
        levels.zip(factors).and_then(|(a, b)| a.checked_mul(b)).unwrap_or(u128::MAX)
    }

    pub fn space(&self) -> &DesignSpace {
        &self.space
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn run_permutations(&self) -> &[Vec<usize>] {
        &self.run_perms
    }

    /// The lexicographically smallest `y` in the orbit of `fraction`.
    pub fn canonical_form(&self, fraction: &Fraction) -> Fraction {
        let bits = fraction.bits();
        let mut best = bits.to_vec();
        let mut cand = alloc::vec![false; bits.len()];
        for perm in &self.run_perms {
            for (i, &b) in bits.iter().enumerate() {
                cand[perm[i]] = b;
            }
            if cand < best {
                best.copy_from_slice(&cand);
            }
        }
        Fraction::from_bits(best)
    }

    pub fn is_canonical(&self, fraction: &Fraction) -> bool {
        self.canonical_form(fraction) == *fraction
    }

    /// The full orbit, ascending.
    pub fn orbit(&self, fraction: &Fraction) -> Vec<Fraction> {
        let mut out: Vec<Fraction> = self.run_perms.iter().map(|p| permute_bits(p, fraction)).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Partitions `fractions` by orbit, sorted by orbit size and then by
    /// representative.
    pub fn classify(&self, fractions: &[Fraction]) -> Result<Vec<Orbit>> {
        let mut by_form: BTreeMap<Fraction, Vec<Fraction>> = BTreeMap::new();
        for f in fractions {
            by_form.entry(self.canonical_form(f)).or_default().push(f.clone());
        }
        let mut orbits: Vec<Orbit> = Vec::with_capacity(by_form.len());
        for (representative, mut members) in by_form {
            let before = members.len();
            members.sort();
            members.dedup();
            if members.len() != before {
                return Err(Error::DuplicateFraction);
            }
            orbits.push(Orbit { representative, members });
        }
        orbits.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| a.representative.cmp(&b.representative)));
        Ok(orbits)
    }
}
