//! Contrast matrices, contrast representations and orthogonality strength.
//!
//! Rows of the contrast matrix are labelled `J(i~)`: a factor subset `J` and
//! a tuple `i~` with `i~_j in 1..r_j`. The row is `+1` on runs whose
//! restriction to `J` is `(i~_1, ..., i~_{k-1}, 1)`, `-1` on runs whose
//! restriction is `(i~_1, ..., i~_{k-1}, i~_k + 1)`, and zero elsewhere. The
//! constant row (`J` empty) is all ones. Rows are ordered by `|J|`, then by
//! `J` lexicographically, then by `i~` lexicographically.
//!
//! `C y = 0` on every stratum `|J| <= t` is equivalent to every `J`-marginal
//! with `|J| <= t` being uniform, which is what strength `t` means.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Write as _};

use num_integer::Integer;
use num_traits::Zero;

use crate::matrix::ExactMatrix;
use crate::poly::{self, Poly};
use crate::rational::{self, Rational};
use crate::space::{mixed_radix, DesignSpace, Fraction};
use crate::{Error, Result};

/// Row label `J(i~)`. `factors` holds zero-based factor positions in
/// increasing order; `itilde` holds 1-based level indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ContrastLabel {
    pub factors: Vec<usize>,
    pub itilde: Vec<usize>,
}

impl ContrastLabel {
    pub fn constant() -> Self {
        ContrastLabel { factors: Vec::new(), itilde: Vec::new() }
    }

    pub fn is_constant(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn order(&self) -> usize {
        self.factors.len()
    }
}

/// `123(112)`; the constant label prints as `Const.`.
impl fmt::Display for ContrastLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_constant() {
            return f.write_str("Const.");
        }
        for &j in &self.factors {
            write!(f, "{}", j + 1)?;
        }
        f.write_char('(')?;
        for &i in &self.itilde {
            write!(f, "{}", i)?;
        }
        f.write_char(')')
    }
}

/// All subsets of `0..n` with `k` elements, in lexicographic order.
pub fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for j in start..n {
            if n - j < k - cur.len() {
                break;
            }
            cur.push(j);
            rec(j + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// The m x m contrast matrix with its row labels. Entries are stored as
/// signs; [`ContrastMatrix::matrix`] gives the exact form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContrastMatrix {
    labels: Vec<ContrastLabel>,
    strata: Vec<usize>,
    signs: Vec<i8>,
    size: usize,
}

pub fn contrast_matrix(space: &DesignSpace) -> ContrastMatrix {
    let n = space.factor_count();
    let m = space.run_count();
    let radices = space.level_counts();
    let mut labels = vec![ContrastLabel::constant()];
    let mut strata = vec![1];
    for k in 1..=n {
        let mut count = 0;
        for subset in subsets_of_size(n, k) {
            let reduced: Vec<usize> = subset.iter().map(|&j| radices[j] - 1).collect();
            let cells: usize = reduced.iter().product();
            for flat in 0..cells {
                let itilde = mixed_radix(&reduced, flat).into_iter().map(|c| c + 1).collect();
                labels.push(ContrastLabel { factors: subset.clone(), itilde });
                count += 1;
            }
        }
        strata.push(count);
    }
    let mut signs = vec![0i8; m * m];
    let coords: Vec<Vec<usize>> = (0..m).map(|f| space.coords(f)).collect();
    for (row, label) in labels.iter().enumerate() {
        let out = &mut signs[row * m..(row + 1) * m];
        if label.is_constant() {
            out.fill(1);
            continue;
        }
        let k = label.order();
        for (run, c) in coords.iter().enumerate() {
            let prefix_matches = (0..k - 1).all(|p| c[label.factors[p]] + 1 == label.itilde[p]);
            if !prefix_matches {
                continue;
            }
            let last = c[label.factors[k - 1]] + 1;
            if last == 1 {
                out[run] = 1;
            } else if last == label.itilde[k - 1] + 1 {
                out[run] = -1;
            }
        }
    }
    ContrastMatrix { labels, strata, signs, size: m }
}

impl ContrastMatrix {
    pub fn labels(&self) -> &[ContrastLabel] {
        &self.labels
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Row counts per stratum: `[1, v_1, ..., v_n]`.
    pub fn stratum_sizes(&self) -> &[usize] {
        &self.strata
    }

    pub fn sign(&self, row: usize, run: usize) -> i8 {
        self.signs[row * self.size + run]
    }

    pub fn row_signs(&self, row: usize) -> &[i8] {
        &self.signs[row * self.size..(row + 1) * self.size]
    }

    pub fn matrix(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.size, self.size, |i, j| rational::int(self.sign(i, j) as i64))
    }

    /// `C y` over the integers for a 0/1 response.
    pub fn apply_to_fraction(&self, fraction: &Fraction) -> Vec<i64> {
        (0..self.size).map(|row| fraction.selected().map(|run| self.sign(row, run) as i64).sum()).collect()
    }

    pub fn apply(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.size {
            return Err(Error::DimensionMismatch { expected: self.size, found: v.len() });
        }
        Ok((0..self.size)
            .map(|row| {
                self.row_signs(row).iter().zip(v).fold(Rational::zero(), |acc, (&s, x)| match s {
                    1 => acc + x,
                    -1 => acc - x,
                    _ => acc,
                })
            })
            .collect())
    }

    /// True iff every row with `1 <= |J| <= t` annihilates `y`.
    pub fn check_strength(&self, fraction: &Fraction, t: usize) -> bool {
        self.labels.iter().enumerate().all(|(row, label)| {
            label.is_constant()
                || label.order() > t
                || fraction.selected().map(|run| self.sign(row, run) as i64).sum::<i64>() == 0
        })
    }
}

/// Coefficients of an indicator in the contrast basis, in row order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContrastRep {
    entries: Vec<(ContrastLabel, Rational)>,
}

impl ContrastRep {
    pub fn new(labels: &[ContrastLabel], values: Vec<Rational>) -> Result<Self> {
        if labels.len() != values.len() {
            return Err(Error::DimensionMismatch { expected: labels.len(), found: values.len() });
        }
        Ok(ContrastRep { entries: labels.iter().cloned().zip(values).collect() })
    }

    /// `mu_empty`, the fraction size for a 0/1 response.
    pub fn constant(&self) -> &Rational {
        &self.entries[0].1
    }

    pub fn entries(&self) -> &[(ContrastLabel, Rational)] {
        &self.entries
    }

    pub fn values(&self) -> Vec<Rational> {
        self.entries.iter().map(|(_, v)| v.clone()).collect()
    }

    pub fn get(&self, label: &ContrastLabel) -> Option<&Rational> {
        self.entries.iter().find(|(l, _)| l == label).map(|(_, v)| v)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = &(ContrastLabel, Rational)> {
        self.entries.iter().filter(|(_, v)| !v.is_zero())
    }

    /// `sum mu_label * z_label` expanded in the monomial basis.
    pub fn expand(&self, z: &[(ContrastLabel, Poly)]) -> Result<Poly> {
        if z.len() != self.entries.len() {
            return Err(Error::DimensionMismatch { expected: self.entries.len(), found: z.len() });
        }
        let nvars = z.first().map_or(0, |(_, p)| p.nvars());
        let mut acc = Poly::zero(nvars);
        for ((label, mu), (zl, zp)) in self.entries.iter().zip(z) {
            debug_assert_eq!(label, zl);
            if !mu.is_zero() {
                acc = &acc + &zp.scale(mu);
            }
        }
        Ok(acc)
    }

    /// `f(z) = 6 + 2*z{2(1)} + z{12(11)} - ...`, nonzero terms only.
    pub fn format_z(&self) -> String {
        let mut out = String::from("f(z) = ");
        let mut first = true;
        for (label, v) in &self.entries {
            if v.is_zero() {
                continue;
            }
            let name = if label.is_constant() { None } else { Some(alloc::format!("z{{{}}}", label)) };
            poly::write_signed_term(&mut out, first, v, name.as_deref());
            first = false;
        }
        if first {
            out.push('0');
        }
        out
    }
}

/// `mu = C y`.
pub fn contrast_rep(space: &DesignSpace, fraction: &Fraction) -> ContrastRep {
    let c = contrast_matrix(space);
    let values: Vec<Rational> = c.apply_to_fraction(fraction).into_iter().map(rational::int).collect();
    ContrastRep { entries: c.labels.iter().cloned().zip(values).collect() }
}

/// `mu = C X theta` for coefficients keyed by exponent vector.
pub fn contrast_rep_from_theta(space: &DesignSpace, theta: &Poly) -> Result<ContrastRep> {
    if theta.nvars() != space.factor_count() {
        return Err(Error::WrongArity { expected: space.factor_count(), found: theta.nvars() });
    }
    if let Some((e, _)) = theta.terms().find(|(e, _)| !space.contains_exponent(e)) {
        return Err(Error::SupportOutsideDesign { exponents: alloc::format!("{}", e) });
    }
    let values: Vec<Rational> = (0..space.run_count())
        .map(|flat| theta.terms().fold(Rational::zero(), |acc, (a, c)| acc + c * space.monomial_value(flat, a)))
        .collect();
    let c = contrast_matrix(space);
    let mu = c.apply(&values)?;
    ContrastRep::new(&c.labels, mu)
}

/// `z = ((C X)^{-1})^T x`, one polynomial per contrast label in row order.
pub fn z_basis(space: &DesignSpace) -> Result<Vec<(ContrastLabel, Poly)>> {
    let c = contrast_matrix(space);
    let cx = c.matrix().mul(&space.model_matrix())?;
    let inv = cx.inverse()?;
    let n = space.factor_count();
    Ok(c.labels
        .iter()
        .enumerate()
        .map(|(row, label)| {
            let p = Poly::from_terms(
                n,
                space.exponents().iter().enumerate().map(|(k, a)| (a.clone(), inv.get(k, row).clone())),
            );
            (label.clone(), p)
        })
        .collect())
}

/// Counts of selected runs per level combination of `factors`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarginalTable {
    /// Zero-based factor positions, increasing.
    pub factors: Vec<usize>,
    /// Cell counts, cells ordered lexicographically over the restricted
    /// index set (first listed factor most significant).
    pub counts: Vec<usize>,
}

impl MarginalTable {
    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn is_uniform(&self) -> bool {
        self.counts.windows(2).all(|w| w[0] == w[1])
    }
}

pub fn marginal(space: &DesignSpace, fraction: &Fraction, factors: &[usize]) -> MarginalTable {
    let radices = space.level_counts();
    let cells = space.subset_run_count(factors);
    let mut counts = vec![0usize; cells];
    for run in fraction.selected() {
        let c = space.coords(run);
        let cell = factors.iter().fold(0, |acc, &j| acc * radices[j] + c[j]);
        counts[cell] += 1;
    }
    MarginalTable { factors: factors.to_vec(), counts }
}

fn check_t(space: &DesignSpace, t: usize) -> Result<()> {
    if t > space.factor_count() {
        return Err(Error::InvalidStrength { strength: t, factors: space.factor_count() });
    }
    Ok(())
}

/// Strength test through contrasts: `C_k y = 0` for `k = 1..=t`.
pub fn check_strength_contrast(space: &DesignSpace, fraction: &Fraction, t: usize) -> Result<bool> {
    check_t(space, t)?;
    Ok(contrast_matrix(space).check_strength(fraction, t))
}

/// Strength test through marginals: every `J`-marginal with `|J| <= t`
/// equals `s / m_J` in every cell.
pub fn check_strength_marginal(space: &DesignSpace, fraction: &Fraction, t: usize) -> Result<bool> {
    check_t(space, t)?;
    let s = fraction.size();
    for k in 1..=t {
        for subset in subsets_of_size(space.factor_count(), k) {
            let mj = space.subset_run_count(&subset);
            if !s.is_multiple_of(mj) {
                return Ok(false);
            }
            let target = s / mj;
            if marginal(space, fraction, &subset).counts.iter().any(|&c| c != target) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Largest `t` with `check_strength_contrast(fraction, t)`.
pub fn strength(space: &DesignSpace, fraction: &Fraction) -> usize {
    let c = contrast_matrix(space);
    (1..=space.factor_count()).take_while(|&t| c.check_strength(fraction, t)).last().unwrap_or(0)
}

/// Sizes in `1..=m` that are multiples of every `m_J` with `|J| = t`.
pub fn compatible_sizes(space: &DesignSpace, t: usize) -> Result<Vec<usize>> {
    check_t(space, t)?;
    let lcm = subsets_of_size(space.factor_count(), t)
        .iter()
        .map(|j| space.subset_run_count(j))
        .fold(1usize, |acc, mj| acc.lcm(&mj));
    Ok((1..=space.run_count()).filter(|s| s % lcm == 0).collect())
}

/// `true` iff `s` is a size at which strength `t` is possible.
pub fn is_compatible_size(space: &DesignSpace, s: usize, t: usize) -> Result<bool> {
    Ok(compatible_sizes(space, t)?.contains(&s))
}
