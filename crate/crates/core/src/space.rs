//! Full factorial design spaces, their run and exponent index sets, and
//! fractions encoded as 0/1 responses.
//!
//! Runs are ordered lexicographically with the first factor most significant
//! (`111, 112, 113, 121, ...` for a 2x2x3 space). Exponent vectors are ordered
//! by total degree, then with larger exponents on earlier factors first; the
//! all-zero vector always comes first. Coefficient data is keyed by
//! [`Exponents`], so this order only affects presentation.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{One, Zero};

use crate::matrix::ExactMatrix;
use crate::rational::{self, Rational};
use crate::{Error, Result};

/// The ordered level set of one factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSpec {
    levels: Vec<Rational>,
}

impl FactorSpec {
    /// Validates that there are at least two levels and that they are
    /// pairwise distinct. `factor` is only used in error messages.
    pub fn new(levels: Vec<Rational>) -> Result<Self> {
        Self::checked(levels, 0)
    }

    fn checked(levels: Vec<Rational>, factor: usize) -> Result<Self> {
        if levels.len() < 2 {
            return Err(Error::TooFewLevels { factor, count: levels.len() });
        }
        for (i, a) in levels.iter().enumerate() {
            if levels[..i].contains(a) {
                return Err(Error::DuplicateLevel { factor, level: rational::format(a) });
            }
        }
        Ok(FactorSpec { levels })
    }

    /// Default coding for `r` levels: consecutive integers centred on zero
    /// for odd `r` (`-1,0,1`), odd integers centred on zero for even `r`
    /// (`-1,1` and `-3,-1,1,3`).
    pub fn with_default_coding(r: usize) -> Result<Self> {
        if r < 2 {
            return Err(Error::TooFewLevels { factor: 0, count: r });
        }
        let r = r as i64;
        let levels = if r % 2 == 1 {
            (-(r / 2)..=r / 2).map(rational::int).collect()
        } else {
            (0..r).map(|k| rational::int(2 * k - (r - 1))).collect()
        };
        Ok(FactorSpec { levels })
    }

    pub fn levels(&self) -> &[Rational] {
        &self.levels
    }

    pub fn level_count(&self) -> usize {
        self.levels.len()
    }

    /// Zero-based position of `value` in the level list.
    pub fn position(&self, value: &Rational) -> Option<usize> {
        self.levels.iter().position(|l| l == value)
    }
}

/// A run index `(i_1, ..., i_n)` with 1-based coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RunIndex(pub Vec<usize>);

impl fmt::Display for RunIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_digits(f, self.0.iter().map(|&v| v as u64))
    }
}

/// An exponent vector `(a_1, ..., a_n)`.
///
/// Ordered by total degree, then by descending lexicographic comparison, so
/// `000 < 100 < 010 < 001 < 200 < 110 < ...`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Exponents(pub Vec<u32>);

impl Exponents {
    pub fn zero(n: usize) -> Self {
        Exponents(alloc::vec![0; n])
    }

    pub fn unit(n: usize, j: usize) -> Self {
        let mut e = Self::zero(n);
        e.0[j] = 1;
        e
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&a| a as u64).sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn add(&self, other: &Exponents) -> Exponents {
        debug_assert_eq!(self.len(), other.len());
        Exponents(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Concatenated single digits (`"110"`), or `None` if some exponent
    /// exceeds 9.
    pub fn digits(&self) -> Option<String> {
        if self.0.iter().any(|&a| a > 9) {
            return None;
        }
        Some(self.0.iter().map(|&a| char::from(b'0' + a as u8)).collect())
    }
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Exponents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_digits(f, self.0.iter().map(|&v| v as u64))
    }
}

fn write_digits(f: &mut fmt::Formatter<'_>, values: impl Iterator<Item = u64> + Clone) -> fmt::Result {
    if values.clone().all(|v| v <= 9) {
        for v in values {
            write!(f, "{}", v)?;
        }
        Ok(())
    } else {
        write!(f, "(")?;
        for (k, v) in values.enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v)?;
        }
        write!(f, ")")
    }
}

/// A full factorial design `D = A_1 x ... x A_n` with its index sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesignSpace {
    factors: Vec<FactorSpec>,
    radices: Vec<usize>,
    size: usize,
    exponents: Vec<Exponents>,
    exponent_pos: BTreeMap<Exponents, usize>,
}

impl DesignSpace {
    pub fn new(factors: Vec<FactorSpec>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::EmptyFactorList);
        }
        let factors = factors
            .into_iter()
            .enumerate()
            .map(|(j, f)| FactorSpec::checked(f.levels, j))
            .collect::<Result<Vec<_>>>()?;
        let radices: Vec<usize> = factors.iter().map(FactorSpec::level_count).collect();
        let size = radices.iter().product();
        let mut exponents: Vec<Exponents> = (0..size)
            .map(|flat| Exponents(mixed_radix(&radices, flat).into_iter().map(|c| c as u32).collect()))
            .collect();
        exponents.sort();
        let exponent_pos = exponents.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        Ok(DesignSpace { factors, radices, size, exponents, exponent_pos })
    }

    /// Builds a space from level counts using [`FactorSpec::with_default_coding`].
    pub fn from_level_counts(counts: &[usize]) -> Result<Self> {
        let factors = counts
            .iter()
            .enumerate()
            .map(|(j, &r)| FactorSpec::with_default_coding(r).map_err(|_| Error::TooFewLevels { factor: j, count: r }))
            .collect::<Result<Vec<_>>>()?;
        Self::new(factors)
    }

    pub fn from_levels(levels: Vec<Vec<Rational>>) -> Result<Self> {
        Self::new(levels.into_iter().map(|levels| FactorSpec { levels }).collect())
    }

    /// Number of factors `n`.
    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }

    /// Number of runs `m`, which equals the number of standard monomials.
    pub fn run_count(&self) -> usize {
        self.size
    }

    pub fn factors(&self) -> &[FactorSpec] {
        &self.factors
    }

    pub fn level_counts(&self) -> &[usize] {
        &self.radices
    }

    /// Standard exponent vectors in presentation order.
    pub fn exponents(&self) -> &[Exponents] {
        &self.exponents
    }

    pub fn exponent_position(&self, a: &Exponents) -> Option<usize> {
        self.exponent_pos.get(a).copied()
    }

    pub fn contains_exponent(&self, a: &Exponents) -> bool {
        a.len() == self.factor_count() && a.0.iter().zip(&self.radices).all(|(&e, &r)| (e as usize) < r)
    }

    /// Zero-based level positions of the run at `flat`.
    pub fn coords(&self, flat: usize) -> Vec<usize> {
        mixed_radix(&self.radices, flat)
    }

    pub fn flat_of_coords(&self, coords: &[usize]) -> usize {
        coords.iter().zip(&self.radices).fold(0, |acc, (&c, &r)| acc * r + c)
    }

    pub fn run_index(&self, flat: usize) -> RunIndex {
        RunIndex(self.coords(flat).into_iter().map(|c| c + 1).collect())
    }

    pub fn flat_index(&self, i: &RunIndex) -> Result<usize> {
        if i.0.len() != self.factor_count() {
            return Err(Error::WrongArity { expected: self.factor_count(), found: i.0.len() });
        }
        for (j, (&v, &r)) in i.0.iter().zip(&self.radices).enumerate() {
            if v < 1 || v > r {
                return Err(Error::IndexOutOfRange { factor: j, index: v, levels: r });
            }
        }
        Ok(i.0.iter().zip(&self.radices).fold(0, |acc, (&v, &r)| acc * r + (v - 1)))
    }

    pub fn runs(&self) -> impl Iterator<Item = RunIndex> + '_ {
        (0..self.size).map(|flat| self.run_index(flat))
    }

    /// The design point `d_i = (A_1[i_1], ..., A_n[i_n])`.
    pub fn point_of(&self, i: &RunIndex) -> Result<Vec<Rational>> {
        let flat = self.flat_index(i)?;
        Ok(self.point_at(flat))
    }

    pub fn point_at(&self, flat: usize) -> Vec<Rational> {
        self.coords(flat).into_iter().zip(&self.factors).map(|(c, f)| f.levels[c].clone()).collect()
    }

    /// `d_i^a` for the run at `flat`.
    pub fn monomial_value(&self, flat: usize, a: &Exponents) -> Rational {
        self.coords(flat)
            .into_iter()
            .zip(&self.factors)
            .zip(&a.0)
            .fold(Rational::one(), |acc, ((c, f), &e)| acc * rational::pow(&f.levels[c], e))
    }

    /// The m x m model matrix `X = [d_i^a]`, rows in run order and columns in
    /// exponent order.
    pub fn model_matrix(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.size, self.size, |i, k| self.monomial_value(i, &self.exponents[k]))
    }

    /// Locates each point among the runs.
    pub fn fraction_from_points(&self, points: &[Vec<Rational>]) -> Result<Fraction> {
        let mut y = alloc::vec![false; self.size];
        for p in points {
            if p.len() != self.factor_count() {
                return Err(Error::WrongArity { expected: self.factor_count(), found: p.len() });
            }
            let mut coords = Vec::with_capacity(p.len());
            for (j, (v, f)) in p.iter().zip(&self.factors).enumerate() {
                let c = f.position(v).ok_or_else(|| Error::UnknownLevel { factor: j, level: rational::format(v) })?;
                coords.push(c);
            }
            let flat = self.flat_of_coords(&coords);
            if y[flat] {
                return Err(Error::DuplicatePoint { point: format_point(p) });
            }
            y[flat] = true;
        }
        Ok(Fraction { y })
    }

    /// The design points of `fraction`, in run order.
    pub fn points_of(&self, fraction: &Fraction) -> Vec<Vec<Rational>> {
        fraction.selected().map(|flat| self.point_at(flat)).collect()
    }

    pub fn full_fraction(&self) -> Fraction {
        Fraction { y: alloc::vec![true; self.size] }
    }

    pub fn empty_fraction(&self) -> Fraction {
        Fraction { y: alloc::vec![false; self.size] }
    }

    /// `m_J = prod_{j in J} r_j`.
    pub fn subset_run_count(&self, factors: &[usize]) -> usize {
        factors.iter().map(|&j| self.radices[j]).product()
    }
}

fn format_point(p: &[Rational]) -> String {
    let parts: Vec<String> = p.iter().map(rational::format).collect();
    format!("({})", parts.join(","))
}

/// Digits of `flat` in the mixed radix `radices`, most significant first.
pub(crate) fn mixed_radix(radices: &[usize], mut flat: usize) -> Vec<usize> {
    let mut out = alloc::vec![0; radices.len()];
    for (slot, &r) in out.iter_mut().zip(radices).rev() {
        *slot = flat % r;
        flat /= r;
    }
    out
}

/// A subset of the runs, as a 0/1 response in run order. Compares
/// lexicographically with `0 < 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fraction {
    y: Vec<bool>,
}

impl Fraction {
    pub fn new(space: &DesignSpace, y: Vec<bool>) -> Result<Self> {
        if y.len() != space.run_count() {
            return Err(Error::DimensionMismatch { expected: space.run_count(), found: y.len() });
        }
        Ok(Fraction { y })
    }

    pub fn from_runs(space: &DesignSpace, runs: &[RunIndex]) -> Result<Self> {
        let mut y = alloc::vec![false; space.run_count()];
        for i in runs {
            let flat = space.flat_index(i)?;
            if y[flat] {
                return Err(Error::DuplicatePoint { point: format!("{}", i) });
            }
            y[flat] = true;
        }
        Ok(Fraction { y })
    }

    pub(crate) fn from_bits(y: Vec<bool>) -> Self {
        Fraction { y }
    }

    pub fn bits(&self) -> &[bool] {
        &self.y
    }

    pub fn contains(&self, flat: usize) -> bool {
        self.y[flat]
    }

    /// Number of selected runs `s`.
    pub fn size(&self) -> usize {
        self.y.iter().filter(|&&b| b).count()
    }

    /// Flat indices of the selected runs.
    pub fn selected(&self) -> impl Iterator<Item = usize> + '_ {
        self.y.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    /// The response as a rational vector.
    pub fn response(&self) -> Vec<Rational> {
        self.y.iter().map(|&b| if b { Rational::one() } else { Rational::zero() }).collect()
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.y {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use alloc::vec;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    pub(crate) fn space_223() -> DesignSpace {
        DesignSpace::from_levels(vec![ints(&[-1, 1]), ints(&[-1, 1]), ints(&[-1, 0, 1])]).unwrap()
    }

    #[test]
    fn build_space_sizes() {
        let one = DesignSpace::from_levels(vec![ints(&[-1, 1])]).unwrap();
        assert_eq!(one.run_count(), 2);
        assert_eq!(one.runs().collect::<Vec<_>>(), vec![RunIndex(vec![1]), RunIndex(vec![2])]);
        let s = space_223();
        assert_eq!(s.run_count(), 12);
        assert_eq!(s.level_counts(), &[2, 2, 3]);
        assert_eq!(DesignSpace::from_level_counts(&[2, 2, 2, 2, 3]).unwrap().run_count(), 48);
    }

    #[test]
    fn build_space_errors() {
        assert_eq!(DesignSpace::new(vec![]), Err(Error::EmptyFactorList));
        assert!(matches!(
            DesignSpace::from_levels(vec![ints(&[-1, 1]), ints(&[1, 1])]),
            Err(Error::DuplicateLevel { factor: 1, .. })
        ));
        assert!(matches!(DesignSpace::from_levels(vec![ints(&[0])]), Err(Error::TooFewLevels { factor: 0, count: 1 })));
    }

    #[test]
    fn default_codings() {
        let lv = |r| FactorSpec::with_default_coding(r).unwrap().levels().to_vec();
        assert_eq!(lv(2), ints(&[-1, 1]));
        assert_eq!(lv(3), ints(&[-1, 0, 1]));
        assert_eq!(lv(4), ints(&[-3, -1, 1, 3]));
        assert_eq!(lv(5), ints(&[-2, -1, 0, 1, 2]));
    }

    #[test]
    fn run_order_matches_lexicographic_listing() {
        let s = space_223();
        let labels: Vec<String> = s.runs().map(|i| format!("{}", i)).collect();
        assert_eq!(labels, ["111", "112", "113", "121", "122", "123", "211", "212", "213", "221", "222", "223"]);
    }

    #[test]
    fn exponent_order_starts_at_zero_and_is_graded() {
        let s = space_223();
        let labels: Vec<String> = s.exponents().iter().map(|a| format!("{}", a)).collect();
        assert_eq!(labels, ["000", "100", "010", "001", "110", "101", "011", "002", "111", "102", "012", "112"]);
    }

    #[test]
    fn point_of_examples() {
        let s = space_223();
        assert_eq!(s.point_of(&RunIndex(vec![1, 1, 2])).unwrap(), ints(&[-1, -1, 0]));
        assert_eq!(s.point_of(&RunIndex(vec![2, 2, 3])).unwrap(), ints(&[1, 1, 1]));
        let one = DesignSpace::from_levels(vec![ints(&[-1, 1])]).unwrap();
        assert_eq!(one.point_of(&RunIndex(vec![1])).unwrap(), ints(&[-1]));
        assert!(matches!(
            s.point_of(&RunIndex(vec![1, 3, 1])),
            Err(Error::IndexOutOfRange { factor: 1, index: 3, levels: 2 })
        ));
        assert!(s.point_of(&RunIndex(vec![0, 1, 1])).is_err());
    }

    #[test]
    fn model_matrix_entries() {
        let s = space_223();
        let x = s.model_matrix();
        let col = |e: &[u32]| s.exponent_position(&Exponents(e.to_vec())).unwrap();
        let row = |i: &[usize]| s.flat_index(&RunIndex(i.to_vec())).unwrap();
        for r in 0..12 {
            assert_eq!(x.get(r, col(&[0, 0, 0])), &int(1));
        }
        assert_eq!(x.get(row(&[1, 1, 2]), col(&[1, 1, 0])), &int(1));
        assert_eq!(x.get(row(&[1, 2, 2]), col(&[0, 1, 2])), &int(0));
        for k in 0..12 {
            assert_eq!(x.get(row(&[2, 2, 3]), k), &int(1));
        }
        assert_ne!(x.determinant().unwrap(), int(0));
    }

    #[test]
    fn fraction_from_points_cases() {
        let s = space_223();
        assert_eq!(s.fraction_from_points(&[]).unwrap(), s.empty_fraction());
        let all: Vec<_> = (0..12).map(|f| s.point_at(f)).collect();
        assert_eq!(s.fraction_from_points(&all).unwrap(), s.full_fraction());
        assert!(matches!(s.fraction_from_points(&[ints(&[-1, 1, 2])]), Err(Error::UnknownLevel { factor: 2, .. })));
        assert!(matches!(s.fraction_from_points(&[ints(&[-1, 1])]), Err(Error::WrongArity { expected: 3, found: 2 })));
        assert!(matches!(
            s.fraction_from_points(&[ints(&[-1, 1, 0]), ints(&[-1, 1, 0])]),
            Err(Error::DuplicatePoint { .. })
        ));
    }
}
