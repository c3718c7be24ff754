//! Sparse multivariate polynomials over the rationals.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::string::String;
use core::fmt::{self, Write as _};
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::rational::{self, Rational};
use crate::space::Exponents;

/// A polynomial in `n` variables, stored as a map from exponent vector to a
/// nonzero coefficient. All exponent vectors have length `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exponents, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(Exponents::zero(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn monomial(exponents: Exponents, c: Rational) -> Self {
        let mut p = Poly::zero(exponents.len());
        p.add_term(exponents, c);
        p
    }

    /// The variable `x_{j+1}`.
    pub fn var(nvars: usize, j: usize) -> Self {
        Self::monomial(Exponents::unit(nvars, j), Rational::one())
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponents, Rational)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in graded order, constant first.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, a: &Exponents) -> Rational {
        self.terms.get(a).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `c * x^e`, dropping the term if it cancels.
    pub fn add_term(&mut self, e: Exponents, c: Rational) {
        debug_assert_eq!(e.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        debug_assert_eq!(point.len(), self.nvars);
        self.terms.iter().fold(Rational::zero(), |acc, (e, c)| {
            let m = e.0.iter().zip(point).fold(Rational::one(), |m, (&a, x)| m * rational::pow(x, a));
            acc + c * m
        })
    }

    /// Formats with the given variable names, e.g. `1/2 - 1/2*x1*x2 + x3^2`.
    pub fn format_with(&self, names: &[&str]) -> String {
        let mut out = String::new();
        if self.is_zero() {
            out.push('0');
            return out;
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let mono = monomial_text(e, names);
            write_signed_term(&mut out, k == 0, c, mono.as_deref());
        }
        out
    }
}

fn monomial_text(e: &Exponents, names: &[&str]) -> Option<String> {
    let mut s = String::new();
    for (j, &a) in e.0.iter().enumerate() {
        if a == 0 {
            continue;
        }
        if !s.is_empty() {
            s.push('*');
        }
        s.push_str(names[j]);
        if a > 1 {
            let _ = write!(s, "^{}", a);
        }
    }
    if s.is_empty() {
        None
    } else {
        Some(s)
    }
}

/// Appends ` + c*m` / ` - c*m` (or the leading form) to `out`, omitting a
/// unit coefficient when a monomial is present.
pub(crate) fn write_signed_term(out: &mut String, first: bool, c: &Rational, mono: Option<&str>) {
    let negative = c.is_negative();
    let magnitude = c.abs();
    match (first, negative) {
        (true, true) => out.push('-'),
        (true, false) => {}
        (false, true) => out.push_str(" - "),
        (false, false) => out.push_str(" + "),
    }
    match mono {
        None => out.push_str(&rational::format(&magnitude)),
        Some(m) if magnitude.is_one() => out.push_str(m),
        Some(m) => {
            let _ = write!(out, "{}*{}", magnitude, m);
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: alloc::vec::Vec<String> = (1..=self.nvars).map(|j| alloc::format!("x{}", j)).collect();
        let refs: alloc::vec::Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.format_with(&refs))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea.add(eb), ca * cb);
            }
        }
        out
    }
}
