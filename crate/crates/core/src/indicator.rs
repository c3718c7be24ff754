//! Normal forms modulo the design ideal and indicator polynomials.
//!
//! The ideal of the full factorial design is generated by one univariate
//! polynomial per factor, `x_j^{r_j} - g_j = prod_{a in A_j} (x_j - a)`. These
//! generators form a reduced Groebner basis for every monomial order, so the
//! normal form of any polynomial is reached by substituting
//! `x_j^{r_j} -> g_j` until every exponent is below `r_j`.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::matrix::{solve_exact, ExactMatrix};
use crate::poly::Poly;
use crate::rational::{self, Rational};
use crate::space::{DesignSpace, Exponents, Fraction};
use crate::{Error, Result};

/// Per-factor tails `g_j` with `x_j^{r_j} - g_j` vanishing on `A_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorBasis {
    /// `tails[j][k]` is the coefficient of `x_j^k` in `g_j`, `k < r_j`.
    tails: Vec<Vec<Rational>>,
}

impl DivisorBasis {
    pub fn new(space: &DesignSpace) -> Self {
        let tails = space
            .factors()
            .iter()
            .map(|f| {
                // Expand prod (x - a) as ascending coefficients.
                let mut prod = vec![Rational::one()];
                for a in f.levels() {
                    let mut next = vec![Rational::zero(); prod.len() + 1];
                    for (k, c) in prod.iter().enumerate() {
                        next[k + 1] += c;
                        next[k] -= c * a;
                    }
                    prod = next;
                }
                let r = f.level_count();
                prod[..r].iter().map(|c| -c).collect()
            })
            .collect();
        DivisorBasis { tails }
    }

    /// `g_j` as a polynomial in the space's variables.
    pub fn tail(&self, j: usize) -> Poly {
        let n = self.tails.len();
        Poly::from_terms(
            n,
            self.tails[j].iter().enumerate().map(|(k, c)| {
                let mut e = Exponents::zero(n);
                e.0[j] = k as u32;
                (e, c.clone())
            }),
        )
    }

    /// The generator `x_j^{r_j} - g_j`.
    pub fn divisor(&self, j: usize) -> Poly {
        let n = self.tails.len();
        let mut e = Exponents::zero(n);
        e.0[j] = self.tails[j].len() as u32;
        &Poly::monomial(e, Rational::one()) - &self.tail(j)
    }

    /// Normal form of `x_j^e` as ascending coefficients of length `r_j`.
    pub fn reduce_power(&self, j: usize, e: u32) -> Vec<Rational> {
        let tail = &self.tails[j];
        let r = tail.len();
        let mut cur = vec![Rational::zero(); r];
        if (e as usize) < r {
            cur[e as usize] = Rational::one();
            return cur;
        }
        cur[r - 1] = Rational::one();
        for _ in r - 1..e as usize {
            // Multiply by x_j, then fold the x_j^r coefficient back through g_j.
            let top = cur[r - 1].clone();
            for k in (1..r).rev() {
                cur[k] = cur[k - 1].clone();
            }
            cur[0] = Rational::zero();
            if !top.is_zero() {
                for (k, g) in tail.iter().enumerate() {
                    cur[k] += &top * g;
                }
            }
        }
        cur
    }

    /// Normal form of the monomial `x^e`.
    pub fn reduce_monomial(&self, e: &Exponents) -> Poly {
        let n = self.tails.len();
        let mut acc: Vec<(Exponents, Rational)> = vec![(Exponents::zero(n), Rational::one())];
        for (j, &a) in e.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let uni = self.reduce_power(j, a);
            let mut next = Vec::with_capacity(acc.len() * uni.len());
            for (base, c) in &acc {
                for (k, u) in uni.iter().enumerate() {
                    if u.is_zero() {
                        continue;
                    }
                    let mut ex = base.clone();
                    ex.0[j] = k as u32;
                    next.push((ex, c * u));
                }
            }
            acc = next;
        }
        Poly::from_terms(n, acc)
    }

    pub fn reduce(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero(p.nvars());
        for (e, c) in p.terms() {
            if e.0.iter().zip(&self.tails).all(|(&a, t)| (a as usize) < t.len()) {
                out.add_term(e.clone(), c.clone());
            } else {
                for (f, d) in self.reduce_monomial(e).terms() {
                    out.add_term(f.clone(), c * d);
                }
            }
        }
        out
    }
}

/// Normal form of `p` with respect to the design ideal of `space`.
pub fn reduce_mod_design(space: &DesignSpace, p: &Poly) -> Poly {
    DivisorBasis::new(space).reduce(p)
}

/// An indicator candidate supported on the standard monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndicatorPoly {
    poly: Poly,
    verified: bool,
}

impl IndicatorPoly {
    /// Wraps `poly` after checking that its support lies in the standard
    /// monomials. The result is not marked verified.
    pub fn from_poly(space: &DesignSpace, poly: Poly) -> Result<Self> {
        if poly.nvars() != space.factor_count() {
            return Err(Error::WrongArity { expected: space.factor_count(), found: poly.nvars() });
        }
        if let Some((e, _)) = poly.terms().find(|(e, _)| !space.contains_exponent(e)) {
            return Err(Error::SupportOutsideDesign { exponents: alloc::format!("{}", e) });
        }
        Ok(IndicatorPoly { poly, verified: false })
    }

    /// Builds from a coefficient vector aligned with `space.exponents()`.
    pub fn from_theta(space: &DesignSpace, theta: &[Rational]) -> Result<Self> {
        if theta.len() != space.run_count() {
            return Err(Error::DimensionMismatch { expected: space.run_count(), found: theta.len() });
        }
        let poly = Poly::from_terms(space.factor_count(), space.exponents().iter().cloned().zip(theta.iter().cloned()));
        Ok(IndicatorPoly { poly, verified: false })
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn into_poly(self) -> Poly {
        self.poly
    }

    pub fn coefficient(&self, a: &Exponents) -> Rational {
        self.poly.coefficient(a)
    }

    /// Coefficients aligned with `space.exponents()`.
    pub fn theta(&self, space: &DesignSpace) -> Vec<Rational> {
        space.exponents().iter().map(|a| self.poly.coefficient(a)).collect()
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// Checks `f^2 = f` modulo the design ideal and records the result.
    pub fn verify(&mut self, space: &DesignSpace) -> bool {
        self.verified = is_indicator(space, &self.poly);
        self.verified
    }
}

/// Caches `X^{-1}` so many fractions of one space interpolate cheaply.
#[derive(Debug, Clone)]
pub struct Interpolator {
    x_inverse: ExactMatrix,
}

impl Interpolator {
    pub fn new(space: &DesignSpace) -> Result<Self> {
        Ok(Interpolator { x_inverse: space.model_matrix().inverse()? })
    }

    /// `theta = X^{-1} y` for an arbitrary response.
    pub fn coefficients(&self, response: &[Rational]) -> Result<Vec<Rational>> {
        self.x_inverse.mul_vec(response)
    }

    pub fn indicator(&self, space: &DesignSpace, fraction: &Fraction) -> IndicatorPoly {
        let theta = self.coefficients(&fraction.response()).expect("fraction length matches its space");
        let mut f = IndicatorPoly::from_theta(space, &theta).expect("theta has m entries");
        f.verified = true;
        f
    }
}

/// The indicator polynomial of `fraction`, `theta = X^{-1} y`.
pub fn indicator_of(space: &DesignSpace, fraction: &Fraction) -> Result<IndicatorPoly> {
    if fraction.bits().len() != space.run_count() {
        return Err(Error::DimensionMismatch { expected: space.run_count(), found: fraction.bits().len() });
    }
    let theta = solve_exact(&space.model_matrix(), &fraction.response())?;
    let mut f = IndicatorPoly::from_theta(space, &theta)?;
    // 0/1 interpolants are idempotent on D by construction.
    f.verified = true;
    Ok(f)
}

/// Evaluates `p` on every run; fails unless every value is 0 or 1.
pub fn fraction_of_indicator(space: &DesignSpace, p: &Poly) -> Result<Fraction> {
    if p.nvars() != space.factor_count() {
        return Err(Error::WrongArity { expected: space.factor_count(), found: p.nvars() });
    }
    let mut y = Vec::with_capacity(space.run_count());
    for flat in 0..space.run_count() {
        let v = p.evaluate(&space.point_at(flat));
        if v.is_zero() {
            y.push(false);
        } else if v.is_one() {
            y.push(true);
        } else {
            return Err(Error::NotAnIndicator { run: flat, value: rational::format(&v) });
        }
    }
    Fraction::new(space, y)
}

/// True iff `p^2 - p` reduces to zero modulo the design ideal.
pub fn is_indicator(space: &DesignSpace, p: &Poly) -> bool {
    if p.nvars() != space.factor_count() {
        return false;
    }
    let sq = p * p;
    reduce_mod_design(space, &(&sq - p)).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use crate::space::RunIndex;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn e(v: &[u32]) -> Exponents {
        Exponents(v.to_vec())
    }

    fn single(levels: &[i64]) -> DesignSpace {
        DesignSpace::from_levels(vec![ints(levels)]).unwrap()
    }

    #[test]
    fn divisor_tails() {
        assert_eq!(DivisorBasis::new(&single(&[-1, 1])).tail(0), Poly::one(1));
        assert_eq!(DivisorBasis::new(&single(&[-1, 0, 1])).tail(0), Poly::var(1, 0));
        let g = DivisorBasis::new(&single(&[0, 1, 2])).tail(0);
        assert_eq!(g, Poly::from_terms(1, [(e(&[2]), int(3)), (e(&[1]), int(-2))]));
        let d = DivisorBasis::new(&single(&[0, 1, 2])).divisor(0);
        for a in 0..3 {
            assert!(d.evaluate(&[int(a)]).is_zero());
        }
    }

    #[test]
    fn reduction_examples() {
        let two = single(&[-1, 1]);
        assert_eq!(reduce_mod_design(&two, &Poly::monomial(e(&[2]), int(1))), Poly::one(1));
        let three = single(&[-1, 0, 1]);
        let x = Poly::var(1, 0);
        assert_eq!(reduce_mod_design(&three, &Poly::monomial(e(&[3]), int(1))), x);
        assert_eq!(reduce_mod_design(&three, &Poly::monomial(e(&[4]), int(1))), Poly::monomial(e(&[2]), int(1)));
        let p = Poly::from_terms(1, [(e(&[2]), ratio(1, 3)), (e(&[0]), int(5))]);
        assert_eq!(reduce_mod_design(&three, &p), p);
    }

    #[test]
    fn reduction_of_high_power_agrees_on_points() {
        let s = DesignSpace::from_levels(vec![ints(&[0, 1, 2]), ints(&[-2, 5])]).unwrap();
        let p = Poly::from_terms(2, [(e(&[7, 3]), ratio(2, 3)), (e(&[4, 0]), int(-1))]);
        let r = reduce_mod_design(&s, &p);
        assert!(r.terms().all(|(a, _)| s.contains_exponent(a)));
        for flat in 0..s.run_count() {
            let pt = s.point_at(flat);
            assert_eq!(r.evaluate(&pt), p.evaluate(&pt));
        }
    }

    #[test]
    fn constant_indicators() {
        let s = single(&[-1, 1]);
        assert!(is_indicator(&s, &Poly::zero(1)));
        assert!(is_indicator(&s, &Poly::one(1)));
        assert!(!is_indicator(&s, &Poly::constant(1, ratio(1, 2))));
    }

    #[test]
    fn fraction_of_indicator_cases() {
        let s = single(&[-1, 1]);
        assert_eq!(fraction_of_indicator(&s, &Poly::one(1)).unwrap(), s.full_fraction());
        assert!(matches!(fraction_of_indicator(&s, &Poly::var(1, 0)), Err(Error::NotAnIndicator { run: 0, .. })));
    }

    #[test]
    fn full_design_indicator_is_one() {
        let s = DesignSpace::from_level_counts(&[2, 3]).unwrap();
        let f = indicator_of(&s, &s.full_fraction()).unwrap();
        assert_eq!(f.poly(), &Poly::one(2));
        assert!(f.is_verified());
    }

    #[test]
    fn support_check() {
        let s = single(&[-1, 1]);
        assert!(IndicatorPoly::from_poly(&s, Poly::monomial(e(&[2]), int(1))).is_err());
        let mut f = IndicatorPoly::from_poly(&s, Poly::one(1)).unwrap();
        assert!(!f.is_verified());
        assert!(f.verify(&s));
    }

    #[test]
    fn interpolator_matches_direct_solve() {
        let s = DesignSpace::from_level_counts(&[2, 2, 3]).unwrap();
        let frac =
            Fraction::from_runs(&s, &[RunIndex(vec![1, 1, 1]), RunIndex(vec![1, 2, 2]), RunIndex(vec![2, 1, 3])])
                .unwrap();
        let interp = Interpolator::new(&s).unwrap();
        assert_eq!(interp.indicator(&s, &frac), indicator_of(&s, &frac).unwrap());
    }
}
