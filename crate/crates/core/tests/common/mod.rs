#![allow(dead_code)]

use fracdesign_core::rational::{int, parse};
use fracdesign_core::{DesignSpace, Exponents, Fraction, Poly, Rational};

pub const F1: &str = include_str!("../fixtures/f1.csv");
pub const F2: &str = include_str!("../fixtures/f2.csv");
pub const F3: &str = include_str!("../fixtures/f3.csv");
pub const F4: &str = include_str!("../fixtures/f4.csv");
pub const OA12_A: &str = include_str!("../fixtures/oa12_type_a.csv");
pub const OA12_B: &str = include_str!("../fixtures/oa12_type_b.csv");
pub const OA12_C: &str = include_str!("../fixtures/oa12_type_c.csv");
pub const OA24_A: &str = include_str!("../fixtures/oa24_type_a.csv");
pub const OA24_B: &str = include_str!("../fixtures/oa24_type_b.csv");
pub const OA24_C: &str = include_str!("../fixtures/oa24_type_c.csv");
pub const RELATIONS_PM: &str = include_str!("../fixtures/relations_pm.txt");
pub const RELATIONS_01: &str = include_str!("../fixtures/relations_01.txt");

/// Rows of a header-plus-values CSV table.
pub fn table(text: &str) -> Vec<Vec<Rational>> {
    text.lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split(',').map(|v| parse(v.trim()).unwrap()).collect())
        .collect()
}

pub fn space(levels: &[&[i64]]) -> DesignSpace {
    DesignSpace::from_levels(levels.iter().map(|l| l.iter().map(|&v| int(v)).collect()).collect()).unwrap()
}

pub fn pm(n2: usize, n3: usize) -> DesignSpace {
    let mut levels: Vec<&[i64]> = vec![&[-1, 1]; n2];
    levels.extend(std::iter::repeat_n(&[-1i64, 0, 1][..], n3));
    space(&levels)
}

pub fn fraction(space: &DesignSpace, text: &str) -> Fraction {
    space.fraction_from_points(&table(text)).unwrap()
}

pub fn e(digits: &str) -> Exponents {
    Exponents(digits.bytes().map(|b| (b - b'0') as u32).collect())
}

/// `poly(&[("000", "1/2"), ("110", "-1/2")])`.
pub fn poly(terms: &[(&str, &str)]) -> Poly {
    let n = terms[0].0.len();
    Poly::from_terms(n, terms.iter().map(|(a, c)| (e(a), parse(c).unwrap())))
}

/// Every `k`-subset of `0..n`.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|mask| mask.count_ones() as usize == k)
        .map(|mask| (0..n).filter(|j| mask & (1 << j) != 0).collect())
        .collect()
}

/// Every subset of the runs of `space`, for `m <= 16`.
pub fn all_fractions(space: &DesignSpace) -> impl Iterator<Item = Fraction> + '_ {
    let m = space.run_count();
    (0u32..1 << m).map(move |mask| Fraction::new(space, (0..m).map(|i| mask & (1 << i) != 0).collect()).unwrap())
}

/// Strength by direct marginal counting, independent of the library.
pub fn brute_strength_at_least(space: &DesignSpace, f: &Fraction, t: usize) -> bool {
    let n = space.factor_count();
    let r = space.level_counts();
    let s = f.size();
    (1..=t).all(|k| {
        subsets(n, k).iter().all(|j| {
            let cells: usize = j.iter().map(|&x| r[x]).product();
            if !s.is_multiple_of(cells) {
                return false;
            }
            let mut counts = vec![0usize; cells];
            for run in f.selected() {
                let c = space.coords(run);
                counts[j.iter().fold(0, |acc, &x| acc * r[x] + c[x])] += 1;
            }
            counts.iter().all(|&v| v == s / cells)
        })
    })
}

/// Level-count vectors of every space with `2 <= r_j` and `m <= 12`, up to
/// three factors.
pub fn small_spaces() -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for a in 2..=12usize {
        out.push(vec![a]);
        for b in 2..=6 {
            if a * b <= 12 {
                out.push(vec![a, b]);
            }
            for c in 2..=3 {
                if a * b * c <= 12 {
                    out.push(vec![a, b, c]);
                }
            }
        }
    }
    out
}
