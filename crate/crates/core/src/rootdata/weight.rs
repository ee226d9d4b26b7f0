use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use crate::linalg::{self, fmt_rational};
use crate::Rational;

/// A weight in orthonormal (epsilon) coordinates, with level and grade for affine algebras.
///
/// `grade` is the coefficient of the imaginary root; deeper weights have more negative grade.
/// Finite weights carry level and grade zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub finite: Vec<Rational>,
    pub level: Rational,
    pub grade: Rational,
}

impl Weight {
    pub fn new(finite: Vec<Rational>, level: Rational, grade: Rational) -> Self {
        Weight { finite, level, grade }
    }

    pub fn finite(finite: Vec<Rational>) -> Self {
        Weight { finite, level: Rational::zero(), grade: Rational::zero() }
    }

    pub fn zero(dim: usize) -> Self {
        Weight::finite(vec![Rational::zero(); dim])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Weight::finite(coords.iter().map(|&c| linalg::q(c)).collect())
    }

    pub fn delta(dim: usize) -> Self {
        Weight { grade: linalg::q(1), ..Weight::zero(dim) }
    }

    pub fn dim(&self) -> usize {
        self.finite.len()
    }

    pub fn is_zero(&self) -> bool {
        linalg::is_zero(&self.finite) && self.level.is_zero() && self.grade.is_zero()
    }

    pub fn scaled(&self, c: &Rational) -> Weight {
        Weight {
            finite: linalg::scale(&self.finite, c),
            level: &self.level * c,
            grade: &self.grade * c,
        }
    }

    pub fn with_grade(mut self, grade: Rational) -> Weight {
        self.grade = grade;
        self
    }

    pub fn classical(&self) -> Weight {
        Weight::finite(self.finite.clone())
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, o: &Weight) -> Weight {
        Weight {
            finite: linalg::add(&self.finite, &o.finite),
            level: &self.level + &o.level,
            grade: &self.grade + &o.grade,
        }
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, o: &Weight) -> Weight {
        Weight {
            finite: linalg::sub(&self.finite, &o.finite),
            level: &self.level - &o.level,
            grade: &self.grade - &o.grade,
        }
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight {
            finite: self.finite.iter().map(|x| -x).collect(),
            level: -&self.level,
            grade: -&self.grade,
        }
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, o: Weight) -> Weight {
        &self + &o
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, o: Weight) -> Weight {
        &self - &o
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.finite.iter().map(fmt_rational).collect();
        if self.level.is_zero() && self.grade.is_zero() {
            write!(f, "({})", parts.join(","))
        } else {
            write!(f, "({};{};{})", parts.join(","), fmt_rational(&self.level), fmt_rational(&self.grade))
        }
    }
}
