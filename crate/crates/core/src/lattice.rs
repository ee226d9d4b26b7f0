//! Points of the subalgebra weight lattice and the total order used by the recurrence.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::linalg::{self, to_i64};
use crate::rootdata::RootSystem;
use crate::Rational;

/// A weight of the subalgebra in Dynkin labels, together with its grade.
///
/// The level is implicit: all points of one computation share it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelPoint {
    pub labels: Vec<i64>,
    pub grade: i64,
}

impl LabelPoint {
    pub fn new(labels: Vec<i64>, grade: i64) -> Self {
        LabelPoint { labels, grade }
    }

    pub fn zero(rank: usize) -> Self {
        LabelPoint { labels: vec![0; rank], grade: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.grade == 0 && self.labels.iter().all(|&l| l == 0)
    }
}

impl Add for LabelPoint {
    type Output = LabelPoint;
    fn add(self, o: LabelPoint) -> LabelPoint {
        &self + &o
    }
}

impl Add for &LabelPoint {
    type Output = LabelPoint;
    fn add(self, o: &LabelPoint) -> LabelPoint {
        LabelPoint {
            labels: self.labels.iter().zip(&o.labels).map(|(a, b)| a + b).collect(),
            grade: self.grade + o.grade,
        }
    }
}

impl Sub for &LabelPoint {
    type Output = LabelPoint;
    fn sub(self, o: &LabelPoint) -> LabelPoint {
        LabelPoint {
            labels: self.labels.iter().zip(&o.labels).map(|(a, b)| a - b).collect(),
            grade: self.grade - o.grade,
        }
    }
}

impl Neg for &LabelPoint {
    type Output = LabelPoint;
    fn neg(self) -> LabelPoint {
        LabelPoint { labels: self.labels.iter().map(|a| -a).collect(), grade: -self.grade }
    }
}

impl fmt::Display for LabelPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.labels.iter().map(i64::to_string).collect();
        if self.grade == 0 {
            write!(f, "({})", parts.join(","))
        } else {
            write!(f, "({}|{})", parts.join(","), self.grade)
        }
    }
}

/// Total order on label points: grade, then `<lambda, 2 rho^vee>`, then epsilon coordinates.
///
/// The height functional is positive on every positive root, so any point
/// exceeds the points obtained from it by subtracting positive roots.
#[derive(Clone, Debug)]
pub struct WeightOrder {
    height: Vec<i64>,
    eps: Vec<Vec<i64>>,
}

pub type OrderKey = (i64, i64, Vec<i64>);

impl WeightOrder {
    pub fn new(a: &RootSystem) -> Self {
        let fundamental = a.fundamental_weights();
        let height = fundamental
            .iter()
            .map(|w| {
                let total = a.classical_positive_roots().iter().fold(Rational::default(), |acc, b| {
                    acc + linalg::q(2) * linalg::dot(w, b) / linalg::dot(b, b)
                });
                to_i64(&total).expect("2 rho^vee pairs integrally with fundamental weights")
            })
            .collect();
        let den = fundamental.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let den = Rational::from_integer(den);
        let eps = (0..a.dim())
            .map(|k| fundamental.iter().map(|w| to_i64(&(&w[k] * &den)).expect("scaled coordinates are integral")).collect())
            .collect();
        WeightOrder { height, eps }
    }

    pub fn height(&self, p: &LabelPoint) -> i64 {
        self.height.iter().zip(&p.labels).map(|(c, l)| c * l).sum()
    }

    pub fn key(&self, p: &LabelPoint) -> OrderKey {
        let eps = self.eps.iter().map(|row| row.iter().zip(&p.labels).map(|(c, l)| c * l).sum()).collect();
        (p.grade, self.height(p), eps)
    }

    pub fn cmp(&self, a: &LabelPoint, b: &LabelPoint) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }

    /// Sort points from highest to lowest.
    pub fn sort_descending(&self, points: &mut [LabelPoint]) {
        points.sort_by_cached_key(|p| std::cmp::Reverse(self.key(p)));
    }

    pub fn max<'a>(&self, points: impl IntoIterator<Item = &'a LabelPoint>) -> Option<&'a LabelPoint> {
        points.into_iter().max_by(|a, b| self.cmp(a, b))
    }

    pub fn min<'a>(&self, points: impl IntoIterator<Item = &'a LabelPoint>) -> Option<&'a LabelPoint> {
        points.into_iter().min_by(|a, b| self.cmp(a, b))
    }
}
