use std::fmt;
use std::str::FromStr;

use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Series {
    A,
    B,
    C,
    D,
}

/// A classical Lie algebra, optionally its untwisted affine extension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraSpec {
    pub series: Series,
    pub rank: usize,
    pub affine: bool,
}

impl AlgebraSpec {
    pub fn new(series: Series, rank: usize, affine: bool) -> Result<Self, Error> {
        let min = match series {
            Series::A | Series::B | Series::C => 1,
            Series::D => 3,
        };
        if rank < min {
            return Err(Error::InvalidAlgebra(format!("{series:?}{rank}")));
        }
        Ok(AlgebraSpec { series, rank, affine })
    }

    pub fn finite(self) -> Self {
        AlgebraSpec { affine: false, ..self }
    }

    /// Dimension of the ambient Euclidean space (one more than the rank for `A_r`).
    pub fn ambient_dim(&self) -> usize {
        match self.series {
            Series::A => self.rank + 1,
            _ => self.rank,
        }
    }

    pub fn dual_coxeter(&self) -> usize {
        let r = self.rank;
        match self.series {
            Series::A => r + 1,
            Series::B if r == 1 => 2,
            Series::B => 2 * r - 1,
            Series::C => r + 1,
            Series::D => 2 * r - 2,
        }
    }

    /// Dimension of the finite-dimensional algebra.
    pub fn dim(&self) -> usize {
        let r = self.rank;
        match self.series {
            Series::A => r * (r + 2),
            Series::B | Series::C => r * (2 * r + 1),
            Series::D => r * (2 * r - 1),
        }
    }
}

impl FromStr for AlgebraSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        let bad = || Error::InvalidAlgebra(s.to_string());
        let (body, affine) = match t.strip_suffix('^') {
            Some(b) => (b, true),
            None => (t, false),
        };
        let mut chars = body.chars();
        let series = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Series::A,
            Some('B') => Series::B,
            Some('C') => Series::C,
            Some('D') => Series::D,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        AlgebraSpec::new(series, rank, affine).map_err(|_| bad())
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}{}", self.series, self.rank, if self.affine { "^" } else { "" })
    }
}
