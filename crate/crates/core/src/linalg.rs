//! Small dense linear algebra over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Rational};

pub type QVector = Vec<Rational>;
pub type QMatrix = Vec<Vec<Rational>>;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn add(a: &[Rational], b: &[Rational]) -> QVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> QVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Rational], c: &Rational) -> QVector {
    a.iter().map(|x| x * c).collect()
}

pub fn is_zero(a: &[Rational]) -> bool {
    a.iter().all(Zero::is_zero)
}

pub fn mat_vec(m: &[QVector], v: &[Rational]) -> QVector {
    m.iter().map(|row| dot(row, v)).collect()
}

pub fn identity(n: usize) -> QMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect()
}

pub fn zeros(rows: usize, cols: usize) -> QMatrix {
    vec![vec![Rational::zero(); cols]; rows]
}

pub fn mat_mul(a: &[QVector], b: &[QVector]) -> QMatrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).fold(Rational::zero(), |acc, (x, br)| acc + x * &br[j]))
                .collect()
        })
        .collect()
}

pub fn transpose(m: &[QVector]) -> QMatrix {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Reduced row echelon form; returns the pivot columns.
pub fn rref(m: &mut QMatrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= p * &f;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[QVector]) -> usize {
    rref(&mut m.to_vec()).len()
}

pub fn inverse(m: &[QVector]) -> Option<QMatrix> {
    let n = m.len();
    let mut aug: QMatrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Basis of the right null space `{x : m x = 0}`.
pub fn nullspace(m: &[QVector], cols: usize) -> Vec<QVector> {
    let mut r = m.to_vec();
    let pivots = rref(&mut r);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r[i][f].clone();
            }
            v
        })
        .collect()
}

/// Solve `sum_i c_i rows[i] = target`; `None` when `target` is outside the span.
pub fn solve_in_span(rows: &[QVector], target: &[Rational]) -> Option<QVector> {
    if rows.is_empty() {
        return is_zero(target).then(Vec::new);
    }
    let gram: QMatrix = rows.iter().map(|a| rows.iter().map(|b| dot(a, b)).collect()).collect();
    let inv = inverse(&gram)?;
    let rhs: QVector = rows.iter().map(|a| dot(a, target)).collect();
    let c = mat_vec(&inv, &rhs);
    let mut back = vec![Rational::zero(); target.len()];
    for (ci, row) in c.iter().zip(rows) {
        for (b, x) in back.iter_mut().zip(row) {
            *b += ci * x;
        }
    }
    (back == target).then_some(c)
}

/// Orthogonal projector (standard dot product) onto the span of linearly independent `rows`.
pub fn projector(rows: &[QVector], dim: usize) -> QMatrix {
    if rows.is_empty() {
        return zeros(dim, dim);
    }
    let gram: QMatrix = rows.iter().map(|a| rows.iter().map(|b| dot(a, b)).collect()).collect();
    let inv = inverse(&gram).expect("projector basis must be independent");
    let bt = transpose(rows);
    mat_mul(&mat_mul(&bt, &inv), rows)
}

/// Scale to a primitive integer vector whose first nonzero entry is positive.
pub fn primitive(v: &[Rational]) -> QVector {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    let sign = match ints.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.into_iter().map(|x| Rational::from_integer(x / &g * &sign)).collect()
}

pub fn to_i64(x: &Rational) -> Option<i64> {
    if !x.is_integer() {
        return None;
    }
    i64::try_from(x.to_integer()).ok()
}

pub fn fmt_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn fmt_vector(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(fmt_rational).collect();
    format!("({})", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qv(v: &[i64]) -> QVector {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn inverse_of_cartan_b2() {
        let m = vec![qv(&[2, -1]), qv(&[-2, 2])];
        let inv = inverse(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), identity(2));
        assert!(inverse(&[qv(&[1, 2]), qv(&[2, 4])]).is_none());
    }

    #[test]
    fn nullspace_is_annihilated() {
        let m = vec![qv(&[1, -1, 0]), qv(&[0, 1, -1])];
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 1);
        assert_eq!(primitive(&ns[0]), qv(&[1, 1, 1]));
        assert!(is_zero(&mat_vec(&m, &ns[0])));
    }

    #[test]
    fn projector_is_idempotent() {
        let p = projector(&[qv(&[1, 1, 0])], 3);
        assert_eq!(mat_mul(&p, &p), p);
        assert_eq!(mat_vec(&p, &qv(&[2, 0, 5])), qv(&[1, 1, 0]));
    }

    #[test]
    fn solve_in_span_rejects_outside() {
        let rows = vec![qv(&[1, -1, 0])];
        assert_eq!(solve_in_span(&rows, &qv(&[3, -3, 0])), Some(qv(&[3])));
        assert_eq!(solve_in_span(&rows, &qv(&[1, 0, 0])), None);
    }

    #[test]
    fn parses_fractions() {
        assert_eq!(parse_rational(" -3/6 ").unwrap(), q_frac(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), q(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
