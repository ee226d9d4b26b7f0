//! Conformal data: central charges, coset characters and modular invariants.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::branch::{Brancher, BranchingTable};
use crate::embed::{OrthogonalPair, ResolvedEmbedding};
use crate::lattice::LabelPoint;
use crate::linalg::{self, fmt_rational, q};
use crate::rootdata::{AlgebraSpec, RootSystem, Weight};
use crate::{Error, Rational};

/// Sugawara central charge `k dim g / (k + h^vee)`.
pub fn central_charge(spec: &AlgebraSpec, level: &Rational) -> Result<Rational, Error> {
    let den = level + q(spec.dual_coxeter() as i64);
    if den.is_zero() {
        return Err(Error::CriticalLevel(fmt_rational(level)));
    }
    Ok(level * q(spec.dim() as i64) / den)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConformalReport {
    pub conformal: bool,
    pub c_g: Rational,
    pub c_a: Rational,
    pub index: Rational,
    /// Whether `a_perp` has no roots.
    pub perp_roots_empty: bool,
}

/// Compare the central charge of `g` at `level` with that of `a` at the induced level.
pub fn is_conformal(e: &ResolvedEmbedding, o: &OrthogonalPair, level: &Rational) -> Result<ConformalReport, Error> {
    let c_g = central_charge(&e.g().spec(), level)?;
    let c_a = central_charge(&e.a().spec(), &e.a_level(level))?;
    Ok(ConformalReport {
        conformal: c_g == c_a,
        c_g,
        c_a,
        index: e.index().clone(),
        perp_roots_empty: o.positive_roots().is_empty(),
    })
}

/// `|w + rho|^2 / (2(k + h^vee)) - |rho|^2 / (2 h^vee)` for the classical part of `w`.
///
/// This equals the conformal weight of the primary field minus `c / 24`.
pub fn modular_anomaly(w: &Weight, rs: &RootSystem, level: &Rational) -> Result<Rational, Error> {
    let h = rs.dual_coxeter();
    let den = level + &h;
    if den.is_zero() {
        return Err(Error::CriticalLevel(fmt_rational(level)));
    }
    let rho = rs.rho().classical();
    let shifted = &w.classical() + &rho;
    Ok(rs.inner(&shifted, &shifted) / (q(2) * den) - rs.inner(&rho, &rho) / (q(2) * h))
}

/// `q^exponent * sum_n coefficients[n] q^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    pub exponent: Rational,
    pub coefficients: Vec<BigInt>,
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q^({}) * ({})", fmt_rational(&self.exponent), format_power_series(&self.coefficients))
    }
}

pub fn format_power_series(coefficients: &[BigInt]) -> String {
    let mut out = String::new();
    for (n, c) in coefficients.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let body = match n {
            0 => mag.to_string(),
            1 if mag.is_one() => "q".to_string(),
            1 => format!("{mag}q"),
            _ if mag.is_one() => format!("q^{n}"),
            _ => format!("{mag}q^{n}"),
        };
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out.push_str(&format!(" + O(q^{})", coefficients.len()));
    out
}

/// Coset characters `q^{m_mu - m_nu} b_nu(q)` for every class `nu` of the branching table.
///
/// The exponent includes the depth of the leading term of `b_nu` below the highest weight.
pub fn coset_characters(
    table: &BranchingTable,
    mu: &Weight,
    e: &ResolvedEmbedding,
) -> Result<Vec<(Vec<i64>, QSeries)>, Error> {
    let level = &mu.level;
    let a_level = e.a_level(level);
    let m_mu = modular_anomaly(mu, e.g(), level)?;
    let top = linalg::to_i64(&mu.grade).unwrap_or(0);
    table
        .branching_functions()
        .into_iter()
        .map(|bf| {
            let nu = e.a_weight(&LabelPoint::new(bf.labels.clone(), 0), &a_level);
            let m_nu = modular_anomaly(&nu, e.a(), &a_level)?;
            let exponent = &m_mu - m_nu + q(top - bf.leading_grade);
            Ok((bf.labels, QSeries { exponent, coefficients: bf.coefficients }))
        })
        .collect()
}

/// Level-`k` dominant weights of an affine algebra, as finite Dynkin labels.
pub fn level_dominant_weights(rs: &RootSystem, level: i64) -> Vec<Vec<i64>> {
    let comarks: Vec<i64> = rs.comarks().iter().map(|c| linalg::to_i64(c).expect("integral comarks")).collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(comarks: &[i64], left: i64, current: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if current.len() == comarks.len() {
            out.push(current.clone());
            return;
        }
        let c = comarks[current.len()];
        for l in 0..=left / c {
            current.push(l);
            rec(comarks, left - l * c, current, out);
            current.pop();
        }
    }
    rec(&comarks, level, &mut current, &mut out);
    out
}

/// Diagonal-type modular invariant `sum_mu |sum_nu b^mu_nu chi_nu|^2` of a conformal embedding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionFunction {
    pub a_level: Rational,
    /// Classes `nu` (finite labels of `a`) in the order used by `mass_matrix`.
    pub classes: Vec<Vec<i64>>,
    /// For each level-`k` weight of `g`: its labels and the multiplicity of each class.
    pub rows: Vec<(Vec<i64>, Vec<BigInt>)>,
    heights: Vec<i64>,
}

pub fn assemble_partition_function(b: &Brancher, level: i64) -> Result<PartitionFunction, Error> {
    let e = b.embedding();
    if !e.is_affine() {
        return Err(Error::InvalidEmbedding("modular invariants need affine algebras".into()));
    }
    let k = q(level);
    let report = is_conformal(e, b.orthogonal(), &k)?;
    if !report.conformal {
        return Err(Error::NotConformal(format!(
            "c(g) = {} but c(a) = {}",
            fmt_rational(&report.c_g),
            fmt_rational(&report.c_a)
        )));
    }
    let mut raw = Vec::new();
    let mut classes: BTreeMap<Vec<i64>, ()> = BTreeMap::new();
    for labels in level_dominant_weights(e.g(), level) {
        let mu = e.g().from_labels(&labels, level, 0);
        let table = b.branch(&mu)?;
        for bf in table.branching_functions() {
            if bf.coefficients.iter().filter(|c| !c.is_zero()).count() > 1 {
                return Err(Error::NotConformal(format!(
                    "class {:?} of {:?} occurs at several grades",
                    bf.labels, labels
                )));
            }
            classes.insert(bf.labels.clone(), ());
        }
        raw.push((labels, table.class_totals()));
    }
    let classes: Vec<Vec<i64>> = classes.into_keys().collect();
    let rows = raw
        .into_iter()
        .map(|(labels, totals)| {
            let row = classes.iter().map(|c| totals.get(c).cloned().unwrap_or_default()).collect();
            (labels, row)
        })
        .collect();
    let heights = classes.iter().map(|c| e.order().height(&LabelPoint::new(c.clone(), 0))).collect();
    Ok(PartitionFunction { a_level: e.a_level(&k), classes, rows, heights })
}

impl PartitionFunction {
    /// `M_{nu nu'} = sum_mu b^mu_nu b^mu_nu'`.
    pub fn mass_matrix(&self) -> Vec<Vec<BigInt>> {
        let n = self.classes.len();
        let mut m = vec![vec![BigInt::zero(); n]; n];
        for (_, row) in &self.rows {
            for i in 0..n {
                for j in 0..n {
                    m[i][j] += &row[i] * &row[j];
                }
            }
        }
        m
    }

    fn character(&self, i: usize) -> String {
        let labels: Vec<String> = self.classes[i].iter().map(i64::to_string).collect();
        format!("χ_{{({};{};0)}}", labels.join(","), fmt_rational(&self.a_level))
    }

    /// Render as `|...|^2` blocks, merging identical rows into a multiplicity.
    pub fn render(&self) -> String {
        let mut groups: Vec<(&Vec<BigInt>, u64)> = Vec::new();
        for (_, row) in &self.rows {
            if row.iter().all(Zero::is_zero) {
                continue;
            }
            match groups.iter_mut().find(|(r, _)| *r == row) {
                Some(g) => g.1 += 1,
                None => groups.push((row, 1)),
            }
        }
        let blocks: Vec<String> = groups
            .into_iter()
            .map(|(row, mult)| {
                let mut idx: Vec<usize> = (0..row.len()).filter(|&i| !row[i].is_zero()).collect();
                idx.sort_by_key(|&i| std::cmp::Reverse(self.heights[i]));
                let terms: Vec<String> = idx
                    .iter()
                    .map(|&i| if row[i].is_one() { self.character(i) } else { format!("{}{}", row[i], self.character(i)) })
                    .collect();
                let prefix = if mult == 1 { String::new() } else { mult.to_string() };
                format!("{prefix}|{}|^2", terms.join(" + "))
            })
            .collect();
        format!("Z = {}", blocks.join(" + "))
    }
}
