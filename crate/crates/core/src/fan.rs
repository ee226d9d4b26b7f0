//! The injection fan: the support of the projected ratio of Weyl denominators.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::embed::{OrthogonalPair, ResolvedEmbedding};
use crate::formal::FormalElement;
use crate::lattice::{LabelPoint, WeightOrder};
use crate::Error;

/// Net exponent of each factor `(1 - e^{-gamma})` in the projected denominator ratio.
///
/// Roots of `g` are grouped by their projection: the exponent of a projected
/// root is the total multiplicity of the roots of `g` outside `a_perp` that
/// project onto it, minus its multiplicity as a root of `a`.
pub fn fan_exponents(
    e: &ResolvedEmbedding,
    o: &OrthogonalPair,
    cutoff: Option<u32>,
) -> Result<BTreeMap<LabelPoint, i64>, Error> {
    if e.is_affine() && cutoff.is_none() {
        return Err(Error::MissingCutoff);
    }
    let perp: std::collections::BTreeSet<_> = o.positive_roots().iter().collect();
    let mut counts: BTreeMap<LabelPoint, i64> = BTreeMap::new();
    for (root, mult) in e.g().positive_roots(cutoff) {
        if root.grade.is_zero() && perp.contains(&root.finite) {
            continue;
        }
        *counts.entry(e.labels(&root)?).or_default() += mult as i64;
    }
    for (root, mult) in e.a().positive_roots(cutoff) {
        *counts.entry(e.a_root_labels(&root)).or_default() -= mult as i64;
    }
    counts.retain(|_, c| *c != 0);
    if let Some(zero) = counts.keys().find(|k| k.is_zero()) {
        return Err(Error::InvalidEmbedding(format!("a root of g outside a_perp projects to zero: {zero}")));
    }
    Ok(counts)
}

/// Expand the projected denominator ratio and return its carrier `gamma -> s(gamma)`.
///
/// The ratio is `sum_gamma -s(gamma) e^{-gamma}`; for affine algebras terms are
/// kept down to grade `-cutoff`.
pub fn expand_fan_product(
    e: &ResolvedEmbedding,
    o: &OrthogonalPair,
    cutoff: Option<u32>,
) -> Result<FormalElement<LabelPoint>, Error> {
    let floor = -(cutoff.unwrap_or(0) as i64);
    let mut factors = Vec::new();
    for (key, exp) in fan_exponents(e, o, cutoff)? {
        let step = -&key;
        factors.push(power_of_binomial(&step, exp, floor)?);
    }
    factors.sort_by_key(FormalElement::len);
    let rank = e.a().rank();
    let mut product = FormalElement::monomial(LabelPoint::zero(rank), BigInt::one());
    for f in &factors {
        product = product.mul_truncated(f, |k| k.grade >= floor);
    }
    Ok(product.map_keys(|k| -k).scaled(&-BigInt::one()))
}

/// `(1 - e^{step})^exp`, truncated at grade `floor` when the expansion is infinite.
fn power_of_binomial(step: &LabelPoint, exp: i64, floor: i64) -> Result<FormalElement<LabelPoint>, Error> {
    let mut out = FormalElement::new();
    let mut point = LabelPoint::zero(step.labels.len());
    let mut coeff = BigInt::one();
    if exp >= 0 {
        for j in 0..=exp {
            out.add_term(point.clone(), coeff.clone());
            coeff = -coeff * BigInt::from(exp - j) / BigInt::from(j + 1);
            point = &point + step;
        }
        return Ok(out);
    }
    if step.grade >= 0 {
        return Err(Error::InfiniteSeries);
    }
    let m = -exp;
    let mut j = 0i64;
    while point.grade >= floor {
        out.add_term(point.clone(), coeff.clone());
        coeff = coeff * BigInt::from(m + j) / BigInt::from(j + 1);
        point = &point + step;
        j += 1;
    }
    Ok(out)
}

/// The fan in the form used by the recurrence.
#[derive(Clone, Debug)]
pub struct Fan {
    gamma0: LabelPoint,
    s0: BigInt,
    shifted: Vec<(LabelPoint, BigInt)>,
    carrier: FormalElement<LabelPoint>,
    cutoff: Option<u32>,
}

/// Choose the lowest carrier point `gamma0` and shift the rest of the carrier by it.
pub fn extract_fan(carrier: FormalElement<LabelPoint>, order: &WeightOrder, cutoff: Option<u32>) -> Result<Fan, Error> {
    let gamma0 = order
        .min(carrier.keys())
        .cloned()
        .ok_or_else(|| Error::InvalidEmbedding("empty fan carrier".into()))?;
    let s0 = carrier.coefficient(&gamma0);
    let mut shifted: Vec<(LabelPoint, BigInt)> =
        carrier.iter().filter(|(k, _)| **k != gamma0).map(|(k, c)| (k - &gamma0, c.clone())).collect();
    shifted.sort_by_cached_key(|(k, _)| order.key(k));
    Ok(Fan { gamma0, s0, shifted, carrier, cutoff })
}

impl Fan {
    pub fn build(e: &ResolvedEmbedding, o: &OrthogonalPair, cutoff: Option<u32>) -> Result<Fan, Error> {
        let carrier = expand_fan_product(e, o, cutoff)?;
        extract_fan(carrier, e.order(), cutoff)
    }

    pub fn gamma0(&self) -> &LabelPoint {
        &self.gamma0
    }

    pub fn s0(&self) -> &BigInt {
        &self.s0
    }

    /// Pairs `(gamma - gamma0, s(gamma))` for every carrier point other than `gamma0`.
    pub fn shifted(&self) -> &[(LabelPoint, BigInt)] {
        &self.shifted
    }

    pub fn carrier(&self) -> &FormalElement<LabelPoint> {
        &self.carrier
    }

    pub fn cutoff(&self) -> Option<u32> {
        self.cutoff
    }

    /// Rebuild the carrier from `gamma0`, `s0` and the shifted terms.
    pub fn reconstruct(&self) -> FormalElement<LabelPoint> {
        let mut f = FormalElement::monomial(self.gamma0.clone(), self.s0.clone());
        for (k, c) in &self.shifted {
            f.add_term(k + &self.gamma0, c.clone());
        }
        f
    }

    /// The carrier restricted to `gamma` of grade at most `cutoff`.
    pub fn truncated(&self, cutoff: u32) -> FormalElement<LabelPoint> {
        self.carrier.filter(|k| k.grade <= cutoff as i64)
    }
}

impl std::fmt::Display for Fan {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "gamma0 = {} (s = {})", self.gamma0, self.s0)?;
        for (k, c) in &self.shifted {
            write!(f, "\n  {} : {}", k, c)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::EmbeddingSpec;

    fn fan(spec: &EmbeddingSpec, cutoff: Option<u32>) -> Fan {
        let e = ResolvedEmbedding::new(spec).unwrap();
        let o = OrthogonalPair::new(&e);
        Fan::build(&e, &o, cutoff).unwrap()
    }

    fn p(labels: &[i64], grade: i64) -> LabelPoint {
        LabelPoint::new(labels.to_vec(), grade)
    }

    #[test]
    fn a1_in_b2_fan() {
        let f = fan(&EmbeddingSpec::regular("B2", "A1", &[1, 2]).unwrap(), None);
        assert_eq!(f.gamma0(), &p(&[0], 0));
        assert_eq!(f.s0(), &BigInt::from(-1));
        assert_eq!(f.shifted(), &[(p(&[1], 0), BigInt::from(2)), (p(&[2], 0), BigInt::from(-1))]);
    }

    #[test]
    fn identity_fan_is_trivial() {
        let f = fan(&EmbeddingSpec::regular("B2^", "B2^", &[]).unwrap(), Some(4));
        assert_eq!(f.gamma0(), &p(&[0, 0], 0));
        assert_eq!(f.s0(), &BigInt::from(-1));
        assert!(f.shifted().is_empty());
    }

    #[test]
    fn binomial_expansions() {
        let step = p(&[-1], 0);
        let f = power_of_binomial(&step, 3, 0).unwrap();
        let coeffs: Vec<i64> = (0..4).map(|j| i64::try_from(f.coefficient(&p(&[-j], 0))).unwrap()).collect();
        assert_eq!(coeffs, vec![1, -3, 3, -1]);
        let g = power_of_binomial(&p(&[0], -1), -2, -3).unwrap();
        let coeffs: Vec<i64> = (0..4).map(|j| i64::try_from(g.coefficient(&p(&[0], -j))).unwrap()).collect();
        assert_eq!(coeffs, vec![1, 2, 3, 4]);
        assert!(power_of_binomial(&step, -1, 0).is_err());
    }

    #[test]
    fn reconstruction_round_trip() {
        let f = fan(&EmbeddingSpec::regular("B4", "B2", &[2]).unwrap(), None);
        assert_eq!(&f.reconstruct(), f.carrier());
        assert_eq!(f.carrier().len(), 25);
        assert_eq!(f.gamma0(), &p(&[0, -4], 0));
    }

    #[test]
    fn affine_fan_requires_cutoff() {
        let e = ResolvedEmbedding::new(&EmbeddingSpec::regular("B2^", "A1^", &[1, 2]).unwrap()).unwrap();
        let o = OrthogonalPair::new(&e);
        assert!(matches!(Fan::build(&e, &o, None), Err(Error::MissingCutoff)));
    }
}
