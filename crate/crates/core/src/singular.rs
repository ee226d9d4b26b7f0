//! The singular element of a module, reduced by the orthogonal partner of `a`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::embed::{OrthogonalPair, ResolvedEmbedding};
use crate::formal::FormalElement;
use crate::lattice::LabelPoint;
use crate::linalg::{self, QVector};
use crate::rootdata::{weyl_orbit_signed, RootSystem, Weight};
use crate::Error;

/// One orbit point `u(mu + rho)` whose `a_perp` component lies in the dominant chamber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetPoint {
    pub orbit_point: Weight,
    pub sign: i8,
    /// Highest weight of the `a_perp + h_perp` module attached to this point.
    pub mu_perp: QVector,
    /// Labels and grade of `pi_a(u(mu + rho) - rho)`.
    pub mu_a: LabelPoint,
    pub dim: BigInt,
}

/// Select the orbit points that contribute to the reduced singular element.
///
/// Points on a wall of the `a_perp` chamber give modules of dimension zero and are skipped.
pub fn select_u(
    mu: &Weight,
    e: &ResolvedEmbedding,
    o: &OrthogonalPair,
    cutoff: Option<u32>,
) -> Result<Vec<CosetPoint>, Error> {
    let points = orbit_points(mu, e.g(), cutoff)?;
    coset_points(points, e, o)
}

pub(crate) fn orbit_points(mu: &Weight, g: &RootSystem, cutoff: Option<u32>) -> Result<Vec<(Weight, i8)>, Error> {
    check_highest_weight(mu, g)?;
    if g.is_affine() && cutoff.is_none() {
        return Err(Error::MissingCutoff);
    }
    let top = linalg::to_i64(&mu.grade).ok_or_else(|| Error::NonIntegral(format!("grade of {mu}")))?;
    let floor = cutoff.map(|c| top - c as i64);
    let start = mu + &g.rho();
    Ok(weyl_orbit_signed(&start, g, floor)?.map(|p| (p.weight, p.sign)).collect())
}

pub(crate) fn check_highest_weight(mu: &Weight, g: &RootSystem) -> Result<(), Error> {
    if mu.dim() != g.dim() {
        return Err(Error::InvalidWeight(format!("{mu} has {} coordinates, expected {}", mu.dim(), g.dim())));
    }
    if !g.is_affine() && !(mu.level.is_zero() && mu.grade.is_zero()) {
        return Err(Error::InvalidWeight(format!("{mu} has a level or grade for a finite algebra")));
    }
    if !g.in_weight_space(&mu.finite) {
        return Err(Error::InvalidWeight(format!("{mu} is not in the weight space of {}", g.spec())));
    }
    if !g.is_integral(mu) || !mu.grade.is_integer() {
        return Err(Error::NonIntegral(format!("{mu} is not an integral weight")));
    }
    if !g.is_dominant(mu) {
        return Err(Error::NotDominant(mu.to_string()));
    }
    Ok(())
}

pub(crate) fn coset_points(
    points: impl IntoIterator<Item = (Weight, i8)>,
    e: &ResolvedEmbedding,
    o: &OrthogonalPair,
) -> Result<Vec<CosetPoint>, Error> {
    let rho = e.g().rho();
    let mut out = Vec::new();
    for (x, sign) in points {
        let shifted = &x - &rho;
        let mu_perp = linalg::sub(&o.project_tilde(&shifted.finite), o.defect_perp());
        if !o.is_dominant(&mu_perp) {
            continue;
        }
        let dim = o.dimension(&mu_perp);
        if dim.is_zero() {
            continue;
        }
        if !dim.is_integer() || dim.is_negative() {
            return Err(Error::NonIntegral(format!("a_perp dimension {dim} at {x}")));
        }
        let mu_a = e.labels(&shifted)?;
        out.push(CosetPoint { orbit_point: x, sign, mu_perp, mu_a, dim: dim.to_integer() });
    }
    Ok(out)
}

/// `sum_u sign(u) dim(mu_perp(u)) e^{mu_a(u)}`, keyed by labels of `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularElement {
    terms: FormalElement<LabelPoint>,
    highest: Weight,
    cutoff: Option<u32>,
}

impl SingularElement {
    pub fn build(mu: &Weight, e: &ResolvedEmbedding, o: &OrthogonalPair, cutoff: Option<u32>) -> Result<Self, Error> {
        let points = select_u(mu, e, o, cutoff)?;
        Ok(Self::from_points(mu, &points, cutoff))
    }

    pub fn from_points(mu: &Weight, points: &[CosetPoint], cutoff: Option<u32>) -> Self {
        let mut terms = FormalElement::new();
        for p in points {
            let c = if p.sign > 0 { p.dim.clone() } else { -p.dim.clone() };
            terms.add_term(p.mu_a.clone(), c);
        }
        SingularElement { terms, highest: mu.clone(), cutoff }
    }

    pub fn terms(&self) -> &FormalElement<LabelPoint> {
        &self.terms
    }

    pub fn highest_weight(&self) -> &Weight {
        &self.highest
    }

    pub fn cutoff(&self) -> Option<u32> {
        self.cutoff
    }

    pub fn coefficient(&self, p: &LabelPoint) -> BigInt {
        self.terms.coefficient(p)
    }

    /// Lowest grade covered by this element.
    pub fn floor(&self) -> Option<i64> {
        let top = linalg::to_i64(&self.highest.grade).unwrap_or(0);
        self.cutoff.map(|c| top - c as i64)
    }
}

impl std::fmt::Display for SingularElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (k, c) in self.terms.iter() {
            if !first {
                writeln!(f)?;
            }
            first = false;
            write!(f, "{k} : {c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::EmbeddingSpec;

    fn setup(spec: &EmbeddingSpec) -> (ResolvedEmbedding, OrthogonalPair) {
        let e = ResolvedEmbedding::new(spec).unwrap();
        let o = OrthogonalPair::new(&e);
        (e, o)
    }

    fn p(labels: &[i64], grade: i64) -> LabelPoint {
        LabelPoint::new(labels.to_vec(), grade)
    }

    #[test]
    fn a1_in_b2_singular_element() {
        let (e, o) = setup(&EmbeddingSpec::regular("B2", "A1", &[1, 2]).unwrap());
        let mu = e.g().from_labels(&[1, 0], 0, 0);
        let s = SingularElement::build(&mu, &e, &o, None).unwrap();
        let expect: FormalElement<LabelPoint> = [(p(&[1], 0), 2), (p(&[0], 0), -3), (p(&[-4], 0), 3), (p(&[-5], 0), -2)]
            .into_iter()
            .map(|(k, c)| (k, BigInt::from(c)))
            .collect();
        assert_eq!(s.terms(), &expect);
    }

    #[test]
    fn b2_in_b4_coset_count() {
        let (e, o) = setup(&EmbeddingSpec::regular("B4", "B2", &[2]).unwrap());
        let mu = e.g().from_labels(&[0, 1, 0, 2], 0, 0);
        let orbit = orbit_points(&mu, e.g(), None).unwrap();
        assert_eq!(orbit.len(), 384);
        assert_eq!(coset_points(orbit, &e, &o).unwrap().len(), 48);
    }

    #[test]
    fn rejects_bad_highest_weights() {
        let (e, o) = setup(&EmbeddingSpec::regular("B2", "A1", &[1, 2]).unwrap());
        let not_dominant = e.g().from_labels(&[-1, 0], 0, 0);
        assert!(matches!(select_u(&not_dominant, &e, &o, None), Err(Error::NotDominant(_))));
        let half = Weight::new(vec![linalg::q_frac(1, 3), linalg::q(0)], linalg::q(0), linalg::q(0));
        assert!(select_u(&half, &e, &o, None).is_err());
        let (ea, oa) = setup(&EmbeddingSpec::regular("B2^", "A1^", &[1, 2]).unwrap());
        let mu = ea.g().from_labels(&[1, 0], 1, 0);
        assert!(matches!(select_u(&mu, &ea, &oa, None), Err(Error::MissingCutoff)));
    }
}
