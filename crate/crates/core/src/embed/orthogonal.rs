use num_traits::Zero;

use super::resolve::{complement_in_root_span, indecomposable};
use super::ResolvedEmbedding;
use crate::linalg::{self, q, QMatrix, QVector};
use crate::rootdata::{classify, weyl_group_order, Series};
use crate::Rational;

/// The orthogonal partner `a_perp + h_perp` of an embedding and the associated defects.
#[derive(Clone, Debug)]
pub struct OrthogonalPair {
    positive: Vec<QVector>,
    simple: Vec<QVector>,
    components: Vec<(Series, usize)>,
    h_perp: Vec<QVector>,
    rho: QVector,
    defect_perp: QVector,
    defect_a: QVector,
    proj_perp: QMatrix,
    proj_tilde: QMatrix,
}

impl OrthogonalPair {
    pub fn new(e: &ResolvedEmbedding) -> Self {
        let g = e.g();
        let dim = g.dim();
        let beta = e.embedded_simple_roots();
        let positive: Vec<QVector> = g
            .classical_positive_roots()
            .iter()
            .filter(|r| beta.iter().all(|b| linalg::dot(r, b).is_zero()))
            .cloned()
            .collect();
        let simple = indecomposable(&positive);
        let components = classify(&simple);
        let mut against = beta.to_vec();
        against.extend(simple.iter().cloned());
        let h_perp = complement_in_root_span(g, &against);

        let half = |roots: &[QVector]| {
            roots.iter().fold(vec![Rational::zero(); dim], |acc, r| linalg::add(&acc, r)).iter().map(|x| x / q(2)).collect::<QVector>()
        };
        let rho = half(&positive);
        let rho_a = half(e.embedded_positive_roots());
        let rho_g = g.rho().finite;
        let proj_perp = linalg::projector(&simple, dim);
        let proj_h = linalg::projector(&h_perp, dim);
        let proj_tilde: QMatrix =
            proj_perp.iter().zip(&proj_h).map(|(a, b)| linalg::add(a, b)).collect();
        let defect_perp = linalg::sub(&rho, &linalg::mat_vec(&proj_perp, &rho_g));
        let defect_a = linalg::sub(&rho_a, &linalg::mat_vec(e.projector(), &rho_g));
        OrthogonalPair { positive, simple, components, h_perp, rho, defect_perp, defect_a, proj_perp, proj_tilde }
    }

    /// Positive roots of `g` orthogonal to `a`.
    pub fn positive_roots(&self) -> &[QVector] {
        &self.positive
    }

    pub fn simple_roots(&self) -> &[QVector] {
        &self.simple
    }

    /// Cartan types of the simple components of `a_perp`.
    pub fn components(&self) -> &[(Series, usize)] {
        &self.components
    }

    /// Primitive integer basis of the abelian part `h_perp`.
    pub fn h_perp_basis(&self) -> &[QVector] {
        &self.h_perp
    }

    pub fn is_trivial(&self) -> bool {
        self.positive.is_empty() && self.h_perp.is_empty()
    }

    pub fn rho(&self) -> &QVector {
        &self.rho
    }

    /// `rho_perp - pi_perp(rho_g)`.
    pub fn defect_perp(&self) -> &QVector {
        &self.defect_perp
    }

    /// `rho_a - pi_a(rho_g)`.
    pub fn defect_a(&self) -> &QVector {
        &self.defect_a
    }

    pub fn weyl_group_order(&self) -> u64 {
        self.components.iter().map(|&(s, r)| weyl_group_order(s, r)).product()
    }

    /// Projection onto `a_perp + h_perp`, the full orthogonal complement of `a` in `h*_g`.
    pub fn project_tilde(&self, w: &[Rational]) -> QVector {
        linalg::mat_vec(&self.proj_tilde, w)
    }

    pub fn project_perp(&self, w: &[Rational]) -> QVector {
        linalg::mat_vec(&self.proj_perp, w)
    }

    /// Dimension of the `a_perp` module with highest weight `lambda`; zero on walls.
    pub fn dimension(&self, lambda: &[Rational]) -> Rational {
        crate::rootdata::weyl_dimension(&self.positive, &self.rho, lambda)
    }

    pub fn is_dominant(&self, lambda: &[Rational]) -> bool {
        self.simple.iter().all(|b| linalg::dot(lambda, b) >= Rational::zero())
    }
}

impl OrthogonalPair {
    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = self.components.iter().map(|(s, r)| format!("{s:?}{r}")).collect();
        if !self.h_perp.is_empty() {
            parts.push(format!("u(1)^{}", self.h_perp.len()));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}
