use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::{Signed, Zero};

use super::{EmbeddingKind, EmbeddingSpec};
use crate::lattice::{LabelPoint, WeightOrder};
use crate::linalg::{self, q, QMatrix, QVector};
use crate::rootdata::{cartan_matrix, RootSystem, Weight};
use crate::{Error, Rational};

/// An embedding with all root data of `a` expressed inside the ambient space of `g`.
#[derive(Clone, Debug)]
pub struct ResolvedEmbedding {
    spec: EmbeddingSpec,
    g: RootSystem,
    a: RootSystem,
    simple: Vec<QVector>,
    coroots: Vec<QVector>,
    positive: Vec<QVector>,
    projector: QMatrix,
    index: Rational,
    order: WeightOrder,
}

impl ResolvedEmbedding {
    pub fn new(spec: &EmbeddingSpec) -> Result<Self, Error> {
        if spec.g.affine != spec.a.affine {
            return Err(Error::InvalidEmbedding("g and a must both be finite or both affine".into()));
        }
        let g = RootSystem::new(spec.g);
        let a = RootSystem::new(spec.a);
        let simple = match &spec.kind {
            EmbeddingKind::Regular { drop, keep } => regular_simple_roots(&g, &a, drop, keep.as_deref())?,
            EmbeddingKind::Special { embedded_simple_roots, projection } => {
                special_simple_roots(&g, &a, embedded_simple_roots, projection.as_deref())?
            }
        };
        let positive: Vec<QVector> = a
            .classical_positive_roots()
            .iter()
            .map(|root| {
                let c = linalg::solve_in_span(a.classical_simple_roots(), root).expect("root lies in the root span");
                combine(&c, &simple, g.dim())
            })
            .collect();
        let theta_c = linalg::solve_in_span(a.classical_simple_roots(), a.highest_root()).unwrap();
        let theta = combine(&theta_c, &simple, g.dim());
        let index = q(2) / (g.form_scale() * linalg::dot(&theta, &theta));
        let coroots = simple.iter().map(|b| linalg::scale(b, &(q(2) / linalg::dot(b, b)))).collect();
        let projector = linalg::projector(&simple, g.dim());
        let order = WeightOrder::new(&a);
        Ok(ResolvedEmbedding { spec: spec.clone(), g, a, simple, coroots, positive, projector, index, order })
    }

    pub fn spec(&self) -> &EmbeddingSpec {
        &self.spec
    }

    pub fn g(&self) -> &RootSystem {
        &self.g
    }

    pub fn a(&self) -> &RootSystem {
        &self.a
    }

    pub fn is_affine(&self) -> bool {
        self.g.is_affine()
    }

    /// Simple roots of `a` inside `h*_g`, in the Dynkin order of `a`.
    pub fn embedded_simple_roots(&self) -> &[QVector] {
        &self.simple
    }

    pub fn embedded_positive_roots(&self) -> &[QVector] {
        &self.positive
    }

    /// Orthogonal projector onto the span of the embedded roots of `a`.
    pub fn projector(&self) -> &QMatrix {
        &self.projector
    }

    /// Embedding index: the level of `a` induced by level one of `g`.
    pub fn index(&self) -> &Rational {
        &self.index
    }

    pub fn order(&self) -> &WeightOrder {
        &self.order
    }

    pub fn a_level(&self, g_level: &Rational) -> Rational {
        g_level * &self.index
    }

    /// Dynkin labels of the projection of `w` to `a`, with the grade of `w`.
    pub fn labels(&self, w: &Weight) -> Result<LabelPoint, Error> {
        let labels = self
            .coroots
            .iter()
            .map(|c| {
                let x = linalg::dot(&w.finite, c);
                linalg::to_i64(&x).ok_or_else(|| Error::NonIntegral(format!("label {} of {w}", linalg::fmt_rational(&x))))
            })
            .collect::<Result<_, _>>()?;
        let grade = linalg::to_i64(&w.grade).ok_or_else(|| Error::NonIntegral(format!("grade of {w}")))?;
        Ok(LabelPoint::new(labels, grade))
    }

    /// Orthogonal projection of a weight of `g` to `a`, still in the ambient coordinates of `g`.
    pub fn project(&self, w: &Weight) -> Weight {
        Weight::new(linalg::mat_vec(&self.projector, &w.finite), self.a_level(&w.level), w.grade.clone())
    }

    /// The weight of `a` (in its own coordinates) with the given labels.
    pub fn a_weight(&self, p: &LabelPoint, a_level: &Rational) -> Weight {
        let labels: Vec<Rational> = p.labels.iter().map(|&l| q(l)).collect();
        let level = if self.is_affine() { a_level.clone() } else { Rational::zero() };
        self.a.from_dynkin_labels(&labels, level, q(p.grade))
    }

    pub fn is_a_dominant(&self, p: &LabelPoint, a_level: &Rational) -> bool {
        if p.labels.iter().any(|&l| l < 0) {
            return false;
        }
        if !self.is_affine() {
            return true;
        }
        let theta = self.a.comarks().iter().zip(&p.labels).fold(Rational::zero(), |acc, (c, &l)| acc + c * q(l));
        !(a_level - theta).is_negative()
    }

    /// Labels of a root of `a` given in its own coordinates.
    pub fn a_root_labels(&self, root: &Weight) -> LabelPoint {
        let labels = self
            .a
            .to_dynkin_labels(root)
            .iter()
            .map(|x| linalg::to_i64(x).expect("roots have integral labels"))
            .collect();
        LabelPoint::new(labels, linalg::to_i64(&root.grade).expect("integral grade"))
    }
}

/// Basis of the vectors in the root span of `g` orthogonal to every vector in `against`.
pub(crate) fn complement_in_root_span(g: &RootSystem, against: &[QVector]) -> Vec<QVector> {
    let simple = g.classical_simple_roots();
    let m: QMatrix = against.iter().map(|b| simple.iter().map(|a| linalg::dot(a, b)).collect()).collect();
    linalg::nullspace(&m, simple.len())
        .into_iter()
        .map(|c| linalg::primitive(&combine(&c, simple, g.dim())))
        .collect()
}

fn combine(c: &[Rational], vectors: &[QVector], dim: usize) -> QVector {
    let mut v = vec![Rational::zero(); dim];
    for (ci, b) in c.iter().zip(vectors) {
        v = linalg::add(&v, &linalg::scale(b, ci));
    }
    v
}

fn regular_simple_roots(
    g: &RootSystem,
    a: &RootSystem,
    drop: &[usize],
    keep: Option<&[usize]>,
) -> Result<Vec<QVector>, Error> {
    let r = g.rank();
    let nodes: Vec<usize> = match keep {
        Some(k) => k.to_vec(),
        None if drop.is_empty() => (1..=r).collect(),
        None => (0..=r).filter(|i| !drop.contains(i)).collect(),
    };
    if let Some(&bad) = nodes.iter().chain(drop).find(|&&i| i > r) {
        return Err(Error::InvalidEmbedding(format!("node {bad} is outside the extended diagram of {}", g.spec())));
    }
    let extended = |i: usize| -> QVector {
        if i == 0 {
            g.highest_root().iter().map(|x| -x).collect()
        } else {
            g.classical_simple_roots()[i - 1].clone()
        }
    };
    let survivors: Vec<QVector> = nodes.iter().map(|&i| extended(i)).collect();
    if linalg::rank(&survivors) < survivors.len() {
        return Err(Error::InvalidEmbedding("surviving nodes are linearly dependent".into()));
    }
    let target = cartan_matrix(a.classical_simple_roots());
    if keep.is_none() && drop.is_empty() && cartan_matrix(g.classical_simple_roots()) == target {
        return Ok(g.classical_simple_roots().to_vec());
    }
    let mut matches = Vec::new();
    for component in components(&survivors) {
        let pi: Vec<QVector> = component.iter().map(|&i| survivors[i].clone()).collect();
        if pi.len() != a.rank() {
            continue;
        }
        let simple = positive_simple_system(g, &pi);
        if let Some(ordered) = match_cartan(&simple, &target) {
            matches.push(ordered);
        }
    }
    match matches.len() {
        0 => Err(Error::InvalidEmbedding(format!(
            "no component of the surviving nodes {nodes:?} of {} has type {}",
            g.spec(),
            a.spec().finite()
        ))),
        1 => Ok(matches.pop().unwrap()),
        _ => Err(Error::InvalidEmbedding(format!(
            "several components have type {}; select one with `keep`",
            a.spec().finite()
        ))),
    }
}

fn components(roots: &[QVector]) -> Vec<Vec<usize>> {
    let n = roots.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let x = comp[i];
            for j in 0..n {
                if !seen[j] && !linalg::dot(&roots[x], &roots[j]).is_zero() {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Simple roots, positive with respect to `g`, of the root subsystem generated by `pi`.
fn positive_simple_system(g: &RootSystem, pi: &[QVector]) -> Vec<QVector> {
    let mut roots: BTreeSet<QVector> = pi.iter().cloned().collect();
    roots.extend(pi.iter().map(|a| a.iter().map(|x| -x).collect::<QVector>()));
    loop {
        let mut added = Vec::new();
        for r in &roots {
            for s in pi {
                let c = q(2) * linalg::dot(r, s) / linalg::dot(s, s);
                let image = linalg::sub(r, &linalg::scale(s, &c));
                if !roots.contains(&image) {
                    added.push(image);
                }
            }
        }
        if added.is_empty() {
            break;
        }
        roots.extend(added);
    }
    let g_positive: BTreeSet<&QVector> = g.classical_positive_roots().iter().collect();
    let positive: Vec<QVector> = roots.into_iter().filter(|r| g_positive.contains(r)).collect();
    indecomposable(&positive)
}

/// Positive roots that are not a sum of two others.
pub(crate) fn indecomposable(positive: &[QVector]) -> Vec<QVector> {
    let set: BTreeSet<&QVector> = positive.iter().collect();
    positive
        .iter()
        .filter(|r| !positive.iter().any(|x| x != *r && set.contains(&linalg::sub(r, x))))
        .cloned()
        .collect()
}

fn match_cartan(simple: &[QVector], target: &[Vec<i64>]) -> Option<Vec<QVector>> {
    let n = simple.len();
    (0..n).permutations(n).find_map(|perm| {
        let ordered: Vec<QVector> = perm.iter().map(|&i| simple[i].clone()).collect();
        (cartan_matrix(&ordered) == target).then_some(ordered)
    })
}

fn special_simple_roots(
    g: &RootSystem,
    a: &RootSystem,
    roots: &[Vec<Rational>],
    projection: Option<&[Vec<Rational>]>,
) -> Result<Vec<QVector>, Error> {
    if roots.len() != a.rank() || roots.iter().any(|r| r.len() != g.dim()) {
        return Err(Error::InvalidEmbedding(format!(
            "expected {} simple roots with {} coordinates",
            a.rank(),
            g.dim()
        )));
    }
    for r in roots {
        if linalg::solve_in_span(g.classical_simple_roots(), r).is_none() {
            return Err(Error::InvalidEmbedding(format!("{} is not in the root span of g", linalg::fmt_vector(r))));
        }
    }
    if cartan_matrix_checked(roots)? != cartan_matrix(a.classical_simple_roots()) {
        return Err(Error::InvalidEmbedding(format!(
            "embedded simple roots do not have the Cartan matrix of {}",
            a.spec().finite()
        )));
    }
    if let Some(p) = projection {
        check_projection(g, a, roots, p)?;
    }
    Ok(roots.to_vec())
}

fn cartan_matrix_checked(roots: &[QVector]) -> Result<Vec<Vec<i64>>, Error> {
    roots
        .iter()
        .map(|x| {
            roots
                .iter()
                .map(|y| {
                    let c = q(2) * linalg::dot(x, y) / linalg::dot(y, y);
                    linalg::to_i64(&c).ok_or_else(|| Error::InvalidEmbedding("non-integral Cartan entry".into()))
                })
                .collect()
        })
        .collect()
}

fn check_projection(g: &RootSystem, a: &RootSystem, roots: &[QVector], p: &[Vec<Rational>]) -> Result<(), Error> {
    if p.len() != a.dim() || p.iter().any(|row| row.len() != g.dim()) {
        return Err(Error::InvalidEmbedding(format!("projection matrix must be {}x{}", a.dim(), g.dim())));
    }
    for (beta, alpha) in roots.iter().zip(a.classical_simple_roots()) {
        if &linalg::mat_vec(p, beta) != alpha {
            return Err(Error::InvalidEmbedding("projection does not map embedded simple roots to simple roots of a".into()));
        }
    }
    for v in complement_in_root_span(g, roots) {
        if !linalg::is_zero(&linalg::mat_vec(p, &v)) {
            return Err(Error::InvalidEmbedding("projection does not vanish on the orthogonal complement of a".into()));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_in_b2_long_root() {
        let e = ResolvedEmbedding::new(&EmbeddingSpec::regular("B2", "A1", &[1, 2]).unwrap()).unwrap();
        assert_eq!(e.embedded_simple_roots(), &[vec![q(1), q(1)]]);
        assert_eq!(e.index(), &q(1));
        let w = e.g().from_labels(&[1, 0], 0, 0);
        assert_eq!(e.labels(&w).unwrap(), LabelPoint::new(vec![1], 0));
    }

    #[test]
    fn b2_in_b4() {
        let e = ResolvedEmbedding::new(&EmbeddingSpec::regular("B4", "B2", &[2]).unwrap()).unwrap();
        assert_eq!(
            e.embedded_simple_roots(),
            &[vec![q(0), q(0), q(1), q(-1)], vec![q(0), q(0), q(0), q(1)]]
        );
        assert_eq!(e.index(), &q(1));
        assert_eq!(e.embedded_positive_roots().len(), 4);
    }

    #[test]
    fn principal_a1_in_a2_has_index_four() {
        let e = ResolvedEmbedding::new(&EmbeddingSpec::principal_a1_in_a2(true)).unwrap();
        assert_eq!(e.index(), &q(4));
        let w = e.g().from_labels(&[1, 0], 1, 0);
        assert_eq!(e.labels(&w).unwrap(), LabelPoint::new(vec![2], 0));
        assert_eq!(e.a_level(&q(1)), q(4));
    }

    #[test]
    fn identity_embedding() {
        let e = ResolvedEmbedding::new(&EmbeddingSpec::regular("C3", "C3", &[]).unwrap()).unwrap();
        assert_eq!(e.embedded_simple_roots(), e.g().classical_simple_roots());
        let w = e.g().from_labels(&[2, 0, 1], 0, 0);
        assert_eq!(e.project(&w), w);
    }

    #[test]
    fn rejects_mismatches() {
        assert!(ResolvedEmbedding::new(&EmbeddingSpec::regular("B4", "A3", &[2]).unwrap()).is_err());
        assert!(ResolvedEmbedding::new(&EmbeddingSpec::regular("B4^", "B2", &[2]).unwrap()).is_err());
        assert!(ResolvedEmbedding::new(&EmbeddingSpec::regular("B4", "B2", &[7]).unwrap()).is_err());
        let bad = EmbeddingSpec::special("A2", "A1", vec![vec![q(1), q(0), q(0)]]).unwrap();
        assert!(ResolvedEmbedding::new(&bad).is_err());
        let mut wrong_proj = EmbeddingSpec::principal_a1_in_a2(false);
        if let EmbeddingKind::Special { projection, .. } = &mut wrong_proj.kind {
            *projection = Some(vec![vec![q(1), q(1), q(-1)], vec![q(-1), q(0), q(1)]]);
        }
        assert!(ResolvedEmbedding::new(&wrong_proj).is_err());
    }

    #[test]
    fn ambiguous_components_need_keep() {
        let spec = EmbeddingSpec::regular("D4", "A1", &[2]).unwrap();
        assert!(ResolvedEmbedding::new(&spec).is_err());
        let keep = EmbeddingSpec::regular_keep("D4", "A1", &[3]).unwrap();
        assert_eq!(ResolvedEmbedding::new(&keep).unwrap().embedded_simple_roots().len(), 1);
    }
}
