use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{AlgebraSpec, Series, Weight};
use crate::linalg::{self, q, QVector};
use crate::{Error, Rational};

/// Root data of a classical algebra in the epsilon basis.
///
/// Simple roots are indexed by Dynkin node: `1..=rank` for the classical
/// nodes and `0` for the affine node `delta - theta`. The invariant form is
/// normalized so that long roots have squared length 2.
#[derive(Clone, Debug)]
pub struct RootSystem {
    spec: AlgebraSpec,
    form_scale: Rational,
    simple: Vec<QVector>,
    classical_positive: Vec<QVector>,
    theta: QVector,
    fundamental: Vec<QVector>,
    rho_bar: QVector,
    rho_coweight: QVector,
}

impl RootSystem {
    pub fn new(spec: AlgebraSpec) -> Self {
        let r = spec.rank;
        let n = spec.ambient_dim();
        let e = |i: usize| -> QVector { (0..n).map(|k| q((k == i) as i64)).collect() };
        let comb = |i: usize, si: i64, j: usize, sj: i64| -> QVector {
            (0..n).map(|k| q(si * (k == i) as i64 + sj * (k == j) as i64)).collect()
        };
        let mut simple: Vec<QVector> = (0..r.saturating_sub(1)).map(|i| comb(i, 1, i + 1, -1)).collect();
        let last = match spec.series {
            Series::A => comb(r - 1, 1, r, -1),
            Series::B => e(r - 1),
            Series::C => linalg::scale(&e(r - 1), &q(2)),
            Series::D => comb(r - 2, 1, r - 1, 1),
        };
        simple.push(last);

        let mut positive = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                positive.push(comb(i, 1, j, -1));
                if spec.series != Series::A {
                    positive.push(comb(i, 1, j, 1));
                }
            }
            match spec.series {
                Series::B => positive.push(e(i)),
                Series::C => positive.push(linalg::scale(&e(i), &q(2))),
                _ => {}
            }
        }
        let theta = match (spec.series, r) {
            (Series::A, _) => comb(0, 1, n - 1, -1),
            (Series::B, 1) => e(0),
            (Series::C, _) => linalg::scale(&e(0), &q(2)),
            _ => comb(0, 1, 1, 1),
        };
        let form_scale = q(2) / linalg::dot(&theta, &theta);

        let cartan: Vec<QVector> = simple
            .iter()
            .map(|a| simple.iter().map(|b| q(2) * linalg::dot(a, b) / linalg::dot(b, b)).collect())
            .collect();
        let inv = linalg::inverse(&cartan).expect("Cartan matrix is invertible");
        let fundamental: Vec<QVector> = inv
            .iter()
            .map(|row| {
                let mut w = vec![Rational::zero(); n];
                for (c, a) in row.iter().zip(&simple) {
                    w = linalg::add(&w, &linalg::scale(a, c));
                }
                w
            })
            .collect();
        let mut rho_bar = vec![Rational::zero(); n];
        let mut rho_coweight = vec![Rational::zero(); n];
        for (w, a) in fundamental.iter().zip(&simple) {
            rho_bar = linalg::add(&rho_bar, w);
            rho_coweight = linalg::add(&rho_coweight, &linalg::scale(w, &(q(2) / linalg::dot(a, a))));
        }
        RootSystem { spec, form_scale, simple, classical_positive: positive, theta, fundamental, rho_bar, rho_coweight }
    }

    pub fn spec(&self) -> AlgebraSpec {
        self.spec
    }

    pub fn rank(&self) -> usize {
        self.spec.rank
    }

    pub fn is_affine(&self) -> bool {
        self.spec.affine
    }

    pub fn dim(&self) -> usize {
        self.spec.ambient_dim()
    }

    /// Factor converting the Euclidean dot product to the normalized invariant form.
    pub fn form_scale(&self) -> &Rational {
        &self.form_scale
    }

    pub fn dual_coxeter(&self) -> Rational {
        q(self.spec.dual_coxeter() as i64)
    }

    pub fn nodes(&self) -> std::ops::RangeInclusive<usize> {
        if self.is_affine() {
            0..=self.rank()
        } else {
            1..=self.rank()
        }
    }

    pub fn classical_simple_roots(&self) -> &[QVector] {
        &self.simple
    }

    pub fn classical_positive_roots(&self) -> &[QVector] {
        &self.classical_positive
    }

    pub fn highest_root(&self) -> &QVector {
        &self.theta
    }

    pub fn fundamental_weights(&self) -> &[QVector] {
        &self.fundamental
    }

    pub fn simple_root(&self, node: usize) -> Weight {
        if node == 0 {
            Weight::new(self.theta.iter().map(|x| -x).collect(), Rational::zero(), Rational::one())
        } else {
            Weight::finite(self.simple[node - 1].clone())
        }
    }

    pub fn rho(&self) -> Weight {
        let level = if self.is_affine() { self.dual_coxeter() } else { Rational::zero() };
        Weight::new(self.rho_bar.clone(), level, Rational::zero())
    }

    pub fn delta(&self) -> Weight {
        Weight::delta(self.dim())
    }

    /// Normalized invariant form, including the level/grade pairing for affine weights.
    pub fn inner(&self, a: &Weight, b: &Weight) -> Rational {
        &self.form_scale * linalg::dot(&a.finite, &b.finite) + &a.level * &b.grade + &a.grade * &b.level
    }

    /// `<w, alpha_node^vee>`.
    pub fn pairing(&self, w: &Weight, node: usize) -> Rational {
        if node == 0 {
            &w.level - coroot_pairing(&w.finite, &self.theta)
        } else {
            coroot_pairing(&w.finite, &self.simple[node - 1])
        }
    }

    pub fn reflect(&self, w: &Weight, node: usize) -> Weight {
        let c = self.pairing(w, node);
        if c.is_zero() {
            return w.clone();
        }
        w - &self.simple_root(node).scaled(&c)
    }

    pub fn is_dominant(&self, w: &Weight) -> bool {
        self.nodes().all(|i| !self.pairing(w, i).is_negative())
    }

    /// Whether an ambient vector lies in `h*` (the sum-zero hyperplane for `A_r`).
    pub fn in_weight_space(&self, v: &[Rational]) -> bool {
        v.len() == self.dim() && (self.spec.series != Series::A || v.iter().sum::<Rational>().is_zero())
    }

    pub fn is_integral(&self, w: &Weight) -> bool {
        self.nodes().all(|i| self.pairing(w, i).is_integer())
    }

    /// Finite Dynkin labels `<w, alpha_i^vee>` for `i = 1..=rank`.
    pub fn to_dynkin_labels(&self, w: &Weight) -> Vec<Rational> {
        (1..=self.rank()).map(|i| self.pairing(w, i)).collect()
    }

    pub fn from_dynkin_labels(&self, labels: &[Rational], level: Rational, grade: Rational) -> Weight {
        let mut fin = vec![Rational::zero(); self.dim()];
        for (l, w) in labels.iter().zip(&self.fundamental) {
            fin = linalg::add(&fin, &linalg::scale(w, l));
        }
        Weight::new(fin, level, grade)
    }

    pub fn from_labels(&self, labels: &[i64], level: i64, grade: i64) -> Weight {
        let l: Vec<Rational> = labels.iter().map(|&x| q(x)).collect();
        self.from_dynkin_labels(&l, q(level), q(grade))
    }

    /// Comarks `<omega_i, theta^vee>`.
    pub fn comarks(&self) -> Vec<Rational> {
        self.fundamental.iter().map(|w| coroot_pairing(w, &self.theta)).collect()
    }

    /// Sum of simple-root coefficients, including the affine node for affine roots.
    pub fn height(&self, w: &Weight) -> Rational {
        let classical = linalg::add(&w.finite, &linalg::scale(&self.theta, &w.grade));
        linalg::dot(&classical, &self.rho_coweight) + &w.grade
    }

    /// Positive roots with multiplicities. Affine roots are generated up to `max_grade`.
    pub fn positive_roots(&self, max_grade: Option<u32>) -> Vec<(Weight, u32)> {
        let mut out: Vec<(Weight, u32)> =
            self.classical_positive.iter().map(|a| (Weight::finite(a.clone()), 1)).collect();
        if self.is_affine() {
            for n in 1..=max_grade.unwrap_or(0) {
                let g = q(n as i64);
                for a in &self.classical_positive {
                    out.push((Weight::finite(a.clone()).with_grade(g.clone()), 1));
                    out.push((Weight::finite(a.iter().map(|x| -x).collect()).with_grade(g.clone()), 1));
                }
                out.push((Weight::delta(self.dim()).scaled(&g), self.rank() as u32));
            }
        }
        out
    }

    /// Weyl dimension of the finite-dimensional module with highest weight `w`.
    pub fn weyl_dim(&self, w: &Weight) -> Result<BigInt, Error> {
        if self.is_affine() {
            return Err(Error::InvalidWeight("dimension requested for an affine module".into()));
        }
        if !self.is_dominant(w) || !self.is_integral(w) {
            return Err(Error::NotDominant(w.to_string()));
        }
        Ok(weyl_dimension(&self.classical_positive, &self.rho_bar, &w.finite).to_integer())
    }
}

/// `<x, a^vee>` for an ambient vector `a`.
pub fn coroot_pairing(x: &[Rational], a: &[Rational]) -> Rational {
    q(2) * linalg::dot(x, a) / linalg::dot(a, a)
}

/// Product over `positive` of `(lambda + rho, a) / (rho, a)`.
pub fn weyl_dimension(positive: &[QVector], rho: &[Rational], lambda: &[Rational]) -> Rational {
    let shifted = linalg::add(lambda, rho);
    positive
        .iter()
        .fold(Rational::one(), |acc, a| acc * linalg::dot(&shifted, a) / linalg::dot(rho, a))
}
