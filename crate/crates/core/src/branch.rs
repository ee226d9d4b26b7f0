//! The recurrence for anomalous multiplicities and extraction of branching coefficients.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::embed::{EmbeddingSpec, OrthogonalPair, ResolvedEmbedding};
use crate::fan::Fan;
use crate::formal::FormalElement;
use crate::lattice::{LabelPoint, WeightOrder};
use crate::linalg;
use crate::rootdata::Weight;
use crate::singular::{check_highest_weight, coset_points, orbit_points, SingularElement};
use crate::{Error, Rational};

const MAX_WINDOW: usize = 50_000_000;

/// Anomalous multiplicities `k_xi` of the subalgebra weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnomalousTable {
    terms: FormalElement<LabelPoint>,
    floor: Option<i64>,
    evaluated: usize,
}

impl AnomalousTable {
    pub fn terms(&self) -> &FormalElement<LabelPoint> {
        &self.terms
    }

    pub fn coefficient(&self, p: &LabelPoint) -> BigInt {
        self.terms.coefficient(p)
    }

    pub fn floor(&self) -> Option<i64> {
        self.floor
    }

    /// Number of lattice points visited by the recurrence.
    pub fn evaluated(&self) -> usize {
        self.evaluated
    }

    /// `Psi[xi] + sum_gamma s(gamma) k[xi + gamma]`, which vanishes for every `xi` above the floor.
    pub fn residual(&self, sing: &SingularElement, fan: &Fan, xi: &LabelPoint) -> BigInt {
        fan.carrier()
            .iter()
            .fold(sing.coefficient(xi), |acc, (g, s)| acc + s * self.coefficient(&(xi + g)))
    }
}

#[derive(Clone, Debug)]
struct Bounds {
    lo: Vec<i64>,
    hi: Vec<i64>,
}

impl Bounds {
    fn of<'a>(points: impl IntoIterator<Item = &'a LabelPoint>) -> Option<Bounds> {
        let mut b: Option<Bounds> = None;
        for p in points {
            match &mut b {
                None => b = Some(Bounds { lo: p.labels.clone(), hi: p.labels.clone() }),
                Some(b) => {
                    for (i, &l) in p.labels.iter().enumerate() {
                        b.lo[i] = b.lo[i].min(l);
                        b.hi[i] = b.hi[i].max(l);
                    }
                }
            }
        }
        b
    }

    fn union(a: Option<Bounds>, b: Option<Bounds>) -> Option<Bounds> {
        match (a, b) {
            (None, x) | (x, None) => x,
            (Some(a), Some(b)) => Some(Bounds {
                lo: a.lo.iter().zip(&b.lo).map(|(x, y)| *x.min(y)).collect(),
                hi: a.hi.iter().zip(&b.hi).map(|(x, y)| *x.max(y)).collect(),
            }),
        }
    }

    fn size(&self) -> Option<usize> {
        self.lo.iter().zip(&self.hi).try_fold(1usize, |acc, (l, h)| {
            if h < l {
                Some(0)
            } else {
                acc.checked_mul((h - l + 1) as usize)
            }
        })
    }

    fn points(&self, grade: i64) -> Vec<LabelPoint> {
        let mut out = vec![Vec::new()];
        for (l, h) in self.lo.iter().zip(&self.hi) {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (*l..=*h).map(move |x| {
                        let mut p = prefix.clone();
                        p.push(x);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(|labels| LabelPoint::new(labels, grade)).collect()
    }
}

/// Run the recurrence `k_xi = -(Psi[xi - gamma0] + sum s(gamma + gamma0) k_{xi + gamma}) / s0`.
///
/// Grades are swept from the top down to the floor of the singular element.
/// Within a grade the candidate points are bounded coordinatewise by the
/// supports of the singular element, the fan and the already computed grades,
/// and are visited in decreasing order.
pub fn solve_recurrence(sing: &SingularElement, fan: &Fan, order: &WeightOrder) -> Result<AnomalousTable, Error> {
    let floor = sing.floor();
    let mut psi_by_grade: BTreeMap<i64, Vec<&LabelPoint>> = BTreeMap::new();
    for (p, _) in sing.terms().iter() {
        psi_by_grade.entry(p.grade).or_default().push(p);
    }
    let Some(&top) = psi_by_grade.keys().next_back() else {
        return Ok(AnomalousTable { terms: FormalElement::new(), floor, evaluated: 0 });
    };
    let bottom = floor.unwrap_or(top);
    if let (Some(f), Some(c)) = (floor, fan.cutoff()) {
        if (top - f) > c as i64 {
            return Err(Error::ResourceLimit(format!("fan cutoff {c} is below the required depth {}", top - f)));
        }
    } else if floor.is_some() {
        return Err(Error::MissingCutoff);
    }

    let mut fan_by_grade: BTreeMap<i64, Vec<&LabelPoint>> = BTreeMap::new();
    for (g, _) in fan.carrier().iter() {
        fan_by_grade.entry(g.grade).or_default().push(g);
    }
    let fan_bounds: BTreeMap<i64, Bounds> =
        fan_by_grade.iter().map(|(g, pts)| (*g, Bounds::of(pts.iter().copied()).unwrap())).collect();
    let base = fan_bounds
        .get(&0)
        .ok_or_else(|| Error::InvalidEmbedding("fan has no grade-0 part".into()))?
        .clone();

    let gamma0 = fan.gamma0();
    let s0 = fan.s0();
    let mut table: HashMap<LabelPoint, BigInt> = HashMap::new();
    let mut k_bounds: BTreeMap<i64, Bounds> = BTreeMap::new();
    let mut evaluated = 0usize;

    for t in (bottom..=top).rev() {
        let mut r = psi_by_grade.get(&t).and_then(|pts| Bounds::of(pts.iter().copied()));
        for (&n, fb) in fan_bounds.range(1..) {
            if let Some(kb) = k_bounds.get(&(t + n)) {
                let shifted = Bounds {
                    lo: kb.lo.iter().zip(&fb.hi).map(|(k, f)| k - f).collect(),
                    hi: kb.hi.iter().zip(&fb.lo).map(|(k, f)| k - f).collect(),
                };
                r = Bounds::union(r, Some(shifted));
            }
        }
        let Some(r) = r else { continue };
        let window = Bounds {
            lo: r.lo.iter().zip(&base.hi).map(|(x, f)| x + f).collect(),
            hi: r.hi.iter().zip(&base.lo).map(|(x, f)| x + f).collect(),
        };
        let size = window.size().ok_or_else(|| Error::ResourceLimit("recurrence window overflows".into()))?;
        if size == 0 {
            continue;
        }
        if evaluated + size > MAX_WINDOW {
            return Err(Error::ResourceLimit(format!("recurrence window exceeds {MAX_WINDOW} points")));
        }
        evaluated += size;
        let mut points = window.points(t);
        order.sort_descending(&mut points);
        let mut support = Vec::new();
        for xi in points {
            let mut acc = sing.coefficient(&(&xi - gamma0));
            for (g, s) in fan.shifted() {
                if let Some(k) = table.get(&(&xi + g)) {
                    acc += s * k;
                }
            }
            if acc.is_zero() {
                continue;
            }
            let (quot, rem) = (-&acc).div_rem(s0);
            if !rem.is_zero() {
                return Err(Error::InexactDivision {
                    point: xi.to_string(),
                    numerator: (-acc).to_string(),
                    divisor: s0.to_string(),
                });
            }
            support.push(xi.clone());
            table.insert(xi, quot);
        }
        if let Some(b) = Bounds::of(&support) {
            k_bounds.insert(t, b);
        }
    }
    let terms = table.into_iter().collect();
    Ok(AnomalousTable { terms, floor, evaluated })
}

/// One row of a branching table for affine algebras: `sum_n c_n q^n` starting at the leading grade.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchingFunction {
    pub labels: Vec<i64>,
    /// Grade of the highest occurrence; the series starts there.
    pub leading_grade: i64,
    /// Coefficients for grades `leading_grade, leading_grade - 1, ...` down to the floor.
    pub coefficients: Vec<BigInt>,
}

/// Multiplicities of the irreducible `a`-modules in the restriction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchingTable {
    entries: BTreeMap<LabelPoint, BigInt>,
    a_level: Option<Rational>,
    floor: Option<i64>,
}

/// Keep the dominant part of the anomalous table.
pub fn extract_branching(anom: &AnomalousTable, e: &ResolvedEmbedding, g_level: &Rational) -> Result<BranchingTable, Error> {
    let a_level = e.a_level(g_level);
    let mut entries = BTreeMap::new();
    for (p, k) in anom.terms().iter() {
        if !e.is_a_dominant(p, &a_level) {
            continue;
        }
        if k.is_negative() {
            return Err(Error::NegativeMultiplicity { point: p.to_string(), value: k.to_string() });
        }
        entries.insert(p.clone(), k.clone());
    }
    Ok(BranchingTable { entries, a_level: e.is_affine().then_some(a_level), floor: anom.floor() })
}

impl BranchingTable {
    pub(crate) fn from_parts(entries: BTreeMap<LabelPoint, BigInt>, a_level: Option<Rational>, floor: Option<i64>) -> Self {
        BranchingTable { entries, a_level, floor }
    }

    pub fn entries(&self) -> &BTreeMap<LabelPoint, BigInt> {
        &self.entries
    }

    pub fn coefficient(&self, labels: &[i64], grade: i64) -> BigInt {
        self.entries.get(&LabelPoint::new(labels.to_vec(), grade)).cloned().unwrap_or_default()
    }

    /// Level of the subalgebra modules (affine only).
    pub fn a_level(&self) -> Option<&Rational> {
        self.a_level.as_ref()
    }

    pub fn floor(&self) -> Option<i64> {
        self.floor
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Group entries by finite labels; each group becomes a `q`-series.
    pub fn branching_functions(&self) -> Vec<BranchingFunction> {
        let mut groups: BTreeMap<&Vec<i64>, BTreeMap<i64, &BigInt>> = BTreeMap::new();
        for (p, c) in &self.entries {
            groups.entry(&p.labels).or_default().insert(p.grade, c);
        }
        groups
            .into_iter()
            .map(|(labels, by_grade)| {
                let leading = *by_grade.keys().next_back().unwrap();
                let last = self.floor.unwrap_or(leading);
                let coefficients = (last..=leading)
                    .rev()
                    .map(|g| by_grade.get(&g).map(|c| (*c).clone()).unwrap_or_default())
                    .collect();
                BranchingFunction { labels: labels.clone(), leading_grade: leading, coefficients }
            })
            .collect()
    }

    /// Total coefficient of each label class, summed over grades.
    pub fn class_totals(&self) -> BTreeMap<Vec<i64>, BigInt> {
        let mut out: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
        for (p, c) in &self.entries {
            *out.entry(p.labels.clone()).or_default() += c;
        }
        out
    }
}

/// Minimal coset representatives of `W_perp \ W` as reduced words, shared by all highest weights.
#[derive(Clone, Debug)]
struct CosetCache {
    words: Vec<Vec<usize>>,
}

impl CosetCache {
    fn new(e: &ResolvedEmbedding, o: &OrthogonalPair) -> Self {
        let g = e.g();
        let rho = g.rho();
        let mut seen = HashSet::from([rho.clone()]);
        let mut queue = VecDeque::from([(rho.clone(), Vec::new())]);
        let mut words = Vec::new();
        while let Some((x, word)) = queue.pop_front() {
            for i in g.nodes() {
                if g.pairing(&x, i).is_positive() {
                    let next = g.reflect(&x, i);
                    if seen.insert(next.clone()) {
                        let mut w = word.clone();
                        w.push(i);
                        queue.push_back((next, w));
                    }
                }
            }
            if o.positive_roots().iter().all(|b| linalg::dot(&x.finite, b).is_positive()) {
                words.push(word);
            }
        }
        CosetCache { words }
    }

    fn points(&self, mu: &Weight, e: &ResolvedEmbedding) -> Vec<(Weight, i8)> {
        let g = e.g();
        let start = mu + &g.rho();
        self.words
            .iter()
            .map(|word| {
                let x = word.iter().fold(start.clone(), |x, &i| g.reflect(&x, i));
                (x, if word.len() % 2 == 0 { 1 } else { -1 })
            })
            .collect()
    }
}

/// Branching engine for one embedding: the fan is built once and reused for every module.
#[derive(Clone, Debug)]
pub struct Brancher {
    e: ResolvedEmbedding,
    o: OrthogonalPair,
    fan: Fan,
    cutoff: Option<u32>,
    cache: Option<CosetCache>,
}

impl Brancher {
    pub fn new(spec: &EmbeddingSpec, cutoff: Option<u32>) -> Result<Self, Error> {
        let e = ResolvedEmbedding::new(spec)?;
        Self::from_resolved(e, cutoff)
    }

    pub fn from_resolved(e: ResolvedEmbedding, cutoff: Option<u32>) -> Result<Self, Error> {
        let cutoff = if e.is_affine() { Some(cutoff.ok_or(Error::MissingCutoff)?) } else { None };
        let o = OrthogonalPair::new(&e);
        let fan = Fan::build(&e, &o, cutoff)?;
        Ok(Brancher { e, o, fan, cutoff, cache: None })
    }

    /// Memoize coset representatives across highest weights (finite algebras only).
    pub fn with_coset_cache(mut self) -> Self {
        if !self.e.is_affine() {
            self.cache = Some(CosetCache::new(&self.e, &self.o));
        }
        self
    }

    pub fn embedding(&self) -> &ResolvedEmbedding {
        &self.e
    }

    pub fn orthogonal(&self) -> &OrthogonalPair {
        &self.o
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn cutoff(&self) -> Option<u32> {
        self.cutoff
    }

    pub fn g(&self) -> &crate::RootSystem {
        self.e.g()
    }

    pub fn a(&self) -> &crate::RootSystem {
        self.e.a()
    }

    pub fn singular(&self, mu: &Weight) -> Result<SingularElement, Error> {
        let points = match &self.cache {
            Some(cache) => {
                check_highest_weight(mu, self.e.g())?;
                coset_points(cache.points(mu, &self.e), &self.e, &self.o)?
            }
            None => coset_points(orbit_points(mu, self.e.g(), self.cutoff)?, &self.e, &self.o)?,
        };
        Ok(SingularElement::from_points(mu, &points, self.cutoff))
    }

    pub fn anomalous(&self, mu: &Weight) -> Result<AnomalousTable, Error> {
        let sing = self.singular(mu)?;
        solve_recurrence(&sing, &self.fan, self.e.order())
    }

    pub fn branch(&self, mu: &Weight) -> Result<BranchingTable, Error> {
        let anom = self.anomalous(mu)?;
        extract_branching(&anom, &self.e, &mu.level)
    }
}

/// Branching coefficients of the module with highest weight `mu`.
pub fn branch(mu: &Weight, spec: &EmbeddingSpec, cutoff: Option<u32>) -> Result<BranchingTable, Error> {
    Brancher::new(spec, cutoff)?.branch(mu)
}
