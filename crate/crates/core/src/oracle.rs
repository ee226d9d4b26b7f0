//! Independent reference computations: weight multiplicities and peeling.
//!
//! These routines never touch the fan or the reduced singular element. They
//! compute the full weight diagram of the module, project it to the
//! subalgebra and remove irreducible characters of the subalgebra one at a
//! time, starting from the highest remaining weight.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::branch::BranchingTable;
use crate::embed::ResolvedEmbedding;
use crate::lattice::LabelPoint;
use crate::linalg::{self, q};
use crate::rootdata::{RootSystem, Weight};
use crate::singular::check_highest_weight;
use crate::{Error, Rational};

/// Weight multiplicities of an irreducible highest-weight module, truncated in grade for affine algebras.
#[derive(Clone, Debug)]
pub struct WeightDiagram {
    highest: Weight,
    mults: HashMap<Weight, BigInt>,
    floor: Option<i64>,
}

impl WeightDiagram {
    pub fn highest_weight(&self) -> &Weight {
        &self.highest
    }

    pub fn multiplicity(&self, w: &Weight) -> BigInt {
        self.mults.get(w).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &BigInt)> {
        self.mults.iter()
    }

    pub fn len(&self) -> usize {
        self.mults.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mults.is_empty()
    }

    pub fn floor(&self) -> Option<i64> {
        self.floor
    }

    /// Sum of all multiplicities (the dimension, for finite algebras).
    pub fn total(&self) -> BigInt {
        self.mults.values().sum()
    }
}

/// Freudenthal's formula, layer by layer below the highest weight.
///
/// Affine diagrams include the imaginary roots with their multiplicities and
/// stop `cutoff` grades below the highest weight.
pub fn freudenthal(mu: &Weight, rs: &RootSystem, cutoff: Option<u32>, limit: usize) -> Result<WeightDiagram, Error> {
    check_highest_weight(mu, rs)?;
    if rs.is_affine() && cutoff.is_none() {
        return Err(Error::MissingCutoff);
    }
    let top = linalg::to_i64(&mu.grade).unwrap_or(0);
    let floor = if rs.is_affine() { cutoff.map(|c| top - c as i64) } else { None };
    let floor_q = floor.map(q);
    let rho = rs.rho();
    let shifted_top = mu + &rho;
    let norm_top = rs.inner(&shifted_top, &shifted_top);
    let roots: Vec<(Weight, BigInt, i64)> = rs
        .positive_roots(cutoff)
        .into_iter()
        .map(|(a, m)| {
            let ht = linalg::to_i64(&rs.height(&a)).expect("roots have integral height");
            (a, BigInt::from(m), ht)
        })
        .collect();
    let simple: Vec<Weight> = rs.nodes().map(|i| rs.simple_root(i)).collect();

    let mut mults: HashMap<Weight, BigInt> = HashMap::from([(mu.clone(), BigInt::from(1))]);
    let mut layer = vec![mu.clone()];
    let mut depth = 0i64;
    while !layer.is_empty() {
        depth += 1;
        let mut candidates: HashSet<Weight> = HashSet::new();
        for w in &layer {
            for a in &simple {
                let c = w - a;
                if floor_q.as_ref().is_some_and(|f| &c.grade < f) {
                    continue;
                }
                candidates.insert(c);
            }
        }
        let mut next = Vec::new();
        for lam in candidates {
            let mut sum = Rational::zero();
            for (a, mult, ht) in &roots {
                let mut j = 1;
                while j * ht <= depth {
                    let up = &lam + &a.scaled(&q(j));
                    if let Some(m) = mults.get(&up) {
                        sum += rs.inner(&up, a) * Rational::from_integer(m * mult);
                    }
                    j += 1;
                }
            }
            let shifted = &lam + &rho;
            let den = &norm_top - rs.inner(&shifted, &shifted);
            if den.is_zero() {
                if !sum.is_zero() {
                    return Err(Error::NonIntegral(format!("Freudenthal denominator vanishes at {lam}")));
                }
                continue;
            }
            let m = q(2) * sum / den;
            if !m.is_integer() || m.is_negative() {
                return Err(Error::NonIntegral(format!("multiplicity {m} at {lam}")));
            }
            if m.is_zero() {
                continue;
            }
            mults.insert(lam.clone(), m.to_integer());
            next.push(lam);
            if mults.len() > limit {
                return Err(Error::ResourceLimit(format!("weight diagram exceeds {limit} weights")));
            }
        }
        layer = next;
    }
    Ok(WeightDiagram { highest: mu.clone(), mults, floor })
}

/// Branching by projecting the full weight diagram and peeling subalgebra characters.
pub fn brute_force_branch(
    mu: &Weight,
    e: &ResolvedEmbedding,
    cutoff: Option<u32>,
    limit: usize,
) -> Result<BranchingTable, Error> {
    let diagram = freudenthal(mu, e.g(), cutoff, limit)?;
    let mut remaining: HashMap<LabelPoint, BigInt> = HashMap::new();
    for (w, m) in diagram.iter() {
        *remaining.entry(e.labels(w)?).or_default() += m;
    }
    remaining.retain(|_, m| !m.is_zero());
    let a_level = e.a_level(&mu.level);
    let floor = diagram.floor();
    let order = e.order();
    let mut entries = BTreeMap::new();
    while let Some(top) = order.max(remaining.keys()).cloned() {
        let m = remaining[&top].clone();
        if m.is_negative() {
            return Err(Error::NegativeMultiplicity { point: top.to_string(), value: m.to_string() });
        }
        if !e.is_a_dominant(&top, &a_level) {
            return Err(Error::NotDominant(format!("highest remaining weight {top} of the projection")));
        }
        let nu = e.a_weight(&top, &a_level);
        let depth = floor.map(|f| (top.grade - f) as u32);
        let sub = freudenthal(&nu, e.a(), depth, limit)?;
        for (w, c) in sub.iter() {
            let key = e.a_root_labels(w);
            let v = remaining.entry(key.clone()).or_default();
            *v -= c * &m;
            if v.is_zero() {
                remaining.remove(&key);
            }
        }
        entries.insert(top, m);
    }
    Ok(BranchingTable::from_parts(entries, e.is_affine().then_some(a_level), floor))
}
