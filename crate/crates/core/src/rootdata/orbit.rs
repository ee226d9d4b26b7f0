use std::collections::{HashSet, VecDeque};

use num_traits::Signed;

use super::{RootSystem, Weight};
use crate::linalg::q;
use crate::{Error, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedOrbitPoint {
    pub weight: Weight,
    /// `(-1)^{length}` of the Weyl group element producing `weight`.
    pub sign: i8,
}

/// Breadth-first stream over the Weyl orbit of a strictly dominant weight.
///
/// Each step applies a simple reflection that lowers the point, so every
/// orbit element is reached exactly once and the grade never increases.
/// Affine orbits are cut at `grade_floor`.
pub struct SignedOrbit<'a> {
    rs: &'a RootSystem,
    queue: VecDeque<(Weight, i8)>,
    seen: HashSet<Weight>,
    floor: Option<Rational>,
}

pub fn weyl_orbit_signed<'a>(
    start: &Weight,
    rs: &'a RootSystem,
    grade_floor: Option<i64>,
) -> Result<SignedOrbit<'a>, Error> {
    if rs.is_affine() && grade_floor.is_none() {
        return Err(Error::MissingCutoff);
    }
    if !rs.nodes().all(|i| rs.pairing(start, i).is_positive()) {
        return Err(Error::NotDominant(format!("{start} is not strictly dominant")));
    }
    let floor = if rs.is_affine() { grade_floor.map(q) } else { None };
    let mut seen = HashSet::new();
    seen.insert(start.clone());
    Ok(SignedOrbit { rs, queue: VecDeque::from([(start.clone(), 1)]), seen, floor })
}

impl Iterator for SignedOrbit<'_> {
    type Item = SignedOrbitPoint;

    fn next(&mut self) -> Option<SignedOrbitPoint> {
        let (w, sign) = self.queue.pop_front()?;
        for i in self.rs.nodes() {
            if !self.rs.pairing(&w, i).is_positive() {
                continue;
            }
            let next = self.rs.reflect(&w, i);
            if self.floor.as_ref().is_some_and(|f| &next.grade < f) {
                continue;
            }
            if self.seen.insert(next.clone()) {
                self.queue.push_back((next, -sign));
            }
        }
        Some(SignedOrbitPoint { weight: w, sign })
    }
}
