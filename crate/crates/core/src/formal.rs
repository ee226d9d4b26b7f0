//! Finitely supported integer combinations of formal exponentials.

use std::collections::BTreeMap;
use std::ops::Add;

use num_bigint::BigInt;
use num_traits::Zero;

/// `sum_k c_k e^k` with integer coefficients; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalElement<K: Ord> {
    terms: BTreeMap<K, BigInt>,
}

impl<K: Ord> Default for FormalElement<K> {
    fn default() -> Self {
        FormalElement { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> FormalElement<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn monomial(k: K, c: BigInt) -> Self {
        let mut f = Self::new();
        f.add_term(k, c);
        f
    }

    pub fn add_term(&mut self, k: K, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(k);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn coefficient(&self, k: &K) -> BigInt {
        self.terms.get(k).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &BigInt)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn map_keys<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> L) -> FormalElement<L> {
        let mut out = FormalElement::new();
        for (k, c) in &self.terms {
            out.add_term(f(k), c.clone());
        }
        out
    }

    pub fn filter(&self, mut keep: impl FnMut(&K) -> bool) -> Self {
        FormalElement { terms: self.terms.iter().filter(|(k, _)| keep(k)).map(|(k, c)| (k.clone(), c.clone())).collect() }
    }

    pub fn scaled(&self, c: &BigInt) -> Self {
        let mut out = Self::new();
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }
}

impl<K: Ord + Clone + Add<Output = K>> FormalElement<K> {
    /// Product of two elements, keeping only exponents accepted by `keep`.
    pub fn mul_truncated(&self, other: &Self, mut keep: impl FnMut(&K) -> bool) -> Self {
        let mut out = Self::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let k = a.clone() + b.clone();
                if keep(&k) {
                    out.add_term(k, ca * cb);
                }
            }
        }
        out
    }
}

impl<K: Ord + Clone> FromIterator<(K, BigInt)> for FormalElement<K> {
    fn from_iter<T: IntoIterator<Item = (K, BigInt)>>(iter: T) -> Self {
        let mut f = Self::new();
        for (k, c) in iter {
            f.add_term(k, c);
        }
        f
    }
}

impl<K: Ord + Clone> Add for &FormalElement<K> {
    type Output = FormalElement<K>;
    fn add(self, o: &FormalElement<K>) -> FormalElement<K> {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_removes_terms() {
        let mut f = FormalElement::monomial(3i64, 2.into());
        f.add_term(3, (-2).into());
        assert!(f.is_empty());
    }

    #[test]
    fn product_of_binomials() {
        let f: FormalElement<i64> = [(0, 1.into()), (-1, (-1).into())].into_iter().collect();
        let sq = f.mul_truncated(&f, |_| true);
        assert_eq!(sq.coefficient(&-1), (-2).into());
        assert_eq!(sq.coefficient(&-2), 1.into());
        assert_eq!(f.mul_truncated(&f, |&k| k > -2).len(), 2);
    }
}
