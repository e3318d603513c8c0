//! Finite-support linear combinations over `Q(zeta_L)` with ordered keys.

use std::collections::BTreeMap;

use crate::scalar::Cyclotomic;

/// A finite-support mapping from keys to cyclotomic scalars. Zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinComb<K: Ord + Clone> {
    terms: BTreeMap<K, Cyclotomic>,
}

impl<K: Ord + Clone> Default for LinComb<K> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        LinComb { terms: BTreeMap::new() }
    }

    pub fn term(key: K, coeff: Cyclotomic) -> Self {
        let mut t = Self::zero();
        t.add_term(key, coeff);
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &K) -> Option<&Cyclotomic> {
        self.terms.get(key)
    }

    pub fn add_term(&mut self, key: K, coeff: Cyclotomic) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(c) => {
                let s = c.add(&coeff);
                if s.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *c = s;
                }
            }
            None => {
                self.terms.insert(key, coeff);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in other.terms.iter() {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in other.terms.iter() {
            out.add_term(k.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LinComb {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, s: &Cyclotomic) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (k, c) in self.terms.iter() {
            out.add_term(k.clone(), c.mul(s));
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Cyclotomic)> {
        self.terms.iter()
    }

    pub fn into_iter_terms(self) -> impl Iterator<Item = (K, Cyclotomic)> {
        self.terms.into_iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    /// Applies a linear map to each key and sums the images.
    pub fn flat_map<J: Ord + Clone>(&self, mut f: impl FnMut(&K) -> LinComb<J>) -> LinComb<J> {
        let mut out = LinComb::zero();
        for (k, c) in self.terms.iter() {
            for (j, d) in f(k).terms.into_iter() {
                out.add_term(j, d.mul(c));
            }
        }
        out
    }
}

impl<K: Ord + Clone> FromIterator<(K, Cyclotomic)> for LinComb<K> {
    fn from_iter<T: IntoIterator<Item = (K, Cyclotomic)>>(iter: T) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}
