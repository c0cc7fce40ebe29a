//! Sparse exponent → coefficient maps shared by polynomials and
//! finite-support sequences.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

/// A point of the lattice `Z^r`.
///
/// Ordering is lexicographic on the components, which fixes the term order
/// used for display and serialization.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Exponent(Vec<i64>);

impl Exponent {
    pub fn new(components: Vec<i64>) -> Self {
        Exponent(components)
    }

    pub fn zero(rank: usize) -> Self {
        Exponent(vec![0; rank])
    }

    /// Unit vector `e_axis` scaled by `k`.
    pub fn axis(rank: usize, axis: usize, k: i64) -> Self {
        let mut v = vec![0; rank];
        v[axis] = k;
        Exponent(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        debug_assert_eq!(self.rank(), other.rank());
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Exponent) -> Exponent {
        debug_assert_eq!(self.rank(), other.rank());
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub(crate) fn check_rank(&self, rank: usize) -> Result<()> {
        if self.rank() != rank {
            return Err(Error::RankMismatch {
                expected: rank,
                found: self.rank(),
            });
        }
        Ok(())
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<Vec<i64>> for Exponent {
    fn from(v: Vec<i64>) -> Self {
        Exponent(v)
    }
}

impl From<&[i64]> for Exponent {
    fn from(v: &[i64]) -> Self {
        Exponent(v.to_vec())
    }
}

impl<const N: usize> From<[i64; N]> for Exponent {
    fn from(v: [i64; N]) -> Self {
        Exponent(v.to_vec())
    }
}

pub(crate) fn check_field<K: Field>(a: &K, b: &K) -> Result<()> {
    if a != b {
        return Err(Error::MixedField {
            left: a.descriptor().to_string(),
            right: b.descriptor().to_string(),
        });
    }
    Ok(())
}

pub(crate) fn check_rank(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::RankMismatch { expected, found });
    }
    Ok(())
}

/// Canonical sparse map: every stored coefficient is nonzero in the field
/// and every key has length `rank`.
#[derive(Clone, Debug)]
pub(crate) struct TermMap<K: Field> {
    pub(crate) field: K,
    pub(crate) rank: usize,
    pub(crate) terms: BTreeMap<Exponent, K::Elem>,
}

impl<K: Field> TermMap<K> {
    pub(crate) fn zero(field: K, rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        Ok(TermMap {
            field,
            rank,
            terms: BTreeMap::new(),
        })
    }

    pub(crate) fn from_terms<I>(field: K, rank: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, K::Elem)>,
    {
        let mut map = Self::zero(field, rank)?;
        for (e, c) in terms {
            e.check_rank(rank)?;
            map.accumulate(e, &c);
        }
        Ok(map)
    }

    /// `self[e] += c`, dropping the entry if it becomes zero.
    pub(crate) fn accumulate(&mut self, e: Exponent, c: &K::Elem) {
        if self.field.is_zero(c) {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = self.field.add(o.get(), c);
                if self.field.is_zero(&sum) {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub(crate) fn check_compatible(&self, other: &Self) -> Result<()> {
        check_rank(self.rank, other.rank)?;
        check_field(&self.field, &other.field)
    }

    pub(crate) fn coeff(&self, e: &Exponent) -> Result<K::Elem> {
        e.check_rank(self.rank)?;
        Ok(self.get(e))
    }

    pub(crate) fn get(&self, e: &Exponent) -> K::Elem {
        self.terms
            .get(e)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub(crate) fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.accumulate(e.clone(), c);
        }
        Ok(out)
    }

    pub(crate) fn scale(&self, s: &K::Elem) -> Self {
        let mut out = TermMap {
            field: self.field.clone(),
            rank: self.rank,
            terms: BTreeMap::new(),
        };
        for (e, c) in &self.terms {
            out.accumulate(e.clone(), &self.field.mul(s, c));
        }
        out
    }

    pub(crate) fn neg(&self) -> Self {
        TermMap {
            field: self.field.clone(),
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), self.field.neg(c)))
                .collect(),
        }
    }

    pub(crate) fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Same field, rank, support, and field-equal coefficients.
    pub(crate) fn same_as(&self, other: &Self) -> bool {
        self.field == other.field
            && self.rank == other.rank
            && self.terms.len() == other.terms.len()
            && self
                .terms
                .iter()
                .zip(&other.terms)
                .all(|((e1, c1), (e2, c2))| e1 == e2 && self.field.equal(c1, c2))
    }
}
