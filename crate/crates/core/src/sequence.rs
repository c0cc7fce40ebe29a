//! Computable elements of the signal space: sequences `Z^r → F` with
//! finite support, and sequences periodic along every axis.
//!
//! A general doubly-infinite series has no finite description, so only these
//! two subclasses are representable. They are never mixed implicitly;
//! [`PeriodicSeq::from_finite`] folds a finite sequence onto a lattice when
//! that is what the caller wants.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::laurent::LaurentPoly;
use crate::terms::{check_field, check_rank, Exponent, TermMap};

/// Read access shared by both sequence representations.
pub trait Sequence<K: Field> {
    fn field(&self) -> &K;
    fn rank(&self) -> usize;

    /// `W_α` without a rank check. Callers must pass `α` of length `rank`.
    fn value_at(&self, alpha: &Exponent) -> K::Elem;

    /// `W_α`, checking the rank of `α`.
    fn coeff(&self, alpha: &Exponent) -> Result<K::Elem> {
        alpha.check_rank(self.rank())?;
        Ok(self.value_at(alpha))
    }

    fn is_zero(&self) -> bool;
}

/// A sequence with finitely many nonzero values.
#[derive(Clone, Debug)]
pub struct FiniteSeq<K: Field> {
    inner: TermMap<K>,
}

impl<K: Field> FiniteSeq<K> {
    pub fn zero(field: K, rank: usize) -> Result<Self> {
        Ok(FiniteSeq {
            inner: TermMap::zero(field, rank)?,
        })
    }

    /// `δ_α`: one at `α`, zero elsewhere.
    pub fn delta(field: K, alpha: Exponent) -> Result<Self> {
        let one = field.one();
        let rank = alpha.rank();
        Self::from_terms(field, rank, [(alpha, one)])
    }

    /// Builds a sequence from `(α, W_α)` pairs; repeated indices accumulate.
    pub fn from_terms<I>(field: K, rank: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, K::Elem)>,
    {
        Ok(FiniteSeq {
            inner: TermMap::from_terms(field, rank, terms)?,
        })
    }

    pub fn from_ints<I, E>(field: K, rank: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (E, i64)>,
        E: Into<Exponent>,
    {
        let terms: Vec<_> = terms
            .into_iter()
            .map(|(e, c)| (e.into(), field.from_i64(c)))
            .collect();
        Self::from_terms(field, rank, terms)
    }

    /// Nonzero entries in ascending lexicographic index order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &K::Elem)> {
        self.inner.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Exponent> {
        self.inner.terms.keys()
    }

    pub fn num_terms(&self) -> usize {
        self.inner.terms.len()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(FiniteSeq {
            inner: self.inner.add(&other.inner)?,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Ok(FiniteSeq {
            inner: self.inner.sub(&other.inner)?,
        })
    }

    pub fn scale(&self, s: &K::Elem) -> Self {
        FiniteSeq {
            inner: self.inner.scale(s),
        }
    }

    /// The sequence of coefficients of `d`: `X^α ↦ δ_α`.
    pub fn from_poly(d: &LaurentPoly<K>) -> Self {
        FiniteSeq {
            inner: d.inner.clone(),
        }
    }

    /// Inverse of [`FiniteSeq::from_poly`].
    pub fn to_poly(&self) -> LaurentPoly<K> {
        LaurentPoly {
            inner: self.inner.clone(),
        }
    }

    pub(crate) fn from_map(inner: TermMap<K>) -> Self {
        FiniteSeq { inner }
    }
}

impl<K: Field> Sequence<K> for FiniteSeq<K> {
    fn field(&self) -> &K {
        &self.inner.field
    }

    fn rank(&self) -> usize {
        self.inner.rank
    }

    fn value_at(&self, alpha: &Exponent) -> K::Elem {
        self.inner.get(alpha)
    }

    fn is_zero(&self) -> bool {
        self.inner.terms.is_empty()
    }
}

impl<K: Field> PartialEq for FiniteSeq<K> {
    fn eq(&self, other: &Self) -> bool {
        self.inner.same_as(&other.inner)
    }
}

/// Converts `d` to a finite sequence.
pub fn poly_to_finite_seq<K: Field>(d: &LaurentPoly<K>) -> FiniteSeq<K> {
    FiniteSeq::from_poly(d)
}

/// Converts a finite sequence to the polynomial with the same coefficients.
pub fn finite_seq_to_poly<K: Field>(w: &FiniteSeq<K>) -> LaurentPoly<K> {
    w.to_poly()
}

/// A sequence invariant under the lattice `N_1 Z × … × N_r Z`, stored as its
/// values on the fundamental domain `[0, N_1) × … × [0, N_r)` in row-major
/// order (axis 1 outermost).
#[derive(Clone, Debug)]
pub struct PeriodicSeq<K: Field> {
    field: K,
    periods: Vec<usize>,
    values: Vec<K::Elem>,
}

pub(crate) fn check_periods(periods: &[usize]) -> Result<usize> {
    if periods.is_empty() {
        return Err(Error::ZeroRank);
    }
    if periods.contains(&0) {
        return Err(Error::InvalidPeriods(format!(
            "periods must be at least 1, got {periods:?}"
        )));
    }
    periods
        .iter()
        .try_fold(1usize, |acc, &n| acc.checked_mul(n))
        .ok_or_else(|| Error::InvalidPeriods(format!("domain size of {periods:?} overflows")))
}

/// Row-major position of `α mod periods` in the fundamental domain.
pub(crate) fn fold_index(periods: &[usize], alpha: &[i64]) -> usize {
    alpha.iter().zip(periods).fold(0usize, |acc, (&a, &n)| {
        acc * n + a.rem_euclid(n as i64) as usize
    })
}

/// Lattice point in the fundamental domain at row-major position `index`.
pub(crate) fn unfold_index(periods: &[usize], mut index: usize) -> Exponent {
    let mut out = vec![0i64; periods.len()];
    for (slot, &n) in out.iter_mut().zip(periods).rev() {
        *slot = (index % n) as i64;
        index /= n;
    }
    Exponent::new(out)
}

impl<K: Field> PeriodicSeq<K> {
    pub fn new(field: K, periods: Vec<usize>, values: Vec<K::Elem>) -> Result<Self> {
        let size = check_periods(&periods)?;
        if values.len() != size {
            return Err(Error::DimensionMismatch {
                expected: size,
                found: values.len(),
            });
        }
        Ok(PeriodicSeq {
            field,
            periods,
            values,
        })
    }

    pub fn from_ints(field: K, periods: Vec<usize>, values: &[i64]) -> Result<Self> {
        let values = values.iter().map(|&v| field.from_i64(v)).collect();
        Self::new(field, periods, values)
    }

    pub fn zero(field: K, periods: Vec<usize>) -> Result<Self> {
        let size = check_periods(&periods)?;
        let values = vec![field.zero(); size];
        Ok(PeriodicSeq {
            field,
            periods,
            values,
        })
    }

    /// Folds a finite sequence onto the lattice:
    /// `values[β] = Σ_{α ≡ β} W_α`.
    pub fn from_finite(w: &FiniteSeq<K>, periods: Vec<usize>) -> Result<Self> {
        check_rank(w.rank(), periods.len())?;
        let mut out = Self::zero(w.field().clone(), periods)?;
        for (alpha, c) in w.terms() {
            let i = fold_index(&out.periods, alpha.components());
            out.values[i] = out.field.add(&out.values[i], c);
        }
        Ok(out)
    }

    pub fn periods(&self) -> &[usize] {
        &self.periods
    }

    /// Fundamental-domain values in row-major order.
    pub fn values(&self) -> &[K::Elem] {
        &self.values
    }

    pub fn domain_size(&self) -> usize {
        self.values.len()
    }

    /// Lattice points of the fundamental domain, in storage order.
    pub fn domain(&self) -> impl Iterator<Item = Exponent> + '_ {
        (0..self.values.len()).map(|i| unfold_index(&self.periods, i))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        check_field(&self.field, &other.field)?;
        if self.periods != other.periods {
            if self.periods.len() != other.periods.len() {
                return Err(Error::RankMismatch {
                    expected: self.periods.len(),
                    found: other.periods.len(),
                });
            }
            return Err(Error::PeriodMismatch {
                left: self.periods.clone(),
                right: other.periods.clone(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| self.field.add(a, b))
            .collect();
        Ok(PeriodicSeq {
            field: self.field.clone(),
            periods: self.periods.clone(),
            values,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&self.field.neg(&self.field.one())))
    }

    pub fn scale(&self, s: &K::Elem) -> Self {
        PeriodicSeq {
            field: self.field.clone(),
            periods: self.periods.clone(),
            values: self.values.iter().map(|v| self.field.mul(s, v)).collect(),
        }
    }

    /// The same sequence described on a coarser lattice. Each new period
    /// must be a positive multiple of the old one.
    pub fn tile(&self, periods: Vec<usize>) -> Result<Self> {
        check_rank(self.periods.len(), periods.len())?;
        check_periods(&periods)?;
        if periods.iter().zip(&self.periods).any(|(&m, &n)| m % n != 0) {
            return Err(Error::InvalidPeriods(format!(
                "{periods:?} is not a multiple of {:?}",
                self.periods
            )));
        }
        let size = check_periods(&periods)?;
        let values = (0..size)
            .map(|i| {
                let alpha = unfold_index(&periods, i);
                self.value_at(&alpha)
            })
            .collect();
        Ok(PeriodicSeq {
            field: self.field.clone(),
            periods,
            values,
        })
    }
}

impl<K: Field> Sequence<K> for PeriodicSeq<K> {
    fn field(&self) -> &K {
        &self.field
    }

    fn rank(&self) -> usize {
        self.periods.len()
    }

    fn value_at(&self, alpha: &Exponent) -> K::Elem {
        self.values[fold_index(&self.periods, alpha.components())].clone()
    }

    fn is_zero(&self) -> bool {
        self.values.iter().all(|v| self.field.is_zero(v))
    }
}

impl<K: Field> PartialEq for PeriodicSeq<K> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.periods == other.periods
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(a, b)| self.field.equal(a, b))
    }
}

/// A vector `(W_1, …, W_l)` of sequences of one representation.
#[derive(Clone, Debug, PartialEq)]
pub enum SeqVector<K: Field> {
    Finite(Vec<FiniteSeq<K>>),
    Periodic(Vec<PeriodicSeq<K>>),
}

impl<K: Field> SeqVector<K> {
    pub fn finite(components: Vec<FiniteSeq<K>>) -> Result<Self> {
        let first = components.first().ok_or(Error::DimensionMismatch {
            expected: 1,
            found: 0,
        })?;
        for c in &components[1..] {
            check_rank(first.rank(), c.rank())?;
            check_field(first.field(), c.field())?;
        }
        Ok(SeqVector::Finite(components))
    }

    pub fn periodic(components: Vec<PeriodicSeq<K>>) -> Result<Self> {
        let first = components.first().ok_or(Error::DimensionMismatch {
            expected: 1,
            found: 0,
        })?;
        for c in &components[1..] {
            first.check_compatible(c)?;
        }
        Ok(SeqVector::Periodic(components))
    }

    pub fn len(&self) -> usize {
        match self {
            SeqVector::Finite(v) => v.len(),
            SeqVector::Periodic(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn rank(&self) -> usize {
        match self {
            SeqVector::Finite(v) => v[0].rank(),
            SeqVector::Periodic(v) => v[0].rank(),
        }
    }

    pub fn field(&self) -> &K {
        match self {
            SeqVector::Finite(v) => v[0].field(),
            SeqVector::Periodic(v) => v[0].field(),
        }
    }

    /// True when every component is the zero sequence.
    pub fn is_zero(&self) -> bool {
        match self {
            SeqVector::Finite(v) => v.iter().all(Sequence::is_zero),
            SeqVector::Periodic(v) => v.iter().all(Sequence::is_zero),
        }
    }

    /// Lattice shared by the components, `None` for finite vectors.
    pub fn periods(&self) -> Option<&[usize]> {
        match self {
            SeqVector::Periodic(v) => Some(v[0].periods()),
            SeqVector::Finite(_) => None,
        }
    }

    /// `W_j(α)` for component `j`.
    pub fn component_value(&self, j: usize, alpha: &Exponent) -> Result<K::Elem> {
        match self {
            SeqVector::Finite(v) => v[j].coeff(alpha),
            SeqVector::Periodic(v) => v[j].coeff(alpha),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use num_rational::BigRational;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn finite_coefficients() {
        let w = FiniteSeq::from_ints(Rationals, 1, [([-1], 1), ([0], 2), ([1], 3)]).unwrap();
        assert_eq!(w.coeff(&[0].into()).unwrap(), rat(2));
        assert_eq!(w.coeff(&[5].into()).unwrap(), rat(0));
        assert_eq!(w.coeff(&[-100].into()).unwrap(), rat(0));
        assert!(matches!(
            w.coeff(&[0, 0].into()),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn periodic_coefficients_fold_negative_indices() {
        let w = PeriodicSeq::from_ints(Rationals, vec![2], &[1, 0]).unwrap();
        assert_eq!(w.coeff(&[-4].into()).unwrap(), rat(1));
        assert_eq!(w.coeff(&[-3].into()).unwrap(), rat(0));
        assert_eq!(w.coeff(&[7].into()).unwrap(), rat(0));

        let grid = PeriodicSeq::from_ints(Rationals, vec![2, 3], &[0, 1, 2, 3, 4, 5]).unwrap();
        assert_eq!(grid.coeff(&[1, 2].into()).unwrap(), rat(5));
        assert_eq!(grid.coeff(&[-1, -1].into()).unwrap(), rat(5));
        assert_eq!(grid.coeff(&[2, -3].into()).unwrap(), rat(0));
        assert_eq!(
            grid.domain().collect::<Vec<_>>(),
            vec![
                Exponent::from([0, 0]),
                Exponent::from([0, 1]),
                Exponent::from([0, 2]),
                Exponent::from([1, 0]),
                Exponent::from([1, 1]),
                Exponent::from([1, 2])
            ]
        );
    }

    #[test]
    fn polynomial_round_trip() {
        let d = LaurentPoly::from_ints(Rationals, 2, [([-1, 1], 1), ([2, -2], 3)]).unwrap();
        let w = poly_to_finite_seq(&d);
        assert_eq!(w.coeff(&[2, -2].into()).unwrap(), rat(3));
        assert_eq!(finite_seq_to_poly(&w), d);

        let mono = LaurentPoly::from_ints(Rationals, 1, [([4], 1)]).unwrap();
        assert_eq!(
            poly_to_finite_seq(&mono),
            FiniteSeq::delta(Rationals, [4].into()).unwrap()
        );
        let zero = LaurentPoly::zero(Rationals, 3).unwrap();
        assert_eq!(poly_to_finite_seq(&zero).num_terms(), 0);
    }

    #[test]
    fn pointwise_arithmetic() {
        let d0 = FiniteSeq::delta(Rationals, [0].into()).unwrap();
        assert_eq!(
            d0.add(&d0).unwrap(),
            FiniteSeq::from_ints(Rationals, 1, [([0], 2)]).unwrap()
        );
        let w = FiniteSeq::from_ints(Rationals, 1, [([-3], 4), ([2], -1)]).unwrap();
        assert!(w.add(&w.scale(&rat(-1))).unwrap().is_zero());

        let a = PeriodicSeq::from_ints(Rationals, vec![2], &[1, 2]).unwrap();
        let b = PeriodicSeq::from_ints(Rationals, vec![2], &[10, 20]).unwrap();
        assert_eq!(
            a.add(&b).unwrap(),
            PeriodicSeq::from_ints(Rationals, vec![2], &[11, 22]).unwrap()
        );
        assert!(a.sub(&a).unwrap().is_zero());

        let c = PeriodicSeq::from_ints(Rationals, vec![3], &[1, 2, 3]).unwrap();
        assert!(matches!(a.add(&c), Err(Error::PeriodMismatch { .. })));
        let g = PeriodicSeq::from_ints(PrimeField::new(3).unwrap(), vec![2], &[1, 2]).unwrap();
        let h = PeriodicSeq::from_ints(PrimeField::new(5).unwrap(), vec![2], &[1, 2]).unwrap();
        assert!(matches!(g.add(&h), Err(Error::MixedField { .. })));
    }

    #[test]
    fn folding_onto_a_lattice() {
        let d3 = FiniteSeq::delta(Rationals, [3].into()).unwrap();
        let folded = PeriodicSeq::from_finite(&d3, vec![2]).unwrap();
        assert_eq!(folded.values(), &[rat(0), rat(1)]);

        let dm1 = FiniteSeq::delta(Rationals, [-1].into()).unwrap();
        let folded = PeriodicSeq::from_finite(&dm1, vec![2]).unwrap();
        assert_eq!(folded.values(), &[rat(0), rat(1)]);

        let two = FiniteSeq::from_ints(Rationals, 1, [([0], 1), ([2], 1)]).unwrap();
        let folded = PeriodicSeq::from_finite(&two, vec![2]).unwrap();
        assert_eq!(folded.values(), &[rat(2), rat(0)]);

        assert!(matches!(
            PeriodicSeq::from_finite(&two, vec![2, 2]),
            Err(Error::RankMismatch { .. })
        ));
        assert!(matches!(
            PeriodicSeq::from_finite(&two, vec![0]),
            Err(Error::InvalidPeriods(_))
        ));
    }

    #[test]
    fn tiling_preserves_values() {
        let w = PeriodicSeq::from_ints(Rationals, vec![2, 1], &[5, 7]).unwrap();
        let t = w.tile(vec![4, 3]).unwrap();
        assert_eq!(t.domain_size(), 12);
        for alpha in t.domain() {
            assert_eq!(t.value_at(&alpha), w.value_at(&alpha));
        }
        assert!(w.tile(vec![3, 1]).is_err());
    }

    #[test]
    fn constructor_validation() {
        assert!(matches!(
            PeriodicSeq::from_ints(Rationals, vec![2, 2], &[1, 2, 3]),
            Err(Error::DimensionMismatch {
                expected: 4,
                found: 3
            })
        ));
        assert!(matches!(
            PeriodicSeq::<Rationals>::zero(Rationals, vec![]),
            Err(Error::ZeroRank)
        ));
        let a = PeriodicSeq::from_ints(Rationals, vec![2], &[1, 2]).unwrap();
        let b = PeriodicSeq::from_ints(Rationals, vec![3], &[1, 2, 3]).unwrap();
        assert!(matches!(
            SeqVector::periodic(vec![a, b]),
            Err(Error::PeriodMismatch { .. })
        ));
        assert!(SeqVector::<Rationals>::finite(vec![]).is_err());
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn periodicity_law(
            periods in proptest::collection::vec(1usize..5, 1..4),
            seed in any::<u64>(),
            alpha in proptest::collection::vec(-50i64..50, 3),
            axis in 0usize..3,
        ) {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let f = PrimeField::new(7).unwrap();
            let size: usize = periods.iter().product();
            let values = (0..size).map(|_| f.random(&mut rng)).collect();
            let w = PeriodicSeq::new(f, periods.clone(), values).unwrap();
            let r = periods.len();
            let alpha = Exponent::from(&alpha[..r]);
            let axis = axis % r;
            let shifted = alpha.add(&Exponent::axis(r, axis, periods[axis] as i64));
            prop_assert_eq!(w.value_at(&alpha), w.value_at(&shifted));
            let i = fold_index(&periods, alpha.components());
            prop_assert!(i < size);
            let folded = unfold_index(&periods, i);
            for (c, n) in folded.components().iter().zip(&periods) {
                prop_assert!(*c >= 0 && (*c as usize) < *n);
            }
            for (k, (a, n)) in alpha.components().iter().zip(&periods).enumerate() {
                prop_assert_eq!(folded.components()[k], a.rem_euclid(*n as i64));
            }
        }
    }
}
