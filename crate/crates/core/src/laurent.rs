//! Sparse multivariate Laurent polynomials and matrices over them.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::terms::{check_field, check_rank, Exponent, TermMap};

/// A Laurent polynomial `Σ d_α X^α` in `r` variables with finitely many
/// nonzero coefficients.
///
/// Zero coefficients are never stored, so two polynomials are equal exactly
/// when their term maps agree (within tolerance for the float field).
#[derive(Clone, Debug)]
pub struct LaurentPoly<K: Field> {
    pub(crate) inner: TermMap<K>,
}

impl<K: Field> LaurentPoly<K> {
    pub fn zero(field: K, rank: usize) -> Result<Self> {
        Ok(LaurentPoly {
            inner: TermMap::zero(field, rank)?,
        })
    }

    pub fn one(field: K, rank: usize) -> Result<Self> {
        let one = field.one();
        Self::monomial(field, Exponent::zero(rank), one)
    }

    pub fn constant(field: K, rank: usize, c: K::Elem) -> Result<Self> {
        Self::monomial(field, Exponent::zero(rank), c)
    }

    /// `c X^α`; the rank is taken from `α`.
    pub fn monomial(field: K, exponent: Exponent, c: K::Elem) -> Result<Self> {
        let rank = exponent.rank();
        Self::from_terms(field, rank, [(exponent, c)])
    }

    /// Builds a polynomial from `(α, d_α)` pairs, combining repeated
    /// exponents and dropping zeros.
    pub fn from_terms<I>(field: K, rank: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, K::Elem)>,
    {
        Ok(LaurentPoly {
            inner: TermMap::from_terms(field, rank, terms)?,
        })
    }

    /// Convenience constructor from integer coefficients.
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

    pub fn field(&self) -> &K {
        &self.inner.field
    }

    pub fn rank(&self) -> usize {
        self.inner.rank
    }

    pub fn is_zero(&self) -> bool {
        self.inner.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.inner.terms.len()
    }

    /// Nonzero terms in ascending lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &K::Elem)> {
        self.inner.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Exponent> {
        self.inner.terms.keys()
    }

    /// `d_α`, zero outside the support.
    pub fn coeff(&self, alpha: &Exponent) -> Result<K::Elem> {
        self.inner.coeff(alpha)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(LaurentPoly {
            inner: self.inner.add(&other.inner)?,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Ok(LaurentPoly {
            inner: self.inner.sub(&other.inner)?,
        })
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            inner: self.inner.neg(),
        }
    }

    pub fn scale(&self, s: &K::Elem) -> Self {
        LaurentPoly {
            inner: self.inner.scale(s),
        }
    }

    /// Ring product: the coefficient at `α` is `Σ_γ c_γ d_{α-γ}`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.inner.check_compatible(&other.inner)?;
        let field = self.field();
        let mut out = TermMap::zero(field.clone(), self.rank())?;
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                out.accumulate(e1.add(e2), &field.mul(c1, c2));
            }
        }
        Ok(LaurentPoly { inner: out })
    }
}

impl<K: Field> PartialEq for LaurentPoly<K> {
    fn eq(&self, other: &Self) -> bool {
        self.inner.same_as(&other.inner)
    }
}

impl<K: Field> fmt::Display for LaurentPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parser::format_poly(self))
    }
}

/// A `k × l` matrix of Laurent polynomials sharing one rank and field.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix<K: Field> {
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly<K>>,
}

impl<K: Field> PolyMatrix<K> {
    pub fn new(grid: Vec<Vec<LaurentPoly<K>>>) -> Result<Self> {
        let rows = grid.len();
        let cols = grid.first().map_or(0, Vec::len);
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        if grid.iter().any(|row| row.len() != cols) {
            return Err(Error::RaggedMatrix);
        }
        let entries: Vec<_> = grid.into_iter().flatten().collect();
        let first = &entries[0];
        for e in &entries[1..] {
            check_rank(first.rank(), e.rank())?;
            check_field(first.field(), e.field())?;
        }
        Ok(PolyMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.entries[0].rank()
    }

    pub fn field(&self) -> &K {
        self.entries[0].field()
    }

    pub fn entry(&self, i: usize, j: usize) -> &LaurentPoly<K> {
        assert!(
            i < self.rows && j < self.cols,
            "entry ({i}, {j}) out of bounds"
        );
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[LaurentPoly<K>] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }
}
