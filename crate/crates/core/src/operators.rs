//! The pairing `⟨d, W⟩ = Σ d_α W_α` between polynomials and sequences, and
//! the shift action `(d ∘ W)_β = Σ_α d_α W_{α+β}`.
//!
//! The shift is the adjoint of multiplication by `d`:
//! `⟨c·d, W⟩ = ⟨c, d ∘ W⟩`. Note the index is `α + β`, a correlation, not a
//! convolution.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::laurent::{LaurentPoly, PolyMatrix};
use crate::sequence::{FiniteSeq, PeriodicSeq, SeqVector, Sequence};
use crate::terms::{check_field, check_rank, TermMap};

fn check_pair<K: Field, S: Sequence<K>>(d: &LaurentPoly<K>, w: &S) -> Result<()> {
    check_rank(d.rank(), w.rank())?;
    check_field(d.field(), w.field())
}

/// `⟨d, W⟩`, a finite sum over the support of `d`.
pub fn scalar_product<K, S>(d: &LaurentPoly<K>, w: &S) -> Result<K::Elem>
where
    K: Field,
    S: Sequence<K>,
{
    check_pair(d, w)?;
    let f = d.field();
    Ok(d.terms().fold(f.zero(), |acc, (alpha, c)| {
        f.add(&acc, &f.mul(c, &w.value_at(alpha)))
    }))
}

/// `d ∘ W` for a finite sequence. The result is supported on
/// `{β : α + β ∈ supp W for some α ∈ supp d}`.
pub fn shift_apply<K: Field>(d: &LaurentPoly<K>, w: &FiniteSeq<K>) -> Result<FiniteSeq<K>> {
    check_pair(d, w)?;
    let f = d.field();
    let mut out = TermMap::zero(f.clone(), d.rank())?;
    for (alpha, dc) in d.terms() {
        for (gamma, wc) in w.terms() {
            // contributes d_α W_γ at β = γ - α
            out.accumulate(gamma.sub(alpha), &f.mul(dc, wc));
        }
    }
    Ok(FiniteSeq::from_map(out))
}

/// `d ∘ W` for a periodic sequence; the lattice is preserved.
pub fn shift_apply_periodic<K: Field>(
    d: &LaurentPoly<K>,
    w: &PeriodicSeq<K>,
) -> Result<PeriodicSeq<K>> {
    check_pair(d, w)?;
    let f = d.field();
    let values = w
        .domain()
        .map(|beta| {
            d.terms().fold(f.zero(), |acc, (alpha, c)| {
                f.add(&acc, &f.mul(c, &w.value_at(&alpha.add(&beta))))
            })
        })
        .collect();
    PeriodicSeq::new(f.clone(), w.periods().to_vec(), values)
}

/// Sequences the shift operator acts on.
pub trait Shift<K: Field>: Sequence<K> + Sized {
    fn shifted_by(&self, d: &LaurentPoly<K>) -> Result<Self>;

    /// Pointwise sum.
    fn plus(&self, other: &Self) -> Result<Self>;
}

impl<K: Field> Shift<K> for FiniteSeq<K> {
    fn shifted_by(&self, d: &LaurentPoly<K>) -> Result<Self> {
        shift_apply(d, self)
    }

    fn plus(&self, other: &Self) -> Result<Self> {
        self.add(other)
    }
}

impl<K: Field> Shift<K> for PeriodicSeq<K> {
    fn shifted_by(&self, d: &LaurentPoly<K>) -> Result<Self> {
        shift_apply_periodic(d, self)
    }

    fn plus(&self, other: &Self) -> Result<Self> {
        self.add(other)
    }
}

fn apply_rows<K, S>(r: &PolyMatrix<K>, w: &[S]) -> Result<Vec<S>>
where
    K: Field,
    S: Shift<K>,
{
    (0..r.rows())
        .map(|i| {
            let mut acc: Option<S> = None;
            for (rij, wj) in r.row(i).iter().zip(w) {
                let term = wj.shifted_by(rij)?;
                acc = Some(match acc {
                    None => term,
                    Some(a) => a.plus(&term)?,
                });
            }
            Ok(acc.expect("matrices have at least one column"))
        })
        .collect()
}

/// `R ∘ W`: the `i`-th component is `Σ_j R_ij ∘ W_j`.
pub fn shift_apply_matrix<K: Field>(r: &PolyMatrix<K>, w: &SeqVector<K>) -> Result<SeqVector<K>> {
    if w.len() != r.cols() {
        return Err(Error::DimensionMismatch {
            expected: r.cols(),
            found: w.len(),
        });
    }
    check_rank(r.rank(), w.rank())?;
    check_field(r.field(), w.field())?;
    Ok(match w {
        SeqVector::Finite(v) => SeqVector::Finite(apply_rows(r, v)?),
        SeqVector::Periodic(v) => SeqVector::Periodic(apply_rows(r, v)?),
    })
}

/// Whether `⟨c·d, W⟩ = ⟨c, d ∘ W⟩`. The two sides go through disjoint code
/// paths: polynomial multiplication on the left, the shift on the right.
pub fn check_adjoint<K, S>(c: &LaurentPoly<K>, d: &LaurentPoly<K>, w: &S) -> Result<bool>
where
    K: Field,
    S: Shift<K>,
{
    let lhs = scalar_product(&c.mul(d)?, w)?;
    let rhs = scalar_product(c, &w.shifted_by(d)?)?;
    Ok(c.field().equal(&lhs, &rhs))
}
