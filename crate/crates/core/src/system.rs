//! Autoregressive systems `B = ker R(X)` and their periodic trajectories.
//!
//! On a period lattice `N_1 Z × … × N_r Z` the monomial `X^α` acts on the
//! fundamental domain as the permutation `β ↦ (β + α) mod N`, so the kernel
//! condition becomes a finite linear system solved by exact elimination.
//!
//! Coordinates of a stacked periodic vector are ordered component-major:
//! component `j` outermost, then the row-major fundamental domain.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::laurent::PolyMatrix;
use crate::linalg::DenseMatrix;
use crate::operators::shift_apply_matrix;
use crate::sequence::{check_periods, fold_index, unfold_index, PeriodicSeq, SeqVector};
use crate::terms::check_rank;

/// The system defined by a `k × l` Laurent polynomial matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct System<K: Field> {
    matrix: PolyMatrix<K>,
}

/// A basis of the period-`N` trajectories of a system.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelBasis<K: Field> {
    pub field: K,
    pub periods: Vec<usize>,
    /// Number of signal components `l`.
    pub components: usize,
    pub basis: Vec<SeqVector<K>>,
}

impl<K: Field> KernelBasis<K> {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Each basis vector as its stacked coordinate list.
    pub fn stacked(&self) -> Vec<Vec<K::Elem>> {
        self.basis.iter().map(stack).collect()
    }
}

/// Stacked coordinates of a periodic vector.
pub fn stack<K: Field>(w: &SeqVector<K>) -> Vec<K::Elem> {
    match w {
        SeqVector::Periodic(v) => v.iter().flat_map(|c| c.values().iter().cloned()).collect(),
        SeqVector::Finite(_) => panic!("only periodic vectors have stacked coordinates"),
    }
}

/// Splits stacked coordinates back into `components` periodic sequences.
pub fn unstack<K: Field>(
    field: &K,
    periods: &[usize],
    components: usize,
    coords: &[K::Elem],
) -> Result<SeqVector<K>> {
    let size = check_periods(periods)?;
    if coords.len() != size * components {
        return Err(Error::DimensionMismatch {
            expected: size * components,
            found: coords.len(),
        });
    }
    let parts = coords
        .chunks(size)
        .map(|chunk| PeriodicSeq::new(field.clone(), periods.to_vec(), chunk.to_vec()))
        .collect::<Result<Vec<_>>>()?;
    SeqVector::periodic(parts)
}

impl<K: Field> System<K> {
    pub fn new(matrix: PolyMatrix<K>) -> Self {
        System { matrix }
    }

    pub fn matrix(&self) -> &PolyMatrix<K> {
        &self.matrix
    }

    pub fn field(&self) -> &K {
        self.matrix.field()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// Number of equations `k`.
    pub fn equations(&self) -> usize {
        self.matrix.rows()
    }

    /// Number of signal components `l`.
    pub fn components(&self) -> usize {
        self.matrix.cols()
    }

    /// Whether `R ∘ W = 0`.
    ///
    /// For periodic `W` the result is periodic on the same lattice, so
    /// checking the fundamental domain decides membership exactly.
    pub fn contains(&self, w: &SeqVector<K>) -> Result<bool> {
        Ok(shift_apply_matrix(&self.matrix, w)?.is_zero())
    }

    /// The matrix `M` with `R ∘ W = 0 ⇔ M w = 0` for period-`N` signals.
    ///
    /// `M[(i, β), (j, γ)] = Σ { R_ij,α : α + β ≡ γ (mod N) }`.
    pub fn periodic_matrix(&self, periods: &[usize]) -> Result<DenseMatrix<K>> {
        check_rank(self.rank(), periods.len())?;
        let size = check_periods(periods)?;
        let (k, l) = (self.equations(), self.components());
        let mut m = DenseMatrix::zeros(self.field().clone(), k * size, l * size);
        for i in 0..k {
            for j in 0..l {
                for (alpha, c) in self.matrix.entry(i, j).terms() {
                    for b in 0..size {
                        let beta = unfold_index(periods, b);
                        let g = fold_index(periods, alpha.add(&beta).components());
                        m.add_to(i * size + b, j * size + g, c);
                    }
                }
            }
        }
        Ok(m)
    }

    fn require_exact(&self) -> Result<()> {
        if !self.field().is_exact() {
            return Err(Error::FloatFieldUnsupported(
                self.field().descriptor().to_string(),
            ));
        }
        Ok(())
    }

    /// Basis of all period-`N` trajectories.
    pub fn periodic_kernel(&self, periods: &[usize]) -> Result<KernelBasis<K>> {
        self.require_exact()?;
        let m = self.periodic_matrix(periods)?;
        let basis = m
            .nullspace()
            .iter()
            .map(|v| unstack(self.field(), periods, self.components(), v))
            .collect::<Result<Vec<_>>>()?;
        Ok(KernelBasis {
            field: self.field().clone(),
            periods: periods.to_vec(),
            components: self.components(),
            basis,
        })
    }

    /// Dimension of the period-`N` trajectory space, `l·D − rank M`.
    pub fn kernel_dimension(&self, periods: &[usize]) -> Result<usize> {
        self.require_exact()?;
        let m = self.periodic_matrix(periods)?;
        Ok(m.cols() - m.rank())
    }
}

/// `behavior_contains` as a free function.
pub fn behavior_contains<K: Field>(s: &System<K>, w: &SeqVector<K>) -> Result<bool> {
    s.contains(w)
}

/// Re-describes a periodic vector on a coarser lattice; each new period must
/// be a multiple of the current one.
pub fn tile_vector<K: Field>(w: &SeqVector<K>, periods: &[usize]) -> Result<SeqVector<K>> {
    match w {
        SeqVector::Periodic(v) => SeqVector::periodic(
            v.iter()
                .map(|c| c.tile(periods.to_vec()))
                .collect::<Result<Vec<_>>>()?,
        ),
        SeqVector::Finite(_) => Err(Error::RepresentationMismatch),
    }
}
