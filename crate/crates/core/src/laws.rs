//! Seeded randomized checks of the algebraic laws: the adjoint identity,
//! the module action of the shift, coefficient extraction, bilinearity, the
//! support bound, and the polynomial/sequence round trips.
//!
//! Every suite draws from a [`ChaCha8Rng`] seeded by the caller, so a
//! failing trial can be replayed exactly.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::field::Field;
use crate::laurent::LaurentPoly;
use crate::operators::{scalar_product, shift_apply, Shift};
use crate::parser::format_poly;
use crate::sequence::{FiniteSeq, PeriodicSeq, Sequence};
use crate::terms::Exponent;

/// Maximum number of terms in a random polynomial or finite sequence.
pub const MAX_TERMS: usize = 6;
/// Random exponents are drawn from `[-EXP_BOUND, EXP_BOUND]^r`.
pub const EXP_BOUND: i64 = 4;
/// Random periods are drawn from `1..=MAX_PERIOD` per axis.
pub const MAX_PERIOD: usize = 3;

pub fn random_exponent<R: Rng + ?Sized>(rank: usize, bound: i64, rng: &mut R) -> Exponent {
    Exponent::new((0..rank).map(|_| rng.gen_range(-bound..=bound)).collect())
}

fn random_terms<K: Field, R: Rng + ?Sized>(
    field: &K,
    rank: usize,
    rng: &mut R,
) -> Vec<(Exponent, K::Elem)> {
    let n = rng.gen_range(0..=MAX_TERMS);
    (0..n)
        .map(|_| (random_exponent(rank, EXP_BOUND, rng), field.random(rng)))
        .collect()
}

pub fn random_poly<K: Field, R: Rng + ?Sized>(
    field: &K,
    rank: usize,
    rng: &mut R,
) -> LaurentPoly<K> {
    LaurentPoly::from_terms(field.clone(), rank, random_terms(field, rank, rng))
        .expect("rank is positive")
}

/// Sequences the law suites can draw at random.
pub trait TrialSequence<K: Field>: Shift<K> + Clone + PartialEq {
    const KIND: &'static str;

    fn random<R: Rng + ?Sized>(field: &K, rank: usize, rng: &mut R) -> Self;

    fn scaled(&self, s: &K::Elem) -> Self;

    fn describe(&self) -> String;
}

impl<K: Field> TrialSequence<K> for FiniteSeq<K> {
    const KIND: &'static str = "finite";

    fn random<R: Rng + ?Sized>(field: &K, rank: usize, rng: &mut R) -> Self {
        FiniteSeq::from_terms(field.clone(), rank, random_terms(field, rank, rng))
            .expect("rank is positive")
    }

    fn scaled(&self, s: &K::Elem) -> Self {
        self.scale(s)
    }

    fn describe(&self) -> String {
        format!("finite[{}]", format_poly(&self.to_poly()).replace('X', "Y"))
    }
}

impl<K: Field> TrialSequence<K> for PeriodicSeq<K> {
    const KIND: &'static str = "periodic";

    fn random<R: Rng + ?Sized>(field: &K, rank: usize, rng: &mut R) -> Self {
        let periods: Vec<usize> = (0..rank).map(|_| rng.gen_range(1..=MAX_PERIOD)).collect();
        let size = periods.iter().product();
        let values = (0..size).map(|_| field.random(rng)).collect();
        PeriodicSeq::new(field.clone(), periods, values).expect("valid periods")
    }

    fn scaled(&self, s: &K::Elem) -> Self {
        self.scale(s)
    }

    fn describe(&self) -> String {
        let f = self.field();
        let values: Vec<String> = self.values().iter().map(|v| f.format(v)).collect();
        format!("periodic{:?}[{}]", self.periods(), values.join(", "))
    }
}

/// Outcome of one suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: String,
    pub trials: usize,
    pub failures: usize,
    /// Description of the first failing trial.
    pub first_failure: Option<String>,
}

impl SuiteReport {
    fn new(name: impl Into<String>) -> Self {
        SuiteReport {
            name: name.into(),
            trials: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, repro: impl FnOnce() -> String) {
        self.trials += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(repro());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {} trials, {} failures",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.trials,
            self.failures
        )?;
        if let Some(repro) = &self.first_failure {
            write!(f, "\n  first failure: {repro}")?;
        }
        Ok(())
    }
}

fn rng_for(seed: u64, salt: &str, rank: usize) -> ChaCha8Rng {
    // FNV-1a over the suite name keeps suites independent of each other
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in salt.bytes().chain([rank as u8]) {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

/// `⟨c·d, W⟩ = ⟨c, shift(d, W)⟩`, with the shift supplied by the caller.
pub fn adjoint_suite_with<K, S, F>(
    field: &K,
    rank: usize,
    trials: usize,
    seed: u64,
    shift: F,
) -> Result<SuiteReport>
where
    K: Field,
    S: TrialSequence<K>,
    F: Fn(&LaurentPoly<K>, &S) -> Result<S>,
{
    let name = format!("adjoint[{}] r={rank}", S::KIND);
    let mut rng = rng_for(seed, &name, rank);
    let mut report = SuiteReport::new(name);
    for trial in 0..trials {
        let c = random_poly(field, rank, &mut rng);
        let d = random_poly(field, rank, &mut rng);
        let w = S::random(field, rank, &mut rng);
        let lhs = scalar_product(&c.mul(&d)?, &w)?;
        let rhs = scalar_product(&c, &shift(&d, &w)?)?;
        report.record(field.equal(&lhs, &rhs), || {
            format!(
                "seed={seed} trial={trial} c={} d={} W={}",
                format_poly(&c),
                format_poly(&d),
                w.describe()
            )
        });
    }
    Ok(report)
}

pub fn adjoint_suite<K: Field, S: TrialSequence<K>>(
    field: &K,
    rank: usize,
    trials: usize,
    seed: u64,
) -> Result<SuiteReport> {
    adjoint_suite_with(field, rank, trials, seed, |d, w: &S| w.shifted_by(d))
}

/// `σ_c(σ_d W) = σ_{c·d} W` and `σ_1 W = W`.
pub fn module_action_suite<K: Field, S: TrialSequence<K>>(
    field: &K,
    rank: usize,
    trials: usize,
    seed: u64,
) -> Result<SuiteReport> {
    let name = format!("module-action[{}] r={rank}", S::KIND);
    let mut rng = rng_for(seed, &name, rank);
    let mut report = SuiteReport::new(name);
    let one = LaurentPoly::one(field.clone(), rank)?;
    for trial in 0..trials {
        let c = random_poly(field, rank, &mut rng);
        let d = random_poly(field, rank, &mut rng);
        let w = S::random(field, rank, &mut rng);
        let composed = w.shifted_by(&d)?.shifted_by(&c)?;
        let product = w.shifted_by(&c.mul(&d)?)?;
        let identity = w.shifted_by(&one)? == w;
        report.record(composed == product && identity, || {
            format!(
                "seed={seed} trial={trial} c={} d={} W={}",
                format_poly(&c),
                format_poly(&d),
                w.describe()
            )
        });
    }
    Ok(report)
}

/// `⟨X^γ, W⟩ = W_γ` for random `γ` and `W`.
pub fn extraction_suite<K: Field, S: TrialSequence<K>>(
    field: &K,
    rank: usize,
    trials: usize,
    seed: u64,
) -> Result<SuiteReport> {
    let name = format!("extraction[{}] r={rank}", S::KIND);
    let mut rng = rng_for(seed, &name, rank);
    let mut report = SuiteReport::new(name);
    for trial in 0..trials {
        let w = S::random(field, rank, &mut rng);
        let gamma = random_exponent(rank, EXP_BOUND + 2, &mut rng);
        let mono = LaurentPoly::monomial(field.clone(), gamma.clone(), field.one())?;
        let ok = field.equal(&scalar_product(&mono, &w)?, &w.coeff(&gamma)?);
        report.record(ok, || {
            format!(
                "seed={seed} trial={trial} gamma={gamma:?} W={}",
                w.describe()
            )
        });
    }
    Ok(report)
}

/// `⟨d, δ_γ⟩ = d_γ` for random `d` and `γ`.
pub fn delta_extraction_suite<K: Field>(
    field: &K,
    rank: usize,
    trials: usize,
    seed: u64,
) -> Result<SuiteReport> {
    let name = format!("delta-extraction r={rank}");
    let mut rng = rng_for(seed, &name, rank);
    let mut report = SuiteReport::new(name);
    for trial in 0..trials {
        let d = random_poly(field, rank, &mut rng);
        // half the time hit the support, otherwise a random point
        let gamma = match d.support().nth(rng.gen_range(0..=MAX_TERMS)) {
            Some(e) if rng.gen_bool(0.5) => e.clone(),
            _ => random_exponent(rank, EXP_BOUND + 2, &mut rng),
        };
        let delta = FiniteSeq::delta(field.clone(), gamma.clone())?;
        let ok = field.equal(&scalar_product(&d, &delta)?, &d.coeff(&gamma)?);
        report.record(ok, || {
            format!(
                "seed={seed} trial={trial} d={} gamma={gamma:?}",
                format_poly(&d)
            )
        });
    }
    Ok(report)
}

/// Linearity of the pairing in each argument.
pub fn bilinearity_suite<K: Field, S: TrialSequence<K>>(
    field: &K,
    rank: usize,
    trials: usize,
    seed: u64,
) -> Result<SuiteReport> {
    let name = format!("bilinearity[{}] r={rank}", S::KIND);
    let mut rng = rng_for(seed, &name, rank);
    let mut report = SuiteReport::new(name);
    let f = field;
    for trial in 0..trials {
        let (a, b) = (f.random(&mut rng), f.random(&mut rng));
        let d1 = random_poly(f, rank, &mut rng);
        let d2 = random_poly(f, rank, &mut rng);
        let w1 = S::random(f, rank, &mut rng);
        // second sequence on the same lattice, when periodic
        let w2 = w1.shifted_by(&random_poly(f, rank, &mut rng))?;

        let combo = d1.scale(&a).add(&d2.scale(&b))?;
        let left = scalar_product(&combo, &w1)?;
        let left_expected = f.add(
            &f.mul(&a, &scalar_product(&d1, &w1)?),
            &f.mul(&b, &scalar_product(&d2, &w1)?),
        );
        let wcombo = w1.scaled(&a).plus(&w2.scaled(&b))?;
        let right = scalar_product(&d1, &wcombo)?;
        let right_expected = f.add(
            &f.mul(&a, &scalar_product(&d1, &w1)?),
            &f.mul(&b, &scalar_product(&d1, &w2)?),
        );
        let ok = f.equal(&left, &left_expected) && f.equal(&right, &right_expected);
        report.record(ok, || {
            format!(
                "seed={seed} trial={trial} d1={} d2={} W1={} W2={}",
                format_poly(&d1),
                format_poly(&d2),
                w1.describe(),
                w2.describe()
            )
        });
    }
    Ok(report)
}

/// `supp(d ∘ W) ⊆ {β : α + β ∈ supp W, α ∈ supp d}` for finite `W`.
pub fn support_bound_suite<K: Field>(
    field: &K,
    rank: usize,
    trials: usize,
    seed: u64,
) -> Result<SuiteReport> {
    let name = format!("support-bound r={rank}");
    let mut rng = rng_for(seed, &name, rank);
    let mut report = SuiteReport::new(name);
    for trial in 0..trials {
        let d = random_poly(field, rank, &mut rng);
        let w = <FiniteSeq<K> as TrialSequence<K>>::random(field, rank, &mut rng);
        let out = shift_apply(&d, &w)?;
        let ok = out.support().all(|beta| {
            d.support()
                .any(|alpha| !field.is_zero(&w.value_at(&alpha.add(beta))))
        });
        report.record(ok, || {
            format!(
                "seed={seed} trial={trial} d={} W={}",
                format_poly(&d),
                w.describe()
            )
        });
    }
    Ok(report)
}

/// Distinct polynomials are told apart by some `δ_γ`, with `γ` taken from
/// the support of their difference.
pub fn injectivity_suite<K: Field>(
    field: &K,
    rank: usize,
    trials: usize,
    seed: u64,
) -> Result<SuiteReport> {
    let name = format!("injectivity r={rank}");
    let mut rng = rng_for(seed, &name, rank);
    let mut report = SuiteReport::new(name);
    for trial in 0..trials {
        let d1 = random_poly(field, rank, &mut rng);
        let mut d2 = random_poly(field, rank, &mut rng);
        if d2 == d1 {
            let bump = LaurentPoly::monomial(
                field.clone(),
                random_exponent(rank, EXP_BOUND, &mut rng),
                field.one(),
            )?;
            d2 = d2.add(&bump)?;
        }
        let witness = d1.sub(&d2)?.support().next().cloned();
        let ok = match &witness {
            Some(gamma) => {
                let delta = FiniteSeq::delta(field.clone(), gamma.clone())?;
                !field.equal(&scalar_product(&d1, &delta)?, &scalar_product(&d2, &delta)?)
            }
            None => false,
        };
        report.record(ok, || {
            format!(
                "seed={seed} trial={trial} d1={} d2={} witness={witness:?}",
                format_poly(&d1),
                format_poly(&d2)
            )
        });
    }
    Ok(report)
}

/// A functional `ψ` given by finite data is recovered as the sequence
/// `W_α = ψ(X^α)` and then agrees with `⟨·, W⟩`.
pub fn functional_suite<K: Field>(
    field: &K,
    rank: usize,
    trials: usize,
    seed: u64,
) -> Result<SuiteReport> {
    let name = format!("functional r={rank}");
    let mut rng = rng_for(seed, &name, rank);
    let mut report = SuiteReport::new(name);
    for trial in 0..trials {
        // ψ(d) = Σ_α d_α h(α) for a hidden periodic table h
        let hidden = <PeriodicSeq<K> as TrialSequence<K>>::random(field, rank, &mut rng);
        let psi = |d: &LaurentPoly<K>| {
            d.terms().fold(field.zero(), |acc, (alpha, c)| {
                field.add(&acc, &field.mul(c, &hidden.value_at(alpha)))
            })
        };
        let d = random_poly(field, rank, &mut rng);
        let recovered = FiniteSeq::from_terms(
            field.clone(),
            rank,
            d.support()
                .map(|alpha| {
                    let mono = LaurentPoly::monomial(field.clone(), alpha.clone(), field.one())?;
                    Ok((alpha.clone(), psi(&mono)))
                })
                .collect::<Result<Vec<_>>>()?,
        )?;
        let ok = field.equal(&psi(&d), &scalar_product(&d, &recovered)?);
        report.record(ok, || {
            format!(
                "seed={seed} trial={trial} d={} psi={}",
                format_poly(&d),
                hidden.describe()
            )
        });
    }
    Ok(report)
}

/// Polynomial ↔ finite sequence conversions are mutually inverse.
pub fn isomorphism_suite<K: Field>(
    field: &K,
    rank: usize,
    trials: usize,
    seed: u64,
) -> Result<SuiteReport> {
    let name = format!("isomorphism r={rank}");
    let mut rng = rng_for(seed, &name, rank);
    let mut report = SuiteReport::new(name);
    for trial in 0..trials {
        let d = random_poly(field, rank, &mut rng);
        let w = <FiniteSeq<K> as TrialSequence<K>>::random(field, rank, &mut rng);
        let seq = FiniteSeq::from_poly(&d);
        let coefficients_kept = d.terms().all(|(e, c)| field.equal(&seq.value_at(e), c))
            && seq.num_terms() == d.num_terms();
        let ok = coefficients_kept && seq.to_poly() == d && FiniteSeq::from_poly(&w.to_poly()) == w;
        report.record(ok, || {
            format!(
                "seed={seed} trial={trial} d={} W={}",
                format_poly(&d),
                w.describe()
            )
        });
    }
    Ok(report)
}

/// Every suite for ranks 1..=3 and both sequence representations.
pub fn run_all<K: Field>(field: &K, trials: usize, seed: u64) -> Result<Vec<SuiteReport>> {
    let mut out = Vec::new();
    for rank in 1..=3 {
        out.push(adjoint_suite::<K, FiniteSeq<K>>(field, rank, trials, seed)?);
        out.push(adjoint_suite::<K, PeriodicSeq<K>>(
            field, rank, trials, seed,
        )?);
        out.push(module_action_suite::<K, FiniteSeq<K>>(
            field, rank, trials, seed,
        )?);
        out.push(module_action_suite::<K, PeriodicSeq<K>>(
            field, rank, trials, seed,
        )?);
        out.push(extraction_suite::<K, FiniteSeq<K>>(
            field, rank, trials, seed,
        )?);
        out.push(extraction_suite::<K, PeriodicSeq<K>>(
            field, rank, trials, seed,
        )?);
        out.push(delta_extraction_suite(field, rank, trials, seed)?);
        out.push(bilinearity_suite::<K, FiniteSeq<K>>(
            field, rank, trials, seed,
        )?);
        out.push(bilinearity_suite::<K, PeriodicSeq<K>>(
            field, rank, trials, seed,
        )?);
        out.push(support_bound_suite(field, rank, trials, seed)?);
        out.push(injectivity_suite(field, rank, trials, seed)?);
        out.push(functional_suite(field, rank, trials, seed)?);
        out.push(isomorphism_suite(field, rank, trials, seed)?);
    }
    Ok(out)
}
