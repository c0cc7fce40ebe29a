//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use bilaurent::{PolyMatrix, PrimeField};

/// Entries of a polynomial matrix as plain `(exponent, coefficient)` lists.
pub type RawEntries = Vec<Vec<Vec<(Vec<i64>, u64)>>>;

pub fn raw_entries(m: &PolyMatrix<PrimeField>) -> RawEntries {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| {
                    m.entry(i, j)
                        .terms()
                        .map(|(e, c)| (e.components().to_vec(), *c))
                        .collect()
                })
                .collect()
        })
        .collect()
}

fn domain_index(alpha: &[i64], periods: &[usize]) -> usize {
    alpha
        .iter()
        .zip(periods)
        .fold(0, |acc, (&a, &n)| acc * n + a.rem_euclid(n as i64) as usize)
}

fn domain_points(periods: &[usize]) -> Vec<Vec<i64>> {
    let mut points = vec![vec![]];
    for &n in periods {
        points = points
            .into_iter()
            .flat_map(|p| {
                (0..n as i64).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    points
}

/// Does the stacked periodic vector `w` (component-major) satisfy
/// `Σ_j Σ_α R_ij,α W_j(α + β) = 0 (mod q)` for every `i` and `β`?
pub fn is_member(entries: &RawEntries, periods: &[usize], q: u64, w: &[u64]) -> bool {
    let size: usize = periods.iter().product();
    let points = domain_points(periods);
    entries.iter().all(|row| {
        points.iter().all(|beta| {
            let mut sum = 0u64;
            for (j, entry) in row.iter().enumerate() {
                for (alpha, c) in entry {
                    let shifted: Vec<i64> = alpha.iter().zip(beta).map(|(a, b)| a + b).collect();
                    sum = (sum + c * w[j * size + domain_index(&shifted, periods)]) % q;
                }
            }
            sum == 0
        })
    })
}

/// Every member of the periodic behavior, by exhaustive enumeration of
/// all `q^(l·D)` candidates.
pub fn enumerate_members(entries: &RawEntries, periods: &[usize], q: u64) -> Vec<Vec<u64>> {
    let l = entries.first().map_or(0, Vec::len);
    let len = l * periods.iter().product::<usize>();
    let mut w = vec![0u64; len];
    let mut members = Vec::new();
    loop {
        if is_member(entries, periods, q, &w) {
            members.push(w.clone());
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == len {
                return members;
            }
            w[i] += 1;
            if w[i] < q {
                break;
            }
            w[i] = 0;
            i += 1;
        }
    }
}

/// `log_q(count)` when `count` is an exact power of `q`.
pub fn exact_log(count: usize, q: u64) -> Option<usize> {
    let mut n = 1usize;
    for e in 0..64 {
        if n == count {
            return Some(e);
        }
        n = n.checked_mul(q as usize)?;
    }
    None
}
