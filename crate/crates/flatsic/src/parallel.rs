//! Rayon-backed versions of the search and the prime sweeps. Each returns
//! exactly what its serial counterpart would.

use flatsic_core::legendre::{self, LegendreClassification, PerronCounts, ResidueTable};
use flatsic_core::search::{run_restart, SearchConfig, SearchOutcome};
use flatsic_core::Dim;
use rayon::prelude::*;

use crate::error::Result;

pub fn minimize(config: &SearchConfig) -> Result<SearchOutcome> {
    config.validate()?;
    let results = (0..config.restarts)
        .into_par_iter()
        .map(|r| run_restart(config, r))
        .collect();
    Ok(SearchOutcome::from_results(config.clone(), results))
}

/// Legendre classification for every prime `p ≡ 3 mod 4` up to `pmax`.
pub fn classify_up_to(pmax: u64) -> Result<Vec<LegendreClassification>> {
    legendre::primes_3_mod_4(pmax)
        .into_par_iter()
        .map(|p| Ok(legendre::classify_legendre(Dim::new(p)?)?))
        .collect()
}

/// Perron counts for every prime `p ≡ 3 mod 4` up to `pmax` and every shift
/// `a = 1..p-1`, ordered by `(p, a)`.
pub fn perron_up_to(pmax: u64) -> Result<Vec<PerronCounts>> {
    let per_prime: Vec<Vec<PerronCounts>> = legendre::primes_3_mod_4(pmax)
        .into_par_iter()
        .map(|p| {
            let table = ResidueTable::new(p)?;
            (1..p as i64)
                .map(|a| Ok(legendre::perron_counts_with(&table, p, a)?))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(per_prime.into_iter().flatten().collect())
}

/// Worst deviation of the closed-form Legendre autocorrelations from the
/// direct sums, over both branches, per prime up to `pmax`.
pub fn lemma1_up_to(pmax: u64) -> Result<Vec<(u64, f64)>> {
    legendre::primes_3_mod_4(pmax)
        .into_par_iter()
        .map(|p| {
            let dim = Dim::new(p)?;
            let mut worst: f64 = 0.0;
            for sign in [1, -1] {
                let x1 = legendre::legendre_x1(dim, sign)?;
                worst = worst.max(legendre::lemma1_max_deviation(dim, x1)?);
            }
            Ok((p, worst))
        })
        .collect()
}
