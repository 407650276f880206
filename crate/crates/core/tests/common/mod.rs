#![allow(dead_code)]

//! Test-only oracles. Nothing here calls into `swseries`; the chamber
//! series are expanded term by term straight from the coefficients of Δ.

use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use swknot::knots;
use swknot::LaurentPoly;

/// Coefficient map of `(∓1)·Σ_{n=0}^{n_max} e^{∓(2n+1)}·Δ(e^{2})`, summed
/// term by term. `sign = +1` is the plus chamber.
pub fn expand_chamber(delta: &LaurentPoly, sign: i64, n_max: i64) -> BTreeMap<i64, i64> {
    let mut out = BTreeMap::new();
    for n in 0..=n_max {
        for (k, a) in delta.terms() {
            let lambda = 2 * k - sign * (2 * n + 1);
            *out.entry(lambda).or_insert(0) += -sign * a;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

/// Chamber series restricted to `|λ| ≤ window`, with enough terms that every
/// coefficient inside the window is complete.
pub fn chamber_oracle(delta: &LaurentPoly, sign: i64, window: i64) -> BTreeMap<i64, i64> {
    let span = delta.span().unwrap_or(0);
    let n_max = (window + span) / 2 + 1;
    expand_chamber(delta, sign, n_max).into_iter().filter(|(l, _)| l.abs() <= window).collect()
}

/// `SW°` by truncated direct summation: positive-λ part of the plus series
/// plus negative-λ part of the minus series.
pub fn small_perturbation_oracle(delta: &LaurentPoly, window: i64) -> BTreeMap<i64, i64> {
    let plus = chamber_oracle(delta, 1, window);
    let minus = chamber_oracle(delta, -1, window);
    plus.into_iter()
        .filter(|(l, _)| *l > 0)
        .chain(minus.into_iter().filter(|(l, _)| *l < 0))
        .collect()
}

pub fn genus(delta: &LaurentPoly) -> i64 {
    delta.span().unwrap_or(0) / 2
}

/// Symmetric Δ with Δ(1) = 1, genus `g`, top coefficient `±1`.
pub fn random_monic_delta(rng: &mut StdRng, g: i64) -> LaurentPoly {
    if g == 0 {
        return LaurentPoly::one();
    }
    let mut coeffs = vec![0i64; g as usize + 1];
    coeffs[g as usize] = if rng.gen_bool(0.5) { 1 } else { -1 };
    for c in coeffs.iter_mut().take(g as usize).skip(1) {
        *c = rng.gen_range(-5..=5);
    }
    coeffs[0] = 1 - 2 * coeffs[1..].iter().sum::<i64>();
    let terms = (1..=g).flat_map(|k| [(k, coeffs[k as usize]), (-k, coeffs[k as usize])]);
    LaurentPoly::from_terms(terms.chain([(0, coeffs[0])])).unwrap()
}

/// 100 random suite polynomials, genus 1..=5, fixed seed.
pub fn random_suite() -> Vec<LaurentPoly> {
    let mut rng = StdRng::seed_from_u64(0x5eed_0e11);
    (0..100).map(|i| random_monic_delta(&mut rng, 1 + i % 5)).collect()
}

/// Built-in knots as `(name, Δ)`.
pub fn builtin_deltas() -> Vec<(String, LaurentPoly)> {
    knots::builtin_table()
        .iter()
        .map(|row| (row.name.clone(), row.to_input().unwrap().alexander().unwrap()))
        .collect()
}

pub fn builtin_fibered() -> Vec<(String, LaurentPoly)> {
    builtin_deltas().into_iter().filter(|(_, d)| knots::is_fibered_candidate(d)).collect()
}

pub fn poly(s: &str) -> LaurentPoly {
    s.parse().unwrap()
}
