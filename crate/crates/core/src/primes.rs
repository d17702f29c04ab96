//! Segmented sieving, prime navigation, and the base tables used by the
//! pi_f engine.
//!
//! `PrimeTables` bundles, for a bound y: the primes up to y (with the
//! convention prime\[0\] = 1), the table pi(t) for t <= y, the summatory
//! values pi_f(p_k) for each registered weight, and the least-prime-factor /
//! Möbius tables produced by a linear sieve. It is immutable after
//! construction and safe to share across threads.

use crate::arith::{is_prime, isqrt_u64};
use crate::error::{Error, Result};
use crate::prime_sum::Weight;

/// Largest prime representable in a u64.
pub const LARGEST_U64_PRIME: u64 = 18_446_744_073_709_551_557;

/// Default ceiling on the base-table bound y (the linear sieve stores three
/// y-sized arrays).
pub const MAX_TABLE_Y: u64 = 1 << 31;

/// Default ceiling on the width of a single sieved segment.
pub const MAX_SEGMENT_WIDTH: u64 = 1 << 28;

/// Simple odd-only Eratosthenes. Returns all primes <= limit.
pub fn simple_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    // composite[i] refers to the odd number 2i+1
    let half = n / 2 + 1;
    let mut composite = vec![false; half];
    let mut i = 1usize;
    while (2 * i + 1) * (2 * i + 1) <= n {
        if !composite[i] {
            let p = 2 * i + 1;
            let mut j = (p * p) / 2;
            while j < half {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    let mut primes = Vec::with_capacity((n as f64 / (n.max(3) as f64).ln() * 1.2) as usize + 16);
    primes.push(2);
    for i in 1..half {
        if !composite[i] && 2 * i + 1 <= n {
            primes.push(2 * i as u64 + 1);
        }
    }
    primes
}

/// Primes in [lo, hi], ascending, by segmented Eratosthenes over the base
/// primes. `base` must contain every prime <= sqrt(hi).
pub fn sieve_segment_with(base: &[u64], lo: u64, hi: u64) -> Vec<u64> {
    if hi < lo || hi < 2 {
        return Vec::new();
    }
    let lo = lo.max(2);
    let width = (hi - lo + 1) as usize;
    let mut composite = vec![false; width];
    for &p in base {
        if p * p > hi {
            break;
        }
        let mut start = lo.div_ceil(p) * p;
        if start == p {
            start += p;
        }
        let mut j = start;
        while j <= hi {
            composite[(j - lo) as usize] = true;
            j += p;
        }
    }
    (0..width)
        .filter(|&i| !composite[i])
        .map(|i| lo + i as u64)
        .collect()
}

/// Primes in [lo, hi], ascending.
///
/// Generates its own base primes up to sqrt(hi); the segment width is
/// bounded to keep the bitmap in memory.
pub fn sieve_segment(lo: u64, hi: u64) -> Result<Vec<u64>> {
    if lo < 2 || hi < lo {
        return Err(Error::domain(format!(
            "sieve_segment requires 2 <= lo <= hi, got [{lo}, {hi}]"
        )));
    }
    if hi - lo + 1 > MAX_SEGMENT_WIDTH {
        return Err(Error::resource(format!(
            "segment [{lo}, {hi}] wider than {MAX_SEGMENT_WIDTH}"
        )));
    }
    let base = simple_primes(isqrt_u64(hi));
    Ok(sieve_segment_with(&base, lo, hi))
}

/// Smallest prime >= m (the paper writes m with a star superscript).
pub fn next_prime(m: u64) -> Result<u64> {
    if m <= 2 {
        return Ok(2);
    }
    if m > LARGEST_U64_PRIME {
        return Err(Error::capacity(format!("no prime >= {m} fits in u64")));
    }
    let mut c = m | 1; // first odd >= m
    while !is_prime(c) {
        c += 2;
    }
    Ok(c)
}

/// Largest prime <= m.
pub fn prev_prime(m: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::domain(format!("no prime <= {m}")));
    }
    if m == 2 {
        return Ok(2);
    }
    let mut c = if m % 2 == 0 { m - 1 } else { m };
    while c >= 3 {
        if is_prime(c) {
            return Ok(c);
        }
        c -= 2;
    }
    Ok(2)
}

/// Base tables for the engine, valid up to `y`.
pub struct PrimeTables {
    pub y: u64,
    /// primes\[k\] = p_k, with the sentinel primes\[0\] = 1.
    primes: Vec<u64>,
    /// pi\[t\] = number of primes <= t, 0 <= t <= y.
    pi: Vec<u32>,
    /// piftab\[w\]\[k\] = pi_f(primes\[k\]) for weight w, when registered.
    piftab: [Option<Vec<i128>>; 2],
    /// Least prime factor, 0 for 0 and 1.
    lpf: Vec<u32>,
    /// Möbius function, 0 on non-squarefree.
    mobius: Vec<i8>,
}

impl PrimeTables {
    /// Linear sieve up to y plus the summatory tables for `weights`.
    pub fn build(y: u64, weights: &[Weight]) -> Result<PrimeTables> {
        if y < 2 {
            return Err(Error::domain(format!("table bound y = {y} < 2")));
        }
        if y > MAX_TABLE_Y {
            return Err(Error::resource(format!(
                "table bound y = {y} exceeds {MAX_TABLE_Y}"
            )));
        }
        let n = y as usize;
        let mut lpf = vec![0u32; n + 1];
        let mut mobius = vec![0i8; n + 1];
        if n >= 1 {
            mobius[1] = 1;
        }
        let mut primes: Vec<u64> = vec![1];
        for i in 2..=n {
            if lpf[i] == 0 {
                lpf[i] = i as u32;
                mobius[i] = -1;
                primes.push(i as u64);
            }
            // iterate registered primes p <= lpf[i] with p*i <= n
            for k in 1..primes.len() {
                let p = primes[k] as usize;
                if p > lpf[i] as usize || p * i > n {
                    break;
                }
                lpf[p * i] = p as u32;
                mobius[p * i] = if p == lpf[i] as usize { 0 } else { -mobius[i] };
            }
        }
        let mut pi = vec![0u32; n + 1];
        let mut count = 0u32;
        for t in 2..=n {
            if lpf[t] == t as u32 {
                count += 1;
            }
            pi[t] = count;
        }
        let mut piftab: [Option<Vec<i128>>; 2] = [None, None];
        for &w in weights {
            let mut tab = Vec::with_capacity(primes.len());
            tab.push(0i128);
            let mut acc = 0i128;
            for &p in &primes[1..] {
                acc += w.f(p);
                tab.push(acc);
            }
            piftab[w as usize] = Some(tab);
        }
        Ok(PrimeTables {
            y,
            primes,
            pi,
            piftab,
            lpf,
            mobius,
        })
    }

    /// Number of primes <= y.
    #[inline]
    pub fn prime_count(&self) -> usize {
        self.primes.len() - 1
    }

    /// p_k (prime\[0\] = 1).
    #[inline]
    pub fn prime(&self, k: usize) -> u64 {
        self.primes[k]
    }

    #[inline]
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// pi(t) for t <= y.
    #[inline]
    pub fn pi(&self, t: u64) -> usize {
        debug_assert!(t <= self.y);
        self.pi[t as usize] as usize
    }

    #[inline]
    pub fn lpf(&self, m: u64) -> u64 {
        self.lpf[m as usize] as u64
    }

    #[inline]
    pub fn mobius(&self, m: u64) -> i8 {
        self.mobius[m as usize]
    }

    /// pi_f(p_k) from the summatory table.
    #[inline]
    pub fn pif_prime(&self, w: Weight, k: usize) -> i128 {
        self.piftab[w as usize].as_ref().expect("weight not registered")[k]
    }

    /// pi_f(t) for any t <= y.
    #[inline]
    pub fn pif_at(&self, w: Weight, t: u64) -> i128 {
        self.pif_prime(w, self.pi(t))
    }

    pub fn has_weight(&self, w: Weight) -> bool {
        self.piftab[w as usize].is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_primes(lo: u64, hi: u64) -> Vec<u64> {
        (lo.max(2)..=hi).filter(|&n| is_prime_td(n)).collect()
    }

    fn is_prime_td(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                return false;
            }
            d += 1;
        }
        true
    }

    #[test]
    fn simple_sieve_counts() {
        assert_eq!(simple_primes(1), vec![]);
        assert_eq!(simple_primes(2), vec![2]);
        assert_eq!(simple_primes(11), vec![2, 3, 5, 7, 11]);
        assert_eq!(simple_primes(100_000).len(), 9592);
    }

    #[test]
    fn segment_examples() {
        assert_eq!(sieve_segment(2, 11).unwrap(), vec![2, 3, 5, 7, 11]);
        // 396833 is prime and alone in its window
        assert_eq!(sieve_segment(396_830, 396_840).unwrap(), vec![396_833]);
        // a prime-free window, cross-checked by trial division
        assert_eq!(sieve_segment(114, 126).unwrap(), Vec::<u64>::new());
        assert_eq!(trial_primes(114, 126), Vec::<u64>::new());
    }

    #[test]
    fn segment_matches_trial_division_on_random_windows() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..60 {
            let lo = rng.gen_range(2..1_000_000_000_000u64);
            let width = rng.gen_range(0..3_000u64);
            let hi = lo + width;
            assert_eq!(sieve_segment(lo, hi).unwrap(), trial_primes(lo, hi));
        }
    }

    #[test]
    fn segment_domain_and_budget_errors() {
        assert!(matches!(sieve_segment(1, 10), Err(Error::Domain(_))));
        assert!(matches!(sieve_segment(10, 9), Err(Error::Domain(_))));
        assert!(matches!(
            sieve_segment(2, 2 + MAX_SEGMENT_WIDTH),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn next_prev_examples() {
        assert_eq!(next_prime(4).unwrap(), 5);
        assert_eq!(next_prime(5).unwrap(), 5);
        assert_eq!(next_prime(90).unwrap(), 97);
        assert_eq!(prev_prime(2).unwrap(), 2);
        assert_eq!(prev_prime(10).unwrap(), 7);
        assert_eq!(prev_prime(396_833).unwrap(), 396_833);
        assert!(matches!(prev_prime(1), Err(Error::Domain(_))));
    }

    #[test]
    fn next_prev_match_trial_division() {
        for m in 2..3_000u64 {
            let np = (m..).find(|&c| is_prime_td(c)).unwrap();
            let pp = (2..=m).rev().find(|&c| is_prime_td(c)).unwrap();
            assert_eq!(next_prime(m).unwrap(), np, "next_prime({m})");
            assert_eq!(prev_prime(m).unwrap(), pp, "prev_prime({m})");
        }
    }

    #[test]
    fn gap_ratio_bounds() {
        // m* <= 11m/8 and *m >= 7m/10 on a sampled range
        for m in 2..100_000u64 {
            let np = next_prime(m).unwrap();
            let pp = prev_prime(m).unwrap();
            assert!(8 * np <= 11 * m, "m = {m}");
            assert!(10 * pp >= 7 * m, "m = {m}");
        }
    }

    #[test]
    fn tables_invariants() {
        let t = PrimeTables::build(2657, &[Weight::Unit, Weight::Identity]).unwrap();
        assert_eq!(t.prime(0), 1);
        assert_eq!(t.prime(1), 2);
        assert_eq!(t.pi(2657), 384);
        assert_eq!(t.pif_at(Weight::Unit, 2657), 384);
        assert_eq!(t.pif_at(Weight::Identity, 2657), 464_653);
        for k in 1..=t.prime_count() {
            let p = t.prime(k);
            assert_eq!(t.pi(p), k);
            assert!(t.prime(k - 1) < p);
            for &w in &[Weight::Unit, Weight::Identity] {
                assert_eq!(t.pif_prime(w, k) - t.pif_prime(w, k - 1), w.f(p));
            }
        }
        // pi table built for y = 10 with identity weight: 0,2,5,10,17
        let t = PrimeTables::build(10, &[Weight::Identity]).unwrap();
        let vals: Vec<i128> = (0..=4).map(|k| t.pif_prime(Weight::Identity, k)).collect();
        assert_eq!(vals, vec![0, 2, 5, 10, 17]);
    }

    #[test]
    fn mobius_and_lpf() {
        let t = PrimeTables::build(1000, &[]).unwrap();
        for m in 2..=1000u64 {
            let mut n = m;
            let mut mu = 1i8;
            let mut square = false;
            let mut d = 2;
            let mut least = 0;
            while d * d <= n {
                if n % d == 0 {
                    if least == 0 {
                        least = d;
                    }
                    let mut e = 0;
                    while n % d == 0 {
                        n /= d;
                        e += 1;
                    }
                    if e > 1 {
                        square = true;
                    }
                    mu = -mu;
                }
                d += 1;
            }
            if n > 1 {
                if least == 0 {
                    least = n;
                }
                mu = -mu;
            }
            let expect_mu = if square { 0 } else { mu };
            assert_eq!(t.mobius(m), expect_mu, "mu({m})");
            assert_eq!(t.lpf(m), least, "lpf({m})");
        }
    }
}
