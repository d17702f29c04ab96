//! h(n) for large n, in factored form.
//!
//! The pipeline locates the unique k with sigma_k <= n < sigma_{k+1} by
//! inverting Li to land near p_k, computing pi_id exactly there with the
//! sublinear engine, and walking certified primes to the bracket. The value
//! is then h(n) = N_k * G(p_k, n - sigma_k), held as a primorial base times
//! a small prime fraction rather than as an integer: at n = 10^35 the
//! integer has ~10^18 digits, the factored form a handful of words.

use crate::analytic::{li_inverse, LiConfig};
use crate::arith::isqrt_u64;
use crate::error::{Error, Result};
use crate::g_func::{g, GConfig, GStats};
use crate::h_table::{compute_table, Alphabet, HTable};
use crate::prime_sum::{pif, PifConfig, Weight, PIF_MAX_X};
use crate::primes::{next_prime, prev_prime, simple_primes};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::sync::OnceLock;

/// Largest supported n: every pi_id intermediate stays within i128 (and the
/// located abscissa within the engine's x range).
pub const MAX_N: u128 = 160_000_000_000_000_000_000_000_000_000_000_000;

/// h(n) = N_b * (numer product) / (denom product), with N_b the primorial of
/// the base prime.
#[derive(Clone, Debug, PartialEq)]
pub struct FactoredH {
    pub n: u128,
    /// p_b; 1 encodes the empty primorial N_0 (h = 1).
    pub base_prime: u64,
    /// pi(p_b), when it was cheap enough to compute.
    pub base_index: Option<u64>,
    /// sigma_b = sum of primes up to p_b.
    pub sigma_base: u128,
    /// Ascending primes > p_b.
    pub numer: Vec<u64>,
    /// Ascending distinct primes <= p_b (each divides N_b).
    pub denom: Vec<u64>,
    /// log10 of the value, when p_b was below the reporting budget.
    pub log10: Option<f64>,
}

impl FactoredH {
    fn unit(n: u128) -> FactoredH {
        FactoredH {
            n,
            base_prime: 1,
            base_index: Some(0),
            sigma_base: 0,
            numer: Vec::new(),
            denom: Vec::new(),
            log10: Some(0.0),
        }
    }

    /// ell(h) = sigma_b + sum(numer) - sum(denom).
    pub fn ell(&self) -> u128 {
        let plus: u128 = self.numer.iter().map(|&p| p as u128).sum();
        let minus: u128 = self.denom.iter().map(|&p| p as u128).sum();
        self.sigma_base + plus - minus
    }

    /// Exact value comparison; enumerates the primes between the two base
    /// primes, so it is meant for values whose bases are close.
    pub fn cmp_value(&self, other: &FactoredH) -> Result<Ordering> {
        if self.base_prime > other.base_prime {
            return Ok(other.cmp_value(self)?.reverse());
        }
        // self.base <= other.base: N_other / N_self = product of the
        // in-between primes
        let mut mid = BigUint::one();
        let mut c = self.base_prime.max(1) + 1;
        let mut steps = 0u32;
        while c <= other.base_prime {
            let p = next_prime(c)?;
            if p > other.base_prime {
                break;
            }
            mid *= p;
            c = p + 1;
            steps += 1;
            if steps > 1_000_000 {
                return Err(Error::resource(
                    "cmp_value: base primes too far apart to compare exactly",
                ));
            }
        }
        let lhs = self.numer_prod() * other.denom_prod();
        let rhs = other.numer_prod() * self.denom_prod() * mid;
        Ok(lhs.cmp(&rhs))
    }

    fn numer_prod(&self) -> BigUint {
        self.numer.iter().fold(BigUint::one(), |a, &p| a * p)
    }

    fn denom_prod(&self) -> BigUint {
        self.denom.iter().fold(BigUint::one(), |a, &p| a * p)
    }
}

/// The bracket sigma_k <= n < sigma_k + p_next produced by locate_k.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocatedK {
    pub p_k: u64,
    pub sigma_k: u128,
    pub p_next: u64,
    /// k itself, filled when the direct path counted the primes.
    pub k: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct HConfig {
    /// Below this n the DP table is authoritative.
    pub small_n_threshold: u64,
    /// Below this n, locate_k sums primes directly instead of running the
    /// engine.
    pub locate_direct_threshold: u128,
    /// expand() materializes N_b only for p_b up to this bound.
    pub expand_budget: u64,
    /// pi(p_b) and log10 are reported only for p_b up to this bound.
    pub index_budget: u64,
    pub pif: PifConfig,
    pub g: GConfig,
    pub li: LiConfig,
}

impl Default for HConfig {
    fn default() -> Self {
        HConfig {
            small_n_threshold: 5350,
            locate_direct_threshold: 1_000_000,
            expand_budget: 10_000,
            index_budget: 1_000_000_000,
            pif: PifConfig::default(),
            g: GConfig::default(),
            li: LiConfig::default(),
        }
    }
}

/// An h value plus the optimizer diagnostics of the run that produced it.
#[derive(Clone, Debug)]
pub struct HOutcome {
    pub value: FactoredH,
    pub g_stats: Option<GStats>,
}

pub struct HEngine {
    cfg: HConfig,
    table: OnceLock<HTable>,
}

impl HEngine {
    pub fn new(cfg: HConfig) -> Result<HEngine> {
        if !(10..=100_000).contains(&cfg.small_n_threshold) {
            return Err(Error::domain(
                "small_n_threshold must lie in [10, 100000]",
            ));
        }
        cfg.li.validated()?;
        Ok(HEngine {
            cfg,
            table: OnceLock::new(),
        })
    }

    pub fn with_defaults() -> HEngine {
        HEngine::new(HConfig::default()).expect("default config is valid")
    }

    pub fn config(&self) -> &HConfig {
        &self.cfg
    }

    /// The DP table up to small_n_threshold, built on first use.
    pub fn small_table(&self) -> &HTable {
        self.table.get_or_init(|| {
            compute_table(self.cfg.small_n_threshold, Alphabet::All)
                .expect("threshold validated at construction")
        })
    }

    /// The unique bracket p_k, sigma_k, p_{k+1} with
    /// sigma_k <= n < sigma_{k+1}.
    pub fn locate_k(&self, n: u128) -> Result<LocatedK> {
        if n < 2 {
            return Err(Error::domain("locate_k requires n >= 2"));
        }
        if n > MAX_N {
            return Err(Error::capacity(format!("n exceeds the supported range {MAX_N}")));
        }
        if n <= self.cfg.locate_direct_threshold {
            return locate_direct(n as u64);
        }
        let x_est = li_inverse(n as f64, &self.cfg.li)?.sqrt();
        let x = (x_est.round() as u64).clamp(2, PIF_MAX_X);
        let sigma_x = pif(x, Weight::Identity, &self.cfg.pif)?;
        let target = n as i128;
        let mut sigma = sigma_x;
        let mut cur = x;
        while sigma > target {
            let p = prev_prime(cur)?;
            sigma -= p as i128;
            cur = p - 1;
        }
        loop {
            let p = next_prime(cur + 1)?;
            if sigma + p as i128 > target {
                let p_k = prev_prime(cur)?;
                let sigma_k = sigma as u128;
                debug_assert!(sigma_k <= n && n < sigma_k + p as u128);
                return Ok(LocatedK {
                    p_k,
                    sigma_k,
                    p_next: p,
                    k: None,
                });
            }
            sigma += p as i128;
            cur = p;
        }
    }

    /// h(n): DP-backed below the threshold, pipeline above.
    pub fn h(&self, n: u128) -> Result<HOutcome> {
        if n > MAX_N {
            return Err(Error::capacity(format!("n exceeds the supported range {MAX_N}")));
        }
        if n <= 1 {
            return Ok(HOutcome {
                value: FactoredH::unit(n),
                g_stats: None,
            });
        }
        if n <= self.cfg.small_n_threshold as u128 {
            return self.h_from_table(n as u64);
        }
        self.h_pipeline(n)
    }

    /// The locate + G pipeline, available for any n >= 10 (k >= 3).
    pub fn h_pipeline(&self, n: u128) -> Result<HOutcome> {
        if n < 10 {
            return Err(Error::domain(
                "the pipeline requires n >= 10 (three prime summands)",
            ));
        }
        let loc = self.locate_k(n)?;
        let n_prime = (n - loc.sigma_k) as u64;
        debug_assert!(n_prime < loc.p_next);
        if n_prime + 1 == loc.p_next || n_prime + 2 == loc.p_next {
            // h(n) = N_{k+1} / 2
            let value = self.finish(
                n,
                loc.p_next,
                loc.sigma_k + loc.p_next as u128,
                Vec::new(),
                vec![2],
            )?;
            return Ok(HOutcome {
                value,
                g_stats: None,
            });
        }
        let (fraction, stats) = g(loc.p_k, n_prime, &self.cfg.g)?;
        let value = self.finish(n, loc.p_k, loc.sigma_k, fraction.numer, fraction.denom)?;
        Ok(HOutcome {
            value,
            g_stats: Some(stats),
        })
    }

    fn finish(
        &self,
        n: u128,
        base_prime: u64,
        sigma_base: u128,
        numer: Vec<u64>,
        denom: Vec<u64>,
    ) -> Result<FactoredH> {
        let (base_index, log10) = if base_prime <= self.cfg.index_budget {
            let (count, theta) = pi_and_log10(base_prime);
            let lg = theta + numer.iter().map(|&p| (p as f64).log10()).sum::<f64>()
                - denom.iter().map(|&p| (p as f64).log10()).sum::<f64>();
            (Some(count), Some(lg))
        } else {
            (None, None)
        };
        Ok(FactoredH {
            n,
            base_prime,
            base_index,
            sigma_base,
            numer,
            denom,
            log10,
        })
    }

    fn h_from_table(&self, n: u64) -> Result<HOutcome> {
        let table = self.small_table();
        let k = table.k_of(n);
        let sigma_k = table.sigma(k);
        let p_next = table.alphabet()[k]; // p_{k+1}
        let n_prime = n - sigma_k;
        // the parity shortcut keeps the representation aligned with the
        // pipeline's
        if n_prime + 1 == p_next || n_prime + 2 == p_next {
            let value = self.finish(
                n as u128,
                p_next,
                (sigma_k + p_next) as u128,
                Vec::new(),
                vec![2],
            )?;
            debug_assert_eq!(
                self.expand(&value).unwrap(),
                table.h_small(n).unwrap()
            );
            return Ok(HOutcome {
                value,
                g_stats: None,
            });
        }
        let value = table.h_small(n)?;
        let p_k = table.alphabet()[k - 1];
        // factor the DP value over the alphabet
        let mut rest = value.clone();
        let mut factors = Vec::new();
        for &p in table.alphabet() {
            if rest.is_one() {
                break;
            }
            let pb = BigUint::from(p);
            if (&rest % &pb).is_zero() {
                factors.push(p);
                rest /= pb;
            }
        }
        if !rest.is_one() {
            return Err(Error::internal("DP value escaped the prime alphabet"));
        }
        let numer: Vec<u64> = factors.iter().copied().filter(|&p| p > p_k).collect();
        let denom: Vec<u64> = simple_primes(p_k)
            .into_iter()
            .filter(|p| !factors.contains(p))
            .collect();
        let out = self.finish(n as u128, p_k, sigma_k as u128, numer, denom)?;
        debug_assert_eq!(self.expand(&out).unwrap(), value);
        Ok(HOutcome {
            value: out,
            g_stats: None,
        })
    }

    /// Materialize the exact integer N_b * numer / denom.
    pub fn expand(&self, v: &FactoredH) -> Result<BigUint> {
        if v.base_prime > self.cfg.expand_budget {
            return Err(Error::resource(format!(
                "expand: base prime {} beyond the expansion budget {}",
                v.base_prime, self.cfg.expand_budget
            )));
        }
        let mut out = BigUint::one();
        for p in simple_primes(v.base_prime) {
            if !v.denom.contains(&p) {
                out *= p;
            }
        }
        for &p in &v.numer {
            out *= p;
        }
        Ok(out)
    }
}

/// Direct prime summation for small n.
fn locate_direct(n: u64) -> Result<LocatedK> {
    let mut limit = 4 * isqrt_u64(n.max(16)) * 64 / 10 + 64;
    loop {
        let ps = simple_primes(limit);
        let mut sigma = 0u128;
        let mut k = 0u64;
        for (i, &p) in ps.iter().enumerate() {
            if sigma + p as u128 > n as u128 {
                return Ok(LocatedK {
                    p_k: if i == 0 { 0 } else { ps[i - 1] },
                    sigma_k: sigma,
                    p_next: p,
                    k: Some(k),
                });
            }
            sigma += p as u128;
            k += 1;
        }
        limit *= 2;
    }
}

/// Count primes <= limit and accumulate their log10 sum in one pass.
fn pi_and_log10(limit: u64) -> (u64, f64) {
    if limit < 2 {
        return (0, 0.0);
    }
    let base = simple_primes(isqrt_u64(limit));
    let mut count = 0u64;
    let mut theta = 0f64;
    let block = 1u64 << 20;
    let mut lo = 2u64;
    let mut composite = Vec::new();
    while lo <= limit {
        let hi = (lo + block - 1).min(limit);
        let width = (hi - lo + 1) as usize;
        composite.clear();
        composite.resize(width, false);
        for &p in &base {
            if p * p > hi {
                break;
            }
            let mut j = (lo.div_ceil(p) * p).max(p * p);
            while j <= hi {
                composite[(j - lo) as usize] = true;
                j += p;
            }
        }
        for (i, &c) in composite.iter().enumerate() {
            if !c {
                count += 1;
                theta += ((lo + i as u64) as f64).log10();
            }
        }
        lo = hi + 1;
    }
    (count, theta)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eng() -> HEngine {
        HEngine::with_defaults()
    }

    #[test]
    fn locate_examples() {
        let e = eng();
        let l = e.locate_k(10).unwrap();
        assert_eq!((l.p_k, l.sigma_k, l.p_next, l.k), (5, 10, 7, Some(3)));
        let l = e.locate_k(100).unwrap();
        assert_eq!((l.p_k, l.sigma_k, l.p_next, l.k), (23, 100, 29, Some(9)));
        let l = e.locate_k(2).unwrap();
        assert_eq!((l.p_k, l.sigma_k, l.p_next), (2, 2, 3));
        let l = e.locate_k(4).unwrap();
        assert_eq!((l.p_k, l.sigma_k, l.p_next), (2, 2, 3));
        let l = e.locate_k(5).unwrap();
        assert_eq!((l.p_k, l.sigma_k, l.p_next), (3, 5, 5));
        assert!(e.locate_k(1).is_err());
        assert!(e.locate_k(MAX_N + 1).is_err());
    }

    #[test]
    fn locate_engine_path_matches_direct() {
        let mut cfg = HConfig::default();
        cfg.locate_direct_threshold = 10; // force the analytic path
        let engine_path = HEngine::new(cfg).unwrap();
        let direct_path = eng();
        for n in [50u128, 1234, 99_991, 1_000_000] {
            let a = engine_path.locate_k(n).unwrap();
            let b = direct_path.locate_k(n).unwrap();
            assert_eq!((a.p_k, a.sigma_k, a.p_next), (b.p_k, b.sigma_k, b.p_next), "n = {n}");
        }
    }

    #[test]
    fn h_small_examples() {
        let e = eng();
        for n in [0u128, 1] {
            let out = e.h(n).unwrap().value;
            assert_eq!(out.base_prime, 1);
            assert_eq!(e.expand(&out).unwrap(), BigUint::one());
        }
        let h17 = e.h(17).unwrap().value;
        assert_eq!(h17.base_prime, 7);
        assert!(h17.numer.is_empty() && h17.denom.is_empty());
        assert_eq!(h17.base_index, Some(4));
        assert_eq!(e.expand(&h17).unwrap(), BigUint::from(210u32));
        assert_eq!(h17.ell(), 17);

        let h16 = e.h(16).unwrap().value;
        assert_eq!(h16.base_prime, 7);
        assert_eq!(h16.denom, vec![2]);
        assert_eq!(e.expand(&h16).unwrap(), BigUint::from(105u32));
        assert_eq!(h16.ell(), 15);

        let h50 = e.h(50).unwrap().value;
        assert_eq!(e.expand(&h50).unwrap(), BigUint::from(51_870u32));
    }

    #[test]
    fn pipeline_matches_table_on_a_sample() {
        let e = eng();
        let table = e.small_table();
        for n in 10..=600u64 {
            let out = e.h_pipeline(n as u128).unwrap().value;
            assert_eq!(
                e.expand(&out).unwrap(),
                table.h_small(n).unwrap(),
                "n = {n}"
            );
            assert!(out.ell() <= n as u128);
        }
    }

    #[test]
    fn h_at_sigma_j_is_primorial() {
        let e = eng();
        let table = e.small_table();
        for j in 1..=10usize {
            let s = table.sigma(j);
            let out = e.h(s as u128).unwrap().value;
            assert_eq!(e.expand(&out).unwrap(), *table.primorial(j), "sigma_{j}");
            assert_eq!(out.ell(), s as u128);
        }
    }

    #[test]
    fn values_are_nondecreasing() {
        let e = eng();
        let mut prev: Option<FactoredH> = None;
        for n in 2..300u128 {
            let cur = e.h(n).unwrap().value;
            if let Some(p) = &prev {
                assert_ne!(cur.cmp_value(p).unwrap(), Ordering::Less, "n = {n}");
            }
            prev = Some(cur);
        }
        // across the pipeline boundary too
        let lo = e.h(6000).unwrap().value;
        let hi = e.h(6001).unwrap().value;
        assert_ne!(hi.cmp_value(&lo).unwrap(), Ordering::Less);
    }

    #[test]
    fn parity_plateau_through_pipeline() {
        let e = eng();
        // sigma_k for a few larger k, via direct summation
        for k in [400u64, 1000] {
            let ps = simple_primes(100_000);
            let sigma_next: u128 = ps.iter().take(k as usize + 1).map(|&p| p as u128).sum();
            let p_next = ps[k as usize];
            for a in (4..p_next.min(40)).step_by(2) {
                let hi = e.h_pipeline(sigma_next - a as u128).unwrap().value;
                let lo = e.h_pipeline(sigma_next - a as u128 - 1).unwrap().value;
                assert_eq!(
                    hi.cmp_value(&lo).unwrap(),
                    Ordering::Equal,
                    "k = {k}, a = {a}"
                );
            }
        }
    }

    #[test]
    fn expand_budget_is_enforced() {
        let e = eng();
        let v = FactoredH {
            n: 0,
            base_prime: 1_000_003,
            base_index: None,
            sigma_base: 0,
            numer: vec![],
            denom: vec![],
            log10: None,
        };
        assert!(matches!(e.expand(&v), Err(Error::Resource(_))));
    }

    #[test]
    fn log10_scale_is_consistent() {
        let e = eng();
        let out = e.h(1000).unwrap().value;
        let exact = e
            .expand(&out)
            .unwrap()
            .to_string()
            .len() as f64;
        let lg = out.log10.unwrap();
        assert!((lg.floor() + 1.0 - exact).abs() < 1.0 + 1e-9, "lg = {lg}, digits = {exact}");
    }
}
