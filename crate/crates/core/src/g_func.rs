//! G(p_k, m): the greatest value of a fraction Q_1...Q_s / (q_1...q_s) of
//! distinct primes with q_s < ... < q_1 <= p_k < p_{k+1} <= Q_1 < ... < Q_s
//! and total displacement sum(Q_i - q_i) <= m.
//!
//! Two routes: an exact swap DP over the candidate prime pools (the
//! combinatorial algorithm, quadratic in m), and the acceleration that
//! reduces G(p_k, m) for large m to a handful of inner evaluations
//! G(p_{k+1}, m') with small m'. All value comparisons in the argmax are
//! exact; floating point only short-circuits compares whose logarithms
//! differ by far more than the accumulated rounding error.

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::primes::{next_prime, sieve_segment};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::collections::HashMap;

/// A value Q_1...Q_s / (q_1...q_s); both lists ascending, disjoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeFraction {
    pub numer: Vec<u64>,
    pub denom: Vec<u64>,
}

impl PrimeFraction {
    pub fn one() -> PrimeFraction {
        PrimeFraction {
            numer: Vec::new(),
            denom: Vec::new(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.numer.is_empty()
    }

    /// Number of numerator/denominator pairs.
    pub fn s(&self) -> usize {
        self.numer.len()
    }

    /// ell of the fraction: sum of numerators minus sum of denominators.
    pub fn ell(&self) -> i128 {
        self.numer.iter().map(|&p| p as i128).sum::<i128>()
            - self.denom.iter().map(|&p| p as i128).sum::<i128>()
    }

    pub fn numer_prod(&self) -> BigUint {
        self.numer.iter().fold(BigUint::one(), |a, &p| a * p)
    }

    pub fn denom_prod(&self) -> BigUint {
        self.denom.iter().fold(BigUint::one(), |a, &p| a * p)
    }

    /// Exact value comparison by cross multiplication.
    pub fn cmp_value(&self, other: &PrimeFraction) -> Ordering {
        (self.numer_prod() * other.denom_prod()).cmp(&(other.numer_prod() * self.denom_prod()))
    }

    /// Compare against the rational a/b.
    pub fn cmp_ratio(&self, a: &BigUint, b: &BigUint) -> Ordering {
        (self.numer_prod() * b).cmp(&(a * self.denom_prod()))
    }
}

/// How a G value was obtained, plus the acceleration diagnostics.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GPath {
    /// m below the first prime gap: G = 1.
    Trivial,
    Combinatorial,
    Fast,
    /// The delta search failed; the combinatorial route was used instead.
    FastFallback,
}

#[derive(Clone, Copy, Debug)]
pub struct GStats {
    pub delta: Option<u64>,
    pub inner_evaluations: usize,
    pub path: GPath,
}

impl GStats {
    fn plain(path: GPath) -> GStats {
        GStats {
            delta: None,
            inner_evaluations: 0,
            path,
        }
    }
}

#[derive(Clone, Debug)]
pub struct GConfig {
    /// Largest m the combinatorial entry point accepts.
    pub combinatorial_cap: u64,
    /// Largest even delta tried by the acceleration before falling back.
    pub delta_cap: u64,
    /// Dispatch cutoff: m at or above this goes to the accelerated route
    /// (whose inner calls stay tiny); below it the direct DP is cheapest.
    pub fast_threshold: u64,
}

impl Default for GConfig {
    fn default() -> Self {
        GConfig {
            combinatorial_cap: 100_000,
            delta_cap: 10_000,
            fast_threshold: 1_000,
        }
    }
}

fn validate(pk: u64, m: u64) -> Result<u64> {
    if pk < 5 || !is_prime(pk) {
        return Err(Error::domain(format!(
            "G(p_k, m) requires a prime p_k >= 5, got {pk}"
        )));
    }
    let p1 = next_prime(pk + 1)?;
    if m > p1 - 3 {
        return Err(Error::domain(format!(
            "G({pk}, {m}): m must be at most p_(k+1) - 3 = {}",
            p1 - 3
        )));
    }
    Ok(p1)
}

/// Primes in [lo, hi]; sieve for small windows, prime-walk otherwise.
fn primes_in(lo: u64, hi: u64) -> Result<Vec<u64>> {
    if hi < lo || hi < 2 {
        return Ok(Vec::new());
    }
    let lo = lo.max(2);
    if hi <= 1_000_000_000_000 {
        return sieve_segment(lo, hi);
    }
    let mut out = Vec::new();
    let mut c = lo;
    loop {
        let p = next_prime(c)?;
        if p > hi {
            break;
        }
        out.push(p);
        c = p + 1;
    }
    Ok(out)
}

/// G(p_k, m) by dispatch: parity reduction, the trivial case, then the
/// combinatorial DP below the cap or the accelerated route above it.
pub fn g(pk: u64, m: u64, cfg: &GConfig) -> Result<(PrimeFraction, GStats)> {
    let p1 = validate(pk, m)?;
    let m_eff = m & !1; // G(p_k, 2m+1) = G(p_k, 2m)
    if m_eff < p1 - pk {
        return Ok((PrimeFraction::one(), GStats::plain(GPath::Trivial)));
    }
    if m_eff < cfg.fast_threshold {
        let frac = swap_dp(pk, p1, m_eff)?;
        return Ok((frac, GStats::plain(GPath::Combinatorial)));
    }
    g_fast(pk, m, cfg)
}

/// The combinatorial route, refusing m above the configured cap.
pub fn g_combinatorial(pk: u64, m: u64, cfg: &GConfig) -> Result<PrimeFraction> {
    let p1 = validate(pk, m)?;
    if m > cfg.combinatorial_cap {
        return Err(Error::resource(format!(
            "G({pk}, {m}): m exceeds the combinatorial cap {}; use the accelerated route",
            cfg.combinatorial_cap
        )));
    }
    if m < p1 - pk {
        return Ok(PrimeFraction::one());
    }
    swap_dp(pk, p1, m)
}

struct Entry {
    /// Half displacement relative to the row offset; the true value is
    /// d + offset and only grows as the scan advances.
    d: i128,
    logv: f64,
    num: BigUint,
    den: BigUint,
}

impl Entry {
    fn unit() -> Entry {
        Entry {
            d: 0,
            logv: 0.0,
            num: BigUint::one(),
            den: BigUint::one(),
        }
    }

    fn cmp_value(&self, other: &Entry) -> Ordering {
        // log filter with a band far above the accumulated f64 error
        let diff = self.logv - other.logv;
        if diff > 1e-9 {
            return Ordering::Greater;
        }
        if diff < -1e-9 {
            return Ordering::Less;
        }
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

/// True when the staircase already holds a state with displacement <= d and
/// a clearly larger value; near ties answer false and let the exact merge
/// decide.
fn clearly_dominated(row: &[Entry], d: i128, logv: f64) -> bool {
    let pos = row.partition_point(|e| e.d <= d);
    pos > 0 && row[pos - 1].logv > logv + 1e-9
}

/// Exact DP over the candidate pools. States are (pairs still open,
/// displacement so far), values are the best exact fraction; dominated
/// states (no smaller displacement with no smaller value) are dropped.
///
/// Items are scanned in descending order, numerators first, so a partial
/// selection always has at least as many numerators as denominators;
/// normalizing the displacement at the scan position keeps it in [0, m].
fn swap_dp(pk: u64, p1: u64, m: u64) -> Result<PrimeFraction> {
    if m < p1 - pk {
        return Ok(PrimeFraction::one());
    }
    let dlo = if m >= p1 { 3 } else { (p1 - m).max(3) };
    let dens = primes_in(dlo, pk)?;
    let nums = primes_in(p1, pk.saturating_add(m))?;
    // greedy pairing bound on the number of open pairs
    let mut smax = 0usize;
    let mut budget = m as i128;
    while smax < nums.len() && smax < dens.len() {
        budget -= nums[smax] as i128 - dens[dens.len() - 1 - smax] as i128;
        if budget < 0 {
            break;
        }
        smax += 1;
    }
    if smax == 0 {
        return Ok(PrimeFraction::one());
    }
    let m_half = (m / 2) as i128;

    // merged descending item list: (value, is_numerator)
    let items: Vec<(u64, bool)> = nums
        .iter()
        .rev()
        .map(|&q| (q, true))
        .chain(dens.iter().rev().map(|&q| (q, false)))
        .collect();

    let mut rows: Vec<Vec<Entry>> = (0..=smax).map(|_| Vec::new()).collect();
    let mut offsets = vec![0i128; smax + 1];
    rows[0].push(Entry::unit());

    let mut dens_remaining = dens.len();
    for idx in 0..items.len() {
        let (w, is_num) = items[idx];
        let lnw = (w as f64).ln();
        if is_num {
            for b in (0..smax).rev() {
                if b + 1 > dens_remaining || rows[b].is_empty() {
                    continue;
                }
                let (src, dst) = {
                    let (lo, hi) = rows.split_at_mut(b + 1);
                    (&lo[b], &mut hi[0])
                };
                let mut cands: Vec<Entry> = Vec::new();
                for e in src {
                    let abs = e.d + offsets[b];
                    if abs > m_half {
                        continue;
                    }
                    let d_new = abs - offsets[b + 1];
                    let logv = e.logv + lnw;
                    if clearly_dominated(dst, d_new, logv) {
                        continue;
                    }
                    cands.push(Entry {
                        d: d_new,
                        logv,
                        num: &e.num * w,
                        den: e.den.clone(),
                    });
                }
                merge_row(dst, cands, offsets[b + 1], m_half);
            }
        } else {
            for b in 1..=smax {
                if rows[b].is_empty() {
                    continue;
                }
                let (src, dst) = {
                    let (lo, hi) = rows.split_at_mut(b);
                    (&hi[0], &mut lo[b - 1])
                };
                let mut cands: Vec<Entry> = Vec::new();
                for e in src {
                    let abs = e.d + offsets[b];
                    if abs > m_half {
                        continue;
                    }
                    let d_new = abs - offsets[b - 1];
                    let logv = e.logv - lnw;
                    if clearly_dominated(dst, d_new, logv) {
                        continue;
                    }
                    cands.push(Entry {
                        d: d_new,
                        logv,
                        num: e.num.clone(),
                        den: &e.den * w,
                    });
                }
                merge_row(dst, cands, offsets[b - 1], m_half);
            }
            dens_remaining -= 1;
            // rows that cannot close anymore are dead
            for b in dens_remaining + 1..=smax {
                rows[b].clear();
            }
        }
        if let Some(&(w_next, _)) = items.get(idx + 1) {
            let gap_half = ((w - w_next) / 2) as i128;
            for (b, off) in offsets.iter_mut().enumerate().skip(1) {
                *off += b as i128 * gap_half;
            }
        }
    }

    let best = rows[0]
        .iter()
        .filter(|e| e.d <= m_half)
        .last()
        .ok_or_else(|| Error::internal("swap DP lost the unit state"))?;
    // recover the prime lists by dividing the products back out of the pools
    let numer = factor_over_pool(&best.num, &nums)?;
    let denom = factor_over_pool(&best.den, &dens)?;
    Ok(PrimeFraction { numer, denom })
}

/// Factor a product of distinct pool primes back into its (ascending) list.
fn factor_over_pool(value: &BigUint, pool: &[u64]) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    let mut rest = value.clone();
    for &p in pool {
        if rest.is_one() {
            break;
        }
        let pb = BigUint::from(p);
        if (&rest % &pb).is_zero() {
            out.push(p);
            rest /= pb;
        }
    }
    if !rest.is_one() {
        return Err(Error::internal("swap DP product escaped its pool"));
    }
    Ok(out)
}

/// Merge candidates (sorted by d) into a row kept as a staircase: d strictly
/// increasing and value strictly increasing.
fn merge_row(row: &mut Vec<Entry>, cands: Vec<Entry>, offset: i128, m_half: i128) {
    if cands.is_empty() {
        return;
    }
    let old = std::mem::take(row);
    let mut merged: Vec<Entry> = Vec::with_capacity(old.len() + cands.len());
    let mut ia = old.into_iter().peekable();
    let mut ib = cands.into_iter().peekable();
    loop {
        let take_a = match (ia.peek(), ib.peek()) {
            (Some(a), Some(b)) => a.d <= b.d,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (None, None) => break,
        };
        let e = if take_a {
            ia.next().unwrap()
        } else {
            ib.next().unwrap()
        };
        if e.d + offset > m_half {
            continue;
        }
        match merged.last() {
            Some(last) if last.cmp_value(&e) != Ordering::Less => {
                // dominated: no smaller displacement with at least the value
            }
            Some(last) if last.d == e.d => {
                // same displacement, strictly better value
                *merged.last_mut().unwrap() = e;
            }
            _ => merged.push(e),
        }
    }
    *row = merged;
}

/// The accelerated route: find a small even delta with p_{k+1} - m + delta
/// prime and G(p_{k+1}, delta) large enough, then maximize
/// (p_{k+1}/q) G(p_{k+1}, m - p_{k+1} + q) over the few primes q up to
/// q-hat.
pub fn g_fast(pk: u64, m: u64, cfg: &GConfig) -> Result<(PrimeFraction, GStats)> {
    let p1 = validate(pk, m)?;
    let m_eff = m & !1;
    if m_eff < p1 - pk {
        return Err(Error::domain(format!(
            "g_fast requires m >= p_(k+1) - p_k = {}",
            p1 - pk
        )));
    }
    let p2 = next_prime(p1 + 1)?;
    let lo = p1 - m_eff;
    let mut found: Option<u64> = None;
    let mut delta = 0u64;
    while delta <= cfg.delta_cap {
        if 9 * (delta as u128) >= 2 * m_eff as u128 {
            break; // the bound delta < 2m/9 only gets worse
        }
        let w = lo + delta;
        if is_prime(w) {
            if delta == 0 {
                found = Some(0);
                break;
            }
            // G(p_{k+1}, delta) >= 1 + delta / p_{k+1}, checked exactly
            let inner = swap_dp(p1, p2, delta)?;
            let lhs = inner.numer_prod() * p1;
            let rhs = inner.denom_prod() * (p1 + delta);
            if lhs >= rhs {
                found = Some(delta);
                break;
            }
        }
        delta += 2;
    }
    let Some(delta) = found else {
        // no usable delta: fall back to the exact DP whatever the cost
        let frac = swap_dp(pk, p1, m_eff)?;
        return Ok((frac, GStats::plain(GPath::FastFallback)));
    };
    if delta == 0 {
        return Ok((
            PrimeFraction {
                numer: vec![p1],
                denom: vec![lo],
            },
            GStats {
                delta: Some(0),
                inner_evaluations: 0,
                path: GPath::Fast,
            },
        ));
    }
    // q-hat = p1 p2 (p1 - m + delta) / ((p1 + delta)(p1 - 3 delta / 2))
    let numer = BigUint::from(p1) * p2 * (lo + delta);
    let denom = BigUint::from(p1 + delta) * (p1 - 3 * delta / 2);
    let q_hat: u64 = (numer / denom)
        .try_into()
        .map_err(|_| Error::internal("q-hat out of u64 range"))?;

    let mut memo: HashMap<u64, PrimeFraction> = HashMap::new();
    let mut best: Option<(PrimeFraction, u64)> = None; // (inner, q)
    let mut evals = 0usize;
    let mut q = next_prime(lo)?;
    while q <= q_hat {
        let m_inner = m_eff + q - p1;
        let inner = match memo.get(&m_inner) {
            Some(f) => f.clone(),
            None => {
                let f = if m_inner < p2 - p1 {
                    PrimeFraction::one()
                } else {
                    swap_dp(p1, p2, m_inner)?
                };
                memo.insert(m_inner, f.clone());
                f
            }
        };
        evals += 1;
        let better = match &best {
            None => true,
            Some((bf, bq)) => {
                // (p1/q) inner  vs  (p1/bq) bf
                let lhs = inner.numer_prod() * bf.denom_prod() * *bq;
                let rhs = bf.numer_prod() * inner.denom_prod() * q;
                lhs > rhs
            }
        };
        if better {
            best = Some((inner, q));
        }
        q = next_prime(q + 1)?;
    }
    let (inner, q) = best.ok_or_else(|| Error::internal("empty q-range in g_fast"))?;
    let mut numer = inner.numer.clone();
    numer.push(p1);
    let mut denom = inner.denom.clone();
    denom.push(q);
    let (numer, denom) = cancel_common(numer, denom);
    if numer.windows(2).any(|w| w[0] == w[1]) || denom.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::internal("g_fast produced a repeated prime"));
    }
    Ok((
        PrimeFraction { numer, denom },
        GStats {
            delta: Some(delta),
            inner_evaluations: evals,
            path: GPath::Fast,
        },
    ))
}

fn cancel_common(mut a: Vec<u64>, mut b: Vec<u64>) -> (Vec<u64>, Vec<u64>) {
    a.sort_unstable();
    b.sort_unstable();
    let mut keep_a = Vec::with_capacity(a.len());
    let mut ib = 0usize;
    let mut removed_from_b = vec![false; b.len()];
    'outer: for &x in &a {
        while ib < b.len() && b[ib] < x {
            ib += 1;
        }
        let mut j = ib;
        while j < b.len() && b[j] == x {
            if !removed_from_b[j] {
                removed_from_b[j] = true;
                continue 'outer;
            }
            j += 1;
        }
        keep_a.push(x);
    }
    let keep_b: Vec<u64> = b
        .iter()
        .enumerate()
        .filter(|(i, _)| !removed_from_b[*i])
        .map(|(_, &v)| v)
        .collect();
    (keep_a, keep_b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::simple_primes;
    use rand::{Rng, SeedableRng};

    fn cfg() -> GConfig {
        GConfig::default()
    }

    fn frac(numer: &[u64], denom: &[u64]) -> PrimeFraction {
        PrimeFraction {
            numer: numer.to_vec(),
            denom: denom.to_vec(),
        }
    }

    /// Exhaustive oracle over all subset pairs of the candidate pools.
    fn g_brute(pk: u64, m: u64) -> PrimeFraction {
        let p1 = next_prime(pk + 1).unwrap();
        let dlo = if m >= p1 { 3 } else { (p1 - m).max(3) };
        let dens: Vec<u64> = simple_primes(pk).into_iter().filter(|&p| p >= dlo).collect();
        let nums: Vec<u64> = simple_primes(pk + m)
            .into_iter()
            .filter(|&p| p >= p1)
            .collect();
        assert!(dens.len() <= 14 && nums.len() <= 14, "pools too big for brute force");
        let mut best = PrimeFraction::one();
        for nb in 0u32..(1 << nums.len()) {
            let sn: Vec<u64> = (0..nums.len()).filter(|i| nb >> i & 1 == 1).map(|i| nums[i]).collect();
            for db in 0u32..(1 << dens.len()) {
                let sd: Vec<u64> =
                    (0..dens.len()).filter(|i| db >> i & 1 == 1).map(|i| dens[i]).collect();
                if sn.len() != sd.len() {
                    continue;
                }
                let cost: i128 = sn.iter().map(|&v| v as i128).sum::<i128>()
                    - sd.iter().map(|&v| v as i128).sum::<i128>();
                if cost > m as i128 {
                    continue;
                }
                let cand = frac(&sn, &sd);
                if cand.cmp_value(&best) == Ordering::Greater {
                    best = cand;
                }
            }
        }
        best
    }

    #[test]
    fn dispatch_examples() {
        let c = cfg();
        assert!(g(7, 2, &c).unwrap().0.is_one());
        assert_eq!(g(7, 4, &c).unwrap().0, frac(&[11], &[7]));
        assert_eq!(g(7, 6, &c).unwrap().0, frac(&[11], &[5]));
        // parity identity
        assert_eq!(g(7, 5, &c).unwrap().0, frac(&[11], &[7]));
        assert!(g(7, 0, &c).unwrap().0.is_one());
        // p_(k+1) - m = 5 is prime, so the sandwich pins 17/5
        assert_eq!(g(13, 12, &c).unwrap().0, frac(&[17], &[5]));
        assert!(matches!(g(4, 1, &c), Err(Error::Domain(_))));
        assert!(matches!(g(7, 9, &c), Err(Error::Domain(_))));
    }

    #[test]
    fn combinatorial_matches_exhaustive_search() {
        let c = cfg();
        for pk in [7u64, 11, 13, 19, 23] {
            let p1 = next_prime(pk + 1).unwrap();
            for m in 0..=(p1 - 3) {
                let got = g_combinatorial(pk, m, &c).unwrap();
                let want = g_brute(pk, m);
                assert_eq!(got, want, "G({pk}, {m})");
            }
        }
    }

    #[test]
    fn combinatorial_cap_is_enforced() {
        let mut c = cfg();
        c.combinatorial_cap = 10;
        assert!(matches!(
            g_combinatorial(101, 50, &c),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn result_invariants() {
        let c = cfg();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xF00D);
        for _ in 0..60 {
            let pk = next_prime(rng.gen_range(5..3_000u64)).unwrap();
            let p1 = next_prime(pk + 1).unwrap();
            let m = rng.gen_range(0..=(p1 - 3));
            let (f, _) = g(pk, m, &c).unwrap();
            // displacement bound and ordering chain
            assert!(f.ell() <= m as i128, "ell(G({pk},{m}))");
            assert_eq!(f.numer.len(), f.denom.len());
            for w in f.numer.windows(2) {
                assert!(w[0] < w[1]);
            }
            for w in f.denom.windows(2) {
                assert!(w[0] < w[1]);
            }
            if let (Some(&q1), Some(&q_last)) = (f.denom.last(), f.denom.first()) {
                assert!(q_last >= 3);
                assert!(q1 <= pk);
                assert!(f.numer[0] >= p1);
            }
            // sandwich: p1/(p1-m)* <= G <= p1/(p1-m)
            if m >= 1 && m <= p1 - 3 {
                let lower_den = next_prime(p1 - m).unwrap();
                let upper = (BigUint::from(p1), BigUint::from(p1 - m));
                let lower = (BigUint::from(p1), BigUint::from(lower_den));
                assert!(f.cmp_ratio(&lower.0, &lower.1) != Ordering::Less, "lower sandwich");
                assert!(f.cmp_ratio(&upper.0, &upper.1) != Ordering::Greater, "upper sandwich");
            }
        }
    }

    #[test]
    fn monotone_in_even_m() {
        let c = cfg();
        for pk in [13u64, 101, 1009] {
            let p1 = next_prime(pk + 1).unwrap();
            let mut prev = PrimeFraction::one();
            let mut m = 0;
            while m <= p1 - 3 {
                let (f, _) = g(pk, m, &c).unwrap();
                assert!(
                    f.cmp_value(&prev) != Ordering::Less,
                    "G({pk}, m) decreased at m = {m}"
                );
                prev = f;
                m += 2;
            }
        }
    }

    #[test]
    fn exact_when_target_is_prime() {
        let c = cfg();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..40 {
            let pk = next_prime(rng.gen_range(5..5_000u64)).unwrap();
            let p1 = next_prime(pk + 1).unwrap();
            let m = rng.gen_range(0..=(p1 - 3));
            if m & 1 == 0 && is_prime(p1 - m) && m >= p1 - pk {
                let (f, _) = g(pk, m, &c).unwrap();
                assert_eq!(f, frac(&[p1], &[p1 - m]), "G({pk}, {m})");
            }
        }
    }

    #[test]
    fn fast_agrees_with_combinatorial() {
        let c = cfg();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xDE17A);
        let mut checked = 0;
        while checked < 50 {
            let pk = next_prime(rng.gen_range(5..10_000u64)).unwrap();
            let p1 = next_prime(pk + 1).unwrap();
            if p1 - pk > p1 - 3 {
                continue;
            }
            let m = rng.gen_range(p1 - pk..=(p1 - 3));
            let m_eff = m & !1;
            if m_eff < p1 - pk {
                continue;
            }
            let (fast, stats) = g_fast(pk, m, &c).unwrap();
            let slow = swap_dp(pk, p1, m_eff).unwrap();
            assert_eq!(fast, slow, "G({pk}, {m}), path {:?}", stats.path);
            checked += 1;
        }
    }

    #[test]
    fn flagship_acceleration_anchor() {
        // at n = 10^12 the locate stage yields p_k = 5477081 and
        // n' = 4935150: delta = 18, one inner evaluation, and the fraction
        // 5477089 * 5477093 / (5477081 * 541951)
        let c = cfg();
        let (f, stats) = g(5_477_081, 4_935_150, &c).unwrap();
        assert_eq!(f, frac(&[5_477_089, 5_477_093], &[541_951, 5_477_081]));
        assert_eq!(stats.delta, Some(18));
        assert_eq!(stats.inner_evaluations, 1);
        assert_eq!(stats.path, GPath::Fast);
    }

    #[test]
    fn deep_acceleration_anchor() {
        // the G stage of n = 10^35: p_k and n' as produced by locate_k,
        // delta = 134 with five inner evaluations
        let c = cfg();
        let (f, stats) = g(2_898_434_150_644_708_999, 1_886_081_812_111_845_520, &c).unwrap();
        assert_eq!(
            f,
            frac(&[2_898_434_150_644_709_023], &[1_012_352_338_532_863_519])
        );
        assert_eq!(stats.delta, Some(134));
        assert_eq!(stats.inner_evaluations, 5);
        assert_eq!(stats.path, GPath::Fast);
    }
}
