//! Sublinear computation of pi_f(x) = sum of f(p) over primes p <= x for a
//! completely multiplicative integer weight f.
//!
//! Two weights are registered: the unit weight (pi_f = prime counting) and
//! the identity weight (pi_f = prime summation). The run splits x into
//! ordinary leaves, special leaves and the two-factor correction P_2, all
//! evaluated with block sieves in O(x^(2/3))-type time and O(y) memory,
//! where x^(1/3) <= y <= sqrt(x) is the table bound.

mod engine;
mod fenwick;

use crate::arith::{icbrt_u64, isqrt_u64};
use crate::error::{Error, Result};
use crate::primes::{simple_primes, PrimeTables};
use engine::Engine;

/// Largest x accepted by the engine; keeps every accumulator, including the
/// ordinary-leaf partial sums ~ x^2/2 * log y, inside i128.
pub const PIF_MAX_X: u64 = 4_400_000_000_000_000_000;

/// A completely multiplicative weight with O(1) summatory function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Weight {
    Unit = 0,
    Identity = 1,
}

impl Weight {
    /// f(n), exactly.
    #[inline]
    pub fn f(self, n: u64) -> i128 {
        match self {
            Weight::Unit => 1,
            Weight::Identity => n as i128,
        }
    }

    pub fn parse(s: &str) -> Result<Weight> {
        match s {
            "unit" => Ok(Weight::Unit),
            "identity" | "id" => Ok(Weight::Identity),
            other => Err(Error::domain(format!("unknown weight {other:?}"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Weight::Unit => "unit",
            Weight::Identity => "identity",
        }
    }
}

/// F(u) = sum of f(n) for n <= u.
#[inline]
pub fn summatory(u: u64, w: Weight) -> i128 {
    match w {
        Weight::Unit => u as i128,
        Weight::Identity => ((u as u128) * (u as u128 + 1) / 2) as i128,
    }
}

/// Tuning knobs for a pi_f run.
#[derive(Clone, Debug)]
pub struct PifConfig {
    /// y is chosen as y_factor * x^(1/3), clamped to [x^(1/3), sqrt(x)].
    pub y_factor: f64,
    /// Sieve block length; None picks y clamped to [2^16, 2^22].
    pub block_size: Option<usize>,
    /// Upper bound on the base-table size y.
    pub max_table_y: u64,
}

impl Default for PifConfig {
    fn default() -> Self {
        PifConfig {
            y_factor: 8.0,
            block_size: None,
            max_table_y: 1 << 27,
        }
    }
}

impl PifConfig {
    fn block_for(&self, y: u64) -> usize {
        self.block_size
            .unwrap_or_else(|| (y as usize).clamp(1 << 16, 1 << 22))
    }
}

/// All accumulators of one pi_f run.
#[derive(Clone, Copy, Debug)]
pub struct PifBreakdown {
    pub x: u64,
    pub y: u64,
    pub a: usize,
    pub s0: i128,
    pub s1: i128,
    pub u: i128,
    pub v1: i128,
    pub w1: i128,
    pub w2: i128,
    pub w3: i128,
    pub w4: i128,
    pub w5: i128,
    pub s3: i128,
    pub p2: i128,
    pub pif_y: i128,
    pub total: i128,
}

impl PifBreakdown {
    /// V_2 = W_1 + ... + W_5.
    pub fn v2(&self) -> i128 {
        self.w1 + self.w2 + self.w3 + self.w4 + self.w5
    }
    /// S_2 = U + V_1 + V_2.
    pub fn s2(&self) -> i128 {
        self.u + self.v1 + self.v2()
    }
    /// Special-leaf total S = S_1 + S_2 + S_3.
    pub fn special(&self) -> i128 {
        self.s1 + self.s2() + self.s3
    }
    /// Phi(x, a) = S_0 + S.
    pub fn phi(&self) -> i128 {
        self.s0 + self.special()
    }
}

fn check_x(x: u64) -> Result<()> {
    if x > PIF_MAX_X {
        return Err(Error::capacity(format!(
            "x = {x} exceeds the supported pi_f range {PIF_MAX_X}"
        )));
    }
    Ok(())
}

/// Smallest integer >= x^(1/3).
fn cbrt_ceil(x: u64) -> u64 {
    let c = icbrt_u64(x);
    if (c as u128) * (c as u128) * (c as u128) == x as u128 {
        c
    } else {
        c + 1
    }
}

fn choose_y(x: u64, cfg: &PifConfig) -> Result<u64> {
    let lo = cbrt_ceil(x);
    let hi = isqrt_u64(x);
    if lo > hi {
        return Err(Error::domain(format!("x = {x} too small for the engine")));
    }
    let want = (cfg.y_factor * icbrt_u64(x) as f64) as u64;
    let y = want.clamp(lo, hi).min(cfg.max_table_y);
    if y < lo {
        return Err(Error::resource(format!(
            "table budget {} below the minimum y = {} for x = {}",
            cfg.max_table_y, lo, x
        )));
    }
    Ok(y)
}

/// S_0(y, x) = sum over squarefree n <= y of mu(n) f(n) F(x/n).
pub fn ordinary_leaves(t: &PrimeTables, x: u64, y: u64, w: Weight) -> Result<i128> {
    if y == 0 || (y as u128) * (y as u128) > x as u128 {
        return Err(Error::domain(format!("need 1 <= y <= sqrt(x), got y = {y}")));
    }
    if y > t.y {
        return Err(Error::domain("ordinary_leaves: y beyond table bound"));
    }
    let mut s = 0i128;
    for n in 1..=y {
        let mu = t.mobius(n);
        if mu == 0 {
            continue;
        }
        let term = w
            .f(n)
            .checked_mul(summatory(x / n, w))
            .ok_or_else(|| Error::capacity("S_0 term overflow"))?;
        s = s
            .checked_add(if mu > 0 { term } else { -term })
            .ok_or_else(|| Error::capacity("S_0 accumulator overflow"))?;
    }
    Ok(s)
}

/// Sum of f(q) pi_f(z/q) over primes sqrt(z) < q <= u, grouping runs of q
/// with equal pi_f(z/q); O(sqrt(z)/log z) table lookups.
pub fn grouped_quotient_sum(t: &PrimeTables, z: u64, u: u64, w: Weight) -> Result<i128> {
    if z < 1 {
        return Err(Error::domain("grouped_quotient_sum: z must be >= 1"));
    }
    if u > t.y {
        return Err(Error::domain(format!(
            "grouped_quotient_sum: u = {u} beyond table bound {}",
            t.y
        )));
    }
    let sq = isqrt_u64(z);
    if u < sq || u > z {
        return Err(Error::domain(format!(
            "grouped_quotient_sum: need sqrt(z) <= u <= z, got z = {z}, u = {u}"
        )));
    }
    if !t.has_weight(w) {
        return Err(Error::domain("weight not registered in tables"));
    }
    let mut s = 0i128;
    let top = t.pi(u);
    let mut imin = t.pi(sq) + 1;
    while imin <= top {
        let q = t.prime(imin);
        let zq = z / q;
        debug_assert!(zq <= t.y);
        let s_idx = t.pi(zq);
        if s_idx == 0 {
            break; // pi_f(z/q') = 0 from here on
        }
        let m = (z / t.prime(s_idx)).min(u);
        let imax = t.pi(m);
        debug_assert!(imax >= imin);
        let group = t.pif_prime(w, imax) - t.pif_prime(w, imin - 1);
        let term = group
            .checked_mul(t.pif_prime(w, s_idx))
            .ok_or_else(|| Error::capacity("grouped sum overflow"))?;
        s = s
            .checked_add(term)
            .ok_or_else(|| Error::capacity("grouped sum overflow"))?;
        imin = imax + 1;
    }
    Ok(s)
}

/// P_2(x, a) with a = pi(y): the weighted sum over integers <= x with
/// exactly two prime factors, both above y.
pub fn p2(x: u64, y: u64, w: Weight) -> Result<i128> {
    check_x(x)?;
    if y == 0 {
        return Err(Error::domain("p2: y must be positive"));
    }
    if (y as u128) * (y as u128) >= x as u128 {
        return Ok(0); // no primes in (y, sqrt(x)]
    }
    // base primes must reach sqrt(x/y) for the main sieve; above x^(1/3)
    // that is y itself
    let bound = y.max(isqrt_u64(x / y) + 1);
    let cfg = PifConfig::default();
    let t = PrimeTables::build(bound, &[w])?;
    let eng = Engine::new(x, y, w, &t, cfg.block_for(bound));
    let (_, _, pif_sqrt) = eng.sqrt_pass()?;
    eng.p2_pass(pif_sqrt)
}

/// The special-leaf total S = S_1 + S_2 + S_3 for the given split point y.
pub fn special_leaves(x: u64, y: u64, w: Weight) -> Result<i128> {
    check_x(x)?;
    validate_y(x, y)?;
    let cfg = PifConfig::default();
    let t = PrimeTables::build(y, &[w])?;
    let eng = Engine::new(x, y, w, &t, cfg.block_for(y));
    let tp = eng.table_pieces()?;
    let (w1, w2, _) = eng.sqrt_pass()?;
    let s3 = eng.s3_pass()?;
    Ok(tp.s1 + tp.u + tp.v1 + w1 + w2 + tp.w3 + tp.w4 + tp.w5 + s3)
}

fn validate_y(x: u64, y: u64) -> Result<()> {
    let y128 = y as u128;
    if y128 * y128 > x as u128 || y128 * y128 * y128 < x as u128 {
        return Err(Error::domain(format!(
            "y = {y} outside [x^(1/3), sqrt(x)] for x = {x}"
        )));
    }
    Ok(())
}

/// Full engine run at an explicit split point y.
pub fn pif_breakdown_with_y(x: u64, y: u64, w: Weight, cfg: &PifConfig) -> Result<PifBreakdown> {
    check_x(x)?;
    if x < 8 {
        return Err(Error::domain("engine requires x >= 8"));
    }
    validate_y(x, y)?;
    let t = PrimeTables::build(y, &[w])?;
    let eng = Engine::new(x, y, w, &t, cfg.block_for(y));
    let a = t.pi(y);
    let tp = eng.table_pieces()?;
    let (w1, w2, pif_sqrt) = eng.sqrt_pass()?;
    let p2v = eng.p2_pass(pif_sqrt)?;
    let s3 = eng.s3_pass()?;
    let s0 = ordinary_leaves(&t, x, y, w)?;
    let pif_y = t.pif_prime(w, a);
    let special = tp.s1 + tp.u + tp.v1 + w1 + w2 + tp.w3 + tp.w4 + tp.w5 + s3;
    let total = s0
        .checked_add(special)
        .and_then(|v| v.checked_add(pif_y))
        .and_then(|v| v.checked_sub(1))
        .and_then(|v| v.checked_sub(p2v))
        .ok_or_else(|| Error::capacity("pi_f assembly overflow"))?;
    Ok(PifBreakdown {
        x,
        y,
        a,
        s0,
        s1: tp.s1,
        u: tp.u,
        v1: tp.v1,
        w1,
        w2,
        w3: tp.w3,
        w4: tp.w4,
        w5: tp.w5,
        s3,
        p2: p2v,
        pif_y,
        total,
    })
}

/// Full engine run with y chosen from the config.
pub fn pif_breakdown(x: u64, w: Weight, cfg: &PifConfig) -> Result<PifBreakdown> {
    check_x(x)?;
    if x < 8 {
        return Err(Error::domain("engine requires x >= 8"));
    }
    pif_breakdown_with_y(x, choose_y(x, cfg)?, w, cfg)
}

/// pi_f(x), exactly.
pub fn pif(x: u64, w: Weight, cfg: &PifConfig) -> Result<i128> {
    check_x(x)?;
    if x < 64 {
        return Ok(simple_primes(x).iter().map(|&p| w.f(p)).sum());
    }
    Ok(pif_breakdown(x, w, cfg)?.total)
}
