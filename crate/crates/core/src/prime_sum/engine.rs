//! The blockwise sieve passes behind pi_f(x).
//!
//! A run splits pi_f(x) = Phi(x,a) + pi_f(y) - 1 - P_2(x,a) with a = pi(y),
//! and Phi(x,a) = S_0 + S where S (special leaves) is assembled from
//! S_1 + U + V_1 + W_1..W_5 + S_3. Range boundaries are decided by exact
//! integer predicates (p^3 > x, p^2*y > x, ...), never by floating point.

use super::fenwick::Fenwick;
use super::{grouped_quotient_sum, Weight};
use crate::arith::{i4rt_u64, isqrt_u64};
use crate::error::{Error, Result};
use crate::primes::PrimeTables;

#[inline]
fn acc(sum: &mut i128, term: i128) -> Result<()> {
    *sum = sum
        .checked_add(term)
        .ok_or_else(|| Error::capacity("pi_f accumulator overflow"))?;
    Ok(())
}

pub(super) struct Engine<'a> {
    pub x: u64,
    pub y: u64,
    pub a: usize,
    pub w: Weight,
    pub t: &'a PrimeTables,
    pub block: usize,
    sqrt_x: u64,
}

/// Sums of the table-lookup pieces of the special leaves.
#[derive(Default, Clone, Copy)]
pub(super) struct TablePieces {
    pub s1: i128,
    pub u: i128,
    pub v1: i128,
    pub w3: i128,
    pub w4: i128,
    pub w5: i128,
}

impl<'a> Engine<'a> {
    pub fn new(x: u64, y: u64, w: Weight, t: &'a PrimeTables, block: usize) -> Engine<'a> {
        debug_assert!(y <= t.y);
        Engine {
            x,
            y,
            a: t.pi(y),
            w,
            t,
            block: block.max(64),
            sqrt_x: isqrt_u64(x),
        }
    }

    #[inline]
    fn f(&self, n: u64) -> i128 {
        self.w.f(n)
    }

    /// pi_f at a point covered by the base tables.
    #[inline]
    fn pif_small(&self, u: u64) -> i128 {
        debug_assert!(u <= self.t.y);
        self.t.pif_at(self.w, u)
    }

    /// S_1, U, V_1 and W_3/W_4/W_5: every piece whose pi_f lookups stay
    /// within the base tables.
    pub fn table_pieces(&self) -> Result<TablePieces> {
        let (x, y) = (self.x as u128, self.y as u128);
        let t = self.t;
        let mut out = TablePieces::default();
        let pif_y = t.pif_prime(self.w, self.a);
        for k in 1..=self.a {
            let p = t.prime(k);
            let p128 = p as u128;
            let fp = self.f(p);
            if p128 * p128 * p128 > x {
                // S_1: Phi(x/(pq), pi(p)-1) = 1 for every q in (p, y]
                acc(&mut out.s1, fp * (pif_y - t.pif_prime(self.w, k)))?;
            } else if p128 * p128 * p128 * p128 > x {
                // S_2 range: x^(1/4) < p <= x^(1/3)
                let xp2 = self.x / (p * p);
                // V_1 over q in (p, min(x/p^2, y)]
                let qcap = xp2.min(self.y);
                if qcap > p {
                    let inner = self.pif_small(qcap) - t.pif_prime(self.w, k);
                    let one_minus = 1 - t.pif_prime(self.w, k - 1);
                    let term = fp
                        .checked_mul(inner)
                        .and_then(|v| v.checked_mul(one_minus))
                        .ok_or_else(|| Error::capacity("V_1 term overflow"))?;
                    acc(&mut out.v1, term)?;
                }
                if p128 * p128 * y > x {
                    // U: q > x/p^2 forces Phi = 1
                    acc(&mut out.u, fp * (pif_y - self.pif_small(xp2)))?;
                    // W_4: p < q <= sqrt(x/p), direct double sum
                    let mut kk = k + 1;
                    while kk <= self.a {
                        let q = t.prime(kk);
                        if (q as u128) * (q as u128) * p128 > x {
                            break;
                        }
                        acc(&mut out.w4, fp * self.f(q) * self.pif_small(self.x / (p * q)))?;
                        kk += 1;
                    }
                    // W_5: sqrt(x/p) < q <= x/p^2, grouped by equal pi_f
                    let z = self.x / p;
                    if xp2 > isqrt_u64(z) {
                        let g = grouped_quotient_sum(t, z, xp2, self.w)?;
                        let term = fp
                            .checked_mul(g)
                            .ok_or_else(|| Error::capacity("W_5 term overflow"))?;
                        acc(&mut out.w5, term)?;
                    }
                } else if p128 * y * y > x {
                    // W_3: sqrt(x/p) < q <= y, grouped
                    let g = grouped_quotient_sum(t, self.x / p, self.y, self.w)?;
                    let term = fp
                        .checked_mul(g)
                        .ok_or_else(|| Error::capacity("W_3 term overflow"))?;
                    acc(&mut out.w3, term)?;
                }
            }
        }
        Ok(out)
    }

    /// Mark composites of [lo, hi] using the base primes; `composite` is
    /// reused across blocks. Entries below 2 are marked non-prime.
    fn sieve_block(&self, lo: u64, hi: u64, composite: &mut Vec<bool>) {
        let width = (hi - lo + 1) as usize;
        composite.clear();
        composite.resize(width, false);
        let mut v = lo;
        while v < 2 && v <= hi {
            composite[(v - lo) as usize] = true;
            v += 1;
        }
        let t = self.t;
        for k in 1..=t.prime_count() {
            let p = t.prime(k);
            if (p as u128) * (p as u128) > hi as u128 {
                break;
            }
            let mut j = (lo.div_ceil(p) * p).max(p * p);
            while j <= hi {
                composite[(j - lo) as usize] = true;
                j += p;
            }
        }
    }

    /// One ascending pass over [1, sqrt(x)]: accumulates W_1 and W_2 and
    /// returns pi_f(floor(sqrt(x))) for the P_2 stage.
    pub fn sqrt_pass(&self) -> Result<(i128, i128, i128)> {
        let (x, y) = (self.x as u128, self.y as u128);
        let t = self.t;
        let mut w1_primes = Vec::new();
        let mut w2_primes = Vec::new();
        for k in 1..=self.a {
            let p = t.prime(k);
            let p128 = p as u128;
            if p128 * p128 * p128 * p128 <= x || p128 * p128 * p128 > x {
                continue;
            }
            if p128 * p128 * y <= x {
                if p128 * y * y <= x {
                    w1_primes.push(p);
                } else {
                    w2_primes.push(p);
                }
            }
        }
        let need_pif_sqrt = self.y < self.sqrt_x;
        if w1_primes.is_empty() && w2_primes.is_empty() && !need_pif_sqrt {
            return Ok((0, 0, 0));
        }

        let mut w1 = 0i128;
        let mut w2 = 0i128;
        let mut cum = 0i128;
        let mut composite = Vec::new();
        let mut rel: Vec<u64> = Vec::new();
        let mut lo = 1u64;
        while lo <= self.sqrt_x {
            let hi = (lo + self.block as u64 - 1).min(self.sqrt_x);
            self.sieve_block(lo, hi, &mut composite);
            let width = (hi - lo + 1) as usize;
            rel.clear();
            let mut run = 0u64;
            for i in 0..width {
                if !composite[i] {
                    run += match self.w {
                        Weight::Unit => 1,
                        Weight::Identity => lo + i as u64,
                    };
                }
                rel.push(run);
            }
            for (list, out) in [(&w1_primes, &mut w1), (&w2_primes, &mut w2)] {
                for &p in list.iter() {
                    let fp = self.f(p);
                    let qmax = if (p as u128) * y * y <= x {
                        self.y
                    } else {
                        isqrt_u64(self.x / p)
                    };
                    let qhi = qmax.min(self.x / (p * lo));
                    let qlo = (self.x / (p * (hi + 1)) + 1).max(p + 1);
                    if qlo > qhi {
                        continue;
                    }
                    for k in t.pi(qlo - 1) + 1..=t.pi(qhi) {
                        let q = t.prime(k);
                        let tt = self.x / (p * q);
                        debug_assert!(tt >= lo && tt <= hi);
                        let pf = cum + rel[(tt - lo) as usize] as i128;
                        let term = fp
                            .checked_mul(self.f(q))
                            .and_then(|v| v.checked_mul(pf))
                            .ok_or_else(|| Error::capacity("W_1/W_2 term overflow"))?;
                        acc(out, term)?;
                    }
                }
            }
            cum += rel[width - 1] as i128;
            lo = hi + 1;
        }
        Ok((w1, w2, cum))
    }

    /// P_2(x, a): two synchronized block sieves, the auxiliary one walking
    /// the primes of (y, sqrt(x)] downward while the main one walks
    /// (sqrt(x), x/y] upward serving pi_f(x/p) queries in ascending order.
    pub fn p2_pass(&self, pif_sqrt: i128) -> Result<i128> {
        if self.y >= self.sqrt_x {
            return Ok(0);
        }
        let mut p2 = 0i128;
        let mut t_run = pif_sqrt; // becomes pi_f(p - 1) per prime p
        let mut main = MainSieve {
            eng: self,
            cum: pif_sqrt,
            lo: 0,
            hi: self.sqrt_x,
            rel: Vec::new(),
            composite: Vec::new(),
        };
        let mut aux_composite = Vec::new();
        let mut aux_hi = self.sqrt_x;
        loop {
            let aux_lo = (self.y + 1).max(aux_hi.saturating_sub(self.block as u64 - 1));
            self.sieve_block(aux_lo, aux_hi, &mut aux_composite);
            for i in (0..(aux_hi - aux_lo + 1) as usize).rev() {
                if aux_composite[i] {
                    continue;
                }
                let p = aux_lo + i as u64;
                let fp = self.f(p);
                t_run -= fp;
                let tt = self.x / p;
                let v = if tt <= self.sqrt_x {
                    pif_sqrt
                } else {
                    main.pif(tt)?
                };
                let term = fp
                    .checked_mul(v - t_run)
                    .ok_or_else(|| Error::capacity("P_2 term overflow"))?;
                acc(&mut p2, term)?;
            }
            if aux_lo == self.y + 1 {
                break;
            }
            aux_hi = aux_lo - 1;
        }
        Ok(p2)
    }

    /// S_3: blockwise sieve of [1, x/y] by the primes up to x^(1/4), with a
    /// partial-sum tree giving Phi(x/(mp), pi(p)-1) for the squarefree m in
    /// (y/p, y] whose least prime factor exceeds p.
    pub fn s3_pass(&self) -> Result<i128> {
        let t = self.t;
        let a4 = t.pi(i4rt_u64(self.x).min(self.y));
        if a4 == 0 {
            return Ok(0);
        }
        let hi_all = self.x / self.y;
        let mut s3 = 0i128;
        // carry[i] = f-sum of survivors below the current block after
        // sieving by the first i-1 primes
        let mut carry = vec![0i128; a4 + 1];
        let mut fw = Fenwick::new();
        let mut alive = Vec::new();
        let mut lo = 1u64;
        while lo <= hi_all {
            let hi = (lo + self.block as u64 - 1).min(hi_all);
            let width = (hi - lo + 1) as usize;
            match self.w {
                Weight::Unit => fw.reset(width, |_| 1),
                Weight::Identity => fw.reset(width, |i| lo + i as u64),
            }
            alive.clear();
            alive.resize(width, true);
            for i in 1..=a4 {
                let p = t.prime(i);
                let snap = fw.total() as i128;
                let mlo = (self.y / p + 1).max(self.x / (p * (hi + 1)) + 1);
                let mhi = self.y.min(self.x / (p * lo));
                if mlo <= mhi {
                    let fp = self.f(p);
                    if p * p > self.y {
                        // every valid m here is a prime above p
                        let kfrom = (t.pi(mlo - 1) + 1).max(i + 1);
                        for k in kfrom..=t.pi(mhi) {
                            let m = t.prime(k);
                            let u = self.x / (m * p);
                            debug_assert!(u >= lo && u <= hi);
                            let phi = carry[i] + fw.prefix((u - lo + 1) as usize) as i128;
                            let term = fp
                                .checked_mul(self.f(m))
                                .and_then(|v| v.checked_mul(phi))
                                .ok_or_else(|| Error::capacity("S_3 term overflow"))?;
                            acc(&mut s3, term)?;
                        }
                    } else {
                        for m in mlo..=mhi {
                            let mu = t.mobius(m);
                            if mu == 0 || t.lpf(m) <= p {
                                continue;
                            }
                            let u = self.x / (m * p);
                            debug_assert!(u >= lo && u <= hi);
                            let phi = carry[i] + fw.prefix((u - lo + 1) as usize) as i128;
                            let term = fp
                                .checked_mul(self.f(m))
                                .and_then(|v| v.checked_mul(phi))
                                .ok_or_else(|| Error::capacity("S_3 term overflow"))?;
                            // specialbis carries a leading minus and mu(m)
                            acc(&mut s3, if mu > 0 { -term } else { term })?;
                        }
                    }
                }
                carry[i] += snap;
                let mut j = lo.div_ceil(p) * p;
                while j <= hi {
                    let idx = (j - lo) as usize;
                    if alive[idx] {
                        alive[idx] = false;
                        let v = match self.w {
                            Weight::Unit => 1,
                            Weight::Identity => j,
                        };
                        fw.sub_at(idx, v);
                    }
                    j += p;
                }
            }
            lo = hi + 1;
        }
        Ok(s3)
    }
}

/// Ascending block sieve over (sqrt(x), x/y] serving pi_f(t) queries in
/// non-decreasing order of t.
struct MainSieve<'e, 'a> {
    eng: &'e Engine<'a>,
    cum: i128, // pi_f of the last point of the previous block
    lo: u64,
    hi: u64,
    rel: Vec<u64>,
    composite: Vec<bool>,
}

impl MainSieve<'_, '_> {
    fn pif(&mut self, t: u64) -> Result<i128> {
        if self.lo != 0 && t < self.lo {
            return Err(Error::internal(
                "P_2 sieves desynchronized: main block overrun",
            ));
        }
        while t > self.hi {
            if let Some(&last) = self.rel.last() {
                self.cum += last as i128;
            }
            let lo = self.hi + 1;
            let hi = (lo + self.eng.block as u64 - 1).min(self.eng.x / self.eng.y);
            if hi < lo {
                return Err(Error::internal("P_2 main sieve exhausted"));
            }
            self.eng.sieve_block(lo, hi, &mut self.composite);
            let width = (hi - lo + 1) as usize;
            self.rel.clear();
            let mut run = 0u64;
            for i in 0..width {
                if !self.composite[i] {
                    run += match self.eng.w {
                        Weight::Unit => 1,
                        Weight::Identity => lo + i as u64,
                    };
                }
                self.rel.push(run);
            }
            self.lo = lo;
            self.hi = hi;
        }
        Ok(self.cum + self.rel[(t - self.lo) as usize] as i128)
    }
}
