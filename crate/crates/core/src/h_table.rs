//! Dense DP for h_j(n): the greatest product of exactly j distinct primes
//! (from a given alphabet) whose sum is at most n.
//!
//! The table is filled by the induction
//! h_j^(r+1)(n) = max(h_j^(r)(n), p_{r+1} * h_{j-1}^(r)(n - p_{r+1})),
//! processing alphabet primes in ascending order with the j and n loops
//! descending so each prime is used at most once per product. Entries are
//! exact big integers; 0 encodes "undefined" and compares as minus infinity.

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::primes::simple_primes;
use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Prime alphabet for the DP.
#[derive(Clone, Debug)]
pub enum Alphabet {
    /// All primes (the loop bound p_{k+1} + p_{k+2} is applied internally).
    All,
    /// An explicit ascending list of distinct primes.
    Restricted(Vec<u64>),
}

pub struct HTable {
    nmax: u64,
    restricted: bool,
    /// Primes processed by the DP loop.
    alphabet: Vec<u64>,
    /// Largest row index: the maximal j with sigma_j <= nmax.
    kmax: usize,
    /// sigma\[j\] = sum of the first j alphabet primes (while <= nmax + slack).
    sigma: Vec<u64>,
    /// primorial\[j\] = product of the first j alphabet primes.
    primorial: Vec<BigUint>,
    /// rows\[j\]\[n\]; rows\[0\] is identically 1.
    rows: Vec<Vec<BigUint>>,
}

/// Fill the h_j(n) table for 2 <= n <= nmax.
pub fn compute_table(nmax: u64, alphabet: Alphabet) -> Result<HTable> {
    if nmax < 2 {
        return Err(Error::domain("compute_table requires nmax >= 2"));
    }
    if nmax > 200_000 {
        return Err(Error::resource(format!(
            "nmax = {nmax}: table of {nmax} columns of big integers exceeds the budget"
        )));
    }
    let n = nmax as usize;
    let (primes, restricted) = match alphabet {
        Alphabet::All => {
            // enough primes to know k(nmax) and the loop bound
            // pmax = p_{kmax+1} + p_{kmax+2}
            let mut limit = 4 * nmax + 64;
            let all = loop {
                let ps = simple_primes(limit);
                let mut acc = 0u64;
                let mut count = 0usize;
                for &p in &ps {
                    acc += p;
                    if acc > nmax {
                        break;
                    }
                    count += 1;
                }
                if ps.len() >= count + 2 {
                    break ps;
                }
                limit *= 2;
            };
            (all, false)
        }
        Alphabet::Restricted(list) => {
            if list.is_empty() {
                return Err(Error::domain("empty alphabet"));
            }
            for w in list.windows(2) {
                if w[0] >= w[1] {
                    return Err(Error::domain("alphabet must be strictly increasing"));
                }
            }
            if let Some(&bad) = list.iter().find(|&&p| !is_prime(p)) {
                return Err(Error::domain(format!("alphabet entry {bad} is not prime")));
            }
            (list, true)
        }
    };

    // sigma / primorial prefixes and kmax
    let mut sigma = vec![0u64];
    let mut primorial = vec![BigUint::one()];
    let mut kmax = 0usize;
    for &p in &primes {
        let s = sigma.last().unwrap() + p;
        if s <= nmax {
            kmax += 1;
        }
        sigma.push(s);
        primorial.push(primorial.last().unwrap() * p);
        if s > nmax && sigma.len() > kmax + 2 {
            break;
        }
    }
    if kmax == 0 {
        return Err(Error::domain(format!(
            "no alphabet prime fits in the budget n = {nmax}"
        )));
    }

    // loop primes: full alphabet stops at pmax = p_{kmax+1} + p_{kmax+2}
    let loop_primes: Vec<u64> = if restricted {
        primes.clone()
    } else {
        let pmax = primes
            .get(kmax)
            .and_then(|a| primes.get(kmax + 1).map(|b| a + b))
            .ok_or_else(|| Error::internal("prime pool too small"))?;
        primes.iter().copied().take_while(|&p| p <= pmax).collect()
    };

    let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(kmax + 1);
    rows.push(vec![BigUint::one(); n + 1]);
    for _ in 1..=kmax {
        rows.push(vec![BigUint::zero(); n + 1]);
    }

    for (r0, &p) in loop_primes.iter().enumerate() {
        let r = r0 + 1;
        let pu = p as usize;
        if r <= kmax {
            let start = sigma[r] as usize;
            for cell in rows[r][start..=n].iter_mut() {
                cell.clone_from(&primorial[r]);
            }
        }
        let jmax = (r - 1).min(kmax);
        for j in (2..=jmax).rev() {
            let low = pu + sigma[j - 1] as usize;
            if low > n {
                continue;
            }
            let (lower, upper) = rows.split_at_mut(j);
            let prev_row = &lower[j - 1];
            let row = &mut upper[0];
            for i in (low..=n).rev() {
                let prev = &prev_row[i - pu];
                if prev.is_zero() {
                    continue;
                }
                let cand = prev * p;
                if cand > row[i] {
                    row[i] = cand;
                }
            }
        }
        if pu <= n && kmax >= 1 {
            for cell in rows[1][pu..=n].iter_mut() {
                *cell = BigUint::from(p);
            }
        }
    }

    Ok(HTable {
        nmax,
        restricted,
        alphabet: loop_primes,
        kmax,
        sigma,
        primorial,
        rows,
    })
}

impl HTable {
    pub fn nmax(&self) -> u64 {
        self.nmax
    }

    pub fn kmax(&self) -> usize {
        self.kmax
    }

    pub fn is_restricted(&self) -> bool {
        self.restricted
    }

    pub fn alphabet(&self) -> &[u64] {
        &self.alphabet
    }

    /// sigma_j over this alphabet, defined for j <= kmax + 1.
    pub fn sigma(&self, j: usize) -> u64 {
        self.sigma[j]
    }

    /// Product of the first j alphabet primes.
    pub fn primorial(&self, j: usize) -> &BigUint {
        &self.primorial[j]
    }

    /// h_j(n, alphabet), None where undefined.
    pub fn get(&self, j: usize, n: u64) -> Option<&BigUint> {
        if j > self.kmax || n > self.nmax {
            return None;
        }
        let v = &self.rows[j][n as usize];
        if j > 0 && v.is_zero() {
            None
        } else {
            Some(v)
        }
    }

    /// The largest k with sigma_k <= n.
    pub fn k_of(&self, n: u64) -> usize {
        let mut k = 0;
        while k + 1 <= self.kmax && self.sigma[k + 1] <= n {
            k += 1;
        }
        k
    }

    /// h(n) = h_{k(n)}(n); full alphabet only.
    pub fn h_small(&self, n: u64) -> Result<BigUint> {
        if self.restricted {
            return Err(Error::domain(
                "h = h_k is not guaranteed over a restricted alphabet",
            ));
        }
        if n > self.nmax {
            return Err(Error::domain(format!(
                "n = {n} beyond table bound {}",
                self.nmax
            )));
        }
        if n < 2 {
            return Ok(BigUint::one());
        }
        let k = self.k_of(n);
        Ok(self.rows[k][n as usize].clone())
    }

    /// Fig. 1 style rendering: rows n, columns j, blank where undefined.
    pub fn render(&self, tsv: bool) -> String {
        let mut out = String::new();
        let mut widths = vec![0usize; self.kmax + 1];
        let cells: Vec<Vec<String>> = (2..=self.nmax)
            .map(|n| {
                (1..=self.kmax)
                    .map(|j| {
                        self.get(j, n)
                            .map(|v| v.to_string())
                            .unwrap_or_default()
                    })
                    .collect()
            })
            .collect();
        if tsv {
            out.push('n');
            for j in 1..=self.kmax {
                out.push_str(&format!("\tj={j}"));
            }
            out.push('\n');
            for (i, row) in cells.iter().enumerate() {
                out.push_str(&(i as u64 + 2).to_string());
                for c in row {
                    out.push('\t');
                    out.push_str(c);
                }
                out.push('\n');
            }
            return out;
        }
        let nw = self.nmax.to_string().len().max(1);
        for row in &cells {
            for (j, c) in row.iter().enumerate() {
                widths[j + 1] = widths[j + 1].max(c.len()).max(format!("j={}", j + 1).len());
            }
        }
        out.push_str(&format!("{:>nw$}", "n"));
        for j in 1..=self.kmax {
            out.push_str(&format!("  {:>w$}", format!("j={j}"), w = widths[j]));
        }
        out.push('\n');
        for (i, row) in cells.iter().enumerate() {
            out.push_str(&format!("{:>nw$}", i as u64 + 2));
            for (j, c) in row.iter().enumerate() {
                out.push_str(&format!("  {:>w$}", c, w = widths[j + 1]));
            }
            out.push('\n');
        }
        out
    }
}

/// Exhaustive maximum over subsets of primes with sum <= n; the independent
/// oracle for the DP. Exponential, so n is capped.
pub fn brute_force_h(n: u64) -> Result<(BigUint, usize)> {
    if n > 70 {
        return Err(Error::domain("brute_force_h is capped at n = 70"));
    }
    if n < 2 {
        return Ok((BigUint::one(), 0));
    }
    let ps = simple_primes(n);
    let mut best = (BigUint::one(), 0usize);
    fn rec(ps: &[u64], i: usize, budget: u64, cur: &BigUint, j: usize, best: &mut (BigUint, usize)) {
        if *cur > best.0 {
            *best = (cur.clone(), j);
        }
        for k in i..ps.len() {
            if ps[k] > budget {
                break;
            }
            let next = cur * ps[k];
            rec(ps, k + 1, budget - ps[k], &next, j + 1, best);
        }
    }
    rec(&ps, 0, n, &BigUint::one(), 0, &mut best);
    Ok(best)
}
