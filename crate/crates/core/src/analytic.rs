//! The logarithmic integral, its numerical inverse, and the conditional
//! error bound used to size correction windows when locating p_k.
//!
//! Li(x) = gamma + log log x + sum_{n>=1} (log x)^n / (n n!). All terms of
//! the series are positive for x > 1, so plain f64 summation carries no
//! cancellation; the relative error target applies to the located abscissa,
//! which downstream code always refines by an exact prime walk.

use crate::error::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Tolerances for Li and its inverse.
#[derive(Clone, Copy, Debug)]
pub struct LiConfig {
    pub relative_tolerance: f64,
    pub max_newton_iterations: u32,
}

impl Default for LiConfig {
    fn default() -> Self {
        LiConfig {
            relative_tolerance: 1e-14,
            max_newton_iterations: 60,
        }
    }
}

impl LiConfig {
    pub fn validated(self) -> Result<Self> {
        if !(self.relative_tolerance > 0.0 && self.relative_tolerance <= 1e-6) {
            return Err(Error::domain("LiConfig tolerance must lie in (0, 1e-6]"));
        }
        if self.max_newton_iterations < 8 {
            return Err(Error::domain("LiConfig needs at least 8 iterations"));
        }
        Ok(self)
    }
}

/// Li(x) for x > 1 by the gamma + log log x series.
pub fn li(x: f64, cfg: &LiConfig) -> Result<f64> {
    if !(x > 1.0) || (x - 1.0).abs() < 1e-12 {
        return Err(Error::domain(format!("Li requires x > 1, got {x}")));
    }
    let l = x.ln();
    let mut sum = EULER_GAMMA + l.ln();
    let mut term = 1.0f64;
    let mut n = 1u32;
    loop {
        term *= l / n as f64;
        let add = term / n as f64;
        sum += add;
        if add.abs() < cfg.relative_tolerance * sum.abs() && n > 4 {
            break;
        }
        n += 1;
        if n > 20_000 {
            return Err(Error::numeric("Li series failed to converge"));
        }
    }
    Ok(sum)
}

/// x with Li(x) = z, by bracketed Newton iteration seeded at z log z.
pub fn li_inverse(z: f64, cfg: &LiConfig) -> Result<f64> {
    if !(z >= 1.0) {
        return Err(Error::domain(format!("li_inverse requires z >= 1, got {z}")));
    }
    // bracket the root
    let mut lo = 1.0 + 1e-9;
    let mut hi = (z * z.ln().max(1.0)).max(4.0);
    while li(hi, cfg)? < z {
        hi *= 2.0;
        if hi > 1e300 {
            return Err(Error::numeric("li_inverse bracket expansion failed"));
        }
    }
    let mut x = (z * z.ln().max(1.0)).max(2.0).min(hi);
    for _ in 0..cfg.max_newton_iterations {
        let fx = li(x, cfg)? - z;
        if fx.abs() <= cfg.relative_tolerance * z.max(1.0) {
            return Ok(x);
        }
        if fx > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        // Li'(x) = 1/log x, so the Newton step is -fx log x
        let step = fx * x.ln();
        let mut next = x - step;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi); // bisect on overshoot
        }
        if (next - x).abs() <= f64::EPSILON * x.abs() {
            return Ok(next);
        }
        x = next;
    }
    Err(Error::numeric(format!(
        "li_inverse failed to converge for z = {z}"
    )))
}

/// (5 / 24 pi) x^(3/2) log x: the Riemann-hypothesis bound on
/// |pi_id(x) - Li(x^2)|, used only to size sieve windows.
pub fn rh_gap_bound(x: f64) -> Result<f64> {
    if x < 41.0 {
        return Err(Error::domain(format!("rh_gap_bound requires x >= 41, got {x}")));
    }
    Ok(5.0 / (24.0 * std::f64::consts::PI) * x.powf(1.5) * x.ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prime_sum::{pif, PifConfig, Weight};
    use crate::primes::{next_prime, simple_primes};

    fn cfg() -> LiConfig {
        LiConfig::default().validated().unwrap()
    }

    #[test]
    fn li_paper_values() {
        // pi(2657) - Li(2657) = 384 - 399.59681...
        let v = li(2657.0, &cfg()).unwrap();
        assert!((399.59681..399.59682).contains(&v), "Li(2657) = {v}");
        // Li(2657^2) = 480610.2863...
        let v2 = li(2657.0 * 2657.0, &cfg()).unwrap();
        assert!((480610.2863..480610.2864).contains(&v2), "Li(2657^2) = {v2}");
        // pi_id(2657) - Li(2657^2) = -15957.2863...
        let diff = 464_653.0 - v2;
        assert!((-15957.2864..-15957.2863).contains(&diff));
        assert!(matches!(li(1.0, &cfg()), Err(Error::Domain(_))));
        assert!(matches!(li(0.5, &cfg()), Err(Error::Domain(_))));
    }

    #[test]
    fn li_inverse_round_trips() {
        let c = cfg();
        for z in [1.0, 2.0, 1e3, 1e6, 1e12, 1e18] {
            let x = li_inverse(z, &c).unwrap();
            let back = li(x, &c).unwrap();
            assert!(
                (back - z).abs() <= 10.0 * c.relative_tolerance * z.max(1.0),
                "z = {z}: li(li_inverse) = {back}"
            );
        }
        let x = li_inverse(399.596_81, &c).unwrap();
        assert!((x - 2657.0).abs() <= 1.0, "inverse anchor, got {x}");
    }

    #[test]
    fn li_inverse_monotone() {
        use rand::{Rng, SeedableRng};
        let c = cfg();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for _ in 0..100 {
            let z1: f64 = rng.gen_range(1.0..1e14);
            let z2: f64 = rng.gen_range(1.0..1e14);
            let (z1, z2) = if z1 < z2 { (z1, z2) } else { (z2, z1) };
            if z2 - z1 < 1.0 {
                continue;
            }
            assert!(li_inverse(z1, &c).unwrap() < li_inverse(z2, &c).unwrap());
        }
    }

    #[test]
    fn li_is_increasing_on_grid() {
        let c = cfg();
        let mut prev = f64::MIN;
        let mut x = 2.0f64;
        while x < 1e10 {
            let v = li(x, &c).unwrap();
            assert!(v > prev);
            prev = v;
            x *= 1.7;
        }
    }

    #[test]
    fn sqrt_of_inverse_brackets_pk_for_1e12() {
        // the abscissa used to seed locate-k near n = 10^12
        let x = li_inverse(1e12, &cfg()).unwrap().sqrt();
        assert!((5.3e6..5.7e6).contains(&x), "got {x}");
    }

    #[test]
    fn rh_bound_values_and_growth() {
        let b41 = rh_gap_bound(41.0).unwrap();
        let expect = 5.0 / (24.0 * std::f64::consts::PI) * 41.0f64.powf(1.5) * 41.0f64.ln();
        assert!((b41 - expect).abs() < 1e-9);
        assert!((64.0..66.0).contains(&b41));
        for x in [1e2, 1e4, 1e8] {
            assert!(rh_gap_bound(x).unwrap() < rh_gap_bound(2.0 * x).unwrap());
        }
        assert!(matches!(rh_gap_bound(40.9), Err(Error::Domain(_))));
        // |pi_id(2657) - Li(2657^2)| = 15957.28... <= bound(2657)
        let gap = (464_653.0 - li(2657.0 * 2657.0, &cfg()).unwrap()).abs();
        assert!(gap <= rh_gap_bound(2657.0).unwrap());
    }

    #[test]
    fn pi_id_within_rh_envelope_up_to_2657() {
        // f1(p') <= pi_id(p) <= f2(p) for every prime p in [41, 2657]
        let c = cfg();
        let pc = PifConfig::default();
        let f = |x: f64, sign: f64| {
            li(x * x, &c).unwrap() + sign * rh_gap_bound(x).unwrap()
        };
        let mut sum = 0i128;
        for &p in simple_primes(2657).iter() {
            sum += p as i128;
            if p < 41 {
                continue;
            }
            let pnext = next_prime(p + 1).unwrap();
            assert!(f(pnext as f64, -1.0) <= sum as f64, "lower envelope at p = {p}");
            assert!(sum as f64 <= f(p as f64, 1.0), "upper envelope at p = {p}");
        }
        assert_eq!(sum, pif(2657, Weight::Identity, &pc).unwrap());
    }
}
