//! Exact integer roots and deterministic 64-bit primality.

/// Largest r with r*r <= x.
#[inline]
pub fn isqrt_u64(x: u64) -> u64 {
    x.isqrt()
}

/// Largest r with r*r <= x.
#[inline]
pub fn isqrt_u128(x: u128) -> u128 {
    x.isqrt()
}

/// Largest r with r^3 <= x.
pub fn icbrt_u64(x: u64) -> u64 {
    let mut r = (x as f64).cbrt() as u64;
    // float estimate can be off by one in either direction
    while r > 0 && (r as u128) * (r as u128) * (r as u128) > x as u128 {
        r -= 1;
    }
    while ((r + 1) as u128) * ((r + 1) as u128) * ((r + 1) as u128) <= x as u128 {
        r += 1;
    }
    r
}

/// Largest r with r^4 <= x. Nested floor of square roots is exact.
#[inline]
pub fn i4rt_u64(x: u64) -> u64 {
    x.isqrt().isqrt()
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for the full u64 range.
///
/// The seven bases below are a known witness set covering every n < 2^64
/// (Sinclair's set, verified exhaustively by the miller-rabin.appspot project).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    if n < 41 * 41 {
        return true;
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'base: for &a in &[2u64, 325, 9375, 28178, 450775, 9780504, 1795265022] {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'base;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

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
    fn roots_are_exact() {
        for x in 0..10_000u64 {
            let s = isqrt_u64(x);
            assert!(s * s <= x && (s + 1) * (s + 1) > x, "isqrt({x})");
            let c = icbrt_u64(x);
            assert!(c * c * c <= x && (c + 1) * (c + 1) * (c + 1) > x, "icbrt({x})");
            let q = i4rt_u64(x);
            assert!(q * q * q * q <= x, "i4rt({x})");
            assert!((q + 1).pow(4) > x, "i4rt({x})");
        }
        // boundary cases around perfect powers
        for r in [1u64, 2, 3, 10, 1_000, 2_642_245] {
            for d in [3u32, 4] {
                let p = (r as u128).pow(d);
                if p <= u64::MAX as u128 {
                    let p = p as u64;
                    let f = if d == 3 { icbrt_u64 } else { i4rt_u64 };
                    assert_eq!(f(p), r);
                    assert_eq!(f(p - 1), r - 1);
                    assert_eq!(f(p + 1), r);
                }
            }
        }
        assert_eq!(icbrt_u64(u64::MAX), 2_642_245);
    }

    #[test]
    fn miller_rabin_matches_trial_division() {
        for n in 0..50_000u64 {
            assert_eq!(is_prime(n), is_prime_td(n), "n = {n}");
        }
    }

    #[test]
    fn miller_rabin_large_anchors() {
        assert!(is_prime(396833));
        assert!(is_prime(5477081));
        assert!(is_prime(5477083));
        assert!(is_prime(2898434150644708999));
        assert!(is_prime(2898434150644709023));
        assert!(is_prime(1012352338532863519));
        assert!(is_prime(18446744073709551557)); // largest u64 prime
        assert!(!is_prime(18446744073709551615));
        assert!(!is_prime(3215031751)); // strong pseudoprime to bases 2,3,5,7
    }
}
