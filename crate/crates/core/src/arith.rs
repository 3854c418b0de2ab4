//! Machine-word integer helpers: modular arithmetic, primality, trial-division
//! factorization and CRT.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &q in &SMALL {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> Result<u64> {
    if a == 0 || b == 0 {
        return Ok(0);
    }
    (a / gcd(a, b)).checked_mul(b).ok_or(Error::Overflow("lcm"))
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Combine `x = r1 (mod m1)` and `x = r2 (mod m2)` for coprime moduli.
pub fn crt(r1: u64, m1: u64, r2: u64, m2: u64) -> Result<(u64, u64)> {
    let m = m1.checked_mul(m2).ok_or(Error::Overflow("crt"))?;
    let inv = inv_mod(m1 % m2, m2).ok_or(Error::InvalidFactorization("CRT moduli not coprime"))?;
    // x = r1 + m1 * ((r2 - r1) * inv mod m2)
    let diff = (r2 as i128 - r1 as i128).rem_euclid(m2 as i128) as u64;
    let t = mul_mod(diff, inv, m2);
    let x = (r1 as u128 + m1 as u128 * t as u128) % m as u128;
    Ok((x as u64, m))
}

/// Factorization of a positive integer into prime powers, with the primes in
/// increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupOrder {
    order: u64,
    factors: Vec<(u64, u32)>,
}

impl GroupOrder {
    /// Factor `order` by trial division.
    pub fn new(order: u64) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidFactorization("order must be positive"));
        }
        Ok(GroupOrder { order, factors: factor(order) })
    }

    /// Accept a caller-supplied factorization after checking it.
    pub fn from_factors(order: u64, mut factors: Vec<(u64, u32)>) -> Result<Self> {
        factors.sort_unstable();
        let mut prod = 1u64;
        for (i, &(q, e)) in factors.iter().enumerate() {
            if e == 0 {
                return Err(Error::InvalidFactorization("zero multiplicity"));
            }
            if !is_prime(q) {
                return Err(Error::InvalidFactorization("listed factor is not prime"));
            }
            if i > 0 && factors[i - 1].0 == q {
                return Err(Error::InvalidFactorization("repeated prime"));
            }
            let qe = q.checked_pow(e).ok_or(Error::Overflow("factorization"))?;
            prod = prod.checked_mul(qe).ok_or(Error::Overflow("factorization"))?;
        }
        if prod != order {
            return Err(Error::InvalidFactorization("product does not equal the order"));
        }
        Ok(GroupOrder { order, factors })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn is_prime(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    /// Factorization of a divisor `d` of this order.
    pub fn divisor(&self, d: u64) -> Result<GroupOrder> {
        if d == 0 || self.order % d != 0 {
            return Err(Error::InvalidFactorization("not a divisor"));
        }
        let mut rest = d;
        let mut factors = Vec::new();
        for &(q, _) in &self.factors {
            let mut e = 0;
            while rest % q == 0 {
                rest /= q;
                e += 1;
            }
            if e > 0 {
                factors.push((q, e));
            }
        }
        Ok(GroupOrder { order: d, factors })
    }

    /// Factorization of `self * other`.
    pub fn product(&self, other: &GroupOrder) -> Result<GroupOrder> {
        let order = self.order.checked_mul(other.order).ok_or(Error::Overflow("order product"))?;
        let mut factors = self.factors.clone();
        for &(q, e) in &other.factors {
            match factors.iter_mut().find(|(p, _)| *p == q) {
                Some(entry) => entry.1 += e,
                None => factors.push((q, e)),
            }
        }
        factors.sort_unstable();
        Ok(GroupOrder { order, factors })
    }
}

impl fmt::Display for GroupOrder {
    /// `12 = 2^2*3`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = ", self.order)?;
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (q, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{q}")?;
            } else {
                write!(f, "{q}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Trial division, stopping early once the cofactor is prime.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut push = |q: u64, n: &mut u64| {
        let mut e = 0;
        while *n % q == 0 {
            *n /= q;
            e += 1;
        }
        if e > 0 {
            out.push((q, e));
        }
    };
    push(2, &mut n);
    push(3, &mut n);
    let mut q = 5u64;
    while n > 1 && q.saturating_mul(q) <= n {
        if is_prime(n) {
            break;
        }
        push(q, &mut n);
        push(q + 2, &mut n);
        q += 6;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn primality_matches_sieve() {
        let mut sieve = vec![true; 2000];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..2000 {
            if sieve[i] {
                let mut j = i * i;
                while j < 2000 {
                    sieve[j] = false;
                    j += i;
                }
            }
        }
        for (n, &p) in sieve.iter().enumerate() {
            assert_eq!(is_prime(n as u64), p, "n = {n}");
        }
        assert!(is_prime((1 << 61) - 1));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2, 3, 5, 7
    }

    #[test]
    fn factor_round_trips() {
        for n in 1..5000u64 {
            let f = GroupOrder::new(n).unwrap();
            let prod: u64 = f.factors().iter().map(|&(q, e)| q.pow(e)).product();
            assert_eq!(prod, n);
            assert!(f.factors().iter().all(|&(q, _)| is_prime(q)));
        }
        assert_eq!(factor(120), vec![(2, 3), (3, 1), (5, 1)]);
    }

    #[test]
    fn from_factors_rejects_bad_input() {
        assert!(GroupOrder::from_factors(12, vec![(2, 2), (3, 1)]).is_ok());
        assert!(GroupOrder::from_factors(12, vec![(4, 1), (3, 1)]).is_err());
        assert!(GroupOrder::from_factors(12, vec![(2, 1), (3, 1)]).is_err());
    }

    #[test]
    fn crt_small() {
        let (x, m) = crt(2, 4, 1, 3).unwrap();
        assert_eq!((x, m), (10, 12));
        assert_eq!(inv_mod(2, 11), Some(6));
        assert_eq!(inv_mod(2, 4), None);
    }

    #[test]
    fn display_order() {
        assert_eq!(alloc::format!("{}", GroupOrder::new(12).unwrap()), "12 = 2^2*3");
        assert_eq!(alloc::format!("{}", GroupOrder::new(1).unwrap()), "1 = 1");
    }
}
