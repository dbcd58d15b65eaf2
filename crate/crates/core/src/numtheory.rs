//! Exact modular arithmetic: primitive roots, the unit ξ, binomials and
//! modular inverses.
//!
//! Everything that touches `p^p` goes through `num-bigint`; the rest of the
//! crate works with machine-word residues modulo `p^e` for `e < p`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Trial-division primality test. Inputs are desk-scale.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Splits `m` as `p^j` with `p` prime, if possible.
pub fn prime_power(m: u64) -> Option<(u64, u32)> {
    if m < 2 {
        return None;
    }
    let p = (2..=m).find(|d| m.is_multiple_of(*d))?;
    let mut rest = m;
    let mut j = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        j += 1;
    }
    (rest == 1).then_some((p, j))
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut result = 1u128;
    let mut b = (base % m) as u128;
    let m = m as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    result as u64
}

/// `p^e` as a `u64`, panicking on overflow (callers bound `e` by the table cap).
pub fn ipow(p: u64, e: u32) -> u64 {
    p.checked_pow(e).expect("prime power overflows u64")
}

/// Distinct prime factors, ascending.
fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn is_primitive_mod_p(g: u64, p: u64) -> bool {
    !g.is_multiple_of(p) && prime_factors(p - 1).iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1)
}

/// Smallest primitive root modulo `p^j` for an odd prime `p`.
///
/// Uses the classical lifting criterion: `g` generates `(Z/p^j)^*` iff it
/// generates `(Z/p)^*` and, for `j >= 2`, `g^(p-1) != 1 mod p^2`.
fn smallest_primitive_root(p: u64, j: u32) -> u64 {
    let p2 = p * p;
    (2..)
        .find(|&g| is_primitive_mod_p(g, p) && (j == 1 || pow_mod(g, p - 1, p2) != 1))
        .expect("odd prime powers have primitive roots")
}

/// Smallest `g` in `[2, m)` whose multiplicative order modulo `m = p^j` is `φ(m)`.
pub fn primitive_root_mod(m: u64) -> Result<u64> {
    let (p, j) = prime_power(m).ok_or_else(|| {
        Error::hypothesis("m = p^j", format!("{m} is not a prime power"))
    })?;
    if p == 2 {
        return Err(Error::hypothesis("p odd", format!("{m} is a power of 2")));
    }
    Ok(smallest_primitive_root(p, j))
}

/// Modular inverse of `x` modulo `m`.
pub fn inv_mod(x: u64, m: u64) -> Result<u64> {
    let (mut r0, mut r1) = (m as i128, (x % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return Err(Error::NonInvertible { value: x, modulus: m });
    }
    Ok(t0.rem_euclid(m as i128) as u64)
}

/// Exact binomial coefficient; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `binomial(n, k) mod m`.
pub fn binomial_mod(n: u64, k: u64, m: u64) -> u64 {
    (binomial(n, k) % m).to_u64().unwrap()
}

/// Reduces a signed integer into `[0, m)`.
pub fn reduce_signed(c: i128, m: u64) -> u64 {
    c.rem_euclid(m as i128) as u64
}

/// `-(1 + p + ... + p^n)` reduced modulo `m`.
pub fn neg_geometric_sum(p: u64, n: u32, m: u64) -> u64 {
    let mut s = 0u128;
    let mut pw = 1u128;
    for _ in 0..=n {
        s = (s + pw) % m as u128;
        pw = pw * p as u128 % m as u128;
    }
    (m as u128 - s) as u64 % m
}

/// Validated prime with a bound on the exponents in use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModulusCtx {
    p: u64,
    max_exponent: u32,
}

impl ModulusCtx {
    pub fn new(p: u64, max_exponent: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::hypothesis("p prime", format!("{p} is not prime")));
        }
        if p == 2 {
            return Err(Error::hypothesis("p odd", "p = 2"));
        }
        if max_exponent == 0 {
            return Err(Error::structural("max_exponent must be positive"));
        }
        Ok(Self { p, max_exponent })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn max_exponent(&self) -> u32 {
        self.max_exponent
    }

    /// `p^e` for `e <= max_exponent`.
    pub fn modulus(&self, e: u32) -> u64 {
        assert!(e <= self.max_exponent, "exponent {e} above context bound");
        ipow(self.p, e)
    }

    pub fn inverse(&self, x: u64, e: u32) -> Result<u64> {
        inv_mod(x, self.modulus(e))
    }
}

/// The unit `ξ = γ^(p^(p-1)) mod p^p` with `γ` the smallest primitive root mod `p^p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Xi {
    p: u64,
    gamma: u64,
    value: BigUint,
    modulus: BigUint,
}

/// Computes `ξ` for an odd prime `p`.
pub fn xi(p: u64) -> Result<Xi> {
    let ctx = ModulusCtx::new(p, 1)?;
    let p = ctx.prime();
    let modulus = BigUint::from(p).pow(p as u32);
    let gamma = smallest_primitive_root(p, p as u32);
    let exponent = BigUint::from(p).pow(p as u32 - 1);
    let value = BigUint::from(gamma).modpow(&exponent, &modulus);
    Ok(Xi {
        p,
        gamma,
        value,
        modulus,
    })
}

impl Xi {
    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn gamma(&self) -> u64 {
        self.gamma
    }

    /// The residue modulo `p^p`.
    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    /// `ξ mod m`, for `m` dividing `p^p`.
    pub fn value_mod(&self, m: u64) -> u64 {
        (&self.value % m).to_u64().unwrap()
    }

    /// `[ξ^0, ξ^1, ..., ξ^(p-1)] mod m`.
    pub fn powers_mod(&self, m: u64) -> Vec<u64> {
        let x = self.value_mod(m);
        let mut out = Vec::with_capacity(self.p as usize);
        let mut acc = 1 % m;
        for _ in 0..self.p {
            out.push(acc);
            acc = ((acc as u128 * x as u128) % m as u128) as u64;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_order(g: u64, m: u64) -> u64 {
        let mut x = g % m;
        let mut k = 1;
        while x != 1 {
            x = x * g % m;
            k += 1;
        }
        k
    }

    #[test]
    fn primitive_roots_small() {
        assert_eq!(primitive_root_mod(3).unwrap(), 2);
        assert_eq!(primitive_root_mod(27).unwrap(), 2);
        assert_eq!(primitive_root_mod(5).unwrap(), 2);
        assert_eq!(primitive_root_mod(7).unwrap(), 3);
    }

    #[test]
    fn primitive_root_is_smallest_by_brute_force() {
        for m in [3u64, 5, 7, 9, 11, 13, 25, 27, 49, 81, 121, 125, 343, 625, 3125] {
            let (p, j) = prime_power(m).unwrap();
            let phi = ipow(p, j - 1) * (p - 1);
            let expected = (2..m)
                .find(|&g| g % p != 0 && brute_order(g, m) == phi)
                .unwrap();
            let g = primitive_root_mod(m).unwrap();
            assert_eq!(g, expected, "m = {m}");
            assert_eq!(brute_order(g, m), phi);
        }
    }

    #[test]
    fn primitive_root_rejects_bad_moduli() {
        assert_eq!(
            primitive_root_mod(8).unwrap_err().hypothesis_name(),
            Some("p odd")
        );
        assert_eq!(
            primitive_root_mod(15).unwrap_err().hypothesis_name(),
            Some("m = p^j")
        );
        assert!(primitive_root_mod(1).is_err());
    }

    #[test]
    fn xi_for_three() {
        let x = xi(3).unwrap();
        assert_eq!(x.gamma(), 2);
        // 2^9 mod 27
        assert_eq!(x.value(), &BigUint::from(26u32));
        assert_eq!(x.value_mod(3), 2);
    }

    #[test]
    fn xi_for_five_matches_modpow() {
        let x = xi(5).unwrap();
        assert_eq!(x.gamma(), 2);
        assert_eq!(x.value_mod(3125), pow_mod(2, 625, 3125));
        assert_eq!(pow_mod(x.value_mod(3125), 4, 3125), 1);
    }

    #[test]
    fn xi_unit_properties() {
        for p in [3u64, 5, 7, 11] {
            let x = xi(p).unwrap();
            let one = BigUint::one();
            assert_eq!(x.value().modpow(&BigUint::from(p - 1), x.modulus()), one);
            let r = x.value_mod(p);
            for j in 1..p - 1 {
                assert_ne!(pow_mod(r, j, p), 1, "p={p} j={j}");
            }
        }
    }

    #[test]
    fn xi_rejects_two() {
        assert!(xi(2).is_err());
        assert!(xi(9).is_err());
    }

    #[test]
    fn inverses() {
        assert_eq!(inv_mod(2, 25).unwrap(), 13);
        assert_eq!(inv_mod(1, 125).unwrap(), 1);
        assert_eq!(inv_mod(2, 125).unwrap(), 63);
        assert!(matches!(inv_mod(5, 25), Err(Error::NonInvertible { .. })));
    }

    #[test]
    fn inverses_exhaustive() {
        for m in [3u64, 9, 27, 25, 125, 625, 3125, 49, 343] {
            let (p, _) = prime_power(m).unwrap();
            for x in (1..m).filter(|x| x % p != 0) {
                let y = inv_mod(x, m).unwrap();
                assert_eq!(x as u128 * y as u128 % m as u128, 1);
            }
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(9, 0), BigUint::one());
        assert_eq!(binomial(3, 7), BigUint::zero());
        // Pascal triangle oracle
        let mut row = vec![BigUint::one()];
        for n in 1..=25u64 {
            let mut next = vec![BigUint::one(); n as usize + 1];
            for k in 1..n as usize {
                next[k] = &row[k - 1] + &row[k];
            }
            row = next;
        }
        assert_eq!(row[3], BigUint::from(2300u32));
        for k in 0..=25 {
            assert_eq!(binomial(25, k), row[k as usize]);
        }
    }

    #[test]
    fn binomial_of_prime_power_divisible() {
        for p in [3u64, 5, 7] {
            for m in 1..=3 {
                let pm = ipow(p, m);
                for i in 1..p {
                    assert_eq!(binomial(pm, i) % pm, BigUint::zero());
                }
            }
        }
    }

    #[test]
    fn geometric_scalar() {
        // -(1+5+25+125) = -156 = -31 mod 125
        assert_eq!(neg_geometric_sum(5, 3, 125), 94);
        assert_eq!(reduce_signed(-31, 125), 94);
    }
}
