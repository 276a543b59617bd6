//! Exact integer utilities: multiplicative orders, valuations and the
//! derived orders `e`, `e0` and `e_gamma` of an instance.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest value accepted for `p` and `ell`.
pub const PRIME_BOUND: u64 = 1000;

/// `q^n` must stay below this bound.
pub const GUARD: u128 = 1 << 62;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Primality by trial division, for `x <= PRIME_BOUND` only.
pub fn is_small_prime(x: u64) -> bool {
    (2..=PRIME_BOUND).contains(&x)
        && (2..)
            .take_while(|d| d * d <= x)
            .all(|d| !x.is_multiple_of(d))
}

/// Reduces a signed integer into `[0, m)`.
pub fn residue(b: i128, m: u64) -> u64 {
    b.rem_euclid(m as i128) as u64
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Smallest `t >= 1` with `b^t = 1 (mod m)`.
pub fn mult_order(b: i64, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::Domain("modulus must be positive".into()));
    }
    if m == 1 {
        return Ok(1);
    }
    let b = residue(b as i128, m);
    if gcd(b, m) != 1 {
        return Err(Error::Domain(format!("{b} is not a unit modulo {m}")));
    }
    let mut acc = b;
    let mut t = 1;
    while acc != 1 {
        acc = mul_mod(acc, b, m);
        t += 1;
    }
    Ok(t)
}

/// Order of `q` modulo `ell` for odd `ell`, modulo 4 for `ell = 2`.
pub fn e0_of(q: u64, ell: u64) -> Result<u64> {
    let modulus = if ell == 2 { 4 } else { ell };
    if q.is_multiple_of(ell) {
        return Err(Error::Domain(format!("ell = {ell} divides q = {q}")));
    }
    mult_order(q as i64, modulus)
}

/// Splits `x = ell^v * a * b` into `(v, ell^v, b)` with `gcd(ell, b) = 1`.
pub fn ell_valuation_and_parts(x: u64, ell: u64) -> (u32, u64, u64) {
    assert!(x >= 1 && ell >= 2);
    let mut v = 0;
    let mut rest = x;
    let mut part = 1;
    while rest.is_multiple_of(ell) {
        rest /= ell;
        part *= ell;
        v += 1;
    }
    (v, part, rest)
}

pub fn ell_part(x: u64, ell: u64) -> u64 {
    ell_valuation_and_parts(x, ell).1
}

pub fn ell_prime_part(x: u64, ell: u64) -> u64 {
    ell_valuation_and_parts(x, ell).2
}

/// Writes `q = p^f` for a prime `p`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut f = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        f += 1;
    }
    (rest == 1).then_some((p, f))
}

/// Divisors of `x` in ascending order, by trial division.
pub fn divisors(x: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= x {
        if x.is_multiple_of(d) {
            small.push(d);
            if d * d != x {
                large.push(x / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Sign `eps` of the twisted Frobenius: `+1` for linear, `-1` for unitary groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "-1")]
    Minus,
    #[serde(rename = "+1")]
    Plus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// Parameters of `GL_n(eps q)` together with the characteristic `ell`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InstanceParams {
    pub n: u32,
    pub q: u64,
    pub eps: Sign,
    pub ell: u64,
    pub p: u64,
    pub f: u32,
    /// Multiplicative order of `eps q` modulo `ell`.
    pub e: u64,
}

impl InstanceParams {
    pub fn new(n: u32, q: u64, eps: Sign, ell: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Config("n must be positive".into()));
        }
        let (p, f) =
            prime_power(q).ok_or_else(|| Error::Config(format!("q = {q} is not a prime power")))?;
        if !is_small_prime(p) {
            return Err(Error::Config(format!(
                "characteristic {p} is not a prime up to {PRIME_BOUND}"
            )));
        }
        if !is_small_prime(ell) {
            return Err(Error::Config(format!(
                "ell = {ell} is not a supported prime"
            )));
        }
        if ell == p {
            return Err(Error::Config(format!(
                "ell = {ell} equals the defining characteristic"
            )));
        }
        if (q as u128).checked_pow(n).is_none_or(|v| v >= GUARD) {
            return Err(Error::Overflow(format!("q^n = {q}^{n} exceeds 2^62")));
        }
        let e = mult_order(eps.value() * q as i64, ell)?;
        Ok(InstanceParams {
            n,
            q,
            eps,
            ell,
            p,
            f,
            e,
        })
    }

    /// `eps * q` as a signed integer.
    pub fn twisted_q(&self) -> i64 {
        self.eps.value() * self.q as i64
    }

    /// `|(eps q)^d - 1|`; the elements of degree dividing `d` are exactly the
    /// roots of unity of this order.
    pub fn cyclotomic_modulus(&self, d: u32) -> u64 {
        let qd = self.q.pow(d);
        if self.eps == Sign::Minus && d % 2 == 1 {
            qd + 1
        } else {
            qd - 1
        }
    }

    /// `q - eps`, the order of the center of `GL_n(eps q)`.
    pub fn center_order(&self) -> u64 {
        match self.eps {
            Sign::Plus => self.q - 1,
            Sign::Minus => self.q + 1,
        }
    }

    /// `gcd(n, q - eps)`, the order of the center of `SL_n(eps q)`.
    pub fn sl_center_order(&self) -> u64 {
        gcd(self.n as u64, self.center_order())
    }

    /// Whether `ell` divides `gcd(n, q - eps)`.
    pub fn ell_divides_sl_center(&self) -> bool {
        self.sl_center_order().is_multiple_of(self.ell)
    }

    pub fn e0(&self) -> u64 {
        e0_of(self.q, self.ell).expect("validated at construction")
    }
}

/// Multiplicative order of `(eps q)^d` modulo `ell`, by direct computation.
pub fn e_gamma(d: u32, params: &InstanceParams) -> u64 {
    let ell = params.ell;
    let base = residue(params.twisted_q() as i128, ell);
    let mut pow = 1u64;
    for _ in 0..d {
        pow = mul_mod(pow, base, ell);
    }
    mult_order(pow as i64, ell).expect("eps q is a unit mod ell")
}
