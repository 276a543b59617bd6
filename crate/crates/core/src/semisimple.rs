//! Semisimple `ell'`-element classes as twist orbits of roots of unity.
//!
//! A nonzero element of the algebraic closure of `F_p` is encoded by the
//! reduced fraction `k/N` in `(Q/Z)_{p'}`: multiplication of elements is
//! addition of fractions and the twisted Frobenius `x -> x^{eps q}` is
//! multiplication of the numerator by `eps q` modulo `N`. No finite-field
//! arithmetic happens here.

use std::fmt;
use std::str::FromStr;

use crate::arith::{divisors, gcd, mult_order, residue, InstanceParams};
use crate::error::{Error, Result};

/// A root of unity `num/den` in lowest terms, `0 <= num < den`.
///
/// Ordered by denominator first, then numerator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootLabel {
    den: u64,
    num: u64,
}

impl RootLabel {
    pub const IDENTITY: RootLabel = RootLabel { den: 1, num: 0 };

    /// Reduces `num/den` modulo 1 to lowest terms.
    pub fn new(num: i64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Domain("zero denominator".into()));
        }
        Ok(Self::reduced(residue(num as i128, den), den))
    }

    fn reduced(num: u64, den: u64) -> Self {
        let num = num % den;
        let g = gcd(num, den);
        RootLabel {
            den: den / g,
            num: num / g,
        }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    /// Multiplicative order of the element.
    pub fn order(&self) -> u64 {
        self.den
    }

    pub fn is_identity(&self) -> bool {
        self.den == 1
    }

    /// `self^exp` for a signed exponent.
    pub fn pow(self, exp: i64) -> RootLabel {
        let m = residue(exp as i128, self.den);
        let num = (self.num as u128 * m as u128 % self.den as u128) as u64;
        Self::reduced(num, self.den)
    }
}

/// Group product, i.e. fraction addition modulo 1.
impl std::ops::Mul for RootLabel {
    type Output = RootLabel;

    fn mul(self, other: RootLabel) -> RootLabel {
        let den = self.den / gcd(self.den, other.den) * other.den;
        let num = (self.num as u128 * (den / self.den) as u128
            + other.num as u128 * (den / other.den) as u128)
            % den as u128;
        Self::reduced(num as u64, den)
    }
}

impl fmt::Display for RootLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for RootLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (k, n) = s
            .split_once('/')
            .ok_or_else(|| Error::Domain(format!("root label {s:?} is not of the form k/N")))?;
        let k: i64 = k
            .trim()
            .parse()
            .map_err(|_| Error::Domain(format!("bad numerator in {s:?}")))?;
        let n: u64 = n
            .trim()
            .parse()
            .map_err(|_| Error::Domain(format!("bad denominator in {s:?}")))?;
        RootLabel::new(k, n)
    }
}

/// `sigma -> sigma^{eps q}`.
pub fn twist(sigma: RootLabel, params: &InstanceParams) -> RootLabel {
    sigma.pow(params.twisted_q())
}

/// `sigma -> sigma^{(eps q)^d}`.
pub fn twist_pow(sigma: RootLabel, d: u32, params: &InstanceParams) -> RootLabel {
    (0..d).fold(sigma, |s, _| twist(s, params))
}

/// Degree of `sigma`: size of its twist orbit.
pub fn degree(sigma: RootLabel, params: &InstanceParams) -> u32 {
    mult_order(params.twisted_q(), sigma.den).expect("denominators are prime to p") as u32
}

/// A twist orbit `[sigma]`, identified by its minimal element.
///
/// Stored compactly as representative plus degree; the full element list is
/// recomputed on demand with [`FrobeniusOrbit::elements`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FrobeniusOrbit {
    rep: RootLabel,
    deg: u32,
}

impl FrobeniusOrbit {
    pub fn rep(&self) -> RootLabel {
        self.rep
    }

    pub fn deg(&self) -> u32 {
        self.deg
    }

    pub fn is_identity(&self) -> bool {
        self.rep.is_identity()
    }

    /// `rep, twist(rep), ..., twist^{deg-1}(rep)`.
    pub fn elements(&self, params: &InstanceParams) -> Vec<RootLabel> {
        let mut out = Vec::with_capacity(self.deg as usize);
        let mut s = self.rep;
        for _ in 0..self.deg {
            out.push(s);
            s = twist(s, params);
        }
        out
    }
}

impl fmt::Display for FrobeniusOrbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.rep)
    }
}

pub fn orbit_of(sigma: RootLabel, params: &InstanceParams) -> FrobeniusOrbit {
    let mut rep = sigma;
    let mut deg = 1;
    let mut s = twist(sigma, params);
    while s != sigma {
        rep = rep.min(s);
        deg += 1;
        s = twist(s, params);
    }
    FrobeniusOrbit { rep, deg }
}

/// Multiplication by a central element.
pub fn center_act(z: RootLabel, sigma: RootLabel) -> RootLabel {
    z * sigma
}

pub fn act_on_orbit(z: RootLabel, orb: FrobeniusOrbit, params: &InstanceParams) -> FrobeniusOrbit {
    if z.is_identity() {
        return orb;
    }
    orbit_of(center_act(z, orb.rep), params)
}

/// `[sigma]_(d)`: the iterates of `twist^d` starting at `sigma`.
pub fn suborbit(sigma: RootLabel, d: u32, params: &InstanceParams) -> Vec<RootLabel> {
    let mut out = vec![sigma];
    let mut s = twist_pow(sigma, d, params);
    while s != sigma {
        out.push(s);
        s = twist_pow(s, d, params);
    }
    out
}

/// Every twist orbit of `ell'`-elements with degree at most `n`, sorted by
/// representative.
pub fn enumerate_ellprime_orbits(params: &InstanceParams) -> Vec<FrobeniusOrbit> {
    let mut out = Vec::new();
    for d in 1..=params.n {
        let modulus = params.cyclotomic_modulus(d);
        for den in divisors(modulus) {
            if den % params.ell == 0 {
                continue;
            }
            let deg =
                mult_order(params.twisted_q(), den).expect("den divides (eps q)^d - 1") as u32;
            if deg != d {
                continue;
            }
            for num in 0..den {
                if gcd(num, den) != 1 {
                    continue;
                }
                let sigma = RootLabel { den, num };
                if is_orbit_minimum(sigma, deg, params) {
                    out.push(FrobeniusOrbit { rep: sigma, deg });
                }
            }
        }
    }
    out.sort();
    out
}

fn is_orbit_minimum(sigma: RootLabel, deg: u32, params: &InstanceParams) -> bool {
    let mut s = sigma;
    for _ in 1..deg {
        s = twist(s, params);
        if s < sigma {
            return false;
        }
    }
    true
}

/// The `ell'`-part of the center, a cyclic group of order `(q - eps)_{ell'}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterGroup {
    order: u64,
    elements: Vec<RootLabel>,
}

impl CenterGroup {
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Elements `k/order` for `k = 0..order`, reduced.
    pub fn elements(&self) -> &[RootLabel] {
        &self.elements
    }

    /// `1/order`, a generator.
    pub fn generator(&self) -> RootLabel {
        self.elements.get(1).copied().unwrap_or(RootLabel::IDENTITY)
    }

    pub fn contains(&self, z: RootLabel) -> bool {
        self.order.is_multiple_of(z.den)
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }
}

pub fn center_elements(params: &InstanceParams) -> CenterGroup {
    let order = crate::arith::ell_prime_part(params.center_order(), params.ell);
    let elements = (0..order).map(|k| RootLabel::reduced(k, order)).collect();
    CenterGroup { order, elements }
}
