//! Integer Laurent polynomials in a single variable `v`.
//!
//! This is the ground ring for every weight and coefficient in the crate.
//! Coefficients are arbitrary-precision integers, exponents are `i32`.
//! The quantum integer is balanced at `-v`:
//!
//! ```text
//! [n] = sum_{k=0}^{n-1} (-v)^(n-1-2k)
//! ```
//!
//! so `[2] = -v - v^-1` and `[3] = v^2 + 1 + v^-2`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Sparse Laurent polynomial over the integers, keyed by exponent.
///
/// The map never stores zero coefficients, so `terms.is_empty()`
/// is equivalent to being the zero polynomial.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Laurent {
    terms: BTreeMap<i32, BigInt>,
}

impl Laurent {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Laurent {
            terms: BTreeMap::new(),
        }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Laurent::monomial(0)
    }

    /// `v^e`.
    pub fn monomial(e: i32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(e, BigInt::one());
        Laurent { terms }
    }

    /// `(-v)^e`, the signed monomial that powers of the Cartan generators produce.
    pub fn neg_v_pow(e: i32) -> Self {
        let mut terms = BTreeMap::new();
        let c = if e.rem_euclid(2) == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        terms.insert(e, c);
        Laurent { terms }
    }

    /// Build from (exponent, coefficient) pairs; repeated exponents accumulate.
    pub fn from_pairs<I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (i32, BigInt)>,
    {
        let mut p = Laurent::zero();
        for (e, c) in pairs {
            p.add_term(e, &c);
        }
        p
    }

    /// Convenience constructor from small integer coefficients.
    pub fn from_small<I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (i32, i64)>,
    {
        Laurent::from_pairs(pairs.into_iter().map(|(e, c)| (e, BigInt::from(c))))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(0).is_one()
    }

    /// Coefficient of `v^e` (zero if absent).
    pub fn coeff(&self, e: i32) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Iterate `(exponent, coefficient)` in ascending exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (i32, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    fn add_term(&mut self, e: i32, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (e, c) in other.iter() {
            out.add_term(e, c);
        }
        out
    }

    pub fn add_assign(&mut self, other: &Laurent) {
        for (e, c) in other.iter() {
            self.add_term(e, c);
        }
    }

    pub fn neg(&self) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (e, c) in other.iter() {
            out.add_term(e, &(-c));
        }
        out
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (e1, c1) in self.iter() {
            for (e2, c2) in other.iter() {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }

    /// `self * v^e`.
    pub fn shifted(&self, e: i32) -> Laurent {
        Laurent {
            terms: self
                .terms
                .iter()
                .map(|(e0, c0)| (e0 + e, c0.clone()))
                .collect(),
        }
    }

    /// Multiply by the monomial `c * v^e` in place; the common DP step.
    pub fn mul_monomial(&mut self, e: i32, c: &BigInt) {
        if c.is_zero() {
            self.terms.clear();
            return;
        }
        self.terms = self.terms.iter().map(|(e0, c0)| (e0 + e, c0 * c)).collect();
    }

    pub fn scale(&self, c: &BigInt) -> Laurent {
        let mut out = self.clone();
        out.mul_monomial(0, c);
        out
    }

    /// Bar involution `v^k -> v^-k`, extended additively.
    pub fn bar(&self) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Quantum integer `[n]` for `n >= 0`, balanced at `-v`.
    pub fn quantum_int(n: u32) -> Laurent {
        let mut p = Laurent::zero();
        for k in 0..n {
            let e = n as i32 - 1 - 2 * k as i32;
            p.add_assign(&Laurent::neg_v_pow(e));
        }
        p
    }

    /// True when every exponent is strictly negative. Zero passes vacuously.
    pub fn is_negative_exponent(&self) -> bool {
        self.max_exp().map_or(true, |e| e < 0)
    }

    /// True when every coefficient is positive, i.e. the polynomial lies in
    /// `N[v, v^-1]`. Zero passes vacuously.
    pub fn is_natural(&self) -> bool {
        use num_traits::Signed as _;
        self.terms.values().all(|c| c.is_positive())
    }

    /// The terms with exponent `>= 0`.
    pub fn nonneg_part(&self) -> Laurent {
        Laurent {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| **e >= 0)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Bar-symmetrization used when correcting a basis element:
    /// maps `p` to `p_0 + sum_{k>0} p_k (v^k + v^-k)`.
    ///
    /// The result is bar-invariant and `p - sym_correction(p)` has only
    /// negative exponents.
    pub fn sym_correction(&self) -> Laurent {
        let mut out = Laurent::zero();
        for (e, c) in self.iter() {
            if e == 0 {
                out.add_term(0, c);
            } else if e > 0 {
                out.add_term(e, c);
                out.add_term(-e, c);
            }
        }
        out
    }

    /// Render as the exact `[[exponent, coefficient], ...]` pair list used by
    /// every report and cache format. Ascending exponents; zero is `[]`.
    pub fn to_pair_string(&self) -> String {
        let inner: Vec<String> = self.iter().map(|(e, c)| format!("[{},{}]", e, c)).collect();
        format!("[{}]", inner.join(","))
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.iter() {
            let (sign, mag) = if c.sign() == num_bigint::Sign::Minus {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            let show_coeff = !mag.is_one() || e == 0;
            if show_coeff {
                write!(f, "{}", mag)?;
            }
            if e != 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                if e == 1 {
                    write!(f, "v")?;
                } else {
                    write!(f, "v^{}", e)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// JSON form: `[[exponent, coefficient], ...]`, ascending exponents, zero = `[]`.
///
/// Coefficients pass through `i128`. They are counts of states weighted by
/// signs, far below that bound for any input this crate accepts, and the
/// conversion fails loudly rather than wrapping if that ever changes.
impl Serialize for Laurent {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let pairs: Result<Vec<(i32, i128)>, S::Error> = self
            .iter()
            .map(|(e, c)| {
                i128::try_from(c.clone())
                    .map(|c| (e, c))
                    .map_err(|_| serde::ser::Error::custom("coefficient exceeds i128"))
            })
            .collect();
        pairs?.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Laurent {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let pairs = Vec::<(i32, i128)>::deserialize(de)?;
        for w in pairs.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(D::Error::custom("exponents must be strictly ascending"));
            }
        }
        Ok(Laurent::from_pairs(
            pairs.into_iter().map(|(e, c)| (e, BigInt::from(c))),
        ))
    }
}
