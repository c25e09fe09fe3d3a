//! Tensor products of the two fundamental sl(3) representations and the
//! quantum-group action on them.
//!
//! A boundary is typed by a [`SignString`]: `+` for the vector representation
//! `V+`, `-` for its dual `V-`. Both are 3-dimensional with basis vectors
//! indexed by states `1, 0, -1`. A [`StateString`] picks one basis vector per
//! tensor factor, and a [`TensorVector`] is a finitely supported map from
//! state strings to Laurent coefficients.
//!
//! Everything here is sparse; no 3^n matrix is ever materialized.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::laurent::Laurent;

/// Which fundamental representation a tensor factor carries.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn from_char(c: char) -> Result<Sign, String> {
        match c {
            '+' => Ok(Sign::Plus),
            '-' => Ok(Sign::Minus),
            _ => Err(format!("invalid sign character {c:?}, expected '+' or '-'")),
        }
    }
}

/// Basis state of a single factor; always one of `-1, 0, 1`.
pub type State = i8;

/// Boundary type: one sign per tensor factor, left to right.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SignString(pub Vec<Sign>);

impl SignString {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Sign> + '_ {
        self.0.iter().copied()
    }

    /// Pointwise `+ <-> -`.
    pub fn flipped(&self) -> SignString {
        SignString(self.0.iter().map(|s| s.flip()).collect())
    }

    pub fn reversed(&self) -> SignString {
        let mut v = self.0.clone();
        v.reverse();
        SignString(v)
    }

    /// Cyclic rotation moving the first `k` signs to the end.
    pub fn rotated(&self, k: usize) -> SignString {
        let n = self.0.len();
        if n == 0 {
            return self.clone();
        }
        let k = k % n;
        let mut v = Vec::with_capacity(n);
        v.extend_from_slice(&self.0[k..]);
        v.extend_from_slice(&self.0[..k]);
        SignString(v)
    }
}

impl fmt::Display for SignString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for SignString {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .enumerate()
            .map(|(i, c)| Sign::from_char(c).map_err(|e| format!("position {}: {e}", i + 1)))
            .collect::<Result<_, _>>()
            .map(SignString)
    }
}

/// One basis state per factor. Ordering is lexicographic with the numeric
/// order `-1 < 0 < 1` on each position.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct StateString(pub Vec<State>);

impl StateString {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for StateString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in &self.0 {
            let c = match j {
                1 => '+',
                0 => '0',
                -1 => '-',
                _ => unreachable!("state out of range"),
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for StateString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for StateString {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .enumerate()
            .map(|(i, c)| match c {
                '+' => Ok(1),
                '0' => Ok(0),
                '-' => Ok(-1),
                _ => Err(format!(
                    "position {}: invalid state character {c:?}, expected '+', '0' or '-'",
                    i + 1
                )),
            })
            .collect::<Result<_, _>>()
            .map(StateString)
    }
}

/// Explicit name for the ordering used throughout: first differing position
/// decides, `-1 < 0 < 1`.
pub fn lex_compare(a: &StateString, b: &StateString) -> Ordering {
    a.cmp(b)
}

macro_rules! string_serde {
    ($ty:ty) => {
        impl Serialize for $ty {
            fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
                ser.collect_str(self)
            }
        }

        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
                let s = String::deserialize(de)?;
                s.parse().map_err(D::Error::custom)
            }
        }
    };
}

string_serde!(SignString);
string_serde!(StateString);

/// Weight of a basis vector written in the fundamental-weight coordinates
/// `(a, b)`; sums of these are the lattice walks behind dominance.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct WeightVec {
    pub a: i32,
    pub b: i32,
}

impl WeightVec {
    pub const ZERO: WeightVec = WeightVec { a: 0, b: 0 };

    pub fn add(self, other: WeightVec) -> WeightVec {
        WeightVec {
            a: self.a + other.a,
            b: self.b + other.b,
        }
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn is_dominant(self) -> bool {
        self.a >= 0 && self.b >= 0
    }
}

/// Weight of basis vector `j` of the factor typed `s`.
pub fn weight(s: Sign, j: State) -> WeightVec {
    let (a, b) = match (s, j) {
        (Sign::Plus, 1) => (1, 0),
        (Sign::Plus, 0) => (-1, 1),
        (Sign::Plus, -1) => (0, -1),
        (Sign::Minus, 1) => (0, 1),
        (Sign::Minus, 0) => (1, -1),
        (Sign::Minus, -1) => (-1, 0),
        _ => panic!("state out of range: {j}"),
    };
    WeightVec { a, b }
}

/// Generators of the quantum group in its standard presentation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum UqGen {
    E1,
    E2,
    F1,
    F2,
    K1,
    K2,
}

/// Simple-root component (`i = 1` or `2`) of the weight; the exponent the
/// Cartan element `K_i` contributes on this factor.
fn root_exp(i: u8, s: Sign, j: State) -> i32 {
    let w = weight(s, j);
    match i {
        1 => w.a,
        2 => w.b,
        _ => unreachable!(),
    }
}

/// Action of `E_i` or `F_i` on a single factor: `Some(new_state)` when the
/// generator moves basis vector `j` of the factor typed `s`, with
/// coefficient 1.
fn single_step(g: UqGen, s: Sign, j: State) -> Option<State> {
    match (g, s, j) {
        (UqGen::E1, Sign::Plus, 0) => Some(1),
        (UqGen::E2, Sign::Plus, -1) => Some(0),
        (UqGen::F1, Sign::Plus, 1) => Some(0),
        (UqGen::F2, Sign::Plus, 0) => Some(-1),
        (UqGen::E1, Sign::Minus, -1) => Some(0),
        (UqGen::E2, Sign::Minus, 0) => Some(1),
        (UqGen::F1, Sign::Minus, 0) => Some(-1),
        (UqGen::F2, Sign::Minus, 1) => Some(0),
        _ => None,
    }
}

/// Finitely supported vector in the tensor product typed by a sign string.
#[derive(Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct TensorVector {
    pub n: usize,
    pub entries: BTreeMap<StateString, Laurent>,
}

impl TensorVector {
    pub fn zero(n: usize) -> Self {
        TensorVector {
            n,
            entries: BTreeMap::new(),
        }
    }

    /// Add `c * e_J` into the vector, dropping the entry if it cancels.
    pub fn add_term(&mut self, j: StateString, c: &Laurent) {
        use std::collections::btree_map::Entry;
        assert_eq!(j.len(), self.n, "state string length mismatch");
        if c.is_zero() {
            return;
        }
        match self.entries.entry(j) {
            Entry::Occupied(mut o) => {
                o.get_mut().add_assign(c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
        }
    }

    pub fn coeff(&self, j: &StateString) -> Laurent {
        self.entries.get(j).cloned().unwrap_or_else(Laurent::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&self, other: &TensorVector) -> TensorVector {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (j, c) in &other.entries {
            out.add_term(j.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &TensorVector) -> TensorVector {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (j, c) in &other.entries {
            out.add_term(j.clone(), &c.neg());
        }
        out
    }

    pub fn scale(&self, c: &Laurent) -> TensorVector {
        let mut out = TensorVector::zero(self.n);
        for (j, v) in &self.entries {
            out.add_term(j.clone(), &v.mul(c));
        }
        out
    }
}

impl fmt::Debug for TensorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in &self.entries {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})e[{j}]")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Apply one generator through the iterated coproduct.
///
/// `E_i` acts at factor `k` with prefactor `(-v)^(-sum_{l<k} m_i)`,
/// `F_i` at factor `k` with prefactor `(-v)^(+sum_{l>k} m_i)`, and `K_i`
/// scales each basis vector by `(-v)^(sum_l m_i)`, where `m_i` is the
/// simple-root component of the factor weights.
pub fn act(signs: &SignString, x: &TensorVector, g: UqGen) -> TensorVector {
    assert_eq!(signs.len(), x.n, "sign string length mismatch");
    let mut out = TensorVector::zero(x.n);
    for (j, c) in &x.entries {
        match g {
            UqGen::K1 | UqGen::K2 => {
                let i = if g == UqGen::K1 { 1 } else { 2 };
                let total: i32 = signs
                    .iter()
                    .zip(&j.0)
                    .map(|(s, &jk)| root_exp(i, s, jk))
                    .sum();
                out.add_term(j.clone(), &c.mul(&Laurent::neg_v_pow(total)));
            }
            UqGen::E1 | UqGen::E2 | UqGen::F1 | UqGen::F2 => {
                let i = match g {
                    UqGen::E1 | UqGen::F1 => 1,
                    _ => 2,
                };
                for k in 0..x.n {
                    let s = signs.0[k];
                    let Some(jk_new) = single_step(g, s, j.0[k]) else {
                        continue;
                    };
                    let exp: i32 = match g {
                        UqGen::E1 | UqGen::E2 => {
                            -(0..k).map(|l| root_exp(i, signs.0[l], j.0[l])).sum::<i32>()
                        }
                        _ => (k + 1..x.n)
                            .map(|l| root_exp(i, signs.0[l], j.0[l]))
                            .sum::<i32>(),
                    };
                    let mut jn = j.clone();
                    jn.0[k] = jk_new;
                    out.add_term(jn, &c.mul(&Laurent::neg_v_pow(exp)));
                }
            }
        }
    }
    out
}

/// True when `x` is killed by all four raising/lowering generators and fixed
/// by both Cartan elements.
pub fn is_invariant(signs: &SignString, x: &TensorVector) -> bool {
    use UqGen::*;
    [E1, E2, F1, F2].iter().all(|&g| act(signs, x, g).is_zero())
        && [K1, K2].iter().all(|&g| act(signs, x, g) == *x)
}
