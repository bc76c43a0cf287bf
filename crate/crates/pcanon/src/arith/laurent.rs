use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// Element of `Z[v, v^-1]`, stored as degree -> nonzero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Laurent {
    terms: BTreeMap<i32, i64>,
}

impl Laurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `v`
    pub fn v() -> Self {
        Self::monomial(1, 1)
    }

    pub fn monomial(coeff: i64, deg: i32) -> Self {
        let mut l = Self::zero();
        l.add_term(deg, coeff);
        l
    }

    /// Builds a polynomial from `(degree, coefficient)` pairs, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = (i32, i64)>>(it: I) -> Self {
        let mut l = Self::zero();
        for (d, c) in it {
            l.add_term(d, c);
        }
        l
    }

    /// `v + v^-1`
    pub fn quantum_two() -> Self {
        Self::from_terms([(1, 1), (-1, 1)])
    }

    pub fn add_term(&mut self, deg: i32, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let e = self.terms.entry(deg).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.terms.remove(&deg);
        }
    }

    pub fn coeff(&self, deg: i32) -> i64 {
        self.terms.get(&deg).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(d, c)| (*d, *c))
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// `v -> v^-1`
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(d, c)| (-d, *c)).collect(),
        }
    }

    pub fn is_bar_invariant(&self) -> bool {
        self == &self.bar()
    }

    /// Multiply by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(d, c)| (d + k, *c)).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(d, c)| (*d, c * k)).collect(),
        }
    }

    /// Value at `v = 1`.
    pub fn eval_one(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Graded rank from a list of degrees of basis elements.
    pub fn graded_rank<I: IntoIterator<Item = i32>>(degrees: I) -> Self {
        Self::from_terms(degrees.into_iter().map(|d| (d, 1)))
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.terms.values().all(|c| *c > 0)
    }

    /// Compact text: `deg:coeff` pairs joined by commas, `0` for the zero polynomial.
    pub fn to_pairs(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(d, c)| format!("{d}:{c}"))
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse_pairs(s: &str) -> Option<Self> {
        let s = s.trim();
        if s == "0" {
            return Some(Self::zero());
        }
        let mut l = Self::zero();
        for part in s.split(',') {
            let (d, c) = part.split_once(':')?;
            l.add_term(d.trim().parse().ok()?, c.trim().parse().ok()?);
        }
        Some(l)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.terms.iter().rev() {
            let (sign, abs) = if *c < 0 { ("-", -c) } else { ("+", *c) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let var = match d {
                0 => String::new(),
                1 => "v".into(),
                _ => format!("v^{d}"),
            };
            match (abs, var.is_empty()) {
                (a, true) => write!(f, "{a}")?,
                (1, false) => write!(f, "{var}")?,
                (a, false) => write!(f, "{a}{var}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&Laurent> for Laurent {
    fn add_assign(&mut self, rhs: &Laurent) {
        for (d, c) in rhs.terms() {
            self.add_term(d, c);
        }
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl SubAssign<&Laurent> for Laurent {
    fn sub_assign(&mut self, rhs: &Laurent) {
        for (d, c) in rhs.terms() {
            self.add_term(d, -c);
        }
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        self.scale(-1)
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (d1, c1) in self.terms() {
            for (d2, c2) in rhs.terms() {
                out.add_term(d1 + d2, c1 * c2);
            }
        }
        out
    }
}
