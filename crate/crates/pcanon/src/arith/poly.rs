use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::fmt;

/// Maximum number of root variables.
pub const MAX_VARS: usize = 8;
const BITS: u32 = 16;
const MASK: u128 = 0xffff;

/// Exponent vector packed into a `u128`, variable 0 in the top bits so that
/// integer order is lexicographic order with variable 0 most significant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono(pub u128);

impl Mono {
    pub const ONE: Mono = Mono(0);

    fn shift(var: usize) -> u32 {
        BITS * (MAX_VARS - 1 - var) as u32
    }

    pub fn var(var: usize) -> Self {
        assert!(var < MAX_VARS, "too many variables");
        Mono(1u128 << Self::shift(var))
    }

    pub fn from_exps(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = 0u128;
        for (i, e) in exps.iter().enumerate() {
            assert!(*e < 0xffff, "exponent overflow");
            m |= (*e as u128) << Self::shift(i);
        }
        Mono(m)
    }

    pub fn exp(self, var: usize) -> u32 {
        ((self.0 >> Self::shift(var)) & MASK) as u32
    }

    pub fn exps(self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exp(i)).collect()
    }

    pub fn degree(self) -> u32 {
        (0..MAX_VARS).map(|i| self.exp(i)).sum()
    }

    pub fn mul(self, other: Mono) -> Mono {
        Mono(self.0 + other.0)
    }

    pub fn divides(self, other: Mono) -> bool {
        (0..MAX_VARS).all(|i| self.exp(i) <= other.exp(i))
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(self, other: Mono) -> Mono {
        Mono(other.0 - self.0)
    }
}

/// Multivariate polynomial over `Q`, terms sorted by ascending monomial.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: Vec<(Mono, BigRational)>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: vec![(Mono::ONE, c)],
        }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(rat(n))
    }

    pub fn var(i: usize) -> Self {
        Poly {
            terms: vec![(Mono::var(i), BigRational::one())],
        }
    }

    /// Linear form `sum_i coeffs[i] * x_i`.
    pub fn linear(coeffs: &[i64]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Mono::var(i), rat(*c))),
        )
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, BigRational)>>(it: I) -> Self {
        let mut terms: Vec<(Mono, BigRational)> = it.into_iter().collect();
        terms.sort_by_key(|a| a.0);
        let mut out: Vec<(Mono, BigRational)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { terms: out }
    }

    fn from_map(map: HashMap<Mono, BigRational>) -> Self {
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by_key(|a| a.0);
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Mono, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(m, c)] if *m == Mono::ONE => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_linear_form(&self) -> bool {
        !self.is_zero() && self.terms.iter().all(|(m, _)| m.degree() == 1)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn leading(&self) -> Option<&(Mono, BigRational)> {
        self.terms.last()
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, x)| (*m, -x)).collect(),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.add_scaled(other, &BigRational::one())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add_scaled(other, &-BigRational::one())
    }

    /// `self + c * other` by a sorted merge.
    pub fn add_scaled(&self, other: &Poly, c: &BigRational) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i >= a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, &b[j].1 * c));
                j += 1;
            } else {
                let s = &a[i].1 + &b[j].1 * c;
                if !s.is_zero() {
                    out.push((a[i].0, s));
                }
                i += 1;
                j += 1;
            }
        }
        Poly { terms: out }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        let mut map: HashMap<Mono, BigRational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let e = map.entry(m1.mul(*m2)).or_insert_with(BigRational::zero);
                *e += c1 * c2;
            }
        }
        Self::from_map(map)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Exact division by `g`; `None` when `g` does not divide `self`.
    pub fn div_exact(&self, g: &Poly) -> Option<Poly> {
        assert!(!g.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if let Some(c) = g.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let (gm, gc) = g.leading().unwrap().clone();
        let ginv = gc.recip();
        let mut r = self.clone();
        let mut q = Vec::new();
        while let Some((rm, rc)) = r.leading().cloned() {
            if !gm.divides(rm) {
                return None;
            }
            let tm = gm.quotient_of(rm);
            let tc = &rc * &ginv;
            let shifted = Poly {
                terms: g.terms.iter().map(|(m, c)| (m.mul(tm), c.clone())).collect(),
            };
            r = r.add_scaled(&shifted, &-tc.clone());
            q.push((tm, tc));
        }
        Some(Poly::from_terms(q))
    }

    /// Evaluate at a point.
    pub fn eval(&self, pt: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in pt.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Value with every variable set to 1.
    pub fn eval_ones(&self) -> BigRational {
        self.terms.iter().map(|(_, c)| c.clone()).sum()
    }

    /// Substitute variable `j` by the linear form `cols[j]` (integer coefficients).
    pub fn substitute_linear(&self, cols: &[Vec<i64>]) -> Poly {
        let forms: Vec<Poly> = cols.iter().map(|c| Poly::linear(c)).collect();
        let mut cache: HashMap<(usize, u32), Poly> = HashMap::new();
        let mut acc: HashMap<Mono, BigRational> = HashMap::new();
        for (m, c) in &self.terms {
            let mut term = Poly::constant(c.clone());
            for (j, form) in forms.iter().enumerate() {
                let e = m.exp(j);
                if e == 0 {
                    continue;
                }
                let p = cache.entry((j, e)).or_insert_with(|| form.pow(e)).clone();
                term = term.mul(&p);
            }
            for (tm, tc) in term.terms {
                *acc.entry(tm).or_insert_with(BigRational::zero) += tc;
            }
        }
        Self::from_map(acc)
    }

    /// Set the listed variables to zero.
    pub fn kill_vars(&self, vars: &[usize]) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| vars.iter().all(|v| m.exp(*v) == 0))
                .cloned()
                .collect(),
        }
    }

    /// Splits into `(c, f)` with `f` integer-primitive, leading coefficient positive, `self = c f`.
    pub fn primitive_part(&self) -> (BigRational, Poly) {
        assert!(!self.is_zero());
        let mut lcm_den = BigInt::one();
        for (_, c) in &self.terms {
            lcm_den = lcm_den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .terms
            .iter()
            .map(|(_, c)| (c * BigRational::from_integer(lcm_den.clone())).to_integer())
            .collect();
        let mut g = BigInt::zero();
        for i in &ints {
            g = g.gcd(i);
        }
        if self.terms.last().unwrap().1.is_negative() {
            g = -g;
        }
        let content = BigRational::new(g.clone(), lcm_den);
        let f = Poly {
            terms: self
                .terms
                .iter()
                .zip(ints)
                .map(|((m, _), i)| (*m, BigRational::from_integer(i / &g)))
                .collect(),
        };
        (content, f)
    }

    /// Largest coefficient bit size, for logging.
    pub fn max_coeff_bits(&self) -> u64 {
        self.terms
            .iter()
            .map(|(_, c)| c.numer().bits().max(c.denom().bits()))
            .max()
            .unwrap_or(0)
    }

    /// Coefficients of a linear form, `None` if not homogeneous linear.
    pub fn linear_coeffs(&self, nvars: usize) -> Option<Vec<BigRational>> {
        if !self.is_linear_form() {
            return None;
        }
        let mut out = vec![BigRational::zero(); nvars];
        for (m, c) in &self.terms {
            let v = (0..MAX_VARS).find(|i| m.exp(*i) == 1)?;
            if v >= nvars {
                return None;
            }
            out[v] = c.clone();
        }
        Some(out)
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.terms.cmp(&other.terms)
    }
}

impl Poly {
    /// Text form `coeff@e0.e1...` joined by `;`, `0` for zero.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(m, c)| {
                let exps: Vec<String> = m.exps(MAX_VARS).iter().map(|e| e.to_string()).collect();
                let mut trimmed = exps.as_slice();
                while let [rest @ .., last] = trimmed {
                    if last == "0" {
                        trimmed = rest;
                    } else {
                        break;
                    }
                }
                format!("{c}@{}", trimmed.join("."))
            })
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn from_text(s: &str) -> Option<Poly> {
        let s = s.trim();
        if s == "0" {
            return Some(Poly::zero());
        }
        let mut terms = Vec::new();
        for t in s.split(';') {
            let (c, e) = t.split_once('@')?;
            let c: BigRational = c.parse().ok()?;
            let exps: Vec<u32> = if e.is_empty() {
                vec![]
            } else {
                e.split('.').map(|x| x.parse().ok()).collect::<Option<_>>()?
            };
            if exps.len() > MAX_VARS {
                return None;
            }
            terms.push((Mono::from_exps(&exps), c));
        }
        Some(Poly::from_terms(terms))
    }
}

const VAR_NAMES: [&str; MAX_VARS] = ["a", "b", "c", "d", "e", "f", "g", "h"];

pub fn var_name(i: usize) -> &'static str {
    VAR_NAMES[i]
}

fn fmt_mono(m: Mono) -> String {
    let mut parts = Vec::new();
    for i in 0..MAX_VARS {
        match m.exp(i) {
            0 => {}
            1 => parts.push(var_name(i).to_string()),
            e => parts.push(format!("{}^{e}", var_name(i))),
        }
    }
    parts.join("*")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let ms = fmt_mono(*m);
            if ms.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{ms}")?;
            } else {
                write!(f, "{abs}*{ms}")?;
            }
        }
        Ok(())
    }
}
