use super::poly::{Poly, MAX_VARS};
use super::ArithError;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// Rational function `num / prod f_i^{e_i}` over `Q`.
///
/// Denominator factors are integer-primitive with positive leading coefficient.
/// They are linear forms (roots, or roots with parabolic variables killed) except
/// where a general division was requested by echelon computations.
/// No denominator factor divides the numerator.
#[derive(Clone, Debug, Default)]
pub struct RatFunc {
    num: Poly,
    den: Vec<(Poly, u32)>,
}

fn merge_den(a: &[(Poly, u32)], b: &[(Poly, u32)]) -> Vec<(Poly, u32)> {
    let mut out: Vec<(Poly, u32)> = a.to_vec();
    for (f, e) in b {
        match out.iter_mut().find(|(g, _)| g == f) {
            Some((_, k)) => *k += e,
            None => out.push((f.clone(), *e)),
        }
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

fn expand(den: &[(Poly, u32)]) -> Poly {
    let mut p = Poly::one();
    for (f, e) in den {
        p = p.mul(&f.pow(*e));
    }
    p
}

/// Divide `num` by as many copies of the factors in `den` as possible.
fn cancel_into(num: &mut Poly, den: &mut Vec<(Poly, u32)>) {
    if num.is_zero() {
        den.clear();
        return;
    }
    for (f, e) in den.iter_mut() {
        while *e > 0 {
            match num.div_exact(f) {
                Some(q) => {
                    *num = q;
                    *e -= 1;
                }
                None => break,
            }
        }
    }
    den.retain(|(_, e)| *e > 0);
}

impl RatFunc {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn from_poly(num: Poly) -> Self {
        RatFunc { num, den: vec![] }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(Poly::from_int(n))
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    /// Linear form with the given integer coordinates (e.g. a root).
    pub fn linear(coords: &[i64]) -> Self {
        Self::from_poly(Poly::linear(coords))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &[(Poly, u32)] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num == Poly::one()
    }

    /// True when every denominator factor is a linear form.
    pub fn has_linear_den(&self) -> bool {
        self.den.iter().all(|(f, _)| f.is_linear_form())
    }

    /// `Some(c)` when the function is the constant `c`.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.den.is_empty() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let mut num = self.num.add(&other.num);
            let mut den = self.den.clone();
            cancel_into(&mut num, &mut den);
            return RatFunc { num, den };
        }
        let mut den: Vec<(Poly, u32)> = self.den.clone();
        for (f, e) in &other.den {
            match den.iter_mut().find(|(g, _)| g == f) {
                Some((_, k)) => *k = (*k).max(*e),
                None => den.push((f.clone(), *e)),
            }
        }
        den.sort_by(|x, y| x.0.cmp(&y.0));
        let lift = |x: &RatFunc| -> Poly {
            let mut p = x.num.clone();
            for (f, e) in &den {
                let have = x.den.iter().find(|(g, _)| g == f).map_or(0, |(_, k)| *k);
                if *e > have {
                    p = p.mul(&f.pow(e - have));
                }
            }
            p
        };
        let mut num = lift(self).add(&lift(other));
        cancel_into(&mut num, &mut den);
        RatFunc { num, den }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_empty() && other.den.is_empty() {
            return Self::from_poly(self.num.mul(&other.num));
        }
        let mut na = self.num.clone();
        let mut db = other.den.clone();
        cancel_into(&mut na, &mut db);
        let mut nb = other.num.clone();
        let mut da = self.den.clone();
        cancel_into(&mut nb, &mut da);
        RatFunc {
            num: na.mul(&nb),
            den: merge_den(&da, &db),
        }
    }

    /// Inverse of a nonzero function. Nonlinear numerators become general factors.
    pub fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let (c, f) = self.num.primitive_part();
        let num = expand(&self.den).scale(&c.recip());
        if f == Poly::one() {
            return Ok(Self::from_poly(num));
        }
        Ok(RatFunc {
            num,
            den: vec![(f, 1)],
        })
    }

    /// Inverse restricted to constants and single linear factors.
    pub fn inv_root_factor(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let ok = self.num.as_constant().is_some() || self.num.is_linear_form();
        if !ok {
            return Err(ArithError::DivisionByNonRoot(self.to_string()));
        }
        self.inv()
    }

    pub fn div(&self, other: &Self) -> Result<Self, ArithError> {
        Ok(self.mul(&other.inv()?))
    }

    /// Substitute variable `j` by the linear form `cols[j]`.
    pub fn twist(&self, cols: &[Vec<i64>]) -> Self {
        let mut num = self.num.substitute_linear(cols);
        let mut den = Vec::with_capacity(self.den.len());
        for (f, e) in &self.den {
            let g = f.substitute_linear(cols);
            let (c, p) = g.primitive_part();
            num = num.scale(&num_traits::pow(c.recip(), *e as usize));
            den.push((p, *e));
        }
        let den = merge_den(&[], &den);
        RatFunc { num, den }
    }

    /// Set the listed variables to zero. Fails if a denominator factor vanishes.
    pub fn kill_vars(&self, vars: &[usize]) -> Result<Self, ArithError> {
        let mut num = self.num.kill_vars(vars);
        let mut den = Vec::with_capacity(self.den.len());
        for (f, e) in &self.den {
            let g = f.kill_vars(vars);
            if g.is_zero() {
                return Err(ArithError::NotInRI(f.to_string()));
            }
            let (c, p) = g.primitive_part();
            num = num.scale(&num_traits::pow(c.recip(), *e as usize));
            den.push((p, *e));
        }
        let mut den = merge_den(&[], &den);
        cancel_into(&mut num, &mut den);
        Ok(RatFunc { num, den })
    }

    pub fn eval(&self, pt: &[BigRational]) -> Result<BigRational, ArithError> {
        let mut d = BigRational::one();
        for (f, e) in &self.den {
            d *= num_traits::pow(f.eval(pt), *e as usize);
        }
        if d.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(self.num.eval(pt) / d)
    }

    /// Value with every variable set to 1.
    pub fn eval_ones(&self) -> Result<BigRational, ArithError> {
        let mut d = BigRational::one();
        for (f, e) in &self.den {
            d *= num_traits::pow(f.eval_ones(), *e as usize);
        }
        if d.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(self.num.eval_ones() / d)
    }

    /// Largest coefficient bit size, for logging.
    pub fn max_coeff_bits(&self) -> u64 {
        self.num.max_coeff_bits()
    }

    pub fn to_text(&self) -> String {
        let mut s = self.num.to_text();
        for (f, e) in &self.den {
            s.push_str(&format!("|{}^{e}", f.to_text()));
        }
        s
    }

    pub fn from_text(s: &str) -> Option<Self> {
        let mut parts = s.split('|');
        let num = Poly::from_text(parts.next()?)?;
        let mut den = Vec::new();
        for p in parts {
            let (f, e) = p.rsplit_once('^')?;
            den.push((Poly::from_text(f)?, e.parse().ok()?));
        }
        Some(RatFunc { num, den })
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        if self.has_linear_den() && other.has_linear_den() {
            return false;
        }
        self.sub(other).is_zero()
    }
}

impl Eq for RatFunc {}

impl From<i64> for RatFunc {
    fn from(n: i64) -> Self {
        RatFunc::from_int(n)
    }
}

impl From<BigInt> for RatFunc {
    fn from(n: BigInt) -> Self {
        RatFunc::constant(BigRational::from_integer(n))
    }
}

fn fmt_factor(f: &Poly) -> String {
    match f.linear_coeffs(MAX_VARS) {
        Some(cs) => {
            let n = cs.iter().rposition(|c| !c.is_zero()).map_or(0, |i| i + 1);
            let coords: Vec<String> = cs[..n].iter().map(|c| c.to_string()).collect();
            format!("[{}]", coords.join(","))
        }
        None => format!("({f})"),
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        let den: Vec<String> = self
            .den
            .iter()
            .map(|(p, e)| {
                if *e == 1 {
                    fmt_factor(p)
                } else {
                    format!("{}^{e}", fmt_factor(p))
                }
            })
            .collect();
        write!(f, "({}) / ({})", self.num, den.join(" * "))
    }
}

impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_text())
    }
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        RatFunc::from_text(&s).ok_or_else(|| serde::de::Error::custom("bad rational function"))
    }
}
