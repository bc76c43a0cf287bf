use super::ratfunc::RatFunc;
use super::ArithError;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// The p-modular system `(Z_(p), Q, F_p)`; `p = 0` means characteristic zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PModular {
    p: u64,
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl PModular {
    pub fn new(p: u64) -> Result<Self, ArithError> {
        if p == 0 || is_prime(p) {
            Ok(PModular { p })
        } else {
            Err(ArithError::NotPrime(p))
        }
    }

    pub fn zero_char() -> Self {
        PModular { p: 0 }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn valuation(&self, n: &BigInt) -> Option<u32> {
        if self.p == 0 || n.is_zero() {
            return None;
        }
        let p = BigInt::from(self.p);
        let mut n = n.clone();
        let mut v = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            v += 1;
        }
        Some(v)
    }

    /// True when `q` lies in `Z_(p)`.
    pub fn is_integral(&self, q: &BigRational) -> bool {
        self.p == 0 || !(q.denom() % BigInt::from(self.p)).is_zero()
    }

    /// True when `q` is a unit of `Z_(p)` (for `p = 0`: nonzero).
    pub fn is_unit(&self, q: &BigRational) -> bool {
        if q.is_zero() {
            return false;
        }
        if self.p == 0 {
            return true;
        }
        let p = BigInt::from(self.p);
        !(q.numer() % &p).is_zero() && !(q.denom() % &p).is_zero()
    }

    /// Constant value of `f` and whether it is a unit in `O`.
    pub fn o_scalar(&self, f: &RatFunc) -> Result<(BigRational, bool), ArithError> {
        let c = f
            .as_constant()
            .ok_or_else(|| ArithError::NotConstant(f.to_string()))?;
        if !self.is_integral(&c) {
            return Err(ArithError::NotIntegral(c.to_string()));
        }
        let u = self.is_unit(&c);
        Ok((c, u))
    }

    /// Image of an element of `Z_(p)` in `F_p`.
    pub fn reduce(&self, q: &BigRational) -> Result<u64, ArithError> {
        assert!(self.p > 0);
        if !self.is_integral(q) {
            return Err(ArithError::NotIntegral(q.to_string()));
        }
        let p = BigInt::from(self.p);
        let n = q.numer().mod_floor(&p).to_u64().unwrap();
        let d = q.denom().mod_floor(&p).to_u64().unwrap();
        Ok(n * inv_mod(d, self.p) % self.p)
    }

    /// Rank of a matrix with entries in `Z_(p)` after reduction to the residue field
    /// (`Q` when `p = 0`).
    pub fn rank(&self, rows: &[Vec<BigRational>]) -> Result<usize, ArithError> {
        if self.p == 0 {
            return Ok(rank_q(rows));
        }
        let mut m: Vec<Vec<u64>> = rows
            .iter()
            .map(|r| r.iter().map(|x| self.reduce(x)).collect::<Result<_, _>>())
            .collect::<Result<_, _>>()?;
        Ok(rank_fp(&mut m, self.p))
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut e, mut base, mut acc) = (p - 2, a % p, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

fn rank_fp(m: &mut [Vec<u64>], p: u64) -> usize {
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|r| m[*r][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = inv_mod(m[rank][c], p);
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let f = (m[r][c] as u128 * inv as u128 % p as u128) as u64;
                for k in c..ncols {
                    let sub = (f as u128 * m[rank][k] as u128 % p as u128) as u64;
                    m[r][k] = (m[r][k] + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over `Q`.
pub fn rank_q(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|r| !m[*r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = m[rank][c].recip();
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] * &inv;
                for k in c..ncols {
                    let sub = &f * &m[rank][k];
                    m[r][k] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// True when `q` is an integer.
pub fn is_integer(q: &BigRational) -> bool {
    q.denom().is_one()
}

/// Absolute value helper used in size logging.
pub fn bits(q: &BigRational) -> u64 {
    q.numer().abs().bits().max(q.denom().bits())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn unit_checks() {
        let p2 = PModular::new(2).unwrap();
        assert!(p2.is_unit(&q(3, 5)));
        assert!(!p2.is_unit(&q(2, 1)));
        let one = RatFunc::linear(&[1, 0]).div(&RatFunc::linear(&[1, 0])).unwrap();
        let (c, u) = p2.o_scalar(&one).unwrap();
        assert_eq!(c, q(1, 1));
        assert!(u);
        assert!(matches!(
            p2.o_scalar(&RatFunc::linear(&[1, 0])),
            Err(ArithError::NotConstant(_))
        ));
        assert!(PModular::new(4).is_err());
    }

    #[test]
    fn ranks() {
        let m = vec![vec![q(2, 1), q(0, 1)], vec![q(0, 1), q(3, 1)]];
        assert_eq!(PModular::new(2).unwrap().rank(&m).unwrap(), 1);
        assert_eq!(PModular::new(3).unwrap().rank(&m).unwrap(), 1);
        assert_eq!(PModular::new(5).unwrap().rank(&m).unwrap(), 2);
        assert_eq!(PModular::zero_char().rank(&m).unwrap(), 2);
        let n = vec![vec![q(1, 3), q(2, 3)], vec![q(1, 1), q(2, 1)]];
        assert_eq!(PModular::new(5).unwrap().rank(&n).unwrap(), 1);
        assert_eq!(PModular::new(7).unwrap().reduce(&q(1, 3)).unwrap(), 5);
    }
}
