use super::CoxeterError;
use serde::{Deserialize, Serialize};

/// Generalised Cartan matrix, `a[s][t] = <alpha_s^vee, alpha_t>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Gcm {
    a: Vec<Vec<i64>>,
}

impl Gcm {
    pub fn new(a: Vec<Vec<i64>>) -> Result<Self, CoxeterError> {
        let n = a.len();
        if n == 0 || n > crate::arith::MAX_VARS {
            return Err(CoxeterError::InvalidGcm(format!("unsupported rank {n}")));
        }
        for (s, row) in a.iter().enumerate() {
            if row.len() != n {
                return Err(CoxeterError::InvalidGcm("matrix is not square".into()));
            }
            if row[s] != 2 {
                return Err(CoxeterError::InvalidGcm(format!("a[{s}][{s}] = {} != 2", row[s])));
            }
            for (t, &x) in row.iter().enumerate() {
                if s == t {
                    continue;
                }
                if x > 0 {
                    return Err(CoxeterError::InvalidGcm(format!("a[{s}][{t}] = {x} > 0")));
                }
                if (x == 0) != (a[t][s] == 0) {
                    return Err(CoxeterError::InvalidGcm(format!(
                        "a[{s}][{t}] and a[{t}][{s}] disagree on vanishing"
                    )));
                }
            }
        }
        Ok(Gcm { a })
    }

    /// Named presets: `A1`..`A8`, `B2`..`B8`, `C2`..`C8`, `D4`..`D8`, `G2`, `F4`, `A~1`, `A~2`, `A~3`.
    pub fn preset(name: &str) -> Result<Self, CoxeterError> {
        let bad = || CoxeterError::UnknownPreset(name.to_string());
        let name = name.trim();
        if let Some(rest) = name.strip_prefix("A~") {
            let n: usize = rest.parse().map_err(|_| bad())?;
            return match n {
                1 => Gcm::new(vec![vec![2, -2], vec![-2, 2]]),
                2..=7 => {
                    let k = n + 1;
                    let mut a = vec![vec![0; k]; k];
                    for i in 0..k {
                        a[i][i] = 2;
                        a[i][(i + 1) % k] = -1;
                        a[(i + 1) % k][i] = -1;
                    }
                    Gcm::new(a)
                }
                _ => Err(bad()),
            };
        }
        if name == "G2" {
            return Gcm::new(vec![vec![2, -1], vec![-3, 2]]);
        }
        if name == "F4" {
            return Gcm::new(vec![
                vec![2, -1, 0, 0],
                vec![-1, 2, -1, 0],
                vec![0, -2, 2, -1],
                vec![0, 0, -1, 2],
            ]);
        }
        let (kind, rest) = name.split_at(1);
        let n: usize = rest.parse().map_err(|_| bad())?;
        if n == 0 || n > crate::arith::MAX_VARS {
            return Err(bad());
        }
        let mut a = vec![vec![0; n]; n];
        for i in 0..n {
            a[i][i] = 2;
            if i + 1 < n {
                a[i][i + 1] = -1;
                a[i + 1][i] = -1;
            }
        }
        match kind {
            "A" => {}
            "B" if n >= 2 => a[n - 1][n - 2] = -2,
            "C" if n >= 2 => a[n - 2][n - 1] = -2,
            "D" if n >= 4 => {
                a[n - 1][n - 2] = 0;
                a[n - 2][n - 1] = 0;
                a[n - 1][n - 3] = -1;
                a[n - 3][n - 1] = -1;
            }
            _ => return Err(bad()),
        }
        Gcm::new(a)
    }

    /// Plain-text matrix, one row per line, whitespace or comma separated.
    pub fn parse(text: &str) -> Result<Self, CoxeterError> {
        let rows: Result<Vec<Vec<i64>>, _> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| {
                l.split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|x| !x.is_empty())
                    .map(|x| x.parse::<i64>())
                    .collect()
            })
            .collect();
        Gcm::new(rows.map_err(|e| CoxeterError::InvalidGcm(e.to_string()))?)
    }

    /// Preset name or path to a matrix file.
    pub fn from_spec(spec: &str) -> Result<Self, CoxeterError> {
        match Gcm::preset(spec) {
            Ok(g) => Ok(g),
            Err(e) => match std::fs::read_to_string(spec) {
                Ok(text) => Gcm::parse(&text),
                Err(_) => Err(e),
            },
        }
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    pub fn entry(&self, s: usize, t: usize) -> i64 {
        self.a[s][t]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn transpose(&self) -> Gcm {
        let n = self.rank();
        Gcm {
            a: (0..n).map(|i| (0..n).map(|j| self.a[j][i]).collect()).collect(),
        }
    }

    /// Coxeter exponent `m_st`, `None` for infinity.
    pub fn m(&self, s: usize, t: usize) -> Option<u32> {
        if s == t {
            return Some(1);
        }
        match self.a[s][t] * self.a[t][s] {
            0 => Some(2),
            1 => Some(3),
            2 => Some(4),
            3 => Some(6),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coxeter_exponents() {
        assert_eq!(Gcm::preset("A2").unwrap().m(0, 1), Some(3));
        assert_eq!(Gcm::new(vec![vec![2, -2], vec![-1, 2]]).unwrap().m(0, 1), Some(4));
        assert_eq!(Gcm::preset("G2").unwrap().m(0, 1), Some(6));
        assert_eq!(Gcm::preset("A~1").unwrap().m(0, 1), None);
        assert_eq!(Gcm::preset("A3").unwrap().m(0, 2), Some(2));
    }

    #[test]
    fn invalid_matrices() {
        assert!(matches!(
            Gcm::new(vec![vec![3, -1], vec![-1, 2]]),
            Err(CoxeterError::InvalidGcm(_))
        ));
        assert!(Gcm::new(vec![vec![2, -1], vec![0, 2]]).is_err());
        assert!(Gcm::new(vec![vec![2, 1], vec![1, 2]]).is_err());
        assert!(Gcm::preset("X3").is_err());
    }

    #[test]
    fn b3_and_c3_are_transposes() {
        let b = Gcm::preset("B3").unwrap();
        let c = Gcm::preset("C3").unwrap();
        assert_ne!(b, c);
        assert_eq!(b.transpose(), c);
        assert_eq!(b.m(1, 2), Some(4));
    }

    #[test]
    fn parse_text() {
        let g = Gcm::parse("2 -1\n-1, 2\n").unwrap();
        assert_eq!(g, Gcm::preset("A2").unwrap());
        let aff = Gcm::preset("A~2").unwrap();
        assert_eq!(aff.rows()[0], vec![2, -1, -1]);
    }
}
