use std::fmt;

use serde::{Deserialize, Serialize};

use super::matrix::ExactMatrix;
use super::scalar::Q;
use super::vector::SparseVec;

/// Univariate polynomial over Q, coefficients from the constant term up.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Polynomial {
    coeffs: Vec<Q>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn x() -> Self {
        Polynomial::new(vec![Q::ZERO, Q::ONE])
    }

    pub fn monomial(k: usize) -> Self {
        let mut c = vec![Q::ZERO; k + 1];
        c[k] = Q::ONE;
        Polynomial::new(c)
    }

    /// `prod (x - r)`.
    pub fn from_roots(roots: &[Q]) -> Self {
        roots.iter().fold(Polynomial::new(vec![Q::ONE]), |acc, r| acc.mul(&Polynomial::new(vec![-r, Q::ONE])))
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Polynomial::new(Vec::new());
        }
        let mut out = vec![Q::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Polynomial::new(out)
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs.iter().rev().fold(Q::ZERO, |acc, c| &(&acc * x) + c)
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, m: &ExactMatrix) -> ExactMatrix {
        let n = m.rows();
        self.coeffs.iter().rev().fold(ExactMatrix::zeros(n, n), |acc, c| acc.mul(m).add(&ExactMatrix::scalar(n, c)))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.signum() < 0;
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let var = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            if k == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{a}*{var}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Least-degree monic `p` with `p(m) = 0`, from the first linear dependence
/// among `I, m, m^2, ...`.
pub fn minimal_polynomial(m: &ExactMatrix) -> Polynomial {
    assert!(m.is_square(), "minimal polynomial of a non-square matrix");
    let n = m.rows();
    // Reduced powers, each with the combination of raw powers it stands for.
    let mut rows: Vec<(SparseVec, Vec<Q>)> = Vec::new();
    let mut pivot_of = vec![usize::MAX; n * n];
    let mut power = ExactMatrix::identity(n);
    for k in 0..=n {
        let mut v = power.flatten();
        let mut combo = vec![Q::ZERO; k + 1];
        combo[k] = Q::ONE;
        while let Some((c, a)) = v.last().cloned() {
            let r = pivot_of[c];
            if r == usize::MAX {
                break;
            }
            let (row, rc) = &rows[r];
            v = v.axpy(&-&a, row);
            for (i, x) in rc.iter().enumerate() {
                combo[i] -= &(&a * x);
            }
        }
        match v.last().cloned() {
            None => return Polynomial::new(combo),
            Some((c, a)) => {
                let inv = a.recip();
                v.scale_in_place(&inv);
                for x in combo.iter_mut() {
                    *x = &*x * &inv;
                }
                pivot_of[c] = rows.len();
                rows.push((v, combo));
            }
        }
        power = power.mul(m);
    }
    unreachable!("Cayley-Hamilton bounds the degree by n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(minimal_polynomial(&ExactMatrix::zeros(3, 3)), Polynomial::x());
        assert_eq!(minimal_polynomial(&ExactMatrix::identity(3)), Polynomial::from_roots(&[Q::ONE]));
        let j = ExactMatrix::from_int_rows(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert_eq!(minimal_polynomial(&j), Polynomial::monomial(3));
    }

    #[test]
    fn diagonal_with_repeats() {
        let d = ExactMatrix::from_int_rows(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 2]]);
        let p = minimal_polynomial(&d);
        assert_eq!(p, Polynomial::from_roots(&[Q::from_int(2), Q::from_int(3)]));
        assert!(p.eval_matrix(&d).is_zero());
    }

    #[test]
    fn display() {
        let p = Polynomial::from_roots(&[Q::ONE, Q::new(1, 2)]);
        assert_eq!(p.to_string(), "x^2 - 3/2*x + 1/2");
        assert_eq!(Polynomial::monomial(2).to_string(), "x^2");
    }
}
