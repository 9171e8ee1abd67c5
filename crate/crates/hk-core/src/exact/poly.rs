//! Univariate polynomials over the rationals, ascending coefficients.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::rat::Rat;

/// Coefficient list with no trailing zeros; the zero polynomial is the empty
/// list (its degree is `None`).
#[derive(Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(coeffs: Vec<Rat>) -> Poly {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Poly {
        Poly { coeffs: vec![] }
    }

    pub fn constant(c: Rat) -> Poly {
        Poly::new(vec![c])
    }

    pub fn x() -> Poly {
        Poly::new(vec![Rat::zero(), Rat::one()])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Rat::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rat::int(i as i64))
            .collect();
        Poly::new(coeffs)
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Poly {
        let mut coeffs = vec![Rat::zero()];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / Rat::int(i as i64 + 1));
        }
        Poly::new(coeffs)
    }

    pub fn definite_integral(&self, a: &Rat, b: &Rat) -> Rat {
        let f = self.antiderivative();
        f.eval(b) - f.eval(a)
    }

    pub fn scale(&self, k: &Rat) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Poly::new(coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&Rat::int(-1)))
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += &(a * b);
            }
        }
        Poly::new(coeffs)
    }

    /// `p(c0 + c1*x)`.
    pub fn compose_affine(&self, c0: &Rat, c1: &Rat) -> Poly {
        let mut acc = Poly::zero();
        let arg = Poly::new(vec![c0.clone(), c1.clone()]);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&arg).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// Exact interpolation through `points`; degree < number of points.
    pub fn lagrange(points: &[(Rat, Rat)]) -> Poly {
        let mut acc = Poly::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut basis = Poly::constant(Rat::one());
            let mut denom = Rat::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i != j {
                    basis = basis.mul(&Poly::new(vec![-xj, Rat::one()]));
                    denom *= &(xi - xj);
                }
            }
            acc = acc.add(&basis.scale(&(yi / &denom)));
        }
        acc
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::rat;

    fn p(cs: &[(i64, i64)]) -> Poly {
        Poly::new(cs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn canonical_form() {
        assert_eq!(p(&[(1, 1), (0, 1), (0, 1)]).degree(), Some(0));
        assert!(p(&[(0, 1)]).is_zero());
        assert_eq!(Poly::zero().degree(), None);
    }

    #[test]
    fn eval_and_integral() {
        // 2t - t^2
        let q = p(&[(0, 1), (2, 1), (-1, 1)]);
        assert_eq!(q.eval(&rat(1, 2)), rat(3, 4));
        assert_eq!(q.definite_integral(&Rat::zero(), &Rat::one()), rat(2, 3));
        assert_eq!(q.derivative(), p(&[(2, 1), (-2, 1)]));
    }

    #[test]
    fn compose_affine_matches_eval() {
        let q = p(&[(1, 2), (3, 1), (0, 1), (-2, 3)]);
        let composed = q.compose_affine(&rat(1, 3), &rat(-2, 1));
        for x in [rat(0, 1), rat(1, 7), rat(-3, 5)] {
            let arg = rat(1, 3) + rat(-2, 1) * &x;
            assert_eq!(composed.eval(&x), q.eval(&arg));
        }
    }

    #[test]
    fn lagrange_recovers_polynomial() {
        let q = p(&[(1, 1), (-1, 2), (0, 1), (5, 3)]);
        let pts: Vec<(Rat, Rat)> = (0..5)
            .map(|i| {
                let x = rat(i, 7);
                let y = q.eval(&x);
                (x, y)
            })
            .collect();
        assert_eq!(Poly::lagrange(&pts), q);
    }
}
