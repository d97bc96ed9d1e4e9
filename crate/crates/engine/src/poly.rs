use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

/// Exact rational coefficient.
pub type Q = Ratio<i128>;

/// Polynomial in `p` with exact rational coefficients, lowest degree first.
/// Trailing zeros are trimmed so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly(Vec<Q>);

impl Poly {
    pub fn zero() -> Poly {
        Poly(vec![])
    }

    pub fn one() -> Poly {
        Poly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Poly {
        Poly::new(vec![c])
    }

    /// The monomial `p`.
    pub fn p() -> Poly {
        Poly::new(vec![Q::zero(), Q::one()])
    }

    pub fn new(mut coeffs: Vec<Q>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn from_ints(coeffs: &[i128]) -> Poly {
        Poly::new(coeffs.iter().map(|&c| Q::from_integer(c)).collect())
    }

    /// `p^w (1-p)^(k-w)`.
    pub fn bernoulli(w: usize, k: usize) -> Poly {
        assert!(w <= k);
        let q = &Poly::one() - &Poly::p();
        &Poly::p().pow(w) * &q.pow(k - w)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.0.get(i).copied().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// Lowest-order nonzero term as `(order, coefficient)`.
    pub fn leading_term(&self) -> Option<(usize, Q)> {
        self.0.iter().enumerate().find(|(_, c)| !c.is_zero()).map(|(i, c)| (i, *c))
    }

    /// Drops every term above `p^max`.
    pub fn truncate(&self, max: usize) -> Poly {
        Poly::new(self.0.iter().take(max + 1).copied().collect())
    }

    pub fn scale(&self, s: Q) -> Poly {
        Poly::new(self.0.iter().map(|c| c * s).collect())
    }

    pub fn pow(&self, n: usize) -> Poly {
        (0..n).fold(Poly::one(), |acc, _| &acc * self)
    }

    pub fn eval(&self, p: Q) -> Q {
        self.0.iter().rev().fold(Q::zero(), |acc, c| acc * p + c)
    }

    /// Integer coefficients, if every coefficient is an integer.
    pub fn to_ints(&self) -> Option<Vec<i128>> {
        self.0.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        Poly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        Poly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.0.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Q::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

macro_rules! by_value {
    ($tr:ident, $f:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $f(self, o: Poly) -> Poly {
                (&self).$f(&o)
            }
        }
    };
}
by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::zero(), |a, b| &a + &b)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let unit = mag.is_one() && i > 0;
            if !unit {
                if mag.is_integer() || i == 0 {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            }
            match i {
                0 => {}
                1 => f.write_str("p")?,
                _ => write!(f, "p^{i}")?,
            }
        }
        Ok(())
    }
}
