//! The coefficient field Q(q, alpha): fractions of bivariate polynomials in
//! canonical form, q-integers and q-binomials, and exact evaluation at a
//! rational point.
//!
//! Canonical form: gcd(numerator, denominator) = 1, the denominator is an
//! integer-primitive polynomial (rational content 1) and its leading
//! coefficient under graded-lex (q before alpha) is positive. Equality is
//! representation equality.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::poly::Poly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator of `{scalar}` vanishes at q = {q0}, alpha = {alpha0}")]
    DenominatorVanishes {
        scalar: String,
        q0: BigRational,
        alpha0: BigRational,
    },
    #[error("invalid evaluation point: q0 must avoid {{0, 1, -1}} and alpha0 must be nonzero")]
    InvalidEvalPoint,
}

/// A rational evaluation point (q0, alpha0) with q0 not in {0, 1, -1}.
///
/// A nonzero rational other than +-1 is never a root of unity, so any such
/// point satisfies the genericity hypothesis on q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalPoint {
    q0: BigRational,
    alpha0: BigRational,
}

impl EvalPoint {
    pub fn new(q0: BigRational, alpha0: BigRational) -> Result<Self, ScalarError> {
        if q0.is_zero() || q0.abs().is_one() || alpha0.is_zero() {
            return Err(ScalarError::InvalidEvalPoint);
        }
        Ok(EvalPoint { q0, alpha0 })
    }

    pub fn from_ints(q0: i64, alpha0: i64) -> Result<Self, ScalarError> {
        EvalPoint::new(
            BigRational::from_integer(BigInt::from(q0)),
            BigRational::from_integer(BigInt::from(alpha0)),
        )
    }

    /// The standard specialization point used for fast dimension counts.
    pub fn standard() -> Self {
        EvalPoint::from_ints(2, 1).unwrap()
    }

    pub fn q0(&self) -> &BigRational {
        &self.q0
    }

    pub fn alpha0(&self) -> &BigRational {
        &self.alpha0
    }
}

/// An element of Q(q, alpha) in canonical form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    fn canonical(num: Poly, den: Poly) -> Scalar {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Scalar {
                num: Poly::zero(),
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        // make the denominator integer-primitive with positive leading coeff
        let c = den.content();
        Scalar {
            num: num.div_content(&c),
            den: den.div_content(&c),
        }
    }

    pub fn from_poly(num: Poly) -> Scalar {
        Scalar::canonical(num, Poly::one())
    }

    pub fn from_frac(num: Poly, den: Poly) -> Result<Scalar, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::canonical(num, den))
    }

    pub fn zero() -> Scalar {
        Scalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Scalar {
        Scalar {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn int(n: i64) -> Scalar {
        Scalar::from_poly(Poly::from_int(n))
    }

    pub fn ratio(num: i64, den: i64) -> Scalar {
        assert!(den != 0);
        Scalar::canonical(Poly::from_int(num), Poly::from_int(den))
    }

    pub fn from_rational(r: &BigRational) -> Scalar {
        Scalar::canonical(Poly::constant(r.clone()), Poly::one())
    }

    /// q^k for any integer k; negative powers go into the denominator.
    pub fn q_pow(k: i64) -> Scalar {
        if k >= 0 {
            Scalar {
                num: Poly::q_power(k as u32),
                den: Poly::one(),
            }
        } else {
            Scalar {
                num: Poly::one(),
                den: Poly::q_power((-k) as u32),
            }
        }
    }

    /// alpha^k for any integer k.
    pub fn alpha_pow(k: i64) -> Scalar {
        if k >= 0 {
            Scalar {
                num: Poly::alpha_power(k as u32),
                den: Poly::one(),
            }
        } else {
            Scalar {
                num: Poly::one(),
                den: Poly::alpha_power((-k) as u32),
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn add_ref(&self, other: &Scalar) -> Scalar {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Scalar::canonical(num, den)
    }

    pub fn sub_ref(&self, other: &Scalar) -> Scalar {
        self.add_ref(&other.neg_ref())
    }

    pub fn neg_ref(&self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul_ref(&self, other: &Scalar) -> Scalar {
        if self.is_zero() || other.is_zero() {
            return Scalar::zero();
        }
        // cross-cancel before multiplying to keep operands small
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = other.den.div_exact(&g1).unwrap();
        let n2 = other.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        Scalar::canonical(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn div_ref(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        if other.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(self.mul_ref(&Scalar {
            num: other.den.clone(),
            den: other.num.clone(),
        }))
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, k: i64) -> Result<Scalar, ScalarError> {
        if k == 0 {
            return Ok(Scalar::one());
        }
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one();
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul_ref(&base);
        }
        Ok(acc)
    }

    /// Exact evaluation at a point where the denominator does not vanish.
    pub fn evaluate(&self, p: &EvalPoint) -> Result<BigRational, ScalarError> {
        let den = self.den.eval(&p.q0, &p.alpha0);
        if den.is_zero() {
            return Err(ScalarError::DenominatorVanishes {
                scalar: self.to_string(),
                q0: p.q0.clone(),
                alpha0: p.alpha0.clone(),
            });
        }
        Ok(self.num.eval(&p.q0, &p.alpha0) / den)
    }

    /// If this scalar is `q^k` for some integer k, return k.
    pub fn as_q_power(&self) -> Option<i64> {
        let (en, cn) = self.num.as_monomial()?;
        let (ed, cd) = self.den.as_monomial()?;
        if en.a_exp != 0 || ed.a_exp != 0 || !cn.is_one() || !cd.is_one() {
            return None;
        }
        Some(en.q_exp as i64 - ed.q_exp as i64)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        self.add_ref(&rhs)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self.sub_ref(&rhs)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        self.mul_ref(&rhs)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        self.div_ref(&rhs).expect("scalar division by zero")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            if self.num.num_terms() > 1 {
                return write!(f, "{}", self.num);
            }
            return write!(f, "{}", self.num);
        }
        let num = if self.num.num_terms() > 1 {
            format!("({})", self.num)
        } else {
            format!("{}", self.num)
        };
        let den_simple = self
            .den
            .as_monomial()
            .map(|(_, c)| c.is_one())
            .unwrap_or(false);
        if den_simple {
            write!(f, "{}/{}", num, self.den)
        } else {
            write!(f, "{}/({})", num, self.den)
        }
    }
}

/// The q-integer [n] = (q^n - q^{-n}) / (q - q^{-1}).
///
/// Built directly as (sum_{i<n} q^{2i}) / q^{n-1} for n > 0; [-n] = -[n].
pub fn q_integer(n: i64) -> Scalar {
    if n == 0 {
        return Scalar::zero();
    }
    let m = n.unsigned_abs() as u32;
    let mut num = Poly::zero();
    for i in 0..m {
        num = num.add(&Poly::q_power(2 * i));
    }
    let s = Scalar {
        num,
        den: Poly::q_power(m - 1),
    };
    if n < 0 {
        s.neg_ref()
    } else {
        s
    }
}

/// [n]! = [n][n-1]...[1], with [0]! = 1.
pub fn q_factorial(n: i64) -> Scalar {
    assert!(n >= 0);
    let mut acc = Scalar::one();
    for i in 1..=n {
        acc = acc.mul_ref(&q_integer(i));
    }
    acc
}

/// The q-binomial coefficient [n]!/([k]![n-k]!), zero when k < 0 or k > n.
pub fn q_binomial(n: i64, k: i64) -> Scalar {
    assert!(n >= 0);
    if k < 0 || k > n {
        return Scalar::zero();
    }
    let k = k.min(n - k);
    let mut acc = Scalar::one();
    for i in 1..=k {
        acc = acc.mul_ref(&q_integer(n - k + i));
        acc = acc.div_ref(&q_integer(i)).unwrap();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_int_small_values() {
        assert!(q_integer(0).is_zero());
        assert!(q_integer(1).is_one());
        // [2] = (q^2 + 1)/q
        let two = q_integer(2);
        assert_eq!(two.to_string(), "(q^2 + 1)/q");
        assert_eq!(q_integer(-3), q_integer(3).neg_ref());
    }

    #[test]
    fn q_int_matches_defining_formula() {
        for n in -6..=6i64 {
            let lhs = q_integer(n);
            let num = Scalar::q_pow(n).sub_ref(&Scalar::q_pow(-n));
            let den = Scalar::q_pow(1).sub_ref(&Scalar::q_pow(-1));
            assert_eq!(lhs, num.div_ref(&den).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn self_division_is_one() {
        // (q^2 - 1)/q divided by itself
        let s = Scalar::from_frac(
            Poly::q_power(2).sub(&Poly::one()),
            Poly::q_power(1),
        )
        .unwrap();
        assert!(s.div_ref(&s).unwrap().is_one());
    }

    #[test]
    fn q_bracket_square_identity() {
        // [2]*[2] - [1] - [3] = 0, i.e. (q + q^{-1})^2 = 1 + (q^2 + 1 + q^{-2})
        let lhs = q_integer(2)
            .mul_ref(&q_integer(2))
            .sub_ref(&q_integer(1))
            .sub_ref(&q_integer(3));
        assert!(lhs.is_zero());
    }

    #[test]
    fn q_int_sum_example() {
        // [2] + [0] = (q^2 + 1)/q
        let s = q_integer(2).add_ref(&q_integer(0));
        assert_eq!(s, q_integer(2));
    }

    #[test]
    fn q_binomial_edge_cases() {
        for n in 0..=5 {
            assert!(q_binomial(n, 0).is_one());
            assert!(q_binomial(n, n).is_one());
        }
        assert!(q_binomial(3, -1).is_zero());
        assert!(q_binomial(3, 4).is_zero());
        // (2,1) -> [2]
        assert_eq!(q_binomial(2, 1), q_integer(2));
        // symmetry
        assert_eq!(q_binomial(3, 1), q_binomial(3, 2));
    }

    #[test]
    fn q_pascal_identity() {
        // qbinom(n,k) = q^k qbinom(n-1,k) + q^{k-n} qbinom(n-1,k-1)
        for n in 1..=8i64 {
            for k in 0..=n {
                let lhs = q_binomial(n, k);
                let rhs = Scalar::q_pow(k)
                    .mul_ref(&q_binomial(n - 1, k))
                    .add_ref(&Scalar::q_pow(k - n).mul_ref(&q_binomial(n - 1, k - 1)));
                assert_eq!(lhs, rhs, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn q_power_shift_identity() {
        // [n] q^j - [j] q^n = [n - j] for 0 <= j <= n
        for n in 0..=8i64 {
            for j in 0..=n {
                let lhs = q_integer(n)
                    .mul_ref(&Scalar::q_pow(j))
                    .sub_ref(&q_integer(j).mul_ref(&Scalar::q_pow(n)));
                assert_eq!(lhs, q_integer(n - j), "n={n} j={j}");
            }
        }
    }

    #[test]
    fn evaluate_q_integers() {
        let p = EvalPoint::standard();
        // [2] at q0 = 2 -> 5/2
        assert_eq!(
            q_integer(2).evaluate(&p).unwrap(),
            BigRational::new(BigInt::from(5), BigInt::from(2))
        );
        // [3] at q0 = 2 -> 21/4
        assert_eq!(
            q_integer(3).evaluate(&p).unwrap(),
            BigRational::new(BigInt::from(21), BigInt::from(4))
        );
        // alpha at alpha0 = 1 -> 1
        assert!(Scalar::alpha_pow(1).evaluate(&p).unwrap().is_one());
    }

    #[test]
    fn evaluate_rejects_vanishing_denominator() {
        // 1/(q - 2) at q0 = 2
        let s = Scalar::from_frac(Poly::one(), Poly::q_power(1).sub(&Poly::from_int(2)))
            .unwrap();
        let err = s.evaluate(&EvalPoint::standard()).unwrap_err();
        assert!(matches!(err, ScalarError::DenominatorVanishes { .. }));
    }

    #[test]
    fn eval_point_validation() {
        assert!(EvalPoint::from_ints(0, 1).is_err());
        assert!(EvalPoint::from_ints(1, 1).is_err());
        assert!(EvalPoint::from_ints(-1, 1).is_err());
        assert!(EvalPoint::from_ints(2, 0).is_err());
        assert!(EvalPoint::from_ints(-2, 5).is_ok());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let err = Scalar::one().div_ref(&Scalar::zero()).unwrap_err();
        assert_eq!(err, ScalarError::DivisionByZero);
    }

    #[test]
    fn as_q_power_detection() {
        assert_eq!(Scalar::q_pow(5).as_q_power(), Some(5));
        assert_eq!(Scalar::q_pow(-3).as_q_power(), Some(-3));
        assert_eq!(Scalar::one().as_q_power(), Some(0));
        assert_eq!(Scalar::int(2).as_q_power(), None);
        assert_eq!(q_integer(2).as_q_power(), None);
        assert_eq!(Scalar::alpha_pow(1).as_q_power(), None);
    }
}
