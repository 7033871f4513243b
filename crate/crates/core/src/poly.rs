//! Sparse bivariate polynomials over arbitrary-precision rationals in the
//! indeterminates `q` and `alpha`, with exact gcd and division.
//!
//! These are the numerators and denominators of [`crate::scalar::Scalar`].
//! Exponents are nonnegative; Laurent behaviour lives in the fraction field.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exponent pair `q^q_exp * alpha^a_exp`, ordered graded-lexicographically
/// with `q` before `alpha`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Exp {
    pub q_exp: u32,
    pub a_exp: u32,
}

impl Exp {
    pub fn new(q_exp: u32, a_exp: u32) -> Self {
        Exp { q_exp, a_exp }
    }

    fn total(&self) -> u64 {
        self.q_exp as u64 + self.a_exp as u64
    }
}

impl Ord for Exp {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then(self.q_exp.cmp(&other.q_exp))
    }
}

impl PartialOrd for Exp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in `q` and `alpha` with `BigRational` coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    terms: BTreeMap<Exp, BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Poly::monomial(Exp::new(0, 0), BigRational::one())
    }

    pub fn monomial(e: Exp, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Poly { terms }
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::monomial(Exp::new(0, 0), c)
    }

    pub fn from_int(n: i64) -> Self {
        Poly::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn q_power(k: u32) -> Self {
        Poly::monomial(Exp::new(k, 0), BigRational::one())
    }

    pub fn alpha_power(k: u32) -> Self {
        Poly::monomial(Exp::new(0, k), BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Exp::new(0, 0))
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Exp, &BigRational)> {
        self.terms.iter()
    }

    /// Leading term under graded-lex with `q` before `alpha`.
    pub fn leading(&self) -> Option<(&Exp, &BigRational)> {
        self.terms.last_key_value()
    }

    /// The single term `c * q^a alpha^b` if this polynomial is a monomial.
    pub fn as_monomial(&self) -> Option<(Exp, &BigRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }

    pub fn degree_q(&self) -> u32 {
        self.terms.keys().map(|e| e.q_exp).max().unwrap_or(0)
    }

    pub fn degree_alpha(&self) -> u32 {
        self.terms.keys().map(|e| e.a_exp).max().unwrap_or(0)
    }

    fn insert_add(terms: &mut BTreeMap<Exp, BigRational>, e: Exp, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match terms.get_mut(&e) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    terms.remove(&e);
                }
            }
            None => {
                terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            Self::insert_add(&mut terms, *e, c.clone());
        }
        Poly { terms }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut terms = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = Exp::new(ea.q_exp + eb.q_exp, ea.a_exp + eb.a_exp);
                Self::insert_add(&mut terms, e, ca * cb);
            }
        }
        Poly { terms }
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(e, k)| (*e, k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, e: Exp, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(t, k)| (Exp::new(t.q_exp + e.q_exp, t.a_exp + e.a_exp), k * c))
                .collect(),
        }
    }

    /// Rational content: gcd of the coefficient numerators over lcm of the
    /// denominators, carrying the sign of the leading coefficient.
    pub fn content(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut content = BigRational::new(num_gcd, den_lcm);
        if self.leading().unwrap().1.is_negative() {
            content = -content;
        }
        content
    }

    /// Divide by a nonzero rational content.
    pub fn div_content(&self, c: &BigRational) -> Poly {
        assert!(!c.is_zero());
        let inv = c.recip();
        self.scale(&inv)
    }

    /// Evaluate at `q = q0`, `alpha = a0` exactly.
    pub fn eval(&self, q0: &BigRational, a0: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        let mut q_pows: Vec<BigRational> = vec![BigRational::one()];
        let mut a_pows: Vec<BigRational> = vec![BigRational::one()];
        for (e, c) in &self.terms {
            while q_pows.len() <= e.q_exp as usize {
                let next = q_pows.last().unwrap() * q0;
                q_pows.push(next);
            }
            while a_pows.len() <= e.a_exp as usize {
                let next = a_pows.last().unwrap() * a0;
                a_pows.push(next);
            }
            acc += c * &q_pows[e.q_exp as usize] * &a_pows[e.a_exp as usize];
        }
        acc
    }

    /// Exact division; `None` if `other` does not divide `self`.
    pub fn div_exact(&self, other: &Poly) -> Option<Poly> {
        assert!(!other.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if let Some((e, c)) = other.as_monomial() {
            // monomial divisor: term-by-term
            let mut terms = BTreeMap::new();
            for (t, k) in &self.terms {
                if t.q_exp < e.q_exp || t.a_exp < e.a_exp {
                    return None;
                }
                terms.insert(Exp::new(t.q_exp - e.q_exp, t.a_exp - e.a_exp), k / c);
            }
            return Some(Poly { terms });
        }
        let quot = QView::from_poly(self).div_exact(&QView::from_poly(other))?;
        Some(quot.to_poly())
    }

    /// Gcd, normalized to integer-primitive form with positive leading
    /// coefficient under graded-lex.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let g = if self.is_zero() {
            other.clone()
        } else if other.is_zero() {
            self.clone()
        } else if self.as_monomial().is_some() || other.as_monomial().is_some() {
            // fast path: gcd with a monomial is a monomial
            let min_q = self.terms.keys().map(|e| e.q_exp).min().unwrap_or(0);
            let min_a = self.terms.keys().map(|e| e.a_exp).min().unwrap_or(0);
            let oq = other.terms.keys().map(|e| e.q_exp).min().unwrap_or(0);
            let oa = other.terms.keys().map(|e| e.a_exp).min().unwrap_or(0);
            Poly::monomial(
                Exp::new(min_q.min(oq), min_a.min(oa)),
                BigRational::one(),
            )
        } else {
            QView::from_poly(self).gcd(&QView::from_poly(other)).to_poly()
        };
        if g.is_zero() {
            return g;
        }
        let c = g.content();
        g.div_content(&c)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // leading term first
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            if !abs.is_one() || (e.q_exp == 0 && e.a_exp == 0) {
                if abs.denom().is_one() {
                    parts.push(format!("{}", abs.numer()));
                } else {
                    parts.push(format!("{}/{}", abs.numer(), abs.denom()));
                }
            }
            if e.q_exp == 1 {
                parts.push("q".to_string());
            } else if e.q_exp > 1 {
                parts.push(format!("q^{}", e.q_exp));
            }
            if e.a_exp == 1 {
                parts.push("alpha".to_string());
            } else if e.a_exp > 1 {
                parts.push(format!("alpha^{}", e.a_exp));
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// univariate views used by gcd / exact division
// ---------------------------------------------------------------------------

/// Dense univariate polynomial in `alpha` over the rationals.
#[derive(Clone, PartialEq, Debug)]
struct APoly {
    coeffs: Vec<BigRational>, // coeffs[i] is the coefficient of alpha^i
}

impl APoly {
    fn zero() -> Self {
        APoly { coeffs: vec![] }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn trim(mut self) -> Self {
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
        self
    }

    fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn lc(&self) -> &BigRational {
        self.coeffs.last().expect("lc of zero APoly")
    }

    fn add(&self, other: &APoly) -> APoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        APoly { coeffs }.trim()
    }

    fn neg(&self) -> APoly {
        APoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    fn sub(&self, other: &APoly) -> APoly {
        self.add(&other.neg())
    }

    fn mul(&self, other: &APoly) -> APoly {
        if self.is_zero() || other.is_zero() {
            return APoly::zero();
        }
        let mut coeffs =
            vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        APoly { coeffs }.trim()
    }

    fn scale(&self, c: &BigRational) -> APoly {
        if c.is_zero() {
            return APoly::zero();
        }
        APoly {
            coeffs: self.coeffs.iter().map(|k| k * c).collect(),
        }
    }

    /// Euclidean remainder over Q[alpha].
    fn rem(&self, other: &APoly) -> APoly {
        let mut r = self.clone();
        let d = other.degree();
        let lc = other.lc().clone();
        while !r.is_zero() && r.degree() >= d {
            let shift = r.degree() - d;
            let factor = r.lc() / &lc;
            let mut sub = vec![BigRational::zero(); shift];
            sub.extend(other.coeffs.iter().map(|c| c * &factor));
            r = r.sub(&APoly { coeffs: sub }.trim());
        }
        r
    }

    /// Exact division; `None` when the remainder is nonzero.
    fn div_exact(&self, other: &APoly) -> Option<APoly> {
        assert!(!other.is_zero());
        if self.is_zero() {
            return Some(APoly::zero());
        }
        if self.degree() < other.degree() {
            return None;
        }
        let mut r = self.clone();
        let d = other.degree();
        let lc = other.lc().clone();
        let mut quot = vec![BigRational::zero(); self.degree() - d + 1];
        while !r.is_zero() && r.degree() >= d {
            let shift = r.degree() - d;
            let factor = r.lc() / &lc;
            quot[shift] = factor.clone();
            let mut sub = vec![BigRational::zero(); shift];
            sub.extend(other.coeffs.iter().map(|c| c * &factor));
            r = r.sub(&APoly { coeffs: sub }.trim());
        }
        if r.is_zero() {
            Some(APoly { coeffs: quot }.trim())
        } else {
            None
        }
    }

    /// Primitive gcd with positive leading coefficient.
    fn gcd(&self, other: &APoly) -> APoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.primitive()
    }

    fn content(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in &self.coeffs {
            if c.is_zero() {
                continue;
            }
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut content = BigRational::new(num_gcd, den_lcm);
        if self.lc().is_negative() {
            content = -content;
        }
        content
    }

    fn primitive(&self) -> APoly {
        if self.is_zero() {
            return APoly::zero();
        }
        let c = self.content();
        self.scale(&c.recip())
    }
}

/// `self` viewed as a univariate polynomial in `q` over Q[alpha].
#[derive(Clone, Debug)]
struct QView {
    coeffs: Vec<APoly>, // coeffs[i] is the APoly coefficient of q^i
}

impl QView {
    fn from_poly(p: &Poly) -> Self {
        let dq = p.degree_q() as usize;
        let mut coeffs = vec![APoly::zero(); dq + 1];
        for (e, c) in p.iter() {
            let slot = &mut coeffs[e.q_exp as usize];
            let mut v = slot.coeffs.clone();
            if v.len() <= e.a_exp as usize {
                v.resize(e.a_exp as usize + 1, BigRational::zero());
            }
            v[e.a_exp as usize] += c;
            *slot = APoly { coeffs: v }.trim();
        }
        QView { coeffs }.trim()
    }

    fn to_poly(&self) -> Poly {
        let mut terms = BTreeMap::new();
        for (i, ap) in self.coeffs.iter().enumerate() {
            for (j, c) in ap.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    terms.insert(Exp::new(i as u32, j as u32), c.clone());
                }
            }
        }
        Poly { terms }
    }

    fn trim(mut self) -> Self {
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn lc(&self) -> &APoly {
        self.coeffs.last().expect("lc of zero QView")
    }

    fn mul_apoly(&self, a: &APoly) -> QView {
        QView {
            coeffs: self.coeffs.iter().map(|c| c.mul(a)).collect(),
        }
        .trim()
    }

    fn sub(&self, other: &QView) -> QView {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![APoly::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] = coeffs[i].add(c);
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] = coeffs[i].sub(c);
        }
        QView { coeffs }.trim()
    }

    fn shift_mul(&self, shift: usize, a: &APoly) -> QView {
        let mut coeffs = vec![APoly::zero(); shift];
        coeffs.extend(self.coeffs.iter().map(|c| c.mul(a)));
        QView { coeffs }.trim()
    }

    /// Content in q-direction: gcd over Q[alpha] of the coefficients.
    fn content_q(&self) -> APoly {
        let mut g = APoly::zero();
        for c in &self.coeffs {
            if c.is_zero() {
                continue;
            }
            g = if g.is_zero() { c.primitive() } else { g.gcd(c) };
            if g.degree() == 0 {
                break;
            }
        }
        g
    }

    fn primitive_q(&self) -> QView {
        if self.is_zero() {
            return QView { coeffs: vec![] };
        }
        let c = self.content_q();
        QView {
            coeffs: self
                .coeffs
                .iter()
                .map(|k| k.div_exact(&c).expect("content must divide"))
                .collect(),
        }
        .trim()
    }

    /// Pseudo-remainder of `self` by `other` in the q-direction.
    fn pseudo_rem(&self, other: &QView) -> QView {
        let d = other.degree();
        let lc = other.lc().clone();
        let mut r = self.clone();
        while !r.is_zero() && r.degree() >= d {
            let shift = r.degree() - d;
            let r_lc = r.lc().clone();
            r = r.mul_apoly(&lc).sub(&other.shift_mul(shift, &r_lc));
        }
        r
    }

    /// Primitive PRS gcd of primitive parts, times the gcd of contents.
    fn gcd(&self, other: &QView) -> QView {
        let ca = self.content_q();
        let cb = other.content_q();
        let cg = ca.gcd(&cb);
        let mut a = self.primitive_q();
        let mut b = other.primitive_q();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_q();
            a = b;
            b = r;
        }
        a.primitive_q().mul_apoly(&cg)
    }

    /// Exact division in the q-direction; coefficient divisions must all be
    /// exact when divisibility holds.
    fn div_exact(&self, other: &QView) -> Option<QView> {
        if self.is_zero() {
            return Some(QView { coeffs: vec![] });
        }
        if self.degree() < other.degree() {
            return None;
        }
        let d = other.degree();
        let mut r = self.clone();
        let mut quot = vec![APoly::zero(); self.degree() - d + 1];
        while !r.is_zero() && r.degree() >= d {
            let shift = r.degree() - d;
            let qc = r.lc().div_exact(other.lc())?;
            quot[shift] = qc.clone();
            r = r.sub(&other.shift_mul(shift, &qc));
        }
        if r.is_zero() {
            Some(QView { coeffs: quot }.trim())
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Poly {
        Poly::q_power(1)
    }

    fn a() -> Poly {
        Poly::alpha_power(1)
    }

    #[test]
    fn grlex_orders_q_before_alpha() {
        assert!(Exp::new(1, 0) > Exp::new(0, 1));
        assert!(Exp::new(0, 2) > Exp::new(1, 0));
        assert!(Exp::new(2, 1) > Exp::new(1, 2));
    }

    #[test]
    fn mul_and_gcd_roundtrip() {
        // (q^2 - 1) = (q - 1)(q + 1)
        let qm1 = q().sub(&Poly::one());
        let qp1 = q().add(&Poly::one());
        let prod = qm1.mul(&qp1);
        let g = prod.gcd(&qm1);
        assert_eq!(g, qm1);
        assert_eq!(prod.div_exact(&qp1), Some(qm1));
    }

    #[test]
    fn gcd_bivariate() {
        // common factor (q*alpha + 1)
        let f = q().mul(&a()).add(&Poly::one());
        let p1 = f.mul(&q().add(&a()));
        let p2 = f.mul(&q().sub(&Poly::from_int(3)));
        let g = p1.gcd(&p2);
        assert_eq!(g, f);
    }

    #[test]
    fn gcd_of_coprime_is_constant() {
        let p1 = q().add(&Poly::one());
        let p2 = a().add(&Poly::from_int(2));
        let g = p1.gcd(&p2);
        assert!(g.is_one());
    }

    #[test]
    fn content_normalization() {
        let p = q().scale(&BigRational::new(BigInt::from(-4), BigInt::from(6)));
        let c = p.content();
        // content carries the sign of the leading coefficient
        assert_eq!(c, BigRational::new(BigInt::from(-2), BigInt::from(3)));
        let prim = p.div_content(&c);
        assert_eq!(prim, q());
    }

    #[test]
    fn eval_exact() {
        // q^2 + alpha at q=1/2, alpha=3 -> 13/4
        let p = Poly::q_power(2).add(&a());
        let v = p.eval(
            &BigRational::new(BigInt::from(1), BigInt::from(2)),
            &BigRational::from_integer(BigInt::from(3)),
        );
        assert_eq!(v, BigRational::new(BigInt::from(13), BigInt::from(4)));
    }

    #[test]
    fn display_readable() {
        let p = Poly::q_power(2).add(&Poly::one());
        assert_eq!(p.to_string(), "q^2 + 1");
        let m = q().scale(&BigRational::new(BigInt::from(-1), BigInt::from(2)));
        assert_eq!(m.to_string(), "-1/2*q");
    }
}
