//! Exact integer polynomials: dense univariate ([`UniPoly`], variable `k`) and
//! sparse bivariate ([`BiPoly`], variables `x`, `y`).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InterpolationError {
    #[error("no interpolation points given")]
    NoPoints,
    #[error("abscissa {0} appears more than once")]
    DuplicateAbscissa(BigInt),
    #[error("interpolating polynomial has non-integral coefficient {0}")]
    NonIntegral(BigRational),
}

/// Univariate polynomial in `k`; `coeffs[i]` multiplies `k^i`, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// The polynomial `k`.
    pub fn k() -> Self {
        Self::from_i64s(&[0, 1])
    }

    /// `k + c`.
    pub fn linear(c: i64) -> Self {
        Self::from_i64s(&[c, 1])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    /// Coefficients in ascending powers.
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Product of the given polynomials (one when empty).
    pub fn product<'a>(factors: impl IntoIterator<Item = &'a UniPoly>) -> Self {
        factors.into_iter().fold(UniPoly::one(), |acc, f| &acc * f)
    }

    /// `k (k-1) ... (k-n+1)`.
    pub fn falling_factorial(n: usize) -> Self {
        (0..n as i64).fold(UniPoly::one(), |acc, i| &acc * &UniPoly::linear(-i))
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, power: usize) -> BigInt {
        self.coeffs.get(power).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(UniPoly::one(), |acc, _| &acc * self)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `k^e`.
    pub fn shift_up(&self, e: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); e];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    pub fn eval(&self, k: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * k + c)
    }

    pub fn eval_i64(&self, k: i64) -> BigInt {
        self.eval(&BigInt::from(k))
    }

    /// Substitution `k -> k + c`, i.e. the polynomial `p(k + c)`.
    pub fn shift(&self, c: i64) -> Self {
        let step = UniPoly::linear(c);
        self.compose(&step)
    }

    /// `p(q(k))` by Horner's rule.
    pub fn compose(&self, q: &UniPoly) -> Self {
        self.coeffs.iter().rev().fold(UniPoly::zero(), |acc, c| &(&acc * q) + &UniPoly::constant(c.clone()))
    }

    /// The unique polynomial of degree below `points.len()` through `points`.
    ///
    /// Newton divided differences over the rationals, expanded to the monomial
    /// basis; every coefficient must be an integer.
    pub fn interpolate(points: &[(BigInt, BigInt)]) -> Result<Self, InterpolationError> {
        if points.is_empty() {
            return Err(InterpolationError::NoPoints);
        }
        for (i, (a, _)) in points.iter().enumerate() {
            if points[..i].iter().any(|(b, _)| a == b) {
                return Err(InterpolationError::DuplicateAbscissa(a.clone()));
            }
        }
        let xs: Vec<BigRational> = points.iter().map(|(x, _)| BigRational::from(x.clone())).collect();
        let mut dd: Vec<BigRational> = points.iter().map(|(_, y)| BigRational::from(y.clone())).collect();
        let m = points.len();
        for level in 1..m {
            for i in (level..m).rev() {
                dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
            }
        }
        // Horner on the Newton form: p = dd0 + (k - x0)(dd1 + (k - x1)(...))
        let mut acc: Vec<BigRational> = vec![dd[m - 1].clone()];
        for i in (0..m - 1).rev() {
            let mut next = vec![BigRational::zero(); acc.len() + 1];
            for (p, c) in acc.iter().enumerate() {
                next[p + 1] += c;
                next[p] -= c * &xs[i];
            }
            next[0] += &dd[i];
            acc = next;
        }
        let mut coeffs = Vec::with_capacity(acc.len());
        for c in acc {
            if !c.is_integer() {
                return Err(InterpolationError::NonIntegral(c));
            }
            coeffs.push(c.to_integer());
        }
        Ok(Self::from_coeffs(coeffs))
    }

    /// Stable JSON form: ascending coefficient array as decimal strings.
    pub fn to_json(&self) -> Value {
        json!({
            "variable": "k",
            "coefficients": self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "text": self.to_string(),
        })
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, first: bool, c: &BigInt, mono: &str) -> fmt::Result {
    let neg = c.is_negative();
    let mag = c.abs();
    match (first, neg) {
        (true, true) => write!(f, "-")?,
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
        (true, false) => {}
    }
    if mono.is_empty() {
        write!(f, "{mag}")
    } else if mag.is_one() {
        write!(f, "{mono}")
    } else {
        write!(f, "{mag}*{mono}")
    }
}

fn power(var: &str, e: u32) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    }
}

impl fmt::Display for UniPoly {
    /// Renders e.g. `k^4 - 9*k^3 + 35*k^2 - 69*k + 57`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (p, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            write_term(f, first, c, &power("k", p as u32))?;
            first = false;
        }
        Ok(())
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident :: $m:ident),*) => {$(
        impl $tr for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                $tr::$m(&self, &rhs)
            }
        }
    )*};
}
forward_owned!(UniPoly, Add::add, Sub::sub, Mul::mul);
forward_owned!(BiPoly, Add::add, Sub::sub, Mul::mul);

/// Bivariate polynomial in `x`, `y`: map from `(x power, y power)` to a nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    pub fn x() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(1, 0, 1)
    }

    pub fn monomial(c: impl Into<BigInt>, xp: u32, yp: u32) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(xp, yp, c.into());
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), BigInt)>) -> Self {
        let mut p = BiPoly::zero();
        for ((a, b), c) in terms {
            p.add_term(a, b, c);
        }
        p
    }

    pub fn add_term(&mut self, xp: u32, yp: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((xp, yp)).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(xp, yp));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, xp: u32, yp: u32) -> BigInt {
        self.terms.get(&(xp, yp)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(BiPoly::one(), |acc, _| &acc * self)
    }

    /// `(x - 1)^a (y - 1)^b`, expanded.
    pub fn shifted_monomial(a: u32, b: u32) -> Self {
        let xm1 = &BiPoly::x() - &BiPoly::one();
        let ym1 = &BiPoly::y() - &BiPoly::one();
        &xm1.pow(a) * &ym1.pow(b)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        BiPoly::from_terms(self.terms.iter().map(|(&e, v)| (e, v * c)))
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        let mut total = BigInt::zero();
        for (&(a, b), c) in &self.terms {
            total += c * num_traits::pow(x.clone(), a as usize) * num_traits::pow(y.clone(), b as usize);
        }
        total
    }

    pub fn eval_i64(&self, x: i64, y: i64) -> BigInt {
        self.eval(&BigInt::from(x), &BigInt::from(y))
    }

    /// Substitutes univariate polynomials for `x` and `y`.
    pub fn substitute(&self, x: &UniPoly, y: &UniPoly) -> UniPoly {
        let mut total = UniPoly::zero();
        for (&(a, b), c) in &self.terms {
            let term = (&x.pow(a) * &y.pow(b)).scale(c);
            total = &total + &term;
        }
        total
    }

    /// Stable JSON form: `[x power, y power, "coefficient"]` triples in ascending exponent order.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self.terms.iter().map(|(&(a, b), c)| json!([a, b, c.to_string()])).collect();
        json!({ "variables": ["x", "y"], "terms": terms, "text": self.to_string() })
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}

impl fmt::Display for BiPoly {
    /// Terms by descending `x` power, then descending `y` power: `x^2 + x + y`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&(a, b), c)) in self.terms.iter().rev().enumerate() {
            let mono = match (power("x", a), power("y", b)) {
                (px, py) if px.is_empty() => py,
                (px, py) if py.is_empty() => px,
                (px, py) => format!("{px}*{py}"),
            };
            write_term(f, i == 0, c, &mono)?;
        }
        Ok(())
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(a, b), c) in &rhs.terms {
            out.add_term(a, b, c.clone());
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(a, b), c) in &rhs.terms {
            out.add_term(a, b, -c);
        }
        out
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(a, b), c) in &self.terms {
            for (&(d, e), f) in &rhs.terms {
                out.add_term(a + d, b + e, c * f);
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly::from_terms(self.terms.iter().map(|(&e, c)| (e, -c)))
    }
}
