//! Exact univariate integer polynomials in `q`.
//!
//! The parser accepts the notation used for branching-table entries:
//! integers, the variable `q`, parentheses, `^` with a plain or braced
//! exponent, and multiplication written as juxtaposition, `*` or `.`.
//! Whitespace is ignored and the Unicode minus sign is read as `-`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Integer polynomial with coefficients in ascending degree order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> IntPolynomial {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> IntPolynomial {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> IntPolynomial {
        IntPolynomial::constant(1)
    }

    pub fn constant(c: i64) -> IntPolynomial {
        IntPolynomial::new(vec![BigInt::from(c)])
    }

    /// The polynomial `q`.
    pub fn var() -> IntPolynomial {
        IntPolynomial::from_i64s(&[0, 1])
    }

    /// `c q^k`.
    pub fn monomial(c: BigInt, k: usize) -> IntPolynomial {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        IntPolynomial::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, q: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * q + c)
    }

    pub fn eval_u64(&self, q: u64) -> BigInt {
        self.eval(&BigInt::from(q))
    }

    pub fn eval_rational(&self, q: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| {
            acc * q + BigRational::from_integer(c.clone())
        })
    }

    pub fn pow(&self, e: u32) -> IntPolynomial {
        let mut out = IntPolynomial::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigInt::zero();
        IntPolynomial::new(
            (0..len)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
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
        IntPolynomial::new(out)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        -&self
    }
}

impl Zero for IntPolynomial {
    fn zero() -> Self {
        IntPolynomial::zero()
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for IntPolynomial {
    fn one() -> Self {
        IntPolynomial::one()
    }
}

impl From<i64> for IntPolynomial {
    fn from(c: i64) -> Self {
        IntPolynomial::constant(c)
    }
}

/// Renders as e.g. `q^4 - 6q^3 + 11q^2 - 6q`.
impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
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
            if k == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("q")?,
                _ => write!(f, "q^{k}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for IntPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Largest exponent the parser accepts after `^`.
pub const MAX_EXPONENT: u32 = 256;
const MAX_NESTING: usize = 64;

/// Parses a polynomial expression in `q`.
pub fn parse(input: &str) -> Result<IntPolynomial> {
    let mut p = Parser {
        src: input.as_bytes(),
        pos: 0,
        depth: 0,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    depth: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> Error {
        Error::PolyParse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    /// Next significant character with its encoded length; `−` maps to `-`.
    fn peek(&mut self) -> Option<(u8, usize)> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        if rest.starts_with("\u{2212}".as_bytes()) {
            return Some((b'-', 3));
        }
        rest.first().map(|&c| (c, 1))
    }

    fn bump(&mut self, len: usize) {
        self.pos += len;
    }

    fn expr(&mut self) -> Result<IntPolynomial> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return Err(self.error("nesting too deep"));
        }
        let mut acc = IntPolynomial::zero();
        let mut sign = match self.peek() {
            Some((b'-', l)) => {
                self.bump(l);
                -1
            }
            Some((b'+', l)) => {
                self.bump(l);
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some((b'+', l)) => {
                    self.bump(l);
                    sign = 1;
                }
                Some((b'-', l)) => {
                    self.bump(l);
                    sign = -1;
                }
                _ => break,
            }
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<IntPolynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some((b'*' | b'.', l)) => {
                    self.bump(l);
                    acc = &acc * &self.factor()?;
                }
                Some((c, _)) if c == b'(' || c == b'q' || c.is_ascii_digit() => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<IntPolynomial> {
        let base = self.primary()?;
        if let Some((b'^', l)) = self.peek() {
            self.bump(l);
            let e = match self.peek() {
                Some((b'{', l)) => {
                    self.bump(l);
                    let e = self.exponent()?;
                    self.expect(b'}')?;
                    e
                }
                Some((b'(', l)) => {
                    self.bump(l);
                    let e = self.exponent()?;
                    self.expect(b')')?;
                    e
                }
                _ => self.exponent()?,
            };
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some((x, l)) if x == c => {
                self.bump(l);
                Ok(())
            }
            _ => Err(self.error(&format!("expected '{}'", c as char))),
        }
    }

    fn digits(&mut self) -> Option<&'a [u8]> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let src: &'a [u8] = self.src;
        (self.pos > start).then(|| &src[start..self.pos])
    }

    fn exponent(&mut self) -> Result<u32> {
        let start = self.pos;
        let d = self.digits().ok_or_else(|| self.error("expected exponent"))?;
        let e = std::str::from_utf8(d)
            .ok()
            .and_then(|s| s.parse::<u32>().ok())
            .filter(|&e| e <= MAX_EXPONENT);
        e.ok_or(Error::PolyParse {
            pos: start,
            msg: format!("exponent exceeds {MAX_EXPONENT}"),
        })
    }

    fn primary(&mut self) -> Result<IntPolynomial> {
        match self.peek() {
            Some((b'q', l)) => {
                self.bump(l);
                Ok(IntPolynomial::var())
            }
            Some((b'(', l)) => {
                self.bump(l);
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some((c, _)) if c.is_ascii_digit() => {
                let d = self.digits().expect("peeked a digit");
                let n = BigInt::parse_bytes(d, 10).expect("ascii digits");
                Ok(IntPolynomial::new(vec![n]))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// Convenience for literal tables; panics on malformed input.
pub fn p(s: &str) -> IntPolynomial {
    parse(s).unwrap_or_else(|e| panic!("bad polynomial literal {s:?}: {e}"))
}

/// `num / den` as an exact rational at `q`; `None` if the denominator vanishes.
pub fn eval_fraction(num: &IntPolynomial, den: &IntPolynomial, q: u64) -> Option<BigRational> {
    let d = den.eval_u64(q);
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(num.eval_u64(q), d))
}

/// Lagrange interpolation through `(x_i, y_i)` over the rationals. Returns
/// coefficients in ascending degree order.
pub fn interpolate(points: &[(BigInt, BigInt)]) -> Vec<BigRational> {
    let n = points.len();
    let mut out = vec![BigRational::zero(); n];
    for (i, (xi, yi)) in points.iter().enumerate() {
        // basis polynomial prod_{j != i} (x - x_j) / (x_i - x_j)
        let mut basis: Vec<BigRational> = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * BigRational::from_integer(xj.clone());
            }
            basis = next;
            denom *= BigRational::from_integer(xi - xj);
        }
        let scale = BigRational::from_integer(yi.clone()) / denom;
        for (k, c) in basis.into_iter().enumerate() {
            out[k] += c * &scale;
        }
    }
    while out.len() > 1 && out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}

/// Integer polynomial from rational coefficients, if all are integral.
pub fn integral(coeffs: &[BigRational]) -> Option<IntPolynomial> {
    coeffs
        .iter()
        .map(|c| c.is_integer().then(|| c.to_integer()))
        .collect::<Option<Vec<_>>>()
        .map(IntPolynomial::new)
}

/// `|G|` as a polynomial: `(q-1)^n q^(n(n-1)/2)` for GT, `q^(n(n-1)/2)` for UT.
pub fn group_order_poly(family: crate::Family, n: usize) -> IntPolynomial {
    let q = IntPolynomial::var();
    let unip = q.pow((n * (n - 1) / 2) as u32);
    match family {
        crate::Family::Gt => &unip * &(&q - &IntPolynomial::one()).pow(n as u32),
        crate::Family::Ut => unip,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_table_notation() {
        let cases = [
            ("q^{4} - 6 q^{3} +11 q^{2} - 6 q", vec![0, -6, 11, -6, 1]),
            ("(3q-3).(q-2)", vec![6, -9, 3]),
            ("q(q-1)^2", vec![0, 1, -2, 1]),
            ("2(q^2-q)(q-2)", vec![0, 4, -6, 2]),
            ("(q^2-1)(q-1)^2", vec![-1, 2, 0, -2, 1]),
            ("q − 1", vec![-1, 1]),
            ("-q", vec![0, -1]),
            ("0", vec![]),
            ("q^(3) * 2", vec![0, 0, 0, 2]),
        ];
        for (s, c) in cases {
            assert_eq!(parse(s).unwrap(), IntPolynomial::from_i64s(&c), "{s}");
        }
    }

    #[test]
    fn reports_parse_positions() {
        for (s, pos) in [("q +", 3), ("q ^ x", 4), ("(q - 1", 6), ("q $", 2), ("", 0), ("q)", 1)] {
            match parse(s) {
                Err(Error::PolyParse { pos: p, .. }) => assert_eq!(p, pos, "{s}"),
                other => panic!("{s}: {other:?}"),
            }
        }
        assert!(parse("q^999").is_err());
        assert!(parse(&"(".repeat(200)).is_err());
    }

    #[test]
    fn evaluation_matches_factored_form() {
        let e = p("q^{4} - 6 q^{3} +11 q^{2} - 6 q");
        assert_eq!(e.eval_u64(5), BigInt::from(120));
        assert_eq!(p("q^2-1").eval_u64(3), BigInt::from(8));
        assert_eq!(IntPolynomial::zero().eval_u64(17), BigInt::zero());
    }

    #[test]
    fn display_round_trip() {
        for s in ["q^4 - 6q^3 + 11q^2 - 6q", "-q + 1", "0", "7", "-2q^5 + q^2 - 1"] {
            let poly = p(s);
            assert_eq!(poly.to_string(), s);
            assert_eq!(p(&poly.to_string()), poly);
        }
    }

    #[test]
    fn interpolation_recovers_polynomials() {
        let target = p("(q-1)(q-2)");
        let pts: Vec<(BigInt, BigInt)> = [3u64, 5, 7]
            .iter()
            .map(|&x| (BigInt::from(x), target.eval_u64(x)))
            .collect();
        assert_eq!(integral(&interpolate(&pts)).unwrap(), target);
        let half: Vec<(BigInt, BigInt)> = vec![(1.into(), 0.into()), (3.into(), 1.into())];
        assert!(integral(&interpolate(&half)).is_none());
    }

    #[test]
    fn group_orders() {
        assert_eq!(
            group_order_poly(crate::Family::Gt, 3).eval_u64(7),
            BigInt::from(6u64.pow(3) * 343)
        );
        assert_eq!(
            group_order_poly(crate::Family::Ut, 5).eval_u64(3),
            BigInt::from(3u64.pow(10))
        );
    }

    fn poly_strategy() -> impl Strategy<Value = IntPolynomial> {
        prop::collection::vec(-50i64..50, 0..6).prop_map(|c| IntPolynomial::from_i64s(&c))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a - &a, IntPolynomial::zero());
            prop_assert_eq!(&a * &IntPolynomial::one(), a.clone());
        }

        #[test]
        fn eval_is_a_homomorphism(a in poly_strategy(), b in poly_strategy(), x in -20i64..20) {
            let x = BigInt::from(x);
            prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
            prop_assert_eq!((&a + &b).eval(&x), a.eval(&x) + b.eval(&x));
        }

        #[test]
        fn display_parses_back(a in poly_strategy()) {
            prop_assert_eq!(parse(&a.to_string()).unwrap(), a);
        }

        #[test]
        fn parser_never_panics(s in "[q0-9()+\\-*.^{} ]{0,40}") {
            let _ = parse(&s);
        }
    }
}
