//! Exact scalars, points and small dense linear algebra over the rationals.

use std::fmt;
use std::ops::{Add, Index, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Input(format!("invalid rational '{s}'")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Input(format!("invalid rational '{s}'")))?;
    if den.is_zero() {
        return Err(Error::Input(format!("zero denominator in '{s}'")));
    }
    Ok(Rational::new(num, den))
}

/// Renders a rational with `digits` digits after the decimal point, rounding half away from zero.
pub fn to_decimal(q: &Rational, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = q * Rational::from_integer(scale.clone());
    let rounded = scaled.round().to_integer();
    let neg = rounded.is_negative();
    let abs = rounded.abs();
    let (int_part, frac_part) = abs.div_rem(&scale);
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(&int_part.to_string());
    if digits > 0 {
        let frac = frac_part.to_string();
        out.push('.');
        out.push_str(&"0".repeat(digits - frac.len()));
        out.push_str(&frac);
    }
    out
}

pub(crate) fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(q)
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let mut acc: i64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i64 / (i + 1) as i64;
    }
    acc
}

/// A point of `Q^n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(pub Vec<Rational>);

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Point(coords)
    }

    pub fn origin(dim: usize) -> Self {
        Point(vec![Rational::zero(); dim])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&c| rat(c)).collect())
    }

    pub fn from_bigints(coords: &[BigInt]) -> Self {
        Point(coords.iter().cloned().map(Rational::from_integer).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_origin(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, lambda: &Rational) -> Point {
        Point(self.0.iter().map(|c| c * lambda).collect())
    }

    pub fn dot_int(&self, normal: &[BigInt]) -> Rational {
        self.0
            .iter()
            .zip(normal)
            .map(|(c, a)| c * Rational::from_integer(a.clone()))
            .fold(Rational::zero(), |acc, t| acc + t)
    }

    pub fn dot_i64(&self, normal: &[i64]) -> Rational {
        self.0
            .iter()
            .zip(normal)
            .fold(Rational::zero(), |acc, (c, &a)| acc + c * rat(a))
    }

    /// The point as a lattice vector, if every coordinate is an integer that fits in `i64`.
    pub fn to_lattice(&self) -> Option<Vec<i64>> {
        self.0
            .iter()
            .map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None })
            .collect()
    }

    /// Clears denominators: returns an integer vector `v` and positive `d` with `self = v / d`.
    pub fn to_homogeneous(&self) -> (Vec<BigInt>, BigInt) {
        let den = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let v = self
            .0
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        (v, den)
    }
}

impl Index<usize> for Point {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl Add for &Point {
    type Output = Point;
    fn add(self, rhs: &Point) -> Point {
        Point(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Point {
    type Output = Point;
    fn sub(self, rhs: &Point) -> Point {
        Point(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Mul<&Rational> for &Point {
    type Output = Point;
    fn mul(self, rhs: &Rational) -> Point {
        self.scale(rhs)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

pub(crate) fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

pub(crate) fn dot_i64(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Divides out the gcd of the entries; the zero vector is returned unchanged.
pub(crate) fn make_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

pub(crate) fn primitive_i64(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    if g <= 1 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

pub(crate) fn to_bigints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub(crate) fn to_i64s(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| x.to_i64().ok_or_else(|| Error::Overflow(x.to_string())))
        .collect()
}

/// Row-reduces a copy of `rows` and returns its rank.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    row_reduce(&mut m)
}

pub fn rank_int(rows: &[&[BigInt]]) -> usize {
    let m: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| r.iter().cloned().map(Rational::from_integer).collect())
        .collect();
    rank(&m)
}

/// Gaussian elimination to row echelon form in place; returns the rank.
fn row_reduce(m: &mut [Vec<Rational>]) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &m[r][c];
            for j in c..cols {
                let t = &f * &m[r][j];
                m[i][j] -= t;
            }
        }
        r += 1;
    }
    r
}

/// Determinant of a square matrix.
pub fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &m[c][c];
            for j in c..n {
                let t = &f * &m[c][j];
                m[i][j] -= t;
            }
        }
    }
    det
}

/// Solves `a x = b` for square nonsingular `a`.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(p, c);
        let pivot = m[c][c].clone();
        for j in c..=n {
            m[c][j] = &m[c][j] / &pivot;
        }
        for i in 0..n {
            if i == c || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..=n {
                let t = &f * &m[c][j];
                m[i][j] -= t;
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Affine rank of a point set (dimension of its affine hull), `-1` encoded as `None` for the empty set.
pub fn affine_rank(points: &[Point]) -> Option<usize> {
    let (first, rest) = points.split_first()?;
    let diffs: Vec<Vec<Rational>> = rest.iter().map(|p| (p - first).0).collect();
    Some(rank(&diffs))
}
