//! Exact scalar arithmetic: arbitrary-precision rationals and Gaussian
//! rationals, plus a small exact linear solver used by the basis-expansion
//! routines.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use crate::error::{HermlagError, Result};

/// Exact rational scalar.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parse "p/q" or "p" into an exact rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| HermlagError::Parse(format!("bad rational numerator: {s}")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| HermlagError::Parse(format!("bad rational denominator: {s}")))?;
    if d.is_zero() {
        return Err(HermlagError::Parse(format!("zero denominator: {s}")));
    }
    Ok(Rat::new(n, d))
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64()
        .unwrap_or_else(|| r.numer().to_f64().unwrap() / r.denom().to_f64().unwrap())
}

/// Render as "p" or "p/q" in lowest terms.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Gaussian rational: re + im*i with exact rational parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussRat { re, im }
    }

    pub fn from_rat(re: Rat) -> Self {
        GaussRat {
            re,
            im: Rat::zero(),
        }
    }

    pub fn from_i64(n: i64) -> Self {
        GaussRat::from_rat(rat(n))
    }

    pub fn zero() -> Self {
        GaussRat::from_i64(0)
    }

    pub fn one() -> Self {
        GaussRat::from_i64(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussRat::new(Rat::zero(), Rat::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat::new(self.re.clone(), -self.im.clone())
    }

    /// Squared modulus, an exact rational.
    pub fn norm_sq(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm_sq();
        if n.is_zero() {
            return Err(HermlagError::Domain("division by zero".into()));
        }
        Ok(GaussRat::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn to_complex(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", rat_to_string(&self.re))
        } else if self.re.is_zero() {
            write!(f, "{}i", rat_to_string(&self.im))
        } else if self.im.is_negative() {
            write!(
                f,
                "{}{}i",
                rat_to_string(&self.re),
                rat_to_string(&self.im)
            )
        } else {
            write!(
                f,
                "{}+{}i",
                rat_to_string(&self.re),
                rat_to_string(&self.im)
            )
        }
    }
}

impl Add for &GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div for &GaussRat {
    type Output = GaussRat;
    fn div(self, rhs: &GaussRat) -> GaussRat {
        self * &rhs.inv().expect("division by zero GaussRat")
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-self.re.clone(), -self.im.clone())
    }
}

impl AddAssign<&GaussRat> for GaussRat {
    fn add_assign(&mut self, rhs: &GaussRat) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

/// Solve the (possibly overdetermined, exactly consistent) system A c = b
/// over the Gaussian rationals by fraction-free-ish Gaussian elimination.
///
/// Returns the unique solution, or an error when the system is singular or
/// inconsistent.
pub fn solve_exact(a: &[Vec<GaussRat>], b: &[GaussRat]) -> Result<Vec<GaussRat>> {
    let rows = a.len();
    if rows != b.len() {
        return Err(HermlagError::Dimension("solve: rows != rhs length".into()));
    }
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Vec<Vec<GaussRat>> = a.to_vec();
    let mut rhs: Vec<GaussRat> = b.to_vec();

    let mut pivot_row_of_col = vec![usize::MAX; cols];
    let mut row = 0usize;
    for col in 0..cols {
        // find a pivot
        let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        rhs.swap(row, p);
        let inv = m[row][col].inv().unwrap();
        for c in col..cols {
            m[row][c] = &m[row][c] * &inv;
        }
        rhs[row] = &rhs[row] * &inv;
        for r in 0..rows {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..cols {
                    let t = &factor * &m[row][c];
                    m[r][c] = &m[r][c] - &t;
                }
                let t = &factor * &rhs[row];
                rhs[r] = &rhs[r] - &t;
            }
        }
        pivot_row_of_col[col] = row;
        row += 1;
        if row == rows {
            break;
        }
    }

    // every column must have a pivot for uniqueness
    if pivot_row_of_col.iter().any(|&p| p == usize::MAX) {
        return Err(HermlagError::Solve("singular system".into()));
    }
    // remaining rows must be consistent
    for r in row..rows {
        if !rhs[r].is_zero() {
            return Err(HermlagError::Solve("inconsistent system".into()));
        }
    }

    let mut sol = vec![GaussRat::zero(); cols];
    for (col, &pr) in pivot_row_of_col.iter().enumerate() {
        sol[col] = rhs[pr].clone();
    }
    Ok(sol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_roundtrip() {
        let r = parse_rat("7/2").unwrap();
        assert_eq!(rat_to_string(&r), "7/2");
        assert_eq!(parse_rat("-3").unwrap(), rat(-3));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("abc").is_err());
    }

    #[test]
    fn gauss_arithmetic() {
        let i = GaussRat::i();
        assert_eq!(&i * &i, GaussRat::from_i64(-1));
        let z = GaussRat::new(rat(1), rat(2));
        let w = &z * &z.conj();
        assert_eq!(w, GaussRat::from_i64(5));
        assert_eq!(&z * &z.inv().unwrap(), GaussRat::one());
    }

    #[test]
    fn solve_2x2() {
        // x + y = 3, x - y = 1  =>  x = 2, y = 1
        let a = vec![
            vec![GaussRat::one(), GaussRat::one()],
            vec![GaussRat::one(), GaussRat::from_i64(-1)],
        ];
        let b = vec![GaussRat::from_i64(3), GaussRat::one()];
        let sol = solve_exact(&a, &b).unwrap();
        assert_eq!(sol[0], GaussRat::from_i64(2));
        assert_eq!(sol[1], GaussRat::one());
    }

    #[test]
    fn solve_overdetermined_consistent_and_inconsistent() {
        let a = vec![
            vec![GaussRat::one()],
            vec![GaussRat::from_i64(2)],
        ];
        let b_ok = vec![GaussRat::from_i64(3), GaussRat::from_i64(6)];
        assert_eq!(solve_exact(&a, &b_ok).unwrap()[0], GaussRat::from_i64(3));
        let b_bad = vec![GaussRat::from_i64(3), GaussRat::from_i64(7)];
        assert!(solve_exact(&a, &b_bad).is_err());
    }
}
