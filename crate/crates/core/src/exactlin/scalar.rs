use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ExactError;

/// An element of ℚ(i), kept exactly.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussianRational::new(BigRational::from_integer(re.into()), BigRational::from_integer(im.into()))
    }

    pub fn int(n: i64) -> Self {
        Self::from_ints(n, 0)
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|² = z · conj(z)`.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let d = self.norm_sqr();
        Some(GaussianRational::new(&self.re / &d, -&self.im / &d))
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        (self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::int(0)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::int(1)
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Div for &GaussianRational {
    type Output = GaussianRational;
    fn div(self, o: &GaussianRational) -> GaussianRational {
        self * &o.inv().expect("division by zero in Q(i)")
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: GaussianRational) -> GaussianRational {
                (&self).$m(&o)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::int(n)
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `3`, `-1/2`, `i`, `1+2i`, `1/2-i/3`.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_part = |q: &BigRational| -> String {
            let a = q.abs();
            if a.is_one() {
                "i".into()
            } else if a.is_integer() {
                format!("{}i", a.numer())
            } else if a.numer().is_one() {
                format!("i/{}", a.denom())
            } else {
                format!("{}i/{}", a.numer(), a.denom())
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(&self.re)),
            (true, false) => {
                let sign = if self.im.is_negative() { "-" } else { "" };
                write!(f, "{sign}{}", im_part(&self.im))
            }
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                write!(f, "{}{sign}{}", fmt_rational(&self.re), im_part(&self.im))
            }
        }
    }
}

/// Parses a rational `p`, `-p/q` or a decimal like `0.25`.
pub fn parse_rational(s: &str) -> Result<BigRational, ExactError> {
    let t = s.trim();
    let bad = || ExactError::Parse(format!("bad rational `{s}`"));
    if let Some((p, q)) = t.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((int, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let whole = BigInt::from_str(if int.is_empty() || int == "-" { "0" } else { int }).map_err(|_| bad())?;
        let scale = BigInt::from(10).pow(frac.len() as u32);
        let frac = BigRational::new(BigInt::from_str(frac).map_err(|_| bad())?, scale);
        let whole = BigRational::from_integer(whole);
        return Ok(if negative { whole - frac } else { whole + frac });
    }
    Ok(BigRational::from_integer(BigInt::from_str(t).map_err(|_| bad())?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn field_ops() {
        let z = GaussianRational::new(q("1/2"), q("-3"));
        let w = GaussianRational::from_ints(2, 1);
        assert_eq!(&(&z * &w) / &w, z);
        assert_eq!(&(&z + &w) - &w, z);
        assert_eq!(&z * &z.inv().unwrap(), GaussianRational::one());
        assert!(GaussianRational::zero().inv().is_none());
        assert_eq!(z.conj().conj(), z);
        let n = &z * &z.conj();
        assert!(n.im.is_zero());
        assert_eq!(n.re, z.norm_sqr());
    }

    #[test]
    fn display() {
        assert_eq!(GaussianRational::from_ints(3, 0).to_string(), "3");
        assert_eq!(GaussianRational::from_ints(0, -1).to_string(), "-i");
        assert_eq!(GaussianRational::from_ints(1, 2).to_string(), "1+2i");
        assert_eq!(GaussianRational::new(q("1/2"), q("-1/3")).to_string(), "1/2-i/3");
    }

    #[test]
    fn parsing() {
        assert_eq!(q("-1/2"), BigRational::new((-1).into(), 2.into()));
        assert_eq!(q("0.25"), BigRational::new(1.into(), 4.into()));
        assert_eq!(q("-1.5"), BigRational::new((-3).into(), 2.into()));
        assert_eq!(q(" 7 "), BigRational::from_integer(7.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
