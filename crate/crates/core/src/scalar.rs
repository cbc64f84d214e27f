//! Exact arithmetic in Q(i): complex numbers with rational real and imaginary
//! parts. This is the coefficient field for every polynomial in the crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

/// An element of Q(i). Both parts are kept in lowest terms with positive
/// denominators by the underlying `BigRational`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        GaussianRational::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        GaussianRational::new(BigRational::one(), BigRational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational::new(
            BigRational::from_integer(BigInt::from(n)),
            BigRational::zero(),
        )
    }

    /// Exact rational n/d. Panics if d == 0.
    pub fn from_ratio(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        GaussianRational::new(
            BigRational::new(BigInt::from(n), BigInt::from(d)),
            BigRational::zero(),
        )
    }

    pub fn from_real(re: BigRational) -> Self {
        GaussianRational::new(re, BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_imaginary(&self) -> bool {
        self.re.is_zero() && !self.im.is_zero()
    }

    /// Complex conjugate: a + bi -> a - bi.
    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    /// |x|^2 = a^2 + b^2, an exact nonnegative rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inverse(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        let n = self.norm_sqr();
        GaussianRational::new(&self.re / &n, -(&self.im / &n))
    }

    /// Lossy conversion for the float probe; exact layer never calls this.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        GaussianRational::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl<'a> Add<&'a GaussianRational> for GaussianRational {
    type Output = Self;
    fn add(self, rhs: &'a GaussianRational) -> Self {
        GaussianRational::new(self.re + &rhs.re, self.im + &rhs.im)
    }
}

impl AddAssign for GaussianRational {
    fn add_assign(&mut self, rhs: Self) {
        self.re += rhs.re;
        self.im += rhs.im;
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        GaussianRational::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl SubAssign for GaussianRational {
    fn sub_assign(&mut self, rhs: Self) {
        self.re -= rhs.re;
        self.im -= rhs.im;
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<'b> Mul<&'b GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &'b GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl MulAssign for GaussianRational {
    fn mul_assign(&mut self, rhs: Self) {
        *self = &*self * &rhs;
    }
}

impl Div for GaussianRational {
    type Output = Self;
    // Field division is multiplication by the inverse.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        &self * &rhs.inverse()
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        GaussianRational::new(-self.re, -self.im)
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussianRational {
    /// Canonical forms: "3", "-1/2", "i", "-i", "2/3*i", "(1+2*i)", "(1-1/2*i)".
    /// Every form is accepted back by the expression parser.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rational(&self.re));
        }
        let im_part = |im: &BigRational| -> String {
            if im.is_one() {
                "i".to_string()
            } else if (-im).is_one() {
                "-i".to_string()
            } else {
                format!("{}*i", fmt_rational(im))
            }
        };
        if self.re.is_zero() {
            return write!(f, "{}", im_part(&self.im));
        }
        if self.im.is_positive() {
            write!(f, "({}+{})", fmt_rational(&self.re), im_part(&self.im))
        } else {
            write!(f, "({}{})", fmt_rational(&self.re), im_part(&self.im))
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn g(re: (i64, i64), im: (i64, i64)) -> GaussianRational {
        GaussianRational::new(q(re.0, re.1), q(im.0, im.1))
    }

    #[test]
    fn hand_checked_products() {
        // (1+2i)(3-i) = 3 - i + 6i - 2i^2 = 5 + 5i
        let a = g((1, 1), (2, 1));
        let b = g((3, 1), (-1, 1));
        assert_eq!(a * b, g((5, 1), (5, 1)));
        // i^2 = -1
        assert_eq!(
            GaussianRational::i() * GaussianRational::i(),
            GaussianRational::from_int(-1)
        );
        // (1/2 + 1/3 i)(1/2 - 1/3 i) = 1/4 + 1/9 = 13/36
        let c = g((1, 2), (1, 3));
        assert_eq!(c.clone() * c.conj(), g((13, 36), (0, 1)));
    }

    #[test]
    fn inverse_against_hand_value() {
        // (3+4i)^-1 = (3-4i)/25
        let a = g((3, 1), (4, 1));
        assert_eq!(a.inverse(), g((3, 25), (-4, 25)));
        assert!((a.clone() * a.inverse()).is_one());
    }

    #[test]
    fn display_forms() {
        assert_eq!(g((3, 1), (0, 1)).to_string(), "3");
        assert_eq!(g((-1, 2), (0, 1)).to_string(), "-1/2");
        assert_eq!(g((0, 1), (1, 1)).to_string(), "i");
        assert_eq!(g((0, 1), (-1, 1)).to_string(), "-i");
        assert_eq!(g((0, 1), (2, 3)).to_string(), "2/3*i");
        assert_eq!(g((1, 1), (2, 1)).to_string(), "(1+2*i)");
        assert_eq!(g((1, 1), (-1, 2)).to_string(), "(1-1/2*i)");
    }

    fn random_scalar(rng: &mut ChaCha8Rng) -> GaussianRational {
        let part = |rng: &mut ChaCha8Rng| {
            let n = rng.gen_range(-9_i64..=9);
            let d = rng.gen_range(1_i64..=4);
            q(n, d)
        };
        GaussianRational::new(part(rng), part(rng))
    }

    /// Field axioms on 1000 random Gaussian rationals, fixed seed.
    #[test]
    fn field_axioms_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5EC2E);
        for _ in 0..1000 {
            let a = random_scalar(&mut rng);
            let b = random_scalar(&mut rng);
            let c = random_scalar(&mut rng);
            assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
            assert_eq!(&a * &b, &b * &a);
            assert_eq!(&(a.clone() + b.clone()) * &c, (&a * &c) + (&b * &c));
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            assert_eq!((a.clone() * b.clone()).conj(), a.conj() * b.conj());
            if !a.is_zero() {
                assert!((a.clone() * a.inverse()).is_one());
            }
            // conj is an involution and norm_sqr = a * conj(a)
            assert_eq!(a.conj().conj(), a);
            assert_eq!((a.clone() * a.conj()).re, a.norm_sqr());
        }
    }
}
