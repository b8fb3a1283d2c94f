//! Binary fixed-point reals `mantissa / 2^bits`, enough to carry square
//! roots of exact rationals at a chosen precision.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fixed {
    mantissa: BigInt,
    bits: u32,
}

impl Fixed {
    pub fn from_rational(x: &BigRational, bits: u32) -> Fixed {
        let mantissa = (x.numer() << bits) / x.denom();
        Fixed { mantissa, bits }
    }

    /// `floor(sqrt(x) · 2^bits) / 2^bits` for `x ≥ 0`.
    pub fn sqrt_rational(x: &BigRational, bits: u32) -> Fixed {
        assert!(!x.is_negative(), "square root of a negative rational");
        let scaled: BigInt = (x.numer() << (2 * bits)) / x.denom();
        Fixed {
            mantissa: scaled.sqrt(),
            bits,
        }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn to_f64(&self) -> f64 {
        let excess = self.mantissa.bits().saturating_sub(60);
        let top = (&self.mantissa >> excess).to_f64().unwrap_or(f64::NAN);
        top * 2f64.powi(excess as i32 - self.bits as i32)
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.mantissa.clone(), BigInt::from(1) << self.bits)
    }

    pub fn add(&self, o: &Fixed) -> Fixed {
        assert_eq!(self.bits, o.bits);
        Fixed {
            mantissa: &self.mantissa + &o.mantissa,
            bits: self.bits,
        }
    }

    /// Decimal expansion truncated to `digits` places.
    pub fn to_decimal(&self, digits: usize) -> String {
        let neg = self.mantissa.is_negative();
        let mag = self.mantissa.abs();
        let int = &mag >> self.bits;
        let frac = &mag - (&int << self.bits);
        let scaled = (frac * num_traits::pow(BigInt::from(10), digits)) >> self.bits;
        let mut s = String::new();
        if neg && !(int.is_zero() && scaled.is_zero()) {
            s.push('-');
        }
        if digits == 0 {
            s.push_str(&int.to_string());
        } else {
            s.push_str(&format!("{int}.{scaled:0>digits$}", scaled = scaled.to_string()));
        }
        s
    }
}

impl fmt::Display for Fixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(((self.bits as f64) * std::f64::consts::LOG10_2) as usize);
        f.write_str(&self.to_decimal(digits))
    }
}
