//! Tableau scalar: a reduced fraction kept in machine words while it fits,
//! promoted to `BigRational` on any overflow. Every operation is exact.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug)]
pub(crate) enum Rat {
    /// `num / den` with `den > 0`, `gcd(num, den) = 1`, and `num != i64::MIN`.
    Small(i64, i64),
    Big(Box<BigRational>),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

impl Rat {
    pub fn zero() -> Self {
        Rat::Small(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Rat::Small(n, _) => *n == 0,
            Rat::Big(b) => b.is_zero(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Rat::Small(n, _) => *n < 0,
            Rat::Big(b) => b.is_negative(),
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Rat::Small(n, _) => *n > 0,
            Rat::Big(b) => b.is_positive(),
        }
    }

    /// Builds a reduced value from an `i128` fraction with nonzero denominator.
    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
        if num == 0 {
            return Rat::Small(0, 1);
        }
        let g = gcd_u128(num.unsigned_abs(), den as u128) as i128;
        if g > 1 {
            num /= g;
            den /= g;
        }
        match (i64::try_from(num), i64::try_from(den)) {
            (Ok(n), Ok(d)) if n != i64::MIN => Rat::Small(n, d),
            _ => Rat::Big(Box::new(BigRational::new_raw(BigInt::from(num), BigInt::from(den)))),
        }
    }

    fn from_big(b: BigRational) -> Self {
        match (b.numer().to_i64(), b.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN => Rat::Small(n, d),
            _ => Rat::Big(Box::new(b)),
        }
    }

    pub fn from_q(q: &BigRational) -> Self {
        Self::from_big(q.clone())
    }

    pub fn to_q(&self) -> BigRational {
        match self {
            Rat::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rat::Big(b) => (**b).clone(),
        }
    }

    fn big(&self) -> BigRational {
        self.to_q()
    }

    pub fn mul(&self, other: &Rat) -> Rat {
        match (self, other) {
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                if *a == 0 || *c == 0 {
                    return Rat::zero();
                }
                Rat::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Rat::from_big(self.big() * other.big()),
        }
    }

    pub fn div(&self, other: &Rat) -> Rat {
        match (self, other) {
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                debug_assert!(*c != 0);
                Rat::from_i128(*a as i128 * *d as i128, *b as i128 * *c as i128)
            }
            _ => Rat::from_big(self.big() / other.big()),
        }
    }

    pub fn recip(&self) -> Rat {
        match self {
            Rat::Small(n, d) => {
                if *n < 0 {
                    Rat::Small(-*d, -*n)
                } else {
                    Rat::Small(*d, *n)
                }
            }
            Rat::Big(b) => Rat::from_big(b.recip()),
        }
    }

    pub fn add(&self, other: &Rat) -> Rat {
        match (self, other) {
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                if *b == *d {
                    return Rat::from_i128(*a as i128 + *c as i128, *b as i128);
                }
                let num = *a as i128 * *d as i128 + *c as i128 * *b as i128;
                Rat::from_i128(num, *b as i128 * *d as i128)
            }
            _ => Rat::from_big(self.big() + other.big()),
        }
    }

    pub fn neg(&self) -> Rat {
        match self {
            Rat::Small(n, d) => Rat::Small(-*n, *d),
            Rat::Big(b) => Rat::from_big(-(**b).clone()),
        }
    }

    /// `self - f * y`, the tableau update kernel.
    pub fn sub_mul(&self, f: &Rat, y: &Rat) -> Rat {
        if let (Rat::Small(a, b), Rat::Small(fc, fd), Rat::Small(yc, yd)) = (self, f, y) {
            // a/b - (fc*yc)/(fd*yd) with every factor below 2^63
            let pn = *fc as i128 * *yc as i128;
            let pd = *fd as i128 * *yd as i128;
            let g = gcd_u128(pn.unsigned_abs(), pd as u128) as i128;
            let (pn, pd) = if g > 1 { (pn / g, pd / g) } else { (pn, pd) };
            if *a == 0 {
                return Rat::from_i128(-pn, pd);
            }
            if let Some(num) = (*a as i128)
                .checked_mul(pd)
                .and_then(|l| pn.checked_mul(*b as i128).and_then(|r| l.checked_sub(r)))
            {
                if let Some(den) = (*b as i128).checked_mul(pd) {
                    return Rat::from_i128(num, den);
                }
            }
            let lhs = BigRational::new_raw(BigInt::from(*a), BigInt::from(*b));
            let prod = BigRational::new(BigInt::from(pn), BigInt::from(pd));
            return Rat::from_big(lhs - prod);
        }
        Rat::from_big(self.big() - f.big() * y.big())
    }

    pub fn cmp(&self, other: &Rat) -> Ordering {
        match (self, other) {
            (Rat::Small(a, b), Rat::Small(c, d)) => (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128)),
            _ => self.big().cmp(&other.big()),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Rat::Small(n, d) => *n == 1 && *d == 1,
            Rat::Big(b) => b.is_one(),
        }
    }
}

impl PartialEq for Rat {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
