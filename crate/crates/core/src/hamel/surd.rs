//! Continued fractions of quadratic surds, computed exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Result};

/// The real number `(p + √d)/q` with `d > 0` not a perfect square.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticSurd {
    p: BigInt,
    d: BigInt,
    q: BigInt,
}

impl QuadraticSurd {
    pub fn new(p: BigInt, d: BigInt, q: BigInt) -> Result<Self> {
        if q.is_zero() {
            return Err(domain("surd denominator must be nonzero"));
        }
        if !d.is_positive() {
            return Err(domain("surd radicand must be positive"));
        }
        let root = d.sqrt();
        if &root * &root == d {
            return Err(domain(format!("radicand {d} is a perfect square")));
        }
        Ok(QuadraticSurd { p, d, q })
    }

    /// `√n`.
    pub fn sqrt(n: u64) -> Result<Self> {
        QuadraticSurd::new(BigInt::zero(), BigInt::from(n), BigInt::one())
    }

    /// `k·√n` for a nonzero rational `k`.
    pub fn scaled_sqrt(k: &BigRational, n: &BigInt) -> Result<Self> {
        if k.is_zero() {
            return Err(domain("scale must be nonzero"));
        }
        let (u, v) = (k.numer().clone(), k.denom().clone());
        let d = &u * &u * n;
        let q = if u.is_positive() { v } else { -v };
        QuadraticSurd::new(BigInt::zero(), d, q)
    }

    /// The first `n` partial quotients `[a₀; a₁, a₂, …]`.
    pub fn partial_quotients(&self, n: usize) -> Vec<BigInt> {
        let (mut p, mut d, mut q) = (self.p.clone(), self.d.clone(), self.q.clone());
        // the recurrence needs q | d − p²
        if !(&d - &p * &p).is_multiple_of(&q) {
            let aq = q.abs();
            p *= &aq;
            d *= &q * &q;
            q *= &aq;
        }
        let s = d.sqrt();
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            let a = if q.is_positive() {
                (&p + &s).div_floor(&q)
            } else {
                (-&p - &s - BigInt::one()).div_floor(&-&q)
            };
            p = &a * &q - &p;
            q = (&d - &p * &p) / &q;
            out.push(a);
        }
        out
    }

    pub fn value(&self) -> f64 {
        use num_traits::ToPrimitive;
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        (self.p.to_f64().unwrap_or(f64::NAN) + d.sqrt()) / self.q.to_f64().unwrap_or(f64::NAN)
    }
}

/// Convergents `p_k/q_k` of `[a₀; a₁, …]`, starting with `a₀`.
pub fn convergents(partial: &[BigInt]) -> Vec<BigRational> {
    let (mut p_prev, mut p) = (BigInt::zero(), BigInt::one());
    let (mut q_prev, mut q) = (BigInt::one(), BigInt::zero());
    partial
        .iter()
        .map(|a| {
            let p_next = a * &p + &p_prev;
            let q_next = a * &q + &q_prev;
            p_prev = std::mem::replace(&mut p, p_next);
            q_prev = std::mem::replace(&mut q, q_next);
            BigRational::new(p.clone(), q.clone())
        })
        .collect()
}

/// The first `count` convergents of `√n`.
pub fn sqrt_convergents(n: u64, count: usize) -> Result<Vec<BigRational>> {
    Ok(convergents(&QuadraticSurd::sqrt(n)?.partial_quotients(count)))
}

/// Partial quotients of a float, stopping early once the remainder vanishes.
pub fn float_partial_quotients(x: f64, count: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(count);
    let mut y = x;
    for _ in 0..count {
        let a = y.floor();
        out.push(BigInt::from(a as i64));
        let frac = y - a;
        if frac.abs() < 1e-12 {
            break;
        }
        y = 1.0 / frac;
        if !y.is_finite() || y.abs() > 1e15 {
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn sqrt_two_convergents() {
        let cs = sqrt_convergents(2, 20).unwrap();
        assert_eq!(&cs[..5], &[r(1, 1), r(3, 2), r(7, 5), r(17, 12), r(41, 29)]);
        assert_eq!(cs[19], r(22619537, 15994428));
        // p² − 2q² = ±1 alternating
        for (k, c) in cs.iter().enumerate() {
            let lhs = c.numer() * c.numer() - BigInt::from(2) * c.denom() * c.denom();
            let expected = if k % 2 == 0 { -1 } else { 1 };
            assert_eq!(lhs, BigInt::from(expected));
        }
    }

    #[test]
    fn periodic_expansions() {
        let a: Vec<i64> = QuadraticSurd::sqrt(7)
            .unwrap()
            .partial_quotients(9)
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect();
        assert_eq!(a, vec![2, 1, 1, 1, 4, 1, 1, 1, 4]);
        // golden ratio (1 + √5)/2 = [1; 1, 1, …]
        let phi = QuadraticSurd::new(1.into(), 5.into(), 2.into()).unwrap();
        assert!(phi.partial_quotients(12).iter().all(|x| x == &BigInt::one()));
    }

    #[test]
    fn scaled_and_negative_surds() {
        // √2/2 = [0; 1, 2, 2, …]
        let half = QuadraticSurd::scaled_sqrt(&r(1, 2), &2.into()).unwrap();
        let a: Vec<i64> = half
            .partial_quotients(5)
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect();
        assert_eq!(a, vec![0, 1, 2, 2, 2]);
        // −√2 = [−2; 1, 1, 2, 2, …]
        let neg = QuadraticSurd::scaled_sqrt(&r(-1, 1), &2.into()).unwrap();
        let a: Vec<i64> = neg
            .partial_quotients(5)
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect();
        assert_eq!(a, vec![-2, 1, 1, 2, 2]);
        assert!((neg.value() + 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn square_radicand_rejected() {
        assert!(QuadraticSurd::sqrt(9).is_err());
    }

    #[test]
    fn float_expansion_matches_exact_prefix() {
        let f = float_partial_quotients(2f64.sqrt(), 10);
        let e = QuadraticSurd::sqrt(2).unwrap().partial_quotients(10);
        assert_eq!(f, e);
        assert_eq!(
            float_partial_quotients(1.75, 10),
            vec![BigInt::from(1), 1.into(), 3.into()]
        );
    }
}
