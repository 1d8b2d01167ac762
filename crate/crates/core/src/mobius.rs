//! Fractional-linear maps `x -> (a x + b) / (c x + d)` over the coefficient
//! field, acting on `P^1`.

use std::fmt;

use kummer_field::{RationalFunction, Var};

use crate::error::TorsorError;
use crate::legendre::P1Point;

#[derive(Clone, Debug)]
pub struct MobiusMap {
    a: RationalFunction,
    b: RationalFunction,
    c: RationalFunction,
    d: RationalFunction,
}

type Rf = RationalFunction;

impl MobiusMap {
    pub fn new(a: Rf, b: Rf, c: Rf, d: Rf) -> Result<Self, TorsorError> {
        if (&(&a * &d) - &(&b * &c)).is_zero() {
            return Err(TorsorError::Degenerate);
        }
        Ok(MobiusMap { a, b, c, d })
    }

    pub fn identity() -> Self {
        Self::scaling(Rf::one())
    }

    /// `x -> k x`.
    pub fn scaling(k: Rf) -> Self {
        assert!(!k.is_zero(), "zero scaling");
        MobiusMap { a: k, b: Rf::zero(), c: Rf::zero(), d: Rf::one() }
    }

    /// `x -> x + k`.
    pub fn translation(k: Rf) -> Self {
        MobiusMap { a: Rf::one(), b: k, c: Rf::zero(), d: Rf::one() }
    }

    pub fn coefficients(&self) -> [&Rf; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    /// Sends `z1 -> 0`, `z2 -> 1`, `z3 -> inf`.
    fn to_standard(z1: &P1Point, z2: &P1Point, z3: &P1Point) -> Result<Self, TorsorError> {
        use P1Point::{Finite as F, Infinity as I};
        let one = Rf::one;
        let zero = Rf::zero;
        match (z1, z2, z3) {
            (I, F(z2), F(z3)) => Self::new(zero(), z2 - z3, one(), -z3),
            (F(z1), I, F(z3)) => Self::new(one(), -z1, one(), -z3),
            (F(z1), F(z2), I) => Self::new(one(), -z1, zero(), z2 - z1),
            (F(z1), F(z2), F(z3)) => {
                let k = z2 - z3;
                let l = z2 - z1;
                Self::new(k.clone(), -&(z1 * &k), l.clone(), -&(z3 * &l))
            }
            _ => Err(TorsorError::Degenerate),
        }
    }

    /// The unique map with `src[i] -> dst[i]`.
    pub fn from_three_points(src: [&P1Point; 3], dst: [&P1Point; 3]) -> Result<Self, TorsorError> {
        let s = Self::to_standard(src[0], src[1], src[2])?;
        let t = Self::to_standard(dst[0], dst[1], dst[2])?;
        Ok(t.inverse().compose(&s))
    }

    /// `self after other`.
    pub fn compose(&self, other: &MobiusMap) -> MobiusMap {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let (e, f, g, h) = (&other.a, &other.b, &other.c, &other.d);
        MobiusMap {
            a: &(a * e) + &(b * g),
            b: &(a * f) + &(b * h),
            c: &(c * e) + &(d * g),
            d: &(c * f) + &(d * h),
        }
    }

    pub fn inverse(&self) -> MobiusMap {
        MobiusMap { a: self.d.clone(), b: -&self.b, c: -&self.c, d: self.a.clone() }
    }

    pub fn pow(&self, n: i64) -> MobiusMap {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = MobiusMap::identity();
        for _ in 0..n.unsigned_abs() {
            acc = base.compose(&acc);
        }
        acc
    }

    pub fn apply(&self, p: &P1Point) -> P1Point {
        let (num, den) = match p {
            P1Point::Infinity => (self.a.clone(), self.c.clone()),
            P1Point::Finite(x) => (&(&self.a * x) + &self.b, &(&self.c * x) + &self.d),
        };
        if den.is_zero() {
            P1Point::Infinity
        } else {
            P1Point::Finite(&num / &den)
        }
    }

    pub fn apply_value(&self, x: &Rf) -> P1Point {
        self.apply(&P1Point::Finite(x.clone()))
    }

    /// Equality in `PGL_2`: the coefficient vectors are proportional.
    pub fn eq_projective(&self, other: &MobiusMap) -> bool {
        let u = self.coefficients();
        let v = other.coefficients();
        (0..4).all(|i| (0..4).all(|j| (u[i] * v[j]) == (u[j] * v[i])))
    }

    pub fn is_identity(&self) -> bool {
        self.eq_projective(&MobiusMap::identity())
    }

    /// For a map fixing `0` and `inf`, the multiplier `a / d`.
    pub fn multiplier(&self) -> Option<Rf> {
        (self.b.is_zero() && self.c.is_zero()).then(|| &self.a / &self.d)
    }

    /// Representative with `d = 1` when `d != 0`, otherwise with `c = 1`.
    pub fn normalized(&self) -> MobiusMap {
        let k = if !self.d.is_zero() { self.d.clone() } else { self.c.clone() };
        MobiusMap { a: &self.a / &k, b: &self.b / &k, c: &self.c / &k, d: &self.d / &k }
    }

    pub fn subst(&self, v: Var, value: &Rf) -> Result<MobiusMap, TorsorError> {
        let s = |x: &Rf| x.subst(v, value);
        MobiusMap::new(s(&self.a)?, s(&self.b)?, s(&self.c)?, s(&self.d)?)
    }
}

impl fmt::Display for MobiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.normalized();
        write!(f, "x -> ({}*x + {})/({}*x + {})", n.a, n.b, n.c, n.d)
    }
}

impl serde::Serialize for MobiusMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let n = self.normalized();
        [n.a.to_string(), n.b.to_string(), n.c.to_string(), n.d.to_string()].serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fin(n: i64) -> P1Point {
        P1Point::Finite(Rf::int(n))
    }

    #[test]
    fn three_point_map_hits_targets() {
        let src = [&fin(2), &fin(5), &P1Point::Infinity];
        let dst = [&fin(0), &P1Point::Infinity, &fin(1)];
        let m = MobiusMap::from_three_points(src, dst).unwrap();
        for (p, q) in src.iter().zip(dst) {
            assert_eq!(m.apply(p), *q);
        }
    }

    #[test]
    fn degenerate_rejected() {
        assert!(MobiusMap::new(Rf::one(), Rf::one(), Rf::one(), Rf::one()).is_err());
    }

    #[test]
    fn powers_and_inverse() {
        let m = MobiusMap::new(Rf::int(2), Rf::one(), Rf::zero(), Rf::one()).unwrap();
        assert!(m.compose(&m.inverse()).is_identity());
        assert!(m.pow(3).compose(&m.pow(-3)).is_identity());
    }
}
