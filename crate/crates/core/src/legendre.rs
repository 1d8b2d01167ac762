//! Legendre curves `y^2 = x(x - 1)(x - lambda)` with an arbitrary origin.
//!
//! The chord-tangent law is implemented once with the point at infinity as
//! identity; the law with origin `O` is `P [+] Q = P + Q - O`.

use std::fmt;

use kummer_field::RationalFunction;

use crate::error::LegendreError;

/// A point of `P^1` over the coefficient field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum P1Point {
    Finite(RationalFunction),
    Infinity,
}

impl fmt::Display for P1Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            P1Point::Finite(x) => write!(f, "{x}"),
            P1Point::Infinity => f.write_str("inf"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LegendrePoint {
    Affine { x: RationalFunction, y: RationalFunction },
    Infinity,
}

impl LegendrePoint {
    pub fn affine(x: RationalFunction, y: RationalFunction) -> Self {
        LegendrePoint::Affine { x, y }
    }

    pub fn x_map(&self) -> P1Point {
        match self {
            LegendrePoint::Affine { x, .. } => P1Point::Finite(x.clone()),
            LegendrePoint::Infinity => P1Point::Infinity,
        }
    }

    fn neg(&self) -> Self {
        match self {
            LegendrePoint::Affine { x, y } => LegendrePoint::Affine { x: x.clone(), y: -y },
            LegendrePoint::Infinity => LegendrePoint::Infinity,
        }
    }
}

impl fmt::Display for LegendrePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LegendrePoint::Affine { x, y } => write!(f, "({x}, {y})"),
            LegendrePoint::Infinity => f.write_str("inf"),
        }
    }
}

/// `x` of a point, as a free function for symmetry with the other maps.
pub fn x_map(p: &LegendrePoint) -> P1Point {
    p.x_map()
}

#[derive(Clone, Debug)]
pub struct LegendreCurve {
    lambda: RationalFunction,
    origin: LegendrePoint,
}

impl LegendreCurve {
    /// Curve with origin `(0, 0)`, the convention for both factors of the
    /// product surface.
    pub fn new(lambda: RationalFunction) -> Result<Self, LegendreError> {
        Self::with_origin(lambda, LegendrePoint::affine(RationalFunction::zero(), RationalFunction::zero()))
    }

    pub fn with_origin(lambda: RationalFunction, origin: LegendrePoint) -> Result<Self, LegendreError> {
        if lambda.is_zero() || lambda.is_one() {
            return Err(LegendreError::DegenerateLambda(lambda.to_string()));
        }
        let curve = LegendreCurve { lambda, origin: LegendrePoint::Infinity };
        curve.check(&origin)?;
        Ok(LegendreCurve { origin, ..curve })
    }

    pub fn lambda(&self) -> &RationalFunction {
        &self.lambda
    }

    pub fn origin(&self) -> &LegendrePoint {
        &self.origin
    }

    fn rhs(&self, x: &RationalFunction) -> RationalFunction {
        let one = RationalFunction::one();
        &(x * &(x - &one)) * &(x - &self.lambda)
    }

    pub fn contains(&self, p: &LegendrePoint) -> bool {
        match p {
            LegendrePoint::Infinity => true,
            LegendrePoint::Affine { x, y } => &(y * y) == &self.rhs(x),
        }
    }

    fn check(&self, p: &LegendrePoint) -> Result<(), LegendreError> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(LegendreError::OffCurve(p.to_string()))
        }
    }

    /// `[tau_0, tau_1, tau_2, tau_3]`: the points over `x = 0, 1, lambda, inf`.
    pub fn two_torsion(&self) -> [LegendrePoint; 4] {
        let z = RationalFunction::zero;
        [
            LegendrePoint::affine(z(), z()),
            LegendrePoint::affine(RationalFunction::one(), z()),
            LegendrePoint::affine(self.lambda.clone(), z()),
            LegendrePoint::Infinity,
        ]
    }

    /// Chord-tangent sum with the point at infinity as identity.
    fn add_inf(&self, p: &LegendrePoint, q: &LegendrePoint) -> LegendrePoint {
        let (x1, y1, x2, y2) = match (p, q) {
            (LegendrePoint::Infinity, _) => return q.clone(),
            (_, LegendrePoint::Infinity) => return p.clone(),
            (LegendrePoint::Affine { x: x1, y: y1 }, LegendrePoint::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        // a2 = -(1 + lambda), a4 = lambda
        let a2 = -&(&RationalFunction::one() + &self.lambda);
        let slope = if x1 == x2 {
            if (y1 + y2).is_zero() {
                return LegendrePoint::Infinity;
            }
            let three = RationalFunction::int(3);
            let two = RationalFunction::int(2);
            let num = &(&(&three * &(x1 * x1)) + &(&(&two * &a2) * x1)) + &self.lambda;
            &num / &(&two * y1)
        } else {
            &(y2 - y1) / &(x2 - x1)
        };
        let x3 = &(&(&(&slope * &slope) - &a2) - x1) - x2;
        let y3 = -&(y1 + &(&slope * &(&x3 - x1)));
        LegendrePoint::Affine { x: x3, y: y3 }
    }

    /// Group law with identity `self.origin`.
    pub fn ec_add(&self, p: &LegendrePoint, q: &LegendrePoint) -> Result<LegendrePoint, LegendreError> {
        self.check(p)?;
        self.check(q)?;
        let sum = self.add_inf(p, q);
        Ok(self.add_inf(&sum, &self.origin.neg()))
    }

    /// Inverse for the law with origin `O`: `2O - P` in the infinity law.
    pub fn ec_neg(&self, p: &LegendrePoint) -> Result<LegendrePoint, LegendreError> {
        self.check(p)?;
        let two_o = self.add_inf(&self.origin, &self.origin);
        Ok(self.add_inf(&two_o, &p.neg()))
    }

    /// `i -> j` with `tau_i [+] tau_k = tau_j`, computed through [`Self::ec_add`].
    pub fn translation_permutation(&self, k: usize) -> Result<Perm4, LegendreError> {
        let tors = self.two_torsion();
        let mut map = [0usize; 4];
        for (i, p) in tors.iter().enumerate() {
            let sum = self.ec_add(p, &tors[k])?;
            map[i] = tors
                .iter()
                .position(|q| *q == sum)
                .ok_or_else(|| LegendreError::NotTwoTorsion(sum.to_string()))?;
        }
        Perm4::new(map).ok_or(LegendreError::NotAPermutation(map))
    }
}

/// A permutation of `{0, 1, 2, 3}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, serde::Serialize, serde::Deserialize)]
pub struct Perm4(pub [usize; 4]);

impl Perm4 {
    pub fn new(map: [usize; 4]) -> Option<Self> {
        let mut seen = [false; 4];
        for &j in &map {
            if j >= 4 || seen[j] {
                return None;
            }
            seen[j] = true;
        }
        Some(Perm4(map))
    }

    pub fn identity() -> Self {
        Perm4([0, 1, 2, 3])
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// `self after other`.
    pub fn compose(&self, other: &Perm4) -> Perm4 {
        Perm4([0, 1, 2, 3].map(|i| self.0[other.0[i]]))
    }

    pub fn inverse(&self) -> Perm4 {
        let mut inv = [0; 4];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm4(inv)
    }
}

impl fmt::Display for Perm4 {
    /// Disjoint cycle notation, e.g. `(0 3)(1 2)`; the identity prints `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = [false; 4];
        let mut any = false;
        for start in 0..4 {
            if seen[start] || self.0[start] == start {
                continue;
            }
            any = true;
            f.write_str("(")?;
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    f.write_str(" ")?;
                }
                first = false;
                write!(f, "{i}")?;
                i = self.0[i];
            }
            f.write_str(")")?;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve() -> LegendreCurve {
        LegendreCurve::new(RationalFunction::s()).unwrap()
    }

    #[test]
    fn two_torsion_doubles_to_origin() {
        let e = curve();
        for p in e.two_torsion() {
            assert_eq!(e.ec_add(&p, &p).unwrap(), *e.origin());
        }
    }

    #[test]
    fn klein_four_products() {
        let e = curve();
        let tau = e.two_torsion();
        assert_eq!(e.ec_add(&tau[1], &tau[2]).unwrap(), tau[3]);
        assert_eq!(e.ec_add(&tau[1], &tau[3]).unwrap(), tau[2]);
        assert_eq!(e.ec_add(&tau[0], &tau[2]).unwrap(), tau[2]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(LegendreCurve::new(RationalFunction::one()).is_err());
        let e = curve();
        let bad = LegendrePoint::affine(RationalFunction::int(2), RationalFunction::one());
        assert!(matches!(e.ec_add(&bad, e.origin()), Err(LegendreError::OffCurve(_))));
    }

    #[test]
    fn cycle_notation() {
        assert_eq!(Perm4([3, 2, 1, 0]).to_string(), "(0 3)(1 2)");
        assert_eq!(Perm4::identity().to_string(), "()");
        assert_eq!(Perm4([1, 2, 0, 3]).to_string(), "(0 1 2)");
    }
}
