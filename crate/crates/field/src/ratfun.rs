use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::FieldError;
use crate::gcd::gcd;
use crate::poly::Poly;
use crate::var::Var;

/// Element of `Q(s, t, r, ...)` in canonical form.
///
/// Canonical form: `gcd(num, den) = 1` as polynomials, both have integer
/// coefficients, the combined integer content of `num` and `den` is one,
/// and the leading coefficient of `den` (graded lex) is positive. Zero is
/// `0/1`. Two elements are equal iff their canonical forms are identical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

/// Extra validation applied by [`RationalFunction::specialize`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamGuard {
    None,
    /// `s0, t0` must avoid `{0, 1}` and satisfy `s0 != t0`.
    Construction,
}

impl RationalFunction {
    /// Canonical reduced fraction `num / den`.
    pub fn new(num: Poly, den: Poly) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::ZeroDenominator);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.div_exact(&g).expect("gcd divides numerator"),
                    den.div_exact(&g).expect("gcd divides denominator"),
                )
            }
        };
        Self::fix_scalars(num, den)
    }

    /// Clear coefficient denominators, remove the joint integer content and
    /// make the leading coefficient of the denominator positive.
    fn fix_scalars(num: Poly, den: Poly) -> Self {
        use num_integer::Integer;
        let l = num.denominator_lcm().lcm(&den.denominator_lcm());
        let lr = BigRational::from_integer(l);
        let num = num.scale(&lr);
        let den = den.scale(&lr);
        let mut c = num.integer_content().gcd(&den.integer_content());
        if den.leading_coeff().is_negative() {
            c = -c;
        }
        let cr = BigRational::from_integer(c).recip();
        RationalFunction {
            num: num.scale(&cr),
            den: den.scale(&cr),
        }
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn constant(c: BigRational) -> Self {
        Self::fix_scalars(Poly::constant(c), Poly::one())
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(Poly::var(v))
    }

    pub fn s() -> Self {
        Self::var(Var::S)
    }

    pub fn t() -> Self {
        Self::var(Var::T)
    }

    pub fn r() -> Self {
        Self::var(Var::R)
    }

    pub fn from_poly(p: Poly) -> Self {
        Self::fix_scalars(p, Poly::one())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The value if the element is a rational constant.
    pub fn constant_value(&self) -> Option<BigRational> {
        Some(self.num.constant_value()? / self.den.constant_value()?)
    }

    pub fn contains(&self, v: Var) -> bool {
        self.num.contains(v) || self.den.contains(v)
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut v = self.num.vars();
        for x in self.den.vars() {
            if !v.contains(&x) {
                v.push(x);
            }
        }
        v.sort();
        v
    }

    /// Degree in `v` of the numerator minus that of the denominator.
    pub fn degree_in(&self, v: Var) -> i64 {
        self.num.degree_in(v) as i64 - self.den.degree_in(v) as i64
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::fix_scalars(self.den.clone(), self.num.clone()))
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self, FieldError> {
        Ok(self * &rhs.inv()?)
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 {
            self.inv().expect("negative power of zero")
        } else {
            self.clone()
        };
        let k = e.unsigned_abs() as u32;
        // canonical form is preserved by powers: gcd(n^k, d^k) = 1
        RationalFunction {
            num: base.num.pow(k),
            den: base.den.pow(k),
        }
        .rescaled()
    }

    fn rescaled(self) -> Self {
        Self::fix_scalars(self.num, self.den)
    }

    /// Substitute `value` for the variable `v`.
    pub fn subst(&self, v: Var, value: &RationalFunction) -> Result<Self, FieldError> {
        if !self.contains(v) {
            return Ok(self.clone());
        }
        let n = subst_poly(&self.num, v, value);
        let d = subst_poly(&self.den, v, value);
        n.try_div(&d).map_err(|_| FieldError::Pole)
    }

    /// Evaluate every variable in `assign`; the result may still contain others.
    pub fn eval_partial(&self, assign: &[(Var, BigRational)]) -> Result<Self, FieldError> {
        let mut n = self.num.clone();
        let mut d = self.den.clone();
        for (v, x) in assign {
            n = n.eval_var(*v, x);
            d = d.eval_var(*v, x);
        }
        if d.is_zero() {
            return Err(FieldError::Pole);
        }
        Ok(Self::normalize(n, d))
    }

    /// Evaluate at `(s0, t0)`. The element must not involve `r` (or any
    /// variable other than `s`, `t`).
    pub fn specialize(
        &self,
        s0: &BigRational,
        t0: &BigRational,
        guard: ParamGuard,
    ) -> Result<BigRational, FieldError> {
        if self.contains(Var::R) {
            return Err(FieldError::IndeterminatePresent("r"));
        }
        if let Some(v) = self.vars().into_iter().find(|v| *v != Var::S && *v != Var::T) {
            return Err(FieldError::IndeterminatePresent(v.name()));
        }
        if guard == ParamGuard::Construction {
            check_construction_params(s0, t0)?;
        }
        let assign = [(Var::S, s0.clone()), (Var::T, t0.clone())];
        let d = self.den.eval(&assign).expect("all variables assigned");
        if d.is_zero() {
            return Err(FieldError::Pole);
        }
        let n = self.num.eval(&assign).expect("all variables assigned");
        Ok(n / d)
    }

    /// True iff `self` is a root of unity. In `Q(s, t, r, ...)` these are
    /// exactly `1` and `-1`.
    pub fn torsion_unit_test(&self) -> Result<bool, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroInput);
        }
        Ok(match self.constant_value() {
            Some(c) => c.abs().is_one(),
            None => false,
        })
    }

    /// An `n`-th root in the field if one exists. For even `n` the root with
    /// positive leading numerator coefficient is returned; its negative is the
    /// other one.
    pub fn nth_root(&self, n: u32) -> Option<Self> {
        assert!(n > 0);
        if n == 1 || self.is_zero() {
            return Some(self.clone());
        }
        let num_root = poly_nth_root(&self.num, n)?;
        let den_root = poly_nth_root(&self.den, n)?;
        let cand = RationalFunction::new(num_root, den_root).ok()?;
        (cand.pow(n as i64) == *self).then_some(cand)
    }

    pub fn is_negative_constant(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_negative())
    }
}

pub(crate) fn check_construction_params(
    s0: &BigRational,
    t0: &BigRational,
) -> Result<(), FieldError> {
    for (name, x) in [("s", s0), ("t", t0)] {
        if x.is_zero() || x.is_one() {
            return Err(FieldError::ForbiddenParameter(format!("{name} = {x} lies in {{0, 1}}")));
        }
    }
    if s0 == t0 {
        return Err(FieldError::ForbiddenParameter(format!("s = t = {s0}")));
    }
    Ok(())
}

fn subst_poly(p: &Poly, v: Var, value: &RationalFunction) -> RationalFunction {
    let coeffs = p.coeffs_in(v);
    let mut acc = RationalFunction::zero();
    for c in coeffs.iter().rev() {
        acc = &(&acc * value) + &RationalFunction::from_poly(c.clone());
    }
    acc
}

/// `n`-th root of a polynomial over `Q`, by the term-by-term method: the
/// leading term of the root is the root of the leading term, and each further
/// term is `LT(p - q^n) / (n * LT(q)^(n-1))`.
fn poly_nth_root(p: &Poly, n: u32) -> Option<Poly> {
    if p.is_zero() {
        return Some(Poly::zero());
    }
    let (lm, lc) = p.leading_term()?;
    let mut root_m = crate::monomial::Monomial::one();
    for (v, e) in lm.vars() {
        if e as u32 % n != 0 {
            return None;
        }
        root_m.set(v, e / n as u16);
    }
    let root_c = rational_nth_root(lc, n)?;
    let mut q = Poly::monomial(root_c, root_m.clone());
    let denom_lt = q.pow(n - 1).scale(&BigRational::from_integer(BigInt::from(n)));
    let (dm, dc) = denom_lt.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
    // The root has at most as many terms as monomials of bounded degree; cap iterations.
    let max_iter = 4 * p.len() + 16;
    for _ in 0..max_iter {
        let rem = &p.clone() - &q.pow(n);
        let Some((rm, rc)) = rem.leading_term() else {
            return Some(q);
        };
        let m = rm.div(&dm)?;
        if m >= root_m {
            return None;
        }
        q = &q + &Poly::monomial(rc / &dc, m);
    }
    None
}

fn rational_nth_root(c: &BigRational, n: u32) -> Option<BigRational> {
    let neg = c.is_negative();
    if neg && n % 2 == 0 {
        return None;
    }
    let nr = int_nth_root(&c.numer().abs(), n)?;
    let dr = int_nth_root(c.denom(), n)?;
    let r = BigRational::new(nr, dr);
    Some(if neg { -r } else { r })
}

fn int_nth_root(x: &BigInt, n: u32) -> Option<BigInt> {
    let r = x.nth_root(n);
    (num_traits::pow::pow(r.clone(), n as usize) == *x).then_some(r)
}

impl Add<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::normalize(&self.num + &rhs.num, self.den.clone());
        }
        let g = gcd(&self.den, &rhs.den);
        let a = self.den.div_exact(&g).expect("gcd divides");
        let b = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &b) + &(&rhs.num * &a);
        let den = &(&a * &b) * &g;
        RationalFunction::normalize(num, den)
    }
}

impl Sub<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        // cross-cancel so the product is already reduced
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g1).expect("gcd divides");
        let n2 = rhs.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        RationalFunction::fix_scalars(&n1 * &n2, &d1 * &d2)
    }
}

impl Div<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    /// Panics on division by zero; use [`RationalFunction::try_div`] to handle it.
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.try_div(rhs).expect("division by zero rational function")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $f(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $f(self, rhs: &RationalFunction) -> RationalFunction {
                (&self).$f(rhs)
            }
        }
        impl $tr<RationalFunction> for &RationalFunction {
            type Output = RationalFunction;
            fn $f(self, rhs: RationalFunction) -> RationalFunction {
                self.$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl From<i64> for RationalFunction {
    fn from(n: i64) -> Self {
        RationalFunction::int(n)
    }
}

impl From<BigRational> for RationalFunction {
    fn from(c: BigRational) -> Self {
        RationalFunction::constant(c)
    }
}

impl From<Var> for RationalFunction {
    fn from(v: Var) -> Self {
        RationalFunction::var(v)
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        RationalFunction::one()
    }
}

impl fmt::Display for RationalFunction {
    /// `(num)` or `(num)/(den)`; [`str::parse`] reads this back exactly.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn s() -> RationalFunction {
        RationalFunction::s()
    }
    fn t() -> RationalFunction {
        RationalFunction::t()
    }
    fn p(x: &RationalFunction) -> Poly {
        x.num().clone()
    }

    #[test]
    fn normalize_cancels_common_factor() {
        let num = &p(&(&s() * &s())) - &p(&s());
        let f = RationalFunction::new(num, p(&s())).unwrap();
        assert_eq!(f, &s() - &RationalFunction::one());
    }

    #[test]
    fn normalize_fixes_sign() {
        let d = &s() - &t();
        let num = p(&(&d * &d));
        let den = p(&(&t() - &s()));
        let f = RationalFunction::new(num, den).unwrap();
        assert_eq!(f, &t() - &s());
    }

    #[test]
    fn zero_over_five() {
        let f = RationalFunction::new(Poly::zero(), Poly::int(5)).unwrap();
        assert!(f.is_zero());
        assert_eq!(f.den(), &Poly::one());
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RationalFunction::new(Poly::one(), Poly::zero()),
            Err(FieldError::ZeroDenominator)
        );
    }

    #[test]
    fn field_ops_examples() {
        assert!((&s() / &s()).is_one());
        let a = RationalFunction::one().try_div(&(&s() - &t())).unwrap();
        let b = RationalFunction::one().try_div(&(&t() - &s())).unwrap();
        assert!((&a + &b).is_zero());
        assert!((&(&s() * &t()) - &(&t() * &s())).is_zero());
        assert_eq!(s().try_div(&RationalFunction::zero()), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn specialize_examples() {
        let f = &s() / &t();
        assert_eq!(f.specialize(&rat(2, 1), &rat(3, 1), ParamGuard::None), Ok(rat(2, 3)));
        let g = RationalFunction::one().try_div(&(&s() - &t())).unwrap();
        assert_eq!(
            g.specialize(&rat(2, 1), &rat(2, 1), ParamGuard::None),
            Err(FieldError::Pole)
        );
        assert_eq!(
            s().pow(4).specialize(&rat(7, 3), &rat(5, 1), ParamGuard::None),
            Ok(rat(2401, 81))
        );
        assert!(matches!(
            s().specialize(&rat(1, 1), &rat(3, 1), ParamGuard::Construction),
            Err(FieldError::ForbiddenParameter(_))
        ));
        assert!(matches!(
            s().specialize(&rat(2, 1), &rat(2, 1), ParamGuard::Construction),
            Err(FieldError::ForbiddenParameter(_))
        ));
        assert_eq!(
            RationalFunction::r().specialize(&rat(2, 1), &rat(3, 1), ParamGuard::None),
            Err(FieldError::IndeterminatePresent("r"))
        );
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(RationalFunction::one().torsion_unit_test(), Ok(true));
        assert_eq!(RationalFunction::int(-1).torsion_unit_test(), Ok(true));
        assert_eq!(RationalFunction::int(2).torsion_unit_test(), Ok(false));
        for n in [-3, -1, 1, 2, 5] {
            let rn = RationalFunction::r().pow(n);
            assert_ne!(rn.degree_in(Var::R), 0);
            assert_eq!(rn.torsion_unit_test(), Ok(false));
        }
        assert_eq!(RationalFunction::zero().torsion_unit_test(), Err(FieldError::ZeroInput));
    }

    #[test]
    fn nth_roots() {
        let base = &(&s() - &RationalFunction::int(2)) / &(&t() + &s());
        let sq = base.pow(2);
        let root = sq.nth_root(2).unwrap();
        assert!(root == base || root == -&base);
        assert_eq!(base.pow(3).nth_root(3), Some(base.clone()));
        assert_eq!(s().nth_root(2), None);
        assert_eq!(RationalFunction::int(-4).nth_root(2), None);
        assert_eq!(
            RationalFunction::constant(rat(16, 81)).nth_root(4),
            Some(RationalFunction::constant(rat(2, 3)))
        );
    }
}
