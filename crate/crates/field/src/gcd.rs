//! Multivariate polynomial GCD over `Q` by recursive primitive
//! pseudo-remainder sequences.
//!
//! A polynomial in `n` variables is viewed as univariate in a main variable
//! with coefficients in the remaining `n - 1`; contents are computed
//! recursively. Variables present in only one operand are eliminated first by
//! taking the content with respect to them, which keeps the PRS short for the
//! typical "numerator in many variables, denominator in few" shape.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::var::Var;

/// Monic gcd of `a` and `b` (leading coefficient one). `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a == b {
        return a.monic();
    }
    if a.is_monomial() || b.is_monomial() {
        let m = a.monomial_content().gcd(&b.monomial_content());
        return Poly::monomial(BigRational::one(), m);
    }
    let av = a.vars();
    let bv = b.vars();
    if let Some(&v) = av.iter().find(|v| !bv.contains(v)) {
        return gcd(&content_in(a, v), b);
    }
    if let Some(&v) = bv.iter().find(|v| !av.contains(v)) {
        return gcd(a, &content_in(b, v));
    }
    // Pull out common monomial factors first; PRS handles the rest.
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mono = ma.gcd(&mb);
    let a = strip_monomial(a, &ma);
    let b = strip_monomial(b, &mb);
    if provably_coprime(&a, &b) {
        return Poly::monomial(BigRational::one(), mono);
    }
    let main = pick_main_var(&a, &b);
    let g = match main {
        Some(v) => prs_gcd(&a, &b, v),
        // After stripping, one side became constant in every shared variable.
        None => gcd(&a, &b),
    };
    g.mul_monomial(&mono).monic()
}

/// Evaluation images of a common factor keep its degree in `v` whenever the
/// leading coefficients of both inputs survive evaluation. If every such image
/// gcd is constant for every shared variable, the gcd itself is constant.
fn provably_coprime(a: &Poly, b: &Poly) -> bool {
    let shared: Vec<Var> = a.vars().into_iter().filter(|v| b.contains(*v)).collect();
    'vars: for &v in &shared {
        for attempt in 0..3i64 {
            let point: Vec<(Var, BigRational)> = a
                .vars()
                .into_iter()
                .chain(b.vars())
                .filter(|w| *w != v)
                .map(|w| (w, BigRational::from_integer((2 + 3 * w.index() as i64 + 7 * attempt).into())))
                .collect();
            let ua = univariate_image(a, v, &point);
            let ub = univariate_image(b, v, &point);
            if ua.len() != a.degree_in(v) as usize + 1 || ub.len() != b.degree_in(v) as usize + 1 {
                continue;
            }
            if univariate_gcd_degree(ua, ub) == 0 {
                continue 'vars;
            }
            return false;
        }
        return false;
    }
    !shared.is_empty()
}

fn univariate_image(p: &Poly, v: Var, point: &[(Var, BigRational)]) -> Vec<BigRational> {
    let mut out: Vec<BigRational> = p
        .coeffs_in(v)
        .iter()
        .map(|c| c.eval(point).expect("all other variables assigned"))
        .collect();
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

fn univariate_gcd_degree(mut a: Vec<BigRational>, mut b: Vec<BigRational>) -> usize {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        // a <- a mod b
        let lb = b.last().expect("nonempty").clone();
        while a.len() >= b.len() {
            let q = a.last().expect("nonempty") / &lb;
            let shift = a.len() - b.len();
            for (i, c) in b.iter().enumerate() {
                a[i + shift] -= &q * c;
            }
            a.pop();
            while a.last().is_some_and(|c| c.is_zero()) {
                a.pop();
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

fn strip_monomial(p: &Poly, m: &Monomial) -> Poly {
    if m.is_one() {
        p.clone()
    } else {
        Poly::from_terms(p.terms().map(|(k, c)| (k.div(m).expect("monomial content divides"), c.clone())))
    }
}

fn pick_main_var(a: &Poly, b: &Poly) -> Option<Var> {
    let av = a.vars();
    let bv = b.vars();
    av.into_iter()
        .filter(|v| bv.contains(v))
        .min_by_key(|v| (a.degree_in(*v).max(b.degree_in(*v)), v.index()))
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
pub fn content_in(p: &Poly, v: Var) -> Poly {
    let mut g = Poly::zero();
    for c in p.coeffs_in(v).iter().filter(|c| !c.is_zero()) {
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Primitive part with respect to `v`, scaled to integer coefficients with
/// unit integer content.
pub fn primitive_part_in(p: &Poly, v: Var) -> Poly {
    if p.is_zero() {
        return Poly::zero();
    }
    let c = content_in(p, v);
    integer_primitive(&p.div_exact(&c).expect("content divides"))
}

fn integer_primitive(p: &Poly) -> Poly {
    let scaled = p.scale(&BigRational::from_integer(p.denominator_lcm()));
    let content = scaled.integer_content();
    scaled.scale(&BigRational::from_integer(content).recip())
}

/// Pseudo-remainder of `a` by `b` as polynomials in `v`.
pub fn prem(a: &Poly, b: &Poly, v: Var) -> Poly {
    let bc = b.coeffs_in(v);
    assert!(!bc.is_empty(), "pseudo-division by zero");
    let db = bc.len() - 1;
    let lcb = bc[db].clone();
    let mut r = a.coeffs_in(v);
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lcr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = &lcb * &*c;
        }
        for (i, c) in bc.iter().enumerate() {
            let sub = &lcr * c;
            r[i + shift] = &r[i + shift] - &sub;
        }
        debug_assert!(r[dr].is_zero());
        while r.last().is_some_and(Poly::is_zero) {
            r.pop();
        }
    }
    Poly::from_coeffs_in(v, &r)
}

/// Subresultant PRS (Collins, Brown): the exact divisions by `g * h^d` keep
/// coefficient growth polynomial without extracting contents at every step.
fn prs_gcd(a: &Poly, b: &Poly, v: Var) -> Poly {
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd(&ca, &cb);
    let mut f = integer_primitive(&a.div_exact(&ca).expect("content divides"));
    let mut g = integer_primitive(&b.div_exact(&cb).expect("content divides"));
    if f.degree_in(v) < g.degree_in(v) {
        std::mem::swap(&mut f, &mut g);
    }
    let mut lc_prev = Poly::one();
    let mut h = Poly::one();
    let last = loop {
        let d = (f.degree_in(v) - g.degree_in(v)) as u32;
        let r = prem(&f, &g, v);
        if r.is_zero() {
            break g;
        }
        if r.degree_in(v) == 0 {
            break Poly::one();
        }
        let divisor = &lc_prev * &h.pow(d);
        let next = r.div_exact(&divisor).expect("subresultant division is exact");
        f = g;
        g = next;
        lc_prev = leading_coeff_in(&f, v);
        h = match d {
            0 => h,
            1 => lc_prev.clone(),
            _ => lc_prev
                .pow(d)
                .div_exact(&h.pow(d - 1))
                .expect("subresultant division is exact"),
        };
    };
    (&c * &primitive_part_in(&last, v)).monic()
}

fn leading_coeff_in(p: &Poly, v: Var) -> Poly {
    p.coeffs_in(v).pop().unwrap_or_else(Poly::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s() -> Poly {
        Poly::var(Var::S)
    }
    fn t() -> Poly {
        Poly::var(Var::T)
    }
    fn r() -> Poly {
        Poly::var(Var::R)
    }

    #[test]
    fn bivariate_common_factor() {
        let f = &s() - &t();
        let a = &f * &(&s() + &Poly::int(2));
        let b = &f * &(&(&t() * &t()) + &Poly::one());
        assert_eq!(gcd(&a, &b), f.monic());
    }

    #[test]
    fn coprime_is_one() {
        let a = &s() + &t();
        let b = &s() - &t();
        assert!(gcd(&a, &b).is_one());
    }

    #[test]
    fn trivariate_with_powers() {
        let f = &(&s() * &r()) + &t();
        let g = &s() - &Poly::one();
        let a = &(&f * &f) * &g;
        let b = &(&f * &g) * &(&r() + &Poly::int(3));
        let d = gcd(&a, &b);
        assert_eq!(d, (&f * &g).monic());
    }

    #[test]
    fn monomial_factors() {
        let a = &(&s() * &s()) * &t();
        let b = &s() * &(&t() + &Poly::one());
        assert_eq!(gcd(&a, &b), s());
    }

    #[test]
    fn prem_matches_definition() {
        // prem(s^2 t + 1, 2 s + t) in s: lc^(2) * a mod b
        let a = &(&(&s() * &s()) * &t()) + &Poly::one();
        let b = &(&Poly::int(2) * &s()) + &t();
        let p = prem(&a, &b, Var::S);
        assert_eq!(p.degree_in(Var::S), 0);
        // a(s = -t/2) * 4 = t^3 + 4
        assert_eq!(p, &t().pow(3) + &Poly::int(4));
    }
}
