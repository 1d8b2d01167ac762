//! The quadric `P^1 x P^1 = Q` in `P^3`, the frame sending `p00, p11, p22,
//! p33` to the coordinate points, and the cubic Cremona involution
//! `[a1 w2 w3 w4 : a2 w1 w3 w4 : a3 w1 w2 w4 : a1 a2 a3 w1 w2 w3]`.

use std::fmt;

use kummer_field::{FieldError, RationalFunction, Var};
use serde::Serialize;

use crate::error::MukaiError;
use crate::legendre::P1Point;

type Rf = RationalFunction;
pub type Matrix4 = [[Rf; 4]; 4];

#[derive(Clone, Debug)]
pub struct ProjPoint3([Rf; 4]);

impl ProjPoint3 {
    pub fn new(w: [Rf; 4]) -> Result<Self, MukaiError> {
        if w.iter().all(Rf::is_zero) {
            return Err(MukaiError::ZeroPoint);
        }
        Ok(ProjPoint3(w))
    }

    pub fn coords(&self) -> &[Rf; 4] {
        &self.0
    }

    /// Standard point `e_k`, `k = 1..=4`.
    pub fn basis(k: usize) -> Self {
        let mut w = [Rf::zero(), Rf::zero(), Rf::zero(), Rf::zero()];
        w[k - 1] = Rf::one();
        ProjPoint3(w)
    }

    /// The generic point `[w1 : w2 : w3 : w4]`.
    pub fn generic() -> Self {
        ProjPoint3(Var::W.map(Rf::var))
    }

    /// Equality up to a scalar, by cross-multiplication.
    pub fn eq_projective(&self, other: &ProjPoint3) -> bool {
        let (u, v) = (&self.0, &other.0);
        (0..4).all(|i| (i + 1..4).all(|j| &u[i] * &v[j] == &u[j] * &v[i]))
    }

    pub fn transform(&self, m: &Matrix4) -> ProjPoint3 {
        ProjPoint3(std::array::from_fn(|i| {
            (0..4).fold(Rf::zero(), |acc, j| &acc + &(&m[i][j] * &self.0[j]))
        }))
    }

    pub fn subst(&self, v: Var, value: &Rf) -> Result<ProjPoint3, MukaiError> {
        let mut w = self.0.clone();
        for x in w.iter_mut() {
            *x = x.subst(v, value)?;
        }
        ProjPoint3::new(w)
    }
}

impl fmt::Display for ProjPoint3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = &self.0;
        write!(f, "[{} : {} : {} : {}]", w[0], w[1], w[2], w[3])
    }
}

impl Serialize for ProjPoint3 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s)
    }
}

/// `q(w) = sum m_ij w_i w_j` with `m` symmetric.
#[derive(Clone, Debug)]
pub struct QuadricForm {
    m: Matrix4,
}

impl QuadricForm {
    pub fn from_matrix(m: Matrix4) -> Self {
        QuadricForm { m }
    }

    /// From the coefficients of `w_i w_j`, `i <= j` (zero-based).
    pub fn from_monomials(coeffs: &[((usize, usize), Rf)]) -> Self {
        let mut m: Matrix4 = zero_matrix();
        let half = Rf::constant(kummer_field::rat(1, 2));
        for ((i, j), c) in coeffs {
            if i == j {
                m[*i][*i] = &m[*i][*i] + c;
            } else {
                let h = c * &half;
                m[*i][*j] = &m[*i][*j] + &h;
                m[*j][*i] = &m[*j][*i] + &h;
            }
        }
        QuadricForm { m }
    }

    /// `w1 w4 - w2 w3`, the image of the Segre embedding.
    pub fn segre() -> Self {
        Self::from_monomials(&[((0, 3), Rf::one()), ((1, 2), -Rf::one())])
    }

    /// `a1 w2 w3 + a2 w1 w3 + a3 w1 w2 + (w1 + w2 + w3) w4`.
    pub fn template(alpha: &AlphaTriple) -> Self {
        let [a1, a2, a3] = alpha.0.clone();
        Self::from_monomials(&[
            ((1, 2), a1),
            ((0, 2), a2),
            ((0, 1), a3),
            ((0, 3), Rf::one()),
            ((1, 3), Rf::one()),
            ((2, 3), Rf::one()),
        ])
    }

    pub fn matrix(&self) -> &Matrix4 {
        &self.m
    }

    pub fn eval(&self, w: &[Rf; 4]) -> Rf {
        self.bilinear(w, w)
    }

    pub fn bilinear(&self, u: &[Rf; 4], v: &[Rf; 4]) -> Rf {
        let mut acc = Rf::zero();
        for i in 0..4 {
            for j in 0..4 {
                if !self.m[i][j].is_zero() {
                    acc = &acc + &(&(&self.m[i][j] * &u[i]) * &v[j]);
                }
            }
        }
        acc
    }

    /// `q(A w)` as a form in `w`: `A^T m A`.
    pub fn pullback(&self, a: &Matrix4) -> QuadricForm {
        let at = transpose(a);
        QuadricForm { m: mat_mul(&mat_mul(&at, &self.m), a) }
    }

    pub fn add(&self, other: &QuadricForm) -> QuadricForm {
        QuadricForm { m: std::array::from_fn(|i| std::array::from_fn(|j| &self.m[i][j] + &other.m[i][j])) }
    }

    /// `self = k * other` for some nonzero `k`; returns `k`.
    pub fn proportional(&self, other: &QuadricForm) -> Option<Rf> {
        let (i, j) = (0..4).flat_map(|i| (0..4).map(move |j| (i, j))).find(|&(i, j)| !other.m[i][j].is_zero())?;
        let k = &self.m[i][j] / &other.m[i][j];
        if k.is_zero() {
            return None;
        }
        (0..4).all(|i| (0..4).all(|j| self.m[i][j] == &k * &other.m[i][j])).then_some(k)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaTriple(pub [Rf; 3]);

impl AlphaTriple {
    pub fn new(a: [Rf; 3]) -> Result<Self, MukaiError> {
        if a.iter().any(Rf::is_zero) {
            return Err(MukaiError::TemplateUnreachable("zero alpha".into()));
        }
        Ok(AlphaTriple(a))
    }

    pub fn ints(a: [i64; 3]) -> Result<Self, MukaiError> {
        Self::new(a.map(Rf::int))
    }

    pub fn subst(&self, v: Var, value: &Rf) -> Result<AlphaTriple, MukaiError> {
        let [a, b, c] = &self.0;
        AlphaTriple::new([a.subst(v, value)?, b.subst(v, value)?, c.subst(v, value)?])
    }
}

impl Serialize for AlphaTriple {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s)
    }
}

/// `a1^2 + a2^2 + a3^2 - 2 a1 a2 - 2 a1 a3 - 2 a2 a3`.
pub fn smoothness_disc(alpha: &AlphaTriple) -> Rf {
    let [a1, a2, a3] = &alpha.0;
    let two = Rf::int(2);
    let sq = &(&(a1 * a1) + &(a2 * a2)) + &(a3 * a3);
    let cross = &(&(a1 * a2) + &(a1 * a3)) + &(a2 * a3);
    &sq - &(&two * &cross)
}

fn zero_matrix() -> Matrix4 {
    std::array::from_fn(|_| std::array::from_fn(|_| Rf::zero()))
}

fn transpose(a: &Matrix4) -> Matrix4 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i].clone()))
}

fn mat_mul(a: &Matrix4, b: &Matrix4) -> Matrix4 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (0..4).fold(Rf::zero(), |acc, k| &acc + &(&a[i][k] * &b[k][j])))
    })
}

fn det3(m: [[&Rf; 3]; 3]) -> Rf {
    let t = |a: &Rf, b: &Rf, c: &Rf| &(a * b) * c;
    let pos = &(&t(m[0][0], m[1][1], m[2][2]) + &t(m[0][1], m[1][2], m[2][0])) + &t(m[0][2], m[1][0], m[2][1]);
    let neg = &(&t(m[0][2], m[1][1], m[2][0]) + &t(m[0][0], m[1][2], m[2][1])) + &t(m[0][1], m[1][0], m[2][2]);
    &pos - &neg
}

fn minor(a: &Matrix4, row: usize, col: usize) -> Rf {
    let rows: Vec<usize> = (0..4).filter(|&r| r != row).collect();
    let cols: Vec<usize> = (0..4).filter(|&c| c != col).collect();
    det3(std::array::from_fn(|i| std::array::from_fn(|j| &a[rows[i]][cols[j]])))
}

pub fn det4(a: &Matrix4) -> Rf {
    (0..4).fold(Rf::zero(), |acc, j| {
        let term = &a[0][j] * &minor(a, 0, j);
        if j % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        }
    })
}

pub fn adjugate(a: &Matrix4) -> Matrix4 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let m = minor(a, j, i);
            if (i + j) % 2 == 0 {
                m
            } else {
                -&m
            }
        })
    })
}

/// `([a:b], [c:d]) -> [ac : ad : bc : bd]`, with `inf = [1:0]`.
pub fn segre(u: &P1Point, v: &P1Point) -> ProjPoint3 {
    let hom = |p: &P1Point| match p {
        P1Point::Finite(x) => (x.clone(), Rf::one()),
        P1Point::Infinity => (Rf::one(), Rf::zero()),
    };
    let (a, b) = hom(u);
    let (c, d) = hom(v);
    ProjPoint3([&a * &c, &a * &d, &b * &c, &b * &d])
}

fn value(k: usize, lambda: &Rf) -> P1Point {
    match k {
        0 => P1Point::Finite(Rf::zero()),
        1 => P1Point::Finite(Rf::one()),
        2 => P1Point::Finite(lambda.clone()),
        _ => P1Point::Infinity,
    }
}

fn check_param(name: &str, x: &Rf) -> Result<(), MukaiError> {
    if x.is_zero() || x.is_one() {
        return Err(FieldError::ForbiddenParameter(format!("{name} = {x}")).into());
    }
    Ok(())
}

/// `p_ij = segre(value_i(s), value_j(t))` with value lists `(0, 1, lambda, inf)`.
pub fn sixteen_points(s: &Rf, t: &Rf) -> Result<[[ProjPoint3; 4]; 4], MukaiError> {
    check_param("s", s)?;
    check_param("t", t)?;
    Ok(std::array::from_fn(|i| std::array::from_fn(|j| segre(&value(i, s), &value(j, t)))))
}

fn diagonal_matrix(s: &Rf, t: &Rf) -> Result<Matrix4, MukaiError> {
    let p = sixteen_points(s, t)?;
    // columns p00, p11, p22, p33
    Ok(std::array::from_fn(|i| std::array::from_fn(|j| p[j][j].0[i].clone())))
}

pub fn non_coplanar_det(s: &Rf, t: &Rf) -> Result<Rf, MukaiError> {
    Ok(det4(&diagonal_matrix(s, t)?))
}

#[derive(Clone, Debug)]
pub struct MukaiFrame {
    s: Rf,
    t: Rf,
    /// New coordinates are `M w`.
    pub m: Matrix4,
    pub alpha: AlphaTriple,
}

impl Serialize for MukaiFrame {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let rows: Vec<Vec<String>> = self.m.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        let mut st = s.serialize_struct("MukaiFrame", 2)?;
        st.serialize_field("matrix", &rows)?;
        st.serialize_field("alpha", &self.alpha)?;
        st.end()
    }
}

/// `M` with `p_kk -> e_{k+1}` and the residual diagonal scaling fixed so that
/// the three `w_k w4` coefficients are 1; then read off the alphas.
pub fn frame_and_alphas(s: &Rf, t: &Rf) -> Result<MukaiFrame, MukaiError> {
    let p = diagonal_matrix(s, t)?;
    if det4(&p).is_zero() {
        return Err(MukaiError::Coplanar);
    }
    let segre_q = QuadricForm::segre();
    let col = |k: usize| -> [Rf; 4] { std::array::from_fn(|i| p[i][k].clone()) };
    // q(sum w_k p_kk / d_k) has only cross terms b_kl w_k w_l / (d_k d_l)
    let b = |k: usize, l: usize| &Rf::int(2) * &segre_q.bilinear(&col(k), &col(l));
    let d: Vec<Rf> = (0..3).map(|k| b(k, 3)).collect();
    if let Some(k) = d.iter().position(Rf::is_zero) {
        return Err(MukaiError::TemplateUnreachable(format!("coefficient of w{}w4 vanishes", k + 1)));
    }
    let alpha = AlphaTriple::new([
        &b(1, 2) / &(&d[1] * &d[2]),
        &b(0, 2) / &(&d[0] * &d[2]),
        &b(0, 1) / &(&d[0] * &d[1]),
    ])?;
    let adj = adjugate(&p);
    let scale = [d[0].clone(), d[1].clone(), d[2].clone(), Rf::one()];
    let m = std::array::from_fn(|i| std::array::from_fn(|j| &scale[i] * &adj[i][j]));
    Ok(MukaiFrame { s: s.clone(), t: t.clone(), m, alpha })
}

impl MukaiFrame {
    /// `M^-1` up to scalar.
    pub fn inverse(&self) -> Matrix4 {
        adjugate(&self.m)
    }

    /// The Segre quadric in the new coordinates, divided by the template; the
    /// ratio must be a nonzero scalar.
    pub fn template_ratio(&self) -> Option<Rf> {
        QuadricForm::segre().pullback(&self.inverse()).proportional(&QuadricForm::template(&self.alpha))
    }

    pub fn point(&self, i: usize, j: usize) -> Result<ProjPoint3, MukaiError> {
        Ok(sixteen_points(&self.s, &self.t)?[i][j].transform(&self.m))
    }

    /// `p_kk` lands on `e_{k+1}`.
    pub fn sends_diagonal_to_basis(&self) -> Result<bool, MukaiError> {
        Ok((0..4).map(|k| Ok(self.point(k, k)?.eq_projective(&ProjPoint3::basis(k + 1)))).collect::<Result<Vec<_>, MukaiError>>()?.into_iter().all(|x| x))
    }
}

/// The Cremona formula; error on the indeterminacy locus.
pub fn cremona(alpha: &AlphaTriple, w: &ProjPoint3) -> Result<ProjPoint3, MukaiError> {
    let [a1, a2, a3] = &alpha.0;
    let [w1, w2, w3, w4] = &w.0;
    let out = [
        &(&(a1 * w2) * w3) * w4,
        &(&(a2 * w1) * w3) * w4,
        &(&(a3 * w1) * w2) * w4,
        &(&(&(a1 * a2) * a3) * &(w1 * w2)) * w3,
    ];
    ProjPoint3::new(out).map_err(|_| MukaiError::Indeterminacy(w.to_string()))
}

/// `q(C(w)) / q(w)` is a polynomial in `w` with nonzero value.
pub fn preserves_quadric(alpha: &AlphaTriple, q: &QuadricForm) -> Result<bool, MukaiError> {
    let w = ProjPoint3::generic();
    let image = cremona(alpha, &w)?;
    let qw = q.eval(w.coords());
    if qw.is_zero() {
        return Ok(false);
    }
    let ratio = &q.eval(image.coords()) / &qw;
    Ok(!ratio.is_zero() && Var::W.iter().all(|&v| !ratio.den().contains(v)))
}

pub fn verify_cremona_preserves_quadric(alpha: &AlphaTriple) -> Result<bool, MukaiError> {
    preserves_quadric(alpha, &QuadricForm::template(alpha))
}

/// `C(C(w)) = w` up to scalar for the generic point.
pub fn cremona_is_involution(alpha: &AlphaTriple) -> Result<bool, MukaiError> {
    let w = ProjPoint3::generic();
    Ok(cremona(alpha, &cremona(alpha, &w)?)?.eq_projective(&w))
}

/// `C(M p_ij) = M p_ji` for every `i != j`; returns the failing pairs.
pub fn pij_swap_failures(frame: &MukaiFrame) -> Result<Vec<(usize, usize)>, MukaiError> {
    let mut bad = Vec::new();
    for i in 0..4 {
        for j in (0..4).filter(|&j| j != i) {
            let image = cremona(&frame.alpha, &frame.point(i, j)?)?;
            if !image.eq_projective(&frame.point(j, i)?) {
                bad.push((i, j));
            }
        }
    }
    Ok(bad)
}

pub fn verify_pij_swap(frame: &MukaiFrame) -> Result<bool, MukaiError> {
    Ok(pij_swap_failures(frame)?.is_empty())
}

/// A generic point (parameter `u`) of `Q` with `w_k = 0`, `k = 1..=4`.
pub fn conic_point(alpha: &AlphaTriple, k: usize) -> Result<ProjPoint3, MukaiError> {
    let u = Rf::var(Var::U);
    let one = Rf::one();
    let [a1, a2, a3] = &alpha.0;
    let a = [a1, a2, a3];
    let w = if k == 4 {
        // a1 w2 w3 + a2 w1 w3 + a3 w1 w2 = 0 with w1 = 1, w2 = u
        let w3 = &-&(a3 * &u) / &(&(a1 * &u) + a2);
        [one, u, w3, Rf::zero()]
    } else {
        // a_k w_i w_j + (w_i + w_j) w4 = 0 with w_i = 1, w_j = u
        let w4 = &-&(a[k - 1] * &u) / &(&one + &u);
        let mut w = [Rf::one(), Rf::one(), Rf::one(), w4];
        w[k - 1] = Rf::zero();
        let j = (0..3).filter(|&i| i != k - 1).nth(1).expect("two other indices");
        w[j] = u;
        w
    };
    ProjPoint3::new(w)
}

/// Where the conic `Q n {w_k = 0}` is sent.
pub fn conic_image(alpha: &AlphaTriple, k: usize) -> Result<ProjPoint3, MukaiError> {
    cremona(alpha, &conic_point(alpha, k)?)
}

/// `rank [a; b; c] <= 2`: every 3x3 minor vanishes.
pub fn collinear(a: &ProjPoint3, b: &ProjPoint3, c: &ProjPoint3) -> bool {
    let rows = [a.coords(), b.coords(), c.coords()];
    (0..4).all(|skip| {
        let cols: Vec<usize> = (0..4).filter(|&x| x != skip).collect();
        det3(std::array::from_fn(|i| std::array::from_fn(|j| &rows[i][cols[j]]))).is_zero()
    })
}

/// For each `k`, a generic point of the ruling line `{value_k(s)} x P^1`
/// through `p_kk` maps onto the other ruling line `P^1 x {value_k(t)}`.
pub fn line_swap_failures(frame: &MukaiFrame) -> Result<Vec<usize>, MukaiError> {
    let u = P1Point::Finite(Rf::var(Var::U));
    let mut bad = Vec::new();
    for k in 0..4 {
        let on_first = segre(&value(k, &frame.s), &u).transform(&frame.m);
        let image = cremona(&frame.alpha, &on_first)?;
        let others: Vec<usize> = (0..4).filter(|&i| i != k).take(2).collect();
        let (a, b) = (frame.point(others[0], k)?, frame.point(others[1], k)?);
        if !collinear(&image, &a, &b) {
            bad.push(k);
        }
    }
    Ok(bad)
}

/// The template equation with the given alphas, for display.
pub fn template_equation(alpha: &AlphaTriple) -> String {
    let [a1, a2, a3] = &alpha.0;
    format!("{a1}*w2*w3 + {a2}*w1*w3 + {a3}*w1*w2 + (w1 + w2 + w3)*w4 = 0")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segre_examples() {
        let z = P1Point::Finite(Rf::zero());
        assert!(segre(&z, &z).eq_projective(&ProjPoint3::basis(4)));
        assert!(segre(&P1Point::Infinity, &P1Point::Infinity).eq_projective(&ProjPoint3::basis(1)));
        let p = segre(&P1Point::Finite(Rf::one()), &P1Point::Finite(Rf::t()));
        assert!(p.eq_projective(&ProjPoint3::new([Rf::t(), Rf::one(), Rf::t(), Rf::one()]).unwrap()));
    }

    #[test]
    fn disc_examples() {
        assert_eq!(smoothness_disc(&AlphaTriple::ints([1, 1, 1]).unwrap()), Rf::int(-3));
        assert!(smoothness_disc(&AlphaTriple::ints([1, 1, 4]).unwrap()).is_zero());
    }

    #[test]
    fn basis_point_is_indeterminate() {
        let a = AlphaTriple::ints([1, 2, 3]).unwrap();
        assert!(matches!(cremona(&a, &ProjPoint3::basis(4)), Err(MukaiError::Indeterminacy(_))));
    }

    #[test]
    fn forbidden_parameters() {
        assert!(sixteen_points(&Rf::one(), &Rf::t()).is_err());
    }
}
