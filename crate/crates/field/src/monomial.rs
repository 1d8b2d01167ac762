use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::var::Var;

/// Exponent vector indexed by [`Var::index`], with trailing zeros trimmed so
/// that every monomial has exactly one representation.
///
/// Ordering is graded lexicographic with `s > t > r > w1 > ...`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[u16; 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: u16) -> Self {
        let mut m = Monomial::one();
        m.set(v, e);
        m
    }

    fn trim(&mut self) {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
    }

    pub fn exp(&self, v: Var) -> u16 {
        self.0.get(v.index()).copied().unwrap_or(0)
    }

    pub fn set(&mut self, v: Var, e: u16) {
        let i = v.index();
        if self.0.len() <= i {
            if e == 0 {
                return;
            }
            self.0.resize(i + 1, 0);
        }
        self.0[i] = e;
        self.trim();
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn vars(&self) -> impl Iterator<Item = (Var, u16)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (Var::from_index(i).expect("valid var"), e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        let mut out: SmallVec<[u16; 4]> = SmallVec::with_capacity(n);
        for i in 0..n {
            let a = self.0.get(i).copied().unwrap_or(0);
            let b = other.0.get(i).copied().unwrap_or(0);
            out.push(a.checked_add(b).expect("exponent overflow"));
        }
        Monomial(out)
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.0.len() > self.0.len() {
            return None;
        }
        let mut out = self.0.clone();
        for (i, &b) in other.0.iter().enumerate() {
            if out[i] < b {
                return None;
            }
            out[i] -= b;
        }
        let mut m = Monomial(out);
        m.trim();
        Some(m)
    }

    pub fn pow(&self, k: u16) -> Monomial {
        let mut m = Monomial(self.0.iter().map(|&e| e * k).collect());
        m.trim();
        m
    }

    /// Exponent-wise minimum.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().min(other.0.len());
        let mut m = Monomial((0..n).map(|i| self.0[i].min(other.0[i])).collect());
        m.trim();
        m
    }

    /// Drop the exponent of `v`.
    pub fn without(&self, v: Var) -> Monomial {
        let mut m = self.clone();
        m.set(v, 0);
        m
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let n = self.0.len().max(other.0.len());
            for i in 0..n {
                let a = self.0.get(i).copied().unwrap_or(0);
                let b = other.0.get(i).copied().unwrap_or(0);
                match a.cmp(&b) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (v, e) in self.vars() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_order() {
        let s = Monomial::var(Var::S);
        let t = Monomial::var(Var::T);
        let r = Monomial::var(Var::R);
        assert!(s > t && t > r);
        assert!(t.pow(2) > s);
        assert!(s.mul(&r) < s.mul(&t));
        assert!(Monomial::one() < r);
    }

    #[test]
    fn trimmed_representation_is_unique() {
        let mut m = Monomial::var_pow(Var::R, 3);
        m.set(Var::R, 0);
        assert_eq!(m, Monomial::one());
        assert_eq!(s_t().div(&Monomial::var(Var::T)), Some(Monomial::var(Var::S)));
        assert_eq!(Monomial::var(Var::S).div(&Monomial::var(Var::T)), None);
    }

    fn s_t() -> Monomial {
        Monomial::var(Var::S).mul(&Monomial::var(Var::T))
    }
}
