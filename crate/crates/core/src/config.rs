//! The 24 smooth rational curves `E_i`, `F_j`, `C_ij` of the double Kummer
//! pencil, their intersection table, divisor classes and the named
//! automorphisms acting on them.

use std::fmt;
use std::str::FromStr;

use kummer_field::linalg;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ConfigError;
use crate::legendre::Perm4;

pub const NUM_CURVES: usize = 24;

/// Curve label; the index order is `E0..E3, F0..F3, C00, C01, ..., C33`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CurveId(u8);

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CurveKind {
    E(usize),
    F(usize),
    C(usize, usize),
}

impl CurveId {
    pub const E0: CurveId = CurveId(0);
    pub const E1: CurveId = CurveId(1);
    pub const E2: CurveId = CurveId(2);
    pub const E3: CurveId = CurveId(3);
    pub const F0: CurveId = CurveId(4);
    pub const F1: CurveId = CurveId(5);
    pub const F2: CurveId = CurveId(6);
    pub const F3: CurveId = CurveId(7);

    pub fn e(i: usize) -> Self {
        assert!(i < 4);
        CurveId(i as u8)
    }

    pub fn f(j: usize) -> Self {
        assert!(j < 4);
        CurveId(4 + j as u8)
    }

    pub fn c(i: usize, j: usize) -> Self {
        assert!(i < 4 && j < 4);
        CurveId((8 + 4 * i + j) as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(i: usize) -> Option<Self> {
        (i < NUM_CURVES).then_some(CurveId(i as u8))
    }

    pub fn all() -> impl Iterator<Item = CurveId> {
        (0..NUM_CURVES as u8).map(CurveId)
    }

    pub fn kind(self) -> CurveKind {
        let i = self.0 as usize;
        match i {
            0..=3 => CurveKind::E(i),
            4..=7 => CurveKind::F(i - 4),
            _ => CurveKind::C((i - 8) / 4, (i - 8) % 4),
        }
    }
}

impl fmt::Display for CurveId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            CurveKind::E(i) => write!(f, "E{i}"),
            CurveKind::F(j) => write!(f, "F{j}"),
            CurveKind::C(i, j) => write!(f, "C{i}{j}"),
        }
    }
}

impl FromStr for CurveId {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Self, ConfigError> {
        let bad = || ConfigError::UnknownCurve(s.to_string());
        let digits: Vec<usize> = s[1..].chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect::<Option<_>>().ok_or_else(bad)?;
        if digits.iter().any(|&d| d > 3) {
            return Err(bad());
        }
        match (s.chars().next(), digits.as_slice()) {
            (Some('E'), [i]) => Ok(CurveId::e(*i)),
            (Some('F'), [j]) => Ok(CurveId::f(*j)),
            (Some('C'), [i, j]) => Ok(CurveId::c(*i, *j)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for CurveId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CurveId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Symmetric pairing on the 24 curves. Entries may be edited, which is how the
/// negative controls corrupt the configuration.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntersectionTable {
    m: [[i64; NUM_CURVES]; NUM_CURVES],
}

impl IntersectionTable {
    /// The double Kummer pencil: `E_i.C_ij = F_j.C_ij = 1`, self-intersection -2.
    pub fn standard() -> Self {
        let mut m = [[0i64; NUM_CURVES]; NUM_CURVES];
        for a in CurveId::all() {
            m[a.index()][a.index()] = -2;
        }
        for i in 0..4 {
            for j in 0..4 {
                let c = CurveId::c(i, j).index();
                for other in [CurveId::e(i).index(), CurveId::f(j).index()] {
                    m[c][other] = 1;
                    m[other][c] = 1;
                }
            }
        }
        IntersectionTable { m }
    }

    pub fn get(&self, a: CurveId, b: CurveId) -> i64 {
        self.m[a.index()][b.index()]
    }

    /// Set one entry only (may break symmetry).
    pub fn set_entry(&mut self, a: CurveId, b: CurveId, v: i64) {
        self.m[a.index()][b.index()] = v;
    }

    pub fn set_symmetric(&mut self, a: CurveId, b: CurveId, v: i64) {
        self.set_entry(a, b, v);
        self.set_entry(b, a, v);
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.m.iter().map(|r| r.to_vec()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        CurveId::all().all(|a| CurveId::all().all(|b| self.get(a, b) == self.get(b, a)))
    }

    /// Entries that differ from the incidence rules of the pencil.
    pub fn invariant_violations(&self) -> Vec<(CurveId, CurveId)> {
        let reference = IntersectionTable::standard();
        let mut out = Vec::new();
        for a in CurveId::all() {
            for b in CurveId::all() {
                if self.get(a, b) != reference.get(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn gram_rank(&self) -> usize {
        linalg::rank_i64(&self.rows())
    }

    pub fn submatrix_rank(&self, ids: &[CurveId]) -> usize {
        let rows: Vec<Vec<i64>> = ids.iter().map(|&a| ids.iter().map(|&b| self.get(a, b)).collect()).collect();
        linalg::rank_i64(&rows)
    }

    pub fn pair(&self, a: &DivisorClass, b: &DivisorClass) -> i64 {
        let mut acc = 0;
        for x in CurveId::all() {
            let ca = a.coeff(x);
            if ca == 0 {
                continue;
            }
            for y in CurveId::all() {
                acc += ca * b.coeff(y) * self.get(x, y);
            }
        }
        acc
    }

    /// Curves `C` off the support of `fiber` with `C.C = -2` and `C.fiber = 1`.
    pub fn sections_of(&self, fiber: &DivisorClass) -> Vec<CurveId> {
        CurveId::all()
            .filter(|&c| fiber.coeff(c) == 0)
            .filter(|&c| self.get(c, c) == -2)
            .filter(|&c| self.pair(&DivisorClass::curve(c), fiber) == 1)
            .collect()
    }
}

impl Default for IntersectionTable {
    fn default() -> Self {
        Self::standard()
    }
}

/// Integer combination of the 24 curves, optionally named. Named fiber
/// divisors also remember the order in which their components are listed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DivisorClass {
    name: Option<String>,
    coeffs: [i64; NUM_CURVES],
    listing: Vec<CurveId>,
}

impl DivisorClass {
    pub fn zero() -> Self {
        DivisorClass { name: None, coeffs: [0; NUM_CURVES], listing: Vec::new() }
    }

    pub fn curve(c: CurveId) -> Self {
        Self::from_listing(None, &[c])
    }

    /// Sum of the listed curves, each with coefficient one.
    pub fn from_listing(name: Option<&str>, ids: &[CurveId]) -> Self {
        let mut d = DivisorClass::zero();
        for &c in ids {
            d.coeffs[c.index()] += 1;
        }
        d.name = name.map(str::to_string);
        d.listing = ids.to_vec();
        d
    }

    pub fn from_coeffs(name: Option<&str>, coeffs: [i64; NUM_CURVES]) -> Self {
        let listing = CurveId::all().filter(|c| coeffs[c.index()] != 0).collect();
        DivisorClass { name: name.map(str::to_string), coeffs, listing }
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn coeff(&self, c: CurveId) -> i64 {
        self.coeffs[c.index()]
    }

    pub fn coeffs(&self) -> &[i64; NUM_CURVES] {
        &self.coeffs
    }

    /// Components in listing order.
    pub fn listing(&self) -> &[CurveId] {
        &self.listing
    }

    /// Support in id order.
    pub fn support(&self) -> Vec<CurveId> {
        CurveId::all().filter(|&c| self.coeff(c) != 0).collect()
    }

    pub fn same_class(&self, other: &DivisorClass) -> bool {
        self.coeffs == other.coeffs
    }

    pub fn named(name: &str) -> Result<Self, ConfigError> {
        match name {
            "D1" => Ok(d1()),
            "D1'" => Ok(d1_prime()),
            "D2" => Ok(d2()),
            "D2'" => Ok(d2_prime()),
            _ => Err(ConfigError::UnknownDivisor(name.to_string())),
        }
    }
}

#[derive(Serialize)]
struct DivisorJson<'a> {
    name: Option<&'a str>,
    coefficients: &'a [i64; NUM_CURVES],
}

impl Serialize for DivisorClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        DivisorJson { name: self.name(), coefficients: &self.coeffs }.serialize(s)
    }
}

fn ids(spec: &[&str]) -> Vec<CurveId> {
    spec.iter().map(|s| s.parse().expect("static curve id")).collect()
}

pub fn d1() -> DivisorClass {
    DivisorClass::from_listing(Some("D1"), &ids(&["F0", "C10", "E1", "C13", "F3", "C23", "E2", "C20"]))
}

pub fn d1_prime() -> DivisorClass {
    DivisorClass::from_listing(Some("D1'"), &ids(&["E0", "C01", "F1", "C31", "E3", "C32", "F2", "C02"]))
}

pub fn d2() -> DivisorClass {
    DivisorClass::from_listing(Some("D2"), &ids(&["F0", "C30", "E3", "C31", "F1", "C21", "E2", "C20"]))
}

pub fn d2_prime() -> DivisorClass {
    DivisorClass::from_listing(Some("D2'"), &ids(&["E0", "C03", "F3", "C13", "E1", "C12", "F2", "C02"]))
}

/// Partial permutation of the 24 curves together with its character on the
/// holomorphic 2-form (`+1` symplectic, `-1` anti-symplectic).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConfigAutomorphism {
    name: String,
    map: [Option<CurveId>; NUM_CURVES],
    character: i8,
}

/// The named automorphisms and the data each one is built from.
#[derive(Clone, Copy, Debug)]
pub enum AutomorphismSpec {
    /// `C_ij -> C_{t(i) t(j)}`.
    Tau { t: Perm4 },
    /// `C_ij -> C_{t'(i) t'(j)}`.
    Nu { t_prime: Perm4 },
    /// `E_i -> F_{s(i)}`, `F_i -> E_{s'(i)}`, `C_ij -> C_{s'(j) s(i)}`; needs `E = F`.
    Sigma { s: Perm4, s_prime: Perm4, same_curve: bool },
    /// `E_i <-> F_i`, `C_ij -> C_ji` for `i != j`; the `C_ii` are not preserved.
    Epsilon,
}

impl ConfigAutomorphism {
    pub fn identity() -> Self {
        let mut map = [None; NUM_CURVES];
        for c in CurveId::all() {
            map[c.index()] = Some(c);
        }
        ConfigAutomorphism { name: "id".into(), map, character: 1 }
    }

    /// Build without checking; see [`make_automorphism`].
    pub fn from_spec(spec: AutomorphismSpec) -> Result<Self, ConfigError> {
        let mut map = [None; NUM_CURVES];
        let (name, character) = match spec {
            AutomorphismSpec::Tau { t } => {
                fill_product(&mut map, t, t);
                ("tau", 1)
            }
            AutomorphismSpec::Nu { t_prime } => {
                fill_product(&mut map, t_prime, t_prime);
                ("nu", 1)
            }
            AutomorphismSpec::Sigma { s, s_prime, same_curve } => {
                if !same_curve {
                    return Err(ConfigError::MissingSameCurveFlag);
                }
                for i in 0..4 {
                    map[CurveId::e(i).index()] = Some(CurveId::f(s.apply(i)));
                    map[CurveId::f(i).index()] = Some(CurveId::e(s_prime.apply(i)));
                    for j in 0..4 {
                        map[CurveId::c(i, j).index()] = Some(CurveId::c(s_prime.apply(j), s.apply(i)));
                    }
                }
                ("sigma", 1)
            }
            AutomorphismSpec::Epsilon => {
                for i in 0..4 {
                    map[CurveId::e(i).index()] = Some(CurveId::f(i));
                    map[CurveId::f(i).index()] = Some(CurveId::e(i));
                    for j in (0..4).filter(|&j| j != i) {
                        map[CurveId::c(i, j).index()] = Some(CurveId::c(j, i));
                    }
                }
                ("epsilon", -1)
            }
        };
        Ok(ConfigAutomorphism { name: name.into(), map, character })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn character(&self) -> i8 {
        self.character
    }

    pub fn apply(&self, c: CurveId) -> Option<CurveId> {
        self.map[c.index()]
    }

    pub fn domain(&self) -> Vec<CurveId> {
        CurveId::all().filter(|&c| self.apply(c).is_some()).collect()
    }

    pub fn is_total(&self) -> bool {
        self.map.iter().all(Option::is_some)
    }

    pub fn apply_divisor(&self, d: &DivisorClass) -> Result<DivisorClass, ConfigError> {
        let mut coeffs = [0; NUM_CURVES];
        for c in d.support() {
            let img = self.apply(c).ok_or_else(|| ConfigError::NotInDomain { name: self.name.clone(), id: c })?;
            coeffs[img.index()] += d.coeff(c);
        }
        Ok(DivisorClass::from_coeffs(None, coeffs))
    }

    /// `P^T G P = G` restricted to the domain: every pair of curves in the
    /// domain pairs exactly as its image pair does.
    pub fn check_isometry(&self, table: &IntersectionTable) -> Result<(), ConfigError> {
        let dom = self.domain();
        let mut seen = [false; NUM_CURVES];
        for &c in &dom {
            let img = self.apply(c).expect("in domain");
            if std::mem::replace(&mut seen[img.index()], true) {
                return Err(ConfigError::NotInjective { name: self.name.clone() });
            }
        }
        for &a in &dom {
            for &b in &dom {
                let before = table.get(a, b);
                let after = table.get(self.apply(a).expect("in domain"), self.apply(b).expect("in domain"));
                if before != after {
                    return Err(ConfigError::IsometryViolation { name: self.name.clone(), a, b, before, after });
                }
            }
        }
        Ok(())
    }

    /// `self after other`; defined where `other` lands in the domain of `self`.
    pub fn compose(&self, other: &ConfigAutomorphism) -> ConfigAutomorphism {
        let mut map = [None; NUM_CURVES];
        for c in CurveId::all() {
            map[c.index()] = other.apply(c).and_then(|m| self.apply(m));
        }
        ConfigAutomorphism {
            name: format!("{}*{}", self.name, other.name),
            map,
            character: self.character * other.character,
        }
    }

    /// True when the map sends every `E` to an `E` and every `F` to an `F`,
    /// or swaps the two families wholesale.
    pub fn preserves_ef_partition(&self) -> bool {
        let family = |c: CurveId| match c.kind() {
            CurveKind::E(_) => Some(0),
            CurveKind::F(_) => Some(1),
            CurveKind::C(..) => None,
        };
        let mut flips = Vec::new();
        for c in CurveId::all() {
            let (Some(fc), Some(img)) = (family(c), self.apply(c)) else { continue };
            match family(img) {
                Some(fi) => flips.push(fc != fi),
                None => return false,
            }
        }
        flips.windows(2).all(|w| w[0] == w[1])
    }

    pub fn fixes_on_domain(&self) -> bool {
        self.domain().into_iter().all(|c| self.apply(c) == Some(c))
    }
}

fn fill_product(map: &mut [Option<CurveId>; NUM_CURVES], pe: Perm4, pf: Perm4) {
    for i in 0..4 {
        map[CurveId::e(i).index()] = Some(CurveId::e(pe.apply(i)));
        map[CurveId::f(i).index()] = Some(CurveId::f(pf.apply(i)));
        for j in 0..4 {
            map[CurveId::c(i, j).index()] = Some(CurveId::c(pe.apply(i), pf.apply(j)));
        }
    }
}

/// Build a named automorphism and verify it is an isometry of `table`.
pub fn make_automorphism(table: &IntersectionTable, spec: AutomorphismSpec) -> Result<ConfigAutomorphism, ConfigError> {
    let a = ConfigAutomorphism::from_spec(spec)?;
    a.check_isometry(table)?;
    Ok(a)
}

#[derive(Serialize)]
struct AutJson<'a> {
    name: &'a str,
    permutation: &'a [Option<CurveId>; NUM_CURVES],
    character: i8,
}

impl Serialize for ConfigAutomorphism {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        AutJson { name: &self.name, permutation: &self.map, character: self.character }.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for c in CurveId::all() {
            assert_eq!(c.to_string().parse::<CurveId>().unwrap(), c);
        }
        assert!("C44".parse::<CurveId>().is_err());
        assert!("G1".parse::<CurveId>().is_err());
        assert_eq!(CurveId::c(3, 2).to_string(), "C32");
    }

    #[test]
    fn table_examples() {
        let t = IntersectionTable::standard();
        let id = |s: &str| s.parse::<CurveId>().unwrap();
        assert_eq!(t.get(id("E0"), id("C03")), 1);
        assert_eq!(t.get(id("E0"), id("F2")), 0);
        assert_eq!(t.get(id("C11"), id("C11")), -2);
        assert!(t.is_symmetric());
    }

    #[test]
    fn compose_domains() {
        let eps = ConfigAutomorphism::from_spec(AutomorphismSpec::Epsilon).unwrap();
        let sq = eps.compose(&eps);
        assert_eq!(sq.domain().len(), 20);
        assert!(sq.fixes_on_domain());
        assert_eq!(sq.character(), 1);
    }
}
