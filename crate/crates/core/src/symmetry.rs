//! The named automorphisms with their index permutations taken from the
//! Legendre group law, the partial action of `psi`, and configuration-level
//! chases for `f eps = eps f`, `psi eps = eps psi` and `h sigma | F3 = id`.

use std::collections::BTreeMap;

use kummer_field::RationalFunction;
use serde::Serialize;

use crate::config::{make_automorphism, AutomorphismSpec, ConfigAutomorphism, CurveId, IntersectionTable};
use crate::error::{ConfigError, FibrationError};
use crate::fibration::{build_fibration, EllipticFibrationData};
use crate::legendre::{LegendreCurve, Perm4};
use crate::torsor::{psi_restriction, raw_coordinate, MarkedPointTable};

/// `t, t'` (for `tau`, `nu`) and `s, s'` (for `sigma`), each a translation
/// by a 2-torsion point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GroupLawPermutations {
    pub t: Perm4,
    pub t_prime: Perm4,
    pub s: Perm4,
    pub s_prime: Perm4,
}

impl GroupLawPermutations {
    /// `t`: by `tau_3` on `E`; `t'`: by `tau_1` on `F`; `s`: by `tau_2`;
    /// `s'`: by `tau_1`, the last two on the common curve `E = F`.
    pub fn compute() -> Result<Self, ConfigError> {
        let e = LegendreCurve::new(RationalFunction::s())?;
        let f = LegendreCurve::new(RationalFunction::t())?;
        Ok(GroupLawPermutations {
            t: e.translation_permutation(3)?,
            t_prime: f.translation_permutation(1)?,
            s: e.translation_permutation(2)?,
            s_prime: e.translation_permutation(1)?,
        })
    }
}

#[derive(Clone, Debug)]
pub struct NamedAutomorphisms {
    pub tau: ConfigAutomorphism,
    pub nu: ConfigAutomorphism,
    pub sigma: ConfigAutomorphism,
    pub epsilon: ConfigAutomorphism,
}

impl NamedAutomorphisms {
    pub fn all(&self) -> [&ConfigAutomorphism; 4] {
        [&self.tau, &self.nu, &self.sigma, &self.epsilon]
    }
}

/// The four automorphisms, each checked to be an isometry of `table`.
pub fn named_automorphisms(table: &IntersectionTable) -> Result<NamedAutomorphisms, ConfigError> {
    let p = GroupLawPermutations::compute()?;
    Ok(NamedAutomorphisms {
        tau: make_automorphism(table, AutomorphismSpec::Tau { t: p.t })?,
        nu: make_automorphism(table, AutomorphismSpec::Nu { t_prime: p.t_prime })?,
        sigma: make_automorphism(table, AutomorphismSpec::Sigma { s: p.s, s_prime: p.s_prime, same_curve: true })?,
        epsilon: make_automorphism(table, AutomorphismSpec::Epsilon)?,
    })
}

/// The known part of a map on curves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartialAction {
    pub name: String,
    pub pairs: BTreeMap<CurveId, CurveId>,
}

impl PartialAction {
    pub fn apply(&self, c: CurveId) -> Option<CurveId> {
        self.pairs.get(&c).copied()
    }

    pub fn apply_inverse(&self, c: CurveId) -> Option<CurveId> {
        self.pairs.iter().find(|(_, &v)| v == c).map(|(&k, _)| k)
    }
}

/// Inversion on `Phi_|D2|` with zero section `C23`: it fixes the zero
/// section and the 2-torsion section `C32`, preserves the zero component
/// `E2`, and on `E2` acts by [`psi_restriction`], which decides where the
/// two points `E2 n C20`, `E2 n C21` go.
pub fn psi_partial_action(table: &IntersectionTable) -> Result<PartialAction, FibrationError> {
    let d2 = build_fibration(table, "D2")?;
    let zero = d2.zero_section;
    let mut pairs = BTreeMap::new();
    pairs.insert(zero, zero);
    let zero_comp = d2.section_positions(zero)?.entries[0].component;
    pairs.insert(zero_comp, zero_comp);
    let two_torsion = CurveId::c(3, 2);
    if d2.torsion_order(two_torsion)? != Some(2) {
        return Err(FibrationError::NotASection(two_torsion));
    }
    pairs.insert(two_torsion, two_torsion);
    let (s, t) = (RationalFunction::s(), RationalFunction::t());
    let psi = psi_restriction();
    let cycle = &d2.reducible_fibers[0].components;
    let neighbours: Vec<CurveId> = cycle.iter().copied().filter(|&c| table.get(c, zero_comp) == 1).collect();
    for &c in &neighbours {
        let raw = raw_coordinate(zero_comp, c, &s, &t).ok_or(FibrationError::NotASection(c))?;
        let image = psi.apply(&raw);
        let target = neighbours
            .iter()
            .copied()
            .find(|&d| raw_coordinate(zero_comp, d, &s, &t).as_ref() == Some(&image))
            .ok_or(FibrationError::NotASection(c))?;
        pairs.insert(c, target);
    }
    Ok(PartialAction { name: "psi".into(), pairs })
}

/// Additive coordinates `(a mod 2, b)` on the sections of `Phi_|D1|` used by
/// the chase: `C21 = 0`, `C12` of order 2, `C03` (the translation `f`), and
/// `C30 = C12 + C03`.
#[derive(Clone, Debug)]
pub struct SectionLattice {
    coords: Vec<(CurveId, (i64, i64))>,
}

impl SectionLattice {
    /// The coordinates, with the two derived facts checked against the data:
    /// `C12` has torsion order 2, and the components met add up for
    /// `C12 + C03 = C30`.
    pub fn d1(table: &IntersectionTable) -> Result<Self, FibrationError> {
        let d1 = build_fibration(table, "D1")?;
        if d1.torsion_order(CurveId::c(1, 2))? != Some(2) {
            return Err(FibrationError::NotASection(CurveId::c(1, 2)));
        }
        let pos = |c: CurveId| -> Result<Vec<usize>, FibrationError> {
            Ok(d1.section_positions(c)?.entries.iter().map(|e| e.position).collect())
        };
        let (p12, p03, p30) = (pos(CurveId::c(1, 2))?, pos(CurveId::c(0, 3))?, pos(CurveId::c(3, 0))?);
        if (0..p12.len()).any(|k| (p12[k] + p03[k]) % 8 != p30[k]) {
            return Err(FibrationError::NotASection(CurveId::c(3, 0)));
        }
        Ok(SectionLattice {
            coords: vec![
                (d1.zero_section, (0, 0)),
                (CurveId::c(1, 2), (1, 0)),
                (CurveId::c(0, 3), (0, 1)),
                (CurveId::c(3, 0), (1, 1)),
            ],
        })
    }

    fn coord(&self, c: CurveId) -> Option<(i64, i64)> {
        self.coords.iter().find(|(k, _)| *k == c).map(|&(_, v)| v)
    }

    fn section(&self, v: (i64, i64)) -> Option<CurveId> {
        let v = (v.0.rem_euclid(2), v.1);
        self.coords.iter().find(|(_, w)| *w == v).map(|&(k, _)| k)
    }

    /// Translation by `k` copies of `C03`.
    pub fn translate(&self, c: CurveId, k: i64) -> Option<CurveId> {
        let (a, b) = self.coord(c)?;
        self.section((a, b + k))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChaseStep {
    pub map: String,
    pub from: CurveId,
    pub to: CurveId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Chase {
    pub name: String,
    pub steps: Vec<ChaseStep>,
    /// The composite returns the starting curve.
    pub closes: bool,
    /// Character of the commutator; `+1` means symplectic.
    pub character: i8,
}

fn run_chase(name: &str, start: CurveId, maps: &[(&str, &dyn Fn(CurveId) -> Option<CurveId>)], character: i8) -> Chase {
    let mut steps = Vec::new();
    let mut cur = start;
    let mut complete = true;
    for (label, m) in maps {
        match m(cur) {
            Some(next) => {
                steps.push(ChaseStep { map: label.to_string(), from: cur, to: next });
                cur = next;
            }
            None => {
                complete = false;
                break;
            }
        }
    }
    Chase { name: name.into(), steps, closes: complete && cur == start, character }
}

/// `f^-1 eps^-1 f eps` applied to `C12`.
pub fn chase_f_epsilon(table: &IntersectionTable, autos: &NamedAutomorphisms) -> Result<Chase, FibrationError> {
    let lattice = SectionLattice::d1(table)?;
    let eps = &autos.epsilon;
    let eps_inv = |c: CurveId| CurveId::all().find(|&d| eps.apply(d) == Some(c));
    let maps: [(&str, &dyn Fn(CurveId) -> Option<CurveId>); 4] = [
        ("eps", &|c| eps.apply(c)),
        ("f", &|c| lattice.translate(c, 1)),
        ("eps^-1", &eps_inv),
        ("f^-1", &|c| lattice.translate(c, -1)),
    ];
    let character = eps.character() * eps.character();
    Ok(run_chase("f eps f^-1 eps^-1", CurveId::c(1, 2), &maps, character))
}

/// `eps^-1 psi^-1 eps psi` applied to `C23`.
pub fn chase_psi_epsilon(table: &IntersectionTable, autos: &NamedAutomorphisms) -> Result<Chase, FibrationError> {
    let psi = psi_partial_action(table)?;
    let eps = &autos.epsilon;
    let eps_inv = |c: CurveId| CurveId::all().find(|&d| eps.apply(d) == Some(c));
    let maps: [(&str, &dyn Fn(CurveId) -> Option<CurveId>); 4] = [
        ("psi", &|c| psi.apply(c)),
        ("eps", &|c| eps.apply(c)),
        ("psi^-1", &|c| psi.apply_inverse(c)),
        ("eps^-1", &eps_inv),
    ];
    let character = eps.character() * eps.character();
    Ok(run_chase("psi eps psi^-1 eps^-1", CurveId::c(2, 3), &maps, character))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HSigmaCheck {
    /// Shift of `h` (translation by `C33`) on the cycle.
    pub h_shift: usize,
    /// Cycle components not fixed by `h sigma`.
    pub moved_components: Vec<CurveId>,
    /// `sigma` sends `(C33, F3)` to `(zero section, zero component)`.
    pub marked_point_fixed: bool,
    pub fixes_f3_pointwise: bool,
}

/// `h sigma` fixes every component of the `D1` cycle and three points of
/// `F3` (its two nodes and `F3 n C33`), hence `F3` pointwise.
pub fn h_sigma_fixes_f3(table: &IntersectionTable, sigma: &ConfigAutomorphism, marked: &MarkedPointTable) -> Result<HSigmaCheck, FibrationError> {
    let d1: EllipticFibrationData = build_fibration(table, "D1")?;
    let cycle = &marked.cycle;
    let n = cycle.len();
    let pos = |c: CurveId| cycle.iter().position(|&d| d == c);
    let h_section = CurveId::c(3, 3);
    let f3 = CurveId::F3;
    let h_comp = cycle.iter().copied().find(|&c| table.get(c, h_section) == 1).ok_or(FibrationError::NotASection(h_section))?;
    let h_shift = pos(h_comp).expect("in cycle");
    let mut moved = Vec::new();
    for &c in cycle {
        let image = sigma.apply(c).and_then(pos).map(|p| cycle[(p + h_shift) % n]);
        if image != Some(c) {
            moved.push(c);
        }
    }
    let zero_comp = cycle[0];
    let marked_point_fixed = h_comp == f3 && sigma.apply(h_section) == Some(d1.zero_section) && sigma.apply(f3) == Some(zero_comp);
    let f3_nodes_fixed = [cycle[(pos(f3).unwrap_or(0) + n - 1) % n], cycle[(pos(f3).unwrap_or(0) + 1) % n]]
        .iter()
        .all(|c| !moved.contains(c));
    let fixes = moved.is_empty() && marked_point_fixed && f3_nodes_fixed && !moved.contains(&f3);
    Ok(HSigmaCheck { h_shift, moved_components: moved, marked_point_fixed, fixes_f3_pointwise: fixes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torsor::{calibrate, CalibrationMode};

    #[test]
    fn permutations_from_group_law() {
        let p = GroupLawPermutations::compute().unwrap();
        assert_eq!(p.t, Perm4([3, 2, 1, 0]));
        assert_eq!(p.t_prime, Perm4([1, 0, 3, 2]));
        assert_eq!(p.s, Perm4([2, 3, 0, 1]));
        assert_eq!(p.s_prime, Perm4([1, 0, 3, 2]));
    }

    #[test]
    fn chases_close() {
        let table = IntersectionTable::standard();
        let autos = named_automorphisms(&table).unwrap();
        assert!(chase_f_epsilon(&table, &autos).unwrap().closes);
        assert!(chase_psi_epsilon(&table, &autos).unwrap().closes);
    }

    #[test]
    fn psi_swaps_neighbours_of_e2() {
        let psi = psi_partial_action(&IntersectionTable::standard()).unwrap();
        assert_eq!(psi.apply(CurveId::c(2, 0)), Some(CurveId::c(2, 1)));
        assert_eq!(psi.apply(CurveId::c(3, 2)), Some(CurveId::c(3, 2)));
    }

    #[test]
    fn h_sigma() {
        let table = IntersectionTable::standard();
        let autos = named_automorphisms(&table).unwrap();
        let sol = calibrate(&table, CalibrationMode::Diagonal).unwrap();
        let check = h_sigma_fixes_f3(&table, &autos.sigma, sol.marked_points()).unwrap();
        assert!(check.fixes_f3_pointwise, "{check:?}");
        assert_eq!(check.h_shift, 2);
    }
}
