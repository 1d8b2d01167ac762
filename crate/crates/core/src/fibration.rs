//! Elliptic fibrations `|D1|` and `|D2|`: their `I8` fibers, sections, the
//! self-height of a section and Shioda-Tate / Euler bookkeeping.

use kummer_field::{rat, BigRational};
use num_traits::Zero;
use serde::Serialize;

use crate::config::{self, CurveId, DivisorClass, IntersectionTable};
use crate::error::{ConfigError, FibrationError};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum KodairaType {
    I1,
    I8,
}

impl KodairaType {
    pub fn euler_number(self) -> i64 {
        match self {
            KodairaType::I1 => 1,
            KodairaType::I8 => 8,
        }
    }

    pub fn components(self) -> i64 {
        match self {
            KodairaType::I1 => 1,
            KodairaType::I8 => 8,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FiberConfiguration {
    pub name: String,
    pub kodaira_type: KodairaType,
    /// Cyclic order; empty for `I1`.
    pub components: Vec<CurveId>,
}

impl FiberConfiguration {
    pub fn position(&self, c: CurveId) -> Option<usize> {
        self.components.iter().position(|&x| x == c)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EllipticFibrationData {
    pub name: String,
    pub fiber_class: DivisorClass,
    pub zero_section: CurveId,
    #[serde(rename = "cycles")]
    pub reducible_fibers: Vec<FiberConfiguration>,
    pub i1_count: i64,
    #[serde(skip)]
    pub chi: i64,
    #[serde(skip)]
    table: IntersectionTable,
}

/// Which fiber component a section meets, and where, measured from the
/// component met by the zero section.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SectionEntry {
    pub fiber: String,
    pub component: CurveId,
    pub position: usize,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SectionRecord {
    pub id: CurveId,
    pub entries: Vec<SectionEntry>,
}

/// `2 chi + 2 (P.O) - sum of fiber contributions`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HeightBreakdown {
    pub two_chi: BigRational,
    pub two_dot_zero: BigRational,
    pub contributions: Vec<BigRational>,
    pub total: BigRational,
}

impl HeightBreakdown {
    pub fn summands(&self) -> Vec<BigRational> {
        let mut v = vec![self.two_chi.clone(), self.two_dot_zero.clone()];
        v.extend(self.contributions.iter().map(|c| -c));
        v
    }
}

/// Both named fibrations: fiber classes, zero sections.
pub fn named_fibration(name: &str) -> Result<(DivisorClass, DivisorClass, CurveId), FibrationError> {
    match name {
        "D1" => Ok((config::d1(), config::d1_prime(), CurveId::c(2, 1))),
        "D2" => Ok((config::d2(), config::d2_prime(), CurveId::c(2, 3))),
        other => Err(ConfigError::UnknownDivisor(other.into()).into()),
    }
}

/// Read the support of `fiber` as a cycle: start at the first listed
/// component, step to its earliest-listed neighbour, then walk.
pub fn cycle_from_adjacency(table: &IntersectionTable, fiber: &DivisorClass) -> Result<Vec<CurveId>, FibrationError> {
    let listing = fiber.listing();
    let Some(&start) = listing.first() else {
        return Err(FibrationError::NotACycle("empty fiber".into()));
    };
    let neighbours = |c: CurveId| -> Vec<CurveId> {
        listing.iter().copied().filter(|&d| d != c && table.get(c, d) != 0).collect()
    };
    let mut cycle = vec![start];
    let mut prev = None;
    let mut cur = start;
    loop {
        let nb = neighbours(cur);
        if nb.len() != 2 {
            return Err(FibrationError::NotACycle(format!("{cur} has {} neighbours in the fiber", nb.len())));
        }
        let next = match prev {
            None => nb[0],
            Some(p) => *nb.iter().find(|&&n| n != p).ok_or_else(|| FibrationError::NotACycle(format!("{cur} is a dead end")))?,
        };
        if next == start {
            break;
        }
        if cycle.contains(&next) || cycle.len() >= listing.len() {
            return Err(FibrationError::NotACycle(format!("walk revisits {next}")));
        }
        cycle.push(next);
        prev = Some(cur);
        cur = next;
    }
    if cycle.len() != listing.len() {
        return Err(FibrationError::NotACycle(format!("cycle has {} of {} components", cycle.len(), listing.len())));
    }
    validate_cycle(table, &cycle)?;
    Ok(cycle)
}

/// Consecutive components pair to 1, all other distinct pairs to 0.
pub fn validate_cycle(table: &IntersectionTable, cycle: &[CurveId]) -> Result<(), FibrationError> {
    let n = cycle.len();
    if n != 8 {
        return Err(FibrationError::NotACycle(format!("{n} components, expected 8")));
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let d = (i + n - j) % n;
            let expected = if d == 1 || d == n - 1 { 1 } else { 0 };
            let got = table.get(cycle[i], cycle[j]);
            if got != expected {
                return Err(FibrationError::NotACycle(format!("{}.{} = {got}, expected {expected}", cycle[i], cycle[j])));
            }
        }
    }
    Ok(())
}

pub fn build_fibration(table: &IntersectionTable, name: &str) -> Result<EllipticFibrationData, FibrationError> {
    build_fibration_with(table, name, None)
}

/// As [`build_fibration`], but a caller-supplied cyclic order for the main
/// fiber replaces the one read off the table (it is still validated).
pub fn build_fibration_with(
    table: &IntersectionTable,
    name: &str,
    cycle_override: Option<&[CurveId]>,
) -> Result<EllipticFibrationData, FibrationError> {
    let (fiber, partner, zero) = named_fibration(name)?;
    let main_cycle = match cycle_override {
        Some(c) => {
            validate_cycle(table, c)?;
            if c.iter().any(|&x| fiber.coeff(x) == 0) {
                return Err(FibrationError::NotACycle("override leaves the fiber support".into()));
            }
            c.to_vec()
        }
        None => cycle_from_adjacency(table, &fiber)?,
    };
    let partner_cycle = cycle_from_adjacency(table, &partner)?;
    let reducible = vec![
        FiberConfiguration { name: fiber.name().unwrap_or_default().into(), kodaira_type: KodairaType::I8, components: main_cycle },
        FiberConfiguration { name: partner.name().unwrap_or_default().into(), kodaira_type: KodairaType::I8, components: partner_cycle },
    ];
    if table.pair(&DivisorClass::curve(zero), &fiber) != 1 || fiber.coeff(zero) != 0 {
        return Err(FibrationError::BadZeroSection(zero));
    }
    let reducible_euler: i64 = reducible.iter().map(|f| f.kodaira_type.euler_number()).sum();
    let i1_count = 24 - reducible_euler;
    Ok(EllipticFibrationData {
        name: name.into(),
        fiber_class: fiber,
        zero_section: zero,
        reducible_fibers: reducible,
        i1_count,
        chi: 2,
        table: table.clone(),
    })
}

impl EllipticFibrationData {
    /// `sum e(F_v)` over reducible and `I1` fibers.
    pub fn euler_census(&self) -> i64 {
        self.reducible_fibers.iter().map(|f| f.kodaira_type.euler_number()).sum::<i64>() + self.i1_count * KodairaType::I1.euler_number()
    }

    pub fn table(&self) -> &IntersectionTable {
        &self.table
    }

    pub fn is_section(&self, s: CurveId) -> bool {
        self.table.sections_of(&self.fiber_class).contains(&s)
    }

    fn component_met(&self, fiber: &FiberConfiguration, s: CurveId) -> Result<CurveId, FibrationError> {
        let met: Vec<CurveId> = fiber.components.iter().copied().filter(|&c| self.table.get(s, c) != 0).collect();
        match met.as_slice() {
            [c] if self.table.get(s, *c) == 1 => Ok(*c),
            _ => Err(FibrationError::NotASection(s)),
        }
    }

    pub fn section_positions(&self, s: CurveId) -> Result<SectionRecord, FibrationError> {
        if !self.is_section(s) && s != self.zero_section {
            return Err(FibrationError::NotASection(s));
        }
        let mut entries = Vec::new();
        for fib in &self.reducible_fibers {
            let comp = self.component_met(fib, s)?;
            let zero_comp = self.component_met(fib, self.zero_section)?;
            let n = fib.components.len();
            let pos = (fib.position(comp).expect("component") + n - fib.position(zero_comp).expect("component")) % n;
            entries.push(SectionEntry { fiber: fib.name.clone(), component: comp, position: pos });
        }
        Ok(SectionRecord { id: s, entries })
    }

    pub fn height_self(&self, s: CurveId) -> Result<HeightBreakdown, FibrationError> {
        let rec = self.section_positions(s)?;
        let dot_zero = self.table.get(s, self.zero_section);
        let distances: Vec<usize> = rec.entries.iter().map(|e| e.position).collect();
        Ok(height_from_positions(self.chi, dot_zero, &distances, 8))
    }

    pub fn torsion_candidate(&self, s: CurveId) -> Result<bool, FibrationError> {
        Ok(self.height_self(s)?.total.is_zero())
    }

    /// For a height-0 section: the order of its image in the product of the
    /// component groups `Z/8`, which torsion sections inject into.
    pub fn torsion_order(&self, s: CurveId) -> Result<Option<u64>, FibrationError> {
        if !self.torsion_candidate(s)? {
            return Ok(None);
        }
        let rec = self.section_positions(s)?;
        let order = rec.entries.iter().fold(1u64, |acc, e| {
            let o = 8 / num_integer::gcd(8, e.position as u64);
            num_integer::lcm(acc, o)
        });
        Ok(Some(order))
    }

    pub fn shioda_tate_rank(&self, rho: i64) -> Result<i64, FibrationError> {
        shioda_tate_rank(rho, &self.reducible_fibers)
    }
}

/// Height from raw data: positions are taken mod `n` and folded to the cyclic
/// distance `min(i, n - i)`; each fiber contributes `d (n - d) / n`.
pub fn height_from_positions(chi: i64, dot_zero: i64, positions: &[usize], n: usize) -> HeightBreakdown {
    let two_chi = rat(2 * chi, 1);
    let two_dot_zero = rat(2 * dot_zero, 1);
    let contributions: Vec<BigRational> = positions
        .iter()
        .map(|&p| {
            let p = p % n;
            let d = p.min(n - p) as i64;
            rat(d * (n as i64 - d), n as i64)
        })
        .collect();
    let total = contributions.iter().fold(&two_chi + &two_dot_zero, |acc, c| acc - c);
    HeightBreakdown { two_chi, two_dot_zero, contributions, total }
}

/// `rho - 2 - sum (m_v - 1)`.
pub fn shioda_tate_rank(rho: i64, fibers: &[FiberConfiguration]) -> Result<i64, FibrationError> {
    let rank = rho - 2 - fibers.iter().map(|f| f.kodaira_type.components() - 1).sum::<i64>();
    if rank < 0 {
        return Err(FibrationError::NegativeRank(rank));
    }
    Ok(rank)
}

/// Riemann-Hurwitz for a double cover of `P^1` branched at `b` points.
pub fn genus_double_cover(branch_count: u64) -> Result<u64, FibrationError> {
    if branch_count == 0 || branch_count % 2 == 1 {
        return Err(FibrationError::BadBranchCount(branch_count));
    }
    Ok(branch_count / 2 - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_examples() {
        assert_eq!(genus_double_cover(8), Ok(3));
        assert_eq!(genus_double_cover(2), Ok(0));
        assert_eq!(genus_double_cover(4), Ok(1));
        assert!(genus_double_cover(5).is_err());
    }

    #[test]
    fn hypothetical_distance_one_section() {
        let h = height_from_positions(2, 0, &[1], 8);
        assert_eq!(h.total, rat(4, 1) - rat(7, 8));
        assert!(h.total > rat(0, 1));
    }

    #[test]
    fn rank_without_reducible_fibers() {
        assert_eq!(shioda_tate_rank(18, &[]), Ok(16));
    }
}
