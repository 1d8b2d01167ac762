//! The smooth locus of the `I8` fiber `D1` as `G_m x Z/8`, per-component
//! normalization and its calibration, and the restriction calculus on `E2`.
//!
//! Components of the cycle are numbered from `E2` (the component met by the
//! zero section `C21`). On the component at position `k` the coordinate is
//! `z = c_k * M_k(x)`, where `x` is the Legendre coordinate, `M_k` sends the
//! two points where the component meets its cycle neighbours to `{0, inf}`,
//! and `c_k` is a scale to be calibrated. The group law is the pure one,
//! `(u, j)(v, k) = (uv, j + k)`.

use std::fmt;

use kummer_field::{linalg, rat, BigRational, RationalFunction, Var};
use serde::Serialize;

use crate::config::{CurveId, CurveKind, IntersectionTable};
use crate::error::TorsorError;
use crate::fibration::build_fibration_with;
use crate::legendre::P1Point;
use crate::mobius::MobiusMap;

type Rf = RationalFunction;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TorsorElement {
    scalar: Rf,
    shift: u8,
}

impl TorsorElement {
    pub fn new(scalar: Rf, shift: i64) -> Result<Self, TorsorError> {
        if scalar.is_zero() {
            return Err(TorsorError::Inconsistent("zero torsor scalar".into()));
        }
        Ok(TorsorElement { scalar, shift: shift.rem_euclid(8) as u8 })
    }

    pub fn identity() -> Self {
        TorsorElement { scalar: Rf::one(), shift: 0 }
    }

    pub fn scalar(&self) -> &Rf {
        &self.scalar
    }

    pub fn shift(&self) -> u8 {
        self.shift
    }

    pub fn mul(&self, other: &TorsorElement) -> TorsorElement {
        TorsorElement { scalar: &self.scalar * &other.scalar, shift: (self.shift + other.shift) % 8 }
    }

    pub fn inverse(&self) -> TorsorElement {
        TorsorElement { scalar: self.scalar.inv().expect("nonzero scalar"), shift: (8 - self.shift) % 8 }
    }

    pub fn pow(&self, n: i64) -> TorsorElement {
        TorsorElement {
            scalar: self.scalar.pow(n),
            shift: (self.shift as i64 * n).rem_euclid(8) as u8,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.shift == 0 && self.scalar.is_one()
    }

    /// Action on a single component: defined when the shift is 0.
    pub fn restriction(&self) -> Option<MobiusMap> {
        (self.shift == 0).then(|| MobiusMap::scaling(self.scalar.clone()))
    }

    pub fn subst(&self, v: Var, value: &Rf) -> Result<TorsorElement, TorsorError> {
        TorsorElement::new(self.scalar.subst(v, value)?, self.shift as i64)
    }
}

impl fmt::Display for TorsorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.scalar, self.shift)
    }
}

impl Serialize for TorsorElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("TorsorElement", 2)?;
        st.serialize_field("scalar", &self.scalar.to_string())?;
        st.serialize_field("shift", &self.shift)?;
        st.end()
    }
}

/// `x`-values of the four 2-torsion points: `0, 1, lambda, inf`.
fn two_torsion_value(k: usize, lambda: &Rf) -> P1Point {
    match k {
        0 => P1Point::Finite(Rf::zero()),
        1 => P1Point::Finite(Rf::one()),
        2 => P1Point::Finite(lambda.clone()),
        _ => P1Point::Infinity,
    }
}

/// Where `C_ij` meets `E_i` (at `x = value_j(s)`) or `F_j` (at
/// `x' = value_i(t)`); `None` if they do not meet.
pub fn raw_coordinate(component: CurveId, curve: CurveId, s: &Rf, t: &Rf) -> Option<P1Point> {
    let CurveKind::C(i, j) = curve.kind() else {
        return None;
    };
    match component.kind() {
        CurveKind::E(k) if k == i => Some(two_torsion_value(j, s)),
        CurveKind::F(k) if k == j => Some(two_torsion_value(i, t)),
        _ => None,
    }
}

/// `a -> 0`, `b -> inf`.
fn node_map(a: &P1Point, b: &P1Point) -> MobiusMap {
    let one = Rf::one;
    let zero = Rf::zero;
    let m = match (a, b) {
        (P1Point::Finite(a), P1Point::Finite(b)) => MobiusMap::new(one(), -a, one(), -b),
        (P1Point::Infinity, P1Point::Finite(b)) => MobiusMap::new(zero(), one(), one(), -b),
        (P1Point::Finite(a), P1Point::Infinity) => MobiusMap::new(one(), -a, zero(), one()),
        _ => unreachable!("distinct nodes"),
    };
    m.expect("distinct nodes give an invertible map")
}

fn swap_zero_infinity() -> MobiusMap {
    MobiusMap::new(Rf::zero(), Rf::one(), Rf::one(), Rf::zero()).expect("invertible")
}

/// One even-position component of the cycle.
#[derive(Clone, Debug)]
pub struct ComponentFrame {
    pub component: CurveId,
    pub position: usize,
    pub prev: CurveId,
    pub next: CurveId,
    /// `false`: the lower-id neighbour goes to 0; `true`: to `inf`.
    pub orientation: bool,
    normalization: MobiusMap,
}

impl ComponentFrame {
    /// Normalized coordinate `M_k(x)` of a point, before scaling.
    pub fn normalize(&self, raw: &P1Point) -> P1Point {
        self.normalization.apply(raw)
    }
}

/// The marked points on the even components of `D1` for a cycle direction.
#[derive(Clone, Debug)]
pub struct MarkedPointTable {
    s: Rf,
    t: Rf,
    pub cycle: Vec<CurveId>,
    pub direction: i8,
    pub frames: Vec<ComponentFrame>,
}

impl MarkedPointTable {
    /// `direction = 1` walks the cycle as read from the table, `-1` reverses it.
    pub fn build(table: &IntersectionTable, s: &Rf, t: &Rf, direction: i8) -> Result<Self, TorsorError> {
        Self::build_with(table, s, t, direction, None)
    }

    /// As [`Self::build`] with a caller-supplied cyclic order for `D1`.
    pub fn build_with(
        table: &IntersectionTable,
        s: &Rf,
        t: &Rf,
        direction: i8,
        cycle_override: Option<&[CurveId]>,
    ) -> Result<Self, TorsorError> {
        let fib = build_fibration_with(table, "D1", cycle_override)?;
        let cycle = &fib.reducible_fibers[0].components;
        let zero_comp = cycle
            .iter()
            .copied()
            .find(|&c| table.get(c, fib.zero_section) == 1)
            .ok_or(crate::error::FibrationError::BadZeroSection(fib.zero_section))?;
        Self::from_cycle(cycle, zero_comp, s, t, direction)
    }

    pub fn from_cycle(cycle: &[CurveId], start: CurveId, s: &Rf, t: &Rf, direction: i8) -> Result<Self, TorsorError> {
        let n = cycle.len();
        let p0 = cycle.iter().position(|&c| c == start).ok_or(TorsorError::NotASection(start))?;
        let ordered: Vec<CurveId> = (0..n)
            .map(|k| {
                let idx = if direction >= 0 { p0 + k } else { p0 + n - k };
                cycle[idx % n]
            })
            .collect();
        let mut frames = Vec::new();
        for pos in (0..n).step_by(2) {
            let comp = ordered[pos];
            let prev = ordered[(pos + n - 1) % n];
            let next = ordered[(pos + 1) % n];
            let raw = |c: CurveId| raw_coordinate(comp, c, s, t).ok_or(TorsorError::NotASection(c));
            let (raw_prev, raw_next) = (raw(prev)?, raw(next)?);
            let (lo, hi) = if prev < next { (&raw_prev, &raw_next) } else { (&raw_next, &raw_prev) };
            let base = node_map(lo, hi);
            let flip = swap_zero_infinity().compose(&base);
            // the gluing rule: previous neighbour at 0, next at inf
            let mut chosen = None;
            for (bit, m) in [(false, base), (true, flip)] {
                if m.apply(&raw_prev) == P1Point::Finite(Rf::zero()) && m.apply(&raw_next) == P1Point::Infinity {
                    chosen = Some((bit, m));
                }
            }
            let (orientation, normalization) =
                chosen.ok_or_else(|| TorsorError::Inconsistent(format!("no orientation of {comp} obeys the gluing rule")))?;
            frames.push(ComponentFrame { component: comp, position: pos, prev, next, orientation, normalization });
        }
        Ok(MarkedPointTable { s: s.clone(), t: t.clone(), cycle: ordered, direction, frames })
    }

    pub fn frame(&self, comp: CurveId) -> Option<&ComponentFrame> {
        self.frames.iter().find(|f| f.component == comp)
    }

    /// The frame a section meets, with the normalized (unscaled) coordinate.
    fn locate(&self, section: CurveId) -> Result<(&ComponentFrame, Rf), TorsorError> {
        if self.cycle.contains(&section) {
            return Err(TorsorError::NotASection(section));
        }
        let hits: Vec<_> = self
            .frames
            .iter()
            .filter_map(|f| raw_coordinate(f.component, section, &self.s, &self.t).map(|p| (f, p)))
            .collect();
        let [(frame, raw)] = hits.as_slice() else {
            return Err(TorsorError::NotASection(section));
        };
        match frame.normalize(raw) {
            P1Point::Finite(z) if !z.is_zero() => Ok((frame, z)),
            _ => Err(TorsorError::NotASection(section)),
        }
    }

    /// Translation by a section: `(c_k M_k(x), k)` with `c_k` the symbol
    /// `c<k>` still unresolved.
    pub fn translation_of_section(&self, section: CurveId) -> Result<TorsorElement, TorsorError> {
        let (frame, z) = self.locate(section)?;
        let c = Rf::var(Var::scale(frame.position));
        TorsorElement::new(&c * &z, frame.position as i64)
    }

    /// The same with the scales replaced by calibrated values.
    pub fn element(&self, section: CurveId, scales: &[(CurveId, Rf)]) -> Result<TorsorElement, TorsorError> {
        let (frame, z) = self.locate(section)?;
        let c = scales
            .iter()
            .find(|(k, _)| *k == frame.component)
            .map(|(_, v)| v.clone())
            .ok_or_else(|| TorsorError::Inconsistent(format!("no scale for {}", frame.component)))?;
        TorsorElement::new(&c * &z, frame.position as i64)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CalibrationMode {
    General,
    Diagonal,
}

/// `prod section^power = target`.
#[derive(Clone, Debug)]
pub struct Constraint {
    pub label: &'static str,
    pub lhs: Vec<(CurveId, i64)>,
    pub target: TorsorElement,
}

fn c(i: usize, j: usize) -> CurveId {
    CurveId::c(i, j)
}

/// The constraint list for a mode, with `s` the first curve parameter.
pub fn constraints(mode: CalibrationMode) -> Vec<Constraint> {
    let s = Rf::s();
    let el = |x: Rf, k| TorsorElement::new(x, k).expect("nonzero");
    let id = TorsorElement::identity;
    let mut v = vec![
        Constraint { label: "zero section is the identity", lhs: vec![(c(2, 1), 1)], target: id() },
        Constraint { label: "C22 acts by s on E2", lhs: vec![(c(2, 2), 1)], target: el(s.clone(), 0) },
        Constraint { label: "C12 has order 2", lhs: vec![(c(1, 2), 2)], target: id() },
        Constraint { label: "C12 + C03 = C30", lhs: vec![(c(1, 2), 1), (c(0, 3), 1), (c(3, 0), -1)], target: id() },
    ];
    if mode == CalibrationMode::Diagonal {
        v.extend([
            Constraint { label: "h^2 = translation by C12", lhs: vec![(c(3, 3), 2), (c(1, 2), -1)], target: id() },
            Constraint { label: "h^4 = id", lhs: vec![(c(3, 3), 4)], target: id() },
            Constraint { label: "f h^-1 = (s, 0)", lhs: vec![(c(0, 3), 1), (c(3, 3), -1)], target: el(s, 0) },
        ]);
    }
    v
}

/// Column order of the unknown scales; the last one is left free when the
/// system is underdetermined.
pub const SCALE_COLUMNS: [CurveId; 4] = [CurveId::E2, CurveId::E1, CurveId::F0, CurveId::F3];

#[derive(Clone, Debug, Serialize)]
pub struct CalibrationBranch {
    pub scales: Vec<(CurveId, String)>,
    #[serde(skip)]
    values: Vec<(CurveId, Rf)>,
}

impl CalibrationBranch {
    pub fn values(&self) -> &[(CurveId, Rf)] {
        &self.values
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CalibrationSolution {
    pub mode: CalibrationMode,
    pub direction: i8,
    pub orientations: Vec<(CurveId, bool)>,
    pub branches: Vec<CalibrationBranch>,
    /// Scales left undetermined, with the symbol standing for each.
    pub free_parameters: Vec<(CurveId, String)>,
    #[serde(skip)]
    table: MarkedPointTable,
}

impl CalibrationSolution {
    pub fn marked_points(&self) -> &MarkedPointTable {
        &self.table
    }

    pub fn element(&self, branch: usize, section: CurveId) -> Result<TorsorElement, TorsorError> {
        self.table.element(section, &self.branches[branch].values)
    }

    /// `f`: translation by `C03`.
    pub fn f(&self, branch: usize) -> Result<TorsorElement, TorsorError> {
        self.element(branch, CurveId::c(0, 3))
    }

    /// `h`: translation by `C33`.
    pub fn h(&self, branch: usize) -> Result<TorsorElement, TorsorError> {
        self.element(branch, CurveId::c(3, 3))
    }

    /// Every constraint holds after substitution, in every branch.
    pub fn verify(&self) -> Result<(), TorsorError> {
        for b in 0..self.branches.len() {
            for con in constraints(self.mode) {
                let mut acc = TorsorElement::identity();
                for &(sec, k) in &con.lhs {
                    acc = acc.mul(&self.element(b, sec)?.pow(k));
                }
                let target = self.adapt(&con.target)?;
                if acc != target {
                    return Err(TorsorError::Inconsistent(format!("{} fails in branch {b}: {acc} vs {target}", con.label)));
                }
            }
        }
        Ok(())
    }

    fn adapt(&self, e: &TorsorElement) -> Result<TorsorElement, TorsorError> {
        match self.mode {
            CalibrationMode::General => Ok(e.clone()),
            CalibrationMode::Diagonal => e.subst(Var::T, &Rf::s()),
        }
    }
}

/// Integer row echelon form with multiplicative right-hand sides. Each row
/// `a` with value `v` stands for `prod c_j^{a_j} = v`.
fn echelon(mut rows: Vec<(Vec<i64>, Rf)>, ncols: usize) -> Result<Vec<(Vec<i64>, Rf)>, String> {
    let mut r = 0;
    for col in 0..ncols {
        loop {
            let Some(p) = (r..rows.len()).filter(|&i| rows[i].0[col] != 0).min_by_key(|&i| rows[i].0[col].abs()) else {
                break;
            };
            rows.swap(r, p);
            let mut clean = true;
            for i in r + 1..rows.len() {
                let a = rows[i].0[col];
                if a == 0 {
                    continue;
                }
                let q = a / rows[r].0[col];
                let (pivot_row, pivot_rhs) = (rows[r].0.clone(), rows[r].1.clone());
                for (x, y) in rows[i].0.iter_mut().zip(&pivot_row) {
                    *x -= q * y;
                }
                rows[i].1 = &rows[i].1 / &pivot_rhs.pow(q);
                if rows[i].0[col] != 0 {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if r < rows.len() && rows[r].0[col] != 0 {
            if rows[r].0[col] < 0 {
                rows[r].0.iter_mut().for_each(|x| *x = -*x);
                rows[r].1 = rows[r].1.inv().expect("nonzero");
            }
            r += 1;
        }
    }
    for (a, v) in &rows[r..] {
        debug_assert!(a.iter().all(|&x| x == 0));
        if !v.is_one() {
            return Err(format!("relation 1 = {v}"));
        }
    }
    rows.truncate(r);
    Ok(rows)
}

/// All assignments solving an echelon system; even roots branch on sign.
fn back_substitute(rows: &[(Vec<i64>, Rf)], ncols: usize, free_symbol: impl Fn(usize) -> Rf) -> Vec<Vec<Rf>> {
    let pivots: Vec<usize> = rows.iter().map(|(a, _)| a.iter().position(|&x| x != 0).expect("nonzero row")).collect();
    let mut start: Vec<Option<Rf>> = vec![None; ncols];
    for (col, slot) in start.iter_mut().enumerate() {
        if !pivots.contains(&col) {
            *slot = Some(free_symbol(col));
        }
    }
    let mut branches = vec![start];
    for (row, &p) in rows.iter().zip(&pivots).rev() {
        let (a, v) = row;
        let mut next = Vec::new();
        for b in branches {
            let mut rhs = v.clone();
            for j in p + 1..ncols {
                if a[j] != 0 {
                    rhs = &rhs / &b[j].as_ref().expect("later column resolved").pow(a[j]);
                }
            }
            let n = a[p] as u32;
            let Some(root) = rhs.nth_root(n) else { continue };
            let signs: &[i64] = if n % 2 == 0 { &[1, -1] } else { &[1] };
            for &sg in signs {
                let mut nb = b.clone();
                nb[p] = Some(&root * &Rf::int(sg));
                next.push(nb);
            }
        }
        branches = next;
    }
    branches.into_iter().map(|b| b.into_iter().map(|x| x.expect("all columns resolved")).collect()).collect()
}

/// Solve the constraints for the scales in both cycle directions; exactly one
/// direction must admit a solution.
pub fn calibrate(table: &IntersectionTable, mode: CalibrationMode) -> Result<CalibrationSolution, TorsorError> {
    calibrate_with(table, mode, None)
}

pub fn calibrate_with(
    table: &IntersectionTable,
    mode: CalibrationMode,
    cycle_override: Option<&[CurveId]>,
) -> Result<CalibrationSolution, TorsorError> {
    let s = Rf::s();
    let t = match mode {
        CalibrationMode::General => Rf::t(),
        CalibrationMode::Diagonal => Rf::s(),
    };
    let mut found = Vec::new();
    let mut reasons = Vec::new();
    for direction in [1i8, -1] {
        match calibrate_direction(table, mode, &s, &t, direction, cycle_override) {
            Ok(sol) => found.push(sol),
            Err(e) => reasons.push(format!("direction {direction}: {e}")),
        }
    }
    match found.len() {
        1 => {
            let sol = found.pop().expect("one solution");
            sol.verify()?;
            Ok(sol)
        }
        0 => Err(TorsorError::Inconsistent(reasons.join("; "))),
        _ => Err(TorsorError::Inconsistent("both cycle directions admit solutions".into())),
    }
}

fn calibrate_direction(
    table: &IntersectionTable,
    mode: CalibrationMode,
    s: &Rf,
    t: &Rf,
    direction: i8,
    cycle_override: Option<&[CurveId]>,
) -> Result<CalibrationSolution, TorsorError> {
    let marked = MarkedPointTable::build_with(table, s, t, direction, cycle_override)?;
    let col_of = |comp: CurveId| SCALE_COLUMNS.iter().position(|&c| c == comp);
    let mut rows = Vec::new();
    for con in constraints(mode) {
        let mut exps = vec![0i64; SCALE_COLUMNS.len()];
        let mut known = Rf::one();
        let mut shift = 0i64;
        for &(sec, k) in &con.lhs {
            let (frame, z) = marked.locate(sec)?;
            let col = col_of(frame.component)
                .ok_or_else(|| TorsorError::Inconsistent(format!("{} is not a calibrated component", frame.component)))?;
            exps[col] += k;
            known = &known * &z.pow(k);
            shift += k * frame.position as i64;
        }
        let target = match mode {
            CalibrationMode::General => con.target.clone(),
            CalibrationMode::Diagonal => con.target.subst(Var::T, s)?,
        };
        if shift.rem_euclid(8) != target.shift() as i64 {
            return Err(TorsorError::Inconsistent(format!("{}: shift {} vs {}", con.label, shift.rem_euclid(8), target.shift())));
        }
        rows.push((exps, target.scalar() / &known));
    }
    let ncols = SCALE_COLUMNS.len();
    let reduced = echelon(rows, ncols).map_err(TorsorError::Inconsistent)?;
    let position = |col: usize| marked.frame(SCALE_COLUMNS[col]).expect("frame").position;
    let solutions = back_substitute(&reduced, ncols, |col| Rf::var(Var::scale(position(col))));
    if solutions.is_empty() {
        return Err(TorsorError::Inconsistent("no scales in the coefficient field".into()));
    }
    let pivots: Vec<usize> = reduced.iter().map(|(a, _)| a.iter().position(|&x| x != 0).expect("pivot")).collect();
    let free_parameters = (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|col| (SCALE_COLUMNS[col], Var::scale(position(col)).name().to_string()))
        .collect();
    let branches = solutions
        .into_iter()
        .map(|vals| {
            let values: Vec<(CurveId, Rf)> = SCALE_COLUMNS.iter().copied().zip(vals).collect();
            let scales = values.iter().map(|(c, v)| (*c, v.to_string())).collect();
            CalibrationBranch { scales, values }
        })
        .collect();
    let orientations = marked.frames.iter().map(|f| (f.component, f.orientation)).collect();
    Ok(CalibrationSolution { mode, direction, orientations, branches, free_parameters, table: marked })
}

/// `f^4` scalar on the diagonal; all branches must agree and the shift must
/// vanish.
pub fn derive_r_diagonal(table: &IntersectionTable) -> Result<Rf, TorsorError> {
    derive_r(&calibrate(table, CalibrationMode::Diagonal)?)
}

/// `f^4` scalar of a diagonal calibration.
pub fn derive_r(sol: &CalibrationSolution) -> Result<Rf, TorsorError> {
    let mut r = None;
    for b in 0..sol.branches.len() {
        let f4 = sol.f(b)?.pow(4);
        if f4.shift() != 0 {
            return Err(TorsorError::Inconsistent(format!("f^4 has shift {}", f4.shift())));
        }
        match &r {
            None => r = Some(f4.scalar().clone()),
            Some(prev) if prev == f4.scalar() => {}
            Some(prev) => return Err(TorsorError::Inconsistent(format!("branches disagree: {prev} vs {}", f4.scalar()))),
        }
    }
    r.ok_or_else(|| TorsorError::Inconsistent("no branch".into()))
}

/// `psi` on `E2`: the map fixing the zero section's point and swapping the
/// points on the two neighbouring components of the `D2` cycle.
pub fn psi_restriction() -> MobiusMap {
    let s = Rf::s();
    let t = Rf::t();
    let e2 = CurveId::E2;
    let raw = |c| raw_coordinate(e2, c, &s, &t).expect("meets E2");
    let (p21, p20, p23) = (raw(CurveId::c(2, 1)), raw(CurveId::c(2, 0)), raw(CurveId::c(2, 3)));
    MobiusMap::from_three_points([&p21, &p20, &p23], [&p20, &p21, &p23]).expect("distinct points")
}

/// `f^4` on `E2`: multiplication by the formal `r` in the calibrated
/// coordinate, which on `E2` is `x` itself.
pub fn f4_restriction() -> MobiusMap {
    MobiusMap::scaling(Rf::r())
}

/// `f^{-4n} psi f^{4n}`.
pub fn psi_n(n: i64) -> MobiusMap {
    let f = f4_restriction();
    f.pow(-n).compose(&psi_restriction()).compose(&f.pow(n))
}

/// The expected closed form `x -> r^-n - x`.
pub fn psi_n_closed_form(n: i64) -> MobiusMap {
    MobiusMap::new(-Rf::one(), Rf::r().pow(-n), Rf::zero(), Rf::one()).expect("invertible")
}

fn psi_family(n_max: i64, r_value: Option<&Rf>) -> Result<Vec<MobiusMap>, TorsorError> {
    (-n_max..=n_max)
        .map(|n| match r_value {
            None => Ok(psi_n(n)),
            Some(v) => psi_n(n).subst(Var::R, v),
        })
        .collect()
}

/// All `psi_n`, `|n| <= N`, pairwise distinct with `r` formal.
pub fn pairwise_distinct(n_max: i64) -> bool {
    pairwise_distinct_at(n_max, None).unwrap_or(false)
}

/// As [`pairwise_distinct`] after substituting a value for `r`.
pub fn pairwise_distinct_at(n_max: i64, r_value: Option<&Rf>) -> Result<bool, TorsorError> {
    let maps = psi_family(n_max, r_value)?;
    for i in 0..maps.len() {
        for j in i + 1..maps.len() {
            if maps[i].eq_projective(&maps[j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `f^{4n} h f^{-4m}` on `C23`, with `h` trivial there, as a scalar.
pub fn centralizer_scalar(n: i64, m: i64) -> Rf {
    let f4 = TorsorElement::new(Rf::r(), 0).expect("nonzero");
    let on_c23 = |e: TorsorElement| e.restriction().expect("shift 0");
    let h = MobiusMap::identity();
    let composite = on_c23(f4.pow(n)).compose(&h).compose(&on_c23(f4.pow(-m)));
    composite.multiplier().expect("fixes 0 and inf")
}

/// Rank over `Q` of `{r^-n - r^-m : |n|, |m| <= N}` in Laurent coefficients.
pub fn omega_rank(n_max: i64) -> usize {
    let width = (2 * n_max + 1) as usize;
    let shift = Rf::r().pow(n_max);
    let mut vectors = Vec::new();
    for n in -n_max..=n_max {
        for m in -n_max..=n_max {
            let w = &(&Rf::r().pow(-n) - &Rf::r().pow(-m)) * &shift;
            assert!(w.is_polynomial(), "shifted Laurent polynomial");
            let coeffs = w.num().coeffs_in(Var::R);
            let mut v = vec![BigRational::from_integer(0.into()); width];
            for (e, c) in coeffs.iter().enumerate() {
                let value = c.constant_value().expect("univariate in r");
                v[e] = value / w.den().constant_value().expect("constant denominator");
            }
            vectors.push(v);
        }
    }
    linalg::rank(&vectors)
}

/// Evaluate `r` at a rational and test whether the value is a root of unity;
/// a collapse of the `psi_n` needs exactly that.
pub fn r_is_torsion_at(value: i64) -> bool {
    Rf::constant(rat(value, 1)).torsion_unit_test().unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torsor_examples() {
        let s = Rf::s();
        let e = TorsorElement::new(s.clone(), 6).unwrap();
        assert_eq!(e.pow(4), TorsorElement::new(s.pow(4), 0).unwrap());
        assert!(e.mul(&e.inverse()).is_identity());
        assert_eq!(TorsorElement::identity().mul(&e), e);
    }

    #[test]
    fn psi_examples() {
        let psi = psi_restriction();
        assert_eq!(psi.apply_value(&Rf::one()), P1Point::Finite(Rf::zero()));
        assert!(psi.compose(&psi).is_identity());
        assert!(psi_n(0).eq_projective(&psi_n_closed_form(0)));
        assert!(psi_n(1).eq_projective(&psi_n_closed_form(1)));
    }

    #[test]
    fn centralizer_examples() {
        assert!(centralizer_scalar(3, 3).is_one());
        assert_eq!(centralizer_scalar(2, 0), Rf::r().pow(2));
    }

    #[test]
    fn omega_small() {
        assert_eq!(omega_rank(0), 0);
        assert_eq!(omega_rank(1), 2);
    }
}
