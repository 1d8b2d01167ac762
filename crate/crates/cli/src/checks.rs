//! The check registry. Each check returns `(passed, witness)`; errors from
//! the library become failures with the error text as witness.

use kummer_core::config::{self, AutomorphismSpec, ConfigAutomorphism, CurveId, DivisorClass};
use kummer_core::fibration::{build_fibration_with, genus_double_cover, EllipticFibrationData};
use kummer_core::galois::{self, FiniteInvolutiveGroup};
use kummer_core::legendre::{LegendreCurve, P1Point, Perm4};
use kummer_core::mobius::MobiusMap;
use kummer_core::mukai::{self, MukaiFrame};
use kummer_core::symmetry::{self, GroupLawPermutations, NamedAutomorphisms};
use kummer_core::torsor::{self, CalibrationMode, CalibrationSolution, TorsorElement};
use kummer_field::{rat, RationalFunction as Rf, Var};
use serde_json::{json, Value};

use crate::{Construction, Mode, RunConfig, Suite};

pub type CheckResult = Result<(bool, Value), String>;

pub struct CheckDef {
    pub id: &'static str,
    /// The formula the check certifies.
    pub anchor: &'static str,
    pub suite: Suite,
    /// Depends on `r` being a free indeterminate.
    pub r_dependent: bool,
    pub run: fn(&Ctx) -> CheckResult,
}

pub struct Ctx<'a> {
    pub config: &'a RunConfig,
    pub construction: &'a Construction,
}

impl<'a> Ctx<'a> {
    pub fn new(config: &'a RunConfig, construction: &'a Construction) -> Self {
        Ctx { config, construction }
    }

    fn table(&self) -> &config::IntersectionTable {
        &self.construction.table
    }

    fn fibration(&self, name: &str) -> Result<EllipticFibrationData, String> {
        let over = if name == "D1" { self.construction.cycle_override.as_deref() } else { None };
        build_fibration_with(self.table(), name, over).map_err(err)
    }

    fn calibrate(&self, mode: CalibrationMode) -> Result<CalibrationSolution, String> {
        torsor::calibrate_with(self.table(), mode, self.construction.cycle_override.as_deref()).map_err(err)
    }

    fn automorphisms(&self) -> Result<NamedAutomorphisms, String> {
        symmetry::named_automorphisms(self.table()).map_err(err)
    }

    /// Parameter points for the Cremona checks: the generic point and
    /// `(2, 3)` symbolically, the given values when specialized.
    fn mukai_points(&self) -> Vec<(Rf, Rf)> {
        match self.config.mode {
            Mode::Symbolic => vec![(Rf::s(), Rf::t()), (Rf::int(2), Rf::int(3))],
            Mode::Specialized => vec![self.config.parameters()],
        }
    }

    fn frames(&self) -> Result<Vec<MukaiFrame>, String> {
        self.mukai_points()
            .iter()
            .map(|(s, t)| {
                let mut frame = mukai::frame_and_alphas(s, t).map_err(err)?;
                if let Some(a) = &self.construction.alpha_override {
                    frame.alpha = a.clone();
                }
                Ok(frame)
            })
            .collect()
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn ids(v: &[CurveId]) -> Vec<String> {
    v.iter().map(|c| c.to_string()).collect()
}

fn point_label(s: &Rf, t: &Rf) -> String {
    format!("({s}, {t})")
}

pub fn check_ids() -> Vec<&'static str> {
    let mut v: Vec<_> = registry().iter().map(|d| d.id).collect();
    v.sort();
    v
}

macro_rules! check {
    ($id:literal, $anchor:literal, $suite:ident, $r:literal, $f:expr) => {
        CheckDef { id: $id, anchor: $anchor, suite: Suite::$suite, r_dependent: $r, run: $f }
    };
}

pub fn registry() -> Vec<CheckDef> {
    vec![
        check!("config.table-invariants", "E_i.C_jk = [i=j], F_j.C_ik = [j=k], C^2 = -2", Config, false, table_invariants),
        check!("config.gram-rank", "rank G = 18", Config, false, gram_rank),
        check!("config.cycle-rank", "rank G|_{D1 cycle} = 7", Config, false, cycle_rank),
        check!("config.permutations", "t = (03)(12), t' = (01)(23), s = (02)(13), s' = (01)(23)", Config, false, permutations),
        check!("config.klein-four", "T_2 T_1 = T_3, T_k^2 = id", Config, false, klein_four),
        check!("config.isometry-tau", "P_tau^T G P_tau = G", Config, false, |c| isometry(c, "tau")),
        check!("config.isometry-nu", "P_nu^T G P_nu = G", Config, false, |c| isometry(c, "nu")),
        check!("config.isometry-sigma", "P_sigma^T G P_sigma = G", Config, false, |c| isometry(c, "sigma")),
        check!("config.isometry-epsilon", "P_eps^T G P_eps = G on dom(eps)", Config, false, |c| isometry(c, "epsilon")),
        check!("config.characters", "chi(tau) = chi(nu) = chi(sigma) = 1, chi(eps) = -1", Config, false, characters),
        check!("config.involutions", "tau^2 = nu^2 = eps^2 = id, sigma^2 preserves {E},{F}", Config, false, involutions),
        check!("config.epsilon-fibers", "eps(D_i) = D_i'", Config, false, epsilon_fibers),
        check!("config.sigma-no-flag", "sigma requires E = F", Config, false, sigma_flag),
        check!("fibration.divisor-squares", "D1^2 = D1'^2 = D2^2 = D2'^2 = D1.D1' = D2.D2' = 0", Fibration, false, divisor_squares),
        check!("fibration.sections-d1", "{C21, C12, C03, C30} in sections(D1)", Fibration, false, |c| sections(c, "D1", &[(2, 1), (1, 2), (0, 3), (3, 0)])),
        check!("fibration.sections-d2", "{C23, C32} in sections(D2)", Fibration, false, |c| sections(c, "D2", &[(2, 3), (3, 2)])),
        check!("fibration.cycles", "D1, D1', D2, D2' are I8 cycles", Fibration, false, cycles),
        check!("fibration.height-zero", "<O, O> = 0", Fibration, false, height_zero),
        check!("fibration.height-c32", "<C32, C32> = 2*2 + 2*0 - 2*4(8-4)/8 = 0", Fibration, false, height_c32),
        check!("fibration.height-c12", "<C12, C12> = 0 on |D1|", Fibration, false, height_c12),
        check!("fibration.torsion-order", "ord C12 = ord C32 = 2", Fibration, false, torsion_order),
        check!("fibration.shioda-tate", "rank MW = 18 - 2 - 2*7 = 2", Fibration, false, shioda_tate),
        check!("fibration.euler-census", "2*8 + 8*1 = 24", Fibration, false, euler_census),
        check!("fibration.genus-bound", "g = b/2 - 1 = 3 for b = 8", Fibration, false, genus_bound),
        check!("torsor.calibrate-diagonal", "C12^2 = 1, C12 C03 = C30, h^2 = C12, h^4 = 1, f h^-1 = (s, 0)", Torsor, false, calibrate_diagonal),
        check!("torsor.h4-identity", "h^4 = (1, 0)", Torsor, false, h4_identity),
        check!("torsor.f-h-inverse", "f h^-1 = (s, 0)", Torsor, false, f_h_inverse),
        check!("torsor.r-diagonal", "r(s, s) = s^4", Torsor, false, r_diagonal),
        check!("torsor.calibrate-general", "general (s, t): scale on F3 free", Torsor, false, calibrate_general),
        check!("torsor.section-translations", "C21 = (1, 0), C22 = (s, 0), shift(C03) = +-2", Torsor, false, section_translations),
        check!("torsor.psi-restriction", "psi|E2 (x) = 1 - x", Torsor, false, psi_restriction),
        check!("torsor.psi-n", "psi_n (x) = r^-n - x, psi_n^2 = id, |n| <= 10", Torsor, true, psi_n),
        check!("torsor.psi-distinct", "psi_n != psi_m for n != m, |n|, |m| <= 10", Torsor, true, psi_distinct),
        check!("torsor.psi-composition", "psi_m psi_n (x) = x + r^-m - r^-n", Torsor, true, psi_composition),
        check!("torsor.centralizer", "f^4n h f^-4m |C23 (z) = r^(n-m) z", Torsor, true, centralizer),
        check!("torsor.chase-f-epsilon", "f eps = eps f on sections of |D1|", Torsor, false, chase_f_epsilon),
        check!("torsor.chase-psi-epsilon", "psi eps = eps psi on C23, C32", Torsor, false, chase_psi_epsilon),
        check!("torsor.h-sigma", "h sigma |F3 = id", Torsor, false, h_sigma),
        check!("omega.rank", "rank span{r^-n - r^-m : |n|, |m| <= N} = 2N", Omega, true, omega_rank),
        check!("mukai.non-coplanar", "det[p00 p11 p22 p33] != 0, = 0 at t = s", Mukai, false, non_coplanar),
        check!("mukai.template", "a1 w2 w3 + a2 w1 w3 + a3 w1 w2 + (w1 + w2 + w3) w4", Mukai, false, template),
        check!("mukai.smoothness", "a1^2 + a2^2 + a3^2 - 2a1a2 - 2a1a3 - 2a2a3 != 0", Mukai, false, smoothness),
        check!("mukai.preserves-quadric", "q(C(w)) = k(w) q(w)", Mukai, false, preserves_quadric),
        check!("mukai.involution", "C(C(w)) = w", Mukai, false, involution),
        check!("mukai.pij-swap", "C(p_ij) = p_ji, i != j", Mukai, false, pij_swap),
        check!("mukai.indeterminacy", "C(p_ii) undefined", Mukai, false, indeterminacy),
        check!("mukai.conic-contraction", "C(Q n {w_k = 0}) = e_k", Mukai, false, conic_contraction),
        check!("mukai.line-swap", "C({x_k} x P^1) = P^1 x {x_k}", Mukai, false, line_swap),
        check!("cohomology.h1-examples", "|H^1(Z/2, Z/2)| = 2, |H^1(Z/2, Z/4, -1)| = 2, |H^1(Z/2, S3)| = 2", Cohomology, false, h1_examples),
        check!("cohomology.trivial-action", "|H^1(Z/2, G)| = #{g^2 = e}/conj", Cohomology, false, trivial_action),
        check!("cohomology.abelian-quotient", "|H^1| = |ker(1 + theta)| / |im(theta - 1)|", Cohomology, false, abelian_quotient),
        check!("cohomology.torus-colimit", "H^1(Z/2, R^n/Z^n) = Z/2, 0, 0", Cohomology, false, torus_colimit),
    ]
}

fn table_invariants(ctx: &Ctx) -> CheckResult {
    let bad = ctx.table().invariant_violations();
    let shown: Vec<String> = bad.iter().take(10).map(|(a, b)| format!("{a}.{b}")).collect();
    Ok((bad.is_empty(), json!({ "violations": bad.len(), "first": shown })))
}

fn gram_rank(ctx: &Ctx) -> CheckResult {
    let r = ctx.table().gram_rank();
    Ok((r == 18, json!({ "rank": r })))
}

fn cycle_rank(ctx: &Ctx) -> CheckResult {
    let fib = ctx.fibration("D1")?;
    let cycle = &fib.reducible_fibers[0].components;
    let r = ctx.table().submatrix_rank(cycle);
    Ok((r == 7, json!({ "rank": r, "cycle": ids(cycle) })))
}

fn permutations(_: &Ctx) -> CheckResult {
    let p = GroupLawPermutations::compute().map_err(err)?;
    let expected = [Perm4([3, 2, 1, 0]), Perm4([1, 0, 3, 2]), Perm4([2, 3, 0, 1]), Perm4([1, 0, 3, 2])];
    let got = [p.t, p.t_prime, p.s, p.s_prime];
    Ok((
        got == expected,
        json!({ "t": p.t.to_string(), "t_prime": p.t_prime.to_string(), "s": p.s.to_string(), "s_prime": p.s_prime.to_string() }),
    ))
}

fn klein_four(ctx: &Ctx) -> CheckResult {
    let (s, t) = ctx.config.parameters();
    let mut witness = Vec::new();
    let mut ok = true;
    for lambda in [s, t] {
        let e = LegendreCurve::new(lambda.clone()).map_err(err)?;
        let tr = |k| e.translation_permutation(k).map_err(err);
        let (t1, t2, t3) = (tr(1)?, tr(2)?, tr(3)?);
        ok &= t2.compose(&t1) == t3 && tr(0)? == Perm4::identity();
        ok &= [t1, t2, t3].iter().all(|p| p.compose(p) == Perm4::identity());
        witness.push(json!({ "lambda": lambda.to_string(), "T1": t1.to_string(), "T2": t2.to_string(), "T3": t3.to_string() }));
    }
    Ok((ok, Value::Array(witness)))
}

fn isometry(ctx: &Ctx, name: &str) -> CheckResult {
    let p = GroupLawPermutations::compute().map_err(err)?;
    let spec = match name {
        "tau" => AutomorphismSpec::Tau { t: p.t },
        "nu" => AutomorphismSpec::Nu { t_prime: p.t_prime },
        "sigma" => AutomorphismSpec::Sigma { s: p.s, s_prime: p.s_prime, same_curve: true },
        _ => AutomorphismSpec::Epsilon,
    };
    match config::make_automorphism(ctx.table(), spec) {
        Ok(a) => Ok((true, json!({ "domain": a.domain().len() }))),
        Err(e) => Ok((false, json!({ "violation": e.to_string() }))),
    }
}

fn characters(ctx: &Ctx) -> CheckResult {
    let a = ctx.automorphisms()?;
    let got: Vec<i8> = a.all().iter().map(|x| x.character()).collect();
    Ok((got == [1, 1, 1, -1], json!({ "tau": got[0], "nu": got[1], "sigma": got[2], "epsilon": got[3] })))
}

fn fixes_domain(a: &ConfigAutomorphism) -> bool {
    a.fixes_on_domain() && !a.domain().is_empty()
}

fn involutions(ctx: &Ctx) -> CheckResult {
    let a = ctx.automorphisms()?;
    let tau2 = a.tau.compose(&a.tau);
    let nu2 = a.nu.compose(&a.nu);
    let eps2 = a.epsilon.compose(&a.epsilon);
    let sigma2 = a.sigma.compose(&a.sigma);
    let sigma2_ok = sigma2.check_isometry(ctx.table()).is_ok() && sigma2.preserves_ef_partition();
    let ok = fixes_domain(&tau2) && fixes_domain(&nu2) && fixes_domain(&eps2) && eps2.character() == 1 && sigma2_ok;
    Ok((ok, json!({ "tau^2": fixes_domain(&tau2), "nu^2": fixes_domain(&nu2), "eps^2": fixes_domain(&eps2), "sigma^2": sigma2_ok })))
}

fn epsilon_fibers(ctx: &Ctx) -> CheckResult {
    let a = ctx.automorphisms()?;
    let mut ok = true;
    let mut w = serde_json::Map::new();
    for (d, dp) in [(config::d1(), config::d1_prime()), (config::d2(), config::d2_prime())] {
        let img = a.epsilon.apply_divisor(&d).map_err(err)?;
        let back = a.epsilon.apply_divisor(&dp).map_err(err)?;
        let good = img.same_class(&dp) && back.same_class(&d);
        ok &= good;
        w.insert(d.name().unwrap_or("?").into(), good.into());
    }
    let tau_d1 = a.tau.apply_divisor(&config::d1()).map_err(err)?.same_class(&config::d1());
    w.insert("tau(D1) = D1".into(), tau_d1.into());
    Ok((ok && tau_d1, Value::Object(w)))
}

fn sigma_flag(_: &Ctx) -> CheckResult {
    let p = GroupLawPermutations::compute().map_err(err)?;
    let r = ConfigAutomorphism::from_spec(AutomorphismSpec::Sigma { s: p.s, s_prime: p.s_prime, same_curve: false });
    Ok((r.is_err(), json!({ "rejected": r.is_err() })))
}

fn divisor_squares(ctx: &Ctx) -> CheckResult {
    let t = ctx.table();
    let (d1, d1p, d2, d2p) = (config::d1(), config::d1_prime(), config::d2(), config::d2_prime());
    let vals = [t.pair(&d1, &d1), t.pair(&d1p, &d1p), t.pair(&d2, &d2), t.pair(&d2p, &d2p), t.pair(&d1, &d1p), t.pair(&d2, &d2p)];
    Ok((vals.iter().all(|&v| v == 0), json!({ "values": vals })))
}

fn sections(ctx: &Ctx, name: &str, required: &[(usize, usize)]) -> CheckResult {
    let d = DivisorClass::named(name).map_err(err)?;
    let found = ctx.table().sections_of(&d);
    let ok = required.iter().all(|&(i, j)| found.contains(&CurveId::c(i, j)));
    Ok((ok, json!({ "sections": ids(&found) })))
}

fn cycles(ctx: &Ctx) -> CheckResult {
    let mut w = serde_json::Map::new();
    for name in ["D1", "D2"] {
        let fib = ctx.fibration(name)?;
        for f in &fib.reducible_fibers {
            w.insert(f.name.clone(), ids(&f.components).into());
        }
    }
    Ok((true, Value::Object(w)))
}

fn rationals(v: &[kummer_field::BigRational]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn height_zero(ctx: &Ctx) -> CheckResult {
    let mut w = serde_json::Map::new();
    let mut ok = true;
    for name in ["D1", "D2"] {
        let fib = ctx.fibration(name)?;
        let h = fib.height_self(fib.zero_section).map_err(err)?;
        ok &= h.total == rat(0, 1);
        w.insert(name.into(), json!({ "zero": fib.zero_section.to_string(), "summands": rationals(&h.summands()), "total": h.total.to_string() }));
    }
    Ok((ok, Value::Object(w)))
}

fn height_c32(ctx: &Ctx) -> CheckResult {
    let fib = ctx.fibration("D2")?;
    let h = fib.height_self(CurveId::c(3, 2)).map_err(err)?;
    let expected = [rat(4, 1), rat(0, 1), rat(-2, 1), rat(-2, 1)];
    let ok = h.summands() == expected && h.total == rat(0, 1);
    Ok((ok, json!({ "summands": rationals(&h.summands()), "total": h.total.to_string() })))
}

fn height_c12(ctx: &Ctx) -> CheckResult {
    let fib = ctx.fibration("D1")?;
    let h = fib.height_self(CurveId::c(1, 2)).map_err(err)?;
    Ok((h.total == rat(0, 1), json!({ "summands": rationals(&h.summands()), "total": h.total.to_string() })))
}

fn torsion_order(ctx: &Ctx) -> CheckResult {
    let d1 = ctx.fibration("D1")?;
    let d2 = ctx.fibration("D2")?;
    let o12 = d1.torsion_order(CurveId::c(1, 2)).map_err(err)?;
    let o32 = d2.torsion_order(CurveId::c(3, 2)).map_err(err)?;
    Ok((o12 == Some(2) && o32 == Some(2), json!({ "C12": o12, "C32": o32 })))
}

fn shioda_tate(ctx: &Ctx) -> CheckResult {
    let rho = ctx.table().gram_rank() as i64;
    let fib = ctx.fibration("D2")?;
    let rank = fib.shioda_tate_rank(rho).map_err(err)?;
    Ok((rank == 2, json!({ "rho": rho, "rank": rank })))
}

fn euler_census(ctx: &Ctx) -> CheckResult {
    let mut w = serde_json::Map::new();
    let mut ok = true;
    for name in ["D1", "D2"] {
        let fib = ctx.fibration(name)?;
        let sizes: Vec<usize> = fib.reducible_fibers.iter().map(|f| f.components.len()).collect();
        let census = fib.euler_census();
        ok &= census == 24 && fib.i1_count == 8 && sizes == [8, 8];
        w.insert(name.into(), json!({ "reducible": sizes, "i1": fib.i1_count, "euler": census }));
    }
    Ok((ok, Value::Object(w)))
}

fn genus_bound(ctx: &Ctx) -> CheckResult {
    let fib = ctx.fibration("D2")?;
    let b = fib.i1_count as u64;
    let g = genus_double_cover(b).map_err(err)?;
    Ok((g == 3, json!({ "branch_points": b, "genus": g })))
}

fn calibrate_diagonal(ctx: &Ctx) -> CheckResult {
    let sol = ctx.calibrate(CalibrationMode::Diagonal)?;
    sol.verify().map_err(err)?;
    let ok = sol.free_parameters.is_empty() && !sol.branches.is_empty();
    Ok((ok, serde_json::to_value(&sol).map_err(err)?))
}

fn h4_identity(ctx: &Ctx) -> CheckResult {
    let sol = ctx.calibrate(CalibrationMode::Diagonal)?;
    let mut hs = Vec::new();
    let mut ok = true;
    for b in 0..sol.branches.len() {
        let h = sol.h(b).map_err(err)?;
        ok &= h.pow(4).is_identity();
        hs.push(h.to_string());
    }
    Ok((ok, json!({ "h": hs })))
}

fn f_h_inverse(ctx: &Ctx) -> CheckResult {
    let sol = ctx.calibrate(CalibrationMode::Diagonal)?;
    let target = TorsorElement::new(Rf::s(), 0).map_err(err)?;
    let mut vals = Vec::new();
    let mut ok = true;
    for b in 0..sol.branches.len() {
        let v = sol.f(b).map_err(err)?.mul(&sol.h(b).map_err(err)?.inverse());
        ok &= v == target;
        vals.push(v.to_string());
    }
    Ok((ok, json!({ "f h^-1": vals })))
}

fn r_diagonal(ctx: &Ctx) -> CheckResult {
    let sol = ctx.calibrate(CalibrationMode::Diagonal)?;
    let r = torsor::derive_r(&sol).map_err(err)?;
    let mut ok = r == Rf::s().pow(4);
    let mut w = json!({ "r": r.to_string() });
    if let (Mode::Specialized, Some(s0)) = (ctx.config.mode, &ctx.config.s) {
        let v = r.subst(Var::S, &Rf::constant(s0.clone())).map_err(err)?;
        let expected = Rf::constant(s0.clone()).pow(4);
        ok &= v == expected;
        w["at_s0"] = v.to_string().into();
    }
    Ok((ok, w))
}

fn calibrate_general(ctx: &Ctx) -> CheckResult {
    let sol = ctx.calibrate(CalibrationMode::General)?;
    sol.verify().map_err(err)?;
    let free: Vec<CurveId> = sol.free_parameters.iter().map(|(c, _)| *c).collect();
    Ok((free == [CurveId::F3], serde_json::to_value(&sol).map_err(err)?))
}

fn section_translations(ctx: &Ctx) -> CheckResult {
    let sol = ctx.calibrate(CalibrationMode::Diagonal)?;
    let mut ok = true;
    let mut w = Vec::new();
    for b in 0..sol.branches.len() {
        let zero = sol.element(b, CurveId::c(2, 1)).map_err(err)?;
        let c22 = sol.element(b, CurveId::c(2, 2)).map_err(err)?;
        let f = sol.f(b).map_err(err)?;
        ok &= zero.is_identity() && c22 == TorsorElement::new(Rf::s(), 0).map_err(err)? && matches!(f.shift(), 2 | 6);
        w.push(json!({ "C21": zero.to_string(), "C22": c22.to_string(), "C03": f.to_string() }));
    }
    let symbolic = sol.marked_points().translation_of_section(CurveId::c(0, 3)).map_err(err)?;
    Ok((ok, json!({ "branches": w, "C03 before calibration": symbolic.to_string() })))
}

fn fin(x: Rf) -> P1Point {
    P1Point::Finite(x)
}

fn psi_restriction(_: &Ctx) -> CheckResult {
    let psi = torsor::psi_restriction();
    let expected = MobiusMap::new(-Rf::one(), Rf::one(), Rf::zero(), Rf::one()).map_err(err)?;
    let ok = psi.eq_projective(&expected)
        && psi.apply(&fin(Rf::one())) == fin(Rf::zero())
        && psi.apply(&fin(Rf::zero())) == fin(Rf::one())
        && psi.apply(&P1Point::Infinity) == P1Point::Infinity
        && psi.compose(&psi).is_identity();
    Ok((ok, json!({ "psi": psi.to_string() })))
}

fn psi_n(_: &Ctx) -> CheckResult {
    let mut bad = Vec::new();
    for n in -10..=10 {
        let p = torsor::psi_n(n);
        if !p.eq_projective(&torsor::psi_n_closed_form(n)) || !p.compose(&p).is_identity() {
            bad.push(n);
        }
    }
    Ok((bad.is_empty(), json!({ "psi_1": torsor::psi_n(1).to_string(), "failing_n": bad })))
}

fn psi_distinct(_: &Ctx) -> CheckResult {
    let formal = torsor::pairwise_distinct(10);
    let at_one = torsor::pairwise_distinct_at(10, Some(&Rf::one())).map_err(err)?;
    let at_minus_one = torsor::pairwise_distinct_at(10, Some(&Rf::int(-1))).map_err(err)?;
    let r_torsion = Rf::r().torsion_unit_test().map_err(err)?;
    Ok((
        formal && !at_one && !at_minus_one && !r_torsion,
        json!({ "r formal": formal, "r = 1": at_one, "r = -1": at_minus_one, "r root of unity": r_torsion }),
    ))
}

fn psi_composition(_: &Ctx) -> CheckResult {
    let mut bad = Vec::new();
    for m in -3..=3 {
        for n in -3..=3 {
            let comp = torsor::psi_n(m).compose(&torsor::psi_n(n));
            let shift = &Rf::r().pow(-m) - &Rf::r().pow(-n);
            if !comp.eq_projective(&MobiusMap::translation(shift)) {
                bad.push((m, n));
            }
        }
    }
    Ok((bad.is_empty(), json!({ "psi_2 psi_1": torsor::psi_n(2).compose(&torsor::psi_n(1)).to_string(), "failing": bad })))
}

fn centralizer(_: &Ctx) -> CheckResult {
    let mut bad = Vec::new();
    for n in -3..=3 {
        for m in -3..=3 {
            if torsor::centralizer_scalar(n, m) != Rf::r().pow(n - m) {
                bad.push((n, m));
            }
        }
    }
    let non_torsion = !torsor::centralizer_scalar(5, 1).torsion_unit_test().map_err(err)?;
    Ok((bad.is_empty() && non_torsion, json!({ "(2, 0)": torsor::centralizer_scalar(2, 0).to_string(), "failing": bad })))
}

fn chase_f_epsilon(ctx: &Ctx) -> CheckResult {
    let a = ctx.automorphisms()?;
    let ch = symmetry::chase_f_epsilon(ctx.table(), &a).map_err(err)?;
    Ok((ch.closes && ch.character == 1, serde_json::to_value(&ch).map_err(err)?))
}

fn chase_psi_epsilon(ctx: &Ctx) -> CheckResult {
    let a = ctx.automorphisms()?;
    let ch = symmetry::chase_psi_epsilon(ctx.table(), &a).map_err(err)?;
    Ok((ch.closes && ch.character == 1, serde_json::to_value(&ch).map_err(err)?))
}

fn h_sigma(ctx: &Ctx) -> CheckResult {
    let a = ctx.automorphisms()?;
    let sol = ctx.calibrate(CalibrationMode::Diagonal)?;
    let c = symmetry::h_sigma_fixes_f3(ctx.table(), &a.sigma, sol.marked_points()).map_err(err)?;
    Ok((c.fixes_f3_pointwise, serde_json::to_value(&c).map_err(err)?))
}

fn omega_rank(ctx: &Ctx) -> CheckResult {
    let ranks: Vec<usize> = (0..=ctx.config.omega_n).map(torsor::omega_rank).collect();
    let ok = ranks.iter().enumerate().all(|(n, &r)| r == 2 * n);
    Ok((ok, json!({ "ranks": ranks })))
}

fn per_frame(ctx: &Ctx, f: impl Fn(&MukaiFrame) -> Result<(bool, Value), String>) -> CheckResult {
    let mut ok = true;
    let mut w = serde_json::Map::new();
    for ((s, t), frame) in ctx.mukai_points().iter().zip(ctx.frames()?) {
        let (good, value) = f(&frame)?;
        ok &= good;
        w.insert(point_label(s, t), value);
    }
    Ok((ok, Value::Object(w)))
}

fn non_coplanar(ctx: &Ctx) -> CheckResult {
    let mut ok = true;
    let mut w = serde_json::Map::new();
    for (s, t) in ctx.mukai_points() {
        let d = mukai::non_coplanar_det(&s, &t).map_err(err)?;
        ok &= !d.is_zero();
        w.insert(point_label(&s, &t), d.to_string().into());
    }
    let generic = mukai::non_coplanar_det(&Rf::s(), &Rf::t()).map_err(err)?;
    let diagonal = generic.subst(Var::T, &Rf::s()).map_err(err)?;
    ok &= diagonal.is_zero();
    w.insert("t = s".into(), diagonal.to_string().into());
    Ok((ok, Value::Object(w)))
}

fn template(ctx: &Ctx) -> CheckResult {
    per_frame(ctx, |fr| {
        let ratio = mukai::QuadricForm::segre().pullback(&fr.inverse()).proportional(&mukai::QuadricForm::template(&fr.alpha));
        let basis = fr.sends_diagonal_to_basis().map_err(err)?;
        Ok((ratio.is_some() && basis, json!({ "alpha": fr.alpha, "ratio": ratio.map(|r| r.to_string()), "p_kk -> e_k": basis })))
    })
}

fn smoothness(ctx: &Ctx) -> CheckResult {
    per_frame(ctx, |fr| {
        let d = mukai::smoothness_disc(&fr.alpha);
        Ok((!d.is_zero(), d.to_string().into()))
    })
}

fn preserves_quadric(ctx: &Ctx) -> CheckResult {
    per_frame(ctx, |fr| {
        let ok = mukai::verify_cremona_preserves_quadric(&fr.alpha).map_err(err)?;
        Ok((ok, ok.into()))
    })
}

fn involution(ctx: &Ctx) -> CheckResult {
    per_frame(ctx, |fr| {
        let ok = mukai::cremona_is_involution(&fr.alpha).map_err(err)?;
        Ok((ok, ok.into()))
    })
}

fn pij_swap(ctx: &Ctx) -> CheckResult {
    let eps = ConfigAutomorphism::from_spec(AutomorphismSpec::Epsilon).map_err(err)?;
    let eps_ok = eps.check_isometry(ctx.table()).is_ok()
        && (0..4).all(|i| (0..4).filter(|&j| j != i).all(|j| eps.apply(CurveId::c(i, j)) == Some(CurveId::c(j, i))));
    let (ok, w) = per_frame(ctx, |fr| {
        let bad = mukai::pij_swap_failures(fr).map_err(err)?;
        Ok((bad.is_empty(), json!({ "failing_pairs": bad })))
    })?;
    Ok((ok && eps_ok, json!({ "frames": w, "eps(C_ij) = C_ji": eps_ok })))
}

fn indeterminacy(ctx: &Ctx) -> CheckResult {
    per_frame(ctx, |fr| {
        let mut all = true;
        for k in 0..4 {
            all &= matches!(mukai::cremona(&fr.alpha, &fr.point(k, k).map_err(err)?), Err(kummer_core::error::MukaiError::Indeterminacy(_)));
        }
        Ok((all, all.into()))
    })
}

fn conic_contraction(ctx: &Ctx) -> CheckResult {
    per_frame(ctx, |fr| {
        let mut ok = true;
        let mut imgs = Vec::new();
        for k in 1..=4 {
            let img = mukai::conic_image(&fr.alpha, k).map_err(err)?;
            ok &= img.eq_projective(&fr.point(k - 1, k - 1).map_err(err)?) && img.eq_projective(&mukai::ProjPoint3::basis(k));
            imgs.push(img.to_string());
        }
        Ok((ok, imgs.into()))
    })
}

fn line_swap(ctx: &Ctx) -> CheckResult {
    per_frame(ctx, |fr| {
        let bad = mukai::line_swap_failures(fr).map_err(err)?;
        Ok((bad.is_empty(), json!({ "failing_k": bad })))
    })
}

fn h1_examples(_: &Ctx) -> CheckResult {
    let z4 = FiniteInvolutiveGroup::cyclic(4);
    let z4_inv = z4.with_theta(z4.inversion()).map_err(err)?;
    let got = [
        galois::h1(&FiniteInvolutiveGroup::cyclic(2)).count,
        galois::h1(&z4_inv).count,
        galois::h1(&FiniteInvolutiveGroup::symmetric(3)).count,
        galois::h1_trivial_action(&FiniteInvolutiveGroup::dihedral(4)),
    ];
    Ok((got == [2, 2, 2, 4], json!({ "Z2": got[0], "Z4 inversion": got[1], "S3": got[2], "D4 trivial": got[3] })))
}

fn trivial_action(_: &Ctx) -> CheckResult {
    let mut w = serde_json::Map::new();
    let mut ok = true;
    for (name, g) in galois::small_group_corpus() {
        let (a, b) = (galois::h1(&g).count, galois::h1_trivial_action(&g));
        ok &= a == b && a >= 1;
        w.insert(name, json!([a, b]));
    }
    Ok((ok, Value::Object(w)))
}

fn abelian_quotient(_: &Ctx) -> CheckResult {
    let mut w = serde_json::Map::new();
    let mut ok = true;
    for (name, g) in galois::small_group_corpus().into_iter().filter(|(_, g)| g.is_abelian()) {
        for (label, theta) in [("trivial", (0..g.order).collect()), ("inversion", g.inversion())] {
            let gt = g.with_theta(theta).map_err(err)?;
            let (a, b) = (galois::h1(&gt).count, galois::abelian_quotient_count(&gt).map_err(err)?);
            ok &= a == b;
            w.insert(format!("{name} {label}"), json!([a, b]));
        }
    }
    Ok((ok, Value::Object(w)))
}

fn torus_colimit(ctx: &Ctx) -> CheckResult {
    let mut values = Vec::new();
    let mut w = Vec::new();
    let mut stable = true;
    for spec in galois::reference_torus_cases() {
        let c = galois::h1_torus_colimit(&spec, ctx.config.torus_level).map_err(err)?;
        stable &= c.stabilized_at.is_some_and(|l| l <= 16);
        values.push(c.value);
        w.push(serde_json::to_value(&c).map_err(err)?);
    }
    Ok((values == [2, 1, 1] && stable, json!({ "values": values, "cases": w })))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_prefixed_by_suite() {
        let reg = registry();
        let mut seen = std::collections::BTreeSet::new();
        for d in &reg {
            assert!(seen.insert(d.id), "duplicate {}", d.id);
            assert!(d.id.starts_with(&format!("{}.", d.suite)), "{}", d.id);
        }
    }
}
