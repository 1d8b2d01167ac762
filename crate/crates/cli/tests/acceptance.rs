//! Acceptance criteria. Runs without the libtest harness so that every
//! criterion prints a line whether it passes or not.

use std::process::Command;
use std::time::{Duration, Instant};

use kummer_core::config::{self, AutomorphismSpec, CurveId, IntersectionTable};
use kummer_core::fibration::{build_fibration, shioda_tate_rank};
use kummer_core::galois::{self, FiniteInvolutiveGroup};
use kummer_core::legendre::Perm4;
use kummer_core::mobius::MobiusMap;
use kummer_core::mukai::{self, AlphaTriple, QuadricForm};
use kummer_core::symmetry::GroupLawPermutations;
use kummer_core::torsor::{self, CalibrationMode, TorsorElement};
use kummer_field::{rat, RationalFunction as Rf, Var};
use kummer_verify::{run_suite_with, Construction, Mode, RunConfig, Status, Suite};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e(x: impl std::fmt::Display) -> String {
    x.to_string()
}

fn lattice() -> Outcome {
    let table = IntersectionTable::standard();
    ensure(table.gram_rank() == 18, format!("gram rank {}", table.gram_rank()))?;
    let p = GroupLawPermutations::compute().map_err(e)?;
    let specs = [
        AutomorphismSpec::Tau { t: p.t },
        AutomorphismSpec::Nu { t_prime: p.t_prime },
        AutomorphismSpec::Sigma { s: p.s, s_prime: p.s_prime, same_curve: true },
        AutomorphismSpec::Epsilon,
    ];
    for spec in specs {
        let a = config::make_automorphism(&table, spec).map_err(e)?;
        a.check_isometry(&table).map_err(e)?;
    }
    Ok("rank 18, tau nu sigma epsilon are isometries".into())
}

fn fibration_classes() -> Outcome {
    let t = IntersectionTable::standard();
    let (d1, d1p, d2, d2p) = (config::d1(), config::d1_prime(), config::d2(), config::d2_prime());
    for (a, b) in [(&d1, &d1), (&d1p, &d1p), (&d2, &d2), (&d2p, &d2p), (&d1, &d1p), (&d2, &d2p)] {
        ensure(t.pair(a, b) == 0, format!("{:?}.{:?} = {}", a.name(), b.name(), t.pair(a, b)))?;
    }
    let s1 = t.sections_of(&d1);
    for (i, j) in [(2, 1), (1, 2), (0, 3), (3, 0)] {
        ensure(s1.contains(&CurveId::c(i, j)), format!("C{i}{j} not a section of D1"))?;
    }
    let s2 = t.sections_of(&d2);
    for (i, j) in [(2, 3), (3, 2)] {
        ensure(s2.contains(&CurveId::c(i, j)), format!("C{i}{j} not a section of D2"))?;
    }
    Ok(format!("all squares 0, {} sections of D1, {} of D2", s1.len(), s2.len()))
}

fn permutations() -> Outcome {
    let p = GroupLawPermutations::compute().map_err(e)?;
    ensure(p.t == Perm4([3, 2, 1, 0]), format!("t = {}", p.t))?;
    ensure(p.t_prime == Perm4([1, 0, 3, 2]), format!("t' = {}", p.t_prime))?;
    ensure(p.s == Perm4([2, 3, 0, 1]), format!("s = {}", p.s))?;
    ensure(p.s_prime == Perm4([1, 0, 3, 2]), format!("s' = {}", p.s_prime))?;
    Ok(format!("t = {}, t' = {}, s = {}, s' = {}", p.t, p.t_prime, p.s, p.s_prime))
}

fn heights() -> Outcome {
    let t = IntersectionTable::standard();
    let d2 = build_fibration(&t, "D2").map_err(e)?;
    let h = d2.height_self(CurveId::c(3, 2)).map_err(e)?;
    ensure(h.summands() == [rat(4, 1), rat(0, 1), rat(-2, 1), rat(-2, 1)], format!("summands {:?}", h.summands()))?;
    ensure(h.total == rat(0, 1), format!("C32 height {}", h.total))?;
    for name in ["D1", "D2"] {
        let f = build_fibration(&t, name).map_err(e)?;
        let z = f.height_self(f.zero_section).map_err(e)?;
        ensure(z.total == rat(0, 1), format!("zero section height {} on {name}", z.total))?;
    }
    let d1 = build_fibration(&t, "D1").map_err(e)?;
    let h12 = d1.height_self(CurveId::c(1, 2)).map_err(e)?;
    ensure(h12.total == rat(0, 1), format!("C12 height {}", h12.total))?;
    Ok("<C32,C32> = 4 + 0 - 2 - 2 = 0, <O,O> = 0, <C12,C12> = 0".into())
}

fn shioda_tate() -> Outcome {
    let t = IntersectionTable::standard();
    let d2 = build_fibration(&t, "D2").map_err(e)?;
    let sizes: Vec<usize> = d2.reducible_fibers.iter().map(|f| f.components.len()).collect();
    ensure(sizes == [8, 8], format!("reducible fibers {sizes:?}"))?;
    let rank = shioda_tate_rank(18, &d2.reducible_fibers).map_err(e)?;
    ensure(rank == 2, format!("rank {rank}"))?;
    ensure(d2.i1_count == 8 && d2.euler_census() == 24, format!("i1 {} euler {}", d2.i1_count, d2.euler_census()))?;
    Ok("rank 2, 2*8 + 8*1 = 24".into())
}

fn torsor_calculus() -> Outcome {
    let t = IntersectionTable::standard();
    let sol = torsor::calibrate(&t, CalibrationMode::Diagonal).map_err(e)?;
    sol.verify().map_err(e)?;
    let s_scale = TorsorElement::new(Rf::s(), 0).map_err(e)?;
    for b in 0..sol.branches.len() {
        let h = sol.h(b).map_err(e)?;
        ensure(h.pow(4).is_identity(), format!("h^4 = {} on branch {b}", h.pow(4)))?;
        let fh = sol.f(b).map_err(e)?.mul(&h.inverse());
        ensure(fh == s_scale, format!("f h^-1 = {fh} on branch {b}"))?;
    }
    let r = torsor::derive_r_diagonal(&t).map_err(e)?;
    ensure(r == Rf::s().pow(4), format!("r = {r}"))?;
    Ok(format!("{} branches, h^4 = 1, f h^-1 = (s, 0), r = {r}", sol.branches.len()))
}

fn psi_calculus() -> Outcome {
    for n in -10..=10 {
        let expected = MobiusMap::new(-Rf::one(), Rf::r().pow(-n), Rf::zero(), Rf::one()).map_err(e)?;
        let p = torsor::psi_n(n);
        ensure(p.eq_projective(&expected), format!("psi_{n} = {p}"))?;
        ensure(p.compose(&p).is_identity(), format!("psi_{n} not an involution"))?;
    }
    ensure(torsor::pairwise_distinct(10), "psi_n not pairwise distinct")?;
    for n in -5..=5 {
        for m in -5..=5 {
            let c = torsor::centralizer_scalar(n, m);
            ensure(c == Rf::r().pow(n - m), format!("centralizer ({n}, {m}) = {c}"))?;
        }
    }
    Ok("psi_n(x) = r^-n - x for |n| <= 10, involutive, distinct, scalar r^(n-m)".into())
}

fn omega() -> Outcome {
    let ranks: Vec<usize> = (1..=8).map(torsor::omega_rank).collect();
    ensure(ranks.iter().enumerate().all(|(i, &r)| r == 2 * (i + 1)), format!("ranks {ranks:?}"))?;
    Ok(format!("ranks {ranks:?}"))
}

fn mukai_at(s: &Rf, t: &Rf) -> Result<(), String> {
    let det = mukai::non_coplanar_det(s, t).map_err(e)?;
    ensure(!det.is_zero(), "points coplanar")?;
    let frame = mukai::frame_and_alphas(s, t).map_err(e)?;
    let pulled = QuadricForm::segre().pullback(&frame.inverse());
    ensure(pulled.proportional(&QuadricForm::template(&frame.alpha)).is_some(), "template identity fails")?;
    ensure(!mukai::smoothness_disc(&frame.alpha).is_zero(), "quadric singular")?;
    ensure(mukai::verify_cremona_preserves_quadric(&frame.alpha).map_err(e)?, "quadric not preserved")?;
    ensure(mukai::cremona_is_involution(&frame.alpha).map_err(e)?, "not an involution")?;
    let bad = mukai::pij_swap_failures(&frame).map_err(e)?;
    ensure(bad.is_empty(), format!("p_ij swap fails at {bad:?}"))?;
    for k in 0..4 {
        let p = frame.point(k, k).map_err(e)?;
        ensure(mukai::cremona(&frame.alpha, &p).is_err(), format!("p_{k}{k} is not indeterminate"))?;
    }
    Ok(())
}

fn mukai_construction() -> Outcome {
    mukai_at(&Rf::s(), &Rf::t()).map_err(|m| format!("generic: {m}"))?;
    mukai_at(&Rf::int(2), &Rf::int(3)).map_err(|m| format!("(2, 3): {m}"))?;
    let generic = mukai::non_coplanar_det(&Rf::s(), &Rf::t()).map_err(e)?;
    ensure(generic.subst(Var::T, &Rf::s()).map_err(e)?.is_zero(), "det does not vanish at t = s")?;
    Ok("generic and (2, 3): frame, template, smooth, preserved, involution, 12 swaps, 4 base points".into())
}

fn cohomology() -> Outcome {
    let corpus: Vec<_> = galois::small_group_corpus().into_iter().filter(|(_, g)| g.order <= 16).collect();
    ensure(corpus.len() >= 20, format!("only {} groups of order <= 16", corpus.len()))?;
    for (name, g) in &corpus {
        let trivial = FiniteInvolutiveGroup::with_trivial_theta(g.table.clone()).map_err(e)?;
        let (a, b) = (galois::h1(&trivial).count, galois::h1_trivial_action(&trivial));
        ensure(a == b, format!("{name}: h1 {a} vs trivial formula {b}"))?;
    }
    let mut values = Vec::new();
    for spec in galois::reference_torus_cases() {
        let c = galois::h1_torus_colimit(&spec, 16).map_err(e)?;
        ensure(c.stabilized_at.is_some_and(|l| l <= 16), format!("no stabilization: {:?}", c.stabilized_at))?;
        values.push(c.value);
    }
    ensure(values == [2, 1, 1], format!("torus values {values:?}"))?;
    Ok(format!("{} groups agree, torus (2, 1, 1)", corpus.len()))
}

struct Mutant {
    label: String,
    config: RunConfig,
    construction: Construction,
}

/// `(detected, detected ignoring the table-invariants check)`
fn detect(m: &Mutant) -> (bool, bool) {
    let report = match run_suite_with(&m.config, &m.construction) {
        Ok(r) => r,
        Err(_) => return (true, true),
    };
    let failed: Vec<&str> = report.checks.iter().filter(|c| c.status == Status::Fail).map(|c| c.id.as_str()).collect();
    (!failed.is_empty(), failed.iter().any(|id| *id != "config.table-invariants"))
}

fn mutants() -> Result<Vec<Mutant>, String> {
    let base = IntersectionTable::standard();
    let table_suites = RunConfig::default().with_suites(&[Suite::Config, Suite::Fibration, Suite::Torsor, Suite::Mukai]);
    let mut out = Vec::new();
    for a in CurveId::all() {
        for b in CurveId::all() {
            let mut table = base.clone();
            table.set_entry(a, b, base.get(a, b) + 1);
            out.push(Mutant {
                label: format!("table {a}.{b} += 1"),
                config: table_suites.clone(),
                construction: Construction { table, ..Construction::default() },
            });
        }
    }

    let mukai_only = [Suite::Mukai];
    let frame = mukai::frame_and_alphas(&Rf::s(), &Rf::t()).map_err(e)?;
    let numeric = mukai::frame_and_alphas(&Rf::int(2), &Rf::int(3)).map_err(e)?;
    for i in 0..3 {
        for (how, f) in [("+ 1", 0), ("* 2", 1)] {
            let bump = |a: &AlphaTriple| -> Result<AlphaTriple, String> {
                let mut v = a.0.clone();
                v[i] = if f == 0 { &v[i] + &Rf::one() } else { &v[i] * &Rf::int(2) };
                AlphaTriple::new(v).map_err(e)
            };
            out.push(Mutant {
                label: format!("generic alpha_{} {how}", i + 1),
                config: RunConfig::default().with_suites(&mukai_only),
                construction: Construction { alpha_override: Some(bump(&frame.alpha)?), ..Construction::default() },
            });
            out.push(Mutant {
                label: format!("(2, 3) alpha_{} {how}", i + 1),
                config: RunConfig::specialized(rat(2, 1), rat(3, 1)).with_suites(&mukai_only),
                construction: Construction { alpha_override: Some(bump(&numeric.alpha)?), ..Construction::default() },
            });
        }
    }

    let cycle = build_fibration(&base, "D1").map_err(e)?.reducible_fibers[0].components.clone();
    for i in 0..cycle.len() {
        for j in i + 1..cycle.len() {
            let mut c = cycle.clone();
            c.swap(i, j);
            out.push(Mutant {
                label: format!("D1 cycle swap {i} {j}"),
                config: RunConfig::default().with_suites(&[Suite::Config, Suite::Fibration, Suite::Torsor]),
                construction: Construction { cycle_override: Some(c), ..Construction::default() },
            });
        }
    }
    Ok(out)
}

fn negative_controls() -> Outcome {
    let all = mutants()?;
    let mut hit = 0;
    let mut hit_strict = 0;
    let mut missed = Vec::new();
    let mut missed_strict = Vec::new();
    for m in &all {
        let (any, strict) = detect(m);
        hit += any as usize;
        hit_strict += strict as usize;
        if !any {
            missed.push(m.label.clone());
        }
        if !strict {
            missed_strict.push(m.label.clone());
        }
    }
    let n = all.len();
    let pct = |k: usize| 100.0 * k as f64 / n as f64;
    let detail = format!(
        "{hit}/{n} detected ({:.1}%), {hit_strict}/{n} ({:.1}%) without table-invariants, strict misses {:?}",
        pct(hit),
        pct(hit_strict),
        missed_strict.iter().take(8).collect::<Vec<_>>()
    );
    ensure(missed.is_empty() && pct(hit) >= 95.0, format!("{detail}; undetected {missed:?}"))?;
    Ok(detail)
}

fn end_to_end() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_kummer-verify");
    let run = || -> Result<(Vec<u8>, Duration), String> {
        let start = Instant::now();
        let out = Command::new(bin).args(["verify", "--format", "json"]).output().map_err(e)?;
        let took = start.elapsed();
        ensure(out.status.code() == Some(0), format!("exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)))?;
        Ok((out.stdout, took))
    };
    let (first, t1) = run()?;
    let (second, t2) = run()?;
    ensure(t1 < Duration::from_secs(60) && t2 < Duration::from_secs(60), format!("took {t1:?} and {t2:?}"))?;
    ensure(first == second, "reports differ between runs")?;
    let v: serde_json::Value = serde_json::from_slice(&first).map_err(e)?;
    ensure(v["config"]["mode"] == "symbolic", "not a symbolic run")?;
    Ok(format!("exit 0 in {t1:.2?}, {} identical bytes", first.len()))
}

fn main() {
    // Keep a specialized-mode sanity run alongside the symbolic one.
    assert!(run_suite_with(&RunConfig::specialized(rat(2, 1), rat(3, 1)), &Construction::default()).is_ok());
    assert_eq!(RunConfig::default().mode, Mode::Symbolic);

    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("lattice rank and isometries", lattice),
        ("fibration classes and sections", fibration_classes),
        ("group-law permutations", permutations),
        ("height pairing", heights),
        ("Shioda-Tate rank and Euler census", shioda_tate),
        ("torsor calibration", torsor_calculus),
        ("psi family", psi_calculus),
        ("omega rank", omega),
        ("Cremona involution on the quadric", mukai_construction),
        ("Galois cohomology", cohomology),
        ("negative controls", negative_controls),
        ("end-to-end verify run", end_to_end),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
