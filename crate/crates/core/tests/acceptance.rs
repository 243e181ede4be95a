//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use knotcore::bracket::{
    bracket_state_sum, bracket_tl, bracket_tl_closure, colored_bracket_bruteforce, normalized_invariant,
};
use knotcore::fib::{fib_b3_generators, fib_braid_rep, fib_f, fib_phase, fib_r, fibonacci_number, FibConstants};
use knotcore::qsim::{colored_bracket_plat_fib, hadamard_test, wrt_invariant, Part, ThreeStrandRep};
use knotcore::recoupling::{braid_phase, RecouplingContext};
use knotcore::rep::{max_abs, CMatrix};
use knotcore::scalars::unit;
use knotcore::su2::{density_probe, fibonacci_b3_quaternions};
use knotcore::tl::{evaluate_at, jones_wenzl, Network, TlAlgebra, TlElement};
use knotcore::{BraidWord, Closure, LaurentPoly, Move, RationalFn};
use nalgebra::DVector;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit: Duration) -> std::result::Result<(), String> {
    ensure(elapsed < limit, format!("took {elapsed:.2?}, limit {limit:?}"))
}

fn random_word(rng: &mut ChaCha8Rng, strands: u32, max_len: usize) -> BraidWord {
    let len = rng.random_range(0..=max_len);
    let w: Vec<i32> = (0..len)
        .map(|_| {
            let g = rng.random_range(1..strands as i32);
            if rng.random_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect();
    BraidWord::from_signed(strands, &w).unwrap()
}

/// Freely reduced words in `B_n` of length at most `max_len`.
fn reduced_words(n: i32, max_len: usize) -> Vec<Vec<i32>> {
    let gens: Vec<i32> = (1..n).flat_map(|g| [g, -g]).collect();
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &g in &gens {
                if w.last() == Some(&-g) {
                    continue;
                }
                let mut v: Vec<i32> = w.clone();
                v.push(g);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn poly(pairs: &[(i64, i64)]) -> LaurentPoly {
    LaurentPoly::from_pairs(pairs.iter().copied())
}

fn c1_trefoil() -> Check {
    let t = Instant::now();
    let b = BraidWord::parse("1 1 1", Some(2)).unwrap();
    let br = bracket_state_sum(&b, Closure::Trace).unwrap().result;
    ensure(br == poly(&[(5, -1), (-3, -1), (-7, 1)]), format!("bracket {br}"))?;
    let f = normalized_invariant(&b).unwrap();
    ensure(f == poly(&[(-4, 1), (-12, 1), (-16, -1)]), format!("f {f}"))?;
    within(t.elapsed(), Duration::from_secs(1))?;
    Ok(format!("<K> = {br}, f = {f}"))
}

fn c2_curl() -> Check {
    for (w, e) in [(1, 3), (-1, -3)] {
        let b = BraidWord::from_signed(2, &[w]).unwrap();
        let br = bracket_state_sum(&b, Closure::Trace).unwrap().result;
        ensure(br == poly(&[(e, -1)]), format!("s1^{w}: {br}"))?;
        ensure(bracket_tl(&b).unwrap() == br, "TL disagrees")?;
    }
    Ok("-A^3 and -A^-3".into())
}

fn c3_chirality() -> Check {
    let f = normalized_invariant(&BraidWord::from_signed(2, &[1, 1, 1]).unwrap()).unwrap();
    ensure(f != f.invert_variable(), "f is symmetric")?;
    Ok(format!("f(A^-1) = {}", f.invert_variable()))
}

fn c4_oracles() -> Check {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut plats = 0;
    for _ in 0..200 {
        let n = rng.random_range(2..=4);
        let b = random_word(&mut rng, n, 10);
        let s = bracket_state_sum(&b, Closure::Trace).unwrap().result;
        ensure(s == bracket_tl_closure(&b, Closure::Trace).unwrap(), format!("trace closure of {b}"))?;
        if n % 2 == 0 {
            let s = bracket_state_sum(&b, Closure::Plat).unwrap().result;
            ensure(s == bracket_tl_closure(&b, Closure::Plat).unwrap(), format!("plat closure of {b}"))?;
            plats += 1;
        }
    }
    within(t.elapsed(), Duration::from_secs(60))?;
    Ok(format!("200 trace + {plats} plat closures agree in {:.2?}", t.elapsed()))
}

fn c5_invariance() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut applied, mut stabs) = (0, 0);
    for _ in 0..10 {
        let mut b = random_word(&mut rng, 3, 6);
        let f0 = normalized_invariant(&b).unwrap();
        for _ in 0..50 {
            let mut moves = b.applicable_moves();
            if b.strands() >= 5 {
                moves.retain(|m| !matches!(m, Move::Stabilize { .. }));
            }
            let short: Vec<Move> =
                moves.iter().copied().filter(|m| !matches!(m, Move::InsertCancel { .. } | Move::Conjugate { .. })).collect();
            if b.len() > 24 && !short.is_empty() {
                moves = short;
            }
            let mv = moves[rng.random_range(0..moves.len())];
            let next = b.apply(mv).unwrap();
            if let Move::Stabilize { positive } = mv {
                let e = if positive { 3 } else { -3 };
                let lhs = bracket_tl(&next).unwrap();
                let rhs = bracket_tl(&b).unwrap() * poly(&[(e, -1)]);
                ensure(lhs == rhs, format!("stabilizing {b} scales the bracket wrongly"))?;
                stabs += 1;
            }
            b = next;
            ensure(normalized_invariant(&b).unwrap() == f0, format!("f changed after {mv:?}: {b}"))?;
            applied += 1;
        }
    }
    Ok(format!("{applied} moves, {stabs} stabilizations"))
}

fn c6_tl() -> Check {
    let d = LaurentPoly::delta();
    let tl = TlAlgebra::new(d.clone());
    for n in 2..=6 {
        let u = |i| TlElement::<LaurentPoly>::generator(n, i).unwrap();
        for i in 1..n {
            ensure(tl.mul(&u(i), &u(i)).unwrap() == u(i).scale(&d), format!("U{i}^2 in TL{n}"))?;
            if i + 1 < n {
                ensure(tl.mul(&tl.mul(&u(i), &u(i + 1)).unwrap(), &u(i)).unwrap() == u(i), format!("U{i}U{}U{i}", i + 1))?;
                ensure(tl.mul(&tl.mul(&u(i + 1), &u(i)).unwrap(), &u(i + 1)).unwrap() == u(i + 1), format!("U{}U{i}U{}", i + 1, i + 1))?;
            }
            for j in i + 2..n {
                ensure(tl.mul(&u(i), &u(j)).unwrap() == tl.mul(&u(j), &u(i)).unwrap(), format!("U{i}U{j}"))?;
            }
        }
    }
    let dr = RationalFn::from_poly(d);
    let tlr = TlAlgebra::new(dr.clone());
    for n in 2..=4 {
        let p = jones_wenzl(dr.clone(), n).unwrap();
        ensure(tlr.mul(&p, &p).unwrap() == p, format!("P{n} not idempotent"))?;
        for i in 1..n {
            let u = TlElement::<RationalFn>::generator(n, i).unwrap();
            ensure(tlr.mul(&u, &p).unwrap().is_zero() && tlr.mul(&p, &u).unwrap().is_zero(), format!("U{i} P{n} != 0"))?;
        }
    }
    Ok("relations for n <= 6, P2..P4 exact".into())
}

fn c7_orthogonality() -> Check {
    let t = Instant::now();
    let mut notes = Vec::new();
    for r in 5..=8 {
        let ctx = RecouplingContext::new(r).unwrap();
        let labels = ctx.all_matrix_labels();
        let (mut orth, mut tr): (f64, f64) = (0.0, 0.0);
        for l in &labels {
            let [a, b, c, d] = *l;
            let m = ctx.recoupling_matrix(a, b, c, d).unwrap();
            orth = orth.max(m.orthogonality_residual());
            let mt = ctx.recoupling_matrix(b, d, a, c).unwrap();
            ensure(mt.rows == m.cols && mt.cols == m.rows, format!("shape of M[{b},{d},{a},{c}]"))?;
            let t = m.transpose();
            for (i, row) in t.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    tr = tr.max((x - mt.entries[i][j]).abs());
                }
            }
        }
        ensure(orth < 1e-10, format!("r = {r}: orthogonality residual {orth:.3e}"))?;
        ensure(tr < 1e-10, format!("r = {r}: transpose residual {tr:.3e}"))?;
        notes.push(format!("r={r}: {} matrices, {orth:.1e}", labels.len()));
    }
    within(t.elapsed(), Duration::from_secs(300))?;
    Ok(format!("{} in {:.2?}", notes.join("; "), t.elapsed()))
}

fn c8_theta() -> Check {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for r in 3..=8 {
        let ctx = RecouplingContext::new(r).unwrap();
        let top = ctx.max_label().min(3);
        for a in 0..=top {
            for b in 0..=top {
                for c in 0..=top {
                    if ctx.admissible(a, b, c) {
                        let x = ctx.theta(a, b, c).unwrap();
                        let y = ctx.theta_by_expansion(a, b, c).unwrap();
                        worst = worst.max((x - y).abs());
                        count += 1;
                    }
                }
            }
        }
    }
    ensure(worst < 1e-10, format!("worst {worst:.3e}"))?;
    Ok(format!("{count} triples, worst {worst:.1e}"))
}

fn c9_fibonacci_constants() -> Check {
    let c = FibConstants::new();
    let tol = 1e-12;
    let d = c.delta;
    ensure((c.big_delta.powi(2) - c.big_delta - 1.0).abs() < tol, "Δ² = Δ + 1")?;
    ensure((c.theta - (d - 1.0)).abs() < tol, "Θ = δ − 1")?;
    ensure((c.tet - (3.0 * d - 5.0)).abs() < tol, "T = 3δ − 5")?;
    ensure((c.tet + c.theta.powi(2) / c.big_delta.powi(2)).abs() < tol, "T = −Θ²/Δ²")?;
    let f = fib_f();
    ensure((&f * &f - nalgebra::DMatrix::<f64>::identity(2, 2)).abs().max() < tol, "F² = I")?;
    let tau = 1.0 / d;
    let want = nalgebra::DMatrix::from_row_slice(2, 2, &[tau, tau.sqrt(), tau.sqrt(), -tau]);
    ensure((&f - want).abs().max() < tol, "F entries")?;
    ensure((c.rescaled_f() - &f).abs().max() < tol, "rescaled F")?;
    let r = fib_r();
    ensure((r[(0, 0)] - unit(4.0 * PI / 5.0)).norm() < tol && (r[(1, 1)] + unit(2.0 * PI / 5.0)).norm() < tol, "R")?;
    let tet = evaluate_at(&Network::tetrahedron([2; 6]).unwrap(), c.a).unwrap();
    ensure((tet - (3.0 * d - 5.0)).norm() < 1e-10, format!("Tet by expansion {tet}"))?;
    Ok(format!("Tet = {:.10}", tet.re))
}

fn c10_braid_relations() -> Check {
    let (s1, s2) = fib_b3_generators();
    let res = max_abs(&(&s1 * &s2 * &s1 - &s2 * &s1 * &s2));
    ensure(res < 1e-10, format!("S1S2S1 residual {res:.3e}"))?;
    let rep4 = fib_braid_rep(4).unwrap();
    ensure(max_abs(&(rep4.generator(1) - &s1)) < 1e-12 && max_abs(&(rep4.generator(2) - &s2)) < 1e-12, "n = 4 pair")?;
    let mut worst: f64 = 0.0;
    for n in 3..=8 {
        let rep = fib_braid_rep(n).unwrap();
        ensure(rep.dim() == fibonacci_number(n - 2), format!("dim at n = {n}"))?;
        worst = worst.max(rep.braid_relation_residual()).max(rep.far_commutation_residual());
    }
    ensure(worst < 1e-9, format!("worst relation residual {worst:.3e}"))?;
    Ok(format!("S1S2S1 {res:.1e}, n <= 8 {worst:.1e}"))
}

fn c11_pentagon_hexagon() -> Check {
    let ctx = RecouplingContext::new(5).unwrap();
    let rep = ctx.pentagon_hexagon_check(&[0, 2]).unwrap();
    ensure(rep.pentagon < 1e-9, format!("pentagon {:.3e}", rep.pentagon))?;
    ensure(rep.hexagon < 1e-9, format!("hexagon {:.3e}", rep.hexagon))?;
    let a = FibConstants::new().a;
    ensure((braid_phase(a, 2, 2, 2) + a.powi(4)).norm() < 1e-12, "λ(2,2,2) ≠ −A⁴")?;
    ensure((braid_phase(a, 2, 2, 0) - a.powi(8)).norm() < 1e-12, "λ(2,2,0) ≠ A⁸")?;
    ensure((fib_phase(1) - braid_phase(a, 2, 2, 2)).norm() < 1e-12 && (fib_phase(0) - braid_phase(a, 2, 2, 0)).norm() < 1e-12, "model phases")?;
    Ok(format!(
        "pentagon {:.1e} ({} eqs), hexagon {:.1e} ({} eqs)",
        rep.pentagon, rep.pentagon_equations, rep.hexagon, rep.hexagon_equations
    ))
}

fn c12_trace_algorithm() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let thetas = [0.1, -0.35, PI / 6.0, PI - 0.2, -PI + 0.45];
    let mut worst: f64 = 0.0;
    for k in 0..100 {
        let b = random_word(&mut rng, 3, 10);
        let rep = ThreeStrandRep::at_angle(thetas[k % thetas.len()], false).unwrap();
        let exact = bracket_tl(&b).unwrap().eval(rep.a).unwrap();
        let via = rep.bracket_via_trace(&b).unwrap();
        worst = worst.max((exact - via).norm());
    }
    ensure(worst < 1e-9, format!("worst {worst:.3e}"))?;
    Ok(format!("100 words, worst {worst:.1e}"))
}

fn c13_hadamard() -> Check {
    let rep = ThreeStrandRep::at_angle(0.45, false).unwrap();
    let u: CMatrix = rep.image(&BraidWord::from_signed(3, &[1, 2, -1, 2]).unwrap()).unwrap();
    let psi = DVector::from_vec(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
    let mut inside = 0;
    for seed in 0..50 {
        let e = hadamard_test(&u, &psi, 100_000, Part::Real, seed).unwrap();
        if (e.estimate - e.exact).abs() <= 4.0 * e.stderr {
            inside += 1;
        }
    }
    ensure(inside >= 48, format!("{inside}/50 within 4σ"))?;
    Ok(format!("{inside}/50 seeds within 4 standard errors"))
}

fn c14_colored_plat() -> Check {
    let t = Instant::now();
    let a = FibConstants::new().a;
    let words = reduced_words(4, 4);
    let mut worst: f64 = 0.0;
    for w in &words {
        let b = BraidWord::from_signed(4, w).unwrap();
        let plat = colored_bracket_plat_fib(&b).unwrap();
        let brute = colored_bracket_bruteforce(&b, 2, Closure::Plat, a).unwrap();
        worst = worst.max((plat - brute).norm());
    }
    ensure(worst < 1e-8, format!("worst {worst:.3e}"))?;
    Ok(format!("{} reduced words, worst {worst:.1e}, {:.2?}", words.len(), t.elapsed()))
}

fn c15_wrt() -> Check {
    let mut notes = Vec::new();
    for r in 3..=5 {
        let ctx = RecouplingContext::new(r).unwrap();
        let w = wrt_invariant(&BraidWord::identity(2), &ctx).unwrap();
        let expect: f64 = (0..=r - 2).map(|a| ctx.delta_by_expansion(a).unwrap().powi(2)).sum();
        ensure((w - expect).norm() < 1e-10, format!("r = {r}: {w} vs {expect}"))?;
        notes.push(format!("r={r}: {:.6}", w.re));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut worst: f64 = 0.0;
    for r in [4, 5] {
        let ctx = RecouplingContext::new(r).unwrap();
        for _ in 0..8 {
            let b = random_word(&mut rng, 4, 5);
            let base = wrt_invariant(&b, &ctx).unwrap();
            let g = rng.random_range(1..4) * if rng.random_bool(0.5) { 1 } else { -1 };
            let pos = rng.random_range(0..=b.len());
            let b2 = b.apply(Move::InsertCancel { generator: g, pos }).unwrap();
            worst = worst.max((wrt_invariant(&b2, &ctx).unwrap() - base).norm());
        }
    }
    ensure(worst < 1e-8, format!("canceling pair changed WRT by {worst:.3e}"))?;
    Ok(format!("{}; canceling pairs {worst:.1e}", notes.join(", ")))
}

fn density() -> Check {
    let rep = density_probe(&fibonacci_b3_quaternions(), &[4, 10], 200, 2024);
    let (r4, r10) = (rep.curve[0].2, rep.curve[1].2);
    ensure(r10 < r4, format!("radius {r4:.4} -> {r10:.4}"))?;
    Ok(format!("covering radius {r4:.4} (L=4) -> {r10:.4} (L=10)"))
}

fn main() {
    // silence the default hook; failures are reported below
    std::panic::set_hook(Box::new(|_| {}));
    let checks: Vec<(&str, &str, fn() -> Check)> = vec![
        ("1", "trefoil golden values", c1_trefoil),
        ("2", "curl behavior", c2_curl),
        ("3", "chirality", c3_chirality),
        ("4", "state sum vs TL transfer", c4_oracles),
        ("5", "move invariance", c5_invariance),
        ("6", "TL relations and projectors", c6_tl),
        ("7", "recoupling orthogonality", c7_orthogonality),
        ("8", "theta closed form vs expansion", c8_theta),
        ("9", "Fibonacci constants", c9_fibonacci_constants),
        ("10", "braid relations", c10_braid_relations),
        ("11", "pentagon and hexagon", c11_pentagon_hexagon),
        ("12", "trace algorithm", c12_trace_algorithm),
        ("13", "Hadamard sampler", c13_hadamard),
        ("14", "colored plat closure", c14_colored_plat),
        ("15", "WRT", c15_wrt),
        ("D", "density probe", density),
    ];
    let mut failed = 0;
    for (id, name, f) in checks {
        let t = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let dt = t.elapsed();
        match out {
            Ok(detail) => println!("PASS criterion {id:>2} {name}: {detail} [{dt:.2?}]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {id:>2} {name}: {detail} [{dt:.2?}]");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}
