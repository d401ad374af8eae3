//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

use std::process::ExitCode;
use std::time::Instant;

use num::{BigInt, BigRational, One};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use eigenscheme::algorithms::{
    alpha_kernel, dimension_bound, dimension_bound_closed_form, fit_tensor_to_points, koszul_check, derham_check,
    quadric_power, recover_partially_symmetric, recover_symmetric, trivial_dimension,
};
use eigenscheme::geometry::{collinearity_report, fiber_line, gradient_point, laguerre, rank_a_omega};
use eigenscheme::hilbert::{actual_hilbert, predicted_betti, predicted_hilbert, stabilization_degree};
use eigenscheme::point::ProjPoint;
use eigenscheme::poly::{monomial_basis, RationalPoly};
use eigenscheme::sample::{random_tensor, DEFAULT_BOUND};
use eigenscheme::solver::{fermat_eigenpoints, solve_eigenpoints_p2, DEDUP_TOL};
use eigenscheme::tensor::{
    determinantal_generators, gradient_tensor, is_eigenpoint, w_count, AnyTensor, DetTuple, SymTensor,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

/// Shapes used by the characterization criteria.
const CHAR_SHAPES: [(usize, u32); 5] = [(1, 3), (2, 3), (2, 4), (3, 3), (3, 4)];
const CHAR_SAMPLES: u64 = 100;
/// Required fraction of perturbations detected.
const PERTURB_MIN: usize = 99;
const SOLVER_SAMPLES: u64 = 20;
const SOLVER_TOL: f64 = 1e-8;
const FERMAT_MATCH_TOL: f64 = 1e-10;
const LAGUERRE_SAMPLES: u64 = 50;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

fn seed(shape: (usize, u32), k: u64, salt: u64) -> u64 {
    salt * 1_000_000 + (shape.0 as u64) * 10_000 + (shape.1 as u64) * 1_000 + k
}

fn count_formula() -> Outcome {
    let table = [((1, 3), 3u128), ((2, 3), 7), ((2, 4), 13), ((2, 5), 21), ((3, 3), 15)];
    for ((n, d), w) in table {
        let got = w_count(n, d).map_err(|e| e.to_string())?;
        ensure(got == w, || format!("w({n},{d}) = {got}, expected {w}"))?;
    }
    for n in 1..=10 {
        let got = w_count(n, 2).map_err(|e| e.to_string())?;
        ensure(got == n as u128 + 1, || format!("w({n},2) = {got}"))?;
    }
    Ok("tabulated values and w(n,2) = n+1 for n <= 10".into())
}

/// Adds one to the coefficient of a random monomial in a random minor.
fn perturb(f: &DetTuple, rng: &mut ChaCha8Rng) -> DetTuple {
    let nvars = f.n() + 1;
    let mut entries = f.entries().to_vec();
    let k = rng.gen_range(0..entries.len());
    let basis = monomial_basis(nvars, f.d());
    let m = basis[rng.gen_range(0..basis.len())].clone();
    let bump = RationalPoly::term(m, BigRational::one());
    entries[k] = entries[k].checked_add(&bump).expect("same ring");
    DetTuple::new(f.n(), f.d(), entries).expect("same shape")
}

fn characterization_soundness() -> Outcome {
    let mut detected = 0usize;
    let mut trials = 0usize;
    for shape @ (n, d) in CHAR_SHAPES {
        let mut rng = ChaCha8Rng::seed_from_u64(seed(shape, 0, 9));
        for k in 0..CHAR_SAMPLES {
            let t = random_tensor(n, d, false, seed(shape, k, 1), DEFAULT_BOUND).map_err(|e| e.to_string())?;
            let f = t.det_tuple();
            ensure(koszul_check(&f), || format!("koszul fails on random tensor ({n},{d}) #{k}"))?;
            let s = random_tensor(n, d, true, seed(shape, k, 2), DEFAULT_BOUND).map_err(|e| e.to_string())?;
            let fs = s.det_tuple();
            ensure(koszul_check(&fs) && derham_check(&fs), || format!("checks fail on symmetric ({n},{d}) #{k}"))?;
            // With n = 1 there are no index triples and both checks hold vacuously.
            if n >= 2 {
                trials += 2;
                detected += usize::from(!koszul_check(&perturb(&f, &mut rng)));
                let p = perturb(&fs, &mut rng);
                detected += usize::from(!(koszul_check(&p) && derham_check(&p)));
            }
        }
    }
    let needed = trials * PERTURB_MIN / 100;
    ensure(detected >= needed, || format!("perturbations detected {detected}/{trials}, need {needed}"))?;
    Ok(format!("{} tuples pass; perturbations detected {detected}/{trials}", 2 * CHAR_SAMPLES as usize * CHAR_SHAPES.len()))
}

fn characterization_completeness() -> Outcome {
    let mut recovered = 0usize;
    for shape @ (n, d) in CHAR_SHAPES {
        for k in 0..CHAR_SAMPLES {
            let t = random_tensor(n, d, false, seed(shape, k, 1), DEFAULT_BOUND).map_err(|e| e.to_string())?;
            let f = t.det_tuple();
            let r = recover_partially_symmetric(&f).ok_or_else(|| format!("no recovery for ({n},{d}) #{k}"))?;
            ensure(determinantal_generators(&r) == f, || format!("recovered tuple differs for ({n},{d}) #{k}"))?;
            let s = random_tensor(n, d, true, seed(shape, k, 2), DEFAULT_BOUND).map_err(|e| e.to_string())?;
            let fs = s.det_tuple();
            let r = recover_symmetric(&fs).ok_or_else(|| format!("no symmetric recovery for ({n},{d}) #{k}"))?;
            ensure(determinantal_generators(&gradient_tensor(&r)) == fs, || {
                format!("recovered symmetric tuple differs for ({n},{d}) #{k}")
            })?;
            recovered += 2;
        }
    }
    Ok(format!("{recovered} tuples recovered exactly"))
}

fn hilbert_agreement() -> Outcome {
    let mut checked = 0usize;
    for shape @ (n, d) in [(1, 3), (2, 3), (2, 4), (3, 3)] {
        let w = w_count(n, d).map_err(|e| e.to_string())?;
        let top = stabilization_degree(n, d) + 1;
        for k in 0..4u64 {
            let t = random_tensor(n, d, k % 2 == 1, seed(shape, k, 3), DEFAULT_BOUND).map_err(|e| e.to_string())?;
            let f = t.det_tuple();
            for e in 0..=top {
                let p = predicted_hilbert(n, d, e).map_err(|e| e.to_string())?;
                let a = actual_hilbert(&f, e);
                ensure(p == a, || format!("({n},{d}) #{k} degree {e}: predicted {p}, actual {a}"))?;
            }
            for e in top - 1..=top {
                let a = actual_hilbert(&f, e);
                ensure(a == w, || format!("({n},{d}) #{k}: HF({e}) = {a}, expected w = {w}"))?;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} tensors agree on [0, n(d-2)+2] and stabilize at w"))
}

fn betti_instantiation() -> Outcome {
    let b = predicted_betti(2, 3).map_err(|e| e.to_string())?;
    ensure(b.graded(1) == vec![(3, 3)], || format!("F_1 = {:?}", b.graded(1)))?;
    ensure(b.graded(2) == vec![(4, 1), (5, 1)], || format!("F_2 = {:?}", b.graded(2)))?;
    ensure(b.graded(3).is_empty(), || format!("F_3 = {:?}", b.graded(3)))?;
    Ok(b.to_string().replace('\n', "; ").trim_end_matches("; ").to_string())
}

fn fermat_end_to_end() -> Outcome {
    for n in 1..=3 {
        for d in [3, 4] {
            let w = w_count(n, d).map_err(|e| e.to_string())?;
            let set = fermat_eigenpoints(n, d).map_err(|e| e.to_string())?;
            ensure(set.len() as u128 == w, || format!("fermat({n},{d}) has {} points, w = {w}", set.len()))?;
            let t = gradient_tensor(&SymTensor::fermat(n, d).map_err(|e| e.to_string())?);
            for p in set.projective_points() {
                ensure(p.as_rational().is_some(), || format!("fermat({n},{d}) point not exact"))?;
                let m = is_eigenpoint(&t, &p, 0.0).map_err(|e| e.to_string())?;
                ensure(m.is_eigenpoint, || format!("fermat({n},{d}) point {p:?} fails membership"))?;
            }
        }
    }
    let pts = fermat_eigenpoints(2, 3).map_err(|e| e.to_string())?.projective_points();
    let fit = fit_tensor_to_points(&pts, 3, true).map_err(|e| e.to_string())?;
    let trivial = trivial_dimension(2, 3, true) as usize;
    ensure(fit.found && fit.kernel_dim == trivial + 1, || {
        format!("fit kernel dim {} (trivial {trivial}), found {}", fit.kernel_dim, fit.found)
    })?;
    let Some(AnyTensor::Symmetric(s)) = fit.witness else {
        return Err("witness is not a symmetric tensor".into());
    };
    let fermat = SymTensor::fermat(2, 3).map_err(|e| e.to_string())?;
    ensure(s.form().proportionality(fermat.form()).is_some(), || format!("witness {} not proportional", s.form()))?;
    Ok(format!("counts w(n,d) for n <= 3, d in {{3,4}}; witness {} (kernel dim {})", s.form(), fit.kernel_dim))
}

fn random_symmetric_plane(d: u32, k: u64) -> Result<SymTensor, String> {
    match random_tensor(2, d, true, seed((2, d), k, 4), DEFAULT_BOUND).map_err(|e| e.to_string())? {
        AnyTensor::Symmetric(s) => Ok(s),
        AnyTensor::PartiallySymmetric(_) => Err("sampler returned the wrong kind".into()),
    }
}

fn numeric_solver() -> Outcome {
    let mut worst = 0.0f64;
    for d in [3, 4] {
        let w = w_count(2, d).map_err(|e| e.to_string())? as usize;
        for k in 0..SOLVER_SAMPLES {
            let t = gradient_tensor(&random_symmetric_plane(d, k)?);
            let set = solve_eigenpoints_p2(&t, SOLVER_TOL).map_err(|e| format!("d={d} #{k}: {e}"))?;
            ensure(set.len() == w, || format!("d={d} #{k}: {} points, expected {w}; {:?}", set.len(), set.warnings))?;
            for (i, p) in set.points.iter().enumerate() {
                let r = p.residual.unwrap_or(0.0);
                worst = worst.max(r);
                ensure(r < SOLVER_TOL, || format!("d={d} #{k}: residual {r:e}"))?;
                for q in &set.points[..i] {
                    let dist = p.point.to_complex().chordal_distance(&q.point.to_complex());
                    ensure(dist >= DEDUP_TOL, || format!("d={d} #{k}: points not distinct ({dist:e})"))?;
                }
            }
        }
    }
    let t = gradient_tensor(&SymTensor::fermat(2, 3).map_err(|e| e.to_string())?);
    let set = solve_eigenpoints_p2(&t, SOLVER_TOL).map_err(|e| e.to_string())?;
    let exact = fermat_eigenpoints(2, 3).map_err(|e| e.to_string())?;
    ensure(set.len() == exact.len(), || format!("Fermat cubic: {} points", set.len()))?;
    let mut gap = 0.0f64;
    for e in exact.projective_points() {
        let best = set
            .points
            .iter()
            .map(|p| p.point.to_complex().chordal_distance(&e.to_complex()))
            .fold(f64::INFINITY, f64::min);
        gap = gap.max(best);
    }
    ensure(gap < FERMAT_MATCH_TOL, || format!("Fermat cubic mismatch {gap:e}"))?;
    Ok(format!("{} tensors, worst residual {worst:.1e}; Fermat gap {gap:.1e}", 2 * SOLVER_SAMPLES))
}

fn geometry_lines() -> Outcome {
    for d in [3, 4] {
        for k in 0..SOLVER_SAMPLES {
            let t = gradient_tensor(&random_symmetric_plane(d, k)?);
            let pts = solve_eigenpoints_p2(&t, SOLVER_TOL).map_err(|e| e.to_string())?.projective_points();
            let r = collinearity_report(&pts, d).map_err(|e| e.to_string())?;
            ensure(r.collinear_violations.is_empty(), || format!("d={d} #{k}: {} violations", r.collinear_violations.len()))?;
        }
    }
    let pts = fermat_eigenpoints(2, 3).map_err(|e| e.to_string())?.projective_points();
    let r = collinearity_report(&pts, 3).map_err(|e| e.to_string())?;
    ensure(r.collinear_violations.is_empty(), || "Fermat cubic reports a violation".into())?;
    ensure(!r.sharp_lines.is_empty() && r.sharp_lines.iter().all(|l| l.points.len() == 3), || {
        format!("Fermat sharp lines {:?}", r.sharp_lines.iter().map(|l| l.points.len()).collect::<Vec<_>>())
    })?;
    let line: Vec<ProjPoint> = [[1, 0, 0], [0, 1, 0], [1, 1, 0], [1, 2, 0]]
        .iter()
        .map(|c| ProjPoint::from_integers(c).expect("nonzero"))
        .collect();
    let bad = collinearity_report(&line, 3).map_err(|e| e.to_string())?;
    ensure(bad.collinear_violations.len() == 1, || "4 collinear points not flagged".into())?;
    Ok(format!("solver outputs clean; Fermat cubic has {} sharp 3-point lines; 4 collinear points flagged", r.sharp_lines.len()))
}

fn alpha_parity() -> Outcome {
    let mut cases = 0;
    for n in 1..=4 {
        for d in 2..=8u32 {
            let k = alpha_kernel(n, d).map_err(|e| e.to_string())?;
            let expected = usize::from(d % 2 == 0);
            ensure(k.dim == expected, || format!("alpha({n},{d}) dim {}", k.dim))?;
            if expected == 1 {
                let g = k.generator.ok_or_else(|| format!("alpha({n},{d}) missing generator"))?;
                ensure(g.proportionality(&quadric_power(n, d / 2)).is_some(), || format!("alpha({n},{d}) generator {g}"))?;
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} cases, generator (sum x_i^2)^(d/2) for even d"))
}

fn dimension_bound_arithmetic() -> Outcome {
    for d in 3..=8u32 {
        let want = (d * d + 2 * d - 1) as i128;
        let b = dimension_bound(2, d).map_err(|e| e.to_string())?;
        let c = dimension_bound_closed_form(2, d).map_err(|e| e.to_string())?;
        ensure(b.bound == want && c == want, || format!("d={d}: computed {}, closed form {c}, expected {want}", b.bound))?;
    }
    Ok("bound = d^2+2d-1 at n = 2 for d = 3..8".into())
}

fn laguerre_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut done = 0u64;
    let mut attempts = 0u64;
    while done < LAGUERRE_SAMPLES {
        attempts += 1;
        let n = if done.is_multiple_of(2) { 2 } else { 3 };
        let d = rng.gen_range(2..=4u32);
        let t = random_tensor(n, d, attempts.is_multiple_of(3), 5_000 + attempts, DEFAULT_BOUND)
            .map_err(|e| e.to_string())?
            .to_partially_symmetric();
        let coords: Vec<BigRational> =
            (0..=n).map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-5..=5i64)))).collect();
        let Ok(p) = ProjPoint::rational(coords) else { continue };
        let Ok(omega) = laguerre(&t, &p) else { continue };
        let rank = rank_a_omega(&omega).map_err(|e| e.to_string())?;
        ensure(rank == n - 1, || format!("sample {done}: rank {rank}, expected {}", n - 1))?;
        let line = fiber_line(&omega).map_err(|e| e.to_string())?;
        let g = gradient_point(&t, &p).map_err(|e| e.to_string())?.ok_or("gradient point vanishes")?;
        ensure(line.contains(&p).map_err(|e| e.to_string())?, || format!("sample {done}: P not on fiber line"))?;
        ensure(line.contains(&g).map_err(|e| e.to_string())?, || format!("sample {done}: gradient point not on fiber line"))?;
        done += 1;
    }
    Ok(format!("{done} pairs, rank n-1 and both points on the fiber line"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("count formula", count_formula),
        ("characterization soundness", characterization_soundness),
        ("characterization completeness", characterization_completeness),
        ("Hilbert function agreement", hilbert_agreement),
        ("Betti table instantiation", betti_instantiation),
        ("Fermat end-to-end", fermat_end_to_end),
        ("numeric plane solver", numeric_solver),
        ("collinearity conditions", geometry_lines),
        ("alpha kernel parity", alpha_parity),
        ("dimension bound arithmetic", dimension_bound_arithmetic),
        ("Laguerre map properties", laguerre_properties),
    ];
    let results: Vec<(Outcome, f64)> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|&(_, f)| {
                s.spawn(move || {
                    let start = Instant::now();
                    let out = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
                    (out, start.elapsed().as_secs_f64())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("joined")).collect()
    });
    let mut failed = 0;
    for (i, ((name, _), (out, secs))) in criteria.iter().zip(results).enumerate() {
        match out {
            Ok(detail) => println!("PASS {:>2} {name} ({secs:.2}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.2}s): {why}", i + 1)
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
