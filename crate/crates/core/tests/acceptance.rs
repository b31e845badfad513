//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::path::Path;
use std::process::Command;
use std::time::Instant;

use nalgebra::{DMatrix, Matrix2, Matrix3, Matrix4, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pseudostochastic::classical::{two_level_map, two_level_propagator};
use pseudostochastic::lie::{self, LieElement};
use pseudostochastic::matrix::{
    self, diamond_vertices, in_ps_k, in_s0_k, in_s_k, witness_search, PSMatrix,
};
use pseudostochastic::quantum::{
    entropy_bound, purity, purity_bound, reduction_threshold, unital_in_pp_k, von_neumann_entropy,
    QubitMapAffine, QubitState,
};
use pseudostochastic::qubit::{
    classify_divisibility, dip_schedule, evolve_qubit, lambdas, lambdas_to_p, p_to_lambdas,
    DivisibilityClass, RateSchedule3, HADAMARD,
};
use pseudostochastic::rates::RateFn;
use pseudostochastic::simplex::{ConvexRegion, ProbVector};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn close(x: f64, y: f64, tol: f64) -> bool {
    (x - y).abs() <= tol
}

fn diamond_geometry() -> Outcome {
    let eps = 1.0 / 3.0;
    let v = diamond_vertices(eps).map_err(|e| e.to_string())?;
    let expect = [
        (v.a, (2.0, 2.0)),
        (v.b, (-1.0, -1.0)),
        (v.c, (1.0 / 3.0, 2.0 / 3.0)),
        (v.d, (2.0 / 3.0, 1.0 / 3.0)),
    ];
    for (got, want) in expect {
        check(
            close(got.0, want.0, 1e-12) && close(got.1, want.1, 1e-12),
            format!("vertex {got:?} != {want:?}"),
        )?;
    }
    let k = ConvexRegion::diamond(eps).unwrap();
    let at_a = PSMatrix::from_ab(v.a.0, v.a.1);
    let at_c = PSMatrix::from_ab(v.c.0, v.c.1);
    check(in_ps_k(&at_a, &k, 1e-12).unwrap(), "A not in PS(K)")?;
    check(!at_a.classify(1e-12).is_stochastic, "A stochastic")?;
    check(in_s_k(&at_c, &k, 1e-12).unwrap(), "C not in S(K)")?;
    Ok("A=(2,2) B=(-1,-1) C=(1/3,2/3) D=(2/3,1/3)".into())
}

fn determinant_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for _ in 0..10_000 {
        let t = PSMatrix::from_ab(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
        let m = t.matrix();
        worst = worst.max((m.determinant() - (m.trace() - 1.0)).abs());
    }
    check(worst <= 1e-12, format!("max error {worst:e}"))?;
    Ok(format!("10^4 samples, max |det - (tr - 1)| = {worst:.1e}"))
}

fn random_simplex(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let v: Vec<f64> = (0..n)
        .map(|_| -rng.random_range(1e-12f64..1.0).ln())
        .collect();
    let s: f64 = v.iter().sum();
    v.into_iter().map(|x| x / s).collect()
}

/// Matrix whose columns are random points of the hull of `pts`.
fn random_s0(rng: &mut ChaCha8Rng, pts: &[ProbVector]) -> PSMatrix {
    let n = pts[0].dim();
    let mut m = DMatrix::zeros(n, n);
    for j in 0..n {
        let w = random_simplex(rng, pts.len());
        for (wk, p) in w.iter().zip(pts) {
            for i in 0..n {
                m[(i, j)] += wk * p.as_slice()[i];
            }
        }
    }
    PSMatrix::new(m, 1e-9).unwrap()
}

fn random_ps(rng: &mut ChaCha8Rng, n: usize, spread: f64) -> PSMatrix {
    let mut m = DMatrix::from_fn(n, n, |_, _| rng.random_range(-spread..spread));
    for j in 0..n {
        let s = m.column(j).sum();
        m[(j, j)] += 1.0 - s;
    }
    PSMatrix::new(m, 1e-9).unwrap()
}

fn nesting() -> Outcome {
    let tol = 1e-9;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut counterexamples = 0;
    let mut counts = [0usize; 4];
    for sample in 0..1000 {
        let (k, pts) = if sample % 2 == 0 {
            let eps = rng.random_range(0.0..0.5);
            let k = ConvexRegion::diamond(eps).unwrap();
            let pts = k.extreme_points();
            (k, pts)
        } else {
            let pts: Vec<ProbVector> = (0..3)
                .map(|_| ProbVector::new(random_simplex(&mut rng, 3), 1e-12).unwrap())
                .collect();
            (ConvexRegion::hull(pts.clone()).unwrap(), pts)
        };
        let n = k.dim();
        let t1 = random_s0(&mut rng, &pts);
        let t2 = random_s0(&mut rng, &pts);
        let prod = matrix::compose(&t1, &t2).unwrap();
        if !in_s0_k(&prod, &k, tol).unwrap() {
            counterexamples += 1;
        }
        let candidates = [
            t1,
            random_ps(&mut rng, n, 0.3),
            random_ps(&mut rng, n, 1.0),
            prod,
        ];
        for t in &candidates {
            let s0 = in_s0_k(t, &k, tol).unwrap();
            let s = in_s_k(t, &k, tol).unwrap();
            let st = t.classify(tol).is_stochastic;
            let ps = in_ps_k(t, &k, tol).unwrap();
            for (c, flag) in counts.iter_mut().zip([s0, s, st, ps]) {
                *c += flag as usize;
            }
            if (s0 && !s) || (s && !st) || (st && !ps) {
                counterexamples += 1;
            }
        }
    }
    check(
        counterexamples == 0,
        format!("{counterexamples} counterexamples"),
    )?;
    Ok(format!(
        "10^3 samples, 0 counterexamples; memberships S0/S/Sigma/PS = {counts:?}"
    ))
}

fn witness_grid() -> Outcome {
    let eps = 1.0 / 3.0;
    let tol = 1e-9;
    let k = ConvexRegion::diamond(eps).unwrap();
    let (mut outside, mut inside) = (0, 0);
    for i in 0..=100 {
        let p1 = i as f64 / 100.0;
        let p = ProbVector::new(vec![p1, 1.0 - p1], 1e-12).unwrap();
        let in_k = k.contains(p.as_slice(), tol).unwrap();
        let vertex_only = witness_search(&p, &k, 0, 0, tol).map_err(|e| e.to_string())?;
        if in_k {
            inside += 1;
            check(
                vertex_only.is_none(),
                format!("witness returned for p in K: {p1}"),
            )?;
            let sampled = witness_search(&p, &k, 200, i as u64, tol).map_err(|e| e.to_string())?;
            check(
                sampled.is_none(),
                format!("sampled witness for p in K: {p1}"),
            )?;
        } else {
            outside += 1;
            let Some(t) = vertex_only else {
                return Err(format!("no witness for p = {p1}"));
            };
            let image = t.apply(p.as_slice()).unwrap();
            check(
                in_ps_k(&t, &k, tol).unwrap()
                    && !t.classify(tol).is_stochastic
                    && image.iter().any(|&x| x < -tol),
                format!("invalid witness for p = {p1}"),
            )?;
        }
    }
    Ok(format!(
        "{outside} points outside K with valid witnesses, {inside} inside with none"
    ))
}

/// Independent RK4 on `dV/dt = L(t) V` for `L = [[-x, y], [x, -y]]`.
fn rk4_two_level(
    x: &RateFn,
    y: &RateFn,
    s: f64,
    steps: usize,
    h: f64,
    mut visit: impl FnMut(f64, &Matrix2<f64>),
) {
    let l = |t: f64| Matrix2::new(-x.eval(t), y.eval(t), x.eval(t), -y.eval(t));
    let mut v = Matrix2::identity();
    for n in 0..steps {
        let t = s + n as f64 * h;
        let k1 = l(t) * v;
        let k2 = l(t + h / 2.0) * (v + k1 * (h / 2.0));
        let k3 = l(t + h / 2.0) * (v + k2 * (h / 2.0));
        let k4 = l(t + h) * (v + k3 * h);
        v += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
        visit(s + (n + 1) as f64 * h, &v);
    }
}

fn two_level_closed_form() -> Outcome {
    let cases = [
        ("constant", RateFn::constant(0.8), RateFn::constant(0.3)),
        (
            "exp_decay",
            RateFn::exp_decay(1.5, 0.7),
            RateFn::exp_decay(0.6, 0.2),
        ),
        (
            "sinusoid",
            RateFn::sinusoid(1.2, 0.9, 2.0),
            RateFn::sinusoid(0.7, 0.5, 3.0),
        ),
    ];
    let h = 1e-3;
    let mut summary = Vec::new();
    for (name, x, y) in &cases {
        let mut err: f64 = 0.0;
        let mut failure = None;
        rk4_two_level(x, y, 0.0, 5000, h, |t, v| match two_level_map(x, y, t) {
            Ok(sol) => {
                let m = sol.propagator.matrix.matrix();
                for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                    err = err.max((m[(i, j)] - v[(i, j)]).abs());
                }
            }
            Err(e) => failure = Some(e.to_string()),
        });
        for s in [0.5, 1.7, 3.2] {
            let steps = ((5.0 - s) / h).round() as usize;
            rk4_two_level(x, y, s, steps, h, |t, v| {
                if (((t - s) / h).round() as usize).is_multiple_of(50) {
                    match two_level_propagator(x, y, s, t) {
                        Ok(sol) => {
                            let m = sol.propagator.matrix.matrix();
                            for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                                err = err.max((m[(i, j)] - v[(i, j)]).abs());
                            }
                        }
                        Err(e) => failure = Some(e.to_string()),
                    }
                }
            });
        }
        if let Some(e) = failure {
            return Err(format!("{name}: {e}"));
        }
        check(err <= 1e-6, format!("{name}: sup error {err:e}"))?;
        summary.push(format!("{name} {err:.1e}"));
    }
    Ok(format!(
        "sup |closed form - RK4| on [0,5]: {}",
        summary.join(", ")
    ))
}

fn qubit_eigenvalues() -> Outcome {
    let mut err: f64 = 0.0;
    for gamma in [0.2, 0.5, 1.0] {
        let s = RateSchedule3::constant(gamma, gamma, gamma);
        let x0 = QubitState::new(Vector3::new(0.6, -0.48, 0.64), 1e-12).unwrap();
        for i in 1..=50 {
            let t = 0.1 * i as f64;
            let l = lambdas(&s, t).map_err(|e| e.to_string())?;
            let x =
                evolve_qubit(&s, &x0, t, (t / 1e-3).round() as usize).map_err(|e| e.to_string())?;
            for k in 0..3 {
                err = err.max((l[k + 1] - (-2.0 * gamma * t).exp()).abs());
                err = err.max((x[k] - l[k + 1] * x0.bloch()[k]).abs());
            }
        }
    }
    check(err <= 1e-6, format!("eigenvalue error {err:e}"))?;
    let h = Matrix4::from_fn(|a, b| HADAMARD[a][b]);
    check(h * h == Matrix4::identity() * 4.0, "H^2 != 4I")?;
    let p = [0.625, 0.125, -0.25, 0.5];
    check(
        lambdas_to_p(&p_to_lambdas(&p)) == p,
        "Hadamard round trip not exact",
    )?;
    Ok(format!(
        "max |lambda - exp(-2 gamma t)|, |ODE - lambda x0| = {err:.1e}; H^2 = 4I exactly"
    ))
}

fn random_rate(rng: &mut ChaCha8Rng) -> RateFn {
    let times: Vec<f64> = (0..6).map(|i| 0.6 * i as f64).collect();
    let values = (0..6).map(|_| rng.random_range(-0.25..1.5)).collect();
    RateFn::table(times, values).unwrap()
}

fn divisibility_classifier() -> Outcome {
    let grid: Vec<f64> = (0..=60).map(|i| 0.05 * i as f64).collect();
    let tol = 1e-12;
    let class =
        |s: &RateSchedule3, eps: f64| classify_divisibility(s, eps, &grid, tol).map(|r| r.class);
    check(
        class(&RateSchedule3::constant(1.0, 1.0, 1.0), 0.5) == Ok(DivisibilityClass::Cp),
        "(1,1,1) not CP",
    )?;
    check(
        class(&RateSchedule3::constant(1.0, 1.0, -0.5), 0.5) == Ok(DivisibilityClass::P),
        "(1,1,-1/2) not P",
    )?;
    check(
        class(&dip_schedule(), 0.5) == Ok(DivisibilityClass::KEps),
        "engineered schedule not K_eps",
    )?;

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut p_count = 0;
    for _ in 0..100 {
        let s = RateSchedule3::new(
            random_rate(&mut rng),
            random_rate(&mut rng),
            random_rate(&mut rng),
        );
        let r = classify_divisibility(&s, 0.0, &grid, tol).map_err(|e| e.to_string())?;
        check(r.k_eps.holds == r.p.holds, "eps = 0 verdict differs from P")?;
        p_count += r.p.holds as usize;
    }
    Ok(format!(
        "CP, P, K_eps(1/2) examples classified; eps=0 agrees with P on 100 schedules ({p_count} P)"
    ))
}

fn purity_entropy() -> Outcome {
    let mut err: f64 = 0.0;
    for eps in [0.0, 0.25, 0.5, 1.0] {
        let x = Vector3::new(0.36, 0.48, 0.8) * (1.0 - eps);
        let rho = QubitState::new(x, 1e-12).unwrap().density();
        err = err.max((purity(&rho) - purity_bound(eps)).abs());
        err = err.max((von_neumann_entropy(&rho) - entropy_bound(eps)).abs());
    }
    check(err <= 1e-12, format!("boundary error {err:e}"))?;
    let ln2 = std::f64::consts::LN_2;
    check(
        close(purity_bound(0.0), 1.0, 1e-15) && close(entropy_bound(0.0), 0.0, 1e-15),
        "eps=0 endpoint",
    )?;
    check(
        close(purity_bound(1.0), 0.5, 1e-15) && close(entropy_bound(1.0), ln2, 1e-15),
        "eps=1 endpoint",
    )?;
    Ok(format!(
        "max error {err:.1e}; endpoints (1, 0) and (1/2, ln 2)"
    ))
}

fn svd_criterion() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let dirs: Vec<Vector3<f64>> = (0..10_000)
        .map(|_| loop {
            let v = Vector3::from_fn(|_, _| rng.random_range(-1.0..1.0));
            let n = v.norm();
            if n > 1e-3 && n <= 1.0 {
                break v / n;
            }
        })
        .collect();
    let (mut contradictions, mut unresolved, mut verdicts) = (0, 0, [0usize; 2]);
    for _ in 0..200 {
        let a = Matrix3::from_fn(|_, _| rng.random_range(-1.0..1.0));
        let eps = rng.random_range(0.0..1.0);
        let target = rng.random_range(0.5..1.5);
        let a = a * (target / (a.singular_values().max() * (1.0 - eps)));
        let map = QubitMapAffine::unital(a);
        let verdict = unital_in_pp_k(&map, eps).map_err(|e| e.to_string())?;
        verdicts[verdict as usize] += 1;
        // States on the sphere |x| = 1 - eps plus a radial sample inside.
        let worst = dirs
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let r = if i % 10 == 0 {
                    (1.0 - eps) * (i as f64 / 10_000.0)
                } else {
                    1.0 - eps
                };
                map.apply_bloch(&(d * r)).norm()
            })
            .fold(0.0, f64::max);
        let sampled_positive = worst <= 1.0 + 1e-12;
        if verdict && !sampled_positive {
            contradictions += 1;
        } else if !verdict && sampled_positive {
            // Sampling may miss a violation only near the threshold.
            if target > 1.01 {
                contradictions += 1;
            } else {
                unresolved += 1;
            }
        }
    }
    check(
        contradictions == 0,
        format!("{contradictions} contradictions"),
    )?;
    Ok(format!(
        "200 maps x 10^4 samples: {} positive, {} not, 0 contradictions, {unresolved} within sampling resolution",
        verdicts[1], verdicts[0]
    ))
}

fn reduction_family_threshold() -> Outcome {
    let mut prev = 0.0;
    let mut err: f64 = 0.0;
    let mut quoted_empty = true;
    for i in 0..20 {
        let eps = 0.05 * i as f64;
        let r = reduction_threshold(eps, 1e-9).map_err(|e| e.to_string())?;
        check(r.mu_oracle >= prev, format!("not monotone at eps = {eps}"))?;
        prev = r.mu_oracle;
        err = err.max((r.mu_oracle - r.mu_closed_form).abs());
        quoted_empty &= r.quoted_interval_empty;
        if i == 0 {
            check(
                close(r.mu_oracle, 1.0, 1e-6),
                format!("mu_max(0) = {}", r.mu_oracle),
            )?;
        }
    }
    check(err <= 1e-6, format!("oracle vs 2/(2-eps): {err:e}"))?;
    Ok(format!(
        "monotone, mu_max(0) = 1, |bisection - 2/(2-eps)| <= {err:.1e}; quoted bound 1/(1+(1-eps)^2) gives an empty interval: {quoted_empty}"
    ))
}

fn lie_algebra() -> Outcome {
    let g2 = lie::standard_generators(2).unwrap();
    let r2 = lie::verify_relation_table(&g2, &lie::relation_table_n2(), 0.0)
        .map_err(|e| e.to_string())?;
    check(r2.mismatches == 0, "[L_a, L_b] != L_a - L_b")?;
    let dims = lie::derived_series_dims(&g2, 2, 1e-10).map_err(|e| e.to_string())?;
    check(
        dims.last() == Some(&0) && dims.len() <= 3,
        format!("n=2 derived series {dims:?}"),
    )?;

    let g3 = lie::standard_generators(3).unwrap();
    let r3 = lie::verify_relation_table(&g3, &lie::relation_table_n3(), 0.0)
        .map_err(|e| e.to_string())?;
    for c in r3.checks.iter().filter(|c| !c.confirmed) {
        println!(
            "    mismatch [L{}, L{}]: claimed {:?}, computed {:?}",
            c.i + 1,
            c.j + 1,
            c.claimed,
            c.computed
        );
    }
    check(
        r3.checks.len() == 15 && r3.mismatches == 0,
        format!("{} of 15 relations mismatch", r3.mismatches),
    )?;

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let random = |rng: &mut ChaCha8Rng| {
        let coeffs: Vec<f64> = (0..6).map(|_| rng.random_range(-2.0..2.0)).collect();
        LieElement::combination(&g3, &coeffs).unwrap()
    };
    let (mut jacobi, mut colsum, mut det_err): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for _ in 0..1000 {
        let (x, y, z) = (random(&mut rng), random(&mut rng), random(&mut rng));
        let br = |a: &LieElement, b: &LieElement| lie::commutator(a, b).unwrap();
        let total = br(&x, &br(&y, &z)).matrix()
            + br(&y, &br(&z, &x)).matrix()
            + br(&z, &br(&x, &y)).matrix();
        jacobi = jacobi.max(total.amax());
        let t = rng.random_range(-1.0..1.0);
        let e = lie::exp_generator(&x, t).map_err(|e| e.to_string())?;
        for c in e.matrix().column_iter() {
            colsum = colsum.max((c.sum() - 1.0).abs());
        }
        det_err = det_err.max((e.matrix().determinant() - (t * x.matrix().trace()).exp()).abs());
    }
    check(jacobi <= 1e-12, format!("Jacobi residual {jacobi:e}"))?;
    check(
        colsum <= 1e-10 && det_err <= 1e-10,
        format!("exp: column sums {colsum:e}, det {det_err:e}"),
    )?;
    Ok(format!(
        "n=2 relation exact, derived dims {dims:?}; 15/15 n=3 relations confirmed; Jacobi {jacobi:.1e}; exp column sums {colsum:.1e}, det {det_err:.1e}"
    ))
}

fn run_cli(dir: &Path, args: &[&str]) -> Result<(), String> {
    let status = Command::new(env!("CARGO_BIN_EXE_pseudostochastic"))
        .arg("--out")
        .arg(dir)
        .args(args)
        .status()
        .map_err(|e| e.to_string())?;
    check(status.success(), format!("{args:?} exited with {status}"))
}

fn snapshot(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.is_file())
        .map(|p| {
            (
                p.file_name().unwrap().to_string_lossy().into_owned(),
                std::fs::read(&p).unwrap(),
            )
        })
        .collect();
    files.sort();
    files
}

fn cli_determinism() -> Outcome {
    let inputs = tempfile::tempdir().map_err(|e| e.to_string())?;
    let write = |name: &str, s: &str| std::fs::write(inputs.path().join(name), s).unwrap();
    write("region.json", "[[0.6,0.2,0.2],[0.2,0.6,0.2],[0.2,0.2,0.6]]");
    write(
        "schedule.json",
        r#"{"kind":"two_level","x":{"kind":"constant","c":1.0},"y":{"kind":"sinusoid","offset":0.2,"amplitude":1.0,"frequency":2.0}}"#,
    );
    write(
        "rates.json",
        r#"{"gamma":[{"kind":"constant","c":0.5},{"kind":"exp_decay","c":1.0,"rate":0.3},{"kind":"sinusoid","offset":0.0,"amplitude":1.0,"frequency":1.0}]}"#,
    );
    write(
        "config.json",
        r#"{"seed":42,"tol":1e-9,"grid":{"t_max":2.0,"n_points":21}}"#,
    );
    let path = |n: &str| inputs.path().join(n).to_string_lossy().into_owned();
    let (region, schedule, rates, config) = (
        path("region.json"),
        path("schedule.json"),
        path("rates.json"),
        path("config.json"),
    );
    let runs: Vec<Vec<&str>> = vec![
        vec![
            "--config", &config, "matrix", "witness", "--p", "1,0,0", "--region", &region,
            "--budget", "500",
        ],
        vec![
            "--config",
            &config,
            "diamond",
            "--eps",
            "0.3333333333333333",
        ],
        vec![
            "--config",
            &config,
            "classical",
            "--input",
            &schedule,
            "--eps",
            "0.25",
            "--max-step",
            "0.01",
        ],
        vec![
            "--config", &config, "qubit", "--input", &rates, "--eps", "0.5",
        ],
        vec!["--config", &config, "lie", "--n", "3"],
    ];
    let mut outputs = Vec::new();
    for _ in 0..2 {
        let out = tempfile::tempdir().map_err(|e| e.to_string())?;
        for args in &runs {
            run_cli(out.path(), args)?;
        }
        outputs.push(snapshot(out.path()));
    }
    check(
        outputs[0].len() >= 10,
        format!("only {} output files", outputs[0].len()),
    )?;
    check(outputs[0] == outputs[1], "outputs differ between runs")?;
    let csv_ok = outputs[0]
        .iter()
        .filter(|(n, _)| n.ends_with(".csv"))
        .all(|(_, b)| !b.contains(&b'\r') && b.ends_with(b"\n"));
    check(csv_ok, "CSV line endings")?;
    Ok(format!(
        "{} files byte-identical across two runs",
        outputs[0].len()
    ))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("diamond geometry", diamond_geometry),
        ("determinant identity", determinant_identity),
        ("semigroup and nesting", nesting),
        ("witness soundness and completeness", witness_grid),
        ("two-level closed form vs ODE", two_level_closed_form),
        ("qubit eigenvalues", qubit_eigenvalues),
        ("divisibility classifier", divisibility_classifier),
        ("purity and entropy boundary", purity_entropy),
        ("SVD criterion", svd_criterion),
        ("reduction-family threshold", reduction_family_threshold),
        ("Lie algebra", lie_algebra),
        ("CLI determinism", cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({secs:.2}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.2}s): {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
