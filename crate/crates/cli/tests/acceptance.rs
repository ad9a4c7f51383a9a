//! Acceptance gate. Each criterion prints one PASS/FAIL line with its runtime
//! and budget; the process exits non-zero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use choi_cli::commands::{example5_instance, explicit_choi_witness};
use choi_core::criteria::{boundary_witness_determinant, Criteria};
use choi_core::linalg::{is_psd, partial_transpose, ComplexMatrix, ComplexVector, HermitianMatrix, C64};
use choi_core::maps::{
    apply_map, averaged_params, choi_matrix, cp_check, scaled_ckl_matrix, shift_average, CklParams,
    CoefficientMatrix, ScalingVector,
};
use choi_core::search::{
    block_positivity_value, find_positivity_violation, gap_decomposition, indecomposability_probe,
    positivity_gap, verify_counterexample, NonnegativeVector, SearchConfig,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn core<T>(r: choi_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_coefficients(r: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> CoefficientMatrix {
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..n).map(|_| r.gen_range(lo..hi)).collect())
        .collect();
    CoefficientMatrix::new(&rows).unwrap()
}

fn random_hermitian(r: &mut ChaCha8Rng, n: usize) -> HermitianMatrix {
    let mut m = ComplexMatrix::zeros(n);
    for i in 0..n {
        m[(i, i)] = C64::new(r.gen_range(-1.0..1.0), 0.0);
        for j in i + 1..n {
            let z = C64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    HermitianMatrix::new(m).unwrap()
}

fn example5_reproduction() -> Outcome {
    let (a, x) = example5_instance();
    let check = core(verify_counterexample(&a, &x))?;
    ensure(check.input_psd, || {
        format!("X not PSD (min eigenvalue {})", check.input_min_eigenvalue)
    })?;
    ensure((check.det + 1.0).abs() < 1e-9, || format!("det = {}", check.det))?;
    ensure(!check.psd, || "image reported PSD".into())?;
    let cert =
        core(find_positivity_violation(&a, &SearchConfig::default()))?.ok_or("no violation certificate")?;
    ensure(cert.gap < -1e-9, || format!("gap = {}", cert.gap))?;
    core(cert.verify(&a, 1e-9))?;
    Ok(format!("det = {:.12}, gap = {:.6e}", check.det, cert.gap))
}

fn boundary_identity() -> Outcome {
    let mut r = rng(1002);
    let (mut done, mut equal_cases, mut worst) = (0, 0, 0.0f64);
    while done < 200 {
        let d: [f64; 3] = if done % 10 == 0 {
            [r.gen_range(0.2..2.0); 3]
        } else {
            [0, 1, 2].map(|_| r.gen_range(0.2..3.0))
        };
        let a_geo = (d[0] * d[1] * d[2]).cbrt();
        let b = 2.0 - a_geo;
        if b < 0.0 {
            continue;
        }
        done += 1;
        let a = core(CoefficientMatrix::from_named(d, [b; 3], [0.0; 3]))?;
        let a_mean = (d[0] + d[1] + d[2]) / 3.0;
        let formula = 6.0 * (a_geo - a_mean) / a_geo;
        let numeric = core(boundary_witness_determinant(&a))?;
        let err = (formula - numeric).abs();
        worst = worst.max(err / formula.abs().max(1.0));
        ensure(err <= 1e-8 * formula.abs().max(1.0), || {
            format!("{d:?}: formula {formula} vs numeric {numeric}")
        })?;
        ensure(formula <= 1e-15, || format!("{d:?}: D = {formula} > 0"))?;
        let equal = d.iter().all(|&x| (x - d[0]).abs() <= 1e-9);
        equal_cases += usize::from(equal);
        ensure(equal == (formula.abs() <= 1e-9), || {
            format!("{d:?}: D = {formula}, equal = {equal}")
        })?;
    }
    Ok(format!(
        "200 instances ({equal_cases} with equal a_i), worst relative error {worst:.2e}"
    ))
}

fn choi_witness() -> Outcome {
    let a = core(CoefficientMatrix::new(&[
        vec![1.0, 0.0, 1.0],
        vec![1.0, 1.0, 0.0],
        vec![0.0, 1.0, 1.0],
    ]))?;
    let w = core(indecomposability_probe(&a, &SearchConfig::default()))?.ok_or("no PPT witness")?;
    core(w.verify(&a, 1e-9))?;
    ensure(w.normalized_value <= -1.0 / 7.0 + 1e-6, || {
        format!("normalized value {}", w.normalized_value)
    })?;

    let rho = explicit_choi_witness().assemble();
    let value = rho.as_matrix().trace_product(choi_matrix(&a).as_matrix());
    ensure((value.re + 2.25).abs() < 1e-10 && value.im.abs() < 1e-10, || {
        format!("Tr(rho C) = {value}")
    })?;
    let rho_psd = core(is_psd(&rho, 1e-12))?;
    let pt_psd = core(is_psd(&core(partial_transpose(&rho, 3))?, 1e-12))?;
    ensure(rho_psd.psd && pt_psd.psd, || {
        format!(
            "rho min {}, rho^Gamma min {}",
            rho_psd.min_eigenvalue, pt_psd.min_eigenvalue
        )
    })?;
    Ok(format!(
        "probe normalized {:.6}, explicit Tr(rho C) = {:.12}",
        w.normalized_value, value.re
    ))
}

fn n2_oracle() -> Outcome {
    let mut r = rng(1004);
    let cfg = SearchConfig::default();
    let (mut compared, mut skipped) = (0, 0);
    for _ in 0..500 {
        let a = random_coefficients(&mut r, 2, 0.0, 2.0);
        let margin = (a.get(0, 0) * a.get(1, 1)).sqrt() + (a.get(0, 1) * a.get(1, 0)).sqrt() - 1.0;
        if margin.abs() < 1e-3 {
            skipped += 1;
            continue;
        }
        let found = core(find_positivity_violation(&a, &cfg))?.is_some();
        ensure(found == (margin < 0.0), || {
            format!("{:?}: margin {margin}, violation found {found}", a.rows())
        })?;
        compared += 1;
    }
    Ok(format!("{compared} agree, {skipped} in the boundary band"))
}

fn ckl_oracle() -> Outcome {
    let crit = Criteria::default();
    let cfg = SearchConfig::default();
    let grid: Vec<f64> = (0..=12).map(|k| 0.25 * k as f64).collect();
    let (mut compared, mut skipped) = (0, 0);
    for &a in &grid {
        for &b in &grid {
            for &c in &grid {
                let params = core(CklParams::new(a, b, c))?;
                let verdict = crit.ckl_is_positive(&params);
                let margin = verdict.margin.unwrap_or(0.0);
                if margin.abs() < 1e-3 {
                    skipped += 1;
                    continue;
                }
                let found = core(find_positivity_violation(&params.matrix(), &cfg))?.is_some();
                ensure(found == verdict.is_violated(), || {
                    format!("(a,b,c) = ({a},{b},{c}): margin {margin}, violation found {found}")
                })?;
                compared += 1;
            }
        }
    }
    Ok(format!(
        "{compared} grid points agree, {skipped} in the boundary band"
    ))
}

fn sufficiency_soundness() -> Outcome {
    let crit = Criteria::default();
    let cfg = SearchConfig::default();
    let mut r = rng(1006);
    let mut sufficient = 0;
    while sufficient < 200 {
        let a = random_coefficients(&mut r, 3, 0.0, 3.0);
        if !crit.pairwise_sufficient(&a).iter().all(|v| v.is_satisfied()) {
            continue;
        }
        sufficient += 1;
        ensure(core(find_positivity_violation(&a, &cfg))?.is_none(), || {
            format!("violation on {:?}", a.rows())
        })?;
        ensure(core(indecomposability_probe(&a, &cfg))?.is_none(), || {
            format!("PPT witness on {:?}", a.rows())
        })?;
    }
    let mut violating = 0;
    while violating < 200 {
        let a = random_coefficients(&mut r, 3, 0.0, 1.5);
        if !crit.pairwise_necessary(&a).iter().any(|v| v.is_violated()) {
            continue;
        }
        violating += 1;
        let cert = core(find_positivity_violation(&a, &cfg))?
            .ok_or_else(|| format!("no violation on {:?}", a.rows()))?;
        core(cert.verify(&a, 1e-9))?;
    }
    Ok("200 sufficient: no certificates; 200 violating: all certified".into())
}

fn identity_suite() -> Outcome {
    let mut r = rng(1007);
    let mut cp_compared = 0;
    for _ in 0..500 {
        let n = r.gen_range(2..5);
        let a = random_coefficients(&mut r, n, 0.0, 3.0);
        let reduced = core(cp_check(&a, 1e-9))?;
        if reduced.min_eigenvalue.abs() < 1e-6 {
            continue;
        }
        let full = core(is_psd(&choi_matrix(&a), 1e-9))?;
        ensure(reduced.psd == full.psd, || {
            format!("cp mismatch on {:?}", a.rows())
        })?;
        cp_compared += 1;
    }

    for _ in 0..1000 {
        let n = r.gen_range(2..5);
        let a = random_coefficients(&mut r, n, 0.0, 3.0);
        let p = core(NonnegativeVector::new(
            (0..n).map(|_| r.gen_range(0.0..1.0)).collect(),
        ))?;
        let q = core(NonnegativeVector::new(
            (0..n).map(|_| r.gen_range(0.0..1.0)).collect(),
        ))?;
        let gap = core(positivity_gap(&a, &p, &q))?;
        let d = core(gap_decomposition(&a, &p, &q))?;
        ensure(
            (d.local_total - gap).abs() < 1e-10 && (d.split_total - gap).abs() < 1e-10,
            || format!("decomposition {} / {} vs gap {gap}", d.local_total, d.split_total),
        )?;
    }

    for _ in 0..200 {
        let a = random_coefficients(&mut r, 3, 0.0, 3.0);
        let x = random_hermitian(&mut r, 3);
        let avg = core(shift_average(&a, &x))?;
        let ckl = core(apply_map(&core(averaged_params(&a))?.matrix(), &x))?;
        let diff = avg.as_matrix().max_abs_diff(ckl.as_matrix());
        ensure(diff < 1e-12, || format!("shift average differs by {diff}"))?;
    }

    for _ in 0..200 {
        let params = core(CklParams::new(
            r.gen_range(0.0..3.0),
            r.gen_range(0.0..3.0),
            r.gen_range(0.0..3.0),
        ))?;
        let p = [0, 1, 2].map(|_| r.gen_range(0.2..5.0));
        let a = scaled_ckl_matrix(&params, &core(ScalingVector::new(p))?);
        let (b, c) = (core(a.b3())?, core(a.c3())?);
        let bc = params.b * params.c;
        for i in 0..3 {
            let err = (b[i] * c[(i + 1) % 3] - bc).abs();
            ensure(err <= 1e-12 * bc.max(1.0), || format!("b_i c_(i+1) off by {err}"))?;
        }
        let x = random_hermitian(&mut r, 3);
        let half: Vec<f64> = p.iter().map(|v| v.sqrt()).collect();
        let inv_half: Vec<f64> = half.iter().map(|v| 1.0 / v).collect();
        let (vh, vih) = (
            ComplexMatrix::from_diagonal(&half),
            ComplexMatrix::from_diagonal(&inv_half),
        );
        let inner = core(HermitianMatrix::new(vh.matmul(x.as_matrix()).matmul(&vh)))?;
        let conj = vih
            .matmul(core(apply_map(&params.matrix(), &inner))?.as_matrix())
            .matmul(&vih);
        let direct = core(apply_map(&a, &x))?;
        let scale = conj.rows().iter().flatten().map(|z| z.norm()).fold(1.0, f64::max);
        let diff = direct.as_matrix().max_abs_diff(&conj);
        ensure(diff <= 1e-12 * scale, || format!("conjugation differs by {diff}"))?;
    }

    for _ in 0..100 {
        let n = r.gen_range(2..5);
        let m = random_hermitian(&mut r, n * n);
        let back = core(partial_transpose(&core(partial_transpose(&m, n))?, n))?;
        ensure(back == m, || "partial transpose is not an involution".into())?;
    }
    Ok(format!(
        "cp compared on {cp_compared}/500, 1000 gap, 200 average, 200 scaling, 100 transpose"
    ))
}

fn witness_vector_values() -> Outcome {
    let mut r = rng(1008);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let a = [0, 1, 2].map(|_| r.gen_range(1.0..3.0));
        let (b, c) = (r.gen_range(0.01..2.0), r.gen_range(0.01..2.0));
        let m = core(CoefficientMatrix::new(&[
            vec![a[0], b, c],
            vec![c, a[1], b],
            vec![b, c, a[2]],
        ]))?;
        let xi = core(ComplexVector::from_real(&[
            (a[1] * a[2] / a[0]).powf(1.0 / 12.0),
            (a[0] * a[2] / a[1]).powf(1.0 / 12.0),
            (a[0] * a[1] / a[2]).powf(1.0 / 12.0),
        ]))?;
        let value = core(block_positivity_value(&choi_matrix(&m), &xi, &xi))?;
        let a_geo = (a[0] * a[1] * a[2]).cbrt();
        let expected = a.iter().map(|x| x.cbrt()).sum::<f64>() * (a_geo + b + c - 2.0);
        worst = worst.max((value - expected).abs());
        ensure((value - expected).abs() < 1e-9, || {
            format!("{a:?}, b={b}, c={c}: {value} vs {expected}")
        })?;
    }
    Ok(format!("100 instances, worst error {worst:.2e}"))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("ex5.json");
    std::fs::write(&path, r#"{"n": 3, "A": [[0.5,1,0],[0,1,1],[1,0,2]]}"#).map_err(|e| e.to_string())?;
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_choimap"))
            .args(["analyze", "-i", path.to_str().unwrap(), "--seed", "42"])
            .env("RAYON_NUM_THREADS", threads)
            .output()
            .map(|o| o.stdout)
            .map_err(|e| e.to_string())
    };
    let reference = run("1")?;
    ensure(!reference.is_empty(), || "empty report".into())?;
    let concurrent: Vec<Result<Vec<u8>, String>> = std::thread::scope(|s| {
        let handles: Vec<_> = ["2", "4", "8", "4", "8"]
            .iter()
            .map(|t| s.spawn(move || run(t)))
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    for out in concurrent {
        ensure(out? == reference, || "report bytes differ between runs".into())?;
    }
    Ok(format!(
        "6 runs on 1-8 threads, {} identical bytes",
        reference.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (
            "counterexample reproduction",
            Duration::from_secs(1),
            example5_reproduction,
        ),
        (
            "boundary determinant identity",
            Duration::from_secs(5),
            boundary_identity,
        ),
        ("Choi map PPT witness", Duration::from_secs(10), choi_witness),
        ("n=2 oracle equivalence", Duration::from_secs(30), n2_oracle),
        ("CKL oracle equivalence", Duration::from_secs(120), ckl_oracle),
        (
            "sufficiency soundness",
            Duration::from_secs(120),
            sufficiency_soundness,
        ),
        ("identity suite", Duration::from_secs(60), identity_suite),
        (
            "cyclic witness vector values",
            Duration::from_secs(5),
            witness_vector_values,
        ),
        ("byte-identical reports", Duration::from_secs(60), determinism),
    ];
    let mut failed = 0;
    for (k, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let verdict = match &outcome {
            Ok(_) if elapsed > *budget => Err(format!("over budget ({elapsed:.2?} > {budget:?})")),
            other => other.clone(),
        };
        match verdict {
            Ok(detail) => println!("PASS {}. {name} [{elapsed:.2?} / {budget:?}]: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {}. {name} [{elapsed:.2?} / {budget:?}]: {detail}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
