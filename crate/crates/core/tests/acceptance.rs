//! Acceptance suite: twelve numbered criteria covering the operator
//! calculus, the basis oracles, kernel positivity, Blaschke factors, the
//! interpolation ideal and the decay law. One line per criterion is
//! printed; the test fails if any criterion fails.

mod common;

use common::{random_closed_path, random_coefficient_poly};
use dalattice::basis::{
    basis_poly, basis_poly_recursive, basis_values_at, CoefficientPoly,
};
use dalattice::exact::AlphaSign;
use dalattice::hardy::{
    evaluate_at_lattice, inner_product, inner_product_exact, kernel_eval, kernel_gram,
    psd_check, t_transform, HardyElement,
};
use dalattice::schur::{
    blaschke_lambda, blaschke_pm, elementary_schur, ideal_membership, laurent_defect,
    multiplier_apply, polynomial_generator, schur_check, schur_kernel_gram,
    InnerCertificate, InterpolationProblem, SchurCandidate,
};
use dalattice::{GaussianRational, LatticeFunction, LatticePoint, Window};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = fn() -> Result<(), String>;

fn gr(re: i64, im: i64) -> GaussianRational {
    GaussianRational::from_integers(re, im)
}

fn err<T>(msg: String) -> Result<T, String> {
    Err(msg)
}

/// 1. Operator identities: dx(Zf) = f and Z(dx f) = f - f(0), exactly,
/// for 50 random discrete analytic polynomials on a 12x12 window.
fn c01_operator_identities() -> Result<(), String> {
    let w = Window::new(-2, 9, -6, 5).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for trial in 0..50 {
        let p = random_coefficient_poly(&mut rng, 10);
        let f = p.to_lattice_function(w);
        let zf = f.z_operator().map_err(|e| e.to_string())?;
        let dx_zf = zf.delta_x().map_err(|e| e.to_string())?;
        for (pt, v) in dx_zf.values() {
            if v != f.get(pt).unwrap() {
                return err(format!("trial {trial}: dx(Zf) != f at {pt}"));
            }
        }
        let dxf = f.delta_x().map_err(|e| e.to_string())?;
        let z_dxf = dxf.z_operator().map_err(|e| e.to_string())?;
        let f0 = p.coeff(0);
        for (pt, v) in z_dxf.values() {
            let expect = f.get(pt).unwrap() - &f0;
            if v != &expect {
                return err(format!("trial {trial}: Z(dx f) != f - f(0) at {pt}"));
            }
        }
    }
    Ok(())
}

/// 2. Basis oracle equivalence: symbolic basis_poly(n) equals the lattice
/// recursion Z^n 1 exactly on an 8x8 window for all n <= 20.
fn c02_basis_oracles() -> Result<(), String> {
    let w = Window::new(-3, 4, -4, 3).map_err(|e| e.to_string())?;
    for n in 0..=20u32 {
        let rec = basis_poly_recursive(n, w).map_err(|e| e.to_string())?;
        let sym = basis_poly(n);
        for (pt, v) in rec.values() {
            if v != &sym.eval(pt) {
                return err(format!("n = {n}: oracles disagree at {pt}"));
            }
        }
    }
    Ok(())
}

/// 3. Analyticity calibration: z and z^2 pass, z^3 fails with the explicit
/// unit-square witness 2i vs i at 0, and z^(n) passes for n <= 20.
fn c03_analyticity_calibration() -> Result<(), String> {
    let w = Window::new(-3, 4, -4, 3).map_err(|e| e.to_string())?;
    let z = LatticeFunction::from_fn(w, |p| p.to_gaussian());
    let z2 = LatticeFunction::from_fn(w, |p| {
        let v = p.to_gaussian();
        &v * &v
    });
    let z3 = LatticeFunction::from_fn(w, |p| {
        let v = p.to_gaussian();
        &(&v * &v) * &v
    });
    if !z.is_discrete_analytic().map_err(|e| e.to_string())?.analytic {
        return err("z flagged as non-analytic".into());
    }
    if !z2.is_discrete_analytic().map_err(|e| e.to_string())?.analytic {
        return err("z^2 flagged as non-analytic".into());
    }
    let report = z3.is_discrete_analytic().map_err(|e| e.to_string())?;
    if report.analytic || !report.violations.contains(&LatticePoint::ORIGIN) {
        return err("z^3 must fail at the square based at 0".into());
    }
    // explicit witness: LHS = ((1+i)^3 - 0)/(1+i) = 2i, RHS = (1 - i^3)/(1-i) = i
    let cube = |p: LatticePoint| {
        let v = p.to_gaussian();
        &(&v * &v) * &v
    };
    let lhs = (cube(LatticePoint::new(1, 1)) - cube(LatticePoint::ORIGIN))
        .checked_div(&gr(1, 1))
        .map_err(|e| e.to_string())?;
    let rhs = (cube(LatticePoint::new(1, 0)) - cube(LatticePoint::new(0, 1)))
        .checked_div(&gr(1, -1))
        .map_err(|e| e.to_string())?;
    if lhs != gr(0, 2) || rhs != gr(0, 1) {
        return err(format!("witness mismatch: LHS = {lhs}, RHS = {rhs}"));
    }
    for n in 0..=20 {
        let f = CoefficientPoly::basis_element(n).to_lattice_function(w);
        if !f.is_discrete_analytic().map_err(|e| e.to_string())?.analytic {
            return err(format!("z^({n}) flagged as non-analytic"));
        }
    }
    Ok(())
}

/// 4. Closed-path integrals of discrete analytic polynomials vanish exactly
/// over 100 random closed paths of length <= 40.
fn c04_closed_paths() -> Result<(), String> {
    let w = Window::new(-6, 6, -6, 6).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    for trial in 0..100 {
        let f = random_coefficient_poly(&mut rng, 8).to_lattice_function(w);
        let path = random_closed_path(&mut rng, w, 12);
        let steps = path.vertices().len() - 1;
        if steps > 40 {
            return err(format!("trial {trial}: generated path length {steps} > 40"));
        }
        let v = f.discrete_integral(&path).map_err(|e| e.to_string())?;
        if !v.is_zero() {
            return err(format!("trial {trial}: closed integral = {v}, not 0"));
        }
    }
    Ok(())
}

/// 5. Unitarity of the coefficient map: the Hardy inner product equals the
/// coefficient inner product of the disk images, exactly; orthonormality of
/// the basis for m, n <= 15.
fn c05_unitarity() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    for trial in 0..50 {
        let f = random_coefficient_poly(&mut rng, 10);
        let g = random_coefficient_poly(&mut rng, 10);
        let lhs = inner_product_exact(&f, &g);
        let tf = t_transform(&f);
        let tg = t_transform(&g);
        let mut rhs = GaussianRational::zero();
        for k in 0..tf.coeffs().len().max(tg.coeffs().len()) {
            rhs += &(&tf.coeff(k) * &tg.coeff(k).conj());
        }
        if lhs != rhs {
            return err(format!("trial {trial}: Parseval identity broken"));
        }
    }
    for m in 0..=15 {
        for n in 0..=15 {
            let v = inner_product_exact(
                &CoefficientPoly::basis_element(m),
                &CoefficientPoly::basis_element(n),
            );
            let expect = if m == n { gr(1, 0) } else { gr(0, 0) };
            if v != expect {
                return err(format!("<z^({m}), z^({n})> = {v}"));
            }
        }
    }
    Ok(())
}

/// 6. Kernel values and positivity: K_0 = 1 within 1e-12 certified, K_1(1)
/// = 2 within certified error, and random Gram matrices at N = 64 have
/// minimum eigenvalue >= -1e-9 * trace.
fn c06_kernel_positivity() -> Result<(), String> {
    let sample: [(i64, i64); 8] = [
        (0, 0), (1, 0), (0, 1), (2, 1), (3, -2), (0, 5), (5, 0), (4, 4),
    ];
    for (x, y) in sample {
        let z = LatticePoint::new(x, y);
        let b = kernel_eval(LatticePoint::ORIGIN, z, 128).map_err(|e| e.to_string())?;
        let dev = (b.value - num_complex::Complex64::new(1.0, 0.0)).norm();
        if dev > b.abs_error || b.abs_error > 1e-12 {
            return err(format!(
                "K_0({z}) = {} +/- {}, expected 1 within 1e-12",
                b.value, b.abs_error
            ));
        }
    }
    let one = LatticePoint::new(1, 0);
    let b = kernel_eval(one, one, 128).map_err(|e| e.to_string())?;
    if (b.value.re - 2.0).abs() > b.abs_error || b.value.im.abs() > b.abs_error {
        return err(format!("K_1(1) = {} +/- {}, expected 2", b.value, b.abs_error));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    for trial in 0..20 {
        let size = rng.gen_range(1..=6);
        let pts: Vec<LatticePoint> = (0..size)
            .map(|_| LatticePoint::new(rng.gen_range(0..=5), rng.gen_range(-5..=5)))
            .collect();
        let g = kernel_gram(&pts, 64).map_err(|e| e.to_string())?;
        let report = psd_check(&g, 1e-9).map_err(|e| e.to_string())?;
        let floor = -1e-9 * g.trace_re();
        if report.min_eigenvalue < floor {
            return err(format!(
                "trial {trial}: min eigenvalue {} below {floor}",
                report.min_eigenvalue
            ));
        }
    }
    Ok(())
}

/// 7. Inner exactness of the Blaschke factors: the boundary Laurent
/// identity holds coefficientwise over Q(i), and the boundary modulus stays
/// within 1e-12 of 1 at 4096 samples.
fn c07_blaschke_inner() -> Result<(), String> {
    for sign in [AlphaSign::Plus, AlphaSign::Minus] {
        let b = blaschke_pm(sign);
        if laurent_defect(&b).iter().any(|c| !c.is_zero()) {
            return err(format!("{sign:?}: Laurent defect is nonzero"));
        }
        let rf = b.element().as_rational_function();
        for j in 0..4096usize {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / 4096.0;
            let t = num_complex::Complex64::from_polar(1.0, theta);
            let m = rf.eval_f64(t).map_err(|e| e.to_string())?.norm();
            if (m - 1.0).abs() > 1e-12 {
                return err(format!("{sign:?}: |B(e^it)| = {m} at theta = {theta}"));
            }
        }
    }
    Ok(())
}

/// 8. B_lambda vanishing: the polynomial generator is exactly zero on
/// R_lambda, the Blaschke generator evaluates there within its certified
/// bound at N = 96, and the T-image degree is Re(l) + |Im(l)| + 1.
fn c08_blaschke_lambda() -> Result<(), String> {
    for x in 0..=3i64 {
        for y in -3..=3i64 {
            let lambda = LatticePoint::new(x, y);
            let prob = InterpolationProblem::new(lambda).map_err(|e| e.to_string())?;
            let gen = polynomial_generator(&prob);
            for &p in prob.rectangle() {
                if !gen.eval_at(p).is_zero() {
                    return err(format!("lambda = {lambda}: generator nonzero at {p}"));
                }
            }
            let b = blaschke_lambda(&prob);
            let expected = (x + y.abs() + 1) as usize;
            let got = b.element().num().degree().unwrap_or(0);
            if got != expected {
                return err(format!(
                    "lambda = {lambda}: T-image degree {got}, expected {expected}"
                ));
            }
            let h = HardyElement::Rational(b.element().clone());
            for &p in prob.rectangle() {
                let v = evaluate_at_lattice(&h, p, 96).map_err(|e| e.to_string())?;
                if v.value.norm() > v.abs_error {
                    return err(format!(
                        "lambda = {lambda}: |B_lambda({p})| = {} above bound {}",
                        v.value.norm(),
                        v.abs_error
                    ));
                }
            }
        }
    }
    Ok(())
}

/// 9. Principal ideal: divisibility-based membership agrees with the
/// brute-force exact-vanishing oracle on R_lambda over 200 random pairs.
fn c09_principal_ideal() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(909);
    let mut members = 0usize;
    for trial in 0..200 {
        let lambda = LatticePoint::new(rng.gen_range(0..=2), rng.gen_range(-2..=2));
        let prob = InterpolationProblem::new(lambda).map_err(|e| e.to_string())?;
        let d = prob.generator_degree();
        let p = if rng.gen_bool(0.5) && d <= 8 {
            // construct a member: generator (x) random factor
            let q = random_coefficient_poly(&mut rng, 8 - d);
            polynomial_generator(&prob).convolve(&q)
        } else {
            random_coefficient_poly(&mut rng, 8)
        };
        let by_division = ideal_membership(&p, &prob).map_err(|e| e.to_string())?;
        let by_vanishing = prob.rectangle().iter().all(|&z| p.eval_at(z).is_zero());
        if by_division.is_some() != by_vanishing {
            return err(format!(
                "trial {trial}: membership {} but vanishing oracle {}",
                by_division.is_some(),
                by_vanishing
            ));
        }
        if let Some(q) = by_division {
            members += 1;
            if polynomial_generator(&prob).convolve(&q) != p {
                return err(format!("trial {trial}: quotient does not reconstruct p"));
            }
        }
    }
    if members < 40 {
        return err(format!("only {members} member cases exercised"));
    }
    Ok(())
}

/// 10. Schur certification: the elementary candidates are certified, the
/// annihilation identity holds exactly, the constant 2 is refuted with a
/// boundary witness, and the Schur kernel Gram matrices are PSD within
/// 1e-8 * trace.
fn c10_schur_certification() -> Result<(), String> {
    let alphas = [
        GaussianRational::from_integers(1, 0)
            .checked_div(&gr(2, 0))
            .unwrap(),
        GaussianRational::from_integers(0, 1)
            .checked_div(&gr(2, 0))
            .unwrap(),
        GaussianRational::from_integers(-1, 0)
            .checked_div(&gr(3, 0))
            .unwrap(),
    ];
    let mut certified = Vec::new();
    for a in &alphas {
        let s = elementary_schur(a).map_err(|e| e.to_string())?;
        let cert = schur_check(&s).map_err(|e| e.to_string())?;
        if !cert.is_schur() {
            return err(format!("alpha = {a}: not certified ({cert:?})"));
        }
        // s (x) (1 - alpha z) = (1 - |alpha|) * 1, exactly
        let f = CoefficientPoly::new(vec![GaussianRational::one(), -a.clone()]);
        let sf = multiplier_apply(&s, &HardyElement::Polynomial(f), 8)
            .map_err(|e| e.to_string())?;
        let coeffs = sf.exact_prefix(8).ok_or("product lost exactness")?;
        let one_minus = s.element().num().coeff(0);
        if coeffs[0] != one_minus || coeffs[1..].iter().any(|c| !c.is_zero()) {
            return err(format!("alpha = {a}: annihilation identity broken"));
        }
        certified.push(s);
    }
    let two = SchurCandidate::from_t_image(
        dalattice::poly::Poly::constant(gr(2, 0)),
        dalattice::poly::Poly::one(),
    )
    .map_err(|e| e.to_string())?;
    match schur_check(&two).map_err(|e| e.to_string())? {
        InnerCertificate::NotSchur { witness, modulus } => {
            if (witness.norm() - 1.0).abs() > 1e-9 || (modulus - 2.0).abs() > 1e-9 {
                return err(format!(
                    "constant 2: witness {witness} modulus {modulus} implausible"
                ));
            }
        }
        other => return err(format!("constant 2 not refuted: {other:?}")),
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1010);
    for s in &certified {
        for _ in 0..5 {
            let size = rng.gen_range(1..=4);
            let pts: Vec<LatticePoint> = (0..size)
                .map(|_| LatticePoint::new(rng.gen_range(0..=3), rng.gen_range(-3..=3)))
                .collect();
            let g = schur_kernel_gram(s, &pts, 48).map_err(|e| e.to_string())?;
            let report = psd_check(&g, 1e-8).map_err(|e| e.to_string())?;
            let floor = -1e-8 * g.trace_re();
            if report.min_eigenvalue < floor {
                return err(format!(
                    "min eigenvalue {} below {floor} at points {pts:?}",
                    report.min_eigenvalue
                ));
            }
        }
    }
    Ok(())
}

/// 11. Contractivity and isometry: inner multipliers preserve the norm
/// within certified error <= 1e-10; the strictly-Schur example contracts.
fn c11_contractivity() -> Result<(), String> {
    let mut inner_multipliers = vec![blaschke_pm(AlphaSign::Plus), blaschke_pm(AlphaSign::Minus)];
    for lambda in [LatticePoint::new(1, 0), LatticePoint::new(0, 1)] {
        let prob = InterpolationProblem::new(lambda).map_err(|e| e.to_string())?;
        inner_multipliers.push(blaschke_lambda(&prob));
    }
    let strict = elementary_schur(
        &GaussianRational::from_integers(1, 0)
            .checked_div(&gr(2, 0))
            .unwrap(),
    )
    .map_err(|e| e.to_string())?;

    let mut rng = ChaCha8Rng::seed_from_u64(1111);
    for trial in 0..50 {
        let f = random_coefficient_poly(&mut rng, 10);
        let nsq_f = inner_product_exact(&f, &f)
            .to_float()
            .map_err(|e| e.to_string())?
            .re;
        let norm_f = nsq_f.sqrt();

        let s = &inner_multipliers[trial % inner_multipliers.len()];
        let sf = multiplier_apply(s, &HardyElement::Polynomial(f.clone()), 16)
            .map_err(|e| e.to_string())?;
        let nsq_sf = inner_product(&sf, &sf).map_err(|e| e.to_string())?;
        let norm_sf = nsq_sf.value.re.max(0.0).sqrt();
        // propagate the certified bound on the squared norm to the norm
        let norm_err = if norm_f > 1e-6 {
            nsq_sf.abs_error / norm_f
        } else {
            nsq_sf.abs_error.sqrt()
        };
        if (norm_sf - norm_f).abs() > norm_err + 1e-10 || norm_err > 1e-10 {
            return err(format!(
                "trial {trial}: |s*f| = {norm_sf}, |f| = {norm_f}, err {norm_err}"
            ));
        }

        let sf = multiplier_apply(&strict, &HardyElement::Polynomial(f), 16)
            .map_err(|e| e.to_string())?;
        let nsq_sf = inner_product(&sf, &sf).map_err(|e| e.to_string())?;
        let upper = (nsq_sf.value.re + nsq_sf.abs_error).max(0.0).sqrt();
        if upper > norm_f + 1e-10 {
            return err(format!(
                "trial {trial}: strict Schur multiplier expanded {norm_f} to {upper}"
            ));
        }
    }
    Ok(())
}

/// 12. Decay law: |z^(n)(z)|^(1/n) lies in [0.55, 0.85] for n in [20, 60]
/// at z in {1, i, 2+i}, consistent with the limit 1/sqrt(2).
fn c12_decay_law() -> Result<(), String> {
    for (x, y) in [(1i64, 0i64), (0, 1), (2, 1)] {
        let z = LatticePoint::new(x, y);
        let vals = basis_values_at(z, 60);
        for n in 20..=60usize {
            let a = vals[n].abs_f64().map_err(|e| e.to_string())?;
            let root = a.powf(1.0 / n as f64);
            if !(0.55..=0.85).contains(&root) {
                return err(format!(
                    "z = {z}, n = {n}: |z^(n)(z)|^(1/n) = {root} outside [0.55, 0.85]"
                ));
            }
        }
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [(&str, Check); 12] = [
        ("operator identities", c01_operator_identities),
        ("basis oracle equivalence", c02_basis_oracles),
        ("analyticity calibration", c03_analyticity_calibration),
        ("closed-path integrals", c04_closed_paths),
        ("unitarity of the coefficient map", c05_unitarity),
        ("kernel values and positivity", c06_kernel_positivity),
        ("Blaschke inner exactness", c07_blaschke_inner),
        ("B_lambda vanishing", c08_blaschke_lambda),
        ("principal ideal membership", c09_principal_ideal),
        ("Schur certification", c10_schur_certification),
        ("contractivity and isometry", c11_contractivity),
        ("decay law", c12_decay_law),
    ];
    let mut failures = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("criterion {:02} ({name}): PASS", i + 1),
            Err(reason) => {
                println!("criterion {:02} ({name}): FAIL - {reason}", i + 1);
                failures.push(format!("{:02} ({name}): {reason}", i + 1));
            }
        }
    }
    assert!(
        failures.is_empty(),
        "failed acceptance criteria:\n{}",
        failures.join("\n")
    );
}
