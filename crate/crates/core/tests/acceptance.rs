//! Acceptance suite: ten seeded, desk-scale checks run at their stated
//! tolerances. Each prints one PASS/FAIL line (written straight to the
//! stderr handle so the lines show without `--nocapture`); the test fails
//! if any check fails.
//!
//! ```bash
//! cargo test --test acceptance
//! ```

mod common;

use std::io::Write;
use std::time::{Duration, Instant};

use common::{angular_distance, closed_form_eigenvalues, nalgebra_eigenvalues};
use triform::certify::{bracket, fval};
use triform::corollaries::{averages_check, hs_check, remark_collection, trace_check, trace_margin};
use triform::linalg::{dot, eigh};
use triform::oracle::{
    generate, random_orthogonal, random_projection_pair, sphere_scan, Family, GeneratorSpec, Overrides,
};
use triform::rng::SplitMix64;
use triform::{certify, validate_instance, CertifyConfig, Instance, Matrix, SymmetricMatrix, Verdict, VerdictTag};

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Outcome { passed, detail: detail.into() }
    }
}

fn report(name: &str, budget: Option<Duration>, check: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = check();
    let elapsed = start.elapsed();
    let in_budget = budget.is_none_or(|b| elapsed <= b);
    let passed = outcome.passed && in_budget;
    let budget_note = budget.map(|b| format!(" (budget {:.0} s)", b.as_secs_f64())).unwrap_or_default();
    let line = format!(
        "{} {name}: {} [{:.2} s{budget_note}]\n",
        if passed { "PASS" } else { "FAIL" },
        outcome.detail,
        elapsed.as_secs_f64()
    );
    let _ = std::io::stderr().write_all(line.as_bytes());
    passed
}

fn pick_family(rng: &mut SplitMix64) -> Family {
    [Family::Certified, Family::Tight, Family::Violating][rng.range_inclusive(0, 2)]
}

fn random_alpha(rng: &mut SplitMix64) -> f64 {
    10f64.powf(rng.uniform(-1.0, 1.0))
}

fn certified_corpus() -> Vec<Instance> {
    let mut rng = SplitMix64::new(2002);
    (0..500)
        .map(|_| {
            let dim = rng.range_inclusive(2, 12);
            let spec = GeneratorSpec::new(Family::Certified, dim, rng.next_u64()).alpha(random_alpha(&mut rng));
            generate(&spec).unwrap().instance
        })
        .collect()
}

fn oracle_agreement() -> Outcome {
    let config = CertifyConfig::default();
    let mut rng = SplitMix64::new(1001);
    let (mut compared, mut agreed) = (0, 0);
    for _ in 0..200 {
        let family = pick_family(&mut rng);
        let dim = rng.range_inclusive(2, 3);
        let spec = GeneratorSpec::new(family, dim, rng.next_u64()).alpha(random_alpha(&mut rng));
        let inst = generate(&spec).unwrap().instance;
        let resolution = if dim == 2 { 0.001 } else { 0.01 };
        let scan = sphere_scan(&inst, resolution).unwrap();
        if scan.min_value.abs() <= 10.0 * config.eps_ref * inst.scale() {
            continue;
        }
        compared += 1;
        let expected = if scan.min_value > 0.0 { VerdictTag::Certified } else { VerdictTag::Refuted };
        if certify(&inst, &config).unwrap().tag() == expected {
            agreed += 1;
        }
    }
    Outcome::new(compared > 0 && agreed == compared, format!("{agreed}/{compared} scanned instances agree"))
}

fn certificate_soundness(corpus: &[Instance]) -> Outcome {
    let config = CertifyConfig::default();
    let mut good = 0;
    for inst in corpus {
        if let Verdict::Certified(c) = certify(inst, &config).unwrap() {
            let pencil = triform::forms::pencil(inst, c.alpha).unwrap();
            // λ_min recomputed by an unrelated eigensolver
            if nalgebra_eigenvalues(&pencil)[0] >= -1e-9 * inst.scale() {
                good += 1;
            }
        }
    }
    Outcome::new(
        good == corpus.len(),
        format!("{good}/{} certified with recomputed slack >= -1e-9 scale", corpus.len()),
    )
}

fn refutation_soundness() -> Outcome {
    let config = CertifyConfig::default();
    let mut rng = SplitMix64::new(3003);
    let (mut refuted, mut certified, mut bad_witness) = (0, 0, 0);
    let n = 500;
    for _ in 0..n {
        let dim = rng.range_inclusive(2, 12);
        let spec = GeneratorSpec::new(Family::Violating, dim, rng.next_u64()).alpha(random_alpha(&mut rng)).shrink(0.5);
        let inst = generate(&spec).unwrap().instance;
        match certify(&inst, &config).unwrap() {
            Verdict::Refuted(r) => {
                refuted += 1;
                let x = &r.witness;
                let (t, a, b) = (
                    dot(x, &inst.t().mul_vec(x)),
                    dot(x, &inst.a().mul_vec(x)).max(0.0),
                    dot(x, &inst.b().mul_vec(x)).max(0.0),
                );
                if t >= 2.0 * (a * b).sqrt() - 1e-7 * inst.scale() {
                    bad_witness += 1;
                }
            }
            Verdict::Certified(_) => certified += 1,
            Verdict::Inconclusive(_) => {}
        }
    }
    let passed = refuted as f64 >= 0.99 * n as f64 && certified == 0 && bad_witness == 0;
    Outcome::new(
        passed,
        format!("{refuted}/{n} refuted, {certified} certified, {bad_witness} witnesses failing direct evaluation"),
    )
}

fn concavity() -> Outcome {
    let mut rng = SplitMix64::new(4004);
    let mut violations = 0;
    let mut worst = f64::NEG_INFINITY;
    let mut samples = 0;
    while samples < 500 {
        let dim = rng.range_inclusive(2, 8);
        let spec = GeneratorSpec::new(pick_family(&mut rng), dim, rng.next_u64()).alpha(random_alpha(&mut rng));
        let inst = generate(&spec).unwrap().instance;
        let br = bracket(&inst).unwrap();
        let mut s = [0.0; 3];
        for v in &mut s {
            *v = br.lo * (br.hi / br.lo).powf(rng.next_f64());
        }
        s.sort_by(f64::total_cmp);
        if !(s[0] < s[1] && s[1] < s[2]) {
            continue;
        }
        samples += 1;
        let f: Vec<f64> = s.iter().map(|&x| fval(&inst, x).unwrap()).collect();
        let w = (s[2] - s[1]) / (s[2] - s[0]);
        let shortfall = (w * f[0] + (1.0 - w) * f[2] - f[1]) / inst.scale();
        worst = worst.max(shortfall);
        if shortfall > 1e-9 {
            violations += 1;
        }
    }
    Outcome::new(
        violations == 0,
        format!("{violations}/{samples} chord violations, worst relative shortfall {worst:.2e}"),
    )
}

fn symmetries() -> Outcome {
    let config = CertifyConfig::default();
    let mut rng = SplitMix64::new(5005);
    let (mut swap_ok, mut scale_ok) = (0, 0);
    for _ in 0..200 {
        let dim = rng.range_inclusive(2, 8);
        let spec = GeneratorSpec::new(pick_family(&mut rng), dim, rng.next_u64()).alpha(random_alpha(&mut rng));
        let inst = generate(&spec).unwrap().instance;
        let s = 10f64.powf(rng.uniform(-3.0, 3.0));
        let swapped = inst.swapped();
        let close = (fval(&swapped, 1.0 / s).unwrap() - fval(&inst, s).unwrap()).abs() <= 1e-10 * inst.scale();
        if close && certify(&inst, &config).unwrap().tag() == certify(&swapped, &config).unwrap().tag() {
            swap_ok += 1;
        }
    }
    for _ in 0..200 {
        let dim = rng.range_inclusive(2, 8);
        let spec = GeneratorSpec::new(pick_family(&mut rng), dim, rng.next_u64()).alpha(random_alpha(&mut rng));
        let inst = generate(&spec).unwrap().instance;
        let c = 10f64.powf(rng.uniform(-3.0, 3.0));
        let s = 10f64.powf(rng.uniform(-3.0, 3.0));
        let scaled = inst.scaled(c).unwrap();
        let close = (fval(&scaled, s).unwrap() - c * fval(&inst, s).unwrap()).abs() <= 1e-10 * c * inst.scale();
        if close && certify(&inst, &config).unwrap().tag() == certify(&scaled, &config).unwrap().tag() {
            scale_ok += 1;
        }
    }
    Outcome::new(swap_ok == 200 && scale_ok == 200, format!("swap {swap_ok}/200, scaling {scale_ok}/200"))
}

fn trace_corollary(corpus: &[Instance]) -> Outcome {
    let config = CertifyConfig::default();
    let mut good = 0;
    let mut worst = f64::INFINITY;
    for inst in corpus {
        let verdict = certify(inst, &config).unwrap();
        if let Ok(r) = trace_check(inst, &verdict) {
            worst = worst.min(r.margin / inst.scale());
            if r.margin >= -1e-9 * inst.scale() {
                good += 1;
            }
        }
    }
    Outcome::new(
        good == corpus.len(),
        format!("{good}/{} margins >= -1e-9 scale (min relative {worst:.3e})", corpus.len()),
    )
}

fn hilbert_schmidt() -> Outcome {
    let config = CertifyConfig::default();
    let mut rng = SplitMix64::new(7007);
    let (mut good, mut deficient, mut errors) = (0, 0, 0);
    let mut worst_agreement = 0.0f64;
    for trial in 0..200 {
        let dim = rng.range_inclusive(2, 8);
        let (p1, p2) = random_projection_pair(&mut rng, dim);
        let spec = GeneratorSpec::new(Family::Certified, dim, rng.next_u64())
            .alpha(random_alpha(&mut rng))
            .overrides(Overrides { a: Some(p1.clone()), b: Some(p2.clone()), c: None });
        let t = generate(&spec).unwrap().instance.t().clone();
        let m = rng.range_inclusive(1, dim);
        let mut cols: Vec<Vec<f64>> = (0..m).map(|_| (0..dim).map(|_| rng.uniform(-1.0, 1.0)).collect()).collect();
        if trial % 4 == 0 {
            // rank deficient: a repeated column (or a zero one when m = 1)
            deficient += 1;
            let last = m - 1;
            cols[last] = if m > 1 { cols[0].clone() } else { vec![0.0; dim] };
        }
        let l = Matrix::from_columns(&cols).unwrap();
        let r = match hs_check(&t, &p1, &p2, &l, &config) {
            Ok(r) => r,
            Err(_) => {
                errors += 1;
                continue;
            }
        };
        let reduced_margin = match (&r.reduced_instance, &r.reduced_verdict) {
            (Some(inst), Some(v)) => match trace_check(inst, v) {
                Ok(tr) => tr.margin,
                Err(_) => trace_margin(inst.t(), inst.a(), inst.b()).margin,
            },
            _ => {
                let congruent = |m: &SymmetricMatrix| m.congruence(&l).unwrap();
                trace_margin(&congruent(&t), &congruent(&p1), &congruent(&p2)).margin
            }
        };
        let agreement = (r.margin - reduced_margin).abs() / (1.0 + r.lhs.abs() + r.rhs.abs());
        worst_agreement = worst_agreement.max(agreement);
        if r.margin >= -1e-9 * r.scale && agreement <= 1e-10 {
            good += 1;
        }
    }
    Outcome::new(
        good == 200,
        format!(
            "{good}/200 trials ({deficient} rank-deficient L, {errors} errors), worst margin agreement {worst_agreement:.1e}"
        ),
    )
}

fn remark() -> Outcome {
    let mut rng = SplitMix64::new(8008);
    let mut good = 0;
    for _ in 0..200 {
        let dim = rng.range_inclusive(2, 8);
        let spec = GeneratorSpec::new(Family::Certified, dim, rng.next_u64()).alpha(random_alpha(&mut rng));
        let inst = generate(&spec).unwrap().instance;
        let q = random_orthogonal(&mut rng, dim);
        let vectors: Vec<Vec<f64>> = (0..dim).map(|j| q.column(j)).collect();
        let (a, b, t) = remark_collection(&inst, &vectors);
        if averages_check(&a, &b, &t, true).is_ok_and(|r| r.special_inequality_holds()) {
            good += 1;
        }
    }
    let counter = averages_check(&[1.0, 4.0], &[4.0, 1.0], &[2.0, 2.0], false).unwrap();
    let counter_ok = counter.t_mean == 2.0 && counter.ga == 2.5 && !counter.special_inequality_holds();
    Outcome::new(
        good == 200 && counter_ok,
        format!(
            "{good}/200 collections satisfy the special inequality; counterexample t_mean = {} < ga = {}",
            counter.t_mean, counter.ga
        ),
    )
}

fn linalg_kernel() -> Outcome {
    let mut rng = SplitMix64::new(9009);
    let (mut good, mut small) = (0, 0);
    for _ in 0..1000 {
        let dim = rng.range_inclusive(1, 12);
        let mut data = vec![0.0; dim * dim];
        for i in 0..dim {
            for j in i..dim {
                let v = rng.uniform(-5.0, 5.0);
                data[i * dim + j] = v;
                data[j * dim + i] = v;
            }
        }
        let m = SymmetricMatrix::new(dim, data).unwrap();
        let dec = eigh(&m).unwrap();
        let back = dec.reconstruct();
        let recon: f64 = m.as_slice().iter().zip(back.as_slice()).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt();
        let mut ortho = 0.0;
        for j in 0..dim {
            for k in 0..dim {
                let delta = if j == k { 1.0 } else { 0.0 };
                ortho += (dot(&dec.eigenvectors[j], &dec.eigenvectors[k]) - delta).powi(2);
            }
        }
        let mut ok = recon <= 1e-9 * (1.0 + m.frobenius_norm()) && ortho.sqrt() <= 1e-9;
        if dim <= 3 {
            small += 1;
            let roots = closed_form_eigenvalues(&m);
            ok &= dec.eigenvalues.iter().zip(&roots).all(|(x, y)| (x - y).abs() <= 1e-8);
        }
        if ok {
            good += 1;
        }
    }
    Outcome::new(good == 1000, format!("{good}/1000 matrices ({small} checked against closed-form roots)"))
}

fn canonical_examples() -> Outcome {
    let config = CertifyConfig::default();
    let e1 = SymmetricMatrix::diag(&[1.0, 0.0]);
    let e2 = SymmetricMatrix::diag(&[0.0, 1.0]);
    let tight = validate_instance(SymmetricMatrix::identity(2), e1.clone(), e2.clone()).unwrap();
    let (alpha_err, slack) = match certify(&tight, &config).unwrap() {
        Verdict::Certified(c) => ((c.alpha - 1.0).abs(), c.slack.abs()),
        _ => (f64::INFINITY, f64::INFINITY),
    };
    let shrunk = validate_instance(SymmetricMatrix::identity(2).scaled(0.5), e1, e2).unwrap();
    let diag = [std::f64::consts::FRAC_1_SQRT_2; 2];
    let (gap_err, angle) = match certify(&shrunk, &config).unwrap() {
        Verdict::Refuted(r) => ((r.gap - 0.5).abs(), angular_distance(&r.witness, &diag)),
        _ => (f64::INFINITY, f64::INFINITY),
    };
    Outcome::new(
        alpha_err <= 1e-6 && slack <= 1e-8 && gap_err <= 1e-6 && angle <= 1e-4,
        format!(
            "|alpha - 1| = {alpha_err:.1e}, |slack| = {slack:.1e}, |gap - 0.5| = {gap_err:.1e}, angle = {angle:.1e}"
        ),
    )
}

#[test]
fn acceptance_suite() {
    let secs = |s| Some(Duration::from_secs(s));
    let corpus = certified_corpus();
    let results = [
        report("1 oracle agreement (200 instances, dim 2-3)", secs(10), oracle_agreement),
        report("2 certificate soundness (500 instances, dim 2-12)", secs(30), || certificate_soundness(&corpus)),
        report("3 refutation soundness (500 instances, shrink 0.5)", secs(30), refutation_soundness),
        report("4 concavity of f (500 chords)", None, concavity),
        report("5 swap and scaling symmetry (2 x 200)", None, symmetries),
        report("6 trace corollary (certified corpus)", None, || trace_corollary(&corpus)),
        report("7 Hilbert-Schmidt corollary (200 trials)", None, hilbert_schmidt),
        report("8 averages inequality (200 collections + counterexample)", None, remark),
        report("9 eigensolver kernel (1000 matrices)", secs(10), linalg_kernel),
        report("10 canonical worked examples", None, canonical_examples),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    let _ = std::io::stderr().write_all(format!("acceptance: {passed}/{} passed\n", results.len()).as_bytes());
    assert_eq!(passed, results.len(), "acceptance criteria failed");
}
