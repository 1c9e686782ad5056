//! End-to-end acceptance gate.  Each criterion prints exactly one pass/fail
//! line; the test fails if any criterion fails or overruns its time budget.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::time::{Duration, Instant};

use sprime::{
    make_module, run_suite, z_is_s_prime, z_residual, zte_ideal, zte_is_s_maximal,
    zte_is_s_prime, zte_membership, BaseRing, CatalogSpec, ModuleDescriptor, VerificationReport,
    ZIdeal, ZMultSet,
};

fn ensure(cond: bool, msg: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn z_module(order: u64) -> Result<ModuleDescriptor, String> {
    make_module(BaseRing::Integers, &[order]).map_err(err)
}

fn suite_clean(name: &str) -> Result<VerificationReport, String> {
    let report = run_suite(name, &CatalogSpec::default()).map_err(err)?;
    if let Some(f) = report.failures.first() {
        return Err(format!(
            "suite {name}: {} expected {} but got {} ({})",
            f.instance, f.expected, f.got, f.certificate
        ));
    }
    ensure(report.instances > 0, &format!("suite {name} ran no instances"))?;
    Ok(report)
}

/// 0 ⋉ 2(Z/6) is S-prime in Z ⋉ Z/6 for S = <(2, 0)>.
fn c01() -> Result<(), String> {
    let m = z_module(6)?;
    let j = zte_ideal(&m, &[(0, m.element(&[2]).map_err(err)?)]).map_err(err)?;
    let cert = zte_is_s_prime(&j, &[(2, m.zero())]).map_err(err)?;
    ensure(cert.verdict, "0 ⋉ 2(Z/6) should be S-prime")
}

/// <(6, 1)> in Z ⋉ Z/2 is S-maximal; its residual by (4, 0) is 3Z ⋉ Z/2;
/// (0, 1) stays outside, so the ideal is not homogeneous.
fn c02() -> Result<(), String> {
    let m = z_module(2)?;
    let p = zte_ideal(&m, &[(6, m.element(&[1]).map_err(err)?)]).map_err(err)?;
    let cert = zte_is_s_maximal(&p, &[(2, m.zero())]).map_err(err)?;
    ensure(cert.verdict, "<(6, 1)> should be S-maximal for S = <(2, 0)>")?;
    // Membership in (P : (4,0)) is periodic in b with period dividing 6, so
    // one full window decides equality with 3Z ⋉ Z/2.
    for b in -12..=12i64 {
        for yc in 0..2i64 {
            let y = m.element(&[yc]).map_err(err)?;
            let in_residual = zte_membership(4 * b, &m.scalar_action(4, &y), &p);
            ensure(
                in_residual == (b % 3 == 0),
                &format!("residual by (4, 0) must equal 3Z ⋉ Z/2; differs at ({b}, {yc})"),
            )?;
        }
    }
    ensure(!zte_membership(0, &m.element(&[1]).map_err(err)?, &p), "(0, 1) must escape the ideal")
}

/// <(2, 1)> in Z ⋉ Z/2 is not S-prime for S = <(3, 0)>, even though its
/// degree-0 projection 2Z is S0-prime.
fn c03() -> Result<(), String> {
    let m = z_module(2)?;
    let p = zte_ideal(&m, &[(2, m.element(&[1]).map_err(err)?)]).map_err(err)?;
    let cert = zte_is_s_prime(&p, &[(3, m.zero())]).map_err(err)?;
    ensure(!cert.verdict, "<(2, 1)> should fail the S-prime test")?;
    let base = z_is_s_prime(&ZIdeal::new(2), &ZMultSet::new(&[3]).map_err(err)?).map_err(err)?;
    ensure(base.verdict, "2Z should be S-prime for S = <3> in Z")
}

/// <(6, 1)> in Z ⋉ Z/4 has degree-0 slice 12Z with prime residual
/// (12Z : 4) = 3Z, is S-prime for S = <(2, 0)>, and omits (6, 0).
fn c04() -> Result<(), String> {
    let m = z_module(4)?;
    let j = zte_ideal(&m, &[(6, m.element(&[1]).map_err(err)?)]).map_err(err)?;
    ensure(j.j0() == ZIdeal::new(12), "degree-0 slice should be 12Z")?;
    let res = z_residual(&ZIdeal::new(12), 4).map_err(err)?;
    ensure(res == ZIdeal::new(3), "(12Z : 4) should be 3Z")?;
    let trivial = ZMultSet::new(&[]).map_err(err)?;
    ensure(z_is_s_prime(&res, &trivial).map_err(err)?.verdict, "3Z should be prime")?;
    let cert = zte_is_s_prime(&j, &[(2, m.zero())]).map_err(err)?;
    ensure(cert.verdict, "<(6, 1)> should be S-prime")?;
    ensure(!zte_membership(6, &m.zero(), &j), "(6, 0) must escape the ideal")
}

fn c05() -> Result<(), String> {
    suite_clean("th1").map(|_| ())
}

fn c06() -> Result<(), String> {
    suite_clean("th2").map(|_| ())
}

fn c07() -> Result<(), String> {
    suite_clean("sat").map(|_| ())
}

fn c08() -> Result<(), String> {
    suite_clean("smax").map(|_| ())
}

fn c09() -> Result<(), String> {
    suite_clean("s-p").map(|_| ())
}

fn c10() -> Result<(), String> {
    suite_clean("imp-rec").map(|_| ())
}

fn c11() -> Result<(), String> {
    suite_clean("s-torsion").map(|_| ())
}

fn c12() -> Result<(), String> {
    suite_clean("th3")?;
    suite_clean("th4").map(|_| ())
}

fn c13() -> Result<(), String> {
    suite_clean("th5").map(|_| ())
}

fn c14() -> Result<(), String> {
    suite_clean("oracle-equivalence").map(|_| ())
}

fn c15() -> Result<(), String> {
    let report = suite_clean("pm-zlayer")?;
    ensure(
        report.instances >= 500,
        &format!("need at least 500 instances, ran {}", report.instances),
    )
}

#[test]
fn acceptance() {
    const MINUTE: Duration = Duration::from_secs(60);
    let criteria: [(&str, Duration, fn() -> Result<(), String>); 15] = [
        ("0 ⋉ 2(Z/6) is S-prime in Z ⋉ Z/6 for S = <(2, 0)>", Duration::from_secs(1), c01),
        (
            "<(6, 1)> in Z ⋉ Z/2 is S-maximal; residual by (4, 0) is 3Z ⋉ Z/2; (0, 1) escapes",
            Duration::from_secs(1),
            c02,
        ),
        (
            "<(2, 1)> in Z ⋉ Z/2 is not S-prime for S = <(3, 0)> though 2Z is S0-prime",
            Duration::from_secs(1),
            c03,
        ),
        (
            "<(6, 1)> in Z ⋉ Z/4: slice 12Z, prime residual (12Z : 4) = 3Z, S-prime",
            Duration::from_secs(1),
            c04,
        ),
        ("componentwise S-prime test matches the definitional oracle (th1)", 5 * MINUTE, c05),
        ("componentwise S-maximal test matches the definitional oracle (th2)", 10 * MINUTE, c06),
        ("S-primality is invariant under saturating S (sat)", 10 * MINUTE, c07),
        ("scaling an S-maximal ideal by t ∈ S* preserves S-maximality (smax)", 10 * MINUTE, c08),
        ("every ideal disjoint from S sits under a disjoint prime (s-p)", 10 * MINUTE, c09),
        (
            "all S-primes of A ⋉ M have the form P ⋉ M exactly when M is S0-divisible (imp-rec)",
            10 * MINUTE,
            c10,
        ),
        ("when sM = 0, S-primality reduces to the degree-0 slice (s-torsion)", 10 * MINUTE, c11),
        (
            "compact and coprime packing transfer between A and A ⋉ M, cross-validated (th3, th4)",
            10 * MINUTE,
            c12,
        ),
        ("the S-pm property transfers exactly when M is S0-divisible (th5)", 10 * MINUTE, c13),
        ("residual classifiers agree with definitional oracles (oracle-equivalence)", 10 * MINUTE, c14),
        (
            "principal ideals of Z ⋉ M off the nil layer: S-prime iff S-maximal, ≥ 500 runs (pm-zlayer)",
            10 * MINUTE,
            c15,
        ),
    ];

    let mut failed: Vec<usize> = Vec::new();
    for (k, (label, limit, check)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let result = check();
        let elapsed = started.elapsed();
        let on_time = elapsed <= *limit;
        let pass = result.is_ok() && on_time;
        println!(
            "criterion {:02}: {} ({} ms) — {}",
            k + 1,
            if pass { "pass" } else { "FAIL" },
            elapsed.as_millis(),
            label
        );
        if let Err(reason) = result {
            println!("              {reason}");
            failed.push(k + 1);
        } else if !on_time {
            println!("              exceeded the {limit:?} budget");
            failed.push(k + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
