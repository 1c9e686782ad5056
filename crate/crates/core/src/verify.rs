//! Verification harness: bit-exact reproduction of the four worked
//! idealization examples, exhaustive theorem sweeps over a catalog of small
//! rings, and searches for the counterexample phenomena.
//!
//! Every run is deterministic given a [`CatalogSpec`] (including its seed);
//! a failing check always carries enough data to be replayed by hand.

use std::time::Instant;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{print_coords, print_module, print_ring};
use crate::extension::{
    components, is_s_maximal_via_components, is_s_prime_via_components, make_trivial_extension,
    pair_element, spec_s_extension,
};
use crate::ideal::{
    enumerate_ideals, find_disjoint_prime, is_prime, is_s_maximal_definitional,
    is_s_maximal_residual, is_s_prime_definitional, is_s_prime_residual, mult_set_generated,
    saturation, scaled_ideal, spec_s, Ideal, MultiplicativeSet,
};
use crate::module::{
    is_s_divisible, make_module, uniform_torsion_witness, zero_submodule, BaseRing,
    ModuleDescriptor,
};
use crate::packed::{
    compactly_packed_exhaustive, coprimely_packed_exhaustive, is_compactly_s_packed,
    is_coprimely_s_packed, is_s_pm,
};
use crate::ring::{make_residue_ring, RingDescriptor, RingElement};
use crate::zlayer::{
    z_is_s_prime, z_residual, zte_ideal, zte_is_homogeneous, zte_is_s_maximal, zte_is_s_prime,
    zte_membership, ZIdeal, ZMultSet,
};

pub const SUITES: &[&str] = &[
    "th1",
    "th2",
    "sat",
    "smax",
    "s-p",
    "imp-rec",
    "s-torsion",
    "th3",
    "th4",
    "th5",
    "pm-zlayer",
    "oracle-equivalence",
];

pub const SEARCH_TARGETS: &[&str] =
    &["nonhomogeneous-s-prime", "s-prime-not-PxM", "pm-not-s-pm"];

/// Generation recipe for the catalog of small instances. Defaults follow the
/// shape used throughout: bases `Z/n` for `n ∈ 2..=10`, cyclic modules with
/// order dividing the base modulus, multiplicative sets from one or two
/// generators.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default)]
pub struct CatalogSpec {
    pub base_moduli: Vec<u64>,
    /// Candidate cyclic-module orders; kept where the order divides the base
    /// modulus.
    pub module_orders: Vec<u64>,
    /// Seeded sample size for two-generator multiplicative sets per ring
    /// (all valid single generators are always included).
    pub sampled_pairs: usize,
    pub max_ring_cardinality: u64,
    /// Cross-validate packing reductions exhaustively when the S-prime
    /// spectrum has at most this many members.
    pub exhaustive_spectrum_limit: usize,
    /// Cyclic-module orders for the integer-layer instances.
    pub zlayer_module_orders: Vec<u64>,
    /// Number of sampled principal ideals in the pm-zlayer suite.
    pub pm_zlayer_instances: usize,
    pub seed: u64,
}

impl Default for CatalogSpec {
    fn default() -> CatalogSpec {
        CatalogSpec {
            base_moduli: (2..=10).collect(),
            module_orders: (1..=10).collect(),
            sampled_pairs: 6,
            max_ring_cardinality: 128,
            exhaustive_spectrum_limit: 12,
            zlayer_module_orders: (2..=12).collect(),
            pm_zlayer_instances: 600,
            seed: 0x5eed_cafe,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Failure {
    pub instance: String,
    pub expected: String,
    pub got: String,
    pub certificate: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Hit {
    pub instance: String,
    pub certificate: String,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub suite: String,
    pub instances: usize,
    pub failures: Vec<Failure>,
    /// Populated by searches; suites leave it empty.
    pub hits: Vec<Hit>,
    pub wall_ms: u128,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct SuiteRun {
    suite: String,
    instances: usize,
    failures: Vec<Failure>,
    hits: Vec<Hit>,
    started: Instant,
}

impl SuiteRun {
    fn new(suite: &str) -> SuiteRun {
        SuiteRun {
            suite: suite.into(),
            instances: 0,
            failures: Vec::new(),
            hits: Vec::new(),
            started: Instant::now(),
        }
    }

    fn check_eq<T: PartialEq + std::fmt::Debug>(
        &mut self,
        instance: &str,
        expected: T,
        got: T,
        certificate: &str,
    ) {
        self.instances += 1;
        if expected != got {
            self.failures.push(Failure {
                instance: instance.into(),
                expected: format!("{expected:?}"),
                got: format!("{got:?}"),
                certificate: certificate.into(),
            });
        }
    }

    fn finish(self) -> VerificationReport {
        VerificationReport {
            suite: self.suite,
            instances: self.instances,
            failures: self.failures,
            hits: self.hits,
            wall_ms: self.started.elapsed().as_millis(),
        }
    }
}

// ====== catalog construction ======

struct Pool {
    label: String,
    set: MultiplicativeSet,
}

struct BaseInstance {
    ring: RingDescriptor,
    pools: Vec<Pool>,
}

struct ExtInstance {
    a: RingDescriptor,
    m: ModuleDescriptor,
    r: RingDescriptor,
    /// `(label, S0 in A, S in A ⋉ M generated by the lifted pairs (s, 0))`.
    pools: Vec<(String, MultiplicativeSet, MultiplicativeSet)>,
}

impl ExtInstance {
    fn label(&self) -> String {
        format!("A={} M={}", print_ring(&self.a), print_module(&self.m))
    }
}

fn pool_label(gens: &[i64]) -> String {
    if gens.is_empty() {
        "{1}".into()
    } else {
        let parts: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
        format!("<{}>", parts.join(", "))
    }
}

/// Multiplicative-set generator lists for `Z/n`: the trivial set, every valid
/// single generator, and a seeded sample of generator pairs.
fn generator_lists(n: u64, spec: &CatalogSpec) -> Vec<Vec<i64>> {
    let ring = make_residue_ring(n).expect("catalog modulus");
    let valid = |gens: &[i64]| {
        let elems: Vec<RingElement> =
            gens.iter().map(|&g| ring.element(&[g]).unwrap()).collect();
        mult_set_generated(&ring, &elems).is_ok()
    };
    let mut lists: Vec<Vec<i64>> = vec![Vec::new()];
    let singles: Vec<i64> = (2..n as i64).filter(|&s| valid(&[s])).collect();
    lists.extend(singles.iter().map(|&s| vec![s]));
    let mut pairs: Vec<Vec<i64>> = Vec::new();
    for (i, &s) in singles.iter().enumerate() {
        for &t in &singles[i + 1..] {
            if valid(&[s, t]) {
                pairs.push(vec![s, t]);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed ^ n);
    let mut sample: Vec<Vec<i64>> = pairs
        .choose_multiple(&mut rng, spec.sampled_pairs)
        .cloned()
        .collect();
    sample.sort();
    lists.extend(sample);
    lists
}

fn base_instances(spec: &CatalogSpec) -> Vec<BaseInstance> {
    let mut out = Vec::new();
    for &n in &spec.base_moduli {
        let ring = make_residue_ring(n).expect("catalog modulus");
        let pools = generator_lists(n, spec)
            .into_iter()
            .map(|gens| {
                let elems: Vec<RingElement> =
                    gens.iter().map(|&g| ring.element(&[g]).unwrap()).collect();
                let set = mult_set_generated(&ring, &elems).expect("validated generators");
                Pool { label: pool_label(&gens), set }
            })
            .collect();
        out.push(BaseInstance { ring, pools });
    }
    out
}

fn ext_instances(spec: &CatalogSpec) -> Result<Vec<ExtInstance>> {
    let mut out = Vec::new();
    for &n in &spec.base_moduli {
        let a = make_residue_ring(n)?;
        for &d in &spec.module_orders {
            if n % d != 0 || n * d > spec.max_ring_cardinality {
                continue;
            }
            let m = make_module(BaseRing::Residue(n), &[d])?;
            let r = make_trivial_extension(&a, &m)?;
            let mut pools = Vec::new();
            for gens in generator_lists(n, spec) {
                let elems: Vec<RingElement> =
                    gens.iter().map(|&g| a.element(&[g]).unwrap()).collect();
                let s0 = mult_set_generated(&a, &elems)?;
                let lifted: Vec<RingElement> = elems
                    .iter()
                    .map(|e| pair_element(&r, e, &m.zero()))
                    .collect::<Result<_>>()?;
                let s = mult_set_generated(&r, &lifted)?;
                pools.push((pool_label(&gens), s0, s));
            }
            out.push(ExtInstance { a: a.clone(), m, r, pools });
        }
    }
    Ok(out)
}

fn ideal_label(i: &Ideal) -> String {
    let gens: Vec<String> = i.generators().iter().map(|g| print_coords(g.coords())).collect();
    format!("<{}>", gens.join("; "))
}

// ====== suites ======

pub fn run_suite(name: &str, spec: &CatalogSpec) -> Result<VerificationReport> {
    let mut run = SuiteRun::new(name);
    match name {
        "th1" => suite_th1(spec, &mut run)?,
        "th2" => suite_th2(spec, &mut run)?,
        "sat" => suite_sat(spec, &mut run)?,
        "smax" => suite_smax(spec, &mut run)?,
        "s-p" => suite_sp(spec, &mut run)?,
        "imp-rec" => suite_imp_rec(spec, &mut run)?,
        "s-torsion" => suite_s_torsion(spec, &mut run)?,
        "th3" => suite_packing(spec, &mut run, PackingKind::Compact)?,
        "th4" => suite_packing(spec, &mut run, PackingKind::Coprime)?,
        "th5" => suite_th5(spec, &mut run)?,
        "pm-zlayer" => suite_pm_zlayer(spec, &mut run)?,
        "oracle-equivalence" => suite_oracle_equivalence(spec, &mut run)?,
        other => return Err(Error::Unsupported(format!("unknown suite '{other}'"))),
    }
    Ok(run.finish())
}

/// S-prime via the definition vs via the graded components, every ideal of
/// every catalog extension.
fn suite_th1(spec: &CatalogSpec, run: &mut SuiteRun) -> Result<()> {
    for inst in ext_instances(spec)? {
        let ideals = enumerate_ideals(&inst.r)?;
        for (label, _, s) in &inst.pools {
            for j in &ideals {
                let def = is_s_prime_definitional(j, s)?;
                let via = is_s_prime_via_components(j, s)?;
                run.check_eq(
                    &format!("{} S={} J={}", inst.label(), label, ideal_label(j)),
                    def.verdict,
                    via.verdict,
                    &format!("definitional {:?}, components {:?}", def.reason, via.reason),
                );
            }
        }
    }
    Ok(())
}

fn suite_th2(spec: &CatalogSpec, run: &mut SuiteRun) -> Result<()> {
    for inst in ext_instances(spec)? {
        let ideals = enumerate_ideals(&inst.r)?;
        for (label, _, s) in &inst.pools {
            for j in &ideals {
                let def = is_s_maximal_definitional(j, s)?;
                let via = is_s_maximal_via_components(j, s)?;
                run.check_eq(
                    &format!("{} S={} J={}", inst.label(), label, ideal_label(j)),
                    def.verdict,
                    via.verdict,
                    &format!("definitional {:?}, components {:?}", def.reason, via.reason),
                );
            }
        }
    }
    Ok(())
}

/// Every finite catalog ring together with its pools: base rings and
/// extensions alike.
fn all_finite_rings(spec: &CatalogSpec) -> Result<Vec<(String, RingDescriptor, Vec<Pool>)>> {
    let mut out = Vec::new();
    for base in base_instances(spec) {
        let label = print_ring(&base.ring);
        out.push((label, base.ring, base.pools));
    }
    for inst in ext_instances(spec)? {
        let label = format!("TE({}, {})", print_ring(&inst.a), print_module(&inst.m));
        let pools = inst
            .pools
            .into_iter()
            .map(|(label, _, s)| Pool { label, set: s })
            .collect();
        out.push((label, inst.r, pools));
    }
    Ok(out)
}

/// S-primality is invariant under saturating S.
fn suite_sat(spec: &CatalogSpec, run: &mut SuiteRun) -> Result<()> {
    for (ring_label, ring, pools) in all_finite_rings(spec)? {
        let ideals = enumerate_ideals(&ring)?;
        for pool in &pools {
            let sat = saturation(&pool.set)?;
            for i in &ideals {
                let plain = is_s_prime_residual(i, &pool.set)?;
                let saturated = is_s_prime_residual(i, &sat)?;
                run.check_eq(
                    &format!("{ring_label} S={} I={}", pool.label, ideal_label(i)),
                    plain.verdict,
                    saturated.verdict,
                    &format!("plain {:?}, saturated {:?}", plain.reason, saturated.reason),
                );
            }
        }
    }
    Ok(())
}

/// Scaling an S-maximal ideal by any element of the saturation keeps it
/// S-maximal.
fn suite_smax(spec: &CatalogSpec, run: &mut SuiteRun) -> Result<()> {
    for (ring_label, ring, pools) in all_finite_rings(spec)? {
        for pool in &pools {
            let sat = saturation(&pool.set)?;
            for p in crate::ideal::max_s(&ring, &pool.set)? {
                for t in sat.elements() {
                    let tp = scaled_ideal(&t, &p)?;
                    let cert = is_s_maximal_residual(&tp, &pool.set)?;
                    run.check_eq(
                        &format!(
                            "{ring_label} S={} p={} t={}",
                            pool.label,
                            ideal_label(&p),
                            print_coords(t.coords())
                        ),
                        true,
                        cert.verdict,
                        &format!("reason {:?}", cert.reason),
                    );
                }
            }
        }
    }
    Ok(())
}

/// Every ideal disjoint from S sits inside a prime that is still disjoint.
fn suite_sp(spec: &CatalogSpec, run: &mut SuiteRun) -> Result<()> {
    for (ring_label, ring, pools) in all_finite_rings(spec)? {
        let ideals = enumerate_ideals(&ring)?;
        for pool in &pools {
            for i in &ideals {
                if i.elements().iter().any(|x| pool.set.contains(x)) {
                    continue;
                }
                let instance =
                    format!("{ring_label} S={} I={}", pool.label, ideal_label(i));
                match find_disjoint_prime(i, &pool.set) {
                    Ok(p) => {
                        let sound = is_prime(&p)?
                            && i.mask().is_subset(p.mask())
                            && !p.elements().iter().any(|x| pool.set.contains(x));
                        run.check_eq(&instance, true, sound, &ideal_label(&p));
                    }
                    Err(e) => run.check_eq(&instance, true, false, &e.to_string()),
                }
            }
        }
    }
    Ok(())
}

/// Every S-prime of `A ⋉ M` has the form `P ⋉ M` exactly when `M` is
/// S0-divisible.
fn suite_imp_rec(spec: &CatalogSpec, run: &mut SuiteRun) -> Result<()> {
    for inst in ext_instances(spec)? {
        for (label, s0, s) in &inst.pools {
            let mut all_pxm = true;
            let mut offender = String::new();
            for j in spec_s_extension(&inst.r, s)? {
                let parts = components(&j)?;
                let form = parts.is_homogeneous
                    && parts.j1.is_full()
                    && is_s_prime_residual(&parts.j0, s0)?.verdict;
                if !form {
                    all_pxm = false;
                    offender = ideal_label(&j);
                    break;
                }
            }
            let divisible = is_s_divisible(&inst.m, s0)?;
            run.check_eq(
                &format!("{} S={}", inst.label(), label),
                divisible,
                all_pxm,
                &format!("offending S-prime {offender}"),
            );
        }
    }
    Ok(())
}

/// When some `s ∈ S0` kills `M`, S-primality of `J` collapses to
/// S0-primality of its degree-0 slice.
fn suite_s_torsion(spec: &CatalogSpec, run: &mut SuiteRun) -> Result<()> {
    for inst in ext_instances(spec)? {
        let zero = zero_submodule(&inst.m);
        let ideals = enumerate_ideals(&inst.r)?;
        for (label, s0, s) in &inst.pools {
            if uniform_torsion_witness(&inst.m, &zero, s0)?.is_none() {
                continue;
            }
            for j in &ideals {
                let full = is_s_prime_residual(j, s)?;
                let slice = is_s_prime_residual(&components(j)?.j0, s0)?;
                run.check_eq(
                    &format!("{} S={} J={}", inst.label(), label, ideal_label(j)),
                    full.verdict,
                    slice.verdict,
                    &format!("full {:?}, slice {:?}", full.reason, slice.reason),
                );
            }
        }
    }
    Ok(())
}

enum PackingKind {
    Compact,
    Coprime,
}

/// The packing verdict transfers between `A` and `A ⋉ M`; both sides are
/// additionally cross-validated against the exhaustive sweep while the
/// spectrum stays small.
fn suite_packing(spec: &CatalogSpec, run: &mut SuiteRun, kind: PackingKind) -> Result<()> {
    for inst in ext_instances(spec)? {
        for (label, s0, s) in &inst.pools {
            let (base, ext) = match kind {
                PackingKind::Compact => (
                    is_compactly_s_packed(&inst.a, s0)?.verdict,
                    is_compactly_s_packed(&inst.r, s)?.verdict,
                ),
                PackingKind::Coprime => (
                    is_coprimely_s_packed(&inst.a, s0)?.verdict,
                    is_coprimely_s_packed(&inst.r, s)?.verdict,
                ),
            };
            let instance = format!("{} S={}", inst.label(), label);
            run.check_eq(&instance, base, ext, "transfer between base and extension");
            for (ring, set, side) in [(&inst.a, s0, base), (&inst.r, s, ext)] {
                if spec_s(ring, set)?.len() <= spec.exhaustive_spectrum_limit {
                    let reference = match kind {
                        PackingKind::Compact => compactly_packed_exhaustive(ring, set)?,
                        PackingKind::Coprime => coprimely_packed_exhaustive(ring, set)?,
                    };
                    run.check_eq(
                        &format!("{instance} exhaustive on {}", print_ring(ring)),
                        reference,
                        side,
                        "worst-family reduction vs full subset sweep",
                    );
                }
            }
        }
    }
    Ok(())
}

/// `A ⋉ M` is S-pm exactly when `A` is S0-pm and `M` is S0-divisible.
fn suite_th5(spec: &CatalogSpec, run: &mut SuiteRun) -> Result<()> {
    for inst in ext_instances(spec)? {
        for (label, s0, s) in &inst.pools {
            let lhs = is_s_pm(&inst.r, s)?.verdict;
            let rhs = is_s_pm(&inst.a, s0)?.verdict && is_s_divisible(&inst.m, s0)?;
            run.check_eq(
                &format!("{} S={}", inst.label(), label),
                rhs,
                lhs,
                "pm transfer",
            );
        }
    }
    Ok(())
}

/// Over `Z ⋉ M`, principal ideals outside the nilradical are S-prime exactly
/// when S-maximal. Instances are sampled deterministically from the seed.
fn suite_pm_zlayer(spec: &CatalogSpec, run: &mut SuiteRun) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    if spec.zlayer_module_orders.is_empty() {
        return Err(Error::PreconditionViolated("no z-layer module orders".into()));
    }
    for _ in 0..spec.pm_zlayer_instances {
        let &order = spec.zlayer_module_orders.choose(&mut rng).unwrap();
        let m = make_module(BaseRing::Integers, &[order])?;
        let a = rng.random_range(1..=60i64);
        let x = m.element(&[rng.random_range(0..order as i64)])?;
        let s_gen = rng.random_range(2..=13i64);
        let j = zte_ideal(&m, &[(a, x.clone())])?;
        debug_assert!(!j.j0().is_zero());
        let s = vec![(s_gen, m.zero())];
        let prime = zte_is_s_prime(&j, &s)?;
        let maximal = zte_is_s_maximal(&j, &s)?;
        run.check_eq(
            &format!("M=Z/{order} J=<({a}, {})> S=<{s_gen}>", x.coords()[0]),
            prime.verdict,
            maximal.verdict,
            &format!("prime {:?}, maximal {:?}", prime.reason, maximal.reason),
        );
    }
    Ok(())
}

/// The residual-based S tests and the definitional ones agree everywhere.
fn suite_oracle_equivalence(spec: &CatalogSpec, run: &mut SuiteRun) -> Result<()> {
    for (ring_label, ring, pools) in all_finite_rings(spec)? {
        let ideals = enumerate_ideals(&ring)?;
        for pool in &pools {
            for i in &ideals {
                let instance =
                    format!("{ring_label} S={} I={}", pool.label, ideal_label(i));
                let dp = is_s_prime_definitional(i, &pool.set)?;
                let rp = is_s_prime_residual(i, &pool.set)?;
                run.check_eq(
                    &format!("{instance} s-prime"),
                    dp.verdict,
                    rp.verdict,
                    &format!("definitional {:?}, residual {:?}", dp.reason, rp.reason),
                );
                let dm = is_s_maximal_definitional(i, &pool.set)?;
                let rm = is_s_maximal_residual(i, &pool.set)?;
                run.check_eq(
                    &format!("{instance} s-maximal"),
                    dm.verdict,
                    rm.verdict,
                    &format!("definitional {:?}, residual {:?}", dm.reason, rm.reason),
                );
            }
        }
    }
    Ok(())
}

// ====== worked examples ======

/// The four worked examples, reproduced bit-exactly in order.
pub fn reproduce_examples() -> Result<VerificationReport> {
    let mut run = SuiteRun::new("examples");

    // 1: J = 0 ⋉ 2Z/6Z inside Z ⋉ Z/6 is S-prime for S = <(2, 0)>.
    let m6 = make_module(BaseRing::Integers, &[6])?;
    let j = zte_ideal(&m6, &[(0, m6.element(&[2])?)])?;
    let s = vec![(2i64, m6.zero())];
    let cert = zte_is_s_prime(&j, &s)?;
    run.check_eq("ex1 S-prime", true, cert.verdict, &format!("{:?}", cert.reason));

    // 2: P = (6,1)(Z ⋉ Z/2) is S-maximal; (P : (4,0)) = 3Z ⋉ Z/2; P is not
    // homogeneous ((0,1) now missing).
    let m2 = make_module(BaseRing::Integers, &[2])?;
    let p = zte_ideal(&m2, &[(6, m2.element(&[1])?)])?;
    let s = vec![(2i64, m2.zero())];
    let cert = zte_is_s_maximal(&p, &s)?;
    run.check_eq("ex2 S-maximal", true, cert.verdict, &format!("{:?}", cert.reason));
    let residual_side = zte_ideal(&m2, &[(3, m2.zero()), (0, m2.element(&[1])?)])?;
    // (4,0)·(b, y) = (4b, 4y): generators of 3Z ⋉ Z/2 scale into P ...
    let gens_in = residual_side.generators().iter().all(|(t, u)| {
        zte_membership(4 * *t as i64, &m2.scalar_action(4, u), &p)
    });
    run.check_eq("ex2 residual (generators)", true, gens_in, "3Z x Z/2 scaled into P");
    // ... and membership matches on a window covering every residue class.
    let mut window_eq = true;
    for b in -12..=12i64 {
        for y in m2.enumerate_elements() {
            let lhs = zte_membership(b, &y, &residual_side);
            let rhs = zte_membership(4 * b, &m2.scalar_action(4, &y), &p);
            window_eq &= lhs == rhs;
        }
    }
    run.check_eq("ex2 residual (membership)", true, window_eq, "(P : (4,0)) = 3Z x Z/2");
    run.check_eq(
        "ex2 non-homogeneous",
        false,
        zte_membership(0, &m2.element(&[1])?, &p),
        "(0,1) not in P",
    );

    // 3: P = (2,1)(Z ⋉ Z/2) with S = <(3, 0)> is not S-prime, although its
    // projection 2Z is S0-prime.
    let p3 = zte_ideal(&m2, &[(2, m2.element(&[1])?)])?;
    let s3 = vec![(3i64, m2.zero())];
    let cert = zte_is_s_prime(&p3, &s3)?;
    run.check_eq("ex3 not S-prime", false, cert.verdict, &format!("{:?}", cert.reason));
    let base = z_is_s_prime(&ZIdeal::new(2), &ZMultSet::new(&[3])?)?;
    run.check_eq("ex3 projection S0-prime", true, base.verdict, "2Z with <3>");

    // 4: J = (6,1)(Z ⋉ Z/4): degree-0 slice 12Z, (12Z : 4) = 3Z prime, J
    // S-prime for S = <(2, 0)>, and (6, 0) outside J.
    let m4 = make_module(BaseRing::Integers, &[4])?;
    let j4 = zte_ideal(&m4, &[(6, m4.element(&[1])?)])?;
    run.check_eq("ex4 slice", ZIdeal::new(12), j4.j0(), "degree-0 slice of J");
    let res = z_residual(&j4.j0(), 4)?;
    run.check_eq("ex4 residual", ZIdeal::new(3), res, "(12Z : 4)");
    let res_prime = z_is_s_prime(&res, &ZMultSet::new(&[])?)?;
    run.check_eq("ex4 residual prime", true, res_prime.verdict, "3Z prime");
    let s4 = vec![(2i64, m4.zero())];
    let cert = zte_is_s_prime(&j4, &s4)?;
    run.check_eq("ex4 S-prime", true, cert.verdict, &format!("{:?}", cert.reason));
    run.check_eq("ex4 (6,0) outside", false, zte_membership(6, &m4.zero(), &j4), "slice gap");

    Ok(run.finish())
}

// ====== searches ======

pub fn search_counterexamples(target: &str, spec: &CatalogSpec) -> Result<VerificationReport> {
    let mut run = SuiteRun::new(target);
    match target {
        "nonhomogeneous-s-prime" => search_nonhomogeneous(spec, &mut run)?,
        "s-prime-not-PxM" => search_not_pxm(spec, &mut run)?,
        "pm-not-s-pm" => search_pm_not_s_pm(spec, &mut run)?,
        other => return Err(Error::Unsupported(format!("unknown search target '{other}'"))),
    }
    if run.hits.is_empty() {
        run.failures.push(Failure {
            instance: target.into(),
            expected: "at least one hit".into(),
            got: "none".into(),
            certificate: "search space exhausted without a hit".into(),
        });
    }
    Ok(run.finish())
}

/// Principal S-prime ideals of `Z ⋉ M` that are not homogeneous.
fn search_nonhomogeneous(spec: &CatalogSpec, run: &mut SuiteRun) -> Result<()> {
    for &order in &spec.zlayer_module_orders {
        let m = make_module(BaseRing::Integers, &[order])?;
        for a in 1..=12i64 {
            for x in m.enumerate_elements() {
                for s_gen in 2..=10i64 {
                    run.instances += 1;
                    let j = zte_ideal(&m, &[(a, x.clone())])?;
                    let s = vec![(s_gen, m.zero())];
                    let cert = zte_is_s_prime(&j, &s)?;
                    if cert.verdict && !zte_is_homogeneous(&j) {
                        run.hits.push(Hit {
                            instance: format!(
                                "M=Z/{order} J=<({a}, {})> S=<{s_gen}>",
                                x.coords()[0]
                            ),
                            certificate: format!(
                                "S-prime with witness {}, residual {}; (a, 0) escapes J",
                                cert.witness.unwrap(),
                                cert.residual.unwrap()
                            ),
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// S-prime ideals of finite `A ⋉ M` that do not have the form `P ⋉ M`.
fn search_not_pxm(spec: &CatalogSpec, run: &mut SuiteRun) -> Result<()> {
    for inst in ext_instances(spec)? {
        for (label, _, s) in &inst.pools {
            for j in spec_s_extension(&inst.r, s)? {
                run.instances += 1;
                let parts = components(&j)?;
                if !(parts.is_homogeneous && parts.j1.is_full()) {
                    run.hits.push(Hit {
                        instance: format!("{} S={} J={}", inst.label(), label, ideal_label(&j)),
                        certificate: format!(
                            "S-prime; homogeneous: {}, degree-1 slice {}/{} elements",
                            parts.is_homogeneous,
                            parts.j1.cardinality(),
                            inst.m.cardinality()
                        ),
                    });
                }
            }
        }
    }
    Ok(())
}

/// Rings `A ⋉ M` that are pm classically (S = {1}) but not S-pm; by the
/// transfer criterion these arise exactly from non-S0-divisible `M`.
fn search_pm_not_s_pm(spec: &CatalogSpec, run: &mut SuiteRun) -> Result<()> {
    for inst in ext_instances(spec)? {
        let trivial = mult_set_generated(&inst.r, &[])?;
        let classically_pm = is_s_pm(&inst.r, &trivial)?.verdict;
        for (label, s0, s) in &inst.pools {
            run.instances += 1;
            if !classically_pm {
                continue;
            }
            let report = is_s_pm(&inst.r, s)?;
            if !report.verdict {
                let divisible = is_s_divisible(&inst.m, s0)?;
                let v = report.violation.unwrap();
                run.hits.push(Hit {
                    instance: format!("{} S={}", inst.label(), label),
                    certificate: format!(
                        "pm for S={{1}} but not S-pm: {} under {} S-maximal ideals; M S0-divisible: {divisible}",
                        ideal_label(&v.p),
                        v.containing.len()
                    ),
                });
            }
        }
    }
    Ok(())
}
