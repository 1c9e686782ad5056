//! Trivial extensions `A ⋉ M` over a finite base: graded projections,
//! homogeneous components, and the componentwise S-prime / S-maximal tests
//! (base-ring test on `J0` plus a uniform-torsion test on `M/J1`).

use crate::error::{Error, Result};
use crate::ideal::{
    enumerate_ideals, is_s_maximal_definitional, is_s_prime_definitional, mult_set_generated,
    Certificate, Ideal, MultiplicativeSet, Reason, SPrimalityCertificate,
};
use crate::module::{
    is_s_divisible, submodule_generated, uniform_torsion_witness, ModuleDescriptor, ModuleElement,
    Submodule,
};
use crate::ring::{RingDescriptor, RingElement};

/// The base ring and module of a trivial extension descriptor.
pub fn extension_parts(r: &RingDescriptor) -> Result<(RingDescriptor, ModuleDescriptor)> {
    match r {
        RingDescriptor::TrivialExtension(m) => Ok((m.base().to_ring(), m.clone())),
        _ => Err(Error::InvalidRing("not a trivial extension".into())),
    }
}

/// `A ⋉ M` with multiplication `(a,x)(b,y) = (ab, ay + bx)`. The module must
/// live over `A` itself; `Z`-modules go through the integer layer instead.
pub fn make_trivial_extension(a: &RingDescriptor, m: &ModuleDescriptor) -> Result<RingDescriptor> {
    if m.base().to_ring() != *a {
        return Err(Error::InvalidRing(
            "module base does not match the ring being extended".into(),
        ));
    }
    let r = RingDescriptor::TrivialExtension(m.clone());
    r.order()?; // enforce finiteness and the cardinality cap
    Ok(r)
}

fn base_part(a: &RingDescriptor, x: &RingElement) -> RingElement {
    a.element(&[x.coords()[0] as i64]).expect("first coordinate is a base element")
}

fn module_part(m: &ModuleDescriptor, x: &RingElement) -> ModuleElement {
    let coords: Vec<i64> = x.coords()[1..].iter().map(|&c| c as i64).collect();
    m.element(&coords).expect("tail coordinates are a module element")
}

/// `(a, x)` as an element of `A ⋉ M`.
pub fn pair_element(
    r: &RingDescriptor,
    a: &RingElement,
    x: &ModuleElement,
) -> Result<RingElement> {
    let mut coords: Vec<i64> = vec![a.coords()[0] as i64];
    coords.extend(x.coords().iter().map(|&c| c as i64));
    r.element(&coords)
}

/// Setwise projection `π_A(J) = {a : (a,x) ∈ J for some x}`, an ideal of `A`.
pub fn proj_a(j: &Ideal) -> Result<Ideal> {
    let (a_ring, _) = extension_parts(j.ring())?;
    let mut indices: Vec<usize> = j
        .elements()
        .iter()
        .map(|e| a_ring.index_of(&base_part(&a_ring, e)))
        .collect();
    indices.sort_unstable();
    indices.dedup();
    Ideal::from_member_indices(&a_ring, indices)
}

/// Setwise projection `π_M(J) = {x : (a,x) ∈ J for some a}`, a submodule.
pub fn proj_m(j: &Ideal) -> Result<Submodule> {
    let (_, m) = extension_parts(j.ring())?;
    let parts: Vec<ModuleElement> =
        j.elements().iter().map(|e| module_part(&m, e)).collect();
    Ok(submodule_generated(&m, &parts))
}

/// The graded slices of an ideal of `A ⋉ M` and whether they recover it.
#[derive(Clone, Debug)]
pub struct HomogeneousDecomposition {
    /// `{a : (a,0) ∈ J}`, an ideal of `A`.
    pub j0: Ideal,
    /// `{x : (0,x) ∈ J}`, a submodule of `M`.
    pub j1: Submodule,
    /// Whether `J = J0 ⋉ J1` as sets.
    pub is_homogeneous: bool,
}

/// Slices `J0 = {a : (a,0) ∈ J}` and `J1 = {x : (0,x) ∈ J}`; homogeneity is
/// set equality with `J0 ⋉ J1` (always a subset, so a cardinality check).
pub fn components(j: &Ideal) -> Result<HomogeneousDecomposition> {
    let (a_ring, m) = extension_parts(j.ring())?;
    let mut a_indices: Vec<usize> = Vec::new();
    let mut m_parts: Vec<ModuleElement> = Vec::new();
    for e in j.elements() {
        let a = base_part(&a_ring, &e);
        let x = module_part(&m, &e);
        if x == m.zero() {
            a_indices.push(a_ring.index_of(&a));
        }
        if a.coords()[0] == 0 {
            m_parts.push(x);
        }
    }
    let j0 = Ideal::from_member_indices(&a_ring, a_indices)?;
    let j1 = submodule_generated(&m, &m_parts);
    let is_homogeneous = j0.cardinality() * j1.cardinality() == j.cardinality();
    Ok(HomogeneousDecomposition { j0, j1, is_homogeneous })
}

/// `I ⋉ N = {(a,x) : a ∈ I, x ∈ N}`; an ideal exactly when `IM ⊆ N`.
pub fn homogeneous_ideal(i: &Ideal, n: &Submodule) -> Result<Ideal> {
    let m = n.module().clone();
    if m.base().to_ring() != *i.ring() {
        return Err(Error::PreconditionViolated(
            "ideal and submodule live over different base rings".into(),
        ));
    }
    let r = make_trivial_extension(i.ring(), &m)?;
    for g in i.generators() {
        let s = g.coords()[0] as i64;
        for x in m.enumerate_elements() {
            if !n.contains(&m.scalar_action(s, &x)) {
                return Err(Error::PreconditionViolated(format!(
                    "{}·M is not inside N, so I ⋉ N is not an ideal",
                    g.coords()[0]
                )));
            }
        }
    }
    let mut indices: Vec<usize> = Vec::new();
    for a in i.elements() {
        for x in n.elements() {
            indices.push(r.index_of(&pair_element(&r, &a, &x)?));
        }
    }
    indices.sort_unstable();
    Ideal::from_member_indices(&r, indices)
}

/// `S0 = π_A(S)`, a multiplicative set of `A` (projection is multiplicative
/// and cannot reach 0: a nilpotent first coordinate would force 0 into `S`).
pub fn project_mult_set(s: &MultiplicativeSet) -> Result<MultiplicativeSet> {
    let (a_ring, _) = extension_parts(s.ring())?;
    let parts: Vec<RingElement> =
        s.elements().iter().map(|e| base_part(&a_ring, e)).collect();
    mult_set_generated(&a_ring, &parts)
}

fn component_certificate(
    j: &Ideal,
    s: &MultiplicativeSet,
    base_test: impl Fn(&Ideal, &MultiplicativeSet) -> Result<SPrimalityCertificate>,
) -> Result<SPrimalityCertificate> {
    let (a_ring, m) = extension_parts(j.ring())?;
    if j.elements().iter().any(|e| s.contains(e)) {
        return Ok(Certificate::fail(Reason::DisjointnessFailure));
    }
    let s0 = project_mult_set(s)?;
    let decomp = components(j)?;
    let base = base_test(&decomp.j0, &s0)?;
    let torsion = uniform_torsion_witness(&m, &decomp.j1, &s0)?;
    let verdict = base.verdict && torsion.is_some();
    Ok(Certificate {
        verdict,
        witness: base.witness,
        residual: base.residual,
        torsion_witness: torsion.map(|w| {
            a_ring.element(&[w as i64]).expect("witness is a base element")
        }),
        reason: if verdict { Reason::ComponentSplit } else { Reason::NoWitness },
    })
}

/// S-prime via the graded characterization: `J0` is `S0`-prime and `M/J1`
/// is uniformly `S0`-torsion.
pub fn is_s_prime_via_components(
    j: &Ideal,
    s: &MultiplicativeSet,
) -> Result<SPrimalityCertificate> {
    component_certificate(j, s, is_s_prime_definitional)
}

/// S-maximal via the graded characterization: `J0` is `S0`-maximal and
/// `M/J1` is uniformly `S0`-torsion.
pub fn is_s_maximal_via_components(
    j: &Ideal,
    s: &MultiplicativeSet,
) -> Result<SPrimalityCertificate> {
    component_certificate(j, s, is_s_maximal_definitional)
}

fn assert_prime_times_module(
    j: &Ideal,
    s0: &MultiplicativeSet,
    maximal: bool,
) -> Result<()> {
    let decomp = components(j)?;
    let base_ok = if maximal {
        is_s_maximal_definitional(&decomp.j0, s0)?.verdict
    } else {
        is_s_prime_definitional(&decomp.j0, s0)?.verdict
    };
    if decomp.is_homogeneous && decomp.j1.is_full() && base_ok {
        return Ok(());
    }
    Err(Error::Internal(
        "S-divisible module but an S-prime ideal is not of the form P ⋉ M".into(),
    ))
}

/// Every S-prime ideal of `A ⋉ M`, canonical order. When `M` is
/// `S0`-divisible, each result is checked to have the form `P ⋉ M`.
pub fn spec_s_extension(r: &RingDescriptor, s: &MultiplicativeSet) -> Result<Vec<Ideal>> {
    let (_, m) = extension_parts(r)?;
    let s0 = project_mult_set(s)?;
    let divisible = is_s_divisible(&m, &s0)?;
    let mut out = Vec::new();
    for j in enumerate_ideals(r)? {
        if is_s_prime_via_components(&j, s)?.verdict {
            if divisible {
                assert_prime_times_module(&j, &s0, false)?;
            }
            out.push(j);
        }
    }
    Ok(out)
}

/// Every S-maximal ideal of `A ⋉ M`, canonical order, with the same
/// `P ⋉ M` check in the `S0`-divisible case.
pub fn max_s_extension(r: &RingDescriptor, s: &MultiplicativeSet) -> Result<Vec<Ideal>> {
    let (_, m) = extension_parts(r)?;
    let s0 = project_mult_set(s)?;
    let divisible = is_s_divisible(&m, &s0)?;
    let mut out = Vec::new();
    for j in enumerate_ideals(r)? {
        if is_s_maximal_via_components(&j, s)?.verdict {
            if divisible {
                assert_prime_times_module(&j, &s0, true)?;
            }
            out.push(j);
        }
    }
    Ok(out)
}
