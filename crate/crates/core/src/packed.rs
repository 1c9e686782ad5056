//! Covering properties of the S-prime spectrum of a finite ring: compactly
//! S-packed, coprimely S-packed, and the S-pm condition.
//!
//! Both packing checks replace the exponential sweep over families
//! `Γ ⊆ spec_S(R)` with a single worst family per ideal `Q`:
//!
//! * compact packing can only fail on `Γ_bad(Q) = spec_S(R) \ {P : ∃s, sQ ⊆ P}`,
//!   since any failing family is a subset of it and unions grow monotonically;
//! * coprime packing can only fail on the largest comaximal family
//!   `D(Q) = {P : Q + P = R}`, since failure is monotone in the family.
//!
//! Tests cross-validate both reductions against the exhaustive sweep.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::ideal::{enumerate_ideals, max_s, scaled_ideal, spec_s, Ideal, MultiplicativeSet};
use crate::ring::{RingDescriptor, RingElement};

/// A failing instance: `q` covered by `family` in a way no scaling escapes.
/// `s` is set for coprime packing, where the scaling is part of the failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackingCounterexample {
    pub q: Ideal,
    pub s: Option<RingElement>,
    pub family: Vec<Ideal>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackingReport {
    pub verdict: bool,
    /// Counterexample with the canonically smallest failing `q`.
    pub counterexample: Option<PackingCounterexample>,
}

impl PackingReport {
    fn pass() -> PackingReport {
        PackingReport { verdict: true, counterexample: None }
    }
}

fn check_same_ring(ring: &RingDescriptor, s: &MultiplicativeSet) -> Result<()> {
    if s.ring() != ring {
        return Err(Error::PreconditionViolated(
            "multiplicative set lives in a different ring".into(),
        ));
    }
    Ok(())
}

/// Compactly S-packed: every ideal covered by a family of S-prime ideals is,
/// after scaling by some `s ∈ S`, inside one family member.
pub fn is_compactly_s_packed(
    ring: &RingDescriptor,
    s: &MultiplicativeSet,
) -> Result<PackingReport> {
    check_same_ring(ring, s)?;
    let spec = spec_s(ring, s)?;
    let size = ring.order()?;
    let s_elems = s.elements();
    for q in enumerate_ideals(ring)? {
        let scaled: Vec<BitSet> = s_elems
            .iter()
            .map(|t| Ok(scaled_ideal(t, &q)?.mask().clone()))
            .collect::<Result<_>>()?;
        let mut bad_union = BitSet::new(size);
        let mut bad_family = Vec::new();
        for p in &spec {
            if !scaled.iter().any(|sq| sq.is_subset(p.mask())) {
                bad_union.union_with(p.mask());
                bad_family.push(p.clone());
            }
        }
        if q.mask().is_subset(&bad_union) {
            return Ok(PackingReport {
                verdict: false,
                counterexample: Some(PackingCounterexample { q, s: None, family: bad_family }),
            });
        }
    }
    Ok(PackingReport::pass())
}

/// Coprimely S-packed: an ideal comaximal with every member of a family of
/// S-prime ideals is never scaled into the family's union.
pub fn is_coprimely_s_packed(
    ring: &RingDescriptor,
    s: &MultiplicativeSet,
) -> Result<PackingReport> {
    check_same_ring(ring, s)?;
    let spec = spec_s(ring, s)?;
    let size = ring.order()?;
    let one = ring.one();
    let s_elems = s.elements();
    for q in enumerate_ideals(ring)? {
        // Q + P = R iff 1 - q lands in P for some q in Q.
        let q_elems = q.elements();
        let mut union = BitSet::new(size);
        let mut family = Vec::new();
        for p in &spec {
            if q_elems.iter().any(|x| p.contains(&ring.add(&one, &ring.neg(x)))) {
                union.union_with(p.mask());
                family.push(p.clone());
            }
        }
        if family.is_empty() {
            continue; // union over the empty family covers nothing
        }
        for t in &s_elems {
            if scaled_ideal(t, &q)?.mask().is_subset(&union) {
                return Ok(PackingReport {
                    verdict: false,
                    counterexample: Some(PackingCounterexample {
                        q,
                        s: Some(t.clone()),
                        family,
                    }),
                });
            }
        }
    }
    Ok(PackingReport::pass())
}

/// Exponential reference implementation of compact packing: every family
/// subset, every ideal. Validation only — the reductions above are the
/// production path.
pub fn compactly_packed_exhaustive(
    ring: &RingDescriptor,
    s: &MultiplicativeSet,
) -> Result<bool> {
    check_same_ring(ring, s)?;
    let spec = spec_s(ring, s)?;
    if spec.len() > 20 {
        return Err(Error::CapExceeded(format!(
            "exhaustive sweep over 2^{} families",
            spec.len()
        )));
    }
    let s_elems = s.elements();
    let size = ring.order()?;
    for q in enumerate_ideals(ring)? {
        let scaled: Vec<BitSet> = s_elems
            .iter()
            .map(|t| Ok(scaled_ideal(t, &q)?.mask().clone()))
            .collect::<Result<_>>()?;
        for bits in 0u32..(1 << spec.len()) {
            let mut union = BitSet::new(size);
            for (k, p) in spec.iter().enumerate() {
                if bits >> k & 1 == 1 {
                    union.union_with(p.mask());
                }
            }
            if !q.mask().is_subset(&union) {
                continue;
            }
            let absorbed = spec.iter().enumerate().any(|(k, p)| {
                bits >> k & 1 == 1 && scaled.iter().any(|sq| sq.is_subset(p.mask()))
            });
            if !absorbed {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Exponential reference implementation of coprime packing.
pub fn coprimely_packed_exhaustive(
    ring: &RingDescriptor,
    s: &MultiplicativeSet,
) -> Result<bool> {
    check_same_ring(ring, s)?;
    let spec = spec_s(ring, s)?;
    if spec.len() > 20 {
        return Err(Error::CapExceeded(format!(
            "exhaustive sweep over 2^{} families",
            spec.len()
        )));
    }
    let one = ring.one();
    let size = ring.order()?;
    let s_elems = s.elements();
    for q in enumerate_ideals(ring)? {
        let q_elems = q.elements();
        let scaled: Vec<BitSet> = s_elems
            .iter()
            .map(|t| Ok(scaled_ideal(t, &q)?.mask().clone()))
            .collect::<Result<_>>()?;
        for bits in 0u32..(1 << spec.len()) {
            let mut union = BitSet::new(size);
            let mut all_comaximal = true;
            for (k, p) in spec.iter().enumerate() {
                if bits >> k & 1 == 1 {
                    union.union_with(p.mask());
                    all_comaximal &=
                        q_elems.iter().any(|x| p.contains(&ring.add(&one, &ring.neg(x))));
                }
            }
            if !all_comaximal {
                continue;
            }
            if scaled.iter().any(|sq| sq.is_subset(&union)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PmViolationKind {
    /// No S-maximal ideal contains the S-prime ideal.
    NoContainingMaximal,
    /// Two or more S-maximal ideals contain it.
    MultipleContainingMaximals,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PmViolation {
    pub p: Ideal,
    pub containing: Vec<Ideal>,
    pub kind: PmViolationKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PmReport {
    pub verdict: bool,
    pub violation: Option<PmViolation>,
}

/// S-pm: every S-prime ideal lies in exactly one S-maximal ideal. An S-prime
/// with no containing S-maximal is reported as its own violation kind rather
/// than folded into the failure case silently.
pub fn is_s_pm(ring: &RingDescriptor, s: &MultiplicativeSet) -> Result<PmReport> {
    check_same_ring(ring, s)?;
    let maxs = max_s(ring, s)?;
    for p in spec_s(ring, s)? {
        let containing: Vec<Ideal> =
            maxs.iter().filter(|m| p.mask().is_subset(m.mask())).cloned().collect();
        if containing.len() != 1 {
            let kind = if containing.is_empty() {
                PmViolationKind::NoContainingMaximal
            } else {
                PmViolationKind::MultipleContainingMaximals
            };
            return Ok(PmReport {
                verdict: false,
                violation: Some(PmViolation { p, containing, kind }),
            });
        }
    }
    Ok(PmReport { verdict: true, violation: None })
}
