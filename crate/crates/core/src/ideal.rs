//! Ideals, multiplicative sets, and the S-prime / S-maximal decision
//! procedures over finite rings.
//!
//! Each decision comes in two independent forms: the definitional test
//! (quantifying exactly as the definition reads) and the residual test
//! (via `(I : s)`). The two are compared wholesale by the verifier; neither
//! is implemented in terms of the other.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::module::{enumerate_submodules, make_module, BaseRing};
use crate::ring::{RingDescriptor, RingElement};

// ====== certificates ======

/// Why a verdict came out the way it did.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reason {
    /// The ideal meets the multiplicative set; no S-property can hold.
    DisjointnessFailure,
    /// Disjoint, but no element of S validates the required property.
    NoWitness,
    /// A witness validating the definition verbatim.
    DefinitionalWitness,
    /// A witness whose residual is a prime ideal.
    ResidualPrime,
    /// A witness whose residual is maximal among ideals disjoint from S.
    ResidualMaximalDisjoint,
    /// Decided componentwise over a trivial extension.
    ComponentSplit,
}

impl Reason {
    pub fn tag(self) -> &'static str {
        match self {
            Reason::DisjointnessFailure => "disjointness-failure",
            Reason::NoWitness => "no-witness",
            Reason::DefinitionalWitness => "definitional-witness",
            Reason::ResidualPrime => "residual-prime",
            Reason::ResidualMaximalDisjoint => "residual-maximal-disjoint",
            Reason::ComponentSplit => "component-split",
        }
    }
}

/// Outcome of an S-prime or S-maximal test, generic over the witness and
/// ideal representations (finite-ring elements vs. integer products).
///
/// Componentwise verdicts over a trivial extension carry the base-ring
/// witness in `witness` and the torsion witness in `torsion_witness`.
#[derive(Clone, Debug)]
pub struct Certificate<W, I> {
    pub verdict: bool,
    pub witness: Option<W>,
    pub residual: Option<I>,
    pub torsion_witness: Option<W>,
    pub reason: Reason,
}

impl<W, I> Certificate<W, I> {
    pub(crate) fn fail(reason: Reason) -> Self {
        Certificate { verdict: false, witness: None, residual: None, torsion_witness: None, reason }
    }
}

pub type SPrimalityCertificate = Certificate<RingElement, Ideal>;

// ====== ideals ======

/// An ideal of a finite ring, stored as its full member set in canonical
/// (enumeration) order plus a generating set.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: RingDescriptor,
    generators: Vec<RingElement>,
    members: Vec<u32>,
    mask: BitSet,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.members == other.members
    }
}
impl Eq for Ideal {}

impl Ideal {
    pub fn ring(&self) -> &RingDescriptor {
        &self.ring
    }

    pub fn generators(&self) -> &[RingElement] {
        &self.generators
    }

    pub fn cardinality(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: &RingElement) -> bool {
        self.mask.contains(self.ring.index_of(x))
    }

    pub fn is_proper(&self) -> bool {
        !self.contains(&self.ring.one())
    }

    pub fn is_zero(&self) -> bool {
        self.members.len() == 1
    }

    /// Members in ascending enumeration order.
    pub fn elements(&self) -> Vec<RingElement> {
        self.members.iter().map(|&i| self.ring.element_at(i as usize)).collect()
    }

    pub(crate) fn mask(&self) -> &BitSet {
        &self.mask
    }

    /// Wraps a member set already known to be an ideal, choosing a small
    /// generating set greedily.
    pub(crate) fn from_member_indices(
        ring: &RingDescriptor,
        members: Vec<usize>,
    ) -> Result<Ideal> {
        let n = ring.order()?;
        let mask = BitSet::from_indices(n, members.iter().copied());
        let generators = greedy_generators(ring, &mask)?;
        debug_assert_eq!(ideal_generated(ring, &generators)?.mask, mask);
        Ok(Ideal {
            ring: ring.clone(),
            generators,
            members: members.into_iter().map(|i| i as u32).collect(),
            mask,
        })
    }
}

fn greedy_generators(ring: &RingDescriptor, mask: &BitSet) -> Result<Vec<RingElement>> {
    let mut gens: Vec<RingElement> = Vec::new();
    let mut span = ideal_generated(ring, &gens)?;
    for i in mask.iter() {
        if !span.mask.contains(i) {
            gens.push(ring.element_at(i));
            span = ideal_generated(ring, &gens)?;
        }
    }
    Ok(gens)
}

/// Closure of `gens` under addition and multiplication by every ring element.
pub fn ideal_generated(ring: &RingDescriptor, gens: &[RingElement]) -> Result<Ideal> {
    let n = ring.order()?;
    // Multiples r*g span the ideal additively; close that set under addition.
    let mut seeds: Vec<RingElement> = Vec::new();
    let mut seed_mask = BitSet::new(n);
    for g in gens {
        for i in 0..n {
            let p = ring.mul(&ring.element_at(i), g);
            let idx = ring.index_of(&p);
            if !seed_mask.contains(idx) {
                seed_mask.insert(idx);
                seeds.push(p);
            }
        }
    }
    let mut mask = BitSet::new(n);
    mask.insert(0);
    let mut queue: Vec<usize> = vec![0];
    while let Some(i) = queue.pop() {
        let x = ring.element_at(i);
        for s in &seeds {
            let y = ring.add(&x, s);
            let idx = ring.index_of(&y);
            if !mask.contains(idx) {
                mask.insert(idx);
                queue.push(idx);
            }
        }
    }
    let members = mask.iter().map(|i| i as u32).collect();
    Ok(Ideal { ring: ring.clone(), generators: gens.to_vec(), members, mask })
}

/// `(I : x) = {r : rx ∈ I}`.
pub fn residual(i: &Ideal, x: &RingElement) -> Result<Ideal> {
    let ring = &i.ring;
    let n = ring.order()?;
    let members: Vec<usize> = (0..n)
        .filter(|&r| i.mask.contains(ring.index_of(&ring.mul(&ring.element_at(r), x))))
        .collect();
    Ideal::from_member_indices(ring, members)
}

/// `(I : J) = {r : rJ ⊆ I}`.
pub fn residual_ideal(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    if i.ring != j.ring {
        return Err(Error::PreconditionViolated("residual of ideals in different rings".into()));
    }
    let ring = &i.ring;
    let n = ring.order()?;
    let members: Vec<usize> = (0..n)
        .filter(|&r| {
            let re = ring.element_at(r);
            j.elements().iter().all(|y| i.contains(&ring.mul(&re, y)))
        })
        .collect();
    Ideal::from_member_indices(ring, members)
}

/// `{t·x : x ∈ I}`, an ideal again since `I` absorbs multiplication.
pub fn scaled_ideal(t: &RingElement, i: &Ideal) -> Result<Ideal> {
    let ring = &i.ring;
    let mut members: Vec<usize> = i
        .members
        .iter()
        .map(|&x| ring.index_of(&ring.mul(t, &ring.element_at(x as usize))))
        .collect();
    members.sort_unstable();
    members.dedup();
    Ideal::from_member_indices(ring, members)
}

// ====== multiplicative sets ======

/// A multiplicative subset: contains 1, excludes 0, closed under products.
#[derive(Clone, Debug)]
pub struct MultiplicativeSet {
    ring: RingDescriptor,
    generators: Vec<RingElement>,
    members: Vec<u32>,
    mask: BitSet,
}

impl PartialEq for MultiplicativeSet {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.members == other.members
    }
}
impl Eq for MultiplicativeSet {}

impl MultiplicativeSet {
    pub fn ring(&self) -> &RingDescriptor {
        &self.ring
    }

    pub fn generators(&self) -> &[RingElement] {
        &self.generators
    }

    pub fn cardinality(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: &RingElement) -> bool {
        self.mask.contains(self.ring.index_of(x))
    }

    /// Members in ascending enumeration order.
    pub fn elements(&self) -> Vec<RingElement> {
        self.members.iter().map(|&i| self.ring.element_at(i as usize)).collect()
    }
}

/// Multiplicative closure of `gens ∪ {1}`. Errors if the closure reaches 0.
pub fn mult_set_generated(
    ring: &RingDescriptor,
    gens: &[RingElement],
) -> Result<MultiplicativeSet> {
    let n = ring.order()?;
    let one = ring.one();
    let mut mask = BitSet::new(n);
    mask.insert(ring.index_of(&one));
    let mut queue: Vec<RingElement> = vec![one];
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = ring.mul(&x, g);
            let idx = ring.index_of(&y);
            if !mask.contains(idx) {
                mask.insert(idx);
                queue.push(y);
            }
        }
    }
    if mask.contains(ring.index_of(&ring.zero())) {
        return Err(Error::InvalidMultiplicativeSet(
            "closure of the generators reaches 0".into(),
        ));
    }
    let members = mask.iter().map(|i| i as u32).collect();
    Ok(MultiplicativeSet { ring: ring.clone(), generators: gens.to_vec(), members, mask })
}

/// `S* = {x : xy ∈ S for some y}`.
pub fn saturation(s: &MultiplicativeSet) -> Result<MultiplicativeSet> {
    let ring = &s.ring;
    let n = ring.order()?;
    let members: Vec<RingElement> = (0..n)
        .map(|i| ring.element_at(i))
        .filter(|x| (0..n).any(|j| s.contains(&ring.mul(x, &ring.element_at(j)))))
        .collect();
    // The saturation is itself multiplicatively closed; regenerate to validate.
    mult_set_generated(ring, &members)
}

// ====== classical prime / maximal ======

/// `I` proper and `ab ∈ I ⇒ a ∈ I or b ∈ I`.
pub fn is_prime(i: &Ideal) -> Result<bool> {
    let ring = &i.ring;
    let n = ring.order()?;
    if !i.is_proper() {
        return Ok(false);
    }
    let muls = Muls::for_ring(ring)?;
    for a in 0..n {
        if i.mask.contains(a) {
            continue;
        }
        for b in 0..n {
            if !i.mask.contains(b) && i.mask.contains(muls.at(a, b)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `I` proper and every element outside `I` invertible modulo `I`.
pub fn is_maximal(i: &Ideal) -> Result<bool> {
    let ring = &i.ring;
    let n = ring.order()?;
    if !i.is_proper() {
        return Ok(false);
    }
    let muls = Muls::for_ring(ring)?;
    let one_plus: BitSet = BitSet::from_indices(
        n,
        i.members
            .iter()
            .map(|&x| ring.index_of(&ring.add(&ring.one(), &ring.element_at(x as usize)))),
    );
    for x in 0..n {
        if i.mask.contains(x) {
            continue;
        }
        if !(0..n).any(|y| one_plus.contains(muls.at(x, y))) {
            return Ok(false);
        }
    }
    Ok(true)
}

// ====== cached multiplication tables and ideal lattices ======

const MUL_TABLE_LIMIT: usize = 1024;

/// Multiplication on element indices, via a cached table for small rings.
pub(crate) struct Muls {
    ring: RingDescriptor,
    n: usize,
    table: Option<Arc<Vec<u32>>>,
}

impl Muls {
    pub fn for_ring(ring: &RingDescriptor) -> Result<Muls> {
        let n = ring.order()?;
        let table = if n <= MUL_TABLE_LIMIT {
            static CACHE: OnceLock<Mutex<HashMap<RingDescriptor, Arc<Vec<u32>>>>> =
                OnceLock::new();
            let cache = CACHE.get_or_init(Default::default);
            let mut guard = cache.lock().unwrap();
            Some(guard.entry(ring.clone()).or_insert_with(|| {
                let mut t = vec![0u32; n * n];
                for a in 0..n {
                    let ea = ring.element_at(a);
                    for b in a..n {
                        let idx = ring.index_of(&ring.mul(&ea, &ring.element_at(b))) as u32;
                        t[a * n + b] = idx;
                        t[b * n + a] = idx;
                    }
                }
                Arc::new(t)
            })
            .clone())
        } else {
            None
        };
        Ok(Muls { ring: ring.clone(), n, table })
    }

    #[inline]
    pub fn at(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.n + b] as usize,
            None => {
                let p = self.ring.mul(&self.ring.element_at(a), &self.ring.element_at(b));
                self.ring.index_of(&p)
            }
        }
    }
}

/// Every ideal of the ring in canonical order, with primality flags.
pub(crate) struct IdealLattice {
    pub masks: Vec<BitSet>,
    pub members: Vec<Vec<u32>>,
    pub prime: Vec<bool>,
    index: HashMap<BitSet, usize>,
}

impl IdealLattice {
    pub fn position_of(&self, mask: &BitSet) -> Option<usize> {
        self.index.get(mask).copied()
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }
}

pub(crate) fn ideal_lattice(ring: &RingDescriptor) -> Result<Arc<IdealLattice>> {
    static CACHE: OnceLock<Mutex<HashMap<RingDescriptor, Arc<IdealLattice>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().unwrap().get(ring) {
        return Ok(hit.clone());
    }
    let built = Arc::new(build_lattice(ring)?);
    cache.lock().unwrap().insert(ring.clone(), built.clone());
    Ok(built)
}

fn build_lattice(ring: &RingDescriptor) -> Result<IdealLattice> {
    let n = ring.order()?;
    let muls = Muls::for_ring(ring)?;
    // The additive group of R is a Z-module with the same coordinates, so the
    // subgroup walk from the module layer applies verbatim.
    let additive = make_module(BaseRing::Integers, &ring.coord_moduli()?)?;
    let subgroups = enumerate_submodules(&additive)?;
    let mut masks: Vec<BitSet> = Vec::new();
    let mut members: Vec<Vec<u32>> = Vec::new();
    for h in &subgroups {
        // A subgroup is an ideal iff multiples of its generators stay inside.
        let closed = h.generators().iter().all(|g| {
            let gi = additive.index_of(g);
            (0..n).all(|x| h.mask().contains(muls.at(x, gi)))
        });
        if closed {
            masks.push(h.mask().clone());
            members.push(h.member_indices().to_vec());
        }
    }
    let mut order: Vec<usize> = (0..masks.len()).collect();
    order.sort_by(|&a, &b| (members[a].len(), &members[a]).cmp(&(members[b].len(), &members[b])));
    let masks: Vec<BitSet> = order.iter().map(|&i| masks[i].clone()).collect();
    let members: Vec<Vec<u32>> = order.iter().map(|&i| members[i].clone()).collect();

    let mut prime = vec![false; masks.len()];
    let full = masks.len() - 1;
    for (k, mask) in masks.iter().enumerate() {
        if k == full {
            continue; // the whole ring is never prime
        }
        prime[k] = (0..n).all(|a| {
            mask.contains(a) || (0..n).all(|b| mask.contains(b) || !mask.contains(muls.at(a, b)))
        });
    }
    let index = masks.iter().cloned().zip(0..).collect();
    Ok(IdealLattice { masks, members, prime, index })
}

/// Every ideal exactly once, sorted by cardinality then member list.
pub fn enumerate_ideals(ring: &RingDescriptor) -> Result<Vec<Ideal>> {
    let lat = ideal_lattice(ring)?;
    lat.members
        .iter()
        .map(|m| Ideal::from_member_indices(ring, m.iter().map(|&i| i as usize).collect()))
        .collect()
}

// ====== S-prime / S-maximal decision procedures ======

/// Row masks `rows[a] = {b : ab ∈ I}`; the definitional test for a fixed
/// ideal reuses them across every candidate witness.
pub(crate) struct DefinitionalRows {
    rows: Vec<BitSet>,
}

impl DefinitionalRows {
    pub fn build(muls: &Muls, n: usize, ideal_mask: &BitSet) -> DefinitionalRows {
        let rows = (0..n)
            .map(|a| BitSet::from_indices(n, (0..n).filter(|&b| ideal_mask.contains(muls.at(a, b)))))
            .collect();
        DefinitionalRows { rows }
    }

    /// First `s` in `candidates` with `ab ∈ I ⇒ sa ∈ I or sb ∈ I`.
    pub fn witness(
        &self,
        muls: &Muls,
        n: usize,
        ideal_mask: &BitSet,
        candidates: &[u32],
    ) -> Option<usize> {
        candidates.iter().map(|&s| s as usize).find(|&s| {
            let res = residual_mask(muls, n, ideal_mask, s);
            (0..n).all(|a| res.contains(a) || self.rows[a].is_subset(&res))
        })
    }
}

/// `(I : s)` as a mask on element indices.
pub(crate) fn residual_mask(muls: &Muls, n: usize, ideal_mask: &BitSet, s: usize) -> BitSet {
    BitSet::from_indices(n, (0..n).filter(|&r| ideal_mask.contains(muls.at(r, s))))
}

/// Per-(lattice, S) data: which lattice ideals are maximal elements of the
/// poset of ideals disjoint from S.
pub(crate) struct SContext {
    pub maximal_disjoint: Vec<bool>,
}

impl SContext {
    pub fn build(lat: &IdealLattice, s_mask: &BitSet) -> SContext {
        let disjoint: Vec<bool> =
            lat.masks.iter().map(|m| !m.intersects(s_mask)).collect();
        let maximal_disjoint = (0..lat.len())
            .map(|k| {
                disjoint[k]
                    && (0..lat.len()).all(|j| {
                        j == k || !disjoint[j] || !lat.masks[k].is_subset(&lat.masks[j])
                            || lat.masks[k] == lat.masks[j]
                    })
            })
            .collect();
        SContext { maximal_disjoint }
    }
}

fn check_same_ring(i: &Ideal, s: &MultiplicativeSet) -> Result<()> {
    if i.ring != s.ring {
        return Err(Error::PreconditionViolated(
            "ideal and multiplicative set live in different rings".into(),
        ));
    }
    Ok(())
}

/// Brute-force oracle for the S-prime definition: disjointness plus a fixed
/// witness `s` with `ab ∈ I ⇒ sa ∈ I or sb ∈ I` over all pairs.
pub fn is_s_prime_definitional(i: &Ideal, s: &MultiplicativeSet) -> Result<SPrimalityCertificate> {
    check_same_ring(i, s)?;
    let ring = &i.ring;
    let n = ring.order()?;
    if i.mask.intersects(&s.mask) {
        return Ok(Certificate::fail(Reason::DisjointnessFailure));
    }
    let muls = Muls::for_ring(ring)?;
    let rows = DefinitionalRows::build(&muls, n, &i.mask);
    match rows.witness(&muls, n, &i.mask, &s.members) {
        Some(w) => {
            let we = ring.element_at(w);
            let res = residual(i, &we)?;
            Ok(Certificate {
                verdict: true,
                witness: Some(we),
                residual: Some(res),
                torsion_witness: None,
                reason: Reason::DefinitionalWitness,
            })
        }
        None => Ok(Certificate::fail(Reason::NoWitness)),
    }
}

/// S-prime via the residual characterization: some `s ∈ S` has `(I : s)` prime.
pub fn is_s_prime_residual(i: &Ideal, s: &MultiplicativeSet) -> Result<SPrimalityCertificate> {
    check_same_ring(i, s)?;
    let ring = &i.ring;
    let n = ring.order()?;
    if i.mask.intersects(&s.mask) {
        return Ok(Certificate::fail(Reason::DisjointnessFailure));
    }
    let muls = Muls::for_ring(ring)?;
    let lat = ideal_lattice(ring)?;
    for &w in &s.members {
        let res = residual_mask(&muls, n, &i.mask, w as usize);
        let k = lat.position_of(&res).expect("residual of an ideal is an ideal");
        if lat.prime[k] {
            let we = ring.element_at(w as usize);
            let res = residual(i, &we)?;
            return Ok(Certificate {
                verdict: true,
                witness: Some(we),
                residual: Some(res),
                torsion_witness: None,
                reason: Reason::ResidualPrime,
            });
        }
    }
    Ok(Certificate::fail(Reason::NoWitness))
}

/// Definitional S-maximal: a fixed `s` such that every ideal `Q ⊇ I` has
/// `sQ ⊆ I` or meets `S`.
pub fn is_s_maximal_definitional(
    i: &Ideal,
    s: &MultiplicativeSet,
) -> Result<SPrimalityCertificate> {
    check_same_ring(i, s)?;
    let ring = &i.ring;
    if i.mask.intersects(&s.mask) {
        return Ok(Certificate::fail(Reason::DisjointnessFailure));
    }
    let muls = Muls::for_ring(ring)?;
    let lat = ideal_lattice(ring)?;
    let over: Vec<usize> = (0..lat.len()).filter(|&k| i.mask.is_subset(&lat.masks[k])).collect();
    for &w in &s.members {
        let s_idx = w as usize;
        let ok = over.iter().all(|&k| {
            if lat.masks[k].intersects(&s.mask) {
                return true;
            }
            lat.members[k]
                .iter()
                .all(|&q| i.mask.contains(muls.at(s_idx, q as usize)))
        });
        if ok {
            return Ok(Certificate {
                verdict: true,
                witness: Some(ring.element_at(s_idx)),
                residual: None,
                torsion_witness: None,
                reason: Reason::DefinitionalWitness,
            });
        }
    }
    Ok(Certificate::fail(Reason::NoWitness))
}

/// S-maximal via residuals: some `s ∈ S` makes `(I : s)` a maximal element
/// of the poset of ideals disjoint from `S`.
pub fn is_s_maximal_residual(i: &Ideal, s: &MultiplicativeSet) -> Result<SPrimalityCertificate> {
    check_same_ring(i, s)?;
    let ring = &i.ring;
    let n = ring.order()?;
    if i.mask.intersects(&s.mask) {
        return Ok(Certificate::fail(Reason::DisjointnessFailure));
    }
    let muls = Muls::for_ring(ring)?;
    let lat = ideal_lattice(ring)?;
    let ctx = SContext::build(&lat, &s.mask);
    for &w in &s.members {
        let res = residual_mask(&muls, n, &i.mask, w as usize);
        let k = lat.position_of(&res).expect("residual of an ideal is an ideal");
        if ctx.maximal_disjoint[k] {
            let we = ring.element_at(w as usize);
            let res = residual(i, &we)?;
            return Ok(Certificate {
                verdict: true,
                witness: Some(we),
                residual: Some(res),
                torsion_witness: None,
                reason: Reason::ResidualMaximalDisjoint,
            });
        }
    }
    Ok(Certificate::fail(Reason::NoWitness))
}

/// All S-prime ideals (by the definitional test), canonical order.
pub fn spec_s(ring: &RingDescriptor, s: &MultiplicativeSet) -> Result<Vec<Ideal>> {
    let mut out = Vec::new();
    for i in enumerate_ideals(ring)? {
        if is_s_prime_definitional(&i, s)?.verdict {
            out.push(i);
        }
    }
    Ok(out)
}

/// All S-maximal ideals (by the definitional test), canonical order.
pub fn max_s(ring: &RingDescriptor, s: &MultiplicativeSet) -> Result<Vec<Ideal>> {
    let mut out = Vec::new();
    for i in enumerate_ideals(ring)? {
        if is_s_maximal_definitional(&i, s)?.verdict {
            out.push(i);
        }
    }
    Ok(out)
}

/// First prime ideal (canonical order) containing `I` and disjoint from `S`.
/// Existence is a theorem for disjoint inputs; exhaustion is an internal error.
pub fn find_disjoint_prime(i: &Ideal, s: &MultiplicativeSet) -> Result<Ideal> {
    check_same_ring(i, s)?;
    if i.mask.intersects(&s.mask) {
        return Err(Error::PreconditionViolated("ideal meets the multiplicative set".into()));
    }
    let lat = ideal_lattice(&i.ring)?;
    for k in 0..lat.len() {
        if lat.prime[k] && i.mask.is_subset(&lat.masks[k]) && !lat.masks[k].intersects(&s.mask) {
            return Ideal::from_member_indices(
                &i.ring,
                lat.members[k].iter().map(|&x| x as usize).collect(),
            );
        }
    }
    Err(Error::Internal(
        "no disjoint prime above a disjoint ideal; contradicts prime extension".into(),
    ))
}
