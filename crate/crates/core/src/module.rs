//! Finite modules `M = Z/d1 x ... x Z/dk` over `Z/n` or over `Z`.
//!
//! Scalars act coordinatewise, which for these base rings is the same as
//! repeated addition; consequently submodules coincide with additive
//! subgroups, and the lattice walk below enumerates exactly those.

use std::collections::{HashSet, VecDeque};

use num_integer::Integer;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::ideal::MultiplicativeSet;
use crate::ring::RingDescriptor;

/// Base rings a module may live over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseRing {
    Residue(u64),
    Integers,
}

impl BaseRing {
    pub fn to_ring(self) -> RingDescriptor {
        match self {
            BaseRing::Residue(n) => RingDescriptor::Residue(n),
            BaseRing::Integers => RingDescriptor::Integers,
        }
    }
}

/// A finite module given by its cyclic factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleDescriptor {
    base: BaseRing,
    factors: Vec<u64>,
}

/// Flat coordinates, one per cyclic factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModuleElement {
    pub(crate) coords: Vec<u64>,
}

impl ModuleElement {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }
}

/// Validates the factor list: every `di >= 1`, and `di | n` over `Z/n` so
/// the scalar action is well defined.
pub fn make_module(base: BaseRing, factors: &[u64]) -> Result<ModuleDescriptor> {
    for &d in factors {
        if d == 0 {
            return Err(Error::InvalidModule("factor 0 is not a finite cyclic group".into()));
        }
        if let BaseRing::Residue(n) = base {
            if n < 2 {
                return Err(Error::InvalidModule(format!("base Z/{n} is not a valid ring")));
            }
            if n % d != 0 {
                return Err(Error::InvalidModule(format!(
                    "factor {d} does not divide the base modulus {n}"
                )));
            }
        }
    }
    Ok(ModuleDescriptor { base, factors: factors.to_vec() })
}

impl ModuleDescriptor {
    pub fn base(&self) -> BaseRing {
        self.base
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn cardinality(&self) -> u64 {
        self.factors.iter().product()
    }

    /// Least `e >= 1` with `e * x = 0` for all `x`.
    pub fn exponent(&self) -> u64 {
        self.factors.iter().fold(1, |acc, &d| acc.lcm(&d))
    }

    pub fn zero(&self) -> ModuleElement {
        ModuleElement { coords: vec![0; self.factors.len()] }
    }

    pub fn element(&self, coords: &[i64]) -> Result<ModuleElement> {
        if coords.len() != self.factors.len() {
            return Err(Error::InvalidElement(format!(
                "expected {} coordinates, got {}",
                self.factors.len(),
                coords.len()
            )));
        }
        let coords = coords
            .iter()
            .zip(&self.factors)
            .map(|(&c, &d)| c.rem_euclid(d as i64) as u64)
            .collect();
        Ok(ModuleElement { coords })
    }

    pub fn add(&self, x: &ModuleElement, y: &ModuleElement) -> ModuleElement {
        let coords = x
            .coords
            .iter()
            .zip(&y.coords)
            .zip(&self.factors)
            .map(|((&a, &b), &d)| (a + b) % d)
            .collect();
        ModuleElement { coords }
    }

    pub fn neg(&self, x: &ModuleElement) -> ModuleElement {
        let coords = x
            .coords
            .iter()
            .zip(&self.factors)
            .map(|(&a, &d)| (d - a) % d)
            .collect();
        ModuleElement { coords }
    }

    /// `s * x` for a signed scalar drawn from the base ring.
    pub fn scalar_action(&self, s: i64, x: &ModuleElement) -> ModuleElement {
        let coords = x
            .coords
            .iter()
            .zip(&self.factors)
            .map(|(&a, &d)| {
                let s = s.rem_euclid(d as i64) as u64;
                s * a % d
            })
            .collect();
        ModuleElement { coords }
    }

    /// Additive order of `x`.
    pub fn order_of(&self, x: &ModuleElement) -> u64 {
        x.coords
            .iter()
            .zip(&self.factors)
            .fold(1u64, |acc, (&a, &d)| acc.lcm(&(d / a.gcd(&d))))
    }

    pub(crate) fn index_of(&self, x: &ModuleElement) -> usize {
        let mut idx = 0usize;
        for (&c, &d) in x.coords.iter().zip(&self.factors) {
            idx = idx * d as usize + c as usize;
        }
        idx
    }

    pub(crate) fn element_at(&self, index: usize) -> ModuleElement {
        let mut coords = vec![0; self.factors.len()];
        let mut rem = index;
        for i in (0..self.factors.len()).rev() {
            coords[i] = (rem % self.factors[i] as usize) as u64;
            rem /= self.factors[i] as usize;
        }
        ModuleElement { coords }
    }

    /// All elements in lexicographic coordinate order.
    pub fn enumerate_elements(&self) -> Vec<ModuleElement> {
        (0..self.cardinality() as usize).map(|i| self.element_at(i)).collect()
    }
}

/// A submodule, stored as its full member set plus the generators it came from.
#[derive(Clone, Debug)]
pub struct Submodule {
    module: ModuleDescriptor,
    generators: Vec<ModuleElement>,
    members: Vec<u32>,
    mask: BitSet,
}

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        self.module == other.module && self.members == other.members
    }
}
impl Eq for Submodule {}

impl Submodule {
    pub fn module(&self) -> &ModuleDescriptor {
        &self.module
    }

    pub fn generators(&self) -> &[ModuleElement] {
        &self.generators
    }

    pub fn cardinality(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: &ModuleElement) -> bool {
        self.mask.contains(self.module.index_of(x))
    }

    /// Members in ascending enumeration order.
    pub fn elements(&self) -> Vec<ModuleElement> {
        self.members.iter().map(|&i| self.module.element_at(i as usize)).collect()
    }

    pub fn is_full(&self) -> bool {
        self.members.len() as u64 == self.module.cardinality()
    }

    pub(crate) fn mask(&self) -> &BitSet {
        &self.mask
    }

    pub(crate) fn member_indices(&self) -> &[u32] {
        &self.members
    }

    pub(crate) fn from_mask(module: &ModuleDescriptor, mask: BitSet, generators: Vec<ModuleElement>) -> Self {
        let members = mask.iter().map(|i| i as u32).collect();
        Submodule { module: module.clone(), generators, members, mask }
    }
}

/// Closure of `gens` under addition; scalar multiples come for free.
pub fn submodule_generated(module: &ModuleDescriptor, gens: &[ModuleElement]) -> Submodule {
    let size = module.cardinality() as usize;
    let mut mask = BitSet::new(size);
    mask.insert(0);
    let mut queue: VecDeque<ModuleElement> = VecDeque::new();
    for g in gens {
        let idx = module.index_of(g);
        if !mask.contains(idx) {
            mask.insert(idx);
            queue.push_back(g.clone());
        }
    }
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = module.add(&x, g);
            let idx = module.index_of(&y);
            if !mask.contains(idx) {
                mask.insert(idx);
                queue.push_back(y);
            }
        }
    }
    Submodule::from_mask(module, mask, gens.to_vec())
}

pub fn zero_submodule(module: &ModuleDescriptor) -> Submodule {
    submodule_generated(module, &[])
}

pub fn full_submodule(module: &ModuleDescriptor) -> Submodule {
    let gens: Vec<ModuleElement> = (0..module.factors().len())
        .map(|i| {
            let mut coords = vec![0i64; module.factors().len()];
            coords[i] = 1;
            module.element(&coords).unwrap()
        })
        .filter(|e| *e != module.zero())
        .collect();
    submodule_generated(module, &gens)
}

/// `{ s * x : x in N }`, again a submodule.
pub fn scaled_submodule(s: i64, n: &Submodule) -> Submodule {
    let module = n.module.clone();
    let size = module.cardinality() as usize;
    let mut mask = BitSet::new(size);
    for &i in &n.members {
        let y = module.scalar_action(s, &module.element_at(i as usize));
        mask.insert(module.index_of(&y));
    }
    let gens = n.generators.iter().map(|g| module.scalar_action(s, g)).collect();
    Submodule::from_mask(&module, mask, gens)
}

/// Every submodule exactly once, sorted by cardinality then member list.
pub fn enumerate_submodules(module: &ModuleDescriptor) -> Result<Vec<Submodule>> {
    const LATTICE_LIMIT: usize = 1 << 17;
    let size = module.cardinality() as usize;
    let zero = zero_submodule(module);
    let mut seen: HashSet<BitSet> = HashSet::new();
    seen.insert(zero.mask.clone());
    let mut queue = VecDeque::from([zero.clone()]);
    let mut found = vec![zero];
    while let Some(h) = queue.pop_front() {
        for idx in 0..size {
            if h.mask.contains(idx) {
                continue;
            }
            let e = module.element_at(idx);
            let ext = extend_subgroup(module, &h, &e);
            if seen.insert(ext.mask.clone()) {
                if seen.len() > LATTICE_LIMIT {
                    return Err(Error::Unsupported(format!(
                        "submodule lattice larger than {LATTICE_LIMIT}"
                    )));
                }
                queue.push_back(ext.clone());
                found.push(ext);
            }
        }
    }
    found.sort_by(|a, b| {
        (a.members.len(), &a.members).cmp(&(b.members.len(), &b.members))
    });
    Ok(found)
}

/// `<H, e>`: members are `h + k*e`, `k` up to the order of `e`.
fn extend_subgroup(module: &ModuleDescriptor, h: &Submodule, e: &ModuleElement) -> Submodule {
    let size = module.cardinality() as usize;
    let mut mask = BitSet::new(size);
    let ord = module.order_of(e);
    for &i in &h.members {
        let mut cur = module.element_at(i as usize);
        for _ in 0..ord {
            mask.insert(module.index_of(&cur));
            cur = module.add(&cur, e);
        }
    }
    let mut gens = h.generators.clone();
    gens.push(e.clone());
    Submodule::from_mask(module, mask, gens)
}

/// First scalar in `probe` order with `s * M` inside `N`, if any.
pub(crate) fn torsion_witness_by<I>(n: &Submodule, probe: I) -> Option<u64>
where
    I: IntoIterator<Item = u64>,
{
    let module = &n.module;
    let full: Vec<ModuleElement> = module.enumerate_elements();
    probe.into_iter().find(|&s| {
        full.iter().all(|x| n.contains(&module.scalar_action(s as i64, x)))
    })
}

/// First scalar in `probe` order with `s * M != M`, if any.
pub(crate) fn divisibility_counterexample_by<I>(module: &ModuleDescriptor, probe: I) -> Option<u64>
where
    I: IntoIterator<Item = u64>,
{
    let card = module.cardinality() as usize;
    let full = full_submodule(module);
    probe
        .into_iter()
        .find(|&s| scaled_submodule(s as i64, &full).cardinality() != card)
}

fn residue_probe(module: &ModuleDescriptor, s0: &MultiplicativeSet) -> Result<Vec<u64>> {
    match (module.base(), s0.ring()) {
        (BaseRing::Residue(n), RingDescriptor::Residue(m)) if *m == n => Ok(s0
            .elements()
            .iter()
            .map(|e| e.coords()[0])
            .collect()),
        _ => Err(Error::PreconditionViolated(
            "multiplicative set must live over the module's base ring".into(),
        )),
    }
}

/// Witness `s` in `S0` (ascending) with `s * M` inside `N`; `None` when `M/N`
/// is not uniformly `S0`-torsion. Base `Z` modules go through the integer layer.
pub fn uniform_torsion_witness(
    m: &ModuleDescriptor,
    n: &Submodule,
    s0: &MultiplicativeSet,
) -> Result<Option<u64>> {
    if n.module != *m {
        return Err(Error::PreconditionViolated("submodule of a different module".into()));
    }
    Ok(torsion_witness_by(n, residue_probe(m, s0)?))
}

pub fn is_uniformly_s_torsion(
    m: &ModuleDescriptor,
    n: &Submodule,
    s0: &MultiplicativeSet,
) -> Result<bool> {
    Ok(uniform_torsion_witness(m, n, s0)?.is_some())
}

/// First violating `s` in `S0` (ascending) with `s * M != M`; `None` when `M`
/// is `S0`-divisible.
pub fn s_divisibility_counterexample(
    m: &ModuleDescriptor,
    s0: &MultiplicativeSet,
) -> Result<Option<u64>> {
    Ok(divisibility_counterexample_by(m, residue_probe(m, s0)?))
}

pub fn is_s_divisible(m: &ModuleDescriptor, s0: &MultiplicativeSet) -> Result<bool> {
    Ok(s_divisibility_counterexample(m, s0)?.is_none())
}
