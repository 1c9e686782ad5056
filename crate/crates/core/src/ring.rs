//! Finite commutative rings with identity, described structurally.
//!
//! Supported shapes: residue rings `Z/n`, direct products, and trivial
//! extensions `A ⋉ M` of a residue ring by a finite module. A marker for the
//! integers exists so that `Z`-based objects can be named and routed to the
//! dedicated integer layer; it is rejected by every enumeration here.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::module::{BaseRing, ModuleDescriptor};

/// Default bound on the cardinality of constructible enumerable rings.
pub const DEFAULT_MAX_CARDINALITY: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cardinality {
    Finite(u64),
    Infinite,
}

/// Structural description of a ring. Equality is structural: `Z/6` and
/// `Z/2 x Z/3` are isomorphic but distinct descriptors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingDescriptor {
    /// `Z/n` with `n >= 2`; the zero ring is rejected.
    Residue(u64),
    /// Direct product with componentwise operations.
    Product(Arc<RingDescriptor>, Arc<RingDescriptor>),
    /// `A ⋉ M` on pairs `(a, x)` with `(a,x)(b,y) = (ab, ay + bx)`.
    /// The base ring is carried by the module descriptor.
    TrivialExtension(ModuleDescriptor),
    /// The ring of integers; a routing marker, not enumerable.
    Integers,
}

/// An element, stored as flat non-negative coordinates in the lexicographic
/// coordinate system of its ring (one coordinate per residue factor).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElement {
    pub(crate) coords: Vec<u64>,
}

impl RingElement {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }
}

/// `Z/n`. Errors on `n < 2` (the zero ring is not a valid input) and on
/// rings larger than `max` elements.
pub fn make_residue_ring_with_cap(n: u64, max: u64) -> Result<RingDescriptor> {
    if n < 2 {
        return Err(Error::InvalidRing(format!(
            "residue ring needs modulus >= 2, got {n}"
        )));
    }
    if n > max {
        return Err(Error::CapExceeded(format!("|Z/{n}| = {n} > {max}")));
    }
    Ok(RingDescriptor::Residue(n))
}

pub fn make_residue_ring(n: u64) -> Result<RingDescriptor> {
    make_residue_ring_with_cap(n, DEFAULT_MAX_CARDINALITY)
}

/// Componentwise product of two finite rings.
pub fn make_product_ring_with_cap(
    left: &RingDescriptor,
    right: &RingDescriptor,
    max: u64,
) -> Result<RingDescriptor> {
    let (Cardinality::Finite(a), Cardinality::Finite(b)) = (left.cardinality(), right.cardinality())
    else {
        return Err(Error::Unsupported(
            "product over the integers is not supported".into(),
        ));
    };
    let card = a.checked_mul(b).unwrap_or(u64::MAX);
    if card > max {
        return Err(Error::CapExceeded(format!("|product| = {card} > {max}")));
    }
    Ok(RingDescriptor::Product(
        Arc::new(left.clone()),
        Arc::new(right.clone()),
    ))
}

pub fn make_product_ring(left: &RingDescriptor, right: &RingDescriptor) -> Result<RingDescriptor> {
    make_product_ring_with_cap(left, right, DEFAULT_MAX_CARDINALITY)
}

impl RingDescriptor {
    /// Number of flat coordinates of an element.
    pub(crate) fn width(&self) -> usize {
        match self {
            RingDescriptor::Residue(_) | RingDescriptor::Integers => 1,
            RingDescriptor::Product(l, r) => l.width() + r.width(),
            RingDescriptor::TrivialExtension(m) => 1 + m.factors().len(),
        }
    }

    /// Modulus of each flat coordinate, in order. Errors on `Z`-based rings.
    pub(crate) fn coord_moduli(&self) -> Result<Vec<u64>> {
        let mut out = Vec::with_capacity(self.width());
        self.push_moduli(&mut out)?;
        Ok(out)
    }

    fn push_moduli(&self, out: &mut Vec<u64>) -> Result<()> {
        match self {
            RingDescriptor::Residue(n) => out.push(*n),
            RingDescriptor::Product(l, r) => {
                l.push_moduli(out)?;
                r.push_moduli(out)?;
            }
            RingDescriptor::TrivialExtension(m) => match m.base() {
                BaseRing::Residue(n) => {
                    out.push(n);
                    out.extend_from_slice(m.factors());
                }
                BaseRing::Integers => {
                    return Err(Error::Unsupported(
                        "Z ⋉ M is infinite; use the integer layer".into(),
                    ))
                }
            },
            RingDescriptor::Integers => {
                return Err(Error::Unsupported(
                    "Z is infinite; use the integer layer".into(),
                ))
            }
        }
        Ok(())
    }

    pub fn cardinality(&self) -> Cardinality {
        match self.coord_moduli() {
            Ok(moduli) => Cardinality::Finite(moduli.iter().product()),
            Err(_) => Cardinality::Infinite,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.cardinality(), Cardinality::Finite(_))
    }

    /// Finite cardinality, or an `unsupported` error for `Z`-based rings.
    pub(crate) fn order(&self) -> Result<usize> {
        match self.cardinality() {
            Cardinality::Finite(n) => Ok(n as usize),
            Cardinality::Infinite => Err(Error::Unsupported(
                "operation needs a finite ring".into(),
            )),
        }
    }

    pub fn zero(&self) -> RingElement {
        RingElement { coords: vec![0; self.width()] }
    }

    pub fn one(&self) -> RingElement {
        let mut coords = vec![0; self.width()];
        self.write_one(&mut coords);
        RingElement { coords }
    }

    fn write_one(&self, out: &mut [u64]) {
        match self {
            RingDescriptor::Residue(n) => out[0] = 1 % n,
            RingDescriptor::Integers => out[0] = 1,
            RingDescriptor::Product(l, r) => {
                let w = l.width();
                l.write_one(&mut out[..w]);
                r.write_one(&mut out[w..]);
            }
            // (1, 0) is the identity of A ⋉ M.
            RingDescriptor::TrivialExtension(_) => out[0] = 1,
        }
    }

    /// Builds an element from signed coordinates, reducing each mod its modulus.
    pub fn element(&self, coords: &[i64]) -> Result<RingElement> {
        let moduli = self.coord_moduli()?;
        if coords.len() != moduli.len() {
            return Err(Error::InvalidElement(format!(
                "expected {} coordinates, got {}",
                moduli.len(),
                coords.len()
            )));
        }
        let coords = coords
            .iter()
            .zip(&moduli)
            .map(|(&c, &m)| c.rem_euclid(m as i64) as u64)
            .collect();
        Ok(RingElement { coords })
    }

    pub fn add(&self, x: &RingElement, y: &RingElement) -> RingElement {
        let moduli = self.coord_moduli().expect("finite ring");
        let coords = x
            .coords
            .iter()
            .zip(&y.coords)
            .zip(&moduli)
            .map(|((&a, &b), &m)| (a + b) % m)
            .collect();
        RingElement { coords }
    }

    pub fn neg(&self, x: &RingElement) -> RingElement {
        let moduli = self.coord_moduli().expect("finite ring");
        let coords = x
            .coords
            .iter()
            .zip(&moduli)
            .map(|(&a, &m)| (m - a) % m)
            .collect();
        RingElement { coords }
    }

    pub fn mul(&self, x: &RingElement, y: &RingElement) -> RingElement {
        let mut coords = vec![0; self.width()];
        self.mul_into(&x.coords, &y.coords, &mut coords);
        RingElement { coords }
    }

    fn mul_into(&self, x: &[u64], y: &[u64], out: &mut [u64]) {
        match self {
            RingDescriptor::Residue(n) => out[0] = mulmod(x[0], y[0], *n),
            RingDescriptor::Integers => unreachable!("integers are not enumerable"),
            RingDescriptor::Product(l, r) => {
                let w = l.width();
                l.mul_into(&x[..w], &y[..w], &mut out[..w]);
                r.mul_into(&x[w..], &y[w..], &mut out[w..]);
            }
            RingDescriptor::TrivialExtension(m) => {
                let n = match m.base() {
                    BaseRing::Residue(n) => n,
                    BaseRing::Integers => unreachable!("Z ⋉ M is not enumerable"),
                };
                out[0] = mulmod(x[0], y[0], n);
                // (a, u)(b, v) = (ab, av + bu), scalars acting per factor.
                for (i, &d) in m.factors().iter().enumerate() {
                    out[1 + i] = (mulmod(x[0], y[1 + i], d) + mulmod(y[0], x[1 + i], d)) % d;
                }
            }
        }
    }

    pub fn pow(&self, x: &RingElement, k: u64) -> RingElement {
        let mut acc = self.one();
        let mut base = x.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// Position of `x` in the lexicographic enumeration.
    pub(crate) fn index_of(&self, x: &RingElement) -> usize {
        let moduli = self.coord_moduli().expect("finite ring");
        let mut idx = 0usize;
        for (&c, &m) in x.coords.iter().zip(&moduli) {
            idx = idx * m as usize + c as usize;
        }
        idx
    }

    pub(crate) fn element_at(&self, index: usize) -> RingElement {
        let moduli = self.coord_moduli().expect("finite ring");
        let mut coords = vec![0; moduli.len()];
        let mut rem = index;
        for i in (0..moduli.len()).rev() {
            coords[i] = (rem % moduli[i] as usize) as u64;
            rem /= moduli[i] as usize;
        }
        RingElement { coords }
    }

    /// All elements in lexicographic coordinate order, starting at zero.
    pub fn enumerate_elements(&self) -> Result<Vec<RingElement>> {
        let n = self.order()?;
        Ok((0..n).map(|i| self.element_at(i)).collect())
    }

    /// Elements with a multiplicative inverse, ascending.
    pub fn units(&self) -> Result<Vec<RingElement>> {
        let n = self.order()?;
        let one = self.one();
        let mut out = Vec::new();
        for i in 0..n {
            let x = self.element_at(i);
            let invertible = (0..n).any(|j| self.mul(&x, &self.element_at(j)) == one);
            if invertible {
                out.push(x);
            }
        }
        Ok(out)
    }

    pub(crate) fn is_nilpotent(&self, x: &RingElement) -> bool {
        // x^(2^k) sweeps past any nilpotency index once 2^k >= |R|.
        let n = self.order().expect("finite ring") as u64;
        let zero = self.zero();
        let mut p = x.clone();
        let mut covered = 1u64;
        loop {
            if p == zero {
                return true;
            }
            if covered >= n {
                return false;
            }
            p = self.mul(&p, &p);
            covered = covered.saturating_mul(2);
        }
    }

    /// The nilradical, returned as an ideal.
    pub fn nilradical(&self) -> Result<Ideal> {
        let n = self.order()?;
        let members: Vec<usize> = (0..n)
            .filter(|&i| self.is_nilpotent(&self.element_at(i)))
            .collect();
        Ideal::from_member_indices(self, members)
    }
}

/// `(a * b) mod m` without overflow for any `u64` inputs.
#[inline]
pub(crate) fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}
