//! Discrete logarithms in generic groups, and the reduction that solves them
//! in an extension `C` of `A` by `B` without ever working natively in `C`.
//!
//! Every prime-order subgroup `G` of `C` either lies in `iota(B)`, in which
//! case `iota^-1` carries its DLP into `B`, or meets `iota(B)` trivially, in
//! which case `pi` maps it isomorphically into `A`. Pohlig-Hellman reduces any
//! smooth-order DLP in `C` to such prime-order leaves.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{self, GroupOrder};
use crate::error::{Error, Result};
use crate::extgroup::{Cocycle, Extension, GroupBackend};

/// Largest subgroup order `bsgs` accepts.
pub const BSGS_ORDER_BOUND: u64 = 1 << 40;
/// Largest subgroup order `brute_force_dlp` accepts.
pub const BRUTE_FORCE_ORDER_BOUND: u64 = 1_000_000;

/// Find `x` with `x * g = h` in the cyclic group generated by `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DlpInstance<E> {
    g: E,
    h: E,
    order: GroupOrder,
}

impl<E: Clone + Eq + Ord + fmt::Debug> DlpInstance<E> {
    /// `multiple` is any multiple of `ord(g)` (typically the group order); it
    /// is reduced to the exact order of `g`.
    pub fn new<G>(group: &G, g: E, h: E, multiple: &GroupOrder) -> Result<Self>
    where
        G: GroupBackend<Elem = E>,
    {
        let n = group.element_order(&g, multiple)?;
        let order = multiple.divisor(n)?;
        Ok(DlpInstance { g, h, order })
    }

    /// Trust the caller that `order` is exactly `ord(g)`.
    pub fn with_exact_order(g: E, h: E, order: GroupOrder) -> Self {
        DlpInstance { g, h, order }
    }

    pub fn generator(&self) -> &E {
        &self.g
    }

    pub fn target(&self) -> &E {
        &self.h
    }

    pub fn order(&self) -> &GroupOrder {
        &self.order
    }
}

/// Which group a prime-order leaf was solved in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    /// Pohlig-Hellman descent into the `l^e` part.
    PohligHellmanPrime {
        l: u64,
        e: u32,
    },
    /// Leaf moved into `B` by `iota^-1`.
    PulledBackToB,
    /// Leaf moved into `A` by `pi`.
    ProjectedToA,
    Bsgs,
    BruteForce,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::PohligHellmanPrime { l, e } => write!(f, "pohlig-hellman-prime({l},{e})"),
            Step::PulledBackToB => f.write_str("pulled-back-to-B"),
            Step::ProjectedToA => f.write_str("projected-to-A"),
            Step::Bsgs => f.write_str("bsgs"),
            Step::BruteForce => f.write_str("brute-force"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DlpSolution {
    pub x: u64,
    pub transcript: Vec<Step>,
}

impl DlpSolution {
    /// One line: `x=<x> steps=<tag>,<tag>,...`.
    pub fn record(&self) -> String {
        let tags: Vec<String> = self.transcript.iter().map(|s| format!("{s}")).collect();
        format!("x={} steps={}", self.x, tags.join(","))
    }

    /// Whether every solver step ran in `A` or `B`: each `Bsgs` or
    /// `BruteForce` step directly follows a reduction tag.
    pub fn leaves_reduced(&self) -> bool {
        self.transcript.iter().enumerate().all(|(i, s)| match s {
            Step::Bsgs | Step::BruteForce => {
                i > 0 && matches!(self.transcript[i - 1], Step::PulledBackToB | Step::ProjectedToA)
            }
            _ => true,
        })
    }

    /// Number of prime-order leaves solved.
    pub fn leaf_count(&self) -> usize {
        self.transcript.iter().filter(|s| matches!(s, Step::Bsgs | Step::BruteForce)).count()
    }
}

fn verified<G: GroupBackend>(group: &G, inst: &DlpInstance<G::Elem>, sol: DlpSolution) -> Result<DlpSolution> {
    if group.scalar_mul(sol.x, &inst.g)? == inst.h {
        Ok(sol)
    } else {
        Err(Error::NoSolution)
    }
}

/// Linear scan `x = 0, 1, 2, ...`.
pub fn brute_force_dlp<G: GroupBackend>(group: &G, inst: &DlpInstance<G::Elem>) -> Result<DlpSolution> {
    let n = inst.order.order();
    if n > BRUTE_FORCE_ORDER_BOUND {
        return Err(Error::TooLarge { what: "brute-force subgroup" });
    }
    let mut acc = group.identity();
    for x in 0..n {
        if acc == inst.h {
            return Ok(DlpSolution { x, transcript: alloc::vec![Step::BruteForce] });
        }
        acc = group.add(&acc, &inst.g)?;
    }
    Err(Error::NoSolution)
}

/// Baby-step giant-step with a table keyed by serialized elements. Baby
/// steps keep their first (smallest) exponent, so the answer is the least
/// `x` in `[0, ord g)`.
pub fn bsgs<G: GroupBackend>(group: &G, inst: &DlpInstance<G::Elem>) -> Result<DlpSolution> {
    let n = inst.order.order();
    if n > BSGS_ORDER_BOUND {
        return Err(Error::TooLarge { what: "bsgs subgroup" });
    }
    let m = ceil_sqrt(n);
    let mut table: BTreeMap<Vec<u8>, u64> = BTreeMap::new();
    let mut baby = group.identity();
    for j in 0..m {
        table.entry(group.to_bytes(&baby)).or_insert(j);
        baby = group.add(&baby, &inst.g)?;
    }
    // baby = m * g
    let giant = group.neg(&baby)?;
    let mut gamma = inst.h.clone();
    for i in 0..m {
        if let Some(&j) = table.get(&group.to_bytes(&gamma)) {
            let x = (i * m + j) % n;
            return verified(group, inst, DlpSolution { x, transcript: alloc::vec![Step::Bsgs] });
        }
        gamma = group.add(&gamma, &giant)?;
    }
    Err(Error::NoSolution)
}

fn ceil_sqrt(n: u64) -> u64 {
    // smallest r with r * r >= n
    let (mut lo, mut hi) = (0u64, 1u64 << 32);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if (mid as u128 * mid as u128) < n as u128 {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    lo.max(1)
}

/// Pohlig-Hellman: for each `l^e || ord g`, recover `x mod l^e` digit by digit
/// in the order-`l` subgroup with `leaf`, then recombine by CRT.
///
/// `leaf` receives instances whose generator has exact prime order `l`.
pub fn pohlig_hellman<G, F>(group: &G, inst: &DlpInstance<G::Elem>, mut leaf: F) -> Result<DlpSolution>
where
    G: GroupBackend,
    F: FnMut(&G, &DlpInstance<G::Elem>) -> Result<DlpSolution>,
{
    let n = inst.order.order();
    let mut transcript = Vec::new();
    let (mut x, mut modulus) = (0u64, 1u64);
    for &(l, e) in inst.order.factors() {
        transcript.push(Step::PohligHellmanPrime { l, e });
        let le = l.pow(e);
        let cofactor = n / le;
        let g_l = group.scalar_mul(cofactor, &inst.g)?;
        let h_l = group.scalar_mul(cofactor, &inst.h)?;
        // gamma has exact order l because g_l has exact order l^e
        let gamma = group.scalar_mul(le / l, &g_l)?;
        let leaf_order = GroupOrder::from_factors(l, alloc::vec![(l, 1)])?;
        let mut x_l = 0u64;
        let mut l_k = 1u64;
        for k in 0..e {
            let shifted = group.sub(&h_l, &group.scalar_mul(x_l, &g_l)?)?;
            let h_k = group.scalar_mul(l.pow(e - 1 - k), &shifted)?;
            let sub = DlpInstance::with_exact_order(gamma.clone(), h_k, leaf_order.clone());
            let d = leaf(group, &sub)?;
            transcript.extend(d.transcript);
            x_l += d.x * l_k;
            l_k *= l;
        }
        (x, modulus) = arith::crt(x, modulus, x_l, le)?;
    }
    verified(group, inst, DlpSolution { x: x % n.max(1), transcript })
}

/// A prime-order DLP moved out of the extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReducedInstance<EA, EB> {
    InA(DlpInstance<EA>),
    InB(DlpInstance<EB>),
}

impl<EA, EB> ReducedInstance<EA, EB> {
    pub fn step(&self) -> Step {
        match self {
            ReducedInstance::InA(_) => Step::ProjectedToA,
            ReducedInstance::InB(_) => Step::PulledBackToB,
        }
    }
}

/// Move the DLP in `<gen>` (prime order `l`) into `B` via `iota^-1` if
/// `pi(gen) = 0_A`, and into `A` via `pi` otherwise. Both maps are injective
/// on `<gen>`, so exponents carry over unchanged.
pub fn reduce_prime_subgroup<A, B, C>(
    ext: &Extension<A, B, C>,
    gen: &<Extension<A, B, C> as GroupBackend>::Elem,
    target: &<Extension<A, B, C> as GroupBackend>::Elem,
    l: u64,
) -> Result<ReducedInstance<A::Elem, B::Elem>>
where
    A: GroupBackend,
    B: GroupBackend,
    C: Cocycle<A, B>,
{
    if !arith::is_prime(l) || ext.is_identity(gen) || !ext.is_identity(&ext.scalar_mul(l, gen)?) {
        return Err(Error::NotOfPrimeOrder(l));
    }
    let order = GroupOrder::from_factors(l, alloc::vec![(l, 1)])?;
    if ext.a().is_identity(&ext.pi(gen)) {
        let g = ext.iota_inv(gen)?;
        // a target off iota(B) cannot lie in <gen>
        let h = ext.iota_inv(target).map_err(|_| Error::NoSolution)?;
        Ok(ReducedInstance::InB(DlpInstance::with_exact_order(g, h, order)))
    } else {
        Ok(ReducedInstance::InA(DlpInstance::with_exact_order(ext.pi(gen), ext.pi(target), order)))
    }
}

/// Pohlig-Hellman over `C` with every prime-order leaf reduced into `A` or
/// `B` and solved there by BSGS.
pub fn solve_extension_dlp<A, B, C>(
    ext: &Extension<A, B, C>,
    inst: &DlpInstance<<Extension<A, B, C> as GroupBackend>::Elem>,
) -> Result<DlpSolution>
where
    A: GroupBackend,
    B: GroupBackend,
    C: Cocycle<A, B>,
{
    pohlig_hellman(ext, inst, |ext, leaf| {
        let l = leaf.order().order();
        let reduced = reduce_prime_subgroup(ext, leaf.generator(), leaf.target(), l)?;
        let step = reduced.step();
        let mut sol = match &reduced {
            ReducedInstance::InA(sub) => bsgs(ext.a(), sub)?,
            ReducedInstance::InB(sub) => bsgs(ext.b(), sub)?,
        };
        sol.transcript.insert(0, step);
        Ok(sol)
    })
}
