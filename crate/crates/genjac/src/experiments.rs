//! Seeded experiments shared by the CLI subcommands.

use genjac_core::arith::GroupOrder;
use genjac_core::curve::{Curve, Point, DEFAULT_ENUMERATION_BOUND};
use genjac_core::dlp::{solve_extension_dlp, DlpInstance, DlpSolution};
use genjac_core::extgroup::{verify_cocycle, ExtElement, GroupBackend};
use genjac_core::field::Fe;
use genjac_core::genjac::{miller_tate_oracle, tate_via_genjac, GenJacCocycle, GenJacParams, JacElement};
use genjac_core::{Error, Result};
use rand::Rng;

const ENUMERATE_BELOW: u128 = 1 << 16;

/// Draws points uniformly from a curve, by enumeration when the field is small.
pub struct PointSampler<'a> {
    curve: &'a Curve,
    points: Option<Vec<Point>>,
}

impl<'a> PointSampler<'a> {
    pub fn new(curve: &'a Curve) -> Result<Self> {
        let small = curve.field().order().is_some_and(|q| q <= ENUMERATE_BELOW);
        let points = if small { Some(curve.enumerate_points(DEFAULT_ENUMERATION_BOUND)?) } else { None };
        Ok(PointSampler { curve, points })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Point> {
        match &self.points {
            Some(pts) => Ok(pts[rng.random_range(0..pts.len())]),
            None => self.curve.random_point(rng),
        }
    }
}

pub fn random_jac_element<R: Rng + ?Sized>(
    params: &GenJacParams,
    points: &PointSampler<'_>,
    rng: &mut R,
) -> Result<JacElement> {
    Ok(ExtElement::new(points.sample(rng)?, params.ext_curve().field().random_nonzero(rng)))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CocycleRun {
    pub admissible: usize,
    pub failures: usize,
    /// Triples drawn but discarded because a line met `M` or `N`.
    pub inadmissible: usize,
}

/// Check both cocycle relations for `c_m` on `wanted` admissible triples of
/// points of `E(K)`, where support collisions can occur.
pub fn check_cocycle_over_extension<R: Rng + ?Sized>(
    params: &GenJacParams,
    wanted: usize,
    rng: &mut R,
) -> Result<CocycleRun> {
    let jac = params.group_over_extension();
    let cocycle = GenJacCocycle::new(*params.modulus());
    let sampler = PointSampler::new(params.ext_curve())?;
    let mut run = CocycleRun::default();
    while run.admissible < wanted {
        let triple = (sampler.sample(rng)?, sampler.sample(rng)?, sampler.sample(rng)?);
        let report = verify_cocycle(jac.a(), jac.b(), &cocycle, &[triple]);
        if report.undefined() > 0 {
            run.inadmissible += 1;
            if run.inadmissible > 100 * wanted.max(1) {
                return Err(Error::SupportCollision);
            }
            continue;
        }
        run.admissible += 1;
        run.failures += report.failures();
    }
    Ok(run)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AxiomRun {
    pub triples: usize,
    pub associativity: usize,
    pub commutativity: usize,
    pub identity: usize,
    pub inverse: usize,
}

impl AxiomRun {
    pub fn failures(&self) -> usize {
        self.associativity + self.commutativity + self.identity + self.inverse
    }
}

/// Group axioms for `Jac(E, m)` on random triples of `E(k) x G_m(K)`.
pub fn check_axioms<R: Rng + ?Sized>(params: &GenJacParams, triples: usize, rng: &mut R) -> Result<AxiomRun> {
    let jac = params.group();
    let points = PointSampler::new(params.base_curve())?;
    let zero = jac.identity();
    let mut run = AxiomRun { triples, ..AxiomRun::default() };
    for _ in 0..triples {
        let x = random_jac_element(params, &points, rng)?;
        let y = random_jac_element(params, &points, rng)?;
        let z = random_jac_element(params, &points, rng)?;
        let xy = jac.add(&x, &y)?;
        run.associativity += usize::from(jac.add(&xy, &z)? != jac.add(&x, &jac.add(&y, &z)?)?);
        run.commutativity += usize::from(xy != jac.add(&y, &x)?);
        run.identity += usize::from(jac.add(&x, &zero)? != x || jac.add(&zero, &x)? != x);
        run.inverse += usize::from(jac.add(&x, &jac.neg(&x)?)? != zero);
    }
    Ok(run)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttackOutcome {
    pub order: GroupOrder,
    pub generator: JacElement,
    pub target: JacElement,
    pub secret: u64,
    pub solution: DlpSolution,
}

#[derive(Debug, thiserror::Error)]
pub enum AttackError {
    #[error("found no element of order {0}; the group may have no cyclic subgroup of that order")]
    NoElementOfOrder(u64),
    #[error("recovered exponent {found} but planted {planted}")]
    WrongExponent { found: u64, planted: u64 },
    #[error(transparent)]
    Core(#[from] Error),
}

/// An element of `Jac(E, m)` of exact order `n`, found by scaling random
/// elements whose order `n` divides. `None` after 1000 unsuccessful draws.
pub fn element_of_order<R: Rng + ?Sized>(params: &GenJacParams, n: u64, rng: &mut R) -> Result<Option<JacElement>> {
    let jac_order = params.jac_order()?;
    jac_order.divisor(n)?;
    let jac = params.group();
    let points = PointSampler::new(params.base_curve())?;
    for _ in 0..1000 {
        let x = random_jac_element(params, &points, rng)?;
        let o = jac.element_order(&x, &jac_order)?;
        if o % n == 0 {
            return jac.scalar_mul(o / n, &x).map(Some);
        }
    }
    Ok(None)
}

/// Plant a random exponent in a cyclic subgroup of order `n` and recover it
/// through the extension structure.
pub fn run_attack<R: Rng + ?Sized>(
    params: &GenJacParams,
    n: u64,
    rng: &mut R,
) -> std::result::Result<AttackOutcome, AttackError> {
    let jac = params.group();
    let generator = element_of_order(params, n, rng)?.ok_or(AttackError::NoElementOfOrder(n))?;
    let secret = rng.random_range(0..n);
    let target = jac.scalar_mul(secret, &generator)?;
    let order = params.jac_order()?.divisor(n)?;
    let inst = DlpInstance::with_exact_order(generator.clone(), target.clone(), order.clone());
    let solution = solve_extension_dlp(&jac, &inst)?;
    if solution.x != secret {
        return Err(AttackError::WrongExponent { found: solution.x, planted: secret });
    }
    Ok(AttackOutcome { order, generator, target, secret, solution })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingOutcome {
    pub m: u64,
    pub via_genjac: Fe,
    pub miller: Fe,
    pub reduced: Fe,
}

impl PairingOutcome {
    pub fn agree(&self) -> bool {
        self.via_genjac == self.miller
    }
}

pub fn run_pairing(params: &GenJacParams, p: &Point) -> Result<PairingOutcome> {
    let m = params.pairing_order(p)?;
    let via_genjac = tate_via_genjac(params, p)?;
    let modulus = params.modulus();
    let miller = miller_tate_oracle(params.ext_curve(), p, modulus.m(), modulus.n(), m)?;
    let reduced = params.reduce_pairing(&via_genjac, m)?;
    Ok(PairingOutcome { m, via_genjac, miller, reduced })
}
