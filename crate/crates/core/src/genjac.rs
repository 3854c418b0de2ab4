//! The generalized Jacobian `Jac(E, m)` for a modulus `m = (M) + (N)`.
//!
//! `Jac(E, m)` is the extension of `E` by `G_m` presented by
//! `c_m(P, Q) = f_{P,Q}(M) / f_{P,Q}(N)`, so that
//! `(P, lambda) + (Q, mu) = (P + Q, lambda * mu * c_m(P, Q))`.
//!
//! Points `P, Q` live in `E(k)` for the prime field `k`; `M`, `N` and the
//! multiplicative part live over an extension `K`. Taking `M, N` outside
//! `E(k)` keeps every line function defined on `E(k)` away from them.
//!
//! Multiplying `(P, 1)` by `m = lcm(ord P, ord(M - N))` runs a Miller loop in
//! disguise and lands on `(O, <P, M - N>_m^{-1})`.

use rand::Rng;

use crate::arith::{self, GroupOrder};
use crate::curve::{Curve, Point, DEFAULT_ENUMERATION_BOUND};
use crate::error::{Error, Result};
use crate::extgroup::{Cocycle, CocycleKind, DirectProduct, EcGroup, ExtElement, Extension, GroupBackend, MulGroup};
use crate::field::{ExtFieldParams, Fe, Field, MulCounter, PrimeFieldParams};

/// `m = (M) + (N)` with `M != N` and neither equal to `O`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Modulus {
    m: Point,
    n: Point,
}

impl Modulus {
    pub fn new(m: Point, n: Point) -> Result<Self> {
        if m.is_infinity() || n.is_infinity() {
            return Err(Error::InvalidModulus("M and N must differ from O"));
        }
        if m == n {
            return Err(Error::InvalidModulus("M and N must be distinct"));
        }
        Ok(Modulus { m, n })
    }

    pub fn m(&self) -> &Point {
        &self.m
    }

    pub fn n(&self) -> &Point {
        &self.n
    }
}

/// `c_m` for a fixed modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenJacCocycle {
    modulus: Modulus,
}

impl GenJacCocycle {
    pub fn new(modulus: Modulus) -> Self {
        GenJacCocycle { modulus }
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }
}

impl Cocycle<EcGroup, MulGroup> for GenJacCocycle {
    /// `f_{P,Q}(M) / f_{P,Q}(N)` with the line built on `A`'s curve and
    /// evaluated in `B`'s field.
    fn eval(&self, a: &EcGroup, b: &MulGroup, p: &Point, q: &Point) -> Result<Fe> {
        let line = a.curve().line_fraction(p, q);
        let field = b.field();
        let at_m = line.eval(field, &self.modulus.m)?;
        let at_n = line.eval(field, &self.modulus.n)?;
        field.div(&at_m, &at_n)
    }

    fn kind(&self) -> CocycleKind {
        CocycleKind::GeneralizedJacobian
    }
}

pub type JacElement = ExtElement<Point, Fe>;
pub type GenJac = Extension<EcGroup, MulGroup, GenJacCocycle>;

/// Everything needed to compute in `Jac(E, m)`: `E` over `k` and over `K`,
/// the modulus, and the orders of `E(k)`, `E(K)` and `G_m(K)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenJacParams {
    base: Curve,
    ext: Curve,
    modulus: Modulus,
    base_order: GroupOrder,
    ext_order: GroupOrder,
    gm_order: GroupOrder,
}

impl GenJacParams {
    /// Assemble and check parameters. `base` must be over a prime field and
    /// `ext` must be the same curve over an extension of it. Orders are
    /// re-derived and compared; point counts are confirmed by enumeration
    /// when the field is small enough.
    pub fn from_parts(
        base: Curve,
        ext: Curve,
        modulus: Modulus,
        base_order: GroupOrder,
        ext_order: GroupOrder,
        gm_order: GroupOrder,
    ) -> Result<Self> {
        let (kf, bigf) = (base.field(), ext.field());
        if kf.degree() != 1 || kf.characteristic() != bigf.characteristic() {
            return Err(Error::FieldMismatch);
        }
        if base.base_change(bigf.clone())? != ext {
            return Err(Error::FieldMismatch);
        }
        if !ext.is_on_curve(modulus.m()) || !ext.is_on_curve(modulus.n()) {
            return Err(Error::NotOnCurve);
        }
        let q = bigf.order().ok_or(Error::TooLarge { what: "extension field" })?;
        if u128::from(gm_order.order()) + 1 != q {
            return Err(Error::InvalidFactorization("|G_m(K)| must be q - 1"));
        }
        let p = kf.characteristic();
        let expected_ext = crate::curve::extension_point_count(p, base_order.order(), bigf.degree() as u32)?;
        if expected_ext != ext_order.order() {
            return Err(Error::InvalidFactorization("#E(K) inconsistent with #E(k)"));
        }
        if p <= DEFAULT_ENUMERATION_BOUND && base.count_points(DEFAULT_ENUMERATION_BOUND)? != base_order.order() {
            return Err(Error::InvalidFactorization("#E(k) does not match enumeration"));
        }
        if q <= DEFAULT_ENUMERATION_BOUND as u128 && ext.count_points(DEFAULT_ENUMERATION_BOUND)? != ext_order.order() {
            return Err(Error::InvalidFactorization("#E(K) does not match enumeration"));
        }
        Ok(GenJacParams { base, ext, modulus, base_order, ext_order, gm_order })
    }

    /// Compute all orders for `base` over `ext_field` and the given modulus.
    pub fn new(base: Curve, ext_field: Field, modulus: Modulus) -> Result<Self> {
        let ext = base.base_change(ext_field)?;
        let p = base.field().characteristic();
        let n1 = base.count_points(DEFAULT_ENUMERATION_BOUND)?;
        let nk = crate::curve::extension_point_count(p, n1, ext.field().degree() as u32)?;
        let q = ext.field().order().ok_or(Error::TooLarge { what: "extension field" })?;
        let gm = u64::try_from(q - 1).map_err(|_| Error::TooLarge { what: "extension field" })?;
        Self::from_parts(base, ext, modulus, GroupOrder::new(n1)?, GroupOrder::new(nk)?, GroupOrder::new(gm)?)
    }

    /// The supersingular toy family `y^2 = x^3 + x` over `F_p`, `p = 3 (mod 4)`,
    /// with `K = F_p[u]/(u^2 + 1)` and `M`, `N` drawn from `E(K) \ E(k)`.
    pub fn generate<R: Rng + ?Sized>(p: u64, rng: &mut R) -> Result<Self> {
        let prime = PrimeFieldParams::new(p)?;
        let ext_params = ExtFieldParams::default_quadratic(prime)?;
        let counter = MulCounter::new();
        let k = Field::with_counter(ExtFieldParams::prime(prime), counter.clone());
        let big = Field::with_counter(ext_params, counter);
        let base = Curve::new(k.clone(), k.one(), k.zero())?;
        let ext = base.base_change(big.clone())?;
        let m = sample_off_base(&ext, rng)?;
        let n = loop {
            let n = sample_off_base(&ext, rng)?;
            if n != m {
                break n;
            }
        };
        Self::new(base, big, Modulus::new(m, n)?)
    }

    pub fn base_curve(&self) -> &Curve {
        &self.base
    }

    pub fn ext_curve(&self) -> &Curve {
        &self.ext
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn base_order(&self) -> &GroupOrder {
        &self.base_order
    }

    pub fn ext_order(&self) -> &GroupOrder {
        &self.ext_order
    }

    pub fn gm_order(&self) -> &GroupOrder {
        &self.gm_order
    }

    /// `|Jac(E, m)| = #E(k) * |G_m(K)|` for the group on `E(k) x G_m(K)`.
    pub fn jac_order(&self) -> Result<GroupOrder> {
        self.base_order.product(&self.gm_order)
    }

    /// `E(k)`.
    pub fn curve_group(&self) -> EcGroup {
        EcGroup::new(self.base.clone())
    }

    /// `G_m(K)`.
    pub fn gm_group(&self) -> MulGroup {
        MulGroup::new(self.ext.field().clone())
    }

    /// `Jac(E, m)` on `E(k) x G_m(K)`.
    pub fn group(&self) -> GenJac {
        Extension::new(self.curve_group(), self.gm_group(), GenJacCocycle::new(self.modulus))
    }

    /// `Jac(E, m)` on `E(K) x G_m(K)`. Here sums may hit `M` or `N`, in which
    /// case the law reports a support collision.
    pub fn group_over_extension(&self) -> GenJac {
        Extension::new(EcGroup::new(self.ext.clone()), self.gm_group(), GenJacCocycle::new(self.modulus))
    }

    /// `E(k) x G_m(K)` with the componentwise law.
    pub fn direct_product(&self) -> DirectProduct<EcGroup, MulGroup> {
        DirectProduct::direct_product(self.curve_group(), self.gm_group())
    }

    /// The same parameters with both fields charging `counter`.
    pub fn recounted(&self, counter: MulCounter) -> GenJacParams {
        GenJacParams { base: self.base.recounted(counter.clone()), ext: self.ext.recounted(counter), ..self.clone() }
    }

    pub fn counter(&self) -> &MulCounter {
        self.base.field().counter()
    }

    /// `M - N` in `E(K)`.
    pub fn modulus_difference(&self) -> Point {
        self.ext.add(&self.modulus.m, &self.ext.neg(&self.modulus.n))
    }

    /// `lcm(ord P, ord(M - N))`, the index used for `<P, M - N>_m`.
    pub fn pairing_order(&self, p: &Point) -> Result<u64> {
        let ord_p = self.base.element_order(p, &self.base_order)?;
        let ord_d = self.ext.element_order(&self.modulus_difference(), &self.ext_order)?;
        arith::lcm(ord_p, ord_d)
    }

    /// `t^((q^k - 1) / m)`, the canonical representative of a pairing value.
    pub fn reduce_pairing(&self, value: &Fe, m: u64) -> Result<Fe> {
        let order = self.gm_order.order();
        if m == 0 || order % m != 0 {
            return Err(Error::InvalidFactorization("pairing order does not divide |G_m(K)|"));
        }
        self.ext.field().pow(value, u128::from(order / m))
    }
}

fn sample_off_base<R: Rng + ?Sized>(ext: &Curve, rng: &mut R) -> Result<Point> {
    loop {
        let pt = ext.random_point(rng)?;
        if let Some((x, y)) = pt.coords() {
            if !(x.is_in_prime_subfield() && y.is_in_prime_subfield()) {
                return Ok(pt);
            }
        }
    }
}

/// `c_m(P, Q)` for `P, Q` in `E(k)`.
pub fn cocycle_cm(params: &GenJacParams, p: &Point, q: &Point) -> Result<Fe> {
    GenJacCocycle::new(params.modulus).eval(&params.curve_group(), &params.gm_group(), p, q)
}

/// The displayed law `(P, lambda) + (Q, mu) = (P + Q, lambda * mu * c_m(P, Q))`,
/// written out directly rather than through [`Extension`].
pub fn genjac_add(params: &GenJacParams, x: &JacElement, y: &JacElement) -> Result<JacElement> {
    let big = params.ext.field();
    let c = cocycle_cm(params, &x.a, &y.a)?;
    let a = params.base.add(&x.a, &y.a);
    Ok(ExtElement::new(a, big.mul(&big.mul(&x.b, &y.b), &c)))
}

/// `<P, M - N>_m` read off from `m * (P, 1) = (O, <P, M - N>_m^{-1})`.
pub fn tate_via_genjac(params: &GenJacParams, p: &Point) -> Result<Fe> {
    let m = params.pairing_order(p)?;
    let jac = params.group();
    let r = jac.scalar_mul(m, &ExtElement::new(*p, params.ext.field().one()))?;
    if !r.a.is_infinity() {
        return Err(Error::ChainNotClosed);
    }
    params.ext.field().inv(&r.b)
}

/// `f_{m,P}(M) / f_{m,P}(N)` with `div f_{m,P} = m(P) - m(O)`, by a Miller
/// loop over `E(K)`.
///
/// The loop keeps numerator and denominator at `M` and `N` separately and
/// divides once at the end. It shares no code with the cocycle path beyond
/// point addition.
pub fn miller_tate_oracle(ext: &Curve, p: &Point, m_pt: &Point, n_pt: &Point, m: u64) -> Result<Fe> {
    let f = ext.field();
    let p = ext.embed(p)?;
    if m == 0 {
        return Err(Error::OrderMismatch);
    }
    if !ext.scalar_mul(m as i128, &p).is_infinity() {
        return Err(Error::OrderMismatch);
    }
    // [num(M), den(M), num(N), den(N)]
    let mut acc = [f.one(), f.one(), f.one(), f.one()];
    let absorb = |acc: &mut [Fe; 4], t: &Point, s: &Point| -> Result<()> {
        // l_{T,S} / v_{T+S}
        let (lm, vm) = line_over_vertical(ext, t, s, m_pt)?;
        let (ln, vn) = line_over_vertical(ext, t, s, n_pt)?;
        acc[0] = f.mul(&acc[0], &lm);
        acc[1] = f.mul(&acc[1], &vm);
        acc[2] = f.mul(&acc[2], &ln);
        acc[3] = f.mul(&acc[3], &vn);
        Ok(())
    };
    let mut t = p;
    for bit in (0..(63 - m.leading_zeros())).rev() {
        for v in acc.iter_mut() {
            *v = f.square(v);
        }
        absorb(&mut acc, &t, &t)?;
        t = ext.double(&t);
        if (m >> bit) & 1 == 1 {
            absorb(&mut acc, &t, &p)?;
            t = ext.add(&t, &p);
        }
    }
    let at_m = f.div(&acc[0], &acc[1])?;
    let at_n = f.div(&acc[2], &acc[3])?;
    f.div(&at_m, &at_n)
}

/// `(l(X), v(X))` for the line through `T` and `S` and the vertical through
/// `T + S`. Either point at infinity makes the quotient 1.
fn line_over_vertical(ext: &Curve, t: &Point, s: &Point, at: &Point) -> Result<(Fe, Fe)> {
    let f = ext.field();
    let (Some((xt, yt)), Some((xs, ys))) = (t.coords(), s.coords()) else {
        return Ok((f.one(), f.one()));
    };
    let (x, y) = at.coords().ok_or(Error::SupportCollision)?;
    let (l, v) = if xt == xs && f.add(yt, ys).is_zero() {
        (f.sub(x, xt), f.one())
    } else {
        let lambda = if xt == xs {
            let num = f.add(&f.mul(&f.from_u64(3), &f.square(xt)), ext.a());
            f.div(&num, &f.add(yt, yt))?
        } else {
            f.div(&f.sub(ys, yt), &f.sub(xs, xt))?
        };
        let x3 = f.sub(&f.sub(&f.square(&lambda), xt), xs);
        let l = f.sub(&f.sub(y, yt), &f.mul(&lambda, &f.sub(x, xt)));
        (l, f.sub(x, &x3))
    };
    if l.is_zero() || v.is_zero() {
        return Err(Error::SupportCollision);
    }
    Ok((l, v))
}
