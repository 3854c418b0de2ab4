//! Commutative groups behind a common interface, and the extension `C` of `A`
//! by `B` presented by a symmetric 2-cocycle `c: A x A -> B`.
//!
//! `C` has the underlying set `A x B`, identity `(0_A, 0_B)` and
//!
//! ```text
//! (P_A, P_B) + (Q_A, Q_B) = (P_A + Q_A, P_B + Q_B + c(P_A, Q_A))
//!           -(P_A, P_B)   = (-P_A, -P_B - c(P_A, -P_A))
//! ```
//!
//! Cocycles must be normalized (`c(P, 0_A) = 0_B`), which is what makes
//! `(0_A, 0_B)` the identity.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::GroupOrder;
use crate::curve::{element_order_by, Curve, Point};
use crate::error::{Error, Result};
use crate::field::{Fe, Field};

/// A commutative group written additively.
///
/// Operations are fallible because an extension's law evaluates a cocycle,
/// which may be undefined at some inputs.
pub trait GroupBackend {
    type Elem: Clone + Eq + Ord + fmt::Debug;

    fn identity(&self) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem>;
    fn neg(&self, x: &Self::Elem) -> Result<Self::Elem>;

    /// Fixed-width binary encoding; every element of a group encodes to the
    /// same number of bytes.
    fn to_bytes(&self, x: &Self::Elem) -> Vec<u8>;

    /// Human-readable text form.
    fn render(&self, x: &Self::Elem) -> String;

    fn is_identity(&self, x: &Self::Elem) -> bool {
        *x == self.identity()
    }

    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem> {
        self.add(x, &self.neg(y)?)
    }

    /// `n * x` by double-and-add.
    fn scalar_mul(&self, n: u64, x: &Self::Elem) -> Result<Self::Elem> {
        let mut acc = self.identity();
        if n == 0 {
            return Ok(acc);
        }
        for bit in (0..(64 - n.leading_zeros())).rev() {
            acc = self.add(&acc, &acc)?;
            if (n >> bit) & 1 == 1 {
                acc = self.add(&acc, x)?;
            }
        }
        Ok(acc)
    }

    /// Exact order of `x`, given a multiple of it (usually the group order).
    fn element_order(&self, x: &Self::Elem, multiple: &GroupOrder) -> Result<u64> {
        element_order_by(multiple, |n| Ok(self.is_identity(&self.scalar_mul(n, x)?)))
    }
}

fn fe_width(field: &Field) -> usize {
    let bits = 64 - field.characteristic().leading_zeros() as usize;
    bits.div_ceil(8)
}

fn push_fe(out: &mut Vec<u8>, field: &Field, x: &Fe) {
    let w = fe_width(field);
    for &c in x.coeffs() {
        out.extend_from_slice(&c.to_be_bytes()[8 - w..]);
    }
}

/// Rational points of an elliptic curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EcGroup {
    curve: Curve,
}

impl EcGroup {
    pub fn new(curve: Curve) -> Self {
        EcGroup { curve }
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }
}

impl GroupBackend for EcGroup {
    type Elem = Point;

    fn identity(&self) -> Point {
        Point::Infinity
    }

    fn add(&self, x: &Point, y: &Point) -> Result<Point> {
        Ok(self.curve.add(x, y))
    }

    fn neg(&self, x: &Point) -> Result<Point> {
        Ok(self.curve.neg(x))
    }

    /// Tag byte (0 = infinity, 1 = affine) followed by `x` and `y`.
    fn to_bytes(&self, x: &Point) -> Vec<u8> {
        let field = self.curve.field();
        let mut out = Vec::new();
        match x {
            Point::Infinity => {
                out.push(0);
                out.resize(1 + 2 * field.degree() * fe_width(field), 0);
            }
            Point::Affine { x, y } => {
                out.push(1);
                push_fe(&mut out, field, x);
                push_fe(&mut out, field, y);
            }
        }
        out
    }

    fn render(&self, x: &Point) -> String {
        format!("{x}")
    }

    fn scalar_mul(&self, n: u64, x: &Point) -> Result<Point> {
        Ok(self.curve.scalar_mul(n as i128, x))
    }
}

/// The multiplicative group `G_m` of a field, written additively through the
/// trait (so `add` multiplies and `neg` inverts).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MulGroup {
    field: Field,
}

impl MulGroup {
    pub fn new(field: Field) -> Self {
        MulGroup { field }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// `q - 1`, if it fits.
    pub fn order(&self) -> Option<u64> {
        self.field.order().and_then(|q| u64::try_from(q - 1).ok())
    }
}

impl GroupBackend for MulGroup {
    type Elem = Fe;

    fn identity(&self) -> Fe {
        self.field.one()
    }

    fn add(&self, x: &Fe, y: &Fe) -> Result<Fe> {
        Ok(self.field.mul(x, y))
    }

    fn neg(&self, x: &Fe) -> Result<Fe> {
        self.field.inv(x)
    }

    fn to_bytes(&self, x: &Fe) -> Vec<u8> {
        let mut out = Vec::new();
        push_fe(&mut out, &self.field, x);
        out
    }

    fn render(&self, x: &Fe) -> String {
        format!("{x}")
    }

    fn scalar_mul(&self, n: u64, x: &Fe) -> Result<Fe> {
        self.field.pow(x, n as u128)
    }
}

/// `Z/nZ` under addition. Handy as a small test group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CyclicGroup {
    n: u64,
}

impl CyclicGroup {
    pub fn new(n: u64) -> Self {
        assert!(n > 0, "cyclic group of order zero");
        CyclicGroup { n }
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.n
    }
}

impl GroupBackend for CyclicGroup {
    type Elem = u64;

    fn identity(&self) -> u64 {
        0
    }

    fn add(&self, x: &u64, y: &u64) -> Result<u64> {
        Ok(crate::arith::add_mod(*x, *y, self.n))
    }

    fn neg(&self, x: &u64) -> Result<u64> {
        Ok((self.n - x % self.n) % self.n)
    }

    fn to_bytes(&self, x: &u64) -> Vec<u8> {
        x.to_be_bytes().to_vec()
    }

    fn render(&self, x: &u64) -> String {
        format!("{x}")
    }

    fn scalar_mul(&self, n: u64, x: &u64) -> Result<u64> {
        Ok(crate::arith::mul_mod(n % self.n, *x, self.n))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CocycleKind {
    Zero,
    Coboundary,
    GeneralizedJacobian,
    Other(&'static str),
}

/// A symmetric 2-cocycle `c: A x A -> B`.
pub trait Cocycle<A: GroupBackend, B: GroupBackend> {
    fn eval(&self, a: &A, b: &B, p: &A::Elem, q: &A::Elem) -> Result<B::Elem>;

    fn kind(&self) -> CocycleKind;

    /// Identically zero; the extension law then skips the cocycle term and is
    /// exactly the componentwise law.
    fn is_zero(&self) -> bool {
        false
    }
}

/// `c = 0`; presents the direct product.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ZeroCocycle;

impl<A: GroupBackend, B: GroupBackend> Cocycle<A, B> for ZeroCocycle {
    fn eval(&self, _: &A, b: &B, _: &A::Elem, _: &A::Elem) -> Result<B::Elem> {
        Ok(b.identity())
    }

    fn kind(&self) -> CocycleKind {
        CocycleKind::Zero
    }

    fn is_zero(&self) -> bool {
        true
    }
}

/// `c(P, Q) = g(P) + g(Q) - g(P + Q)` for a table-backed `g` with `g(0) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coboundary<EA: Ord, EB> {
    table: BTreeMap<EA, EB>,
}

impl<EA: Ord, EB> Coboundary<EA, EB> {
    pub fn table(&self) -> &BTreeMap<EA, EB> {
        &self.table
    }
}

/// Build the coboundary of `g`; `g` must send `0_A` to `0_B`.
pub fn make_coboundary_cocycle<A, B>(
    a: &A,
    b: &B,
    g: BTreeMap<A::Elem, B::Elem>,
) -> Result<Coboundary<A::Elem, B::Elem>>
where
    A: GroupBackend,
    B: GroupBackend,
{
    match g.get(&a.identity()) {
        Some(v) if b.is_identity(v) => Ok(Coboundary { table: g }),
        _ => Err(Error::NotNormalized),
    }
}

impl<A: GroupBackend, B: GroupBackend> Cocycle<A, B> for Coboundary<A::Elem, B::Elem> {
    fn eval(&self, a: &A, b: &B, p: &A::Elem, q: &A::Elem) -> Result<B::Elem> {
        let g = |x: &A::Elem| self.table.get(x).cloned().ok_or(Error::MissingTableEntry);
        let sum = a.add(p, q)?;
        b.sub(&b.add(&g(p)?, &g(q)?)?, &g(&sum)?)
    }

    fn kind(&self) -> CocycleKind {
        if self.table.values().all(|v| *v == self.table.values().next().cloned().unwrap()) {
            // g is constant, and g(0) = 0 forces it to vanish
            CocycleKind::Zero
        } else {
            CocycleKind::Coboundary
        }
    }
}

/// An element `(a, b)` of an extension.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtElement<EA, EB> {
    pub a: EA,
    pub b: EB,
}

impl<EA, EB> ExtElement<EA, EB> {
    pub fn new(a: EA, b: EB) -> Self {
        ExtElement { a, b }
    }
}

/// The extension of `A` by `B` presented by `cocycle`.
#[derive(Clone, Debug)]
pub struct Extension<A, B, C> {
    a: A,
    b: B,
    cocycle: C,
}

/// `A x B`, the extension presented by the zero cocycle.
pub type DirectProduct<A, B> = Extension<A, B, ZeroCocycle>;

impl<A, B> DirectProduct<A, B>
where
    A: GroupBackend,
    B: GroupBackend,
{
    pub fn direct_product(a: A, b: B) -> Self {
        Extension { a, b, cocycle: ZeroCocycle }
    }
}

impl<A, B, C> Extension<A, B, C>
where
    A: GroupBackend,
    B: GroupBackend,
    C: Cocycle<A, B>,
{
    pub fn new(a: A, b: B, cocycle: C) -> Self {
        Extension { a, b, cocycle }
    }

    pub fn a(&self) -> &A {
        &self.a
    }

    pub fn b(&self) -> &B {
        &self.b
    }

    pub fn cocycle(&self) -> &C {
        &self.cocycle
    }

    pub fn eval_cocycle(&self, p: &A::Elem, q: &A::Elem) -> Result<B::Elem> {
        self.cocycle.eval(&self.a, &self.b, p, q)
    }

    /// `iota(b) = (0_A, b)`.
    pub fn iota(&self, b: B::Elem) -> ExtElement<A::Elem, B::Elem> {
        ExtElement::new(self.a.identity(), b)
    }

    /// `pi(a, b) = a`.
    pub fn pi(&self, x: &ExtElement<A::Elem, B::Elem>) -> A::Elem {
        x.a.clone()
    }

    /// `iota^-1(0_A, b) = b`; anything off the image of `iota` is rejected.
    pub fn iota_inv(&self, x: &ExtElement<A::Elem, B::Elem>) -> Result<B::Elem> {
        if self.a.is_identity(&x.a) {
            Ok(x.b.clone())
        } else {
            Err(Error::NotInImage)
        }
    }
}

impl<A, B, C> GroupBackend for Extension<A, B, C>
where
    A: GroupBackend,
    B: GroupBackend,
    C: Cocycle<A, B>,
{
    type Elem = ExtElement<A::Elem, B::Elem>;

    fn identity(&self) -> Self::Elem {
        ExtElement::new(self.a.identity(), self.b.identity())
    }

    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem> {
        let a = self.a.add(&x.a, &y.a)?;
        let mut b = self.b.add(&x.b, &y.b)?;
        if !self.cocycle.is_zero() {
            b = self.b.add(&b, &self.eval_cocycle(&x.a, &y.a)?)?;
        }
        Ok(ExtElement::new(a, b))
    }

    fn neg(&self, x: &Self::Elem) -> Result<Self::Elem> {
        let a = self.a.neg(&x.a)?;
        if self.cocycle.is_zero() {
            return Ok(ExtElement::new(a, self.b.neg(&x.b)?));
        }
        let c = self.eval_cocycle(&x.a, &a)?;
        let b = self.b.neg(&self.b.add(&x.b, &c)?)?;
        Ok(ExtElement::new(a, b))
    }

    fn to_bytes(&self, x: &Self::Elem) -> Vec<u8> {
        let mut out = self.a.to_bytes(&x.a);
        out.extend(self.b.to_bytes(&x.b));
        out
    }

    /// `A-part|B-part`.
    fn render(&self, x: &Self::Elem) -> String {
        format!("{}|{}", self.a.render(&x.a), self.b.render(&x.b))
    }
}

/// Outcome of checking one relation on one sample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Relation {
    Holds,
    Fails,
    Undefined(Error),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleCheck {
    /// `c(P,Q) = c(Q,P)`
    pub symmetric: Relation,
    /// `c(P,Q) + c(P+Q,R) = c(Q,R) + c(P,Q+R)`
    pub associative: Relation,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CocycleReport {
    pub checks: Vec<TripleCheck>,
}

impl CocycleReport {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|t| t.symmetric != Relation::Holds || t.associative != Relation::Holds).count()
    }

    pub fn undefined(&self) -> usize {
        self.checks
            .iter()
            .filter(|t| {
                matches!(t.symmetric, Relation::Undefined(_)) || matches!(t.associative, Relation::Undefined(_))
            })
            .count()
    }

    pub fn all_pass(&self) -> bool {
        self.failures() == 0
    }
}

/// Check both cocycle relations on every sample triple.
pub fn verify_cocycle<A, B, C>(a: &A, b: &B, c: &C, samples: &[(A::Elem, A::Elem, A::Elem)]) -> CocycleReport
where
    A: GroupBackend,
    B: GroupBackend,
    C: Cocycle<A, B>,
{
    let relation = |r: Result<bool>| match r {
        Ok(true) => Relation::Holds,
        Ok(false) => Relation::Fails,
        Err(e) => Relation::Undefined(e),
    };
    let checks = samples
        .iter()
        .map(|(p, q, r)| {
            let symmetric = relation((|| Ok(c.eval(a, b, p, q)? == c.eval(a, b, q, p)?))());
            let associative = relation((|| {
                let pq = a.add(p, q)?;
                let qr = a.add(q, r)?;
                let lhs = b.add(&c.eval(a, b, p, q)?, &c.eval(a, b, &pq, r)?)?;
                let rhs = b.add(&c.eval(a, b, q, r)?, &c.eval(a, b, p, &qr)?)?;
                Ok(lhs == rhs)
            })());
            TripleCheck { symmetric, associative }
        })
        .collect();
    CocycleReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Z = CyclicGroup;

    /// Adds a constant to `c(p0, q0)` and `c(q0, p0)` of an inner cocycle.
    struct Corrupted<C> {
        inner: C,
        at: (u64, u64),
    }

    impl<C: Cocycle<Z, Z>> Cocycle<Z, Z> for Corrupted<C> {
        fn eval(&self, a: &Z, b: &Z, p: &u64, q: &u64) -> Result<u64> {
            let v = self.inner.eval(a, b, p, q)?;
            if (*p, *q) == self.at || (*q, *p) == self.at {
                b.add(&v, &1)
            } else {
                Ok(v)
            }
        }

        fn kind(&self) -> CocycleKind {
            CocycleKind::Other("corrupted")
        }
    }

    fn all_triples(n: u64) -> Vec<(u64, u64, u64)> {
        let mut v = Vec::new();
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    v.push((p, q, r));
                }
            }
        }
        v
    }

    /// The carry cocycle of `0 -> Z/3 -> Z/9 -> Z/3 -> 0`: c(p,q) = 1 iff p+q >= 3.
    struct Carry;

    impl Cocycle<Z, Z> for Carry {
        fn eval(&self, _: &Z, _: &Z, p: &u64, q: &u64) -> Result<u64> {
            Ok(u64::from(p + q >= 3))
        }

        fn kind(&self) -> CocycleKind {
            CocycleKind::Other("carry")
        }
    }

    #[test]
    fn zero_cocycle_is_direct_product() {
        let c = DirectProduct::direct_product(Z::new(4), Z::new(6));
        let x = ExtElement::new(3, 5);
        let y = ExtElement::new(2, 4);
        assert_eq!(c.add(&x, &y).unwrap(), ExtElement::new(1, 3));
        assert_eq!(c.neg(&x).unwrap(), ExtElement::new(1, 1));
        assert_eq!(c.add(&x, &c.identity()).unwrap(), x);
        assert!(verify_cocycle(&Z::new(4), &Z::new(6), &ZeroCocycle, &all_triples(4)).all_pass());
        assert_eq!(c.render(&x), "3|5");
        assert_eq!(c.to_bytes(&x).len(), 16);
    }

    #[test]
    fn non_split_extension_is_cyclic_of_order_9() {
        let c = Extension::new(Z::new(3), Z::new(3), Carry);
        assert!(verify_cocycle(c.a(), c.b(), c.cocycle(), &all_triples(3)).all_pass());
        let g = ExtElement::new(1, 0);
        assert_eq!(c.element_order(&g, &GroupOrder::new(9).unwrap()).unwrap(), 9);
        assert_eq!(c.scalar_mul(3, &g).unwrap(), c.iota(1));
    }

    #[test]
    fn inverse_uses_cocycle() {
        let c = Extension::new(Z::new(3), Z::new(3), Carry);
        for a in 0..3 {
            for b in 0..3 {
                let x = ExtElement::new(a, b);
                assert_eq!(c.add(&x, &c.neg(&x).unwrap()).unwrap(), c.identity());
            }
        }
        assert_eq!(c.neg(&c.identity()).unwrap(), c.identity());
    }

    #[test]
    fn coboundary_examples() {
        let (a, b) = (Z::new(6), Z::new(7));
        let g: BTreeMap<u64, u64> = (0..6).map(|x| (x, (x * x * 3) % 7)).collect();
        let cob = make_coboundary_cocycle(&a, &b, g.clone()).unwrap();
        assert_eq!(Cocycle::<Z, Z>::kind(&cob), CocycleKind::Coboundary);
        assert!(verify_cocycle(&a, &b, &cob, &all_triples(6)).all_pass());
        let c = Extension::new(a, b, cob);
        for p in 0..6 {
            assert_eq!(c.eval_cocycle(&p, &0).unwrap(), 0);
            for q in 0..6 {
                let x = ExtElement::new(p, b.neg(&g[&p]).unwrap());
                let y = ExtElement::new(q, b.neg(&g[&q]).unwrap());
                let s = (p + q) % 6;
                assert_eq!(c.add(&x, &y).unwrap(), ExtElement::new(s, b.neg(&g[&s]).unwrap()));
            }
        }

        let zero: BTreeMap<u64, u64> = (0..6).map(|x| (x, 0)).collect();
        assert_eq!(Cocycle::<Z, Z>::kind(&make_coboundary_cocycle(&a, &b, zero).unwrap()), CocycleKind::Zero);

        let mut bad = g;
        bad.insert(0, 2);
        assert_eq!(make_coboundary_cocycle(&a, &b, bad), Err(Error::NotNormalized));
    }

    #[test]
    fn corrupted_cocycle_detected() {
        let (a, b) = (Z::new(5), Z::new(5));
        let g: BTreeMap<u64, u64> = (0..5).map(|x| (x, (x * 2 + x * x) % 5)).collect();
        let cob = make_coboundary_cocycle(&a, &b, g).unwrap();
        let bad = Corrupted { inner: cob, at: (2, 3) };
        let report = verify_cocycle(&a, &b, &bad, &all_triples(5));
        assert!(report.failures() > 0);
        assert_eq!(report.undefined(), 0);
    }

    #[test]
    fn iota_pi_maps() {
        let c = Extension::new(Z::new(3), Z::new(3), Carry);
        assert_eq!(c.iota(0), c.identity());
        assert_eq!(c.pi(&c.identity()), 0);
        assert_eq!(c.iota_inv(&c.iota(2)).unwrap(), 2);
        assert_eq!(c.iota_inv(&ExtElement::new(1, 2)), Err(Error::NotInImage));
        for b1 in 0..3 {
            assert_eq!(c.pi(&c.iota(b1)), 0);
            for b2 in 0..3 {
                assert_eq!(c.add(&c.iota(b1), &c.iota(b2)).unwrap(), c.iota((b1 + b2) % 3));
            }
        }
    }

    #[test]
    fn missing_table_entry_surfaces() {
        let (a, b) = (Z::new(4), Z::new(4));
        let g = BTreeMap::from([(0u64, 0u64), (1, 1)]);
        let cob = make_coboundary_cocycle(&a, &b, g).unwrap();
        assert_eq!(cob.eval(&a, &b, &1, &2), Err(Error::MissingTableEntry));
        let report = verify_cocycle(&a, &b, &cob, &[(1, 2, 3)]);
        assert_eq!(report.undefined(), 1);
    }
}
