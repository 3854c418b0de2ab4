//! Short Weierstrass curves `y^2 = x^3 + a x + b` in affine coordinates.

use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

use crate::arith::GroupOrder;
use crate::error::{Error, Result};
use crate::field::{Fe, Field};

/// Fields with more elements than this are not enumerated.
pub const DEFAULT_ENUMERATION_BOUND: u64 = 1 << 22;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Point {
    Infinity,
    Affine { x: Fe, y: Fe },
}

impl Point {
    pub fn affine(x: Fe, y: Fe) -> Point {
        Point::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn coords(&self) -> Option<(&Fe, &Fe)> {
        match self {
            Point::Infinity => None,
            Point::Affine { x, y } => Some((x, y)),
        }
    }
}

impl fmt::Display for Point {
    /// `inf`, or `x;y` with each coordinate as a coefficient list.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Infinity => f.write_str("inf"),
            Point::Affine { x, y } => write!(f, "{x};{y}"),
        }
    }
}

/// `y^2 = x^3 + a x + b` over `field`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    field: Field,
    a: Fe,
    b: Fe,
}

impl Curve {
    pub fn new(field: Field, a: Fe, b: Fe) -> Result<Self> {
        if field.characteristic() <= 3 {
            return Err(Error::UnsupportedCharacteristic);
        }
        if !field.contains(&a) || !field.contains(&b) {
            return Err(Error::FieldMismatch);
        }
        let a3 = field.mul(&field.square(&a), &a);
        let b2 = field.square(&b);
        let disc = field.add(&field.scale(&a3, 4), &field.scale(&b2, 27));
        if disc.is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(Curve { field, a, b })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn a(&self) -> &Fe {
        &self.a
    }

    pub fn b(&self) -> &Fe {
        &self.b
    }

    /// The same curve over `field`, which must contain the coefficients'
    /// prime subfield images.
    pub fn base_change(&self, field: Field) -> Result<Curve> {
        let a = coerce(&field, &self.a)?;
        let b = coerce(&field, &self.b)?;
        Curve::new(field, a, b)
    }

    /// The same curve with its field on another multiplication counter.
    pub fn recounted(&self, counter: crate::field::MulCounter) -> Curve {
        Curve { field: self.field.recounted(counter), ..self.clone() }
    }

    fn rhs(&self, x: &Fe) -> Fe {
        let f = &self.field;
        let x3 = f.mul(&f.square(x), x);
        f.add(&f.add(&x3, &f.mul(&self.a, x)), &self.b)
    }

    pub fn is_on_curve(&self, p: &Point) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine { x, y } => {
                self.field.contains(x) && self.field.contains(y) && self.field.square(y) == self.rhs(x)
            }
        }
    }

    pub fn point(&self, x: Fe, y: Fe) -> Result<Point> {
        let pt = Point::affine(x, y);
        if self.is_on_curve(&pt) {
            Ok(pt)
        } else {
            Err(Error::NotOnCurve)
        }
    }

    /// Image of a point whose coordinates lie in the prime subfield.
    pub fn embed(&self, p: &Point) -> Result<Point> {
        match p {
            Point::Infinity => Ok(Point::Infinity),
            Point::Affine { x, y } => self.point(coerce(&self.field, x)?, coerce(&self.field, y)?),
        }
    }

    pub fn neg(&self, p: &Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => Point::affine(*x, self.field.neg(y)),
        }
    }

    /// Chord-and-tangent addition. Operands are assumed to be on the curve;
    /// use [`Curve::checked_add`] for untrusted input.
    pub fn add(&self, p: &Point, q: &Point) -> Point {
        let f = &self.field;
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Infinity, _) => return *q,
            (_, Point::Infinity) => return *p,
            (Point::Affine { x: x1, y: y1 }, Point::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let slope = if x1 == x2 {
            if f.add(y1, y2).is_zero() {
                return Point::Infinity;
            }
            self.tangent_slope(x1, y1)
        } else {
            // x1 != x2, so the denominator is invertible
            f.div(&f.sub(y2, y1), &f.sub(x2, x1)).expect("distinct abscissae")
        };
        let x3 = f.sub(&f.sub(&f.square(&slope), x1), x2);
        let y3 = f.sub(&f.mul(&slope, &f.sub(x1, &x3)), y1);
        Point::affine(x3, y3)
    }

    fn tangent_slope(&self, x: &Fe, y: &Fe) -> Fe {
        let f = &self.field;
        let num = f.add(&f.scale(&f.square(x), 3), &self.a);
        f.div(&num, &f.double(y)).expect("y != 0 off the 2-torsion")
    }

    pub fn checked_add(&self, p: &Point, q: &Point) -> Result<Point> {
        if !self.is_on_curve(p) || !self.is_on_curve(q) {
            return Err(Error::NotOnCurve);
        }
        Ok(self.add(p, q))
    }

    pub fn double(&self, p: &Point) -> Point {
        self.add(p, p)
    }

    /// `n * P` by double-and-add; negative `n` negates first.
    pub fn scalar_mul(&self, n: i128, p: &Point) -> Point {
        let base = if n < 0 { self.neg(p) } else { *p };
        let n = n.unsigned_abs();
        let mut acc = Point::Infinity;
        if n == 0 {
            return acc;
        }
        for bit in (0..(128 - n.leading_zeros())).rev() {
            acc = self.double(&acc);
            if (n >> bit) & 1 == 1 {
                acc = self.add(&acc, &base);
            }
        }
        acc
    }

    /// All rational points, the point at infinity first.
    pub fn enumerate_points(&self, bound: u64) -> Result<Vec<Point>> {
        let mut out = alloc::vec![Point::Infinity];
        for x in self.field.elements(bound)? {
            let r = self.rhs(&x);
            if r.is_zero() {
                out.push(Point::affine(x, r));
            } else if let Some(y) = self.field.sqrt(&r)? {
                out.push(Point::affine(x, y));
                out.push(Point::affine(x, self.field.neg(&y)));
            }
        }
        Ok(out)
    }

    /// `#E` from the character sum `q + 1 + sum_x chi(x^3 + a x + b)`; no
    /// point list is materialised.
    pub fn count_points(&self, bound: u64) -> Result<u64> {
        let mut count = 1u64;
        for x in self.field.elements(bound)? {
            let r = self.rhs(&x);
            count += if r.is_zero() {
                1
            } else if self.field.is_square(&r)? {
                2
            } else {
                0
            };
        }
        Ok(count)
    }

    /// A uniformly random affine point.
    pub fn random_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Point> {
        loop {
            let x = self.field.random(rng);
            let r = self.rhs(&x);
            if let Some(y) = self.field.sqrt(&r)? {
                let y = if rng.random::<bool>() { self.field.neg(&y) } else { y };
                return Ok(Point::affine(x, y));
            }
        }
    }

    /// Least `n > 0` with `n * P = O`, found by stripping prime factors off
    /// the supplied group order.
    pub fn element_order(&self, p: &Point, group_order: &GroupOrder) -> Result<u64> {
        element_order_by(group_order, |n| Ok(self.scalar_mul(n as i128, p).is_infinity()))
    }

    /// `f_{P,Q} = v / l`, the function with divisor `(P+Q) + (O) - (P) - (Q)`.
    pub fn line_fraction(&self, p: &Point, q: &Point) -> LineFraction {
        let f = &self.field;
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Infinity, _) | (_, Point::Infinity) => return LineFraction::Constant,
            (Point::Affine { x: x1, y: y1 }, Point::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let slope = if x1 == x2 {
            if f.add(y1, y2).is_zero() {
                return LineFraction::Vertical { x0: *x1 };
            }
            self.tangent_slope(x1, y1)
        } else {
            f.div(&f.sub(y2, y1), &f.sub(x2, x1)).expect("distinct abscissae")
        };
        let x_sum = f.sub(&f.sub(&f.square(&slope), x1), x2);
        LineFraction::Sloped { slope, x0: *x1, y0: *y1, x_sum }
    }
}

/// Generic order computation: `is_identity_after(n)` reports whether `n * g`
/// is the identity.
pub(crate) fn element_order_by<F>(group_order: &GroupOrder, mut is_identity_after: F) -> Result<u64>
where
    F: FnMut(u64) -> Result<bool>,
{
    let mut n = group_order.order();
    if !is_identity_after(n)? {
        return Err(Error::OrderMismatch);
    }
    for &(q, _) in group_order.factors() {
        while n % q == 0 && is_identity_after(n / q)? {
            n /= q;
        }
    }
    Ok(n)
}

/// An element of `field` itself, or the image of a prime-subfield element.
fn coerce(field: &Field, x: &Fe) -> Result<Fe> {
    if field.contains(x) {
        Ok(*x)
    } else {
        field.lift(x)
    }
}

/// The rational function `f_{P,Q} = v / l`.
///
/// `l` is the line through `P` and `Q` (the tangent when `P = Q`) and `v` is
/// the vertical line through `P + Q`. When `Q = -P`, `l` is the vertical
/// `x - x_P` and `v` is the constant 1. When either point is `O`, `f = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LineFraction {
    Constant,
    Vertical { x0: Fe },
    Sloped { slope: Fe, x0: Fe, y0: Fe, x_sum: Fe },
}

impl LineFraction {
    /// `(v(X), l(X))` in `field`, which is the line's field or an extension
    /// of its prime subfield.
    pub fn eval_parts(&self, field: &Field, at: &Point) -> Result<(Fe, Fe)> {
        if let LineFraction::Constant = self {
            return Ok((field.one(), field.one()));
        }
        // v/l vanishes at O
        let (x, y) = at.coords().ok_or(Error::SupportCollision)?;
        if !field.contains(x) || !field.contains(y) {
            return Err(Error::FieldMismatch);
        }
        match self {
            LineFraction::Constant => unreachable!(),
            LineFraction::Vertical { x0 } => Ok((field.one(), field.sub(x, &coerce(field, x0)?))),
            LineFraction::Sloped { slope, x0, y0, x_sum } => {
                let dx = field.sub(x, &coerce(field, x0)?);
                let rise = if field.contains(slope) {
                    field.mul(slope, &dx)
                } else {
                    coerce(field, slope)?;
                    field.scale(&dx, slope.coeffs()[0])
                };
                let l = field.sub(&field.sub(y, &coerce(field, y0)?), &rise);
                let v = field.sub(x, &coerce(field, x_sum)?);
                Ok((v, l))
            }
        }
    }

    /// `v(X) / l(X)`; a zero or pole at `X` is a [`Error::SupportCollision`].
    pub fn eval(&self, field: &Field, at: &Point) -> Result<Fe> {
        let (v, l) = self.eval_parts(field, at)?;
        if v.is_zero() || l.is_zero() {
            return Err(Error::SupportCollision);
        }
        field.div(&v, &l)
    }
}

/// `f_{P,Q}(X)` with `P, Q` on `curve` and `X` a point over `field`.
pub fn eval_line_fraction(curve: &Curve, p: &Point, q: &Point, field: &Field, at: &Point) -> Result<Fe> {
    curve.line_fraction(p, q).eval(field, at)
}

/// `#E(F_{p^k})` from `#E(F_p)` via the trace recurrence
/// `s_i = t s_{i-1} - p s_{i-2}`, `s_0 = 2`, `s_1 = t = p + 1 - #E(F_p)`.
pub fn extension_point_count(p: u64, base_count: u64, k: u32) -> Result<u64> {
    let t = p as i128 + 1 - base_count as i128;
    let (mut s_prev, mut s) = (2i128, t);
    for _ in 1..k {
        let next = t
            .checked_mul(s)
            .and_then(|a| (p as i128).checked_mul(s_prev).and_then(|b| a.checked_sub(b)))
            .ok_or(Error::Overflow("trace recurrence"))?;
        s_prev = s;
        s = next;
    }
    let q = (p as i128).checked_pow(k).ok_or(Error::Overflow("field order"))?;
    u64::try_from(q + 1 - s).map_err(|_| Error::Overflow("point count"))
}
