//! Prime fields `F_p` and extensions `F_{p^k} = F_p[u]/(f(u))` in polynomial
//! basis.
//!
//! Arithmetic goes through a [`Field`] context; elements ([`Fe`]) are plain
//! `Copy` coefficient vectors. Every prime-field multiplication performed by a
//! context is tallied on its [`MulCounter`], so an extension-field product is
//! charged for the base multiplications it actually executes. Contexts built
//! with [`Field::with_counter`] share a tally.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::sync::atomic::Ordering;

use rand::Rng;

use crate::arith::{self, add_mod, mul_mod};
use crate::error::{Error, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: usize = 6;

/// Moduli are kept below 2^61 so sums of two residues never overflow.
pub const MAX_PRIME: u64 = 1 << 61;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeFieldParams {
    p: u64,
}

impl PrimeFieldParams {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..MAX_PRIME).contains(&p) {
            return Err(Error::PrimeOutOfRange(p));
        }
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeFieldParams { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

/// A monic irreducible `f` of degree `k` over `F_p`; coefficients are stored
/// little-endian by degree and include the leading 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtFieldParams {
    base: PrimeFieldParams,
    reduction_poly: Vec<u64>,
}

impl ExtFieldParams {
    pub fn new(base: PrimeFieldParams, reduction_poly: &[u64]) -> Result<Self> {
        let p = base.p;
        let k = reduction_poly.len().saturating_sub(1);
        if k == 0 || k > MAX_DEGREE {
            return Err(Error::InvalidReductionPoly("degree must be between 1 and 6"));
        }
        if reduction_poly.iter().any(|&c| c >= p) {
            return Err(Error::InvalidReductionPoly("coefficient not reduced mod p"));
        }
        if reduction_poly[k] != 1 {
            return Err(Error::InvalidReductionPoly("polynomial is not monic"));
        }
        if !poly::is_irreducible(reduction_poly, p) {
            return Err(Error::ReduciblePoly);
        }
        Ok(ExtFieldParams { base, reduction_poly: reduction_poly.to_vec() })
    }

    /// `F_p` itself, as the degree-1 extension `F_p[u]/(u)`.
    pub fn prime(base: PrimeFieldParams) -> Self {
        ExtFieldParams { base, reduction_poly: alloc::vec![0, 1] }
    }

    /// `F_p[u]/(u^2 + 1)`, irreducible exactly when `p = 3 (mod 4)`.
    pub fn default_quadratic(base: PrimeFieldParams) -> Result<Self> {
        if base.p % 4 != 3 {
            return Err(Error::InvalidReductionPoly("u^2 + 1 needs p = 3 (mod 4)"));
        }
        Self::new(base, &[1, 0, 1])
    }

    pub fn base(&self) -> PrimeFieldParams {
        self.base
    }

    pub fn degree(&self) -> usize {
        self.reduction_poly.len() - 1
    }

    pub fn reduction_poly(&self) -> &[u64] {
        &self.reduction_poly
    }
}

#[cfg(target_has_atomic = "64")]
type Tally = core::sync::atomic::AtomicU64;
// pointer-width fallback; wraps after 2^32 multiplications on 32-bit targets
#[cfg(not(target_has_atomic = "64"))]
type Tally = core::sync::atomic::AtomicUsize;

/// Shared tally of prime-field multiplications.
#[derive(Clone, Debug, Default)]
pub struct MulCounter(Arc<Tally>);

impl MulCounter {
    pub fn new() -> Self {
        Self::default()
    }

    #[allow(clippy::unnecessary_cast)] // `Tally` is not always 64-bit
    pub fn get(&self) -> u64 {
        self.0.load(Ordering::Relaxed) as u64
    }

    pub fn reset(&self) {
        self.0.store(0, Ordering::Relaxed);
    }

    #[inline]
    fn add(&self, n: u64) {
        self.0.fetch_add(n as _, Ordering::Relaxed);
    }
}

/// A field element: `deg` coefficients in `[0, p)`, unused slots zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fe {
    deg: u8,
    c: [u64; MAX_DEGREE],
}

impl Fe {
    pub fn coeffs(&self) -> &[u64] {
        &self.c[..self.deg as usize]
    }

    pub fn degree(&self) -> usize {
        self.deg as usize
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&c| c == 0)
    }

    /// Whether all coefficients above the constant term vanish.
    pub fn is_in_prime_subfield(&self) -> bool {
        self.c[1..].iter().all(|&c| c == 0)
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fe({self})")
    }
}

impl fmt::Display for Fe {
    /// Comma-separated coefficients, constant term first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Arithmetic context for one field.
#[derive(Clone, Debug)]
pub struct Field {
    params: ExtFieldParams,
    p: u64,
    k: usize,
    // x^k = sum_i neg_red[i] x^i
    neg_red: [u64; MAX_DEGREE],
    counter: MulCounter,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params
    }
}

impl Eq for Field {}

impl Field {
    pub fn new(params: ExtFieldParams) -> Self {
        Self::with_counter(params, MulCounter::new())
    }

    pub fn with_counter(params: ExtFieldParams, counter: MulCounter) -> Self {
        let p = params.base.p;
        let k = params.degree();
        let mut neg_red = [0u64; MAX_DEGREE];
        if k > 1 {
            for (i, &c) in params.reduction_poly[..k].iter().enumerate() {
                neg_red[i] = (p - c) % p;
            }
        }
        Field { params, p, k, neg_red, counter }
    }

    pub fn prime(p: u64) -> Result<Self> {
        Ok(Self::new(ExtFieldParams::prime(PrimeFieldParams::new(p)?)))
    }

    pub fn params(&self) -> &ExtFieldParams {
        &self.params
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    /// `q = p^k`, if it fits in a `u128`.
    pub fn order(&self) -> Option<u128> {
        (self.p as u128).checked_pow(self.k as u32)
    }

    pub fn counter(&self) -> &MulCounter {
        &self.counter
    }

    pub fn mul_count(&self) -> u64 {
        self.counter.get()
    }

    /// The same field on a different counter.
    pub fn recounted(&self, counter: MulCounter) -> Field {
        Field { counter, ..self.clone() }
    }

    pub fn zero(&self) -> Fe {
        Fe { deg: self.k as u8, c: [0; MAX_DEGREE] }
    }

    pub fn one(&self) -> Fe {
        self.from_u64(1)
    }

    pub fn from_u64(&self, v: u64) -> Fe {
        let mut e = self.zero();
        e.c[0] = v % self.p;
        e
    }

    pub fn from_i64(&self, v: i64) -> Fe {
        self.from_u64(v.rem_euclid(self.p as i64) as u64)
    }

    /// Element from coefficients (constant first). Shorter slices are
    /// zero-padded; every coefficient must already be reduced.
    pub fn element(&self, coeffs: &[u64]) -> Result<Fe> {
        if coeffs.len() > self.k {
            return Err(Error::FieldMismatch);
        }
        let mut e = self.zero();
        for (slot, &c) in e.c.iter_mut().zip(coeffs) {
            if c >= self.p {
                return Err(Error::FieldMismatch);
            }
            *slot = c;
        }
        Ok(e)
    }

    /// Whether `x` is a canonical element of this field.
    pub fn contains(&self, x: &Fe) -> bool {
        x.deg as usize == self.k && x.c.iter().all(|&c| c < self.p) && x.c[self.k..].iter().all(|&c| c == 0)
    }

    /// Image of an element of the prime subfield, given in any field of the
    /// same characteristic.
    pub fn lift(&self, x: &Fe) -> Result<Fe> {
        if !x.is_in_prime_subfield() || x.c[0] >= self.p {
            return Err(Error::FieldMismatch);
        }
        Ok(self.from_u64(x.c[0]))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        let mut e = self.zero();
        for c in &mut e.c[..self.k] {
            *c = rng.random_range(0..self.p);
        }
        e
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        loop {
            let e = self.random(rng);
            if !e.is_zero() {
                return e;
            }
        }
    }

    /// Every element, in lexicographic coefficient order. Refuses fields with
    /// more than `bound` elements.
    pub fn elements(&self, bound: u64) -> Result<Vec<Fe>> {
        let q = self.order().filter(|&q| q <= bound as u128).ok_or(Error::TooLarge { what: "field" })?;
        let mut out = Vec::with_capacity(q as usize);
        let mut e = self.zero();
        for _ in 0..q {
            out.push(e);
            for c in &mut e.c[..self.k] {
                *c += 1;
                if *c < self.p {
                    break;
                }
                *c = 0;
            }
        }
        Ok(out)
    }

    #[inline]
    pub fn add(&self, x: &Fe, y: &Fe) -> Fe {
        let mut r = *x;
        for i in 0..self.k {
            r.c[i] = add_mod(x.c[i], y.c[i], self.p);
        }
        r
    }

    #[inline]
    pub fn neg(&self, x: &Fe) -> Fe {
        let mut r = *x;
        for i in 0..self.k {
            r.c[i] = if x.c[i] == 0 { 0 } else { self.p - x.c[i] };
        }
        r
    }

    #[inline]
    pub fn sub(&self, x: &Fe, y: &Fe) -> Fe {
        self.add(x, &self.neg(y))
    }

    pub fn double(&self, x: &Fe) -> Fe {
        self.add(x, x)
    }

    pub fn mul(&self, x: &Fe, y: &Fe) -> Fe {
        let (p, k) = (self.p, self.k);
        if k == 1 {
            self.counter.add(1);
            return Fe { deg: 1, c: [mul_mod(x.c[0], y.c[0], p), 0, 0, 0, 0, 0] };
        }
        let mut muls = 0u64;
        let mut t = [0u64; 2 * MAX_DEGREE];
        for i in 0..k {
            if x.c[i] == 0 {
                continue;
            }
            for j in 0..k {
                t[i + j] = add_mod(t[i + j], mul_mod(x.c[i], y.c[j], p), p);
                muls += 1;
            }
        }
        for d in (k..2 * k - 1).rev() {
            let top = t[d];
            if top == 0 {
                continue;
            }
            t[d] = 0;
            for i in 0..k {
                if self.neg_red[i] != 0 {
                    t[d - k + i] = add_mod(t[d - k + i], mul_mod(top, self.neg_red[i], p), p);
                    muls += 1;
                }
            }
        }
        self.counter.add(muls);
        let mut r = self.zero();
        r.c[..k].copy_from_slice(&t[..k]);
        r
    }

    pub fn square(&self, x: &Fe) -> Fe {
        self.mul(x, x)
    }

    /// Multiply by an integer scalar in `[0, p)`: `k` base multiplications.
    pub fn scale(&self, x: &Fe, s: u64) -> Fe {
        let mut r = *x;
        for c in &mut r.c[..self.k] {
            *c = mul_mod(*c, s % self.p, self.p);
        }
        self.counter.add(self.k as u64);
        r
    }

    pub fn inv(&self, x: &Fe) -> Result<Fe> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.k == 1 {
            // Fermat; the counter sees every multiplication.
            return self.pow(x, (self.p - 2) as u128);
        }
        let mut muls = 0u64;
        let r = poly::inverse_mod(&x.c[..self.k], &self.params.reduction_poly, self.p, &mut muls);
        self.counter.add(muls);
        self.element(&r)
    }

    pub fn div(&self, x: &Fe, y: &Fe) -> Result<Fe> {
        let yi = self.inv(y)?;
        Ok(self.mul(x, &yi))
    }

    /// Square-and-multiply from the top bit.
    pub fn pow(&self, x: &Fe, n: u128) -> Result<Fe> {
        if n == 0 {
            return if x.is_zero() { Err(Error::ZeroToTheZero) } else { Ok(self.one()) };
        }
        let mut acc = *x;
        for bit in (0..(127 - n.leading_zeros())).rev() {
            acc = self.square(&acc);
            if (n >> bit) & 1 == 1 {
                acc = self.mul(&acc, x);
            }
        }
        Ok(acc)
    }

    /// Checked binary operation: both operands must belong to this field.
    pub fn arith(&self, op: FieldOp, x: &Fe, y: &Fe) -> Result<Fe> {
        if !self.contains(x) || !self.contains(y) {
            return Err(Error::FieldMismatch);
        }
        Ok(match op {
            FieldOp::Add => self.add(x, y),
            FieldOp::Sub => self.sub(x, y),
            FieldOp::Mul => self.mul(x, y),
            FieldOp::Div => self.div(x, y)?,
        })
    }

    /// Euler's criterion. Zero counts as a square.
    pub fn is_square(&self, x: &Fe) -> Result<bool> {
        if x.is_zero() {
            return Ok(true);
        }
        let q = self.odd_order()?;
        Ok(self.pow(x, (q - 1) / 2)? == self.one())
    }

    /// A square root by Tonelli-Shanks, or `None` for non-squares.
    pub fn sqrt(&self, x: &Fe) -> Result<Option<Fe>> {
        if x.is_zero() {
            return Ok(Some(*x));
        }
        if !self.is_square(x)? {
            return Ok(None);
        }
        let q = self.odd_order()?;
        let mut s = 0u32;
        let mut t = q - 1;
        while t % 2 == 0 {
            t /= 2;
            s += 1;
        }
        let z = self.non_residue()?;
        let mut m = s;
        let mut c = self.pow(&z, t)?;
        let mut r = self.pow(x, t.div_ceil(2))?;
        let mut u = self.pow(x, t)?;
        let one = self.one();
        while u != one {
            let mut i = 0;
            let mut u2 = u;
            while u2 != one {
                u2 = self.square(&u2);
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = self.square(&b);
            }
            m = i;
            c = self.square(&b);
            u = self.mul(&u, &c);
            r = self.mul(&r, &b);
        }
        Ok(Some(r))
    }

    fn odd_order(&self) -> Result<u128> {
        let q = self.order().filter(|&q| q < (1u128 << 127)).ok_or(Error::TooLarge { what: "field" })?;
        if q % 2 == 0 {
            return Err(Error::UnsupportedCharacteristic);
        }
        Ok(q)
    }

    fn non_residue(&self) -> Result<Fe> {
        // Walk 2, 3, ... then u, u + 1, ... deterministically.
        let q = self.odd_order()?;
        let minus_one = self.neg(&self.one());
        let mut cand = self.zero();
        let mut idx = 2u64;
        loop {
            cand.c[0] = idx % self.p;
            if self.k > 1 {
                cand.c[1] = (idx / self.p) % self.p;
            }
            if !cand.is_zero() && self.pow(&cand, (q - 1) / 2)? == minus_one {
                return Ok(cand);
            }
            idx += 1;
        }
    }
}

/// Uncounted polynomial arithmetic over `F_p` used for irreducibility
/// testing, plus the counted extended Euclid behind extension inversion.
mod poly {
    use alloc::vec;
    use alloc::vec::Vec;

    use crate::arith::{add_mod, inv_mod, mul_mod};

    fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut r = vec![0; a.len().max(b.len())];
        for (i, slot) in r.iter_mut().enumerate() {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            *slot = add_mod(x, p - y % p, p);
        }
        trim(&mut r);
        r
    }

    fn mul(a: &[u64], b: &[u64], p: u64, muls: &mut u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut r = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = add_mod(r[i + j], mul_mod(x, y, p), p);
                *muls += 1;
            }
        }
        trim(&mut r);
        r
    }

    /// Quotient and remainder; `b` must be non-zero and trimmed.
    fn divmod(a: &[u64], b: &[u64], p: u64, muls: &mut u64) -> (Vec<u64>, Vec<u64>) {
        let mut r = a.to_vec();
        trim(&mut r);
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let lead_inv = inv_mod(*b.last().unwrap(), p).unwrap();
        *muls += 1;
        let mut q = vec![0; r.len() - b.len() + 1];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let coef = mul_mod(*r.last().unwrap(), lead_inv, p);
            *muls += 1;
            q[shift] = coef;
            for (i, &bc) in b.iter().enumerate() {
                r[shift + i] = add_mod(r[shift + i], p - mul_mod(coef, bc, p), p);
                *muls += 1;
            }
            trim(&mut r);
        }
        (q, r)
    }

    fn mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        let mut scratch = 0;
        let prod = mul(a, b, p, &mut scratch);
        divmod(&prod, f, p, &mut scratch).1
    }

    fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut scratch = 0;
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = divmod(&a, &b, p, &mut scratch).1;
            a = b;
            b = r;
        }
        a
    }

    /// `x^(p^i) mod f` for `i = 1..=k/2`, then Ben-Or's test: `f` is irreducible
    /// iff `gcd(x^(p^i) - x, f) = 1` for each such `i`.
    pub(super) fn is_irreducible(f: &[u64], p: u64) -> bool {
        let k = f.len() - 1;
        if k == 1 {
            return true;
        }
        let x = vec![0, 1];
        let mut xp = x.clone();
        for _ in 0..k / 2 {
            // xp <- xp^p mod f
            let mut acc = vec![1u64];
            let mut base = xp.clone();
            let mut e = p;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mulmod(&acc, &base, f, p);
                }
                base = mulmod(&base, &base, f, p);
                e >>= 1;
            }
            xp = acc;
            let g = gcd(&sub(&xp, &x, p), f, p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }

    /// Inverse of a non-zero `a` modulo irreducible `f`, as `deg f` coefficients.
    pub(super) fn inverse_mod(a: &[u64], f: &[u64], p: u64, muls: &mut u64) -> Vec<u64> {
        let k = f.len() - 1;
        let (mut r0, mut r1) = (f.to_vec(), a.to_vec());
        trim(&mut r1);
        let (mut s0, mut s1): (Vec<u64>, Vec<u64>) = (Vec::new(), vec![1]);
        while r1.len() > 1 {
            let (q, r) = divmod(&r0, &r1, p, muls);
            let s = sub(&s0, &mul(&q, &s1, p, muls), p);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r1 is a non-zero constant since f is irreducible.
        let c = inv_mod(r1[0], p).unwrap();
        *muls += 1;
        let mut out: Vec<u64> = s1.iter().map(|&s| mul_mod(s, c, p)).collect();
        *muls += s1.len() as u64;
        out.resize(k, 0);
        out
    }

    #[cfg(test)]
    mod tests {
        use super::*;

        #[test]
        fn irreducibility_small_cases() {
            // u^2 + 1 over F_11 (irreducible) and F_13 (5^2 = -1)
            assert!(is_irreducible(&[1, 0, 1], 11));
            assert!(!is_irreducible(&[1, 0, 1], 13));
            // (u^2 + 1)^2 over F_11 has no roots but is reducible
            assert!(!is_irreducible(&[1, 0, 2, 0, 1], 11));
            // u^3 - 2 over F_7: 2 is not a cube mod 7
            assert!(is_irreducible(&[5, 0, 0, 1], 7));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f11() -> Field {
        Field::prime(11).unwrap()
    }

    fn f121() -> Field {
        Field::new(ExtFieldParams::default_quadratic(PrimeFieldParams::new(11).unwrap()).unwrap())
    }

    #[test]
    fn prime_field_examples() {
        let f = f11();
        let (two, three) = (f.from_u64(2), f.from_u64(3));
        assert_eq!(f.arith(FieldOp::Div, &three, &two).unwrap(), f.from_u64(7));
        assert_eq!(f.inv(&two).unwrap(), f.from_u64(6));
        assert_eq!(f.inv(&f.one()).unwrap(), f.one());
        assert_eq!(f.inv(&f.zero()), Err(Error::DivisionByZero));
        assert_eq!(f.pow(&two, 10).unwrap(), f.one());
        assert_eq!(f.pow(&f.zero(), 0), Err(Error::ZeroToTheZero));
        assert_eq!(f.pow(&three, 0).unwrap(), f.one());
        for v in 0..11 {
            let x = f.from_u64(v);
            assert_eq!(f.mul(&f.one(), &x), x);
        }
    }

    #[test]
    fn quadratic_extension_examples() {
        let k = f121();
        let u = k.element(&[0, 1]).unwrap();
        assert_eq!(k.mul(&u, &u), k.from_u64(10));
        for g in k.elements(1 << 22).unwrap().into_iter().filter(|g| !g.is_zero()) {
            assert_eq!(k.pow(&g, 120).unwrap(), k.one());
            assert_eq!(k.mul(&g, &k.inv(&g).unwrap()), k.one());
        }
    }

    #[test]
    fn mismatched_operands_rejected() {
        let (f, k) = (f11(), f121());
        let x = f.from_u64(3);
        let y = k.from_u64(3);
        assert_eq!(k.arith(FieldOp::Add, &x, &y), Err(Error::FieldMismatch));
        assert_eq!(f.element(&[11]), Err(Error::FieldMismatch));
        assert_eq!(k.lift(&x).unwrap(), y);
        assert!(k.lift(&k.element(&[0, 1]).unwrap()).is_err());
    }

    #[test]
    fn bad_params_rejected() {
        assert_eq!(PrimeFieldParams::new(12), Err(Error::NotPrime(12)));
        assert!(PrimeFieldParams::new(1 << 61).is_err());
        let p13 = PrimeFieldParams::new(13).unwrap();
        assert!(ExtFieldParams::default_quadratic(p13).is_err());
        assert_eq!(ExtFieldParams::new(p13, &[1, 0, 1]), Err(Error::ReduciblePoly));
        assert!(ExtFieldParams::new(p13, &[2, 0, 2]).is_err());
        assert!(ExtFieldParams::new(p13, &[2, 1, 1]).is_ok());
    }

    #[test]
    fn sqrt_in_both_fields() {
        for f in [f11(), f121(), Field::prime(13).unwrap()] {
            let mut squares = 0;
            for x in f.elements(1 << 22).unwrap() {
                match f.sqrt(&x).unwrap() {
                    Some(r) => {
                        assert_eq!(f.square(&r), x);
                        squares += 1;
                    }
                    None => assert!(!f.is_square(&x).unwrap()),
                }
            }
            let q = f.order().unwrap() as usize;
            assert_eq!(squares, q.div_ceil(2));
        }
    }

    #[test]
    fn counter_is_additive_and_shared() {
        let k = f121();
        let (x, y) = (k.element(&[3, 4]).unwrap(), k.element(&[7, 9]).unwrap());
        k.counter().reset();
        let _ = k.mul(&x, &y);
        let one_mul = k.mul_count();
        assert!(one_mul > 0);
        let _ = k.mul(&x, &y);
        assert_eq!(k.mul_count(), 2 * one_mul);

        let shared =
            Field::with_counter(ExtFieldParams::prime(PrimeFieldParams::new(11).unwrap()), k.counter().clone());
        shared.mul(&shared.one(), &shared.one());
        assert_eq!(k.mul_count(), 2 * one_mul + 1);
    }
}
