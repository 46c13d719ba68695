//! Field arithmetic for the coefficient fields used throughout the crate:
//! the rationals, cyclotomic fields `Q[z]/(Phi_N)`, and finite fields
//! `F_{p^s}` presented as `F_p[z]/(f)` for an irreducible `f`.
//!
//! A [`FieldSpec`] is a structure object describing one such field; a
//! [`FieldElement`] is a coefficient vector owned by a spec. All arithmetic
//! is exact. Elements are immutable and safe to share across threads.

use std::fmt;
use std::sync::Arc;

use num::bigint::Sign;
use num::{BigInt, BigRational, BigUint, One, Signed, Zero};

use super::ExactError;

/// A scalar in a prime field: a rational for characteristic 0, or a residue
/// in `[0, p)` for characteristic `p`. The characteristic is carried by the
/// surrounding [`FieldSpec`], not by the scalar itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Rat(BigRational),
    Mod(u64),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod(v) => *v == 0,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{}", r),
            Scalar::Mod(v) => write!(f, "{}", v),
        }
    }
}

// ---------------------------------------------------------------------------
// scalar arithmetic, parameterized by the characteristic (0 = rationals)

fn sc_zero(p: u64) -> Scalar {
    if p == 0 {
        Scalar::Rat(BigRational::zero())
    } else {
        Scalar::Mod(0)
    }
}

fn sc_one(p: u64) -> Scalar {
    if p == 0 {
        Scalar::Rat(BigRational::one())
    } else {
        Scalar::Mod(1)
    }
}

fn sc_from_bigint(p: u64, k: &BigInt) -> Scalar {
    if p == 0 {
        Scalar::Rat(BigRational::from(k.clone()))
    } else {
        let r = k.mod_floor_u64(p);
        Scalar::Mod(r)
    }
}

fn sc_from_i64(p: u64, k: i64) -> Scalar {
    sc_from_bigint(p, &BigInt::from(k))
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn sc_add(p: u64, a: &Scalar, b: &Scalar) -> Scalar {
    match (a, b) {
        (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
        (Scalar::Mod(x), Scalar::Mod(y)) => Scalar::Mod(((*x as u128 + *y as u128) % p as u128) as u64),
        _ => unreachable!("mismatched scalar kinds"),
    }
}

fn sc_sub(p: u64, a: &Scalar, b: &Scalar) -> Scalar {
    sc_add(p, a, &sc_neg(p, b))
}

fn sc_neg(p: u64, a: &Scalar) -> Scalar {
    match a {
        Scalar::Rat(x) => Scalar::Rat(-x),
        Scalar::Mod(x) => Scalar::Mod(if *x == 0 { 0 } else { p - *x }),
    }
}

fn sc_mul(p: u64, a: &Scalar, b: &Scalar) -> Scalar {
    match (a, b) {
        (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
        (Scalar::Mod(x), Scalar::Mod(y)) => Scalar::Mod(mulmod(*x, *y, p)),
        _ => unreachable!("mismatched scalar kinds"),
    }
}

fn sc_inv(p: u64, a: &Scalar) -> Option<Scalar> {
    match a {
        Scalar::Rat(x) => {
            if x.is_zero() {
                None
            } else {
                Some(Scalar::Rat(x.recip()))
            }
        }
        Scalar::Mod(x) => {
            if *x == 0 {
                None
            } else {
                Some(Scalar::Mod(inv_mod_u64(*x, p)))
            }
        }
    }
}

fn inv_mod_u64(a: u64, p: u64) -> u64 {
    // extended Euclid on i128; p prime, 0 < a < p
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "inverse of non-unit mod {}", p);
    t0.rem_euclid(p as i128) as u64
}

trait ModFloorU64 {
    fn mod_floor_u64(&self, p: u64) -> u64;
}

impl ModFloorU64 for BigInt {
    fn mod_floor_u64(&self, p: u64) -> u64 {
        use num::Integer;
        let m = self.mod_floor(&BigInt::from(p));
        let (_, digits) = m.to_u64_digits();
        *digits.first().unwrap_or(&0)
    }
}

// ---------------------------------------------------------------------------
// dense univariate polynomials over a prime field (little-endian coefficients)

fn p_trim(v: &mut Vec<Scalar>) {
    while v.last().map_or(false, Scalar::is_zero) {
        v.pop();
    }
}

fn p_deg(v: &[Scalar]) -> Option<usize> {
    v.iter().rposition(|c| !c.is_zero())
}

fn p_add(p: u64, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(|| sc_zero(p));
        let y = b.get(i).cloned().unwrap_or_else(|| sc_zero(p));
        out.push(sc_add(p, &x, &y));
    }
    p_trim(&mut out);
    out
}

fn p_scale(p: u64, a: &[Scalar], c: &Scalar) -> Vec<Scalar> {
    a.iter().map(|x| sc_mul(p, x, c)).collect()
}

fn p_mul(p: u64, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let (da, db) = match (p_deg(a), p_deg(b)) {
        (Some(da), Some(db)) => (da, db),
        _ => return Vec::new(),
    };
    let mut out = vec![sc_zero(p); da + db + 1];
    for (i, x) in a.iter().enumerate().take(da + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(db + 1) {
            out[i + j] = sc_add(p, &out[i + j], &sc_mul(p, x, y));
        }
    }
    p_trim(&mut out);
    out
}

/// Remainder of `a` modulo `f`. The divisor must have an invertible leading
/// coefficient (always true over a field once trimmed).
fn p_rem(p: u64, a: &[Scalar], f: &[Scalar]) -> Vec<Scalar> {
    let df = p_deg(f).expect("division by zero polynomial");
    let lead_inv = sc_inv(p, &f[df]).expect("leading coefficient not invertible");
    let mut r: Vec<Scalar> = a.to_vec();
    p_trim(&mut r);
    while let Some(dr) = p_deg(&r) {
        if dr < df {
            break;
        }
        let q = sc_mul(p, &r[dr], &lead_inv);
        let shift = dr - df;
        for i in 0..=df {
            let sub = sc_mul(p, &f[i], &q);
            r[i + shift] = sc_sub(p, &r[i + shift], &sub);
        }
        p_trim(&mut r);
    }
    r
}

fn p_gcd(p: u64, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut x: Vec<Scalar> = a.to_vec();
    let mut y: Vec<Scalar> = b.to_vec();
    p_trim(&mut x);
    p_trim(&mut y);
    while !y.is_empty() {
        let r = p_rem(p, &x, &y);
        x = y;
        y = r;
    }
    // monic normalization
    if let Some(d) = p_deg(&x) {
        let inv = sc_inv(p, &x[d]).unwrap();
        x = p_scale(p, &x, &inv);
    }
    x
}

/// Inverse of `a` modulo `f` over the prime field, via extended Euclid.
fn p_inv_mod(p: u64, a: &[Scalar], f: &[Scalar]) -> Option<Vec<Scalar>> {
    let mut r0: Vec<Scalar> = f.to_vec();
    let mut r1: Vec<Scalar> = p_rem(p, a, f);
    let mut t0: Vec<Scalar> = Vec::new();
    let mut t1: Vec<Scalar> = vec![sc_one(p)];
    p_trim(&mut r0);
    while let Some(d1) = p_deg(&r1) {
        // one division step: r0 = q*r1 + r2
        let lead_inv = sc_inv(p, &r1[d1]).unwrap();
        let mut q = vec![sc_zero(p); p_deg(&r0).map_or(0, |d0| d0.saturating_sub(d1)) + 1];
        let mut r2 = r0.clone();
        while let Some(d2) = p_deg(&r2) {
            if d2 < d1 {
                break;
            }
            let c = sc_mul(p, &r2[d2], &lead_inv);
            q[d2 - d1] = sc_add(p, &q[d2 - d1], &c);
            for i in 0..=d1 {
                let sub = sc_mul(p, &r1[i], &c);
                r2[i + d2 - d1] = sc_sub(p, &r2[i + d2 - d1], &sub);
            }
            p_trim(&mut r2);
        }
        let qt1 = p_mul(p, &q, &t1);
        let t2 = sub_poly(p, &t0, &qt1);
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let d = p_deg(&r0)?;
    if d != 0 {
        return None; // gcd(a, f) is not a unit
    }
    let inv = sc_inv(p, &r0[0]).unwrap();
    Some(p_rem(p, &p_scale(p, &t0, &inv), f))
}

fn sub_poly(p: u64, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let neg: Vec<Scalar> = b.iter().map(|c| sc_neg(p, c)).collect();
    p_add(p, a, &neg)
}

/// `base^exp mod f` by square-and-multiply over the prime field.
fn p_modexp(p: u64, base: &[Scalar], exp: &BigUint, f: &[Scalar]) -> Vec<Scalar> {
    let mut result = vec![sc_one(p)];
    let mut acc = p_rem(p, base, f);
    for i in 0..exp.bits() {
        if exp.bit(i) {
            result = p_rem(p, &p_mul(p, &result, &acc), f);
        }
        acc = p_rem(p, &p_mul(p, &acc, &acc), f);
    }
    result
}

// ---------------------------------------------------------------------------
// small number theory helpers

/// Deterministic trial-division primality for the word-sized moduli used here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization by trial division: list of `(prime, exponent)`.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factor_u64(n)
        .into_iter()
        .map(|(p, e)| (p - 1) * p.pow(e - 1))
        .product::<u64>()
        .max(u64::from(n == 1))
}

/// Multiplicative order of `a` modulo `n` (requires `gcd(a, n) = 1`).
fn order_mod(a: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    let mut r = a % n;
    let mut s = 1u64;
    while r != 1 {
        r = mulmod(r, a % n, n);
        s += 1;
        assert!(s <= n, "order_mod called with a unit-free argument");
    }
    s
}

// ---------------------------------------------------------------------------
// cyclotomic polynomials

/// The N-th cyclotomic polynomial `Phi_N` over the rationals, little-endian,
/// monic of degree `phi(N)`. Computed by exact division of `x^N - 1` by the
/// `Phi_d` for proper divisors `d`.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigRational> {
    assert!(n >= 1, "cyclotomic index must be positive");
    let mut cache: Vec<(u64, Vec<BigRational>)> = Vec::new();
    for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        // x^d - 1
        let mut num = vec![BigRational::zero(); d as usize + 1];
        num[0] = -BigRational::one();
        num[d as usize] = BigRational::one();
        for (e, phi_e) in &cache {
            if d % e == 0 {
                num = rat_poly_div_exact(&num, phi_e);
            }
        }
        cache.push((d, num));
    }
    cache.pop().unwrap().1
}

/// Exact division of rational polynomials; panics on a nonzero remainder.
fn rat_poly_div_exact(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let db = b.iter().rposition(|c| !c.is_zero()).expect("zero divisor");
    let mut r: Vec<BigRational> = a.to_vec();
    let mut q = vec![BigRational::zero(); a.len().saturating_sub(db)];
    loop {
        let dr = match r.iter().rposition(|c| !c.is_zero()) {
            Some(d) => d,
            None => break,
        };
        assert!(dr >= db, "inexact polynomial division");
        let c = &r[dr] / &b[db];
        q[dr - db] = c.clone();
        for i in 0..=db {
            let sub = &b[i] * &c;
            r[i + dr - db] -= sub;
        }
    }
    q
}

// ---------------------------------------------------------------------------
// field specifications

/// Description of one exact coefficient field: the rationals or a cyclotomic
/// field (characteristic 0), or a finite field `F_{p^s}` (characteristic p).
///
/// The modulus is monic and irreducible over the prime field; a modulus of
/// degree 1 is the prime field itself. Characteristic-0 specs always carry
/// a cyclotomic modulus `Phi_N`, so the order `N` is recorded alongside.
#[derive(Debug, PartialEq, Eq)]
pub struct FieldSpec {
    characteristic: u64,
    modulus: Vec<Scalar>,
    cyclotomic_order: Option<u64>,
}

impl FieldSpec {
    /// The rational field, presented as `Q[z]/(Phi_1)` with `Phi_1 = z - 1`.
    pub fn rationals() -> Arc<FieldSpec> {
        Self::cyclotomic(1)
    }

    /// The cyclotomic field `Q[z]/(Phi_N)`; `Phi_N` is irreducible over `Q`,
    /// so the quotient is a field containing a primitive N-th root of unity
    /// (the class of `z`).
    pub fn cyclotomic(n: u64) -> Arc<FieldSpec> {
        let modulus: Vec<Scalar> = cyclotomic_polynomial(n).into_iter().map(Scalar::Rat).collect();
        Arc::new(FieldSpec {
            characteristic: 0,
            modulus,
            cyclotomic_order: Some(n),
        })
    }

    /// The prime field `F_p`.
    pub fn prime_field(p: u64) -> Result<Arc<FieldSpec>, ExactError> {
        Self::finite(p, 1)
    }

    /// `F_{p^s}`, presented by the lexicographically first monic irreducible
    /// polynomial of degree `s` over `F_p` (constant coefficient varying
    /// fastest). Deterministic, with no dependence on Conway tables.
    pub fn finite(p: u64, s: u32) -> Result<Arc<FieldSpec>, ExactError> {
        if !is_prime(p) {
            return Err(ExactError::NotPrime(p));
        }
        assert!(s >= 1, "extension degree must be positive");
        let mut low = vec![0u64; s as usize];
        loop {
            let mut f: Vec<Scalar> = low.iter().map(|&c| Scalar::Mod(c)).collect();
            f.push(Scalar::Mod(1));
            if is_irreducible_mod_p(p, &f) {
                return Ok(Arc::new(FieldSpec {
                    characteristic: p,
                    modulus: f,
                    cyclotomic_order: None,
                }));
            }
            // next coefficient vector in base-p counting order
            let mut i = 0;
            loop {
                assert!(i < low.len(), "no irreducible polynomial found (impossible)");
                low[i] += 1;
                if low[i] < p {
                    break;
                }
                low[i] = 0;
                i += 1;
            }
        }
    }

    /// The minimal finite field of characteristic `p` containing the N-th
    /// roots of unity: `F_{p^s}` with `s` the multiplicative order of `p`
    /// modulo `N`. Rejects `p | N`, where no such field exists.
    pub fn splitting_field(p: u64, n: u64) -> Result<Arc<FieldSpec>, ExactError> {
        if !is_prime(p) {
            return Err(ExactError::NotPrime(p));
        }
        assert!(n >= 1, "root-of-unity order must be positive");
        if n % p == 0 {
            return Err(ExactError::CharacteristicDividesOrder { p, n });
        }
        let s = order_mod(p, n);
        Self::finite(p, s as u32)
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    /// Degree of the field over its prime field.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[Scalar] {
        &self.modulus
    }

    /// For characteristic-0 specs, the `N` with modulus `Phi_N`.
    pub fn cyclotomic_order(&self) -> Option<u64> {
        self.cyclotomic_order
    }

    pub fn zero(self: &Arc<Self>) -> FieldElement {
        FieldElement {
            spec: Arc::clone(self),
            coeffs: vec![sc_zero(self.characteristic); self.degree()],
        }
    }

    pub fn one(self: &Arc<Self>) -> FieldElement {
        self.integer(1)
    }

    pub fn integer(self: &Arc<Self>, k: i64) -> FieldElement {
        self.from_poly(&[sc_from_i64(self.characteristic, k)])
    }

    pub fn from_bigint(self: &Arc<Self>, k: &BigInt) -> FieldElement {
        self.from_poly(&[sc_from_bigint(self.characteristic, k)])
    }

    /// The class of `z` in the quotient.
    pub fn generator(self: &Arc<Self>) -> FieldElement {
        let p = self.characteristic;
        self.from_poly(&[sc_zero(p), sc_one(p)])
    }

    /// Builds an element from little-endian prime-field coefficients,
    /// reducing modulo the modulus.
    pub fn from_poly(self: &Arc<Self>, coeffs: &[Scalar]) -> FieldElement {
        let mut c = p_rem(self.characteristic, coeffs, &self.modulus);
        c.resize(self.degree(), sc_zero(self.characteristic));
        FieldElement {
            spec: Arc::clone(self),
            coeffs: c,
        }
    }

    /// An element of exact multiplicative order `n`, deterministic for a
    /// fixed spec. For `Q[z]/(Phi_M)` this is a power of the class of `z`
    /// (or of `-z` when only the sign extension reaches order `n`); for
    /// finite fields it is found by scanning elements in base-p counting
    /// order and taking the `(q-1)/n`-th power.
    pub fn root_of_unity(self: &Arc<Self>, n: u64) -> Result<FieldElement, ExactError> {
        assert!(n >= 1, "root-of-unity order must be positive");
        if n == 1 {
            return Ok(self.one());
        }
        if self.characteristic == 0 {
            let m = self.cyclotomic_order.expect("characteristic-0 spec without cyclotomic order");
            if m % n == 0 {
                let zeta = self.generator();
                return Ok(zeta.pow((m / n) as i64));
            }
            // the roots of unity in Q(zeta_M) are ±zeta_M^k, a cyclic group
            // of order lcm(2, M); for odd M it is generated by -zeta_M
            let l = if m % 2 == 0 { m } else { 2 * m };
            if l % n == 0 {
                let g = self.generator().neg();
                let e = g.pow((l / n) as i64);
                debug_assert!(e.has_exact_order(n));
                return Ok(e);
            }
            return Err(ExactError::NoRootOfUnity { n });
        }
        let p = self.characteristic;
        let q_minus_1 = BigUint::from(p).pow(self.degree() as u32) - 1u32;
        if (&q_minus_1 % n).is_zero() {
            let m = &q_minus_1 / n;
            let n_primes: Vec<u64> = factor_u64(n).into_iter().map(|(q, _)| q).collect();
            let mut k: u64 = 1;
            loop {
                let c = self.element_from_counter(k);
                let e = c.pow_biguint(&m);
                if !e.is_one()
                    && n_primes
                        .iter()
                        .all(|q| !e.pow_biguint(&BigUint::from(n / q)).is_one())
                {
                    debug_assert!(e.has_exact_order(n));
                    return Ok(e);
                }
                k = k.checked_add(1).expect("element scan exhausted");
            }
        }
        Err(ExactError::NoRootOfUnity { n })
    }

    /// The element whose coefficient vector is `k` written in base p.
    fn element_from_counter(self: &Arc<Self>, mut k: u64) -> FieldElement {
        let p = self.characteristic;
        let mut coeffs = vec![sc_zero(p); self.degree()];
        let mut i = 0;
        while k > 0 {
            assert!(i < coeffs.len(), "counter exceeds field size");
            coeffs[i] = Scalar::Mod(k % p);
            k /= p;
            i += 1;
        }
        FieldElement {
            spec: Arc::clone(self),
            coeffs,
        }
    }
}

fn is_irreducible_mod_p(p: u64, f: &[Scalar]) -> bool {
    let s = match p_deg(f) {
        Some(d) => d,
        None => return false,
    };
    if s == 0 {
        return false;
    }
    if s == 1 {
        return true;
    }
    let x = vec![sc_zero(p), sc_one(p)];
    // Rabin: x^{p^s} == x mod f, and gcd(x^{p^{s/q}} - x, f) = 1 for primes q | s
    let e_top = BigUint::from(p).pow(s as u32);
    let xp = p_modexp(p, &x, &e_top, f);
    if sub_poly(p, &xp, &p_rem(p, &x, f)) != Vec::<Scalar>::new() {
        return false;
    }
    for (q, _) in factor_u64(s as u64) {
        let e = BigUint::from(p).pow((s as u64 / q) as u32);
        let xq = p_modexp(p, &x, &e, f);
        let diff = sub_poly(p, &xq, &p_rem(p, &x, f));
        let g = p_gcd(p, &diff, f);
        if p_deg(&g) != Some(0) {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// field elements

/// An element of the field described by its owning [`FieldSpec`], stored as
/// a little-endian coefficient vector of length `spec.degree()`.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    spec: Arc<FieldSpec>,
    coeffs: Vec<Scalar>,
}

impl FieldElement {
    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self == &self.spec.one()
    }

    pub fn same_spec(&self, other: &FieldElement) -> bool {
        Arc::ptr_eq(&self.spec, &other.spec) || *self.spec == *other.spec
    }

    fn check_spec(&self, other: &FieldElement) {
        assert!(self.same_spec(other), "field elements from different fields");
    }

    pub fn add(&self, rhs: &FieldElement) -> FieldElement {
        self.check_spec(rhs);
        let p = self.spec.characteristic;
        self.spec.from_poly(&p_add(p, &self.coeffs, &rhs.coeffs))
    }

    pub fn sub(&self, rhs: &FieldElement) -> FieldElement {
        self.check_spec(rhs);
        let p = self.spec.characteristic;
        self.spec.from_poly(&sub_poly(p, &self.coeffs, &rhs.coeffs))
    }

    pub fn neg(&self) -> FieldElement {
        let p = self.spec.characteristic;
        let coeffs: Vec<Scalar> = self.coeffs.iter().map(|c| sc_neg(p, c)).collect();
        FieldElement {
            spec: Arc::clone(&self.spec),
            coeffs,
        }
    }

    pub fn mul(&self, rhs: &FieldElement) -> FieldElement {
        self.check_spec(rhs);
        let p = self.spec.characteristic;
        self.spec.from_poly(&p_mul(p, &self.coeffs, &rhs.coeffs))
    }

    pub fn inv(&self) -> Option<FieldElement> {
        let p = self.spec.characteristic;
        let inv = p_inv_mod(p, &self.coeffs, &self.spec.modulus)?;
        Some(self.spec.from_poly(&inv))
    }

    pub fn pow(&self, e: i64) -> FieldElement {
        if e < 0 {
            let inv = self.inv().expect("inverse of zero");
            return inv.pow_biguint(&BigUint::from(e.unsigned_abs()));
        }
        self.pow_biguint(&BigUint::from(e as u64))
    }

    pub fn pow_biguint(&self, e: &BigUint) -> FieldElement {
        let p = self.spec.characteristic;
        let f = &self.spec.modulus;
        let r = p_modexp(p, &self.coeffs, e, f);
        self.spec.from_poly(&r)
    }

    /// Whether the element has exact multiplicative order `n`.
    pub fn has_exact_order(&self, n: u64) -> bool {
        if self.is_zero() {
            return false;
        }
        if !self.pow(n as i64).is_one() {
            return false;
        }
        factor_u64(n)
            .into_iter()
            .all(|(q, _)| !self.pow((n / q) as i64).is_one())
    }

    /// Evaluates a rational polynomial (little-endian) at this element;
    /// only valid in characteristic 0.
    pub fn eval_rational_poly(&self, poly: &[BigRational]) -> FieldElement {
        assert_eq!(self.spec.characteristic, 0, "rational evaluation in positive characteristic");
        let mut acc = self.spec.zero();
        for c in poly.iter().rev() {
            acc = acc.mul(self);
            acc = acc.add(&self.spec.from_poly(&[Scalar::Rat(c.clone())]));
        }
        acc
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({})", self)
    }
}

impl fmt::Display for FieldElement {
    /// Polynomial string in the variable `z`, highest power first,
    /// e.g. `z^2-z+1`, `-2z`, `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(usize, &Scalar)> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in terms {
            let (neg, mag) = scalar_sign_split(c, self.spec.characteristic);
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let coef_is_one = mag == "1";
            match k {
                0 => write!(f, "{}", mag)?,
                1 => {
                    if !coef_is_one {
                        write!(f, "{}", mag)?;
                    }
                    write!(f, "z")?;
                }
                _ => {
                    if !coef_is_one {
                        write!(f, "{}", mag)?;
                    }
                    write!(f, "z^{}", k)?;
                }
            }
        }
        Ok(())
    }
}

/// Splits a scalar into (is-negative, magnitude string). Residues mod p are
/// printed as-is in `[0, p)`, never with a sign.
fn scalar_sign_split(c: &Scalar, _p: u64) -> (bool, String) {
    match c {
        Scalar::Rat(r) => {
            if r.is_negative() {
                (true, (-r).to_string())
            } else {
                (false, r.to_string())
            }
        }
        Scalar::Mod(v) => (false, v.to_string()),
    }
}

/// Converts a rational scalar that must be an integer into a `BigInt`.
pub fn rational_to_bigint(r: &BigRational) -> Option<BigInt> {
    if r.denom().is_one() {
        Some(r.numer().clone())
    } else {
        None
    }
}

/// Sign helper used by pretty-printers of integer polynomials.
pub fn bigint_is_negative(b: &BigInt) -> bool {
    b.sign() == Sign::Minus
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn cyclotomic_small_cases() {
        // Phi_1 = z - 1
        assert_eq!(cyclotomic_polynomial(1), vec![rat(-1, 1), rat(1, 1)]);
        // Phi_4 = z^2 + 1
        assert_eq!(cyclotomic_polynomial(4), vec![rat(1, 1), rat(0, 1), rat(1, 1)]);
    }

    #[test]
    fn cyclotomic_15() {
        // independent oracle: divide z^15 - 1 by Phi_1 * Phi_3 * Phi_5
        let c15 = cyclotomic_polynomial(15);
        let expected: Vec<BigRational> = [1i64, -1, 0, 1, -1, 1, 0, -1, 1]
            .iter()
            .map(|&c| rat(c, 1))
            .collect();
        assert_eq!(c15, expected);
        assert_eq!(c15.len() - 1, euler_phi(15) as usize);
    }

    #[test]
    fn splitting_field_degrees() {
        assert_eq!(FieldSpec::splitting_field(2, 15).unwrap().degree(), 4);
        assert_eq!(FieldSpec::splitting_field(7, 3).unwrap().degree(), 1);
        assert_eq!(FieldSpec::splitting_field(3, 8).unwrap().degree(), 2);
        match FieldSpec::splitting_field(3, 15) {
            Err(ExactError::CharacteristicDividesOrder { p: 3, n: 15 }) => {}
            other => panic!("expected CharacteristicDividesOrder, got {:?}", other),
        }
    }

    #[test]
    fn finite_field_modulus_is_first_lexicographic() {
        // F_16: x^4 + x + 1 is the first irreducible quartic over F_2
        let f16 = FieldSpec::finite(2, 4).unwrap();
        let coeffs: Vec<u64> = f16
            .modulus()
            .iter()
            .map(|c| match c {
                Scalar::Mod(v) => *v,
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(coeffs, vec![1, 1, 0, 0, 1]);
    }

    #[test]
    fn roots_of_unity_orders() {
        let f7 = FieldSpec::prime_field(7).unwrap();
        let g = f7.root_of_unity(3).unwrap();
        assert!(g.has_exact_order(3));
        assert_eq!(g, f7.integer(4)); // first hit in the deterministic scan

        let f5 = FieldSpec::prime_field(5).unwrap();
        assert_eq!(f5.root_of_unity(2).unwrap(), f5.integer(4));

        let q15 = FieldSpec::cyclotomic(15);
        assert_eq!(q15.root_of_unity(15).unwrap(), q15.generator());
        assert!(q15.root_of_unity(5).unwrap().has_exact_order(5));
        assert!(q15.root_of_unity(2).unwrap().has_exact_order(2));
        assert!(q15.root_of_unity(4).is_err());

        let f16 = FieldSpec::finite(2, 4).unwrap();
        let z15 = f16.root_of_unity(15).unwrap();
        assert!(z15.has_exact_order(15));
        for d in [1u64, 3, 5] {
            assert!(!z15.pow(d as i64).is_one());
        }
    }

    #[test]
    fn cyclotomic_vanishes_on_its_root() {
        for n in [3u64, 5, 8, 15] {
            let spec = FieldSpec::cyclotomic(n);
            let zeta = spec.root_of_unity(n).unwrap();
            assert!(zeta.eval_rational_poly(&cyclotomic_polynomial(n)).is_zero());
        }
        // finite-characteristic version: Phi_15 vanishes on the order-15
        // element of F_16 (char 2 does not divide 15)
        let f16 = FieldSpec::finite(2, 4).unwrap();
        let zeta = f16.root_of_unity(15).unwrap();
        let phi15 = cyclotomic_polynomial(15);
        let mut acc = f16.zero();
        for c in phi15.iter().rev() {
            acc = acc.mul(&zeta);
            let as_int = rational_to_bigint(c).unwrap();
            acc = acc.add(&f16.from_bigint(&as_int));
        }
        assert!(acc.is_zero());
    }

    #[test]
    fn field_inverses() {
        let q5 = FieldSpec::cyclotomic(5);
        let z = q5.generator();
        let zi = z.inv().unwrap();
        assert!(z.mul(&zi).is_one());
        assert_eq!(zi, z.pow(4));

        let f9 = FieldSpec::finite(3, 2).unwrap();
        for k in 1..9u64 {
            let e = f9.element_from_counter(k);
            let ei = e.inv().unwrap();
            assert!(e.mul(&ei).is_one());
        }
        assert!(f9.zero().inv().is_none());
    }

    #[test]
    fn display_round_trip_shapes() {
        let q4 = FieldSpec::cyclotomic(4);
        let e = q4.generator().mul(&q4.integer(-2)).add(&q4.one());
        assert_eq!(e.to_string(), "-2z+1");
        assert_eq!(q4.zero().to_string(), "0");
        assert_eq!(q4.integer(7).to_string(), "7");
    }
}
