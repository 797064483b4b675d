//! The finite field F_q = F_p(alpha), q = p^k odd, with exact element
//! arithmetic and square testing.
//!
//! Elements are stored in the canonical integer encoding: an element with
//! polynomial-basis coordinates (c_0, ..., c_{k-1}) over F_p is the integer
//! sum c_i * p^i. This makes the canonical enumeration order of F_q the plain
//! integer order, and keeps elements Copy.

use crate::error::{Error, Result};

/// Largest supported extension degree. Far beyond desk scale already.
const MAX_K: usize = 16;

/// An element of F_q in canonical integer encoding (`value < q`).
///
/// All arithmetic lives on [`FieldCtx`]; an `FqElem` is only meaningful
/// relative to the context that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FqElem(pub u64);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn encode(self) -> u64 {
        self.0
    }
}

/// The field F_q = F_p[alpha]/(m(alpha)) with p an odd prime and m the
/// canonical monic irreducible modulus of degree k.
///
/// Immutable after construction and freely shareable between threads; every
/// operation is deterministic and side-effect free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldCtx {
    p: u64,
    k: usize,
    q: u64,
    /// Monic modulus, k + 1 coefficients over F_p, low degree first.
    modulus: Vec<u64>,
    /// The fixed canonical nonsquare z of F_q^x.
    nonsquare: FqElem,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldCtx {
    /// Builds F_{p^k} with the canonical modulus: the lexicographically least
    /// monic irreducible of degree k over F_p, coefficient tuples
    /// (c_0, ..., c_{k-1}) compared low degree first.
    pub fn new(p: u64, k: usize) -> Result<FieldCtx> {
        if p == 2 {
            return Err(Error::CharacteristicTwo);
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::ZeroExtensionDegree);
        }
        if k > MAX_K {
            return Err(Error::ExtensionTooLarge(k));
        }
        let q = (0..k).try_fold(1u64, |acc, _| acc.checked_mul(p)).ok_or(Error::FieldTooLarge)?;

        let modulus = canonical_modulus(p, k);
        let mut ctx = FieldCtx { p, k, q, modulus, nonsquare: FqElem::ZERO };
        ctx.nonsquare = ctx
            .elements()
            .find(|&x| !x.is_zero() && !ctx.is_square(x))
            .expect("odd q has (q-1)/2 nonsquares");
        Ok(ctx)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Modulus coefficients over F_p, low degree first, length k + 1.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The fixed nonsquare z, first in the canonical enumeration of F_q^x.
    pub fn nonsquare(&self) -> FqElem {
        self.nonsquare
    }

    pub fn zero(&self) -> FqElem {
        FqElem::ZERO
    }

    pub fn one(&self) -> FqElem {
        FqElem::ONE
    }

    /// The element encoded by `value` (must be < q).
    pub fn element(&self, value: u64) -> FqElem {
        debug_assert!(value < self.q);
        FqElem(value)
    }

    /// The constant c mod p embedded into F_q.
    pub fn from_int(&self, c: u64) -> FqElem {
        FqElem(c % self.p)
    }

    /// alpha itself (equals 0 in the degenerate k = 1 context).
    pub fn alpha(&self) -> FqElem {
        if self.k == 1 {
            FqElem::ZERO
        } else {
            FqElem(self.p)
        }
    }

    /// All elements of F_q in canonical enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.q).map(FqElem)
    }

    /// Polynomial-basis coordinates of `x`, low degree first, length k.
    pub fn coords(&self, x: FqElem) -> Vec<u64> {
        let mut v = x.0;
        (0..self.k)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    fn decode(&self, x: FqElem, out: &mut [u64; MAX_K]) {
        let mut v = x.0;
        for slot in out.iter_mut().take(self.k) {
            *slot = v % self.p;
            v /= self.p;
        }
    }

    fn encode(&self, coords: &[u64; MAX_K]) -> FqElem {
        let mut v = 0u64;
        for i in (0..self.k).rev() {
            v = v * self.p + coords[i];
        }
        FqElem(v)
    }

    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        let (mut x, mut y) = ([0u64; MAX_K], [0u64; MAX_K]);
        self.decode(a, &mut x);
        self.decode(b, &mut y);
        for i in 0..self.k {
            x[i] = (x[i] + y[i]) % self.p;
        }
        self.encode(&x)
    }

    pub fn neg(&self, a: FqElem) -> FqElem {
        let mut x = [0u64; MAX_K];
        self.decode(a, &mut x);
        for c in x.iter_mut().take(self.k) {
            *c = (self.p - *c) % self.p;
        }
        self.encode(&x)
    }

    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        if self.k == 1 {
            return FqElem((a.0 * b.0) % self.p);
        }
        let (mut x, mut y) = ([0u64; MAX_K], [0u64; MAX_K]);
        self.decode(a, &mut x);
        self.decode(b, &mut y);
        // Schoolbook product then reduction by the monic modulus.
        let mut prod = [0u64; 2 * MAX_K];
        for i in 0..self.k {
            if x[i] == 0 {
                continue;
            }
            for j in 0..self.k {
                prod[i + j] = (prod[i + j] + x[i] * y[j]) % self.p;
            }
        }
        for i in (self.k..2 * self.k - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..self.k {
                let m = self.modulus[j];
                if m != 0 {
                    let idx = i - self.k + j;
                    prod[idx] = (prod[idx] + c * (self.p - m)) % self.p;
                }
            }
        }
        let mut out = [0u64; MAX_K];
        out[..self.k].copy_from_slice(&prod[..self.k]);
        self.encode(&out)
    }

    pub fn pow(&self, a: FqElem, mut e: u128) -> FqElem {
        let mut base = a;
        let mut acc = FqElem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FqElem) -> Option<FqElem> {
        if a.is_zero() {
            return None;
        }
        Some(self.pow(a, (self.q - 2) as u128))
    }

    /// True iff x is a square in F_q (zero counts as a square). For x != 0
    /// this is the Euler criterion x^((q-1)/2) = 1.
    pub fn is_square(&self, x: FqElem) -> bool {
        if x.is_zero() {
            return true;
        }
        self.pow(x, ((self.q - 1) / 2) as u128) == FqElem::ONE
    }
}

/// Lexicographically least monic irreducible of degree k over F_p,
/// coefficients compared low degree first.
fn canonical_modulus(p: u64, k: usize) -> Vec<u64> {
    if k == 1 {
        // The polynomial alpha itself; F_p(alpha) with alpha = 0.
        return vec![0, 1];
    }
    let mut coeffs = vec![0u64; k + 1];
    coeffs[k] = 1;
    loop {
        if prime_field_irreducible(&coeffs, p) {
            return coeffs;
        }
        // Low-degree-first lexicographic successor: c_{k-1} is the fastest
        // digit, c_0 the slowest.
        let mut i = k - 1;
        loop {
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
            if i == 0 {
                unreachable!("irreducibles of every degree exist over F_p");
            }
            i -= 1;
        }
    }
}

/// Irreducibility over F_p by trial division against all monic polynomials of
/// degree at most deg/2. Only used for modulus search, where degrees are tiny.
fn prime_field_irreducible(f: &[u64], p: u64) -> bool {
    let n = f.len() - 1;
    if n == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    for deg in 1..=n / 2 {
        let mut cand = vec![0u64; deg + 1];
        cand[deg] = 1;
        loop {
            if divides(&cand, f, p) {
                return false;
            }
            let mut i = 0;
            while i < deg {
                cand[i] += 1;
                if cand[i] < p {
                    break;
                }
                cand[i] = 0;
                i += 1;
            }
            if i == deg {
                break;
            }
        }
    }
    true
}

/// Does `d` divide `f` over F_p?
fn divides(d: &[u64], f: &[u64], p: u64) -> bool {
    let mut rem: Vec<u64> = f.to_vec();
    let dn = d.len() - 1;
    while rem.len() >= d.len() {
        let lead = *rem.last().unwrap();
        if lead != 0 {
            let shift = rem.len() - d.len();
            for j in 0..=dn {
                let idx = shift + j;
                rem[idx] = (rem[idx] + lead * (p - d[j])) % p;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c == 0)
}
