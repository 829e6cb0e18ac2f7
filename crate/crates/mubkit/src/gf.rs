//! Exact arithmetic in finite fields GF(p^n), including the trace map
//! onto the prime field.
//!
//! Elements are coefficient vectors in the power basis of a fixed monic
//! irreducible modulus. The modulus is the first monic irreducible of
//! its degree in counting order (lower coefficients read as a base-p
//! integer, constant term least significant), so every run agrees on
//! the representation.

use crate::error::{Error, Result};

/// Default cap on the number of field elements.
pub const DEFAULT_MAX_FIELD_ORDER: u64 = 1 << 20;

/// GF(p^n) with a fixed monic irreducible modulus of degree n over Z_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GfField {
    p: u64,
    n: usize,
    /// Length n+1, constant term first, leading coefficient 1.
    modulus: Vec<u64>,
}

/// An element of GF(p^n): n residues mod p, constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GfElement {
    pub coeffs: Vec<u64>,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Remainder of `a` divided by monic `m`, coefficients mod p, constant first.
fn poly_rem(mut a: Vec<u64>, m: &[u64], p: u64) -> Vec<u64> {
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = *a.last().unwrap() % p;
        let shift = a.len() - 1 - dm;
        if lead != 0 {
            for i in 0..=dm {
                let t = (lead * m[i]) % p;
                a[shift + i] = (a[shift + i] + p - t) % p;
            }
        }
        a.pop();
    }
    a
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

fn poly_is_zero(a: &[u64]) -> bool {
    a.iter().all(|&c| c == 0)
}

/// Exhaustive reducibility test: a monic polynomial of degree n is
/// reducible iff some monic polynomial of degree 1..=n/2 divides it.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let n = f.len() - 1;
    if n == 1 {
        return true;
    }
    for d in 1..=n / 2 {
        // all monic divisor candidates of degree d
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut t = idx;
            for _ in 0..d {
                g.push(t % p);
                t /= p;
            }
            g.push(1);
            if poly_is_zero(&poly_rem(f.to_vec(), &g, p)) {
                return false;
            }
        }
    }
    true
}

impl GfField {
    /// Build GF(p^n) with the first monic irreducible modulus of degree
    /// n in counting order. For n = 1 the modulus is x.
    pub fn new(p: u64, n: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if n == 0 {
            return Err(Error::InvalidArgument("extension degree must be >= 1".into()));
        }
        let order = (p as u128).checked_pow(n as u32);
        match order {
            Some(o) if o <= DEFAULT_MAX_FIELD_ORDER as u128 => {}
            _ => {
                return Err(Error::ResourceLimit(format!(
                    "field order {p}^{n} exceeds {DEFAULT_MAX_FIELD_ORDER}"
                )))
            }
        }
        if n == 1 {
            return Ok(GfField { p, n, modulus: vec![0, 1] });
        }
        // Scan monic degree-n polynomials in counting order: the lower
        // coefficients read as a base-p integer with the constant term
        // as the least significant digit (x^n, x^n + 1, x^n + x, ...).
        let count = p.pow(n as u32);
        for idx in 0..count {
            let mut f = Vec::with_capacity(n + 1);
            let mut t = idx;
            for _ in 0..n {
                f.push(t % p);
                t /= p;
            }
            f.push(1);
            if is_irreducible(&f, p) {
                return Ok(GfField { p, n, modulus: f });
            }
        }
        unreachable!("an irreducible polynomial of every degree exists")
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.n as u32)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> GfElement {
        GfElement { coeffs: vec![0; self.n] }
    }

    pub fn one(&self) -> GfElement {
        let mut c = vec![0; self.n];
        c[0] = 1;
        GfElement { coeffs: c }
    }

    fn check(&self, a: &GfElement) -> Result<()> {
        if a.coeffs.len() != self.n || a.coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidArgument(
                "element does not belong to this field".into(),
            ));
        }
        Ok(())
    }

    /// Canonical enumeration: element i has coefficients given by the
    /// base-p digits of i, constant term = least significant digit.
    pub fn element(&self, index: u64) -> GfElement {
        let mut c = Vec::with_capacity(self.n);
        let mut t = index;
        for _ in 0..self.n {
            c.push(t % self.p);
            t /= self.p;
        }
        GfElement { coeffs: c }
    }

    pub fn index_of(&self, a: &GfElement) -> u64 {
        let mut idx = 0;
        for &c in a.coeffs.iter().rev() {
            idx = idx * self.p + c;
        }
        idx
    }

    pub fn elements(&self) -> impl Iterator<Item = GfElement> + '_ {
        (0..self.order()).map(move |i| self.element(i))
    }

    pub fn add(&self, a: &GfElement, b: &GfElement) -> GfElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        GfElement { coeffs }
    }

    pub fn neg(&self, a: &GfElement) -> GfElement {
        let coeffs = a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect();
        GfElement { coeffs }
    }

    pub fn sub(&self, a: &GfElement, b: &GfElement) -> GfElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &GfElement, b: &GfElement) -> GfElement {
        let prod = poly_mul(&a.coeffs, &b.coeffs, self.p);
        let mut r = poly_rem(prod, &self.modulus, self.p);
        r.resize(self.n, 0);
        GfElement { coeffs: r }
    }

    pub fn pow(&self, a: &GfElement, mut e: u64) -> GfElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &GfElement) -> Result<GfElement> {
        self.check(a)?;
        if a.coeffs.iter().all(|&c| c == 0) {
            return Err(Error::InvalidArgument("zero has no inverse".into()));
        }
        Ok(self.pow(a, self.order() - 2))
    }

    /// Tr(a) = a + a^p + ... + a^{p^{n-1}}, returned as a residue mod p.
    /// The sum lies in the prime field, so only the constant coefficient
    /// survives; a nonzero higher coefficient would be a defect.
    pub fn trace(&self, a: &GfElement) -> u64 {
        let mut acc = self.zero();
        let mut frob = a.clone();
        for _ in 0..self.n {
            acc = self.add(&acc, &frob);
            frob = self.pow(&frob, self.p);
        }
        debug_assert!(acc.coeffs[1..].iter().all(|&c| c == 0));
        acc.coeffs[0]
    }
}
