//! Exact arithmetic in Galois rings GR(4,n).
//!
//! The modulus is the Graeffe lift of the GF(2^n) modulus: a monic
//! degree-n polynomial over Z_4 whose mod-2 reduction is irreducible.
//! The Teichmuller set (the 2^n solutions of t^{2^n} = t) is computed
//! once at construction by exhaustive fixed-point solve and kept in
//! canonical order: 0 first, 1 second, the rest sorted by coefficient
//! array.

use crate::error::{Error, Result};
use crate::gf::GfField;

pub const DEFAULT_MAX_RING_ELEMS: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gr4Ring {
    n: usize,
    /// Length n+1, constant term first, monic over Z_4.
    modulus: Vec<u64>,
    teich: Vec<Gr4Element>,
}

/// An element of GR(4,n): n residues mod 4, constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gr4Element {
    pub coeffs: Vec<u64>,
}

fn poly_mul_mod4(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % 4;
        }
    }
    out
}

impl Gr4Ring {
    /// Construct GR(4,n). The modulus h satisfies h(x^2) = +-f(x)f(-x)
    /// (mod 4) for f the canonical GF(2^n) modulus, with the sign chosen
    /// to make h monic; h mod 2 equals f.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("degree must be >= 1".into()));
        }
        match 4u64.checked_pow(n as u32) {
            Some(o) if o <= DEFAULT_MAX_RING_ELEMS => {}
            _ => {
                return Err(Error::ResourceLimit(format!(
                    "ring order 4^{n} exceeds {DEFAULT_MAX_RING_ELEMS}"
                )))
            }
        }
        let f2 = GfField::new(2, n)?;
        let f: Vec<u64> = f2.modulus().to_vec(); // entries 0/1, lift to Z_4 as-is
        // f(-x): negate odd-degree coefficients mod 4
        let f_neg: Vec<u64> = f
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 1 { (4 - c) % 4 } else { c })
            .collect();
        let g = poly_mul_mod4(&f, &f_neg); // degree 2n, even powers only
        debug_assert!(g.iter().skip(1).step_by(2).all(|&c| c == 0));
        let mut h: Vec<u64> = g.iter().step_by(2).copied().collect();
        if h[n] != 1 {
            // leading coefficient is -1; flip the sign of h
            for c in h.iter_mut() {
                *c = (4 - *c) % 4;
            }
        }
        debug_assert_eq!(h[n], 1);
        debug_assert!(h.iter().zip(f2.modulus()).all(|(&a, &b)| a % 2 == b));

        let mut ring = Gr4Ring { n, modulus: h, teich: vec![] };
        ring.teich = ring.solve_teichmuller();
        Ok(ring)
    }

    fn solve_teichmuller(&self) -> Vec<Gr4Element> {
        let q = 1u64 << self.n; // 2^n
        let mut fixed: Vec<Gr4Element> = self
            .elements()
            .filter(|x| self.pow(x, q) == *x)
            .collect();
        let zero = self.zero();
        let one = self.one();
        fixed.retain(|x| *x != zero && *x != one);
        fixed.sort();
        let mut out = vec![zero, one];
        out.extend(fixed);
        debug_assert_eq!(out.len() as u64, q);
        out
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u64 {
        4u64.pow(self.n as u32)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn teichmuller(&self) -> &[Gr4Element] {
        &self.teich
    }

    pub fn zero(&self) -> Gr4Element {
        Gr4Element { coeffs: vec![0; self.n] }
    }

    pub fn one(&self) -> Gr4Element {
        let mut c = vec![0; self.n];
        c[0] = 1;
        Gr4Element { coeffs: c }
    }

    /// Canonical enumeration: base-4 digits of the index, constant first.
    pub fn element(&self, index: u64) -> Gr4Element {
        let mut c = Vec::with_capacity(self.n);
        let mut t = index;
        for _ in 0..self.n {
            c.push(t % 4);
            t /= 4;
        }
        Gr4Element { coeffs: c }
    }

    pub fn index_of(&self, a: &Gr4Element) -> u64 {
        let mut idx = 0;
        for &c in a.coeffs.iter().rev() {
            idx = idx * 4 + c;
        }
        idx
    }

    pub fn elements(&self) -> impl Iterator<Item = Gr4Element> + '_ {
        (0..self.order()).map(move |i| self.element(i))
    }

    pub fn add(&self, a: &Gr4Element, b: &Gr4Element) -> Gr4Element {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % 4)
            .collect();
        Gr4Element { coeffs }
    }

    pub fn neg(&self, a: &Gr4Element) -> Gr4Element {
        let coeffs = a.coeffs.iter().map(|&x| (4 - x) % 4).collect();
        Gr4Element { coeffs }
    }

    pub fn mul(&self, a: &Gr4Element, b: &Gr4Element) -> Gr4Element {
        let mut prod = poly_mul_mod4(&a.coeffs, &b.coeffs);
        // reduce by the monic modulus
        while prod.len() > self.n {
            let lead = *prod.last().unwrap();
            let shift = prod.len() - 1 - self.n;
            if lead != 0 {
                for i in 0..=self.n {
                    let t = (lead * self.modulus[i]) % 4;
                    prod[shift + i] = (prod[shift + i] + 4 - t) % 4;
                }
            }
            prod.pop();
        }
        prod.resize(self.n, 0);
        Gr4Element { coeffs: prod }
    }

    pub fn pow(&self, a: &Gr4Element, mut e: u64) -> Gr4Element {
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

    /// Scalar multiple by an integer (repeated addition, mod 4 on coeffs).
    pub fn scale(&self, k: u64, a: &Gr4Element) -> Gr4Element {
        let coeffs = a.coeffs.iter().map(|&x| (k * x) % 4).collect();
        Gr4Element { coeffs }
    }

    /// The unique 2-adic split r = t0 + 2*t1 with t0, t1 in the
    /// Teichmuller set.
    pub fn split(&self, r: &Gr4Element) -> (Gr4Element, Gr4Element) {
        let t0 = self
            .teich
            .iter()
            .find(|t| {
                r.coeffs
                    .iter()
                    .zip(&t.coeffs)
                    .all(|(&a, &b)| (a + 4 - b) % 2 == 0)
            })
            .expect("Teichmuller set is a transversal to 2R");
        let diff = self.add(r, &self.neg(t0));
        let t1 = self
            .teich
            .iter()
            .find(|t| self.scale(2, t) == diff)
            .expect("even element is twice a Teichmuller element");
        (t0.clone(), t1.clone())
    }

    /// Frobenius phi(t0 + 2 t1) = t0^2 + 2 t1^2.
    pub fn frobenius(&self, r: &Gr4Element) -> Gr4Element {
        let (t0, t1) = self.split(r);
        self.add(&self.mul(&t0, &t0), &self.scale(2, &self.mul(&t1, &t1)))
    }

    /// Tr(r) = sum of the n Frobenius images, a residue mod 4.
    pub fn trace(&self, r: &Gr4Element) -> u64 {
        let mut acc = self.zero();
        let mut x = r.clone();
        for _ in 0..self.n {
            acc = self.add(&acc, &x);
            x = self.frobenius(&x);
        }
        debug_assert!(acc.coeffs[1..].iter().all(|&c| c == 0));
        acc.coeffs[0]
    }
}
