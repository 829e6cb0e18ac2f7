//! Exact arithmetic in Z[zeta_m], the carrier for inner products of
//! phase vectors. Elements are integer coefficient vectors reduced
//! modulo the m-th cyclotomic polynomial.

use crate::error::{Error, Result};

/// The ring Z[zeta_m]: holds m and the monic cyclotomic polynomial
/// Phi_m as an integer coefficient vector (constant term first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloRing {
    m: u64,
    phi: Vec<i64>,
}

/// An element of Z[zeta_m], reduced mod Phi_m; coeffs.len() = deg Phi_m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cyclotomic {
    pub order: u64,
    pub coeffs: Vec<i64>,
}

/// Phi_m computed by dividing x^m - 1 by the cyclotomic polynomials of
/// the proper divisors of m. Integer division is exact throughout.
pub fn cyclotomic_polynomial(m: u64) -> Vec<i64> {
    assert!(m >= 1);
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            let phi_d = cyclotomic_polynomial(d);
            num = exact_div(&num, &phi_d);
        }
    }
    num
}

/// Exact division of integer polynomials, divisor monic.
fn exact_div(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    debug_assert_eq!(b[db], 1);
    let mut quot = vec![0i64; rem.len() - db];
    for i in (0..quot.len()).rev() {
        let c = rem[i + db];
        quot[i] = c;
        if c != 0 {
            for j in 0..=db {
                rem[i + j] -= c * b[j];
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

impl CycloRing {
    pub fn new(m: u64) -> CycloRing {
        CycloRing {
            m,
            phi: cyclotomic_polynomial(m),
        }
    }

    pub fn order(&self) -> u64 {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn zero(&self) -> Cyclotomic {
        Cyclotomic {
            order: self.m,
            coeffs: vec![0; self.degree()],
        }
    }

    pub fn from_integer(&self, n: i64) -> Cyclotomic {
        let mut c = self.zero();
        if self.degree() > 0 {
            c.coeffs[0] = n;
        }
        c
    }

    /// zeta_m^e as a reduced element.
    pub fn root_power(&self, e: u64) -> Cyclotomic {
        let mut counts = vec![0i64; self.m as usize];
        counts[(e % self.m) as usize] = 1;
        self.from_exponent_counts(&counts)
    }

    /// sum over exponents: counts[e] copies of zeta_m^e, reduced.
    pub fn from_exponent_counts(&self, counts: &[i64]) -> Cyclotomic {
        debug_assert_eq!(counts.len(), self.m as usize);
        Cyclotomic {
            order: self.m,
            coeffs: self.reduce(counts.to_vec()),
        }
    }

    fn reduce(&self, mut poly: Vec<i64>) -> Vec<i64> {
        let d = self.degree();
        while poly.len() > d {
            let c = *poly.last().unwrap();
            let shift = poly.len() - 1 - d;
            if c != 0 {
                for j in 0..=d {
                    poly[shift + j] -= c * self.phi[j];
                }
            }
            poly.pop();
        }
        poly.resize(d, 0);
        poly
    }

    fn check(&self, a: &Cyclotomic) -> Result<()> {
        if a.order != self.m || a.coeffs.len() != self.degree() {
            return Err(Error::InvalidArgument(format!(
                "cyclotomic order mismatch: expected {}, got {}",
                self.m, a.order
            )));
        }
        Ok(())
    }

    pub fn add(&self, a: &Cyclotomic, b: &Cyclotomic) -> Result<Cyclotomic> {
        self.check(a)?;
        self.check(b)?;
        Ok(Cyclotomic {
            order: self.m,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| x + y).collect(),
        })
    }

    pub fn mul(&self, a: &Cyclotomic, b: &Cyclotomic) -> Result<Cyclotomic> {
        self.check(a)?;
        self.check(b)?;
        let d = self.degree();
        if d == 0 {
            return Ok(self.zero());
        }
        let mut prod = vec![0i64; 2 * d - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        Ok(Cyclotomic {
            order: self.m,
            coeffs: self.reduce(prod),
        })
    }

    /// Complex conjugation: zeta -> zeta^{m-1}.
    pub fn conj(&self, a: &Cyclotomic) -> Result<Cyclotomic> {
        self.check(a)?;
        let mut counts = vec![0i64; self.m as usize];
        for (i, &c) in a.coeffs.iter().enumerate() {
            if c != 0 {
                let e = (self.m as usize - i) % self.m as usize;
                counts[e] += c;
            }
        }
        Ok(self.from_exponent_counts(&counts))
    }

    /// |a|^2 = a * conj(a).
    pub fn norm_squared(&self, a: &Cyclotomic) -> Result<Cyclotomic> {
        let c = self.conj(a)?;
        self.mul(a, &c)
    }

    pub fn is_zero(&self, a: &Cyclotomic) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }

    pub fn eq_integer(&self, a: &Cyclotomic, n: i64) -> bool {
        if self.degree() == 0 {
            return n == 0;
        }
        a.coeffs[0] == n && a.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// Numeric embedding zeta_m -> exp(2 pi i / m), for float cross-checks.
    pub fn to_complex(&self, a: &Cyclotomic) -> num_complex::Complex64 {
        let mut z = num_complex::Complex64::new(0.0, 0.0);
        for (i, &c) in a.coeffs.iter().enumerate() {
            let theta = 2.0 * std::f64::consts::PI * (i as f64) / (self.m as f64);
            z += (c as f64) * num_complex::Complex64::new(theta.cos(), theta.sin());
        }
        z
    }
}
