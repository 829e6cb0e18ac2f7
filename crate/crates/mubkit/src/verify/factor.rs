//! Tensor factorization: recover component bases A and B from a family
//! in dimension N1*N2, with the norm identities checked exactly in
//! rational arithmetic.
//!
//! Conventions: vector index (i,j) and component index (l1,l2) are both
//! row-major. The unnormalized a-factor of vector (i,0) is the first
//! column of its reshaped matrix; the unnormalized b-factor is the first
//! row divided by the corner entry. Recovered bases are re-normalized to
//! unit vectors with first component exponent 0.

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::mub::{Basis, MubFamily, PhaseVector};
use crate::verify::cyclo::CycloRing;

/// One basis split into components, with the squared norms of the
/// unnormalized factors (L_a * L_b = 1 is the product identity).
#[derive(Debug, Clone)]
pub struct FactorResult {
    pub a: Basis,
    pub b: Basis,
    pub l_a: Ratio<u64>,
    pub l_b: Ratio<u64>,
}

/// A whole family split into two families, with the per-basis norms and
/// the per-pair squared cross-overlap constants K_A^2, K_B^2.
#[derive(Debug, Clone)]
pub struct FamilyFactorization {
    pub a: MubFamily,
    pub b: MubFamily,
    pub l_a: Vec<Ratio<u64>>,
    pub l_b: Vec<Ratio<u64>>,
    pub k_a_sq: Vec<(usize, usize, Ratio<u64>)>,
    pub k_b_sq: Vec<(usize, usize, Ratio<u64>)>,
}

/// Divide out the gcd of a phase basis's exponents and root order, so a
/// basis built at an inflated common root returns to its natural one.
pub fn reduce_basis_root(basis: &Basis) -> Basis {
    match basis {
        Basis::Standard { .. } => basis.clone(),
        Basis::Phase { dim, root, vectors } => {
            let mut g = *root;
            for v in vectors {
                for &e in &v.exps {
                    g = g.gcd(&e);
                }
            }
            if g <= 1 {
                return basis.clone();
            }
            Basis::Phase {
                dim: *dim,
                root: root / g,
                vectors: vectors
                    .iter()
                    .map(|v| PhaseVector {
                        exps: v.exps.iter().map(|&e| e / g).collect(),
                    })
                    .collect(),
            }
        }
    }
}

/// Split every vector of one basis as a (x) b. Fails with a minor
/// witness if some vector is not a product, or with a labeling witness
/// if the row/column factors disagree across the vector grid.
pub fn factor_basis(basis: &Basis, n1: usize, n2: usize) -> Result<FactorResult> {
    if n1 < 2 || n2 < 2 || basis.dim() != n1 * n2 {
        return Err(Error::InvalidArgument(format!(
            "cannot factor dimension {} as {n1} x {n2}",
            basis.dim()
        )));
    }
    let one = Ratio::from_integer(1u64);
    match basis {
        Basis::Standard { .. } => Ok(FactorResult {
            a: Basis::Standard { dim: n1 },
            b: Basis::Standard { dim: n2 },
            l_a: one,
            l_b: one,
        }),
        Basis::Phase { root, vectors, .. } => {
            let m = *root;
            let e = |v: &PhaseVector, l1: usize, l2: usize| v.exps[l1 * n2 + l2];
            // per-vector product test and factor directions
            let mut a_dirs = Vec::with_capacity(vectors.len());
            let mut b_dirs = Vec::with_capacity(vectors.len());
            for (idx, v) in vectors.iter().enumerate() {
                for l1 in 1..n1 {
                    for l2 in 1..n2 {
                        if (e(v, l1, l2) + e(v, 0, 0)) % m != (e(v, l1, 0) + e(v, 0, l2)) % m {
                            return Err(Error::NotAProduct {
                                index: idx,
                                r0: 0,
                                r1: l1,
                                c0: 0,
                                c1: l2,
                            });
                        }
                    }
                }
                let corner = e(v, 0, 0);
                a_dirs.push(
                    (0..n1)
                        .map(|l1| (e(v, l1, 0) + m - corner) % m)
                        .collect::<Vec<u64>>(),
                );
                b_dirs.push(
                    (0..n2)
                        .map(|l2| (e(v, 0, l2) + m - corner) % m)
                        .collect::<Vec<u64>>(),
                );
            }
            // labeling: the a-factor may depend only on i, the b-factor
            // only on j, for vector index (i,j)
            for i in 0..n1 {
                for j in 0..n2 {
                    let idx = i * n2 + j;
                    if a_dirs[idx] != a_dirs[i * n2] {
                        return Err(Error::Labeling(format!(
                            "vector ({i},{j}) carries a different left factor than ({i},0)"
                        )));
                    }
                    if b_dirs[idx] != b_dirs[j] {
                        return Err(Error::Labeling(format!(
                            "vector ({i},{j}) carries a different right factor than (0,{j})"
                        )));
                    }
                }
            }
            // unnormalized factors: column entries have modulus
            // 1/sqrt(N1 N2), row entries modulus 1
            let l_a = Ratio::new(1, n2 as u64);
            let l_b = Ratio::from_integer(n2 as u64);
            let a_vectors = (0..n1)
                .map(|i| PhaseVector { exps: a_dirs[i * n2].clone() })
                .collect();
            let b_vectors = (0..n2)
                .map(|j| PhaseVector { exps: b_dirs[j].clone() })
                .collect();
            Ok(FactorResult {
                a: reduce_basis_root(&Basis::Phase { dim: n1, root: m, vectors: a_vectors }),
                b: reduce_basis_root(&Basis::Phase { dim: n2, root: m, vectors: b_vectors }),
                l_a,
                l_b,
            })
        }
    }
}

/// Factor every basis of a family and check the norm identities: the
/// per-basis product L_a * L_b = 1 and, per basis pair, constancy of the
/// squared cross overlaps with L_a L_a' = N1 K_A^2 (same on the B side).
pub fn factor_family(family: &MubFamily, n1: usize, n2: usize) -> Result<FamilyFactorization> {
    let mut parts = Vec::with_capacity(family.bases.len());
    for basis in &family.bases {
        parts.push(factor_basis(basis, n1, n2)?);
    }
    for (t, part) in parts.iter().enumerate() {
        if part.l_a * part.l_b != Ratio::from_integer(1u64) {
            return Err(Error::PropertyViolation(format!(
                "basis {t}: L_a * L_b = {} != 1",
                part.l_a * part.l_b
            )));
        }
    }
    let mut k_a_sq = Vec::new();
    let mut k_b_sq = Vec::new();
    for t1 in 0..parts.len() {
        for t2 in t1 + 1..parts.len() {
            let ka = cross_constant(&parts[t1].a, &parts[t2].a, t1, t2, "A")?;
            let kb = cross_constant(&parts[t1].b, &parts[t2].b, t1, t2, "B")?;
            // the identity L L' = N K^2 with K^2 = (L L' / N) * u and
            // u the normalized squared overlap; cross_constant proved
            // u = 1/N exactly, so K^2 = L L' / N
            k_a_sq.push((t1, t2, parts[t1].l_a * parts[t2].l_a * ka));
            k_b_sq.push((t1, t2, parts[t1].l_b * parts[t2].l_b * kb));
        }
    }
    let a = MubFamily {
        dim: n1,
        bases: parts.iter().map(|p| p.a.clone()).collect(),
        provenance: format!("{} / left factor", family.provenance),
    };
    let b = MubFamily {
        dim: n2,
        bases: parts.iter().map(|p| p.b.clone()).collect(),
        provenance: format!("{} / right factor", family.provenance),
    };
    Ok(FamilyFactorization {
        a,
        b,
        l_a: parts.iter().map(|p| p.l_a).collect(),
        l_b: parts.iter().map(|p| p.l_b).collect(),
        k_a_sq,
        k_b_sq,
    })
}

/// Verify that |<x_i, y_k>|^2 is the constant 1/N over all normalized
/// vector pairs of two recovered component bases, and return it. For a
/// standard/phase pair the constant is structural.
fn cross_constant(
    x: &Basis,
    y: &Basis,
    t1: usize,
    t2: usize,
    side: &str,
) -> Result<Ratio<u64>> {
    let n = x.dim() as u64;
    match (x, y) {
        (Basis::Standard { .. }, Basis::Standard { .. }) => Err(Error::PropertyViolation(
            format!("bases {t1},{t2}: both {side} factors are standard, overlaps are not constant"),
        )),
        (Basis::Standard { .. }, Basis::Phase { .. })
        | (Basis::Phase { .. }, Basis::Standard { .. }) => Ok(Ratio::new(1, n)),
        (
            Basis::Phase { root: m1, vectors: v1, .. },
            Basis::Phase { root: m2, vectors: v2, .. },
        ) => {
            let m = m1.lcm(m2);
            let ring = CycloRing::new(m);
            let (s1, s2) = (m / m1, m / m2);
            for (i, a) in v1.iter().enumerate() {
                for (k, b) in v2.iter().enumerate() {
                    let mut counts = vec![0i64; m as usize];
                    for (&ea, &eb) in a.exps.iter().zip(&b.exps) {
                        counts[((eb * s2 % m + m - ea * s1 % m) % m) as usize] += 1;
                    }
                    let s = ring.from_exponent_counts(&counts);
                    let nn = ring.norm_squared(&s).expect("same ring");
                    if !ring.eq_integer(&nn, n as i64) {
                        return Err(Error::PropertyViolation(format!(
                            "bases {t1},{t2}: {side}-factor overlap ({i},{k}) breaks the \
                             constant-K identity"
                        )));
                    }
                }
            }
            Ok(Ratio::new(1, n))
        }
    }
}

/// The second singular value of a complex matrix: power iteration for
/// the dominant singular triple, deflation of the matrix itself, then
/// power iteration again. Deflating the matrix (not the Gram matrix)
/// keeps rank-1 defects at machine-precision scale. Used as a numeric
/// rank-1 defect measure for float-entry factorizations.
pub fn second_singular_value(matrix: &[Vec<Complex64>]) -> f64 {
    let cols = matrix.first().map(|r| r.len()).unwrap_or(0);
    if matrix.len() < 2 || cols < 2 {
        return 0.0;
    }
    let (sigma1, u1, v1) = dominant_singular_triple(matrix);
    if sigma1 == 0.0 {
        return 0.0;
    }
    let deflated: Vec<Vec<Complex64>> = matrix
        .iter()
        .zip(&u1)
        .map(|(row, &ui)| {
            row.iter()
                .zip(&v1)
                .map(|(&m, &vj)| m - sigma1 * ui * vj.conj())
                .collect()
        })
        .collect();
    dominant_singular_triple(&deflated).0
}

/// (sigma, u, v) with M v = sigma u, via power iteration on M^H M.
fn dominant_singular_triple(
    matrix: &[Vec<Complex64>],
) -> (f64, Vec<Complex64>, Vec<Complex64>) {
    let rows = matrix.len();
    let cols = matrix[0].len();
    let mut v: Vec<Complex64> = (0..cols)
        .map(|i| Complex64::new(1.0 / (i as f64 + 1.0), 0.3 / (i as f64 + 2.0)))
        .collect();
    normalize(&mut v);
    let mut u = vec![Complex64::new(0.0, 0.0); rows];
    let mut sigma = 0.0;
    for _ in 0..200 {
        for (i, row) in matrix.iter().enumerate() {
            u[i] = row.iter().zip(&v).map(|(&m, &x)| m * x).sum();
        }
        sigma = normalize(&mut u);
        if sigma < 1e-300 {
            return (0.0, u, v);
        }
        for (j, x) in v.iter_mut().enumerate() {
            *x = matrix.iter().zip(&u).map(|(row, &ui)| row[j].conj() * ui).sum();
        }
        normalize(&mut v);
    }
    (sigma, u, v)
}

fn normalize(v: &mut [Complex64]) -> f64 {
    let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    if norm > 1e-300 {
        for x in v.iter_mut() {
            *x /= norm;
        }
    }
    norm
}
