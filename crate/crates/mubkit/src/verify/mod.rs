//! Exact and floating-point verification of orthonormality and
//! unbiasedness, the maximal-MUB-subset computation, the bound
//! calculator, tensor factorization, and the no-go search harness.
//!
//! Exact mode reduces every inner-product sum in Z[zeta_m] and compares
//! S * conj(S) against the integer N, so verdicts are tolerance-free.

pub mod clique;
pub mod cyclo;
pub mod factor;
pub mod nogo;

use num_complex::Complex64;
use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mub::{Basis, MubFamily, PhaseVector};
use crate::ring::factorize;
use cyclo::{CycloRing, Cyclotomic};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Mode {
    Exact,
    Float { tolerance: f64 },
}

pub const DEFAULT_FLOAT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Serialize)]
pub struct PairVerdict {
    pub pass: bool,
    pub witness: Option<String>,
}

impl PairVerdict {
    fn pass() -> Self {
        PairVerdict { pass: true, witness: None }
    }

    fn fail(witness: String) -> Self {
        PairVerdict { pass: false, witness: Some(witness) }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub dim: usize,
    pub mode: Mode,
    /// One verdict per basis.
    pub orthonormal: Vec<PairVerdict>,
    /// One verdict per unordered basis pair (i < j).
    pub unbiased: Vec<(usize, usize, PairVerdict)>,
    pub all_pass: bool,
}

/// The exact inner product of two phase vectors: the unscaled sum
/// sum_l zeta^{w_l - v_l} lifted to the lcm root order, plus the scale
/// denominator N (the actual product is the sum divided by N).
pub fn inner_product_exact(
    v: &PhaseVector,
    v_root: u64,
    w: &PhaseVector,
    w_root: u64,
) -> Result<(Cyclotomic, usize)> {
    if v.exps.len() != w.exps.len() {
        return Err(Error::InvalidArgument("dimension mismatch".into()));
    }
    let m = v_root.lcm(&w_root);
    let ring = CycloRing::new(m);
    Ok((pair_sum(&ring, v, m / v_root, w, m / w_root), v.exps.len()))
}

/// sum_l zeta_m^{(w_l * sw - v_l * sv) mod m} as a reduced cyclotomic.
fn pair_sum(ring: &CycloRing, v: &PhaseVector, sv: u64, w: &PhaseVector, sw: u64) -> Cyclotomic {
    let m = ring.order();
    let mut counts = vec![0i64; m as usize];
    for (&e, &f) in v.exps.iter().zip(&w.exps) {
        let d = (f * sw % m + m - e * sv % m) % m;
        counts[d as usize] += 1;
    }
    ring.from_exponent_counts(&counts)
}

pub fn check_orthonormal(basis: &Basis, mode: Mode) -> PairVerdict {
    match mode {
        Mode::Exact => check_orthonormal_exact(basis),
        Mode::Float { tolerance } => {
            check_orthonormal_float(&basis_to_complex(basis), tolerance)
        }
    }
}

fn check_orthonormal_exact(basis: &Basis) -> PairVerdict {
    match basis {
        Basis::Standard { .. } => PairVerdict::pass(),
        Basis::Phase { root, vectors, .. } => {
            let ring = CycloRing::new(*root);
            for i in 0..vectors.len() {
                for j in i + 1..vectors.len() {
                    let s = pair_sum(&ring, &vectors[i], 1, &vectors[j], 1);
                    if !ring.is_zero(&s) {
                        return PairVerdict::fail(format!(
                            "vectors ({i},{j}) are not orthogonal: unscaled sum {:?}",
                            s.coeffs
                        ));
                    }
                }
            }
            // diagonal entries are N/N = 1 structurally (exponents cancel)
            PairVerdict::pass()
        }
    }
}

pub fn check_unbiased_pair(b1: &Basis, b2: &Basis, mode: Mode) -> PairVerdict {
    match mode {
        Mode::Exact => check_unbiased_exact(b1, b2),
        Mode::Float { tolerance } => check_unbiased_float(
            &basis_to_complex(b1),
            &basis_to_complex(b2),
            tolerance,
        ),
    }
}

fn check_unbiased_exact(b1: &Basis, b2: &Basis) -> PairVerdict {
    let n = b1.dim();
    match (b1, b2) {
        (Basis::Standard { .. }, Basis::Standard { .. }) => PairVerdict::fail(format!(
            "standard basis against itself: |<e_0,e_0>|^2 = 1 != 1/{n}"
        )),
        // every phase-vector entry has modulus 1/sqrt(N) structurally
        (Basis::Standard { .. }, Basis::Phase { .. })
        | (Basis::Phase { .. }, Basis::Standard { .. }) => PairVerdict::pass(),
        (
            Basis::Phase { root: m1, vectors: v1, .. },
            Basis::Phase { root: m2, vectors: v2, .. },
        ) => {
            let m = m1.lcm(m2);
            let ring = CycloRing::new(m);
            let (s1, s2) = (m / m1, m / m2);
            for (i, a) in v1.iter().enumerate() {
                for (j, b) in v2.iter().enumerate() {
                    let s = pair_sum(&ring, a, s1, b, s2);
                    let nn = ring.norm_squared(&s).expect("same ring");
                    if !ring.eq_integer(&nn, n as i64) {
                        return PairVerdict::fail(format!(
                            "|<v_{i}, w_{j}>|^2 * N^2 = {:?} != {n}",
                            nn.coeffs
                        ));
                    }
                }
            }
            PairVerdict::pass()
        }
    }
}

/// Verify every basis and every unordered pair of a family.
pub fn verify_family(family: &MubFamily, mode: Mode) -> Result<VerificationReport> {
    if family.bases.iter().any(|b| b.dim() != family.dim) {
        return Err(Error::InvalidArgument("basis dimension mismatch".into()));
    }
    let orthonormal: Vec<PairVerdict> = family
        .bases
        .iter()
        .map(|b| check_orthonormal(b, mode))
        .collect();
    let mut unbiased = Vec::new();
    for i in 0..family.bases.len() {
        for j in i + 1..family.bases.len() {
            let v = check_unbiased_pair(&family.bases[i], &family.bases[j], mode);
            unbiased.push((i, j, v));
        }
    }
    let all_pass = orthonormal.iter().all(|v| v.pass)
        && unbiased.iter().all(|(_, _, v)| v.pass);
    Ok(VerificationReport {
        dim: family.dim,
        mode,
        orthonormal,
        unbiased,
        all_pass,
    })
}

// ---- float mode -----------------------------------------------------------

/// Concrete complex vectors of a basis (rows are vectors).
pub fn basis_to_complex(basis: &Basis) -> Vec<Vec<Complex64>> {
    match basis {
        Basis::Standard { dim } => (0..*dim)
            .map(|i| {
                let mut v = vec![Complex64::new(0.0, 0.0); *dim];
                v[i] = Complex64::new(1.0, 0.0);
                v
            })
            .collect(),
        Basis::Phase { dim, root, vectors } => {
            let scale = 1.0 / (*dim as f64).sqrt();
            vectors
                .iter()
                .map(|v| {
                    v.exps
                        .iter()
                        .map(|&e| {
                            let theta =
                                2.0 * std::f64::consts::PI * (e as f64) / (*root as f64);
                            Complex64::new(theta.cos(), theta.sin()) * scale
                        })
                        .collect()
                })
                .collect()
        }
    }
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn check_orthonormal_float(vectors: &[Vec<Complex64>], tol: f64) -> PairVerdict {
    for i in 0..vectors.len() {
        for j in i..vectors.len() {
            let d = dot(&vectors[i], &vectors[j]);
            let expected = if i == j { 1.0 } else { 0.0 };
            let err = (d - expected).norm();
            if err > tol {
                return PairVerdict::fail(format!(
                    "<v_{i}, v_{j}> deviates by {err:.3e}"
                ));
            }
        }
    }
    PairVerdict::pass()
}

pub fn check_unbiased_float(
    v1: &[Vec<Complex64>],
    v2: &[Vec<Complex64>],
    tol: f64,
) -> PairVerdict {
    let n = v1.len() as f64;
    for (i, a) in v1.iter().enumerate() {
        for (j, b) in v2.iter().enumerate() {
            let p = dot(a, b).norm_sqr();
            if (p - 1.0 / n).abs() > tol {
                return PairVerdict::fail(format!(
                    "|<v_{i}, w_{j}>|^2 = {p:.12} != 1/{n}"
                ));
            }
        }
    }
    PairVerdict::pass()
}

/// Verify a family given as raw complex vectors (float mode only).
pub fn verify_float_family(bases: &[Vec<Vec<Complex64>>], tol: f64) -> VerificationReport {
    let dim = bases.first().map(|b| b.len()).unwrap_or(0);
    let orthonormal: Vec<PairVerdict> = bases
        .iter()
        .map(|b| check_orthonormal_float(b, tol))
        .collect();
    let mut unbiased = Vec::new();
    for i in 0..bases.len() {
        for j in i + 1..bases.len() {
            unbiased.push((i, j, check_unbiased_float(&bases[i], &bases[j], tol)));
        }
    }
    let all_pass = orthonormal.iter().all(|v| v.pass)
        && unbiased.iter().all(|(_, _, v)| v.pass);
    VerificationReport {
        dim,
        mode: Mode::Float { tolerance: tol },
        orthonormal,
        unbiased,
        all_pass,
    }
}

// ---- bound and max subset ---------------------------------------------------

/// 1 + min_i p_i^{e_i} over the prime factorization of N: the ceiling
/// for MUB families described by character-of-polynomial formulas.
pub fn mub_bound(n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::InvalidArgument("bound needs N >= 2".into()));
    }
    let min_pe = factorize(n)
        .iter()
        .map(|&(p, e)| p.pow(e))
        .min()
        .expect("n >= 2 has a prime factor");
    Ok(1 + min_pe)
}

pub const MAX_CLIQUE_NODES: usize = 64;

/// The outcome of a maximal-MUB-subset computation.
#[derive(Debug, Clone)]
pub struct MaxSubset {
    pub size: usize,
    /// Indices (into the family) of a maximum mutually unbiased subset.
    pub witness: Vec<usize>,
    /// Indices of bases dropped because they are not orthonormal.
    pub dropped: Vec<usize>,
}

/// Exact maximum clique in the unbiasedness graph of the family's
/// orthonormal bases.
pub fn mub_max_subset(family: &MubFamily) -> Result<MaxSubset> {
    if family.bases.len() > MAX_CLIQUE_NODES {
        return Err(Error::ResourceLimit(format!(
            "max-subset computation bounded at {MAX_CLIQUE_NODES} bases"
        )));
    }
    let mut kept = Vec::new();
    let mut dropped = Vec::new();
    for (i, b) in family.bases.iter().enumerate() {
        if check_orthonormal(b, Mode::Exact).pass {
            kept.push(i);
        } else {
            dropped.push(i);
        }
    }
    let adj = unbiased_graph(&family.bases, &kept);
    let (size, members) = clique::max_clique(&adj);
    let witness = members.into_iter().map(|i| kept[i]).collect();
    Ok(MaxSubset { size, witness, dropped })
}

/// Adjacency of exact pairwise unbiasedness among the selected bases.
pub(crate) fn unbiased_graph(bases: &[Basis], selected: &[usize]) -> Vec<Vec<bool>> {
    let k = selected.len();
    let mut adj = vec![vec![false; k]; k];
    for a in 0..k {
        for b in a + 1..k {
            let ok =
                check_unbiased_pair(&bases[selected[a]], &bases[selected[b]], Mode::Exact).pass;
            adj[a][b] = ok;
            adj[b][a] = ok;
        }
    }
    adj
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mub;

    #[test]
    fn bound_values() {
        assert_eq!(mub_bound(6).unwrap(), 3);
        assert_eq!(mub_bound(12).unwrap(), 4);
        assert_eq!(mub_bound(9).unwrap(), 10);
        assert_eq!(mub_bound(30).unwrap(), 3);
        assert!(mub_bound(1).is_err());
    }

    #[test]
    fn standard_is_orthonormal() {
        let b = mub::standard_basis(5);
        assert!(check_orthonormal(&b, Mode::Exact).pass);
    }

    #[test]
    fn duplicated_vector_fails_with_witness() {
        let v = PhaseVector { exps: vec![0, 0] };
        let b = Basis::Phase {
            dim: 2,
            root: 4,
            vectors: vec![v.clone(), v],
        };
        let verdict = check_orthonormal(&b, Mode::Exact);
        assert!(!verdict.pass);
        assert!(verdict.witness.unwrap().contains("(0,1)"));
    }

    #[test]
    fn standard_vs_standard_fails() {
        let b = mub::standard_basis(3);
        assert!(!check_unbiased_pair(&b, &b, Mode::Exact).pass);
    }

    #[test]
    fn dim2_pair_exact() {
        // {(1,1),(1,-1)}/sqrt2 vs {(1,i),(1,-i)}/sqrt2
        let b1 = Basis::Phase {
            dim: 2,
            root: 4,
            vectors: vec![
                PhaseVector { exps: vec![0, 0] },
                PhaseVector { exps: vec![0, 2] },
            ],
        };
        let b2 = Basis::Phase {
            dim: 2,
            root: 4,
            vectors: vec![
                PhaseVector { exps: vec![0, 1] },
                PhaseVector { exps: vec![0, 3] },
            ],
        };
        assert!(check_unbiased_pair(&b1, &b2, Mode::Exact).pass);
        assert!(check_orthonormal(&b1, Mode::Exact).pass);
        assert!(check_orthonormal(&b2, Mode::Exact).pass);
    }

    #[test]
    fn inner_product_self_is_n() {
        let v = PhaseVector { exps: vec![0, 1, 2] };
        let (s, n) = inner_product_exact(&v, 3, &v, 3).unwrap();
        let ring = CycloRing::new(3);
        assert!(ring.eq_integer(&s, n as i64));
    }

    #[test]
    fn orthogonal_pair_inner_product() {
        let v = PhaseVector { exps: vec![0, 0] };
        let w = PhaseVector { exps: vec![0, 2] };
        let (s, _) = inner_product_exact(&v, 4, &w, 4).unwrap();
        assert!(CycloRing::new(4).is_zero(&s));
    }

    #[test]
    fn small_families_verify_exactly() {
        for fam in [
            mub::wf_odd(3, 1).unwrap(),
            mub::wf_odd(5, 1).unwrap(),
            mub::kr_even(1).unwrap(),
            mub::kr_even(2).unwrap(),
            mub::cubic(5, 1).unwrap(),
        ] {
            let report = verify_family(&fam, Mode::Exact).unwrap();
            assert!(report.all_pass, "family {} fails", fam.provenance);
        }
    }

    #[test]
    fn unbiasedness_is_symmetric() {
        let fam = mub::wf_odd(3, 1).unwrap();
        for i in 0..fam.bases.len() {
            for j in 0..fam.bases.len() {
                let a = check_unbiased_pair(&fam.bases[i], &fam.bases[j], Mode::Exact).pass;
                let b = check_unbiased_pair(&fam.bases[j], &fam.bases[i], Mode::Exact).pass;
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn exact_and_float_agree() {
        let fam = mub::kr_even(2).unwrap();
        let exact = verify_family(&fam, Mode::Exact).unwrap();
        let float = verify_family(
            &fam,
            Mode::Float { tolerance: DEFAULT_FLOAT_TOLERANCE },
        )
        .unwrap();
        assert_eq!(exact.all_pass, float.all_pass);
        for (e, f) in exact.unbiased.iter().zip(&float.unbiased) {
            assert_eq!(e.2.pass, f.2.pass);
        }
    }

    #[test]
    fn max_subset_complete_family() {
        let fam = mub::kr_even(2).unwrap();
        let out = mub_max_subset(&fam).unwrap();
        assert_eq!(out.size, 5);
        assert!(out.dropped.is_empty());
    }

    #[test]
    fn max_subset_single_basis() {
        let fam = MubFamily {
            dim: 4,
            bases: vec![mub::standard_basis(4)],
            provenance: "test".into(),
        };
        assert_eq!(mub_max_subset(&fam).unwrap().size, 1);
    }

    #[test]
    fn tensor_family_maxes_at_bound() {
        let t = mub::tensor(&mub::kr_even(1).unwrap(), &mub::wf_odd(3, 1).unwrap()).unwrap();
        let report = verify_family(&t, Mode::Exact).unwrap();
        assert!(report.all_pass);
        let out = mub_max_subset(&t).unwrap();
        assert_eq!(out.size as u64, mub_bound(6).unwrap());
    }

    #[test]
    fn tensor_inner_products_factor() {
        // <a1 (x) b1, a2 (x) b2> = <a1,a2> <b1,b2> on sampled quadruples
        let f1 = mub::kr_even(1).unwrap();
        let f2 = mub::wf_odd(3, 1).unwrap();
        let t = mub::tensor(&f1, &f2).unwrap();
        let (g1, g2, gt) = match (&f1.bases[1], &f2.bases[1], &t.bases[1]) {
            (
                Basis::Phase { vectors: a, root: m1, .. },
                Basis::Phase { vectors: b, root: m2, .. },
                Basis::Phase { vectors: c, root: m, .. },
            ) => ((a, m1), (b, m2), (c, m)),
            _ => panic!(),
        };
        for i in 0..2 {
            for j in 0..3 {
                for k in 0..2 {
                    for l in 0..3 {
                        let (sa, _) =
                            inner_product_exact(&g1.0[i], *g1.1, &g1.0[k], *g1.1).unwrap();
                        let (sb, _) =
                            inner_product_exact(&g2.0[j], *g2.1, &g2.0[l], *g2.1).unwrap();
                        let (st, _) = inner_product_exact(
                            &gt.0[i * 3 + j],
                            *gt.1,
                            &gt.0[k * 3 + l],
                            *gt.1,
                        )
                        .unwrap();
                        let ring = CycloRing::new(*gt.1);
                        let za = CycloRing::new(*g1.1).to_complex(&sa);
                        let zb = CycloRing::new(*g2.1).to_complex(&sb);
                        let zt = ring.to_complex(&st);
                        assert!((za * zb - zt).norm() < 1e-9);
                    }
                }
            }
        }
    }
}
