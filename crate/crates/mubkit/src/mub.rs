//! MUB family construction: the field formula for odd prime powers, its
//! cubic variant, the Galois-ring formula for even prime powers, the
//! generalized character-of-polynomial engine over an arbitrary finite
//! commutative ring, and tensor composition.
//!
//! Phase vectors are stored as exponent arrays: component l of vector v
//! is zeta_m^exps[l] / sqrt(N). Construction never asserts the MUB
//! property for generalized candidates; judgment belongs to the verifier.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::gf::GfField;
use crate::gr4::Gr4Ring;
use crate::ring::{Character, FiniteRing, TransversalSet};

/// Exponent array of one unit vector: entry l is zeta_m^exps[l]/sqrt(N).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseVector {
    pub exps: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Basis {
    /// The canonical unit vectors e_0..e_{N-1}.
    Standard { dim: usize },
    /// N phase vectors sharing a common root order.
    Phase {
        dim: usize,
        root: u64,
        vectors: Vec<PhaseVector>,
    },
}

impl Basis {
    pub fn dim(&self) -> usize {
        match self {
            Basis::Standard { dim } => *dim,
            Basis::Phase { dim, .. } => *dim,
        }
    }

    pub fn is_standard(&self) -> bool {
        matches!(self, Basis::Standard { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MubFamily {
    pub dim: usize,
    pub bases: Vec<Basis>,
    pub provenance: String,
}

/// The standard basis marker of dimension N.
pub fn standard_basis(dim: usize) -> Basis {
    Basis::Standard { dim }
}

fn phase_basis(dim: usize, root: u64, vectors: Vec<PhaseVector>) -> Basis {
    debug_assert!(vectors.iter().all(|v| v.exps.len() == dim));
    debug_assert!(vectors.iter().all(|v| v.exps.iter().all(|&e| e < root)));
    Basis::Phase { dim, root, vectors }
}

/// N+1 bases in dimension N = p^n for odd p: the standard basis plus,
/// for each field element r, the basis with exponents Tr(r l^2 + k l)
/// at root order p.
pub fn wf_odd(p: u64, n: usize) -> Result<MubFamily> {
    if p == 2 {
        return Err(Error::InvalidArgument(
            "the quadratic formula requires odd characteristic".into(),
        ));
    }
    let field = GfField::new(p, n)?;
    let dim = field.order() as usize;
    let elems: Vec<_> = field.elements().collect();
    let mut bases = vec![standard_basis(dim)];
    for r in &elems {
        let mut vectors = Vec::with_capacity(dim);
        for k in &elems {
            let exps = elems
                .iter()
                .map(|l| {
                    let rl2 = field.mul(r, &field.mul(l, l));
                    let kl = field.mul(k, l);
                    field.trace(&field.add(&rl2, &kl))
                })
                .collect();
            vectors.push(PhaseVector { exps });
        }
        bases.push(phase_basis(dim, p, vectors));
    }
    Ok(MubFamily {
        dim,
        bases,
        provenance: format!("wf p={p} n={n}"),
    })
}

/// Cubic variant for p >= 5: exponents Tr((l+r)^3 + k(l+r)) at root p.
pub fn cubic(p: u64, n: usize) -> Result<MubFamily> {
    if p < 5 {
        return Err(Error::InvalidArgument(
            "the cubic formula requires p >= 5".into(),
        ));
    }
    let field = GfField::new(p, n)?;
    let dim = field.order() as usize;
    let elems: Vec<_> = field.elements().collect();
    let mut bases = vec![standard_basis(dim)];
    for r in &elems {
        let mut vectors = Vec::with_capacity(dim);
        for k in &elems {
            let exps = elems
                .iter()
                .map(|l| {
                    let lr = field.add(l, r);
                    let cube = field.mul(&lr, &field.mul(&lr, &lr));
                    field.trace(&field.add(&cube, &field.mul(k, &lr)))
                })
                .collect();
            vectors.push(PhaseVector { exps });
        }
        bases.push(phase_basis(dim, p, vectors));
    }
    Ok(MubFamily {
        dim,
        bases,
        provenance: format!("cubic p={p} n={n}"),
    })
}

/// N+1 bases in dimension N = 2^n from the Galois ring GR(4,n): the
/// standard basis plus, for r in the Teichmuller set, the basis whose
/// vector k has exponents Tr((r + 2k) l) at root order 4, with k and l
/// also running over the Teichmuller set in canonical order.
pub fn kr_even(n: usize) -> Result<MubFamily> {
    let ring = Gr4Ring::new(n)?;
    let teich = ring.teichmuller().to_vec();
    let dim = teich.len();
    let mut bases = vec![standard_basis(dim)];
    for r in &teich {
        let mut vectors = Vec::with_capacity(dim);
        for k in &teich {
            let shift = ring.add(r, &ring.scale(2, k));
            let exps = teich
                .iter()
                .map(|l| ring.trace(&ring.mul(&shift, l)))
                .collect();
            vectors.push(PhaseVector { exps });
        }
        bases.push(phase_basis(dim, 4, vectors));
    }
    Ok(MubFamily {
        dim,
        bases,
        provenance: format!("kr n={n}"),
    })
}

/// A two-variable polynomial over a table ring: terms are monomials
/// coeff * k^a * l^b, plus a constant term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingPoly {
    pub terms: Vec<(u32, u32, usize)>,
    pub constant: usize,
}

impl RingPoly {
    pub fn eval(&self, ring: &FiniteRing, k: usize, l: usize) -> usize {
        let mut acc = self.constant;
        for &(a, b, coeff) in &self.terms {
            let t = ring.mul(coeff, ring.mul(ring.pow(k, a as u64), ring.pow(l, b as u64)));
            acc = ring.add(acc, t);
        }
        acc
    }
}

/// One basis recipe: an additive character composed with a polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaSpec {
    pub character: Character,
    pub poly: RingPoly,
}

/// Build the standard basis plus one candidate basis per spec over the
/// index set S of a validated transversal: vector k has component l
/// equal to zeta_m^{chi(P(k,l))} / sqrt(N). No MUB property is asserted.
pub fn generalized(
    ring: &FiniteRing,
    transversal: &TransversalSet,
    specs: &[FormulaSpec],
) -> Result<MubFamily> {
    let dim = transversal.s.len();
    let m = ring.additive_exponent();
    for spec in specs {
        if spec.character.exps.len() != ring.order() || spec.character.modulus != m {
            return Err(Error::InvalidArgument(
                "character does not belong to this ring's dual".into(),
            ));
        }
        // additivity check: the exponent map must be a homomorphism
        for x in 0..ring.order() {
            for y in 0..ring.order() {
                if spec.character.exps[ring.add(x, y)]
                    != (spec.character.exps[x] + spec.character.exps[y]) % m
                {
                    return Err(Error::InvalidArgument(
                        "character exponent map is not additive".into(),
                    ));
                }
            }
        }
        if spec
            .poly
            .terms
            .iter()
            .any(|&(_, _, c)| c >= ring.order())
            || spec.poly.constant >= ring.order()
        {
            return Err(Error::InvalidArgument(
                "polynomial coefficient outside the ring".into(),
            ));
        }
    }
    let mut bases = vec![standard_basis(dim)];
    for spec in specs {
        bases.push(candidate_basis(ring, transversal, spec, m));
    }
    Ok(MubFamily {
        dim,
        bases,
        provenance: format!("generalized over {}", ring.label()),
    })
}

/// Unchecked single-candidate construction; callers validate specs once.
pub(crate) fn candidate_basis(
    ring: &FiniteRing,
    transversal: &TransversalSet,
    spec: &FormulaSpec,
    root: u64,
) -> Basis {
    let s = &transversal.s;
    let vectors = s
        .iter()
        .map(|&k| PhaseVector {
            exps: s
                .iter()
                .map(|&l| spec.character.exps[spec.poly.eval(ring, k, l)])
                .collect(),
        })
        .collect();
    phase_basis(s.len(), root, vectors)
}

/// The specs that reproduce the odd-prime-power family over the table
/// export of GF(p^n): the trace character composed with r l^2 + k l,
/// one spec per r (the k-dependence lives in the vector index).
pub fn wf_odd_specs(ring: &FiniteRing, field: &GfField) -> Vec<FormulaSpec> {
    let tr = trace_character(field);
    (0..field.order())
        .map(|r| FormulaSpec {
            character: tr.clone(),
            poly: RingPoly {
                terms: vec![(0, 2, r as usize), (1, 1, ring.one())],
                constant: ring.zero(),
            },
        })
        .collect()
}

/// chi(x) = Tr(x) as an exponent map at root order p.
pub fn trace_character(field: &GfField) -> Character {
    Character {
        modulus: field.p(),
        exps: (0..field.order())
            .map(|i| field.trace(&field.element(i)))
            .collect(),
    }
}

/// The specs that reproduce the even-prime-power family over the table
/// export of GR(4,n): character Tr into Z_4, polynomial (r + 2k) l.
pub fn kr_even_specs(ring: &FiniteRing, gr: &Gr4Ring) -> Vec<FormulaSpec> {
    let tr = gr4_trace_character(gr);
    let two = ring.add(ring.one(), ring.one());
    gr.teichmuller()
        .iter()
        .map(|r| FormulaSpec {
            character: tr.clone(),
            poly: RingPoly {
                terms: vec![
                    (0, 1, gr.index_of(r) as usize),
                    (1, 1, two),
                ],
                constant: ring.zero(),
            },
        })
        .collect()
}

/// chi(x) = Tr(x) as an exponent map at root order 4.
pub fn gr4_trace_character(gr: &Gr4Ring) -> Character {
    Character {
        modulus: 4,
        exps: (0..gr.order())
            .map(|i| gr.trace(&gr.element(i)))
            .collect(),
    }
}

/// Tensor composition: basis i of the result is {a (x) b} for a in
/// F1[i], b in F2[i], in dimension N1*N2 with row-major component order.
/// A standard basis only pairs with a standard basis.
pub fn tensor(f1: &MubFamily, f2: &MubFamily) -> Result<MubFamily> {
    if f1.bases.is_empty() || f2.bases.is_empty() {
        return Err(Error::InvalidArgument("tensor needs nonempty families".into()));
    }
    let t = f1.bases.len().min(f2.bases.len());
    let dim = f1.dim * f2.dim;
    let mut bases = Vec::with_capacity(t);
    for i in 0..t {
        match (&f1.bases[i], &f2.bases[i]) {
            (Basis::Standard { .. }, Basis::Standard { .. }) => {
                bases.push(standard_basis(dim));
            }
            (
                Basis::Phase { root: m1, vectors: v1, .. },
                Basis::Phase { root: m2, vectors: v2, .. },
            ) => {
                let m = m1.lcm(m2);
                let (s1, s2) = (m / m1, m / m2);
                let mut vectors = Vec::with_capacity(dim);
                for a in v1 {
                    for b in v2 {
                        let mut exps = Vec::with_capacity(dim);
                        for &ea in &a.exps {
                            for &eb in &b.exps {
                                exps.push((ea * s1 + eb * s2) % m);
                            }
                        }
                        vectors.push(PhaseVector { exps });
                    }
                }
                bases.push(phase_basis(dim, m, vectors));
            }
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "basis {i} mixes a standard and a phase basis; \
                     align the families so markers pair up"
                )));
            }
        }
    }
    Ok(MubFamily {
        dim,
        bases,
        provenance: format!("tensor({}, {})", f1.provenance, f2.provenance),
    })
}
