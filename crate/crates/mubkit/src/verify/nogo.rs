//! Randomized search over character-of-polynomial basis recipes, looking
//! for the largest mutually unbiased set they can produce over a given
//! ring and transversal. For rings whose order has a small prime-power
//! part the set never exceeds 1 + min p^e, and the harness asserts that.

use std::collections::HashSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf::GfField;
use crate::gr4::Gr4Ring;
use crate::mub::{
    candidate_basis, kr_even_specs, standard_basis, wf_odd_specs, Basis, FormulaSpec,
    MubFamily, RingPoly,
};
use crate::ring::{factorize, Character, FiniteRing, RingKind, TransversalSet};
use crate::verify::{check_orthonormal, clique, mub_bound, unbiased_graph, Mode};

/// Highest degree sampled in each variable; covers the quadratic, cubic
/// and Galois-ring recipes.
pub const MAX_DEGREE: u32 = 3;

const MAX_POOL: usize = 1024;

#[derive(Debug, Clone)]
pub struct NogoOutcome {
    /// Size of the largest mutually unbiased set found (standard basis
    /// included).
    pub max_size: usize,
    /// The witness family realizing max_size.
    pub family: MubFamily,
    /// Recipes sampled (not counting forced includes).
    pub sampled: usize,
    /// Distinct orthonormal candidate bases that entered the graph.
    pub pool_size: usize,
    /// The ceiling 1 + min p^e for the dimension |S|.
    pub bound: u64,
}

/// Search `budget` random recipes (plus the forced includes implied by
/// the ring kind) and return the maximum mutually unbiased subset.
/// Asserts the subset never exceeds the bound for the dimension.
pub fn nogo_search(
    ring: &FiniteRing,
    kind: &RingKind,
    transversal: &TransversalSet,
    budget: usize,
    seed: u64,
) -> Result<NogoOutcome> {
    let dim = transversal.s.len();
    if dim < 2 {
        return Err(Error::InvalidArgument("search needs |S| >= 2".into()));
    }
    let bound = mub_bound(dim as u64)?;
    let standard = standard_basis(dim);
    if budget == 0 {
        return Ok(NogoOutcome {
            max_size: 1,
            family: MubFamily {
                dim,
                bases: vec![standard],
                provenance: format!("nogo over {} (empty budget)", ring.label()),
            },
            sampled: 0,
            pool_size: 0,
            bound,
        });
    }

    let m = ring.additive_exponent();
    let characters = ring.characters()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut pool: Vec<Basis> = Vec::new();
    let mut seen: HashSet<Vec<Vec<u64>>> = HashSet::new();
    let mut admit = |basis: Basis, pool: &mut Vec<Basis>| -> Result<()> {
        if !check_orthonormal(&basis, Mode::Exact).pass {
            return Ok(());
        }
        if seen.insert(signature(&basis)) {
            if pool.len() >= MAX_POOL {
                return Err(Error::ResourceLimit(format!(
                    "candidate pool exceeds {MAX_POOL} distinct orthonormal bases"
                )));
            }
            pool.push(basis);
        }
        Ok(())
    };

    for spec in forced_specs(ring, kind, transversal)? {
        admit(candidate_basis(ring, transversal, &spec, m), &mut pool)?;
    }
    for _ in 0..budget {
        let spec = sample_spec(&mut rng, ring, &characters);
        admit(candidate_basis(ring, transversal, &spec, m), &mut pool)?;
    }

    // node 0 is the standard basis; every phase candidate is unbiased to
    // it structurally, so it joins every maximum clique and we only need
    // the graph on the pool
    let selected: Vec<usize> = (0..pool.len()).collect();
    let adj = unbiased_graph(&pool, &selected);
    let (size, members) = clique::max_clique(&adj);
    let max_size = size + 1;
    if max_size as u64 > bound {
        return Err(Error::PropertyViolation(format!(
            "found {max_size} mutually unbiased bases in dimension {dim}, above the bound {bound}"
        )));
    }
    let mut bases = vec![standard];
    bases.extend(members.into_iter().map(|i| pool[i].clone()));
    Ok(NogoOutcome {
        max_size,
        family: MubFamily {
            dim,
            bases,
            provenance: format!("nogo over {} seed {seed}", ring.label()),
        },
        sampled: budget,
        pool_size: pool.len(),
        bound,
    })
}

/// The known complete-family recipes for the ring kind, when the
/// transversal matches their natural domain. Other kinds contribute
/// nothing and rely purely on sampling.
pub fn forced_specs(
    ring: &FiniteRing,
    kind: &RingKind,
    transversal: &TransversalSet,
) -> Result<Vec<FormulaSpec>> {
    match kind {
        RingKind::Gf { p, n } if *p != 2 && transversal.s.len() == ring.order() => {
            let field = GfField::new(*p, *n)?;
            Ok(wf_odd_specs(ring, &field))
        }
        RingKind::Zn(p)
            if is_odd_prime(*p as u64) && transversal.s.len() == ring.order() =>
        {
            // Z_p carries the same tables as the degree-1 field export
            let field = GfField::new(*p as u64, 1)?;
            Ok(wf_odd_specs(ring, &field))
        }
        RingKind::Gr4 { n } => {
            let gr = Gr4Ring::new(*n)?;
            let teich: Vec<usize> = gr
                .teichmuller()
                .iter()
                .map(|t| gr.index_of(t) as usize)
                .collect();
            let mut sorted = teich.clone();
            sorted.sort_unstable();
            let mut s = transversal.s.clone();
            s.sort_unstable();
            if s == sorted {
                Ok(kr_even_specs(ring, &gr))
            } else {
                Ok(vec![])
            }
        }
        _ => Ok(vec![]),
    }
}

fn is_odd_prime(p: u64) -> bool {
    p % 2 == 1 && factorize(p) == vec![(p, 1)]
}

/// Uniform recipe: a character index and a full coefficient tuple for
/// the monomials k^a l^b with a, b <= MAX_DEGREE (constant included).
fn sample_spec(rng: &mut ChaCha8Rng, ring: &FiniteRing, characters: &[Character]) -> FormulaSpec {
    let character = characters[rng.gen_range(0..characters.len())].clone();
    let mut terms = Vec::new();
    for a in 0..=MAX_DEGREE {
        for b in 0..=MAX_DEGREE {
            if a == 0 && b == 0 {
                continue;
            }
            let coeff = rng.gen_range(0..ring.order());
            if coeff != ring.zero() {
                terms.push((a, b, coeff));
            }
        }
    }
    let constant = rng.gen_range(0..ring.order());
    FormulaSpec {
        character,
        poly: RingPoly { terms, constant },
    }
}

/// Basis identity modulo global vector phases and vector order: shift
/// each vector so its first exponent is zero, then sort.
fn signature(basis: &Basis) -> Vec<Vec<u64>> {
    match basis {
        Basis::Standard { .. } => vec![],
        Basis::Phase { root, vectors, .. } => {
            let mut rows: Vec<Vec<u64>> = vectors
                .iter()
                .map(|v| {
                    let shift = v.exps[0];
                    v.exps.iter().map(|&e| (e + root - shift) % root).collect()
                })
                .collect();
            rows.sort_unstable();
            rows
        }
    }
}
