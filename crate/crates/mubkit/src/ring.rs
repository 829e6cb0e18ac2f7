//! Finite commutative unital rings as Cayley tables, with the structural
//! operations used by the generalized MUB formulas: Sylow decomposition,
//! nilradical, units, multiplicatively closed transversal sets, and the
//! direct-sum split of a transversal.
//!
//! Table rings are deliberately small (default bound 256 elements,
//! override with MUBKIT_MAX_ORDER); generality beats speed here.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::gf::GfField;
use crate::gr4::Gr4Ring;

pub const DEFAULT_MAX_TABLE_ORDER: usize = 256;

pub fn max_table_order() -> usize {
    std::env::var("MUBKIT_MAX_ORDER")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_TABLE_ORDER)
}

/// A finite commutative ring with unity, given by addition and
/// multiplication tables over element indices 0..order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteRing {
    order: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    neg: Vec<usize>,
    zero: usize,
    one: usize,
    label: String,
}

/// Direct-sum decomposition of a ring into ideals with their own unities.
#[derive(Debug, Clone)]
pub struct RingDecomposition {
    /// Sorted element subsets, one per component.
    pub components: Vec<Vec<usize>>,
    /// Component unities e_i with sum(e_i) = 1 and e_i * e_j = 0 for i != j.
    pub unities: Vec<usize>,
}

/// A validated multiplicatively closed transversal S to a nilpotent ideal N.
#[derive(Debug, Clone)]
pub struct TransversalSet {
    pub s: Vec<usize>,
    pub n: Vec<usize>,
}

/// An additive character of the ring, as an exponent map into Z_m where
/// m is the exponent of (R,+): chi(x) = zeta_m ^ exps[x].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    pub modulus: u64,
    pub exps: Vec<u64>,
}

/// Units of a ring with an inverse lookup.
#[derive(Debug, Clone)]
pub struct Units {
    pub units: Vec<usize>,
    pub inverse: Vec<Option<usize>>,
}

impl FiniteRing {
    /// Validated construction from raw tables. Checks the abelian group
    /// axioms for addition and commutativity, associativity and
    /// distributivity for multiplication.
    pub fn from_tables(
        add: Vec<usize>,
        mul: Vec<usize>,
        zero: usize,
        one: usize,
        label: String,
    ) -> Result<FiniteRing> {
        let order = (add.len() as f64).sqrt() as usize;
        if order * order != add.len() || mul.len() != add.len() || order == 0 {
            return Err(Error::InvalidArgument("tables must be square and same-sized".into()));
        }
        if order > max_table_order() {
            return Err(Error::ResourceLimit(format!(
                "ring order {order} exceeds table bound {}",
                max_table_order()
            )));
        }
        if zero >= order || one >= order {
            return Err(Error::InvalidArgument("zero/one index out of range".into()));
        }
        if add.iter().chain(mul.iter()).any(|&x| x >= order) {
            return Err(Error::InvalidArgument("table entry out of range".into()));
        }
        let at = |i: usize, j: usize| add[i * order + j];
        let mt = |i: usize, j: usize| mul[i * order + j];
        let mut neg = vec![usize::MAX; order];
        for (i, neg_i) in neg.iter_mut().enumerate() {
            if at(i, zero) != i || mt(i, one) != i {
                return Err(Error::InvalidArgument(format!(
                    "identity axiom fails at element {i}"
                )));
            }
            for j in 0..order {
                if at(i, j) != at(j, i) {
                    return Err(Error::InvalidArgument(format!(
                        "addition not commutative at ({i},{j})"
                    )));
                }
                if mt(i, j) != mt(j, i) {
                    return Err(Error::InvalidArgument(format!(
                        "multiplication not commutative at ({i},{j})"
                    )));
                }
                if at(i, j) == zero {
                    *neg_i = j;
                }
            }
        }
        if neg.contains(&usize::MAX) {
            return Err(Error::InvalidArgument("some element has no additive inverse".into()));
        }
        for i in 0..order {
            for j in 0..order {
                for k in 0..order {
                    if at(at(i, j), k) != at(i, at(j, k)) {
                        return Err(Error::InvalidArgument(format!(
                            "addition not associative at ({i},{j},{k})"
                        )));
                    }
                    if mt(mt(i, j), k) != mt(i, mt(j, k)) {
                        return Err(Error::InvalidArgument(format!(
                            "multiplication not associative at ({i},{j},{k})"
                        )));
                    }
                    if mt(i, at(j, k)) != at(mt(i, j), mt(i, k)) {
                        return Err(Error::InvalidArgument(format!(
                            "distributivity fails at ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteRing { order, add, mul, neg, zero, one, label })
    }

    /// The ring Z_m. For m = 1 this is the zero ring with one = zero.
    pub fn from_zn(m: usize) -> Result<FiniteRing> {
        if m == 0 {
            return Err(Error::InvalidArgument("modulus must be positive".into()));
        }
        if m > max_table_order() {
            return Err(Error::ResourceLimit(format!(
                "Z_{m} exceeds table bound {}",
                max_table_order()
            )));
        }
        let mut add = Vec::with_capacity(m * m);
        let mut mul = Vec::with_capacity(m * m);
        for i in 0..m {
            for j in 0..m {
                add.push((i + j) % m);
                mul.push((i * j) % m);
            }
        }
        FiniteRing::from_tables(add, mul, 0, 1 % m, format!("z{m}"))
    }

    /// Z_p[x]/(x^2): element a + b x has index a + b p.
    pub fn zp_dual(p: usize) -> Result<FiniteRing> {
        if p < 2 {
            return Err(Error::InvalidArgument("zp_dual needs p >= 2".into()));
        }
        let order = p * p;
        if order > max_table_order() {
            return Err(Error::ResourceLimit(format!(
                "zp_dual:{p} exceeds table bound {}",
                max_table_order()
            )));
        }
        let idx = |a: usize, b: usize| a + b * p;
        let mut add = vec![0; order * order];
        let mut mul = vec![0; order * order];
        for a1 in 0..p {
            for b1 in 0..p {
                for a2 in 0..p {
                    for b2 in 0..p {
                        let i = idx(a1, b1);
                        let j = idx(a2, b2);
                        add[i * order + j] = idx((a1 + a2) % p, (b1 + b2) % p);
                        mul[i * order + j] = idx((a1 * a2) % p, (a1 * b2 + a2 * b1) % p);
                    }
                }
            }
        }
        FiniteRing::from_tables(add, mul, 0, 1, format!("zp_dual:{p}"))
    }

    /// Componentwise product ring; pair (i1, i2) has index i1*|R2| + i2.
    pub fn product(r1: &FiniteRing, r2: &FiniteRing) -> Result<FiniteRing> {
        let order = r1.order * r2.order;
        if order > max_table_order() {
            return Err(Error::ResourceLimit(format!(
                "product order {order} exceeds table bound {}",
                max_table_order()
            )));
        }
        let idx = |i1: usize, i2: usize| i1 * r2.order + i2;
        let mut add = vec![0; order * order];
        let mut mul = vec![0; order * order];
        for i1 in 0..r1.order {
            for i2 in 0..r2.order {
                for j1 in 0..r1.order {
                    for j2 in 0..r2.order {
                        let i = idx(i1, i2);
                        let j = idx(j1, j2);
                        add[i * order + j] = idx(r1.add(i1, j1), r2.add(i2, j2));
                        mul[i * order + j] = idx(r1.mul(i1, j1), r2.mul(i2, j2));
                    }
                }
            }
        }
        FiniteRing::from_tables(
            add,
            mul,
            idx(r1.zero, r2.zero),
            idx(r1.one, r2.one),
            format!("prod:{},{}", r1.label, r2.label),
        )
    }

    /// Table export of GF(p^n); element index = canonical field index.
    pub fn from_gf(f: &GfField) -> Result<FiniteRing> {
        let order = f.order() as usize;
        if order > max_table_order() {
            return Err(Error::ResourceLimit(format!(
                "field order {order} exceeds table bound {}",
                max_table_order()
            )));
        }
        let elems: Vec<_> = f.elements().collect();
        let mut add = vec![0; order * order];
        let mut mul = vec![0; order * order];
        for i in 0..order {
            for j in 0..order {
                add[i * order + j] = f.index_of(&f.add(&elems[i], &elems[j])) as usize;
                mul[i * order + j] = f.index_of(&f.mul(&elems[i], &elems[j])) as usize;
            }
        }
        FiniteRing::from_tables(add, mul, 0, 1, format!("gf:{},{}", f.p(), f.degree()))
    }

    /// Table export of GR(4,n); element index = canonical ring index.
    pub fn from_gr4(r: &Gr4Ring) -> Result<FiniteRing> {
        let order = r.order() as usize;
        if order > max_table_order() {
            return Err(Error::ResourceLimit(format!(
                "ring order {order} exceeds table bound {}",
                max_table_order()
            )));
        }
        let elems: Vec<_> = r.elements().collect();
        let mut add = vec![0; order * order];
        let mut mul = vec![0; order * order];
        for i in 0..order {
            for j in 0..order {
                add[i * order + j] = r.index_of(&r.add(&elems[i], &elems[j])) as usize;
                mul[i * order + j] = r.index_of(&r.mul(&elems[i], &elems[j])) as usize;
            }
        }
        FiniteRing::from_tables(add, mul, 0, 1, format!("gr4:{}", r.degree()))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn add(&self, i: usize, j: usize) -> usize {
        self.add[i * self.order + j]
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.mul[i * self.order + j]
    }

    pub fn neg(&self, i: usize) -> usize {
        self.neg[i]
    }

    pub fn sub(&self, i: usize, j: usize) -> usize {
        self.add(i, self.neg(j))
    }

    /// k-fold additive multiple of x.
    pub fn add_times(&self, mut k: u64, x: usize) -> usize {
        let mut acc = self.zero;
        let mut base = x;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn pow(&self, x: usize, mut e: u64) -> usize {
        let mut acc = self.one;
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Additive order of an element.
    pub fn additive_order(&self, x: usize) -> u64 {
        let mut y = x;
        let mut k = 1;
        while y != self.zero {
            y = self.add(y, x);
            k += 1;
        }
        k
    }

    /// Exponent of the additive group: lcm of all additive orders.
    pub fn additive_exponent(&self) -> u64 {
        (0..self.order).fold(1u64, |acc, x| {
            num_integer::lcm(acc, self.additive_order(x))
        })
    }

    /// One component per prime dividing |R|: the additive-torsion subset
    /// {x : p^e x = 0}, with unities recovered as the decomposition of 1.
    pub fn sylow(&self) -> Result<RingDecomposition> {
        if self.order <= 1 {
            return Err(Error::InvalidArgument("sylow needs |R| > 1".into()));
        }
        let primes = factorize(self.order as u64);
        let mut components = Vec::new();
        let mut unities = Vec::new();
        for &(p, e) in &primes {
            let pe = p.pow(e);
            let comp: Vec<usize> = (0..self.order)
                .filter(|&x| self.add_times(pe, x) == self.zero)
                .collect();
            // CRT coefficient: c = 1 mod p^e, c = 0 mod |R|/p^e
            let m = self.order as u64;
            let q = m / pe;
            let c = (0..m).find(|&c| c % pe == 1 && c % q == 0).ok_or_else(|| {
                Error::PropertyViolation("no CRT coefficient for Sylow unity".into())
            })?;
            let unity = self.add_times(c, self.one);
            if !comp.contains(&unity) {
                return Err(Error::PropertyViolation(format!(
                    "Sylow unity {unity} is not in its component"
                )));
            }
            components.push(comp);
            unities.push(unity);
        }
        // sanity: sum of unities is 1, cross products vanish
        let total = unities.iter().fold(self.zero, |a, &e| self.add(a, e));
        if total != self.one {
            return Err(Error::PropertyViolation("Sylow unities do not sum to 1".into()));
        }
        for (i, &ei) in unities.iter().enumerate() {
            for (j, &ej) in unities.iter().enumerate() {
                if i != j && self.mul(ei, ej) != self.zero {
                    return Err(Error::PropertyViolation(
                        "Sylow unities are not orthogonal".into(),
                    ));
                }
            }
        }
        Ok(RingDecomposition { components, unities })
    }

    /// Group the Sylow components into two: primes in `left` versus the
    /// rest. An empty remainder yields the degenerate split (R, {0}).
    pub fn two_split(&self, left: &[u64]) -> Result<RingDecomposition> {
        if self.order <= 1 {
            return Err(Error::InvalidArgument("split needs |R| > 1".into()));
        }
        let primes = factorize(self.order as u64);
        let mut d1 = 1u64;
        let mut d2 = 1u64;
        for &(p, e) in &primes {
            if left.contains(&p) {
                d1 *= p.pow(e);
            } else {
                d2 *= p.pow(e);
            }
        }
        let comp = |d: u64| -> Vec<usize> {
            (0..self.order)
                .filter(|&x| self.add_times(d, x) == self.zero)
                .collect()
        };
        let c1 = comp(d1);
        let c2 = comp(d2);
        let m = self.order as u64;
        let unity = |d: u64| -> usize {
            if d == 1 {
                return self.zero;
            }
            let q = m / d;
            let c = (0..m).find(|&c| c % d == 1 % d && c % q == 0).unwrap();
            self.add_times(c, self.one)
        };
        Ok(RingDecomposition {
            components: vec![c1, c2],
            unities: vec![unity(d1), unity(d2)],
        })
    }

    /// All x with x^k = 0 for some k <= |R|. An ideal in a commutative ring.
    pub fn nilradical(&self) -> Vec<usize> {
        (0..self.order).filter(|&x| self.is_nilpotent(x)).collect()
    }

    pub fn is_nilpotent(&self, x: usize) -> bool {
        let mut y = x;
        for _ in 0..self.order {
            if y == self.zero {
                return true;
            }
            y = self.mul(y, x);
        }
        false
    }

    /// All invertible elements with inverse lookup. Also verifies that
    /// 1 + n is a unit for every nilpotent n via u_t(-n) = sum (-n)^j.
    pub fn units(&self) -> Result<Units> {
        let mut inverse = vec![None; self.order];
        for (x, inv_x) in inverse.iter_mut().enumerate() {
            for y in 0..self.order {
                if self.mul(x, y) == self.one {
                    *inv_x = Some(y);
                    break;
                }
            }
        }
        let units: Vec<usize> = (0..self.order).filter(|&x| inverse[x].is_some()).collect();
        for n in self.nilradical() {
            // nilpotency index t: smallest t with n^t = 0
            let mut t = 1u64;
            let mut y = n;
            while y != self.zero {
                y = self.mul(y, n);
                t += 1;
            }
            let minus_n = self.neg(n);
            let mut u = self.zero;
            let mut pw = self.one;
            for _ in 0..t {
                u = self.add(u, pw);
                pw = self.mul(pw, minus_n);
            }
            let one_plus_n = self.add(self.one, n);
            if self.mul(one_plus_n, u) != self.one {
                return Err(Error::PropertyViolation(format!(
                    "u_t(-n) is not the inverse of 1+n for n = {n}"
                )));
            }
        }
        Ok(Units { units, inverse })
    }

    /// Validate that N is a nilpotent ideal, S is closed under
    /// multiplication, and S meets every coset of N exactly once.
    pub fn transversal_check(&self, s: &[usize], n: &[usize]) -> Result<TransversalSet> {
        let s: Vec<usize> = dedup_sorted(s);
        let n: Vec<usize> = dedup_sorted(n);
        if s.iter().chain(n.iter()).any(|&x| x >= self.order) {
            return Err(Error::InvalidArgument("element index out of range".into()));
        }
        let nset: BTreeSet<usize> = n.iter().copied().collect();
        if !nset.contains(&self.zero) {
            return Err(Error::NotNilpotentIdeal("N does not contain 0".into()));
        }
        for &a in &n {
            if !self.is_nilpotent(a) {
                return Err(Error::NotNilpotentIdeal(format!("{a} is not nilpotent")));
            }
            for &b in &n {
                if !nset.contains(&self.add(a, b)) {
                    return Err(Error::NotNilpotentIdeal(format!(
                        "not closed under addition: {a} + {b}"
                    )));
                }
            }
            for r in 0..self.order {
                if !nset.contains(&self.mul(r, a)) {
                    return Err(Error::NotNilpotentIdeal(format!(
                        "not an ideal: {r} * {a} escapes N"
                    )));
                }
            }
        }
        let sset: BTreeSet<usize> = s.iter().copied().collect();
        for &a in &s {
            for &b in &s {
                let p = self.mul(a, b);
                if !sset.contains(&p) {
                    return Err(Error::NotClosed { a, b, product: p });
                }
            }
        }
        for r in 0..self.order {
            let count = s
                .iter()
                .filter(|&&x| nset.contains(&self.sub(x, r)))
                .count();
            if count != 1 {
                return Err(Error::NotTransversal { coset_rep: r, count });
            }
        }
        Ok(TransversalSet { s, n })
    }

    /// Split a validated transversal along a two-component decomposition,
    /// asserting the computational content of the transversal-splitting
    /// proposition: component unities lie in S, S = S1 (+) S2, and each
    /// S_i is a closed transversal to N inside its component.
    pub fn transversal_split(
        &self,
        t: &TransversalSet,
        d: &RingDecomposition,
    ) -> Result<(Vec<usize>, Vec<usize>)> {
        if d.components.len() != 2 {
            return Err(Error::InvalidArgument(
                "split needs a two-component decomposition".into(),
            ));
        }
        let sset: BTreeSet<usize> = t.s.iter().copied().collect();
        let nset: BTreeSet<usize> = t.n.iter().copied().collect();
        for (ci, &e) in d.unities.iter().enumerate() {
            let comp = &d.components[ci];
            if comp.len() > 1 && !sset.contains(&e) {
                return Err(Error::PropertyViolation(format!(
                    "component unity {e} is not in S"
                )));
            }
        }
        let mut parts: Vec<Vec<usize>> = Vec::new();
        for comp in &d.components {
            let cset: BTreeSet<usize> = comp.iter().copied().collect();
            parts.push(t.s.iter().copied().filter(|x| cset.contains(x)).collect());
        }
        let (s1, s2) = (parts[0].clone(), parts[1].clone());
        // S = S1 (+) S2, elementwise and in cardinality
        if s1.len() * s2.len() != t.s.len() {
            return Err(Error::PropertyViolation(format!(
                "|S1| * |S2| = {} * {} != |S| = {}",
                s1.len(),
                s2.len(),
                t.s.len()
            )));
        }
        let mut sums = BTreeSet::new();
        for &a in &s1 {
            for &b in &s2 {
                let x = self.add(a, b);
                if !sset.contains(&x) || !sums.insert(x) {
                    return Err(Error::PropertyViolation(format!(
                        "S1 + S2 does not enumerate S exactly: witness {a} + {b}"
                    )));
                }
            }
        }
        for (ci, si) in [(0usize, &s1), (1usize, &s2)].into_iter() {
            let comp = &d.components[ci];
            if comp.len() > 1 && si.len() < 2 {
                return Err(Error::PropertyViolation(format!(
                    "S intersects nontrivial component {ci} in fewer than 2 elements"
                )));
            }
            let siset: BTreeSet<usize> = si.iter().copied().collect();
            for &a in si {
                for &b in si {
                    let p = self.mul(a, b);
                    if !siset.contains(&p) {
                        return Err(Error::PropertyViolation(format!(
                            "S{} not closed: {a} * {b} = {p}",
                            ci + 1
                        )));
                    }
                }
            }
            // transversal to N intersect component, inside the component
            let ni: BTreeSet<usize> = t.n.iter().copied().filter(|x| comp.contains(x)).collect();
            let _ = &nset;
            for &r in comp {
                let count = si
                    .iter()
                    .filter(|&&x| ni.contains(&self.sub(x, r)))
                    .count();
                if count != 1 {
                    return Err(Error::PropertyViolation(format!(
                        "S{} meets coset of {r} in {count} elements",
                        ci + 1
                    )));
                }
            }
        }
        Ok((s1, s2))
    }
}

fn dedup_sorted(v: &[usize]) -> Vec<usize> {
    let set: BTreeSet<usize> = v.iter().copied().collect();
    set.into_iter().collect()
}

pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

// ---- additive characters ------------------------------------------------

const CHARACTER_ENUM_BOUND: usize = 4096;

impl FiniteRing {
    /// Enumerate all |R| additive characters of (R,+), each as an exponent
    /// map into Z_m with m the exponent of the additive group. The trivial
    /// character comes first; the order is deterministic.
    pub fn characters(&self) -> Result<Vec<Character>> {
        if self.order > CHARACTER_ENUM_BOUND {
            return Err(Error::ResourceLimit(format!(
                "character enumeration bounded at {CHARACTER_ENUM_BOUND} elements"
            )));
        }
        let m = self.additive_exponent();
        let basis = self.additive_basis()?;
        let dlog = self.discrete_logs(&basis)?;
        let orders: Vec<u64> = basis.iter().map(|&(_, d)| d).collect();
        let mut chars = Vec::with_capacity(self.order);
        let mut tuple = vec![0u64; orders.len()];
        loop {
            let mut exps = vec![0u64; self.order];
            for x in 0..self.order {
                let mut e = 0u64;
                for (i, &b) in tuple.iter().enumerate() {
                    e = (e + b * dlog[x][i] % m * (m / orders[i])) % m;
                }
                exps[x] = e;
            }
            chars.push(Character { modulus: m, exps });
            // mixed-radix increment, last digit fastest
            let mut i = orders.len();
            loop {
                if i == 0 {
                    return Ok(chars);
                }
                i -= 1;
                tuple[i] += 1;
                if tuple[i] < orders[i] {
                    break;
                }
                tuple[i] = 0;
            }
        }
    }

    /// A basis of (R,+): generators g_i of orders d_i with
    /// R = (+) <g_i> as a direct sum.
    fn additive_basis(&self) -> Result<Vec<(usize, u64)>> {
        if self.order == 1 {
            return Ok(vec![]);
        }
        let mut basis = Vec::new();
        for &(p, e) in &factorize(self.order as u64) {
            let pe = p.pow(e);
            let part: Vec<usize> = (0..self.order)
                .filter(|&x| self.add_times(pe, x) == self.zero)
                .collect();
            basis.extend(self.pgroup_basis(&part, p)?);
        }
        Ok(basis)
    }

    /// Basis extraction for an additive p-group given as an element list:
    /// repeatedly pick the coset of maximal order in the quotient by the
    /// current span and lift it to an element of the same exact order.
    fn pgroup_basis(&self, elems: &[usize], p: u64) -> Result<Vec<(usize, u64)>> {
        let mut span: BTreeSet<usize> = [self.zero].into_iter().collect();
        let mut basis: Vec<(usize, u64)> = Vec::new();
        while span.len() < elems.len() {
            // coset order of x modulo the span
            let coset_order = |x: usize| -> u64 {
                let mut y = x;
                let mut ord = 1;
                while !span.contains(&y) {
                    y = self.add_times(p, y);
                    ord *= p;
                }
                ord
            };
            let mut best = (0u64, usize::MAX);
            for &x in elems {
                if span.contains(&x) {
                    continue;
                }
                let o = coset_order(x);
                if o > best.0 {
                    best = (o, x);
                }
            }
            let (f, x) = best;
            // lift: an element of the coset x + span whose exact order is f
            let lift = span
                .iter()
                .map(|&q| self.add(x, q))
                .find(|&y| self.add_times(f, y) == self.zero)
                .ok_or_else(|| {
                    Error::PropertyViolation("no exact-order lift in coset".into())
                })?;
            basis.push((lift, f));
            let mut new_span = BTreeSet::new();
            for &q in &span {
                let mut y = q;
                for _ in 0..f {
                    new_span.insert(y);
                    y = self.add(y, lift);
                }
            }
            span = new_span;
        }
        Ok(basis)
    }

    /// For each element, its coefficient tuple over the basis; verifies
    /// that the basis map is a bijection.
    fn discrete_logs(&self, basis: &[(usize, u64)]) -> Result<Vec<Vec<u64>>> {
        let mut dlog: Vec<Option<Vec<u64>>> = vec![None; self.order];
        let mut tuple = vec![0u64; basis.len()];
        let total: u64 = basis.iter().map(|&(_, d)| d).product();
        if total != self.order as u64 {
            return Err(Error::PropertyViolation(
                "additive basis orders do not multiply to |R|".into(),
            ));
        }
        loop {
            let mut x = self.zero;
            for (i, &(g, _)) in basis.iter().enumerate() {
                x = self.add(x, self.add_times(tuple[i], g));
            }
            if dlog[x].is_some() {
                return Err(Error::PropertyViolation(
                    "additive basis map is not injective".into(),
                ));
            }
            dlog[x] = Some(tuple.clone());
            let mut i = basis.len();
            loop {
                if i == 0 {
                    return Ok(dlog.into_iter().map(|v| v.unwrap()).collect());
                }
                i -= 1;
                tuple[i] += 1;
                if tuple[i] < basis[i].1 {
                    break;
                }
                tuple[i] = 0;
            }
        }
    }
}

// ---- catalog -------------------------------------------------------------

/// Which structured object a catalog ring came from; the no-go harness
/// uses this to force-include the known complete-family formulas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingKind {
    Zn(usize),
    Gf { p: u64, n: usize },
    Gr4 { n: usize },
    ZpDual { p: usize },
    Product(Box<RingKind>, Box<RingKind>),
}

/// A catalog ring with its natural default transversal pair (S, N).
#[derive(Debug, Clone)]
pub struct CatalogRing {
    pub ring: FiniteRing,
    pub kind: RingKind,
    pub default_s: Vec<usize>,
    pub default_n: Vec<usize>,
}

/// Parse a catalog constructor string: "zN", "gf:p,n", "gr4:n",
/// "zp_dual:p", or "prod:A,B" where A and B are catalog strings.
pub fn from_catalog(spec: &str) -> Result<CatalogRing> {
    if let Some(rest) = spec.strip_prefix("prod:") {
        // split at the first comma where both halves parse
        for (pos, _) in rest.char_indices().filter(|&(_, c)| c == ',') {
            let (a, b) = (&rest[..pos], &rest[pos + 1..]);
            if let (Ok(ca), Ok(cb)) = (from_catalog(a), from_catalog(b)) {
                let ring = FiniteRing::product(&ca.ring, &cb.ring)?;
                let o2 = cb.ring.order();
                let cross = |xs: &[usize], ys: &[usize]| -> Vec<usize> {
                    let mut out: Vec<usize> = xs
                        .iter()
                        .flat_map(|&x| ys.iter().map(move |&y| x * o2 + y))
                        .collect();
                    out.sort_unstable();
                    out
                };
                return Ok(CatalogRing {
                    ring,
                    kind: RingKind::Product(Box::new(ca.kind), Box::new(cb.kind)),
                    default_s: cross(&ca.default_s, &cb.default_s),
                    default_n: cross(&ca.default_n, &cb.default_n),
                });
            }
        }
        return Err(Error::InvalidArgument(format!("cannot parse product spec '{spec}'")));
    }
    if let Some(rest) = spec.strip_prefix("gf:") {
        let (p, n) = parse_pair(rest)?;
        let f = GfField::new(p, n as usize)?;
        let ring = FiniteRing::from_gf(&f)?;
        let all: Vec<usize> = (0..ring.order()).collect();
        return Ok(CatalogRing {
            ring,
            kind: RingKind::Gf { p, n: n as usize },
            default_s: all,
            default_n: vec![0],
        });
    }
    if let Some(rest) = spec.strip_prefix("gr4:") {
        let n: usize = rest
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad gr4 degree '{rest}'")))?;
        let r = Gr4Ring::new(n)?;
        let ring = FiniteRing::from_gr4(&r)?;
        let teich: Vec<usize> = r.teichmuller().iter().map(|t| r.index_of(t) as usize).collect();
        let mut teich_sorted = teich.clone();
        teich_sorted.sort_unstable();
        let nil: Vec<usize> = {
            let mut v: Vec<usize> = r
                .teichmuller()
                .iter()
                .map(|t| r.index_of(&r.scale(2, t)) as usize)
                .collect();
            v.sort_unstable();
            v
        };
        return Ok(CatalogRing {
            ring,
            kind: RingKind::Gr4 { n },
            default_s: teich_sorted,
            default_n: nil,
        });
    }
    if let Some(rest) = spec.strip_prefix("zp_dual:") {
        let p: usize = rest
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad zp_dual prime '{rest}'")))?;
        let ring = FiniteRing::zp_dual(p)?;
        // constants a + 0x form the canonical closed transversal to the
        // nilradical {bx}
        let default_s: Vec<usize> = (0..p).collect();
        let default_n: Vec<usize> = (0..p).map(|b| b * p).collect();
        return Ok(CatalogRing {
            ring,
            kind: RingKind::ZpDual { p },
            default_s,
            default_n,
        });
    }
    if let Some(rest) = spec.strip_prefix("z") {
        if let Ok(m) = rest.parse::<usize>() {
            let ring = FiniteRing::from_zn(m)?;
            let all: Vec<usize> = (0..ring.order()).collect();
            return Ok(CatalogRing {
                ring,
                kind: RingKind::Zn(m),
                default_s: all,
                default_n: vec![0],
            });
        }
    }
    Err(Error::InvalidArgument(format!("unknown ring spec '{spec}'")))
}

fn parse_pair(s: &str) -> Result<(u64, u64)> {
    let mut it = s.split(',');
    let a = it
        .next()
        .and_then(|x| x.parse().ok())
        .ok_or_else(|| Error::InvalidArgument(format!("bad pair '{s}'")))?;
    let b = it
        .next()
        .and_then(|x| x.parse().ok())
        .ok_or_else(|| Error::InvalidArgument(format!("bad pair '{s}'")))?;
    if it.next().is_some() {
        return Err(Error::InvalidArgument(format!("bad pair '{s}'")));
    }
    Ok((a, b))
}

// An element-index map between two rings that respects both tables.
pub fn table_isomorphic(r1: &FiniteRing, r2: &FiniteRing, map: &[usize]) -> bool {
    if r1.order() != r2.order() || map.len() != r1.order() {
        return false;
    }
    let mut seen = vec![false; r2.order()];
    for &m in map {
        if m >= r2.order() || seen[m] {
            return false;
        }
        seen[m] = true;
    }
    for i in 0..r1.order() {
        for j in 0..r1.order() {
            if map[r1.add(i, j)] != r2.add(map[i], map[j])
                || map[r1.mul(i, j)] != r2.mul(map[i], map[j])
            {
                return false;
            }
        }
    }
    true
}
