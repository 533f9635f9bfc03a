//! Cyclotomic cosets, minimal polynomials, defining sets and the BCH and
//! Hartmann–Tzeng lower bounds on the minimum Hamming distance.
//!
//! Residues are always normalised into `[0, modulus)`, so `-1` and `n-1`
//! denote the same coset.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::ffield::{Fe, Tower};
use crate::fpoly::Poly;
use crate::numtheory::{gcd, residue};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclotomicCoset {
    pub modulus: u64,
    pub representative: u64,
    /// Sorted orbit of the representative under multiplication by `q`.
    pub members: Vec<u64>,
}

impl CyclotomicCoset {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, e: u64) -> bool {
        self.members.binary_search(&e).is_ok()
    }
}

/// The q-cyclotomic coset of `i` modulo `modulus`.
pub fn coset(i: i64, q: u64, modulus: u64) -> Result<CyclotomicCoset> {
    if modulus == 0 {
        return Err(Error::InvalidArgument("coset modulus must be positive".into()));
    }
    let g = gcd(q % modulus, modulus);
    if g != 1 && modulus != 1 {
        return Err(Error::NotCoprime {
            a: q,
            b: modulus,
            gcd: g,
        });
    }
    let start = residue(i, modulus);
    let mut members = vec![start];
    let mut e = start * (q % modulus) % modulus;
    while e != start {
        members.push(e);
        e = e * (q % modulus) % modulus;
    }
    members.sort_unstable();
    Ok(CyclotomicCoset {
        modulus,
        representative: start,
        members,
    })
}

/// All cosets modulo `modulus`, each listed once, ordered by smallest member.
pub fn all_cosets(q: u64, modulus: u64) -> Result<Vec<CyclotomicCoset>> {
    let mut seen = vec![false; modulus as usize];
    let mut out = Vec::new();
    for i in 0..modulus {
        if seen[i as usize] {
            continue;
        }
        let c = coset(i as i64, q, modulus)?;
        for &m in &c.members {
            seen[m as usize] = true;
        }
        out.push(c);
    }
    Ok(out)
}

/// Minimal polynomial over GF(q) of `xi^i`, where `xi ∈ GF(q²)` has order `n`:
/// the product of `x − xi^j` over the coset of `i` modulo `n`.
pub fn minimal_polynomial(tower: &Tower, xi: Fe, i: i64, n: u64) -> Result<Poly> {
    let big = tower.big();
    if xi.is_zero() || big.element_order(xi)? != n {
        return Err(Error::InvalidArgument(format!(
            "root base must have multiplicative order {n}"
        )));
    }
    let c = coset(i, tower.q(), n)?;
    let roots: Vec<Fe> = c.members.iter().map(|&j| big.pow(xi, j)).collect();
    Poly::from_roots(big.clone(), &roots)
        .coerce(tower)
        .map_err(|e| Error::Invariant(format!("minimal polynomial not over GF(q): {e}")))
}

/// The exponent set `T ⊆ Ω_{rn} = {1 + r·i}` of a λ-constacyclic code
/// relative to a root base `α` of order `rn`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefiningSet {
    pub n: u64,
    pub r: u64,
    /// Sorted residues modulo `r·n`.
    pub exponents: Vec<u64>,
}

impl DefiningSet {
    pub fn new(n: u64, r: u64, mut exponents: Vec<u64>) -> Result<DefiningSet> {
        let rn = r * n;
        exponents.sort_unstable();
        exponents.dedup();
        if let Some(&bad) = exponents.iter().find(|&&e| e >= rn || e % r != 1 % r) {
            return Err(Error::InvalidArgument(format!(
                "exponent {bad} is not in Ω_{rn}"
            )));
        }
        Ok(DefiningSet { n, r, exponents })
    }

    pub fn modulus(&self) -> u64 {
        self.r * self.n
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn contains(&self, e: u64) -> bool {
        self.exponents.binary_search(&(e % self.modulus())).is_ok()
    }

    pub fn is_full(&self) -> bool {
        self.exponents.len() as u64 == self.n
    }

    /// Whether `T` is closed under multiplication by `q`.
    pub fn is_union_of_cosets(&self, q: u64) -> bool {
        let rn = self.modulus();
        self.exponents.iter().all(|&e| self.contains(e * q % rn))
    }

    /// Position `i` of the exponent `1 + r·i`.
    fn lattice_index(&self, e: u64) -> u64 {
        let rn = self.modulus();
        ((e + rn - 1) % rn) / self.r
    }

    fn lattice_bitmap(&self) -> Vec<bool> {
        let mut bits = vec![false; self.n as usize];
        for &e in &self.exponents {
            bits[self.lattice_index(e) as usize] = true;
        }
        bits
    }
}

/// Order of `λ` in GF(q)*.
pub fn shift_order(tower: &Tower, lambda: Fe) -> Result<u64> {
    tower.small().element_order(lambda)
}

/// A primitive `rn`-th root of unity `α ∈ GF(q²)` with `α^n = λ`, taken as
/// the smallest power of the canonical root that works. `None` when `rn`
/// does not divide `q² − 1`.
pub fn root_base(tower: &Tower, n: u64, lambda: Fe) -> Result<Option<Fe>> {
    let r = shift_order(tower, lambda)?;
    let rn = r * n;
    let big = tower.big();
    let Ok(alpha0) = big.nth_root_of_unity(rn) else {
        return Ok(None);
    };
    let target = tower.embed(lambda);
    Ok((1..=rn)
        .filter(|&j| gcd(j, rn) == 1)
        .map(|j| big.pow(alpha0, j))
        .find(|&a| big.pow(a, n) == target))
}

/// Reads the defining set of `⟨g⟩ ⊆ GF(q)[x]/⟨x^n − λ⟩` off the roots of `g`.
pub fn defining_set_from_generator(
    tower: &Tower,
    g: &Poly,
    alpha: Fe,
    n: u64,
    lambda: Fe,
) -> Result<DefiningSet> {
    let modulus = Poly::binomial(tower.small().clone(), n as usize, lambda);
    if !g.divides(&modulus)? {
        return Err(Error::NotADivisor(format!("{g} does not divide x^{n} − λ")));
    }
    let r = shift_order(tower, lambda)?;
    let rn = r * n;
    let big = tower.big();
    let exponents: Vec<u64> = (0..n)
        .map(|i| (1 + r * i) % rn)
        .filter(|&e| g.eval_in(tower, big.pow(alpha, e)).is_zero())
        .collect();
    if Some(exponents.len()) != g.degree() {
        return Err(Error::Invariant(format!(
            "{} roots found for a generator of degree {:?}",
            exponents.len(),
            g.degree()
        )));
    }
    DefiningSet::new(n, r, exponents)
}

pub fn generator_from_defining_set(tower: &Tower, alpha: Fe, t: &DefiningSet) -> Result<Poly> {
    let big = tower.big();
    let roots: Vec<Fe> = t.exponents.iter().map(|&e| big.pow(alpha, e)).collect();
    Poly::from_roots(big.clone(), &roots)
        .coerce(tower)
        .map_err(|_| Error::InvalidArgument("defining set is not a union of cosets".into()))
}

fn longest_cyclic_run(bits: &[bool]) -> usize {
    let n = bits.len();
    if bits.iter().all(|&b| b) {
        return n;
    }
    let mut best = 0;
    let mut cur = 0;
    // two passes catch runs that wrap past the end
    for i in 0..2 * n {
        if bits[i % n] {
            cur += 1;
            best = best.max(cur);
        } else {
            cur = 0;
        }
    }
    best.min(n)
}

/// BCH bound over every cyclic window of the r-strided exponent lattice:
/// `δ = 1 + ` the longest run `{1 + r·i, …, 1 + r·(i + δ − 2)} ⊆ T`.
/// Returns `n + 1` for the zero code.
pub fn bch_bound(t: &DefiningSet) -> usize {
    let bits = t.lattice_bitmap();
    if bits.iter().all(|&b| b) {
        return t.n as usize + 1;
    }
    longest_cyclic_run(&bits) + 1
}

/// BCH bound for the single window anchored at `1 + r·0`.
pub fn bch_bound_strict(t: &DefiningSet) -> usize {
    let bits = t.lattice_bitmap();
    if bits.iter().all(|&b| b) {
        return t.n as usize + 1;
    }
    bits.iter().take_while(|&&b| b).count() + 1
}

/// Hartmann–Tzeng bound for a cyclic code: the maximum of `δ + s` over
/// windows `A` of `δ − 1` consecutive exponents and steps `b` with
/// `gcd(b, n) < δ` such that `A + {0, b, …, s·b} ⊆ T`.
pub fn hartmann_tzeng_bound(t: &DefiningSet, exec: Exec) -> Result<usize> {
    if t.r != 1 {
        return Err(Error::InvalidArgument(
            "Hartmann–Tzeng bound applies to cyclic codes only".into(),
        ));
    }
    let n = t.n as usize;
    let bits = t.lattice_bitmap();
    if bits.iter().all(|&b| b) {
        return Ok(n + 1);
    }
    // lattice index i corresponds to exponent i + 1; shifts are the same
    let inside = |start: usize, len: usize| (0..len).all(|j| bits[(start + j) % n]);
    let per_start = exec.map_range(n, |a| {
        let mut best = 1;
        let mut len = 0;
        while len < n && bits[(a + len) % n] {
            len += 1;
            let delta = len + 1;
            for b in 1..n {
                if gcd(b as u64, n as u64) as usize >= delta {
                    continue;
                }
                let mut s = 0;
                while s < n && inside(a + (s + 1) * b, len) {
                    s += 1;
                }
                best = best.max(delta + s);
            }
        }
        best
    });
    Ok(per_start.into_iter().max().unwrap_or(1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coset_examples() {
        assert_eq!(coset(0, 5, 24).unwrap().members, vec![0]);
        assert_eq!(coset(-1, 3, 8).unwrap().members, vec![5, 7]);
        assert_eq!(coset(2, 5, 12).unwrap().members, vec![2, 10]);
        assert!(coset(1, 3, 9).is_err());
    }

    #[test]
    fn cosets_partition_and_are_closed() {
        for (q, n) in [(3u64, 8u64), (5, 24), (7, 16), (9, 20), (5, 12)] {
            let cs = all_cosets(q, n).unwrap();
            let mut all: Vec<u64> = cs.iter().flat_map(|c| c.members.clone()).collect();
            all.sort_unstable();
            assert_eq!(all, (0..n).collect::<Vec<_>>());
            let ord = crate::numtheory::multiplicative_order(q, n).unwrap();
            for c in &cs {
                assert_eq!(ord % c.len() as u64, 0);
                assert!(c.members.iter().all(|&m| c.contains(m * q % n)));
            }
        }
    }

    #[test]
    fn minimal_polynomial_of_one() {
        let t = Tower::new(5).unwrap();
        let xi = t.big().nth_root_of_unity(12).unwrap();
        let m0 = minimal_polynomial(&t, xi, 0, 12).unwrap();
        assert_eq!(m0, Poly::from_ints(t.small().clone(), &[-1, 1]));
    }

    #[test]
    fn minimal_polynomials_multiply_to_binomial() {
        for (q, n) in [(3u64, 8u64), (5, 12), (5, 24), (7, 16), (9, 20)] {
            let t = Tower::new(q).unwrap();
            let xi = t.big().nth_root_of_unity(n).unwrap();
            let prod = all_cosets(q, n).unwrap().iter().fold(
                Poly::one(t.small().clone()),
                |acc, c| {
                    acc.mul(&minimal_polynomial(&t, xi, c.representative as i64, n).unwrap())
                },
            );
            assert_eq!(prod, Poly::binomial(t.small().clone(), n as usize, Fe::ONE));
        }
    }

    #[test]
    fn bch_examples() {
        let empty = DefiningSet::new(8, 1, vec![]).unwrap();
        assert_eq!(bch_bound(&empty), 1);
        // {−2, −1, 0, 1, 2} mod 12 plus two stray exponents
        let t = DefiningSet::new(12, 1, vec![10, 11, 0, 1, 2, 5, 7]).unwrap();
        assert_eq!(bch_bound(&t), 6);
        // lattice index 0 is exponent 1: only {1, 2} anchored
        assert_eq!(bch_bound_strict(&t), 3);
        let full = DefiningSet::new(4, 1, vec![0, 1, 2, 3]).unwrap();
        assert_eq!(bch_bound(&full), 5);
    }

    #[test]
    fn ht_at_least_bch_on_runs() {
        let t = DefiningSet::new(15, 1, vec![1, 2, 3, 4]).unwrap();
        assert!(hartmann_tzeng_bound(&t, Exec::Sequential).unwrap() >= bch_bound(&t));
        let neg = DefiningSet::new(6, 2, vec![1, 3]).unwrap();
        assert!(hartmann_tzeng_bound(&neg, Exec::Sequential).is_err());
    }

    #[test]
    fn ht_on_dp7_exponents_q5() {
        // T = {0, n/2, 1, q, q+1} at q = 5, n = 24. Oracle: exhaustive
        // (window, b, s) scan written out independently below.
        let n = 24usize;
        let set = [0usize, 12, 1, 5, 6];
        let t = DefiningSet::new(24, 1, set.iter().map(|&e| e as u64).collect()).unwrap();
        let member = |e: usize| set.contains(&(e % n));
        let mut oracle = 1;
        for a in 0..n {
            for len in 1..=n {
                if !(0..len).all(|j| member(a + j)) {
                    break;
                }
                for b in 1..n {
                    if gcd(b as u64, n as u64) as usize > len {
                        continue;
                    }
                    for s in 0..n {
                        let ok = (0..=s).all(|k| (0..len).all(|j| member(a + j + k * b)));
                        if ok {
                            oracle = oracle.max(len + 1 + s);
                        }
                    }
                }
            }
        }
        assert_eq!(oracle, 4);
        assert_eq!(hartmann_tzeng_bound(&t, Exec::Sequential).unwrap(), 4);
        assert_eq!(hartmann_tzeng_bound(&t, Exec::Parallel).unwrap(), 4);
        assert_eq!(bch_bound(&t), 3);
    }

    #[test]
    fn defining_set_round_trip() {
        let t = Tower::new(5).unwrap();
        let n = 24;
        let alpha = root_base(&t, n, Fe::ONE).unwrap().unwrap();
        let big = t.big();
        let roots: Vec<Fe> = [0u64, 12, 1, 5, 6].iter().map(|&e| big.pow(alpha, e)).collect();
        let g = Poly::from_roots(big.clone(), &roots).coerce(&t).unwrap();
        let ds = defining_set_from_generator(&t, &g, alpha, n, Fe::ONE).unwrap();
        assert_eq!(ds.exponents, vec![0, 1, 5, 6, 12]);
        assert!(ds.is_union_of_cosets(5));
        assert_eq!(generator_from_defining_set(&t, alpha, &ds).unwrap(), g);

        let full = Poly::binomial(t.small().clone(), 24, Fe::ONE);
        let all = defining_set_from_generator(&t, &full, alpha, n, Fe::ONE).unwrap();
        assert!(all.is_full());

        // x^3 + x + 1 is irreducible over GF(5), so its roots live in GF(125)
        let bad = Poly::from_ints(t.small().clone(), &[1, 1, 0, 1]);
        assert!(defining_set_from_generator(&t, &bad, alpha, n, Fe::ONE).is_err());
    }

    #[test]
    fn negacyclic_root_base() {
        let t = Tower::new(5).unwrap();
        let minus_one = t.small().from_int(-1);
        let alpha = root_base(&t, 6, minus_one).unwrap().unwrap();
        let big = t.big();
        assert_eq!(big.element_order(alpha).unwrap(), 12);
        assert_eq!(big.pow(alpha, 6), t.embed(minus_one));
    }
}
