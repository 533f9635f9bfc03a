//! The named cyclic code families and their explicit low-weight codewords.
//!
//! | id        | q         | n      | k       | d_P |
//! |-----------|-----------|--------|---------|-----|
//! | `dp7`     | 1 mod 4   | 4q + 4 | 4q − 1  | 7   |
//! | `dp8`     | 3 mod 4   | 4q − 4 | 4q − 10 | 8   |
//! | `dp9`     | odd       | 2q + 2 | 2q − 5  | 9   |
//! | `kai_dp7` | 3 mod 4   | 4q − 4 | 4q − 9  | 7   |
//!
//! `kai_dp7` is the reference code that contains `dp8`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::cycstruct::minimal_polynomial;
use crate::decomp::{beta, quartic};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::ffield::{Fe, Tower};
use crate::fpoly::Poly;
use crate::numtheory::{prime_power, residue};
use crate::spcode::{min_hamming, min_pair, ConstacyclicCode, SearchOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyId {
    Dp7,
    Dp8,
    Dp9,
    KaiDp7,
}

impl FamilyId {
    pub const ALL: [FamilyId; 4] = [FamilyId::Dp7, FamilyId::Dp8, FamilyId::Dp9, FamilyId::KaiDp7];

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::Dp7 => "dp7",
            FamilyId::Dp8 => "dp8",
            FamilyId::Dp9 => "dp9",
            FamilyId::KaiDp7 => "kai_dp7",
        }
    }

    pub fn spec(self) -> FamilySpec {
        FamilySpec { id: self }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<FamilyId> {
        FamilyId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown family {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub id: FamilyId,
}

impl FamilySpec {
    /// Ok when `q` is an odd prime power meeting the family congruence.
    pub fn admissible(&self, q: u64) -> Result<()> {
        let inadmissible = |reason: String| Error::Inadmissible {
            family: self.id.name().into(),
            q,
            reason,
        };
        match prime_power(q) {
            Some((p, _)) if p != 2 => {}
            _ => return Err(inadmissible(format!("{q} is not an odd prime power"))),
        }
        match self.id {
            FamilyId::Dp7 if q % 4 != 1 => Err(inadmissible(format!(
                "{q} ≢ 1 (mod 4), got {q} ≡ {} (mod 4)",
                q % 4
            ))),
            FamilyId::Dp8 | FamilyId::KaiDp7 if q % 4 != 3 => Err(inadmissible(format!(
                "{q} ≢ 3 (mod 4), got {q} ≡ {} (mod 4)",
                q % 4
            ))),
            _ => Ok(()),
        }
    }

    pub fn length(&self, q: u64) -> usize {
        let q = q as usize;
        match self.id {
            FamilyId::Dp7 => 4 * q + 4,
            FamilyId::Dp8 | FamilyId::KaiDp7 => 4 * q - 4,
            FamilyId::Dp9 => 2 * q + 2,
        }
    }

    pub fn dimension(&self, q: u64) -> usize {
        let q = q as usize;
        match self.id {
            FamilyId::Dp7 => 4 * q - 1,
            FamilyId::Dp8 => 4 * q - 10,
            FamilyId::KaiDp7 => 4 * q - 9,
            FamilyId::Dp9 => 2 * q - 5,
        }
    }

    pub fn claimed_dp(&self) -> usize {
        match self.id {
            FamilyId::Dp7 | FamilyId::KaiDp7 => 7,
            FamilyId::Dp8 => 8,
            FamilyId::Dp9 => 9,
        }
    }

    /// The claimed minimum Hamming distance, where one is claimed.
    pub fn claimed_dh(&self, q: u64) -> Option<usize> {
        match self.id {
            FamilyId::Dp7 => Some(4),
            FamilyId::Dp8 => Some(if q == 3 { 6 } else { 4 }),
            FamilyId::Dp9 => Some(if q == 3 { 8 } else { 6 }),
            FamilyId::KaiDp7 => None,
        }
    }

    /// Root exponents of the generator, as written in the construction
    /// (signed, possibly repeated mod n).
    fn listed_exponents(&self, q: u64) -> Vec<i64> {
        let q = q as i64;
        let n = self.length(q as u64) as i64;
        match self.id {
            FamilyId::Dp7 => vec![0, n / 2, 1, q, q + 1],
            FamilyId::Dp8 => vec![0, n / 2, 1, q, 2, 2 * q],
            FamilyId::KaiDp7 => vec![0, 1, q, 2, 2 * q],
            FamilyId::Dp9 => vec![-1, -q, 0, 1, q, 2, 2 * q],
        }
    }

    /// The defining set `T` as sorted residues mod `n`.
    pub fn exponents(&self, q: u64) -> Vec<u64> {
        let n = self.length(q) as u64;
        let mut t: Vec<u64> = self
            .listed_exponents(q)
            .into_iter()
            .map(|e| residue(e, n))
            .collect();
        t.sort_unstable();
        t.dedup();
        t
    }

    /// Coset representatives whose minimal polynomials multiply to `g`.
    fn minimal_factors(&self, q: u64) -> Vec<i64> {
        let n = self.length(q) as i64;
        match self.id {
            FamilyId::Dp7 => vec![0, n / 2, 1, q as i64 + 1],
            FamilyId::Dp8 => vec![0, n / 2, 1, 2],
            FamilyId::KaiDp7 => vec![0, 1, 2],
            FamilyId::Dp9 => vec![-1, 0, 1, 2],
        }
    }

    /// The pair-weight patterns (run lengths separated by nonempty gaps)
    /// that the construction rules out by hand at pair weight `d_P − 1`.
    pub fn excluded_forms(&self) -> Vec<Vec<usize>> {
        match self.id {
            FamilyId::Dp7 => vec![vec![5], vec![3, 1], vec![2, 2]],
            FamilyId::Dp8 => vec![vec![6], vec![4, 1], vec![3, 2], vec![2, 1, 1]],
            FamilyId::Dp9 => vec![vec![7], vec![5, 1], vec![4, 2], vec![3, 3]],
            FamilyId::KaiDp7 => Vec::new(),
        }
    }
}

/// Builds the family code with the canonical primitive `n`-th root.
pub fn build(id: FamilyId, q: u64) -> Result<ConstacyclicCode> {
    id.spec().admissible(q)?;
    let tower = Arc::new(Tower::new(q)?);
    let n = id.spec().length(q) as u64;
    let xi = tower.big().nth_root_of_unity(n)?;
    build_with_root(id, tower, xi)
}

/// Builds the family code relative to the primitive `n`-th root `xi`.
///
/// The generator is the product of linear factors over GF(q²), coerced to
/// GF(q), and must agree with the product of minimal polynomials.
pub fn build_with_root(id: FamilyId, tower: Arc<Tower>, xi: Fe) -> Result<ConstacyclicCode> {
    let spec = id.spec();
    let q = tower.q();
    spec.admissible(q)?;
    let n = spec.length(q);
    let big = tower.big();
    if big.element_order(xi)? != n as u64 {
        return Err(Error::InvalidArgument(format!(
            "root must be a primitive {n}-th root of unity"
        )));
    }
    let roots: Vec<Fe> = spec
        .exponents(q)
        .into_iter()
        .map(|e| big.pow(xi, e))
        .collect();
    let g = Poly::from_roots(big.clone(), &roots)
        .coerce(&tower)
        .map_err(|e| Error::Invariant(format!("{id} generator not over GF(q): {e}")))?;
    let mut via_minimal = Poly::one(tower.small().clone());
    for i in spec.minimal_factors(q) {
        via_minimal = via_minimal.mul(&minimal_polynomial(&tower, xi, i, n as u64)?);
    }
    if via_minimal != g {
        return Err(Error::Invariant(format!(
            "{id} generator differs from its minimal polynomial product"
        )));
    }
    let code = ConstacyclicCode::with_root(tower, n, Fe::ONE, g, xi)?;
    if code.k() != spec.dimension(q) {
        return Err(Error::Invariant(format!(
            "{id} at q = {q} has dimension {} instead of {}",
            code.k(),
            spec.dimension(q)
        )));
    }
    Ok(code)
}

/// The explicit low-weight codeword bounding `d_H` from above.
pub fn witness_low_weight(id: FamilyId, code: &ConstacyclicCode) -> Result<Vec<Fe>> {
    let tower = code.tower();
    let f = tower.small().clone();
    let q = tower.q();
    let n = code.n();
    let xi = code
        .root_base()
        .ok_or(Error::MissingRootBase)?;
    let big = tower.big();
    let minus_one = f.neg(Fe::ONE);
    let p = match id {
        // (x^4 − 1)(x^{2q+2} + 1)
        FamilyId::Dp7 => Poly::binomial(f.clone(), 4, Fe::ONE)
            .mul(&Poly::binomial(f.clone(), 2 * q as usize + 2, minus_one)),
        // (x^{2q−2} − 1)(ξ^{q+1} x^{q−3} + 1)
        FamilyId::Dp8 => {
            let c = tower
                .to_subfield(big.pow(xi, q + 1))
                .map_err(|e| Error::Invariant(format!("ξ^(q+1) not in GF(q): {e}")))?;
            let second = Poly::monomial(f.clone(), c, q as usize - 3).add(&Poly::one(f.clone()));
            Poly::binomial(f.clone(), 2 * q as usize - 2, Fe::ONE).mul(&second)
        }
        // (x^4 − βx^2 + 1)(x^{q+1} − 1) with β = ξ² + ξ⁻²; here ξ has order
        // 2q + 2 as required
        FamilyId::Dp9 => {
            let _ = beta(tower, xi)?;
            quartic(tower, xi)?.mul(&Poly::binomial(f.clone(), q as usize + 1, Fe::ONE))
        }
        FamilyId::KaiDp7 => {
            return Err(Error::InvalidArgument(format!(
                "{id} has no explicit low-weight codeword"
            )))
        }
    };
    if p.is_zero() {
        return Err(Error::InvalidArgument(format!(
            "the {id} witness polynomial vanishes at q = {q}"
        )));
    }
    let c = p.to_vec(n)?;
    if !code.contains(&c)? {
        return Err(Error::Invariant(format!("{id} witness is not a codeword")));
    }
    Ok(c)
}

/// Whether every generator row of `dp8` lies in `kai_dp7`, both built from
/// the same root.
pub fn subcode_check(q: u64) -> Result<bool> {
    let sub = build(FamilyId::Dp8, q)?;
    let sup = build_with_root(FamilyId::KaiDp7, sub.tower().clone(), sub.root_base().expect("built with a root"))?;
    is_subcode(&sub, &sup)
}

pub fn is_subcode(sub: &ConstacyclicCode, sup: &ConstacyclicCode) -> Result<bool> {
    for row in sub.generator_matrix() {
        if !sup.contains(&row)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub family: FamilyId,
    pub q: u64,
    pub choices: usize,
    /// `(root index, d_H, d_P)` for every primitive `n`-th root.
    pub distances: Vec<(u32, usize, usize)>,
    pub stable: bool,
}

/// Rebuilds the family for every primitive `n`-th root of unity and
/// computes both distances for each.
pub fn root_choice_stability(id: FamilyId, q: u64, opts: &SearchOptions) -> Result<StabilityReport> {
    let spec = id.spec();
    spec.admissible(q)?;
    let tower = Arc::new(Tower::new(q)?);
    let n = spec.length(q);
    let roots = tower.big().primitive_roots_of_unity(n as u64)?;
    let inner = SearchOptions {
        exec: Exec::Sequential,
        ..opts.clone()
    };
    let results = opts.exec.map(&roots, |&xi| -> Result<(u32, usize, usize)> {
        let code = build_with_root(id, tower.clone(), xi)?;
        let h = min_hamming(&code, n, &inner)?;
        let p = min_pair(&code, n, &inner)?;
        Ok((xi.index(), h.value, p.value))
    });
    let distances = results.into_iter().collect::<Result<Vec<_>>>()?;
    let stable = distances
        .windows(2)
        .all(|w| (w[0].1, w[0].2) == (w[1].1, w[1].2));
    Ok(StabilityReport {
        family: id,
        q,
        choices: distances.len(),
        distances,
        stable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spcode::{hamming_weight, support};

    #[test]
    fn parameters_match_formulas() {
        for (id, qs) in [
            (FamilyId::Dp7, vec![5u64, 9, 13]),
            (FamilyId::Dp8, vec![3, 7, 11]),
            (FamilyId::KaiDp7, vec![3, 7, 11]),
            (FamilyId::Dp9, vec![3, 5, 7, 9, 11, 13]),
        ] {
            for q in qs {
                let c = build(id, q).unwrap();
                let spec = id.spec();
                assert_eq!(c.n(), spec.length(q));
                assert_eq!(c.k(), spec.dimension(q), "{id} q={q}");
                assert_eq!(
                    c.defining_set().unwrap().exponents,
                    spec.exponents(q),
                    "{id} q={q}"
                );
                assert_eq!(((q * q - 1) % c.n() as u64), 0);
            }
        }
        assert_eq!((build(FamilyId::Dp7, 5).unwrap().n(), build(FamilyId::Dp7, 5).unwrap().k()), (24, 19));
        assert_eq!(build(FamilyId::Dp8, 3).unwrap().k(), 2);
        assert_eq!(build(FamilyId::Dp9, 5).unwrap().k(), 5);
    }

    #[test]
    fn congruence_gate() {
        assert!(matches!(build(FamilyId::Dp7, 7), Err(Error::Inadmissible { .. })));
        assert!(matches!(build(FamilyId::Dp8, 5), Err(Error::Inadmissible { .. })));
        assert!(matches!(build(FamilyId::Dp9, 15), Err(Error::Inadmissible { .. })));
        assert!(matches!(build(FamilyId::Dp9, 8), Err(Error::Inadmissible { .. })));
        assert_eq!("kai_dp7".parse::<FamilyId>().unwrap(), FamilyId::KaiDp7);
        assert!("dp10".parse::<FamilyId>().is_err());
    }

    #[test]
    fn explicit_witnesses() {
        let c = build(FamilyId::Dp7, 5).unwrap();
        let w = witness_low_weight(FamilyId::Dp7, &c).unwrap();
        assert_eq!(support(&w), vec![0, 4, 12, 16]);
        for (id, q, weight) in [
            (FamilyId::Dp7, 9u64, 4usize),
            (FamilyId::Dp7, 13, 4),
            (FamilyId::Dp8, 7, 4),
            (FamilyId::Dp8, 11, 4),
            (FamilyId::Dp9, 5, 6),
            (FamilyId::Dp9, 7, 6),
            (FamilyId::Dp9, 9, 6),
            (FamilyId::Dp9, 11, 6),
            (FamilyId::Dp9, 13, 6),
        ] {
            let c = build(id, q).unwrap();
            let w = witness_low_weight(id, &c).unwrap();
            assert_eq!(hamming_weight(&w), weight, "{id} q={q}");
        }
        let c = build(FamilyId::Dp8, 3).unwrap();
        assert!(witness_low_weight(FamilyId::Dp8, &c).is_err());
    }

    #[test]
    fn dp8_is_a_subcode() {
        assert!(subcode_check(7).unwrap());
        assert!(subcode_check(11).unwrap());
        let c = build(FamilyId::Dp8, 7).unwrap();
        assert!(is_subcode(&c, &c).unwrap());
    }

    #[test]
    fn root_choices_agree() {
        let r = root_choice_stability(FamilyId::Dp9, 5, &SearchOptions::default()).unwrap();
        assert_eq!(r.choices, 4);
        assert!(r.stable);
        assert!(r.distances.iter().all(|&(_, h, p)| (h, p) == (6, 9)));
    }
}
