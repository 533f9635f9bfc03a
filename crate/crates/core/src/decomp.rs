//! Splitting a length-`2n` cyclic code into a cyclic and a negacyclic code of
//! length `n`, the `(u + v, u − v)` join, and the closed-form dual generator
//! of the negacyclic part of the nine-distance family.

use std::sync::Arc;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::ffield::{Fe, Field, Tower};
use crate::fpoly::{Poly, QuotientRing};
use crate::linalg::dot;
use crate::spcode::{CodeDescriptor, ConstacyclicCode};

/// The `m` distinct `m`-th roots of unity `ζ^0, …, ζ^{m−1}` in `f`.
pub fn mth_roots(f: &Field, m: usize) -> Result<Vec<Fe>> {
    let units = f.order() as u64 - 1;
    if m == 0 || units % m as u64 != 0 {
        return Err(Error::NoRootOfUnity {
            n: m as u64,
            units,
        });
    }
    let z = f.nth_root_of_unity(m as u64)?;
    Ok((0..m as u64).map(|i| f.pow(z, i)).collect())
}

/// `p ↦ (p mod (x^n − ζ_i))_i` for the given `m`-th roots of unity.
pub fn phi_map(roots: &[Fe], n: usize, p: &Poly) -> Result<Vec<Poly>> {
    let f = p.field();
    let m = roots.len();
    let units = f.order() as u64 - 1;
    if m == 0 || units % m as u64 != 0 {
        return Err(Error::NoRootOfUnity {
            n: m as u64,
            units,
        });
    }
    let mut seen = roots.to_vec();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != m || roots.iter().any(|&z| f.pow(z, m as u64) != Fe::ONE) {
        return Err(Error::InvalidArgument(format!(
            "expected the {m} distinct {m}-th roots of unity"
        )));
    }
    if p.degree().is_some_and(|d| d >= m * n) {
        return Err(Error::InvalidArgument(format!(
            "polynomial degree must be below {}",
            m * n
        )));
    }
    roots
        .iter()
        .map(|&z| Ok(QuotientRing::new(f.clone(), n, z)?.reduce(p)))
        .collect()
}

#[derive(Clone, Debug)]
pub struct DecompositionPair {
    pub parent: ConstacyclicCode,
    pub c1: ConstacyclicCode,
    pub c2: ConstacyclicCode,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionDescriptor {
    pub c1: CodeDescriptor,
    pub c2: CodeDescriptor,
    pub parent_digest: String,
}

impl DecompositionPair {
    pub fn descriptor(&self) -> DecompositionDescriptor {
        let parent = serde_json::to_vec(&self.parent.descriptor()).expect("descriptor serializes");
        let digest = hex::encode(Sha256::digest(&parent));
        DecompositionDescriptor {
            c1: self.c1.descriptor(),
            c2: self.c2.descriptor(),
            parent_digest: digest,
        }
    }
}

fn check_odd(f: &Field) -> Result<()> {
    if f.characteristic() == 2 {
        return Err(Error::InvalidArgument("decomposition needs odd q".into()));
    }
    Ok(())
}

/// `C = C₁ ⋎ C₂` with `C₁ = ⟨gcd(g, x^n − 1)⟩` and `C₂ = ⟨gcd(g, x^n + 1)⟩`.
pub fn decompose(parent: &ConstacyclicCode) -> Result<DecompositionPair> {
    let f = parent.field().clone();
    check_odd(&f)?;
    if !parent.is_cyclic() {
        return Err(Error::InvalidArgument("parent must be cyclic".into()));
    }
    if parent.n() % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "parent length {} is odd",
            parent.n()
        )));
    }
    let n = parent.n() / 2;
    let g = parent.generator();
    let minus_one = f.neg(Fe::ONE);
    let g1 = g.gcd(&Poly::binomial(f.clone(), n, Fe::ONE));
    let g2 = g.gcd(&Poly::binomial(f.clone(), n, minus_one));
    if &g1.mul(&g2) != g {
        return Err(Error::Invariant("g is not g₁·g₂".into()));
    }
    let tower = parent.tower().clone();
    let c1 = ConstacyclicCode::new(tower.clone(), n, Fe::ONE, g1)?;
    let c2 = ConstacyclicCode::new(tower, n, minus_one, g2)?;
    if c1.k() + c2.k() != parent.k() {
        return Err(Error::Invariant("component dimensions do not add up".into()));
    }
    let joined = join(&c1, &c2)?;
    if !joined.same_code(parent) {
        return Err(Error::Invariant("join of the components differs from the parent".into()));
    }
    Ok(DecompositionPair {
        parent: parent.clone(),
        c1,
        c2,
    })
}

/// `(u + v, u − v)`.
pub fn combine(f: &Field, u: &[Fe], v: &[Fe]) -> Result<Vec<Fe>> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch {
            expected: u.len(),
            got: v.len(),
        });
    }
    let mut out: Vec<Fe> = u.iter().zip(v).map(|(&a, &b)| f.add(a, b)).collect();
    out.extend(u.iter().zip(v).map(|(&a, &b)| f.sub(a, b)));
    Ok(out)
}

/// Inverse of [`combine`] via `2⁻¹(1 1; 1 −1)`.
pub fn split(f: &Field, c: &[Fe]) -> Result<(Vec<Fe>, Vec<Fe>)> {
    check_odd(f)?;
    if c.len() % 2 != 0 {
        return Err(Error::InvalidArgument("odd length word".into()));
    }
    let half = f.inv(f.from_int(2))?;
    let (a, b) = c.split_at(c.len() / 2);
    let u = a.iter().zip(b).map(|(&x, &y)| f.mul(half, f.add(x, y))).collect();
    let v = a.iter().zip(b).map(|(&x, &y)| f.mul(half, f.sub(x, y))).collect();
    Ok((u, v))
}

/// The cyclic code `{(u + v, u − v) : u ∈ C₁, v ∈ C₂}` of length `2n`.
pub fn join(c1: &ConstacyclicCode, c2: &ConstacyclicCode) -> Result<ConstacyclicCode> {
    let f = c1.field().clone();
    check_odd(&f)?;
    if !c2.field().is_same(&f) {
        return Err(Error::FieldMismatch);
    }
    if c1.n() != c2.n() {
        return Err(Error::LengthMismatch {
            expected: c1.n(),
            got: c2.n(),
        });
    }
    if !c1.is_cyclic() || c2.lambda() != f.neg(Fe::ONE) {
        return Err(Error::InvalidArgument("join needs a cyclic and a negacyclic code".into()));
    }
    let n = c1.n();
    let zero = vec![Fe::ZERO; n];
    let mut rows = Vec::with_capacity(c1.k() + c2.k());
    for u in c1.generator_matrix() {
        rows.push(combine(&f, &u, &zero)?);
    }
    for v in c2.generator_matrix() {
        rows.push(combine(&f, &zero, &v)?);
    }
    let mut g = Poly::binomial(f.clone(), 2 * n, Fe::ONE);
    for r in &rows {
        g = g.gcd(&Poly::new(f.clone(), r.clone()));
    }
    let code = ConstacyclicCode::new(c1.tower().clone(), 2 * n, Fe::ONE, g)?;
    if code.k() != rows.len() {
        return Err(Error::Invariant(format!(
            "joined code has dimension {} instead of {}",
            code.k(),
            rows.len()
        )));
    }
    Ok(code)
}

fn check_xi(tower: &Tower, xi: Fe) -> Result<u64> {
    let q = tower.q();
    if q <= 3 || q % 2 == 0 {
        return Err(Error::InvalidArgument(format!(
            "closed-form dual generator needs odd q > 3, got {q}"
        )));
    }
    let order = tower.big().element_order(xi)?;
    if order != 2 * q + 2 {
        return Err(Error::InvalidArgument(format!(
            "ξ has order {order}, expected {}",
            2 * q + 2
        )));
    }
    Ok(q)
}

/// `β = ξ² + ξ⁻²` as an element of GF(q).
pub fn beta(tower: &Tower, xi: Fe) -> Result<Fe> {
    let big = tower.big();
    let b = big.add(big.pow(xi, 2), big.pow_signed(xi, -2)?);
    tower
        .to_subfield(b)
        .map_err(|e| Error::Invariant(format!("β not in GF(q): {e}")))
}

/// `x⁴ − βx² + 1`.
pub fn quartic(tower: &Tower, xi: Fe) -> Result<Poly> {
    let f = tower.small();
    let b = beta(tower, xi)?;
    Ok(Poly::new(
        f.clone(),
        vec![Fe::ONE, Fe::ZERO, f.neg(b), Fe::ZERO, Fe::ONE],
    ))
}

/// `b(x) = Σ b_k x^k`, `k ≤ q − 3`, with `b_k = (ξ^{k+4} − ξ^{−k})/(ξ⁴ − 1)`
/// for even `k` and `b_k = 0` for odd `k`.
pub fn negacyclic_dual_generator(tower: &Tower, xi: Fe) -> Result<Poly> {
    let q = check_xi(tower, xi)?;
    let big = tower.big();
    let denom = big.sub(big.pow(xi, 4), Fe::ONE);
    let coeffs = (0..=q as i64 - 3)
        .map(|k| {
            if k % 2 == 1 {
                return Ok(Fe::ZERO);
            }
            let num = big.sub(big.pow(xi, k as u64 + 4), big.pow_signed(xi, -k)?);
            let v = big.div(num, denom)?;
            tower
                .to_subfield(v)
                .map_err(|e| Error::Invariant(format!("b_{k} not in GF(q): {e}")))
        })
        .collect::<Result<Vec<Fe>>>()?;
    Ok(Poly::new(tower.small().clone(), coeffs))
}

/// Same coefficients from `b₀ = 1, b₁ = 0, b₂ = β, b₃ = 0` and
/// `b_k = β b_{k−2} − b_{k−4}`.
pub fn dual_generator_by_recurrence(tower: &Tower, xi: Fe) -> Result<Poly> {
    let q = check_xi(tower, xi)? as usize;
    let f = tower.small();
    let b = beta(tower, xi)?;
    let mut c = vec![Fe::ONE, Fe::ZERO, b, Fe::ZERO];
    for k in 4..=q - 3 {
        let v = f.sub(f.mul(b, c[k - 2]), c[k - 4]);
        c.push(v);
    }
    c.truncate(q - 2);
    Ok(Poly::new(f.clone(), c))
}

/// Same polynomial as `(x^{q+1} + 1)/(x⁴ − βx² + 1)`.
pub fn dual_generator_by_division(tower: &Tower, xi: Fe) -> Result<Poly> {
    let q = check_xi(tower, xi)? as usize;
    let f = tower.small();
    let top = Poly::binomial(f.clone(), q + 1, f.neg(Fe::ONE));
    top.div_exact(&quartic(tower, xi)?)
}

fn dual_coeffs(b: &Poly, m: usize) -> Result<Vec<Fe>> {
    if m < 5 || b.degree() != Some(m - 4) {
        return Err(Error::InvalidArgument(format!(
            "b(x) must have degree {} for length {m}",
            m.saturating_sub(4)
        )));
    }
    b.to_vec(m - 3)
}

/// `(−b_{m−4}, 0, 0, 0, b₀, …, b_{m−5})` for the length-`m` negacyclic code.
pub fn rotated_dual_word(b: &Poly, m: usize) -> Result<Vec<Fe>> {
    let c = dual_coeffs(b, m)?;
    let f = b.field();
    let mut w = vec![f.neg(c[m - 4]), Fe::ZERO, Fe::ZERO, Fe::ZERO];
    w.extend_from_slice(&c[..m - 4]);
    Ok(w)
}

/// `(0, 0, b₀, …, b_{m−4}, 0)`.
pub fn shifted_dual_word(b: &Poly, m: usize) -> Result<Vec<Fe>> {
    let c = dual_coeffs(b, m)?;
    let mut w = vec![Fe::ZERO, Fe::ZERO];
    w.extend_from_slice(&c);
    w.push(Fe::ZERO);
    Ok(w)
}

/// Checks `e ∈ C₂^⊥` and that `e` is orthogonal to every generator row.
pub fn dual_orthogonality_probe(c2: &ConstacyclicCode, e: &[Fe]) -> Result<bool> {
    let dual = c2.dual()?;
    if !dual.contains(e)? {
        return Err(Error::InvalidArgument("word is not in the dual code".into()));
    }
    let f = c2.field();
    Ok(c2
        .generator_matrix()
        .iter()
        .all(|row| dot(f, row, e).is_zero()))
}

/// Convenience: a primitive `(2q+2)`-th root of unity in GF(q²).
pub fn default_xi(tower: &Arc<Tower>) -> Result<Fe> {
    tower.big().nth_root_of_unity(2 * tower.q() + 2)
}
