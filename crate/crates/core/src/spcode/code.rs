use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::cycstruct::{defining_set_from_generator, root_base, shift_order, DefiningSet};
use crate::error::{Error, Result};
use crate::ffield::{Fe, Field, Tower};
use crate::fpoly::{Poly, QuotientRing};
use crate::linalg::row_space_basis;
use crate::numtheory::gcd;

/// A λ-constacyclic code `⟨g⟩ ⊆ GF(q)[x]/⟨x^n − λ⟩`.
///
/// When `r·n | q² − 1` (with `r` the order of λ) the code also carries a root
/// base `α ∈ GF(q²)` of order `r·n` with `α^n = λ` and its defining set
/// relative to `α`; the support-rank distance engine needs both.
/// Serializable summary of a code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodeDescriptor {
    pub q: u64,
    pub n: usize,
    pub k: usize,
    pub lambda: Fe,
    pub generator: Vec<Fe>,
    pub defining_set: Option<DefiningSet>,
}

#[derive(Clone)]
pub struct ConstacyclicCode {
    tower: Arc<Tower>,
    n: usize,
    lambda: Fe,
    g: Poly,
    h: Poly,
    alpha: Option<Fe>,
    defining: Option<DefiningSet>,
}

impl fmt::Debug for ConstacyclicCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConstacyclicCode")
            .field("q", &self.tower.q())
            .field("n", &self.n)
            .field("k", &self.k())
            .field("lambda", &self.lambda)
            .field("g", &self.g)
            .finish()
    }
}

impl ConstacyclicCode {
    /// Builds `⟨g⟩` with the canonical root base (if one exists in GF(q²)).
    pub fn new(tower: Arc<Tower>, n: usize, lambda: Fe, g: Poly) -> Result<ConstacyclicCode> {
        Self::check_length(&tower, n)?;
        let alpha = root_base(&tower, n as u64, lambda)?;
        Self::build(tower, n, lambda, g, alpha)
    }

    /// Builds `⟨g⟩` relative to a caller-chosen root base `α` of order `r·n`
    /// with `α^n = λ`.
    pub fn with_root(
        tower: Arc<Tower>,
        n: usize,
        lambda: Fe,
        g: Poly,
        alpha: Fe,
    ) -> Result<ConstacyclicCode> {
        Self::check_length(&tower, n)?;
        let r = shift_order(&tower, lambda)?;
        let big = tower.big();
        if alpha.is_zero()
            || big.element_order(alpha)? != r * n as u64
            || big.pow(alpha, n as u64) != tower.embed(lambda)
        {
            return Err(Error::InvalidArgument(format!(
                "root base must have order {} and satisfy α^n = λ",
                r * n as u64
            )));
        }
        Self::build(tower, n, lambda, g, Some(alpha))
    }

    /// The whole space `GF(q)^n`.
    pub fn full_space(tower: Arc<Tower>, n: usize, lambda: Fe) -> Result<ConstacyclicCode> {
        let g = Poly::one(tower.small().clone());
        Self::new(tower, n, lambda, g)
    }

    /// The zero code `{0}`.
    pub fn zero_code(tower: Arc<Tower>, n: usize, lambda: Fe) -> Result<ConstacyclicCode> {
        let g = Poly::binomial(tower.small().clone(), n, lambda);
        Self::new(tower, n, lambda, g)
    }

    fn check_length(tower: &Tower, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::InvalidArgument("code length must be positive".into()));
        }
        let p = tower.small().characteristic() as u64;
        if gcd(n as u64, p) != 1 {
            return Err(Error::NotCoprime {
                a: n as u64,
                b: tower.q(),
                gcd: gcd(n as u64, tower.q()),
            });
        }
        Ok(())
    }

    fn build(
        tower: Arc<Tower>,
        n: usize,
        lambda: Fe,
        g: Poly,
        alpha: Option<Fe>,
    ) -> Result<ConstacyclicCode> {
        if !g.field().is_same(tower.small()) {
            return Err(Error::FieldMismatch);
        }
        if lambda.is_zero() {
            return Err(Error::InvalidArgument("shift constant must be nonzero".into()));
        }
        if !g.is_monic() {
            return Err(Error::InvalidArgument(format!(
                "generator {g} must be monic"
            )));
        }
        let modulus = Poly::binomial(tower.small().clone(), n, lambda);
        let (h, rem) = modulus.divmod(&g)?;
        if !rem.is_zero() {
            return Err(Error::NotADivisor(format!(
                "{g} does not divide x^{n} − {lambda}"
            )));
        }
        let defining = match alpha {
            Some(a) => Some(defining_set_from_generator(&tower, &g, a, n as u64, lambda)?),
            None => None,
        };
        Ok(ConstacyclicCode {
            tower,
            n,
            lambda,
            g,
            h,
            alpha,
            defining,
        })
    }

    pub fn tower(&self) -> &Arc<Tower> {
        &self.tower
    }

    pub fn field(&self) -> &Arc<Field> {
        self.tower.small()
    }

    pub fn q(&self) -> u64 {
        self.tower.q()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.n - self.g.degree().expect("generator is nonzero")
    }

    pub fn lambda(&self) -> Fe {
        self.lambda
    }

    pub fn generator(&self) -> &Poly {
        &self.g
    }

    pub fn check_polynomial(&self) -> &Poly {
        &self.h
    }

    pub fn root_base(&self) -> Option<Fe> {
        self.alpha
    }

    pub fn defining_set(&self) -> Option<&DefiningSet> {
        self.defining.as_ref()
    }

    pub fn ring(&self) -> QuotientRing {
        QuotientRing::new(self.field().clone(), self.n, self.lambda).expect("λ is nonzero")
    }

    pub fn is_cyclic(&self) -> bool {
        self.lambda == Fe::ONE
    }

    /// Number of codewords `q^k`, saturating.
    pub fn size(&self) -> u128 {
        (self.q() as u128)
            .checked_pow(self.k() as u32)
            .unwrap_or(u128::MAX)
    }

    /// The Euclidean dual: the λ⁻¹-constacyclic code generated by
    /// `(x^n − λ⁻¹)/g_R(x)`, made monic.
    pub fn dual(&self) -> Result<ConstacyclicCode> {
        let f = self.field();
        let lambda_inv = f.inv(self.lambda)?;
        let g_r = self.g.reciprocal()?.monic();
        let modulus = Poly::binomial(f.clone(), self.n, lambda_inv);
        let dual_g = modulus.div_exact(&g_r)?.monic();
        ConstacyclicCode::new(self.tower.clone(), self.n, lambda_inv, dual_g)
    }

    fn check_len(&self, c: &[Fe]) -> Result<()> {
        if c.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: c.len(),
            });
        }
        Ok(())
    }

    pub fn contains(&self, c: &[Fe]) -> Result<bool> {
        self.check_len(c)?;
        let p = Poly::new(self.field().clone(), c.to_vec());
        Ok(p.rem(&self.g)?.is_zero())
    }

    /// Non-systematic encoding `m(x)·g(x)`.
    pub fn encode(&self, message: &[Fe]) -> Result<Vec<Fe>> {
        if message.len() != self.k() {
            return Err(Error::LengthMismatch {
                expected: self.k(),
                got: message.len(),
            });
        }
        let m = Poly::new(self.field().clone(), message.to_vec());
        m.mul(&self.g).to_vec(self.n)
    }

    /// Rows `x^i g(x)` for `0 ≤ i < k`.
    pub fn generator_matrix(&self) -> Vec<Vec<Fe>> {
        (0..self.k())
            .map(|i| self.g.shift(i).to_vec(self.n).expect("deg x^i g < n"))
            .collect()
    }

    /// `(λ c_{n−1}, c_0, …, c_{n−2})`.
    pub fn shift(&self, c: &[Fe]) -> Result<Vec<Fe>> {
        self.check_len(c)?;
        let f = self.field();
        let mut out = Vec::with_capacity(self.n);
        out.push(f.mul(self.lambda, c[self.n - 1]));
        out.extend_from_slice(&c[..self.n - 1]);
        Ok(out)
    }

    pub fn descriptor(&self) -> CodeDescriptor {
        CodeDescriptor {
            q: self.q(),
            n: self.n,
            k: self.k(),
            lambda: self.lambda,
            generator: self.g.coeffs().to_vec(),
            defining_set: self.defining.clone(),
        }
    }

    /// Set equality, decided by comparing reduced echelon forms of the
    /// generator matrices.
    pub fn same_code(&self, other: &ConstacyclicCode) -> bool {
        self.n == other.n
            && self.field().is_same(other.field())
            && row_space_basis(self.field(), &self.generator_matrix(), self.n)
                == row_space_basis(other.field(), &other.generator_matrix(), other.n)
    }
}
