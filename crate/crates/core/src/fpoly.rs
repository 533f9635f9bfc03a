//! Dense univariate polynomials over a [`Field`] and the quotient rings
//! `F[x]/⟨x^n − λ⟩`.
//!
//! Mixing polynomials over different fields in one operation is a caller bug
//! and panics; the fallible operations (division, reciprocal, coercion)
//! return [`Error`].

use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ffield::{Fe, Field, Tower};

#[derive(Clone)]
pub struct Poly {
    field: Arc<Field>,
    coeffs: Vec<Fe>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.field.is_same(&other.field) && self.coeffs == other.coeffs
    }
}

impl Eq for Poly {}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

impl fmt::Display for Poly {
    /// Coefficients print as element indices, highest degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c.index()) {
                (0, v) => write!(f, "{v}")?,
                (1, 1) => write!(f, "x")?,
                (1, v) => write!(f, "{v}x")?,
                (_, 1) => write!(f, "x^{i}")?,
                (_, v) => write!(f, "{v}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn new(field: Arc<Field>, mut coeffs: Vec<Fe>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: Arc<Field>) -> Poly {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: Arc<Field>) -> Poly {
        Poly::constant(field, Fe::ONE)
    }

    pub fn constant(field: Arc<Field>, c: Fe) -> Poly {
        Poly::new(field, vec![c])
    }

    /// `c·x^d`.
    pub fn monomial(field: Arc<Field>, c: Fe, d: usize) -> Poly {
        let mut coeffs = vec![Fe::ZERO; d + 1];
        coeffs[d] = c;
        Poly::new(field, coeffs)
    }

    /// `x − a`.
    pub fn linear(field: Arc<Field>, root: Fe) -> Poly {
        let c0 = field.neg(root);
        Poly::new(field, vec![c0, Fe::ONE])
    }

    /// Coefficients given as integers, mapped through `Z → GF(p)`.
    pub fn from_ints(field: Arc<Field>, ints: &[i64]) -> Poly {
        let coeffs = ints.iter().map(|&v| field.from_int(v)).collect();
        Poly::new(field, coeffs)
    }

    pub fn from_indices(field: Arc<Field>, indices: &[u32]) -> Result<Poly> {
        let coeffs = indices
            .iter()
            .map(|&i| field.elem(i as u64))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(field, coeffs))
    }

    /// `x^n − λ`.
    pub fn binomial(field: Arc<Field>, n: usize, lambda: Fe) -> Poly {
        let mut coeffs = vec![Fe::ZERO; n + 1];
        coeffs[0] = field.neg(lambda);
        coeffs[n] = Fe::ONE;
        Poly::new(field, coeffs)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&Fe::ONE)
    }

    pub fn lead(&self) -> Fe {
        self.coeffs.last().copied().unwrap_or(Fe::ZERO)
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    fn check(&self, other: &Poly) {
        assert!(
            self.field.is_same(&other.field),
            "polynomials over different fields"
        );
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.check(other);
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| f.add(self.coeff(i), other.coeff(i)))
            .collect();
        Poly::new(self.field.clone(), coeffs)
    }

    pub fn neg(&self) -> Poly {
        let coeffs = self.coeffs.iter().map(|&c| self.field.neg(c)).collect();
        Poly::new(self.field.clone(), coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Fe) -> Poly {
        let coeffs = self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect();
        Poly::new(self.field.clone(), coeffs)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.check(other);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field.clone());
        }
        let f = &self.field;
        let mut out = vec![Fe::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(self.field.clone(), out)
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Fe::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly::new(self.field.clone(), coeffs)
    }

    pub fn monic(&self) -> Poly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lead) => self.scale(self.field.inv(lead).expect("nonzero lead")),
        }
    }

    /// Euclidean division: `self = q·divisor + r` with `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check(divisor);
        let db = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let f = &self.field;
        let mut rem = self.coeffs.clone();
        let Some(da) = self.degree().filter(|&da| da >= db) else {
            return Ok((Poly::zero(f.clone()), self.clone()));
        };
        let lead_inv = f.inv(divisor.lead())?;
        let mut quot = vec![Fe::ZERO; da - db + 1];
        for i in (db..=da).rev() {
            let c = f.mul(rem[i], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[i - db] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i - db + j] = f.sub(rem[i - db + j], f.mul(c, d));
            }
        }
        rem.truncate(db);
        Ok((Poly::new(f.clone(), quot), Poly::new(f.clone(), rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divmod(divisor)?.1)
    }

    pub fn divides(&self, other: &Poly) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }

    /// Exact quotient; fails if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.divmod(divisor)?;
        if !r.is_zero() {
            return Err(Error::NotADivisor(format!(
                "{divisor} does not divide {self}"
            )));
        }
        Ok(q)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        self.check(other);
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("b is nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Horner evaluation at a point of the same field.
    pub fn eval(&self, x: Fe) -> Fe {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(Fe::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Evaluates a polynomial over GF(q) at a point of GF(q²).
    pub fn eval_in(&self, tower: &Tower, x: Fe) -> Fe {
        let big = tower.big();
        self.coeffs
            .iter()
            .rev()
            .fold(Fe::ZERO, |acc, &c| big.add(big.mul(acc, x), tower.embed(c)))
    }

    /// `x^k f(1/x)` with trailing zeros stripped.
    pub fn reciprocal(&self) -> Result<Poly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Ok(Poly::new(self.field.clone(), coeffs))
    }

    /// Image of a GF(q) polynomial in GF(q²)[x].
    pub fn embed(&self, tower: &Tower) -> Poly {
        assert!(self.field.is_same(tower.small()));
        let coeffs = self.coeffs.iter().map(|&c| tower.embed(c)).collect();
        Poly::new(tower.big().clone(), coeffs)
    }

    /// Pulls a GF(q²) polynomial back to GF(q)[x]; fails unless every
    /// coefficient lies in the subfield.
    pub fn coerce(&self, tower: &Tower) -> Result<Poly> {
        assert!(self.field.is_same(tower.big()));
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| tower.to_subfield(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(tower.small().clone(), coeffs))
    }

    /// Coefficient vector padded to length `n`.
    pub fn to_vec(&self, n: usize) -> Result<Vec<Fe>> {
        if self.coeffs.len() > n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: self.coeffs.len(),
            });
        }
        let mut v = self.coeffs.clone();
        v.resize(n, Fe::ZERO);
        Ok(v)
    }

    pub fn indices(&self) -> Vec<u32> {
        self.coeffs.iter().map(|c| c.index()).collect()
    }

    /// Product of `x − r` over the given roots.
    pub fn from_roots(field: Arc<Field>, roots: &[Fe]) -> Poly {
        roots.iter().fold(Poly::one(field.clone()), |acc, &r| {
            acc.mul(&Poly::linear(field.clone(), r))
        })
    }
}

/// The ring `F[x]/⟨x^n − λ⟩`.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    field: Arc<Field>,
    n: usize,
    lambda: Fe,
}

impl QuotientRing {
    pub fn new(field: Arc<Field>, n: usize, lambda: Fe) -> Result<QuotientRing> {
        if lambda.is_zero() {
            return Err(Error::InvalidArgument("shift constant must be nonzero".into()));
        }
        if n == 0 {
            return Err(Error::InvalidArgument("ring length must be positive".into()));
        }
        Ok(QuotientRing { field, n, lambda })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> Fe {
        self.lambda
    }

    pub fn modulus(&self) -> Poly {
        Poly::binomial(self.field.clone(), self.n, self.lambda)
    }

    /// Folds every `x^{i}`, `i ≥ n`, down using `x^n = λ`.
    pub fn reduce(&self, p: &Poly) -> Poly {
        let f = &self.field;
        let mut c = p.coeffs().to_vec();
        for i in (self.n..c.len()).rev() {
            let top = c[i];
            if !top.is_zero() {
                c[i - self.n] = f.add(c[i - self.n], f.mul(self.lambda, top));
            }
        }
        c.truncate(self.n);
        Poly::new(f.clone(), c)
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.reduce(&a.mul(b))
    }
}
