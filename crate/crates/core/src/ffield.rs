//! Exact arithmetic in GF(p^m) and the quadratic tower GF(q) ⊂ GF(q²).
//!
//! Elements are stored as their index: the base-p integer whose little-endian
//! digits are the coefficients of the element in the polynomial basis
//! `1, x, …, x^{m-1}` modulo the field's defining polynomial. Index 0 is zero
//! and index 1 is one.
//!
//! Fields with at most [`TABLE_LIMIT`] elements precompute discrete log,
//! exponential and Zech logarithm tables so that every operation is a handful
//! of lookups. Larger fields can be built with [`Backend::Reduction`], which
//! multiplies by polynomial reduction instead.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{is_prime, prime_factors, prime_power};

/// Largest field order that is backed by lookup tables.
pub const TABLE_LIMIT: u64 = 1 << 20;

const NONE: u32 = u32::MAX;

/// A field element, identified by its index in `[0, p^m)`.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Fe(u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Tables,
    Reduction,
}

struct Tables {
    /// `exp[i] = g^i`, stored twice over so sums of two logs index directly.
    exp: Vec<u32>,
    log: Vec<u32>,
    /// `zech[k] = log(1 + g^k)`, or `NONE` when `1 + g^k = 0`.
    zech: Vec<u32>,
    neg: Vec<u32>,
}

/// Serializable description of a field: enough to rebuild it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
    pub generator: u32,
}

pub struct Field {
    p: u32,
    m: u32,
    order: u32,
    modulus: Vec<u32>,
    generator: Fe,
    tables: Option<Tables>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for Field {}

impl Field {
    /// Builds GF(p^m) with the table backend.
    pub fn new(p: u64, m: u32) -> Result<Field> {
        Field::with_backend(p, m, Backend::Tables)
    }

    pub fn with_backend(p: u64, m: u32, backend: Backend) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::ZeroDegree);
        }
        let order = p
            .checked_pow(m)
            .filter(|&o| o < u32::MAX as u64)
            .ok_or(Error::FieldTooLarge {
                order: u64::MAX,
                limit: TABLE_LIMIT,
            })?;
        if backend == Backend::Tables && order > TABLE_LIMIT {
            return Err(Error::FieldTooLarge {
                order,
                limit: TABLE_LIMIT,
            });
        }
        let p32 = p as u32;
        let modulus = smallest_irreducible(p32, m);
        let mut field = Field {
            p: p32,
            m,
            order: order as u32,
            modulus,
            generator: Fe::ONE,
            tables: None,
        };
        field.generator = field.find_generator();
        if backend == Backend::Tables {
            field.tables = Some(field.build_tables());
        }
        Ok(field)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Defining polynomial, ascending coefficients, monic of degree `m`.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> Fe {
        self.generator
    }

    pub fn backend(&self) -> Backend {
        if self.tables.is_some() {
            Backend::Tables
        } else {
            Backend::Reduction
        }
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.p,
            m: self.m,
            modulus: self.modulus.clone(),
            generator: self.generator.0,
        }
    }

    pub fn zero(&self) -> Fe {
        Fe::ZERO
    }

    pub fn one(&self) -> Fe {
        Fe::ONE
    }

    pub fn elem(&self, index: u64) -> Result<Fe> {
        if index >= self.order as u64 {
            return Err(Error::ElementOutOfRange {
                index,
                order: self.order as u64,
            });
        }
        Ok(Fe(index as u32))
    }

    /// Image of an integer under `Z → GF(p)`.
    pub fn from_int(&self, v: i64) -> Fe {
        Fe(v.rem_euclid(self.p as i64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.order).map(Fe)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Fe> {
        (1..self.order).map(Fe)
    }

    /// Coefficient vector of `a` in the polynomial basis, low degree first.
    pub fn digits(&self, a: Fe) -> Vec<u32> {
        let mut v = a.0;
        (0..self.m)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> Fe {
        Fe(digits
            .iter()
            .rev()
            .fold(0u32, |acc, &d| acc * self.p + d % self.p))
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.m == 1 {
            return Fe((a.0 + b.0) % self.p);
        }
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        match &self.tables {
            Some(t) => {
                let units = self.order - 1;
                let la = t.log[a.0 as usize];
                let lb = t.log[b.0 as usize];
                let k = if lb >= la { lb - la } else { lb + units - la };
                let z = t.zech[k as usize];
                if z == NONE {
                    Fe::ZERO
                } else {
                    Fe(t.exp[(la + z) as usize])
                }
            }
            None => self.add_digits(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        if a.0 == 0 {
            return a;
        }
        if self.m == 1 {
            return Fe(self.p - a.0);
        }
        match &self.tables {
            Some(t) => Fe(t.neg[a.0 as usize]),
            None => self.neg_digits(a),
        }
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        match &self.tables {
            Some(t) => Fe(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => self.mul_reduce(a, b),
        }
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.tables {
            Some(t) => {
                let units = self.order - 1;
                Fe(t.exp[((units - t.log[a.0 as usize]) % units) as usize])
            }
            None => self.pow(a, self.order as u64 - 2),
        })
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return Fe::ONE;
        }
        if a.0 == 0 {
            return Fe::ZERO;
        }
        match &self.tables {
            Some(t) => {
                let units = (self.order - 1) as u64;
                let l = t.log[a.0 as usize] as u64 * (e % units) % units;
                Fe(t.exp[l as usize])
            }
            None => self.pow_reduce(a, e),
        }
    }

    /// `a^{-k}` style exponent for signed powers of a unit.
    pub fn pow_signed(&self, a: Fe, e: i64) -> Result<Fe> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            Ok(self.pow(self.inv(a)?, e.unsigned_abs()))
        }
    }

    /// Discrete logarithm to the base of [`Field::generator`]. `None` for zero
    /// or when the field has no tables.
    pub fn log(&self, a: Fe) -> Option<u32> {
        if a.0 == 0 {
            return None;
        }
        self.tables.as_ref().map(|t| t.log[a.0 as usize])
    }

    pub fn exp(&self, k: u64) -> Fe {
        self.pow(self.generator, k)
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: Fe) -> Result<u64> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let units = (self.order - 1) as u64;
        let mut ord = units;
        for l in prime_factors(units) {
            while ord % l == 0 && self.pow(a, ord / l) == Fe::ONE {
                ord /= l;
            }
        }
        Ok(ord)
    }

    pub fn frobenius(&self, a: Fe) -> Fe {
        self.pow(a, self.p as u64)
    }

    /// The canonical primitive n-th root of unity `g^{(p^m-1)/n}`.
    pub fn nth_root_of_unity(&self, n: u64) -> Result<Fe> {
        let units = (self.order - 1) as u64;
        if n == 0 || units % n != 0 {
            return Err(Error::NoRootOfUnity { n, units });
        }
        Ok(self.pow(self.generator, units / n))
    }

    /// Every primitive n-th root of unity, ordered by exponent of the
    /// canonical root.
    pub fn primitive_roots_of_unity(&self, n: u64) -> Result<Vec<Fe>> {
        let xi = self.nth_root_of_unity(n)?;
        Ok((1..=n)
            .filter(|&j| crate::numtheory::gcd(j, n) == 1)
            .map(|j| self.pow(xi, j))
            .collect())
    }

    pub fn sum<I: IntoIterator<Item = Fe>>(&self, it: I) -> Fe {
        it.into_iter().fold(Fe::ZERO, |acc, x| self.add(acc, x))
    }

    pub fn is_same(&self, other: &Field) -> bool {
        std::ptr::eq(self, other) || self == other
    }

    fn add_digits(&self, a: Fe, b: Fe) -> Fe {
        let (da, db) = (self.digits(a), self.digits(b));
        let s: Vec<u32> = da
            .iter()
            .zip(&db)
            .map(|(x, y)| (x + y) % self.p)
            .collect();
        self.from_digits(&s)
    }

    fn neg_digits(&self, a: Fe) -> Fe {
        let d: Vec<u32> = self
            .digits(a)
            .into_iter()
            .map(|x| (self.p - x) % self.p)
            .collect();
        self.from_digits(&d)
    }

    fn mul_reduce(&self, a: Fe, b: Fe) -> Fe {
        let p = self.p as u64;
        let m = self.m as usize;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for i in (m..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..m {
                let sub = c * self.modulus[j] as u64 % p;
                prod[i - m + j] = (prod[i - m + j] + p - sub) % p;
            }
        }
        let d: Vec<u32> = prod[..m].iter().map(|&x| x as u32).collect();
        self.from_digits(&d)
    }

    fn pow_reduce(&self, a: Fe, mut e: u64) -> Fe {
        let mut base = a;
        let mut acc = Fe::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_reduce(acc, base);
            }
            base = self.mul_reduce(base, base);
            e >>= 1;
        }
        acc
    }

    fn find_generator(&self) -> Fe {
        let units = (self.order - 1) as u64;
        let factors = prime_factors(units);
        (1..self.order)
            .map(Fe)
            .find(|&a| factors.iter().all(|&l| self.pow_reduce(a, units / l) != Fe::ONE))
            .expect("the unit group of a finite field is cyclic")
    }

    fn build_tables(&self) -> Tables {
        let q = self.order as usize;
        let units = q - 1;
        let mut exp = vec![0u32; 2 * units.max(1)];
        let mut log = vec![0u32; q];
        let mut x = Fe::ONE;
        for i in 0..units {
            exp[i] = x.0;
            log[x.0 as usize] = i as u32;
            x = self.mul_reduce(x, self.generator);
        }
        for i in 0..units {
            exp[units + i] = exp[i];
        }
        let neg: Vec<u32> = (0..q as u32).map(|a| self.neg_digits(Fe(a)).0).collect();
        let zech = (0..units)
            .map(|k| {
                let s = self.add_digits(Fe::ONE, Fe(exp[k]));
                if s.0 == 0 {
                    NONE
                } else {
                    log[s.0 as usize]
                }
            })
            .collect();
        Tables {
            exp,
            log,
            zech,
            neg,
        }
    }
}

/// Lexicographically smallest monic irreducible polynomial of degree `m`
/// over GF(p), comparing `(c_0, c_1, …, c_{m-1})` as integers in that order.
fn smallest_irreducible(p: u32, m: u32) -> Vec<u32> {
    let m = m as usize;
    let total = (p as u64).pow(m as u32);
    for code in 0..total {
        // c_0 is the most significant digit of `code`.
        let mut coeffs = vec![0u32; m + 1];
        let mut v = code;
        for i in (0..m).rev() {
            coeffs[i] = (v % p as u64) as u32;
            v /= p as u64;
        }
        coeffs[m] = 1;
        if is_irreducible_mod_p(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible_mod_p(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    if deg <= 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut div = vec![0u32; d + 1];
            let mut v = code;
            for c in div.iter_mut().take(d) {
                *c = (v % p as u64) as u32;
                v /= p as u64;
            }
            div[d] = 1;
            if rem_mod_p(f, &div, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn rem_mod_p(f: &[u32], monic: &[u32], p: u32) -> Vec<u32> {
    let p = p as u64;
    let mut r: Vec<u64> = f.iter().map(|&c| c as u64).collect();
    let d = monic.len() - 1;
    for i in (d..r.len()).rev() {
        let c = r[i] % p;
        if c == 0 {
            continue;
        }
        for j in 0..=d {
            r[i - d + j] = (r[i - d + j] + p * p - c * monic[j] as u64) % p;
        }
    }
    r.truncate(d);
    r.into_iter().map(|c| c as u32).collect()
}

/// The tower GF(q) ⊂ GF(q²) with an explicit embedding and its partial
/// inverse.
pub struct Tower {
    q: u64,
    small: Arc<Field>,
    big: Arc<Field>,
    embed: Vec<Fe>,
    section: Vec<u32>,
}

impl fmt::Debug for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tower")
            .field("q", &self.q)
            .field("small", &self.small)
            .field("big", &self.big)
            .finish()
    }
}

impl Tower {
    /// Builds GF(q) and GF(q²) for an odd prime power `q`.
    ///
    /// The embedding sends the basis element `x` of GF(q) to the
    /// smallest-index root of GF(q)'s defining polynomial inside GF(q²).
    pub fn new(q: u64) -> Result<Tower> {
        let (p, m) = prime_power(q)
            .filter(|&(p, _)| p != 2)
            .ok_or(Error::NotOddPrimePower(q))?;
        let small = Arc::new(Field::new(p, m)?);
        let big = Arc::new(Field::new(p, 2 * m)?);
        let modulus: Vec<Fe> = small.modulus().iter().map(|&c| Fe(c)).collect();
        let root = big
            .elements()
            .find(|&x| {
                let v = modulus
                    .iter()
                    .rev()
                    .fold(Fe::ZERO, |acc, &c| big.add(big.mul(acc, x), c));
                v.is_zero()
            })
            .ok_or_else(|| Error::Invariant("defining polynomial has no root".into()))?;
        let powers: Vec<Fe> = (0..m).map(|i| big.pow(root, i as u64)).collect();
        let embed: Vec<Fe> = small
            .elements()
            .map(|a| {
                big.sum(
                    small
                        .digits(a)
                        .into_iter()
                        .zip(&powers)
                        .map(|(d, &w)| big.mul(Fe(d), w)),
                )
            })
            .collect();
        let mut section = vec![NONE; big.order() as usize];
        for (i, e) in embed.iter().enumerate() {
            section[e.0 as usize] = i as u32;
        }
        Ok(Tower {
            q,
            small,
            big,
            embed,
            section,
        })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn small(&self) -> &Arc<Field> {
        &self.small
    }

    pub fn big(&self) -> &Arc<Field> {
        &self.big
    }

    pub fn embed(&self, a: Fe) -> Fe {
        self.embed[a.0 as usize]
    }

    /// Frobenius fixed-point test `x^q = x`.
    pub fn in_subfield(&self, x: Fe) -> bool {
        self.big.pow(x, self.q) == x
    }

    pub fn to_subfield(&self, x: Fe) -> Result<Fe> {
        match self.section.get(x.0 as usize) {
            Some(&i) if i != NONE => Ok(Fe(i)),
            _ => Err(Error::NotInSubfield(x.0)),
        }
    }
}
