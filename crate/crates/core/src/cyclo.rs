//! Exact arithmetic in `Z[xi]` for `xi` a primitive `l`-th root of
//! unity, in the length-`l` cyclic representation: exponents are
//! reduced mod `l` but the relation `sum_t xi^t = 0` is not applied.
//! Two coefficient vectors represent the same ring element exactly when
//! they differ by a constant vector.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CycloError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("unit index {0} out of range 1..={1}")]
    UnitIndexOutOfRange(u64, u64),
    #[error("empty index set")]
    EmptyIndexSet,
    #[error("coefficient vector length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
}

/// The prime `l = 2r + 1` and the derived `r`. The `regular` flag is
/// caller-asserted metadata; regularity is not checked here.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeContext {
    pub ell: u64,
    pub r: u64,
    pub regular: bool,
}

impl PrimeContext {
    pub fn new(ell: u64) -> Result<Self, CycloError> {
        if ell < 3 || ell % 2 == 0 || !is_prime(ell) {
            return Err(CycloError::NotOddPrime(ell));
        }
        Ok(PrimeContext { ell, r: (ell - 1) / 2, regular: true })
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Integer coefficient vector indexed by `t = 0..=2r`, the coefficient
/// of `xi^t` in the cyclic expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloElem {
    coeffs: Vec<BigInt>,
}

impl CycloElem {
    pub fn zero(ell: u64) -> Self {
        CycloElem { coeffs: vec![BigInt::zero(); ell as usize] }
    }

    pub fn one(ell: u64) -> Self {
        Self::xi_pow(ell, 0)
    }

    /// The basis element `xi^t`.
    pub fn xi_pow(ell: u64, t: u64) -> Self {
        let mut coeffs = vec![BigInt::zero(); ell as usize];
        coeffs[(t % ell) as usize] = BigInt::one();
        CycloElem { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        CycloElem { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn ell(&self) -> u64 {
        self.coeffs.len() as u64
    }

    pub fn add(&self, other: &CycloElem) -> Result<CycloElem, CycloError> {
        self.check_len(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycloElem { coeffs })
    }

    pub fn sub(&self, other: &CycloElem) -> Result<CycloElem, CycloError> {
        self.check_len(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CycloElem { coeffs })
    }

    pub fn scale(&self, k: &BigInt) -> CycloElem {
        CycloElem { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// Cyclic convolution: exponent sums reduced mod `l`.
    pub fn mul(&self, other: &CycloElem) -> Result<CycloElem, CycloError> {
        self.check_len(other)?;
        let n = self.coeffs.len();
        let mut coeffs = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[(i + j) % n] += a * b;
                }
            }
        }
        Ok(CycloElem { coeffs })
    }

    /// True iff the two vectors represent the same element of `Z[xi]`,
    /// i.e. their difference is a constant vector (a multiple of the
    /// cyclotomic polynomial in the cyclic representation).
    pub fn same_ring_element(&self, other: &CycloElem) -> Result<bool, CycloError> {
        self.check_len(other)?;
        let d0 = &self.coeffs[0] - &other.coeffs[0];
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .all(|(a, b)| a - b == d0))
    }

    fn check_len(&self, other: &CycloElem) -> Result<(), CycloError> {
        if self.coeffs.len() == other.coeffs.len() {
            Ok(())
        } else {
            Err(CycloError::LengthMismatch(self.coeffs.len(), other.coeffs.len()))
        }
    }
}

/// The cyclotomic unit `epsilon_i = 1 - xi^i`.
pub fn epsilon(ctx: &PrimeContext, i: u64) -> Result<CycloElem, CycloError> {
    if i < 1 || i > ctx.r {
        return Err(CycloError::UnitIndexOutOfRange(i, ctx.r));
    }
    let mut e = CycloElem::zero(ctx.ell);
    e.coeffs[0] = BigInt::one();
    e.coeffs[i as usize] = -BigInt::one();
    Ok(e)
}

/// Coefficients `c_t(I)` of the cyclic expansion of the product
/// `prod_{i in I} (1 - xi^i)`.
pub fn c_coeffs(ctx: &PrimeContext, indices: &[u64]) -> Result<Vec<BigInt>, CycloError> {
    if indices.is_empty() {
        return Err(CycloError::EmptyIndexSet);
    }
    let mut acc = CycloElem::one(ctx.ell);
    for &i in indices {
        acc = acc.mul(&epsilon(ctx, i)?)?;
    }
    Ok(acc.coeffs)
}

/// Least `c >= 0` with `2c = r^2 + r(r+1)/2 mod l`.
pub fn smallest_c(ctx: &PrimeContext) -> u64 {
    let r = ctx.r;
    let target = (r * r + r * (r + 1) / 2) % ctx.ell;
    (0..ctx.ell)
        .find(|c| (2 * c) % ctx.ell == target)
        .expect("2 is invertible mod an odd prime")
}

/// Checks `l = (-1)^r lambda^2` in `Z[xi]` for
/// `lambda = xi^c eps_1 ... eps_r`, with both sides compared in the
/// cyclic representation up to a constant vector.
pub fn lambda_check(ctx: &PrimeContext) -> bool {
    let c = smallest_c(ctx);
    let mut lambda = CycloElem::xi_pow(ctx.ell, c);
    for i in 1..=ctx.r {
        lambda = lambda.mul(&epsilon(ctx, i).unwrap()).unwrap();
    }
    let mut square = lambda.mul(&lambda).unwrap();
    if ctx.r % 2 == 1 {
        square = square.scale(&BigInt::from(-1));
    }
    let ell_elem = CycloElem::one(ctx.ell).scale(&BigInt::from(ctx.ell));
    ell_elem.same_ring_element(&square).unwrap()
}

/// Element of the unit group written as
/// `(-xi)^j * eps_1^{a_1} ... eps_r^{a_r}` with `j` normalized mod `2l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitExp {
    pub ell: u64,
    pub j: u64,
    pub a: Vec<i64>,
}

impl UnitExp {
    pub fn identity(ctx: &PrimeContext) -> Self {
        UnitExp { ell: ctx.ell, j: 0, a: vec![0; ctx.r as usize] }
    }

    pub fn minus_xi(ctx: &PrimeContext) -> Self {
        UnitExp { ell: ctx.ell, j: 1, a: vec![0; ctx.r as usize] }
    }

    pub fn epsilon_unit(ctx: &PrimeContext, i: u64) -> Result<Self, CycloError> {
        if i < 1 || i > ctx.r {
            return Err(CycloError::UnitIndexOutOfRange(i, ctx.r));
        }
        let mut a = vec![0; ctx.r as usize];
        a[(i - 1) as usize] = 1;
        Ok(UnitExp { ell: ctx.ell, j: 0, a })
    }

    pub fn mul(&self, other: &UnitExp) -> Result<UnitExp, CycloError> {
        if self.ell != other.ell || self.a.len() != other.a.len() {
            return Err(CycloError::LengthMismatch(self.a.len(), other.a.len()));
        }
        Ok(UnitExp {
            ell: self.ell,
            j: (self.j + other.j) % (2 * self.ell),
            a: self.a.iter().zip(&other.a).map(|(x, y)| x + y).collect(),
        })
    }

    pub fn inv(&self) -> UnitExp {
        UnitExp {
            ell: self.ell,
            j: (2 * self.ell - self.j) % (2 * self.ell),
            a: self.a.iter().map(|x| -x).collect(),
        }
    }

    pub fn pow(&self, n: i64) -> UnitExp {
        let base = if n < 0 { self.inv() } else { self.clone() };
        let mut out = UnitExp { ell: self.ell, j: 0, a: vec![0; self.a.len()] };
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base).unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(ell: u64) -> PrimeContext {
        PrimeContext::new(ell).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn context_rejects_non_primes() {
        assert!(PrimeContext::new(9).is_err());
        assert!(PrimeContext::new(2).is_err());
        assert!(PrimeContext::new(15).is_err());
        assert_eq!(ctx(7).r, 3);
    }

    #[test]
    fn epsilon_vectors() {
        assert_eq!(epsilon(&ctx(5), 1).unwrap().coeffs(), &ints(&[1, -1, 0, 0, 0])[..]);
        assert_eq!(epsilon(&ctx(5), 2).unwrap().coeffs(), &ints(&[1, 0, -1, 0, 0])[..]);
        assert_eq!(epsilon(&ctx(3), 1).unwrap().coeffs(), &ints(&[1, -1, 0])[..]);
        assert!(epsilon(&ctx(5), 3).is_err());
    }

    #[test]
    fn mul_examples() {
        let c5 = ctx(5);
        let e1 = epsilon(&c5, 1).unwrap();
        let e2 = epsilon(&c5, 2).unwrap();
        assert_eq!(e1.mul(&e2).unwrap().coeffs(), &ints(&[1, -1, -1, 1, 0])[..]);
        let x = CycloElem::from_coeffs(ints(&[3, -1, 4, 0, 2]));
        assert_eq!(x.mul(&CycloElem::one(5)).unwrap(), x);
        let a = CycloElem::xi_pow(5, 3);
        let b = CycloElem::xi_pow(5, 4);
        assert_eq!(a.mul(&b).unwrap(), CycloElem::xi_pow(5, 2));
    }

    #[test]
    fn c_coeffs_examples() {
        assert_eq!(c_coeffs(&ctx(5), &[1]).unwrap(), ints(&[1, -1, 0, 0, 0]));
        assert_eq!(c_coeffs(&ctx(5), &[1, 2]).unwrap(), ints(&[1, -1, -1, 1, 0]));
        assert_eq!(c_coeffs(&ctx(3), &[1]).unwrap(), ints(&[1, -1, 0]));
        assert!(matches!(c_coeffs(&ctx(3), &[]), Err(CycloError::EmptyIndexSet)));
    }

    #[test]
    fn c_coeffs_sum_to_zero() {
        // evaluating at xi = 1 sends every eps_i to 0
        for ell in [3u64, 5, 7, 11] {
            let c = ctx(ell);
            for i in 1..=c.r {
                let sum: BigInt = c_coeffs(&c, &[1, i]).unwrap().into_iter().sum();
                assert!(sum.is_zero());
            }
        }
    }

    #[test]
    fn smallest_c_values() {
        assert_eq!(smallest_c(&ctx(3)), 1);
        assert_eq!(smallest_c(&ctx(5)), 1);
        // exhaustive-scan oracle for l = 7
        let c7 = ctx(7);
        let c = smallest_c(&c7);
        let target = (c7.r * c7.r + c7.r * (c7.r + 1) / 2) % 7;
        assert_eq!((2 * c) % 7, target);
        assert!((0..c).all(|x| (2 * x) % 7 != target));
    }

    #[test]
    fn lambda_check_small_primes() {
        for ell in [3, 5, 7, 11, 13] {
            assert!(lambda_check(&ctx(ell)), "lambda factorization fails at l={ell}");
        }
    }

    #[test]
    fn constant_vector_ambiguity() {
        let c5 = ctx(5);
        let e1 = epsilon(&c5, 1).unwrap();
        let shifted = e1.add(&CycloElem::one(5).scale(&BigInt::from(7)).mul(
            &CycloElem::from_coeffs(ints(&[1, 1, 1, 1, 1])),
        ).unwrap()).unwrap();
        // adding a constant vector never changes ring-element identity
        assert!(e1.same_ring_element(&shifted).unwrap());
        assert!(!e1.same_ring_element(&epsilon(&c5, 2).unwrap()).unwrap());
    }

    #[test]
    fn unit_group_relations() {
        let c5 = ctx(5);
        let x = UnitExp { ell: 5, j: 7, a: vec![2, -1] };
        let id = UnitExp::identity(&c5);
        assert_eq!(x.mul(&id).unwrap(), x);
        assert_eq!(x.mul(&x.inv()).unwrap(), id);
        assert_eq!(UnitExp::minus_xi(&c5).pow(10), id);
    }
}
