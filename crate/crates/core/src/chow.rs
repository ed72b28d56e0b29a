//! Truncated graded ring `Q[x, theta] / (deg > n)` on the symmetric product
//! `C_n` of a curve `C` of genus `g`.
//!
//! This covers the Chern calculus of the secant bundle `F_N` (rank `2n`,
//! built from a degree-`d` line bundle `N` on `C`), top-degree intersection
//! numbers via the Poincare formula `x^{n-m} theta^m = g!/(g-m)!`, and the
//! arithmetic genus of the one-dimensional degeneracy locus
//! `2 - 2 p_a = (2 - n) c_n(F) + c_{n-1}(F) [c_1(C_n) - c_1(F)]`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChowError {
    #[error("graded classes truncated at different degrees ({0} vs {1})")]
    BoundMismatch(u32, u32),
    #[error("closed-form Chern class c_{k} of F_N is only available for k = n-1 or n (n = {n})")]
    UnsupportedChernIndex { k: u32, n: u32 },
    #[error("symmetric power n must be at least 1")]
    ZeroSymmetricPower,
    #[error("closed form for the (4,4)-curve holds for r >= 5, got r = {0}")]
    ClosedFormRange(u32),
    #[error("expected an integer, got {0}")]
    NonIntegral(BigRational),
}

/// A class `sum c_{a,b} x^a theta^b` with `a + b <= bound`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GradedClass {
    bound: u32,
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl GradedClass {
    pub fn zero(bound: u32) -> Self {
        GradedClass {
            bound,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(value: BigRational, bound: u32) -> Self {
        GradedClass::monomial(0, 0, value, bound)
    }

    pub fn one(bound: u32) -> Self {
        GradedClass::constant(BigRational::one(), bound)
    }

    /// `coeff * x^a theta^b`, or zero if `a + b` exceeds the bound.
    pub fn monomial(a: u32, b: u32, coeff: BigRational, bound: u32) -> Self {
        let mut c = GradedClass::zero(bound);
        c.add_term(a, b, coeff);
        c
    }

    pub fn x(bound: u32) -> Self {
        GradedClass::monomial(1, 0, BigRational::one(), bound)
    }

    pub fn theta(bound: u32) -> Self {
        GradedClass::monomial(0, 1, BigRational::one(), bound)
    }

    /// `a x + b theta`.
    pub fn linear(a: impl Into<BigInt>, b: impl Into<BigInt>, bound: u32) -> Self {
        let mut c = GradedClass::zero(bound);
        c.add_term(1, 0, BigRational::from_integer(a.into()));
        c.add_term(0, 1, BigRational::from_integer(b.into()));
        c
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `x^a theta^b`.
    pub fn coeff(&self, a: u32, b: u32) -> BigRational {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Non-zero terms in `(x exponent, theta exponent)` order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &BigRational)> {
        self.terms.iter().map(|(&(a, b), c)| (a, b, c))
    }

    fn add_term(&mut self, a: u32, b: u32, coeff: BigRational) {
        if a + b > self.bound || coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry((a, b)).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    /// The homogeneous component of total degree `k`.
    pub fn degree_part(&self, k: u32) -> GradedClass {
        GradedClass {
            bound: self.bound,
            terms: self
                .terms
                .iter()
                .filter(|(&(a, b), _)| a + b == k)
                .map(|(&m, c)| (m, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &BigRational) -> GradedClass {
        let mut out = GradedClass::zero(self.bound);
        for (&(a, b), c) in &self.terms {
            out.add_term(a, b, c * s);
        }
        out
    }

    pub fn checked_add(&self, other: &GradedClass) -> Result<GradedClass, ChowError> {
        self.same_bound(other)?;
        let mut out = self.clone();
        for (&(a, b), c) in &other.terms {
            out.add_term(a, b, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &GradedClass) -> Result<GradedClass, ChowError> {
        self.checked_add(&-other)
    }

    /// Polynomial product, discarding everything above the bound.
    pub fn checked_mul(&self, other: &GradedClass) -> Result<GradedClass, ChowError> {
        self.same_bound(other)?;
        let mut out = GradedClass::zero(self.bound);
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &other.terms {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        Ok(out)
    }

    fn same_bound(&self, other: &GradedClass) -> Result<(), ChowError> {
        if self.bound != other.bound {
            return Err(ChowError::BoundMismatch(self.bound, other.bound));
        }
        Ok(())
    }
}

impl Neg for &GradedClass {
    type Output = GradedClass;

    fn neg(self) -> GradedClass {
        self.scale(&-BigRational::one())
    }
}

// Operator forms panic on mismatched bounds; use the checked_* methods when
// the bounds are not known to agree.
impl Add for &GradedClass {
    type Output = GradedClass;

    fn add(self, rhs: &GradedClass) -> GradedClass {
        self.checked_add(rhs).expect("graded class bounds must agree")
    }
}

impl Sub for &GradedClass {
    type Output = GradedClass;

    fn sub(self, rhs: &GradedClass) -> GradedClass {
        self.checked_sub(rhs).expect("graded class bounds must agree")
    }
}

impl Mul for &GradedClass {
    type Output = GradedClass;

    fn mul(self, rhs: &GradedClass) -> GradedClass {
        self.checked_mul(rhs).expect("graded class bounds must agree")
    }
}

impl fmt::Debug for GradedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (deg <= {})", self.bound)
    }
}

impl fmt::Display for GradedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&(a, b), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            match a {
                0 => {}
                1 => write!(f, "*x")?,
                _ => write!(f, "*x^{a}")?,
            }
            match b {
                0 => {}
                1 => write!(f, "*theta")?,
                _ => write!(f, "*theta^{b}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    x: u32,
    theta: u32,
    coeff: String,
}

/// JSON form is `[{"x": a, "theta": b, "coeff": "p/q"}, ...]`. The bound is
/// not part of the wire format; deserialized classes take the smallest bound
/// covering their terms.
impl Serialize for GradedClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|(&(x, theta), c)| TermRepr {
                x,
                theta,
                coeff: c.to_string(),
            })
            .collect();
        terms.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GradedClass {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw: Vec<TermRepr> = Vec::deserialize(deserializer)?;
        let bound = raw.iter().map(|t| t.x + t.theta).max().unwrap_or(0);
        let mut out = GradedClass::zero(bound);
        for t in raw {
            let c: BigRational = t
                .coeff
                .parse()
                .map_err(|_| D::Error::custom(format!("bad rational {:?}", t.coeff)))?;
            out.add_term(t.x, t.theta, c);
        }
        Ok(out)
    }
}

/// Genus `g` of `C`, symmetric power `n`, and degree `d` of `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BundleData {
    pub g: u32,
    pub n: u32,
    pub d: i64,
}

impl BundleData {
    pub fn new(g: u32, n: u32, d: i64) -> Result<Self, ChowError> {
        if n == 0 {
            return Err(ChowError::ZeroSymmetricPower);
        }
        Ok(BundleData { g, n, d })
    }

    /// Rank of `F_N`.
    pub fn rank(&self) -> u32 {
        2 * self.n
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn rational(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Binomial coefficient `C(m, i)` for any integer `m`: the falling factorial
/// `m (m-1) ... (m-i+1) / i!`. This is zero for `0 <= m < i`.
pub fn ext_binomial(m: i64, i: u32) -> BigInt {
    let falling = (0..i64::from(i)).fold(BigInt::one(), |acc, j| acc * (m - j));
    let (q, r) = falling.div_rem(&factorial(i));
    debug_assert!(r.is_zero());
    q
}

/// `ch(F_N) = d + 1 - g + (2n + g - 1 - d + 4 theta) e^{-2x}`, truncated at
/// degree `n`.
pub fn chern_character_fn(b: &BundleData) -> GradedClass {
    let n = b.n;
    let g = i64::from(b.g);
    let mut ch = GradedClass::constant(rational(b.d + 1 - g), n);
    let mult = rational(2 * i64::from(n) + g - 1 - b.d);
    for k in 0..=n {
        // (-2x)^k / k!
        let ek = BigRational::new(BigInt::from(-2).pow(k), factorial(k));
        ch.add_term(k, 0, &mult * &ek);
        ch.add_term(k, 1, &ek * rational(4));
    }
    ch
}

/// Total Chern class components `c_0..=c_bound` from a Chern character,
/// through Newton's identities.
///
/// With power sums `p_k = k! ch_k`, `k c_k = sum_{i=1}^k (-1)^{i-1} p_i c_{k-i}`.
/// The rank (degree-0 part of `ch`) does not enter.
pub fn chern_classes_from_character(ch: &GradedClass) -> Vec<GradedClass> {
    let bound = ch.bound();
    let power_sums: Vec<GradedClass> = (0..=bound)
        .map(|k| ch.degree_part(k).scale(&rational(factorial(k))))
        .collect();
    let mut c: Vec<GradedClass> = vec![GradedClass::one(bound)];
    for k in 1..=bound {
        let mut acc = GradedClass::zero(bound);
        for i in 1..=k {
            let term = &power_sums[i as usize] * &c[(k - i) as usize];
            acc = if i % 2 == 1 { &acc + &term } else { &acc - &term };
        }
        c.push(acc.scale(&BigRational::new(BigInt::one(), BigInt::from(k))));
    }
    c
}

/// `c_k(F_N) = sum_{i=0}^{k} C(d + k - 2n - g, i) 2^{2k-i} / (k-i)! x^i theta^{k-i}`
/// for `k` in `{n-1, n}`.
pub fn chern_fn_closed_form(b: &BundleData, k: u32) -> Result<GradedClass, ChowError> {
    let n = b.n;
    if k != n && k + 1 != n {
        return Err(ChowError::UnsupportedChernIndex { k, n });
    }
    let top = b.d + i64::from(k) - 2 * i64::from(n) - i64::from(b.g);
    let mut out = GradedClass::zero(n);
    for i in 0..=k {
        let coeff = BigRational::new(
            ext_binomial(top, i) * BigInt::from(2).pow(2 * k - i),
            factorial(k - i),
        );
        out.add_term(i, k - i, coeff);
    }
    Ok(out)
}

/// `c_1(C_n) = -(g - n - 1) x - theta`, in the ring truncated at degree `n`.
pub fn c1_symmetric_product(g: i64, n: u32) -> GradedClass {
    GradedClass::linear(-(g - i64::from(n) - 1), -1, n)
}

/// Degree of the top-degree part of `c` on `C_n`, where `C` has genus `g`:
/// `x^{n-m} theta^m` integrates to `g!/(g-m)!` for `m <= g` and to 0 otherwise.
pub fn intersection_eval(c: &GradedClass, g: u32) -> BigRational {
    let n = c.bound();
    c.terms()
        .filter(|&(a, b, _)| a + b == n && b <= g)
        .map(|(_, m, coeff)| coeff * rational(factorial(g) / factorial(g - m)))
        .sum()
}

/// `c_1(C_n) - c_1(F_N)`, built from the two classes rather than a printed
/// coefficient. Equals `(g + 5n - 2d - 1) x - 5 theta`.
pub fn degeneracy_bracket(b: &BundleData) -> GradedClass {
    let c1_x = c1_symmetric_product(i64::from(b.g), b.n);
    let c1_f = chern_character_fn(b).degree_part(1);
    &c1_x - &c1_f
}

/// `2 - 2 p_a(Z)` for the degeneracy locus, as an intersection number.
pub fn degeneracy_euler_term(b: &BundleData) -> BigRational {
    let cn = chern_fn_closed_form(b, b.n).expect("k = n is supported");
    let cn1 = chern_fn_closed_form(b, b.n - 1).expect("k = n - 1 is supported");
    let two_minus_n = rational(2 - i64::from(b.n));
    let class = &cn.scale(&two_minus_n) + &(&cn1 * &degeneracy_bracket(b));
    intersection_eval(&class, b.g)
}

/// Arithmetic genus of the degeneracy locus `Z`.
///
/// Assumes `Z` has the expected dimension 1 and the next degeneracy locus is
/// empty; neither is checked.
pub fn degeneracy_genus(b: &BundleData) -> BigRational {
    let euler = degeneracy_euler_term(b);
    BigRational::one() - euler / rational(2)
}

/// `16 r^5 - 64 r^4 + 508 r^3 - 1856 r^2 + 3133 r - 2028`.
pub fn genus_44_quintic(r: u32) -> BigInt {
    let r = BigInt::from(r);
    [16i64, -64, 508, -1856, 3133, -2028]
        .iter()
        .fold(BigInt::zero(), |acc, &c| acc * &r + c)
}

/// Genus of the degeneracy locus for a smooth (4,4)-curve (`g = 9`,
/// `n = 2r`, `d = 4r + 4`): `p_a = 1 + 4^{r+3} P(r) / 6`.
pub fn closed_form_genus_44(r: u32) -> Result<BigInt, ChowError> {
    if r < 5 {
        return Err(ChowError::ClosedFormRange(r));
    }
    let numer = BigInt::from(4).pow(r + 3) * genus_44_quintic(r);
    let (q, rem) = numer.div_rem(&BigInt::from(6));
    if !rem.is_zero() {
        return Err(ChowError::NonIntegral(BigRational::new(numer, BigInt::from(6))));
    }
    Ok(q + 1)
}

/// Bundle data for the (4,4)-curve specialization at `r`.
pub fn bundle_44(r: u32) -> BundleData {
    BundleData {
        g: 9,
        n: 2 * r,
        d: 4 * i64::from(r) + 4,
    }
}

/// Convert an exact rational that should be an integer.
pub fn to_integer(q: &BigRational) -> Result<BigInt, ChowError> {
    if q.is_integer() {
        Ok(q.to_integer())
    } else {
        Err(ChowError::NonIntegral(q.clone()))
    }
}
