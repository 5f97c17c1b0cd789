//! Truncated formal power series with exact integer coefficients.
//!
//! [`UniSeries`] is dense in `x`. [`BiSeries`] is dense in `x` and sparse in
//! `y`, since the `y`-exponents that show up (binomials `C(j, k)`) are few and
//! can be large. Arithmetic is exact modulo `x^(N+1)`; when two operands carry
//! different truncation orders the smaller one wins.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Truncation order used when the caller does not pick one.
pub const DEFAULT_TRUNC: usize = 24;

/// `c_0 + c_1 x + ... + c_N x^N + O(x^(N+1))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniSeries {
    coeffs: Vec<BigInt>,
}

impl UniSeries {
    pub fn zero(trunc: usize) -> Self {
        UniSeries {
            coeffs: vec![BigInt::zero(); trunc + 1],
        }
    }

    pub fn one(trunc: usize) -> Self {
        Self::monomial(BigInt::one(), 0, trunc)
    }

    /// `c * x^deg`, which is zero if `deg > trunc`.
    pub fn monomial(c: BigInt, deg: usize, trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        if deg <= trunc {
            s.coeffs[deg] = c;
        }
        s
    }

    /// Takes the first `trunc + 1` coefficients, padding with zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>, trunc: usize) -> Self {
        coeffs.resize(trunc + 1, BigInt::zero());
        UniSeries { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64], trunc: usize) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect(), trunc)
    }

    pub fn from_counts(counts: &[BigUint], trunc: usize) -> Self {
        Self::from_coeffs(
            counts.iter().map(|c| BigInt::from(c.clone())).collect(),
            trunc,
        )
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^n`; asking past the truncation order is an error,
    /// never a silent zero.
    pub fn coeff(&self, n: usize) -> Result<&BigInt> {
        self.coeffs.get(n).ok_or(Error::OutOfRange {
            index: n,
            trunc: self.trunc(),
        })
    }

    /// Coefficients as nonnegative counts; `None` if any is negative.
    pub fn as_counts(&self) -> Option<Vec<BigUint>> {
        self.coeffs.iter().map(|c| c.to_biguint()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Same series at a lower truncation order.
    pub fn truncate(&self, trunc: usize) -> Self {
        Self::from_coeffs(
            self.coeffs[..=trunc.min(self.trunc())].to_vec(),
            trunc.min(self.trunc()),
        )
    }

    /// Multiplies by `x^d`.
    pub fn shift(&self, d: usize) -> Self {
        let n = self.trunc();
        let mut out = Self::zero(n);
        for i in 0..=n.saturating_sub(d) {
            if i + d <= n {
                out.coeffs[i + d] = self.coeffs[i].clone();
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        UniSeries {
            coeffs: self.coeffs.iter().map(|v| v * c).collect(),
        }
    }

    /// Multiplicative inverse modulo `x^(N+1)`, solved coefficient by
    /// coefficient. The constant term must be `1` or `-1`.
    pub fn reciprocal(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.abs() != BigInt::one() {
            return Err(Error::NonUnitConstant);
        }
        let n = self.trunc();
        let mut b = vec![BigInt::zero(); n + 1];
        b[0] = a0.clone();
        for m in 1..=n {
            let mut acc = BigInt::zero();
            for i in 1..=m {
                if !self.coeffs[i].is_zero() {
                    acc += &self.coeffs[i] * &b[m - i];
                }
            }
            // a0 is its own inverse
            b[m] = -(acc * a0);
        }
        Ok(UniSeries { coeffs: b })
    }

    /// `self / other`, defined as `self * other^(-1)`.
    pub fn div(&self, other: &UniSeries) -> Result<Self> {
        Ok(self * &other.reciprocal()?)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut result = Self::one(self.trunc());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// JSON array of decimal strings, so coefficients of any size survive.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.coeffs
                .iter()
                .map(|c| Value::String(c.to_string()))
                .collect(),
        )
    }
}

/// The polynomial `1 - x - x^2 - ... - x^k`; `k = 0` gives the constant 1.
pub fn geom_denominator(k: usize, trunc: usize) -> UniSeries {
    let mut s = UniSeries::one(trunc);
    for j in 1..=k.min(trunc) {
        s.coeffs[j] = BigInt::from(-1);
    }
    s
}

fn write_term(
    f: &mut fmt::Formatter<'_>,
    first: &mut bool,
    c: &BigInt,
    monomial: &str,
) -> fmt::Result {
    let mag = c.abs();
    if *first {
        if c.is_negative() {
            f.write_str("-")?;
        }
    } else if c.is_negative() {
        f.write_str(" - ")?;
    } else {
        f.write_str(" + ")?;
    }
    *first = false;
    if monomial.is_empty() {
        write!(f, "{mag}")
    } else {
        write!(f, "{mag}*{monomial}")
    }
}

fn x_power(n: usize) -> String {
    match n {
        0 => String::new(),
        1 => "x".to_string(),
        _ => format!("x^{n}"),
    }
}

impl fmt::Display for UniSeries {
    /// `1 + 2*x - 3*x^2 + O(x^5)`; zero coefficients are skipped.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                write_term(f, &mut first, c, &x_power(n))?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(x^{})", self.trunc() + 1)
    }
}

impl Add for &UniSeries {
    type Output = UniSeries;

    fn add(self, rhs: &UniSeries) -> UniSeries {
        let n = self.trunc().min(rhs.trunc());
        UniSeries {
            coeffs: (0..=n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect(),
        }
    }
}

impl Sub for &UniSeries {
    type Output = UniSeries;

    fn sub(self, rhs: &UniSeries) -> UniSeries {
        let n = self.trunc().min(rhs.trunc());
        UniSeries {
            coeffs: (0..=n).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect(),
        }
    }
}

impl Mul for &UniSeries {
    type Output = UniSeries;

    fn mul(self, rhs: &UniSeries) -> UniSeries {
        let n = self.trunc().min(rhs.trunc());
        let mut out = vec![BigInt::zero(); n + 1];
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        UniSeries { coeffs: out }
    }
}

impl Neg for &UniSeries {
    type Output = UniSeries;

    fn neg(self) -> UniSeries {
        UniSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: &$ty) -> $ty {
                (&self).$m(rhs)
            }
        }
    )*};
}

forward_owned!(UniSeries, Add add, Sub sub, Mul mul);

type Row = BTreeMap<BigUint, BigInt>;

/// Series in `x` truncated at `x^N`, each `x`-degree holding a sparse
/// polynomial in `y`. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiSeries {
    rows: Vec<Row>,
}

fn row_add_term(row: &mut Row, exp: BigUint, c: BigInt) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match row.entry(exp) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

fn row_mul_into(out: &mut Row, a: &Row, b: &Row) {
    for (ea, ca) in a {
        for (eb, cb) in b {
            row_add_term(out, ea + eb, ca * cb);
        }
    }
}

impl BiSeries {
    pub fn zero(trunc: usize) -> Self {
        BiSeries {
            rows: vec![Row::new(); trunc + 1],
        }
    }

    pub fn one(trunc: usize) -> Self {
        Self::monomial(BigInt::one(), 0, BigUint::ZERO, trunc)
    }

    /// `c * x^xdeg * y^yexp`, zero if `xdeg > trunc`.
    pub fn monomial(c: BigInt, xdeg: usize, yexp: BigUint, trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        if xdeg <= trunc {
            row_add_term(&mut s.rows[xdeg], yexp, c);
        }
        s
    }

    /// Univariate series viewed as having no `y`.
    pub fn from_uni(u: &UniSeries) -> Self {
        let mut s = Self::zero(u.trunc());
        for (n, c) in u.coeffs().iter().enumerate() {
            row_add_term(&mut s.rows[n], BigUint::ZERO, c.clone());
        }
        s
    }

    pub fn trunc(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn add_term(&mut self, xdeg: usize, yexp: BigUint, c: BigInt) {
        if xdeg <= self.trunc() {
            row_add_term(&mut self.rows[xdeg], yexp, c);
        }
    }

    /// The sparse `y`-polynomial multiplying `x^n`.
    pub fn row(&self, n: usize) -> Result<&BTreeMap<BigUint, BigInt>> {
        self.rows.get(n).ok_or(Error::OutOfRange {
            index: n,
            trunc: self.trunc(),
        })
    }

    /// Coefficient of `x^n y^r`; absent entries are zero.
    pub fn coeff(&self, n: usize, r: &BigUint) -> Result<BigInt> {
        Ok(self.row(n)?.get(r).cloned().unwrap_or_default())
    }

    /// Every stored term as `(x-degree, y-exponent, coefficient)`, ordered by
    /// degree then exponent.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigUint, &BigInt)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(n, row)| row.iter().map(move |(e, c)| (n, e, c)))
    }

    /// Substitutes `y = 1`.
    pub fn at_y_one(&self) -> UniSeries {
        UniSeries {
            coeffs: self.rows.iter().map(|row| row.values().sum()).collect(),
        }
    }

    /// Inverse modulo `x^(N+1)`. The `x^0` part must be exactly `1` or `-1`
    /// (a unit constant with no `y` terms); otherwise the inverse is not a
    /// polynomial in `y` at each degree.
    pub fn reciprocal(&self) -> Result<Self> {
        let head = &self.rows[0];
        let unit = match (head.len(), head.get(&BigUint::ZERO)) {
            (1, Some(c)) if c.abs() == BigInt::one() => c.clone(),
            _ => return Err(Error::NonUnitConstant),
        };
        let n = self.trunc();
        let mut b: Vec<Row> = vec![Row::new(); n + 1];
        b[0].insert(BigUint::ZERO, unit.clone());
        for m in 1..=n {
            let mut acc = Row::new();
            for i in 1..=m {
                if !self.rows[i].is_empty() && !b[m - i].is_empty() {
                    row_mul_into(&mut acc, &self.rows[i], &b[m - i]);
                }
            }
            let neg_unit = -&unit;
            b[m] = acc.into_iter().map(|(e, c)| (e, c * &neg_unit)).collect();
        }
        Ok(BiSeries { rows: b })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut result = Self::one(self.trunc());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// JSON: one array per `x`-degree of `{"y_exp", "coeff"}` objects, both as
    /// decimal strings.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    Value::Array(
                        row.iter()
                            .map(|(e, c)| json!({"y_exp": e.to_string(), "coeff": c.to_string()}))
                            .collect(),
                    )
                })
                .collect(),
        )
    }
}

impl fmt::Display for BiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, e, c) in self.terms() {
            let mut mono = x_power(n);
            if !e.is_zero() {
                if !mono.is_empty() {
                    mono.push('*');
                }
                if e.is_one() {
                    mono.push('y');
                } else {
                    mono.push_str(&format!("y^{e}"));
                }
            }
            write_term(f, &mut first, c, &mono)?;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(x^{})", self.trunc() + 1)
    }
}

impl Add for &BiSeries {
    type Output = BiSeries;

    fn add(self, rhs: &BiSeries) -> BiSeries {
        let n = self.trunc().min(rhs.trunc());
        let mut rows = self.rows[..=n].to_vec();
        for (row, other) in rows.iter_mut().zip(&rhs.rows) {
            for (e, c) in other {
                row_add_term(row, e.clone(), c.clone());
            }
        }
        BiSeries { rows }
    }
}

impl Neg for &BiSeries {
    type Output = BiSeries;

    fn neg(self) -> BiSeries {
        BiSeries {
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(|(e, c)| (e.clone(), -c)).collect())
                .collect(),
        }
    }
}

impl Sub for &BiSeries {
    type Output = BiSeries;

    fn sub(self, rhs: &BiSeries) -> BiSeries {
        self + &(-rhs)
    }
}

impl Mul for &BiSeries {
    type Output = BiSeries;

    fn mul(self, rhs: &BiSeries) -> BiSeries {
        let n = self.trunc().min(rhs.trunc());
        let mut rows = vec![Row::new(); n + 1];
        for i in 0..=n {
            if self.rows[i].is_empty() {
                continue;
            }
            for j in 0..=n - i {
                if !rhs.rows[j].is_empty() {
                    row_mul_into(&mut rows[i + j], &self.rows[i], &rhs.rows[j]);
                }
            }
        }
        BiSeries { rows }
    }
}

forward_owned!(BiSeries, Add add, Sub sub, Mul mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibonacci::fib_k;
    use proptest::prelude::*;

    fn uni(c: &[i64], n: usize) -> UniSeries {
        UniSeries::from_i64s(c, n)
    }

    #[test]
    fn geometric_identity() {
        let n = 10;
        let one_minus_x = uni(&[1, -1], n);
        let geo = UniSeries::from_coeffs(vec![BigInt::one(); n + 1], n);
        assert_eq!(&one_minus_x * &geo, UniSeries::one(n));
    }

    #[test]
    fn monomial_products() {
        let x = UniSeries::monomial(BigInt::one(), 1, 6);
        assert_eq!(&x * &x, UniSeries::monomial(BigInt::one(), 2, 6));
        let a = BiSeries::monomial(BigInt::one(), 1, BigUint::from(1u32), 6);
        let b = BiSeries::monomial(BigInt::one(), 1, BigUint::from(2u32), 6);
        assert_eq!(
            &a * &b,
            BiSeries::monomial(BigInt::one(), 2, BigUint::from(3u32), 6)
        );
    }

    #[test]
    fn fibonacci_reciprocal() {
        let r = geom_denominator(2, 20).reciprocal().unwrap();
        for n in 0..=20 {
            assert_eq!(r.coeff(n).unwrap(), &BigInt::from(fib_k(2, n as i64 + 1)));
        }
        let gf = r.shift(1);
        for n in 0..=20 {
            assert_eq!(gf.coeff(n).unwrap(), &BigInt::from(fib_k(2, n as i64)));
        }
    }

    #[test]
    fn reciprocal_of_one_and_errors() {
        assert_eq!(UniSeries::one(5).reciprocal().unwrap(), UniSeries::one(5));
        assert_eq!(uni(&[2, 1], 5).reciprocal(), Err(Error::NonUnitConstant));
        assert_eq!(uni(&[0, 1], 5).reciprocal(), Err(Error::NonUnitConstant));
        let neg = uni(&[-1, 1], 5).reciprocal().unwrap();
        assert_eq!(neg, uni(&[-1, -1, -1, -1, -1, -1], 5));
        let bi = BiSeries::from_uni(&uni(&[1], 3))
            + BiSeries::monomial(BigInt::one(), 0, BigUint::from(1u32), 3);
        assert_eq!(bi.reciprocal(), Err(Error::NonUnitConstant));
    }

    #[test]
    fn coefficient_range() {
        let r = uni(&[1, -1], 7).reciprocal().unwrap();
        assert_eq!(r.coeff(7).unwrap(), &BigInt::one());
        assert_eq!(r.coeff(8), Err(Error::OutOfRange { index: 8, trunc: 7 }));
        let b = BiSeries::one(3);
        assert!(b.coeff(4, &BigUint::ZERO).is_err());
        assert_eq!(b.coeff(2, &BigUint::from(99u32)).unwrap(), BigInt::zero());
    }

    #[test]
    fn geom_denominators() {
        assert_eq!(geom_denominator(0, 5), UniSeries::one(5));
        assert_eq!(geom_denominator(1, 5), uni(&[1, -1], 5));
        assert_eq!(geom_denominator(3, 5), uni(&[1, -1, -1, -1], 5));
        assert_eq!(geom_denominator(30, 3), uni(&[1, -1, -1, -1], 3));
    }

    #[test]
    fn bivariate_tiling_reciprocal() {
        // 1 - sum_j x^j y^C(j,3), truncated at x^4
        let n = 4;
        let mut d = BiSeries::one(n);
        for j in 1..=n {
            d.add_term(j, crate::binomial(j, 3), BigInt::from(-1));
        }
        let r = d.reciprocal().unwrap();
        assert_eq!(r.coeff(3, &BigUint::from(1u32)).unwrap(), BigInt::from(1));
        assert_eq!(r.coeff(3, &BigUint::ZERO).unwrap(), BigInt::from(3));
        assert_eq!((&d * &r), BiSeries::one(n));
    }

    #[test]
    fn mismatched_truncation_uses_minimum() {
        let a = uni(&[1, 1, 1], 2);
        let b = uni(&[1, 1, 1, 1, 1], 4);
        assert_eq!((&a + &b).trunc(), 2);
        assert_eq!((&a * &b).trunc(), 2);
        assert_eq!((&b - &a).trunc(), 2);
    }

    #[test]
    fn rendering() {
        assert_eq!(uni(&[1, 2, -3], 4).to_string(), "1 + 2*x - 3*x^2 + O(x^5)");
        assert_eq!(uni(&[0, -1], 2).to_string(), "-1*x + O(x^3)");
        assert_eq!(UniSeries::zero(1).to_string(), "0 + O(x^2)");
        let b = BiSeries::monomial(BigInt::from(2), 1, BigUint::from(3u32), 2);
        assert_eq!(b.to_string(), "2*x*y^3 + O(x^3)");
        assert_eq!(
            uni(&[5, 0, 7], 2).to_json(),
            serde_json::json!(["5", "0", "7"])
        );
        assert_eq!(
            b.to_json(),
            serde_json::json!([[], [{"y_exp": "3", "coeff": "2"}], []])
        );
    }

    #[test]
    fn huge_y_exponents_stay_exact() {
        let big: BigUint = "123456789012345678901234567890".parse().unwrap();
        let a = BiSeries::monomial(BigInt::one(), 1, big.clone(), 4);
        let sq = &a * &a;
        assert_eq!(sq.coeff(2, &(&big + &big)).unwrap(), BigInt::one());
    }

    #[test]
    fn bivariate_at_y_one() {
        let n = 12;
        let mut d = BiSeries::one(n);
        for j in 1..=n {
            d.add_term(j, crate::binomial(j, 2), BigInt::from(-1));
        }
        let r = d.reciprocal().unwrap().at_y_one();
        let expected = geom_denominator(n, n).reciprocal().unwrap();
        assert_eq!(r, expected);
        for m in 1..=n {
            assert_eq!(r.coeff(m).unwrap(), &BigInt::from(1u64 << (m - 1)));
        }
    }

    fn poly_strategy(n: usize) -> impl Strategy<Value = UniSeries> {
        proptest::collection::vec(-20i64..20, n + 1).prop_map(move |v| UniSeries::from_i64s(&v, n))
    }

    fn unit_poly_strategy(n: usize) -> impl Strategy<Value = UniSeries> {
        (
            prop_oneof![Just(1i64), Just(-1i64)],
            proptest::collection::vec(-20i64..20, n),
        )
            .prop_map(move |(c0, rest)| {
                let mut v = vec![c0];
                v.extend(rest);
                UniSeries::from_i64s(&v, n)
            })
    }

    fn bi_strategy(n: usize) -> impl Strategy<Value = BiSeries> {
        proptest::collection::vec((0..=n, 0u32..40, -5i64..5), 0..12).prop_map(move |terms| {
            let mut s = BiSeries::zero(n);
            for (d, e, c) in terms {
                s.add_term(d, BigUint::from(e), BigInt::from(c));
            }
            s
        })
    }

    proptest! {
        #[test]
        fn reciprocal_is_two_sided_inverse(a in unit_poly_strategy(30)) {
            let r = a.reciprocal().unwrap();
            prop_assert_eq!(&a * &r, UniSeries::one(30));
            prop_assert_eq!(&r * &a, UniSeries::one(30));
        }

        #[test]
        fn ring_laws(a in poly_strategy(30), b in poly_strategy(30), c in poly_strategy(30)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
        }

        #[test]
        fn bivariate_ring_laws(a in bi_strategy(8), b in bi_strategy(8), c in bi_strategy(8)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!((&a * &b).at_y_one(), &a.at_y_one() * &b.at_y_one());
            prop_assert!((&a - &a).terms().next().is_none());
        }

        #[test]
        fn bivariate_reciprocal(b in bi_strategy(8)) {
            let mut a = b.clone();
            // force a unit constant row
            a.rows[0].clear();
            a.rows[0].insert(BigUint::ZERO, BigInt::one());
            let r = a.reciprocal().unwrap();
            prop_assert_eq!(&a * &r, BiSeries::one(8));
        }
    }
}
