//! Exact rational weights and the simple-root geometry built on them.
//!
//! A [`Weight`] is a vector of exact rationals in an ambient Euclidean space
//! with the standard dot product. A [`SimpleBasis`] is an ordered set of
//! simple roots; it provides coroot pairings, dominance, Weyl-chamber
//! reduction and positive-cone membership.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};

/// Exact rational scalar.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"3"`, `"-3/2"`.
pub fn parse_rational(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (!d.is_zero()).then(|| Q::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

/// Converts an exact rational known to be integral.
pub fn to_i64(x: &Q) -> Option<i64> {
    if !x.is_integer() {
        return None;
    }
    i64::try_from(x.to_integer()).ok()
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    coords: Vec<Q>,
}

impl Weight {
    pub fn new(coords: Vec<Q>) -> Self {
        Weight { coords }
    }

    pub fn zero(dim: usize) -> Self {
        Weight::new(vec![Q::zero(); dim])
    }

    /// The standard basis vector `e_{i+1}` (zero-based `i`).
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut w = Weight::zero(dim);
        w.coords[i] = Q::one();
        w
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        Weight::new(xs.iter().map(|&x| q(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &Weight) -> Q {
        assert_eq!(
            self.dim(),
            other.dim(),
            "weights from different ambient spaces"
        );
        self.coords
            .iter()
            .zip(&other.coords)
            .fold(Q::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn norm2(&self) -> Q {
        self.dot(self)
    }

    pub fn scale(&self, c: &Q) -> Weight {
        Weight::new(self.coords.iter().map(|x| x * c).collect())
    }

    pub fn scale_int(&self, c: i64) -> Weight {
        self.scale(&q(c))
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: &Q, other: &Weight) -> Weight {
        assert_eq!(
            self.dim(),
            other.dim(),
            "weights from different ambient spaces"
        );
        Weight::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + c * b)
                .collect(),
        )
    }

    pub fn checked_add(&self, other: &Weight) -> Result<Weight> {
        same_dim(self, other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Weight) -> Result<Weight> {
        same_dim(self, other)?;
        Ok(self - other)
    }

    /// Orthogonal projection onto the trace-zero hyperplane `sum x_i = 0`.
    pub fn project_trace_zero(&self) -> Weight {
        let mean = self.trace() / q(self.dim() as i64);
        Weight::new(self.coords.iter().map(|x| x - &mean).collect())
    }

    pub fn trace(&self) -> Q {
        self.coords.iter().fold(Q::zero(), |acc, x| acc + x)
    }

    /// True when every coordinate is an integer.
    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|x| x.is_integer())
    }

    /// Least common multiple of the coordinate denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coords
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }

    pub fn sum<'a>(dim: usize, items: impl IntoIterator<Item = &'a Weight>) -> Weight {
        items.into_iter().fold(Weight::zero(dim), |acc, w| &acc + w)
    }

    /// Serialized form: one `"num/den"` (or integer) string per coordinate.
    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().map(ToString::to_string).collect()
    }

    pub fn parse(s: &str) -> Option<Weight> {
        s.split(',')
            .map(parse_rational)
            .collect::<Option<Vec<_>>>()
            .map(Weight::new)
    }
}

fn same_dim(a: &Weight, b: &Weight) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    Ok(())
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        assert_eq!(
            self.dim(),
            rhs.dim(),
            "weights from different ambient spaces"
        );
        Weight::new(
            self.coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        assert_eq!(
            self.dim(),
            rhs.dim(),
            "weights from different ambient spaces"
        );
        Weight::new(
            self.coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight::new(self.coords.iter().map(|x| -x).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| {
                parse_rational(s)
                    .ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}")))
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Weight::new)
    }
}

/// Serde helpers that write rationals as `"num/den"` strings.
pub mod qser {
    use super::{parse_rational, Q};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
        x.to_string().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        let raw = String::deserialize(d)?;
        parse_rational(&raw)
            .ok_or_else(|| serde::de::Error::custom(format!("bad rational {raw:?}")))
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(xs: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
            xs.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> std::result::Result<Vec<Q>, D::Error> {
            Vec::<String>::deserialize(d)?
                .iter()
                .map(|r| {
                    parse_rational(r)
                        .ok_or_else(|| serde::de::Error::custom(format!("bad rational {r:?}")))
                })
                .collect()
        }
    }

    pub mod opt {
        use super::*;

        pub fn serialize<S: Serializer>(
            x: &Option<Q>,
            s: S,
        ) -> std::result::Result<S::Ok, S::Error> {
            x.as_ref().map(ToString::to_string).serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> std::result::Result<Option<Q>, D::Error> {
            Option::<String>::deserialize(d)?
                .map(|r| {
                    parse_rational(&r)
                        .ok_or_else(|| serde::de::Error::custom(format!("bad rational {r:?}")))
                })
                .transpose()
        }
    }
}

/// The coroot pairing `2(lambda, alpha) / (alpha, alpha)`.
pub fn pair(lambda: &Weight, alpha: &Weight) -> Result<Q> {
    same_dim(lambda, alpha)?;
    let n = alpha.norm2();
    if !n.is_positive() {
        return Err(Error::DegenerateRoot);
    }
    Ok(q(2) * lambda.dot(alpha) / n)
}

/// An ordered set of simple roots with its cached Cartan data.
#[derive(Clone, PartialEq, Eq)]
pub struct SimpleBasis {
    simples: Vec<Weight>,
    norms: Vec<Q>,
    cartan: Vec<Vec<i64>>,
    gram_inv: Matrix,
}

impl SimpleBasis {
    /// Validates linear independence and the Cartan-integer conditions.
    pub fn new(simples: Vec<Weight>) -> Result<Self> {
        for s in &simples {
            same_dim(&simples[0], s)?;
            if !s.norm2().is_positive() {
                return Err(Error::DegenerateRoot);
            }
        }
        let gram: Matrix = simples
            .iter()
            .map(|a| simples.iter().map(|b| a.dot(b)).collect())
            .collect();
        let gram_inv = linalg::inverse(&gram).ok_or(Error::DependentSimples)?;
        let norms: Vec<Q> = simples.iter().map(Weight::norm2).collect();
        let mut cartan = vec![vec![0i64; simples.len()]; simples.len()];
        for i in 0..simples.len() {
            for j in 0..simples.len() {
                let v = q(2) * &gram[i][j] / &norms[j];
                let int = to_i64(&v).filter(|&x| i == j || x <= 0);
                cartan[i][j] = int.ok_or_else(|| Error::BadCartanInteger {
                    i,
                    j,
                    value: v.to_string(),
                })?;
            }
        }
        Ok(SimpleBasis {
            simples,
            norms,
            cartan,
            gram_inv,
        })
    }

    pub fn rank(&self) -> usize {
        self.simples.len()
    }

    pub fn dim(&self) -> usize {
        self.simples.first().map_or(0, Weight::dim)
    }

    pub fn simples(&self) -> &[Weight] {
        &self.simples
    }

    pub fn simple(&self, i: usize) -> &Weight {
        &self.simples[i]
    }

    /// `(alpha_i, alpha_i)`.
    pub fn norm2(&self, i: usize) -> &Q {
        &self.norms[i]
    }

    /// Cartan integer `2(alpha_i, alpha_j) / (alpha_j, alpha_j)`.
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        self.cartan[i][j]
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn gram_determinant(&self) -> Q {
        let gram: Matrix = self
            .simples
            .iter()
            .map(|a| self.simples.iter().map(|b| a.dot(b)).collect())
            .collect();
        linalg::determinant(&gram)
    }

    fn check_dim(&self, w: &Weight) -> Result<()> {
        if w.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: w.dim(),
            });
        }
        Ok(())
    }

    /// `pair(lambda, alpha_i)` for every simple root.
    pub fn pairings(&self, lambda: &Weight) -> Result<Vec<Q>> {
        self.check_dim(lambda)?;
        Ok((0..self.rank())
            .map(|i| q(2) * lambda.dot(&self.simples[i]) / &self.norms[i])
            .collect())
    }

    pub fn pairing(&self, lambda: &Weight, i: usize) -> Q {
        q(2) * lambda.dot(&self.simples[i]) / &self.norms[i]
    }

    pub fn is_dominant(&self, lambda: &Weight) -> Result<bool> {
        Ok(self.pairings(lambda)?.iter().all(|p| !p.is_negative()))
    }

    /// Reflection `s_{alpha_i}`.
    pub fn reflect(&self, lambda: &Weight, i: usize) -> Weight {
        let c = self.pairing(lambda, i);
        lambda.add_scaled(&-c, &self.simples[i])
    }

    /// Greedy reduction to the dominant chamber: while some pairing is
    /// negative, reflect at the least such index. Returns the dominant
    /// representative and the reflection word applied (first letter first).
    pub fn dominant_representative_with_word(
        &self,
        lambda: &Weight,
    ) -> Result<(Weight, Vec<usize>)> {
        self.check_dim(lambda)?;
        let mut cur = lambda.clone();
        let mut word = Vec::new();
        loop {
            let neg = (0..self.rank()).find(|&i| self.pairing(&cur, i).is_negative());
            match neg {
                Some(i) => {
                    cur = self.reflect(&cur, i);
                    word.push(i);
                }
                None => return Ok((cur, word)),
            }
        }
    }

    pub fn dominant_representative(&self, lambda: &Weight) -> Result<Weight> {
        Ok(self.dominant_representative_with_word(lambda)?.0)
    }

    /// Coefficients of the orthogonal projection of `v` onto the span of the
    /// simple roots, in the simple-root basis.
    pub fn span_coordinates(&self, v: &Weight) -> Result<Vec<Q>> {
        self.check_dim(v)?;
        let rhs: Vec<Q> = self.simples.iter().map(|a| a.dot(v)).collect();
        Ok(linalg::mat_vec(&self.gram_inv, &rhs))
    }

    pub fn combination(&self, coeffs: &[Q]) -> Weight {
        self.simples
            .iter()
            .zip(coeffs)
            .fold(Weight::zero(self.dim()), |acc, (a, c)| acc.add_scaled(c, a))
    }

    /// Exact coordinates of `v` in the simple-root basis, or `None` when `v`
    /// is not in their span.
    pub fn coordinates(&self, v: &Weight) -> Result<Option<Vec<Q>>> {
        let c = self.span_coordinates(v)?;
        Ok((self.combination(&c) == *v).then_some(c))
    }

    /// Integer coordinates of `v`, or `None` if `v` is outside the root lattice.
    pub fn integer_coordinates(&self, v: &Weight) -> Result<Option<Vec<i64>>> {
        Ok(self
            .coordinates(v)?
            .and_then(|c| c.iter().map(to_i64).collect::<Option<Vec<_>>>()))
    }

    pub fn project_to_span(&self, v: &Weight) -> Result<Weight> {
        Ok(self.combination(&self.span_coordinates(v)?))
    }

    pub fn in_positive_root_cone(&self, v: &Weight) -> bool {
        self.positive_cone_coordinates(v).is_some()
    }

    /// Simple-root coordinates of `v` when all are non-negative.
    pub fn positive_cone_coordinates(&self, v: &Weight) -> Option<Vec<Q>> {
        let c = self.coordinates(v).ok()??;
        c.iter().all(|x| !x.is_negative()).then_some(c)
    }

    /// Fundamental weights: `pair(xi_i, alpha_j) = delta_ij`, lying in the
    /// span of the simple roots.
    pub fn fundamental_weights(&self) -> Vec<Weight> {
        let n = self.rank();
        let a: Matrix = (0..n)
            .map(|j| (0..n).map(|k| q(self.cartan[j][k])).collect())
            .collect();
        let inv = linalg::inverse(&a).expect("Cartan matrix of a valid basis is invertible");
        inv.iter().map(|row| self.combination(row)).collect()
    }

    /// Two simple roots are joined in the Dynkin diagram.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.cartan[i][j] != 0
    }

    pub fn to_vec(&self) -> Vec<Weight> {
        self.simples.clone()
    }
}

impl fmt::Debug for SimpleBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.simples).finish()
    }
}

pub fn is_dominant(lambda: &Weight, basis: &SimpleBasis) -> Result<bool> {
    basis.is_dominant(lambda)
}

pub fn dominant_representative(lambda: &Weight, basis: &SimpleBasis) -> Result<Weight> {
    basis.dominant_representative(lambda)
}

pub fn in_positive_root_cone(v: &Weight, basis: &SimpleBasis) -> bool {
    basis.in_positive_root_cone(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(xs: &[i64]) -> Weight {
        Weight::from_ints(xs)
    }

    fn a2() -> SimpleBasis {
        SimpleBasis::new(vec![w(&[1, -1, 0]), w(&[0, 1, -1])]).unwrap()
    }

    fn b2() -> SimpleBasis {
        SimpleBasis::new(vec![w(&[1, -1]), w(&[0, 1])]).unwrap()
    }

    #[test]
    fn pairing_values() {
        let b3 = SimpleBasis::new(vec![w(&[1, -1, 0]), w(&[0, 1, -1]), w(&[0, 0, 1])]).unwrap();
        assert_eq!(pair(b3.simple(0), b3.simple(1)).unwrap(), q(-1));
        assert_eq!(pair(&Weight::zero(3), b3.simple(2)).unwrap(), q(0));
        for (i, xi) in b3.fundamental_weights().iter().enumerate() {
            for j in 0..3 {
                let expect = if i == j { q(1) } else { q(0) };
                assert_eq!(pair(xi, b3.simple(j)).unwrap(), expect);
            }
        }
    }

    #[test]
    fn pairing_errors() {
        assert_eq!(pair(&w(&[1, 0]), &w(&[0, 0])), Err(Error::DegenerateRoot));
        assert!(matches!(
            pair(&w(&[1, 0]), &w(&[1, 0, 0])),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            a2().is_dominant(&w(&[1, 0])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn dominance() {
        let b = a2();
        let xi = b.fundamental_weights();
        let rho = &xi[0] + &xi[1];
        assert!(b.is_dominant(&rho).unwrap());
        assert!(!b.is_dominant(&-&xi[0]).unwrap());
        assert!(b.is_dominant(&w(&[1, 0, -1])).unwrap());
    }

    #[test]
    fn dominant_reps() {
        let a = a2();
        assert_eq!(
            a.dominant_representative(&w(&[1, 0, -1])).unwrap(),
            w(&[1, 0, -1])
        );
        assert_eq!(
            a.dominant_representative(&w(&[-1, 0, 1])).unwrap(),
            w(&[1, 0, -1])
        );
        assert_eq!(
            b2().dominant_representative(&w(&[-1, -2])).unwrap(),
            w(&[2, 1])
        );
    }

    #[test]
    fn b2_orbit_scan_agrees() {
        // All 8 signed permutations of (-1,-2); exactly one is dominant.
        let b = b2();
        let mut dominant = Vec::new();
        for (x, y) in [(-1, -2), (-2, -1)] {
            for sx in [1, -1] {
                for sy in [1, -1] {
                    let v = w(&[sx * x, sy * y]);
                    if b.is_dominant(&v).unwrap() {
                        dominant.push(v);
                    }
                }
            }
        }
        assert_eq!(dominant, vec![w(&[2, 1])]);
    }

    #[test]
    fn cone_membership() {
        let a = a2();
        let v = &a.simple(0).clone() + &a.simple(1).scale_int(2);
        assert!(a.in_positive_root_cone(&v));
        assert!(!a.in_positive_root_cone(&-a.simple(0)));
        assert_eq!(
            a.positive_cone_coordinates(&w(&[1, 0, -1])),
            Some(vec![q(1), q(1)])
        );
        // Outside the trace-zero span.
        assert!(!a.in_positive_root_cone(&w(&[1, 0, 0])));
    }

    #[test]
    fn fundamental_weights_a2_b2() {
        assert_eq!(
            a2().fundamental_weights(),
            vec![
                Weight::new(vec![qr(2, 3), qr(-1, 3), qr(-1, 3)]),
                Weight::new(vec![qr(1, 3), qr(1, 3), qr(-2, 3)]),
            ]
        );
        assert_eq!(
            b2().fundamental_weights(),
            vec![w(&[1, 0]), Weight::new(vec![qr(1, 2), qr(1, 2)])]
        );
        let rank1 = SimpleBasis::new(vec![w(&[0, 2])]).unwrap();
        assert_eq!(rank1.fundamental_weights(), vec![w(&[0, 1])]);
    }

    #[test]
    fn invalid_bases() {
        assert_eq!(
            SimpleBasis::new(vec![w(&[1, -1]), w(&[2, -2])]),
            Err(Error::DependentSimples)
        );
        assert!(matches!(
            SimpleBasis::new(vec![w(&[1, 0]), w(&[1, 1])]),
            Err(Error::BadCartanInteger { .. })
        ));
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3/2"), Some(qr(3, 2)));
        assert_eq!(parse_rational("-4"), Some(q(-4)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(
            Weight::parse("3/2,1/2"),
            Some(Weight::new(vec![qr(3, 2), qr(1, 2)]))
        );
    }
}
