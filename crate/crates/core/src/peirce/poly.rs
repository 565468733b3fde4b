//! Dense univariate polynomials over the rationals, lowest degree first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::linalg::Matrix;
use crate::rational::Q;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly(pub Vec<Q>);

impl Poly {
    pub fn new(mut c: Vec<Q>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Poly(c)
    }

    pub fn one() -> Self {
        Poly(vec![Q::one()])
    }

    /// `x - root`.
    pub fn linear(root: &Q) -> Self {
        Poly(vec![-root.clone(), Q::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Q {
        self.0.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.0.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly(Vec::new());
        }
        let mut out = vec![Q::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        let get = |p: &Poly, i: usize| p.0.get(i).cloned().unwrap_or_else(Q::zero);
        Poly::new((0..n).map(|i| get(self, i) + get(other, i)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        let get = |p: &Poly, i: usize| p.0.get(i).cloned().unwrap_or_else(Q::zero);
        Poly::new((0..n).map(|i| get(self, i) - get(other, i)).collect())
    }

    pub fn pow(&self, k: usize) -> Poly {
        (0..k).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let mut rem = self.0.clone();
        let lead = d.lead();
        let mut quot = vec![Q::zero(); self.0.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let shift = rem.len() - 1 - dd;
            let c = rem.last().expect("nonempty") / &lead;
            for (i, x) in d.0.iter().enumerate() {
                rem[shift + i] -= &c * x;
            }
            quot[shift] = c;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// `(g, u, v)` with `u a + v b = g = gcd(a, b)` and `g` monic.
    pub fn ext_gcd(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly(Vec::new()));
        let (mut t0, mut t1) = (Poly(Vec::new()), Poly::one());
        while !r1.is_zero() {
            let (quo, rem) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, rem);
            let s2 = s0.sub(&quo.mul(&s1));
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = t0.sub(&quo.mul(&t1));
            t0 = std::mem::replace(&mut t1, t2);
        }
        let lead = r0.lead();
        let norm = |p: &Poly| Poly::new(p.0.iter().map(|c| c / &lead).collect());
        (norm(&r0), norm(&s0), norm(&t0))
    }

    /// Rational roots with multiplicity, plus the cofactor with no rational
    /// roots left.
    pub fn rational_roots(&self) -> (Vec<(Q, usize)>, Poly) {
        let mut rest = self.clone();
        let mut roots = Vec::new();
        let mut zero_mult = 0;
        while rest.0.first().is_some_and(Zero::is_zero) {
            rest = Poly::new(rest.0[1..].to_vec());
            zero_mult += 1;
        }
        if zero_mult > 0 {
            roots.push((Q::zero(), zero_mult));
        }
        if rest.degree().unwrap_or(0) == 0 {
            return (roots, rest);
        }
        // Clear denominators to get integer coefficients.
        let denom_lcm = rest.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = rest.0.iter().map(|c| (c * Q::from_integer(denom_lcm.clone())).to_integer()).collect();
        let a0 = ints[0].abs();
        let an = ints.last().expect("nonconstant").abs();
        for p in divisors(&a0) {
            for qd in divisors(&an) {
                for sign in [1i32, -1] {
                    let cand = Q::new(BigInt::from(sign) * &p, qd.clone());
                    let mut mult = 0;
                    while rest.degree().unwrap_or(0) > 0 && rest.eval(&cand).is_zero() {
                        rest = rest.div_rem(&Poly::linear(&cand)).0;
                        mult += 1;
                    }
                    if mult > 0 {
                        roots.push((cand, mult));
                    }
                }
            }
        }
        (roots, rest)
    }
}

/// Positive divisors by trial division.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            let other = n / &d;
            if other != d {
                large.push(other);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Minimal polynomial of a square matrix, monic, from the first linear
/// dependency among its powers.
pub fn minimal_polynomial(m: &Matrix) -> Poly {
    let n = m.rows();
    let mut powers: Vec<Vec<Q>> = vec![Matrix::identity(n).flatten()];
    let mut current = Matrix::identity(n);
    loop {
        current = &current * m;
        let flat = current.flatten();
        let basis = Matrix::from_columns(n * n, &powers);
        if let Some(c) = basis.solve(&flat) {
            // m^k = sum c_j m^j
            let mut coeffs: Vec<Q> = c.into_iter().map(|x| -x).collect();
            coeffs.push(Q::one());
            return Poly::new(coeffs);
        }
        powers.push(flat);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};

    fn p(xs: &[i64]) -> Poly {
        Poly::new(xs.iter().map(|&x| q(x)).collect())
    }

    #[test]
    fn arithmetic() {
        let a = p(&[-1, 0, 1]);
        let (quo, rem) = a.div_rem(&p(&[-1, 1]));
        assert_eq!(quo, p(&[1, 1]));
        assert!(rem.is_zero());
        let (a, b) = (p(&[-1, 1]).pow(2), p(&[-2, 1]));
        let (g, u, v) = Poly::ext_gcd(&a, &b);
        assert_eq!(g, Poly::one());
        assert_eq!(u.mul(&a).add(&v.mul(&b)), g);
        let (g, _, _) = Poly::ext_gcd(&a, &p(&[2, -2]));
        assert_eq!(g, p(&[-1, 1]));
    }

    #[test]
    fn roots() {
        // (2x - 1)(x + 3)^2 x
        let f = p(&[-1, 2]).mul(&p(&[3, 1]).pow(2)).mul(&p(&[0, 1]));
        let (mut r, rest) = f.rational_roots();
        r.sort();
        assert_eq!(r, vec![(q(-3), 2), (q(0), 1), (frac(1, 2), 1)]);
        assert_eq!(rest.degree(), Some(0));
        let (r, rest) = p(&[1, 0, 1]).rational_roots();
        assert!(r.is_empty());
        assert_eq!(rest.degree(), Some(2));
    }

    #[test]
    fn minimal_polynomials() {
        let j = Matrix::from_i64(2, 2, &[0, 1, 0, 0]);
        assert_eq!(minimal_polynomial(&j), p(&[0, 0, 1]));
        let d = Matrix::from_i64(3, 3, &[1, 0, 0, 0, 2, 0, 0, 0, 1]);
        assert_eq!(minimal_polynomial(&d), p(&[2, -3, 1]));
        assert_eq!(minimal_polynomial(&Matrix::identity(2)), p(&[-1, 1]));
    }
}
