//! Exact bivariate Laurent polynomials in (q, t) and their fractions.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Sparse Laurent polynomial in q and t, keyed by (q-exponent, t-exponent).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Laurent2 {
    terms: BTreeMap<(i32, i32), BigInt>,
}

impl Laurent2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, q: i32, t: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(q, t, c.into());
        p
    }

    pub fn add_term(&mut self, q: i32, t: i32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((q, t)).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(q, t));
        }
    }

    /// The q-number [n]_q = (q^n - q^-n)/(q - q^-1).
    pub fn qnum(n: i64) -> Self {
        let mut p = Self::zero();
        let k = n.abs() as i32;
        let sign = if n < 0 { -1 } else { 1 };
        let mut e = k - 1;
        while e >= -(k - 1) && k > 0 {
            p.add_term(e, 0, BigInt::from(sign));
            e -= 2;
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i32, i32), &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, q: i32, t: i32) -> BigInt {
        self.terms.get(&(q, t)).cloned().unwrap_or_default()
    }

    /// Substitute t = 1.
    pub fn at_t1(&self) -> Self {
        let mut p = Self::zero();
        for (&(q, _), c) in &self.terms {
            p.add_term(q, 0, c.clone());
        }
        p
    }

    /// Substitute q = 1.
    pub fn at_q1(&self) -> Self {
        let mut p = Self::zero();
        for (&(_, t), c) in &self.terms {
            p.add_term(0, t, c.clone());
        }
        p
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut p = Self::zero();
        for (&(a, b), x) in &self.terms {
            p.add_term(a, b, x * c);
        }
        p
    }
}

impl Add for &Laurent2 {
    type Output = Laurent2;
    fn add(self, o: &Laurent2) -> Laurent2 {
        let mut p = self.clone();
        for (&(a, b), c) in &o.terms {
            p.add_term(a, b, c.clone());
        }
        p
    }
}

impl Sub for &Laurent2 {
    type Output = Laurent2;
    fn sub(self, o: &Laurent2) -> Laurent2 {
        self + &(-o)
    }
}

impl Neg for &Laurent2 {
    type Output = Laurent2;
    fn neg(self) -> Laurent2 {
        let mut p = Laurent2::zero();
        for (&(a, b), c) in &self.terms {
            p.add_term(a, b, -c);
        }
        p
    }
}

impl Mul for &Laurent2 {
    type Output = Laurent2;
    fn mul(self, o: &Laurent2) -> Laurent2 {
        let mut p = Laurent2::zero();
        for (&(a, b), c) in &self.terms {
            for (&(x, y), d) in &o.terms {
                p.add_term(a + x, b + y, c * d);
            }
        }
        p
    }
}

impl fmt::Display for Laurent2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(a, b), c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let abs = c.abs();
            let bare = a == 0 && b == 0;
            if !abs.is_one() || bare {
                write!(f, "{abs}")?;
            }
            let mut parts = Vec::new();
            if a != 0 {
                parts.push(if a == 1 { "q".to_string() } else { format!("q^{a}") });
            }
            if b != 0 {
                parts.push(if b == 1 { "t".to_string() } else { format!("t^{b}") });
            }
            if !parts.is_empty() {
                if !abs.is_one() {
                    write!(f, "*")?;
                }
                write!(f, "{}", parts.join("*"))?;
            }
        }
        Ok(())
    }
}

/// A fraction of two Laurent polynomials; equality is by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RatFn {
    pub num: Laurent2,
    pub den: Laurent2,
}

impl RatFn {
    pub fn new(num: Laurent2, den: Laurent2) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Self { num, den }
    }

    pub fn poly(p: Laurent2) -> Self {
        Self::new(p, Laurent2::one())
    }

    pub fn zero() -> Self {
        Self::poly(Laurent2::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &RatFn) -> RatFn {
        if self.den == o.den {
            return RatFn::new(&self.num + &o.num, self.den.clone());
        }
        RatFn::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }

    pub fn mul(&self, o: &RatFn) -> RatFn {
        RatFn::new(&self.num * &o.num, &self.den * &o.den)
    }

    /// Evaluate at t = 1 as a fraction in q; `None` if the denominator vanishes there.
    pub fn at_t1(&self) -> Option<RatFn> {
        let d = self.den.at_t1();
        (!d.is_zero()).then(|| RatFn::new(self.num.at_t1(), d))
    }

    /// Evaluate at q = 1 as a fraction in t; `None` if the denominator vanishes there.
    pub fn at_q1(&self) -> Option<RatFn> {
        let d = self.den.at_q1();
        (!d.is_zero()).then(|| RatFn::new(self.num.at_q1(), d))
    }
}

impl PartialEq for RatFn {
    fn eq(&self, o: &Self) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Laurent2::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// Determinant of a square matrix of Laurent polynomials by subset-memoised
/// Laplace expansion along rows.
pub fn det(m: &[Vec<Laurent2>]) -> Laurent2 {
    let n = m.len();
    if n == 0 {
        return Laurent2::one();
    }
    // memo[mask] = det of rows (n - popcount(mask))..n restricted to columns in mask
    let mut memo: Vec<Option<Laurent2>> = vec![None; 1 << n];
    memo[0] = Some(Laurent2::one());
    for mask in 1usize..(1 << n) {
        let k = mask.count_ones() as usize;
        let row = n - k;
        let mut acc = Laurent2::zero();
        let mut sign_pos = 0usize;
        for col in 0..n {
            if mask & (1 << col) == 0 {
                continue;
            }
            let entry = &m[row][col];
            if !entry.is_zero() {
                let sub = memo[mask & !(1 << col)].as_ref().expect("filled");
                let term = entry * sub;
                acc = if sign_pos % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            sign_pos += 1;
        }
        memo[mask] = Some(acc);
    }
    memo[(1 << n) - 1].take().expect("filled")
}

/// Adjugate matrix, so that adj(m)·m = det(m)·I.
pub fn adjugate(m: &[Vec<Laurent2>]) -> Vec<Vec<Laurent2>> {
    let n = m.len();
    let mut adj = vec![vec![Laurent2::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<Laurent2>> = (0..n)
                .filter(|&r| r != i)
                .map(|r| (0..n).filter(|&c| c != j).map(|c| m[r][c].clone()).collect())
                .collect();
            let d = det(&minor);
            adj[j][i] = if (i + j) % 2 == 0 { d } else { -&d };
        }
    }
    adj
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qnumbers() {
        assert_eq!(Laurent2::qnum(1), Laurent2::one());
        assert!(Laurent2::qnum(0).is_zero());
        let q2 = Laurent2::qnum(2);
        assert_eq!(q2.coeff(1, 0), BigInt::from(1));
        assert_eq!(q2.coeff(-1, 0), BigInt::from(1));
        assert_eq!(Laurent2::qnum(3).at_t1().terms().count(), 3);
    }

    #[test]
    fn det_and_adjugate() {
        let x = Laurent2::monomial(1, 1, 1);
        let m = vec![
            vec![x.clone(), Laurent2::constant(-1)],
            vec![Laurent2::constant(-2), x.clone()],
        ];
        let d = det(&m);
        assert_eq!(d, &(&x * &x) - &Laurent2::constant(2));
        let adj = adjugate(&m);
        for i in 0..2 {
            for j in 0..2 {
                let mut s = Laurent2::zero();
                for k in 0..2 {
                    s = &s + &(&adj[i][k] * &m[k][j]);
                }
                let want = if i == j { d.clone() } else { Laurent2::zero() };
                assert_eq!(s, want);
            }
        }
    }

    #[test]
    fn ratfn_equality_by_cross_multiplication() {
        let a = RatFn::new(Laurent2::constant(2), Laurent2::constant(4));
        let b = RatFn::new(Laurent2::one(), Laurent2::constant(2));
        assert_eq!(a, b);
    }
}
