//! Sparse Laurent monomials and characters over spectral parameters
//! ε^e q^m t^n with coefficients in ℤ[α], the specialization maps and
//! equality in the quotient ring.

use crate::error::{Error, Result};
use crate::liealg::AlgebraDatum;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// A spectral parameter ε^e q^m t^n with ε = exp(iπ/d).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpectralParam {
    pub e: i32,
    pub m: i32,
    pub n: i32,
}

impl SpectralParam {
    pub const ONE: SpectralParam = SpectralParam { e: 0, m: 0, n: 0 };

    /// Build with the phase reduced mod 2d.
    pub fn new(e: i32, m: i32, n: i32, d: i64) -> Self {
        Self {
            e: e.rem_euclid(2 * d as i32),
            m,
            n,
        }
    }

    pub fn q(m: i32) -> Self {
        Self { e: 0, m, n: 0 }
    }

    pub fn t(n: i32) -> Self {
        Self { e: 0, m: 0, n }
    }

    pub fn qt(m: i32, n: i32) -> Self {
        Self { e: 0, m, n }
    }

    pub fn mul(self, o: SpectralParam, d: i64) -> Self {
        Self::new(self.e + o.e, self.m + o.m, self.n + o.n, d)
    }

    pub fn div(self, o: SpectralParam, d: i64) -> Self {
        Self::new(self.e - o.e, self.m - o.m, self.n - o.n, d)
    }

    pub fn pow(self, k: i64, d: i64) -> Self {
        let k = k as i32;
        Self::new(self.e * k, self.m * k, self.n * k, d)
    }

    /// The parameter −a, i.e. a·ε^d.
    pub fn neg(self, d: i64) -> Self {
        Self::new(self.e + d as i32, self.m, self.n, d)
    }

    /// All a′ with a′^k = self; fails if the t- or q-exponent is not divisible by k.
    pub fn roots(self, k: i64, d: i64) -> Result<Vec<SpectralParam>> {
        let ki = k as i32;
        if self.n % ki != 0 || self.m % ki != 0 {
            return Err(Error::NotInRing(format!("no {k}-th root of {}", fmt_param(self, d))));
        }
        let two_d = 2 * d as i32;
        let out: Vec<SpectralParam> = (0..two_d)
            .filter(|e| (e * ki - self.e).rem_euclid(two_d) == 0)
            .map(|e| SpectralParam {
                e,
                m: self.m / ki,
                n: self.n / ki,
            })
            .collect();
        if out.is_empty() {
            return Err(Error::NotInRing(format!("no {k}-th root of {}", fmt_param(self, d))));
        }
        Ok(out)
    }
}

/// Variable kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarKind {
    Y,
    W,
    Z,
    Yb,
}

impl VarKind {
    pub fn symbol(self) -> &'static str {
        match self {
            VarKind::Y => "Y",
            VarKind::W => "W",
            VarKind::Z => "Z",
            VarKind::Yb => "Yb",
        }
    }
}

/// Polynomial in α with integer coefficients, lowest degree first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlphaPoly(Vec<BigInt>);

impl AlphaPoly {
    pub fn zero() -> Self {
        Self(Vec::new())
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn alpha() -> Self {
        Self::from_coeffs(vec![0.into(), 1.into()])
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    pub fn from_coeffs(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Self(c)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    pub fn constant_term(&self) -> BigInt {
        self.0.first().cloned().unwrap_or_default()
    }

    pub fn eval(&self, a: i64) -> BigInt {
        let a = BigInt::from(a);
        self.0.iter().rev().fold(BigInt::zero(), |acc, c| acc * &a + c)
    }

    pub fn add(&self, o: &AlphaPoly) -> AlphaPoly {
        let n = self.0.len().max(o.0.len());
        let c = (0..n)
            .map(|i| self.0.get(i).cloned().unwrap_or_default() + o.0.get(i).cloned().unwrap_or_default())
            .collect();
        Self::from_coeffs(c)
    }

    pub fn neg(&self) -> AlphaPoly {
        Self(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &AlphaPoly) -> AlphaPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &AlphaPoly) -> AlphaPoly {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::from_coeffs(c)
    }

    /// Lagrange interpolation through integer points; `None` if the result
    /// has non-integral coefficients.
    pub fn interpolate(points: &[(i64, BigInt)]) -> Option<AlphaPoly> {
        use num_rational::BigRational;
        let n = points.len();
        let mut acc = vec![BigRational::zero(); n];
        for (i, (xi, yi)) in points.iter().enumerate() {
            // basis polynomial ∏_{j≠i} (α − x_j)/(x_i − x_j)
            let mut basis = vec![BigRational::one()];
            let mut denom = BigInt::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                let mut next = vec![BigRational::zero(); basis.len() + 1];
                for (k, b) in basis.iter().enumerate() {
                    next[k + 1] += b.clone();
                    next[k] -= b * BigRational::from_integer(BigInt::from(*xj));
                }
                basis = next;
                denom *= BigInt::from(xi - xj);
            }
            for (k, b) in basis.iter().enumerate() {
                acc[k] += b * BigRational::new(yi.clone(), denom.clone());
            }
        }
        if acc.iter().any(|x| !x.is_integer()) {
            return None;
        }
        Some(Self::from_coeffs(acc.into_iter().map(|x| x.to_integer()).collect()))
    }

    /// Remainder modulo the monic polynomial ∏ (α − r) over the given roots.
    pub fn reduce_mod_roots(&self, roots: &[i64]) -> AlphaPoly {
        let mut modulus = AlphaPoly::one();
        for &r in roots {
            modulus = modulus.mul(&AlphaPoly::from_coeffs(vec![BigInt::from(-r), BigInt::one()]));
        }
        let mut c = self.0.clone();
        let dm = modulus.0.len() - 1;
        while c.len() > dm {
            let lead = c.last().cloned().unwrap();
            let shift = c.len() - 1 - dm;
            for (k, mk) in modulus.0.iter().enumerate() {
                c[shift + k] -= &lead * mk;
            }
            c.pop();
            while c.last().is_some_and(|x| x.is_zero()) {
                c.pop();
            }
        }
        Self::from_coeffs(c)
    }
}

impl fmt::Display for AlphaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            match k {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}*")?;
                    }
                    if k == 1 {
                        write!(f, "a")?;
                    } else {
                        write!(f, "a^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// One variable occurrence: node, parameter, exponent.
pub type Factor = (usize, SpectralParam, i32);

/// Exponent map of a Laurent monomial, sorted by (node, parameter) with no zero exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonoKey(Vec<Factor>);

impl MonoKey {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn var(node: usize, p: SpectralParam, exp: i32) -> Self {
        if exp == 0 {
            Self::one()
        } else {
            Self(vec![(node, p, exp)])
        }
    }

    pub fn from_factors(fs: impl IntoIterator<Item = Factor>) -> Self {
        let mut map: BTreeMap<(usize, SpectralParam), i32> = BTreeMap::new();
        for (i, p, e) in fs {
            *map.entry((i, p)).or_insert(0) += e;
        }
        Self(
            map.into_iter()
                .filter(|(_, e)| *e != 0)
                .map(|((i, p), e)| (i, p, e))
                .collect(),
        )
    }

    pub fn factors(&self) -> &[Factor] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, o: &MonoKey) -> MonoKey {
        let (a, b) = (&self.0, &o.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let ka = (a[i].0, a[i].1);
            let kb = (b[j].0, b[j].1);
            match ka.cmp(&kb) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let e = a[i].2 + b[j].2;
                    if e != 0 {
                        out.push((ka.0, ka.1, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        MonoKey(out)
    }

    pub fn inv(&self) -> MonoKey {
        MonoKey(self.0.iter().map(|&(i, p, e)| (i, p, -e)).collect())
    }

    pub fn pow(&self, k: i32) -> MonoKey {
        if k == 0 {
            return Self::one();
        }
        MonoKey(self.0.iter().map(|&(i, p, e)| (i, p, e * k)).collect())
    }

    pub fn div(&self, o: &MonoKey) -> MonoKey {
        self.mul(&o.inv())
    }

    /// Node-i part as (parameter, exponent) pairs.
    pub fn node_content(&self, i: usize) -> Vec<(SpectralParam, i32)> {
        self.0.iter().filter(|f| f.0 == i).map(|f| (f.1, f.2)).collect()
    }

    pub fn node_weight(&self, i: usize) -> i32 {
        self.0.iter().filter(|f| f.0 == i).map(|f| f.2).sum()
    }

    pub fn has_node(&self, i: usize) -> bool {
        self.0.iter().any(|f| f.0 == i)
    }

    /// All node-i exponents are nonnegative.
    pub fn is_node_dominant(&self, i: usize) -> bool {
        self.0.iter().all(|f| f.0 != i || f.2 > 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|f| f.2 > 0)
    }

    pub fn nodes(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.0.iter().map(|f| f.0).collect();
        v.dedup();
        v
    }

    /// Apply a map to every variable and re-merge.
    pub fn map_vars(&self, f: impl Fn(usize, SpectralParam) -> (usize, SpectralParam)) -> MonoKey {
        MonoKey::from_factors(self.0.iter().map(|&(i, p, e)| {
            let (j, q) = f(i, p);
            (j, q, e)
        }))
    }

    /// Remove all node-i variables.
    pub fn without_node(&self, i: usize) -> MonoKey {
        MonoKey(self.0.iter().copied().filter(|f| f.0 != i).collect())
    }
}

/// A monomial: kind, coefficient in ℤ[α] and exponent map.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub kind: VarKind,
    pub coeff: AlphaPoly,
    pub key: MonoKey,
}

impl Monomial {
    pub fn new(kind: VarKind, coeff: AlphaPoly, key: MonoKey) -> Self {
        Self { kind, coeff, key }
    }

    pub fn unit(kind: VarKind, key: MonoKey) -> Self {
        Self::new(kind, AlphaPoly::one(), key)
    }
}

/// A finite formal sum of monomials of a single variable kind.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character {
    kind: VarKind,
    terms: BTreeMap<MonoKey, AlphaPoly>,
}

impl Character {
    pub fn zero(kind: VarKind) -> Self {
        Self {
            kind,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(kind: VarKind) -> Self {
        Self::from_monomial(&Monomial::unit(kind, MonoKey::one()))
    }

    pub fn from_monomial(m: &Monomial) -> Self {
        let mut c = Self::zero(m.kind);
        c.add_term(m.key.clone(), m.coeff.clone());
        c
    }

    pub fn from_terms(kind: VarKind, terms: impl IntoIterator<Item = (MonoKey, AlphaPoly)>) -> Self {
        let mut c = Self::zero(kind);
        for (k, v) in terms {
            c.add_term(k, v);
        }
        c
    }

    pub fn kind(&self) -> VarKind {
        self.kind
    }

    pub fn with_kind(mut self, kind: VarKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn add_term(&mut self, key: MonoKey, coeff: AlphaPoly) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(c) => {
                *c = c.add(&coeff);
                if c.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, coeff);
            }
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MonoKey, &AlphaPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &MonoKey) -> AlphaPoly {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn contains(&self, key: &MonoKey) -> bool {
        self.terms.contains_key(key)
    }

    fn check_kind(&self, o: &Character) -> Result<()> {
        if self.kind != o.kind {
            return Err(Error::Mismatch(format!(
                "cannot combine {} and {} characters",
                self.kind.symbol(),
                o.kind.symbol()
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Character) -> Result<Character> {
        self.check_kind(o)?;
        let mut out = self.clone();
        for (k, v) in &o.terms {
            out.add_term(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Character) -> Result<Character> {
        self.add(&o.scale(&AlphaPoly::constant(-1)))
    }

    pub fn scale(&self, c: &AlphaPoly) -> Character {
        Character::from_terms(self.kind, self.terms.iter().map(|(k, v)| (k.clone(), v.mul(c))))
    }

    pub fn mul(&self, o: &Character) -> Result<Character> {
        self.check_kind(o)?;
        let mut out = Character::zero(self.kind);
        for (k1, v1) in &self.terms {
            for (k2, v2) in &o.terms {
                out.add_term(k1.mul(k2), v1.mul(v2));
            }
        }
        Ok(out)
    }

    pub fn mul_key(&self, key: &MonoKey) -> Character {
        Character::from_terms(self.kind, self.terms.iter().map(|(k, v)| (k.mul(key), v.clone())))
    }

    /// Map each term's key and coefficient; terms merge when keys collide.
    pub fn map_terms(
        &self,
        kind: VarKind,
        mut f: impl FnMut(&MonoKey, &AlphaPoly) -> Result<Option<(MonoKey, AlphaPoly)>>,
    ) -> Result<Character> {
        let mut out = Character::zero(kind);
        for (k, v) in &self.terms {
            if let Some((k2, v2)) = f(k, v)? {
                out.add_term(k2, v2);
            }
        }
        Ok(out)
    }

    /// Sum of the coefficients evaluated at α = a.
    pub fn dimension_at(&self, a: i64) -> BigInt {
        self.terms.values().map(|c| c.eval(a)).sum()
    }

    /// Count of terms whose coefficient is not constant.
    pub fn alpha_terms(&self) -> usize {
        self.terms.values().filter(|c| !c.is_constant()).count()
    }

    pub fn dominant_terms(&self) -> Vec<MonoKey> {
        self.terms.keys().filter(|k| k.is_dominant()).cloned().collect()
    }

    /// Canonical text: one `coeff<TAB>monomial` line per term.
    pub fn to_text(&self, d: i64) -> String {
        let mut s = String::new();
        for (k, v) in &self.terms {
            s += &format!("{}\t{}\n", v, format_key(self.kind, k, d));
        }
        s
    }

    /// Parse the canonical text form.
    pub fn from_text(text: &str, d: i64) -> Result<Character> {
        let mut kind = None;
        let mut out: Option<Character> = None;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (c, m) = line.split_once('\t').ok_or_else(|| Error::Parse {
                pos: lineno,
                msg: "expected `coeff<TAB>monomial`".into(),
            })?;
            let coeff = parse_alphapoly(c.trim())?;
            let mono = parse_monomial(m.trim(), d)?;
            let k = *kind.get_or_insert(mono.kind);
            let ch = out.get_or_insert_with(|| Character::zero(k));
            if mono.kind != ch.kind && !mono.key.is_one() {
                return Err(Error::Mismatch("mixed kinds in character file".into()));
            }
            ch.add_term(mono.key, coeff.mul(&mono.coeff));
        }
        Ok(out.unwrap_or_else(|| Character::zero(VarKind::Y)))
    }

    /// Sum of monomials written in the monomial grammar, separated by `+`.
    pub fn parse_sum(text: &str, d: i64) -> Result<Character> {
        let mut out: Option<Character> = None;
        for part in split_top_level(text, '+') {
            let m = parse_monomial(part.trim(), d)?;
            let ch = out.get_or_insert_with(|| Character::zero(m.kind));
            if m.kind != ch.kind && !m.key.is_one() {
                return Err(Error::Mismatch("mixed kinds in sum".into()));
            }
            ch.add_term(m.key, m.coeff);
        }
        out.ok_or_else(|| Error::Parse {
            pos: 0,
            msg: "empty sum".into(),
        })
    }
}

fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

// ---------------------------------------------------------------------------
// Grammar
// ---------------------------------------------------------------------------

pub fn fmt_param(p: SpectralParam, d: i64) -> String {
    let mut parts = Vec::new();
    let minus = d > 1 && p.e as i64 == d;
    if p.e != 0 && !minus {
        parts.push(format!("E^{}", p.e));
    }
    let pw = |s: &str, x: i32| if x == 1 { s.to_string() } else { format!("{s}^{x}") };
    if p.m != 0 {
        parts.push(pw("q", p.m));
    }
    if p.n != 0 {
        parts.push(pw("t", p.n));
    }
    let body = if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join(" ")
    };
    if minus {
        format!("-{body}")
    } else {
        body
    }
}

pub fn format_key(kind: VarKind, key: &MonoKey, d: i64) -> String {
    if key.is_one() {
        return "1".into();
    }
    key.factors()
        .iter()
        .map(|&(i, p, e)| {
            let base = format!("{}[{};{}]", kind.symbol(), i, fmt_param(p, d));
            if e == 1 {
                base
            } else {
                format!("{base}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Canonical text of a monomial.
pub fn format_monomial(m: &Monomial, d: i64) -> String {
    let body = format_key(m.kind, &m.key, d);
    if m.coeff == AlphaPoly::one() {
        return body;
    }
    let c = if m.coeff.is_constant() {
        m.coeff.to_string()
    } else {
        format!("({})", m.coeff)
    };
    format!("{c}*{body}")
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Self {
            s: s.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{}`", c as char))
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.s.len()
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.peek(), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return self.err("expected integer");
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .or_else(|_| self.err("integer out of range"))
    }

    fn big_int(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected integer");
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().unwrap())
    }

    fn starts_with(&mut self, lit: &str) -> bool {
        self.skip_ws();
        self.s[self.pos..].starts_with(lit.as_bytes())
    }
}

fn parse_alphapoly_cursor(c: &mut Cursor) -> Result<AlphaPoly> {
    let mut acc = AlphaPoly::zero();
    let mut first = true;
    loop {
        c.skip_ws();
        let mut sign = BigInt::one();
        if c.eat(b'-') {
            sign = -sign;
        } else if !first && !c.eat(b'+') {
            break;
        } else if first {
            c.eat(b'+');
        }
        first = false;
        c.skip_ws();
        let mut coef = BigInt::one();
        let mut have_num = false;
        if c.peek().is_some_and(|x| x.is_ascii_digit()) {
            coef = c.big_int()?;
            have_num = true;
            if !c.eat(b'*') {
                acc = acc.add(&AlphaPoly::constant(sign * coef));
                continue;
            }
        }
        if c.eat(b'a') {
            let mut k = 1usize;
            if c.eat(b'^') {
                let e = c.int()?;
                if e < 0 {
                    return c.err("negative power of a");
                }
                k = e as usize;
            }
            let mut v = vec![BigInt::zero(); k + 1];
            v[k] = sign * coef;
            acc = acc.add(&AlphaPoly::from_coeffs(v));
        } else if have_num {
            return c.err("expected `a` after `*`");
        } else {
            return c.err("expected integer or `a`");
        }
    }
    Ok(acc)
}

/// Parse a polynomial in `a` such as `2-a` or `a^2-3*a+1`.
pub fn parse_alphapoly(text: &str) -> Result<AlphaPoly> {
    let mut c = Cursor::new(text);
    let p = parse_alphapoly_cursor(&mut c)?;
    if !c.at_end() {
        return c.err("trailing input");
    }
    Ok(p)
}

fn parse_param(c: &mut Cursor, d: i64) -> Result<SpectralParam> {
    c.skip_ws();
    let mut e = 0i64;
    if c.eat(b'-') {
        e += d;
    }
    let (mut m, mut n) = (0i64, 0i64);
    let mut any = false;
    loop {
        c.skip_ws();
        c.eat(b'*');
        c.skip_ws();
        match c.peek() {
            Some(b'E') => {
                c.pos += 1;
                c.expect(b'^')?;
                e += c.int()?;
            }
            Some(b'q') => {
                c.pos += 1;
                m += if c.eat(b'^') { c.int()? } else { 1 };
            }
            Some(b't') => {
                c.pos += 1;
                n += if c.eat(b'^') { c.int()? } else { 1 };
            }
            Some(b'1') if !any => {
                c.pos += 1;
            }
            _ => break,
        }
        any = true;
    }
    if !any {
        return c.err("expected spectral parameter");
    }
    Ok(SpectralParam::new(e as i32, m as i32, n as i32, d))
}

fn parse_kind(c: &mut Cursor) -> Result<VarKind> {
    c.skip_ws();
    if c.starts_with("Yb") {
        c.pos += 2;
        Ok(VarKind::Yb)
    } else if c.eat(b'Y') {
        Ok(VarKind::Y)
    } else if c.eat(b'W') {
        Ok(VarKind::W)
    } else if c.eat(b'Z') {
        Ok(VarKind::Z)
    } else {
        c.err("expected variable kind Y, W, Z or Yb")
    }
}

/// Parse a monomial such as `(2-a)*Y[1;q^2 t]^-1`; `d` fixes the phase modulus.
pub fn parse_monomial(text: &str, d: i64) -> Result<Monomial> {
    let mut c = Cursor::new(text);
    c.skip_ws();
    let mut coeff = AlphaPoly::one();
    if c.eat(b'(') {
        coeff = parse_alphapoly_cursor(&mut c)?;
        c.expect(b')')?;
        c.expect(b'*')?;
    } else if c.eat(b'a') {
        coeff = AlphaPoly::alpha();
        if c.eat(b'^') {
            let k = c.int()?;
            coeff = AlphaPoly::one();
            for _ in 0..k.max(0) {
                coeff = coeff.mul(&AlphaPoly::alpha());
            }
        }
        c.expect(b'*')?;
    } else if c.peek().is_some_and(|x| x.is_ascii_digit() || x == b'-') {
        let v = c.int()?;
        coeff = AlphaPoly::constant(v);
        if c.at_end() {
            return Ok(Monomial::new(VarKind::Y, coeff, MonoKey::one()));
        }
        c.expect(b'*')?;
    }
    let mut kind = None;
    let mut factors = Vec::new();
    loop {
        let k = parse_kind(&mut c)?;
        if *kind.get_or_insert(k) != k {
            return c.err("mixed variable kinds in one monomial");
        }
        c.expect(b'[')?;
        let node = c.int()?;
        if node <= 0 {
            return c.err("node must be positive");
        }
        c.expect(b';')?;
        let p = parse_param(&mut c, d)?;
        c.expect(b']')?;
        let mut e = 1i64;
        if c.eat(b'^') {
            if c.eat(b'(') {
                e = c.int()?;
                c.expect(b')')?;
            } else {
                e = c.int()?;
            }
        }
        factors.push((node as usize, p, e as i32));
        if c.at_end() {
            break;
        }
        c.expect(b'*')?;
    }
    Ok(Monomial::new(kind.unwrap(), coeff, MonoKey::from_factors(factors)))
}

// ---------------------------------------------------------------------------
// Ring flavors and A-monomials
// ---------------------------------------------------------------------------

/// Which character ring a computation lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FlavorKind {
    /// q-characters of U_q(ĝ), parameters in q^ℤ.
    StandardQ,
    /// The q → 1 screening kernel, parameters in t^ℤ.
    FoldedT,
    /// Twisted t-characters of ^Lĝ, Z-variables, parameters in ε^ℤ t^ℤ.
    TwistedT,
    /// Interpolating (q,t)-characters, parameters in q^ℤ t^ℤ.
    InterpQT,
}

/// Sign convention for the twisted B-monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TwistConvention {
    /// The neighbour factors exactly as in the ring definition.
    Literal,
    /// Neighbour factors at the negated parameter; reproduces the displayed
    /// twisted characters.
    Displayed,
}

/// A ring flavor bound to its algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingFlavor {
    pub kind: FlavorKind,
    pub g: AlgebraDatum,
    pub twist: TwistConvention,
}

impl RingFlavor {
    pub fn new(kind: FlavorKind, g: &AlgebraDatum) -> Self {
        Self {
            kind,
            g: g.clone(),
            twist: TwistConvention::Displayed,
        }
    }

    pub fn standard_q(g: &AlgebraDatum) -> Self {
        Self::new(FlavorKind::StandardQ, g)
    }

    pub fn folded_t(g: &AlgebraDatum) -> Self {
        Self::new(FlavorKind::FoldedT, g)
    }

    pub fn twisted_t(g: &AlgebraDatum) -> Self {
        Self::new(FlavorKind::TwistedT, g)
    }

    pub fn interp(g: &AlgebraDatum) -> Self {
        Self::new(FlavorKind::InterpQT, g)
    }

    /// Twisted flavor from an affine label such as `D3^(2)`; A_{2n}^{(2)} is rejected.
    pub fn twisted_from_label(label: &str) -> Result<Self> {
        let (base, tw) = label.split_once("^(").ok_or_else(|| Error::UnknownType(label.into()))?;
        let tw: usize = tw
            .trim_end_matches(')')
            .parse()
            .map_err(|_| Error::UnknownType(label.into()))?;
        let g = crate::liealg::build_algebra(base)?;
        let n = g.rank();
        let gname = match (g.family(), tw) {
            (crate::liealg::Family::A, 2) if n % 2 == 0 => {
                return Err(Error::Unsupported("type A_{2n}^(2) is not considered".into()))
            }
            (crate::liealg::Family::A, 2) => format!("B{}", n.div_ceil(2)),
            (crate::liealg::Family::D, 2) => format!("C{}", n - 1),
            (crate::liealg::Family::E, 2) if n == 6 => "F4".into(),
            (crate::liealg::Family::D, 3) if n == 4 => "G2".into(),
            _ => return Err(Error::UnknownType(label.into())),
        };
        Ok(Self::twisted_t(&crate::liealg::build_algebra(&gname)?))
    }

    pub fn d(&self) -> i64 {
        self.g.lacing()
    }

    pub fn var_kind(&self) -> VarKind {
        match self.kind {
            FlavorKind::TwistedT => VarKind::Z,
            _ => VarKind::Y,
        }
    }

    pub fn name(&self) -> String {
        let k = match self.kind {
            FlavorKind::StandardQ => "standard-q",
            FlavorKind::FoldedT => "folded-t",
            FlavorKind::TwistedT => "twisted-t",
            FlavorKind::InterpQT => "interp-qt",
        };
        format!("{k}({})", self.g.label())
    }

    /// Block shift s: the block of Y_{i,b} is Y_{i,b}(1 + A_{i,bs}^{-1}).
    pub fn block_shift(&self, i: usize) -> SpectralParam {
        let g = &self.g;
        match self.kind {
            FlavorKind::StandardQ => SpectralParam::q(g.d(i) as i32),
            FlavorKind::FoldedT => SpectralParam::t(1),
            FlavorKind::InterpQT => SpectralParam::qt(g.d(i) as i32, 1),
            FlavorKind::TwistedT => SpectralParam::t(g.dual_exp(i) as i32),
        }
    }

    /// A-monomial A_{i,a} of the flavor.
    pub fn a_monomial(&self, i: usize, a: SpectralParam) -> Result<MonoKey> {
        self.g.check_node(i)?;
        let g = &self.g;
        let d = g.lacing();
        let mut f: Vec<Factor> = Vec::new();
        let at = |x: SpectralParam| a.mul(x, d);
        match self.kind {
            FlavorKind::StandardQ | FlavorKind::InterpQT => {
                let s = self.block_shift(i);
                f.push((i, a.mul(s, d), 1));
                f.push((i, a.div(s, d), 1));
                for j in g.neighbors(i) {
                    let offsets: &[i32] = match -g.cartan(j, i) {
                        1 => &[0],
                        2 => &[-1, 1],
                        3 => &[-2, 0, 2],
                        _ => return Err(Error::Invalid("unexpected Cartan entry".into())),
                    };
                    for &o in offsets {
                        f.push((j, at(SpectralParam::q(o)), -1));
                    }
                }
            }
            FlavorKind::FoldedT => {
                f.push((i, at(SpectralParam::t(1)), 1));
                f.push((i, at(SpectralParam::t(-1)), 1));
                for j in g.neighbors(i) {
                    f.push((j, a, -(g.incidence(j, i) as i32)));
                }
            }
            FlavorKind::TwistedT => {
                let k = g.dual_exp(i);
                f.push((i, at(SpectralParam::t(k as i32)), 1));
                f.push((i, at(SpectralParam::t(-(k as i32))), 1));
                let flip = |x: SpectralParam| match self.twist {
                    TwistConvention::Literal => x,
                    TwistConvention::Displayed => x.neg(d),
                };
                let target = flip(a);
                for j in g.neighbors(i) {
                    if g.dual_exp(j) == d && d > 1 {
                        f.push((j, flip(a.pow(g.d(i), d)), -1));
                    } else if g.dual_exp(j) == 1 {
                        for r in target.roots(k, d)? {
                            f.push((j, r, -1));
                        }
                    } else {
                        f.push((j, target, -1));
                    }
                }
            }
        }
        Ok(MonoKey::from_factors(f))
    }
}

// ---------------------------------------------------------------------------
// Specializations
// ---------------------------------------------------------------------------

/// The five specialization maps out of the interpolating ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Specialization {
    /// t = 1, α = 1.
    PiQ,
    /// q = ε, α = 0, regrouped into Z-variables.
    PiT,
    /// q = 1, α = d.
    PiBarT,
    /// Π_t followed by ε ↦ 1 into Ȳ-variables.
    PiTPrime,
    /// t = 1, α = 0, regrouped into W-variables.
    PiBarQ,
}

impl Specialization {
    pub const ALL: [Specialization; 5] = [
        Specialization::PiQ,
        Specialization::PiT,
        Specialization::PiBarT,
        Specialization::PiTPrime,
        Specialization::PiBarQ,
    ];

    /// Value of α under the map.
    pub fn alpha(self, d: i64) -> i64 {
        match self {
            Specialization::PiQ => 1,
            Specialization::PiBarT => d,
            _ => 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Specialization::PiQ => "pi_q",
            Specialization::PiT => "pi_t",
            Specialization::PiBarT => "pibar_t",
            Specialization::PiTPrime => "pi_t_prime",
            Specialization::PiBarQ => "pibar_q",
        }
    }
}

/// Expand W-variables of an interpolating monomial into Y-variables.
pub fn expand_w(g: &AlgebraDatum, key: &MonoKey) -> MonoKey {
    let d = g.lacing();
    MonoKey::from_factors(key.factors().iter().flat_map(|&(i, p, e)| {
        let k = d - g.d(i) + 1;
        (0..k).map(move |s| (i, p.mul(SpectralParam::q((2 * s - (k - 1)) as i32), d), e))
    }))
}

/// Convert a monomial of any kind into the Y-spelling used by interpolating characters.
pub fn interp_monomial(g: &AlgebraDatum, m: &Monomial) -> Result<Monomial> {
    match m.kind {
        VarKind::Y => Ok(m.clone()),
        VarKind::W => Ok(Monomial::new(VarKind::Y, m.coeff.clone(), expand_w(g, &m.key))),
        k => Err(Error::Mismatch(format!(
            "{} variables are not interpolating",
            k.symbol()
        ))),
    }
}

/// Image of a key under q = ε (no regrouping): phase e += m.
pub fn key_at_q_eps(key: &MonoKey, d: i64) -> MonoKey {
    key.map_vars(|i, p| (i, SpectralParam::new(p.e + p.m, 0, p.n, d)))
}

pub fn key_at_t1(key: &MonoKey) -> MonoKey {
    key.map_vars(|i, p| (i, SpectralParam { e: p.e, m: p.m, n: 0 }))
}

pub fn key_at_q1(key: &MonoKey) -> MonoKey {
    key.map_vars(|i, p| (i, SpectralParam { e: p.e, m: 0, n: p.n }))
}

/// Regroup a q = ε image into Z-variables: Z_{i,b^k} = ∏_{s<k} Y_{i,ε^{2s} b}.
pub fn regroup_z(g: &AlgebraDatum, key: &MonoKey) -> Result<MonoKey> {
    let d = g.lacing();
    let mut out = Vec::new();
    for i in key.nodes() {
        let k = g.dual_exp(i);
        let content: BTreeMap<SpectralParam, i32> = key.node_content(i).into_iter().collect();
        if k == 1 {
            out.extend(content.iter().map(|(&p, &e)| (i, p, e)));
            continue;
        }
        let mut seen = std::collections::BTreeSet::new();
        for (&p, &e) in &content {
            if seen.contains(&p) {
                continue;
            }
            // the ε²-orbit of p
            let orbit: Vec<SpectralParam> = (0..k)
                .map(|s| {
                    p.mul(
                        SpectralParam {
                            e: 2 * s as i32,
                            m: 0,
                            n: 0,
                        },
                        d,
                    )
                })
                .collect();
            for o in &orbit {
                if content.get(o).copied().unwrap_or(0) != e {
                    return Err(Error::NotInRing(format!(
                        "node {i} content at {} is not a W-block image",
                        fmt_param(p, d)
                    )));
                }
                seen.insert(*o);
            }
            out.push((i, p.pow(k, d), e));
        }
    }
    Ok(MonoKey::from_factors(out))
}

/// Regroup a t = 1 image into W-variables by telescoping along each node.
pub fn regroup_w(g: &AlgebraDatum, key: &MonoKey) -> Result<MonoKey> {
    let d = g.lacing();
    let mut out = Vec::new();
    for i in key.nodes() {
        let k = (d - g.d(i) + 1) as i32;
        let mut content: BTreeMap<SpectralParam, i32> = key.node_content(i).into_iter().collect();
        if k == 1 {
            out.extend(content.iter().map(|(&p, &e)| (i, p, e)));
            continue;
        }
        let max_m: BTreeMap<(i32, i32), i32> = content.keys().fold(BTreeMap::new(), |mut acc, p| {
            let e = acc.entry((p.e, p.n)).or_insert(p.m);
            *e = (*e).max(p.m);
            acc
        });
        while let Some((&p, &u)) = content.iter().next() {
            let limit = max_m[&(p.e, p.n)];
            if p.m + 2 * (k - 1) > limit {
                return Err(Error::NotInRing(format!(
                    "node {i} content does not factor into W-variables at {}",
                    fmt_param(p, d)
                )));
            }
            out.push((i, SpectralParam { m: p.m + (k - 1), ..p }, u));
            for s in 0..k {
                let pos = SpectralParam { m: p.m + 2 * s, ..p };
                let v = content.entry(pos).or_insert(0);
                *v -= u;
                if *v == 0 {
                    content.remove(&pos);
                }
            }
        }
    }
    Ok(MonoKey::from_factors(out))
}

/// Apply one of the five specialization maps to an interpolating character.
pub fn specialize(g: &AlgebraDatum, x: &Character, which: Specialization) -> Result<Character> {
    let d = g.lacing();
    let a = which.alpha(d);
    let out_kind = match which {
        Specialization::PiQ | Specialization::PiBarT => VarKind::Y,
        Specialization::PiT => VarKind::Z,
        Specialization::PiTPrime => VarKind::Yb,
        Specialization::PiBarQ => VarKind::W,
    };
    x.map_terms(out_kind, |k, c| {
        let v = c.eval(a);
        if v.is_zero() {
            return Ok(None);
        }
        let key = match which {
            Specialization::PiQ => key_at_t1(k),
            Specialization::PiBarT => key_at_q1(k),
            Specialization::PiT => regroup_z(g, &key_at_q_eps(k, d))?,
            Specialization::PiTPrime => z_to_ybar(g, &regroup_z(g, &key_at_q_eps(k, d))?)?,
            Specialization::PiBarQ => regroup_w(g, &key_at_t1(k))?,
        };
        Ok(Some((key, AlphaPoly::constant(v))))
    })
}

/// Z_{i,c} ↦ Ȳ_{i,t^{n/k}} where c = b^k and ε is sent to 1.
pub fn z_to_ybar(g: &AlgebraDatum, key: &MonoKey) -> Result<MonoKey> {
    let mut out = Vec::new();
    for &(i, p, e) in key.factors() {
        let k = g.dual_exp(i) as i32;
        if p.n % k != 0 {
            return Err(Error::NotInRing(format!("Z parameter t^{} not a {k}-th power", p.n)));
        }
        out.push((i, SpectralParam::t(p.n / k), e));
    }
    Ok(MonoKey::from_factors(out))
}

/// Equality in the quotient ring: all four defining specializations of x − y vanish.
pub fn quotient_equal(g: &AlgebraDatum, x: &Character, y: &Character) -> Result<bool> {
    let diff = x.sub(y)?;
    for s in [
        Specialization::PiQ,
        Specialization::PiT,
        Specialization::PiBarT,
        Specialization::PiBarQ,
    ] {
        if !specialize(g, &diff, s)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Reduce coefficients modulo α(α−1)(α−d), which is zero in the quotient ring.
pub fn reduce_alpha(g: &AlgebraDatum, x: &Character) -> Character {
    let d = g.lacing();
    let roots: Vec<i64> = if d == 1 { vec![0, 1] } else { vec![0, 1, d] };
    Character::from_terms(
        x.kind(),
        x.terms().map(|(k, c)| (k.clone(), c.reduce_mod_roots(&roots))),
    )
}

/// Convert a BigInt coefficient to i64 where it fits.
pub fn small(c: &BigInt) -> Option<i64> {
    c.to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::build_algebra;

    #[test]
    fn param_format_roundtrip() {
        for (txt, d) in [
            ("1", 2),
            ("q^2 t", 2),
            ("-t^2", 2),
            ("E^1 t^2", 3),
            ("-1", 3),
            ("q^-1", 1),
        ] {
            let mut c = Cursor::new(txt);
            let p = parse_param(&mut c, d).unwrap();
            assert_eq!(fmt_param(p, d), txt);
        }
    }

    #[test]
    fn grammar_examples() {
        let m = parse_monomial("Y[2;1]", 2).unwrap();
        assert_eq!(m.key, MonoKey::var(2, SpectralParam::ONE, 1));
        let m = parse_monomial("(2-a)*Y[1;q^2 t]^-1", 2).unwrap();
        assert_eq!(m.coeff, AlphaPoly::from_coeffs(vec![2.into(), (-1).into()]));
        assert_eq!(m.key, MonoKey::var(1, SpectralParam::qt(2, 1), -1));
        assert_eq!(format_monomial(&m, 2), "(2-a)*Y[1;q^2 t]^-1");
        let m = parse_monomial("Y[1;q]*Y[1;q^-1]", 2).unwrap();
        assert_eq!(format_monomial(&m, 2), "Y[1;q^-1]*Y[1;q]");
        assert!(matches!(parse_monomial("Y[1;1", 2), Err(Error::Parse { .. })));
        assert!(parse_monomial("Y[1;1]*Z[2;1]", 2).is_err());
        let c = parse_monomial("3", 2).unwrap();
        assert!(c.key.is_one());
    }

    #[test]
    fn alphapoly_ops() {
        let a = AlphaPoly::alpha();
        let p = a.mul(&AlphaPoly::constant(2).sub(&a));
        assert_eq!(p.to_string(), "2*a-a^2");
        assert_eq!(parse_alphapoly("2*a-a^2").unwrap(), p);
        assert_eq!(p.eval(2), BigInt::from(0));
        let pts = [(0, BigInt::from(0)), (1, BigInt::from(1)), (2, BigInt::from(0))];
        assert_eq!(AlphaPoly::interpolate(&pts).unwrap(), p);
        let r = a.mul(&a).mul(&a).reduce_mod_roots(&[0, 1, 2]);
        for x in [0, 1, 2] {
            assert_eq!(r.eval(x), BigInt::from(x * x * x));
        }
    }

    #[test]
    fn a_monomials() {
        let a1 = build_algebra("A1").unwrap();
        let f = RingFlavor::standard_q(&a1);
        let a = f.a_monomial(1, SpectralParam::ONE).unwrap();
        assert_eq!(
            a,
            MonoKey::from_factors([(1, SpectralParam::q(1), 1), (1, SpectralParam::q(-1), 1)])
        );
        let b2 = build_algebra("B2").unwrap();
        let a = RingFlavor::folded_t(&b2).a_monomial(1, SpectralParam::ONE).unwrap();
        let want = parse_monomial("Y[1;t]*Y[1;t^-1]*Y[2;1]^-2", 1).unwrap().key;
        assert_eq!(a, want);
        let c2 = build_algebra("C2").unwrap();
        let a = RingFlavor::interp(&c2).a_monomial(2, SpectralParam::qt(2, 1)).unwrap();
        let want = parse_monomial("Y[2;1]*Y[2;q^4 t^2]*Y[1;q t]^-1*Y[1;q^3 t]^-1", 2)
            .unwrap()
            .key;
        assert_eq!(a, want);
    }

    #[test]
    fn twisted_label_rejects_even_a() {
        assert!(matches!(
            RingFlavor::twisted_from_label("A4^(2)"),
            Err(Error::Unsupported(_))
        ));
        assert_eq!(RingFlavor::twisted_from_label("D3^(2)").unwrap().g.label(), "C2");
        assert_eq!(RingFlavor::twisted_from_label("D4^(3)").unwrap().g.label(), "G2");
    }

    #[test]
    fn w_regrouping() {
        let c2 = build_algebra("C2").unwrap();
        let k = parse_monomial("Y[1;q^-1]*Y[1;q]", 2).unwrap().key;
        let w = regroup_w(&c2, &k).unwrap();
        assert_eq!(w, MonoKey::var(1, SpectralParam::ONE, 1));
        assert!(regroup_w(&c2, &MonoKey::var(1, SpectralParam::ONE, 1)).is_err());
        assert_eq!(expand_w(&c2, &w), k);
    }
}
