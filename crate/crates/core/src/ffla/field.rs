use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A field element, stored as an integer in `[0, q)`.
///
/// For an extension field GF(p^m) the base-p digits of the integer are the
/// coefficients of the residue polynomial, least significant digit first.
pub type Elem = u16;

const MAX_ORDER: u32 = 1 << 16;

#[derive(Debug)]
struct FieldInner {
    p: u32,
    m: u32,
    q: u32,
    /// Monic reduction polynomial, coefficients `c_0..c_m`, each in `[0, p)`.
    reduction: Vec<u16>,
    /// `exp[i] = g^i` for a fixed generator `g`, `i` in `[0, q-1)`.
    exp: Vec<Elem>,
    /// `log[e]` defined for `e` in `[1, q)`; `log[0]` is unused.
    log: Vec<u16>,
}

/// A finite field GF(p^m) with `q = p^m <= 2^16`.
///
/// Cloning is cheap; all arithmetic is table-driven after construction and
/// values are immutable, so a `Field` can be shared freely across threads.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.m == other.0.m && self.0.reduction == other.0.reduction
    }
}
impl Eq for Field {}

impl std::hash::Hash for Field {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.m.hash(state);
        self.0.reduction.hash(state);
    }
}

impl PartialOrd for Field {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Field {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.0.p, self.0.m, &self.0.reduction).cmp(&(other.0.p, other.0.m, &other.0.reduction))
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0.q)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0.q)
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Multiply two polynomials over GF(p), reducing modulo `reduction`.
fn poly_mul_mod(a: &[u16], b: &[u16], reduction: &[u16], p: u32) -> Vec<u16> {
    let m = reduction.len() - 1;
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai as u32 * bj as u32) % p;
        }
    }
    // Reduce: subtract multiples of the monic reduction polynomial.
    for d in (m..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        for t in 0..m {
            let sub = c * reduction[t] as u32 % p;
            prod[d - m + t] = (prod[d - m + t] + p - sub) % p;
        }
    }
    prod.truncate(m.max(1));
    prod.iter().map(|&c| c as u16).collect()
}

fn digits(mut e: u32, p: u32, m: u32) -> Vec<u16> {
    let mut out = Vec::with_capacity(m as usize);
    for _ in 0..m {
        out.push((e % p) as u16);
        e /= p;
    }
    out
}

fn undigits(d: &[u16], p: u32) -> u32 {
    let mut e = 0u32;
    for &c in d.iter().rev() {
        e = e * p + c as u32;
    }
    e
}

/// Test irreducibility over GF(p) by trial division with all monic
/// polynomials of degree up to deg/2. Fine for the small degrees used here.
fn is_irreducible(poly: &[u16], p: u32) -> bool {
    let deg = poly.len() - 1;
    if deg == 0 {
        return false;
    }
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        // All monic polynomials of degree d: p^d choices of lower coefficients.
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut div = digits(idx as u32, p, d as u32);
            div.push(1);
            if poly_divides(&div, poly, p) {
                return false;
            }
        }
    }
    true
}

/// Whether monic `div` divides `poly` exactly over GF(p).
fn poly_divides(div: &[u16], poly: &[u16], p: u32) -> bool {
    let mut rem: Vec<u32> = poly.iter().map(|&c| c as u32).collect();
    let dd = div.len() - 1;
    while rem.len() > dd {
        let lead = *rem.last().unwrap();
        if lead != 0 {
            let shift = rem.len() - 1 - dd;
            for t in 0..=dd {
                let sub = lead * div[t] as u32 % p;
                rem[shift + t] = (rem[shift + t] + p - sub) % p;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c == 0)
}

impl Field {
    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<Field> {
        Field::new(p, 1, vec![0, 1])
    }

    /// GF(q) for a prime power q, with the default reduction polynomial
    /// (the one whose coefficient word, read least significant digit first,
    /// is smallest).
    pub fn gf(q: u32) -> Result<Field> {
        let (p, m) = factor_prime_power(q)?;
        if m == 1 {
            return Field::prime(p);
        }
        let poly = default_reduction(p, m).ok_or_else(|| {
            Error::InvalidField(format!("no irreducible polynomial found for GF({q})"))
        })?;
        Field::new(p, m, poly)
    }

    /// Build GF(p^m) from an explicit monic reduction polynomial of degree m.
    pub fn new(p: u32, m: u32, reduction: Vec<u16>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if m < 1 {
            return Err(Error::InvalidField("degree must be at least 1".into()));
        }
        let q = (p as u64)
            .checked_pow(m)
            .filter(|&q| q <= MAX_ORDER as u64)
            .ok_or_else(|| Error::InvalidField(format!("order {p}^{m} exceeds 2^16")))?
            as u32;
        if reduction.len() != m as usize + 1 {
            return Err(Error::InvalidField(format!(
                "reduction polynomial must have {} coefficients, got {}",
                m + 1,
                reduction.len()
            )));
        }
        if reduction[m as usize] != 1 {
            return Err(Error::InvalidField(
                "reduction polynomial must be monic".into(),
            ));
        }
        if reduction.iter().any(|&c| c as u32 >= p) {
            return Err(Error::InvalidField(
                "reduction coefficients must lie in [0, p)".into(),
            ));
        }
        if m > 1 && !is_irreducible(&reduction, p) {
            return Err(Error::InvalidField(
                "reduction polynomial is reducible".into(),
            ));
        }

        let mut inner = FieldInner {
            p,
            m,
            q,
            reduction,
            exp: Vec::new(),
            log: vec![0; q as usize],
        };
        build_tables(&mut inner)?;
        Ok(Field(Arc::new(inner)))
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.m
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    pub fn reduction(&self) -> &[u16] {
        &self.0.reduction
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn one(&self) -> Elem {
        1
    }

    /// All field elements in ascending integer order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.0.q as Elem
    }

    pub fn is_element(&self, e: Elem) -> bool {
        (e as u32) < self.0.q
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let f = &*self.0;
        if f.p == 2 {
            return a ^ b;
        }
        if f.m == 1 {
            return ((a as u32 + b as u32) % f.p) as Elem;
        }
        let (mut e, mut x, mut y, mut mult) = (0u32, a as u32, b as u32, 1u32);
        for _ in 0..f.m {
            let s = (x % f.p + y % f.p) % f.p;
            e += s * mult;
            mult *= f.p;
            x /= f.p;
            y /= f.p;
        }
        e as Elem
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let f = &*self.0;
        if f.p == 2 {
            return a;
        }
        if f.m == 1 {
            return if a == 0 { 0 } else { (f.p - a as u32) as Elem };
        }
        let (mut e, mut x, mut mult) = (0u32, a as u32, 1u32);
        for _ in 0..f.m {
            let d = x % f.p;
            e += if d == 0 { 0 } else { f.p - d } * mult;
            mult *= f.p;
            x /= f.p;
        }
        e as Elem
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let f = &*self.0;
        let i = f.log[a as usize] as u32 + f.log[b as usize] as u32;
        f.exp[(i % (f.q - 1)) as usize]
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::Precondition("zero has no inverse".into()));
        }
        let f = &*self.0;
        let i = f.log[a as usize] as u32;
        Ok(f.exp[((f.q - 1 - i) % (f.q - 1)) as usize])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }
}

fn factor_prime_power(q: u32) -> Result<(u32, u32)> {
    if !(2..=MAX_ORDER).contains(&q) {
        return Err(Error::InvalidField(format!("order {q} out of range")));
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut m = 0;
            let mut r = q;
            while r.is_multiple_of(p) {
                r /= p;
                m += 1;
            }
            if r != 1 {
                return Err(Error::InvalidField(format!("{q} is not a prime power")));
            }
            return Ok((p, m));
        }
        p += 1;
    }
    Ok((q, 1))
}

fn default_reduction(p: u32, m: u32) -> Option<Vec<u16>> {
    let count = (p as u64).pow(m);
    for idx in 0..count {
        let mut poly = digits(idx as u32, p, m);
        poly.push(1);
        if is_irreducible(&poly, p) {
            return Some(poly);
        }
    }
    None
}

fn build_tables(f: &mut FieldInner) -> Result<()> {
    let q = f.q;
    if q == 2 {
        f.exp = vec![1];
        f.log[1] = 0;
        return Ok(());
    }
    // Find a multiplicative generator by direct order computation.
    'cand: for cand in 2..q {
        let cd = digits(cand, f.p, f.m);
        let mut cur = vec![0u16; f.m as usize];
        cur[0] = 1;
        let mut exp = Vec::with_capacity((q - 1) as usize);
        for _ in 0..q - 1 {
            exp.push(undigits(&cur, f.p) as Elem);
            cur = poly_mul_mod(&cur, &cd, &f.reduction, f.p);
            if undigits(&cur, f.p) == 1 && exp.len() < (q - 1) as usize {
                continue 'cand; // order too small
            }
        }
        if undigits(&cur, f.p) != 1 {
            continue;
        }
        for (i, &e) in exp.iter().enumerate() {
            f.log[e as usize] = i as u16;
        }
        f.exp = exp;
        return Ok(());
    }
    Err(Error::InvalidField(
        "no multiplicative generator found".into(),
    ))
}
