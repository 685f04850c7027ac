//! Finite fields `GF(p^m)` with `p^m <= 2^16`.
//!
//! An element is stored as a `u32` in `0..q` whose base-`p` digits are the
//! coefficients of its polynomial residue (digit `i` multiplies `x^i`). For
//! prime fields this is the usual residue `0..p`. Multiplication goes through
//! discrete log/exp tables built from a primitive element, so every field is
//! table driven regardless of degree.

use std::fmt;
use std::sync::Arc;

use super::LinalgError;

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1 << 16;

struct Tables {
    p: u32,
    degree: u32,
    order: u32,
    /// Monic modulus coefficients `c_0..c_{m-1}` (the leading 1 is implicit).
    /// Empty for prime fields.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// A finite field. Cheap to clone; clones share their tables.
#[derive(Clone)]
pub struct Field {
    t: Arc<Tables>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.t, &other.t)
            || (self.t.p == other.t.p
                && self.t.degree == other.t.degree
                && self.t.modulus == other.t.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.t.degree == 1 {
            write!(f, "GF({})", self.t.p)
        } else {
            write!(f, "GF({}^{})", self.t.p, self.t.degree)
        }
    }
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` into `(p, m)` with `q = p^m`, if `q` is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut rest, mut m) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

/// Smallest prime power strictly greater than `n`.
pub fn next_prime_power_above(n: u32) -> u32 {
    (n + 1..).find(|&q| prime_power(q).is_some()).unwrap()
}

impl Field {
    /// The prime field `GF(p)`.
    pub fn prime(p: u32) -> Result<Self, LinalgError> {
        Self::new(p, 1)
    }

    /// The field of order `q`, which must be a prime power.
    pub fn with_order(q: u32) -> Result<Self, LinalgError> {
        let (p, m) = prime_power(q).ok_or(LinalgError::InvalidField(format!(
            "{q} is not a prime power"
        )))?;
        Self::new(p, m)
    }

    /// `GF(p^m)`. The modulus is the first monic degree-`m` polynomial (in
    /// lexicographic order of its low coefficients) whose root `x` generates
    /// the multiplicative group, so the modulus is irreducible and primitive.
    pub fn new(p: u32, m: u32) -> Result<Self, LinalgError> {
        if !is_prime(p) {
            return Err(LinalgError::InvalidField(format!("{p} is not prime")));
        }
        if m == 0 {
            return Err(LinalgError::InvalidField("extension degree 0".into()));
        }
        let order = (p as u64).checked_pow(m).filter(|&q| q <= MAX_ORDER as u64).ok_or(
            LinalgError::InvalidField(format!("{p}^{m} exceeds {MAX_ORDER}")),
        )? as u32;

        let (modulus, exp) = if m == 1 {
            let g = (1..p)
                .find(|&g| {
                    let mut x = 1u32;
                    (1..p - 1).all(|_| {
                        x = x * g % p;
                        x != 1
                    })
                })
                .unwrap_or(1);
            let mut exp = Vec::with_capacity(order as usize - 1);
            let mut x = 1u32;
            for _ in 0..order - 1 {
                exp.push(x);
                x = x * g % p;
            }
            (Vec::new(), exp)
        } else {
            find_primitive_modulus(p, m, order)
        };

        let mut log = vec![0u32; order as usize];
        for (i, &v) in exp.iter().enumerate() {
            log[v as usize] = i as u32;
        }
        Ok(Field {
            t: Arc::new(Tables {
                p,
                degree: m,
                order,
                modulus,
                exp,
                log,
            }),
        })
    }

    pub fn order(&self) -> u32 {
        self.t.order
    }

    pub fn characteristic(&self) -> u32 {
        self.t.p
    }

    pub fn degree(&self) -> u32 {
        self.t.degree
    }

    /// Coefficients `c_0..c_{m-1}` of the monic modulus; empty for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.t.modulus
    }

    /// Maps an integer into the prime subfield.
    pub fn from_int(&self, v: i64) -> u32 {
        v.rem_euclid(self.t.p as i64) as u32
    }

    pub fn contains(&self, a: u32) -> bool {
        a < self.t.order
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let p = self.t.p;
        if self.t.degree == 1 {
            return (a + b) % p;
        }
        let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let p = self.t.p;
        if self.t.degree == 1 {
            return (p - a) % p;
        }
        let (mut a, mut out, mut place) = (a, 0, 1);
        while a > 0 {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = &*self.t;
        let n = t.order - 1;
        t.exp[((t.log[a as usize] + t.log[b as usize]) % n) as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let t = &*self.t;
        let n = t.order - 1;
        Some(t.exp[((n - t.log[a as usize]) % n) as usize])
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.t.order
    }
}

/// Multiplies the digit-encoded polynomial `v` by `x` modulo the monic
/// polynomial with low coefficients `modulus`.
fn times_x(v: u32, p: u32, modulus: &[u32]) -> u32 {
    let m = modulus.len();
    let mut digits = vec![0u32; m + 1];
    let mut rest = v;
    for d in digits.iter_mut().skip(1) {
        *d = rest % p;
        rest /= p;
    }
    let top = digits[m];
    let mut out = 0u32;
    let mut place = 1u32;
    for i in 0..m {
        let c = (digits[i] + (p - top * modulus[i] % p)) % p;
        out += c * place;
        place *= p;
    }
    out
}

fn find_primitive_modulus(p: u32, m: u32, order: u32) -> (Vec<u32>, Vec<u32>) {
    let low = p.pow(m);
    for code in 0..low {
        let mut modulus = Vec::with_capacity(m as usize);
        let mut c = code;
        for _ in 0..m {
            modulus.push(c % p);
            c /= p;
        }
        if modulus[0] == 0 {
            continue;
        }
        let mut exp = Vec::with_capacity(order as usize - 1);
        let mut x = 1u32;
        let mut ok = true;
        for i in 0..order - 1 {
            if i > 0 && (x == 1 || x == 0) {
                ok = false;
                break;
            }
            exp.push(x);
            x = times_x(x, p, &modulus);
        }
        if ok && x == 1 {
            return (modulus, exp);
        }
    }
    unreachable!("a primitive polynomial of every degree exists")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_axioms(f: &Field) {
        let q = f.order();
        for a in 0..q {
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "{f} a={a}");
            }
            for b in 0..q {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
            }
        }
        // distributivity on a sample
        for a in (0..q).step_by(((q / 7) as usize).max(1)) {
            for b in (0..q).step_by(((q / 5) as usize).max(1)) {
                for c in (0..q).step_by(((q / 3) as usize).max(1)) {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn prime_fields() {
        for p in [2, 3, 5, 7, 47] {
            check_axioms(&Field::prime(p).unwrap());
        }
        let f = Field::prime(3).unwrap();
        assert_eq!(f.mul(2, 2), 1);
        assert_eq!(f.from_int(-1), 2);
    }

    #[test]
    fn extension_fields() {
        for q in [4, 8, 9, 16, 25, 27, 49] {
            let f = Field::with_order(q).unwrap();
            assert_eq!(f.order(), q);
            check_axioms(&f);
        }
    }

    #[test]
    fn gf4_modulus_is_x2_x_1() {
        let f = Field::with_order(4).unwrap();
        assert_eq!(f.modulus(), &[1, 1]);
        // x * x = x + 1
        assert_eq!(f.mul(2, 2), 3);
    }

    #[test]
    fn rejects_non_prime_powers() {
        assert!(Field::with_order(6).is_err());
        assert!(Field::with_order(1).is_err());
        assert!(Field::new(4, 1).is_err());
        assert!(Field::new(2, 17).is_err());
    }

    #[test]
    fn next_prime_power() {
        assert_eq!(next_prime_power_above(45), 47);
        assert_eq!(next_prime_power_above(6), 7);
        assert_eq!(next_prime_power_above(7), 8);
        assert_eq!(next_prime_power_above(0), 2);
    }
}
