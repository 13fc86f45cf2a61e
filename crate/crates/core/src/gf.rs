//! Small finite fields GF(p^k) as lookup tables.
//!
//! Elements are the integers `0..q`; element `a` stands for the polynomial
//! whose base-`p` digits are the coefficients of `a`. `0` and `1` are the
//! additive and multiplicative identities.

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Field {
    p: usize,
    k: usize,
    q: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    primitive: usize,
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Splits `q` as `p^k` with `p` prime, if possible.
pub fn prime_power(q: usize) -> Option<(usize, usize)> {
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut k = 0;
    let mut m = q;
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

impl Field {
    pub fn new(q: usize) -> Result<Field> {
        let (p, k) = prime_power(q)
            .filter(|_| q <= 1 << 12)
            .ok_or_else(|| Error::Precondition(format!("{q} is not a supported prime power")))?;
        let modulus = irreducible(p, k);
        let digits = |mut a: usize| -> Vec<usize> {
            (0..k)
                .map(|_| {
                    let d = a % p;
                    a /= p;
                    d
                })
                .collect()
        };
        let undigits = |v: &[usize]| v.iter().rev().fold(0, |acc, &d| acc * p + d);
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = undigits(&sum) as u16;
                let mut prod = vec![0usize; 2 * k];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                reduce_mod(&mut prod, &modulus, p);
                mul[a * q + b] = undigits(&prod[..k]) as u16;
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u16)
            .collect();
        let inv = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..q).find(|&b| mul[a * q + b] == 1).unwrap() as u16
                }
            })
            .collect();
        let mut field = Field {
            p,
            k,
            q,
            add,
            mul,
            neg,
            inv,
            primitive: 1,
        };
        field.primitive = (1..q)
            .find(|&a| field.multiplicative_order(a) == q - 1)
            .expect("multiplicative group is cyclic");
        Ok(field)
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    /// A generator of the multiplicative group.
    pub fn primitive(&self) -> usize {
        self.primitive
    }

    /// `1, ω, ω², …, ω^{k−1}` for the primitive element ω: a basis over the prime field.
    pub fn additive_basis(&self) -> Vec<usize> {
        // Powers of a primitive element generate the field, so the first k are independent.
        let mut out = vec![1];
        for _ in 1..self.k {
            out.push(self.mul(*out.last().unwrap(), self.primitive));
        }
        out
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        assert!(a != 0, "zero has no inverse");
        self.inv[a] as usize
    }

    fn multiplicative_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 1 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }
}

fn reduce_mod(poly: &mut [usize], modulus: &[usize], p: usize) {
    let k = modulus.len() - 1;
    for i in (k..poly.len()).rev() {
        let c = poly[i];
        if c == 0 {
            continue;
        }
        // modulus is monic: subtract c · x^{i−k} · modulus
        for (j, &m) in modulus.iter().enumerate() {
            let idx = i - k + j;
            poly[idx] = (poly[idx] + p * p - c * m % p) % p;
        }
    }
}

/// Coefficients (constant term first) of the first monic irreducible
/// polynomial of degree `k` over GF(p) in lexicographic order.
fn irreducible(p: usize, k: usize) -> Vec<usize> {
    if k == 1 {
        return vec![0, 1];
    }
    let count = p.pow(k as u32);
    (0..count)
        .map(|c| {
            let mut poly: Vec<usize> = (0..k).map(|i| c / p.pow(i as u32) % p).collect();
            poly.push(1);
            poly
        })
        .find(|poly| poly[0] != 0 && !has_factor(poly, p))
        .expect("irreducible polynomials exist in every degree")
}

fn has_factor(poly: &[usize], p: usize) -> bool {
    let k = poly.len() - 1;
    for d in 1..=k / 2 {
        for c in 0..p.pow(d as u32) {
            let mut divisor: Vec<usize> = (0..d).map(|i| c / p.pow(i as u32) % p).collect();
            divisor.push(1);
            let mut rem = poly.to_vec();
            reduce_mod(&mut rem, &divisor, p);
            if rem[..d].iter().all(|&x| x == 0) {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_hold() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
            let f = Field::new(q).unwrap();
            for a in 0..q {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in 0..q {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_non_prime_powers() {
        assert!(Field::new(6).is_err());
        assert!(Field::new(1).is_err());
        assert_eq!(prime_power(49), Some((7, 2)));
    }
}
