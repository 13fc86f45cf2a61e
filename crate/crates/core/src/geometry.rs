//! Affine and projective spaces over finite fields, with their full
//! affine and projective special linear groups as permutation groups.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::gf::{is_prime, Field};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// `GF(p)^d` with vectors indexed by `Σ v_i p^i`.
#[derive(Clone, Debug)]
pub struct AffineContext {
    p: usize,
    d: usize,
    n: usize,
}

impl AffineContext {
    pub fn new(d: usize, p: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Precondition(format!("{p} is not prime")));
        }
        if d == 0 {
            return Err(Error::Precondition("dimension must be positive".into()));
        }
        let n = p
            .checked_pow(d as u32)
            .filter(|&n| n <= 1 << 16)
            .ok_or_else(|| Error::Precondition(format!("{p}^{d} points is too many")))?;
        Ok(AffineContext { p, d, n })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn vector(&self, mut point: usize) -> Vec<usize> {
        (0..self.d)
            .map(|_| {
                let c = point % self.p;
                point /= self.p;
                c
            })
            .collect()
    }

    pub fn point(&self, v: &[usize]) -> usize {
        v.iter().rev().fold(0, |acc, &c| acc * self.p + c % self.p)
    }

    /// `e_0` is the origin and `e_1, …, e_d` the standard basis.
    pub fn e(&self, i: usize) -> Vec<usize> {
        let mut v = vec![0; self.d];
        if i > 0 {
            v[i - 1] = 1;
        }
        v
    }

    pub fn add(&self, a: &[usize], b: &[usize]) -> Vec<usize> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    pub fn scale(&self, c: usize, a: &[usize]) -> Vec<usize> {
        a.iter().map(|x| c * x % self.p).collect()
    }

    /// Permutation `v ↦ A v + b`.
    pub fn affine_map(&self, a: &[Vec<usize>], b: &[usize]) -> Permutation {
        let images = (0..self.n)
            .map(|x| {
                let v = self.vector(x);
                let w: Vec<usize> = (0..self.d)
                    .map(|i| (0..self.d).map(|j| a[i][j] * v[j]).sum::<usize>() + b[i])
                    .collect();
                self.point(&w) as u32
            })
            .collect();
        Permutation::from_raw(images)
    }

    /// `|AGL(d, p)| = p^d · ∏_{i<d} (p^d − p^i)`.
    pub fn agl_order(&self) -> u128 {
        let n = self.n as u128;
        (0..self.d).fold(n, |acc, i| acc * (n - (self.p as u128).pow(i as u32)))
    }

    /// The full affine group AGL(d, p).
    pub fn full_group(&self) -> PermGroup {
        let d = self.d;
        let ident = |d: usize| -> Vec<Vec<usize>> {
            (0..d).map(|i| (0..d).map(|j| usize::from(i == j)).collect()).collect()
        };
        let zero = vec![0; d];
        let mut gens = vec![self.affine_map(&ident(d), &self.e(1))];
        let omega = (1..self.p)
            .find(|&a| (1..self.p - 1).all(|e| mod_pow(a, e, self.p) != 1))
            .unwrap_or(1);
        let mut diag = ident(d);
        diag[0][0] = omega;
        gens.push(self.affine_map(&diag, &zero));
        for i in 0..d.saturating_sub(1) {
            let mut up = ident(d);
            up[i][i + 1] = 1;
            gens.push(self.affine_map(&up, &zero));
            let mut down = ident(d);
            down[i + 1][i] = 1;
            gens.push(self.affine_map(&down, &zero));
        }
        PermGroup::with_known_order(self.n, gens, self.agl_order())
            .expect("standard generators of AGL(d, p)")
    }
}

fn mod_pow(a: usize, e: usize, p: usize) -> usize {
    (0..e).fold(1, |acc, _| acc * a % p)
}

/// Projective space `PG(d−1, q)`: one-dimensional subspaces of `GF(q)^d`,
/// each represented by the vector whose first nonzero coordinate is 1.
#[derive(Clone, Debug)]
pub struct ProjectiveContext {
    d: usize,
    field: Field,
    reps: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl ProjectiveContext {
    pub fn new(d: usize, q: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::Precondition("projective dimension needs d ≥ 2".into()));
        }
        let field = Field::new(q)?;
        let total = q
            .checked_pow(d as u32)
            .filter(|&t| t <= 1 << 16)
            .ok_or_else(|| Error::Precondition(format!("{q}^{d} vectors is too many")))?;
        let mut reps = Vec::new();
        for code in 0..total {
            // Most significant coordinate first, so the list is lexicographic.
            let v: Vec<usize> = (0..d).map(|i| code / q.pow((d - 1 - i) as u32) % q).collect();
            if v.iter().find(|&&c| c != 0) == Some(&1) {
                reps.push(v);
            }
        }
        let index = reps.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        Ok(ProjectiveContext {
            d,
            field,
            reps,
            index,
        })
    }

    pub fn q(&self) -> usize {
        self.field.order()
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn size(&self) -> usize {
        self.reps.len()
    }

    pub fn representative(&self, point: usize) -> &[usize] {
        &self.reps[point]
    }

    pub fn normalize(&self, v: &[usize]) -> Option<Vec<usize>> {
        let lead = *v.iter().find(|&&c| c != 0)?;
        let s = self.field.inv(lead);
        Some(v.iter().map(|&c| self.field.mul(s, c)).collect())
    }

    /// The point `[v]`; `None` for the zero vector.
    pub fn point(&self, v: &[usize]) -> Option<usize> {
        self.normalize(v).map(|w| self.index[&w])
    }

    /// Standard basis vector `e_i`, 1-based.
    pub fn e(&self, i: usize) -> Vec<usize> {
        let mut v = vec![0; self.d];
        v[i - 1] = 1;
        v
    }

    pub fn add(&self, a: &[usize], b: &[usize]) -> Vec<usize> {
        a.iter().zip(b).map(|(&x, &y)| self.field.add(x, y)).collect()
    }

    /// Permutation `[v] ↦ [A v]` for an invertible matrix `A`.
    pub fn linear_map(&self, a: &[Vec<usize>]) -> Permutation {
        let f = &self.field;
        let images = self
            .reps
            .iter()
            .map(|v| {
                let w: Vec<usize> = (0..self.d)
                    .map(|i| (0..self.d).fold(0, |acc, j| f.add(acc, f.mul(a[i][j], v[j]))))
                    .collect();
                self.point(&w).expect("invertible matrix") as u32
            })
            .collect();
        Permutation::from_raw(images)
    }

    /// `|PSL(d, q)| = q^{d(d−1)/2} ∏_{i=2}^{d} (q^i − 1) / gcd(d, q − 1)`.
    pub fn psl_order(&self) -> u128 {
        let q = self.q() as u128;
        let d = self.d as u32;
        let mut order = q.pow(d * (d - 1) / 2);
        for i in 2..=d {
            order *= q.pow(i) - 1;
        }
        order / gcd(self.d as u128, q - 1)
    }

    /// PSL(d, q) generated by elementary transvections.
    pub fn full_group(&self) -> PermGroup {
        let d = self.d;
        let mut gens = Vec::new();
        for lambda in self.field.additive_basis() {
            for i in 0..d - 1 {
                for (r, c) in [(i, i + 1), (i + 1, i)] {
                    let mut a: Vec<Vec<usize>> =
                        (0..d).map(|x| (0..d).map(|y| usize::from(x == y)).collect()).collect();
                    a[r][c] = lambda;
                    gens.push(self.linear_map(&a));
                }
            }
        }
        PermGroup::with_known_order(self.size(), gens, self.psl_order())
            .expect("transvections generate SL(d, q)")
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
