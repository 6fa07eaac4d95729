//! Small finite fields `GF(p^m)` with table-driven arithmetic.
//!
//! Elements are indexed `0 … p^m − 1` by their coefficient vectors in base
//! `p`: index `Σ cᵢ pⁱ` stands for `Σ cᵢ xⁱ` modulo the field's modulus.

use alloc::vec;
use alloc::vec::Vec;

use crate::perm::{is_prime, MAX_DEGREE};
use crate::{Error, Result};

/// Version tag of [`MODULUS_TABLE`]; recorded in certificates.
pub const MODULUS_TABLE_VERSION: u32 = 1;

/// Built-in moduli, coefficients listed from the constant term upward.
/// Prime fields use the modulus `x`.
pub const MODULUS_TABLE: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),          // x² + x + 1
    (2, 3, &[1, 1, 0, 1]),       // x³ + x + 1
    (3, 2, &[1, 0, 1]),          // x² + 1
    (2, 4, &[1, 1, 0, 0, 1]),    // x⁴ + x + 1
    (5, 2, &[3, 0, 1]),          // x² − 2
    (3, 3, &[1, 2, 0, 1]),       // x³ + 2x + 1
    (2, 5, &[1, 0, 1, 0, 0, 1]), // x⁵ + x² + 1
];

#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u32,
    m: u32,
    modulus: Vec<u32>,
    size: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    generator: usize,
}

impl FiniteField {
    /// `GF(p^m)` using the built-in modulus table.
    pub fn new(p: u32, m: u32) -> Result<Self> {
        if m == 1 && is_prime(p as u64) {
            return Self::with_modulus(p, &[0, 1]);
        }
        let (_, _, modulus) = MODULUS_TABLE
            .iter()
            .find(|&&(tp, tm, _)| tp == p && tm == m)
            .ok_or(Error::UnsupportedField { p, m })?;
        Self::with_modulus(p, modulus)
    }

    /// `GF(p)[x] / (modulus)`; the modulus must be monic and irreducible.
    pub fn with_modulus(p: u32, modulus: &[u32]) -> Result<Self> {
        let m = modulus.len() as u32 - 1;
        if !is_prime(p as u64) || m == 0 || modulus[m as usize] != 1 {
            return Err(Error::UnsupportedField { p, m });
        }
        let size = (p as usize)
            .checked_pow(m)
            .filter(|&s| s <= MAX_DEGREE)
            .ok_or(Error::UnsupportedField { p, m })?;
        if !is_irreducible(p, modulus) {
            return Err(Error::UnsupportedField { p, m });
        }
        let mut field = FiniteField {
            p,
            m,
            modulus: modulus.to_vec(),
            size,
            add: vec![0; size * size],
            mul: vec![0; size * size],
            generator: 0,
        };
        for a in 0..size {
            for b in 0..size {
                let (va, vb) = (field.to_coeffs(a), field.to_coeffs(b));
                let sum: Vec<u32> = va.iter().zip(&vb).map(|(x, y)| (x + y) % p).collect();
                field.add[a * size + b] = field.from_coeffs(&sum) as u8;
                let prod = poly_mulmod(&va, &vb, &field.modulus, p);
                field.mul[a * size + b] = field.from_coeffs(&prod) as u8;
            }
        }
        field.generator = (1..size)
            .find(|&a| field.multiplicative_order(a) == size - 1)
            .expect("finite-field unit group is cyclic");
        Ok(field)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Smallest element index of multiplicative order `p^m − 1`.
    pub fn generator(&self) -> usize {
        self.generator
    }

    pub fn to_coeffs(&self, a: usize) -> Vec<u32> {
        let mut a = a as u32;
        (0..self.m)
            .map(|_| {
                let c = a % self.p;
                a /= self.p;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> usize {
        coeffs
            .iter()
            .rev()
            .fold(0usize, |acc, &c| acc * self.p as usize + c as usize)
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b] as usize
    }

    pub fn neg(&self, a: usize) -> usize {
        (0..self.size).find(|&b| self.add(a, b) == 0).unwrap()
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: usize, mut e: u64) -> usize {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: usize) -> Result<usize> {
        if a == 0 {
            return Err(Error::UnsupportedParams("division by zero".into()));
        }
        Ok(self.pow(a, self.size as u64 - 2))
    }

    pub fn div(&self, a: usize, b: usize) -> Result<usize> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a ↦ a^p`.
    pub fn frobenius(&self, a: usize) -> usize {
        self.pow(a, self.p as u64)
    }

    /// Order of `a` in the unit group; 0 for `a = 0`.
    pub fn multiplicative_order(&self, a: usize) -> usize {
        if a == 0 {
            return 0;
        }
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }
}

fn trim(p: &mut Vec<u32>) {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
}

fn poly_rem(a: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = modulus.len() - 1;
    let lead_inv = mod_inv(*modulus.last().unwrap(), p);
    while r.len() > dm && !(r.len() == 1 && r[0] == 0) {
        let shift = r.len() - 1 - dm;
        let factor = r.last().unwrap() * lead_inv % p;
        for (i, &c) in modulus.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - factor * c % p) % p;
        }
        trim(&mut r);
        if r.len() - 1 < dm {
            break;
        }
    }
    r
}

fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let mut r = poly_rem(&prod, modulus, p);
    r.resize(modulus.len() - 1, 0);
    r
}

fn mod_inv(a: u32, p: u32) -> u32 {
    (1..p).find(|&x| a * x % p == 1).unwrap()
}

/// No monic factor of degree `1 ≤ d ≤ deg/2`, checked by trial division.
fn is_irreducible(p: u32, modulus: &[u32]) -> bool {
    let deg = modulus.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as usize).pow(d as u32);
        for idx in 0..count {
            let mut factor: Vec<u32> = Vec::with_capacity(d + 1);
            let mut x = idx as u32;
            for _ in 0..d {
                factor.push(x % p);
                x /= p;
            }
            factor.push(1);
            let r = poly_rem(modulus, &factor, p);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}
