//! Builders for the groups the engine works with: affine groups over small
//! fields, symmetric/alternating/cyclic groups, wreath products and disjoint
//! direct products. Every builder checks the order of its result against
//! the closed form.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::field::FiniteField;
use crate::perm::{is_prime, Permutation, MAX_DEGREE};
use crate::{Error, PermGroup, Result};

fn check_degree(degree: usize) -> Result<()> {
    if degree > MAX_DEGREE {
        return Err(Error::DegreeCapExceeded {
            degree,
            cap: MAX_DEGREE,
        });
    }
    Ok(())
}

fn verified(group: PermGroup, expected: BigUint, what: &str) -> Result<PermGroup> {
    if *group.order() != expected {
        return Err(Error::VerificationFailed(format!(
            "{what}: order {} but expected {expected}",
            group.order()
        )));
    }
    Ok(group)
}

fn perm_from_fn(degree: usize, f: impl Fn(usize) -> usize) -> Permutation {
    let images: Vec<usize> = (0..degree).map(f).collect();
    Permutation::from_images(&images).expect("builder produced a bijection")
}

/// `AS(p^m)`: `x ↦ x + 1`, `x ↦ γx` for the field generator `γ`, and `x ↦ x^p`.
/// Order `m(p^m − 1)p^m`.
pub fn affine_semilinear(p: u32, m: u32) -> Result<PermGroup> {
    let f = FiniteField::new(p, m)?;
    let q = f.size();
    let gamma = f.generator();
    let gens = alloc::vec![
        perm_from_fn(q, |x| f.add(x, 1)),
        perm_from_fn(q, |x| f.mul(gamma, x)),
        perm_from_fn(q, |x| f.frobenius(x)),
    ];
    let g = PermGroup::new(q, gens)?;
    let expected = BigUint::from(m) * BigUint::from(q - 1) * BigUint::from(q);
    verified(g, expected, "AS")
}

/// Which affine group [`affine_linear`] builds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AffineVariant {
    /// `AGL(m, p)`.
    General,
    /// `ASL(m, p)`.
    Special,
    /// `AΓL(1, p^m) = AS(p^m)`.
    Semilinear1Dim,
}

/// Affine groups on `GF(p)^m`, points indexed by base-`p` coefficient vectors
/// (coordinate 0 least significant).
///
/// `SL(m, p)` is generated by the elementary transvections; `GL(m, p)` adds
/// `diag(ω, 1, …, 1)` for a primitive root `ω`.
pub fn affine_linear(m: u32, p: u32, variant: AffineVariant) -> Result<PermGroup> {
    if variant == AffineVariant::Semilinear1Dim {
        return affine_semilinear(p, m);
    }
    if !is_prime(p as u64) || m == 0 {
        return Err(Error::UnsupportedParams(format!(
            "affine group over GF({p})^{m}"
        )));
    }
    let q = (p as usize)
        .checked_pow(m)
        .ok_or(Error::UnsupportedParams(format!("{p}^{m} too large")))?;
    check_degree(q)?;
    let f = FiniteField::new(p, 1)?;
    let (p_us, m_us) = (p as usize, m as usize);
    let to_vec = |x: usize| -> Vec<usize> {
        let mut x = x;
        (0..m_us)
            .map(|_| {
                let c = x % p_us;
                x /= p_us;
                c
            })
            .collect()
    };
    let from_vec = |v: &[usize]| v.iter().rev().fold(0, |acc, &c| acc * p_us + c);
    // linear map given by a matrix acting on column vectors
    let linear = |mat: &[Vec<usize>]| {
        perm_from_fn(q, |x| {
            let v = to_vec(x);
            let w: Vec<usize> = (0..m_us)
                .map(|i| (0..m_us).map(|j| mat[i][j] * v[j]).sum::<usize>() % p_us)
                .collect();
            from_vec(&w)
        })
    };
    let identity_matrix = || -> Vec<Vec<usize>> {
        (0..m_us)
            .map(|i| (0..m_us).map(|j| usize::from(i == j)).collect())
            .collect()
    };

    let mut gens = alloc::vec![perm_from_fn(q, |x| {
        let mut v = to_vec(x);
        v[0] = (v[0] + 1) % p_us;
        from_vec(&v)
    })];
    for i in 0..m_us {
        for j in 0..m_us {
            if i != j {
                let mut mat = identity_matrix();
                mat[i][j] = 1;
                gens.push(linear(&mat));
            }
        }
    }
    if variant == AffineVariant::General {
        let mut mat = identity_matrix();
        mat[0][0] = f.generator();
        gens.push(linear(&mat));
    }
    let g = PermGroup::new(q, gens)?;

    let mut gl = BigUint::from(1u32);
    for i in 0..m {
        gl *= BigUint::from(q) - BigUint::from(p).pow(i);
    }
    let linear_order = match variant {
        AffineVariant::General => gl,
        _ => gl / BigUint::from(p - 1),
    };
    verified(g, linear_order * BigUint::from(q), "affine linear group")
}

pub fn symmetric(n: usize) -> Result<PermGroup> {
    check_degree(n)?;
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Permutation::from_cycles(n, &[&[0, 1]])?);
        let cycle: Vec<usize> = (0..n).collect();
        gens.push(Permutation::from_cycles(n, &[&cycle])?);
    }
    let g = PermGroup::new(n, gens)?;
    verified(g, factorial(n), "Sym")
}

pub fn alternating(n: usize) -> Result<PermGroup> {
    check_degree(n)?;
    let mut gens = Vec::new();
    if n >= 3 {
        gens.push(Permutation::from_cycles(n, &[&[0, 1, 2]])?);
        let cycle: Vec<usize> = if n % 2 == 1 {
            (0..n).collect()
        } else {
            (1..n).collect()
        };
        gens.push(Permutation::from_cycles(n, &[&cycle])?);
    }
    let g = PermGroup::new(n, gens)?;
    let expected = if n >= 2 {
        factorial(n) / BigUint::from(2u32)
    } else {
        BigUint::from(1u32)
    };
    verified(g, expected, "Alt")
}

pub fn cyclic(n: usize) -> Result<PermGroup> {
    check_degree(n)?;
    let cycle: Vec<usize> = (0..n).collect();
    let g = PermGroup::new(n, alloc::vec![Permutation::from_cycles(n, &[&cycle])?])?;
    verified(g, BigUint::from(n.max(1)), "Cyc")
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, k| acc * BigUint::from(k))
}

/// How a wreath product acts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WreathAction {
    /// On `n` disjoint copies of the inner points; point `(i, x)` is `i·a + x`.
    Imprimitive,
    /// On `n`-tuples of inner points, coordinatewise base group and
    /// coordinate-permuting top group.
    Product,
}

/// Point index of an `n`-tuple in the product action, most significant
/// coordinate first in radix `a`.
pub fn encode_tuple(coords: &[usize], a: usize) -> usize {
    coords.iter().fold(0, |acc, &c| acc * a + c)
}

/// Inverse of [`encode_tuple`].
pub fn decode_tuple(mut point: usize, a: usize, n: usize) -> Vec<usize> {
    let mut coords = alloc::vec![0; n];
    for j in (0..n).rev() {
        coords[j] = point % a;
        point /= a;
    }
    coords
}

/// `G₁ ≀ W` with `W` acting on `n` blocks or coordinates. Copies of `G₁`'s
/// generators are placed on one block (coordinate) per orbit of `W`.
/// Order `|G₁|ⁿ·|W|`.
pub fn wreath(inner: &PermGroup, top: &PermGroup, action: WreathAction) -> Result<PermGroup> {
    let a = inner.degree();
    let n = top.degree();
    let reps: Vec<usize> = top.orbits().iter().map(|o| o[0]).collect();
    let expected = inner.order().pow(n as u32) * top.order();
    let mut gens = Vec::new();
    match action {
        WreathAction::Imprimitive => {
            let degree =
                a.checked_mul(n)
                    .filter(|&d| d <= MAX_DEGREE)
                    .ok_or(Error::DegreeCapExceeded {
                        degree: a.saturating_mul(n),
                        cap: MAX_DEGREE,
                    })?;
            for &block in &reps {
                for g in inner.generators() {
                    gens.push(perm_from_fn(degree, |x| {
                        if x / a == block {
                            block * a + g.image(x % a)
                        } else {
                            x
                        }
                    }));
                }
            }
            for w in top.generators() {
                gens.push(perm_from_fn(degree, |x| w.image(x / a) * a + x % a));
            }
            let g = PermGroup::new(degree, gens)?;
            verified(g, expected, "imprimitive wreath product")
        }
        WreathAction::Product => {
            let degree = a.checked_pow(n as u32).filter(|&d| d <= MAX_DEGREE).ok_or(
                Error::DegreeCapExceeded {
                    degree: usize::MAX,
                    cap: MAX_DEGREE,
                },
            )?;
            for &coord in &reps {
                for g in inner.generators() {
                    gens.push(perm_from_fn(degree, |x| {
                        let mut c = decode_tuple(x, a, n);
                        c[coord] = g.image(c[coord]);
                        encode_tuple(&c, a)
                    }));
                }
            }
            for w in top.generators() {
                gens.push(perm_from_fn(degree, |x| {
                    let c = decode_tuple(x, a, n);
                    let mut d = alloc::vec![0; n];
                    for j in 0..n {
                        d[w.image(j)] = c[j];
                    }
                    encode_tuple(&d, a)
                }));
            }
            let g = PermGroup::new(degree, gens)?;
            verified(g, expected, "product-action wreath product")
        }
    }
}

/// `G × H` acting on the disjoint union, `H`'s points shifted by `deg G`.
pub fn disjoint_product(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    let (a, b) = (g.degree(), h.degree());
    let degree = a + b;
    check_degree(degree)?;
    let mut gens = Vec::new();
    for x in g.generators() {
        gens.push(perm_from_fn(degree, |p| if p < a { x.image(p) } else { p }));
    }
    for y in h.generators() {
        gens.push(perm_from_fn(degree, |p| {
            if p < a {
                p
            } else {
                a + y.image(p - a)
            }
        }));
    }
    let out = PermGroup::new(degree, gens)?;
    let expected = g.order() * h.order();
    verified(out, expected, "disjoint product")
}
