//! Extension towers `GF(q) ⊆ GF(q^m)` with coordinate maps.
//!
//! Both fields live over the same prime `p` (`q = p^s`, `q^m = p^{sm}`) and
//! each uses its own table-built modulus, so the subfield is not literally a
//! subset of encodings. The tower finds a root `r` of the base modulus inside
//! the top field and embeds the base along `β ↦ r`; the polynomial basis
//! `1, α, ..., α^{m-1}` of the top field over the embedded base (with `α` the
//! top generator) then gives the coordinate map used to expand extension-field
//! symbols into rows over `GF(q)`.
//!
//! Coordinates are resolved through one precomputed inverse of the
//! `(sm) x (sm)` change-of-basis matrix over `GF(p)`; everything stays exact.

use crate::field::FiniteField;
use crate::matrix::Matrix;
use crate::{Error, Result};

/// The tower `GF(q) ⊆ GF(q^m)` with its embedding and coordinate maps.
#[derive(Clone, Debug)]
pub struct FieldExtension {
    base: FiniteField,
    top: FiniteField,
    m: usize,
    /// base encoding -> top encoding
    embed: Vec<u16>,
    /// top encoding -> base encoding for embedded elements
    project: Vec<Option<u16>>,
    /// prime field GF(p)
    prime: FiniteField,
    /// maps base-p digit vectors of top elements to flattened coordinates
    coord_inv: Matrix,
}

impl FieldExtension {
    /// Builds the degree-`m` extension of `base`. Fails if `q^m > 2^16`.
    pub fn new(base: &FiniteField, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParams("extension degree must be positive".into()));
        }
        let p = base.p();
        let s = base.e();
        let top_e = s
            .checked_mul(m as u32)
            .ok_or(Error::FieldTooLarge { p, e: u32::MAX })?;
        let top = FiniteField::new(p, top_e, None)?;
        let prime = FiniteField::new(p, 1, None)?;

        // Root of the base modulus inside the top field, smallest encoding
        // first for determinism.
        let coeffs: Vec<u16> = base.modulus().iter().map(|&c| c as u16).collect();
        let mut root = None;
        for x in top.encodings() {
            if eval_poly(&top, &coeffs, x) == 0 {
                root = Some(x);
                break;
            }
        }
        let r = root.ok_or_else(|| {
            Error::NoEmbedding(format!("{base}"), format!("{top}"))
        })?;

        // Embed base elements digit-wise along β ↦ r.
        let mut embed = Vec::with_capacity(base.q() as usize);
        for v in base.encodings() {
            let digits = base.digits(v);
            let mut acc = 0u16;
            for &d in digits.iter().rev() {
                acc = top.add(top.mul(acc, r), d as u16);
            }
            embed.push(acc);
        }
        let mut project = vec![None; top.q() as usize];
        for (v, &x) in embed.iter().enumerate() {
            if project[x as usize].is_some() {
                return Err(Error::NoEmbedding(
                    format!("{base}"),
                    format!("{top} (embedding not injective)"),
                ));
            }
            project[x as usize] = Some(v as u16);
        }

        // Change of basis over GF(p): column (i*s + j) holds the digits of
        // α^i r^j, where α is the top generator.
        let alpha = top.generator();
        let n = (s as usize) * m;
        let mut basis_mat = Matrix::zero(&prime, n, n);
        for i in 0..m {
            let ai = top.pow(alpha, i as u64);
            for j in 0..s as usize {
                let v = top.mul(ai, top.pow(r, j as u64));
                for (row, &d) in top.digits(v).iter().enumerate() {
                    basis_mat.set(row, i * s as usize + j, d as u16);
                }
            }
        }
        let coord_inv = basis_mat.inverse().map_err(|_| {
            Error::NoEmbedding(
                format!("{base}"),
                format!("{top} (power basis is degenerate)"),
            )
        })?;

        Ok(FieldExtension {
            base: base.clone(),
            top,
            m,
            embed,
            project,
            prime,
            coord_inv,
        })
    }

    pub fn base(&self) -> &FiniteField {
        &self.base
    }

    pub fn top(&self) -> &FiniteField {
        &self.top
    }

    /// Extension degree of the tower.
    pub fn degree(&self) -> usize {
        self.m
    }

    /// Top encoding of the generator `α` of the top field.
    pub fn alpha(&self) -> u16 {
        self.top.generator()
    }

    /// Image of a base element in the top field.
    pub fn embed(&self, v: u16) -> u16 {
        self.embed[v as usize]
    }

    /// Base element whose image is `x`, if `x` lies in the embedded subfield.
    pub fn project(&self, x: u16) -> Option<u16> {
        self.project[x as usize]
    }

    /// Coordinates of a top element over the base in the basis
    /// `1, α, ..., α^{m-1}`; length `m`, base encodings.
    pub fn to_coords(&self, x: u16) -> Vec<u16> {
        let s = self.base.e() as usize;
        let n = s * self.m;
        let mut digits = Matrix::zero(&self.prime, n, 1);
        for (row, &d) in self.top.digits(x).iter().enumerate() {
            digits.set(row, 0, d as u16);
        }
        let solved = self
            .coord_inv
            .mat_mul(&digits)
            .expect("coordinate shapes are fixed at construction");
        (0..self.m)
            .map(|i| {
                let chunk: Vec<u64> = (0..s).map(|j| solved.get(i * s + j, 0) as u64).collect();
                self.base
                    .from_digits(&chunk)
                    .expect("digits are below p by construction")
            })
            .collect()
    }

    /// Inverse of [`FieldExtension::to_coords`].
    pub fn from_coords(&self, coords: &[u16]) -> Result<u16> {
        if coords.len() != self.m {
            return Err(Error::ShapeMismatch {
                op: "from_coords",
                need: format!("{} coordinates", self.m),
                got: format!("{}", coords.len()),
            });
        }
        let alpha = self.alpha();
        let mut acc = 0u16;
        for &c in coords.iter().rev() {
            acc = self.top.add(self.top.mul(acc, alpha), self.embed(c));
        }
        Ok(acc)
    }

    /// `x^q`, the base-field Frobenius on the top field.
    pub fn frobenius(&self, x: u16) -> u16 {
        self.top.pow(x, self.base.q())
    }
}

fn eval_poly(field: &FiniteField, coeffs: &[u16], x: u16) -> u16 {
    let mut acc = 0u16;
    for &c in coeffs.iter().rev() {
        acc = field.add(field.mul(acc, x), c);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64, e: u32) -> FiniteField {
        FiniteField::new(p, e, None).unwrap()
    }

    #[test]
    fn prime_tower_coords_roundtrip() {
        let base = gf(2, 1);
        let ext = FieldExtension::new(&base, 4).unwrap();
        assert_eq!(ext.top().q(), 16);
        for x in ext.top().encodings() {
            let coords = ext.to_coords(x);
            assert_eq!(coords.len(), 4);
            assert_eq!(ext.from_coords(&coords).unwrap(), x);
        }
        // powers of α map to unit vectors
        let alpha = ext.alpha();
        for i in 0..4u64 {
            let coords = ext.to_coords(ext.top().pow(alpha, i));
            let expect: Vec<u16> = (0..4).map(|j| u16::from(j == i as usize)).collect();
            assert_eq!(coords, expect);
        }
    }

    #[test]
    fn embedding_is_a_field_homomorphism() {
        let base = gf(2, 2);
        let ext = FieldExtension::new(&base, 2).unwrap();
        assert_eq!(ext.top().q(), 16);
        for a in base.encodings() {
            assert_eq!(ext.project(ext.embed(a)), Some(a));
            for b in base.encodings() {
                assert_eq!(
                    ext.embed(base.add(a, b)),
                    ext.top().add(ext.embed(a), ext.embed(b))
                );
                assert_eq!(
                    ext.embed(base.mul(a, b)),
                    ext.top().mul(ext.embed(a), ext.embed(b))
                );
            }
        }
        assert_eq!(ext.embed(0), 0);
        assert_eq!(ext.embed(1), 1);
    }

    #[test]
    fn embedded_subfield_is_fixed_by_frobenius() {
        let base = gf(2, 2);
        let ext = FieldExtension::new(&base, 3).unwrap();
        assert_eq!(ext.top().q(), 64);
        let subfield: std::collections::HashSet<u16> =
            base.encodings().map(|v| ext.embed(v)).collect();
        for x in ext.top().encodings() {
            let fixed = ext.frobenius(x) == x;
            assert_eq!(fixed, subfield.contains(&x), "x = {x}");
        }
    }

    #[test]
    fn coords_are_base_linear() {
        let base = gf(2, 2);
        let ext = FieldExtension::new(&base, 2).unwrap();
        for c in base.encodings() {
            let ec = ext.embed(c);
            for x in ext.top().encodings() {
                let lhs = ext.to_coords(ext.top().mul(ec, x));
                let rhs: Vec<u16> = ext
                    .to_coords(x)
                    .into_iter()
                    .map(|v| base.mul(c, v))
                    .collect();
                assert_eq!(lhs, rhs);
            }
        }
        for x in ext.top().encodings() {
            for y in ext.top().encodings() {
                let sum = ext.to_coords(ext.top().add(x, y));
                let xs = ext.to_coords(x);
                let ys = ext.to_coords(y);
                let expect: Vec<u16> = xs
                    .iter()
                    .zip(&ys)
                    .map(|(&a, &b)| base.add(a, b))
                    .collect();
                assert_eq!(sum, expect);
            }
        }
    }

    #[test]
    fn odd_characteristic_tower() {
        let base = gf(3, 2);
        let ext = FieldExtension::new(&base, 2).unwrap();
        assert_eq!(ext.top().q(), 81);
        for x in ext.top().encodings() {
            assert_eq!(ext.from_coords(&ext.to_coords(x)).unwrap(), x);
        }
        for a in base.encodings() {
            for b in base.encodings() {
                assert_eq!(
                    ext.embed(base.mul(a, b)),
                    ext.top().mul(ext.embed(a), ext.embed(b))
                );
            }
        }
    }

    #[test]
    fn oversized_tower_is_rejected() {
        let base = gf(2, 2);
        assert!(matches!(
            FieldExtension::new(&base, 9),
            Err(Error::FieldTooLarge { .. })
        ));
        assert!(FieldExtension::new(&base, 0).is_err());
    }

    #[test]
    fn degenerate_tower_of_degree_one() {
        let base = gf(2, 3);
        let ext = FieldExtension::new(&base, 1).unwrap();
        for x in base.encodings() {
            assert_eq!(ext.to_coords(ext.embed(x)), vec![x]);
        }
    }
}
