//! Linear operators `E → E` stored by the images of the atoms.
//!
//! Order structure of regular operators follows the Riesz–Kantorovich
//! formulas. Closed forms act columnwise; the `*_brute` methods evaluate the
//! defining suprema by enumerating the vertices of the order interval
//! `[0, f]` (for the positive part and the supremum) or the signed box
//! `[-f, f]` (for the modulus). Suprema in `E` are pointwise, so the vertex
//! enumeration is exact.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::space::{FiniteSpace, Vector};

#[derive(Debug, Clone, PartialEq)]
pub struct ColumnOperator {
    space: Arc<FiniteSpace>,
    columns: Vec<Vector>,
}

impl ColumnOperator {
    pub fn new(space: &Arc<FiniteSpace>, columns: Vec<Vector>) -> Result<Self> {
        if columns.len() != space.size() {
            return Err(Error::LengthMismatch {
                expected: space.size(),
                got: columns.len(),
            });
        }
        if columns.iter().any(|c| c.space().as_ref() != space.as_ref()) {
            return Err(Error::SpaceMismatch);
        }
        Ok(Self {
            space: space.clone(),
            columns,
        })
    }

    pub fn from_map(space: &Arc<FiniteSpace>, f: impl Fn(&Vector) -> Vector) -> Self {
        let columns = (0..space.size())
            .map(|i| f(&crate::space::Component::atom(space, i).to_vector()))
            .collect();
        Self {
            space: space.clone(),
            columns,
        }
    }

    pub fn space(&self) -> &Arc<FiniteSpace> {
        &self.space
    }

    pub fn columns(&self) -> &[Vector] {
        &self.columns
    }

    pub fn apply(&self, f: &Vector) -> Vector {
        assert!(f.space().as_ref() == self.space.as_ref(), "space mismatch");
        let mut out = Vector::zero(&self.space);
        for (c, v) in self.columns.iter().zip(f.values()) {
            out = out + c.scale(v);
        }
        out
    }

    pub fn is_positive(&self) -> bool {
        self.columns.iter().all(|c| c.is_positive())
    }

    /// `A⁺`, columnwise positive parts.
    pub fn positive_part(&self) -> Self {
        self.map_columns(|c| c.pos())
    }

    /// `|A|`, columnwise moduli.
    pub fn modulus(&self) -> Self {
        self.map_columns(|c| c.abs())
    }

    /// `A ∨ B`, columnwise suprema.
    pub fn sup(&self, other: &Self) -> Self {
        Self {
            space: self.space.clone(),
            columns: self
                .columns
                .iter()
                .zip(&other.columns)
                .map(|(a, b)| a.sup(b))
                .collect(),
        }
    }

    fn map_columns(&self, f: impl Fn(&Vector) -> Vector) -> Self {
        Self {
            space: self.space.clone(),
            columns: self.columns.iter().map(f).collect(),
        }
    }

    /// `A⁺(f) = sup{A(g) : 0 ≤ g ≤ f}` for `f ≥ 0`, over the `2^|supp f|`
    /// vertices `g = f·q` of the order interval.
    pub fn positive_part_brute(&self, f: &Vector) -> Vector {
        let support = f.support();
        let images: Vec<Vector> = support
            .subcomponents()
            .map(|q| self.apply(&q.mask_vector(f)))
            .collect();
        Vector::sup_all(images.iter()).expect("at least the empty subcomponent")
    }

    /// `|A|(f) = sup{|A(g)| : |g| ≤ f}` for `f ≥ 0`, over the sign vertices
    /// `g = f·(q - (e - q))` restricted to the support of `f`.
    pub fn modulus_brute(&self, f: &Vector) -> Vector {
        let support = f.support();
        let images: Vec<Vector> = support
            .subcomponents()
            .map(|q| {
                let plus = q.mask_vector(f);
                let minus = support.difference(&q).mask_vector(f);
                self.apply(&(plus - minus)).abs()
            })
            .collect();
        Vector::sup_all(images.iter()).expect("at least the empty subcomponent")
    }

    /// `(A ∨ B)(f) = sup{A(g) + B(f - g) : 0 ≤ g ≤ f}` for `f ≥ 0`.
    pub fn sup_brute(&self, other: &Self, f: &Vector) -> Vector {
        let support = f.support();
        let images: Vec<Vector> = support
            .subcomponents()
            .map(|q| {
                let g = q.mask_vector(f);
                let rest = f - &g;
                self.apply(&g) + other.apply(&rest)
            })
            .collect();
        Vector::sup_all(images.iter()).expect("at least the empty subcomponent")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::unit;

    #[test]
    fn riesz_kantorovich_on_a_signed_operator() {
        let s = FiniteSpace::uniform(3).unwrap();
        let a = ColumnOperator::new(
            &s,
            vec![
                Vector::from_ints(&s, &[1, -2, 0]),
                Vector::from_ints(&s, &[-3, 1, 1]),
                Vector::from_ints(&s, &[0, 0, -1]),
            ],
        )
        .unwrap();
        let f = Vector::from_ints(&s, &[2, 1, 3]);
        assert_eq!(a.positive_part_brute(&f), a.positive_part().apply(&f));
        assert_eq!(a.modulus_brute(&f), a.modulus().apply(&f));
        let b = a.modulus();
        assert_eq!(a.sup_brute(&b, &unit(&s)), a.sup(&b).apply(&unit(&s)));
    }
}
