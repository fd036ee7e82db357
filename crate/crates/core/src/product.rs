//! Decomposition along the blocks of the partition.
//!
//! Each block `Ω_i` carries its own single-block conditional expectation
//! `T_i` with `R(T_i) = R · 1_{Ω_i}`. Duals and `T`-absolutely continuous
//! charges split into block-local pieces and reassemble through
//! zero-extensions.

use std::sync::Arc;

use crate::charge::Charge;
use crate::condexp::{CondExp, Partition, RtVector};
use crate::duality::{DualExponent, DualFunctional, DualNorm};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::space::{FiniteSpace, Vector};

/// `T_i` on `Ω_i`, with the embedding of its points into `Ω`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockTriple {
    pub block: usize,
    pub points: Vec<usize>,
    pub cond_exp: Arc<CondExp>,
}

/// A vector on `Ω_i`, extended by zero to `Ω`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroExtension {
    pub block: usize,
    pub values: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProductDecomposition {
    cond_exp: Arc<CondExp>,
    blocks: Vec<BlockTriple>,
}

pub fn product_decomposition(t: &Arc<CondExp>) -> Result<ProductDecomposition> {
    let blocks = (0..t.num_blocks())
        .map(|b| {
            let points = t.block_points(b).to_vec();
            let space = FiniteSpace::new(
                points.iter().map(|&p| t.space().weight(p).clone()).collect(),
            )?;
            let cond_exp = CondExp::new(Partition::single_block(&space))?;
            Ok(BlockTriple {
                block: b,
                points,
                cond_exp,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ProductDecomposition {
        cond_exp: t.clone(),
        blocks,
    })
}

impl ProductDecomposition {
    pub fn cond_exp(&self) -> &Arc<CondExp> {
        &self.cond_exp
    }

    pub fn blocks(&self) -> &[BlockTriple] {
        &self.blocks
    }

    /// `f|_{Ω_i}`.
    pub fn restrict(&self, block: usize, f: &Vector) -> Vector {
        let b = &self.blocks[block];
        Vector::new(
            b.cond_exp.space(),
            b.points.iter().map(|&p| f.get(p).clone()).collect(),
        )
        .expect("length matches")
    }

    pub fn zero_extension(&self, block: usize, f: &Vector) -> Result<ZeroExtension> {
        let b = &self.blocks[block];
        if f.space().as_ref() != b.cond_exp.space().as_ref() {
            return Err(Error::SpaceMismatch);
        }
        Ok(ZeroExtension {
            block,
            values: f.values().to_vec(),
        })
    }

    pub fn extend(&self, z: &ZeroExtension) -> Vector {
        let b = &self.blocks[z.block];
        let mut out = Vector::zero(self.cond_exp.space()).into_values();
        for (&p, v) in b.points.iter().zip(&z.values) {
            out[p] = v.clone();
        }
        Vector::new(self.cond_exp.space(), out).expect("length matches")
    }

    fn extend_block(&self, block: usize, f: &Vector) -> Result<Vector> {
        Ok(self.extend(&self.zero_extension(block, f)?))
    }

    /// `Ψ(φ) = (φ_i)` with `φ_i(f_i) = φ(\bar f_i^i)|_{Ω_i}`.
    pub fn psi(&self, phi: &DualFunctional) -> Result<Vec<DualFunctional>> {
        if !phi.cond_exp().same(&self.cond_exp) {
            return Err(Error::CondExpMismatch);
        }
        self.blocks
            .iter()
            .map(|b| {
                let columns = (0..b.points.len())
                    .map(|k| {
                        let atom = crate::space::Component::atom(b.cond_exp.space(), k).to_vector();
                        let image = phi.apply(&self.extend_block(b.block, &atom)?);
                        Ok(self.restrict(b.block, &image))
                    })
                    .collect::<Result<Vec<_>>>()?;
                DualFunctional::raw(&b.cond_exp, columns)
            })
            .collect()
    }

    /// `Φ((φ_i))(f) = Σ_i \overline{φ_i(f|_{Ω_i})}^i`.
    pub fn phi(&self, parts: &[DualFunctional]) -> Result<DualFunctional> {
        self.check_parts(parts.iter().map(|p| p.cond_exp()))?;
        let t = &self.cond_exp;
        let mut columns = vec![Vector::zero(t.space()); t.size()];
        for (b, part) in self.blocks.iter().zip(parts) {
            for (k, &p) in b.points.iter().enumerate() {
                columns[p] = self.extend_block(b.block, part.columns()[k].as_vector())?;
            }
        }
        DualFunctional::raw(t, columns)
    }

    /// `sup_i \overline{‖φ_i‖}^i`; squared for `p = 2`.
    pub fn product_norm(&self, parts: &[DualFunctional], p: DualExponent) -> Result<RtVector> {
        self.check_parts(parts.iter().map(|p| p.cond_exp()))?;
        let t = &self.cond_exp;
        let mut out = t.zero();
        for (b, part) in self.blocks.iter().zip(parts) {
            let part = match p {
                DualExponent::Two => DualFunctional::kernel(
                    &b.cond_exp,
                    &crate::duality::l2_recover(part)?,
                )?,
                _ => part.clone(),
            };
            let norm = match part.dual_norm(p)? {
                DualNorm::Exact(v) | DualNorm::Squared(v) => v,
            };
            let extended = self.extend_block(b.block, &norm)?;
            out = out.sup(&t.range_element(extended)?);
        }
        Ok(out)
    }

    /// Splits `μ ≪ T` into block charges `μ_i(p_i) = μ(\bar p_i^i)|_{Ω_i}`.
    pub fn psi_charge(&self, mu: &Charge) -> Result<Vec<Charge>> {
        if !mu.cond_exp().same(&self.cond_exp) {
            return Err(Error::CondExpMismatch);
        }
        if let Some(witness) = mu.abs_continuity_witness() {
            return Err(Error::NotAbsolutelyContinuous { witness });
        }
        self.blocks
            .iter()
            .map(|b| {
                let atoms = b
                    .points
                    .iter()
                    .map(|&p| self.restrict(b.block, mu.atom(p)))
                    .collect();
                Charge::new(&b.cond_exp, atoms)
            })
            .collect()
    }

    pub fn phi_charge(&self, parts: &[Charge]) -> Result<Charge> {
        self.check_parts(parts.iter().map(|p| p.cond_exp()))?;
        let t = &self.cond_exp;
        let mut atoms = vec![Vector::zero(t.space()); t.size()];
        for (b, part) in self.blocks.iter().zip(parts) {
            for (k, &p) in b.points.iter().enumerate() {
                atoms[p] = self.extend_block(b.block, part.atom(k))?;
            }
        }
        Charge::new(t, atoms)
    }

    fn check_parts<'a>(&self, parts: impl ExactSizeIterator<Item = &'a Arc<CondExp>>) -> Result<()> {
        if parts.len() != self.blocks.len() {
            return Err(Error::LengthMismatch {
                expected: self.blocks.len(),
                got: parts.len(),
            });
        }
        for (b, t) in self.blocks.iter().zip(parts) {
            if !b.cond_exp.same(t) {
                return Err(Error::CondExpMismatch);
            }
        }
        Ok(())
    }
}
