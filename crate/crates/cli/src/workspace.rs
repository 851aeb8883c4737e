//! The algebras and action tables of a manifest over a concrete field.

use std::sync::Arc;

use semifiber::poly::parse_poly;
use semifiber::{ActionTable, Poly, PolyRing, PresentedAlgebra, Scalar};

use crate::manifest::{Manifest, ManifestError, RawText};

pub struct Workspace<F> {
    pub algebras: Vec<(String, Arc<PresentedAlgebra<F>>)>,
    pub actions: Vec<(String, ActionTable<F>)>,
}

/// Parses `text` in `ring`, reporting errors at their source position.
pub fn parse_in<F: Scalar>(ring: &Arc<PolyRing>, text: &RawText) -> Result<Poly<F>, ManifestError> {
    parse_poly(ring, &text.text).map_err(|e| {
        ManifestError::semantic(text.pos_at(e.offset), format!("in `{}`: {}", text.text, e.message))
    })
}

impl<F: Scalar> Workspace<F> {
    /// Builds every algebra and action table. The manifest must already
    /// have passed [`crate::validate::validate`].
    pub fn build(m: &Manifest) -> Result<Self, ManifestError> {
        let mut algebras = Vec::new();
        for block in &m.algebras {
            let names = block.vars.iter().map(|v| v.name.value.clone()).collect();
            let weights = block.vars.iter().map(|v| v.weight.value).collect();
            let ring = PolyRing::new(names, weights).map_err(|e| ManifestError::semantic(block.name.pos, e.to_string()))?;
            let mut rels = Vec::new();
            for text in &block.rels {
                let p: Poly<F> = parse_in(&ring, text)?;
                if !p.constant_term().is_zero() {
                    return Err(ManifestError::semantic(
                        text.pos(),
                        format!(
                            "relation `{}` has a nonzero constant term; the variables must generate a maximal \
                             ideal with residue field k, so that every element splits as a scalar plus an \
                             element of m",
                            text.text
                        ),
                    ));
                }
                if !p.is_homogeneous() {
                    return Err(ManifestError::semantic(
                        text.pos(),
                        format!("relation `{}` is not homogeneous for the declared weights", text.text),
                    ));
                }
                rels.push(p);
            }
            let trunc = block.trunc.as_ref().map(|t| t.value);
            let a = PresentedAlgebra::new(&ring, rels, trunc)
                .map_err(|e| ManifestError::semantic(block.name.pos, e.to_string()))?;
            algebras.push((block.name.value.clone(), a));
        }
        let mut ws = Workspace { algebras, actions: Vec::new() };
        for block in &m.actions {
            let r = ws.algebra(&block.r.value).expect("validated").clone();
            let s = ws.algebra(&block.s.value).expect("validated").clone();
            let mut named = Vec::new();
            for e in &block.entries {
                if r.ring().var_index(&e.x.value).is_none() {
                    return Err(ManifestError::semantic(e.x.pos, format!("`{}` is not a variable of {}", e.x.value, block.r.value)));
                }
                if s.ring().var_index(&e.y.value).is_none() {
                    return Err(ManifestError::semantic(e.y.pos, format!("`{}` is not a variable of {}", e.y.value, block.s.value)));
                }
                named.push((e.x.value.clone(), e.y.value.clone(), parse_in(s.ring(), &e.value)?));
            }
            let table = ActionTable::from_named(&r, &s, &named).map_err(|e| ManifestError::semantic(block.name.pos, e.to_string()))?;
            ws.actions.push((block.name.value.clone(), table));
        }
        Ok(ws)
    }

    pub fn algebra(&self, name: &str) -> Option<&Arc<PresentedAlgebra<F>>> {
        self.algebras.iter().find(|(n, _)| n == name).map(|(_, a)| a)
    }

    pub fn action(&self, name: &str) -> Option<&ActionTable<F>> {
        self.actions.iter().find(|(n, _)| n == name).map(|(_, a)| a)
    }
}
