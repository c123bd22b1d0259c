use std::collections::HashMap;

use super::{orbit_complex, product_complex, CellComplex, DeltaComplex, GroupAction, QuotientOptions};
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct SymmetricProduct {
    pub n: usize,
    pub dim: usize,
    /// Simplex count of the triangulated product before the quotient.
    pub flags: usize,
    pub complex: DeltaComplex,
}

/// `Sym^n` of a regular cell complex: the order complex of the `n`-fold
/// product, divided by the coordinate permutations.
pub fn symmetric_product(k: &CellComplex, n: usize, opts: &QuotientOptions) -> Result<SymmetricProduct> {
    if n == 0 {
        return Err(Error::DimensionMismatch("symmetric power must be at least 1".into()));
    }
    let factors: Vec<&CellComplex> = std::iter::repeat_n(k, n).collect();
    let (prod, tuples) = product_complex(&factors);
    let flags = prod.flag_count();
    if flags > opts.max_simplices {
        return Err(Error::SizeCapExceeded {
            what: "simplices".into(),
            count: flags,
            cap: opts.max_simplices,
        });
    }
    let index: HashMap<&Vec<usize>, usize> = tuples.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let permute = |p: &[usize]| -> Vec<usize> {
        tuples
            .iter()
            .map(|t| {
                let u: Vec<usize> = p.iter().map(|&i| t[i]).collect();
                index[&u]
            })
            .collect()
    };
    let mut gens = Vec::new();
    if n > 1 {
        let mut swap: Vec<usize> = (0..n).collect();
        swap.swap(0, 1);
        gens.push(permute(&swap));
        let cycle: Vec<usize> = (1..n).chain([0]).collect();
        gens.push(permute(&cycle));
    }
    let action = GroupAction::generate(prod.len(), &gens)?;
    let ord = prod.order_complex();
    let complex = orbit_complex(&ord, &action, opts)?;
    Ok(SymmetricProduct {
        n,
        dim: k.dim() * n,
        flags,
        complex,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::homology;

    fn segment() -> CellComplex {
        CellComplex::new(vec![0, 0, 1], vec![vec![], vec![], vec![0, 1]], vec!["a".into(), "b".into(), "e".into()])
    }

    #[test]
    fn interval_powers_are_simplices() {
        for n in 1..=3 {
            let s = symmetric_product(&segment(), n, &QuotientOptions::default()).unwrap();
            assert_eq!(s.complex.dim(), n);
            assert!(homology(&s.complex).is_acyclic());
        }
    }

    #[test]
    fn point_stays_a_point() {
        let p = CellComplex::new(vec![0], vec![vec![]], vec!["p".into()]);
        let s = symmetric_product(&p, 3, &QuotientOptions::default()).unwrap();
        assert_eq!(s.complex.counts(), vec![1]);
    }
}
