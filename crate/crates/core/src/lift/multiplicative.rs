//! A multiplicative `α: K_r(m) → C` into a differential graded algebra:
//! lift the `s_i` one at a time and send `s_I` to the product of their
//! images.

use super::PieceSolver;
use crate::chainmap::{is_chain_map, rank_of_map, ChainMap, RankMode};
use crate::complex::{koszul, Augmentation, FreeComplex, ProductTable};
use crate::error::{Error, Result};
use crate::ring::{Element, Polynomial};

#[derive(Clone, Debug)]
pub struct MultiplicativeLift {
    pub map: ChainMap,
    /// Exact rank of `α`; `2^r` certifies injectivity.
    pub rank: usize,
}

impl MultiplicativeLift {
    pub fn is_injective(&self) -> bool {
        self.rank == self.map.source().len()
    }
}

pub fn multiplicative_alpha(
    c: &FreeComplex,
    products: &ProductTable,
    aug: &Augmentation,
    m: u32,
) -> Result<MultiplicativeLift> {
    c.ensure_valid()?;
    products.validate(c)?;
    aug.validate(c)?;
    let ring = c.ring();
    let unit = products.unit();
    if !aug.values()[unit].is_one() {
        return Err(Error::Precondition(format!("the augmentation is not 1 on the unit {}", c.name(unit))));
    }
    let k = koszul(ring, m);
    let mut images: Vec<Option<Element>> = vec![None; k.len()];
    images[0] = Some(c.basis_element(unit));
    for i in 0..ring.num_vars {
        let j = k.index_of(&[i + 1]);
        let q = k.complex().degree(j);
        let mut y = c.zero_element();
        y[unit] = Polynomial::var_power(ring, i, m + 1);
        let x = PieceSolver::new(c, q, |_| true, None).solve(c, &y, None).ok_or_else(|| Error::Obstruction {
            degree: q + 1,
            generator: k.complex().name(j).to_string(),
            detail: "the image of its boundary is a cycle that is not a boundary".into(),
        })?;
        images[j] = Some(x);
    }
    for j in 1..k.len() {
        let s = k.subset(j);
        if s.count_ones() < 2 {
            continue;
        }
        let low = s & s.wrapping_neg();
        let (a, b) = (k.index_of_subset(low), k.index_of_subset(s & !low));
        let sign = k.products().product(a, b).expect("disjoint subsets multiply")[j].clone();
        let prod = products.multiply(
            ring,
            images[a].as_ref().expect("single generators first"),
            images[b].as_ref().expect("shorter subsets first"),
        );
        images[j] = Some(prod.iter().map(|p| p.mul(&sign)).collect());
    }
    let columns: Vec<Element> = images.into_iter().map(|x| x.expect("all subsets visited")).collect();
    let map = ChainMap::new(k.complex().clone(), c.clone(), super::columns_to_matrix(c, &columns))?;
    is_chain_map(&map)?;
    let rank = rank_of_map(&map, RankMode::Exact);
    Ok(MultiplicativeLift { map, rank })
}
