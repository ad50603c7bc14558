//! Angular-momentum components of the rank-L unit-vector monomial.
//!
//! Three independent constructions are provided and must agree exactly:
//! the closed form ([`component`]), the Legendre-recursion form
//! ([`component_via_recursion`]), and the product form
//! ([`component_via_product`]), which symmetrizes the maximal component of
//! rank `l` with the scalar component of rank `L - l`.

use std::collections::HashMap;

use crate::combinatorics::{decomp_coefficient, dfact, max_component_coefficient, Rational};
use crate::error::{domain, Result};
use crate::tensor::{combo_contract_vector, combo_multiply_sym, combo_trace, XCombo};
use num_bigint::BigInt;

fn valid(rank: u32, ell: u32) -> bool {
    ell <= rank && (rank - ell).is_multiple_of(2)
}

fn parity_range(ell: u32) -> impl Iterator<Item = u32> {
    (ell % 2..=ell).rev().step_by(2)
}

/// The `ell` component of the rank-`L` monomial in closed form. Zero when
/// `ell > L` or `L - ell` is odd.
pub fn component(rank: u32, ell: u32) -> XCombo {
    if !valid(rank, ell) {
        return XCombo::zero(rank);
    }
    XCombo::from_terms(
        rank,
        parity_range(ell).map(|n| {
            let c = decomp_coefficient(rank, ell, n).expect("valid (L, l, n)");
            (n, c)
        }),
    )
    .expect("keys share the parity of L")
}

/// The traceless maximal component `(L, L)`.
pub fn max_component(rank: u32) -> XCombo {
    XCombo::from_terms(
        rank,
        parity_range(rank).map(|n| {
            let c = max_component_coefficient(rank, n).expect("valid (L, n)");
            (n, c)
        }),
    )
    .expect("keys share the parity of L")
}

/// `X^{L,0} / (L+1)!!`, the scalar component (zero for odd `L`).
fn scalar_component(rank: u32) -> XCombo {
    if rank % 2 == 1 {
        return XCombo::zero(rank);
    }
    XCombo::from_terms(
        rank,
        [(
            0,
            Rational::new(BigInt::from(1), dfact(i64::from(rank) + 1)),
        )],
    )
    .expect("n = 0 is valid for even L")
}

/// `3 X^{L,1} / (L+2)!!`, the vector component (zero for even `L`).
fn vector_component(rank: u32) -> XCombo {
    if rank.is_multiple_of(2) {
        return XCombo::zero(rank);
    }
    XCombo::from_terms(
        rank,
        [(
            1,
            Rational::new(BigInt::from(3), dfact(i64::from(rank) + 2)),
        )],
    )
    .expect("n = 1 is valid for odd L")
}

/// Memo table for the recursion path, keyed on `(L, l)`.
///
/// Each `(L, l)` requests `(L+1, l-1)` and `(L, l-2)`, so without sharing the
/// call tree grows exponentially in `l`. A cache is owned by one caller;
/// create one per thread for concurrent use.
#[derive(Debug, Default)]
pub struct RecursionMemo {
    table: HashMap<(u32, u32), XCombo>,
}

impl RecursionMemo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn component(&mut self, rank: u32, ell: u32) -> XCombo {
        if !valid(rank, ell) {
            return XCombo::zero(rank);
        }
        match ell {
            0 => return scalar_component(rank),
            1 => return vector_component(rank),
            _ => {}
        }
        if let Some(hit) = self.table.get(&(rank, ell)) {
            return hit.clone();
        }

        let l = i64::from(ell);
        let raised = self.component(rank + 1, ell - 1);
        let contracted = combo_contract_vector(&raised).expect("rank + 1 >= 1");
        let lower = self.component(rank, ell - 2);
        let lower_weight = Rational::new(BigInt::from(l - 1), BigInt::from(2 * l - 3));
        let bracket = contracted
            .checked_sub(&lower.scaled(&lower_weight))
            .expect("both terms have rank L");
        let result = bracket.scaled(&Rational::new(BigInt::from(2 * l + 1), BigInt::from(l)));

        self.table.insert((rank, ell), result.clone());
        result
    }
}

/// The `ell` component built by the Legendre recursion, starting from the
/// `l = 0` and `l = 1` closed forms.
pub fn component_via_recursion(rank: u32, ell: u32) -> XCombo {
    RecursionMemo::new().component(rank, ell)
}

/// The `ell` component as
/// `(2l+1)!! (L-l+1)!! / (L+l+1)!!` times the symmetrized product of the
/// rank-`l` maximal component with the rank-`(L-l)` scalar component.
pub fn component_via_product(rank: u32, ell: u32) -> XCombo {
    if !valid(rank, ell) {
        return XCombo::zero(rank);
    }
    let (big_l, l) = (i64::from(rank), i64::from(ell));
    let prefactor = Rational::new(
        dfact(2 * l + 1) * dfact(big_l - l + 1),
        dfact(big_l + l + 1),
    );
    combo_multiply_sym(&max_component(ell), &scalar_component(rank - ell)).scaled(&prefactor)
}

/// Every nonzero component, by descending `ell`: `L, L-2, ..., 1 or 0`.
pub fn all_components(rank: u32) -> Vec<(u32, XCombo)> {
    parity_range(rank)
        .map(|l| (l, component(rank, l)))
        .collect()
}

/// Whether tracing any index pair of `combo` gives zero.
pub fn check_traceless(combo: &XCombo) -> Result<bool> {
    if combo.rank() < 2 {
        return Err(domain(format!(
            "check_traceless requires rank >= 2, got {}",
            combo.rank()
        )));
    }
    Ok(combo_trace(combo)?.is_zero())
}

/// Sum of all components of rank `L`; equals the bare monomial.
pub fn component_sum(rank: u32) -> XCombo {
    all_components(rank)
        .iter()
        .fold(XCombo::zero(rank), |acc, (_, c)| {
            acc.checked_add(c).expect("same rank")
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::rational;

    fn combo(rank: u32, terms: &[(u32, i64, i64)]) -> XCombo {
        XCombo::from_terms(rank, terms.iter().map(|&(n, p, q)| (n, rational(p, q)))).unwrap()
    }

    #[test]
    fn rank_two_components() {
        assert_eq!(component(2, 0), combo(2, &[(0, 1, 3)]));
        assert_eq!(component(2, 2), combo(2, &[(2, 1, 1), (0, -1, 3)]));
    }

    #[test]
    fn five_three_component() {
        assert_eq!(component(5, 3), combo(5, &[(3, 1, 9), (1, -2, 45)]));
    }

    #[test]
    fn vanishing_components() {
        assert!(component(7, 9).is_zero());
        assert!(component(6, 3).is_zero());
        assert!(component_via_recursion(6, 3).is_zero());
        assert!(component_via_product(7, 9).is_zero());
    }

    #[test]
    fn maximal_components() {
        assert_eq!(max_component(3), combo(3, &[(3, 1, 1), (1, -1, 5)]));
        assert_eq!(
            max_component(4),
            combo(4, &[(4, 1, 1), (2, -1, 7), (0, 1, 35)])
        );
        assert_eq!(
            max_component(5),
            combo(5, &[(5, 1, 1), (3, -1, 9), (1, 1, 63)])
        );
        assert_eq!(max_component(0), XCombo::monomial(0));
        for l in 0..=12 {
            assert_eq!(max_component(l), component(l, l));
        }
    }

    #[test]
    fn recursion_examples() {
        assert_eq!(
            component_via_recursion(4, 2),
            combo(4, &[(2, 1, 7), (0, -2, 21)])
        );
        for l in 0..=12u32 {
            if l % 2 == 0 {
                assert_eq!(
                    component_via_recursion(l, 0),
                    XCombo::from_terms(l, [(0, Rational::new(1.into(), dfact(i64::from(l) + 1)))])
                        .unwrap()
                );
            } else {
                assert_eq!(
                    component_via_recursion(l, 1),
                    XCombo::from_terms(l, [(1, Rational::new(3.into(), dfact(i64::from(l) + 2)))])
                        .unwrap()
                );
            }
        }
    }

    #[test]
    fn product_examples() {
        assert_eq!(
            component_via_product(4, 2),
            combo(4, &[(2, 1, 7), (0, -2, 21)])
        );
        assert_eq!(component_via_product(5, 1), combo(5, &[(1, 1, 35)]));
        for l in 0..=10 {
            assert_eq!(component_via_product(l, l), max_component(l));
        }
    }

    #[test]
    fn three_constructions_agree() {
        let mut memo = RecursionMemo::new();
        for rank in 0..=12u32 {
            for ell in 0..=rank + 1 {
                let closed = component(rank, ell);
                assert_eq!(
                    closed,
                    memo.component(rank, ell),
                    "recursion L={rank} l={ell}"
                );
                assert_eq!(
                    closed,
                    component_via_product(rank, ell),
                    "product L={rank} l={ell}"
                );
            }
        }
    }

    #[test]
    fn all_components_listing() {
        let two = all_components(2);
        assert_eq!(two.len(), 2);
        assert_eq!(two[0], (2, combo(2, &[(2, 1, 1), (0, -1, 3)])));
        assert_eq!(two[1], (0, combo(2, &[(0, 1, 3)])));
        assert_eq!(all_components(0), vec![(0, XCombo::monomial(0))]);
        let ells: Vec<u32> = all_components(5).into_iter().map(|(l, _)| l).collect();
        assert_eq!(ells, vec![5, 3, 1]);
    }

    #[test]
    fn completeness() {
        for rank in 0..=12 {
            assert_eq!(component_sum(rank), XCombo::monomial(rank), "L={rank}");
        }
    }

    #[test]
    fn tracelessness() {
        for rank in 2..=12 {
            assert!(check_traceless(&max_component(rank)).unwrap(), "L={rank}");
        }
        assert!(check_traceless(&max_component(6)).unwrap());
        assert!(!check_traceless(&component(4, 2)).unwrap());
        // The trace of the (4, 2) component is the maximal rank-2 component.
        assert_eq!(combo_trace(&component(4, 2)).unwrap(), max_component(2));
        assert!(!check_traceless(&combo(2, &[(0, 1, 1)])).unwrap());
        assert!(check_traceless(&max_component(1)).is_err());
    }

    #[test]
    fn non_maximal_components_are_not_traceless() {
        for rank in 2..=10u32 {
            for ell in (rank % 2..rank).step_by(2) {
                assert!(!check_traceless(&component(rank, ell)).unwrap());
            }
        }
    }
}
