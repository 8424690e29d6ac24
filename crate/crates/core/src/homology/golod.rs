//! The Golod bound `(1+t)^e / (1 − Σ_{j≥1} h_j t^{j+1})` as a power series.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::Result;
use crate::homology::koszul::koszul_homology;
use crate::ring::FiniteCommutativeAlgebra;

/// First `range + 1` coefficients of the series built from Koszul homology
/// dimensions `h_0..h_e`.
pub fn golod_series_from_homology(h: &[usize], range: usize) -> Vec<BigUint> {
    let e = h.len().saturating_sub(1);
    let numerator: Vec<BigUint> = (0..=range)
        .map(|i| {
            if i <= e {
                binomial(e, i)
            } else {
                BigUint::zero()
            }
        })
        .collect();
    let mut out: Vec<BigUint> = Vec::with_capacity(range + 1);
    for i in 0..=range {
        let mut acc = numerator[i].clone();
        for (j, &hj) in h.iter().enumerate().skip(1) {
            if i > j {
                acc += &out[i - j - 1] * BigUint::from(hj);
            }
        }
        out.push(acc);
    }
    out
}

fn binomial(n: usize, k: usize) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

pub fn golod_series(algebra: &FiniteCommutativeAlgebra, range: usize) -> Result<Vec<BigUint>> {
    Ok(golod_series_from_homology(
        &koszul_homology(algebra)?,
        range,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(v: &[BigUint]) -> Vec<u64> {
        v.iter()
            .map(|x| u64::try_from(x.clone()).unwrap())
            .collect()
    }

    #[test]
    fn two_variables_m_squared() {
        // (1+t)^2 (1−2t) = 1 − 3t^2 − 2t^3, so the quotient is 1/(1−2t)
        let s = golod_series_from_homology(&[1, 3, 2], 12);
        assert_eq!(small(&s), (0..=12).map(|i| 1u64 << i).collect::<Vec<_>>());
    }

    #[test]
    fn residue_field_series_is_one() {
        assert_eq!(
            small(&golod_series_from_homology(&[1], 5)),
            vec![1, 0, 0, 0, 0, 0]
        );
    }

    #[test]
    fn dual_numbers_series() {
        assert_eq!(small(&golod_series_from_homology(&[1, 1], 6)), vec![1; 7]);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(3, 0), BigUint::from(1u32));
    }
}
