//! Growth of Betti and Bass sequences on a computed prefix.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GrowthReport {
    Growing {
        /// Least `i_0 ≥ 1` with `term_i ≥ 2 term_{i−1}` for every `i ≥ i_0`.
        ratio_threshold: Option<usize>,
        /// `term_N^{1/N}`, rounded to six significant digits.
        root_estimate: f64,
        unbounded_flag: bool,
    },
    /// The sequence ends in zeros from this index on.
    FiniteDimension { vanishes_from: usize },
}

fn round6(x: f64) -> f64 {
    format!("{x:.5e}").parse().unwrap_or(x)
}

pub fn growth_report(seq: &[u64]) -> GrowthReport {
    let Some(&last) = seq.last() else {
        return GrowthReport::FiniteDimension { vanishes_from: 0 };
    };
    if last == 0 {
        let vanishes_from = seq.iter().rposition(|&t| t != 0).map_or(0, |i| i + 1);
        return GrowthReport::FiniteDimension { vanishes_from };
    }
    let n = seq.len() - 1;
    let mut threshold = None;
    for i in (1..=n).rev() {
        if seq[i] > 0 && seq[i] as u128 >= 2 * seq[i - 1] as u128 {
            threshold = Some(i);
        } else {
            break;
        }
    }
    let root_estimate = if n == 0 {
        last as f64
    } else {
        round6((last as f64).powf(1.0 / n as f64))
    };
    let first_half_max = seq[..=n / 2].iter().copied().max().unwrap_or(0);
    GrowthReport::Growing {
        ratio_threshold: threshold,
        root_estimate,
        unbounded_flag: threshold.is_some() || last > first_half_max,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric() {
        let seq: Vec<u64> = (0..=10).map(|i| 1 << i).collect();
        assert_eq!(
            growth_report(&seq),
            GrowthReport::Growing {
                ratio_threshold: Some(1),
                root_estimate: 2.0,
                unbounded_flag: true
            }
        );
    }

    #[test]
    fn constant() {
        assert_eq!(
            growth_report(&[1; 9]),
            GrowthReport::Growing {
                ratio_threshold: None,
                root_estimate: 1.0,
                unbounded_flag: false
            }
        );
    }

    #[test]
    fn finite_tail() {
        assert_eq!(
            growth_report(&[1, 2, 1, 0, 0]),
            GrowthReport::FiniteDimension { vanishes_from: 3 }
        );
    }

    #[test]
    fn linear_growth_is_unbounded_without_threshold() {
        let seq: Vec<u64> = (1..=12).collect();
        match growth_report(&seq) {
            GrowthReport::Growing {
                ratio_threshold,
                unbounded_flag,
                ..
            } => {
                assert_eq!(ratio_threshold, None);
                assert!(unbounded_flag);
            }
            other => panic!("{other:?}"),
        }
    }
}
