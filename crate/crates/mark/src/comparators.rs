//! Classical uncertainty measures, for putting the window metrics in
//! context.
//!
//! These are the yardsticks the window metrics deliberately depart from:
//! all of them are blind to candidate arrangement and to how near-misses
//! cluster, which is exactly the information a window of width > 1 can
//! cash in. Keeping them side by side in reports makes the contrast
//! checkable instead of rhetorical.

use serde::{Deserialize, Serialize};

use crate::belief::{ContinuousBelief, DiscreteBelief};
use crate::error::{Error, Result};
use crate::numeric::trapezoid_uniform;

/// An entropy value tagged with the order it was computed at.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaValue {
    pub alpha: f64,
    pub value: f64,
}

/// Bundle of comparator readings for one discrete belief.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyReport {
    pub shannon: f64,
    pub shannon_normalized: f64,
    pub renyi: Vec<AlphaValue>,
    pub tsallis: Vec<AlphaValue>,
    /// Spread over the numeric axis, when the belief has one.
    pub std_dev: Option<f64>,
}

/// Shannon entropy `-sum p log p` in the given log base (base 2 for bits).
/// Zero-probability candidates contribute nothing. `base` must exceed 1.
pub fn shannon_discrete(belief: &DiscreteBelief, base: f64) -> f64 {
    debug_assert!(base > 1.0);
    -belief
        .probs()
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| p * p.log(base))
        .sum::<f64>()
}

/// Shannon entropy divided by its maximum `log n`, putting lines of any
/// length on a common [0, 1] scale.
pub fn shannon_normalized(belief: &DiscreteBelief, base: f64) -> f64 {
    shannon_discrete(belief, base) / (belief.n() as f64).log(base)
}

/// Differential entropy `-integral p log p dx` of the sampled density by
/// the trapezoid rule, in the given log base. Unlike the discrete form it
/// can be negative, and it shifts by `log c` under a change of bin width
/// `c`; the histogram demonstrations in the tests pin this down.
pub fn shannon_continuous(belief: &ContinuousBelief, base: f64) -> f64 {
    debug_assert!(base > 1.0);
    let integrand: Vec<f64> = belief
        .samples()
        .iter()
        .map(|&p| if p > 0.0 { -p * p.log(base) } else { 0.0 })
        .collect();
    trapezoid_uniform(&integrand, belief.dx())
}

/// Renyi entropy of order `alpha` in the given log base:
/// `log(sum p^alpha) / (1 - alpha)`. Defined for `alpha > 0`, `alpha != 1`;
/// it approaches Shannon as `alpha -> 1` and never increases in `alpha`.
pub fn renyi(belief: &DiscreteBelief, alpha: f64, base: f64) -> Result<f64> {
    debug_assert!(base > 1.0);
    if !alpha.is_finite() || alpha <= 0.0 || alpha == 1.0 {
        return Err(Error::BadAlpha(alpha));
    }
    let sum: f64 = belief
        .probs()
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| p.powf(alpha))
        .sum();
    Ok(sum.log(base) / (1.0 - alpha))
}

/// Tsallis entropy of order `alpha` in natural units:
/// `(1 - sum p^alpha) / (alpha - 1)`. Same domain as [`renyi`]; approaches
/// Shannon in nats as `alpha -> 1`.
pub fn tsallis(belief: &DiscreteBelief, alpha: f64) -> Result<f64> {
    if !alpha.is_finite() || alpha <= 0.0 || alpha == 1.0 {
        return Err(Error::BadAlpha(alpha));
    }
    let sum: f64 = belief
        .probs()
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| p.powf(alpha))
        .sum();
    Ok((1.0 - sum) / (alpha - 1.0))
}

/// Standard deviation of the candidate position under the belief, read off
/// the numeric axis in the labels (histogram column centers qualify).
/// Fails with [`Error::NoAxis`] when no such axis exists.
pub fn std_dev_discrete(belief: &DiscreteBelief) -> Result<f64> {
    let axis = belief.axis_positions().ok_or(Error::NoAxis)?;
    let mean: f64 = axis.iter().zip(belief.probs()).map(|(&x, &p)| x * p).sum();
    let var: f64 = axis
        .iter()
        .zip(belief.probs())
        .map(|(&x, &p)| (x - mean) * (x - mean) * p)
        .sum();
    Ok(var.max(0.0).sqrt())
}

/// Standard deviation of the position under a sampled density, via
/// trapezoid moments.
pub fn std_dev_continuous(belief: &ContinuousBelief) -> f64 {
    let dx = belief.dx();
    let m = belief.samples().len();
    let xs: Vec<f64> = (0..m).map(|i| belief.lo() + i as f64 * dx).collect();
    let first: Vec<f64> = xs
        .iter()
        .zip(belief.samples())
        .map(|(&x, &p)| x * p)
        .collect();
    let mean = trapezoid_uniform(&first, dx);
    let second: Vec<f64> = xs
        .iter()
        .zip(belief.samples())
        .map(|(&x, &p)| (x - mean) * (x - mean) * p)
        .collect();
    trapezoid_uniform(&second, dx).max(0.0).sqrt()
}

/// All comparator readings for one belief at once.
pub fn entropy_report(belief: &DiscreteBelief, base: f64, alphas: &[f64]) -> Result<EntropyReport> {
    let mut renyi_values = Vec::with_capacity(alphas.len());
    let mut tsallis_values = Vec::with_capacity(alphas.len());
    for &alpha in alphas {
        renyi_values.push(AlphaValue {
            alpha,
            value: renyi(belief, alpha, base)?,
        });
        tsallis_values.push(AlphaValue {
            alpha,
            value: tsallis(belief, alpha)?,
        });
    }
    let std_dev = match std_dev_discrete(belief) {
        Ok(v) => Some(v),
        Err(Error::NoAxis) => None,
        Err(e) => return Err(e),
    };
    Ok(EntropyReport {
        shannon: shannon_discrete(belief, base),
        shannon_normalized: shannon_normalized(belief, base),
        renyi: renyi_values,
        tsallis: tsallis_values,
        std_dev,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::belief::OrderingMode;
    use crate::knowledge::ark_nominal;

    fn belief(probs: &[f64]) -> DiscreteBelief {
        DiscreteBelief::new(probs.to_vec(), OrderingMode::Listed, false).unwrap()
    }

    #[test]
    fn shannon_uniform_and_certain() {
        assert!((shannon_discrete(&DiscreteBelief::uniform(2).unwrap(), 2.0) - 1.0).abs() < 1e-12);
        let u5 = DiscreteBelief::uniform(5).unwrap();
        assert!((shannon_discrete(&u5, 2.0) - 5f64.log2()).abs() < 1e-12);
        let c = DiscreteBelief::certain(4, 2).unwrap();
        assert_eq!(shannon_discrete(&c, 2.0), 0.0);
        assert!((shannon_normalized(&u5, 2.0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn partition_blindness_vs_window_metric() {
        // One fifty-fifty split described as two candidates or as five:
        // entropy doubles and more, the window metric holds at the floor.
        let two = DiscreteBelief::uniform(2).unwrap();
        let five = DiscreteBelief::uniform(5).unwrap();
        assert!(shannon_discrete(&five, 2.0) > 2.0 * shannon_discrete(&two, 2.0));
        let a2 = ark_nominal(&two).unwrap().ark();
        let a5 = ark_nominal(&five).unwrap().ark();
        assert!((a2 - 0.5).abs() < 1e-12 && (a5 - 0.5).abs() < 1e-12);
    }

    #[test]
    fn arrangement_blindness_pair() {
        // Same multiset of probabilities, different arrangement: entropy
        // identical up to summation order, window knowledge apart by 0.1.
        let a = belief(&[0.1, 0.4, 0.1, 0.4]);
        let b = belief(&[0.4, 0.4, 0.1, 0.1]);
        assert!((shannon_discrete(&a, 2.0) - shannon_discrete(&b, 2.0)).abs() < 1e-14);
        assert!((shannon_discrete(&a, 2.0) - 1.7219280948873623).abs() < 1e-10);
        let (ka, kb) = (
            ark_nominal(&a).unwrap().ark(),
            ark_nominal(&b).unwrap().ark(),
        );
        assert!((kb - ka - 0.1).abs() < 1e-12);
    }

    #[test]
    fn renyi_limits_and_bounds() {
        let b = belief(&[0.1, 0.4, 0.1, 0.4]);
        let shannon = shannon_discrete(&b, 2.0);
        for eps in [1e-5, -1e-5] {
            let near = renyi(&b, 1.0 + eps, 2.0).unwrap();
            assert!((near - shannon).abs() < 1e-3, "alpha=1{eps:+e}");
        }

        let u = DiscreteBelief::uniform(7).unwrap();
        for alpha in [0.3, 0.5, 2.0, 5.0] {
            assert!((renyi(&u, alpha, 2.0).unwrap() - 7f64.log2()).abs() < 1e-12);
        }
        let c = DiscreteBelief::certain(5, 3).unwrap();
        assert_eq!(renyi(&c, 2.0, 2.0).unwrap(), 0.0);

        // Nonincreasing in alpha.
        let mut prev = f64::INFINITY;
        for alpha in [0.25, 0.5, 0.9, 1.1, 2.0, 4.0, 8.0] {
            let v = renyi(&b, alpha, 2.0).unwrap();
            assert!(v <= prev + 1e-12);
            prev = v;
        }
    }

    #[test]
    fn bad_alpha_rejected() {
        let b = belief(&[0.5, 0.5]);
        for alpha in [0.0, -1.0, 1.0, f64::NAN] {
            assert!(matches!(renyi(&b, alpha, 2.0), Err(Error::BadAlpha(_))));
            assert!(matches!(tsallis(&b, alpha), Err(Error::BadAlpha(_))));
        }
    }

    #[test]
    fn tsallis_values() {
        let u = DiscreteBelief::uniform(2).unwrap();
        assert!((tsallis(&u, 2.0).unwrap() - 0.5).abs() < 1e-12);
        let c = DiscreteBelief::certain(3, 1).unwrap();
        assert_eq!(tsallis(&c, 2.0).unwrap(), 0.0);
        // Near alpha = 1 it approaches Shannon in nats.
        let b = belief(&[0.1, 0.4, 0.1, 0.4]);
        let nats = shannon_discrete(&b, std::f64::consts::E);
        assert!((tsallis(&b, 1.0 + 1e-6).unwrap() - nats).abs() < 1e-4);
    }

    #[test]
    fn std_dev_two_spikes() {
        let b = DiscreteBelief::with_labels(
            vec!["0".into(), "1".into()],
            vec![0.5, 0.5],
            OrderingMode::Listed,
            false,
        )
        .unwrap();
        assert!((std_dev_discrete(&b).unwrap() - 0.5).abs() < 1e-12);
        assert!(matches!(
            std_dev_discrete(&DiscreteBelief::uniform(4).unwrap()),
            Err(Error::NoAxis)
        ));
    }

    #[test]
    fn std_dev_continuous_uniform_and_spike() {
        // Quadrature error on the second moment is O(dx^2), about 3e-5
        // at this resolution.
        let u = ContinuousBelief::new(0.0, 1.0, vec![1.0; 101], false).unwrap();
        assert!((std_dev_continuous(&u) - 1.0 / 12f64.sqrt()).abs() < 1e-4);

        let m = 1001;
        let dx = 10.0 / (m - 1) as f64;
        let mut samples = vec![0.0; m];
        samples[300] = 1.0 / dx;
        let spike = ContinuousBelief::new(0.0, 10.0, samples, false).unwrap();
        assert!(std_dev_continuous(&spike) < 2.0 * dx);
    }

    #[test]
    fn continuous_entropy_of_uniform() {
        let c = ContinuousBelief::new(0.0, 8.0, vec![0.125; 101], false).unwrap();
        assert!((shannon_continuous(&c, 2.0) - 3.0).abs() < 1e-9);
        // Natural units scale by ln 2.
        let nats = shannon_continuous(&c, std::f64::consts::E);
        assert!((nats - 3.0 * 2f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn report_collects_everything() {
        let b = DiscreteBelief::with_labels(
            vec!["1".into(), "2".into(), "3".into()],
            vec![0.2, 0.5, 0.3],
            OrderingMode::Listed,
            false,
        )
        .unwrap();
        let r = entropy_report(&b, 2.0, &[0.5, 2.0]).unwrap();
        assert_eq!(r.renyi.len(), 2);
        assert_eq!(r.tsallis.len(), 2);
        assert!(r.std_dev.is_some());
        assert!(r.shannon_normalized <= 1.0);

        let unlabeled = DiscreteBelief::uniform(3).unwrap();
        let r = entropy_report(&unlabeled, 2.0, &[]).unwrap();
        assert_eq!(r.std_dev, None);
    }
}
