//! Polyphase decomposition of a polynomial into `L` interleaved phases.
//!
//! Phase `t` collects the coefficients with index `≡ t (mod L)`, so that
//! `f(x) = Σ_t phase_t(x^L) · x^t`. Phases are stored densely.

use std::fmt;

use crate::error::{Error, Result};
use crate::ntt::Polynomial;

/// Number of phases, `L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parallelism {
    Two,
    Four,
}

impl Parallelism {
    pub fn phases(self) -> usize {
        match self {
            Parallelism::Two => 2,
            Parallelism::Four => 4,
        }
    }

    /// Lanes of the fast structure: 3 for two-parallel, 9 for four-parallel.
    pub fn lanes(self) -> usize {
        match self {
            Parallelism::Two => 3,
            Parallelism::Four => 9,
        }
    }

    /// Length of one phase of a length-`n` polynomial.
    pub fn phase_len(self, n: usize) -> usize {
        n / self.phases()
    }
}

impl TryFrom<usize> for Parallelism {
    type Error = Error;

    fn try_from(l: usize) -> Result<Self> {
        match l {
            2 => Ok(Parallelism::Two),
            4 => Ok(Parallelism::Four),
            other => Err(Error::UnsupportedParallelism(other)),
        }
    }
}

impl fmt::Display for Parallelism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.phases().fmt(f)
    }
}

/// The `L` phase polynomials of one polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhaseSplit {
    parallelism: Parallelism,
    phases: Vec<Polynomial>,
}

impl PhaseSplit {
    /// Wraps existing phases. Fails on a phase count other than 2 or 4 or on
    /// phases of unequal length.
    pub fn new(phases: Vec<Polynomial>) -> Result<Self> {
        let parallelism = Parallelism::try_from(phases.len())?;
        let len = phases[0].len();
        if let Some(bad) = phases.iter().find(|p| p.len() != len) {
            return Err(Error::Shape { expected: len, found: bad.len() });
        }
        Ok(PhaseSplit { parallelism, phases })
    }

    pub fn parallelism(&self) -> Parallelism {
        self.parallelism
    }

    pub fn phases(&self) -> &[Polynomial] {
        &self.phases
    }

    pub fn into_phases(self) -> Vec<Polynomial> {
        self.phases
    }
}

pub fn decompose(f: &Polynomial, l: Parallelism) -> Result<PhaseSplit> {
    let step = l.phases();
    if f.is_empty() || !f.len().is_multiple_of(step) {
        return Err(Error::Shape { expected: f.len().next_multiple_of(step).max(step), found: f.len() });
    }
    let phases = (0..step)
        .map(|t| Polynomial::from_coeffs(f.coeffs().iter().skip(t).step_by(step).copied().collect()))
        .collect();
    Ok(PhaseSplit { parallelism: l, phases })
}

pub fn recompose(s: &PhaseSplit) -> Polynomial {
    let step = s.parallelism.phases();
    let len = s.phases[0].len();
    let coeffs = (0..len * step).map(|idx| s.phases[idx % step].coeffs()[idx / step]).collect();
    Polynomial::from_coeffs(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modarith::Residue;
    use crate::rng::SplitMix64;
    use proptest::prelude::*;

    fn poly(vals: &[u32]) -> Polynomial {
        Polynomial::from_coeffs(vals.iter().map(|v| Residue::new(*v)).collect())
    }

    #[test]
    fn toy_splits() {
        let f = poly(&[0, 1, 2, 3, 4, 5, 6, 7]);
        let two = decompose(&f, Parallelism::Two).unwrap();
        assert_eq!(two.phases(), &[poly(&[0, 2, 4, 6]), poly(&[1, 3, 5, 7])]);
        let four = decompose(&f, Parallelism::Four).unwrap();
        assert_eq!(four.phases(), &[poly(&[0, 4]), poly(&[1, 5]), poly(&[2, 6]), poly(&[3, 7])]);
    }

    #[test]
    fn zero_round_trips() {
        let z = Polynomial::zero(256);
        for l in [Parallelism::Two, Parallelism::Four] {
            let s = decompose(&z, l).unwrap();
            assert!(s.phases().iter().all(Polynomial::is_zero));
            assert_eq!(s.phases()[0].len(), 256 / l.phases());
            assert_eq!(recompose(&s), z);
        }
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(decompose(&Polynomial::zero(6), Parallelism::Four).is_err());
        assert!(decompose(&Polynomial::zero(0), Parallelism::Two).is_err());
        assert!(matches!(Parallelism::try_from(8), Err(Error::UnsupportedParallelism(8))));
        assert!(PhaseSplit::new(vec![Polynomial::zero(4); 3]).is_err());
        assert!(PhaseSplit::new(vec![Polynomial::zero(4), Polynomial::zero(5)]).is_err());
    }

    // Re-expands Σ_t phase_t(x^L)·x^t by explicit monomial placement.
    fn expand(s: &PhaseSplit) -> Vec<u16> {
        let l = s.parallelism().phases();
        let mut out = vec![0u16; s.phases()[0].len() * l];
        for (t, phase) in s.phases().iter().enumerate() {
            for (i, c) in phase.coeffs().iter().enumerate() {
                out[l * i + t] = c.value();
            }
        }
        out
    }

    #[test]
    fn seeded_round_trips() {
        let mut rng = SplitMix64::new(5);
        for _ in 0..50 {
            let f = rng.polynomial(256);
            for l in [Parallelism::Two, Parallelism::Four] {
                let s = decompose(&f, l).unwrap();
                assert_eq!(recompose(&s), f);
                let vals: Vec<u16> = f.coeffs().iter().map(|c| c.value()).collect();
                assert_eq!(expand(&s), vals);
            }
        }
    }

    proptest! {
        #[test]
        fn decompose_recompose_inverse(vals in proptest::collection::vec(0u32..3329, 256), four in any::<bool>()) {
            let l = if four { Parallelism::Four } else { Parallelism::Two };
            let f = poly(&vals);
            let s = decompose(&f, l).unwrap();
            for (t, phase) in s.phases().iter().enumerate() {
                for (i, c) in phase.coeffs().iter().enumerate() {
                    prop_assert_eq!(c.value() as u32, vals[l.phases() * i + t]);
                }
            }
            prop_assert_eq!(recompose(&s), f.clone());
            let s2 = decompose(&recompose(&s), l).unwrap();
            prop_assert_eq!(s2, s);
        }
    }
}
