use super::{EvolutionFamily, Time};
use crate::error::{Error, Result};

/// Joins a family on `[a, b]` with a family on `[b, c]` into one on `[a, c]`:
///
/// ```text
/// ω_{s,t} = first_{s,t}                 a ≤ s ≤ t ≤ b
///         = second_{s,t}                b ≤ s ≤ t ≤ c
///         = second_{b,t} ∘ first_{s,b}   s ≤ b ≤ t
/// ```
///
/// On each sub-square the returned transition is exactly the input's tree.
pub fn glue<T: Time>(first: &EvolutionFamily<T>, second: &EvolutionFamily<T>) -> Result<EvolutionFamily<T>> {
    if first.end() != second.start() {
        return Err(Error::IntervalMismatch {
            left_end: first.end().to_string(),
            right_start: second.start().to_string(),
        });
    }
    let seam = first.end().clone();
    let left = first.clone();
    let right = second.clone();
    let label = format!("glued:{}+{}", first.label(), second.label());
    EvolutionFamily::new(label, first.start().clone(), second.end().clone(), move |s, t| {
        if t.precedes(&seam) {
            left.at(s, t)
        } else if seam.precedes(s) {
            right.at(s, t)
        } else {
            Ok(right.at(&seam, t)?.after(&left.at(s, &seam)?))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolution::{linspace, make_radial, make_rotation};
    use num_complex::Complex64;

    #[test]
    fn glued_radials_equal_long_radial() {
        let glued = glue(&make_radial(0.0, 1.0).unwrap(), &make_radial(1.0, 2.0).unwrap()).unwrap();
        let long = make_radial(0.0, 2.0).unwrap();
        let ts = linspace(0.0, 2.0, 9);
        for (i, s) in ts.iter().enumerate() {
            for t in ts.iter().skip(i) {
                for k in 0..16 {
                    let z = Complex64::from_polar(0.9, k as f64);
                    let d = (glued.eval(s, t, z).unwrap() - long.eval(s, t, z).unwrap()).norm();
                    assert!(d < 1e-12);
                }
            }
        }
    }

    #[test]
    fn seam_diagonal_is_identity() {
        let glued = glue(
            &make_radial(0.0, 1.0).unwrap(),
            &make_rotation(1.0, 2.0, |t| t).unwrap(),
        )
        .unwrap();
        let z = Complex64::new(0.3, 0.2);
        assert_eq!(glued.eval(&1.0, &1.0, z).unwrap(), z);
    }

    #[test]
    fn restriction_reproduces_inputs() {
        let left = make_radial(0.0, 1.0).unwrap();
        let right = make_rotation(1.0, 2.0, |t| t * t).unwrap();
        let glued = glue(&left, &right).unwrap();
        for (s, t) in [(0.0, 0.5), (0.25, 1.0), (0.0, 1.0)] {
            assert_eq!(glued.at(&s, &t).unwrap(), left.at(&s, &t).unwrap());
        }
        for (s, t) in [(1.0, 1.5), (1.25, 2.0)] {
            assert_eq!(glued.at(&s, &t).unwrap(), right.at(&s, &t).unwrap());
        }
    }

    #[test]
    fn mismatched_intervals_are_rejected() {
        let err = glue(&make_radial(0.0, 1.0).unwrap(), &make_radial(1.5, 2.0).unwrap()).unwrap_err();
        assert!(matches!(err, Error::IntervalMismatch { .. }));
    }
}
